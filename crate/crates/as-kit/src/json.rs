//! JSON serialization for rings, ring elements, and bundle Chern data.
//!
//! All numbers are exact: a rational travels as a `[numerator,
//! denominator]` pair of (arbitrary-precision) integers, a cyclotomic
//! number as the array of its p-1 rational coordinates over the power
//! basis, and a ring element as its dense coordinate vector over the
//! ring's basis. Rings serialize with their full structure-constant
//! table and are re-validated on load.
//!
//! Ring format:
//!   {"p": 7, "top": 4, "basis": [{"name": "1", "degree": 0}, ...],
//!    "mult": [[i, j, [<cyclotomic>, ...]], ...], "fundamental": "v"}
//!
//! Bundle format:
//!   {"p": 7, "ring": <name or inline ring>, "eigen":
//!    [{"rank": d, "chern": [<element>, ...]}, ...]}
//!
//! Builtin ring names: "point", "s2", "cp<N>" (e.g. "cp2"), "cpn:<N>",
//! and "cp2#cp2bar".

use crate::asclass::{EigenbundleData, GBundleChernData};
use crate::cohomology::{
    ring_cp2_cp2bar, ring_cpn, ring_from_table, ring_point, CohomologyRing, RingElement,
    RingSpec,
};
use crate::cyclotomic::CyclotomicNumber;
use crate::{Error, Result};
use num::{BigInt, BigRational};
use serde_json::{Map, Number, Value};
use std::str::FromStr;
use std::sync::Arc;

fn bad(path: &str, what: &str) -> Error {
    Error::InvalidArgument(format!("{path}: {what}"))
}

pub fn integer_to_value(x: &BigInt) -> Value {
    Value::Number(Number::from_str(&x.to_string()).expect("integer literal"))
}

fn integer_from_value(v: &Value, path: &str) -> Result<BigInt> {
    match v {
        Value::Number(n) => BigInt::from_str(&n.to_string())
            .map_err(|_| bad(path, "expected an integer, found a non-integral number")),
        _ => Err(bad(path, "expected an integer")),
    }
}

pub fn rational_to_value(q: &BigRational) -> Value {
    Value::Array(vec![integer_to_value(q.numer()), integer_to_value(q.denom())])
}

/// Accepts `[num, den]` pairs and bare integers.
pub fn rational_from_value(v: &Value, path: &str) -> Result<BigRational> {
    match v {
        Value::Array(pair) => {
            let [n, d] = pair.as_slice() else {
                return Err(bad(path, "expected a [numerator, denominator] pair"));
            };
            let numer = integer_from_value(n, path)?;
            let denom = integer_from_value(d, path)?;
            if denom == BigInt::from(0) {
                return Err(bad(path, "zero denominator"));
            }
            Ok(BigRational::new(numer, denom))
        }
        Value::Number(_) => Ok(BigRational::from_integer(integer_from_value(v, path)?)),
        _ => Err(bad(path, "expected a rational ([num, den] or integer)")),
    }
}

pub fn cyclotomic_to_value(x: &CyclotomicNumber) -> Value {
    Value::Array(x.coords().iter().map(rational_to_value).collect())
}

pub fn cyclotomic_from_value(p: u64, v: &Value, path: &str) -> Result<CyclotomicNumber> {
    let Value::Array(coords) = v else {
        return Err(bad(path, "expected an array of p-1 rational coordinates"));
    };
    let parsed = coords
        .iter()
        .enumerate()
        .map(|(i, c)| rational_from_value(c, &format!("{path}[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    CyclotomicNumber::new(p, parsed)
}

pub fn element_to_value(x: &RingElement) -> Value {
    Value::Array(x.coords().iter().map(cyclotomic_to_value).collect())
}

pub fn element_from_value(
    ring: &Arc<CohomologyRing>,
    v: &Value,
    path: &str,
) -> Result<RingElement> {
    let Value::Array(coords) = v else {
        return Err(bad(
            path,
            "expected an array of cyclotomic coordinates over the ring basis",
        ));
    };
    let parsed = coords
        .iter()
        .enumerate()
        .map(|(i, c)| cyclotomic_from_value(ring.p(), c, &format!("{path}[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    RingElement::from_coords(ring, parsed)
}

pub fn ring_to_value(ring: &CohomologyRing) -> Value {
    let basis: Vec<Value> = ring
        .names()
        .iter()
        .zip(ring.degrees())
        .map(|(name, &degree)| {
            let mut obj = Map::new();
            obj.insert("name".into(), Value::String(name.clone()));
            obj.insert("degree".into(), Value::Number(degree.into()));
            Value::Object(obj)
        })
        .collect();
    let unit = ring.unit_index();
    let mut mult = Vec::new();
    for i in 0..ring.dim() {
        for j in i..ring.dim() {
            if i == unit || j == unit {
                continue; // identity products are implied
            }
            let coords = ring.product_coords(i, j);
            if coords.iter().all(CyclotomicNumber::is_zero) {
                continue;
            }
            mult.push(Value::Array(vec![
                Value::Number((i as u64).into()),
                Value::Number((j as u64).into()),
                Value::Array(coords.iter().map(cyclotomic_to_value).collect()),
            ]));
        }
    }
    let mut obj = Map::new();
    obj.insert("p".into(), Value::Number(ring.p().into()));
    obj.insert("top".into(), Value::Number(ring.top().into()));
    obj.insert("basis".into(), Value::Array(basis));
    obj.insert("mult".into(), Value::Array(mult));
    obj.insert(
        "fundamental".into(),
        Value::String(ring.names()[ring.fundamental_index()].clone()),
    );
    Value::Object(obj)
}

fn field_of<'v>(obj: &'v Map<String, Value>, key: &str, path: &str) -> Result<&'v Value> {
    obj.get(key)
        .ok_or_else(|| bad(path, &format!("missing field {key:?}")))
}

fn u64_from_value(v: &Value, path: &str) -> Result<u64> {
    v.as_u64().ok_or_else(|| {
        let int = integer_from_value(v, path);
        match int {
            Ok(_) => bad(path, "value out of range"),
            Err(e) => e,
        }
    })
}

pub fn ring_from_value(v: &Value) -> Result<Arc<CohomologyRing>> {
    let Value::Object(obj) = v else {
        return Err(bad("ring", "expected an object"));
    };
    let p = u64_from_value(field_of(obj, "p", "ring")?, "ring.p")?;
    let top = u64_from_value(field_of(obj, "top", "ring")?, "ring.top")? as u32;
    let Value::Array(basis_raw) = field_of(obj, "basis", "ring")? else {
        return Err(bad("ring.basis", "expected an array"));
    };
    let mut basis = Vec::with_capacity(basis_raw.len());
    for (i, entry) in basis_raw.iter().enumerate() {
        let path = format!("ring.basis[{i}]");
        let Value::Object(e) = entry else {
            return Err(bad(&path, "expected an object with name and degree"));
        };
        let name = field_of(e, "name", &path)?
            .as_str()
            .ok_or_else(|| bad(&path, "name must be a string"))?
            .to_string();
        let degree = u64_from_value(field_of(e, "degree", &path)?, &path)? as u32;
        basis.push((name, degree));
    }
    let Value::Array(mult_raw) = field_of(obj, "mult", "ring")? else {
        return Err(bad("ring.mult", "expected an array"));
    };
    let mut mult = Vec::with_capacity(mult_raw.len());
    for (e, entry) in mult_raw.iter().enumerate() {
        let path = format!("ring.mult[{e}]");
        let Value::Array(triple) = entry else {
            return Err(bad(&path, "expected [i, j, coefficients]"));
        };
        let [i, j, coeffs] = triple.as_slice() else {
            return Err(bad(&path, "expected [i, j, coefficients]"));
        };
        let i = u64_from_value(i, &path)? as usize;
        let j = u64_from_value(j, &path)? as usize;
        let Value::Array(coeffs) = coeffs else {
            return Err(bad(&path, "coefficients must be an array over the basis"));
        };
        let parsed = coeffs
            .iter()
            .enumerate()
            .map(|(c, v)| cyclotomic_from_value(p, v, &format!("{path}[{c}]")))
            .collect::<Result<Vec<_>>>()?;
        mult.push((i, j, parsed));
    }
    let fundamental = field_of(obj, "fundamental", "ring")?
        .as_str()
        .ok_or_else(|| bad("ring.fundamental", "expected a basis name"))?
        .to_string();
    ring_from_table(&RingSpec {
        p,
        top,
        basis,
        mult,
        fundamental,
    })
}

/// Resolves a builtin ring name for the given prime.
pub fn builtin_ring(name: &str, p: u64) -> Result<Arc<CohomologyRing>> {
    match name {
        "point" => ring_point(p),
        "s2" => ring_cpn(1, p),
        "cp2#cp2bar" => ring_cp2_cp2bar(p),
        _ => {
            let n = name
                .strip_prefix("cpn:")
                .or_else(|| name.strip_prefix("cp"))
                .and_then(|s| s.parse::<u32>().ok())
                .ok_or_else(|| {
                    Error::InvalidArgument(format!(
                        "unknown ring {name:?}; expected point, s2, cp<N>, cpn:<N>, or cp2#cp2bar"
                    ))
                })?;
            ring_cpn(n, p)
        }
    }
}

/// A ring reference: builtin name string or inline ring object.
pub fn ring_ref_from_value(v: &Value, p: u64) -> Result<Arc<CohomologyRing>> {
    match v {
        Value::String(name) => builtin_ring(name, p),
        Value::Object(_) => {
            let ring = ring_from_value(v)?;
            if ring.p() != p {
                return Err(Error::FieldMismatch(p, ring.p()));
            }
            Ok(ring)
        }
        _ => Err(bad("ring", "expected a builtin name or an inline ring object")),
    }
}

/// Serializes a bundle; `inline_ring` embeds the ring table, otherwise a
/// builtin name must be supplied by the caller via `ring_name`.
pub fn bundle_to_value(bundle: &GBundleChernData, ring_name: Option<&str>) -> Value {
    let mut obj = Map::new();
    obj.insert("p".into(), Value::Number(bundle.p().into()));
    let ring_value = match ring_name {
        Some(name) => Value::String(name.to_string()),
        None => ring_to_value(bundle.ring()),
    };
    obj.insert("ring".into(), ring_value);
    let eigen: Vec<Value> = bundle
        .eigen()
        .iter()
        .map(|ek| {
            let mut e = Map::new();
            e.insert("rank".into(), Value::Number((ek.rank() as u64).into()));
            e.insert(
                "chern".into(),
                Value::Array(ek.chern().iter().map(element_to_value).collect()),
            );
            Value::Object(e)
        })
        .collect();
    obj.insert("eigen".into(), Value::Array(eigen));
    Value::Object(obj)
}

pub fn bundle_from_value(v: &Value) -> Result<GBundleChernData> {
    let Value::Object(obj) = v else {
        return Err(bad("bundle", "expected an object"));
    };
    let p = u64_from_value(field_of(obj, "p", "bundle")?, "bundle.p")?;
    let ring = ring_ref_from_value(field_of(obj, "ring", "bundle")?, p)?;
    let Value::Array(eigen_raw) = field_of(obj, "eigen", "bundle")? else {
        return Err(bad("bundle.eigen", "expected an array"));
    };
    let mut eigen = Vec::with_capacity(eigen_raw.len());
    for (i, entry) in eigen_raw.iter().enumerate() {
        let path = format!("bundle.eigen[{i}]");
        let Value::Object(e) = entry else {
            return Err(bad(&path, "expected an object with rank and chern"));
        };
        let rank = u64_from_value(field_of(e, "rank", &path)?, &path)? as usize;
        let Value::Array(chern_raw) = field_of(e, "chern", &path)? else {
            return Err(bad(&path, "chern must be an array of ring elements"));
        };
        if chern_raw.len() != rank {
            return Err(bad(
                &path,
                &format!("rank {rank} does not match {} Chern classes", chern_raw.len()),
            ));
        }
        let chern = chern_raw
            .iter()
            .enumerate()
            .map(|(c, v)| element_from_value(&ring, v, &format!("{path}.chern[{c}]")))
            .collect::<Result<Vec<_>>>()?;
        eigen.push(EigenbundleData::new(&ring, chern)?);
    }
    GBundleChernData::new(&ring, eigen)
}

/// Parses a bundle from JSON text; syntax errors carry the position.
pub fn bundle_from_str(text: &str) -> Result<GBundleChernData> {
    let value: Value = serde_json::from_str(text)
        .map_err(|e| Error::InvalidArgument(format!("malformed JSON: {e}")))?;
    bundle_from_value(&value)
}

pub fn bundle_to_string_pretty(bundle: &GBundleChernData, ring_name: Option<&str>) -> String {
    serde_json::to_string_pretty(&bundle_to_value(bundle, ring_name))
        .expect("value trees serialize")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn arbitrary_precision_integers_survive_the_round_trip() {
        let huge = BigInt::from_str("123456789012345678901234567890123456789").unwrap();
        let q = BigRational::new(huge.clone(), BigInt::from(7));
        let v = rational_to_value(&q);
        let text = serde_json::to_string(&v).unwrap();
        assert!(text.contains("123456789012345678901234567890123456789"));
        let back: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(rational_from_value(&back, "q").unwrap(), q);
    }

    #[test]
    fn cyclotomic_round_trip() {
        let x = CyclotomicNumber::zeta(5)
            .scale(&rat(3, 2))
            .checked_add(&CyclotomicNumber::from_rational(5, rat(-7, 3)))
            .unwrap();
        let v = cyclotomic_to_value(&x);
        let back = cyclotomic_from_value(5, &v, "x").unwrap();
        assert_eq!(back, x);
        // Wrong coordinate count is rejected.
        let short = Value::Array(vec![rational_to_value(&rat(1, 1))]);
        assert!(cyclotomic_from_value(5, &short, "x").is_err());
    }

    #[test]
    fn ring_round_trip_preserves_structure_and_names() {
        for ring in [
            ring_cpn(3, 7).unwrap(),
            ring_cp2_cp2bar(5).unwrap(),
            ring_point(5).unwrap(),
        ] {
            let v = ring_to_value(&ring);
            let back = ring_from_value(&v).unwrap();
            assert!(back.same_structure(&ring));
            assert_eq!(back.names(), ring.names());
        }
    }

    #[test]
    fn builtin_names_resolve() {
        assert!(builtin_ring("s2", 7).unwrap().same_structure(&ring_cpn(1, 7).unwrap()));
        assert!(builtin_ring("cp3", 5).unwrap().same_structure(&ring_cpn(3, 5).unwrap()));
        assert!(builtin_ring("cpn:2", 5)
            .unwrap()
            .same_structure(&ring_cpn(2, 5).unwrap()));
        assert!(builtin_ring("point", 5).unwrap().same_structure(&ring_point(5).unwrap()));
        assert!(builtin_ring("cp2#cp2bar", 5)
            .unwrap()
            .same_structure(&ring_cp2_cp2bar(5).unwrap()));
        assert!(builtin_ring("torus", 5).is_err());
    }

    #[test]
    fn bundle_round_trip_inline_and_by_name() {
        let ring = ring_cpn(2, 7).unwrap();
        let a = RingElement::basis_element(&ring, "a").unwrap();
        let c2 = (&a * &a).scale_rational(&rat(1, 2));
        let eigen = vec![
            EigenbundleData::new(&ring, vec![a.clone(), c2]).unwrap(),
            EigenbundleData::line(-&a).unwrap(),
            EigenbundleData::trivial(&ring),
        ];
        let bundle = GBundleChernData::new(&ring, eigen).unwrap();

        for name in [None, Some("cp2")] {
            let text = bundle_to_string_pretty(&bundle, name);
            let back = bundle_from_str(&text).unwrap();
            assert_eq!(back, bundle, "ring spec {name:?}");
        }
    }

    #[test]
    fn bundle_parsing_reports_paths() {
        // Truncated JSON.
        let err = bundle_from_str("{\"p\": 7, ").unwrap_err();
        assert!(matches!(err, Error::InvalidArgument(msg) if msg.contains("malformed")));

        // Rank/chern mismatch.
        let text = r#"{"p": 5, "ring": "s2",
            "eigen": [{"rank": 1, "chern": []}, {"rank": 0, "chern": []}]}"#;
        let err = bundle_from_str(text).unwrap_err();
        assert!(matches!(err, Error::InvalidArgument(msg) if msg.contains("eigen[0]")));

        // Bad inner coordinate.
        let text = r#"{"p": 5, "ring": "s2",
            "eigen": [{"rank": 1, "chern": [[[ [1,0] ], [[1,1],[0,1],[0,1],[0,1]]]]},
                      {"rank": 0, "chern": []}]}"#;
        assert!(bundle_from_str(text).is_err());

        // Wrong eigen count for p.
        let text = r#"{"p": 7, "ring": "s2", "eigen": []}"#;
        assert!(bundle_from_str(text).is_err());
    }

    #[test]
    fn zero_products_are_omitted_but_recovered() {
        // On CP^1 the only non-unit product a*a = 0 is omitted from the
        // table; the loader must still build the ring (zero by default).
        let ring = ring_cpn(1, 5).unwrap();
        let v = ring_to_value(&ring);
        let Value::Object(obj) = &v else { panic!() };
        let Value::Array(mult) = &obj["mult"] else { panic!() };
        assert!(mult.is_empty());
        let back = ring_from_value(&v).unwrap();
        assert!(back.same_structure(&ring));
        let a = RingElement::basis_element(&back, "a").unwrap();
        assert!((&a * &a).is_zero());
    }
}
