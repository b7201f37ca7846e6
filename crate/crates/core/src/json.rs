//! JSON plumbing: arbitrary-precision integers and the textual descriptors
//! for groups, domains and relations.

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::de::DeserializeOwned;
use serde::{Serialize, Serializer};
use serde_json::{json, Value};

use crate::dedekind::MonomialDomain;
use crate::entailment::{RelationHandle, RelationKind};
use crate::error::{Error, Result};
use crate::group::{matrix_rank, Cone, GroupElement, OrderedGroup};

/// Serialises a big integer as a JSON number, whatever its size.
pub struct BigIntJson<'a>(pub &'a BigInt);

impl Serialize for BigIntJson<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(v) => s.serialize_i64(v),
            None => {
                let n = serde_json::Number::from_str(&self.0.to_string()).map_err(serde::ser::Error::custom)?;
                n.serialize(s)
            }
        }
    }
}

/// Serde helpers for `BigInt` fields and sequences.
pub mod bigint {
    use super::*;
    use serde::{Deserialize, Deserializer};

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
        BigIntJson(v).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<BigInt, D::Error> {
        let n = serde_json::Number::deserialize(d)?;
        number_to_bigint(&n).map_err(serde::de::Error::custom)
    }
}

pub mod bigint_vec {
    use super::*;
    use serde::{Deserialize, Deserializer};

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for x in v {
            seq.serialize_element(&BigIntJson(x))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<BigInt>, D::Error> {
        let raw = Vec::<serde_json::Number>::deserialize(d)?;
        raw.iter()
            .map(number_to_bigint)
            .collect::<std::result::Result<_, _>>()
            .map_err(serde::de::Error::custom)
    }
}

pub mod bigint_matrix {
    use super::*;
    use serde::{Deserialize, Deserializer};

    pub fn serialize<S: Serializer>(v: &[Vec<BigInt>], s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for row in v {
            let row: Vec<BigIntJson> = row.iter().map(BigIntJson).collect();
            seq.serialize_element(&row)?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Vec<BigInt>>, D::Error> {
        let raw = Vec::<Vec<serde_json::Number>>::deserialize(d)?;
        raw.iter()
            .map(|row| row.iter().map(number_to_bigint).collect::<std::result::Result<Vec<_>, _>>())
            .collect::<std::result::Result<_, _>>()
            .map_err(serde::de::Error::custom)
    }
}

/// Parse a JSON number that must be an integer.
pub fn number_to_bigint(n: &serde_json::Number) -> std::result::Result<BigInt, String> {
    let text = n.to_string();
    BigInt::from_str(&text).map_err(|_| format!("expected an integer, found {text}"))
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| Error::Malformed(format!("missing field `{key}` in {v}")))
}

fn field_u64(v: &Value, key: &str) -> Result<u64> {
    field(v, key)?
        .as_u64()
        .ok_or_else(|| Error::Malformed(format!("field `{key}` must be a nonnegative integer")))
}

fn field_str<'a>(v: &'a Value, key: &str) -> Result<&'a str> {
    field(v, key)?.as_str().ok_or_else(|| Error::Malformed(format!("field `{key}` must be a string")))
}

/// Deserialise a value, mapping failures to [`Error::Malformed`].
pub fn decode<T: DeserializeOwned>(v: &Value, what: &str) -> Result<T> {
    T::deserialize(v).map_err(|e| Error::Malformed(format!("{what}: {e}")))
}

fn decode_rows(v: &Value) -> Result<Vec<Vec<BigInt>>> {
    let raw: Vec<Vec<serde_json::Number>> = decode(v, "matrix rows")?;
    raw.iter()
        .map(|row| row.iter().map(number_to_bigint).collect::<std::result::Result<Vec<_>, _>>())
        .collect::<std::result::Result<_, _>>()
        .map_err(Error::Malformed)
}

pub fn group_descriptor(g: &OrderedGroup) -> Value {
    match g.cone() {
        Cone::Product => json!({ "kind": "product", "rank": g.rank() }),
        Cone::Trivial => json!({ "kind": "trivial", "rank": g.rank() }),
        Cone::Semigroup(s) => json!({ "kind": "semigroup", "gens": s.generators() }),
        Cone::Matrix(rows) => {
            let body: Vec<Vec<BigIntJson>> = rows.iter().map(|r| r.iter().map(BigIntJson).collect()).collect();
            if matrix_rank(rows) < g.rank() {
                json!({ "kind": "matrix", "rows": body, "preorder": true })
            } else {
                json!({ "kind": "matrix", "rows": body })
            }
        }
    }
}

pub fn group_from_descriptor(v: &Value) -> Result<OrderedGroup> {
    match field_str(v, "kind")? {
        "product" => OrderedGroup::product(field_u64(v, "rank")? as usize),
        "trivial" => OrderedGroup::trivial(field_u64(v, "rank")? as usize),
        "semigroup" => OrderedGroup::semigroup(&decode::<Vec<u64>>(field(v, "gens")?, "semigroup generators")?),
        "matrix" => {
            let rows = decode_rows(field(v, "rows")?)?;
            if v.get("preorder").and_then(Value::as_bool).unwrap_or(false) {
                OrderedGroup::matrix_preorder(rows)
            } else {
                OrderedGroup::matrix(rows)
            }
        }
        other => Err(Error::Malformed(format!("unknown group kind `{other}`"))),
    }
}

fn spec_numbers(text: &str) -> Result<Vec<i64>> {
    text.split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|_| Error::Malformed(format!("not an integer: `{t}`"))))
        .collect()
}

fn spec_naturals(text: &str) -> Result<Vec<u64>> {
    spec_numbers(text)?
        .into_iter()
        .map(|n| u64::try_from(n).map_err(|_| Error::Malformed(format!("expected a positive integer, found {n}"))))
        .collect()
}

fn spec_rank(text: &str) -> Result<usize> {
    text.trim().parse().map_err(|_| Error::Malformed(format!("not a rank: `{text}`")))
}

/// Short forms: `product:2`, `trivial:1`, `semigroup:2,3`, `matrix:1,0;1,1`.
pub fn group_from_spec(spec: &str) -> Result<OrderedGroup> {
    let (kind, rest) = spec.split_once(':').ok_or_else(|| Error::Malformed(format!("group spec `{spec}` lacks `:`")))?;
    match kind {
        "product" => OrderedGroup::product(spec_rank(rest)?),
        "trivial" => OrderedGroup::trivial(spec_rank(rest)?),
        "semigroup" => OrderedGroup::semigroup(&spec_naturals(rest)?),
        "matrix" => {
            let rows: Vec<Vec<BigInt>> = rest
                .split(';')
                .map(|r| Ok(spec_numbers(r)?.into_iter().map(BigInt::from).collect()))
                .collect::<Result<_>>()?;
            OrderedGroup::matrix(rows)
        }
        other => Err(Error::Malformed(format!("unknown group kind `{other}`"))),
    }
}

pub fn domain_from_descriptor(v: &Value) -> Result<MonomialDomain> {
    match field_str(v, "kind")? {
        "poly" => MonomialDomain::poly_ring(field_u64(v, "rank")? as usize),
        "semigroup" => MonomialDomain::semigroup_ring(&decode::<Vec<u64>>(field(v, "gens")?, "semigroup generators")?),
        "laurent" => Ok(MonomialDomain::LaurentRing { step: field_u64(v, "step")? }),
        "extended" => Ok(MonomialDomain::Extended {
            rank: field_u64(v, "rank")? as usize,
            extra: decode(field(v, "extra")?, "extra exponent")?,
        }),
        other => Err(Error::Malformed(format!("unknown domain kind `{other}`"))),
    }
}

/// Short forms: `poly:2`, `semigroup:2,3`.
pub fn domain_from_spec(spec: &str) -> Result<MonomialDomain> {
    let (kind, rest) = spec.split_once(':').ok_or_else(|| Error::Malformed(format!("domain spec `{spec}` lacks `:`")))?;
    match kind {
        "poly" => MonomialDomain::poly_ring(spec_rank(rest)?),
        "semigroup" => MonomialDomain::semigroup_ring(&spec_naturals(rest)?),
        other => Err(Error::Malformed(format!("unknown domain kind `{other}`"))),
    }
}

/// The relation without its group; the group travels separately.
pub fn relation_descriptor(r: &RelationHandle) -> Value {
    match r.kind() {
        RelationKind::Finest => json!({ "rel": "finest" }),
        RelationKind::Dedekind(d) => json!({ "rel": "dedekind", "domain": d.descriptor() }),
        RelationKind::Forced { base, constraints, depth } => json!({
            "rel": "forced",
            "x": constraints,
            "depth": depth,
            "base": relation_descriptor(base),
        }),
        RelationKind::Prufer { base, bound } => json!({
            "rel": "prufer",
            "bound": bound,
            "base": relation_descriptor(base),
        }),
        RelationKind::Regularisation { base, depth } => json!({
            "rel": "regular",
            "depth": depth,
            "base": relation_descriptor(base),
        }),
    }
}

pub fn relation_from_descriptor(group: &OrderedGroup, v: &Value) -> Result<RelationHandle> {
    let base = || relation_from_descriptor(group, field(v, "base")?);
    match field_str(v, "rel")? {
        "finest" => Ok(RelationHandle::finest(group)),
        "dedekind" => {
            let r = RelationHandle::dedekind(&domain_from_descriptor(field(v, "domain")?)?)?;
            if r.group() != group {
                return Err(Error::Malformed(format!(
                    "domain divides along {}, not along the given {} group",
                    r.group().kind_name(),
                    group.kind_name()
                )));
            }
            Ok(r)
        }
        "forced" => {
            let x: Vec<GroupElement> = decode(field(v, "x")?, "forcing constraints")?;
            RelationHandle::forced(&base()?, x, field_u64(v, "depth")?)
        }
        "prufer" => Ok(RelationHandle::prufer(&base()?, field_u64(v, "bound")?)),
        "regular" => Ok(RelationHandle::regularisation(&base()?, field_u64(v, "depth")?)),
        other => Err(Error::Malformed(format!("unknown relation `{other}`"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn big_numbers_round_trip() {
        let v: BigInt = BigInt::from(10).pow(40) + 7;
        let text = serde_json::to_string(&BigIntJson(&v)).unwrap();
        assert_eq!(text, "10000000000000000000000000000000000000007");
        let n: serde_json::Number = serde_json::from_str(&text).unwrap();
        assert_eq!(number_to_bigint(&n).unwrap(), v);
    }

    #[test]
    fn descriptors_round_trip() {
        for spec in ["product:2", "trivial:1", "semigroup:2,3", "matrix:1,0;1,1"] {
            let g = group_from_spec(spec).unwrap();
            assert_eq!(group_from_descriptor(&group_descriptor(&g)).unwrap(), g);
        }
        let rank_deficient = OrderedGroup::matrix_preorder(vec![vec![BigInt::from(1), BigInt::from(1)]]).unwrap();
        assert_eq!(group_from_descriptor(&group_descriptor(&rank_deficient)).unwrap(), rank_deficient);

        let z2 = group_from_spec("product:2").unwrap();
        let f = RelationHandle::finest(&z2);
        let forced = RelationHandle::forced(&f, vec![GroupElement::from_i64s(&[1, -1])], 5).unwrap();
        let r = RelationHandle::regularisation(&RelationHandle::prufer(&forced, 3), 2);
        let v = relation_descriptor(&r);
        assert_eq!(relation_from_descriptor(&z2, &v).unwrap(), r);

        let d = domain_from_spec("semigroup:2,3").unwrap();
        let ded = RelationHandle::dedekind(&d).unwrap();
        let g = ded.group().clone();
        assert_eq!(relation_from_descriptor(&g, &relation_descriptor(&ded)).unwrap(), ded);
        assert!(matches!(relation_from_descriptor(&z2, &relation_descriptor(&ded)), Err(Error::Malformed(_))));
        assert_eq!(domain_from_descriptor(&d.descriptor()).unwrap(), d);
    }

    #[test]
    fn bad_specs_are_malformed() {
        for spec in ["product", "cube:2", "semigroup:2,x", "product:-1"] {
            assert!(matches!(group_from_spec(spec), Err(Error::Malformed(_))), "{spec}");
        }
        assert!(matches!(group_from_descriptor(&json!({ "kind": "product" })), Err(Error::Malformed(_))));
    }

    #[test]
    fn fractions_are_rejected() {
        let n: serde_json::Number = serde_json::from_str("1.5").unwrap();
        assert!(number_to_bigint(&n).is_err());
    }
}
