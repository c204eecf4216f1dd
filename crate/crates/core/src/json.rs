//! JSON encodings shared by the CLI and the C interface.
//!
//! Every document written by the CLI carries `"schema": "permutokit/1"`.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::{json, Value};

use crate::label::{GroundSet, Label};
use crate::preposet::{AugPreposet, Preposet};

pub const SCHEMA: &str = "permutokit/1";

/// Wraps a payload object with the schema tag.
pub fn envelope(mut v: Value) -> Value {
    match v.as_object_mut() {
        Some(map) => {
            map.insert("schema".into(), Value::String(SCHEMA.into()));
            v
        }
        None => json!({ "schema": SCHEMA, "result": v }),
    }
}

#[derive(Serialize, Deserialize)]
struct PreposetDto {
    ground: GroundSet,
    rel: Vec<(Label, Label)>,
}

#[derive(Deserialize)]
struct AugDto {
    #[serde(default)]
    bottom: bool,
    ground: Option<GroundSet>,
    #[serde(default)]
    rel: Vec<(Label, Label)>,
}

impl Serialize for Preposet {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        PreposetDto { ground: self.ground().clone(), rel: self.pairs() }.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for Preposet {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let dto = PreposetDto::deserialize(de)?;
        Preposet::new(dto.ground, dto.rel).map_err(D::Error::custom)
    }
}

impl Serialize for AugPreposet {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        aug_to_json(self).serialize(ser)
    }
}

impl<'de> Deserialize<'de> for AugPreposet {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let dto = AugDto::deserialize(de)?;
        if dto.bottom {
            if !dto.rel.is_empty() {
                return Err(D::Error::custom("bottom carries no relation"));
            }
            return Ok(AugPreposet::Bottom(dto.ground.unwrap_or_default()));
        }
        let ground = dto.ground.ok_or_else(|| D::Error::missing_field("ground"))?;
        Preposet::new(ground, dto.rel).map(AugPreposet::Preposet).map_err(D::Error::custom)
    }
}

pub fn aug_to_json(p: &AugPreposet) -> Value {
    match p {
        AugPreposet::Preposet(p) => json!({ "ground": p.ground(), "rel": p.pairs() }),
        AugPreposet::Bottom(g) => json!({ "bottom": true, "ground": g }),
    }
}
