//! Serialization helpers shared by the JSON report.

use crate::forms::Rat;
use serde::Serializer;

pub fn ser_rats<S: Serializer>(v: &[Rat], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|r| r.to_string()))
}

pub fn ser_rats_opt<S: Serializer>(v: &Option<Vec<Rat>>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(v) => ser_rats(v, s),
        None => s.serialize_none(),
    }
}
