//! Serializes arbitrary-precision values as their decimal `Display` text.

use std::fmt::Display;

use serde::ser::SerializeSeq;
use serde::Serializer;

pub fn one<T: Display, S: Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

pub fn many<T: Display, S: Serializer>(v: &[T], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for item in v {
        seq.serialize_element(&item.to_string())?;
    }
    seq.end()
}
