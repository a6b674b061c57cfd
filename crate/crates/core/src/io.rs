//! JSON file formats for instances and cuts.
//!
//! Instance file: `{"n": 4, "weights": [[0, 1, 1.0], ...], "labels": [...]}`
//! where every unordered pair appears at most once and omitted pairs weigh 0.
//! Cut file: `{"side": [1, 0, 1, 0]}` with `1` marking membership in `S`.
//!
//! Floats are written in the shortest decimal form that parses back to the
//! same `f64`, so writing and re-reading an instance is bit-exact.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::instance::{Cut, Instance};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceFile {
    pub n: usize,
    pub weights: Vec<(usize, usize, f64)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

impl From<&Instance> for InstanceFile {
    fn from(inst: &Instance) -> Self {
        InstanceFile {
            n: inst.n(),
            weights: inst.edges().collect(),
            labels: inst.labels().map(<[String]>::to_vec),
        }
    }
}

impl TryFrom<InstanceFile> for Instance {
    type Error = Error;

    fn try_from(file: InstanceFile) -> Result<Instance> {
        let inst = Instance::from_edges(file.n, &file.weights)?;
        match file.labels {
            Some(labels) => inst.with_labels(labels),
            None => Ok(inst),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CutFile {
    pub side: Vec<u8>,
}

impl From<&Cut> for CutFile {
    fn from(cut: &Cut) -> Self {
        CutFile { side: cut.sides().iter().map(|&s| s as u8).collect() }
    }
}

impl TryFrom<CutFile> for Cut {
    type Error = Error;

    fn try_from(file: CutFile) -> Result<Cut> {
        let side = file
            .side
            .iter()
            .map(|&s| match s {
                0 => Ok(false),
                1 => Ok(true),
                other => Err(Error::Format(format!("cut entries must be 0 or 1, got {other}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Cut::new(side)
    }
}

/// Embedded cuts use the cut-file layout, so a `cut` field of any report can
/// be saved as a cut file.
impl Serialize for Cut {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CutFile::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Cut {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Cut, D::Error> {
        Cut::try_from(CutFile::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}

pub fn instance_to_json(inst: &Instance) -> String {
    serde_json::to_string(&InstanceFile::from(inst)).expect("instance serializes")
}

pub fn instance_from_json(text: &str) -> Result<Instance> {
    let file: InstanceFile = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
    Instance::try_from(file)
}

pub fn cut_to_json(cut: &Cut) -> String {
    serde_json::to_string(&CutFile::from(cut)).expect("cut serializes")
}

pub fn cut_from_json(text: &str) -> Result<Cut> {
    let file: CutFile = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
    Cut::try_from(file)
}

/// A cut read from a file must match the instance it is applied to.
pub fn check_cut_for(inst: &Instance, cut: &Cut) -> Result<()> {
    if cut.len() != inst.n() {
        return Err(Error::InvalidCut(format!(
            "cut has {} entries but the instance has {} vertices",
            cut.len(),
            inst.n()
        )));
    }
    Ok(())
}

/// Serde adapter writing infinite values as the strings `"inf"` / `"-inf"`.
pub mod inf_f64 {
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(value: &f64, s: S) -> Result<S::Ok, S::Error> {
        if value.is_infinite() {
            s.serialize_str(if *value > 0.0 { "inf" } else { "-inf" })
        } else {
            s.serialize_f64(*value)
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Num(f64),
            Str(String),
        }
        match Repr::deserialize(d)? {
            Repr::Num(x) => Ok(x),
            Repr::Str(s) if s == "inf" => Ok(f64::INFINITY),
            Repr::Str(s) if s == "-inf" => Ok(f64::NEG_INFINITY),
            Repr::Str(s) => Err(de::Error::custom(format!("expected a number or \"inf\", got {s:?}"))),
        }
    }

    /// The same convention as a free-standing JSON value.
    pub fn to_value(value: f64) -> serde_json::Value {
        if value.is_infinite() {
            serde_json::Value::from(if value > 0.0 { "inf" } else { "-inf" })
        } else {
            serde_json::Value::from(value)
        }
    }

    /// Same convention for optional values.
    pub mod option {
        use serde::{Deserialize, Deserializer, Serializer};

        pub fn serialize<S: Serializer>(value: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
            match value {
                Some(v) => super::serialize(v, s),
                None => s.serialize_none(),
            }
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<f64>, D::Error> {
            #[derive(Deserialize)]
            struct Wrap(#[serde(with = "super")] f64);
            Ok(Option::<Wrap>::deserialize(d)?.map(|Wrap(x)| x))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{c4, k3};
    use proptest::prelude::*;
    use serde::{Deserialize, Serialize};

    #[test]
    fn instance_round_trip_with_labels() {
        let inst = k3().with_labels(vec!["a".into(), "b".into(), "c".into()]).unwrap();
        let text = instance_to_json(&inst);
        assert_eq!(instance_from_json(&text).unwrap(), inst);
        assert!(text.contains("\"labels\""));
    }

    #[test]
    fn instance_format_lists_pairs_once() {
        let text = instance_to_json(&c4());
        assert_eq!(text, r#"{"n":4,"weights":[[0,1,1.0],[0,3,1.0],[1,2,1.0],[2,3,1.0]]}"#);
    }

    #[test]
    fn malformed_inputs() {
        assert!(matches!(instance_from_json("{\"n\": 3}"), Err(Error::Format(_))));
        assert!(matches!(instance_from_json("not json"), Err(Error::Format(_))));
        assert!(matches!(cut_from_json("{\"side\": [0, 2]}"), Err(Error::Format(_))));
        assert!(matches!(cut_from_json("{\"side\": [0, 0, 0]}"), Err(Error::InvalidCut(_))));
        let cut = cut_from_json("{\"side\": [1, 0]}").unwrap();
        assert!(check_cut_for(&k3(), &cut).is_err());
    }

    #[test]
    fn infinity_as_string() {
        #[derive(Serialize, Deserialize, PartialEq, Debug)]
        struct R {
            #[serde(with = "inf_f64")]
            g: f64,
            #[serde(with = "inf_f64::option")]
            h: Option<f64>,
        }
        let r = R { g: f64::INFINITY, h: Some(f64::INFINITY) };
        let text = serde_json::to_string(&r).unwrap();
        assert_eq!(text, r#"{"g":"inf","h":"inf"}"#);
        assert_eq!(serde_json::from_str::<R>(&text).unwrap(), r);
        let r = R { g: 2.5, h: None };
        assert_eq!(serde_json::from_str::<R>(&serde_json::to_string(&r).unwrap()).unwrap(), r);
    }

    proptest! {
        #[test]
        fn weights_round_trip_bit_exact(ws in proptest::collection::vec(1e-300f64..1e300, 6)) {
            let edges: Vec<_> = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
                .iter()
                .zip(&ws)
                .map(|(&(i, j), &w)| (i, j, w))
                .collect();
            let inst = Instance::from_edges(4, &edges).unwrap();
            let back = instance_from_json(&instance_to_json(&inst)).unwrap();
            for (a, b) in inst.weights().iter().zip(back.weights()) {
                prop_assert_eq!(a.to_bits(), b.to_bits());
            }
        }
    }
}
