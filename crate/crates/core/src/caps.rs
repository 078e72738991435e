//! Work limits shared by every stage of the pipeline.
//!
//! Defaults can be overridden with the `CYCLOCODE_CAPS` environment variable,
//! a comma separated list of `key=value` pairs, e.g.
//! `CYCLOCODE_CAPS="max_n=50000,field_bits=128,max_m=64,exhaustive=1048576"`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const CAPS_ENV: &str = "CYCLOCODE_CAPS";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Caps {
    /// Largest accepted code length n = n1 * n2.
    pub max_n: u64,
    /// Largest accepted m * log2(p) for an extension field GF(p^m).
    pub field_bits: u32,
    /// Largest extension degree ord_n(q) for which the classification layer runs.
    pub max_m: u32,
    /// Largest number of messages q^k enumerated by the exhaustive distance routine.
    pub exhaustive: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_n: 1_000_000,
            field_bits: 64,
            max_m: 64,
            exhaustive: 1 << 26,
        }
    }
}

impl Caps {
    pub fn from_env() -> Result<Caps> {
        match std::env::var(CAPS_ENV) {
            Ok(spec) => Caps::default().with_overrides(&spec),
            Err(_) => Ok(Caps::default()),
        }
    }

    pub fn with_overrides(mut self, spec: &str) -> Result<Caps> {
        for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (key, value) = item
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("cap override `{item}` is not key=value")))?;
            let value: u64 = value.trim().parse().map_err(|_| {
                Error::Parse(format!("cap override `{item}` has a non-integer value"))
            })?;
            match key.trim() {
                "max_n" => self.max_n = value,
                "field_bits" => self.field_bits = narrow(item, value)?,
                "max_m" => self.max_m = narrow(item, value)?,
                "exhaustive" => self.exhaustive = value,
                other => return Err(Error::Parse(format!("unknown cap `{other}`"))),
            }
        }
        Ok(self)
    }
}

fn narrow(item: &str, value: u64) -> Result<u32> {
    u32::try_from(value)
        .map_err(|_| Error::InvalidArgument(format!("cap override `{item}` is out of range")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overrides_parse() {
        let caps = Caps::default()
            .with_overrides("max_n=10, field_bits=100")
            .unwrap();
        assert_eq!(caps.max_n, 10);
        assert_eq!(caps.field_bits, 100);
        assert_eq!(caps.max_m, 64);
    }

    #[test]
    fn bad_overrides_rejected() {
        assert!(Caps::default().with_overrides("max_n").is_err());
        assert!(Caps::default().with_overrides("bogus=1").is_err());
        assert!(Caps::default()
            .with_overrides("field_bits=4294967296")
            .is_err());
    }
}
