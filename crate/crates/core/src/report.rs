//! Machine-readable command reports.

use serde::Serialize;
use serde_json::{Map, Value};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn is_pass(self) -> bool {
        self == Verdict::Pass
    }

    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Pass => 0,
            Verdict::Fail => 1,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema_version: &'static str,
    pub command: String,
    pub parameters: Map<String, Value>,
    pub verdict: Verdict,
    pub details: Value,
    pub wall_time_ms: u64,
}

impl Report {
    pub fn new(command: impl Into<String>, verdict: Verdict, details: impl Serialize) -> Self {
        Report {
            schema_version: SCHEMA_VERSION,
            command: command.into(),
            parameters: Map::new(),
            verdict,
            details: serde_json::to_value(details).expect("report details serialize"),
            wall_time_ms: 0,
        }
    }

    pub fn param(mut self, key: &str, value: impl Serialize) -> Self {
        self.parameters
            .insert(key.into(), serde_json::to_value(value).expect("parameter serializes"));
        self
    }

    pub fn to_json(&self, pretty: bool) -> String {
        if pretty {
            serde_json::to_string_pretty(self)
        } else {
            serde_json::to_string(self)
        }
        .expect("report serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, Frac};

    #[test]
    fn report_layout() {
        let r = Report::new("certify dp", Verdict::Pass, serde_json::json!({ "v": Frac(frac(37, 60)) }))
            .param("x", 3);
        let v: Value = serde_json::from_str(&r.to_json(false)).unwrap();
        assert_eq!(v["schema_version"], "1");
        assert_eq!(v["verdict"], "pass");
        assert_eq!(v["details"]["v"], "37/60");
        assert_eq!(v["parameters"]["x"], 3);
        assert_eq!(Verdict::from_bool(false).exit_code(), 1);
    }
}
