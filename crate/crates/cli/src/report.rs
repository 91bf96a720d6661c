//! The JSON report every subcommand emits.

use serde::Serialize;
use serde_json::Value;

pub const SCHEMA: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    /// Matches the expected value, or nothing was expected.
    Ok,
    Differs,
    Indeterminate,
}

#[derive(Debug, Clone, Serialize)]
pub struct Verdict {
    pub name: String,
    pub value: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected: Option<Value>,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub budget: Option<Budget>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Budget {
    pub used: u64,
    pub limit: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema: u32,
    pub command: String,
    pub inputs: Value,
    pub verdicts: Vec<Verdict>,
    pub counterexamples: Vec<Value>,
    #[serde(skip_serializing_if = "Value::is_null")]
    pub details: Value,
    pub runtime_ms: u64,
    pub seed: u64,
}

impl Report {
    pub fn new(command: &str, inputs: Value) -> Self {
        Self {
            schema: SCHEMA,
            command: command.to_string(),
            inputs,
            verdicts: Vec::new(),
            counterexamples: Vec::new(),
            details: Value::Null,
            runtime_ms: 0,
            seed: 0,
        }
    }

    /// A verdict with no expectation attached.
    pub fn info(&mut self, name: &str, value: impl Serialize) -> &mut Verdict {
        self.push(name, value, None::<bool>)
    }

    pub fn expect(&mut self, name: &str, value: impl Serialize, expected: impl Serialize) -> &mut Verdict {
        self.push(name, value, Some(expected))
    }

    fn push(&mut self, name: &str, value: impl Serialize, expected: Option<impl Serialize>) -> &mut Verdict {
        let value = serde_json::to_value(value).expect("serialisable verdict");
        let expected = expected.map(|e| serde_json::to_value(e).expect("serialisable verdict"));
        let status = match &expected {
            Some(e) if *e != value => Status::Differs,
            _ => Status::Ok,
        };
        self.verdicts.push(Verdict { name: name.to_string(), value, expected, status, budget: None });
        self.verdicts.last_mut().expect("just pushed")
    }

    pub fn indeterminate(&mut self, name: &str, used: u64, limit: u64) {
        self.verdicts.push(Verdict {
            name: name.to_string(),
            value: Value::String("indeterminate".into()),
            expected: None,
            status: Status::Indeterminate,
            budget: Some(Budget { used, limit }),
        });
    }

    /// 0 when every verdict is as expected, 2 when some verdict ran out of
    /// budget, otherwise 1.
    pub fn exit_code(&self) -> i32 {
        if self.verdicts.iter().any(|v| v.status == Status::Indeterminate) {
            2
        } else if self.verdicts.iter().any(|v| v.status == Status::Differs) {
            1
        } else {
            0
        }
    }
}

impl Verdict {
    pub fn with_budget(&mut self, used: u64, limit: u64) {
        self.budget = Some(Budget { used, limit });
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        let mut r = Report::new("t", Value::Null);
        r.info("x", 3);
        assert_eq!(r.exit_code(), 0);
        r.expect("y", false, true);
        assert_eq!(r.verdicts[1].status, Status::Differs);
        assert_eq!(r.exit_code(), 1);
        r.indeterminate("z", 10, 10);
        assert_eq!(r.exit_code(), 2);
    }

    #[test]
    fn optional_fields_are_omitted() {
        let mut r = Report::new("t", Value::Null);
        r.info("x", true);
        let text = serde_json::to_string(&r).unwrap();
        assert!(!text.contains("expected") && !text.contains("details") && !text.contains("budget"));
    }
}
