//! Verification reports: compared identities, boolean facts and witnesses.
//!
//! Every map is a `BTreeMap` so reports serialize with sorted keys.

use std::collections::BTreeMap;
use std::fmt::{self, Display};

use num_bigint::BigInt;
use serde::{Serialize, Serializer};
use serde_json::Value;

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct IdentityCheck {
    pub name: String,
    pub left: Value,
    pub right: Value,
    pub left_text: String,
    pub right_text: String,
    pub equal: bool,
}

#[derive(Clone, Debug, Default, Serialize, PartialEq)]
pub struct Report {
    pub subject: String,
    pub identity_checks: Vec<IdentityCheck>,
    pub facts: BTreeMap<String, bool>,
    pub values: BTreeMap<String, Value>,
    pub witnesses: BTreeMap<String, Value>,
    /// Failed assertions. An empty list means the report passed.
    pub violations: Vec<String>,
}

impl Report {
    pub fn new(subject: impl Into<String>) -> Self {
        Self {
            subject: subject.into(),
            ..Self::default()
        }
    }

    /// Records both sides of an identity and returns whether they agree.
    pub fn compare<T>(&mut self, name: &str, left: &T, right: &T) -> bool
    where
        T: Serialize + Display + PartialEq,
    {
        let equal = left == right;
        self.identity_checks.push(IdentityCheck {
            name: name.to_owned(),
            left: serde_json::to_value(left).expect("serializable"),
            right: serde_json::to_value(right).expect("serializable"),
            left_text: left.to_string(),
            right_text: right.to_string(),
            equal,
        });
        equal
    }

    /// Like [`Report::compare`], but a mismatch is a violation.
    pub fn require_equal<T>(&mut self, name: &str, left: &T, right: &T) -> bool
    where
        T: Serialize + Display + PartialEq,
    {
        let equal = self.compare(name, left, right);
        if !equal {
            self.violations
                .push(format!("{name}: {left} != {right}"));
        }
        equal
    }

    pub fn fact(&mut self, name: &str, value: bool) -> bool {
        self.facts.insert(name.to_owned(), value);
        value
    }

    pub fn require(&mut self, name: &str, holds: bool, detail: impl Display) -> bool {
        self.facts.insert(name.to_owned(), holds);
        if !holds {
            self.violations.push(format!("{name}: {detail}"));
        }
        holds
    }

    pub fn value(&mut self, name: &str, v: impl Serialize) {
        self.values
            .insert(name.to_owned(), serde_json::to_value(v).expect("serializable"));
    }

    pub fn witness(&mut self, name: &str, v: impl Serialize) {
        self.witnesses
            .insert(name.to_owned(), serde_json::to_value(v).expect("serializable"));
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn identity(&self, name: &str) -> Option<&IdentityCheck> {
        self.identity_checks.iter().find(|c| c.name == name)
    }

    /// Folds another report in, prefixing its names.
    pub fn absorb(&mut self, prefix: &str, other: Report) {
        let p = |s: &str| format!("{prefix}.{s}");
        for mut c in other.identity_checks {
            c.name = p(&c.name);
            self.identity_checks.push(c);
        }
        self.facts
            .extend(other.facts.into_iter().map(|(k, v)| (p(&k), v)));
        self.values
            .extend(other.values.into_iter().map(|(k, v)| (p(&k), v)));
        self.witnesses
            .extend(other.witnesses.into_iter().map(|(k, v)| (p(&k), v)));
        self.violations
            .extend(other.violations.into_iter().map(|v| p(&v)));
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

impl Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{} [{}]",
            self.subject,
            if self.passed() { "ok" } else { "FAILED" }
        )?;
        for c in &self.identity_checks {
            let rel = if c.equal { "==" } else { "!=" };
            writeln!(f, "  {}: {} {rel} {}", c.name, c.left_text, c.right_text)?;
        }
        for (k, v) in &self.facts {
            writeln!(f, "  {k}: {v}")?;
        }
        for v in &self.violations {
            writeln!(f, "  violation: {v}")?;
        }
        Ok(())
    }
}

pub(crate) fn ser_bigint<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::IntPolynomial;

    #[test]
    fn violations_track_failed_requirements() {
        let mut r = Report::new("demo");
        let a = IntPolynomial::from_i64s(&[1, 1]);
        assert!(r.require_equal("same", &a, &a.clone()));
        assert!(r.passed());
        assert!(!r.compare("soft", &a, &IntPolynomial::one()));
        assert!(r.passed());
        r.require("flag", false, "did not hold");
        assert!(!r.passed());
        let js = serde_json::to_value(&r).unwrap();
        assert_eq!(js["identity_checks"][0]["left"], serde_json::json!(["1", "1"]));
        assert_eq!(js["identity_checks"][1]["equal"], serde_json::json!(false));
    }

    #[test]
    fn absorb_prefixes_names() {
        let mut inner = Report::new("inner");
        inner.fact("x", true);
        inner.require("y", false, "no");
        let mut outer = Report::new("outer");
        outer.absorb("sub", inner);
        assert_eq!(outer.facts.get("sub.x"), Some(&true));
        assert_eq!(outer.violations, vec!["sub.y: no".to_string()]);
    }
}
