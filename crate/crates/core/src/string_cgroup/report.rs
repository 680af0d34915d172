use std::fmt::{self, Display};

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum AssertionClass {
    /// An input did not meet the hypotheses; nothing further was computed.
    Hypothesis,
    /// A computed value disagreed with the structural statement it checks.
    Structure,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Assertion {
    pub name: String,
    pub expected: String,
    pub observed: String,
    pub pass: bool,
    pub class: AssertionClass,
}

/// Pass/fail record for one group. `overall` is the conjunction of every
/// assertion.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub group_id: String,
    pub order: String,
    pub n: Option<u32>,
    pub d: usize,
    pub assertions: Vec<Assertion>,
    pub overall: bool,
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub fn new(group_id: impl Into<String>, order: u128, d: usize) -> Self {
        VerificationReport {
            group_id: group_id.into(),
            order: order.to_string(),
            n: order.is_power_of_two().then(|| order.trailing_zeros()),
            d,
            assertions: Vec::new(),
            overall: true,
            notes: Vec::new(),
        }
    }

    pub fn record(&mut self, name: impl Into<String>, expected: impl Display, observed: impl Display, pass: bool) {
        self.push(name.into(), expected.to_string(), observed.to_string(), pass, AssertionClass::Structure);
    }

    pub fn expect_eq<T: Display + PartialEq>(&mut self, name: impl Into<String>, expected: T, observed: T) {
        let pass = expected == observed;
        self.record(name, expected, observed, pass);
    }

    pub fn expect_true(&mut self, name: impl Into<String>, observed: bool) {
        self.expect_eq(name, true, observed);
    }

    pub fn hypothesis(&mut self, name: impl Into<String>, expected: impl Display, observed: impl Display, pass: bool) {
        self.push(name.into(), expected.to_string(), observed.to_string(), pass, AssertionClass::Hypothesis);
    }

    fn push(&mut self, name: String, expected: String, observed: String, pass: bool, class: AssertionClass) {
        self.overall &= pass;
        self.assertions.push(Assertion { name, expected, observed, pass, class });
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    pub fn failures(&self) -> impl Iterator<Item = &Assertion> {
        self.assertions.iter().filter(|a| !a.pass)
    }

    pub fn has_hypothesis_failure(&self) -> bool {
        self.failures().any(|a| a.class == AssertionClass::Hypothesis)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Fixed-width table, one assertion per row.
impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.n.map_or_else(|| "-".to_string(), |n| n.to_string());
        writeln!(f, "{}  order {}  n = {}  d = {}", self.group_id, self.order, n, self.d)?;
        let w_name = self.assertions.iter().map(|a| a.name.chars().count()).max().unwrap_or(4).max(9);
        let w_exp = self.assertions.iter().map(|a| a.expected.chars().count()).max().unwrap_or(8).max(8);
        let w_obs = self.assertions.iter().map(|a| a.observed.chars().count()).max().unwrap_or(8).max(8);
        writeln!(f, "  {:<w_name$}  {:<w_exp$}  {:<w_obs$}  result", "assertion", "expected", "observed")?;
        for a in &self.assertions {
            let verdict = match (a.pass, a.class) {
                (true, _) => "pass",
                (false, AssertionClass::Hypothesis) => "FAIL (hypothesis)",
                (false, AssertionClass::Structure) => "FAIL",
            };
            writeln!(f, "  {:<w_name$}  {:<w_exp$}  {:<w_obs$}  {verdict}", a.name, a.expected, a.observed)?;
        }
        for note in &self.notes {
            writeln!(f, "  note: {note}")?;
        }
        write!(f, "  overall: {}", if self.overall { "pass" } else { "FAIL" })
    }
}
