use serde::{Deserialize, Serialize};

/// One named step of a symbolic derivation with canonical before/after forms.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DerivationStep {
    pub name: String,
    /// Equation label of the construction this step reproduces, e.g. `V1`.
    pub label: String,
    pub before: String,
    pub after: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DerivationReport {
    pub title: String,
    pub steps: Vec<DerivationStep>,
    /// Discrepancies between the computed forms and the printed ones.
    pub flags: Vec<String>,
}

impl DerivationReport {
    pub fn new(title: &str) -> Self {
        DerivationReport {
            title: title.to_string(),
            ..Default::default()
        }
    }

    pub fn step(
        &mut self,
        name: &str,
        label: &str,
        before: impl ToString,
        after: impl ToString,
        note: Option<String>,
    ) {
        self.steps.push(DerivationStep {
            name: name.to_string(),
            label: label.to_string(),
            before: before.to_string(),
            after: after.to_string(),
            note,
        });
    }

    pub fn flag(&mut self, msg: impl Into<String>) {
        self.flags.push(msg.into());
    }

    pub fn labels(&self) -> impl Iterator<Item = &str> {
        self.steps.iter().map(|s| s.label.as_str())
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report serializes")
    }
}
