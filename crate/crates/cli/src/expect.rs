use serde::Deserialize;
use serde_json::Value;

use z3orbifold::orbifold::OrbifoldReport;

pub const EXPECTATIONS_JSON: &str = include_str!("../data/expectations.json");

#[derive(Debug, Deserialize)]
pub struct Expectations {
    pub constructions: Vec<Construction>,
}

#[derive(Debug, Deserialize)]
pub struct Construction {
    pub sigma: String,
    pub lattice: String,
    pub expected: std::collections::BTreeMap<String, Expected>,
}

#[derive(Debug, Deserialize)]
pub struct Expected {
    pub value: Value,
    /// `published` (stated in the source) or `derived` (follows from stated totals).
    pub provenance: String,
}

#[derive(Debug, Clone)]
pub struct Mismatch {
    pub field: String,
    pub expected: Value,
    pub got: Value,
    pub provenance: String,
}

pub fn load() -> Expectations {
    serde_json::from_str(EXPECTATIONS_JSON).expect("embedded expectations are valid")
}

fn pointer(field: &str) -> Option<&'static str> {
    Some(match field {
        "fixed_rank" => "/eigen/0",
        "rho" => "/rho",
        "fixed_dim" => "/dims/fixed",
        "N_over_R" => "/indices/N_over_R",
        "R_equals_M" => "/R_equals_M",
        "twisted_each" => "/dims/twisted_each",
        "total" => "/dims/total",
        "schellekens" => "/schellekens",
        _ => return None,
    })
}

impl Expectations {
    pub fn find(&self, sigma: &str) -> Option<&Construction> {
        self.constructions.iter().find(|c| c.sigma == sigma)
    }
}

/// Compares a report against its stored expectations; returns the number of
/// fields checked and every mismatch.
pub fn compare(report: &OrbifoldReport, c: &Construction) -> (usize, Vec<Mismatch>) {
    let value = serde_json::to_value(report).expect("report serializes");
    let mut bad = Vec::new();
    for (field, e) in &c.expected {
        let got = pointer(field).and_then(|p| value.pointer(p)).cloned().unwrap_or(Value::Null);
        if got != e.value {
            bad.push(Mismatch { field: field.clone(), expected: e.value.clone(), got, provenance: e.provenance.clone() });
        }
    }
    if report.lattice != c.lattice {
        bad.push(Mismatch {
            field: "lattice".into(),
            expected: Value::from(c.lattice.clone()),
            got: Value::from(report.lattice.clone()),
            provenance: "catalog".into(),
        });
    }
    (c.expected.len(), bad)
}
