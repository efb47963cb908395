use serde::Serialize;
use std::collections::BTreeMap;

use z3orbifold::terncode::{self, Permutation, TernaryCode, SIGMA_PRIME_CYCLES};

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct GolayReport {
    pub generators: Vec<String>,
    pub dimension: usize,
    pub size: usize,
    pub min_weight: Option<usize>,
    pub weight_distribution: BTreeMap<String, usize>,
    pub sigma_prime: String,
    pub checks: Vec<Check>,
    pub passed: bool,
}

/// Builds the code from the standard generators, optionally perturbing one.
pub fn run(corrupt: Option<usize>) -> Result<GolayReport, String> {
    let mut gens = terncode::golay_generators();
    if let Some(i) = corrupt {
        let g = gens.get_mut(i).ok_or_else(|| format!("no generator {i}"))?;
        g[1] = (g[1] + 1) % 3;
    }
    let code = TernaryCode::from_generators(terncode::LENGTH, &gens).map_err(|e| e.to_string())?;
    let dist = code.weight_distribution();
    let expected_dist = BTreeMap::from([(0, 1), (6, 264), (9, 440), (12, 24)]);
    let sp = terncode::sigma_prime();
    let mut checks = Vec::new();
    let mut check = |name, pass, detail: String| checks.push(Check { name, pass, detail });
    check("dimension", code.span_dim() == 6, code.span_dim().to_string());
    check("size", code.size() == 729, code.size().to_string());
    check("min_weight", code.min_weight() == Some(6), code.min_weight().map_or("none".into(), |w| w.to_string()));
    check("weight_distribution", dist == expected_dist, format!("{dist:?}"));
    check("self_dual", code.is_self_dual(), String::new());
    check("stable_nu", code.stable_under(&terncode::nu()), terncode::nu().to_string());
    check("stable_delta", code.stable_under(&terncode::delta()), terncode::delta().to_string());
    check("stable_sigma_prime", code.stable_under(&sp), String::new());
    check("sigma_prime_order", sp.order() == 3, sp.order().to_string());
    let cycles = Permutation::from_cycles(SIGMA_PRIME_CYCLES).map_err(|e| e.to_string())?;
    check("sigma_prime_cycles", sp == cycles, sp.to_string());
    let passed = checks.iter().all(|c| c.pass);
    Ok(GolayReport {
        generators: gens.iter().map(|w| terncode::word_string(w)).collect(),
        dimension: code.span_dim(),
        size: code.size(),
        min_weight: code.min_weight(),
        weight_distribution: dist.iter().map(|(w, n)| (w.to_string(), *n)).collect(),
        sigma_prime: sp.to_string(),
        checks,
        passed,
    })
}

pub fn render(r: &GolayReport) -> String {
    let mut out = format!("ternary Golay code, {} generators\n", r.generators.len());
    for c in &r.checks {
        let tag = if c.pass { "PASS" } else { "FAIL" };
        if c.detail.is_empty() {
            out.push_str(&format!("  {tag} {}\n", c.name));
        } else {
            out.push_str(&format!("  {tag} {}: {}\n", c.name, c.detail));
        }
    }
    out
}
