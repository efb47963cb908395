mod expect;
mod golay;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use rayon::prelude::*;
use serde::Serialize;

use z3orbifold::catalog::{self, CatalogError, ComponentAutoKey, NiemeierKey, SigmaKey};
use z3orbifold::json::to_canonical_string;
use z3orbifold::liealg::{self, SemisimpleType};
use z3orbifold::orbifold::{self, OrbifoldError, OrbifoldReport};

const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser)]
#[command(name = "z3orb", version, about = "Order-3 orbifold numerology for Niemeier lattices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the ternary Golay code and its permutations.
    Golay {
        #[arg(long)]
        json: bool,
        #[arg(long, hide = true)]
        corrupt_generator: Option<usize>,
    },
    /// Build a catalog lattice or enumerate its roots.
    Lattice {
        #[command(subcommand)]
        action: LatticeAction,
    },
    /// Full invariant report for a catalog pair.
    Orbifold {
        lattice: NiemeierKey,
        sigma: SigmaKey,
        #[arg(long)]
        json: bool,
    },
    /// Enumerate semisimple types of a given dimension.
    Candidates {
        #[arg(long)]
        dim: u64,
        #[arg(long)]
        rank: Option<usize>,
        /// Every dual Coxeter number must be divisible by this.
        #[arg(long, default_value_t = 1)]
        hdvd: u64,
        #[arg(long)]
        json: bool,
    },
    /// Match a (possibly partial) type against the stored Schellekens rows.
    Schellekens {
        #[arg(long)]
        dim: u64,
        #[arg(long = "type")]
        ty: SemisimpleType,
        #[arg(long)]
        json: bool,
    },
    /// Run the Golay checks and every catalog construction.
    VerifyAll {
        /// Only constructions whose key contains this string.
        #[arg(long)]
        filter: Option<String>,
        /// Write one JSON report per construction here.
        #[arg(long)]
        emit_dir: Option<PathBuf>,
        /// Stop at the first failing construction.
        #[arg(long)]
        fail_fast: bool,
        #[arg(long)]
        json: bool,
    },
    /// Inspect the catalog.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Subcommand)]
enum LatticeAction {
    Build {
        key: NiemeierKey,
        #[arg(long)]
        json: bool,
    },
    Roots {
        key: NiemeierKey,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    List {
        #[arg(long)]
        json: bool,
    },
    /// Dump one entry as JSON.
    Dump {
        key: String,
        #[arg(long)]
        json: bool,
    },
}

/// Exit codes: 0 pass, 1 check failure, 2 usage, 3 internal.
enum Failure {
    Check(String),
    Usage(String),
    Internal(String),
}

impl From<OrbifoldError> for Failure {
    fn from(e: OrbifoldError) -> Self {
        match e {
            OrbifoldError::NotIsometry(_)
            | OrbifoldError::WrongOrder { .. }
            | OrbifoldError::Unsupported(_)
            | OrbifoldError::Catalog(CatalogError::NotStabilized { .. }) => Failure::Check(e.to_string()),
            e => Failure::Internal(e.to_string()),
        }
    }
}

impl From<CatalogError> for Failure {
    fn from(e: CatalogError) -> Self {
        Failure::Internal(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(m)) => {
            eprintln!("check failed: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(m)) => {
            eprintln!("usage error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(m)) => {
            eprintln!("internal error: {m}");
            ExitCode::from(3)
        }
    }
}

fn emit<T: Serialize>(value: &T) {
    print!("{}", to_canonical_string(value));
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Golay { json, corrupt_generator } => {
            let r = golay::run(corrupt_generator).map_err(Failure::Usage)?;
            if json {
                emit(&r);
            } else {
                print!("{}", golay::render(&r));
            }
            match r.checks.iter().find(|c| !c.pass) {
                Some(c) => Err(Failure::Check(format!("golay: {}", c.name))),
                None => Ok(()),
            }
        }
        Command::Lattice { action } => lattice(action),
        Command::Orbifold { lattice, sigma, json } => {
            if sigma.lattice() != lattice {
                return Err(Failure::Usage(format!(
                    "{} acts on {}, not {}",
                    sigma.as_str(),
                    sigma.lattice().as_str(),
                    lattice.as_str()
                )));
            }
            let (report, mismatches) = checked_report(sigma)?;
            if json {
                emit(&report);
            } else {
                print!("{}", render_report(&report, &mismatches));
            }
            fail_on(&report, &mismatches)
        }
        Command::Candidates { dim, rank, hdvd, json } => {
            let found = liealg::semisimple_candidates(dim, rank, hdvd).map_err(|e| Failure::Usage(e.to_string()))?;
            if json {
                emit(&serde_json::json!({
                    "dim": dim,
                    "rank": rank,
                    "hcoxeter_divisor": hdvd,
                    "candidates": found,
                }));
            } else {
                let rank = rank.map_or("any".to_string(), |r| r.to_string());
                println!("dim {dim}, rank {rank}, h∨ divisible by {hdvd}: {} candidates", found.len());
                for t in &found {
                    println!("  {t}");
                }
            }
            Ok(())
        }
        Command::Schellekens { dim, ty, json } => {
            let rows = liealg::schellekens_match(dim, &ty);
            let labels: Vec<_> = rows
                .iter()
                .map(|n| {
                    let row = liealg::table().schellekens.iter().find(|r| r.number == *n).expect("matched row");
                    serde_json::json!({ "number": n, "label": row.label })
                })
                .collect();
            if json {
                emit(&serde_json::json!({ "dim_v1": dim, "type": ty, "matches": labels }));
            } else {
                println!("dim {dim}, type {ty}: {rows:?}");
                for l in &labels {
                    println!("  No. {} {}", l["number"], l["label"].as_str().unwrap_or(""));
                }
            }
            Ok(())
        }
        Command::VerifyAll { filter, emit_dir, fail_fast, json } => verify_all(filter, emit_dir, fail_fast, json),
        Command::Catalog { action } => catalog_cmd(action),
    }
}

fn lattice(action: LatticeAction) -> Result<(), Failure> {
    match action {
        LatticeAction::Build { key, json } => {
            let n = catalog::niemeier(key)?;
            if json {
                emit(&n.to_json());
            } else {
                let l = &n.lattice;
                println!("{} ({})", key.as_str(), key.description());
                println!("  rank {}, det {}, even {}", l.rank(), l.det(), l.is_even());
                println!("  index over root lattice {}", n.index);
                println!("  roots {} of type {}", n.roots.count(), z3orbifold::roots::format_type_multiset(&n.roots.types()));
            }
            Ok(())
        }
        LatticeAction::Roots { key, json } => {
            let n = catalog::niemeier(key)?;
            if json {
                emit(&n.roots.to_json());
            } else {
                println!("{}: {} roots", key.as_str(), n.roots.count());
                for c in &n.roots.components {
                    println!("  {} with {} roots", c.dynkin, c.roots.len());
                }
            }
            Ok(())
        }
    }
}

fn catalog_cmd(action: CatalogAction) -> Result<(), Failure> {
    match action {
        CatalogAction::List { json } => {
            let entries = catalog::list();
            if json {
                emit(&entries);
            } else {
                for e in &entries {
                    println!("{:<10} {:<9} {:<8} {}", e.key, e.kind, e.lattice, e.description);
                }
            }
            Ok(())
        }
        CatalogAction::Dump { key, json: _ } => {
            if let Ok(k) = key.parse::<NiemeierKey>() {
                emit(&catalog::niemeier(k)?.to_json());
            } else if let Ok(k) = key.parse::<SigmaKey>() {
                emit(&catalog::sigma(k)?.to_json());
            } else if let Some(k) = ComponentAutoKey::ALL.iter().find(|k| k.name() == key) {
                let a = catalog::component_auto(*k)?;
                emit(&serde_json::json!({
                    "name": k.name(),
                    "component": k.component().to_string(),
                    "matrix": z3orbifold::lattice::rat_rows(&a.isometry.matrix.to_rat()),
                    "fixed_rank": a.isometry.fixed_rank(),
                    "glue_action": a.glue_action,
                }));
            } else {
                return Err(Failure::Usage(format!("unknown catalog key {key:?}")));
            }
            Ok(())
        }
    }
}

fn checked_report(sigma: SigmaKey) -> Result<(OrbifoldReport, Vec<expect::Mismatch>), Failure> {
    let report = orbifold::catalog_report(sigma)?;
    let n = catalog::niemeier(sigma.lattice())?;
    let s = catalog::sigma(sigma)?;
    if !orbifold::commutator_is_alternating(&n.lattice, &s.isometry)? {
        return Err(Failure::Internal(format!("{}: commutator form is not alternating", sigma.as_str())));
    }
    let expectations = expect::load();
    let c = expectations
        .find(sigma.as_str())
        .ok_or_else(|| Failure::Internal(format!("no expectations for {}", sigma.as_str())))?;
    let (_, mismatches) = expect::compare(&report, c);
    Ok((report, mismatches))
}

fn fail_on(report: &OrbifoldReport, mismatches: &[expect::Mismatch]) -> Result<(), Failure> {
    for m in mismatches {
        eprintln!(
            "MISMATCH {} {}: expected {} ({}), got {}",
            report.sigma, m.field, m.expected, m.provenance, m.got
        );
    }
    if !report.passed() {
        return Err(Failure::Check(format!("{}: structural checks", report.sigma)));
    }
    if !mismatches.is_empty() {
        return Err(Failure::Check(format!("{}: {} expectation(s) differ", report.sigma, mismatches.len())));
    }
    Ok(())
}

fn yes(b: bool) -> &'static str {
    if b {
        "ok"
    } else {
        "FAILED"
    }
}

fn render_report(r: &OrbifoldReport, mismatches: &[expect::Mismatch]) -> String {
    let mut out = format!("{} / {}\n", r.lattice, r.sigma);
    out += &format!(
        "  checks       isometry {}, order 3 {}, stabilizes {}\n",
        yes(r.checks.isometry),
        yes(r.checks.order),
        yes(r.checks.stabilizes)
    );
    out += &format!("  eigen        h0={} h1={} h2={}\n", r.eigen[0], r.eigen[1], r.eigen[2]);
    out += &format!("  rho          {}\n", z3orbifold::exactmat::rat_to_string(&r.rho));
    out += &format!("  ranks        N={} M={} R={}\n", r.ranks.N, r.ranks.M, r.ranks.R);
    out += &format!("  |N/M|        {}\n", r.indices.N_over_M);
    out += &format!("  |N/R|        {}{}\n", r.indices.N_over_R, if r.r_equals_m { " (R = M)" } else { "" });
    out += &format!(
        "  dims         fixed {}, twisted {} each, total {}\n",
        r.dims.fixed, r.dims.twisted_each, r.dims.total
    );
    for c in &r.candidates {
        let rank = c.rank.map_or("any".to_string(), |x| x.to_string());
        let found: Vec<String> = c.found.iter().map(|t| t.to_string()).collect();
        out += &format!("  candidates   dim {}, rank {rank}, h∨ in {}Z: {}\n", c.dim, c.hcoxeter_divisor, found.join(" "));
        if !c.missing.is_empty() {
            out += &format!("               MISSING from enumeration: {}\n", c.missing.join(" "));
        }
        if c.has_discrepancy() {
            out += &format!("               not in the reference list: {}\n", c.unlisted.join(" "));
        }
    }
    if let Some(t) = &r.resolved {
        out += &format!("  resolved     {t}\n");
    }
    out += &format!("  schellekens  {:?}\n", r.schellekens);
    out += &format!(
        "  expected     {}\n",
        if mismatches.is_empty() { "all match".to_string() } else { format!("{} mismatch(es)", mismatches.len()) }
    );
    out
}

#[derive(Serialize)]
struct Summary {
    golay: bool,
    constructions: usize,
    passed: usize,
    failed: Vec<String>,
}

#[derive(Serialize)]
struct ReportBundle {
    tool_version: &'static str,
    table_checksum: String,
    reports: Vec<OrbifoldReport>,
    summary: Summary,
}

fn verify_all(filter: Option<String>, emit_dir: Option<PathBuf>, fail_fast: bool, json: bool) -> Result<(), Failure> {
    let golay = golay::run(None).map_err(Failure::Internal)?;
    if !json {
        print!("{}", golay::render(&golay));
    }
    if fail_fast && !golay.passed {
        return Err(Failure::Check("golay".into()));
    }
    let keys: Vec<SigmaKey> = SigmaKey::ALL
        .into_iter()
        .filter(|k| filter.as_deref().is_none_or(|f| k.as_str().contains(f) || k.lattice().as_str().contains(f)))
        .collect();
    if keys.is_empty() {
        return Err(Failure::Usage(format!("filter {filter:?} selects nothing")));
    }
    let results: Vec<Result<(OrbifoldReport, Vec<expect::Mismatch>), Failure>> = if fail_fast {
        let mut v = Vec::new();
        for &k in &keys {
            let r = checked_report(k);
            let stop = !matches!(&r, Ok((rep, m)) if m.is_empty() && rep.passed());
            v.push(r);
            if stop {
                break;
            }
        }
        v
    } else {
        keys.par_iter().map(|&k| checked_report(k)).collect()
    };

    let mut reports = Vec::new();
    let mut passed = 0;
    let mut failed = Vec::new();
    let mut internal = None;
    let mut rows = Vec::new();
    for (k, r) in keys.iter().zip(results) {
        match r {
            Ok((rep, mismatches)) => {
                let ok = rep.passed() && mismatches.is_empty();
                passed += usize::from(ok);
                if !ok {
                    failed.push(k.as_str().to_string());
                    let _ = fail_on(&rep, &mismatches);
                }
                rows.push(format!(
                    "{:<8} {:<8} {:>5} {:>7} {:>5} {:>7}  {:<12} {}",
                    k.as_str(),
                    rep.lattice,
                    rep.dims.fixed,
                    rep.dims.twisted_each.to_string(),
                    rep.dims.total.to_string(),
                    rep.indices.N_over_R.to_string(),
                    format!("{:?}", rep.schellekens),
                    if ok { "PASS" } else { "FAIL" }
                ));
                reports.push(rep);
            }
            Err(e) => {
                failed.push(k.as_str().to_string());
                let msg = match &e {
                    Failure::Check(m) | Failure::Usage(m) | Failure::Internal(m) => m.clone(),
                };
                eprintln!("{}: {msg}", k.as_str());
                rows.push(format!("{:<8} error: {msg}", k.as_str()));
                if matches!(e, Failure::Internal(_)) && internal.is_none() {
                    internal = Some(msg);
                }
            }
        }
    }

    if let Some(dir) = &emit_dir {
        std::fs::create_dir_all(dir).map_err(|e| Failure::Usage(format!("{}: {e}", dir.display())))?;
        for rep in &reports {
            let path = dir.join(format!("{}__{}.json", rep.lattice, rep.sigma));
            std::fs::write(&path, to_canonical_string(rep))
                .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
        }
    }

    let summary = Summary { golay: golay.passed, constructions: keys.len(), passed, failed: failed.clone() };
    if json {
        emit(&ReportBundle {
            tool_version: TOOL_VERSION,
            table_checksum: liealg::table().checksum.clone(),
            reports,
            summary,
        });
    } else {
        println!();
        println!("{:<8} {:<8} {:>5} {:>7} {:>5} {:>7}  {:<12} status", "sigma", "lattice", "fixed", "twisted", "total", "|N/R|", "schellekens");
        for row in &rows {
            println!("{row}");
        }
        println!();
        println!("golay: {}", if summary.golay { "PASS" } else { "FAIL" });
        println!("{}/{} constructions pass", summary.passed, summary.constructions);
    }

    if let Some(m) = internal {
        return Err(Failure::Internal(m));
    }
    if !golay.passed || !failed.is_empty() {
        return Err(Failure::Check(format!("failing: {}", failed.join(", "))));
    }
    Ok(())
}
