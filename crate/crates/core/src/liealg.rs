//! Simple Lie algebra tables, level arithmetic, candidate enumeration and
//! Schellekens-row matching.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::lattice::{Isometry, Lattice};
use crate::roots::{enumerate_roots, DynkinType, Family, RootError, RootSystem};

/// The embedded data file.
pub const TABLE_JSON: &str = include_str!("../data/simple_lie.json");

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LieError {
    #[error("unknown simple type {0}")]
    UnknownType(String),
    #[error("cannot parse type {0:?}")]
    Parse(String),
    #[error("dim V1 = {0} must exceed 24")]
    DimTooSmall(u64),
    #[error("24*{h}/({dim}-24) is not an integer")]
    NonIntegral { h: u64, dim: u64 },
    #[error("hcoxeter divisor must be positive")]
    ZeroDivisor,
    #[error(transparent)]
    Root(#[from] RootError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimpleLieData {
    pub family: Family,
    pub rank: usize,
    pub dimension: u64,
    pub dual_coxeter: u64,
    pub root_count: u64,
    pub two_root_lengths: bool,
}

impl SimpleLieData {
    pub fn dynkin(&self) -> DynkinType {
        DynkinType::new(self.family, self.rank)
    }
}

#[derive(Deserialize)]
struct RawTable {
    version: u32,
    aliases: BTreeMap<String, String>,
    simple: Vec<SimpleLieData>,
    schellekens: Vec<RawRow>,
}

#[derive(Deserialize)]
struct RawRow {
    number: u32,
    dim_v1: u64,
    label: String,
    components: Vec<RawSummand>,
}

#[derive(Deserialize)]
struct RawSummand {
    #[serde(rename = "type")]
    ty: String,
    level: u64,
    count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchellekensRow {
    pub number: u32,
    pub dim_v1: u64,
    /// Label as printed in the source table (keeps `C2`).
    pub label: String,
    pub ty: SemisimpleType,
}

#[derive(Debug)]
pub struct LieTable {
    pub version: u32,
    /// Hex SHA-256 of [`TABLE_JSON`].
    pub checksum: String,
    pub simple: Vec<SimpleLieData>,
    aliases: BTreeMap<DynkinType, DynkinType>,
    pub schellekens: Vec<SchellekensRow>,
}

impl LieTable {
    pub fn parse(text: &str) -> Result<LieTable, LieError> {
        let raw: RawTable = serde_json::from_str(text).map_err(|e| LieError::Parse(e.to_string()))?;
        let mut aliases = BTreeMap::new();
        for (from, to) in &raw.aliases {
            aliases.insert(from.parse().map_err(LieError::Parse)?, to.parse().map_err(LieError::Parse)?);
        }
        let checksum = Sha256::digest(text.as_bytes()).iter().map(|b| format!("{b:02x}")).collect();
        let mut table = LieTable { version: raw.version, checksum, simple: raw.simple, aliases, schellekens: Vec::new() };
        for row in raw.schellekens {
            let mut parts = Vec::new();
            for s in &row.components {
                let ty = table.canonical(s.ty.parse().map_err(LieError::Parse)?)?;
                parts.extend(std::iter::repeat_n(Summand { ty, level: Some(s.level) }, s.count));
            }
            table.schellekens.push(SchellekensRow {
                number: row.number,
                dim_v1: row.dim_v1,
                label: row.label,
                ty: SemisimpleType::new(parts),
            });
        }
        Ok(table)
    }

    /// Resolves `C2 → B2`, `D3 → A3` and checks the type is tabulated.
    pub fn canonical(&self, t: DynkinType) -> Result<DynkinType, LieError> {
        let t = self.aliases.get(&t).copied().unwrap_or(t);
        self.lookup(t).map(|d| d.dynkin())
    }

    pub fn lookup(&self, t: DynkinType) -> Result<&SimpleLieData, LieError> {
        let t = self.aliases.get(&t).copied().unwrap_or(t);
        self.simple
            .iter()
            .find(|d| d.dynkin() == t)
            .ok_or_else(|| LieError::UnknownType(t.to_string()))
    }
}

pub fn table() -> &'static LieTable {
    static TABLE: OnceLock<LieTable> = OnceLock::new();
    TABLE.get_or_init(|| LieTable::parse(TABLE_JSON).expect("embedded Lie table is valid"))
}

/// `k = 24·h∨/(dim V₁ − 24)`.
pub fn level_from_dim(h: u64, dim_v1: u64) -> Result<u64, LieError> {
    if dim_v1 <= 24 {
        return Err(LieError::DimTooSmall(dim_v1));
    }
    let d = dim_v1 - 24;
    if !(24 * h).is_multiple_of(d) {
        return Err(LieError::NonIntegral { h, dim: dim_v1 });
    }
    Ok(24 * h / d)
}

/// A simple summand; `level = None` leaves the level unspecified.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Summand {
    pub ty: DynkinType,
    pub level: Option<u64>,
}

impl Summand {
    fn key(&self) -> (std::cmp::Reverse<usize>, std::cmp::Reverse<Family>, std::cmp::Reverse<Option<u64>>) {
        use std::cmp::Reverse;
        (Reverse(self.ty.rank), Reverse(self.ty.family), Reverse(self.level))
    }
}

impl PartialOrd for Summand {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Summand {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.key().cmp(&other.key())
    }
}

/// Multiset of simple summands, kept sorted by decreasing rank.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SemisimpleType {
    parts: Vec<Summand>,
}

impl SemisimpleType {
    pub fn new(mut parts: Vec<Summand>) -> Self {
        parts.sort();
        SemisimpleType { parts }
    }

    pub fn parts(&self) -> &[Summand] {
        &self.parts
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn dimension(&self) -> u64 {
        self.parts.iter().map(|p| table().lookup(p.ty).map_or(0, |d| d.dimension)).sum()
    }

    pub fn rank(&self) -> usize {
        self.parts.iter().map(|p| p.ty.rank).sum()
    }

    pub fn without_levels(&self) -> SemisimpleType {
        SemisimpleType::new(self.parts.iter().map(|p| Summand { ty: p.ty, level: None }).collect())
    }

    /// Type string with levels dropped, e.g. `C3^3A3`.
    pub fn shape(&self) -> String {
        self.without_levels().to_string()
    }
}

impl fmt::Display for SemisimpleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut i = 0;
        while i < self.parts.len() {
            let p = self.parts[i];
            let mut j = i;
            while j < self.parts.len() && self.parts[j] == p {
                j += 1;
            }
            write!(f, "{}", p.ty)?;
            if let Some(k) = p.level {
                write!(f, ",{k}")?;
            }
            if j - i > 1 {
                write!(f, "^{}", j - i)?;
            }
            i = j;
        }
        Ok(())
    }
}

impl FromStr for SemisimpleType {
    type Err = LieError;

    /// Accepts `A2,3^6`, `E6,3G2,1^3`, `B2A2A1^2`, with optional spaces or `+`.
    fn from_str(s: &str) -> Result<Self, LieError> {
        let bad = || LieError::Parse(s.to_string());
        let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace() && *c != '+').collect();
        let number = |i: &mut usize| -> Option<u64> {
            let start = *i;
            while *i < chars.len() && chars[*i].is_ascii_digit() {
                *i += 1;
            }
            chars[start..*i].iter().collect::<String>().parse().ok()
        };
        let mut parts = Vec::new();
        let mut i = 0;
        while i < chars.len() {
            let family = Family::from_char(chars[i]).ok_or_else(bad)?;
            i += 1;
            let rank = number(&mut i).ok_or_else(bad)? as usize;
            let mut level = None;
            if chars.get(i) == Some(&',') {
                i += 1;
                level = Some(number(&mut i).filter(|&k| k > 0).ok_or_else(bad)?);
            }
            let mut count = 1;
            if chars.get(i) == Some(&'^') {
                i += 1;
                count = number(&mut i).filter(|&c| c > 0).ok_or_else(bad)? as usize;
            }
            let ty = table().canonical(DynkinType::new(family, rank))?;
            parts.extend(std::iter::repeat_n(Summand { ty, level }, count));
        }
        if parts.is_empty() {
            return Err(bad());
        }
        Ok(SemisimpleType::new(parts))
    }
}

impl Serialize for SemisimpleType {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// All multisets of tabulated simple types with the given total dimension,
/// optional total rank, and every `h∨` divisible by `hdvd`. Levels are
/// `h∨/hdvd`.
pub fn semisimple_candidates(dim: u64, rank: Option<usize>, hdvd: u64) -> Result<Vec<SemisimpleType>, LieError> {
    if hdvd == 0 {
        return Err(LieError::ZeroDivisor);
    }
    let pool: Vec<&SimpleLieData> = table()
        .simple
        .iter()
        .filter(|d| d.dual_coxeter % hdvd == 0 && d.dimension <= dim)
        .collect();
    let mut out = Vec::new();
    let mut stack = Vec::new();
    search(&pool, 0, dim, rank, &mut stack, &mut out);
    let mut found: Vec<SemisimpleType> = out
        .into_iter()
        .map(|idx: Vec<usize>| {
            SemisimpleType::new(
                idx.iter()
                    .map(|&i| Summand { ty: pool[i].dynkin(), level: Some(pool[i].dual_coxeter / hdvd) })
                    .collect(),
            )
        })
        .collect();
    found.sort_by(|a, b| a.parts.len().cmp(&b.parts.len()).then_with(|| a.cmp(b)));
    Ok(found)
}

fn search(
    pool: &[&SimpleLieData],
    from: usize,
    dim_left: u64,
    rank_left: Option<usize>,
    stack: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if dim_left == 0 {
        if rank_left.is_none_or(|r| r == 0) {
            out.push(stack.clone());
        }
        return;
    }
    for i in from..pool.len() {
        let d = pool[i];
        if d.dimension > dim_left || rank_left.is_some_and(|r| d.rank > r) {
            continue;
        }
        stack.push(i);
        search(pool, i, dim_left - d.dimension, rank_left.map(|r| r - d.rank), stack, out);
        stack.pop();
    }
}

/// Candidate run compared against a reference list of type shapes.
#[derive(Debug, Clone, Serialize)]
pub struct CandidateReport {
    pub dim: u64,
    pub rank: Option<usize>,
    pub hcoxeter_divisor: u64,
    pub found: Vec<SemisimpleType>,
    pub reference: Vec<String>,
    /// Reference shapes the enumeration did not produce.
    pub missing: Vec<String>,
    /// Enumerated shapes absent from the reference list.
    pub unlisted: Vec<String>,
    /// Set when `unlisted` is non-empty.
    pub discrepancy: bool,
}

impl CandidateReport {
    pub fn contains_reference(&self) -> bool {
        self.missing.is_empty()
    }

    pub fn has_discrepancy(&self) -> bool {
        self.discrepancy
    }
}

pub fn candidate_report(
    dim: u64,
    rank: Option<usize>,
    hdvd: u64,
    reference: &[&str],
) -> Result<CandidateReport, LieError> {
    let found = semisimple_candidates(dim, rank, hdvd)?;
    let shapes: Vec<String> = found.iter().map(|t| t.shape()).collect();
    let reference: Vec<String> = reference
        .iter()
        .map(|r| r.parse::<SemisimpleType>().map(|t| t.shape()))
        .collect::<Result<_, _>>()?;
    let unlisted: Vec<String> = shapes.iter().filter(|s| !reference.contains(s)).cloned().collect();
    Ok(CandidateReport {
        discrepancy: !unlisted.is_empty(),
        unlisted,
        dim,
        rank,
        hcoxeter_divisor: hdvd,
        missing: reference.iter().filter(|r| !shapes.contains(r)).cloned().collect(),
        found,
        reference,
    })
}

/// `dim 𝔤^σ = rank of the fixed lattice + number of σ-orbits on roots`.
pub fn fixed_subalgebra_dim(roots: &RootSystem, auto: &Isometry) -> Result<usize, LieError> {
    let (orbits, _) = roots.orbit_count(auto)?;
    Ok(auto.fixed_rank() + orbits)
}

/// Rows with the same `dim V₁` whose type contains `query` as a sub-multiset;
/// summands without a level match any level.
pub fn schellekens_match(dim_v1: u64, query: &SemisimpleType) -> Vec<u32> {
    table()
        .schellekens
        .iter()
        .filter(|row| row.dim_v1 == dim_v1 && consistent(&row.ty, query))
        .map(|row| row.number)
        .collect()
}

fn consistent(row: &SemisimpleType, query: &SemisimpleType) -> bool {
    let mut by_level: BTreeMap<(DynkinType, u64), usize> = BTreeMap::new();
    let mut by_type: BTreeMap<DynkinType, usize> = BTreeMap::new();
    for p in &row.parts {
        *by_level.entry((p.ty, p.level.unwrap_or(0))).or_default() += 1;
        *by_type.entry(p.ty).or_default() += 1;
    }
    let mut want_level: BTreeMap<(DynkinType, u64), usize> = BTreeMap::new();
    let mut want_type: BTreeMap<DynkinType, usize> = BTreeMap::new();
    for p in &query.parts {
        if let Some(k) = p.level {
            *want_level.entry((p.ty, k)).or_default() += 1;
        }
        *want_type.entry(p.ty).or_default() += 1;
    }
    want_level.iter().all(|(key, &n)| by_level.get(key).copied().unwrap_or(0) >= n)
        && want_type.iter().all(|(t, &n)| by_type.get(t).copied().unwrap_or(0) >= n)
}

/// Weight-one structure of a lattice VOA: root system at level 1 plus the
/// abelian part left over in the Cartan subalgebra.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeightOne {
    pub semisimple: SemisimpleType,
    pub abelian_rank: usize,
    pub dimension: usize,
}

impl WeightOne {
    pub fn is_abelian(&self) -> bool {
        self.semisimple.is_empty()
    }
}

impl fmt::Display for WeightOne {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.semisimple.is_empty(), self.abelian_rank) {
            (true, r) => write!(f, "abelian({r})"),
            (false, 0) => write!(f, "{}", self.semisimple),
            (false, r) => write!(f, "{} + abelian({r})", self.semisimple),
        }
    }
}

pub fn lattice_voa_weight_one(l: &Lattice) -> Result<WeightOne, LieError> {
    let roots = enumerate_roots(l)?;
    weight_one_from_roots(&roots, l.rank())
}

pub fn weight_one_from_roots(roots: &RootSystem, rank: usize) -> Result<WeightOne, LieError> {
    let parts = roots
        .types()
        .into_iter()
        .map(|t| Ok(Summand { ty: table().canonical(t)?, level: Some(1) }))
        .collect::<Result<Vec<_>, LieError>>()?;
    let semisimple = SemisimpleType::new(parts);
    Ok(WeightOne {
        abelian_rank: rank - semisimple.rank(),
        dimension: rank + roots.count(),
        semisimple,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{component_auto, ComponentAutoKey};

    fn ty(s: &str) -> SemisimpleType {
        s.parse().unwrap()
    }

    fn shapes(v: &[SemisimpleType]) -> Vec<String> {
        v.iter().map(|t| t.shape()).collect()
    }

    #[test]
    fn table_is_self_consistent() {
        let t = table();
        for d in &t.simple {
            assert_eq!(d.dimension, d.rank as u64 + d.root_count, "{}", d.dynkin());
            if let Some(n) = d.dynkin().ade_root_count() {
                assert_eq!(d.root_count, n as u64);
            }
        }
        for (name, dim, h) in [
            ("A2", 8, 3), ("A3", 15, 4), ("A5", 35, 6), ("A7", 63, 8), ("B2", 10, 3),
            ("C3", 21, 4), ("D4", 28, 6), ("G2", 14, 4), ("E6", 78, 12), ("A1", 3, 2),
            ("F4", 52, 9), ("C5", 55, 6), ("D6", 66, 10), ("D7", 91, 12), ("E7", 133, 18),
            ("A4", 24, 5), ("A6", 48, 7), ("A8", 80, 9), ("C2", 10, 3), ("C4", 36, 5),
        ] {
            let d = t.lookup(name.parse().unwrap()).unwrap();
            assert_eq!((d.dimension, d.dual_coxeter), (dim, h), "{name}");
        }
        assert_eq!(t.checksum.len(), 64);
        assert_eq!(t.schellekens.len(), 15);
    }

    #[test]
    fn levels() {
        assert_eq!(level_from_dim(3, 48), Ok(3));
        assert_eq!(level_from_dim(12, 120), Ok(3));
        assert_eq!(level_from_dim(2, 72), Ok(1));
        assert_eq!(level_from_dim(4, 72), Ok(2));
        assert_eq!(level_from_dim(3, 72), Err(LieError::NonIntegral { h: 3, dim: 72 }));
        assert_eq!(level_from_dim(3, 24), Err(LieError::DimTooSmall(24)));
    }

    #[test]
    fn rows_satisfy_level_formula() {
        for row in &table().schellekens {
            assert_eq!(row.ty.dimension(), row.dim_v1, "No. {}", row.number);
            for p in row.ty.parts() {
                let h = table().lookup(p.ty).unwrap().dual_coxeter;
                assert_eq!(level_from_dim(h, row.dim_v1).ok(), p.level, "No. {}", row.number);
            }
        }
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(ty("A2,3^6").to_string(), "A2,3^6");
        assert_eq!(ty("G2,1^3 E6,3").to_string(), "E6,3G2,1^3");
        assert_eq!(ty("A1,1^3A5,3D4,3").to_string(), "A5,3D4,3A1,1^3");
        assert_eq!(ty("C2A2A1^2").to_string(), "B2A2A1^2");
        assert_eq!(ty("D3"), ty("A3"));
        assert!("A2,".parse::<SemisimpleType>().is_err());
        assert!("Q2".parse::<SemisimpleType>().is_err());
        assert!(matches!("E9".parse::<SemisimpleType>(), Err(LieError::UnknownType(_))));
    }

    #[test]
    fn candidates_e6() {
        let c = semisimple_candidates(78, None, 4).unwrap();
        assert_eq!(shapes(&c), ["E6", "A7A3", "C3^3A3", "C3A3G2^3"]);
        assert_eq!(c[0].to_string(), "E6,3");
        let ranked = semisimple_candidates(78, Some(6), 4).unwrap();
        assert_eq!(shapes(&ranked), ["E6"]);
    }

    #[test]
    fn candidates_small() {
        let a5 = semisimple_candidates(35, None, 2).unwrap();
        assert_eq!(shapes(&a5), ["A5", "C3G2", "A3G2A1^2", "G2A1^7"]);
        assert_eq!(a5[0].to_string(), "A5,3");
        assert_eq!(shapes(&semisimple_candidates(28, None, 2).unwrap()), ["D4", "G2^2"]);
        assert_eq!(shapes(&semisimple_candidates(42, None, 4).unwrap()), ["C3^2", "G2^3"]);
        let r = candidate_report(24, Some(6), 1, &["A2^3", "B2A2A1^2"]).unwrap();
        assert!(r.contains_reference());
        assert_eq!(r.unlisted, ["A3A1^3"]);
        assert!(r.has_discrepancy());
        assert_eq!(semisimple_candidates(1, None, 1).unwrap(), vec![]);
        assert_eq!(semisimple_candidates(5, None, 0), Err(LieError::ZeroDivisor));
    }

    #[test]
    fn candidates_are_exhaustive_and_distinct() {
        for dim in 1..=40 {
            let all = semisimple_candidates(dim, None, 1).unwrap();
            let mut seen = std::collections::HashSet::new();
            for t in &all {
                assert_eq!(t.dimension(), dim);
                assert!(seen.insert(t.clone()));
            }
        }
        assert_eq!(shapes(&semisimple_candidates(10, None, 1).unwrap()), ["B2"]);
        assert_eq!(shapes(&semisimple_candidates(11, None, 1).unwrap()), ["A2A1"]);
    }

    #[test]
    fn schellekens() {
        assert_eq!(schellekens_match(48, &ty("A2,3^6")), [6]);
        assert_eq!(schellekens_match(120, &ty("E6,3G2,1^3")), [32]);
        assert_eq!(schellekens_match(72, &ty("A5,3D4,3A1,1^3")), [17]);
        assert_eq!(schellekens_match(72, &ty("A1")), [17, 20, 21]);
        assert_eq!(schellekens_match(48, &ty("A2,1")), Vec::<u32>::new());
        assert_eq!(schellekens_match(96, &ty("C2,1")), [28]);
        assert_eq!(schellekens_match(120, &ty("E6,3G2,1^4")), Vec::<u32>::new());
    }

    #[test]
    fn fixed_subalgebras() {
        let cases = [
            (ComponentAutoKey::PhiD4, 8),
            (ComponentAutoKey::Omega, 14),
            (ComponentAutoKey::PsiD4, 10),
            (ComponentAutoKey::PsiA5, 11),
            (ComponentAutoKey::PhiE6, 24),
            (ComponentAutoKey::PhiA2, 2),
        ];
        for (key, want) in cases {
            let a = component_auto(key).unwrap();
            let rs = enumerate_roots(&a.model.lattice).unwrap();
            assert_eq!(fixed_subalgebra_dim(&rs, &a.isometry).unwrap(), want, "{key:?}");
            let id = Isometry::identity(a.model.lattice.rank());
            let dim = table().lookup(a.model.dynkin).unwrap().dimension as usize;
            assert_eq!(fixed_subalgebra_dim(&rs, &id).unwrap(), dim);
        }
    }

    #[test]
    fn weight_one_of_lattices() {
        let e6 = crate::catalog::build_root_lattice(Family::E, 6).unwrap();
        let w = lattice_voa_weight_one(&e6.lattice).unwrap();
        assert_eq!(w.to_string(), "E6,1");
        assert_eq!(w.dimension, 78);
        let rootless = Lattice::from_int_gram(&crate::exactmat::IntMatrix::from_i64(&[&[4, 1], &[1, 4]])).unwrap();
        let w = lattice_voa_weight_one(&rootless).unwrap();
        assert!(w.is_abelian());
        assert_eq!((w.dimension, w.to_string().as_str()), (2, "abelian(2)"));
    }
}
