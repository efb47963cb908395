//! Linear codes over F₃ and the ternary Golay code on `Ω = {∞, 0, 1, …, 10}`.
//!
//! Coordinates are stored in the order `∞, 0, 1, …, 10`; position 0 is `∞`
//! and position `i + 1` is the point `i`. The point 10 is written `X`.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

pub const LENGTH: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodeError {
    #[error("word has length {got}, expected {expected}")]
    WrongLength { got: usize, expected: usize },
    #[error("entry {0} is not in {{0, 1, 2}}")]
    BadSymbol(u8),
    #[error("cannot parse permutation: {0}")]
    BadPermutation(String),
}

/// Label of a coordinate position in the canonical order.
pub fn label(pos: usize) -> String {
    match pos {
        0 => "∞".to_string(),
        11 => "X".to_string(),
        p => (p - 1).to_string(),
    }
}

/// Position of a point label (`∞`, `0`…`9`, `X` or `10`).
pub fn position(label: &str) -> Option<usize> {
    match label {
        "∞" | "inf" | "oo" => Some(0),
        "X" | "x" | "10" => Some(11),
        s => s.parse::<usize>().ok().filter(|&n| n <= 9).map(|n| n + 1),
    }
}

/// The rearranged coordinate view `(∞,4,7 | 0,3,6 | 1,5,8 | 2,10,9)`, as canonical positions.
pub fn rearranged_view() -> [usize; LENGTH] {
    ["∞", "4", "7", "0", "3", "6", "1", "5", "8", "2", "X", "9"].map(|s| position(s).unwrap())
}

/// A bijection of `{0, …, n−1}`; `map[p]` is the image of `p`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    map: Vec<usize>,
}

impl Permutation {
    pub fn new(map: Vec<usize>) -> Result<Self, CodeError> {
        let mut seen = vec![false; map.len()];
        for &m in &map {
            if m >= map.len() || std::mem::replace(&mut seen[m], true) {
                return Err(CodeError::BadPermutation(format!("{map:?} is not a bijection")));
            }
        }
        Ok(Permutation { map })
    }

    pub fn identity(n: usize) -> Self {
        Permutation { map: (0..n).collect() }
    }

    /// Parse cycle notation over Ω such as `(∞)(0 1 2)(35X)`.
    ///
    /// Inside a cycle, entries may be separated by spaces; without spaces every
    /// character is one point (so `(35X)` is the 3-cycle 3 → 5 → X).
    pub fn from_cycles(s: &str) -> Result<Self, CodeError> {
        let mut map: Vec<usize> = (0..LENGTH).collect();
        let mut seen = [false; LENGTH];
        let bad = || CodeError::BadPermutation(s.to_string());
        let mut rest = s.trim();
        while !rest.is_empty() {
            let body_end = rest.find(')').ok_or_else(bad)?;
            if !rest.starts_with('(') {
                return Err(bad());
            }
            let body = &rest[1..body_end];
            rest = rest[body_end + 1..].trim_start();
            let tokens: Vec<String> = if body.contains(char::is_whitespace) {
                body.split_whitespace().map(str::to_string).collect()
            } else {
                body.chars().map(|c| c.to_string()).collect()
            };
            let pts: Vec<usize> = tokens.iter().map(|t| position(t).ok_or_else(bad)).collect::<Result<_, _>>()?;
            for (k, &p) in pts.iter().enumerate() {
                if std::mem::replace(&mut seen[p], true) {
                    return Err(bad());
                }
                map[p] = pts[(k + 1) % pts.len()];
            }
        }
        Ok(Permutation { map })
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn image(&self, p: usize) -> usize {
        self.map[p]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.map
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.map.len()];
        for (p, &q) in self.map.iter().enumerate() {
            inv[q] = p;
        }
        Permutation { map: inv }
    }

    pub fn pow(&self, e: i64) -> Permutation {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut out = Permutation::identity(self.len());
        for _ in 0..e.unsigned_abs() {
            out = compose(&base, &out);
        }
        out
    }

    pub fn order(&self) -> usize {
        let mut k = 1;
        let mut p = self.clone();
        while !p.is_identity() {
            p = compose(self, &p);
            k += 1;
        }
        k
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(i, &m)| i == m)
    }

    /// Cycles in canonical order (each starting at its smallest position, sorted).
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.map.len()];
        let mut out = Vec::new();
        for s in 0..self.map.len() {
            if seen[s] {
                continue;
            }
            let mut c = vec![s];
            seen[s] = true;
            let mut t = self.map[s];
            while t != s {
                seen[t] = true;
                c.push(t);
                t = self.map[t];
            }
            out.push(c);
        }
        out
    }

    /// Action on words: `(g·w)[g(i)] = w[i]`, i.e. `g·[1]^{(i)} = [1]^{(g(i))}`.
    pub fn act(&self, w: &[u8]) -> Vec<u8> {
        let mut out = vec![0; w.len()];
        for (i, &x) in w.iter().enumerate() {
            out[self.map[i]] = x;
        }
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in self.cycles() {
            write!(f, "(")?;
            for p in c {
                if self.map.len() == LENGTH {
                    write!(f, "{}", label(p))?;
                } else {
                    write!(f, " {p}")?;
                }
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

/// `a ∘ b`: apply `b` first, then `a`.
pub fn compose(a: &Permutation, b: &Permutation) -> Permutation {
    Permutation {
        map: b.map.iter().map(|&x| a.map[x]).collect(),
    }
}

/// `ν = (∞)(X 9 8 … 1 0)`, i.e. `ν(i) = i − 1 mod 11`.
pub fn nu() -> Permutation {
    let mut map = vec![0; LENGTH];
    for i in 0..11 {
        map[i + 1] = (i + 10) % 11 + 1;
    }
    Permutation { map }
}

/// `δ = (∞)(0)(1)(2X)(34)(59)(67)(8)`.
pub fn delta() -> Permutation {
    Permutation::from_cycles("(∞)(0)(1)(2X)(34)(59)(67)(8)").expect("valid literal")
}

/// `σ′ = ν⁻¹ ∘ δ`.
pub fn sigma_prime() -> Permutation {
    compose(&nu().inverse(), &delta())
}

/// The stated cycle structure of `σ′`.
pub const SIGMA_PRIME_CYCLES: &str = "(∞)(4)(7)(012)(35X)(689)";

/// Linear code over F₃; the generator matrix is kept in reduced row-echelon form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TernaryCode {
    length: usize,
    rows: Vec<Vec<u8>>,
}

fn rref_mod3(mut rows: Vec<Vec<u8>>, n: usize) -> Vec<Vec<u8>> {
    let mut r = 0;
    for col in 0..n {
        let Some(p) = (r..rows.len()).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(r, p);
        // 2 is its own inverse mod 3
        if rows[r][col] == 2 {
            for x in rows[r].iter_mut() {
                *x = (*x * 2) % 3;
            }
        }
        for i in 0..rows.len() {
            if i != r && rows[i][col] != 0 {
                let f = rows[i][col];
                for j in 0..n {
                    rows[i][j] = (rows[i][j] + 3 * 3 - f * rows[r][j]) % 3;
                }
            }
        }
        r += 1;
    }
    rows.truncate(r);
    rows
}

impl TernaryCode {
    pub fn from_generators(length: usize, gens: &[Vec<u8>]) -> Result<Self, CodeError> {
        for g in gens {
            if g.len() != length {
                return Err(CodeError::WrongLength {
                    got: g.len(),
                    expected: length,
                });
            }
            if let Some(&b) = g.iter().find(|&&x| x > 2) {
                return Err(CodeError::BadSymbol(b));
            }
        }
        Ok(TernaryCode {
            length,
            rows: rref_mod3(gens.to_vec(), length),
        })
    }

    pub fn zero(length: usize) -> Self {
        TernaryCode {
            length,
            rows: Vec::new(),
        }
    }

    pub fn length(&self) -> usize {
        self.length
    }

    /// Canonical (reduced row-echelon) generator rows.
    pub fn generators(&self) -> &[Vec<u8>] {
        &self.rows
    }

    pub fn span_dim(&self) -> usize {
        self.rows.len()
    }

    pub fn size(&self) -> usize {
        3usize.pow(self.rows.len() as u32)
    }

    pub fn contains(&self, w: &[u8]) -> bool {
        if w.len() != self.length {
            return false;
        }
        let mut v: Vec<u8> = w.iter().map(|x| x % 3).collect();
        for row in &self.rows {
            let pivot = row.iter().position(|&x| x != 0).expect("rows are nonzero");
            let f = v[pivot];
            if f != 0 {
                for j in 0..self.length {
                    v[j] = (v[j] + 9 - f * row[j]) % 3;
                }
            }
        }
        v.iter().all(|&x| x == 0)
    }

    /// All `3^dim` codewords in a fixed order.
    pub fn codewords(&self) -> Vec<Vec<u8>> {
        let mut out = vec![vec![0u8; self.length]];
        for row in &self.rows {
            let mut next = Vec::with_capacity(out.len() * 3);
            for w in &out {
                for c in 0..3u8 {
                    next.push(w.iter().zip(row).map(|(a, b)| (a + c * b) % 3).collect());
                }
            }
            out = next;
        }
        out
    }

    pub fn weight_distribution(&self) -> BTreeMap<usize, usize> {
        let mut h = BTreeMap::new();
        for w in self.codewords() {
            *h.entry(w.iter().filter(|&&x| x != 0).count()).or_default() += 1;
        }
        h
    }

    pub fn min_weight(&self) -> Option<usize> {
        self.weight_distribution().into_keys().find(|&w| w > 0)
    }

    pub fn stable_under(&self, pi: &Permutation) -> bool {
        pi.len() == self.length && self.rows.iter().all(|r| self.contains(&pi.act(r)))
    }

    /// Every pair of generators is orthogonal mod 3 and `dim = n/2`.
    pub fn is_self_dual(&self) -> bool {
        2 * self.span_dim() == self.length
            && self.rows.iter().all(|a| {
                self.rows
                    .iter()
                    .all(|b| a.iter().zip(b).map(|(x, y)| (x * y) as u32).sum::<u32>() % 3 == 0)
            })
    }

    pub fn permuted(&self, pi: &Permutation) -> TernaryCode {
        let gens: Vec<Vec<u8>> = self.rows.iter().map(|r| pi.act(r)).collect();
        TernaryCode {
            length: self.length,
            rows: rref_mod3(gens, self.length),
        }
    }

    pub fn to_json(&self) -> CodeJson {
        CodeJson {
            coordinate_order: (0..self.length).map(|p| if self.length == LENGTH { label(p) } else { p.to_string() }).collect(),
            generators: self.rows.iter().map(|r| word_string(r)).collect(),
        }
    }
}

pub fn word_string(w: &[u8]) -> String {
    w.iter().map(|x| char::from(b'0' + x)).collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct CodeJson {
    pub coordinate_order: Vec<String>,
    pub generators: Vec<String>,
}

/// `Θ = {0, 1, 3, 4, 5, 9}`.
pub const THETA: [usize; 6] = [0, 1, 3, 4, 5, 9];

/// `[w_∞, w₀, w₁, …, w₁₀]`: `w₀` is 2 on Θ and 1 elsewhere, `wᵢ = νⁱ·w₀`, `w_∞` all ones.
pub fn golay_generators() -> Vec<Vec<u8>> {
    let mut w0 = vec![1u8; LENGTH];
    for t in THETA {
        w0[t + 1] = 2;
    }
    let nu = nu();
    let mut out = vec![vec![1u8; LENGTH]];
    let mut w = w0;
    for _ in 0..11 {
        out.push(w.clone());
        w = nu.act(&w);
    }
    out
}

/// `C₁₂`, the span of the twelve `wᵢ`, one per point of Ω.
pub fn golay_code() -> TernaryCode {
    TernaryCode::from_generators(LENGTH, &golay_generators()).expect("generators have length 12")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators() {
        let g = golay_generators();
        assert_eq!(g.len(), 12);
        assert_eq!(g[0], vec![1; 12]);
        // w0 over (∞,0,…,10)
        assert_eq!(word_string(&g[1]), "122122211121");
        let w0 = &g[1];
        for (p, &x) in w0.iter().enumerate() {
            let on_theta = p > 0 && THETA.contains(&(p - 1));
            assert_eq!(x, if on_theta { 2 } else { 1 });
        }
        assert_eq!(g[2], nu().act(&g[1]));
    }

    #[test]
    fn golay_properties() {
        let c = golay_code();
        assert_eq!(c.span_dim(), 6);
        assert_eq!(c.size(), 729);
        let wd: Vec<(usize, usize)> = c.weight_distribution().into_iter().collect();
        assert_eq!(wd, vec![(0, 1), (6, 264), (9, 440), (12, 24)]);
        assert!(c.is_self_dual());
        assert!(c.stable_under(&nu()));
        assert!(c.stable_under(&delta()));
        assert!(c.stable_under(&sigma_prime()));
        let t01 = Permutation::from_cycles("(01)").unwrap();
        assert!(!c.stable_under(&t01));
    }

    #[test]
    fn basis_subset_spans_code() {
        let g = golay_generators();
        // w_∞, w1, w3, w4, w5, w9
        let sub: Vec<Vec<u8>> = [0, 2, 4, 5, 6, 10].iter().map(|&i| g[i].clone()).collect();
        let c = TernaryCode::from_generators(12, &sub).unwrap();
        assert_eq!(c, golay_code());
    }

    #[test]
    fn sigma_prime_cycles() {
        let s = sigma_prime();
        assert_eq!(s, Permutation::from_cycles(SIGMA_PRIME_CYCLES).unwrap());
        assert_eq!(s.order(), 3);
        assert_eq!(s.to_string(), "(∞)(012)(35X)(4)(689)(7)");
        assert_eq!(Permutation::identity(12).order(), 1);
        assert_eq!(nu().order(), 11);
    }

    #[test]
    fn trivial_codes() {
        let z = TernaryCode::zero(12);
        assert_eq!(z.span_dim(), 0);
        assert_eq!(z.weight_distribution().into_iter().collect::<Vec<_>>(), vec![(0, 1)]);
        let rep = TernaryCode::from_generators(12, &[vec![1; 12]]).unwrap();
        assert_eq!(rep.weight_distribution().into_iter().collect::<Vec<_>>(), vec![(0, 1), (12, 2)]);
    }

    #[test]
    fn span_dim_invariant_under_permutation() {
        let c = golay_code();
        for pi in [nu(), delta(), Permutation::from_cycles("(0 5)(X ∞)").unwrap()] {
            assert_eq!(c.permuted(&pi).span_dim(), 6);
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(Permutation::from_cycles("(00)").is_err());
        assert!(Permutation::from_cycles("(0Z)").is_err());
        assert!(TernaryCode::from_generators(12, &[vec![3; 12]]).is_err());
        assert!(TernaryCode::from_generators(12, &[vec![1; 11]]).is_err());
    }

    #[test]
    fn json_header() {
        let j = serde_json::to_value(golay_code().to_json()).unwrap();
        assert_eq!(j["coordinate_order"][0], "∞");
        assert_eq!(j["coordinate_order"][11], "X");
        assert_eq!(j["generators"].as_array().unwrap().len(), 6);
    }
}
