//! Norm-2 vectors, root-system decomposition and ADE classification.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactmat::{IntMatrix, RatMatrix};
use crate::lattice::{Isometry, Lattice, LatticeVector};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RootError {
    #[error("Gram matrix is not integral")]
    NotIntegral,
    #[error("Gram matrix is not positive definite")]
    NotPositiveDefinite,
    #[error("component {index} with {roots} roots and rank {rank} matches no ADE type: {reason}")]
    Unclassifiable {
        index: usize,
        roots: usize,
        rank: usize,
        reason: String,
    },
    #[error("vector is not a root (norm {0})")]
    NotARoot(String),
    #[error("isometry maps root {0:?} outside the root set")]
    NotPermuted(Vec<i64>),
    #[error("coordinates exceed machine range")]
    Overflow,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub fn from_char(c: char) -> Option<Family> {
        Some(match c.to_ascii_uppercase() {
            'A' => Family::A,
            'B' => Family::B,
            'C' => Family::C,
            'D' => Family::D,
            'E' => Family::E,
            'F' => Family::F,
            'G' => Family::G,
            _ => return None,
        })
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// A simple type such as `A2` or `E6`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DynkinType {
    pub family: Family,
    pub rank: usize,
}

impl DynkinType {
    pub fn new(family: Family, rank: usize) -> Self {
        DynkinType { family, rank }
    }

    /// Number of roots for the simply-laced families.
    pub fn ade_root_count(&self) -> Option<usize> {
        let n = self.rank;
        match (self.family, n) {
            (Family::A, n) if n >= 1 => Some(n * (n + 1)),
            (Family::D, n) if n >= 4 => Some(2 * n * (n - 1)),
            (Family::E, 6) => Some(72),
            (Family::E, 7) => Some(126),
            (Family::E, 8) => Some(240),
            _ => None,
        }
    }
}

impl fmt::Display for DynkinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.rank)
    }
}

impl std::str::FromStr for DynkinType {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let mut chars = s.chars();
        let family = chars
            .next()
            .and_then(Family::from_char)
            .ok_or_else(|| format!("bad family in {s:?}"))?;
        let rank = chars
            .as_str()
            .parse()
            .map_err(|_| format!("bad rank in {s:?}"))?;
        Ok(DynkinType { family, rank })
    }
}

/// Multiset of simple types written compactly by decreasing rank, e.g. `A5^4D4`.
pub fn format_type_multiset(types: &[DynkinType]) -> String {
    let mut counts: BTreeMap<(std::cmp::Reverse<usize>, std::cmp::Reverse<Family>), usize> = BTreeMap::new();
    for t in types {
        *counts
            .entry((std::cmp::Reverse(t.rank), std::cmp::Reverse(t.family)))
            .or_default() += 1;
    }
    counts
        .iter()
        .map(|((r, f), &k)| (DynkinType::new(f.0, r.0), k))
        .map(|(t, k)| if k == 1 { t.to_string() } else { format!("{t}^{k}") })
        .collect()
}

/// One irreducible component of a root system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub dynkin: DynkinType,
    /// Indices into [`RootSystem::roots`].
    pub roots: Vec<usize>,
    /// Simple roots in canonical diagram order (see [`canonical_order`]).
    pub simple_roots: Vec<Vec<i64>>,
    pub cartan: IntMatrix,
}

#[derive(Debug, Clone)]
pub struct RootSystem {
    gram: Vec<Vec<i64>>,
    /// Sorted lexicographically by basis coordinates.
    pub roots: Vec<Vec<i64>>,
    pub components: Vec<Component>,
}

fn small_gram(l: &Lattice) -> Result<Vec<Vec<i64>>, RootError> {
    let g = l.int_gram().ok_or(RootError::NotIntegral)?;
    (0..g.rows())
        .map(|i| {
            g.row(i)
                .iter()
                .map(|x| x.to_i64().ok_or(RootError::Overflow))
                .collect()
        })
        .collect()
}

fn pair_i64(g: &[Vec<i64>], u: &[i64], v: &[i64]) -> i64 {
    let mut s = 0;
    for (i, ui) in u.iter().enumerate() {
        if *ui == 0 {
            continue;
        }
        let row = &g[i];
        let mut t = 0;
        for (j, vj) in v.iter().enumerate() {
            t += row[j] * vj;
        }
        s += ui * t;
    }
    s
}

/// Upper-triangular Fincke–Pohst data: `Q(x) = Σᵢ dᵢ (xᵢ + Σ_{j>i} qᵢⱼ xⱼ)²`.
struct Completion {
    d: Vec<BigRational>,
    q: Vec<Vec<BigRational>>,
}

fn complete_square(gram: &RatMatrix) -> Option<Completion> {
    let n = gram.rows();
    let mut a = gram.clone();
    let mut d = Vec::with_capacity(n);
    let mut q = vec![vec![BigRational::zero(); n]; n];
    for i in 0..n {
        let p = a.get(i, i).clone();
        if !p.is_positive() {
            return None;
        }
        for j in i + 1..n {
            q[i][j] = a.get(i, j) / &p;
        }
        for k in i + 1..n {
            for j in i + 1..n {
                let v = a.get(k, j) - &q[i][k] * a.get(i, j);
                a.set(k, j, v);
            }
        }
        d.push(p);
    }
    Some(Completion { d, q })
}

fn floor_rat(x: &BigRational) -> BigInt {
    x.floor().to_integer()
}

/// All nonzero `x ∈ Zⁿ` with `x·G·xᵀ = target` (exact search, no floating point).
pub fn vectors_of_norm(l: &Lattice, target: i64) -> Result<Vec<Vec<i64>>, RootError> {
    let gram = small_gram(l)?;
    let n = gram.len();
    if n == 0 {
        return Ok(Vec::new());
    }
    let c = complete_square(l.gram()).ok_or(RootError::NotPositiveDefinite)?;
    let mut out = Vec::new();
    let mut x = vec![0i64; n];
    let bound = BigRational::from_integer(BigInt::from(target));
    search(&c, n - 1, &bound, &mut x, &mut out)?;
    // every candidate is re-verified on the integer Gram
    out.retain(|v| pair_i64(&gram, v, v) == target && v.iter().any(|&t| t != 0));
    out.sort();
    Ok(out)
}

fn search(
    c: &Completion,
    i: usize,
    budget: &BigRational,
    x: &mut Vec<i64>,
    out: &mut Vec<Vec<i64>>,
) -> Result<(), RootError> {
    let n = x.len();
    let mut center = BigRational::zero();
    for j in i + 1..n {
        if x[j] != 0 {
            center += &c.q[i][j] * BigInt::from(x[j]);
        }
    }
    // t ranges over integers with dᵢ (t + center)² ≤ budget, walking out from round(-center)
    let start = floor_rat(&(-&center + BigRational::new(BigInt::one(), BigInt::from(2))));
    let cost = |t: &BigInt| -> BigRational {
        let s = BigRational::from_integer(t.clone()) + &center;
        &c.d[i] * &s * &s
    };
    for dir in [1i64, -1] {
        let mut t = if dir == 1 { start.clone() } else { &start - 1 };
        loop {
            let used = cost(&t);
            if &used > budget {
                break;
            }
            x[i] = t.to_i64().ok_or(RootError::Overflow)?;
            let rest = budget - used;
            if i == 0 {
                if rest.is_zero() {
                    out.push(x.clone());
                }
            } else {
                search(c, i - 1, &rest, x, out)?;
            }
            t += dir;
        }
    }
    x[i] = 0;
    Ok(())
}

/// Enumerates `Δ(L)` and decomposes it into classified irreducible components.
pub fn enumerate_roots(l: &Lattice) -> Result<RootSystem, RootError> {
    let gram = small_gram(l)?;
    let roots = vectors_of_norm(l, 2)?;
    let components = decompose(&gram, &roots)?;
    Ok(RootSystem {
        gram,
        roots,
        components,
    })
}

fn decompose(gram: &[Vec<i64>], roots: &[Vec<i64>]) -> Result<Vec<Component>, RootError> {
    let m = roots.len();
    let mut parent: Vec<usize> = (0..m).collect();
    fn find(p: &mut [usize], mut a: usize) -> usize {
        while p[a] != a {
            p[a] = p[p[a]];
            a = p[a];
        }
        a
    }
    let gv: Vec<Vec<i64>> = roots
        .iter()
        .map(|r| (0..gram.len()).map(|j| (0..r.len()).map(|i| r[i] * gram[i][j]).sum()).collect())
        .collect();
    for a in 0..m {
        for b in a + 1..m {
            let ip: i64 = gv[a].iter().zip(&roots[b]).map(|(x, y)| x * y).sum();
            if ip != 0 {
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                if ra != rb {
                    parent[ra.max(rb)] = ra.min(rb);
                }
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for a in 0..m {
        let r = find(&mut parent, a);
        groups.entry(r).or_default().push(a);
    }
    let mut comps = Vec::new();
    for (k, idx) in groups.into_values().enumerate() {
        comps.push(classify_component(gram, roots, idx, k)?);
    }
    // groups are keyed by smallest root index, so the order is already canonical
    Ok(comps)
}

fn is_positive(v: &[i64]) -> bool {
    v.iter().find(|&&t| t != 0).is_some_and(|&t| t > 0)
}

fn classify_component(
    gram: &[Vec<i64>],
    roots: &[Vec<i64>],
    idx: Vec<usize>,
    index: usize,
) -> Result<Component, RootError> {
    let fail = |rank: usize, reason: &str| RootError::Unclassifiable {
        index,
        roots: idx.len(),
        rank,
        reason: reason.to_string(),
    };
    let positive: Vec<&Vec<i64>> = idx.iter().map(|&i| &roots[i]).filter(|v| is_positive(v)).collect();
    let pos_set: HashSet<&Vec<i64>> = positive.iter().copied().collect();
    let mut simple: Vec<Vec<i64>> = Vec::new();
    for &r in &positive {
        let decomposable = positive.iter().any(|&a| {
            let b: Vec<i64> = r.iter().zip(a).map(|(x, y)| x - y).collect();
            pos_set.contains(&b)
        });
        if !decomposable {
            simple.push(r.clone());
        }
    }
    let k = simple.len();
    let mut adj = vec![Vec::new(); k];
    for a in 0..k {
        for b in a + 1..k {
            match pair_i64(gram, &simple[a], &simple[b]) {
                0 => {}
                -1 => {
                    adj[a].push(b);
                    adj[b].push(a);
                }
                _ => return Err(fail(k, "simple roots with pairing outside {0, -1}")),
            }
        }
    }
    let edges: usize = adj.iter().map(Vec::len).sum::<usize>() / 2;
    if k == 0 || edges + 1 != k {
        return Err(fail(k, "Dynkin graph is not a tree"));
    }
    let (dynkin, order) = canonical_order(&simple, &adj).ok_or_else(|| fail(k, "unknown diagram"))?;
    if dynkin.ade_root_count() != Some(idx.len()) {
        return Err(fail(k, "root count does not match the diagram"));
    }
    let simple_roots: Vec<Vec<i64>> = order.iter().map(|&i| simple[i].clone()).collect();
    let cartan = IntMatrix::from_fn(k, k, |i, j| BigInt::from(pair_i64(gram, &simple_roots[i], &simple_roots[j])));
    Ok(Component {
        dynkin,
        roots: idx,
        simple_roots,
        cartan,
    })
}

/// Type and canonical ordering of the nodes of a simply-laced Dynkin tree.
///
/// `Aₙ`: the path, starting from the end whose root sorts first.
/// `Dₙ`: the long arm from its end to the branch node, then the two leaves.
/// `E₆`: the chain `α₁ – α₂ – α₃ – α₄ – α₅` through the branch node `α₃`, then
/// the short-arm leaf `α₆`. `E₇`, `E₈`: long arm, branch node, middle arm, leaf.
/// Ties between arms of equal length are broken by comparing end roots.
pub fn canonical_order(simple: &[Vec<i64>], adj: &[Vec<usize>]) -> Option<(DynkinType, Vec<usize>)> {
    let k = simple.len();
    let branches: Vec<usize> = (0..k).filter(|&i| adj[i].len() >= 3).collect();
    if branches.is_empty() {
        let ends: Vec<usize> = (0..k).filter(|&i| adj[i].len() <= 1).collect();
        let start = *ends.iter().min_by(|&&a, &&b| simple[a].cmp(&simple[b]))?;
        let path = walk(adj, start, usize::MAX);
        return Some((DynkinType::new(Family::A, k), path));
    }
    if branches.len() != 1 || adj[branches[0]].len() != 3 {
        return None;
    }
    let c = branches[0];
    // arms as paths from the branch node outward
    let mut arms: Vec<Vec<usize>> = adj[c].iter().map(|&n| walk(adj, n, c)).collect();
    arms.sort_by(|a, b| {
        a.len()
            .cmp(&b.len())
            .then_with(|| simple[*a.last().unwrap()].cmp(&simple[*b.last().unwrap()]))
    });
    let lens: Vec<usize> = arms.iter().map(Vec::len).collect();
    let rev = |a: &Vec<usize>| a.iter().rev().copied().collect::<Vec<usize>>();
    match lens.as_slice() {
        [1, 1, _] => {
            let mut o = rev(&arms[2]);
            o.push(c);
            o.push(arms[0][0]);
            o.push(arms[1][0]);
            Some((DynkinType::new(Family::D, k), o))
        }
        [1, 2, 2] => {
            let mut o = rev(&arms[1]);
            o.push(c);
            o.extend(arms[2].iter().copied());
            o.push(arms[0][0]);
            Some((DynkinType::new(Family::E, 6), o))
        }
        [1, 2, 3] | [1, 2, 4] => {
            let mut o = rev(&arms[2]);
            o.push(c);
            o.extend(arms[1].iter().copied());
            o.push(arms[0][0]);
            Some((DynkinType::new(Family::E, k), o))
        }
        _ => None,
    }
}

/// Path from `start` away from `from` in a tree where every visited node has degree ≤ 2.
fn walk(adj: &[Vec<usize>], start: usize, from: usize) -> Vec<usize> {
    let mut path = vec![start];
    let (mut prev, mut cur) = (from, start);
    loop {
        let next: Vec<usize> = adj[cur].iter().copied().filter(|&n| n != prev).collect();
        if next.len() != 1 || path.contains(&next[0]) {
            break;
        }
        prev = cur;
        cur = next[0];
        path.push(cur);
    }
    path
}

impl RootSystem {
    pub fn count(&self) -> usize {
        self.roots.len()
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    pub fn pair(&self, u: &[i64], v: &[i64]) -> i64 {
        pair_i64(&self.gram, u, v)
    }

    /// Classified types as a sorted multiset.
    pub fn types(&self) -> Vec<DynkinType> {
        let mut t: Vec<DynkinType> = self.components.iter().map(|c| c.dynkin).collect();
        t.sort();
        t
    }

    pub fn index_of(&self, v: &[i64]) -> Option<usize> {
        self.roots.binary_search_by(|r| r.as_slice().cmp(v)).ok()
    }

    /// Simple-root coordinates of a root of component `c`.
    pub fn simple_coords(&self, c: usize, v: &[i64]) -> Vec<BigRational> {
        let comp = &self.components[c];
        let inv = comp.cartan.to_rat().inverse().expect("Cartan matrices are nonsingular");
        let pairings: Vec<BigRational> = comp
            .simple_roots
            .iter()
            .map(|a| BigRational::from_integer(BigInt::from(self.pair(v, a))))
            .collect();
        crate::exactmat::vec_mul(&pairings, &inv)
    }

    /// The root of component `c` dominating all others in simple-root coordinates.
    pub fn highest_root(&self, c: usize) -> Vec<i64> {
        let coords: Vec<(Vec<BigRational>, usize)> = self.components[c]
            .roots
            .iter()
            .map(|&i| (self.simple_coords(c, &self.roots[i]), i))
            .collect();
        let height = |v: &[BigRational]| v.iter().fold(BigRational::zero(), |a, b| a + b);
        let (best, bi) = coords
            .iter()
            .max_by(|a, b| height(&a.0).cmp(&height(&b.0)).then(a.1.cmp(&b.1)))
            .expect("components are nonempty");
        debug_assert!(coords
            .iter()
            .all(|(v, _)| v.iter().zip(best).all(|(x, y)| x <= y)));
        self.roots[*bi].clone()
    }

    /// Number of `⟨σ⟩`-orbits on `Δ(L)` and number of fixed roots.
    pub fn orbit_count(&self, sigma: &Isometry) -> Result<(usize, usize), RootError> {
        let m = small_matrix(&sigma.matrix)?;
        let images = self.permutation(&m)?;
        let mut seen = vec![false; self.roots.len()];
        let (mut orbits, mut fixed) = (0, 0);
        for s in 0..self.roots.len() {
            if seen[s] {
                continue;
            }
            orbits += 1;
            if images[s] == s {
                fixed += 1;
            }
            let mut t = s;
            while !seen[t] {
                seen[t] = true;
                t = images[t];
            }
        }
        Ok((orbits, fixed))
    }

    /// `images[i]` is the index of `σ(rootᵢ)`.
    pub fn permutation(&self, m: &[Vec<i64>]) -> Result<Vec<usize>, RootError> {
        let index: HashMap<&[i64], usize> =
            self.roots.iter().enumerate().map(|(i, r)| (r.as_slice(), i)).collect();
        self.roots
            .iter()
            .map(|r| {
                let img = apply_i64(m, r);
                index
                    .get(img.as_slice())
                    .copied()
                    .ok_or_else(|| RootError::NotPermuted(r.clone()))
            })
            .collect()
    }

    pub fn to_json(&self) -> RootSystemJson {
        RootSystemJson {
            count: self.count(),
            components: self
                .components
                .iter()
                .map(|c| ComponentJson {
                    r#type: c.dynkin.to_string(),
                    rank: c.dynkin.rank,
                    root_count: c.roots.len(),
                })
                .collect(),
        }
    }
}

pub fn small_matrix(m: &IntMatrix) -> Result<Vec<Vec<i64>>, RootError> {
    (0..m.rows())
        .map(|i| m.row(i).iter().map(|x| x.to_i64().ok_or(RootError::Overflow)).collect())
        .collect()
}

pub fn apply_i64(m: &[Vec<i64>], v: &[i64]) -> Vec<i64> {
    let cols = m.first().map_or(0, Vec::len);
    let mut out = vec![0i64; cols];
    for (i, &vi) in v.iter().enumerate() {
        if vi != 0 {
            for (o, mij) in out.iter_mut().zip(&m[i]) {
                *o += vi * mij;
            }
        }
    }
    out
}

/// Classified types of a root system as a sorted multiset.
pub fn classify(rs: &RootSystem) -> Vec<DynkinType> {
    rs.types()
}

/// The reflection `x ↦ x − ⟨x, α⟩ α` as an integer matrix on basis coordinates.
pub fn reflection(l: &Lattice, alpha: &LatticeVector) -> Result<Isometry, RootError> {
    let norm = l.norm(alpha);
    if norm != BigRational::from_integer(BigInt::from(2)) {
        return Err(RootError::NotARoot(crate::exactmat::rat_to_string(&norm)));
    }
    if !l.is_integral() {
        return Err(RootError::NotIntegral);
    }
    let a = alpha
        .to_integers()
        .ok_or_else(|| RootError::NotARoot("non-integral coordinates".into()))?;
    let ga = crate::exactmat::vec_mul(&alpha.coords, l.gram());
    let n = l.rank();
    let m = IntMatrix::from_fn(n, n, |i, j| {
        let d = if i == j { BigInt::one() } else { BigInt::zero() };
        d - ga[i].to_integer() * &a[j]
    });
    Ok(Isometry::new("r", m))
}

#[derive(Debug, Clone, Serialize)]
pub struct ComponentJson {
    #[serde(rename = "type")]
    pub r#type: String,
    pub rank: usize,
    pub root_count: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct RootSystemJson {
    pub count: usize,
    pub components: Vec<ComponentJson>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::direct_sum;

    fn gram_lattice(rows: &[&[i64]]) -> Lattice {
        Lattice::from_int_gram(&IntMatrix::from_i64(rows)).unwrap()
    }

    fn a2() -> Lattice {
        gram_lattice(&[&[2, -1], &[-1, 2]])
    }

    fn d4() -> Lattice {
        gram_lattice(&[&[2, -1, 0, 0], &[-1, 2, -1, -1], &[0, -1, 2, 0], &[0, -1, 0, 2]])
    }

    fn e6() -> Lattice {
        // α1-α2-α3-α4-α5 with α6 attached to α3
        gram_lattice(&[
            &[2, -1, 0, 0, 0, 0],
            &[-1, 2, -1, 0, 0, 0],
            &[0, -1, 2, -1, 0, -1],
            &[0, 0, -1, 2, -1, 0],
            &[0, 0, 0, -1, 2, 0],
            &[0, 0, -1, 0, 0, 2],
        ])
    }

    /// Brute force over a box, independent of the completion-based search.
    fn brute(l: &Lattice, r: i64) -> Vec<Vec<i64>> {
        let g = small_gram(l).unwrap();
        let n = g.len();
        let mut out = Vec::new();
        let mut x = vec![-r; n];
        loop {
            if pair_i64(&g, &x, &x) == 2 {
                out.push(x.clone());
            }
            let mut i = 0;
            while i < n && x[i] == r {
                x[i] = -r;
                i += 1;
            }
            if i == n {
                break;
            }
            x[i] += 1;
        }
        out.sort();
        out
    }

    #[test]
    fn root_counts() {
        assert_eq!(enumerate_roots(&a2()).unwrap().count(), 6);
        assert_eq!(vectors_of_norm(&a2(), 2).unwrap(), brute(&a2(), 2));
        assert_eq!(enumerate_roots(&d4()).unwrap().count(), 24);
        assert_eq!(vectors_of_norm(&d4(), 2).unwrap(), brute(&d4(), 2));
        assert_eq!(enumerate_roots(&e6()).unwrap().count(), 72);
        assert_eq!(enumerate_roots(&gram_lattice(&[&[4]])).unwrap().count(), 0);
    }

    #[test]
    fn classification() {
        let rs = enumerate_roots(&direct_sum(&[a2(), a2()])).unwrap();
        assert_eq!(format_type_multiset(&classify(&rs)), "A2^2");
        let rs = enumerate_roots(&direct_sum(&[e6(), d4(), a2()])).unwrap();
        assert_eq!(format_type_multiset(&classify(&rs)), "E6D4A2");
        let rs = enumerate_roots(&e6()).unwrap();
        let c = &rs.components[0];
        assert_eq!(c.dynkin, DynkinType::new(Family::E, 6));
        // canonical order reproduces the labelled diagram
        assert_eq!(c.cartan, IntMatrix::from_i64(&[
            &[2, -1, 0, 0, 0, 0],
            &[-1, 2, -1, 0, 0, 0],
            &[0, -1, 2, -1, 0, -1],
            &[0, 0, -1, 2, -1, 0],
            &[0, 0, 0, -1, 2, 0],
            &[0, 0, -1, 0, 0, 2],
        ]));
    }

    #[test]
    fn highest_roots() {
        let rs = enumerate_roots(&a2()).unwrap();
        let c = &rs.components[0];
        let sum: Vec<i64> = c.simple_roots[0].iter().zip(&c.simple_roots[1]).map(|(a, b)| a + b).collect();
        assert_eq!(rs.highest_root(0), sum);
        let rs = enumerate_roots(&d4()).unwrap();
        let h = rs.highest_root(0);
        let coords = rs.simple_coords(0, &h);
        let expect: Vec<BigRational> = [1, 2, 1, 1].iter().map(|&x| BigRational::from_integer(x.into())).collect();
        assert_eq!(coords, expect);
        let rs = enumerate_roots(&e6()).unwrap();
        let h = rs.highest_root(0);
        let coords = rs.simple_coords(0, &h);
        let expect: Vec<BigRational> = [1, 2, 3, 2, 1, 2].iter().map(|&x| BigRational::from_integer(x.into())).collect();
        assert_eq!(coords, expect);
    }

    #[test]
    fn reflections() {
        let l = e6();
        let rs = enumerate_roots(&l).unwrap();
        for r in rs.roots.iter().take(10) {
            let a = LatticeVector::from_ints(r);
            let s = reflection(&l, &a).unwrap();
            assert!(s.preserves(&l));
            assert_eq!(s.order(4), Some(2));
            assert_eq!(s.apply(&a), a.neg());
            assert_eq!(s.fixed_rank(), 5);
        }
        assert!(matches!(
            reflection(&l, &LatticeVector::from_ints(&[1, 0, 1, 0, 0, 0])),
            Err(RootError::NotARoot(_))
        ));
    }

    #[test]
    fn orbits() {
        let rs = enumerate_roots(&a2()).unwrap();
        assert_eq!(rs.orbit_count(&Isometry::identity(2)).unwrap(), (6, 6));
        let phi = Isometry::new("phi", IntMatrix::from_i64(&[&[-1, -1], &[1, 0]]));
        assert_eq!(rs.orbit_count(&phi).unwrap(), (2, 0));
        let bad = Isometry::new("b", IntMatrix::from_i64(&[&[2, 0], &[0, 1]]));
        assert!(matches!(rs.orbit_count(&bad), Err(RootError::NotPermuted(_))));
    }

    #[test]
    fn json_shape() {
        let rs = enumerate_roots(&d4()).unwrap();
        let j = serde_json::to_value(rs.to_json()).unwrap();
        assert_eq!(j["count"], 24);
        assert_eq!(j["components"][0]["type"], "D4");
        assert_eq!(j["components"][0]["root_count"], 24);
    }

    #[test]
    fn type_strings_round_trip() {
        let t: DynkinType = "E6".parse().unwrap();
        assert_eq!(t.to_string(), "E6");
        assert!("X3".parse::<DynkinType>().is_err());
    }
}
