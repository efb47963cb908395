//! Positive-definite lattices given by an exact Gram matrix.
//!
//! A [`Lattice`] is always stored in basis coordinates. An optional
//! [`Embedding`] records where the basis vectors sit in some ambient space
//! (for instance `Aₙ ⊂ Zⁿ⁺¹`, or the coordinates of a root lattice `Q` when
//! the lattice is a glue extension of `Q`), but all algebra runs on the Gram
//! matrix.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::exactmat::{
    self, dot, hnf, rat_to_string, snf, solve_exact, vec_mul, IntMatrix, MatrixError, RatMatrix,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error("Gram matrix is not symmetric")]
    NotSymmetric,
    #[error("Gram matrix is not positive definite (leading minor {0} is not positive)")]
    NotPositiveDefinite(usize),
    #[error("glue vector {glue} is not in the dual: pairing with basis vector {basis} is {pairing}")]
    GlueNotInDual {
        glue: usize,
        basis: usize,
        pairing: String,
    },
    #[error("vector lies outside the rational span of the lattice")]
    OutsideSpan,
    #[error("quotient is infinite: outer rank {outer} but inner rank {inner}")]
    InfiniteQuotient { outer: usize, inner: usize },
    #[error("sublattice generators are linearly dependent")]
    DependentGenerators,
    #[error("Gram matrix is not integral")]
    NotIntegral,
    #[error("vector has {got} coordinates but the lattice has rank {rank}")]
    WrongLength { got: usize, rank: usize },
}

/// Basis vectors expressed in an ambient space with its own bilinear form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Embedding {
    /// `rank × ambient_dim`, one basis vector per row.
    pub basis: RatMatrix,
    /// `ambient_dim × ambient_dim`.
    pub form: RatMatrix,
}

/// A run of basis coordinates belonging to one direct summand.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Block {
    pub name: String,
    pub offset: usize,
    pub rank: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lattice {
    name: Option<String>,
    gram: RatMatrix,
    embedding: Option<Embedding>,
    blocks: Vec<Block>,
}

/// Coordinates of a vector of `L ⊗ Q` in the basis of `L`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeVector {
    pub coords: Vec<BigRational>,
}

impl LatticeVector {
    pub fn new(coords: Vec<BigRational>) -> Self {
        LatticeVector { coords }
    }

    pub fn zero(rank: usize) -> Self {
        LatticeVector {
            coords: vec![BigRational::zero(); rank],
        }
    }

    pub fn from_ints(v: &[i64]) -> Self {
        LatticeVector {
            coords: v.iter().map(|&x| exactmat::rat_int(x)).collect(),
        }
    }

    pub fn from_bigints(v: &[BigInt]) -> Self {
        LatticeVector {
            coords: v.iter().map(|x| BigRational::from_integer(x.clone())).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn is_integral(&self) -> bool {
        self.coords.iter().all(|x| x.is_integer())
    }

    pub fn to_integers(&self) -> Option<Vec<BigInt>> {
        self.is_integral()
            .then(|| self.coords.iter().map(|x| x.to_integer()).collect())
    }

    pub fn add(&self, other: &LatticeVector) -> LatticeVector {
        LatticeVector {
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &LatticeVector) -> LatticeVector {
        LatticeVector {
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, k: &BigRational) -> LatticeVector {
        LatticeVector {
            coords: self.coords.iter().map(|a| a * k).collect(),
        }
    }

    pub fn neg(&self) -> LatticeVector {
        LatticeVector {
            coords: self.coords.iter().map(|a| -a).collect(),
        }
    }

    /// Concatenation, used to assemble vectors of a direct sum.
    pub fn concat(parts: &[LatticeVector]) -> LatticeVector {
        LatticeVector {
            coords: parts.iter().flat_map(|p| p.coords.iter().cloned()).collect(),
        }
    }

    /// Image under a matrix acting on row vectors.
    pub fn apply(&self, m: &RatMatrix) -> LatticeVector {
        LatticeVector {
            coords: vec_mul(&self.coords, m),
        }
    }
}

/// Pivots of the `LDLᵀ` factorisation without pivoting, i.e. the ratios of
/// consecutive leading principal minors. `None` if the matrix is not square.
pub fn ldl_pivots(gram: &RatMatrix) -> Option<Vec<BigRational>> {
    if !gram.is_square() {
        return None;
    }
    let n = gram.rows();
    let mut a = gram.clone();
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        let p = a.get(k, k).clone();
        if p.is_zero() {
            out.push(p);
            // further pivots are meaningless once a minor vanishes
            out.extend((k + 1..n).map(|_| BigRational::zero()));
            return Some(out);
        }
        for i in k + 1..n {
            if a.get(i, k).is_zero() {
                continue;
            }
            let f = a.get(i, k) / &p;
            for j in k..n {
                let v = a.get(i, j) - &f * a.get(k, j);
                a.set(i, j, v);
            }
        }
        out.push(p);
    }
    Some(out)
}

fn check_gram(gram: &RatMatrix) -> Result<(), LatticeError> {
    if !gram.is_square() {
        return Err(MatrixError::NotSquare {
            rows: gram.rows(),
            cols: gram.cols(),
        }
        .into());
    }
    if !gram.is_symmetric() {
        return Err(LatticeError::NotSymmetric);
    }
    let pivots = ldl_pivots(gram).expect("square");
    if let Some(k) = pivots.iter().position(|p| !p.is_positive()) {
        return Err(LatticeError::NotPositiveDefinite(k + 1));
    }
    Ok(())
}

impl Lattice {
    pub fn from_gram(gram: RatMatrix) -> Result<Lattice, LatticeError> {
        check_gram(&gram)?;
        Ok(Lattice {
            name: None,
            gram,
            embedding: None,
            blocks: Vec::new(),
        })
    }

    pub fn from_int_gram(gram: &IntMatrix) -> Result<Lattice, LatticeError> {
        Self::from_gram(gram.to_rat())
    }

    /// Lattice spanned by the rows of `basis` inside an ambient space whose
    /// pairing is `form`.
    pub fn from_embedding(basis: RatMatrix, form: RatMatrix) -> Result<Lattice, LatticeError> {
        let gram = basis.mul(&form)?.mul(&basis.transpose())?;
        check_gram(&gram)?;
        Ok(Lattice {
            name: None,
            gram,
            embedding: Some(Embedding { basis, form }),
            blocks: Vec::new(),
        })
    }

    /// Rows of `basis` inside the standard Euclidean space.
    pub fn from_euclidean_basis(basis: RatMatrix) -> Result<Lattice, LatticeError> {
        let m = basis.cols();
        Self::from_embedding(basis, RatMatrix::identity(m))
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn rank(&self) -> usize {
        self.gram.rows()
    }

    pub fn gram(&self) -> &RatMatrix {
        &self.gram
    }

    pub fn embedding(&self) -> Option<&Embedding> {
        self.embedding.as_ref()
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    /// The Gram matrix as an integer matrix when it is integral.
    pub fn int_gram(&self) -> Option<IntMatrix> {
        self.gram.to_int().ok()
    }

    pub fn det(&self) -> BigRational {
        self.gram.det().expect("Gram matrices are square")
    }

    pub fn is_integral(&self) -> bool {
        self.gram.is_integral()
    }

    pub fn is_even(&self) -> bool {
        self.is_integral()
            && (0..self.rank()).all(|i| {
                let d = self.gram.get(i, i).to_integer();
                (d % BigInt::from(2)).is_zero()
            })
    }

    pub fn is_unimodular(&self) -> bool {
        self.is_integral() && self.det().is_one()
    }

    /// `⟨u, v⟩` for coordinate vectors in this lattice's basis.
    pub fn pair(&self, u: &LatticeVector, v: &LatticeVector) -> BigRational {
        dot(&vec_mul(&u.coords, &self.gram), &v.coords)
    }

    pub fn norm(&self, v: &LatticeVector) -> BigRational {
        self.pair(v, v)
    }

    /// Ambient coordinates of a vector given in basis coordinates.
    pub fn to_ambient(&self, v: &LatticeVector) -> Vec<BigRational> {
        match &self.embedding {
            Some(e) => vec_mul(&v.coords, &e.basis),
            None => v.coords.clone(),
        }
    }

    /// Basis coordinates of an ambient vector, which must lie in the rational span.
    pub fn coords_of(&self, ambient: &[BigRational]) -> Result<LatticeVector, LatticeError> {
        let basis = match &self.embedding {
            Some(e) => e.basis.clone(),
            None => RatMatrix::identity(self.rank()),
        };
        if ambient.len() != basis.cols() {
            return Err(LatticeError::WrongLength {
                got: ambient.len(),
                rank: basis.cols(),
            });
        }
        let b = RatMatrix::from_rows(vec![ambient.to_vec()], ambient.len())?;
        match solve_exact(&basis, &b) {
            Ok(x) => Ok(LatticeVector::new(x.row(0).to_vec())),
            Err(MatrixError::NoSolution) => Err(LatticeError::OutsideSpan),
            Err(e) => Err(e.into()),
        }
    }

    /// Membership of an ambient vector: true iff its basis coordinates are integral.
    pub fn member(&self, ambient: &[BigRational]) -> Result<bool, LatticeError> {
        Ok(self.coords_of(ambient)?.is_integral())
    }

    /// Dual lattice `L* = {x ∈ L⊗Q : ⟨x, L⟩ ⊆ Z}` with basis `gram⁻¹ · basis(L)`.
    pub fn dual(&self) -> Result<Lattice, LatticeError> {
        let inv = self.gram.inverse()?;
        let embedding = match &self.embedding {
            Some(e) => Some(Embedding {
                basis: inv.mul(&e.basis)?,
                form: e.form.clone(),
            }),
            None => Some(Embedding {
                basis: inv.clone(),
                form: self.gram.clone(),
            }),
        };
        Ok(Lattice {
            name: self.name.as_ref().map(|n| format!("{n}*")),
            gram: inv,
            embedding,
            blocks: self.blocks.clone(),
        })
    }

    /// Discriminant group `L*/L` of an integral lattice.
    pub fn discriminant_group(&self) -> Result<DiscriminantGroup, LatticeError> {
        let g = self.int_gram().ok_or(LatticeError::NotIntegral)?;
        let d = snf(&g);
        let invariant_factors = d.nontrivial_factors();
        let order = invariant_factors.iter().product();
        Ok(DiscriminantGroup {
            invariant_factors,
            order,
        })
    }

    pub fn to_json(&self) -> LatticeJson {
        LatticeJson {
            name: self.name.clone(),
            rank: self.rank(),
            gram: rat_rows(&self.gram),
            embedding: self.embedding.as_ref().map(|e| EmbeddingJson {
                basis: rat_rows(&e.basis),
                form: rat_rows(&e.form),
            }),
            even: self.is_even(),
            det: rat_to_string(&self.det()),
        }
    }
}

/// Block-diagonal direct sum. Block boundaries are recorded in [`Lattice::blocks`].
pub fn direct_sum(parts: &[Lattice]) -> Lattice {
    let n: usize = parts.iter().map(Lattice::rank).sum();
    let mut gram = RatMatrix::zeros(n, n);
    let mut blocks = Vec::with_capacity(parts.len());
    let mut offset = 0;
    for (k, p) in parts.iter().enumerate() {
        let r = p.rank();
        for i in 0..r {
            for j in 0..r {
                gram.set(offset + i, offset + j, p.gram.get(i, j).clone());
            }
        }
        blocks.push(Block {
            name: p.name.clone().unwrap_or_else(|| format!("L{k}")),
            offset,
            rank: r,
        });
        offset += r;
    }
    let embedding = if !parts.is_empty() && parts.iter().all(|p| p.embedding.is_some()) {
        let dims: Vec<usize> = parts
            .iter()
            .map(|p| p.embedding.as_ref().unwrap().form.rows())
            .collect();
        let m: usize = dims.iter().sum();
        let mut basis = RatMatrix::zeros(n, m);
        let mut form = RatMatrix::zeros(m, m);
        let (mut ro, mut co) = (0, 0);
        for (p, &d) in parts.iter().zip(&dims) {
            let e = p.embedding.as_ref().unwrap();
            for i in 0..p.rank() {
                for j in 0..d {
                    basis.set(ro + i, co + j, e.basis.get(i, j).clone());
                }
            }
            for i in 0..d {
                for j in 0..d {
                    form.set(co + i, co + j, e.form.get(i, j).clone());
                }
            }
            ro += p.rank();
            co += d;
        }
        Some(Embedding { basis, form })
    } else {
        None
    };
    let name = (!parts.is_empty()).then(|| {
        parts
            .iter()
            .enumerate()
            .map(|(k, p)| p.name.clone().unwrap_or_else(|| format!("L{k}")))
            .collect::<Vec<_>>()
            .join("+")
    });
    Lattice {
        name,
        gram,
        embedding,
        blocks,
    }
}

/// Result of gluing: the overlattice and its index over the original lattice.
#[derive(Debug, Clone)]
pub struct GlueExtension {
    /// Basis in coordinates of the glued lattice `Q` (embedding form = Gram of `Q`).
    pub lattice: Lattice,
    pub index: BigInt,
}

/// Lattice generated by `q` and the glue vectors (coordinates in the basis of `q`).
///
/// Each glue vector must pair integrally with every basis vector of `q`. The
/// result's basis is the Hermite form of the stacked generators, scaled back
/// by the common denominator, so equal inputs give equal bases.
pub fn glue_extend(q: &Lattice, glue: &[LatticeVector]) -> Result<GlueExtension, LatticeError> {
    let r = q.rank();
    for (gi, g) in glue.iter().enumerate() {
        if g.len() != r {
            return Err(LatticeError::WrongLength { got: g.len(), rank: r });
        }
        let pairings = vec_mul(&g.coords, &q.gram);
        if let Some((bi, p)) = pairings.iter().enumerate().find(|(_, p)| !p.is_integer()) {
            return Err(LatticeError::GlueNotInDual {
                glue: gi,
                basis: bi,
                pairing: rat_to_string(p),
            });
        }
    }
    let mut generators = RatMatrix::identity(r);
    if !glue.is_empty() {
        let g = RatMatrix::from_rows(glue.iter().map(|v| v.coords.clone()).collect(), r)?;
        generators = generators.vstack(&g)?;
    }
    let (scaled, denom) = generators.clear_denominators();
    let h = hnf(&scaled);
    debug_assert_eq!(h.rows(), r);
    let index = {
        // det(basis) = det(h) / denomʳ = 1 / index
        let det_h = h.det()?.abs();
        let num = num_traits::pow(denom.clone(), r);
        num / det_h
    };
    let basis = h
        .to_rat()
        .scale(&BigRational::new(BigInt::one(), denom));
    let mut lattice = Lattice::from_embedding(basis, q.gram.clone())?;
    if let Some(n) = &q.name {
        lattice.name = Some(format!("glue({n})"));
    }
    Ok(GlueExtension { lattice, index })
}

/// Even ⟺ integral with even diagonal; unimodular ⟺ det = 1.
pub fn is_even_unimodular(l: &Lattice) -> (bool, bool) {
    (l.is_even(), l.is_unimodular())
}

/// A sublattice given by integer generators in the parent's basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sublattice {
    /// `rank(sub) × rank(parent)`, rows in parent coordinates.
    pub inclusion: IntMatrix,
    pub lattice: Lattice,
}

impl Sublattice {
    /// Sublattice with the given (independent) rows as basis.
    pub fn new(parent: &Lattice, inclusion: IntMatrix) -> Result<Sublattice, LatticeError> {
        if inclusion.cols() != parent.rank() {
            return Err(LatticeError::WrongLength {
                got: inclusion.cols(),
                rank: parent.rank(),
            });
        }
        let q = inclusion.to_rat();
        if q.rank() != inclusion.rows() {
            return Err(LatticeError::DependentGenerators);
        }
        let gram = q.mul(&parent.gram)?.mul(&q.transpose())?;
        let lattice = Lattice::from_gram(gram)?;
        Ok(Sublattice { inclusion, lattice })
    }

    /// Sublattice spanned by arbitrary integer generators (basis taken in Hermite form).
    pub fn spanned_by(parent: &Lattice, generators: &IntMatrix) -> Result<Sublattice, LatticeError> {
        Self::new(parent, hnf(generators))
    }

    pub fn rank(&self) -> usize {
        self.inclusion.rows()
    }

    /// Whether every basis vector of `self` is an integer combination of `other`'s.
    pub fn is_contained_in(&self, other: &Sublattice) -> bool {
        if self.rank() == 0 {
            return true;
        }
        if other.rank() == 0 {
            return false;
        }
        match solve_exact(&other.inclusion.to_rat(), &self.inclusion.to_rat()) {
            Ok(x) => x.is_integral(),
            Err(_) => false,
        }
    }

    /// Basis of `self` in the coordinates of a containing sublattice.
    pub fn coordinates_in(&self, other: &Sublattice) -> Result<IntMatrix, LatticeError> {
        let x = solve_exact(&other.inclusion.to_rat(), &self.inclusion.to_rat())
            .map_err(|_| LatticeError::OutsideSpan)?;
        Ok(x.to_int()?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuotientIndex {
    #[serde(serialize_with = "crate::json::bigint")]
    pub index: BigInt,
    /// Invariant factors greater than one.
    #[serde(serialize_with = "crate::json::bigint_vec")]
    pub invariant_factors: Vec<BigInt>,
}

/// `|outer / inner|` for a full-rank sublattice, via Smith form of the inclusion.
pub fn quotient_index(outer: &Lattice, inner: &Sublattice) -> Result<QuotientIndex, LatticeError> {
    if inner.rank() != outer.rank() || inner.inclusion.cols() != outer.rank() {
        return Err(LatticeError::InfiniteQuotient {
            outer: outer.rank(),
            inner: inner.rank(),
        });
    }
    Ok(index_of_square_inclusion(&inner.inclusion))
}

/// Index of the row span of a square nonsingular integer matrix in `Zⁿ`.
pub fn index_of_square_inclusion(inclusion: &IntMatrix) -> QuotientIndex {
    let d = snf(inclusion);
    QuotientIndex {
        index: d.invariant_factors.iter().product(),
        invariant_factors: d.nontrivial_factors(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiscriminantGroup {
    #[serde(serialize_with = "crate::json::bigint_vec")]
    pub invariant_factors: Vec<BigInt>,
    #[serde(serialize_with = "crate::json::bigint")]
    pub order: BigInt,
}

/// An integer matrix acting on basis coordinates (row vectors: `x ↦ x·M`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Isometry {
    pub name: String,
    pub matrix: IntMatrix,
}

impl Isometry {
    pub fn new(name: impl Into<String>, matrix: IntMatrix) -> Self {
        Isometry {
            name: name.into(),
            matrix,
        }
    }

    pub fn identity(rank: usize) -> Self {
        Isometry::new("id", IntMatrix::identity(rank))
    }

    pub fn rank(&self) -> usize {
        self.matrix.rows()
    }

    /// `M·G·Mᵀ = G`.
    pub fn preserves(&self, l: &Lattice) -> bool {
        let m = self.matrix.to_rat();
        match m.mul(l.gram()).and_then(|x| x.mul(&m.transpose())) {
            Ok(g) => &g == l.gram(),
            Err(_) => false,
        }
    }

    /// Smallest `k ≤ max` with `Mᵏ = I`.
    pub fn order(&self, max: u32) -> Option<u32> {
        let mut p = self.matrix.clone();
        for k in 1..=max {
            if p.is_identity() {
                return Some(k);
            }
            p = p.mul(&self.matrix).ok()?;
        }
        None
    }

    pub fn compose(&self, then: &Isometry) -> Isometry {
        Isometry::new(
            format!("{}*{}", then.name, self.name),
            self.matrix.mul(&then.matrix).expect("same rank"),
        )
    }

    pub fn inverse(&self) -> Isometry {
        Isometry::new(
            format!("{}^-1", self.name),
            self.matrix.unimodular_inverse().expect("isometries are unimodular"),
        )
    }

    pub fn pow(&self, e: u32) -> Isometry {
        Isometry::new(
            format!("{}^{e}", self.name),
            self.matrix.pow(e).expect("square"),
        )
    }

    /// Rank of the fixed sublattice, i.e. the nullity of `M − I`.
    pub fn fixed_rank(&self) -> usize {
        let n = self.rank();
        let d = self.matrix.sub(&IntMatrix::identity(n)).expect("square");
        n - d.to_rat().rank()
    }

    pub fn apply(&self, v: &LatticeVector) -> LatticeVector {
        v.apply(&self.matrix.to_rat())
    }

    pub fn apply_int(&self, v: &[BigInt]) -> Vec<BigInt> {
        exactmat::int_vec_mul(v, &self.matrix)
    }
}

/// Block-diagonal isometry of a direct sum.
pub fn block_diagonal(name: impl Into<String>, blocks: &[IntMatrix]) -> Isometry {
    let n: usize = blocks.iter().map(IntMatrix::rows).sum();
    let mut m = IntMatrix::zeros(n, n);
    let mut o = 0;
    for b in blocks {
        for i in 0..b.rows() {
            for j in 0..b.cols() {
                m.set(o + i, o + j, b.get(i, j).clone());
            }
        }
        o += b.rows();
    }
    Isometry::new(name, m)
}

#[derive(Debug, Clone, Serialize)]
pub struct EmbeddingJson {
    pub basis: Vec<Vec<String>>,
    pub form: Vec<Vec<String>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct LatticeJson {
    pub name: Option<String>,
    pub rank: usize,
    pub gram: Vec<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub embedding: Option<EmbeddingJson>,
    pub even: bool,
    pub det: String,
}

pub fn rat_rows(m: &RatMatrix) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|i| m.row(i).iter().map(rat_to_string).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmat::{rat, rat_int};

    fn a2() -> Lattice {
        Lattice::from_int_gram(&IntMatrix::from_i64(&[&[2, -1], &[-1, 2]]))
            .unwrap()
            .with_name("A2")
    }

    fn d4() -> Lattice {
        // simple roots e1-e2, e2-e3, e3-e4, e3+e4
        Lattice::from_euclidean_basis(RatMatrix::from_fractions(&[
            &[(1, 1), (-1, 1), (0, 1), (0, 1)],
            &[(0, 1), (1, 1), (-1, 1), (0, 1)],
            &[(0, 1), (0, 1), (1, 1), (-1, 1)],
            &[(0, 1), (0, 1), (1, 1), (1, 1)],
        ]))
        .unwrap()
        .with_name("D4")
    }

    #[test]
    fn rejects_bad_grams() {
        let g = IntMatrix::from_i64(&[&[1, 2], &[2, 1]]);
        assert_eq!(
            Lattice::from_int_gram(&g),
            Err(LatticeError::NotPositiveDefinite(2))
        );
        let g = IntMatrix::from_i64(&[&[2, 1], &[0, 2]]);
        assert_eq!(Lattice::from_int_gram(&g), Err(LatticeError::NotSymmetric));
    }

    #[test]
    fn dual_examples() {
        let z = Lattice::from_int_gram(&IntMatrix::identity(3)).unwrap();
        let zd = z.dual().unwrap();
        assert_eq!(zd.gram(), z.gram());
        let a = a2();
        assert_eq!(a.det(), rat_int(3));
        let ad = a.dual().unwrap();
        assert_eq!(ad.det(), rat(1, 3));
        assert_eq!(a.discriminant_group().unwrap().order, BigInt::from(3));
        let dg = d4().discriminant_group().unwrap();
        assert_eq!(dg.invariant_factors, vec![BigInt::from(2), BigInt::from(2)]);
    }

    #[test]
    fn double_dual_is_original() {
        let a = a2();
        assert_eq!(a.dual().unwrap().dual().unwrap().gram(), a.gram());
    }

    #[test]
    fn direct_sum_examples() {
        let s = direct_sum(&[a2(), a2()]);
        assert_eq!(s.rank(), 4);
        assert_eq!(s.det(), rat_int(9));
        assert_eq!(s.blocks().len(), 2);
        assert_eq!(s.blocks()[1].offset, 2);
        let six: Vec<Lattice> = (0..6).map(|_| d4()).collect();
        let s = direct_sum(&six);
        assert_eq!(s.rank(), 24);
        assert_eq!(s.det(), rat_int(4096));
        assert!(s.embedding().is_some());
        let e = direct_sum(&[]);
        assert_eq!(e.rank(), 0);
        assert_eq!(e.det(), rat_int(1));
    }

    #[test]
    fn even_unimodular_flags() {
        assert_eq!(is_even_unimodular(&a2()), (true, false));
        let z1 = Lattice::from_int_gram(&IntMatrix::from_i64(&[&[1]])).unwrap();
        assert_eq!(is_even_unimodular(&z1), (false, true));
    }

    #[test]
    fn glue_empty_is_identity() {
        let g = glue_extend(&a2(), &[]).unwrap();
        assert_eq!(g.index, BigInt::one());
        assert_eq!(g.lattice.gram(), a2().gram());
    }

    #[test]
    fn glue_rejects_non_dual_vectors() {
        let v = LatticeVector::new(vec![rat(1, 2), rat_int(0)]);
        match glue_extend(&a2(), &[v]) {
            Err(LatticeError::GlueNotInDual { glue: 0, basis: 1, pairing }) => {
                assert_eq!(pairing, "-1/2");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn glue_d4_with_spinor_class_gives_z4_index_two() {
        // D4 + [1] with [1] = (1/2,1/2,1/2,1/2) is an index-2 overlattice, det 1
        let d = d4();
        let half = [rat(1, 2), rat(1, 2), rat(1, 2), rat(1, 2)];
        let g = d.coords_of(&half).unwrap();
        let ext = glue_extend(&d, &[g]).unwrap();
        assert_eq!(ext.index, BigInt::from(2));
        assert_eq!(ext.lattice.det(), rat_int(1));
        assert_eq!(ext.lattice.det() * rat_int(4), d.det());
    }

    #[test]
    fn membership() {
        let d = d4();
        assert!(d.member(&[rat_int(1), rat_int(-1), rat_int(0), rat_int(0)]).unwrap());
        assert!(!d.member(&[rat_int(1), rat_int(0), rat_int(0), rat_int(0)]).unwrap());
        let a = Lattice::from_euclidean_basis(RatMatrix::from_fractions(&[
            &[(1, 1), (-1, 1), (0, 1)],
            &[(0, 1), (1, 1), (-1, 1)],
        ]))
        .unwrap();
        assert_eq!(
            a.member(&[rat_int(1), rat_int(0), rat_int(0)]),
            Err(LatticeError::OutsideSpan)
        );
    }

    #[test]
    fn quotient_indices() {
        let a = a2();
        let all = Sublattice::new(&a, IntMatrix::identity(2)).unwrap();
        assert_eq!(quotient_index(&a, &all).unwrap().index, BigInt::one());
        // A2 inside A2* : in dual coordinates the A2 basis is the Gram matrix
        let ad = a.dual().unwrap();
        let inner = Sublattice::new(&ad, IntMatrix::from_i64(&[&[2, -1], &[-1, 2]])).unwrap();
        let q = quotient_index(&ad, &inner).unwrap();
        assert_eq!(q.index, BigInt::from(3));
        assert_eq!(q.invariant_factors, vec![BigInt::from(3)]);
        // det(inner) = index² · det(outer)
        assert_eq!(inner.lattice.det(), ad.det() * rat_int(9));
        let half = Sublattice::new(&a, IntMatrix::from_i64(&[&[1, 0]])).unwrap();
        assert!(matches!(
            quotient_index(&a, &half),
            Err(LatticeError::InfiniteQuotient { outer: 2, inner: 1 })
        ));
    }

    #[test]
    fn sublattice_containment() {
        let a = a2();
        let all = Sublattice::new(&a, IntMatrix::identity(2)).unwrap();
        let twice = Sublattice::new(&a, IntMatrix::from_i64(&[&[2, 0], &[0, 2]])).unwrap();
        assert!(twice.is_contained_in(&all));
        assert!(!all.is_contained_in(&twice));
        assert_eq!(
            Sublattice::new(&a, IntMatrix::from_i64(&[&[1, 1], &[2, 2]])),
            Err(LatticeError::DependentGenerators)
        );
    }

    #[test]
    fn json_shape() {
        let j = serde_json::to_value(a2().to_json()).unwrap();
        assert_eq!(j["rank"], 2);
        assert_eq!(j["det"], "3/1");
        assert_eq!(j["gram"][0][1], "-1/1");
        assert_eq!(j["even"], true);
    }

    #[test]
    fn isometry_basics() {
        let a = a2();
        // (x0,x1,x2) -> (x2,x0,x1) on A2 in the simple-root basis a=e0-e1, b=e1-e2:
        // a -> e2-e0 = -a-b, b -> e0-e1 = a
        let phi = Isometry::new("phi", IntMatrix::from_i64(&[&[-1, -1], &[1, 0]]));
        assert!(phi.preserves(&a));
        assert_eq!(phi.order(12), Some(3));
        assert_eq!(phi.fixed_rank(), 0);
        assert_eq!(phi.compose(&phi.inverse()).matrix, IntMatrix::identity(2));
        let swap = Isometry::new("s", IntMatrix::from_i64(&[&[0, 1], &[1, 0]]));
        assert!(swap.preserves(&a));
        assert_eq!(swap.fixed_rank(), 1);
        let bad = Isometry::new("b", IntMatrix::from_i64(&[&[1, 1], &[0, 1]]));
        assert!(!bad.preserves(&a));
        let bd = block_diagonal("bd", &[phi.matrix.clone(), swap.matrix.clone()]);
        assert!(bd.preserves(&direct_sum(&[a2(), a2()])));
        assert_eq!(bd.order(12), Some(6));
    }
}
