//! Invariants of an order-3 isometry `σ` of an even lattice `L`: eigenspace
//! dimensions, `ρ`, the sublattices `N ⊇ R ⊇ M`, `|N/R|`, and the weight-one
//! dimensions of the fixed-point and twisted parts.
//!
//! All vectors are integer row vectors in the basis of `L`; `σ` acts as
//! `x ↦ x·S`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::catalog::{self, CatalogError, SigmaKey};
use crate::exactmat::{exact_sqrt, hnf, kernel_basis, rat_to_string, snf, solve_exact, IntMatrix, MatrixError};
use crate::lattice::{Isometry, Lattice, LatticeError};
use crate::liealg::{self, CandidateReport, LieError, SemisimpleType};
use crate::roots::{enumerate_roots, RootError, RootSystem};

/// The prime order handled here.
pub const P: u64 = 3;

/// Coset enumeration is skipped above this many cosets.
pub const COSET_LIMIT: u64 = 5_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrbifoldError {
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Root(#[from] RootError),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error("Gram matrix is not integral")]
    NotIntegral,
    #[error("{0} is not an isometry of the lattice")]
    NotIsometry(String),
    #[error("{name} has order {found:?}, expected 3")]
    WrongOrder { name: String, found: Option<u32> },
    #[error("rank {rank} minus fixed rank {fixed} is odd")]
    OddEigenspace { rank: usize, fixed: usize },
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

/// Dimensions of the `ζⁿ`-eigenspaces of `σ` on `L ⊗ C`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct EigenData {
    pub h0: usize,
    pub h1: usize,
    pub h2: usize,
}

impl EigenData {
    pub fn as_array(&self) -> [usize; 3] {
        [self.h0, self.h1, self.h2]
    }
}

pub fn eigen_dims(sigma: &Isometry) -> Result<EigenData, OrbifoldError> {
    let rank = sigma.rank();
    let h0 = sigma.fixed_rank();
    if !(rank - h0).is_multiple_of(2) {
        return Err(OrbifoldError::OddEigenspace { rank, fixed: h0 });
    }
    let h = (rank - h0) / 2;
    Ok(EigenData { h0, h1: h, h2: h })
}

/// `ρ = (1/4p²) Σ_{r=1}^{p−1} r(p−r) dim 𝔥₍ᵣ₎`.
pub fn rho(e: &EigenData) -> BigRational {
    let dims = [e.h0, e.h1, e.h2];
    let p = P as usize;
    let sum: usize = (1..p).map(|r| r * (p - r) * dims[r]).sum();
    BigRational::new(BigInt::from(sum), BigInt::from(4 * p * p))
}

/// Whether `ρ ∈ (1/3)Z`.
pub fn rho_in_third_z(rho: &BigRational) -> bool {
    (rho * BigInt::from(P)).is_integer()
}

fn gram(l: &Lattice) -> Result<IntMatrix, OrbifoldError> {
    l.int_gram().ok_or(OrbifoldError::NotIntegral)
}

/// `N = {α ∈ L : α(1 + σ + σ²) = 0}`, checked against `N ⟂ L^σ`.
pub fn sublattice_n(l: &Lattice, sigma: &Isometry) -> Result<IntMatrix, OrbifoldError> {
    let s = &sigma.matrix;
    let n = s.rows();
    let sum = IntMatrix::identity(n).add(s)?.add(&s.pow(2)?)?;
    let basis = kernel_basis(&sum);
    let fixed = kernel_basis(&s.sub(&IntMatrix::identity(n))?);
    if basis.rows() > 0 && fixed.rows() > 0 {
        let pairing = basis.mul(&gram(l)?)?.mul(&fixed.transpose())?;
        if !pairing.is_zero() {
            return Err(OrbifoldError::Inconsistent("N is not orthogonal to the fixed lattice".into()));
        }
    }
    Ok(basis)
}

/// `M = (1 − σ)L` in Hermite form.
pub fn sublattice_m(sigma: &Isometry) -> Result<IntMatrix, OrbifoldError> {
    let n = sigma.rank();
    Ok(hnf(&IntMatrix::identity(n).sub(&sigma.matrix)?))
}

/// `K = Σ_{r=0}^{2} (3 + 2r) Sʳ G`, so that `c₀(α, β) ≡ α K βᵀ (mod 6)`.
pub fn commutator_form(l: &Lattice, sigma: &Isometry) -> Result<IntMatrix, OrbifoldError> {
    let g = gram(l)?;
    let n = sigma.rank();
    let mut k = IntMatrix::zeros(n, n);
    let mut power = IntMatrix::identity(n);
    for r in 0..P {
        let coeff = BigInt::from(P + 2 * r);
        k = k.add(&power.mul(&g)?.scale(&coeff))?;
        power = power.mul(&sigma.matrix)?;
    }
    Ok(k)
}

fn mod6(x: &BigInt) -> u8 {
    x.mod_floor(&BigInt::from(2 * P)).to_u8().expect("residue below 6")
}

/// `c₀^σ(α, β) = Σ_{r=0}^{2} (3 + 2r)⟨σʳα, β⟩ mod 6`.
pub fn commutator_value(l: &Lattice, sigma: &Isometry, alpha: &[BigInt], beta: &[BigInt]) -> Result<u8, OrbifoldError> {
    let k = commutator_form(l, sigma)?;
    let n = k.rows();
    if alpha.len() != n || beta.len() != n {
        return Err(LatticeError::WrongLength { got: alpha.len().max(beta.len()), rank: n }.into());
    }
    let a = IntMatrix::from_rows(vec![alpha.to_vec()], n)?;
    let b = IntMatrix::from_rows(vec![beta.to_vec()], n)?;
    Ok(mod6(a.mul(&k)?.mul(&b.transpose())?.get(0, 0)))
}

/// `c₀^σ` is alternating on all of `L` iff `K + Kᵀ ≡ 0` and `diag K ≡ 0 (mod 6)`.
pub fn commutator_is_alternating(l: &Lattice, sigma: &Isometry) -> Result<bool, OrbifoldError> {
    let k = commutator_form(l, sigma)?;
    let n = k.rows();
    Ok((0..n).all(|i| mod6(k.get(i, i)) == 0 && (0..n).all(|j| (mod6(k.get(i, j)) + mod6(k.get(j, i))).is_multiple_of(6))))
}

/// Everything attached to the twisted sector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistData {
    pub eigen: EigenData,
    pub rho: BigRational,
    /// Bases in `L`-coordinates.
    pub n: IntMatrix,
    pub m: IntMatrix,
    pub r: IntMatrix,
    pub index_nm: BigInt,
    pub index_nr: BigInt,
    /// `|N/R|` recounted by walking the cosets of `N/M`; `None` past [`COSET_LIMIT`].
    pub index_nr_by_cosets: Option<BigInt>,
}

impl TwistData {
    pub fn r_equals_m(&self) -> bool {
        self.index_nr == self.index_nm
    }

    pub fn top_dim(&self) -> Option<BigInt> {
        exact_sqrt(&self.index_nr)
    }
}

/// Commutator matrix `C_ij = c₀(nᵢ, nⱼ) mod 6` on a basis of `N`.
fn commutator_on(basis: &IntMatrix, k: &IntMatrix) -> Result<IntMatrix, OrbifoldError> {
    let c = basis.mul(k)?.mul(&basis.transpose())?;
    Ok(IntMatrix::from_fn(c.rows(), c.cols(), |i, j| BigInt::from(mod6(c.get(i, j)))))
}

/// `R = {α ∈ N : c₀(α, N) = 0}` as a basis in `N`-coordinates, with `|N/R|`.
///
/// With `U·C·V = diag(dᵢ)`, `x·C ≡ 0 (mod 6)` iff `x·U⁻¹` has its `i`-th
/// entry divisible by `6/gcd(6, dᵢ)`.
pub fn sublattice_r_in_n(c: &IntMatrix) -> (IntMatrix, BigInt) {
    let k = c.rows();
    if k == 0 {
        return (IntMatrix::zeros(0, 0), BigInt::one());
    }
    let six = BigInt::from(2 * P);
    let d = snf(c);
    let mut index = BigInt::one();
    let mut r = d.u.clone();
    for i in 0..k {
        let e = &six / six.gcd(&d.invariant_factors[i]);
        index *= &e;
        for j in 0..k {
            let v = r.get(i, j) * &e;
            r.set(i, j, v);
        }
    }
    (r, index)
}

/// `|R/M|` counted over coset representatives of `N/M`, returning `|N/R|`.
fn index_nr_by_cosets(c: &IntMatrix, m_in_n: &IntMatrix) -> Result<Option<BigInt>, OrbifoldError> {
    let k = c.rows();
    if k == 0 {
        return Ok(Some(BigInt::one()));
    }
    let d = snf(m_in_n);
    let orders: Vec<u64> = d.invariant_factors.iter().map(|x| x.to_u64().unwrap_or(u64::MAX)).collect();
    let total: u128 = orders.iter().map(|&o| o as u128).product();
    if orders.contains(&0) || total > COSET_LIMIT as u128 {
        return Ok(None);
    }
    let gens = d.v.unimodular_inverse()?;
    let step: Vec<Vec<u8>> = (0..k)
        .map(|i| {
            let row = IntMatrix::from_rows(vec![gens.row(i).to_vec()], k).expect("row");
            let w = row.mul(c).expect("shapes agree");
            (0..k).map(|j| mod6(w.get(0, j))).collect()
        })
        .collect();
    let active: Vec<usize> = (0..k).filter(|&i| orders[i] > 1).collect();
    let mut z = vec![0u64; k];
    let mut acc = vec![0u8; k];
    let mut inside = 0u64;
    'walk: loop {
        if acc.iter().all(|&x| x == 0) {
            inside += 1;
        }
        for &i in &active {
            z[i] += 1;
            let back = z[i] == orders[i];
            for j in 0..k {
                let delta = if back {
                    (6 - ((orders[i] - 1) % 6 * step[i][j] as u64 % 6) as u8) % 6
                } else {
                    step[i][j]
                };
                acc[j] = (acc[j] + delta) % 6;
            }
            if !back {
                continue 'walk;
            }
            z[i] = 0;
        }
        break;
    }
    let total = BigInt::from(total);
    if !(&total % inside).is_zero() {
        return Err(OrbifoldError::Inconsistent("|R/M| does not divide |N/M|".into()));
    }
    Ok(Some(total / inside))
}

pub fn twist_data(l: &Lattice, sigma: &Isometry) -> Result<TwistData, OrbifoldError> {
    let eigen = eigen_dims(sigma)?;
    let n = sublattice_n(l, sigma)?;
    let m = sublattice_m(sigma)?;
    let rank = l.rank() - eigen.h0;
    if n.rows() != rank || m.rows() != rank {
        return Err(OrbifoldError::Inconsistent(format!(
            "rank N = {}, rank M = {}, expected {rank}",
            n.rows(),
            m.rows()
        )));
    }
    let k = commutator_form(l, sigma)?;
    let c = commutator_on(&n, &k)?;
    let (r_in_n, index_nr) = sublattice_r_in_n(&c);
    let (m_in_n, r) = if rank == 0 {
        (IntMatrix::zeros(0, 0), IntMatrix::zeros(0, l.rank()))
    } else {
        let x = solve_exact(&n.to_rat(), &m.to_rat())?;
        let x = x.to_int().map_err(|_| OrbifoldError::Inconsistent("M is not contained in N".into()))?;
        (x, hnf(&r_in_n.mul(&n)?))
    };
    let index_nm: BigInt = if rank == 0 { BigInt::one() } else { snf(&m_in_n).invariant_factors.iter().product() };
    if rank > 0 && !m.mul(&k)?.mul(&n.transpose())?.entries().iter().all(|x| mod6(x) == 0) {
        return Err(OrbifoldError::Inconsistent("M is not contained in R".into()));
    }
    if !(&index_nm % &index_nr).is_zero() {
        return Err(OrbifoldError::Inconsistent("|N/R| does not divide |N/M|".into()));
    }
    let by_cosets = index_nr_by_cosets(&c, &m_in_n)?;
    if let Some(x) = &by_cosets {
        if *x != index_nr {
            return Err(OrbifoldError::Inconsistent(format!("|N/R| is {index_nr} by SNF but {x} by cosets")));
        }
    }
    Ok(TwistData { rho: rho(&eigen), eigen, n, m, r, index_nm, index_nr, index_nr_by_cosets: by_cosets })
}

/// `dim (V_L^σ)₁ = dim 𝔥₍₀₎ + #⟨σ⟩-orbits on Δ(L)`.
pub fn fixed_weight_one_dim(roots: &RootSystem, sigma: &Isometry) -> Result<usize, OrbifoldError> {
    let (orbits, _) = roots.orbit_count(sigma)?;
    Ok(sigma.fixed_rank() + orbits)
}

/// `dim V_L(σ)₁`: the top space when `ρ = 1`, nothing when `ρ > 1`.
pub fn twisted_weight_one_dim(td: &TwistData) -> Result<BigInt, OrbifoldError> {
    let one = BigRational::one();
    if !rho_in_third_z(&td.rho) {
        return Err(OrbifoldError::Unsupported(format!("rho = {} is not in (1/3)Z", rat_to_string(&td.rho))));
    }
    if td.rho > one {
        Ok(BigInt::zero())
    } else if td.rho == one {
        td.top_dim()
            .ok_or_else(|| OrbifoldError::Inconsistent(format!("|N/R| = {} is not a square", td.index_nr)))
    } else {
        Err(OrbifoldError::Unsupported(format!(
            "rho = {} < 1: weight one reaches above the top space",
            rat_to_string(&td.rho)
        )))
    }
}

/// One enumeration to run alongside a report.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CandidateQuery {
    pub dim: u64,
    pub rank: Option<usize>,
    pub hdvd: u64,
    /// Type shapes listed in the source for this query.
    pub reference: Vec<&'static str>,
}

/// Construction-specific inputs the invariants alone do not determine.
#[derive(Debug, Clone, Default)]
pub struct ReportContext {
    pub queries: Vec<CandidateQuery>,
    /// The weight-one type the construction is known to produce.
    pub resolved: Option<SemisimpleType>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Checks {
    pub isometry: bool,
    pub order: bool,
    pub stabilizes: bool,
}

#[derive(Debug, Clone, Serialize)]
#[allow(non_snake_case)]
pub struct Ranks {
    pub N: usize,
    pub M: usize,
    pub R: usize,
}

#[derive(Debug, Clone, Serialize)]
#[allow(non_snake_case)]
pub struct Indices {
    #[serde(serialize_with = "crate::json::bigint")]
    pub N_over_M: BigInt,
    #[serde(serialize_with = "crate::json::bigint")]
    pub N_over_R: BigInt,
}

#[derive(Debug, Clone, Serialize)]
pub struct Dims {
    pub fixed: usize,
    #[serde(serialize_with = "crate::json::bigint")]
    pub twisted_each: BigInt,
    #[serde(serialize_with = "crate::json::bigint")]
    pub total: BigInt,
}

#[derive(Debug, Clone, Serialize)]
pub struct OrbifoldReport {
    pub lattice: String,
    pub sigma: String,
    pub checks: Checks,
    pub eigen: [usize; 3],
    #[serde(serialize_with = "serialize_rat")]
    pub rho: BigRational,
    pub ranks: Ranks,
    pub indices: Indices,
    #[serde(rename = "R_equals_M")]
    pub r_equals_m: bool,
    pub dims: Dims,
    pub candidates: Vec<CandidateReport>,
    pub schellekens: Vec<u32>,
    #[serde(skip)]
    pub resolved: Option<SemisimpleType>,
}

impl OrbifoldReport {
    pub fn passed(&self) -> bool {
        self.checks.isometry && self.checks.order && self.checks.stabilizes
    }
}

fn serialize_rat<S: serde::Serializer>(r: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&rat_to_string(r))
}

/// Full report for `(L, σ)`; `roots` may be passed in when already known.
pub fn assemble_report(
    lattice_name: &str,
    l: &Lattice,
    sigma: &Isometry,
    roots: Option<&RootSystem>,
    ctx: &ReportContext,
) -> Result<OrbifoldReport, OrbifoldError> {
    let checks = Checks {
        isometry: sigma.preserves(l),
        order: sigma.order(P as u32) == Some(P as u32),
        stabilizes: sigma.rank() == l.rank(),
    };
    if !checks.isometry || !checks.stabilizes {
        return Err(OrbifoldError::NotIsometry(sigma.name.clone()));
    }
    if !checks.order {
        return Err(OrbifoldError::WrongOrder { name: sigma.name.clone(), found: sigma.order(12) });
    }
    let owned;
    let roots = match roots {
        Some(r) => r,
        None => {
            owned = enumerate_roots(l)?;
            &owned
        }
    };
    let td = twist_data(l, sigma)?;
    let fixed = fixed_weight_one_dim(roots, sigma)?;
    let twisted = twisted_weight_one_dim(&td)?;
    let total = BigInt::from(fixed) + BigInt::from(2) * &twisted;
    let candidates = ctx
        .queries
        .iter()
        .map(|q| liealg::candidate_report(q.dim, q.rank, q.hdvd, &q.reference))
        .collect::<Result<Vec<_>, _>>()?;
    let schellekens = match (&ctx.resolved, total.to_u64()) {
        (Some(t), Some(dim)) => {
            if t.dimension() != dim {
                return Err(OrbifoldError::Inconsistent(format!(
                    "resolved type {t} has dimension {} but dim V1 = {dim}",
                    t.dimension()
                )));
            }
            liealg::schellekens_match(dim, t)
        }
        _ => Vec::new(),
    };
    Ok(OrbifoldReport {
        lattice: lattice_name.to_string(),
        sigma: sigma.name.clone(),
        checks,
        eigen: td.eigen.as_array(),
        rho: td.rho.clone(),
        ranks: Ranks { N: td.n.rows(), M: td.m.rows(), R: td.r.rows() },
        indices: Indices { N_over_M: td.index_nm.clone(), N_over_R: td.index_nr.clone() },
        r_equals_m: td.r_equals_m(),
        dims: Dims { fixed, twisted_each: twisted, total },
        candidates,
        schellekens,
        resolved: ctx.resolved.clone(),
    })
}

/// Candidate queries and resolved weight-one type for each catalog construction.
pub fn construction_context(key: SigmaKey) -> ReportContext {
    let q = |dim, rank, hdvd, reference| CandidateQuery { dim, rank, hdvd, reference };
    let (queries, resolved) = match key {
        SigmaKey::Sigma1 => (vec![q(24, Some(6), 1, vec!["A2^3", "B2A2A1^2"])], "A2,3^6"),
        SigmaKey::Sigma2 => (vec![], "A2,3^6"),
        SigmaKey::Sigma3 => (vec![q(78, None, 4, vec!["E6", "A7A3", "C3^3A3"])], "E6,3G2,1^3"),
        SigmaKey::Sigma4 => (vec![q(35, None, 2, vec!["A5", "C3G2"])], "A5,3D4,3A1,1^3"),
        SigmaKey::Sigma5 => (vec![q(28, None, 2, vec!["D4", "G2^2"])], "A5,3D4,3A1,1^3"),
        SigmaKey::Sigma6 => (vec![q(42, None, 4, vec!["G2^3", "C3^2"])], "E6,3G2,1^3"),
    };
    ReportContext { queries, resolved: Some(resolved.parse().expect("static type string")) }
}

/// Report for a catalog construction, re-checking that `σ` stabilizes `L`.
pub fn catalog_report(key: SigmaKey) -> Result<OrbifoldReport, OrbifoldError> {
    let s = catalog::sigma(key)?;
    let n = catalog::niemeier(key.lattice())?;
    let restricted = catalog::restrict_to_lattice(key.as_str(), n, &s.on_q);
    let mut report = assemble_report(
        key.lattice().as_str(),
        &n.lattice,
        &s.isometry,
        Some(&n.roots),
        &construction_context(key),
    )?;
    report.sigma = key.as_str().to_string();
    report.checks.stabilizes = matches!(restricted, Ok(ref iso) if iso.matrix == s.isometry.matrix);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{component_auto, ComponentAutoKey, NiemeierKey};

    fn v(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn rho_values() {
        let e = |h0, h| EigenData { h0, h1: h, h2: h };
        assert_eq!(rho(&e(6, 9)), BigRational::one());
        assert_eq!(rho(&e(0, 12)), BigRational::new(4.into(), 3.into()));
        assert_eq!(rho(&e(24, 0)), BigRational::zero());
        assert!(rho_in_third_z(&rho(&e(18, 3))));
        assert!(!rho_in_third_z(&rho(&e(22, 1))));
    }

    #[test]
    fn identity_is_degenerate() {
        let n = catalog::niemeier(NiemeierKey::E6_4).unwrap();
        let id = Isometry::identity(24);
        assert_eq!(eigen_dims(&id).unwrap().as_array(), [24, 0, 0]);
        let td = twist_data(&n.lattice, &id).unwrap();
        assert_eq!((td.n.rows(), td.m.rows(), td.r.rows()), (0, 0, 0));
        assert_eq!(td.index_nr, BigInt::one());
        assert_eq!(fixed_weight_one_dim(&n.roots, &id).unwrap(), 24 + 288);
        assert!(matches!(twisted_weight_one_dim(&td), Err(OrbifoldError::Unsupported(_))));
    }

    #[test]
    fn phi_d4_on_component() {
        // φ on D4 alone: fixed-point-free, N = D4, M = (1 − φ)D4.
        let a = component_auto(ComponentAutoKey::PhiD4).unwrap();
        let l = &a.model.lattice;
        let td = twist_data(l, &a.isometry).unwrap();
        assert_eq!(td.eigen.as_array(), [0, 2, 2]);
        assert_eq!(td.n.rows(), 4);
        let det = IntMatrix::identity(4).sub(&a.isometry.matrix).unwrap().det().unwrap();
        assert_eq!(td.index_nm, det);
        assert_eq!(td.index_nr_by_cosets.as_ref(), Some(&td.index_nr));
    }

    #[test]
    fn commutator_is_alternating_on_basis() {
        let a = component_auto(ComponentAutoKey::PsiD4).unwrap();
        let l = &a.model.lattice;
        for i in 0..4 {
            for j in 0..4 {
                let mut ei = vec![0; 4];
                let mut ej = vec![0; 4];
                ei[i] = 1;
                ej[j] = 1;
                let x = commutator_value(l, &a.isometry, &v(&ei), &v(&ej)).unwrap();
                let y = commutator_value(l, &a.isometry, &v(&ej), &v(&ei)).unwrap();
                assert_eq!((x + y) % 6, 0);
            }
        }
        assert!(commutator_value(l, &a.isometry, &v(&[1, 0]), &v(&[1, 0, 0, 0])).is_err());
        assert!(commutator_is_alternating(l, &a.isometry).unwrap());
    }

    #[test]
    fn r_from_commutator_matrix() {
        // C = [[0, 2], [−2 ≡ 4, 0]]: x·C ≡ 0 needs 3 | x₀ and 3 | x₁.
        let c = IntMatrix::from_i64(&[&[0, 2], &[4, 0]]);
        let (r, index) = sublattice_r_in_n(&c);
        assert_eq!(index, BigInt::from(9));
        assert_eq!(hnf(&r), IntMatrix::from_i64(&[&[3, 0], &[0, 3]]));
        let m = IntMatrix::from_i64(&[&[3, 0], &[0, 3]]);
        assert_eq!(index_nr_by_cosets(&c, &m).unwrap(), Some(BigInt::from(9)));
        let m = IntMatrix::from_i64(&[&[9, 0], &[0, 3]]);
        assert_eq!(index_nr_by_cosets(&c, &m).unwrap(), Some(BigInt::from(9)));
    }

    #[test]
    fn non_isometry_rejected() {
        let n = catalog::niemeier(NiemeierKey::E6_4).unwrap();
        let mut m = IntMatrix::identity(24);
        m.set(0, 1, BigInt::one());
        let bad = Isometry::new("shear", m);
        let err = assemble_report("E6_4", &n.lattice, &bad, Some(&n.roots), &ReportContext::default());
        assert!(matches!(err, Err(OrbifoldError::NotIsometry(_))));
        let err = assemble_report("E6_4", &n.lattice, &Isometry::identity(24), Some(&n.roots), &ReportContext::default());
        assert!(matches!(err, Err(OrbifoldError::WrongOrder { found: Some(1), .. })));
    }
}
