//! Named constructions: root lattices with glue classes, component
//! automorphisms, the four Niemeier lattices and the six order-3 isometries.
//!
//! Vectors of a direct sum `Q` are written in *Q-coordinates*: the
//! concatenation of each component's simple-root coordinates. A Niemeier
//! lattice `L ⊂ Q*` stores its basis in Q-coordinates, and an isometry given
//! on `Q*` by a matrix `S` acts on `L` by `B·S·B⁻¹` (`B` the basis of `L`).

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;
use thiserror::Error;

use crate::exactmat::{rat, rat_int, rat_to_string, solve_exact, IntMatrix, RatMatrix};
use crate::lattice::{
    direct_sum, glue_extend, rat_rows, Isometry, Lattice, LatticeError, LatticeJson, LatticeVector,
};
use crate::roots::{
    enumerate_roots, format_type_multiset, reflection, DynkinType, Family, RootError, RootSystem,
};
use crate::terncode::{self, Permutation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("unsupported construction: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Root(#[from] RootError),
    #[error("{name}: induced map is not integral on the lattice")]
    NotIntegral { name: String },
    #[error("{name}: Gram form is not preserved")]
    NotIsometry { name: String },
    #[error("{name}: expected order {expected}, found {found:?}")]
    WrongOrder {
        name: String,
        expected: u32,
        found: Option<u32>,
    },
    #[error("{sigma} does not stabilize the lattice: basis vector {basis} maps to non-member {image}")]
    NotStabilized {
        sigma: String,
        basis: usize,
        image: String,
    },
    #[error("{key}: {what}")]
    CheckFailed { key: String, what: String },
}

/// A root lattice together with representatives `[0], [1], …` of `L*/L`.
#[derive(Debug, Clone)]
pub struct RootLatticeModel {
    pub dynkin: DynkinType,
    pub lattice: Lattice,
    /// Basis coordinates of `[ℓ]`, with `glue[0] = 0`.
    pub glue: Vec<LatticeVector>,
}

fn ambient_rows(rows: Vec<Vec<BigRational>>, cols: usize) -> RatMatrix {
    RatMatrix::from_rows(rows, cols).expect("rows have consistent length")
}

/// `Aₙ ⊂ Zⁿ⁺¹` with simple roots `e_{i−1} − e_i`; `Dₙ ⊂ Zⁿ` with simple roots
/// `e₁−e₂, …, e_{n−1}−eₙ, e_{n−1}+eₙ`; `E₆` by its Cartan matrix with the
/// chain `α₁ … α₅` and `α₆` attached to `α₃`.
pub fn build_root_lattice(family: Family, rank: usize) -> Result<RootLatticeModel, CatalogError> {
    let dynkin = DynkinType::new(family, rank);
    let unsupported = || CatalogError::Unsupported(format!("root lattice {dynkin}"));
    match (family, rank) {
        (Family::A, n) if n >= 1 => {
            let m = n + 1;
            let basis = ambient_rows(
                (0..n)
                    .map(|i| {
                        (0..m)
                            .map(|j| match j {
                                _ if j == i => rat_int(1),
                                _ if j == i + 1 => rat_int(-1),
                                _ => rat_int(0),
                            })
                            .collect()
                    })
                    .collect(),
                m,
            );
            let lattice = Lattice::from_euclidean_basis(basis)?.with_name(dynkin.to_string());
            let mut glue = Vec::new();
            for l in 0..m {
                // (1/(n+1)) (ℓ, …, ℓ, ℓ−n−1, …, ℓ−n−1) with ℓ trailing entries
                let v: Vec<BigRational> = (0..m)
                    .map(|j| {
                        let x = if j < m - l { l as i64 } else { l as i64 - m as i64 };
                        rat(x, m as i64)
                    })
                    .collect();
                glue.push(lattice.coords_of(&v)?);
            }
            Ok(RootLatticeModel { dynkin, lattice, glue })
        }
        (Family::D, n) if n >= 4 => {
            let mut rows = Vec::new();
            for i in 0..n - 1 {
                let mut r = vec![rat_int(0); n];
                r[i] = rat_int(1);
                r[i + 1] = rat_int(-1);
                rows.push(r);
            }
            let mut r = vec![rat_int(0); n];
            r[n - 2] = rat_int(1);
            r[n - 1] = rat_int(1);
            rows.push(r);
            let lattice = Lattice::from_euclidean_basis(ambient_rows(rows, n))?.with_name(dynkin.to_string());
            let half = rat(1, 2);
            let c1 = vec![half.clone(); n];
            let mut c2 = vec![rat_int(0); n];
            c2[n - 1] = rat_int(1);
            let mut c3 = c1.clone();
            c3[n - 1] = -half;
            let glue = [vec![rat_int(0); n], c1, c2, c3]
                .iter()
                .map(|v| lattice.coords_of(v))
                .collect::<Result<_, _>>()?;
            Ok(RootLatticeModel { dynkin, lattice, glue })
        }
        (Family::E, 6) => {
            let cartan = IntMatrix::from_i64(&[
                &[2, -1, 0, 0, 0, 0],
                &[-1, 2, -1, 0, 0, 0],
                &[0, -1, 2, -1, 0, -1],
                &[0, 0, -1, 2, -1, 0],
                &[0, 0, 0, -1, 2, 0],
                &[0, 0, -1, 0, 0, 2],
            ]);
            let lattice = Lattice::from_int_gram(&cartan)?.with_name("E6");
            let one = LatticeVector::new([1, -1, 0, 1, -1, 0].iter().map(|&x| rat(x, 3)).collect());
            let glue = vec![LatticeVector::zero(6), one.clone(), one.neg()];
            Ok(RootLatticeModel { dynkin, lattice, glue })
        }
        _ => Err(unsupported()),
    }
}

impl RootLatticeModel {
    pub fn rank(&self) -> usize {
        self.lattice.rank()
    }

    /// The class `ℓ` with `v − [ℓ] ∈ L`, if `v` lies in `L*`.
    pub fn class_of(&self, v: &LatticeVector) -> Option<usize> {
        self.glue.iter().position(|g| v.sub(g).is_integral())
    }

    /// Images of the classes `[0], [1], …` under an isometry of the component.
    pub fn glue_action(&self, auto: &Isometry) -> Option<Vec<usize>> {
        self.glue.iter().map(|g| self.class_of(&auto.apply(g))).collect()
    }
}

/// Isometry of an embedded lattice induced by an ambient linear map (`x ↦ x·P`).
pub fn induced_isometry(
    name: &str,
    l: &Lattice,
    ambient: &RatMatrix,
) -> Result<Isometry, CatalogError> {
    let e = l
        .embedding()
        .ok_or_else(|| CatalogError::Unsupported(format!("{name}: lattice has no ambient model")))?;
    let image = e.basis.mul(ambient).map_err(LatticeError::from)?;
    let m = solve_exact(&e.basis, &image).map_err(|_| CatalogError::NotIntegral { name: name.into() })?;
    let m = m.to_int().map_err(|_| CatalogError::NotIntegral { name: name.into() })?;
    let iso = Isometry::new(name, m);
    if !iso.preserves(l) {
        return Err(CatalogError::NotIsometry { name: name.into() });
    }
    Ok(iso)
}

/// Coordinate permutation `(x₀, …) ↦ (x_{src[0]}, x_{src[1]}, …)` as a row-action matrix.
fn coordinate_map(src: &[usize]) -> RatMatrix {
    let n = src.len();
    let mut p = RatMatrix::zeros(n, n);
    for (j, &s) in src.iter().enumerate() {
        p.set(s, j, rat_int(1));
    }
    p
}

fn check_order(iso: &Isometry, expected: u32) -> Result<(), CatalogError> {
    let found = iso.order(12);
    if found != Some(expected) {
        return Err(CatalogError::WrongOrder {
            name: iso.name.clone(),
            expected,
            found,
        });
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ComponentAutoKey {
    PhiA2,
    PhiD4,
    Omega,
    PsiD4,
    PsiA5,
    PhiE6,
}

impl ComponentAutoKey {
    pub const ALL: [ComponentAutoKey; 6] = [
        ComponentAutoKey::PhiA2,
        ComponentAutoKey::PhiD4,
        ComponentAutoKey::Omega,
        ComponentAutoKey::PsiD4,
        ComponentAutoKey::PsiA5,
        ComponentAutoKey::PhiE6,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            ComponentAutoKey::PhiA2 => "phi_A2",
            ComponentAutoKey::PhiD4 => "phi_D4",
            ComponentAutoKey::Omega => "omega_D4",
            ComponentAutoKey::PsiD4 => "psi_D4",
            ComponentAutoKey::PsiA5 => "psi_A5",
            ComponentAutoKey::PhiE6 => "phi_E6",
        }
    }

    pub fn component(&self) -> DynkinType {
        match self {
            ComponentAutoKey::PhiA2 => DynkinType::new(Family::A, 2),
            ComponentAutoKey::PhiD4 | ComponentAutoKey::Omega | ComponentAutoKey::PsiD4 => {
                DynkinType::new(Family::D, 4)
            }
            ComponentAutoKey::PsiA5 => DynkinType::new(Family::A, 5),
            ComponentAutoKey::PhiE6 => DynkinType::new(Family::E, 6),
        }
    }
}

/// A verified order-3 isometry of a single root lattice.
#[derive(Debug, Clone)]
pub struct ComponentAuto {
    pub key: ComponentAutoKey,
    pub model: RootLatticeModel,
    pub isometry: Isometry,
    /// Image of each glue class.
    pub glue_action: Vec<usize>,
}

pub fn build_component_auto(key: ComponentAutoKey) -> Result<ComponentAuto, CatalogError> {
    let t = key.component();
    let model = build_root_lattice(t.family, t.rank)?;
    let l = &model.lattice;
    let name = key.name();
    let isometry = match key {
        ComponentAutoKey::PhiA2 => induced_isometry(name, l, &coordinate_map(&[2, 0, 1]))?,
        ComponentAutoKey::PsiA5 => induced_isometry(name, l, &coordinate_map(&[2, 0, 1, 5, 3, 4]))?,
        ComponentAutoKey::PsiD4 => induced_isometry(name, l, &coordinate_map(&[1, 2, 0, 3]))?,
        ComponentAutoKey::PhiD4 => {
            // images of the standard basis vectors, one per row
            let p = RatMatrix::from_fractions(&[
                &[(-1, 2), (1, 2), (1, 2), (1, 2)],
                &[(-1, 2), (-1, 2), (1, 2), (-1, 2)],
                &[(-1, 2), (-1, 2), (-1, 2), (1, 2)],
                &[(-1, 2), (1, 2), (-1, 2), (-1, 2)],
            ]);
            induced_isometry(name, l, &p)?
        }
        ComponentAutoKey::Omega => {
            let from = RatMatrix::from_fractions(&[
                &[(1, 1), (-1, 1), (0, 1), (0, 1)],
                &[(0, 1), (0, 1), (1, 1), (-1, 1)],
                &[(0, 1), (0, 1), (1, 1), (1, 1)],
                &[(0, 1), (1, 1), (-1, 1), (0, 1)],
            ]);
            let to = RatMatrix::from_fractions(&[
                &[(0, 1), (0, 1), (1, 1), (-1, 1)],
                &[(0, 1), (0, 1), (1, 1), (1, 1)],
                &[(1, 1), (-1, 1), (0, 1), (0, 1)],
                &[(0, 1), (1, 1), (-1, 1), (0, 1)],
            ]);
            let p = from.inverse().and_then(|f| f.mul(&to)).map_err(LatticeError::from)?;
            induced_isometry(name, l, &p)?
        }
        ComponentAutoKey::PhiE6 => phi_e6(l)?,
    };
    check_order(&isometry, 3)?;
    let glue_action = model
        .glue_action(&isometry)
        .ok_or_else(|| CatalogError::CheckFailed {
            key: name.into(),
            what: "glue class image outside the dual".into(),
        })?;
    Ok(ComponentAuto {
        key,
        model,
        isometry,
        glue_action,
    })
}

/// `φ = r₁r₂r₄r₅r₆r₀` (rightmost applied first), `r₀` the reflection in the highest root.
fn phi_e6(l: &Lattice) -> Result<Isometry, CatalogError> {
    let rs = enumerate_roots(l)?;
    let theta = LatticeVector::from_ints(&rs.highest_root(0));
    let simple = |i: usize| {
        let mut v = vec![0i64; 6];
        v[i - 1] = 1;
        LatticeVector::from_ints(&v)
    };
    let r0 = reflection(l, &theta)?;
    let mut m = r0.matrix;
    for i in [6, 5, 4, 2, 1] {
        m = m.mul(&reflection(l, &simple(i))?.matrix).map_err(LatticeError::from)?;
    }
    Ok(Isometry::new("phi_E6", m))
}

/// Cached component automorphisms.
pub fn component_auto(key: ComponentAutoKey) -> Result<&'static ComponentAuto, CatalogError> {
    static CACHE: OnceLock<Vec<Result<ComponentAuto, CatalogError>>> = OnceLock::new();
    let all = CACHE.get_or_init(|| ComponentAutoKey::ALL.iter().map(|&k| build_component_auto(k)).collect());
    let i = ComponentAutoKey::ALL.iter().position(|&k| k == key).unwrap();
    all[i].as_ref().map_err(Clone::clone)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum NiemeierKey {
    #[serde(rename = "A2_12")]
    A2_12,
    #[serde(rename = "D4_6")]
    D4_6,
    #[serde(rename = "A5_4_D4")]
    A5_4D4,
    #[serde(rename = "E6_4")]
    E6_4,
}

impl NiemeierKey {
    pub const ALL: [NiemeierKey; 4] = [NiemeierKey::A2_12, NiemeierKey::D4_6, NiemeierKey::A5_4D4, NiemeierKey::E6_4];

    pub fn as_str(&self) -> &'static str {
        match self {
            NiemeierKey::A2_12 => "A2_12",
            NiemeierKey::D4_6 => "D4_6",
            NiemeierKey::A5_4D4 => "A5_4_D4",
            NiemeierKey::E6_4 => "E6_4",
        }
    }

    /// Root lattice components in coordinate order.
    pub fn components(&self) -> Vec<DynkinType> {
        let a = |n| DynkinType::new(Family::A, n);
        let d4 = DynkinType::new(Family::D, 4);
        match self {
            NiemeierKey::A2_12 => vec![a(2); 12],
            NiemeierKey::D4_6 => vec![d4; 6],
            NiemeierKey::A5_4D4 => vec![a(5), a(5), a(5), a(5), d4],
            NiemeierKey::E6_4 => vec![DynkinType::new(Family::E, 6); 4],
        }
    }

    pub fn root_type(&self) -> String {
        format_type_multiset(&self.components())
    }

    /// Glue words, one class digit per component.
    pub fn glue_words(&self) -> Vec<String> {
        let w = |s: &[&str]| s.iter().map(|x| x.to_string()).collect();
        match self {
            NiemeierKey::A2_12 => terncode::golay_generators().iter().map(|g| terncode::word_string(g)).collect(),
            NiemeierKey::D4_6 => w(&["111111", "222222", "002332", "023320", "033202", "032023", "020233"]),
            NiemeierKey::A5_4D4 => w(&["33001", "30302", "30033", "20240", "22400", "24020"]),
            NiemeierKey::E6_4 => w(&["1012", "1120", "1201"]),
        }
    }

    pub fn description(&self) -> &'static str {
        match self {
            NiemeierKey::A2_12 => "A2^12 glued by the ternary Golay code C12 (coordinates ∞,0,…,10)",
            NiemeierKey::D4_6 => "D4^6 glued by [111111], [222222] and the cyclic orbit [0(02332)]",
            NiemeierKey::A5_4D4 => "A5^4 D4 glued by [33001], [30302], [30033] and [2(024)0]",
            NiemeierKey::E6_4 => "E6^4 glued by [1(012)]",
        }
    }
}

impl fmt::Display for NiemeierKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for NiemeierKey {
    type Err = CatalogError;
    fn from_str(s: &str) -> Result<Self, CatalogError> {
        NiemeierKey::ALL
            .into_iter()
            .find(|k| k.as_str().eq_ignore_ascii_case(s) || k.as_str().replace('_', "").eq_ignore_ascii_case(&s.replace('_', "")))
            .ok_or_else(|| CatalogError::Unsupported(format!("unknown lattice key {s:?}")))
    }
}

/// A Niemeier lattice `L ⊂ Q*` with its classified root system.
#[derive(Debug, Clone)]
pub struct Niemeier {
    pub key: NiemeierKey,
    pub components: Vec<RootLatticeModel>,
    /// The root lattice `Q`, in Q-coordinates (identity basis).
    pub q: Lattice,
    /// `L`, with embedding basis in Q-coordinates.
    pub lattice: Lattice,
    /// `[L : Q]`.
    pub index: BigInt,
    pub roots: RootSystem,
}

impl Niemeier {
    /// Offset of each component inside Q-coordinates.
    pub fn offsets(&self) -> Vec<usize> {
        let mut o = Vec::with_capacity(self.components.len());
        let mut acc = 0;
        for c in &self.components {
            o.push(acc);
            acc += c.rank();
        }
        o
    }

    /// Basis of `L` in Q-coordinates.
    pub fn basis(&self) -> &RatMatrix {
        &self.lattice.embedding().expect("glued lattices carry their basis").basis
    }

    /// Q-coordinates of a glue word.
    pub fn glue_vector(&self, word: &str) -> Result<LatticeVector, CatalogError> {
        glue_vector(&self.components, word)
    }
}

fn glue_vector(components: &[RootLatticeModel], word: &str) -> Result<LatticeVector, CatalogError> {
    let digits: Vec<usize> = word
        .chars()
        .map(|c| c.to_digit(10).map(|d| d as usize))
        .collect::<Option<_>>()
        .ok_or_else(|| CatalogError::Unsupported(format!("bad glue word {word:?}")))?;
    if digits.len() != components.len() {
        return Err(CatalogError::Unsupported(format!("glue word {word:?} has wrong length")));
    }
    let parts: Vec<LatticeVector> = digits
        .iter()
        .zip(components)
        .map(|(&d, c)| {
            c.glue
                .get(d)
                .cloned()
                .ok_or_else(|| CatalogError::Unsupported(format!("class [{d}] of {}", c.dynkin)))
        })
        .collect::<Result<_, _>>()?;
    Ok(LatticeVector::concat(&parts))
}

/// Builds `L` and checks it is even, unimodular, of rank 24, with the expected root system.
pub fn build_niemeier(key: NiemeierKey) -> Result<Niemeier, CatalogError> {
    build_niemeier_with_glue(key, &key.glue_words())
}

/// Same as [`build_niemeier`] with explicit glue words (used to exercise failure paths).
pub fn build_niemeier_with_glue(key: NiemeierKey, words: &[String]) -> Result<Niemeier, CatalogError> {
    let components: Vec<RootLatticeModel> = key
        .components()
        .iter()
        .map(|t| build_root_lattice(t.family, t.rank))
        .collect::<Result<_, _>>()?;
    let q = direct_sum(&components.iter().map(|c| c.lattice.clone()).collect::<Vec<_>>());
    let q = Lattice::from_gram(q.gram().clone())?.with_name(key.root_type());
    let glue: Vec<LatticeVector> = words
        .iter()
        .map(|w| glue_vector(&components, w))
        .collect::<Result<_, _>>()?;
    let ext = glue_extend(&q, &glue)?;
    let lattice = ext.lattice.with_name(format!("Ni({})", key.root_type()));
    let fail = |what: String| CatalogError::CheckFailed {
        key: key.as_str().into(),
        what,
    };
    if lattice.rank() != 24 || !lattice.is_even() || !lattice.is_unimodular() {
        return Err(fail(format!(
            "not an even unimodular rank-24 lattice (even {}, det {})",
            lattice.is_even(),
            rat_to_string(&lattice.det())
        )));
    }
    let roots = enumerate_roots(&lattice)?;
    let got = format_type_multiset(&roots.types());
    if got != key.root_type() {
        return Err(fail(format!("root system {got}, expected {}", key.root_type())));
    }
    Ok(Niemeier {
        key,
        components,
        q,
        lattice,
        index: ext.index,
        roots,
    })
}

/// Cached Niemeier lattices.
pub fn niemeier(key: NiemeierKey) -> Result<&'static Niemeier, CatalogError> {
    static CACHE: [OnceLock<Result<Niemeier, CatalogError>>; 4] =
        [OnceLock::new(), OnceLock::new(), OnceLock::new(), OnceLock::new()];
    let i = NiemeierKey::ALL.iter().position(|&k| k == key).unwrap();
    CACHE[i].get_or_init(|| build_niemeier(key)).as_ref().map_err(Clone::clone)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum SigmaKey {
    #[serde(rename = "sigma1")]
    Sigma1,
    #[serde(rename = "sigma2")]
    Sigma2,
    #[serde(rename = "sigma3")]
    Sigma3,
    #[serde(rename = "sigma4")]
    Sigma4,
    #[serde(rename = "sigma5")]
    Sigma5,
    #[serde(rename = "sigma6")]
    Sigma6,
}

impl SigmaKey {
    pub const ALL: [SigmaKey; 6] = [
        SigmaKey::Sigma1,
        SigmaKey::Sigma2,
        SigmaKey::Sigma3,
        SigmaKey::Sigma4,
        SigmaKey::Sigma5,
        SigmaKey::Sigma6,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            SigmaKey::Sigma1 => "sigma1",
            SigmaKey::Sigma2 => "sigma2",
            SigmaKey::Sigma3 => "sigma3",
            SigmaKey::Sigma4 => "sigma4",
            SigmaKey::Sigma5 => "sigma5",
            SigmaKey::Sigma6 => "sigma6",
        }
    }

    pub fn lattice(&self) -> NiemeierKey {
        match self {
            SigmaKey::Sigma1 => NiemeierKey::A2_12,
            SigmaKey::Sigma2 | SigmaKey::Sigma3 | SigmaKey::Sigma4 => NiemeierKey::D4_6,
            SigmaKey::Sigma5 => NiemeierKey::A5_4D4,
            SigmaKey::Sigma6 => NiemeierKey::E6_4,
        }
    }

    pub fn description(&self) -> &'static str {
        match self {
            SigmaKey::Sigma1 => "σ′∘σ″: phi_A2 at ∞,4,7 then the block permutation (∞47 | 036 | 158 | 2X9) → (∞47 | 2X9 | 036 | 158)",
            SigmaKey::Sigma2 => "phi_D4 on all six components",
            SigmaKey::Sigma3 => "(φ, φ, φ, ω, ω, ω) with φ = phi_D4, ω = omega_D4",
            SigmaKey::Sigma4 => "(ψγ1, φγ2, φ⁻¹γ3, γ6, φ⁻¹γ4, φγ5) with ψ = psi_D4, φ = phi_D4",
            SigmaKey::Sigma5 => "(ψγ1, γ4, γ2, γ3, φγ5) with ψ = psi_A5, φ = phi_D4",
            SigmaKey::Sigma6 => "(φγ1, γ4, γ2, γ3) with φ = phi_E6 = r1 r2 r4 r5 r6 r0",
        }
    }
}

impl fmt::Display for SigmaKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SigmaKey {
    type Err = CatalogError;
    fn from_str(s: &str) -> Result<Self, CatalogError> {
        SigmaKey::ALL
            .into_iter()
            .find(|k| k.as_str().eq_ignore_ascii_case(s) || k.as_str()[5..] == *s)
            .ok_or_else(|| CatalogError::Unsupported(format!("unknown sigma key {s:?}")))
    }
}

/// How the block display of `σ′` is read.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum BlockReading {
    /// Output slot `k` receives the block printed at position `k` of the image.
    Forward,
    /// Input slot `k` is sent to the slot where its block is printed in the image.
    Inverse,
}

/// Audit data for `σ₁`'s assembly in the rearranged view.
#[derive(Debug, Clone, Serialize)]
pub struct Sigma1Audit {
    pub reading: BlockReading,
    /// The rearranged view, as labels of Ω.
    pub view: Vec<String>,
    /// Induced permutation of Ω in cycle notation.
    pub permutation: String,
    /// Readings tried, with the reason a rejected one failed.
    pub rejected: Vec<(BlockReading, String)>,
}

/// A verified order-3 isometry of a catalog Niemeier lattice.
#[derive(Debug, Clone)]
pub struct Sigma {
    pub key: SigmaKey,
    /// Matrix on Q-coordinates (acts on `Q*`).
    pub on_q: IntMatrix,
    /// Matrix on the basis of `L`.
    pub isometry: Isometry,
    pub audit: Option<Sigma1Audit>,
}

/// Block matrix on Q-coordinates: output block `j` is `blocks[j].1` applied to input block `blocks[j].0`.
pub fn assemble_blocks(ranks: &[usize], blocks: &[(usize, IntMatrix)]) -> Result<IntMatrix, CatalogError> {
    let mut offsets = vec![0];
    for r in ranks {
        offsets.push(offsets.last().unwrap() + r);
    }
    let n = *offsets.last().unwrap();
    let mut seen = vec![false; ranks.len()];
    let mut s = IntMatrix::zeros(n, n);
    for (dst, (src, m)) in blocks.iter().enumerate() {
        if *src >= ranks.len() || std::mem::replace(&mut seen[*src], true) {
            return Err(CatalogError::Unsupported("block map is not a permutation".into()));
        }
        if m.rows() != ranks[*src] || m.cols() != ranks[dst] {
            return Err(CatalogError::Unsupported("block sizes do not match".into()));
        }
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                s.set(offsets[*src] + i, offsets[dst] + j, m.get(i, j).clone());
            }
        }
    }
    Ok(s)
}

/// The matrix of `S` on the basis of `L`, or the first basis vector whose image leaves `L`.
pub fn restrict_to_lattice(name: &str, n: &Niemeier, s: &IntMatrix) -> Result<Isometry, CatalogError> {
    let b = n.basis();
    let image = b.mul(&s.to_rat()).map_err(LatticeError::from)?;
    let coords = solve_exact(b, &image).map_err(LatticeError::from)?;
    for i in 0..coords.rows() {
        if coords.row(i).iter().any(|x| !x.is_integer()) {
            let img: Vec<String> = image.row(i).iter().map(rat_to_string).collect();
            return Err(CatalogError::NotStabilized {
                sigma: name.into(),
                basis: i,
                image: format!("({})", img.join(", ")),
            });
        }
    }
    let iso = Isometry::new(name, coords.to_int().map_err(LatticeError::from)?);
    if !iso.preserves(&n.lattice) {
        return Err(CatalogError::NotIsometry { name: name.into() });
    }
    Ok(iso)
}

fn auto_matrix(key: ComponentAutoKey) -> Result<IntMatrix, CatalogError> {
    Ok(component_auto(key)?.isometry.matrix.clone())
}

/// `σ₁` on Q-coordinates from a point permutation `g` of Ω: `σ₁(x)_{g(i)} = Φᵢ(xᵢ)`.
fn sigma1_on_q(g: &Permutation) -> Result<IntMatrix, CatalogError> {
    let phi = auto_matrix(ComponentAutoKey::PhiA2)?;
    let id = IntMatrix::identity(2);
    let twisted: Vec<usize> = ["∞", "4", "7"].iter().map(|s| terncode::position(s).unwrap()).collect();
    let inv = g.inverse();
    let blocks: Vec<(usize, IntMatrix)> = (0..12)
        .map(|dst| {
            let src = inv.image(dst);
            (src, if twisted.contains(&src) { phi.clone() } else { id.clone() })
        })
        .collect();
    assemble_blocks(&[2; 12], &blocks)
}

/// Point permutation of Ω encoded by the block display under a given reading.
pub fn sigma1_block_permutation(reading: BlockReading) -> Permutation {
    let view = terncode::rearranged_view();
    let block = |k: usize| &view[3 * k..3 * k + 3];
    // image display (∞47 | 2X9 | 036 | 158) lists input blocks 0, 3, 1, 2
    let shown = [0usize, 3, 1, 2];
    let mut map = vec![0usize; 12];
    for (slot, &b) in shown.iter().enumerate() {
        for t in 0..3 {
            match reading {
                BlockReading::Forward => map[block(b)[t]] = block(slot)[t],
                BlockReading::Inverse => map[block(slot)[t]] = block(b)[t],
            }
        }
    }
    Permutation::new(map).expect("blocks partition Ω")
}

fn build_sigma1(n: &Niemeier) -> Result<Sigma, CatalogError> {
    let expected = Permutation::from_cycles(terncode::SIGMA_PRIME_CYCLES).expect("valid literal");
    let mut rejected = Vec::new();
    for reading in [BlockReading::Forward, BlockReading::Inverse] {
        let g = sigma1_block_permutation(reading);
        if g != expected || g != terncode::sigma_prime() {
            rejected.push((reading, format!("induces {g}, not {}", terncode::SIGMA_PRIME_CYCLES)));
            continue;
        }
        let on_q = sigma1_on_q(&g)?;
        let iso = match restrict_to_lattice("sigma1", n, &on_q) {
            Ok(i) => i,
            Err(e) => {
                rejected.push((reading, e.to_string()));
                continue;
            }
        };
        if iso.order(12) != Some(3) {
            rejected.push((reading, format!("order {:?}", iso.order(12))));
            continue;
        }
        let audit = Sigma1Audit {
            reading,
            view: terncode::rearranged_view().iter().map(|&p| terncode::label(p)).collect(),
            permutation: g.to_string(),
            rejected,
        };
        return Ok(Sigma {
            key: SigmaKey::Sigma1,
            on_q,
            isometry: iso,
            audit: Some(audit),
        });
    }
    Err(CatalogError::CheckFailed {
        key: "sigma1".into(),
        what: format!("no reading of the block display passes: {rejected:?}"),
    })
}

pub fn build_sigma(key: SigmaKey) -> Result<Sigma, CatalogError> {
    let n = niemeier(key.lattice())?;
    if key == SigmaKey::Sigma1 {
        let s = build_sigma1(n)?;
        check_order(&s.isometry, 3)?;
        return Ok(s);
    }
    let phi = auto_matrix(ComponentAutoKey::PhiD4)?;
    let phi_inv = phi.unimodular_inverse().map_err(LatticeError::from)?;
    let id4 = IntMatrix::identity(4);
    let blocks: Vec<(usize, IntMatrix)> = match key {
        SigmaKey::Sigma2 => (0..6).map(|i| (i, phi.clone())).collect(),
        SigmaKey::Sigma3 => {
            let omega = auto_matrix(ComponentAutoKey::Omega)?;
            (0..6).map(|i| (i, if i < 3 { phi.clone() } else { omega.clone() })).collect()
        }
        SigmaKey::Sigma4 => vec![
            (0, auto_matrix(ComponentAutoKey::PsiD4)?),
            (1, phi.clone()),
            (2, phi_inv.clone()),
            (5, id4),
            (3, phi_inv),
            (4, phi),
        ],
        SigmaKey::Sigma5 => {
            let id5 = IntMatrix::identity(5);
            vec![
                (0, auto_matrix(ComponentAutoKey::PsiA5)?),
                (3, id5.clone()),
                (1, id5.clone()),
                (2, id5),
                (4, phi),
            ]
        }
        SigmaKey::Sigma6 => {
            let id6 = IntMatrix::identity(6);
            vec![
                (0, auto_matrix(ComponentAutoKey::PhiE6)?),
                (3, id6.clone()),
                (1, id6.clone()),
                (2, id6),
            ]
        }
        SigmaKey::Sigma1 => unreachable!(),
    };
    let ranks: Vec<usize> = n.components.iter().map(RootLatticeModel::rank).collect();
    let on_q = assemble_blocks(&ranks, &blocks)?;
    let q_iso = Isometry::new(key.as_str(), on_q.clone());
    if !q_iso.preserves(&n.q) {
        return Err(CatalogError::NotIsometry { name: key.as_str().into() });
    }
    let isometry = restrict_to_lattice(key.as_str(), n, &on_q)?;
    check_order(&isometry, 3)?;
    Ok(Sigma {
        key,
        on_q,
        isometry,
        audit: None,
    })
}

/// Cached σ's.
pub fn sigma(key: SigmaKey) -> Result<&'static Sigma, CatalogError> {
    static CACHE: [OnceLock<Result<Sigma, CatalogError>>; 6] = [
        OnceLock::new(),
        OnceLock::new(),
        OnceLock::new(),
        OnceLock::new(),
        OnceLock::new(),
        OnceLock::new(),
    ];
    let i = SigmaKey::ALL.iter().position(|&k| k == key).unwrap();
    CACHE[i].get_or_init(|| build_sigma(key)).as_ref().map_err(Clone::clone)
}

#[derive(Debug, Clone, Serialize)]
pub struct CatalogEntry {
    pub key: String,
    pub kind: &'static str,
    pub lattice: String,
    pub description: String,
}

/// Every catalog key with a short description of its construction.
pub fn list() -> Vec<CatalogEntry> {
    let mut out: Vec<CatalogEntry> = NiemeierKey::ALL
        .iter()
        .map(|k| CatalogEntry {
            key: k.as_str().into(),
            kind: "lattice",
            lattice: k.as_str().into(),
            description: k.description().into(),
        })
        .collect();
    out.extend(SigmaKey::ALL.iter().map(|k| CatalogEntry {
        key: k.as_str().into(),
        kind: "isometry",
        lattice: k.lattice().as_str().into(),
        description: k.description().into(),
    }));
    out.extend(ComponentAutoKey::ALL.iter().map(|k| CatalogEntry {
        key: k.name().into(),
        kind: "component",
        lattice: k.component().to_string(),
        description: "order-3 isometry of a single root lattice".into(),
    }));
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct IsometryJson {
    pub name: String,
    pub lattice: String,
    pub order: Option<u32>,
    pub fixed_rank: usize,
    pub matrix: Vec<Vec<String>>,
    pub on_q: Vec<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub audit: Option<Sigma1Audit>,
}

impl Sigma {
    pub fn to_json(&self) -> IsometryJson {
        IsometryJson {
            name: self.key.as_str().into(),
            lattice: self.key.lattice().as_str().into(),
            order: self.isometry.order(12),
            fixed_rank: self.isometry.fixed_rank(),
            matrix: rat_rows(&self.isometry.matrix.to_rat()),
            on_q: rat_rows(&self.on_q.to_rat()),
            audit: self.audit.clone(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct NiemeierJson {
    pub key: String,
    pub lattice: LatticeJson,
    pub root_type: String,
    #[serde(serialize_with = "crate::json::bigint")]
    pub index_over_root_lattice: BigInt,
    pub glue: Vec<String>,
    pub roots: crate::roots::RootSystemJson,
}

impl Niemeier {
    pub fn to_json(&self) -> NiemeierJson {
        NiemeierJson {
            key: self.key.as_str().into(),
            lattice: self.lattice.to_json(),
            root_type: format_type_multiset(&self.roots.types()),
            index_over_root_lattice: self.index.clone(),
            glue: self.key.glue_words(),
            roots: self.roots.to_json(),
        }
    }
}

/// Is `v` (Q-coordinates) in `L`?
pub fn contains_q_vector(n: &Niemeier, v: &LatticeVector) -> bool {
    n.lattice.member(&v.coords).unwrap_or(false)
}
