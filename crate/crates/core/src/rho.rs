//! The local Galois datum `ρ̄` in normal form, its Serre weights, the maps
//! `θ`, `X(σ)`, `X(ρ̄)`, and the tame types `τ_w̃`.

use log::warn;

use crate::field::{Field, FieldElement};
use crate::weyl::{
    self, adm_set, classify_weight, ext_graph_from_label, star, AffineWeylElt, ExtGraphPoint, ExtendedWeylElt, Perm,
    SerreWeightLabel, Weight,
};
use crate::{Error, Result};

/// Smallest depth demanded in strict mode.
pub const STRICT_DEPTH: i64 = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// Requires `μ - η` to be 12-deep, i.e. `12 ≤ r_j ≤ p - 14`.
    Strict,
    /// Accepts any `0 ≤ r_j ≤ p - 2`.
    Permissive,
}

/// `ρ̄` through the parameters of its étale φ-module.
#[derive(Clone, Debug)]
pub struct RhoBar {
    pub p: u32,
    pub f: usize,
    pub field: Field,
    pub r: Vec<i64>,
    pub a: Vec<FieldElement>,
    pub alpha: Vec<FieldElement>,
    pub beta: Vec<FieldElement>,
    pub irreducible: bool,
    pub mode: Mode,
}

impl RhoBar {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        field: Field,
        r: Vec<i64>,
        a: Vec<FieldElement>,
        alpha: Vec<FieldElement>,
        beta: Vec<FieldElement>,
        irreducible: bool,
        mode: Mode,
    ) -> Result<Self> {
        let f = r.len();
        let p = field.p();
        if f == 0 {
            return Err(Error::Invalid("f must be positive".into()));
        }
        for (name, v) in [("a", &a), ("alpha", &alpha), ("beta", &beta)] {
            if v.len() != f {
                return Err(Error::Invalid(format!("{name} has length {} but f = {f}", v.len())));
            }
            if v.iter().any(|x| x.field() != &field) {
                return Err(Error::FieldMismatch);
            }
        }
        if alpha.iter().chain(&beta).any(|x| x.is_zero()) {
            return Err(Error::Invalid("alpha and beta must be nonzero".into()));
        }
        if irreducible && a.iter().any(|x| !x.is_zero()) {
            return Err(Error::Invalid("an irreducible rho has a_j = 0 for all j".into()));
        }
        if let Some(&bad) = r.iter().find(|&&x| !(0..=p as i64 - 2).contains(&x)) {
            return Err(Error::Invalid(format!("r_j = {bad} is outside [0, p-2]")));
        }
        let rho = RhoBar { p, f, field, r, a, alpha, beta, irreducible, mode };
        let deep = rho.r.iter().all(|&x| (STRICT_DEPTH..=p as i64 - 2 - STRICT_DEPTH).contains(&x));
        match mode {
            Mode::Strict if !deep => {
                return Err(Error::Precondition(format!(
                    "strict mode needs {STRICT_DEPTH} <= r_j <= p-{}, got r = {:?}",
                    STRICT_DEPTH + 2,
                    rho.r
                )))
            }
            Mode::Permissive if !deep => {
                warn!("r = {:?} is not {STRICT_DEPTH}-deep for p = {p}; the structural theorems assume more genericity", rho.r)
            }
            _ => {}
        }
        Ok(rho)
    }

    pub fn is_semisimple(&self) -> bool {
        self.a.iter().all(|x| x.is_zero())
    }

    pub fn is_reducible(&self) -> bool {
        !self.irreducible
    }

    /// `s_j`: the swap exactly at `j = 0` when irreducible.
    pub fn s(&self, j: usize) -> Perm {
        if self.irreducible && j == 0 {
            Perm::Swap
        } else {
            Perm::Identity
        }
    }

    /// `μ_j = (r_j + 2, 1)`.
    pub fn mu(&self) -> Weight {
        Weight::new(self.r.iter().map(|&r| (r + 2, 1)).collect())
    }

    /// `μ - η = (r_j + 1, 1)`.
    pub fn mu_minus_eta(&self) -> Weight {
        self.mu().sub(&Weight::eta(self.f))
    }

    /// Depth of `μ - η` in the lowest alcove.
    pub fn depth(&self) -> Option<i64> {
        classify_weight(&self.mu_minus_eta(), self.p).depth
    }

    /// `a_{f-1-j} = 0`, the slot paired with `b_j`.
    pub fn slot_free(&self, j: usize) -> bool {
        self.a[self.f - 1 - j].is_zero()
    }

    pub fn zero_count(&self) -> usize {
        self.a.iter().filter(|x| x.is_zero()).count()
    }

    pub fn semisimplification(&self) -> RhoBar {
        RhoBar { a: vec![self.field.zero(); self.f], ..self.clone() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct InertiaExponents {
    /// `f` when reducible, `2f` when irreducible.
    pub level: usize,
    pub exponent: i64,
    pub twist_exponent: i64,
}

pub fn inertia_exponents(rho: &RhoBar) -> InertiaExponents {
    let level = if rho.irreducible { 2 * rho.f } else { rho.f };
    let modulus = weyl::pow(rho.p, level) - 1;
    let exponent: i64 = rho.r.iter().enumerate().map(|(j, &r)| (r + 1) * weyl::pow(rho.p, j)).sum();
    InertiaExponents { level, exponent: exponent.rem_euclid(modulus), twist_exponent: 1 }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SerreWeightEntry {
    pub b: Vec<i64>,
    pub label: SerreWeightLabel,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SerreWeightSet {
    pub entries: Vec<SerreWeightEntry>,
}

impl SerreWeightSet {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn labels(&self) -> Vec<SerreWeightLabel> {
        self.entries.iter().map(|e| e.label.clone()).collect()
    }

    pub fn find(&self, b: &[i64]) -> Option<&SerreWeightEntry> {
        self.entries.iter().find(|e| e.b == b)
    }
}

/// The label of `μ - η`, the base point of the extension graph for `W(ρ̄)`.
pub fn base_label(rho: &RhoBar) -> SerreWeightLabel {
    SerreWeightLabel::from_weight(&rho.mu_minus_eta(), rho.p)
}

/// Cartesian product of per-slot option lists, first slot most significant.
pub(crate) fn product(options: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::with_capacity(options.len())];
    for opts in options {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                opts.iter().map(move |&x| {
                    let mut v = prefix.clone();
                    v.push(x);
                    v
                })
            })
            .collect();
    }
    out
}

/// Admissible `b`-vectors: `b_j ∈ {0, sgn(s_j)}` when `a_{f-1-j} = 0`,
/// otherwise `b_j = 0`.
pub fn b_vectors(rho: &RhoBar) -> Vec<Vec<i64>> {
    let options: Vec<Vec<i64>> =
        (0..rho.f).map(|j| if rho.slot_free(j) { vec![0, rho.s(j).sign()] } else { vec![0] }).collect();
    product(&options)
}

pub fn serre_weights(rho: &RhoBar) -> Result<SerreWeightSet> {
    let base = base_label(rho);
    let entries = b_vectors(rho)
        .into_iter()
        .map(|b| {
            let label = ext_graph_from_label(&base, &ExtGraphPoint::new(b.clone()))?;
            Ok(SerreWeightEntry { b, label })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SerreWeightSet { entries })
}

fn check_sigma(rho: &RhoBar, b: &[i64]) -> Result<()> {
    if b.len() != rho.f || !b_vectors(rho).iter().any(|x| x == b) {
        return Err(Error::Precondition(format!("b = {b:?} does not index a Serre weight of rho")));
    }
    Ok(())
}

/// `θ(σ)_{f-1-j} = t_(1,2)` if `b_j = 0`, else `t_(2,1)`.
pub fn theta(rho: &RhoBar, b: &[i64]) -> Result<Vec<AffineWeylElt>> {
    check_sigma(rho, b)?;
    let f = rho.f;
    let mut out = vec![AffineWeylElt::T12; f];
    for (j, &bj) in b.iter().enumerate() {
        out[f - 1 - j] = if bj == 0 { AffineWeylElt::T12 } else { AffineWeylElt::T21 };
    }
    Ok(out)
}

/// `X(σ)`: members of `Adm∨` avoiding `θ(σ)` in every slot.
pub fn x_sigma(rho: &RhoBar, b: &[i64]) -> Result<Vec<ExtendedWeylElt>> {
    let th = theta(rho, b)?;
    Ok(adm_set(rho.f).into_iter().filter(|w| w.comps.iter().zip(&th).all(|(c, t)| c != t)).collect())
}

/// `X(ρ̄)` by its closed form.
pub fn x_rho(rho: &RhoBar) -> Vec<ExtendedWeylElt> {
    adm_set(rho.f).into_iter().filter(|w| in_x_rho(rho, w)).collect()
}

pub fn in_x_rho(rho: &RhoBar, w: &ExtendedWeylElt) -> bool {
    w.f() == rho.f
        && w.comps.iter().all(|c| c.index().is_some())
        && w.comps.iter().zip(&rho.a).all(|(c, a)| a.is_zero() || *c != AffineWeylElt::T12)
}

/// `X(ρ̄)` as the union of the `X(σ)`, in `Adm∨` order.
pub fn x_rho_union(rho: &RhoBar) -> Result<Vec<ExtendedWeylElt>> {
    let mut members = std::collections::BTreeSet::new();
    for b in b_vectors(rho) {
        members.extend(x_sigma(rho, &b)?);
    }
    Ok(adm_set(rho.f).into_iter().filter(|w| members.contains(w)).collect())
}

/// `(s(τ), μ(τ))` for `τ_w̃`, with the decomposition `w̃* = t_ν w` it came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypePresentation {
    pub s_tau: Vec<Perm>,
    pub mu_tau: Weight,
    pub generic_depth: Option<i64>,
    pub w: Vec<Perm>,
    pub nu: Vec<(i64, i64)>,
}

impl TypePresentation {
    pub fn mu_tau_plus_eta(&self) -> Weight {
        self.mu_tau.add(&Weight::eta(self.mu_tau.f()))
    }
}

/// `w̃* = t_ν w`, componentwise.
pub fn decompose_star(w: &ExtendedWeylElt) -> (Vec<Perm>, Vec<(i64, i64)>) {
    star(w).comps.iter().map(|c| (c.perm, c.perm.apply(c.nu))).unzip()
}

fn finish(rho: &RhoBar, s_tau: Vec<Perm>, mu_plus_eta: Weight, w: Vec<Perm>, nu: Vec<(i64, i64)>) -> TypePresentation {
    let mu_tau = mu_plus_eta.sub(&Weight::eta(rho.f));
    let generic_depth = classify_weight(&mu_tau, rho.p).depth;
    TypePresentation { s_tau, mu_tau, generic_depth, w, nu }
}

/// Lowest alcove presentation of `τ_w̃`, reading `μ(τ) + η` off the two-row
/// table indexed by `(t_{ν_j} w_j, s_j)`.
pub fn tau_presentation(rho: &RhoBar, w_tilde: &ExtendedWeylElt) -> Result<TypePresentation> {
    if w_tilde.f() != rho.f {
        return Err(Error::Invalid(format!("w~ has {} components but f = {}", w_tilde.f(), rho.f)));
    }
    index_check(w_tilde)?;
    let (w, nu) = decompose_star(w_tilde);
    let s_tau: Vec<Perm> = (0..rho.f).map(|j| rho.s(j).compose(w[j].inverse())).collect();
    let mut pairs = Vec::with_capacity(rho.f);
    for j in 0..rho.f {
        let r = rho.r[j];
        let first_row = match (nu[j], w[j], rho.s(j)) {
            ((2, 1), Perm::Identity, s) => s == Perm::Identity,
            ((2, 1), Perm::Swap, s) => s == Perm::Swap,
            ((1, 2), Perm::Identity, s) => s == Perm::Swap,
            (nu_j, w_j, _) => {
                return Err(Error::Internal(format!("t_{nu_j:?} {w_j:?} is not covered by the type table")));
            }
        };
        pairs.push(if first_row { (r, 0) } else { (r + 1, -1) });
    }
    Ok(finish(rho, s_tau, Weight::new(pairs), w, nu))
}

/// `(s w⁻¹, μ - s w⁻¹(ν) - η)` evaluated directly from given `(w, ν)`.
pub fn tau_from_star_formula(rho: &RhoBar, w: &[Perm], nu: &[(i64, i64)]) -> TypePresentation {
    let mu = rho.mu();
    let mut s_tau = Vec::with_capacity(rho.f);
    let mut pairs = Vec::with_capacity(rho.f);
    for j in 0..rho.f {
        let st = rho.s(j).compose(w[j].inverse());
        let moved = st.apply(nu[j]);
        s_tau.push(st);
        pairs.push((mu.pairs[j].0 - moved.0, mu.pairs[j].1 - moved.1));
    }
    finish(rho, s_tau, Weight::new(pairs), w.to_vec(), nu.to_vec())
}

fn index_check(w: &ExtendedWeylElt) -> Result<()> {
    weyl::index_of(w).map(|_| ())
}
