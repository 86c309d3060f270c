//! The `F[ε]/(ε²)` tangent system deciding injectivity on reduced tangent
//! vectors for reducible non-semisimple `ρ̄`.
//!
//! Unknowns are the ε-coefficients of the deformation parameters, the `y_i`,
//! and the coefficients of `M_j ∈ M2(F[[v]])` truncated at degree `D`. The
//! rows compare coefficients of `v^e` (for `e ≤ D`) in
//!
//! `M_{j-1} Δ_j - Δ_j v^{μ'_j} φ(M_j) v^{-μ'_j} = R_j`,
//!
//! where `Δ_j = [[δ12, 0], [δ22, δ21]]`, `μ'_j = (r_j + 1, 0)`, `φ` is
//! `v ↦ v^p` on `F((v))`, and `R_j` collects the parameter terms. Further
//! rows impose the vanishing conditions forced by the choice of `ψ`, the
//! conventions `b21 = 0` / `b12 = 0` dictated by `θ(σ)`, and the link
//! between `M` and the `y_i`.

use std::collections::BTreeMap;

use crate::field::{Field, FieldElement};
use crate::laurent::{Coefficient, DualNumber, LaurentPoly};
use crate::linalg::{projected_rank, Rref, SparseVec};
use crate::mat2::Mat2;
use crate::rho::{theta, RhoBar};
use crate::weyl::AffineWeylElt;
use crate::{Error, Result};

/// Per-embedding parameters in storage order.
pub const PARAM_NAMES: [&str; 10] = ["b12", "c12", "d11", "c11", "c21", "b21", "c22", "x12", "x21", "x22"];

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Param {
    B12,
    C12,
    D11,
    C11,
    C21,
    B21,
    C22,
    X12,
    X21,
    X22,
}

const ENTRY_NAMES: [&str; 4] = ["m11", "m12", "m21", "m22"];

/// Why a row is present; lets callers drop individual constraints.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RowTag {
    Coefficient { j: usize, entry: (usize, usize), degree: i64 },
    X12Vanishes { j: usize },
    X21Vanishes { j: usize },
    Y4Vanishes,
    X22AtJ0Vanishes,
    B12Convention { j: usize },
    B21Convention { j: usize },
    YLink { i: usize },
}

#[derive(Clone, Debug)]
pub struct DeltaData {
    pub d12: Vec<FieldElement>,
    pub d21: Vec<FieldElement>,
    pub d22: Vec<FieldElement>,
    pub mu_prime: Vec<(i64, i64)>,
    pub j0: usize,
}

/// Read off `Δ_j` from `Mat(φ^(f-1-j)) = Δ_j v · v^{μ'_j}`.
pub fn delta_data(rho: &RhoBar) -> Result<DeltaData> {
    if rho.irreducible {
        return Err(Error::Precondition("the tangent system covers reducible rho only".into()));
    }
    let f = rho.f;
    let d22: Vec<FieldElement> = (0..f).map(|j| &rho.alpha[j] * &rho.a[f - 1 - j]).collect();
    let j0 = d22
        .iter()
        .position(|x| !x.is_zero())
        .ok_or_else(|| Error::Precondition("rho is semisimple; the tangent system needs a nonzero a_j".into()))?;
    Ok(DeltaData {
        d12: rho.alpha.clone(),
        d21: rho.beta.clone(),
        d22,
        mu_prime: rho.r.iter().map(|&r| (r + 1, 0)).collect(),
        j0,
    })
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct TangentOptions {
    /// Truncation degree `D`; defaults to `max(p, max r_j + 3)`.
    pub degree: Option<i64>,
    /// Lowest power of `v` allowed in `M_j` (0 for the `F[[v]]` ansatz).
    pub m_min_degree: i64,
    /// Omit the row `x22^(j0) = 0` (negative control).
    pub drop_x22_j0: bool,
}

pub fn default_degree(rho: &RhoBar) -> i64 {
    (rho.p as i64).max(rho.r.iter().max().unwrap() + 3)
}

#[derive(Clone, Debug)]
pub struct TangentSystem {
    pub field: Field,
    pub p: u32,
    pub f: usize,
    pub degree: i64,
    pub m_min_degree: i64,
    pub delta: DeltaData,
    pub sigma: Vec<i64>,
    pub theta: Vec<AffineWeylElt>,
    pub rows: Vec<SparseVec>,
    pub tags: Vec<RowTag>,
}

impl TangentSystem {
    pub fn n_deg(&self) -> usize {
        (self.degree - self.m_min_degree + 1) as usize
    }

    pub fn y(&self, i: usize) -> usize {
        i
    }

    pub fn param(&self, j: usize, k: Param) -> usize {
        4 + 10 * j + k as usize
    }

    /// Column of the `v^d` coefficient of entry `e` (0..4, row-major) of `M_j`.
    pub fn m(&self, j: usize, e: usize, d: i64) -> usize {
        4 + 10 * self.f + (j * 4 + e) * self.n_deg() + (d - self.m_min_degree) as usize
    }

    pub fn n_unknowns(&self) -> usize {
        4 + 10 * self.f + 4 * self.f * self.n_deg()
    }

    pub fn param_columns(&self) -> Vec<usize> {
        (0..4 + 10 * self.f).collect()
    }

    pub fn m_columns(&self) -> Vec<usize> {
        (4 + 10 * self.f..self.n_unknowns()).collect()
    }

    pub fn column_name(&self, c: usize) -> String {
        if c < 4 {
            return format!("y{}", c + 1);
        }
        if c < 4 + 10 * self.f {
            let j = (c - 4) / 10;
            return format!("{}^({j})", PARAM_NAMES[(c - 4) % 10]);
        }
        let rest = c - 4 - 10 * self.f;
        let (je, d) = (rest / self.n_deg(), rest % self.n_deg());
        format!("{}^({})[v^{}]", ENTRY_NAMES[je % 4], je / 4, d as i64 + self.m_min_degree)
    }

    /// `M_j` read from a solution vector.
    pub fn m_matrix(&self, x: &SparseVec, j: usize) -> Mat2 {
        let zero = self.field.zero();
        let entry = |e: usize| {
            LaurentPoly::from_terms(
                (self.m_min_degree..=self.degree).map(|d| (d, x.get(&self.m(j, e, d)).cloned().unwrap_or_else(|| zero.clone()))),
            )
        };
        Mat2::new(entry(0), entry(1), entry(2), entry(3))
    }

    pub fn value(&self, x: &SparseVec, c: usize) -> FieldElement {
        x.get(&c).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn without(&self, drop: impl Fn(&RowTag) -> bool) -> (Vec<SparseVec>, Vec<RowTag>) {
        self.rows.iter().zip(&self.tags).filter(|(_, t)| !drop(t)).map(|(r, t)| (r.clone(), *t)).unzip()
    }
}

fn add(row: &mut SparseVec, col: usize, c: &FieldElement) {
    if c.is_zero() {
        return;
    }
    let e = row.entry(col).or_insert_with(|| c.zero_like());
    *e = &*e + c;
    if e.is_zero() {
        row.remove(&col);
    }
}

/// Assemble the system for `ρ̄` and the Serre weight with `b`-vector `sigma`.
pub fn assemble_system(rho: &RhoBar, sigma: &[i64], opts: TangentOptions) -> Result<TangentSystem> {
    let delta = delta_data(rho)?;
    let th = theta(rho, sigma)?;
    let f = rho.f;
    let p = rho.p as i64;
    let max_r = *rho.r.iter().max().unwrap();
    let degree = opts.degree.unwrap_or_else(|| default_degree(rho));
    if degree < max_r + 3 {
        return Err(Error::Invalid(format!("truncation degree {degree} is below max r_j + 3 = {}", max_r + 3)));
    }
    if opts.m_min_degree > 0 {
        return Err(Error::Invalid("m_min_degree must be <= 0".into()));
    }
    let mut sys = TangentSystem {
        field: rho.field.clone(),
        p: rho.p,
        f,
        degree,
        m_min_degree: opts.m_min_degree,
        delta,
        sigma: sigma.to_vec(),
        theta: th,
        rows: Vec::new(),
        tags: Vec::new(),
    };
    let zero = rho.field.zero();
    let one = rho.field.one();
    let dmin = opts.m_min_degree;

    for j in 0..f {
        let jm = (j + f - 1) % f;
        let dl = [[sys.delta.d12[j].clone(), zero.clone()], [sys.delta.d22[j].clone(), sys.delta.d21[j].clone()]];
        let mu = [sys.delta.mu_prime[j].0, sys.delta.mu_prime[j].1];
        for i in 0..2 {
            for k in 0..2 {
                let mut by_degree: BTreeMap<i64, SparseVec> = BTreeMap::new();
                for l in 0..2 {
                    for d in dmin..=degree {
                        // (M_{j-1} Δ)_{ik}
                        add(by_degree.entry(d).or_default(), sys.m(jm, 2 * i + l, d), &dl[l][k]);
                        // (Δ v^{μ'} φ(M_j) v^{-μ'})_{ik}
                        let e = p * d + mu[l] - mu[k];
                        if e <= degree {
                            add(by_degree.entry(e).or_default(), sys.m(j, 2 * l + k, d), &-&dl[i][l]);
                        }
                    }
                }
                let rhs: &[(Param, i64)] = match (i, k) {
                    (0, 0) => &[(Param::X12, 0), (Param::C12, -1), (Param::B12, -2)],
                    (0, 1) => &[(Param::D11, -1), (Param::C11, -2)],
                    (1, 0) => &[(Param::X22, 0), (Param::C22, -1)],
                    _ => &[(Param::X21, 0), (Param::C21, -1), (Param::B21, -2)],
                };
                for &(param, e) in rhs {
                    add(by_degree.entry(e).or_default(), sys.param(j, param), &-&one);
                }
                for (e, row) in by_degree {
                    if !row.is_empty() {
                        sys.rows.push(row);
                        sys.tags.push(RowTag::Coefficient { j, entry: (i, k), degree: e });
                    }
                }
            }
        }
    }

    let mut units = Vec::new();
    for j in 0..f.saturating_sub(1) {
        units.push((sys.param(j, Param::X12), RowTag::X12Vanishes { j }));
        units.push((sys.param(j, Param::X21), RowTag::X21Vanishes { j }));
    }
    units.push((sys.y(3), RowTag::Y4Vanishes));
    if !opts.drop_x22_j0 {
        units.push((sys.param(sys.delta.j0, Param::X22), RowTag::X22AtJ0Vanishes));
    }
    for j in 0..f {
        units.push(match sys.theta[f - 1 - j] {
            AffineWeylElt::T12 => (sys.param(j, Param::B21), RowTag::B21Convention { j }),
            _ => (sys.param(j, Param::B12), RowTag::B12Convention { j }),
        });
    }
    for (col, tag) in units {
        sys.rows.push(SparseVec::from([(col, one.clone())]));
        sys.tags.push(tag);
    }
    // V*(ξ) = -Y for the endomorphism ξ = (M_j); on scalar M this reads y + m(0) = 0
    for i in 0..4 {
        let row = SparseVec::from([(sys.y(i), one.clone()), (sys.m(0, i, 0), one.clone())]);
        sys.rows.push(row);
        sys.tags.push(RowTag::YLink { i });
    }
    Ok(sys)
}

#[derive(Clone, Debug)]
pub struct ClaimSolution {
    /// Dimension of the projection of the full kernel onto the parameters
    /// and the `y_i`.
    pub param_kernel_dim: usize,
    /// Dimension of the `M`-part of the kernel of the φ-module equations
    /// (every row except the `y` links).
    pub m_kernel_dim: usize,
    pub injective: bool,
    pub rank: usize,
    pub kernel: Vec<SparseVec>,
    pub phi_kernel: Vec<SparseVec>,
}

pub fn solve_claim(sys: &TangentSystem) -> ClaimSolution {
    let n = sys.n_unknowns();
    let full = Rref::from_rows(n, &sys.rows);
    let kernel = full.kernel_basis(&sys.field);
    let param_kernel_dim = projected_rank(&kernel, &sys.param_columns());
    let (phi_rows, _) = sys.without(|t| matches!(t, RowTag::YLink { .. }));
    let phi = Rref::from_rows(n, &phi_rows);
    let phi_kernel = phi.kernel_basis(&sys.field);
    let m_kernel_dim = projected_rank(&phi_kernel, &sys.m_columns());
    ClaimSolution { param_kernel_dim, m_kernel_dim, injective: param_kernel_dim == 0, rank: full.rank(), kernel, phi_kernel }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConsequenceReport {
    pub vectors_checked: usize,
    /// `c12 = b12 = d11 = c11 = c21 = b21 = 0` for all `j`.
    pub six_params_vanish: bool,
    /// `c22 = 0` and `v | m21` for all `j`.
    pub m21_divisible_by_v: bool,
    pub m12_vanishes: bool,
    /// The three relations at `v = 0` between `m11`, `m22` and the `x`.
    pub c6_relations: bool,
    /// All `x` vanish and `M` is a constant scalar matrix.
    pub scalar_endomorphism: bool,
    /// The dual-number identity holds through degree `D`.
    pub dual_identity: bool,
}

impl ConsequenceReport {
    pub fn all_hold(&self) -> bool {
        self.six_params_vanish
            && self.m21_divisible_by_v
            && self.m12_vanishes
            && self.c6_relations
            && self.scalar_endomorphism
            && self.dual_identity
    }
}

/// Check the deductions of the injectivity argument on every basis vector
/// of the φ-module kernel.
pub fn consequence_report(sys: &TangentSystem, sol: &ClaimSolution) -> ConsequenceReport {
    let vectors = &sol.phi_kernel;
    let f = sys.f;
    let all = |pred: &dyn Fn(&SparseVec) -> bool| vectors.iter().all(pred);
    let val = |x: &SparseVec, c: usize| sys.value(x, c);
    let six_params_vanish = all(&|x| {
        (0..f).all(|j| {
            [Param::C12, Param::B12, Param::D11, Param::C11, Param::C21, Param::B21]
                .iter()
                .all(|&k| val(x, sys.param(j, k)).is_zero())
        })
    });
    let m21_divisible_by_v = all(&|x| {
        (0..f).all(|j| {
            val(x, sys.param(j, Param::C22)).is_zero() && (sys.m_min_degree..=0).all(|d| val(x, sys.m(j, 2, d)).is_zero())
        })
    });
    let m12_vanishes = all(&|x| (0..f).all(|j| (sys.m_min_degree..=sys.degree).all(|d| val(x, sys.m(j, 1, d)).is_zero())));
    let c6_relations = all(&|x| {
        (0..f).all(|j| {
            let jm = (j + f - 1) % f;
            let m11 = |jj| val(x, sys.m(jj, 0, 0));
            let m22 = |jj| val(x, sys.m(jj, 3, 0));
            &sys.delta.d12[j] * &(&m11(jm) - &m11(j)) == val(x, sys.param(j, Param::X12))
                && &sys.delta.d22[j] * &(&m22(jm) - &m11(j)) == val(x, sys.param(j, Param::X22))
                && &sys.delta.d21[j] * &(&m22(jm) - &m22(j)) == val(x, sys.param(j, Param::X21))
        })
    });
    let scalar_endomorphism = all(&|x| {
        let c = val(x, sys.m(0, 0, 0));
        (0..f).all(|j| {
            let m = sys.m_matrix(x, j);
            let xs = [Param::X12, Param::X21, Param::X22].iter().all(|&k| val(x, sys.param(j, k)).is_zero());
            xs && m == Mat2::identity(&sys.field.one()).scale(&LaurentPoly::constant(c.clone()))
        })
    });
    let dual_identity = all(&|x| dual_number_check(sys, x));
    ConsequenceReport {
        vectors_checked: vectors.len(),
        six_params_vanish,
        m21_divisible_by_v,
        m12_vanishes,
        c6_relations,
        scalar_endomorphism,
        dual_identity,
    }
}

/// Evaluate `(1 + εM_{j-1}) Δ v^{μ'} (1 - εφ(M_j))` against the deformed
/// matrix `(Δ + ε R_j) v^{μ'}` in `M2(F[ε]((v)))` and compare through
/// degree `D` after removing `v^{μ'}`.
pub fn dual_number_check(sys: &TangentSystem, x: &SparseVec) -> bool {
    let f = sys.f;
    let one = sys.field.one();
    let d_one = DualNumber::real(one.clone());
    let eps = |m: &Mat2| m.map_coeffs(|c| DualNumber::eps(c.clone()));
    let real = |c: &FieldElement| LaurentPoly::constant(DualNumber::real(c.clone()));
    let eps_mono = |c: FieldElement, d: i64| LaurentPoly::monomial(DualNumber::eps(c), d);
    let id = Mat2::identity(&d_one);
    (0..f).all(|j| {
        let jm = (j + f - 1) % f;
        let d = &sys.delta;
        let mu = d.mu_prime[j];
        let vmu = Mat2::v_power(&d_one, mu);
        let vmu_inv = Mat2::v_power(&d_one, (-mu.0, -mu.1));
        let delta = Mat2::new(real(&d.d12[j]), LaurentPoly::zero(), real(&d.d22[j]), real(&d.d21[j]));
        let left = &id + &eps(&sys.m_matrix(x, jm));
        let phi_m = eps(&sys.m_matrix(x, j).substitute_power(sys.p as i64));
        let lhs = &(&(&left * &delta) * &vmu) * &(&id - &phi_m);
        let pv = |k: Param| sys.value(x, sys.param(j, k));
        let r = |terms: &[(Param, i64)]| {
            terms.iter().fold(LaurentPoly::zero(), |acc, &(k, e)| &acc + &eps_mono(pv(k), e))
        };
        let rhs_delta = Mat2::new(
            &real(&d.d12[j]) + &r(&[(Param::X12, 0), (Param::C12, -1), (Param::B12, -2)]),
            r(&[(Param::D11, -1), (Param::C11, -2)]),
            &real(&d.d22[j]) + &r(&[(Param::X22, 0), (Param::C22, -1)]),
            &real(&d.d21[j]) + &r(&[(Param::X21, 0), (Param::C21, -1), (Param::B21, -2)]),
        );
        let rhs = &rhs_delta * &vmu;
        let diff = &(&lhs - &rhs) * &vmu_inv;
        diff.entries().iter().all(|e| e.truncate_below(sys.degree + 1).is_zero())
    })
}

/// Summary of one instance: the solution plus the stability comparison.
#[derive(Clone, Debug)]
pub struct ClaimCheck {
    pub degree: i64,
    pub param_kernel_dim: usize,
    pub m_kernel_dim: usize,
    pub injective: bool,
    pub stable: bool,
    pub lower_degree_agrees: bool,
    pub consequences: ConsequenceReport,
}

/// Solve at `D` and `D + p`, and at `D` with `M` allowed a `v^{-1}` term.
pub fn check_claim(rho: &RhoBar, sigma: &[i64]) -> Result<ClaimCheck> {
    let base = assemble_system(rho, sigma, TangentOptions::default())?;
    let sol = solve_claim(&base);
    let wider = assemble_system(rho, sigma, TangentOptions { degree: Some(base.degree + rho.p as i64), ..Default::default() })?;
    let wsol = solve_claim(&wider);
    let lower = assemble_system(rho, sigma, TangentOptions { m_min_degree: -1, ..Default::default() })?;
    let lsol = solve_claim(&lower);
    Ok(ClaimCheck {
        degree: base.degree,
        param_kernel_dim: sol.param_kernel_dim,
        m_kernel_dim: sol.m_kernel_dim,
        injective: sol.injective,
        stable: (sol.param_kernel_dim, sol.m_kernel_dim) == (wsol.param_kernel_dim, wsol.m_kernel_dim),
        lower_degree_agrees: lsol.param_kernel_dim == sol.param_kernel_dim,
        consequences: consequence_report(&base, &sol),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rho::{serre_weights, Mode};
    use crate::sample::{random_rho, RhoSpec};
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn rho(p: u32, r: &[i64], a: &[i64]) -> RhoBar {
        let field = Field::prime(p).unwrap();
        let f = r.len();
        RhoBar::new(
            field.clone(),
            r.to_vec(),
            a.iter().map(|&x| field.from_int(x)).collect(),
            (0..f).map(|j| field.from_int(3 + j as i64)).collect(),
            (0..f).map(|j| field.from_int(5 + 2 * j as i64)).collect(),
            false,
            Mode::Permissive,
        )
        .unwrap()
    }

    #[test]
    fn unknown_count() {
        let r = rho(31, &[13], &[4]);
        let sys = assemble_system(&r, &[0], TangentOptions { degree: Some(44), ..Default::default() }).unwrap();
        assert_eq!(sys.n_unknowns(), 4 + 10 + 4 * 45);
        let r = rho(37, &[13, 20], &[4, 0]);
        let sys = assemble_system(&r, &[0, 0], TangentOptions::default()).unwrap();
        assert_eq!(sys.degree, 37);
        assert_eq!(sys.n_unknowns(), 4 + 20 + 8 * 38);
        for c in 0..sys.n_unknowns() {
            let name = sys.column_name(c);
            assert!(!name.is_empty());
        }
        assert_eq!(sys.column_name(sys.m(1, 3, 5)), "m22^(1)[v^5]");
    }

    #[test]
    fn scope_errors() {
        let semisimple = rho(31, &[13], &[0]);
        assert!(matches!(assemble_system(&semisimple, &[0], TangentOptions::default()), Err(Error::Precondition(_))));
        let f = Field::prime(31).unwrap();
        let irr = RhoBar::new(f.clone(), vec![13], vec![f.zero()], vec![f.one()], vec![f.one()], true, Mode::Strict).unwrap();
        assert!(matches!(assemble_system(&irr, &[0], TangentOptions::default()), Err(Error::Precondition(_))));
        let r = rho(31, &[13], &[4]);
        assert!(matches!(
            assemble_system(&r, &[0], TangentOptions { degree: Some(10), ..Default::default() }),
            Err(Error::Invalid(_))
        ));
    }

    #[test]
    fn scalar_solution_satisfies_every_phi_row() {
        let r = rho(31, &[13, 17], &[4, 9]);
        let sys = assemble_system(&r, &[0, 0], TangentOptions::default()).unwrap();
        let c = sys.field.from_int(6);
        let mut x = SparseVec::new();
        for j in 0..sys.f {
            x.insert(sys.m(j, 0, 0), c.clone());
            x.insert(sys.m(j, 3, 0), c.clone());
        }
        for (row, tag) in sys.rows.iter().zip(&sys.tags) {
            let v = crate::linalg::dot(row, &x, &sys.field);
            assert_eq!(v.is_zero(), !matches!(tag, RowTag::YLink { i: 0 | 3 }), "{tag:?}");
        }
        assert!(dual_number_check(&sys, &x));
    }

    #[test]
    fn dual_check_detects_a_wrong_vector() {
        let r = rho(31, &[13], &[4]);
        let sys = assemble_system(&r, &[0], TangentOptions::default()).unwrap();
        let mut x = SparseVec::new();
        x.insert(sys.m(0, 0, 1), sys.field.one());
        assert!(!dual_number_check(&sys, &x));
    }

    #[test]
    fn f1_claim() {
        for a in 1..31 {
            let r = rho(31, &[13], &[a]);
            let sys = assemble_system(&r, &[0], TangentOptions::default()).unwrap();
            let sol = solve_claim(&sys);
            assert!(sol.injective);
            assert_eq!(sol.m_kernel_dim, 1);
            assert!(consequence_report(&sys, &sol).all_hold());
        }
    }

    #[test]
    fn f2_both_theta_patterns() {
        let r = rho(31, &[13, 16], &[5, 0]);
        let weights = serre_weights(&r).unwrap();
        assert_eq!(weights.len(), 2);
        for e in &weights.entries {
            let check = check_claim(&r, &e.b).unwrap();
            assert!(check.injective && check.stable && check.lower_degree_agrees);
            assert_eq!(check.m_kernel_dim, 1);
            assert!(check.consequences.all_hold());
        }
    }

    #[test]
    fn negative_control() {
        let r = rho(37, &[20, 11], &[0, 7]);
        let sys = assemble_system(&r, &[0, 0], TangentOptions { drop_x22_j0: true, ..Default::default() }).unwrap();
        let sol = solve_claim(&sys);
        assert!(!sol.injective);
        // the extra direction separates m11 from m22
        let has_split = sol.kernel.iter().any(|x| sys.value(x, sys.m(0, 0, 0)) != sys.value(x, sys.m(0, 3, 0)));
        assert!(has_split);
    }

    #[test]
    fn random_instances() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for i in 0..8 {
            let p = if i % 2 == 0 { 31 } else { 37 };
            let f = 1 + i % 2;
            let spec = RhoSpec::permissive(p, f, false).with_r_range(1, p as i64 - 2);
            let r = loop {
                let r = random_rho(&mut rng, &spec);
                if !r.is_semisimple() {
                    break r;
                }
            };
            let w = serre_weights(&r).unwrap();
            let sigma = &w.entries.choose(&mut rng).unwrap().b;
            let check = check_claim(&r, sigma).unwrap();
            assert!(check.injective && check.stable && check.consequences.all_hold(), "{r:?}");
            assert_eq!(check.m_kernel_dim, 1);
        }
    }
}
