use modp_kisin::d0::{d0_checks, JhReading};
use modp_kisin::kisin::{kisin_matrices, recovery_holds};
use modp_kisin::oracle::{random_target, to_mat2, CosetOracle};
use modp_kisin::rho::{
    b_vectors, decompose_star, inertia_exponents, serre_weights, tau_from_star_formula, tau_presentation, theta,
    x_rho, x_rho_union, x_sigma, STRICT_DEPTH,
};
use modp_kisin::sample::{random_rho, RhoSpec};
use modp_kisin::shape::{gauge_check, height_check, shape_of, HeightMode};
use modp_kisin::sweep::{par_map, Execution};
use modp_kisin::tangent::{assemble_system, consequence_report, solve_claim, TangentOptions};
use modp_kisin::weyl::{adm_set, star};
use modp_kisin::{AffineWeylElt, ExtendedWeylElt, Field, LaurentPoly, Mat2, RhoBar};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::config::FieldEnc;
use crate::report::*;
use crate::CliError;

pub fn describe(rho: &RhoBar) -> Describe {
    let ie = inertia_exponents(rho);
    let depth = rho.depth();
    Describe {
        reducible: rho.is_reducible(),
        semisimple: rho.is_semisimple(),
        zero_count: rho.zero_count(),
        level: ie.level,
        exponent: ie.exponent,
        twist_exponent: ie.twist_exponent,
        mu_minus_eta: rho.mu_minus_eta().pairs,
        depth,
        strict_deep: depth.is_some_and(|d| d >= STRICT_DEPTH),
    }
}

fn sigmas(rho: &RhoBar, sigma: Option<&Vec<i64>>) -> Vec<Vec<i64>> {
    match sigma {
        Some(b) => vec![b.clone()],
        None => b_vectors(rho),
    }
}

pub fn weights(rho: &RhoBar) -> Result<Vec<WeightDto>, CliError> {
    Ok(serre_weights(rho)?.entries.iter().map(|e| WeightDto { b: e.b.clone(), label: (&e.label).into() }).collect())
}

pub fn adm(f: usize) -> Vec<AdmDto> {
    adm_set(f).iter().map(|w| AdmDto { element: w.into(), star: star(w).to_string() }).collect()
}

pub fn xset(rho: &RhoBar, sigma: Option<&Vec<i64>>) -> Result<XSet, CliError> {
    let x = x_rho(rho);
    let x_sigma = sigmas(rho, sigma)
        .into_iter()
        .map(|b| {
            Ok(XSigmaDto {
                theta: theta(rho, &b)?.iter().map(ToString::to_string).collect(),
                members: x_sigma(rho, &b)?.iter().map(Into::into).collect(),
                b,
            })
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    Ok(XSet { union_matches: x_rho_union(rho)? == x, x_rho: x.iter().map(Into::into).collect(), x_sigma })
}

fn selected(all: Vec<ExtendedWeylElt>, w_tilde: Option<&ExtendedWeylElt>) -> Vec<ExtendedWeylElt> {
    match w_tilde {
        Some(w) => vec![w.clone()],
        None => all,
    }
}

pub fn types(rho: &RhoBar, w_tilde: Option<&ExtendedWeylElt>) -> Result<Vec<TypeDto>, CliError> {
    selected(adm_set(rho.f), w_tilde)
        .iter()
        .map(|w| {
            let t = tau_presentation(rho, w)?;
            Ok(TypeDto {
                w_tilde: w.into(),
                s_tau: t.s_tau.iter().map(|&s| perm_name(s)).collect(),
                mu_tau: t.mu_tau.pairs.clone(),
                depth: t.generic_depth,
            })
        })
        .collect()
}

pub fn kisin(rho: &RhoBar, w_tilde: Option<&ExtendedWeylElt>, exec: Execution) -> Result<Vec<KisinDto>, CliError> {
    let ws = selected(x_rho(rho), w_tilde);
    par_map(exec, &ws, |w| {
        let k = kisin_matrices(rho, w)?;
        let shapes = k.mats.iter().map(|m| shape_of(m).map(|s| s.elt.to_string())).collect::<Result<Vec<_>, _>>()?;
        Ok(KisinDto {
            w_tilde: w.into(),
            matrices: k.mats.iter().map(matrix).collect(),
            shape: shapes,
            gauge: k.mats.iter().zip(&w.comps).map(|(m, &c)| gauge_check(m, c)).collect(),
            height: k.mats.iter().map(|m| height_check(m, (2, 1), HeightMode::Exact)).collect(),
            recovery: recovery_holds(rho, &k.mats, &k.tau),
        })
    })
    .into_iter()
    .collect()
}

pub struct TangentFlags {
    pub degree: Option<i64>,
    pub drop_x22_j0: bool,
}

pub fn tangent(
    rho: &RhoBar,
    sigma: Option<&Vec<i64>>,
    flags: &TangentFlags,
    exec: Execution,
) -> Result<Vec<TangentDto>, CliError> {
    let bs = sigmas(rho, sigma);
    par_map(exec, &bs, |b| {
        let opts = TangentOptions { degree: flags.degree, drop_x22_j0: flags.drop_x22_j0, ..Default::default() };
        let sys = assemble_system(rho, b, opts)?;
        let sol = solve_claim(&sys);
        let cons = consequence_report(&sys, &sol);
        let wider = solve_claim(&assemble_system(rho, b, TangentOptions { degree: Some(sys.degree + rho.p as i64), ..opts })?);
        let lower = solve_claim(&assemble_system(rho, b, TangentOptions { m_min_degree: -1, ..opts })?);
        Ok(TangentDto {
            sigma: b.clone(),
            degree: sys.degree,
            unknowns: sys.n_unknowns(),
            rows: sys.rows.len(),
            rank: sol.rank,
            param_kernel_dim: sol.param_kernel_dim,
            m_kernel_dim: sol.m_kernel_dim,
            injective: sol.injective,
            stable: (sol.param_kernel_dim, sol.m_kernel_dim) == (wider.param_kernel_dim, wider.m_kernel_dim),
            lower_degree_agrees: lower.param_kernel_dim == sol.param_kernel_dim,
            consequences: ConsequencesDto {
                vectors_checked: cons.vectors_checked,
                six_params_vanish: cons.six_params_vanish,
                m21_divisible_by_v: cons.m21_divisible_by_v,
                m12_vanishes: cons.m12_vanishes,
                c6_relations: cons.c6_relations,
                scalar_endomorphism: cons.scalar_endomorphism,
                dual_identity: cons.dual_identity,
            },
            kernel_basis: sol
                .phi_kernel
                .iter()
                .map(|v| v.iter().map(|(&c, x)| (sys.column_name(c), FieldEnc::encode(x))).collect())
                .collect(),
        })
    })
    .into_iter()
    .collect()
}

pub fn d0(rho: &RhoBar, reading: JhReading, exec: Execution) -> Result<D0Dto, CliError> {
    let rep = d0_checks(rho, reading, exec)?;
    Ok(D0Dto {
        reading: format!("{reading:?}").to_lowercase(),
        components: rep
            .components
            .iter()
            .map(|c| ComponentDto {
                sigma: c.sigma_b.clone(),
                socle: (&c.profile.base).into(),
                j: c.profile.j_set(),
                eps: c.profile.eps.clone(),
                constituents: c.constituents.iter().map(|x| ConstituentDto { a: x.a.clone(), label: (&x.label).into() }).collect(),
                edges: c.edges.clone(),
            })
            .collect(),
        multiplicity_free: rep.multiplicity_free,
        weights_occur_once: rep.weights_occur_once,
        socles_enumerate: rep.socles_enumerate,
        downward_closed: rep.downward_closed,
        partial_orders: rep.partial_orders,
    })
}

/// Brute-force suites: the F2 coset oracle against `shape_of`, the table
/// presentation of `τ` against the direct formula together with recovery on
/// random `ρ̄` shaped like `rho`, and the three-row matrix table over `F`.
pub fn oracle(rho: &RhoBar, seed: u64, samples: usize, exec: Execution) -> Result<OracleDto, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let coset = CosetOracle::new(exec);
    let f2 = Field::prime(2)?;
    let targets: Vec<u16> = (0..samples).map(|_| random_target(&mut rng)).collect();
    let coset_agree = par_map(exec, &targets, |&m| shape_of(&to_mat2(m, &f2)).ok().map(|s| s.elt) == coset.classify(m))
        .into_iter()
        .filter(|&x| x)
        .count();

    let spec = RhoSpec { mode: rho.mode, ..RhoSpec::permissive(rho.p, rho.f, rho.irreducible) }.with_field(rho.field.clone());
    let spec = match rho.mode {
        modp_kisin::Mode::Strict => spec.with_r_range(STRICT_DEPTH, rho.p as i64 - 2 - STRICT_DEPTH),
        modp_kisin::Mode::Permissive => spec,
    };
    let rhos: Vec<RhoBar> = (0..samples).map(|_| random_rho(&mut rng, &spec)).collect();
    let per_rho = par_map(exec, &rhos, |r| {
        let xs = x_rho(r);
        let agree = xs
            .iter()
            .filter(|w| {
                let (ws, nu) = decompose_star(w);
                let formula = tau_from_star_formula(r, &ws, &nu);
                kisin_matrices(r, w).is_ok_and(|k| k.tau == formula && recovery_holds(r, &k.mats, &formula))
            })
            .count();
        (xs.len(), agree)
    });
    let recovery_pairs = per_rho.iter().map(|x| x.0).sum();
    let recovery_agree = per_rho.iter().map(|x| x.1).sum();

    let field = &rho.field;
    let mono = |c: &modp_kisin::FieldElement, d| LaurentPoly::monomial(c.clone(), d);
    let mut table_agree = 0;
    for _ in 0..samples {
        let (al, be, a) = (field.random_nonzero(&mut rng), field.random_nonzero(&mut rng), field.random(&mut rng));
        let z = LaurentPoly::zero;
        let rows = [
            (Mat2::new(mono(&al, 2), z(), mono(&a, 2), mono(&be, 1)), AffineWeylElt::T21, AffineWeylElt::T21),
            (
                Mat2::new(z(), mono(&be, 1), mono(&al, 2), mono(&a, 1)),
                AffineWeylElt::WT21,
                if a.is_zero() { AffineWeylElt::WT21 } else { AffineWeylElt::T21 },
            ),
            (Mat2::diag(mono(&al, 1), mono(&be, 2)), AffineWeylElt::T12, AffineWeylElt::T12),
        ];
        table_agree += rows
            .iter()
            .filter(|(m, gauge, shape)| shape_of(m).is_ok_and(|s| s.elt == *shape) && gauge_check(m, *gauge))
            .count();
    }
    Ok(OracleDto {
        coset_targets: samples,
        coset_agree,
        recovery_samples: samples,
        recovery_pairs,
        recovery_agree,
        table_rows: 3 * samples,
        table_agree,
    })
}
