//! Étale φ-module matrices of `ρ̄`, the Kisin module matrices `Ā` of type
//! `τ_w̃`, and the identity recovering the former from the latter.

use crate::field::FieldElement;
use crate::laurent::LaurentPoly;
use crate::mat2::Mat2;
use crate::rho::{in_x_rho, tau_presentation, RhoBar, TypePresentation};
use crate::weyl::{AffineWeylElt, ExtendedWeylElt};
use crate::{Error, Result};

/// `mats[i]` is the matrix of the partial Frobenius `φ^(i)`.
#[derive(Clone, Debug, PartialEq)]
pub struct PhiModuleMatrices {
    pub mats: Vec<Mat2>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct KisinMatrices {
    /// `mats[i] = Ā^(i)`.
    pub mats: Vec<Mat2>,
    pub tau: TypePresentation,
    pub w_tilde: ExtendedWeylElt,
}

fn mono(c: &FieldElement, d: i64) -> LaurentPoly {
    LaurentPoly::monomial(c.clone(), d)
}

fn zero() -> LaurentPoly {
    LaurentPoly::zero()
}

pub fn etale_matrices(rho: &RhoBar) -> PhiModuleMatrices {
    let f = rho.f;
    let mut mats = vec![Mat2::zero(); f];
    for j in 0..f {
        let (al, be, r) = (&rho.alpha[j], &rho.beta[j], rho.r[j]);
        mats[f - 1 - j] = if !rho.irreducible {
            let a = &rho.a[f - 1 - j];
            Mat2::new(mono(al, r + 2), zero(), mono(&(al * a), r + 2), mono(be, 1))
        } else if j != 0 {
            Mat2::diag(mono(al, r + 2), mono(be, 1))
        } else {
            Mat2::new(zero(), mono(&-be, 1), mono(al, r + 2), zero())
        };
    }
    PhiModuleMatrices { mats }
}

/// The explicit matrix family for `Ā^(f-1-j)`. At `j = 0` for irreducible
/// `ρ̄` the entries follow from `Mat(φ) v^{-(μ(τ)+η)} ṡ(τ)` with the
/// antidiagonal étale matrix.
fn abar(rho: &RhoBar, j: usize, comp: AffineWeylElt) -> Result<Mat2> {
    let f = rho.f;
    let (al, be) = (&rho.alpha[j], &rho.beta[j]);
    let a = &rho.a[f - 1 - j];
    if rho.irreducible && j == 0 {
        return Ok(match comp {
            AffineWeylElt::T21 => Mat2::diag(mono(&-be, 2), mono(al, 1)),
            AffineWeylElt::WT21 => Mat2::new(zero(), mono(&-be, 1), mono(al, 2), zero()),
            AffineWeylElt::T12 => Mat2::diag(mono(&-be, 1), mono(al, 2)),
            c => return Err(Error::Invalid(format!("{c} is not admissible"))),
        });
    }
    Ok(match comp {
        AffineWeylElt::T21 => Mat2::new(mono(al, 2), zero(), mono(&(al * a), 2), mono(be, 1)),
        AffineWeylElt::WT21 => Mat2::new(zero(), mono(al, 1), mono(be, 2), mono(&(al * a), 1)),
        AffineWeylElt::T12 => {
            if !a.is_zero() {
                return Err(Error::Precondition(format!("w~_{} = t(1,2) needs a_{} = 0", f - 1 - j, f - 1 - j)));
            }
            Mat2::diag(mono(al, 1), mono(be, 2))
        }
        c => return Err(Error::Invalid(format!("{c} is not admissible"))),
    })
}

pub fn kisin_matrices(rho: &RhoBar, w_tilde: &ExtendedWeylElt) -> Result<KisinMatrices> {
    let tau = tau_presentation(rho, w_tilde)?;
    if !in_x_rho(rho, w_tilde) {
        return Err(Error::Precondition(format!("{w_tilde} is not in X(rho)")));
    }
    let f = rho.f;
    let mut mats = vec![Mat2::zero(); f];
    for j in 0..f {
        mats[f - 1 - j] = abar(rho, j, w_tilde.comps[f - 1 - j])?;
    }
    Ok(KisinMatrices { mats, tau, w_tilde: w_tilde.clone() })
}

/// `Ā^(f-1-j) ṡ(τ)_j⁻¹ v^{μ(τ)_j + η_j}` for every `j`, indexed like `mats`.
pub fn recovered_matrices(rho: &RhoBar, mats: &[Mat2], tau: &TypePresentation) -> Vec<Mat2> {
    let f = rho.f;
    let one = rho.field.one();
    let shift = tau.mu_tau_plus_eta();
    let mut out = vec![Mat2::zero(); f];
    for j in 0..f {
        let s_inv = Mat2::perm(&one, tau.s_tau[j].inverse());
        out[f - 1 - j] = &(&mats[f - 1 - j] * &s_inv) * &Mat2::v_power(&one, shift.pairs[j]);
    }
    out
}

pub fn recovery_holds(rho: &RhoBar, mats: &[Mat2], tau: &TypePresentation) -> bool {
    recovered_matrices(rho, mats, tau) == etale_matrices(rho).mats
}

pub fn verify_recovery(rho: &RhoBar, w_tilde: &ExtendedWeylElt) -> Result<bool> {
    let k = kisin_matrices(rho, w_tilde)?;
    Ok(recovery_holds(rho, &k.mats, &k.tau))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::rho::{decompose_star, tau_from_star_formula, x_rho, Mode};
    use crate::sample::{random_rho, zero_patterns, RhoSpec};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn rho1(a: i64, irreducible: bool) -> RhoBar {
        let f31 = Field::prime(31).unwrap();
        RhoBar::new(
            f31.clone(),
            vec![13],
            vec![f31.from_int(a)],
            vec![f31.from_int(3)],
            vec![f31.from_int(7)],
            irreducible,
            Mode::Strict,
        )
        .unwrap()
    }

    #[test]
    fn etale_examples() {
        let f31 = Field::prime(31).unwrap();
        let (al, be) = (f31.from_int(3), f31.from_int(7));
        let m = etale_matrices(&rho1(0, false));
        assert_eq!(m.mats[0], Mat2::diag(mono(&al, 15), mono(&be, 1)));
        let m = etale_matrices(&rho1(0, true));
        assert_eq!(m.mats[0], Mat2::new(zero(), mono(&-&be, 1), mono(&al, 15), zero()));
    }

    #[test]
    fn etale_determinant_valuation() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for f in 1..=3 {
            for irr in [false, true] {
                let rho = random_rho(&mut rng, &RhoSpec::strict(31, f, irr));
                for (i, m) in etale_matrices(&rho).mats.iter().enumerate() {
                    let j = f - 1 - i;
                    assert!(m.det().is_monomial());
                    assert_eq!(m.det().valuation().finite(), Some(rho.r[j] + 3));
                }
            }
        }
    }

    #[test]
    fn kisin_table_reducible() {
        let f31 = Field::prime(31).unwrap();
        let (al, be, a) = (f31.from_int(3), f31.from_int(7), f31.from_int(5));
        let rho = rho1(5, false);
        let k = kisin_matrices(&rho, &ExtendedWeylElt::new(vec![AffineWeylElt::T21])).unwrap();
        assert_eq!(k.mats[0], Mat2::new(mono(&al, 2), zero(), mono(&(&al * &a), 2), mono(&be, 1)));
        let k = kisin_matrices(&rho, &ExtendedWeylElt::new(vec![AffineWeylElt::WT21])).unwrap();
        assert_eq!(k.mats[0], Mat2::new(zero(), mono(&al, 1), mono(&be, 2), mono(&(&al * &a), 1)));
        let err = kisin_matrices(&rho, &ExtendedWeylElt::new(vec![AffineWeylElt::T12])).unwrap_err();
        assert!(matches!(err, Error::Precondition(_)));
        let k = kisin_matrices(&rho1(0, false), &ExtendedWeylElt::new(vec![AffineWeylElt::T12])).unwrap();
        assert_eq!(k.mats[0], Mat2::diag(mono(&al, 1), mono(&be, 2)));
    }

    #[test]
    fn recovery_example_f1() {
        let rho = rho1(5, false);
        assert!(verify_recovery(&rho, &ExtendedWeylElt::new(vec![AffineWeylElt::T21])).unwrap());
    }

    #[test]
    fn recovery_sweep() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for f in 1..=3 {
            for irr in [false, true] {
                let patterns = if irr { vec![vec![true; f]] } else { zero_patterns(f) };
                for mask in patterns {
                    let spec = RhoSpec::permissive(31, f, irr).with_zero_pattern(mask);
                    for _ in 0..5 {
                        let rho = random_rho(&mut rng, &spec);
                        for w in x_rho(&rho) {
                            assert!(verify_recovery(&rho, &w).unwrap(), "{w} {rho:?}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn corrupted_translation_breaks_recovery() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for f in 1..=3 {
            for irr in [false, true] {
                let rho = random_rho(&mut rng, &RhoSpec::permissive(37, f, irr));
                for w in x_rho(&rho) {
                    let k = kisin_matrices(&rho, &w).unwrap();
                    let (ws, mut nu) = decompose_star(&w);
                    assert!(recovery_holds(&rho, &k.mats, &tau_from_star_formula(&rho, &ws, &nu)));
                    nu[0].0 += 1;
                    assert!(!recovery_holds(&rho, &k.mats, &tau_from_star_formula(&rho, &ws, &nu)));
                }
            }
        }
    }

    #[test]
    fn outside_x_rho_is_rejected() {
        let f = Field::prime(31).unwrap();
        let rho = RhoBar::new(
            f.clone(),
            vec![13, 14],
            vec![f.from_int(1), f.zero()],
            vec![f.one(), f.one()],
            vec![f.one(), f.one()],
            false,
            Mode::Strict,
        )
        .unwrap();
        let w = ExtendedWeylElt::new(vec![AffineWeylElt::T12, AffineWeylElt::T21]);
        assert!(matches!(kisin_matrices(&rho, &w), Err(Error::Precondition(_))));
    }
}
