//! Iwahori double coset classification (shapes), gauges and height bounds
//! for 2×2 matrices over `F((v))`.
//!
//! `I` is the Iwahori subgroup of `GL2(F[[v]])`: integral matrices that are
//! upper triangular mod `v` with unit determinant. [`shape_of`] reduces a
//! matrix by elementary Iwahori operations and records every step, so the
//! answer can be re-checked by multiplication.

use crate::field::FieldElement;
use crate::laurent::{Coefficient, LaurentPoly, Valuation};
use crate::mat2::Mat2;
use crate::weyl::{AffineWeylElt, ExtendedWeylElt, Perm};
use crate::{Error, Result};

/// One elementary operation `line[target] := unit·line[target] - factor·line[source]`
/// applied to rows (left multiplication) or columns (right multiplication).
#[derive(Clone, Debug, PartialEq)]
pub struct Step {
    pub on_rows: bool,
    pub target: usize,
    pub source: usize,
    pub unit: LaurentPoly,
    pub factor: LaurentPoly,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Shape {
    pub elt: AffineWeylElt,
    /// `left · M · right = ṡ v^ν · unit`.
    pub left: Mat2,
    pub right: Mat2,
    /// Diagonal with entries in `F[[v]]^×`.
    pub unit: Mat2,
    pub steps: Vec<Step>,
}

impl Shape {
    /// Re-check the witness: both sides are Iwahori, `unit` is a diagonal
    /// unit, and the product identity holds exactly.
    pub fn verify(&self, m: &Mat2) -> bool {
        let Some(one) = first_coeff(m) else { return false };
        let mono = &Mat2::perm(&one, self.elt.perm) * &Mat2::v_power(&one, self.elt.nu);
        is_iwahori(&self.left)
            && is_iwahori(&self.right)
            && is_diagonal_unit(&self.unit)
            && &(&self.left * m) * &self.right == &mono * &self.unit
    }

    /// `ṡ v^ν D(0)`, the monomial representative with constant unit part.
    pub fn representative(&self) -> Mat2 {
        let one = first_coeff(&self.unit).expect("unit part is nonzero");
        let d0 = self.unit.map(|x| LaurentPoly::constant(x.coeff(0).cloned().unwrap_or_else(|| one.zero_like())));
        &(&Mat2::perm(&one, self.elt.perm) * &Mat2::v_power(&one, self.elt.nu)) * &d0
    }
}

fn first_coeff(m: &Mat2) -> Option<FieldElement> {
    m.entries().iter().find_map(|x| x.leading_low()).map(|c| c.one_like())
}

/// Integral, upper triangular mod `v`, determinant in `F[[v]]^×`.
pub fn is_iwahori(m: &Mat2) -> bool {
    m.is_integral() && m.get(1, 0).valuation().is_at_least(1) && m.det().valuation() == Valuation::Finite(0)
}

fn is_diagonal_unit(m: &Mat2) -> bool {
    m.get(0, 1).is_zero()
        && m.get(1, 0).is_zero()
        && m.get(0, 0).valuation() == Valuation::Finite(0)
        && m.get(1, 1).valuation() == Valuation::Finite(0)
}

/// Weight added to `2·val` when choosing a pivot; it encodes which
/// elimination directions are allowed in `I`.
const PIVOT_WEIGHT: [[i64; 2]; 2] = [[1, 2], [0, 1]];

fn adjusted(m: &Mat2, i: usize, k: usize) -> Option<i64> {
    m.get(i, k).valuation().finite().map(|v| 2 * v + PIVOT_WEIGHT[i][k])
}

/// `x = v^{val} · u` with `u(0) ≠ 0`; returns `(val, u)`.
fn split_unit(x: &LaurentPoly) -> (i64, LaurentPoly) {
    let v = x.valuation().finite().expect("nonzero");
    (v, x.shift(-v))
}

fn elementary(one: &FieldElement, target: usize, source: usize, unit: &LaurentPoly, factor: &LaurentPoly) -> Mat2 {
    let mut e = Mat2::identity(one);
    e.set(target, target, unit.clone());
    e.set(target, source, -factor);
    e
}

/// The unique `w̃` with `M ∈ I w̃ I`, with a verifiable witness.
pub fn shape_of(m: &Mat2) -> Result<Shape> {
    if m.det().is_zero() {
        return Err(Error::Singular("shape of a singular matrix".into()));
    }
    let one = first_coeff(m).expect("nonzero matrix");
    let mut cur = m.clone();
    let mut left = Mat2::identity(&one);
    let mut right = Mat2::identity(&one);
    let mut steps = Vec::new();

    let mut best: Option<(i64, usize, usize)> = None;
    for i in 0..2 {
        for k in 0..2 {
            if let Some(a) = adjusted(&cur, i, k) {
                if best.is_none_or(|(b, _, _)| a < b) {
                    best = Some((a, i, k));
                }
            }
        }
    }
    let (_, pi, pk) = best.expect("nonzero matrix");
    let (oi, ok) = (1 - pi, 1 - pk);
    let (a, u) = split_unit(cur.get(pi, pk));

    // clear the rest of the pivot column with row operations
    if !cur.get(oi, pk).is_zero() {
        let (b, w) = split_unit(cur.get(oi, pk));
        let factor = w.shift(b - a);
        let e = elementary(&one, oi, pi, &u, &factor);
        cur = &e * &cur;
        left = &e * &left;
        steps.push(Step { on_rows: true, target: oi, source: pi, unit: u.clone(), factor });
    }
    // clear the rest of the pivot row with column operations
    if !cur.get(pi, ok).is_zero() {
        let (b, w) = split_unit(cur.get(pi, ok));
        let factor = w.shift(b - a);
        // right multiplication: column ok := u·col ok - factor·col pk
        let e = elementary(&one, ok, pk, &u, &factor).transpose();
        cur = &cur * &e;
        right = &right * &e;
        steps.push(Step { on_rows: false, target: ok, source: pk, unit: u.clone(), factor });
    }
    debug_assert!(cur.get(oi, pk).is_zero() && cur.get(pi, ok).is_zero());

    let (perm, d1, d2) = if pi == pk {
        (Perm::Identity, cur.get(0, 0).clone(), cur.get(1, 1).clone())
    } else {
        // ṡ diag(x, y) = [[0, y], [x, 0]]
        (Perm::Swap, cur.get(1, 0).clone(), cur.get(0, 1).clone())
    };
    let (n1, u1) = split_unit(&d1);
    let (n2, u2) = split_unit(&d2);
    Ok(Shape { elt: AffineWeylElt::new(perm, (n1, n2)), left, right, unit: Mat2::diag(u1, u2), steps })
}

/// Shapes of every partial Frobenius matrix.
pub fn module_shape(mats: &[Mat2]) -> Result<ExtendedWeylElt> {
    mats.iter().map(|m| shape_of(m).map(|s| s.elt)).collect::<Result<Vec<_>>>().map(ExtendedWeylElt::new)
}

/// Mod-p gauge test for `w̃_j = s t_ν`: `M` is integral and
/// `B = M v^{-ν} ṡ⁻¹` lies in `GL2(F[[1/v]])` and is lower triangular mod
/// `1/v` (entries of degree `≤ 0`, the `(1,2)` entry of degree `≤ -1`, and
/// determinant of degree exactly 0).
pub fn gauge_check(m: &Mat2, w: AffineWeylElt) -> bool {
    let Some(one) = first_coeff(m) else { return false };
    if !m.is_integral() {
        return false;
    }
    let b = &(m * &Mat2::v_power(&one, (-w.nu.0, -w.nu.1))) * &Mat2::perm(&one, w.perm.inverse());
    let deg_le = |x: &LaurentPoly, n: i64| x.degree().is_none_or(|d| d <= n);
    b.entries().iter().all(|x| deg_le(x, 0)) && deg_le(b.get(0, 1), -1) && b.det().degree() == Some(0)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HeightMode {
    /// Entries divisible by `v^{λ2}`, `det` of valuation exactly `λ1 + λ2`.
    Exact,
    /// Entries divisible by `v^{λ2}`, `2λ2 ≤ val det ≤ λ1 + λ2`.
    Window,
}

pub fn height_check(m: &Mat2, lambda: (i64, i64), mode: HeightMode) -> bool {
    let (l1, l2) = lambda;
    if !m.entries().iter().all(|x| x.valuation().is_at_least(l2)) {
        return false;
    }
    match (m.det().valuation().finite(), mode) {
        (Some(d), HeightMode::Exact) => d == l1 + l2,
        (Some(d), HeightMode::Window) => 2 * l2 <= d && d <= l1 + l2,
        (None, _) => false,
    }
}

/// `diag(v^{k1}, v^{k2})`.
fn vdiag(one: &FieldElement, k: (i64, i64)) -> Mat2 {
    Mat2::v_power(one, k)
}

/// Apply the basis change `e^(j) ↦ e^(j) g_j` with `g_j = diag(v^{k_j})` to
/// the partial Frobenius matrices: `A'^(j) = g_{j+1}⁻¹ A^(j) φ(g_j)`.
pub fn rescale(mats: &[Mat2], exps: &[(i64, i64)], p: u32) -> Vec<Mat2> {
    let f = mats.len();
    let one = mats.iter().find_map(first_coeff).expect("nonzero matrices");
    let p = p as i64;
    (0..f)
        .map(|j| {
            let next = exps[(j + 1) % f];
            let g_inv = vdiag(&one, (-next.0, -next.1));
            let phi_g = vdiag(&one, (p * exps[j].0, p * exps[j].1));
            &(&g_inv * &mats[j]) * &phi_g
        })
        .collect()
}

/// All `v`-power diagonal basis changes with exponents in `[-bound, bound]`
/// that keep every matrix integral, in `w̃`-gauge, and of height `≤ (2,1)`.
/// Constant diagonal changes (the torus `T(F)`) always preserve these
/// conditions, so uniqueness up to `T` means only the zero exponent survives.
pub fn gauge_preserving_exponents(mats: &[Mat2], w: &ExtendedWeylElt, p: u32, bound: i64) -> Vec<Vec<(i64, i64)>> {
    let f = mats.len();
    let ranges = vec![(-bound, bound); 2 * f];
    let mut out = Vec::new();
    for flat in crate::rho::product(&ranges.iter().map(|&(lo, hi)| (lo..=hi).collect()).collect::<Vec<_>>()) {
        let exps: Vec<(i64, i64)> = flat.chunks(2).map(|c| (c[0], c[1])).collect();
        let new = rescale(mats, &exps, p);
        if new
            .iter()
            .zip(&w.comps)
            .all(|(m, &c)| gauge_check(m, c) && height_check(m, (2, 1), HeightMode::Exact))
        {
            out.push(exps);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn mono(c: &FieldElement, d: i64) -> LaurentPoly {
        LaurentPoly::monomial(c.clone(), d)
    }

    fn rows(al: &FieldElement, be: &FieldElement, a: &FieldElement) -> [Mat2; 3] {
        let z = LaurentPoly::zero;
        [
            Mat2::new(mono(al, 2), z(), mono(a, 2), mono(be, 1)),
            Mat2::new(z(), mono(be, 1), mono(al, 2), mono(a, 1)),
            Mat2::diag(mono(al, 1), mono(be, 2)),
        ]
    }

    #[test]
    fn example_table() {
        for p in [3, 5, 31] {
            let f = Field::prime(p).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(p as u64);
            for _ in 0..200 {
                let (al, be, a) = (f.random_nonzero(&mut rng), f.random_nonzero(&mut rng), f.random(&mut rng));
                let [m1, m2, m3] = rows(&al, &be, &a);
                let s1 = shape_of(&m1).unwrap();
                let s2 = shape_of(&m2).unwrap();
                let s3 = shape_of(&m3).unwrap();
                assert!(s1.verify(&m1) && s2.verify(&m2) && s3.verify(&m3));
                assert_eq!(s1.elt, AffineWeylElt::T21);
                assert_eq!(s2.elt, if a.is_zero() { AffineWeylElt::WT21 } else { AffineWeylElt::T21 });
                assert_eq!(s3.elt, AffineWeylElt::T12);
                assert!(gauge_check(&m1, AffineWeylElt::T21));
                assert!(gauge_check(&m2, AffineWeylElt::WT21));
                assert!(gauge_check(&m3, AffineWeylElt::T12));
                assert!(!gauge_check(&m3, AffineWeylElt::T21));
            }
        }
    }

    #[test]
    fn height_examples() {
        let f = Field::prime(31).unwrap();
        let one = f.one();
        assert!(!height_check(&Mat2::diag(mono(&one, 3), mono(&one, 0)), (2, 1), HeightMode::Exact));
        let [m1, m2, m3] = rows(&f.from_int(2), &f.from_int(3), &f.from_int(4));
        for m in [&m1, &m2, &m3] {
            assert!(height_check(m, (2, 1), HeightMode::Exact));
            assert_eq!(m.det().valuation(), Valuation::Finite(3));
        }
        assert!(height_check(&Mat2::diag(mono(&one, 1), mono(&one, 1)), (2, 1), HeightMode::Window));
        assert!(!height_check(&Mat2::diag(mono(&one, 1), mono(&one, 1)), (2, 1), HeightMode::Exact));
    }

    #[test]
    fn witnesses_verify_on_random_laurent_matrices() {
        let f = Field::extension(3, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        let poly = |rng: &mut ChaCha8Rng| {
            LaurentPoly::from_terms((0..rng.gen_range(0..4)).map(|_| (rng.gen_range(-3..5), f.random(rng))))
        };
        let mut done = 0;
        while done < 500 {
            let m = Mat2::new(poly(&mut rng), poly(&mut rng), poly(&mut rng), poly(&mut rng));
            if m.det().is_zero() {
                assert!(shape_of(&m).is_err());
                continue;
            }
            let s = shape_of(&m).unwrap();
            assert!(s.verify(&m), "{m:?} -> {s:?}");
            assert_eq!(s.elt.nu.0 + s.elt.nu.1, m.det().valuation().finite().unwrap());
            done += 1;
        }
    }

    #[test]
    fn shape_is_invariant_under_iwahori_action() {
        let f = Field::prime(5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let mut poly = |rng: &mut ChaCha8Rng, min: i64| {
            LaurentPoly::from_terms((0..3).map(|_| (rng.gen_range(min..min + 3), f.random(rng))))
        };
        for w in [AffineWeylElt::T21, AffineWeylElt::WT21, AffineWeylElt::T12, AffineWeylElt::new(Perm::Swap, (-1, 4))] {
            for _ in 0..100 {
                let iw = |rng: &mut ChaCha8Rng, poly: &mut dyn FnMut(&mut ChaCha8Rng, i64) -> LaurentPoly| loop {
                    let g = Mat2::new(poly(rng, 0), poly(rng, 0), poly(rng, 1), poly(rng, 0));
                    if is_iwahori(&g) {
                        return g;
                    }
                };
                let g = iw(&mut rng, &mut poly);
                let h = iw(&mut rng, &mut poly);
                let one = f.one();
                let m = &(&g * &(&Mat2::perm(&one, w.perm) * &Mat2::v_power(&one, w.nu))) * &h;
                let s = shape_of(&m).unwrap();
                assert_eq!(s.elt, w);
                assert!(s.verify(&m));
            }
        }
    }

    #[test]
    fn only_trivial_rescaling_keeps_gauge() {
        let f = Field::prime(31).unwrap();
        let [m1, m2, m3] = rows(&f.from_int(2), &f.from_int(3), &f.zero());
        let w = ExtendedWeylElt::new(vec![AffineWeylElt::T21, AffineWeylElt::WT21]);
        let sols = gauge_preserving_exponents(&[m1.clone(), m2.clone()], &w, 31, 2);
        assert_eq!(sols, vec![vec![(0, 0), (0, 0)]]);
        let w = ExtendedWeylElt::new(vec![AffineWeylElt::T12]);
        assert_eq!(gauge_preserving_exponents(&[m3], &w, 31, 3), vec![vec![(0, 0)]]);
    }
}
