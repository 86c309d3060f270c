//! 2×2 matrices with Laurent polynomial entries.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::laurent::{Coefficient, LaurentPoly, Valuation};
use crate::weyl::Perm;
use crate::{Error, Result};

#[derive(Clone, PartialEq)]
pub struct Mat2<C: Coefficient = crate::FieldElement> {
    /// Row-major: `[m11, m12, m21, m22]`.
    e: [LaurentPoly<C>; 4],
}

impl<C: Coefficient> Mat2<C> {
    pub fn new(m11: LaurentPoly<C>, m12: LaurentPoly<C>, m21: LaurentPoly<C>, m22: LaurentPoly<C>) -> Self {
        Mat2 { e: [m11, m12, m21, m22] }
    }

    pub fn zero() -> Self {
        Self::new(LaurentPoly::zero(), LaurentPoly::zero(), LaurentPoly::zero(), LaurentPoly::zero())
    }

    pub fn diag(d1: LaurentPoly<C>, d2: LaurentPoly<C>) -> Self {
        Self::new(d1, LaurentPoly::zero(), LaurentPoly::zero(), d2)
    }

    pub fn identity(one: &C) -> Self {
        let o = LaurentPoly::constant(one.one_like());
        Self::diag(o.clone(), o)
    }

    /// `diag(v^{n1}, v^{n2})`.
    pub fn v_power(one: &C, n: (i64, i64)) -> Self {
        let o = one.one_like();
        Self::diag(LaurentPoly::monomial(o.clone(), n.0), LaurentPoly::monomial(o, n.1))
    }

    /// Permutation matrix of `s`: the identity or `[[0,1],[1,0]]`.
    pub fn perm(one: &C, s: Perm) -> Self {
        match s {
            Perm::Identity => Self::identity(one),
            Perm::Swap => {
                let o = LaurentPoly::constant(one.one_like());
                Self::new(LaurentPoly::zero(), o.clone(), o, LaurentPoly::zero())
            }
        }
    }

    /// Entry at 0-based `(row, col)`.
    pub fn get(&self, row: usize, col: usize) -> &LaurentPoly<C> {
        &self.e[2 * row + col]
    }

    pub fn set(&mut self, row: usize, col: usize, x: LaurentPoly<C>) {
        self.e[2 * row + col] = x;
    }

    pub fn entries(&self) -> &[LaurentPoly<C>; 4] {
        &self.e
    }

    pub fn map(&self, f: impl Fn(&LaurentPoly<C>) -> LaurentPoly<C>) -> Self {
        Mat2 { e: [f(&self.e[0]), f(&self.e[1]), f(&self.e[2]), f(&self.e[3])] }
    }

    pub fn map_coeffs<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> Mat2<D> {
        Mat2 { e: [0, 1, 2, 3].map(|i| self.e[i].map_coeffs(&f)) }
    }

    pub fn det(&self) -> LaurentPoly<C> {
        &(&self.e[0] * &self.e[3]) - &(&self.e[1] * &self.e[2])
    }

    pub fn adjugate(&self) -> Self {
        Self::new(self.e[3].clone(), -&self.e[1], -&self.e[2], self.e[0].clone())
    }

    /// Inverse over `F((v))`. Finite entries require a monomial determinant.
    pub fn inverse(&self) -> Result<Self> {
        let det = self.det();
        if det.is_zero() {
            return Err(Error::Singular("zero determinant".into()));
        }
        let inv = det.inverse()?;
        Ok(self.adjugate().map(|x| x * &inv))
    }

    pub fn scale(&self, c: &LaurentPoly<C>) -> Self {
        self.map(|x| x * c)
    }

    pub fn phi_twist(&self) -> Self {
        self.map(|x| x.phi_twist())
    }

    pub fn substitute_power(&self, k: i64) -> Self {
        self.map(|x| x.substitute_power(k))
    }

    pub fn transpose(&self) -> Self {
        Self::new(self.e[0].clone(), self.e[2].clone(), self.e[1].clone(), self.e[3].clone())
    }

    /// Minimum valuation over all entries.
    pub fn valuation(&self) -> Valuation {
        self.e.iter().map(|x| x.valuation()).min().unwrap()
    }

    pub fn is_zero(&self) -> bool {
        self.e.iter().all(|x| x.is_zero())
    }

    /// Every entry is a power series (no negative powers of `v`).
    pub fn is_integral(&self) -> bool {
        self.valuation().is_at_least(0)
    }
}

impl<C: Coefficient> fmt::Debug for Mat2<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.e[0], self.e[1], self.e[2], self.e[3])
    }
}

impl<C: Coefficient> Mul for &Mat2<C> {
    type Output = Mat2<C>;
    fn mul(self, r: &Mat2<C>) -> Mat2<C> {
        let a = &self.e;
        let b = &r.e;
        Mat2::new(
            &(&a[0] * &b[0]) + &(&a[1] * &b[2]),
            &(&a[0] * &b[1]) + &(&a[1] * &b[3]),
            &(&a[2] * &b[0]) + &(&a[3] * &b[2]),
            &(&a[2] * &b[1]) + &(&a[3] * &b[3]),
        )
    }
}

impl<C: Coefficient> Add for &Mat2<C> {
    type Output = Mat2<C>;
    fn add(self, r: &Mat2<C>) -> Mat2<C> {
        Mat2 { e: [0, 1, 2, 3].map(|i| &self.e[i] + &r.e[i]) }
    }
}

impl<C: Coefficient> Sub for &Mat2<C> {
    type Output = Mat2<C>;
    fn sub(self, r: &Mat2<C>) -> Mat2<C> {
        Mat2 { e: [0, 1, 2, 3].map(|i| &self.e[i] - &r.e[i]) }
    }
}

impl<C: Coefficient> Neg for &Mat2<C> {
    type Output = Mat2<C>;
    fn neg(self) -> Mat2<C> {
        self.map(|x| -x)
    }
}

impl<C: Coefficient> Mul for Mat2<C> {
    type Output = Mat2<C>;
    fn mul(self, r: Mat2<C>) -> Mat2<C> {
        &self * &r
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MatOp {
    Mul,
    Det,
    Inv,
}

#[derive(Clone, Debug, PartialEq)]
pub enum MatResult<C: Coefficient = crate::FieldElement> {
    Matrix(Mat2<C>),
    Scalar(LaurentPoly<C>),
}

/// Uniform entry point; `Det` and `Inv` ignore `b`.
pub fn mat2_arith<C: Coefficient>(a: &Mat2<C>, b: &Mat2<C>, op: MatOp) -> Result<MatResult<C>> {
    Ok(match op {
        MatOp::Mul => MatResult::Matrix(a * b),
        MatOp::Det => MatResult::Scalar(a.det()),
        MatOp::Inv => MatResult::Matrix(a.inverse()?),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Field, FieldElement};

    fn mono(c: &FieldElement, d: i64) -> LaurentPoly {
        LaurentPoly::monomial(c.clone(), d)
    }

    #[test]
    fn determinant_examples() {
        let f = Field::prime(31).unwrap();
        let (alpha, beta, a) = (f.from_int(3), f.from_int(7), f.from_int(11));
        let d = Mat2::diag(mono(&alpha, 1), mono(&beta, 2));
        let z = LaurentPoly::zero();
        assert_eq!(
            mat2_arith(&d, &d, MatOp::Det).unwrap(),
            MatResult::Scalar(mono(&(&alpha * &beta), 3))
        );
        let m = Mat2::new(z, mono(&beta, 1), mono(&alpha, 2), mono(&a, 1));
        assert_eq!(m.det(), mono(&-(&alpha * &beta), 3));
    }

    #[test]
    fn inverse_round_trip() {
        let f = Field::extension(5, 2).unwrap();
        let t = f.generator();
        let m = Mat2::new(mono(&t, 2), LaurentPoly::zero(), mono(&f.from_int(3), 2), mono(&f.one(), 1));
        let MatResult::Matrix(inv) = mat2_arith(&m, &m, MatOp::Inv).unwrap() else { panic!() };
        assert_eq!(&m * &inv, Mat2::identity(&f.one()));
        assert_eq!(&inv * &m, Mat2::identity(&f.one()));
    }

    #[test]
    fn singular_inverse_fails() {
        let f = Field::prime(5).unwrap();
        let x = mono(&f.one(), 1);
        let m = Mat2::new(x.clone(), x.clone(), x.clone(), x);
        assert!(m.inverse().is_err());
    }

    #[test]
    fn swap_is_an_involution() {
        let f = Field::prime(3).unwrap();
        let s = Mat2::perm(&f.one(), Perm::Swap);
        assert_eq!(&s * &s, Mat2::identity(&f.one()));
    }
}
