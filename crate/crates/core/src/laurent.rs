//! Laurent polynomials in `v` over a coefficient ring, dual numbers, and the
//! Frobenius twist `v ↦ v^p`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::field::FieldElement;
use crate::{Error, Result};

/// `v`-adic valuation; the zero polynomial has valuation `Infinite`, which
/// orders above every finite value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(n) => Some(n),
            Valuation::Infinite => None,
        }
    }

    pub fn is_at_least(self, n: i64) -> bool {
        self >= Valuation::Finite(n)
    }
}

impl Add for Valuation {
    type Output = Valuation;
    fn add(self, rhs: Valuation) -> Valuation {
        match (self, rhs) {
            (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a + b),
            _ => Valuation::Infinite,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(n) => write!(f, "{n}"),
            Valuation::Infinite => write!(f, "inf"),
        }
    }
}

/// Coefficient rings for [`LaurentPoly`]. Method names avoid the operator
/// traits so both field elements and dual numbers can implement them
/// directly.
pub trait Coefficient: Clone + PartialEq + fmt::Debug + fmt::Display {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negated(&self) -> Self;
    fn inverse(&self) -> Result<Self>;
    /// Arithmetic Frobenius on the coefficient ring.
    fn frobenius(&self) -> Self;
    fn characteristic(&self) -> u32;
}

impl Coefficient for FieldElement {
    fn zero_like(&self) -> Self {
        self.field().zero()
    }
    fn one_like(&self) -> Self {
        self.field().one()
    }
    fn is_zero(&self) -> bool {
        FieldElement::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
    fn inverse(&self) -> Result<Self> {
        FieldElement::inverse(self)
    }
    fn frobenius(&self) -> Self {
        FieldElement::frobenius(self)
    }
    fn characteristic(&self) -> u32 {
        self.field().p()
    }
}

/// `a + εb` with `ε² = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualNumber {
    pub a: FieldElement,
    pub b: FieldElement,
}

impl DualNumber {
    pub fn new(a: FieldElement, b: FieldElement) -> Self {
        DualNumber { a, b }
    }

    pub fn real(a: FieldElement) -> Self {
        let b = a.field().zero();
        DualNumber { a, b }
    }

    /// `ε·b`.
    pub fn eps(b: FieldElement) -> Self {
        let a = b.field().zero();
        DualNumber { a, b }
    }
}

impl fmt::Display for DualNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}+{}e)", self.a, self.b)
    }
}

impl Coefficient for DualNumber {
    fn zero_like(&self) -> Self {
        DualNumber::real(self.a.field().zero())
    }
    fn one_like(&self) -> Self {
        DualNumber::real(self.a.field().one())
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
    fn plus(&self, o: &Self) -> Self {
        DualNumber::new(&self.a + &o.a, &self.b + &o.b)
    }
    fn minus(&self, o: &Self) -> Self {
        DualNumber::new(&self.a - &o.a, &self.b - &o.b)
    }
    fn times(&self, o: &Self) -> Self {
        DualNumber::new(&self.a * &o.a, &(&self.a * &o.b) + &(&self.b * &o.a))
    }
    fn negated(&self) -> Self {
        DualNumber::new(-&self.a, -&self.b)
    }
    fn inverse(&self) -> Result<Self> {
        let ai = self.a.inverse()?;
        let b = -&(&self.b * &(&ai * &ai));
        Ok(DualNumber::new(ai, b))
    }
    fn frobenius(&self) -> Self {
        DualNumber::new(self.a.frobenius(), self.b.frobenius())
    }
    fn characteristic(&self) -> u32 {
        self.a.field().p()
    }
}

/// A finitely supported sum `Σ c_d v^d`, with no zero coefficients stored.
#[derive(Clone, PartialEq)]
pub struct LaurentPoly<C: Coefficient = FieldElement> {
    terms: BTreeMap<i64, C>,
}

impl<C: Coefficient> Default for LaurentPoly<C> {
    fn default() -> Self {
        LaurentPoly { terms: BTreeMap::new() }
    }
}

impl<C: Coefficient> LaurentPoly<C> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(c: C, degree: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(degree, c);
        }
        LaurentPoly { terms }
    }

    pub fn constant(c: C) -> Self {
        Self::monomial(c, 0)
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, C)>>(terms: I) -> Self {
        let mut out = Self::zero();
        for (d, c) in terms {
            out.add_term(d, &c);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn valuation(&self) -> Valuation {
        self.terms.keys().next().map_or(Valuation::Infinite, |&d| Valuation::Finite(d))
    }

    /// Highest degree present, `None` for zero.
    pub fn degree(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn coeff(&self, degree: i64) -> Option<&C> {
        self.terms.get(&degree)
    }

    /// Coefficient of the lowest-degree term.
    pub fn leading_low(&self) -> Option<&C> {
        self.terms.values().next()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &C)> {
        self.terms.iter().map(|(&d, c)| (d, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn add_term(&mut self, degree: i64, c: &C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&degree) {
            Some(old) => {
                let s = old.plus(c);
                if s.is_zero() {
                    self.terms.remove(&degree);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(degree, c.clone());
            }
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        Self::from_terms(self.terms.iter().map(|(&d, x)| (d, x.times(c))))
    }

    /// Multiply by `v^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentPoly { terms: self.terms.iter().map(|(&d, c)| (d + k, c.clone())).collect() }
    }

    pub fn map_coeffs<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> LaurentPoly<D> {
        LaurentPoly::from_terms(self.terms.iter().map(|(&d, c)| (d, f(c))))
    }

    /// Inverse in `F((v))`; finite only for monomials with invertible
    /// coefficient.
    pub fn inverse(&self) -> Result<Self> {
        match self.terms.iter().next() {
            Some((&d, c)) if self.terms.len() == 1 => Ok(Self::monomial(c.inverse()?, -d)),
            Some(_) => Err(Error::Singular(format!("{self:?} has no finite inverse"))),
            None => Err(Error::DivisionByZero),
        }
    }

    /// `c·v^d ↦ frobenius(c)·v^{pd}`.
    pub fn phi_twist(&self) -> Self {
        let Some(p) = self.terms.values().next().map(|c| c.characteristic() as i64) else {
            return Self::zero();
        };
        LaurentPoly { terms: self.terms.iter().map(|(&d, c)| (p * d, c.frobenius())).collect() }
    }

    /// `v ↦ v^k` with coefficients untouched.
    pub fn substitute_power(&self, k: i64) -> Self {
        LaurentPoly { terms: self.terms.iter().map(|(&d, c)| (k * d, c.clone())).collect() }
    }

    /// Drop every term of degree `>= n`.
    pub fn truncate_below(&self, n: i64) -> Self {
        LaurentPoly { terms: self.terms.range(..n).map(|(&d, c)| (d, c.clone())).collect() }
    }
}

/// Free-function form of [`LaurentPoly::phi_twist`].
pub fn phi_twist<C: Coefficient>(m: &LaurentPoly<C>) -> LaurentPoly<C> {
    m.phi_twist()
}

impl<C: Coefficient> fmt::Debug for LaurentPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<C: Coefficient> fmt::Display for LaurentPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (d, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            match d {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}v")?,
                d => write!(f, "{c}v^{d}")?,
            }
        }
        Ok(())
    }
}

impl<C: Coefficient> Add for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn add(self, rhs: &LaurentPoly<C>) -> LaurentPoly<C> {
        let mut out = self.clone();
        for (&d, c) in &rhs.terms {
            out.add_term(d, c);
        }
        out
    }
}

impl<C: Coefficient> Sub for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn sub(self, rhs: &LaurentPoly<C>) -> LaurentPoly<C> {
        let mut out = self.clone();
        for (&d, c) in &rhs.terms {
            out.add_term(d, &c.negated());
        }
        out
    }
}

impl<C: Coefficient> Neg for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn neg(self) -> LaurentPoly<C> {
        LaurentPoly { terms: self.terms.iter().map(|(&d, c)| (d, c.negated())).collect() }
    }
}

impl<C: Coefficient> Mul for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: &LaurentPoly<C>) -> LaurentPoly<C> {
        let mut out = LaurentPoly::zero();
        for (&d1, c1) in &self.terms {
            for (&d2, c2) in &rhs.terms {
                out.add_term(d1 + d2, &c1.times(c2));
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<C: Coefficient> $tr for LaurentPoly<C> {
            type Output = LaurentPoly<C>;
            fn $m(self, rhs: LaurentPoly<C>) -> LaurentPoly<C> {
                (&self).$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<C: Coefficient> Neg for LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn neg(self) -> LaurentPoly<C> {
        -&self
    }
}
