//! Prime and extension finite fields `F_{p^d}` with exact arithmetic.
//!
//! Elements carry a shared handle to their field, so mixing elements of
//! different fields is detected at runtime. Extension fields are presented as
//! `F_p[t]/(m(t))` for a monic irreducible modulus `m`; by default the
//! lexicographically least one (coefficients compared from the top degree
//! down), which keeps encodings reproducible across runs.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use rand::Rng;
use smallvec::SmallVec;

use crate::{Error, Result};

type Coeffs = SmallVec<[u32; 4]>;

#[derive(Debug, PartialEq, Eq)]
struct FieldInner {
    p: u32,
    degree: usize,
    /// Monic modulus, low degree first, length `degree + 1`.
    modulus: Vec<u32>,
}

/// A finite field `F_{p^d}`. Cheap to clone.
#[derive(Clone)]
pub struct Field(Arc<FieldInner>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degree() == 1 {
            write!(f, "F_{}", self.p())
        } else {
            write!(f, "F_{}^{}[{:?}]", self.p(), self.degree(), self.0.modulus)
        }
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Field {
    /// The prime field `F_p`.
    pub fn prime(p: u32) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        Ok(Field(Arc::new(FieldInner { p, degree: 1, modulus: vec![0, 1] })))
    }

    /// `F_{p^d}` with the default modulus.
    pub fn extension(p: u32, degree: usize) -> Result<Self> {
        if degree == 0 {
            return Err(Error::InvalidField("degree must be positive".into()));
        }
        if degree == 1 {
            return Self::prime(p);
        }
        if !is_prime(p as u64) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        let modulus = least_irreducible(p, degree);
        Ok(Field(Arc::new(FieldInner { p, degree, modulus })))
    }

    /// `F_p[t]/(modulus)`; `modulus` is given low degree first and must be
    /// monic and irreducible.
    pub fn with_modulus(p: u32, modulus: &[u32]) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        let mut m: Vec<u32> = modulus.iter().map(|c| c % p).collect();
        while m.last() == Some(&0) {
            m.pop();
        }
        if m.len() < 2 || *m.last().unwrap() != 1 {
            return Err(Error::InvalidField("modulus must be monic of positive degree".into()));
        }
        let degree = m.len() - 1;
        if degree == 1 {
            return Self::prime(p);
        }
        if !is_irreducible(p, &m) {
            return Err(Error::InvalidField(format!("modulus {m:?} is reducible over F_{p}")));
        }
        Ok(Field(Arc::new(FieldInner { p, degree, modulus: m })))
    }

    pub fn p(&self) -> u32 {
        self.0.p
    }

    pub fn degree(&self) -> usize {
        self.0.degree
    }

    /// Modulus coefficients, low degree first (`[0, 1]` for a prime field).
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    pub fn order(&self) -> u64 {
        (self.p() as u64).pow(self.degree() as u32)
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement { field: self.clone(), coeffs: SmallVec::from_elem(0, self.degree()) }
    }

    pub fn one(&self) -> FieldElement {
        self.from_int(1)
    }

    pub fn from_int(&self, n: i64) -> FieldElement {
        let mut e = self.zero();
        e.coeffs[0] = n.rem_euclid(self.p() as i64) as u32;
        e
    }

    /// Element from coordinates (low degree first); missing coordinates are 0.
    pub fn element(&self, coords: &[i64]) -> Result<FieldElement> {
        if coords.len() > self.degree() {
            return Err(Error::InvalidField(format!(
                "{} coordinates given for a degree {} field",
                coords.len(),
                self.degree()
            )));
        }
        let mut e = self.zero();
        for (slot, c) in e.coeffs.iter_mut().zip(coords) {
            *slot = c.rem_euclid(self.p() as i64) as u32;
        }
        Ok(e)
    }

    /// The class of `t`. In a prime field (modulus `t`) this is 0.
    pub fn generator(&self) -> FieldElement {
        let mut e = self.zero();
        if self.degree() > 1 {
            e.coeffs[1] = 1;
        }
        e
    }

    /// Every element, in order of the base-`p` integer encoding of the
    /// coordinates. Only sensible for small fields.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.order()).map(move |mut n| {
            let mut e = self.zero();
            for c in e.coeffs.iter_mut() {
                *c = (n % self.p() as u64) as u32;
                n /= self.p() as u64;
            }
            e
        })
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> FieldElement {
        let mut e = self.zero();
        for c in e.coeffs.iter_mut() {
            *c = rng.gen_range(0..self.p());
        }
        e
    }

    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> FieldElement {
        loop {
            let e = self.random(rng);
            if !e.is_zero() {
                return e;
            }
        }
    }
}

/// An element of a [`Field`].
#[derive(Clone)]
pub struct FieldElement {
    field: Field,
    coeffs: Coeffs,
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs && self.field == other.field
    }
}

impl Eq for FieldElement {}

impl Hash for FieldElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.field.degree() == 1 {
            return write!(f, "{}", self.coeffs[0]);
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            match (i, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "t")?,
                (1, c) => write!(f, "{c}t")?,
                (i, 1) => write!(f, "t^{i}")?,
                (i, c) => write!(f, "{c}t^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// The four operations exposed by [`field_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Mul,
    Inv,
    Neg,
}

/// Checked arithmetic entry point. `Inv` and `Neg` ignore `y` (which must
/// still live in the same field).
pub fn field_arith(x: &FieldElement, y: &FieldElement, op: FieldOp) -> Result<FieldElement> {
    if x.field != y.field {
        return Err(Error::FieldMismatch);
    }
    Ok(match op {
        FieldOp::Add => x + y,
        FieldOp::Mul => x * y,
        FieldOp::Neg => -x,
        FieldOp::Inv => x.inverse()?,
    })
}

/// `x ↦ x^p`.
pub fn frobenius(x: &FieldElement) -> FieldElement {
    x.frobenius()
}

impl FieldElement {
    pub fn field(&self) -> &Field {
        &self.field
    }

    /// Coordinates with respect to `1, t, ..., t^{d-1}`.
    pub fn coords(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0] == 1 && self.coeffs[1..].iter().all(|&c| c == 0)
    }

    /// The residue as an integer when the element lies in the prime field.
    pub fn as_prime(&self) -> Option<u32> {
        self.coeffs[1..].iter().all(|&c| c == 0).then_some(self.coeffs[0])
    }

    pub fn pow(&self, mut e: u64) -> FieldElement {
        let mut base = self.clone();
        let mut acc = self.field.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn inverse(&self) -> Result<FieldElement> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(self.field.order() - 2))
    }

    pub fn frobenius(&self) -> FieldElement {
        if self.field.degree() == 1 {
            return self.clone();
        }
        self.pow(self.field.p() as u64)
    }

    fn check(&self, other: &Self) {
        assert!(self.field == other.field, "field mismatch: {:?} vs {:?}", self.field, other.field);
    }
}

impl Add for &FieldElement {
    type Output = FieldElement;

    fn add(self, rhs: &FieldElement) -> FieldElement {
        self.check(rhs);
        let p = self.field.p();
        let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(&a, &b)| (a + b) % p).collect();
        FieldElement { field: self.field.clone(), coeffs }
    }
}

impl Sub for &FieldElement {
    type Output = FieldElement;

    fn sub(self, rhs: &FieldElement) -> FieldElement {
        self.check(rhs);
        let p = self.field.p();
        let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(&a, &b)| (a + p - b) % p).collect();
        FieldElement { field: self.field.clone(), coeffs }
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;

    fn neg(self) -> FieldElement {
        let p = self.field.p();
        let coeffs = self.coeffs.iter().map(|&a| (p - a) % p).collect();
        FieldElement { field: self.field.clone(), coeffs }
    }
}

impl Mul for &FieldElement {
    type Output = FieldElement;

    fn mul(self, rhs: &FieldElement) -> FieldElement {
        self.check(rhs);
        let p = self.field.p() as u64;
        let d = self.field.degree();
        if d == 1 {
            let c = (self.coeffs[0] as u64 * rhs.coeffs[0] as u64) % p;
            return FieldElement { field: self.field.clone(), coeffs: SmallVec::from_elem(c as u32, 1) };
        }
        let mut prod = vec![0u64; 2 * d - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                prod[i + j] = (prod[i + j] + a as u64 * b as u64) % p;
            }
        }
        let m = &self.field.0.modulus;
        for k in (d..prod.len()).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            prod[k] = 0;
            // t^k = t^{k-d} * t^d = -t^{k-d} * (m_0 + ... + m_{d-1} t^{d-1})
            for i in 0..d {
                prod[k - d + i] = (prod[k - d + i] + (p - c) * m[i] as u64) % p;
            }
        }
        let coeffs = prod[..d].iter().map(|&c| c as u32).collect();
        FieldElement { field: self.field.clone(), coeffs }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: FieldElement) -> FieldElement {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: &FieldElement) -> FieldElement {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

// Dense polynomials over F_p, low degree first, used only for the
// irreducibility test behind the default modulus.

fn trim(a: &mut Vec<u64>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn poly_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    trim(&mut r);
    let dm = m.len() - 1;
    let lead_inv = mod_pow(m[dm], p - 2, p);
    while r.len() > dm {
        let k = r.len() - 1;
        let c = r[k] * lead_inv % p;
        for i in 0..=dm {
            r[k - dm + i] = (r[k - dm + i] + (p - c) * m[i]) % p;
        }
        trim(&mut r);
    }
    r
}

fn poly_mulmod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    poly_rem(&prod, m, p)
}

fn poly_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let r = poly_rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

fn mod_pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

/// `x^{p^k} mod m`.
fn frobenius_power_of_x(m: &[u64], p: u64, k: usize) -> Vec<u64> {
    let mut x = poly_rem(&[0, 1], m, p);
    for _ in 0..k {
        // raise to the p-th power by square-and-multiply
        let mut acc = vec![1u64];
        let mut base = x.clone();
        let mut e = p;
        while e > 0 {
            if e & 1 == 1 {
                acc = poly_mulmod(&acc, &base, m, p);
            }
            base = poly_mulmod(&base, &base, m, p);
            e >>= 1;
        }
        x = acc;
    }
    x
}

/// Rabin's irreducibility test for a monic `m` of degree `d`.
pub(crate) fn is_irreducible(p: u32, m: &[u32]) -> bool {
    let p = p as u64;
    let m: Vec<u64> = m.iter().map(|&c| c as u64).collect();
    let d = m.len() - 1;
    if d == 1 {
        return true;
    }
    let sub_x = |mut f: Vec<u64>| {
        f.resize(f.len().max(2), 0);
        f[1] = (f[1] + p - 1) % p;
        trim(&mut f);
        f
    };
    if !sub_x(frobenius_power_of_x(&m, p, d)).is_empty() {
        return false;
    }
    let mut n = d;
    let mut q = 2;
    let mut prime_divisors = Vec::new();
    while n > 1 {
        if n.is_multiple_of(q) {
            prime_divisors.push(q);
            while n.is_multiple_of(q) {
                n /= q;
            }
        }
        q += 1;
    }
    prime_divisors.into_iter().all(|q| {
        let h = sub_x(frobenius_power_of_x(&m, p, d / q));
        poly_gcd(&m, &h, p).len() == 1
    })
}

/// Least monic irreducible of degree `d`, ordering candidates by their
/// coefficients from degree `d-1` down to the constant term.
fn least_irreducible(p: u32, d: usize) -> Vec<u32> {
    let total = (p as u64).pow(d as u32);
    for n in 0..total {
        // n encodes (c_{d-1}, ..., c_0) with c_{d-1} most significant
        let mut m = vec![0u32; d + 1];
        let mut k = n;
        for slot in m.iter_mut().take(d) {
            *slot = (k % p as u64) as u32;
            k /= p as u64;
        }
        m[d] = 1;
        if is_irreducible(p, &m) {
            return m;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}
