//! Brute-force Iwahori double coset oracle over `F2[v]/(v^4)`.
//!
//! A matrix over `F2[v]/(v^4)` packs into a `u16`: four nibbles
//! `m11, m12, m21, m22`, bit `i` of a nibble being the coefficient of `v^i`.
//! Each double coset `I w̃ I` with `ν ≥ 0` and `ν1 + ν2 ≤ 3` is enumerated as
//! the orbit of `ṡ v^ν` under left and right multiplication by generators of
//! `I` mod `v^4`. If `val det M ≤ 3`, then `M + v^4 E = M (1 + M⁻¹ v^4 E)` with
//! the second factor in `I`, so the truncation determines the coset.

use std::collections::VecDeque;

use rand::Rng;

use crate::field::Field;
use crate::laurent::LaurentPoly;
use crate::mat2::Mat2;
use crate::sweep::{par_map, Execution};
use crate::weyl::{AffineWeylElt, Perm};

pub const PRECISION: u32 = 4;
const MASK: u8 = 0xf;

fn nib_mul(a: u8, b: u8) -> u8 {
    let mut out = 0u8;
    for i in 0..PRECISION {
        if a >> i & 1 == 1 {
            out ^= b << i;
        }
    }
    out & MASK
}

fn unpack(m: u16) -> [u8; 4] {
    [(m >> 12) as u8 & MASK, (m >> 8) as u8 & MASK, (m >> 4) as u8 & MASK, m as u8 & MASK]
}

fn pack(e: [u8; 4]) -> u16 {
    (e[0] as u16) << 12 | (e[1] as u16) << 8 | (e[2] as u16) << 4 | e[3] as u16
}

pub fn mul(x: u16, y: u16) -> u16 {
    let a = unpack(x);
    let b = unpack(y);
    pack([
        nib_mul(a[0], b[0]) ^ nib_mul(a[1], b[2]),
        nib_mul(a[0], b[1]) ^ nib_mul(a[1], b[3]),
        nib_mul(a[2], b[0]) ^ nib_mul(a[3], b[2]),
        nib_mul(a[2], b[1]) ^ nib_mul(a[3], b[3]),
    ])
}

pub fn det(m: u16) -> u8 {
    let e = unpack(m);
    nib_mul(e[0], e[3]) ^ nib_mul(e[1], e[2])
}

/// Generators of the Iwahori subgroup mod `v^4`.
pub fn iwahori_generators() -> Vec<u16> {
    let mut gens = Vec::new();
    for k in 0..PRECISION {
        gens.push(pack([1, 1 << k, 0, 1]));
    }
    for k in 1..PRECISION {
        gens.push(pack([1, 0, 1 << k, 1]));
        gens.push(pack([1 | 1 << k, 0, 0, 1]));
        gens.push(pack([1, 0, 0, 1 | 1 << k]));
    }
    gens
}

/// `ṡ v^ν` truncated mod `v^4`.
pub fn monomial(w: AffineWeylElt) -> u16 {
    let (a, b) = ((1u8 << w.nu.0) & MASK, (1u8 << w.nu.1) & MASK);
    match w.perm {
        Perm::Identity => pack([a, 0, 0, b]),
        Perm::Swap => pack([0, b, a, 0]),
    }
}

/// Every `s t_ν` with `ν ≥ 0`, `ν1 + ν2 < 4`.
pub fn small_elements() -> Vec<AffineWeylElt> {
    let mut out = Vec::new();
    for perm in [Perm::Identity, Perm::Swap] {
        for n in 0..PRECISION as i64 {
            for n1 in 0..=n {
                out.push(AffineWeylElt::new(perm, (n1, n - n1)));
            }
        }
    }
    out
}

fn orbit(start: u16, gens: &[u16]) -> Vec<u16> {
    let mut seen = vec![false; 1 << 16];
    let mut queue = VecDeque::from([start]);
    seen[start as usize] = true;
    let mut out = Vec::new();
    while let Some(m) = queue.pop_front() {
        out.push(m);
        for &g in gens {
            for n in [mul(g, m), mul(m, g)] {
                if !seen[n as usize] {
                    seen[n as usize] = true;
                    queue.push_back(n);
                }
            }
        }
    }
    out
}

pub struct CosetOracle {
    elements: Vec<AffineWeylElt>,
    table: Vec<Option<u8>>,
    pub orbit_sizes: Vec<usize>,
}

impl CosetOracle {
    pub fn new(exec: Execution) -> Self {
        let elements = small_elements();
        let gens = iwahori_generators();
        let orbits = par_map(exec, &elements, |&w| orbit(monomial(w), &gens));
        let mut table = vec![None; 1 << 16];
        for (i, orb) in orbits.iter().enumerate() {
            for &m in orb {
                assert!(table[m as usize].is_none(), "double cosets overlap");
                table[m as usize] = Some(i as u8);
            }
        }
        let orbit_sizes = orbits.iter().map(Vec::len).collect();
        CosetOracle { elements, table, orbit_sizes }
    }

    pub fn classify(&self, m: u16) -> Option<AffineWeylElt> {
        self.table[m as usize].map(|i| self.elements[i as usize])
    }

    /// Number of packed matrices with `val det ≤ 3` that the orbits cover.
    pub fn covered(&self) -> usize {
        self.table.iter().filter(|x| x.is_some()).count()
    }
}

/// Packed matrices with `det ≢ 0 mod v^4`.
pub fn random_target<R: Rng + ?Sized>(rng: &mut R) -> u16 {
    loop {
        let m: u16 = rng.gen();
        if det(m) != 0 {
            return m;
        }
    }
}

pub fn to_mat2(m: u16, f2: &Field) -> Mat2 {
    let e = unpack(m);
    let poly = |n: u8| LaurentPoly::from_terms((0..PRECISION).map(|i| (i as i64, f2.from_int((n >> i & 1) as i64))));
    Mat2::new(poly(e[0]), poly(e[1]), poly(e[2]), poly(e[3]))
}

/// Truncate an integral matrix over `F2` to precision `v^4`.
pub fn from_mat2(m: &Mat2) -> Option<u16> {
    let mut e = [0u8; 4];
    for (slot, x) in e.iter_mut().zip(m.entries()) {
        for (d, c) in x.terms() {
            if d < 0 || c.field().order() != 2 {
                return None;
            }
            if d < PRECISION as i64 && c.is_one() {
                *slot |= 1 << d;
            }
        }
    }
    Some(pack(e))
}
