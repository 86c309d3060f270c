//! Weights in `(Z²)^f`, the extended affine Weyl group of `GL2^f`, the
//! admissible set for `t_(2,1)`, the `*` involution and the extension graph.

use std::fmt;

use crate::{Error, Result};

/// An element of `S2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Perm {
    Identity,
    Swap,
}

impl Perm {
    pub fn apply(self, (a, b): (i64, i64)) -> (i64, i64) {
        match self {
            Perm::Identity => (a, b),
            Perm::Swap => (b, a),
        }
    }

    pub fn compose(self, other: Perm) -> Perm {
        if self == other {
            Perm::Identity
        } else {
            Perm::Swap
        }
    }

    pub fn inverse(self) -> Perm {
        self
    }

    /// Signature: `+1` or `-1`.
    pub fn sign(self) -> i64 {
        match self {
            Perm::Identity => 1,
            Perm::Swap => -1,
        }
    }
}

/// A character `(λ_{j,1}, λ_{j,2})_{0 ≤ j < f}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Weight {
    pub pairs: Vec<(i64, i64)>,
}

impl Weight {
    pub fn new(pairs: Vec<(i64, i64)>) -> Self {
        Weight { pairs }
    }

    /// The same pair at every embedding.
    pub fn constant(f: usize, pair: (i64, i64)) -> Self {
        Weight { pairs: vec![pair; f] }
    }

    /// `η = (1, 0)` at every embedding.
    pub fn eta(f: usize) -> Self {
        Self::constant(f, (1, 0))
    }

    pub fn f(&self) -> usize {
        self.pairs.len()
    }

    pub fn diffs(&self) -> Vec<i64> {
        self.pairs.iter().map(|&(a, b)| a - b).collect()
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight::new(self.pairs.iter().zip(&other.pairs).map(|(&(a, b), &(c, d))| (a + c, b + d)).collect())
    }

    pub fn sub(&self, other: &Weight) -> Weight {
        Weight::new(self.pairs.iter().zip(&other.pairs).map(|(&(a, b), &(c, d))| (a - c, b - d)).collect())
    }
}

/// The flags of [`classify_weight`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WeightClass {
    pub dominant: bool,
    pub p_restricted: bool,
    pub regular: bool,
    /// Largest `N` for which the weight is `N`-deep in the lowest alcove.
    pub depth: Option<i64>,
}

pub fn classify_weight(lambda: &Weight, p: u32) -> WeightClass {
    let p = p as i64;
    let diffs = lambda.diffs();
    let dominant = diffs.iter().all(|&d| d >= 0);
    let p_restricted = diffs.iter().all(|&d| (0..=p - 1).contains(&d));
    let regular = diffs.iter().all(|&d| (0..p - 1).contains(&d));
    WeightClass { dominant, p_restricted, regular, depth: depth(&diffs, p as u32) }
}

/// `min_j min(d_j, p-2-d_j)` when every `d_j ∈ [0, p-2]`.
pub fn depth(diffs: &[i64], p: u32) -> Option<i64> {
    let p = p as i64;
    if diffs.iter().any(|&d| !(0..=p - 2).contains(&d)) {
        return None;
    }
    diffs.iter().map(|&d| d.min(p - 2 - d)).min()
}

/// One component `s t_ν` of an extended affine Weyl element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineWeylElt {
    pub perm: Perm,
    pub nu: (i64, i64),
}

impl AffineWeylElt {
    pub const T21: AffineWeylElt = AffineWeylElt { perm: Perm::Identity, nu: (2, 1) };
    pub const WT21: AffineWeylElt = AffineWeylElt { perm: Perm::Swap, nu: (2, 1) };
    pub const T12: AffineWeylElt = AffineWeylElt { perm: Perm::Identity, nu: (1, 2) };

    pub fn new(perm: Perm, nu: (i64, i64)) -> Self {
        AffineWeylElt { perm, nu }
    }

    /// `(s1 t_ν1)(s2 t_ν2) = s1 s2 t_{s2⁻¹(ν1) + ν2}`.
    pub fn compose(self, other: AffineWeylElt) -> AffineWeylElt {
        let moved = other.perm.inverse().apply(self.nu);
        AffineWeylElt::new(self.perm.compose(other.perm), (moved.0 + other.nu.0, moved.1 + other.nu.1))
    }

    /// `(s t_ν)⁻¹ = t_{-ν} s⁻¹ = s⁻¹ t_{-s(ν)}`.
    pub fn inverse(self) -> AffineWeylElt {
        let (a, b) = self.perm.apply(self.nu);
        AffineWeylElt::new(self.perm.inverse(), (-a, -b))
    }

    /// Rewrite `s t_ν` as `t_{s(ν)} s`, returning `(s(ν), s)`.
    pub fn translation_first(self) -> ((i64, i64), Perm) {
        (self.perm.apply(self.nu), self.perm)
    }

    /// Position in the index map on `{t_(2,1), 𝔴t_(2,1), t_(1,2)}`.
    pub fn index(self) -> Option<u8> {
        match self {
            Self::T21 => Some(1),
            Self::WT21 => Some(2),
            Self::T12 => Some(3),
            _ => None,
        }
    }

    pub fn from_index(i: u8) -> Option<AffineWeylElt> {
        match i {
            1 => Some(Self::T21),
            2 => Some(Self::WT21),
            3 => Some(Self::T12),
            _ => None,
        }
    }
}

impl fmt::Display for AffineWeylElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w = if self.perm == Perm::Swap { "w" } else { "" };
        write!(f, "{w}t({},{})", self.nu.0, self.nu.1)
    }
}

/// An `f`-tuple of affine Weyl components.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExtendedWeylElt {
    pub comps: Vec<AffineWeylElt>,
}

impl ExtendedWeylElt {
    pub fn new(comps: Vec<AffineWeylElt>) -> Self {
        ExtendedWeylElt { comps }
    }

    pub fn f(&self) -> usize {
        self.comps.len()
    }

    pub fn compose(&self, other: &ExtendedWeylElt) -> ExtendedWeylElt {
        ExtendedWeylElt::new(self.comps.iter().zip(&other.comps).map(|(a, b)| a.compose(*b)).collect())
    }

    pub fn from_indices(idx: &[u8]) -> Result<ExtendedWeylElt> {
        idx.iter()
            .map(|&i| AffineWeylElt::from_index(i).ok_or_else(|| Error::Invalid(format!("index {i} is not in 1..=3"))))
            .collect::<Result<Vec<_>>>()
            .map(ExtendedWeylElt::new)
    }
}

impl fmt::Display for ExtendedWeylElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.comps.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// All `3^f` members of `Adm∨(t_(2,1))`, in lexicographic order of their
/// index tuples (first embedding most significant).
pub fn adm_set(f: usize) -> Vec<ExtendedWeylElt> {
    let mut out = vec![Vec::with_capacity(f)];
    for _ in 0..f {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (1..=3u8).map(move |i| {
                    let mut next = prefix.clone();
                    next.push(AffineWeylElt::from_index(i).unwrap());
                    next
                })
            })
            .collect();
    }
    out.into_iter().map(ExtendedWeylElt::new).collect()
}

/// `(w̃*)_j = t_{ν_{f-1-j}} s_{f-1-j}⁻¹`, returned in `s t_ν` form.
pub fn star(w: &ExtendedWeylElt) -> ExtendedWeylElt {
    let f = w.f();
    ExtendedWeylElt::new(
        (0..f)
            .map(|j| {
                let c = w.comps[f - 1 - j];
                let s = c.perm.inverse();
                // t_ν s = s t_{s⁻¹(ν)}
                AffineWeylElt::new(s, s.inverse().apply(c.nu))
            })
            .collect(),
    )
}

pub fn index_of(w: &ExtendedWeylElt) -> Result<Vec<u8>> {
    w.comps
        .iter()
        .map(|c| c.index().ok_or_else(|| Error::Invalid(format!("{c} is not in Adm∨(t_(2,1))"))))
        .collect()
}

/// Canonical representative of `λ` modulo `(p - π)X⁰(T)`: the differences
/// `λ_{j,1} - λ_{j,2}` and `Σ_j λ_{j,2} p^j mod p^f - 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SerreWeightLabel {
    pub diffs: Vec<i64>,
    pub twist: i64,
    pub p: u32,
}

pub(crate) fn pow(p: u32, e: usize) -> i64 {
    (p as i64).pow(e as u32)
}

impl SerreWeightLabel {
    pub fn new(diffs: Vec<i64>, twist: i64, p: u32) -> Self {
        let modulus = pow(p, diffs.len()) - 1;
        SerreWeightLabel { twist: twist.rem_euclid(modulus), diffs, p }
    }

    pub fn from_weight(lambda: &Weight, p: u32) -> Self {
        let twist = lambda.pairs.iter().enumerate().map(|(j, &(_, b))| b * pow(p, j)).sum();
        Self::new(lambda.diffs(), twist, p)
    }

    pub fn f(&self) -> usize {
        self.diffs.len()
    }

    pub fn is_regular(&self) -> bool {
        let p = self.p as i64;
        self.diffs.iter().all(|&d| (0..p - 1).contains(&d))
    }

    /// A representative weight `(d_j + m_j, m_j)` with `m_0 = twist` and
    /// `m_j = 0` otherwise.
    pub fn weight(&self) -> Weight {
        Weight::new(
            self.diffs.iter().enumerate().map(|(j, &d)| if j == 0 { (d + self.twist, self.twist) } else { (d, 0) }).collect(),
        )
    }
}

impl fmt::Display for SerreWeightLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F{:?}⊗det^{}", self.diffs, self.twist)
    }
}

/// A point `ω ∈ Λ_W ≅ Z^f` of the extension graph.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExtGraphPoint {
    pub omega: Vec<i64>,
}

impl ExtGraphPoint {
    pub fn new(omega: Vec<i64>) -> Self {
        ExtGraphPoint { omega }
    }

    pub fn zero(f: usize) -> Self {
        ExtGraphPoint { omega: vec![0; f] }
    }
}

/// `0 ≤ μ_{j,1} - μ_{j,2} + ω_j < p - 1` for all `j`.
pub fn window_check(mu: &Weight, omega: &ExtGraphPoint, p: u32) -> bool {
    let p = p as i64;
    mu.f() == omega.omega.len() && mu.diffs().iter().zip(&omega.omega).all(|(&d, &w)| (0..p - 1).contains(&(d + w)))
}

/// Split `μ` as `(r_j, 0) + (m_j, m_j)`, returning `(r_j, 0)` and the
/// determinant twist `Σ m_j p^j`.
pub fn reduce_to_base(mu: &Weight, p: u32) -> (Weight, i64) {
    let base = Weight::new(mu.diffs().into_iter().map(|d| (d, 0)).collect());
    let twist = mu.pairs.iter().enumerate().map(|(j, &(_, m))| m * pow(p, j)).sum();
    (base, twist)
}

/// `F(𝔱_μ(ω))` for a base weight `μ = (r_j, 0)`.
pub fn ext_graph_lambda(mu: &Weight, omega: &ExtGraphPoint, p: u32) -> Result<SerreWeightLabel> {
    if mu.pairs.iter().any(|&(_, b)| b != 0) {
        return Err(Error::Invalid("base weight must have the form (r_j, 0)".into()));
    }
    if !window_check(mu, omega, p) {
        return Err(Error::Invalid(format!("{:?} lies outside the extension graph window", omega.omega)));
    }
    let f = mu.f();
    let pi = p as i64;
    let r: Vec<i64> = mu.pairs.iter().map(|&(a, _)| a).collect();
    let delta: Vec<i64> = omega.omega.iter().map(|w| w.rem_euclid(2)).collect();
    let r_prime: Vec<i64> = (0..f)
        .map(|j| {
            let w = omega.omega[j];
            if delta[(j + 1) % f] == 0 {
                r[j] + w
            } else {
                pi - 2 - r[j] - w
            }
        })
        .collect();
    let twice_e: i64 = delta[0] * (pow(p, f) - 1) + (0..f).map(|j| (r[j] - r_prime[j]) * pow(p, j)).sum::<i64>();
    if twice_e % 2 != 0 {
        return Err(Error::Internal(format!("e(ω) is not integral for ω = {:?}", omega.omega)));
    }
    Ok(SerreWeightLabel::new(r_prime, twice_e / 2, p))
}

/// `F(𝔱_λ(ω))` for a label `λ` given up to its determinant twist.
pub fn ext_graph_from_label(base: &SerreWeightLabel, omega: &ExtGraphPoint) -> Result<SerreWeightLabel> {
    let mu = Weight::new(base.diffs.iter().map(|&d| (d, 0)).collect());
    let label = ext_graph_lambda(&mu, omega, base.p)?;
    Ok(SerreWeightLabel::new(label.diffs, label.twist + base.twist, base.p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn grid(ranges: &[(i64, i64)]) -> Vec<Vec<i64>> {
        let mut out = vec![vec![]];
        for &(lo, hi) in ranges {
            out = out
                .into_iter()
                .flat_map(|prefix: Vec<i64>| {
                    (lo..=hi).map(move |x| {
                        let mut v = prefix.clone();
                        v.push(x);
                        v
                    })
                })
                .collect();
        }
        out
    }

    #[test]
    fn classify_examples() {
        let c = classify_weight(&Weight::constant(2, (0, 0)), 31);
        assert_eq!(c, WeightClass { dominant: true, p_restricted: true, regular: true, depth: Some(0) });
        assert_eq!(classify_weight(&Weight::constant(3, (13, 0)), 31).depth, Some(13));
        let c = classify_weight(&Weight::constant(1, (30, 0)), 31);
        assert!(c.p_restricted && !c.regular);
        assert_eq!(c.depth, None);
    }

    #[test]
    fn depth_bounds_p() {
        for p in [2u32, 3, 5, 7, 31, 37] {
            for d in -2..p as i64 + 2 {
                if let Some(n) = classify_weight(&Weight::constant(1, (d, 0)), p).depth {
                    assert!(p as i64 >= 2 * n + 2);
                }
            }
        }
    }

    #[test]
    fn adm_counts_and_order() {
        let a1 = adm_set(1);
        assert_eq!(a1.iter().map(|w| w.comps[0]).collect::<Vec<_>>(), vec![
            AffineWeylElt::T21,
            AffineWeylElt::WT21,
            AffineWeylElt::T12
        ]);
        assert_eq!(adm_set(2).len(), 9);
        let a4 = adm_set(4);
        assert_eq!(a4.len(), 81);
        assert_eq!(a4.iter().collect::<HashSet<_>>().len(), 81);
        let idx: Vec<_> = a4.iter().map(|w| index_of(w).unwrap()).collect();
        assert!(idx.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn star_examples() {
        let t21 = ExtendedWeylElt::new(vec![AffineWeylElt::T21]);
        assert_eq!(star(&t21), t21);
        let wt21 = ExtendedWeylElt::new(vec![AffineWeylElt::WT21]);
        assert_eq!(star(&wt21), ExtendedWeylElt::new(vec![AffineWeylElt::new(Perm::Swap, (1, 2))]));
    }

    #[test]
    fn star_is_an_involution() {
        for f in 1..=5 {
            for w in adm_set(f) {
                assert_eq!(star(&star(&w)), w);
            }
        }
    }

    #[test]
    fn index_examples() {
        let w = ExtendedWeylElt::new(vec![AffineWeylElt::T21, AffineWeylElt::T12]);
        assert_eq!(index_of(&w).unwrap(), vec![1, 3]);
        assert_eq!(index_of(&ExtendedWeylElt::new(vec![AffineWeylElt::WT21])).unwrap(), vec![2]);
        assert!(index_of(&ExtendedWeylElt::new(vec![AffineWeylElt::new(Perm::Swap, (1, 2))])).is_err());
    }

    #[test]
    fn composition_laws() {
        let elts: Vec<AffineWeylElt> = grid(&[(0, 1), (-2, 2), (-2, 2)])
            .into_iter()
            .map(|v| AffineWeylElt::new(if v[0] == 0 { Perm::Identity } else { Perm::Swap }, (v[1], v[2])))
            .collect();
        let id = AffineWeylElt::new(Perm::Identity, (0, 0));
        for &a in &elts {
            assert_eq!(a.compose(a.inverse()), id);
            for &b in elts.iter().step_by(7) {
                for &c in elts.iter().step_by(11) {
                    assert_eq!(a.compose(b).compose(c), a.compose(b.compose(c)));
                }
            }
        }
        // s t_ν = t_{s(ν)} s
        let s = AffineWeylElt::new(Perm::Swap, (0, 0));
        let w = AffineWeylElt::new(Perm::Swap, (2, 1));
        let t = AffineWeylElt::new(Perm::Identity, (1, 2));
        assert_eq!(t.compose(s), w);
    }

    #[test]
    fn ext_graph_examples() {
        let mu = Weight::constant(1, (13, 0));
        assert_eq!(ext_graph_lambda(&mu, &ExtGraphPoint::zero(1), 31).unwrap(), SerreWeightLabel::new(vec![13], 0, 31));
        assert_eq!(ext_graph_lambda(&mu, &ExtGraphPoint::new(vec![1]), 31).unwrap(), SerreWeightLabel::new(vec![15], 14, 31));
        let mu2 = Weight::new(vec![(13, 0), (14, 0)]);
        let l = ext_graph_lambda(&mu2, &ExtGraphPoint::new(vec![2, 0]), 31).unwrap();
        assert_eq!(l, SerreWeightLabel::new(vec![15, 14], -1, 31));
        assert_eq!(l.twist, 31 * 31 - 2);
    }

    #[test]
    fn window_examples() {
        let mu = Weight::constant(1, (13, 0));
        assert!(window_check(&mu, &ExtGraphPoint::zero(1), 31));
        assert!(!window_check(&mu, &ExtGraphPoint::new(vec![17]), 31));
        assert!(window_check(&mu, &ExtGraphPoint::new(vec![-13]), 31));
    }

    #[test]
    fn label_is_invariant_under_the_lattice() {
        // adding (p - π)(c_j, c_j) must not change the label
        let p = 31;
        let lambda = Weight::new(vec![(20, 3), (7, 5), (9, 9)]);
        for c in grid(&[(-2, 2), (-2, 2), (-2, 2)]) {
            let f = 3;
            let shifted = Weight::new(
                (0..f)
                    .map(|j| {
                        let m = p as i64 * c[j] - c[(j + f - 1) % f];
                        (lambda.pairs[j].0 + m, lambda.pairs[j].1 + m)
                    })
                    .collect(),
            );
            assert_eq!(SerreWeightLabel::from_weight(&shifted, p), SerreWeightLabel::from_weight(&lambda, p));
        }
    }

    #[test]
    fn ext_graph_injective_and_integral_on_window() {
        for p in [31u32, 37] {
            for f in 1..=3 {
                let r: Vec<i64> = (0..f as i64).map(|j| 12 + 3 * j).collect();
                let mu = Weight::new(r.iter().map(|&x| (x, 0)).collect());
                let ranges: Vec<(i64, i64)> = r.iter().map(|&x| (-x, p as i64 - 2 - x)).collect();
                let mut seen = HashSet::new();
                let mut count = 0;
                for omega in grid(&ranges) {
                    let label = ext_graph_lambda(&mu, &ExtGraphPoint::new(omega), p).unwrap();
                    assert!(label.is_regular());
                    seen.insert(label);
                    count += 1;
                }
                assert_eq!(seen.len(), count, "p={p} f={f}");
            }
        }
    }

    #[test]
    fn out_of_window_is_rejected() {
        let mu = Weight::constant(1, (13, 0));
        assert!(ext_graph_lambda(&mu, &ExtGraphPoint::new(vec![17]), 31).is_err());
        assert!(ext_graph_lambda(&Weight::constant(1, (13, 1)), &ExtGraphPoint::zero(1), 31).is_err());
    }
}
