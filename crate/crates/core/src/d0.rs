//! Jordan–Hölder structure of the components `D̃_{0,σ}(ρ̄)`.
//!
//! Constituents of the component with socle `σ = F(λ)` are the `F(𝔱_λ(a))`
//! for `a ∈ Z^f` in the extension graph window, subject to
//! `sgn(a_j) ≠ ε_j` on `J` and a floor-sum bound; `σ' ≤ σ''` when every
//! coordinate of `a'` lies between 0 and the matching coordinate of `a''`.

use std::collections::{BTreeMap, BTreeSet};

use crate::rho::{product, serre_weights, RhoBar};
use crate::sweep::{par_map, Execution};
use crate::weyl::{ext_graph_from_label, window_check, ExtGraphPoint, SerreWeightLabel, Weight};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SocleProfile {
    /// `eps[j] ∈ {±1}` for `j ∈ J`, 0 otherwise.
    pub eps: Vec<i64>,
    pub base: SerreWeightLabel,
}

impl SocleProfile {
    pub fn j_set(&self) -> Vec<usize> {
        (0..self.eps.len()).filter(|&j| self.eps[j] != 0).collect()
    }
}

/// How the floor-sum bound treats negative coordinates.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum JhReading {
    /// `Σ ⌊|a_j| / 2⌋ ≤ 1`.
    #[default]
    Absolute,
    /// `Σ ⌊a_j / 2⌋ ≤ 1`.
    Signed,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constituent {
    pub a: Vec<i64>,
    pub label: SerreWeightLabel,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentStructure {
    pub sigma_b: Vec<i64>,
    pub profile: SocleProfile,
    /// Sorted by `a`; index 0 need not be the socle.
    pub constituents: Vec<Constituent>,
    /// Covering pairs `(lower, upper)` of the order, as constituent indices.
    pub edges: Vec<(usize, usize)>,
}

fn sgn(x: i64) -> i64 {
    x.signum()
}

/// `b_j` lies between 0 and `a_j` for every `j`.
pub fn between(b: &[i64], a: &[i64]) -> bool {
    b.iter().zip(a).all(|(&y, &x)| x.min(0) <= y && y <= x.max(0))
}

fn floor_sum(a: &[i64], reading: JhReading) -> i64 {
    a.iter()
        .map(|&x| match reading {
            JhReading::Absolute => x.abs() / 2,
            JhReading::Signed => x.div_euclid(2),
        })
        .sum()
}

fn base_weight(label: &SerreWeightLabel) -> Weight {
    Weight::new(label.diffs.iter().map(|&d| (d, 0)).collect())
}

/// Labels generated from `base` by the `b`-vectors with `b_j ∈ {0, eps_j}`,
/// or `None` if one of them leaves the window.
fn generated_labels(base: &SerreWeightLabel, eps: &[i64]) -> Option<BTreeSet<SerreWeightLabel>> {
    let options: Vec<Vec<i64>> = eps.iter().map(|&e| if e == 0 { vec![0] } else { vec![0, e] }).collect();
    product(&options).into_iter().map(|b| ext_graph_from_label(base, &ExtGraphPoint::new(b)).ok()).collect()
}

/// Every `(J, ε)` whose generated labels at `σ` reproduce `W(ρ̄)`.
pub fn profile_candidates(rho: &RhoBar, sigma: &SerreWeightLabel) -> Result<Vec<Vec<i64>>> {
    let target: BTreeSet<SerreWeightLabel> = serre_weights(rho)?.labels().into_iter().collect();
    Ok(product(&vec![vec![0, 1, -1]; rho.f])
        .into_iter()
        .filter(|eps| generated_labels(sigma, eps).as_ref() == Some(&target))
        .collect())
}

pub fn socle_profile(rho: &RhoBar, sigma_b: &[i64]) -> Result<SocleProfile> {
    let weights = serre_weights(rho)?;
    let entry = weights
        .find(sigma_b)
        .ok_or_else(|| Error::Precondition(format!("b = {sigma_b:?} does not index a Serre weight of rho")))?;
    let mut found = profile_candidates(rho, &entry.label)?;
    match found.len() {
        1 => Ok(SocleProfile { eps: found.pop().unwrap(), base: entry.label.clone() }),
        0 => Err(Error::Internal(format!("no socle profile reproduces W(rho) at {}", entry.label))),
        n => Err(Error::Internal(format!("{n} socle profiles reproduce W(rho) at {}", entry.label))),
    }
}

pub fn jh_component(rho: &RhoBar, sigma_b: &[i64], reading: JhReading) -> Result<ComponentStructure> {
    let profile = socle_profile(rho, sigma_b)?;
    let base = &profile.base;
    let mu = base_weight(base);
    let p = rho.p as i64;
    let ranges: Vec<Vec<i64>> = base.diffs.iter().map(|&d| (-d..=p - 2 - d).collect()).collect();
    let mut constituents = Vec::new();
    for a in product(&ranges) {
        if a.iter().zip(&profile.eps).any(|(&x, &e)| e != 0 && sgn(x) == e) || floor_sum(&a, reading) > 1 {
            continue;
        }
        let omega = ExtGraphPoint::new(a);
        debug_assert!(window_check(&mu, &omega, rho.p));
        let label = ext_graph_from_label(base, &omega)?;
        constituents.push(Constituent { a: omega.omega, label });
    }
    let index: BTreeMap<&[i64], usize> = constituents.iter().enumerate().map(|(i, c)| (c.a.as_slice(), i)).collect();
    let mut edges = Vec::new();
    for (i, c) in constituents.iter().enumerate() {
        for j in 0..c.a.len() {
            let x = c.a[j];
            if x == 0 {
                continue;
            }
            let mut lower = c.a.clone();
            lower[j] -= sgn(x);
            if let Some(&k) = index.get(lower.as_slice()) {
                edges.push((k, i));
            }
        }
    }
    edges.sort_unstable();
    Ok(ComponentStructure { sigma_b: sigma_b.to_vec(), profile, constituents, edges })
}

impl ComponentStructure {
    pub fn len(&self) -> usize {
        self.constituents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.constituents.is_empty()
    }

    pub fn find(&self, a: &[i64]) -> Option<&Constituent> {
        self.constituents.iter().find(|c| c.a == a)
    }

    pub fn socle(&self) -> Option<&Constituent> {
        self.find(&vec![0; self.profile.eps.len()])
    }

    pub fn leq(&self, i: usize, k: usize) -> bool {
        between(&self.constituents[i].a, &self.constituents[k].a)
    }

    pub fn multiplicity_free(&self) -> bool {
        let labels: BTreeSet<&SerreWeightLabel> = self.constituents.iter().map(|c| &c.label).collect();
        labels.len() == self.len()
    }

    /// Every `b` between 0 and a constituent is a constituent.
    pub fn downward_closed(&self) -> bool {
        let present: BTreeSet<&[i64]> = self.constituents.iter().map(|c| c.a.as_slice()).collect();
        self.constituents.iter().all(|c| {
            let ranges: Vec<Vec<i64>> = c.a.iter().map(|&x| (x.min(0)..=x.max(0)).collect()).collect();
            product(&ranges).iter().all(|b| present.contains(b.as_slice()))
        })
    }

    /// Reflexive, antisymmetric and transitive; the socle is the unique
    /// minimum.
    pub fn order_is_partial(&self) -> bool {
        let n = self.len();
        let Some(socle) = self.constituents.iter().position(|c| c.a.iter().all(|&x| x == 0)) else { return false };
        (0..n).all(|i| {
            self.leq(i, i)
                && self.leq(socle, i)
                && (0..n).all(|k| {
                    (!(self.leq(i, k) && self.leq(k, i)) || i == k)
                        && (0..n).all(|m| !(self.leq(i, k) && self.leq(k, m)) || self.leq(i, m))
                })
        })
    }
}

#[derive(Clone, Debug)]
pub struct D0Report {
    pub components: Vec<ComponentStructure>,
    /// Component labels are pairwise distinct.
    pub multiplicity_free: bool,
    /// Each `σ ∈ W(ρ̄)` occurs exactly once overall, as its own socle.
    pub weights_occur_once: bool,
    /// Socles enumerate `W(ρ̄)`.
    pub socles_enumerate: bool,
    pub downward_closed: bool,
    pub partial_orders: bool,
}

impl D0Report {
    pub fn all_hold(&self) -> bool {
        self.multiplicity_free && self.weights_occur_once && self.socles_enumerate && self.downward_closed && self.partial_orders
    }
}

pub fn d0_checks(rho: &RhoBar, reading: JhReading, exec: Execution) -> Result<D0Report> {
    d0_checks_with(rho, reading, exec, true)
}

/// As [`d0_checks`]; the cubic order check can be skipped on large inputs.
pub fn d0_checks_with(rho: &RhoBar, reading: JhReading, exec: Execution, check_order: bool) -> Result<D0Report> {
    let weights = serre_weights(rho)?;
    let components = par_map(exec, &weights.entries, |e| jh_component(rho, &e.b, reading))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    let labels = weights.labels();
    let weights_occur_once = components.iter().zip(&labels).all(|(c, own)| {
        c.socle().is_some_and(|s| &s.label == own)
            && labels.iter().all(|l| {
                let n: usize = components.iter().map(|c| c.constituents.iter().filter(|x| &x.label == l).count()).sum();
                n == 1
            })
    });
    let socles: BTreeSet<SerreWeightLabel> = components.iter().filter_map(|c| c.socle().map(|s| s.label.clone())).collect();
    let expected: BTreeSet<SerreWeightLabel> = labels.iter().cloned().collect();
    Ok(D0Report {
        multiplicity_free: components.iter().all(ComponentStructure::multiplicity_free),
        weights_occur_once,
        socles_enumerate: socles == expected && components.len() == labels.len(),
        downward_closed: components.iter().all(ComponentStructure::downward_closed),
        partial_orders: !check_order || components.iter().all(ComponentStructure::order_is_partial),
        components,
    })
}

/// `dim F(λ) = Π (d_j + 1)`.
pub fn serre_weight_dim(label: &SerreWeightLabel) -> u64 {
    label.diffs.iter().map(|&d| (d + 1) as u64).product()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::rho::Mode;
    use crate::sample::{random_rho, zero_patterns, RhoSpec};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn rho(p: u32, r: &[i64], a: &[i64]) -> RhoBar {
        let field = Field::prime(p).unwrap();
        let n = r.len();
        RhoBar::new(
            field.clone(),
            r.to_vec(),
            a.iter().map(|&x| field.from_int(x)).collect(),
            vec![field.one(); n],
            vec![field.from_int(2); n],
            false,
            Mode::Strict,
        )
        .unwrap()
    }

    #[test]
    fn dims() {
        assert_eq!(serre_weight_dim(&SerreWeightLabel::new(vec![0], 0, 31)), 1);
        assert_eq!(serre_weight_dim(&SerreWeightLabel::new(vec![13], 4, 31)), 14);
        assert_eq!(serre_weight_dim(&SerreWeightLabel::new(vec![13, 14], 0, 31)), 210);
    }

    #[test]
    fn profile_at_b_zero() {
        let r = rho(31, &[13, 14], &[0, 0]);
        let p = socle_profile(&r, &[0, 0]).unwrap();
        assert_eq!(p.eps, vec![1, 1]);
        let r = rho(31, &[13, 14], &[3, 0]);
        let p = socle_profile(&r, &[0, 0]).unwrap();
        assert_eq!(p.j_set(), vec![0]);
        let r = rho(31, &[13], &[3]);
        assert!(socle_profile(&r, &[0]).unwrap().j_set().is_empty());
        assert!(matches!(socle_profile(&r, &[1]), Err(Error::Precondition(_))));
    }

    #[test]
    fn j_size_matches_zero_count() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for f in 1..=3 {
            for mask in zero_patterns(f) {
                let r = random_rho(&mut rng, &RhoSpec::strict(37, f, false).with_zero_pattern(mask));
                for b in crate::rho::b_vectors(&r) {
                    assert_eq!(socle_profile(&r, &b).unwrap().j_set().len(), r.zero_count());
                }
            }
        }
    }

    /// Direct count over the integers, independent of the extension graph.
    fn count_f1(diff: i64, p: i64, eps: i64, reading: JhReading) -> usize {
        let mut n = 0;
        for a in -diff..=p - 2 - diff {
            let q = match reading {
                JhReading::Absolute => a.abs() / 2,
                JhReading::Signed => a.div_euclid(2),
            };
            if q <= 1 && (eps == 0 || a.signum() != eps) {
                n += 1;
            }
        }
        n
    }

    #[test]
    fn f1_nonsplit_counts() {
        let r = rho(31, &[13], &[5]);
        let signed = jh_component(&r, &[0], JhReading::Signed).unwrap();
        assert_eq!(signed.len(), 17);
        assert_eq!(signed.len(), count_f1(13, 31, 0, JhReading::Signed));
        let abs = jh_component(&r, &[0], JhReading::Absolute).unwrap();
        assert_eq!(abs.len(), count_f1(13, 31, 0, JhReading::Absolute));
        assert_eq!(abs.len(), 7);
        assert!(abs.downward_closed() && abs.order_is_partial());
    }

    #[test]
    fn f2_split_against_double_loop() {
        let r = rho(31, &[13, 16], &[0, 0]);
        for e in serre_weights(&r).unwrap().entries {
            let c = jh_component(&r, &e.b, JhReading::Absolute).unwrap();
            let (d, eps) = (&c.profile.base.diffs, &c.profile.eps);
            let mut n = 0;
            for a0 in -d[0]..=29 - d[0] {
                for a1 in -d[1]..=29 - d[1] {
                    let ok0 = eps[0] == 0 || a0.signum() != eps[0];
                    let ok1 = eps[1] == 0 || a1.signum() != eps[1];
                    if ok0 && ok1 && a0.abs() / 2 + a1.abs() / 2 <= 1 {
                        n += 1;
                    }
                }
            }
            assert_eq!(c.len(), n);
            assert_eq!(c.len(), 12);
        }
    }

    #[test]
    fn checks_hold_for_all_patterns() {
        for p in [31, 37] {
            let mut rng = ChaCha8Rng::seed_from_u64(p as u64);
            for f in 1..=3 {
                for mask in zero_patterns(f) {
                    let r = random_rho(&mut rng, &RhoSpec::strict(p, f, false).with_zero_pattern(mask));
                    let rep = d0_checks(&r, JhReading::Absolute, Execution::Sequential).unwrap();
                    assert!(rep.all_hold(), "{r:?}");
                    assert_eq!(rep.components.len(), 1 << r.zero_count());
                }
            }
        }
    }

    #[test]
    fn signed_reading_is_not_downward_closed_for_f2_nonsplit() {
        let r = rho(31, &[13, 14], &[2, 3]);
        let c = jh_component(&r, &[0, 0], JhReading::Signed).unwrap();
        assert!(!c.downward_closed());
    }

    #[test]
    fn hasse_edges_are_covers() {
        let r = rho(31, &[13, 14], &[0, 3]);
        for e in serre_weights(&r).unwrap().entries {
            let c = jh_component(&r, &e.b, JhReading::Absolute).unwrap();
            for &(lo, hi) in &c.edges {
                assert!(c.leq(lo, hi) && lo != hi);
                let between_any = (0..c.len()).any(|m| m != lo && m != hi && c.leq(lo, m) && c.leq(m, hi));
                assert!(!between_any);
            }
        }
    }
}
