//! Random generators for test sweeps and benchmarks.

use rand::Rng;

use crate::field::{Field, FieldElement};
use crate::rho::{Mode, RhoBar, STRICT_DEPTH};

/// Shape of the random `ρ̄` to draw.
#[derive(Clone, Debug)]
pub struct RhoSpec {
    pub field: Field,
    pub f: usize,
    pub irreducible: bool,
    /// Inclusive range for each `r_j`.
    pub r_range: (i64, i64),
    /// `Some(mask)` fixes which `a_j` vanish (`true` = zero); `None` draws
    /// each `a_j` uniformly from the field.
    pub zero_pattern: Option<Vec<bool>>,
    pub mode: Mode,
}

impl RhoSpec {
    pub fn permissive(p: u32, f: usize, irreducible: bool) -> Self {
        RhoSpec {
            field: Field::prime(p).expect("p must be prime"),
            f,
            irreducible,
            r_range: (0, p as i64 - 2),
            zero_pattern: None,
            mode: Mode::Permissive,
        }
    }

    pub fn strict(p: u32, f: usize, irreducible: bool) -> Self {
        RhoSpec {
            r_range: (STRICT_DEPTH, p as i64 - 2 - STRICT_DEPTH),
            mode: Mode::Strict,
            ..Self::permissive(p, f, irreducible)
        }
    }

    pub fn with_zero_pattern(mut self, mask: Vec<bool>) -> Self {
        self.zero_pattern = Some(mask);
        self
    }

    pub fn with_r_range(mut self, lo: i64, hi: i64) -> Self {
        self.r_range = (lo, hi);
        self
    }

    pub fn with_field(mut self, field: Field) -> Self {
        self.field = field;
        self
    }
}

pub fn random_rho<R: Rng + ?Sized>(rng: &mut R, spec: &RhoSpec) -> RhoBar {
    let field = &spec.field;
    let f = spec.f;
    let r: Vec<i64> = (0..f).map(|_| rng.gen_range(spec.r_range.0..=spec.r_range.1)).collect();
    let a: Vec<FieldElement> = (0..f)
        .map(|j| {
            if spec.irreducible {
                return field.zero();
            }
            match &spec.zero_pattern {
                Some(mask) if mask[j] => field.zero(),
                Some(_) => field.random_nonzero(rng),
                None => field.random(rng),
            }
        })
        .collect();
    let alpha = (0..f).map(|_| field.random_nonzero(rng)).collect();
    let beta = (0..f).map(|_| field.random_nonzero(rng)).collect();
    RhoBar::new(field.clone(), r, a, alpha, beta, spec.irreducible, spec.mode).expect("sampled parameters are valid")
}

/// All `2^f` zero patterns, pattern `k` zeroing `a_j` when bit `j` of `k` is set.
pub fn zero_patterns(f: usize) -> Vec<Vec<bool>> {
    (0..1u32 << f).map(|k| (0..f).map(|j| k >> j & 1 == 1).collect()).collect()
}
