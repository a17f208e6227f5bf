//! Probabilistic polynomial identity testing by random evaluation.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::poly::MultiPoly;
use super::rational::Rational;

/// Sample coordinates are integers in `[-SAMPLE_BOUND, SAMPLE_BOUND]`.
pub const SAMPLE_BOUND: i64 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IdentityCheck {
    /// Identical term maps.
    Equal,
    /// Every sampled evaluation agreed.
    ProbablyEqual { trials: u32 },
    /// Evaluations differ at `witness`.
    Different { witness: Vec<Rational> },
}

impl IdentityCheck {
    pub fn holds(&self) -> bool {
        !matches!(self, IdentityCheck::Different { .. })
    }
}

pub fn random_identity_check(f: &MultiPoly, g: &MultiPoly, trials: u32, seed: u64) -> IdentityCheck {
    assert_eq!(f.space(), g.space(), "identity check across spaces");
    assert!(trials >= 1, "at least one trial");
    if f == g {
        return IdentityCheck::Equal;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = f.nvars();
    for _ in 0..trials {
        let point: Vec<Rational> =
            (0..n).map(|_| Rational::from_integer(rng.gen_range(-SAMPLE_BOUND..=SAMPLE_BOUND).into())).collect();
        if f.eval(&point) != g.eval(&point) {
            return IdentityCheck::Different { witness: point };
        }
    }
    IdentityCheck::ProbablyEqual { trials }
}
