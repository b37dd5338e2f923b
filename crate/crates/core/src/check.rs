//! Verification reports and the exhaustive/randomized checking regimes.
//!
//! Randomized mode is polynomial identity testing: every identity checked
//! here is multilinear in its arguments, so evaluating it exactly on vectors
//! with integer coordinates drawn uniformly from `[-10^6, 10^6]` errs (reports
//! a false pass) with probability at most `degree / (2·10^6 + 1)` per trial
//! by the Schwartz–Zippel lemma; over 𝔽_p the coordinates are reduced mod p
//! and the bound becomes `degree / p`.

use std::collections::BTreeMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::scalar::{FieldSpec, Scalar};

/// Bound on random integer coordinates.
pub const RANDOM_COORD_BOUND: i64 = 1_000_000;
/// Largest dimension checked exhaustively on basis triples by default.
pub const EXHAUSTIVE_TRIPLE_CAP: usize = 32;
/// Largest dimension checked exhaustively on basis pairs by default.
pub const EXHAUSTIVE_PAIR_CAP: usize = 81;
pub const DEFAULT_TRIALS: usize = 20;
pub const MORPHISM_TRIALS: usize = 200;
/// Violations retained per report; the total is still counted.
const MAX_RECORDED: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckMode {
    Exhaustive,
    Random { trials: usize, seed: u64 },
}

impl CheckMode {
    /// Default for identities with three arguments (associativity and friends).
    pub fn for_triples(dim: usize, seed: u64) -> Self {
        if dim <= EXHAUSTIVE_TRIPLE_CAP {
            CheckMode::Exhaustive
        } else {
            CheckMode::Random { trials: DEFAULT_TRIALS, seed }
        }
    }

    /// Default for identities with two arguments (morphisms, correspondences).
    pub fn for_pairs(dim: usize, seed: u64) -> Self {
        if dim <= EXHAUSTIVE_PAIR_CAP {
            CheckMode::Exhaustive
        } else {
            CheckMode::Random { trials: MORPHISM_TRIALS, seed }
        }
    }

    pub fn is_exhaustive(&self) -> bool {
        matches!(self, CheckMode::Exhaustive)
    }
}

impl fmt::Display for CheckMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CheckMode::Exhaustive => write!(f, "exhaustive"),
            CheckMode::Random { trials, seed } => write!(f, "random:{trials} (seed {seed})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub axiom: String,
    /// Basis indices in exhaustive mode, `[trial]` in random mode.
    pub witness: Vec<usize>,
    pub lhs: Vec<Scalar>,
    pub rhs: Vec<Scalar>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |v: &[Scalar]| v.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(", ");
        write!(
            f,
            "{} at {:?}: lhs = [{}], rhs = [{}]",
            self.axiom,
            self.witness,
            show(&self.lhs),
            show(&self.rhs)
        )
    }
}

/// Outcome of a verification; passes iff no violation was found.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CheckReport {
    pub violations: Vec<Violation>,
    pub violation_count: usize,
    /// Number of identity instances evaluated.
    pub checked: usize,
    /// Violations per axiom, including those not retained.
    pub axiom_counts: BTreeMap<String, usize>,
}

impl CheckReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn passed(&self) -> bool {
        self.violation_count == 0
    }

    pub fn first_violation(&self) -> Option<&Violation> {
        self.violations.first()
    }

    pub fn record(&mut self, v: Violation) {
        self.violation_count += 1;
        *self.axiom_counts.entry(v.axiom.clone()).or_default() += 1;
        if self.violations.len() < MAX_RECORDED {
            self.violations.push(v);
        }
    }

    /// Records one instance of an identity; a violation if the sides differ.
    pub fn compare(&mut self, axiom: &str, witness: &[usize], lhs: Vec<Scalar>, rhs: Vec<Scalar>) {
        self.checked += 1;
        if lhs != rhs {
            self.record(Violation { axiom: axiom.to_string(), witness: witness.to_vec(), lhs, rhs });
        }
    }

    pub fn require(&mut self, axiom: &str, witness: &[usize], ok: bool) {
        self.checked += 1;
        if !ok {
            self.record(Violation { axiom: axiom.to_string(), witness: witness.to_vec(), lhs: vec![], rhs: vec![] });
        }
    }

    pub fn merge(&mut self, other: CheckReport) {
        self.checked += other.checked;
        self.violation_count += other.violation_count;
        for (axiom, c) in other.axiom_counts {
            *self.axiom_counts.entry(axiom).or_default() += c;
        }
        for v in other.violations {
            if self.violations.len() < MAX_RECORDED {
                self.violations.push(v);
            }
        }
    }

    pub fn has_axiom(&self, axiom: &str) -> bool {
        self.axiom_counts.contains_key(axiom)
    }

    pub fn summary(&self) -> String {
        if self.passed() {
            format!("pass ({} checks)", self.checked)
        } else {
            format!("FAIL ({} of {} checks violated)", self.violation_count, self.checked)
        }
    }
}

pub fn merge_all(reports: impl IntoIterator<Item = CheckReport>) -> CheckReport {
    let mut out = CheckReport::new();
    for r in reports {
        out.merge(r);
    }
    out
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_vector(field: &FieldSpec, dim: usize, rng: &mut impl Rng) -> Vec<Scalar> {
    (0..dim)
        .map(|_| field.from_i64(rng.gen_range(-RANDOM_COORD_BOUND..=RANDOM_COORD_BOUND)))
        .collect()
}

/// `count` random vectors per trial, all drawn up front so that trials can
/// run in parallel with a deterministic outcome.
pub fn random_samples(
    field: &FieldSpec,
    dims: &[usize],
    trials: usize,
    seed: u64,
) -> Vec<Vec<Vec<Scalar>>> {
    let mut r = rng(seed);
    (0..trials).map(|_| dims.iter().map(|&d| random_vector(field, d, &mut r)).collect()).collect()
}
