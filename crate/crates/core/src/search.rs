//! Randomized search for distributions violating an expression.

use rand::rngs::StdRng;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};

use crate::entropy::{Atom, JointDistribution};
use crate::expr::InfExpr;
use crate::rational::Rat;

#[derive(Clone, Debug)]
pub struct SearchConfig {
    /// Number of support tuples per candidate.
    pub support_size: usize,
    /// Alphabet size of each variable.
    pub arity: usize,
    pub trials: usize,
    /// Hill-climbing moves per trial.
    pub steps: usize,
    pub seed: u64,
    /// A violation means a value below `-tolerance`.
    pub tolerance: f64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig { support_size: 8, arity: 2, trials: 200, steps: 400, seed: 0, tolerance: 1e-9 }
    }
}

const MAX_WEIGHT: u64 = 1 << 12;

fn trial_seed(master: u64, trial: usize) -> u64 {
    // splitmix64 step
    let mut z = master.wrapping_add((trial as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

struct Candidate {
    tuples: Vec<u64>,
    weights: Vec<u64>,
}

impl Candidate {
    fn to_distribution(&self, c: &InfExpr, arity: usize) -> JointDistribution {
        let n = c.ground().len();
        let total: u64 = self.weights.iter().sum();
        let atoms = self
            .tuples
            .iter()
            .zip(&self.weights)
            .map(|(code, w)| {
                let mut code = *code;
                let tuple = (0..n)
                    .map(|_| {
                        let s = code % arity as u64;
                        code /= arity as u64;
                        s.to_string()
                    })
                    .collect();
                Atom { tuple, mass: Rat::new((*w).into(), total.into()) }
            })
            .collect();
        JointDistribution::new(c.ground().clone(), atoms).expect("distinct tuples with positive masses")
    }
}

fn value(c: &InfExpr, cand: &Candidate, arity: usize) -> f64 {
    cand.to_distribution(c, arity).evaluate(c).expect("same ground set").value
}

/// Searches random distributions (bounded support, hill-climbing on masses
/// and tuples) for one with `c < -tolerance`. Deterministic for a fixed seed.
pub fn search_counterexample(c: &InfExpr, config: &SearchConfig) -> Option<JointDistribution> {
    let n = c.ground().len();
    let space = (config.arity as u64).checked_pow(n as u32)?;
    let support = config.support_size.min(space as usize).max(1);
    if config.arity == 0 {
        return None;
    }
    for trial in 0..config.trials {
        let mut rng = StdRng::seed_from_u64(trial_seed(config.seed, trial));
        let size = rng.gen_range(1..=support);
        let tuples: Vec<u64> = sample(&mut rng, space as usize, size).into_iter().map(|t| t as u64).collect();
        let weights = (0..size).map(|_| rng.gen_range(1..=MAX_WEIGHT)).collect();
        let mut cur = Candidate { tuples, weights };
        let mut best = value(c, &cur, config.arity);
        for _ in 0..config.steps {
            if best < -config.tolerance {
                break;
            }
            let i = rng.gen_range(0..cur.tuples.len());
            let mut next = Candidate { tuples: cur.tuples.clone(), weights: cur.weights.clone() };
            match rng.gen_range(0..3) {
                0 => next.weights[i] = (next.weights[i] * 2).min(MAX_WEIGHT),
                1 => next.weights[i] = (next.weights[i] / 2).max(1),
                _ => {
                    let t = rng.gen_range(0..space);
                    if next.tuples.contains(&t) {
                        continue;
                    }
                    next.tuples[i] = t;
                }
            }
            let v = value(c, &next, config.arity);
            if v < best {
                best = v;
                cur = next;
            }
        }
        if best < -config.tolerance {
            return Some(cur.to_distribution(c, config.arity));
        }
    }
    None
}
