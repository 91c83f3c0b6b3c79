#![allow(dead_code)]

use infodual::entropy::{Atom, JointDistribution};
use infodual::{EntropyPoint, GroundSet, InfExpr, Rat, Subset};
use rand::rngs::StdRng;
use rand::seq::index::sample;
use rand::Rng;

pub fn ground(n: usize) -> GroundSet {
    GroundSet::letters(&"ABCDEFGH"[..n]).unwrap()
}

pub fn random_rat(rng: &mut StdRng) -> Rat {
    let num: i64 = rng.gen_range(-12..=12);
    let den: i64 = rng.gen_range(1..=7);
    Rat::new(num.into(), den.into())
}

/// Sparse expression with up to eight random terms.
pub fn random_expr(rng: &mut StdRng, n: usize) -> InfExpr {
    let g = ground(n);
    let terms = rng.gen_range(1..=8.min(g.dim()));
    let coeffs: Vec<(Subset, Rat)> = (0..terms)
        .map(|_| (Subset(rng.gen_range(1..=g.full().bits())), random_rat(rng)))
        .collect();
    InfExpr::from_coeffs(g, coeffs).unwrap()
}

pub fn random_point(rng: &mut StdRng, n: usize) -> EntropyPoint {
    EntropyPoint::from_fn(ground(n), |_| random_rat(rng))
}

/// Random distribution on `n` variables with alphabet `arity` and at most
/// `max_support` atoms.
pub fn random_distribution(rng: &mut StdRng, n: usize, arity: usize, max_support: usize) -> JointDistribution {
    let space = arity.pow(n as u32);
    let size = rng.gen_range(1..=max_support.min(space));
    let codes = sample(rng, space, size).into_vec();
    let weights: Vec<i64> = (0..size).map(|_| rng.gen_range(1..=20)).collect();
    let total: i64 = weights.iter().sum();
    let atoms = codes
        .iter()
        .zip(&weights)
        .map(|(code, w)| {
            let mut c = *code;
            let tuple = (0..n)
                .map(|_| {
                    let s = c % arity;
                    c /= arity;
                    s.to_string()
                })
                .collect();
            Atom { tuple, mass: Rat::new((*w).into(), total.into()) }
        })
        .collect();
    JointDistribution::new(ground(n), atoms).unwrap()
}

/// Residuals recomputed from subset labels rather than bitmasks.
pub fn residuals_by_label(c: &InfExpr) -> Vec<Rat> {
    let g = c.ground();
    g.labels()
        .iter()
        .map(|label| {
            c.terms()
                .filter(|(s, _)| g.subset_labels(*s).contains(&label.as_str()))
                .map(|(_, r)| r.clone())
                .fold(Rat::from_integer(0.into()), |a, b| a + b)
        })
        .collect()
}

/// Dual coefficients through the point route: `c^⊥_J = ⟨c, (e_J)^⊥⟩`
/// with `e_J` the indicator point of `J`.
pub fn dual_by_points(c: &InfExpr) -> InfExpr {
    let g = c.ground().clone();
    let coeffs: Vec<(Subset, Rat)> = g
        .nonempty_subsets()
        .map(|j| {
            let indicator = EntropyPoint::from_fn(g.clone(), |s| {
                if s == j {
                    Rat::from_integer(1.into())
                } else {
                    Rat::from_integer(0.into())
                }
            });
            (j, c.pair(&indicator.dual_point()).unwrap())
        })
        .collect();
    InfExpr::from_coeffs(g, coeffs).unwrap()
}

/// All basic-inequality instances `I(J;K|L)` with disjoint parts, `J`, `K`
/// nonempty, and `J` before `K` by mask.
pub fn basic_instances(n: usize) -> Vec<InfExpr> {
    let g = ground(n);
    let mut out = Vec::new();
    for code in 0..4usize.pow(n as u32) {
        let (mut j, mut k, mut l) = (0u32, 0u32, 0u32);
        let mut c = code;
        for i in 0..n {
            match c % 4 {
                1 => j |= 1 << i,
                2 => k |= 1 << i,
                3 => l |= 1 << i,
                _ => {}
            }
            c /= 4;
        }
        if j == 0 || k == 0 || j > k {
            continue;
        }
        let mut e = InfExpr::zero(g.clone());
        e.add_mutual_info(&Rat::from_integer(1.into()), Subset(j), Subset(k), Subset(l));
        out.push(e);
    }
    out
}
