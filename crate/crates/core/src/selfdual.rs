//! Search for self-duality certificates: a substitution (optionally combined
//! with conditioning on a fresh variable) that turns an expression into its
//! own formal dual.

use crate::expr::InfExpr;
use crate::ground::{GroundSet, Subset};
use crate::substitution::Substitution;
use crate::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SelfDualVerdict {
    Instance,
    ConditionalVersion,
    NotFound,
}

/// Which operation of a conditional-version witness is applied first.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConditionOrder {
    /// Condition on `fresh`, then substitute (the fresh variable has an image).
    ConditionFirst,
    /// Substitute into `ground ∖ {fresh}`, then condition on `fresh`.
    SubstituteFirst,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SelfDualCertificate {
    pub verdict: SelfDualVerdict,
    pub substitution: Option<Substitution>,
    pub fresh: Option<String>,
    pub order: Option<ConditionOrder>,
}

/// Bounds of the certificate search.
#[derive(Clone, Debug)]
pub struct SelfDualSearch {
    /// Largest image size per variable; images of size 0 are always allowed.
    pub max_image: usize,
    /// Also try conditional versions with one fresh conditioning variable.
    pub allow_conditional: bool,
}

impl Default for SelfDualSearch {
    fn default() -> Self {
        SelfDualSearch { max_image: 1, allow_conditional: true }
    }
}

impl SelfDualCertificate {
    fn not_found() -> Self {
        SelfDualCertificate { verdict: SelfDualVerdict::NotFound, substitution: None, fresh: None, order: None }
    }

    /// Replays the witness on `c`. `None` when there is no witness.
    pub fn replay(&self, c: &InfExpr) -> Result<Option<InfExpr>> {
        let Some(sub) = &self.substitution else {
            return Ok(None);
        };
        let out = match (self.verdict, self.order, &self.fresh) {
            (SelfDualVerdict::Instance, _, _) => sub.apply(c)?,
            (SelfDualVerdict::ConditionalVersion, Some(ConditionOrder::ConditionFirst), Some(z)) => {
                sub.apply(&c.conditional_version(z)?)?
            }
            (SelfDualVerdict::ConditionalVersion, Some(ConditionOrder::SubstituteFirst), Some(z)) => {
                sub.apply(c)?.conditional_version(z)?.widen(c.ground())?
            }
            _ => return Ok(None),
        };
        Ok(Some(out))
    }

    /// True when the witness reproduces `c.dual()` exactly.
    pub fn verify(&self, c: &InfExpr) -> bool {
        match self.replay(c) {
            Ok(Some(e)) => e == c.dual(),
            _ => false,
        }
    }
}

/// Candidate images in search order: nonempty subsets by size then mask,
/// followed by the empty set.
fn candidate_images(target: Subset, max_image: usize) -> Vec<Subset> {
    let mut out: Vec<Subset> = Vec::new();
    for size in 1..=max_image {
        out.extend(target.subsets().filter(|s| s.len() == size));
    }
    out.push(Subset::EMPTY);
    out
}

/// Enumerates assignments of `candidates` to the variables in `free`, with
/// the other source variables fixed by `base`; returns the first assignment
/// accepted by `accept`.
fn odometer(
    base: &[Subset],
    free: &[usize],
    candidates: &[Subset],
    mut accept: impl FnMut(&[Subset]) -> bool,
) -> Option<Vec<Subset>> {
    let mut images = base.to_vec();
    let mut digits = vec![0usize; free.len()];
    loop {
        for (d, &v) in digits.iter().zip(free) {
            images[v] = candidates[*d];
        }
        if accept(&images) {
            return Some(images);
        }
        // advance, last variable fastest
        let mut k = free.len();
        loop {
            if k == 0 {
                return None;
            }
            k -= 1;
            digits[k] += 1;
            if digits[k] < candidates.len() {
                break;
            }
            digits[k] = 0;
        }
    }
}

fn map_expr(c: &InfExpr, images: &[Subset], target: &GroundSet) -> InfExpr {
    let mut out = InfExpr::zero(target.clone());
    for (s, coef) in c.terms() {
        let img = s.indices().fold(Subset::EMPTY, |acc, i| acc.union(images[i]));
        out.add_h(img, coef);
    }
    out
}

fn fresh_label(ground: &GroundSet) -> String {
    std::iter::once("Z".to_string())
        .chain((1..).map(|i| format!("Z{i}")))
        .find(|l| !ground.contains(l))
        .expect("unbounded label supply")
}

/// Searches, in a fixed order, for a witness that `c.dual()` is an instance or
/// a conditional version of `c`. `NotFound` only means no witness exists
/// within the configured search space.
pub fn is_self_dual(c: &InfExpr, config: &SelfDualSearch) -> SelfDualCertificate {
    let ground = c.ground();
    let dual = c.dual();
    let identity: Vec<Subset> = (0..ground.len()).map(Subset::singleton).collect();
    let support: Vec<usize> = c.support().indices().collect();
    let candidates = candidate_images(ground.full(), config.max_image);

    // instance
    if let Some(images) = odometer(&identity, &support, &candidates, |imgs| {
        map_expr(c, imgs, ground) == dual
    }) {
        let sub = Substitution::from_masks(ground.clone(), ground.clone(), images)
            .expect("images lie in the ground set");
        return SelfDualCertificate {
            verdict: SelfDualVerdict::Instance,
            substitution: Some(sub),
            fresh: None,
            order: None,
        };
    }
    if !config.allow_conditional {
        return SelfDualCertificate::not_found();
    }

    // condition on a fresh variable, then substitute back into the ground set
    let z = fresh_label(ground);
    let conditioned = c.conditional_version(&z).expect("fresh label is unused");
    let mut base = identity.clone();
    base.push(Subset::EMPTY);
    let mut free = support.clone();
    free.push(ground.len());
    if let Some(images) = odometer(&base, &free, &candidates, |imgs| {
        map_expr(&conditioned, imgs, ground) == dual
    }) {
        let sub = Substitution::from_masks(conditioned.ground().clone(), ground.clone(), images)
            .expect("images lie in the ground set");
        return SelfDualCertificate {
            verdict: SelfDualVerdict::ConditionalVersion,
            substitution: Some(sub),
            fresh: Some(z),
            order: Some(ConditionOrder::ConditionFirst),
        };
    }

    // substitute into N ∖ {z}, then condition on z ∈ N
    for zi in 0..ground.len() {
        let rest: Vec<&str> = ground.labels().iter().map(String::as_str).filter(|l| *l != ground.label(zi)).collect();
        let Ok(reduced) = GroundSet::new(rest.iter().copied()) else {
            continue; // n = 1 leaves nothing to substitute into
        };
        let zlabel = ground.label(zi);
        let rest_candidates = candidate_images(reduced.full(), config.max_image);
        let base = vec![Subset::EMPTY; ground.len()];
        if let Some(images) = odometer(&base, &support, &rest_candidates, |imgs| {
            let mapped = map_expr(c, imgs, &reduced);
            match mapped.conditional_version(zlabel).and_then(|e| e.widen(ground)) {
                Ok(e) => e == dual,
                Err(_) => false,
            }
        }) {
            let sub = Substitution::from_masks(ground.clone(), reduced, images)
                .expect("images lie in the reduced ground set");
            return SelfDualCertificate {
                verdict: SelfDualVerdict::ConditionalVersion,
                substitution: Some(sub),
                fresh: Some(zlabel.to_string()),
                order: Some(ConditionOrder::SubstituteFirst),
            };
        }
    }
    SelfDualCertificate::not_found()
}
