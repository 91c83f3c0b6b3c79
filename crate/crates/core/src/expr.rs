//! Linear information expressions `Σ c_J H(X_J)` with exact coefficients.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::ground::{GroundSet, Subset};
use crate::rational::Rat;
use crate::{Error, Result};

/// A named information quantity over labels, used to build expressions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InfoTerm {
    /// `H(vars | given)`.
    Entropy { vars: Vec<String>, given: Vec<String> },
    /// `I(left ; right | given)`.
    MutualInfo { left: Vec<String>, right: Vec<String>, given: Vec<String> },
}

fn owned(labels: &[&str]) -> Vec<String> {
    labels.iter().map(|s| s.to_string()).collect()
}

impl InfoTerm {
    pub fn h(vars: &[&str], given: &[&str]) -> InfoTerm {
        InfoTerm::Entropy { vars: owned(vars), given: owned(given) }
    }

    pub fn mi(left: &[&str], right: &[&str], given: &[&str]) -> InfoTerm {
        InfoTerm::MutualInfo { left: owned(left), right: owned(right), given: owned(given) }
    }
}

/// Sparse coefficient vector indexed by nonempty subsets of a ground set.
///
/// Zero coefficients are never stored, so structural equality is exact
/// equality of the underlying vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InfExpr {
    ground: GroundSet,
    coeffs: BTreeMap<Subset, Rat>,
}

impl InfExpr {
    pub fn zero(ground: GroundSet) -> InfExpr {
        InfExpr { ground, coeffs: BTreeMap::new() }
    }

    /// Builds an expression from `(subset, coefficient)` pairs, summing repeats.
    pub fn from_coeffs<I>(ground: GroundSet, coeffs: I) -> Result<InfExpr>
    where
        I: IntoIterator<Item = (Subset, Rat)>,
    {
        let mut e = InfExpr::zero(ground);
        for (s, c) in coeffs {
            if !s.is_subset_of(e.ground.full()) {
                return Err(Error::Precondition(format!("subset mask {:#b} outside ground", s.0)));
            }
            e.add_h(s, &c);
        }
        Ok(e)
    }

    /// Expands entropy and mutual-information terms into raw `H` terms.
    pub fn from_terms(ground: GroundSet, terms: &[(Rat, InfoTerm)]) -> Result<InfExpr> {
        let mut e = InfExpr::zero(ground);
        for (coef, term) in terms {
            match term {
                InfoTerm::Entropy { vars, given } => {
                    let j = e.ground.subset_of(vars)?;
                    let k = e.ground.subset_of(given)?;
                    if j.is_empty() {
                        return Err(Error::EmptySubset);
                    }
                    e.add_cond_entropy(coef, j, k);
                }
                InfoTerm::MutualInfo { left, right, given } => {
                    let j = e.ground.subset_of(left)?;
                    let k = e.ground.subset_of(right)?;
                    let l = e.ground.subset_of(given)?;
                    if j.is_empty() || k.is_empty() {
                        return Err(Error::EmptySubset);
                    }
                    e.add_mutual_info(coef, j, k, l);
                }
            }
        }
        Ok(e)
    }

    /// `I(left ; right | given)` on `ground`.
    pub fn mutual_info(ground: &GroundSet, left: &[&str], right: &[&str], given: &[&str]) -> Result<InfExpr> {
        InfExpr::from_terms(ground.clone(), &[(Rat::one(), InfoTerm::mi(left, right, given))])
    }

    /// `H(vars | given)` on `ground`.
    pub fn entropy(ground: &GroundSet, vars: &[&str], given: &[&str]) -> Result<InfExpr> {
        InfExpr::from_terms(ground.clone(), &[(Rat::one(), InfoTerm::h(vars, given))])
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, s: Subset) -> Rat {
        self.coeffs.get(&s).cloned().unwrap_or_else(Rat::zero)
    }

    /// Nonzero terms in ascending mask order.
    pub fn terms(&self) -> impl Iterator<Item = (Subset, &Rat)> {
        self.coeffs.iter().map(|(s, c)| (*s, c))
    }

    /// Union of all subsets carrying a nonzero coefficient.
    pub fn support(&self) -> Subset {
        self.coeffs.keys().fold(Subset::EMPTY, |acc, s| acc.union(*s))
    }

    /// Adds `coef * H(X_s)`; `H(∅)` is zero and ignored.
    pub fn add_h(&mut self, s: Subset, coef: &Rat) {
        if s.is_empty() || coef.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(s).or_insert_with(Rat::zero);
        *entry += coef;
        if entry.is_zero() {
            self.coeffs.remove(&s);
        }
    }

    /// Adds `coef * H(X_j | X_k)`.
    pub fn add_cond_entropy(&mut self, coef: &Rat, j: Subset, k: Subset) {
        self.add_h(j.union(k), coef);
        self.add_h(k, &-coef);
    }

    /// Adds `coef * I(X_j ; X_k | X_l)`.
    pub fn add_mutual_info(&mut self, coef: &Rat, j: Subset, k: Subset, l: Subset) {
        let neg = -coef;
        self.add_h(j.union(l), coef);
        self.add_h(k.union(l), coef);
        self.add_h(j.union(k).union(l), &neg);
        self.add_h(l, &neg);
    }

    fn check_same_ground(&self, other: &InfExpr) -> Result<()> {
        if self.ground != other.ground {
            return Err(Error::GroundMismatch {
                left: self.ground.to_string(),
                right: other.ground.to_string(),
            });
        }
        Ok(())
    }

    /// `self += k * other`.
    pub fn add_scaled(&mut self, other: &InfExpr, k: &Rat) -> Result<()> {
        self.check_same_ground(other)?;
        for (s, c) in &other.coeffs {
            self.add_h(*s, &(c * k));
        }
        Ok(())
    }

    pub fn plus(&self, other: &InfExpr) -> Result<InfExpr> {
        let mut out = self.clone();
        out.add_scaled(other, &Rat::one())?;
        Ok(out)
    }

    pub fn minus(&self, other: &InfExpr) -> Result<InfExpr> {
        let mut out = self.clone();
        out.add_scaled(other, &-Rat::one())?;
        Ok(out)
    }

    pub fn scaled(&self, k: &Rat) -> InfExpr {
        let mut out = InfExpr::zero(self.ground.clone());
        for (s, c) in &self.coeffs {
            out.add_h(*s, &(c * k));
        }
        out
    }

    /// Exact coefficient-wise equality; errors if the ground sets differ.
    pub fn expr_equal(&self, other: &InfExpr) -> Result<bool> {
        self.check_same_ground(other)?;
        Ok(self.coeffs == other.coeffs)
    }

    /// Re-indexes this expression onto `wider`, which must contain every
    /// label of the current ground set.
    pub fn widen(&self, wider: &GroundSet) -> Result<InfExpr> {
        let mut out = InfExpr::zero(wider.clone());
        for (s, c) in &self.coeffs {
            out.add_h(self.ground.embed(*s, wider)?, c);
        }
        Ok(out)
    }

    /// `r_i = Σ_{J ∋ i} c_J` for each variable, in ground order.
    pub fn residuals(&self) -> Vec<Rat> {
        let mut r = vec![Rat::zero(); self.ground.len()];
        for (s, c) in &self.coeffs {
            for i in s.indices() {
                r[i] += c;
            }
        }
        r
    }

    pub fn is_balanced(&self) -> bool {
        self.residuals().iter().all(Zero::is_zero)
    }

    /// Subtracts `r_i * H(X_i | X_{N∖i})` for every variable `i`. The result
    /// is balanced and an unchanged copy when `self` already is.
    pub fn balance(&self) -> InfExpr {
        let full = self.ground.full();
        let mut out = self.clone();
        for (i, r) in self.residuals().iter().enumerate() {
            let rest = full.minus(Subset::singleton(i));
            out.add_cond_entropy(&-r, Subset::singleton(i), rest);
        }
        out
    }

    /// Formal dual: each `H(X_J)` becomes `-H(X_J | X_{N∖J}) + Σ_{j∈J} H(X_j)`.
    pub fn dual(&self) -> InfExpr {
        let full = self.ground.full();
        let mut out = InfExpr::zero(self.ground.clone());
        for (s, c) in &self.coeffs {
            // -H(J|N∖J) = H(N∖J) - H(N)
            out.add_h(full.minus(*s), c);
            out.add_h(full, &-c);
            for j in s.indices() {
                out.add_h(Subset::singleton(j), c);
            }
        }
        out
    }

    /// Conditional version on `ground ∪ {fresh}`: every `H(X_J)` becomes
    /// `H(X_J, Z) - H(Z)`.
    pub fn conditional_version(&self, fresh: &str) -> Result<InfExpr> {
        let ground = self.ground.with_label(fresh)?;
        let z = Subset::singleton(ground.len() - 1);
        let mut out = InfExpr::zero(ground);
        for (s, c) in &self.coeffs {
            out.add_cond_entropy(c, *s, z);
        }
        Ok(out)
    }

    /// Pairing `⟨c, h⟩ = Σ c_J h(J)`.
    pub fn pair<T: crate::point::Scalar>(&self, h: &crate::point::EntropyPoint<T>) -> Result<T> {
        if &self.ground != h.ground() {
            return Err(Error::GroundMismatch {
                left: self.ground.to_string(),
                right: h.ground().to_string(),
            });
        }
        let mut acc = T::zero();
        for (s, c) in &self.coeffs {
            acc = acc + T::from_rat(c) * h.get(*s).clone();
        }
        Ok(acc)
    }
}
