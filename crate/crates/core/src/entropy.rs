//! Entropies of finite joint distributions with exact rational masses.

use std::collections::{BTreeMap, HashSet};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::expr::InfExpr;
use crate::ground::{GroundSet, Subset};
use crate::point::EntropyPoint;
use crate::rational::{self, Rat};
use crate::{Error, Result};

/// One support point: a symbol per variable and its probability.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Atom {
    pub tuple: Vec<String>,
    pub mass: Rat,
}

/// A finite joint distribution. Masses are positive and sum to one exactly;
/// tuples are distinct and have one symbol per ground variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JointDistribution {
    ground: GroundSet,
    atoms: Vec<Atom>,
}

#[derive(Serialize, Deserialize)]
struct AtomFile {
    t: Vec<String>,
    p: String,
}

#[derive(Serialize, Deserialize)]
struct DistributionFile {
    variables: Vec<String>,
    atoms: Vec<AtomFile>,
}

/// Value of an expression on a distribution, with per-subset contributions
/// `c_J · H(X_J)` in ascending subset order.
#[derive(Clone, Debug, Serialize)]
pub struct EvalReport {
    pub value: f64,
    pub breakdown: Vec<(String, f64)>,
}

impl JointDistribution {
    pub fn new(ground: GroundSet, atoms: Vec<Atom>) -> Result<Self> {
        let bad = |m: String| Err(Error::InvalidDistribution(m));
        if atoms.is_empty() {
            return bad("no atoms".into());
        }
        let mut seen = HashSet::new();
        let mut total = Rat::zero();
        for a in &atoms {
            if a.tuple.len() != ground.len() {
                return bad(format!("tuple {:?} has arity {}, expected {}", a.tuple, a.tuple.len(), ground.len()));
            }
            if !a.mass.is_positive() {
                return bad(format!("tuple {:?} has non-positive mass {}", a.tuple, a.mass));
            }
            if !seen.insert(&a.tuple) {
                return bad(format!("tuple {:?} appears twice", a.tuple));
            }
            total += &a.mass;
        }
        if !total.is_one() {
            return bad(format!("masses sum to {}, not 1", rational::format_rat(&total)));
        }
        Ok(JointDistribution { ground, atoms })
    }

    /// Convenience constructor for `(symbols, mass)` pairs where each symbol
    /// is a single character of `tuple`, e.g. `("01001", 1/4)`.
    pub fn from_strings(ground: GroundSet, atoms: &[(&str, Rat)]) -> Result<Self> {
        let atoms = atoms
            .iter()
            .map(|(t, p)| Atom { tuple: t.chars().map(String::from).collect(), mass: p.clone() })
            .collect();
        JointDistribution::new(ground, atoms)
    }

    /// Parses `{"variables": [...], "atoms": [{"t": [...], "p": "1/4"}, ...]}`.
    pub fn from_json(text: &str) -> Result<Self> {
        let file: DistributionFile = serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
        let ground = GroundSet::new(file.variables)?;
        let atoms = file
            .atoms
            .into_iter()
            .map(|a| Ok(Atom { tuple: a.t, mass: rational::parse_rat(&a.p)? }))
            .collect::<Result<Vec<_>>>()?;
        JointDistribution::new(ground, atoms)
    }

    pub fn to_json(&self) -> String {
        let file = DistributionFile {
            variables: self.ground.labels().to_vec(),
            atoms: self
                .atoms
                .iter()
                .map(|a| AtomFile { t: a.tuple.clone(), p: rational::format_rat(&a.mass) })
                .collect(),
        };
        serde_json::to_string_pretty(&file).expect("serializable")
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    /// Masses grouped by the projection onto `s`, in lexicographic order of
    /// the projected tuples.
    pub fn marginal(&self, s: Subset) -> Result<Vec<(Vec<String>, Rat)>> {
        if s.is_empty() {
            return Err(Error::EmptySubset);
        }
        if !s.is_subset_of(self.ground.full()) {
            return Err(Error::Precondition("subset outside the ground set".into()));
        }
        let mut groups: BTreeMap<Vec<&str>, Rat> = BTreeMap::new();
        for a in &self.atoms {
            let key: Vec<&str> = s.indices().map(|i| a.tuple[i].as_str()).collect();
            *groups.entry(key).or_insert_with(Rat::zero) += &a.mass;
        }
        Ok(groups
            .into_iter()
            .map(|(k, p)| (k.into_iter().map(String::from).collect(), p))
            .collect())
    }

    /// Shannon entropy of `X_s` in bits.
    pub fn entropy(&self, s: Subset) -> Result<f64> {
        Ok(shannon_bits(self.marginal(s)?.iter().map(|(_, p)| rational::to_f64(p))))
    }

    /// Entropy with `H(∅) = 0`.
    fn entropy_or_zero(&self, s: Subset) -> f64 {
        if s.is_empty() {
            0.0
        } else {
            self.entropy(s).expect("nonempty subset of the ground set")
        }
    }

    /// `(H(X_J))_J` over every nonempty subset.
    pub fn entropic_vector(&self) -> EntropyPoint<f64> {
        EntropyPoint::from_fn(self.ground.clone(), |s| self.entropy_or_zero(s))
    }

    /// `Σ c_J H(X_J)` with a per-subset breakdown.
    pub fn evaluate(&self, c: &InfExpr) -> Result<EvalReport> {
        if c.ground() != &self.ground {
            return Err(Error::GroundMismatch {
                left: c.ground().to_string(),
                right: self.ground.to_string(),
            });
        }
        let breakdown: Vec<(String, f64)> = c
            .terms()
            .map(|(s, coef)| (self.ground.subset_key(s), rational::to_f64(coef) * self.entropy_or_zero(s)))
            .collect();
        let value = breakdown.iter().map(|(_, v)| v).sum();
        Ok(EvalReport { value, breakdown })
    }

    /// `I(X_a ; X_b | X_c) = H(ac) + H(bc) - H(abc) - H(c)`.
    pub fn cond_mutual_info(&self, a: Subset, b: Subset, c: Subset) -> Result<f64> {
        if a.is_empty() || b.is_empty() {
            return Err(Error::EmptySubset);
        }
        Ok(self.entropy_or_zero(a.union(c)) + self.entropy_or_zero(b.union(c))
            - self.entropy_or_zero(a.union(b).union(c))
            - self.entropy_or_zero(c))
    }

    /// `I(A;B|CE) + I(A;B|DE) + I(C;D|E) - I(A;B|E)`.
    pub fn ingleton_quantity(&self, a: Subset, b: Subset, c: Subset, d: Subset, e: Subset) -> Result<f64> {
        if [c, d].iter().any(|s| s.is_empty()) {
            return Err(Error::EmptySubset);
        }
        Ok(self.cond_mutual_info(a, b, c.union(e))? + self.cond_mutual_info(a, b, d.union(e))?
            + self.cond_mutual_info(c, d, e)?
            - self.cond_mutual_info(a, b, e)?)
    }

    /// Ground subset from labels; shorthand for `self.ground().subset_of`.
    pub fn subset(&self, labels: &[&str]) -> Result<Subset> {
        self.ground.subset_of(labels)
    }
}

/// `-Σ p log2 p` over positive probabilities.
pub fn shannon_bits(probs: impl Iterator<Item = f64>) -> f64 {
    let h: f64 = probs.filter(|p| *p > 0.0).map(|p| -p * p.log2()).sum();
    // deterministic marginals can round to a tiny negative value
    h.max(0.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn bits(n: usize) -> GroundSet {
        GroundSet::new((1..=n).map(|i| format!("X{i}"))).unwrap()
    }

    fn two_fair_bits() -> JointDistribution {
        JointDistribution::from_strings(
            bits(2),
            &[("00", rat(1, 4)), ("01", rat(1, 4)), ("10", rat(1, 4)), ("11", rat(1, 4))],
        )
        .unwrap()
    }

    fn copy_bit() -> JointDistribution {
        JointDistribution::from_strings(bits(2), &[("00", rat(1, 2)), ("11", rat(1, 2))]).unwrap()
    }

    #[test]
    fn validation() {
        let g = bits(2);
        let half = rat(1, 2);
        assert!(JointDistribution::from_strings(g.clone(), &[("00", half.clone())]).is_err());
        assert!(JointDistribution::from_strings(g.clone(), &[("00", half.clone()), ("00", half.clone())]).is_err());
        assert!(JointDistribution::from_strings(g.clone(), &[("0", half.clone()), ("11", half.clone())]).is_err());
        assert!(JointDistribution::from_strings(g.clone(), &[("00", rat(3, 2)), ("11", rat(-1, 2))]).is_err());
        assert!(JointDistribution::from_strings(g, &[]).is_err());
    }

    #[test]
    fn marginals() {
        let d = two_fair_bits();
        let m = d.marginal(Subset(1)).unwrap();
        assert_eq!(m, vec![(vec!["0".to_string()], rat(1, 2)), (vec!["1".to_string()], rat(1, 2))]);
        assert_eq!(d.marginal(Subset::EMPTY), Err(Error::EmptySubset));
        let single = JointDistribution::from_strings(bits(3), &[("010", rat(1, 1))]).unwrap();
        for s in single.ground().nonempty_subsets() {
            assert_eq!(single.marginal(s).unwrap().len(), 1);
            assert_eq!(single.entropy(s).unwrap(), 0.0);
        }
    }

    #[test]
    fn entropies() {
        let coin = JointDistribution::from_strings(bits(1), &[("0", rat(1, 2)), ("1", rat(1, 2))]).unwrap();
        assert_eq!(coin.entropy(Subset(1)).unwrap(), 1.0);
        assert_eq!(two_fair_bits().entropy(Subset(3)).unwrap(), 2.0);
        assert_eq!(two_fair_bits().entropic_vector().values(), &[1.0, 1.0, 2.0]);
        assert_eq!(copy_bit().entropic_vector().values(), &[1.0, 1.0, 1.0]);
    }

    #[test]
    fn mutual_information() {
        let g = bits(2);
        let mi = InfExpr::mutual_info(&g, &["X1"], &["X2"], &[]).unwrap();
        assert!(two_fair_bits().evaluate(&mi).unwrap().value.abs() <= 1e-12);
        assert!((copy_bit().evaluate(&mi).unwrap().value - 1.0).abs() <= 1e-12);
        assert!(two_fair_bits().cond_mutual_info(Subset(1), Subset(2), Subset::EMPTY).unwrap().abs() <= 1e-12);
        let report = copy_bit().evaluate(&mi).unwrap();
        assert_eq!(report.breakdown.len(), 3);
        let sum: f64 = report.breakdown.iter().map(|(_, v)| v).sum();
        assert!((sum - report.value).abs() <= 1e-12);
    }

    #[test]
    fn ingleton_on_copies_of_one_bit() {
        let g = GroundSet::letters("ABCD").unwrap();
        let d = JointDistribution::from_strings(g, &[("0000", rat(1, 2)), ("1111", rat(1, 2))]).unwrap();
        let s = |l: &str| d.subset(&[l]).unwrap();
        let v = d.ingleton_quantity(s("A"), s("B"), s("C"), s("D"), Subset::EMPTY).unwrap();
        assert!(v.abs() <= 1e-12);
    }

    #[test]
    fn json_round_trip() {
        let text = r#"{"variables": ["A", "B"], "atoms": [{"t": ["0", "x"], "p": "1/3"}, {"t": ["1", "y"], "p": "2/3"}]}"#;
        let d = JointDistribution::from_json(text).unwrap();
        assert_eq!(d.atoms()[1].mass, rat(2, 3));
        assert_eq!(JointDistribution::from_json(&d.to_json()).unwrap(), d);
        assert!(matches!(JointDistribution::from_json("{"), Err(Error::Json(_))));
        let bad = r#"{"variables": ["A"], "atoms": [{"t": ["0"], "p": "1/2"}]}"#;
        assert!(matches!(JointDistribution::from_json(bad), Err(Error::InvalidDistribution(_))));
    }
}
