//! The polymatroid cone: elemental inequalities, exact Shannon-type
//! certification, and membership tests.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};

use crate::expr::InfExpr;
use crate::ground::{GroundSet, Subset};
use crate::lp::{conic_combination, ConicOutcome};
use crate::point::{EntropyPoint, Scalar};
use crate::rational::Rat;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ElementalKind {
    /// `H(X_i | X_{N∖i}) ≥ 0`.
    Monotone { i: usize },
    /// `I(X_i ; X_j | X_K) ≥ 0` with `i < j`, `K ⊆ N∖{i,j}`.
    Submodular { i: usize, j: usize, cond: Subset },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Elemental {
    pub kind: ElementalKind,
    pub expr: InfExpr,
}

impl ElementalKind {
    /// `⟨e, h⟩` computed directly from the four (or two) subset values.
    pub fn evaluate<T: Scalar>(&self, h: &EntropyPoint<T>) -> T {
        let full = h.ground().full();
        match *self {
            ElementalKind::Monotone { i } => {
                h.value(full) - h.value(full.minus(Subset::singleton(i)))
            }
            ElementalKind::Submodular { i, j, cond } => {
                let si = Subset::singleton(i);
                let sj = Subset::singleton(j);
                h.value(si.union(cond)) + h.value(sj.union(cond))
                    - h.value(si.union(sj).union(cond))
                    - h.value(cond)
            }
        }
    }
}

/// Kinds of the elemental inequalities on `n` variables, in canonical order:
/// the `n` monotone ones, then `I(X_i;X_j|X_K)` for `i < j` and ascending `K`.
pub fn elemental_kinds(n: usize) -> Vec<ElementalKind> {
    let full = Subset(((1u64 << n) - 1) as u32);
    let mut out: Vec<ElementalKind> = (0..n).map(|i| ElementalKind::Monotone { i }).collect();
    for i in 0..n {
        for j in i + 1..n {
            let rest = full.minus(Subset::singleton(i)).minus(Subset::singleton(j));
            out.extend(rest.subsets().map(|cond| ElementalKind::Submodular { i, j, cond }));
        }
    }
    out
}

/// All `n + C(n,2)·2^(n-2)` elemental inequalities as expressions.
pub fn elemental_inequalities(ground: &GroundSet) -> Vec<Elemental> {
    let full = ground.full();
    elemental_kinds(ground.len())
        .into_iter()
        .map(|kind| {
            let mut expr = InfExpr::zero(ground.clone());
            match kind {
                ElementalKind::Monotone { i } => {
                    let si = Subset::singleton(i);
                    expr.add_cond_entropy(&Rat::one(), si, full.minus(si));
                }
                ElementalKind::Submodular { i, j, cond } => {
                    expr.add_mutual_info(&Rat::one(), Subset::singleton(i), Subset::singleton(j), cond);
                }
            }
            Elemental { kind, expr }
        })
        .collect()
}

/// Values `⟨e_k, h⟩` for every elemental, in canonical order.
pub fn elemental_values<T: Scalar>(h: &EntropyPoint<T>) -> Vec<T> {
    elemental_kinds(h.ground().len()).iter().map(|k| k.evaluate(h)).collect()
}

/// Exact polymatroid test: every elemental inequality holds at `h`.
pub fn is_polymatroid_point(h: &EntropyPoint<Rat>) -> bool {
    elemental_values(h).iter().all(|v| !v.is_negative())
}

/// Polymatroid test with slack: every elemental value is `≥ -tol`.
pub fn is_polymatroid_point_within(h: &EntropyPoint<f64>, tol: f64) -> bool {
    elemental_values(h).iter().all(|v| *v >= -tol)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ShannonVerdict {
    ShannonType,
    NotShannonType,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ShannonCertificate {
    pub verdict: ShannonVerdict,
    /// Nonzero multipliers keyed by elemental index.
    pub multipliers: Option<BTreeMap<usize, Rat>>,
    /// Polymatroid point with `⟨c, h⟩ < 0`.
    pub separator: Option<EntropyPoint<Rat>>,
}

impl ShannonCertificate {
    /// Re-checks the certificate against `c` from scratch, without the solver.
    pub fn verify(&self, c: &InfExpr) -> Result<(), String> {
        match self.verdict {
            ShannonVerdict::ShannonType => {
                let y = self.multipliers.as_ref().ok_or("missing multipliers")?;
                let elementals = elemental_inequalities(c.ground());
                let mut sum = InfExpr::zero(c.ground().clone());
                for (k, v) in y {
                    if v.is_negative() {
                        return Err(format!("negative multiplier for elemental {k}"));
                    }
                    let e = elementals.get(*k).ok_or_else(|| format!("no elemental {k}"))?;
                    sum.add_scaled(&e.expr, v).map_err(|e| e.to_string())?;
                }
                if &sum == c {
                    Ok(())
                } else {
                    Err("multipliers do not reproduce the expression".into())
                }
            }
            ShannonVerdict::NotShannonType => {
                let h = self.separator.as_ref().ok_or("missing separator")?;
                for (k, e) in elemental_inequalities(c.ground()).iter().enumerate() {
                    let v = e.expr.pair(h).map_err(|e| e.to_string())?;
                    if v.is_negative() {
                        return Err(format!("separator violates elemental {k}"));
                    }
                }
                let v = c.pair(h).map_err(|e| e.to_string())?;
                if v.is_negative() {
                    Ok(())
                } else {
                    Err("separator does not pair negatively with the expression".into())
                }
            }
        }
    }
}

fn dense(e: &InfExpr) -> Vec<Rat> {
    let mut v = vec![Rat::zero(); e.ground().dim()];
    for (s, c) in e.terms() {
        v[s.dense_index()] = c.clone();
    }
    v
}

/// Decides exactly whether `c ≥ 0` is a nonnegative combination of elemental
/// inequalities, returning multipliers or a separating polymatroid point.
pub fn is_shannon_type(c: &InfExpr) -> ShannonCertificate {
    let ground = c.ground();
    let columns: Vec<Vec<Rat>> = elemental_inequalities(ground).iter().map(|e| dense(&e.expr)).collect();
    match conic_combination(&columns, &dense(c)) {
        ConicOutcome::Combination(y) => ShannonCertificate {
            verdict: ShannonVerdict::ShannonType,
            multipliers: Some(y.into_iter().enumerate().filter(|(_, v)| !v.is_zero()).collect()),
            separator: None,
        },
        ConicOutcome::Separator(h) => ShannonCertificate {
            verdict: ShannonVerdict::NotShannonType,
            multipliers: None,
            separator: Some(EntropyPoint::new(ground.clone(), h).expect("dimension matches")),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn g(letters: &str) -> GroundSet {
        GroundSet::letters(letters).unwrap()
    }

    #[test]
    fn elemental_counts() {
        let names = ["A", "AB", "ABC", "ABCD", "ABCDE"];
        let expected = [1, 3, 9, 28, 85];
        for (n, e) in names.iter().zip(expected) {
            assert_eq!(elemental_inequalities(&g(n)).len(), e, "n = {}", n.len());
        }
    }

    #[test]
    fn two_variable_elementals() {
        let g2 = g("AB");
        let es: Vec<InfExpr> = elemental_inequalities(&g2).into_iter().map(|e| e.expr).collect();
        assert_eq!(es[0], InfExpr::entropy(&g2, &["A"], &["B"]).unwrap());
        assert_eq!(es[1], InfExpr::entropy(&g2, &["B"], &["A"]).unwrap());
        assert_eq!(es[2], InfExpr::mutual_info(&g2, &["A"], &["B"], &[]).unwrap());
    }

    #[test]
    fn single_variable_cone() {
        let g1 = g("A");
        let es = elemental_inequalities(&g1);
        assert_eq!(es.len(), 1);
        assert_eq!(es[0].expr, InfExpr::entropy(&g1, &["A"], &[]).unwrap());
        let neg = InfExpr::entropy(&g1, &["A"], &[]).unwrap().scaled(&int(-1));
        let cert = is_shannon_type(&neg);
        assert_eq!(cert.verdict, ShannonVerdict::NotShannonType);
        assert_eq!(cert.separator.as_ref().unwrap().values()[0], int(1));
        cert.verify(&neg).unwrap();
    }

    #[test]
    fn polymatroid_examples() {
        let p = |v: [Rat; 3]| EntropyPoint::new(g("AB"), v.to_vec()).unwrap();
        assert!(is_polymatroid_point(&p([int(1), int(1), rat(3, 2)])));
        assert!(!is_polymatroid_point(&p([int(0), int(0), int(1)])));
        assert!(is_polymatroid_point(&EntropyPoint::zero(g("ABC"))));
    }

    #[test]
    fn basic_inequality_is_shannon_type() {
        let g4 = g("ABCD");
        let c = InfExpr::mutual_info(&g4, &["A"], &["B"], &["C"]).unwrap();
        let cert = is_shannon_type(&c);
        assert_eq!(cert.verdict, ShannonVerdict::ShannonType);
        cert.verify(&c).unwrap();
    }

    #[test]
    fn zero_expression_is_shannon_type() {
        let c = InfExpr::zero(g("ABC"));
        let cert = is_shannon_type(&c);
        assert_eq!(cert.verdict, ShannonVerdict::ShannonType);
        assert!(cert.multipliers.as_ref().unwrap().is_empty());
    }

    #[test]
    fn tampered_certificates_are_rejected() {
        let g2 = g("AB");
        let c = InfExpr::mutual_info(&g2, &["A"], &["B"], &[]).unwrap();
        let mut cert = is_shannon_type(&c);
        cert.multipliers.as_mut().unwrap().insert(0, int(1));
        assert!(cert.verify(&c).is_err());
        let bad = ShannonCertificate {
            verdict: ShannonVerdict::NotShannonType,
            multipliers: None,
            separator: Some(EntropyPoint::new(g2, vec![int(1), int(1), int(2)]).unwrap()),
        };
        assert!(bad.verify(&c).is_err());
    }
}
