//! Named inequalities used throughout the crate, as golden coefficient data.

use num_traits::One;

use crate::expr::{InfExpr, InfoTerm};
use crate::ground::GroundSet;
use crate::rational::Rat;
use crate::Result;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedInequality {
    pub name: &'static str,
    pub expr: InfExpr,
    pub provenance: &'static str,
}

impl NamedInequality {
    pub fn ground(&self) -> &GroundSet {
        self.expr.ground()
    }
}

fn letters(s: &str) -> GroundSet {
    GroundSet::letters(s).expect("static ground set")
}

fn join<'a>(a: &[&'a str], b: &[&'a str]) -> Vec<&'a str> {
    a.iter().chain(b).copied().collect()
}

/// `Ingl(A:B, C:D | E) = I(A;B|CE) + I(A;B|DE) + I(C;D|E) - I(A;B|E)`.
pub fn ingleton(
    ground: &GroundSet,
    a: &[&str],
    b: &[&str],
    c: &[&str],
    d: &[&str],
    e: &[&str],
) -> Result<InfExpr> {
    let one = Rat::one();
    InfExpr::from_terms(
        ground.clone(),
        &[
            (one.clone(), InfoTerm::mi(a, b, &join(c, e))),
            (one.clone(), InfoTerm::mi(a, b, &join(d, e))),
            (one.clone(), InfoTerm::mi(c, d, e)),
            (-one, InfoTerm::mi(a, b, e)),
        ],
    )
}

/// `I(A;B|C) ≥ 0` on `{A,B,C,D}`.
pub fn basic() -> InfExpr {
    InfExpr::mutual_info(&letters("ABCD"), &["A"], &["B"], &["C"]).expect("static labels")
}

/// `Ingl(A:B, C:D) ≥ 0` on `{A,B,C,D}`.
pub fn ingleton4() -> InfExpr {
    ingleton(&letters("ABCD"), &["A"], &["B"], &["C"], &["D"], &[]).expect("static labels")
}

/// `Ingl(A:B, C:D | E) ≥ 0` on `{A,B,C,D,E}`.
pub fn ingleton_conditional() -> InfExpr {
    ingleton(&letters("ABCDE"), &["A"], &["B"], &["C"], &["D"], &["E"]).expect("static labels")
}

/// The MMRV inequality on `{A,B,C,D,E}`, written as `rhs - lhs ≥ 0`:
/// `I(A;B|C) + I(A;B|D) + I(C;D) + I(A;B|E) + I(A;E|B) + I(B;E|A) - I(A;B)`.
pub fn mmrv() -> InfExpr {
    let one = Rat::one();
    InfExpr::from_terms(
        letters("ABCDE"),
        &[
            (one.clone(), InfoTerm::mi(&["A"], &["B"], &["C"])),
            (one.clone(), InfoTerm::mi(&["A"], &["B"], &["D"])),
            (one.clone(), InfoTerm::mi(&["C"], &["D"], &[])),
            (one.clone(), InfoTerm::mi(&["A"], &["B"], &["E"])),
            (one.clone(), InfoTerm::mi(&["A"], &["E"], &["B"])),
            (one.clone(), InfoTerm::mi(&["B"], &["E"], &["A"])),
            (-one, InfoTerm::mi(&["A"], &["B"], &[])),
        ],
    )
    .expect("static labels")
}

/// Hand expansion of the formal dual of [`mmrv`]:
/// `I(C;D|AE) + I(C;D|BE) + I(A;B|E) - I(C;D|E) + I(A;B|CD) + I(A;E|CD) + I(B;E|CD)`.
pub fn mmrv_dual_expansion() -> InfExpr {
    let one = Rat::one();
    InfExpr::from_terms(
        letters("ABCDE"),
        &[
            (one.clone(), InfoTerm::mi(&["C"], &["D"], &["A", "E"])),
            (one.clone(), InfoTerm::mi(&["C"], &["D"], &["B", "E"])),
            (one.clone(), InfoTerm::mi(&["A"], &["B"], &["E"])),
            (-one.clone(), InfoTerm::mi(&["C"], &["D"], &["E"])),
            (one.clone(), InfoTerm::mi(&["A"], &["B"], &["C", "D"])),
            (one.clone(), InfoTerm::mi(&["A"], &["E"], &["C", "D"])),
            (one, InfoTerm::mi(&["B"], &["E"], &["C", "D"])),
        ],
    )
    .expect("static labels")
}

/// All named inequalities. `mmrv-dual` is computed with the dual operator;
/// it agrees with [`mmrv_dual_expansion`] exactly.
pub fn catalog() -> Vec<NamedInequality> {
    vec![
        NamedInequality { name: "basic", expr: basic(), provenance: "Shannon's basic inequality I(A;B|C) >= 0" },
        NamedInequality { name: "ingleton", expr: ingleton4(), provenance: "Ingleton (1971), rank inequality for representable matroids" },
        NamedInequality {
            name: "ingleton-conditional",
            expr: ingleton_conditional(),
            provenance: "conditional version of the Ingleton quantity, conditioned on E",
        },
        NamedInequality {
            name: "mmrv",
            expr: mmrv(),
            provenance: "Makarychev, Makarychev, Romashchenko, Vereshchagin (2002), non-Shannon-type inequality",
        },
        NamedInequality { name: "mmrv-dual", expr: mmrv().dual(), provenance: "formal dual of mmrv" },
    ]
}

pub fn find(name: &str) -> Option<NamedInequality> {
    catalog().into_iter().find(|e| e.name == name)
}
