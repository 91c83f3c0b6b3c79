//! Rendering expressions as text in the parser's grammar.

use std::cmp::Ordering;

use num_traits::{One, Signed, Zero};

use crate::expr::InfExpr;
use crate::ground::{GroundSet, Subset};
use crate::rational::{format_rat, Rat};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Style {
    /// Raw `H(..)` terms in canonical subset order; exact round trip.
    HForm,
    /// Greedy factoring into `I(..;..|..)` terms, display only.
    #[default]
    IForm,
}

/// Subsets by size, then lexicographically by member indices.
pub fn subset_order(a: Subset, b: Subset) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.indices().cmp(b.indices()))
}

fn vars(ground: &GroundSet, s: Subset) -> String {
    ground.subset_labels(s).join(",")
}

enum Piece {
    H(Subset),
    CondH(Subset, Subset),
    I(Subset, Subset, Subset),
}

fn render_piece(ground: &GroundSet, p: &Piece) -> String {
    match p {
        Piece::H(s) => format!("H({})", vars(ground, *s)),
        Piece::CondH(j, k) => format!("H({}|{})", vars(ground, *j), vars(ground, *k)),
        Piece::I(j, k, l) if l.is_empty() => format!("I({};{})", vars(ground, *j), vars(ground, *k)),
        Piece::I(j, k, l) => format!("I({};{}|{})", vars(ground, *j), vars(ground, *k), vars(ground, *l)),
    }
}

fn render(ground: &GroundSet, pieces: &[(Rat, Piece)]) -> String {
    if pieces.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, (coef, piece)) in pieces.iter().enumerate() {
        let sign = if coef.is_negative() { "-" } else { "+" };
        if k == 0 {
            if coef.is_negative() {
                out.push('-');
            }
        } else {
            out.push_str(&format!(" {sign} "));
        }
        let mag = coef.abs();
        if !mag.is_one() {
            out.push_str(&format_rat(&mag));
            out.push(' ');
        }
        out.push_str(&render_piece(ground, piece));
    }
    out
}

/// Raw terms in [`subset_order`].
pub fn print_h_form(c: &InfExpr) -> String {
    let mut terms: Vec<(Subset, &Rat)> = c.terms().collect();
    terms.sort_by(|a, b| subset_order(a.0, b.0));
    let pieces: Vec<(Rat, Piece)> = terms.into_iter().map(|(s, r)| (r.clone(), Piece::H(s))).collect();
    render(c.ground(), &pieces)
}

/// Largest support for which the I-form search is attempted.
const MAX_FACTOR_SUPPORT: usize = 8;

/// Candidate `(J, K, L)` triples over `support`, in preference order: larger
/// top set `J∪K∪L` first, then larger `L`, then smaller `J` and `K`.
fn mi_candidates(support: Subset) -> Vec<(Subset, Subset, Subset)> {
    let idx: Vec<usize> = support.indices().collect();
    let mut out = Vec::new();
    let total = 4usize.pow(idx.len() as u32);
    for code in 0..total {
        let (mut j, mut k, mut l) = (Subset::EMPTY, Subset::EMPTY, Subset::EMPTY);
        let mut c = code;
        for &i in &idx {
            match c % 4 {
                1 => j = j.union(Subset::singleton(i)),
                2 => k = k.union(Subset::singleton(i)),
                3 => l = l.union(Subset::singleton(i)),
                _ => {}
            }
            c /= 4;
        }
        if j.is_empty() || k.is_empty() || subset_order(j, k) != Ordering::Less {
            continue;
        }
        out.push((j, k, l));
    }
    out.sort_by(|a, b| {
        let top = |t: &(Subset, Subset, Subset)| t.0.union(t.1).union(t.2).len();
        top(b)
            .cmp(&top(a))
            .then(b.2.len().cmp(&a.2.len()))
            .then((a.0.len() + a.1.len()).cmp(&(b.0.len() + b.1.len())))
            .then(subset_order(a.0, b.0))
            .then(subset_order(a.1, b.1))
            .then(subset_order(a.2, b.2))
    });
    out
}

/// Greedy factoring: repeatedly peel off `α·I(J;K|L)` where `JL`, `KL` carry
/// coefficients of the sign of `α` and `JKL` the opposite sign; then pair
/// leftover `H(S) - H(T)` with `T ⊂ S` as conditional entropies. The printed
/// text lists positive terms first and always parses back to `c`.
pub fn print_i_form(c: &InfExpr) -> String {
    let support = c.support();
    if support.len() > MAX_FACTOR_SUPPORT {
        return print_h_form(c);
    }
    let mut rest = c.clone();
    let mut pieces: Vec<(Rat, Piece)> = Vec::new();
    let candidates = mi_candidates(support);
    let budget = 4 * c.len() + 8;
    'outer: for _ in 0..budget {
        for &(j, k, l) in &candidates {
            let (jl, kl, top) = (j.union(l), k.union(l), j.union(k).union(l));
            let (a, b, t) = (rest.coeff(jl), rest.coeff(kl), rest.coeff(top));
            if a.is_zero() || b.is_zero() || t.is_zero() {
                continue;
            }
            let same = a.is_positive() == b.is_positive() && t.is_positive() != a.is_positive();
            // the -H(L) term must not grow against the grain
            let lc = rest.coeff(l);
            if !same || (!l.is_empty() && !lc.is_zero() && lc.is_positive() == a.is_positive()) {
                continue;
            }
            let mag = [a.abs(), b.abs(), t.abs()].into_iter().min().expect("three values");
            let alpha = if a.is_positive() { mag } else { -mag };
            rest.add_mutual_info(&-alpha.clone(), j, k, l);
            pieces.push((alpha, Piece::I(j, k, l)));
            continue 'outer;
        }
        break;
    }
    // H(S|T) from a positive S and negative T ⊂ S of equal magnitude
    let mut leftovers: Vec<(Subset, Rat)> = rest.terms().map(|(s, r)| (s, r.clone())).collect();
    leftovers.sort_by(|a, b| subset_order(b.0, a.0));
    let mut used = vec![false; leftovers.len()];
    for x in 0..leftovers.len() {
        if used[x] {
            continue;
        }
        let (s, ref cs) = leftovers[x];
        let partner = (0..leftovers.len()).find(|&y| {
            !used[y] && y != x && leftovers[y].0 != s && leftovers[y].0.is_subset_of(s) && &-leftovers[y].1.clone() == cs
        });
        match partner {
            Some(y) => {
                used[x] = true;
                used[y] = true;
                pieces.push((cs.clone(), Piece::CondH(s.minus(leftovers[y].0), leftovers[y].0)));
            }
            None => {
                used[x] = true;
                pieces.push((cs.clone(), Piece::H(s)));
            }
        }
    }
    pieces.sort_by_key(|(r, _)| r.is_negative());
    render(c.ground(), &pieces)
}

pub fn print_expr(c: &InfExpr, style: Style) -> String {
    match style {
        Style::HForm => print_h_form(c),
        Style::IForm => print_i_form(c),
    }
}
