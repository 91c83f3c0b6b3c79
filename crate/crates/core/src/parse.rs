//! Parser for the textual expression grammar:
//!
//! ```text
//! expr  := '0' | [sign] term (sign term)*
//! term  := [rational ['*']] atom
//! atom  := 'H(' vars ['|' vars] ')' | 'I(' vars (';' | ':') vars ['|' vars] ')'
//! vars  := label (','? label)*
//! ```
//!
//! Labels are identifiers (`A`, `X1`, `left_1`). An identifier made only of
//! uppercase letters, such as `ACD`, denotes one variable per letter unless
//! an explicit ground set contains it as a single label. Error positions are
//! 0-based character offsets.

use crate::expr::{InfExpr, InfoTerm};
use crate::ground::GroundSet;
use crate::rational::Rat;
use crate::{Error, Result};

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    ground: Option<&'a GroundSet>,
    terms: Vec<(Rat, InfoTerm)>,
    seen: Vec<String>,
}

type Labels = Vec<(String, usize)>;

impl<'a> Parser<'a> {
    fn error<T>(&self, position: usize, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { position, message: message.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn expect(&mut self, c: char) -> Result<()> {
        match self.peek() {
            Some(x) if x == c => {
                self.pos += 1;
                Ok(())
            }
            Some(x) => self.error(self.pos, format!("expected `{c}`, found `{x}`")),
            None => self.error(self.pos, format!("expected `{c}`, found end of input")),
        }
    }

    fn integer(&mut self) -> Option<String> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (self.pos > start).then(|| self.chars[start..self.pos].iter().collect())
    }

    fn identifier(&mut self) -> Option<(String, usize)> {
        self.skip_ws();
        let start = self.pos;
        let is_start = |c: char| c.is_ascii_alphabetic() || c == '_';
        if !self.chars.get(start).copied().is_some_and(is_start) {
            return None;
        }
        while self.pos < self.chars.len() && (self.chars[self.pos].is_ascii_alphanumeric() || self.chars[self.pos] == '_') {
            self.pos += 1;
        }
        Some((self.chars[start..self.pos].iter().collect(), start))
    }

    fn coefficient(&mut self) -> Result<Option<Rat>> {
        let start = self.pos;
        let Some(num) = self.integer() else {
            return Ok(None);
        };
        let den = if self.peek() == Some('/') {
            self.pos += 1;
            match self.integer() {
                Some(d) => d,
                None => return self.error(self.pos, "expected denominator after `/`"),
            }
        } else {
            "1".to_string()
        };
        let den_val: num_bigint::BigInt = den.parse().expect("digits");
        if num_traits::Zero::is_zero(&den_val) {
            return self.error(start, "zero denominator");
        }
        let num_val: num_bigint::BigInt = num.parse().expect("digits");
        if self.peek() == Some('*') {
            self.pos += 1;
        }
        Ok(Some(Rat::new(num_val, den_val)))
    }

    fn split_identifier(&self, ident: String, at: usize) -> Labels {
        let whole_known = self.ground.is_some_and(|g| g.contains(&ident));
        if !whole_known && ident.len() > 1 && ident.chars().all(|c| c.is_ascii_uppercase()) {
            ident.chars().enumerate().map(|(k, c)| (c.to_string(), at + k)).collect()
        } else {
            vec![(ident, at)]
        }
    }

    fn vars(&mut self) -> Result<Labels> {
        let mut out = Labels::new();
        let Some((id, at)) = self.identifier() else {
            return self.error(self.pos, "expected a variable label");
        };
        out.extend(self.split_identifier(id, at));
        loop {
            if self.peek() == Some(',') {
                self.pos += 1;
                match self.identifier() {
                    Some((id, at)) => out.extend(self.split_identifier(id, at)),
                    None => return self.error(self.pos, "expected a variable label after `,`"),
                }
            } else if let Some((id, at)) = self.identifier() {
                out.extend(self.split_identifier(id, at));
            } else {
                return Ok(out);
            }
        }
    }

    fn check_labels(&mut self, labels: &Labels) -> Result<Vec<String>> {
        let mut out = Vec::with_capacity(labels.len());
        for (l, at) in labels {
            if let Some(g) = self.ground {
                if !g.contains(l) {
                    return self.error(*at, format!("unknown label `{l}`"));
                }
            }
            if !self.seen.contains(l) {
                self.seen.push(l.clone());
            }
            out.push(l.clone());
        }
        Ok(out)
    }

    fn atom(&mut self, coef: Rat) -> Result<()> {
        let start = self.pos;
        let Some((head, _)) = self.identifier() else {
            return self.error(start, "expected `H(` or `I(`");
        };
        match head.as_str() {
            "H" => {
                self.expect('(')?;
                let vars = self.vars()?;
                let given = if self.peek() == Some('|') {
                    self.pos += 1;
                    self.vars()?
                } else {
                    Labels::new()
                };
                self.expect(')')?;
                let vars = self.check_labels(&vars)?;
                let given = self.check_labels(&given)?;
                self.terms.push((coef, InfoTerm::Entropy { vars, given }));
            }
            "I" => {
                self.expect('(')?;
                let left = self.vars()?;
                match self.peek() {
                    Some(';') | Some(':') => self.pos += 1,
                    _ => return self.error(self.pos, "expected `;` or `:` in mutual information"),
                }
                let right = self.vars()?;
                let given = if self.peek() == Some('|') {
                    self.pos += 1;
                    self.vars()?
                } else {
                    Labels::new()
                };
                self.expect(')')?;
                let left = self.check_labels(&left)?;
                let right = self.check_labels(&right)?;
                let given = self.check_labels(&given)?;
                self.terms.push((coef, InfoTerm::MutualInfo { left, right, given }));
            }
            other => return self.error(start, format!("expected `H(` or `I(`, found `{other}`")),
        }
        Ok(())
    }

    fn term(&mut self, negative: bool) -> Result<()> {
        let mut coef = self.coefficient()?.unwrap_or_else(|| Rat::from_integer(1.into()));
        if negative {
            coef = -coef;
        }
        self.atom(coef)
    }

    fn expr(&mut self) -> Result<()> {
        if self.peek().is_none() {
            return self.error(self.pos, "empty expression");
        }
        // a lone `0` is the empty expression
        let save = self.pos;
        if self.integer().as_deref() == Some("0") && self.peek().is_none() {
            return Ok(());
        }
        self.pos = save;
        let mut negative = false;
        match self.peek() {
            Some('-') => {
                negative = true;
                self.pos += 1;
            }
            Some('+') => self.pos += 1,
            _ => {}
        }
        self.term(negative)?;
        loop {
            match self.peek() {
                None => return Ok(()),
                Some('+') => {
                    self.pos += 1;
                    self.term(false)?;
                }
                Some('-') => {
                    self.pos += 1;
                    self.term(true)?;
                }
                Some(c) => return self.error(self.pos, format!("expected `+` or `-`, found `{c}`")),
            }
        }
    }
}

/// Sort key putting `X2` before `X10`.
fn natural_key(label: &str) -> (String, u64, String) {
    let digits = label.chars().rev().take_while(|c| c.is_ascii_digit()).count();
    let (stem, num) = label.split_at(label.len() - digits);
    (stem.to_string(), num.parse().unwrap_or(0), label.to_string())
}

/// Parses `text` into a canonical expression. Without an explicit ground set,
/// the ground set is the mentioned labels in natural order.
pub fn parse_expr(text: &str, ground: Option<&GroundSet>) -> Result<InfExpr> {
    let mut p = Parser { chars: text.chars().collect(), pos: 0, ground, terms: Vec::new(), seen: Vec::new() };
    p.expr()?;
    let ground = match ground {
        Some(g) => g.clone(),
        None if p.seen.is_empty() => {
            return Err(Error::Syntax { position: 0, message: "cannot infer a ground set from `0`; pass one explicitly".into() })
        }
        None => {
            let mut labels = p.seen.clone();
            labels.sort_by_key(|l| natural_key(l));
            GroundSet::new(labels)?
        }
    };
    InfExpr::from_terms(ground, &p.terms)
}

/// Parses a comma-separated label list such as `A,B,C,D`.
pub fn parse_ground(text: &str) -> Result<GroundSet> {
    GroundSet::new(text.split(',').map(str::trim).filter(|s| !s.is_empty()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::rational::rat;

    fn g(letters: &str) -> GroundSet {
        GroundSet::letters(letters).unwrap()
    }

    #[test]
    fn ingleton_text() {
        let e = parse_expr("I(A;B|C) + I(A;B|D) + I(C;D) - I(A;B)", None).unwrap();
        assert_eq!(e, catalog::ingleton4());
    }

    #[test]
    fn explicit_ground() {
        let e = parse_expr("H(A)", Some(&g("AB"))).unwrap();
        assert_eq!(e.ground(), &g("AB"));
        assert_eq!(e, InfExpr::entropy(&g("AB"), &["A"], &[]).unwrap());
    }

    #[test]
    fn cancellation_gives_empty() {
        let e = parse_expr("2/3 H(A,B) - 2/3 H(A,B)", None).unwrap();
        assert!(e.is_zero());
        assert!(parse_expr("0", Some(&g("AB"))).unwrap().is_zero());
    }

    #[test]
    fn label_styles() {
        let a = parse_expr("I(A;B|CD)", None).unwrap();
        let b = parse_expr("I(A : B | C, D)", None).unwrap();
        assert_eq!(a, b);
        let x = parse_expr("H(X1,X2) - 1/2*H(X10)", None).unwrap();
        assert_eq!(x.ground().labels(), &["X1", "X2", "X10"]);
        assert_eq!(x.coeff(x.ground().subset_of(&["X10"]).unwrap()), rat(-1, 2));
        let ground = GroundSet::new(["AB", "C"]).unwrap();
        let y = parse_expr("H(AB|C)", Some(&ground)).unwrap();
        assert_eq!(y.len(), 2);
    }

    #[test]
    fn errors_carry_positions() {
        let err = parse_expr("I(A;B) + ", None).unwrap_err();
        assert_eq!(err.position(), Some(9));
        let err = parse_expr("I(A B)", None).unwrap_err();
        assert_eq!(err.position(), Some(5));
        let err = parse_expr("H(A) + H(Q)", Some(&g("AB"))).unwrap_err();
        assert_eq!(err.position(), Some(9));
        let err = parse_expr("1/0 H(A)", None).unwrap_err();
        assert_eq!(err.position(), Some(0));
        assert!(parse_expr("", None).is_err());
        assert!(parse_expr("H()", None).is_err());
        assert!(parse_expr("Q(A)", None).is_err());
        assert!(parse_expr("H(A) H(B)", None).is_err());
    }

    #[test]
    fn leading_sign_and_star() {
        let e = parse_expr("-2*H(A) + H(A)", None).unwrap();
        assert_eq!(e.coeff(crate::Subset(1)), rat(-1, 1));
    }
}
