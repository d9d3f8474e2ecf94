//! Multiplicative formulas in negation normal form.
//!
//! Negation is never stored: the parser pushes every `~` down to the atoms
//! with the order-preserving De Morgan rules
//! `~(A * B) = ~A | ~B`, `~(A | B) = ~A * ~B` and `~~X = X`.
//!
//! Grammar (ASCII):
//!
//! ```text
//! atom   := [A-Za-z][A-Za-z0-9_]*
//! expr   := unary (("*" | "|") unary)*      left-associative, equal precedence
//! unary  := "~" unary | atom | "(" expr ")"
//! ```

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Serialize, Serializer};
use thiserror::Error;

/// Orientation of an atom occurrence.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Pos,
    Neg,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }

    /// `+1` or `-1`.
    pub fn value(self) -> i32 {
        match self {
            Sign::Pos => 1,
            Sign::Neg => -1,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Pos => '+',
            Sign::Neg => '-',
        }
    }
}

impl Serialize for Sign {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(match self {
            Sign::Pos => "+",
            Sign::Neg => "-",
        })
    }
}

/// An atom occurrence extracted from a formula.
///
/// `occurrence_id` is a pre-order counter assigned during extraction and is
/// ignored by equality.
#[derive(Clone, Debug, Serialize)]
pub struct Atom {
    pub name: Arc<str>,
    pub sign: Sign,
    pub occurrence_id: usize,
}

impl PartialEq for Atom {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name && self.sign == other.sign
    }
}

impl Eq for Atom {}

/// A formula in negation normal form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    Atom { name: Arc<str>, sign: Sign },
    Tensor(Box<Formula>, Box<Formula>),
    Par(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn atom(name: &str, sign: Sign) -> Formula {
        Formula::Atom {
            name: Arc::from(name),
            sign,
        }
    }

    pub fn pos(name: &str) -> Formula {
        Formula::atom(name, Sign::Pos)
    }

    pub fn neg(name: &str) -> Formula {
        Formula::atom(name, Sign::Neg)
    }

    pub fn tensor(left: Formula, right: Formula) -> Formula {
        Formula::Tensor(Box::new(left), Box::new(right))
    }

    pub fn par(left: Formula, right: Formula) -> Formula {
        Formula::Par(Box::new(left), Box::new(right))
    }

    /// Linear negation, computed on the normal form.
    pub fn negate(&self) -> Formula {
        match self {
            Formula::Atom { name, sign } => Formula::Atom {
                name: name.clone(),
                sign: sign.flip(),
            },
            Formula::Tensor(l, r) => Formula::par(l.negate(), r.negate()),
            Formula::Par(l, r) => Formula::tensor(l.negate(), r.negate()),
        }
    }

    pub fn is_dual_of(&self, other: &Formula) -> bool {
        match (self, other) {
            (Formula::Atom { name: a, sign: s }, Formula::Atom { name: b, sign: t }) => {
                a == b && *s == t.flip()
            }
            (Formula::Tensor(a, b), Formula::Par(c, d)) | (Formula::Par(a, b), Formula::Tensor(c, d)) => {
                a.is_dual_of(c) && b.is_dual_of(d)
            }
            _ => false,
        }
    }

    /// Atom occurrences in left-to-right order.
    pub fn atoms_of(&self) -> Vec<(Arc<str>, Sign)> {
        let mut out = Vec::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms(&self, out: &mut Vec<(Arc<str>, Sign)>) {
        match self {
            Formula::Atom { name, sign } => out.push((name.clone(), *sign)),
            Formula::Tensor(l, r) | Formula::Par(l, r) => {
                l.collect_atoms(out);
                r.collect_atoms(out);
            }
        }
    }

    /// Atom occurrences tagged with pre-order occurrence ids.
    pub fn occurrences(&self) -> Vec<Atom> {
        self.atoms_of()
            .into_iter()
            .enumerate()
            .map(|(occurrence_id, (name, sign))| Atom {
                name,
                sign,
                occurrence_id,
            })
            .collect()
    }

    pub fn atom_count(&self) -> usize {
        match self {
            Formula::Atom { .. } => 1,
            Formula::Tensor(l, r) | Formula::Par(l, r) => l.atom_count() + r.atom_count(),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Formula::Atom { .. } => 0,
            Formula::Tensor(l, r) | Formula::Par(l, r) => 1 + l.depth().max(r.depth()),
        }
    }

    /// ASCII rendering accepted by [`parse_formula`].
    pub fn render(&self) -> String {
        let mut s = String::new();
        self.render_into(&mut s);
        s
    }

    fn render_into(&self, out: &mut String) {
        match self {
            Formula::Atom { name, sign } => {
                if *sign == Sign::Neg {
                    out.push('~');
                }
                out.push_str(name);
            }
            Formula::Tensor(l, r) | Formula::Par(l, r) => {
                let op = if matches!(self, Formula::Tensor(..)) { " * " } else { " | " };
                l.render_into(out);
                out.push_str(op);
                // left-associative: only a compound right operand needs parentheses
                if matches!(**r, Formula::Atom { .. }) {
                    r.render_into(out);
                } else {
                    out.push('(');
                    r.render_into(out);
                    out.push(')');
                }
            }
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl Serialize for Formula {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.render())
    }
}

impl FromStr for Formula {
    type Err = FormulaError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_formula(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormulaError {
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unbalanced parentheses at byte {offset}")]
    Unbalanced { offset: usize },
}

pub fn parse_formula(text: &str) -> Result<Formula, FormulaError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    let f = p.expr(false)?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(if p.src[p.pos] == b')' {
            FormulaError::Unbalanced { offset: p.pos }
        } else {
            FormulaError::Syntax {
                offset: p.pos,
                message: format!("unexpected character '{}'", p.src[p.pos] as char),
            }
        });
    }
    Ok(f)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self, nested: bool) -> Result<Formula, FormulaError> {
        let mut acc = self.unary(nested)?;
        while let Some(c @ (b'*' | b'|')) = self.peek() {
            self.pos += 1;
            let rhs = self.unary(nested)?;
            acc = if c == b'*' {
                Formula::tensor(acc, rhs)
            } else {
                Formula::par(acc, rhs)
            };
        }
        Ok(acc)
    }

    fn unary(&mut self, nested: bool) -> Result<Formula, FormulaError> {
        match self.peek() {
            Some(b'~') => {
                self.pos += 1;
                Ok(self.unary(nested)?.negate())
            }
            Some(b'(') => {
                let open = self.pos;
                self.pos += 1;
                let inner = self.expr(true)?;
                match self.peek() {
                    Some(b')') => {
                        self.pos += 1;
                        Ok(inner)
                    }
                    None => Err(FormulaError::Unbalanced { offset: open }),
                    Some(c) => Err(FormulaError::Syntax {
                        offset: self.pos,
                        message: format!("expected ')' but found '{}'", c as char),
                    }),
                }
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                Ok(Formula::pos(name))
            }
            Some(b')') => Err(if nested {
                FormulaError::Syntax {
                    offset: self.pos,
                    message: "expected a formula before ')'".into(),
                }
            } else {
                FormulaError::Unbalanced { offset: self.pos }
            }),
            Some(c) => Err(FormulaError::Syntax {
                offset: self.pos,
                message: format!("unexpected character '{}'", c as char),
            }),
            None => Err(FormulaError::Syntax {
                offset: self.pos,
                message: "unexpected end of input".into(),
            }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    #[test]
    fn de_morgan_on_tensor() {
        assert_eq!(p("~(A * B)"), Formula::par(Formula::neg("A"), Formula::neg("B")));
    }

    #[test]
    fn double_negation() {
        assert_eq!(p("~~A"), Formula::pos("A"));
    }

    #[test]
    fn de_morgan_on_par_with_inner_negation() {
        assert_eq!(p("~(A | ~B)"), Formula::tensor(Formula::neg("A"), Formula::pos("B")));
    }

    #[test]
    fn negate_examples() {
        assert_eq!(Formula::pos("X").negate(), Formula::neg("X"));
        let t = Formula::tensor(Formula::pos("A"), Formula::pos("B"));
        assert_eq!(t.negate(), Formula::par(Formula::neg("A"), Formula::neg("B")));
        let f = Formula::par(Formula::neg("A"), Formula::tensor(Formula::pos("B"), Formula::neg("C")));
        assert_eq!(f.negate().negate(), f);
        assert!(f.is_dual_of(&f.negate()));
        assert!(!f.is_dual_of(&f));
    }

    #[test]
    fn atoms_in_order() {
        let f = Formula::tensor(Formula::pos("U"), Formula::neg("U"));
        let names: Vec<_> = f.atoms_of().into_iter().map(|(n, s)| (n.to_string(), s)).collect();
        assert_eq!(names, vec![("U".into(), Sign::Pos), ("U".into(), Sign::Neg)]);
        assert_eq!(Formula::neg("X").atoms_of().len(), 1);
        let g = Formula::par(Formula::neg("A"), Formula::par(Formula::pos("B"), Formula::pos("A")));
        let got: Vec<_> = g.atoms_of().into_iter().map(|(n, s)| format!("{}{}", n, s.symbol())).collect();
        assert_eq!(got, ["A-", "B+", "A+"]);
    }

    #[test]
    fn occurrence_ids_are_preorder_and_ignored_by_eq() {
        let occ = p("A * (B | ~C)").occurrences();
        assert_eq!(occ.iter().map(|a| a.occurrence_id).collect::<Vec<_>>(), [0, 1, 2]);
        let moved = Atom { occurrence_id: 99, ..occ[0].clone() };
        assert_eq!(moved, occ[0]);
    }

    #[test]
    fn left_associative_equal_precedence() {
        assert_eq!(
            p("A * B | C"),
            Formula::par(Formula::tensor(Formula::pos("A"), Formula::pos("B")), Formula::pos("C"))
        );
        assert_eq!(
            p("A | B | C"),
            Formula::par(Formula::par(Formula::pos("A"), Formula::pos("B")), Formula::pos("C"))
        );
        assert_eq!(
            p("~A * B"),
            Formula::tensor(Formula::neg("A"), Formula::pos("B"))
        );
    }

    #[test]
    fn errors_carry_offsets() {
        assert_eq!(parse_formula("(A * B"), Err(FormulaError::Unbalanced { offset: 0 }));
        assert_eq!(parse_formula("A * B)"), Err(FormulaError::Unbalanced { offset: 5 }));
        assert!(matches!(parse_formula("A * "), Err(FormulaError::Syntax { offset: 4, .. })));
        assert!(matches!(parse_formula("A & B"), Err(FormulaError::Syntax { offset: 2, .. })));
        assert!(matches!(parse_formula("1A"), Err(FormulaError::Syntax { offset: 0, .. })));
        assert!(matches!(parse_formula(""), Err(FormulaError::Syntax { .. })));
        assert!(matches!(parse_formula("()"), Err(FormulaError::Syntax { offset: 1, .. })));
    }

    pub(crate) fn arb_formula(depth: u32) -> impl Strategy<Value = Formula> {
        let leaf = (prop::sample::select(vec!["A", "B", "C", "X_1"]), any::<bool>())
            .prop_map(|(n, s)| Formula::atom(n, if s { Sign::Pos } else { Sign::Neg }));
        leaf.prop_recursive(depth, 64, 2, |inner| {
            (inner.clone(), inner, any::<bool>()).prop_map(|(l, r, t)| {
                if t {
                    Formula::tensor(l, r)
                } else {
                    Formula::par(l, r)
                }
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn render_parse_roundtrip(f in arb_formula(6)) {
            prop_assert_eq!(parse_formula(&f.render()).unwrap(), f);
        }

        #[test]
        fn negation_is_involutive(f in arb_formula(6)) {
            prop_assert_eq!(f.negate().negate(), f.clone());
            prop_assert!(f.is_dual_of(&f.negate()));
        }

        #[test]
        fn atom_count_is_additive(l in arb_formula(4), r in arb_formula(4)) {
            let n = l.atoms_of().len() + r.atoms_of().len();
            prop_assert_eq!(Formula::tensor(l.clone(), r.clone()).atoms_of().len(), n);
            prop_assert_eq!(Formula::par(l, r).atom_count(), n);
        }
    }
}
