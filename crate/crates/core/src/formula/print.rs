//! Printing with the minimum number of parentheses the grammar needs.

use std::fmt;

use super::{Formula, Node};

#[derive(Clone, Copy)]
struct Symbols {
    not: &'static str,
    star: &'static str,
    oplus: &'static str,
    and: &'static str,
    or: &'static str,
    implies: &'static str,
}

const ASCII: Symbols =
    Symbols { not: "!", star: " * ", oplus: " (+) ", and: " & ", or: " | ", implies: " -> " };

const UNICODE: Symbols =
    Symbols { not: "¬", star: " ⋆ ", oplus: " ⊕ ", and: " ∧ ", or: " ∨ ", implies: " → " };

fn level(f: &Formula) -> u8 {
    match f.node() {
        Node::Impl(..) => 0,
        Node::Or(..) => 1,
        Node::And(..) => 2,
        Node::OPlus(..) => 3,
        Node::Star(..) => 4,
        Node::Neg(_) => 5,
        Node::Var(_) | Node::Zero | Node::One => 6,
    }
}

fn write_child(
    out: &mut dyn fmt::Write,
    f: &Formula,
    paren: bool,
    sym: Symbols,
) -> fmt::Result {
    if paren {
        out.write_char('(')?;
        write_formula(out, f, sym)?;
        out.write_char(')')
    } else {
        write_formula(out, f, sym)
    }
}

fn write_formula(out: &mut dyn fmt::Write, f: &Formula, sym: Symbols) -> fmt::Result {
    let me = level(f);
    let (l, r, op) = match f.node() {
        Node::Var(i) => return write!(out, "x{i}"),
        Node::Zero => return out.write_char('0'),
        Node::One => return out.write_char('1'),
        Node::Neg(a) => {
            out.write_str(sym.not)?;
            return write_child(out, a, level(a) < me, sym);
        }
        Node::Impl(a, b) => {
            write_child(out, a, level(a) <= me, sym)?;
            out.write_str(sym.implies)?;
            return write_child(out, b, false, sym);
        }
        Node::Star(a, b) => (a, b, sym.star),
        Node::OPlus(a, b) => (a, b, sym.oplus),
        Node::And(a, b) => (a, b, sym.and),
        Node::Or(a, b) => (a, b, sym.or),
    };
    write_child(out, l, level(l) < me, sym)?;
    out.write_str(op)?;
    write_child(out, r, level(r) <= me, sym)
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_formula(f, self, ASCII)
    }
}

impl Formula {
    /// Prints with the Unicode connective symbols.
    pub fn to_unicode(&self) -> String {
        let mut s = String::new();
        write_formula(&mut s, self, UNICODE).expect("writing to a String cannot fail");
        s
    }
}
