use std::fmt;

use super::SetExpr;

fn level(e: &SetExpr) -> u8 {
    match e {
        SetExpr::Union(..) => 1,
        SetExpr::Diff(..) | SetExpr::SymDiff(..) => 2,
        SetExpr::Intersect(..) => 3,
        _ => 4,
    }
}

fn operand(f: &mut fmt::Formatter<'_>, e: &SetExpr, min_level: u8) -> fmt::Result {
    if level(e) < min_level {
        write!(f, "({e})")
    } else {
        write!(f, "{e}")
    }
}

/// Prints the minimal-parenthesis DSL form; `parse` maps it back to the
/// same tree.
impl fmt::Display for SetExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SetExpr::Universe => f.write_str("N"),
            SetExpr::Empty => f.write_str("O"),
            SetExpr::Ap { modulus, residue } => write!(f, "AP({modulus},{residue})"),
            SetExpr::Finite(xs) => {
                f.write_str("{")?;
                for (i, x) in xs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{x}")?;
                }
                f.write_str("}")
            }
            SetExpr::Null(kind) => write!(f, "{}", kind.symbol()),
            SetExpr::Complement(e) => write!(f, "comp({e})"),
            SetExpr::Union(a, b) | SetExpr::Intersect(a, b) | SetExpr::Diff(a, b) | SetExpr::SymDiff(a, b) => {
                let l = level(self);
                let sym = match self {
                    SetExpr::Union(..) => "|",
                    SetExpr::Intersect(..) => "&",
                    SetExpr::Diff(..) => "\\",
                    _ => "^",
                };
                // left-associative: the right operand needs a strictly tighter level
                operand(f, a, l)?;
                write!(f, " {sym} ")?;
                operand(f, b, l + 1)
            }
        }
    }
}
