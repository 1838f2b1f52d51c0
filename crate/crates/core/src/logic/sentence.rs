use std::collections::BTreeSet;
use std::fmt;

use super::{LogicError, Rule};

/// `U`, a variable, or a complemented variable. Double complements are
/// collapsed when parsing.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    U,
    Var(String),
    ComplVar(String),
}

impl Term {
    pub fn variable(&self) -> Option<&str> {
        match self {
            Term::U => None,
            Term::Var(v) | Term::ComplVar(v) => Some(v),
        }
    }

    pub fn complement(&self) -> Option<Term> {
        match self {
            Term::U => None,
            Term::Var(v) => Some(Term::ComplVar(v.clone())),
            Term::ComplVar(v) => Some(Term::Var(v.clone())),
        }
    }

    /// Terms are `U`, a name `[A-Z][A-Z0-9_]*` followed by any number of
    /// `c` complement markers, or `comp(term)`.
    pub fn parse(text: &str) -> Result<Term, LogicError> {
        let t = text.trim();
        let syntax = |message: String| LogicError::Syntax { offset: 1, message };
        if let Some(inner) = t.strip_prefix("comp(").and_then(|r| r.strip_suffix(')')) {
            return Term::parse(inner)?
                .complement()
                .ok_or_else(|| LogicError::Form("U has no complement in the language".into()));
        }
        if t == "U" {
            return Ok(Term::U);
        }
        let name = t.trim_end_matches('c');
        let marks = t.len() - name.len();
        let mut chars = name.chars();
        let well_formed = chars.next().is_some_and(|c| c.is_ascii_uppercase())
            && chars.all(|c| c.is_ascii_uppercase() || c.is_ascii_digit() || c == '_');
        if !well_formed {
            return Err(syntax(format!("expected a variable or U, found `{t}`")));
        }
        if name == "U" {
            return Err(LogicError::Form("U has no complement in the language".into()));
        }
        Ok(if marks.is_multiple_of(2) {
            Term::Var(name.to_string())
        } else {
            Term::ComplVar(name.to_string())
        })
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::U => f.write_str("U"),
            Term::Var(v) => f.write_str(v),
            Term::ComplVar(v) => write!(f, "{v}c"),
        }
    }
}

/// `Most(lhs, rhs)` with `U` on at least one side.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Sentence {
    lhs: Term,
    rhs: Term,
}

impl Sentence {
    pub fn new(lhs: Term, rhs: Term) -> Result<Sentence, LogicError> {
        if lhs != Term::U && rhs != Term::U {
            return Err(LogicError::Form(format!(
                "Most({lhs},{rhs}) mentions U on neither side"
            )));
        }
        Ok(Sentence { lhs, rhs })
    }

    pub fn lhs(&self) -> &Term {
        &self.lhs
    }

    pub fn rhs(&self) -> &Term {
        &self.rhs
    }

    pub fn parse(text: &str) -> Result<Sentence, LogicError> {
        let t = text.trim();
        let body = t
            .strip_prefix("Most")
            .map(str::trim_start)
            .and_then(|r| r.strip_prefix('('))
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| LogicError::Syntax {
                offset: 1,
                message: format!("expected `Most(X,Y)`, found `{t}`"),
            })?;
        let mut depth = 0i32;
        let mut split = None;
        for (i, c) in body.char_indices() {
            match c {
                '(' => depth += 1,
                ')' => depth -= 1,
                ',' if depth == 0 => {
                    split = Some(i);
                    break;
                }
                _ => {}
            }
        }
        let split = split.ok_or_else(|| LogicError::Syntax {
            offset: 1,
            message: "expected `,` between the two terms".into(),
        })?;
        Sentence::new(Term::parse(&body[..split])?, Term::parse(&body[split + 1..])?)
    }

    /// The variable the sentence talks about, if any.
    pub fn variable(&self) -> Option<&str> {
        self.lhs.variable().or_else(|| self.rhs.variable())
    }

    pub fn is_axiom_instance(&self) -> bool {
        matches!((&self.lhs, &self.rhs), (Term::Var(_), Term::U))
    }

    /// The sentence that would clash with this one under X1 or X2.
    pub fn clash_partner(&self) -> Option<(Rule, Sentence)> {
        match (&self.lhs, &self.rhs) {
            (t, Term::U) if *t != Term::U => Some((
                Rule::X1,
                Sentence {
                    lhs: t.complement()?,
                    rhs: Term::U,
                },
            )),
            (Term::U, t) if *t != Term::U => Some((
                Rule::X2,
                Sentence {
                    lhs: Term::U,
                    rhs: t.complement()?,
                },
            )),
            _ => None,
        }
    }
}

impl fmt::Display for Sentence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Most({},{})", self.lhs, self.rhs)
    }
}

/// A duplicate-free premise set, kept in insertion order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Gamma {
    sentences: Vec<Sentence>,
}

impl Gamma {
    pub fn new() -> Gamma {
        Gamma::default()
    }

    pub fn insert(&mut self, s: Sentence) -> bool {
        if self.sentences.contains(&s) {
            return false;
        }
        self.sentences.push(s);
        true
    }

    pub fn contains(&self, s: &Sentence) -> bool {
        self.sentences.contains(s)
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Sentence> {
        self.sentences.iter()
    }

    pub fn len(&self) -> usize {
        self.sentences.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sentences.is_empty()
    }

    pub fn is_subset_of(&self, other: &Gamma) -> bool {
        self.iter().all(|s| other.contains(s))
    }

    pub fn variables(&self) -> BTreeSet<String> {
        self.iter().filter_map(|s| s.variable().map(str::to_string)).collect()
    }
}

impl FromIterator<Sentence> for Gamma {
    fn from_iter<I: IntoIterator<Item = Sentence>>(iter: I) -> Self {
        let mut g = Gamma::new();
        for s in iter {
            g.insert(s);
        }
        g
    }
}

/// One sentence per line; `#` starts a comment.
pub fn parse_premises(text: &str) -> Result<Gamma, LogicError> {
    let mut g = Gamma::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let s = Sentence::parse(line).map_err(|e| LogicError::Premise {
            line: i + 1,
            source: Box::new(e),
        })?;
        g.insert(s);
    }
    Ok(g)
}
