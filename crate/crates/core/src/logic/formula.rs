use std::collections::BTreeSet;
use std::fmt;

/// Modal formula. Identity is structural: `[]p` and `~<>~p` are different
/// formulas, and `[]φ` is never equal to `φ`.
///
/// The derived ordering is the canonical order used for formula sets.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    Top,
    Bottom,
    Atom(String),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    Necessarily(Box<Formula>),
    Possibly(Box<Formula>),
}

impl Formula {
    pub fn atom(name: impl Into<String>) -> Self {
        Formula::Atom(name.into())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Self {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Self {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Self {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Self {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn iff(a: Formula, b: Formula) -> Self {
        Formula::Iff(Box::new(a), Box::new(b))
    }

    pub fn nec(f: Formula) -> Self {
        Formula::Necessarily(Box::new(f))
    }

    pub fn pos(f: Formula) -> Self {
        Formula::Possibly(Box::new(f))
    }

    pub fn children(&self) -> Vec<&Formula> {
        match self {
            Formula::Top | Formula::Bottom | Formula::Atom(_) => vec![],
            Formula::Not(a) | Formula::Necessarily(a) | Formula::Possibly(a) => vec![a],
            Formula::And(a, b)
            | Formula::Or(a, b)
            | Formula::Implies(a, b)
            | Formula::Iff(a, b) => vec![a, b],
        }
    }

    /// Maximum nesting of box and diamond.
    pub fn modal_depth(&self) -> usize {
        let inner = self
            .children()
            .into_iter()
            .map(Formula::modal_depth)
            .max()
            .unwrap_or(0);
        match self {
            Formula::Necessarily(_) | Formula::Possibly(_) => inner + 1,
            _ => inner,
        }
    }

    /// Number of Boolean connective nodes (constants excluded).
    pub fn boolean_nodes(&self) -> usize {
        let own = matches!(
            self,
            Formula::Not(_)
                | Formula::And(..)
                | Formula::Or(..)
                | Formula::Implies(..)
                | Formula::Iff(..)
        ) as usize;
        own + self
            .children()
            .into_iter()
            .map(Formula::boolean_nodes)
            .sum::<usize>()
    }

    pub fn size(&self) -> usize {
        1 + self
            .children()
            .into_iter()
            .map(Formula::size)
            .sum::<usize>()
    }

    pub fn subformulas(&self) -> BTreeSet<&Formula> {
        let mut out = BTreeSet::new();
        let mut stack = vec![self];
        while let Some(f) = stack.pop() {
            if out.insert(f) {
                stack.extend(f.children());
            }
        }
        out
    }

    pub fn atoms(&self) -> BTreeSet<&str> {
        self.subformulas()
            .into_iter()
            .filter_map(|f| match f {
                Formula::Atom(a) => Some(a.as_str()),
                _ => None,
            })
            .collect()
    }

    fn precedence(&self) -> u8 {
        match self {
            Formula::Iff(..) => 1,
            Formula::Implies(..) => 2,
            Formula::Or(..) => 3,
            Formula::And(..) => 4,
            Formula::Not(_) | Formula::Necessarily(_) | Formula::Possibly(_) => 5,
            Formula::Top | Formula::Bottom | Formula::Atom(_) => 6,
        }
    }

    fn write_at(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        let prec = self.precedence();
        if prec < min {
            f.write_str("(")?;
        }
        match self {
            Formula::Top => f.write_str("true")?,
            Formula::Bottom => f.write_str("false")?,
            Formula::Atom(a) => f.write_str(a)?,
            Formula::Not(a) => {
                f.write_str("~")?;
                a.write_at(f, 5)?;
            }
            Formula::Necessarily(a) => {
                f.write_str("[]")?;
                a.write_at(f, 5)?;
            }
            Formula::Possibly(a) => {
                f.write_str("<>")?;
                a.write_at(f, 5)?;
            }
            // & | <-> associate left, -> associates right
            Formula::And(a, b) => binary(f, a, " & ", b, 4, 5)?,
            Formula::Or(a, b) => binary(f, a, " | ", b, 3, 4)?,
            Formula::Implies(a, b) => binary(f, a, " -> ", b, 3, 2)?,
            Formula::Iff(a, b) => binary(f, a, " <-> ", b, 1, 2)?,
        }
        if prec < min {
            f.write_str(")")?;
        }
        Ok(())
    }
}

fn binary(
    f: &mut fmt::Formatter<'_>,
    a: &Formula,
    op: &str,
    b: &Formula,
    left: u8,
    right: u8,
) -> fmt::Result {
    a.write_at(f, left)?;
    f.write_str(op)?;
    b.write_at(f, right)
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_at(f, 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p() -> Formula {
        Formula::atom("p")
    }
    fn q() -> Formula {
        Formula::atom("q")
    }

    #[test]
    fn modal_depth_examples() {
        assert_eq!(p().modal_depth(), 0);
        assert_eq!(Formula::nec(p()).modal_depth(), 1);
        assert_eq!(
            Formula::and(Formula::nec(Formula::pos(p())), q()).modal_depth(),
            2
        );
    }

    #[test]
    fn printer_uses_minimal_parentheses() {
        let f = Formula::nec(Formula::implies(p(), Formula::pos(q())));
        assert_eq!(f.to_string(), "[](p -> <>q)");
        let f = Formula::or(Formula::and(p(), q()), Formula::atom("r"));
        assert_eq!(f.to_string(), "p & q | r");
        let f = Formula::and(p(), Formula::or(q(), Formula::atom("r")));
        assert_eq!(f.to_string(), "p & (q | r)");
        let f = Formula::implies(Formula::implies(p(), q()), p());
        assert_eq!(f.to_string(), "(p -> q) -> p");
        let f = Formula::implies(p(), Formula::implies(q(), p()));
        assert_eq!(f.to_string(), "p -> q -> p");
        let f = Formula::not(Formula::nec(Formula::not(p())));
        assert_eq!(f.to_string(), "~[]~p");
    }

    #[test]
    fn boolean_nodes_skip_modal_and_constants() {
        let f = Formula::nec(Formula::and(Formula::Top, Formula::not(p())));
        assert_eq!(f.boolean_nodes(), 2);
        assert_eq!(f.size(), 5);
    }

    #[test]
    fn subformulas_include_self_and_leaves() {
        let f = Formula::and(Formula::nec(p()), p());
        let subs = f.subformulas();
        assert_eq!(subs.len(), 3);
        assert!(subs.contains(&p()));
    }
}
