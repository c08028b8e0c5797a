//! Finite, subformula-closed stand-ins for the set of all formulas.
//!
//! A universe is fixed by its atoms, a maximum modal depth, a Boolean budget
//! (`cap`) and the connectives allowed. Members are exactly the formulas over
//! those atoms and connectives with modal depth at most `depth` and at most
//! `cap` Boolean connective nodes. Both measures can only shrink when passing
//! to a subformula, so the set is subformula-closed.

use std::collections::BTreeSet;
use std::fmt;

use super::parse::is_atom_name;
use super::Formula;
use crate::error::{Error, Result};

pub const DEFAULT_UNIVERSE_GUARD: usize = 50_000;
pub const DEFAULT_CAP: usize = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Connective {
    Top,
    Bottom,
    Not,
    And,
    Or,
    Implies,
    Iff,
    Box,
    Diamond,
}

impl Connective {
    pub const ALL: [Connective; 9] = [
        Connective::Top,
        Connective::Bottom,
        Connective::Not,
        Connective::And,
        Connective::Or,
        Connective::Implies,
        Connective::Iff,
        Connective::Box,
        Connective::Diamond,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Connective::Top => "true",
            Connective::Bottom => "false",
            Connective::Not => "not",
            Connective::And => "and",
            Connective::Or => "or",
            Connective::Implies => "implies",
            Connective::Iff => "iff",
            Connective::Box => "box",
            Connective::Diamond => "diamond",
        }
    }

    fn combine(self, a: &Formula, b: &Formula) -> Option<Formula> {
        let (a, b) = (a.clone(), b.clone());
        match self {
            Connective::And => Some(Formula::and(a, b)),
            Connective::Or => Some(Formula::or(a, b)),
            Connective::Implies => Some(Formula::implies(a, b)),
            Connective::Iff => Some(Formula::iff(a, b)),
            _ => None,
        }
    }
}

/// A set of connectives. The default is `not,and,implies,box,diamond`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Connectives(BTreeSet<Connective>);

impl Default for Connectives {
    fn default() -> Self {
        Connectives(
            [
                Connective::Not,
                Connective::And,
                Connective::Implies,
                Connective::Box,
                Connective::Diamond,
            ]
            .into(),
        )
    }
}

impl Connectives {
    pub fn new(set: impl IntoIterator<Item = Connective>) -> Self {
        Connectives(set.into_iter().collect())
    }

    pub fn contains(&self, c: Connective) -> bool {
        self.0.contains(&c)
    }

    pub fn iter(&self) -> impl Iterator<Item = Connective> + '_ {
        self.0.iter().copied()
    }

    /// Comma-separated connective names, e.g. `not,and,box`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut set = BTreeSet::new();
        for part in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let c = Connective::ALL
                .into_iter()
                .find(|c| c.name() == part)
                .ok_or_else(|| Error::InvalidArgument(format!("unknown connective `{part}`")))?;
            set.insert(c);
        }
        Ok(Connectives(set))
    }

    fn binary(&self) -> Vec<Connective> {
        self.iter()
            .filter(|c| {
                matches!(
                    c,
                    Connective::And | Connective::Or | Connective::Implies | Connective::Iff
                )
            })
            .collect()
    }
}

impl fmt::Display for Connectives {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.iter().map(Connective::name).collect();
        f.write_str(&names.join(","))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormulaUniverse {
    atoms: Vec<String>,
    depth: usize,
    cap: usize,
    connectives: Connectives,
    members: BTreeSet<Formula>,
}

impl FormulaUniverse {
    pub fn atoms(&self) -> &[String] {
        &self.atoms
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn connectives(&self) -> &Connectives {
        &self.connectives
    }

    pub fn members(&self) -> &BTreeSet<Formula> {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, f: &Formula) -> bool {
        self.members.contains(f)
    }

    /// Injectivity and loop-freedom of box and diamond on this universe.
    pub fn check_modal_operators(&self) -> ModalOperatorReport {
        check_modal_operator(self)
    }
}

fn over_guard(count: usize, guard: usize) -> Result<()> {
    if count > guard {
        Err(Error::GuardExceeded {
            required: format!("at least {count} formulas"),
            guard,
        })
    } else {
        Ok(())
    }
}

pub fn formula_universe<S: AsRef<str>>(
    atoms: &[S],
    depth: usize,
    cap: usize,
    connectives: &Connectives,
    guard: usize,
) -> Result<FormulaUniverse> {
    let mut atom_names: Vec<String> = Vec::new();
    for a in atoms {
        let a = a.as_ref();
        if !is_atom_name(a) {
            return Err(Error::InvalidArgument(format!("invalid atom name `{a}`")));
        }
        if !atom_names.iter().any(|x| x == a) {
            atom_names.push(a.to_string());
        }
    }

    let binary = connectives.binary();
    let modal: Vec<fn(Formula) -> Formula> = [
        (Connective::Box, Formula::nec as fn(Formula) -> Formula),
        (Connective::Diamond, Formula::pos),
    ]
    .into_iter()
    .filter(|(c, _)| connectives.contains(*c))
    .map(|(_, f)| f)
    .collect();

    let mut base: BTreeSet<Formula> = atom_names.iter().map(Formula::atom).collect();
    if connectives.contains(Connective::Top) {
        base.insert(Formula::Top);
    }
    if connectives.contains(Connective::Bottom) {
        base.insert(Formula::Bottom);
    }

    // layer[b]: formulas of the current modal depth bound with exactly b
    // Boolean nodes
    let mut prev: Vec<BTreeSet<Formula>> = Vec::new();
    for d in 0..=depth {
        let mut layer: Vec<BTreeSet<Formula>> = Vec::with_capacity(cap + 1);
        let mut total = 0usize;
        for b in 0..=cap {
            let mut set = if b == 0 {
                base.clone()
            } else {
                BTreeSet::new()
            };
            if d > 0 {
                for f in &prev[b] {
                    for m in &modal {
                        set.insert(m(f.clone()));
                    }
                }
            }
            if b > 0 {
                if connectives.contains(Connective::Not) {
                    for f in &layer[b - 1] {
                        set.insert(Formula::not(f.clone()));
                    }
                }
                for left in 0..b {
                    let right = b - 1 - left;
                    let pairs = layer[left].len().saturating_mul(layer[right].len());
                    over_guard(
                        total + set.len() + pairs.saturating_mul(binary.len()),
                        guard,
                    )?;
                    for x in &layer[left] {
                        for y in &layer[right] {
                            for c in &binary {
                                set.extend(c.combine(x, y));
                            }
                        }
                    }
                }
            }
            total += set.len();
            over_guard(total, guard)?;
            layer.push(set);
        }
        prev = layer;
    }

    Ok(FormulaUniverse {
        atoms: atom_names,
        depth,
        cap,
        connectives: connectives.clone(),
        members: prev.into_iter().flatten().collect(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ModalOperatorReport {
    pub checked: usize,
    pub violations: Vec<String>,
}

impl ModalOperatorReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks, for box and diamond as maps on formulas, that distinct members
/// have distinct images, that no member is its own image, and that
/// `op^(n+2)(s) != op(s)` for every iterate whose modal depth stays within
/// `depth + 2`.
pub fn check_modal_operator(universe: &FormulaUniverse) -> ModalOperatorReport {
    let mut report = ModalOperatorReport::default();
    let budget = universe.depth + 2;
    type Op = fn(Formula) -> Formula;
    let ops: [(&str, Op); 2] = [("[]", Formula::nec), ("<>", Formula::pos)];
    for (name, op) in ops {
        let mut images = BTreeSet::new();
        for s in universe.members() {
            report.checked += 1;
            let once = op(s.clone());
            if &once == s {
                report.violations.push(format!("{name}({s}) = {s}"));
            }
            if !images.insert(once.clone()) {
                report
                    .violations
                    .push(format!("{name} not injective at {s}"));
            }
            let mut iterate = op(once.clone());
            let mut n = 0usize;
            while iterate.modal_depth() <= budget {
                if iterate == once {
                    report
                        .violations
                        .push(format!("{name}^{}({s}) = {name}({s})", n + 2));
                }
                iterate = op(iterate);
                n += 1;
            }
        }
    }
    report
}
