use std::collections::{BTreeMap, BTreeSet};

use super::parse::is_atom_name;
use super::{Formula, FormulaUniverse};
use crate::error::{Error, Result};

/// `⟨W, R, V⟩` over named worlds. Atoms missing from the valuation are false
/// everywhere.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KripkeModel {
    worlds: Vec<String>,
    relation: BTreeSet<(usize, usize)>,
    valuation: BTreeMap<String, BTreeSet<usize>>,
    successors: Vec<Vec<usize>>,
}

pub(crate) fn valid_world_name(name: &str) -> bool {
    !name.is_empty() && !name.chars().any(|c| c.is_whitespace() || c == '#')
}

impl KripkeModel {
    pub fn new<W, E, V, S1, S2, S3, S4, S5>(worlds: W, edges: E, valuation: V) -> Result<Self>
    where
        W: IntoIterator<Item = S1>,
        E: IntoIterator<Item = (S2, S3)>,
        V: IntoIterator<Item = (S4, S5)>,
        S1: Into<String>,
        S2: AsRef<str>,
        S3: AsRef<str>,
        S4: AsRef<str>,
        S5: Into<String>,
    {
        let mut model = KripkeModel::empty();
        for w in worlds {
            model.add_world(w.into())?;
        }
        for (a, b) in edges {
            model.add_edge(a.as_ref(), b.as_ref())?;
        }
        for (w, atom) in valuation {
            model.set_true(w.as_ref(), atom.into())?;
        }
        Ok(model)
    }

    pub(crate) fn empty() -> Self {
        KripkeModel {
            worlds: Vec::new(),
            relation: BTreeSet::new(),
            valuation: BTreeMap::new(),
            successors: Vec::new(),
        }
    }

    pub(crate) fn add_world(&mut self, name: String) -> Result<usize> {
        if !valid_world_name(&name) {
            return Err(Error::InvalidArgument(format!(
                "invalid world name `{name}`"
            )));
        }
        if self.worlds.contains(&name) {
            return Err(Error::InvalidArgument(format!("duplicate world `{name}`")));
        }
        self.worlds.push(name);
        self.successors.push(Vec::new());
        Ok(self.worlds.len() - 1)
    }

    pub(crate) fn add_edge(&mut self, from: &str, to: &str) -> Result<()> {
        let (a, b) = (self.world(from)?, self.world(to)?);
        if self.relation.insert((a, b)) {
            let succ = &mut self.successors[a];
            let at = succ.partition_point(|x| *x < b);
            succ.insert(at, b);
        }
        Ok(())
    }

    pub(crate) fn set_true(&mut self, world: &str, atom: String) -> Result<()> {
        let w = self.world(world)?;
        if !is_atom_name(&atom) {
            return Err(Error::InvalidArgument(format!(
                "invalid atom name `{atom}`"
            )));
        }
        self.valuation.entry(atom).or_default().insert(w);
        Ok(())
    }

    pub fn world(&self, name: &str) -> Result<usize> {
        self.worlds
            .iter()
            .position(|w| w == name)
            .ok_or_else(|| Error::unknown("world", name))
    }

    pub fn world_name(&self, w: usize) -> &str {
        &self.worlds[w]
    }

    pub fn worlds(&self) -> &[String] {
        &self.worlds
    }

    pub fn relation(&self) -> &BTreeSet<(usize, usize)> {
        &self.relation
    }

    pub fn valuation(&self) -> &BTreeMap<String, BTreeSet<usize>> {
        &self.valuation
    }

    pub fn successors(&self, w: usize) -> &[usize] {
        &self.successors[w]
    }

    /// `M, w ⊨ φ` by name.
    pub fn satisfies(&self, world: &str, formula: &Formula) -> Result<bool> {
        Ok(self.holds(self.world(world)?, formula))
    }

    /// `M, w ⊨ φ` by world index.
    pub fn holds(&self, w: usize, formula: &Formula) -> bool {
        match formula {
            Formula::Top => true,
            Formula::Bottom => false,
            Formula::Atom(a) => self.valuation.get(a).is_some_and(|ws| ws.contains(&w)),
            Formula::Not(a) => !self.holds(w, a),
            Formula::And(a, b) => self.holds(w, a) && self.holds(w, b),
            Formula::Or(a, b) => self.holds(w, a) || self.holds(w, b),
            Formula::Implies(a, b) => !self.holds(w, a) || self.holds(w, b),
            Formula::Iff(a, b) => self.holds(w, a) == self.holds(w, b),
            Formula::Necessarily(a) => self.successors[w].iter().all(|&v| self.holds(v, a)),
            Formula::Possibly(a) => self.successors[w].iter().any(|&v| self.holds(v, a)),
        }
    }

    /// The members of `universe` true at `w`.
    pub fn world_theory(&self, w: usize, universe: &FormulaUniverse) -> BTreeSet<Formula> {
        universe
            .members()
            .iter()
            .filter(|f| self.holds(w, f))
            .cloned()
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::{formula_universe, parse_formula, Connectives};

    fn two_worlds() -> KripkeModel {
        KripkeModel::new(["w1", "w2"], [("w1", "w2")], [("w2", "p")]).unwrap()
    }

    fn eval(m: &KripkeModel, w: &str, f: &str) -> bool {
        m.satisfies(w, &parse_formula(f).unwrap()).unwrap()
    }

    #[test]
    fn satisfaction_examples() {
        let m = two_worlds();
        assert!(eval(&m, "w1", "<>p"));
        assert!(eval(&m, "w2", "[]p"));
        assert!(eval(&m, "w1", "[]p & ~p"));
        assert!(!eval(&m, "w2", "<>true"));
        assert!(!eval(&m, "w1", "q"));
    }

    #[test]
    fn unknown_world_is_an_error() {
        let m = two_worlds();
        assert!(matches!(
            m.satisfies("w9", &Formula::Top),
            Err(Error::Unknown { kind: "world", .. })
        ));
    }

    #[test]
    fn rejects_bad_names() {
        assert!(KripkeModel::new(
            ["w1", "w1"],
            Vec::<(&str, &str)>::new(),
            Vec::<(&str, &str)>::new()
        )
        .is_err());
        assert!(KripkeModel::new(["w1"], [("w1", "w2")], Vec::<(&str, &str)>::new()).is_err());
        assert!(KripkeModel::new(["w1"], Vec::<(&str, &str)>::new(), [("w1", "P")]).is_err());
    }

    #[test]
    fn theories() {
        let m = two_worlds();
        let p = Formula::atom("p");
        let lits =
            formula_universe(&["p"], 0, 1, &Connectives::parse("not").unwrap(), 100).unwrap();
        let th = m.world_theory(0, &lits);
        assert_eq!(th.len(), 1);
        assert!(th.contains(&p) ^ th.contains(&Formula::not(p.clone())));

        let u = formula_universe(&["p"], 1, 0, &Connectives::default(), 100).unwrap();
        let th = m.world_theory(1, &u);
        assert!(th.contains(&p));
        assert!(th.contains(&Formula::nec(p.clone())));

        let isolated =
            KripkeModel::new(["a", "b"], Vec::<(&str, &str)>::new(), [("a", "p")]).unwrap();
        let u = formula_universe(&["p", "q"], 2, 1, &Connectives::default(), 50_000).unwrap();
        for w in 0..2 {
            let th = isolated.world_theory(w, &u);
            for f in u.members() {
                if matches!(f, Formula::Necessarily(_)) {
                    assert!(th.contains(f), "{f} should hold vacuously");
                }
            }
        }
    }
}
