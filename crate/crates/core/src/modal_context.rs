//! Modal contexts: power contexts whose worlds carry formula sets, related by
//! a relation under which box and diamond behave as in Kripke semantics.
//!
//! [`to_modal_context`] builds one from a Kripke model. Worlds are grouped by
//! their theory over a finite universe; each class becomes one context-world
//! holding that theory at index `(0, 0)`, and two context-worlds are related
//! when some members of their classes are. [`is_modal_context`] checks the
//! box/diamond biconditionals for every `s` whose box/diamond lies in the
//! universe.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::logic::{valid_world_name, Formula, FormulaUniverse, KripkeModel};

/// An equivalence class of Kripke worlds with identical theories.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WorldClass {
    /// Lexicographically smallest member name.
    pub representative: String,
    pub members: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContextWorld {
    pub name: String,
    /// Formula sets indexed entity-major over `E x T`.
    cells: Vec<BTreeSet<Formula>>,
    /// Kripke worlds this context-world stands for; empty when unknown.
    pub class: Vec<String>,
}

impl ContextWorld {
    pub fn cells(&self) -> &[BTreeSet<Formula>] {
        &self.cells
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModalContext {
    entities: Vec<String>,
    times: Vec<String>,
    worlds: Vec<ContextWorld>,
    relation: BTreeSet<(usize, usize)>,
    universe: FormulaUniverse,
}

impl ModalContext {
    /// An empty context over the given index sets.
    pub fn new(
        entities: Vec<String>,
        times: Vec<String>,
        universe: FormulaUniverse,
    ) -> Result<Self> {
        if entities.is_empty() || times.is_empty() {
            return Err(Error::InvalidSignature(
                "entity and time sets must be non-empty".into(),
            ));
        }
        for set in [&entities, &times] {
            let unique: BTreeSet<&String> = set.iter().collect();
            if unique.len() != set.len() || set.iter().any(|s| !valid_world_name(s)) {
                return Err(Error::InvalidSignature(format!("bad index set {set:?}")));
            }
        }
        Ok(ModalContext {
            entities,
            times,
            worlds: Vec::new(),
            relation: BTreeSet::new(),
            universe,
        })
    }

    /// A context indexed by the singletons `E = T = {0}`.
    pub fn singleton(universe: FormulaUniverse) -> Self {
        ModalContext::new(vec!["0".into()], vec!["0".into()], universe)
            .expect("singleton index sets are valid")
    }

    pub fn add_world(
        &mut self,
        name: impl Into<String>,
        cells: Vec<BTreeSet<Formula>>,
        class: Vec<String>,
    ) -> Result<usize> {
        let name = name.into();
        if !valid_world_name(&name) || self.worlds.iter().any(|w| w.name == name) {
            return Err(Error::InvalidArgument(format!(
                "bad or duplicate world `{name}`"
            )));
        }
        if cells.len() != self.entities.len() * self.times.len() {
            return Err(Error::InvalidArgument(format!(
                "world `{name}` has {} cells, expected {}",
                cells.len(),
                self.entities.len() * self.times.len()
            )));
        }
        if let Some(f) = cells.iter().flatten().find(|f| !self.universe.contains(f)) {
            return Err(Error::OutOfUniverse(f.to_string()));
        }
        if let Some(twin) = self.worlds.iter().find(|w| w.cells == cells) {
            return Err(Error::InvalidArgument(format!(
                "world `{name}` equals world `{}` as a function",
                twin.name
            )));
        }
        self.worlds.push(ContextWorld { name, cells, class });
        Ok(self.worlds.len() - 1)
    }

    pub fn add_edge(&mut self, from: &str, to: &str) -> Result<()> {
        let (a, b) = (self.world(from)?, self.world(to)?);
        self.relation.insert((a, b));
        Ok(())
    }

    pub fn world(&self, name: &str) -> Result<usize> {
        self.worlds
            .iter()
            .position(|w| w.name == name)
            .ok_or_else(|| Error::unknown("context world", name))
    }

    pub fn worlds(&self) -> &[ContextWorld] {
        &self.worlds
    }

    pub fn entities(&self) -> &[String] {
        &self.entities
    }

    pub fn times(&self) -> &[String] {
        &self.times
    }

    pub fn relation(&self) -> &BTreeSet<(usize, usize)> {
        &self.relation
    }

    pub fn universe(&self) -> &FormulaUniverse {
        &self.universe
    }

    pub fn successors(&self, w: usize) -> impl Iterator<Item = usize> + '_ {
        self.relation.range((w, 0)..(w + 1, 0)).map(|&(_, b)| b)
    }

    pub fn cell(&self, world: usize, entity: usize, time: usize) -> &BTreeSet<Formula> {
        &self.worlds[world].cells[entity * self.times.len() + time]
    }

    /// The formula set at the first entity and first time, i.e. `ω(0,0)`.
    pub fn origin(&self, world: usize) -> &BTreeSet<Formula> {
        self.cell(world, 0, 0)
    }
}

pub fn quotient(model: &KripkeModel, universe: &FormulaUniverse) -> Vec<WorldClass> {
    let mut groups: BTreeMap<BTreeSet<Formula>, Vec<String>> = BTreeMap::new();
    for w in 0..model.worlds().len() {
        groups
            .entry(model.world_theory(w, universe))
            .or_default()
            .push(model.world_name(w).to_string());
    }
    let mut classes: Vec<WorldClass> = groups
        .into_values()
        .map(|mut members| {
            members.sort();
            WorldClass {
                representative: members[0].clone(),
                members,
            }
        })
        .collect();
    classes.sort_by(|a, b| a.representative.cmp(&b.representative));
    classes
}

/// One context-world `c<k>` per theory class, in representative order.
pub fn to_modal_context(model: &KripkeModel, universe: &FormulaUniverse) -> ModalContext {
    let classes = quotient(model, universe);
    let mut mc = ModalContext::singleton(universe.clone());
    let mut class_of = vec![0usize; model.worlds().len()];
    for (k, class) in classes.iter().enumerate() {
        let rep = model
            .world(&class.representative)
            .expect("class members are model worlds");
        for m in &class.members {
            class_of[model.world(m).expect("class members are model worlds")] = k;
        }
        mc.add_world(
            format!("c{k}"),
            vec![model.world_theory(rep, universe)],
            class.members.clone(),
        )
        .expect("distinct classes have distinct theories");
    }
    for &(a, b) in model.relation() {
        mc.relation.insert((class_of[a], class_of[b]));
    }
    mc
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Operator {
    Box,
    Diamond,
}

/// `Forward`: the modal formula is in the set but the successors disagree.
/// `Backward`: the successors agree but the modal formula is missing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Forward,
    Backward,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub world: String,
    pub entity: String,
    pub time: String,
    pub formula: Formula,
    pub operator: Operator,
    pub side: Side,
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let op = match self.operator {
            Operator::Box => "[]",
            Operator::Diamond => "<>",
        };
        let side = match self.side {
            Side::Forward => "=>",
            Side::Backward => "<=",
        };
        write!(
            f,
            "world {} at ({}, {}): {op}({}) fails {side}",
            self.world, self.entity, self.time, self.formula
        )
    }
}

/// Every violated instance of the box/diamond biconditionals; empty iff `mc`
/// is a modal context (relative to its universe).
pub fn is_modal_context(mc: &ModalContext) -> Vec<Violation> {
    let universe = mc.universe();
    let mut boxed = Vec::new();
    let mut diamonded = Vec::new();
    for s in universe.members() {
        let b = Formula::nec(s.clone());
        if universe.contains(&b) {
            boxed.push((s, b));
        }
        let d = Formula::pos(s.clone());
        if universe.contains(&d) {
            diamonded.push((s, d));
        }
    }

    let mut violations = Vec::new();
    for (w, world) in mc.worlds.iter().enumerate() {
        let succ: Vec<usize> = mc.successors(w).collect();
        for e in 0..mc.entities.len() {
            for t in 0..mc.times.len() {
                let here = mc.cell(w, e, t);
                let mut push = |formula: &Formula, operator, side| {
                    violations.push(Violation {
                        world: world.name.clone(),
                        entity: mc.entities[e].clone(),
                        time: mc.times[t].clone(),
                        formula: formula.clone(),
                        operator,
                        side,
                    })
                };
                for (s, b) in &boxed {
                    let lhs = here.contains(b);
                    let rhs = succ.iter().all(|&v| mc.cell(v, e, t).contains(*s));
                    if lhs != rhs {
                        push(
                            s,
                            Operator::Box,
                            if lhs { Side::Forward } else { Side::Backward },
                        );
                    }
                }
                for (s, d) in &diamonded {
                    let lhs = here.contains(d);
                    let rhs = succ.iter().any(|&v| mc.cell(v, e, t).contains(*s));
                    if lhs != rhs {
                        push(
                            s,
                            Operator::Diamond,
                            if lhs { Side::Forward } else { Side::Backward },
                        );
                    }
                }
            }
        }
    }
    violations
}

/// Kripke worlds whose theory is not carried at `(0, 0)` by their context
/// world; empty iff every world is represented. Context worlds that record
/// their class are matched by membership, otherwise any world with the
/// right theory counts.
pub fn verify_representation(model: &KripkeModel, mc: &ModalContext) -> Vec<String> {
    let mut failures = Vec::new();
    for w in 0..model.worlds().len() {
        let name = model.world_name(w);
        let theory = model.world_theory(w, mc.universe());
        let recorded = mc
            .worlds
            .iter()
            .position(|cw| cw.class.iter().any(|m| m == name));
        let ok = match recorded {
            Some(k) => *mc.origin(k) == theory,
            None => (0..mc.worlds.len()).any(|k| *mc.origin(k) == theory),
        };
        if !ok {
            failures.push(name.to_string());
        }
    }
    failures
}

/// Decides `φ` at a context world by membership in its `(0, 0)` set.
pub fn prove_in_context(mc: &ModalContext, world: &str, formula: &Formula) -> Result<bool> {
    if !mc.universe.contains(formula) {
        return Err(Error::OutOfUniverse(formula.to_string()));
    }
    let w = mc.world(world)?;
    Ok(mc.origin(w).contains(formula))
}

/// Reads a modal context back as a Kripke model: context worlds become
/// worlds, the relation is kept, and an atom holds where it is in `(0, 0)`.
pub fn induced_model(mc: &ModalContext) -> KripkeModel {
    let names: Vec<&str> = mc.worlds.iter().map(|w| w.name.as_str()).collect();
    let edges: Vec<(&str, &str)> = mc
        .relation
        .iter()
        .map(|&(a, b)| (names[a], names[b]))
        .collect();
    let mut val = Vec::new();
    for (k, name) in names.iter().enumerate() {
        for f in mc.origin(k) {
            if let Formula::Atom(a) = f {
                val.push((*name, a.clone()));
            }
        }
    }
    KripkeModel::new(names.iter().copied(), edges, val).expect("context worlds have valid names")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::{formula_universe, parse_formula, Connectives};

    fn universe(atoms: &[&str], depth: usize) -> FormulaUniverse {
        formula_universe(atoms, depth, 1, &Connectives::default(), 50_000).unwrap()
    }

    fn no_edges() -> Vec<(&'static str, &'static str)> {
        Vec::new()
    }

    #[test]
    fn quotient_of_distinct_worlds_is_discrete() {
        let m = KripkeModel::new(["a", "b"], [("a", "b")], [("b", "p")]).unwrap();
        let classes = quotient(&m, &universe(&["p"], 1));
        assert_eq!(classes.len(), 2);
        assert!(classes.iter().all(|c| c.members.len() == 1));
    }

    #[test]
    fn quotient_merges_twins() {
        let m = KripkeModel::new(["v", "u"], no_edges(), [("v", "p"), ("u", "p")]).unwrap();
        let classes = quotient(&m, &universe(&["p"], 1));
        assert_eq!(
            classes,
            vec![WorldClass {
                representative: "u".into(),
                members: vec!["u".into(), "v".into()],
            }]
        );
        let mc = to_modal_context(&m, &universe(&["p"], 1));
        assert_eq!(mc.worlds().len(), 1);
        assert!(mc.relation().is_empty());
    }

    #[test]
    fn single_world_context_holds_vacuous_boxes() {
        let m = KripkeModel::new(["w"], no_edges(), [("w", "p")]).unwrap();
        let u = universe(&["p"], 1);
        let mc = to_modal_context(&m, &u);
        assert_eq!(mc.worlds().len(), 1);
        let set = mc.origin(0);
        assert!(set.contains(&Formula::atom("p")));
        for f in u.members() {
            if matches!(f, Formula::Necessarily(_)) {
                assert!(set.contains(f), "{f}");
            }
            if matches!(f, Formula::Possibly(_)) {
                assert!(!set.contains(f), "{f}");
            }
        }
        assert!(is_modal_context(&mc).is_empty());
        assert!(verify_representation(&m, &mc).is_empty());
    }

    #[test]
    fn built_context_is_modal_and_representative() {
        let m = KripkeModel::new(
            ["w1", "w2", "w3"],
            [("w1", "w2"), ("w2", "w3"), ("w3", "w3")],
            [("w2", "p"), ("w3", "q")],
        )
        .unwrap();
        let u = universe(&["p", "q"], 2);
        let mc = to_modal_context(&m, &u);
        assert_eq!(is_modal_context(&mc), vec![]);
        assert!(verify_representation(&m, &mc).is_empty());
    }

    #[test]
    fn missing_successor_fact_violates_forward_side() {
        let u = universe(&["p"], 1);
        let mut mc = ModalContext::singleton(u);
        let p = Formula::atom("p");
        let bp = Formula::nec(p.clone());
        mc.add_world("a", vec![[bp.clone()].into()], vec![])
            .unwrap();
        mc.add_world("b", vec![BTreeSet::new()], vec![]).unwrap();
        mc.add_edge("a", "b").unwrap();
        let violations = is_modal_context(&mc);
        assert!(violations.iter().any(|v| v.world == "a"
            && v.formula == p
            && v.operator == Operator::Box
            && v.side == Side::Forward));
    }

    #[test]
    fn empty_context_is_modal() {
        let mc = ModalContext::singleton(universe(&["p"], 1));
        assert!(is_modal_context(&mc).is_empty());
    }

    #[test]
    fn perturbed_theory_breaks_representation() {
        let m = KripkeModel::new(["a", "b"], [("a", "b")], [("b", "p")]).unwrap();
        let u = universe(&["p"], 1);
        let mc = to_modal_context(&m, &u);
        let mut bad = mc.clone();
        let first = bad.worlds[0].cells[0].iter().next().unwrap().clone();
        bad.worlds[0].cells[0].remove(&first);
        assert_eq!(verify_representation(&m, &bad), vec!["a".to_string()]);
    }

    #[test]
    fn proving_by_membership() {
        let m = KripkeModel::new(["a", "b"], [("a", "b")], [("b", "p")]).unwrap();
        let u = universe(&["p"], 1);
        let mc = to_modal_context(&m, &u);
        assert!(prove_in_context(&mc, "c0", &parse_formula("<>p").unwrap()).unwrap());
        assert!(!prove_in_context(&mc, "c0", &parse_formula("p").unwrap()).unwrap());
        assert!(matches!(
            prove_in_context(&mc, "c0", &parse_formula("[][]p").unwrap()),
            Err(Error::OutOfUniverse(_))
        ));
        assert!(prove_in_context(&mc, "c9", &parse_formula("p").unwrap()).is_err());
    }

    #[test]
    fn rejects_sets_outside_universe_and_duplicate_worlds() {
        let mut mc = ModalContext::singleton(universe(&["p"], 0));
        assert!(matches!(
            mc.add_world("a", vec![[Formula::atom("q")].into()], vec![]),
            Err(Error::OutOfUniverse(_))
        ));
        mc.add_world("a", vec![BTreeSet::new()], vec![]).unwrap();
        assert!(mc.add_world("b", vec![BTreeSet::new()], vec![]).is_err());
    }
}
