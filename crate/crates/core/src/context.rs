//! Signatures, instances and contexts over finite states, entities and time.
//!
//! An [`Instance`] is a total table `(entity, time) -> state`, stored
//! entity-major. A [`Context`] is a set of instances sharing one signature,
//! kept in lexicographic order of their cell tables.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Default bound on the number of instances `build_full_space` may enumerate.
pub const DEFAULT_GUARD: usize = 1 << 20;

const RESERVED: [char; 6] = ['@', '=', ';', ',', '#', ':'];

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StateId(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EntityId(pub usize);

/// Position in the time chain; the chain order is the position order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TimeId(pub usize);

/// The `(S, E, T)` triple. Symbols keep their input order, which is also the
/// canonical order used everywhere else.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Signature {
    states: Vec<String>,
    entities: Vec<String>,
    times: Vec<String>,
}

fn collect_symbols<I, S>(kind: &str, items: I) -> Result<Vec<String>>
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let symbols: Vec<String> = items.into_iter().map(Into::into).collect();
    if symbols.is_empty() {
        return Err(Error::InvalidSignature(format!("{kind} set is empty")));
    }
    let mut seen = BTreeSet::new();
    for s in &symbols {
        if s.is_empty()
            || s.chars()
                .any(|c| c.is_whitespace() || RESERVED.contains(&c))
        {
            return Err(Error::InvalidSignature(format!(
                "{kind} symbol `{s}` is empty or contains a reserved character"
            )));
        }
        if !seen.insert(s.as_str()) {
            return Err(Error::InvalidSignature(format!("duplicate {kind} `{s}`")));
        }
    }
    Ok(symbols)
}

impl Signature {
    pub fn new<A, B, C, S1, S2, S3>(states: A, entities: B, times: C) -> Result<Self>
    where
        A: IntoIterator<Item = S1>,
        B: IntoIterator<Item = S2>,
        C: IntoIterator<Item = S3>,
        S1: Into<String>,
        S2: Into<String>,
        S3: Into<String>,
    {
        Ok(Signature {
            states: collect_symbols("state", states)?,
            entities: collect_symbols("entity", entities)?,
            times: collect_symbols("time", times)?,
        })
    }

    /// Same states and entities over a different time chain.
    pub fn with_times<I, S>(&self, times: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Ok(Signature {
            states: self.states.clone(),
            entities: self.entities.clone(),
            times: collect_symbols("time", times)?,
        })
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn entities(&self) -> &[String] {
        &self.entities
    }

    pub fn times(&self) -> &[String] {
        &self.times
    }

    pub fn state(&self, name: &str) -> Result<StateId> {
        self.states
            .iter()
            .position(|s| s == name)
            .map(StateId)
            .ok_or_else(|| Error::unknown("state", name))
    }

    pub fn entity(&self, name: &str) -> Result<EntityId> {
        self.entities
            .iter()
            .position(|s| s == name)
            .map(EntityId)
            .ok_or_else(|| Error::unknown("entity", name))
    }

    pub fn time(&self, name: &str) -> Result<TimeId> {
        self.times
            .iter()
            .position(|s| s == name)
            .map(TimeId)
            .ok_or_else(|| Error::unknown("time", name))
    }

    pub fn state_name(&self, s: StateId) -> &str {
        &self.states[s.0]
    }

    pub fn entity_name(&self, e: EntityId) -> &str {
        &self.entities[e.0]
    }

    pub fn time_name(&self, t: TimeId) -> &str {
        &self.times[t.0]
    }

    pub fn time_ids(&self) -> impl DoubleEndedIterator<Item = TimeId> + ExactSizeIterator {
        (0..self.times.len()).map(TimeId)
    }

    pub fn entity_ids(&self) -> impl DoubleEndedIterator<Item = EntityId> + ExactSizeIterator {
        (0..self.entities.len()).map(EntityId)
    }

    pub fn last_time(&self) -> TimeId {
        TimeId(self.times.len() - 1)
    }

    pub fn successor(&self, t: TimeId) -> Option<TimeId> {
        (t.0 + 1 < self.times.len()).then_some(TimeId(t.0 + 1))
    }

    pub fn num_cells(&self) -> usize {
        self.entities.len() * self.times.len()
    }

    pub(crate) fn check_time(&self, t: TimeId) -> Result<()> {
        if t.0 < self.times.len() {
            Ok(())
        } else {
            Err(Error::TimeOutOfRange(t.0))
        }
    }

    /// Renders a snapshot as `e1=s;e2=s` in entity order.
    pub fn render_snapshot(&self, snap: &Snapshot) -> String {
        self.entities
            .iter()
            .zip(&snap.0)
            .map(|(e, s)| format!("{e}={}", self.states[s.0]))
            .collect::<Vec<_>>()
            .join(";")
    }

    pub fn parse_snapshot(&self, text: &str) -> Result<Snapshot> {
        let mut slots: Vec<Option<StateId>> = vec![None; self.entities.len()];
        for part in text.trim().split(';') {
            let (e, s) = part.split_once('=').ok_or_else(|| {
                Error::InvalidArgument(format!("snapshot part `{part}` is not `entity=state`"))
            })?;
            let e = self.entity(e.trim())?;
            if slots[e.0].replace(self.state(s.trim())?).is_some() {
                return Err(Error::InvalidArgument(format!(
                    "entity `{}` assigned twice in snapshot",
                    self.entity_name(e)
                )));
            }
        }
        slots
            .into_iter()
            .enumerate()
            .map(|(i, s)| {
                s.ok_or_else(|| {
                    Error::InvalidArgument(format!("snapshot misses entity `{}`", self.entities[i]))
                })
            })
            .collect::<Result<Vec<_>>>()
            .map(Snapshot)
    }
}

/// One time slice of an instance: a total map entity -> state.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Snapshot(pub Vec<StateId>);

impl Snapshot {
    pub fn get(&self, e: EntityId) -> StateId {
        self.0[e.0]
    }

    pub fn states(&self) -> &[StateId] {
        &self.0
    }
}

/// A total assignment of states to every `(entity, time)` cell.
#[derive(Clone)]
pub struct Instance {
    sig: Arc<Signature>,
    cells: Vec<StateId>,
}

impl Instance {
    /// Builds an instance from an entity-major cell table.
    pub fn new(sig: Arc<Signature>, cells: Vec<StateId>) -> Result<Self> {
        if cells.len() != sig.num_cells() {
            return Err(Error::InvalidArgument(format!(
                "instance has {} cells, signature needs {}",
                cells.len(),
                sig.num_cells()
            )));
        }
        if let Some(bad) = cells.iter().find(|s| s.0 >= sig.states.len()) {
            return Err(Error::InvalidArgument(format!(
                "state index {} out of range",
                bad.0
            )));
        }
        Ok(Instance { sig, cells })
    }

    pub fn from_fn(
        sig: Arc<Signature>,
        mut f: impl FnMut(EntityId, TimeId) -> StateId,
    ) -> Result<Self> {
        let mut cells = Vec::with_capacity(sig.num_cells());
        for e in sig.entity_ids() {
            for t in sig.time_ids() {
                cells.push(f(e, t));
            }
        }
        Instance::new(sig, cells)
    }

    pub fn signature(&self) -> &Arc<Signature> {
        &self.sig
    }

    pub fn cells(&self) -> &[StateId] {
        &self.cells
    }

    pub fn get(&self, e: EntityId, t: TimeId) -> StateId {
        self.cells[e.0 * self.sig.times.len() + t.0]
    }

    pub fn snapshot(&self, t: TimeId) -> Snapshot {
        Snapshot(self.sig.entity_ids().map(|e| self.get(e, t)).collect())
    }

    pub fn trajectory(&self, e: EntityId) -> &[StateId] {
        let n = self.sig.times.len();
        &self.cells[e.0 * n..(e.0 + 1) * n]
    }

    /// Agreement on every entity at every time up to and including `t`.
    pub fn agrees_up_to(&self, other: &Instance, t: TimeId) -> bool {
        self.sig
            .entity_ids()
            .all(|e| self.trajectory(e)[..=t.0] == other.trajectory(e)[..=t.0])
    }

    pub(crate) fn same_signature(&self, sig: &Arc<Signature>) -> bool {
        Arc::ptr_eq(&self.sig, sig) || *self.sig == **sig
    }
}

impl PartialEq for Instance {
    fn eq(&self, other: &Self) -> bool {
        self.cells == other.cells && other.same_signature(&self.sig)
    }
}

impl Eq for Instance {}

impl PartialOrd for Instance {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Instance {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.cells.cmp(&other.cells).then_with(|| {
            if Arc::ptr_eq(&self.sig, &other.sig) {
                std::cmp::Ordering::Equal
            } else {
                self.sig.cmp(&other.sig)
            }
        })
    }
}

impl std::hash::Hash for Instance {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.cells.hash(state);
    }
}

impl fmt::Debug for Instance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .sig
            .entity_ids()
            .map(|e| {
                let traj: Vec<&str> = self
                    .trajectory(e)
                    .iter()
                    .map(|s| self.sig.state_name(*s))
                    .collect();
                format!("{}: {}", self.sig.entity_name(e), traj.join(" "))
            })
            .collect();
        write!(f, "Instance[{}]", rows.join(" | "))
    }
}

/// A finite set of instances over one signature.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Context {
    sig: Arc<Signature>,
    instances: BTreeSet<Instance>,
}

impl Context {
    pub fn empty(sig: Arc<Signature>) -> Self {
        Context {
            sig,
            instances: BTreeSet::new(),
        }
    }

    pub fn from_instances(
        sig: Arc<Signature>,
        instances: impl IntoIterator<Item = Instance>,
    ) -> Result<Self> {
        let mut ctx = Context::empty(sig);
        for inst in instances {
            ctx.insert(inst)?;
        }
        Ok(ctx)
    }

    /// Returns `false` when an equal instance was already present.
    pub fn insert(&mut self, inst: Instance) -> Result<bool> {
        if !inst.same_signature(&self.sig) {
            return Err(Error::SignatureMismatch);
        }
        Ok(self.instances.insert(inst))
    }

    pub fn signature(&self) -> &Arc<Signature> {
        &self.sig
    }

    pub fn len(&self) -> usize {
        self.instances.len()
    }

    pub fn is_empty(&self) -> bool {
        self.instances.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Instance> {
        self.instances.iter()
    }

    pub fn contains(&self, inst: &Instance) -> bool {
        self.instances.contains(inst)
    }

    pub fn is_subset(&self, other: &Context) -> bool {
        self.instances.is_subset(&other.instances)
    }

    /// Position of `inst` in canonical order.
    pub fn index_of(&self, inst: &Instance) -> Option<usize> {
        self.contains(inst)
            .then(|| self.instances.range(..inst).count())
    }
}

impl<'a> IntoIterator for &'a Context {
    type Item = &'a Instance;
    type IntoIter = std::collections::btree_set::Iter<'a, Instance>;

    fn into_iter(self) -> Self::IntoIter {
        self.instances.iter()
    }
}

/// `ω*`: the instance viewed as a sequence of snapshots, one per time.
pub fn curry_time(inst: &Instance) -> Vec<Snapshot> {
    inst.sig.time_ids().map(|t| inst.snapshot(t)).collect()
}

/// `ω@`: the instance viewed as one trajectory per entity.
pub fn curry_entity(inst: &Instance) -> Vec<Vec<StateId>> {
    inst.sig
        .entity_ids()
        .map(|e| inst.trajectory(e).to_vec())
        .collect()
}

pub fn uncurry_time(sig: &Arc<Signature>, snapshots: &[Snapshot]) -> Result<Instance> {
    if snapshots.len() != sig.times.len()
        || snapshots.iter().any(|s| s.0.len() != sig.entities.len())
    {
        return Err(Error::SignatureMismatch);
    }
    Instance::from_fn(sig.clone(), |e, t| snapshots[t.0].get(e))
}

pub fn uncurry_entity(sig: &Arc<Signature>, trajectories: &[Vec<StateId>]) -> Result<Instance> {
    if trajectories.len() != sig.entities.len()
        || trajectories.iter().any(|tr| tr.len() != sig.times.len())
    {
        return Err(Error::SignatureMismatch);
    }
    Instance::new(sig.clone(), trajectories.concat())
}

/// All members of `ctx` that agree with `reference` on every entity at every
/// time up to and including `t`. `reference` need not belong to `ctx`.
pub fn consistency_context(ctx: &Context, reference: &Instance, t: TimeId) -> Result<Context> {
    if !reference.same_signature(&ctx.sig) {
        return Err(Error::SignatureMismatch);
    }
    ctx.sig.check_time(t)?;
    Ok(restrict(ctx, |w| w.agrees_up_to(reference, t)))
}

pub fn restrict(ctx: &Context, mut pred: impl FnMut(&Instance) -> bool) -> Context {
    Context {
        sig: ctx.sig.clone(),
        instances: ctx.instances.iter().filter(|w| pred(w)).cloned().collect(),
    }
}

/// Enumerates every total function `E x T -> S` in lexicographic cell order.
pub fn build_full_space(sig: &Arc<Signature>, guard: usize) -> Result<Context> {
    let base = sig.states.len();
    let cells = sig.num_cells();
    let required = u32::try_from(cells)
        .ok()
        .and_then(|c| (base as u128).checked_pow(c));
    match required {
        Some(n) if n <= guard as u128 => {}
        Some(n) => {
            return Err(Error::GuardExceeded {
                required: format!("{base}^{cells} = {n}"),
                guard,
            })
        }
        None => {
            return Err(Error::GuardExceeded {
                required: format!("{base}^{cells}"),
                guard,
            })
        }
    }

    let mut instances = BTreeSet::new();
    let mut digits = vec![0usize; cells];
    loop {
        instances.insert(Instance {
            sig: sig.clone(),
            cells: digits.iter().copied().map(StateId).collect(),
        });
        // odometer: last cell varies fastest
        let mut i = cells;
        loop {
            if i == 0 {
                return Ok(Context {
                    sig: sig.clone(),
                    instances,
                });
            }
            i -= 1;
            digits[i] += 1;
            if digits[i] < base {
                break;
            }
            digits[i] = 0;
        }
    }
}
