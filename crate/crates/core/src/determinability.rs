//! Determinability, determinism and iterators of finite contexts.
//!
//! A context is determinable when any two positions `(ω, t)` and `(ω', t')`
//! showing the same snapshot generate the same set of futures, compared
//! through the order isomorphism between the suffixes `t+` and `t'+`. On a
//! finite chain that isomorphism only exists between suffixes of equal
//! length, so besides the literal reading we provide a windowed one that
//! compares futures over their common horizon with the shift `t+n -> t'+n`.
//!
//! An iterator maps each occurring snapshot to the set of snapshots that can
//! follow it one step later. Times without a successor impose no constraint,
//! and snapshots seen only at the last time get the empty image.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use crate::context::{consistency_context, Context, Instance, Signature, Snapshot, TimeId};
use crate::error::{Error, Result};

/// A future: the snapshots of one instance from some time to the end.
pub type Trace = Vec<Snapshot>;

/// The order isomorphism `t+n -> t'+n` between two suffixes of equal length.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SuffixIso {
    pub source_start: TimeId,
    pub target_start: TimeId,
    len: usize,
}

impl SuffixIso {
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn map(&self, t: TimeId) -> Option<TimeId> {
        let offset = t.0.checked_sub(self.source_start.0)?;
        (offset < self.len).then_some(TimeId(self.target_start.0 + offset))
    }

    pub fn pairs(&self) -> impl Iterator<Item = (TimeId, TimeId)> + '_ {
        (0..self.len).map(|n| {
            (
                TimeId(self.source_start.0 + n),
                TimeId(self.target_start.0 + n),
            )
        })
    }
}

/// The unique strictly monotone bijection from `t+` onto `t'+`, if the two
/// suffixes have the same length.
pub fn suffix_iso(sig: &Signature, t: TimeId, t2: TimeId) -> Option<SuffixIso> {
    let n = sig.times().len();
    if t.0 >= n || t2.0 >= n {
        return None;
    }
    let (a, b) = (n - t.0, n - t2.0);
    (a == b).then_some(SuffixIso {
        source_start: t,
        target_start: t2,
        len: a,
    })
}

fn ensure_member(ctx: &Context, inst: &Instance) -> Result<()> {
    if ctx.contains(inst) {
        Ok(())
    } else {
        Err(Error::NotMember)
    }
}

fn suffix(inst: &Instance, t: TimeId) -> Trace {
    (t.0..inst.signature().times().len())
        .map(|u| inst.snapshot(TimeId(u)))
        .collect()
}

/// `{ ω̃*|t+ : ω̃ ∈ C^{ω,t}(Ω) }` with duplicates collapsed.
pub fn future_bundle(ctx: &Context, inst: &Instance, t: TimeId) -> Result<BTreeSet<Trace>> {
    ensure_member(ctx, inst)?;
    let consistent = consistency_context(ctx, inst, t)?;
    Ok(consistent.iter().map(|w| suffix(w, t)).collect())
}

/// Elementwise image of `C^{ω,t}(Ω)` at the successor of `t`.
pub fn next_snapshot_set(ctx: &Context, inst: &Instance, t: TimeId) -> Result<BTreeSet<Snapshot>> {
    ensure_member(ctx, inst)?;
    let sig = ctx.signature();
    sig.check_time(t)?;
    let next = sig
        .successor(t)
        .ok_or_else(|| Error::NoSuccessor(sig.time_name(t).to_string()))?;
    Ok(consistency_context(ctx, inst, t)?
        .iter()
        .map(|w| w.snapshot(next))
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Mode {
    /// Equal snapshots must have order-isomorphic suffixes and equal futures.
    #[default]
    Literal,
    /// Futures compared over the first `min(|t+|, |t'+|)` aligned times.
    Windowed,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Literal => "literal",
            Mode::Windowed => "windowed",
        })
    }
}

impl std::str::FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "literal" => Ok(Mode::Literal),
            "windowed" => Ok(Mode::Windowed),
            _ => Err(Error::InvalidArgument(format!("unknown mode `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FailureKind {
    /// Equal snapshots at times whose suffixes have different lengths.
    NoSuffixIso,
    BundleMismatch,
}

/// Two positions with equal snapshots whose futures differ. The bundles are
/// the ones actually compared (truncated in windowed mode).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub left: Instance,
    pub left_time: TimeId,
    pub right: Instance,
    pub right_time: TimeId,
    pub kind: FailureKind,
    pub left_bundle: BTreeSet<Trace>,
    pub right_bundle: BTreeSet<Trace>,
}

impl Witness {
    pub fn render(&self, sig: &Signature) -> String {
        let bundle = |b: &BTreeSet<Trace>| {
            b.iter()
                .map(|tr| {
                    let steps: Vec<String> = tr.iter().map(|s| sig.render_snapshot(s)).collect();
                    format!("({})", steps.join(" "))
                })
                .collect::<Vec<_>>()
                .join(" ")
        };
        let mut out = format!(
            "equal snapshot {} at time {} and time {}\n",
            sig.render_snapshot(&self.left.snapshot(self.left_time)),
            sig.time_name(self.left_time),
            sig.time_name(self.right_time),
        );
        if self.kind == FailureKind::NoSuffixIso {
            out.push_str("suffixes have different lengths; no order isomorphism\n");
        }
        out.push_str(&format!("left futures:  {}\n", bundle(&self.left_bundle)));
        out.push_str(&format!("right futures: {}\n", bundle(&self.right_bundle)));
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeterminabilityReport {
    pub determinable: bool,
    pub mode: Mode,
    pub witness: Option<Witness>,
}

struct Positions<'a> {
    instances: Vec<&'a Instance>,
    bundles: BTreeMap<(usize, usize), BTreeSet<Trace>>,
}

impl<'a> Positions<'a> {
    fn bundle(&mut self, i: usize, t: usize) -> &BTreeSet<Trace> {
        let instances = &self.instances;
        self.bundles.entry((i, t)).or_insert_with(|| {
            let w = instances[i];
            instances
                .iter()
                .filter(|o| o.agrees_up_to(w, TimeId(t)))
                .map(|o| suffix(o, TimeId(t)))
                .collect()
        })
    }
}

fn truncate(bundle: &BTreeSet<Trace>, window: usize) -> BTreeSet<Trace> {
    bundle.iter().map(|tr| tr[..window].to_vec()).collect()
}

pub fn is_determinable(ctx: &Context, mode: Mode) -> DeterminabilityReport {
    let sig = ctx.signature();
    let n_times = sig.times().len();
    let mut pos = Positions {
        instances: ctx.iter().collect(),
        bundles: BTreeMap::new(),
    };

    let mut by_snapshot: BTreeMap<Snapshot, Vec<(usize, usize)>> = BTreeMap::new();
    for (i, w) in pos.instances.iter().enumerate() {
        for t in sig.time_ids() {
            by_snapshot.entry(w.snapshot(t)).or_default().push((i, t.0));
        }
    }

    for i in 0..pos.instances.len() {
        for t in 0..n_times {
            let snap = pos.instances[i].snapshot(TimeId(t));
            for &(j, u) in &by_snapshot[&snap] {
                if (j, u) <= (i, t) {
                    continue;
                }
                let left = pos.bundle(i, t).clone();
                let right = pos.bundle(j, u).clone();
                let failure = match mode {
                    Mode::Literal => {
                        if suffix_iso(sig, TimeId(t), TimeId(u)).is_none() {
                            Some((FailureKind::NoSuffixIso, left, right))
                        } else if left != right {
                            Some((FailureKind::BundleMismatch, left, right))
                        } else {
                            None
                        }
                    }
                    Mode::Windowed => {
                        let window = (n_times - t).min(n_times - u);
                        let (l, r) = (truncate(&left, window), truncate(&right, window));
                        (l != r).then_some((FailureKind::BundleMismatch, l, r))
                    }
                };
                if let Some((kind, left_bundle, right_bundle)) = failure {
                    return DeterminabilityReport {
                        determinable: false,
                        mode,
                        witness: Some(Witness {
                            left: pos.instances[i].clone(),
                            left_time: TimeId(t),
                            right: pos.instances[j].clone(),
                            right_time: TimeId(u),
                            kind,
                            left_bundle,
                            right_bundle,
                        }),
                    };
                }
            }
        }
    }

    DeterminabilityReport {
        determinable: true,
        mode,
        witness: None,
    }
}

/// The first position (canonical order) with more than one next snapshot.
pub fn find_branching(ctx: &Context) -> Option<(Instance, TimeId, BTreeSet<Snapshot>)> {
    let sig = ctx.signature();
    for w in ctx {
        for t in sig.time_ids() {
            let Some(next) = sig.successor(t) else { break };
            let succ: BTreeSet<Snapshot> = ctx
                .iter()
                .filter(|o| o.agrees_up_to(w, t))
                .map(|o| o.snapshot(next))
                .collect();
            if succ.len() != 1 {
                return Some((w.clone(), t, succ));
            }
        }
    }
    None
}

/// Exactly one next snapshot at every position that has a successor.
/// Several initial snapshots are allowed.
pub fn is_deterministic(ctx: &Context) -> bool {
    find_branching(ctx).is_none()
}

/// `i : A -> P(A)`, rendered one `iter` line per domain snapshot.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IteratorMap {
    sig: Arc<Signature>,
    table: BTreeMap<Snapshot, BTreeSet<Snapshot>>,
}

impl IteratorMap {
    pub fn new(sig: Arc<Signature>, table: BTreeMap<Snapshot, BTreeSet<Snapshot>>) -> Result<Self> {
        let width = sig.entities().len();
        let states = sig.states().len();
        let ok = |s: &Snapshot| s.0.len() == width && s.0.iter().all(|x| x.0 < states);
        if !table.iter().all(|(k, v)| ok(k) && v.iter().all(ok)) {
            return Err(Error::SignatureMismatch);
        }
        Ok(IteratorMap { sig, table })
    }

    pub fn signature(&self) -> &Arc<Signature> {
        &self.sig
    }

    pub fn get(&self, s: &Snapshot) -> Option<&BTreeSet<Snapshot>> {
        self.table.get(s)
    }

    pub fn domain(&self) -> impl Iterator<Item = &Snapshot> {
        self.table.keys()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Snapshot, &BTreeSet<Snapshot>)> {
        self.table.iter()
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.table {
            let image = if v.is_empty() {
                "-".to_string()
            } else {
                v.iter()
                    .map(|s| self.sig.render_snapshot(s))
                    .collect::<Vec<_>>()
                    .join(",")
            };
            out.push_str(&format!(
                "iter {} -> {}\n",
                self.sig.render_snapshot(k),
                image
            ));
        }
        out
    }

    pub fn parse(sig: Arc<Signature>, text: &str) -> Result<Self> {
        let mut table = BTreeMap::new();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let body = line
                .strip_prefix("iter ")
                .ok_or_else(|| Error::format(n + 1, "expected `iter <snapshot> -> <image>`"))?;
            let (key, image) = body
                .split_once("->")
                .ok_or_else(|| Error::format(n + 1, "missing `->`"))?;
            let key = sig
                .parse_snapshot(key)
                .map_err(|e| Error::format(n + 1, e.to_string()))?;
            let image = image.trim();
            let set = if image == "-" {
                BTreeSet::new()
            } else {
                image
                    .split(',')
                    .map(|s| sig.parse_snapshot(s))
                    .collect::<Result<BTreeSet<_>>>()
                    .map_err(|e| Error::format(n + 1, e.to_string()))?
            };
            if table.insert(key, set).is_some() {
                return Err(Error::format(n + 1, "snapshot listed twice"));
            }
        }
        IteratorMap::new(sig, table)
    }
}

/// A snapshot that received two different next-sets from two positions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IteratorConflict {
    pub snapshot: Snapshot,
    pub first: (Instance, TimeId, BTreeSet<Snapshot>),
    pub second: (Instance, TimeId, BTreeSet<Snapshot>),
}

impl IteratorConflict {
    pub fn render(&self, sig: &Signature) -> String {
        let set = |s: &BTreeSet<Snapshot>| {
            s.iter()
                .map(|x| sig.render_snapshot(x))
                .collect::<Vec<_>>()
                .join(",")
        };
        format!(
            "snapshot {} maps to {{{}}} at time {} and to {{{}}} at time {}\n",
            sig.render_snapshot(&self.snapshot),
            set(&self.first.2),
            sig.time_name(self.first.1),
            set(&self.second.2),
            sig.time_name(self.second.1),
        )
    }
}

/// Builds `{(ω*(t), next_snapshot_set(ω, t))}` and checks it is a function.
#[allow(clippy::result_large_err)]
pub fn extract_iterator(ctx: &Context) -> std::result::Result<IteratorMap, IteratorConflict> {
    let sig = ctx.signature();
    let mut table: BTreeMap<Snapshot, (BTreeSet<Snapshot>, &Instance, TimeId)> = BTreeMap::new();
    for w in ctx {
        for t in sig.time_ids() {
            let Some(next) = sig.successor(t) else { break };
            let snap = w.snapshot(t);
            let image: BTreeSet<Snapshot> = ctx
                .iter()
                .filter(|o| o.agrees_up_to(w, t))
                .map(|o| o.snapshot(next))
                .collect();
            match table.get(&snap) {
                Some((existing, first, first_t)) if *existing != image => {
                    return Err(IteratorConflict {
                        snapshot: snap,
                        first: ((*first).clone(), *first_t, existing.clone()),
                        second: (w.clone(), t, image),
                    });
                }
                Some(_) => {}
                None => {
                    table.insert(snap, (image, w, t));
                }
            }
        }
    }
    let last = sig.last_time();
    let mut map: BTreeMap<Snapshot, BTreeSet<Snapshot>> =
        table.into_iter().map(|(k, (v, _, _))| (k, v)).collect();
    for w in ctx {
        map.entry(w.snapshot(last)).or_default();
    }
    Ok(IteratorMap {
        sig: sig.clone(),
        table: map,
    })
}

pub fn has_iterator(ctx: &Context) -> bool {
    extract_iterator(ctx).is_ok()
}

/// Unrolls every path of `horizon` snapshots that starts at a seed and steps
/// through `iter`. The generated context uses times `0..horizon`.
pub fn generate_from_iterator(
    iter: &IteratorMap,
    seeds: &BTreeSet<Snapshot>,
    horizon: usize,
    guard: usize,
) -> Result<Context> {
    if horizon == 0 {
        return Err(Error::InvalidArgument("horizon must be at least 1".into()));
    }
    let base = &iter.sig;
    let sig = Arc::new(base.with_times((0..horizon).map(|t| t.to_string()))?);
    let width = base.entities().len();
    if seeds.iter().any(|s| s.0.len() != width) {
        return Err(Error::SignatureMismatch);
    }

    let mut out = Context::empty(sig.clone());
    let mut stack: Vec<Vec<Snapshot>> = seeds.iter().rev().map(|s| vec![s.clone()]).collect();
    while let Some(path) = stack.pop() {
        if path.len() == horizon {
            if out.len() >= guard {
                return Err(Error::GuardExceeded {
                    required: format!("more than {guard}"),
                    guard,
                });
            }
            let inst = crate::context::uncurry_time(&sig, &path)?;
            out.insert(inst)?;
            continue;
        }
        let current = path.last().expect("paths are never empty");
        let image = iter
            .get(current)
            .ok_or_else(|| Error::MissingSnapshot(base.render_snapshot(current)))?;
        if image.is_empty() {
            return Err(Error::EmptyImage(base.render_snapshot(current)));
        }
        for next in image.iter().rev() {
            let mut p = path.clone();
            p.push(next.clone());
            stack.push(p);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::context::StateId;

    fn chain(states: &[&str], times: usize) -> Arc<Signature> {
        Arc::new(
            Signature::new(
                states.iter().copied(),
                ["x"],
                (0..times).map(|t| t.to_string()),
            )
            .unwrap(),
        )
    }

    fn word(sig: &Arc<Signature>, w: &str) -> Instance {
        let cells = w
            .chars()
            .map(|c| sig.state(&c.to_string()).unwrap())
            .collect();
        Instance::new(sig.clone(), cells).unwrap()
    }

    fn ctx_of(sig: &Arc<Signature>, words: &[&str]) -> Context {
        Context::from_instances(sig.clone(), words.iter().map(|w| word(sig, w))).unwrap()
    }

    fn snap(sig: &Signature, s: &str) -> Snapshot {
        Snapshot(vec![sig.state(s).unwrap()])
    }

    fn snaps(sig: &Signature, s: &[&str]) -> BTreeSet<Snapshot> {
        s.iter().map(|x| snap(sig, x)).collect()
    }

    #[test]
    fn suffix_iso_cases() {
        let sig = chain(&["a"], 3);
        let id = suffix_iso(&sig, TimeId(1), TimeId(1)).unwrap();
        assert_eq!(
            id.pairs().collect::<Vec<_>>(),
            vec![(TimeId(1), TimeId(1)), (TimeId(2), TimeId(2))]
        );
        assert!(suffix_iso(&sig, TimeId(0), TimeId(1)).is_none());

        let sig = chain(&["a"], 4);
        let iso = suffix_iso(&sig, TimeId(1), TimeId(1)).unwrap();
        assert_eq!(
            iso.pairs().collect::<Vec<_>>(),
            vec![
                (TimeId(1), TimeId(1)),
                (TimeId(2), TimeId(2)),
                (TimeId(3), TimeId(3))
            ]
        );
        assert_eq!(iso.map(TimeId(0)), None);
    }

    #[test]
    fn future_bundle_examples() {
        let sig = chain(&["a", "b", "c", "d"], 3);
        let ctx = ctx_of(&sig, &["abc", "dbd"]);
        let w1 = word(&sig, "abc");
        let bundle = future_bundle(&ctx, &w1, TimeId(1)).unwrap();
        let expected: BTreeSet<Trace> = [vec![snap(&sig, "b"), snap(&sig, "c")]].into();
        assert_eq!(bundle, expected);

        let single = ctx_of(&sig, &["abc"]);
        assert_eq!(future_bundle(&single, &w1, TimeId(0)).unwrap().len(), 1);

        assert!(matches!(
            future_bundle(&single, &word(&sig, "dbd"), TimeId(0)),
            Err(Error::NotMember)
        ));
    }

    #[test]
    fn future_bundle_at_last_time() {
        let sig = chain(&["a", "b"], 2);
        let ctx = ctx_of(&sig, &["aa", "ab", "ba"]);
        let w = word(&sig, "aa");
        let bundle = future_bundle(&ctx, &w, TimeId(1)).unwrap();
        assert_eq!(bundle.len(), 1);
        assert!(bundle.iter().all(|tr| tr.len() == 1));
    }

    #[test]
    fn distinct_snapshots_singleton_is_determinable() {
        let sig = chain(&["a", "b", "c"], 3);
        let ctx = ctx_of(&sig, &["abc"]);
        assert!(is_determinable(&ctx, Mode::Literal).determinable);
        assert!(is_determinable(&ctx, Mode::Windowed).determinable);
    }

    #[test]
    fn constant_singleton_literal_vs_windowed() {
        let sig = chain(&["a"], 3);
        let ctx = ctx_of(&sig, &["aaa"]);
        let lit = is_determinable(&ctx, Mode::Literal);
        assert!(!lit.determinable);
        let w = lit.witness.unwrap();
        assert_eq!((w.left_time, w.right_time), (TimeId(0), TimeId(1)));
        assert_eq!(w.kind, FailureKind::NoSuffixIso);
        let win = is_determinable(&ctx, Mode::Windowed);
        assert!(win.determinable);
        assert!(win.witness.is_none());
    }

    #[test]
    fn diverging_futures_not_determinable() {
        let sig = chain(&["a", "b", "c", "d"], 3);
        let ctx = ctx_of(&sig, &["abc", "dbd"]);
        for mode in [Mode::Literal, Mode::Windowed] {
            let report = is_determinable(&ctx, mode);
            assert!(!report.determinable);
            let w = report.witness.unwrap();
            assert_eq!((w.left_time, w.right_time), (TimeId(1), TimeId(1)));
            assert_eq!(w.kind, FailureKind::BundleMismatch);
            let bc: BTreeSet<Trace> = [vec![snap(&sig, "b"), snap(&sig, "c")]].into();
            let bd: BTreeSet<Trace> = [vec![snap(&sig, "b"), snap(&sig, "d")]].into();
            assert_eq!(w.left_bundle, bc);
            assert_eq!(w.right_bundle, bd);
        }
    }

    #[test]
    fn next_snapshot_set_examples() {
        let sig = chain(&["a", "b", "c", "d"], 3);
        let single = ctx_of(&sig, &["abc"]);
        assert_eq!(
            next_snapshot_set(&single, &word(&sig, "abc"), TimeId(0)).unwrap(),
            snaps(&sig, &["b"])
        );
        assert!(matches!(
            next_snapshot_set(&single, &word(&sig, "abc"), TimeId(2)),
            Err(Error::NoSuccessor(_))
        ));

        let sig2 = chain(&["a", "b", "c", "d"], 2);
        let fork = ctx_of(&sig2, &["ab", "ac"]);
        assert_eq!(
            next_snapshot_set(&fork, &word(&sig2, "ab"), TimeId(0)).unwrap(),
            snaps(&sig2, &["b", "c"])
        );
        let split = ctx_of(&sig2, &["ab", "dc"]);
        assert_eq!(
            next_snapshot_set(&split, &word(&sig2, "ab"), TimeId(0)).unwrap(),
            snaps(&sig2, &["b"])
        );
    }

    #[test]
    fn deterministic_cases() {
        let sig = chain(&["a", "b", "x", "y"], 3);
        assert!(is_deterministic(&ctx_of(&sig, &["abx"])));
        assert!(is_deterministic(&ctx_of(&sig, &["axy", "bxy"])));
        assert!(!is_deterministic(&ctx_of(&sig, &["axy", "axx"])));
    }

    #[test]
    fn iterator_of_constant_singleton() {
        let sig = chain(&["s"], 3);
        let it = extract_iterator(&ctx_of(&sig, &["sss"])).unwrap();
        assert_eq!(it.get(&snap(&sig, "s")), Some(&snaps(&sig, &["s"])));
        assert_eq!(it.len(), 1);
    }

    #[test]
    fn iterator_with_fork_and_terminal_snapshots() {
        let sig = chain(&["a", "b", "c"], 2);
        let it = extract_iterator(&ctx_of(&sig, &["ab", "ac"])).unwrap();
        assert_eq!(it.get(&snap(&sig, "a")), Some(&snaps(&sig, &["b", "c"])));
        assert_eq!(it.get(&snap(&sig, "b")), Some(&BTreeSet::new()));
        assert_eq!(it.get(&snap(&sig, "c")), Some(&BTreeSet::new()));
        assert_eq!(
            it.render(),
            "iter x=a -> x=b,x=c\niter x=b -> -\niter x=c -> -\n"
        );
        assert_eq!(IteratorMap::parse(sig.clone(), &it.render()).unwrap(), it);
    }

    #[test]
    fn iterator_conflict_is_reported() {
        let sig = chain(&["a", "b", "c", "x", "y"], 3);
        let ctx = ctx_of(&sig, &["abx", "cby"]);
        let conflict = extract_iterator(&ctx).unwrap_err();
        assert_eq!(conflict.snapshot, snap(&sig, "b"));
        assert_eq!(conflict.first.2, snaps(&sig, &["x"]));
        assert_eq!(conflict.second.2, snaps(&sig, &["y"]));
        assert!(!has_iterator(&ctx));
    }

    #[test]
    fn unrolling_examples() {
        let sig = chain(&["s"], 1);
        let s0 = snap(&sig, "s");
        let it = IteratorMap::new(sig.clone(), [(s0.clone(), [s0.clone()].into())].into()).unwrap();
        let ctx = generate_from_iterator(&it, &[s0].into(), 3, 1000).unwrap();
        assert_eq!(ctx.len(), 1);
        assert!(ctx
            .iter()
            .all(|w| w.cells().iter().all(|c| *c == StateId(0))));

        let sig = chain(&["a", "b", "c"], 1);
        let (a, b, c) = (snap(&sig, "a"), snap(&sig, "b"), snap(&sig, "c"));
        let it = IteratorMap::new(
            sig.clone(),
            [
                (a.clone(), [b.clone(), c.clone()].into()),
                (b.clone(), [b.clone()].into()),
                (c.clone(), [c.clone()].into()),
            ]
            .into(),
        )
        .unwrap();
        let ctx = generate_from_iterator(&it, &[a.clone()].into(), 3, 1000).unwrap();
        let sig3 = ctx.signature().clone();
        let expected = ctx_of(&sig3, &["abb", "acc"]);
        assert_eq!(ctx, expected);
    }

    #[test]
    fn unrolling_rejects_dead_ends() {
        let sig = chain(&["a", "b"], 1);
        let (a, b) = (snap(&sig, "a"), snap(&sig, "b"));
        let it = IteratorMap::new(
            sig.clone(),
            [
                (a.clone(), [b.clone()].into()),
                (b.clone(), BTreeSet::new()),
            ]
            .into(),
        )
        .unwrap();
        assert!(generate_from_iterator(&it, &[a.clone()].into(), 2, 1000).is_ok());
        assert!(matches!(
            generate_from_iterator(&it, &[a.clone()].into(), 3, 1000),
            Err(Error::EmptyImage(_))
        ));
        let partial = IteratorMap::new(sig.clone(), [(a.clone(), [b].into())].into()).unwrap();
        assert!(matches!(
            generate_from_iterator(&partial, &[a].into(), 3, 1000),
            Err(Error::MissingSnapshot(_))
        ));
    }
}
