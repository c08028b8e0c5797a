//! Reproducible corpora: the household example, a two-token mini-game, and
//! seeded random contexts, Kripke models, iterators and formulas.
//!
//! Random generation uses ChaCha8 seeded from a `u64`, so a seed fixes the
//! output on every platform.

use std::collections::BTreeSet;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::context::{
    build_full_space, restrict, uncurry_time, Context, Instance, Signature, Snapshot, StateId,
};
use crate::determinability::IteratorMap;
use crate::error::{Error, Result};
use crate::logic::{Formula, KripkeModel};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn household_signature(horizon: usize) -> Result<Arc<Signature>> {
    if horizon < 2 {
        return Err(Error::InvalidArgument("horizon must be at least 2".into()));
    }
    Ok(Arc::new(Signature::new(
        ["Home", "Out"],
        ["Alice", "Bob"],
        (0..horizon).map(|t| t.to_string()),
    )?))
}

/// Whenever Bob is home, Alice is home one hour later.
pub fn gen_alice_bob(horizon: usize, guard: usize) -> Result<Context> {
    let sig = household_signature(horizon)?;
    let full = build_full_space(&sig, guard)?;
    let (home, alice, bob) = (sig.state("Home")?, sig.entity("Alice")?, sig.entity("Bob")?);
    Ok(restrict(&full, |w| {
        sig.time_ids().all(|t| match sig.successor(t) {
            Some(next) => w.get(bob, t) != home || w.get(alice, next) == home,
            None => true,
        })
    }))
}

/// [`gen_alice_bob`] with Bob additionally home at every odd hour.
pub fn gen_alice_bob_odd(horizon: usize, guard: usize) -> Result<Context> {
    let base = gen_alice_bob(horizon, guard)?;
    let sig = base.signature().clone();
    let (home, bob) = (sig.state("Home")?, sig.entity("Bob")?);
    Ok(restrict(&base, |w| {
        sig.time_ids()
            .filter(|t| t.0 % 2 == 1)
            .all(|t| w.get(bob, t) == home)
    }))
}

pub const MINIGAME_HORIZON: usize = 4;
const CELLS: [(u8, u8); 4] = [(0, 0), (0, 1), (1, 0), (1, 1)];
const TOKENS: [&str; 2] = ["red", "blue"];

fn cell_name(c: usize) -> String {
    let (r, k) = CELLS[c];
    format!("c{r}{k}")
}

fn adjacent(a: usize, b: usize) -> bool {
    let (x, y) = (CELLS[a], CELLS[b]);
    x.0.abs_diff(y.0) + x.1.abs_diff(y.1) == 1
}

/// The two-token game on a 2x2 board.
///
/// Tokens `red` and `blue` start on any two distinct cells. Red moves at
/// even steps and blue at odd steps; a move slides the mover's token to an
/// orthogonally adjacent empty cell (there is always at least one). Play
/// lasts [`MINIGAME_HORIZON`] time points.
///
/// Returns `(base, turn_tracked)`. In `base` a token's state is its cell
/// (`c00` .. `c11`), so a position does not say whose turn it is. In
/// `turn_tracked` each state also carries a bit, `c01.1` for the token
/// whose player moves next and `c01.0` for the other one.
pub fn gen_minigame() -> Result<(Context, Context)> {
    let times: Vec<String> = (0..MINIGAME_HORIZON).map(|t| t.to_string()).collect();
    let base_states: Vec<String> = (0..4).map(cell_name).collect();
    let turn_states: Vec<String> = (0..4)
        .flat_map(|c| [format!("{}.0", cell_name(c)), format!("{}.1", cell_name(c))])
        .collect();
    let base_sig = Arc::new(Signature::new(base_states, TOKENS, times.clone())?);
    let turn_sig = Arc::new(Signature::new(turn_states, TOKENS, times)?);

    let mut plays: Vec<Vec<[usize; 2]>> = Vec::new();
    let mut stack: Vec<Vec<[usize; 2]>> = Vec::new();
    for r in 0..4 {
        for b in 0..4 {
            if r != b {
                stack.push(vec![[r, b]]);
            }
        }
    }
    while let Some(play) = stack.pop() {
        if play.len() == MINIGAME_HORIZON {
            plays.push(play);
            continue;
        }
        let pos = *play.last().expect("non-empty");
        let mover = (play.len() - 1) % 2;
        for dest in 0..4 {
            if adjacent(pos[mover], dest) && dest != pos[1 - mover] {
                let mut next = pos;
                next[mover] = dest;
                let mut p = play.clone();
                p.push(next);
                stack.push(p);
            }
        }
    }

    let mut base = Context::empty(base_sig.clone());
    let mut turn = Context::empty(turn_sig.clone());
    for play in &plays {
        let snaps: Vec<Snapshot> = play
            .iter()
            .map(|pos| Snapshot(pos.iter().map(|&c| StateId(c)).collect()))
            .collect();
        base.insert(uncurry_time(&base_sig, &snaps)?)?;
        let snaps: Vec<Snapshot> = play
            .iter()
            .enumerate()
            .map(|(t, pos)| {
                let mover = t % 2;
                Snapshot(
                    (0..2)
                        .map(|tok| StateId(2 * pos[tok] + usize::from(tok == mover)))
                        .collect(),
                )
            })
            .collect();
        turn.insert(uncurry_time(&turn_sig, &snaps)?)?;
    }
    Ok((base, turn))
}

fn random_signature(states: usize, entities: usize, times: usize) -> Result<Arc<Signature>> {
    Ok(Arc::new(Signature::new(
        (0..states).map(|i| format!("s{i}")),
        (0..entities).map(|i| format!("e{i}")),
        (0..times).map(|i| i.to_string()),
    )?))
}

/// `count` instances drawn cell by cell uniformly; duplicates collapse, so
/// the result may be smaller.
pub fn gen_random_context(
    seed: u64,
    states: usize,
    entities: usize,
    times: usize,
    count: usize,
) -> Result<Context> {
    let sig = random_signature(states, entities, times)?;
    let mut rng = rng(seed);
    let mut ctx = Context::empty(sig.clone());
    for _ in 0..count {
        let inst = Instance::from_fn(sig.clone(), |_, _| StateId(rng.gen_range(0..states)))?;
        ctx.insert(inst)?;
    }
    Ok(ctx)
}

/// Worlds `w0..`; each ordered pair (self-loops included) is an edge with
/// probability `density`, each atom holds at each world with probability 1/2.
pub fn gen_random_kripke<S: AsRef<str>>(
    seed: u64,
    worlds: usize,
    atoms: &[S],
    density: f64,
) -> Result<KripkeModel> {
    if !(0.0..=1.0).contains(&density) {
        return Err(Error::InvalidArgument(format!(
            "density {density} not in [0, 1]"
        )));
    }
    let mut rng = rng(seed);
    let names: Vec<String> = (0..worlds).map(|i| format!("w{i}")).collect();
    let mut edges = Vec::new();
    for a in &names {
        for b in &names {
            if rng.gen_bool(density) {
                edges.push((a.as_str(), b.as_str()));
            }
        }
    }
    let mut val = Vec::new();
    for w in &names {
        for atom in atoms {
            if rng.gen_bool(0.5) {
                val.push((w.as_str(), atom.as_ref().to_string()));
            }
        }
    }
    KripkeModel::new(names.iter().map(String::as_str), edges, val)
}

/// A random iterator over `domain` distinct snapshots, each with a non-empty
/// image inside the domain, plus a non-empty seed set.
pub fn gen_random_iterator(
    seed: u64,
    states: usize,
    entities: usize,
    domain: usize,
) -> Result<(IteratorMap, BTreeSet<Snapshot>)> {
    let sig = random_signature(states, entities, 1)?;
    let mut rng = rng(seed);
    let mut all: Vec<Snapshot> = vec![Snapshot(Vec::new())];
    for _ in 0..entities {
        all = all
            .into_iter()
            .flat_map(|s| {
                (0..states).map(move |x| {
                    let mut v = s.0.clone();
                    v.push(StateId(x));
                    Snapshot(v)
                })
            })
            .collect();
    }
    all.shuffle(&mut rng);
    all.truncate(domain.clamp(1, all.len()));

    let pick_subset = |rng: &mut ChaCha8Rng| -> BTreeSet<Snapshot> {
        let mut set: BTreeSet<Snapshot> =
            all.iter().filter(|_| rng.gen_bool(0.5)).cloned().collect();
        if set.is_empty() {
            set.insert(all[rng.gen_range(0..all.len())].clone());
        }
        set
    };
    let mut table = std::collections::BTreeMap::new();
    for s in all.clone() {
        table.insert(s, pick_subset(&mut rng));
    }
    let seeds = pick_subset(&mut rng);
    Ok((IteratorMap::new(sig, table)?, seeds))
}

/// A random formula with at most `size` nodes over the given atoms, using
/// every constructor of the grammar.
pub fn random_formula<R: Rng, S: AsRef<str>>(rng: &mut R, atoms: &[S], size: usize) -> Formula {
    if size <= 1 || rng.gen_bool(0.2) {
        return match rng.gen_range(0..10) {
            0 => Formula::Top,
            1 => Formula::Bottom,
            _ => Formula::atom(atoms[rng.gen_range(0..atoms.len())].as_ref()),
        };
    }
    match rng.gen_range(0..7) {
        0 => Formula::not(random_formula(rng, atoms, size - 1)),
        1 => Formula::nec(random_formula(rng, atoms, size - 1)),
        2 => Formula::pos(random_formula(rng, atoms, size - 1)),
        k => {
            let left = rng.gen_range(1..size.max(2));
            let a = random_formula(rng, atoms, left);
            let b = random_formula(rng, atoms, (size - 1).saturating_sub(left).max(1));
            match k {
                3 => Formula::and(a, b),
                4 => Formula::or(a, b),
                5 => Formula::implies(a, b),
                _ => Formula::iff(a, b),
            }
        }
    }
}
