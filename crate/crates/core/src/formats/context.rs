//! Context files.
//!
//! ```text
//! states: Home Out
//! entities: Alice Bob
//! time: 0 1 2
//! instance i0:
//!   Alice@0=Home Alice@1=Home Alice@2=Home
//!   Bob@0=Out Bob@1=Home Bob@2=Out
//! ```
//!
//! Cells are whitespace separated and may span lines; every cell of every
//! instance appears exactly once.

use std::sync::Arc;

use super::strip_comment;
use crate::context::{Context, Instance, Signature, StateId};
use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct LoadedContext {
    pub context: Context,
    /// Instance labels as written in the file.
    pub names: Vec<(String, Instance)>,
    pub warnings: Vec<String>,
}

impl LoadedContext {
    pub fn instance(&self, name: &str) -> Result<&Instance> {
        self.names
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, i)| i)
            .ok_or_else(|| Error::unknown("instance", name))
    }
}

struct Pending {
    name: String,
    line: usize,
    cells: Vec<Option<StateId>>,
}

pub fn parse_context(text: &str) -> Result<LoadedContext> {
    let mut states: Option<Vec<&str>> = None;
    let mut entities: Option<Vec<&str>> = None;
    let mut times: Option<Vec<&str>> = None;
    let mut sig: Option<Arc<Signature>> = None;
    let mut pending: Option<Pending> = None;
    let mut out: Option<LoadedContext> = None;

    fn finish(p: Pending, sig: &Arc<Signature>, out: &mut LoadedContext) -> Result<()> {
        let n_times = sig.times().len();
        let mut cells = Vec::with_capacity(p.cells.len());
        for (i, c) in p.cells.into_iter().enumerate() {
            let s = c.ok_or_else(|| {
                Error::format(
                    p.line,
                    format!(
                        "instance `{}` is missing cell {}@{}",
                        p.name,
                        sig.entities()[i / n_times],
                        sig.times()[i % n_times]
                    ),
                )
            })?;
            cells.push(s);
        }
        if out.names.iter().any(|(n, _)| *n == p.name) {
            return Err(Error::format(
                p.line,
                format!("duplicate instance name `{}`", p.name),
            ));
        }
        let inst = Instance::new(sig.clone(), cells)?;
        if !out.context.insert(inst.clone())? {
            out.warnings.push(format!(
                "line {}: instance `{}` duplicates an earlier instance and was collapsed",
                p.line, p.name
            ));
        }
        out.names.push((p.name, inst));
        Ok(())
    }

    for (idx, raw) in text.lines().enumerate() {
        let n = idx + 1;
        let line = strip_comment(raw).trim();
        if line.is_empty() {
            continue;
        }
        let headers = [
            ("states:", &mut states),
            ("entities:", &mut entities),
            ("time:", &mut times),
        ];
        let mut matched = false;
        for (prefix, slot) in headers {
            if let Some(rest) = line.strip_prefix(prefix) {
                if sig.is_some() || slot.is_some() {
                    return Err(Error::format(
                        n,
                        "header repeated or after the first instance",
                    ));
                }
                *slot = Some(rest.split_whitespace().collect());
                matched = true;
            }
        }
        if matched {
            continue;
        } else if let Some(rest) = line.strip_prefix("instance ") {
            if sig.is_none() {
                let (Some(s), Some(e), Some(t)) = (&states, &entities, &times) else {
                    return Err(Error::format(
                        n,
                        "instance before `states:`, `entities:` and `time:`",
                    ));
                };
                let built = Arc::new(
                    Signature::new(s.iter().copied(), e.iter().copied(), t.iter().copied())
                        .map_err(|err| Error::format(n, err.to_string()))?,
                );
                out = Some(LoadedContext {
                    context: Context::empty(built.clone()),
                    names: Vec::new(),
                    warnings: Vec::new(),
                });
                sig = Some(built);
            }
            let sig = sig.as_ref().expect("set above");
            if let Some(p) = pending.take() {
                finish(p, sig, out.as_mut().expect("set with sig"))?;
            }
            let name = rest
                .trim()
                .strip_suffix(':')
                .map(str::trim)
                .filter(|s| !s.is_empty() && !s.contains(char::is_whitespace))
                .ok_or_else(|| Error::format(n, "expected `instance <name>:`"))?;
            pending = Some(Pending {
                name: name.to_string(),
                line: n,
                cells: vec![None; sig.num_cells()],
            });
        } else {
            let (Some(sig), Some(p)) = (&sig, pending.as_mut()) else {
                return Err(Error::format(n, format!("unexpected line `{line}`")));
            };
            for tok in line.split_whitespace() {
                let parsed = tok
                    .split_once('@')
                    .and_then(|(e, rest)| rest.split_once('=').map(|(t, s)| (e, t, s)));
                let Some((e, t, s)) = parsed else {
                    return Err(Error::format(
                        n,
                        format!("cell `{tok}` is not `entity@time=state`"),
                    ));
                };
                let e = sig
                    .entity(e)
                    .map_err(|err| Error::format(n, err.to_string()))?;
                let t = sig
                    .time(t)
                    .map_err(|err| Error::format(n, err.to_string()))?;
                let s = sig
                    .state(s)
                    .map_err(|err| Error::format(n, err.to_string()))?;
                let slot = &mut p.cells[e.0 * sig.times().len() + t.0];
                if slot.replace(s).is_some() {
                    return Err(Error::format(n, format!("cell `{tok}` assigned twice")));
                }
            }
        }
    }

    if let Some(out) = out.as_mut() {
        if let Some(p) = pending.take() {
            finish(p, sig.as_ref().expect("pending implies sig"), out)?;
        }
    }
    match out {
        Some(out) => Ok(out),
        None => {
            let (Some(s), Some(e), Some(t)) = (states, entities, times) else {
                return Err(Error::format(
                    0,
                    "missing `states:`, `entities:` or `time:` header",
                ));
            };
            let sig = Signature::new(s, e, t).map_err(|err| Error::format(0, err.to_string()))?;
            Ok(LoadedContext {
                context: Context::empty(Arc::new(sig)),
                names: Vec::new(),
                warnings: Vec::new(),
            })
        }
    }
}

/// Canonical text: instances in canonical order named `i0, i1, ...`, one line
/// of cells per entity.
pub fn render_context(ctx: &Context) -> String {
    let sig = ctx.signature();
    let mut out = format!(
        "states: {}\nentities: {}\ntime: {}\n",
        sig.states().join(" "),
        sig.entities().join(" "),
        sig.times().join(" ")
    );
    for (k, inst) in ctx.iter().enumerate() {
        out.push_str(&format!("instance i{k}:\n"));
        for e in sig.entity_ids() {
            let cells: Vec<String> = sig
                .time_ids()
                .map(|t| {
                    format!(
                        "{}@{}={}",
                        sig.entity_name(e),
                        sig.time_name(t),
                        sig.state_name(inst.get(e, t))
                    )
                })
                .collect();
            out.push_str(&format!("  {}\n", cells.join(" ")));
        }
    }
    out
}
