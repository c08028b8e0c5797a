//! Modal-context files.
//!
//! ```text
//! universe atoms=p,q depth=2 cap=1
//! cworld c0
//!   class w1 w3
//!   has p
//!   has []p
//! cworld c1
//! cedge c0 c1
//! ```
//!
//! `class` lists the Kripke worlds a context world stands for and may be
//! omitted. The header takes an optional `connectives=` field when the
//! universe does not use the default set. Contexts over index sets other
//! than `E = T = {0}` declare them with `entities:` and `time:` lines after
//! the header and select cells inside a world with `at <entity> <time>`.

use std::collections::BTreeSet;

use super::strip_comment;
use crate::error::{Error, Result};
use crate::logic::{formula_universe, parse_formula, Connectives, Formula, DEFAULT_CAP};
use crate::modal_context::ModalContext;

struct Header {
    atoms: Vec<String>,
    depth: usize,
    cap: usize,
    connectives: Connectives,
}

fn parse_header(rest: &str) -> std::result::Result<Header, String> {
    let mut header = Header {
        atoms: Vec::new(),
        depth: 0,
        cap: DEFAULT_CAP,
        connectives: Connectives::default(),
    };
    let mut seen_depth = false;
    for field in rest.split_whitespace() {
        let (key, value) = field
            .split_once('=')
            .ok_or_else(|| format!("header field `{field}` is not key=value"))?;
        match key {
            "atoms" => {
                header.atoms = value
                    .split(',')
                    .filter(|s| !s.is_empty())
                    .map(String::from)
                    .collect()
            }
            "depth" => {
                header.depth = value.parse().map_err(|_| format!("bad depth `{value}`"))?;
                seen_depth = true;
            }
            "cap" => header.cap = value.parse().map_err(|_| format!("bad cap `{value}`"))?,
            "connectives" => {
                header.connectives = Connectives::parse(value).map_err(|e| e.to_string())?
            }
            _ => return Err(format!("unknown header field `{key}`")),
        }
    }
    if !seen_depth {
        return Err("header needs depth=<d>".into());
    }
    Ok(header)
}

struct World {
    name: String,
    line: usize,
    class: Vec<String>,
    cells: Vec<BTreeSet<Formula>>,
    cursor: usize,
}

pub fn parse_modal_context(text: &str, guard: usize) -> Result<ModalContext> {
    let mut mc: Option<ModalContext> = None;
    let mut header: Option<(Header, usize)> = None;
    let mut entities: Option<Vec<String>> = None;
    let mut times: Option<Vec<String>> = None;
    let mut current: Option<World> = None;
    let mut edges: Vec<(usize, String, String)> = Vec::new();

    fn flush(w: Option<World>, mc: &mut ModalContext) -> Result<()> {
        if let Some(w) = w {
            mc.add_world(w.name, w.cells, w.class)
                .map_err(|e| Error::format(w.line, e.to_string()))?;
        }
        Ok(())
    }

    fn ensure_built(
        mc: &mut Option<ModalContext>,
        header: &Option<(Header, usize)>,
        entities: &Option<Vec<String>>,
        times: &Option<Vec<String>>,
        guard: usize,
        n: usize,
    ) -> Result<()> {
        if mc.is_some() {
            return Ok(());
        }
        let Some((h, hline)) = header else {
            return Err(Error::format(n, "missing `universe` header"));
        };
        let universe = formula_universe(&h.atoms, h.depth, h.cap, &h.connectives, guard)
            .map_err(|e| Error::format(*hline, e.to_string()))?;
        let built = ModalContext::new(
            entities.clone().unwrap_or_else(|| vec!["0".into()]),
            times.clone().unwrap_or_else(|| vec!["0".into()]),
            universe,
        )
        .map_err(|e| Error::format(n, e.to_string()))?;
        *mc = Some(built);
        Ok(())
    }

    for (idx, raw) in text.lines().enumerate() {
        let n = idx + 1;
        let line = strip_comment(raw).trim();
        if line.is_empty() {
            continue;
        }
        let (keyword, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let rest = rest.trim();
        match keyword {
            "universe" => {
                if header.is_some() {
                    return Err(Error::format(n, "duplicate `universe` header"));
                }
                header = Some((parse_header(rest).map_err(|m| Error::format(n, m))?, n));
            }
            "entities:" | "time:" => {
                if mc.is_some() || header.is_none() {
                    return Err(Error::format(n, "index sets belong right after the header"));
                }
                let set = Some(rest.split_whitespace().map(String::from).collect());
                if keyword == "entities:" {
                    entities = set;
                } else {
                    times = set;
                }
            }
            "cworld" => {
                ensure_built(&mut mc, &header, &entities, &times, guard, n)?;
                let ctx = mc.as_mut().expect("built above");
                flush(current.take(), ctx)?;
                if rest.is_empty() || rest.contains(char::is_whitespace) {
                    return Err(Error::format(n, "expected `cworld <name>`"));
                }
                current = Some(World {
                    name: rest.to_string(),
                    line: n,
                    class: Vec::new(),
                    cells: vec![BTreeSet::new(); ctx.entities().len() * ctx.times().len()],
                    cursor: 0,
                });
            }
            "class" | "has" | "at" => {
                let (Some(ctx), Some(w)) = (mc.as_ref(), current.as_mut()) else {
                    return Err(Error::format(n, format!("`{keyword}` outside a cworld")));
                };
                match keyword {
                    "class" => w.class.extend(rest.split_whitespace().map(String::from)),
                    "at" => {
                        let parts: Vec<&str> = rest.split_whitespace().collect();
                        let [e, t] = parts.as_slice() else {
                            return Err(Error::format(n, "expected `at <entity> <time>`"));
                        };
                        let e = ctx.entities().iter().position(|x| x == e);
                        let t = ctx.times().iter().position(|x| x == t);
                        let (Some(e), Some(t)) = (e, t) else {
                            return Err(Error::format(n, "unknown entity or time"));
                        };
                        w.cursor = e * ctx.times().len() + t;
                    }
                    _ => {
                        let f = parse_formula(rest).map_err(|e| Error::format(n, e.to_string()))?;
                        if !ctx.universe().contains(&f) {
                            return Err(Error::format(
                                n,
                                format!("formula `{f}` is outside the universe"),
                            ));
                        }
                        w.cells[w.cursor].insert(f);
                    }
                }
            }
            "cedge" => {
                let parts: Vec<&str> = rest.split_whitespace().collect();
                let [a, b] = parts.as_slice() else {
                    return Err(Error::format(n, "expected `cedge <from> <to>`"));
                };
                edges.push((n, a.to_string(), b.to_string()));
            }
            _ => return Err(Error::format(n, format!("unrecognised line `{line}`"))),
        }
    }

    let last = text.lines().count().max(1);
    ensure_built(&mut mc, &header, &entities, &times, guard, last)?;
    let mut mc = mc.expect("built above");
    flush(current.take(), &mut mc)?;
    for (n, a, b) in edges {
        mc.add_edge(&a, &b)
            .map_err(|e| Error::format(n, e.to_string()))?;
    }
    Ok(mc)
}

pub fn render_modal_context(mc: &ModalContext) -> String {
    let u = mc.universe();
    let mut out = format!(
        "universe atoms={} depth={} cap={}",
        u.atoms().join(","),
        u.depth(),
        u.cap()
    );
    if *u.connectives() != Connectives::default() {
        out.push_str(&format!(" connectives={}", u.connectives()));
    }
    out.push('\n');
    let trivial = mc.entities() == ["0"] && mc.times() == ["0"];
    if !trivial {
        out.push_str(&format!("entities: {}\n", mc.entities().join(" ")));
        out.push_str(&format!("time: {}\n", mc.times().join(" ")));
    }
    for w in mc.worlds() {
        out.push_str(&format!("cworld {}\n", w.name));
        if !w.class.is_empty() {
            out.push_str(&format!("  class {}\n", w.class.join(" ")));
        }
        for (k, cell) in w.cells().iter().enumerate() {
            if !trivial {
                let nt = mc.times().len();
                out.push_str(&format!(
                    "  at {} {}\n",
                    mc.entities()[k / nt],
                    mc.times()[k % nt]
                ));
            }
            for f in cell {
                out.push_str(&format!("  has {f}\n"));
            }
        }
    }
    for &(a, b) in mc.relation() {
        out.push_str(&format!(
            "cedge {} {}\n",
            mc.worlds()[a].name,
            mc.worlds()[b].name
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::{KripkeModel, DEFAULT_UNIVERSE_GUARD};
    use crate::modal_context::{is_modal_context, to_modal_context};

    #[test]
    fn built_context_round_trips() {
        let m = KripkeModel::new(["w1", "w2"], [("w1", "w2")], [("w2", "p")]).unwrap();
        let u = formula_universe(
            &["p"],
            1,
            1,
            &Connectives::default(),
            DEFAULT_UNIVERSE_GUARD,
        )
        .unwrap();
        let mc = to_modal_context(&m, &u);
        let text = render_modal_context(&mc);
        assert!(text.starts_with("universe atoms=p depth=1 cap=1\ncworld c0\n  class w1\n"));
        let back = parse_modal_context(&text, DEFAULT_UNIVERSE_GUARD).unwrap();
        assert_eq!(back, mc);
        assert_eq!(render_modal_context(&back), text);
    }

    #[test]
    fn general_index_sets_round_trip() {
        let text = "\
universe atoms=p depth=1 cap=0 connectives=box
entities: a b
time: 0
cworld x
  at a 0
  has p
  has []p
  at b 0
  has []p
cworld y
  at a 0
  has p
  has []p
  at b 0
  has p
cedge x y
";
        let mc = parse_modal_context(text, 100).unwrap();
        assert_eq!(mc.entities().len(), 2);
        assert_eq!(render_modal_context(&mc), text);
        // y has no successors, so []p must hold in both of its cells
        let violations = is_modal_context(&mc);
        assert_eq!(violations.len(), 1);
        assert_eq!(violations[0].world, "y");
        assert_eq!(violations[0].entity, "b");
    }

    #[test]
    fn rejects_formulas_outside_universe() {
        let text = "universe atoms=p depth=0 cap=0\ncworld c0\n  has []p\n";
        let err = parse_modal_context(text, 100).unwrap_err().to_string();
        assert!(err.starts_with("line 3:"), "{err}");
    }

    #[test]
    fn header_and_structure_errors() {
        for (text, line) in [
            ("cworld c0\n", "line 1"),
            ("universe atoms=p\n", "line 1"),
            ("universe atoms=p depth=0\nhas p\n", "line 2"),
            ("universe atoms=p depth=0\ncworld a\ncedge a b\n", "line 3"),
            ("universe atoms=p depth=0\ncworld a\ncworld a\n", "line 3"),
        ] {
            let err = parse_modal_context(text, 100).unwrap_err().to_string();
            assert!(err.starts_with(line), "{text:?}: {err}");
        }
    }
}
