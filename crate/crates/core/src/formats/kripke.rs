//! Kripke model files: `world <name>`, `edge <from> <to>`, `val <world> <atom>`.
//! Names must be declared by a `world` line before they are used.

use super::strip_comment;
use crate::error::{Error, Result};
use crate::logic::KripkeModel;

pub fn parse_kripke(text: &str) -> Result<KripkeModel> {
    let mut model = KripkeModel::empty();
    for (idx, raw) in text.lines().enumerate() {
        let n = idx + 1;
        let line = strip_comment(raw).trim();
        if line.is_empty() {
            continue;
        }
        let words: Vec<&str> = line.split_whitespace().collect();
        let result = match words.as_slice() {
            ["world", name] => model.add_world(name.to_string()).map(|_| ()),
            ["edge", from, to] => model.add_edge(from, to),
            ["val", world, atom] => model.set_true(world, atom.to_string()),
            _ => Err(Error::InvalidArgument(format!(
                "unrecognised line `{line}`"
            ))),
        };
        result.map_err(|e| Error::format(n, e.to_string()))?;
    }
    Ok(model)
}

/// Worlds in declaration order, then edges and valuations sorted by world.
pub fn render_kripke(model: &KripkeModel) -> String {
    let mut out = String::new();
    for w in model.worlds() {
        out.push_str(&format!("world {w}\n"));
    }
    for &(a, b) in model.relation() {
        out.push_str(&format!(
            "edge {} {}\n",
            model.world_name(a),
            model.world_name(b)
        ));
    }
    let mut vals: Vec<(usize, &str)> = model
        .valuation()
        .iter()
        .flat_map(|(atom, ws)| ws.iter().map(move |&w| (w, atom.as_str())))
        .collect();
    vals.sort();
    for (w, atom) in vals {
        out.push_str(&format!("val {} {atom}\n", model.world_name(w)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let text = "# two worlds\nworld w1\nworld w2\nedge w1 w2\nval w2 p\n";
        let m = parse_kripke(text).unwrap();
        assert_eq!(m.worlds(), ["w1", "w2"]);
        let rendered = render_kripke(&m);
        assert_eq!(rendered, "world w1\nworld w2\nedge w1 w2\nval w2 p\n");
        assert_eq!(parse_kripke(&rendered).unwrap(), m);
    }

    #[test]
    fn unknown_names_report_line() {
        let err = parse_kripke("world a\nedge a b\n").unwrap_err().to_string();
        assert!(err.starts_with("line 2:"), "{err}");
        let err = parse_kripke("world a\n\nval c p\n")
            .unwrap_err()
            .to_string();
        assert!(err.starts_with("line 3:"), "{err}");
        let err = parse_kripke("world a\nworld a\n").unwrap_err().to_string();
        assert!(err.starts_with("line 2:"), "{err}");
        let err = parse_kripke("wrld a\n").unwrap_err().to_string();
        assert!(err.starts_with("line 1:"), "{err}");
    }
}
