//! Line-oriented text formats for contexts, Kripke models and modal
//! contexts. `#` starts a comment anywhere on a line. Rendering is canonical,
//! so `render(parse(render(x))) == render(x)`.

mod context;
mod kripke;
mod modal;

use std::fs;
use std::path::Path;

pub use context::{parse_context, render_context, LoadedContext};
pub use kripke::{parse_kripke, render_kripke};
pub use modal::{parse_modal_context, render_modal_context};

use crate::context::Context;
use crate::error::{Error, Result};
use crate::logic::KripkeModel;
use crate::modal_context::ModalContext;

fn strip_comment(line: &str) -> &str {
    line.split_once('#').map_or(line, |(head, _)| head)
}

pub fn read_file(path: impl AsRef<Path>) -> Result<String> {
    let path = path.as_ref();
    fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}

pub fn write_file(path: impl AsRef<Path>, text: &str) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, text).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}

pub fn load_context(path: impl AsRef<Path>) -> Result<LoadedContext> {
    parse_context(&read_file(path)?)
}

pub fn save_context(ctx: &Context, path: impl AsRef<Path>) -> Result<()> {
    write_file(path, &render_context(ctx))
}

pub fn load_kripke(path: impl AsRef<Path>) -> Result<KripkeModel> {
    parse_kripke(&read_file(path)?)
}

pub fn save_kripke(model: &KripkeModel, path: impl AsRef<Path>) -> Result<()> {
    write_file(path, &render_kripke(model))
}

pub fn load_modal_context(path: impl AsRef<Path>, guard: usize) -> Result<ModalContext> {
    parse_modal_context(&read_file(path)?, guard)
}

pub fn save_modal_context(mc: &ModalContext, path: impl AsRef<Path>) -> Result<()> {
    write_file(path, &render_modal_context(mc))
}
