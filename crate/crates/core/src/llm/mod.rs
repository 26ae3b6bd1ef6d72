//! Prompt rendering over comparison and correlation tables, offline prompt
//! bundles, and a chat-completions client.

mod chat;
mod templates;

use std::path::{Path, PathBuf};

use crate::analysis::{ComparisonTable, CorrelationMatrix, TableKind};
use crate::error::{McdaError, Result};
use crate::output::write_atomic;

pub use chat::{ask, ask_with_key, ChatConfig, ChatError, ConfigSnapshot, RetryConfig, Transcript, DEFAULT_API_KEY_ENV, DISCLAIMER};
pub use templates::{template, ContextKind, PromptTemplate, TEMPLATES};

#[derive(Debug, Clone, Copy)]
pub enum PromptContext<'a> {
    Table(&'a ComparisonTable),
    Correlation(&'a CorrelationMatrix),
}

impl PromptContext<'_> {
    fn kind(&self) -> ContextKind {
        match self {
            PromptContext::Table(t) if t.kind == TableKind::Ranks => ContextKind::RankTable,
            PromptContext::Table(_) => ContextKind::WeightTable,
            PromptContext::Correlation(m) if m.kind == TableKind::Ranks => ContextKind::RankCorr,
            PromptContext::Correlation(_) => ContextKind::WeightCorr,
        }
    }
}

/// Left-aligned label column, right-aligned value columns, two-space gaps.
fn grid(header: &[String], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for r in rows {
        for (w, c) in widths.iter_mut().zip(r) {
            *w = (*w).max(c.chars().count());
        }
    }
    let line = |cells: &[String]| {
        let mut s = String::new();
        for (j, (c, w)) in cells.iter().zip(&widths).enumerate() {
            if j == 0 {
                s.push_str(&format!("{c:<w$}"));
            } else {
                s.push_str(&format!("  {c:>w$}"));
            }
        }
        s.trim_end().to_string()
    };
    let mut out = line(header);
    out.push('\n');
    for r in rows {
        out.push_str(&line(r));
        out.push('\n');
    }
    out
}

/// Plain-text grid of a context. Ranks are printed as integers, weights and
/// coefficients with 3 decimals, undefined coefficients as `NA`.
pub fn serialize_context(ctx: PromptContext<'_>) -> Result<String> {
    match ctx {
        PromptContext::Table(t) => {
            if t.is_empty() {
                return Err(McdaError::Data("prompt context table has no rows".into()));
            }
            let header: Vec<String> = std::iter::once("Method".to_string()).chain(t.columns.iter().cloned()).collect();
            let rows: Vec<Vec<String>> = t
                .all_rows()
                .map(|r| {
                    std::iter::once(r.label.clone())
                        .chain(r.values.iter().map(|&v| match t.kind {
                            TableKind::Ranks => format!("{}", v as i64),
                            TableKind::Weights => format!("{v:.3}"),
                        }))
                        .collect()
                })
                .collect();
            Ok(grid(&header, &rows))
        }
        PromptContext::Correlation(m) => {
            if m.labels.is_empty() {
                return Err(McdaError::Data("prompt context matrix has no rows".into()));
            }
            let header: Vec<String> = std::iter::once(String::new()).chain(m.labels.iter().cloned()).collect();
            let rows: Vec<Vec<String>> = m
                .labels
                .iter()
                .zip(&m.values)
                .map(|(l, row)| {
                    std::iter::once(l.clone())
                        .chain(row.iter().map(|v| v.map_or_else(|| "NA".to_string(), |x| format!("{x:.3}"))))
                        .collect()
                })
                .collect();
            Ok(grid(&header, &rows))
        }
    }
}

/// Context grid, a blank line, then the verbatim question as the last line.
pub fn render_prompt(template_id: &str, ctx: PromptContext<'_>) -> Result<String> {
    let t = template(template_id).ok_or_else(|| McdaError::UnknownTemplate(template_id.to_string()))?;
    if ctx.kind() != t.required_context {
        return Err(McdaError::Data(format!(
            "template {} needs a {:?} context, got {:?}",
            t.id,
            t.required_context,
            ctx.kind()
        )));
    }
    Ok(format!("{}\n{}\n", serialize_context(ctx)?, t.question))
}

/// Contexts available for a prompt bundle; templates whose context is
/// missing cannot be rendered.
#[derive(Debug, Clone, Copy, Default)]
pub struct PromptContexts<'a> {
    pub rank_table: Option<&'a ComparisonTable>,
    pub weight_table: Option<&'a ComparisonTable>,
    pub rank_corr: Option<&'a CorrelationMatrix>,
    pub weight_corr: Option<&'a CorrelationMatrix>,
}

impl<'a> PromptContexts<'a> {
    pub fn for_kind(&self, kind: ContextKind) -> Option<PromptContext<'a>> {
        match kind {
            ContextKind::RankTable => self.rank_table.map(PromptContext::Table),
            ContextKind::WeightTable => self.weight_table.map(PromptContext::Table),
            ContextKind::RankCorr => self.rank_corr.map(PromptContext::Correlation),
            ContextKind::WeightCorr => self.weight_corr.map(PromptContext::Correlation),
        }
    }
}

/// Renders each template into `<dir>/<template id>.txt` (creating `dir`).
/// Everything is rendered before the first file is written.
pub fn dump_prompts(template_ids: &[&str], contexts: &PromptContexts<'_>, dir: impl AsRef<Path>) -> Result<Vec<PathBuf>> {
    let dir = dir.as_ref();
    let rendered = template_ids
        .iter()
        .map(|id| {
            let t = template(id).ok_or_else(|| McdaError::UnknownTemplate(id.to_string()))?;
            let ctx = contexts
                .for_kind(t.required_context)
                .ok_or_else(|| McdaError::Data(format!("no {:?} context supplied for template {id}", t.required_context)))?;
            Ok((t.id, render_prompt(t.id, ctx)?))
        })
        .collect::<Result<Vec<_>>>()?;
    if rendered.is_empty() {
        return Ok(vec![]);
    }
    std::fs::create_dir_all(dir).map_err(|e| McdaError::io(dir, e))?;
    rendered
        .into_iter()
        .map(|(id, text)| {
            let path = dir.join(format!("{id}.txt"));
            write_atomic(&path, text.as_bytes())?;
            Ok(path)
        })
        .collect()
}
