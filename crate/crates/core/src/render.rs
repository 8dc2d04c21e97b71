//! SVG and ASCII drawings of a solution.
//!
//! Events are laid out left to right: the start order, then for each meeting
//! its crossings (one column each) followed by the meeting column. In meeting
//! columns the members sit `group_gap` apart and every other neighbour pair
//! `sep_gap` apart; all other columns use `sep_gap` throughout.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{validate_solution, CharId, Meeting, Solution, StorylineInstance};

const PALETTE: [&str; 10] = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RenderStyle {
    pub group_gap: f64,
    pub sep_gap: f64,
    pub column_width: f64,
    /// Horizontal length of the flat part of a line at each column.
    pub flat: f64,
    pub palette: Vec<String>,
    pub labels: bool,
}

impl Default for RenderStyle {
    fn default() -> Self {
        RenderStyle {
            group_gap: 8.0,
            sep_gap: 24.0,
            column_width: 40.0,
            flat: 16.0,
            palette: PALETTE.iter().map(|s| s.to_string()).collect(),
            labels: true,
        }
    }
}

impl RenderStyle {
    pub fn check(&self) -> Result<()> {
        let ok = self.group_gap > 0.0
            && self.sep_gap > self.group_gap
            && self.column_width > 0.0
            && self.flat > 0.0
            && self.flat < self.column_width
            && !self.palette.is_empty();
        if ok {
            Ok(())
        } else {
            Err(Error::Contract("render style needs 0 < group_gap < sep_gap, 0 < flat < column_width and colors".into()))
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ColumnKind {
    Start,
    Crossing,
    /// 0-based meeting index.
    Meeting(usize),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Column {
    pub kind: ColumnKind,
    pub x: f64,
    pub order: Vec<CharId>,
    /// Vertical coordinate per position in `order`.
    pub ys: Vec<f64>,
}

fn stack(order: &[CharId], group: Option<&Meeting>, style: &RenderStyle) -> Vec<f64> {
    let mut ys = Vec::with_capacity(order.len());
    let mut y = style.sep_gap;
    for (i, &c) in order.iter().enumerate() {
        if i > 0 {
            let tight = group.is_some_and(|g| g.contains(c) && g.contains(order[i - 1]));
            y += if tight { style.group_gap } else { style.sep_gap };
        }
        ys.push(y);
    }
    ys
}

/// Column geometry for a valid solution.
pub fn layout(inst: &StorylineInstance, sol: &Solution, style: &RenderStyle) -> Result<Vec<Column>> {
    style.check()?;
    validate_solution(inst, sol)?;
    let mut cols = Vec::new();
    let mut cur = sol.start.as_slice().to_vec();
    let mut x = style.column_width / 2.0 + if style.labels { style.column_width } else { 0.0 };
    let mut push = |kind, order: &[CharId], group: Option<&Meeting>| {
        cols.push(Column { kind, x, order: order.to_vec(), ys: stack(order, group, style) });
        x += style.column_width;
    };
    push(ColumnKind::Start, &cur, None);
    for (i, (seq, m)) in sol.blocks.iter().zip(&inst.meetings).enumerate() {
        for bc in seq {
            bc.apply_to_slice(&mut cur);
            push(ColumnKind::Crossing, &cur, None);
        }
        push(ColumnKind::Meeting(i), &cur, Some(m));
    }
    Ok(cols)
}

fn num(v: f64) -> String {
    format!("{v:.2}")
}

pub fn render_svg(inst: &StorylineInstance, sol: &Solution, style: &RenderStyle) -> Result<String> {
    let cols = layout(inst, sol, style)?;
    let k = inst.k;
    let width = cols.last().map_or(0.0, |c| c.x) + style.column_width;
    let height = style.sep_gap * (k as f64 + 1.0);
    let half = style.flat / 2.0;
    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{}" height="{}" viewBox="0 0 {} {}">"#,
        num(width),
        num(height),
        num(width),
        num(height)
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
    for col in &cols {
        if let ColumnKind::Meeting(i) = col.kind {
            let m = &inst.meetings[i];
            let ys: Vec<f64> = col.order.iter().zip(&col.ys).filter(|(c, _)| m.contains(**c)).map(|(_, y)| *y).collect();
            let lo = ys.iter().copied().fold(f64::INFINITY, f64::min) - style.group_gap / 2.0;
            let hi = ys.iter().copied().fold(f64::NEG_INFINITY, f64::max) + style.group_gap / 2.0;
            let _ = writeln!(
                out,
                r#"<line class="meeting" x1="{x}" y1="{}" x2="{x}" y2="{}" stroke="black" stroke-width="3"/>"#,
                num(lo),
                num(hi),
                x = num(col.x)
            );
        }
    }
    for c in 1..=k as CharId {
        let color = &style.palette[(c as usize - 1) % style.palette.len()];
        let mut pts = Vec::with_capacity(cols.len() * 2);
        for col in &cols {
            let p = col.order.iter().position(|&o| o == c).expect("character in order");
            let y = num(col.ys[p]);
            pts.push(format!("{},{y}", num(col.x - half)));
            pts.push(format!("{},{y}", num(col.x + half)));
        }
        let _ = writeln!(
            out,
            r#"<polyline class="character" data-id="{c}" points="{}" fill="none" stroke="{color}" stroke-width="2"/>"#,
            pts.join(" ")
        );
        if style.labels {
            let p = cols[0].order.iter().position(|&o| o == c).expect("character in order");
            let _ = writeln!(
                out,
                r#"<text x="{}" y="{}" font-family="monospace" font-size="12" text-anchor="end" dominant-baseline="middle">{c}</text>"#,
                num(cols[0].x - half - 4.0),
                num(cols[0].ys[p])
            );
        }
    }
    out.push_str("</svg>\n");
    Ok(out)
}

/// Text grid: one row per position, one column per event.
///
/// The header names each column (`s` start, `x` crossing, `m<i>` meeting,
/// 1-based). Cells hold the character at that position; meeting members carry
/// a `*`. Columns are joined by ` X ` when a crossing happens between them and
/// by ` - ` otherwise.
pub fn render_ascii(inst: &StorylineInstance, sol: &Solution) -> Result<String> {
    let cols = layout(inst, sol, &RenderStyle::default())?;
    let labels: Vec<String> = cols
        .iter()
        .map(|c| match c.kind {
            ColumnKind::Start => "s".to_string(),
            ColumnKind::Crossing => "x".to_string(),
            ColumnKind::Meeting(i) => format!("m{}", i + 1),
        })
        .collect();
    let id_width = inst.k.to_string().len() + 1;
    let widths: Vec<usize> = labels.iter().map(|l| l.len().max(id_width)).collect();
    let seps: Vec<&str> = cols.iter().skip(1).map(|c| if c.kind == ColumnKind::Crossing { " X " } else { " - " }).collect();
    let mut out = String::new();
    let mut line = |cells: Vec<String>| {
        let mut s = String::new();
        for (j, cell) in cells.iter().enumerate() {
            if j > 0 {
                s.push_str(seps[j - 1]);
            }
            let _ = write!(s, "{cell:<w$}", w = widths[j]);
        }
        out.push_str(s.trim_end());
        out.push('\n');
    };
    line(labels.clone());
    for p in 0..inst.k {
        let cells = cols
            .iter()
            .map(|c| {
                let id = c.order[p];
                let mark = match c.kind {
                    ColumnKind::Meeting(i) if inst.meetings[i].contains(id) => "*",
                    _ => "",
                };
                format!("{id}{mark}")
            })
            .collect();
        line(cells);
    }
    Ok(out)
}

/// Reads back the order at every column of [`render_ascii`] output.
pub fn parse_ascii(text: &str) -> Result<Vec<Vec<CharId>>> {
    let mut lines = text.lines();
    let header = lines.next().ok_or_else(|| Error::Parse("empty drawing".into()))?;
    let columns = header.split_whitespace().filter(|t| *t != "X" && *t != "-").count();
    let mut out: Vec<Vec<CharId>> = vec![Vec::new(); columns];
    for (row, l) in lines.enumerate() {
        let cells: Vec<&str> = l.split_whitespace().filter(|t| *t != "X" && *t != "-").collect();
        if cells.len() != columns {
            return Err(Error::Parse(format!("row {}: {} cells, expected {columns}", row + 1, cells.len())));
        }
        for (j, cell) in cells.iter().enumerate() {
            let id = cell
                .trim_end_matches('*')
                .parse()
                .map_err(|_| Error::Parse(format!("row {}: bad cell {cell:?}", row + 1)))?;
            out[j].push(id);
        }
    }
    Ok(out)
}
