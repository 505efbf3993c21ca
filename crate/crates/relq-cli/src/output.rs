//! Reports and their three renderings.
//!
//! A report is an ordered list of named items. `table` aligns matrices for
//! reading, `csv` writes bare grids (scalars become `# key: value` comment
//! lines so a single-matrix report can be read back), `json` writes one
//! object with the items as keys.

use std::fmt::Write as _;

use clap::ValueEnum;
use relq_neutro::{neutro_format, NeutroGrade64, NeutroRelation64};
use relq_relation::Relation64;
use serde_json::{json, Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Token(String),
}

#[derive(Debug, Clone, PartialEq)]
pub enum Item {
    Num(f64),
    Int(u64),
    Bool(bool),
    Text(String),
    Texts(Vec<String>),
    Vector(Vec<Cell>),
    Matrix { rows: Vec<Vec<Cell>>, row_labels: Option<Vec<String>>, col_labels: Option<Vec<String>> },
}

impl Item {
    pub fn vector(v: &[f64]) -> Item {
        Item::Vector(v.iter().map(|&x| Cell::Num(x)).collect())
    }

    pub fn neutro_vector(v: &[NeutroGrade64]) -> Item {
        Item::Vector(v.iter().map(|g| Cell::Token(neutro_format(g))).collect())
    }

    pub fn matrix(r: &Relation64) -> Item {
        Item::Matrix {
            rows: (0..r.rows()).map(|i| r.row(i).iter().map(|&x| Cell::Num(x)).collect()).collect(),
            row_labels: None,
            col_labels: None,
        }
    }

    pub fn vectors(vs: &[Vec<f64>]) -> Item {
        Item::Matrix {
            rows: vs.iter().map(|v| v.iter().map(|&x| Cell::Num(x)).collect()).collect(),
            row_labels: None,
            col_labels: None,
        }
    }

    pub fn neutro_matrix(r: &NeutroRelation64) -> Item {
        Item::Matrix {
            rows: (0..r.rows()).map(|i| r.row(i).iter().map(|g| Cell::Token(neutro_format(g))).collect()).collect(),
            row_labels: None,
            col_labels: None,
        }
    }

    pub fn labeled(self, rows: Vec<String>, cols: Vec<String>) -> Item {
        match self {
            Item::Matrix { rows: cells, .. } => Item::Matrix { rows: cells, row_labels: Some(rows), col_labels: Some(cols) },
            other => other,
        }
    }
}

#[derive(Debug, Default)]
pub struct Report {
    pub items: Vec<(String, Item)>,
}

impl Report {
    pub fn push(&mut self, key: impl Into<String>, item: Item) -> &mut Self {
        self.items.push((key.into(), item));
        self
    }
}

/// Shortest decimal with at most nine significant digits, after optional
/// half-up rounding to `round` decimals.
pub fn format_num(v: f64, round: Option<u32>) -> String {
    let v = match round {
        Some(d) => {
            let s = 10f64.powi(d as i32);
            (v * s + 0.5 + 1e-9).floor() / s
        }
        None => v,
    };
    if !v.is_finite() {
        return v.to_string();
    }
    let nine: f64 = format!("{v:.8e}").parse().expect("scientific notation parses");
    if nine == 0.0 {
        return "0".into();
    }
    if nine.abs() < 1e-6 || nine.abs() >= 1e15 {
        format!("{nine:e}")
    } else {
        format!("{nine}")
    }
}

fn cell_text(c: &Cell, round: Option<u32>) -> String {
    match c {
        Cell::Num(v) => format_num(*v, round),
        Cell::Token(t) => t.clone(),
    }
}

fn cell_json(c: &Cell, round: Option<u32>) -> Value {
    match c {
        Cell::Num(v) => {
            let v: f64 = format_num(*v, round).parse().unwrap_or(*v);
            json!(v)
        }
        Cell::Token(t) => json!(t),
    }
}

pub fn render(report: &Report, format: Format, round: Option<u32>) -> String {
    match format {
        Format::Table => render_table(report, round),
        Format::Csv => render_csv(report, round),
        Format::Json => render_json(report, round),
    }
}

fn render_table(report: &Report, round: Option<u32>) -> String {
    let mut out = String::new();
    for (key, item) in &report.items {
        match item {
            Item::Num(v) => writeln!(out, "{key}: {}", format_num(*v, round)),
            Item::Int(v) => writeln!(out, "{key}: {v}"),
            Item::Bool(b) => writeln!(out, "{key}: {b}"),
            Item::Text(t) => writeln!(out, "{key}: {t}"),
            Item::Texts(ts) => writeln!(out, "{key}: {{{}}}", ts.join(", ")),
            Item::Vector(v) => {
                let cells: Vec<String> = v.iter().map(|c| cell_text(c, round)).collect();
                writeln!(out, "{key}: ({})", cells.join(", "))
            }
            Item::Matrix { rows, row_labels, col_labels } => {
                writeln!(out, "{key}:").and_then(|_| {
                    out.push_str(&aligned(rows, row_labels.as_deref(), col_labels.as_deref(), round));
                    Ok(())
                })
            }
        }
        .expect("writing to a string");
    }
    out
}

fn aligned(rows: &[Vec<Cell>], row_labels: Option<&[String]>, col_labels: Option<&[String]>, round: Option<u32>) -> String {
    let mut grid: Vec<Vec<String>> = rows.iter().map(|r| r.iter().map(|c| cell_text(c, round)).collect()).collect();
    if let Some(labels) = row_labels {
        for (row, l) in grid.iter_mut().zip(labels) {
            row.insert(0, l.clone());
        }
    }
    if let Some(labels) = col_labels {
        let mut head = labels.to_vec();
        if row_labels.is_some() {
            head.insert(0, String::new());
        }
        grid.insert(0, head);
    }
    let ncols = grid.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> =
        (0..ncols).map(|j| grid.iter().filter_map(|r| r.get(j)).map(|s| s.chars().count()).max().unwrap_or(0)).collect();
    let mut out = String::new();
    for row in &grid {
        let line: Vec<String> = row.iter().zip(&widths).map(|(s, &w)| format!("{s:>w$}")).collect();
        out.push_str("  ");
        out.push_str(line.join("  ").trim_end());
        out.push('\n');
    }
    out
}

fn render_csv(report: &Report, round: Option<u32>) -> String {
    let grids = report.items.iter().filter(|(_, i)| matches!(i, Item::Matrix { .. } | Item::Vector(_))).count();
    let mut out = String::new();
    for (key, item) in &report.items {
        match item {
            Item::Num(v) => out.push_str(&format!("# {key}: {}\n", format_num(*v, round))),
            Item::Int(v) => out.push_str(&format!("# {key}: {v}\n")),
            Item::Bool(b) => out.push_str(&format!("# {key}: {b}\n")),
            Item::Text(t) => out.push_str(&format!("# {key}: {t}\n")),
            Item::Texts(ts) => out.push_str(&format!("# {key}: {}\n", ts.join(" "))),
            Item::Vector(v) => {
                if grids > 1 {
                    out.push_str(&format!("# {key}\n"));
                }
                let cells: Vec<String> = v.iter().map(|c| cell_text(c, round)).collect();
                out.push_str(&cells.join(","));
                out.push('\n');
            }
            Item::Matrix { rows, row_labels, col_labels } => {
                if grids > 1 {
                    out.push_str(&format!("# {key}\n"));
                }
                if let Some(cols) = col_labels {
                    let corner = if row_labels.is_some() { "," } else { "" };
                    out.push_str(&format!("{corner}{}\n", cols.join(",")));
                }
                for (i, r) in rows.iter().enumerate() {
                    let mut cells: Vec<String> = r.iter().map(|c| cell_text(c, round)).collect();
                    if let Some(labels) = row_labels {
                        cells.insert(0, labels[i].clone());
                    }
                    out.push_str(&cells.join(","));
                    out.push('\n');
                }
            }
        }
    }
    out
}

fn render_json(report: &Report, round: Option<u32>) -> String {
    let mut obj = Map::new();
    for (key, item) in &report.items {
        let v = match item {
            Item::Num(v) => cell_json(&Cell::Num(*v), round),
            Item::Int(v) => json!(v),
            Item::Bool(b) => json!(b),
            Item::Text(t) => json!(t),
            Item::Texts(ts) => json!(ts),
            Item::Vector(v) => Value::Array(v.iter().map(|c| cell_json(c, round)).collect()),
            Item::Matrix { rows, row_labels, col_labels } => {
                let cells = Value::Array(
                    rows.iter().map(|r| Value::Array(r.iter().map(|c| cell_json(c, round)).collect())).collect(),
                );
                if row_labels.is_none() && col_labels.is_none() {
                    cells
                } else {
                    json!({ "rows": row_labels, "cols": col_labels, "cells": cells })
                }
            }
        };
        obj.insert(key.clone(), v);
    }
    let mut s = serde_json::to_string_pretty(&Value::Object(obj)).expect("json values serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nine_significant_digits() {
        assert_eq!(format_num(0.1 + 0.2, None), "0.3");
        assert_eq!(format_num(1.0 / 3.0, None), "0.333333333");
        assert_eq!(format_num(1.0, None), "1");
        assert_eq!(format_num(0.0, None), "0");
        assert_eq!(format_num(-0.0, None), "0");
        assert_eq!(format_num(123456.789012, None), "123456.789");
        assert_eq!(format_num(3.469446951953614e-18, None), "3.46944695e-18");
    }

    #[test]
    fn half_up_rounding() {
        assert_eq!(format_num(0.625, Some(2)), "0.63");
        assert_eq!(format_num(0.875, Some(2)), "0.88");
        assert_eq!(format_num(0.5, Some(0)), "1");
    }

    #[test]
    fn single_matrix_csv_is_bare() {
        let mut r = Report::default();
        r.push("shape", Item::Text("1x2".into()));
        r.push("r", Item::vectors(&[vec![0.5, 1.0]]));
        assert_eq!(render(&r, Format::Csv, None), "# shape: 1x2\n0.5,1\n");
    }

    #[test]
    fn table_alignment() {
        let mut r = Report::default();
        r.push("m", Item::vectors(&[vec![0.25, 1.0], vec![1.0, 0.5]]));
        assert_eq!(render(&r, Format::Table, None), "m:\n  0.25    1\n     1  0.5\n");
    }

    #[test]
    fn json_keys() {
        let mut r = Report::default();
        r.push("z", Item::Num(0.5)).push("ok", Item::Bool(true));
        let v: Value = serde_json::from_str(&render(&r, Format::Json, None)).unwrap();
        assert_eq!(v["z"], json!(0.5));
        assert_eq!(v["ok"], json!(true));
    }
}
