//! Loading relations and problem files.
//!
//! A source is a path or `@dataset:table` for an embedded table. Files
//! ending in `.json` are JSON, anything else CSV. A relation is read as
//! neutrosophic when `--mode` is given, the CSV starts with `# mode:` or the
//! JSON object has a `mode` key.

use std::fs;

use anyhow::{anyhow, bail, Context, Result};
use relq_datasets::{dataset, Table};
use relq_neutro::{neutro_parse, NeutroGrade64, NeutroMode, NeutroRelation64};
use relq_relation::{Composition, Relation64};
use serde_json::Value;

#[derive(Debug, Clone, PartialEq)]
pub enum Operand {
    Fuzzy(Relation64),
    Neutro(NeutroRelation64, NeutroMode),
}

impl Operand {
    pub fn shape(&self) -> (usize, usize) {
        match self {
            Operand::Fuzzy(r) => (r.rows(), r.cols()),
            Operand::Neutro(r, _) => (r.rows(), r.cols()),
        }
    }

    pub fn mode(&self) -> Option<NeutroMode> {
        match self {
            Operand::Fuzzy(_) => None,
            Operand::Neutro(_, m) => Some(*m),
        }
    }

    /// Real relations embed as all-real neutrosophic ones.
    pub fn into_neutro(self) -> NeutroRelation64 {
        match self {
            Operand::Fuzzy(r) => NeutroRelation64::from_real(&r),
            Operand::Neutro(r, _) => r,
        }
    }
}

fn embedded(spec: &str) -> Result<Table> {
    let (name, table) = spec
        .split_once(':')
        .ok_or_else(|| anyhow!("embedded source {spec:?} must look like @dataset:table"))?;
    let d = dataset(name)?;
    let t = d.table(table).ok_or_else(|| {
        let names: Vec<&str> = d.tables.iter().map(|(n, _)| *n).collect();
        anyhow!("dataset {name} has no table {table:?}; tables: {}", names.join(", "))
    })?;
    Ok(t.clone())
}

fn strip_comments(text: &str) -> String {
    text.lines().filter(|l| !l.trim_start().starts_with('#')).collect::<Vec<_>>().join("\n")
}

/// Reads a relation, letting the source decide between fuzzy and neutrosophic.
pub fn load_operand(source: &str, mode: Option<NeutroMode>) -> Result<Operand> {
    if let Some(spec) = source.strip_prefix('@') {
        return Ok(match embedded(spec)? {
            Table::Fuzzy(r) if mode.is_some() => Operand::Neutro(NeutroRelation64::from_real(&r), mode.unwrap()),
            Table::Fuzzy(r) => Operand::Fuzzy(r),
            Table::Neutro(r, m) => {
                if let Some(flag) = mode {
                    if flag != m {
                        bail!("{source} is stored in {m} mode but --mode {flag} was given");
                    }
                }
                Operand::Neutro(r, m)
            }
        });
    }
    let text = fs::read_to_string(source).with_context(|| format!("reading {source}"))?;
    let op = if source.ends_with(".json") {
        let v: Value = serde_json::from_str(&text).with_context(|| format!("parsing {source}"))?;
        if mode.is_some() || v.get("mode").is_some() {
            let (r, m) = relq_neutro::from_json(&text, mode)?;
            Operand::Neutro(r, m)
        } else if v.is_array() {
            Operand::Fuzzy(Relation64::from_rows(serde_json::from_value(v)?)?)
        } else {
            Operand::Fuzzy(relq_relation::from_json(&text)?)
        }
    } else {
        let header = text.lines().find(|l| !l.trim().is_empty()).unwrap_or("").trim_start().starts_with("# mode:");
        if mode.is_some() || header {
            let (r, m) = relq_neutro::from_csv(&text, mode)?;
            Operand::Neutro(r, m)
        } else {
            Operand::Fuzzy(relq_relation::from_csv(&strip_comments(&text))?)
        }
    };
    Ok(op)
}

pub fn parse_composition(s: &str) -> Result<Composition<f64>> {
    Composition::parse(s).ok_or_else(|| {
        anyhow!("unknown composition {s:?}; use max-min, max-product, sup-t:<t-norm> or inf-imp:<implication>")
    })
}

/// Comma- or space-separated numbers, as in `--c "2,1"`.
pub fn parse_list(s: &str) -> Result<Vec<f64>> {
    s.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<f64>().with_context(|| format!("{t:?} is not a number")))
        .collect()
}

fn neutro_cell(v: &Value) -> Result<NeutroGrade64> {
    match v {
        Value::String(s) => Ok(neutro_parse(s)?),
        other => Ok(serde_json::from_value(other.clone())?),
    }
}

fn number_rows(v: &Value, what: &str) -> Result<Vec<Vec<f64>>> {
    serde_json::from_value(v.clone()).with_context(|| format!("{what} must be an array of numeric rows"))
}

/// `x o A = b` as read from a problem file.
#[derive(Debug, Clone)]
pub enum Problem {
    Fuzzy { a: Relation64, b: Vec<f64>, composition: Option<Composition<f64>>, c: Option<Vec<f64>> },
    Neutro { a: NeutroRelation64, b: Vec<NeutroGrade64>, mode: NeutroMode },
}

/// Problem files are JSON objects:
/// `{"a": [[..]], "b": [..], "composition": "max-min", "c": [..]}`, or with a
/// `"mode"` key for neutrosophic systems whose cells may be tokens like `"0.3I"`.
pub fn load_problem(source: &str, mode: Option<NeutroMode>) -> Result<Problem> {
    let text = fs::read_to_string(source).with_context(|| format!("reading {source}"))?;
    let v: Value = serde_json::from_str(&text).with_context(|| format!("parsing {source}"))?;
    let a = v.get("a").ok_or_else(|| anyhow!("{source}: missing \"a\""))?;
    let b = v.get("b").ok_or_else(|| anyhow!("{source}: missing \"b\""))?;
    let file_mode = match v.get("mode") {
        Some(m) => Some(m.as_str().ok_or_else(|| anyhow!("mode must be a string"))?.parse::<NeutroMode>()?),
        None => None,
    };
    if let (Some(f), Some(g)) = (file_mode, mode) {
        if f != g {
            bail!("{source} declares {f} mode but --mode {g} was given");
        }
    }
    if let Some(mode) = file_mode.or(mode) {
        let rows = a
            .as_array()
            .ok_or_else(|| anyhow!("\"a\" must be an array of rows"))?
            .iter()
            .map(|r| {
                r.as_array()
                    .ok_or_else(|| anyhow!("\"a\" rows must be arrays"))?
                    .iter()
                    .map(neutro_cell)
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let b = b.as_array().ok_or_else(|| anyhow!("\"b\" must be an array"))?.iter().map(neutro_cell).collect::<Result<_>>()?;
        return Ok(Problem::Neutro { a: NeutroRelation64::from_rows(rows)?, b, mode });
    }
    let a = Relation64::from_rows(number_rows(a, "\"a\"")?)?;
    let b: Vec<f64> = serde_json::from_value(b.clone()).context("\"b\" must be an array of numbers")?;
    let composition = match v.get("composition") {
        Some(c) => Some(parse_composition(c.as_str().ok_or_else(|| anyhow!("composition must be a string"))?)?),
        None => None,
    };
    let c = match v.get("c") {
        Some(c) => Some(serde_json::from_value(c.clone()).context("\"c\" must be an array of numbers")?),
        None => None,
    };
    Ok(Problem::Fuzzy { a, b, composition, c })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lists() {
        assert_eq!(parse_list("2,1").unwrap(), vec![2.0, 1.0]);
        assert_eq!(parse_list(" 0.5  -1 ").unwrap(), vec![0.5, -1.0]);
        assert!(parse_list("2,x").is_err());
    }

    #[test]
    fn embedded_tables() {
        let p = load_operand("@bonded-labor-1:p", None).unwrap();
        assert_eq!(p.shape(), (6, 4));
        assert!(matches!(load_operand("@neutro-example:p", None).unwrap(), Operand::Neutro(_, NeutroMode::Absorbing)));
        assert!(load_operand("@neutro-example:p", Some(NeutroMode::Graded)).is_err());
        assert!(load_operand("@bonded-labor-1:z", None).is_err());
        assert!(load_operand("@nope:p", None).is_err());
    }

    #[test]
    fn compositions() {
        assert_eq!(parse_composition("max-min").unwrap(), Composition::MaxMin);
        assert!(matches!(parse_composition("sup-t:lukasiewicz").unwrap(), Composition::SupT(_)));
        assert!(parse_composition("max-max").is_err());
    }
}
