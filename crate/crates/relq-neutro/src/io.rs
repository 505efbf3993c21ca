//! Text formats. CSV cells use the token grammar and the first line may be
//! `# mode: graded|absorbing`; JSON is `{"mode": .., "cells": [[..]]}` with
//! each cell a number or `{"I": c}`.

use relq_grade::Scalar;
use serde::{Deserialize, Serialize};

use crate::{neutro_format, NeutroError, NeutroGrade, NeutroMode, NeutroRelation};

fn settle(file: Option<NeutroMode>, flag: Option<NeutroMode>) -> Result<NeutroMode, NeutroError> {
    match (file, flag) {
        (Some(file), Some(flag)) if file != flag => Err(NeutroError::ModeMismatch { file, flag }),
        (Some(m), _) | (None, Some(m)) => Ok(m),
        (None, None) => Err(NeutroError::MissingMode),
    }
}

/// Reads a relation and its mode; `flag` must agree with the header when
/// both are present.
pub fn from_csv<S: Scalar>(
    text: &str,
    flag: Option<NeutroMode>,
) -> Result<(NeutroRelation<S>, NeutroMode), NeutroError> {
    let first = text.lines().find(|l| !l.trim().is_empty()).unwrap_or("");
    let header = first
        .trim()
        .strip_prefix('#')
        .and_then(|rest| rest.trim().strip_prefix("mode:"))
        .map(|m| m.parse::<NeutroMode>())
        .transpose()?;
    let mode = settle(header, flag)?;
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .flexible(true)
        .from_reader(text.as_bytes());
    let mut rows = Vec::new();
    for rec in rdr.records() {
        let rec = rec.map_err(|e| NeutroError::Format(e.to_string()))?;
        rows.push(rec.iter().map(str::parse).collect::<Result<Vec<NeutroGrade<S>>, _>>()?);
    }
    Ok((NeutroRelation::from_rows(rows)?, mode))
}

pub fn to_csv<S: Scalar>(r: &NeutroRelation<S>, mode: NeutroMode) -> String {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(vec![]);
    for i in 0..r.rows() {
        w.write_record(r.row(i).iter().map(neutro_format)).expect("write to memory");
    }
    let body = String::from_utf8(w.into_inner().expect("flush to memory")).expect("csv is utf-8");
    format!("# mode: {mode}\n{body}")
}

#[derive(Serialize, Deserialize)]
#[serde(bound = "S: Scalar")]
struct Doc<S> {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    mode: Option<NeutroMode>,
    cells: Vec<Vec<NeutroGrade<S>>>,
}

pub fn from_json<S: Scalar>(
    text: &str,
    flag: Option<NeutroMode>,
) -> Result<(NeutroRelation<S>, NeutroMode), NeutroError> {
    let doc: Doc<S> = serde_json::from_str(text).map_err(|e| NeutroError::Format(e.to_string()))?;
    let mode = settle(doc.mode, flag)?;
    Ok((NeutroRelation::from_rows(doc.cells)?, mode))
}

pub fn to_json<S: Scalar>(r: &NeutroRelation<S>, mode: NeutroMode) -> String {
    serde_json::to_string(&Doc { mode: Some(mode), cells: r.to_rows() }).expect("grades serialize")
}
