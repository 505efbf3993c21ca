use relq_grade::Scalar;

use crate::{Relation, RelationError};

/// Parses a headerless numeric CSV grid.
pub fn from_csv<S: Scalar>(text: &str) -> Result<Relation<S>, RelationError> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .flexible(true)
        .from_reader(text.as_bytes());
    let mut rows = Vec::new();
    for rec in rdr.records() {
        let rec = rec.map_err(|e| RelationError::Csv(e.to_string()))?;
        if rec.iter().all(str::is_empty) {
            continue;
        }
        let row = rec
            .iter()
            .map(|f| {
                f.parse::<f64>()
                    .map(S::lit)
                    .map_err(|e| RelationError::Csv(format!("{f:?}: {e}")))
            })
            .collect::<Result<Vec<S>, _>>()?;
        rows.push(row);
    }
    Relation::from_rows(rows)
}

/// Writes the grid as CSV using shortest round-trip formatting.
pub fn to_csv<S: Scalar>(r: &Relation<S>) -> String {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(vec![]);
    for i in 0..r.rows() {
        w.write_record(r.row(i).iter().map(|v| format!("{v}")))
            .expect("writing to memory");
    }
    String::from_utf8(w.into_inner().expect("flush to memory")).expect("csv is utf-8")
}

pub fn from_json<S: Scalar>(text: &str) -> Result<Relation<S>, RelationError> {
    serde_json::from_str(text).map_err(|e| RelationError::Json(e.to_string()))
}

pub fn to_json<S: Scalar>(r: &Relation<S>) -> String {
    serde_json::to_string(r).expect("relations always serialize")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Relation64;

    #[test]
    fn csv_round_trip() {
        let r = Relation64::from_rows(vec![vec![0.1, 1.0 / 3.0], vec![0.0, 1.0]]).unwrap();
        let text = to_csv(&r);
        assert_eq!(from_csv::<f64>(&text).unwrap(), r);
    }

    #[test]
    fn json_shape() {
        let r = Relation64::from_rows(vec![vec![0.25, 0.5]]).unwrap();
        let text = to_json(&r);
        assert_eq!(text, r#"{"rows":1,"cols":2,"cells":[[0.25,0.5]]}"#);
        assert_eq!(from_json::<f64>(&text).unwrap(), r);
        assert!(from_json::<f64>(r#"{"rows":2,"cols":2,"cells":[[0.25,0.5]]}"#).is_err());
    }

    #[test]
    fn csv_rejects_garbage() {
        assert!(from_csv::<f64>("0.1,abc\n").is_err());
        assert!(from_csv::<f64>("0.1,0.2\n0.3\n").is_err());
    }
}
