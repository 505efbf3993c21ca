use relq_neutro::{NeutroMode, NeutroRelation64};
use relq_relation::Relation64;

use crate::bonded::{bonded_labor_q, bonded_labor_r, expert_matrix};
use crate::chemical::{chemical_mask, chemical_targets, CHEMICAL_FLOWS};
use crate::transport::{PALLAVAN_COUNTS, PALLAVAN_HOURS};
use crate::DatasetError;

pub const DATASET_NAMES: [&str; 11] = [
    "pallavan",
    "chemical-flow",
    "bonded-labor-1",
    "bonded-labor-2",
    "bonded-labor-3",
    "hiv-checklist",
    "hiv-triangle",
    "bonded-labor-nre",
    "medical-nre",
    "compat-graph",
    "neutro-example",
];

#[derive(Debug, Clone, PartialEq)]
pub enum Table {
    Fuzzy(Relation64),
    Neutro(NeutroRelation64, NeutroMode),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    pub name: &'static str,
    pub description: &'static str,
    pub tables: Vec<(&'static str, Table)>,
}

impl Dataset {
    pub fn table(&self, name: &str) -> Option<&Table> {
        self.tables.iter().find(|(n, _)| *n == name).map(|(_, t)| t)
    }

    pub fn fuzzy(&self, name: &str) -> Option<&Relation64> {
        match self.table(name) {
            Some(Table::Fuzzy(r)) => Some(r),
            _ => None,
        }
    }

    pub fn neutro(&self, name: &str) -> Option<&NeutroRelation64> {
        match self.table(name) {
            Some(Table::Neutro(r, _)) => Some(r),
            _ => None,
        }
    }
}

fn fuzzy(rows: &[&[f64]]) -> Table {
    Table::Fuzzy(Relation64::from_f64_rows(rows).expect("embedded tables are rectangular"))
}

fn column(v: &[f64]) -> Table {
    Table::Fuzzy(Relation64::column_vector(v).expect("embedded tables are rectangular"))
}

fn neutro(rows: &[&[&str]]) -> Table {
    Table::Neutro(NeutroRelation64::parse_rows(rows).expect("embedded tokens parse"), NeutroMode::Graded)
}

fn absorbing(rows: &[&[&str]]) -> Table {
    Table::Neutro(NeutroRelation64::parse_rows(rows).expect("embedded tokens parse"), NeutroMode::Absorbing)
}

/// Criteria (rows) by patients (columns) for eight HIV/AIDS criteria.
pub fn hiv_observations() -> Relation64 {
    Relation64::from_f64_rows(&[
        &[0., 0., 1., 0., 0., 0., 0., 1., 0., 0.],
        &[0., 0., 0., 0., 0., 1., 0., 0., 0., 0.],
        &[0., 0., 0., 1., 0., 0., 0., 0., 0., 0.],
        &[1., 1., 1., 0., 1., 0., 1., 0., 1., 0.],
        &[0., 0., 1., 0., 0., 0., 1., 0., 0., 0.],
        &[0., 0., 0., 1., 1., 0., 0., 0., 0., 1.],
        &[1., 0., 1., 0., 1., 0., 0., 1., 1., 0.],
        &[1., 1., 0., 1., 0., 0., 1., 0., 0., 0.],
    ])
    .expect("fixed shape")
}

/// Checklist marks, patients (rows) by items (columns).
pub fn hiv_checklist() -> Relation64 {
    Relation64::from_f64_rows(&[
        &[0., 0., 0., 0., 1.],
        &[1., 1., 1., 1., 1.],
        &[1., 1., 0., 0., 1.],
        &[1., 0., 1., 1., 0.],
        &[0., 1., 0., 0., 0.],
    ])
    .expect("fixed shape")
    .transpose()
}

pub fn dataset(name: &str) -> Result<Dataset, DatasetError> {
    let d = match name {
        "pallavan" => {
            let hours: Vec<f64> = PALLAVAN_HOURS.iter().map(|&h| h as f64 * 1e-2).collect();
            let counts: Vec<f64> = PALLAVAN_COUNTS.iter().map(|&c| c as f64 * 1e-4).collect();
            Dataset {
                name: "pallavan",
                description: "hourly bus passengers; hours scaled by 1e-2, counts by 1e-4",
                tables: vec![("q", column(&hours)), ("r", column(&counts))],
            }
        }
        "chemical-flow" => Dataset {
            name: "chemical-flow",
            description: "five-node flow network mask with synthetic consistent streams",
            tables: vec![
                ("mask", Table::Fuzzy(chemical_mask())),
                ("q", column(&CHEMICAL_FLOWS)),
                ("r", column(&chemical_targets::<f64>(true))),
            ],
        },
        "bonded-labor-1" | "bonded-labor-2" | "bonded-labor-3" => {
            let expert: usize = name[name.len() - 1..].parse().expect("digit suffix");
            Dataset {
                name: DATASET_NAMES[1 + expert],
                description: "silk-weaver study: one expert's weights, owner profit Q, target status R",
                tables: vec![
                    ("p", Table::Fuzzy(expert_matrix(expert)?)),
                    ("q", column(&bonded_labor_q::<f64>())),
                    ("r", column(&bonded_labor_r::<f64>())),
                ],
            }
        }
        "hiv-checklist" => Dataset {
            name: "hiv-checklist",
            description: "checklist marks, patients by items",
            tables: vec![("marks", Table::Fuzzy(hiv_checklist()))],
        },
        "hiv-triangle" => Dataset {
            name: "hiv-triangle",
            description: "HIV/AIDS criteria by patients",
            tables: vec![("r", Table::Fuzzy(hiv_observations()))],
        },
        "bonded-labor-nre" => Dataset {
            name: "bonded-labor-nre",
            description: "neutrosophic bonded-labor relation with the owners' state",
            tables: vec![
                (
                    "p",
                    neutro(&[
                        &[".6", "0", ".3I", "0"],
                        &[".7", ".4", ".3", ".8I"],
                        &[".3", ".4", ".3", ".3"],
                        &[".3I", "0", ".3", ".4I"],
                        &[".8", ".4I", ".2", ".4"],
                        &["0", ".4", ".5", ".9"],
                    ]),
                ),
                ("q", neutro(&[&[".6"], &[".5"], &[".7"], &[".9"]])),
            ],
        },
        "medical-nre" => Dataset {
            name: "medical-nre",
            description: "neutrosophic symptoms by diseases with one patient's symptom vector",
            tables: vec![
                (
                    "a",
                    neutro(&[
                        &["0", "0", ".2I", ".5", "0", "0", ".6", ".7", "0", ".5I"],
                        &["0", "0", "0", "0", "0", ".2", "1", "0", ".9", ".6"],
                        &[".5I", "0", "0", "0", ".9", "0", "0", "0", "0", "0"],
                        &[".7", "0", "0", ".8I", "0", ".3", "0", ".8", "0", "0"],
                        &["0", ".8I", ".3", "0", ".7", "1", "0", ".3", ".7I", ".7"],
                        &[".3", ".7", "0", ".3", "0", "0", "0", "1", "1", "0"],
                        &[".9", ".4", "0", "0", ".8I", ".9", "0", "0", "0", ".4"],
                        &[".2I", "0", "0", "0", "0", "0", ".7I", "0", ".2", ".3"],
                    ]),
                ),
                ("x", neutro(&[&[".3", ".7", ".5I", ".3", "0", ".3", ".2", ".3I"]])),
            ],
        },
        "compat-graph" => Dataset {
            name: "compat-graph",
            description: "reflexive symmetric relation on eight elements",
            tables: vec![(
                "r",
                fuzzy(&[
                    &[1., 0.3, 0., 0., 0.4, 0., 0., 0.6],
                    &[0.3, 1., 0.5, 0.3, 0., 0., 0., 0.],
                    &[0., 0.5, 1., 0., 0., 0.7, 0.6, 0.8],
                    &[0., 0.3, 0., 1., 0.2, 0., 0.7, 0.5],
                    &[0.4, 0., 0., 0.2, 1., 0., 0., 0.],
                    &[0., 0., 0.7, 0., 0., 1., 0.2, 0.],
                    &[0., 0., 0.6, 0.7, 0., 0.2, 1., 0.8],
                    &[0.6, 0., 0.8, 0.5, 0., 0., 0.8, 1.],
                ]),
            )],
        },
        "neutro-example" => Dataset {
            name: "neutro-example",
            description: "small absorbing-mode composition",
            tables: vec![
                ("p", absorbing(&[&["0.3", "I", "1"], &["0", "0.9", "0.2"], &["0.7", "0", "0.4"]])),
                ("q", absorbing(&[&["0.1"], &["I"], &["0"]])),
            ],
        },
        other => return Err(DatasetError::Unknown(other.to_string())),
    };
    Ok(d)
}
