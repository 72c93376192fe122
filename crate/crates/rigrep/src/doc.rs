//! JSON documents for rigs and MV-algebras.
//!
//! Tables may be written with labels or indices; parsing canonicalizes to
//! indices, and emission always uses indices with labelled `zero`/`one`.
//! Only shape problems are caught here; the algebra laws are checked by the
//! constructors the parsed tables are handed to.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mv::MVAlgebra;
use crate::rig::FiniteRig;

/// One table entry: a position or a label.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Cell {
    Index(usize),
    Label(String),
}

/// The on-disk form of an algebra. A rig document carries `add` and `mul`;
/// an MV document carries `oplus` and `neg` instead.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDocument {
    pub name: String,
    pub elements: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub add: Option<Vec<Vec<Cell>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mul: Option<Vec<Vec<Cell>>>,
    pub zero: String,
    pub one: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oplus: Option<Vec<Vec<Cell>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub neg: Option<Vec<Cell>>,
}

pub fn parse_document(text: &str) -> Result<AlgebraDocument> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

fn resolve_cell(cell: &Cell, labels: &[String], place: String) -> Result<usize> {
    match cell {
        Cell::Index(i) => {
            if *i < labels.len() {
                Ok(*i)
            } else {
                Err(Error::Parse(format!(
                    "{place}: index {i} out of range for {} elements",
                    labels.len()
                )))
            }
        }
        Cell::Label(s) => labels
            .iter()
            .position(|l| l == s)
            .ok_or_else(|| Error::Parse(format!("{place}: unknown label `{s}`"))),
    }
}

fn resolve_table(
    table: &Option<Vec<Vec<Cell>>>,
    field: &str,
    labels: &[String],
) -> Result<Vec<Vec<usize>>> {
    let n = labels.len();
    let table = table
        .as_ref()
        .ok_or_else(|| Error::Parse(format!("the `{field}` table is missing")))?;
    if table.len() != n {
        return Err(Error::Parse(format!(
            "`{field}` has {} rows, expected {n}",
            table.len()
        )));
    }
    table
        .iter()
        .enumerate()
        .map(|(i, row)| {
            if row.len() != n {
                return Err(Error::Parse(format!(
                    "`{field}` row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            row.iter()
                .enumerate()
                .map(|(j, cell)| resolve_cell(cell, labels, format!("`{field}`[{i}][{j}]")))
                .collect()
        })
        .collect()
}

fn resolve_constant(label: &str, field: &str, labels: &[String]) -> Result<usize> {
    labels
        .iter()
        .position(|l| l == label)
        .ok_or_else(|| Error::Parse(format!("`{field}`: unknown label `{label}`")))
}

pub fn rig_from_document(doc: &AlgebraDocument) -> Result<FiniteRig> {
    let add = resolve_table(&doc.add, "add", &doc.elements)?;
    let mul = resolve_table(&doc.mul, "mul", &doc.elements)?;
    let zero = resolve_constant(&doc.zero, "zero", &doc.elements)?;
    let one = resolve_constant(&doc.one, "one", &doc.elements)?;
    FiniteRig::new(doc.name.clone(), doc.elements.clone(), add, mul, zero, one)
}

pub fn mv_from_document(doc: &AlgebraDocument) -> Result<MVAlgebra> {
    let oplus = resolve_table(&doc.oplus, "oplus", &doc.elements)?;
    let neg = doc
        .neg
        .as_ref()
        .ok_or_else(|| Error::Parse("the `neg` table is missing".into()))?
        .iter()
        .enumerate()
        .map(|(i, cell)| resolve_cell(cell, &doc.elements, format!("`neg`[{i}]")))
        .collect::<Result<Vec<usize>>>()?;
    let zero = resolve_constant(&doc.zero, "zero", &doc.elements)?;
    let one = resolve_constant(&doc.one, "one", &doc.elements)?;
    let algebra = MVAlgebra::new(doc.name.clone(), doc.elements.clone(), oplus, neg, zero)?;
    if algebra.one() != one {
        return Err(Error::Parse(format!(
            "`one` names `{}`, but neg(zero) is `{}`",
            doc.one,
            algebra.label(algebra.one())
        )));
    }
    Ok(algebra)
}

pub fn parse_rig(text: &str) -> Result<FiniteRig> {
    rig_from_document(&parse_document(text)?)
}

pub fn parse_mv(text: &str) -> Result<MVAlgebra> {
    mv_from_document(&parse_document(text)?)
}

fn index_table(table: Vec<Vec<usize>>) -> Vec<Vec<Cell>> {
    table
        .into_iter()
        .map(|row| row.into_iter().map(Cell::Index).collect())
        .collect()
}

pub fn document_of_rig(rig: &FiniteRig) -> AlgebraDocument {
    AlgebraDocument {
        name: rig.name().to_string(),
        elements: rig.labels().to_vec(),
        add: Some(index_table(rig.add_table())),
        mul: Some(index_table(rig.mul_table())),
        zero: rig.label(rig.zero()).to_string(),
        one: rig.label(rig.one()).to_string(),
        oplus: None,
        neg: None,
    }
}

pub fn document_of_mv(m: &MVAlgebra) -> AlgebraDocument {
    AlgebraDocument {
        name: m.name().to_string(),
        elements: m.labels().to_vec(),
        add: None,
        mul: None,
        zero: m.label(m.zero()).to_string(),
        one: m.label(m.one()).to_string(),
        oplus: Some(index_table(m.oplus_table())),
        neg: Some(m.neg_table().iter().copied().map(Cell::Index).collect()),
    }
}

/// Canonical text: pretty JSON with a trailing newline.
pub fn emit(doc: &AlgebraDocument) -> String {
    let mut text = serde_json::to_string_pretty(doc).expect("documents serialize");
    text.push('\n');
    text
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{lukasiewicz, two};
    use crate::mv::mv_from_rig;

    const TWO_BY_LABELS: &str = r#"{
        "name": "2",
        "elements": ["0", "1"],
        "add": [["0", "1"], ["1", "1"]],
        "mul": [["0", "0"], ["0", "1"]],
        "zero": "0",
        "one": "1"
    }"#;

    #[test]
    fn labelled_tables_parse_to_the_expected_rig() {
        assert_eq!(parse_rig(TWO_BY_LABELS).unwrap(), two());
    }

    #[test]
    fn emitted_documents_parse_back_and_stay_fixed() {
        for rig in [two(), lukasiewicz(3), crate::generate::boolean(2)] {
            let text = emit(&document_of_rig(&rig));
            let back = parse_rig(&text).unwrap();
            assert_eq!(back, rig);
            let again = emit(&document_of_rig(&back));
            assert_eq!(again, text);
        }
    }

    #[test]
    fn reparsing_an_emitted_document_is_byte_stable() {
        let text = emit(&document_of_rig(&lukasiewicz(4)));
        let doc = parse_document(&text).unwrap();
        assert_eq!(emit(&doc), text);
    }

    #[test]
    fn ragged_tables_are_reported_by_row() {
        let text = r#"{
            "name": "bad",
            "elements": ["0", "1"],
            "add": [["0", "1"], ["1"]],
            "mul": [["0", "0"], ["0", "1"]],
            "zero": "0",
            "one": "1"
        }"#;
        match parse_rig(text) {
            Err(Error::Parse(msg)) => assert!(msg.contains("row 1"), "got: {msg}"),
            other => panic!("expected a parse error, got {other:?}"),
        }
    }

    #[test]
    fn unknown_labels_and_fields_are_parse_errors() {
        let unknown_label = TWO_BY_LABELS.replace("\"zero\": \"0\"", "\"zero\": \"o\"");
        assert!(matches!(parse_rig(&unknown_label), Err(Error::Parse(_))));
        let unknown_field = TWO_BY_LABELS.replace("\"name\"", "\"extra\": 1, \"name\"");
        assert!(matches!(parse_rig(&unknown_field), Err(Error::Parse(_))));
    }

    #[test]
    fn missing_add_table_is_a_parse_error() {
        let text = r#"{
            "name": "bare",
            "elements": ["0", "1"],
            "zero": "0",
            "one": "1"
        }"#;
        match parse_rig(text) {
            Err(Error::Parse(msg)) => assert!(msg.contains("add"), "got: {msg}"),
            other => panic!("expected a parse error, got {other:?}"),
        }
    }

    #[test]
    fn mv_documents_round_trip() {
        let m = mv_from_rig(&lukasiewicz(3)).unwrap();
        let text = emit(&document_of_mv(&m));
        assert_eq!(parse_mv(&text).unwrap(), m);
    }

    #[test]
    fn mv_document_with_wrong_one_is_rejected() {
        let m = mv_from_rig(&lukasiewicz(3)).unwrap();
        let text = emit(&document_of_mv(&m)).replace("\"one\": \"1\"", "\"one\": \"1/2\"");
        match parse_mv(&text) {
            Err(Error::Parse(msg)) => assert!(msg.contains("neg(zero)"), "got: {msg}"),
            other => panic!("expected a parse error, got {other:?}"),
        }
    }
}
