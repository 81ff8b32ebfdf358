//! JSON documents and text formats for tables, codes, DSSs and sequences.

use std::fs;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize, Serializer};

use crate::algebra::{Element, Ring, RingDescriptor};
use crate::codes;
use crate::error::{Error, Result};
use crate::exact::{self, Rational};
use crate::zd::FunctionTable;

pub fn serialize_ratio<S: Serializer>(value: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&exact::format_ratio(value))
}

pub fn serialize_opt_ratio<S: Serializer>(value: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
    match value {
        Some(v) => serialize_ratio(v, s),
        None => s.serialize_none(),
    }
}

/// `{"group": <ring descriptor>, "m": 3, "values": [...]}`, values by canonical index.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableDocument {
    pub group: RingDescriptor,
    pub m: usize,
    pub values: Vec<usize>,
}

pub fn import_table(doc: &TableDocument, max_order: usize) -> Result<FunctionTable> {
    let ring = Arc::new(Ring::with_max_order(&doc.group, max_order)?);
    FunctionTable::with_image_size(ring, doc.m, doc.values.clone())
}

pub fn export_table(f: &FunctionTable) -> TableDocument {
    TableDocument {
        group: f.ring().descriptor().clone(),
        m: f.m(),
        values: f.values().to_vec(),
    }
}

/// `{"group": ..., "blocks": [[indices], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DssDocument {
    pub group: RingDescriptor,
    pub blocks: Vec<Vec<usize>>,
}

impl DssDocument {
    pub fn elements(&self) -> Vec<Vec<Element>> {
        self.blocks
            .iter()
            .map(|b| b.iter().map(|&i| Element::new(i)).collect())
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeDocument {
    pub q: usize,
    pub words: Vec<Vec<usize>>,
}

/// One word per line, symbols `0-9A-Z`; blank lines are ignored. `q` defaults to one more
/// than the largest symbol.
pub fn parse_code_text(text: &str, q: Option<usize>) -> Result<CodeDocument> {
    let words = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .map(codes::parse_word)
        .collect::<Result<Vec<_>>>()?;
    let largest = words.iter().flatten().copied().max().unwrap_or(0);
    Ok(CodeDocument {
        q: q.unwrap_or(largest + 1),
        words,
    })
}

/// Comma-separated decimal symbols, optionally wrapped in braces and spread over lines.
pub fn parse_sequence_text(text: &str) -> Result<Vec<usize>> {
    text.trim()
        .trim_start_matches('{')
        .trim_end_matches('}')
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|_| Error::Malformed(format!("sequence symbol {t:?}"))))
        .collect()
}

pub fn format_sequence(values: &[usize]) -> String {
    values.iter().map(usize::to_string).collect::<Vec<_>>().join(", ")
}

/// Imported Type-A tables, one per parameter set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableBundle {
    pub tables: Vec<BundleEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BundleEntry {
    /// Subgroup order parameter of the family.
    pub e: usize,
    /// `(p, r)` factors of the field part `v`.
    pub factors: Vec<(u64, u32)>,
    pub table: TableDocument,
}

impl TableBundle {
    pub fn find(&self, group: &RingDescriptor, e: usize) -> Option<&BundleEntry> {
        self.tables.iter().find(|t| t.e == e && &t.table.group == group)
    }
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

pub fn read_table(path: &Path, max_order: usize) -> Result<FunctionTable> {
    import_table(&read_json(path)?, max_order)
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    fs::write(path, serde_json::to_string_pretty(value)? + "\n")?;
    Ok(())
}
