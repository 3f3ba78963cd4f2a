//! JSON input and output.
//!
//! Files are parsed in two steps: syntax and shape first (a parse error with
//! line and column), then the library constructors, whose errors are
//! preconditions rather than parse failures.

use std::fs;
use std::path::Path;

use polymoment::geometry::{Atom, VertexSet, WeightedMeasure};
use polymoment::inverse::Reconstruction;
use polymoment::oracle::MomentTable;
use polymoment::poly::MultiIndex;
use polymoment::{Error, Rat, Result};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawVertices {
    dim: usize,
    points: Vec<Vec<Rat>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMeasure {
    vertices: RawVertices,
    atoms: Vec<Atom>,
    #[serde(default)]
    singular: bool,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEntry {
    index: Vec<u32>,
    value: Rat,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTable {
    dim: usize,
    order: u32,
    moments: Vec<RawEntry>,
}

fn read_raw<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::Io(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

pub fn read_vertices(path: &Path) -> Result<VertexSet> {
    let raw: RawVertices = read_raw(path)?;
    VertexSet::new(raw.dim, raw.points)
}

pub fn read_measure(path: &Path) -> Result<WeightedMeasure> {
    let raw: RawMeasure = read_raw(path)?;
    let vs = VertexSet::new(raw.vertices.dim, raw.vertices.points)?;
    let atoms = raw.atoms.into_iter().map(|a| (a.simplex, a.weight));
    if raw.singular {
        WeightedMeasure::new_singular(vs, atoms)
    } else {
        WeightedMeasure::new(vs, atoms)
    }
}

pub fn read_moments(path: &Path) -> Result<MomentTable> {
    let raw: RawTable = read_raw(path)?;
    MomentTable::from_entries(
        raw.dim,
        raw.order,
        raw.moments
            .into_iter()
            .map(|e| (MultiIndex::new(e.index), e.value)),
    )
}

pub fn read_reconstruction(path: &Path) -> Result<Reconstruction> {
    read_raw(path)
}

pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| Error::Internal(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

/// Writes to `out`, or to standard output when absent.
pub fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => {
            fs::write(p, text).map_err(|e| Error::Io(format!("cannot write {}: {e}", p.display())))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
