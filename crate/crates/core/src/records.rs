//! Serializable wire formats shared by the cache layer and the CLI.
//!
//! Ids and 3-letter labels both appear in every record so the files are
//! machine-joinable and human-readable at the same time.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::classifier::AtlasEntry;
use crate::enumerator::{ContextCatalog, Pentagram, PentagramError};
use crate::pauli::{PauliError, PauliObservable};
use crate::polar_space::{Context, FanoPlane};

#[derive(Debug, Error)]
pub enum RecordError {
    #[error("id {0} is not a valid observable")]
    BadId(#[from] PauliError),
    #[error("context {0:?} is not in the catalog")]
    UnknownContext([u8; 4]),
    #[error("stored negative-context count {stored} disagrees with the catalog ({actual})")]
    NegativeCountMismatch { stored: u8, actual: u8 },
    #[error(transparent)]
    Geometry(#[from] PentagramError),
}

fn labels<const N: usize>(points: [PauliObservable; N]) -> [String; N] {
    points.map(|p| p.to_string())
}

/// One context: four point ids, their labels, and the product sign.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContextRecord {
    pub points: [u8; 4],
    pub labels: [String; 4],
    pub sign: i8,
}

impl ContextRecord {
    pub fn from_context(context: &Context) -> ContextRecord {
        ContextRecord {
            points: context.ids(),
            labels: labels(context.points()),
            sign: context.sign().value(),
        }
    }
}

/// One Fano plane: seven point ids, labels, sign, and class code.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlaneRecord {
    pub points: [u8; 7],
    pub labels: [String; 7],
    pub sign: i8,
    pub class: String,
}

impl PlaneRecord {
    pub fn from_plane(plane: &FanoPlane) -> PlaneRecord {
        PlaneRecord {
            points: plane.points().map(|p| p.id()),
            labels: labels(plane.points()),
            sign: plane.sign().value(),
            class: plane.class().code().to_string(),
        }
    }
}

/// Cache/export form of one pentagram: five contexts as id quadruples plus
/// the negative-context count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PentagramRecord {
    pub contexts: [[u8; 4]; 5],
    pub neg: u8,
}

impl PentagramRecord {
    pub fn from_pentagram(pentagram: &Pentagram, catalog: &ContextCatalog) -> PentagramRecord {
        PentagramRecord {
            contexts: pentagram
                .context_indices()
                .map(|i| catalog.get(i as usize).ids()),
            neg: pentagram.negative_context_count(),
        }
    }

    /// Rebuilds and fully revalidates the pentagram against the catalog.
    pub fn to_pentagram(&self, catalog: &ContextCatalog) -> Result<Pentagram, RecordError> {
        let mut contexts = Vec::with_capacity(5);
        for ids in self.contexts {
            let index = catalog
                .index_of(ids)
                .ok_or(RecordError::UnknownContext(ids))?;
            contexts.push(*catalog.get(index));
        }
        let five: [Context; 5] = contexts.try_into().expect("five contexts");
        let pentagram = crate::enumerator::validate_pentagram(catalog, &five)?;
        if pentagram.negative_context_count() != self.neg {
            return Err(RecordError::NegativeCountMismatch {
                stored: self.neg,
                actual: pentagram.negative_context_count(),
            });
        }
        Ok(pentagram)
    }
}

/// Family totals by negative-context count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyCounts {
    pub neg5: u32,
    pub neg3: u32,
    pub neg1: u32,
}

impl FamilyCounts {
    pub fn tally(pentagrams: &[Pentagram]) -> FamilyCounts {
        let mut counts = FamilyCounts {
            neg5: 0,
            neg3: 0,
            neg1: 0,
        };
        for p in pentagrams {
            match p.negative_context_count() {
                5 => counts.neg5 += 1,
                3 => counts.neg3 += 1,
                _ => counts.neg1 += 1,
            }
        }
        counts
    }

    pub fn total(&self) -> u32 {
        self.neg5 + self.neg3 + self.neg1
    }
}

/// Sidecar metadata for the pentagram cache: totals plus a content hash of
/// the cache file bytes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MetaRecord {
    pub total: u32,
    pub families: FamilyCounts,
    pub sha256: String,
}

/// One atlas row: reference signature and K, plus the computed pentagram
/// count `n`. The `derived` flag marks `n` as computed by this crate rather
/// than read from the reference table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AtlasRowRecord {
    pub t: u8,
    pub c_neg: u8,
    pub o_a: u8,
    pub o_b: u8,
    pub o_c: u8,
    pub f_neg: u8,
    pub f_a: u8,
    pub f_b: u8,
    pub f_c: u8,
    pub k: u32,
    pub n: u32,
    pub derived: bool,
}

impl AtlasRowRecord {
    pub fn from_entry(entry: &AtlasEntry) -> AtlasRowRecord {
        let s = entry.signature;
        AtlasRowRecord {
            t: entry.t,
            c_neg: s.c_neg,
            o_a: s.o_a,
            o_b: s.o_b,
            o_c: s.o_c,
            f_neg: s.f_neg,
            f_a: s.f_a,
            f_b: s.f_b,
            f_c: s.f_c,
            k: entry.klein,
            n: entry.multiplicity,
            derived: true,
        }
    }

    /// The CSV data row in `T,C-,O_A,O_B,O_C,F-,F+a,F+b,F+c,K,N` order.
    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{},{}",
            self.t,
            self.c_neg,
            self.o_a,
            self.o_b,
            self.o_c,
            self.f_neg,
            self.f_a,
            self.f_b,
            self.f_c,
            self.k,
            self.n
        )
    }
}

pub const ATLAS_CSV_HEADER: &str = "T,C-,O_A,O_B,O_C,F-,F+a,F+b,F+c,K,N";

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polar_space::{extend_to_fano, make_context};

    fn o(label: &str) -> PauliObservable {
        label.parse().unwrap()
    }

    #[test]
    fn context_record_roundtrips_through_json() {
        let context = make_context([o("XXX"), o("XYY"), o("YXY"), o("YYX")]).unwrap();
        let record = ContextRecord::from_context(&context);
        assert_eq!(record.sign, -1);
        assert_eq!(record.labels[0], "XXX");
        let json = serde_json::to_string(&record).unwrap();
        assert_eq!(serde_json::from_str::<ContextRecord>(&json).unwrap(), record);
    }

    #[test]
    fn plane_record_carries_class_code() {
        let context = make_context([o("XII"), o("IXI"), o("IIX"), o("XXX")]).unwrap();
        let record = PlaneRecord::from_plane(&extend_to_fano(&context));
        assert_eq!(record.class, "c");
        assert_eq!(record.sign, 1);
        assert_eq!(record.points.len(), 7);
        let json = serde_json::to_string(&record).unwrap();
        assert_eq!(serde_json::from_str::<PlaneRecord>(&json).unwrap(), record);
    }

    #[test]
    fn pentagram_record_rejects_tampered_negative_count() {
        let catalog = ContextCatalog::enumerate();
        let labels = [
            ["XII", "IXI", "IIX", "XXX"],
            ["XII", "IYI", "IIY", "XYY"],
            ["YII", "IXI", "IIY", "YXY"],
            ["YII", "IYI", "IIX", "YYX"],
            ["XXX", "XYY", "YXY", "YYX"],
        ];
        let contexts = labels.map(|c| make_context(c.map(o)).unwrap());
        let pentagram = crate::enumerator::validate_pentagram(&catalog, &contexts).unwrap();
        let mut record = PentagramRecord::from_pentagram(&pentagram, &catalog);
        assert_eq!(record.to_pentagram(&catalog).unwrap(), pentagram);
        record.neg = 3;
        assert!(matches!(
            record.to_pentagram(&catalog),
            Err(RecordError::NegativeCountMismatch { stored: 3, actual: 1 })
        ));
    }
}
