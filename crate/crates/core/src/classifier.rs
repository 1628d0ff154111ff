//! Classification of pentagrams into the 45 types of the atlas.
//!
//! A pentagram's type is determined by an eight-component signature: the
//! negative-context count, the kind census of its ten observables, and the
//! class census of the five Fano planes extending its contexts. Type
//! indices come from a golden table shipped with the crate; multiplicities
//! are computed, not looked up.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

#[cfg(feature = "parallel")]
use rayon::prelude::*;
use thiserror::Error;

use crate::enumerator::{ContextCatalog, Pentagram};
use crate::pauli::{ObservableKind, PauliObservable, Sign};
use crate::polar_space::{extend_to_fano, KleinQuadric, PlaneClass};

/// The eight-component type signature of a pentagram.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TypeSignature {
    /// Negative contexts (1, 3, or 5).
    pub c_neg: u8,
    /// Kind-A observables among the ten points.
    pub o_a: u8,
    /// Kind-B observables.
    pub o_b: u8,
    /// Kind-C observables.
    pub o_c: u8,
    /// Negative Fano planes among the five extensions.
    pub f_neg: u8,
    /// Positive planes of class a.
    pub f_a: u8,
    /// Positive planes of class b.
    pub f_b: u8,
    /// Positive planes of class c.
    pub f_c: u8,
}

impl fmt::Display for TypeSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({},{},{},{},{},{},{},{})",
            self.c_neg, self.o_a, self.o_b, self.o_c, self.f_neg, self.f_a, self.f_b, self.f_c
        )
    }
}

/// Per-context data the classifier needs, precomputed once per catalog.
#[derive(Debug, Clone)]
pub struct ContextProfile {
    pub sign: Sign,
    pub plane_class: PlaneClass,
    pub infinity: [PauliObservable; 3],
}

/// Profiles for every context in the catalog, index-aligned.
#[derive(Debug, Clone)]
pub struct ClassifiedContexts {
    profiles: Vec<ContextProfile>,
}

impl ClassifiedContexts {
    pub fn build(catalog: &ContextCatalog) -> ClassifiedContexts {
        let profiles = catalog
            .contexts()
            .iter()
            .map(|c| ContextProfile {
                sign: c.sign(),
                plane_class: extend_to_fano(c).class(),
                infinity: c.line_at_infinity(),
            })
            .collect();
        ClassifiedContexts { profiles }
    }

    pub fn profile(&self, index: usize) -> &ContextProfile {
        &self.profiles[index]
    }

    pub fn profiles(&self) -> &[ContextProfile] {
        &self.profiles
    }
}

/// The signature of one pentagram.
pub fn signature(pentagram: &Pentagram, classified: &ClassifiedContexts) -> TypeSignature {
    let mut sig = TypeSignature {
        c_neg: pentagram.negative_context_count(),
        o_a: 0,
        o_b: 0,
        o_c: 0,
        f_neg: 0,
        f_a: 0,
        f_b: 0,
        f_c: 0,
    };
    for p in pentagram.points() {
        match p.kind() {
            ObservableKind::A => sig.o_a += 1,
            ObservableKind::B => sig.o_b += 1,
            ObservableKind::C => sig.o_c += 1,
        }
    }
    for idx in pentagram.context_indices() {
        match self::plane_class_of(classified, idx as usize) {
            PlaneClass::Negative => sig.f_neg += 1,
            PlaneClass::PositiveA => sig.f_a += 1,
            PlaneClass::PositiveB => sig.f_b += 1,
            PlaneClass::PositiveC => sig.f_c += 1,
        }
    }
    sig
}

fn plane_class_of(classified: &ClassifiedContexts, index: usize) -> PlaneClass {
    classified.profile(index).plane_class
}

/// Signatures for every pentagram, single-threaded.
pub fn signatures_serial(
    pentagrams: &[Pentagram],
    classified: &ClassifiedContexts,
) -> Vec<TypeSignature> {
    pentagrams.iter().map(|p| signature(p, classified)).collect()
}

/// Signatures for every pentagram; data-parallel over pentagrams when the
/// `parallel` feature is enabled.
#[cfg(feature = "parallel")]
pub fn signatures(
    pentagrams: &[Pentagram],
    classified: &ClassifiedContexts,
) -> Vec<TypeSignature> {
    pentagrams
        .par_iter()
        .map(|p| signature(p, classified))
        .collect()
}

#[cfg(not(feature = "parallel"))]
pub fn signatures(
    pentagrams: &[Pentagram],
    classified: &ClassifiedContexts,
) -> Vec<TypeSignature> {
    signatures_serial(pentagrams, classified)
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TableError {
    #[error("line {line}: expected {expected} comma-separated fields, got {got}")]
    BadFieldCount {
        line: usize,
        expected: usize,
        got: usize,
    },
    #[error("line {line}: {field} is not a small integer: {value:?}")]
    BadInteger {
        line: usize,
        field: &'static str,
        value: String,
    },
    #[error("line {line}: type index {got} out of order, expected {expected}")]
    BadTypeIndex { line: usize, expected: u8, got: u8 },
    #[error("line {line}: observable counts {o_a}+{o_b}+{o_c} do not sum to 10")]
    BadObservableSum { line: usize, o_a: u8, o_b: u8, o_c: u8 },
    #[error("line {line}: plane counts sum to {sum}, want 5")]
    BadPlaneSum { line: usize, sum: u8 },
    #[error("line {line}: negative-context count {got} is not 1, 3, or 5")]
    BadNegativeCount { line: usize, got: u8 },
    #[error("line {line}: signature {sig} duplicates an earlier row")]
    DuplicateSignature { line: usize, sig: TypeSignature },
    #[error("expected 45 data rows, got {0}")]
    WrongRowCount(usize),
    #[error("missing or malformed header row")]
    BadHeader,
}

/// One row of the reference table: a type index, its signature, and the
/// expected number of its pentagrams on the Klein quadric.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AtlasRow {
    pub t: u8,
    pub signature: TypeSignature,
    pub k: u32,
}

/// The 45-row reference table mapping signatures to type indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoldenTable {
    rows: Vec<AtlasRow>,
    by_signature: BTreeMap<TypeSignature, u8>,
}

pub const GOLDEN_TABLE_CSV: &str = include_str!("../golden/table1.csv");

impl GoldenTable {
    /// The copy shipped with the crate.
    pub fn embedded() -> GoldenTable {
        GoldenTable::parse_csv(GOLDEN_TABLE_CSV).expect("the embedded table parses")
    }

    /// Parses the `T,C-,O_A,O_B,O_C,F-,F+a,F+b,F+c,K` format and validates
    /// the row-local structure (sums, ranges, distinct signatures).
    pub fn parse_csv(text: &str) -> Result<GoldenTable, TableError> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (_, header) = lines.next().ok_or(TableError::BadHeader)?;
        if !header.trim_start().starts_with("T,") {
            return Err(TableError::BadHeader);
        }
        let mut rows = Vec::new();
        let mut by_signature = BTreeMap::new();
        for (zero_based, raw) in lines {
            let line = zero_based + 1;
            let fields: Vec<&str> = raw.trim().split(',').collect();
            if fields.len() != 10 {
                return Err(TableError::BadFieldCount {
                    line,
                    expected: 10,
                    got: fields.len(),
                });
            }
            let names = [
                "T", "C-", "O_A", "O_B", "O_C", "F-", "F+a", "F+b", "F+c", "K",
            ];
            let mut values = [0u32; 10];
            for (i, (field, name)) in fields.iter().zip(names).enumerate() {
                values[i] = field.trim().parse().map_err(|_| TableError::BadInteger {
                    line,
                    field: name,
                    value: field.to_string(),
                })?;
            }
            let t = values[0] as u8;
            let expected = rows.len() as u8 + 1;
            if t != expected {
                return Err(TableError::BadTypeIndex {
                    line,
                    expected,
                    got: t,
                });
            }
            let sig = TypeSignature {
                c_neg: values[1] as u8,
                o_a: values[2] as u8,
                o_b: values[3] as u8,
                o_c: values[4] as u8,
                f_neg: values[5] as u8,
                f_a: values[6] as u8,
                f_b: values[7] as u8,
                f_c: values[8] as u8,
            };
            if !matches!(sig.c_neg, 1 | 3 | 5) {
                return Err(TableError::BadNegativeCount {
                    line,
                    got: sig.c_neg,
                });
            }
            if sig.o_a + sig.o_b + sig.o_c != 10 {
                return Err(TableError::BadObservableSum {
                    line,
                    o_a: sig.o_a,
                    o_b: sig.o_b,
                    o_c: sig.o_c,
                });
            }
            let plane_sum = sig.f_neg + sig.f_a + sig.f_b + sig.f_c;
            if plane_sum != 5 {
                return Err(TableError::BadPlaneSum {
                    line,
                    sum: plane_sum,
                });
            }
            if by_signature.insert(sig, t).is_some() {
                return Err(TableError::DuplicateSignature { line, sig });
            }
            rows.push(AtlasRow {
                t,
                signature: sig,
                k: values[9],
            });
        }
        if rows.len() != 45 {
            return Err(TableError::WrongRowCount(rows.len()));
        }
        Ok(GoldenTable { rows, by_signature })
    }

    pub fn rows(&self) -> &[AtlasRow] {
        &self.rows
    }

    pub fn type_of(&self, sig: &TypeSignature) -> Option<u8> {
        self.by_signature.get(sig).copied()
    }

    pub fn row(&self, t: u8) -> &AtlasRow {
        &self.rows[t as usize - 1]
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClassifyError {
    #[error("computed signature {signature} ({count} pentagrams) is absent from the reference table")]
    UnknownSignature {
        signature: TypeSignature,
        count: u32,
    },
    #[error("reference type {t} with signature {signature} matches no computed pentagram")]
    MissingType { t: u8, signature: TypeSignature },
}

/// One atlas entry: a reference row plus computed counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AtlasEntry {
    pub t: u8,
    pub signature: TypeSignature,
    /// Pentagrams of this type; computed here, not part of the reference.
    pub multiplicity: u32,
    /// Computed pentagrams of this type on the Klein quadric.
    pub klein: u32,
    /// The reference K value for comparison.
    pub klein_reference: u32,
}

/// The outcome of classifying the full enumeration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    /// Type index (1..=45) per pentagram, aligned with the input order.
    pub types: Vec<u8>,
    /// Signature per pentagram.
    pub signatures: Vec<TypeSignature>,
    /// One entry per type, ascending by type index.
    pub entries: Vec<AtlasEntry>,
}

impl Classification {
    pub fn entry(&self, t: u8) -> &AtlasEntry {
        &self.entries[t as usize - 1]
    }

    /// Types with at least one pentagram on the quadric.
    pub fn klein_realized_types(&self) -> Vec<u8> {
        self.entries
            .iter()
            .filter(|e| e.klein > 0)
            .map(|e| e.t)
            .collect()
    }

    /// Types with no pentagram on the quadric.
    pub fn klein_missing_types(&self) -> Vec<u8> {
        self.entries
            .iter()
            .filter(|e| e.klein == 0)
            .map(|e| e.t)
            .collect()
    }
}

/// Matches every computed signature against the reference table, one-to-one:
/// unknown signatures and unrealized reference rows are both errors. Klein
/// counts are left at zero; see [`klein_census`].
pub fn build_atlas(
    pentagrams: &[Pentagram],
    classified: &ClassifiedContexts,
    golden: &GoldenTable,
) -> Result<Classification, ClassifyError> {
    let sigs = signatures(pentagrams, classified);
    let mut multiplicity: BTreeMap<TypeSignature, u32> = BTreeMap::new();
    for sig in &sigs {
        *multiplicity.entry(*sig).or_insert(0) += 1;
    }
    for (sig, count) in &multiplicity {
        if golden.type_of(sig).is_none() {
            return Err(ClassifyError::UnknownSignature {
                signature: *sig,
                count: *count,
            });
        }
    }
    for row in golden.rows() {
        if !multiplicity.contains_key(&row.signature) {
            return Err(ClassifyError::MissingType {
                t: row.t,
                signature: row.signature,
            });
        }
    }
    let types: Vec<u8> = sigs.iter().map(|s| golden.type_of(s).unwrap()).collect();
    let entries: Vec<AtlasEntry> = golden
        .rows()
        .iter()
        .map(|row| AtlasEntry {
            t: row.t,
            signature: row.signature,
            multiplicity: multiplicity[&row.signature],
            klein: 0,
            klein_reference: row.k,
        })
        .collect();
    Ok(Classification {
        types,
        signatures: sigs,
        entries,
    })
}

/// Fills the per-type counts of pentagrams lying on the Klein quadric and
/// returns (type, count) pairs for the realized types.
pub fn klein_census(
    classification: &mut Classification,
    pentagrams: &[Pentagram],
) -> Vec<(u8, u32)> {
    let quadric = KleinQuadric::new();
    for e in &mut classification.entries {
        e.klein = 0;
    }
    for (p, t) in pentagrams.iter().zip(&classification.types) {
        if quadric.contains_mask(p.points_mask()) {
            classification.entries[*t as usize - 1].klein += 1;
        }
    }
    classification
        .entries
        .iter()
        .filter(|e| e.klein > 0)
        .map(|e| (e.t, e.klein))
        .collect()
}

/// Index over context pairs for finding pentagrams that share two contexts.
pub struct PairIndex {
    buckets: HashMap<(u16, u16), Vec<u32>>,
}

impl PairIndex {
    pub fn build(pentagrams: &[Pentagram]) -> PairIndex {
        let mut buckets: HashMap<(u16, u16), Vec<u32>> = HashMap::new();
        for (n, p) in pentagrams.iter().enumerate() {
            let cs = p.context_indices();
            for i in 0..5 {
                for j in (i + 1)..5 {
                    buckets.entry((cs[i], cs[j])).or_default().push(n as u32);
                }
            }
        }
        PairIndex { buckets }
    }

    /// Pentagrams sharing exactly two contexts with `pentagrams[index]`,
    /// ascending.
    pub fn two_edge_neighbors(&self, index: usize, pentagrams: &[Pentagram]) -> Vec<u32> {
        let p = &pentagrams[index];
        let cs = p.context_indices();
        let mut candidates = BTreeSet::new();
        for i in 0..5 {
            for j in (i + 1)..5 {
                if let Some(bucket) = self.buckets.get(&(cs[i], cs[j])) {
                    candidates.extend(bucket.iter().copied());
                }
            }
        }
        candidates
            .into_iter()
            .filter(|&n| n as usize != index && p.shared_contexts(&pentagrams[n as usize]) == 2)
            .collect()
    }
}

/// Convenience form of [`PairIndex::two_edge_neighbors`] for a single query.
pub fn two_edge_neighbors(
    index: usize,
    pentagrams: &[Pentagram],
    pair_index: &PairIndex,
) -> Vec<u32> {
    pair_index.two_edge_neighbors(index, pentagrams)
}

/// Every (context sign, plane class) pair observed across the contexts of
/// the given pentagrams.
pub fn context_kind_census(
    pentagrams: &[Pentagram],
    classified: &ClassifiedContexts,
) -> BTreeSet<(Sign, PlaneClass)> {
    let mut seen = BTreeSet::new();
    for p in pentagrams {
        for idx in p.context_indices() {
            let profile = classified.profile(idx as usize);
            seen.insert((profile.sign, profile.plane_class));
        }
    }
    seen
}

/// Outcome of one structural property check.
#[derive(Debug, Clone)]
pub struct StructuralCheck {
    pub name: &'static str,
    pub passed: bool,
    /// Human-readable counterexamples, capped at a few.
    pub failures: Vec<String>,
}

impl StructuralCheck {
    fn from_failures(name: &'static str, failures: Vec<String>) -> StructuralCheck {
        StructuralCheck {
            name,
            passed: failures.is_empty(),
            failures,
        }
    }
}

const FAILURE_CAP: usize = 3;

fn push_failure(failures: &mut Vec<String>, total: &mut usize, message: String) {
    *total += 1;
    if failures.len() < FAILURE_CAP {
        failures.push(message);
    }
}

/// The structural property suite over the full enumeration: ten statements
/// about observable kinds, plane classes, and negative contexts, with their
/// known exceptional types.
pub fn structural_checks(
    pentagrams: &[Pentagram],
    catalog: &ContextCatalog,
    classification: &Classification,
) -> Vec<StructuralCheck> {
    let a_mask: u64 = PauliObservable::all()
        .filter(|o| o.kind() == ObservableKind::A)
        .fold(0, |m, o| m | o.bit());
    let b_count_per_context: Vec<u8> = catalog
        .contexts()
        .iter()
        .map(|c| {
            c.points()
                .iter()
                .filter(|p| p.kind() == ObservableKind::B)
                .count() as u8
        })
        .collect();

    let mut checks = Vec::new();
    let sigs = &classification.signatures;
    let types = &classification.types;

    // Every pentagram carries at least two kind-C observables, never eight.
    {
        let mut failures = Vec::new();
        let mut total = 0;
        for (n, sig) in sigs.iter().enumerate() {
            if sig.o_c < 2 || sig.o_c == 8 {
                push_failure(
                    &mut failures,
                    &mut total,
                    format!("pentagram {n} has o_c={}", sig.o_c),
                );
            }
        }
        checks.push(StructuralCheck::from_failures("type-c-floor-and-gap", failures));
    }

    // Kind-B counts are 0, 4, or 5, and no context carries exactly one B.
    {
        let mut failures = Vec::new();
        let mut total = 0;
        for (n, (p, sig)) in pentagrams.iter().zip(sigs).enumerate() {
            if !matches!(sig.o_b, 0 | 4 | 5) {
                push_failure(
                    &mut failures,
                    &mut total,
                    format!("pentagram {n} has o_b={}", sig.o_b),
                );
            }
            for idx in p.context_indices() {
                if b_count_per_context[idx as usize] == 1 {
                    push_failure(
                        &mut failures,
                        &mut total,
                        format!("pentagram {n}: context {idx} carries exactly one kind-B point"),
                    );
                }
            }
        }
        checks.push(StructuralCheck::from_failures("type-b-band", failures));
    }

    // Three kind-A observables lie in one shared context, except types 41/42.
    {
        let mut failures = Vec::new();
        let mut total = 0;
        for (n, (p, sig)) in pentagrams.iter().zip(sigs).enumerate() {
            if sig.o_a != 3 || matches!(types[n], 41 | 42) {
                continue;
            }
            let a_points = p.points_mask() & a_mask;
            let on_one_context = p
                .context_indices()
                .iter()
                .any(|idx| a_points & !catalog.get(*idx as usize).mask() == 0);
            if !on_one_context {
                push_failure(
                    &mut failures,
                    &mut total,
                    format!("pentagram {n} (type {}): three kind-A points share no context", types[n]),
                );
            }
        }
        checks.push(StructuralCheck::from_failures("three-a-share-a-context", failures));
    }

    // Never more than six kind-A observables.
    {
        let mut failures = Vec::new();
        let mut total = 0;
        for (n, sig) in sigs.iter().enumerate() {
            if sig.o_a > 6 {
                push_failure(
                    &mut failures,
                    &mut total,
                    format!("pentagram {n} has o_a={}", sig.o_a),
                );
            }
        }
        checks.push(StructuralCheck::from_failures("type-a-ceiling", failures));
    }

    // Classes b and c without class a forces a single negative context,
    // except type 12.
    {
        let mut failures = Vec::new();
        let mut total = 0;
        for (n, sig) in sigs.iter().enumerate() {
            if sig.f_b > 0 && sig.f_c > 0 && sig.f_a == 0 && types[n] != 12 && sig.c_neg != 1 {
                push_failure(
                    &mut failures,
                    &mut total,
                    format!("pentagram {n} (type {}) has c_neg={}", types[n], sig.c_neg),
                );
            }
        }
        checks.push(StructuralCheck::from_failures("b-and-c-without-a", failures));
    }

    // No kind-A observables means no class-c planes.
    {
        let mut failures = Vec::new();
        let mut total = 0;
        for (n, sig) in sigs.iter().enumerate() {
            if sig.o_a == 0 && sig.f_c != 0 {
                push_failure(
                    &mut failures,
                    &mut total,
                    format!("pentagram {n} has o_a=0 but f_c={}", sig.f_c),
                );
            }
        }
        checks.push(StructuralCheck::from_failures("no-a-no-c-planes", failures));
    }

    // All three positive classes present forces all three observable kinds,
    // except type 19.
    {
        let mut failures = Vec::new();
        let mut total = 0;
        for (n, sig) in sigs.iter().enumerate() {
            if sig.f_a > 0 && sig.f_b > 0 && sig.f_c > 0 && types[n] != 19 {
                if sig.o_a == 0 || sig.o_b == 0 || sig.o_c == 0 {
                    push_failure(
                        &mut failures,
                        &mut total,
                        format!(
                            "pentagram {n} (type {}) has kinds ({},{},{})",
                            types[n], sig.o_a, sig.o_b, sig.o_c
                        ),
                    );
                }
            }
        }
        checks.push(StructuralCheck::from_failures("all-positive-classes-all-kinds", failures));
    }

    // All five planes negative exactly for types 1 and 4; none negative
    // exactly for types 41 and 42.
    {
        let mut failures = Vec::new();
        let all_negative: BTreeSet<u8> = entry_types(classification, |e| e.signature.f_neg == 5);
        if all_negative != BTreeSet::from([1, 4]) {
            failures.push(format!("all-negative types {all_negative:?}, want {{1, 4}}"));
        }
        let none_negative: BTreeSet<u8> = entry_types(classification, |e| e.signature.f_neg == 0);
        if none_negative != BTreeSet::from([41, 42]) {
            failures.push(format!("all-positive types {none_negative:?}, want {{41, 42}}"));
        }
        checks.push(StructuralCheck::from_failures("extreme-plane-parities", failures));
    }

    // Positive planes exclusively of class c occurs exactly for types
    // 13, 27, and 45.
    {
        let mut failures = Vec::new();
        let c_only: BTreeSet<u8> = entry_types(classification, |e| {
            e.signature.f_a == 0 && e.signature.f_b == 0 && e.signature.f_c > 0
        });
        if c_only != BTreeSet::from([13, 27, 45]) {
            failures.push(format!("class-c-only types {c_only:?}, want {{13, 27, 45}}"));
        }
        checks.push(StructuralCheck::from_failures("class-c-only-types", failures));
    }

    // Equal nonzero representation of the three positive classes occurs
    // exactly for types 15 and 32.
    {
        let mut failures = Vec::new();
        let balanced: BTreeSet<u8> = entry_types(classification, |e| {
            e.signature.f_a == e.signature.f_b
                && e.signature.f_b == e.signature.f_c
                && e.signature.f_a != 0
        });
        if balanced != BTreeSet::from([15, 32]) {
            failures.push(format!("balanced types {balanced:?}, want {{15, 32}}"));
        }
        checks.push(StructuralCheck::from_failures("balanced-positive-classes", failures));
    }

    checks
}

fn entry_types(
    classification: &Classification,
    pred: impl Fn(&AtlasEntry) -> bool,
) -> BTreeSet<u8> {
    classification
        .entries
        .iter()
        .filter(|e| pred(e))
        .map(|e| e.t)
        .collect()
}
