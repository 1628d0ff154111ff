//! The self-verification suite: every count, census, coherence rule,
//! structural property, and frozen spot value the engine is expected to
//! reproduce, each as one named pass/fail line.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use crate::classifier::{
    context_kind_census, signature, structural_checks, PairIndex, TypeSignature,
};
use crate::enumerator::validate_pentagram;
use crate::pauli::{
    signed_product, symplectic_form, ObservableKind, PauliObservable, Sign,
};
use crate::polar_space::{
    enumerate_lines, enumerate_planes, extend_to_fano, make_context, make_line, KleinQuadric,
    PlaneClass,
};
use crate::Pipeline;

/// Frozen derived censuses, produced by `examples/space_census.rs` once the
/// arithmetic had passed the dense-matrix cross-checks.
const LINE_CENSUS: (usize, usize) = (315, 90); // (total, negative)
const CONTEXT_CENSUS: (usize, usize) = (945, 324);
const PLANE_CENSUS: [(PlaneClass, usize); 4] = [
    (PlaneClass::Negative, 54),
    (PlaneClass::PositiveA, 27),
    (PlaneClass::PositiveB, 27),
    (PlaneClass::PositiveC, 27),
];

/// Frozen per-type pentagram totals and Klein-quadric totals, from the same
/// verified run (`golden/multiplicities.csv`).
const DERIVED_COUNTS_CSV: &str = include_str!("../golden/multiplicities.csv");

/// Rows where the reference table's K column disagrees with the recomputed
/// distribution, as (type, reference K, recomputed K). Both columns sum to
/// 336. The recomputed values are cross-derived at the string level with
/// dense-matrix signs in `tests/klein_cross_check.rs`; the verification
/// report states the disagreement rather than hiding either side.
const REFERENCE_K_DEVIATIONS: [(u8, u32, u32); 7] = [
    (25, 1, 0),
    (26, 4, 6),
    (27, 7, 6),
    (28, 19, 18),
    (33, 11, 12),
    (36, 11, 12),
    (37, 25, 24),
];

/// Types with no quadric pentagram, per the recomputed distribution.
const MISSING_ON_QUADRIC: [u8; 12] = [2, 3, 4, 6, 8, 9, 11, 14, 17, 21, 25, 31];

/// Types the reference K column itself marks as missing (its zero rows).
const REFERENCE_MISSING_ON_QUADRIC: [u8; 11] = [2, 3, 4, 6, 8, 9, 11, 14, 17, 21, 31];

/// One verification item.
#[derive(Debug, Clone)]
pub struct CheckLine {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

/// The whole report.
#[derive(Debug, Clone)]
pub struct Verification {
    checks: Vec<CheckLine>,
}

impl Verification {
    pub fn checks(&self) -> &[CheckLine] {
        &self.checks
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckLine> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for check in &self.checks {
            let status = if check.passed { "PASS" } else { "FAIL" };
            let _ = writeln!(out, "{status} {} — {}", check.name, check.detail);
        }
        let _ = writeln!(
            out,
            "{}: {} checks, {} failed",
            if self.passed() { "OK" } else { "FAILED" },
            self.checks.len(),
            self.failures().count()
        );
        out
    }
}

struct Report {
    checks: Vec<CheckLine>,
}

impl Report {
    fn push(&mut self, name: &'static str, passed: bool, detail: String) {
        self.checks.push(CheckLine {
            name,
            passed,
            detail,
        });
    }

    fn expect_eq<T: PartialEq + std::fmt::Debug>(
        &mut self,
        name: &'static str,
        got: T,
        want: T,
        what: &str,
    ) {
        let passed = got == want;
        let detail = if passed {
            format!("{what} = {want:?}")
        } else {
            format!("{what}: got {got:?}, want {want:?}")
        };
        self.push(name, passed, detail);
    }
}

fn parse_derived_counts() -> Vec<(u8, u32, u32)> {
    DERIVED_COUNTS_CSV
        .lines()
        .skip(1)
        .filter(|l| !l.trim().is_empty())
        .map(|l| {
            let mut fields = l.split(',').map(|f| f.trim().parse::<u32>().unwrap());
            let t = fields.next().unwrap() as u8;
            let n = fields.next().unwrap();
            let k = fields.next().unwrap();
            (t, n, k)
        })
        .collect()
}

/// Runs every check against an already-built pipeline.
pub fn run(pipeline: &Pipeline) -> Verification {
    let mut r = Report { checks: Vec::new() };

    observable_checks(&mut r);
    let lines = enumerate_lines();
    let planes = enumerate_planes();
    line_checks(&mut r, &lines);
    plane_checks(&mut r, &planes);
    context_checks(&mut r, pipeline, &planes);
    pentagram_checks(&mut r, pipeline);
    atlas_checks(&mut r, pipeline);
    klein_checks(&mut r, pipeline);
    structural_suite(&mut r, pipeline);
    neighbor_checks(&mut r, pipeline);
    spot_checks(&mut r, pipeline);

    Verification { checks: r.checks }
}

fn observable_checks(r: &mut Report) {
    r.expect_eq(
        "observable-count",
        PauliObservable::all().count(),
        63,
        "nontrivial observables",
    );
    let mut census = [0usize; 3];
    for o in PauliObservable::all() {
        census[match o.kind() {
            ObservableKind::A => 0,
            ObservableKind::B => 1,
            ObservableKind::C => 2,
        }] += 1;
    }
    r.expect_eq("kind-census", census, [9, 27, 27], "kind counts (A,B,C)");
    r.expect_eq(
        "symmetric-census",
        PauliObservable::all().filter(|o| o.is_symmetric()).count(),
        35,
        "symmetric observables",
    );
    r.expect_eq(
        "quadric-point-count",
        KleinQuadric::new().len(),
        35,
        "Klein quadric points",
    );
}

fn line_checks(r: &mut Report, lines: &[crate::polar_space::IsotropicLine]) {
    let negative = lines.iter().filter(|l| l.sign() == Sign::Minus).count();
    r.expect_eq(
        "line-census",
        (lines.len(), negative),
        LINE_CENSUS,
        "(lines, negative lines)",
    );
    let mut per_point = [0usize; 64];
    for line in lines {
        for p in line.points() {
            per_point[p.id() as usize] += 1;
        }
    }
    let uniform = PauliObservable::all().all(|o| per_point[o.id() as usize] == 15);
    r.push(
        "lines-per-point",
        uniform,
        if uniform {
            "every observable lies on 15 lines".into()
        } else {
            "some observable is not on exactly 15 lines".into()
        },
    );
}

fn plane_checks(r: &mut Report, planes: &[crate::polar_space::FanoPlane]) {
    let mut census: BTreeMap<PlaneClass, usize> = BTreeMap::new();
    for plane in planes {
        *census.entry(plane.class()).or_insert(0) += 1;
    }
    let expected: BTreeMap<PlaneClass, usize> = PLANE_CENSUS.into_iter().collect();
    r.expect_eq(
        "plane-census",
        planes.len(),
        expected.values().sum(),
        "Fano planes",
    );
    r.expect_eq(
        "plane-class-census",
        census,
        expected,
        "plane classes (neg,a,b,c)",
    );

    let mut coherent = true;
    let mut counts_ok = true;
    for plane in planes {
        let product = plane
            .lines()
            .iter()
            .fold(Sign::Plus, |acc, l| acc * l.sign());
        let negatives = plane.negative_line_count();
        coherent &= product == plane.sign() && (plane.sign() == Sign::Minus) == (negatives == 3);
        counts_ok &= matches!(negatives, 0 | 3 | 4);
    }
    r.push(
        "plane-sign-coherence",
        coherent,
        "plane sign = product of its 7 line signs; negative exactly at 3 negative lines".into(),
    );
    r.push(
        "plane-negative-line-counts",
        counts_ok,
        "negative lines per plane always 0, 3, or 4".into(),
    );

    let mut concurrence = true;
    let mut pasch = true;
    for plane in planes {
        let negative: Vec<_> = plane.negative_lines().collect();
        match plane.class() {
            PlaneClass::Negative => {
                let shared = plane
                    .points()
                    .iter()
                    .filter(|p| negative.iter().all(|l| l.contains(**p)))
                    .count();
                concurrence &= negative.len() == 3 && shared == 1;
            }
            PlaneClass::PositiveA => {
                let mut meets = BTreeSet::new();
                for i in 0..negative.len() {
                    for j in (i + 1)..negative.len() {
                        for p in negative[i].points() {
                            if negative[j].contains(p) {
                                meets.insert(p.id());
                            }
                        }
                    }
                }
                let common = plane
                    .points()
                    .iter()
                    .filter(|p| negative.iter().all(|l| l.contains(**p)))
                    .count();
                pasch &= negative.len() == 4 && meets.len() == 6 && common == 0;
            }
            _ => {}
        }
    }
    r.push(
        "negative-plane-concurrence",
        concurrence,
        "the 3 negative lines of every negative plane meet in one point".into(),
    );
    r.push(
        "positive-a-pasch",
        pasch,
        "the 4 negative lines of every class-a plane form a Pasch configuration".into(),
    );
}

fn context_checks(r: &mut Report, pipeline: &Pipeline, planes: &[crate::polar_space::FanoPlane]) {
    let catalog = pipeline.catalog();
    let negative = catalog
        .contexts()
        .iter()
        .filter(|c| c.sign() == Sign::Minus)
        .count();
    r.expect_eq(
        "context-census",
        (catalog.len(), negative),
        CONTEXT_CENSUS,
        "(contexts, negative contexts)",
    );

    // Each context lies in exactly one plane, each plane holds exactly 7
    // contexts, and the closed-form extension agrees with containment.
    let mut per_plane_ok = true;
    let mut containments = 0usize;
    for plane in planes {
        let members = catalog
            .contexts()
            .iter()
            .filter(|c| c.points().iter().all(|p| plane.contains(*p)))
            .count();
        per_plane_ok &= members == 7;
        containments += members;
    }
    r.push(
        "contexts-per-plane",
        per_plane_ok && containments == catalog.len(),
        format!(
            "every plane contains 7 contexts; 135 x 7 = {} covers the catalog once",
            containments
        ),
    );

    let mut extension_unique = true;
    for context in catalog.contexts() {
        let own = extend_to_fano(context);
        let holders = planes
            .iter()
            .filter(|plane| context.points().iter().all(|p| plane.contains(*p)))
            .count();
        extension_unique &=
            holders == 1 && planes.iter().any(|p| p.points() == own.points());
    }
    r.push(
        "extension-uniqueness",
        extension_unique,
        "each context extends to exactly one enumerated plane".into(),
    );

    let negative_planes: usize = planes
        .iter()
        .filter(|p| matches!(p.class(), PlaneClass::Negative | PlaneClass::PositiveA))
        .count();
    r.expect_eq(
        "negative-context-identity",
        negative,
        4 * negative_planes,
        "negative contexts = 4 x (negative + class-a planes)",
    );
}

fn pentagram_checks(r: &mut Report, pipeline: &Pipeline) {
    let pentagrams = pipeline.pentagrams();
    r.expect_eq("pentagram-count", pentagrams.len(), 12096, "pentagrams");

    let mut families = [0usize; 3];
    let mut parity_ok = true;
    for p in pentagrams {
        match p.negative_context_count() {
            5 => families[0] += 1,
            3 => families[1] += 1,
            1 => families[2] += 1,
            _ => parity_ok = false,
        }
    }
    r.expect_eq(
        "family-split",
        families,
        [108, 4104, 7884],
        "families by negative contexts (5,3,1)",
    );
    r.push(
        "parity",
        parity_ok,
        "negative-context counts are all odd".into(),
    );

    let degree_ok = pentagrams.iter().all(|p| {
        let mut counts = BTreeMap::new();
        for idx in p.context_indices() {
            for point in pipeline.catalog().get(idx as usize).points() {
                *counts.entry(point.id()).or_insert(0usize) += 1;
            }
        }
        counts.len() == 10 && counts.values().all(|&c| c == 2)
    });
    r.push(
        "degree-regularity",
        degree_ok,
        "each of the 10 points lies in exactly 2 of the 5 contexts".into(),
    );

    r.expect_eq(
        "quadric-pentagram-count",
        crate::enumerator::pentagrams_on_quadric(pentagrams).len(),
        336,
        "pentagrams on the Klein quadric",
    );
}

fn atlas_checks(r: &mut Report, pipeline: &Pipeline) {
    let classification = pipeline.classification();
    let golden = pipeline.golden();
    let distinct: BTreeSet<TypeSignature> = classification.signatures.iter().copied().collect();
    r.expect_eq(
        "signature-count",
        distinct.len(),
        45,
        "distinct type signatures",
    );

    let matched = golden
        .rows()
        .iter()
        .all(|row| distinct.contains(&row.signature))
        && distinct
            .iter()
            .all(|sig| golden.type_of(sig).is_some());
    r.push(
        "reference-table-match",
        matched,
        "computed signatures and the 45 reference rows coincide one-to-one".into(),
    );

    let total: u32 = classification.entries.iter().map(|e| e.multiplicity).sum();
    r.expect_eq(
        "multiplicity-total",
        total,
        12096,
        "sum of per-type multiplicities",
    );

    let derived = parse_derived_counts();
    let mut regression_ok = true;
    let mut diff = String::new();
    for ((t, n, k), entry) in derived.iter().zip(&classification.entries) {
        if *t != entry.t || *n != entry.multiplicity || *k != entry.klein {
            regression_ok = false;
            let _ = write!(
                diff,
                " type {}: computed (N={}, K={}), frozen (N={n}, K={k});",
                entry.t, entry.multiplicity, entry.klein
            );
        }
    }
    r.push(
        "derived-count-regression",
        regression_ok && derived.len() == 45,
        if regression_ok {
            "per-type multiplicities and quadric counts match the frozen derived data".into()
        } else {
            format!("drift against frozen derived data:{diff}")
        },
    );
}

fn klein_checks(r: &mut Report, pipeline: &Pipeline) {
    let classification = pipeline.classification();
    let computed_sum: u32 = classification.entries.iter().map(|e| e.klein).sum();
    let reference_sum: u32 = classification
        .entries
        .iter()
        .map(|e| e.klein_reference)
        .sum();
    r.expect_eq(
        "quadric-type-totals",
        (computed_sum, reference_sum),
        (336, 336),
        "(computed, reference) quadric totals",
    );

    let missing: Vec<u8> = classification.klein_missing_types();
    r.expect_eq(
        "quadric-missing-types",
        missing.clone(),
        MISSING_ON_QUADRIC.to_vec(),
        "types with no quadric pentagram",
    );
    r.expect_eq(
        "quadric-realized-types",
        classification.klein_realized_types().len(),
        45 - MISSING_ON_QUADRIC.len(),
        "types realized on the quadric",
    );

    let reference_missing: Vec<u8> = classification
        .entries
        .iter()
        .filter(|e| e.klein_reference == 0)
        .map(|e| e.t)
        .collect();
    r.expect_eq(
        "reference-k-zero-rows",
        reference_missing,
        REFERENCE_MISSING_ON_QUADRIC.to_vec(),
        "types the reference K column marks as missing",
    );

    // No missing type (under either column) has a class-c plane.
    let no_c = MISSING_ON_QUADRIC
        .iter()
        .chain(REFERENCE_MISSING_ON_QUADRIC.iter())
        .all(|t| pipeline.golden().row(*t).signature.f_c == 0);
    r.push(
        "missing-types-lack-class-c",
        no_c,
        "every type absent from the quadric has no class-c plane".into(),
    );

    // The comparison that found the reference-data defect: the K column of
    // the shipped table disagrees with the recomputed distribution in
    // exactly seven rows. Any other outcome — agreement included — means
    // either the geometry or the table file changed, and fails loudly.
    let mut deviations = Vec::new();
    for entry in &classification.entries {
        if entry.klein != entry.klein_reference {
            deviations.push((entry.t, entry.klein_reference, entry.klein));
        }
    }
    let expected = REFERENCE_K_DEVIATIONS.to_vec();
    let passed = deviations == expected;
    let mut detail = format!(
        "reference K column deviates from the matrix-verified recomputation in {} rows:",
        deviations.len()
    );
    for (t, reference, computed) in &deviations {
        let _ = write!(detail, " T{t} ref={reference} computed={computed};");
    }
    if !passed {
        let _ = write!(detail, " — UNEXPECTED SET, want {expected:?}");
    }
    r.push("reference-k-deviations", passed, detail);
}

fn structural_suite(r: &mut Report, pipeline: &Pipeline) {
    let checks = structural_checks(
        pipeline.pentagrams(),
        pipeline.catalog(),
        pipeline.classification(),
    );
    for check in checks {
        let detail = if check.passed {
            "holds over all 12096 pentagrams".to_string()
        } else {
            format!("counterexamples: {}", check.failures.join("; "))
        };
        r.checks.push(CheckLine {
            name: check.name,
            passed: check.passed,
            detail,
        });
    }

    let pairs = context_kind_census(pipeline.pentagrams(), pipeline.classified());
    let expected: BTreeSet<(Sign, PlaneClass)> = [
        (Sign::Plus, PlaneClass::Negative),
        (Sign::Plus, PlaneClass::PositiveA),
        (Sign::Plus, PlaneClass::PositiveB),
        (Sign::Plus, PlaneClass::PositiveC),
        (Sign::Minus, PlaneClass::Negative),
        (Sign::Minus, PlaneClass::PositiveA),
    ]
    .into_iter()
    .collect();
    r.expect_eq(
        "context-kind-census",
        pairs,
        expected,
        "observed (context sign, plane class) pairs",
    );

    // Showcase configuration: types 28 and 36 each contain pentagrams whose
    // one negative context sits on a class-a plane while the four positive
    // contexts realize all four plane classes. Not every member works — the
    // negative context may also fall on the negative plane — so this is an
    // existence statement per type.
    let mut witnesses = BTreeSet::new();
    for (p, t) in pipeline
        .pentagrams()
        .iter()
        .zip(&pipeline.classification().types)
    {
        if *t != 28 && *t != 36 {
            continue;
        }
        let mut positive_classes = BTreeSet::new();
        let mut negative_on_a = true;
        for idx in p.context_indices() {
            let profile = pipeline.classified().profile(idx as usize);
            if profile.sign == Sign::Minus {
                negative_on_a &= profile.plane_class == PlaneClass::PositiveA;
            } else {
                positive_classes.insert(profile.plane_class);
            }
        }
        if negative_on_a && positive_classes.len() == 4 {
            witnesses.insert(*t);
        }
    }
    r.expect_eq(
        "showcase-types-28-36",
        witnesses,
        BTreeSet::from([28, 36]),
        "types with a member whose negative context has a class-a plane and whose positive contexts cover all four classes",
    );
}

fn neighbor_checks(r: &mut Report, pipeline: &Pipeline) {
    let pentagrams = pipeline.pentagrams();
    let index = PairIndex::build(pentagrams);
    let mut bad = Vec::new();
    for n in 0..pentagrams.len() {
        let count = index.two_edge_neighbors(n, pentagrams).len();
        if count != 10 {
            bad.push((n, count));
            if bad.len() > 3 {
                break;
            }
        }
    }
    r.push(
        "two-edge-neighbors",
        bad.is_empty(),
        if bad.is_empty() {
            "every pentagram shares two contexts with exactly 10 others".into()
        } else {
            format!("violations (index, count): {bad:?}")
        },
    );
}

fn spot_checks(r: &mut Report, pipeline: &Pipeline) {
    let o = |label: &str| label.parse::<PauliObservable>().unwrap();
    let mut failures = Vec::new();
    let mut check = |name: &str, ok: bool| {
        if !ok {
            failures.push(name.to_string());
        }
    };

    check("form(XII,ZII)=1", symplectic_form(o("XII"), o("ZII")) == 1);
    check("form(XII,IZI)=0", symplectic_form(o("XII"), o("IZI")) == 0);
    check("form(XXX,XYY)=0", symplectic_form(o("XXX"), o("XYY")) == 0);

    let triple = signed_product(&[o("XXI"), o("YYI"), o("ZZI")]);
    check(
        "XXI*YYI*ZZI=-1",
        triple.is_identity() && triple.phase().sign() == Some(Sign::Minus),
    );
    let ghz = signed_product(&[o("XXX"), o("XYY"), o("YXY"), o("YYX")]);
    check(
        "XXX*XYY*YXY*YYX=-1",
        ghz.is_identity() && ghz.phase().sign() == Some(Sign::Minus),
    );

    let line = make_line(o("XXI"), o("YYI")).unwrap();
    check(
        "line(XXI,YYI)={XXI,YYI,ZZI} negative",
        line.contains(o("ZZI")) && line.sign() == Sign::Minus,
    );

    let plus = make_context([o("XII"), o("IXI"), o("IIX"), o("XXX")]).unwrap();
    check("context{XII,IXI,IIX,XXX} positive", plus.sign() == Sign::Plus);
    check(
        "its plane is class c",
        extend_to_fano(&plus).class() == PlaneClass::PositiveC,
    );

    let magic = make_context([o("XXX"), o("XYY"), o("YXY"), o("YYX")]).unwrap();
    check("magic context negative", magic.sign() == Sign::Minus);
    check(
        "magic infinity line {IZZ,ZIZ,ZZI}",
        magic.line_at_infinity() == [o("IZZ"), o("ZIZ"), o("ZZI")],
    );
    let magic_plane = extend_to_fano(&magic);
    check(
        "magic plane negative class",
        magic_plane.class() == PlaneClass::Negative && magic_plane.sign() == Sign::Minus,
    );

    let ghz_contexts = [
        ["XII", "IXI", "IIX", "XXX"],
        ["XII", "IYI", "IIY", "XYY"],
        ["YII", "IXI", "IIY", "YXY"],
        ["YII", "IYI", "IIX", "YYX"],
        ["XXX", "XYY", "YXY", "YYX"],
    ]
    .map(|labels| make_context(labels.map(|l| o(l))).unwrap());
    match validate_pentagram(pipeline.catalog(), &ghz_contexts) {
        Ok(p) => {
            let sig = signature(&p, pipeline.classified());
            check(
                "ghz signature (1,6,0,4,1,0,0,4)",
                sig == TypeSignature {
                    c_neg: 1,
                    o_a: 6,
                    o_b: 0,
                    o_c: 4,
                    f_neg: 1,
                    f_a: 0,
                    f_b: 0,
                    f_c: 4,
                },
            );
            check("ghz type 45", pipeline.golden().type_of(&sig) == Some(45));
            check(
                "ghz off the quadric",
                !crate::polar_space::on_quadric(&p.points()),
            );
        }
        Err(e) => check(&format!("ghz pentagram validates ({e})"), false),
    }

    r.push(
        "frozen-spot-values",
        failures.is_empty(),
        if failures.is_empty() {
            "all reference spot values reproduced".into()
        } else {
            format!("failed: {}", failures.join(", "))
        },
    );
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_report_passes_and_names_are_unique() {
        let pipeline = Pipeline::build().unwrap();
        let report = run(&pipeline);
        let names: BTreeSet<&str> = report.checks().iter().map(|c| c.name).collect();
        assert_eq!(names.len(), report.checks().len(), "duplicate check names");
        let text = report.to_text();
        assert!(
            report.passed(),
            "verification failures:\n{}",
            report
                .failures()
                .map(|c| format!("{} — {}", c.name, c.detail))
                .collect::<Vec<_>>()
                .join("\n")
        );
        assert!(text.contains("reference-k-deviations"));
        assert!(text.contains("T25 ref=1 computed=0"));
    }
}
