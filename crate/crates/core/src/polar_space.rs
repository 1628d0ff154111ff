//! Incidence geometry of W(5,2): totally isotropic lines, four-point
//! contexts, and Fano planes, each carrying an exact sign.
//!
//! Everything is kept in canonical form (point tuples sorted ascending by
//! id) so that enumeration order is reproducible.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::pauli::{commutes, signed_product, ObservableKind, PauliObservable, Sign};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeometryError {
    #[error("observables {0} and {1} do not commute")]
    NonCommuting(PauliObservable, PauliObservable),
    #[error("a line needs two distinct points, got {0} twice")]
    DegeneratePair(PauliObservable),
    #[error("duplicate point {0}")]
    DuplicatePoint(PauliObservable),
    #[error("the four points multiply to a non-scalar (GF(2) sum has id {0})")]
    ProductNotScalar(u8),
    #[error(
        "plane with {negative_lines} negative lines and kind census \
         ({census_a},{census_b},{census_c}) fits none of the four classes"
    )]
    UnclassifiablePlane {
        negative_lines: usize,
        census_a: usize,
        census_b: usize,
        census_c: usize,
    },
    #[error("the seven points are not closed under GF(2) sums")]
    NotClosed,
}

/// Sign of the ordered product of a pairwise-commuting point set. Such
/// products are always real; a non-real phase here is a bug.
fn product_sign(points: &[PauliObservable]) -> Sign {
    signed_product(points)
        .phase()
        .sign()
        .expect("pairwise-commuting products are real")
}

/// A totally isotropic line: three pairwise-commuting points summing to
/// zero, with the sign of their product.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct IsotropicLine {
    points: [PauliObservable; 3],
    sign: Sign,
}

impl IsotropicLine {
    pub fn points(&self) -> [PauliObservable; 3] {
        self.points
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn contains(&self, o: PauliObservable) -> bool {
        self.points.contains(&o)
    }
}

/// The line spanned by two distinct commuting points.
pub fn make_line(
    a: PauliObservable,
    b: PauliObservable,
) -> Result<IsotropicLine, GeometryError> {
    if a == b {
        return Err(GeometryError::DegeneratePair(a));
    }
    if !commutes(a, b) {
        return Err(GeometryError::NonCommuting(a, b));
    }
    let c = a.gf2_sum(b).expect("distinct points have a nonzero sum");
    let mut points = [a, b, c];
    points.sort();
    let sign = product_sign(&points);
    Ok(IsotropicLine { points, sign })
}

/// All 315 isotropic lines, sorted by their point tuples.
pub fn enumerate_lines() -> Vec<IsotropicLine> {
    let mut out = Vec::new();
    for a in PauliObservable::all() {
        for b in PauliObservable::all().filter(|b| *b > a && commutes(a, *b)) {
            // The third point is the XOR; taking only xor-greater pairs
            // visits each line exactly once, at its two smallest points.
            let c = a.gf2_sum(b).unwrap();
            if c > b {
                out.push(make_line(a, b).unwrap());
            }
        }
    }
    out
}

/// A measurement context: four distinct, pairwise-commuting observables
/// whose product is scalar, with the sign of that product.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Context {
    points: [PauliObservable; 4],
    sign: Sign,
}

impl Context {
    pub fn points(&self) -> [PauliObservable; 4] {
        self.points
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn ids(&self) -> [u8; 4] {
        self.points.map(|p| p.id())
    }

    /// Mask with the id-indexed bit set for each point.
    pub fn mask(&self) -> u64 {
        self.points.iter().fold(0, |m, p| m | p.bit())
    }

    pub fn contains(&self, o: PauliObservable) -> bool {
        self.points.contains(&o)
    }

    /// The unique line completing this context to its Fano plane: the three
    /// pairwise sums of the context's points.
    pub fn line_at_infinity(&self) -> [PauliObservable; 3] {
        let [p1, p2, p3, _] = self.points;
        let mut line = [
            p1.gf2_sum(p2).unwrap(),
            p1.gf2_sum(p3).unwrap(),
            p2.gf2_sum(p3).unwrap(),
        ];
        line.sort();
        line
    }
}

impl std::fmt::Display for Context {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let [a, b, c, d] = self.points;
        write!(f, "{a},{b},{c},{d}")
    }
}

/// Validates and canonicalizes a four-point context.
pub fn make_context(points: [PauliObservable; 4]) -> Result<Context, GeometryError> {
    let mut pts = points;
    pts.sort();
    for i in 0..4 {
        for j in (i + 1)..4 {
            if pts[i] == pts[j] {
                return Err(GeometryError::DuplicatePoint(pts[i]));
            }
        }
    }
    let xor = pts.iter().fold(0u8, |acc, p| acc ^ p.id());
    if xor != 0 {
        return Err(GeometryError::ProductNotScalar(xor));
    }
    for i in 0..4 {
        for j in (i + 1)..4 {
            if !commutes(pts[i], pts[j]) {
                return Err(GeometryError::NonCommuting(pts[i], pts[j]));
            }
        }
    }
    // Zero sum plus distinctness already rules out three collinear points:
    // a collinear triple would force the fourth point to be the identity.
    debug_assert!((0..4).all(|i| {
        (0..4).all(|j| {
            i == j || {
                let s = pts[i].gf2_sum(pts[j]).unwrap();
                !pts.contains(&s)
            }
        })
    }));
    let sign = product_sign(&pts);
    Ok(Context { points: pts, sign })
}

/// The four projective classes of a Fano plane.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PlaneClass {
    /// Sign -1; three negative lines through a common point.
    Negative,
    /// Sign +1; four negative lines in a Pasch configuration.
    PositiveA,
    /// Sign +1, no negative lines, kind census (1,3,3).
    PositiveB,
    /// Sign +1, no negative lines, kind census (3,3,1).
    PositiveC,
}

impl PlaneClass {
    pub const ALL: [PlaneClass; 4] = [
        PlaneClass::Negative,
        PlaneClass::PositiveA,
        PlaneClass::PositiveB,
        PlaneClass::PositiveC,
    ];

    /// Short code used in serialized records:
    /// "neg", "a", "b", or "c".
    pub fn code(self) -> &'static str {
        match self {
            PlaneClass::Negative => "neg",
            PlaneClass::PositiveA => "a",
            PlaneClass::PositiveB => "b",
            PlaneClass::PositiveC => "c",
        }
    }

    pub fn from_code(code: &str) -> Option<PlaneClass> {
        match code {
            "neg" => Some(PlaneClass::Negative),
            "a" => Some(PlaneClass::PositiveA),
            "b" => Some(PlaneClass::PositiveB),
            "c" => Some(PlaneClass::PositiveC),
            _ => None,
        }
    }
}

impl std::fmt::Display for PlaneClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.code())
    }
}

/// A maximal totally isotropic subspace: seven points, seven signed lines,
/// an overall sign, and a class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FanoPlane {
    points: [PauliObservable; 7],
    lines: [IsotropicLine; 7],
    sign: Sign,
    class: PlaneClass,
}

impl FanoPlane {
    /// Builds a plane from seven points, validating closure and isotropy.
    pub fn try_from_points(points: [PauliObservable; 7]) -> Result<FanoPlane, GeometryError> {
        let mut pts = points;
        pts.sort();
        for i in 0..7 {
            for j in (i + 1)..7 {
                if pts[i] == pts[j] {
                    return Err(GeometryError::DuplicatePoint(pts[i]));
                }
                if !commutes(pts[i], pts[j]) {
                    return Err(GeometryError::NonCommuting(pts[i], pts[j]));
                }
                let s = pts[i].gf2_sum(pts[j]).unwrap();
                if !pts.contains(&s) {
                    return Err(GeometryError::NotClosed);
                }
            }
        }
        let mut triples = BTreeSet::new();
        for i in 0..7 {
            for j in (i + 1)..7 {
                let s = pts[i].gf2_sum(pts[j]).unwrap();
                let mut t = [pts[i], pts[j], s];
                t.sort();
                triples.insert(t);
            }
        }
        debug_assert_eq!(triples.len(), 7);
        let mut lines = [IsotropicLine {
            points: [pts[0]; 3],
            sign: Sign::Plus,
        }; 7];
        for (slot, t) in lines.iter_mut().zip(triples) {
            *slot = IsotropicLine {
                points: t,
                sign: product_sign(&t),
            };
        }
        let sign = product_sign(&pts);
        let class = classify_plane(&pts, &lines)?;
        Ok(FanoPlane {
            points: pts,
            lines,
            sign,
            class,
        })
    }

    pub fn points(&self) -> [PauliObservable; 7] {
        self.points
    }

    pub fn lines(&self) -> &[IsotropicLine; 7] {
        &self.lines
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn class(&self) -> PlaneClass {
        self.class
    }

    pub fn contains(&self, o: PauliObservable) -> bool {
        self.points.contains(&o)
    }

    pub fn negative_lines(&self) -> impl Iterator<Item = &IsotropicLine> {
        self.lines.iter().filter(|l| l.sign().is_negative())
    }

    pub fn negative_line_count(&self) -> usize {
        self.negative_lines().count()
    }

    /// The line through two distinct points of the plane.
    pub fn line_through(&self, a: PauliObservable, b: PauliObservable) -> &IsotropicLine {
        self.lines
            .iter()
            .find(|l| l.contains(a) && l.contains(b))
            .expect("two plane points lie on a plane line")
    }

    /// Kind census (A, B, C) over the seven points.
    pub fn kind_census(&self) -> (usize, usize, usize) {
        let mut counts = (0, 0, 0);
        for p in &self.points {
            match p.kind() {
                ObservableKind::A => counts.0 += 1,
                ObservableKind::B => counts.1 += 1,
                ObservableKind::C => counts.2 += 1,
            }
        }
        counts
    }
}

/// Classifies a plane by its negative-line count, refined by the kind
/// census when no line is negative. The error is unreachable over W(5,2);
/// it exists so that nothing is silently misfiled if the input is not a
/// genuine plane of the space.
pub fn classify_plane(
    points: &[PauliObservable; 7],
    lines: &[IsotropicLine; 7],
) -> Result<PlaneClass, GeometryError> {
    let negative = lines.iter().filter(|l| l.sign().is_negative()).count();
    let mut census = (0usize, 0usize, 0usize);
    for p in points {
        match p.kind() {
            ObservableKind::A => census.0 += 1,
            ObservableKind::B => census.1 += 1,
            ObservableKind::C => census.2 += 1,
        }
    }
    let unclassifiable = GeometryError::UnclassifiablePlane {
        negative_lines: negative,
        census_a: census.0,
        census_b: census.1,
        census_c: census.2,
    };
    match negative {
        3 => Ok(PlaneClass::Negative),
        4 => Ok(PlaneClass::PositiveA),
        0 => match census {
            (1, 3, 3) => Ok(PlaneClass::PositiveB),
            (3, 3, 1) => Ok(PlaneClass::PositiveC),
            _ => Err(unclassifiable),
        },
        _ => Err(unclassifiable),
    }
}

/// The unique Fano plane containing a context: the context's four points
/// plus its line at infinity.
pub fn extend_to_fano(context: &Context) -> FanoPlane {
    let [p1, p2, p3, p4] = context.points();
    let inf = context.line_at_infinity();
    let points = [p1, p2, p3, p4, inf[0], inf[1], inf[2]];
    FanoPlane::try_from_points(points)
        .expect("a valid context always spans a classifiable plane")
}

/// All 135 Fano planes, sorted by their point tuples.
pub fn enumerate_planes() -> Vec<FanoPlane> {
    let mut seen: BTreeSet<[u8; 7]> = BTreeSet::new();
    let mut planes = Vec::new();
    for line in enumerate_lines() {
        let [p0, p1, p2] = line.points();
        for c in PauliObservable::all() {
            if line.contains(c) || !line.points().iter().all(|p| commutes(*p, c)) {
                continue;
            }
            let mut points = [
                p0,
                p1,
                p2,
                c,
                c.gf2_sum(p0).unwrap(),
                c.gf2_sum(p1).unwrap(),
                c.gf2_sum(p2).unwrap(),
            ];
            points.sort();
            if seen.insert(points.map(|p| p.id())) {
                planes.push(
                    FanoPlane::try_from_points(points)
                        .expect("the span of a line and a commuting point is a plane"),
                );
            }
        }
    }
    planes.sort_by_key(|p| p.points().map(|q| q.id()));
    planes
}

/// The Klein quadric: the 35 symmetric observables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KleinQuadric {
    mask: u64,
}

impl KleinQuadric {
    pub fn new() -> KleinQuadric {
        let mask = PauliObservable::all()
            .filter(|o| o.is_symmetric())
            .fold(0, |m, o| m | o.bit());
        KleinQuadric { mask }
    }

    pub fn contains(&self, o: PauliObservable) -> bool {
        self.mask & o.bit() != 0
    }

    /// Whether every point of an id-indexed mask lies on the quadric.
    pub fn contains_mask(&self, points_mask: u64) -> bool {
        points_mask & !self.mask == 0
    }

    pub fn points(&self) -> Vec<PauliObservable> {
        PauliObservable::all().filter(|o| self.contains(*o)).collect()
    }

    pub fn len(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

impl Default for KleinQuadric {
    fn default() -> KleinQuadric {
        KleinQuadric::new()
    }
}

/// Whether every point of the slice is symmetric.
pub fn on_quadric(points: &[PauliObservable]) -> bool {
    points.iter().all(|o| o.is_symmetric())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn o(label: &str) -> PauliObservable {
        label.parse().unwrap()
    }

    fn ctx(labels: [&str; 4]) -> Context {
        make_context(labels.map(o)).unwrap()
    }

    #[test]
    fn make_line_spans_and_signs() {
        let l = make_line(o("XII"), o("IXI")).unwrap();
        assert_eq!(l.points(), [o("IXI"), o("XII"), o("XXI")]);
        assert_eq!(l.sign(), Sign::Plus);

        let m = make_line(o("XXI"), o("YYI")).unwrap();
        assert!(m.contains(o("ZZI")));
        assert_eq!(m.sign(), Sign::Minus);
    }

    #[test]
    fn make_line_rejects_bad_pairs() {
        assert_eq!(
            make_line(o("XII"), o("ZII")),
            Err(GeometryError::NonCommuting(o("XII"), o("ZII")))
        );
        assert_eq!(
            make_line(o("XYZ"), o("XYZ")),
            Err(GeometryError::DegeneratePair(o("XYZ")))
        );
    }

    #[test]
    fn line_census_is_315_with_15_per_point() {
        let lines = enumerate_lines();
        assert_eq!(lines.len(), 315);
        for p in PauliObservable::all() {
            assert_eq!(lines.iter().filter(|l| l.contains(p)).count(), 15);
        }
        // Canonical order.
        let mut sorted = lines.clone();
        sorted.sort();
        assert_eq!(lines, sorted);
    }

    #[test]
    fn make_context_validates() {
        let c = ctx(["XII", "IXI", "IIX", "XXX"]);
        assert_eq!(c.sign(), Sign::Plus);
        assert_eq!(c.ids(), [o("IIX").id(), o("IXI").id(), o("XII").id(), o("XXX").id()]);

        let magic = ctx(["XXX", "XYY", "YXY", "YYX"]);
        assert_eq!(magic.sign(), Sign::Minus);

        assert_eq!(
            make_context([o("XII"), o("IXI"), o("IIX"), o("XXY")]),
            Err(GeometryError::ProductNotScalar(o("IIZ").id()))
        );
        assert_eq!(
            make_context([o("XII"), o("XII"), o("IIX"), o("XXX")]),
            Err(GeometryError::DuplicatePoint(o("XII")))
        );
        assert!(matches!(
            make_context([o("XII"), o("ZII"), o("IXI"), o("YXI")]),
            Err(GeometryError::NonCommuting(_, _))
        ));
    }

    #[test]
    fn context_line_at_infinity() {
        let c = ctx(["XXX", "XYY", "YXY", "YYX"]);
        assert_eq!(c.line_at_infinity(), [o("IZZ"), o("ZIZ"), o("ZZI")]);
    }

    #[test]
    fn extension_of_the_all_x_context() {
        let c = ctx(["XII", "IXI", "IIX", "XXX"]);
        let plane = extend_to_fano(&c);
        assert_eq!(plane.class(), PlaneClass::PositiveC);
        assert_eq!(plane.sign(), Sign::Plus);
        assert_eq!(plane.negative_line_count(), 0);
        assert_eq!(plane.kind_census(), (3, 3, 1));
        for label in ["XII", "IXI", "IIX", "XXI", "XIX", "IXX", "XXX"] {
            assert!(plane.contains(o(label)), "missing {label}");
        }
    }

    #[test]
    fn extension_of_the_ghz_magic_context() {
        let c = ctx(["XXX", "XYY", "YXY", "YYX"]);
        let plane = extend_to_fano(&c);
        assert_eq!(plane.class(), PlaneClass::Negative);
        assert_eq!(plane.sign(), Sign::Minus);

        let mut neg: Vec<[PauliObservable; 3]> =
            plane.negative_lines().map(|l| l.points()).collect();
        neg.sort();
        let mut expected = vec![
            [o("XXX"), o("XYY"), o("IZZ")],
            [o("XXX"), o("YXY"), o("ZIZ")],
            [o("XXX"), o("YYX"), o("ZZI")],
        ];
        for t in &mut expected {
            t.sort();
        }
        expected.sort();
        assert_eq!(neg, expected);

        // The three negative lines are concurrent at XXX.
        for l in plane.negative_lines() {
            assert!(l.contains(o("XXX")));
        }
    }

    #[test]
    fn plane_census_is_135_with_coherent_signs() {
        let planes = enumerate_planes();
        assert_eq!(planes.len(), 135);
        for plane in &planes {
            let neg = plane.negative_line_count();
            assert!(matches!(neg, 0 | 3 | 4), "negative-line count {neg}");
            // The plane sign is the product of its seven line signs.
            let line_sign = plane
                .lines()
                .iter()
                .fold(Sign::Plus, |acc, l| acc * l.sign());
            assert_eq!(plane.sign(), line_sign);
            assert_eq!(plane.sign().is_negative(), neg == 3);
            match plane.class() {
                PlaneClass::Negative => assert_eq!(neg, 3),
                PlaneClass::PositiveA => assert_eq!(neg, 4),
                PlaneClass::PositiveB => assert_eq!(plane.kind_census(), (1, 3, 3)),
                PlaneClass::PositiveC => assert_eq!(plane.kind_census(), (3, 3, 1)),
            }
        }
    }

    #[test]
    fn negative_planes_are_concurrent_and_positive_a_is_pasch() {
        for plane in enumerate_planes() {
            match plane.class() {
                PlaneClass::Negative => {
                    let common = plane
                        .points()
                        .iter()
                        .copied()
                        .filter(|p| plane.negative_lines().all(|l| l.contains(*p)))
                        .count();
                    assert_eq!(common, 1, "three negative lines share one point");
                }
                PlaneClass::PositiveA => {
                    let lines: Vec<_> = plane.negative_lines().collect();
                    let mut meets = BTreeSet::new();
                    for i in 0..4 {
                        for j in (i + 1)..4 {
                            let shared: Vec<_> = lines[i]
                                .points()
                                .iter()
                                .copied()
                                .filter(|p| lines[j].contains(*p))
                                .collect();
                            assert_eq!(shared.len(), 1);
                            meets.insert(shared[0]);
                        }
                    }
                    // Six distinct meet points: no three lines concurrent.
                    assert_eq!(meets.len(), 6, "Pasch configuration");
                }
                _ => {}
            }
        }
    }

    #[test]
    fn quadric_membership() {
        let q = KleinQuadric::new();
        assert_eq!(q.len(), 35);
        assert_eq!(q.points().len(), 35);
        assert!(q.contains(o("XXX")));
        assert!(q.contains(o("ZZI")));
        assert!(!q.contains(o("YII")));
        assert!(on_quadric(&[o("XXX"), o("XYY")]));
        assert!(!on_quadric(&[o("XXX"), o("YII")]));
    }

    #[test]
    fn try_from_points_rejects_junk() {
        let c = ctx(["XII", "IXI", "IIX", "XXX"]);
        let plane = extend_to_fano(&c);
        let mut points = plane.points();
        points[6] = o("ZZZ");
        assert!(FanoPlane::try_from_points(points).is_err());
    }
}
