//! Diagram emitters. The primary output is DOT (neato, pinned positions);
//! `svg` draws the same scene directly.
//!
//! Layout: the five contexts are the edges of a {5/2} star, each drawn as
//! three collinear segments through its four points (two star tips, two
//! inner crossings). Negative contexts use a heavy stroke. Around the star
//! sit five Fano-plane insets, one per context: the context's points form
//! the triangle corners and the center, the three pairwise sums sit on the
//! side midpoints and make up the line at infinity, drawn dashed in DOT
//! and as the classic circle in SVG. Negative plane lines are heavy too.

use std::f64::consts::PI;
use std::fmt::Write as _;

use pentagram_core::pauli::{ObservableKind, PauliObservable};
use pentagram_core::polar_space::{Context, FanoPlane};

pub struct Scene {
    pub title: String,
    pub panels: [ContextPanel; 5],
}

pub struct ContextPanel {
    pub context: Context,
    pub plane: FanoPlane,
}

const R_STAR: f64 = 200.0;
const INSET_DIST: f64 = 480.0;
const INSET_R: f64 = 110.0;
const HEAVY: f64 = 3.0;
const LIGHT: f64 = 1.0;

type Point = (f64, f64);

fn polar(radius: f64, degrees: f64) -> Point {
    let th = degrees * PI / 180.0;
    (radius * th.cos(), radius * th.sin())
}

/// Star tip `k`, one per context, top tip first.
fn tip(k: usize) -> Point {
    polar(R_STAR, 90.0 + 72.0 * k as f64)
}

/// Edge `k` of the {5/2} star runs from tip `k` to tip `k+2`.
fn edge(k: usize) -> (Point, Point) {
    (tip(k), tip((k + 2) % 5))
}

/// Crossing point of two segments, which the star guarantees exists.
fn crossing(a: (Point, Point), b: (Point, Point)) -> Point {
    let ((x1, y1), (x2, y2)) = a;
    let ((x3, y3), (x4, y4)) = b;
    let (dx1, dy1) = (x2 - x1, y2 - y1);
    let (dx2, dy2) = (x4 - x3, y4 - y3);
    let denom = dx1 * dy2 - dy1 * dx2;
    let t = ((x3 - x1) * dy2 - (y3 - y1) * dx2) / denom;
    (x1 + t * dx1, y1 + t * dy1)
}

/// Where context pair (i, j) meets: a shared tip for separations 2 and 3,
/// an inner crossing for separations 1 and 4.
fn meet_position(i: usize, j: usize) -> Point {
    match j - i {
        2 => tip(j),
        3 => tip(i),
        _ => crossing(edge(i), edge(j)),
    }
}

fn shared_point(a: &Context, b: &Context) -> PauliObservable {
    let shared = a.mask() & b.mask();
    debug_assert_eq!(shared.count_ones(), 1);
    PauliObservable::from_id(shared.trailing_zeros() as u8).unwrap()
}

fn kind_color(o: PauliObservable) -> &'static str {
    match o.kind() {
        ObservableKind::A => "#e06666",
        ObservableKind::B => "#78c679",
        ObservableKind::C => "#f6d32d",
    }
}

/// The ten observables with their star positions, ascending by id.
fn star_nodes(scene: &Scene) -> Vec<(PauliObservable, Point)> {
    let mut nodes = Vec::with_capacity(10);
    for i in 0..5 {
        for j in (i + 1)..5 {
            let o = shared_point(&scene.panels[i].context, &scene.panels[j].context);
            nodes.push((o, meet_position(i, j)));
        }
    }
    nodes.sort_by_key(|(o, _)| o.id());
    nodes
}

/// The four points of context `k` ordered along its star edge, as three
/// consecutive segments.
fn star_segments(scene: &Scene, k: usize) -> [(PauliObservable, Point, PauliObservable, Point); 3] {
    let (a, b) = edge(k);
    let dir = (b.0 - a.0, b.1 - a.1);
    let mut on_edge: Vec<(f64, PauliObservable, Point)> = (0..5)
        .filter(|&j| j != k)
        .map(|j| {
            let (i, j) = (k.min(j), k.max(j));
            let pos = meet_position(i, j);
            let o = shared_point(&scene.panels[i].context, &scene.panels[j].context);
            let t = (pos.0 - a.0) * dir.0 + (pos.1 - a.1) * dir.1;
            (t, o, pos)
        })
        .collect();
    on_edge.sort_by(|x, y| x.0.total_cmp(&y.0));
    [0, 1, 2].map(|s| {
        let (_, o1, p1) = on_edge[s];
        let (_, o2, p2) = on_edge[s + 1];
        (o1, p1, o2, p2)
    })
}

/// One drawable element of a Fano inset.
enum InsetItem {
    Node {
        point: PauliObservable,
        pos: Point,
        infinity: bool,
    },
    Segment {
        from: (PauliObservable, Point),
        to: (PauliObservable, Point),
        heavy: bool,
        dashed: bool,
    },
}

/// Lays out the Fano plane of panel `k` around its inset center: corners
/// and center carry the context, side midpoints carry the pairwise sums
/// (the line at infinity). Sides and medians are two segments each; the
/// infinity line is the midpoint triangle, dashed.
fn inset_items(panel: &ContextPanel, k: usize) -> Vec<InsetItem> {
    let center = polar(INSET_DIST, 90.0 + 72.0 * k as f64);
    let at = |p: Point| (center.0 + p.0, center.1 + p.1);
    let points = panel.context.points();
    let corner_pos = [90.0, 210.0, 330.0].map(|deg| at(polar(INSET_R, deg)));
    let midpoint = |a: Point, b: Point| ((a.0 + b.0) / 2.0, (a.1 + b.1) / 2.0);
    let sum = |a: usize, b: usize| points[a].gf2_sum(points[b]).unwrap();

    let corners: Vec<(PauliObservable, Point)> = (0..3)
        .map(|i| (points[i], corner_pos[i]))
        .collect();
    let hub = (points[3], center);
    // mids[m] lies opposite corner m: it is the sum of the other two corners.
    let mids: Vec<(PauliObservable, Point)> = [(1, 2), (0, 2), (0, 1)]
        .iter()
        .map(|&(a, b)| (sum(a, b), midpoint(corner_pos[a], corner_pos[b])))
        .collect();

    let negative = |a: PauliObservable, b: PauliObservable| {
        panel.plane.line_through(a, b).sign().is_negative()
    };

    let mut items = Vec::new();
    for &(p, pos) in corners.iter().chain([&hub]) {
        items.push(InsetItem::Node {
            point: p,
            pos,
            infinity: false,
        });
    }
    for &(p, pos) in &mids {
        items.push(InsetItem::Node {
            point: p,
            pos,
            infinity: true,
        });
    }
    // Sides: corner a — mid — corner b, where the mid opposite the third
    // corner lies between a and b.
    for (a, b, m) in [(0, 1, 2), (0, 2, 1), (1, 2, 0)] {
        let heavy = negative(corners[a].0, corners[b].0);
        items.push(InsetItem::Segment {
            from: corners[a],
            to: mids[m],
            heavy,
            dashed: false,
        });
        items.push(InsetItem::Segment {
            from: mids[m],
            to: corners[b],
            heavy,
            dashed: false,
        });
    }
    // Medians: corner — hub — opposite mid.
    for c in 0..3 {
        let heavy = negative(corners[c].0, hub.0);
        items.push(InsetItem::Segment {
            from: corners[c],
            to: hub,
            heavy,
            dashed: false,
        });
        items.push(InsetItem::Segment {
            from: hub,
            to: mids[c],
            heavy,
            dashed: false,
        });
    }
    // The line at infinity: the midpoint triangle.
    let heavy = negative(mids[0].0, mids[1].0);
    for (a, b) in [(0, 1), (1, 2), (2, 0)] {
        items.push(InsetItem::Segment {
            from: mids[a],
            to: mids[b],
            heavy,
            dashed: true,
        });
    }
    items
}

fn caption(panel: &ContextPanel, k: usize) -> (String, Point) {
    let center = polar(INSET_DIST, 90.0 + 72.0 * k as f64);
    let sign = if panel.context.sign().is_negative() {
        '-'
    } else {
        '+'
    };
    let infinity = panel
        .context
        .line_at_infinity()
        .map(|p| p.to_string())
        .join(" ");
    let text = format!(
        "context {}: sign {sign}, class {}, infinity {infinity}",
        k + 1,
        panel.plane.class().code()
    );
    (text, (center.0, center.1 - INSET_R * 1.5 - 20.0))
}

pub fn dot(scene: &Scene) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "graph pentagram {{");
    let _ = writeln!(out, "  layout=\"neato\";");
    let _ = writeln!(out, "  labelloc=\"t\";");
    let _ = writeln!(out, "  label=\"{}\";", scene.title);
    let _ = writeln!(
        out,
        "  node [shape=circle, style=filled, fontsize=10, fixedsize=true, width=0.5];"
    );
    for (o, (x, y)) in star_nodes(scene) {
        let _ = writeln!(
            out,
            "  s_{o} [pos=\"{x:.1},{y:.1}!\", fillcolor=\"{}\"];",
            kind_color(o)
        );
    }
    for k in 0..5 {
        let heavy = scene.panels[k].context.sign().is_negative();
        for (o1, _, o2, _) in star_segments(scene, k) {
            let _ = writeln!(
                out,
                "  s_{o1} -- s_{o2} [penwidth={}];",
                if heavy { HEAVY } else { LIGHT }
            );
        }
    }
    for (k, panel) in scene.panels.iter().enumerate() {
        for item in inset_items(panel, k) {
            match item {
                InsetItem::Node {
                    point,
                    pos: (x, y),
                    infinity,
                } => {
                    let peripheries = if infinity { 2 } else { 1 };
                    let _ = writeln!(
                        out,
                        "  f{k}_{point} [pos=\"{x:.1},{y:.1}!\", fillcolor=\"{}\", peripheries={peripheries}];",
                        kind_color(point)
                    );
                }
                InsetItem::Segment {
                    from,
                    to,
                    heavy,
                    dashed,
                } => {
                    let style = if dashed { ", style=dashed" } else { "" };
                    let _ = writeln!(
                        out,
                        "  f{k}_{} -- f{k}_{} [penwidth={}{style}];",
                        from.0,
                        to.0,
                        if heavy { HEAVY } else { LIGHT }
                    );
                }
            }
        }
        let (text, (x, y)) = caption(panel, k);
        let _ = writeln!(
            out,
            "  f{k}_caption [pos=\"{x:.1},{y:.1}!\", shape=plaintext, style=solid, fixedsize=false, fontsize=9, label=\"{text}\"];"
        );
    }
    let _ = writeln!(out, "}}");
    out
}

const SVG_SIZE: f64 = 1440.0;

fn svg_xy(p: Point) -> (f64, f64) {
    (SVG_SIZE / 2.0 + p.0, SVG_SIZE / 2.0 - p.1)
}

fn svg_line(out: &mut String, from: Point, to: Point, width: f64, dashed: bool) {
    let (x1, y1) = svg_xy(from);
    let (x2, y2) = svg_xy(to);
    let dash = if dashed {
        " stroke-dasharray=\"6 4\""
    } else {
        ""
    };
    let _ = writeln!(
        out,
        "  <line x1=\"{x1:.1}\" y1=\"{y1:.1}\" x2=\"{x2:.1}\" y2=\"{y2:.1}\" stroke=\"#333333\" stroke-width=\"{width}\"{dash}/>"
    );
}

fn svg_node(out: &mut String, o: PauliObservable, pos: Point, infinity: bool) {
    let (cx, cy) = svg_xy(pos);
    let _ = writeln!(
        out,
        "  <circle cx=\"{cx:.1}\" cy=\"{cy:.1}\" r=\"15\" fill=\"{}\" stroke=\"#333333\" stroke-width=\"1\"/>",
        kind_color(o)
    );
    if infinity {
        let _ = writeln!(
            out,
            "  <circle cx=\"{cx:.1}\" cy=\"{cy:.1}\" r=\"19\" fill=\"none\" stroke=\"#333333\" stroke-width=\"1\"/>"
        );
    }
    let _ = writeln!(
        out,
        "  <text x=\"{cx:.1}\" y=\"{:.1}\" text-anchor=\"middle\" font-size=\"10\">{o}</text>",
        cy + 3.5
    );
}

pub fn svg(scene: &Scene) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {SVG_SIZE} {SVG_SIZE}\" font-family=\"Helvetica, Arial, sans-serif\">"
    );
    let _ = writeln!(
        out,
        "  <text x=\"{:.1}\" y=\"36\" text-anchor=\"middle\" font-size=\"18\">{}</text>",
        SVG_SIZE / 2.0,
        scene.title
    );
    // Star edges under their nodes.
    for k in 0..5 {
        let width = if scene.panels[k].context.sign().is_negative() {
            4.0
        } else {
            1.5
        };
        for (_, p1, _, p2) in star_segments(scene, k) {
            svg_line(&mut out, p1, p2, width, false);
        }
    }
    for (k, panel) in scene.panels.iter().enumerate() {
        let items = inset_items(panel, k);
        // The line at infinity as the classic inscribed circle; the dashed
        // DOT triangle is only a stand-in for it.
        let center = polar(INSET_DIST, 90.0 + 72.0 * k as f64);
        let (cx, cy) = svg_xy(center);
        let infinity_heavy = items.iter().any(|i| {
            matches!(
                i,
                InsetItem::Segment {
                    dashed: true,
                    heavy: true,
                    ..
                }
            )
        });
        let _ = writeln!(
            out,
            "  <circle cx=\"{cx:.1}\" cy=\"{cy:.1}\" r=\"{:.1}\" fill=\"none\" stroke=\"#333333\" stroke-width=\"{}\"/>",
            INSET_R / 2.0,
            if infinity_heavy { 4.0 } else { 1.5 }
        );
        for item in &items {
            if let InsetItem::Segment {
                from,
                to,
                heavy,
                dashed: false,
            } = item
            {
                svg_line(&mut out, from.1, to.1, if *heavy { 4.0 } else { 1.5 }, false);
            }
        }
        for item in &items {
            if let InsetItem::Node {
                point,
                pos,
                infinity,
            } = item
            {
                svg_node(&mut out, *point, *pos, *infinity);
            }
        }
        let (text, pos) = caption(panel, k);
        let (tx, ty) = svg_xy(pos);
        let _ = writeln!(
            out,
            "  <text x=\"{tx:.1}\" y=\"{ty:.1}\" text-anchor=\"middle\" font-size=\"12\">{text}</text>"
        );
    }
    for (o, pos) in star_nodes(scene) {
        svg_node(&mut out, o, pos, false);
    }
    let _ = writeln!(out, "</svg>");
    out
}
