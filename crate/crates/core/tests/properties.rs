//! Property tests: algebraic laws of the observable arithmetic and
//! roundtrip stability of the wire formats.

use std::sync::OnceLock;

use proptest::prelude::*;

use pentagram_core::enumerator::ContextCatalog;
use pentagram_core::pauli::{
    commutes, signed_product, symplectic_form, PauliObservable, Sign,
};
use pentagram_core::polar_space::enumerate_planes;
use pentagram_core::records::{ContextRecord, PentagramRecord, PlaneRecord};

fn catalog() -> &'static ContextCatalog {
    static CATALOG: OnceLock<ContextCatalog> = OnceLock::new();
    CATALOG.get_or_init(ContextCatalog::enumerate)
}

fn observable() -> impl Strategy<Value = PauliObservable> {
    (1u8..=63).prop_map(|id| PauliObservable::from_id(id).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn labels_roundtrip(o in observable()) {
        let label = o.to_string();
        prop_assert_eq!(label.parse::<PauliObservable>().unwrap(), o);
    }

    #[test]
    fn form_is_symmetric_and_alternating(a in observable(), b in observable()) {
        prop_assert_eq!(symplectic_form(a, b), symplectic_form(b, a));
        prop_assert_eq!(symplectic_form(a, a), 0);
        prop_assert_eq!(commutes(a, b), symplectic_form(a, b) == 0);
    }

    #[test]
    fn form_is_bilinear(a in observable(), b in observable(), c in observable()) {
        prop_assume!(b != c);
        let sum = b.gf2_sum(c).unwrap();
        prop_assert_eq!(
            symplectic_form(a, sum),
            symplectic_form(a, b) ^ symplectic_form(a, c)
        );
    }

    #[test]
    fn pair_products_square_away(a in observable(), b in observable()) {
        // (ab)(ba) is the identity with trivial phase for commuting pairs
        // and the double anticommutation sign i^2 squared away otherwise;
        // either way the vector part cancels.
        let forward = signed_product(&[a, b]);
        let backward = signed_product(&[b, a]);
        prop_assert_eq!(forward.vector(), backward.vector());
        let twist = if commutes(a, b) { 0 } else { 2 };
        prop_assert_eq!(
            forward.phase().exponent(),
            (backward.phase().exponent() + twist) % 4
        );
    }

    #[test]
    fn context_sign_is_order_free(index in 0usize..945, seed in any::<u64>()) {
        let context = catalog().get(index);
        let mut points = context.points();
        // Cheap deterministic shuffle from the seed.
        for i in (1..4usize).rev() {
            let j = (seed >> (i * 8)) as usize % (i + 1);
            points.swap(i, j);
        }
        let product = signed_product(&points);
        prop_assert!(product.is_identity());
        prop_assert!(product.phase().is_real());
        prop_assert_eq!(product.phase().sign().unwrap(), context.sign());
    }

    #[test]
    fn context_records_roundtrip(index in 0usize..945) {
        let record = ContextRecord::from_context(catalog().get(index));
        let json = serde_json::to_string(&record).unwrap();
        prop_assert_eq!(serde_json::from_str::<ContextRecord>(&json).unwrap(), record);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn plane_products_are_real_and_records_roundtrip(index in 0usize..135) {
        static PLANES: OnceLock<Vec<pentagram_core::polar_space::FanoPlane>> = OnceLock::new();
        let plane = &PLANES.get_or_init(enumerate_planes)[index];
        let product = signed_product(&plane.points());
        prop_assert!(product.is_identity());
        prop_assert_eq!(product.phase().sign().unwrap(), plane.sign());

        let record = PlaneRecord::from_plane(plane);
        let json = serde_json::to_string(&record).unwrap();
        prop_assert_eq!(serde_json::from_str::<PlaneRecord>(&json).unwrap(), record);
    }

    #[test]
    fn pentagram_records_roundtrip(sample in 0usize..12096) {
        static PENTAGRAMS: OnceLock<Vec<pentagram_core::enumerator::Pentagram>> = OnceLock::new();
        let pentagrams = PENTAGRAMS.get_or_init(|| {
            let graph = pentagram_core::enumerator::ContextGraph::build(catalog());
            pentagram_core::enumerator::enumerate_pentagrams(&graph).unwrap()
        });
        let record = PentagramRecord::from_pentagram(&pentagrams[sample], catalog());
        let json = serde_json::to_string(&record).unwrap();
        let back: PentagramRecord = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(back, record);
        prop_assert_eq!(back.to_pentagram(catalog()).unwrap(), pentagrams[sample]);
    }
}

#[test]
fn commuting_products_are_always_real() {
    // Exhaustive rather than sampled: every commuting pair, in both orders.
    for a in PauliObservable::all() {
        for b in PauliObservable::all() {
            if commutes(a, b) {
                assert!(signed_product(&[a, b]).phase().is_real());
            } else {
                assert!(!signed_product(&[a, b]).phase().is_real());
            }
        }
    }
}

#[test]
fn line_signs_flip_sign_consistently() {
    let mut negative = 0;
    for line in pentagram_core::polar_space::enumerate_lines() {
        let points = line.points();
        let product = signed_product(&points);
        assert!(product.is_identity());
        if product.phase().sign().unwrap() == Sign::Minus {
            negative += 1;
        }
    }
    assert_eq!(negative, 90);
}
