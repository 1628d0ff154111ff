//! Prints every derived census of the space: line and context sign totals,
//! the plane-class distribution, per-type pentagram multiplicities, Klein
//! counts, and the observed (context sign, plane class) pairs. The numbers
//! frozen as golden regression data were produced by this binary.

use std::collections::BTreeMap;

use pentagram_core::classifier::{
    build_atlas, klein_census, signature, ClassifiedContexts, GoldenTable,
};
use pentagram_core::enumerator::{enumerate_pentagrams, ContextCatalog, ContextGraph};
use pentagram_core::pauli::{ObservableKind, PauliObservable, Sign};
use pentagram_core::polar_space::{enumerate_lines, enumerate_planes, PlaneClass};

fn main() {
    let lines = enumerate_lines();
    let negative_lines = lines.iter().filter(|l| l.sign() == Sign::Minus).count();
    println!("lines: total={} negative={}", lines.len(), negative_lines);

    let planes = enumerate_planes();
    let mut plane_census: BTreeMap<PlaneClass, usize> = BTreeMap::new();
    for plane in &planes {
        *plane_census.entry(plane.class()).or_insert(0) += 1;
    }
    print!("planes: total={}", planes.len());
    for (class, count) in &plane_census {
        print!(" {}={count}", class.code());
    }
    println!();

    let catalog = ContextCatalog::enumerate();
    let negative_contexts = catalog
        .contexts()
        .iter()
        .filter(|c| c.sign() == Sign::Minus)
        .count();
    println!(
        "contexts: total={} negative={}",
        catalog.len(),
        negative_contexts
    );

    let graph = ContextGraph::build(&catalog);
    let pentagrams = enumerate_pentagrams(&graph).expect("enumeration succeeds");
    println!("pentagrams: total={}", pentagrams.len());

    let classified = ClassifiedContexts::build(&catalog);
    let golden = GoldenTable::embedded();
    let mut classification =
        build_atlas(&pentagrams, &classified, &golden).expect("signatures all match the table");
    klein_census(&mut classification, &pentagrams);

    println!("type,multiplicity,klein");
    for entry in &classification.entries {
        println!("{},{},{}", entry.t, entry.multiplicity, entry.klein);
    }

    let pairs = pentagram_core::classifier::context_kind_census(&pentagrams, &classified);
    for (sign, class) in &pairs {
        println!("context-kind pair: sign={sign} plane={}", class.code());
    }

    // Where do the three kind-A points of an o_a = 3 pentagram sit? Counted
    // per type to pin down which types place them on one shared context.
    let a_mask: u64 = PauliObservable::all()
        .filter(|o| o.kind() == ObservableKind::A)
        .fold(0, |m, o| m | o.bit());
    let mut collinear: BTreeMap<u8, (u32, u32)> = BTreeMap::new();
    for p in &pentagrams {
        let sig = signature(p, &classified);
        if sig.o_a != 3 {
            continue;
        }
        let t = golden.type_of(&sig).unwrap();
        let shared = p
            .context_indices()
            .iter()
            .any(|i| p.points_mask() & a_mask & !catalog.get(*i as usize).mask() == 0);
        let slot = collinear.entry(t).or_insert((0, 0));
        if shared {
            slot.0 += 1;
        } else {
            slot.1 += 1;
        }
    }
    for (t, (on_context, off_context)) in &collinear {
        println!("three-a type {t}: shared-context={on_context} scattered={off_context}");
    }

    // Kind-B occupancy per pentagram context, to confirm counts of exactly
    // one never occur.
    let mut b_profile: BTreeMap<u8, u64> = BTreeMap::new();
    for p in &pentagrams {
        for i in p.context_indices() {
            let b = catalog
                .get(i as usize)
                .points()
                .iter()
                .filter(|o| o.kind() == ObservableKind::B)
                .count() as u8;
            *b_profile.entry(b).or_insert(0) += 1;
        }
    }
    for (b, count) in &b_profile {
        println!("contexts with {b} kind-B points: {count}");
    }
}
