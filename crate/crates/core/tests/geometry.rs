//! Brute-force cross-checks of the canonical enumerations: the same sets
//! rebuilt by exhaustive scans with no generation shortcuts.

use std::collections::BTreeSet;

use pentagram_core::enumerator::ContextCatalog;
use pentagram_core::pauli::{commutes, PauliObservable};
use pentagram_core::polar_space::{enumerate_lines, enumerate_planes, extend_to_fano};

#[test]
fn contexts_match_brute_force_over_all_quadruples() {
    let all: Vec<PauliObservable> = PauliObservable::all().collect();
    let mut contexts = Vec::new();
    for i in 0..all.len() {
        for j in (i + 1)..all.len() {
            if !commutes(all[i], all[j]) {
                continue;
            }
            for k in (j + 1)..all.len() {
                if !commutes(all[i], all[k]) || !commutes(all[j], all[k]) {
                    continue;
                }
                for l in (k + 1)..all.len() {
                    if all[i].id() ^ all[j].id() ^ all[k].id() ^ all[l].id() != 0 {
                        continue;
                    }
                    if commutes(all[i], all[l]) && commutes(all[j], all[l]) && commutes(all[k], all[l])
                    {
                        contexts.push([all[i].id(), all[j].id(), all[k].id(), all[l].id()]);
                    }
                }
            }
        }
    }
    let catalog = ContextCatalog::enumerate();
    let canonical: Vec<[u8; 4]> = catalog.contexts().iter().map(|c| c.ids()).collect();
    assert_eq!(contexts.len(), 945);
    assert_eq!(contexts, canonical);
}

#[test]
fn lines_match_brute_force_over_all_pairs() {
    let all: Vec<PauliObservable> = PauliObservable::all().collect();
    let mut lines = BTreeSet::new();
    for i in 0..all.len() {
        for j in (i + 1)..all.len() {
            if commutes(all[i], all[j]) {
                let mut triple = [
                    all[i].id(),
                    all[j].id(),
                    all[i].id() ^ all[j].id(),
                ];
                triple.sort_unstable();
                lines.insert(triple);
            }
        }
    }
    let canonical: BTreeSet<[u8; 3]> = enumerate_lines()
        .iter()
        .map(|l| l.points().map(|p| p.id()))
        .collect();
    assert_eq!(lines.len(), 315);
    assert_eq!(lines, canonical);
}

#[test]
fn planes_match_brute_force_closure_over_commuting_triples() {
    let all: Vec<PauliObservable> = PauliObservable::all().collect();
    let mut planes = BTreeSet::new();
    for i in 0..all.len() {
        for j in (i + 1)..all.len() {
            if !commutes(all[i], all[j]) {
                continue;
            }
            for k in (j + 1)..all.len() {
                let (a, b, c) = (all[i].id(), all[j].id(), all[k].id());
                if c == a ^ b || !commutes(all[i], all[k]) || !commutes(all[j], all[k]) {
                    continue;
                }
                let mut points = [a, b, c, a ^ b, a ^ c, b ^ c, a ^ b ^ c];
                points.sort_unstable();
                planes.insert(points);
            }
        }
    }
    let canonical: BTreeSet<[u8; 7]> = enumerate_planes()
        .iter()
        .map(|p| p.points().map(|o| o.id()))
        .collect();
    // The generator-counting formula for the space gives (2+1)(4+1)(8+1).
    assert_eq!(planes.len(), 3 * 5 * 9);
    assert_eq!(planes, canonical);
}

#[test]
fn every_plane_carries_seven_contexts_and_extension_inverts_membership() {
    let catalog = ContextCatalog::enumerate();
    let planes = enumerate_planes();
    let mut covered = 0;
    for plane in &planes {
        let members: Vec<_> = catalog
            .contexts()
            .iter()
            .filter(|c| c.points().iter().all(|p| plane.contains(*p)))
            .collect();
        assert_eq!(members.len(), 7);
        covered += members.len();
        for context in members {
            assert_eq!(extend_to_fano(context).points(), plane.points());
        }
    }
    assert_eq!(covered, catalog.len());
    assert_eq!(planes.len() * 7, 945);
}
