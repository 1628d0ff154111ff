//! Exhaustive enumeration of contexts and Mermin pentagrams.
//!
//! A pentagram is five contexts that pairwise meet in exactly one point,
//! with all ten meet points distinct. The search enumerates 5-cliques of
//! the context meet-graph by ordered extension (each clique is reached once,
//! in ascending index order) while pruning geometrically, and only then
//! checks the parity of negative contexts: parity is never used as a search
//! filter, it is asserted on every surviving configuration.

#[cfg(feature = "parallel")]
use rayon::prelude::*;
use thiserror::Error;

use crate::pauli::{commutes, PauliObservable, Sign};
use crate::polar_space::{make_context, Context, KleinQuadric};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PentagramError {
    #[error("contexts {i} and {j} share {count} points; every pair must share exactly one")]
    BadIntersection { i: usize, j: usize, count: usize },
    #[error("meet point {point} belongs to more than one context pair")]
    RepeatedMeetPoint { point: PauliObservable },
    #[error("the configuration has an even number ({count}) of negative contexts")]
    EvenParity { count: usize },
    #[error(
        "exhaustive search produced a five-context configuration with an even number \
         of negative contexts (context indices {contexts:?})"
    )]
    EvenParityConfigurationFound { contexts: [u16; 5] },
}

/// The 945 contexts in canonical order (their sorted point tuples,
/// lexicographically ascending).
#[derive(Debug, Clone)]
pub struct ContextCatalog {
    contexts: Vec<Context>,
}

impl ContextCatalog {
    /// Enumerates every context once: for each commuting triple a < b < c
    /// the fourth point is forced as the XOR, and requiring it to be the
    /// largest visits each sorted quadruple exactly once.
    pub fn enumerate() -> ContextCatalog {
        let all: Vec<PauliObservable> = PauliObservable::all().collect();
        let mut contexts = Vec::new();
        for (i, &a) in all.iter().enumerate() {
            for (j, &b) in all.iter().enumerate().skip(i + 1) {
                if !commutes(a, b) {
                    continue;
                }
                for &c in all.iter().skip(j + 1) {
                    if !commutes(a, c) || !commutes(b, c) {
                        continue;
                    }
                    let d_id = a.id() ^ b.id() ^ c.id();
                    if d_id <= c.id() {
                        continue;
                    }
                    let d = PauliObservable::from_id(d_id).unwrap();
                    contexts.push(
                        make_context([a, b, c, d])
                            .expect("the forced fourth point completes a context"),
                    );
                }
            }
        }
        ContextCatalog { contexts }
    }

    pub fn contexts(&self) -> &[Context] {
        &self.contexts
    }

    pub fn len(&self) -> usize {
        self.contexts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.contexts.is_empty()
    }

    pub fn get(&self, index: usize) -> &Context {
        &self.contexts[index]
    }

    /// Looks up a context by its sorted point ids.
    pub fn index_of(&self, ids: [u8; 4]) -> Option<usize> {
        self.contexts.binary_search_by(|c| c.ids().cmp(&ids)).ok()
    }

    pub fn index_of_context(&self, context: &Context) -> Option<usize> {
        self.index_of(context.ids())
    }
}

const SET_WORDS: usize = 15; // 960 bits, enough for the 945 contexts

/// Fixed-capacity bitset over context indices.
#[derive(Clone, Copy)]
struct ContextSet {
    words: [u64; SET_WORDS],
}

impl ContextSet {
    fn empty() -> ContextSet {
        ContextSet {
            words: [0; SET_WORDS],
        }
    }

    fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    fn intersect(&self, rhs: &ContextSet) -> ContextSet {
        let mut out = *self;
        for (w, r) in out.words.iter_mut().zip(rhs.words) {
            *w &= r;
        }
        out
    }

    /// Removes every index <= bound.
    fn clear_through(&mut self, bound: usize) {
        let word = bound / 64;
        for w in &mut self.words[..word] {
            *w = 0;
        }
        let keep_from = bound % 64 + 1;
        if keep_from < 64 {
            self.words[word] &= !0u64 << keep_from;
        } else {
            self.words[word] = 0;
        }
    }

    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut bits = w;
            std::iter::from_fn(move || {
                if bits == 0 {
                    None
                } else {
                    let b = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    Some(wi * 64 + b)
                }
            })
        })
    }
}

/// Meet-graph over the context catalog: vertices are contexts, edges join
/// pairs sharing exactly one point.
pub struct ContextGraph {
    masks: Vec<u64>,
    signs: Vec<Sign>,
    adjacency: Vec<ContextSet>,
}

impl ContextGraph {
    pub fn build(catalog: &ContextCatalog) -> ContextGraph {
        let n = catalog.len();
        assert!(n <= SET_WORDS * 64, "context set capacity exceeded");
        let masks: Vec<u64> = catalog.contexts().iter().map(|c| c.mask()).collect();
        let signs: Vec<Sign> = catalog.contexts().iter().map(|c| c.sign()).collect();
        let mut adjacency = vec![ContextSet::empty(); n];
        for i in 0..n {
            for j in (i + 1)..n {
                if (masks[i] & masks[j]).count_ones() == 1 {
                    adjacency[i].insert(j);
                    adjacency[j].insert(i);
                }
            }
        }
        ContextGraph {
            masks,
            signs,
            adjacency,
        }
    }

    pub fn len(&self) -> usize {
        self.masks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.masks.is_empty()
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        i != j && (self.masks[i] & self.masks[j]).count_ones() == 1
    }

    /// Number of contexts meeting context `i` in exactly one point.
    pub fn degree(&self, i: usize) -> usize {
        self.adjacency[i].iter().count()
    }
}

/// Five contexts forming a Mermin pentagram, in ascending catalog order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Pentagram {
    contexts: [u16; 5],
    points_mask: u64,
    negatives: u8,
}

impl Pentagram {
    pub fn context_indices(&self) -> [u16; 5] {
        self.contexts
    }

    /// Mask of the ten points, id-indexed.
    pub fn points_mask(&self) -> u64 {
        self.points_mask
    }

    /// The ten points in ascending id order.
    pub fn point_ids(&self) -> [u8; 10] {
        let mut out = [0u8; 10];
        let mut mask = self.points_mask;
        for slot in &mut out {
            let id = mask.trailing_zeros() as u8;
            *slot = id;
            mask &= mask - 1;
        }
        debug_assert_eq!(mask, 0);
        out
    }

    pub fn points(&self) -> [PauliObservable; 10] {
        self.point_ids().map(|id| PauliObservable::from_id(id).unwrap())
    }

    pub fn negative_context_count(&self) -> u8 {
        self.negatives
    }

    /// How many contexts this pentagram shares with another.
    pub fn shared_contexts(&self, other: &Pentagram) -> usize {
        self.contexts
            .iter()
            .filter(|c| other.contexts.contains(c))
            .count()
    }
}

struct SearchState<'g> {
    graph: &'g ContextGraph,
    chosen: [u16; 5],
    out: Vec<Pentagram>,
}

impl SearchState<'_> {
    /// Ordered clique extension. `depth` contexts are chosen, pairwise
    /// adjacent, with `meets` holding their pairwise meet points (all
    /// distinct). Candidates are common neighbors above the last choice.
    fn descend(
        &mut self,
        depth: usize,
        candidates: &ContextSet,
        meets: u64,
    ) -> Result<(), PentagramError> {
        for c in candidates.iter() {
            let mut new_meets = 0u64;
            for k in 0..depth {
                // Adjacency guarantees each intersection is one point.
                new_meets |= self.graph.masks[c] & self.graph.masks[self.chosen[k] as usize];
            }
            // The new meet points must be distinct from each other and from
            // every meet point already used.
            if new_meets.count_ones() as usize != depth || new_meets & meets != 0 {
                continue;
            }
            self.chosen[depth] = c as u16;
            if depth == 4 {
                let negatives = self
                    .chosen
                    .iter()
                    .filter(|i| self.graph.signs[**i as usize].is_negative())
                    .count() as u8;
                if negatives % 2 == 0 {
                    return Err(PentagramError::EvenParityConfigurationFound {
                        contexts: self.chosen,
                    });
                }
                let points_mask = meets | new_meets;
                debug_assert_eq!(points_mask.count_ones(), 10);
                self.out.push(Pentagram {
                    contexts: self.chosen,
                    points_mask,
                    negatives,
                });
            } else {
                let mut next = candidates.intersect(&self.graph.adjacency[c]);
                next.clear_through(c);
                self.descend(depth + 1, &next, meets | new_meets)?;
            }
        }
        Ok(())
    }
}

fn search_from_root(graph: &ContextGraph, root: usize) -> Result<Vec<Pentagram>, PentagramError> {
    let mut state = SearchState {
        graph,
        chosen: [root as u16, 0, 0, 0, 0],
        out: Vec::new(),
    };
    let mut candidates = graph.adjacency[root];
    candidates.clear_through(root);
    state.descend(1, &candidates, 0)?;
    Ok(state.out)
}

fn finish(mut found: Vec<Pentagram>) -> Vec<Pentagram> {
    // The ordered search already yields canonical order; sort anyway so the
    // output contract does not depend on traversal details.
    found.sort_by_key(|p| p.contexts);
    found
}

/// Exhaustive pentagram enumeration, single-threaded.
pub fn enumerate_pentagrams_serial(
    graph: &ContextGraph,
) -> Result<Vec<Pentagram>, PentagramError> {
    let mut found = Vec::new();
    for root in 0..graph.len() {
        found.extend(search_from_root(graph, root)?);
    }
    Ok(finish(found))
}

/// Exhaustive pentagram enumeration. With the `parallel` feature the search
/// space is partitioned by the lowest-index context and run on the current
/// rayon pool; the merged result is identical to the serial one.
#[cfg(feature = "parallel")]
pub fn enumerate_pentagrams(graph: &ContextGraph) -> Result<Vec<Pentagram>, PentagramError> {
    let per_root: Result<Vec<Vec<Pentagram>>, PentagramError> = (0..graph.len())
        .into_par_iter()
        .map(|root| search_from_root(graph, root))
        .collect();
    Ok(finish(per_root?.into_iter().flatten().collect()))
}

/// Sequential fallback used when the `parallel` feature is disabled.
#[cfg(not(feature = "parallel"))]
pub fn enumerate_pentagrams(graph: &ContextGraph) -> Result<Vec<Pentagram>, PentagramError> {
    enumerate_pentagrams_serial(graph)
}

/// Validates an explicit five-context configuration and returns it in
/// canonical form.
pub fn validate_pentagram(
    catalog: &ContextCatalog,
    contexts: &[Context; 5],
) -> Result<Pentagram, PentagramError> {
    let masks: Vec<u64> = contexts.iter().map(|c| c.mask()).collect();
    let mut meets = 0u64;
    for i in 0..5 {
        for j in (i + 1)..5 {
            let shared = masks[i] & masks[j];
            let count = shared.count_ones() as usize;
            if count != 1 {
                return Err(PentagramError::BadIntersection { i, j, count });
            }
            if meets & shared != 0 {
                let id = shared.trailing_zeros() as u8;
                return Err(PentagramError::RepeatedMeetPoint {
                    point: PauliObservable::from_id(id).unwrap(),
                });
            }
            meets |= shared;
        }
    }
    let negatives = contexts.iter().filter(|c| c.sign().is_negative()).count();
    if negatives % 2 == 0 {
        return Err(PentagramError::EvenParity { count: negatives });
    }
    let mut indices = [0u16; 5];
    for (slot, c) in indices.iter_mut().zip(contexts) {
        *slot = catalog
            .index_of_context(c)
            .expect("every valid context is catalogued") as u16;
    }
    indices.sort_unstable();
    Ok(Pentagram {
        contexts: indices,
        points_mask: meets,
        negatives: negatives as u8,
    })
}

/// The pentagrams all ten of whose points lie on the Klein quadric.
pub fn pentagrams_on_quadric(pentagrams: &[Pentagram]) -> Vec<Pentagram> {
    let quadric = KleinQuadric::new();
    pentagrams
        .iter()
        .copied()
        .filter(|p| quadric.contains_mask(p.points_mask()))
        .collect()
}
