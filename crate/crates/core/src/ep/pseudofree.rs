//! Pseudo-freeness: no `g != 1` fixes a path `gamma` of positive length with
//! `phi(g, gamma) = 1`.

use std::collections::VecDeque;

use serde::Serialize;

use crate::graph::Path;

use super::{power_label, EpTuple, FiniteTuple, IntegerTuple};

/// A group element strongly fixing a path.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StronglyFixed {
    pub element: String,
    pub path: String,
    pub length: usize,
}

impl std::fmt::Display for StronglyFixed {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} strongly fixes the path {}", self.element, self.path)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PseudoFreeness {
    PseudoFree,
    NotPseudoFree(StronglyFixed),
}

impl PseudoFreeness {
    pub fn is_pseudo_free(&self) -> bool {
        matches!(self, PseudoFreeness::PseudoFree)
    }

    pub fn witness(&self) -> Option<&StronglyFixed> {
        match self {
            PseudoFreeness::PseudoFree => None,
            PseudoFreeness::NotPseudoFree(w) => Some(w),
        }
    }
}

/// Exact decision, with a shortest witness when one exists.
pub fn pseudo_freeness(t: &EpTuple) -> PseudoFreeness {
    let found = match t {
        EpTuple::Finite(f) => finite_search(f),
        EpTuple::Integers(z) => integer_witness(z),
    };
    found.map_or(PseudoFreeness::PseudoFree, PseudoFreeness::NotPseudoFree)
}

/// Breadth-first search over states `(g, v)`: a step along `e` from `s(e) = v`
/// is allowed when `g(e) = e` and leads to `(phi(g, e), r(e))`. A strongly
/// fixed path is a walk from some `g != 1` that reaches the identity.
fn finite_search(t: &FiniteTuple) -> Option<StronglyFixed> {
    let (ng, nv) = (t.group.order(), t.graph.vertex_count());
    let id = |g: usize, v: usize| g * nv + v;
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; ng * nv];
    let mut seen = vec![false; ng * nv];
    let mut queue = VecDeque::new();
    for g in 1..ng {
        for v in 0..nv {
            seen[id(g, v)] = true;
            queue.push_back((g, v));
        }
    }
    while let Some((g, v)) = queue.pop_front() {
        for e in t.graph.out_edges(v) {
            if t.act(g, e) != e {
                continue;
            }
            let (h, w) = (t.phi(g, e), t.graph.r(e));
            if h == 0 {
                // walk back to the starting state
                let mut edges = vec![e];
                let mut state = (g, v);
                while let Some((prev, edge)) = parent[id(state.0, state.1)] {
                    edges.push(edge);
                    state = (prev / nv, prev % nv);
                }
                edges.reverse();
                let path = Path { start: state.1, edges };
                return Some(StronglyFixed {
                    element: t.group.label(state.0).to_string(),
                    length: path.len(),
                    path: t.graph.show_path(&path),
                });
            }
            if !seen[id(h, w)] {
                seen[id(h, w)] = true;
                parent[id(h, w)] = Some((id(g, v), e));
                queue.push_back((h, w));
            }
        }
    }
    None
}

/// `x^n` fixes `e` iff the orbit length `p` of `e` divides `n`, and then
/// `phi(x^n, e) = (n / p) S` with `S` the sum of the `phi`-exponents over the
/// orbit. A walk from `n != 0` stays nonzero unless it uses an edge with
/// `S = 0`, and such an edge is strongly fixed by `x^p` on its own.
fn integer_witness(t: &IntegerTuple) -> Option<StronglyFixed> {
    for e in 0..t.graph.edge_count() {
        let mut p = 1i64;
        while t.act(p, e) != e {
            p += 1;
        }
        let (_, s, _) = t.on_edge(p, e);
        if s == 0 {
            return Some(StronglyFixed { element: power_label(p), path: t.graph.edge(e).name.clone(), length: 1 });
        }
    }
    None
}

/// Checks every path of length `1..=max_len` against every `g != 1` (for
/// `G = Z`, against `x^n` with `0 < |n| <= |E^1|`, which contains every
/// shortest witness).
pub fn brute_force_strongly_fixed(t: &EpTuple, max_len: usize) -> Option<StronglyFixed> {
    let graph = t.graph();
    for len in 1..=max_len {
        for v in 0..graph.vertex_count() {
            for gamma in graph.paths_from(v, len) {
                let hit = match t {
                    EpTuple::Finite(f) => (1..f.group.order()).find_map(|g| {
                        let (img, h, _) = f.extend_to_path(g, &gamma);
                        (img == gamma && h == 0).then(|| f.group.label(g).to_string())
                    }),
                    EpTuple::Integers(z) => {
                        let bound = graph.edge_count() as i64;
                        (-bound..=bound).filter(|&n| n != 0).find_map(|n| {
                            let (img, k, _) = z.extend_to_path(n, &gamma);
                            (img == gamma && k == 0).then(|| power_label(n))
                        })
                    }
                };
                if let Some(element) = hit {
                    return Some(StronglyFixed { element, path: graph.show_path(&gamma), length: len });
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;
    use crate::graph::Graph;
    use crate::scalar::rat;

    #[test]
    fn trivial_z2_action_is_refuted_by_an_edge() {
        let t = EpTuple::Finite(z2_trivial(2));
        let d = pseudo_freeness(&t);
        let w = d.witness().unwrap();
        assert_eq!((w.element.as_str(), w.path.as_str(), w.length), ("t", "e1", 1));
        assert_eq!(brute_force_strongly_fixed(&t, 6).unwrap().path, "e1");
    }

    #[test]
    fn swap_is_pseudo_free() {
        let t = EpTuple::Finite(z2_swap());
        assert!(pseudo_freeness(&t).is_pseudo_free());
        assert!(brute_force_strongly_fixed(&t, 6).is_none());
    }

    #[test]
    fn trivial_group_is_pseudo_free() {
        assert!(pseudo_freeness(&EpTuple::Finite(FiniteTuple::trivial(Graph::rose(3)))).is_pseudo_free());
    }

    #[test]
    fn parallel_edges_are_not_pseudo_free() {
        // a transposition fixes the third edge with phi = 1
        let t = EpTuple::Finite(parallel(3));
        let w = pseudo_freeness(&t);
        assert!(!w.is_pseudo_free());
        assert_eq!(w.witness().unwrap().length, 1);
    }

    #[test]
    fn integer_criterion() {
        let katsura = IntegerTuple::new(Graph::rose(1), vec![0], vec![2], vec![rat(1)]).unwrap();
        assert!(pseudo_freeness(&EpTuple::Integers(katsura.clone())).is_pseudo_free());
        assert!(brute_force_strongly_fixed(&EpTuple::Integers(katsura), 6).is_none());
        // x swaps two loops with exponents 1 and -1: x^2 fixes e1 with phi = x^0
        let z = IntegerTuple::new(Graph::rose(2), vec![1, 0], vec![1, -1], vec![rat(1); 2]).unwrap();
        let w = pseudo_freeness(&EpTuple::Integers(z.clone())).witness().cloned().unwrap();
        assert_eq!((w.element.as_str(), w.path.as_str()), ("x^2", "e1"));
        assert!(brute_force_strongly_fixed(&EpTuple::Integers(z), 6).is_some());
    }
}
