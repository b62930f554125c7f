//! Homology of the groupoid of a pseudo-free tuple as the homology of the cone
//! of `I - tau : H(G)^reg -> H(G)^{E^0}`, on bar chains of `G` at each vertex.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::abgroup::{cokernel, kernel_basis, FgAbelianGroup};
use crate::chain::{rational_cone, RationalComplex, Ring, Triplets};
use crate::error::{Error, Result};
use crate::matrix::IntMatrix;
use crate::scalar::Rational;

use super::hochschild::sigma_map;
use super::pseudofree::pseudo_freeness;
use super::{EpTuple, FiniteTuple, IntegerTuple};

/// Index of `(g_1, .., g_n)` among `n`-tuples over a group of order `q`.
fn tuple_index(q: usize, gs: &[usize]) -> usize {
    gs.iter().fold(0, |acc, &g| acc * q + g)
}

fn tuple_of(q: usize, n: usize, mut k: usize) -> Vec<usize> {
    let mut out = vec![0; n];
    for slot in out.iter_mut().rev() {
        *slot = k % q;
        k /= q;
    }
    out
}

/// `copies` copies of the bar complex of a group of order `q`, degrees `0..=window`.
fn bar_copies(t: &FiniteTuple, copies: usize, window: usize, ring: Ring) -> RationalComplex {
    let grp = &t.group;
    let q = grp.order();
    let ranks: Vec<usize> = (0..=window).map(|n| copies * q.pow(n as u32)).collect();
    let mut boundaries = Vec::with_capacity(window);
    for n in 1..=window {
        let (src, dst) = (q.pow(n as u32), q.pow(n as u32 - 1));
        let mut d = Triplets::new();
        for k in 0..src {
            let gs = tuple_of(q, n, k);
            let mut faces: Vec<(Vec<usize>, i64)> = vec![(gs[1..].to_vec(), 1)];
            for i in 0..n - 1 {
                let mut m = gs[..i].to_vec();
                m.push(grp.mul(gs[i], gs[i + 1]));
                m.extend_from_slice(&gs[i + 2..]);
                faces.push((m, if (i + 1) % 2 == 0 { 1 } else { -1 }));
            }
            faces.push((gs[..n - 1].to_vec(), if n % 2 == 0 { 1 } else { -1 }));
            for x in 0..copies {
                for (f, s) in &faces {
                    d.push((x * dst + tuple_index(q, f), x * src + k, Rational::from_integer(BigInt::from(*s))));
                }
            }
        }
        boundaries.push(d);
    }
    RationalComplex { ring, ranks, boundaries }
}

/// The chain map `tau` with its domain and target.
pub struct TauMap {
    pub domain: RationalComplex,
    pub target: RationalComplex,
    pub tau: Vec<Triplets>,
    pub inclusion: Vec<Triplets>,
}

/// `tau(g_1, .., g_n)_v = sum_{s(e) = v} (phi(g_1, g_2 .. g_n e), .., phi(g_n, e))_{r(e)}`.
/// Only trivial `c` is handled: otherwise `tau` does not commute with the
/// untwisted bar differential.
pub fn tau_map(t: &FiniteTuple, window: usize, ring: Ring) -> Result<TauMap> {
    if !t.has_trivial_c() {
        return Err(Error::invalid("tau on bar chains needs c = 1"));
    }
    let graph = &t.graph;
    let grp = &t.group;
    let q = grp.order();
    let reg = graph.regular();
    let nv = graph.vertex_count();
    let mut tau = Vec::with_capacity(window + 1);
    let mut inclusion = Vec::with_capacity(window + 1);
    for n in 0..=window {
        let size = q.pow(n as u32);
        let mut tn = Triplets::new();
        let mut inc = Triplets::new();
        for (i, &v) in reg.iter().enumerate() {
            for k in 0..size {
                let col = i * size + k;
                inc.push((v * size + k, col, Rational::one()));
                let gs = tuple_of(q, n, k);
                for e in graph.out_edges(v) {
                    let mut img = vec![0; n];
                    let mut cur = e;
                    for j in (0..n).rev() {
                        img[j] = t.phi(gs[j], cur);
                        cur = t.act(gs[j], cur);
                    }
                    tn.push((graph.r(e) * size + tuple_index(q, &img), col, Rational::one()));
                }
            }
        }
        tau.push(tn);
        inclusion.push(inc);
    }
    Ok(TauMap {
        domain: bar_copies(t, reg.len(), window, ring),
        target: bar_copies(t, nv, window, ring),
        tau,
        inclusion,
    })
}

fn collect(trip: &[(usize, usize, Rational)]) -> BTreeMap<(usize, usize), Rational> {
    let mut out: BTreeMap<(usize, usize), Rational> = BTreeMap::new();
    for (r, c, v) in trip {
        *out.entry((*r, *c)).or_insert_with(Rational::zero) += v;
    }
    out.retain(|_, v| !v.is_zero());
    out
}

/// Compares `tau` with `res . sigma_0 . j` degree by degree, where
/// `j (g_1, .., g_n) = ((g_1 .. g_n)^-1, g_1, .., g_n)` and `res` keeps the
/// Hochschild chains whose product is `1` and drops the first entry.
pub fn tau_factorization_check(t: &FiniteTuple, window: usize) -> Result<Vec<bool>> {
    let tm = tau_map(t, window, Ring::Q)?;
    let s = sigma_map(t, 0, window, Ring::Q)?;
    let grp = &t.group;
    let q = grp.order();
    let reg = t.graph.regular();
    let mut out = Vec::with_capacity(window + 1);
    for n in 0..=window {
        let size = q.pow(n as u32);
        let mut composite = Triplets::new();
        for (i, _) in reg.iter().enumerate() {
            for k in 0..size {
                let gs = tuple_of(q, n, k);
                let h = grp.inv(grp.product(gs.iter().copied()));
                let chain: Vec<usize> = std::iter::once(h).chain(gs.iter().copied()).map(|g| i * q + g).collect();
                let col = s.domain.levels[n].index_of(&chain).expect("j lands in the chain basis");
                for (row, c, val) in &s.sigma[n] {
                    if *c != col {
                        continue;
                    }
                    let img = s.target.levels[n].get(*row);
                    let u = img[0] / q;
                    let parts: Vec<usize> = img.iter().map(|a| a % q).collect();
                    if grp.product(parts.iter().copied()) == 0 {
                        composite.push((u * size + tuple_index(q, &parts[1..]), i * size + k, val.clone()));
                    }
                }
            }
        }
        out.push(collect(&composite) == collect(&tm.tau[n]));
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct EpHomology {
    pub ring: Ring,
    pub groups: Vec<FgAbelianGroup>,
    /// Which construction produced the groups.
    pub method: String,
}

/// `H_0 .. H_{window - 1}` of the groupoid of a pseudo-free tuple. Tuples that
/// are not pseudo-free are refused with a strongly fixed path.
pub fn ep_groupoid_homology(t: &EpTuple, window: usize, ring: Ring) -> Result<EpHomology> {
    if let Some(w) = pseudo_freeness(t).witness() {
        return Err(Error::refused("the tuple is not pseudo-free", w.to_string()));
    }
    match t {
        EpTuple::Finite(f) => {
            let tm = tau_map(f, window, ring)?;
            let diff: Vec<Triplets> = tm
                .inclusion
                .iter()
                .zip(&tm.tau)
                .map(|(i, s)| i.iter().cloned().chain(s.iter().map(|(r, c, v)| (*r, *c, -v.clone()))).collect())
                .collect();
            let cone = rational_cone(&tm.domain, &tm.target, &diff)?;
            Ok(EpHomology {
                ring,
                groups: cone.homology_all(),
                method: "cone of I - tau on bar chains of G at each vertex".into(),
            })
        }
        EpTuple::Integers(z) => integer_groupoid_homology(z, window, ring),
    }
}

/// Closed form for `G = Z` with `c = 1`, degrees `<= 1` only:
/// `H_0 = coker(I - A^t)` and `H_1 = coker(I - B^t) + ker(I - A^t)`, with
/// `B_{v,w}` the sum of the `phi`-exponents over `vE^1w`.
pub fn integer_groupoid_homology(t: &IntegerTuple, window: usize, ring: Ring) -> Result<EpHomology> {
    if !t.has_trivial_c() {
        return Err(Error::invalid("the closed form for G = Z needs c = 1"));
    }
    let graph = &t.graph;
    let reg = graph.regular();
    let i_a = graph.i_minus_at();
    let i_b = IntMatrix::from_triplets(
        graph.vertex_count(),
        reg.len(),
        reg.iter().enumerate().flat_map(|(i, &v)| {
            std::iter::once((v, i, BigInt::one()))
                .chain(graph.out_edges(v).into_iter().map(move |e| (graph.r(e), i, BigInt::from(-t.generator_phi(e)))))
        }),
    );
    let ker_rank = |m: &IntMatrix| kernel_basis(m).cols();
    let all = [cokernel(&i_a), cokernel(&i_b).direct_sum(&FgAbelianGroup::free(ker_rank(&i_a)))];
    let groups = all
        .into_iter()
        .take(window)
        .map(|g| if ring == Ring::Q { g.rationalize() } else { g })
        .collect();
    Ok(EpHomology {
        ring,
        groups,
        method: "closed form for G = Z: coker and ker of I - A^t and I - B^t".into(),
    })
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;
    use crate::graph::Graph;
    use crate::scalar::rat;

    fn shown(h: &EpHomology) -> Vec<String> {
        h.groups.iter().map(|g| g.display_over(h.ring)).collect()
    }

    #[test]
    fn trivial_group_gives_graph_homology() {
        // H_0 = BF(E), H_1 = ker(I - A^t)
        for (n, h0) in [(1, "Z"), (2, "0"), (3, "Z/2"), (4, "Z/3")] {
            let t = EpTuple::Finite(FiniteTuple::trivial(Graph::rose(n)));
            let h = ep_groupoid_homology(&t, 3, Ring::Z).unwrap();
            let h1 = if n == 1 { "Z" } else { "0" };
            assert_eq!(shown(&h), [h0, h1, "0"], "n = {n}");
        }
    }

    #[test]
    fn trivial_action_is_refused() {
        let t = EpTuple::Finite(z2_trivial(2));
        match ep_groupoid_homology(&t, 2, Ring::Z) {
            Err(Error::Refused { witness, .. }) => assert!(witness.contains("e1")),
            other => panic!("expected a refusal, got {other:?}"),
        }
    }

    #[test]
    fn swap_on_two_rose() {
        let h = ep_groupoid_homology(&EpTuple::Finite(z2_swap()), 3, Ring::Z).unwrap();
        // H_0 = coker(I - A^t) = 0 for the 2-rose
        assert_eq!(h.groups[0].to_string(), "0");
    }

    #[test]
    fn tau_factors_through_sigma() {
        for t in [z2_swap(), FiniteTuple::trivial(Graph::rose(2)), parallel(3)] {
            assert!(tau_factorization_check(&t, 2).unwrap().iter().all(|&b| b));
        }
    }

    #[test]
    fn integer_closed_form() {
        // A = [2], B = [3]: H_0 = coker(-1) = 0, H_1 = coker(-2) = Z/2
        let z = IntegerTuple::new(Graph::rose(2), vec![0, 1], vec![1, 2], vec![rat(1); 2]).unwrap();
        let h = ep_groupoid_homology(&EpTuple::Integers(z), 4, Ring::Z).unwrap();
        assert_eq!(shown(&h), ["0", "Z/2"]);
        // one loop, phi = x^2: H_0 = Z, H_1 = Z/(1-2) + Z = Z
        let k = IntegerTuple::new(Graph::rose(1), vec![0], vec![2], vec![rat(1)]).unwrap();
        let h = ep_groupoid_homology(&EpTuple::Integers(k), 3, Ring::Z).unwrap();
        assert_eq!(shown(&h), ["Z", "Z"]);
    }
}
