//! The maps `j_n : M_n -> M_{n+1}` on matrices over `k[G]` indexed by paths,
//! and the ideals `I(n)_v = ker(j_{n-1} .. j_0)` of `k[G]v`.
//!
//! Here `I(n)_v` is the kernel after `n` steps, so that it is described by
//! paths of length `n` (and shorter paths ending in sinks). `I(0)_v = 0`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::abgroup::kernel_basis;
use crate::graph::Path;
use crate::matrix::IntMatrix;
use crate::scalar::{common_denominator, Rational};
use crate::smith::rank;

use super::FiniteTuple;

/// `sum coef * eps_{alpha, beta} h`, keyed by `(alpha, beta, h)`.
pub type MatrixElem = BTreeMap<(Path, Path, usize), Rational>;

fn add(acc: &mut MatrixElem, key: (Path, Path, usize), v: Rational) {
    let slot = acc.entry(key.clone()).or_insert_with(Rational::zero);
    *slot += v;
    if slot.is_zero() {
        acc.remove(&key);
    }
}

fn initial(t: &FiniteTuple, v: usize, coeffs: &[Rational]) -> MatrixElem {
    let mut x = MatrixElem::new();
    for (g, a) in coeffs.iter().enumerate().take(t.group.order()) {
        if !a.is_zero() {
            add(&mut x, (Path::vertex(v), Path::vertex(v), g), a.clone());
        }
    }
    x
}

/// One step: `eps_{alpha, beta} g -> sum_{s(e) = r(alpha)} c(g, e) eps_{alpha g(e), beta e} phi(g, e)`,
/// and the identity on entries whose paths end in a sink.
fn step(t: &FiniteTuple, x: &MatrixElem) -> MatrixElem {
    let graph = &t.graph;
    let mut out = MatrixElem::new();
    for ((alpha, beta, g), a) in x {
        let w = graph.path_range(alpha);
        if graph.is_sink(w) {
            add(&mut out, (alpha.clone(), beta.clone(), *g), a.clone());
            continue;
        }
        for e in graph.out_edges(w) {
            let mut al = alpha.clone();
            al.edges.push(t.act(*g, e));
            let mut be = beta.clone();
            be.edges.push(e);
            add(&mut out, (al, be, t.phi(*g, e)), a * t.c(*g, e));
        }
    }
    out
}

/// `j_{n-1} .. j_0 (x)` for `x = sum_g coeffs[g] g` in `k[G]v`, one map at a time.
pub fn iv_iterated(t: &FiniteTuple, v: usize, n: usize, coeffs: &[Rational]) -> MatrixElem {
    (0..n).fold(initial(t, v, coeffs), |x, _| step(t, &x))
}

/// The same composite in closed form: the coefficient of `eps_{alpha, beta} h`
/// is `sum a_g c(g, beta)` over `g` with `g(beta) = alpha`, `phi(g, beta) = h`,
/// for `beta` of length `n` from `v`, or shorter and ending in a sink.
pub fn iv_closed_form(t: &FiniteTuple, v: usize, n: usize, coeffs: &[Rational]) -> MatrixElem {
    let graph = &t.graph;
    let mut out = MatrixElem::new();
    for j in 0..=n {
        for beta in graph.paths_from(v, j) {
            if j < n && !graph.is_sink(graph.path_range(&beta)) {
                continue;
            }
            for (g, a) in coeffs.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                let (alpha, h, c) = t.extend_to_path(g, &beta);
                add(&mut out, (alpha, beta.clone(), h), a * c);
            }
        }
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct IdealReport {
    pub vertex: String,
    pub steps: usize,
    /// Rank of `I(n)_v` (over Q its dimension; over Z it is free of this rank).
    pub rank: usize,
    /// A basis, each element written as `sum a_g g`.
    pub basis: Vec<String>,
}

/// `I(n)_v` as the kernel of the closed-form map `k[G] -> M_n`.
pub fn iv_kernel(t: &FiniteTuple, v: usize, n: usize) -> IdealReport {
    let ng = t.group.order();
    let columns: Vec<MatrixElem> = (0..ng)
        .map(|g| {
            let mut e = vec![Rational::zero(); ng];
            e[g] = Rational::from_integer(1.into());
            iv_closed_form(t, v, n, &e)
        })
        .collect();
    let mut rows: BTreeMap<&(Path, Path, usize), usize> = BTreeMap::new();
    for col in &columns {
        for key in col.keys() {
            let next = rows.len();
            rows.entry(key).or_insert(next);
        }
    }
    let scale = Rational::from_integer(common_denominator(columns.iter().flat_map(|c| c.values())));
    let m = IntMatrix::from_triplets(
        rows.len(),
        ng,
        columns
            .iter()
            .enumerate()
            .flat_map(|(g, col)| col.iter().map(move |(k, a)| (k, g, a)))
            .map(|(k, g, a)| (rows[k], g, (a * &scale).to_integer())),
    );
    let basis = kernel_basis(&m);
    debug_assert_eq!(basis.cols(), ng - rank(&m));
    // first nonzero coefficient positive
    let sign = |col: usize| -> BigInt {
        let lead = (0..ng).map(|g| basis.get(g, col)).find(|a| !a.is_zero());
        if lead.is_some_and(|a| a < BigInt::zero()) {
            -BigInt::one()
        } else {
            BigInt::one()
        }
    };
    let render = |col: usize| -> String {
        let mut out = String::new();
        let s = sign(col);
        for g in 0..ng {
            let a = basis.get(g, col) * &s;
            if a.is_zero() {
                continue;
            }
            let neg = a < BigInt::zero();
            match (out.is_empty(), neg) {
                (true, true) => out.push('-'),
                (true, false) => {}
                (false, true) => out.push_str(" - "),
                (false, false) => out.push_str(" + "),
            }
            if !a.magnitude().is_one() {
                out.push_str(&format!("{} ", a.magnitude()));
            }
            out.push_str(t.group.label(g));
        }
        out
    };
    IdealReport {
        vertex: t.graph.vertex_name(v).to_string(),
        steps: n,
        rank: basis.cols(),
        basis: (0..basis.cols()).map(render).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;
    use crate::scalar::rat;
    use proptest::prelude::*;

    /// Rank of the span of the permutation matrices of `S_d` acting on
    /// `k^d`: the trivial and standard representations, `1 + (d-1)^2`.
    fn permutation_span_rank(d: usize) -> usize {
        1 + (d - 1) * (d - 1)
    }

    #[test]
    fn parallel_edges_kernel_is_the_kernel_of_the_permutation_representation() {
        for d in 2..=4 {
            let t = parallel(d);
            let order: usize = (1..=d).product();
            let r = iv_kernel(&t, 0, 1);
            assert_eq!(r.rank, order - permutation_span_rank(d), "d = {d}");
            // no further growth: w is a sink
            assert_eq!(iv_kernel(&t, 0, 3).rank, r.rank);
        }
        assert_eq!(iv_kernel(&parallel(4), 0, 1).rank, 14);
    }

    #[test]
    fn sinks_have_zero_ideal() {
        let t = parallel(3);
        assert_eq!(iv_kernel(&t, 1, 2).rank, 0);
        assert_eq!(iv_kernel(&t, 0, 0).rank, 0);
    }

    #[test]
    fn trivial_action_on_rose_kills_g_minus_one() {
        // t strongly fixes every edge, so 1 - t lies in I(1)_v
        let t = z2_trivial(2);
        let r = iv_kernel(&t, 0, 1);
        assert_eq!(r.rank, 1);
        assert_eq!(r.basis[0].replace(' ', ""), "1-t");
    }

    proptest! {
        #[test]
        fn closed_form_matches_iteration(coeffs in proptest::collection::vec(-3i64..=3, 6), n in 0usize..4, which in 0usize..3) {
            let t = match which {
                0 => parallel(3),
                1 => z2_swap(),
                _ => z2_trivial(2),
            };
            let a: Vec<Rational> = coeffs.iter().take(t.group().order()).map(|&x| rat(x)).collect();
            prop_assert_eq!(iv_closed_form(&t, 0, n, &a), iv_iterated(&t, 0, n, &a));
        }
    }
}
