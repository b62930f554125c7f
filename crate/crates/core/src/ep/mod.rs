//! Exel-Pardo tuples `(G, E, phi_c)`: a group acting on the edges of a finite
//! graph (trivially on vertices), a restriction cocycle `phi : G x E^1 -> G`
//! and a unit-valued cocycle `c`.
//!
//! Finite groups are given by tables; the infinite cyclic group is given by
//! the data of its generator `x`.

mod hochschild;
mod homology;
mod ideal;
mod ktheory;
mod pseudofree;

use std::collections::{BTreeMap, VecDeque};

use num_traits::{One, Zero};
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, GraphSpec, Path};
use crate::group::{FiniteGroup, GroupSpec};
use crate::scalar::{is_unit_integer, JsonRational, Rational};

pub use hochschild::{graded_hochschild, sigma_map, EpAlgebraData, GradedHochschild, SigmaMap};
pub use homology::{
    ep_groupoid_homology, integer_groupoid_homology, tau_factorization_check, tau_map, EpHomology, TauMap,
};
pub use ideal::{iv_closed_form, iv_iterated, iv_kernel, IdealReport, MatrixElem};
pub use ktheory::{k0, k1_pieces, k_matrices, kh_sequence_z, K1Pieces, KhLevel, KMatrices, UnitsPresentation};
pub use pseudofree::{brute_force_strongly_fixed, pseudo_freeness, PseudoFreeness, StronglyFixed};

/// A tuple over a finite group. Tables are indexed `[g][e]`.
#[derive(Clone, Debug)]
pub struct FiniteTuple {
    group: FiniteGroup,
    graph: Graph,
    action: Vec<Vec<usize>>,
    phi: Vec<Vec<usize>>,
    c: Vec<Vec<Rational>>,
}

/// A tuple over the infinite cyclic group, determined by `x(e)`, the exponent
/// `k` with `phi(x, e) = x^k`, and `c(x, e)`.
#[derive(Clone, Debug)]
pub struct IntegerTuple {
    graph: Graph,
    action: Vec<usize>,
    phi: Vec<i64>,
    c: Vec<Rational>,
}

#[derive(Clone, Debug)]
pub enum EpTuple {
    Finite(FiniteTuple),
    Integers(IntegerTuple),
}

fn check_edge_permutation(graph: &Graph, perm: &[usize], who: &str) -> Result<()> {
    let n = graph.edge_count();
    let mut seen = vec![false; n];
    for (e, &f) in perm.iter().enumerate() {
        if f >= n || seen[f] {
            return Err(Error::invalid(format!("{who} does not permute the edges")));
        }
        seen[f] = true;
        if graph.s(e) != graph.s(f) || graph.r(e) != graph.r(f) {
            return Err(Error::invalid(format!(
                "{who} sends {} to {}, which has other endpoints; the action on vertices must be trivial",
                graph.edge(e).name,
                graph.edge(f).name
            )));
        }
    }
    Ok(())
}

impl FiniteTuple {
    /// Checks that `g -> action[g]` is an action by graph automorphisms fixing
    /// every vertex, and the cocycle laws
    /// `phi(gh, e) = phi(g, h(e)) phi(h, e)`, `c(gh, e) = c(g, h(e)) c(h, e)`.
    pub fn new(
        group: FiniteGroup,
        graph: Graph,
        action: Vec<Vec<usize>>,
        phi: Vec<Vec<usize>>,
        c: Vec<Vec<Rational>>,
    ) -> Result<Self> {
        let (ng, ne) = (group.order(), graph.edge_count());
        let shaped = |rows: usize, cols: &dyn Fn(usize) -> usize| rows == ng && (0..ng).all(|g| cols(g) == ne);
        if !shaped(action.len(), &|g| action[g].len())
            || !shaped(phi.len(), &|g| phi[g].len())
            || !shaped(c.len(), &|g| c[g].len())
        {
            return Err(Error::DimensionMismatch("tables must be |G| x |E^1|".into()));
        }
        if phi.iter().flatten().any(|&h| h >= ng) {
            return Err(Error::invalid("phi takes a value outside the group"));
        }
        let t = FiniteTuple { group, graph, action, phi, c };
        t.validate()?;
        Ok(t)
    }

    fn validate(&self) -> Result<()> {
        let g = &self.group;
        for a in 0..g.order() {
            check_edge_permutation(&self.graph, &self.action[a], g.label(a))?;
            for e in 0..self.graph.edge_count() {
                if self.c[a][e].is_zero() {
                    return Err(Error::Cocycle(format!("c({}, {}) is zero", g.label(a), self.edge_name(e))));
                }
            }
        }
        for a in 0..g.order() {
            for b in 0..g.order() {
                let ab = g.mul(a, b);
                for e in 0..self.graph.edge_count() {
                    let be = self.action[b][e];
                    let witness = || format!("({}, {}, {})", g.label(a), g.label(b), self.edge_name(e));
                    if self.action[ab][e] != self.action[a][be] {
                        return Err(Error::invalid(format!("(gh)(e) = g(h(e)) fails at {}", witness())));
                    }
                    if self.phi[ab][e] != g.mul(self.phi[a][be], self.phi[b][e]) {
                        return Err(Error::Cocycle(format!("phi(gh, e) = phi(g, h(e)) phi(h, e) fails at {}", witness())));
                    }
                    if self.c[ab][e] != &self.c[a][be] * &self.c[b][e] {
                        return Err(Error::Cocycle(format!("c(gh, e) = c(g, h(e)) c(h, e) fails at {}", witness())));
                    }
                }
            }
        }
        Ok(())
    }

    /// The trivial group acting on `graph`.
    pub fn trivial(graph: Graph) -> Self {
        let ne = graph.edge_count();
        FiniteTuple {
            group: FiniteGroup::trivial(),
            action: vec![(0..ne).collect()],
            phi: vec![vec![0; ne]],
            c: vec![vec![Rational::one(); ne]],
            graph,
        }
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn act(&self, g: usize, e: usize) -> usize {
        self.action[g][e]
    }

    pub fn phi(&self, g: usize, e: usize) -> usize {
        self.phi[g][e]
    }

    pub fn c(&self, g: usize, e: usize) -> &Rational {
        &self.c[g][e]
    }

    pub fn edge_name(&self, e: usize) -> &str {
        &self.graph.edge(e).name
    }

    pub fn has_trivial_c(&self) -> bool {
        self.c.iter().flatten().all(One::is_one)
    }

    /// Whether every value of `c` is `1` or `-1`, so that chains stay integral.
    pub fn has_signed_c(&self) -> bool {
        self.c.iter().flatten().all(is_unit_integer)
    }

    /// `(g(alpha), phi(g, alpha), c(g, alpha))`, extending edge by edge:
    /// `g(e beta) = g(e) phi(g, e)(beta)`, `phi(g, e beta) = phi(phi(g, e), beta)`
    /// and `c(g, e beta) = c(g, e) c(phi(g, e), beta)`.
    pub fn extend_to_path(&self, g: usize, alpha: &Path) -> (Path, usize, Rational) {
        let mut cur = g;
        let mut scalar = Rational::one();
        let mut edges = Vec::with_capacity(alpha.len());
        for &e in &alpha.edges {
            edges.push(self.action[cur][e]);
            scalar *= &self.c[cur][e];
            cur = self.phi[cur][e];
        }
        (Path { start: alpha.start, edges }, cur, scalar)
    }
}

impl IntegerTuple {
    pub fn new(graph: Graph, action: Vec<usize>, phi: Vec<i64>, c: Vec<Rational>) -> Result<Self> {
        let ne = graph.edge_count();
        if action.len() != ne || phi.len() != ne || c.len() != ne {
            return Err(Error::DimensionMismatch("generator tables must have one entry per edge".into()));
        }
        check_edge_permutation(&graph, &action, "x")?;
        if let Some(e) = c.iter().position(Zero::is_zero) {
            return Err(Error::Cocycle(format!("c(x, {}) is zero", graph.edge(e).name)));
        }
        Ok(IntegerTuple { graph, action, phi, c })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn generator_action(&self, e: usize) -> usize {
        self.action[e]
    }

    pub fn generator_phi(&self, e: usize) -> i64 {
        self.phi[e]
    }

    pub fn generator_c(&self, e: usize) -> &Rational {
        &self.c[e]
    }

    fn inverse_action(&self, e: usize) -> usize {
        self.action.iter().position(|&f| f == e).expect("action is a permutation")
    }

    /// `x^n(e)`.
    pub fn act(&self, n: i64, e: usize) -> usize {
        let mut f = e;
        for _ in 0..n.unsigned_abs() {
            f = if n > 0 { self.action[f] } else { self.inverse_action(f) };
        }
        f
    }

    /// `(x^n(e), k, c)` with `phi(x^n, e) = x^k`, from the cocycle laws:
    /// `phi(x^n, e) = sum_{0 <= i < n} k(x^i e)` for `n > 0`, and
    /// `phi(x^-n, e) = -phi(x^n, x^-n e)`.
    pub fn on_edge(&self, n: i64, e: usize) -> (usize, i64, Rational) {
        let mut f = e;
        let (mut k, mut c) = (0i64, Rational::one());
        if n >= 0 {
            for _ in 0..n {
                k += self.phi[f];
                c *= &self.c[f];
                f = self.action[f];
            }
        } else {
            for _ in 0..n.unsigned_abs() {
                f = self.inverse_action(f);
                k -= self.phi[f];
                c /= &self.c[f];
            }
        }
        (f, k, c)
    }

    pub fn extend_to_path(&self, n: i64, alpha: &Path) -> (Path, i64, Rational) {
        let mut cur = n;
        let mut scalar = Rational::one();
        let mut edges = Vec::with_capacity(alpha.len());
        for &e in &alpha.edges {
            let (f, k, c) = self.on_edge(cur, e);
            edges.push(f);
            scalar *= c;
            cur = k;
        }
        (Path { start: alpha.start, edges }, cur, scalar)
    }

    pub fn has_trivial_c(&self) -> bool {
        self.c.iter().all(One::is_one)
    }
}

/// Label of `x^n`.
pub fn power_label(n: i64) -> String {
    match n {
        0 => "1".into(),
        1 => "x".into(),
        n => format!("x^{n}"),
    }
}

impl EpTuple {
    pub fn graph(&self) -> &Graph {
        match self {
            EpTuple::Finite(t) => &t.graph,
            EpTuple::Integers(t) => &t.graph,
        }
    }

    pub fn as_finite(&self) -> Result<&FiniteTuple> {
        match self {
            EpTuple::Finite(t) => Ok(t),
            EpTuple::Integers(_) => Err(Error::invalid("this computation needs a finite group")),
        }
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let spec: EpTupleSpec = serde_json::from_str(s).map_err(|e| Error::invalid(e.to_string()))?;
        spec.build()
    }

    /// One line describing the group and the nontrivial generator data.
    pub fn describe(&self) -> String {
        match self {
            EpTuple::Finite(t) => format!(
                "group of order {} on a graph with {} vertices and {} edges",
                t.group.order(),
                t.graph.vertex_count(),
                t.graph.edge_count()
            ),
            EpTuple::Integers(t) => format!(
                "Z on a graph with {} vertices and {} edges",
                t.graph.vertex_count(),
                t.graph.edge_count()
            ),
        }
    }
}

/// `"Z"` or a finite group description.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum EpGroupSpec {
    Named(String),
    Finite(GroupSpec),
}

/// `phi` values: a group element label, or an exponent of `x` when `G = Z`.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum PhiValue {
    Power(i64),
    Element(String),
}

/// Data of one generator. Unlisted edges are fixed, with `phi = 1` and `c = 1`.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorSpec {
    #[serde(default)]
    pub action: BTreeMap<String, String>,
    #[serde(default)]
    pub phi: BTreeMap<String, PhiValue>,
    #[serde(default)]
    pub c: BTreeMap<String, JsonRational>,
}

/// `{"graph": .., "group": .., "generators": {label: {action, phi, c}}}`.
/// For a finite group the listed elements must generate it; the tables of
/// the other elements follow from the cocycle laws and are then checked.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EpTupleSpec {
    pub graph: GraphSpec,
    pub group: EpGroupSpec,
    #[serde(default)]
    pub generators: BTreeMap<String, GeneratorSpec>,
}

struct GenData {
    action: Vec<usize>,
    phi: Vec<PhiValue>,
    c: Vec<Rational>,
}

fn generator_data(graph: &Graph, spec: &GeneratorSpec) -> Result<GenData> {
    let edge = |s: &str| graph.edge_index(s).ok_or_else(|| Error::invalid(format!("unknown edge {s:?}")));
    let ne = graph.edge_count();
    let mut action: Vec<usize> = (0..ne).collect();
    for (a, b) in &spec.action {
        action[edge(a)?] = edge(b)?;
    }
    let mut phi = vec![PhiValue::Power(0); ne];
    for (e, v) in &spec.phi {
        phi[edge(e)?] = v.clone();
    }
    let mut c = vec![Rational::one(); ne];
    for (e, v) in &spec.c {
        c[edge(e)?] = v.0.clone();
    }
    Ok(GenData { action, phi, c })
}

impl EpTupleSpec {
    pub fn build(&self) -> Result<EpTuple> {
        let graph = self.graph.build()?;
        match &self.group {
            EpGroupSpec::Named(name) if name == "Z" => self.build_integers(graph),
            EpGroupSpec::Named(name) => Err(Error::invalid(format!("unknown group {name:?}; use \"Z\" or a group object"))),
            EpGroupSpec::Finite(gs) => self.build_finite(gs.build()?, graph),
        }
    }

    fn build_integers(&self, graph: Graph) -> Result<EpTuple> {
        if self.generators.keys().any(|k| k != "x") {
            return Err(Error::invalid("for G = Z only the generator \"x\" may be given"));
        }
        let spec = self.generators.get("x").cloned().unwrap_or_default();
        let d = generator_data(&graph, &spec)?;
        let phi = d
            .phi
            .iter()
            .map(|p| match p {
                PhiValue::Power(k) => Ok(*k),
                PhiValue::Element(s) => Err(Error::invalid(format!("phi values for G = Z are exponents, got {s:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(EpTuple::Integers(IntegerTuple::new(graph, d.action, phi, d.c)?))
    }

    fn build_finite(&self, group: FiniteGroup, graph: Graph) -> Result<EpTuple> {
        let (ng, ne) = (group.order(), graph.edge_count());
        let mut gens = Vec::new();
        for (label, spec) in &self.generators {
            let g = group.index_of(label).ok_or_else(|| Error::invalid(format!("unknown group element {label:?}")))?;
            let d = generator_data(&graph, spec)?;
            let phi = d
                .phi
                .iter()
                .map(|p| match p {
                    PhiValue::Power(0) => Ok(0),
                    PhiValue::Power(k) => Err(Error::invalid(format!("phi value {k} is not an element label"))),
                    PhiValue::Element(s) => {
                        group.index_of(s).ok_or_else(|| Error::invalid(format!("unknown group element {s:?}")))
                    }
                })
                .collect::<Result<Vec<_>>>()?;
            gens.push((g, d.action, phi, d.c));
        }
        // breadth-first closure under right multiplication by the generators
        let mut action: Vec<Option<Vec<usize>>> = vec![None; ng];
        let mut phi = vec![Vec::new(); ng];
        let mut c = vec![Vec::new(); ng];
        action[0] = Some((0..ne).collect());
        phi[0] = vec![0; ne];
        c[0] = vec![Rational::one(); ne];
        let mut queue = VecDeque::from([0usize]);
        while let Some(a) = queue.pop_front() {
            for (s, sa, sphi, sc) in &gens {
                let b = group.mul(a, *s);
                if action[b].is_some() {
                    continue;
                }
                let aa = action[a].clone().expect("visited");
                action[b] = Some((0..ne).map(|e| aa[sa[e]]).collect());
                phi[b] = (0..ne).map(|e| group.mul(phi[a][sa[e]], sphi[e])).collect();
                c[b] = (0..ne).map(|e| &c[a][sa[e]] * &sc[e]).collect();
                queue.push_back(b);
            }
        }
        if let Some(g) = action.iter().position(Option::is_none) {
            return Err(Error::invalid(format!("the listed generators do not reach {}", group.label(g))));
        }
        let action = action.into_iter().map(|a| a.expect("all reached")).collect();
        Ok(EpTuple::Finite(FiniteTuple::new(group, graph, action, phi, c)?))
    }
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;
    use crate::graph::Edge;

    /// `Z/2` swapping the two loops of the 2-rose, `phi = 1`.
    pub fn z2_swap() -> FiniteTuple {
        let g = FiniteGroup::cyclic(2);
        FiniteTuple::new(
            g,
            Graph::rose(2),
            vec![vec![0, 1], vec![1, 0]],
            vec![vec![0, 0]; 2],
            vec![vec![Rational::one(); 2]; 2],
        )
        .unwrap()
    }

    /// `Z/2` fixing every edge of the `n`-rose with `phi = 1`.
    pub fn z2_trivial(n: usize) -> FiniteTuple {
        FiniteTuple::new(
            FiniteGroup::cyclic(2),
            Graph::rose(n),
            vec![(0..n).collect(); 2],
            vec![vec![0; n]; 2],
            vec![vec![Rational::one(); n]; 2],
        )
        .unwrap()
    }

    /// `S_d` permuting `d` parallel edges from `v` to the sink `w`.
    pub fn parallel(d: usize) -> FiniteTuple {
        let g = FiniteGroup::symmetric(d);
        let edges = (0..d).map(|i| Edge { name: format!("e{}", i + 1), s: 0, r: 1 }).collect();
        let graph = Graph::new(vec!["v".into(), "w".into()], edges).unwrap();
        let action = (0..g.order()).map(|k| FiniteGroup::symmetric_permutation(d, k)).collect();
        let n = g.order();
        FiniteTuple::new(g, graph, action, vec![vec![0; d]; n], vec![vec![Rational::one(); d]; n]).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn swap_extends_to_paths() {
        let t = z2_swap();
        let alpha = Path { start: 0, edges: vec![0, 1] };
        let (img, h, c) = t.extend_to_path(1, &alpha);
        // t(e1 e2) = t(e1) phi(t, e1)(e2) = e2 e2
        assert_eq!(img.edges, [1, 1]);
        assert_eq!(h, 0);
        assert!(c.is_one());
    }

    #[test]
    fn trivial_group_is_valid() {
        let t = FiniteTuple::trivial(Graph::rose(3));
        let (img, h, _) = t.extend_to_path(0, &Path { start: 0, edges: vec![2, 1, 0] });
        assert_eq!(img.edges, [2, 1, 0]);
        assert_eq!(h, 0);
    }

    #[test]
    fn broken_cocycle_rejected() {
        // phi(t, e) = t for the swap on Z/2 forces phi(t^2, e) = t^2 = 1, fine;
        // but setting phi(1, e) = t breaks normalization
        let g = FiniteGroup::cyclic(2);
        let bad = FiniteTuple::new(
            g,
            Graph::rose(2),
            vec![vec![0, 1], vec![1, 0]],
            vec![vec![1, 0], vec![0, 0]],
            vec![vec![Rational::one(); 2]; 2],
        );
        assert!(matches!(bad, Err(Error::Cocycle(_))));
    }

    #[test]
    fn json_closure_from_generators() {
        let s = r#"{"graph": {"rose": 2}, "group": {"kind": "cyclic", "order": 2},
                    "generators": {"t": {"action": {"e1": "e2", "e2": "e1"}, "c": {"e1": -1, "e2": -1}}}}"#;
        let t = EpTuple::from_json(s).unwrap();
        let f = t.as_finite().unwrap();
        assert_eq!(f.act(1, 0), 1);
        assert_eq!(f.c(1, 0), &rat(-1));
        // c(t^2, e) = c(t, t e) c(t, e) = 1
        assert!(f.c(0, 0).is_one());
        let inconsistent = r#"{"graph": {"rose": 2}, "group": {"kind": "cyclic", "order": 2},
                    "generators": {"t": {"action": {"e1": "e2", "e2": "e1"}, "c": {"e1": -1}}}}"#;
        assert!(EpTuple::from_json(inconsistent).is_err());
    }

    #[test]
    fn integer_tuple_cocycle() {
        // Katsura-type: x fixes the loop, phi(x, e) = x^2
        let t = IntegerTuple::new(Graph::rose(1), vec![0], vec![2], vec![Rational::one()]).unwrap();
        assert_eq!(t.on_edge(3, 0).1, 6);
        assert_eq!(t.on_edge(-3, 0).1, -6);
        let (_, k, _) = t.extend_to_path(1, &Path { start: 0, edges: vec![0, 0, 0] });
        assert_eq!(k, 8);
        let swap = IntegerTuple::new(Graph::rose(2), vec![1, 0], vec![1, 0], vec![Rational::one(); 2]).unwrap();
        // x^2 fixes e1 and phi(x^2, e1) = k(e1) + k(e2)
        assert_eq!(swap.on_edge(2, 0), (0, 1, Rational::one()));
        assert_eq!(swap.on_edge(-1, 1).0, 0);
    }
}
