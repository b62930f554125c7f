//! Finite dimensional algebras given by structure constants, their bimodules
//! and Hochschild complexes.
//!
//! Every algebra carries a list of diagonal basis elements: orthogonal
//! idempotents adding up to the unit. The relative Hochschild complex is taken
//! over their span.

mod skew;
mod steinberg;
mod trace;

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};
use serde::Deserialize;

use crate::chain::{ChainComplex, Ring, SemicyclicModule};
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupSpec};
use crate::groupoid::{GroupoidSpec, TupleIndex};
use crate::matrix::IntMatrix;
use crate::scalar::{show, JsonRational, Rational};

pub use skew::{kappa_check, KappaCertificate, SkewLaurent, SkewTensor};
pub use steinberg::{mu_comparison, steinberg_algebra, twisted_steinberg, MuCertificate, MuDegree};
pub use trace::{trace_comparison, TraceCertificate};

/// Sparse vector in a fixed basis; no stored zeros.
pub type Elem = BTreeMap<usize, Rational>;

pub fn add_scaled(acc: &mut Elem, x: &Elem, k: &Rational) {
    for (i, v) in x {
        let e = acc.entry(*i).or_insert_with(Rational::zero);
        *e += v * k;
        if e.is_zero() {
            acc.remove(i);
        }
    }
}

pub fn basis_elem(i: usize) -> Elem {
    BTreeMap::from([(i, Rational::one())])
}

/// Upper bound on the number of chains in one degree of a Hochschild complex.
pub const CHAIN_BUDGET: usize = 400_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinDimAlgebra {
    ring: Ring,
    labels: Vec<String>,
    /// `table[i][j] = b_i b_j`
    table: Vec<Vec<Elem>>,
    diagonal: Vec<usize>,
}

impl FinDimAlgebra {
    /// Checks integrality over Z, associativity on basis triples, and that the
    /// diagonal consists of orthogonal idempotents summing to a unit.
    pub fn new(ring: Ring, labels: Vec<String>, table: Vec<Vec<Elem>>, diagonal: Vec<usize>) -> Result<Self> {
        let d = labels.len();
        if d == 0 || table.len() != d || table.iter().any(|row| row.len() != d) {
            return Err(Error::invalid("structure constants must form a square table over the basis"));
        }
        if table.iter().flatten().flat_map(|e| e.keys()).any(|&k| k >= d) {
            return Err(Error::invalid("structure constant refers to an unknown basis element"));
        }
        if ring == Ring::Z && table.iter().flatten().flat_map(|e| e.values()).any(|v| !v.is_integer()) {
            return Err(Error::invalid("structure constants over Z must be integers"));
        }
        if diagonal.is_empty() || diagonal.iter().any(|&e| e >= d) {
            return Err(Error::invalid("diagonal must list basis elements"));
        }
        let alg = FinDimAlgebra { ring, labels, table, diagonal };
        for &e in &alg.diagonal {
            for &f in &alg.diagonal {
                let want = if e == f { basis_elem(e) } else { Elem::new() };
                if alg.table[e][f] != want {
                    return Err(Error::invalid(format!(
                        "diagonal elements {} and {} are not orthogonal idempotents",
                        alg.labels[e], alg.labels[f]
                    )));
                }
            }
        }
        let unit = alg.unit();
        for i in 0..d {
            let b = basis_elem(i);
            if alg.mul(&unit, &b) != b || alg.mul(&b, &unit) != b {
                return Err(Error::invalid(format!("the diagonal is not a unit for {}", alg.labels[i])));
            }
        }
        for i in 0..d {
            for j in 0..d {
                let ij = &alg.table[i][j];
                for k in 0..d {
                    let lhs = alg.mul(ij, &basis_elem(k));
                    let rhs = alg.mul(&basis_elem(i), &alg.table[j][k]);
                    if lhs != rhs {
                        return Err(Error::invalid(format!(
                            "multiplication is not associative at ({}, {}, {})",
                            alg.labels[i], alg.labels[j], alg.labels[k]
                        )));
                    }
                }
            }
        }
        Ok(alg)
    }

    /// Group algebra with the identity as the only diagonal element.
    pub fn group_algebra(g: &FiniteGroup, ring: Ring) -> Self {
        let n = g.order();
        let table = (0..n).map(|a| (0..n).map(|b| basis_elem(g.mul(a, b))).collect()).collect();
        Self::new(ring, g.labels().to_vec(), table, vec![0]).expect("group algebras are algebras")
    }

    /// `M_n(A)` on the basis `E_ij a` ordered by `(i, j, a)`, with diagonal
    /// `E_ii e` for the diagonal elements `e` of `A`.
    pub fn matrix_algebra(a: &FinDimAlgebra, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("matrix size must be positive"));
        }
        let d = a.dim();
        let idx = |i: usize, j: usize, k: usize| (i * n + j) * d + k;
        let mut labels = Vec::with_capacity(n * n * d);
        for i in 0..n {
            for j in 0..n {
                for k in 0..d {
                    labels.push(format!("E{}{}.{}", i + 1, j + 1, a.labels[k]));
                }
            }
        }
        let mut table = vec![vec![Elem::new(); n * n * d]; n * n * d];
        for (i, j, k) in (0..n).flat_map(|i| (0..n).flat_map(move |j| (0..d).map(move |k| (i, j, k)))) {
            for (l, k2) in (0..n).flat_map(|l| (0..d).map(move |k2| (l, k2))) {
                table[idx(i, j, k)][idx(j, l, k2)] =
                    a.table[k][k2].iter().map(|(c, v)| (idx(i, l, *c), v.clone())).collect();
            }
        }
        let diagonal = (0..n).flat_map(|i| a.diagonal.iter().map(move |&e| idx(i, i, e))).collect();
        Self::new(a.ring, labels, table, diagonal)
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn diagonal(&self) -> &[usize] {
        &self.diagonal
    }

    pub fn product(&self, i: usize, j: usize) -> &Elem {
        &self.table[i][j]
    }

    pub fn unit(&self) -> Elem {
        self.diagonal.iter().map(|&e| (e, Rational::one())).collect()
    }

    pub fn mul(&self, x: &Elem, y: &Elem) -> Elem {
        let mut out = Elem::new();
        for (i, a) in x {
            for (j, b) in y {
                add_scaled(&mut out, &self.table[*i][*j], &(a * b));
            }
        }
        out
    }

    pub fn has_integer_constants(&self) -> bool {
        self.table.iter().flatten().flat_map(|e| e.values()).all(|v| v.is_integer())
    }

    pub fn show_elem(&self, x: &Elem) -> String {
        if x.is_empty() {
            return "0".into();
        }
        x.iter().map(|(i, v)| format!("{}*{}", show(v), self.labels[*i])).collect::<Vec<_>>().join(" + ")
    }

    pub fn from_json(s: &str, ring: Ring) -> Result<Self> {
        let spec: AlgebraSpec = serde_json::from_str(s).map_err(|e| Error::invalid(e.to_string()))?;
        spec.build(ring)
    }
}

/// A bimodule over a [`FinDimAlgebra`] given by the action of basis elements on
/// basis elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bimodule {
    labels: Vec<String>,
    /// `left[a][m] = b_a m`
    left: Vec<Vec<Elem>>,
    /// `right[a][m] = m b_a`
    right: Vec<Vec<Elem>>,
}

impl Bimodule {
    pub fn new(alg: &FinDimAlgebra, labels: Vec<String>, left: Vec<Vec<Elem>>, right: Vec<Vec<Elem>>) -> Result<Self> {
        let (d, n) = (alg.dim(), labels.len());
        let shaped = |t: &Vec<Vec<Elem>>| t.len() == d && t.iter().all(|r| r.len() == n && r.iter().all(|e| e.keys().all(|&k| k < n)));
        if !shaped(&left) || !shaped(&right) {
            return Err(Error::invalid("bimodule action tables have the wrong shape"));
        }
        let m = Bimodule { labels, left, right };
        let unit = alg.unit();
        for x in 0..n {
            let v = basis_elem(x);
            if m.act_left(&unit, &v) != v || m.act_right(&v, &unit) != v {
                return Err(Error::invalid(format!("the unit does not act trivially on {}", m.labels[x])));
            }
            for a in 0..d {
                for b in 0..d {
                    let (ea, eb) = (basis_elem(a), basis_elem(b));
                    let ab = alg.product(a, b);
                    if m.act_left(ab, &v) != m.act_left(&ea, &m.act_left(&eb, &v)) {
                        return Err(Error::invalid(format!("left action fails (ab)m = a(bm) on {}", m.labels[x])));
                    }
                    if m.act_right(&v, ab) != m.act_right(&m.act_right(&v, &ea), &eb) {
                        return Err(Error::invalid(format!("right action fails m(ab) = (ma)b on {}", m.labels[x])));
                    }
                    if m.act_right(&m.act_left(&ea, &v), &eb) != m.act_left(&ea, &m.act_right(&v, &eb)) {
                        return Err(Error::invalid(format!("actions do not commute on {}", m.labels[x])));
                    }
                }
            }
        }
        Ok(m)
    }

    /// The algebra as a bimodule over itself.
    pub fn regular(alg: &FinDimAlgebra) -> Self {
        let t = alg.table.clone();
        let right = (0..alg.dim()).map(|a| (0..alg.dim()).map(|m| t[m][a].clone()).collect()).collect();
        Bimodule { labels: alg.labels.clone(), left: t, right }
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn act_left(&self, a: &Elem, m: &Elem) -> Elem {
        let mut out = Elem::new();
        for (i, x) in a {
            for (j, y) in m {
                add_scaled(&mut out, &self.left[*i][*j], &(x * y));
            }
        }
        out
    }

    pub fn act_right(&self, m: &Elem, a: &Elem) -> Elem {
        let mut out = Elem::new();
        for (j, y) in m {
            for (i, x) in a {
                add_scaled(&mut out, &self.right[*i][*j], &(x * y));
            }
        }
        out
    }
}

/// Which diagonal idempotents fix a basis vector on the left and on the right.
fn peirce_type(
    count: usize,
    diagonal: &[usize],
    left: impl Fn(usize, usize) -> Elem,
    right: impl Fn(usize, usize) -> Elem,
) -> Result<Vec<(usize, usize)>> {
    let mut out = Vec::with_capacity(count);
    for x in 0..count {
        let v = basis_elem(x);
        let find = |act: &dyn Fn(usize, usize) -> Elem| -> Result<usize> {
            let mut hit = None;
            for (k, &e) in diagonal.iter().enumerate() {
                let w = act(e, x);
                if w == v && hit.is_none() {
                    hit = Some(k);
                } else if !w.is_empty() {
                    return Err(Error::invalid("basis is not homogeneous for the diagonal idempotents"));
                }
            }
            hit.ok_or_else(|| Error::invalid("basis is not homogeneous for the diagonal idempotents"))
        };
        out.push((find(&left)?, find(&right)?));
    }
    Ok(out)
}

/// Chains `m ⊗ a_1 ⊗ .. ⊗ a_n` of a Hochschild complex in degrees `0..=N`, and
/// the faces as rational triplets.
#[derive(Clone, Debug)]
pub struct HochschildChains {
    ring: Ring,
    pub levels: Vec<TupleIndex>,
    /// `faces[n][i]` = triplets of `d_i : C_n -> C_{n-1}`
    faces: Vec<Vec<Vec<(usize, usize, Rational)>>>,
}

impl HochschildChains {
    /// Absolute (`relative = false`) or relative to the diagonal.
    pub fn new(alg: &FinDimAlgebra, module: &Bimodule, window: usize, relative: bool) -> Result<Self> {
        let (d, md) = (alg.dim(), module.dim());
        let levels = if relative {
            let a_type = peirce_type(d, &alg.diagonal, |e, x| alg.table[e][x].clone(), |e, x| alg.table[x][e].clone())?;
            let m_type = peirce_type(md, &alg.diagonal, |e, x| module.left[e][x].clone(), |e, x| module.right[e][x].clone())?;
            relative_levels(&a_type, &m_type, window)?
        } else {
            absolute_levels(d, md, window)?
        };
        let mut faces = vec![Vec::new()];
        for n in 1..=window {
            let (src, dst) = (&levels[n], &levels[n - 1]);
            let mut fs = vec![Vec::new(); n + 1];
            for (col, t) in src.iter().enumerate() {
                for (i, f) in fs.iter_mut().enumerate() {
                    let (head, img): (Vec<usize>, Elem) = if i == 0 {
                        (Vec::new(), module.act_right(&basis_elem(t[0]), &basis_elem(t[1])))
                    } else if i < n {
                        (t[..i].to_vec(), alg.table[t[i]][t[i + 1]].clone())
                    } else {
                        (Vec::new(), module.act_left(&basis_elem(t[n]), &basis_elem(t[0])))
                    };
                    for (x, v) in img {
                        let tuple: Vec<usize> = if i == 0 {
                            std::iter::once(x).chain(t[2..].iter().copied()).collect()
                        } else if i < n {
                            head.iter().copied().chain(std::iter::once(x)).chain(t[i + 2..].iter().copied()).collect()
                        } else {
                            std::iter::once(x).chain(t[1..n].iter().copied()).collect()
                        };
                        let row = dst.index_of(&tuple).ok_or_else(|| {
                            Error::invalid("a face leaves the chain basis; the diagonal does not split the bimodule")
                        })?;
                        f.push((row, col, v));
                    }
                }
            }
            faces.push(fs);
        }
        Ok(HochschildChains { ring: alg.ring, levels, faces })
    }

    pub fn max_degree(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.levels.iter().map(TupleIndex::len).collect()
    }

    pub fn face_triplets(&self, n: usize, i: usize) -> &[(usize, usize, Rational)] {
        &self.faces[n][i]
    }

    fn b_triplets(&self, n: usize) -> Vec<(usize, usize, Rational)> {
        let mut out = Vec::new();
        for (i, f) in self.faces[n].iter().enumerate() {
            for (r, c, v) in f {
                out.push((*r, *c, if i % 2 == 0 { v.clone() } else { -v.clone() }));
            }
        }
        out
    }

    /// `(C, b)`; over Q the boundaries are rescaled by a common denominator.
    pub fn complex(&self) -> Result<ChainComplex> {
        let b = (1..=self.max_degree()).map(|n| self.b_triplets(n)).collect();
        ChainComplex::from_rational(self.ring, self.ranks(), b)
    }

    /// Boundaries with the rational entries kept exact; `b[n-1] = b_n`.
    pub fn boundary_triplets(&self) -> Vec<Vec<(usize, usize, Rational)>> {
        (1..=self.max_degree()).map(|n| self.b_triplets(n)).collect()
    }
}

fn check_budget(count: usize, n: usize) -> Result<()> {
    if count > CHAIN_BUDGET {
        return Err(Error::invalid(format!(
            "degree {n} would need {count} chains, more than the budget of {CHAIN_BUDGET}; lower the window"
        )));
    }
    Ok(())
}

fn absolute_levels(d: usize, md: usize, window: usize) -> Result<Vec<TupleIndex>> {
    let mut levels = Vec::with_capacity(window + 1);
    let mut cur: Vec<Vec<usize>> = (0..md).map(|m| vec![m]).collect();
    for n in 0..=window {
        if n > 0 {
            check_budget(cur.len().saturating_mul(d), n)?;
            cur = cur.iter().flat_map(|t| (0..d).map(move |a| [t.as_slice(), &[a]].concat())).collect();
        }
        levels.push(TupleIndex::new(cur.clone()));
    }
    Ok(levels)
}

fn relative_levels(a_type: &[(usize, usize)], m_type: &[(usize, usize)], window: usize) -> Result<Vec<TupleIndex>> {
    let mut levels = Vec::with_capacity(window + 1);
    // open strings, closed up at the end of each degree
    let mut open: Vec<Vec<usize>> = (0..m_type.len()).map(|m| vec![m]).collect();
    let last_right = |t: &[usize]| if t.len() == 1 { m_type[t[0]].1 } else { a_type[*t.last().unwrap()].1 };
    for n in 0..=window {
        if n > 0 {
            open = open
                .iter()
                .flat_map(|t| {
                    let r = last_right(t);
                    (0..a_type.len()).filter(move |&a| a_type[a].0 == r).map(move |a| [t.as_slice(), &[a]].concat())
                })
                .collect();
            check_budget(open.len(), n)?;
        }
        let closed = open.iter().filter(|t| last_right(t) == m_type[t[0]].0).cloned().collect();
        levels.push(TupleIndex::new(closed));
    }
    Ok(levels)
}

pub fn hochschild_complex(alg: &FinDimAlgebra, module: &Bimodule, window: usize) -> Result<ChainComplex> {
    HochschildChains::new(alg, module, window, false)?.complex()
}

/// Hochschild complex relative to the span of the diagonal idempotents.
pub fn relative_hochschild_complex(alg: &FinDimAlgebra, module: &Bimodule, window: usize) -> Result<ChainComplex> {
    HochschildChains::new(alg, module, window, true)?.complex()
}

/// The cyclic module `A^{⊗ n+1}` (absolute or relative) with
/// `t(a_0, .., a_n) = (-1)^n (a_n, a_0, .., a_{n-1})`. Needs integer
/// structure constants.
pub fn cyclic_module(alg: &FinDimAlgebra, window: usize, relative: bool) -> Result<(SemicyclicModule, Vec<TupleIndex>)> {
    if !alg.has_integer_constants() {
        return Err(Error::invalid("cyclic module needs integer structure constants"));
    }
    let chains = HochschildChains::new(alg, &Bimodule::regular(alg), window, relative)?;
    let ranks = chains.ranks();
    let to_int = |trip: &[(usize, usize, Rational)], r: usize, c: usize| {
        IntMatrix::from_triplets(r, c, trip.iter().map(|(a, b, v)| (*a, *b, v.to_integer())))
    };
    let mut faces = vec![Vec::new()];
    let mut cyclic = vec![IntMatrix::identity(ranks[0])];
    for n in 1..=window {
        faces.push((0..=n).map(|i| to_int(&chains.faces[n][i], ranks[n - 1], ranks[n])).collect());
        let lvl = &chains.levels[n];
        let sgn = if n % 2 == 0 { 1 } else { -1 };
        let trip = lvl.iter().enumerate().map(|(c, t)| {
            let rot: Vec<usize> = std::iter::once(t[n]).chain(t[..n].iter().copied()).collect();
            (lvl.index_of(&rot).expect("rotation of a chain is a chain"), c, sgn)
        });
        cyclic.push(IntMatrix::from_triplets(ranks[n], ranks[n], trip));
    }
    let m = SemicyclicModule::new(alg.ring, ranks, faces, cyclic)?;
    Ok((m, chains.levels))
}

/// JSON description of an algebra: explicit structure constants, a group
/// algebra, a matrix algebra over another algebra, or a (twisted) Steinberg
/// algebra of a groupoid.
#[derive(Clone, Debug, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum AlgebraSpec {
    Table {
        basis: Vec<String>,
        /// `[a, b, [[c, coefficient], ..]]`; missing products are zero.
        products: Vec<(String, String, Vec<(String, JsonRational)>)>,
        diagonal: Vec<String>,
    },
    Group(GroupSpec),
    Matrix { size: usize, over: Box<AlgebraSpec> },
    Steinberg(GroupoidSpec),
}

impl AlgebraSpec {
    pub fn build(&self, ring: Ring) -> Result<FinDimAlgebra> {
        match self {
            AlgebraSpec::Table { basis, products, diagonal } => {
                let idx: HashMap<&str, usize> = basis.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
                let find = |s: &str| idx.get(s).copied().ok_or_else(|| Error::invalid(format!("unknown basis element {s:?}")));
                let d = basis.len();
                let mut table = vec![vec![Elem::new(); d]; d];
                for (a, b, terms) in products {
                    let mut e = Elem::new();
                    for (c, v) in terms {
                        add_scaled(&mut e, &basis_elem(find(c)?), &v.0);
                    }
                    table[find(a)?][find(b)?] = e;
                }
                let diag = diagonal.iter().map(|s| find(s)).collect::<Result<Vec<_>>>()?;
                FinDimAlgebra::new(ring, basis.clone(), table, diag)
            }
            AlgebraSpec::Group(g) => Ok(FinDimAlgebra::group_algebra(&g.build()?, ring)),
            AlgebraSpec::Matrix { size, over } => FinDimAlgebra::matrix_algebra(&over.build(ring)?, *size),
            AlgebraSpec::Steinberg(spec) => {
                let g = spec.build()?;
                match spec.build_cocycle(&g, ring)? {
                    Some(w) => twisted_steinberg(&g, &w, ring),
                    None => Ok(steinberg_algebra(&g, ring)),
                }
            }
        }
    }
}
