//! Chain complexes, chain maps, cones and semicyclic modules.
//!
//! A complex carries chain groups in degrees `0..=N` and all boundaries
//! `d_1..d_N`. Homology is only meaningful in degrees `<= N - 1`, since
//! `H_N` would need `d_{N+1}`; asking for more is an error.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::abgroup::FgAbelianGroup;
use crate::error::{Error, Result};
use crate::matrix::IntMatrix;
use crate::scalar::{common_denominator, Rational};
use crate::smith::invariant_factors;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize, Default)]
pub enum Ring {
    #[default]
    Z,
    Q,
}

impl std::fmt::Display for Ring {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Ring::Z => "Z",
            Ring::Q => "Q",
        })
    }
}

impl std::str::FromStr for Ring {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "Z" | "z" => Ok(Ring::Z),
            "Q" | "q" => Ok(Ring::Q),
            _ => Err(Error::invalid(format!("unknown ring {s:?}, expected Z or Q"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ChainComplex {
    ring: Ring,
    ranks: Vec<usize>,
    /// `boundaries[n - 1]` is `d_n : C_n -> C_{n-1}`.
    boundaries: Vec<IntMatrix>,
}

impl ChainComplex {
    /// `boundaries[n - 1] = d_n` for `n = 1..=N` where `N = ranks.len() - 1`.
    pub fn new(ring: Ring, ranks: Vec<usize>, boundaries: Vec<IntMatrix>) -> Result<Self> {
        if ranks.is_empty() || boundaries.len() + 1 != ranks.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} chain groups need {} boundaries, got {}",
                ranks.len(),
                ranks.len().saturating_sub(1),
                boundaries.len()
            )));
        }
        for (i, d) in boundaries.iter().enumerate() {
            if d.shape() != (ranks[i], ranks[i + 1]) {
                return Err(Error::DimensionMismatch(format!(
                    "d_{} is {}x{}, expected {}x{}",
                    i + 1,
                    d.rows(),
                    d.cols(),
                    ranks[i],
                    ranks[i + 1]
                )));
            }
        }
        for n in 1..boundaries.len() {
            if !(&boundaries[n - 1] * &boundaries[n]).is_zero() {
                return Err(Error::NotAComplex { degree: n });
            }
        }
        Ok(ChainComplex { ring, ranks, boundaries })
    }

    /// Complex from rational boundary entries. Over Z every entry must be an
    /// integer. Over Q all boundaries are multiplied by one common denominator,
    /// which changes no rank.
    pub fn from_rational(ring: Ring, ranks: Vec<usize>, boundaries: Vec<Vec<(usize, usize, Rational)>>) -> Result<Self> {
        let scale = match ring {
            Ring::Z => BigInt::one(),
            Ring::Q => common_denominator(boundaries.iter().flatten().map(|(_, _, v)| v)),
        };
        let mut mats = Vec::with_capacity(boundaries.len());
        for (k, trip) in boundaries.into_iter().enumerate() {
            let mut ints = Vec::with_capacity(trip.len());
            for (r, c, v) in trip {
                let x = v * Rational::from_integer(scale.clone());
                if !x.is_integer() {
                    return Err(Error::invalid("non-integral coefficient in a complex over Z"));
                }
                ints.push((r, c, x.to_integer()));
            }
            mats.push(IntMatrix::from_triplets(ranks[k], ranks[k + 1], ints));
        }
        ChainComplex::new(ring, ranks, mats)
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn max_degree(&self) -> usize {
        self.ranks.len() - 1
    }

    pub fn rank(&self, n: usize) -> usize {
        self.ranks.get(n).copied().unwrap_or(0)
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    /// `d_n`; `d_0` is the zero map to the zero group.
    pub fn boundary(&self, n: usize) -> IntMatrix {
        match n {
            0 => IntMatrix::zeros(0, self.ranks[0]),
            n if n <= self.max_degree() => self.boundaries[n - 1].clone(),
            _ => panic!("d_{n} is outside the stored window"),
        }
    }

    pub fn boundary_ref(&self, n: usize) -> &IntMatrix {
        &self.boundaries[n - 1]
    }

    /// The same complex read over another ring.
    pub fn with_ring(&self, ring: Ring) -> ChainComplex {
        ChainComplex { ring, ..self.clone() }
    }

    /// Keeps degrees `0..=n`.
    pub fn truncate(&self, n: usize) -> ChainComplex {
        let n = n.min(self.max_degree());
        ChainComplex {
            ring: self.ring,
            ranks: self.ranks[..=n].to_vec(),
            boundaries: self.boundaries[..n].to_vec(),
        }
    }

    fn check_degree(&self, n: usize) -> Result<()> {
        if self.max_degree() == 0 || n > self.max_degree() - 1 {
            return Err(Error::OutsideWindow { degree: n, max: self.max_degree().saturating_sub(1) });
        }
        Ok(())
    }

    fn assemble(&self, n: usize, in_factors: &[BigInt], out_factors: &[BigInt]) -> FgAbelianGroup {
        // H_n = Z^{r_n - rank d_n - rank d_{n+1}} + torsion of coker d_{n+1}
        let free = self.ranks[n] - in_factors.len() - out_factors.len();
        match self.ring {
            Ring::Q => FgAbelianGroup::free(free),
            Ring::Z => {
                let mut orders: Vec<BigInt> = out_factors.iter().filter(|d| !d.is_one()).cloned().collect();
                orders.extend(std::iter::repeat(BigInt::from(0)).take(free));
                FgAbelianGroup::from_cyclic_orders(&orders)
            }
        }
    }

    pub fn homology(&self, n: usize) -> Result<FgAbelianGroup> {
        self.check_degree(n)?;
        let f_in = if n == 0 { Vec::new() } else { invariant_factors(&self.boundaries[n - 1]) };
        let f_out = invariant_factors(&self.boundaries[n]);
        Ok(self.assemble(n, &f_in, &f_out))
    }

    /// `H_0 .. H_{N-1}`, with each boundary reduced once.
    pub fn homology_all(&self) -> Vec<FgAbelianGroup> {
        if self.max_degree() == 0 {
            return Vec::new();
        }
        let factors: Vec<Vec<BigInt>> = self.boundaries.par_iter().map(invariant_factors).collect();
        (0..self.max_degree())
            .map(|n| {
                let empty = Vec::new();
                let f_in = if n == 0 { &empty } else { &factors[n - 1] };
                self.assemble(n, f_in, &factors[n])
            })
            .collect()
    }

    /// Alternating sum of chain ranks in degrees `0..=N`.
    pub fn euler_characteristic(&self) -> i64 {
        self.ranks.iter().enumerate().map(|(n, r)| if n % 2 == 0 { *r as i64 } else { -(*r as i64) }).sum()
    }

    pub fn direct_sum(&self, other: &ChainComplex) -> Result<ChainComplex> {
        if self.max_degree() != other.max_degree() || self.ring != other.ring {
            return Err(Error::DimensionMismatch("direct sum of complexes with different windows".into()));
        }
        let ranks = self.ranks.iter().zip(&other.ranks).map(|(a, b)| a + b).collect();
        let boundaries = self
            .boundaries
            .iter()
            .zip(&other.boundaries)
            .map(|(a, b)| IntMatrix::block_diag(&[a, b]))
            .collect();
        ChainComplex::new(self.ring, ranks, boundaries)
    }
}

#[derive(Clone, Debug)]
pub struct ChainMap {
    source: ChainComplex,
    target: ChainComplex,
    /// `components[n] : source_n -> target_n`
    components: Vec<IntMatrix>,
}

impl ChainMap {
    /// Checks shapes and `d f = f d` in every degree of the common window.
    pub fn new(source: ChainComplex, target: ChainComplex, components: Vec<IntMatrix>) -> Result<Self> {
        let n = source.max_degree().min(target.max_degree());
        if components.len() != n + 1 {
            return Err(Error::DimensionMismatch(format!(
                "chain map needs {} components, got {}",
                n + 1,
                components.len()
            )));
        }
        for (k, f) in components.iter().enumerate() {
            if f.shape() != (target.rank(k), source.rank(k)) {
                return Err(Error::DimensionMismatch(format!("component {k} has the wrong shape")));
            }
        }
        for k in 1..=n {
            let lhs = target.boundary_ref(k) * &components[k];
            let rhs = &components[k - 1] * source.boundary_ref(k);
            if lhs != rhs {
                return Err(Error::NotAChainMap { degree: k });
            }
        }
        Ok(ChainMap { source, target, components })
    }

    pub fn source(&self) -> &ChainComplex {
        &self.source
    }

    pub fn target(&self) -> &ChainComplex {
        &self.target
    }

    pub fn component(&self, n: usize) -> &IntMatrix {
        &self.components[n]
    }

    pub fn max_degree(&self) -> usize {
        self.components.len() - 1
    }

    /// Mapping cone: `cone_n = target_n + source_{n-1}`,
    /// `d(t, s) = (d t + f s, -d s)`.
    pub fn cone(&self) -> ChainComplex {
        let n_max = self.max_degree();
        let s = |k: isize| if k < 0 { 0 } else { self.source.rank(k as usize) };
        let ranks: Vec<usize> = (0..=n_max).map(|k| self.target.rank(k) + s(k as isize - 1)).collect();
        let mut boundaries = Vec::with_capacity(n_max);
        for k in 1..=n_max {
            let dt = self.target.boundary_ref(k);
            let f = &self.components[k - 1];
            let rows_s = s(k as isize - 2);
            let cols_t = self.target.rank(k);
            let cols_s = s(k as isize - 1);
            let ds = if k >= 2 { -self.source.boundary_ref(k - 1) } else { IntMatrix::zeros(0, cols_s) };
            let d = IntMatrix::block(&[
                vec![dt, f],
                vec![&IntMatrix::zeros(rows_s, cols_t), &ds],
            ])
            .expect("cone blocks fit");
            boundaries.push(d);
        }
        ChainComplex::new(self.source.ring, ranks, boundaries).expect("cone of a chain map is a complex")
    }

    /// `self - other` for maps between the same complexes.
    pub fn difference(&self, other: &ChainMap) -> Result<ChainMap> {
        let comps = self
            .components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| a.checked_sub(b))
            .collect::<Result<Vec<_>>>()?;
        ChainMap::new(self.source.clone(), self.target.clone(), comps)
    }
}

/// A semicyclic module truncated at degree `N`: faces `d_i : M_n -> M_{n-1}` and
/// cyclic operators `t_n : M_n -> M_n`.
#[derive(Clone, Debug)]
pub struct SemicyclicModule {
    ring: Ring,
    ranks: Vec<usize>,
    /// `faces[n][i] = d_i` on `M_n`; `faces[0]` is empty.
    faces: Vec<Vec<IntMatrix>>,
    cyclic: Vec<IntMatrix>,
}

impl SemicyclicModule {
    pub fn new(ring: Ring, ranks: Vec<usize>, faces: Vec<Vec<IntMatrix>>, cyclic: Vec<IntMatrix>) -> Result<Self> {
        let n_max = ranks.len().checked_sub(1).ok_or_else(|| Error::invalid("empty module"))?;
        if faces.len() != n_max + 1 || cyclic.len() != n_max + 1 {
            return Err(Error::DimensionMismatch("faces and cyclic operators must cover every degree".into()));
        }
        for n in 0..=n_max {
            if cyclic[n].shape() != (ranks[n], ranks[n]) {
                return Err(Error::DimensionMismatch(format!("t_{n} has the wrong shape")));
            }
            let want = if n == 0 { 0 } else { n + 1 };
            if faces[n].len() != want {
                return Err(Error::DimensionMismatch(format!("degree {n} needs {want} faces")));
            }
            for d in &faces[n] {
                if d.shape() != (ranks[n - 1], ranks[n]) {
                    return Err(Error::DimensionMismatch(format!("a face in degree {n} has the wrong shape")));
                }
            }
        }
        Ok(SemicyclicModule { ring, ranks, faces, cyclic })
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn max_degree(&self) -> usize {
        self.ranks.len() - 1
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn face(&self, n: usize, i: usize) -> &IntMatrix {
        &self.faces[n][i]
    }

    pub fn cyclic_operator(&self, n: usize) -> &IntMatrix {
        &self.cyclic[n]
    }

    fn alternating(&self, n: usize, top: usize) -> IntMatrix {
        let mut acc = IntMatrix::zeros(self.ranks[n - 1], self.ranks[n]);
        for i in 0..=top {
            let d = &self.faces[n][i];
            acc = if i % 2 == 0 { &acc + d } else { &acc - d };
        }
        acc
    }

    /// `b = sum_{i=0}^{n} (-1)^i d_i`
    pub fn b(&self, n: usize) -> IntMatrix {
        self.alternating(n, n)
    }

    /// `b' = sum_{i=0}^{n-1} (-1)^i d_i`
    pub fn b_prime(&self, n: usize) -> IntMatrix {
        if n == 0 {
            return IntMatrix::zeros(0, self.ranks[0]);
        }
        self.alternating(n, n - 1)
    }

    /// `N = sum_{i=0}^{n} t^i`
    pub fn norm(&self, n: usize) -> IntMatrix {
        let t = &self.cyclic[n];
        let mut power = IntMatrix::identity(self.ranks[n]);
        let mut acc = power.clone();
        for _ in 0..n {
            power = t * &power;
            acc = &acc + &power;
        }
        acc
    }

    pub fn hochschild_complex(&self) -> ChainComplex {
        let b = (1..=self.max_degree()).map(|n| self.b(n)).collect();
        ChainComplex::new(self.ring, self.ranks.clone(), b).expect("b squares to zero on a validated module")
    }

    pub fn bar_complex(&self) -> ChainComplex {
        let b = (1..=self.max_degree()).map(|n| self.b_prime(n)).collect();
        ChainComplex::new(self.ring, self.ranks.clone(), b).expect("b' squares to zero on a validated module")
    }

    /// Checks the semisimplicial identities, `t^{n+1} = 1`, `d_i t = -t d_{i-1}`,
    /// `d_0 t = (-1)^n d_n` and `b b = 0`; reports the first failure.
    pub fn validate(&self) -> Result<()> {
        let fail = |identity: &str, degree: usize| {
            Err(Error::SemicyclicIdentity { identity: identity.to_string(), degree })
        };
        for n in 2..=self.max_degree() {
            for j in 1..=n {
                for i in 0..j {
                    if &self.faces[n - 1][i] * &self.faces[n][j] != &self.faces[n - 1][j - 1] * &self.faces[n][i] {
                        return fail("d_i d_j = d_{j-1} d_i", n);
                    }
                }
            }
        }
        for n in 0..=self.max_degree() {
            let t = &self.cyclic[n];
            let mut p = t.clone();
            for _ in 0..n {
                p = t * &p;
            }
            if p != IntMatrix::identity(self.ranks[n]) {
                return fail("t^{n+1} = 1", n);
            }
            if n == 0 {
                continue;
            }
            for i in 1..=n {
                let lhs = &self.faces[n][i] * t;
                let rhs = -&(&self.cyclic[n - 1] * &self.faces[n][i - 1]);
                if lhs != rhs {
                    return fail("d_i t = -t d_{i-1}", n);
                }
            }
            let lhs = &self.faces[n][0] * t;
            let rhs = if n % 2 == 0 { self.faces[n][n].clone() } else { -&self.faces[n][n] };
            if lhs != rhs {
                return fail("d_0 t = (-1)^n d_n", n);
            }
        }
        for n in 2..=self.max_degree() {
            if !(&self.b(n - 1) * &self.b(n)).is_zero() {
                return fail("b b = 0", n);
            }
        }
        Ok(())
    }

    /// Restriction to the span of the given basis vectors in each degree.
    /// Every operator must preserve the chosen subsets.
    pub fn restrict(&self, keep: &[Vec<usize>]) -> Result<SemicyclicModule> {
        let n_max = self.max_degree();
        let pos: Vec<std::collections::HashMap<usize, usize>> =
            keep.iter().map(|k| k.iter().enumerate().map(|(i, b)| (*b, i)).collect()).collect();
        let sub = |m: &IntMatrix, rows: usize, cols: usize| -> Result<IntMatrix> {
            let mut trip = Vec::new();
            for (new_c, old_c) in keep[cols].iter().enumerate() {
                for (r, v) in m.column(*old_c) {
                    let Some(new_r) = pos[rows].get(r) else {
                        return Err(Error::invalid("subset is not preserved by the structure maps"));
                    };
                    trip.push((*new_r, new_c, v.clone()));
                }
            }
            Ok(IntMatrix::from_triplets(keep[rows].len(), keep[cols].len(), trip))
        };
        let mut faces = vec![Vec::new()];
        let mut cyclic = Vec::new();
        for n in 0..=n_max {
            cyclic.push(sub(&self.cyclic[n], n, n)?);
            if n > 0 {
                faces.push(self.faces[n].iter().map(|d| sub(d, n - 1, n)).collect::<Result<Vec<_>>>()?);
            }
        }
        SemicyclicModule::new(self.ring, keep.iter().map(Vec::len).collect(), faces, cyclic)
    }

    /// Connes' bicomplex for this module.
    pub fn cc_bicomplex(&self) -> CcBicomplex<'_> {
        CcBicomplex { module: self }
    }

    /// `HC_n` for `n <= N - 1`.
    pub fn cyclic_homology(&self) -> Vec<FgAbelianGroup> {
        self.cc_bicomplex().total().homology_all()
    }
}

/// Column `p` is `M` with vertical differential `b` (p even) or `-b'` (p odd);
/// the horizontal map out of column `p` is `1 - t` (p odd) or `N` (p even).
pub struct CcBicomplex<'a> {
    module: &'a SemicyclicModule,
}

impl CcBicomplex<'_> {
    /// Vertical differential on `M_q` in column `p`.
    pub fn vertical(&self, p: usize, q: usize) -> IntMatrix {
        if p % 2 == 0 {
            self.module.b(q)
        } else {
            -&self.module.b_prime(q)
        }
    }

    /// Horizontal differential from column `p` to column `p - 1` on `M_q`.
    pub fn horizontal(&self, p: usize, q: usize) -> IntMatrix {
        assert!(p >= 1);
        if p % 2 == 1 {
            &IntMatrix::identity(self.module.ranks[q]) - self.module.cyclic_operator(q)
        } else {
            self.module.norm(q)
        }
    }

    /// Total complex in degrees `0..=N`; degree `k` is `⊕_{p=0}^{k} M_{k-p}` ordered by `p`.
    pub fn total(&self) -> ChainComplex {
        let n_max = self.module.max_degree();
        let r = &self.module.ranks;
        let ranks: Vec<usize> = (0..=n_max).map(|k| (0..=k).map(|p| r[k - p]).sum()).collect();
        let mut boundaries = Vec::with_capacity(n_max);
        for k in 1..=n_max {
            let row_off: Vec<usize> = (0..k).scan(0, |acc, p| {
                let o = *acc;
                *acc += r[k - 1 - p];
                Some(o)
            }).collect();
            let mut trip = Vec::new();
            let mut col_off = 0;
            for p in 0..=k {
                let q = k - p;
                if q >= 1 {
                    for (rr, c, v) in self.vertical(p, q).triplets() {
                        trip.push((row_off[p] + rr, col_off + c, v.clone()));
                    }
                }
                if p >= 1 {
                    for (rr, c, v) in self.horizontal(p, q).triplets() {
                        trip.push((row_off[p - 1] + rr, col_off + c, v.clone()));
                    }
                }
                col_off += r[q];
            }
            boundaries.push(IntMatrix::from_triplets(ranks[k - 1], ranks[k], trip));
        }
        ChainComplex::new(self.module.ring, ranks, boundaries).expect("total complex squares to zero")
    }
}

/// `HC_n` of a semicyclic module, `n <= N - 1`.
pub fn hc(module: &SemicyclicModule, n: usize) -> Result<FgAbelianGroup> {
    module.cc_bicomplex().total().homology(n)
}

/// Sparse matrix with exact rational entries, as `(row, column, value)`.
pub type Triplets = Vec<(usize, usize, Rational)>;

fn compose(a: &[(usize, usize, Rational)], b: &[(usize, usize, Rational)]) -> BTreeMap<(usize, usize), Rational> {
    let mut by_row: HashMap<usize, Vec<(usize, &Rational)>> = HashMap::new();
    for (r, c, v) in a {
        by_row.entry(*c).or_default().push((*r, v));
    }
    let mut out: BTreeMap<(usize, usize), Rational> = BTreeMap::new();
    for (k, c, v) in b {
        for (r, x) in by_row.get(k).map(Vec::as_slice).unwrap_or_default() {
            *out.entry((*r, *c)).or_insert_with(Rational::zero) += *x * v;
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

/// A complex whose boundaries are kept as exact rationals, so that maps between
/// two such complexes can be compared and coned before any rescaling.
#[derive(Clone, Debug)]
pub struct RationalComplex {
    pub ring: Ring,
    pub ranks: Vec<usize>,
    /// `boundaries[n - 1] = d_n`
    pub boundaries: Vec<Triplets>,
}

impl RationalComplex {
    pub fn complex(&self) -> Result<ChainComplex> {
        ChainComplex::from_rational(self.ring, self.ranks.clone(), self.boundaries.clone())
    }

    pub fn max_degree(&self) -> usize {
        self.ranks.len() - 1
    }
}

/// Mapping cone of `f : source -> target` given by rational components; `d f = f d`
/// is checked exactly in every degree first. Over Z all entries must be integers.
pub fn rational_cone(source: &RationalComplex, target: &RationalComplex, components: &[Triplets]) -> Result<ChainComplex> {
    let n_max = source.max_degree().min(target.max_degree());
    if components.len() != n_max + 1 {
        return Err(Error::DimensionMismatch(format!("chain map needs {} components", n_max + 1)));
    }
    for k in 1..=n_max {
        if compose(&target.boundaries[k - 1], &components[k]) != compose(&components[k - 1], &source.boundaries[k - 1]) {
            return Err(Error::NotAChainMap { degree: k });
        }
    }
    let s = |k: usize| if k == 0 { 0 } else { source.ranks[k - 1] };
    let ranks: Vec<usize> = (0..=n_max).map(|k| target.ranks[k] + s(k)).collect();
    let mut boundaries = Vec::with_capacity(n_max);
    for k in 1..=n_max {
        let (t_k, t_km1) = (target.ranks[k], target.ranks[k - 1]);
        let mut d: Triplets = target.boundaries[k - 1].clone();
        d.extend(components[k - 1].iter().map(|(r, c, v)| (*r, t_k + c, v.clone())));
        if k >= 2 {
            d.extend(source.boundaries[k - 2].iter().map(|(r, c, v)| (t_km1 + r, t_k + c, -v.clone())));
        }
        boundaries.push(d);
    }
    ChainComplex::from_rational(target.ring, ranks, boundaries)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn point_module(n_max: usize) -> SemicyclicModule {
        let one = IntMatrix::identity(1);
        let faces = (0..=n_max).map(|n| if n == 0 { vec![] } else { vec![one.clone(); n + 1] }).collect();
        let cyclic = (0..=n_max).map(|n| if n % 2 == 0 { one.clone() } else { -&one }).collect();
        SemicyclicModule::new(Ring::Z, vec![1; n_max + 1], faces, cyclic).unwrap()
    }

    #[test]
    fn point_cyclic_homology() {
        let m = point_module(4);
        m.validate().unwrap();
        let hc = m.cyclic_homology();
        let shown: Vec<String> = hc.iter().map(|g| g.to_string()).collect();
        assert_eq!(shown, ["Z", "0", "Z", "0"]);
        let hh: Vec<String> = m.hochschild_complex().homology_all().iter().map(|g| g.to_string()).collect();
        assert_eq!(hh, ["Z", "0", "0", "0"]);
    }

    #[test]
    fn broken_cyclic_operator_is_reported() {
        let m = point_module(2);
        let mut cyclic = m.cyclic.clone();
        cyclic[1] = IntMatrix::identity(1);
        let bad = SemicyclicModule::new(Ring::Z, m.ranks.clone(), m.faces.clone(), cyclic).unwrap();
        match bad.validate() {
            Err(Error::SemicyclicIdentity { degree, .. }) => assert_eq!(degree, 1),
            other => panic!("expected a failed identity, got {other:?}"),
        }
    }

    #[test]
    fn bicomplex_differentials_anticommute() {
        let m = point_module(4);
        let cc = m.cc_bicomplex();
        for p in 1..4 {
            for q in 1..4 {
                let a = &cc.vertical(p - 1, q) * &cc.horizontal(p, q);
                let b = &cc.horizontal(p, q - 1) * &cc.vertical(p, q);
                assert!((&a + &b).is_zero(), "p={p} q={q}");
            }
        }
    }

    fn circle() -> ChainComplex {
        // one vertex, one edge, zero boundary
        ChainComplex::new(Ring::Z, vec![1, 1, 0], vec![IntMatrix::zeros(1, 1), IntMatrix::zeros(1, 0)]).unwrap()
    }

    #[test]
    fn homology_window() {
        let c = circle();
        assert_eq!(c.homology(1).unwrap(), FgAbelianGroup::free(1));
        assert!(matches!(c.homology(2), Err(Error::OutsideWindow { .. })));
    }

    #[test]
    fn rejects_non_complex() {
        let d1 = IntMatrix::from_rows(&[vec![1]]);
        let d2 = IntMatrix::from_rows(&[vec![1]]);
        assert_eq!(ChainComplex::new(Ring::Z, vec![1, 1, 1], vec![d1, d2]).unwrap_err(), Error::NotAComplex { degree: 1 });
    }

    #[test]
    fn cone_of_multiplication_by_two() {
        // Z --2--> Z concentrated in degree 0
        let c = ChainComplex::new(Ring::Z, vec![1, 0], vec![IntMatrix::zeros(1, 0)]).unwrap();
        let f = ChainMap::new(c.clone(), c.clone(), vec![IntMatrix::from_rows(&[vec![2]]), IntMatrix::zeros(0, 0)]).unwrap();
        let cone = f.cone();
        assert_eq!(cone.homology(0).unwrap(), FgAbelianGroup::cyclic(2));
        assert_eq!(cone.with_ring(Ring::Q).homology(0).unwrap(), FgAbelianGroup::zero());
        assert_eq!(cone.euler_characteristic(), c.euler_characteristic() - c.truncate(0).euler_characteristic());
    }

    #[test]
    fn non_chain_map_rejected() {
        let c = circle();
        let z = ChainComplex::new(Ring::Z, vec![1, 1, 0], vec![IntMatrix::from_rows(&[vec![1]]), IntMatrix::zeros(1, 0)]).unwrap();
        let err = ChainMap::new(c, z, vec![IntMatrix::identity(1), IntMatrix::identity(1), IntMatrix::zeros(0, 0)]);
        assert_eq!(err.unwrap_err(), Error::NotAChainMap { degree: 1 });
    }
}
