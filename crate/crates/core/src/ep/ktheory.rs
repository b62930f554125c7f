//! K-theory of `L(G, E, phi_c)` in low degrees from the matrices `A`, `B`, `C`:
//! `K_0 = coker(I - A^t)` and `K_1` as an extension of `ker(I - A^t)` by
//! `coker(I - D^t)`, `D^t = [[A^t, C^t], [0, B^t]]` on `U^reg + G_ab^reg`.
//! For `G = Z` with `C = 0` the homotopy K-groups are assembled from
//! user-supplied `K_n(l)`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::abgroup::{AbGroupMap, FgAbelianGroup, Presentation};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::matrix::IntMatrix;
use crate::scalar::{parse_rational, Rational};

use super::EpTuple;

/// An abelian group `U` of units in additive notation, with the exponent
/// vectors of the values taken by `c` (and of `-1`, for signs).
#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct UnitsPresentation {
    pub generators: Vec<String>,
    /// Each relation is a vector of exponents, one per generator.
    #[serde(default)]
    pub relations: Vec<Vec<i64>>,
    pub values: BTreeMap<String, Vec<i64>>,
}

impl UnitsPresentation {
    /// The units `{1, -1}` of `Z`.
    pub fn integers() -> Self {
        UnitsPresentation {
            generators: vec!["-1".into()],
            relations: vec![vec![2]],
            values: [("-1".to_string(), vec![1])].into(),
        }
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::invalid(format!("units file: {e}")))
    }

    pub fn presentation(&self) -> Result<Presentation> {
        let n = self.generators.len();
        if let Some(r) = self.relations.iter().find(|r| r.len() != n) {
            return Err(Error::invalid(format!("relation {r:?} needs {n} exponents")));
        }
        Ok(Presentation::new(IntMatrix::from_triplets(
            n,
            self.relations.len(),
            self.relations.iter().enumerate().flat_map(|(j, r)| r.iter().enumerate().map(move |(i, &x)| (i, j, x))),
        )))
    }

    pub fn group(&self) -> Result<FgAbelianGroup> {
        Ok(self.presentation()?.group())
    }

    fn table(&self) -> Result<BTreeMap<Rational, Vec<i64>>> {
        let n = self.generators.len();
        let mut out = BTreeMap::new();
        for (k, v) in &self.values {
            if v.len() != n {
                return Err(Error::invalid(format!("value of {k} needs {n} exponents")));
            }
            out.insert(parse_rational(k)?, v.clone());
        }
        out.entry(Rational::one()).or_insert_with(|| vec![0; n]);
        Ok(out)
    }
}

fn lookup<'a>(table: &'a BTreeMap<Rational, Vec<i64>>, x: &Rational) -> Result<&'a [i64]> {
    table.get(x).map(Vec::as_slice).ok_or_else(|| Error::invalid(format!("the units file gives no value for {x}")))
}

fn permutation_is_odd(perm: &[usize]) -> bool {
    let mut seen = vec![false; perm.len()];
    let mut transpositions = 0;
    for i in 0..perm.len() {
        let mut j = i;
        let mut len = 0;
        while !seen[j] {
            seen[j] = true;
            j = perm[j];
            len += 1;
        }
        if len > 0 {
            transpositions += len - 1;
        }
    }
    transpositions % 2 == 1
}

/// The action of a group element on edges and its `phi` and `c` values, in a
/// form shared by finite groups and `Z`.
struct GeneratorData {
    action: Vec<usize>,
    /// Column of `phi(g, e)` in `G_ab` generator coordinates.
    phi: Vec<Vec<(usize, i64)>>,
    c: Vec<Rational>,
}

fn generators_of(t: &EpTuple) -> (Presentation, Vec<GeneratorData>) {
    match t {
        EpTuple::Finite(f) => {
            let g = f.group();
            let q = g.order();
            // Z^G / (e_g + e_h - e_gh)
            let mut rels = Vec::new();
            for a in 0..q {
                for b in 0..q {
                    let mut col: BTreeMap<usize, i64> = BTreeMap::new();
                    *col.entry(a).or_default() += 1;
                    *col.entry(b).or_default() += 1;
                    *col.entry(g.mul(a, b)).or_default() -= 1;
                    rels.push(col);
                }
            }
            let pres = Presentation::new(IntMatrix::from_triplets(
                q,
                rels.len(),
                rels.iter().enumerate().flat_map(|(j, c)| c.iter().map(move |(&i, &x)| (i, j, x))),
            ));
            let ne = f.graph().edge_count();
            let data = (0..q)
                .map(|a| GeneratorData {
                    action: (0..ne).map(|e| f.act(a, e)).collect(),
                    phi: (0..ne).map(|e| vec![(f.phi(a, e), 1)]).collect(),
                    c: (0..ne).map(|e| f.c(a, e).clone()).collect(),
                })
                .collect();
            (pres, data)
        }
        EpTuple::Integers(z) => {
            let ne = z.graph().edge_count();
            let data = GeneratorData {
                action: (0..ne).map(|e| z.generator_action(e)).collect(),
                phi: (0..ne).map(|e| vec![(0, z.generator_phi(e))]).collect(),
                c: (0..ne).map(|e| z.generator_c(e).clone()).collect(),
            };
            (Presentation::free(1), vec![data])
        }
    }
}

/// `I - A^t`, `I - B^t`, `C^t` as maps of presented groups, and `I - D^t`.
#[derive(Clone, Debug)]
pub struct KMatrices {
    pub units: Presentation,
    pub gab: Presentation,
    pub i_minus_a: AbGroupMap,
    pub i_minus_b: AbGroupMap,
    pub c_t: AbGroupMap,
    pub i_minus_d: AbGroupMap,
}

impl KMatrices {
    /// Whether `C^t` is the zero map.
    pub fn c_vanishes(&self) -> bool {
        let target = &self.c_t.target().relations;
        let m = self.c_t.matrix();
        (0..m.cols()).all(|j| {
            let col: Vec<BigInt> = (0..m.rows()).map(|i| m.get(i, j)).collect();
            col.iter().all(Zero::is_zero) || Presentation::new(target.clone()).is_relation(&col)
        })
    }
}

fn kron_identity(m: &IntMatrix, k: usize) -> IntMatrix {
    IntMatrix::from_triplets(
        m.rows() * k,
        m.cols() * k,
        m.triplets().flat_map(|(r, c, v)| (0..k).map(move |i| (r * k + i, c * k + i, v.clone()))),
    )
}

fn inclusion(graph: &Graph, k: usize) -> IntMatrix {
    let (_, inc) = graph.incidence();
    kron_identity(&inc, k)
}

pub fn k_matrices(t: &EpTuple, units: &UnitsPresentation) -> Result<KMatrices> {
    let graph = t.graph();
    let reg = graph.regular();
    let nv = graph.vertex_count();
    let upres = units.presentation()?;
    let table = units.table()?;
    let nu = upres.generators();
    let (gab, gens) = generators_of(t);
    let ng = gab.generators();

    let mut b_trip: Vec<(usize, usize, i64)> = Vec::new();
    let mut c_trip: Vec<(usize, usize, i64)> = Vec::new();
    for (i, &v) in reg.iter().enumerate() {
        for (a, data) in gens.iter().enumerate() {
            let col = i * ng + a;
            for w in 0..nv {
                let block = graph.edges_between(v, w);
                if block.is_empty() {
                    continue;
                }
                let perm: Vec<usize> = block
                    .iter()
                    .map(|&e| block.iter().position(|&x| x == data.action[e]).expect("action preserves vE^1w"))
                    .collect();
                let mut exps = vec![0i64; nu];
                if permutation_is_odd(&perm) {
                    for (x, y) in exps.iter_mut().zip(lookup(&table, &-Rational::one())?) {
                        *x += y;
                    }
                }
                for &e in &block {
                    for (x, y) in exps.iter_mut().zip(lookup(&table, &data.c[e])?) {
                        *x += y;
                    }
                    for &(h, k) in &data.phi[e] {
                        b_trip.push((w * ng + h, col, k));
                    }
                }
                c_trip.extend(exps.iter().enumerate().map(|(u, &x)| (w * nu + u, col, x)));
            }
        }
    }
    let b_t = IntMatrix::from_triplets(nv * ng, reg.len() * ng, b_trip);
    let c_t = IntMatrix::from_triplets(nv * nu, reg.len() * ng, c_trip);
    let a_t = {
        let (a, _) = graph.incidence();
        kron_identity(&a.transpose(), nu)
    };
    let i_a = &inclusion(graph, nu) - &a_t;
    let i_b = &inclusion(graph, ng) - &b_t;
    let neg_c = -&c_t;
    let zero = IntMatrix::zeros(nv * ng, reg.len() * nu);
    let i_d = IntMatrix::block(&[vec![&i_a, &neg_c], vec![&zero, &i_b]])?;

    let (u_reg, u_all) = (upres.power(reg.len()), upres.power(nv));
    let (g_reg, g_all) = (gab.power(reg.len()), gab.power(nv));
    Ok(KMatrices {
        i_minus_a: AbGroupMap::new(u_reg.clone(), u_all.clone(), i_a)?,
        i_minus_b: AbGroupMap::new(g_reg.clone(), g_all.clone(), i_b)?,
        c_t: AbGroupMap::new(g_reg.clone(), u_all.clone(), c_t)?,
        i_minus_d: AbGroupMap::new(u_reg.direct_sum(&g_reg), u_all.direct_sum(&g_all), i_d)?,
        units: upres,
        gab,
    })
}

/// `K_0 = coker(I - A^t : Z^reg -> Z^{E^0})`.
pub fn k0(t: &EpTuple) -> FgAbelianGroup {
    t.graph().bowen_franks()
}

/// The outer terms of `0 -> coker(I - D^t) -> K_1 -> ker(I - A^t) -> 0`. The
/// extension itself is not computed.
#[derive(Clone, Debug, Serialize)]
pub struct K1Pieces {
    /// `coker(I - D^t)`
    pub coker: FgAbelianGroup,
    /// `ker(I - A^t)` on `Z^reg`
    pub ker: FgAbelianGroup,
}

pub fn k1_pieces(t: &EpTuple, units: &UnitsPresentation) -> Result<K1Pieces> {
    let m = k_matrices(t, units)?;
    let coker = m.i_minus_d.coker();
    let ker = FgAbelianGroup::free(crate::abgroup::kernel_basis(&t.graph().i_minus_at()).cols());
    Ok(K1Pieces { coker, ker })
}

/// `KH_n` sits in `0 -> coker_a + coker_b -> KH_n -> ker_a + ker_b -> 0` with
/// `coker_a = coker((I - A^t) (x) K_n)`, `coker_b = coker((I - B^t) (x) K_{n-1})`,
/// `ker_a = ker((I - A^t) (x) K_{n-1})`, `ker_b = ker((I - B^t) (x) K_{n-2})`.
#[derive(Clone, Debug, Serialize)]
pub struct KhLevel {
    pub degree: usize,
    pub coker_a: FgAbelianGroup,
    pub coker_b: FgAbelianGroup,
    pub ker_a: FgAbelianGroup,
    pub ker_b: FgAbelianGroup,
}

fn tensor_map(m: &IntMatrix, k: &FgAbelianGroup) -> Result<AbGroupMap> {
    let p = Presentation::of(k);
    let g = p.generators();
    AbGroupMap::new(p.power(m.cols()), p.power(m.rows()), kron_identity(m, g))
}

/// For `G = Z` and `C = 0`, given `K_0(l), K_1(l), ..`, the pieces of `KH_n`
/// for `n < k_groups.len()`. Negative K-groups of `l` are taken to be zero.
pub fn kh_sequence_z(t: &EpTuple, k_groups: &[FgAbelianGroup]) -> Result<Vec<KhLevel>> {
    let z = match t {
        EpTuple::Integers(z) => z,
        EpTuple::Finite(_) => return Err(Error::invalid("the KH sequence is implemented for G = Z only")),
    };
    let m = k_matrices(t, &UnitsPresentation::integers())?;
    if !m.c_vanishes() {
        let witness = (0..z.graph().edge_count())
            .find(|&e| !z.generator_c(e).is_one())
            .map_or_else(|| "an odd permutation of some vE^1w".to_string(), |e| format!("c(x, {}) = {}", z.graph().edge(e).name, z.generator_c(e)));
        return Err(Error::refused("C does not vanish", witness));
    }
    let i_a = t.graph().i_minus_at();
    let i_b = m.i_minus_b.matrix().clone();
    let at = |n: isize| -> FgAbelianGroup {
        if n < 0 {
            FgAbelianGroup::zero()
        } else {
            k_groups.get(n as usize).cloned().unwrap_or_else(FgAbelianGroup::zero)
        }
    };
    let mut out = Vec::with_capacity(k_groups.len());
    for n in 0..k_groups.len() {
        let n_i = n as isize;
        let ca = tensor_map(&i_a, &at(n_i))?;
        let cb = tensor_map(&i_b, &at(n_i - 1))?;
        let ka = tensor_map(&i_a, &at(n_i - 1))?;
        let kb = tensor_map(&i_b, &at(n_i - 2))?;
        out.push(KhLevel { degree: n, coker_a: ca.coker(), coker_b: cb.coker(), ker_a: ka.ker(), ker_b: kb.ker() });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::super::{FiniteTuple, IntegerTuple};
    use super::*;
    use crate::scalar::rat;

    fn z2_plus_z() -> UnitsPresentation {
        UnitsPresentation {
            generators: vec!["s".into(), "u".into()],
            relations: vec![vec![2, 0]],
            values: [("-1".to_string(), vec![1, 0]), ("2".to_string(), vec![0, 1])].into(),
        }
    }

    fn rose(n: usize) -> EpTuple {
        EpTuple::Finite(FiniteTuple::trivial(Graph::rose(n)))
    }

    #[test]
    fn roses_with_trivial_group() {
        let u = UnitsPresentation::integers();
        let pieces = |p: &K1Pieces| (p.coker.to_string(), p.ker.to_string());
        assert_eq!(k0(&rose(2)).to_string(), "0");
        assert_eq!(pieces(&k1_pieces(&rose(2), &u).unwrap()), ("0".into(), "0".into()));
        assert_eq!(k0(&rose(3)).to_string(), "Z/2");
        assert_eq!(pieces(&k1_pieces(&rose(3), &z2_plus_z()).unwrap()), ("(Z/2)^2".into(), "0".into()));
        // the 1-rose is k[x, x^-1]: pieces (U, Z)
        assert_eq!(k0(&rose(1)).to_string(), "Z");
        assert_eq!(pieces(&k1_pieces(&rose(1), &z2_plus_z()).unwrap()), ("Z + Z/2".into(), "Z".into()));
    }

    #[test]
    fn swap_has_odd_sign() {
        // G_ab = Z/2; phi = 1 makes B^t zero, so I - B^t is onto
        let m = k_matrices(&EpTuple::Finite(z2_swap()), &UnitsPresentation::integers()).unwrap();
        assert_eq!(m.gab.group().to_string(), "Z/2");
        assert_eq!(m.i_minus_b.coker().to_string(), "0");
        // the swap is an odd permutation of the two loops
        assert!(!m.c_vanishes());
    }

    #[test]
    fn permutation_parity() {
        assert!(!permutation_is_odd(&[0, 1, 2]));
        assert!(permutation_is_odd(&[1, 0, 2]));
        assert!(!permutation_is_odd(&[1, 2, 0]));
    }

    fn pieces(l: &KhLevel) -> [String; 4] {
        [&l.coker_a, &l.coker_b, &l.ker_a, &l.ker_b].map(ToString::to_string)
    }

    #[test]
    fn katsura_kh() {
        // two loops fixed by x with exponents 1 and 0: A = [2], B = [1]
        let t = EpTuple::Integers(IntegerTuple::new(Graph::rose(2), vec![0, 1], vec![1, 0], vec![rat(1); 2]).unwrap());
        let ks = [FgAbelianGroup::free(1), FgAbelianGroup::cyclic(2)];
        let kh = kh_sequence_z(&t, &ks).unwrap();
        // A-block coker(-1) = 0 on K_0; B-block coker(0) = Z on K_0 and Z/2 on K_1
        assert_eq!(pieces(&kh[0]), ["0", "0", "0", "0"]);
        assert_eq!(pieces(&kh[1]), ["0", "Z", "0", "0"]);
        let kh2 = kh_sequence_z(&t, &[ks[0].clone(), ks[1].clone(), FgAbelianGroup::zero()]).unwrap();
        assert_eq!(pieces(&kh2[2]), ["0", "Z/2", "0", "Z"]);
    }

    #[test]
    fn identity_matrices_give_full_pieces() {
        // A = B = [1]: every map is zero
        let t = EpTuple::Integers(IntegerTuple::new(Graph::rose(1), vec![0], vec![1], vec![rat(1)]).unwrap());
        let ks = [FgAbelianGroup::free(1), FgAbelianGroup::cyclic(2), FgAbelianGroup::free(1)];
        let kh = kh_sequence_z(&t, &ks).unwrap();
        for (n, l) in kh.iter().enumerate() {
            let k = |i: isize| if i < 0 { "0".to_string() } else { ks[i as usize].to_string() };
            let n = n as isize;
            assert_eq!(pieces(l), [k(n), k(n - 1), k(n - 1), k(n - 2)]);
        }
    }

    #[test]
    fn nontrivial_c_is_refused() {
        let t = EpTuple::Integers(IntegerTuple::new(Graph::rose(1), vec![0], vec![1], vec![rat(-1)]).unwrap());
        assert!(matches!(kh_sequence_z(&t, &[FgAbelianGroup::free(1)]), Err(Error::Refused { .. })));
    }
}
