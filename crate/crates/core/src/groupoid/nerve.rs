use std::collections::HashMap;

use crate::chain::{Ring, SemicyclicModule};
use crate::error::{Error, Result};
use crate::matrix::IntMatrix;

use super::FiniteGroupoid;

/// Tuples of arrows in a fixed (lexicographic) order, with reverse lookup.
#[derive(Clone, Debug)]
pub struct TupleIndex {
    tuples: Vec<Vec<usize>>,
    pos: HashMap<Vec<usize>, usize>,
}

impl TupleIndex {
    pub fn new(tuples: Vec<Vec<usize>>) -> Self {
        let pos = tuples.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect();
        TupleIndex { tuples, pos }
    }

    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }

    pub fn get(&self, i: usize) -> &[usize] {
        &self.tuples[i]
    }

    pub fn iter(&self) -> impl Iterator<Item = &[usize]> {
        self.tuples.iter().map(Vec::as_slice)
    }

    pub fn index_of(&self, t: &[usize]) -> Option<usize> {
        self.pos.get(t).copied()
    }
}

/// Composable strings `(g_1, .., g_n)` with `s(g_i) = r(g_{i+1})`; lexicographic.
fn composable_strings(g: &FiniteGroupoid, len: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(len);
    fn go(g: &FiniteGroupoid, len: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for a in 0..g.arrow_count() {
            if cur.last().map_or(true, |&p| g.source(p) == g.range(a)) {
                cur.push(a);
                go(g, len, cur, out);
                cur.pop();
            }
        }
    }
    go(g, len, &mut cur, &mut out);
    out
}

/// Degree `n` of the nerve. Degree 0 lists the units as one-element tuples of
/// their identity arrows.
pub fn nerve(g: &FiniteGroupoid, n: usize) -> TupleIndex {
    if n == 0 {
        return TupleIndex::new((0..g.unit_count()).map(|x| vec![g.unit_arrow(x)]).collect());
    }
    TupleIndex::new(composable_strings(g, n))
}

/// Degree `n` of the cyclic nerve: `(g_0, .., g_n)` composable with `s(g_n) = r(g_0)`.
pub fn cyclic_nerve(g: &FiniteGroupoid, n: usize) -> TupleIndex {
    let all = composable_strings(g, n + 1);
    TupleIndex::new(all.into_iter().filter(|t| g.source(t[n]) == g.range(t[0])).collect())
}

/// Matrix of a map sending each basis tuple to `sign * image tuple`.
fn tuple_map(rows: &TupleIndex, cols: &TupleIndex, sign: i64, f: impl Fn(&[usize]) -> Vec<usize>) -> IntMatrix {
    let trip = cols.iter().enumerate().map(|(c, t)| {
        let img = f(t);
        let r = rows.index_of(&img).unwrap_or_else(|| panic!("image {img:?} of {t:?} is not a basis tuple"));
        (r, c, sign)
    });
    IntMatrix::from_triplets(rows.len(), cols.len(), trip)
}

fn merge(g: &FiniteGroupoid, t: &[usize], i: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(t.len() - 1);
    out.extend_from_slice(&t[..i]);
    out.push(g.compose(t[i], t[i + 1]).expect("adjacent arrows compose"));
    out.extend_from_slice(&t[i + 2..]);
    out
}

fn sign(n: usize) -> i64 {
    if n % 2 == 0 {
        1
    } else {
        -1
    }
}

/// The nerve as a semicyclic module: simplicial faces and
/// `t_n (g_1, .., g_n) = (-1)^n ((g_1 .. g_n)^{-1}, g_1, .., g_{n-1})`.
/// Its Hochschild complex computes groupoid homology.
pub fn homology_module(g: &FiniteGroupoid, window: usize, ring: Ring) -> (SemicyclicModule, Vec<TupleIndex>) {
    let levels: Vec<TupleIndex> = (0..=window).map(|n| nerve(g, n)).collect();
    let mut faces = vec![Vec::new()];
    let mut cyclic = vec![IntMatrix::identity(levels[0].len())];
    for n in 1..=window {
        let (src, dst) = (&levels[n], &levels[n - 1]);
        let mut fs = Vec::with_capacity(n + 1);
        for i in 0..=n {
            let m = tuple_map(dst, src, 1, |t| {
                if n == 1 {
                    vec![g.unit_arrow(if i == 0 { g.source(t[0]) } else { g.range(t[0]) })]
                } else if i == 0 {
                    t[1..].to_vec()
                } else if i == n {
                    t[..n - 1].to_vec()
                } else {
                    merge(g, t, i - 1)
                }
            });
            fs.push(m);
        }
        faces.push(fs);
        cyclic.push(tuple_map(src, src, sign(n), |t| {
            let mut out = vec![g.inverse(g.product(t).expect("composable"))];
            out.extend_from_slice(&t[..n - 1]);
            out
        }));
    }
    let ranks = levels.iter().map(TupleIndex::len).collect();
    let m = SemicyclicModule::new(ring, ranks, faces, cyclic).expect("nerve module shapes");
    (m, levels)
}

/// The cyclic nerve as a semicyclic module; its Hochschild complex is the
/// cyclic nerve complex.
pub fn cyclic_nerve_module(g: &FiniteGroupoid, window: usize, ring: Ring) -> (SemicyclicModule, Vec<TupleIndex>) {
    let levels: Vec<TupleIndex> = (0..=window).map(|n| cyclic_nerve(g, n)).collect();
    let mut faces = vec![Vec::new()];
    let mut cyclic = vec![IntMatrix::identity(levels[0].len())];
    for n in 1..=window {
        let (src, dst) = (&levels[n], &levels[n - 1]);
        let mut fs = Vec::with_capacity(n + 1);
        for i in 0..n {
            fs.push(tuple_map(dst, src, 1, |t| merge(g, t, i)));
        }
        fs.push(tuple_map(dst, src, 1, |t| {
            let mut out = vec![g.compose(t[n], t[0]).expect("cyclic tuple closes up")];
            out.extend_from_slice(&t[1..n]);
            out
        }));
        faces.push(fs);
        cyclic.push(tuple_map(src, src, sign(n), |t| {
            let mut out = vec![t[n]];
            out.extend_from_slice(&t[..n]);
            out
        }));
    }
    let ranks = levels.iter().map(TupleIndex::len).collect();
    let m = SemicyclicModule::new(ring, ranks, faces, cyclic).expect("cyclic nerve shapes");
    (m, levels)
}

fn check_invariant_subset(g: &FiniteGroupoid, w: &[usize]) -> Result<()> {
    for &x in w {
        if g.source(x) != g.range(x) {
            return Err(Error::invalid(format!("{} is not an isotropy arrow", g.arrow_name(x))));
        }
        for h in 0..g.arrow_count() {
            if g.source(h) == g.range(x) {
                let c = g.compose(g.compose(h, x).unwrap(), g.inverse(h)).unwrap();
                if !w.contains(&c) {
                    return Err(Error::invalid(format!(
                        "subset is not closed under conjugation: {} moves {} outside",
                        g.arrow_name(h),
                        g.arrow_name(x)
                    )));
                }
            }
        }
    }
    Ok(())
}

/// Splits the cyclic nerve module along a conjugation-invariant set `W` of
/// isotropy arrows: tuples whose product lies in `W`, and the rest.
pub fn invariant_subset_split(
    g: &FiniteGroupoid,
    w: &[usize],
    window: usize,
    ring: Ring,
) -> Result<(SemicyclicModule, SemicyclicModule)> {
    check_invariant_subset(g, w)?;
    let (m, levels) = cyclic_nerve_module(g, window, ring);
    let mut inside = Vec::new();
    let mut outside = Vec::new();
    for lvl in &levels {
        let (a, b): (Vec<usize>, Vec<usize>) =
            (0..lvl.len()).partition(|&i| w.contains(&g.product(lvl.get(i)).unwrap()));
        inside.push(a);
        outside.push(b);
    }
    Ok((m.restrict(&inside)?, m.restrict(&outside)?))
}

/// Checks that `(g_1, .., g_n) -> ((g_1 .. g_n)^{-1}, g_1, .., g_n)` is an
/// isomorphism of semicyclic modules from the nerve onto the part of the cyclic
/// nerve with product in the units.
pub fn gamma_units_iso(g: &FiniteGroupoid, window: usize) -> Result<()> {
    let (h, h_levels) = homology_module(g, window, Ring::Z);
    let (cyc, c_levels) = cyclic_nerve_module(g, window, Ring::Z);
    let units: Vec<usize> = (0..g.unit_count()).map(|x| g.unit_arrow(x)).collect();
    let keep: Vec<Vec<usize>> = c_levels
        .iter()
        .map(|lvl| (0..lvl.len()).filter(|&i| units.contains(&g.product(lvl.get(i)).unwrap())).collect())
        .collect();
    let gamma = cyc.restrict(&keep)?;
    let mut maps = Vec::new();
    for n in 0..=window {
        let pos: HashMap<usize, usize> = keep[n].iter().enumerate().map(|(i, b)| (*b, i)).collect();
        let mut trip = Vec::new();
        for (c, t) in h_levels[n].iter().enumerate() {
            let img = if n == 0 {
                t.to_vec()
            } else {
                let mut v = vec![g.inverse(g.product(t).unwrap())];
                v.extend_from_slice(t);
                v
            };
            let full = c_levels[n].index_of(&img).ok_or_else(|| Error::invalid("image is not cyclically composable"))?;
            let r = *pos.get(&full).ok_or_else(|| Error::invalid("image product is not a unit"))?;
            trip.push((r, c, 1));
        }
        let f = IntMatrix::from_triplets(keep[n].len(), h_levels[n].len(), trip);
        if f.rows() != f.cols() || f.transpose().checked_mul(&f)? != IntMatrix::identity(f.cols()) {
            return Err(Error::invalid(format!("comparison map is not bijective in degree {n}")));
        }
        maps.push(f);
    }
    for n in 0..=window {
        if &maps[n] * h.cyclic_operator(n) != gamma.cyclic_operator(n) * &maps[n] {
            return Err(Error::SemicyclicIdentity { identity: "f t = t f".into(), degree: n });
        }
        if n == 0 {
            continue;
        }
        for i in 0..=n {
            if &maps[n - 1] * h.face(n, i) != gamma.face(n, i) * &maps[n] {
                return Err(Error::SemicyclicIdentity { identity: format!("f d_{i} = d_{i} f"), degree: n });
            }
        }
    }
    Ok(())
}

/// The weight-`m` part of the cyclic nerve module of a graded groupoid.
/// Fails if some structure map does not preserve weight.
pub fn weight_submodule(g: &FiniteGroupoid, window: usize, m: i64, ring: Ring) -> Result<SemicyclicModule> {
    if g.grading().is_none() {
        return Err(Error::invalid("groupoid carries no grading"));
    }
    let (module, levels) = cyclic_nerve_module(g, window, ring);
    let keep: Vec<Vec<usize>> = levels
        .iter()
        .map(|lvl| (0..lvl.len()).filter(|&i| lvl.get(i).iter().map(|&a| g.weight(a)).sum::<i64>() == m).collect())
        .collect();
    module.restrict(&keep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;

    #[test]
    fn cyclic_nerve_sizes() {
        let s3 = FiniteGroupoid::from_group(&FiniteGroup::symmetric(3));
        assert_eq!(cyclic_nerve(&s3, 2).len(), 216);
        let p2 = FiniteGroupoid::pair(2);
        for n in 0..4 {
            assert_eq!(cyclic_nerve(&p2, n).len(), 2usize.pow(n as u32 + 1));
            assert_eq!(nerve(&p2, n).len(), 2usize.pow(n as u32 + 1));
        }
    }

    #[test]
    fn modules_satisfy_identities() {
        for g in [
            FiniteGroupoid::from_group(&FiniteGroup::cyclic(3)),
            FiniteGroupoid::pair(2),
            FiniteGroupoid::from_group(&FiniteGroup::symmetric(3)),
        ] {
            homology_module(&g, 3, Ring::Z).0.validate().unwrap();
            cyclic_nerve_module(&g, 3, Ring::Z).0.validate().unwrap();
            gamma_units_iso(&g, 3).unwrap();
        }
    }

    #[test]
    fn cyclic_group_homology() {
        let z2 = FiniteGroupoid::from_group(&FiniteGroup::cyclic(2));
        let h: Vec<String> = homology_module(&z2, 4, Ring::Z).0.hochschild_complex().homology_all().iter().map(|x| x.to_string()).collect();
        assert_eq!(h, ["Z", "Z/2", "0", "Z/2"]);
    }

    #[test]
    fn split_off_units() {
        let z2 = FiniteGroupoid::from_group(&FiniteGroup::cyclic(2));
        let (inside, outside) = invariant_subset_split(&z2, &[0], 3, Ring::Z).unwrap();
        assert_eq!(inside.ranks(), &[1, 2, 4, 8]);
        assert_eq!(outside.ranks(), &[1, 2, 4, 8]);
        assert!(invariant_subset_split(&FiniteGroupoid::from_group(&FiniteGroup::symmetric(3)), &[1], 2, Ring::Z).is_err());
    }
}
