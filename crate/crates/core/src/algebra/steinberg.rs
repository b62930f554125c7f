use crate::chain::Ring;
use crate::error::Result;
use crate::groupoid::{cyclic_nerve_module, Cocycle2, FiniteGroupoid};
use crate::matrix::IntMatrix;
use super::{cyclic_module, Elem, FinDimAlgebra};

/// Convolution algebra of a finite groupoid: basis element `k` is the
/// indicator of arrow `k`, and `χ_g χ_h = χ_{gh}` when composable.
pub fn steinberg_algebra(g: &FiniteGroupoid, ring: Ring) -> FinDimAlgebra {
    twisted_steinberg(g, &Cocycle2::trivial(), ring).expect("untwisted product is associative")
}

/// `χ_g χ_h = ω(g, h) χ_{gh}`.
pub fn twisted_steinberg(g: &FiniteGroupoid, w: &Cocycle2, ring: Ring) -> Result<FinDimAlgebra> {
    let n = g.arrow_count();
    let table = (0..n)
        .map(|a| {
            (0..n)
                .map(|b| match g.compose(a, b) {
                    Some(ab) => Elem::from([(ab, w.value(a, b))]),
                    None => Elem::new(),
                })
                .collect()
        })
        .collect();
    let labels = (0..n).map(|a| g.arrow_name(a).to_string()).collect();
    let diagonal = (0..g.unit_count()).map(|x| g.unit_arrow(x)).collect();
    FinDimAlgebra::new(ring, labels, table, diagonal)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MuDegree {
    pub degree: usize,
    pub rank: usize,
    pub bijective: bool,
    pub faces_commute: bool,
    pub cyclic_commutes: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MuCertificate {
    pub degrees: Vec<MuDegree>,
}

impl MuCertificate {
    pub fn holds(&self) -> bool {
        self.degrees.iter().all(|d| d.bijective && d.faces_commute && d.cyclic_commutes)
    }
}

fn is_permutation(m: &IntMatrix) -> bool {
    m.rows() == m.cols()
        && m.columns().all(|c| c.len() == 1 && c[0].1 == 1.into())
        && m.transpose().columns().all(|c| c.len() == 1)
}

/// Compares the relative cyclic module of the Steinberg algebra with the
/// cyclic nerve module through `μ(φ_0 ⊗ .. ⊗ φ_n)(h_0, .., h_n) = φ_0(h_0) .. φ_n(h_n)`,
/// evaluated on every cyclically composable tuple.
pub fn mu_comparison(g: &FiniteGroupoid, window: usize) -> Result<MuCertificate> {
    let alg = steinberg_algebra(g, Ring::Z);
    let (rel, rel_levels) = cyclic_module(&alg, window, true)?;
    let (cyc, cyc_levels) = cyclic_nerve_module(g, window, Ring::Z);
    // basis element k is the indicator of arrow k, so the product of the
    // evaluations is 1 exactly on the tuple of arrows (phi_0, .., phi_n)
    let mut mus = Vec::with_capacity(window + 1);
    for n in 0..=window {
        let mut trip = Vec::new();
        for (c, phi) in rel_levels[n].iter().enumerate() {
            if let Some(r) = cyc_levels[n].index_of(phi) {
                trip.push((r, c, 1));
            }
        }
        mus.push(IntMatrix::from_triplets(cyc_levels[n].len(), rel_levels[n].len(), trip));
    }
    let degrees = (0..=window)
        .map(|n| {
            let mu = &mus[n];
            let faces_commute = n == 0 || (0..=n).all(|i| &mus[n - 1] * rel.face(n, i) == cyc.face(n, i) * mu);
            MuDegree {
                degree: n,
                rank: mu.cols(),
                bijective: is_permutation(mu),
                faces_commute,
                cyclic_commutes: mu * rel.cyclic_operator(n) == cyc.cyclic_operator(n) * mu,
            }
        })
        .collect();
    Ok(MuCertificate { degrees })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{hochschild_complex, relative_hochschild_complex, Bimodule};
    use crate::group::FiniteGroup;
    use crate::scalar::rat;

    #[test]
    fn pair_groupoid_is_m2() {
        let a = steinberg_algebra(&FiniteGroupoid::pair(2), Ring::Z);
        assert_eq!(a.dim(), 4);
        assert_eq!(a.diagonal().len(), 2);
        let b = FiniteGroupoid::disjoint_union(&[FiniteGroupoid::point(), FiniteGroupoid::pair(2)]).unwrap();
        assert_eq!(steinberg_algebra(&b, Ring::Z).dim(), 5);
    }

    #[test]
    fn gaussian_integers() {
        let g = FiniteGroupoid::from_group(&FiniteGroup::cyclic(2));
        let w = Cocycle2::new(&g, vec![(1, 1, rat(-1))], Ring::Z).unwrap();
        let a = twisted_steinberg(&g, &w, Ring::Z).unwrap();
        assert_eq!(a.product(1, 1), &Elem::from([(0, rat(-1))]));
    }

    #[test]
    fn mu_on_small_groupoids() {
        for g in [FiniteGroupoid::point(), FiniteGroupoid::pair(2), FiniteGroupoid::from_group(&FiniteGroup::cyclic(3))] {
            let cert = mu_comparison(&g, 3).unwrap();
            assert!(cert.holds(), "{cert:?}");
        }
    }

    #[test]
    fn relative_and_absolute_agree_for_pair() {
        let a = steinberg_algebra(&FiniteGroupoid::pair(2), Ring::Z);
        let m = Bimodule::regular(&a);
        let abs = hochschild_complex(&a, &m, 3).unwrap();
        let rel = relative_hochschild_complex(&a, &m, 3).unwrap();
        assert_eq!(rel.ranks(), &[2, 4, 8, 16]);
        assert_eq!(abs.ranks(), &[4, 16, 64, 256]);
        assert_eq!(abs.homology_all(), rel.homology_all());
    }
}
