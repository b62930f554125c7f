use crate::abgroup::FgAbelianGroup;
use crate::chain::ChainMap;
use crate::error::{Error, Result};
use crate::matrix::IntMatrix;

use super::{Bimodule, FinDimAlgebra, HochschildChains};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceCertificate {
    pub size: usize,
    /// `HH_k(M_n(A))` for `k < window`.
    pub matrix_side: Vec<FgAbelianGroup>,
    pub base_side: Vec<FgAbelianGroup>,
    /// Homology of the cone of the trace map, degrees `< window`.
    pub cone: Vec<FgAbelianGroup>,
}

impl TraceCertificate {
    pub fn holds(&self) -> bool {
        self.matrix_side == self.base_side && self.cone.iter().all(FgAbelianGroup::is_trivial)
    }
}

/// The generalized trace
/// `E_{i_0 j_0} a_0 ⊗ .. ⊗ E_{i_k j_k} a_k -> [j_0 = i_1, .., j_k = i_0] a_0 ⊗ .. ⊗ a_k`
/// from the absolute Hochschild complex of `M_n(A)` to that of `A`, checked to
/// be a chain map whose cone is acyclic below the window.
pub fn trace_comparison(a: &FinDimAlgebra, n: usize, window: usize) -> Result<TraceCertificate> {
    if !a.has_integer_constants() {
        return Err(Error::invalid("trace comparison needs integer structure constants"));
    }
    let m = FinDimAlgebra::matrix_algebra(a, n)?;
    let big = HochschildChains::new(&m, &Bimodule::regular(&m), window, false)?;
    let small = HochschildChains::new(a, &Bimodule::regular(a), window, false)?;
    let d = a.dim();
    let split = |b: usize| (b / d / n, b / d % n, b % d);
    let comps = (0..=window)
        .map(|k| {
            let trip = big.levels[k].iter().enumerate().filter_map(|(c, t)| {
                let parts: Vec<(usize, usize, usize)> = t.iter().map(|&b| split(b)).collect();
                let closes = (0..=k).all(|i| parts[i].1 == parts[(i + 1) % (k + 1)].0);
                closes.then(|| {
                    let img: Vec<usize> = parts.iter().map(|p| p.2).collect();
                    (small.levels[k].index_of(&img).expect("every tuple is a chain"), c, 1)
                })
            });
            IntMatrix::from_triplets(small.levels[k].len(), big.levels[k].len(), trip)
        })
        .collect();
    let source = big.complex()?;
    let target = small.complex()?;
    let tr = ChainMap::new(source.clone(), target.clone(), comps)?;
    let cone = tr.cone().homology_all();
    Ok(TraceCertificate {
        size: n,
        matrix_side: source.homology_all(),
        base_side: target.homology_all(),
        cone,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::Ring;
    use crate::group::FiniteGroup;

    #[test]
    fn size_one_is_the_identity() {
        let a = FinDimAlgebra::group_algebra(&FiniteGroup::cyclic(2), Ring::Z);
        let c = trace_comparison(&a, 1, 2).unwrap();
        assert!(c.holds());
    }

    #[test]
    fn two_by_two_over_q() {
        let q = FinDimAlgebra::group_algebra(&FiniteGroup::trivial(), Ring::Q);
        let c = trace_comparison(&q, 2, 3).unwrap();
        assert!(c.holds());
        assert_eq!(c.matrix_side[0], FgAbelianGroup::free(1));
    }
}
