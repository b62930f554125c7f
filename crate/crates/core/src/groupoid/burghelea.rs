use crate::abgroup::FgAbelianGroup;
use crate::chain::Ring;
use crate::error::Result;
use crate::group::FiniteGroup;

use super::{cyclic_nerve_module, homology_module, weight_submodule, FiniteGroupoid};

/// One summand `H(Z(eta))` of the decomposition: a nontrivial conjugacy class
/// in the isotropy group at an orbit representative.
#[derive(Clone, Debug)]
pub struct BurgheleaTerm {
    pub unit: usize,
    /// Arrow representing the class (its least member).
    pub representative: usize,
    pub class: Vec<usize>,
    pub centralizer: FiniteGroup,
    pub weight: i64,
}

/// Orbit representatives with nontrivial isotropy (least unit of each orbit),
/// and for each the nontrivial conjugacy classes with their centralizers.
pub fn burghelea_data(g: &FiniteGroupoid) -> Vec<BurgheleaTerm> {
    let mut out = Vec::new();
    for orbit in g.orbits() {
        let x = orbit[0];
        let (iso, arrows) = g.isotropy_group(x);
        if iso.order() == 1 {
            continue;
        }
        for class in iso.conjugacy_classes() {
            if class == [0] {
                continue;
            }
            let eta = class[0];
            let centralizer = iso.subgroup(&iso.centralizer(eta)).expect("centralizers are subgroups");
            out.push(BurgheleaTerm {
                unit: x,
                representative: arrows[eta],
                class: class.iter().map(|&k| arrows[k]).collect(),
                centralizer,
                weight: g.weight(arrows[eta]),
            });
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BurgheleaRow {
    pub degree: usize,
    /// Homology of the cyclic nerve complex.
    pub cyclic: FgAbelianGroup,
    /// Homology of the groupoid.
    pub groupoid: FgAbelianGroup,
    /// Homology of each centralizer, in the order of [`burghelea_data`].
    pub centralizers: Vec<FgAbelianGroup>,
    pub sum: FgAbelianGroup,
    pub equal: bool,
}

fn group_homology(g: &FiniteGroup, window: usize, ring: Ring) -> Vec<FgAbelianGroup> {
    let gg = FiniteGroupoid::from_group(g);
    homology_module(&gg, window, ring).0.hochschild_complex().homology_all()
}

fn rows(
    cyclic: Vec<FgAbelianGroup>,
    groupoid: Option<Vec<FgAbelianGroup>>,
    centralizers: Vec<Vec<FgAbelianGroup>>,
) -> Vec<BurgheleaRow> {
    (0..cyclic.len())
        .map(|n| {
            let base = groupoid.as_ref().map_or_else(FgAbelianGroup::zero, |h| h[n].clone());
            let cents: Vec<FgAbelianGroup> = centralizers.iter().map(|c| c[n].clone()).collect();
            let sum = cents.iter().fold(base.clone(), |acc, c| acc.direct_sum(c));
            BurgheleaRow {
                degree: n,
                equal: sum == cyclic[n],
                cyclic: cyclic[n].clone(),
                groupoid: base,
                centralizers: cents,
                sum,
            }
        })
        .collect()
}

/// Compares `H_n` of the cyclic nerve complex with
/// `H_n(G) ⊕ ⊕_{x, eta} H_n(Z(eta))` for `n <= window - 1`.
pub fn burghelea_compare(g: &FiniteGroupoid, window: usize, ring: Ring) -> Vec<BurgheleaRow> {
    let cyclic = cyclic_nerve_module(g, window, ring).0.hochschild_complex().homology_all();
    let groupoid = homology_module(g, window, ring).0.hochschild_complex().homology_all();
    let cents = burghelea_data(g).iter().map(|t| group_homology(&t.centralizer, window, ring)).collect();
    rows(cyclic, Some(groupoid), cents)
}

/// The weight-`m` version: the groupoid term only appears in weight 0 and a
/// centralizer term only in the weight of its class.
pub fn burghelea_graded_compare(g: &FiniteGroupoid, window: usize, ring: Ring, m: i64) -> Result<Vec<BurgheleaRow>> {
    let cyclic = weight_submodule(g, window, m, ring)?.hochschild_complex().homology_all();
    let groupoid = (m == 0).then(|| homology_module(g, window, ring).0.hochschild_complex().homology_all());
    let cents = burghelea_data(g)
        .iter()
        .filter(|t| t.weight == m)
        .map(|t| group_homology(&t.centralizer, window, ring))
        .collect();
    Ok(rows(cyclic, groupoid, cents))
}

/// `⊕_{i >= 0} H_{n - 2i}` from a list of homology groups starting in degree 0.
pub fn hc_closed_form(h: &[FgAbelianGroup], n: usize) -> FgAbelianGroup {
    (0..=n / 2).fold(FgAbelianGroup::zero(), |acc, i| acc.direct_sum(&h[n - 2 * i]))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn data_for_s3() {
        let g = FiniteGroupoid::from_group(&FiniteGroup::symmetric(3));
        let d = burghelea_data(&g);
        let orders: Vec<usize> = d.iter().map(|t| t.centralizer.order()).collect();
        assert_eq!(orders, [2, 3]);
        assert!(burghelea_data(&FiniteGroupoid::pair(3)).is_empty());
    }

    #[test]
    fn z2_degree_one() {
        let g = FiniteGroupoid::from_group(&FiniteGroup::cyclic(2));
        let rows = burghelea_compare(&g, 3, Ring::Z);
        assert!(rows.iter().all(|r| r.equal));
        assert_eq!(rows[1].cyclic.to_string(), "(Z/2)^2");
    }

    #[test]
    fn closed_form_for_point() {
        let h = vec![FgAbelianGroup::free(1), FgAbelianGroup::zero(), FgAbelianGroup::zero(), FgAbelianGroup::zero()];
        let hc: Vec<String> = (0..4).map(|n| hc_closed_form(&h, n).to_string()).collect();
        assert_eq!(hc, ["Z", "0", "Z", "0"]);
    }
}
