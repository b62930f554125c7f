//! Finite discrete groupoids: nerves, cyclic nerves and the decomposition of
//! the cyclic nerve complex along conjugacy classes of isotropy.

mod burghelea;
mod nerve;
mod twisted;

use std::collections::{BTreeMap, HashMap};

use serde::Deserialize;

use crate::chain::Ring;
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupSpec};
use crate::scalar::JsonRational;

pub use burghelea::{
    burghelea_compare, burghelea_data, burghelea_graded_compare, hc_closed_form, BurgheleaRow, BurgheleaTerm,
};
pub use nerve::{
    cyclic_nerve, cyclic_nerve_module, gamma_units_iso, homology_module, invariant_subset_split, nerve,
    weight_submodule, TupleIndex,
};
pub use twisted::{twisted_cyclic_nerve_complex, Cocycle2};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroupoid {
    unit_names: Vec<String>,
    arrow_names: Vec<String>,
    src: Vec<usize>,
    rng: Vec<usize>,
    unit_arrow: Vec<usize>,
    comp: Vec<Vec<Option<usize>>>,
    inv: Vec<usize>,
    grading: Option<Vec<i64>>,
}

impl FiniteGroupoid {
    /// Full tables: arrows `0..units.len()` are the identities of the units in
    /// order, `comp[g][h]` is `Some(gh)` exactly when `s(g) = r(h)`.
    pub fn from_tables(
        unit_names: Vec<String>,
        arrow_names: Vec<String>,
        src: Vec<usize>,
        rng: Vec<usize>,
        comp: Vec<Vec<Option<usize>>>,
    ) -> Result<Self> {
        let na = arrow_names.len();
        let nu = unit_names.len();
        let unit_arrow: Vec<usize> = (0..nu).collect();
        if nu == 0 || na < nu || src.len() != na || rng.len() != na || comp.len() != na {
            return Err(Error::invalid("groupoid tables have inconsistent sizes"));
        }
        if comp.iter().any(|row| row.len() != na || row.iter().flatten().any(|&x| x >= na))
            || src.iter().chain(&rng).any(|&x| x >= nu)
        {
            return Err(Error::invalid("groupoid tables refer to unknown arrows or units"));
        }
        let mut sorted = arrow_names.clone();
        sorted.sort();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::invalid("arrow and unit names must be distinct"));
        }
        for x in 0..nu {
            if src[x] != x || rng[x] != x {
                return Err(Error::invalid(format!("identity of {} has the wrong endpoints", unit_names[x])));
            }
        }
        for g in 0..na {
            if comp[rng[g]][g] != Some(g) || comp[g][src[g]] != Some(g) {
                return Err(Error::invalid(format!("identities do not act trivially on {}", arrow_names[g])));
            }
            for h in 0..na {
                if comp[g][h].is_some() != (src[g] == rng[h]) {
                    return Err(Error::invalid(format!(
                        "{} {} must be defined exactly when the arrows are composable",
                        arrow_names[g], arrow_names[h]
                    )));
                }
                if let Some(gh) = comp[g][h] {
                    if src[gh] != src[h] || rng[gh] != rng[g] {
                        return Err(Error::invalid(format!(
                            "{} {} has the wrong endpoints",
                            arrow_names[g], arrow_names[h]
                        )));
                    }
                }
            }
        }
        for a in 0..na {
            for b in 0..na {
                let Some(ab) = comp[a][b] else { continue };
                for c in 0..na {
                    let Some(bc) = comp[b][c] else { continue };
                    if comp[ab][c] != comp[a][bc] {
                        return Err(Error::invalid(format!(
                            "composition is not associative at ({}, {}, {})",
                            arrow_names[a], arrow_names[b], arrow_names[c]
                        )));
                    }
                }
            }
        }
        let mut inv = Vec::with_capacity(na);
        for g in 0..na {
            let found = (0..na).find(|&h| {
                comp[g][h] == Some(unit_arrow[rng[g]]) && comp[h][g] == Some(unit_arrow[src[g]])
            });
            match found {
                Some(h) => inv.push(h),
                None => return Err(Error::invalid(format!("{} has no inverse", arrow_names[g]))),
            }
        }
        Ok(FiniteGroupoid { unit_names, arrow_names, src, rng, unit_arrow, comp, inv, grading: None })
    }

    /// A group as a groupoid with one unit; arrow `k` is group element `k`.
    pub fn from_group(g: &FiniteGroup) -> Self {
        let n = g.order();
        let names: Vec<String> = (0..n).map(|k| if k == 0 { "*".to_string() } else { g.label(k).to_string() }).collect();
        let comp = (0..n).map(|a| (0..n).map(|b| Some(g.mul(a, b))).collect()).collect();
        Self::from_tables(vec!["*".into()], names, vec![0; n], vec![0; n], comp).expect("groups are groupoids")
    }

    pub fn point() -> Self {
        Self::from_group(&FiniteGroup::trivial())
    }

    /// Pair groupoid on `n` points: one arrow `x <- y` for every ordered pair.
    pub fn pair(n: usize) -> Self {
        let units: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
        let mut names = units.clone();
        let mut src: Vec<usize> = (0..n).collect();
        let mut rng = src.clone();
        let mut arrow_of: HashMap<(usize, usize), usize> = (0..n).map(|x| ((x, x), x)).collect();
        for r in 0..n {
            for s in 0..n {
                if r != s {
                    arrow_of.insert((r, s), names.len());
                    names.push(format!("x{r}<x{s}"));
                    src.push(s);
                    rng.push(r);
                }
            }
        }
        let na = names.len();
        let comp = (0..na)
            .map(|a| (0..na).map(|b| (src[a] == rng[b]).then(|| arrow_of[&(rng[a], src[b])])).collect())
            .collect();
        Self::from_tables(units, names, src, rng, comp).expect("pair groupoid is valid")
    }

    pub fn disjoint_union(parts: &[FiniteGroupoid]) -> Result<Self> {
        let mut unit_names = Vec::new();
        let mut names = Vec::new();
        let mut src = Vec::new();
        let mut rng = Vec::new();
        let mut offsets = Vec::new();
        let mut grading = Vec::new();
        // a name used by several parts becomes `name@i` in part `i`
        let mut uses: HashMap<&str, usize> = HashMap::new();
        for p in parts {
            for n in p.unit_names.iter().chain(&p.arrow_names).collect::<std::collections::BTreeSet<_>>() {
                *uses.entry(n.as_str()).or_default() += 1;
            }
        }
        let rename = |pi: usize, n: &str| if uses[n] > 1 { format!("{n}@{pi}") } else { n.to_string() };
        // units first so that unit arrow k is unit k
        let mut unit_off = 0;
        for (pi, p) in parts.iter().enumerate() {
            offsets.push(unit_off);
            for (k, u) in p.unit_names.iter().enumerate() {
                unit_names.push(rename(pi, u));
                names.push(rename(pi, &p.arrow_names[p.unit_arrow[k]]));
                src.push(unit_off + k);
                rng.push(unit_off + k);
            }
            unit_off += p.unit_count();
        }
        let mut arrow_maps = Vec::new();
        for (pi, p) in parts.iter().enumerate() {
            let mut map = vec![0; p.arrow_count()];
            for (k, &ua) in p.unit_arrow.iter().enumerate() {
                map[ua] = offsets[pi] + k;
            }
            for a in 0..p.arrow_count() {
                if p.is_unit_arrow(a) {
                    continue;
                }
                map[a] = names.len();
                names.push(rename(pi, &p.arrow_names[a]));
                src.push(offsets[pi] + p.src[a]);
                rng.push(offsets[pi] + p.rng[a]);
            }
            arrow_maps.push(map);
        }
        let na = names.len();
        grading.resize(na, 0);
        let mut comp = vec![vec![None; na]; na];
        for (pi, p) in parts.iter().enumerate() {
            let m = &arrow_maps[pi];
            for a in 0..p.arrow_count() {
                if let Some(w) = &p.grading {
                    grading[m[a]] = w[a];
                }
                for b in 0..p.arrow_count() {
                    if let Some(ab) = p.comp[a][b] {
                        comp[m[a]][m[b]] = Some(m[ab]);
                    }
                }
            }
        }
        let mut g = Self::from_tables(unit_names, names, src, rng, comp)?;
        if parts.iter().any(|p| p.grading.is_some()) {
            g.grading = Some(grading);
        }
        Ok(g)
    }

    /// Attaches a grading (a homomorphism to Z) after checking it is one.
    pub fn with_grading(mut self, weights: Vec<i64>) -> Result<Self> {
        if weights.len() != self.arrow_count() {
            return Err(Error::invalid("grading must give a weight to every arrow"));
        }
        for g in 0..self.arrow_count() {
            for h in 0..self.arrow_count() {
                if let Some(gh) = self.comp[g][h] {
                    if weights[gh] != weights[g] + weights[h] {
                        return Err(Error::invalid(format!(
                            "grading is not additive on {} {}",
                            self.arrow_names[g], self.arrow_names[h]
                        )));
                    }
                }
            }
        }
        self.grading = Some(weights);
        Ok(self)
    }

    pub fn unit_count(&self) -> usize {
        self.unit_names.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrow_names.len()
    }

    pub fn unit_name(&self, x: usize) -> &str {
        &self.unit_names[x]
    }

    pub fn arrow_name(&self, g: usize) -> &str {
        &self.arrow_names[g]
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrow_names.iter().position(|n| n == name)
    }

    pub fn source(&self, g: usize) -> usize {
        self.src[g]
    }

    pub fn range(&self, g: usize) -> usize {
        self.rng[g]
    }

    pub fn unit_arrow(&self, x: usize) -> usize {
        self.unit_arrow[x]
    }

    pub fn is_unit_arrow(&self, g: usize) -> bool {
        self.unit_arrow[self.src[g]] == g
    }

    /// `gh`, defined when `s(g) = r(h)`.
    pub fn compose(&self, g: usize, h: usize) -> Option<usize> {
        self.comp[g][h]
    }

    pub fn inverse(&self, g: usize) -> usize {
        self.inv[g]
    }

    /// Product of a composable tuple.
    pub fn product(&self, tuple: &[usize]) -> Option<usize> {
        let (first, rest) = tuple.split_first()?;
        rest.iter().try_fold(*first, |acc, &g| self.compose(acc, g))
    }

    pub fn grading(&self) -> Option<&[i64]> {
        self.grading.as_deref()
    }

    pub fn weight(&self, g: usize) -> i64 {
        self.grading.as_ref().map_or(0, |w| w[g])
    }

    /// Arrows with equal source and range.
    pub fn isotropy_arrows(&self) -> Vec<usize> {
        (0..self.arrow_count()).filter(|&g| self.src[g] == self.rng[g]).collect()
    }

    pub fn is_principal(&self) -> bool {
        self.isotropy_arrows().iter().all(|&g| self.is_unit_arrow(g))
    }

    /// Isotropy group at `x`, with the unit arrow as identity; also returns the
    /// arrow behind each group element.
    pub fn isotropy_group(&self, x: usize) -> (FiniteGroup, Vec<usize>) {
        let mut arrows: Vec<usize> = (0..self.arrow_count()).filter(|&g| self.src[g] == x && self.rng[g] == x).collect();
        arrows.sort_by_key(|&g| (g != self.unit_arrow[x], g));
        let pos: HashMap<usize, usize> = arrows.iter().enumerate().map(|(i, g)| (*g, i)).collect();
        let table = arrows
            .iter()
            .map(|&a| arrows.iter().map(|&b| pos[&self.comp[a][b].expect("isotropy arrows compose")]).collect())
            .collect();
        let labels = arrows.iter().map(|&g| self.arrow_names[g].clone()).collect();
        (FiniteGroup::from_table(labels, table).expect("isotropy is a group"), arrows)
    }

    /// Units grouped into orbits; each orbit sorted, orbits ordered by least unit.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let n = self.unit_count();
        let mut label: Vec<usize> = (0..n).collect();
        fn find(l: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while l[r] != r {
                r = l[r];
            }
            l[x] = r;
            r
        }
        for g in 0..self.arrow_count() {
            let (a, b) = (find(&mut label, self.src[g]), find(&mut label, self.rng[g]));
            if a != b {
                let (lo, hi) = (a.min(b), a.max(b));
                label[hi] = lo;
            }
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for x in 0..n {
            let r = find(&mut label, x);
            groups.entry(r).or_default().push(x);
        }
        groups.into_values().collect()
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let spec: GroupoidSpec = serde_json::from_str(s).map_err(|e| Error::invalid(e.to_string()))?;
        spec.build()
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrowSpec {
    pub name: String,
    pub s: String,
    pub r: String,
}

/// JSON form of a groupoid: a preset, a disjoint union, or explicit units,
/// arrows and composition triples `[g, h, gh]` for non-identity `g`, `h`.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupoidSpec {
    pub preset: Option<String>,
    pub points: Option<usize>,
    pub group: Option<GroupSpec>,
    pub disjoint_union: Option<Vec<GroupoidSpec>>,
    pub units: Option<Vec<String>>,
    pub arrows: Option<Vec<ArrowSpec>>,
    pub compose: Option<Vec<[String; 3]>>,
    /// Weight of each arrow; arrows left out have weight 0.
    pub grading: Option<BTreeMap<String, i64>>,
    /// Values `[g, h, omega(g, h)]`; pairs left out get 1.
    pub cocycle: Option<Vec<(String, String, JsonRational)>>,
}

impl GroupoidSpec {
    /// The cocycle table validated against `g`; `None` when no table is given.
    pub fn build_cocycle(&self, g: &FiniteGroupoid, ring: Ring) -> Result<Option<Cocycle2>> {
        let Some(entries) = &self.cocycle else { return Ok(None) };
        let e: Vec<_> = entries.iter().map(|(a, b, v)| (a.clone(), b.clone(), v.0.clone())).collect();
        Cocycle2::from_names(g, &e, ring).map(Some)
    }

    pub fn build(&self) -> Result<FiniteGroupoid> {
        let g = match (&self.preset, &self.disjoint_union, &self.units) {
            (Some(p), None, None) => match p.as_str() {
                "point" => FiniteGroupoid::point(),
                "pair" => FiniteGroupoid::pair(self.points.ok_or_else(|| Error::invalid("pair preset needs points"))?),
                "group" => FiniteGroupoid::from_group(
                    &self.group.as_ref().ok_or_else(|| Error::invalid("group preset needs a group"))?.build()?,
                ),
                other => return Err(Error::invalid(format!("unknown groupoid preset {other:?}"))),
            },
            (None, Some(parts), None) => {
                let built = parts.iter().map(GroupoidSpec::build).collect::<Result<Vec<_>>>()?;
                FiniteGroupoid::disjoint_union(&built)?
            }
            (None, None, Some(units)) => {
                let nu = units.len();
                let arrows = self.arrows.clone().unwrap_or_default();
                let mut names = units.clone();
                names.extend(arrows.iter().map(|a| a.name.clone()));
                let index = |s: &str| names.iter().position(|n| n == s);
                let unit_idx =
                    |s: &str| units.iter().position(|u| u == s).ok_or_else(|| Error::invalid(format!("unknown unit {s:?}")));
                let mut src: Vec<usize> = (0..nu).collect();
                let mut rng = src.clone();
                for a in &arrows {
                    src.push(unit_idx(&a.s)?);
                    rng.push(unit_idx(&a.r)?);
                }
                let mut table = HashMap::new();
                for [g, h, gh] in self.compose.clone().unwrap_or_default() {
                    let find = |s: &str| index(s).ok_or_else(|| Error::invalid(format!("unknown arrow {s:?}")));
                    table.insert((find(&g)?, find(&h)?), find(&gh)?);
                }
                let na = names.len();
                let mut comp = vec![vec![None; na]; na];
                for a in 0..na {
                    for b in 0..na {
                        if src[a] != rng[b] {
                            continue;
                        }
                        comp[a][b] = Some(if a < nu {
                            b
                        } else if b < nu {
                            a
                        } else {
                            *table.get(&(a, b)).ok_or_else(|| {
                                Error::invalid(format!("composition {} {} is missing", names[a], names[b]))
                            })?
                        });
                    }
                }
                FiniteGroupoid::from_tables(units.clone(), names, src, rng, comp)?
            }
            _ => {
                return Err(Error::invalid(
                    "groupoid must give exactly one of preset, disjoint_union or units",
                ))
            }
        };
        match &self.grading {
            None => Ok(g),
            Some(map) => {
                let mut w = vec![0; g.arrow_count()];
                for (name, v) in map {
                    let a = g.arrow_index(name).ok_or_else(|| Error::invalid(format!("unknown arrow {name:?}")))?;
                    w[a] = *v;
                }
                g.with_grading(w)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_groupoid_shape() {
        let g = FiniteGroupoid::pair(3);
        assert_eq!(g.unit_count(), 3);
        assert_eq!(g.arrow_count(), 9);
        assert!(g.is_principal());
        assert_eq!(g.orbits(), vec![vec![0, 1, 2]]);
        let a = g.arrow_index("x0<x1").unwrap();
        let b = g.arrow_index("x1<x2").unwrap();
        assert_eq!(g.compose(a, b), g.arrow_index("x0<x2"));
        assert_eq!(g.compose(b, a), None);
        assert_eq!(g.compose(a, g.inverse(a)), Some(g.unit_arrow(0)));
    }

    #[test]
    fn explicit_json_matches_group() {
        let json = r#"{"units":["x"],"arrows":[{"name":"g","s":"x","r":"x"}],"compose":[["g","g","x"]]}"#;
        let g = FiniteGroupoid::from_json(json).unwrap();
        assert_eq!(g.arrow_count(), 2);
        assert_eq!(g.isotropy_group(0).0.order(), 2);
        assert!(!g.is_principal());
        let bad = r#"{"units":["x"],"arrows":[{"name":"g","s":"x","r":"x"}],"compose":[]}"#;
        assert!(FiniteGroupoid::from_json(bad).is_err());
    }

    #[test]
    fn disjoint_union_and_grading() {
        let spec = r#"{"disjoint_union":[{"preset":"point"},{"preset":"pair","points":2,"grading":{"x0<x1":1,"x1<x0":-1}}]}"#;
        let g = FiniteGroupoid::from_json(spec).unwrap();
        assert_eq!(g.unit_count(), 3);
        assert_eq!(g.orbits().len(), 2);
        assert_eq!(g.weight(g.arrow_index("x0<x1").unwrap()), 1);
        let bad = r#"{"preset":"pair","points":2,"grading":{"x0<x1":1}}"#;
        assert!(FiniteGroupoid::from_json(bad).is_err());
    }

    #[test]
    fn clashing_names_are_tagged() {
        let z2 = FiniteGroupoid::from_group(&FiniteGroup::cyclic(2));
        let g = FiniteGroupoid::disjoint_union(&[FiniteGroupoid::point(), z2.clone(), z2]).unwrap();
        assert_eq!(g.unit_name(0), "*@0");
        assert_eq!(g.unit_name(2), "*@2");
        assert!(g.arrow_index("t@1").is_some());
        assert_eq!(g.arrow_count(), 5);
    }
}
