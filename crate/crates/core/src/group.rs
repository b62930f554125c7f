//! Finite groups given by multiplication tables. Element 0 is the identity.

use serde::Deserialize;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    labels: Vec<String>,
    table: Vec<Vec<usize>>,
    inverse: Vec<usize>,
}

impl FiniteGroup {
    /// Validates associativity, identity at index 0 and inverses.
    pub fn from_table(labels: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        if n == 0 || labels.len() != n || table.iter().any(|row| row.len() != n || row.iter().any(|&x| x >= n)) {
            return Err(Error::invalid("group table must be a square table of element indices"));
        }
        for g in 0..n {
            if table[0][g] != g || table[g][0] != g {
                return Err(Error::invalid("element 0 must be the identity"));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::invalid(format!(
                            "multiplication is not associative at ({}, {}, {})",
                            labels[a], labels[b], labels[c]
                        )));
                    }
                }
            }
        }
        let mut inverse = Vec::with_capacity(n);
        for g in 0..n {
            match (0..n).find(|&h| table[g][h] == 0 && table[h][g] == 0) {
                Some(h) => inverse.push(h),
                None => return Err(Error::invalid(format!("{} has no inverse", labels[g]))),
            }
        }
        Ok(FiniteGroup { labels, table, inverse })
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    /// `Z/n` with element `k` standing for the k-th power of the generator.
    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1);
        let labels = (0..n).map(|k| if k == 0 { "1".to_string() } else if k == 1 { "t".into() } else { format!("t^{k}") }).collect();
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Self::from_table(labels, table).expect("cyclic group table is valid")
    }

    /// Symmetric group on `{0..d-1}`; elements are permutations in lexicographic
    /// order of their one-line notation, so the identity comes first.
    /// The product `gh` is the composite "first h, then g".
    pub fn symmetric(d: usize) -> Self {
        let perms = permutations(d);
        let index: std::collections::HashMap<Vec<usize>, usize> =
            perms.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
        let table = perms
            .iter()
            .map(|g| perms.iter().map(|h| index[&h.iter().map(|&x| g[x]).collect::<Vec<_>>()]).collect())
            .collect();
        let labels = perms
            .iter()
            .map(|p| format!("[{}]", p.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("")))
            .collect();
        Self::from_table(labels, table).expect("symmetric group table is valid")
    }

    /// One-line notation of the `i`-th element of [`FiniteGroup::symmetric`].
    pub fn symmetric_permutation(d: usize, i: usize) -> Vec<usize> {
        permutations(d)[i].clone()
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn product(&self, elems: impl IntoIterator<Item = usize>) -> usize {
        elems.into_iter().fold(0, |acc, g| self.mul(acc, g))
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order()).all(|a| (0..self.order()).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Conjugacy classes, each sorted, listed by smallest member.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        let mut seen = vec![false; n];
        let mut classes = Vec::new();
        for g in 0..n {
            if seen[g] {
                continue;
            }
            let mut class: Vec<usize> = (0..n).map(|h| self.mul(self.mul(h, g), self.inv(h))).collect();
            class.sort_unstable();
            class.dedup();
            for &x in &class {
                seen[x] = true;
            }
            classes.push(class);
        }
        classes
    }

    pub fn centralizer(&self, g: usize) -> Vec<usize> {
        (0..self.order()).filter(|&h| self.mul(h, g) == self.mul(g, h)).collect()
    }

    /// The subgroup on the given elements (which must contain 0 and be closed).
    pub fn subgroup(&self, elems: &[usize]) -> Result<FiniteGroup> {
        let pos: std::collections::HashMap<usize, usize> = elems.iter().enumerate().map(|(i, g)| (*g, i)).collect();
        if elems.first() != Some(&0) {
            return Err(Error::invalid("subgroup must list the identity first"));
        }
        let mut table = Vec::with_capacity(elems.len());
        for &a in elems {
            let mut row = Vec::with_capacity(elems.len());
            for &b in elems {
                match pos.get(&self.mul(a, b)) {
                    Some(&i) => row.push(i),
                    None => return Err(Error::invalid("subset is not closed under multiplication")),
                }
            }
            table.push(row);
        }
        Self::from_table(elems.iter().map(|&g| self.labels[g].clone()).collect(), table)
    }
}

fn permutations(d: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for x in 0..used.len() {
            if !used[x] {
                used[x] = true;
                prefix.push(x);
                go(prefix, used, out);
                prefix.pop();
                used[x] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; d], &mut out);
    out
}

/// JSON description of a finite group.
#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum GroupSpec {
    Trivial,
    Cyclic { order: usize },
    Symmetric { degree: usize },
    Table { elements: Vec<String>, table: Vec<Vec<String>> },
}

impl GroupSpec {
    pub fn build(&self) -> Result<FiniteGroup> {
        match self {
            GroupSpec::Trivial => Ok(FiniteGroup::trivial()),
            GroupSpec::Cyclic { order } if *order >= 1 => Ok(FiniteGroup::cyclic(*order)),
            GroupSpec::Cyclic { .. } => Err(Error::invalid("cyclic group order must be positive")),
            GroupSpec::Symmetric { degree } if (1..=6).contains(degree) => Ok(FiniteGroup::symmetric(*degree)),
            GroupSpec::Symmetric { .. } => Err(Error::invalid("symmetric group degree must be between 1 and 6")),
            GroupSpec::Table { elements, table } => {
                let idx = |s: &String| {
                    elements.iter().position(|e| e == s).ok_or_else(|| Error::invalid(format!("unknown element {s:?}")))
                };
                let t = table
                    .iter()
                    .map(|row| row.iter().map(idx).collect::<Result<Vec<_>>>())
                    .collect::<Result<Vec<_>>>()?;
                FiniteGroup::from_table(elements.clone(), t)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_group_basics() {
        let s3 = FiniteGroup::symmetric(3);
        assert_eq!(s3.order(), 6);
        assert!(!s3.is_abelian());
        let sizes: Vec<usize> = s3.conjugacy_classes().iter().map(Vec::len).collect();
        assert_eq!(sizes, [1, 3, 2]);
        assert_eq!(FiniteGroup::symmetric(4).conjugacy_classes().len(), 5);
        // centralizer of a transposition has order 2
        let t = s3.conjugacy_classes()[1][0];
        assert_eq!(s3.centralizer(t).len(), 2);
    }

    #[test]
    fn composition_order() {
        // gh applies h first
        let s3 = FiniteGroup::symmetric(3);
        for g in 0..6 {
            for h in 0..6 {
                let pg = FiniteGroup::symmetric_permutation(3, g);
                let ph = FiniteGroup::symmetric_permutation(3, h);
                let pgh = FiniteGroup::symmetric_permutation(3, s3.mul(g, h));
                for x in 0..3 {
                    assert_eq!(pgh[x], pg[ph[x]]);
                }
            }
        }
    }

    #[test]
    fn bad_tables_rejected() {
        let labels = vec!["a".to_string(), "b".into()];
        assert!(FiniteGroup::from_table(labels.clone(), vec![vec![0, 1], vec![1, 1]]).is_err());
        let spec: GroupSpec = serde_json::from_str(r#"{"kind":"table","elements":["e","x"],"table":[["e","x"],["x","e"]]}"#).unwrap();
        assert_eq!(spec.build().unwrap().order(), 2);
    }
}
