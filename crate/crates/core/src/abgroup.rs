//! Finitely generated abelian groups and homomorphisms between presented groups.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;
use crate::smith::{invariant_factors, smith_normal_form};

/// `Z^free_rank ⊕ Z/d_1 ⊕ .. ⊕ Z/d_k` with `2 <= d_1 | d_2 | .. | d_k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FgAbelianGroup {
    free_rank: usize,
    torsion: Vec<BigInt>,
}

impl FgAbelianGroup {
    pub fn zero() -> Self {
        FgAbelianGroup { free_rank: 0, torsion: Vec::new() }
    }

    pub fn free(rank: usize) -> Self {
        FgAbelianGroup { free_rank: rank, torsion: Vec::new() }
    }

    /// `Z/n`; `n = 0` gives `Z`.
    pub fn cyclic(n: u64) -> Self {
        Self::from_cyclic_orders(&[BigInt::from(n)])
    }

    /// Direct sum of cyclic groups `Z/n_i`, where `n_i = 0` stands for `Z`.
    pub fn from_cyclic_orders(orders: &[BigInt]) -> Self {
        let mut free = 0;
        let mut finite = Vec::new();
        for n in orders {
            let n = n.abs();
            if n.is_zero() {
                free += 1;
            } else if !n.is_one() {
                finite.push(n);
            }
        }
        let torsion = invariant_factors(&IntMatrix::diagonal(&finite))
            .into_iter()
            .filter(|d| !d.is_one())
            .collect();
        FgAbelianGroup { free_rank: free, torsion }
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn direct_sum(&self, other: &FgAbelianGroup) -> FgAbelianGroup {
        let mut orders = self.torsion.clone();
        orders.extend(other.torsion.iter().cloned());
        let mut g = Self::from_cyclic_orders(&orders);
        g.free_rank = self.free_rank + other.free_rank;
        g
    }

    pub fn sum_all<'a>(groups: impl IntoIterator<Item = &'a FgAbelianGroup>) -> FgAbelianGroup {
        groups.into_iter().fold(Self::zero(), |acc, g| acc.direct_sum(g))
    }

    /// The rational vector space `G ⊗ Q`, as a free group of the same rank.
    pub fn rationalize(&self) -> FgAbelianGroup {
        Self::free(self.free_rank)
    }

    /// Renders the group, or only its rank when working over Q.
    pub fn display_over(&self, ring: crate::chain::Ring) -> String {
        match ring {
            crate::chain::Ring::Z => self.to_string(),
            crate::chain::Ring::Q => match self.free_rank {
                0 => "0".into(),
                1 => "Q".into(),
                r => format!("Q^{r}"),
            },
        }
    }
}

impl fmt::Display for FgAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        let mut i = 0;
        while i < self.torsion.len() {
            let d = &self.torsion[i];
            let mut j = i;
            while j < self.torsion.len() && &self.torsion[j] == d {
                j += 1;
            }
            if j - i == 1 {
                parts.push(format!("Z/{d}"));
            } else {
                parts.push(format!("(Z/{d})^{}", j - i));
            }
            i = j;
        }
        write!(f, "{}", parts.join(" + "))
    }
}

impl serde::Serialize for FgAbelianGroup {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("FgAbelianGroup", 3)?;
        st.serialize_field("group", &self.to_string())?;
        st.serialize_field("free_rank", &self.free_rank)?;
        st.serialize_field("torsion", &self.torsion.iter().map(ToString::to_string).collect::<Vec<_>>())?;
        st.end()
    }
}

/// `Z^generators / colspan(relations)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub relations: IntMatrix,
}

impl Presentation {
    pub fn new(relations: IntMatrix) -> Self {
        Presentation { relations }
    }

    pub fn free(n: usize) -> Self {
        Presentation { relations: IntMatrix::zeros(n, 0) }
    }

    /// The standard presentation: one generator per cyclic factor, free ones
    /// last.
    pub fn of(g: &FgAbelianGroup) -> Self {
        let n = g.torsion.len() + g.free_rank;
        let rels = IntMatrix::from_triplets(n, g.torsion.len(), g.torsion.iter().enumerate().map(|(i, d)| (i, i, d.clone())));
        Presentation { relations: rels }
    }

    pub fn generators(&self) -> usize {
        self.relations.rows()
    }

    pub fn group(&self) -> FgAbelianGroup {
        cokernel(&self.relations)
    }

    /// Presentation of `self^k` (block diagonal relations).
    pub fn power(&self, k: usize) -> Presentation {
        let blocks: Vec<&IntMatrix> = (0..k).map(|_| &self.relations).collect();
        Presentation { relations: IntMatrix::block_diag(&blocks) }
    }

    pub fn direct_sum(&self, other: &Presentation) -> Presentation {
        Presentation { relations: IntMatrix::block_diag(&[&self.relations, &other.relations]) }
    }

    /// Whether the integer vector `x` lies in the relation lattice.
    pub fn is_relation(&self, x: &[BigInt]) -> bool {
        let col = IntMatrix::from_triplets(x.len(), 1, x.iter().enumerate().map(|(i, v)| (i, 0, v.clone())));
        solve_in_lattice(&self.relations, &col).is_some()
    }
}

/// `coker(M) = Z^rows / colspan(M)`.
pub fn cokernel(m: &IntMatrix) -> FgAbelianGroup {
    let factors = invariant_factors(m);
    let free = m.rows() - factors.len();
    FgAbelianGroup {
        free_rank: free,
        torsion: factors.into_iter().filter(|d| !d.is_one()).collect(),
    }
}

/// A Z-basis of `{x : M x = 0}`, as the columns of the returned matrix.
pub fn kernel_basis(m: &IntMatrix) -> IntMatrix {
    let s = smith_normal_form(m);
    let r = s.rank();
    let n = m.cols();
    IntMatrix::from_triplets(
        n,
        n - r,
        s.v.triplets().filter(|(_, c, _)| *c >= r).map(|(row, c, v)| (row, c - r, v.clone())),
    )
}

/// Inverse of a unimodular matrix.
pub fn unimodular_inverse(u: &IntMatrix) -> Result<IntMatrix> {
    if u.rows() != u.cols() {
        return Err(Error::DimensionMismatch("inverse of a non-square matrix".into()));
    }
    let s = smith_normal_form(u);
    if s.rank() != u.rows() || s.diag.iter().any(|d| !d.is_one()) {
        return Err(Error::invalid("matrix is not unimodular"));
    }
    // s.u * u * s.v = I  =>  u^{-1} = s.v * s.u
    Ok(&s.v * &s.u)
}

/// Solves `A X = B` over the integers; `None` if some column of `B` is not in colspan(A).
pub fn solve_in_lattice(a: &IntMatrix, b: &IntMatrix) -> Option<IntMatrix> {
    assert_eq!(a.rows(), b.rows());
    let s = smith_normal_form(a);
    // S (V^{-1} X) = U B
    let ub = &s.u * b;
    let r = s.rank();
    let mut trip = Vec::new();
    for (row, c, v) in ub.triplets() {
        if row >= r {
            return None;
        }
        let (q, rem) = v.div_rem(&s.diag[row]);
        if !rem.is_zero() {
            return None;
        }
        trip.push((row, c, q));
    }
    let y = IntMatrix::from_triplets(a.cols(), b.cols(), trip);
    Some(&s.v * &y)
}

/// A homomorphism `coker(R_s) -> coker(R_t)` induced by the integer matrix `F`.
#[derive(Clone, Debug)]
pub struct AbGroupMap {
    source: Presentation,
    target: Presentation,
    matrix: IntMatrix,
}

impl AbGroupMap {
    /// Fails with [`Error::IllDefinedMap`] unless `F R_s` lies in colspan(R_t).
    pub fn new(source: Presentation, target: Presentation, matrix: IntMatrix) -> Result<Self> {
        if matrix.shape() != (target.generators(), source.generators()) {
            return Err(Error::DimensionMismatch(format!(
                "map matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                target.generators(),
                source.generators()
            )));
        }
        let image = &matrix * &source.relations;
        if !image.is_zero() && solve_in_lattice(&target.relations, &image).is_none() {
            return Err(Error::IllDefinedMap);
        }
        Ok(AbGroupMap { source, target, matrix })
    }

    pub fn source(&self) -> &Presentation {
        &self.source
    }

    pub fn target(&self) -> &Presentation {
        &self.target
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn coker_presentation(&self) -> Presentation {
        Presentation::new(self.matrix.hstack(&self.target.relations).expect("row counts agree"))
    }

    pub fn coker(&self) -> FgAbelianGroup {
        self.coker_presentation().group()
    }

    /// The kernel as a presented group, together with the matrix sending its
    /// generators into source coordinates.
    pub fn ker_presentation(&self) -> (Presentation, IntMatrix) {
        let gs = self.source.generators();
        let joint = self.matrix.hstack(&self.target.relations).expect("row counts agree");
        let k = kernel_basis(&joint);
        // project onto the source coordinates: generators of the preimage lattice L
        let proj = IntMatrix::from_triplets(
            gs,
            k.cols(),
            k.triplets().filter(|(r, _, _)| *r < gs).map(|(r, c, v)| (r, c, v.clone())),
        );
        // basis of L = colspan(proj): columns d_i * U^{-1} e_i
        let s = smith_normal_form(&proj);
        let uinv = unimodular_inverse(&s.u).expect("smith transform is unimodular");
        let l = s.rank();
        let basis = IntMatrix::from_triplets(
            gs,
            l,
            uinv.triplets()
                .filter(|(_, c, _)| *c < l)
                .map(|(r, c, v)| (r, c, v * &s.diag[c])),
        );
        let rels = solve_in_lattice(&basis, &self.source.relations)
            .expect("source relations lie in the preimage lattice");
        (Presentation::new(rels), basis)
    }

    pub fn ker(&self) -> FgAbelianGroup {
        self.ker_presentation().0.group()
    }
}

/// Convenience wrapper returning `(coker f, ker f)`.
pub fn abmap_coker_ker(f: &AbGroupMap) -> (FgAbelianGroup, FgAbelianGroup) {
    (f.coker(), f.ker())
}
