//! Skew Laurent algebras `S = R[t, t^{-1}; ψ]` with `t r = ψ(r) t`, and the
//! explicit homotopy between `1` and `ψ` on the normalized Hochschild complex.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::scalar::{rat, show, Rational};

use super::{add_scaled, basis_elem, Elem, FinDimAlgebra};

/// `Σ c (b_j t^k)` keyed by `(k, j)`.
pub type SkewElem = BTreeMap<(i64, usize), Rational>;
/// Tensors `S^{⊗ n+1}` on monomial tuples.
pub type SkewTensor = BTreeMap<Vec<(i64, usize)>, Rational>;

pub struct SkewLaurent<'a> {
    base: &'a FinDimAlgebra,
    psi: Vec<Elem>,
    psi_inv: Vec<Elem>,
}

fn apply(images: &[Elem], x: &Elem) -> Elem {
    let mut out = Elem::new();
    for (j, v) in x {
        add_scaled(&mut out, &images[*j], v);
    }
    out
}

/// Inverse of a square rational matrix given by column images, if any.
fn invert(images: &[Elem]) -> Option<Vec<Elem>> {
    let d = images.len();
    let mut a: Vec<Vec<Rational>> =
        (0..d).map(|r| (0..d).map(|c| images[c].get(&r).cloned().unwrap_or_default()).collect()).collect();
    let mut inv: Vec<Vec<Rational>> = (0..d).map(|r| (0..d).map(|c| if r == c { rat(1) } else { rat(0) }).collect()).collect();
    for col in 0..d {
        let p = (col..d).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, p);
        inv.swap(col, p);
        let k = a[col][col].clone();
        for c in 0..d {
            a[col][c] = &a[col][c] / &k;
            inv[col][c] = &inv[col][c] / &k;
        }
        for r in 0..d {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in 0..d {
                    let (x, y) = (&a[col][c] * &f, &inv[col][c] * &f);
                    a[r][c] -= x;
                    inv[r][c] -= y;
                }
            }
        }
    }
    Some((0..d).map(|c| (0..d).filter(|&r| !inv[r][c].is_zero()).map(|r| (r, inv[r][c].clone())).collect()).collect())
}

impl<'a> SkewLaurent<'a> {
    /// `psi[j]` is the image of basis element `j`; it must be an algebra
    /// automorphism of `base`.
    pub fn new(base: &'a FinDimAlgebra, psi: Vec<Elem>) -> Result<Self> {
        let d = base.dim();
        if psi.len() != d || psi.iter().any(|e| e.keys().any(|&k| k >= d)) {
            return Err(Error::invalid("automorphism must give an image for every basis element"));
        }
        if apply(&psi, &base.unit()) != base.unit() {
            return Err(Error::invalid("automorphism does not fix the unit"));
        }
        for i in 0..d {
            for j in 0..d {
                if apply(&psi, base.product(i, j)) != base.mul(&psi[i], &psi[j]) {
                    return Err(Error::invalid(format!(
                        "map is not multiplicative on ({}, {})",
                        base.label(i),
                        base.label(j)
                    )));
                }
            }
        }
        let psi_inv = invert(&psi).ok_or_else(|| Error::invalid("automorphism is not invertible"))?;
        Ok(SkewLaurent { base, psi, psi_inv })
    }

    /// Conjugation by an invertible element, `r -> u r u^{-1}`.
    pub fn conjugation(base: &'a FinDimAlgebra, u: &Elem, u_inv: &Elem) -> Result<Self> {
        if base.mul(u, u_inv) != base.unit() {
            return Err(Error::invalid("conjugating element is not invertible with the given inverse"));
        }
        let psi = (0..base.dim()).map(|j| base.mul(&base.mul(u, &basis_elem(j)), u_inv)).collect();
        Self::new(base, psi)
    }

    fn psi_power(&self, a: i64, x: &Elem) -> Elem {
        let images = if a >= 0 { &self.psi } else { &self.psi_inv };
        (0..a.unsigned_abs()).fold(x.clone(), |acc, _| apply(images, &acc))
    }

    pub fn monomial(&self, k: i64, j: usize) -> SkewElem {
        SkewElem::from([((k, j), Rational::one())])
    }

    pub fn t(&self, k: i64) -> SkewElem {
        self.base.diagonal().iter().map(|&e| ((k, e), Rational::one())).collect()
    }

    /// `(r t^a)(s t^b) = r ψ^a(s) t^{a+b}`
    pub fn mul(&self, x: &SkewElem, y: &SkewElem) -> SkewElem {
        let mut out = SkewElem::new();
        for ((a, i), u) in x {
            for ((b, j), v) in y {
                let s = self.psi_power(*a, &basis_elem(*j));
                let prod = self.base.mul(&basis_elem(*i), &s);
                for (k, w) in prod {
                    let e = out.entry((a + b, k)).or_insert_with(Rational::zero);
                    *e += w * u * v;
                }
            }
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    /// `ψ(r t^k) = ψ(r) t^k`, which is conjugation by `t`.
    pub fn psi(&self, x: &SkewElem) -> SkewElem {
        let mut out = SkewElem::new();
        for ((k, j), v) in x {
            for (i, w) in &self.psi[*j] {
                let e = out.entry((*k, *i)).or_insert_with(Rational::zero);
                *e += w * v;
            }
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    /// Expands `x_0 ⊗ .. ⊗ x_n` into monomial tuples.
    pub fn tensor(&self, parts: &[SkewElem]) -> SkewTensor {
        let mut out = SkewTensor::from([(Vec::new(), Rational::one())]);
        for p in parts {
            let mut next = SkewTensor::new();
            for (key, c) in &out {
                for (m, v) in p {
                    let mut k = key.clone();
                    k.push(*m);
                    *next.entry(k).or_insert_with(Rational::zero) += c * v;
                }
            }
            out = next;
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    fn linear(&self, x: &SkewTensor, f: impl Fn(&[SkewElem]) -> Vec<(Rational, Vec<SkewElem>)>) -> SkewTensor {
        let mut out = SkewTensor::new();
        for (key, c) in x {
            let parts: Vec<SkewElem> = key.iter().map(|&(k, j)| self.monomial(k, j)).collect();
            for (sign, img) in f(&parts) {
                for (k2, v) in self.tensor(&img) {
                    *out.entry(k2).or_insert_with(Rational::zero) += &sign * c * v;
                }
            }
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    /// Hochschild boundary; zero on degree 0.
    pub fn b(&self, x: &SkewTensor) -> SkewTensor {
        self.linear(x, |p| {
            let n = p.len() - 1;
            let mut terms = Vec::new();
            for i in 0..n {
                let mut v = p[..i].to_vec();
                v.push(self.mul(&p[i], &p[i + 1]));
                v.extend_from_slice(&p[i + 2..]);
                terms.push((if i % 2 == 0 { rat(1) } else { rat(-1) }, v));
            }
            if n > 0 {
                let mut v = vec![self.mul(&p[n], &p[0])];
                v.extend_from_slice(&p[1..n]);
                terms.push((if n % 2 == 0 { rat(1) } else { rat(-1) }, v));
            }
            terms
        })
    }

    /// `κ(x_0 ⊗ .. ⊗ x_n) = Σ_i (-1)^{i+1} t x_0 ⊗ x_1 ⊗ .. ⊗ x_i ⊗ t^{-1} ⊗ ψ(x_{i+1}) ⊗ .. ⊗ ψ(x_n)`
    pub fn kappa(&self, x: &SkewTensor) -> SkewTensor {
        self.linear(x, |p| {
            let n = p.len() - 1;
            (0..=n)
                .map(|i| {
                    let mut v = vec![self.mul(&self.t(1), &p[0])];
                    v.extend_from_slice(&p[1..=i]);
                    v.push(self.t(-1));
                    v.extend(p[i + 1..].iter().map(|y| self.psi(y)));
                    (if i % 2 == 0 { rat(-1) } else { rat(1) }, v)
                })
                .collect()
        })
    }

    /// `t x_0 t^{-1} ⊗ ψ(x_1) ⊗ .. ⊗ ψ(x_n)`
    pub fn psi_tilde(&self, x: &SkewTensor) -> SkewTensor {
        self.linear(x, |p| {
            let mut v = vec![self.mul(&self.mul(&self.t(1), &p[0]), &self.t(-1))];
            v.extend(p[1..].iter().map(|y| self.psi(y)));
            vec![(rat(1), v)]
        })
    }

    /// Image in `S ⊗ (S / k1)^{⊗ n}`: in slots `1..`, the first diagonal
    /// element in degree 0 is rewritten as minus the other diagonal elements.
    pub fn normalize(&self, x: &SkewTensor) -> SkewTensor {
        let diag = self.base.diagonal();
        let e0 = diag[0];
        let mut out = SkewTensor::new();
        for (key, c) in x {
            let mut terms: Vec<(Vec<(i64, usize)>, Rational)> = vec![(vec![key[0]], c.clone())];
            for &m in &key[1..] {
                let subs: Vec<((i64, usize), Rational)> = if m == (0, e0) {
                    diag[1..].iter().map(|&e| ((0, e), rat(-1))).collect()
                } else {
                    vec![(m, rat(1))]
                };
                terms = terms
                    .iter()
                    .flat_map(|(k, v)| subs.iter().map(move |(s, w)| ([k.as_slice(), &[*s]].concat(), v * w)))
                    .collect();
            }
            for (k, v) in terms {
                *out.entry(k).or_insert_with(Rational::zero) += v;
            }
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    pub fn show_tensor(&self, x: &SkewTensor) -> String {
        if x.is_empty() {
            return "0".into();
        }
        x.iter()
            .map(|(k, v)| {
                let slots: Vec<String> = k.iter().map(|(p, j)| format!("{}t^{p}", self.base.label(*j))).collect();
                format!("{}*({})", show(v), slots.join(" ⊗ "))
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KappaCertificate {
    pub samples: usize,
    pub max_degree: usize,
    /// First failing chain, if any.
    pub witness: Option<String>,
}

impl KappaCertificate {
    pub fn holds(&self) -> bool {
        self.witness.is_none()
    }
}

fn random_elem(s: &SkewLaurent, rng: &mut ChaCha8Rng) -> SkewElem {
    let terms = rng.gen_range(1..=2);
    let mut out = SkewElem::new();
    for _ in 0..terms {
        let k = rng.gen_range(-2..=2);
        let j = rng.gen_range(0..s.base.dim());
        let c = [-3, -2, -1, 1, 2, 3][rng.gen_range(0..6)];
        *out.entry((k, j)).or_insert_with(Rational::zero) += rat(c);
    }
    out.retain(|_, v| !v.is_zero());
    out
}

/// Checks `b κ(x) + κ b(x) = x - ψ̃(x)` in the normalized complex on `samples`
/// random chains of degree at most `max_degree`, drawn from a seeded generator.
pub fn kappa_check(s: &SkewLaurent, samples: usize, max_degree: usize, seed: u64) -> KappaCertificate {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let n = rng.gen_range(0..=max_degree);
        let parts: Vec<SkewElem> = (0..=n).map(|_| random_elem(s, &mut rng)).collect();
        let x = s.tensor(&parts);
        let mut lhs = s.b(&s.kappa(&x));
        if n > 0 {
            for (k, v) in s.kappa(&s.b(&x)) {
                *lhs.entry(k).or_insert_with(Rational::zero) += v;
            }
        }
        let mut diff = lhs;
        for (k, v) in &x {
            *diff.entry(k.clone()).or_insert_with(Rational::zero) -= v;
        }
        for (k, v) in s.psi_tilde(&x) {
            *diff.entry(k).or_insert_with(Rational::zero) += v;
        }
        diff.retain(|_, v| !v.is_zero());
        if !s.normalize(&diff).is_empty() {
            return KappaCertificate { samples, max_degree, witness: Some(s.show_tensor(&x)) };
        }
    }
    KappaCertificate { samples, max_degree, witness: None }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::Ring;
    use crate::group::FiniteGroup;

    #[test]
    fn laurent_polynomials() {
        let q = FinDimAlgebra::group_algebra(&FiniteGroup::trivial(), Ring::Q);
        let s = SkewLaurent::new(&q, vec![basis_elem(0)]).unwrap();
        assert_eq!(s.mul(&s.t(1), &s.t(-1)), s.t(0));
        assert!(kappa_check(&s, 50, 3, 1).holds());
    }

    #[test]
    fn matrices_with_a_swap() {
        let q = FinDimAlgebra::group_algebra(&FiniteGroup::trivial(), Ring::Q);
        let m2 = FinDimAlgebra::matrix_algebra(&q, 2).unwrap();
        // [[0,1],[1,0]] = E12 + E21 is its own inverse
        let p: Elem = [(1, rat(1)), (2, rat(1))].into_iter().collect();
        let s = SkewLaurent::conjugation(&m2, &p, &p).unwrap();
        let x = s.monomial(0, 0);
        assert_eq!(s.mul(&s.mul(&s.t(1), &x), &s.t(-1)), s.monomial(0, 3));
        assert!(kappa_check(&s, 30, 3, 7).holds());
    }

    #[test]
    fn non_automorphism_refused() {
        let q = FinDimAlgebra::group_algebra(&FiniteGroup::cyclic(2), Ring::Q);
        assert!(SkewLaurent::new(&q, vec![basis_elem(0), Elem::new()]).is_err());
    }
}
