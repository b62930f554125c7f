use std::collections::HashMap;

use num_traits::{One, Zero};

use crate::chain::{ChainComplex, Ring};
use crate::error::{Error, Result};
use crate::scalar::{is_unit_integer, show, Rational};

use super::{cyclic_nerve, FiniteGroupoid};

/// A normalized 2-cocycle on composable pairs with values in the units of the
/// coefficient ring. Pairs not listed take the value 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cocycle2 {
    values: HashMap<(usize, usize), Rational>,
}

impl Cocycle2 {
    pub fn trivial() -> Self {
        Cocycle2 { values: HashMap::new() }
    }

    /// Builds and validates a cocycle from `(g, h, value)` triples.
    pub fn new(g: &FiniteGroupoid, entries: Vec<(usize, usize, Rational)>, ring: Ring) -> Result<Self> {
        let mut values = HashMap::new();
        for (a, b, v) in entries {
            if g.compose(a, b).is_none() {
                return Err(Error::Cocycle(format!("{} {} are not composable", g.arrow_name(a), g.arrow_name(b))));
            }
            if v.is_zero() || (ring == Ring::Z && !is_unit_integer(&v)) {
                return Err(Error::Cocycle(format!(
                    "value {} at ({}, {}) is not a unit of {ring}",
                    show(&v),
                    g.arrow_name(a),
                    g.arrow_name(b)
                )));
            }
            if !v.is_one() {
                values.insert((a, b), v);
            }
        }
        let c = Cocycle2 { values };
        c.validate(g)?;
        Ok(c)
    }

    pub fn from_names(g: &FiniteGroupoid, entries: &[(String, String, Rational)], ring: Ring) -> Result<Self> {
        let idx = |s: &str| g.arrow_index(s).ok_or_else(|| Error::invalid(format!("unknown arrow {s:?}")));
        let parsed = entries
            .iter()
            .map(|(a, b, v)| Ok((idx(a)?, idx(b)?, v.clone())))
            .collect::<Result<Vec<_>>>()?;
        Self::new(g, parsed, ring)
    }

    pub fn value(&self, g: usize, h: usize) -> Rational {
        self.values.get(&(g, h)).cloned().unwrap_or_else(Rational::one)
    }

    pub fn is_trivial(&self) -> bool {
        self.values.is_empty()
    }

    fn validate(&self, g: &FiniteGroupoid) -> Result<()> {
        let n = g.arrow_count();
        for a in 0..n {
            let (ur, us) = (g.unit_arrow(g.range(a)), g.unit_arrow(g.source(a)));
            if !self.value(ur, a).is_one() || !self.value(a, us).is_one() {
                return Err(Error::Cocycle(format!("not normalized at {}", g.arrow_name(a))));
            }
        }
        for a in 0..n {
            for b in 0..n {
                let Some(ab) = g.compose(a, b) else { continue };
                for c in 0..n {
                    let Some(bc) = g.compose(b, c) else { continue };
                    let lhs = self.value(a, b) * self.value(ab, c);
                    let rhs = self.value(a, bc) * self.value(b, c);
                    if lhs != rhs {
                        return Err(Error::Cocycle(format!(
                            "w(g,h) w(gh,k) = w(g,hk) w(h,k) fails at ({}, {}, {})",
                            g.arrow_name(a),
                            g.arrow_name(b),
                            g.arrow_name(c)
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Twisted cyclic nerve complex, written on functions: the face `d_i` sums
/// `w(a, b) f(.., a, b, ..)` over factorizations `g_i = a b`, and the last face
/// sums `w(a, b) f(b, g_1, .., g_{n-1}, a)` over `g_0 = a b`.
pub fn twisted_cyclic_nerve_complex(g: &FiniteGroupoid, w: &Cocycle2, window: usize, ring: Ring) -> Result<ChainComplex> {
    let levels: Vec<_> = (0..=window).map(|n| cyclic_nerve(g, n)).collect();
    let factorizations = |x: usize| -> Vec<(usize, usize)> {
        (0..g.arrow_count())
            .filter(|&a| g.range(a) == g.range(x))
            .map(|a| (a, g.compose(g.inverse(a), x).expect("factor composes")))
            .collect()
    };
    let mut boundaries = Vec::with_capacity(window);
    for n in 1..=window {
        let (src, dst) = (&levels[n], &levels[n - 1]);
        let mut trip = Vec::new();
        for (row, t) in dst.iter().enumerate() {
            for i in 0..=n {
                let sgn = if i % 2 == 0 { Rational::one() } else { -Rational::one() };
                let split_at = if i < n { i } else { 0 };
                for (a, b) in factorizations(t[split_at]) {
                    let pre = if i < n {
                        let mut v = t[..i].to_vec();
                        v.push(a);
                        v.push(b);
                        v.extend_from_slice(&t[i + 1..]);
                        v
                    } else {
                        let mut v = vec![b];
                        v.extend_from_slice(&t[1..]);
                        v.push(a);
                        v
                    };
                    if let Some(col) = src.index_of(&pre) {
                        trip.push((row, col, &sgn * w.value(a, b)));
                    }
                }
            }
        }
        boundaries.push(trip);
    }
    ChainComplex::from_rational(ring, levels.iter().map(|l| l.len()).collect(), boundaries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;
    use crate::groupoid::cyclic_nerve_module;
    use crate::scalar::rat;

    #[test]
    fn trivial_twist_is_the_cyclic_nerve_complex() {
        let g = FiniteGroupoid::from_group(&FiniteGroup::symmetric(3));
        let a = twisted_cyclic_nerve_complex(&g, &Cocycle2::trivial(), 3, Ring::Z).unwrap();
        let b = cyclic_nerve_module(&g, 3, Ring::Z).0.hochschild_complex();
        for n in 1..=3 {
            assert_eq!(a.boundary(n), b.boundary(n));
        }
    }

    #[test]
    fn cocycle_validation() {
        let z2 = FiniteGroupoid::from_group(&FiniteGroup::cyclic(2));
        assert!(Cocycle2::new(&z2, vec![(1, 1, rat(-1))], Ring::Z).is_ok());
        assert!(Cocycle2::new(&z2, vec![(1, 1, rat(2))], Ring::Z).is_err());
        assert!(Cocycle2::new(&z2, vec![(1, 1, rat(2))], Ring::Q).is_ok());
        // not normalized
        assert!(Cocycle2::new(&z2, vec![(0, 1, rat(-1))], Ring::Z).is_err());
    }
}
