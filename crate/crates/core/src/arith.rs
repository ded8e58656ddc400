//! Integer-scaled exact arithmetic for the hot loops.
//!
//! Kernels are generic over [`Exact`] and return `None` on overflow. They run
//! first with checked `i128` and are re-run with `BigInt` when that overflows,
//! so results are always exact.

use std::cmp::Ordering;
use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, Signed, ToPrimitive};

use crate::graph::WeightedGraph;
use crate::rational::{denominator_lcm, Rational};

pub(crate) trait Exact:
    Clone + Ord + Debug + Send + Sync + Integer + Signed + CheckedAdd + CheckedSub + CheckedMul
{
    fn from_big(b: &BigInt) -> Option<Self>;
    fn to_big(&self) -> BigInt;

    fn add_(&self, o: &Self) -> Option<Self> {
        self.checked_add(o)
    }

    fn sub_(&self, o: &Self) -> Option<Self> {
        self.checked_sub(o)
    }

    fn mul_(&self, o: &Self) -> Option<Self> {
        self.checked_mul(o)
    }
}

impl Exact for i128 {
    fn from_big(b: &BigInt) -> Option<Self> {
        b.to_i128()
    }

    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Exact for BigInt {
    fn from_big(b: &BigInt) -> Option<Self> {
        Some(b.clone())
    }

    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

/// Runs `$kernel::<i128>(args)`, falling back to `BigInt` on overflow.
macro_rules! exact_dispatch {
    ($kernel:ident ( $($arg:expr),* $(,)? )) => {
        match $kernel::<i128>($($arg),*) {
            Some(out) => out,
            None => $kernel::<::num_bigint::BigInt>($($arg),*)
                .expect("BigInt arithmetic cannot overflow"),
        }
    };
}
pub(crate) use exact_dispatch;

/// Nonnegative fraction with positive denominator, not necessarily reduced.
#[derive(Clone, Debug)]
pub(crate) struct Frac<T> {
    pub num: T,
    pub den: T,
}

impl<T: Exact> Frac<T> {
    pub fn new(num: T, den: T) -> Self {
        debug_assert!(den.is_positive());
        Frac { num, den }
    }

    pub fn zero() -> Self {
        Frac {
            num: T::zero(),
            den: T::one(),
        }
    }

    pub fn cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.num.mul_(&o.den)?.cmp(&o.num.mul_(&self.den)?))
    }

    pub fn lt(&self, o: &Self) -> Option<bool> {
        Some(self.cmp(o)? == Ordering::Less)
    }

    pub fn add(&self, o: &Self) -> Option<Self> {
        let num = self.num.mul_(&o.den)?.add_(&o.num.mul_(&self.den)?)?;
        let den = self.den.mul_(&o.den)?;
        let g = num.gcd(&den);
        if g.is_zero() || g.is_one() {
            Some(Frac { num, den })
        } else {
            Some(Frac {
                num: num / g.clone(),
                den: den / g,
            })
        }
    }

    pub fn max<'a>(&'a self, o: &'a Self) -> Option<&'a Self> {
        Some(if self.cmp(o)? == Ordering::Less { o } else { self })
    }

    pub fn to_rational(&self) -> Rational {
        Rational::new(self.num.to_big(), self.den.to_big())
    }
}

/// A graph's weights scaled to integers.
///
/// `omega` is scaled by the lcm of the vertex-weight denominators; edge
/// weights and ground flows by the lcm of theirs. A scaled flow
/// `cut / weight` maps back to the true flow by multiplying with `factor`.
pub(crate) struct Scaled<T> {
    pub omega: Vec<T>,
    pub gamma: Vec<T>,
    pub cost: Vec<T>,
    pub ends: Vec<(usize, usize)>,
    pub factor: Rational,
}

impl<T: Exact> Scaled<T> {
    pub fn new(g: &WeightedGraph) -> Option<Self> {
        let lw = denominator_lcm(g.omega());
        let lc = denominator_lcm(g.edges().iter().map(|e| &e.c).chain(g.gamma()));
        let scale = |r: &Rational, l: &BigInt| -> Option<T> {
            let v = r * Rational::from_integer(l.clone());
            debug_assert!(v.is_integer());
            T::from_big(v.numer())
        };
        Some(Scaled {
            omega: g.omega().iter().map(|w| scale(w, &lw)).collect::<Option<_>>()?,
            gamma: g.gamma().iter().map(|w| scale(w, &lc)).collect::<Option<_>>()?,
            cost: g.edges().iter().map(|e| scale(&e.c, &lc)).collect::<Option<_>>()?,
            ends: g.edges().iter().map(|e| (e.u, e.v)).collect(),
            factor: Rational::new(lw, lc),
        })
    }

    /// A true-flow threshold expressed in scaled units.
    pub fn scale_threshold(&self, n: &Rational) -> Option<Frac<T>> {
        let s = n / &self.factor;
        Some(Frac::new(T::from_big(s.numer())?, T::from_big(s.denom())?))
    }

    /// Scaled flow back to a true rational value.
    pub fn unscale(&self, f: &Frac<T>) -> Rational {
        f.to_rational() * &self.factor
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{Edge, VertexSet};
    use crate::rational::{int, ratio};

    #[test]
    fn scaled_flows_map_back() {
        let g = WeightedGraph::tree(
            vec![ratio(1, 2), ratio(2, 3), int(3)],
            vec![Edge::new(0, 1, ratio(5, 4)), Edge::new(1, 2, ratio(1, 6))],
        )
        .unwrap();
        let s = Scaled::<i128>::new(&g).unwrap();
        // vertex 1: cut 5/4 + 1/6, weight 2/3
        let cut = s.cost[0] + s.cost[1];
        let f = Frac::new(cut, s.omega[1]);
        assert_eq!(s.unscale(&f), g.normalized_flow(&VertexSet::singleton(1)).unwrap());
        let t = s.scale_threshold(&ratio(7, 5)).unwrap();
        assert_eq!(s.unscale(&t), ratio(7, 5));
    }

    #[test]
    fn i128_overflow_is_detected() {
        let big = Frac::new(i128::MAX / 2, 1);
        assert!(big.cmp(&Frac::new(1, 3)).is_none());
        let g = WeightedGraph::tree(
            vec![Rational::from_integer(BigInt::from(10).pow(40)), int(1)],
            vec![Edge::new(0, 1, int(1))],
        )
        .unwrap();
        assert!(Scaled::<i128>::new(&g).is_none());
        assert!(Scaled::<BigInt>::new(&g).is_some());
    }

    #[test]
    fn frac_sum_reduces() {
        let a = Frac::new(1i128, 6);
        let b = Frac::new(1i128, 3);
        let s = a.add(&b).unwrap();
        assert_eq!((s.num, s.den), (1, 2));
    }
}
