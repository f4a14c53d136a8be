//! Elements `a + bθ` of the imaginary quadratic orders ℤ[i] (θ² = −1) and
//! ℤ[√−5] (θ² = −5).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuadInt {
    pub a: BigInt,
    pub b: BigInt,
}

impl QuadInt {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>) -> Self {
        QuadInt {
            a: a.into(),
            b: b.into(),
        }
    }

    pub fn zero() -> Self {
        QuadInt::new(0, 0)
    }

    pub fn one() -> Self {
        QuadInt::new(1, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        QuadInt {
            a: &self.a + &o.a,
            b: &self.b + &o.b,
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        QuadInt {
            a: &self.a - &o.a,
            b: &self.b - &o.b,
        }
    }

    pub fn neg(&self) -> Self {
        QuadInt {
            a: -&self.a,
            b: -&self.b,
        }
    }

    /// Product with `θ² = d`.
    pub fn mul(&self, o: &Self, d: i64) -> Self {
        QuadInt {
            a: &self.a * &o.a + &self.b * &o.b * d,
            b: &self.a * &o.b + &self.b * &o.a,
        }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        QuadInt {
            a: &self.a * k,
            b: &self.b * k,
        }
    }

    pub fn conj(&self) -> Self {
        QuadInt {
            a: self.a.clone(),
            b: -&self.b,
        }
    }

    /// Norm `a² − d b²`.
    pub fn norm(&self, d: i64) -> BigInt {
        &self.a * &self.a - &self.b * &self.b * d
    }

    /// Exact quotient `self / o`, or `None` if `o` does not divide `self`.
    pub fn div_exact(&self, o: &Self, d: i64) -> Option<Self> {
        if o.is_zero() {
            return self.is_zero().then(QuadInt::zero);
        }
        let n = o.norm(d);
        let t = self.mul(&o.conj(), d);
        let (qa, ra) = t.a.div_rem(&n);
        let (qb, rb) = t.b.div_rem(&n);
        (ra.is_zero() && rb.is_zero()).then_some(QuadInt { a: qa, b: qb })
    }

    pub fn divides(&self, o: &Self, d: i64) -> bool {
        o.div_exact(self, d).is_some()
    }

    pub fn height(&self) -> BigInt {
        self.a.abs().max(self.b.abs())
    }
}

/// Nearest-integer rounding of `n / m` for `m > 0`.
fn round_div(n: &BigInt, m: &BigInt) -> BigInt {
    let two = BigInt::from(2);
    (n * &two + m).div_floor(&(m * &two))
}

/// Euclidean division in ℤ[i]: `x = q y + r` with `N(r) < N(y)`.
pub fn gauss_div_rem(x: &QuadInt, y: &QuadInt) -> (QuadInt, QuadInt) {
    let n = y.norm(-1);
    let t = x.mul(&y.conj(), -1);
    let q = QuadInt {
        a: round_div(&t.a, &n),
        b: round_div(&t.b, &n),
    };
    let r = x.sub(&q.mul(y, -1));
    (q, r)
}

/// The four units of ℤ[i] in the order `1, i, −1, −i`.
pub fn gauss_units() -> [QuadInt; 4] {
    [
        QuadInt::new(1, 0),
        QuadInt::new(0, 1),
        QuadInt::new(-1, 0),
        QuadInt::new(0, -1),
    ]
}

/// First-quadrant representative: `a > 0, b ≥ 0` (zero maps to zero).
/// Returns the representative and the unit `u` with `rep = u·x`.
pub fn gauss_normalize(x: &QuadInt) -> (QuadInt, QuadInt) {
    if x.is_zero() {
        return (x.clone(), QuadInt::one());
    }
    for u in gauss_units() {
        let y = u.mul(x, -1);
        if y.a.is_positive() && !y.b.is_negative() {
            return (y, u);
        }
    }
    unreachable!("every nonzero Gaussian integer has a first-quadrant associate")
}

/// Sign normalization for ℤ[√−5]: first nonzero coordinate positive.
pub fn quad_normalize(x: &QuadInt) -> (QuadInt, BigInt) {
    let negative = if x.a.is_zero() {
        x.b.is_negative()
    } else {
        x.a.is_negative()
    };
    if negative {
        (x.neg(), -BigInt::one())
    } else {
        (x.clone(), BigInt::one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn omega_squared_is_minus_five() {
        let w = QuadInt::new(0, 1);
        assert_eq!(w.mul(&w, -5), QuadInt::new(-5, 0));
    }

    #[test]
    fn gauss_division_shrinks_norm() {
        for a in -9..=9 {
            for b in -9..=9 {
                for c in -4..=4 {
                    for d in -4..=4 {
                        let y = QuadInt::new(c, d);
                        if y.is_zero() {
                            continue;
                        }
                        let x = QuadInt::new(a, b);
                        let (q, r) = gauss_div_rem(&x, &y);
                        assert_eq!(q.mul(&y, -1).add(&r), x);
                        assert!(r.norm(-1) < y.norm(-1));
                    }
                }
            }
        }
    }

    #[test]
    fn normalization_lands_in_first_quadrant() {
        let (rep, u) = gauss_normalize(&QuadInt::new(0, 2));
        assert_eq!(rep, QuadInt::new(2, 0));
        assert_eq!(u, QuadInt::new(0, -1));
        assert_eq!(quad_normalize(&QuadInt::new(0, -3)).0, QuadInt::new(0, 3));
        assert_eq!(quad_normalize(&QuadInt::new(-1, 4)).0, QuadInt::new(1, -4));
    }

    #[test]
    fn quad_divisibility() {
        let two = QuadInt::new(2, 0);
        let p = QuadInt::new(1, 1);
        assert!(!two.divides(&p, -5));
        assert!(!p.divides(&two, -5));
        // (1+ω)(1−ω) = 6
        assert!(p.divides(&QuadInt::new(6, 0), -5));
    }
}
