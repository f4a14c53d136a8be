//! The six concrete rings and their elements.
//!
//! | ring        | spec string   | units                |
//! |-------------|---------------|----------------------|
//! | ℤ           | `Z`           | ±1                   |
//! | ℤ[i]        | `Zi`          | ±1, ±i               |
//! | ℤ[√−5]      | `Zw5`         | ±1                   |
//! | 𝔽_p[x]      | `Fp[x]:<p>`   | nonzero constants    |
//! | ℤ[x]        | `Z[x]`        | ±1                   |
//! | ℤ × ℤ       | `ZxZ`         | (±1, ±1)             |

mod arith;
mod parse;
mod window;

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

pub(crate) use arith::{add, mul};
pub use arith::{div_exact, divides, is_irreducible};
pub use arith::{extended_gcd, factor, gcd, ArithOp, Factorization, GcdOutcome};
pub use parse::{parse_element, render_element};
pub(crate) use window::small_height;
pub use window::{enumerate_window, sample_filtered, sample_window, Filter, Window};

use crate::error::{Error, Result};
use crate::int;
use crate::modpoly::ModPoly;
use crate::quadratic::{gauss_normalize, gauss_units, quad_normalize, QuadInt};
use crate::zpoly::ZPoly;

/// Largest characteristic accepted for 𝔽_p[x].
pub const MAX_FIELD_PRIME: u64 = 97;

/// Identifies one of the supported rings.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Ring {
    Int,
    GaussInt,
    QuadM5,
    PolyFp(u64),
    PolyZ,
    ProdIntInt,
}

impl Ring {
    /// 𝔽_p[x] for a prime `2 ≤ p ≤ 97`.
    pub fn poly_fp(p: u64) -> Result<Ring> {
        if !(2..=MAX_FIELD_PRIME).contains(&p) || !int::is_prime(&BigInt::from(p)) {
            return Err(Error::Invalid(format!(
                "Fp[x] needs a prime 2 <= p <= {MAX_FIELD_PRIME}, got {p}"
            )));
        }
        Ok(Ring::PolyFp(p))
    }

    /// θ² for the quadratic orders.
    pub(crate) fn theta_sq(self) -> i64 {
        match self {
            Ring::GaussInt => -1,
            Ring::QuadM5 => -5,
            _ => unreachable!("not a quadratic order"),
        }
    }

    pub fn is_integral_domain(self) -> bool {
        self != Ring::ProdIntInt
    }

    pub fn is_polynomial(self) -> bool {
        matches!(self, Ring::PolyFp(_) | Ring::PolyZ)
    }

    /// Rings where `factor` is available.
    pub fn is_ufd(self) -> bool {
        matches!(
            self,
            Ring::Int | Ring::GaussInt | Ring::PolyFp(_) | Ring::PolyZ
        )
    }

    /// Rings with a Euclidean algorithm (and Bézout coefficients).
    pub fn is_euclidean(self) -> bool {
        matches!(self, Ring::Int | Ring::GaussInt | Ring::PolyFp(_))
    }

    pub fn zero(self) -> Element {
        match self {
            Ring::Int => Element::Int(BigInt::zero()),
            Ring::GaussInt => Element::Gauss(QuadInt::zero()),
            Ring::QuadM5 => Element::Quad(QuadInt::zero()),
            Ring::PolyFp(p) => Element::PolyFp(ModPoly::zero(p)),
            Ring::PolyZ => Element::PolyZ(ZPoly::zero()),
            Ring::ProdIntInt => Element::Prod(BigInt::zero(), BigInt::zero()),
        }
    }

    pub fn one(self) -> Element {
        self.from_int(BigInt::one())
    }

    /// Image of a rational integer under the unique ring map ℤ → R.
    pub fn from_int(self, n: BigInt) -> Element {
        match self {
            Ring::Int => Element::Int(n),
            Ring::GaussInt => Element::Gauss(QuadInt::new(n, 0)),
            Ring::QuadM5 => Element::Quad(QuadInt::new(n, 0)),
            Ring::PolyFp(p) => {
                let r = n.mod_floor(&BigInt::from(p));
                Element::PolyFp(ModPoly::constant(p, u64::try_from(r).unwrap_or(0)))
            }
            Ring::PolyZ => Element::PolyZ(ZPoly::constant(n)),
            Ring::ProdIntInt => Element::Prod(n.clone(), n),
        }
    }

    /// The full unit group for rings where it is finite; 𝔽_p[x] lists the
    /// nonzero constants.
    pub fn units(self) -> Vec<Element> {
        match self {
            Ring::Int => vec![self.from_int(1.into()), self.from_int((-1).into())],
            Ring::GaussInt => gauss_units().into_iter().map(Element::Gauss).collect(),
            Ring::QuadM5 => vec![self.from_int(1.into()), self.from_int((-1).into())],
            Ring::PolyFp(p) => (1..p)
                .map(|a| Element::PolyFp(ModPoly::constant(p, a)))
                .collect(),
            Ring::PolyZ => vec![self.from_int(1.into()), self.from_int((-1).into())],
            Ring::ProdIntInt => {
                let s = [BigInt::one(), -BigInt::one()];
                s.iter()
                    .flat_map(|a| s.iter().map(move |b| Element::Prod(a.clone(), b.clone())))
                    .collect()
            }
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Int => write!(f, "Z"),
            Ring::GaussInt => write!(f, "Zi"),
            Ring::QuadM5 => write!(f, "Zw5"),
            Ring::PolyFp(p) => write!(f, "Fp[x]:{p}"),
            Ring::PolyZ => write!(f, "Z[x]"),
            Ring::ProdIntInt => write!(f, "ZxZ"),
        }
    }
}

impl FromStr for Ring {
    type Err = Error;

    fn from_str(s: &str) -> Result<Ring> {
        match s.trim() {
            "Z" => Ok(Ring::Int),
            "Zi" | "Z[i]" => Ok(Ring::GaussInt),
            "Zw5" | "Z[w5]" | "Z[w]" | "Z[sqrt-5]" => Ok(Ring::QuadM5),
            "Z[x]" => Ok(Ring::PolyZ),
            "ZxZ" | "Z*Z" => Ok(Ring::ProdIntInt),
            other => match other
                .strip_prefix("Fp[x]:")
                .or_else(|| other.strip_prefix('F').and_then(|t| t.strip_suffix("[x]")))
            {
                Some(p) => {
                    let p: u64 = p.parse().map_err(|_| {
                        Error::Syntax(format!("bad field characteristic in {other:?}"))
                    })?;
                    Ring::poly_fp(p)
                }
                None => Err(Error::Syntax(format!("unknown ring {other:?}"))),
            },
        }
    }
}

impl Serialize for Ring {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A ring element in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Element {
    Int(BigInt),
    Gauss(QuadInt),
    Quad(QuadInt),
    PolyFp(ModPoly),
    PolyZ(ZPoly),
    Prod(BigInt, BigInt),
}

impl Element {
    pub fn int(n: i64) -> Element {
        Element::Int(BigInt::from(n))
    }

    pub fn gauss(a: i64, b: i64) -> Element {
        Element::Gauss(QuadInt::new(a, b))
    }

    pub fn quad(a: i64, b: i64) -> Element {
        Element::Quad(QuadInt::new(a, b))
    }

    pub fn poly_fp(p: u64, c: &[u64]) -> Element {
        Element::PolyFp(ModPoly::new(p, c.to_vec()))
    }

    pub fn poly_z(c: &[i64]) -> Element {
        Element::PolyZ(ZPoly::from_i64(c))
    }

    pub fn prod(a: i64, b: i64) -> Element {
        Element::Prod(BigInt::from(a), BigInt::from(b))
    }

    pub fn ring(&self) -> Ring {
        match self {
            Element::Int(_) => Ring::Int,
            Element::Gauss(_) => Ring::GaussInt,
            Element::Quad(_) => Ring::QuadM5,
            Element::PolyFp(f) => Ring::PolyFp(f.modulus()),
            Element::PolyZ(_) => Ring::PolyZ,
            Element::Prod(..) => Ring::ProdIntInt,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Element::Int(n) => n.is_zero(),
            Element::Gauss(q) | Element::Quad(q) => q.is_zero(),
            Element::PolyFp(f) => f.is_zero(),
            Element::PolyZ(f) => f.is_zero(),
            Element::Prod(a, b) => a.is_zero() && b.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        *self == self.ring().one()
    }

    /// Membership in the unit group.
    pub fn is_unit(&self) -> bool {
        match self {
            Element::Int(n) => n.abs().is_one(),
            Element::Gauss(q) => q.norm(-1).is_one(),
            Element::Quad(q) => q.norm(-5).is_one(),
            Element::PolyFp(f) => f.degree() == Some(0),
            Element::PolyZ(f) => f.degree() == Some(0) && f.lc().abs().is_one(),
            Element::Prod(a, b) => a.abs().is_one() && b.abs().is_one(),
        }
    }

    /// Inverse of a unit.
    pub fn unit_inverse(&self) -> Option<Element> {
        if !self.is_unit() {
            return None;
        }
        Some(match self {
            Element::Gauss(q) => Element::Gauss(q.conj()),
            Element::PolyFp(f) => {
                let p = f.modulus();
                Element::PolyFp(ModPoly::constant(p, int::inv_mod(f.lc(), p)))
            }
            other => other.clone(),
        })
    }

    /// Distinguished representative of the associate class.
    pub fn canonical_associate(&self) -> Element {
        self.normalize_with_unit().0
    }

    /// `(rep, u)` with `rep = u · self` and `u` a unit.
    pub fn normalize_with_unit(&self) -> (Element, Element) {
        match self {
            Element::Int(n) => {
                let u = if n.is_negative() { -1 } else { 1 };
                (Element::Int(n.abs()), Element::int(u))
            }
            Element::Gauss(q) => {
                let (rep, u) = gauss_normalize(q);
                (Element::Gauss(rep), Element::Gauss(u))
            }
            Element::Quad(q) => {
                let (rep, u) = quad_normalize(q);
                (Element::Quad(rep), Element::Int(u).lift_into(Ring::QuadM5))
            }
            Element::PolyFp(f) => {
                let p = f.modulus();
                if f.is_zero() {
                    return (self.clone(), Ring::PolyFp(p).one());
                }
                let inv = int::inv_mod(f.lc(), p);
                (
                    Element::PolyFp(f.monic()),
                    Element::PolyFp(ModPoly::constant(p, inv)),
                )
            }
            Element::PolyZ(f) => {
                if f.lc().is_negative() {
                    (Element::PolyZ(f.neg()), Element::poly_z(&[-1]))
                } else {
                    (self.clone(), Element::poly_z(&[1]))
                }
            }
            Element::Prod(a, b) => {
                let s = |x: &BigInt| {
                    if x.is_negative() {
                        -BigInt::one()
                    } else {
                        BigInt::one()
                    }
                };
                (Element::Prod(a.abs(), b.abs()), Element::Prod(s(a), s(b)))
            }
        }
    }

    fn lift_into(self, ring: Ring) -> Element {
        match self {
            Element::Int(n) => ring.from_int(n),
            other => other,
        }
    }

    /// Enumeration key: see the ring table for the per-ring rule.
    pub fn height(&self) -> BigUint {
        let abs = |n: &BigInt| n.abs().to_biguint().unwrap();
        match self {
            Element::Int(n) => abs(n),
            Element::Gauss(q) | Element::Quad(q) => abs(&q.height()),
            Element::PolyFp(f) => {
                let p = BigUint::from(f.modulus());
                f.coeffs()
                    .iter()
                    .rev()
                    .fold(BigUint::zero(), |acc, &c| acc * &p + c)
            }
            Element::PolyZ(f) => {
                let deg = BigUint::from(f.degree().unwrap_or(0));
                abs(&f.max_abs_coeff()).max(deg)
            }
            Element::Prod(a, b) => abs(a).max(abs(b)),
        }
    }

    fn tie_cmp(&self, other: &Element) -> Ordering {
        match (self, other) {
            (Element::Int(a), Element::Int(b)) => a.cmp(b),
            (Element::Gauss(a), Element::Gauss(b)) | (Element::Quad(a), Element::Quad(b)) => {
                a.cmp(b)
            }
            (Element::PolyFp(a), Element::PolyFp(b)) => a.cmp(b),
            (Element::PolyZ(a), Element::PolyZ(b)) => a.cmp(b),
            (Element::Prod(a1, b1), Element::Prod(a2, b2)) => (a1, b1).cmp(&(a2, b2)),
            _ => self.ring().cmp(&other.ring()),
        }
    }

    /// Norm-like size used to order candidate divisors: |n| for ℤ, the field
    /// norm for quadratic orders, the encoding for 𝔽_p[x], (degree, height)
    /// for ℤ[x] flattened into one integer key.
    pub(crate) fn size_key(&self) -> (BigUint, BigUint) {
        match self {
            Element::Gauss(q) => (q.norm(-1).to_biguint().unwrap(), BigUint::zero()),
            Element::Quad(q) => (q.norm(-5).to_biguint().unwrap(), BigUint::zero()),
            Element::PolyZ(f) => (BigUint::from(f.degree().unwrap_or(0)), self.height()),
            _ => (self.height(), BigUint::zero()),
        }
    }

    pub fn as_int(&self) -> Option<&BigInt> {
        match self {
            Element::Int(n) => Some(n),
            _ => None,
        }
    }
}

/// Canonical enumeration order: ring, then height, then payload.
impl Ord for Element {
    fn cmp(&self, other: &Self) -> Ordering {
        self.ring()
            .cmp(&other.ring())
            .then_with(|| self.height().cmp(&other.height()))
            .then_with(|| self.tie_cmp(other))
    }
}

impl PartialOrd for Element {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_element(self))
    }
}

impl Serialize for Element {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

pub(crate) fn same_ring(a: &Element, b: &Element) -> Result<Ring> {
    if a.ring() != b.ring() {
        return Err(Error::RingMismatch(
            a.ring().to_string(),
            b.ring().to_string(),
        ));
    }
    Ok(a.ring())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ring_specs_round_trip() {
        for s in ["Z", "Zi", "Zw5", "Fp[x]:3", "Z[x]", "ZxZ"] {
            assert_eq!(s.parse::<Ring>().unwrap().to_string(), s);
        }
        assert!("Fp[x]:4".parse::<Ring>().is_err());
        assert!("Fp[x]:101".parse::<Ring>().is_err());
        assert!("Q".parse::<Ring>().is_err());
    }

    #[test]
    fn unit_examples() {
        assert!(Element::int(-1).is_unit());
        assert!(Element::gauss(0, 1).is_unit());
        assert!(!Element::poly_z(&[2]).is_unit());
        assert!(Element::poly_fp(5, &[3]).is_unit());
        assert!(!Element::quad(0, 1).is_unit());
        assert!(Element::prod(-1, 1).is_unit());
        assert!(!Element::prod(1, 0).is_unit());
    }

    #[test]
    fn canonical_associate_examples() {
        assert_eq!(Element::int(-8).canonical_associate(), Element::int(8));
        assert_eq!(
            Element::gauss(0, 2).canonical_associate(),
            Element::gauss(2, 0)
        );
        assert_eq!(
            Element::poly_fp(3, &[0, 2]).canonical_associate(),
            Element::poly_fp(3, &[0, 1])
        );
        assert_eq!(
            Element::quad(0, -1).canonical_associate(),
            Element::quad(0, 1)
        );
        assert_eq!(
            Element::poly_z(&[1, -2]).canonical_associate(),
            Element::poly_z(&[-1, 2])
        );
        assert_eq!(
            Element::prod(-2, -3).canonical_associate(),
            Element::prod(2, 3)
        );
    }

    /// is_unit agrees with "divides 1" and with canonical_associate landing
    /// on the identity.
    #[test]
    fn unit_characterizations_agree() {
        for ring in [
            Ring::Int,
            Ring::GaussInt,
            Ring::QuadM5,
            Ring::PolyFp(3),
            Ring::PolyZ,
            Ring::ProdIntInt,
        ] {
            let w = Window::new(2, 2);
            for x in enumerate_window(ring, &w, Filter::All).unwrap() {
                let divides_one = arith::div_exact(&ring.one(), &x).unwrap().is_some();
                assert_eq!(x.is_unit(), divides_one, "{x}");
                assert_eq!(x.is_unit(), x.canonical_associate().is_one(), "{x}");
                let (rep, u) = x.normalize_with_unit();
                assert!(u.is_unit());
                assert_eq!(ArithOp::Mul.apply(&u, Some(&x)).unwrap(), rep);
            }
        }
    }

    #[test]
    fn height_examples() {
        assert_eq!(Element::int(-7).height(), BigUint::from(7u32));
        assert_eq!(Element::quad(1, -3).height(), BigUint::from(3u32));
        assert_eq!(Element::poly_z(&[1, 2, 1]).height(), BigUint::from(2u32));
        assert_eq!(Element::poly_fp(3, &[1, 1]).height(), BigUint::from(4u32));
        assert_eq!(Element::prod(-4, 2).height(), BigUint::from(4u32));
    }
}
