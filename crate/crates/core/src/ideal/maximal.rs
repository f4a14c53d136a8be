//! Maximal ideals above an element, the Jacobson radical j(⟨x⟩) and the
//! radical √⟨x⟩ of principal ideals.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::{quad_payload, Hnf, Ideal};
use crate::error::{Error, Result};
use crate::int;
use crate::modpoly::ModPoly;
use crate::quadratic::QuadInt;
use crate::ring::{factor, Element, Ring};
use crate::zpoly::ZPoly;

/// How a rational prime decomposes in ℤ[√−5].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum QuadPrimeKind {
    Inert,
    Ramified,
    SplitPlus,
    SplitMinus,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

/// Canonical name of a maximal ideal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum MaximalIdeal {
    /// `(p)` in ℤ.
    IntPrime(BigInt),
    /// `(π)` in ℤ[i], π a first-quadrant Gaussian prime.
    GaussPrime(QuadInt),
    /// A prime of ℤ[√−5] above `p`. Split primes are `(p, ω + a)` (plus) and
    /// `(p, ω − a)` (minus) with `a` the least root of `t² ≡ −5 (mod p)`;
    /// `p = 2` gives `(2, 1 + ω)` (a = 1) and `p = 5` gives `(ω)` (a = 0).
    QuadPrime {
        p: BigInt,
        kind: QuadPrimeKind,
        a: Option<BigInt>,
    },
    /// `(h)` in 𝔽_p[x], h monic irreducible.
    PolyFpPrime(ModPoly),
    /// `(p, h)` in ℤ[x], h monic irreducible modulo p (lifted with
    /// coefficients in `[0, p)`).
    ZxPrime { p: u64, h: ModPoly },
    /// `pℤ × ℤ` (left) or `ℤ × pℤ` (right).
    ProdPrime { side: Side, p: BigInt },
}

impl MaximalIdeal {
    pub fn ring(&self) -> Ring {
        match self {
            MaximalIdeal::IntPrime(_) => Ring::Int,
            MaximalIdeal::GaussPrime(_) => Ring::GaussInt,
            MaximalIdeal::QuadPrime { .. } => Ring::QuadM5,
            MaximalIdeal::PolyFpPrime(h) => Ring::PolyFp(h.modulus()),
            MaximalIdeal::ZxPrime { .. } => Ring::PolyZ,
            MaximalIdeal::ProdPrime { .. } => Ring::ProdIntInt,
        }
    }

    /// HNF of a prime of ℤ[√−5].
    fn quad_hnf(p: &BigInt, kind: QuadPrimeKind, a: &Option<BigInt>) -> Hnf {
        let a = a.clone().unwrap_or_default();
        match kind {
            QuadPrimeKind::Inert => Hnf::new(p.clone(), 0, p.clone()),
            QuadPrimeKind::Ramified => Hnf::new(p.clone(), a, 1),
            QuadPrimeKind::SplitPlus => Hnf::new(p.clone(), a, 1),
            QuadPrimeKind::SplitMinus => Hnf::new(p.clone(), p - a, 1),
        }
    }

    pub fn ideal(&self) -> Ideal {
        match self {
            MaximalIdeal::IntPrime(p) => Ideal::Principal(Element::Int(p.clone())),
            MaximalIdeal::GaussPrime(q) => Ideal::Principal(Element::Gauss(q.clone())),
            MaximalIdeal::QuadPrime { p, kind, a } => {
                Ideal::Hnf(Ring::QuadM5, Self::quad_hnf(p, *kind, a))
            }
            MaximalIdeal::PolyFpPrime(h) => Ideal::Principal(Element::PolyFp(h.clone())),
            MaximalIdeal::ZxPrime { p, h } => Ideal::TwoGen(
                Element::PolyZ(ZPoly::constant(BigInt::from(*p))),
                Element::PolyZ(ZPoly::lift(h)),
            ),
            MaximalIdeal::ProdPrime { side, p } => Ideal::Principal(match side {
                Side::Left => Element::Prod(p.clone(), BigInt::one()),
                Side::Right => Element::Prod(BigInt::one(), p.clone()),
            }),
        }
    }

    /// `y ∈ m`, decided directly from the descriptor.
    pub fn contains(&self, y: &Element) -> Result<bool> {
        if y.ring() != self.ring() {
            return Err(Error::RingMismatch(
                self.ring().to_string(),
                y.ring().to_string(),
            ));
        }
        Ok(match (self, y) {
            (MaximalIdeal::ZxPrime { p, h }, Element::PolyZ(f)) => h.divides(&f.reduce(*p)),
            (MaximalIdeal::ProdPrime { side, p }, Element::Prod(a, b)) => match side {
                Side::Left => a.is_multiple_of(p),
                Side::Right => b.is_multiple_of(p),
            },
            (MaximalIdeal::QuadPrime { p, kind, a }, Element::Quad(q)) => {
                Self::quad_hnf(p, *kind, a).contains(q)
            }
            _ => self.ideal().contains(y)?,
        })
    }
}

impl fmt::Display for MaximalIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MaximalIdeal::IntPrime(p) => write!(f, "IntPrime({p})"),
            MaximalIdeal::GaussPrime(q) => write!(f, "GaussPrime({})", Element::Gauss(q.clone())),
            MaximalIdeal::QuadPrime { p, kind, a } => {
                let kind = match kind {
                    QuadPrimeKind::Inert => "inert",
                    QuadPrimeKind::Ramified => "ramified",
                    QuadPrimeKind::SplitPlus => "split_plus",
                    QuadPrimeKind::SplitMinus => "split_minus",
                };
                match a {
                    Some(a) => write!(f, "QuadPrime({p}, {kind}, a={a})"),
                    None => write!(f, "QuadPrime({p}, {kind})"),
                }
            }
            MaximalIdeal::PolyFpPrime(h) => {
                write!(f, "PolyFpPrime({})", Element::PolyFp(h.clone()))
            }
            MaximalIdeal::ZxPrime { p, h } => {
                write!(f, "ZxPrime({p}, {})", Element::PolyZ(ZPoly::lift(h)))
            }
            MaximalIdeal::ProdPrime { side, p } => {
                let side = if *side == Side::Left { "left" } else { "right" };
                write!(f, "ProdPrime({side}, {p})")
            }
        }
    }
}

impl Serialize for MaximalIdeal {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("MaximalIdeal", 3)?;
        st.serialize_field("descriptor", &self.to_string())?;
        st.serialize_field("ideal", &self.ideal())?;
        st.end()
    }
}

/// Every prime of ℤ[√−5] above the rational prime `p`.
pub fn quad_primes_over(p: &BigInt) -> Result<Vec<MaximalIdeal>> {
    let q = |kind, a: Option<i64>| MaximalIdeal::QuadPrime {
        p: p.clone(),
        kind,
        a: a.map(BigInt::from),
    };
    let small = p
        .to_u64()
        .ok_or_else(|| Error::Unsupported(format!("prime {p} beyond 64 bits")))?;
    Ok(match small {
        2 => vec![q(QuadPrimeKind::Ramified, Some(1))],
        5 => vec![q(QuadPrimeKind::Ramified, Some(0))],
        _ => {
            let minus5 = (small - 5 % small) % small;
            match int::sqrt_mod(minus5, small) {
                Some(a) => {
                    let a = a as i64;
                    vec![
                        q(QuadPrimeKind::SplitPlus, Some(a)),
                        q(QuadPrimeKind::SplitMinus, Some(a)),
                    ]
                }
                None => vec![q(QuadPrimeKind::Inert, None)],
            }
        }
    })
}

/// The maximal ideals containing `x`. The flags in `all_primes_on` mark a
/// side of ℤ × ℤ on which every prime qualifies; only primes up to the
/// caller's bound are listed there.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MaximalIdeals {
    pub ideals: Vec<MaximalIdeal>,
    pub all_primes_on: Vec<Side>,
}

impl MaximalIdeals {
    fn finite(ideals: Vec<MaximalIdeal>) -> Self {
        MaximalIdeals {
            ideals,
            all_primes_on: Vec::new(),
        }
    }
}

fn prime_factors(x: &Element) -> Result<Vec<Element>> {
    Ok(factor(x)?.factors.into_iter().map(|(p, _)| p).collect())
}

/// Maximal ideals containing `x`; units give the empty set. ℤ[x] always
/// answers `InfiniteSet`, as does ℤ × ℤ with a zero coordinate and no
/// `prime_bound`.
pub fn maximal_ideals_containing(x: &Element, prime_bound: Option<u64>) -> Result<MaximalIdeals> {
    if x.is_zero() {
        return Err(Error::ZeroInput);
    }
    if x.is_unit() {
        return Ok(MaximalIdeals::finite(Vec::new()));
    }
    let ideals = match x {
        Element::Int(_) => prime_factors(x)?
            .into_iter()
            .map(|p| MaximalIdeal::IntPrime(p.as_int().unwrap().clone()))
            .collect(),
        Element::Gauss(_) => prime_factors(x)?
            .into_iter()
            .map(|p| MaximalIdeal::GaussPrime(quad_payload(&p).clone()))
            .collect(),
        Element::PolyFp(_) => prime_factors(x)?
            .into_iter()
            .map(|p| match p {
                Element::PolyFp(h) => MaximalIdeal::PolyFpPrime(h),
                _ => unreachable!(),
            })
            .collect(),
        Element::Quad(q) => {
            let mut out = Vec::new();
            for (p, _) in int::factor(&q.norm(-5))? {
                for m in quad_primes_over(&p)? {
                    if m.contains(x)? {
                        out.push(m);
                    }
                }
            }
            out
        }
        Element::PolyZ(f) => {
            let why = if f.is_constant() {
                format!("(p, h) for every prime p dividing {x} and every irreducible h mod p")
            } else {
                format!("(p, h) for infinitely many primes p at which {x} has an irreducible factor h mod p")
            };
            return Err(Error::InfiniteSet(why));
        }
        Element::Prod(a, b) => {
            let mut out = MaximalIdeals::finite(Vec::new());
            for (side, c) in [(Side::Left, a), (Side::Right, b)] {
                if c.is_zero() {
                    let bound = prime_bound.ok_or_else(|| {
                        Error::InfiniteSet(format!("{x} lies in every maximal ideal of the {side:?} side; pass a prime bound"))
                    })?;
                    out.all_primes_on.push(side);
                    for p in int::primes_up_to(bound) {
                        out.ideals.push(MaximalIdeal::ProdPrime {
                            side,
                            p: BigInt::from(p),
                        });
                    }
                } else if !c.abs().is_one() {
                    for (p, _) in int::factor(c)? {
                        out.ideals.push(MaximalIdeal::ProdPrime { side, p });
                    }
                }
            }
            return Ok(out);
        }
    };
    Ok(MaximalIdeals::finite(ideals))
}

/// j(⟨x⟩): the intersection of the maximal ideals containing `x`, with
/// j(⟨unit⟩) = R and j(⟨0⟩) = J(R) = 0 in every ring here.
pub fn jacobson_radical_principal(x: &Element) -> Result<Ideal> {
    let ring = x.ring();
    if x.is_zero() {
        return Ok(Ideal::zero(ring));
    }
    if x.is_unit() {
        return Ok(Ideal::unit(ring));
    }
    match x {
        Element::Quad(_) => {
            let ms = maximal_ideals_containing(x, None)?.ideals;
            let hnf = ms
                .iter()
                .map(|m| match m.ideal() {
                    Ideal::Hnf(_, h) => h,
                    _ => unreachable!(),
                })
                .reduce(|acc, h| acc.mul(&h, -5))
                .expect("a nonunit lies in some maximal ideal");
            Ok(Ideal::Hnf(Ring::QuadM5, hnf))
        }
        Element::Prod(a, b) => Ok(Ideal::Principal(Element::Prod(
            int_radical(a)?,
            int_radical(b)?,
        ))),
        Element::PolyZ(_) => Err(maximal_ideals_containing(x, None).unwrap_err()),
        _ => radical_principal(x),
    }
}

/// rad(0) = 0, rad(±1) = 1.
fn int_radical(n: &BigInt) -> Result<BigInt> {
    if n.is_zero() {
        Ok(BigInt::zero())
    } else {
        int::radical(&n.abs())
    }
}

/// √⟨x⟩ = ⟨product of the distinct irreducible factors of x⟩ in the UFDs.
pub fn radical_principal(x: &Element) -> Result<Ideal> {
    let ring = x.ring();
    if !ring.is_ufd() {
        return Err(Error::Unsupported(format!(
            "radical of a principal ideal over {ring}"
        )));
    }
    if x.is_zero() {
        return Err(Error::ZeroInput);
    }
    if x.is_unit() {
        return Ok(Ideal::unit(ring));
    }
    let g = prime_factors(x)?
        .iter()
        .fold(ring.one(), |acc, p| crate::ring::mul(&acc, p));
    Ok(Ideal::Principal(g.canonical_associate()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn int_examples() {
        let m = maximal_ideals_containing(&Element::int(12), None).unwrap();
        assert_eq!(
            m.ideals,
            vec![
                MaximalIdeal::IntPrime(2.into()),
                MaximalIdeal::IntPrime(3.into())
            ]
        );
        assert!(maximal_ideals_containing(&Element::int(1), None)
            .unwrap()
            .ideals
            .is_empty());
        assert_eq!(
            maximal_ideals_containing(&Element::int(0), None),
            Err(Error::ZeroInput)
        );
        assert_eq!(
            jacobson_radical_principal(&Element::int(8)).unwrap(),
            Ideal::Principal(Element::int(2))
        );
        assert_eq!(
            jacobson_radical_principal(&Element::int(6)).unwrap(),
            Ideal::Principal(Element::int(6))
        );
        assert_eq!(
            jacobson_radical_principal(&Element::int(1)).unwrap(),
            Ideal::Principal(Element::int(1))
        );
        assert_eq!(
            radical_principal(&Element::int(-8)).unwrap(),
            Ideal::Principal(Element::int(2))
        );
    }

    #[test]
    fn quad_decomposition_of_six() {
        let m = maximal_ideals_containing(&Element::quad(6, 0), None)
            .unwrap()
            .ideals;
        let names: Vec<String> = m.iter().map(|m| m.to_string()).collect();
        assert_eq!(
            names,
            [
                "QuadPrime(2, ramified, a=1)",
                "QuadPrime(3, split_plus, a=1)",
                "QuadPrime(3, split_minus, a=1)"
            ]
        );
        assert_eq!(
            jacobson_radical_principal(&Element::quad(2, 0)).unwrap(),
            Ideal::Hnf(Ring::QuadM5, Hnf::new(2, 1, 1))
        );
    }

    #[test]
    fn quad_primes_have_prime_index() {
        for p in int::primes_up_to(60) {
            let p = BigInt::from(p);
            let ms = quad_primes_over(&p).unwrap();
            for m in &ms {
                let Ideal::Hnf(_, h) = m.ideal() else {
                    panic!()
                };
                // closed under multiplication by ω
                for b in h.basis() {
                    assert!(h.contains(&b.mul(&QuadInt::new(0, 1), -5)), "{m}");
                }
                assert!(h.contains(&QuadInt::new(p.clone(), 0)));
                let idx = h.index();
                assert!(idx == p || idx == &p * &p, "{m}");
            }
            let total: BigInt = ms
                .iter()
                .map(|m| match m.ideal() {
                    Ideal::Hnf(_, h) => h.index(),
                    _ => unreachable!(),
                })
                .product();
            // norms multiply to p² (with multiplicity 2 for ramified primes)
            let ramified = ms.len() == 1
                && matches!(
                    &ms[0],
                    MaximalIdeal::QuadPrime {
                        kind: QuadPrimeKind::Ramified,
                        ..
                    }
                );
            assert_eq!(if ramified { &total * &total } else { total }, &p * &p);
        }
    }

    #[test]
    fn polynomial_and_product_examples() {
        let x2 = Element::poly_fp(3, &[0, 0, 1]);
        assert_eq!(
            radical_principal(&x2).unwrap(),
            Ideal::Principal(Element::poly_fp(3, &[0, 1]))
        );
        assert!(matches!(
            maximal_ideals_containing(&Element::poly_z(&[2]), None),
            Err(Error::InfiniteSet(_))
        ));
        assert!(matches!(
            maximal_ideals_containing(&Element::prod(2, 0), None),
            Err(Error::InfiniteSet(_))
        ));
        let m = maximal_ideals_containing(&Element::prod(2, 0), Some(5)).unwrap();
        assert_eq!(m.all_primes_on, vec![Side::Right]);
        assert_eq!(m.ideals.len(), 4);
        assert_eq!(
            jacobson_radical_principal(&Element::prod(8, 0)).unwrap(),
            Ideal::Principal(Element::prod(2, 0))
        );
    }
}
