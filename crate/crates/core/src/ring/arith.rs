//! Ring arithmetic, exact division, gcds and factorization.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::{same_ring, Element};
use crate::error::{Error, Result};
use crate::int;
use crate::modpoly::ModPoly;
use crate::quadratic::{gauss_div_rem, QuadInt};
use crate::zpoly::{self, ZPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Neg,
}

impl ArithOp {
    /// Applies the operation; `Neg` ignores `b`, the others require it.
    pub fn apply(self, a: &Element, b: Option<&Element>) -> Result<Element> {
        if self == ArithOp::Neg {
            return Ok(neg(a));
        }
        let b = b.ok_or_else(|| Error::Invalid(format!("{self:?} needs two operands")))?;
        same_ring(a, b)?;
        Ok(match self {
            ArithOp::Add => add(a, b),
            ArithOp::Sub => add(a, &neg(b)),
            ArithOp::Mul => mul(a, b),
            ArithOp::Neg => unreachable!(),
        })
    }
}

pub(crate) fn neg(a: &Element) -> Element {
    match a {
        Element::Int(n) => Element::Int(-n),
        Element::Gauss(q) => Element::Gauss(q.neg()),
        Element::Quad(q) => Element::Quad(q.neg()),
        Element::PolyFp(f) => Element::PolyFp(f.neg()),
        Element::PolyZ(f) => Element::PolyZ(f.neg()),
        Element::Prod(x, y) => Element::Prod(-x, -y),
    }
}

/// Sum of two elements of the same ring (caller checks the ring).
pub(crate) fn add(a: &Element, b: &Element) -> Element {
    match (a, b) {
        (Element::Int(x), Element::Int(y)) => Element::Int(x + y),
        (Element::Gauss(x), Element::Gauss(y)) => Element::Gauss(x.add(y)),
        (Element::Quad(x), Element::Quad(y)) => Element::Quad(x.add(y)),
        (Element::PolyFp(x), Element::PolyFp(y)) => Element::PolyFp(x.add(y)),
        (Element::PolyZ(x), Element::PolyZ(y)) => Element::PolyZ(x.add(y)),
        (Element::Prod(a1, b1), Element::Prod(a2, b2)) => Element::Prod(a1 + a2, b1 + b2),
        _ => panic!("ring mismatch in add"),
    }
}

/// Product of two elements of the same ring (caller checks the ring).
pub(crate) fn mul(a: &Element, b: &Element) -> Element {
    match (a, b) {
        (Element::Int(x), Element::Int(y)) => Element::Int(x * y),
        (Element::Gauss(x), Element::Gauss(y)) => Element::Gauss(x.mul(y, -1)),
        (Element::Quad(x), Element::Quad(y)) => Element::Quad(x.mul(y, -5)),
        (Element::PolyFp(x), Element::PolyFp(y)) => Element::PolyFp(x.mul(y)),
        (Element::PolyZ(x), Element::PolyZ(y)) => Element::PolyZ(x.mul(y)),
        (Element::Prod(a1, b1), Element::Prod(a2, b2)) => Element::Prod(a1 * a2, b1 * b2),
        _ => panic!("ring mismatch in mul"),
    }
}

pub(crate) fn pow(a: &Element, e: u32) -> Element {
    (0..e).fold(a.ring().one(), |acc, _| mul(&acc, a))
}

/// `Some(q)` with `a = q·b`, or `None` when `b` does not divide `a`.
pub fn div_exact(a: &Element, b: &Element) -> Result<Option<Element>> {
    same_ring(a, b)?;
    Ok(match (a, b) {
        (Element::Int(x), Element::Int(y)) => {
            if y.is_zero() {
                x.is_zero().then(|| Element::int(0))
            } else {
                let (q, r) = x.div_rem(y);
                r.is_zero().then_some(Element::Int(q))
            }
        }
        (Element::Gauss(x), Element::Gauss(y)) => x.div_exact(y, -1).map(Element::Gauss),
        (Element::Quad(x), Element::Quad(y)) => x.div_exact(y, -5).map(Element::Quad),
        (Element::PolyFp(x), Element::PolyFp(y)) => x.div_exact(y).map(Element::PolyFp),
        (Element::PolyZ(x), Element::PolyZ(y)) => x.div_exact(y).map(Element::PolyZ),
        (Element::Prod(a1, b1), Element::Prod(a2, b2)) => {
            let one = |x: &BigInt, y: &BigInt| -> Option<BigInt> {
                if y.is_zero() {
                    x.is_zero().then(BigInt::zero)
                } else {
                    let (q, r) = x.div_rem(y);
                    r.is_zero().then_some(q)
                }
            };
            match (one(a1, a2), one(b1, b2)) {
                (Some(q1), Some(q2)) => Some(Element::Prod(q1, q2)),
                _ => None,
            }
        }
        _ => unreachable!(),
    })
}

pub fn divides(d: &Element, x: &Element) -> Result<bool> {
    Ok(div_exact(x, d)?.is_some())
}

fn gauss_ext_gcd(a: &QuadInt, b: &QuadInt) -> (QuadInt, QuadInt, QuadInt) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (QuadInt::one(), QuadInt::zero());
    let (mut t0, mut t1) = (QuadInt::zero(), QuadInt::one());
    while !r1.is_zero() {
        let (q, r) = gauss_div_rem(&r0, &r1);
        r0 = std::mem::replace(&mut r1, r);
        let s = s0.sub(&q.mul(&s1, -1));
        s0 = std::mem::replace(&mut s1, s);
        let t = t0.sub(&q.mul(&t1, -1));
        t0 = std::mem::replace(&mut t1, t);
    }
    (r0, s0, t0)
}

/// Bézout form `g = u·a + v·b` with `g` the canonical gcd. Euclidean rings only.
pub fn extended_gcd(a: &Element, b: &Element) -> Result<(Element, Element, Element)> {
    let ring = same_ring(a, b)?;
    if !ring.is_euclidean() {
        return Err(Error::Unsupported(format!("extended_gcd over {ring}")));
    }
    if a.is_zero() && b.is_zero() {
        return Err(Error::BothZero);
    }
    Ok(match (a, b) {
        (Element::Int(x), Element::Int(y)) => {
            let (g, u, v) = int::ext_gcd(x, y);
            (Element::Int(g), Element::Int(u), Element::Int(v))
        }
        (Element::Gauss(x), Element::Gauss(y)) => {
            let (g, u, v) = gauss_ext_gcd(x, y);
            let (g, w) = Element::Gauss(g).normalize_with_unit();
            (g, mul(&w, &Element::Gauss(u)), mul(&w, &Element::Gauss(v)))
        }
        (Element::PolyFp(x), Element::PolyFp(y)) => {
            let (g, u, v) = x.ext_gcd(y);
            (Element::PolyFp(g), Element::PolyFp(u), Element::PolyFp(v))
        }
        _ => unreachable!(),
    })
}

/// Result of a gcd query: domains without gcds report two incomparable
/// maximal common divisors instead.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GcdOutcome {
    Gcd(Element),
    NoGcdWitness(Element, Element),
}

impl GcdOutcome {
    pub fn gcd(&self) -> Option<&Element> {
        match self {
            GcdOutcome::Gcd(g) => Some(g),
            GcdOutcome::NoGcdWitness(..) => None,
        }
    }
}

/// Canonical elements of ℤ[√−5] of norm exactly `d`.
pub(crate) fn quad_elements_of_norm(d: &BigInt) -> Vec<QuadInt> {
    let mut out = Vec::new();
    let mut y = BigInt::zero();
    while &y * &y * 5 <= *d {
        let rest: BigInt = d - &y * &y * 5;
        let x = rest.sqrt();
        if &x * &x == rest {
            for yy in [y.clone(), -y.clone()] {
                let q = QuadInt::new(x.clone(), yy);
                let (c, _) = crate::quadratic::quad_normalize(&q);
                if !out.contains(&c) {
                    out.push(c);
                }
            }
        }
        y += 1;
    }
    out
}

fn divisors(n: &BigInt) -> Result<Vec<BigInt>> {
    let mut out = vec![BigInt::one()];
    for (p, e) in int::factor(n)? {
        let mut next = Vec::new();
        for d in &out {
            let mut pk = BigInt::one();
            for _ in 0..=e {
                next.push(d * &pk);
                pk *= &p;
            }
        }
        out = next;
    }
    out.sort();
    Ok(out)
}

/// All canonical common divisors of `a` and `b` in ℤ[√−5], by norm descent.
fn quad_common_divisors(a: &QuadInt, b: &QuadInt) -> Result<Vec<QuadInt>> {
    let n = a.norm(-5).gcd(&b.norm(-5));
    let mut out = Vec::new();
    for d in divisors(&n)? {
        for c in quad_elements_of_norm(&d) {
            if c.divides(a, -5) && c.divides(b, -5) {
                out.push(c);
            }
        }
    }
    Ok(out)
}

fn quad_gcd(a: &QuadInt, b: &QuadInt) -> Result<GcdOutcome> {
    if a.is_zero() {
        return Ok(GcdOutcome::Gcd(
            Element::Quad(b.clone()).canonical_associate(),
        ));
    }
    if b.is_zero() {
        return Ok(GcdOutcome::Gcd(
            Element::Quad(a.clone()).canonical_associate(),
        ));
    }
    let common = quad_common_divisors(a, b)?;
    if let Some(g) = common
        .iter()
        .find(|g| common.iter().all(|c| c.divides(g, -5)))
    {
        return Ok(GcdOutcome::Gcd(Element::Quad(g.clone())));
    }
    let maximal: Vec<&QuadInt> = common
        .iter()
        .filter(|c| !common.iter().any(|d| d != *c && c.divides(d, -5)))
        .collect();
    Ok(GcdOutcome::NoGcdWitness(
        Element::Quad(maximal[0].clone()),
        Element::Quad(maximal[1].clone()),
    ))
}

/// Greatest common divisor, canonical-associate normalized.
pub fn gcd(a: &Element, b: &Element) -> Result<GcdOutcome> {
    same_ring(a, b)?;
    if a.is_zero() && b.is_zero() {
        return Err(Error::BothZero);
    }
    Ok(match (a, b) {
        (Element::Quad(x), Element::Quad(y)) => return quad_gcd(x, y),
        (Element::PolyZ(x), Element::PolyZ(y)) => GcdOutcome::Gcd(Element::PolyZ(x.gcd(y))),
        (Element::Prod(a1, b1), Element::Prod(a2, b2)) => {
            GcdOutcome::Gcd(Element::Prod(a1.gcd(a2), b1.gcd(b2)))
        }
        _ => GcdOutcome::Gcd(extended_gcd(a, b)?.0),
    })
}

/// `x = unit · Π factorᵉ` with canonical, pairwise non-associated irreducibles.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Factorization {
    pub unit: Element,
    pub factors: Vec<(Element, u32)>,
}

impl Factorization {
    pub fn recompose(&self) -> Element {
        self.factors
            .iter()
            .fold(self.unit.clone(), |acc, (p, e)| mul(&acc, &pow(p, *e)))
    }
}

fn gauss_primes_over(p: &BigInt) -> Vec<QuadInt> {
    if *p == BigInt::from(2) {
        return vec![QuadInt::new(1, 1)];
    }
    let small = p.to_u64();
    if p.mod_floor(&BigInt::from(4)) == BigInt::from(3) {
        return vec![QuadInt::new(p.clone(), 0)];
    }
    let k = match small.and_then(|q| int::sqrt_mod(q - 1, q)) {
        Some(k) => BigInt::from(k),
        None => {
            // large p ≡ 1 mod 4: search a non-residue and take c^((p-1)/4)
            let mut c = BigInt::from(2);
            loop {
                let e = (p - 1u32) / 4u32;
                let k = c.modpow(&e, p);
                if (&k * &k + 1u32).mod_floor(p).is_zero() {
                    break k;
                }
                c += 1;
            }
        }
    };
    let (g, _, _) = gauss_ext_gcd(&QuadInt::new(p.clone(), 0), &QuadInt::new(k, 1));
    let pi = crate::quadratic::gauss_normalize(&g).0;
    let other = crate::quadratic::gauss_normalize(&pi.conj()).0;
    vec![pi, other]
}

/// Factorization in the UFDs ℤ, ℤ[i], 𝔽_p[x] and ℤ[x].
pub fn factor(x: &Element) -> Result<Factorization> {
    let ring = x.ring();
    if !ring.is_ufd() {
        return Err(Error::Unsupported(format!(
            "factor over {ring} (not a UFD; use maximal_ideals_containing)"
        )));
    }
    if x.is_zero() || x.is_unit() {
        return Err(Error::UnitOrZero);
    }
    let mut f = match x {
        Element::Int(n) => Factorization {
            unit: Element::int(if n.is_negative() { -1 } else { 1 }),
            factors: int::factor(n)?
                .into_iter()
                .map(|(p, e)| (Element::Int(p), e))
                .collect(),
        },
        Element::Gauss(q) => {
            let mut rest = q.clone();
            let mut factors = Vec::new();
            for (p, _) in int::factor(&q.norm(-1))? {
                for pi in gauss_primes_over(&p) {
                    let mut e = 0;
                    while let Some(next) = rest.div_exact(&pi, -1) {
                        rest = next;
                        e += 1;
                    }
                    if e > 0 {
                        factors.push((Element::Gauss(pi), e));
                    }
                }
            }
            Factorization {
                unit: Element::Gauss(rest),
                factors,
            }
        }
        Element::PolyFp(g) => Factorization {
            unit: Element::PolyFp(ModPoly::constant(g.modulus(), g.lc())),
            factors: g
                .factor()
                .into_iter()
                .map(|(h, e)| (Element::PolyFp(h), e))
                .collect(),
        },
        Element::PolyZ(g) => {
            let (content, polys) = zpoly::factor(g)?;
            let unit = Element::poly_z(&[if content.is_negative() { -1 } else { 1 }]);
            let mut factors: Vec<(Element, u32)> = if content.abs().is_one() {
                Vec::new()
            } else {
                int::factor(&content)?
                    .into_iter()
                    .map(|(p, e)| (Element::PolyZ(ZPoly::constant(p)), e))
                    .collect()
            };
            factors.extend(polys.into_iter().map(|(h, e)| (Element::PolyZ(h), e)));
            Factorization { unit, factors }
        }
        _ => unreachable!(),
    };
    f.factors.sort();
    debug_assert!(f.unit.is_unit());
    Ok(f)
}

/// Irreducibility in any supported ring (ℤ[√−5] via norm descent; ℤ × ℤ has
/// no irreducibles in the domain sense and always answers false).
pub fn is_irreducible(x: &Element) -> Result<bool> {
    if x.is_zero() || x.is_unit() {
        return Ok(false);
    }
    match x {
        Element::Int(n) => Ok(int::is_prime(n)),
        Element::PolyFp(f) => Ok(f.is_irreducible()),
        Element::PolyZ(f) => zpoly::is_irreducible(f),
        Element::Gauss(_) => {
            let f = factor(x)?;
            Ok(f.factors.len() == 1 && f.factors[0].1 == 1)
        }
        Element::Quad(q) => {
            let n = q.norm(-5);
            for d in divisors(&n)? {
                if d.is_one() || d == n {
                    continue;
                }
                if quad_elements_of_norm(&d).iter().any(|c| c.divides(q, -5)) {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        Element::Prod(..) => Ok(false),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_examples() {
        let w = Element::quad(0, 1);
        assert_eq!(
            ArithOp::Mul.apply(&w, Some(&w)).unwrap(),
            Element::quad(-5, 0)
        );
        assert_eq!(
            ArithOp::Mul
                .apply(&Element::int(2), Some(&Element::int(3)))
                .unwrap(),
            Element::int(6)
        );
        assert_eq!(
            ArithOp::Mul
                .apply(&Element::prod(2, 0), Some(&Element::prod(0, 3)))
                .unwrap(),
            Element::prod(0, 0)
        );
        assert!(matches!(
            ArithOp::Add.apply(&Element::int(1), Some(&Element::gauss(1, 0))),
            Err(Error::RingMismatch(..))
        ));
        assert_eq!(
            ArithOp::Neg
                .apply(&Element::poly_z(&[1, -2]), None)
                .unwrap(),
            Element::poly_z(&[-1, 2])
        );
    }

    #[test]
    fn extended_gcd_examples() {
        let check = |a: Element, b: Element, g: Element, u: Element, v: Element| {
            let got = extended_gcd(&a, &b).unwrap();
            assert_eq!(got, (g.clone(), u, v));
            assert_eq!(add(&mul(&got.1, &a), &mul(&got.2, &b)), g);
        };
        check(
            Element::int(4),
            Element::int(9),
            Element::int(1),
            Element::int(-2),
            Element::int(1),
        );
        check(
            Element::int(6),
            Element::int(10),
            Element::int(2),
            Element::int(2),
            Element::int(-1),
        );
        let (x, x1) = (Element::poly_fp(2, &[0, 1]), Element::poly_fp(2, &[1, 1]));
        let one = Element::poly_fp(2, &[1]);
        check(x, x1, one.clone(), one.clone(), one);
        assert_eq!(
            extended_gcd(&Element::int(0), &Element::int(0)),
            Err(Error::BothZero)
        );
        assert!(matches!(
            extended_gcd(&Element::quad(2, 0), &Element::quad(1, 1)),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn gauss_extended_gcd_is_normalized() {
        for a in -6i64..=6 {
            for b in -6i64..=6 {
                let x = Element::gauss(a, b);
                let y = Element::gauss(3, 1);
                let (g, u, v) = extended_gcd(&x, &y).unwrap();
                assert_eq!(g, g.canonical_associate());
                assert_eq!(add(&mul(&u, &x), &mul(&v, &y)), g);
                assert!(divides(&g, &x).unwrap() && divides(&g, &y).unwrap());
            }
        }
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(
            gcd(&Element::poly_z(&[2]), &Element::poly_z(&[0, 1])).unwrap(),
            GcdOutcome::Gcd(Element::poly_z(&[1]))
        );
        assert_eq!(
            gcd(&Element::quad(2, 0), &Element::quad(1, 1)).unwrap(),
            GcdOutcome::Gcd(Element::quad(1, 0))
        );
        assert_eq!(
            gcd(&Element::int(0), &Element::int(5)).unwrap(),
            GcdOutcome::Gcd(Element::int(5))
        );
        assert_eq!(
            gcd(&Element::int(0), &Element::int(0)),
            Err(Error::BothZero)
        );
    }

    #[test]
    fn quad_gcd_can_fail_to_exist() {
        // 6 = 2·3 = (1+ω)(1−ω): both 2 and 1+ω divide 6 and 2+2ω.
        match gcd(&Element::quad(6, 0), &Element::quad(2, 2)).unwrap() {
            GcdOutcome::NoGcdWitness(a, b) => {
                let mut pair = [a, b];
                pair.sort();
                assert_eq!(pair, [Element::quad(1, 1), Element::quad(2, 0)]);
            }
            other => panic!("expected no gcd, got {other:?}"),
        }
    }

    #[test]
    fn factor_examples() {
        let f = factor(&Element::int(12)).unwrap();
        assert_eq!(f.factors, vec![(Element::int(2), 2), (Element::int(3), 1)]);
        let f = factor(&Element::gauss(2, 0)).unwrap();
        assert_eq!(f.factors, vec![(Element::gauss(1, 1), 2)]);
        assert_eq!(f.unit, Element::gauss(0, -1));
        let f = factor(&Element::poly_z(&[0, 2, 2])).unwrap();
        assert_eq!(
            f.factors,
            vec![
                (Element::poly_z(&[0, 1]), 1),
                (Element::poly_z(&[1, 1]), 1),
                (Element::poly_z(&[2]), 1)
            ]
        );
        assert_eq!(factor(&Element::int(1)), Err(Error::UnitOrZero));
        assert!(matches!(
            factor(&Element::quad(6, 0)),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn gauss_factorizations_recompose() {
        for a in -15i64..=15 {
            for b in -15i64..=15 {
                let x = Element::gauss(a, b);
                if x.is_zero() || x.is_unit() {
                    continue;
                }
                let f = factor(&x).unwrap();
                assert_eq!(f.recompose(), x);
                assert!(f.unit.is_unit());
                for (p, _) in &f.factors {
                    assert_eq!(*p, p.canonical_associate());
                }
            }
        }
    }

    #[test]
    fn quad_irreducibles() {
        assert!(is_irreducible(&Element::quad(2, 0)).unwrap());
        assert!(is_irreducible(&Element::quad(3, 0)).unwrap());
        assert!(is_irreducible(&Element::quad(1, 1)).unwrap());
        assert!(!is_irreducible(&Element::quad(6, 0)).unwrap());
        assert!(is_irreducible(&Element::quad(0, 1)).unwrap());
    }
}
