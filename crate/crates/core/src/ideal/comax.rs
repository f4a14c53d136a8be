//! Comaximality `⟨a⟩ + ⟨b⟩ = R`, decided with a re-checkable certificate.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::hnf::module_rows;
use super::maximal::{maximal_ideals_containing, MaximalIdeal, QuadPrimeKind, Side};
use super::{quad_payload, some_irreducible_factor, Hnf};
use crate::error::{Error, Result};
use crate::int;
use crate::lattice::Lattice;
use crate::modpoly::ModPoly;
use crate::quadratic::QuadInt;
use crate::ring::{add, extended_gcd, mul, same_ring, Element, Ring};
use crate::zpoly::ZPoly;

/// Evidence for a comaximality verdict.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// `u·a + v·b = 1`.
    Bezout { u: Element, v: Element },
    /// A maximal ideal containing both elements.
    CommonMaximal(MaximalIdeal),
    /// HNF of `⟨a, b⟩` in a quadratic order, of index at least 2.
    HnfIndex(Hnf),
}

impl Certificate {
    /// Re-checks the certificate against the inputs and the claimed verdict.
    pub fn verify(&self, a: &Element, b: &Element, verdict: bool) -> Result<()> {
        let fail = |why: String| Err(Error::CertificateInvalid(why));
        match self {
            Certificate::Bezout { u, v } => {
                if !verdict {
                    return fail("Bezout certificate for a negative verdict".into());
                }
                let s = add(&mul(u, a), &mul(v, b));
                if !s.is_one() {
                    return fail(format!("{u}·({a}) + {v}·({b}) = {s}, not 1"));
                }
            }
            Certificate::CommonMaximal(m) => {
                if verdict {
                    return fail("common maximal ideal for a positive verdict".into());
                }
                if !m.contains(a)? || !m.contains(b)? {
                    return fail(format!("{m} does not contain both {a} and {b}"));
                }
            }
            Certificate::HnfIndex(h) => {
                if verdict {
                    return fail("HNF index certificate for a positive verdict".into());
                }
                let gens = [quad_payload(a).clone(), quad_payload(b).clone()];
                let again = Hnf::of(&gens, a.ring().theta_sq());
                if again.as_ref() != Some(h) || h.index() < BigInt::from(2) {
                    return fail(format!("HNF of ({a}, {b}) is not {h} of index ≥ 2"));
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Certificate::Bezout { u, v } => write!(f, "Bezout({u}, {v})"),
            Certificate::CommonMaximal(m) => write!(f, "CommonMaximal({m})"),
            Certificate::HnfIndex(h) => write!(
                f,
                "HnfIndex([[{},{}],[0,{}]], {})",
                h.d,
                h.c,
                h.e,
                h.index()
            ),
        }
    }
}

impl Serialize for Certificate {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Certificate", 3)?;
        match self {
            Certificate::Bezout { u, v } => {
                st.serialize_field("type", "Bezout")?;
                st.serialize_field("u", u)?;
                st.serialize_field("v", v)?;
            }
            Certificate::CommonMaximal(m) => {
                st.serialize_field("type", "CommonMaximal")?;
                st.serialize_field("maximal_ideal", m)?;
            }
            Certificate::HnfIndex(h) => {
                st.serialize_field("type", "HnfIndex")?;
                st.serialize_field("hnf", h)?;
            }
        }
        st.end()
    }
}

/// A maximal ideal of the ring, used when both inputs are zero.
fn some_maximal(ring: Ring) -> MaximalIdeal {
    match ring {
        Ring::Int => MaximalIdeal::IntPrime(BigInt::from(2)),
        Ring::GaussInt => MaximalIdeal::GaussPrime(QuadInt::new(1, 1)),
        Ring::QuadM5 => MaximalIdeal::QuadPrime {
            p: BigInt::from(2),
            kind: QuadPrimeKind::Ramified,
            a: Some(BigInt::one()),
        },
        Ring::PolyFp(p) => MaximalIdeal::PolyFpPrime(ModPoly::x(p)),
        Ring::PolyZ => MaximalIdeal::ZxPrime {
            p: 2,
            h: ModPoly::x(2),
        },
        Ring::ProdIntInt => MaximalIdeal::ProdPrime {
            side: Side::Left,
            p: BigInt::from(2),
        },
    }
}

/// Decides `⟨a⟩ + ⟨b⟩ = R` and returns a certificate for the verdict.
pub fn comaximal(a: &Element, b: &Element) -> Result<(bool, Certificate)> {
    let ring = same_ring(a, b)?;
    let out = comaximal_inner(ring, a, b)?;
    debug_assert!(
        out.1.verify(a, b, out.0).is_ok(),
        "certificate for ({a}, {b}) failed: {}",
        out.1
    );
    Ok(out)
}

fn comaximal_inner(ring: Ring, a: &Element, b: &Element) -> Result<(bool, Certificate)> {
    if let Some(inv) = a.unit_inverse() {
        return Ok((
            true,
            Certificate::Bezout {
                u: inv,
                v: ring.zero(),
            },
        ));
    }
    if let Some(inv) = b.unit_inverse() {
        return Ok((
            true,
            Certificate::Bezout {
                u: ring.zero(),
                v: inv,
            },
        ));
    }
    if a.is_zero() && b.is_zero() {
        return Ok((false, Certificate::CommonMaximal(some_maximal(ring))));
    }
    match (a, b) {
        (Element::Quad(x), Element::Quad(y)) => {
            let gens = [x.clone(), y.clone()];
            let h = Hnf::of(&gens, -5).expect("not both zero");
            if !h.is_unit_ideal() {
                return Ok((false, Certificate::HnfIndex(h)));
            }
            let c = Lattice::new(&module_rows(&gens, -5))
                .solve(&[BigInt::zero(), BigInt::one()])
                .expect("index 1 ideal contains 1");
            let u = Element::Quad(QuadInt::new(c[0].clone(), c[1].clone()));
            let v = Element::Quad(QuadInt::new(c[2].clone(), c[3].clone()));
            Ok((true, Certificate::Bezout { u, v }))
        }
        (Element::PolyZ(f), Element::PolyZ(g)) => match zx_common_maximal(f, g)? {
            Some((p, h)) => Ok((
                false,
                Certificate::CommonMaximal(MaximalIdeal::ZxPrime { p, h }),
            )),
            None => {
                let (u, v) = zx_bezout(f, g)?;
                Ok((
                    true,
                    Certificate::Bezout {
                        u: Element::PolyZ(u),
                        v: Element::PolyZ(v),
                    },
                ))
            }
        },
        (Element::Prod(a1, b1), Element::Prod(a2, b2)) => {
            let (l, lc) = comaximal_inner(
                Ring::Int,
                &Element::Int(a1.clone()),
                &Element::Int(a2.clone()),
            )?;
            let (r, rc) = comaximal_inner(
                Ring::Int,
                &Element::Int(b1.clone()),
                &Element::Int(b2.clone()),
            )?;
            let side_prime = |c: Certificate| match c {
                Certificate::CommonMaximal(MaximalIdeal::IntPrime(p)) => p,
                _ => unreachable!(),
            };
            match (l, r) {
                (true, true) => {
                    let (
                        Certificate::Bezout { u: u1, v: v1 },
                        Certificate::Bezout { u: u2, v: v2 },
                    ) = (lc, rc)
                    else {
                        unreachable!()
                    };
                    let pair = |x: Element, y: Element| {
                        Element::Prod(x.as_int().unwrap().clone(), y.as_int().unwrap().clone())
                    };
                    Ok((
                        true,
                        Certificate::Bezout {
                            u: pair(u1, u2),
                            v: pair(v1, v2),
                        },
                    ))
                }
                (false, _) => Ok((
                    false,
                    Certificate::CommonMaximal(MaximalIdeal::ProdPrime {
                        side: Side::Left,
                        p: side_prime(lc),
                    }),
                )),
                (true, false) => Ok((
                    false,
                    Certificate::CommonMaximal(MaximalIdeal::ProdPrime {
                        side: Side::Right,
                        p: side_prime(rc),
                    }),
                )),
            }
        }
        _ => {
            // ℤ, ℤ[i], 𝔽_p[x]: Euclid.
            let (g, u, v) = extended_gcd(a, b)?;
            if g.is_one() {
                return Ok((true, Certificate::Bezout { u, v }));
            }
            let m = maximal_ideals_containing(&g, None)?.ideals.remove(0);
            Ok((false, Certificate::CommonMaximal(m)))
        }
    }
}

fn small_gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn int_coprime(a: &BigInt, b: &BigInt) -> bool {
    match (a.to_i64(), b.to_i64()) {
        (Some(x), Some(y)) => small_gcd(x.unsigned_abs(), y.unsigned_abs()) == 1,
        _ => a.gcd(b).is_one(),
    }
}

/// Verdict only, skipping certificate construction where that is cheaper.
pub fn comaximal_verdict(a: &Element, b: &Element) -> Result<bool> {
    same_ring(a, b)?;
    Ok(match (a, b) {
        (Element::Int(x), Element::Int(y)) => int_coprime(x, y),
        (Element::Prod(a1, b1), Element::Prod(a2, b2)) => {
            int_coprime(a1, a2) && int_coprime(b1, b2)
        }
        (Element::PolyFp(f), Element::PolyFp(g)) => {
            !(f.is_zero() && g.is_zero()) && f.gcd(g).is_one()
        }
        (Element::Gauss(x), Element::Gauss(y)) | (Element::Quad(x), Element::Quad(y)) => {
            if a.is_unit() || b.is_unit() {
                return Ok(true);
            }
            if x.is_zero() && y.is_zero() {
                return Ok(false);
            }
            let d = a.ring().theta_sq();
            if int_coprime(&x.norm(d), &y.norm(d)) {
                return Ok(true);
            }
            Hnf::of(&[x.clone(), y.clone()], d).unwrap().is_unit_ideal()
        }
        (Element::PolyZ(f), Element::PolyZ(g)) => {
            if a.is_unit() || b.is_unit() {
                return Ok(true);
            }
            zx_common_maximal(f, g)?.is_none()
        }
        _ => unreachable!(),
    })
}

fn u64_prime(p: &BigInt) -> Result<u64> {
    p.to_u64()
        .ok_or_else(|| Error::Unsupported(format!("prime {p} beyond 64 bits")))
}

/// Some maximal ideal `(p, h)` of ℤ[x] containing a nonzero nonunit `f`.
fn zx_maximal_containing(f: &ZPoly) -> Result<(u64, ModPoly)> {
    let c = f.content();
    if !c.is_one() {
        let p = u64_prime(&int::some_prime_factor(&c)?)?;
        return Ok((p, ModPoly::x(p)));
    }
    let lc = f.lc();
    let mut p = 2;
    while lc.is_multiple_of(&BigInt::from(p)) {
        p = int::next_prime(p);
    }
    Ok((p, some_irreducible_factor(&f.reduce(p))))
}

/// A maximal ideal `(p, h)` containing both `f` and `g`, or `None` when they
/// are comaximal. Any such ideal makes `f mod p` and `g mod p` share the
/// factor `h`, which (for coprime f, g over ℚ) forces `p | Res(f, g)` or a
/// leading-coefficient drop, so the candidate primes are finite.
fn zx_common_maximal(f: &ZPoly, g: &ZPoly) -> Result<Option<(u64, ModPoly)>> {
    let unit = |h: &ZPoly| h.degree() == Some(0) && h.lc().abs().is_one();
    if unit(f) || unit(g) {
        return Ok(None);
    }
    if f.is_zero() && g.is_zero() {
        return Ok(Some((2, ModPoly::x(2))));
    }
    if f.is_zero() {
        return zx_maximal_containing(g).map(Some);
    }
    if g.is_zero() {
        return zx_maximal_containing(f).map(Some);
    }
    let common = f.gcd(g);
    if !unit(&common) {
        return zx_maximal_containing(&common).map(Some);
    }
    let candidates: Vec<BigInt> = match (f.is_constant(), g.is_constant()) {
        (true, true) => return Ok(None),
        (true, false) => int::factor(&f.lc())?.into_iter().map(|(p, _)| p).collect(),
        (false, true) => int::factor(&g.lc())?.into_iter().map(|(p, _)| p).collect(),
        (false, false) => {
            let n = f.resultant(g) * f.lc() * g.lc();
            int::factor(&n)?.into_iter().map(|(p, _)| p).collect()
        }
    };
    for p in candidates {
        let p = u64_prime(&p)?;
        let h = f.reduce(p).gcd(&g.reduce(p));
        if h.degree().is_some_and(|d| d >= 1) {
            return Ok(Some((p, some_irreducible_factor(&h))));
        }
    }
    Ok(None)
}

/// Bézout coefficients over ℤ[x] by a lattice search with growing degree bounds.
fn zx_bezout(f: &ZPoly, g: &ZPoly) -> Result<(ZPoly, ZPoly)> {
    let (df, dg) = (f.degree().unwrap(), g.degree().unwrap());
    for k in [0usize, 1, 2, 4, 8, 16, 32] {
        let (mu, mv) = (dg + k, df + k);
        let len = df + mu + 1;
        let pad = |p: ZPoly| {
            let mut v = p.coeffs().to_vec();
            v.resize(len, BigInt::zero());
            v
        };
        let rows: Vec<Vec<BigInt>> = (0..=mu)
            .map(|i| pad(f.shift(i)))
            .chain((0..=mv).map(|j| pad(g.shift(j))))
            .collect();
        let mut target = vec![BigInt::zero(); len];
        target[0] = BigInt::one();
        if let Some(c) = Lattice::new(&rows).solve(&target) {
            let u = ZPoly::new(c[..=mu].to_vec());
            let v = ZPoly::new(c[mu + 1..].to_vec());
            return Ok((u, v));
        }
    }
    Err(Error::BudgetExceeded(format!(
        "no Bezout pair for ({}, {}) within degree bound",
        Element::PolyZ(f.clone()),
        Element::PolyZ(g.clone())
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{enumerate_window, Filter, Window};

    fn cert(a: Element, b: Element) -> (bool, String) {
        let (v, c) = comaximal(&a, &b).unwrap();
        c.verify(&a, &b, v).unwrap();
        (v, c.to_string())
    }

    #[test]
    fn examples() {
        assert_eq!(
            cert(Element::int(4), Element::int(9)),
            (true, "Bezout(-2, 1)".into())
        );
        assert_eq!(
            cert(Element::quad(2, 0), Element::quad(1, 1)),
            (false, "HnfIndex([[2,1],[0,1]], 2)".into())
        );
        assert_eq!(
            cert(Element::poly_z(&[2]), Element::poly_z(&[0, 1])),
            (false, "CommonMaximal(ZxPrime(2, x))".into())
        );
        assert_eq!(
            cert(Element::poly_z(&[0, 1]), Element::poly_z(&[1, 1])),
            (true, "Bezout(-1, 1)".into())
        );
        assert_eq!(
            cert(Element::int(1), Element::int(0)),
            (true, "Bezout(1, 0)".into())
        );
        assert!(!cert(Element::int(0), Element::int(0)).0);
        assert_eq!(
            cert(Element::prod(2, 0), Element::prod(3, 1)),
            (true, "Bezout((-1,0), (1,1))".into())
        );
        assert_eq!(
            cert(Element::prod(2, 0), Element::prod(3, 5)).1,
            "CommonMaximal(ProdPrime(right, 5))"
        );
    }

    #[test]
    fn bezout_needs_higher_degree() {
        // 1 = (1 + 2x) − x·2
        let (v, c) = comaximal(&Element::poly_z(&[2]), &Element::poly_z(&[1, 2])).unwrap();
        assert!(v);
        c.verify(&Element::poly_z(&[2]), &Element::poly_z(&[1, 2]), v)
            .unwrap();
    }

    #[test]
    fn int_verdicts_match_gcd() {
        for a in -60i64..=60 {
            for b in -60i64..=60 {
                let (x, y) = (Element::int(a), Element::int(b));
                let expect = num_integer::gcd(a, b) == 1;
                assert_eq!(comaximal_verdict(&x, &y).unwrap(), expect);
                if (a + b) % 7 == 0 {
                    assert_eq!(cert(x, y).0, expect);
                }
            }
        }
    }

    #[test]
    fn fast_and_certified_verdicts_agree() {
        let w = Window::new(2, 2);
        for ring in [
            Ring::GaussInt,
            Ring::QuadM5,
            Ring::PolyFp(3),
            Ring::PolyZ,
            Ring::ProdIntInt,
        ] {
            let xs = enumerate_window(ring, &w, Filter::All).unwrap();
            for (i, a) in xs.iter().enumerate().step_by(3) {
                for b in xs.iter().skip(i % 5).step_by(7) {
                    let fast = comaximal_verdict(a, b).unwrap();
                    let (slow, c) = comaximal(a, b).unwrap();
                    assert_eq!(fast, slow, "{ring}: {a}, {b}");
                    c.verify(a, b, slow).unwrap();
                }
            }
        }
    }

    #[test]
    fn forged_certificates_are_rejected() {
        let (a, b) = (Element::int(4), Element::int(6));
        let forged = Certificate::Bezout {
            u: Element::int(1),
            v: Element::int(0),
        };
        assert!(forged.verify(&a, &b, true).is_err());
        let wrong = Certificate::CommonMaximal(MaximalIdeal::IntPrime(3.into()));
        assert!(wrong.verify(&a, &b, false).is_err());
    }
}
