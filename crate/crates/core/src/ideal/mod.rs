//! Finitely generated ideals, maximal ideals and comaximality certificates.

mod comax;
mod hnf;
mod maximal;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

pub use comax::{comaximal, comaximal_verdict, Certificate};
pub use hnf::Hnf;
pub use maximal::{
    jacobson_radical_principal, maximal_ideals_containing, quad_primes_over, radical_principal,
    MaximalIdeal, MaximalIdeals, QuadPrimeKind, Side,
};

use crate::error::{Error, Result};
use crate::int;
use crate::lattice::Lattice;
use crate::modpoly::ModPoly;
use crate::quadratic::QuadInt;
use crate::ring::{self, divides, Element, GcdOutcome, Ring};
use crate::zpoly::ZPoly;

/// An ideal given by generators, or by its HNF in a quadratic order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Ideal {
    Principal(Element),
    TwoGen(Element, Element),
    Hnf(Ring, Hnf),
}

impl Ideal {
    pub fn ring(&self) -> Ring {
        match self {
            Ideal::Principal(g) | Ideal::TwoGen(g, _) => g.ring(),
            Ideal::Hnf(r, _) => *r,
        }
    }

    pub fn unit(ring: Ring) -> Ideal {
        Ideal::Principal(ring.one())
    }

    pub fn zero(ring: Ring) -> Ideal {
        Ideal::Principal(ring.zero())
    }

    /// Canonical presentation (see `normalize_ideal`).
    pub fn normalize(&self) -> Result<Ideal> {
        normalize_ideal(self)
    }

    pub fn contains(&self, y: &Element) -> Result<bool> {
        ideal_membership(self, y)
    }

    /// Whether the ideal is the whole ring.
    pub fn is_unit_ideal(&self) -> Result<bool> {
        self.contains(&self.ring().one())
    }

    pub fn is_zero_ideal(&self) -> bool {
        match self {
            Ideal::Principal(g) => g.is_zero(),
            Ideal::TwoGen(a, b) => a.is_zero() && b.is_zero(),
            Ideal::Hnf(..) => false,
        }
    }

    /// Generators as ring elements.
    pub fn generators(&self) -> Vec<Element> {
        match self {
            Ideal::Principal(g) => vec![g.clone()],
            Ideal::TwoGen(a, b) => vec![a.clone(), b.clone()],
            Ideal::Hnf(r, h) => h.basis().into_iter().map(|q| quad_element(*r, q)).collect(),
        }
    }

    /// `self ⊆ other`, decided by membership of the generators.
    pub fn is_subset(&self, other: &Ideal) -> Result<bool> {
        for g in self.generators() {
            if !other.contains(&g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

pub(crate) fn quad_element(ring: Ring, q: QuadInt) -> Element {
    match ring {
        Ring::GaussInt => Element::Gauss(q),
        Ring::QuadM5 => Element::Quad(q),
        _ => unreachable!("not a quadratic order"),
    }
}

pub(crate) fn quad_payload(x: &Element) -> &QuadInt {
    match x {
        Element::Gauss(q) | Element::Quad(q) => q,
        _ => unreachable!("not a quadratic element"),
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ideal::Principal(g) => write!(f, "({g})"),
            Ideal::TwoGen(a, b) => write!(f, "({a}, {b})"),
            Ideal::Hnf(_, h) => write!(f, "{h}"),
        }
    }
}

impl Serialize for Ideal {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Ideal", 2)?;
        match self {
            Ideal::Principal(g) => {
                st.serialize_field("type", "Principal")?;
                st.serialize_field("generators", &[g])?;
            }
            Ideal::TwoGen(a, b) => {
                st.serialize_field("type", "TwoGen")?;
                st.serialize_field("generators", &[a, b])?;
            }
            Ideal::Hnf(_, h) => {
                st.serialize_field("type", "Hnf")?;
                st.serialize_field("hnf", h)?;
            }
        }
        st.end()
    }
}

fn check_ring(i: &Ideal) -> Result<Ring> {
    let r = i.ring();
    match i {
        Ideal::TwoGen(a, b) => ring::same_ring(a, b),
        Ideal::Hnf(..) if !matches!(r, Ring::GaussInt | Ring::QuadM5) => {
            Err(Error::Unsupported(format!("HNF presentation over {r}")))
        }
        _ => Ok(r),
    }
}

/// Canonical presentation: principal ideal domains get a canonical
/// generator, quadratic orders their HNF, ℤ × ℤ a componentwise generator.
/// Two-generator ideals of ℤ[x] are simplified where possible but have no
/// canonical form. The zero ideal is always `Principal(0)`.
pub fn normalize_ideal(i: &Ideal) -> Result<Ideal> {
    let r = check_ring(i)?;
    if i.is_zero_ideal() {
        return Ok(Ideal::zero(r));
    }
    Ok(match (r, i) {
        (Ring::GaussInt | Ring::QuadM5, Ideal::Hnf(_, h)) => {
            let h2 = Hnf::of(&h.basis(), r.theta_sq()).expect("nonzero");
            Ideal::Hnf(r, h2)
        }
        (Ring::GaussInt | Ring::QuadM5, _) => {
            let gens: Vec<QuadInt> = i
                .generators()
                .iter()
                .map(|g| quad_payload(g).clone())
                .collect();
            Ideal::Hnf(r, Hnf::of(&gens, r.theta_sq()).expect("nonzero"))
        }
        (_, Ideal::Principal(g)) => Ideal::Principal(g.canonical_associate()),
        (Ring::PolyZ, Ideal::TwoGen(a, b)) => {
            let (a, b) = (a.canonical_associate(), b.canonical_associate());
            if a.is_unit() || b.is_unit() {
                Ideal::unit(r)
            } else if a.is_zero() {
                Ideal::Principal(b)
            } else if b.is_zero() || divides(&a, &b)? {
                Ideal::Principal(a)
            } else if divides(&b, &a)? {
                Ideal::Principal(b)
            } else if a <= b {
                Ideal::TwoGen(a, b)
            } else {
                Ideal::TwoGen(b, a)
            }
        }
        (_, Ideal::TwoGen(a, b)) => match ring::gcd(a, b)? {
            GcdOutcome::Gcd(g) => Ideal::Principal(g.canonical_associate()),
            GcdOutcome::NoGcdWitness(..) => unreachable!("only ℤ[√−5] lacks gcds"),
        },
        (_, Ideal::Hnf(..)) => unreachable!(),
    })
}

/// Membership `y ∈ I`.
pub fn ideal_membership(i: &Ideal, y: &Element) -> Result<bool> {
    let r = check_ring(i)?;
    if y.ring() != r {
        return Err(Error::RingMismatch(r.to_string(), y.ring().to_string()));
    }
    if y.is_zero() {
        return Ok(true);
    }
    match i {
        Ideal::Principal(g) => divides(g, y),
        Ideal::Hnf(_, h) => Ok(h.contains(quad_payload(y))),
        Ideal::TwoGen(a, b) => match r {
            Ring::PolyZ => poly_z_two_gen_membership(a, b, y),
            _ => ideal_membership(&normalize_ideal(i)?, y),
        },
    }
}

fn as_zpoly(x: &Element) -> &ZPoly {
    match x {
        Element::PolyZ(f) => f,
        _ => unreachable!("not in ℤ[x]"),
    }
}

/// `y ∈ ⟨a, b⟩` in ℤ[x], for the shapes this crate can decide: a unit or
/// zero generator, a generator dividing the other, a monic (±) generator, or
/// a squarefree constant generator.
fn poly_z_two_gen_membership(a: &Element, b: &Element, y: &Element) -> Result<bool> {
    let (f, g, t) = (as_zpoly(a), as_zpoly(b), as_zpoly(y));
    if a.is_unit() || b.is_unit() {
        return Ok(true);
    }
    if f.is_zero() || g.divides(f) {
        return Ok(g.divides(t));
    }
    if g.is_zero() || f.divides(g) {
        return Ok(f.divides(t));
    }
    if f.is_constant() && g.is_constant() {
        return Ok(t.content().is_multiple_of(&f.lc().gcd(&g.lc())));
    }
    for (m, o) in [(f, g), (g, f)] {
        if m.lc().abs().is_one() {
            return Ok(monic_quotient_membership(m, o, t));
        }
    }
    for (c, o) in [(f, g), (g, f)] {
        if c.is_constant() {
            let c = c.lc().abs();
            if int::radical(&c)? != c {
                break;
            }
            for (p, _) in int::factor(&c)? {
                let p = p
                    .to_u64()
                    .ok_or_else(|| Error::Unsupported("prime beyond 64 bits".into()))?;
                let (om, tm) = (o.reduce(p), t.reduce(p));
                let ok = if om.is_zero() {
                    tm.is_zero()
                } else {
                    om.divides(&tm)
                };
                if !ok {
                    return Ok(false);
                }
            }
            return Ok(true);
        }
    }
    Err(Error::Unsupported(format!(
        "membership in the two-generator ideal ({a}, {b}) of Z[x]"
    )))
}

/// `t ∈ ⟨m, o⟩` with `m` of leading coefficient ±1: work in the free
/// ℤ-module ℤ[x]/(m), where the image of ⟨o⟩ is spanned by `xⁱ·o mod m`.
fn monic_quotient_membership(m: &ZPoly, o: &ZPoly, t: &ZPoly) -> bool {
    let n = m.degree().unwrap();
    let m = if m.lc().is_negative() {
        m.neg()
    } else {
        m.clone()
    };
    if n == 0 {
        return true;
    }
    let vec_of = |p: &ZPoly| {
        let r = p.div_rem_monic(&m).1;
        let mut v: Vec<BigInt> = r.coeffs().to_vec();
        v.resize(n, BigInt::zero());
        v.reverse();
        v
    };
    let rows: Vec<Vec<BigInt>> = (0..n).map(|i| vec_of(&o.shift(i))).collect();
    Lattice::new(&rows).contains(&vec_of(t))
}

/// 𝔽_p[x] helper shared with the comaximality code.
pub(crate) fn some_irreducible_factor(f: &ModPoly) -> ModPoly {
    if f.is_zero() {
        return ModPoly::x(f.modulus());
    }
    f.factor()
        .into_iter()
        .next()
        .map(|(h, _)| h)
        .expect("nonconstant")
}
