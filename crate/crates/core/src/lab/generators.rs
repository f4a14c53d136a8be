//! Counterexample searches and the Euclid-style generators 1 + t·∏.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ideal::{
    comaximal, comaximal_verdict, maximal_ideals_containing, quad_primes_over,
    some_irreducible_factor, Certificate, Hnf, Ideal, MaximalIdeal,
};
use crate::int;
use crate::quadratic::QuadInt;
use crate::ring::{self, enumerate_window, Element, Filter, GcdOutcome, Ring, Window};
use crate::topology::is_closed_principal;
use crate::zpoly;

/// Trial-division bound for the cheap factor search behind the generators.
const TRIAL: u64 = 1 << 16;
/// How many t the 1 + t·∏ scan tries before giving up.
const T_SCAN: i64 = 64;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoprimePair {
    pub a: Element,
    pub b: Element,
    pub certificate: Certificate,
}

/// `b` modulo the principal ideal ⟨a⟩, as a small representative.
fn reduce_mod(b: &Element, a: &Element) -> Element {
    match (a, b) {
        (Element::Int(m), Element::Int(n)) => Element::Int(n.mod_floor(&m.abs())),
        (Element::Gauss(q), Element::Gauss(y)) | (Element::Quad(q), Element::Quad(y)) => {
            let ring = a.ring();
            let h = Hnf::of(std::slice::from_ref(q), ring_theta(ring)).expect("nonzero");
            let k = y.b.div_floor(&h.e);
            let u = (&y.a - &k * &h.c).mod_floor(&h.d);
            let v = &y.b - &k * &h.e;
            crate::ideal::quad_element(ring, QuadInt { a: u, b: v })
        }
        (Element::PolyFp(m), Element::PolyFp(f)) => Element::PolyFp(f.rem(m)),
        (Element::PolyZ(m), Element::PolyZ(f)) => {
            if m.is_constant() {
                let c = m.lc().abs();
                Element::PolyZ(zpoly::ZPoly::new(
                    f.coeffs().iter().map(|x| x.mod_floor(&c)).collect(),
                ))
            } else if m.lc().abs().is_one() {
                let monic = if m.lc().is_negative() {
                    m.neg()
                } else {
                    m.clone()
                };
                Element::PolyZ(f.div_rem_monic(&monic).1)
            } else {
                b.clone()
            }
        }
        _ => b.clone(),
    }
}

fn ring_theta(ring: Ring) -> i64 {
    if ring == Ring::GaussInt {
        -1
    } else {
        -5
    }
}

/// The first pair (a, b) with gcd(a, b) a unit and ⟨a⟩ + ⟨b⟩ ≠ R. The
/// candidates a are the nonunit canonical associates of the window ordered
/// by size (norm, |n|, degree), ties in canonical order; b runs over the
/// window reduced modulo a, which changes neither the gcd nor comaximality.
pub fn find_coprime_not_comaximal(ring: Ring, w: &Window) -> Result<Option<CoprimePair>> {
    if !ring.is_integral_domain() {
        return Err(Error::Unsupported(format!(
            "coprimality needs gcds; {ring} is not a domain"
        )));
    }
    let all = enumerate_window(ring, w, Filter::All)?;
    let mut cands: Vec<&Element> = all
        .iter()
        .filter(|a| !a.is_zero() && !a.is_unit() && **a == a.canonical_associate())
        .collect();
    cands.sort_by(|x, y| x.size_key().cmp(&y.size_key()).then_with(|| x.cmp(y)));
    for a in cands {
        let mut bs: Vec<Element> = all.iter().map(|b| reduce_mod(b, a)).collect();
        bs.sort();
        bs.dedup();
        for b in bs {
            if b.is_zero() || b.is_unit() {
                continue;
            }
            let coprime = match ring::gcd(a, &b)? {
                GcdOutcome::Gcd(g) => g.is_unit(),
                GcdOutcome::NoGcdWitness(..) => false,
            };
            if !coprime {
                continue;
            }
            let (ok, certificate) = comaximal(a, &b)?;
            if !ok {
                return Ok(Some(CoprimePair {
                    a: a.clone(),
                    b,
                    certificate,
                }));
            }
        }
    }
    Ok(None)
}

/// 1 + t·x.
fn one_plus(t: i64, x: &Element) -> Element {
    let ring = x.ring();
    ring::add(&ring.one(), &ring::mul(&ring.from_int(BigInt::from(t)), x))
}

/// A nonzero element lying in `m`.
fn member(m: &MaximalIdeal) -> Element {
    match m {
        MaximalIdeal::IntPrime(p) => Element::Int(p.clone()),
        MaximalIdeal::GaussPrime(q) => Element::Gauss(q.clone()),
        MaximalIdeal::QuadPrime { p, .. } => Element::Quad(QuadInt::new(p.clone(), 0)),
        MaximalIdeal::PolyFpPrime(h) => Element::PolyFp(h.clone()),
        MaximalIdeal::ZxPrime { p, .. } => Ring::PolyZ.from_int(BigInt::from(*p)),
        MaximalIdeal::ProdPrime { .. } => m.ideal().generators()[0].clone(),
    }
}

/// Some maximal ideal over the nonunit `s`, using only cheap factoring;
/// `None` when trial division finds nothing.
fn cheap_maximal(s: &Element) -> Result<Option<MaximalIdeal>> {
    let norm_prime = |n: &BigInt| int::trial_factor(n, TRIAL);
    Ok(match s {
        Element::Int(n) => norm_prime(n).map(MaximalIdeal::IntPrime),
        Element::Gauss(q) => match norm_prime(&q.norm(-1)) {
            None => None,
            Some(p) => {
                let over = maximal_ideals_containing(&Ring::GaussInt.from_int(p), None)?.ideals;
                over.into_iter().find(|m| m.contains(s).unwrap_or(false))
            }
        },
        Element::Quad(q) => match norm_prime(&q.norm(-5)) {
            None => None,
            Some(p) => quad_primes_over(&p)?
                .into_iter()
                .find(|m| m.contains(s).unwrap_or(false)),
        },
        Element::PolyFp(f) => Some(MaximalIdeal::PolyFpPrime(some_irreducible_factor(f))),
        _ => {
            return Err(Error::Unsupported(format!(
                "maximal ideal generation over {}",
                s.ring()
            )))
        }
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Extension<T> {
    pub found: T,
    pub t: i64,
    pub s: Element,
}

/// A maximal ideal outside `known`: it contains s_t = 1 + t·∏xᵢ with xᵢ ∈
/// mᵢ, and s_t ≡ 1 modulo every mᵢ.
pub fn extend_maximal_ideals(
    ring: Ring,
    known: &[MaximalIdeal],
) -> Result<Extension<MaximalIdeal>> {
    if !matches!(
        ring,
        Ring::Int | Ring::GaussInt | Ring::PolyFp(_) | Ring::QuadM5
    ) {
        return Err(Error::Unsupported(format!(
            "maximal ideal generation over {ring}"
        )));
    }
    if known.is_empty() {
        return Err(Error::EmptyKnownSet);
    }
    if let Some(m) = known.iter().find(|m| m.ring() != ring) {
        return Err(Error::RingMismatch(ring.to_string(), m.ring().to_string()));
    }
    let prod = known
        .iter()
        .map(member)
        .fold(ring.one(), |acc, x| ring::mul(&acc, &x));
    for t in 1..=T_SCAN {
        let s = one_plus(t, &prod);
        if s.is_zero() || s.is_unit() {
            continue;
        }
        if let Some(m) = cheap_maximal(&s)? {
            if known.contains(&m) {
                return Err(Error::CertificateInvalid(format!(
                    "{m} contains {s} but also lies in the known set"
                )));
            }
            return Ok(Extension { found: m, t, s });
        }
    }
    Err(Error::BudgetExceeded(format!(
        "no s_t with t <= {T_SCAN} had a factor below {TRIAL}"
    )))
}

/// n maximal ideals from repeated extension, seeds included first.
pub fn generate_maximal_ideals(
    ring: Ring,
    seeds: Vec<MaximalIdeal>,
    count: usize,
) -> Result<Vec<MaximalIdeal>> {
    let mut known = seeds;
    while known.len() < count {
        let next = extend_maximal_ideals(ring, &known)?.found;
        known.push(next);
    }
    known.truncate(count);
    Ok(known)
}

fn irreducible_factor(s: &Element) -> Result<Option<Element>> {
    Ok(match s {
        Element::PolyZ(f) => match zpoly::factor(f) {
            Ok((content, parts)) => {
                let mut cands: Vec<Element> =
                    parts.into_iter().map(|(g, _)| Element::PolyZ(g)).collect();
                if let Some(p) = (!content.abs().is_one())
                    .then(|| int::some_prime_factor(&content))
                    .transpose()?
                {
                    cands.push(Element::PolyZ(zpoly::ZPoly::constant(p)));
                }
                cands.iter().map(|c| c.canonical_associate()).min()
            }
            Err(Error::BudgetExceeded(_)) => None,
            Err(e) => return Err(e),
        },
        _ => cheap_maximal(s)?.map(|m| match m {
            MaximalIdeal::IntPrime(p) => Element::Int(p),
            MaximalIdeal::GaussPrime(q) => Element::Gauss(q).canonical_associate(),
            MaximalIdeal::PolyFpPrime(h) => Element::PolyFp(h),
            other => unreachable!("{other}"),
        }),
    })
}

/// An irreducible comaximal with, hence not associated to, every element of
/// `known`.
pub fn extend_irreducibles(ring: Ring, known: &[Element]) -> Result<Extension<Element>> {
    if !matches!(
        ring,
        Ring::Int | Ring::GaussInt | Ring::PolyFp(_) | Ring::PolyZ
    ) {
        return Err(Error::Unsupported(format!(
            "irreducible generation over {ring}"
        )));
    }
    for (i, x) in known.iter().enumerate() {
        if x.ring() != ring {
            return Err(Error::RingMismatch(ring.to_string(), x.ring().to_string()));
        }
        if !ring::is_irreducible(x)? {
            return Err(Error::NotIrreducible(x.to_string()));
        }
        let cx = x.canonical_associate();
        if known[..i].iter().any(|y| y.canonical_associate() == cx) {
            return Err(Error::Invalid(format!("{x} is listed twice up to units")));
        }
    }
    let prod = known.iter().fold(ring.one(), |acc, x| ring::mul(&acc, x));
    for t in 1..=T_SCAN {
        let s = one_plus(t, &prod);
        if s.is_zero() || s.is_unit() {
            continue;
        }
        if let Some(q) = irreducible_factor(&s)? {
            return Ok(Extension { found: q, t, s });
        }
    }
    Err(Error::BudgetExceeded(format!(
        "no s_t with t <= {T_SCAN} could be factored cheaply"
    )))
}

pub fn generate_irreducibles(
    ring: Ring,
    seeds: Vec<Element>,
    count: usize,
) -> Result<Vec<Element>> {
    let mut known = seeds;
    while known.len() < count {
        let next = extend_irreducibles(ring, &known)?.found;
        known.push(next);
    }
    known.truncate(count);
    Ok(known)
}

/// Default seeds for the generators: the smallest maximal ideal or
/// irreducible of the ring.
pub fn default_maximal_seed(ring: Ring) -> Result<MaximalIdeal> {
    let two = match ring {
        Ring::PolyFp(p) => Element::PolyFp(crate::modpoly::ModPoly::x(p)),
        _ => ring.from_int(BigInt::from(2)),
    };
    maximal_ideals_containing(&two, None)?
        .ideals
        .into_iter()
        .next()
        .ok_or_else(|| Error::Unsupported(format!("no seed ideal over {ring}")))
}

pub fn default_irreducible_seed(ring: Ring) -> Result<Element> {
    Ok(match ring {
        Ring::Int => Element::int(2),
        Ring::GaussInt => Element::gauss(1, 1),
        Ring::PolyFp(p) => Element::PolyFp(crate::modpoly::ModPoly::x(p)),
        Ring::PolyZ => Element::poly_z(&[0, 1]),
        _ => {
            return Err(Error::Unsupported(format!(
                "irreducible generation over {ring}"
            )))
        }
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OpenWitness {
    pub k: Element,
    pub r: Element,
    pub witness: Element,
}

/// For each nonzero k of the window, a nonunit 1 + r·k (r scanned in
/// canonical order) inside σ_k, so no basic open fits inside R^×.
pub fn units_not_open_evidence(ring: Ring, w: &Window) -> Result<Vec<OpenWitness>> {
    let rs = enumerate_window(
        ring,
        &Window::new(w.height.max(2), w.degree.max(1)),
        Filter::Nonzero,
    )?;
    let mut out = Vec::new();
    for k in enumerate_window(ring, w, Filter::Nonzero)? {
        let mut found = None;
        for r in &rs {
            let s = ring::add(&ring.one(), &ring::mul(r, &k));
            if !s.is_zero() && !s.is_unit() && comaximal_verdict(&k, &s)? {
                found = Some(OpenWitness {
                    k: k.clone(),
                    r: r.clone(),
                    witness: s,
                });
                break;
            }
        }
        out.push(found.ok_or_else(|| {
            Error::BudgetExceeded(format!("no nonunit 1 + r*{k} in the r window"))
        })?);
    }
    Ok(out)
}

/// Every canonical nonzero element of the window with whether ⟨x⟩ is closed.
pub fn scan_closed_principals(ring: Ring, w: &Window) -> Result<Vec<(Element, bool)>> {
    enumerate_window(ring, w, Filter::Nonzero)?
        .into_iter()
        .filter(|x| *x == x.canonical_associate())
        .map(|x| Ok((x.clone(), is_closed_principal(&x)?)))
        .collect()
}

/// Whether `x` generates a prime ideal that is its own closure, the
/// distinction between irreducible and prime in ℤ[√−5].
pub fn is_prime_element(x: &Element) -> Result<bool> {
    if x.is_zero() || x.is_unit() {
        return Ok(false);
    }
    match x {
        Element::Quad(q) => {
            let own = Ideal::Principal(x.clone()).normalize()?;
            for (p, _) in int::factor(&q.norm(-5))? {
                for m in quad_primes_over(&p)? {
                    if m.ideal().normalize()? == own {
                        return Ok(true);
                    }
                }
            }
            Ok(false)
        }
        _ => ring::is_irreducible(x),
    }
}
