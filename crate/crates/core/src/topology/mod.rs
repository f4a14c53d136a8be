//! The comaximality topology on finite windows: basic opens σ_r, closures of
//! points and ideals, density.
//!
//! Closures come from three strategies. `ExactJ` computes j(⟨x⟩), the
//! intersection of the maximal ideals over x, and reports its window trace.
//! `Oracle` applies the definition directly: y survives unless some
//! separator k has y ∈ σ_k but x ∉ σ_k. `Sandwich` pairs a lower bound
//! (⟨x⟩, or √⟨x⟩ when x factors) with the oracle's upper bound cut down to
//! the complement of σ_x.

mod density;
mod trace;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

pub use density::{
    density_check, golomb_coset_invariant, nowhere_density_check, DensityTarget, DensityVerdict,
    DensityWitness, GolombReport, Property,
};
pub use trace::ideal_trace;

use crate::error::{Error, Result};
use crate::ideal::{
    comaximal_verdict, jacobson_radical_principal, quad_primes_over, radical_principal, Hnf, Ideal,
};
use crate::int;
use crate::par;
use crate::ring::{self, enumerate_window, Element, Filter, GcdOutcome, Ring, Window};

/// `WithZero` is the space on all of R; `Punctured` drops 0.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub enum Space {
    #[default]
    WithZero,
    Punctured,
}

/// s ∈ σ_r, i.e. ⟨r⟩ + ⟨s⟩ = R.
pub fn sigma_membership(r: &Element, s: &Element, space: Space) -> Result<bool> {
    if space == Space::Punctured && s.is_zero() {
        return Err(Error::ZeroInPunctured);
    }
    comaximal_verdict(r, s)
}

/// σ_r ∩ window in canonical order.
pub fn sigma_window(r: &Element, w: &Window, space: Space) -> Result<Vec<Element>> {
    let filter = match space {
        Space::WithZero => Filter::All,
        Space::Punctured => Filter::Nonzero,
    };
    let all = enumerate_window(r.ring(), w, filter)?;
    par::try_filter(&all, |s| comaximal_verdict(r, s))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Method {
    ExactJ,
    Sandwich,
    Oracle,
    Auto,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Method::ExactJ => "exact-j",
            Method::Sandwich => "sandwich",
            Method::Oracle => "oracle",
            Method::Auto => "auto",
        };
        f.write_str(s)
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Method> {
        match s.to_ascii_lowercase().replace(['_', '-'], "").as_str() {
            "exactj" | "exact" | "j" => Ok(Method::ExactJ),
            "sandwich" => Ok(Method::Sandwich),
            "oracle" => Ok(Method::Oracle),
            "auto" => Ok(Method::Auto),
            _ => Err(Error::Syntax(format!("unknown closure method {s:?}"))),
        }
    }
}

/// A closure computed on a window: `lower ⊆ cl ∩ window ⊆ upper`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClosureResult {
    pub method: Method,
    pub ideal_form: Option<Ideal>,
    pub lower: Vec<Element>,
    pub upper: Vec<Element>,
    pub exact_on_window: bool,
}

impl ClosureResult {
    fn exact(method: Method, ideal_form: Option<Ideal>, trace: Vec<Element>) -> Self {
        ClosureResult {
            method,
            ideal_form,
            lower: trace.clone(),
            upper: trace,
            exact_on_window: true,
        }
    }

    /// The window trace, when the bounds meet.
    pub fn trace(&self) -> Option<&[Element]> {
        self.exact_on_window.then_some(self.lower.as_slice())
    }
}

/// Whether j(⟨x⟩) is computable: every ring but ℤ[x], plus the trivial
/// cases 0 and units there.
pub fn exact_j_available(x: &Element) -> bool {
    x.ring() != Ring::PolyZ || x.is_zero() || x.is_unit()
}

/// The default separator window for a point closure: the element window,
/// raised to the height of x so that ℤ's exactness bound holds.
pub fn default_separators(x: &Element, w: &Window) -> Window {
    let hx = ring::small_height(x);
    Window::new(w.height.max(hx), w.degree)
}

/// cl({x}) ∩ window.
pub fn closure_singleton(
    x: &Element,
    w: &Window,
    method: Method,
    sep: &Window,
) -> Result<ClosureResult> {
    let ring = x.ring();
    let method = match method {
        Method::Auto if exact_j_available(x) => Method::ExactJ,
        Method::Auto => Method::Sandwich,
        m => m,
    };
    if x.is_unit() {
        let all = enumerate_window(ring, w, Filter::All)?;
        let form = (method == Method::ExactJ).then(|| Ideal::unit(ring));
        return Ok(ClosureResult::exact(method, form, all));
    }
    match method {
        Method::ExactJ => {
            if !exact_j_available(x) {
                return Err(Error::MethodUnavailable(format!(
                    "exact closure needs the maximal ideals over {x}, an infinite family in {ring}; use sandwich"
                )));
            }
            let j = jacobson_radical_principal(x)?;
            let trace = ideal_trace(&j, w)?;
            Ok(ClosureResult::exact(method, Some(j), trace))
        }
        Method::Oracle => {
            let upper = closure_oracle(x, w, sep)?;
            Ok(ClosureResult {
                method,
                ideal_form: None,
                lower: upper.clone(),
                upper,
                exact_on_window: false,
            })
        }
        Method::Sandwich => {
            if x.is_zero() {
                return Ok(ClosureResult::exact(method, None, vec![ring.zero()]));
            }
            let lower_ideal = if ring.is_ufd() {
                radical_principal(x)?
            } else {
                Ideal::Principal(x.clone())
            };
            let lower = ideal_trace(&lower_ideal, w)?;
            let oracle = closure_oracle(x, w, sep)?;
            let upper = par::try_filter(&oracle, |y| Ok(!comaximal_verdict(x, y)?))?;
            let exact = lower == upper;
            Ok(ClosureResult {
                method,
                ideal_form: None,
                lower,
                upper,
                exact_on_window: exact,
            })
        }
        Method::Auto => unreachable!(),
    }
}

/// {y ∈ elem_window : ∀k ∈ sep_window, y ∈ σ_k ⇒ x ∈ σ_k}, an upper bound
/// for cl({x}) ∩ elem_window. Separators run over nonzero canonical
/// associates: σ_k depends on k only up to units, and k = 0 is left out.
pub fn closure_oracle(
    x: &Element,
    elem_window: &Window,
    sep_window: &Window,
) -> Result<Vec<Element>> {
    let ring = x.ring();
    let seps = enumerate_window(ring, sep_window, Filter::All)?;
    let seps: Vec<Element> = seps
        .into_iter()
        .filter(|k| !k.is_zero() && *k == k.canonical_associate())
        .collect();
    let effective = par::try_filter(&seps, |k| Ok(!comaximal_verdict(k, x)?))?;
    let elems = enumerate_window(ring, elem_window, Filter::All)?;
    par::try_filter(&elems, |y| {
        for k in &effective {
            if comaximal_verdict(k, y)? {
                return Ok(false);
            }
        }
        Ok(true)
    })
}

/// j(I), the intersection of the maximal ideals containing a proper ideal.
pub fn jacobson_radical(i: &Ideal) -> Result<Ideal> {
    let ring = i.ring();
    if ring == Ring::PolyZ {
        return Err(Error::Unsupported(
            "closure of an ideal of Z[x] (infinitely many maximal ideals)".into(),
        ));
    }
    if i.is_unit_ideal()? {
        return Err(Error::ImproperIdeal);
    }
    if i.is_zero_ideal() {
        return Ok(Ideal::zero(ring));
    }
    if ring == Ring::QuadM5 {
        let Ideal::Hnf(_, h) = i.normalize()? else {
            unreachable!()
        };
        let mut j: Option<Hnf> = None;
        for (p, _) in int::factor(&h.index())? {
            for m in quad_primes_over(&p)? {
                let Ideal::Hnf(_, mh) = m.ideal() else {
                    unreachable!()
                };
                if h.is_subset(&mh) {
                    j = Some(match j {
                        None => mh,
                        Some(acc) => acc.mul(&mh, -5),
                    });
                }
            }
        }
        return Ok(Ideal::Hnf(
            ring,
            j.expect("proper ideal lies in a maximal ideal"),
        ));
    }
    let gens = i.generators();
    let mut g = gens[0].clone();
    for h in &gens[1..] {
        g = match ring::gcd(&g, h)? {
            GcdOutcome::Gcd(g) => g,
            GcdOutcome::NoGcdWitness(..) => unreachable!(),
        };
    }
    jacobson_radical_principal(&g)
}

/// cl(I) = j(I) for a proper ideal, traced on the window.
pub fn closure_of_ideal(i: &Ideal, w: &Window) -> Result<ClosureResult> {
    let j = jacobson_radical(i)?;
    let trace = ideal_trace(&j, w)?;
    Ok(ClosureResult::exact(Method::ExactJ, Some(j), trace))
}

/// ⟨x⟩ is closed iff j(⟨x⟩) = ⟨x⟩.
pub fn is_closed_principal(x: &Element) -> Result<bool> {
    if !exact_j_available(x) {
        return Err(Error::MethodUnavailable(format!(
            "j(<{x}>) is not computable over {}",
            x.ring()
        )));
    }
    let j = jacobson_radical_principal(x)?.normalize()?;
    Ok(j == Ideal::Principal(x.clone()).normalize()?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<Element> {
        v.iter().map(|&n| Element::int(n)).collect()
    }

    #[test]
    fn sigma_examples() {
        let s =
            |r, t| sigma_membership(&Element::int(r), &Element::int(t), Space::WithZero).unwrap();
        assert!(s(6, 35));
        assert!(!s(0, 2));
        assert!(!s(4, 4));
        let w = Window::new(10, 0);
        assert_eq!(
            sigma_window(&Element::int(6), &w, Space::WithZero).unwrap(),
            ints(&[-1, 1, -5, 5, -7, 7])
        );
        assert_eq!(
            sigma_window(&Element::int(0), &w, Space::WithZero).unwrap(),
            ints(&[-1, 1])
        );
        let w3 = Window::new(3, 0);
        assert_eq!(
            sigma_window(&Element::int(1), &w3, Space::WithZero)
                .unwrap()
                .len(),
            7
        );
        assert_eq!(
            sigma_membership(&Element::int(2), &Element::int(0), Space::Punctured),
            Err(Error::ZeroInPunctured)
        );
    }

    #[test]
    fn closure_examples() {
        let w = Window::new(100, 0);
        let c = closure_singleton(&Element::int(8), &w, Method::ExactJ, &w).unwrap();
        assert_eq!(c.ideal_form, Some(Ideal::Principal(Element::int(2))));
        assert_eq!(c.lower.len(), 101);
        assert!(c
            .lower
            .iter()
            .all(|y| y.as_int().unwrap() % 2 == num_bigint::BigInt::from(0)));
        let w5 = Window::new(5, 0);
        assert_eq!(
            closure_singleton(&Element::int(1), &w5, Method::Auto, &w5)
                .unwrap()
                .lower
                .len(),
            11
        );
        let w10 = Window::new(10, 0);
        let c = closure_singleton(&Element::prod(2, 0), &w10, Method::Auto, &w10).unwrap();
        let expect: Vec<Element> = {
            let mut v: Vec<Element> = (-5..=5).map(|k| Element::prod(2 * k, 0)).collect();
            v.sort();
            v
        };
        assert_eq!(c.lower, expect);
    }

    #[test]
    fn sandwich_on_polynomials() {
        let x = Element::poly_z(&[0, 1]);
        let w = Window::new(3, 2);
        let c = closure_singleton(&x, &w, Method::Sandwich, &Window::new(7, 2)).unwrap();
        assert!(c.exact_on_window);
        assert!(c.lower.iter().all(|y| ring::divides(&x, y).unwrap()));
        assert!(!c.upper.contains(&Element::poly_z(&[2])));
        assert!(matches!(
            closure_singleton(&x, &w, Method::ExactJ, &w),
            Err(Error::MethodUnavailable(_))
        ));
    }

    #[test]
    fn oracle_examples() {
        let e20 = Window::new(20, 0);
        let c = closure_oracle(&Element::int(8), &e20, &Window::new(8, 0)).unwrap();
        assert_eq!(c.len(), 21);
        assert_eq!(
            closure_oracle(&Element::int(8), &e20, &Window::new(1, 0))
                .unwrap()
                .len(),
            41
        );
        let c = closure_oracle(&Element::int(6), &Window::new(12, 0), &Window::new(6, 0)).unwrap();
        assert_eq!(c, ints(&[0, -6, 6, -12, 12]));
    }

    #[test]
    fn ideal_closures() {
        let w = Window::new(20, 0);
        let c = closure_of_ideal(&Ideal::Principal(Element::int(8)), &w).unwrap();
        assert_eq!(c.ideal_form, Some(Ideal::Principal(Element::int(2))));
        assert_eq!(
            closure_of_ideal(&Ideal::Principal(Element::int(1)), &w),
            Err(Error::ImproperIdeal)
        );
        let m = Ideal::TwoGen(Element::quad(2, 0), Element::quad(1, 1));
        let c = closure_of_ideal(&m, &Window::new(4, 0)).unwrap();
        assert_eq!(c.ideal_form.unwrap(), m.normalize().unwrap());
    }

    #[test]
    fn closed_principal_examples() {
        assert!(is_closed_principal(&Element::int(6)).unwrap());
        assert!(!is_closed_principal(&Element::int(8)).unwrap());
        assert!(is_closed_principal(&Element::int(1)).unwrap());
    }
}
