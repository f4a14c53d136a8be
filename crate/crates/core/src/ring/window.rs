//! Finite, deterministically ordered truncations of the rings.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use rand::Rng;
use serde::Serialize;

use super::{Element, Ring};
use crate::error::{Error, Result};
use crate::modpoly::ModPoly;
use crate::quadratic::QuadInt;
use crate::zpoly::ZPoly;

/// Refuse to materialize windows larger than this.
pub const MAX_WINDOW_ELEMENTS: u128 = 4_000_000;

/// Height bound `H` and degree bound `D` (the latter used by polynomial rings).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Window {
    pub height: u64,
    pub degree: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Filter {
    All,
    Nonzero,
    NonunitNonzero,
}

impl Filter {
    pub fn admits(self, x: &Element) -> bool {
        match self {
            Filter::All => true,
            Filter::Nonzero => !x.is_zero(),
            Filter::NonunitNonzero => !x.is_zero() && !x.is_unit(),
        }
    }
}

impl Window {
    pub fn new(height: u64, degree: usize) -> Self {
        Window { height, degree }
    }

    /// Number of elements, or `None` if it does not fit in a u128.
    pub fn size(&self, ring: Ring) -> Option<u128> {
        let side = 2 * self.height as u128 + 1;
        let d = u32::try_from(self.degree).ok()?.checked_add(1)?;
        match ring {
            Ring::Int => Some(side),
            Ring::GaussInt | Ring::QuadM5 | Ring::ProdIntInt => Some(side * side),
            Ring::PolyFp(p) => (p as u128).checked_pow(d),
            Ring::PolyZ => side.checked_pow(d),
        }
    }

    pub fn contains(&self, x: &Element) -> bool {
        let h = BigInt::from(self.height);
        let small = |n: &BigInt| n.abs() <= h;
        match x {
            Element::Int(n) => small(n),
            Element::Gauss(q) | Element::Quad(q) => small(&q.a) && small(&q.b),
            Element::PolyFp(f) => f.degree().unwrap_or(0) <= self.degree,
            Element::PolyZ(f) => {
                f.degree().unwrap_or(0) <= self.degree && f.coeffs().iter().all(small)
            }
            Element::Prod(a, b) => small(a) && small(b),
        }
    }

    fn check(&self, ring: Ring) -> Result<()> {
        match self.size(ring) {
            Some(n) if n <= MAX_WINDOW_ELEMENTS => Ok(()),
            _ => Err(Error::BudgetExceeded(format!(
                "window H={} D={} over {ring} has more than {MAX_WINDOW_ELEMENTS} elements",
                self.height, self.degree
            ))),
        }
    }
}

/// Every element of a polynomial window over ℤ, in canonical order.
fn poly_z_window(w: &Window) -> Vec<Element> {
    let h = w.height as i64;
    let mut out = Vec::new();
    let mut c = vec![-h; w.degree + 1];
    loop {
        out.push(Element::PolyZ(ZPoly::from_i64(&c)));
        let mut i = 0;
        loop {
            if i == c.len() {
                return out;
            }
            if c[i] < h {
                c[i] += 1;
                break;
            }
            c[i] = -h;
            i += 1;
        }
    }
}

/// The window's elements passing `filter`, ascending in the canonical order.
pub fn enumerate_window(ring: Ring, w: &Window, filter: Filter) -> Result<Vec<Element>> {
    w.check(ring)?;
    let h = w.height as i64;
    let mut out: Vec<Element> = match ring {
        Ring::Int => {
            let mut v = vec![Element::int(0)];
            for k in 1..=h {
                v.push(Element::int(-k));
                v.push(Element::int(k));
            }
            v.retain(|x| filter.admits(x));
            return Ok(v);
        }
        Ring::GaussInt | Ring::QuadM5 | Ring::ProdIntInt => {
            let mut v = Vec::new();
            for a in -h..=h {
                for b in -h..=h {
                    v.push(match ring {
                        Ring::GaussInt => Element::gauss(a, b),
                        Ring::QuadM5 => Element::quad(a, b),
                        _ => Element::prod(a, b),
                    });
                }
            }
            v
        }
        Ring::PolyFp(p) => {
            // encoding order is the canonical order
            let n = w.size(ring).unwrap();
            let v = (0..n).map(|e| Element::PolyFp(ModPoly::from_encoding(p, e)));
            return Ok(v.filter(|x| filter.admits(x)).collect());
        }
        Ring::PolyZ => poly_z_window(w),
    };
    out.retain(|x| filter.admits(x));
    out.sort();
    Ok(out)
}

/// A uniformly random element of the window.
pub fn sample_window<R: Rng + ?Sized>(ring: Ring, w: &Window, rng: &mut R) -> Element {
    let h = w.height as i64;
    let mut coord = || rng.gen_range(-h..=h);
    match ring {
        Ring::Int => Element::int(coord()),
        Ring::GaussInt => Element::Gauss(QuadInt::new(coord(), coord())),
        Ring::QuadM5 => Element::Quad(QuadInt::new(coord(), coord())),
        Ring::ProdIntInt => Element::prod(coord(), coord()),
        Ring::PolyZ => {
            let c: Vec<i64> = (0..=w.degree).map(|_| coord()).collect();
            Element::poly_z(&c)
        }
        Ring::PolyFp(p) => {
            let c: Vec<u64> = (0..=w.degree).map(|_| rng.gen_range(0..p)).collect();
            Element::poly_fp(p, &c)
        }
    }
}

/// Rejection-samples an element passing `filter`.
pub fn sample_filtered<R: Rng + ?Sized>(
    ring: Ring,
    w: &Window,
    filter: Filter,
    rng: &mut R,
) -> Result<Element> {
    for _ in 0..10_000 {
        let x = sample_window(ring, w, rng);
        if filter.admits(&x) {
            return Ok(x);
        }
    }
    Err(Error::Invalid(format!(
        "window H={} D={} over {ring} has no admissible element",
        w.height, w.degree
    )))
}

/// Height of a window element as a machine integer (windows are small).
pub(crate) fn small_height(x: &Element) -> u64 {
    x.height().to_u64().unwrap_or(u64::MAX)
}
