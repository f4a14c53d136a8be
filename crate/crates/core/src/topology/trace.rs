//! Window traces `I ∩ window` of ideals, generated directly where the ideal
//! has a lattice description and filtered otherwise.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use crate::error::Result;
use crate::ideal::{Hnf, Ideal};
use crate::modpoly::ModPoly;
use crate::par;
use crate::quadratic::QuadInt;
use crate::ring::{enumerate_window, Element, Filter, Ring, Window};

/// Multiples of `g ≥ 0` in `[-h, h]`, in canonical order.
fn int_multiples(g: i64, h: i64) -> Vec<i64> {
    if g == 0 {
        return vec![0];
    }
    let mut v = vec![0];
    let mut k = g;
    while k <= h {
        v.push(-k);
        v.push(k);
        k += g;
    }
    v
}

fn small(x: &BigInt) -> Option<i64> {
    x.abs().to_i64()
}

fn hnf_points(h: &Hnf, w: &Window) -> Option<Vec<(i64, i64)>> {
    let (d, c, e) = (small(&h.d)?, small(&h.c)?, small(&h.e)?);
    let hh = w.height as i64;
    let mut out = Vec::new();
    let kmax = hh / e;
    for k in -kmax..=kmax {
        let b = k * e;
        // a = k·c + m·d within [-H, H]
        let mut a = -hh + (k * c + hh).rem_euclid(d);
        while a <= hh {
            out.push((a, b));
            a += d;
        }
    }
    Some(out)
}

/// `I ∩ window`, ascending in the canonical order.
pub fn ideal_trace(i: &Ideal, w: &Window) -> Result<Vec<Element>> {
    let ring = i.ring();
    if i.is_zero_ideal() {
        return Ok(vec![ring.zero()]);
    }
    let i = &if ring == Ring::PolyZ {
        i.clone()
    } else {
        i.normalize()?
    };
    let h = w.height as i64;
    match (ring, i) {
        (Ring::Int, Ideal::Principal(Element::Int(g))) => {
            if let Some(g) = small(g) {
                return Ok(int_multiples(g, h).into_iter().map(Element::int).collect());
            }
        }
        (Ring::ProdIntInt, Ideal::Principal(Element::Prod(g1, g2))) => {
            if let (Some(g1), Some(g2)) = (small(g1), small(g2)) {
                let (xs, ys) = (int_multiples(g1, h), int_multiples(g2, h));
                let mut v: Vec<Element> = xs
                    .iter()
                    .flat_map(|&a| ys.iter().map(move |&b| Element::prod(a, b)))
                    .collect();
                v.sort();
                return Ok(v);
            }
        }
        (Ring::GaussInt | Ring::QuadM5, Ideal::Hnf(_, hnf)) => {
            if let Some(points) = hnf_points(hnf, w) {
                let mut v: Vec<Element> = points
                    .into_iter()
                    .map(|(a, b)| crate::ideal::quad_element(ring, QuadInt::new(a, b)))
                    .collect();
                v.sort();
                return Ok(v);
            }
        }
        (Ring::PolyFp(p), Ideal::Principal(Element::PolyFp(g))) => {
            let dg = g.degree().unwrap();
            if dg > w.degree {
                return Ok(vec![ring.zero()]);
            }
            let room = u32::try_from(w.degree - dg + 1).unwrap();
            let count = (p as u128).pow(room);
            let mut v: Vec<(u128, ModPoly)> = (0..count)
                .map(|e| {
                    let f = g.mul(&ModPoly::from_encoding(p, e));
                    (f.encoding().unwrap(), f)
                })
                .collect();
            v.sort_by_key(|(e, _)| *e);
            return Ok(v.into_iter().map(|(_, f)| Element::PolyFp(f)).collect());
        }
        _ => {}
    }
    let all = enumerate_window(ring, w, Filter::All)?;
    par::try_filter(&all, |y| i.contains(y))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn filtered(i: &Ideal, w: &Window) -> Vec<Element> {
        enumerate_window(i.ring(), w, Filter::All)
            .unwrap()
            .into_iter()
            .filter(|y| i.contains(y).unwrap())
            .collect()
    }

    #[test]
    fn direct_generation_matches_filtering() {
        let w = Window::new(13, 3);
        let ideals = [
            Ideal::Principal(Element::int(4)),
            Ideal::Principal(Element::int(-7)),
            Ideal::Principal(Element::prod(2, 0)),
            Ideal::Principal(Element::prod(3, 5)),
            Ideal::Principal(Element::gauss(2, 1)),
            Ideal::TwoGen(Element::quad(2, 0), Element::quad(1, 1)),
            Ideal::Principal(Element::quad(3, 0)),
            Ideal::Principal(Element::poly_fp(3, &[1, 0, 1])),
            Ideal::Principal(Element::poly_fp(2, &[1, 1])),
        ];
        for i in &ideals {
            assert_eq!(ideal_trace(i, &w).unwrap(), filtered(i, &w), "{i}");
        }
    }

    #[test]
    fn zero_ideal_trace() {
        let w = Window::new(3, 1);
        assert_eq!(
            ideal_trace(&Ideal::zero(Ring::GaussInt), &w).unwrap(),
            vec![Element::gauss(0, 0)]
        );
    }
}
