//! Window-level density and nowhere-density verdicts, and the Golomb coset
//! invariant on ℤ.

use std::collections::BTreeMap;

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::{jacobson_radical, Space};
use crate::error::{Error, Result};
use crate::ideal::{comaximal, comaximal_verdict, Ideal};
use crate::ring::{enumerate_window, Element, Filter, Ring, Window};

/// Largest search window (in elements) a density witness search may open.
const SEARCH_CAP: u128 = 250_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DensityTarget {
    NonUnits,
    IdealTrace(Ideal),
    Custom(Vec<Element>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Property {
    Dense,
    NowhereDense,
}

/// `open` names σ_open. `witness` is the target member found inside it
/// (dense mode) or the unit found outside j(I) (nowhere-dense mode). When
/// `refutes` is set, `witness` instead certifies that σ_open misses the target.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DensityWitness {
    pub open: Element,
    pub witness: Element,
    pub refutes: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DensityVerdict {
    pub property: Property,
    pub holds: bool,
    pub witnesses: Vec<DensityWitness>,
    /// Basic opens left out of the scan, with σ_0 = R^× the only one so far.
    pub skipped: Vec<Element>,
}

fn search_levels(ring: Ring, budget: u64) -> Vec<Window> {
    let mut out = Vec::new();
    let mut step = 0u32;
    loop {
        let h = (1u64 << step.min(62)).min(budget.max(1));
        let d = if ring.is_polynomial() {
            step as usize
        } else {
            0
        };
        let w = Window::new(h, d);
        match w.size(ring) {
            Some(n) if n <= SEARCH_CAP => out.push(w),
            _ => break,
        }
        if h >= budget && (!ring.is_polynomial() || d >= 16) {
            break;
        }
        step += 1;
    }
    out
}

fn certify(r: &Element, y: &Element) -> Result<()> {
    let (ok, _) = comaximal(r, y)?;
    if ok {
        Ok(())
    } else {
        Err(Error::CertificateInvalid(format!(
            "{y} was reported in sigma_{r} but is not comaximal with it"
        )))
    }
}

/// Dense verdicts for `NonUnits` and `Custom` targets, nowhere-dense for
/// `IdealTrace`. `budget` caps the height of the witness search.
pub fn density_check(
    ring: Ring,
    target: &DensityTarget,
    sep: &Window,
    space: Space,
    budget: u64,
) -> Result<DensityVerdict> {
    match target {
        DensityTarget::IdealTrace(i) => nowhere_density_check(i, sep, space),
        DensityTarget::NonUnits => {
            let levels = search_levels(ring, budget);
            if levels.is_empty() {
                return Err(Error::BudgetExceeded(format!(
                    "no search window over {ring} fits the budget"
                )));
            }
            let mut pools: Vec<Option<Vec<Element>>> = vec![None; levels.len()];
            dense_scan(ring, sep, space, |r| {
                for (lvl, w) in levels.iter().enumerate() {
                    if pools[lvl].is_none() {
                        pools[lvl] = Some(enumerate_window(ring, w, Filter::NonunitNonzero)?);
                    }
                    for y in pools[lvl].as_ref().unwrap() {
                        if comaximal_verdict(r, y)? {
                            return Ok(Some(y.clone()));
                        }
                    }
                }
                let last = levels.last().unwrap();
                Err(Error::BudgetExceeded(format!(
                    "no nonunit in sigma_{r} up to height {} degree {}",
                    last.height, last.degree
                )))
            })
        }
        DensityTarget::Custom(set) => {
            let mut pool: Vec<Element> = set
                .iter()
                .filter(|y| y.ring() == ring && !(space == Space::Punctured && y.is_zero()))
                .cloned()
                .collect();
            pool.sort();
            pool.dedup();
            dense_scan(ring, sep, space, |r| {
                for y in &pool {
                    if comaximal_verdict(r, y)? {
                        return Ok(Some(y.clone()));
                    }
                }
                Ok(None)
            })
        }
    }
}

/// Runs `find` on every basic open of the separator window. `Ok(None)` means
/// the whole target was examined and σ_r misses it.
fn dense_scan(
    ring: Ring,
    sep: &Window,
    space: Space,
    mut find: impl FnMut(&Element) -> Result<Option<Element>>,
) -> Result<DensityVerdict> {
    let mut witnesses = Vec::new();
    let mut skipped = Vec::new();
    let mut holds = true;
    for r in enumerate_window(ring, sep, Filter::All)? {
        if r.is_zero() {
            // σ_0 is the unit group, which no nonunit target can meet; it
            // is also absent from the punctured space.
            if space == Space::WithZero {
                skipped.push(r);
            }
            continue;
        }
        match find(&r)? {
            Some(y) => {
                certify(&r, &y)?;
                witnesses.push(DensityWitness {
                    open: r,
                    witness: y,
                    refutes: false,
                });
            }
            None => {
                holds = false;
                witnesses.push(DensityWitness {
                    witness: r.clone(),
                    open: r,
                    refutes: true,
                });
            }
        }
    }
    Ok(DensityVerdict {
        property: Property::Dense,
        holds,
        witnesses,
        skipped,
    })
}

/// For each σ_k of the window, a unit outside j(I) = cl(I); any one of them
/// shows σ_k ⊄ cl(I), so cl(I) has empty interior on the sample.
pub fn nowhere_density_check(i: &Ideal, sep: &Window, space: Space) -> Result<DensityVerdict> {
    let ring = i.ring();
    let j = jacobson_radical(i)?;
    let mut units = ring.units();
    units.sort();
    let mut witnesses = Vec::new();
    let mut holds = true;
    for k in enumerate_window(ring, sep, Filter::All)? {
        if space == Space::Punctured && k.is_zero() {
            continue;
        }
        let mut found = None;
        for u in &units {
            if comaximal_verdict(&k, u)? && !j.contains(u)? {
                found = Some(u.clone());
                break;
            }
        }
        match found {
            Some(u) => {
                certify(&k, &u)?;
                witnesses.push(DensityWitness {
                    open: k,
                    witness: u,
                    refutes: false,
                });
            }
            None => {
                holds = false;
                witnesses.push(DensityWitness {
                    witness: k.clone(),
                    open: k,
                    refutes: true,
                });
            }
        }
    }
    Ok(DensityVerdict {
        property: Property::NowhereDense,
        holds,
        witnesses,
        skipped: Vec::new(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GolombReport {
    pub holds: bool,
    /// Residues mod |k| whose window members lie in σ_k.
    pub residues: Vec<u64>,
}

/// Whether membership of s in σ_k depends only on s mod k across the window.
pub fn golomb_coset_invariant(k: &Element, w: &Window) -> Result<GolombReport> {
    let Element::Int(kv) = k else {
        return Err(Error::Unsupported(format!(
            "coset arithmetic over {}",
            k.ring()
        )));
    };
    if kv.is_zero() {
        return Err(Error::ZeroInput);
    }
    let m = kv.abs();
    if m.to_u64().is_none() {
        return Err(Error::Unsupported(format!("modulus {m} is too large")));
    }
    let mut seen: BTreeMap<u64, bool> = BTreeMap::new();
    let mut holds = true;
    for s in enumerate_window(Ring::Int, w, Filter::All)? {
        let sv = s.as_int().unwrap();
        let res = sv.mod_floor(&m).to_u64().unwrap();
        let inside = kv.gcd(sv).is_one();
        if *seen.entry(res).or_insert(inside) != inside {
            holds = false;
        }
    }
    let residues = seen
        .into_iter()
        .filter(|&(_, inside)| inside)
        .map(|(r, _)| r)
        .collect();
    Ok(GolombReport { holds, residues })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::int::primes_up_to;

    #[test]
    fn nonunits_dense_on_integers() {
        let v = density_check(
            Ring::Int,
            &DensityTarget::NonUnits,
            &Window::new(30, 0),
            Space::WithZero,
            1000,
        )
        .unwrap();
        assert!(v.holds);
        assert_eq!(v.skipped, vec![Element::int(0)]);
        let two = v
            .witnesses
            .iter()
            .find(|w| w.open == Element::int(2))
            .unwrap();
        assert_eq!(two.witness, Element::int(-3));
        assert_eq!(v.witnesses.len(), 60);
    }

    #[test]
    fn ideal_nowhere_dense() {
        let i = Ideal::Principal(Element::int(5));
        let v = density_check(
            Ring::Int,
            &DensityTarget::IdealTrace(i),
            &Window::new(30, 0),
            Space::WithZero,
            0,
        )
        .unwrap();
        assert_eq!(v.property, Property::NowhereDense);
        assert!(v.holds);
        assert!(v.witnesses.iter().all(|w| w.witness.is_unit()));
    }

    #[test]
    fn primes_dense() {
        let primes: Vec<Element> = primes_up_to(10_000)
            .into_iter()
            .map(|p| Element::int(p as i64))
            .collect();
        let v = density_check(
            Ring::Int,
            &DensityTarget::Custom(primes),
            &Window::new(20, 0),
            Space::Punctured,
            0,
        )
        .unwrap();
        assert!(v.holds);
        let finite = vec![Element::int(2), Element::int(3)];
        let v = density_check(
            Ring::Int,
            &DensityTarget::Custom(finite),
            &Window::new(6, 0),
            Space::Punctured,
            0,
        )
        .unwrap();
        assert!(!v.holds);
        assert!(v
            .witnesses
            .iter()
            .any(|w| w.refutes && w.open == Element::int(6)));
    }

    #[test]
    fn dense_over_polynomials() {
        let v = density_check(
            Ring::PolyFp(3),
            &DensityTarget::NonUnits,
            &Window::new(0, 2),
            Space::Punctured,
            8,
        )
        .unwrap();
        assert!(v.holds);
        let v = density_check(
            Ring::GaussInt,
            &DensityTarget::NonUnits,
            &Window::new(3, 0),
            Space::Punctured,
            8,
        )
        .unwrap();
        assert!(v.holds);
    }

    #[test]
    fn golomb_examples() {
        let r = golomb_coset_invariant(&Element::int(6), &Window::new(60, 0)).unwrap();
        assert!(r.holds);
        assert_eq!(r.residues, vec![1, 5]);
        let r = golomb_coset_invariant(&Element::int(2), &Window::new(10, 0)).unwrap();
        assert_eq!(r.residues, vec![1]);
        let r = golomb_coset_invariant(&Element::int(12), &Window::new(60, 0)).unwrap();
        assert_eq!(r.residues, vec![1, 5, 7, 11]);
        assert_eq!(
            golomb_coset_invariant(&Element::int(0), &Window::new(3, 0)),
            Err(Error::ZeroInput)
        );
        assert!(matches!(
            golomb_coset_invariant(&Element::gauss(1, 1), &Window::new(3, 0)),
            Err(Error::Unsupported(_))
        ));
    }
}
