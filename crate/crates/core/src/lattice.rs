//! Integer row echelon / Hermite normal form with transformation tracking.
//!
//! Each echelon row remembers the integer combination of the original
//! generators that produced it, so membership queries return explicit
//! coefficients that the caller can re-verify.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

#[derive(Clone, Debug)]
struct Row {
    v: Vec<BigInt>,
    tag: Vec<BigInt>,
}

impl Row {
    fn pivot(&self) -> Option<usize> {
        self.v.iter().position(|x| !x.is_zero())
    }

    fn sub_scaled(&mut self, other: &Row, q: &BigInt) {
        for (a, b) in self.v.iter_mut().zip(&other.v) {
            *a -= q * b;
        }
        for (a, b) in self.tag.iter_mut().zip(&other.tag) {
            *a -= q * b;
        }
    }

    fn negate(&mut self) {
        for a in self.v.iter_mut().chain(self.tag.iter_mut()) {
            *a = -&*a;
        }
    }
}

/// A finitely generated subgroup of ℤⁿ in Hermite normal form.
#[derive(Clone, Debug)]
pub struct Lattice {
    rows: Vec<Row>,
    generators: usize,
}

impl Lattice {
    /// Builds the echelon form of the ℤ-span of `gens` (all of equal length).
    pub fn new(gens: &[Vec<BigInt>]) -> Self {
        let k = gens.len();
        let mut pending: Vec<Row> = gens
            .iter()
            .enumerate()
            .map(|(i, v)| {
                let mut tag = vec![BigInt::zero(); k];
                tag[i] = BigInt::from(1);
                Row { v: v.clone(), tag }
            })
            .filter(|r| r.pivot().is_some())
            .collect();
        let dim = gens.first().map_or(0, |g| g.len());
        let mut rows = Vec::new();
        for col in 0..dim {
            let mut active: Vec<Row> = Vec::new();
            let mut rest = Vec::new();
            for r in pending.drain(..) {
                if r.pivot() == Some(col) {
                    active.push(r);
                } else {
                    rest.push(r);
                }
            }
            while active.len() > 1 {
                let (best, _) = active
                    .iter()
                    .enumerate()
                    .min_by_key(|(_, r)| r.v[col].abs())
                    .unwrap();
                let piv = active.swap_remove(best);
                let mut next = vec![];
                for mut r in active.drain(..) {
                    let q = r.v[col].div_floor(&piv.v[col]);
                    r.sub_scaled(&piv, &q);
                    if r.pivot() == Some(col) {
                        next.push(r);
                    } else if r.pivot().is_some() {
                        rest.push(r);
                    }
                }
                next.push(piv);
                active = next;
            }
            if let Some(mut piv) = active.pop() {
                if piv.v[col].is_negative() {
                    piv.negate();
                }
                rows.push(piv);
            }
            pending = rest;
        }
        let mut lattice = Lattice {
            rows,
            generators: k,
        };
        lattice.reduce_above();
        lattice
    }

    /// Reduces entries above each pivot into `[0, pivot)`.
    fn reduce_above(&mut self) {
        for i in 0..self.rows.len() {
            let col = self.rows[i].pivot().unwrap();
            let piv = self.rows[i].clone();
            for row in self.rows.iter_mut().take(i) {
                let q = row.v[col].div_floor(&piv.v[col]);
                if !q.is_zero() {
                    row.sub_scaled(&piv, &q);
                }
            }
        }
    }

    /// Echelon basis rows (pivots strictly increasing, positive).
    pub fn basis(&self) -> Vec<Vec<BigInt>> {
        self.rows.iter().map(|r| r.v.clone()).collect()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Coefficients `c` with `Σ cᵢ genᵢ = target`, if `target` lies in the lattice.
    pub fn solve(&self, target: &[BigInt]) -> Option<Vec<BigInt>> {
        let mut r = Row {
            v: target.to_vec(),
            tag: vec![BigInt::zero(); self.generators],
        };
        for row in &self.rows {
            let col = row.pivot().unwrap();
            if r.v[..col].iter().any(|x| !x.is_zero()) {
                return None;
            }
            let (q, rem) = r.v[col].div_rem(&row.v[col]);
            if !rem.is_zero() {
                return None;
            }
            r.sub_scaled(row, &q);
        }
        if r.v.iter().any(|x| !x.is_zero()) {
            return None;
        }
        Some(r.tag.iter().map(|x| -x).collect())
    }

    pub fn contains(&self, target: &[BigInt]) -> bool {
        self.solve(target).is_some()
    }
}
