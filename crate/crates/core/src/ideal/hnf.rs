//! Hermite normal form of nonzero ideals in ℤ[θ], θ² ∈ {−1, −5}.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::lattice::Lattice;
use crate::quadratic::QuadInt;

/// Column-style HNF `[[d, c], [0, e]]`: the ideal is `d·ℤ + (c + eθ)·ℤ`
/// with `d, e > 0` and `0 ≤ c < d`. Index `[R : I] = d·e`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Hnf {
    pub d: BigInt,
    pub c: BigInt,
    pub e: BigInt,
}

/// Coordinates in the order the echelon form wants: θ first, then 1.
fn coords(q: &QuadInt) -> Vec<BigInt> {
    vec![q.b.clone(), q.a.clone()]
}

/// Rows spanning the ideal generated by `gens` as a ℤ-module.
pub(crate) fn module_rows(gens: &[QuadInt], theta_sq: i64) -> Vec<Vec<BigInt>> {
    let theta = QuadInt::new(0, 1);
    gens.iter()
        .flat_map(|g| [coords(g), coords(&g.mul(&theta, theta_sq))])
        .collect()
}

impl Hnf {
    pub fn new(d: impl Into<BigInt>, c: impl Into<BigInt>, e: impl Into<BigInt>) -> Hnf {
        Hnf {
            d: d.into(),
            c: c.into(),
            e: e.into(),
        }
    }

    /// HNF of the ideal generated by `gens`; `None` for the zero ideal.
    pub fn of(gens: &[QuadInt], theta_sq: i64) -> Option<Hnf> {
        let l = Lattice::new(&module_rows(gens, theta_sq));
        let b = l.basis();
        match b.len() {
            0 => None,
            2 => Some(Hnf {
                d: b[1][1].clone(),
                c: b[0][1].clone(),
                e: b[0][0].clone(),
            }),
            _ => unreachable!("nonzero ideals of a quadratic order have rank 2"),
        }
    }

    pub fn index(&self) -> BigInt {
        &self.d * &self.e
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.index().is_one()
    }

    pub fn contains(&self, y: &QuadInt) -> bool {
        let (k, r) = y.b.div_rem(&self.e);
        r.is_zero() && (&y.a - &k * &self.c).is_multiple_of(&self.d)
    }

    /// The ℤ-basis `d, c + eθ`.
    pub fn basis(&self) -> [QuadInt; 2] {
        [
            QuadInt::new(self.d.clone(), 0),
            QuadInt::new(self.c.clone(), self.e.clone()),
        ]
    }

    /// Product ideal; the ℤ-span of pairwise basis products is already an ideal.
    pub fn mul(&self, other: &Hnf, theta_sq: i64) -> Hnf {
        let gens: Vec<QuadInt> = self
            .basis()
            .iter()
            .flat_map(|x| other.basis().map(|y| x.mul(&y, theta_sq)))
            .collect();
        Hnf::of(&gens, theta_sq).expect("product of nonzero ideals is nonzero")
    }

    /// Ideal containment `self ⊆ other`.
    pub fn is_subset(&self, other: &Hnf) -> bool {
        self.basis().iter().all(|b| other.contains(b))
    }
}

impl fmt::Display for Hnf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HNF[[{},{}],[0,{}]]", self.d, self.c, self.e)
    }
}

impl Serialize for Hnf {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let zero = BigInt::zero();
        let index = self.index();
        let mut st = s.serialize_struct("Hnf", 2)?;
        st.serialize_field(
            "matrix",
            &[[N(&self.d), N(&self.c)], [N(&zero), N(&self.e)]],
        )?;
        st.serialize_field("index", &N(&index))?;
        st.end()
    }
}

struct N<'a>(&'a BigInt);

impl Serialize for N<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        crate::ser::bigint(self.0, s)
    }
}
