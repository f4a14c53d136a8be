//! Polynomials over the integers: content, pseudo-remainder gcd, resultants
//! and factorization by a single large-prime modular image with subset
//! recombination.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::int;
use crate::modpoly::ModPoly;

/// Coefficients low degree first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ZPoly(Vec<BigInt>);

impl Ord for ZPoly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.iter().rev().cmp(other.0.iter().rev()))
    }
}

impl PartialOrd for ZPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl ZPoly {
    pub fn new(mut c: Vec<BigInt>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        ZPoly(c)
    }

    pub fn from_i64(c: &[i64]) -> Self {
        ZPoly::new(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn zero() -> Self {
        ZPoly(Vec::new())
    }

    pub fn constant(c: BigInt) -> Self {
        ZPoly::new(vec![c])
    }

    pub fn x() -> Self {
        ZPoly::from_i64(&[0, 1])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.0.len() <= 1
    }

    pub fn lc(&self) -> BigInt {
        self.0.last().cloned().unwrap_or_default()
    }

    pub fn constant_term(&self) -> BigInt {
        self.0.first().cloned().unwrap_or_default()
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.0.len().max(o.0.len());
        let zero = BigInt::zero();
        ZPoly::new(
            (0..n)
                .map(|i| self.0.get(i).unwrap_or(&zero) + o.0.get(i).unwrap_or(&zero))
                .collect(),
        )
    }

    pub fn neg(&self) -> Self {
        ZPoly(self.0.iter().map(|c| -c).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        ZPoly::new(self.0.iter().map(|c| c * k).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return ZPoly::zero();
        }
        let mut c = vec![BigInt::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.0.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        ZPoly::new(c)
    }

    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = vec![BigInt::zero(); k];
        c.extend(self.0.iter().cloned());
        ZPoly(c)
    }

    pub fn derivative(&self) -> Self {
        ZPoly::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// Nonnegative gcd of the coefficients (zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        self.0.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = self.content();
        if self.lc().is_negative() {
            c = -c;
        }
        ZPoly(self.0.iter().map(|x| x / &c).collect())
    }

    /// Sign normalization: positive leading coefficient.
    pub fn positive(&self) -> Self {
        if self.lc().is_negative() {
            self.neg()
        } else {
            self.clone()
        }
    }

    /// Exact quotient over ℤ, or `None` when `d` does not divide `self` in ℤ[x].
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return self.is_zero().then(ZPoly::zero);
        }
        let dd = d.0.len() - 1;
        if self.0.len() <= dd {
            return self.is_zero().then(ZPoly::zero);
        }
        let lc = d.lc();
        let mut r = self.0.clone();
        let mut q = vec![BigInt::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let (coef, rem) = r[k + dd].div_rem(&lc);
            if !rem.is_zero() {
                return None;
            }
            if coef.is_zero() {
                continue;
            }
            for (j, c) in d.0.iter().enumerate() {
                r[k + j] -= &coef * c;
            }
            q[k] = coef;
        }
        r.iter().all(|c| c.is_zero()).then(|| ZPoly::new(q))
    }

    pub fn divides(&self, other: &Self) -> bool {
        other.div_exact(self).is_some()
    }

    /// Division by a monic (leading coefficient ±1) divisor.
    pub fn div_rem_monic(&self, d: &Self) -> (Self, Self) {
        let lc = d.lc();
        assert!(lc.abs().is_one(), "divisor must be monic up to sign");
        let dd = d.0.len() - 1;
        if self.0.len() <= dd {
            return (ZPoly::zero(), self.clone());
        }
        let mut r = self.0.clone();
        let mut q = vec![BigInt::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let coef = &r[k + dd] * &lc;
            if coef.is_zero() {
                continue;
            }
            for (j, c) in d.0.iter().enumerate() {
                r[k + j] -= &coef * c;
            }
            q[k] = coef;
        }
        r.truncate(dd);
        (ZPoly::new(q), ZPoly::new(r))
    }

    /// Pseudo-remainder `lc(d)^(deg self − deg d + 1) · self mod d`.
    pub fn prem(&self, d: &Self) -> Self {
        let dd = d.0.len() - 1;
        if self.0.len() <= dd {
            return self.clone();
        }
        let lc = d.lc();
        let mut r = self.clone();
        let mut steps = self.0.len() - dd;
        while !r.is_zero() && r.0.len() > dd {
            let shift = r.0.len() - 1 - dd;
            let lead = r.lc();
            r = r.scale(&lc).sub(&d.shift(shift).scale(&lead));
            steps -= 1;
        }
        r.scale(&lc.pow(steps as u32))
    }

    /// Gcd in ℤ[x], normalized with positive leading coefficient.
    pub fn gcd(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.positive();
        }
        if o.is_zero() {
            return self.positive();
        }
        let c = self.content().gcd(&o.content());
        let (mut a, mut b) = (self.primitive_part(), o.primitive_part());
        if a.0.len() < b.0.len() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.prem(&b);
            a = b;
            b = r.primitive_part();
        }
        a.primitive_part().scale(&c)
    }

    /// Reduction modulo a prime.
    pub fn reduce(&self, p: u64) -> ModPoly {
        let pb = BigInt::from(p);
        ModPoly::new(
            p,
            self.0
                .iter()
                .map(|c| c.mod_floor(&pb).to_u64().expect("reduced below p"))
                .collect(),
        )
    }

    /// Symmetric lift of a polynomial over 𝔽_p into `(−p/2, p/2]`.
    pub fn lift_symmetric(f: &ModPoly) -> Self {
        let p = f.modulus();
        ZPoly::new(
            f.coeffs()
                .iter()
                .map(|&c| {
                    if c > p / 2 {
                        BigInt::from(c) - BigInt::from(p)
                    } else {
                        BigInt::from(c)
                    }
                })
                .collect(),
        )
    }

    pub fn lift(f: &ModPoly) -> Self {
        ZPoly::new(f.coeffs().iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn max_abs_coeff(&self) -> BigInt {
        self.0.iter().map(|c| c.abs()).max().unwrap_or_default()
    }

    /// Resultant by fraction-free elimination of the Sylvester matrix.
    pub fn resultant(&self, o: &Self) -> BigInt {
        if self.is_zero() || o.is_zero() {
            return BigInt::zero();
        }
        let m = self.0.len() - 1;
        let n = o.0.len() - 1;
        if m == 0 && n == 0 {
            return BigInt::one();
        }
        if m == 0 {
            return self.0[0].pow(n as u32);
        }
        if n == 0 {
            return o.0[0].pow(m as u32);
        }
        let size = m + n;
        let mut rows = vec![vec![BigInt::zero(); size]; size];
        for (i, row) in rows.iter_mut().enumerate().take(n) {
            for (j, c) in self.0.iter().rev().enumerate() {
                row[i + j] = c.clone();
            }
        }
        for i in 0..m {
            for (j, c) in o.0.iter().rev().enumerate() {
                rows[n + i][i + j] = c.clone();
            }
        }
        bareiss_det(rows)
    }
}

fn bareiss_det(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Square-free decomposition of a primitive polynomial with positive
/// leading coefficient (Yun's algorithm in characteristic zero).
fn square_free(f: &ZPoly) -> Vec<(ZPoly, u32)> {
    let mut out = Vec::new();
    if f.is_constant() {
        return out;
    }
    let mut c = f.gcd(&f.derivative());
    let mut w = f.div_exact(&c).expect("gcd divides");
    let mut i = 1;
    while !w.is_constant() {
        let y = w.gcd(&c);
        let z = w.div_exact(&y).expect("gcd divides");
        if !z.is_constant() {
            out.push((z.primitive_part(), i));
        }
        i += 1;
        c = c.div_exact(&y).expect("gcd divides");
        w = y;
    }
    out
}

const MODULUS_LIMIT: u64 = 1 << 61;

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Irreducible factors of a square-free primitive polynomial with positive
/// leading coefficient.
fn factor_square_free(g: &ZPoly) -> Result<Vec<ZPoly>> {
    let n = g.degree().unwrap_or(0);
    if n <= 1 {
        return Ok(vec![g.clone()]);
    }
    let norm_sq: BigInt = g.0.iter().map(|c| c * c).sum();
    let norm = norm_sq.sqrt() + 1;
    let bound: BigInt = g.lc().abs() * (BigInt::one() << n) * norm * 2;
    let start = bound
        .to_u64()
        .filter(|&b| b < MODULUS_LIMIT)
        .ok_or_else(|| {
            Error::Unsupported("coefficient bound exceeds the modular factoring range".into())
        })?;
    let mut p = int::next_prime(start);
    let image = loop {
        let img = g.reduce(p);
        if img.degree() == Some(n) && img.gcd(&img.derivative()).is_one() {
            break img;
        }
        p = int::next_prime(p);
    };
    let mut modular: Vec<ModPoly> = image.factor().into_iter().map(|(f, _)| f).collect();
    let mut rest = g.clone();
    let mut found = Vec::new();
    let mut size = 1;
    while 2 * size <= modular.len() {
        let mut hit = None;
        for subset in combinations(modular.len(), size) {
            let lead = rest.lc().mod_floor(&BigInt::from(p)).to_u64().unwrap();
            let mut prod = ModPoly::constant(p, lead);
            for &i in &subset {
                prod = prod.mul(&modular[i]);
            }
            let cand = ZPoly::lift_symmetric(&prod).primitive_part();
            if let Some(q) = rest.div_exact(&cand) {
                hit = Some((subset, cand, q));
                break;
            }
        }
        match hit {
            Some((subset, cand, q)) => {
                for &i in subset.iter().rev() {
                    modular.remove(i);
                }
                found.push(cand);
                rest = q.primitive_part();
            }
            None => size += 1,
        }
    }
    if !rest.is_constant() {
        found.push(rest.primitive_part());
    }
    Ok(found)
}

/// Complete factorization: `f = content · Π gᵢ^eᵢ` where `content` carries
/// the sign and the integer part, and each `gᵢ` is primitive, irreducible,
/// of positive degree with positive leading coefficient. Sorted.
pub fn factor(f: &ZPoly) -> Result<(BigInt, Vec<(ZPoly, u32)>)> {
    if f.is_zero() {
        return Err(Error::ZeroInput);
    }
    let mut content = f.content();
    if f.lc().is_negative() {
        content = -content;
    }
    let pp = f.primitive_part();
    let mut out = Vec::new();
    for (g, e) in square_free(&pp) {
        for h in factor_square_free(&g)? {
            out.push((h, e));
        }
    }
    out.sort();
    Ok((content, out))
}

pub fn is_irreducible(f: &ZPoly) -> Result<bool> {
    if f.is_zero() {
        return Ok(false);
    }
    if f.is_constant() {
        return Ok(int::is_prime(&f.lc()));
    }
    if !f.content().is_one() {
        return Ok(false);
    }
    let (_, fac) = factor(f)?;
    Ok(fac.len() == 1 && fac[0].1 == 1)
}
