//! Dense univariate polynomials over a prime field 𝔽_p, `p < 2^62`.
//!
//! Coefficients are stored low degree first with no trailing zeros. The
//! derived order (degree, then coefficients from the leading one down)
//! coincides with the numeric encoding `Σ cᵢ pⁱ`.

use std::cmp::Ordering;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::int::{inv_mod, mul_mod};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModPoly {
    p: u64,
    c: Vec<u64>,
}

impl Ord for ModPoly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.p
            .cmp(&other.p)
            .then(self.c.len().cmp(&other.c.len()))
            .then_with(|| self.c.iter().rev().cmp(other.c.iter().rev()))
    }
}

impl PartialOrd for ModPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl ModPoly {
    pub fn new(p: u64, coeffs: Vec<u64>) -> Self {
        let mut c: Vec<u64> = coeffs.into_iter().map(|x| x % p).collect();
        trim(&mut c);
        ModPoly { p, c }
    }

    /// Reduces signed coefficients into `[0, p)`.
    pub fn from_signed(p: u64, coeffs: &[i64]) -> Self {
        let c = coeffs
            .iter()
            .map(|&x| x.rem_euclid(p as i64) as u64)
            .collect();
        ModPoly::new(p, c)
    }

    pub fn zero(p: u64) -> Self {
        ModPoly { p, c: Vec::new() }
    }

    pub fn constant(p: u64, a: u64) -> Self {
        ModPoly::new(p, vec![a])
    }

    pub fn one(p: u64) -> Self {
        ModPoly::constant(p, 1)
    }

    pub fn x(p: u64) -> Self {
        ModPoly::new(p, vec![0, 1])
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.c == [1]
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.c.len() <= 1
    }

    pub fn lc(&self) -> u64 {
        self.c.last().copied().unwrap_or(0)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.c.len().max(other.c.len());
        let c = (0..n)
            .map(|i| {
                let a = self.c.get(i).copied().unwrap_or(0);
                let b = other.c.get(i).copied().unwrap_or(0);
                (a + b) % self.p
            })
            .collect();
        ModPoly::new(self.p, c)
    }

    pub fn neg(&self) -> Self {
        let c = self.c.iter().map(|&a| (self.p - a) % self.p).collect();
        ModPoly::new(self.p, c)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: u64) -> Self {
        let c = self
            .c
            .iter()
            .map(|&a| mul_mod(a, k % self.p, self.p))
            .collect();
        ModPoly::new(self.p, c)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return ModPoly::zero(self.p);
        }
        let p = self.p;
        let mut c = vec![0u64; self.c.len() + other.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.c.iter().enumerate() {
                c[i + j] = (c[i + j] + mul_mod(a, b, p)) % p;
            }
        }
        ModPoly::new(p, c)
    }

    /// Division with remainder; `divisor` must be nonzero.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let p = self.p;
        let dd = divisor.c.len() - 1;
        if self.c.len() <= dd {
            return (ModPoly::zero(p), self.clone());
        }
        let inv = inv_mod(divisor.lc(), p);
        let mut r = self.c.clone();
        let mut q = vec![0u64; r.len() - dd];
        for k in (0..q.len()).rev() {
            let coef = mul_mod(r[k + dd], inv, p);
            q[k] = coef;
            if coef == 0 {
                continue;
            }
            for (j, &d) in divisor.c.iter().enumerate() {
                r[k + j] = (r[k + j] + p - mul_mod(coef, d, p)) % p;
            }
        }
        r.truncate(dd);
        (ModPoly::new(p, q), ModPoly::new(p, r))
    }

    pub fn rem(&self, divisor: &Self) -> Self {
        self.div_rem(divisor).1
    }

    /// Exact quotient, or `None` if `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        if divisor.is_zero() {
            return self.is_zero().then(|| ModPoly::zero(self.p));
        }
        let (q, r) = self.div_rem(divisor);
        r.is_zero().then_some(q)
    }

    pub fn divides(&self, other: &Self) -> bool {
        other.div_exact(self).is_some()
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(inv_mod(self.lc(), self.p))
    }

    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = std::mem::replace(&mut b, r);
        }
        a.monic()
    }

    /// `(g, u, v)` with `g = u*self + v*other`, `g` monic (zero if both are zero).
    pub fn ext_gcd(&self, other: &Self) -> (Self, Self, Self) {
        let p = self.p;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (ModPoly::one(p), ModPoly::zero(p));
        let (mut t0, mut t1) = (ModPoly::zero(p), ModPoly::one(p));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub(&q.mul(&s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.sub(&q.mul(&t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let k = inv_mod(r0.lc(), p);
        (r0.scale(k), s0.scale(k), t0.scale(k))
    }

    pub fn pow_mod(&self, mut exp: u64, modulus: &Self) -> Self {
        let mut acc = ModPoly::one(self.p).rem(modulus);
        let mut base = self.rem(modulus);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base).rem(modulus);
            }
            base = base.mul(&base).rem(modulus);
            exp >>= 1;
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        let p = self.p;
        let c = self
            .c
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &a)| mul_mod(a, i as u64 % p, p))
            .collect();
        ModPoly::new(p, c)
    }

    /// Numeric encoding `Σ cᵢ pⁱ`; `None` on overflow.
    pub fn encoding(&self) -> Option<u128> {
        let mut acc: u128 = 0;
        for &a in self.c.iter().rev() {
            acc = acc.checked_mul(self.p as u128)?.checked_add(a as u128)?;
        }
        Some(acc)
    }

    pub fn from_encoding(p: u64, mut n: u128) -> Self {
        let mut c = Vec::new();
        while n > 0 {
            c.push((n % p as u128) as u64);
            n /= p as u128;
        }
        ModPoly { p, c }
    }

    /// Square-free decomposition of a monic polynomial: pairs `(g, e)` with
    /// `self = Π g^e`, each `g` monic and square-free.
    pub fn square_free(&self) -> Vec<(ModPoly, u32)> {
        let p = self.p;
        let f = self.monic();
        if f.is_constant() {
            return Vec::new();
        }
        let mut out = Vec::new();
        let d = f.derivative();
        if d.is_zero() {
            for (g, e) in f.pth_root().square_free() {
                out.push((g, e * p as u32));
            }
            return out;
        }
        let mut c = f.gcd(&d);
        let mut w = f.div_exact(&c).expect("gcd divides");
        let mut i = 1u32;
        while !w.is_one() {
            let y = w.gcd(&c);
            let z = w.div_exact(&y).expect("gcd divides");
            if !z.is_one() {
                out.push((z, i));
            }
            i += 1;
            c = c.div_exact(&y).expect("gcd divides");
            w = y;
        }
        if !c.is_one() {
            for (g, e) in c.pth_root().square_free() {
                out.push((g, e * p as u32));
            }
        }
        out
    }

    /// Inverse Frobenius for a polynomial in `x^p` over the prime field.
    fn pth_root(&self) -> Self {
        let p = self.p as usize;
        let c = self.c.iter().step_by(p).copied().collect();
        ModPoly::new(self.p, c)
    }

    /// Distinct-degree factorization of a monic square-free polynomial.
    fn distinct_degree(&self) -> Vec<(ModPoly, usize)> {
        let p = self.p;
        let x = ModPoly::x(p);
        let mut rest = self.clone();
        let mut h = x.rem(&rest);
        let mut out = Vec::new();
        let mut i = 1;
        while rest.degree().unwrap_or(0) >= 2 * i {
            h = h.pow_mod(p, &rest);
            let g = rest.gcd(&h.sub(&x));
            if !g.is_one() {
                rest = rest.div_exact(&g).expect("gcd divides");
                h = h.rem(&rest);
                out.push((g, i));
            }
            i += 1;
        }
        if rest.degree().unwrap_or(0) > 0 {
            let d = rest.degree().unwrap();
            out.push((rest, d));
        }
        out
    }

    /// Equal-degree splitting (Cantor-Zassenhaus) into monic irreducibles
    /// of degree `d`.
    fn equal_degree(&self, d: usize, rng: &mut ChaCha8Rng) -> Vec<ModPoly> {
        let n = self.degree().unwrap_or(0);
        if n == d {
            return vec![self.clone()];
        }
        let p = self.p;
        loop {
            let a = ModPoly::new(p, (0..n).map(|_| rng.gen_range(0..p)).collect());
            if a.is_constant() {
                continue;
            }
            let b = if p == 2 {
                let mut t = a.rem(self);
                let mut acc = t.clone();
                for _ in 1..d {
                    t = t.mul(&t).rem(self);
                    acc = acc.add(&t);
                }
                acc
            } else {
                let mut t = a.rem(self);
                let mut norm = t.clone();
                for _ in 1..d {
                    t = t.pow_mod(p, self);
                    norm = norm.mul(&t).rem(self);
                }
                norm.pow_mod((p - 1) / 2, self).sub(&ModPoly::one(p))
            };
            let g = self.gcd(&b);
            let k = g.degree().unwrap_or(0);
            if k > 0 && k < n {
                let h = self.div_exact(&g).expect("gcd divides");
                let mut out = g.equal_degree(d, rng);
                out.extend(h.equal_degree(d, rng));
                return out;
            }
        }
    }

    /// Complete factorization into monic irreducibles with multiplicities,
    /// sorted in canonical order. The leading coefficient is dropped.
    pub fn factor(&self) -> Vec<(ModPoly, u32)> {
        let mut rng = ChaCha8Rng::seed_from_u64(0x6d61_6369_6173 ^ self.p);
        let mut out = Vec::new();
        for (g, e) in self.square_free() {
            for (block, d) in g.distinct_degree() {
                for irr in block.equal_degree(d, &mut rng) {
                    out.push((irr, e));
                }
            }
        }
        out.sort();
        let mut merged: Vec<(ModPoly, u32)> = Vec::new();
        for (g, e) in out {
            match merged.last_mut() {
                Some((h, f)) if *h == g => *f += e,
                _ => merged.push((g, e)),
            }
        }
        merged
    }

    /// Rabin-style irreducibility test via the distinct-degree split.
    pub fn is_irreducible(&self) -> bool {
        let n = match self.degree() {
            Some(n) if n >= 1 => n,
            _ => return false,
        };
        if n == 1 {
            return true;
        }
        let f = self.monic();
        if !f.gcd(&f.derivative()).is_one() {
            return false;
        }
        let dd = f.distinct_degree();
        dd.len() == 1 && dd[0].1 == n
    }
}

fn trim(c: &mut Vec<u64>) {
    while c.last() == Some(&0) {
        c.pop();
    }
}
