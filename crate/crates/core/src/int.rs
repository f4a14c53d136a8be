//! Rational-integer number theory: Bézout coefficients, primality,
//! factorization and square roots modulo a prime.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

const TRIAL_LIMIT: u64 = 1 << 12;
const RHO_ITERATIONS: u64 = 1 << 22;

/// Extended Euclid. Returns `(g, u, v)` with `g = u*a + v*b` and `g >= 0`.
pub fn ext_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (BigInt::one(), BigInt::zero());
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while !r1.is_zero() {
        let (q, r) = r0.div_mod_floor(&r1);
        r0 = std::mem::replace(&mut r1, r);
        let s = &s0 - &q * &s1;
        s0 = std::mem::replace(&mut s1, s);
        let t = &t0 - &q * &t1;
        t0 = std::mem::replace(&mut t1, t);
    }
    if r0.is_negative() {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Modular inverse of `a` modulo the prime `p`.
pub fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a, p - 2, p)
}

const MR_BASES: [u64; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &MR_BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &MR_BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Miller-Rabin with the first thirteen prime bases: exact below 3.3e24,
/// a strong probable-prime test above.
pub fn is_prime(n: &BigInt) -> bool {
    if n.is_negative() {
        return is_prime(&-n);
    }
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    for &p in &MR_BASES {
        if (n % p).is_zero() {
            return false;
        }
    }
    let one = BigInt::one();
    let n_minus_one = n - &one;
    let mut d = n_minus_one.clone();
    let mut s = 0u32;
    while d.is_even() {
        d >>= 1;
        s += 1;
    }
    'witness: for &a in &MR_BASES {
        let mut x = BigInt::from(a).modpow(&d, n);
        if x == one || x == n_minus_one {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_one {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub fn primes_up_to(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut sieve = vec![true; n + 1];
    sieve[0] = false;
    sieve[1] = false;
    let mut i = 2;
    while i * i <= n {
        if sieve[i] {
            let mut j = i * i;
            while j <= n {
                sieve[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    sieve
        .iter()
        .enumerate()
        .filter(|(_, &p)| p)
        .map(|(i, _)| i as u64)
        .collect()
}

/// Smallest prime strictly greater than `n`.
pub fn next_prime(n: u64) -> u64 {
    let mut c = n + 1;
    while !is_prime_u64(c) {
        c += 1;
    }
    c
}

fn rho_u64(n: u64) -> Option<u64> {
    if n.is_multiple_of(2) {
        return Some(2);
    }
    for c in 1..64u64 {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut g) = (2u64, 2u64, 1u64);
        let mut steps = 0u64;
        while g == 1 && steps < RHO_ITERATIONS {
            x = f(x);
            y = f(f(y));
            g = x.abs_diff(y).gcd(&n);
            steps += 1;
        }
        if g != 1 && g != n {
            return Some(g);
        }
    }
    None
}

/// Brent's variant of Pollard rho over arbitrary-precision integers.
fn rho_big(n: &BigInt) -> Option<BigInt> {
    if n.is_even() {
        return Some(BigInt::from(2));
    }
    let one = BigInt::one();
    for c in 1..16u32 {
        let c = BigInt::from(c);
        let f = |x: &BigInt| (x * x + &c) % n;
        let mut y = BigInt::from(2);
        let mut r: u64 = 1;
        let mut q = one.clone();
        let mut g = one.clone();
        let mut x = y.clone();
        let mut ys = y.clone();
        let m = 128u64;
        let mut total = 0u64;
        while g == one {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g == one {
                ys = y.clone();
                for _ in 0..m.min(r - k) {
                    y = f(&y);
                    q = (q * (&x - &y).abs()) % n;
                }
                g = q.gcd(n);
                k += m;
            }
            r *= 2;
            total += r;
            if total > RHO_ITERATIONS {
                break;
            }
        }
        if g == *n {
            loop {
                ys = f(&ys);
                g = (&x - &ys).abs().gcd(n);
                if g != one {
                    break;
                }
            }
        }
        if g != one && g != *n {
            return Some(g);
        }
    }
    None
}

fn split(n: &BigInt) -> Option<BigInt> {
    match n.to_u64() {
        Some(small) => rho_u64(small).map(BigInt::from),
        None => rho_big(n),
    }
}

fn factor_into(n: BigInt, out: &mut Vec<BigInt>) -> Result<()> {
    if n.is_one() {
        return Ok(());
    }
    if is_prime(&n) {
        out.push(n);
        return Ok(());
    }
    let d = split(&n).ok_or_else(|| {
        Error::BudgetExceeded(format!("no factor of {n} found within the rho budget"))
    })?;
    let rest = &n / &d;
    factor_into(d, out)?;
    factor_into(rest, out)
}

/// Prime factorization of `|n|`, ascending primes with multiplicity.
/// `n` must be nonzero; `±1` gives the empty list.
pub fn factor(n: &BigInt) -> Result<Vec<(BigInt, u32)>> {
    if n.is_zero() {
        return Err(Error::ZeroInput);
    }
    let mut m = n.abs();
    let mut primes = Vec::new();
    let mut p = 2u64;
    while p <= TRIAL_LIMIT {
        if (&m % p).is_zero() {
            while (&m % p).is_zero() {
                m /= p;
                primes.push(BigInt::from(p));
            }
        }
        if BigInt::from(p * p) > m {
            break;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if !m.is_one() {
        if BigInt::from(TRIAL_LIMIT * TRIAL_LIMIT) > m {
            primes.push(m);
        } else {
            factor_into(m, &mut primes)?;
        }
    }
    primes.sort();
    let mut out: Vec<(BigInt, u32)> = Vec::new();
    for p in primes {
        match out.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => out.push((p, 1)),
        }
    }
    Ok(out)
}

/// Some prime factor of `|n|` for `|n| > 1`: the smallest one when it is
/// found by trial division, otherwise whichever the rho search uncovers first.
pub fn some_prime_factor(n: &BigInt) -> Result<BigInt> {
    let m = n.abs();
    if m <= BigInt::one() {
        return Err(Error::UnitOrZero);
    }
    let mut p = 2u64;
    while p <= TRIAL_LIMIT {
        if (&m % p).is_zero() {
            return Ok(BigInt::from(p));
        }
        if BigInt::from(p * p) > m {
            return Ok(m);
        }
        p += if p == 2 { 1 } else { 2 };
    }
    let mut cur = m;
    loop {
        if is_prime(&cur) {
            return Ok(cur);
        }
        let d = split(&cur).ok_or_else(|| {
            Error::BudgetExceeded(format!("no factor of {cur} found within the rho budget"))
        })?;
        let other = &cur / &d;
        cur = d.min(other);
    }
}

/// The least prime factor of `|n| > 1` below `limit`, or `|n|` itself when
/// it is smaller than `limit²` and has none; `None` otherwise.
pub fn trial_factor(n: &BigInt, limit: u64) -> Option<BigInt> {
    let m = n.abs();
    if m <= BigInt::one() {
        return None;
    }
    let mut p = 2u64;
    while p <= limit {
        if BigInt::from(p) * p > m {
            return Some(m);
        }
        if (&m % p).is_zero() {
            return Some(BigInt::from(p));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    None
}

/// Square root of `a` modulo an odd prime `p` (Tonelli-Shanks), if one exists.
pub fn sqrt_mod(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return Some(0);
    }
    if p == 2 {
        return Some(a);
    }
    if pow_mod(a, (p - 1) / 2, p) != 1 {
        return None;
    }
    let mut q = p - 1;
    let mut s = 0;
    while q.is_multiple_of(2) {
        q /= 2;
        s += 1;
    }
    let mut z = 2;
    while pow_mod(z, (p - 1) / 2, p) != p - 1 {
        z += 1;
    }
    let mut m = s;
    let mut c = pow_mod(z, q, p);
    let mut t = pow_mod(a, q, p);
    let mut r = pow_mod(a, q.div_ceil(2), p);
    while t != 1 {
        let mut i = 0;
        let mut tt = t;
        while tt != 1 {
            tt = mul_mod(tt, tt, p);
            i += 1;
        }
        let b = pow_mod(c, 1 << (m - i - 1), p);
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    Some(r.min(p - r))
}

/// Product of the distinct primes dividing `n` (radical); `rad(0) = 0`.
pub fn radical(n: &BigInt) -> Result<BigInt> {
    if n.is_zero() {
        return Ok(BigInt::zero());
    }
    Ok(factor(n)?.into_iter().map(|(p, _)| p).product())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn ext_gcd_examples() {
        assert_eq!(ext_gcd(&big(4), &big(9)), (big(1), big(-2), big(1)));
        assert_eq!(ext_gcd(&big(6), &big(10)), (big(2), big(2), big(-1)));
        assert_eq!(ext_gcd(&big(0), &big(5)), (big(5), big(0), big(1)));
        let (g, u, v) = ext_gcd(&big(-12), &big(18));
        assert_eq!(g, big(6));
        assert_eq!(u * big(-12) + v * big(18), big(6));
    }

    #[test]
    fn primality_agrees_with_sieve() {
        let sieve = primes_up_to(5000);
        for n in 0..5000u64 {
            assert_eq!(
                is_prime(&BigInt::from(n)),
                sieve.binary_search(&n).is_ok(),
                "{n}"
            );
        }
    }

    #[test]
    fn factors_recompose() {
        for n in [12i64, 97, 1 << 40, 600851475143, 1000000007 * 998244353] {
            let f = factor(&big(n)).unwrap();
            let prod: BigInt = f.iter().map(|(p, e)| p.pow(*e)).product();
            assert_eq!(prod, big(n));
            assert!(f.iter().all(|(p, _)| is_prime(p)));
        }
        assert_eq!(factor(&big(12)).unwrap(), vec![(big(2), 2), (big(3), 1)]);
        assert!(factor(&big(1)).unwrap().is_empty());
    }

    #[test]
    fn big_semiprime_splits() {
        let p: BigInt = "1000000000000000003".parse().unwrap();
        let q = BigInt::from(1000003u64);
        let f = factor(&(&p * &q)).unwrap();
        assert_eq!(f, vec![(q, 1), (p, 1)]);
    }

    #[test]
    fn sqrt_mod_squares_back() {
        for p in [3u64, 7, 29, 41, 97, 1_000_000_007] {
            for a in 1..50u64 {
                if let Some(r) = sqrt_mod(a, p) {
                    assert_eq!(mul_mod(r, r, p), a % p);
                }
            }
        }
        assert_eq!(sqrt_mod(1, 3), Some(1));
        assert_eq!(sqrt_mod(2, 3), None);
    }

    #[test]
    fn radical_examples() {
        assert_eq!(radical(&big(8)).unwrap(), big(2));
        assert_eq!(radical(&big(-6)).unwrap(), big(6));
        assert_eq!(radical(&big(1)).unwrap(), big(1));
    }
}
