//! Integer utilities: exact roots, factorization of desk-scale integers,
//! squarefree parts.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact `n`-th root of `a`, if `a` is a perfect `n`-th power in Z.
pub fn exact_nth_root(a: &BigInt, n: u32) -> Option<BigInt> {
    if n == 0 {
        return None;
    }
    if a.is_negative() {
        if n.is_multiple_of(2) {
            return None;
        }
        return exact_nth_root(&-a, n).map(|r| -r);
    }
    let r = a.nth_root(n);
    if num_traits::pow(r.clone(), n as usize) == *a {
        Some(r)
    } else {
        None
    }
}

fn mod_pow(base: &BigInt, exp: &BigInt, m: &BigInt) -> BigInt {
    base.modpow(exp, m)
}

/// Deterministic Miller-Rabin for n < 3.3e24, probabilistic beyond that.
pub fn is_probable_prime(n: &BigInt) -> bool {
    let two = BigInt::from(2);
    if *n < two {
        return false;
    }
    for p in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41] {
        let p = BigInt::from(p);
        if *n == p {
            return true;
        }
        if (n % &p).is_zero() {
            return false;
        }
    }
    let n1: BigInt = n - 1u32;
    let mut d = n1.clone();
    let mut s = 0;
    while d.is_even() {
        d >>= 1;
        s += 1;
    }
    'witness: for a in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41] {
        let mut x = mod_pow(&BigInt::from(a), &d, n);
        if x.is_one() || x == n1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pollard_rho(n: &BigInt) -> BigInt {
    if n.is_even() {
        return BigInt::from(2);
    }
    let mut c = BigInt::one();
    loop {
        let f = |x: &BigInt| (x * x + &c) % n;
        let mut x = BigInt::from(2);
        let mut y = x.clone();
        let mut d = BigInt::one();
        while d.is_one() {
            x = f(&x);
            y = f(&f(&y));
            d = (&x - &y).abs().gcd(n);
        }
        if &d != n {
            return d;
        }
        c += 1;
    }
}

/// Prime factorization of |n| as (prime, exponent) pairs in increasing order.
/// Panics on n = 0.
pub fn factor(n: &BigInt) -> Vec<(BigInt, u32)> {
    assert!(!n.is_zero(), "cannot factor zero");
    let mut n = n.abs();
    let mut out: Vec<(BigInt, u32)> = Vec::new();
    let mut p = 2u64;
    while p < 10_000 {
        let bp = BigInt::from(p);
        if &bp * &bp > n {
            break;
        }
        let mut e = 0;
        while (&n % &bp).is_zero() {
            n /= &bp;
            e += 1;
        }
        if e > 0 {
            out.push((bp, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    let mut stack = vec![n];
    let mut big: Vec<BigInt> = Vec::new();
    while let Some(m) = stack.pop() {
        if m.is_one() {
            continue;
        }
        if is_probable_prime(&m) {
            big.push(m);
        } else {
            let d = pollard_rho(&m);
            stack.push(&m / &d);
            stack.push(d);
        }
    }
    big.sort();
    for q in big {
        match out.iter_mut().find(|(r, _)| *r == q) {
            Some(entry) => entry.1 += 1,
            None => out.push((q, 1)),
        }
    }
    out.sort();
    out
}

/// Squarefree part of a nonzero integer, keeping the sign.
pub fn squarefree_part(n: &BigInt) -> BigInt {
    let mut r = BigInt::one();
    for (p, e) in factor(n) {
        if e % 2 == 1 {
            r *= p;
        }
    }
    if n.sign() == Sign::Minus {
        -r
    } else {
        r
    }
}

/// p-adic valuation of a nonzero integer.
pub fn valuation(n: &BigInt, p: &BigInt) -> u32 {
    assert!(!n.is_zero());
    let mut n = n.clone();
    let mut v = 0;
    while (&n % p).is_zero() {
        n /= p;
        v += 1;
    }
    v
}

/// Least nonnegative residue.
pub fn modp(a: &BigInt, p: &BigInt) -> BigInt {
    a.mod_floor(p)
}

/// Inverse of `a` modulo the prime `p`.
pub fn inv_mod(a: &BigInt, p: &BigInt) -> BigInt {
    let e = a.extended_gcd(p);
    assert!(e.gcd.is_one(), "{a} not invertible mod {p}");
    e.x.mod_floor(p)
}

/// Small helper for tests and reports.
pub fn to_i64(a: &BigInt) -> Option<i64> {
    a.to_i64()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factor_small() {
        let f = factor(&BigInt::from(-720));
        assert_eq!(f, vec![(2.into(), 4), (3.into(), 2), (5.into(), 1)]);
    }

    #[test]
    fn factor_with_large_prime() {
        let p = BigInt::from(1_000_000_007u64);
        let f = factor(&(&p * &p * 12));
        assert_eq!(f, vec![(2.into(), 2), (3.into(), 1), (p, 2)]);
    }

    #[test]
    fn roots() {
        assert_eq!(exact_nth_root(&BigInt::from(-27), 3), Some(BigInt::from(-3)));
        assert_eq!(exact_nth_root(&BigInt::from(-4), 2), None);
        assert_eq!(exact_nth_root(&BigInt::from(17), 2), None);
    }

    #[test]
    fn squarefree() {
        assert_eq!(squarefree_part(&BigInt::from(-72)), BigInt::from(-2));
        assert_eq!(squarefree_part(&BigInt::from(1)), BigInt::from(1));
    }
}
