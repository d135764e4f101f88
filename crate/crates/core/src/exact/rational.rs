//! Rationals are `num_rational::BigRational`; this module adds the few
//! helpers the kernel needs on top of it.

use super::integer::{exact_nth_root, squarefree_part};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rational = BigRational;

/// Rational from an integer.
pub fn q(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Rational n/d, reduced.
pub fn qq(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn qi(n: &BigInt) -> Rational {
    Rational::from_integer(n.clone())
}

/// Exact n-th root in Q, if it exists (real root for odd n).
pub fn rational_nth_root(r: &Rational, n: u32) -> Option<Rational> {
    if r.is_zero() {
        return Some(Rational::zero());
    }
    let num = exact_nth_root(r.numer(), n)?;
    let den = exact_nth_root(r.denom(), n)?;
    Some(Rational::new(num, den))
}

/// All rational n-th roots of r (two for even n and r > 0).
pub fn rational_nth_roots(r: &Rational, n: u32) -> Vec<Rational> {
    match rational_nth_root(r, n) {
        None => vec![],
        Some(g) if g.is_zero() => vec![g],
        Some(g) if n.is_multiple_of(2) => vec![g.clone(), -g],
        Some(g) => vec![g],
    }
}

/// Squarefree integer t with r = t * (rational square); r must be nonzero.
pub fn squarefree_class(r: &Rational) -> BigInt {
    assert!(!r.is_zero(), "zero has no square class");
    squarefree_part(&(r.numer() * r.denom()))
}

/// Parse "a", "-a" or "a/b".
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((a, b)) => {
            let a: BigInt = a.trim().parse().ok()?;
            let b: BigInt = b.trim().parse().ok()?;
            if b.is_zero() {
                None
            } else {
                Some(Rational::new(a, b))
            }
        }
        None => s.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}

/// Sign as -1, 0, 1.
pub fn sign(r: &Rational) -> i8 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

/// Lower and upper rational bounds for sqrt(r), r >= 0, with
/// hi - lo <= 2^-bits, found by bisection on rationals.
pub fn sqrt_bounds(r: &Rational, bits: u32) -> (Rational, Rational) {
    assert!(!r.is_negative(), "sqrt of negative rational");
    if let Some(s) = rational_nth_root(r, 2) {
        return (s.clone(), s);
    }
    let mut lo = Rational::zero();
    let mut hi = if *r > Rational::one() { r.clone() } else { Rational::one() };
    let eps = Rational::new(BigInt::one(), BigInt::one() << bits);
    let two = q(2);
    while &hi - &lo > eps {
        let mid = (&lo + &hi) / &two;
        // keep denominators bounded: round mid to a dyadic
        let scale = BigInt::one() << (bits + 2);
        let mid = Rational::new((mid * Rational::from_integer(scale.clone())).floor().to_integer(), scale);
        if &mid * &mid <= *r {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (lo, hi)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nth_roots() {
        assert_eq!(rational_nth_root(&qq(8, 27), 3), Some(qq(2, 3)));
        assert_eq!(rational_nth_root(&qq(-8, 27), 3), Some(qq(-2, 3)));
        assert_eq!(rational_nth_root(&q(-1), 2), None);
        assert_eq!(rational_nth_roots(&qq(1, 16), 4), vec![qq(1, 2), qq(-1, 2)]);
    }

    #[test]
    fn classes() {
        assert_eq!(squarefree_class(&qq(-1, 36)), BigInt::from(-1));
        assert_eq!(squarefree_class(&qq(3, 2)), BigInt::from(6));
    }

    #[test]
    fn parse() {
        assert_eq!(parse_rational("-3/6"), Some(qq(-1, 2)));
        assert_eq!(parse_rational("12"), Some(q(12)));
        assert_eq!(parse_rational("1/0"), None);
    }

    #[test]
    fn sqrt_enclosure() {
        let (lo, hi) = sqrt_bounds(&q(2), 40);
        assert!(&lo * &lo <= q(2) && &hi * &hi >= q(2));
        assert!(hi - lo <= Rational::new(1.into(), BigInt::one() << 40));
    }
}
