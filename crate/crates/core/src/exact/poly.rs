//! Dense univariate polynomials over an exact field.

use super::field::Field;
use super::integer::factor;
use super::rational::Rational;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Coefficients from the constant term upwards; no trailing zeros.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly<F: Field> {
    coeffs: Vec<F>,
}

pub type QPoly = Poly<Rational>;

impl<F: Field> Poly<F> {
    pub fn new(mut coeffs: Vec<F>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        Self::constant(F::one())
    }

    pub fn constant(c: F) -> Self {
        Self::new(vec![c])
    }

    /// The polynomial x.
    pub fn x() -> Self {
        Self::new(vec![F::zero(), F::one()])
    }

    /// c·x^n
    pub fn monomial(c: F, n: usize) -> Self {
        let mut v = vec![F::zero(); n + 1];
        v[n] = c;
        Self::new(v)
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&n| F::from_int(n)).collect())
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> F {
        self.coeffs.get(i).cloned().unwrap_or_else(F::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with deg 0 = 0 for the zero polynomial (for bookkeeping).
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn lc(&self) -> F {
        self.coeffs.last().cloned().unwrap_or_else(F::zero)
    }

    /// Lowest index with nonzero coefficient (order at 0).
    pub fn ord0(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i).add(&o.coeff(i))).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i).sub(&o.coeff(i))).collect())
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.neg()).collect())
    }

    pub fn scale(&self, c: &F) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut v = vec![F::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] = v[i + j].add(&a.mul(b));
            }
        }
        Self::new(v)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Multiply by x^n.
    pub fn shift(&self, n: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut v = vec![F::zero(); n];
        v.extend(self.coeffs.iter().cloned());
        Self::new(v)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let dd = d.deg();
        let lc_inv = d.lc().inv().expect("nonzero leading coefficient");
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![F::zero(); r.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = r[i + dd].mul(&lc_inv);
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    r[i + j] = r[i + j].sub(&c.mul(dc));
                }
            }
            quot[i] = c;
        }
        r.truncate(dd);
        (Self::new(quot), Self::new(r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.divrem(d).1
    }

    /// Exact quotient; panics if the division leaves a remainder.
    pub fn exact_div(&self, d: &Self) -> Self {
        let (q, r) = self.divrem(d);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    pub fn divides(&self, other: &Self) -> bool {
        other.rem(self).is_zero()
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.lc().inv().unwrap())
    }

    /// Monic gcd.
    pub fn gcd(&self, o: &Self) -> Self {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            let r = r.scale(&F::normalizer(&r.coeffs));
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.mul(&F::from_int(i as i64)))
                .collect(),
        )
    }

    pub fn eval(&self, x: &F) -> F {
        let mut acc = F::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    /// self(inner)
    pub fn compose(&self, inner: &Self) -> Self {
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(inner).add(&Self::constant(c.clone()));
        }
        acc
    }

    /// Yun's squarefree decomposition: monic squarefree, pairwise coprime
    /// factors with multiplicities (in increasing multiplicity), such that
    /// self = lc · ∏ f_i^{m_i}.
    pub fn squarefree_decomposition(&self) -> Vec<(Self, u32)> {
        let mut out = Vec::new();
        if self.deg() == 0 {
            return out;
        }
        let f = self.monic();
        let fp = f.derivative();
        let a0 = f.gcd(&fp);
        let mut b = f.exact_div(&a0);
        let mut c = fp.exact_div(&a0);
        let mut d = c.sub(&b.derivative());
        let mut i = 1;
        loop {
            let a = b.gcd(&d);
            if a.deg() > 0 {
                out.push((a.clone(), i));
            }
            b = b.exact_div(&a);
            if b.deg() == 0 {
                break;
            }
            c = d.exact_div(&a);
            d = c.sub(&b.derivative());
            i += 1;
        }
        out
    }

    /// Largest k with d^k | self (self nonzero, deg d ≥ 1).
    pub fn multiplicity_of(&self, d: &Self) -> u32 {
        assert!(!self.is_zero() && d.deg() >= 1);
        let mut k = 0;
        let mut cur = self.clone();
        loop {
            let (q, r) = cur.divrem(d);
            if !r.is_zero() {
                return k;
            }
            cur = q;
            k += 1;
        }
    }

    /// Display with a chosen variable name.
    pub fn display_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts: Vec<(bool, String)> = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let cs = c.to_string();
            let (neg, mag) = match cs.strip_prefix('-') {
                Some(m) if !m.contains(' ') => (true, m.to_string()),
                _ => (false, cs.clone()),
            };
            let mag = if mag.contains(' ') { format!("({mag})") } else { mag };
            let mon = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            let term = if i == 0 {
                mag
            } else if mag == "1" {
                mon
            } else {
                format!("{mag}*{mon}")
            };
            parts.push((neg, term));
        }
        let mut s = String::new();
        for (k, (neg, t)) in parts.iter().enumerate() {
            if k == 0 {
                if *neg {
                    s.push('-');
                }
            } else {
                s.push_str(if *neg { " - " } else { " + " });
            }
            s.push_str(t);
        }
        s
    }
}

impl<F: Field> fmt::Display for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_in("x"))
    }
}

impl QPoly {
    /// Common denominator times self, divided by the content: a primitive
    /// integer polynomial with positive leading coefficient.
    pub fn primitive_integer(&self) -> Vec<BigInt> {
        if self.is_zero() {
            return vec![];
        }
        let den = self.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self.coeffs.iter().map(|c| (c * Rational::from_integer(den.clone())).to_integer()).collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        let s = if ints.last().unwrap().is_negative() { -g } else { g };
        ints.iter().map(|c| c / &s).collect()
    }

    /// All rational roots (without multiplicity), increasing.
    pub fn rational_roots(&self) -> Vec<Rational> {
        let mut out = Vec::new();
        if self.deg() == 0 {
            return out;
        }
        let mut p = self.clone();
        if let Some(k) = p.ord0() {
            if k > 0 {
                out.push(<Rational as Field>::zero());
                p = Poly::new(p.coeffs[k..].to_vec());
            }
        }
        if p.deg() == 0 {
            return out;
        }
        let ints = p.primitive_integer();
        let a0 = ints[0].abs();
        let an = ints.last().unwrap().abs();
        let divisors = |n: &BigInt| -> Vec<BigInt> {
            let mut ds = vec![BigInt::one()];
            for (pr, e) in factor(n) {
                let mut next = Vec::new();
                for d in &ds {
                    let mut m = d.clone();
                    for _ in 0..=e {
                        next.push(m.clone());
                        m *= &pr;
                    }
                }
                ds = next;
            }
            ds
        };
        for num in divisors(&a0) {
            for den in divisors(&an) {
                for s in [1, -1] {
                    let r = Rational::new(&num * s, den.clone());
                    if !out.contains(&r) && Field::is_zero(&p.eval(&r)) {
                        out.push(r);
                    }
                }
            }
        }
        out.sort();
        out
    }

    /// Discriminant-free squarefree test.
    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).deg() == 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{q, qq};

    fn p(c: &[i64]) -> QPoly {
        QPoly::from_ints(c)
    }

    #[test]
    fn division() {
        let a = p(&[-1, 0, 0, 1]);
        let (qt, r) = a.divrem(&p(&[-1, 1]));
        assert_eq!(qt, p(&[1, 1, 1]));
        assert!(r.is_zero());
    }

    #[test]
    fn yun() {
        // (x-1)^3 (x+2)^2 x
        let f = p(&[-1, 1]).pow(3).mul(&p(&[2, 1]).pow(2)).mul(&p(&[0, 1])).scale(&q(5));
        let sq = f.squarefree_decomposition();
        assert_eq!(sq, vec![(p(&[0, 1]), 1), (p(&[2, 1]), 2), (p(&[-1, 1]), 3)]);
    }

    #[test]
    fn roots() {
        let f = p(&[-2, 3]).mul(&p(&[1, 0, 1])).mul(&p(&[0, 1]));
        assert_eq!(f.rational_roots(), vec![q(0), qq(2, 3)]);
    }

    #[test]
    fn compose_and_eval() {
        let f = p(&[0, 0, 1]);
        assert_eq!(f.compose(&p(&[1, 1])), p(&[1, 2, 1]));
        assert_eq!(f.eval(&q(3)), q(9));
    }

    #[test]
    fn display() {
        assert_eq!(p(&[5, -10, 1]).to_string(), "x^2 - 10*x + 5");
        assert_eq!(p(&[0, -1]).to_string(), "-x");
    }
}
