//! Truncated power series and Puiseux series with exponents in (1/w)Z.

use super::field::Field;
use super::poly::Poly;
use super::rational::Rational;
use super::ExactError;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Signed;
use std::fmt;

/// Helpers on truncated power series Σ a_i t^i, i < a.len().
pub mod power {
    use super::*;

    pub fn mul<F: Field>(a: &[F], b: &[F], n: usize) -> Vec<F> {
        let mut out = vec![F::zero(); n];
        for (i, ai) in a.iter().enumerate().take(n) {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate().take(n - i) {
                out[i + j] = out[i + j].add(&ai.mul(bj));
            }
        }
        out
    }

    /// 1/a to n terms; a[0] must be invertible.
    pub fn inv<F: Field>(a: &[F], n: usize) -> Result<Vec<F>, ExactError> {
        let a0inv = a.first().and_then(|c| c.inv()).ok_or(ExactError::ZeroLeadingTerm)?;
        let mut out = vec![F::zero(); n];
        if n == 0 {
            return Ok(out);
        }
        out[0] = a0inv.clone();
        for k in 1..n {
            let mut s = F::zero();
            for j in 1..=k.min(a.len() - 1) {
                s = s.add(&a[j].mul(&out[k - j]));
            }
            out[k] = s.mul(&a0inv).neg();
        }
        Ok(out)
    }

    /// a^alpha for a[0] = 1, by the J.C.P. Miller recurrence.
    pub fn pow_rational<F: Field>(a: &[F], alpha: &Rational, n: usize) -> Vec<F> {
        assert!(a[0].is_one(), "pow_rational needs constant term 1");
        let al = F::from_rational(alpha);
        let mut b = vec![F::zero(); n];
        if n == 0 {
            return b;
        }
        b[0] = F::one();
        for k in 1..n {
            let mut s = F::zero();
            for j in 1..=k.min(a.len() - 1) {
                // ((alpha+1) j − k) a_j b_{k−j}
                let coef = al.add(&F::one()).mul(&F::from_int(j as i64)).sub(&F::from_int(k as i64));
                s = s.add(&coef.mul(&a[j]).mul(&b[k - j]));
            }
            b[k] = s.mul(&F::from_int(k as i64).inv().unwrap());
        }
        b
    }

    /// outer(inner) with inner[0] = 0, n terms.
    pub fn compose<F: Field>(outer: &[F], inner: &[F], n: usize) -> Vec<F> {
        assert!(inner.first().is_none_or(|c| c.is_zero()), "inner series must vanish at 0");
        let mut acc = vec![F::zero(); n];
        for c in outer.iter().take(n).rev() {
            acc = mul(&acc, inner, n);
            acc[0] = acc[0].add(c);
        }
        acc
    }

    /// Compositional inverse of h = h1 t + h2 t² + … (h1 invertible),
    /// determined one coefficient at a time: each step solves a linear
    /// equation in the next unknown coefficient.
    pub fn revert<F: Field>(h: &[F], n: usize) -> Result<Vec<F>, ExactError> {
        if h.len() < 2 || !h[0].is_zero() {
            return Err(ExactError::ZeroLeadingTerm);
        }
        let h1inv = h[1].inv().ok_or(ExactError::ZeroLeadingTerm)?;
        let mut g = vec![F::zero(); n];
        if n < 2 {
            return Ok(g);
        }
        g[1] = h1inv.clone();
        for k in 2..n {
            let c = compose(h, &g[..=k], k + 1);
            // coefficient of t^k in h(g) must vanish; it depends on g_k as h1·g_k
            g[k] = c[k].mul(&h1inv).neg();
        }
        Ok(g)
    }
}

/// Σ_{i<len} c_i q^{(val+i)/width} + O(q^{(val+len)/width}).
#[derive(Clone, Debug, PartialEq)]
pub struct PuiseuxSeries<F: Field> {
    width: u32,
    val: i64,
    coeffs: Vec<F>,
}

impl<F: Field> PuiseuxSeries<F> {
    /// Build and strip leading zeros.
    pub fn new(width: u32, val: i64, coeffs: Vec<F>) -> Self {
        assert!(width > 0);
        let lead = coeffs.iter().position(|c| !c.is_zero()).unwrap_or(coeffs.len());
        PuiseuxSeries { width, val: val + lead as i64, coeffs: coeffs[lead..].to_vec() }
    }

    /// Zero known up to q^{abs/width}.
    pub fn zero(width: u32, abs: i64) -> Self {
        PuiseuxSeries { width, val: abs, coeffs: vec![] }
    }

    /// A power series Σ c_i q^i (width 1).
    pub fn from_power(coeffs: Vec<F>) -> Self {
        Self::new(1, 0, coeffs)
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    /// Valuation numerator on the 1/width grid.
    pub fn val(&self) -> i64 {
        self.val
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    /// Number of known terms after the leading one.
    pub fn precision(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Leading exponent as a rational.
    pub fn start_exponent(&self) -> Rational {
        Rational::new(self.val.into(), self.width.into())
    }

    /// Absolute precision: terms are known strictly below this exponent.
    pub fn abs_prec(&self) -> Rational {
        Rational::new((self.val + self.coeffs.len() as i64).into(), self.width.into())
    }

    pub fn lead(&self) -> Option<&F> {
        self.coeffs.first()
    }

    /// Coefficient of q^e, `None` if e is at or beyond the precision.
    pub fn coeff_at(&self, e: &Rational) -> Option<F> {
        if *e >= self.abs_prec() {
            return None;
        }
        let scaled = e * Rational::from_integer(self.width.into());
        if !scaled.is_integer() {
            return Some(F::zero());
        }
        let k = scaled.to_integer();
        let idx = k - BigInt::from(self.val);
        if idx.is_negative() {
            return Some(F::zero());
        }
        let idx: usize = idx.try_into().ok()?;
        Some(self.coeffs.get(idx).cloned().unwrap_or_else(F::zero))
    }

    /// Re-express on the finer grid of width `w` (a multiple of width).
    pub fn rescale(&self, w: u32) -> Self {
        assert!(w.is_multiple_of(self.width), "width must divide the new width");
        let m = (w / self.width) as usize;
        if m == 1 {
            return self.clone();
        }
        let mut c = vec![F::zero(); self.coeffs.len() * m];
        for (i, a) in self.coeffs.iter().enumerate() {
            c[i * m] = a.clone();
        }
        PuiseuxSeries { width: w, val: self.val * m as i64, coeffs: c }
    }

    /// Coarsest grid that carries all known nonzero terms; precision is
    /// rounded down to the coarser grid.
    pub fn simplify(&self) -> Self {
        let mut g = self.width as i64;
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                g = g.gcd(&(self.val + i as i64));
            }
        }
        if self.coeffs.is_empty() {
            g = g.gcd(&self.val);
        }
        let g = g.max(1);
        if g == 1 {
            return self.clone();
        }
        let w = self.width as i64 / g;
        let abs = Integer::div_floor(&(self.val + self.coeffs.len() as i64), &g);
        let val = self.val / g;
        let len = (abs - val).max(0) as usize;
        let coeffs = (0..len).map(|i| self.coeffs[i * g as usize].clone()).collect();
        PuiseuxSeries { width: w as u32, val, coeffs }
    }

    fn common(a: &Self, b: &Self) -> (Self, Self) {
        let w = (a.width as u64).lcm(&(b.width as u64)) as u32;
        (a.rescale(w), b.rescale(w))
    }

    pub fn truncate_abs(&self, abs: i64) -> Self {
        let len = (abs - self.val).clamp(0, self.coeffs.len() as i64) as usize;
        if len == 0 {
            return Self::zero(self.width, abs.min(self.val + self.coeffs.len() as i64));
        }
        Self::new(self.width, self.val, self.coeffs[..len].to_vec())
    }

    pub fn add(&self, o: &Self) -> Self {
        let (a, b) = Self::common(self, o);
        let abs = (a.val + a.coeffs.len() as i64).min(b.val + b.coeffs.len() as i64);
        let start = a.val.min(b.val);
        if abs <= start {
            return Self::zero(a.width, abs);
        }
        let n = (abs - start) as usize;
        let mut c = vec![F::zero(); n];
        for (i, x) in a.coeffs.iter().enumerate() {
            let k = (a.val - start) as usize + i;
            if k < n {
                c[k] = c[k].add(x);
            }
        }
        for (i, x) in b.coeffs.iter().enumerate() {
            let k = (b.val - start) as usize + i;
            if k < n {
                c[k] = c[k].add(x);
            }
        }
        let s = Self::new(a.width, start, c);
        if s.coeffs.is_empty() {
            Self::zero(a.width, abs)
        } else {
            s
        }
    }

    pub fn neg(&self) -> Self {
        PuiseuxSeries { width: self.width, val: self.val, coeffs: self.coeffs.iter().map(|c| c.neg()).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(self.width, self.val + self.coeffs.len() as i64);
        }
        PuiseuxSeries { width: self.width, val: self.val, coeffs: self.coeffs.iter().map(|a| a.mul(c)).collect() }
    }

    /// The constant c known up to q^{abs/width}.
    pub fn constant(width: u32, c: &F, abs: i64) -> Self {
        if abs <= 0 || c.is_zero() {
            return Self::zero(width, abs);
        }
        let mut v = vec![F::zero(); abs as usize];
        v[0] = c.clone();
        Self::new(width, 0, v)
    }

    pub fn add_const(&self, c: &F) -> Self {
        self.add(&Self::constant(self.width, c, self.val + self.coeffs.len() as i64))
    }

    pub fn mul(&self, o: &Self) -> Self {
        let (a, b) = Self::common(self, o);
        if a.is_zero() || b.is_zero() {
            // a zero factor is known to vanish below q^{val/width}
            return Self::zero(a.width, a.val + b.val);
        }
        let n = a.coeffs.len().min(b.coeffs.len());
        Self::new(a.width, a.val + b.val, power::mul(&a.coeffs, &b.coeffs, n))
    }

    pub fn inv(&self) -> Result<Self, ExactError> {
        if self.is_zero() {
            return Err(ExactError::ZeroLeadingTerm);
        }
        let c = power::inv(&self.coeffs, self.coeffs.len())?;
        Ok(Self::new(self.width, -self.val, c))
    }

    pub fn div(&self, o: &Self) -> Result<Self, ExactError> {
        Ok(self.mul(&o.inv()?))
    }

    pub fn pow(&self, e: i32) -> Result<Self, ExactError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        if e == 0 {
            return Ok(Self::constant(self.width, &F::one(), self.coeffs.len() as i64));
        }
        let mut acc = base.clone();
        for _ in 1..e.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

    /// p(self).
    pub fn compose_poly(&self, p: &Poly<F>) -> Self {
        let len = self.coeffs.len() as i64;
        let Some(d) = p.degree() else {
            return Self::zero(self.width, self.val + len);
        };
        let big = self.val.abs() * (d as i64 + 1) + len + 1;
        let mut acc = Self::constant(self.width, &p.lc(), big);
        for c in p.coeffs().iter().rev().skip(1) {
            acc = acc.mul(self);
            acc = acc.add(&Self::constant(self.width, c, big));
        }
        if d == 0 {
            return acc.truncate_abs(self.val.max(0) + len);
        }
        acc
    }

    /// An n-th root g with gⁿ = self; `leading_root` fixes the branch, or
    /// the field's own root of the leading coefficient is taken.
    pub fn nth_root(&self, n: u32, leading_root: Option<&F>) -> Result<Self, ExactError> {
        let lead = self.lead().ok_or(ExactError::ZeroLeadingTerm)?;
        let r = match leading_root {
            Some(r) => {
                if r.pow(n) != *lead {
                    return Err(ExactError::LeadingCoefficientNotAPower);
                }
                r.clone()
            }
            None => lead.nth_root(n).ok_or(ExactError::LeadingCoefficientNotAPower)?,
        };
        let linv = lead.inv().unwrap();
        let unit: Vec<F> = self.coeffs.iter().map(|c| c.mul(&linv)).collect();
        let root = power::pow_rational(&unit, &Rational::new(1.into(), (n as i64).into()), unit.len());
        let m = n as usize;
        let mut c = vec![F::zero(); (root.len() - 1) * m + 1];
        for (i, a) in root.iter().enumerate() {
            c[i * m] = a.mul(&r);
        }
        // pad so the precision matches: next unknown term sits at val + len·n
        c.resize(root.len() * m, F::zero());
        Ok(Self::new(self.width * n, self.val, c).simplify())
    }

    /// Renders the first `terms` nonzero terms as "q^{-1/5} + 16 + 134 q^{1/5} + …".
    pub fn display_terms(&self, var: &str, terms: usize) -> String {
        let mut parts: Vec<(bool, String)> = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if parts.len() == terms {
                break;
            }
            let e = Rational::new((self.val + i as i64).into(), self.width.into());
            let mon = if Field::is_zero(&e) {
                String::new()
            } else if e == Rational::from_integer(1.into()) {
                var.to_string()
            } else if e.is_integer() {
                format!("{var}^{e}")
            } else {
                format!("{var}^{{{e}}}")
            };
            let cs = c.to_string();
            let (neg, mag) = match cs.strip_prefix('-') {
                Some(m) if !m.contains(' ') => (true, m.to_string()),
                _ => (false, cs),
            };
            let mag = if mag.contains(' ') { format!("({mag})") } else { mag };
            let term = if mon.is_empty() {
                mag
            } else if mag == "1" {
                mon
            } else {
                format!("{mag} {mon}")
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
        if s.is_empty() {
            s.push('0');
        }
        s.push_str(" + …");
        s
    }

    /// Exact coefficient list with exponents, for structured output.
    pub fn terms(&self) -> Vec<(Rational, F)> {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| (Rational::new((self.val + i as i64).into(), self.width.into()), c.clone()))
            .collect()
    }
}

impl<F: Field> fmt::Display for PuiseuxSeries<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.display_terms("q", usize::MAX);
        let s = s.strip_suffix(" + …").unwrap_or(&s).to_string();
        let e = self.abs_prec();
        write!(f, "{s} + O(q^{{{e}}})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{q, qq};

    type S = PuiseuxSeries<Rational>;

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&n| q(n)).collect()
    }

    #[test]
    fn multiply_by_q() {
        let a = S::new(1, -1, ints(&[1, 744, 0, 0]));
        let b = S::new(1, 1, ints(&[1, 0, 0, 0]));
        let p = a.mul(&b);
        assert_eq!(p.val(), 0);
        assert_eq!(&p.coeffs()[..2], &ints(&[1, 744])[..]);
    }

    #[test]
    fn fifth_power_of_root() {
        let a = S::new(5, -1, ints(&[1, 0, 0, 0]));
        let p = a.pow(5).unwrap();
        assert_eq!(p.start_exponent(), q(-1));
        assert_eq!(p.lead(), Some(&q(1)));
        assert!(p.coeffs()[1..].iter().all(|c| c.is_zero()));
    }

    #[test]
    fn geometric() {
        let a = S::new(1, 0, ints(&[1, -1, 0, 0]));
        assert_eq!(a.inv().unwrap().coeffs(), &ints(&[1, 1, 1, 1])[..]);
    }

    #[test]
    fn sqrt_of_square() {
        let a = S::new(1, -2, ints(&[1, 2, 1, 0, 0]));
        let r = a.nth_root(2, None).unwrap();
        assert_eq!(r.start_exponent(), q(-1));
        assert_eq!(r.coeffs(), &ints(&[1, 1, 0, 0, 0])[..]);
    }

    #[test]
    fn cube_root_binomial() {
        // (1+t)^{1/3} = 1 + t/3 − t²/9 + …
        let a = S::new(1, 0, ints(&[1, 1, 0, 0]));
        let r = a.nth_root(3, None).unwrap();
        assert_eq!(r.coeffs()[..3], [q(1), qq(1, 3), qq(-1, 9)]);
    }

    #[test]
    fn sqrt_negative_fails() {
        let a = S::new(1, -2, ints(&[-1, 0, 0]));
        assert_eq!(a.nth_root(2, None).unwrap_err(), ExactError::LeadingCoefficientNotAPower);
    }

    #[test]
    fn reversion() {
        // h = t + t², inverse = t − t² + 2t³ − 5t⁴
        let g = power::revert(&ints(&[0, 1, 1, 0, 0]), 5).unwrap();
        assert_eq!(g, ints(&[0, 1, -1, 2, -5]));
    }

    #[test]
    fn display() {
        let a = S::new(5, -1, ints(&[1, 16, 134]));
        assert_eq!(a.display_terms("q", 3), "q^{-1/5} + 16 + 134 q^{1/5} + …");
    }

    #[test]
    fn add_mixed_widths() {
        let a = S::new(2, -1, ints(&[1, 0, 0, 0]));
        let b = S::new(1, 0, ints(&[3, 0]));
        let s = a.add(&b);
        assert_eq!(s.width(), 2);
        assert_eq!(s.coeff_at(&q(0)), Some(q(3)));
        assert_eq!(s.coeff_at(&qq(-1, 2)), Some(q(1)));
    }
}
