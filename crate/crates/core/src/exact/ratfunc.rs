//! Univariate rational functions, kept reduced with monic denominator.

use super::field::Field;
use super::poly::Poly;
use super::rational::Rational;
use super::ExactError;
use std::fmt;

#[derive(Clone, Debug, PartialEq)]
pub struct RationalFunction<F: Field> {
    num: Poly<F>,
    den: Poly<F>,
}

pub type QRatFunc = RationalFunction<Rational>;

impl<F: Field> RationalFunction<F> {
    pub fn new(num: Poly<F>, den: Poly<F>) -> Result<Self, ExactError> {
        if den.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self { num, den: Poly::one() });
        }
        let g = num.gcd(&den);
        let num = num.exact_div(&g);
        let den = den.exact_div(&g);
        let lc = den.lc().inv().expect("nonzero");
        Ok(Self { num: num.scale(&lc), den: den.scale(&lc) })
    }

    pub fn from_poly(p: Poly<F>) -> Self {
        Self { num: p, den: Poly::one() }
    }

    pub fn constant(c: F) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn x() -> Self {
        Self::from_poly(Poly::x())
    }

    pub fn num(&self) -> &Poly<F> {
        &self.num
    }

    pub fn den(&self) -> &Poly<F> {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Degree as a map P¹ → P¹.
    pub fn degree(&self) -> usize {
        self.num.deg().max(self.den.deg())
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::new(self.num.mul(&o.den).add(&o.num.mul(&self.den)), self.den.mul(&o.den)).unwrap()
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        Self { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::new(self.num.mul(&o.num), self.den.mul(&o.den)).unwrap()
    }

    pub fn div(&self, o: &Self) -> Result<Self, ExactError> {
        Self::new(self.num.mul(&o.den), self.den.mul(&o.num))
    }

    pub fn scale(&self, c: &F) -> Self {
        Self::new(self.num.scale(c), self.den.clone()).unwrap()
    }

    pub fn pow(&self, e: u32) -> Self {
        Self { num: self.num.pow(e), den: self.den.pow(e) }
    }

    pub fn eval(&self, x: &F) -> Result<F, ExactError> {
        let d = self.den.eval(x);
        self.num.eval(x).div(&d).ok_or(ExactError::DivisionByZero)
    }

    /// self ∘ inner, computed by homogenizing the outer function.
    pub fn compose(&self, inner: &Self) -> Self {
        let n = self.degree();
        let a = &inner.num;
        let b = &inner.den;
        let homog = |p: &Poly<F>| -> Poly<F> {
            let mut acc = Poly::zero();
            for (i, c) in p.coeffs().iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                acc = acc.add(&a.pow(i as u32).mul(&b.pow((n - i) as u32)).scale(c));
            }
            acc
        };
        Self::new(homog(&self.num), homog(&self.den)).unwrap()
    }

    pub fn display_in(&self, var: &str) -> String {
        if self.den.deg() == 0 {
            return self.num.display_in(var);
        }
        format!("({}) / ({})", self.num.display_in(var), self.den.display_in(var))
    }
}

impl<F: Field> fmt::Display for RationalFunction<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_in("x"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::poly::QPoly;
    use crate::exact::rational::q;

    #[test]
    fn reduced_form() {
        let r = QRatFunc::new(QPoly::from_ints(&[-2, 0, 2]), QPoly::from_ints(&[2, 2])).unwrap();
        assert_eq!(r.num(), &QPoly::from_ints(&[-1, 1]));
        assert_eq!(r.den(), &QPoly::one());
    }

    #[test]
    fn compose_square_with_shift() {
        let sq = QRatFunc::from_poly(QPoly::from_ints(&[0, 0, 1]));
        let sh = QRatFunc::from_poly(QPoly::from_ints(&[1, 1]));
        assert_eq!(sq.compose(&sh), QRatFunc::from_poly(QPoly::from_ints(&[1, 2, 1])));
    }

    #[test]
    fn compose_degrees_multiply() {
        let a = QRatFunc::new(QPoly::from_ints(&[0, 0, 1]), QPoly::from_ints(&[1, 1])).unwrap();
        let b = QRatFunc::new(QPoly::from_ints(&[1, 0, 0, 1]), QPoly::from_ints(&[0, 1])).unwrap();
        assert_eq!(a.compose(&b).degree(), 6);
        assert_eq!(a.compose(&b).eval(&q(2)).unwrap(), a.eval(&b.eval(&q(2)).unwrap()).unwrap());
    }
}
