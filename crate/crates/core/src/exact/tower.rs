//! Iterated square-root extensions of Q with a fixed embedding.
//!
//! A field with k layers has the multiplicative basis of monomials
//! √d_0^{e_0} ⋯ √d_{k-1}^{e_{k-1}}, indexed by the bitmask of exponents.
//! Layer i adjoins a square root of d_i, an element of the field spanned by
//! the first i layers. The designated root is the positive real one, or i
//! for the single permitted imaginary layer d = −1.

use super::rational::{q, rational_nth_root, sqrt_bounds, Rational};
use super::ExactError;
use num_traits::{One, Signed, Zero};
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

/// Maximal degree [F : Q].
pub const MAX_DEGREE: usize = 8;

#[derive(Debug, PartialEq, Eq)]
struct FieldData {
    /// radicands[i] has length 2^i: coordinates in the prefix field.
    radicands: Vec<Vec<Rational>>,
    /// Product table: table[m1 * dim + m2] = coordinates of e_m1 * e_m2.
    table: Vec<Vec<Rational>>,
}

/// A tower field Q(√d_0)(√d_1)….
#[derive(Clone, Debug)]
pub struct TowerField(Arc<FieldData>);

impl PartialEq for TowerField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.radicands == other.0.radicands
    }
}
impl Eq for TowerField {}

fn unit(dim: usize, m: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); dim];
    v[m] = Rational::one();
    v
}

fn is_zero_vec(v: &[Rational]) -> bool {
    v.iter().all(|c| c.is_zero())
}

impl TowerField {
    /// The field Q.
    pub fn rationals() -> Self {
        Self::from_radicands(vec![])
    }

    fn from_radicands(radicands: Vec<Vec<Rational>>) -> Self {
        let k = radicands.len();
        let dim = 1usize << k;
        let mut memo: HashMap<(usize, usize), Vec<Rational>> = HashMap::new();
        fn basis_mul(
            m1: usize,
            m2: usize,
            dim: usize,
            rad: &[Vec<Rational>],
            memo: &mut HashMap<(usize, usize), Vec<Rational>>,
        ) -> Vec<Rational> {
            if let Some(v) = memo.get(&(m1, m2)) {
                return v.clone();
            }
            let common = m1 & m2;
            let out = if common == 0 {
                unit(dim, m1 | m2)
            } else {
                let i = usize::BITS as usize - 1 - common.leading_zeros() as usize;
                let bit = 1usize << i;
                let p = basis_mul(m1 ^ bit, m2 ^ bit, dim, rad, memo);
                let mut acc = vec![Rational::zero(); dim];
                for (x, px) in p.iter().enumerate() {
                    if px.is_zero() {
                        continue;
                    }
                    for (y, dy) in rad[i].iter().enumerate() {
                        if dy.is_zero() {
                            continue;
                        }
                        let c = px * dy;
                        let e = basis_mul(x, y, dim, rad, memo);
                        for (t, et) in e.iter().enumerate() {
                            if !et.is_zero() {
                                acc[t] += &c * et;
                            }
                        }
                    }
                }
                acc
            };
            memo.insert((m1, m2), out.clone());
            out
        }
        let mut table = Vec::with_capacity(dim * dim);
        for m1 in 0..dim {
            for m2 in 0..dim {
                table.push(basis_mul(m1, m2, dim, &radicands, &mut memo));
            }
        }
        TowerField(Arc::new(FieldData { radicands, table }))
    }

    pub fn layers(&self) -> usize {
        self.0.radicands.len()
    }

    pub fn degree(&self) -> usize {
        1 << self.layers()
    }

    /// The radicand of layer i as an element of this field.
    pub fn radicand(&self, i: usize) -> TowerElement {
        let mut c = self.0.radicands[i].clone();
        c.resize(self.degree(), Rational::zero());
        TowerElement::from_coords(self.clone(), c)
    }

    /// True when some layer adjoins i = √−1.
    pub fn has_imaginary_layer(&self) -> bool {
        self.0.radicands.iter().any(|r| r[0].is_negative())
    }

    /// The subfield spanned by the first `k` layers.
    pub fn prefix(&self, k: usize) -> TowerField {
        if k == self.layers() {
            return self.clone();
        }
        Self::from_radicands(self.0.radicands[..k].to_vec())
    }

    /// Whether `self` is the field spanned by an initial segment of `other`'s layers.
    pub fn is_prefix_of(&self, other: &TowerField) -> bool {
        self.layers() <= other.layers() && self.0.radicands[..] == other.0.radicands[..self.layers()]
    }

    /// The designated square root of layer i.
    pub fn generator(&self, i: usize) -> TowerElement {
        TowerElement::from_coords(self.clone(), unit(self.degree(), 1 << i))
    }

    fn mul_coords(&self, a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        let dim = self.degree();
        let mut acc = vec![Rational::zero(); dim];
        for (x, ax) in a.iter().enumerate() {
            if ax.is_zero() {
                continue;
            }
            for (y, by) in b.iter().enumerate() {
                if by.is_zero() {
                    continue;
                }
                let c = ax * by;
                for (t, e) in self.0.table[x * dim + y].iter().enumerate() {
                    if !e.is_zero() {
                        acc[t] += &c * e;
                    }
                }
            }
        }
        acc
    }

    /// Adjoin a square root of `a` (an element of this field). Returns the
    /// new field and the designated root of `a` in it. When `a` is already a
    /// square, the field is unchanged and the witness is its positive root.
    pub fn adjoin_sqrt(&self, a: &TowerElement) -> Result<(TowerField, TowerElement), ExactError> {
        let a = a.embed_into(self)?;
        if a.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        if let Some(s) = a.sqrt() {
            return Ok((self.clone(), s));
        }
        if self.degree() * 2 > MAX_DEGREE {
            return Err(ExactError::DegreeBoundExceeded);
        }
        let negative = !self.has_imaginary_layer() && a.real_sign()? < 0;
        if negative {
            // Only Q(i) is permitted: a must be −1 times a square.
            let s = a.neg().sqrt().ok_or(ExactError::NegativeRadicand)?;
            let mut rad = self.0.radicands.clone();
            let mut minus_one = vec![Rational::zero(); self.degree()];
            minus_one[0] = q(-1);
            rad.push(minus_one);
            let f = Self::from_radicands(rad);
            let w = s.embed_into(&f)?.try_mul(&f.generator(f.layers() - 1))?;
            return Ok((f, w));
        }
        let mut rad = self.0.radicands.clone();
        rad.push(a.coords.clone());
        let f = Self::from_radicands(rad);
        let w = f.generator(f.layers() - 1);
        Ok((f, w))
    }

    /// Q(√n) for a rational n that is not a square.
    pub fn quadratic(n: &Rational) -> Result<(TowerField, TowerElement), ExactError> {
        Self::rationals().adjoin_sqrt(&TowerElement::rational(n.clone()))
    }

    /// Whether every radicand is rational.
    pub fn has_rational_radicands(&self) -> bool {
        self.0.radicands.iter().all(|r| r[1..].iter().all(|c| c.is_zero()))
    }

    /// Smallest field containing both, with the embedding of `other`'s
    /// generators. Layers already present (up to squares) are merged.
    pub fn compositum(&self, other: &TowerField) -> Result<TowerField, ExactError> {
        if other.is_prefix_of(self) {
            return Ok(self.clone());
        }
        if self.is_prefix_of(other) {
            return Ok(other.clone());
        }
        let (base, ext) = if other.has_rational_radicands() {
            (self, other)
        } else if self.has_rational_radicands() {
            (other, self)
        } else {
            return Err(ExactError::IncompatibleFields);
        };
        let mut g = base.clone();
        for r in &ext.0.radicands {
            let (ng, _) = g.adjoin_sqrt(&TowerElement::rational(r[0].clone()))?;
            g = ng;
        }
        Ok(g)
    }

    fn radicand_label(&self, i: usize) -> String {
        let r = &self.0.radicands[i];
        if r[0] == q(-1) && is_zero_vec(&r[1..]) {
            return "i".into();
        }
        if is_zero_vec(&r[1..]) {
            format!("√{}", r[0])
        } else {
            let sub = self.prefix(i);
            let e = TowerElement::from_coords(sub, r.clone());
            format!("√({e})")
        }
    }

    fn monomial_label(&self, m: usize) -> String {
        (0..self.layers())
            .filter(|i| m >> i & 1 == 1)
            .map(|i| self.radicand_label(i))
            .collect::<Vec<_>>()
            .join("·")
    }
}

impl fmt::Display for TowerField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.layers() == 0 {
            return write!(f, "Q");
        }
        let labels: Vec<String> = (0..self.layers()).map(|i| self.radicand_label(i)).collect();
        write!(f, "Q({})", labels.join(", "))
    }
}

/// An element of a tower field.
#[derive(Clone, Debug)]
pub struct TowerElement {
    field: TowerField,
    coords: Vec<Rational>,
}

impl TowerElement {
    pub fn from_coords(field: TowerField, coords: Vec<Rational>) -> Self {
        assert_eq!(coords.len(), field.degree(), "coordinate length mismatch");
        TowerElement { field, coords }
    }

    pub fn rational(r: Rational) -> Self {
        TowerElement { field: TowerField::rationals(), coords: vec![r] }
    }

    pub fn int(n: i64) -> Self {
        Self::rational(q(n))
    }

    pub fn field(&self) -> &TowerField {
        &self.field
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    /// The rational value, if the element lies in Q.
    pub fn as_rational(&self) -> Option<Rational> {
        if is_zero_vec(&self.coords[1..]) {
            Some(self.coords[0].clone())
        } else {
            None
        }
    }

    /// Image in a field that has `self.field` as a prefix, or whose layers
    /// absorb `self.field`'s rational layers.
    pub fn embed_into(&self, target: &TowerField) -> Result<TowerElement, ExactError> {
        if self.field == *target {
            return Ok(self.clone());
        }
        if self.field.is_prefix_of(target) {
            let mut c = self.coords.clone();
            c.resize(target.degree(), Rational::zero());
            return Ok(TowerElement::from_coords(target.clone(), c));
        }
        if !self.field.has_rational_radicands() {
            return Err(ExactError::IncompatibleFields);
        }
        // Map each generator to a square root of its radicand in the target.
        let mut images = Vec::new();
        for r in &self.field.0.radicands {
            let d = TowerElement::rational(r[0].clone()).embed_into(target)?;
            let s = d.sqrt().ok_or(ExactError::IncompatibleFields)?;
            images.push(s);
        }
        let mut acc = TowerElement::zero_in(target);
        for (m, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut term = TowerElement::rational(c.clone()).embed_into(target)?;
            for (i, img) in images.iter().enumerate() {
                if m >> i & 1 == 1 {
                    term = term.mul_same(img);
                }
            }
            acc = acc.add_same(&term);
        }
        Ok(acc)
    }

    pub fn zero_in(field: &TowerField) -> Self {
        TowerElement::from_coords(field.clone(), vec![Rational::zero(); field.degree()])
    }

    pub fn one_in(field: &TowerField) -> Self {
        TowerElement::from_coords(field.clone(), unit(field.degree(), 0))
    }

    /// Multiply by a rational scalar.
    pub fn scale(&self, r: &Rational) -> TowerElement {
        TowerElement::from_coords(self.field.clone(), self.coords.iter().map(|c| c * r).collect())
    }

    pub fn scale_int(&self, n: i64) -> TowerElement {
        self.scale(&q(n))
    }

    fn common(&self, other: &TowerElement) -> Result<(TowerElement, TowerElement), ExactError> {
        if self.field == other.field {
            return Ok((self.clone(), other.clone()));
        }
        let f = self.field.compositum(&other.field)?;
        Ok((self.embed_into(&f)?, other.embed_into(&f)?))
    }

    fn add_same(&self, o: &TowerElement) -> TowerElement {
        let c = self.coords.iter().zip(&o.coords).map(|(a, b)| a + b).collect();
        TowerElement::from_coords(self.field.clone(), c)
    }

    fn mul_same(&self, o: &TowerElement) -> TowerElement {
        TowerElement::from_coords(self.field.clone(), self.field.mul_coords(&self.coords, &o.coords))
    }

    pub fn try_add(&self, o: &TowerElement) -> Result<TowerElement, ExactError> {
        let (a, b) = self.common(o)?;
        Ok(a.add_same(&b))
    }

    pub fn try_sub(&self, o: &TowerElement) -> Result<TowerElement, ExactError> {
        let (a, b) = self.common(o)?;
        Ok(a.add_same(&b.neg()))
    }

    pub fn try_mul(&self, o: &TowerElement) -> Result<TowerElement, ExactError> {
        let (a, b) = self.common(o)?;
        Ok(a.mul_same(&b))
    }

    pub fn try_div(&self, o: &TowerElement) -> Result<TowerElement, ExactError> {
        let (a, b) = self.common(o)?;
        let inv = b.try_inv()?;
        Ok(a.mul_same(&inv))
    }

    /// Split a = p + q·√d along the top layer.
    fn split_top(&self) -> (TowerElement, TowerElement, TowerField) {
        let k = self.field.layers();
        let sub = self.field.prefix(k - 1);
        let half = sub.degree();
        let p = TowerElement::from_coords(sub.clone(), self.coords[..half].to_vec());
        let q = TowerElement::from_coords(sub.clone(), self.coords[half..].to_vec());
        (p, q, sub)
    }

    fn join_top(&self, p: &TowerElement, q: &TowerElement) -> TowerElement {
        let mut c = p.coords.clone();
        c.extend(q.coords.iter().cloned());
        TowerElement::from_coords(self.field.clone(), c)
    }

    pub fn try_inv(&self) -> Result<TowerElement, ExactError> {
        if self.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        if self.field.layers() == 0 {
            return Ok(TowerElement::rational(self.coords[0].recip()));
        }
        let (p, q, sub) = self.split_top();
        let d = TowerElement::from_coords(sub, self.field.0.radicands[self.field.layers() - 1].clone());
        // (p + q√d)^{-1} = (p − q√d)/(p² − q²d)
        let norm = p.mul_same(&p).add_same(&q.mul_same(&q).mul_same(&d).neg());
        let ninv = norm.try_inv()?;
        Ok(self.join_top(&p.mul_same(&ninv), &q.neg().mul_same(&ninv)))
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vec(&self.coords)
    }

    pub fn neg(&self) -> TowerElement {
        TowerElement::from_coords(self.field.clone(), self.coords.iter().map(|c| -c).collect())
    }

    /// A square root inside the same field, if one exists. For real fields
    /// the nonnegative root is returned.
    pub fn sqrt(&self) -> Option<TowerElement> {
        let s = self.sqrt_any()?;
        if !self.field.has_imaginary_layer() && s.real_sign().ok()? < 0 {
            Some(s.neg())
        } else {
            Some(s)
        }
    }

    fn sqrt_any(&self) -> Option<TowerElement> {
        if self.is_zero() {
            return Some(self.clone());
        }
        if self.field.layers() == 0 {
            return rational_nth_root(&self.coords[0], 2).map(TowerElement::rational);
        }
        let (p, q, sub) = self.split_top();
        let d = TowerElement::from_coords(sub.clone(), self.field.0.radicands[self.field.layers() - 1].clone());
        let zero = TowerElement::zero_in(&sub);
        if q.is_zero() {
            if let Some(s) = p.sqrt_any() {
                return Some(self.join_top(&s, &zero));
            }
            let y = p.mul_same(&d.try_inv().ok()?).sqrt_any()?;
            return Some(self.join_top(&zero, &y));
        }
        // x² + d y² = p, 2xy = q  ⇒ x² = (p ± n)/2 with n² = p² − q²d.
        let norm = p.mul_same(&p).add_same(&q.mul_same(&q).mul_same(&d).neg());
        let n = norm.sqrt_any()?;
        let half = TowerElement::rational(Rational::new(1.into(), 2.into())).embed_into(&sub).ok()?;
        for cand in [p.add_same(&n), p.add_same(&n.neg())] {
            let x2 = cand.mul_same(&half);
            if x2.is_zero() {
                continue;
            }
            if let Some(x) = x2.sqrt_any() {
                let two_x = x.add_same(&x);
                let y = q.mul_same(&two_x.try_inv().ok()?);
                return Some(self.join_top(&x, &y));
            }
        }
        None
    }

    /// Rational interval [lo, hi] containing the real value, computed by
    /// interval arithmetic with square roots enclosed to `bits` bits.
    pub fn enclose_at(&self, bits: u32) -> Result<(Rational, Rational), ExactError> {
        if self.field.has_imaginary_layer() {
            return Err(ExactError::ImaginaryLayerPresent);
        }
        let k = self.field.layers();
        // enclosures of each generator
        let mut gens: Vec<(Rational, Rational)> = Vec::with_capacity(k);
        for i in 0..k {
            let sub = self.field.prefix(i);
            let d = TowerElement::from_coords(sub, self.field.0.radicands[i].clone());
            let (dl, dh) = d.enclose_at(bits + 4)?;
            let dl = if dl.is_negative() { Rational::zero() } else { dl };
            let (lo, _) = sqrt_bounds(&dl, bits + 4);
            let (_, hi) = sqrt_bounds(&dh, bits + 4);
            gens.push((lo, hi));
        }
        let mut lo = Rational::zero();
        let mut hi = Rational::zero();
        for (m, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut t = (c.clone(), c.clone());
            for (i, g) in gens.iter().enumerate() {
                if m >> i & 1 == 1 {
                    t = interval_mul(&t, g);
                }
            }
            lo += t.0;
            hi += t.1;
        }
        Ok((lo, hi))
    }

    /// Enclosure of width at most 2^-bits.
    pub fn enclose(&self, bits: u32) -> Result<(Rational, Rational), ExactError> {
        let eps = Rational::new(1.into(), num_bigint::BigInt::one() << bits);
        let mut b = bits.max(8);
        loop {
            let (lo, hi) = self.enclose_at(b)?;
            if &hi - &lo <= eps {
                return Ok((lo, hi));
            }
            b *= 2;
        }
    }

    /// Sign under the fixed real embedding, by interval refinement with
    /// precision doubling; exact zero is detected from the coordinates.
    pub fn real_sign(&self) -> Result<i8, ExactError> {
        if self.field.has_imaginary_layer() {
            return Err(ExactError::ImaginaryLayerPresent);
        }
        if self.is_zero() {
            return Ok(0);
        }
        let mut bits = 16;
        loop {
            let (lo, hi) = self.enclose_at(bits)?;
            if lo.is_positive() {
                return Ok(1);
            }
            if hi.is_negative() {
                return Ok(-1);
            }
            bits *= 2;
        }
    }

    /// Conjugate over the prefix field: p + q√d ↦ p − q√d on the top layer.
    pub fn conjugate_top(&self) -> TowerElement {
        if self.field.layers() == 0 {
            return self.clone();
        }
        let (p, q, _) = self.split_top();
        self.join_top(&p, &q.neg())
    }
}

fn interval_mul(a: &(Rational, Rational), b: &(Rational, Rational)) -> (Rational, Rational) {
    let c = [&a.0 * &b.0, &a.0 * &b.1, &a.1 * &b.0, &a.1 * &b.1];
    let lo = c.iter().min().unwrap().clone();
    let hi = c.iter().max().unwrap().clone();
    (lo, hi)
}

impl PartialEq for TowerElement {
    fn eq(&self, other: &Self) -> bool {
        match self.common(other) {
            Ok((a, b)) => a.coords == b.coords,
            Err(_) => false,
        }
    }
}

impl fmt::Display for TowerElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (m, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if m == 0 {
                terms.push(format!("{c}"));
            } else {
                let label = self.field.monomial_label(m);
                if c.is_one() {
                    terms.push(label);
                } else if *c == -Rational::one() {
                    terms.push(format!("-{label}"));
                } else {
                    terms.push(format!("{c}*{label}"));
                }
            }
        }
        if terms.is_empty() {
            return write!(f, "0");
        }
        let mut s = terms[0].clone();
        for t in &terms[1..] {
            if let Some(rest) = t.strip_prefix('-') {
                s.push_str(" - ");
                s.push_str(rest);
            } else {
                s.push_str(" + ");
                s.push_str(t);
            }
        }
        write!(f, "{s}")
    }
}

impl super::field::Field for TowerElement {
    fn zero() -> Self {
        TowerElement::int(0)
    }
    fn one() -> Self {
        TowerElement::int(1)
    }
    fn is_zero(&self) -> bool {
        TowerElement::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self.try_add(other).expect("incompatible tower fields")
    }
    fn sub(&self, other: &Self) -> Self {
        self.try_sub(other).expect("incompatible tower fields")
    }
    fn mul(&self, other: &Self) -> Self {
        self.try_mul(other).expect("incompatible tower fields")
    }
    fn neg(&self) -> Self {
        TowerElement::neg(self)
    }
    fn inv(&self) -> Option<Self> {
        self.try_inv().ok()
    }
    fn from_rational(r: &Rational) -> Self {
        TowerElement::rational(r.clone())
    }
    fn nth_root(&self, n: u32) -> Option<Self> {
        match n {
            1 => Some(self.clone()),
            2 => self.sqrt(),
            _ => self.as_rational().and_then(|r| rational_nth_root(&r, n)).map(TowerElement::rational),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::field::Field;
    use crate::exact::rational::qq;

    fn sqrt_q(n: i64) -> TowerElement {
        TowerField::quadratic(&q(n)).unwrap().1
    }

    #[test]
    fn defining_relation() {
        let s5 = sqrt_q(5);
        assert_eq!(s5.mul(&s5), TowerElement::int(5));
    }

    #[test]
    fn multiplicative_basis_in_biquadratic_field() {
        let (f2, s2) = TowerField::quadratic(&q(2)).unwrap();
        let (f, s3) = f2.adjoin_sqrt(&TowerElement::int(3)).unwrap();
        assert_eq!(f.degree(), 4);
        let s6 = s2.embed_into(&f).unwrap().mul(&s3);
        let (_, root6) = f.adjoin_sqrt(&TowerElement::int(6)).unwrap();
        assert_eq!(root6, s6);
        let s2f = s2.embed_into(&f).unwrap();
        let two_s3 = s3.mul(&TowerElement::int(2));
        assert_eq!(s6.mul(&s2f), two_s3);
    }

    #[test]
    fn already_square_returns_witness() {
        let (f, s5) = TowerField::quadratic(&q(5)).unwrap();
        let (g, w) = f.adjoin_sqrt(&TowerElement::int(5)).unwrap();
        assert_eq!(g, f);
        assert_eq!(w, s5);
        let (g, w) = f.adjoin_sqrt(&TowerElement::int(20)).unwrap();
        assert_eq!(g.degree(), 2);
        assert_eq!(w, s5.mul(&TowerElement::int(2)));
    }

    #[test]
    fn adjoin_two_to_sqrt6() {
        let (f6, _) = TowerField::quadratic(&q(6)).unwrap();
        let (f, _) = f6.adjoin_sqrt(&TowerElement::int(2)).unwrap();
        assert_eq!(f.degree(), 4);
        // norm test oracle: 2 is a square in Q(√6) iff 2 or 2·6 = 12 is a rational square
        assert!(rational_nth_root(&q(2), 2).is_none() && rational_nth_root(&q(12), 2).is_none());
    }

    #[test]
    fn golden_ratio_identity() {
        let s5 = sqrt_q(5);
        let lam = s5.add(&TowerElement::int(1)).mul(&TowerElement::rational(qq(1, 2)));
        let r = lam.add(&TowerElement::int(1).div(&lam).unwrap());
        assert_eq!(r, s5);
        // numeric oracle: 50 decimal digits ≈ 167 bits
        let (lo, hi) = r.enclose(170).unwrap();
        assert!(lo < qq(2236067977, 1_000_000_000) + qq(1, 1_000_000_000));
        assert!(hi > qq(2236067977, 1_000_000_000));
    }

    #[test]
    fn signs() {
        let s2 = sqrt_q(2);
        assert_eq!(s2.sub(&TowerElement::int(1)).real_sign().unwrap(), 1);
        let phi = sqrt_q(5).add(&TowerElement::int(1)).mul(&TowerElement::rational(qq(1, 2)));
        assert_eq!(phi.sub(&TowerElement::int(2)).real_sign().unwrap(), -1);
        assert_eq!(TowerElement::int(0).real_sign().unwrap(), 0);
    }

    #[test]
    fn nested_radicand() {
        // √(2 + √2) · √(2 − √2) = √2
        let (f, s2) = TowerField::quadratic(&q(2)).unwrap();
        let a = TowerElement::int(2).add(&s2);
        let (g, r) = f.adjoin_sqrt(&a).unwrap();
        assert_eq!(g.degree(), 4);
        assert_eq!(r.mul(&r), a);
        assert_eq!(r.real_sign().unwrap(), 1);
        let inv = r.try_inv().unwrap();
        assert_eq!(inv.mul(&r), TowerElement::int(1));
    }

    #[test]
    fn imaginary_layer() {
        let (f, i) = TowerField::quadratic(&q(-1)).unwrap();
        assert!(f.has_imaginary_layer());
        assert_eq!(i.mul(&i), TowerElement::int(-1));
        assert_eq!(i.real_sign(), Err(ExactError::ImaginaryLayerPresent));
        assert_eq!(TowerField::quadratic(&q(-3)).unwrap_err(), ExactError::NegativeRadicand);
    }

    #[test]
    fn degree_bound() {
        let mut f = TowerField::rationals();
        for p in [2, 3, 5] {
            f = f.adjoin_sqrt(&TowerElement::int(p)).unwrap().0;
        }
        assert_eq!(f.degree(), 8);
        assert_eq!(f.adjoin_sqrt(&TowerElement::int(7)).unwrap_err(), ExactError::DegreeBoundExceeded);
    }

    #[test]
    fn compositum_embeds() {
        let s2 = sqrt_q(2);
        let s3 = sqrt_q(3);
        let p = s2.mul(&s3);
        assert_eq!(p.mul(&p), TowerElement::int(6));
        let s6 = sqrt_q(6);
        assert!(p == s6 || p == s6.neg());
    }

    #[test]
    fn division_by_zero() {
        assert_eq!(sqrt_q(5).try_div(&TowerElement::int(0)).unwrap_err(), ExactError::DivisionByZero);
    }

    #[test]
    fn display() {
        let s5 = sqrt_q(5);
        let lam = s5.add(&TowerElement::int(1)).mul(&TowerElement::rational(qq(1, 2)));
        assert_eq!(lam.to_string(), "1/2 + 1/2*√5");
    }
}
