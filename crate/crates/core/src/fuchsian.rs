//! Generators α, β of the four (1;∞) groups from their trace triples, and
//! the generating set of the finite-index subgroup Γ′ used to build orders.

use crate::exact::field::Field;
use crate::exact::rational::{q, qq, Rational};
use crate::exact::tower::{TowerElement, TowerField};
use crate::exact::ExactError;
use crate::Case;
use std::fmt;

/// A 2×2 matrix [[a, b], [c, d]] over an exact field.
#[derive(Clone, Debug, PartialEq)]
pub struct Mat2<F: Field> {
    pub a: F,
    pub b: F,
    pub c: F,
    pub d: F,
}

pub type QMat2 = Mat2<Rational>;

impl<F: Field> Mat2<F> {
    pub fn new(a: F, b: F, c: F, d: F) -> Self {
        Mat2 { a, b, c, d }
    }

    pub fn from_ints(a: i64, b: i64, c: i64, d: i64) -> Self {
        Mat2::new(F::from_int(a), F::from_int(b), F::from_int(c), F::from_int(d))
    }

    pub fn identity() -> Self {
        Self::from_ints(1, 0, 0, 1)
    }

    pub fn zero() -> Self {
        Self::from_ints(0, 0, 0, 0)
    }

    /// Entries in row-major order.
    pub fn entries(&self) -> [F; 4] {
        [self.a.clone(), self.b.clone(), self.c.clone(), self.d.clone()]
    }

    pub fn from_entries(e: &[F]) -> Self {
        Mat2::new(e[0].clone(), e[1].clone(), e[2].clone(), e[3].clone())
    }

    pub fn mul(&self, o: &Self) -> Self {
        Mat2::new(
            self.a.mul(&o.a).add(&self.b.mul(&o.c)),
            self.a.mul(&o.b).add(&self.b.mul(&o.d)),
            self.c.mul(&o.a).add(&self.d.mul(&o.c)),
            self.c.mul(&o.b).add(&self.d.mul(&o.d)),
        )
    }

    pub fn add(&self, o: &Self) -> Self {
        Mat2::new(self.a.add(&o.a), self.b.add(&o.b), self.c.add(&o.c), self.d.add(&o.d))
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        Mat2::new(self.a.neg(), self.b.neg(), self.c.neg(), self.d.neg())
    }

    pub fn scale(&self, s: &F) -> Self {
        Mat2::new(self.a.mul(s), self.b.mul(s), self.c.mul(s), self.d.mul(s))
    }

    pub fn det(&self) -> F {
        self.a.mul(&self.d).sub(&self.b.mul(&self.c))
    }

    pub fn trace(&self) -> F {
        self.a.add(&self.d)
    }

    pub fn adjugate(&self) -> Self {
        Mat2::new(self.d.clone(), self.b.neg(), self.c.neg(), self.a.clone())
    }

    pub fn inv(&self) -> Option<Self> {
        let di = self.det().inv()?;
        Some(self.adjugate().scale(&di))
    }

    pub fn pow(&self, e: i64) -> Option<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = Self::identity();
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Some(acc)
    }

    pub fn is_scalar(&self) -> bool {
        self.b.is_zero() && self.c.is_zero() && self.a == self.d
    }

    /// Matrix–vector product.
    pub fn apply(&self, v: &[F; 2]) -> [F; 2] {
        [self.a.mul(&v[0]).add(&self.b.mul(&v[1])), self.c.mul(&v[0]).add(&self.d.mul(&v[1]))]
    }
}

impl QMat2 {
    pub fn is_integral(&self) -> bool {
        self.entries().iter().all(|x| x.is_integer())
    }
}

impl<F: Field> fmt::Display for Mat2<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

/// g h g⁻¹ h⁻¹ for determinant-one matrices.
pub fn commutator<F: Field>(g: &Mat2<F>, h: &Mat2<F>) -> Mat2<F> {
    g.mul(h).mul(&g.adjugate()).mul(&h.adjugate())
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FuchsianError {
    #[error("λ² − Tr(α)λ + 1 has no real root")]
    NoRealRoot,
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// The trace triple (Tr α, Tr β, Tr αβ) of one of the four groups.
#[derive(Clone, Debug, PartialEq)]
pub struct TraceTriple {
    pub case: Case,
    pub tr_a: TowerElement,
    pub tr_b: TowerElement,
    pub tr_ab: TowerElement,
}

fn sqrt_q(n: i64) -> TowerElement {
    TowerField::quadratic(&q(n)).expect("nonsquare").1
}

impl TraceTriple {
    pub fn of(case: Case) -> TraceTriple {
        let (tr_a, tr_b, tr_ab) = match case {
            Case::I => {
                let s5 = sqrt_q(5);
                (s5.clone(), s5.scale_int(2), TowerElement::int(5))
            }
            Case::II => {
                let (f2, s2) = TowerField::quadratic(&q(2)).unwrap();
                let (f, s3) = f2.adjoin_sqrt(&TowerElement::int(3)).unwrap();
                let s2 = s2.embed_into(&f).unwrap();
                let s6 = s2.try_mul(&s3).unwrap();
                (s6, s3.scale_int(2), s2.scale_int(3))
            }
            Case::III => {
                let s2 = sqrt_q(2);
                (s2.scale_int(2), s2.scale_int(2), TowerElement::int(4))
            }
            Case::IV => (TowerElement::int(3), TowerElement::int(3), TowerElement::int(3)),
        };
        TraceTriple { case, tr_a, tr_b, tr_ab }
    }
}

/// A letter of a word in α, β and their inverses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    A,
    B,
    AInv,
    BInv,
}

impl Letter {
    pub const ALL: [Letter; 4] = [Letter::A, Letter::B, Letter::AInv, Letter::BInv];

    pub fn inverse(self) -> Letter {
        match self {
            Letter::A => Letter::AInv,
            Letter::AInv => Letter::A,
            Letter::B => Letter::BInv,
            Letter::BInv => Letter::B,
        }
    }
}

pub type Word = Vec<Letter>;

pub fn word_string(w: &[Letter]) -> String {
    if w.is_empty() {
        return "1".into();
    }
    w.iter()
        .map(|l| match l {
            Letter::A => "α",
            Letter::B => "β",
            Letter::AInv => "α⁻¹",
            Letter::BInv => "β⁻¹",
        })
        .collect()
}

/// α, β and the data describing Γ′ for one case.
#[derive(Clone, Debug)]
pub struct GroupData {
    pub case: Case,
    pub field: TowerField,
    pub lambda: TowerElement,
    pub alpha: Mat2<TowerElement>,
    pub beta: Mat2<TowerElement>,
    /// Words added to Γ^(2) to generate Γ′.
    pub gamma_prime_coset_gens: Vec<Word>,
}

/// α = diag(λ, λ⁻¹) with λ the largest root of λ² − Tr(α)λ + 1, and
/// β = [[a, b], [b, d]] with a + d = Tr β, λa + λ⁻¹d = Tr αβ, b > 0,
/// ad − b² = 1.
pub fn build_generators(t: &TraceTriple) -> Result<GroupData, FuchsianError> {
    let mut field = t.tr_a.field().compositum(t.tr_b.field())?.compositum(t.tr_ab.field())?;
    let disc = t.tr_a.embed_into(&field)?.try_mul(&t.tr_a.embed_into(&field)?)?.try_sub(&TowerElement::int(4).embed_into(&field)?)?;
    if disc.real_sign()? <= 0 {
        return Err(FuchsianError::NoRealRoot);
    }
    let (f1, root) = field.adjoin_sqrt(&disc)?;
    field = f1;
    let half = TowerElement::rational(qq(1, 2)).embed_into(&field)?;
    let emb = |x: &TowerElement, f: &TowerField| x.embed_into(f);
    let ta = emb(&t.tr_a, &field)?;
    let lambda = ta.try_add(&root)?.try_mul(&half)?;
    let lambda_inv = lambda.try_inv()?;
    let tb = emb(&t.tr_b, &field)?;
    let tab = emb(&t.tr_ab, &field)?;
    let a = tab.try_sub(&tb.try_mul(&lambda_inv)?)?.try_div(&lambda.try_sub(&lambda_inv)?)?;
    let d = tb.try_sub(&a)?;
    let b2 = a.try_mul(&d)?.try_sub(&TowerElement::one_in(&field))?;
    let (f2, mut b) = field.adjoin_sqrt(&b2)?;
    if b.real_sign()? < 0 {
        b = b.neg();
    }
    let field = f2;
    let e = |x: &TowerElement| x.embed_into(&field);
    let zero = TowerElement::zero_in(&field);
    let alpha = Mat2::new(e(&lambda)?, zero.clone(), zero, e(&lambda_inv)?);
    let beta = Mat2::new(e(&a)?, b.clone(), b, e(&d)?);
    let coset = match t.case {
        Case::I | Case::III => vec![vec![Letter::A, Letter::B]],
        Case::II => vec![],
        Case::IV => vec![vec![Letter::A], vec![Letter::B]],
    };
    Ok(GroupData { case: t.case, field: field.clone(), lambda: e(&lambda)?, alpha, beta, gamma_prime_coset_gens: coset })
}

impl GroupData {
    pub fn for_case(case: Case) -> GroupData {
        build_generators(&TraceTriple::of(case)).expect("trace triples of the four cases are valid")
    }

    pub fn letter(&self, l: Letter) -> Mat2<TowerElement> {
        match l {
            Letter::A => self.alpha.clone(),
            Letter::B => self.beta.clone(),
            Letter::AInv => self.alpha.adjugate(),
            Letter::BInv => self.beta.adjugate(),
        }
    }

    pub fn eval_word(&self, w: &[Letter]) -> Mat2<TowerElement> {
        w.iter().fold(self.identity(), |acc, &l| acc.mul(&self.letter(l)))
    }

    pub fn identity(&self) -> Mat2<TowerElement> {
        let one = TowerElement::one_in(&self.field);
        let zero = TowerElement::zero_in(&self.field);
        Mat2::new(one.clone(), zero.clone(), zero, one)
    }

    pub fn commutator(&self) -> Mat2<TowerElement> {
        commutator(&self.alpha, &self.beta)
    }
}

/// All freely reduced words of length ≤ `max_len`, in shortlex order.
pub fn word_ball(max_len: usize) -> Vec<Word> {
    let mut out = vec![vec![]];
    let mut frontier: Vec<Word> = vec![vec![]];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &frontier {
            for l in Letter::ALL {
                if w.last() == Some(&l.inverse()) {
                    continue;
                }
                let mut nw = w.clone();
                nw.push(l);
                next.push(nw);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

pub const DEFAULT_WORD_LENGTH: usize = 4;

/// Generators of Γ′: squares of the word ball (generating Γ^(2)) followed
/// by the coset generators of the case.
#[derive(Clone, Debug)]
pub struct GammaPrimeGens {
    pub squares: Vec<(Word, Mat2<TowerElement>)>,
    pub coset: Vec<(Word, Mat2<TowerElement>)>,
}

impl GammaPrimeGens {
    pub fn all(&self) -> impl Iterator<Item = &Mat2<TowerElement>> {
        self.squares.iter().chain(&self.coset).map(|(_, m)| m)
    }
}

pub fn gamma_prime(g: &GroupData, max_len: usize) -> GammaPrimeGens {
    let squares = word_ball(max_len)
        .into_iter()
        .map(|w| {
            let m = g.eval_word(&w);
            let sq = m.mul(&m);
            (w, sq)
        })
        .collect();
    let coset = g.gamma_prime_coset_gens.iter().map(|w| (w.clone(), g.eval_word(w))).collect();
    GammaPrimeGens { squares, coset }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn word_ball_sizes() {
        assert_eq!(word_ball(0).len(), 1);
        assert_eq!(word_ball(2).len(), 1 + 4 + 12);
        assert_eq!(word_ball(4).len(), 1 + 4 + 12 + 36 + 108);
    }

    #[test]
    fn commutator_of_commuting() {
        let g = GroupData::for_case(Case::I);
        assert_eq!(commutator(&g.alpha, &g.alpha), g.identity());
    }

    #[test]
    fn rational_matrix_inverse() {
        let m = QMat2::from_ints(2, 1, 1, 1);
        assert_eq!(m.mul(&m.inv().unwrap()), QMat2::identity());
        assert_eq!(m.pow(-2).unwrap().mul(&m.pow(2).unwrap()), QMat2::identity());
    }
}
