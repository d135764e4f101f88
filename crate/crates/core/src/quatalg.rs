//! The quaternion algebra spanned by S = {1, α², β², α²β²}, orders as
//! multiplicatively closed lattices, the splitting B ≅ M₂(Q) and the
//! conjugation of orders into M₂(Z).

use crate::exact::linalg::{self, smith_invariants, Lattice, QMatrix};
use crate::exact::rational::{q, Rational};
use crate::exact::tower::TowerElement;
use crate::exact::ExactError;
use crate::fuchsian::{gamma_prime, GroupData, Mat2, QMat2, DEFAULT_WORD_LENGTH};
use crate::Case;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum QuatError {
    #[error("product leaves the rational span of the basis")]
    NotRational,
    #[error("basis is linearly dependent over Q")]
    DependentBasis,
    #[error("order closure did not stabilize after {0} rounds")]
    NonConvergence(usize),
    #[error("seed element is not nilpotent")]
    NotNilpotent,
    #[error("left ideal has dimension {0}, expected 2")]
    IdealWrongDimension(usize),
    #[error("split map is not an algebra homomorphism")]
    NotHomomorphism,
    #[error("no stable lattice found")]
    NoStableLattice,
    #[error("order is not contained in M₂(Z)")]
    NotIntegral,
    #[error("index {0} exceeds the enumeration bound {1}")]
    IndexBoundExceeded(BigInt, u64),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

pub type Vec4 = Vec<Rational>;

/// A 4-dimensional associative Q-algebra given by structure constants:
/// e_i e_j = Σ_k sc[i][j][k] e_k.
#[derive(Clone, Debug, PartialEq)]
pub struct Algebra {
    pub sc: Vec<Vec<Vec4>>,
    pub one: Vec4,
}

fn unit_vec(i: usize) -> Vec4 {
    (0..4).map(|k| if k == i { q(1) } else { q(0) }).collect()
}

impl Algebra {
    /// M₂(Q) in the row-major basis e11, e12, e21, e22.
    pub fn matrix_algebra() -> Algebra {
        let e = |i: usize| QMat2::from_entries(&unit_vec(i));
        let sc = (0..4).map(|i| (0..4).map(|j| e(i).mul(&e(j)).entries().to_vec()).collect()).collect();
        Algebra { sc, one: vec![q(1), q(0), q(0), q(1)] }
    }

    pub fn mul(&self, u: &[Rational], v: &[Rational]) -> Vec4 {
        let mut out = vec![Rational::zero(); 4];
        for (i, ui) in u.iter().enumerate() {
            if ui.is_zero() {
                continue;
            }
            for (j, vj) in v.iter().enumerate() {
                if vj.is_zero() {
                    continue;
                }
                let uv = ui * vj;
                for (o, s) in out.iter_mut().zip(&self.sc[i][j]) {
                    *o += &uv * s;
                }
            }
        }
        out
    }

    /// Matrix of left multiplication by u (columns are u·e_j).
    pub fn left_mult(&self, u: &[Rational]) -> QMatrix {
        let cols: Vec<Vec4> = (0..4).map(|j| self.mul(u, &unit_vec(j))).collect();
        linalg::transpose(&cols)
    }

    /// Reduced trace: half the trace of left multiplication.
    pub fn reduced_trace(&self, u: &[Rational]) -> Rational {
        let m = self.left_mult(u);
        (0..4).fold(Rational::zero(), |acc, i| acc + &m[i][i]) / q(2)
    }

    /// Reduced norm x·x̄ with x̄ = trd(x) − x, read off as a multiple of 1.
    pub fn reduced_norm(&self, u: &[Rational]) -> Rational {
        let t = self.reduced_trace(u);
        let bar: Vec4 = self.one.iter().zip(u).map(|(o, x)| o * &t - x).collect();
        let p = self.mul(u, &bar);
        let k = self.one.iter().position(|c| !c.is_zero()).expect("unit is nonzero");
        &p[k] / &self.one[k]
    }

    pub fn is_associative(&self) -> bool {
        (0..4).all(|i| {
            (0..4).all(|j| {
                (0..4).all(|k| {
                    let (a, b, c) = (unit_vec(i), unit_vec(j), unit_vec(k));
                    self.mul(&self.mul(&a, &b), &c) == self.mul(&a, &self.mul(&b, &c))
                })
            })
        })
    }

    pub fn unit_law_holds(&self) -> bool {
        (0..4).all(|i| self.mul(&self.one, &unit_vec(i)) == unit_vec(i) && self.mul(&unit_vec(i), &self.one) == unit_vec(i))
    }
}

/// The algebra spanned by S inside M₂ over the tower field.
#[derive(Clone, Debug)]
pub struct AlgebraRep {
    pub basis: Vec<Mat2<TowerElement>>,
    pub algebra: Algebra,
}

fn expand(m: &Mat2<TowerElement>, field: &crate::exact::TowerField) -> Result<Vec<Rational>, ExactError> {
    let mut out = Vec::new();
    for e in m.entries() {
        out.extend(e.embed_into(field)?.coords().iter().cloned());
    }
    Ok(out)
}

fn rational_coords(basis: &[Mat2<TowerElement>], x: &Mat2<TowerElement>) -> Result<Option<Vec4>, ExactError> {
    let field = basis[0].a.field().clone();
    let cols: Vec<Vec<Rational>> = basis.iter().map(|b| expand(b, &field)).collect::<Result<_, _>>()?;
    let a = linalg::transpose(&cols);
    Ok(linalg::solve(&a, &expand(x, &field)?))
}

/// Structure constants of span_Q(S), S = {1, α², β², α²β²}.
pub fn algebra_from_group(g: &GroupData) -> Result<AlgebraRep, QuatError> {
    let a2 = g.alpha.mul(&g.alpha);
    let b2 = g.beta.mul(&g.beta);
    let basis = vec![g.identity(), a2.clone(), b2.clone(), a2.mul(&b2)];
    let field = g.field.clone();
    let cols: Vec<Vec<Rational>> = basis.iter().map(|b| expand(b, &field)).collect::<Result<_, _>>()?;
    if linalg::rank(&linalg::transpose(&cols)) != 4 {
        return Err(QuatError::DependentBasis);
    }
    let mut sc = Vec::new();
    for bi in &basis {
        let mut row = Vec::new();
        for bj in &basis {
            row.push(rational_coords(&basis, &bi.mul(bj))?.ok_or(QuatError::NotRational)?);
        }
        sc.push(row);
    }
    Ok(AlgebraRep { basis, algebra: Algebra { sc, one: unit_vec(0) } })
}

/// Rational coordinates of x with respect to S, if x lies in the span.
pub fn span_membership(x: &Mat2<TowerElement>, rep: &AlgebraRep) -> Option<Vec4> {
    rational_coords(&rep.basis, x).ok().flatten()
}

/// A full-rank lattice containing 1 and closed under multiplication.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Order {
    pub lattice: Lattice,
}

pub const CLOSURE_ROUNDS: usize = 16;

/// Smallest multiplicatively closed lattice containing the seed and 1.
pub fn order_closure(alg: &Algebra, seed: &[Vec4]) -> Result<Order, QuatError> {
    let mut gens: Vec<Vec4> = seed.to_vec();
    gens.push(alg.one.clone());
    let mut rank = linalg::rank(&gens);
    while rank < 4 {
        let mut next = gens.clone();
        for u in &gens {
            for v in &gens {
                next.push(alg.mul(u, v));
            }
        }
        let r = linalg::rank(&next);
        if r == rank {
            return Err(ExactError::NotFullRank.into());
        }
        (gens, rank) = (next, r);
    }
    let mut lat = Lattice::from_generators(&gens, 4)?;
    for _ in 0..CLOSURE_ROUNDS {
        let b = lat.basis();
        let mut all: Vec<Vec4> = b.to_vec();
        for u in b {
            for v in b {
                all.push(alg.mul(u, v));
            }
        }
        let next = Lattice::from_generators(&all, 4)?;
        if next == lat {
            return Ok(Order { lattice: lat });
        }
        lat = next;
    }
    Err(QuatError::NonConvergence(CLOSURE_ROUNDS))
}

impl Order {
    pub fn from_lattice(lattice: Lattice) -> Order {
        Order { lattice }
    }

    /// Lattice spanned by integral or rational matrices (not checked for closure).
    pub fn from_matrices(ms: &[QMat2]) -> Result<Order, QuatError> {
        let gens: Vec<Vec4> = ms.iter().map(|m| m.entries().to_vec()).collect();
        Ok(Order { lattice: Lattice::from_generators(&gens, 4)? })
    }

    pub fn basis(&self) -> &[Vec4] {
        self.lattice.basis()
    }

    /// Basis read as 2×2 matrices (meaningful in M₂(Q) coordinates).
    pub fn basis_matrices(&self) -> Vec<QMat2> {
        self.basis().iter().map(|v| QMat2::from_entries(v)).collect()
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.lattice.contains(v)
    }

    pub fn is_closed(&self, alg: &Algebra) -> bool {
        self.contains(&alg.one) && self.basis().iter().all(|u| self.basis().iter().all(|v| self.contains(&alg.mul(u, v))))
    }

    pub fn is_integral_matrix_order(&self) -> bool {
        self.basis().iter().flatten().all(|c| c.is_integer())
    }

    /// g⁻¹ O g for an order in M₂(Q).
    pub fn conjugate(&self, g: &QMat2) -> Result<Order, QuatError> {
        let gi = g.inv().ok_or(ExactError::DivisionByZero)?;
        let ms: Vec<QMat2> = self.basis_matrices().iter().map(|m| gi.mul(m).mul(g)).collect();
        Order::from_matrices(&ms)
    }
}

/// Membership of a matrix in an order of M₂(Q).
pub fn membership(x: &QMat2, o: &Order) -> bool {
    o.contains(&x.entries())
}

/// [M₂(Z) : O] for O ⊆ M₂(Z).
pub fn order_index(o: &Order) -> Result<BigInt, QuatError> {
    if !o.is_integral_matrix_order() {
        return Err(QuatError::NotIntegral);
    }
    Ok(o.lattice.covolume().to_integer())
}

pub fn order_intersection(a: &Order, b: &Order) -> Order {
    Order { lattice: a.lattice.intersection(&b.lattice) }
}

/// Invariant factors of M₂(Z)/O.
pub fn quotient_invariants(o: &Order) -> Result<Vec<BigInt>, QuatError> {
    if !o.is_integral_matrix_order() {
        return Err(QuatError::NotIntegral);
    }
    let rows: Vec<Vec<BigInt>> = o.basis().iter().map(|v| v.iter().map(|c| c.to_integer()).collect()).collect();
    Ok(smith_invariants(&rows))
}

/// Explicit isomorphism span(S) → M₂(Q) given by images of the basis.
#[derive(Clone, Debug, PartialEq)]
pub struct SplitMap {
    pub images: Vec<QMat2>,
}

impl SplitMap {
    pub fn apply(&self, v: &[Rational]) -> QMat2 {
        self.images.iter().zip(v).fold(QMat2::zero(), |acc, (m, c)| acc.add(&m.scale(c)))
    }

    pub fn is_homomorphism(&self, alg: &Algebra) -> bool {
        (0..4).all(|i| {
            (0..4).all(|j| self.apply(&alg.mul(&unit_vec(i), &unit_vec(j))) == self.images[i].mul(&self.images[j]))
        }) && self.apply(&alg.one) == QMat2::identity()
    }

    /// The image of an order as an order of M₂(Q).
    pub fn image_order(&self, o: &Order) -> Result<Order, QuatError> {
        let ms: Vec<QMat2> = o.basis().iter().map(|v| self.apply(v)).collect();
        Order::from_matrices(&ms)
    }
}

/// Split through the left ideal A·n of a nonzero nilpotent n.
pub fn split(alg: &Algebra, n: &[Rational]) -> Result<SplitMap, QuatError> {
    if n.iter().all(|c| c.is_zero()) || alg.mul(n, n).iter().any(|c| !c.is_zero()) {
        return Err(QuatError::NotNilpotent);
    }
    let ideal: QMatrix = (0..4).map(|i| alg.mul(&unit_vec(i), n)).collect();
    let (r, piv) = linalg::rref(&ideal);
    if piv.len() != 2 {
        return Err(QuatError::IdealWrongDimension(piv.len()));
    }
    let basis: Vec<Vec4> = r[..2].to_vec();
    let bt = linalg::transpose(&basis); // 4×2
    let mut images = Vec::new();
    for i in 0..4 {
        let mut cols = Vec::new();
        for bj in &basis {
            let img = alg.mul(&unit_vec(i), bj);
            let c = linalg::solve(&bt, &img).ok_or(QuatError::IdealWrongDimension(2))?;
            cols.push(c);
        }
        images.push(QMat2::new(cols[0][0].clone(), cols[1][0].clone(), cols[0][1].clone(), cols[1][1].clone()));
    }
    let s = SplitMap { images };
    if !s.is_homomorphism(alg) {
        return Err(QuatError::NotHomomorphism);
    }
    Ok(s)
}

/// Conjugate an order of M₂(Q) into M₂(Z) through the stable lattice
/// O·(1, 0)ᵀ. Returns (P, P⁻¹OP).
pub fn integralize(o: &Order) -> Result<(QMat2, Order), QuatError> {
    let vs: Vec<Vec<Rational>> = o.basis_matrices().iter().map(|m| vec![m.a.clone(), m.c.clone()]).collect();
    let l = Lattice::from_generators(&vs, 2).map_err(|_| QuatError::NoStableLattice)?;
    let b = l.basis();
    let p = QMat2::new(b[0][0].clone(), b[1][0].clone(), b[0][1].clone(), b[1][1].clone());
    let c = o.conjugate(&p)?;
    if !c.is_integral_matrix_order() {
        return Err(QuatError::NoStableLattice);
    }
    Ok((p, c))
}

/// Verdict of the Eichler test with the witnessing lattice pair.
#[derive(Clone, Debug, PartialEq)]
pub struct EichlerVerdict {
    pub is_eichler: bool,
    pub stable_lattices: usize,
    pub witness: Option<(QMat2, QMat2)>,
}

pub const EICHLER_INDEX_BOUND: u64 = 100;

fn end_order(p: &QMat2) -> Order {
    let pi = p.inv().expect("basis matrix");
    let ms: Vec<QMat2> = (0..4).map(|i| p.mul(&QMat2::from_entries(&unit_vec(i))).mul(&pi)).collect();
    Order::from_matrices(&ms).expect("full rank")
}

/// O-stable primitive lattices L with N·Z² ⊆ L ⊆ Z², N the exponent of
/// M₂(Z)/O, as basis matrices with columns (a, b), (0, c).
pub fn stable_lattices(o: &Order) -> Result<Vec<QMat2>, QuatError> {
    let inv = quotient_invariants(o)?;
    let n = inv.iter().fold(BigInt::one(), |acc, d| acc.lcm(d));
    let n = n.to_string().parse::<i64>().map_err(|_| QuatError::IndexBoundExceeded(n.clone(), EICHLER_INDEX_BOUND))?;
    let ms = o.basis_matrices();
    let divisors: Vec<i64> = (1..=n).filter(|d| n % d == 0).collect();
    let mut out = Vec::new();
    for &a in &divisors {
        for &c in &divisors {
            for b in 0..c {
                if (n / a * b) % c != 0 || a.gcd(&b).gcd(&c) != 1 {
                    continue;
                }
                let p = QMat2::from_ints(a, 0, b, c);
                let lat = Lattice::from_generators(&[vec![q(a), q(b)], vec![q(0), q(c)]], 2)?;
                let stable = ms.iter().all(|m| {
                    lat.contains(&m.apply(&[q(a), q(b)])) && lat.contains(&m.apply(&[q(0), q(c)]))
                });
                if stable {
                    out.push(p);
                }
            }
        }
    }
    Ok(out)
}

/// O is Eichler iff it equals End(L₁) ∩ End(L₂) for two O-stable lattices.
pub fn is_eichler(o: &Order) -> Result<EichlerVerdict, QuatError> {
    let idx = order_index(o)?;
    if idx > BigInt::from(EICHLER_INDEX_BOUND) {
        return Err(QuatError::IndexBoundExceeded(idx, EICHLER_INDEX_BOUND));
    }
    let lats = stable_lattices(o)?;
    let ends: Vec<Order> = lats.iter().map(end_order).collect();
    for i in 0..lats.len() {
        for j in i..lats.len() {
            if order_intersection(&ends[i], &ends[j]) == *o {
                return Ok(EichlerVerdict { is_eichler: true, stable_lattices: lats.len(), witness: Some((lats[i].clone(), lats[j].clone())) });
            }
        }
    }
    Ok(EichlerVerdict { is_eichler: false, stable_lattices: lats.len(), witness: None })
}

/// Orders L ⊃ O with [L : O] = p.
pub fn prime_index_overorders(alg: &Algebra, o: &Order, p: u32) -> Vec<Order> {
    let b = o.basis();
    let pq = q(p as i64);
    let mut out: Vec<Order> = Vec::new();
    let total = (p as usize).pow(4);
    for code in 1..total {
        let c: Vec<u32> = (0..4).map(|i| (code / (p as usize).pow(i as u32)) as u32 % p).collect();
        if c.iter().find(|&&x| x != 0) != Some(&1) {
            continue;
        }
        let v: Vec4 = (0..4).map(|k| (0..4).fold(Rational::zero(), |acc, i| acc + &b[i][k] * q(c[i] as i64)) / &pq).collect();
        let mut gens = b.to_vec();
        gens.push(v);
        let lat = Lattice::from_generators(&gens, 4).expect("full rank");
        let cand = Order { lattice: lat };
        if cand.is_closed(alg) && !out.contains(&cand) {
            out.push(cand);
        }
    }
    out
}

/// All order data of one case, from the group to integral matrix orders.
#[derive(Clone, Debug)]
pub struct CaseOrders {
    pub case: Case,
    pub group: GroupData,
    pub rep: AlgebraRep,
    /// Z[Γ^(2)] in S-coordinates.
    pub gamma2: Order,
    /// Z[Γ′] in S-coordinates.
    pub gamma_prime: Order,
    /// Coordinates of the parabolic nilpotent [α, β] + 1.
    pub nilpotent: Vec4,
    pub split: SplitMap,
    /// Conjugator P with P⁻¹ Z[Γ′] P ⊆ M₂(Z).
    pub conjugator: QMat2,
    pub gamma2_integral: Order,
    pub gamma_prime_integral: Order,
}

impl CaseOrders {
    pub fn build(case: Case) -> Result<CaseOrders, QuatError> {
        Self::build_with(case, DEFAULT_WORD_LENGTH)
    }

    pub fn build_with(case: Case, word_length: usize) -> Result<CaseOrders, QuatError> {
        let group = GroupData::for_case(case);
        let rep = algebra_from_group(&group)?;
        let gens = gamma_prime(&group, word_length);
        let coords = |m: &Mat2<TowerElement>| span_membership(m, &rep).ok_or(QuatError::NotRational);
        let sq: Vec<Vec4> = gens.squares.iter().map(|(_, m)| coords(m)).collect::<Result<_, _>>()?;
        let extra: Vec<Vec4> = gens.coset.iter().map(|(_, m)| coords(m)).collect::<Result<_, _>>()?;
        let gamma2 = order_closure(&rep.algebra, &sq)?;
        let mut all = sq;
        all.extend(extra);
        let gamma_prime = order_closure(&rep.algebra, &all)?;
        let comm = coords(&group.commutator())?;
        let nilpotent: Vec4 = comm.iter().zip(&rep.algebra.one).map(|(c, o)| c + o).collect();
        let split = split(&rep.algebra, &nilpotent)?;
        let (conjugator, gamma_prime_integral) = integralize(&split.image_order(&gamma_prime)?)?;
        let gamma2_integral = split.image_order(&gamma2)?.conjugate(&conjugator)?;
        Ok(CaseOrders { case, group, rep, gamma2, gamma_prime, nilpotent, split, conjugator, gamma2_integral, gamma_prime_integral })
    }

    /// Image in M₂(Z)-coordinates of an element of span(S).
    pub fn to_integral(&self, v: &[Rational]) -> QMat2 {
        let m = self.split.apply(v);
        let pi = self.conjugator.inv().expect("invertible");
        pi.mul(&m).mul(&self.conjugator)
    }

    /// Image in M₂(Z)-coordinates of a group element lying in span(S).
    pub fn matrix_of(&self, m: &Mat2<TowerElement>) -> Option<QMat2> {
        span_membership(m, &self.rep).map(|v| self.to_integral(&v))
    }
}

/// Sign-insensitive equality helper for integer matrices.
pub fn abs_entries(m: &QMat2) -> [Rational; 4] {
    let e = m.entries();
    [e[0].abs(), e[1].abs(), e[2].abs(), e[3].abs()]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(a: i64, b: i64, c: i64, d: i64) -> QMat2 {
        QMat2::from_ints(a, b, c, d)
    }

    #[test]
    fn matrix_algebra_closure_is_immediate() {
        let alg = Algebra::matrix_algebra();
        let seed: Vec<Vec4> = (0..4).map(unit_vec).collect();
        let o = order_closure(&alg, &seed).unwrap();
        assert_eq!(order_index(&o).unwrap(), BigInt::from(1));
        assert!(alg.is_associative() && alg.unit_law_holds());
    }

    #[test]
    fn index_five_order() {
        let o5 = Order::from_matrices(&[m(1, 0, 0, 0), m(0, 1, 0, 0), m(0, 0, 5, 0), m(0, 0, 0, 1)]).unwrap();
        assert_eq!(order_index(&o5).unwrap(), BigInt::from(5));
        assert!(membership(&m(1, 1, 0, 1), &o5));
        assert!(!membership(&m(1, 0, 1, 1), &o5));
        let v = is_eichler(&o5).unwrap();
        assert!(v.is_eichler);
    }

    #[test]
    fn reduced_norm_matches_determinant() {
        let alg = Algebra::matrix_algebra();
        let x = vec![q(2), q(3), q(5), q(7)];
        assert_eq!(alg.reduced_norm(&x), q(-1));
        assert_eq!(alg.reduced_trace(&x), q(9));
    }

    #[test]
    fn split_matrix_algebra() {
        let alg = Algebra::matrix_algebra();
        let s = split(&alg, &[q(0), q(1), q(0), q(0)]).unwrap();
        assert_eq!(s.apply(&alg.one), QMat2::identity());
        assert!(matches!(split(&alg, &alg.one), Err(QuatError::NotNilpotent)));
    }
}
