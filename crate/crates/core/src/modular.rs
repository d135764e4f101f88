//! The explicit orders of M₂(Z) attached to each case, their intersections,
//! congruence levels, normalizing involutions and the case IV character.

use crate::cosets::{enumerate_cosets, mul_mod, reduce, s_matrix, t_matrix, CosetError, ModNGroup};
use crate::exact::rational::{q, Rational};
use crate::fuchsian::QMat2;
use crate::quatalg::{is_eichler, membership, order_closure, order_index, order_intersection, prime_index_overorders, quotient_invariants, Algebra, CaseOrders, Order, QuatError};
use crate::Case;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ModularError {
    #[error("printed basis of {0} is not closed under multiplication")]
    NotAnOrder(&'static str),
    #[error("level {0} is too large")]
    LevelTooLarge(BigInt),
    #[error(transparent)]
    Quat(#[from] QuatError),
    #[error(transparent)]
    Coset(#[from] CosetError),
}

fn m(a: i64, b: i64, c: i64, d: i64) -> QMat2 {
    QMat2::from_ints(a, b, c, d)
}

/// An order given by four printed basis matrices.
#[derive(Clone, Debug)]
pub struct PrintedOrder {
    pub name: &'static str,
    pub basis: [[i64; 4]; 4],
}

impl PrintedOrder {
    pub fn matrices(&self) -> Vec<QMat2> {
        self.basis.iter().map(|e| m(e[0], e[1], e[2], e[3])).collect()
    }

    /// The lattice, checked to be an order.
    pub fn order(&self) -> Result<Order, ModularError> {
        let o = Order::from_matrices(&self.matrices())?;
        if !o.is_closed(&Algebra::matrix_algebra()) {
            return Err(ModularError::NotAnOrder(self.name));
        }
        Ok(o)
    }
}

pub const O4: PrintedOrder = PrintedOrder { name: "O4", basis: [[1, 0, 0, 1], [1, 0, 0, -1], [0, 1, 1, 1], [0, 1, -1, 1]] };
pub const O5: PrintedOrder = PrintedOrder { name: "O5", basis: [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 5, 0], [0, 0, 0, 1]] };
pub const O8: PrintedOrder = PrintedOrder { name: "O8", basis: [[1, 0, 0, 1], [1, 0, 0, -1], [0, 0, 2, 0], [0, 2, 1, 0]] };
pub const O3: PrintedOrder = PrintedOrder { name: "O3", basis: [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 3, 0], [0, 0, 0, 1]] };
pub const O32: PrintedOrder = PrintedOrder { name: "O32", basis: [[1, 0, 0, 1], [0, 2, -2, 0], [2, -1, 1, -2], [0, 1, 3, 0]] };
pub const O9: PrintedOrder = PrintedOrder { name: "O9", basis: [[1, 0, 0, 1], [0, 1, 0, 1], [1, 1, 0, -1], [0, 0, 3, 0]] };

/// The printed orders whose intersection is 𝒪″.
pub fn printed_orders(case: Case) -> Vec<PrintedOrder> {
    match case {
        Case::I => vec![O4, O5],
        Case::II => vec![O8, O3],
        Case::III => vec![O32],
        Case::IV => vec![O4, O9],
    }
}

/// 𝒪″ as the intersection of the printed orders.
pub fn double_prime_order(case: Case) -> Result<Order, ModularError> {
    let mut it = printed_orders(case).into_iter();
    let mut o = it.next().expect("nonempty").order()?;
    for p in it {
        o = order_intersection(&o, &p.order()?);
    }
    Ok(o)
}

/// A named integral matrix with its printed determinant.
#[derive(Clone, Debug)]
pub struct PrintedInvolution {
    pub name: &'static str,
    pub matrix: QMat2,
    pub det: i64,
}

pub fn printed_involutions(case: Case) -> Vec<PrintedInvolution> {
    let w = |name, matrix, det| PrintedInvolution { name, matrix, det };
    match case {
        Case::I => vec![w("w5", m(0, -1, 5, 0), 5)],
        Case::II => vec![w("w2", m(-2, -2, 3, 2), 2), w("w3", m(-3, -4, 3, 3), 3), w("w6", m(0, 2, -3, 0), 6)],
        Case::III => vec![w("w2", m(-1, -3, 1, 1), 2)],
        Case::IV => vec![],
    }
}

pub fn printed_level(case: Case) -> u64 {
    match case {
        Case::I => 10,
        Case::II => 12,
        Case::III => 8,
        Case::IV => 6,
    }
}

fn contains_order(big: &Order, small: &Order) -> bool {
    small.basis().iter().all(|v| big.contains(v))
}

pub const CONJUGATOR_BOUND: i64 = 4;

/// Primitive integral g with positive determinant and |entries| ≤ bound such
/// that g⁻¹ a g ⊆ b (or = b), searched in a fixed order.
pub fn find_conjugator(a: &Order, b: &Order, equal: bool, bound: i64) -> Option<QMat2> {
    let r = -bound..=bound;
    for x in r.clone() {
        for y in r.clone() {
            for z in r.clone() {
                for w in r.clone() {
                    if x * w - y * z <= 0 || x.gcd(&y).gcd(&z).gcd(&w) != 1 {
                        continue;
                    }
                    let g = m(x, y, z, w);
                    let Ok(c) = a.conjugate(&g) else { continue };
                    let ok = if equal { c == *b } else { contains_order(b, &c) };
                    if ok {
                        return Some(g);
                    }
                }
            }
        }
    }
    None
}

/// How the pipeline order relates to the printed 𝒪″.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    /// Conjugate to 𝒪″.
    Equal,
    /// Conjugate into 𝒪″, with unit groups of the same index in SL₂(Z).
    ContainedEqualUnits,
}

#[derive(Clone, Debug)]
pub struct IntersectionVerdict {
    pub case: Case,
    /// Indices of the printed orders.
    pub factor_indices: Vec<BigInt>,
    pub printed_index: BigInt,
    pub pipeline_index: BigInt,
    pub relation: Relation,
    pub conjugator: Option<QMat2>,
    /// Index of the unit groups in PSL₂(Z): pipeline, printed.
    pub unit_indices: (usize, usize),
    pub pass: bool,
}

/// Index-3 overorders of Z[Γ^(2)] in case IV containing none of γ₁, γ₂, γ₁γ₂.
pub fn case4_enlargements(orders: &CaseOrders) -> Vec<Order> {
    let [g1, g2] = gammas_4_2();
    let g12 = g1.mul(&g2);
    prime_index_overorders(&Algebra::matrix_algebra(), &orders.gamma2_integral, 3)
        .into_iter()
        .filter(|o| ![&g1, &g2, &g12].iter().any(|g| membership(g, o)))
        .collect()
}

/// The integral order from the pipeline compared with 𝒪″.
pub fn pipeline_order(orders: &CaseOrders) -> Result<Order, ModularError> {
    match orders.case {
        Case::IV => {
            let target = double_prime_order(Case::IV)?;
            let cands = case4_enlargements(orders);
            Ok(cands.iter().find(|o| find_conjugator(o, &target, true, CONJUGATOR_BOUND).is_some()).or(cands.first()).cloned().unwrap_or_else(|| orders.gamma2_integral.clone()))
        }
        _ => Ok(orders.gamma_prime_integral.clone()),
    }
}

pub fn verify_intersection(orders: &CaseOrders) -> Result<IntersectionVerdict, ModularError> {
    let case = orders.case;
    let factor_indices = printed_orders(case).iter().map(|p| p.order().and_then(|o| Ok(order_index(&o)?))).collect::<Result<Vec<_>, _>>()?;
    let printed = double_prime_order(case)?;
    let printed_index = order_index(&printed)?;
    let pipe = pipeline_order(orders)?;
    let pipeline_index = order_index(&pipe)?;
    let printed_units = enumerate_cosets(&printed)?.len();
    let (relation, conjugator) = match find_conjugator(&pipe, &printed, true, CONJUGATOR_BOUND) {
        Some(g) => (Relation::Equal, Some(g)),
        None => (Relation::ContainedEqualUnits, find_conjugator(&pipe, &printed, false, CONJUGATOR_BOUND)),
    };
    let pipeline_units = match &conjugator {
        Some(g) => enumerate_cosets(&pipe.conjugate(g)?)?.len(),
        None => enumerate_cosets(&pipe)?.len(),
    };
    let product: BigInt = factor_indices.iter().product();
    let pass = conjugator.is_some() && pipeline_units == printed_units && product == printed_index;
    Ok(IntersectionVerdict { case, factor_indices, printed_index, pipeline_index, relation, conjugator, unit_indices: (pipeline_units, printed_units), pass })
}

/// The level N with, for each prime p | N, an element of Γ(N/p) outside O.
#[derive(Clone, Debug)]
pub struct LevelData {
    pub level: u64,
    pub invariants: Vec<BigInt>,
    pub witnesses: Vec<(u64, QMat2)>,
}

impl LevelData {
    pub fn minimal(&self) -> bool {
        prime_divisors(self.level).len() == self.witnesses.len()
    }
}

fn prime_divisors(n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut r = n;
    let mut p = 2;
    while r > 1 {
        if r.is_multiple_of(p) {
            out.push(p);
            while r.is_multiple_of(p) {
                r /= p;
            }
        }
        p += 1;
    }
    out
}

pub const WITNESS_BOUND: i64 = 2;

/// An element 1 + M·X of Γ(M) outside O, |entries of X| ≤ WITNESS_BOUND.
pub fn gamma_witness(o: &Order, modulus: u64) -> Option<QMat2> {
    let mm = modulus as i64;
    let r = -WITNESS_BOUND..=WITNESS_BOUND;
    let mut cands = vec![m(1, mm, 0, 1), m(1, 0, mm, 1), m(1 + mm, mm, -mm, 1 - mm)];
    for x in r.clone() {
        for y in r.clone() {
            for z in r.clone() {
                for w in r.clone() {
                    cands.push(m(1 + mm * x, mm * y, mm * z, 1 + mm * w));
                }
            }
        }
    }
    cands.into_iter().find(|g| g.det() == q(1) && !membership(g, o))
}

/// Exponent of M₂(Z)/O, shown minimal by witnesses.
pub fn level(o: &Order) -> Result<LevelData, ModularError> {
    let invariants = quotient_invariants(o)?;
    let n = invariants.iter().fold(BigInt::one(), |acc, d| acc.lcm(d));
    let level = n.to_u64().ok_or_else(|| ModularError::LevelTooLarge(n.clone()))?;
    let witnesses = prime_divisors(level).into_iter().filter_map(|p| gamma_witness(o, level / p).map(|g| (p, g))).collect();
    Ok(LevelData { level, invariants, witnesses })
}

#[derive(Clone, Debug)]
pub struct InvolutionRecord {
    pub det: Rational,
    /// s with w² = s·1, if w² is scalar.
    pub scalar_square: Option<Rational>,
    pub normalizes: bool,
}

pub fn involution_check(w: &QMat2, o: &Order) -> Result<InvolutionRecord, ModularError> {
    let det = w.det();
    let sq = w.mul(w);
    let scalar_square = if sq.is_scalar() { Some(sq.a.clone()) } else { None };
    let wi = w.inv().ok_or(QuatError::NotIntegral)?;
    // w O w⁻¹ = O in both directions
    let fwd = o.basis_matrices().iter().all(|b| membership(&w.mul(b).mul(&wi), o));
    let back = o.basis_matrices().iter().all(|b| membership(&wi.mul(b).mul(w), o));
    Ok(InvolutionRecord { det, scalar_square, normalizes: fwd && back })
}

/// Case II: w₂, w₃ commute only modulo 𝒪″¹.
#[derive(Clone, Debug)]
pub struct PairwiseRecord {
    pub commute: bool,
    /// w₂w₃(w₃w₂)⁻¹.
    pub commutator: QMat2,
    pub commutator_in_units: bool,
    /// w₂w₃w₆⁻¹.
    pub product: QMat2,
    pub product_in_order: bool,
}

fn in_units(g: &QMat2, o: &Order) -> bool {
    g.det() == q(1) && membership(g, o)
}

pub fn case2_pairwise() -> Result<PairwiseRecord, ModularError> {
    let ws = printed_involutions(Case::II);
    let (w2, w3, w6) = (&ws[0].matrix, &ws[1].matrix, &ws[2].matrix);
    let o = double_prime_order(Case::II)?;
    let inv = |g: &QMat2| g.inv().ok_or(QuatError::NotIntegral);
    let commutator = w2.mul(w3).mul(&inv(&w3.mul(w2))?);
    let product = w2.mul(w3).mul(&inv(w6)?);
    Ok(PairwiseRecord {
        commute: w2.mul(w3) == w3.mul(w2),
        commutator_in_units: in_units(&commutator, &o),
        commutator,
        product_in_order: in_units(&product, &o),
        product,
    })
}

/// γ₁, γ₂ in the first printed version.
pub fn gammas_4_2() -> [QMat2; 2] {
    [m(1, 1, 1, 2), m(1, -1, -1, 2)]
}

/// γ₁, γ₂ in the second printed version.
pub fn gammas_5_6() -> [QMat2; 2] {
    [m(1, 1, 2, 1), m(1, -1, -2, 1)]
}

#[derive(Clone, Debug)]
pub struct GammaVersion {
    pub label: &'static str,
    pub gammas: [QMat2; 2],
    pub dets: [Rational; 2],
    /// Whether γ₁, γ₂, γ₁γ₂ lie in 𝒪″.
    pub in_order: [bool; 3],
    /// Order of ⟨𝒪″¹ mod 6, γ₁, γ₂⟩, when both γ lie in SL₂(Z).
    pub subgroup_order: Option<usize>,
    pub normal: bool,
    /// Order of SL₂(Z/6)/H when it is cyclic.
    pub cyclic_quotient: Option<usize>,
}

/// ⟨γ⟩ adjoined to Z[Γ^(2)], and which of γ₁, γ₂, γ₁γ₂ it contains.
#[derive(Clone, Debug)]
pub struct AdjoinedOrder {
    pub label: &'static str,
    pub index: BigInt,
    pub contains: [bool; 3],
}

#[derive(Clone, Debug)]
pub struct Case4Verdict {
    pub versions: Vec<GammaVersion>,
    pub adjoined: Vec<AdjoinedOrder>,
    /// Index-3 overorders of Z[Γ^(2)] and how many avoid all three commutators.
    pub overorders: usize,
    pub avoiding: usize,
    /// Image of Γ itself mod 6 from the pipeline generators.
    pub pipeline_image_order: usize,
    pub pipeline_image_matches: bool,
}

impl Case4Verdict {
    pub fn pass(&self) -> bool {
        let v = &self.versions[0];
        v.subgroup_order == Some(24) && v.normal && v.cyclic_quotient == Some(6) && v.in_order == [false; 3] && self.pipeline_image_matches && self.adjoined.iter().all(|a| a.index == BigInt::from(36) && a.contains.iter().filter(|&&b| b).count() == 1)
    }
}

const MOD: u64 = 6;

/// SL₂(Z/N) ∩ (O/N·M₂(Z)) as residues, for O of level dividing N.
fn unit_image(o: &Order, n: u64) -> Vec<[u64; 4]> {
    let mut out = Vec::new();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    if (a * d + n * n - b * c) % n != 1 % n {
                        continue;
                    }
                    let g = QMat2::from_ints(a as i64, b as i64, c as i64, d as i64);
                    if membership(&g, o) {
                        out.push([a, b, c, d]);
                    }
                }
            }
        }
    }
    out
}

/// Cyclic order of G/H for G = SL₂(Z/N) if the quotient is cyclic.
fn cyclic_quotient(h: &ModNGroup) -> Option<usize> {
    let n = h.n;
    let full = ModNGroup::generate(n, &[s_matrix(), t_matrix()]).ok()?;
    let target = full.order() / h.order();
    let found = full.elements().any(|g| {
        let mut x = *g;
        let mut k = 1;
        while !h.contains_reduced(&x) {
            x = mul_mod(&x, g, n);
            k += 1;
        }
        k == target
    });
    found.then_some(target)
}

fn version(label: &'static str, gammas: [QMat2; 2], o: &Order, units: &[[u64; 4]]) -> Result<GammaVersion, ModularError> {
    let g12 = gammas[0].mul(&gammas[1]);
    let in_order = [membership(&gammas[0], o), membership(&gammas[1], o), membership(&g12, o)];
    let dets = [gammas[0].det(), gammas[1].det()];
    let in_sl2 = dets.iter().all(|d| *d == q(1));
    let (subgroup_order, normal, cyclic) = if in_sl2 {
        let mut gens = units.to_vec();
        gens.extend(gammas.iter().filter_map(|g| reduce(g, MOD)));
        let h = ModNGroup::generate_residues(MOD, &gens);
        let c = if h.is_normal() { cyclic_quotient(&h) } else { None };
        (Some(h.order()), h.is_normal(), c)
    } else {
        (None, false, None)
    };
    Ok(GammaVersion { label, gammas, dets, in_order, subgroup_order, normal, cyclic_quotient: cyclic })
}

pub fn case4_commutator_check(orders: &CaseOrders) -> Result<Case4Verdict, ModularError> {
    let o = double_prime_order(Case::IV)?;
    let units = unit_image(&o, MOD);
    let versions = vec![version("first", gammas_4_2(), &o, &units)?, version("second", gammas_5_6(), &o, &units)?];
    let alg = Algebra::matrix_algebra();
    let [g1, g2] = gammas_4_2();
    let g12 = g1.mul(&g2);
    let mut adjoined = Vec::new();
    for (label, g) in [("γ1", &g1), ("γ2", &g2), ("γ1γ2", &g12)] {
        let mut seed: Vec<Vec<Rational>> = orders.gamma2_integral.basis().to_vec();
        seed.push(g.entries().to_vec());
        let a = order_closure(&alg, &seed)?;
        adjoined.push(AdjoinedOrder { label, index: order_index(&a)?, contains: [membership(&g1, &a), membership(&g2, &a), membership(&g12, &a)] });
    }
    let overorders = prime_index_overorders(&alg, &orders.gamma2_integral, 3).len();
    let avoiding = case4_enlargements(orders).len();
    let gens: Vec<QMat2> = [&orders.group.alpha, &orders.group.beta].iter().filter_map(|g| orders.matrix_of(g)).collect();
    let mut all = gens;
    all.push(QMat2::identity().neg());
    let image = ModNGroup::generate(MOD, &all)?;
    let first = &versions[0];
    let mut h_gens = units.clone();
    h_gens.extend(first.gammas.iter().filter_map(|g| reduce(g, MOD)));
    let h = ModNGroup::generate_residues(MOD, &h_gens);
    let pipeline_image_matches = image.order() == h.order() && image.elements().all(|e| h.contains_reduced(e));
    Ok(Case4Verdict { versions, adjoined, overorders, avoiding, pipeline_image_order: image.order(), pipeline_image_matches })
}

/// Whether the printed 𝒪″ is an Eichler order.
pub fn double_prime_is_eichler(case: Case) -> Result<bool, ModularError> {
    Ok(is_eichler(&double_prime_order(case)?)?.is_eichler)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_ring_has_level_one() {
        let o = Order::from_matrices(&[m(1, 0, 0, 0), m(0, 1, 0, 0), m(0, 0, 1, 0), m(0, 0, 0, 1)]).unwrap();
        let l = level(&o).unwrap();
        assert_eq!(l.level, 1);
        assert!(l.minimal());
    }

    #[test]
    fn gamma0_level() {
        let o = O5.order().unwrap();
        let l = level(&o).unwrap();
        assert_eq!(l.level, 5);
        assert!(l.minimal());
    }
}
