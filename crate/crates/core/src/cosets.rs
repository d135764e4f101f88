//! Right cosets of O¹ = O ∩ SL₂(Z) in the modular group, found by
//! breadth-first search with the additive membership test, and the
//! resulting monodromy triples.

use crate::fuchsian::QMat2;
use crate::perm::{Perm, PermError, PermTriple};
use crate::exact::rational::q;
use crate::quatalg::{membership, CaseOrders, Order};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use std::collections::HashSet;
use crate::Case;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CosetError {
    #[error("generator is not an integral matrix of determinant 1")]
    NotInSl2Z,
    #[error("no level up to {0} gives the expected index")]
    NoCongruenceImage(u64),
    #[error("more than {0} cosets")]
    IndexBoundExceeded(usize),
    #[error("order does not contain −1")]
    MissingMinusOne,
    #[error(transparent)]
    Perm(#[from] PermError),
}

pub const COSET_BOUND: usize = 1000;

pub fn s_matrix() -> QMat2 {
    QMat2::from_ints(0, -1, 1, 0)
}

pub fn t_matrix() -> QMat2 {
    QMat2::from_ints(1, 1, 0, 1)
}

/// Coset representatives (as words in S, T) and the right actions of S and T.
#[derive(Clone, Debug)]
pub struct CosetTable {
    pub words: Vec<String>,
    pub reps: Vec<QMat2>,
    pub s_action: Perm,
    pub t_action: Perm,
}

/// Index of the coset containing g, if it is already listed.
pub fn find_coset(o: &Order, reps: &[QMat2], g: &QMat2) -> Option<usize> {
    reps.iter().position(|r| membership(&g.mul(&r.adjugate()), o))
}

/// Breadth-first enumeration of O¹\SL₂(Z) (equivalently ±O¹\PSL₂(Z)).
pub fn enumerate_cosets(o: &Order) -> Result<CosetTable, CosetError> {
    if !membership(&QMat2::identity().neg(), o) {
        return Err(CosetError::MissingMinusOne);
    }
    enumerate_cosets_by(|g| membership(g, o))
}

/// Coset enumeration for any subgroup of SL₂(Z) containing −1, given by
/// a membership predicate.
pub fn enumerate_cosets_by(member: impl Fn(&QMat2) -> bool) -> Result<CosetTable, CosetError> {
    let find = |reps: &[QMat2], g: &QMat2| reps.iter().position(|r| member(&g.mul(&r.adjugate())));
    let gens = [("S", s_matrix()), ("T", t_matrix())];
    let mut reps = vec![QMat2::identity()];
    let mut words = vec![String::new()];
    let mut act: [Vec<u32>; 2] = [vec![], vec![]];
    let mut i = 0;
    while i < reps.len() {
        for (k, (name, m)) in gens.iter().enumerate() {
            let g = reps[i].mul(m);
            let j = match find(&reps, &g) {
                Some(j) => j,
                None => {
                    reps.push(g);
                    words.push(format!("{}{}", words[i], name));
                    if reps.len() > COSET_BOUND {
                        return Err(CosetError::IndexBoundExceeded(COSET_BOUND));
                    }
                    reps.len() - 1
                }
            };
            act[k].push(j as u32);
        }
        i += 1;
    }
    let [s, t] = act;
    let words = words.into_iter().map(|w| if w.is_empty() { "1".to_string() } else { w }).collect();
    Ok(CosetTable { words, reps, s_action: Perm::from_images(s)?, t_action: Perm::from_images(t)? })
}

impl CosetTable {
    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    /// Coset reached from coset `start` by right-multiplying with a word in S, T.
    pub fn follow(&self, start: usize, word: &str) -> usize {
        word.chars().fold(start, |c, l| match l {
            'S' => self.s_action.apply(c),
            'T' => self.t_action.apply(c),
            _ => c,
        })
    }
}

/// The convention used: σ₁ is the S-action, σ∞ the T-action and
/// σ₀ = (σ∞σ₁)⁻¹ is the action of (ST)⁻¹.
pub const TRIPLE_CONVENTION: &str = "σ₁ = right action of S, σ∞ = right action of T, σ₀ = (σ∞σ₁)⁻¹";

pub fn monodromy_triple(ct: &CosetTable) -> Result<PermTriple, CosetError> {
    let s1 = ct.s_action.clone();
    let sinf = ct.t_action.clone();
    let s0 = sinf.mul(&s1).inverse();
    Ok(PermTriple::new(s0, s1, sinf)?)
}

/// Index in PSL₂(Z) predicted by covolume: 6 × [Γ : Γ′].
pub fn expected_index(index_in_gamma: u32) -> u32 {
    6 * index_in_gamma
}

/// [Γ : Γ′] for the four cases.
pub fn gamma_prime_index(case: Case) -> u32 {
    match case {
        Case::I | Case::III => 2,
        Case::II => 4,
        Case::IV => 1,
    }
}

/// A subgroup of SL₂(Z/N), stored as its full element set.
#[derive(Clone, Debug)]
pub struct ModNGroup {
    pub n: u64,
    elements: HashSet<[u64; 4]>,
}

pub fn reduce(m: &QMat2, n: u64) -> Option<[u64; 4]> {
    if !m.is_integral() || m.det() != q(1) {
        return None;
    }
    let nn = BigInt::from(n);
    let e = m.entries();
    let mut out = [0u64; 4];
    for (o, x) in out.iter_mut().zip(e.iter()) {
        *o = x.numer().mod_floor(&nn).to_u64().expect("small");
    }
    Some(out)
}

pub fn mul_mod(a: &[u64; 4], b: &[u64; 4], n: u64) -> [u64; 4] {
    [
        (a[0] * b[0] + a[1] * b[2]) % n,
        (a[0] * b[1] + a[1] * b[3]) % n,
        (a[2] * b[0] + a[3] * b[2]) % n,
        (a[2] * b[1] + a[3] * b[3]) % n,
    ]
}

impl ModNGroup {
    /// Subgroup of SL₂(Z/N) generated by the reductions of integral matrices.
    pub fn generate(n: u64, gens: &[QMat2]) -> Result<ModNGroup, CosetError> {
        let gs: Vec<[u64; 4]> = gens.iter().map(|g| reduce(g, n).ok_or(CosetError::NotInSl2Z)).collect::<Result<_, _>>()?;
        Ok(Self::generate_residues(n, &gs))
    }

    /// Subgroup generated by residue matrices of determinant 1 mod N.
    pub fn generate_residues(n: u64, gs: &[[u64; 4]]) -> ModNGroup {
        let id = [1 % n, 0, 0, 1 % n];
        let mut elements = HashSet::from([id]);
        let mut queue = vec![id];
        while let Some(x) = queue.pop() {
            for g in gs {
                let y = mul_mod(&x, g, n);
                if elements.insert(y) {
                    queue.push(y);
                }
            }
        }
        ModNGroup { n, elements }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, m: &QMat2) -> bool {
        reduce(m, self.n).is_some_and(|r| self.elements.contains(&r))
    }

    pub fn contains_reduced(&self, r: &[u64; 4]) -> bool {
        self.elements.contains(r)
    }

    pub fn elements(&self) -> impl Iterator<Item = &[u64; 4]> {
        self.elements.iter()
    }

    pub fn index(&self) -> usize {
        sl2_order(self.n) / self.order()
    }

    /// Normality in SL₂(Z/N), tested against conjugation by the images of S and T.
    pub fn is_normal(&self) -> bool {
        let n = self.n;
        let s = reduce(&s_matrix(), n).expect("S");
        let t = reduce(&t_matrix(), n).expect("T");
        let s_inv = reduce(&s_matrix().adjugate(), n).expect("S⁻¹");
        let t_inv = reduce(&t_matrix().adjugate(), n).expect("T⁻¹");
        self.elements.iter().all(|x| {
            self.elements.contains(&mul_mod(&mul_mod(&s_inv, x, n), &s, n)) && self.elements.contains(&mul_mod(&mul_mod(&t_inv, x, n), &t, n))
        })
    }
}

/// |SL₂(Z/N)| = N³ ∏_{p | N} (1 − 1/p²).
pub fn sl2_order(n: u64) -> usize {
    let mut order = n * n * n;
    let mut m = n;
    let mut p = 2;
    while m > 1 {
        if m.is_multiple_of(p) {
            order = order / (p * p) * (p * p - 1);
            while m.is_multiple_of(p) {
                m /= p;
            }
        }
        p += 1;
    }
    order as usize
}

pub const LEVEL_SEARCH_BOUND: u64 = 60;

/// Smallest N whose image ⟨gens, −1⟩ mod N has the given index in SL₂(Z/N).
/// The index of ±⟨gens⟩ in SL₂(Z) is at least the index of its image, so
/// when they agree ±⟨gens⟩ is the full preimage and reduction mod N decides
/// membership.
pub fn congruence_image(gens: &[QMat2], index: usize) -> Result<ModNGroup, CosetError> {
    let mut all = gens.to_vec();
    all.push(QMat2::identity().neg());
    for n in 1..=LEVEL_SEARCH_BOUND {
        let h = ModNGroup::generate(n, &all)?;
        if h.index() == index {
            return Ok(h);
        }
    }
    Err(CosetError::NoCongruenceImage(LEVEL_SEARCH_BOUND))
}

/// Triple of the cover X(Γ) → X(1) for a case whose generators are
/// rational (case IV), where Γ has index 6 in PSL₂(Z).
pub fn full_group_triple(orders: &CaseOrders) -> Result<(ModNGroup, CosetTable, PermTriple), CosetError> {
    let g = &orders.group;
    let gens: Vec<QMat2> = [&g.alpha, &g.beta].iter().map(|m| orders.matrix_of(m).ok_or(CosetError::NotInSl2Z)).collect::<Result<_, _>>()?;
    let h = congruence_image(&gens, expected_index(1) as usize)?;
    let ct = enumerate_cosets_by(|m| h.contains(m))?;
    let t = monodromy_triple(&ct)?;
    Ok((h, ct, t))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_matrix_ring_has_one_coset() {
        let m2z = Order::from_matrices(&[QMat2::from_ints(1, 0, 0, 0), QMat2::from_ints(0, 1, 0, 0), QMat2::from_ints(0, 0, 1, 0), QMat2::from_ints(0, 0, 0, 1)]).unwrap();
        let ct = enumerate_cosets(&m2z).unwrap();
        assert_eq!(ct.len(), 1);
        let t = monodromy_triple(&ct).unwrap();
        assert!(t.s0.is_identity() && t.s1.is_identity() && t.sinf.is_identity());
    }

    #[test]
    fn gamma0_of_two() {
        let o = Order::from_matrices(&[QMat2::from_ints(1, 0, 0, 0), QMat2::from_ints(0, 1, 0, 0), QMat2::from_ints(0, 0, 2, 0), QMat2::from_ints(0, 0, 0, 1)]).unwrap();
        let t = monodromy_triple(&enumerate_cosets(&o).unwrap()).unwrap();
        assert_eq!(t.degree(), 3);
        assert_eq!(t.sinf.cycle_type(), vec![2, 1]);
    }

    #[test]
    fn sl2_orders() {
        assert_eq!(sl2_order(2), 6);
        assert_eq!(sl2_order(6), 144);
        let full = ModNGroup::generate(6, &[s_matrix(), t_matrix()]).unwrap();
        assert_eq!(full.order(), 144);
        assert!(full.is_normal());
    }

    #[test]
    fn expected_indices() {
        assert_eq!(expected_index(gamma_prime_index(Case::IV)), 6);
        assert_eq!(expected_index(gamma_prime_index(Case::I)), 12);
        assert_eq!(expected_index(gamma_prime_index(Case::II)), 24);
    }
}
