//! Permutations, permutation triples, small permutation groups, their
//! intermediate-subgroup lattices and the local monodromy of factored covers.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PermError {
    #[error("cannot parse cycle notation: {0}")]
    Parse(String),
    #[error("permutation degrees differ")]
    DegreeMismatch,
    #[error("σ∞σ₁σ₀ ≠ 1")]
    ProductOneViolated,
    #[error("⟨σ₀, σ₁⟩ is not transitive")]
    NotTransitive,
    #[error("group order exceeds the bound {0}")]
    OrderBoundExceeded(usize),
}

/// A permutation of {0, …, n−1}; displayed 1-indexed in cycle notation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<u32>);

impl Perm {
    pub fn identity(n: usize) -> Perm {
        Perm((0..n as u32).collect())
    }

    pub fn from_images(images: Vec<u32>) -> Result<Perm, PermError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i as usize >= n || seen[i as usize] {
                return Err(PermError::Parse(format!("{images:?} is not a bijection")));
            }
            seen[i as usize] = true;
        }
        Ok(Perm(images))
    }

    /// From 1-indexed cycles.
    pub fn from_cycles(n: usize, cycles: &[Vec<u32>]) -> Result<Perm, PermError> {
        let mut img: Vec<u32> = (0..n as u32).collect();
        let mut seen = vec![false; n];
        for c in cycles {
            for (k, &x) in c.iter().enumerate() {
                if x == 0 || x as usize > n || seen[x as usize - 1] {
                    return Err(PermError::Parse(format!("bad cycle entry {x}")));
                }
                seen[x as usize - 1] = true;
                img[x as usize - 1] = c[(k + 1) % c.len()] - 1;
            }
        }
        Ok(Perm(img))
    }

    /// Parse "(1, 3, 8)(2, 7, 4)" style notation on n points.
    pub fn parse(s: &str, n: usize) -> Result<Perm, PermError> {
        let s = s.trim();
        let mut cycles = Vec::new();
        let mut rest = s;
        while !rest.is_empty() {
            let open = rest.find('(').ok_or_else(|| PermError::Parse(s.into()))?;
            if !rest[..open].trim().is_empty() {
                return Err(PermError::Parse(s.into()));
            }
            let close = rest.find(')').ok_or_else(|| PermError::Parse(s.into()))?;
            let body = &rest[open + 1..close];
            let c: Vec<u32> = body
                .split(',')
                .filter(|t| !t.trim().is_empty())
                .map(|t| t.trim().parse::<u32>().map_err(|_| PermError::Parse(s.into())))
                .collect::<Result<_, _>>()?;
            cycles.push(c);
            rest = rest[close + 1..].trim_start();
        }
        Perm::from_cycles(n, &cycles)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.0
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i] as usize
    }

    /// self ∘ other: apply `other` first.
    pub fn mul(&self, other: &Perm) -> Perm {
        Perm(other.0.iter().map(|&i| self.0[i as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut r = vec![0; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            r[x as usize] = i as u32;
        }
        Perm(r)
    }

    pub fn pow(&self, e: i64) -> Perm {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut acc = Perm::identity(self.degree());
        for _ in 0..e.unsigned_abs() {
            acc = base.mul(&acc);
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// π self π⁻¹.
    pub fn conjugate_by(&self, pi: &Perm) -> Perm {
        pi.mul(self).mul(&pi.inverse())
    }

    /// 0-indexed cycles including fixed points, each starting at its minimum.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for i in 0..n {
            if seen[i] {
                continue;
            }
            let mut c = vec![i];
            seen[i] = true;
            let mut j = self.apply(i);
            while j != i {
                seen[j] = true;
                c.push(j);
                j = self.apply(j);
            }
            out.push(c);
        }
        out
    }

    /// Cycle lengths in decreasing order.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut t: Vec<usize> = self.cycles().iter().map(|c| c.len()).collect();
        t.sort_unstable_by(|a, b| b.cmp(a));
        t
    }

    pub fn cycle_length_of(&self, i: usize) -> usize {
        let mut j = self.apply(i);
        let mut l = 1;
        while j != i {
            j = self.apply(j);
            l += 1;
        }
        l
    }

    pub fn order(&self) -> usize {
        self.cycle_type().into_iter().fold(1, num_integer::lcm)
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cs: Vec<Vec<usize>> = self.cycles().into_iter().filter(|c| c.len() > 1).collect();
        if cs.is_empty() {
            return write!(f, "(1)");
        }
        for c in cs {
            let s: Vec<String> = c.iter().map(|x| (x + 1).to_string()).collect();
            write!(f, "({})", s.join(", "))?;
        }
        Ok(())
    }
}

/// (σ₀, σ₁, σ∞) with σ∞σ₁σ₀ = 1, σ₀ applied first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PermTriple {
    pub s0: Perm,
    pub s1: Perm,
    pub sinf: Perm,
}

impl PermTriple {
    pub fn new(s0: Perm, s1: Perm, sinf: Perm) -> Result<PermTriple, PermError> {
        let n = s0.degree();
        if s1.degree() != n || sinf.degree() != n {
            return Err(PermError::DegreeMismatch);
        }
        if !sinf.mul(&s1).mul(&s0).is_identity() {
            return Err(PermError::ProductOneViolated);
        }
        Ok(PermTriple { s0, s1, sinf })
    }

    /// Parse three cycle-notation strings (σ₀, σ₁, σ∞) on n points.
    pub fn parse(s0: &str, s1: &str, sinf: &str, n: usize) -> Result<PermTriple, PermError> {
        PermTriple::new(Perm::parse(s0, n)?, Perm::parse(s1, n)?, Perm::parse(sinf, n)?)
    }

    pub fn degree(&self) -> usize {
        self.s0.degree()
    }

    pub fn perms(&self) -> [&Perm; 3] {
        [&self.s0, &self.s1, &self.sinf]
    }

    pub fn is_transitive(&self) -> bool {
        orbit(&[self.s0.clone(), self.s1.clone()], 0).len() == self.degree()
    }

    pub fn cycle_types(&self) -> [Vec<usize>; 3] {
        [self.s0.cycle_type(), self.s1.cycle_type(), self.sinf.cycle_type()]
    }

    /// π t π⁻¹ componentwise.
    pub fn conjugate_by(&self, pi: &Perm) -> PermTriple {
        PermTriple { s0: self.s0.conjugate_by(pi), s1: self.s1.conjugate_by(pi), sinf: self.sinf.conjugate_by(pi) }
    }

    pub fn monodromy_group(&self) -> Result<PermGroup, PermError> {
        PermGroup::generate(self.degree(), &[self.s0.clone(), self.s1.clone()])
    }
}

impl fmt::Display for PermTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "σ₀ = {}, σ₁ = {}, σ∞ = {}", self.s0, self.s1, self.sinf)
    }
}

/// Genus by Riemann–Hurwitz: 2 − 2g = 2d − Σ (len − 1).
pub fn genus(t: &PermTriple) -> Result<i64, PermError> {
    if !t.is_transitive() {
        return Err(PermError::NotTransitive);
    }
    let d = t.degree() as i64;
    let r: i64 = t.perms().iter().map(|p| p.cycles().iter().map(|c| c.len() as i64 - 1).sum::<i64>()).sum();
    Ok((r - 2 * d + 2) / 2)
}

/// Orbit of a point, in discovery order.
pub fn orbit(gens: &[Perm], start: usize) -> Vec<usize> {
    let mut seen = vec![false; gens.first().map_or(start + 1, |g| g.degree())];
    let mut out = vec![start];
    seen[start] = true;
    let mut i = 0;
    while i < out.len() {
        let x = out[i];
        for g in gens {
            let y = g.apply(x);
            if !seen[y] {
                seen[y] = true;
                out.push(y);
            }
        }
        i += 1;
    }
    out
}

/// π with π t1 π⁻¹ = t2, found by propagating the image of the first point.
pub fn triple_conjugacy(t1: &PermTriple, t2: &PermTriple) -> Option<Perm> {
    let n = t1.degree();
    if t2.degree() != n || !t1.is_transitive() {
        return None;
    }
    let g1 = t1.perms();
    let g2 = t2.perms();
    'start: for img0 in 0..n {
        let mut pi: Vec<Option<u32>> = vec![None; n];
        let mut used = vec![false; n];
        pi[0] = Some(img0 as u32);
        used[img0] = true;
        let mut stack = vec![0usize];
        while let Some(x) = stack.pop() {
            let px = pi[x].unwrap() as usize;
            for (a, b) in g1.iter().zip(&g2) {
                let y = a.apply(x);
                let z = b.apply(px);
                match pi[y] {
                    Some(v) if v as usize != z => continue 'start,
                    Some(_) => {}
                    None => {
                        if used[z] {
                            continue 'start;
                        }
                        pi[y] = Some(z as u32);
                        used[z] = true;
                        stack.push(y);
                    }
                }
            }
        }
        let p = Perm(pi.into_iter().map(|v| v.expect("transitive")).collect());
        if t1.conjugate_by(&p) == *t2 {
            return Some(p);
        }
    }
    None
}

pub const GROUP_ORDER_BOUND: usize = 10_000;

/// A permutation group stored by its full element list (desk-scale orders).
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    gens: Vec<Perm>,
    elements: Vec<Perm>,
    set: HashSet<Perm>,
}

impl PartialEq for PermGroup {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.set == other.set
    }
}

impl PermGroup {
    pub fn generate(degree: usize, gens: &[Perm]) -> Result<PermGroup, PermError> {
        let id = Perm::identity(degree);
        let mut set: HashSet<Perm> = HashSet::from([id.clone()]);
        let mut elements = vec![id];
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for g in gens {
                if g.degree() != degree {
                    return Err(PermError::DegreeMismatch);
                }
                let y = g.mul(&elements[i]);
                if set.insert(y.clone()) {
                    elements.push(y);
                    if elements.len() > GROUP_ORDER_BOUND {
                        return Err(PermError::OrderBoundExceeded(GROUP_ORDER_BOUND));
                    }
                    queue.push_back(elements.len() - 1);
                }
            }
        }
        elements.sort();
        Ok(PermGroup { degree, gens: gens.to_vec(), elements, set })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Perm] {
        &self.gens
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn contains(&self, p: &Perm) -> bool {
        self.set.contains(p)
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.elements.iter().all(|e| other.contains(e))
    }

    pub fn stabilizer(&self, point: usize) -> PermGroup {
        let elems: Vec<Perm> = self.elements.iter().filter(|p| p.apply(point) == point).cloned().collect();
        let set = elems.iter().cloned().collect();
        PermGroup { degree: self.degree, gens: elems.clone(), elements: elems, set }
    }

    pub fn is_normal_in(&self, g: &PermGroup) -> bool {
        g.gens.iter().all(|x| self.gens.iter().all(|h| self.contains(&h.conjugate_by(x))))
    }

    fn key(&self) -> Vec<Perm> {
        self.elements.clone()
    }
}

/// A subgroup K with H ⊆ K ⊆ G and its indices.
#[derive(Clone, Debug)]
pub struct IntermediateSubgroup {
    pub group: PermGroup,
    pub index_in_g: usize,
    pub index_over_h: usize,
}

/// Every K with H ⊆ K ⊆ G, sorted by order.
pub fn intermediate_subgroups(g: &PermGroup, h: &PermGroup) -> Result<Vec<IntermediateSubgroup>, PermError> {
    if g.order() > GROUP_ORDER_BOUND {
        return Err(PermError::OrderBoundExceeded(GROUP_ORDER_BOUND));
    }
    let mut found: Vec<PermGroup> = vec![h.clone()];
    let mut keys: BTreeSet<Vec<Perm>> = BTreeSet::from([h.key()]);
    let mut i = 0;
    while i < found.len() {
        let k = found[i].clone();
        let mut covered: HashSet<Perm> = k.set.clone();
        for x in g.elements() {
            if covered.contains(x) {
                continue;
            }
            for y in k.elements() {
                covered.insert(y.mul(x));
            }
            let mut gens = k.gens.clone();
            gens.push(x.clone());
            let kk = PermGroup::generate(g.degree(), &gens)?;
            if keys.insert(kk.key()) {
                found.push(kk);
            }
        }
        i += 1;
    }
    found.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.elements.cmp(&b.elements)));
    Ok(found
        .into_iter()
        .map(|k| IntermediateSubgroup { index_in_g: g.order() / k.order(), index_over_h: k.order() / h.order(), group: k })
        .collect())
}

/// Blocks {g(k(0)) : k ∈ K} of G/K for K ⊇ Stab(0), block of 0 first,
/// the rest ordered by least element.
pub fn coset_blocks(g: &PermGroup, k: &PermGroup) -> Vec<Vec<usize>> {
    let mut b0: Vec<usize> = orbit(k.generators(), 0);
    b0.sort_unstable();
    let mut blocks: Vec<Vec<usize>> = vec![b0.clone()];
    let mut assigned = vec![false; g.degree()];
    for &x in &b0 {
        assigned[x] = true;
    }
    for x in g.elements() {
        let y = x.apply(0);
        if assigned[y] {
            continue;
        }
        let mut b: Vec<usize> = b0.iter().map(|&p| x.apply(p)).collect();
        b.sort_unstable();
        for &p in &b {
            assigned[p] = true;
        }
        blocks.push(b);
    }
    blocks[1..].sort();
    blocks
}

fn block_index(blocks: &[Vec<usize>]) -> Vec<usize> {
    let n: usize = blocks.iter().map(|b| b.len()).sum();
    let mut idx = vec![0; n];
    for (i, b) in blocks.iter().enumerate() {
        for &p in b {
            idx[p] = i;
        }
    }
    idx
}

fn induced(p: &Perm, blocks: &[Vec<usize>], idx: &[usize]) -> Perm {
    Perm(blocks.iter().map(|b| idx[p.apply(b[0])] as u32).collect())
}

/// The action of the triple on G/K.
pub fn coset_triple(g: &PermGroup, k: &PermGroup, t: &PermTriple) -> Result<PermTriple, PermError> {
    let blocks = coset_blocks(g, k);
    let idx = block_index(&blocks);
    PermTriple::new(induced(&t.s0, &blocks, &idx), induced(&t.s1, &blocks, &idx), induced(&t.sinf, &blocks, &idx))
}

/// Local monodromy of Z → Y at the point of Y given by a coset c.
#[derive(Clone, Debug, PartialEq)]
pub struct LocalMonodromy {
    /// Length of the σ-cycle through c on G/K.
    pub e: usize,
    /// τ = c⁻¹ σᵉ c ∈ K.
    pub tau: Perm,
    /// Cycle type of τ on K/H: the ramification of Z → Y at the point.
    pub tau_cycle_type: Vec<usize>,
}

pub fn local_monodromy(g: &PermGroup, k: &PermGroup, sigma: &Perm, coset: usize) -> LocalMonodromy {
    let blocks = coset_blocks(g, k);
    let idx = block_index(&blocks);
    let on_cosets = induced(sigma, &blocks, &idx);
    let e = on_cosets.cycle_length_of(coset);
    let c = g.elements().iter().find(|x| idx[x.apply(0)] == coset).expect("transitive group").clone();
    let tau = c.inverse().mul(&sigma.pow(e as i64)).mul(&c);
    debug_assert!(k.contains(&tau));
    let b0 = &blocks[0];
    let pos = |p: usize| b0.iter().position(|&x| x == p).expect("τ preserves the block of 0");
    let restricted = Perm(b0.iter().map(|&p| pos(tau.apply(p)) as u32).collect());
    LocalMonodromy { e, tau_cycle_type: restricted.cycle_type(), tau }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display_round_trip() {
        let s = "(1, 3, 8)(2, 7, 4)(5, 11, 9)(6, 12, 10)";
        assert_eq!(Perm::parse(s, 12).unwrap().to_string(), s);
        assert_eq!(Perm::parse("(1,2)(3,4)", 4).unwrap().to_string(), "(1, 2)(3, 4)");
        assert_eq!(Perm::parse("(1)", 2).unwrap().to_string(), "(1)");
        assert!(Perm::parse("(1, 1)", 2).is_err());
    }

    #[test]
    fn composition_order() {
        let a = Perm::parse("(1, 2)", 3).unwrap();
        let b = Perm::parse("(2, 3)", 3).unwrap();
        // a ∘ b sends 2 ↦ 3 ↦ 3 and 3 ↦ 2 ↦ 1
        assert_eq!(a.mul(&b).to_string(), "(1, 2, 3)");
    }

    #[test]
    fn symmetric_group_order() {
        let g = PermGroup::generate(4, &[Perm::parse("(1, 2)", 4).unwrap(), Perm::parse("(1, 2, 3, 4)", 4).unwrap()]).unwrap();
        assert_eq!(g.order(), 24);
        let h = g.stabilizer(0);
        assert_eq!(h.order(), 6);
        let lat = intermediate_subgroups(&g, &h).unwrap();
        assert_eq!(lat.len(), 2);
    }

    #[test]
    fn trivial_cover() {
        let t = PermTriple::parse("(1)", "(1, 2)", "(1, 2)", 2).unwrap();
        assert_eq!(genus(&t).unwrap(), 0);
        let g = t.monodromy_group().unwrap();
        let k = g.clone();
        let one = coset_triple(&g, &k, &t).unwrap();
        assert_eq!(one.degree(), 1);
    }
}
