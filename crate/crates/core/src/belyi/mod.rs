//! Belyi maps on elliptic curves y² = f(x): function-field arithmetic,
//! places over Q, valuations and ramification profiles over j = 0, 1728, ∞.

pub mod expr;

use crate::exact::poly::QPoly;
use crate::exact::ratfunc::QRatFunc;
use crate::exact::rational::{q, qq, Rational};
use crate::exact::ExactError;
use crate::perm::{coset_triple, intermediate_subgroups, local_monodromy, PermError, PermTriple};
use crate::Case;
use std::fmt;

pub use expr::{parse_curve, parse_map, parse_poly};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BelyiError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("f must be squarefree of degree 3 or 4")]
    NotElliptic,
    #[error("valuation of the zero function")]
    ZeroFunction,
    #[error("a(x) and b(x)·y have equal valuation at an unramified place")]
    BranchTie,
    #[error("place polynomial does not have uniform multiplicity")]
    NonUniformPlace,
    #[error("profile sums {0:?} differ from the degree {1}")]
    DegreeMismatch(Vec<usize>, usize),
    #[error("map is constant")]
    Constant,
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// The curve y² = f(x) with f squarefree of degree 3 or 4.
#[derive(Clone, Debug, PartialEq)]
pub struct EllipticModel {
    pub f: QPoly,
}

impl EllipticModel {
    pub fn new(f: QPoly) -> Result<EllipticModel, BelyiError> {
        if !(f.deg() == 3 || f.deg() == 4) || !f.is_squarefree() {
            return Err(BelyiError::NotElliptic);
        }
        Ok(EllipticModel { f })
    }

    pub fn genus(&self) -> u32 {
        1
    }

    /// Number of points over x = ∞ (1 when deg f is odd, else 2).
    pub fn points_at_infinity(&self) -> usize {
        if self.f.deg() % 2 == 1 {
            1
        } else {
            2
        }
    }
}

impl fmt::Display for EllipticModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "y^2 = {}", self.f)
    }
}

/// a(x) + b(x)·y in the function field of y² = f(x).
#[derive(Clone, Debug, PartialEq)]
pub struct FunctionFieldElement {
    pub a: QRatFunc,
    pub b: QRatFunc,
}

impl FunctionFieldElement {
    pub fn new(a: QRatFunc, b: QRatFunc) -> Self {
        FunctionFieldElement { a, b }
    }

    pub fn from_x(a: QRatFunc) -> Self {
        FunctionFieldElement { a, b: QRatFunc::constant(q(0)) }
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_x(QRatFunc::constant(c))
    }

    pub fn one() -> Self {
        Self::constant(q(1))
    }

    pub fn x() -> Self {
        Self::from_x(QRatFunc::x())
    }

    pub fn y() -> Self {
        FunctionFieldElement { a: QRatFunc::constant(q(0)), b: QRatFunc::constant(q(1)) }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// Whether the element lies in Q(x).
    pub fn is_function_of_x(&self) -> bool {
        self.b.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        FunctionFieldElement { a: self.a.add(&o.a), b: self.b.add(&o.b) }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        FunctionFieldElement { a: self.a.neg(), b: self.b.neg() }
    }

    pub fn mul(&self, o: &Self, e: &EllipticModel) -> Self {
        let f = QRatFunc::from_poly(e.f.clone());
        FunctionFieldElement {
            a: self.a.mul(&o.a).add(&self.b.mul(&o.b).mul(&f)),
            b: self.a.mul(&o.b).add(&self.b.mul(&o.a)),
        }
    }

    pub fn conjugate(&self) -> Self {
        FunctionFieldElement { a: self.a.clone(), b: self.b.neg() }
    }

    /// Norm to Q(x): a² − b² f.
    pub fn norm(&self, e: &EllipticModel) -> QRatFunc {
        let f = QRatFunc::from_poly(e.f.clone());
        self.a.mul(&self.a).sub(&self.b.mul(&self.b).mul(&f))
    }

    pub fn inv(&self, e: &EllipticModel) -> Result<Self, BelyiError> {
        let n = self.norm(e);
        if n.is_zero() {
            return Err(ExactError::DivisionByZero.into());
        }
        let ni = QRatFunc::constant(q(1)).div(&n)?;
        let c = self.conjugate();
        Ok(FunctionFieldElement { a: c.a.mul(&ni), b: c.b.mul(&ni) })
    }

    pub fn div(&self, o: &Self, e: &EllipticModel) -> Result<Self, BelyiError> {
        Ok(self.mul(&o.inv(e)?, e))
    }

    pub fn pow(&self, n: u32, e: &EllipticModel) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = acc.mul(self, e);
        }
        acc
    }

    pub fn add_const(&self, c: &Rational) -> Self {
        FunctionFieldElement { a: self.a.add(&QRatFunc::constant(c.clone())), b: self.b.clone() }
    }
}

impl fmt::Display for FunctionFieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => write!(f, "{}", self.a),
            (true, false) => write!(f, "({})*y", self.b),
            (false, false) => write!(f, "{} + ({})*y", self.a, self.b),
        }
    }
}

/// A group of places of the curve: either all points over the roots of a
/// squarefree p(x) on which every function under study has uniform
/// behaviour, or the points over x = ∞.
#[derive(Clone, Debug, PartialEq)]
pub enum PlaceKind {
    Finite(QPoly),
    Infinity,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Place {
    pub kind: PlaceKind,
    /// Whether x ramifies here (p | f, or ∞ with deg f odd).
    pub ramified: bool,
    /// Number of points over Q̄.
    pub points: usize,
}

impl Place {
    pub fn finite(p: QPoly, e: &EllipticModel) -> Place {
        let p = p.monic();
        let ramified = p.divides(&e.f);
        let points = p.deg() * if ramified { 1 } else { 2 };
        Place { kind: PlaceKind::Finite(p), ramified, points }
    }

    pub fn infinity(e: &EllipticModel) -> Place {
        Place { kind: PlaceKind::Infinity, ramified: e.f.deg() % 2 == 1, points: e.points_at_infinity() }
    }

    fn ex(&self) -> i64 {
        if self.ramified {
            2
        } else {
            1
        }
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            PlaceKind::Finite(p) => write!(f, "{}", p),
            PlaceKind::Infinity => write!(f, "∞"),
        }
    }
}

fn poly_ord(p: &QPoly, poly: &QPoly) -> Result<i64, BelyiError> {
    let k = poly.multiplicity_of(p);
    let mut rest = poly.clone();
    for _ in 0..k {
        rest = rest.exact_div(p);
    }
    if rest.gcd(p).deg() > 0 {
        return Err(BelyiError::NonUniformPlace);
    }
    Ok(k as i64)
}

fn ratfunc_ord(place: &Place, r: &QRatFunc) -> Result<i64, BelyiError> {
    let base = match &place.kind {
        PlaceKind::Finite(p) => poly_ord(p, r.num())? - poly_ord(p, r.den())?,
        PlaceKind::Infinity => r.den().deg() as i64 - r.num().deg() as i64,
    };
    Ok(base * place.ex())
}

fn y_ord(place: &Place, e: &EllipticModel) -> i64 {
    match place.kind {
        PlaceKind::Finite(_) => i64::from(place.ramified),
        PlaceKind::Infinity => {
            if place.ramified {
                -(e.f.deg() as i64)
            } else {
                -(e.f.deg() as i64) / 2
            }
        }
    }
}

/// Order of vanishing of φ at (each point of) the place.
pub fn valuation(phi: &FunctionFieldElement, place: &Place, e: &EllipticModel) -> Result<i64, BelyiError> {
    if phi.is_zero() {
        return Err(BelyiError::ZeroFunction);
    }
    if phi.b.is_zero() {
        return ratfunc_ord(place, &phi.a);
    }
    let vb = ratfunc_ord(place, &phi.b)? + y_ord(place, e);
    if phi.a.is_zero() {
        return Ok(vb);
    }
    let va = ratfunc_ord(place, &phi.a)?;
    if va == vb {
        return Err(BelyiError::BranchTie);
    }
    Ok(va.min(vb))
}

/// Refine squarefree polynomials into a pairwise coprime family with the
/// same set of roots.
pub fn coprime_base(polys: &[QPoly]) -> Vec<QPoly> {
    let mut inputs: Vec<QPoly> = polys.iter().filter(|p| p.deg() > 0).map(|p| p.monic()).collect();
    inputs.sort_by(|a, b| a.deg().cmp(&b.deg()).then_with(|| format!("{a}").cmp(&format!("{b}"))));
    inputs.dedup();
    let mut base = Vec::new();
    for p in inputs {
        insert_coprime(&mut base, p);
    }
    base.sort_by(|a, b| a.deg().cmp(&b.deg()).then_with(|| format!("{a}").cmp(&format!("{b}"))));
    base
}

fn insert_coprime(base: &mut Vec<QPoly>, p: QPoly) {
    for i in 0..base.len() {
        let g = base[i].gcd(&p);
        if g.deg() == 0 {
            continue;
        }
        let q = base.swap_remove(i);
        let (a, b) = (q.exact_div(&g), p.exact_div(&g));
        for piece in [g, a, b] {
            if piece.deg() > 0 {
                insert_coprime(base, piece.monic());
            }
        }
        return;
    }
    base.push(p);
}

fn squarefree_parts(p: &QPoly) -> Vec<QPoly> {
    if p.deg() == 0 {
        return vec![];
    }
    p.squarefree_decomposition().into_iter().map(|(s, _)| s).collect()
}

/// Places on which f and every listed function have uniform behaviour.
pub fn places_for(e: &EllipticModel, funcs: &[FunctionFieldElement]) -> Vec<Place> {
    let mut polys = squarefree_parts(&e.f);
    for phi in funcs {
        let mut parts = vec![phi.a.clone()];
        if !phi.b.is_zero() {
            parts.push(phi.b.clone());
            parts.push(phi.norm(e));
        }
        for r in &parts {
            polys.extend(squarefree_parts(r.num()));
            polys.extend(squarefree_parts(r.den()));
        }
    }
    let mut out: Vec<Place> = coprime_base(&polys).into_iter().map(|p| Place::finite(p, e)).collect();
    out.push(Place::infinity(e));
    out
}

/// Multisets of ramification indices over three branch values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RamificationProfile {
    pub over: [Vec<usize>; 3],
}

impl RamificationProfile {
    pub fn new(mut over: [Vec<usize>; 3]) -> Self {
        for v in over.iter_mut() {
            v.sort_unstable_by(|a, b| b.cmp(a));
        }
        RamificationProfile { over }
    }

    pub fn degree(&self) -> usize {
        self.over[0].iter().sum()
    }

    pub fn of_triple(t: &PermTriple) -> Self {
        RamificationProfile::new(t.cycle_types())
    }
}

impl fmt::Display for RamificationProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let part = |v: &Vec<usize>| {
            let mut parts = Vec::new();
            let mut i = 0;
            while i < v.len() {
                let j = i + v[i..].iter().take_while(|&&e| e == v[i]).count();
                parts.push(format!("{}^{}", v[i], j - i));
                i = j;
            }
            parts.join(" ")
        };
        write!(f, "({}, {}, {})", part(&self.over[0]), part(&self.over[1]), part(&self.over[2]))
    }
}

/// Branch values of the j-line.
pub fn j_branch_values() -> [Option<Rational>; 3] {
    [Some(q(0)), Some(q(1728)), None]
}

fn zero_multiset(phi: &FunctionFieldElement, places: &[Place], e: &EllipticModel, poles: bool) -> Result<Vec<usize>, BelyiError> {
    let mut out = Vec::new();
    for p in places {
        let v = valuation(phi, p, e)?;
        let m = if poles { -v } else { v };
        if m > 0 {
            out.extend(std::iter::repeat_n(m as usize, p.points));
        }
    }
    Ok(out)
}

/// Ramification of φ: E → P¹ over the values (None = ∞).
pub fn ramification_profile_over(phi: &FunctionFieldElement, e: &EllipticModel, values: &[Option<Rational>; 3]) -> Result<RamificationProfile, BelyiError> {
    let shifted: Vec<FunctionFieldElement> = values.iter().map(|v| match v {
        Some(c) => phi.add_const(&-c.clone()),
        None => phi.clone(),
    }).collect();
    if shifted.iter().any(|s| s.is_zero()) || (phi.b.is_zero() && phi.a.degree() == 0) {
        return Err(BelyiError::Constant);
    }
    let places = places_for(e, &shifted);
    let mut over: Vec<Vec<usize>> = Vec::new();
    for (s, v) in shifted.iter().zip(values) {
        over.push(zero_multiset(s, &places, e, v.is_none())?);
    }
    let poles = zero_multiset(phi, &places, e, true)?;
    let degree: usize = poles.iter().sum();
    let sums: Vec<usize> = over.iter().map(|v| v.iter().sum()).collect();
    if sums.iter().any(|&s| s != degree) || (phi.b.is_zero() && degree != 2 * phi.a.degree()) {
        return Err(BelyiError::DegreeMismatch(sums, degree));
    }
    Ok(RamificationProfile::new([over[0].clone(), over[1].clone(), over[2].clone()]))
}

/// Profile over j = 0, 1728, ∞.
pub fn ramification_profile(phi: &FunctionFieldElement, e: &EllipticModel) -> Result<RamificationProfile, BelyiError> {
    ramification_profile_over(phi, e, &j_branch_values())
}

/// Outcome of comparing a map's profile with a triple's cycle types.
#[derive(Clone, Debug, PartialEq)]
pub struct BelyiVerdict {
    pub pass: bool,
    pub degree: usize,
    pub profile: Option<RamificationProfile>,
    pub expected: RamificationProfile,
    pub genus_match: bool,
}

/// Pass iff the profile over (0, 1728, ∞) equals the cycle types of
/// (σ₀, σ₁, σ∞) and both sides have genus 1.
pub fn verify_belyi(phi: &FunctionFieldElement, e: &EllipticModel, t: &PermTriple) -> BelyiVerdict {
    let expected = RamificationProfile::of_triple(t);
    let genus_match = crate::perm::genus(t).ok() == Some(e.genus() as i64);
    match ramification_profile(phi, e) {
        Ok(p) => BelyiVerdict { pass: genus_match && p == expected, degree: p.degree(), profile: Some(p), expected, genus_match },
        Err(_) => BelyiVerdict { pass: false, degree: 0, profile: None, expected, genus_match },
    }
}

/// outer ∘ inner.
pub fn compose_p1(outer: &QRatFunc, inner: &QRatFunc) -> QRatFunc {
    outer.compose(inner)
}

fn poly_profile(p: &QPoly) -> Vec<usize> {
    let mut out = Vec::new();
    if p.deg() == 0 {
        return out;
    }
    for (s, m) in p.squarefree_decomposition() {
        out.extend(std::iter::repeat_n(m as usize, s.deg()));
    }
    out
}

/// Ramification of φ: P¹ → P¹ over three values (None = ∞).
pub fn genus0_profile(phi: &QRatFunc, values: &[Option<Rational>; 3]) -> RamificationProfile {
    let mut over: Vec<Vec<usize>> = Vec::new();
    for v in values {
        let mut m = match v {
            Some(c) => {
                let s = phi.sub(&QRatFunc::constant(c.clone()));
                let mut z = poly_profile(s.num());
                if s.den().deg() > s.num().deg() {
                    z.push(s.den().deg() - s.num().deg());
                }
                z
            }
            None => {
                let mut z = poly_profile(phi.den());
                if phi.num().deg() > phi.den().deg() {
                    z.push(phi.num().deg() - phi.den().deg());
                }
                z
            }
        };
        m.sort_unstable_by(|a, b| b.cmp(a));
        over.push(m);
    }
    RamificationProfile::new([over[0].clone(), over[1].clone(), over[2].clone()])
}

/// A Belyi map on an elliptic curve, kept with its source strings.
#[derive(Clone, Debug)]
pub struct BelyiMapOnCurve {
    pub curve_text: String,
    pub map_text: String,
    pub curve: EllipticModel,
    pub map: FunctionFieldElement,
}

impl BelyiMapOnCurve {
    pub fn parse(curve_text: &str, map_text: &str) -> Result<BelyiMapOnCurve, BelyiError> {
        let curve = parse_curve(curve_text)?;
        let map = parse_map(map_text, &curve)?;
        Ok(BelyiMapOnCurve { curve_text: curve_text.into(), map_text: map_text.into(), curve, map })
    }

    pub fn profile(&self) -> Result<RamificationProfile, BelyiError> {
        ramification_profile(&self.map, &self.curve)
    }
}

pub const CASE_I_CURVE: &str = "y^2 = x*(x^2 - 22*x + 125)";
pub const CASE_I_MAP: &str = "-(x^2 - 10*x + 5)^3 / x";
pub const CASE_II_CURVE: &str = "y^2 = x*(x + 1)*(x - 2)*(x - 3)";
pub const CASE_II_PRINTED_CURVE: &str = "y^2 = x*(x - 1)*(3*x - 2)*(3*x + 1)";
pub const CASE_II_MAP: &str = "6912*(2*x^3 - 6*x^2 - 1)^3 / ((x - 2)^6*(x + 1)^3*x^2*(x - 3))";
pub const CASE_III_CURVE: &str = "y^2 = x*(4*x^2 + 1)";
pub const CASE_III_MAP: &str = "256*(x^2 + 1)^3 / x^4";
pub const CASE_IV_CURVE: &str = "y^2 = x^3 - 1728";
pub const CASE_IV_MAP: &str = "x^3";

/// The verified Belyi map X(Γ′) → X(1) of each case.
pub fn case_map(case: Case) -> BelyiMapOnCurve {
    let (c, m) = match case {
        Case::I => (CASE_I_CURVE, CASE_I_MAP),
        Case::II => (CASE_II_CURVE, CASE_II_MAP),
        Case::III => (CASE_III_CURVE, CASE_III_MAP),
        Case::IV => (CASE_IV_CURVE, CASE_IV_MAP),
    };
    BelyiMapOnCurve::parse(c, m).expect("built-in map parses")
}

/// The genus-0 pieces of the case II chain.
pub mod case2 {
    use super::*;

    /// Y → X: 6912 u³(u + 2)/(4u − 1).
    pub fn degree4_cover() -> QRatFunc {
        QRatFunc::new(QPoly::from_ints(&[0, 0, 0, 13824, 6912]), QPoly::from_ints(&[-1, 4])).unwrap()
    }

    /// b(x) = (−27/4) x²(x − 1).
    pub fn b_map() -> QRatFunc {
        QRatFunc::from_poly(QPoly::new(vec![q(0), q(0), qq(27, 4), qq(-27, 4)]))
    }

    /// Möbius move of branch points: b ↦ (−8b − 1)/(4b − 4).
    pub fn mobius() -> QRatFunc {
        QRatFunc::new(QPoly::from_ints(&[-1, -8]), QPoly::from_ints(&[-4, 4])).unwrap()
    }

    /// Z → X before and after substituting x/3 for x.
    pub fn chain_unpolished() -> QRatFunc {
        compose_p1(&degree4_cover(), &compose_p1(&mobius(), &b_map()))
    }

    pub fn chain() -> QRatFunc {
        let third = QRatFunc::from_poly(QPoly::new(vec![q(0), qq(1, 3)]));
        compose_p1(&chain_unpolished(), &third)
    }

    /// Intermediate covers X(Γ^(2)) → Z → Y → X(1) found in the subgroup lattice.
    #[derive(Clone, Debug)]
    pub struct Decomposition {
        pub group_order: usize,
        /// Number of K ⊇ H with [K : H] = 2, and the first one's triple on G/K.
        pub index2_count: usize,
        pub triple12: PermTriple,
        pub group12_order: usize,
        /// Number of K ⊇ H with [K : H] = 3 in the degree-12 group.
        pub index3_count: usize,
        pub k3_order: usize,
        pub triple4: PermTriple,
        /// (branch index 0/1/∞ as 0/1/2, coset, cycle length e, τ cycle type) where τ ≠ 1.
        pub ramified: Vec<(usize, usize, usize, Vec<usize>)>,
    }

    impl Decomposition {
        /// Ramification of Z → Y at its ramified points, longest first.
        pub fn profile(&self) -> Vec<Vec<usize>> {
            let mut v: Vec<Vec<usize>> = self.ramified.iter().map(|r| r.3.clone()).collect();
            v.sort_by(|a, b| b.cmp(a));
            v
        }
    }

    pub fn decompose(t24: &PermTriple) -> Result<Decomposition, PermError> {
        let g = t24.monodromy_group()?;
        let h = g.stabilizer(0);
        let k2s: Vec<_> = intermediate_subgroups(&g, &h)?.into_iter().filter(|k| k.index_over_h == 2).collect();
        let k2 = k2s.first().ok_or(PermError::NotTransitive)?;
        let triple12 = coset_triple(&g, &k2.group, t24)?;
        let g12 = triple12.monodromy_group()?;
        let h12 = g12.stabilizer(0);
        let k3s: Vec<_> = intermediate_subgroups(&g12, &h12)?.into_iter().filter(|k| k.index_over_h == 3).collect();
        let k3 = k3s.first().ok_or(PermError::NotTransitive)?;
        let triple4 = coset_triple(&g12, &k3.group, &triple12)?;
        let mut ramified = Vec::new();
        for (b, (sigma, on_cosets)) in triple12.perms().iter().zip(triple4.perms()).enumerate() {
            for cycle in on_cosets.cycles() {
                let lm = local_monodromy(&g12, &k3.group, sigma, cycle[0]);
                if lm.tau_cycle_type.iter().any(|&l| l > 1) {
                    ramified.push((b, cycle[0], lm.e, lm.tau_cycle_type));
                }
            }
        }
        Ok(Decomposition {
            group_order: g.order(),
            index2_count: k2s.len(),
            group12_order: g12.order(),
            index3_count: k3s.len(),
            k3_order: k3.group.order(),
            triple12,
            triple4,
            ramified,
        })
    }
}

/// Single-coefficient mutants of a map in Q(x): every numerator and
/// denominator coefficient up to one degree beyond the top, shifted by ±1.
pub fn mutants(phi: &FunctionFieldElement) -> Vec<FunctionFieldElement> {
    let mut out = Vec::new();
    let num = phi.a.num().coeffs().to_vec();
    let den = phi.a.den().coeffs().to_vec();
    for which in 0..2 {
        let base = if which == 0 { &num } else { &den };
        for i in 0..=base.len() {
            for delta in [q(1), q(-1)] {
                let mut c = base.clone();
                c.resize(base.len() + 1, q(0));
                c[i] = &c[i] + &delta;
                let (n, d) = if which == 0 { (QPoly::new(c), QPoly::new(den.clone())) } else { (QPoly::new(num.clone()), QPoly::new(c)) };
                if d.is_zero() {
                    continue;
                }
                let r = QRatFunc::new(n, d).expect("nonzero denominator");
                out.push(FunctionFieldElement::new(r, phi.b.clone()));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn valuations_on_cubic() {
        let e = parse_curve("y^2 = x*(4*x^2 + 1)").unwrap();
        let x = FunctionFieldElement::x();
        let p0 = Place::finite(QPoly::x(), &e);
        assert_eq!(valuation(&x, &p0, &e).unwrap(), 2);
        assert_eq!(valuation(&FunctionFieldElement::y(), &p0, &e).unwrap(), 1);
        assert_eq!(valuation(&FunctionFieldElement::one(), &p0, &e).unwrap(), 0);
        let inf = Place::infinity(&e);
        assert_eq!(valuation(&x, &inf, &e).unwrap(), -2);
        assert_eq!(valuation(&FunctionFieldElement::y(), &inf, &e).unwrap(), -3);
        assert!(matches!(valuation(&FunctionFieldElement::constant(q(0)), &inf, &e), Err(BelyiError::ZeroFunction)));
    }

    #[test]
    fn parse_forms() {
        let e = parse_curve("y^2 = x^3 - 1728").unwrap();
        assert_eq!(e.f, QPoly::from_ints(&[-1728, 0, 0, 1]));
        let m = parse_map("6912(2x^3 - 1)^2/x^-1", &e).unwrap();
        assert!(m.is_function_of_x());
        assert!(parse_map("x +", &e).is_err());
        let y2 = parse_map("y^2", &e).unwrap();
        assert_eq!(y2, FunctionFieldElement::from_x(QRatFunc::from_poly(e.f.clone())));
    }

    #[test]
    fn genus0_profiles() {
        let v = [Some(q(0)), Some(q(1)), None];
        assert_eq!(genus0_profile(&QRatFunc::x(), &v).over, [vec![1], vec![1], vec![1]]);
        assert_eq!(genus0_profile(&case2::b_map(), &v).over, [vec![2, 1], vec![2, 1], vec![3]]);
    }

    #[test]
    fn coprime_refinement() {
        let a = QPoly::from_ints(&[0, -1, 0, 1]);
        let b = QPoly::from_ints(&[-1, 0, 1]);
        let base = coprime_base(&[a, b]);
        assert_eq!(base.len(), 2);
    }
}
