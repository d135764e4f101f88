//! Branches of a Belyi map at its cusps: solving φ(x(q)) = j(q) for the
//! Puiseux series x(q), and the square classes needed to make y(q) rational.

use super::jseries::{j_inverse_series, j_series};
use super::QexpError;
use crate::belyi::EllipticModel;
use crate::exact::poly::QPoly;
use crate::exact::ratfunc::QRatFunc;
use crate::exact::rational::{q, rational_nth_roots, squarefree_class, Rational};
use crate::exact::series::{power, PuiseuxSeries};
use num_bigint::BigInt;
use std::collections::BTreeSet;
use std::fmt;

pub type QSeries = PuiseuxSeries<Rational>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CuspPoint {
    Finite(Rational),
    Infinity,
}

impl fmt::Display for CuspPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CuspPoint::Finite(x) => write!(f, "x = {x}"),
            CuspPoint::Infinity => write!(f, "x = ∞"),
        }
    }
}

/// Points of E over a pole of φ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cusp {
    pub point: CuspPoint,
    /// Pole order of φ in the x-line.
    pub pole_order: u32,
    /// Whether x ramifies on E at the point.
    pub ramified: bool,
    /// Pole order of φ on E: the cusp width.
    pub width: u32,
    /// Number of points of E over the x-value.
    pub count: u32,
}

/// The cusps of φ ∈ Q(x) on E, widest first.
pub fn cusps(phi: &QRatFunc, curve: &EllipticModel) -> Result<Vec<Cusp>, QexpError> {
    let mut out = Vec::new();
    let den = phi.den();
    let roots = den.rational_roots();
    let mut total = 0;
    for r in roots {
        let k = den.multiplicity_of(&QPoly::new(vec![-r.clone(), q(1)]));
        total += k as usize;
        let ramified = curve.f.eval(&r) == q(0);
        let e = if ramified { 2 } else { 1 };
        out.push(Cusp { point: CuspPoint::Finite(r), pole_order: k, ramified, width: k * e, count: 3 - e });
    }
    if total != den.deg() {
        return Err(QexpError::IrrationalCusp);
    }
    if phi.num().deg() > den.deg() {
        let k = (phi.num().deg() - den.deg()) as u32;
        let ramified = curve.f.deg() % 2 == 1;
        let e = if ramified { 2 } else { 1 };
        out.push(Cusp { point: CuspPoint::Infinity, pole_order: k, ramified, width: k * e, count: 3 - e });
    }
    out.sort_by_key(|c| std::cmp::Reverse(c.width));
    Ok(out)
}

/// Cusp widths with multiplicity, to compare with the cycle type of σ∞.
pub fn cusp_widths(cs: &[Cusp]) -> Vec<usize> {
    let mut w: Vec<usize> = cs.iter().flat_map(|c| std::iter::repeat_n(c.width as usize, c.count as usize)).collect();
    w.sort_unstable_by(|a, b| b.cmp(a));
    w
}

/// 1/φ = u^k·g(u) in the local coordinate u (x − x0, or 1/x at ∞).
pub fn local_inverse(phi: &QRatFunc, point: &CuspPoint, n: usize) -> Result<(u32, Vec<Rational>), QexpError> {
    let (num, den) = match point {
        CuspPoint::Finite(x0) => {
            let shift = QPoly::new(vec![x0.clone(), q(1)]);
            (phi.num().compose(&shift), phi.den().compose(&shift))
        }
        CuspPoint::Infinity => {
            let d = phi.num().deg().max(phi.den().deg());
            let rev = |p: &QPoly| {
                let mut c = vec![q(0); d + 1];
                for (i, a) in p.coeffs().iter().enumerate() {
                    c[d - i] = a.clone();
                }
                QPoly::new(c)
            };
            (rev(phi.num()), rev(phi.den()))
        }
    };
    // 1/φ = den/num
    let (vd, vn) = (den.ord0().expect("nonzero"), num.ord0().expect("nonzero"));
    if vd <= vn {
        return Err(QexpError::NoBranch);
    }
    let k = (vd - vn) as u32;
    let d: Vec<Rational> = den.coeffs()[vd..].to_vec();
    let m: Vec<Rational> = num.coeffs()[vn..].to_vec();
    let g = power::mul(&d, &power::inv(&m, n)?, n);
    Ok((k, g))
}

/// One rational branch of φ(x(q)) = j(q) at a cusp.
#[derive(Clone, Debug, PartialEq)]
pub struct BranchSolution {
    pub cusp: Cusp,
    /// γ with γ^k = g(0): the chosen k-th root.
    pub gamma: Rational,
    pub x: QSeries,
    /// Squarefree t with f(x(q)) ∈ t·(Q((q^{1/w})))²: y is rational on the t-twist.
    pub twist_class: BigInt,
    /// y(q) on the t-twist t·y² = f(x).
    pub y: QSeries,
}

/// f(s) for a polynomial f and a Puiseux series s.
pub fn eval_poly(f: &QPoly, s: &QSeries) -> QSeries {
    s.compose_poly(f)
}

/// φ(s) for φ ∈ Q(x).
pub fn eval_ratfunc(phi: &QRatFunc, s: &QSeries) -> Result<QSeries, QexpError> {
    Ok(eval_poly(phi.num(), s).div(&eval_poly(phi.den(), s))?)
}

/// Whether two series agree on their common range, and that range.
pub fn agree(a: &QSeries, b: &QSeries) -> (bool, Rational) {
    let d = a.sub(b);
    (d.is_zero(), d.abs_prec())
}

/// Square root with positive leading coefficient, if the leading
/// coefficient is a rational square.
pub fn sqrt_series(s: &QSeries) -> Result<QSeries, QexpError> {
    let lead = s.lead().ok_or(QexpError::NoBranch)?;
    let r = rational_nth_roots(lead, 2).into_iter().find(|r| *r > q(0)).ok_or(QexpError::NotASquare)?;
    Ok(s.nth_root(2, Some(&r))?)
}

/// All rational branches at a cusp, `prec` terms of x each.
pub fn branch_solve(phi: &QRatFunc, curve: &EllipticModel, cusp: &Cusp, prec: usize) -> Result<Vec<BranchSolution>, QexpError> {
    let k = cusp.pole_order as usize;
    let m = prec + 2;
    let (k2, g) = local_inverse(phi, &cusp.point, m)?;
    if k2 as usize != k {
        return Err(QexpError::NoBranch);
    }
    let gammas = rational_nth_roots(&g[0], k as u32);
    if gammas.is_empty() {
        return Err(QexpError::NoRationalBranch);
    }
    // s = (1/j)^{1/k} as a power series in τ = q^{1/k}
    let jp = m / k + 2;
    let s = j_inverse_series(jp).nth_root(k as u32, Some(&q(1)))?.rescale(k as u32);
    let mut s_tau = vec![q(0); m];
    for (i, c) in s.coeffs().iter().enumerate() {
        let e = s.val() as usize + i;
        if e < m {
            s_tau[e] = c.clone();
        }
    }
    let g0inv = g[0].recip();
    let unit: Vec<Rational> = g.iter().map(|c| c * &g0inv).collect();
    let root = power::pow_rational(&unit, &Rational::new(1.into(), (k as i64).into()), m);
    let mut out = Vec::new();
    for gamma in gammas {
        // h(u) = γ·u·(g/g0)^{1/k} satisfies h^k = 1/φ
        let mut h = vec![q(0); m];
        for i in 1..m {
            h[i] = &gamma * &root[i - 1];
        }
        let rev = power::revert(&h, m)?;
        let u_tau = power::compose(&rev, &s_tau, m);
        let u = PuiseuxSeries::new(k as u32, 0, u_tau);
        let x = match &cusp.point {
            CuspPoint::Finite(x0) => u.add_const(x0),
            CuspPoint::Infinity => u.inv()?,
        };
        let x = x.truncate_abs(x.val() + prec as i64).simplify();
        let fx = eval_poly(&curve.f, &x);
        let lead = fx.lead().ok_or(QexpError::NoBranch)?.clone();
        let t = squarefree_class(&lead);
        let y = sqrt_series(&fx.scale(&Rational::from_integer(t.clone()).recip()))?;
        out.push(BranchSolution { cusp: cusp.clone(), gamma, x, twist_class: t, y });
    }
    Ok(out)
}

/// φ(x(q)) = j(q) and t·y(q)² = f(x(q)) on the retained precision.
pub fn check_branch(phi: &QRatFunc, curve: &EllipticModel, b: &BranchSolution) -> Result<bool, QexpError> {
    let lhs = eval_ratfunc(phi, &b.x)?;
    let jp = b.x.precision() + 4;
    let (ok_j, _) = agree(&lhs, &j_series(jp));
    let t = Rational::from_integer(b.twist_class.clone());
    let (ok_y, _) = agree(&b.y.mul(&b.y).scale(&t), &eval_poly(&curve.f, &b.x));
    Ok(ok_j && ok_y)
}

/// Outcome of the twist search over all cusps.
#[derive(Clone, Debug, PartialEq)]
pub struct TwistSearch {
    /// Twist classes realizable at each cusp.
    pub per_cusp: Vec<(Cusp, BTreeSet<BigInt>)>,
    /// Classes realizable at every cusp.
    pub common: BTreeSet<BigInt>,
}

impl TwistSearch {
    /// The unique rationalizing twist, if there is exactly one.
    pub fn unique(&self) -> Option<&BigInt> {
        if self.common.len() == 1 {
            self.common.iter().next()
        } else {
            None
        }
    }

    /// d with the canonical field Q(√d) when two classes remain.
    pub fn field_discriminant(&self) -> Option<BigInt> {
        let v: Vec<&BigInt> = self.common.iter().collect();
        if v.len() == 2 {
            Some(crate::exact::integer::squarefree_part(&(v[0] * v[1])))
        } else {
            None
        }
    }
}

pub fn twist_search(phi: &QRatFunc, curve: &EllipticModel, prec: usize) -> Result<TwistSearch, QexpError> {
    let mut per_cusp = Vec::new();
    let mut common: Option<BTreeSet<BigInt>> = None;
    for c in cusps(phi, curve)? {
        let set: BTreeSet<BigInt> = branch_solve(phi, curve, &c, prec)?.into_iter().map(|b| b.twist_class).collect();
        common = Some(match common {
            None => set.clone(),
            Some(s) => s.intersection(&set).cloned().collect(),
        });
        per_cusp.push((c, set));
    }
    let common = common.unwrap_or_default();
    if common.is_empty() {
        return Err(QexpError::NoRationalizingTwist);
    }
    Ok(TwistSearch { per_cusp, common })
}
