//! From the Belyi map of X(Γ′) to the canonical model of X(Γ) over Q,
//! carrying the q-expansions of x and y along.

use super::branch::{branch_solve, check_branch, cusps, eval_poly, eval_ratfunc, sqrt_series, twist_search, BranchSolution, CuspPoint, QSeries, TwistSearch};
use super::isogeny::{duplication_x, velu_2isogeny};
use super::jseries::j_series;
use super::weierstrass::WeierstrassCurve;
use super::QexpError;
use crate::belyi::{case_map, EllipticModel};
use crate::exact::poly::QPoly;
use crate::exact::rational::{q, squarefree_class, Rational};
use crate::Case;
use num_bigint::BigInt;
use num_traits::One;

pub const DEFAULT_PRECISION: usize = 16;

/// A curve y² = f(x) with monic cubic f and the cusp expansions x(q), y(q).
#[derive(Clone, Debug, PartialEq)]
pub struct CuspModel {
    pub curve: WeierstrassCurve,
    pub x: QSeries,
    pub y: QSeries,
}

impl CuspModel {
    /// y² = f(x) holds as series.
    pub fn consistent(&self) -> bool {
        let f = self.curve.cubic().expect("short form");
        self.y.mul(&self.y).sub(&eval_poly(&f, &self.x)).is_zero()
    }
}

/// Move a cusp at a root x0 of f to ∞ by X = 1/(x − x0): Y² = X⁴ f(x0 + 1/X).
pub fn move_cusp_to_infinity(f: &QPoly, x0: &Rational) -> QPoly {
    let shifted = f.compose(&QPoly::new(vec![x0.clone(), q(1)]));
    let d = 4usize;
    let mut c = vec![q(0); d + 1];
    for (i, a) in shifted.coeffs().iter().enumerate() {
        c[d - i] = a.clone();
    }
    QPoly::new(c)
}

/// Rescale x so the series is monic: x = c·x̃, ỹ² = F(c x̃)/(ℓc³).
/// Returns the monic cubic, the series x̃ and the square class of ℓc.
pub fn monic_normalize(f: &QPoly, x: &QSeries) -> Result<(QPoly, QSeries, BigInt), QexpError> {
    if f.deg() != 3 {
        return Err(QexpError::NotMonicCubic);
    }
    let c = x.lead().ok_or(QexpError::NoBranch)?.clone();
    let l = f.lc();
    let scale = (&l * &c * &c * &c).recip();
    let g = f.compose(&QPoly::new(vec![q(0), c.clone()])).scale(&scale);
    Ok((g, x.scale(&c.recip()), squarefree_class(&(&l * &c))))
}

fn cusp_model(f: &QPoly, x: QSeries) -> Result<CuspModel, QexpError> {
    let curve = WeierstrassCurve::from_cubic(f)?;
    let y = sqrt_series(&eval_poly(f, &x))?;
    Ok(CuspModel { curve, x, y })
}

/// Which isogeny leads from X(Γ′) to X(Γ).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GammaStep {
    /// Γ′ = Γ.
    None,
    /// Quotient by the 2-torsion point (0, 0).
    Velu,
    /// Quotient by all of E[2]: the duplication map.
    Duplication,
}

pub fn gamma_step(case: Case) -> GammaStep {
    match case {
        Case::I | Case::III => GammaStep::Velu,
        Case::II => GammaStep::Duplication,
        Case::IV => GammaStep::None,
    }
}

/// Everything the q-expansion pipeline produces for one case.
#[derive(Clone, Debug)]
pub struct CanonicalModel {
    pub case: Case,
    pub belyi_curve: EllipticModel,
    pub twists: TwistSearch,
    /// Branches at the widest cusp used for the models.
    pub branches: Vec<BranchSolution>,
    /// Distinct monic Γ′-models, one per usable branch.
    pub gamma_prime_models: Vec<CuspModel>,
    /// Twist class of each Γ′-model relative to the Belyi curve.
    pub gamma_prime_twists: Vec<BigInt>,
    /// Distinct Γ-models obtained from the Γ′-models.
    pub gamma_models: Vec<CuspModel>,
    pub step: GammaStep,
}

impl CanonicalModel {
    /// Γ′-stage canonical over Q: a single rationalizing twist.
    pub fn gamma_prime_rational(&self) -> bool {
        self.twists.unique().is_some()
    }

    /// Γ-stage canonical over Q: every branch leads to the same model.
    pub fn gamma_rational(&self) -> bool {
        self.gamma_models.len() == 1
    }

    pub fn model(&self) -> &CuspModel {
        &self.gamma_models[0]
    }
}

fn apply_step(step: GammaStep, m: &CuspModel) -> Result<CuspModel, QexpError> {
    let (f, x) = match step {
        GammaStep::None => return Ok(m.clone()),
        GammaStep::Velu => {
            let iso = velu_2isogeny(&m.curve)?;
            (iso.codomain.cubic().expect("short"), eval_ratfunc(&iso.x_map, &m.x)?)
        }
        GammaStep::Duplication => (m.curve.cubic().expect("short"), eval_ratfunc(&duplication_x(&m.curve)?, &m.x)?),
    };
    let (g, xn, t) = monic_normalize(&f, &x)?;
    if !t.is_one() {
        return Err(QexpError::NotASquare);
    }
    cusp_model(&g, xn)
}

/// The full pipeline for one case.
pub fn assemble_canonical_model(case: Case, prec: usize) -> Result<CanonicalModel, QexpError> {
    let bm = case_map(case);
    if !bm.map.is_function_of_x() {
        return Err(QexpError::NotAFunctionOfX);
    }
    let phi = bm.map.a.clone();
    let curve = bm.curve.clone();
    let twists = twist_search(&phi, &curve, prec)?;
    let main = cusps(&phi, &curve)?.into_iter().next().ok_or(QexpError::NoBranch)?;
    let branches = branch_solve(&phi, &curve, &main, prec)?;
    for b in &branches {
        if !check_branch(&phi, &curve, b)? {
            return Err(QexpError::InconsistentBranch);
        }
    }
    let mut gamma_prime_models: Vec<CuspModel> = Vec::new();
    let mut gamma_prime_twists = Vec::new();
    for b in branches.iter().filter(|b| twists.common.contains(&b.twist_class)) {
        let (big_f, big_x) = match &main.point {
            CuspPoint::Infinity => (curve.f.clone(), b.x.clone()),
            CuspPoint::Finite(x0) => (move_cusp_to_infinity(&curve.f, x0), b.x.add_const(&-x0.clone()).inv()?),
        };
        let (g, xn, t) = monic_normalize(&big_f, &big_x)?;
        let m = cusp_model(&g, xn)?;
        if !gamma_prime_models.contains(&m) {
            gamma_prime_models.push(m);
            gamma_prime_twists.push(t);
        }
    }
    let step = gamma_step(case);
    let mut gamma_models: Vec<CuspModel> = Vec::new();
    for m in &gamma_prime_models {
        let g = apply_step(step, m)?;
        if !gamma_models.contains(&g) {
            gamma_models.push(g);
        }
    }
    Ok(CanonicalModel { case, belyi_curve: curve, twists, branches, gamma_prime_models, gamma_prime_twists, gamma_models, step })
}

/// The two normalizations available for case IV on y² = x³ − 1728.
#[derive(Clone, Debug)]
pub struct CaseFourCandidates {
    /// j = x³: x = j^{1/3}, y = (j − 1728)^{1/2}.
    pub forced: CuspModel,
    /// 0 and 1728 exchanged: x = (j + 1728)^{1/3}, y = j^{1/2}.
    pub exchanged: CuspModel,
}

pub fn case_four_candidates(prec: usize) -> Result<CaseFourCandidates, QexpError> {
    let curve = WeierstrassCurve::from_ints([0, 0, 0, 0, -1728])?;
    let j = j_series(3 * prec + 4);
    let root3 = |s: &QSeries| -> Result<QSeries, QexpError> {
        let r = s.nth_root(3, Some(&q(1)))?;
        Ok(r.truncate_abs(r.val() + prec as i64))
    };
    let fx = root3(&j)?;
    let fy = sqrt_series(&j.add_const(&q(-1728)))?;
    let ex = root3(&j.add_const(&q(1728)))?;
    let ey = sqrt_series(&j)?;
    let t = |s: QSeries| s.truncate_abs(s.val() + prec as i64);
    Ok(CaseFourCandidates {
        forced: CuspModel { curve: curve.clone(), x: fx, y: t(fy) },
        exchanged: CuspModel { curve, x: ex, y: t(ey) },
    })
}

/// Terms of a series as (exponent, coefficient), nonzero ones only.
pub fn nonzero_terms(s: &QSeries) -> Vec<(Rational, Rational)> {
    s.terms().into_iter().filter(|(_, c)| *c != q(0)).collect()
}
