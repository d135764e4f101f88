//! 2-isogenies with kernel (0, 0) and the duplication map.

use super::weierstrass::WeierstrassCurve;
use super::QexpError;
use crate::exact::poly::QPoly;
use crate::exact::ratfunc::QRatFunc;
use crate::exact::rational::q;
use num_traits::Zero;

/// y² = x³ + ax² + bx → y² = x³ − 2ax² + (a² − 4b)x, with the x-map.
#[derive(Clone, Debug, PartialEq)]
pub struct TwoIsogeny {
    pub domain: WeierstrassCurve,
    pub codomain: WeierstrassCurve,
    /// x ↦ (x² + ax + b)/x.
    pub x_map: QRatFunc,
    /// y ↦ y·(x² − b)/x², the factor multiplying y.
    pub y_factor: QRatFunc,
}

pub fn velu_2isogeny(e: &WeierstrassCurve) -> Result<TwoIsogeny, QexpError> {
    let f = e.cubic().ok_or(QexpError::NotShortForm)?;
    if !f.coeff(0).is_zero() {
        return Err(QexpError::KernelNotOnCurve);
    }
    let (a, b) = (f.coeff(2), f.coeff(1));
    let codomain = WeierstrassCurve::short(-q(2) * &a, &a * &a - q(4) * &b, q(0))?;
    let x_map = QRatFunc::new(QPoly::new(vec![b.clone(), a, q(1)]), QPoly::x()).expect("x ≠ 0");
    let y_factor = QRatFunc::new(QPoly::new(vec![-b, q(0), q(1)]), QPoly::new(vec![q(0), q(0), q(1)])).expect("x² ≠ 0");
    Ok(TwoIsogeny { domain: e.clone(), codomain, x_map, y_factor })
}

/// x(2P) on y² = f(x), f monic cubic: (x⁴ − 2bx² − 8cx + b² − 4ac)/(4f(x)).
pub fn duplication_x(e: &WeierstrassCurve) -> Result<QRatFunc, QexpError> {
    let f = e.cubic().ok_or(QexpError::NotShortForm)?;
    let (a, b, c) = (f.coeff(2), f.coeff(1), f.coeff(0));
    let num = QPoly::new(vec![&b * &b - q(4) * &a * &c, -q(8) * &c, -q(2) * &b, q(0), q(1)]);
    Ok(QRatFunc::new(num, f.scale(&q(4))).expect("f ≠ 0"))
}

/// The x-map of the dual isogeny composed with the isogeny, as a function on the domain.
pub fn dual_composite_x(iso: &TwoIsogeny) -> Result<QRatFunc, QexpError> {
    let dual = velu_2isogeny(&iso.codomain)?;
    Ok(dual.x_map.compose(&iso.x_map))
}
