//! j(q) = E₄³/Δ as a Laurent series in q.

use crate::exact::rational::{q, Rational};
use crate::exact::series::{power, PuiseuxSeries};

/// σ₃(n).
fn sigma3(n: u64) -> u64 {
    (1..=n).filter(|d| n.is_multiple_of(*d)).map(|d| d * d * d).sum()
}

/// E₄ = 1 + 240 Σ σ₃(n) qⁿ to n terms.
pub fn e4_coeffs(n: usize) -> Vec<Rational> {
    (0..n).map(|k| if k == 0 { q(1) } else { q(240 * sigma3(k as u64) as i64) }).collect()
}

/// ∏ (1 − qⁿ)²⁴ to n terms.
pub fn eta24_coeffs(n: usize) -> Vec<Rational> {
    let mut p = vec![q(0); n];
    if n > 0 {
        p[0] = q(1);
    }
    for k in 1..n {
        let mut f = vec![q(0); n];
        f[0] = q(1);
        f[k] = q(-1);
        p = power::mul(&p, &f, n);
    }
    let mut acc = vec![q(0); n];
    if n > 0 {
        acc[0] = q(1);
    }
    for _ in 0..24 {
        acc = power::mul(&acc, &p, n);
    }
    acc
}

/// j(q) = q⁻¹ + 744 + 196884 q + …, with `prec` known coefficients.
pub fn j_series(prec: usize) -> PuiseuxSeries<Rational> {
    assert!(prec >= 2, "j_series needs prec ≥ 2");
    let e4 = e4_coeffs(prec);
    let e4c = power::mul(&power::mul(&e4, &e4, prec), &e4, prec);
    let inv = power::inv(&eta24_coeffs(prec), prec).expect("unit constant term");
    PuiseuxSeries::new(1, -1, power::mul(&e4c, &inv, prec))
}

/// 1/j(q) = q − 744q² + …, with `prec` known coefficients.
pub fn j_inverse_series(prec: usize) -> PuiseuxSeries<Rational> {
    j_series(prec).inv().expect("j has a leading term")
}
