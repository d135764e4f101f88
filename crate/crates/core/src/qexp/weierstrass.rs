//! Weierstrass curves over Q, their invariants and isomorphisms.

use super::QexpError;
use crate::exact::poly::QPoly;
use crate::exact::rational::{q, rational_nth_root, Rational};
use num_traits::{One, Zero};
use std::fmt;

/// y² + a1 xy + a3 y = x³ + a2 x² + a4 x + a6.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeierstrassCurve {
    pub a1: Rational,
    pub a2: Rational,
    pub a3: Rational,
    pub a4: Rational,
    pub a6: Rational,
}

/// x = u²x′ + r, y = u³y′ + s u²x′ + t.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Isomorphism {
    pub u: Rational,
    pub r: Rational,
    pub s: Rational,
    pub t: Rational,
}

impl Isomorphism {
    pub fn identity() -> Self {
        Isomorphism { u: q(1), r: q(0), s: q(0), t: q(0) }
    }

    pub fn scaling(u: Rational) -> Self {
        Isomorphism { u, r: q(0), s: q(0), t: q(0) }
    }

    /// First self, then o.
    pub fn then(&self, o: &Isomorphism) -> Isomorphism {
        let u2 = &self.u * &self.u;
        Isomorphism {
            u: &self.u * &o.u,
            r: &self.r + &u2 * &o.r,
            s: &self.s + &self.u * &o.s,
            t: &self.t + &u2 * &self.s * &o.r + &u2 * &self.u * &o.t,
        }
    }

    pub fn inverse(&self) -> Isomorphism {
        let u = &self.u;
        Isomorphism {
            u: u.recip(),
            r: -&self.r / (u * u),
            s: -&self.s / u,
            t: (&self.r * &self.s - &self.t) / (u * u * u),
        }
    }
}

impl fmt::Display for Isomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(u, r, s, t) = ({}, {}, {}, {})", self.u, self.r, self.s, self.t)
    }
}

impl WeierstrassCurve {
    pub fn new(a: [Rational; 5]) -> Result<Self, QexpError> {
        let [a1, a2, a3, a4, a6] = a;
        let e = WeierstrassCurve { a1, a2, a3, a4, a6 };
        if e.discriminant().is_zero() {
            return Err(QexpError::SingularCurve);
        }
        Ok(e)
    }

    pub fn from_ints(a: [i64; 5]) -> Result<Self, QexpError> {
        Self::new(a.map(q))
    }

    /// y² = x³ + a x² + b x + c.
    pub fn short(a: Rational, b: Rational, c: Rational) -> Result<Self, QexpError> {
        Self::new([q(0), a, q(0), b, c])
    }

    /// y² = f(x) for a monic cubic f.
    pub fn from_cubic(f: &QPoly) -> Result<Self, QexpError> {
        if f.deg() != 3 || !f.lc().is_one() {
            return Err(QexpError::NotMonicCubic);
        }
        Self::short(f.coeff(2), f.coeff(1), f.coeff(0))
    }

    pub fn a_invariants(&self) -> [Rational; 5] {
        [self.a1.clone(), self.a2.clone(), self.a3.clone(), self.a4.clone(), self.a6.clone()]
    }

    /// x³ + a2 x² + a4 x + a6 when a1 = a3 = 0.
    pub fn cubic(&self) -> Option<QPoly> {
        (self.a1.is_zero() && self.a3.is_zero()).then(|| QPoly::new(vec![self.a6.clone(), self.a4.clone(), self.a2.clone(), q(1)]))
    }

    pub fn b_invariants(&self) -> [Rational; 4] {
        let (a1, a2, a3, a4, a6) = (&self.a1, &self.a2, &self.a3, &self.a4, &self.a6);
        let b2 = a1 * a1 + q(4) * a2;
        let b4 = q(2) * a4 + a1 * a3;
        let b6 = a3 * a3 + q(4) * a6;
        let b8 = a1 * a1 * a6 + q(4) * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
        [b2, b4, b6, b8]
    }

    pub fn c4(&self) -> Rational {
        let [b2, b4, _, _] = self.b_invariants();
        &b2 * &b2 - q(24) * b4
    }

    pub fn c6(&self) -> Rational {
        let [b2, b4, b6, _] = self.b_invariants();
        -(&b2 * &b2 * &b2) + q(36) * &b2 * &b4 - q(216) * b6
    }

    pub fn discriminant(&self) -> Rational {
        let [b2, b4, b6, b8] = self.b_invariants();
        -(&b2 * &b2 * &b8) - q(8) * &b4 * &b4 * &b4 - q(27) * &b6 * &b6 + q(9) * &b2 * &b4 * &b6
    }

    pub fn j_invariant(&self) -> Rational {
        let c4 = self.c4();
        &c4 * &c4 * &c4 / self.discriminant()
    }

    /// c4³ − c6² = 1728Δ.
    pub fn invariants_consistent(&self) -> bool {
        let (c4, c6) = (self.c4(), self.c6());
        &c4 * &c4 * &c4 - &c6 * &c6 == q(1728) * self.discriminant()
    }

    /// The curve in the coordinates (x′, y′) of the isomorphism.
    pub fn transform(&self, iso: &Isomorphism) -> WeierstrassCurve {
        let Isomorphism { u, r, s, t } = iso;
        let (a1, a2, a3, a4, a6) = (&self.a1, &self.a2, &self.a3, &self.a4, &self.a6);
        let u2 = u * u;
        let u3 = &u2 * u;
        WeierstrassCurve {
            a1: (a1 + q(2) * s) / u,
            a2: (a2 - s * a1 + q(3) * r - s * s) / &u2,
            a3: (a3 + r * a1 + q(2) * t) / &u3,
            a4: (a4 - s * a3 + q(2) * r * a2 - (t + r * s) * a1 + q(3) * r * r - q(2) * s * t) / (&u2 * &u2),
            a6: (a6 + r * a4 + r * r * a2 + r * r * r - t * a3 - t * t - r * t * a1) / (&u3 * &u3),
        }
    }

    /// Isomorphism to y² = x³ − 27c4 x − 54c6.
    pub fn to_short_iso(&self) -> Isomorphism {
        let [b2, _, _, _] = self.b_invariants();
        let r = -b2 / q(12);
        let t = -(&self.a1 * &r + &self.a3) / q(2);
        Isomorphism { u: Rational::new(1.into(), 6.into()), r, s: -&self.a1 / q(2), t }
    }

    /// Quadratic twist of a model with a1 = a3 = 0: y² = x³ + t a2 x² + t² a4 x + t³ a6.
    pub fn quadratic_twist(&self, t: &Rational) -> Result<WeierstrassCurve, QexpError> {
        if !(self.a1.is_zero() && self.a3.is_zero()) {
            return Err(QexpError::NotShortForm);
        }
        Self::short(t * &self.a2, t * t * &self.a4, t * t * t * &self.a6)
    }

    /// Clear denominators by scaling with 1/d.
    pub fn integral_model(&self) -> (WeierstrassCurve, Isomorphism) {
        let mut d = num_bigint::BigInt::one();
        for a in self.a_invariants() {
            d = num_integer::Integer::lcm(&d, a.denom());
        }
        let iso = Isomorphism::scaling(Rational::new(1.into(), d));
        (self.transform(&iso), iso)
    }

    pub fn is_integral(&self) -> bool {
        self.a_invariants().iter().all(|a| a.is_integer())
    }
}

impl fmt::Display for WeierstrassCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut lhs = "y^2".to_string();
        let term = |c: &Rational, mon: &str| -> String {
            if c.is_zero() {
                return String::new();
            }
            let (sign, mag) = if *c < q(0) { (" - ", -c.clone()) } else { (" + ", c.clone()) };
            if mag.is_one() && !mon.is_empty() {
                format!("{sign}{mon}")
            } else if mon.is_empty() {
                format!("{sign}{mag}")
            } else {
                format!("{sign}{mag}*{mon}")
            }
        };
        lhs.push_str(&term(&self.a1, "x*y"));
        lhs.push_str(&term(&self.a3, "y"));
        let mut rhs = "x^3".to_string();
        rhs.push_str(&term(&self.a2, "x^2"));
        rhs.push_str(&term(&self.a4, "x"));
        rhs.push_str(&term(&self.a6, ""));
        write!(f, "{lhs} = {rhs}")
    }
}

/// A Q-isomorphism E1 → E2 if one exists, verified by transforming E1.
pub fn isomorphism_test(e1: &WeierstrassCurve, e2: &WeierstrassCurve) -> Option<Isomorphism> {
    if e1.j_invariant() != e2.j_invariant() {
        return None;
    }
    let (c41, c61, c42, c62) = (e1.c4(), e1.c6(), e2.c4(), e2.c6());
    // scaling u0 between the short models: c4₂ = c4₁/u⁴, c6₂ = c6₁/u⁶
    let us: Vec<Rational> = if c41.is_zero() {
        rational_nth_root(&(&c61 / &c62), 6).into_iter().collect()
    } else if c61.is_zero() {
        rational_nth_root(&(&c41 / &c42), 4).into_iter().collect()
    } else {
        let u2 = (&c61 / &c62) / (&c41 / &c42);
        rational_nth_root(&u2, 2).into_iter().collect()
    };
    for u0 in us {
        for u in [u0.clone(), -u0.clone()] {
            let iso = e1.to_short_iso().then(&Isomorphism::scaling(u)).then(&e2.to_short_iso().inverse());
            if e1.transform(&iso) == *e2 {
                return Some(iso);
            }
        }
    }
    None
}
