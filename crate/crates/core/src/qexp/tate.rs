//! Tate's algorithm: Kodaira type, conductor exponent and local minimality
//! at a prime, for integral Weierstrass models.

use super::weierstrass::{Isomorphism, WeierstrassCurve};
use crate::exact::integer::{factor, inv_mod};
use crate::exact::rational::{qi, Rational};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Kodaira {
    I(u32),
    II,
    III,
    IV,
    IStar(u32),
    IVStar,
    IIIStar,
    IIStar,
}

impl fmt::Display for Kodaira {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Kodaira::I(n) => write!(f, "I{n}"),
            Kodaira::II => write!(f, "II"),
            Kodaira::III => write!(f, "III"),
            Kodaira::IV => write!(f, "IV"),
            Kodaira::IStar(n) => write!(f, "I{n}*"),
            Kodaira::IVStar => write!(f, "IV*"),
            Kodaira::IIIStar => write!(f, "III*"),
            Kodaira::IIStar => write!(f, "II*"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LocalData {
    pub p: BigInt,
    pub kodaira: Kodaira,
    /// Exponent of p in the conductor.
    pub conductor_exponent: u32,
    /// Number of components of the special fibre.
    pub components: u32,
    /// v_p of the minimal discriminant.
    pub min_disc_valuation: u32,
    /// A model minimal at p, integral everywhere.
    pub model: WeierstrassCurve,
}

fn int(r: &Rational) -> BigInt {
    assert!(r.is_integer(), "model is not integral");
    r.numer().clone()
}

fn val(n: &BigInt, p: &BigInt) -> u32 {
    if n.is_zero() {
        return u32::MAX;
    }
    let mut n = n.clone();
    let mut v = 0;
    while (&n % p).is_zero() {
        n /= p;
        v += 1;
    }
    v
}

fn md(a: &BigInt, m: &BigInt) -> BigInt {
    a.mod_floor(m)
}

fn divides(p: &BigInt, a: &BigInt) -> bool {
    (a % p).is_zero()
}

fn rst(e: &WeierstrassCurve, r: &BigInt, s: &BigInt, t: &BigInt) -> WeierstrassCurve {
    e.transform(&Isomorphism { u: Rational::one(), r: qi(r), s: qi(s), t: qi(t) })
}

struct Ints {
    a1: BigInt,
    a2: BigInt,
    a3: BigInt,
    a4: BigInt,
    a6: BigInt,
    b2: BigInt,
    b6: BigInt,
    b8: BigInt,
}

fn ints(e: &WeierstrassCurve) -> Ints {
    let [b2, _, b6, b8] = e.b_invariants();
    Ints { a1: int(&e.a1), a2: int(&e.a2), a3: int(&e.a3), a4: int(&e.a4), a6: int(&e.a6), b2: int(&b2), b6: int(&b6), b8: int(&b8) }
}

/// A singular point of the reduction mod p, as integers (x0, y0).
fn singular_point(e: &WeierstrassCurve, p: &BigInt) -> (BigInt, BigInt) {
    let a = ints(e);
    if *p >= BigInt::from(200) {
        let (c4, c6) = (int(&e.c4()), int(&e.c6()));
        let twelve = BigInt::from(12);
        let r = if divides(p, &c4) {
            md(&(-&a.b2 * inv_mod(&twelve, p)), p)
        } else {
            md(&(-(&c6 + &a.b2 * &c4) * inv_mod(&(&twelve * &c4), p)), p)
        };
        let t = md(&(-(&a.a1 * &r + &a.a3) * inv_mod(&BigInt::from(2), p)), p);
        return (r, t);
    }
    let n = p.clone();
    let mut x = BigInt::zero();
    while x < n {
        let mut y = BigInt::zero();
        while y < n {
            let f = &y * &y + &a.a1 * &x * &y + &a.a3 * &y - &x * &x * &x - &a.a2 * &x * &x - &a.a4 * &x - &a.a6;
            let fx = &a.a1 * &y - BigInt::from(3) * &x * &x - BigInt::from(2) * &a.a2 * &x - &a.a4;
            let fy = BigInt::from(2) * &y + &a.a1 * &x + &a.a3;
            if divides(p, &f) && divides(p, &fx) && divides(p, &fy) {
                return (x, y);
            }
            y += 1;
        }
        x += 1;
    }
    unreachable!("a curve with bad reduction has a singular point")
}

/// Double root mod p of a·X² + b·X + c, a a unit, discriminant ≡ 0.
fn quad_double_root(a: &BigInt, b: &BigInt, c: &BigInt, p: &BigInt) -> BigInt {
    if *p == BigInt::from(2) {
        md(&(c * a), p)
    } else {
        md(&(-b * inv_mod(&(BigInt::from(2) * a), p)), p)
    }
}

/// Local data at p of an integral model.
pub fn tate(e: &WeierstrassCurve, p: &BigInt) -> LocalData {
    assert!(e.is_integral(), "Tate's algorithm needs an integral model");
    let two = BigInt::from(2);
    let three = BigInt::from(3);
    let p2 = p * p;
    let p3 = &p2 * p;
    let mut e = e.clone();
    loop {
        let n = val(&int(&e.discriminant()), p);
        let done = |kodaira, components: u32, f: u32, model: WeierstrassCurve| LocalData {
            p: p.clone(),
            kodaira,
            conductor_exponent: f,
            components,
            min_disc_valuation: n,
            model,
        };
        if n == 0 {
            return done(Kodaira::I(0), 1, 0, e);
        }
        let (x0, y0) = singular_point(&e, p);
        e = rst(&e, &x0, &BigInt::zero(), &y0);
        let a = ints(&e);
        if !divides(p, &a.b2) {
            return done(Kodaira::I(n), n, 1, e);
        }
        if val(&a.a6, p) < 2 {
            return done(Kodaira::II, 1, n, e);
        }
        if val(&a.b8, p) < 3 {
            return done(Kodaira::III, 2, n - 1, e);
        }
        if val(&a.b6, p) < 3 {
            return done(Kodaira::IV, 3, n - 2, e);
        }
        // p | a1, a2; p² | a3, a4; p³ | a6
        let (s, t) = if *p <= three {
            let mut found = None;
            let mut s = BigInt::zero();
            'search: while s < *p {
                let mut t = BigInt::zero();
                while t < p2 {
                    let c = ints(&rst(&e, &BigInt::zero(), &s, &t));
                    if divides(p, &c.a1) && divides(p, &c.a2) && divides(&p2, &c.a3) && divides(&p2, &c.a4) && divides(&p3, &c.a6) {
                        found = Some((s.clone(), t.clone()));
                        break 'search;
                    }
                    t += 1;
                }
                s += 1;
            }
            found.expect("normalization exists")
        } else {
            let h = inv_mod(&two, p);
            (md(&(-&a.a1 * &h), p), md(&(-&a.a3 * inv_mod(&two, &p2)), &p2))
        };
        e = rst(&e, &BigInt::zero(), &s, &t);
        let a = ints(&e);
        let (b, c, d) = (&a.a2 / p, &a.a4 / &p2, &a.a6 / &p3);
        let disc = &b * &b * &c * &c - BigInt::from(4) * &c * &c * &c - BigInt::from(4) * &b * &b * &b * &d - BigInt::from(27) * &d * &d + BigInt::from(18) * &b * &c * &d;
        if !divides(p, &disc) {
            return done(Kodaira::IStar(0), 5, n - 4, e);
        }
        let x = BigInt::from(3) * &c - &b * &b;
        if !divides(p, &x) {
            // simple root and double root
            let r = if *p == two { md(&c, p) } else { md(&((&b * &c - BigInt::from(9) * &d) * inv_mod(&(&two * &x), p)), p) };
            e = rst(&e, &(p * r), &BigInt::zero(), &BigInt::zero());
            let (mut ix, mut iy) = (3u32, 3u32);
            let (mut mx, mut my) = (p2.clone(), p2.clone());
            loop {
                let a = ints(&e);
                let xa3 = &a.a3 / &my;
                let xa6 = &a.a6 / (&mx * &my);
                if !divides(p, &(&xa3 * &xa3 + BigInt::from(4) * &xa6)) {
                    break;
                }
                let t = &my * quad_double_root(&BigInt::one(), &xa3, &-&xa6, p);
                e = rst(&e, &BigInt::zero(), &BigInt::zero(), &t);
                my *= p;
                iy += 1;
                let a = ints(&e);
                let xa2 = &a.a2 / p;
                let xa4 = &a.a4 / (p * &mx);
                let xa6 = &a.a6 / (&mx * &my);
                if !divides(p, &(&xa4 * &xa4 - BigInt::from(4) * &xa2 * &xa6)) {
                    break;
                }
                let r = &mx * quad_double_root(&xa2, &xa4, &xa6, p);
                e = rst(&e, &r, &BigInt::zero(), &BigInt::zero());
                mx *= p;
                ix += 1;
            }
            let m = ix + iy - 5;
            return done(Kodaira::IStar(m), 5 + m, n - 4 - m, e);
        }
        // triple root
        let r = if *p == two {
            md(&b, p)
        } else if *p == three {
            md(&-&d, p)
        } else {
            md(&(-&b * inv_mod(&three, p)), p)
        };
        e = rst(&e, &(p * r), &BigInt::zero(), &BigInt::zero());
        let a = ints(&e);
        let (a32, a64) = (&a.a3 / &p2, &a.a6 / (&p2 * &p2));
        if !divides(p, &(&a32 * &a32 + BigInt::from(4) * &a64)) {
            return done(Kodaira::IVStar, 7, n - 6, e);
        }
        let t = &p2 * quad_double_root(&BigInt::one(), &a32, &-&a64, p);
        e = rst(&e, &BigInt::zero(), &BigInt::zero(), &t);
        let a = ints(&e);
        if val(&a.a4, p) < 4 {
            return done(Kodaira::IIIStar, 8, n - 7, e);
        }
        if val(&a.a6, p) < 6 {
            return done(Kodaira::IIStar, 9, n - 8, e);
        }
        // not minimal at p
        e = e.transform(&Isomorphism::scaling(qi(p)));
    }
}

/// Conductor, local data at each bad prime, and a global minimal model.
#[derive(Clone, Debug)]
pub struct ConductorData {
    pub conductor: BigInt,
    pub local: Vec<LocalData>,
    pub minimal_model: WeierstrassCurve,
}

pub fn tate_conductor(e: &WeierstrassCurve) -> ConductorData {
    let (mut model, _) = e.integral_model();
    let disc = int(&model.discriminant());
    let mut conductor = BigInt::one();
    let mut local = Vec::new();
    for (p, _) in factor(&disc.abs()) {
        let ld = tate(&model, &p);
        model = ld.model.clone();
        conductor *= num_traits::pow(p.clone(), ld.conductor_exponent as usize);
        local.push(ld);
    }
    ConductorData { conductor, local, minimal_model: reduced_model(&model) }
}

/// Normalize a1, a3 ∈ {0, 1} and a2 ∈ {−1, 0, 1} on an integral model.
pub fn reduced_model(e: &WeierstrassCurve) -> WeierstrassCurve {
    let a = ints(e);
    let two = BigInt::from(2);
    let three = BigInt::from(3);
    let s = -Integer::div_floor(&a.a1, &two);
    let a2s = &a.a2 - &s * &a.a1 - &s * &s;
    let r = -Integer::div_floor(&(&a2s + BigInt::one()), &three);
    let t = -Integer::div_floor(&(&a.a3 + &r * &a.a1), &two);
    rst(e, &r, &s, &t)
}
