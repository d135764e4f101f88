//! Property suites shared by the property tests and the acceptance run.

use canmod_core::cosets::{enumerate_cosets, find_coset, s_matrix, t_matrix, CosetTable};
use canmod_core::exact::rational::{q, qq};
use canmod_core::exact::{PuiseuxSeries, Rational, TowerElement, TowerField};
use canmod_core::fuchsian::QMat2;
use canmod_core::perm::{coset_triple, intermediate_subgroups, Perm, PermTriple};
use canmod_core::quatalg::{membership, order_closure, Algebra, CaseOrders};
use canmod_core::Case;
use proptest::prelude::*;
use proptest::test_runner::{TestCaseError, TestRunner};
use std::sync::OnceLock;

pub const CASES: u32 = 256;

fn config() -> ProptestConfig {
    ProptestConfig { cases: CASES, failure_persistence: None, ..ProptestConfig::default() }
}

fn rational() -> impl Strategy<Value = Rational> {
    (-40i64..=40, 1i64..=12).prop_map(|(n, d)| qq(n, d))
}

fn nonzero_rational() -> impl Strategy<Value = Rational> {
    rational().prop_filter("nonzero", |r| *r != q(0))
}

fn biquadratic() -> &'static TowerField {
    static F: OnceLock<TowerField> = OnceLock::new();
    F.get_or_init(|| {
        let (f, _) = TowerField::rationals().adjoin_sqrt(&TowerElement::int(2)).unwrap();
        let (f, _) = f.adjoin_sqrt(&TowerElement::int(3)).unwrap();
        f
    })
}

fn tower_element() -> impl Strategy<Value = TowerElement> {
    prop::collection::vec(rational(), 4).prop_map(|c| TowerElement::from_coords(biquadratic().clone(), c))
}

fn case() -> impl Strategy<Value = Case> {
    prop::sample::select(Case::ALL.to_vec())
}

fn orders(case: Case) -> &'static CaseOrders {
    static O: OnceLock<Vec<CaseOrders>> = OnceLock::new();
    let all = O.get_or_init(|| Case::ALL.iter().map(|&c| CaseOrders::build(c).unwrap()).collect());
    &all[Case::ALL.iter().position(|&c| c == case).unwrap()]
}

fn cosets(case: Case) -> &'static CosetTable {
    static C: OnceLock<Vec<CosetTable>> = OnceLock::new();
    let all = C.get_or_init(|| Case::ALL.iter().map(|&c| enumerate_cosets(&orders(c).gamma_prime_integral).unwrap()).collect());
    &all[Case::ALL.iter().position(|&c| c == case).unwrap()]
}

/// Runs `test` on `CASES` accepted inputs from `strategy`.
fn check<S: Strategy>(strategy: S, test: impl Fn(S::Value) -> Result<(), TestCaseError>) -> Result<(), String>
where
    S::Value: std::fmt::Debug,
{
    TestRunner::new(config()).run(&strategy, test).map_err(|e| e.to_string())
}

pub fn tower_field_axioms() -> Result<(), String> {
    check((tower_element(), tower_element(), tower_element()), |(a, b, c)| {
        let add = |x: &TowerElement, y: &TowerElement| x.try_add(y).unwrap();
        let mul = |x: &TowerElement, y: &TowerElement| x.try_mul(y).unwrap();
        prop_assert_eq!(add(&a, &b), add(&b, &a));
        prop_assert_eq!(mul(&a, &b), mul(&b, &a));
        prop_assert_eq!(add(&add(&a, &b), &c), add(&a, &add(&b, &c)));
        prop_assert_eq!(mul(&mul(&a, &b), &c), mul(&a, &mul(&b, &c)));
        prop_assert_eq!(mul(&a, &add(&b, &c)), add(&mul(&a, &b), &mul(&a, &c)));
        prop_assert!(add(&a, &a.neg()).is_zero());
        let one = TowerElement::one_in(biquadratic());
        prop_assert_eq!(mul(&a, &one), a.clone());
        if !a.is_zero() {
            prop_assert_eq!(mul(&a, &a.try_inv().unwrap()), one);
            prop_assert_eq!(a.try_div(&a).unwrap(), TowerElement::one_in(biquadratic()));
        }
        Ok(())
    })
}

pub fn rational_field_axioms() -> Result<(), String> {
    use canmod_core::exact::Field;
    check((rational(), rational(), nonzero_rational()), |(a, b, c)| {
        prop_assert_eq!(Field::mul(&Field::add(&a, &b), &c), Field::add(&Field::mul(&a, &c), &Field::mul(&b, &c)));
        prop_assert_eq!(Field::mul(&c, &Field::inv(&c).unwrap()), q(1));
        prop_assert_eq!(Field::sub(&Field::add(&a, &b), &b), a);
        Ok(())
    })
}

pub fn order_closure_is_idempotent() -> Result<(), String> {
    check(prop::collection::vec(-6i64..=6, 8), |entries| {
        let alg = Algebra::matrix_algebra();
        let m = |e: &[i64]| vec![q(e[0]), q(e[1]), q(e[2]), q(e[3])];
        let seed = vec![m(&entries[..4]), m(&entries[4..])];
        let closure = order_closure(&alg, &seed);
        prop_assume!(closure.is_ok(), "seed does not span a full-rank order");
        let o = closure.unwrap();
        prop_assert!(o.is_closed(&alg));
        prop_assert!(seed.iter().all(|v| o.contains(v)));
        let again = order_closure(&alg, o.basis()).unwrap();
        prop_assert_eq!(&again, &o);
        let mut extended = seed.clone();
        extended.push(alg.mul(&seed[0], &seed[1]));
        prop_assert_eq!(order_closure(&alg, &extended).unwrap(), o);
        Ok(())
    })
}

pub fn split_map_is_compatible() -> Result<(), String> {
    check((case(), prop::collection::vec(rational(), 4), prop::collection::vec(rational(), 4)), |(case, u, v)| {
        let o = orders(case);
        let alg = &o.rep.algebra;
        let s = &o.split;
        prop_assert_eq!(s.apply(&alg.mul(&u, &v)), s.apply(&u).mul(&s.apply(&v)));
        let su: Vec<Rational> = u.iter().zip(&v).map(|(a, b)| a + b).collect();
        prop_assert_eq!(s.apply(&su), s.apply(&u).add(&s.apply(&v)));
        prop_assert_eq!(s.apply(&u).trace(), alg.reduced_trace(&u));
        prop_assert_eq!(s.apply(&u).det(), alg.reduced_norm(&u));
        Ok(())
    })
}

pub fn series_root_then_power() -> Result<(), String> {
    let strategy = (1u32..=4, -6i64..=6, 2u32..=5, nonzero_rational(), prop::collection::vec(rational(), 1..10));
    check(strategy, |(width, val, n, c, tail)| {
        let mut coeffs = vec![c.pow(n as i32)];
        coeffs.extend(tail);
        let s = PuiseuxSeries::new(width, val, coeffs);
        let r = s.nth_root(n, Some(&c)).unwrap();
        let back = r.pow(n as i32).unwrap();
        prop_assert!(back.sub(&s).is_zero(), "{} vs {}", back.display_terms("q", 6), s.display_terms("q", 6));
        prop_assert_eq!(back.abs_prec(), s.abs_prec());
        prop_assert_eq!(r.lead(), Some(&c));
        Ok(())
    })
}

pub fn series_power_then_root() -> Result<(), String> {
    let strategy = (1u32..=3, -4i64..=4, 2u32..=4, nonzero_rational(), prop::collection::vec(rational(), 1..8));
    check(strategy, |(width, val, n, c, tail)| {
        let mut coeffs = vec![c.clone()];
        coeffs.extend(tail);
        let s = PuiseuxSeries::new(width, val, coeffs);
        let p = s.pow(n as i32).unwrap();
        let r = p.nth_root(n, Some(&c)).unwrap();
        prop_assert!(r.sub(&s).is_zero());
        Ok(())
    })
}

pub fn coset_action_is_well_defined() -> Result<(), String> {
    let strategy = (case(), "[ST]{0,14}", prop::collection::vec((0usize..64, any::<bool>()), 1..6));
    check(strategy, |(case, word, steps)| {
        let o = &orders(case).gamma_prime_integral;
        let ct = cosets(case);
        let g = word.chars().fold(QMat2::identity(), |m, l| m.mul(&if l == 'S' { s_matrix() } else { t_matrix() }));
        let c = ct.follow(0, &word);
        prop_assert_eq!(find_coset(o, &ct.reps, &g), Some(c));
        // Schreier generators r_i x r_j⁻¹ lie in O¹ and do not move cosets.
        let mut unit = QMat2::identity();
        for (i, use_s) in steps {
            let i = i % ct.len();
            let (x, j) = if use_s { (s_matrix(), ct.s_action.apply(i)) } else { (t_matrix(), ct.t_action.apply(i)) };
            let gen = ct.reps[i].mul(&x).mul(&ct.reps[j].adjugate());
            prop_assert!(membership(&gen, o));
            unit = unit.mul(&gen);
        }
        prop_assert_eq!(find_coset(o, &ct.reps, &unit.mul(&g)), Some(c));
        prop_assert_eq!(find_coset(o, &ct.reps, &g.neg()), Some(c));
        Ok(())
    })
}

pub fn coset_induction_preserves_triples() -> Result<(), String> {
    let strategy = (prop::sample::select(vec![(2usize, 2usize), (2, 3), (3, 2)]), any::<[u32; 2]>(), prop::collection::vec(any::<u32>(), 6));
    check(strategy, |((a, b), top, inner)| {
        let tops = [Perm::from_images(nth_perm(a, top[0] as usize)).unwrap(), Perm::from_images(nth_perm(a, top[1] as usize)).unwrap()];
        let wreath = |k: usize| {
            let images: Vec<u32> = (0..a * b)
                .map(|p| {
                    let (i, j) = (p / b, p % b);
                    let pi = nth_perm(b, inner[k * a + i] as usize);
                    (tops[k].apply(i) * b) as u32 + pi[j]
                })
                .collect();
            Perm::from_images(images).unwrap()
        };
        let (s0, s1) = (wreath(0), wreath(1));
        let sinf = s1.mul(&s0).inverse();
        let t = PermTriple::new(s0, s1, sinf).unwrap();
        prop_assume!(t.is_transitive());
        let g = t.monodromy_group().unwrap();
        let h = g.stabilizer(0);
        let ks = intermediate_subgroups(&g, &h).unwrap();
        prop_assert!(ks.iter().any(|k| k.index_in_g == a));
        for k in &ks {
            let induced = coset_triple(&g, &k.group, &t).unwrap();
            prop_assert_eq!(induced.degree(), k.index_in_g);
            prop_assert!(induced.is_transitive());
            prop_assert!(induced.sinf.mul(&induced.s1).mul(&induced.s0).is_identity());
        }
        Ok(())
    })
}

pub type Suite = fn() -> Result<(), String>;

/// Every suite with its name.
pub const SUITES: &[(&str, Suite)] = &[
    ("exact-field axioms over Q(√2, √3)", tower_field_axioms),
    ("exact-field axioms over Q", rational_field_axioms),
    ("order-closure idempotence", order_closure_is_idempotent),
    ("split-map homomorphism, trace and norm", split_map_is_compatible),
    ("series root-then-power", series_root_then_power),
    ("series power-then-root", series_power_then_root),
    ("coset-action well-definedness", coset_action_is_well_defined),
    ("coset induction preserves product-one and transitivity", coset_induction_preserves_triples),
];

/// The k-th permutation of 0..n in lexicographic order, modulo n!.
fn nth_perm(n: usize, k: usize) -> Vec<u32> {
    let mut pool: Vec<u32> = (0..n as u32).collect();
    let fact: usize = (1..=n).product();
    let mut k = k % fact;
    let mut out = Vec::new();
    for i in (1..=n).rev() {
        let f: usize = (1..i).product();
        out.push(pool.remove(k / f));
        k %= f;
    }
    out
}
