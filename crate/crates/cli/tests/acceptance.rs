//! Prints one pass/fail line per acceptance criterion and exits nonzero if
//! any criterion fails.

#[path = "../../core/tests/support/properties.rs"]
mod properties;

use canmod_cli::app::{build_report, Command};
use canmod_cli::data::ReferenceData;
use canmod_cli::report::{Check, Report, Status};
use canmod_core::cosets::{enumerate_cosets, monodromy_triple};
use canmod_core::exact::rational::q;
use canmod_core::exact::Rational;
use canmod_core::fuchsian::GroupData;
use canmod_core::perm::genus;
use canmod_core::quatalg::CaseOrders;
use canmod_core::Case;
use std::time::Instant;

type Verdict = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Verdict + 'a>);

struct Checks<'a>(&'a Report);

impl<'a> Checks<'a> {
    /// The check with this exact name, else the first whose name starts with it.
    fn find(&self, case: Case, stage: &str, name: &str) -> Result<&'a Check, String> {
        let checks = || self.0.cases.iter().filter(move |c| c.case == case).flat_map(|c| &c.stages).filter(move |s| s.stage == stage).flat_map(|s| &s.checks);
        checks()
            .find(|c| c.name == name)
            .or_else(|| checks().find(|c| c.name.starts_with(name)))
            .ok_or_else(|| format!("case {case}: no {stage} check named {name:?}"))
    }

    fn pass(&self, case: Case, stage: &str, name: &str) -> Result<&'a Check, String> {
        let c = self.find(case, stage, name)?;
        if c.status == Status::Pass {
            Ok(c)
        } else {
            Err(format!("case {case}: {}", c.summary))
        }
    }

    fn value(&self, case: Case, stage: &str, name: &str, expected: &str) -> Result<(), String> {
        let c = self.pass(case, stage, name)?;
        if c.computed == expected {
            Ok(())
        } else {
            Err(format!("case {case}: {stage}: {name}: computed {}, wanted {expected}", c.computed))
        }
    }

    fn stage_passes(&self, case: Case, stage: &str) -> Result<(), String> {
        let s = self.0.cases.iter().filter(|c| c.case == case).flat_map(|c| &c.stages).find(|s| s.stage == stage);
        match s {
            Some(s) if s.status == Status::Pass => Ok(()),
            Some(s) => Err(format!("case {case}: {stage} stage is {}", s.status.label())),
            None => Err(format!("case {case}: no {stage} stage")),
        }
    }
}

const CASES: [Case; 4] = Case::ALL;

fn group_reconstruction(c: &Checks) -> Verdict {
    for case in CASES {
        for name in ["Tr(α)", "Tr(β)", "Tr(αβ)", "Tr([α, β])"] {
            c.pass(case, "reconstruct", name)?;
        }
        c.value(case, "reconstruct", "Tr([α, β])", "-2")?;
        let t = GroupData::for_case(case).commutator().trace();
        if t.as_rational() != Some(q(-2)) {
            return Err(format!("case {case}: commutator trace {t}"));
        }
    }
    Ok("traces of α, β, αβ match for I to IV, commutator trace −2".into())
}

fn span_membership(c: &Checks) -> Verdict {
    for case in CASES {
        c.pass(case, "orders", "largest Γ′ generating an order")?;
    }
    Ok("Γ′ verdicts match for I to IV".into())
}

fn monodromy(c: &Checks) -> Verdict {
    let mut degrees = Vec::new();
    let mut genera = Vec::new();
    for case in CASES {
        c.pass(case, "monodromy", "degree")?;
        c.pass(case, "monodromy", "conjugate to")?;
        c.pass(case, "monodromy", "genus")?;
        let o = CaseOrders::build(case).map_err(|e| e.to_string())?;
        let ct = enumerate_cosets(&o.gamma_prime_integral).map_err(|e| e.to_string())?;
        let t = monodromy_triple(&ct).map_err(|e| e.to_string())?;
        degrees.push(ct.len());
        genera.push(genus(&t).map_err(|e| e.to_string())?);
    }
    if degrees != [12, 24, 12, 2] || genera != [1, 1, 1, 0] {
        return Err(format!("degrees {degrees:?}, genera {genera:?}"));
    }
    Ok("degrees 12, 24, 12, 2 with conjugacy witnesses, genera 1, 1, 1, 0".into())
}

fn case_two_decomposition(c: &Checks) -> Verdict {
    let m = |n| c.pass(Case::II, "monodromy", n);
    m("intermediate subgroups of index 2 over H")?;
    m("degree-12 triple conjugate to the printed one")?;
    m("intermediate subgroups of index 3 over H")?;
    m("printed K contains a point stabilizer")?;
    m("degree-4 triple conjugate to the printed one")?;
    c.value(Case::II, "monodromy", "local monodromy of Z → Y", "(3, 2 1, 2 1)")?;
    c.pass(Case::II, "belyi", "composed genus-0 chain equals the map")?;
    Ok("chain of index 2 and 3, degree-4 triple, profile (3, 2 1, 2 1), composed chain equal".into())
}

fn belyi(c: &Checks) -> Verdict {
    for case in CASES {
        c.pass(case, "belyi", "ramification matches the triple")?;
        let m = c.pass(case, "belyi", "single-coefficient mutants rejected")?;
        let (rejected, total) = m.computed.split_once('/').ok_or("malformed mutant count")?;
        if rejected != total || total.parse::<usize>().map_err(|e| e.to_string())? < 10 {
            return Err(format!("case {case}: mutants {}", m.computed));
        }
    }
    c.value(Case::IV, "belyi", "profile", "(3^2, 2^3, 6^1)")?;
    let printed = c.find(Case::II, "belyi", "map on the printed curve")?;
    Ok(format!(
        "maps for I to IV verified, case IV profile (3^2, 2^3, 6^1), all mutants rejected; case II map verified on the curve after x → x/3, printed curve reported as {}",
        printed.status.label()
    ))
}

fn canonical_models(c: &Checks) -> Verdict {
    let j: [Rational; 4] = [
        q(2).pow(14) * q(31).pow(3) / q(5).pow(3),
        q(2).pow(2) * q(73).pow(3) / q(3).pow(4),
        q(1728),
        q(0),
    ];
    for ((case, j), conductor) in CASES.into_iter().zip(j).zip([20, 24, 32, 36]) {
        let iso = c.pass(case, "qexp", "Q-isomorphic to")?;
        if !iso.details.as_deref().unwrap_or("").contains("(u, r, s, t)") {
            return Err(format!("case {case}: no isomorphism witness"));
        }
        c.value(case, "qexp", "j-invariant", &j.to_string())?;
        c.value(case, "qexp", "conductor", &conductor.to_string())?;
    }
    c.pass(Case::III, "qexp", "Γ model rational over Q")?;
    Ok("models isomorphic with (u, r, s, t) witnesses, j and conductors 20, 24, 32, 36 exact".into())
}

fn q_expansions(c: &Checks) -> Verdict {
    for case in [Case::I, Case::II, Case::III] {
        c.pass(case, "qexp", "x")?;
        c.pass(case, "qexp", "y")?;
    }
    c.value(Case::II, "qexp", "rationalizing twist", "-1")?;
    c.value(Case::III, "qexp", "Γ′ model needs Q(√d), d", "-1")?;
    c.pass(Case::III, "qexp", "Γ model rational over Q")?;
    c.pass(Case::IV, "qexp", "x³ = j(q)")?;
    c.pass(Case::IV, "qexp", "y² = x³ − 1728")?;
    let printed = c.find(Case::IV, "qexp", "printed expansion")?;
    let case_four = match printed.status {
        Status::Pass => "case IV printed row agrees".to_string(),
        Status::Discrepancy => format!("case IV printed row is a documented discrepancy ({})", printed.computed),
        Status::Fail => return Err(printed.summary.clone()),
    };
    if c.0.precision < 16 {
        return Err(format!("precision {} below 16", c.0.precision));
    }
    Ok(format!("printed x and y rows for I to III reproduced, twist −1 detected, Q(i) obstruction reported; {case_four}"))
}

fn modular_data(c: &Checks) -> Verdict {
    let printed: [(Case, &str, &str); 7] = [
        (Case::I, "O4", "4"),
        (Case::I, "O5", "5"),
        (Case::II, "O8", "8"),
        (Case::II, "O3", "3"),
        (Case::III, "O32", "32"),
        (Case::IV, "O4", "4"),
        (Case::IV, "O9", "9"),
    ];
    for (case, name, index) in printed {
        c.value(case, "modular", &format!("[M₂(Z) : {name}]"), index)?;
    }
    let involutions: [&[(&str, &str)]; 4] = [&[("w5", "5")], &[("w2", "2"), ("w3", "3"), ("w6", "6")], &[("w2", "2")], &[]];
    for (((case, index), level), ws) in CASES.into_iter().zip(["20", "24", "32", "36"]).zip(["10", "12", "8", "6"]).zip(involutions) {
        c.value(case, "modular", "[M₂(Z) : 𝒪″]", index)?;
        c.value(case, "modular", "level", level)?;
        c.pass(case, "modular", "level minimal")?;
        for (w, det) in ws {
            c.value(case, "modular", &format!("det {w}"), det)?;
            c.pass(case, "modular", &format!("{w}² scalar"))?;
            c.pass(case, "modular", &format!("{w} normalizes"))?;
        }
        c.stage_passes(case, "modular")?;
    }
    c.pass(Case::IV, "modular", "H normal")?;
    c.value(Case::IV, "modular", "cyclic quotient order", "6")?;
    Ok("indices 4, 5, 8, 3, 32, 4, 9; intersections 20, 24, 32, 36; levels 10, 12, 8, 6; determinants 5; 2, 3, 6; 2; H normal, quotient cyclic of order 6".into())
}

fn property_suites() -> Verdict {
    if properties::CASES < 200 {
        return Err(format!("only {} cases per suite", properties::CASES));
    }
    for (name, suite) in properties::SUITES {
        suite().map_err(|e| format!("{name}: {e}"))?;
    }
    Ok(format!("{} suites, {} cases each", properties::SUITES.len(), properties::CASES))
}

fn main() {
    let start = Instant::now();
    let data = ReferenceData::embedded();
    let report = match build_report(Command::VerifyAll, &Case::ALL, &data, 16, false) {
        Ok(r) => r,
        Err(e) => {
            println!("acceptance: cannot build report: {e}");
            std::process::exit(1);
        }
    };
    let c = Checks(&report);
    let criteria: [Criterion; 9] = [
        ("group reconstruction", Box::new(|| group_reconstruction(&c))),
        ("span membership", Box::new(|| span_membership(&c))),
        ("monodromy", Box::new(|| monodromy(&c))),
        ("case II decomposition", Box::new(|| case_two_decomposition(&c))),
        ("Belyi verification", Box::new(|| belyi(&c))),
        ("canonical models", Box::new(|| canonical_models(&c))),
        ("q-expansions", Box::new(|| q_expansions(&c))),
        ("orders, levels and involutions", Box::new(|| modular_data(&c))),
        ("property suites", Box::new(property_suites)),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(note) => println!("criterion {}: PASS {name}: {note}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL {name}: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} of 9 criteria pass ({:.1} s)", 9 - failed, start.elapsed().as_secs_f64());
    if failed > 0 {
        std::process::exit(1);
    }
}
