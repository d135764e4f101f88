//! Reads the printed tables and maps from the LaTeX source in the workspace
//! root and compares them with the embedded reference data and with the
//! computed values.

use canmod_cli::app::{build_report, Command};
use canmod_cli::data::{ReferenceData, TripleText};
use canmod_cli::report::{Report, Status};
use canmod_core::belyi::{parse_curve, parse_map};
use canmod_core::exact::rational::{parse_rational, q};
use canmod_core::exact::Rational;
use canmod_core::fuchsian::TraceTriple;
use canmod_core::perm::{triple_conjugacy, PermTriple};
use canmod_core::quatalg::{span_membership, CaseOrders};
use canmod_core::Case;
use std::sync::OnceLock;

const SOURCE: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/../../paper.md");

/// The LaTeX source, which is not part of the repository.
fn source() -> Option<&'static str> {
    static S: OnceLock<Option<String>> = OnceLock::new();
    S.get_or_init(|| std::fs::read_to_string(SOURCE).ok()).as_deref()
}

fn skipped() -> bool {
    let missing = source().is_none();
    if missing {
        eprintln!("skipped: no LaTeX source at {SOURCE}");
    }
    missing
}

fn report() -> &'static Report {
    static R: OnceLock<Report> = OnceLock::new();
    R.get_or_init(|| build_report(Command::VerifyAll, &Case::ALL, &ReferenceData::embedded(), 16, false).unwrap())
}

/// Rows of the tabular environment that precedes `\label{label}`, split into cells.
fn table(label: &str) -> Vec<Vec<String>> {
    let src = source().unwrap();
    let at = src.find(&format!("\\label{{{label}}}")).unwrap();
    let begin = src[..at].rfind("\\begin{tabular}").unwrap();
    let end = begin + src[begin..].find("\\end{tabular}").unwrap();
    let body = &src[begin..end];
    let body = &body[body.find('\n').unwrap()..];
    body.split("\\\\")
        .map(|row| row.replace("\\hline", ""))
        .filter(|row| !row.trim().is_empty())
        .map(|row| row.split('&').map(|c| c.trim().trim_matches('$').trim().to_string()).collect())
        .collect()
}

fn case_rows(label: &str) -> Vec<(Case, Vec<String>)> {
    table(label).into_iter().filter_map(|r| r[0].parse::<Case>().ok().map(|c| (c, r[1..].to_vec()))).collect()
}

/// Replaces `\frac{a}{b}` with `(a)/(b)`.
fn expand_fracs(s: &str) -> String {
    let Some(at) = s.find("\\frac{") else { return s.to_string() };
    let group = |from: usize| {
        let mut depth = 0;
        for (i, ch) in s[from..].char_indices() {
            match ch {
                '{' => depth += 1,
                '}' => {
                    depth -= 1;
                    if depth == 0 {
                        return (&s[from + 1..from + i], from + i + 1);
                    }
                }
                _ => {}
            }
        }
        panic!("unbalanced braces in {s}");
    };
    let (num, after) = group(at + 5);
    let (den, rest) = group(after);
    expand_fracs(&format!("{}({})/({}){}", &s[..at], num, den, &s[rest..]))
}

/// Turns a printed polynomial or rational function into the plain syntax of the parsers.
fn plain(latex: &str) -> String {
    let s = expand_fracs(latex.trim().trim_matches('$'));
    let mut out = String::new();
    for tok in s.split_whitespace() {
        let joins = |a: char, b: char| (a.is_ascii_digit() || a == 'x' || a == ')') && (b == 'x' || b == '(' || b.is_ascii_digit());
        if let (Some(a), Some(b)) = (out.chars().last(), tok.chars().next()) {
            if joins(a, b) && !(a.is_ascii_digit() && b.is_ascii_digit()) {
                out.push('*');
            } else {
                out.push(' ');
            }
        }
        out.push_str(tok);
    }
    out.replace("( ", "(").replace(" )", ")")
}

/// `c \sqrt{d}` as (c, d).
fn surd(cell: &str) -> (i64, i64) {
    match cell.split_once("\\sqrt{") {
        Some((c, d)) => {
            let c = c.trim();
            (if c.is_empty() { 1 } else { c.parse().unwrap() }, d.trim_end_matches('}').parse().unwrap())
        }
        None => (cell.parse().unwrap(), 1),
    }
}

#[test]
fn trace_triples() {
    if skipped() {
        return;
    }
    let rows = case_rows("tab:trtr");
    assert_eq!(rows.len(), 4);
    let data = ReferenceData::embedded();
    for (case, cells) in rows {
        let entry = data.traces.entries.iter().find(|e| e.case == case).unwrap();
        let t = TraceTriple::of(case);
        for ((cell, surd_data), computed) in cells.iter().zip([&entry.tr_alpha, &entry.tr_beta, &entry.tr_alpha_beta]).zip([&t.tr_a, &t.tr_b, &t.tr_ab]) {
            let (c, d) = surd(cell);
            assert_eq!((c, d), (surd_data.coefficient, surd_data.radicand), "case {case}: {cell}");
            let square = computed.try_mul(computed).unwrap().as_rational();
            assert_eq!(square, Some(q(c * c * d)), "case {case}: {cell}");
            assert_eq!(computed.real_sign().unwrap(), 1);
        }
    }
}

#[test]
fn groups_generating_orders() {
    if skipped() {
        return;
    }
    let rows = case_rows("tab:gammap");
    assert_eq!(rows.len(), 4);
    let data = ReferenceData::embedded();
    for (case, cells) in rows {
        let printed = &cells[0];
        let mut adjoined: Vec<&str> = Vec::new();
        if printed == "\\Gamma" {
            adjoined.extend(["alpha", "beta", "alpha_beta"]);
        } else if printed.contains("\\alpha \\beta") {
            adjoined.push("alpha_beta");
        }
        let entry = data.groups.entries.iter().find(|e| e.case == case).unwrap();
        assert_eq!(entry.adjoined, adjoined, "case {case}");
        let o = CaseOrders::build(case).unwrap();
        let g = &o.group;
        let computed: Vec<&str> = [("alpha", g.alpha.clone()), ("beta", g.beta.clone()), ("alpha_beta", g.alpha.mul(&g.beta))]
            .into_iter()
            .filter(|(_, m)| span_membership(m, &o.rep).is_some())
            .map(|(n, _)| n)
            .collect();
        assert_eq!(computed, adjoined, "case {case}");
    }
}

/// Printed monodromy rows in case order, with continuation lines joined to the generator above.
fn printed_triples() -> Vec<[String; 3]> {
    let mut out: Vec<[String; 3]> = Vec::new();
    let mut slot = 0;
    for row in table("tab:monod").into_iter().filter(|r| r.len() == 4 && r[0] != "Case") {
        slot = match row[1].as_str() {
            "\\sigma_0" => {
                out.push(Default::default());
                0
            }
            "\\sigma_1" => 1,
            "\\sigma_{\\infty}" => 2,
            _ => slot,
        };
        out.last_mut().unwrap()[slot].push_str(&row[3]);
    }
    out
}

#[test]
fn monodromy_triples() {
    if skipped() {
        return;
    }
    let printed = printed_triples();
    assert_eq!(printed.len(), 4);
    let data = ReferenceData::embedded();
    for ([s0, s1, sinf], case) in printed.into_iter().zip(Case::ALL) {
        let entry = data.monodromy.entries.iter().find(|e| e.case == case).unwrap();
        let from_source = PermTriple::parse(&s0, &s1, &sinf, entry.degree).unwrap();
        let TripleText { s0: d0, s1: d1, sinf: dinf } = &entry.triple;
        assert_eq!(from_source, PermTriple::parse(d0, d1, dinf, entry.degree).unwrap(), "case {case}");
        let o = CaseOrders::build(case).unwrap();
        let computed = canmod_core::cosets::monodromy_triple(&canmod_core::cosets::enumerate_cosets(&o.gamma_prime_integral).unwrap()).unwrap();
        assert!(triple_conjugacy(&computed, &from_source).is_some(), "case {case}");
    }
}

/// The displayed map and the curve of the lemma labelled `label`.
fn lemma(label: &str) -> (String, String) {
    let src = source().unwrap();
    let at = src.find(&format!("\\label{{{label}}}")).unwrap();
    let body = &src[at..at + src[at..].find("\\end{lemma}").unwrap()];
    let map = &body[body.find("\\mapsto").unwrap() + "\\mapsto".len()..body.find("\\end{equation}").unwrap()];
    let curve = body.split("from the curve").nth(1).unwrap();
    let curve = curve.split('$').nth(1).unwrap();
    (plain(map), plain(curve))
}

#[test]
fn belyi_maps_of_the_lemmas() {
    if skipped() {
        return;
    }
    let data = ReferenceData::embedded();
    for (case, label) in [(Case::I, "lem:case1"), (Case::II, "lem:case2"), (Case::III, "lem:case3")] {
        let (map, curve) = lemma(label);
        let entry = data.belyi.entries.iter().find(|e| e.case == case).unwrap();
        let printed_curve = entry.printed_curve.as_deref().unwrap_or(&entry.curve);
        let model = parse_curve(&curve).unwrap();
        assert_eq!(model, parse_curve(printed_curve).unwrap(), "case {case}: {curve}");
        let verified_on = parse_curve(&entry.curve).unwrap();
        assert_eq!(parse_map(&map, &verified_on).unwrap(), parse_map(&entry.map, &verified_on).unwrap(), "case {case}: {map}");
    }
}

/// Evaluates a printed factorisation such as `2^{14} 31^3/ 5^3`.
fn factored(s: &str) -> Rational {
    let product = |part: &str| {
        part.split_whitespace().fold(q(1), |acc, f| {
            let (b, e) = f.split_once('^').unwrap_or((f, "1"));
            acc * q(b.parse().unwrap()).pow(e.trim_matches(|c| c == '{' || c == '}').parse().unwrap())
        })
    };
    match s.split_once('/') {
        Some((n, d)) => product(n) / product(d),
        None => product(s),
    }
}

fn computed(case: Case, stage: &str, name: &str) -> &'static str {
    report()
        .cases
        .iter()
        .filter(|c| c.case == case)
        .flat_map(|c| &c.stages)
        .filter(|s| s.stage == stage)
        .flat_map(|s| &s.checks)
        .find(|c| c.name == name)
        .map(|c| c.computed.as_str())
        .unwrap_or_else(|| panic!("case {case}: no {stage} check {name}"))
}

#[test]
fn canonical_models() {
    if skipped() {
        return;
    }
    let rows = case_rows("tab:canmod");
    assert_eq!(rows.len(), 4);
    let data = ReferenceData::embedded();
    for (case, cells) in rows {
        let entry = data.models.entries.iter().find(|e| e.case == case).unwrap();
        let curve = plain(&cells[0]);
        assert_eq!(parse_curve(&curve).unwrap(), parse_curve(&entry.curve).unwrap(), "case {case}");
        let label = cells[1].rsplit('{').next().unwrap().trim_end_matches('}');
        assert_eq!(label, entry.label);
        let j = factored(&cells[2]);
        assert_eq!(j, parse_rational(&entry.j).unwrap());
        assert_eq!(parse_rational(computed(case, "qexp", "j-invariant")).unwrap(), j);
        let conductor = label.split('.').next().unwrap();
        assert_eq!(conductor, entry.conductor.to_string());
        assert_eq!(computed(case, "qexp", "conductor"), conductor);
        assert_eq!(cells[3], entry.faltings_height);
    }
}

/// Terms `c q^{e}` of a printed or displayed expansion, up to the ellipsis.
fn terms(s: &str) -> Vec<(Rational, Rational)> {
    let s = s.split_once('=').map_or(s, |(_, r)| r).replace("\\dots", "").replace('…', "");
    let mut out = Vec::new();
    let mut sign = 1;
    let mut constant: Option<Rational> = None;
    for tok in s.split_whitespace() {
        match tok {
            "+" | "-" => {
                out.extend(constant.take().map(|c| (q(0), c)));
                sign = if tok == "+" { 1 } else { -1 };
            }
            _ if tok.starts_with('q') => {
                let e = tok.strip_prefix("q^{").map_or(q(1), |e| parse_rational(e.trim_end_matches('}')).unwrap());
                out.push((e, constant.take().unwrap_or(q(sign))));
            }
            _ => constant = Some(q(sign * tok.parse::<i64>().unwrap())),
        }
    }
    out.extend(constant.map(|c| (q(0), c)));
    out
}

fn data_terms(entries: &[(String, String)]) -> Vec<(Rational, Rational)> {
    entries.iter().map(|(e, c)| (parse_rational(e).unwrap(), parse_rational(c).unwrap())).collect()
}

fn fact(case: Case, stage: &str, name: &str) -> &'static str {
    report()
        .cases
        .iter()
        .filter(|c| c.case == case)
        .flat_map(|c| &c.stages)
        .filter(|s| s.stage == stage)
        .flat_map(|s| &s.facts)
        .find(|f| f.name == name)
        .map(|f| f.value.as_str())
        .unwrap_or_else(|| panic!("case {case}: no {stage} fact {name}"))
}

#[test]
fn q_expansions() {
    if skipped() {
        return;
    }
    let rows = table("tab:exps");
    let mut printed: Vec<(Case, String, String)> = Vec::new();
    for pair in rows.iter().filter(|r| r.len() == 2 && r[0] != "Case").collect::<Vec<_>>().chunks(2) {
        printed.push((pair[0][0].parse().unwrap(), pair[0][1].clone(), pair[1][1].clone()));
    }
    assert_eq!(printed.len(), 4);
    let data = ReferenceData::embedded();
    for (case, x, y) in printed {
        let (x, y) = (terms(&x), terms(&y));
        let entry = data.qexp.entries.iter().find(|e| e.case == case).unwrap();
        assert_eq!(x, data_terms(&entry.x), "case {case}");
        assert_eq!(y, data_terms(&entry.y), "case {case}");
        let (cx, cy) = if case == Case::IV {
            (terms(fact(case, "qexp", "x ((j + 1728)^{1/3})")), terms(fact(case, "qexp", "y (j^{1/2})")))
        } else {
            (terms(computed(case, "qexp", "x")), terms(computed(case, "qexp", "y")))
        };
        assert_eq!(&cx[..x.len()], &x[..], "case {case}");
        assert_eq!(&cy[..y.len()], &y[..], "case {case}");
    }
    let forced = terms(fact(Case::IV, "qexp", "x (j = x³)"));
    assert_eq!(forced[1], (Rational::new(2.into(), 3.into()), q(248)));
    let status = report().cases.iter().find(|c| c.case == Case::IV).unwrap().status;
    assert_eq!(status, Status::Discrepancy);
}
