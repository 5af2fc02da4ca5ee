use std::fs;
use std::path::PathBuf;

use proptest::prelude::*;
use qcl_core::congruence::{verify_target, verify_task, CongruenceTask};
use qcl_core::dsl::{self, lower, parse_factor, parse_task, render, Factor, SpecAst};
use qcl_core::exact::rat::{rat, ratio};
use qcl_core::qseries::catalog::ModFactor;
use qcl_core::qseries::{ExpPoly, MMode, Monomial, Param, Params, TargetId};

fn corpus() -> Vec<(String, String)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../specs");
    let mut out: Vec<(String, String)> = fs::read_dir(&dir)
        .expect("specs directory")
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "qhs"))
        .map(|p| (p.file_name().unwrap().to_string_lossy().into_owned(), fs::read_to_string(&p).unwrap()))
        .collect();
    out.sort();
    out
}

fn declared_target(text: &str) -> Option<TargetId> {
    text.lines().find_map(|l| l.strip_prefix("# target: ")).and_then(|s| TargetId::parse(s.trim()))
}

fn sample() -> Params {
    Params::new().with(Param::A, rat(2)).with(Param::B, rat(3)).with(Param::C, ratio(5, 3)).with(Param::D, rat(7))
}

#[test]
fn corpus_has_twenty_tasks() {
    assert_eq!(corpus().len(), 20);
}

#[test]
fn corpus_round_trips() {
    for (name, text) in corpus() {
        let ast = parse_task(&text).unwrap_or_else(|e| panic!("{name}: {e}"));
        let again = parse_task(&render(&ast)).unwrap_or_else(|e| panic!("{name} rendered: {e}"));
        assert_eq!(again, ast, "{name}");
        assert_eq!(render(&again), render(&ast), "{name}");
    }
}

#[test]
fn corpus_matches_catalog_structurally() {
    let mut matched = 0;
    for (name, text) in corpus() {
        let task = dsl::load_task(&text).unwrap_or_else(|e| panic!("{name}: {e}"));
        if let Some(id) = declared_target(&text) {
            let built = CongruenceTask::from_target(id).expect("summation target");
            assert_eq!(task.lhs, built.lhs, "{name} lhs");
            assert_eq!(task.rhs, built.rhs, "{name} rhs");
            assert_eq!(task.modulus, built.modulus, "{name} modulus");
            let mut declared = task.params.clone();
            declared.sort();
            assert_eq!(declared, built.params, "{name} params");
            matched += 1;
        }
    }
    assert_eq!(matched, 17);
}

#[test]
fn transcriptions_verify_like_the_catalog() {
    for (file, id) in [("thm-a.qhs", TargetId::Thm11), ("thm-b.qhs", TargetId::Thm12), ("eq13.qhs", TargetId::Eq13)] {
        let text = corpus().into_iter().find(|(n, _)| n == file).unwrap().1;
        let task = dsl::load_task(&text).unwrap();
        for n in [3, 5] {
            for mode in MMode::BOTH {
                let a = verify_task(&task, n, mode, &sample()).unwrap();
                let b = verify_target(id, n, mode, &sample()).unwrap();
                assert_eq!(a.status, b.status, "{file} n={n}");
                assert_eq!(a.cofactor, b.cofactor, "{file} n={n}");
            }
        }
    }
}

#[test]
fn explicit_bounds_agree_with_selectable_bound() {
    let get = |f: &str| dsl::load_task(&corpus().into_iter().find(|(n, _)| n == f).unwrap().1).unwrap();
    let (m, nm1, half) = (get("eq13.qhs"), get("eq13-nm1.qhs"), get("eq13-half.qhs"));
    for n in [3, 5, 7] {
        let p = Params::new();
        let sel = verify_task(&m, n, MMode::NMinus1, &p).unwrap();
        assert_eq!(sel, verify_task(&nm1, n, MMode::Half, &p).unwrap());
        let sel = verify_task(&m, n, MMode::Half, &p).unwrap();
        assert_eq!(sel.status, verify_task(&half, n, MMode::NMinus1, &p).unwrap().status);
        assert!(sel.is_pass());
    }
}

#[test]
fn documented_factor_examples() {
    assert_eq!(parse_factor("qint(4*k-1)").unwrap(), Factor::QInt { arg: ExpPoly::linear_k(4, -1), power: 1 });
    assert_eq!(
        parse_factor("poch(a*q^-1; q^2; k)").unwrap(),
        Factor::Poch { base: Monomial::q(-1).times(Param::A, 1), len: ExpPoly::k(), power: 1 }
    );
    assert_eq!(parse_factor("qint(4*k-1)").unwrap().to_string(), "qint(4*k-1)");
    assert_eq!(dsl::TermAst::default().to_string(), "1");
}

#[test]
fn modulus_expression_lowers_to_phi_power() {
    let text = "verify lhs: sum k=0..M: qint(4*k-1) rhs: sum k=0..0: 0 modulus: Phi(n)^3 * [n]";
    let task = dsl::load_task(text).unwrap();
    assert_eq!(task.modulus, vec![ModFactor::Cyclotomic(3), ModFactor::QInt(1)]);
    let p = qcl_core::congruence::modulus_build(&task.modulus, 3, &Params::new()).unwrap();
    assert_eq!(p, qcl_core::exact::cyclotomic(3).unwrap().pow(4));
}

#[test]
fn theta_needs_both_parameters() {
    let text = "verify params: a lhs: sum k=0..0: 1 rhs: sum k=0..0: 1 prefactor: theta modulus: Phi(n)";
    let err = dsl::load_task(text).unwrap_err();
    assert!(matches!(err, dsl::DslError::Semantic(_)), "{err}");
    assert!(err.to_string().contains("theta"));
    let ok = text.replace("params: a", "params: a, b");
    assert!(dsl::load_task(&ok).is_ok());
}

#[test]
fn undeclared_and_duplicate_parameters() {
    let undeclared = "verify lhs: sum k=0..M: poch(c*q; q^2; k) rhs: sum k=0..0: 0 modulus: Phi(n)";
    assert!(matches!(dsl::load_task(undeclared), Err(dsl::DslError::Semantic(_))));
    let binomial = "verify lhs: sum k=0..M: 1 rhs: sum k=0..0: 0 modulus: (b-q^n)";
    assert!(matches!(dsl::load_task(binomial), Err(dsl::DslError::Semantic(_))));
    let twice = "verify params: a, a lhs: sum k=0..M: 1 rhs: sum k=0..0: 0 modulus: Phi(n)";
    assert!(matches!(dsl::load_task(twice), Err(dsl::DslError::Semantic(_))));
}

#[test]
fn syntax_errors_carry_positions() {
    let text = "verify\nlhs: sum k=0..n+1: 1\nrhs: sum k=0..0: 0\nmodulus: Phi(n)";
    let e = parse_task(text).unwrap_err();
    assert_eq!((e.line, e.column), (2, 16));
    let e = parse_task("verify lhs: sum k=0..M: poch(q; q^3; k) rhs: sum k=0..0: 0 modulus: Phi(n)").unwrap_err();
    assert!(e.message.contains("q^2"), "{}", e.message);
    let e = parse_task("verify lhs: sum k=0..M: foo rhs: sum k=0..0: 0 modulus: Phi(n)").unwrap_err();
    assert_eq!(e.offset, 24);
    assert!(e.expected.contains(&"qint".to_string()));
    let e = parse_task("verify lhs: sum k=0..(n+5)/2: 1 rhs: sum k=0..0: 0 modulus: Phi(n)").unwrap_err();
    assert!(e.message.contains("bound"));
}

fn corpus_and_typos() -> impl Strategy<Value = (usize, usize, char, bool)> {
    (
        0..20usize,
        any::<prop::sample::Index>().prop_map(|i| i.index(usize::MAX)),
        prop::sample::select(vec!['@', '$', '?', '!', '%', '&', '{', '~']),
        any::<bool>(),
    )
        .prop_map(|(f, pos, c, replace)| (f, pos, c, replace))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn injected_typos_are_located(case in corpus_and_typos()) {
        let (file, pos, ch, replace) = case;
        let text = &corpus()[file].1;
        let boundaries: Vec<usize> = (0..=text.len()).filter(|&i| text.is_char_boundary(i)).collect();
        let at = boundaries[pos % boundaries.len()];
        // a typo inside a comment is not a typo
        let line_start = text[..at].rfind('\n').map_or(0, |i| i + 1);
        prop_assume!(!text[line_start..at].contains('#'));
        let mut broken = String::from(&text[..at]);
        broken.push(ch);
        let rest = if replace && at < text.len() {
            let skip = text[at..].chars().next().unwrap().len_utf8();
            &text[at + skip..]
        } else {
            &text[at..]
        };
        broken.push_str(rest);
        let err = parse_task(&broken).expect_err("typo must be rejected");
        prop_assert!(err.offset <= at, "error at {} after typo at {}", err.offset, at);
    }

    #[test]
    fn rendered_ast_is_a_fixed_point(file in 0..20usize) {
        let ast: SpecAst = parse_task(&corpus()[file].1).unwrap();
        let once = render(&ast);
        let twice = render(&parse_task(&once).unwrap());
        prop_assert_eq!(once, twice);
        prop_assert!(lower(&ast).is_ok());
    }

    #[test]
    fn misspelled_words_are_located(file in 0..20usize, pos in any::<prop::sample::Index>()) {
        let text = &corpus()[file].1;
        let letters: Vec<usize> = text
            .char_indices()
            .filter(|&(i, c)| {
                let line_start = text[..i].rfind('\n').map_or(0, |j| j + 1);
                c.is_ascii_alphabetic() && !text[line_start..i].contains('#')
            })
            .map(|(i, _)| i)
            .collect();
        let at = letters[pos.index(letters.len())];
        let broken = format!("{}z{}", &text[..at], &text[at + 1..]);
        let err = parse_task(&broken).expect_err("misspelling must be rejected");
        prop_assert!(err.offset <= at, "error at {} after typo at {}", err.offset, at);
    }
}
