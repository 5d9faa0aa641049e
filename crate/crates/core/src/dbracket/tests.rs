use std::sync::Arc;

use proptest::prelude::*;

use super::builtins::*;
use super::*;
use crate::exactlin::Rat;
use crate::ncalg::{cyclic_project, AlgebraSignature, Letter, MultiTensor, NCPoly, TensorPoly, Word};

/// Independent evaluator: peels one letter at a time using the double Leibniz
/// rules directly on (possibly unreduced) letter sequences.
fn oracle(db: &BracketDef, a: &[Letter], b: &[Letter]) -> TensorPoly {
    let sig = db.sig();
    let one = Word::one();
    if a.is_empty() || b.is_empty() {
        return TensorPoly::zero(sig);
    }
    if b.len() > 1 {
        let b0 = Word::letter(b[0]);
        let rest = Word::reduce(b[1..].iter().copied());
        let x = oracle(db, a, &b[1..]).sandwich_words(&b0, &one, &one, &one);
        let y = oracle(db, a, &b[..1]).sandwich_words(&one, &one, &one, &rest);
        return &x + &y;
    }
    if a.len() > 1 {
        let a0 = Word::letter(a[0]);
        let rest = Word::reduce(a[1..].iter().copied());
        let x = oracle(db, &a[1..], b).sandwich_words(&one, &a0, &one, &one);
        let y = oracle(db, &a[..1], b).sandwich_words(&one, &one, &rest, &one);
        return &x + &y;
    }
    let (x, y) = (a[0], b[0]);
    let m1 = Rat::from_int(-1);
    if y.is_inverse() {
        let yi = Word::letter(y);
        return oracle(db, a, &[y.inverse()])
            .sandwich_words(&yi, &one, &one, &yi)
            .scale(&m1);
    }
    if x.is_inverse() {
        let xi = Word::letter(x);
        return oracle(db, &[x.inverse()], b)
            .sandwich_words(&one, &xi, &xi, &one)
            .scale(&m1);
    }
    db.entry(x.generator(), y.generator())
}

fn sigk() -> Arc<AlgebraSignature> {
    kontsevich().sig().clone()
}

fn w(runs: &[(usize, i64)]) -> Word {
    Word::from_runs(runs)
}

fn p(sig: &Arc<AlgebraSignature>, runs: &[(usize, i64)]) -> NCPoly {
    NCPoly::word(sig, w(runs))
}

#[test]
fn kontsevich_generator_values() {
    let db = kontsevich();
    let s = sigk();
    assert_eq!(db.double_words(&w(&[(0, 1)]), &w(&[(1, 1)])).to_string(), "-v*u (x) 1");
    assert_eq!(db.double_words(&w(&[(1, 1)]), &w(&[(0, 1)])).to_string(), "u*v (x) 1");
    assert!(db.double_words(&w(&[(0, 1)]), &w(&[(0, 1)])).is_zero());
    assert_eq!(db.loday(&p(&s, &[(0, 1)]), &p(&s, &[(1, 1)])).unwrap().to_string(), "-v*u");
}

#[test]
fn kontsevich_derived_values() {
    let db = kontsevich();
    let u = w(&[(0, 1)]);
    let v2 = w(&[(1, 2)]);
    let vi = w(&[(1, -1)]);
    let got = db.double_words(&u, &v2);
    assert_eq!(got, oracle(&db, u.letters(), v2.letters()));
    assert_eq!(got.to_string(), "-v*u (x) v - v^2*u (x) 1");
    let got = db.double_words(&u, &vi);
    assert_eq!(got, oracle(&db, u.letters(), vi.letters()));
    assert_eq!(got.to_string(), "u (x) v^-1");
}

#[test]
fn hamiltonian_of_u() {
    let db = kontsevich();
    let s = sigk();
    let h = kontsevich_h(&s);
    let r = db.loday(&h, &p(&s, &[(0, 1)])).unwrap();
    let expect = NCPoly::from_terms(
        &s,
        [
            (w(&[(0, 1), (1, 1)]), Rat::one()),
            (w(&[(0, 1), (1, -1)]), Rat::from_int(-1)),
            (w(&[(1, -1)]), Rat::from_int(-1)),
        ],
    );
    assert_eq!(r, expect);
}

#[test]
fn brackets_with_unit_vanish() {
    for db in [kontsevich(), free3_i(), free3_ii()] {
        let s = db.sig().clone();
        let one = NCPoly::one(&s);
        for g in s.generators() {
            let x = NCPoly::word(&s, g);
            assert!(db.loday(&x, &one).unwrap().is_zero());
            assert!(db.extend_double(&one, &x).unwrap().is_zero());
        }
    }
}

#[test]
fn table_agrees_on_generators() {
    for db in [kontsevich(), free3_i(), free3_ii()] {
        let s = db.sig().clone();
        for x in 0..s.len() {
            for y in 0..s.len() {
                let got = db.double_words(&Word::letter(Letter::pos(x)), &Word::letter(Letter::pos(y)));
                assert_eq!(got, db.entry(x, y));
            }
        }
    }
}

#[test]
fn signature_mismatch() {
    let db = kontsevich();
    let other = NCPoly::one(&free3_sig());
    assert!(db.loday(&other, &other).is_err());
}

#[test]
fn kontsevich_small_sweep_passes() {
    let r = verify_axioms(&kontsevich(), 2, 2, 2, JacobiC::Generators);
    assert!(r.passed(), "{}", r.to_text());
    // 17 words give 17·18/2 unordered pairs; Jacobi 17·17·2.
    assert_eq!(r.laws["weak-skew"].checked, 153);
    assert_eq!(r.laws["jacobi"].checked, 17 * 17 * 2);
}

#[test]
fn skew_counterexample_fails_at_generators() {
    let r = verify_axioms(&skew_counterexample(), 2, 1, 1, JacobiC::Generators);
    assert!(!r.law_passed("weak-skew"));
    let f = r.failures.iter().find(|f| f.law == "weak-skew").unwrap();
    assert_eq!(f.inputs, vec!["x1", "x2"]);
    assert_eq!(f.residual, "x1*x2");
}

#[test]
fn casimir_sides() {
    let db = kontsevich();
    let s = sigk();
    let c = kontsevich_casimir(&s);
    assert!(casimir_check(&db, &c, 3, Side::Right).passed());
    let left = casimir_check(&db, &c, 2, Side::Left);
    assert!(!left.passed());
    // {c, u}: a witness computed through the independent evaluator.
    let witness = oracle(&db, c.terms().next().unwrap().0.letters(), w(&[(0, 1)]).letters()).mu();
    assert!(!witness.is_zero());
    assert_eq!(db.loday(&c, &p(&s, &[(0, 1)])).unwrap(), witness);
    assert!(casimir_check(&db, &NCPoly::one(&s), 3, Side::Right).passed());
}

#[test]
fn zero_table_has_zero_defect() {
    let db = BracketDef::zero(&sigk());
    let (u, v) = (w(&[(0, 1)]), w(&[(1, 1)]));
    assert!(jacobiator_defect(&db, &u, &v, &u, &v).is_zero());
}

#[test]
fn kontsevich_defect_is_nonzero() {
    let db = kontsevich();
    let (u, v) = (w(&[(0, 1)]), w(&[(1, 1)]));
    // With (a1, a2, b, c) = (u, v, u, v) the factor ⟦v, v⟧ kills both sides.
    assert!(jacobiator_defect(&db, &u, &v, &u, &v).is_zero());
    let d = jacobiator_defect(&db, &u, &u, &v, &v);
    assert_eq!(d.to_string(), "-v*u (x) 1 (x) v*u + v*u (x) u*v (x) 1");
    assert_eq!(d, jacobiator_defect_closed_form(&db, &u, &u, &v, &v));
}

fn word_strategy(ngen: usize, inv: bool, max: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec((0..ngen, any::<bool>()), 0..=max)
        .prop_map(move |v| Word::reduce(v.into_iter().map(|(g, i)| Letter::new(g, i && inv))))
}

fn raw_strategy(ngen: usize, inv: bool, max: usize) -> impl Strategy<Value = Vec<Letter>> {
    prop::collection::vec((0..ngen, any::<bool>()), 0..=max)
        .prop_map(move |v| v.into_iter().map(|(g, i)| Letter::new(g, i && inv)).collect())
}

fn brackets() -> Vec<BracketDef> {
    vec![kontsevich(), free3_i(), free3_ii()]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn closed_form_matches_recursive_evaluator(k in 0usize..3, a in raw_strategy(3, true, 4), b in raw_strategy(3, true, 4)) {
        let db = &brackets()[k];
        let inv = db.sig().has_inverses();
        let ng = db.sig().len();
        let fix = |v: &Vec<Letter>| -> Vec<Letter> {
            v.iter().map(|l| Letter::new(l.generator() % ng, l.is_inverse() && inv)).collect()
        };
        let (a, b) = (fix(&a), fix(&b));
        // The evaluator runs on the raw sequences, the closed form on reduced words.
        let expect = oracle(db, &a, &b);
        let got = db.double_words(&Word::reduce(a.iter().copied()), &Word::reduce(b.iter().copied()));
        prop_assert_eq!(got, expect);
    }

    #[test]
    fn inverse_rules_are_consistent(a in word_strategy(2, true, 3), g in 0usize..2, first in any::<bool>()) {
        let db = kontsevich();
        let y = Letter::pos(g);
        let yy = [y, y.inverse()];
        let t = if first { oracle(&db, &yy, a.letters()) } else { oracle(&db, a.letters(), &yy) };
        prop_assert!(t.is_zero());
    }

    #[test]
    fn derivation_in_second_argument(k in 0usize..3, a in word_strategy(3, true, 3), b in word_strategy(3, true, 3), c in word_strategy(3, true, 3)) {
        let db = &brackets()[k];
        let s = db.sig().clone();
        let fix = |x: &Word| NCPoly::word(&s, Word::reduce(x.letters().iter().map(|l| Letter::new(l.generator() % s.len(), l.is_inverse() && s.has_inverses()))));
        let (a, b, c) = (fix(&a), fix(&b), fix(&c));
        let lhs = db.loday(&a, &(&b * &c)).unwrap();
        let rhs = &(&b * &db.loday(&a, &c).unwrap()) + &(&db.loday(&a, &b).unwrap() * &c);
        prop_assert_eq!(lhs, rhs);
        // Cyclic invariance in the first argument.
        prop_assert_eq!(db.loday(&(&a * &b), &c).unwrap(), db.loday(&(&b * &a), &c).unwrap());
    }

    #[test]
    fn jacobi_decomposition(k in 0usize..3, a in word_strategy(3, true, 3), b in word_strategy(3, true, 3), c in word_strategy(3, true, 2)) {
        let db = &brackets()[k];
        let s = db.sig().clone();
        let fix = |x: &Word| Word::reduce(x.letters().iter().map(|l| Letter::new(l.generator() % s.len(), l.is_inverse() && s.has_inverses())));
        let (a, b, c) = (fix(&a), fix(&b), fix(&c));
        let j = jacobiator(db, &NCPoly::word(&s, a.clone()), &NCPoly::word(&s, b.clone()), &NCPoly::word(&s, c.clone())).unwrap();
        prop_assert_eq!(mu_d1_d2(db, &a, &b, &c), j);
    }

    #[test]
    fn defect_closed_form(k in 0usize..3, a1 in word_strategy(3, true, 3), a2 in word_strategy(3, true, 3), b in word_strategy(3, true, 3), c in word_strategy(3, true, 3)) {
        let db = &brackets()[k];
        let s = db.sig().clone();
        let fix = |x: &Word| Word::reduce(x.letters().iter().map(|l| Letter::new(l.generator() % s.len(), l.is_inverse() && s.has_inverses())));
        let (a1, a2, b, c) = (fix(&a1), fix(&a2), fix(&b), fix(&c));
        let direct: MultiTensor = jacobiator_defect(db, &a1, &a2, &b, &c);
        let closed = jacobiator_defect_closed_form(db, &a1, &a2, &b, &c);
        prop_assert_eq!(direct, closed);
    }

    #[test]
    fn weak_skew_on_random_pairs(a in word_strategy(2, true, 4), b in word_strategy(2, true, 4)) {
        let db = kontsevich();
        let s = cyclic_project(&(&db.loday_words(&a, &b) + &db.loday_words(&b, &a)));
        prop_assert!(s.is_zero());
    }
}

#[test]
fn defect_sweep_passes_on_builtins() {
    for db in [kontsevich(), builtins::free3_i()] {
        let r = defect_sweep(&db, 1);
        assert!(r.passed(), "{}", r.to_text());
        assert!(r.law_passed("jacobi-decomposition") && r.law_passed("defect-closed-form"));
    }
}
