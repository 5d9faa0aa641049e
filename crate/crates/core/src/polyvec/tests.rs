use proptest::prelude::*;

use super::*;

fn sig() -> Arc<AlgebraSignature> {
    builtins::kontsevich_sig()
}

fn w(runs: &[(usize, i64)]) -> Word {
    Word::from_runs(runs)
}

fn np(s: &Arc<AlgebraSignature>, x: &Word) -> NCPoly {
    NCPoly::word(s, x.clone())
}

#[test]
fn field_values_on_generators() {
    let s = sig();
    let [d1, d2, ..] = kontsevich_fields(&s);
    assert_eq!(d1.apply_word(&w(&[(0, 1)])).to_string(), "1 (x) u");
    assert!(d2.apply_word(&w(&[(1, 1)])).is_zero());
    assert!(d1.apply_word(&Word::one()).is_zero());
    // δ(u⁻¹) = −(u⁻¹⊗1)(1⊗u)(1⊗u⁻¹) = −u⁻¹ ⊗ 1
    assert_eq!(d1.apply_word(&w(&[(0, -1)])).to_string(), "-u^-1 (x) 1");
}

#[test]
fn degree_two_trace_on_u_v_vanishes() {
    let s = sig();
    let [d1, d2, ..] = kontsevich_fields(&s);
    let p = PolyVector::new(&s).add(Rat::one(), vec![d1, d2]).unwrap();
    let t = partial_trace(&p, &[np(&s, &w(&[(0, 1)])), np(&s, &w(&[(1, 1)]))]).unwrap();
    assert!(t.is_zero());
}

#[test]
fn degree_one_is_rejected() {
    let s = sig();
    let [d1, ..] = kontsevich_fields(&s);
    let p = PolyVector::new(&s).add(Rat::one(), vec![d1]).unwrap();
    assert!(matches!(partial_trace(&p, &[NCPoly::one(&s)]), Err(Error::Invalid(_))));
}

#[test]
fn arity_mismatch() {
    let s = sig();
    let [d1, d2, ..] = kontsevich_fields(&s);
    let p = PolyVector::new(&s).add(Rat::one(), vec![d1, d2]).unwrap();
    let one = NCPoly::one(&s);
    assert!(matches!(
        partial_trace(&p, &[one.clone(), one.clone(), one]),
        Err(Error::ArityMismatch { .. })
    ));
}

#[test]
fn trace_bivector_examples() {
    let s = sig();
    let [d1, d2, e1, e2] = kontsevich_fields(&s);
    assert!(trace_bivector(&d1, &d2).unwrap().entry(0, 1).is_zero());
    assert_eq!(trace_bivector(&e2, &e1).unwrap().entry(0, 1).to_string(), "v*u (x) 1");
    let z = VectorField::zero(&s);
    assert!(trace_bivector(&z, &d1).unwrap().table().is_empty());
}

#[test]
fn bivector_reproduces_kontsevich_on_short_words() {
    let r = verify_kontsevich_bivector(2);
    assert!(r.passed(), "{}", r.to_text());
    assert_eq!(r.laws["generators"].checked, 4);
}

fn word(max: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec((0usize..2, any::<bool>()), 0..=max)
        .prop_map(|v| Word::reduce(v.into_iter().map(|(g, i)| Letter::new(g, i))))
}

fn tensor() -> impl Strategy<Value = TensorPoly> {
    prop::collection::vec((word(2), word(2), -2i64..3), 0..3).prop_map(|v| {
        TensorPoly::from_terms(&sig(), v.into_iter().map(|(a, b, c)| ((a, b), Rat::from_int(c))))
    })
}

fn field() -> impl Strategy<Value = VectorField> {
    (tensor(), tensor()).prop_map(|(a, b)| VectorField::new(&sig(), [(0, a), (1, b)].into_iter().collect()).unwrap())
}

/// `(pre ⊗ 1)` on slot `pos` of a rank-k tensor, or `(1 ⊗ post)` when `right`.
fn mult_slot(t: &MultiTensor, pos: usize, x: &Word, right: bool) -> MultiTensor {
    let k = t.rank();
    let mut l = vec![Word::one(); k];
    let mut r = vec![Word::one(); k];
    if right {
        r[pos] = x.clone();
    } else {
        l[pos] = x.clone();
    }
    t.sandwich_words(&l, &r)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn field_leibniz(f in field(), a in word(4), b in word(4)) {
        let one = Word::one();
        let lhs = f.apply_word(&a.mul(&b));
        let rhs = &f.apply_word(&b).sandwich_words(&a, &one, &one, &one)
            + &f.apply_word(&a).sandwich_words(&one, &one, &one, &b);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn trace_is_a_biderivation(f in field(), g in field(), a in word(3), b in word(3), c in word(3)) {
        let s = sig();
        let p = PolyVector::new(&s).add(Rat::one(), vec![f, g]).unwrap();
        let r = |x: &Word, y: &Word| multi_to_pair(&partial_trace(&p, &[np(&s, x), np(&s, y)]).unwrap());
        let one = Word::one();
        let lhs = r(&a.mul(&b), &c);
        let rhs = &r(&b, &c).sandwich_words(&one, &a, &one, &one) + &r(&a, &c).sandwich_words(&one, &one, &b, &one);
        prop_assert_eq!(lhs, rhs);
        let lhs = r(&a, &b.mul(&c));
        let rhs = &r(&a, &c).sandwich_words(&b, &one, &one, &one) + &r(&a, &b).sandwich_words(&one, &one, &one, &c);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn k_derivation_law(fs in prop::collection::vec(field(), 3), args in prop::collection::vec(word(2), 3), b in word(2), c in word(2), k in 2usize..4, slot in 0usize..3) {
        let s = sig();
        let i = slot % k + 1;
        let p = PolyVector::new(&s).add(Rat::one(), fs[..k].to_vec()).unwrap();
        let eval = |replace: &Word| {
            let mut a: Vec<NCPoly> = args[..k].iter().map(|x| np(&s, x)).collect();
            a[i - 1] = np(&s, replace);
            partial_trace(&p, &a).unwrap()
        };
        let lhs = eval(&b.mul(&c));
        let left_pos = k - i;
        let right_pos = (1 + k - i) % k;
        let mut rhs = mult_slot(&eval(&c), left_pos, &b, false);
        rhs.add_scaled(&mult_slot(&eval(&b), right_pos, &c, true), &Rat::one());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn trace_is_linear(f in field(), g in field(), h in field(), a in word(3), b in word(3)) {
        let s = sig();
        let args = [np(&s, &a), np(&s, &b)];
        let p = PolyVector::new(&s).add(Rat::one(), vec![f.clone(), g.clone()]).unwrap();
        let q = PolyVector::new(&s).add(Rat::from_int(3), vec![h.clone(), f.clone()]).unwrap();
        let pq = p.clone().add(Rat::from_int(3), vec![h, f]).unwrap();
        let mut sum = partial_trace(&p, &args).unwrap();
        sum.add_scaled(&partial_trace(&q, &args).unwrap(), &Rat::one());
        prop_assert_eq!(partial_trace(&pq, &args).unwrap(), sum);
    }
}

#[test]
fn bivector_against_wrong_target_fails() {
    let sig = builtins::kontsevich_sig();
    let r = verify_bivector(&kontsevich_bivector(&sig), &crate::dbracket::BracketDef::zero(&sig), 1).unwrap();
    assert!(!r.passed());
    assert!(verify_bivector(&kontsevich_bivector(&sig), &builtins::free3_i(), 1).is_err());
}
