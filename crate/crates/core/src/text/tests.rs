use std::path::PathBuf;
use std::sync::Arc;

use proptest::prelude::*;

use super::*;
use crate::dbracket::builtins::{free3_i, free3_ii, kontsevich, kontsevich_casimir, kontsevich_h, kontsevich_sig};
use crate::error::Error;
use crate::exactlin::Rat;
use crate::integrable::LaxPair;
use crate::ncalg::{Letter, NCPoly, TensorPoly, Word};
use crate::polyvec::{kontsevich_bivector, kontsevich_fields};
use crate::repalg::comatrix_coalgebra;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

#[test]
fn element_examples() {
    let s = kontsevich_sig();
    assert_eq!(parse_element("u + v + u^-1 + v^-1 + u^-1*v^-1", &s).unwrap(), kontsevich_h(&s));
    assert_eq!(parse_element("u*u^-1", &s).unwrap(), NCPoly::one(&s));
    assert_eq!(parse_element("u*v*u^-1*v^-1", &s).unwrap(), kontsevich_casimir(&s));
    let sq = parse_element("(u + 1)^2", &s).unwrap();
    assert_eq!(sq, parse_element("u^2 + 2*u + 1", &s).unwrap());
    assert!(parse_element("1/2*u - 1/2*u", &s).unwrap().is_zero());
}

#[test]
fn tensor_examples() {
    let s = kontsevich_sig();
    let t = parse_tensor("-v*u (x) 1", &s).unwrap();
    assert_eq!(t, kontsevich().entry(0, 1));
    let both = parse_tensor("u (x) v - 2*v (x) u^-1", &s).unwrap();
    assert_eq!(both.len(), 2);
    assert!(matches!(parse_expression("u (x) v", &s, ExprKind::Tensor), Ok(Parsed::Tensor(_))));
}

#[test]
fn parse_errors() {
    let s = kontsevich_sig();
    assert!(matches!(parse_element("u + w", &s), Err(Error::UnknownIdentifier(n)) if n == "w"));
    match parse_element("u + * v", &s) {
        Err(Error::Syntax { line, column, .. }) => assert_eq!((line, column), (1, 5)),
        other => panic!("{other:?}"),
    }
    assert!(matches!(parse_element("u (x) v", &s), Err(Error::Syntax { .. })));
    assert!(matches!(parse_tensor("u", &s), Err(Error::Syntax { .. })));
    let free = crate::dbracket::builtins::free3_sig();
    assert!(matches!(parse_element("x1^-1", &free), Err(Error::NonInvertibleInverse(_))));
    assert!(parse_laurent("u + lambda", &s, "u").is_err());
}

#[test]
fn kontsevich_file_matches_builtins() {
    let f = DefinitionFile::load(&data("kontsevich.ncb")).unwrap();
    let s = f.sig.clone().unwrap();
    assert_eq!(*s, *kontsevich_sig());
    assert_eq!(f.bracket(None).unwrap(), &kontsevich());
    assert_eq!(f.element("h").unwrap(), &kontsevich_h(&s));
    assert_eq!(f.element("c").unwrap(), &kontsevich_casimir(&s));
    let [d1, d2, t1, t2] = kontsevich_fields(&s);
    assert_eq!(f.fields["delta1"], d1);
    assert_eq!(f.fields["delta2"], d2);
    assert_eq!(f.fields["tdelta1"], t1);
    assert_eq!(f.fields["tdelta2"], t2);
    assert_eq!(f.polyvectors["kontsevich"], kontsevich_bivector(&s));
    assert_eq!(f.lax.as_ref().unwrap(), &LaxPair::kontsevich());
    assert_eq!(f.coalgebra(None).unwrap(), &comatrix_coalgebra(2).unwrap());
}

#[test]
fn free3_files_match_builtins() {
    let a = DefinitionFile::load(&data("free3_I.ncb")).unwrap();
    assert_eq!(a.bracket(Some("free3_I")).unwrap(), &free3_i());
    let b = DefinitionFile::load(&data("free3_II.ncb")).unwrap();
    assert_eq!(b.bracket(None).unwrap(), &free3_ii());
}

#[test]
fn explicit_coalgebra() {
    let src = "
[coalgebra G]
basis = g, h
delta g = \"g (x) g\"
delta h = \"h (x) h\"
eps = 1, 1
tau = 1, 0
nu g g = 1
";
    let f = DefinitionFile::parse(src).unwrap();
    let c = f.coalgebra(Some("G")).unwrap();
    assert_eq!(c.dim(), 2);
    assert_eq!(c.nu(0, 0), &Rat::from(1));
    assert_eq!(c.tau(), &[Rat::from(1), Rat::zero()]);
}

#[test]
fn definition_errors_carry_positions() {
    let src = "[algebra]\ngenerators = u, v\ninvertible = all\n\n[bracket b]\nu, v = \"u * ) (x) 1\"\n";
    match DefinitionFile::parse(src) {
        Err(Error::Syntax { line, column, .. }) => assert_eq!((line, column), (6, 13)),
        other => panic!("{other:?}"),
    }
    let e = DefinitionFile::parse("[bracket b]\nu, v = \"u (x) 1\"\n").unwrap_err();
    assert!(e.to_string().contains("[algebra]"), "{e}");
    assert!(DefinitionFile::parse("generators = u").is_err());
    assert!(DefinitionFile::parse("[widget]\n").is_err());
    assert!(DefinitionFile::load(&data("missing.ncb")).is_err());
}

fn sig2() -> Arc<crate::ncalg::AlgebraSignature> {
    kontsevich_sig()
}

fn word() -> impl Strategy<Value = Word> {
    prop::collection::vec((0usize..2, any::<bool>()), 0..=4)
        .prop_map(|v| Word::reduce(v.into_iter().map(|(g, i)| Letter::new(g, i))))
}

fn rat() -> impl Strategy<Value = Rat> {
    (-5i64..=5, 1i64..=4).prop_map(|(n, d)| Rat::from(n) / Rat::from(d))
}

fn ncpoly() -> impl Strategy<Value = NCPoly> {
    prop::collection::vec((word(), rat()), 0..5).prop_map(|ts| NCPoly::from_terms(&sig2(), ts))
}

fn tensorpoly() -> impl Strategy<Value = TensorPoly> {
    prop::collection::vec(((word(), word()), rat()), 0..5).prop_map(|ts| TensorPoly::from_terms(&sig2(), ts))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn element_round_trip(p in ncpoly()) {
        prop_assert_eq!(parse_element(&p.to_string(), &sig2()).unwrap(), p);
    }

    #[test]
    fn tensor_round_trip(t in tensorpoly()) {
        prop_assume!(!t.is_zero());
        prop_assert_eq!(parse_tensor(&t.to_string(), &sig2()).unwrap(), t);
    }
}

