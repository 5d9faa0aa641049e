//! Brackets and elements shipped with the library.

use std::collections::BTreeMap;
use std::sync::Arc;

use super::BracketDef;
use crate::exactlin::Rat;
use crate::ncalg::{AlgebraSignature, NCPoly, TensorPoly, Word};

fn w(runs: &[(usize, i64)]) -> Word {
    Word::from_runs(runs)
}

/// `(coefficient, left runs, right runs)`.
type Terms<'a> = &'a [(i64, &'a [(usize, i64)], &'a [(usize, i64)])];

fn t(sig: &Arc<AlgebraSignature>, terms: Terms) -> TensorPoly {
    TensorPoly::from_terms(
        sig,
        terms
            .iter()
            .map(|(c, l, r)| ((w(l), w(r)), Rat::from_int(*c))),
    )
}

/// `ℂ⟨u^±, v^±⟩`.
pub fn kontsevich_sig() -> Arc<AlgebraSignature> {
    Arc::new(AlgebraSignature::group(&["u", "v"]))
}

/// `⟦u,v⟧ = −vu⊗1`, `⟦v,u⟧ = uv⊗1`, `⟦u,u⟧ = ⟦v,v⟧ = 0`.
pub fn kontsevich() -> BracketDef {
    let s = kontsevich_sig();
    let mut table = BTreeMap::new();
    table.insert((0, 1), t(&s, &[(-1, &[(1, 1), (0, 1)], &[])]));
    table.insert((1, 0), t(&s, &[(1, &[(0, 1), (1, 1)], &[])]));
    BracketDef::new(&s, table).expect("valid table")
}

/// `h = u + v + u⁻¹ + v⁻¹ + u⁻¹v⁻¹`.
pub fn kontsevich_h(sig: &Arc<AlgebraSignature>) -> NCPoly {
    NCPoly::from_terms(
        sig,
        [
            w(&[(0, 1)]),
            w(&[(1, 1)]),
            w(&[(0, -1)]),
            w(&[(1, -1)]),
            w(&[(0, -1), (1, -1)]),
        ]
        .into_iter()
        .map(|x| (x, Rat::one())),
    )
}

/// `c = uvu⁻¹v⁻¹`.
pub fn kontsevich_casimir(sig: &Arc<AlgebraSignature>) -> NCPoly {
    NCPoly::word(sig, w(&[(0, 1), (1, 1), (0, -1), (1, -1)]))
}

pub fn free3_sig() -> Arc<AlgebraSignature> {
    Arc::new(AlgebraSignature::free(&["x1", "x2", "x3"]))
}

pub fn free3_i() -> BracketDef {
    let s = free3_sig();
    let mut table = BTreeMap::new();
    table.insert((0, 1), t(&s, &[(-1, &[(1, 1), (0, 1)], &[])]));
    table.insert((1, 0), t(&s, &[(1, &[(0, 1), (1, 1)], &[])]));
    table.insert((1, 2), t(&s, &[(-1, &[(1, 1)], &[(2, 1)])]));
    table.insert((2, 1), t(&s, &[(1, &[(1, 1)], &[(2, 1)])]));
    table.insert((2, 0), t(&s, &[(-1, &[], &[(2, 1), (0, 1)])]));
    table.insert((0, 2), t(&s, &[(1, &[], &[(0, 1), (2, 1)])]));
    BracketDef::new(&s, table).expect("valid table")
}

pub fn free3_ii() -> BracketDef {
    let s = free3_sig();
    let mut table = BTreeMap::new();
    table.insert((0, 1), t(&s, &[(-1, &[(0, 1)], &[(1, 1)])]));
    table.insert((1, 0), t(&s, &[(1, &[(0, 1)], &[(1, 1)])]));
    table.insert((1, 2), t(&s, &[(1, &[(2, 1)], &[(1, 1)])]));
    table.insert((2, 1), t(&s, &[(-1, &[(2, 1)], &[(1, 1)])]));
    table.insert((2, 0), t(&s, &[(1, &[(0, 1)], &[(2, 1)]), (-1, &[(2, 1)], &[(0, 1)])]));
    BracketDef::new(&s, table).expect("valid table")
}

/// `⟦x₁,x₂⟧ = x₁⊗x₂` on the free algebra in two generators, everything else
/// zero. Not weakly skew-symmetric.
pub fn skew_counterexample() -> BracketDef {
    let s = Arc::new(AlgebraSignature::free(&["x1", "x2"]));
    let mut table = BTreeMap::new();
    table.insert((0, 1), t(&s, &[(1, &[(0, 1)], &[(1, 1)])]));
    BracketDef::new(&s, table).expect("valid table")
}

/// Built-in bracket by name.
pub fn by_name(name: &str) -> Option<BracketDef> {
    match name {
        "kontsevich" => Some(kontsevich()),
        "free3_I" | "free3_i" => Some(free3_i()),
        "free3_II" | "free3_ii" => Some(free3_ii()),
        "skew_counterexample" => Some(skew_counterexample()),
        _ => None,
    }
}
