//! The operators `R_{mn}` on tensor powers and the decomposition of the
//! Jacobiator as `μ(D₁ + D₂)`.

use super::sweep::jacobiator;
use super::BracketDef;
use crate::exactlin::Rat;
use crate::ncalg::{MultiTensor, NCPoly, Word};
use crate::report::SweepReport;

/// `R_{mn}`: replaces slots `m` and `n` (0-based) by `⟦a_m, a_n⟧′` and `⟦a_m, a_n⟧″`.
pub fn apply_r(db: &BracketDef, t: &MultiTensor, m: usize, n: usize) -> MultiTensor {
    assert!(m != n && m < t.rank() && n < t.rank());
    let mut out = MultiTensor::zero(db.sig(), t.rank());
    for (factors, c) in t.terms() {
        let d = db.double_words(&factors[m], &factors[n]);
        for ((l, r), dc) in d.terms() {
            let mut f = factors.clone();
            f[m] = l.clone();
            f[n] = r.clone();
            out.add_term(f, c * dc);
        }
    }
    out
}

fn chain(db: &BracketDef, t: &MultiTensor, ops: &[(usize, usize)]) -> MultiTensor {
    // Rightmost operator acts first.
    ops.iter().rev().fold(t.clone(), |acc, &(m, n)| apply_r(db, &acc, m, n))
}

fn combo(db: &BracketDef, t: &MultiTensor, terms: &[(i64, &[(usize, usize)])]) -> MultiTensor {
    let mut out = MultiTensor::zero(db.sig(), t.rank());
    for (sign, ops) in terms {
        out.add_scaled(&chain(db, t, ops), &Rat::from_int(*sign));
    }
    out
}

/// `D₁ = R₁₂R₂₃ − R₂₃R₁₃ − R₁₃R₁₂`.
pub fn d1(db: &BracketDef, t: &MultiTensor) -> MultiTensor {
    combo(
        db,
        t,
        &[(1, &[(0, 1), (1, 2)]), (-1, &[(1, 2), (0, 2)]), (-1, &[(0, 2), (0, 1)])],
    )
}

/// `D₂ = σ₁₂(R₁₃R₂₃ − R₂₁R₁₃ − R₂₃R₁₂)`.
pub fn d2(db: &BracketDef, t: &MultiTensor) -> MultiTensor {
    combo(
        db,
        t,
        &[(1, &[(0, 2), (1, 2)]), (-1, &[(1, 0), (0, 2)]), (-1, &[(1, 2), (0, 1)])],
    )
    .permute(&[1, 0, 2])
}

fn pure3(db: &BracketDef, a: &Word, b: &Word, c: &Word) -> MultiTensor {
    MultiTensor::pure(db.sig(), vec![a.clone(), b.clone(), c.clone()], Rat::one())
}

/// `μ(D₁ + D₂)(a ⊗ b ⊗ c)`.
pub fn mu_d1_d2(db: &BracketDef, a: &Word, b: &Word, c: &Word) -> NCPoly {
    let t = pure3(db, a, b, c);
    let mut s = d1(db, &t);
    s.add_scaled(&d2(db, &t), &Rat::one());
    s.mu()
}

/// Failure of `D₁` to be a derivation in its first slot:
/// `D₁(a₁a₂⊗b⊗c) − (1⊗a₁⊗1)D₁(a₂⊗b⊗c) − D₁(a₁⊗b⊗c)(a₂⊗1⊗1)`.
pub fn jacobiator_defect(db: &BracketDef, a1: &Word, a2: &Word, b: &Word, c: &Word) -> MultiTensor {
    let one = Word::one();
    let mut out = d1(db, &pure3(db, &a1.mul(a2), b, c));
    let second = d1(db, &pure3(db, a2, b, c)).sandwich_words(
        &[one.clone(), a1.clone(), one.clone()],
        &[one.clone(), one.clone(), one.clone()],
    );
    let third = d1(db, &pure3(db, a1, b, c)).sandwich_words(
        &[one.clone(), one.clone(), one.clone()],
        &[a2.clone(), one.clone(), one.clone()],
    );
    let m1 = Rat::from_int(-1);
    out.add_scaled(&second, &m1);
    out.add_scaled(&third, &m1);
    out
}

/// Closed form of the defect:
/// `−⟦a₂,c⟧′ ⊗ ⟦b,a₁⟧′ ⊗ ⟦b,a₁⟧″⟦a₂,c⟧″ − ⟦a₂,c⟧′ ⊗ ⟦a₁,b⟧″ ⊗ ⟦a₁,b⟧′⟦a₂,c⟧″`.
pub fn jacobiator_defect_closed_form(db: &BracketDef, a1: &Word, a2: &Word, b: &Word, c: &Word) -> MultiTensor {
    let mut out = MultiTensor::zero(db.sig(), 3);
    let a2c = db.double_words(a2, c);
    let ba1 = db.double_words(b, a1);
    let a1b = db.double_words(a1, b);
    for ((p, q), x) in a2c.terms() {
        for ((l, r), y) in ba1.terms() {
            out.add_term(vec![p.clone(), l.clone(), r.mul(q)], -(x * y));
        }
        for ((l, r), y) in a1b.terms() {
            out.add_term(vec![p.clone(), r.clone(), l.mul(q)], -(x * y));
        }
    }
    out
}

/// Over words up to `max_len`: `μ(D₁ + D₂)(a⊗b⊗c)` against the Jacobiator,
/// and the derivation defect of `D₁` against its closed form.
pub fn defect_sweep(db: &BracketDef, max_len: usize) -> SweepReport {
    let sig = db.sig();
    let mut rep = SweepReport::new("defect").param("max_len", max_len);
    let words = sig.words_up_to(max_len);
    let p = |w: &Word| NCPoly::word(sig, w.clone());
    for a in &words {
        for b in &words {
            for c in &words {
                let j = jacobiator(db, &p(a), &p(b), &p(c)).expect("same signature");
                let d = &mu_d1_d2(db, a, b, c) - &j;
                rep.record("jacobi-decomposition", (!d.is_zero()).then(|| d.to_string()), || {
                    vec![sig.render_word(a), sig.render_word(b), sig.render_word(c)]
                });
            }
        }
    }
    let gens = sig.generators();
    for a1 in &words {
        for a2 in &words {
            for b in &gens {
                for c in &gens {
                    let d = jacobiator_defect(db, a1, a2, b, c)
                        .checked_sub(&jacobiator_defect_closed_form(db, a1, a2, b, c))
                        .expect("same rank");
                    rep.record("defect-closed-form", (!d.is_zero()).then(|| d.to_string()), || {
                        [a1, a2, b, c].iter().map(|w| sig.render_word(w)).collect()
                    });
                }
            }
        }
    }
    rep
}
