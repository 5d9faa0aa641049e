use super::BracketDef;
use crate::ncalg::{cyclic_project, NCPoly, Word};
use crate::report::SweepReport;

/// Domain of the third Jacobi argument.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JacobiC {
    /// Generators only; enough because the Jacobiator is a derivation in `c`.
    Generators,
    /// All reduced words up to the given length.
    Words(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// `{w, c} = 0` for all `w`.
    Right,
    /// `{c, w} = 0` for all `w`.
    Left,
}

pub(crate) fn render_poly(p: &NCPoly) -> String {
    p.to_string()
}

/// `{a,{b,c}} − {b,{a,c}} − {{a,b},c}`.
pub fn jacobiator(db: &BracketDef, a: &NCPoly, b: &NCPoly, c: &NCPoly) -> crate::Result<NCPoly> {
    let bc = db.loday(b, c)?;
    let ac = db.loday(a, c)?;
    let ab = db.loday(a, b)?;
    let t1 = db.loday(a, &bc)?;
    let t2 = db.loday(b, &ac)?;
    let t3 = db.loday(&ab, c)?;
    Ok(&(&t1 - &t2) - &t3)
}

/// Weak skew-symmetry over unordered word pairs and the Loday–Jacobi
/// identity over `(a, b, c)`.
pub fn verify_axioms(
    db: &BracketDef,
    skew_max_len: usize,
    jacobi_len_a: usize,
    jacobi_len_b: usize,
    c_mode: JacobiC,
) -> SweepReport {
    let sig = db.sig();
    let mut rep = SweepReport::new("verify")
        .param("skew_max_len", skew_max_len)
        .param("jacobi_len_a", jacobi_len_a)
        .param("jacobi_len_b", jacobi_len_b)
        .param(
            "jacobi_c",
            match c_mode {
                JacobiC::Generators => "generators".to_string(),
                JacobiC::Words(n) => format!("words<={n}"),
            },
        );

    let words = sig.words_up_to(skew_max_len);
    for (i, a) in words.iter().enumerate() {
        for b in &words[i..] {
            let mut s = db.loday_words(a, b);
            s = &s + &db.loday_words(b, a);
            let r = cyclic_project(&s);
            rep.record(
                "weak-skew",
                (!r.is_zero()).then(|| r.to_string()),
                || vec![sig.render_word(a), sig.render_word(b)],
            );
        }
    }

    let aw = sig.words_up_to(jacobi_len_a);
    let bw = sig.words_up_to(jacobi_len_b);
    let cw = match c_mode {
        JacobiC::Generators => sig.generators(),
        JacobiC::Words(n) => sig.words_up_to(n),
    };
    let to_poly = |w: &Word| NCPoly::word(sig, w.clone());
    // {b, c} for every b and c is reused across all a.
    let bc: Vec<Vec<NCPoly>> = bw
        .iter()
        .map(|b| cw.iter().map(|c| db.loday_words(b, c)).collect())
        .collect();
    let ac: Vec<Vec<NCPoly>> = aw
        .iter()
        .map(|a| cw.iter().map(|c| db.loday_words(a, c)).collect())
        .collect();
    for (ia, a) in aw.iter().enumerate() {
        for (ib, b) in bw.iter().enumerate() {
            let ab = db.loday_words(a, b);
            let bp = to_poly(b);
            for (ic, c) in cw.iter().enumerate() {
                let mut acc = db.loday_word_poly(a, &bc[ib][ic]);
                acc = &acc - &db.loday_unchecked(&bp, &ac[ia][ic]);
                acc = &acc - &db.loday_poly_word(&ab, c);
                rep.record(
                    "jacobi",
                    (!acc.is_zero()).then(|| render_poly(&acc)),
                    || vec![sig.render_word(a), sig.render_word(b), sig.render_word(c)],
                );
            }
        }
    }
    rep
}

/// Checks that `c` annihilates every cyclic word on the chosen side.
pub fn casimir_check(db: &BracketDef, c: &NCPoly, max_len: usize, side: Side) -> SweepReport {
    let sig = db.sig();
    let mut rep = SweepReport::new("casimir")
        .param("casimir", c.to_string())
        .param("max_len", max_len)
        .param("side", if side == Side::Right { "right" } else { "left" });
    for w in sig.cyclic_words_up_to(max_len) {
        let r = match side {
            Side::Right => db.loday_word_poly(&w, c),
            Side::Left => db.loday_poly_word(c, &w),
        };
        rep.record(
            if side == Side::Right { "right-casimir" } else { "left-casimir" },
            (!r.is_zero()).then(|| r.to_string()),
            || vec![sig.render_word(&w)],
        );
    }
    rep
}
