//! Matrix representations: induced brackets on matrix entries, trace
//! functions, the invariant Poisson bracket, generic leaf dimensions and the
//! exact N = 2 invariant table.

mod moduli;
mod point;
mod symbolic;

pub use moduli::{moduli_dims, GramMethod, ModuliOptions, ModuliReport, StabilizationStep};
pub use point::{
    coordinate, full_gradient, full_gradient_poly, induced_bracket_point, invariant_bracket, structure_matrix,
    trace_fn, trace_gradient, RepPoint, DEFAULT_RANGE,
};
pub use symbolic::{t_table_check, t_table_rows, t_words, SymRep};

use crate::dbracket::BracketDef;
use crate::error::Result;
use crate::exactlin::Rat;
use crate::ncalg::NCPoly;
use crate::report::SweepReport;

/// Checks `{φ₀(w), φ(c)_kl} = φ({w, c})_kl = 0` for every cyclic word `w`
/// up to `max_len` and every entry `(k, l)`. The left side is summed from
/// coordinate brackets, the right side evaluates the Loday bracket.
pub fn casimir_rep_check(db: &BracketDef, rep: &RepPoint, c: &NCPoly, max_len: usize) -> Result<SweepReport> {
    point::check_sig(db, rep)?;
    let sig = db.sig();
    let n = rep.n();
    let mut out = SweepReport::new("casimir-rep")
        .param("n", n)
        .param("max_len", max_len)
        .param("casimir", c.to_string());
    if let Some(s) = rep.seed() {
        out = out.with_seed(s);
    }
    for w in sig.cyclic_words_up_to(max_len) {
        let rhs = rep.phi_eval(&db.loday_word_poly(&w, c))?;
        for k in 0..n {
            for l in 0..n {
                let mut lhs = Rat::zero();
                for (cw, cc) in c.terms() {
                    for i in 0..n {
                        lhs += cc * &induced_bracket_point(db, rep, &w, (i, i), cw, (k, l))?;
                    }
                }
                let inputs = || vec![sig.render_word(&w), format!("({},{})", k + 1, l + 1)];
                out.record(
                    "two-path",
                    (lhs != rhs[(k, l)]).then(|| format!("{} vs {}", lhs, rhs[(k, l)])),
                    inputs,
                );
                out.record("vanishes", (!lhs.is_zero()).then(|| lhs.to_string()), inputs);
            }
        }
    }
    Ok(out)
}
