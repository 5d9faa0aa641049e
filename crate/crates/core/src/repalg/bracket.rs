use std::collections::{BTreeMap, HashMap};
use std::fmt;

use super::{comatrix_coalgebra, Coalgebra};
use crate::dbracket::BracketDef;
use crate::error::{Error, Result};
use crate::exactlin::{QMatrix, Rat};
use crate::ncalg::{add_into, Word};
use crate::repn::{induced_bracket_point, RepPoint};
use crate::report::SweepReport;

/// The generator `a_α` of the representation algebra.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RepAlgSymbol {
    pub base: Word,
    pub index: usize,
}

/// A polynomial in the commuting symbols `a_α`. Monomials are sorted symbol
/// lists; symbols `1_α` are replaced by `ε(α)`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RepAlgElement {
    terms: BTreeMap<Vec<RepAlgSymbol>, Rat>,
}

impl RepAlgElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<RepAlgSymbol>, &Rat)> {
        self.terms.iter()
    }

    pub fn add_monomial(&mut self, co: &Coalgebra, symbols: Vec<RepAlgSymbol>, c: Rat) {
        let mut c = c;
        let mut kept = Vec::with_capacity(symbols.len());
        for s in symbols {
            if s.base.is_one() {
                c = &c * co.eps(s.index);
            } else {
                kept.push(s);
            }
        }
        kept.sort();
        add_into(&mut self.terms, kept, c);
    }

    /// Substitutes a value for every symbol.
    pub fn eval_with<F: FnMut(&RepAlgSymbol) -> Rat>(&self, mut f: F) -> Rat {
        let mut acc = Rat::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for s in m {
                t = &t * &f(s);
            }
            acc += t;
        }
        acc
    }

    /// Evaluation through the comatrix coalgebra: `a_{e_pq} ↦ φ(a)_pq`.
    pub fn eval_comatrix(&self, rep: &RepPoint) -> Rat {
        let n = rep.n();
        self.eval_with(|s| rep.phi_word(&s.base)[(s.index / n, s.index % n)].clone())
    }

    pub fn display<'a>(&'a self, db: &'a BracketDef, co: &'a Coalgebra) -> impl fmt::Display + 'a {
        Render { e: self, db, co }
    }
}

struct Render<'a> {
    e: &'a RepAlgElement,
    db: &'a BracketDef,
    co: &'a Coalgebra,
}

impl fmt::Display for Render<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.e.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.e.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let syms: Vec<String> = m
                .iter()
                .map(|s| format!("({})_{}", self.db.sig().render_word(&s.base), self.co.label(s.index)))
                .collect();
            if syms.is_empty() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{}", syms.join("*"))?;
            } else {
                write!(f, "{a}*{}", syms.join("*"))?;
            }
        }
        Ok(())
    }
}

/// `{a_α, b_β} = Σ ν̄(α, β) ⟦a,b⟧′_{β¹} ⟦a,b⟧″_{β³}` with the first and
/// third legs of `Δ³(β)` carrying the two tensor factors.
pub fn repalg_bracket(db: &BracketDef, co: &Coalgebra, a: &Word, alpha: usize, b: &Word, beta: usize) -> Result<RepAlgElement> {
    if alpha >= co.dim() || beta >= co.dim() {
        return Err(Error::Invalid("basis index out of range".into()));
    }
    let nb = co.nu_bar(alpha, beta);
    let mut out = RepAlgElement::zero();
    for ((d1, d2), c) in db.double_words(a, b).terms() {
        for (&(p, q), x) in &nb {
            out.add_monomial(
                co,
                vec![
                    RepAlgSymbol {
                        base: d1.clone(),
                        index: p,
                    },
                    RepAlgSymbol {
                        base: d2.clone(),
                        index: q,
                    },
                ],
                c * x,
            );
        }
    }
    Ok(out)
}

/// Compares the representation-algebra bracket over the N×N comatrix
/// coalgebra, evaluated at `rep`, against the coordinate bracket of matrix
/// entries, for all word pairs up to `max_len` and all index quadruples.
pub fn crosscheck_rep(db: &BracketDef, n: usize, max_len: usize, rep: &RepPoint) -> Result<SweepReport> {
    if rep.n() != n {
        return Err(Error::ArityMismatch {
            expected: n,
            found: rep.n(),
        });
    }
    if db.sig() != rep.sig() {
        return Err(Error::SignatureMismatch);
    }
    let co = comatrix_coalgebra(n)?;
    let sig = db.sig();
    let mut out = SweepReport::new("crosscheck-repalg")
        .param("n", n)
        .param("max_len", max_len);
    if let Some(s) = rep.seed() {
        out = out.with_seed(s);
    }
    let mut cache: HashMap<Word, QMatrix> = HashMap::new();
    let words = sig.words_up_to(max_len);
    for x in &words {
        for y in &words {
            for i in 0..n {
                for j in 0..n {
                    for k in 0..n {
                        for l in 0..n {
                            let e = repalg_bracket(db, &co, x, i * n + j, y, k * n + l)?;
                            let lhs = e.eval_with(|s| {
                                cache
                                    .entry(s.base.clone())
                                    .or_insert_with(|| rep.phi_word(&s.base))[(s.index / n, s.index % n)]
                                    .clone()
                            });
                            let rhs = induced_bracket_point(db, rep, x, (i, j), y, (k, l))?;
                            out.record(
                                "comatrix-vs-coordinates",
                                (lhs != rhs).then(|| format!("{lhs} vs {rhs}")),
                                || {
                                    vec![
                                        sig.render_word(x),
                                        format!("({},{})", i + 1, j + 1),
                                        sig.render_word(y),
                                        format!("({},{})", k + 1, l + 1),
                                    ]
                                },
                            );
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}
