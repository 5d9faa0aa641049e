//! Matrix representations with symbolic entries, for positive words.

use std::sync::Arc;

use crate::dbracket::{builtins, BracketDef};
use crate::error::{Error, Result};
use crate::exactlin::{MPoly, Rat};
use crate::ncalg::{AlgebraSignature, NCPoly, Word};
use crate::report::SweepReport;

use super::point::coordinate;

/// `φ(x_g)_{ij}` is the polynomial variable [`coordinate`]`(N, g, i, j)`.
#[derive(Debug, Clone)]
pub struct SymRep {
    sig: Arc<AlgebraSignature>,
    n: usize,
}

type SymMatrix = Vec<Vec<MPoly>>;

impl SymRep {
    pub fn new(sig: &Arc<AlgebraSignature>, n: usize) -> Self {
        Self { sig: sig.clone(), n }
    }

    pub fn nvars(&self) -> usize {
        self.sig.len() * self.n * self.n
    }

    pub fn variable_names(&self) -> Vec<String> {
        let mut out = Vec::with_capacity(self.nvars());
        for g in 0..self.sig.len() {
            for i in 1..=self.n {
                for j in 1..=self.n {
                    out.push(if self.n < 10 {
                        format!("{}{i}{j}", self.sig.name(g))
                    } else {
                        format!("{}_{i}_{j}", self.sig.name(g))
                    });
                }
            }
        }
        out
    }

    fn generator(&self, g: usize) -> SymMatrix {
        let nv = self.nvars();
        (0..self.n)
            .map(|i| (0..self.n).map(|j| MPoly::var(nv, coordinate(self.n, g, i, j))).collect())
            .collect()
    }

    fn identity(&self) -> SymMatrix {
        let nv = self.nvars();
        (0..self.n)
            .map(|i| {
                (0..self.n)
                    .map(|j| if i == j { MPoly::one(nv) } else { MPoly::zero(nv) })
                    .collect()
            })
            .collect()
    }

    fn mul(&self, a: &SymMatrix, b: &SymMatrix) -> SymMatrix {
        let nv = self.nvars();
        (0..self.n)
            .map(|i| {
                (0..self.n)
                    .map(|j| {
                        (0..self.n).fold(MPoly::zero(nv), |acc, k| &acc + &(&a[i][k] * &b[k][j]))
                    })
                    .collect()
            })
            .collect()
    }

    /// `φ(w)` with polynomial entries; words with inverse letters are rejected.
    pub fn phi_word(&self, w: &Word) -> Result<SymMatrix> {
        if !w.is_positive() {
            return Err(Error::Invalid(
                "symbolic representation is only defined for words without inverse letters".into(),
            ));
        }
        let mut acc = self.identity();
        for l in w.letters() {
            acc = self.mul(&acc, &self.generator(l.generator()));
        }
        Ok(acc)
    }

    pub fn trace_word(&self, w: &Word) -> Result<MPoly> {
        let m = self.phi_word(w)?;
        Ok((0..self.n).fold(MPoly::zero(self.nvars()), |acc, i| &acc + &m[i][i]))
    }

    pub fn trace_poly(&self, a: &NCPoly) -> Result<MPoly> {
        let mut acc = MPoly::zero(self.nvars());
        for (w, c) in a.terms() {
            acc = &acc + &self.trace_word(w)?.scale(c);
        }
        Ok(acc)
    }

    /// `P_{pq} = {x_p, x_q}` as polynomials.
    pub fn structure_matrix(&self, db: &BracketDef) -> Result<SymMatrix> {
        let nv = self.nvars();
        let n = self.n;
        let mut p = vec![vec![MPoly::zero(nv); nv]; nv];
        for x in 0..self.sig.len() {
            for y in 0..self.sig.len() {
                for ((a, b), c) in db.entry(x, y).terms() {
                    let pa = self.phi_word(a)?;
                    let pb = self.phi_word(b)?;
                    for i in 0..n {
                        for j in 0..n {
                            for k in 0..n {
                                for l in 0..n {
                                    let v = (&pa[k][j] * &pb[i][l]).scale(c);
                                    let cell = &mut p[coordinate(n, x, i, j)][coordinate(n, y, k, l)];
                                    *cell = &*cell + &v;
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(p)
    }

    /// `{f, g} = Σ_{p,q} ∂_p f · P_{pq} · ∂_q g`.
    pub fn bracket(&self, p: &[Vec<MPoly>], f: &MPoly, g: &MPoly) -> MPoly {
        let nv = self.nvars();
        let df: Vec<MPoly> = (0..nv).map(|i| f.derivative(i)).collect();
        let dg: Vec<MPoly> = (0..nv).map(|i| g.derivative(i)).collect();
        let mut acc = MPoly::zero(nv);
        for (i, fi) in df.iter().enumerate() {
            if fi.is_zero() {
                continue;
            }
            for (j, gj) in dg.iter().enumerate() {
                if gj.is_zero() || p[i][j].is_zero() {
                    continue;
                }
                acc = &acc + &(&(fi * &p[i][j]) * gj);
            }
        }
        acc
    }
}

/// Right-hand sides of the N = 2 invariant bracket table as polynomials in
/// `t₁..t₅`: `(a, b, {t_a, t_b})`, 1-based.
pub fn t_table_rows() -> Vec<(usize, usize, MPoly)> {
    let tp = |terms: &[(i64, i64, [u32; 5])]| {
        MPoly::from_terms(5, terms.iter().map(|(n, d, e)| (e.to_vec(), Rat::new(*n, *d))))
    };
    vec![
        (1, 2, tp(&[(-1, 1, [0, 0, 0, 1, 0])])),
        (1, 3, tp(&[])),
        (
            1,
            4,
            tp(&[(1, 2, [2, 1, 0, 0, 0]), (-1, 2, [0, 1, 1, 0, 0]), (-1, 1, [1, 0, 0, 1, 0])]),
        ),
        (
            1,
            5,
            tp(&[(1, 1, [1, 2, 0, 0, 0]), (-2, 1, [0, 1, 0, 1, 0]), (-1, 1, [1, 0, 0, 0, 1])]),
        ),
        (
            2,
            3,
            tp(&[(-1, 1, [2, 1, 0, 0, 0]), (1, 1, [0, 1, 1, 0, 0]), (2, 1, [1, 0, 0, 1, 0])]),
        ),
        (
            2,
            4,
            tp(&[(-1, 2, [1, 2, 0, 0, 0]), (1, 1, [0, 1, 0, 1, 0]), (1, 2, [1, 0, 0, 0, 1])]),
        ),
        (2, 5, tp(&[])),
        (
            3,
            4,
            tp(&[
                (1, 1, [3, 1, 0, 0, 0]),
                (-1, 1, [1, 1, 1, 0, 0]),
                (-1, 1, [2, 0, 0, 1, 0]),
                (-1, 1, [0, 0, 1, 1, 0]),
            ]),
        ),
        (
            3,
            5,
            tp(&[(2, 1, [2, 2, 0, 0, 0]), (-4, 1, [1, 1, 0, 1, 0]), (-2, 1, [0, 0, 1, 0, 1])]),
        ),
        (
            4,
            5,
            tp(&[
                (1, 1, [1, 3, 0, 0, 0]),
                (-1, 1, [0, 2, 0, 1, 0]),
                (-1, 1, [1, 1, 0, 0, 1]),
                (-1, 1, [0, 0, 0, 1, 1]),
            ]),
        ),
    ]
}

/// The words `u, v, u², uv, v²` whose traces are `t₁..t₅`.
pub fn t_words() -> Vec<Word> {
    vec![
        Word::from_runs(&[(0, 1)]),
        Word::from_runs(&[(1, 1)]),
        Word::from_runs(&[(0, 2)]),
        Word::from_runs(&[(0, 1), (1, 1)]),
        Word::from_runs(&[(1, 2)]),
    ]
}

/// Checks the ten brackets `{t_a, t_b}` for the Kontsevich bracket at N = 2
/// as exact polynomial identities in the eight matrix entries, once through
/// the coordinate bracket and once as `Tr φ({a, b})`.
pub fn t_table_check() -> SweepReport {
    let db = builtins::kontsevich();
    let sig = db.sig().clone();
    let sym = SymRep::new(&sig, 2);
    let names = sym.variable_names();
    let p = sym.structure_matrix(&db).expect("positive table");
    let words = t_words();
    let ts: Vec<MPoly> = words.iter().map(|w| sym.trace_word(w).expect("positive")).collect();
    let mut rep = SweepReport::new("t-table").param("n", 2);
    for (a, b, rhs) in t_table_rows() {
        let expect = rhs.compose(&ts).expect("five substitutions");
        let inputs = || vec![format!("t{a}"), format!("t{b}")];
        let got = sym.bracket(&p, &ts[a - 1], &ts[b - 1]);
        let d = &got - &expect;
        rep.record(
            "coordinate-bracket",
            (!d.is_zero()).then(|| d.display_with(&names).to_string()),
            inputs,
        );
        let lod = db.loday_words(&words[a - 1], &words[b - 1]);
        let got = sym.trace_poly(&lod).expect("positive");
        let d = &got - &expect;
        rep.record(
            "trace-of-loday",
            (!d.is_zero()).then(|| d.display_with(&names).to_string()),
            inputs,
        );
    }
    rep
}
