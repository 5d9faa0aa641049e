//! Generic dimensions of the moduli space, its symplectic leaves and the
//! Casimir level sets, from exact ranks at random points.

use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::point::{full_gradient, full_gradient_poly, invariant_bracket, structure_matrix, RepPoint, DEFAULT_RANGE};
use crate::dbracket::BracketDef;
use crate::error::{Error, Result};
use crate::exactlin::{QMatrix, Rat};
use crate::ncalg::{NCPoly, Word};
use crate::report::SCHEMA_VERSION;

/// How the Gram matrix `{φ₀(w_a), φ₀(w_b)}` is filled.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GramMethod {
    /// `J P Jᵀ` with `J` the trace gradients and `P` the coordinate brackets.
    Contraction,
    /// `Tr φ({w_a, w_b})` entry by entry.
    Direct,
}

#[derive(Debug, Clone)]
pub struct ModuliOptions {
    pub max_word_len: usize,
    pub samples: usize,
    pub seed: u64,
    pub range: i64,
    /// Element whose trace powers `Tr φ(cᵏ)`, `k < N`, are ranked.
    pub casimir: Option<NCPoly>,
    pub gram: GramMethod,
}

impl Default for ModuliOptions {
    fn default() -> Self {
        Self {
            max_word_len: 8,
            samples: 2,
            seed: 1,
            range: DEFAULT_RANGE,
            casimir: None,
            gram: GramMethod::Contraction,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StabilizationStep {
    pub len: usize,
    pub words: usize,
    pub dim_inv: usize,
    pub dim_leaf: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ModuliReport {
    pub schema_version: u32,
    pub n: usize,
    pub dim_inv: usize,
    pub dim_leaf: usize,
    pub casimir_codim: Option<usize>,
    /// Whether the Casimir traces bracket to zero with every sampled invariant.
    pub casimirs_central: Option<bool>,
    pub word_len_reached: usize,
    pub stabilized: bool,
    pub samples: usize,
    pub seed: u64,
    pub range: i64,
    pub gram_method: String,
    pub trace: Vec<StabilizationStep>,
    pub warnings: Vec<String>,
}

impl ModuliReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut s = format!(
            "N={}: dim inv = {}, dim leaf = {}, casimir codim = {}\n",
            self.n,
            self.dim_inv,
            self.dim_leaf,
            self.casimir_codim.map_or("-".to_string(), |c| c.to_string())
        );
        for t in &self.trace {
            s += &format!(
                "  len {}: {} words, dim inv {}, dim leaf {}\n",
                t.len, t.words, t.dim_inv, t.dim_leaf
            );
        }
        for w in &self.warnings {
            s += &format!("  warning: {w}\n");
        }
        s
    }
}

struct Sample {
    rep: RepPoint,
    p: QMatrix,
    rows: Vec<Vec<Rat>>,
}

fn gram_contraction(rows: &[Vec<Rat>], p: &QMatrix) -> QMatrix {
    let j = QMatrix::from_rows(rows.to_vec());
    &(&j * p) * &j.transpose()
}

fn gram_direct(db: &BracketDef, rep: &RepPoint, words: &[Word]) -> Result<QMatrix> {
    let mut rows = Vec::with_capacity(words.len());
    for a in words {
        let mut row = Vec::with_capacity(words.len());
        for b in words {
            row.push(invariant_bracket(db, rep, a, b)?);
        }
        rows.push(row);
    }
    Ok(QMatrix::from_rows(rows))
}

/// Ranks of trace-gradient Jacobians and Gram matrices over positive cyclic
/// words of growing length, maximized over random points. Stops once both
/// ranks are unchanged for two consecutive length increments.
pub fn moduli_dims(db: &BracketDef, n: usize, opts: &ModuliOptions) -> Result<ModuliReport> {
    if n == 0 {
        return Err(Error::Invalid("dimension must be at least 1".into()));
    }
    if opts.samples == 0 {
        return Err(Error::Invalid("at least one sample point is needed".into()));
    }
    let sig: Arc<_> = db.sig().clone();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut samples = Vec::with_capacity(opts.samples);
    for _ in 0..opts.samples {
        let rep = RepPoint::random_with(&sig, n, &mut rng, opts.range);
        let p = structure_matrix(db, &rep)?;
        samples.push(Sample { rep, p, rows: Vec::new() });
    }

    let all: Vec<Word> = sig
        .cyclic_words_up_to(opts.max_word_len)
        .into_iter()
        .filter(|w| w.is_positive() && !w.is_one())
        .collect();
    let mut words: Vec<Word> = Vec::new();
    let mut trace = Vec::new();
    let mut stabilized = false;
    let mut reached = 0;
    for len in 1..=opts.max_word_len {
        let fresh: Vec<&Word> = all.iter().filter(|w| w.len() == len).collect();
        words.extend(fresh.iter().map(|w| (*w).clone()));
        let (mut dim_inv, mut dim_leaf) = (0, 0);
        for s in &mut samples {
            for w in &fresh {
                s.rows.push(full_gradient(&s.rep, w));
            }
            if s.rows.is_empty() {
                continue;
            }
            dim_inv = dim_inv.max(QMatrix::from_rows(s.rows.clone()).rank());
            let g = match opts.gram {
                GramMethod::Contraction => gram_contraction(&s.rows, &s.p),
                GramMethod::Direct => gram_direct(db, &s.rep, &words)?,
            };
            dim_leaf = dim_leaf.max(g.rank());
        }
        trace.push(StabilizationStep {
            len,
            words: words.len(),
            dim_inv,
            dim_leaf,
        });
        reached = len;
        let k = trace.len();
        if k >= 3
            && (trace[k - 3].dim_inv, trace[k - 3].dim_leaf) == (dim_inv, dim_leaf)
            && (trace[k - 2].dim_inv, trace[k - 2].dim_leaf) == (dim_inv, dim_leaf)
        {
            stabilized = true;
            break;
        }
    }
    let last = trace.last().cloned().unwrap_or(StabilizationStep {
        len: 0,
        words: 0,
        dim_inv: 0,
        dim_leaf: 0,
    });
    let mut warnings = Vec::new();
    if !stabilized {
        warnings.push(format!(
            "ranks not stable for two consecutive lengths by word length {reached}"
        ));
    }

    let (casimir_codim, casimirs_central) = match &opts.casimir {
        None => (None, None),
        Some(c) => {
            let mut codim = 0;
            let mut central = true;
            for s in &samples {
                let grads: Vec<Vec<Rat>> = (1..n)
                    .map(|k| full_gradient_poly(&s.rep, &c.pow(k)))
                    .collect();
                if grads.is_empty() {
                    continue;
                }
                let cm = QMatrix::from_rows(grads);
                codim = codim.max(cm.rank());
                if !s.rows.is_empty() {
                    let j = QMatrix::from_rows(s.rows.clone());
                    let right = &(&j * &s.p) * &cm.transpose();
                    let left = &(&cm * &s.p) * &j.transpose();
                    central &= right.is_zero() && left.is_zero();
                }
            }
            (Some(codim), Some(central))
        }
    };

    Ok(ModuliReport {
        schema_version: SCHEMA_VERSION,
        n,
        dim_inv: last.dim_inv,
        dim_leaf: last.dim_leaf,
        casimir_codim,
        casimirs_central,
        word_len_reached: reached,
        stabilized,
        samples: opts.samples,
        seed: opts.seed,
        range: opts.range,
        gram_method: match opts.gram {
            GramMethod::Contraction => "contraction",
            GramMethod::Direct => "direct",
        }
        .to_string(),
        trace,
        warnings,
    })
}
