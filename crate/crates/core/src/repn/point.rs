use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dbracket::BracketDef;
use crate::error::{Error, Result};
use crate::exactlin::{QMatrix, Rat};
use crate::ncalg::{AlgebraSignature, Letter, NCPoly, Word};

/// Default half-width of the integer range random entries are drawn from.
pub const DEFAULT_RANGE: i64 = 10;

/// An N-dimensional representation: one rational matrix per generator.
#[derive(Debug, Clone, PartialEq)]
pub struct RepPoint {
    sig: Arc<AlgebraSignature>,
    n: usize,
    /// Indexed by [`Letter::index`]; inverse slots of non-invertible
    /// generators hold zero matrices and are never read.
    letters: Vec<QMatrix>,
    seed: Option<u64>,
    range: i64,
}

impl RepPoint {
    /// A point from explicit generator matrices.
    pub fn new(sig: &Arc<AlgebraSignature>, mats: Vec<QMatrix>) -> Result<Self> {
        if mats.len() != sig.len() {
            return Err(Error::ArityMismatch {
                expected: sig.len(),
                found: mats.len(),
            });
        }
        let n = mats.first().map_or(0, QMatrix::rows);
        let mut letters = Vec::with_capacity(2 * sig.len());
        for (g, m) in mats.into_iter().enumerate() {
            if m.rows() != n || m.cols() != n {
                return Err(Error::NotSquare {
                    rows: m.rows(),
                    cols: m.cols(),
                });
            }
            let inv = if sig.is_invertible(g) {
                m.inverse()?
            } else {
                QMatrix::zeros(n, n)
            };
            letters.push(m);
            letters.push(inv);
        }
        Ok(Self {
            sig: sig.clone(),
            n,
            letters,
            seed: None,
            range: 0,
        })
    }

    /// A random point with integer entries in `-range..=range`, redrawn until
    /// every invertible generator gets a nonsingular matrix.
    pub fn random(sig: &Arc<AlgebraSignature>, n: usize, seed: u64, range: i64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut p = Self::random_with(sig, n, &mut rng, range);
        p.seed = Some(seed);
        p
    }

    pub fn random_with<R: Rng>(sig: &Arc<AlgebraSignature>, n: usize, rng: &mut R, range: i64) -> Self {
        loop {
            let mats = (0..sig.len())
                .map(|_| {
                    QMatrix::from_rows(
                        (0..n)
                            .map(|_| (0..n).map(|_| Rat::from_int(rng.gen_range(-range..=range))).collect())
                            .collect(),
                    )
                })
                .collect();
            if let Ok(mut p) = Self::new(sig, mats) {
                p.range = range;
                return p;
            }
        }
    }

    pub fn sig(&self) -> &Arc<AlgebraSignature> {
        &self.sig
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    pub fn range(&self) -> i64 {
        self.range
    }

    pub fn matrix(&self, g: usize) -> &QMatrix {
        &self.letters[Letter::pos(g).index()]
    }

    pub fn letter(&self, l: Letter) -> &QMatrix {
        &self.letters[l.index()]
    }

    /// `φ(w)`.
    pub fn phi_word(&self, w: &Word) -> QMatrix {
        self.phi_letters(w.letters())
    }

    pub(crate) fn phi_letters(&self, ls: &[Letter]) -> QMatrix {
        match ls.split_first() {
            None => QMatrix::identity(self.n),
            Some((&first, rest)) => rest
                .iter()
                .fold(self.letter(first).clone(), |acc, &l| &acc * self.letter(l)),
        }
    }

    /// `φ(a)`, extended linearly.
    pub fn phi_eval(&self, a: &NCPoly) -> Result<QMatrix> {
        if a.sig() != &self.sig {
            return Err(Error::SignatureMismatch);
        }
        let mut out = QMatrix::zeros(self.n, self.n);
        for (w, c) in a.terms() {
            out = &out + &self.phi_word(w).scale(c);
        }
        Ok(out)
    }

    /// Prefix products `φ(w_{<p})` for `p = 0..=|w|`.
    pub(crate) fn prefixes(&self, w: &Word) -> Vec<QMatrix> {
        let mut out = Vec::with_capacity(w.len() + 1);
        out.push(QMatrix::identity(self.n));
        for &l in w.letters() {
            let next = out.last().expect("nonempty") * self.letter(l);
            out.push(next);
        }
        out
    }

    /// Suffix products `φ(w_{>p})` for `p = 0..|w|`, plus identity at the end.
    pub(crate) fn suffixes(&self, w: &Word) -> Vec<QMatrix> {
        let k = w.len();
        let mut out = vec![QMatrix::identity(self.n); k + 1];
        for p in (0..k).rev() {
            out[p] = self.letter(w.letters()[p]) * &out[p + 1];
        }
        // out[p] = φ(w_{≥p}); shift so that entry p is φ(w_{>p}).
        out.remove(0);
        out
    }
}

/// `{φ(x)_ij, φ(y)_kl} = Σ φ(⟦x,y⟧′)_kj φ(⟦x,y⟧″)_il` (indices 0-based).
pub fn induced_bracket_point(
    db: &BracketDef,
    rep: &RepPoint,
    x: &Word,
    (i, j): (usize, usize),
    y: &Word,
    (k, l): (usize, usize),
) -> Result<Rat> {
    check_sig(db, rep)?;
    let n = rep.n();
    if [i, j, k, l].iter().any(|&t| t >= n) {
        return Err(Error::Invalid(format!("matrix index out of range for N={n}")));
    }
    let mut acc = Rat::zero();
    for ((a, b), c) in db.double_words(x, y).terms() {
        let pa = rep.phi_word(a);
        let pb = rep.phi_word(b);
        acc += &(c * &pa[(k, j)]) * &pb[(i, l)];
    }
    Ok(acc)
}

pub(crate) fn check_sig(db: &BracketDef, rep: &RepPoint) -> Result<()> {
    if db.sig() != rep.sig() {
        return Err(Error::SignatureMismatch);
    }
    Ok(())
}

/// Coordinate index of `(X_g)_{ij}` in the flattened list of all entries.
pub fn coordinate(n: usize, g: usize, i: usize, j: usize) -> usize {
    g * n * n + i * n + j
}

/// The matrix of brackets `{x_p, x_q}` of all coordinate functions at the point.
pub fn structure_matrix(db: &BracketDef, rep: &RepPoint) -> Result<QMatrix> {
    check_sig(db, rep)?;
    let n = rep.n();
    let g = rep.sig().len();
    let dim = g * n * n;
    let mut p = QMatrix::zeros(dim, dim);
    for x in 0..g {
        for y in 0..g {
            let d = db.entry(x, y);
            for ((a, b), c) in d.terms() {
                let pa = rep.phi_word(a).scale(c);
                let pb = rep.phi_word(b);
                for i in 0..n {
                    for j in 0..n {
                        for k in 0..n {
                            if pa[(k, j)].is_zero() {
                                continue;
                            }
                            for l in 0..n {
                                let v = &pa[(k, j)] * &pb[(i, l)];
                                p[(coordinate(n, x, i, j), coordinate(n, y, k, l))] += v;
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(p)
}

/// `Tr φ(w)`.
pub fn trace_fn(rep: &RepPoint, w: &Word) -> Rat {
    rep.phi_word(w).trace()
}

/// Matrix of partial derivatives `∂ Tr φ(w) / ∂(X_g)_{ij}`.
///
/// Each occurrence `w = A x B` contributes `(BA)ᵀ`; an occurrence of `x⁻¹`
/// contributes `−(X⁻¹ B A X⁻¹)ᵀ`.
pub fn trace_gradient(rep: &RepPoint, w: &Word, g: usize) -> QMatrix {
    let n = rep.n();
    let pre = rep.prefixes(w);
    let suf = rep.suffixes(w);
    let mut out = QMatrix::zeros(n, n);
    for (p, &l) in w.letters().iter().enumerate() {
        if l.generator() != g {
            continue;
        }
        let ba = &suf[p] * &pre[p];
        if l.is_inverse() {
            let xi = rep.letter(l);
            let m = &(xi * &ba) * xi;
            out = &out - &m.transpose();
        } else {
            out = &out + &ba.transpose();
        }
    }
    out
}

/// All partial derivatives of `Tr φ(w)`, flattened by [`coordinate`].
pub fn full_gradient(rep: &RepPoint, w: &Word) -> Vec<Rat> {
    let mut out = Vec::with_capacity(rep.sig().len() * rep.n() * rep.n());
    for g in 0..rep.sig().len() {
        out.extend(trace_gradient(rep, w, g).entries().iter().cloned());
    }
    out
}

/// Gradient of `Tr φ(a)` for an algebra element.
pub fn full_gradient_poly(rep: &RepPoint, a: &NCPoly) -> Vec<Rat> {
    let dim = rep.sig().len() * rep.n() * rep.n();
    let mut out = vec![Rat::zero(); dim];
    for (w, c) in a.terms() {
        for (o, x) in out.iter_mut().zip(full_gradient(rep, w)) {
            *o += c * &x;
        }
    }
    out
}

/// `{φ₀(a), φ₀(b)}` at the point, computed as `Tr φ({a, b})`.
pub fn invariant_bracket(db: &BracketDef, rep: &RepPoint, a: &Word, b: &Word) -> Result<Rat> {
    check_sig(db, rep)?;
    Ok(rep.phi_eval(&db.loday_words(a, b))?.trace())
}
