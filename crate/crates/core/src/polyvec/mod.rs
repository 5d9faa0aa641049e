//! Noncommutative vector fields, their ⋆-products, and the partial trace
//! that turns a poly-vector into a poly-derivation.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::dbracket::{builtins, BracketDef};
use crate::error::{Error, Result};
use crate::exactlin::Rat;
use crate::ncalg::{AlgebraSignature, Letter, MultiTensor, NCPoly, TensorPoly, Word};
use crate::report::SweepReport;

/// A map δ: A → A⊗A with `δ(ab) = (a⊗1)δ(b) + δ(a)(1⊗b)`, given on generators.
#[derive(Debug, Clone, PartialEq)]
pub struct VectorField {
    sig: Arc<AlgebraSignature>,
    table: BTreeMap<usize, TensorPoly>,
}

impl VectorField {
    pub fn new(sig: &Arc<AlgebraSignature>, table: BTreeMap<usize, TensorPoly>) -> Result<Self> {
        for (&g, t) in &table {
            if g >= sig.len() {
                return Err(Error::Invalid(format!("generator index {g} out of range")));
            }
            if t.sig() != sig {
                return Err(Error::SignatureMismatch);
            }
        }
        Ok(Self {
            sig: sig.clone(),
            table: table.into_iter().filter(|(_, t)| !t.is_zero()).collect(),
        })
    }

    pub fn zero(sig: &Arc<AlgebraSignature>) -> Self {
        Self {
            sig: sig.clone(),
            table: BTreeMap::new(),
        }
    }

    pub fn sig(&self) -> &Arc<AlgebraSignature> {
        &self.sig
    }

    pub fn table(&self) -> &BTreeMap<usize, TensorPoly> {
        &self.table
    }

    /// `δ(w) = Σ_i (w_{<i} ⊗ 1) δ(w_i) (1 ⊗ w_{>i})`, with
    /// `δ(x⁻¹) = −(x⁻¹⊗1)δ(x)(1⊗x⁻¹)`.
    pub fn apply_word(&self, w: &Word) -> TensorPoly {
        let mut out = TensorPoly::zero(&self.sig);
        let ls = w.letters();
        for (i, &l) in ls.iter().enumerate() {
            let Some(t) = self.table.get(&l.generator()) else {
                continue;
            };
            let (pre, post) = (&ls[..i], &ls[i + 1..]);
            let inv = [l];
            let (wrap, sign) = if l.is_inverse() {
                (&inv[..], Rat::from_int(-1))
            } else {
                (&[][..], Rat::one())
            };
            for ((a, b), c) in t.terms() {
                out.add_term(
                    Word::from_parts(&[pre, wrap, a.letters()]),
                    Word::from_parts(&[b.letters(), wrap, post]),
                    c * &sign,
                );
            }
        }
        out
    }

    pub fn apply(&self, a: &NCPoly) -> Result<TensorPoly> {
        if a.sig() != &self.sig {
            return Err(Error::SignatureMismatch);
        }
        let mut out = TensorPoly::zero(&self.sig);
        for (w, c) in a.terms() {
            out = &out + &self.apply_word(w).scale(c);
        }
        Ok(out)
    }
}

/// A linear combination of ⋆-products `δ₁ ⋆ … ⋆ δ_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyVector {
    sig: Arc<AlgebraSignature>,
    summands: Vec<(Rat, Vec<VectorField>)>,
}

impl PolyVector {
    pub fn new(sig: &Arc<AlgebraSignature>) -> Self {
        Self {
            sig: sig.clone(),
            summands: Vec::new(),
        }
    }

    /// Adds `c · δ₁ ⋆ … ⋆ δ_k`.
    pub fn add(mut self, c: Rat, factors: Vec<VectorField>) -> Result<Self> {
        if factors.iter().any(|f| f.sig() != &self.sig) {
            return Err(Error::SignatureMismatch);
        }
        self.summands.push((c, factors));
        Ok(self)
    }

    pub fn summands(&self) -> &[(Rat, Vec<VectorField>)] {
        &self.summands
    }

    pub fn sig(&self) -> &Arc<AlgebraSignature> {
        &self.sig
    }
}

/// `tr(δ₁⋆…⋆δ_k)(a₁⊗…⊗a_k) = δ_k(a_k)′δ₁(a₁)″ ⊗ δ_{k−1}(a_{k−1})′δ_k(a_k)″ ⊗ … ⊗ δ₁(a₁)′δ₂(a₂)″`,
/// summed over the summands. Degree 1 is rejected.
pub fn partial_trace(p: &PolyVector, args: &[NCPoly]) -> Result<MultiTensor> {
    let k = args.len();
    if k < 2 {
        return Err(Error::Invalid("partial trace is defined for degree at least 2".into()));
    }
    if args.iter().any(|a| a.sig() != &p.sig) {
        return Err(Error::SignatureMismatch);
    }
    let mut out = MultiTensor::zero(&p.sig, k);
    for (coef, fields) in &p.summands {
        if fields.len() != k {
            return Err(Error::ArityMismatch {
                expected: fields.len(),
                found: k,
            });
        }
        let vals: Vec<TensorPoly> = fields
            .iter()
            .zip(args)
            .map(|(f, a)| f.apply(a))
            .collect::<Result<_>>()?;
        trace_summand(coef, &vals, &mut out);
    }
    Ok(out)
}

fn trace_summand(coef: &Rat, vals: &[TensorPoly], out: &mut MultiTensor) {
    let k = vals.len();
    let terms: Vec<Vec<(&(Word, Word), &Rat)>> = vals.iter().map(|t| t.terms().collect()).collect();
    if terms.iter().any(Vec::is_empty) {
        return;
    }
    // Odometer over one term from each δ_i(a_i).
    let mut idx = vec![0usize; k];
    loop {
        let mut c = coef.clone();
        for (i, &j) in idx.iter().enumerate() {
            c = &c * terms[i][j].1;
        }
        let pick = |i: usize| terms[i][idx[i]].0;
        let mut slots = Vec::with_capacity(k);
        slots.push(pick(k - 1).0.mul(&pick(0).1));
        for s in 2..=k {
            let m = k - s + 1;
            slots.push(pick(m - 1).0.mul(&pick(m).1));
        }
        out.add_term(slots, c);
        let mut pos = 0;
        loop {
            if pos == k {
                return;
            }
            idx[pos] += 1;
            if idx[pos] < terms[pos].len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

/// The bracket table `(x, y) ↦ δb(y)′δa(x)″ ⊗ δa(x)′δb(y)″` of `tr(δa ⋆ δb)`.
pub fn trace_bivector(da: &VectorField, db: &VectorField) -> Result<BracketDef> {
    let p = PolyVector::new(da.sig()).add(Rat::one(), vec![da.clone(), db.clone()])?;
    bivector_bracket(&p)
}

/// The bracket whose generator table is the partial trace of a bivector.
pub fn bivector_bracket(p: &PolyVector) -> Result<BracketDef> {
    let sig = p.sig();
    let mut table = BTreeMap::new();
    for x in 0..sig.len() {
        for y in 0..sig.len() {
            let args = [NCPoly::generator(sig, x), NCPoly::generator(sig, y)];
            let t = partial_trace(p, &args)?;
            table.insert((x, y), multi_to_pair(&t));
        }
    }
    BracketDef::new(sig, table)
}

pub fn multi_to_pair(t: &MultiTensor) -> TensorPoly {
    assert_eq!(t.rank(), 2, "rank-2 tensor expected");
    TensorPoly::from_terms(
        t.sig(),
        t.terms().map(|(f, c)| ((f[0].clone(), f[1].clone()), c.clone())),
    )
}

/// The fields δ₁, δ₂, δ̃₁, δ̃₂ on `ℂ⟨u^±, v^±⟩`.
pub fn kontsevich_fields(sig: &Arc<AlgebraSignature>) -> [VectorField; 4] {
    let u = Word::letter(Letter::pos(0));
    let v = Word::letter(Letter::pos(1));
    let one = Word::one();
    let t = |l: &Word, r: &Word| TensorPoly::term(sig, l.clone(), r.clone(), Rat::one());
    let f = |entries: Vec<(usize, TensorPoly)>| VectorField::new(sig, entries.into_iter().collect()).expect("valid field");
    [
        f(vec![(0, t(&one, &u)), (1, t(&one, &v))]),
        f(vec![(0, t(&u, &one))]),
        f(vec![(0, t(&u, &one)), (1, t(&v, &one))]),
        f(vec![(0, t(&one, &u))]),
    ]
}

/// `δ₁⋆δ₂ − δ̃₂⋆δ̃₁`.
pub fn kontsevich_bivector(sig: &Arc<AlgebraSignature>) -> PolyVector {
    let [d1, d2, e1, e2] = kontsevich_fields(sig);
    PolyVector::new(sig)
        .add(Rat::one(), vec![d1, d2])
        .and_then(|p| p.add(Rat::from_int(-1), vec![e2, e1]))
        .expect("same signature")
}

/// Compares the partial trace of `p` with `target`: on generator pairs, then
/// on word pairs up to `max_len` both by direct evaluation of the trace and
/// by Leibniz extension of its generator table.
pub fn verify_bivector(p: &PolyVector, target: &BracketDef, max_len: usize) -> Result<SweepReport> {
    let sig = target.sig().clone();
    if p.sig() != &sig {
        return Err(Error::SignatureMismatch);
    }
    let mut rep = SweepReport::new("bivector-check").param("max_len", max_len);
    let table = bivector_bracket(p)?;
    for x in 0..sig.len() {
        for y in 0..sig.len() {
            let diff = &table.entry(x, y) - &target.entry(x, y);
            rep.record("generators", (!diff.is_zero()).then(|| diff.to_string()), || {
                vec![sig.name(x).to_string(), sig.name(y).to_string()]
            });
        }
    }
    let words = sig.words_up_to(max_len);
    for a in &words {
        for b in &words {
            let expect = target.double_words(a, b);
            let args = [NCPoly::word(&sig, a.clone()), NCPoly::word(&sig, b.clone())];
            let direct = multi_to_pair(&partial_trace(p, &args)?);
            let inputs = || vec![sig.render_word(a), sig.render_word(b)];
            let d = &direct - &expect;
            rep.record("words-direct", (!d.is_zero()).then(|| d.to_string()), inputs);
            let d = &table.double_words(a, b) - &expect;
            rep.record("words-extended", (!d.is_zero()).then(|| d.to_string()), inputs);
        }
    }
    Ok(rep)
}

/// [`verify_bivector`] for `δ₁⋆δ₂ − δ̃₂⋆δ̃₁` against the Kontsevich bracket.
pub fn verify_kontsevich_bivector(max_len: usize) -> SweepReport {
    let kb = builtins::kontsevich();
    let p = kontsevich_bivector(kb.sig());
    verify_bivector(&p, &kb, max_len).expect("degree-2 bivector on the same signature")
}

#[cfg(test)]
mod tests;
