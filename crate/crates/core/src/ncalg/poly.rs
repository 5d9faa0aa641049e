//! Elements of the algebra, of its tensor powers, and of the cyclic space.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use super::word::{AlgebraSignature, Word};
use crate::error::{Error, Result};
use crate::exactlin::Rat;

pub(crate) fn add_into<K: Ord>(map: &mut BTreeMap<K, Rat>, key: K, c: Rat) {
    if c.is_zero() {
        return;
    }
    match map.entry(key) {
        Entry::Vacant(v) => {
            v.insert(c);
        }
        Entry::Occupied(mut o) => {
            let s = o.get() + &c;
            if s.is_zero() {
                o.remove();
            } else {
                *o.get_mut() = s;
            }
        }
    }
}

fn same_sig(a: &Arc<AlgebraSignature>, b: &Arc<AlgebraSignature>) -> Result<()> {
    if Arc::ptr_eq(a, b) || a == b {
        Ok(())
    } else {
        Err(Error::SignatureMismatch)
    }
}

/// Writes `sign coefficient*body` with the canonical coefficient rules.
fn write_term(f: &mut fmt::Formatter<'_>, first: bool, c: &Rat, body: &str, body_is_one: bool) -> fmt::Result {
    let neg = c.is_negative();
    match (first, neg) {
        (true, true) => write!(f, "-")?,
        (true, false) => {}
        (false, true) => write!(f, " - ")?,
        (false, false) => write!(f, " + ")?,
    }
    let a = c.abs();
    if body_is_one {
        write!(f, "{a}")
    } else if a.is_one() {
        write!(f, "{body}")
    } else {
        write!(f, "{a}*{body}")
    }
}

// ---------------------------------------------------------------------------
// NCPoly

/// A finite rational combination of reduced words.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct NCPoly {
    sig: Arc<AlgebraSignature>,
    terms: BTreeMap<Word, Rat>,
}

impl NCPoly {
    pub fn zero(sig: &Arc<AlgebraSignature>) -> Self {
        Self {
            sig: sig.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(sig: &Arc<AlgebraSignature>) -> Self {
        Self::word(sig, Word::one())
    }

    pub fn word(sig: &Arc<AlgebraSignature>, w: Word) -> Self {
        Self::term(sig, w, Rat::one())
    }

    pub fn term(sig: &Arc<AlgebraSignature>, w: Word, c: Rat) -> Self {
        let mut p = Self::zero(sig);
        add_into(&mut p.terms, w, c);
        p
    }

    pub fn generator(sig: &Arc<AlgebraSignature>, g: usize) -> Self {
        Self::word(sig, Word::from_runs(&[(g, 1)]))
    }

    pub fn from_terms<I: IntoIterator<Item = (Word, Rat)>>(sig: &Arc<AlgebraSignature>, terms: I) -> Self {
        let mut p = Self::zero(sig);
        for (w, c) in terms {
            add_into(&mut p.terms, w, c);
        }
        p
    }

    pub(crate) fn from_map(sig: &Arc<AlgebraSignature>, terms: BTreeMap<Word, Rat>) -> Self {
        debug_assert!(terms.values().all(|c| !c.is_zero()));
        Self {
            sig: sig.clone(),
            terms,
        }
    }

    pub fn sig(&self) -> &Arc<AlgebraSignature> {
        &self.sig
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Rat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &Word) -> Rat {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, w: Word, c: Rat) {
        add_into(&mut self.terms, w, c);
    }

    /// Longest word length occurring, 0 for constants and zero.
    pub fn max_len(&self) -> usize {
        self.terms.keys().map(Word::len).max().unwrap_or(0)
    }

    pub fn check_sig(&self, other: &Self) -> Result<()> {
        same_sig(&self.sig, &other.sig)
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_sig(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            add_into(&mut out.terms, w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_sig(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            add_into(&mut out.terms, w.clone(), -c);
        }
        Ok(out)
    }

    /// Product in the algebra: bilinear extension of reduced concatenation.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_sig(other)?;
        let mut out = BTreeMap::new();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                add_into(&mut out, w1.mul(w2), c1 * c2);
            }
        }
        Ok(Self::from_map(&self.sig, out))
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero(&self.sig);
        }
        Self {
            sig: self.sig.clone(),
            terms: self.terms.iter().map(|(w, x)| (w.clone(), x * c)).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&Rat::from_int(-1))
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut acc = Self::one(&self.sig);
        for _ in 0..k {
            acc = acc.checked_mul(self).expect("same signature");
        }
        acc
    }

    /// Multiplies every word on the left by `l` and on the right by `r`.
    pub fn sandwich(&self, l: &Word, r: &Word) -> Self {
        let mut out = BTreeMap::new();
        for (w, c) in &self.terms {
            add_into(&mut out, l.mul3(w, r), c.clone());
        }
        Self::from_map(&self.sig, out)
    }

    pub fn validate(&self) -> Result<()> {
        self.terms.keys().try_for_each(|w| self.sig.check_word(w))
    }
}

impl fmt::Display for NCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (w, c)) in self.terms.iter().enumerate() {
            write_term(f, k == 0, c, &self.sig.render_word(w), w.is_one())?;
        }
        Ok(())
    }
}

impl fmt::Debug for NCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl std::ops::Add for &NCPoly {
    type Output = NCPoly;
    fn add(self, rhs: &NCPoly) -> NCPoly {
        self.checked_add(rhs).expect("signature mismatch")
    }
}

impl std::ops::Sub for &NCPoly {
    type Output = NCPoly;
    fn sub(self, rhs: &NCPoly) -> NCPoly {
        self.checked_sub(rhs).expect("signature mismatch")
    }
}

impl std::ops::Mul for &NCPoly {
    type Output = NCPoly;
    fn mul(self, rhs: &NCPoly) -> NCPoly {
        self.checked_mul(rhs).expect("signature mismatch")
    }
}

// ---------------------------------------------------------------------------
// TensorPoly

/// How an element acts on a tensor `t = t' ⊗ t''`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TensorAction {
    /// `(a ⊗ 1) t = a t' ⊗ t''`
    OuterLeft,
    /// `t (1 ⊗ a) = t' ⊗ t'' a`
    OuterRight,
    /// `(1 ⊗ a1) t (a2 ⊗ 1) = t' a2 ⊗ a1 t''`
    Inner,
}

/// A finite rational combination of pairs of words: an element of A ⊗ A.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TensorPoly {
    sig: Arc<AlgebraSignature>,
    terms: BTreeMap<(Word, Word), Rat>,
}

impl TensorPoly {
    pub fn zero(sig: &Arc<AlgebraSignature>) -> Self {
        Self {
            sig: sig.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn term(sig: &Arc<AlgebraSignature>, l: Word, r: Word, c: Rat) -> Self {
        let mut t = Self::zero(sig);
        add_into(&mut t.terms, (l, r), c);
        t
    }

    /// `a ⊗ b` for algebra elements.
    pub fn tensor(a: &NCPoly, b: &NCPoly) -> Result<Self> {
        a.check_sig(b)?;
        let mut t = Self::zero(&a.sig);
        for (wa, ca) in &a.terms {
            for (wb, cb) in &b.terms {
                add_into(&mut t.terms, (wa.clone(), wb.clone()), ca * cb);
            }
        }
        Ok(t)
    }

    pub fn from_terms<I: IntoIterator<Item = ((Word, Word), Rat)>>(sig: &Arc<AlgebraSignature>, terms: I) -> Self {
        let mut t = Self::zero(sig);
        for (k, c) in terms {
            add_into(&mut t.terms, k, c);
        }
        t
    }

    pub(crate) fn from_map(sig: &Arc<AlgebraSignature>, terms: BTreeMap<(Word, Word), Rat>) -> Self {
        Self {
            sig: sig.clone(),
            terms,
        }
    }

    pub fn sig(&self) -> &Arc<AlgebraSignature> {
        &self.sig
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Word, Word), &Rat)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, l: Word, r: Word, c: Rat) {
        add_into(&mut self.terms, (l, r), c);
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        same_sig(&self.sig, &other.sig)?;
        let mut out = self.clone();
        for (k, c) in &other.terms {
            add_into(&mut out.terms, k.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        same_sig(&self.sig, &other.sig)?;
        let mut out = self.clone();
        for (k, c) in &other.terms {
            add_into(&mut out.terms, k.clone(), -c);
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero(&self.sig);
        }
        Self {
            sig: self.sig.clone(),
            terms: self.terms.iter().map(|(k, x)| (k.clone(), x * c)).collect(),
        }
    }

    /// `(p ⊗ q) · t · (r ⊗ s) = p t' r ⊗ q t'' s` for words.
    pub fn sandwich_words(&self, p: &Word, q: &Word, r: &Word, s: &Word) -> Self {
        let mut out = BTreeMap::new();
        for ((l, rr), c) in &self.terms {
            add_into(&mut out, (p.mul3(l, r), q.mul3(rr, s)), c.clone());
        }
        Self::from_map(&self.sig, out)
    }

    /// `(p ⊗ q) · t · (r ⊗ s)` extended bilinearly to algebra elements.
    pub fn sandwich(&self, p: &NCPoly, q: &NCPoly, r: &NCPoly, s: &NCPoly) -> Result<Self> {
        for x in [p, q, r, s] {
            same_sig(&self.sig, &x.sig)?;
        }
        let mut out = BTreeMap::new();
        for ((l, rr), c) in &self.terms {
            for (wp, cp) in &p.terms {
                for (wr, cr) in &r.terms {
                    let left = wp.mul3(l, wr);
                    let cl = &(c * cp) * cr;
                    for (wq, cq) in &q.terms {
                        for (ws, cs) in &s.terms {
                            add_into(&mut out, (left.clone(), wq.mul3(rr, ws)), &(&cl * cq) * cs);
                        }
                    }
                }
            }
        }
        Ok(Self::from_map(&self.sig, out))
    }

    /// The one-sided actions; `b` is only read by [`TensorAction::Inner`],
    /// where `(a, b) = (a1, a2)`.
    pub fn act(&self, action: TensorAction, a: &NCPoly, b: Option<&NCPoly>) -> Result<Self> {
        let one = NCPoly::one(&self.sig);
        match action {
            TensorAction::OuterLeft => self.sandwich(a, &one, &one, &one),
            TensorAction::OuterRight => self.sandwich(&one, &one, &one, a),
            TensorAction::Inner => {
                let a2 = b.ok_or_else(|| Error::Invalid("inner action needs two elements".into()))?;
                self.sandwich(&one, a, a2, &one)
            }
        }
    }

    /// Multiplication map `x ⊗ y ↦ xy`.
    pub fn mu(&self) -> NCPoly {
        let mut out = BTreeMap::new();
        for ((l, r), c) in &self.terms {
            add_into(&mut out, l.mul(r), c.clone());
        }
        NCPoly::from_map(&self.sig, out)
    }

    /// Exchange of the two factors.
    pub fn flip(&self) -> Self {
        Self::from_map(
            &self.sig,
            self.terms
                .iter()
                .map(|((l, r), c)| ((r.clone(), l.clone()), c.clone()))
                .collect(),
        )
    }
}

fn render_scaled(sig: &AlgebraSignature, c: &Rat, w: &Word) -> String {
    if w.is_one() {
        c.to_string()
    } else if c.is_one() {
        sig.render_word(w)
    } else {
        format!("{c}*{}", sig.render_word(w))
    }
}

impl fmt::Display for TensorPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, ((l, r), c)) in self.terms.iter().enumerate() {
            match (k == 0, c.is_negative()) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            write!(
                f,
                "{} (x) {}",
                render_scaled(&self.sig, &c.abs(), l),
                self.sig.render_word(r)
            )?;
        }
        Ok(())
    }
}

impl fmt::Debug for TensorPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl std::ops::Add for &TensorPoly {
    type Output = TensorPoly;
    fn add(self, rhs: &TensorPoly) -> TensorPoly {
        self.checked_add(rhs).expect("signature mismatch")
    }
}

impl std::ops::Sub for &TensorPoly {
    type Output = TensorPoly;
    fn sub(self, rhs: &TensorPoly) -> TensorPoly {
        self.checked_sub(rhs).expect("signature mismatch")
    }
}

// ---------------------------------------------------------------------------
// MultiTensor

/// An element of the k-fold tensor power A^{⊗k}.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiTensor {
    sig: Arc<AlgebraSignature>,
    rank: usize,
    terms: BTreeMap<Vec<Word>, Rat>,
}

impl MultiTensor {
    pub fn zero(sig: &Arc<AlgebraSignature>, rank: usize) -> Self {
        Self {
            sig: sig.clone(),
            rank,
            terms: BTreeMap::new(),
        }
    }

    pub fn pure(sig: &Arc<AlgebraSignature>, factors: Vec<Word>, c: Rat) -> Self {
        let mut t = Self::zero(sig, factors.len());
        t.add_term(factors, c);
        t
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn sig(&self) -> &Arc<AlgebraSignature> {
        &self.sig
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Word>, &Rat)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, factors: Vec<Word>, c: Rat) {
        assert_eq!(factors.len(), self.rank, "tensor rank");
        add_into(&mut self.terms, factors, c);
    }

    pub fn add_scaled(&mut self, other: &MultiTensor, c: &Rat) {
        assert_eq!(self.rank, other.rank, "tensor rank");
        for (k, x) in &other.terms {
            add_into(&mut self.terms, k.clone(), x * c);
        }
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        same_sig(&self.sig, &other.sig)?;
        if self.rank != other.rank {
            return Err(Error::ArityMismatch {
                expected: self.rank,
                found: other.rank,
            });
        }
        let mut out = self.clone();
        out.add_scaled(other, &Rat::from_int(-1));
        Ok(out)
    }

    /// Componentwise product `(l_1 ⊗ … ⊗ l_k) · t · (r_1 ⊗ … ⊗ r_k)`.
    pub fn sandwich_words(&self, left: &[Word], right: &[Word]) -> Self {
        let mut out = Self::zero(&self.sig, self.rank);
        for (k, c) in &self.terms {
            let f = k
                .iter()
                .enumerate()
                .map(|(i, w)| left[i].mul3(w, &right[i]))
                .collect();
            add_into(&mut out.terms, f, c.clone());
        }
        out
    }

    /// Full multiplication `x_1 ⊗ … ⊗ x_k ↦ x_1 ⋯ x_k`.
    pub fn mu(&self) -> NCPoly {
        let mut out = BTreeMap::new();
        for (k, c) in &self.terms {
            let w = k.iter().fold(Word::one(), |acc, w| acc.mul(w));
            add_into(&mut out, w, c.clone());
        }
        NCPoly::from_map(&self.sig, out)
    }

    /// Permutes tensor slots: output slot `i` takes input slot `perm[i]`.
    pub fn permute(&self, perm: &[usize]) -> Self {
        let mut out = Self::zero(&self.sig, self.rank);
        for (k, c) in &self.terms {
            add_into(&mut out.terms, perm.iter().map(|&p| k[p].clone()).collect(), c.clone());
        }
        out
    }
}

impl fmt::Display for MultiTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (ws, c)) in self.terms.iter().enumerate() {
            match (k == 0, c.is_negative()) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            let mut parts = vec![render_scaled(&self.sig, &c.abs(), &ws[0])];
            parts.extend(ws[1..].iter().map(|w| self.sig.render_word(w)));
            write!(f, "{}", parts.join(" (x) "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for MultiTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

// ---------------------------------------------------------------------------
// Cyclic space

/// Canonical representative of a cyclic class of words.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct CyclicWord(Word);

impl CyclicWord {
    pub fn new(w: &Word) -> Self {
        CyclicWord(w.cyclic_canonical())
    }

    pub fn word(&self) -> &Word {
        &self.0
    }
}

/// An element of the cyclic space A / [A, A].
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CyclicPoly {
    sig: Arc<AlgebraSignature>,
    terms: BTreeMap<CyclicWord, Rat>,
}

impl CyclicPoly {
    pub fn zero(sig: &Arc<AlgebraSignature>) -> Self {
        Self {
            sig: sig.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn sig(&self) -> &Arc<AlgebraSignature> {
        &self.sig
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&CyclicWord, &Rat)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, w: &Word, c: Rat) {
        add_into(&mut self.terms, CyclicWord::new(w), c);
    }

    /// Lifts to the algebra using the canonical representatives.
    pub fn to_ncpoly(&self) -> NCPoly {
        NCPoly::from_terms(
            &self.sig,
            self.terms.iter().map(|(w, c)| (w.0.clone(), c.clone())),
        )
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        same_sig(&self.sig, &other.sig)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            add_into(&mut out.terms, w.clone(), -c);
        }
        Ok(out)
    }
}

impl fmt::Display for CyclicPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.to_ncpoly(), f)
    }
}

impl fmt::Debug for CyclicPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Projection to the cyclic space: words are identified up to rotation
/// and cyclic cancellation.
pub fn cyclic_project(a: &NCPoly) -> CyclicPoly {
    let mut out = CyclicPoly::zero(&a.sig);
    for (w, c) in &a.terms {
        out.add_term(w, c.clone());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncalg::word::Letter;

    fn sig() -> Arc<AlgebraSignature> {
        Arc::new(AlgebraSignature::group(&["u", "v"]))
    }

    fn w(runs: &[(usize, i64)]) -> Word {
        Word::from_runs(runs)
    }

    #[test]
    fn multiplication_examples() {
        let s = sig();
        let u = NCPoly::generator(&s, 0);
        let v = NCPoly::generator(&s, 1);
        let prod = &(&u + &v) * &u;
        assert_eq!(prod.to_string(), "u^2 + v*u");
        assert_eq!(&u * &NCPoly::one(&s), u);
        let ui = NCPoly::word(&s, w(&[(0, -1)]));
        assert_eq!(&ui * &u, NCPoly::one(&s));
    }

    #[test]
    fn signature_mismatch_detected() {
        let a = NCPoly::one(&sig());
        let b = NCPoly::one(&Arc::new(AlgebraSignature::free(&["x"])));
        assert!(matches!(a.checked_mul(&b), Err(Error::SignatureMismatch)));
    }

    #[test]
    fn tensor_actions() {
        let s = Arc::new(AlgebraSignature::free(&["x", "y", "b", "a1", "a2"]));
        let g = |i| NCPoly::generator(&s, i);
        let t = TensorPoly::tensor(&g(0), &g(1)).unwrap();
        let left = t.act(TensorAction::OuterLeft, &g(2), None).unwrap();
        assert_eq!(left.to_string(), "b*x (x) y");
        let inner = t.act(TensorAction::Inner, &g(3), Some(&g(4))).unwrap();
        assert_eq!(inner.to_string(), "x*a2 (x) a1*y");
        let right = t.act(TensorAction::OuterRight, &NCPoly::one(&s), None).unwrap();
        assert_eq!(right, t);
    }

    #[test]
    fn mu_examples() {
        let s = sig();
        let t = TensorPoly::term(&s, w(&[(1, 1), (0, 1)]), Word::one(), Rat::from_int(-1));
        assert_eq!(t.to_string(), "-v*u (x) 1");
        assert_eq!(t.mu().to_string(), "-v*u");
        let t = TensorPoly::term(&s, w(&[(0, 1)]), w(&[(0, -1)]), Rat::one());
        assert_eq!(t.mu(), NCPoly::one(&s));
        assert!(TensorPoly::zero(&s).mu().is_zero());
    }

    #[test]
    fn cyclic_projection_examples() {
        let s = sig();
        let uv = NCPoly::word(&s, w(&[(0, 1), (1, 1)]));
        let vu = NCPoly::word(&s, w(&[(1, 1), (0, 1)]));
        assert!(cyclic_project(&(&uv - &vu)).is_zero());
        let conj = NCPoly::word(&s, w(&[(0, 1), (1, 1), (0, -1)]));
        assert_eq!(cyclic_project(&conj), cyclic_project(&NCPoly::generator(&s, 1)));
        let a = NCPoly::word(&s, w(&[(0, -1), (1, -1)]));
        let b = NCPoly::word(&s, w(&[(1, -1), (0, -1)]));
        assert_eq!(cyclic_project(&a), cyclic_project(&b));
    }

    #[test]
    fn rendering_coefficients() {
        let s = sig();
        let p = NCPoly::from_terms(
            &s,
            [
                (Word::one(), Rat::new(-1, 2)),
                (w(&[(0, 1), (1, -1), (0, 2)]), Rat::from_int(3)),
                (Word::letter(Letter::neg(1)), Rat::from_int(-1)),
            ],
        );
        assert_eq!(p.to_string(), "-1/2 - v^-1 + 3*u*v^-1*u^2");
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn word() -> impl Strategy<Value = Word> {
            prop::collection::vec((0usize..2, any::<bool>()), 0..5)
                .prop_map(|v| Word::reduce(v.into_iter().map(|(g, i)| Letter::new(g, i))))
        }

        fn poly() -> impl Strategy<Value = NCPoly> {
            prop::collection::vec((word(), -3i64..4), 0..4)
                .prop_map(|v| NCPoly::from_terms(&sig(), v.into_iter().map(|(w, c)| (w, Rat::from_int(c)))))
        }

        fn tensor() -> impl Strategy<Value = TensorPoly> {
            prop::collection::vec((word(), word(), -3i64..4), 0..4).prop_map(|v| {
                TensorPoly::from_terms(&sig(), v.into_iter().map(|(a, b, c)| ((a, b), Rat::from_int(c))))
            })
        }

        proptest! {
            #[test]
            fn associative_and_unital(a in poly(), b in poly(), c in poly()) {
                prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
                prop_assert_eq!(&a * &NCPoly::one(a.sig()), a.clone());
                prop_assert_eq!(&NCPoly::one(a.sig()) * &a, a);
            }

            #[test]
            fn outer_actions_compose(t in tensor(), a in poly(), b in poly()) {
                let ab = t.act(TensorAction::OuterLeft, &a, None).unwrap()
                    .act(TensorAction::OuterLeft, &b, None).unwrap();
                prop_assert_eq!(ab, t.act(TensorAction::OuterLeft, &(&b * &a), None).unwrap());
                let ra = t.act(TensorAction::OuterRight, &a, None).unwrap()
                    .act(TensorAction::OuterRight, &b, None).unwrap();
                prop_assert_eq!(ra, t.act(TensorAction::OuterRight, &(&a * &b), None).unwrap());
            }

            #[test]
            fn mu_intertwines(t in tensor(), a in poly()) {
                let left = t.act(TensorAction::OuterLeft, &a, None).unwrap().mu();
                prop_assert_eq!(left, &a * &t.mu());
                let right = t.act(TensorAction::OuterRight, &a, None).unwrap().mu();
                prop_assert_eq!(right, &t.mu() * &a);
            }

            #[test]
            fn commutators_vanish_cyclically(a in word(), b in word()) {
                let s = sig();
                let ab = NCPoly::word(&s, a.mul(&b));
                let ba = NCPoly::word(&s, b.mul(&a));
                prop_assert!(cyclic_project(&(&ab - &ba)).is_zero());
            }
        }
    }
}
