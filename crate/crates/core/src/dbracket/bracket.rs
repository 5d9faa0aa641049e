use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactlin::Rat;
use crate::ncalg::{add_into, AlgebraSignature, Letter, NCPoly, TensorPoly, Word};

/// One term `c · l ⊗ r` of a letter-pair bracket.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct LetterTerm {
    pub l: Word,
    pub r: Word,
    pub c: Rat,
}

/// A double bracket given by its values on generator pairs.
///
/// Pairs absent from the table bracket to zero. Values on inverse letters
/// follow from `⟦a, y⁻¹⟧ = −(y⁻¹⊗1)⟦a, y⟧(1⊗y⁻¹)` and
/// `⟦x⁻¹, c⟧ = −(1⊗x⁻¹)⟦x, c⟧(x⁻¹⊗1)`.
#[derive(Clone)]
pub struct BracketDef {
    sig: Arc<AlgebraSignature>,
    table: BTreeMap<(usize, usize), TensorPoly>,
    letters: Vec<Vec<Vec<LetterTerm>>>,
}

impl PartialEq for BracketDef {
    fn eq(&self, other: &Self) -> bool {
        self.sig == other.sig && self.table == other.table
    }
}

impl std::fmt::Debug for BracketDef {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut m = f.debug_map();
        for ((x, y), t) in &self.table {
            m.entry(&format!("{},{}", self.sig.name(*x), self.sig.name(*y)), t);
        }
        m.finish()
    }
}

impl BracketDef {
    pub fn new(sig: &Arc<AlgebraSignature>, table: BTreeMap<(usize, usize), TensorPoly>) -> Result<Self> {
        for (&(x, y), t) in &table {
            if x >= sig.len() || y >= sig.len() {
                return Err(Error::Invalid(format!("generator pair ({x},{y}) out of range")));
            }
            if t.sig() != sig {
                return Err(Error::SignatureMismatch);
            }
            for ((l, r), _) in t.terms() {
                sig.check_word(l)?;
                sig.check_word(r)?;
            }
        }
        let table: BTreeMap<_, _> = table.into_iter().filter(|(_, t)| !t.is_zero()).collect();
        let letters = build_letter_table(sig, &table);
        Ok(Self {
            sig: sig.clone(),
            table,
            letters,
        })
    }

    pub fn zero(sig: &Arc<AlgebraSignature>) -> Self {
        Self::new(sig, BTreeMap::new()).expect("empty table is valid")
    }

    pub fn sig(&self) -> &Arc<AlgebraSignature> {
        &self.sig
    }

    pub fn table(&self) -> &BTreeMap<(usize, usize), TensorPoly> {
        &self.table
    }

    /// Table value on a generator pair, zero when undeclared.
    pub fn entry(&self, x: usize, y: usize) -> TensorPoly {
        self.table
            .get(&(x, y))
            .cloned()
            .unwrap_or_else(|| TensorPoly::zero(&self.sig))
    }

    pub(crate) fn letter_terms(&self, x: Letter, y: Letter) -> &[LetterTerm] {
        &self.letters[x.index()][y.index()]
    }

    fn check(&self, p: &NCPoly) -> Result<()> {
        if p.sig() != &self.sig {
            return Err(Error::SignatureMismatch);
        }
        Ok(())
    }

    /// `⟦a, b⟧` for reduced words, accumulated with coefficient `coef`.
    ///
    /// Expanding both arguments letter by letter gives
    /// `Σ_{i,j} b_{<j} d′ a_{>i} ⊗ a_{<i} d″ b_{>j}` with `d = ⟦a_i, b_j⟧`.
    pub(crate) fn double_words_into(
        &self,
        a: &Word,
        b: &Word,
        coef: &Rat,
        out: &mut BTreeMap<(Word, Word), Rat>,
    ) {
        let (al, bl) = (a.letters(), b.letters());
        for (i, &x) in al.iter().enumerate() {
            for (j, &y) in bl.iter().enumerate() {
                for t in self.letter_terms(x, y) {
                    let left = Word::from_parts(&[&bl[..j], t.l.letters(), &al[i + 1..]]);
                    let right = Word::from_parts(&[&al[..i], t.r.letters(), &bl[j + 1..]]);
                    add_into(out, (left, right), coef * &t.c);
                }
            }
        }
    }

    /// `{a, b} = μ⟦a, b⟧` for reduced words, accumulated with coefficient `coef`.
    pub(crate) fn loday_words_into(&self, a: &Word, b: &Word, coef: &Rat, out: &mut BTreeMap<Word, Rat>) {
        let (al, bl) = (a.letters(), b.letters());
        for (i, &x) in al.iter().enumerate() {
            for (j, &y) in bl.iter().enumerate() {
                for t in self.letter_terms(x, y) {
                    let w = Word::from_parts(&[
                        &bl[..j],
                        t.l.letters(),
                        &al[i + 1..],
                        &al[..i],
                        t.r.letters(),
                        &bl[j + 1..],
                    ]);
                    add_into(out, w, coef * &t.c);
                }
            }
        }
    }

    pub fn double_words(&self, a: &Word, b: &Word) -> TensorPoly {
        let mut out = BTreeMap::new();
        self.double_words_into(a, b, &Rat::one(), &mut out);
        TensorPoly::from_map(&self.sig, out)
    }

    pub fn loday_words(&self, a: &Word, b: &Word) -> NCPoly {
        let mut out = BTreeMap::new();
        self.loday_words_into(a, b, &Rat::one(), &mut out);
        NCPoly::from_map(&self.sig, out)
    }

    /// The double bracket extended to all of the algebra by the double Leibniz rules.
    pub fn extend_double(&self, a: &NCPoly, b: &NCPoly) -> Result<TensorPoly> {
        self.check(a)?;
        self.check(b)?;
        let mut out = BTreeMap::new();
        for (wa, ca) in a.terms() {
            for (wb, cb) in b.terms() {
                self.double_words_into(wa, wb, &(ca * cb), &mut out);
            }
        }
        Ok(TensorPoly::from_map(&self.sig, out))
    }

    /// The Loday bracket `μ ∘ ⟦·,·⟧`.
    pub fn loday(&self, a: &NCPoly, b: &NCPoly) -> Result<NCPoly> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.loday_unchecked(a, b))
    }

    pub(crate) fn loday_unchecked(&self, a: &NCPoly, b: &NCPoly) -> NCPoly {
        let mut out = BTreeMap::new();
        for (wa, ca) in a.terms() {
            for (wb, cb) in b.terms() {
                self.loday_words_into(wa, wb, &(ca * cb), &mut out);
            }
        }
        NCPoly::from_map(&self.sig, out)
    }

    pub(crate) fn loday_word_poly(&self, a: &Word, b: &NCPoly) -> NCPoly {
        let mut out = BTreeMap::new();
        for (wb, cb) in b.terms() {
            self.loday_words_into(a, wb, cb, &mut out);
        }
        NCPoly::from_map(&self.sig, out)
    }

    pub(crate) fn loday_poly_word(&self, a: &NCPoly, b: &Word) -> NCPoly {
        let mut out = BTreeMap::new();
        for (wa, ca) in a.terms() {
            self.loday_words_into(wa, b, ca, &mut out);
        }
        NCPoly::from_map(&self.sig, out)
    }
}

fn build_letter_table(
    sig: &Arc<AlgebraSignature>,
    table: &BTreeMap<(usize, usize), TensorPoly>,
) -> Vec<Vec<Vec<LetterTerm>>> {
    let n = 2 * sig.len();
    let mut out = vec![vec![Vec::new(); n]; n];
    for (&(x, y), t) in table {
        for inv_x in [false, true] {
            if inv_x && !sig.is_invertible(x) {
                continue;
            }
            for inv_y in [false, true] {
                if inv_y && !sig.is_invertible(y) {
                    continue;
                }
                let xi = Word::letter(Letter::neg(x));
                let yi = Word::letter(Letter::neg(y));
                let one = Word::one();
                let (p, r) = if inv_y { (&yi, &yi) } else { (&one, &one) };
                let (q, s) = if inv_x { (&xi, &xi) } else { (&one, &one) };
                let sign = if inv_x ^ inv_y { Rat::from_int(-1) } else { Rat::one() };
                let cell = &mut out[Letter::new(x, inv_x).index()][Letter::new(y, inv_y).index()];
                for ((l, rr), c) in t.terms() {
                    // ⟦x⁻¹,·⟧ wraps (d′ x⁻¹, x⁻¹ d″); ⟦·,y⁻¹⟧ wraps (y⁻¹ d′, d″ y⁻¹).
                    cell.push(LetterTerm {
                        l: p.mul3(l, s),
                        r: q.mul3(rr, r),
                        c: &sign * c,
                    });
                }
            }
        }
    }
    out
}
