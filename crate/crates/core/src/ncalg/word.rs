//! Letters, reduced group words and algebra signatures.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

/// A generator or, for invertible generators, its inverse.
///
/// Ordered by generator index, positive before negative.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter(u32);

impl Letter {
    pub fn new(generator: usize, inverse: bool) -> Self {
        Letter(((generator as u32) << 1) | inverse as u32)
    }

    pub fn pos(generator: usize) -> Self {
        Self::new(generator, false)
    }

    pub fn neg(generator: usize) -> Self {
        Self::new(generator, true)
    }

    pub fn generator(self) -> usize {
        (self.0 >> 1) as usize
    }

    pub fn is_inverse(self) -> bool {
        self.0 & 1 == 1
    }

    pub fn inverse(self) -> Letter {
        Letter(self.0 ^ 1)
    }

    /// Dense index `2*generator + inverse`, handy for lookup tables.
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_inverse() {
            write!(f, "g{}^-1", self.generator())
        } else {
            write!(f, "g{}", self.generator())
        }
    }
}

/// A freely reduced word: no letter is adjacent to its own inverse.
///
/// Letters are stored expanded (`u^2` is two letters); [`Word::runs`] gives the
/// run-length view `(generator, exponent)`. The empty word is the unit.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn one() -> Self {
        Word(Vec::new())
    }

    pub fn letter(l: Letter) -> Self {
        Word(vec![l])
    }

    /// Freely reduces an arbitrary letter sequence.
    pub fn reduce<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            if out.last() == Some(&l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    /// Length counting exponent multiplicity.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Run-length view: maximal runs of one generator with signed exponent.
    pub fn runs(&self) -> Vec<(usize, i64)> {
        let mut out: Vec<(usize, i64)> = Vec::new();
        for &l in &self.0 {
            let e = if l.is_inverse() { -1 } else { 1 };
            match out.last_mut() {
                Some((g, k)) if *g == l.generator() => *k += e,
                _ => out.push((l.generator(), e)),
            }
        }
        out
    }

    /// Builds a word from `(generator, exponent)` runs, reducing as needed.
    pub fn from_runs(runs: &[(usize, i64)]) -> Self {
        Self::reduce(runs.iter().flat_map(|&(g, e)| {
            let l = Letter::new(g, e < 0);
            std::iter::repeat_n(l, e.unsigned_abs() as usize)
        }))
    }

    /// Reduced product.
    pub fn mul(&self, other: &Word) -> Word {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        out.extend_from_slice(&self.0);
        push_reduced(&mut out, &other.0);
        Word(out)
    }

    /// Reduced product of three words.
    pub fn mul3(&self, b: &Word, c: &Word) -> Word {
        let mut out = Vec::with_capacity(self.0.len() + b.0.len() + c.0.len());
        out.extend_from_slice(&self.0);
        push_reduced(&mut out, &b.0);
        push_reduced(&mut out, &c.0);
        Word(out)
    }

    /// Reduced concatenation of letter slices.
    pub fn from_parts(parts: &[&[Letter]]) -> Word {
        let n = parts.iter().map(|p| p.len()).sum();
        let mut out = Vec::with_capacity(n);
        for p in parts {
            push_reduced(&mut out, p);
        }
        Word(out)
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    pub fn pow(&self, k: usize) -> Word {
        let mut acc = Word::one();
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Canonical representative of the conjugacy (cyclic) class: cyclically
    /// reduced, then the least rotation.
    pub fn cyclic_canonical(&self) -> Word {
        let mut v: &[Letter] = &self.0;
        while v.len() >= 2 && v[0] == v[v.len() - 1].inverse() {
            v = &v[1..v.len() - 1];
        }
        let n = v.len();
        if n <= 1 {
            return Word(v.to_vec());
        }
        let best = (1..n).fold(0, |best, s| {
            let cand = v[s..].iter().chain(&v[..s]);
            let cur = v[best..].iter().chain(&v[..best]);
            if cand.cmp(cur) == Ordering::Less {
                s
            } else {
                best
            }
        });
        let mut out = Vec::with_capacity(n);
        out.extend_from_slice(&v[best..]);
        out.extend_from_slice(&v[..best]);
        Word(out)
    }

    pub fn is_cyclic_canonical(&self) -> bool {
        self.cyclic_canonical() == *self
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|l| !l.is_inverse())
    }
}

fn push_reduced(out: &mut Vec<Letter>, tail: &[Letter]) {
    let mut i = 0;
    while i < tail.len() && out.last() == Some(&tail[i].inverse()) {
        out.pop();
        i += 1;
    }
    out.extend_from_slice(&tail[i..]);
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        write!(f, "{:?}", self.0)
    }
}

/// Ordered generator names with per-generator invertibility.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AlgebraSignature {
    names: Vec<String>,
    invertible: Vec<bool>,
}

impl AlgebraSignature {
    pub fn new(names: Vec<String>, invertible: Vec<bool>) -> Result<Self> {
        if names.len() != invertible.len() {
            return Err(Error::ArityMismatch {
                expected: names.len(),
                found: invertible.len(),
            });
        }
        let mut seen = BTreeSet::new();
        for n in &names {
            if !seen.insert(n) {
                return Err(Error::DuplicateGenerator(n.clone()));
            }
        }
        Ok(Self { names, invertible })
    }

    /// All generators non-invertible (free algebra).
    pub fn free(names: &[&str]) -> Self {
        Self::new(
            names.iter().map(|s| s.to_string()).collect(),
            vec![false; names.len()],
        )
        .expect("distinct names")
    }

    /// All generators invertible (free group algebra).
    pub fn group(names: &[&str]) -> Self {
        Self::new(
            names.iter().map(|s| s.to_string()).collect(),
            vec![true; names.len()],
        )
        .expect("distinct names")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, g: usize) -> &str {
        &self.names[g]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn is_invertible(&self, g: usize) -> bool {
        self.invertible[g]
    }

    pub fn has_inverses(&self) -> bool {
        self.invertible.iter().any(|&b| b)
    }

    /// Letters of the alphabet in canonical order.
    pub fn alphabet(&self) -> Vec<Letter> {
        let mut out = Vec::new();
        for g in 0..self.len() {
            out.push(Letter::pos(g));
            if self.invertible[g] {
                out.push(Letter::neg(g));
            }
        }
        out
    }

    pub fn generators(&self) -> Vec<Word> {
        (0..self.len()).map(|g| Word::letter(Letter::pos(g))).collect()
    }

    fn check_letter(&self, l: Letter) -> Result<()> {
        if l.generator() >= self.len() {
            return Err(Error::SignatureMismatch);
        }
        if l.is_inverse() && !self.invertible[l.generator()] {
            return Err(Error::NonInvertibleInverse(self.names[l.generator()].clone()));
        }
        Ok(())
    }

    pub fn check_word(&self, w: &Word) -> Result<()> {
        w.letters().iter().try_for_each(|&l| self.check_letter(l))
    }

    /// Validates and freely reduces a raw `(generator, exponent)` sequence.
    pub fn word_reduce(&self, raw: &[(usize, i64)]) -> Result<Word> {
        for &(g, e) in raw {
            if g >= self.len() {
                return Err(Error::SignatureMismatch);
            }
            if e < 0 && !self.invertible[g] {
                return Err(Error::NonInvertibleInverse(self.names[g].clone()));
            }
        }
        Ok(Word::from_runs(raw))
    }

    /// Renders a word as `u*v^-1*u^2`.
    pub fn render_word(&self, w: &Word) -> String {
        if w.is_one() {
            return "1".to_string();
        }
        w.runs()
            .iter()
            .map(|&(g, e)| {
                if e == 1 {
                    self.names[g].clone()
                } else {
                    format!("{}^{}", self.names[g], e)
                }
            })
            .collect::<Vec<_>>()
            .join("*")
    }

    /// All reduced words of length at most `max_len`, in canonical order.
    pub fn words_up_to(&self, max_len: usize) -> Vec<Word> {
        let alphabet = self.alphabet();
        let mut out = vec![Word::one()];
        let mut layer = vec![Word::one()];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for w in &layer {
                for &l in &alphabet {
                    if w.0.last() == Some(&l.inverse()) {
                        continue;
                    }
                    let mut v = w.0.clone();
                    v.push(l);
                    next.push(Word(v));
                }
            }
            out.extend(next.iter().cloned());
            layer = next;
        }
        out
    }

    /// One canonical representative per cyclic class of cyclically reduced
    /// length at most `max_len`.
    pub fn cyclic_words_up_to(&self, max_len: usize) -> Vec<Word> {
        self.words_up_to(max_len)
            .into_iter()
            .filter(Word::is_cyclic_canonical)
            .collect()
    }

    pub fn enumerate_words(&self, max_len: usize, mode: EnumerationMode) -> Vec<Word> {
        match mode {
            EnumerationMode::All => self.words_up_to(max_len),
            EnumerationMode::CyclicClasses => self.cyclic_words_up_to(max_len),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EnumerationMode {
    All,
    CyclicClasses,
}
