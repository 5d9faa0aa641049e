//! Sparse multivariate polynomials over the rationals.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::rat::Rat;
use crate::error::{Error, Result};

/// Exponent vector ordered graded-lexicographically (total degree first,
/// then exponents compared by variable declaration index).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// A polynomial in a fixed number of commuting variables.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, Rat>,
}

impl MPoly {
    pub fn zero(nvars: usize) -> Self {
        Self {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rat) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(Monomial::one(nvars), c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rat::one())
    }

    /// The variable with index `i`.
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index out of range");
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = Self::zero(nvars);
        p.add_term(Monomial(e), Rat::one());
        p
    }

    /// Single term `c * x^exps`.
    pub fn monomial(exps: Vec<u32>, c: Rat) -> Self {
        let mut p = Self::zero(exps.len());
        p.add_term(Monomial(exps), c);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Vec<u32>, Rat)>>(nvars: usize, terms: I) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent vector length");
            p.add_term(Monomial(e), c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
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

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[u32]) -> Rat {
        self.terms
            .get(&Monomial(exps.to_vec()))
            .cloned()
            .unwrap_or_default()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn add_term(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(m.0.len(), self.nvars);
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    fn check_arity(&self, other: &MPoly) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::ArityMismatch {
                expected: self.nvars,
                found: other.nvars,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &MPoly) -> Result<MPoly> {
        self.check_arity(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &MPoly) -> Result<MPoly> {
        self.check_arity(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &MPoly) -> Result<MPoly> {
        self.check_arity(other)?;
        let mut out = MPoly::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rat) -> MPoly {
        if c.is_zero() {
            return MPoly::zero(self.nvars);
        }
        MPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> MPoly {
        let mut acc = MPoly::one(self.nvars);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Evaluate at a point with one coordinate per variable.
    pub fn eval(&self, point: &[Rat]) -> Result<Rat> {
        if point.len() != self.nvars {
            return Err(Error::ArityMismatch {
                expected: self.nvars,
                found: point.len(),
            });
        }
        let mut acc = Rat::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                if e > 0 {
                    t = &t * &x.pow(e);
                }
            }
            acc += &t;
        }
        Ok(acc)
    }

    /// Substitute polynomial `subs[i]` for variable `i`.
    pub fn compose(&self, subs: &[MPoly]) -> Result<MPoly> {
        if subs.len() != self.nvars {
            return Err(Error::ArityMismatch {
                expected: self.nvars,
                found: subs.len(),
            });
        }
        let target = subs.first().map_or(0, MPoly::nvars);
        if let Some(bad) = subs.iter().find(|s| s.nvars != target) {
            return Err(Error::ArityMismatch {
                expected: target,
                found: bad.nvars,
            });
        }
        let mut out = MPoly::zero(target);
        for (m, c) in &self.terms {
            let mut t = MPoly::constant(target, c.clone());
            for (s, &e) in subs.iter().zip(&m.0) {
                if e > 0 {
                    t = &t * &s.pow(e);
                }
            }
            out = &out + &t;
        }
        Ok(out)
    }

    /// Partial derivative with respect to variable `i`.
    pub fn derivative(&self, i: usize) -> MPoly {
        let mut out = MPoly::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut exps = m.0.clone();
            exps[i] -= 1;
            out.add_term(Monomial(exps), c * &Rat::from_int(e as i64));
        }
        out
    }

    /// Renders with the given variable names, leading (largest) term first.
    pub fn display_with<'a>(&'a self, names: &'a [String]) -> impl fmt::Display + 'a {
        MPolyDisplay { poly: self, names }
    }
}

struct MPolyDisplay<'a> {
    poly: &'a MPoly,
    names: &'a [String],
}

impl fmt::Display for MPolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.poly.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let a = c.abs();
            let mut factors = Vec::new();
            for (i, &e) in m.0.iter().enumerate() {
                let name = self
                    .names
                    .get(i)
                    .cloned()
                    .unwrap_or_else(|| format!("x{i}"));
                match e {
                    0 => {}
                    1 => factors.push(name),
                    _ => factors.push(format!("{name}^{e}")),
                }
            }
            if factors.is_empty() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{a}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with(&[]))
    }
}

impl Add for &MPoly {
    type Output = MPoly;
    fn add(self, rhs: &MPoly) -> MPoly {
        self.checked_add(rhs).expect("variable count mismatch")
    }
}

impl Sub for &MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &MPoly) -> MPoly {
        self.checked_sub(rhs).expect("variable count mismatch")
    }
}

impl Mul for &MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &MPoly) -> MPoly {
        self.checked_mul(rhs).expect("variable count mismatch")
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        self.scale(&Rat::from_int(-1))
    }
}

/// Determinant of a square matrix of polynomials by Berkowitz's
/// division-free algorithm.
pub fn det_division_free(m: &[Vec<MPoly>], nvars: usize) -> MPoly {
    let n = m.len();
    if n == 0 {
        return MPoly::one(nvars);
    }
    assert!(m.iter().all(|r| r.len() == n), "matrix must be square");
    // Characteristic polynomial coefficients of the leading principal
    // submatrices, highest degree first; the last entry of the final vector
    // is (-1)^n det.
    let mut poly: Vec<MPoly> = vec![MPoly::one(nvars), -&m[0][0]];
    for r in 1..n {
        // Partition the leading (r+1)x(r+1) block as [[A, S],[R, a]].
        let a = &m[r][r];
        let row: Vec<&MPoly> = (0..r).map(|j| &m[r][j]).collect();
        let col: Vec<&MPoly> = (0..r).map(|i| &m[i][r]).collect();
        // Toeplitz column: 1, -a, -R S, -R A S, -R A^2 S, ...
        let mut toeplitz = vec![MPoly::one(nvars), -a];
        let mut v: Vec<MPoly> = col.iter().map(|&x| x.clone()).collect();
        for _ in 0..r {
            let rv = row
                .iter()
                .zip(&v)
                .fold(MPoly::zero(nvars), |acc, (x, y)| &acc + &(*x * y));
            toeplitz.push(-&rv);
            v = (0..r)
                .map(|i| {
                    (0..r).fold(MPoly::zero(nvars), |acc, k| &acc + &(&m[i][k] * &v[k]))
                })
                .collect();
        }
        // new = T * poly, T lower-triangular Toeplitz of size (r+2)x(r+1).
        let mut next = vec![MPoly::zero(nvars); r + 2];
        for (i, slot) in next.iter_mut().enumerate() {
            for (j, p) in poly.iter().enumerate() {
                if i >= j && i - j < toeplitz.len() {
                    *slot = &*slot + &(&toeplitz[i - j] * p);
                }
            }
        }
        poly = next;
    }
    let last = poly.pop().expect("nonempty");
    if n.is_multiple_of(2) {
        last
    } else {
        -&last
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xy() -> (MPoly, MPoly) {
        (MPoly::var(2, 0), MPoly::var(2, 1))
    }

    #[test]
    fn square_of_sum() {
        let (x, y) = xy();
        let s = &x + &y;
        let sq = &s * &s;
        let expect = MPoly::from_terms(
            2,
            [
                (vec![2, 0], Rat::one()),
                (vec![1, 1], Rat::from_int(2)),
                (vec![0, 2], Rat::one()),
            ],
        );
        assert_eq!(sq, expect);
        let names = vec!["x".to_string(), "y".to_string()];
        assert_eq!(sq.display_with(&names).to_string(), "x^2 + 2*x*y + y^2");
    }

    #[test]
    fn additive_identity_and_eval() {
        let (x, y) = xy();
        let p = &(&x * &x) * &y;
        assert_eq!(&p + &MPoly::zero(2), p);
        assert_eq!(
            p.eval(&[Rat::from_int(2), Rat::from_int(3)]).unwrap(),
            Rat::from_int(12)
        );
    }

    #[test]
    fn arity_mismatch_is_an_error() {
        let p = MPoly::var(2, 0);
        let q = MPoly::var(3, 0);
        assert!(matches!(p.checked_add(&q), Err(Error::ArityMismatch { .. })));
        assert!(matches!(p.checked_mul(&q), Err(Error::ArityMismatch { .. })));
        assert!(matches!(p.eval(&[Rat::one()]), Err(Error::ArityMismatch { .. })));
    }

    #[test]
    fn derivative_and_compose() {
        let (x, y) = xy();
        let p = &(&x * &x) * &y;
        assert_eq!(p.derivative(0), &(&x * &y).scale(&Rat::from_int(2)) + &MPoly::zero(2));
        // substitute x -> y, y -> x + 1
        let q = p.compose(&[y.clone(), &x + &MPoly::one(2)]).unwrap();
        assert_eq!(q, &(&y * &y) * &(&x + &MPoly::one(2)));
    }

    #[test]
    fn berkowitz_small_cases() {
        let (x, y) = xy();
        let one = MPoly::one(2);
        let m = vec![
            vec![x.clone(), y.clone()],
            vec![one.clone(), x.clone()],
        ];
        assert_eq!(det_division_free(&m, 2), &(&x * &x) - &y);
        let m3 = vec![
            vec![x.clone(), one.clone(), MPoly::zero(2)],
            vec![MPoly::zero(2), y.clone(), one.clone()],
            vec![one.clone(), MPoly::zero(2), x.clone()],
        ];
        // x*y*x + 1*1*1 = x^2 y + 1
        assert_eq!(det_division_free(&m3, 2), &(&(&x * &x) * &y) + &one);
    }

    mod props {
        use super::*;
        use crate::exactlin::QMatrix;
        use proptest::prelude::*;

        fn poly(nvars: usize) -> impl Strategy<Value = MPoly> {
            prop::collection::vec(
                (prop::collection::vec(0u32..3, nvars), -5i64..6, 1i64..4),
                0..6,
            )
            .prop_map(move |ts| {
                MPoly::from_terms(nvars, ts.into_iter().map(|(e, n, d)| (e, Rat::new(n, d))))
            })
        }

        fn point(nvars: usize) -> impl Strategy<Value = Vec<Rat>> {
            prop::collection::vec((-4i64..5, 1i64..3), nvars)
                .prop_map(|v| v.into_iter().map(|(n, d)| Rat::new(n, d)).collect())
        }

        proptest! {
            #[test]
            fn commutative_and_eval_additive(
                (p, q, pt) in (1usize..5).prop_flat_map(|n| (poly(n), poly(n), point(n)))
            ) {
                prop_assert_eq!(&p * &q, &q * &p);
                let lhs = (&p + &q).eval(&pt).unwrap();
                prop_assert_eq!(lhs, p.eval(&pt).unwrap() + q.eval(&pt).unwrap());
                let prod = (&p * &q).eval(&pt).unwrap();
                prop_assert_eq!(prod, p.eval(&pt).unwrap() * q.eval(&pt).unwrap());
            }

            #[test]
            fn berkowitz_agrees_with_evaluated_det(
                entries in prop::collection::vec(poly(2), 9),
                pt in point(2)
            ) {
                let m: Vec<Vec<MPoly>> = entries.chunks(3).map(|r| r.to_vec()).collect();
                let d = det_division_free(&m, 2);
                let num = QMatrix::from_rows(
                    m.iter().map(|r| r.iter().map(|p| p.eval(&pt).unwrap()).collect()).collect(),
                );
                prop_assert_eq!(d.eval(&pt).unwrap(), num.det().unwrap());
            }
        }
    }
}
