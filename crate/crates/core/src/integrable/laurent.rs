use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::Result;
use crate::exactlin::Rat;
use crate::ncalg::{AlgebraSignature, NCPoly};

/// A Laurent polynomial in a commuting spectral parameter `λ` with
/// coefficients in the noncommutative algebra.
#[derive(Clone, PartialEq)]
pub struct NCLaurent {
    sig: Arc<AlgebraSignature>,
    terms: BTreeMap<i64, NCPoly>,
}

impl NCLaurent {
    pub fn zero(sig: &Arc<AlgebraSignature>) -> Self {
        Self {
            sig: sig.clone(),
            terms: BTreeMap::new(),
        }
    }

    /// `a λʲ`.
    pub fn monomial(a: NCPoly, j: i64) -> Self {
        let mut out = Self::zero(a.sig());
        out.add_coeff(j, &a);
        out
    }

    pub fn constant(a: NCPoly) -> Self {
        Self::monomial(a, 0)
    }

    pub fn sig(&self) -> &Arc<AlgebraSignature> {
        &self.sig
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &NCPoly)> {
        self.terms.iter().map(|(j, p)| (*j, p))
    }

    pub fn coeff(&self, j: i64) -> NCPoly {
        self.terms.get(&j).cloned().unwrap_or_else(|| NCPoly::zero(&self.sig))
    }

    pub fn min_exponent(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn add_coeff(&mut self, j: i64, a: &NCPoly) {
        let s = match self.terms.get(&j) {
            Some(p) => p + a,
            None => a.clone(),
        };
        if s.is_zero() {
            self.terms.remove(&j);
        } else {
            self.terms.insert(j, s);
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        if self.sig != other.sig {
            return Err(crate::Error::SignatureMismatch);
        }
        let mut out = self.clone();
        for (j, p) in &other.terms {
            out.add_coeff(*j, p);
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.neg())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        if self.sig != other.sig {
            return Err(crate::Error::SignatureMismatch);
        }
        let mut out = Self::zero(&self.sig);
        for (i, a) in &self.terms {
            for (j, b) in &other.terms {
                out.add_coeff(i + j, &(a * b));
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rat) -> Self {
        let mut out = Self::zero(&self.sig);
        for (j, p) in &self.terms {
            out.add_coeff(*j, &p.scale(c));
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&Rat::from_int(-1))
    }

    /// Applies a linear map to every coefficient.
    pub fn map_coeffs<F: FnMut(&NCPoly) -> NCPoly>(&self, mut f: F) -> Self {
        let mut out = Self::zero(&self.sig);
        for (j, p) in &self.terms {
            out.add_coeff(*j, &f(p));
        }
        out
    }
}

impl fmt::Display for NCLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(j, p)| match j {
                0 => format!("({p})"),
                1 => format!("({p})*lambda"),
                _ => format!("({p})*lambda^{j}"),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for NCLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NCLaurent({self})")
    }
}

/// A 2×2 matrix with [`NCLaurent`] entries.
pub type LaurentMatrix = [[NCLaurent; 2]; 2];

pub fn mat_mul(a: &LaurentMatrix, b: &LaurentMatrix) -> Result<LaurentMatrix> {
    let entry = |i: usize, j: usize| -> Result<NCLaurent> {
        a[i][0].checked_mul(&b[0][j])?.checked_add(&a[i][1].checked_mul(&b[1][j])?)
    };
    Ok([[entry(0, 0)?, entry(0, 1)?], [entry(1, 0)?, entry(1, 1)?]])
}

pub fn mat_sub(a: &LaurentMatrix, b: &LaurentMatrix) -> Result<LaurentMatrix> {
    let entry = |i: usize, j: usize| a[i][j].checked_sub(&b[i][j]);
    Ok([[entry(0, 0)?, entry(0, 1)?], [entry(1, 0)?, entry(1, 1)?]])
}

pub fn mat_trace(a: &LaurentMatrix) -> Result<NCLaurent> {
    a[0][0].checked_add(&a[1][1])
}
