//! The Kontsevich system on the free group algebra `ℚ⟨u^±1, v^±1⟩`: its
//! Hamiltonian flow, the Lax pair with spectral parameter, trace integrals
//! and the spectral curve of matrix representations.

mod laurent;
mod spectral;

pub use laurent::{mat_mul, mat_sub, mat_trace, LaurentMatrix, NCLaurent};
pub use spectral::{
    genus_target, spectral_curve, spectral_curve_at, spectral_flow_invariance, SpectralCurve,
};

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dbracket::builtins::{kontsevich, kontsevich_h, kontsevich_sig};
use crate::error::{Error, Result};
use crate::exactlin::Rat;
use crate::ncalg::{cyclic_project, AlgebraSignature, CyclicPoly, Letter, NCPoly, Word};
use crate::report::SweepReport;

/// Number of random words in [`hamiltonian_flow_check`].
pub const FLOW_SAMPLES: usize = 50;
/// Maximal length of the random words in [`hamiltonian_flow_check`].
pub const FLOW_MAX_LEN: usize = 4;

fn poly(sig: &Arc<AlgebraSignature>, terms: &[(i64, &[(usize, i64)])]) -> NCPoly {
    NCPoly::from_terms(sig, terms.iter().map(|(c, w)| (Word::from_runs(w), Rat::from_int(*c))))
}

/// `du/dt` and `dv/dt`.
pub fn flow_images(sig: &Arc<AlgebraSignature>) -> [NCPoly; 2] {
    [
        poly(sig, &[(1, &[(0, 1), (1, 1)]), (-1, &[(0, 1), (1, -1)]), (-1, &[(1, -1)])]),
        poly(sig, &[(-1, &[(1, 1), (0, 1)]), (1, &[(1, 1), (0, -1)]), (1, &[(0, -1)])]),
    ]
}

/// The derivation with the given generator images, applied to `x`.
/// Inverse letters use `d(g⁻¹) = −g⁻¹ d(g) g⁻¹`.
pub fn apply_derivation(images: &[NCPoly], x: &NCPoly) -> Result<NCPoly> {
    let sig = x.sig();
    if images.len() != sig.len() {
        return Err(Error::ArityMismatch {
            expected: sig.len(),
            found: images.len(),
        });
    }
    if images.iter().any(|p| p.sig() != sig) {
        return Err(Error::SignatureMismatch);
    }
    let mut out = NCPoly::zero(sig);
    for (w, c) in x.terms() {
        let ls = w.letters();
        for (i, &l) in ls.iter().enumerate() {
            let g = l.generator();
            let (left, right) = if l.is_inverse() {
                (
                    Word::from_parts(&[&ls[..=i]]),
                    Word::from_parts(&[&ls[i..]]),
                )
            } else {
                (Word::from_parts(&[&ls[..i]]), Word::from_parts(&[&ls[i + 1..]]))
            };
            let sign = if l.is_inverse() { -c.clone() } else { c.clone() };
            out = &out + &images[g].sandwich(&left, &right).scale(&sign);
        }
    }
    Ok(out)
}

fn check_kontsevich(x: &NCPoly) -> Result<()> {
    if **x.sig() != *kontsevich_sig() {
        return Err(Error::SignatureMismatch);
    }
    Ok(())
}

/// `dᵏx/dtᵏ` for the Kontsevich flow, `k = order`.
pub fn flow_derivative(x: &NCPoly, order: usize) -> Result<NCPoly> {
    check_kontsevich(x)?;
    let images = flow_images(x.sig());
    let mut out = x.clone();
    for _ in 0..order {
        out = apply_derivation(&images, &out)?;
    }
    Ok(out)
}

/// A uniformly drawn reduced word of length at most `max_len`.
pub fn random_word<R: Rng>(sig: &AlgebraSignature, max_len: usize, rng: &mut R) -> Word {
    let alphabet = sig.alphabet();
    let len = rng.gen_range(0..=max_len);
    let mut ls: Vec<Letter> = Vec::with_capacity(len);
    while ls.len() < len {
        let l = alphabet[rng.gen_range(0..alphabet.len())];
        if ls.last() != Some(&l.inverse()) {
            ls.push(l);
        }
    }
    Word::reduce(ls)
}

/// Compares the flow with `{h, ·}` on generators, their inverses, the unit
/// and `samples` random words of length at most `max_len`.
pub fn hamiltonian_flow_check(samples: usize, max_len: usize, seed: u64) -> Result<SweepReport> {
    let db = kontsevich();
    let sig = db.sig().clone();
    let h = kontsevich_h(&sig);
    let mut rep = SweepReport::new("flow-check")
        .param("samples", samples)
        .param("max_len", max_len)
        .with_seed(seed);
    let check = |law: &str, w: Word, rep: &mut SweepReport| -> Result<()> {
        let x = NCPoly::word(&sig, w.clone());
        let lhs = flow_derivative(&x, 1)?;
        let rhs = db.loday_poly_word(&h, &w);
        let d = &lhs - &rhs;
        rep.record(law, (!d.is_zero()).then(|| d.to_string()), || vec![x.to_string()]);
        Ok(())
    };
    for l in sig.alphabet() {
        check("generators", Word::letter(l), &mut rep)?;
    }
    check("generators", Word::one(), &mut rep)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let w = random_word(&sig, max_len, &mut rng);
        check("random-words", w, &mut rep)?;
    }
    Ok(rep)
}

/// A Lax pair `dL/dt = [L, M]` of 2×2 matrices.
#[derive(Debug, Clone, PartialEq)]
pub struct LaxPair {
    pub l: LaurentMatrix,
    pub m: LaurentMatrix,
}

impl LaxPair {
    pub fn kontsevich() -> Self {
        let sig = kontsevich_sig();
        let c = |t: &[(i64, &[(usize, i64)])]| NCLaurent::constant(poly(&sig, t));
        let at = |t: &[(i64, &[(usize, i64)])], j: i64| NCLaurent::monomial(poly(&sig, t), j);
        let sum = |a: NCLaurent, b: NCLaurent| a.checked_add(&b).expect("same signature");
        let vinv: &[(usize, i64)] = &[(1, -1)];
        let u: &[(usize, i64)] = &[(0, 1)];
        let v: &[(usize, i64)] = &[(1, 1)];
        let tail: &[(i64, &[(usize, i64)])] = &[(1, &[(1, -1), (0, -1)]), (1, &[(0, -1)])];
        let l = [
            [
                c(&[(1, vinv), (1, u)]),
                sum(at(&[(1, v)], 1), sum(c(tail), c(&[(1, &[])]))),
            ],
            [
                sum(c(&[(1, vinv)]), at(&[(1, u)], -1)),
                sum(c(&[(1, v)]), sum(c(tail), at(&[(1, &[])], -1))),
            ],
        ];
        let m = [
            [c(&[(1, vinv), (-1, v), (1, u)]), at(&[(1, v)], 1)],
            [c(&[(1, vinv)]), c(&[(1, u)])],
        ];
        Self { l, m }
    }

    /// The same pair with `M` replaced by `−M`.
    pub fn with_m_negated(&self) -> Self {
        let neg = |r: &[NCLaurent; 2]| [r[0].neg(), r[1].neg()];
        Self {
            l: self.l.clone(),
            m: [neg(&self.m[0]), neg(&self.m[1])],
        }
    }

    /// `dL/dt − (LM − ML)` under the Kontsevich flow.
    pub fn residual(&self) -> Result<LaurentMatrix> {
        let mut dl = self.l.clone();
        for row in dl.iter_mut() {
            for e in row.iter_mut() {
                let mut err = None;
                *e = e.map_coeffs(|p| {
                    flow_derivative(p, 1).unwrap_or_else(|x| {
                        err = Some(x);
                        NCPoly::zero(p.sig())
                    })
                });
                if let Some(x) = err {
                    return Err(x);
                }
            }
        }
        let comm = mat_sub(&mat_mul(&self.l, &self.m)?, &mat_mul(&self.m, &self.l)?)?;
        mat_sub(&dl, &comm)
    }
}

/// Checks `dL/dt = [L, M]` entrywise, one law entry per matrix entry and
/// per `λ`-coefficient of the residual.
pub fn lax_residual_for(pair: &LaxPair) -> Result<SweepReport> {
    let res = pair.residual()?;
    let mut rep = SweepReport::new("lax");
    for (i, row) in res.iter().enumerate() {
        for (j, e) in row.iter().enumerate() {
            let entry = format!("({},{})", i + 1, j + 1);
            if e.is_zero() {
                rep.pass("lax");
            }
            for (k, p) in e.terms() {
                rep.fail("lax", vec![entry.clone(), format!("lambda^{k}")], p.to_string());
            }
        }
    }
    Ok(rep)
}

/// The residual of the Kontsevich pair. A note records whether the
/// reversed commutator `dL/dt = [M, L]` holds instead.
pub fn lax_residual() -> Result<SweepReport> {
    let pair = LaxPair::kontsevich();
    let mut rep = lax_residual_for(&pair)?;
    let reversed = lax_residual_for(&pair.with_m_negated())?;
    rep.note(if reversed.passed() {
        "dL/dt = ML - LM holds exactly"
    } else {
        "dL/dt = ML - LM does not hold either"
    });
    Ok(rep)
}

/// `H_{k,j}`: the cyclic class of the `λʲ` coefficient of `Tr L(λ)ᵏ`.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceIntegral {
    pub k: usize,
    pub j: i64,
    pub value: CyclicPoly,
}

/// All `H_{k,j}` for `1 ≤ k ≤ k_max`, `−k ≤ j ≤ k`, including zero ones.
pub fn trace_integrals(k_max: usize) -> Result<Vec<TraceIntegral>> {
    trace_integrals_for(&LaxPair::kontsevich().l, k_max)
}

pub fn trace_integrals_for(l: &LaurentMatrix, k_max: usize) -> Result<Vec<TraceIntegral>> {
    if k_max == 0 {
        return Err(Error::Invalid("k_max must be at least 1".into()));
    }
    let mut out = Vec::new();
    let mut power = l.clone();
    for k in 1..=k_max {
        if k > 1 {
            power = mat_mul(&power, l)?;
        }
        let tr = mat_trace(&power)?;
        let kk = k as i64;
        for j in -kk..=kk {
            out.push(TraceIntegral {
                k,
                j,
                value: cyclic_project(&tr.coeff(j)),
            });
        }
    }
    Ok(out)
}

/// Involutivity of the trace integrals modulo commutators for all ordered
/// pairs with `k, m ≤ k_max`, conservation of each integral by the flow,
/// and commutation of the flows `{hᵏ, ·}` for `k ≤ flows_max` on the
/// generators and their inverses.
pub fn commutation_check(k_max: usize, flows_max: usize) -> Result<SweepReport> {
    let db = kontsevich();
    let sig = db.sig().clone();
    let hs = trace_integrals(k_max)?;
    let mut rep = SweepReport::new("commute")
        .param("k_max", k_max)
        .param("flows_max", flows_max);
    let reps: Vec<NCPoly> = hs.iter().map(|h| h.value.to_ncpoly()).collect();
    let name = |h: &TraceIntegral| format!("H({},{})", h.k, h.j);
    for (a, ha) in hs.iter().zip(&reps) {
        for (b, hb) in hs.iter().zip(&reps) {
            let r = cyclic_project(&db.loday(ha, hb)?);
            rep.record("involution", (!r.is_zero()).then(|| r.to_string()), || vec![name(a), name(b)]);
        }
        let r = cyclic_project(&flow_derivative(ha, 1)?);
        rep.record("conservation", (!r.is_zero()).then(|| r.to_string()), || vec![name(a)]);
    }
    let h = kontsevich_h(&sig);
    let powers: Vec<NCPoly> = (1..=flows_max).map(|k| h.pow(k)).collect();
    for (i, hi) in powers.iter().enumerate() {
        for (j, hj) in powers.iter().enumerate().skip(i + 1) {
            for l in sig.alphabet() {
                let x = NCPoly::word(&sig, Word::letter(l));
                let a = db.loday(hi, &db.loday(hj, &x)?)?;
                let b = db.loday(hj, &db.loday(hi, &x)?)?;
                let d = &a - &b;
                rep.record("commuting-flows", (!d.is_zero()).then(|| d.to_string()), || {
                    vec![format!("h^{}", i + 1), format!("h^{}", j + 1), x.to_string()]
                });
            }
        }
    }
    Ok(rep)
}
