//! Representation algebras over finite-dimensional coalgebras with a
//! bilinear form `ν` and a trace element `τ`.

mod bracket;

pub use bracket::{crosscheck_rep, repalg_bracket, RepAlgElement, RepAlgSymbol};

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::exactlin::Rat;
use crate::ncalg::add_into;
use crate::report::SweepReport;

pub type Tensor2 = BTreeMap<(usize, usize), Rat>;
pub type Tensor3 = BTreeMap<(usize, usize, usize), Rat>;

/// A coalgebra given by structure constants in a fixed basis.
#[derive(Debug, Clone, PartialEq)]
pub struct Coalgebra {
    labels: Vec<String>,
    delta: Vec<Tensor2>,
    eps: Vec<Rat>,
    nu: Vec<Vec<Rat>>,
    tau: Vec<Rat>,
}

impl Coalgebra {
    /// Only shapes are validated here; the axioms are left to [`check_coalgebra`].
    pub fn new(labels: Vec<String>, delta: Vec<Tensor2>, eps: Vec<Rat>, nu: Vec<Vec<Rat>>, tau: Vec<Rat>) -> Result<Self> {
        let d = labels.len();
        if d == 0 {
            return Err(Error::Invalid("coalgebra needs a nonempty basis".into()));
        }
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(Error::Invalid(format!("duplicate basis label `{l}`")));
            }
        }
        let shape_ok = delta.len() == d
            && eps.len() == d
            && tau.len() == d
            && nu.len() == d
            && nu.iter().all(|r| r.len() == d)
            && delta.iter().all(|t| t.keys().all(|&(b, c)| b < d && c < d));
        if !shape_ok {
            return Err(Error::Invalid(format!("coalgebra data does not match a basis of size {d}")));
        }
        let delta = delta
            .into_iter()
            .map(|t| t.into_iter().filter(|(_, c)| !c.is_zero()).collect())
            .collect();
        Ok(Self {
            labels,
            delta,
            eps,
            nu,
            tau,
        })
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn delta(&self, a: usize) -> &Tensor2 {
        &self.delta[a]
    }

    pub fn eps(&self, a: usize) -> &Rat {
        &self.eps[a]
    }

    pub fn nu(&self, a: usize, b: usize) -> &Rat {
        &self.nu[a][b]
    }

    pub fn tau(&self) -> &[Rat] {
        &self.tau
    }

    /// `(Δ ⊗ id) Δ(e_a)`.
    pub fn delta3(&self, a: usize) -> Tensor3 {
        let mut out = Tensor3::new();
        for (&(b, c), x) in &self.delta[a] {
            for (&(p, q), y) in &self.delta[b] {
                add_into(&mut out, (p, q, c), x * y);
            }
        }
        out
    }

    /// `(id ⊗ Δ) Δ(e_a)`.
    pub fn delta3_right(&self, a: usize) -> Tensor3 {
        let mut out = Tensor3::new();
        for (&(b, c), x) in &self.delta[a] {
            for (&(p, q), y) in &self.delta[c] {
                add_into(&mut out, (b, p, q), x * y);
            }
        }
        out
    }

    /// `ν̄(e_a, e_b) = ν(e_a, β²) β¹ ⊗ β³` over `Δ³(e_b)`.
    pub fn nu_bar(&self, a: usize, b: usize) -> Tensor2 {
        let mut out = Tensor2::new();
        for ((p, q, r), c) in self.delta3(b) {
            let n = &self.nu[a][q];
            if !n.is_zero() {
                add_into(&mut out, (p, r), n * &c);
            }
        }
        out
    }

    /// `ν̄(τ, e_b)`, extended linearly in the first slot.
    pub fn nu_bar_tau(&self, b: usize) -> Tensor2 {
        let mut out = Tensor2::new();
        for (a, t) in self.tau.iter().enumerate() {
            if t.is_zero() {
                continue;
            }
            for (k, c) in self.nu_bar(a, b) {
                add_into(&mut out, k, t * &c);
            }
        }
        out
    }

    pub(crate) fn render2(&self, t: &Tensor2) -> String {
        if t.is_empty() {
            return "0".into();
        }
        t.iter()
            .map(|(&(a, b), c)| format!("{c}*{}(x){}", self.labels[a], self.labels[b]))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// The dual of the N×N matrix algebra: `Δ(e_ij) = Σ_k e_ik ⊗ e_kj`,
/// `ε(e_ij) = δ_ij`, `ν(e_ij, e_kl) = δ_il δ_jk`, `τ = Σ_i e_ii`.
pub fn comatrix_coalgebra(n: usize) -> Result<Coalgebra> {
    if n == 0 {
        return Err(Error::Invalid("dimension must be at least 1".into()));
    }
    let idx = |i: usize, j: usize| i * n + j;
    let d = n * n;
    let mut labels = Vec::with_capacity(d);
    let mut delta = Vec::with_capacity(d);
    let mut eps = Vec::with_capacity(d);
    let mut tau = Vec::with_capacity(d);
    let mut nu = vec![vec![Rat::zero(); d]; d];
    for i in 0..n {
        for j in 0..n {
            labels.push(if n < 10 {
                format!("e{}{}", i + 1, j + 1)
            } else {
                format!("e{}_{}", i + 1, j + 1)
            });
            delta.push((0..n).map(|k| ((idx(i, k), idx(k, j)), Rat::one())).collect());
            let diag = if i == j { Rat::one() } else { Rat::zero() };
            eps.push(diag.clone());
            tau.push(diag);
            nu[idx(i, j)][idx(j, i)] = Rat::one();
        }
    }
    Coalgebra::new(labels, delta, eps, nu, tau)
}

fn diff2(a: &Tensor2, b: &Tensor2) -> Tensor2 {
    let mut out = a.clone();
    for (k, c) in b {
        add_into(&mut out, *k, -c.clone());
    }
    out
}

fn diff3(a: &Tensor3, b: &Tensor3) -> Tensor3 {
    let mut out = a.clone();
    for (k, c) in b {
        add_into(&mut out, *k, -c.clone());
    }
    out
}

fn flip(t: &Tensor2) -> Tensor2 {
    t.iter().map(|(&(a, b), c)| ((b, a), c.clone())).collect()
}

/// Law names reported by [`check_coalgebra`].
pub const NU_STATED: &str = "nu-symmetry-stated";
pub const NU_FLIPPED: &str = "nu-symmetry-flipped";

/// Checks the coalgebra axioms and the conditions on `ν` and `τ` on all
/// basis elements and pairs. The symmetry of `ν̄` is reported in two forms,
/// `ν̄(α,β) = ν̄(β,α)` and `ν̄(α,β) = flip ν̄(β,α)`.
pub fn check_coalgebra(c: &Coalgebra) -> SweepReport {
    let d = c.dim();
    let mut rep = SweepReport::new("coalgebra").param("dim", d);
    let render3 = |t: &Tensor3| {
        t.iter()
            .map(|(&(a, b, e), x)| format!("{x}*{}(x){}(x){}", c.labels[a], c.labels[b], c.labels[e]))
            .collect::<Vec<_>>()
            .join(" + ")
    };
    for a in 0..d {
        let inputs = || vec![c.labels[a].clone()];
        let r = diff3(&c.delta3(a), &c.delta3_right(a));
        rep.record("coassociativity", (!r.is_empty()).then(|| render3(&r)), inputs);

        let mut left = BTreeMap::new();
        let mut right = BTreeMap::new();
        for (&(p, q), x) in &c.delta[a] {
            add_into(&mut left, q, &c.eps[p] * x);
            add_into(&mut right, p, &c.eps[q] * x);
        }
        let mut unit = BTreeMap::new();
        unit.insert(a, Rat::one());
        let ok = left == unit && right == unit;
        rep.record("counit", (!ok).then(|| format!("{left:?} / {right:?}")), inputs);

        let mut nt = Rat::zero();
        for (b, t) in c.tau.iter().enumerate() {
            nt += t * &c.nu[b][a];
        }
        rep.record(
            "tau",
            (nt != c.eps[a]).then(|| format!("nu(tau, {}) = {nt}, eps = {}", c.labels[a], c.eps[a])),
            inputs,
        );

        let r = diff2(&c.nu_bar_tau(a), &c.delta[a]);
        rep.record("trace-split", (!r.is_empty()).then(|| c.render2(&r)), inputs);
    }
    for a in 0..d {
        for b in 0..d {
            let inputs = || vec![c.labels[a].clone(), c.labels[b].clone()];
            let ab = c.nu_bar(a, b);
            let ba = c.nu_bar(b, a);
            let r = diff2(&ab, &ba);
            rep.record(NU_STATED, (!r.is_empty()).then(|| c.render2(&r)), inputs);
            let r = diff2(&ab, &flip(&ba));
            rep.record(NU_FLIPPED, (!r.is_empty()).then(|| c.render2(&r)), inputs);

            // (id ⊗ Δ) ν̄(α, β) = ν̄(α, β¹) ⊗ β²
            let mut lhs = Tensor3::new();
            for (&(p, q), x) in &ab {
                for (&(s, t), y) in &c.delta[q] {
                    add_into(&mut lhs, (p, s, t), x * y);
                }
            }
            let mut rhs = Tensor3::new();
            for (&(b1, b2), x) in &c.delta[b] {
                for ((p, q), y) in c.nu_bar(a, b1) {
                    add_into(&mut rhs, (p, q, b2), x * &y);
                }
            }
            let r = diff3(&lhs, &rhs);
            rep.record("coproduct-identity-1", (!r.is_empty()).then(|| render3(&r)), inputs);

            // (Δ ⊗ id) ν̄(α, β) = β¹ ⊗ ν̄(α, β²)
            let mut lhs = Tensor3::new();
            for (&(p, q), x) in &ab {
                for (&(s, t), y) in &c.delta[p] {
                    add_into(&mut lhs, (s, t, q), x * y);
                }
            }
            let mut rhs = Tensor3::new();
            for (&(b1, b2), x) in &c.delta[b] {
                for ((p, q), y) in c.nu_bar(a, b2) {
                    add_into(&mut rhs, (b1, p, q), x * &y);
                }
            }
            let r = diff3(&lhs, &rhs);
            rep.record("coproduct-identity-2", (!r.is_empty()).then(|| render3(&r)), inputs);
        }
    }
    rep
}

/// All laws pass, with the symmetry of `ν̄` accepted in either form.
pub fn coalgebra_admissible(rep: &SweepReport) -> bool {
    rep.laws
        .iter()
        .filter(|(law, _)| *law != NU_STATED && *law != NU_FLIPPED)
        .all(|(_, t)| t.failed == 0)
        && (rep.law_passed(NU_STATED) || rep.law_passed(NU_FLIPPED))
}
