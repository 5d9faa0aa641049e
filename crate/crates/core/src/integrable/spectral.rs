use serde_json::json;

use super::{flow_images, LaurentMatrix, LaxPair};
use crate::dbracket::builtins::kontsevich_sig;
use crate::error::{Error, Result};
use crate::exactlin::{det_division_free, newton_polygon, LatticePolygon, MPoly, Monomial, QMatrix, Rat};
use crate::ncalg::{NCPoly, Word};
use crate::repn::{RepPoint, DEFAULT_RANGE};
use crate::report::SweepReport;

/// The cleared curve `λᵉ det(φ(L(λ)) − ν) = 0` at one representation.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralCurve {
    pub n: usize,
    pub seed: Option<u64>,
    /// Polynomial in `(λ, ν)`.
    pub curve: MPoly,
    pub clearing_exponent: i64,
    pub degree: u32,
    pub polygon: LatticePolygon,
    pub interior_points: u64,
}

/// Genus values listed for the spectral curve, `N = 2, 3, 4`.
pub fn genus_target(n: usize) -> Option<u64> {
    match n {
        2 => Some(4),
        3 => Some(9),
        4 => Some(16),
        _ => None,
    }
}

pub const CURVE_VARS: [&str; 2] = ["lambda", "nu"];

impl SpectralCurve {
    pub fn curve_text(&self) -> String {
        let names: Vec<String> = CURVE_VARS.iter().map(|s| s.to_string()).collect();
        let text = self.curve.display_with(&names).to_string();
        text
    }

    pub fn to_json(&self) -> String {
        let target = genus_target(self.n);
        let v = json!({
            "schema_version": crate::report::SCHEMA_VERSION,
            "n": self.n,
            "seed": self.seed,
            "clearing_exponent": self.clearing_exponent,
            "degree": self.degree,
            "polygon": self.polygon,
            "interior_points": self.interior_points,
            "genus_target": target,
            "interior_matches_target": target.map(|t| t == self.interior_points),
            "terms": self.curve.len(),
        });
        serde_json::to_string_pretty(&v).expect("curve summary serializes")
    }

    pub fn to_text(&self) -> String {
        let mut s = format!(
            "N={}: degree {}, clearing exponent {}, {} interior lattice points",
            self.n, self.degree, self.clearing_exponent, self.interior_points
        );
        if let Some(t) = genus_target(self.n) {
            s += &format!(" (listed genus {t})");
        }
        s += &format!("\npolygon {}\n", self.polygon.to_json());
        s
    }
}

type PMatrix = Vec<Vec<MPoly>>;

fn pmat_mul(a: &PMatrix, b: &PMatrix, nv: usize) -> PMatrix {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).fold(MPoly::zero(nv), |acc, k| &acc + &(&a[i][k] * &b[k][j])))
                .collect()
        })
        .collect()
}

fn constant_matrix(m: &QMatrix, nv: usize) -> PMatrix {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| MPoly::constant(nv, m[(i, j)].clone())).collect())
        .collect()
}

fn shift(p: &MPoly, var: usize, by: i64) -> MPoly {
    let nv = p.nvars();
    MPoly::from_terms(
        nv,
        p.terms().map(|(m, c)| {
            let mut e = m.exponents().to_vec();
            e[var] = (e[var] as i64 + by) as u32;
            (e, c.clone())
        }),
    )
}

/// `φ(L(λ)) − ν` with block row `a` multiplied by `λ^{s_a}` so that all
/// entries are polynomials; `phi` evaluates coefficients. Returns the
/// matrix and `Σ N s_a`.
fn curve_matrix<F>(l: &LaurentMatrix, n: usize, nv: usize, mut phi: F) -> (PMatrix, i64)
where
    F: FnMut(&NCPoly) -> PMatrix,
{
    let mut big = vec![vec![MPoly::zero(nv); 2 * n]; 2 * n];
    let mut total = 0;
    for (a, row) in l.iter().enumerate() {
        let s = row
            .iter()
            .filter_map(|e| e.min_exponent())
            .min()
            .map_or(0, |m| (-m).max(0));
        total += n as i64 * s;
        for (b, e) in row.iter().enumerate() {
            for (j, coeff) in e.terms() {
                let m = phi(coeff);
                for (p, mrow) in m.iter().enumerate() {
                    for (q, x) in mrow.iter().enumerate() {
                        let cell = &mut big[a * n + p][b * n + q];
                        *cell = &*cell + &shift(x, 0, j + s);
                    }
                }
            }
            if a == b {
                for p in 0..n {
                    let mut e = vec![0; nv];
                    e[0] = s as u32;
                    e[1] = 1;
                    let cell = &mut big[a * n + p][a * n + p];
                    *cell = &*cell - &MPoly::monomial(e, Rat::one());
                }
            }
        }
    }
    (big, total)
}

/// The spectral curve of `l` at `rep`.
pub fn spectral_curve_at(rep: &RepPoint, l: &LaurentMatrix) -> Result<SpectralCurve> {
    let n = rep.n();
    let mut err = None;
    let (big, total) = curve_matrix(l, n, 2, |p| match rep.phi_eval(p) {
        Ok(m) => constant_matrix(&m, 2),
        Err(e) => {
            err = Some(e);
            vec![vec![MPoly::zero(2); n]; n]
        }
    });
    if let Some(e) = err {
        return Err(e);
    }
    let det = det_division_free(&big, 2);
    if det.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let min = det.terms().map(|(m, _)| m.exponents()[0]).min().unwrap_or(0) as i64;
    let curve = shift(&det, 0, -min);
    let polygon = newton_polygon(&curve)?;
    Ok(SpectralCurve {
        n,
        seed: rep.seed(),
        degree: curve.total_degree().unwrap_or(0),
        clearing_exponent: total - min,
        interior_points: polygon.interior_points(),
        polygon,
        curve,
    })
}

/// The spectral curve of the Kontsevich Lax matrix at a random
/// `N`-dimensional representation.
pub fn spectral_curve(n: usize, seed: u64) -> Result<SpectralCurve> {
    if n == 0 {
        return Err(Error::Invalid("dimension must be at least 1".into()));
    }
    let rep = RepPoint::random(&kontsevich_sig(), n, seed, DEFAULT_RANGE);
    spectral_curve_at(&rep, &LaxPair::kontsevich().l)
}

fn truncate_eps(p: &MPoly) -> MPoly {
    MPoly::from_terms(
        p.nvars(),
        p.terms()
            .filter(|(m, _)| m.exponents()[2] <= 1)
            .map(|(m, c)| (m.exponents().to_vec(), c.clone())),
    )
}

/// Differentiates every coefficient of the spectral curve along the flow
/// vector field at a random point: entries are perturbed to first order
/// in `ε` by `φ(du/dt)`, `φ(dv/dt)` and the `ε`-linear part of the
/// determinant must vanish.
pub fn spectral_flow_invariance(n: usize, seed: u64) -> Result<SweepReport> {
    let sig = kontsevich_sig();
    let rep = RepPoint::random(&sig, n, seed, DEFAULT_RANGE);
    let nv = 3;
    let images = flow_images(&sig);
    let mut letters: Vec<PMatrix> = vec![Vec::new(); 2 * sig.len()];
    for (g, img) in images.iter().enumerate() {
        let x = rep.matrix(g);
        let dx = rep.phi_eval(img)?;
        let xi = rep.letter(crate::ncalg::Letter::neg(g));
        let dxi = (&(xi * &dx) * xi).scale(&Rat::from_int(-1));
        let eps = |a: &QMatrix, d: &QMatrix| -> PMatrix {
            (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| {
                            let mut p = MPoly::constant(nv, a[(i, j)].clone());
                            p.add_term(Monomial::new(vec![0, 0, 1]), d[(i, j)].clone());
                            p
                        })
                        .collect()
                })
                .collect()
        };
        letters[crate::ncalg::Letter::pos(g).index()] = eps(x, &dx);
        letters[crate::ncalg::Letter::neg(g).index()] = eps(xi, &dxi);
    }
    let phi_word = |w: &Word| -> PMatrix {
        let mut acc = constant_matrix(&QMatrix::identity(n), nv);
        for &l in w.letters() {
            acc = pmat_mul(&acc, &letters[l.index()], nv)
                .iter()
                .map(|r| r.iter().map(truncate_eps).collect())
                .collect();
        }
        acc
    };
    let (big, _) = curve_matrix(&LaxPair::kontsevich().l, n, nv, |p| {
        let mut out = vec![vec![MPoly::zero(nv); n]; n];
        for (w, c) in p.terms() {
            let m = phi_word(w);
            for i in 0..n {
                for j in 0..n {
                    out[i][j] = &out[i][j] + &m[i][j].scale(c);
                }
            }
        }
        out
    });
    let det = det_division_free(&big, nv);
    let linear = MPoly::from_terms(
        2,
        det.terms()
            .filter(|(m, _)| m.exponents()[2] == 1)
            .map(|(m, c)| (m.exponents()[..2].to_vec(), c.clone())),
    );
    let mut out = SweepReport::new("spectral-flow-invariance")
        .param("n", n)
        .with_seed(seed);
    let names: Vec<String> = CURVE_VARS.iter().map(|s| s.to_string()).collect();
    let constant_terms = det.terms().filter(|(m, _)| m.exponents()[2] == 0).count();
    out.set_param("coefficients", constant_terms);
    out.record(
        "flow-invariance",
        (!linear.is_zero()).then(|| linear.display_with(&names).to_string()),
        || vec![format!("N={n}")],
    );
    Ok(out)
}
