//! Lattice polygons: Newton polygons, lattice point counts and Pick's theorem.

use num_integer::Integer;
use serde::Serialize;

use super::mpoly::MPoly;
use crate::error::{Error, Result};

/// A convex lattice polygon, vertices counterclockwise starting from the
/// lexicographically smallest one. One or two vertices encode a degenerate
/// (point or segment) hull.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct LatticePolygon {
    vertices: Vec<[i64; 2]>,
}

fn cross(o: [i64; 2], a: [i64; 2], b: [i64; 2]) -> i128 {
    (a[0] - o[0]) as i128 * (b[1] - o[1]) as i128 - (a[1] - o[1]) as i128 * (b[0] - o[0]) as i128
}

impl LatticePolygon {
    /// Convex hull of a point set (Andrew's monotone chain); collinear
    /// points are dropped.
    pub fn hull<I: IntoIterator<Item = [i64; 2]>>(points: I) -> Self {
        let mut pts: Vec<[i64; 2]> = points.into_iter().collect();
        pts.sort_unstable();
        pts.dedup();
        if pts.len() <= 2 {
            return Self { vertices: pts };
        }
        let mut lower: Vec<[i64; 2]> = Vec::new();
        for &p in &pts {
            while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
                lower.pop();
            }
            lower.push(p);
        }
        let mut upper: Vec<[i64; 2]> = Vec::new();
        for &p in pts.iter().rev() {
            while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0 {
                upper.pop();
            }
            upper.push(p);
        }
        lower.pop();
        upper.pop();
        lower.extend(upper);
        // all points collinear: keep the two extremes
        if lower.len() == 2 || (lower.len() > 2 && Self::area2_of(&lower) == 0) {
            return Self {
                vertices: vec![pts[0], pts[pts.len() - 1]],
            };
        }
        Self { vertices: lower }
    }

    pub fn vertices(&self) -> &[[i64; 2]] {
        &self.vertices
    }

    fn area2_of(v: &[[i64; 2]]) -> i128 {
        let n = v.len();
        (0..n)
            .map(|i| {
                let (a, b) = (v[i], v[(i + 1) % n]);
                a[0] as i128 * b[1] as i128 - b[0] as i128 * a[1] as i128
            })
            .sum()
    }

    /// Twice the enclosed area (shoelace), zero for degenerate hulls.
    pub fn area2(&self) -> i128 {
        if self.vertices.len() < 3 {
            0
        } else {
            Self::area2_of(&self.vertices)
        }
    }

    /// Lattice points on the boundary: sum of gcd of edge vectors.
    pub fn boundary_points(&self) -> u64 {
        match self.vertices.len() {
            0 => 0,
            1 => 1,
            2 => {
                let (a, b) = (self.vertices[0], self.vertices[1]);
                (b[0] - a[0]).unsigned_abs().gcd(&(b[1] - a[1]).unsigned_abs()) + 1
            }
            n => (0..n)
                .map(|i| {
                    let (a, b) = (self.vertices[i], self.vertices[(i + 1) % n]);
                    (b[0] - a[0]).unsigned_abs().gcd(&(b[1] - a[1]).unsigned_abs())
                })
                .sum(),
        }
    }

    /// Whether `p` lies strictly inside the polygon.
    pub fn contains_strictly(&self, p: [i64; 2]) -> bool {
        let n = self.vertices.len();
        n >= 3
            && (0..n).all(|i| cross(self.vertices[i], self.vertices[(i + 1) % n], p) > 0)
    }

    /// Strict-interior lattice points, by a bounding-box scan.
    pub fn interior_points(&self) -> u64 {
        if self.vertices.len() < 3 {
            return 0;
        }
        let (xmin, xmax) = self.range(0);
        let (ymin, ymax) = self.range(1);
        let mut count = 0;
        for x in xmin + 1..xmax {
            for y in ymin + 1..ymax {
                if self.contains_strictly([x, y]) {
                    count += 1;
                }
            }
        }
        count
    }

    fn range(&self, axis: usize) -> (i64, i64) {
        let it = self.vertices.iter().map(|v| v[axis]);
        (it.clone().min().unwrap_or(0), it.max().unwrap_or(0))
    }

    /// Pick's relation `2A = 2I + B - 2` for non-degenerate polygons.
    pub fn pick_consistent(&self) -> bool {
        if self.vertices.len() < 3 {
            return true;
        }
        self.area2() == 2 * self.interior_points() as i128 + self.boundary_points() as i128 - 2
    }

    /// JSON array of `[x, y]` vertex pairs.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.vertices).expect("integer pairs serialize")
    }
}

/// Convex hull of the exponent support of a bivariate polynomial.
pub fn newton_polygon(p: &MPoly) -> Result<LatticePolygon> {
    if p.nvars() != 2 {
        return Err(Error::ArityMismatch {
            expected: 2,
            found: p.nvars(),
        });
    }
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    Ok(LatticePolygon::hull(p.terms().map(|(m, _)| {
        let e = m.exponents();
        [e[0] as i64, e[1] as i64]
    })))
}
