//   Copyright 2026 keydoor developers
//
//   Licensed under the Apache License, Version 2.0 (the "License");
//   you may not use this file except in compliance with the License.
//   You may obtain a copy of the License at
//
//       http://www.apache.org/licenses/LICENSE-2.0
//
//   Unless required by applicable law or agreed to in writing, software
//   distributed under the License is distributed on an "AS IS" BASIS,
//   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//   See the License for the specific language governing permissions and
//   limitations under the License.
//! Half-space polytopes and the LP-backed predicates on them.

use std::fmt;
use std::sync::OnceLock;

use nalgebra::{DMatrix, DVector};

use crate::conic::{ConicProgram, LinExpr, SolveStatus, Var};
use crate::error::{Error, Result};
use crate::tolerance::{EPS_FACET, EPS_FEAS, EPS_HYPERPLANE, EPS_INT};

/// Radius cap used by emptiness tests so unbounded sets stay solvable.
const EMPTINESS_RADIUS_CAP: f64 = 1.0;

/// Convex polytope `{x : A x <= b}`.
///
/// Rows are stored normalized to unit length, so slack values are Euclidean
/// distances to the supporting hyperplanes.
#[derive(Clone)]
pub struct Polytope {
    a: DMatrix<f64>,
    b: DVector<f64>,
    chebyshev: OnceLock<(DVector<f64>, f64)>,
}

impl fmt::Debug for Polytope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Polytope")
            .field("dim", &self.dim())
            .field("rows", &self.n_rows())
            .finish()
    }
}

impl PartialEq for Polytope {
    fn eq(&self, other: &Self) -> bool {
        self.a == other.a && self.b == other.b
    }
}

impl Polytope {
    pub fn new(a: DMatrix<f64>, b: DVector<f64>) -> Result<Self> {
        if a.nrows() != b.len() {
            return Err(Error::Dimension(format!(
                "A has {} rows but b has {} entries",
                a.nrows(),
                b.len()
            )));
        }
        if a.ncols() == 0 {
            return Err(Error::Dimension("polytope dimension must be positive".into()));
        }
        let d = a.ncols();
        let mut rows = Vec::with_capacity(a.nrows());
        let mut rhs = Vec::with_capacity(a.nrows());
        for i in 0..a.nrows() {
            let row = a.row(i);
            let norm = row.norm();
            if norm <= EPS_HYPERPLANE {
                // 0 <= b_i: trivially satisfied rows are dropped, violated ones kept.
                if b[i] >= -EPS_FEAS {
                    continue;
                }
                rows.extend(row.iter().copied());
                rhs.push(b[i]);
            } else {
                rows.extend(row.iter().map(|v| v / norm));
                rhs.push(b[i] / norm);
            }
        }
        Ok(Self::from_unit_rows(
            DMatrix::from_row_slice(rhs.len(), d, &rows),
            DVector::from_vec(rhs),
        ))
    }

    fn from_unit_rows(a: DMatrix<f64>, b: DVector<f64>) -> Self {
        Self {
            a,
            b,
            chebyshev: OnceLock::new(),
        }
    }

    pub fn from_rows(rows: &[Vec<f64>], b: &[f64]) -> Result<Self> {
        let d = rows.first().map(Vec::len).unwrap_or(0);
        if rows.iter().any(|r| r.len() != d) {
            return Err(Error::Dimension("ragged constraint matrix".into()));
        }
        let flat: Vec<f64> = rows.iter().flatten().copied().collect();
        Self::new(
            DMatrix::from_row_slice(rows.len(), d, &flat),
            DVector::from_column_slice(b),
        )
    }

    /// Axis-aligned box `[lo, hi]`.
    pub fn from_box(lo: &[f64], hi: &[f64]) -> Result<Self> {
        if lo.len() != hi.len() || lo.is_empty() {
            return Err(Error::Dimension("box bounds differ in length".into()));
        }
        let d = lo.len();
        let mut a = DMatrix::zeros(2 * d, d);
        let mut b = DVector::zeros(2 * d);
        for i in 0..d {
            a[(2 * i, i)] = 1.0;
            b[2 * i] = hi[i];
            a[(2 * i + 1, i)] = -1.0;
            b[2 * i + 1] = -lo[i];
        }
        Ok(Self::from_unit_rows(a, b))
    }

    pub fn dim(&self) -> usize {
        self.a.ncols()
    }

    pub fn n_rows(&self) -> usize {
        self.a.nrows()
    }

    pub fn a(&self) -> &DMatrix<f64> {
        &self.a
    }

    pub fn b(&self) -> &DVector<f64> {
        &self.b
    }

    pub fn row(&self, i: usize) -> (Vec<f64>, f64) {
        (self.a.row(i).iter().copied().collect(), self.b[i])
    }

    /// Largest constraint violation `max_i a_i x - b_i` (a signed distance).
    pub fn violation(&self, x: &[f64]) -> f64 {
        (0..self.n_rows())
            .map(|i| {
                self.a
                    .row(i)
                    .iter()
                    .zip(x)
                    .map(|(a, x)| a * x)
                    .sum::<f64>()
                    - self.b[i]
            })
            .fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn contains(&self, x: &[f64], tol: f64) -> bool {
        x.len() == self.dim() && self.violation(x) <= tol
    }

    /// Whether `x` lies at least `margin` inside every facet.
    pub fn contains_interior(&self, x: &[f64], margin: f64) -> bool {
        x.len() == self.dim() && self.violation(x) < -margin
    }

    pub fn intersect(&self, other: &Polytope) -> Result<Polytope> {
        if self.dim() != other.dim() {
            return Err(Error::Dimension(format!(
                "cannot intersect {}-d and {}-d polytopes",
                self.dim(),
                other.dim()
            )));
        }
        let d = self.dim();
        let n = self.n_rows() + other.n_rows();
        let mut a = DMatrix::zeros(n, d);
        a.rows_mut(0, self.n_rows()).copy_from(&self.a);
        a.rows_mut(self.n_rows(), other.n_rows()).copy_from(&other.a);
        let b = DVector::from_iterator(n, self.b.iter().chain(other.b.iter()).copied());
        Ok(Self::from_unit_rows(a, b))
    }

    /// Polytope with every facet pushed inward by `eps`.
    pub fn shrink(&self, eps: f64) -> Polytope {
        let b = self.b.map(|v| v - eps);
        Self::from_unit_rows(self.a.clone(), b)
    }

    /// Appends the half-space `a x <= b`.
    pub fn with_row(&self, a: &[f64], b: f64) -> Result<Polytope> {
        let extra = Polytope::from_rows(&[a.to_vec()], &[b])?;
        self.intersect(&extra)
    }

    /// Largest ball `{c + r u : |u| <= 1}` with `A c + r <= b`, with `r <= cap`.
    ///
    /// Returns `None` when no ball of any (even negative) radius exists, which
    /// only happens for violated all-zero rows.
    fn inscribed_ball(&self, cap: Option<f64>) -> Result<Option<(DVector<f64>, f64)>> {
        let d = self.dim();
        let mut lp = ConicProgram::new();
        let x = lp.add_vars(d);
        let r = lp.add_var();
        for i in 0..self.n_rows() {
            let mut e = row_expr(&self.a, i, &x);
            e.add_term(r, 1.0).add_constant(-self.b[i]);
            lp.add_nonpos(e);
        }
        if let Some(cap) = cap {
            lp.add_nonpos(LinExpr::term(r, 1.0).with_constant(-cap));
        }
        lp.add_objective(&LinExpr::term(r, -1.0));
        let sol = lp.solve()?;
        match sol.status {
            SolveStatus::Optimal => Ok(Some((
                DVector::from_iterator(d, x.iter().map(|&v| sol.value(v))),
                sol.value(r),
            ))),
            SolveStatus::Infeasible => Ok(None),
            SolveStatus::Unbounded => Err(Error::Unbounded),
        }
    }

    /// Largest signed inscribed radius, capped at 1. Negative when empty.
    pub fn interior_margin(&self) -> Result<f64> {
        Ok(self
            .inscribed_ball(Some(EMPTINESS_RADIUS_CAP))?
            .map_or(f64::NEG_INFINITY, |(_, r)| r))
    }

    /// True iff `{x : A x <= b}` has no point (up to `EPS_FEAS`).
    pub fn is_empty(&self) -> Result<bool> {
        Ok(self.interior_margin()? < -EPS_FEAS)
    }

    /// True iff the polytope contains a ball of radius `EPS_INT`.
    pub fn is_full_dimensional(&self) -> Result<bool> {
        self.shrink(EPS_INT).is_empty().map(|e| !e)
    }

    /// Center and radius of the largest inscribed ball.
    pub fn chebyshev_center(&self) -> Result<(DVector<f64>, f64)> {
        if let Some(c) = self.chebyshev.get() {
            return Ok(c.clone());
        }
        let (c, r) = self.inscribed_ball(None)?.ok_or(Error::EmptyPolytope)?;
        if r < -EPS_FEAS {
            return Err(Error::EmptyPolytope);
        }
        let out = (c, r.max(0.0));
        Ok(self.chebyshev.get_or_init(|| out).clone())
    }

    /// `max c^T x` over the polytope; `None` when empty.
    pub fn support(&self, c: &[f64]) -> Result<Option<f64>> {
        let d = self.dim();
        let mut lp = ConicProgram::new();
        let x = lp.add_vars(d);
        for i in 0..self.n_rows() {
            let mut e = row_expr(&self.a, i, &x);
            e.add_constant(-self.b[i]);
            lp.add_nonpos(e);
        }
        let mut obj = LinExpr::new();
        for (v, ci) in x.iter().zip(c) {
            obj.add_term(*v, -ci);
        }
        lp.add_objective(&obj);
        let sol = lp.solve()?;
        match sol.status {
            SolveStatus::Optimal => Ok(Some(-sol.objective)),
            SolveStatus::Infeasible => Ok(None),
            SolveStatus::Unbounded => Err(Error::Unbounded),
        }
    }

    /// Axis-aligned bounding box `(lo, hi)`.
    pub fn bounding_box(&self) -> Result<(Vec<f64>, Vec<f64>)> {
        let d = self.dim();
        let mut lo = vec![0.0; d];
        let mut hi = vec![0.0; d];
        for i in 0..d {
            let mut e = vec![0.0; d];
            e[i] = 1.0;
            hi[i] = self.support(&e)?.ok_or(Error::EmptyPolytope)?;
            e[i] = -1.0;
            lo[i] = -self.support(&e)?.ok_or(Error::EmptyPolytope)?;
        }
        Ok((lo, hi))
    }

    /// Same set with duplicate and redundant rows removed.
    pub fn remove_redundant(&self) -> Result<Polytope> {
        let mut keep: Vec<usize> = Vec::new();
        'rows: for i in 0..self.n_rows() {
            for &j in &keep {
                if rows_equal(&self.a, &self.b, i, j) {
                    continue 'rows;
                }
            }
            keep.push(i);
        }
        let mut k = 0;
        while k < keep.len() {
            let i = keep[k];
            let others: Vec<usize> = keep.iter().copied().filter(|&j| j != i).collect();
            let relaxed = self.select(&others).with_row(
                &self.a.row(i).iter().copied().collect::<Vec<_>>(),
                self.b[i] + 1.0,
            )?;
            let dir: Vec<f64> = self.a.row(i).iter().copied().collect();
            match relaxed.support(&dir)? {
                Some(v) if v <= self.b[i] + EPS_FEAS * 10.0 => {
                    keep.remove(k);
                }
                None => return Err(Error::EmptyPolytope),
                _ => k += 1,
            }
        }
        Ok(self.select(&keep))
    }

    fn select(&self, idx: &[usize]) -> Polytope {
        let d = self.dim();
        let mut a = DMatrix::zeros(idx.len(), d);
        let mut b = DVector::zeros(idx.len());
        for (r, &i) in idx.iter().enumerate() {
            a.row_mut(r).copy_from(&self.a.row(i));
            b[r] = self.b[i];
        }
        Self::from_unit_rows(a, b)
    }
}

fn row_expr(a: &DMatrix<f64>, i: usize, x: &[Var]) -> LinExpr {
    let mut e = LinExpr::new();
    for (j, &v) in x.iter().enumerate() {
        e.add_term(v, a[(i, j)]);
    }
    e
}

fn rows_equal(a: &DMatrix<f64>, b: &DVector<f64>, i: usize, j: usize) -> bool {
    (b[i] - b[j]).abs() <= EPS_HYPERPLANE * (1.0 + b[i].abs())
        && (0..a.ncols()).all(|c| (a[(i, c)] - a[(j, c)]).abs() <= EPS_HYPERPLANE)
}

/// Whether `P ∩ Q` is (d-1)-dimensional.
///
/// Looks for a hyperplane carried by a row of `P` and, with opposite
/// orientation, a row of `Q`, then maximizes the radius of a (d-1)-ball
/// inside `P ∩ Q` restricted to that hyperplane.
pub fn facet_adjacent_geometric(p: &Polytope, q: &Polytope) -> Result<bool> {
    if p.dim() != q.dim() {
        return Err(Error::Dimension("facet test on mixed dimensions".into()));
    }
    if p.intersect(q)?.is_full_dimensional()? {
        return Ok(false);
    }
    let d = p.dim();
    for i in 0..p.n_rows() {
        let n: Vec<f64> = p.a.row(i).iter().copied().collect();
        let g = p.b[i];
        let opposite = (0..q.n_rows()).any(|j| {
            (q.b[j] + g).abs() <= 1e-7 * (1.0 + g.abs())
                && (0..d).all(|c| (q.a[(j, c)] + n[c]).abs() <= 1e-7)
        });
        if !opposite {
            continue;
        }
        let mut lp = ConicProgram::new();
        let x = lp.add_vars(d);
        let r = lp.add_var();
        let mut on_plane = LinExpr::new();
        for (c, &v) in x.iter().enumerate() {
            on_plane.add_term(v, n[c]);
        }
        lp.add_eq(on_plane.with_constant(-g));
        for poly in [p, q] {
            for k in 0..poly.n_rows() {
                let ak: Vec<f64> = poly.a.row(k).iter().copied().collect();
                let dot: f64 = ak.iter().zip(&n).map(|(a, b)| a * b).sum();
                let proj_norm = ak
                    .iter()
                    .zip(&n)
                    .map(|(a, b)| (a - dot * b).powi(2))
                    .sum::<f64>()
                    .sqrt();
                if proj_norm <= 1e-9 {
                    // Parallel to the plane, so constant on it.
                    let mut e = row_expr(&poly.a, k, &x);
                    e.add_constant(-poly.b[k] - EPS_FEAS);
                    lp.add_nonpos(e);
                    continue;
                }
                let mut e = row_expr(&poly.a, k, &x);
                e.add_term(r, proj_norm).add_constant(-poly.b[k]);
                lp.add_nonpos(e);
            }
        }
        lp.add_nonpos(LinExpr::term(r, 1.0).with_constant(-1.0));
        lp.add_objective(&LinExpr::term(r, -1.0));
        let sol = lp.solve()?;
        if sol.status == SolveStatus::Optimal && sol.value(r) > EPS_FACET {
            return Ok(true);
        }
    }
    Ok(false)
}

/// The envelope of `P` and `Q` if `P ∪ Q` is convex, otherwise `None`.
///
/// The envelope keeps the rows of each polytope that the other one satisfies.
/// The union is convex iff the envelope is covered by `P ∪ Q`, i.e. no
/// region of the envelope violates both a dropped row of `P` and a dropped
/// row of `Q`.
pub fn convex_union(p: &Polytope, q: &Polytope) -> Result<Option<Polytope>> {
    if p.dim() != q.dim() {
        return Err(Error::Dimension("union test on mixed dimensions".into()));
    }
    let split = |from: &Polytope, other: &Polytope| -> Result<(Vec<usize>, Vec<usize>)> {
        let mut kept = Vec::new();
        let mut dropped = Vec::new();
        for i in 0..from.n_rows() {
            let (a, b) = from.row(i);
            let s = other.support(&a)?.ok_or(Error::EmptyPolytope)?;
            if s <= b + 1e-7 {
                kept.push(i);
            } else {
                dropped.push(i);
            }
        }
        Ok((kept, dropped))
    };
    let (p_kept, p_dropped) = split(p, q)?;
    let (q_kept, q_dropped) = split(q, p)?;
    let env = p.select(&p_kept).intersect(&q.select(&q_kept))?;
    for &i in &p_dropped {
        let (a, b) = p.row(i);
        let neg_a: Vec<f64> = a.iter().map(|v| -v).collect();
        let outside_p = env.with_row(&neg_a, -b)?;
        for &j in &q_dropped {
            let (c, e) = q.row(j);
            let neg_c: Vec<f64> = c.iter().map(|v| -v).collect();
            let region = outside_p.with_row(&neg_c, -e)?;
            if region.is_full_dimensional()? {
                return Ok(None);
            }
        }
    }
    Ok(Some(env.remove_redundant()?))
}

pub fn union_is_convex(p: &Polytope, q: &Polytope) -> Result<bool> {
    Ok(convex_union(p, q)?.is_some())
}
