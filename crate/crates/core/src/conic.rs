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
//! A small modelling layer over the Clarabel interior-point solver.
//!
//! Programs are built from affine expressions over scalar variables and
//! three cone types: equalities, nonnegative orthants and second-order
//! cones. Everything in the planner (feasibility LPs, Chebyshev balls, the
//! GCS relaxation, path restrictions) is expressed through this layer.

use clarabel::algebra::CscMatrix;
use clarabel::solver::{
    DefaultSettingsBuilder, DefaultSolver, IPSolver, SolverStatus, SupportedConeT,
};
use log::{debug, warn};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var(usize);

impl Var {
    pub fn index(self) -> usize {
        self.0
    }
}

/// Affine expression `sum coef * var + constant`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct LinExpr {
    terms: Vec<(usize, f64)>,
    constant: f64,
}

impl LinExpr {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn constant(c: f64) -> Self {
        Self {
            terms: Vec::new(),
            constant: c,
        }
    }

    pub fn term(var: Var, coef: f64) -> Self {
        Self {
            terms: vec![(var.0, coef)],
            constant: 0.0,
        }
    }

    pub fn add_term(&mut self, var: Var, coef: f64) -> &mut Self {
        if coef != 0.0 {
            self.terms.push((var.0, coef));
        }
        self
    }

    pub fn add_constant(&mut self, c: f64) -> &mut Self {
        self.constant += c;
        self
    }

    pub fn add_expr(&mut self, other: &LinExpr, scale: f64) -> &mut Self {
        self.terms
            .extend(other.terms.iter().map(|&(v, c)| (v, c * scale)));
        self.constant += other.constant * scale;
        self
    }

    pub fn with_term(mut self, var: Var, coef: f64) -> Self {
        self.add_term(var, coef);
        self
    }

    pub fn with_constant(mut self, c: f64) -> Self {
        self.constant += c;
        self
    }

    pub fn negated(mut self) -> Self {
        for t in &mut self.terms {
            t.1 = -t.1;
        }
        self.constant = -self.constant;
        self
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        self.terms.iter().map(|&(v, c)| c * x[v]).sum::<f64>() + self.constant
    }
}

impl From<Var> for LinExpr {
    fn from(v: Var) -> Self {
        LinExpr::term(v, 1.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolveStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Clone, Debug)]
pub struct ConicSolution {
    pub status: SolveStatus,
    pub objective: f64,
    x: Vec<f64>,
}

impl ConicSolution {
    pub fn value(&self, v: Var) -> f64 {
        self.x[v.0]
    }

    pub fn eval(&self, e: &LinExpr) -> f64 {
        e.eval(&self.x)
    }

    pub fn values(&self) -> &[f64] {
        &self.x
    }

    pub fn is_optimal(&self) -> bool {
        self.status == SolveStatus::Optimal
    }
}

/// Minimize a linear objective over equality, nonnegativity and
/// second-order-cone constraints.
#[derive(Clone, Debug, Default)]
pub struct ConicProgram {
    n_vars: usize,
    objective: LinExpr,
    eq: Vec<LinExpr>,
    nonneg: Vec<LinExpr>,
    soc: Vec<Vec<LinExpr>>,
}

impl ConicProgram {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_var(&mut self) -> Var {
        self.n_vars += 1;
        Var(self.n_vars - 1)
    }

    pub fn add_vars(&mut self, n: usize) -> Vec<Var> {
        (0..n).map(|_| self.add_var()).collect()
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn n_rows(&self) -> usize {
        self.eq.len() + self.nonneg.len() + self.soc.iter().map(Vec::len).sum::<usize>()
    }

    /// `expr == 0`
    pub fn add_eq(&mut self, expr: LinExpr) {
        self.eq.push(expr);
    }

    /// `expr >= 0`
    pub fn add_nonneg(&mut self, expr: LinExpr) {
        self.nonneg.push(expr);
    }

    /// `expr <= 0`
    pub fn add_nonpos(&mut self, expr: LinExpr) {
        self.nonneg.push(expr.negated());
    }

    /// `exprs[0] >= || exprs[1..] ||_2`
    pub fn add_soc(&mut self, exprs: Vec<LinExpr>) {
        assert!(!exprs.is_empty(), "second-order cone needs at least one row");
        self.soc.push(exprs);
    }

    pub fn add_objective(&mut self, expr: &LinExpr) {
        self.objective.add_expr(expr, 1.0);
    }

    pub fn solve(&self) -> Result<ConicSolution> {
        let n = self.n_vars;
        let mut q = vec![0.0; n];
        for &(v, c) in &self.objective.terms {
            q[v] += c;
        }

        let mut rows = Vec::new();
        let mut cols = Vec::new();
        let mut vals = Vec::new();
        let mut b = Vec::with_capacity(self.n_rows());
        let mut cones = Vec::new();

        // Clarabel form: A x + s = b with s in the cone.
        let mut push = |e: &LinExpr, sign: f64, b: &mut Vec<f64>| {
            let r = b.len();
            for &(v, c) in &e.terms {
                rows.push(r);
                cols.push(v);
                vals.push(sign * c);
            }
            b.push(-sign * e.constant);
        };
        for e in &self.eq {
            push(e, 1.0, &mut b);
        }
        if !self.eq.is_empty() {
            cones.push(SupportedConeT::ZeroConeT(self.eq.len()));
        }
        for e in &self.nonneg {
            push(e, -1.0, &mut b);
        }
        if !self.nonneg.is_empty() {
            cones.push(SupportedConeT::NonnegativeConeT(self.nonneg.len()));
        }
        for block in &self.soc {
            for e in block {
                push(e, -1.0, &mut b);
            }
            cones.push(SupportedConeT::SecondOrderConeT(block.len()));
        }

        let m = b.len();
        let a = CscMatrix::new_from_triplets(m, n, rows, cols, vals);
        let p = CscMatrix::zeros((n, n));
        let settings = DefaultSettingsBuilder::default()
            .verbose(false)
            .max_iter(200)
            .presolve_enable(true)
            .build()
            .map_err(|e| Error::SolverFailure(format!("settings: {e}")))?;
        let mut solver = DefaultSolver::new(&p, &q, &a, &b, &cones, settings)
            .map_err(|e| Error::SolverFailure(format!("setup: {e}")))?;
        solver.solve();
        let sol = &solver.solution;
        debug!(
            "conic solve: {} vars, {} rows, status {:?}, {} iterations, {:.3}s",
            n, m, sol.status, sol.iterations, sol.solve_time
        );

        let status = match sol.status {
            SolverStatus::Solved => SolveStatus::Optimal,
            SolverStatus::AlmostSolved => {
                warn!("conic solve returned reduced accuracy solution");
                SolveStatus::Optimal
            }
            SolverStatus::PrimalInfeasible | SolverStatus::AlmostPrimalInfeasible => {
                SolveStatus::Infeasible
            }
            SolverStatus::DualInfeasible | SolverStatus::AlmostDualInfeasible => {
                SolveStatus::Unbounded
            }
            SolverStatus::InsufficientProgress | SolverStatus::MaxIterations
                if sol.r_prim < 1e-6 && sol.r_dual < 1e-6 =>
            {
                warn!("conic solve stalled at {:?}; accepting near-feasible point", sol.status);
                SolveStatus::Optimal
            }
            other => return Err(Error::SolverFailure(format!("{other:?}"))),
        };
        Ok(ConicSolution {
            status,
            objective: sol.obj_val + self.objective.constant,
            x: sol.x.clone(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn small_lp() {
        // max x + y  s.t. x + 2y <= 4, 3x + y <= 6, x, y >= 0
        let mut p = ConicProgram::new();
        let x = p.add_var();
        let y = p.add_var();
        p.add_nonpos(LinExpr::new().with_term(x, 1.0).with_term(y, 2.0).with_constant(-4.0));
        p.add_nonpos(LinExpr::new().with_term(x, 3.0).with_term(y, 1.0).with_constant(-6.0));
        p.add_nonneg(x.into());
        p.add_nonneg(y.into());
        p.add_objective(&LinExpr::new().with_term(x, -1.0).with_term(y, -1.0));
        let s = p.solve().unwrap();
        assert_eq!(s.status, SolveStatus::Optimal);
        assert_abs_diff_eq!(s.value(x), 1.6, epsilon = 1e-6);
        assert_abs_diff_eq!(s.value(y), 1.2, epsilon = 1e-6);
        assert_abs_diff_eq!(s.objective, -2.8, epsilon = 1e-6);
    }

    #[test]
    fn soc_distance() {
        // min t s.t. t >= ||(x - 3, y - 4)||, x = 0, y = 0
        let mut p = ConicProgram::new();
        let t = p.add_var();
        let x = p.add_var();
        let y = p.add_var();
        p.add_eq(x.into());
        p.add_eq(y.into());
        p.add_soc(vec![
            t.into(),
            LinExpr::term(x, 1.0).with_constant(-3.0),
            LinExpr::term(y, 1.0).with_constant(-4.0),
        ]);
        p.add_objective(&t.into());
        let s = p.solve().unwrap();
        assert_abs_diff_eq!(s.objective, 5.0, epsilon = 1e-6);
    }

    #[test]
    fn infeasible_and_unbounded() {
        let mut p = ConicProgram::new();
        let x = p.add_var();
        p.add_nonneg(LinExpr::term(x, 1.0).with_constant(-2.0));
        p.add_nonpos(LinExpr::term(x, 1.0).with_constant(-1.0));
        assert_eq!(p.solve().unwrap().status, SolveStatus::Infeasible);

        let mut p = ConicProgram::new();
        let x = p.add_var();
        p.add_objective(&x.into());
        assert_eq!(p.solve().unwrap().status, SolveStatus::Unbounded);
    }
}
