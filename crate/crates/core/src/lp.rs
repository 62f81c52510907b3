//! Exact rational simplex for `max c x  s.t.  A x <= b, x >= 0` with `b >= 0`.
//!
//! Dense tableau, slack basis as the starting vertex, Bland's rule for both
//! the entering and the leaving variable (so it always terminates). The
//! returned `x` is a basic optimum, which is what makes totally unimodular
//! systems come back integral.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Clone, Debug, Default)]
pub struct LinearProgram {
    num_vars: usize,
    objective: Vec<Rational>,
    rows: Vec<Vec<(usize, Rational)>>,
    rhs: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LpSolution {
    pub x: Vec<Rational>,
    pub value: Rational,
    /// Optimal dual: one price per constraint, `y >= 0`, `A^T y >= c`,
    /// `b y = value`.
    pub y: Vec<Rational>,
}

impl LinearProgram {
    /// Maximise the sum of `num_vars` variables.
    pub fn max_sum(num_vars: usize) -> LinearProgram {
        LinearProgram {
            num_vars,
            objective: vec![Rational::one(); num_vars],
            rows: Vec::new(),
            rhs: Vec::new(),
        }
    }

    pub fn with_objective(objective: Vec<Rational>) -> LinearProgram {
        LinearProgram {
            num_vars: objective.len(),
            objective,
            rows: Vec::new(),
            rhs: Vec::new(),
        }
    }

    /// Adds `sum coeff * x_var <= rhs`. Repeated variables are summed.
    pub fn add_constraint(&mut self, coeffs: Vec<(usize, Rational)>, rhs: Rational) {
        self.rows.push(coeffs);
        self.rhs.push(rhs);
    }

    /// Adds a 0/1 row over `vars`.
    pub fn add_indicator_row(&mut self, vars: impl IntoIterator<Item = usize>, rhs: Rational) {
        self.add_constraint(vars.into_iter().map(|v| (v, Rational::one())).collect(), rhs);
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn num_constraints(&self) -> usize {
        self.rows.len()
    }

    pub fn objective(&self) -> &[Rational] {
        &self.objective
    }

    pub fn rhs(&self) -> &[Rational] {
        &self.rhs
    }

    /// Dense row `i`.
    pub fn row(&self, i: usize) -> Vec<Rational> {
        let mut dense = vec![Rational::zero(); self.num_vars];
        for (j, a) in &self.rows[i] {
            dense[*j] += a;
        }
        dense
    }

    pub fn solve_max(&self) -> Result<LpSolution> {
        let m = self.rows.len();
        let n = self.num_vars;
        if let Some(i) = self.rhs.iter().position(|b| b.is_negative()) {
            return Err(Error::BadParameter(format!(
                "constraint {i} has a negative right-hand side"
            )));
        }
        for row in &self.rows {
            if let Some((j, _)) = row.iter().find(|(j, _)| *j >= n) {
                return Err(Error::BadParameter(format!("variable {j} out of range")));
            }
        }

        let width = n + m;
        let mut tableau: Vec<Vec<Rational>> = (0..m)
            .map(|i| {
                let mut row = self.row(i);
                row.resize(width, Rational::zero());
                row[n + i] = Rational::one();
                row
            })
            .collect();
        let mut rhs = self.rhs.clone();
        let mut basis: Vec<usize> = (n..n + m).collect();
        let mut reduced: Vec<Rational> = self.objective.clone();
        reduced.resize(width, Rational::zero());
        let mut value = Rational::zero();

        while let Some(q) = reduced.iter().position(|r| r.is_positive()) {
            let mut leave: Option<(usize, Rational)> = None;
            for i in 0..m {
                let a = &tableau[i][q];
                if !a.is_positive() {
                    continue;
                }
                let ratio = &rhs[i] / a;
                let better = match &leave {
                    None => true,
                    Some((p, best)) => ratio < *best || (ratio == *best && basis[i] < basis[*p]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            let Some((p, _)) = leave else {
                return Err(Error::Unbounded);
            };

            let pivot = tableau[p][q].clone();
            if !pivot.is_one() {
                for a in tableau[p].iter_mut() {
                    if !a.is_zero() {
                        *a /= &pivot;
                    }
                }
                rhs[p] /= &pivot;
            }
            let support: Vec<usize> = (0..width).filter(|&j| !tableau[p][j].is_zero()).collect();
            let pivot_row = tableau[p].clone();
            let pivot_rhs = rhs[p].clone();
            for i in 0..m {
                if i == p || tableau[i][q].is_zero() {
                    continue;
                }
                let factor = tableau[i][q].clone();
                for &j in &support {
                    let delta = &factor * &pivot_row[j];
                    tableau[i][j] -= delta;
                }
                rhs[i] -= &factor * &pivot_rhs;
            }
            let factor = reduced[q].clone();
            for &j in &support {
                let delta = &factor * &pivot_row[j];
                reduced[j] -= delta;
            }
            value += &factor * &pivot_rhs;
            basis[p] = q;
        }

        let mut x = vec![Rational::zero(); n];
        for (i, &var) in basis.iter().enumerate() {
            if var < n {
                x[var] = rhs[i].clone();
            }
        }
        let y: Vec<Rational> = (0..m).map(|i| -reduced[n + i].clone()).collect();
        Ok(LpSolution { x, value, y })
    }
}

impl LpSolution {
    /// Checks primal feasibility, dual feasibility and equal objective values.
    pub fn certifies(&self, lp: &LinearProgram) -> bool {
        if self.x.len() != lp.num_vars() || self.y.len() != lp.num_constraints() {
            return false;
        }
        if self.x.iter().chain(&self.y).any(|v| v.is_negative()) {
            return false;
        }
        let mut column_sums = vec![Rational::zero(); lp.num_vars()];
        for i in 0..lp.num_constraints() {
            let row = lp.row(i);
            let lhs: Rational = row.iter().zip(&self.x).map(|(a, x)| a * x).sum();
            if lhs > lp.rhs()[i] {
                return false;
            }
            for (j, a) in row.iter().enumerate() {
                column_sums[j] += a * &self.y[i];
            }
        }
        if column_sums.iter().zip(lp.objective()).any(|(s, c)| s < c) {
            return false;
        }
        let primal: Rational = self.x.iter().zip(lp.objective()).map(|(x, c)| x * c).sum();
        let dual: Rational = self.y.iter().zip(lp.rhs()).map(|(y, b)| y * b).sum();
        primal == self.value && dual == self.value
    }
}
