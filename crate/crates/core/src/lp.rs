//! Exact rational linear programming.
//!
//! A dense two-phase tableau simplex over [`Rational`] with Bland's rule, so it
//! terminates on degenerate programs. Free variables are split into differences
//! of nonnegative columns.

use num::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub relation: Relation,
    pub rhs: Rational,
}

/// `maximize <objective, x>` subject to the constraints, with the flagged
/// variables restricted to be nonnegative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearProgram {
    pub num_vars: usize,
    pub objective: Vec<Rational>,
    pub constraints: Vec<Constraint>,
    pub nonneg: Vec<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal {
        value: Rational,
        witness: Vec<Rational>,
    },
    Infeasible,
    /// The objective grows without bound along `ray` from some feasible point.
    Unbounded { ray: Vec<Rational> },
}

impl LpOutcome {
    pub fn value(&self) -> Option<&Rational> {
        match self {
            LpOutcome::Optimal { value, .. } => Some(value),
            _ => None,
        }
    }
}

impl LinearProgram {
    /// A program with all variables free and a zero objective.
    pub fn new(num_vars: usize) -> Self {
        LinearProgram {
            num_vars,
            objective: vec![Rational::zero(); num_vars],
            constraints: Vec::new(),
            nonneg: vec![false; num_vars],
        }
    }

    pub fn maximize(mut self, objective: Vec<Rational>) -> Self {
        self.objective = objective;
        self
    }

    pub fn constrain(mut self, coeffs: Vec<Rational>, relation: Relation, rhs: Rational) -> Self {
        self.constraints.push(Constraint {
            coeffs,
            relation,
            rhs,
        });
        self
    }

    pub fn nonnegative(mut self, var: usize) -> Self {
        self.nonneg[var] = true;
        self
    }

    pub fn all_nonnegative(mut self) -> Self {
        self.nonneg.iter_mut().for_each(|b| *b = true);
        self
    }

    fn validate(&self) -> Result<()> {
        let malformed = |msg: String| Err(Error::MalformedProgram(msg));
        if self.num_vars == 0 {
            return malformed("no variables".into());
        }
        if self.constraints.is_empty() {
            return malformed("no constraints".into());
        }
        if self.objective.len() != self.num_vars {
            return malformed(format!(
                "objective has {} entries for {} variables",
                self.objective.len(),
                self.num_vars
            ));
        }
        if self.nonneg.len() != self.num_vars {
            return malformed("nonnegativity flags have the wrong length".into());
        }
        if let Some(i) = self
            .constraints
            .iter()
            .position(|c| c.coeffs.len() != self.num_vars)
        {
            return malformed(format!("constraint {i} has the wrong length"));
        }
        Ok(())
    }

    /// Checks every constraint and sign restriction at `x` exactly.
    pub fn is_feasible(&self, x: &[Rational]) -> bool {
        x.len() == self.num_vars
            && x.iter().zip(&self.nonneg).all(|(v, &nn)| !nn || !v.is_negative())
            && self.constraints.iter().all(|c| {
                let lhs = dot(&c.coeffs, x);
                match c.relation {
                    Relation::Le => lhs <= c.rhs,
                    Relation::Ge => lhs >= c.rhs,
                    Relation::Eq => lhs == c.rhs,
                }
            })
    }

    pub fn objective_at(&self, x: &[Rational]) -> Rational {
        dot(&self.objective, x)
    }
}

pub(crate) fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

/// Solves `lp` exactly.
pub fn solve(lp: &LinearProgram) -> Result<LpOutcome> {
    lp.validate()?;
    let mut tableau = Tableau::build(lp);

    let phase_one_cost: Vec<Rational> = (0..tableau.num_cols)
        .map(|j| {
            if j >= tableau.first_artificial {
                -Rational::one()
            } else {
                Rational::zero()
            }
        })
        .collect();
    let all_cols = tableau.num_cols;
    if tableau.optimize(&phase_one_cost, all_cols).is_err() {
        unreachable!("phase one is bounded by zero");
    }
    if tableau.objective_value(&phase_one_cost).is_negative() {
        return Ok(LpOutcome::Infeasible);
    }
    tableau.expel_artificials();

    let mut cost = vec![Rational::zero(); tableau.num_cols];
    for (var, cols) in tableau.var_cols.iter().enumerate() {
        cost[cols.0] = lp.objective[var].clone();
        if let Some(minus) = cols.1 {
            cost[minus] = -lp.objective[var].clone();
        }
    }
    let structural = tableau.first_artificial;
    match tableau.optimize(&cost, structural) {
        Ok(()) => {
            let column_values = tableau.column_values();
            let witness = tableau.to_original(&column_values);
            let value = lp.objective_at(&witness);
            debug_assert!(lp.is_feasible(&witness));
            Ok(LpOutcome::Optimal { value, witness })
        }
        Err(entering) => {
            let mut direction = vec![Rational::zero(); tableau.num_cols];
            direction[entering] = Rational::one();
            for (row, &b) in tableau.basis.iter().enumerate() {
                direction[b] = -tableau.rows[row][entering].clone();
            }
            Ok(LpOutcome::Unbounded {
                ray: tableau.to_original(&direction),
            })
        }
    }
}

struct Tableau {
    /// Each row holds `num_cols` coefficients followed by the right-hand side.
    rows: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    num_cols: usize,
    first_artificial: usize,
    /// Column of each original variable, and its negative part if free.
    var_cols: Vec<(usize, Option<usize>)>,
}

impl Tableau {
    fn build(lp: &LinearProgram) -> Self {
        let mut var_cols = Vec::with_capacity(lp.num_vars);
        let mut col = 0;
        for &nn in &lp.nonneg {
            if nn {
                var_cols.push((col, None));
                col += 1;
            } else {
                var_cols.push((col, Some(col + 1)));
                col += 2;
            }
        }
        let num_slacks = lp
            .constraints
            .iter()
            .filter(|c| c.relation != Relation::Eq)
            .count();
        let first_slack = col;
        let first_artificial = first_slack + num_slacks;
        let m = lp.constraints.len();
        let num_cols = first_artificial + m;

        let mut rows = Vec::with_capacity(m);
        let mut slack = first_slack;
        for (i, c) in lp.constraints.iter().enumerate() {
            let mut row = vec![Rational::zero(); num_cols + 1];
            for (var, a) in c.coeffs.iter().enumerate() {
                let (plus, minus) = var_cols[var];
                row[plus] = a.clone();
                if let Some(minus) = minus {
                    row[minus] = -a.clone();
                }
            }
            match c.relation {
                Relation::Le => {
                    row[slack] = Rational::one();
                    slack += 1;
                }
                Relation::Ge => {
                    row[slack] = -Rational::one();
                    slack += 1;
                }
                Relation::Eq => {}
            }
            row[num_cols] = c.rhs.clone();
            if row[num_cols].is_negative() {
                row.iter_mut().for_each(|x| *x = -x.clone());
            }
            row[first_artificial + i] = Rational::one();
            rows.push(row);
        }
        Tableau {
            rows,
            basis: (first_artificial..num_cols).collect(),
            num_cols,
            first_artificial,
            var_cols,
        }
    }

    fn objective_value(&self, cost: &[Rational]) -> Rational {
        self.basis
            .iter()
            .zip(&self.rows)
            .fold(Rational::zero(), |acc, (&b, row)| acc + &cost[b] * &row[self.num_cols])
    }

    /// Maximizes `cost` over columns `< allowed`; `Err(col)` when column `col`
    /// can increase without bound.
    fn optimize(&mut self, cost: &[Rational], allowed: usize) -> std::result::Result<(), usize> {
        loop {
            let entering = (0..allowed).find(|&j| {
                !self.basis.contains(&j) && self.reduced_cost(cost, j).is_positive()
            });
            let Some(j) = entering else {
                return Ok(());
            };
            let mut leave: Option<(usize, Rational)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if !row[j].is_positive() {
                    continue;
                }
                let ratio = &row[self.num_cols] / &row[j];
                let better = match &leave {
                    None => true,
                    Some((best, best_ratio)) => {
                        ratio < *best_ratio
                            || (ratio == *best_ratio && self.basis[i] < self.basis[*best])
                    }
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            match leave {
                Some((i, _)) => self.pivot(i, j),
                None => return Err(j),
            }
        }
    }

    fn reduced_cost(&self, cost: &[Rational], j: usize) -> Rational {
        self.basis
            .iter()
            .zip(&self.rows)
            .fold(cost[j].clone(), |acc, (&b, row)| acc - &cost[b] * &row[j])
    }

    fn pivot(&mut self, pivot_row: usize, col: usize) {
        let inv = self.rows[pivot_row][col].recip();
        for x in self.rows[pivot_row].iter_mut() {
            *x *= &inv;
        }
        let pivot = self.rows[pivot_row].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == pivot_row || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (x, p) in row.iter_mut().zip(&pivot) {
                if !p.is_zero() {
                    *x -= &factor * p;
                }
            }
        }
        self.basis[pivot_row] = col;
    }

    /// After a feasible phase one, pivots zero-valued artificials out of the
    /// basis and drops rows that turn out to be redundant.
    fn expel_artificials(&mut self) {
        let mut i = 0;
        while i < self.rows.len() {
            if self.basis[i] < self.first_artificial {
                i += 1;
                continue;
            }
            match (0..self.first_artificial).find(|&j| !self.rows[i][j].is_zero()) {
                Some(j) => {
                    self.pivot(i, j);
                    i += 1;
                }
                None => {
                    self.rows.remove(i);
                    self.basis.remove(i);
                }
            }
        }
    }

    fn column_values(&self) -> Vec<Rational> {
        let mut values = vec![Rational::zero(); self.num_cols];
        for (row, &b) in self.rows.iter().zip(&self.basis) {
            values[b] = row[self.num_cols].clone();
        }
        values
    }

    fn to_original(&self, columns: &[Rational]) -> Vec<Rational> {
        self.var_cols
            .iter()
            .map(|&(plus, minus)| match minus {
                Some(minus) => &columns[plus] - &columns[minus],
                None => columns[plus].clone(),
            })
            .collect()
    }
}
