//! Small dense front end over the HiGHS simplex solver.
//!
//! Rows are given as dense coefficient vectors; zero entries are dropped
//! before they reach the solver.

use highs::{Col, HighsModelStatus, Model, RowProblem};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Minimize,
    Maximize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bound {
    NonNegative,
    Free,
}

#[derive(Debug, Clone)]
struct Row {
    coeffs: Vec<f64>,
    relation: Relation,
    rhs: f64,
}

/// A linear program over `n` variables, nonnegative unless marked free.
#[derive(Debug, Clone)]
pub struct LinearProgram {
    sense: Sense,
    objective: Vec<f64>,
    bounds: Vec<Bound>,
    rows: Vec<Row>,
}

#[derive(Debug, Clone)]
pub struct LpSolution {
    pub objective: f64,
    pub x: Vec<f64>,
}

impl LinearProgram {
    pub fn new(sense: Sense, objective: Vec<f64>) -> Self {
        let n = objective.len();
        Self {
            sense,
            objective,
            bounds: vec![Bound::NonNegative; n],
            rows: Vec::new(),
        }
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn set_bound(&mut self, var: usize, bound: Bound) {
        self.bounds[var] = bound;
    }

    pub fn set_all_free(&mut self) {
        self.bounds.iter_mut().for_each(|b| *b = Bound::Free);
    }

    pub fn add_constraint(&mut self, coeffs: Vec<f64>, relation: Relation, rhs: f64) {
        assert_eq!(coeffs.len(), self.objective.len(), "constraint width");
        self.rows.push(Row {
            coeffs,
            relation,
            rhs,
        });
    }

    pub fn solve(&self) -> Result<LpSolution> {
        let (model, _) = self.build();
        let (solution, _) = finish(model, &self.objective)?;
        Ok(solution)
    }

    fn build(&self) -> (Model, Vec<Col>) {
        let mut p = RowProblem::default();
        let cols: Vec<_> = self
            .objective
            .iter()
            .zip(&self.bounds)
            .map(|(&c, b)| match b {
                Bound::NonNegative => p.add_column(c, 0.0..),
                Bound::Free => p.add_column(c, ..f64::INFINITY),
            })
            .collect();
        for row in &self.rows {
            let expr = row_expr(row, &cols);
            match row.relation {
                Relation::Le => p.add_row(..=row.rhs, expr),
                Relation::Ge => p.add_row(row.rhs.., expr),
                Relation::Eq => p.add_row(row.rhs..=row.rhs, expr),
            }
        }
        let sense = match self.sense {
            Sense::Minimize => highs::Sense::Minimise,
            Sense::Maximize => highs::Sense::Maximise,
        };
        let mut model = p.optimise(sense);
        model.make_quiet();
        // Presolve reductions blur infeasible vs unbounded; the programs here are small.
        model.set_option("presolve", "off");
        model.set_option("threads", 1);
        model.set_option("primal_feasibility_tolerance", 1e-10);
        model.set_option("dual_feasibility_tolerance", 1e-10);
        (model, cols)
    }
}

fn row_expr(row: &Row, cols: &[Col]) -> Vec<(Col, f64)> {
    row.coeffs
        .iter()
        .zip(cols)
        .filter(|(c, _)| **c != 0.0)
        .map(|(&c, &v)| (v, c))
        .collect()
}

/// Solves `model`; on success also hands the solved model back for further edits.
fn finish(model: Model, objective: &[f64]) -> Result<(LpSolution, Model)> {
    let solved = model
        .try_solve()
        .map_err(|e| Error::InvalidArgument(format!("LP solver failure: {e:?}")))?;
    match solved.status() {
        HighsModelStatus::Optimal => {}
        HighsModelStatus::Infeasible => return Err(Error::Infeasible),
        HighsModelStatus::Unbounded | HighsModelStatus::UnboundedOrInfeasible => {
            return Err(Error::Unbounded)
        }
        other => {
            return Err(Error::InvalidArgument(format!(
                "LP solver stopped with status {other:?}"
            )))
        }
    }
    let x = solved.get_solution().columns().to_vec();
    let objective = objective.iter().zip(&x).map(|(c, v)| c * v).sum();
    Ok((LpSolution { objective, x }, solved.into()))
}

/// A program re-solved as rows are appended. The solver keeps its basis
/// between solves, so each re-solve starts from the previous optimum.
#[derive(Debug)]
pub struct IncrementalProgram {
    lp: LinearProgram,
    model: Option<(Model, Vec<Col>)>,
    /// Rows of `lp` already present in `model`.
    synced: usize,
}

impl IncrementalProgram {
    pub fn new(lp: LinearProgram) -> Self {
        Self {
            lp,
            model: None,
            synced: 0,
        }
    }

    pub fn num_rows(&self) -> usize {
        self.lp.rows.len()
    }

    pub fn add_constraint(&mut self, coeffs: Vec<f64>, relation: Relation, rhs: f64) {
        self.lp.add_constraint(coeffs, relation, rhs);
    }

    /// Drops rows beyond the first `n`; the next solve starts cold.
    pub fn truncate(&mut self, n: usize) {
        self.lp.rows.truncate(n);
        self.model = None;
    }

    pub fn solve(&mut self) -> Result<LpSolution> {
        let (mut model, cols) = match self.model.take() {
            Some(m) => m,
            None => {
                self.synced = self.lp.rows.len();
                self.lp.build()
            }
        };
        for row in &self.lp.rows[self.synced..] {
            let expr = row_expr(row, &cols);
            match row.relation {
                Relation::Le => model.add_row(..=row.rhs, expr),
                Relation::Ge => model.add_row(row.rhs.., expr),
                Relation::Eq => model.add_row(row.rhs..=row.rhs, expr),
            };
        }
        self.synced = self.lp.rows.len();
        let (solution, model) = finish(model, &self.lp.objective)?;
        self.model = Some((model, cols));
        Ok(solution)
    }
}
