//! Dense two-phase primal simplex with Bland's anti-cycling rule, generic
//! over an ordered field. Instantiated at `f64` for speed and at
//! `BigRational` for exact pivoting and exact certificates. Problem sizes in
//! this crate stay below ~70 rows × ~140 columns, so a dense explicit-inverse
//! tableau is both robust and fast.

use crate::scalar::LpScalar;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Sense {
    Maximize,
    Minimize,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum VarBound {
    NonNeg,
    Free,
}

#[derive(Clone, Debug)]
pub struct LpProblem<S> {
    pub sense: Sense,
    pub objective: Vec<S>,
    pub rows: Vec<(Vec<S>, Relation, S)>,
    pub bounds: Vec<VarBound>,
}

#[derive(Clone, Debug)]
pub struct LpSolution<S> {
    pub value: S,
    pub x: Vec<S>,
    /// Row multipliers of the final basis (sign convention: for every
    /// feasible x, `Σᵢ duals[i]·(rowᵢ·x)` bounds the objective; see
    /// `verify_complementary_slackness`).
    pub duals: Vec<S>,
    /// |primal − dual| as f64 (identically zero in exact arithmetic).
    pub gap: f64,
    pub pivots: usize,
}

#[derive(Clone, Debug)]
pub enum LpOutcome<S> {
    Optimal(LpSolution<S>),
    /// Farkas-type certificate: multipliers λ over the original rows with
    /// λᵢ ≥ 0 for ≥-rows, λᵢ ≤ 0 for ≤-rows, free for =-rows, such that
    /// λᵀA ≤ 0 on nonnegative variables, λᵀA = 0 on free variables, and
    /// λᵀb > 0 — jointly refuting feasibility.
    Infeasible { farkas: Vec<S> },
    /// Unbounded improving ray in the original variables.
    Unbounded { ray: Vec<S> },
}

struct Standard<S> {
    cols: Vec<Vec<S>>, // columns over the (possibly sign-flipped) rows
    b: Vec<S>,
    cost: Vec<S>,
    /// map back: std column -> (original var, sign) or None for slack
    origin: Vec<Option<(usize, bool)>>,
    row_flip: Vec<bool>,
    negated_obj: bool,
}

fn to_standard<S: LpScalar>(p: &LpProblem<S>) -> Standard<S> {
    let m = p.rows.len();
    let negated_obj = p.sense == Sense::Maximize;
    let row_flip: Vec<bool> = p.rows.iter().map(|(_, _, b)| *b < S::zero()).collect();
    let mut cols: Vec<Vec<S>> = Vec::new();
    let mut cost: Vec<S> = Vec::new();
    let mut origin: Vec<Option<(usize, bool)>> = Vec::new();

    let flipped = |j: usize| -> Vec<S> {
        (0..m)
            .map(|i| {
                let v = p.rows[i].0[j].clone();
                if row_flip[i] {
                    -v
                } else {
                    v
                }
            })
            .collect()
    };

    for (j, bound) in p.bounds.iter().enumerate() {
        let col = flipped(j);
        let c = if negated_obj { -p.objective[j].clone() } else { p.objective[j].clone() };
        cols.push(col.clone());
        cost.push(c.clone());
        origin.push(Some((j, true)));
        if *bound == VarBound::Free {
            cols.push(col.iter().map(|v| -v.clone()).collect());
            cost.push(-c);
            origin.push(Some((j, false)));
        }
    }
    for (i, (_, rel, _)) in p.rows.iter().enumerate() {
        let slack_sign = match rel {
            Relation::Le => Some(S::one()),
            Relation::Ge => Some(-S::one()),
            Relation::Eq => None,
        };
        if let Some(s) = slack_sign {
            let s = if row_flip[i] { -s } else { s };
            let mut col = vec![S::zero(); m];
            col[i] = s;
            cols.push(col);
            cost.push(S::zero());
            origin.push(None);
        }
    }
    let b = p
        .rows
        .iter()
        .zip(&row_flip)
        .map(|((_, _, b), f)| if *f { -b.clone() } else { b.clone() })
        .collect();
    Standard { cols, b, cost, origin, row_flip, negated_obj }
}

struct Tableau<S> {
    m: usize,
    binv: Vec<Vec<S>>, // B⁻¹, m×m
    xb: Vec<S>,
    basis: Vec<usize>, // n_std..n_std+m are artificials
}

impl<S: LpScalar> Tableau<S> {
    fn new(b: &[S]) -> Self {
        let m = b.len();
        let binv = (0..m)
            .map(|i| {
                let mut r = vec![S::zero(); m];
                r[i] = S::one();
                r
            })
            .collect();
        Self { m, binv, xb: b.to_vec(), basis: Vec::new() }
    }

    fn apply_binv(&self, col: &[S]) -> Vec<S> {
        (0..self.m)
            .map(|i| {
                let mut s = S::zero();
                for k in 0..self.m {
                    if !self.binv[i][k].is_zero() && !col[k].is_zero() {
                        s = s + self.binv[i][k].clone() * col[k].clone();
                    }
                }
                s
            })
            .collect()
    }

    fn pivot(&mut self, row: usize, entering: usize, dir: &[S]) {
        let piv = dir[row].clone();
        for k in 0..self.m {
            self.binv[row][k] = self.binv[row][k].clone() / piv.clone();
        }
        self.xb[row] = self.xb[row].clone() / piv.clone();
        for i in 0..self.m {
            if i == row || dir[i].is_zero() {
                continue;
            }
            let f = dir[i].clone();
            for k in 0..self.m {
                let delta = f.clone() * self.binv[row][k].clone();
                self.binv[i][k] = self.binv[i][k].clone() - delta;
            }
            let delta = f * self.xb[row].clone();
            self.xb[i] = self.xb[i].clone() - delta;
        }
        self.basis[row] = entering;
    }
}

/// Runs Bland-rule simplex on the standard form with the given costs.
/// `allowed` marks columns eligible to enter. Returns `Err(ray_col)` when
/// unbounded (the entering column with no blocking row).
fn run<S: LpScalar>(
    tab: &mut Tableau<S>,
    cols: &[Vec<S>],
    cost_of: &dyn Fn(usize) -> S,
    allowed: &dyn Fn(usize) -> bool,
    n_std: usize,
    pivots: &mut usize,
) -> Result<(), (usize, Vec<S>)> {
    let tol = S::pivot_tol();
    loop {
        // y = c_B B⁻¹
        let mut y = vec![S::zero(); tab.m];
        for (i, &bi) in tab.basis.iter().enumerate() {
            let cb = cost_of(bi);
            if cb.is_zero() {
                continue;
            }
            for k in 0..tab.m {
                let delta = cb.clone() * tab.binv[i][k].clone();
                y[k] = y[k].clone() + delta;
            }
        }
        // Bland entering: smallest index with reduced cost < -tol
        let mut entering = None;
        for j in 0..n_std {
            if !allowed(j) || tab.basis.contains(&j) {
                continue;
            }
            let mut ya = S::zero();
            for k in 0..tab.m {
                if !cols[j][k].is_zero() && !y[k].is_zero() {
                    ya = ya + y[k].clone() * cols[j][k].clone();
                }
            }
            let red = cost_of(j) - ya;
            if red < -tol.clone() {
                entering = Some(j);
                break;
            }
        }
        let Some(j) = entering else {
            return Ok(());
        };
        let dir = tab.apply_binv(&cols[j]);
        // Ratio test. Artificials already at zero stay pinned there: any
        // movement in their row forces a degenerate pivot that ejects them.
        let mut best: Option<(S, usize, usize)> = None; // (ratio, basis var, row)
        for r in 0..tab.m {
            let pinned = tab.basis[r] >= n_std && tab.xb[r].clone().abs() <= tol.clone();
            let d = &dir[r];
            let candidate = if pinned && (d.clone().abs() > tol.clone()) {
                Some(S::zero())
            } else if *d > tol.clone() {
                Some(tab.xb[r].clone() / d.clone())
            } else {
                None
            };
            if let Some(ratio) = candidate {
                let replace = match &best {
                    None => true,
                    Some((br, bv, _)) => {
                        ratio < br.clone() - tol.clone()
                            || (ratio <= br.clone() + tol.clone() && tab.basis[r] < *bv)
                    }
                };
                if replace {
                    best = Some((ratio, tab.basis[r], r));
                }
            }
        }
        let Some((_, _, row)) = best else {
            return Err((j, dir));
        };
        tab.pivot(row, j, &dir);
        *pivots += 1;
        if *pivots > 200_000 {
            panic!("simplex pivot limit exceeded; Bland's rule should prevent cycling");
        }
    }
}

pub fn solve<S: LpScalar>(p: &LpProblem<S>) -> LpOutcome<S> {
    let m = p.rows.len();
    let n_orig = p.bounds.len();
    assert_eq!(p.objective.len(), n_orig);
    for (row, _, _) in &p.rows {
        assert_eq!(row.len(), n_orig);
    }
    let std = to_standard(p);
    let n_std = std.cols.len();
    let tol = S::pivot_tol();

    let mut tab = Tableau::new(&std.b);
    tab.basis = (n_std..n_std + m).collect();
    let mut pivots = 0usize;

    // Phase I: minimize the sum of artificials (cost 1 each).
    let phase1_cost = |j: usize| if j >= n_std { S::one() } else { S::zero() };
    let res = run(&mut tab, &std.cols, &phase1_cost, &|_| true, n_std, &mut pivots);
    debug_assert!(res.is_ok(), "phase I cannot be unbounded");
    let infeas: S = tab
        .basis
        .iter()
        .enumerate()
        .filter(|(_, &b)| b >= n_std)
        .map(|(i, _)| tab.xb[i].clone())
        .fold(S::zero(), |a, b| a + b);
    if infeas > tol.clone() + tol.clone() {
        // Farkas: y from the phase-I optimum, mapped through row flips.
        let mut y = vec![S::zero(); m];
        for (i, &bi) in tab.basis.iter().enumerate() {
            if bi >= n_std {
                for k in 0..m {
                    y[k] = y[k].clone() + tab.binv[i][k].clone();
                }
            }
        }
        let farkas = y
            .iter()
            .zip(&std.row_flip)
            .map(|(v, f)| if *f { -v.clone() } else { v.clone() })
            .collect();
        return LpOutcome::Infeasible { farkas };
    }

    // Drive remaining zero-level artificials out where possible.
    for r in 0..m {
        if tab.basis[r] < n_std {
            continue;
        }
        for j in 0..n_std {
            if tab.basis.contains(&j) {
                continue;
            }
            let dir = tab.apply_binv(&std.cols[j]);
            if dir[r].clone().abs() > tol.clone() {
                tab.pivot(r, j, &dir);
                pivots += 1;
                break;
            }
        }
    }

    // Phase II.
    let cost2 = |j: usize| if j >= n_std { S::zero() } else { std.cost[j].clone() };
    match run(&mut tab, &std.cols, &cost2, &|j| j < n_std, n_std, &mut pivots) {
        Ok(()) => {}
        Err((jcol, dir)) => {
            // improving ray: entering column direction mapped to original vars
            let mut ray = vec![S::zero(); n_orig];
            if let Some((var, pos)) = std.origin[jcol] {
                ray[var] = if pos { S::one() } else { -S::one() };
            }
            for (r, &bi) in tab.basis.iter().enumerate() {
                if bi < n_std {
                    if let Some((var, pos)) = std.origin[bi] {
                        let delta = if pos { -dir[r].clone() } else { dir[r].clone() };
                        ray[var] = ray[var].clone() + delta;
                    }
                }
            }
            return LpOutcome::Unbounded { ray };
        }
    }

    // Extract primal solution.
    let mut x = vec![S::zero(); n_orig];
    for (r, &bi) in tab.basis.iter().enumerate() {
        if bi < n_std {
            if let Some((var, pos)) = std.origin[bi] {
                let v = tab.xb[r].clone();
                x[var] = x[var].clone() + if pos { v } else { -v };
            }
        }
    }
    let mut value = S::zero();
    for j in 0..n_orig {
        value = value + p.objective[j].clone() * x[j].clone();
    }

    // Duals y = c_B B⁻¹ in the internal (minimization, flipped-row) frame.
    let mut y = vec![S::zero(); m];
    for (i, &bi) in tab.basis.iter().enumerate() {
        let cb = cost2(bi);
        if cb.is_zero() {
            continue;
        }
        for k in 0..m {
            let delta = cb.clone() * tab.binv[i][k].clone();
            y[k] = y[k].clone() + delta;
        }
    }
    // Undo row flips and objective negation so duals refer to original rows.
    let duals: Vec<S> = y
        .iter()
        .zip(&std.row_flip)
        .map(|(v, f)| {
            let v = if *f { -v.clone() } else { v.clone() };
            if std.negated_obj {
                -v
            } else {
                v
            }
        })
        .collect();
    // dual objective = Σ duals_i · b_i
    let mut dual_value = S::zero();
    for (i, (_, _, b)) in p.rows.iter().enumerate() {
        dual_value = dual_value + duals[i].clone() * b.clone();
    }
    let gap = (LpScalar::to_f64(&value) - LpScalar::to_f64(&dual_value)).abs();

    LpOutcome::Optimal(LpSolution { value, x, duals, gap, pivots })
}

/// Checks complementary slackness and dual feasibility of an optimal pair at
/// the given tolerance; used by the geometry tests and certificate paths.
pub fn verify_complementary_slackness<S: LpScalar>(
    p: &LpProblem<S>,
    sol: &LpSolution<S>,
    tol: f64,
) -> bool {
    // primal feasibility
    for (i, (row, rel, b)) in p.rows.iter().enumerate() {
        let mut ax = S::zero();
        for j in 0..row.len() {
            ax = ax + row[j].clone() * sol.x[j].clone();
        }
        let slack = LpScalar::to_f64(&(b.clone() - ax));
        let ok = match rel {
            Relation::Le => slack >= -tol,
            Relation::Ge => slack <= tol,
            Relation::Eq => slack.abs() <= tol,
        };
        if !ok {
            return false;
        }
        // complementary slackness: dual_i · slack_i = 0
        if (LpScalar::to_f64(&sol.duals[i]) * slack).abs() > tol {
            return false;
        }
    }
    sol.gap <= tol
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn f(v: f64) -> f64 {
        v
    }

    #[test]
    fn max_x_st_x_le_1() {
        let p = LpProblem {
            sense: Sense::Maximize,
            objective: vec![1.0],
            rows: vec![(vec![1.0], Relation::Le, 1.0)],
            bounds: vec![VarBound::NonNeg],
        };
        match solve(&p) {
            LpOutcome::Optimal(s) => {
                assert!((s.value - 1.0).abs() < 1e-12);
                assert!((s.x[0] - 1.0).abs() < 1e-12);
                assert!((s.duals[0] - 1.0).abs() < 1e-12);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn free_variable_and_equality() {
        // min x + y s.t. x + 2y = 4, x free, y >= 0  -> unbounded (x -> -inf)
        let p = LpProblem {
            sense: Sense::Minimize,
            objective: vec![1.0, 1.0],
            rows: vec![(vec![1.0, 2.0], Relation::Eq, 4.0)],
            bounds: vec![VarBound::Free, VarBound::NonNeg],
        };
        assert!(matches!(solve(&p), LpOutcome::Unbounded { .. }));

        // max x + y with same row: x = 4 - 2y, obj = 4 - y -> max at y=0: 4
        let p2 = LpProblem {
            sense: Sense::Maximize,
            objective: vec![1.0, 1.0],
            rows: vec![(vec![1.0, 2.0], Relation::Eq, 4.0)],
            bounds: vec![VarBound::Free, VarBound::NonNeg],
        };
        match solve(&p2) {
            LpOutcome::Optimal(s) => assert!((s.value - 4.0).abs() < 1e-12),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn infeasible_has_farkas() {
        // x >= 0, x <= -1
        let p = LpProblem {
            sense: Sense::Maximize,
            objective: vec![f(0.0)],
            rows: vec![(vec![1.0], Relation::Le, -1.0)],
            bounds: vec![VarBound::NonNeg],
        };
        match solve(&p) {
            LpOutcome::Infeasible { farkas } => {
                // λ ≤ 0 on the ≤ row, λᵀA = λ ≤ 0 on x ≥ 0 col, λᵀb = -λ > 0
                assert!(farkas[0] < 0.0);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn exact_rational_solves_small_lp() {
        let r = |n: i64, d: i64| {
            BigRational::new(num_bigint::BigInt::from(n), num_bigint::BigInt::from(d))
        };
        // max 3x + 2y s.t. x + y <= 4, x + 3y <= 6 -> optimum (4,0), value 12
        let p = LpProblem {
            sense: Sense::Maximize,
            objective: vec![r(3, 1), r(2, 1)],
            rows: vec![
                (vec![r(1, 1), r(1, 1)], Relation::Le, r(4, 1)),
                (vec![r(1, 1), r(3, 1)], Relation::Le, r(6, 1)),
            ],
            bounds: vec![VarBound::NonNeg, VarBound::NonNeg],
        };
        match solve(&p) {
            LpOutcome::Optimal(s) => {
                assert_eq!(s.value, r(12, 1));
                assert_eq!(s.x, vec![r(4, 1), r(0, 1)]);
                assert_eq!(s.gap, 0.0);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn degenerate_lp_terminates() {
        // classic cycling-prone instance; Bland must terminate
        let p = LpProblem {
            sense: Sense::Minimize,
            objective: vec![-0.75, 150.0, -0.02, 6.0],
            rows: vec![
                (vec![0.25, -60.0, -0.04, 9.0], Relation::Le, 0.0),
                (vec![0.5, -90.0, -0.02, 3.0], Relation::Le, 0.0),
                (vec![0.0, 0.0, 1.0, 0.0], Relation::Le, 1.0),
            ],
            bounds: vec![VarBound::NonNeg; 4],
        };
        match solve(&p) {
            LpOutcome::Optimal(s) => assert!((s.value + 0.05).abs() < 1e-9),
            other => panic!("{other:?}"),
        }
    }
}
