//! Exact two-phase simplex over free rational variables.
//!
//! Problems are stated over free variables with `≤` and `=` rows; internally
//! the solver splits `x = u − v`, adds slacks, and runs a dense-tableau
//! two-phase simplex with Bland's anti-cycling rule (entering: lowest column
//! index with positive reduced cost; leaving: lowest basis index among ratio
//! ties). That makes every outcome deterministic, so witnesses are
//! reproducible byte for byte.
//!
//! Each outcome carries a certificate that re-verifies by substitution:
//! optimal points come with exact dual multipliers, infeasible systems with a
//! Farkas vector, unbounded problems with an improving feasible ray.

use serde::{Deserialize, Serialize};

use super::linalg::QVector;
use super::rat::Rat;
use crate::{Error, Result};

/// Temporary profiling counters: (lp calls, pivots, feasible early exits).
/// Relation of one constraint row.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum LinRel {
    /// `a · x ≤ b`
    Le,
    /// `a · x = b`
    Eq,
}

/// One constraint row `a · x rel b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinRow {
    /// Row normal.
    pub a: QVector,
    /// Row relation.
    pub rel: LinRel,
    /// Right-hand side.
    pub b: Rat,
}

impl LinRow {
    /// Convenience constructor for a `≤` row.
    pub fn le(a: QVector, b: Rat) -> LinRow {
        LinRow { a, rel: LinRel::Le, b }
    }

    /// Convenience constructor for an `=` row.
    pub fn eq(a: QVector, b: Rat) -> LinRow {
        LinRow { a, rel: LinRel::Eq, b }
    }
}

/// Optimization sense.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Sense {
    Max,
    Min,
}

/// A linear program over free variables.
#[derive(Clone, Debug)]
pub struct LpProblem {
    /// Ambient dimension of `x`.
    pub dim: usize,
    /// Whether `objective · x` is maximized or minimized.
    pub sense: Sense,
    /// Objective functional.
    pub objective: QVector,
    /// Constraint rows, all of dimension `dim`.
    pub rows: Vec<LinRow>,
}

/// Exact LP outcome with re-checkable certificates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    /// Optimal point, exact value, and dual multipliers indexed by row.
    ///
    /// For `Max`: `Σ yᵢ aᵢ = objective`, `yᵢ ≥ 0` on `≤` rows, and
    /// `Σ yᵢ bᵢ = value`. For `Min` the multiplier signs flip.
    Optimal { x: QVector, value: Rat, dual: QVector },
    /// Infeasibility certificate: `yᵢ ≥ 0` on `≤` rows, `Σ yᵢ aᵢ = 0`,
    /// `Σ yᵢ bᵢ < 0`.
    Infeasible { farkas: QVector },
    /// Feasible improving ray: `aᵢ · d ≤ 0` on `≤` rows, `aᵢ · d = 0` on
    /// `=` rows, and `objective · d > 0` (`< 0` for `Min`).
    Unbounded { ray: QVector },
}

impl LpOutcome {
    /// The optimal value, if the outcome is optimal.
    pub fn value(&self) -> Option<&Rat> {
        match self {
            LpOutcome::Optimal { value, .. } => Some(value),
            _ => None,
        }
    }
}

/// Solves an LP exactly.
pub fn lp_solve(p: &LpProblem) -> Result<LpOutcome> {
    if p.objective.dim() != p.dim {
        return Err(Error::Dimension(format!(
            "objective of length {} in dimension {}",
            p.objective.dim(),
            p.dim
        )));
    }
    for row in &p.rows {
        if row.a.dim() != p.dim {
            return Err(Error::Dimension(format!(
                "constraint row of length {} in dimension {}",
                row.a.dim(),
                p.dim
            )));
        }
    }
    match p.sense {
        Sense::Max => Ok(solve_max(&p.objective, &p.rows)),
        Sense::Min => Ok(match solve_max(&p.objective.neg(), &p.rows) {
            LpOutcome::Optimal { x, value, dual } => {
                LpOutcome::Optimal { x, value: -value, dual: dual.neg() }
            }
            other => other,
        }),
    }
}

/// Convenience wrapper around [`lp_solve`].
pub fn optimize(sense: Sense, objective: &QVector, rows: &[LinRow]) -> Result<LpOutcome> {
    lp_solve(&LpProblem {
        dim: objective.dim(),
        sense,
        objective: objective.clone(),
        rows: rows.to_vec(),
    })
}

/// Relation of one possibly strict constraint row.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum StrictRel {
    /// `a · x ≤ b`
    Le,
    /// `a · x < b`
    Lt,
    /// `a · x = b`
    Eq,
}

/// One possibly strict constraint row.
#[derive(Clone, Debug)]
pub struct StrictRow {
    /// Row normal.
    pub a: QVector,
    /// Row relation.
    pub rel: StrictRel,
    /// Right-hand side.
    pub b: Rat,
}

/// Outcome of [`strict_feasibility`].
#[derive(Clone, Debug)]
pub struct StrictFeasibility {
    /// Whether some point satisfies every row, strict rows strictly.
    pub feasible: bool,
    /// A satisfying point when `feasible`; it meets each strict row with
    /// margin at least `margin`.
    pub witness: Option<QVector>,
    /// The optimal margin `ε*` of the auxiliary LP, when the non-strict
    /// relaxation is feasible at all. The system is strictly feasible iff
    /// `ε* > 0`; values `≤ 0` mean the relaxation is feasible only on the
    /// boundary of some strict row.
    pub margin: Option<Rat>,
}

/// Builds the margin LP `maximize ε` subject to the non-strict rows, each
/// strict row shifted to `a · x + ε ≤ b`, and `ε ≤ 1`; returns its objective
/// and rows.
fn margin_lp(dim: usize, rows: &[StrictRow]) -> Result<(QVector, Vec<LinRow>)> {
    for row in rows {
        if row.a.dim() != dim {
            return Err(Error::Dimension(format!(
                "constraint row of length {} in dimension {}",
                row.a.dim(),
                dim
            )));
        }
    }
    let mut aux_rows = Vec::with_capacity(rows.len() + 1);
    for row in rows {
        let eps_coeff = match row.rel {
            StrictRel::Lt => Rat::one(),
            StrictRel::Le | StrictRel::Eq => Rat::zero(),
        };
        let mut a = row.a.clone();
        a.0.push(eps_coeff);
        let rel = match row.rel {
            StrictRel::Eq => LinRel::Eq,
            _ => LinRel::Le,
        };
        aux_rows.push(LinRow { a, rel, b: row.b.clone() });
    }
    let mut cap = QVector::zeros(dim + 1);
    cap[dim] = Rat::one();
    aux_rows.push(LinRow::le(cap.clone(), Rat::one()));
    Ok((cap, aux_rows))
}

/// Decides whether a mixed `≤`/`<`/`=` system has a solution satisfying the
/// strict rows strictly.
///
/// The system is strictly feasible iff the margin LP's optimal `ε*` is
/// positive; the auxiliary optimum then yields a maximum-margin witness,
/// which doubles as a deterministic, well-centered sample point.
pub fn strict_feasibility(dim: usize, rows: &[StrictRow]) -> Result<StrictFeasibility> {
    let (cap, aux_rows) = margin_lp(dim, rows)?;
    match solve_max(&cap, &aux_rows) {
        LpOutcome::Infeasible { .. } => {
            Ok(StrictFeasibility { feasible: false, witness: None, margin: None })
        }
        LpOutcome::Optimal { x, value, .. } => {
            let feasible = value.is_positive();
            let witness = feasible.then(|| x.slice(0, dim));
            Ok(StrictFeasibility { feasible, witness, margin: Some(value) })
        }
        LpOutcome::Unbounded { .. } => {
            unreachable!("auxiliary margin objective is capped at 1")
        }
    }
}

/// Decides [`strict_feasibility`]'s boolean question without computing the
/// maximum margin: pivoting stops at the first basis whose margin is already
/// positive. Roughly an order of magnitude cheaper on feasible systems, and
/// the tool of choice when no witness is needed.
pub fn strictly_feasible(dim: usize, rows: &[StrictRow]) -> Result<bool> {
    let (cap, aux_rows) = margin_lp(dim, rows)?;
    let mut tab = Tableau::build(cap.dim(), &aux_rows);
    if phase1(&mut tab).is_some() {
        return Ok(false);
    }
    let costs2 = phase2_costs(&tab, &cap);
    if tab.objective_value(&costs2).is_positive() {
        return Ok(true);
    }
    let unbounded = tab.pivot_loop(&costs2, tab.art_start, true);
    debug_assert!(unbounded.is_none(), "auxiliary margin objective is capped at 1");
    Ok(tab.objective_value(&costs2).is_positive())
}

/// Dense simplex tableau in standard equality form.
///
/// Columns: `u₀..uₙ`, `v₀..vₙ` (free split), one slack per `≤` row, then one
/// artificial per row whose slack cannot start basic (`=` rows and rows
/// negated to make the rhs nonnegative); the right-hand side is the final
/// entry of each row. Slack and artificial columns start as signed unit
/// columns, so at any later point they hold the accumulated row-operation
/// matrix, which is what the dual and Farkas extractions read; homogeneous
/// all-`≤` systems need no artificials and no feasibility phase at all.
struct Tableau {
    n: usize,
    ncols: usize,
    art_start: usize,
    rows: Vec<QVector>,
    basis: Vec<usize>,
    /// Per original row: the column that tracks its row-operation
    /// coefficient (the slack column for `≤` rows, the artificial otherwise).
    cert_col: Vec<usize>,
    /// Sign relating that column to a multiplier on the row as originally
    /// stated.
    cert_sign: Vec<i8>,
    /// Original row count.
    m: usize,
}

impl Tableau {
    fn build(n: usize, rows: &[LinRow]) -> Tableau {
        let m = rows.len();
        let n_le = rows.iter().filter(|r| r.rel == LinRel::Le).count();
        let needs_art: Vec<bool> = rows
            .iter()
            .map(|r| r.rel == LinRel::Eq || r.b.is_negative())
            .collect();
        let art_start = 2 * n + n_le;
        let ncols = art_start + needs_art.iter().filter(|&&x| x).count();
        let mut tab_rows = Vec::with_capacity(m);
        let mut basis = Vec::with_capacity(m);
        let mut cert_col = Vec::with_capacity(m);
        let mut cert_sign = Vec::with_capacity(m);
        let mut slack_idx = 0;
        let mut art_idx = 0;
        for (i, row) in rows.iter().enumerate() {
            let neg = row.b.is_negative();
            let s: Rat = if neg { Rat::int(-1) } else { Rat::one() };
            let sigma: i8 = if neg { -1 } else { 1 };
            let mut t = QVector::zeros(ncols + 1);
            for j in 0..n {
                let c = &row.a[j] * &s;
                t[n + j] = -&c;
                t[j] = c;
            }
            let mut basic = None;
            if row.rel == LinRel::Le {
                let col = 2 * n + slack_idx;
                t[col] = s.clone();
                // The slack column is σ·eᵢ, so reading it and mapping back to
                // the original row cancels both σ factors.
                cert_col.push(col);
                cert_sign.push(1);
                if !neg {
                    basic = Some(col);
                }
                slack_idx += 1;
            }
            if needs_art[i] {
                let col = art_start + art_idx;
                t[col] = Rat::one();
                if row.rel == LinRel::Eq {
                    cert_col.push(col);
                    cert_sign.push(sigma);
                }
                basic = Some(col);
                art_idx += 1;
            }
            t[ncols] = &row.b * &s;
            tab_rows.push(t);
            basis.push(basic.expect("every row has a starting basic column"));
        }
        Tableau { n, ncols, art_start, rows: tab_rows, basis, cert_col, cert_sign, m }
    }

    fn rhs(&self, r: usize) -> &Rat {
        &self.rows[r][self.ncols]
    }

    fn pivot(&mut self, pr: usize, pc: usize, obj: &mut Vec<Rat>) {
        let inv = self.rows[pr][pc].recip();
        if inv != Rat::one() {
            for e in self.rows[pr].0.iter_mut() {
                if !e.is_zero() {
                    *e *= &inv;
                }
            }
        }
        let pivot_row = std::mem::replace(&mut self.rows[pr], QVector::zeros(0));
        for (r, row) in self.rows.iter_mut().enumerate() {
            if r == pr || row.0.is_empty() {
                continue;
            }
            let k = row.0[pc].clone();
            if k.is_zero() {
                continue;
            }
            for (e, p) in row.0.iter_mut().zip(pivot_row.0.iter()) {
                if !p.is_zero() {
                    *e -= &(&k * p);
                }
            }
        }
        if !obj[pc].is_zero() {
            let k = obj[pc].clone();
            for (e, p) in obj.iter_mut().zip(pivot_row.0.iter()) {
                if !p.is_zero() {
                    *e -= &(&k * p);
                }
            }
        }
        self.rows[pr] = pivot_row;
        self.basis[pr] = pc;
    }

    /// Reduced-cost row for the given column costs and current basis.
    fn reduced_costs(&self, costs: &[Rat]) -> Vec<Rat> {
        let mut obj: Vec<Rat> = costs.to_vec();
        for (r, &b) in self.basis.iter().enumerate() {
            if costs[b].is_zero() {
                continue;
            }
            let k = &costs[b];
            for j in 0..self.ncols {
                let v = &obj[j] - &(k * &self.rows[r][j]);
                obj[j] = v;
            }
        }
        obj
    }

    /// Runs Bland pivots until optimality or unboundedness. With
    /// `stop_positive` the loop also returns as soon as the objective value
    /// turns positive, leaving the tableau at that intermediate basis.
    fn pivot_loop(
        &mut self,
        costs: &[Rat],
        entering_limit: usize,
        stop_positive: bool,
    ) -> Option<usize> {
        let mut obj = self.reduced_costs(costs);
        loop {
            let Some(pc) = (0..entering_limit).find(|&j| obj[j].is_positive()) else {
                return None;
            };
            let mut pick: Option<(Rat, usize, usize)> = None;
            for r in 0..self.rows.len() {
                let t = &self.rows[r][pc];
                if !t.is_positive() {
                    continue;
                }
                let ratio = self.rhs(r) / t;
                let replace = match &pick {
                    None => true,
                    Some((best, bvar, _)) => {
                        ratio < *best || (ratio == *best && self.basis[r] < *bvar)
                    }
                };
                if replace {
                    pick = Some((ratio, self.basis[r], r));
                }
            }
            match pick {
                None => return Some(pc),
                Some((_, _, pr)) => self.pivot(pr, pc, &mut obj),
            }
            if stop_positive && self.objective_value(costs).is_positive() {
                return None;
            }
        }
    }

    fn objective_value(&self, costs: &[Rat]) -> Rat {
        let mut v = Rat::zero();
        for (r, &b) in self.basis.iter().enumerate() {
            if !costs[b].is_zero() {
                v += &(&costs[b] * self.rhs(r));
            }
        }
        v
    }

    /// Multiplier of each row as originally stated in the current cost
    /// combination: `πᵢ = signᵢ · Σ_r costs[basis[r]] · T[r][certᵢ]`.
    fn row_multipliers(&self, costs: &[Rat]) -> QVector {
        let mut pi = QVector::zeros(self.m);
        for (r, &b) in self.basis.iter().enumerate() {
            if costs[b].is_zero() {
                continue;
            }
            let k = &costs[b];
            for i in 0..self.m {
                let t = &self.rows[r][self.cert_col[i]];
                if t.is_zero() {
                    continue;
                }
                let v = if self.cert_sign[i] < 0 { &pi[i] - &(k * t) } else { &pi[i] + &(k * t) };
                pi[i] = v;
            }
        }
        pi
    }

    /// Pivots basic artificials onto structural columns; drops rows that are
    /// identically zero outside the artificial block (redundant equations).
    fn purge_artificials(&mut self) {
        let mut obj = vec![Rat::zero(); self.ncols];
        let mut r = 0;
        while r < self.rows.len() {
            if self.basis[r] < self.art_start {
                r += 1;
                continue;
            }
            match (0..self.art_start).find(|&j| !self.rows[r][j].is_zero()) {
                Some(pc) => {
                    self.pivot(r, pc, &mut obj);
                    r += 1;
                }
                None => {
                    self.rows.remove(r);
                    self.basis.remove(r);
                }
            }
        }
    }

    /// Value of the split free variables at the current basic solution.
    fn current_x(&self) -> QVector {
        let mut x = QVector::zeros(self.n);
        for (r, &b) in self.basis.iter().enumerate() {
            if b < self.n {
                let v = &x[b] + self.rhs(r);
                x[b] = v;
            } else if b < 2 * self.n {
                let v = &x[b - self.n] - self.rhs(r);
                x[b - self.n] = v;
            }
        }
        x
    }

    /// The improving ray produced by entering column `pc` when no row blocks.
    fn ray_for(&self, pc: usize) -> QVector {
        let mut d = QVector::zeros(self.n);
        let bump = |d: &mut QVector, col: usize, k: &Rat| {
            if col < self.n {
                let v = &d[col] + k;
                d[col] = v;
            } else if col < 2 * self.n {
                let v = &d[col - self.n] - k;
                d[col - self.n] = v;
            }
        };
        bump(&mut d, pc, &Rat::one());
        for (r, &b) in self.basis.iter().enumerate() {
            let k = -&self.rows[r][pc];
            if !k.is_zero() {
                bump(&mut d, b, &k);
            }
        }
        d
    }
}

/// Runs the feasibility phase; on infeasibility returns the Farkas vector.
fn phase1(tab: &mut Tableau) -> Option<QVector> {
    if tab.ncols == tab.art_start {
        return None;
    }
    let mut costs1 = vec![Rat::zero(); tab.ncols];
    for j in tab.art_start..tab.ncols {
        costs1[j] = Rat::int(-1);
    }
    let unbounded = tab.pivot_loop(&costs1, tab.ncols, false);
    debug_assert!(unbounded.is_none(), "phase-1 objective is bounded above by 0");
    if tab.objective_value(&costs1).is_negative() {
        return Some(tab.row_multipliers(&costs1));
    }
    tab.purge_artificials();
    None
}

/// Phase-2 cost row for maximizing `c · x` over the split columns.
fn phase2_costs(tab: &Tableau, c: &QVector) -> Vec<Rat> {
    let mut costs = vec![Rat::zero(); tab.ncols];
    for j in 0..tab.n {
        costs[j] = c[j].clone();
        costs[tab.n + j] = -&c[j];
    }
    costs
}

fn solve_max(c: &QVector, rows: &[LinRow]) -> LpOutcome {
    let mut tab = Tableau::build(c.dim(), rows);
    if let Some(farkas) = phase1(&mut tab) {
        return LpOutcome::Infeasible { farkas };
    }
    let costs2 = phase2_costs(&tab, c);
    match tab.pivot_loop(&costs2, tab.art_start, false) {
        Some(pc) => LpOutcome::Unbounded { ray: tab.ray_for(pc) },
        None => {
            let x = tab.current_x();
            let value = c.dot(&x);
            let dual = tab.row_multipliers(&costs2);
            LpOutcome::Optimal { x, value, dual }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qv(entries: &[i64]) -> QVector {
        QVector::from_ints(entries)
    }

    /// Checks the full optimality certificate by substitution.
    fn assert_optimal_certificate(
        c: &QVector,
        rows: &[LinRow],
        x: &QVector,
        value: &Rat,
        dual: &QVector,
    ) {
        for row in rows {
            let lhs = row.a.dot(x);
            match row.rel {
                LinRel::Le => assert!(lhs <= row.b, "primal infeasible at {row:?}"),
                LinRel::Eq => assert_eq!(lhs, row.b, "primal infeasible at {row:?}"),
            }
        }
        assert_eq!(&c.dot(x), value, "objective mismatch");
        let mut combo = QVector::zeros(c.dim());
        let mut dual_value = Rat::zero();
        for (i, row) in rows.iter().enumerate() {
            if row.rel == LinRel::Le {
                assert!(!dual[i].is_negative(), "negative multiplier on ≤ row {i}");
            }
            combo = combo.axpy(&dual[i], &row.a);
            dual_value += &(&dual[i] * &row.b);
        }
        assert_eq!(&combo, c, "dual combination mismatch");
        assert_eq!(&dual_value, value, "strong duality violated");
    }

    #[test]
    fn box_corner() {
        let c = qv(&[1, 1]);
        let rows = vec![
            LinRow::le(qv(&[1, 0]), Rat::one()),
            LinRow::le(qv(&[-1, 0]), Rat::zero()),
            LinRow::le(qv(&[0, 1]), Rat::one()),
            LinRow::le(qv(&[0, -1]), Rat::zero()),
        ];
        match optimize(Sense::Max, &c, &rows).unwrap() {
            LpOutcome::Optimal { x, value, dual } => {
                assert_eq!(x, qv(&[1, 1]));
                assert_eq!(value, Rat::int(2));
                assert_optimal_certificate(&c, &rows, &x, &value, &dual);
            }
            other => panic!("expected optimal, got {other:?}"),
        }
    }

    #[test]
    fn unbounded_halfline() {
        let c = qv(&[1]);
        let rows = vec![LinRow::le(qv(&[-1]), Rat::zero())];
        match optimize(Sense::Max, &c, &rows).unwrap() {
            LpOutcome::Unbounded { ray } => {
                assert!(ray[0].is_positive());
                assert!(qv(&[-1]).dot(&ray) <= Rat::zero());
            }
            other => panic!("expected unbounded, got {other:?}"),
        }
    }

    #[test]
    fn infeasible_with_farkas() {
        let rows = vec![
            LinRow::le(qv(&[1]), Rat::zero()),
            LinRow::le(qv(&[-1]), Rat::int(-1)),
        ];
        match optimize(Sense::Max, &qv(&[0]), &rows).unwrap() {
            LpOutcome::Infeasible { farkas } => {
                let mut combo = Rat::zero();
                let mut rhs = Rat::zero();
                for (i, row) in rows.iter().enumerate() {
                    assert!(!farkas[i].is_negative());
                    combo += &(&farkas[i] * &row.a[0]);
                    rhs += &(&farkas[i] * &row.b);
                }
                assert!(combo.is_zero());
                assert!(rhs.is_negative());
            }
            other => panic!("expected infeasible, got {other:?}"),
        }
    }

    #[test]
    fn equality_rows_and_duals() {
        let c = qv(&[1, 2]);
        let rows = vec![
            LinRow::eq(qv(&[1, 1]), Rat::one()),
            LinRow::le(qv(&[-1, 0]), Rat::zero()),
            LinRow::le(qv(&[0, -1]), Rat::zero()),
        ];
        match optimize(Sense::Max, &c, &rows).unwrap() {
            LpOutcome::Optimal { x, value, dual } => {
                assert_eq!(x, qv(&[0, 1]));
                assert_eq!(value, Rat::int(2));
                assert_eq!(dual, qv(&[2, 1, 0]));
                assert_optimal_certificate(&c, &rows, &x, &value, &dual);
            }
            other => panic!("expected optimal, got {other:?}"),
        }
    }

    #[test]
    fn min_sense_flips_signs() {
        let c = qv(&[1]);
        let rows = vec![LinRow::le(qv(&[-1]), Rat::int(-2))];
        match optimize(Sense::Min, &c, &rows).unwrap() {
            LpOutcome::Optimal { x, value, dual } => {
                assert_eq!(x, qv(&[2]));
                assert_eq!(value, Rat::int(2));
                assert!(!dual[0].is_positive());
            }
            other => panic!("expected optimal, got {other:?}"),
        }
    }

    #[test]
    fn negative_rhs_rows_normalize() {
        let c = qv(&[0, 1]);
        let rows = vec![
            LinRow::le(qv(&[1, 1]), Rat::int(-1)),
            LinRow::le(qv(&[-1, 0]), Rat::zero()),
            LinRow::le(qv(&[0, -1]), Rat::int(5)),
        ];
        match optimize(Sense::Max, &c, &rows).unwrap() {
            LpOutcome::Optimal { x, value, dual } => {
                assert_eq!(x, qv(&[0, -1]));
                assert_eq!(value, Rat::int(-1));
                assert_optimal_certificate(&c, &rows, &x, &value, &dual);
            }
            other => panic!("expected optimal, got {other:?}"),
        }
    }

    #[test]
    fn redundant_equalities_are_tolerated() {
        let c = qv(&[1, 0]);
        let rows = vec![
            LinRow::eq(qv(&[1, 1]), Rat::int(2)),
            LinRow::eq(qv(&[2, 2]), Rat::int(4)),
            LinRow::le(qv(&[1, 0]), Rat::one()),
        ];
        match optimize(Sense::Max, &c, &rows).unwrap() {
            LpOutcome::Optimal { x, value, dual } => {
                assert_eq!(value, Rat::one());
                assert_optimal_certificate(&c, &rows, &x, &value, &dual);
            }
            other => panic!("expected optimal, got {other:?}"),
        }
    }

    #[test]
    fn no_rows_edge_cases() {
        match optimize(Sense::Max, &qv(&[0, 0]), &[]).unwrap() {
            LpOutcome::Optimal { x, value, .. } => {
                assert_eq!(x, qv(&[0, 0]));
                assert_eq!(value, Rat::zero());
            }
            other => panic!("expected optimal, got {other:?}"),
        }
        match optimize(Sense::Max, &qv(&[1, 0]), &[]).unwrap() {
            LpOutcome::Unbounded { ray } => assert!(ray[0].is_positive()),
            other => panic!("expected unbounded, got {other:?}"),
        }
    }

    #[test]
    fn determinism_byte_for_byte() {
        let c = qv(&[3, 5]);
        let rows = vec![
            LinRow::le(qv(&[1, 0]), Rat::int(4)),
            LinRow::le(qv(&[0, 2]), Rat::int(12)),
            LinRow::le(qv(&[3, 2]), Rat::int(18)),
            LinRow::le(qv(&[-1, 0]), Rat::zero()),
            LinRow::le(qv(&[0, -1]), Rat::zero()),
        ];
        let a = optimize(Sense::Max, &c, &rows).unwrap();
        let b = optimize(Sense::Max, &c, &rows).unwrap();
        assert_eq!(format!("{a:?}"), format!("{b:?}"));
        match a {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, Rat::int(36)),
            other => panic!("expected optimal, got {other:?}"),
        }
    }

    #[test]
    fn strict_interval_is_feasible() {
        let rows = vec![
            StrictRow { a: qv(&[1]), rel: StrictRel::Le, b: Rat::one() },
            StrictRow { a: qv(&[1]), rel: StrictRel::Lt, b: Rat::one() },
        ];
        let out = strict_feasibility(1, &rows).unwrap();
        assert!(out.feasible);
        let w = out.witness.unwrap();
        assert!(w[0] < Rat::one());
    }

    #[test]
    fn pinched_point_is_not_strictly_feasible() {
        let rows = vec![
            StrictRow { a: qv(&[1]), rel: StrictRel::Le, b: Rat::zero() },
            StrictRow { a: qv(&[-1]), rel: StrictRel::Lt, b: Rat::zero() },
        ];
        let out = strict_feasibility(1, &rows).unwrap();
        assert!(!out.feasible);
        assert!(out.witness.is_none());
        assert_eq!(out.margin, Some(Rat::zero()));
    }

    #[test]
    fn strict_box_in_2d() {
        let rows = vec![
            StrictRow { a: qv(&[-1, 0]), rel: StrictRel::Le, b: Rat::zero() },
            StrictRow { a: qv(&[1, 0]), rel: StrictRel::Le, b: Rat::one() },
            StrictRow { a: qv(&[0, -1]), rel: StrictRel::Lt, b: Rat::zero() },
            StrictRow { a: qv(&[0, 1]), rel: StrictRel::Lt, b: Rat::one() },
        ];
        let out = strict_feasibility(2, &rows).unwrap();
        assert!(out.feasible);
        let w = out.witness.unwrap();
        assert!(w[1].is_positive() && w[1] < Rat::one());
    }

    #[test]
    fn empty_row_list_is_strictly_feasible() {
        let out = strict_feasibility(3, &[]).unwrap();
        assert!(out.feasible);
        assert_eq!(out.witness.unwrap(), QVector::zeros(3));
        assert_eq!(out.margin, Some(Rat::one()));
    }

    #[test]
    fn infeasible_equality_chain() {
        let rows = vec![
            StrictRow { a: qv(&[1]), rel: StrictRel::Le, b: Rat::zero() },
            StrictRow { a: qv(&[-1]), rel: StrictRel::Le, b: Rat::zero() },
            StrictRow { a: qv(&[1]), rel: StrictRel::Lt, b: Rat::zero() },
        ];
        let out = strict_feasibility(1, &rows).unwrap();
        assert!(!out.feasible);
        assert_eq!(out.margin, Some(Rat::zero()));
    }
}
