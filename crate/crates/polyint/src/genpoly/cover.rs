//! Exact covering decisions: does a union of generalized polyhedra swallow a
//! target set?
//!
//! The engine peels pieces off the target one at a time. Subtracting a piece
//! from a cell walks the piece's rows in stored order and, for each row,
//! emits the part of the cell that satisfies every earlier row but violates
//! this one (the complement of an equality contributes one cell per side).
//! The emitted cells are disjoint from the piece and tile `cell ∖ piece`, so
//! after all pieces are processed the surviving cells tile exactly
//! `target ∖ ∪ pieces`: the target is covered iff none survive.
//!
//! Cells within one round are independent and may be processed in parallel;
//! the final witness is the lexicographically smallest leaf witness, so the
//! answer never depends on scheduling.

use crate::exactnum::QVector;
use crate::{exec, Budget, Error, Result, Strategy};

use super::canon::{poly_subset, tidy_rows};
use super::types::{Constraint, GenPolyhedron};

/// Outcome of a covering decision.
#[derive(Clone, Debug)]
pub struct CoverReport {
    /// True iff target ⊂ ∪ pieces.
    pub covered: bool,
    /// A point of the target outside every piece, when not covered. The
    /// witness is the lexicographically smallest of the per-cell witnesses,
    /// each of which is the maximum-margin point of its cell.
    pub witness: Option<QVector>,
}

/// Splits `cell ∖ piece` into disjoint nonempty cells.
fn subtract(cell: &GenPolyhedron, piece: &GenPolyhedron) -> Result<Vec<GenPolyhedron>> {
    // A piece that misses the cell removes nothing; branching on its rows
    // would only shred the cell for no benefit.
    if cell.intersect(piece)?.is_empty_fast()? {
        return Ok(vec![cell.clone()]);
    }
    let mut out = Vec::new();
    let mut affirmed: Vec<Constraint> = cell.constraints.clone();
    for row in &piece.constraints {
        for branch in row.complement() {
            let mut rows = affirmed.clone();
            rows.push(branch);
            let candidate = GenPolyhedron { dim: cell.dim, constraints: tidy_rows(&rows) };
            if !candidate.is_empty_fast()? {
                out.push(candidate);
            }
        }
        affirmed.push(row.clone());
    }
    Ok(out)
}

/// Decides `target ⊂ ∪ pieces` exactly.
///
/// Not-covered verdicts carry a witness that lies in the target and in no
/// piece. Cell growth is charged against [`Budget::max_cells`].
pub fn covers(
    target: &GenPolyhedron,
    pieces: &[GenPolyhedron],
    budget: &Budget,
    strategy: Strategy,
) -> Result<CoverReport> {
    target.validate()?;
    for piece in pieces {
        piece.validate()?;
        if piece.dim != target.dim {
            return Err(Error::Dimension(format!(
                "cover piece of dimension {} against target of dimension {}",
                piece.dim, target.dim
            )));
        }
    }

    if target.is_empty_fast()? {
        return Ok(CoverReport { covered: true, witness: None });
    }
    // One piece swallowing the whole target settles the question without
    // any decomposition.
    for piece in pieces {
        if poly_subset(target, piece)? {
            return Ok(CoverReport { covered: true, witness: None });
        }
    }
    // Pieces that never meet the target only split cells without removing
    // anything; duplicates only repeat work. Both are dropped up front.
    let mut active: Vec<&GenPolyhedron> = Vec::with_capacity(pieces.len());
    for piece in pieces {
        if active.iter().any(|kept| kept.constraints == piece.constraints) {
            continue;
        }
        if !target.intersect(piece)?.is_empty_fast()? {
            active.push(piece);
        }
    }

    let mut cells: Vec<GenPolyhedron> = vec![target.clone()];
    for piece in active {
        if cells.is_empty() {
            break;
        }
        let split: Vec<Result<Vec<GenPolyhedron>>> =
            exec::map_collect(strategy, &cells, |cell| subtract(cell, piece));
        cells = Vec::new();
        for group in split {
            cells.extend(group?);
        }
        if cells.len() > budget.max_cells {
            return Err(Error::Resource(format!(
                "covering decomposition exceeded {} cells",
                budget.max_cells
            )));
        }
    }

    if cells.is_empty() {
        return Ok(CoverReport { covered: true, witness: None });
    }
    let witnesses: Vec<Result<QVector>> = exec::map_collect(strategy, &cells, |cell| {
        let report = cell.is_empty()?;
        debug_assert!(!report.empty, "survivor cells are nonempty by construction");
        report.witness.ok_or_else(|| {
            Error::Input("nonempty cell without a feasibility witness".into())
        })
    });
    let mut best: Option<QVector> = None;
    for w in witnesses {
        let w = w?;
        if best.as_ref().map_or(true, |b| w < *b) {
            best = Some(w);
        }
    }
    if let Some(w) = &best {
        debug_assert!(target.membership(w).unwrap_or(false), "witness must lie in the target");
        debug_assert!(
            pieces.iter().all(|p| !p.membership(w).unwrap_or(true)),
            "witness must avoid every piece"
        );
    }
    Ok(CoverReport { covered: false, witness: best })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::Rat;
    use crate::genpoly::types::Rel;

    fn qv(entries: &[i64]) -> QVector {
        QVector::from_ints(entries)
    }

    fn poly(dim: usize, rows: Vec<(Vec<i64>, Rel, i64)>) -> GenPolyhedron {
        GenPolyhedron::new(
            dim,
            rows.into_iter()
                .map(|(a, rel, b)| Constraint::new(qv(&a), rel, Rat::int(b)))
                .collect(),
        )
        .unwrap()
    }

    fn interval(lo: i64, hi: i64) -> GenPolyhedron {
        poly(1, vec![(vec![-1], Rel::Le, -lo), (vec![1], Rel::Le, hi)])
    }

    fn run(target: &GenPolyhedron, pieces: &[GenPolyhedron]) -> CoverReport {
        covers(target, pieces, &Budget::default(), Strategy::Sequential).unwrap()
    }

    #[test]
    fn two_halves_cover_an_interval() {
        let report = run(&interval(0, 2), &[interval(0, 1), interval(1, 2)]);
        assert!(report.covered);
        assert!(report.witness.is_none());
    }

    #[test]
    fn pinhole_gap_is_witnessed_exactly() {
        // [0,1) ∪ (1,2] misses only the single point 1.
        let left = poly(1, vec![(vec![-1], Rel::Le, 0), (vec![1], Rel::Lt, 1)]);
        let right = poly(1, vec![(vec![-1], Rel::Lt, -1), (vec![1], Rel::Le, 2)]);
        let report = run(&interval(0, 2), &[left, right]);
        assert!(!report.covered);
        assert_eq!(report.witness, Some(qv(&[1])));
    }

    #[test]
    fn axes_do_not_cover_the_plane() {
        let x_axis = poly(2, vec![(vec![0, 1], Rel::Eq, 0)]);
        let y_axis = poly(2, vec![(vec![1, 0], Rel::Eq, 0)]);
        let report = run(&GenPolyhedron::full_space(2), &[x_axis, y_axis]);
        assert!(!report.covered);
        let w = report.witness.unwrap();
        assert!(!w[0].is_zero() && !w[1].is_zero());
    }

    #[test]
    fn empty_target_is_vacuously_covered() {
        let report = run(&GenPolyhedron::empty(1), &[]);
        assert!(report.covered);
    }

    #[test]
    fn no_pieces_leaves_the_target_uncovered() {
        let report = run(&interval(0, 1), &[]);
        assert!(!report.covered);
        let w = report.witness.unwrap();
        assert!(interval(0, 1).membership(&w).unwrap());
    }

    #[test]
    fn witness_lands_in_target_and_misses_pieces() {
        // L-shaped union inside the unit square: left column ∪ bottom row.
        let square = poly(
            2,
            vec![
                (vec![-1, 0], Rel::Le, 0),
                (vec![1, 0], Rel::Le, 1),
                (vec![0, -1], Rel::Le, 0),
                (vec![0, 1], Rel::Le, 1),
            ],
        );
        let left = square
            .intersect(&poly(2, vec![(vec![1, 0], Rel::Le, 0)]))
            .unwrap();
        let bottom = square
            .intersect(&poly(2, vec![(vec![0, 1], Rel::Le, 0)]))
            .unwrap();
        let report = run(&square, &[left.clone(), bottom.clone()]);
        assert!(!report.covered);
        let w = report.witness.unwrap();
        assert!(square.membership(&w).unwrap());
        assert!(!left.membership(&w).unwrap());
        assert!(!bottom.membership(&w).unwrap());
    }

    #[test]
    fn strategies_agree_on_report_bytes() {
        let left = poly(1, vec![(vec![-1], Rel::Le, 0), (vec![1], Rel::Lt, 1)]);
        let right = poly(1, vec![(vec![-1], Rel::Lt, -1), (vec![1], Rel::Le, 2)]);
        let seq = covers(
            &interval(0, 2),
            &[left.clone(), right.clone()],
            &Budget::default(),
            Strategy::Sequential,
        )
        .unwrap();
        let par = covers(&interval(0, 2), &[left, right], &Budget::default(), Strategy::Parallel)
            .unwrap();
        assert_eq!(seq.covered, par.covered);
        assert_eq!(seq.witness, par.witness);
    }

    #[test]
    fn cell_budget_trips() {
        let tiny = Budget { max_cells: 1, ..Budget::default() };
        let square = poly(
            2,
            vec![
                (vec![-1, 0], Rel::Le, 0),
                (vec![1, 0], Rel::Le, 1),
                (vec![0, -1], Rel::Le, 0),
                (vec![0, 1], Rel::Le, 1),
            ],
        );
        let middle = poly(
            2,
            vec![
                (vec![-1, 0], Rel::Le, -1),
                (vec![1, 0], Rel::Le, 2),
                (vec![0, -1], Rel::Le, -1),
                (vec![0, 1], Rel::Le, 2),
            ],
        );
        let out = covers(&square, &[middle], &tiny, Strategy::Sequential);
        assert!(matches!(out, Err(Error::Resource(_))));
    }
}
