//! Strictness-aware Fourier-Motzkin elimination and coordinate projection.
//!
//! Eliminating a variable between a lower and an upper bound produces a
//! strict row exactly when either input row is strict; over the rationals
//! the eliminated variable can always be chosen inside the resulting
//! (half-)open interval, so the projection is exact for mixed systems.
//! Equality rows are used as substitution pivots first, which keeps the
//! quadratic pair blowup for the cases that need it. After each elimination
//! the row set is pruned by LP implication tests.

use crate::exactnum::{QVector, Rat};
use crate::{Error, Result};

use super::canon::{prune_redundant, tidy_rows};
use super::types::{Constraint, GenPolyhedron, Rel};

/// Eliminates variable `k` from `rows` (existential projection). The output
/// rows have a zero coefficient at position `k`.
pub fn eliminate_var(dim: usize, rows: &[Constraint], k: usize) -> Result<Vec<Constraint>> {
    debug_assert!(k < dim);
    // Substitution pivot: the first equality row with a nonzero coefficient.
    if let Some(pos) = rows
        .iter()
        .position(|c| c.rel == Rel::Eq && !c.a[k].is_zero())
    {
        let pivot = &rows[pos];
        let mut out = Vec::with_capacity(rows.len() - 1);
        for (i, c) in rows.iter().enumerate() {
            if i == pos {
                continue;
            }
            if c.a[k].is_zero() {
                out.push(c.clone());
            } else {
                let factor = -&(&c.a[k] / &pivot.a[k]);
                let a = c.a.axpy(&factor, &pivot.a);
                let b = &c.b + &(&factor * &pivot.b);
                debug_assert!(a[k].is_zero());
                out.push(Constraint::new(a, c.rel, b));
            }
        }
        return prune_or_empty(dim, &out);
    }

    let mut zeros: Vec<Constraint> = Vec::new();
    let mut uppers: Vec<&Constraint> = Vec::new();
    let mut lowers: Vec<&Constraint> = Vec::new();
    for c in rows {
        match c.a[k].signum() {
            0 => zeros.push(c.clone()),
            1 => uppers.push(c),
            _ => lowers.push(c),
        }
    }
    for lo in &lowers {
        for up in &uppers {
            let cu = &up.a[k];
            let cl = &lo.a[k];
            // cu·(lower row) − cl·(upper row); both multipliers positive.
            let a = lo.a.scale(cu).axpy(&-cl, &up.a);
            let b = &(&lo.b * cu) - &(cl * &up.b);
            debug_assert!(a[k].is_zero());
            let rel = if lo.rel.is_strict() || up.rel.is_strict() {
                Rel::Lt
            } else {
                Rel::Le
            };
            zeros.push(Constraint::new(a, rel, b));
        }
    }
    prune_or_empty(dim, &zeros)
}

/// Prunes rows, collapsing an infeasible system to the canonical empty rows.
fn prune_or_empty(dim: usize, rows: &[Constraint]) -> Result<Vec<Constraint>> {
    let p = GenPolyhedron { dim, constraints: tidy_rows(rows) };
    if p.is_empty_fast()? {
        return Ok(GenPolyhedron::empty(dim).constraints);
    }
    prune_redundant(dim, &p.constraints)
}

/// Exact coordinate projection onto the coordinates in `keep` (strictly
/// ascending). The result lives in dimension `keep.len()` with coordinates
/// in `keep` order.
pub fn project(p: &GenPolyhedron, keep: &[usize]) -> Result<GenPolyhedron> {
    p.validate()?;
    if keep.windows(2).any(|w| w[0] >= w[1]) || keep.iter().any(|&i| i >= p.dim) {
        return Err(Error::Input(format!(
            "projection indices must be strictly ascending and below {}",
            p.dim
        )));
    }
    let mut rows = p.constraints.clone();
    for var in (0..p.dim).rev() {
        if keep.binary_search(&var).is_ok() {
            continue;
        }
        rows = eliminate_var(p.dim, &rows, var)?;
    }
    let constraints = rows
        .into_iter()
        .map(|c| {
            let a: QVector = keep.iter().map(|&i| c.a[i].clone()).collect();
            Constraint::new(a, c.rel, c.b)
        })
        .collect();
    Ok(GenPolyhedron { dim: keep.len(), constraints })
}

/// Fixes the listed coordinates to constant values and drops them.
///
/// `assignments` must have strictly ascending indices. The output dimension
/// is `p.dim − assignments.len()`, keeping the unassigned coordinates in
/// their original order.
pub fn fix_coords(p: &GenPolyhedron, assignments: &[(usize, Rat)]) -> Result<GenPolyhedron> {
    p.validate()?;
    if assignments.windows(2).any(|w| w[0].0 >= w[1].0)
        || assignments.iter().any(|(i, _)| *i >= p.dim)
    {
        return Err(Error::Input(format!(
            "fixed indices must be strictly ascending and below {}",
            p.dim
        )));
    }
    let fixed: Vec<usize> = assignments.iter().map(|(i, _)| *i).collect();
    let keep: Vec<usize> = (0..p.dim).filter(|i| fixed.binary_search(i).is_err()).collect();
    let constraints: Vec<Constraint> = p
        .constraints
        .iter()
        .map(|c| {
            let mut b = c.b.clone();
            for (i, v) in assignments {
                b = &b - &(&c.a[*i] * v);
            }
            let a: QVector = keep.iter().map(|&i| c.a[i].clone()).collect();
            Constraint::new(a, c.rel, b)
        })
        .collect();
    Ok(GenPolyhedron { dim: keep.len(), constraints: tidy_rows(&constraints) })
}

/// Embeds `p` into a larger space: coordinates `offset..offset+p.dim` carry
/// the constraints, all other coordinates are free.
pub fn embed(p: &GenPolyhedron, total_dim: usize, offset: usize) -> Result<GenPolyhedron> {
    if offset + p.dim > total_dim {
        return Err(Error::Dimension(format!(
            "embedding dimension {} at offset {} exceeds total {}",
            p.dim, offset, total_dim
        )));
    }
    let constraints = p
        .constraints
        .iter()
        .map(|c| {
            let mut a = QVector::zeros(total_dim);
            for j in 0..p.dim {
                a[offset + j] = c.a[j].clone();
            }
            Constraint::new(a, c.rel, c.b.clone())
        })
        .collect();
    Ok(GenPolyhedron { dim: total_dim, constraints })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::genpoly::canon::poly_equal;

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

    #[test]
    fn triangle_projects_to_interval() {
        // 0 ≤ y ≤ x ≤ 1, keep x.
        let t = poly(
            2,
            vec![
                (vec![0, -1], Rel::Le, 0),
                (vec![-1, 1], Rel::Le, 0),
                (vec![1, 0], Rel::Le, 1),
            ],
        );
        let px = project(&t, &[0]).unwrap();
        let expect = poly(1, vec![(vec![1], Rel::Le, 1), (vec![-1], Rel::Le, 0)]);
        assert!(poly_equal(&px, &expect).unwrap());
    }

    #[test]
    fn equality_pivot_carries_strictness() {
        // 0 < y < 1, x = y, keep x.
        let p = poly(
            2,
            vec![
                (vec![0, -1], Rel::Lt, 0),
                (vec![0, 1], Rel::Lt, 1),
                (vec![1, -1], Rel::Eq, 0),
            ],
        );
        let px = project(&p, &[0]).unwrap();
        let expect = poly(1, vec![(vec![1], Rel::Lt, 1), (vec![-1], Rel::Lt, 0)]);
        assert!(poly_equal(&px, &expect).unwrap());
    }

    #[test]
    fn open_square_projects_to_open_interval() {
        let p = poly(
            2,
            vec![
                (vec![-1, 0], Rel::Lt, 0),
                (vec![1, 0], Rel::Lt, 1),
                (vec![0, -1], Rel::Lt, 0),
                (vec![0, 1], Rel::Lt, 1),
            ],
        );
        let px = project(&p, &[0]).unwrap();
        let expect = poly(1, vec![(vec![1], Rel::Lt, 1), (vec![-1], Rel::Lt, 0)]);
        assert!(poly_equal(&px, &expect).unwrap());
        // Strict-strict combinations stay strict: the interior is preserved,
        // the endpoints are not.
        assert!(!px.membership(&qv(&[0])).unwrap());
        assert!(!px.membership(&qv(&[1])).unwrap());
    }

    #[test]
    fn projection_of_empty_is_empty() {
        let p = poly(2, vec![(vec![1, 0], Rel::Lt, 0), (vec![-1, 0], Rel::Lt, 0)]);
        let px = project(&p, &[1]).unwrap();
        assert!(px.is_empty().unwrap().empty);
    }

    #[test]
    fn projection_matches_fiber_feasibility() {
        // Half-open slab over a line: {(x, y): 0 ≤ x − y < 1, 0 ≤ y ≤ 2}.
        let p = poly(
            2,
            vec![
                (vec![-1, 1], Rel::Le, 0),
                (vec![1, -1], Rel::Lt, 1),
                (vec![0, -1], Rel::Le, 0),
                (vec![0, 1], Rel::Le, 2),
            ],
        );
        let px = project(&p, &[0]).unwrap();
        for num in -4..=8 {
            let x = QVector(vec![Rat::ratio(num, 2)]);
            let fiber = fix_coords(&p, &[(0, Rat::ratio(num, 2))]).unwrap();
            let has_fiber = !fiber.is_empty().unwrap().empty;
            assert_eq!(
                px.membership(&x).unwrap(),
                has_fiber,
                "fiber mismatch at x = {num}/2"
            );
        }
    }

    #[test]
    fn fix_coords_substitutes_and_drops() {
        let p = poly(
            3,
            vec![
                (vec![1, 1, 0], Rel::Le, 2),
                (vec![0, 1, 1], Rel::Lt, 1),
                (vec![1, 0, -1], Rel::Eq, 0),
            ],
        );
        let s = fix_coords(&p, &[(1, Rat::int(1))]).unwrap();
        assert_eq!(s.dim, 2);
        // x + 1 ≤ 2, z < 0, x = z.
        assert!(s.membership(&QVector(vec![Rat::ratio(-1, 2), Rat::ratio(-1, 2)])).unwrap());
        assert!(!s.membership(&qv(&[0, 0])).unwrap());
        assert!(!s.membership(&qv(&[2, 2])).unwrap());
    }

    #[test]
    fn embed_leaves_other_coordinates_free() {
        let interval = poly(1, vec![(vec![1], Rel::Le, 1), (vec![-1], Rel::Le, 0)]);
        let e = embed(&interval, 3, 1).unwrap();
        assert_eq!(e.dim, 3);
        assert!(e.membership(&qv(&[100, 1, -100])).unwrap());
        assert!(!e.membership(&qv(&[0, 2, 0])).unwrap());
    }
}
