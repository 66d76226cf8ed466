//! Closure, affine hulls, and strictness-tolerant image operations.

use crate::exactnum::{optimize, LinRel, LinRow, LpOutcome, QMatrix, QVector, Sense};
use crate::{Error, Result};

use super::fm::{embed, project};
use super::types::{AffineFlat, Constraint, GenPolyhedron, Rel};

/// Exact topological closure.
///
/// A nonempty mixed system is dense in its relaxation: for any point of the
/// relaxation, the segment toward an interior witness of the strict rows
/// enters the set immediately, so the closure IS the relaxation. An empty
/// set closes to the canonical empty polyhedron.
pub fn closure(p: &GenPolyhedron) -> Result<GenPolyhedron> {
    p.validate()?;
    if p.is_empty_fast()? {
        return Ok(GenPolyhedron::empty(p.dim));
    }
    let relaxed = p.relaxation();
    debug_assert!(
        {
            // Density check: p meets the relative interior of its relaxation.
            let ri = ri_rows(&relaxed).expect("relaxation of a nonempty set is nonempty");
            let mut rows = p.constraints.clone();
            rows.extend(ri.constraints);
            !GenPolyhedron { dim: p.dim, constraints: rows }
                .is_empty()
                .expect("dimension already validated")
                .empty
        },
        "nonempty mixed system must be dense in its relaxation"
    );
    Ok(relaxed)
}

/// Indices of `≤` rows that hold with equality everywhere on nonempty `p`
/// (together with the explicit `=` rows they define the affine hull).
pub fn implicit_equalities(p: &GenPolyhedron) -> Result<Vec<usize>> {
    let relaxed: Vec<LinRow> = p
        .constraints
        .iter()
        .map(|c| LinRow {
            a: c.a.clone(),
            rel: if c.rel == Rel::Eq { LinRel::Eq } else { LinRel::Le },
            b: c.b.clone(),
        })
        .collect();
    let mut out = Vec::new();
    for (i, c) in p.constraints.iter().enumerate() {
        if c.rel != Rel::Le || c.is_trivial() {
            continue;
        }
        if let LpOutcome::Optimal { value, .. } = optimize(Sense::Min, &c.a, &relaxed)? {
            if value == c.b {
                out.push(i);
            }
        }
    }
    Ok(out)
}

/// The affine hull of a nonempty generalized polyhedron.
///
/// Detects implicit equalities by LP, then returns the solution flat of all
/// explicit and implicit equality rows.
pub fn affine_hull(p: &GenPolyhedron) -> Result<AffineFlat> {
    p.validate()?;
    if p.is_empty_fast()? {
        return Err(Error::EmptyInput("affine hull of the empty set".into()));
    }
    let implicit = implicit_equalities(p)?;
    let mut eq_rows: Vec<QVector> = Vec::new();
    let mut eq_rhs: Vec<_> = Vec::new();
    for (i, c) in p.constraints.iter().enumerate() {
        if c.rel == Rel::Eq || implicit.binary_search(&i).is_ok() {
            eq_rows.push(c.a.clone());
            eq_rhs.push(c.b.clone());
        }
    }
    if eq_rows.is_empty() {
        return Ok(AffineFlat {
            basepoint: QVector::zeros(p.dim),
            basis: (0..p.dim).map(|i| QVector::unit(p.dim, i)).collect(),
        });
    }
    let a = QMatrix::from_rows(eq_rows).expect("rows share dimension");
    let b: QVector = eq_rhs.into_iter().collect();
    let sol = crate::exactnum::solve_linear(&a, &b)?;
    let basepoint = sol
        .particular
        .expect("equality system of a nonempty set is consistent");
    Ok(AffineFlat { basepoint, basis: sol.nullspace })
}

/// The relative-interior representation of nonempty `p`: implicit
/// equalities kept as `=`, all remaining inequality rows made strict.
pub fn ri_rows(p: &GenPolyhedron) -> Result<GenPolyhedron> {
    p.validate()?;
    if p.is_empty_fast()? {
        return Err(Error::EmptyInput("relative interior of the empty set".into()));
    }
    let implicit = implicit_equalities(p)?;
    let constraints = p
        .constraints
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let rel = if c.rel == Rel::Eq || implicit.binary_search(&i).is_ok() {
                Rel::Eq
            } else {
                Rel::Lt
            };
            Constraint::new(c.a.clone(), rel, c.b.clone())
        })
        .collect();
    Ok(GenPolyhedron { dim: p.dim, constraints })
}

/// Image of `p` (any relations) under the linear map given by `t`, computed
/// by projecting the graph `{(x, y): y = T x, x ∈ p}`.
pub fn linear_image_fm(p: &GenPolyhedron, t: &QMatrix) -> Result<GenPolyhedron> {
    if t.cols() != p.dim {
        return Err(Error::Dimension(format!(
            "map with {} columns applied in dimension {}",
            t.cols(),
            p.dim
        )));
    }
    let m = t.rows();
    let total = p.dim + m;
    let mut graph = embed(p, total, 0)?;
    for i in 0..m {
        let mut a = QVector::zeros(total);
        for j in 0..p.dim {
            a[j] = t[(i, j)].clone();
        }
        a[p.dim + i] = crate::exactnum::Rat::int(-1);
        graph
            .constraints
            .push(Constraint::new(a, Rel::Eq, crate::exactnum::Rat::zero()));
    }
    let keep: Vec<usize> = (p.dim..total).collect();
    project(&graph, &keep)
}

/// Minkowski sum of two sets with arbitrary relations, by projecting
/// `{(z, x): x ∈ p, z − x ∈ q}` onto `z`.
pub fn minkowski_sum_fm(p: &GenPolyhedron, q: &GenPolyhedron) -> Result<GenPolyhedron> {
    if p.dim != q.dim {
        return Err(Error::Dimension(format!(
            "sum of dimensions {} and {}",
            p.dim, q.dim
        )));
    }
    let n = p.dim;
    let mut rows = Vec::with_capacity(p.constraints.len() + q.constraints.len());
    // Variables (z, x).
    for c in &p.constraints {
        let mut a = QVector::zeros(2 * n);
        for j in 0..n {
            a[n + j] = c.a[j].clone();
        }
        rows.push(Constraint::new(a, c.rel, c.b.clone()));
    }
    for c in &q.constraints {
        let mut a = QVector::zeros(2 * n);
        for j in 0..n {
            a[j] = c.a[j].clone();
            a[n + j] = -&c.a[j];
        }
        rows.push(Constraint::new(a, c.rel, c.b.clone()));
    }
    let graph = GenPolyhedron { dim: 2 * n, constraints: rows };
    let keep: Vec<usize> = (0..n).collect();
    project(&graph, &keep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::Rat;
    use crate::genpoly::canon::{canonicalize, poly_equal};

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
    fn closure_of_open_interval() {
        let p = poly(1, vec![(vec![-1], Rel::Lt, 0), (vec![1], Rel::Lt, 1)]);
        let c = closure(&p).unwrap();
        let expect = poly(1, vec![(vec![-1], Rel::Le, 0), (vec![1], Rel::Le, 1)]);
        assert!(poly_equal(&c, &expect).unwrap());
    }

    #[test]
    fn closure_of_closed_set_is_itself() {
        let p = poly(1, vec![(vec![1], Rel::Le, 1)]);
        assert_eq!(closure(&p).unwrap(), p);
    }

    #[test]
    fn closure_of_half_open_edge() {
        // {y = 0, 0 < x < 1} closes to {y = 0, 0 ≤ x ≤ 1}.
        let p = poly(
            2,
            vec![
                (vec![0, 1], Rel::Eq, 0),
                (vec![-1, 0], Rel::Lt, 0),
                (vec![1, 0], Rel::Lt, 1),
            ],
        );
        let c = closure(&p).unwrap();
        let expect = poly(
            2,
            vec![
                (vec![0, 1], Rel::Eq, 0),
                (vec![-1, 0], Rel::Le, 0),
                (vec![1, 0], Rel::Le, 1),
            ],
        );
        assert!(poly_equal(&c, &expect).unwrap());
    }

    #[test]
    fn closure_of_empty_is_canonical_empty() {
        let p = poly(1, vec![(vec![1], Rel::Lt, 0), (vec![-1], Rel::Lt, 0)]);
        assert_eq!(closure(&p).unwrap(), GenPolyhedron::empty(1));
    }

    #[test]
    fn closure_is_idempotent_and_monotone() {
        let p = poly(
            2,
            vec![
                (vec![1, 1], Rel::Lt, 2),
                (vec![-1, 0], Rel::Le, 0),
                (vec![0, -1], Rel::Lt, 0),
            ],
        );
        let c1 = closure(&p).unwrap();
        let c2 = closure(&c1).unwrap();
        assert_eq!(c1, c2);
        let inside = QVector(vec![Rat::ratio(1, 2), Rat::ratio(1, 2)]);
        assert!(p.membership(&inside).unwrap());
        assert!(c1.membership(&inside).unwrap());
    }

    #[test]
    fn affine_hull_of_segment() {
        let seg = poly(
            2,
            vec![
                (vec![0, 1], Rel::Eq, 0),
                (vec![-1, 0], Rel::Le, 0),
                (vec![1, 0], Rel::Le, 1),
            ],
        );
        let flat = affine_hull(&seg).unwrap();
        assert_eq!(flat.basepoint, qv(&[0, 0]));
        assert_eq!(flat.basis, vec![qv(&[1, 0])]);
    }

    #[test]
    fn affine_hull_of_square_is_plane() {
        let sq = poly(
            2,
            vec![
                (vec![-1, 0], Rel::Le, 0),
                (vec![1, 0], Rel::Le, 1),
                (vec![0, -1], Rel::Le, 0),
                (vec![0, 1], Rel::Le, 1),
            ],
        );
        let flat = affine_hull(&sq).unwrap();
        assert_eq!(flat.basepoint, qv(&[0, 0]));
        assert_eq!(flat.basis, vec![qv(&[1, 0]), qv(&[0, 1])]);
    }

    #[test]
    fn affine_hull_detects_implicit_equality() {
        let p = poly(2, vec![(vec![1, 1], Rel::Le, 1), (vec![-1, -1], Rel::Le, -1)]);
        let flat = affine_hull(&p).unwrap();
        assert_eq!(flat.flat_dim(), 1);
        assert!(flat.contains(&qv(&[1, 0])));
        assert!(flat.contains(&qv(&[0, 1])));
        assert!(!flat.contains(&qv(&[0, 0])));
    }

    #[test]
    fn affine_hull_of_empty_errors() {
        let p = GenPolyhedron::empty(2);
        assert!(matches!(affine_hull(&p), Err(Error::EmptyInput(_))));
    }

    #[test]
    fn ri_rows_of_square_is_open_square() {
        let sq = poly(
            2,
            vec![
                (vec![-1, 0], Rel::Le, 0),
                (vec![1, 0], Rel::Le, 1),
                (vec![0, -1], Rel::Le, 0),
                (vec![0, 1], Rel::Le, 1),
            ],
        );
        let ri = ri_rows(&sq).unwrap();
        let half = QVector(vec![Rat::ratio(1, 2), Rat::ratio(1, 2)]);
        assert!(ri.membership(&half).unwrap());
        assert!(!ri.membership(&qv(&[0, 0])).unwrap());
        assert!(ri.constraints.iter().all(|c| c.rel == Rel::Lt));
    }

    #[test]
    fn ri_rows_keeps_implicit_equalities() {
        let seg = poly(
            2,
            vec![
                (vec![0, 1], Rel::Le, 0),
                (vec![0, -1], Rel::Le, 0),
                (vec![-1, 0], Rel::Le, 0),
                (vec![1, 0], Rel::Le, 1),
            ],
        );
        let ri = ri_rows(&seg).unwrap();
        let mid = QVector(vec![Rat::ratio(1, 2), Rat::zero()]);
        assert!(ri.membership(&mid).unwrap());
        assert!(!ri.membership(&qv(&[0, 0])).unwrap());
        assert!(!ri.membership(&QVector(vec![Rat::ratio(1, 2), Rat::ratio(1, 8)])).unwrap());
    }

    #[test]
    fn linear_image_fm_projects_triangle() {
        let tri = poly(
            2,
            vec![
                (vec![-1, 0], Rel::Le, 0),
                (vec![0, -1], Rel::Le, 0),
                (vec![1, 1], Rel::Le, 1),
            ],
        );
        let t = QMatrix::from_rows(vec![qv(&[1, 0])]).unwrap();
        let img = linear_image_fm(&tri, &t).unwrap();
        let expect = poly(1, vec![(vec![1], Rel::Le, 1), (vec![-1], Rel::Le, 0)]);
        assert!(poly_equal(&img, &expect).unwrap());
    }

    #[test]
    fn linear_image_fm_keeps_strictness() {
        let half_open = poly(1, vec![(vec![-1], Rel::Le, 0), (vec![1], Rel::Lt, 1)]);
        let t = QMatrix::from_rows(vec![qv(&[2])]).unwrap();
        let img = linear_image_fm(&half_open, &t).unwrap();
        let expect = poly(1, vec![(vec![-1], Rel::Le, 0), (vec![1], Rel::Lt, 2)]);
        assert!(poly_equal(&img, &expect).unwrap());
    }

    #[test]
    fn minkowski_sum_fm_of_segments_is_square() {
        let seg_x = poly(
            2,
            vec![
                (vec![0, 1], Rel::Eq, 0),
                (vec![-1, 0], Rel::Le, 0),
                (vec![1, 0], Rel::Le, 1),
            ],
        );
        let seg_y = poly(
            2,
            vec![
                (vec![1, 0], Rel::Eq, 0),
                (vec![0, -1], Rel::Le, 0),
                (vec![0, 1], Rel::Le, 1),
            ],
        );
        let sum = minkowski_sum_fm(&seg_x, &seg_y).unwrap();
        let square = poly(
            2,
            vec![
                (vec![-1, 0], Rel::Le, 0),
                (vec![1, 0], Rel::Le, 1),
                (vec![0, -1], Rel::Le, 0),
                (vec![0, 1], Rel::Le, 1),
            ],
        );
        assert!(poly_equal(&sum, &square).unwrap());
        assert_eq!(canonicalize(&sum).unwrap(), canonicalize(&square).unwrap());
    }
}
