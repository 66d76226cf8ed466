//! Canonical forms and redundancy elimination.
//!
//! The canonical H-form fixes: an empty set is always `{0 · x ≤ −1}`;
//! implicit equalities (inequality rows that hold with equality everywhere)
//! are rewritten as `=` rows; the equality system is reduced to its row
//! echelon basis; inequality normals are reduced modulo that basis, scaled
//! to integers with gcd 1 (positive scaling only, so half-space orientation
//! is preserved; equality rows are additionally sign-fixed to a positive
//! leading coefficient); redundant rows are removed by LP implication tests;
//! rows are sorted lexicographically. Two runs on the same input are
//! byte-identical.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::exactnum::{optimize, LinRel, LinRow, LpOutcome, QMatrix, QVector, Rat, Sense};
use crate::Result;

use super::types::{Constraint, GenPolyhedron, Rel};

/// Scales a row to an integer normal with gcd 1 using a positive factor;
/// equality rows are additionally flipped to a positive leading coefficient.
pub fn normalize_row(c: &Constraint) -> Constraint {
    if c.is_trivial() {
        return c.clone();
    }
    let mut lcm = BigInt::one();
    for entry in c.a.iter() {
        lcm = lcm.lcm(&entry.denom());
    }
    let mut gcd = BigInt::zero();
    for entry in c.a.iter() {
        let scaled = entry.numer() * (&lcm / entry.denom());
        gcd = gcd.gcd(&scaled);
    }
    debug_assert!(!gcd.is_zero());
    let factor = Rat::new(lcm, gcd).expect("gcd of a nonzero row is nonzero");
    let mut a = c.a.scale(&factor);
    let mut b = &c.b * &factor;
    if c.rel == Rel::Eq {
        let leading = a.iter().find(|v| !v.is_zero());
        if leading.is_some_and(Rat::is_negative) {
            a = a.neg();
            b = -b;
        }
    }
    Constraint::new(a, c.rel, b)
}

/// Drops satisfied trivial rows and exact duplicates (after normalization).
/// Violated trivial rows are kept; they encode emptiness.
pub fn tidy_rows(rows: &[Constraint]) -> Vec<Constraint> {
    let mut out: Vec<Constraint> = Vec::with_capacity(rows.len());
    for row in rows {
        let row = normalize_row(row);
        if row.is_trivial() && row.trivial_truth() {
            continue;
        }
        if !out.contains(&row) {
            out.push(row);
        }
    }
    out
}

/// True iff `context` (as a conjunction) implies `row`, i.e. every point of
/// the context satisfies the row. Decided by emptiness of context ∧ ¬row.
pub fn implies_row(dim: usize, context: &[Constraint], row: &Constraint) -> Result<bool> {
    for negated in row.complement() {
        let mut rows = context.to_vec();
        rows.push(negated);
        let p = GenPolyhedron { dim, constraints: rows };
        if !p.is_empty_fast()? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// True iff `p ⊆ q` as sets (exact, via row implication).
pub fn poly_subset(p: &GenPolyhedron, q: &GenPolyhedron) -> Result<bool> {
    if p.is_empty_fast()? {
        return Ok(true);
    }
    for row in &q.constraints {
        if !implies_row(p.dim, &p.constraints, row)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// True iff `p` and `q` are the same set.
pub fn poly_equal(p: &GenPolyhedron, q: &GenPolyhedron) -> Result<bool> {
    Ok(poly_subset(p, q)? && poly_subset(q, p)?)
}

/// Removes rows implied by the remaining ones, scanning in ascending index
/// order. Assumes the system is consistent.
pub fn prune_redundant(dim: usize, rows: &[Constraint]) -> Result<Vec<Constraint>> {
    let mut live: Vec<Constraint> = tidy_rows(rows);
    let mut i = 0;
    while i < live.len() {
        let candidate = live[i].clone();
        let mut rest = live.clone();
        rest.remove(i);
        if implies_row(dim, &rest, &candidate)? {
            live.remove(i);
        } else {
            i += 1;
        }
    }
    Ok(live)
}

/// Finds the `≤` rows that hold with equality on all of `p` (assumed
/// nonempty) by minimizing each row functional over the relaxation.
fn implicit_equality_mask(p: &GenPolyhedron) -> Result<Vec<bool>> {
    let relaxed: Vec<LinRow> = p
        .relaxation()
        .constraints
        .iter()
        .map(|c| LinRow {
            a: c.a.clone(),
            rel: if c.rel == Rel::Eq { LinRel::Eq } else { LinRel::Le },
            b: c.b.clone(),
        })
        .collect();
    let mut mask = vec![false; p.constraints.len()];
    for (i, c) in p.constraints.iter().enumerate() {
        if c.rel != Rel::Le || c.is_trivial() {
            continue;
        }
        if let LpOutcome::Optimal { value, .. } = optimize(Sense::Min, &c.a, &relaxed)? {
            mask[i] = value == c.b;
        }
    }
    Ok(mask)
}

/// Full canonicalization as described in the module docs.
pub fn canonicalize(p: &GenPolyhedron) -> Result<GenPolyhedron> {
    p.validate()?;
    if p.is_empty_fast()? {
        return Ok(GenPolyhedron::empty(p.dim));
    }
    let rows = tidy_rows(&p.constraints);
    let tidied = GenPolyhedron { dim: p.dim, constraints: rows };
    let implicit = implicit_equality_mask(&tidied)?;

    let mut eq_rows: Vec<Constraint> = Vec::new();
    let mut ineq_rows: Vec<Constraint> = Vec::new();
    for (i, c) in tidied.constraints.iter().enumerate() {
        if c.rel == Rel::Eq || implicit[i] {
            eq_rows.push(Constraint::new(c.a.clone(), Rel::Eq, c.b.clone()));
        } else {
            ineq_rows.push(c.clone());
        }
    }

    // Echelon basis of the equality system over [normal | rhs].
    let mut eq_canon: Vec<Constraint> = Vec::new();
    let mut echelon: Vec<(QVector, Rat, usize)> = Vec::new();
    if !eq_rows.is_empty() {
        let n = p.dim;
        let aug: Vec<QVector> = eq_rows
            .iter()
            .map(|c| {
                let mut v = c.a.clone();
                v.0.push(c.b.clone());
                v
            })
            .collect();
        let mut m = QMatrix::from_rows(aug).expect("rows share dimension");
        let pivots = m.rref();
        for (r, &pc) in pivots.iter().enumerate() {
            debug_assert!(pc < n, "inconsistent equalities in a nonempty system");
            let row = m.row_vec(r);
            let a = row.slice(0, n);
            let b = row[n].clone();
            echelon.push((a.clone(), b.clone(), pc));
            eq_canon.push(normalize_row(&Constraint::new(a, Rel::Eq, b)));
        }
    }

    // Reduce inequality normals modulo the equality echelon.
    let mut reduced: Vec<Constraint> = Vec::new();
    for c in &ineq_rows {
        let mut a = c.a.clone();
        let mut b = c.b.clone();
        for (ea, eb, pc) in &echelon {
            let k = a[*pc].clone();
            if !k.is_zero() {
                a = a.axpy(&-&k, ea);
                b = &b - &(&k * eb);
            }
        }
        let row = Constraint::new(a, c.rel, b);
        if row.is_trivial() {
            debug_assert!(row.trivial_truth(), "nonempty system with violated trivial row");
            continue;
        }
        reduced.push(row);
    }

    let mut all = eq_canon;
    let pruned_context: Vec<Constraint> = {
        let mut ctx = all.clone();
        ctx.extend(reduced.iter().cloned());
        let mut keep: Vec<Constraint> = tidy_rows(&ctx);
        // Equality rows stay; inequality rows are pruned against everything.
        let mut i = 0;
        while i < keep.len() {
            if keep[i].rel == Rel::Eq {
                i += 1;
                continue;
            }
            let candidate = keep[i].clone();
            let mut rest = keep.clone();
            rest.remove(i);
            if implies_row(p.dim, &rest, &candidate)? {
                keep.remove(i);
            } else {
                i += 1;
            }
        }
        keep
    };
    all = pruned_context;
    all.sort();
    Ok(GenPolyhedron { dim: p.dim, constraints: all })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::QVector;

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
    fn normalization_scales_to_coprime_integers() {
        let c = Constraint::new(
            QVector(vec![Rat::ratio(2, 3), Rat::ratio(4, 3)]),
            Rel::Le,
            Rat::ratio(1, 3),
        );
        let n = normalize_row(&c);
        assert_eq!(n.a, qv(&[1, 2]));
        assert_eq!(n.b, Rat::ratio(1, 2));
        assert_eq!(n.rel, Rel::Le);
    }

    #[test]
    fn normalization_never_flips_inequalities() {
        let c = Constraint::new(qv(&[-2, 0]), Rel::Le, Rat::int(4));
        let n = normalize_row(&c);
        assert_eq!(n.a, qv(&[-1, 0]));
        assert_eq!(n.b, Rat::int(2));
    }

    #[test]
    fn equality_rows_get_positive_leading_sign() {
        let c = Constraint::new(qv(&[0, -3]), Rel::Eq, Rat::int(6));
        let n = normalize_row(&c);
        assert_eq!(n.a, qv(&[0, 1]));
        assert_eq!(n.b, Rat::int(-2));
    }

    #[test]
    fn canonical_empty_is_pinned() {
        let p = poly(2, vec![(vec![1, 0], Rel::Lt, 0), (vec![-1, 0], Rel::Lt, 0)]);
        let c = canonicalize(&p).unwrap();
        assert_eq!(c, GenPolyhedron::empty(2));
    }

    #[test]
    fn implicit_equalities_become_equality_rows() {
        let p = poly(2, vec![(vec![1, 1], Rel::Le, 1), (vec![-1, -1], Rel::Le, -1)]);
        let c = canonicalize(&p).unwrap();
        assert_eq!(c.constraints.len(), 1);
        assert_eq!(c.constraints[0].rel, Rel::Eq);
        assert_eq!(c.constraints[0].a, qv(&[1, 1]));
        assert_eq!(c.constraints[0].b, Rat::int(1));
    }

    #[test]
    fn combined_implicit_equalities_are_found() {
        // x+y ≤ 1 and x−y ≤ 0 and −2x ≤ −1 force x = 1/2, y = 1/2.
        let p = poly(
            2,
            vec![
                (vec![1, 1], Rel::Le, 1),
                (vec![1, -1], Rel::Le, 0),
                (vec![-2, 0], Rel::Le, -1),
            ],
        );
        let c = canonicalize(&p).unwrap();
        assert!(c.constraints.iter().all(|r| r.rel == Rel::Eq));
        let half = QVector(vec![Rat::ratio(1, 2), Rat::ratio(1, 2)]);
        assert!(c.membership(&half).unwrap());
        assert_eq!(c.constraints.len(), 2);
    }

    #[test]
    fn redundant_rows_are_pruned() {
        let p = poly(
            1,
            vec![
                (vec![1], Rel::Le, 2),
                (vec![1], Rel::Le, 1),
                (vec![1], Rel::Lt, 3),
                (vec![-1], Rel::Le, 0),
            ],
        );
        let c = canonicalize(&p).unwrap();
        assert_eq!(c.constraints.len(), 2);
        assert!(poly_equal(&c, &poly(1, vec![(vec![1], Rel::Le, 1), (vec![-1], Rel::Le, 0)])).unwrap());
    }

    #[test]
    fn strict_row_implies_weak_row() {
        let p = poly(1, vec![(vec![1], Rel::Lt, 1), (vec![1], Rel::Le, 1), (vec![-1], Rel::Le, 0)]);
        let c = canonicalize(&p).unwrap();
        assert_eq!(c.constraints.len(), 2);
        assert!(c.constraints.iter().any(|r| r.rel == Rel::Lt));
    }

    #[test]
    fn inequalities_are_reduced_modulo_equalities() {
        // On the flat x = y, the rows x + y ≤ 2 and 2x ≤ 2 are the same.
        let a = poly(2, vec![(vec![1, -1], Rel::Eq, 0), (vec![1, 1], Rel::Le, 2)]);
        let b = poly(2, vec![(vec![1, -1], Rel::Eq, 0), (vec![2, 0], Rel::Le, 2)]);
        assert_eq!(canonicalize(&a).unwrap(), canonicalize(&b).unwrap());
    }

    #[test]
    fn canonicalize_is_idempotent_and_deterministic() {
        let p = poly(
            2,
            vec![
                (vec![0, 2], Rel::Le, 2),
                (vec![2, 0], Rel::Le, 4),
                (vec![-1, 0], Rel::Le, 0),
                (vec![0, -1], Rel::Le, 0),
                (vec![1, 1], Rel::Le, 10),
            ],
        );
        let once = canonicalize(&p).unwrap();
        let twice = canonicalize(&once).unwrap();
        assert_eq!(once, twice);
        let again = canonicalize(&p).unwrap();
        assert_eq!(once, again);
    }

    #[test]
    fn subset_and_equality_are_semantic() {
        let unit = poly(1, vec![(vec![1], Rel::Le, 1), (vec![-1], Rel::Le, 0)]);
        let doubled = poly(1, vec![(vec![2], Rel::Le, 2), (vec![-3], Rel::Le, 0)]);
        assert!(poly_equal(&unit, &doubled).unwrap());
        let half_open = poly(1, vec![(vec![1], Rel::Lt, 1), (vec![-1], Rel::Le, 0)]);
        assert!(poly_subset(&half_open, &unit).unwrap());
        assert!(!poly_subset(&unit, &half_open).unwrap());
    }
}
