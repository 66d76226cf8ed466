//! Cones of a set at a point: homogenization, exact conic membership, and
//! exact cone decompositions.
//!
//! For a closed polyhedron `P` and base point `x̄`, the set
//! `{v: A v ≤ λ(b − A x̄) for some λ ≥ 0}` is exactly `cl cone(P − x̄)`
//! (the `λ = 0` slice contributes the recession cone, which is the closure's
//! extra boundary). Eliminating `λ` by Fourier-Motzkin therefore yields the
//! closed cone in H-form. The non-closed `cone(P − x̄)` itself is the
//! origin together with the strict-`λ` projection, which stays available
//! both pointwise (a one-variable strict LP) and as an explicit list of
//! generalized polyhedra.

use crate::exactnum::{strict_feasibility, QVector, Rat, StrictRel, StrictRow};
use crate::{Error, Result};

use super::fm::eliminate_var;
use super::types::{Constraint, GenPolyhedron, PolyCone, Rel};

/// Builds the system over `(v, λ)` whose rows read
/// `a · v − (b − a · x̄) λ rel 0` for each row of `p`.
fn lambda_system(p: &GenPolyhedron, xbar: &QVector) -> Vec<Constraint> {
    p.constraints
        .iter()
        .map(|c| {
            let gap = &c.b - &c.a.dot(xbar);
            let mut a = c.a.clone();
            a.0.push(-gap);
            Constraint::new(a, c.rel, Rat::zero())
        })
        .collect()
}

/// The closed cone `cl cone(P − x̄)` of a closed nonempty polyhedron, plus a
/// flag telling whether it equals `cone(P − x̄)` exactly (true iff
/// `x̄ ∈ P`).
pub fn homogenize_cone(p: &GenPolyhedron, xbar: &QVector) -> Result<(PolyCone, bool)> {
    p.validate()?;
    if !p.is_closed_form() {
        return Err(Error::Input(
            "homogenize_cone requires a closed polyhedron; take the closure first".into(),
        ));
    }
    if xbar.dim() != p.dim {
        return Err(Error::Dimension(format!(
            "base point of length {} in dimension {}",
            xbar.dim(),
            p.dim
        )));
    }
    if p.is_empty_fast()? {
        return Err(Error::EmptyInput("cone of the empty set".into()));
    }
    let mut rows = lambda_system(p, xbar);
    let mut lam_nonneg = QVector::zeros(p.dim + 1);
    lam_nonneg[p.dim] = Rat::int(-1);
    rows.push(Constraint::new(lam_nonneg, Rel::Le, Rat::zero()));
    let eliminated = eliminate_var(p.dim + 1, &rows, p.dim)?;
    let constraints: Vec<Constraint> = eliminated
        .into_iter()
        .map(|c| {
            debug_assert!(c.a[p.dim].is_zero());
            Constraint::new(c.a.slice(0, p.dim), c.rel, c.b)
        })
        .collect();
    // Elimination multiplies rows combinatorially; redundancy removal here
    // keeps every downstream covering decision small.
    let constraints = super::canon::prune_redundant(p.dim, &constraints)?;
    let cone = PolyCone::new(GenPolyhedron { dim: p.dim, constraints })
        .expect("homogeneous rows combine to homogeneous rows");
    let exact = p.membership(xbar)?;
    Ok((cone, exact))
}

/// True iff `v ∈ cone(P − x̄)` literally: `v = 0`, or some `λ > 0` scales
/// `x̄ + v/λ` into `P`. Works for arbitrary relation mixes in `p`.
pub fn pointwise_cone_membership(
    p: &GenPolyhedron,
    xbar: &QVector,
    v: &QVector,
) -> Result<bool> {
    p.validate()?;
    if xbar.dim() != p.dim || v.dim() != p.dim {
        return Err(Error::Dimension(format!(
            "cone membership with point lengths {} and {} in dimension {}",
            xbar.dim(),
            v.dim(),
            p.dim
        )));
    }
    if v.is_zero() {
        return Ok(true);
    }
    // One-variable system in λ: (a·x̄ − b) λ rel −a·v, together with λ > 0.
    let mut rows: Vec<StrictRow> = p
        .constraints
        .iter()
        .map(|c| StrictRow {
            a: QVector(vec![&c.a.dot(xbar) - &c.b]),
            rel: match c.rel {
                Rel::Le => StrictRel::Le,
                Rel::Lt => StrictRel::Lt,
                Rel::Eq => StrictRel::Eq,
            },
            b: -&c.a.dot(v),
        })
        .collect();
    rows.push(StrictRow { a: QVector(vec![Rat::int(-1)]), rel: StrictRel::Lt, b: Rat::zero() });
    Ok(strict_feasibility(1, &rows)?.feasible)
}

/// `cone(P − x̄)` as an explicit finite union of generalized polyhedra:
/// the strict-`λ` projection piece (when nonempty) plus the origin.
pub fn exact_cone_pieces(p: &GenPolyhedron, xbar: &QVector) -> Result<Vec<GenPolyhedron>> {
    p.validate()?;
    if xbar.dim() != p.dim {
        return Err(Error::Dimension(format!(
            "base point of length {} in dimension {}",
            xbar.dim(),
            p.dim
        )));
    }
    let mut rows = lambda_system(p, xbar);
    let mut lam_pos = QVector::zeros(p.dim + 1);
    lam_pos[p.dim] = Rat::int(-1);
    rows.push(Constraint::new(lam_pos, Rel::Lt, Rat::zero()));
    let eliminated = eliminate_var(p.dim + 1, &rows, p.dim)?;
    let projected: Vec<Constraint> = eliminated
        .into_iter()
        .map(|c| {
            debug_assert!(c.a[p.dim].is_zero());
            Constraint::new(c.a.slice(0, p.dim), c.rel, c.b)
        })
        .collect();
    let scaled = GenPolyhedron {
        dim: p.dim,
        constraints: super::canon::prune_redundant(p.dim, &projected)?,
    };
    let mut pieces = Vec::with_capacity(2);
    if !scaled.is_empty_fast()? {
        pieces.push(scaled);
    }
    pieces.push(GenPolyhedron::point(&QVector::zeros(p.dim)));
    Ok(pieces)
}
