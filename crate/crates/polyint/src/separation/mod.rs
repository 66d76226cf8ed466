//! Separating hyperplanes between nearly convex sets.
//!
//! Everything reduces to the difference body `D = hull(Ω₁) ⊖ hull(Ω₂)`:
//!
//! - the sets are *properly* separable (a hyperplane puts Ω₁ on the `≤`
//!   side, Ω₂ on the `≥` side, and does not contain both) iff `0 ∉ ri(D)`;
//! - they are separable at all iff `0 ∉ int(D)`;
//! - strict separation corresponds to `0 ∉ cl(D)`.
//!
//! The functional `x*` is read off a canonical row of `cl D` that excludes
//! the origin: an affine-hull equation with nonzero right-hand side, a
//! violated facet, or a facet active at the origin. Every witness is then
//! re-verified against the *original* union pieces by exact sup/inf linear
//! programs — the verdict never rests on the hull computation alone.
//!
//! Suprema and infima of a linear functional agree between a nearly convex
//! set, its hull, and the hull's closure, which is why hull arithmetic
//! decides separation of the bodies.

use serde::Serialize;

use crate::exactnum::{lp_solve, LinRow, LpOutcome, LpProblem, QVector, Rat, Sense};
use crate::genpoly::{
    affine_hull, canonicalize, closure, minkowski_sum, minkowski_sum_fm, negate, poly_equal,
    ri_rows, GenPolyhedron, Rel,
};
use crate::nearconvex::{classify, qri_of_nearly_convex, NearlyConvexSet, SetClass, UnionSet};
use crate::{Budget, Error, Result, Strategy};

/// Outcome of a separation query. `x*` points from Ω₂ toward Ω₁:
/// `sup⟨x*, Ω₁⟩ ≤ level ≤ inf⟨x*, Ω₂⟩`.
#[derive(Clone, Debug, Serialize)]
pub struct SeparationReport {
    /// Some hyperplane separates the sets (possibly containing both).
    pub separable: bool,
    /// Some hyperplane separates them without containing both.
    pub proper: bool,
    /// The separating functional, when one exists.
    pub xstar: Option<QVector>,
    /// A level between the two sides, when one exists.
    pub level: Option<Rat>,
    /// True iff the returned functional separates strictly:
    /// `sup⟨x*, Ω₁⟩ < inf⟨x*, Ω₂⟩`.
    pub strict_pair: bool,
}

/// One-sided extent of a linear functional over a set.
#[derive(Clone, Debug, PartialEq)]
enum Extent {
    Finite(Rat),
    Unbounded,
}

/// Exact `(inf, sup)` of `⟨functional, ·⟩` over a union, piece by piece.
/// `Unbounded` means `−∞` on the inf side and `+∞` on the sup side.
fn linear_bounds(omega: &UnionSet, functional: &QVector) -> Result<(Extent, Extent)> {
    let mut inf: Option<Extent> = None;
    let mut sup: Option<Extent> = None;
    for piece in &omega.pieces {
        // Linear bounds are insensitive to strict faces.
        let closed = closure(piece)?;
        let rows: Vec<LinRow> = closed
            .constraints
            .iter()
            .map(|c| match c.rel {
                Rel::Eq => LinRow::eq(c.a.clone(), c.b.clone()),
                _ => LinRow::le(c.a.clone(), c.b.clone()),
            })
            .collect();
        for sense in [Sense::Min, Sense::Max] {
            let outcome = lp_solve(&LpProblem {
                dim: omega.dim,
                sense,
                objective: functional.clone(),
                rows: rows.clone(),
            })?;
            let extent = match outcome {
                LpOutcome::Optimal { value, .. } => Extent::Finite(value),
                LpOutcome::Unbounded { .. } => Extent::Unbounded,
                LpOutcome::Infeasible { .. } => {
                    unreachable!("union pieces are nonempty by construction")
                }
            };
            let slot = if sense == Sense::Min { &mut inf } else { &mut sup };
            *slot = Some(match (slot.take(), extent) {
                (None, e) => e,
                (Some(Extent::Unbounded), _) | (_, Extent::Unbounded) => Extent::Unbounded,
                (Some(Extent::Finite(a)), Extent::Finite(b)) => {
                    if (sense == Sense::Min) == (b < a) {
                        Extent::Finite(b)
                    } else {
                        Extent::Finite(a)
                    }
                }
            });
        }
    }
    Ok((
        inf.expect("nearly convex sets have at least one piece"),
        sup.expect("nearly convex sets have at least one piece"),
    ))
}

/// `sup ≤ inf` where the left side treats `Unbounded` as `+∞` and the
/// right side as `−∞`.
fn sup_le_inf(s: &Extent, i: &Extent) -> bool {
    matches!((s, i), (Extent::Finite(a), Extent::Finite(b)) if a <= b)
}

/// `inf < sup` with `Unbounded` as `−∞` on the left and `+∞` on the right.
fn inf_lt_sup(i: &Extent, s: &Extent) -> bool {
    match (i, s) {
        (Extent::Unbounded, _) | (_, Extent::Unbounded) => true,
        (Extent::Finite(a), Extent::Finite(b)) => a < b,
    }
}

/// The closed difference body `cl hull(Ω₁) ⊖ cl hull(Ω₂)`, canonical.
fn difference_body(
    o1: &NearlyConvexSet,
    o2: &NearlyConvexSet,
    budget: &Budget,
) -> Result<GenPolyhedron> {
    let q1 = closure(o1.hull())?;
    let q2 = negate(&closure(o2.hull())?, budget)?;
    canonicalize(&minkowski_sum(&q1, &q2, budget)?)
}

/// A functional with `sup⟨x*, D⟩ ≤ 0` read off canonical rows of `cl D`,
/// given that `0 ∉ ri(D)`. Ordered by strength: origin outside the affine
/// hull, outside the closure, or on the relative boundary. Active facets
/// are never implicit equalities in canonical form, so properness holds.
fn separating_row(c: &GenPolyhedron) -> Option<QVector> {
    for row in &c.constraints {
        if row.rel == Rel::Eq && !row.b.is_zero() {
            return Some(if row.b.is_positive() { row.a.neg() } else { row.a.clone() });
        }
    }
    for row in &c.constraints {
        if row.rel != Rel::Eq && row.b.is_negative() {
            return Some(row.a.clone());
        }
    }
    for row in &c.constraints {
        if row.rel != Rel::Eq && row.b.is_zero() {
            return Some(row.a.clone());
        }
    }
    None
}

/// Decides separability of two nearly convex sets and produces a
/// re-verified functional when one exists.
pub fn properly_separate(
    o1: &NearlyConvexSet,
    o2: &NearlyConvexSet,
    budget: &Budget,
) -> Result<SeparationReport> {
    let dim = o1.body().dim;
    if o2.body().dim != dim {
        return Err(Error::Dimension(format!(
            "separating sets of dimensions {dim} and {}",
            o2.body().dim
        )));
    }
    let d = difference_body(o1, o2, budget)?;
    let zero = QVector::zeros(dim);
    let proper = !ri_rows(&d)?.membership(&zero)?;

    if proper {
        let xstar =
            separating_row(&d).expect("an origin outside ri(D) violates some canonical row");
        let (i1, s1) = linear_bounds(o1.body(), &xstar)?;
        let (i2, s2) = linear_bounds(o2.body(), &xstar)?;
        assert!(
            sup_le_inf(&s1, &i2),
            "separation witness failed sup/inf re-verification"
        );
        assert!(
            inf_lt_sup(&i1, &s2),
            "proper separation witness failed the non-degeneracy re-verification"
        );
        let (Extent::Finite(s1), Extent::Finite(i2)) = (s1, i2) else { unreachable!() };
        let strict = s1 < i2;
        let level = (&s1 + &i2) * Rat::ratio(1, 2);
        return Ok(SeparationReport {
            separable: true,
            proper: true,
            xstar: Some(xstar),
            level: Some(level),
            strict_pair: strict,
        });
    }

    let flat = affine_hull(&d)?;
    if flat.basis.len() < dim {
        // 0 ∈ ri(D) but D spans a proper flat: a hyperplane containing
        // both sets separates them improperly.
        let normal = flat
            .equality_system()
            .constraints
            .first()
            .expect("a proper flat yields at least one equation")
            .a
            .clone();
        let (i1, s1) = linear_bounds(o1.body(), &normal)?;
        let (i2, s2) = linear_bounds(o2.body(), &normal)?;
        let level = match (&i1, &s1) {
            (Extent::Finite(a), Extent::Finite(b)) if a == b => a.clone(),
            _ => panic!("improper separation witness failed re-verification"),
        };
        assert!(
            i2 == Extent::Finite(level.clone()) && s2 == Extent::Finite(level.clone()),
            "improper separation witness failed re-verification"
        );
        return Ok(SeparationReport {
            separable: true,
            proper: false,
            xstar: Some(normal),
            level: Some(level),
            strict_pair: false,
        });
    }

    Ok(SeparationReport {
        separable: false,
        proper: false,
        xstar: None,
        level: None,
        strict_pair: false,
    })
}

/// Separation of the singleton `{x̄}` from `Ω`, with `{x̄}` on the `≤`
/// side. For `x̄ ∈ Ω` this decides quasi-relative interiority: the point
/// is properly separable from the set iff it lies outside `qri(Ω)`.
pub fn point_set_separation(
    omega: &NearlyConvexSet,
    xbar: &QVector,
    budget: &Budget,
    strategy: Strategy,
) -> Result<SeparationReport> {
    let singleton = UnionSet::from_piece(GenPolyhedron::point(xbar))?;
    let point_set = NearlyConvexSet::new(singleton, budget, strategy)?;
    properly_separate(&point_set, omega, budget)
}

/// Joint report for the separation ⟺ disjoint-quasi-relative-interiors
/// equivalence on intersecting nearly convex sets.
#[derive(Clone, Debug, Serialize)]
pub struct QriEquivalence {
    /// Class of the difference set `Ω₁ − Ω₂` (expected nearly convex).
    pub difference_class: SetClass,
    /// Whether `qri(Ω₁ − Ω₂) = qri(Ω₁) − qri(Ω₂)` held exactly.
    pub qri_difference_matches: bool,
    /// Whether the sets are properly separable.
    pub properly_separable: bool,
    /// Whether `qri(Ω₁) ∩ qri(Ω₂) = ∅`.
    pub qri_disjoint: bool,
    /// The equivalence itself: separable iff disjoint, plus the difference
    /// identity.
    pub holds: bool,
}

/// Checks, for intersecting nearly convex sets, that proper separability
/// coincides with disjointness of the quasi-relative interiors, and that
/// the interior of the difference is the difference of the interiors.
///
/// The two sides travel independent routes: separation goes through
/// generator arithmetic on hulls, the interiors through facet arithmetic.
pub fn qri_disjointness_equivalence(
    o1: &NearlyConvexSet,
    o2: &NearlyConvexSet,
    budget: &Budget,
    strategy: Strategy,
) -> Result<QriEquivalence> {
    let dim = o1.body().dim;
    if o2.body().dim != dim {
        return Err(Error::Dimension(format!(
            "comparing sets of dimensions {dim} and {}",
            o2.body().dim
        )));
    }
    let mut intersecting = false;
    'outer: for p in &o1.body().pieces {
        for q in &o2.body().pieces {
            if !p.intersect(q)?.is_empty_fast()? {
                intersecting = true;
                break 'outer;
            }
        }
    }
    if !intersecting {
        return Err(Error::Input(
            "the equivalence requires intersecting sets".into(),
        ));
    }

    let a = qri_of_nearly_convex(o1)?;
    let b = qri_of_nearly_convex(o2)?;
    let qri_disjoint = a.intersect(&b)?.is_empty_fast()?;

    // Ω₁ − Ω₂, piece by piece, classified from scratch.
    let mut diff_pieces = Vec::new();
    for p in &o1.body().pieces {
        for q in &o2.body().pieces {
            diff_pieces.push(minkowski_sum_fm(p, &q.negate_rows())?);
        }
    }
    let diff = UnionSet::new(dim, diff_pieces)?;
    let report = classify(&diff, budget, strategy)?;
    let qri_of_diff = ri_rows(&report.hull)?;
    let qri_formula = minkowski_sum_fm(&a, &b.negate_rows())?;
    let qri_difference_matches = report.class != SetClass::Neither
        && poly_equal(&qri_of_diff, &qri_formula)?;

    let properly_separable = properly_separate(o1, o2, budget)?.proper;
    let holds = qri_difference_matches && (properly_separable == qri_disjoint);
    Ok(QriEquivalence {
        difference_class: report.class,
        qri_difference_matches,
        properly_separable,
        qri_disjoint,
        holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::genpoly::Constraint;

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

    fn nc(p: GenPolyhedron) -> NearlyConvexSet {
        NearlyConvexSet::new(
            UnionSet::from_piece(p).unwrap(),
            &Budget::default(),
            Strategy::Sequential,
        )
        .unwrap()
    }

    fn square(x0: i64, y0: i64, x1: i64, y1: i64) -> GenPolyhedron {
        poly(
            2,
            vec![
                (vec![-1, 0], Rel::Le, -x0),
                (vec![1, 0], Rel::Le, x1),
                (vec![0, -1], Rel::Le, -y0),
                (vec![0, 1], Rel::Le, y1),
            ],
        )
    }

    fn x_axis_segment(a: i64, b: i64) -> GenPolyhedron {
        poly(
            2,
            vec![
                (vec![0, 1], Rel::Eq, 0),
                (vec![-1, 0], Rel::Le, -a),
                (vec![1, 0], Rel::Le, b),
            ],
        )
    }

    #[test]
    fn wedge_and_axis_touch_properly() {
        // Wedge {y ≥ |x|} and the x-axis meet only at the origin; the axis
        // itself is the unique separating hyperplane, attained not strict.
        let wedge = nc(poly(2, vec![(vec![1, -1], Rel::Le, 0), (vec![-1, -1], Rel::Le, 0)]));
        let axis = nc(poly(2, vec![(vec![0, 1], Rel::Eq, 0)]));
        let report = properly_separate(&wedge, &axis, &Budget::default()).unwrap();
        assert!(report.separable && report.proper && !report.strict_pair);
        // Wedge on the ≤ side forces the downward normal.
        assert_eq!(report.xstar.unwrap(), qv(&[0, -1]));
        assert_eq!(report.level.unwrap(), Rat::zero());
    }

    #[test]
    fn disjoint_squares_separate_strictly() {
        let left = nc(square(0, 0, 1, 1));
        let right = nc(square(3, 0, 4, 1));
        let report = properly_separate(&left, &right, &Budget::default()).unwrap();
        assert!(report.separable && report.proper && report.strict_pair);
        assert_eq!(report.xstar.unwrap(), qv(&[1, 0]));
        assert_eq!(report.level.unwrap(), Rat::int(2));
    }

    #[test]
    fn overlapping_squares_do_not_separate() {
        let a = nc(square(0, 0, 2, 2));
        let b = nc(square(1, 1, 3, 3));
        let report = properly_separate(&a, &b, &Budget::default()).unwrap();
        assert!(!report.separable && !report.proper);
        assert!(report.xstar.is_none() && report.level.is_none());
        assert!(!report.strict_pair);
    }

    #[test]
    fn identical_segments_separate_only_improperly() {
        let s1 = nc(x_axis_segment(0, 1));
        let s2 = nc(x_axis_segment(0, 1));
        let report = properly_separate(&s1, &s2, &Budget::default()).unwrap();
        assert!(report.separable && !report.proper && !report.strict_pair);
        // Both sets live in the hyperplane ⟨(0,1), ·⟩ = 0.
        assert_eq!(report.xstar.unwrap(), qv(&[0, 1]));
        assert_eq!(report.level.unwrap(), Rat::zero());
    }

    #[test]
    fn segment_under_square_separates_despite_meeting() {
        // The segment lies on the square's bottom edge: they intersect but
        // the relative interiors are disjoint, so separation is proper.
        let seg = nc(x_axis_segment(0, 1));
        let sq = nc(square(0, 0, 1, 1));
        let report = properly_separate(&seg, &sq, &Budget::default()).unwrap();
        assert!(report.separable && report.proper && !report.strict_pair);
        // D = segment ⊖ square = [−1,1]×[−1,0]; its facet d₂ ≤ 0 is active
        // at the origin, so x* = (0,1) with the segment on the ≤ side.
        assert_eq!(report.xstar.unwrap(), qv(&[0, 1]));
        assert_eq!(report.level.unwrap(), Rat::zero());
    }

    #[test]
    fn point_separation_tracks_qri() {
        use crate::interiors::{interior_membership, InteriorKind};
        let sq = nc(square(0, 1, 2, 3));
        let budget = Budget::default();
        let samples = [
            (qv(&[1, 2]), true),  // center
            (qv(&[0, 2]), false), // edge midpoint
            (qv(&[2, 3]), false), // corner
        ];
        for (x, in_qri) in samples {
            let sep = point_set_separation(&sq, &x, &budget, Strategy::Sequential).unwrap();
            assert_eq!(sep.proper, !in_qri, "at {x:?}");
            let cert = interior_membership(
                InteriorKind::Qri,
                sq.body(),
                &x,
                &budget,
                Strategy::Sequential,
            )
            .unwrap();
            assert_eq!(cert.member, in_qri, "qri at {x:?}");
        }
    }

    #[test]
    fn point_outside_set_separates_strictly() {
        let sq = nc(square(0, 0, 1, 1));
        let report =
            point_set_separation(&sq, &qv(&[-2, 0]), &Budget::default(), Strategy::Sequential)
                .unwrap();
        assert!(report.separable && report.proper && report.strict_pair);
    }

    #[test]
    fn half_open_bodies_use_piece_lps_for_verification() {
        // Ω₁ nearly convex: the open square with one corner; separation
        // from a translate must verify against the literal pieces.
        let open = poly(
            2,
            vec![
                (vec![-1, 0], Rel::Lt, 0),
                (vec![1, 0], Rel::Lt, 1),
                (vec![0, -1], Rel::Lt, 0),
                (vec![0, 1], Rel::Lt, 1),
            ],
        );
        let corner = GenPolyhedron::point(&qv(&[0, 0]));
        let body = UnionSet::new(2, vec![open, corner]).unwrap();
        let o1 = NearlyConvexSet::new(body, &Budget::default(), Strategy::Sequential).unwrap();
        let o2 = nc(square(1, 0, 2, 1));
        let report = properly_separate(&o1, &o2, &Budget::default()).unwrap();
        assert!(report.separable && report.proper);
        assert_eq!(report.xstar.unwrap(), qv(&[1, 0]));
        // sup over Ω₁ is 1 (not attained), inf over Ω₂ is 1: proper but
        // not strict, level 1.
        assert!(!report.strict_pair);
        assert_eq!(report.level.unwrap(), Rat::int(1));
    }

    #[test]
    fn equivalence_on_touching_squares() {
        let a = nc(square(0, 0, 1, 1));
        let b = nc(square(1, 0, 2, 1));
        let eq =
            qri_disjointness_equivalence(&a, &b, &Budget::default(), Strategy::Sequential)
                .unwrap();
        assert_eq!(eq.difference_class, SetClass::Convex);
        assert!(eq.qri_difference_matches);
        assert!(eq.properly_separable);
        assert!(eq.qri_disjoint);
        assert!(eq.holds);
    }

    #[test]
    fn equivalence_on_identical_squares() {
        let a = nc(square(0, 0, 2, 2));
        let b = nc(square(0, 0, 2, 2));
        let eq =
            qri_disjointness_equivalence(&a, &b, &Budget::default(), Strategy::Sequential)
                .unwrap();
        assert!(!eq.properly_separable);
        assert!(!eq.qri_disjoint);
        assert!(eq.qri_difference_matches);
        assert!(eq.holds);
    }

    #[test]
    fn equivalence_requires_intersection() {
        let a = nc(square(0, 0, 1, 1));
        let b = nc(square(5, 5, 6, 6));
        let out = qri_disjointness_equivalence(&a, &b, &Budget::default(), Strategy::Sequential);
        assert!(matches!(out, Err(Error::Input(_))));
    }

    #[test]
    fn report_json_shape() {
        let left = nc(square(0, 0, 1, 1));
        let right = nc(square(3, 0, 4, 1));
        let report = properly_separate(&left, &right, &Budget::default()).unwrap();
        let json = serde_json::to_value(&report).unwrap();
        assert_eq!(json["separable"], true);
        assert_eq!(json["proper"], true);
        assert_eq!(json["strict_pair"], true);
        assert_eq!(json["level"], "2");
        assert_eq!(json["xstar"][0], "1");
    }
}
