//! Brute-force interior oracle for ambient dimensions one and two.
//!
//! An independent decision procedure for the six interior notions, used to
//! cross-check the production oracles: it shares no machinery with them —
//! no simplex, no elimination, no double description, no covering search.
//! Everything reduces to two exact primitives:
//!
//! * ray shooting — `∃ t > 0 : x̄ + t·v ∈ P` by one-dimensional interval
//!   intersection over the rows, and
//! * planar angular arithmetic — each piece's cone `cl cone(P − x̄)` is a
//!   circular arc computed from candidate points (pairwise row
//!   intersections plus one sample per boundary line) and recession
//!   directions, compared exactly through cross products.
//!
//! Subspace and covering questions about unions of cones then become
//! finite questions about unions of closed arcs. Pieces are assumed
//! nonempty (union constructors prune empty pieces), which is what makes
//! the closure of a piece equal to its relaxation.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::exactnum::{QVector, Rat};
use crate::genpoly::{GenPolyhedron, Rel};
use crate::nearconvex::UnionSet;
use crate::{Error, Result};

/// All six verdicts plus plain membership at one point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct BruteVerdicts {
    /// `x̄ ∈ Ω`.
    pub member: bool,
    /// Interior relative to the affine hull.
    pub rint: bool,
    /// Relative interior (agrees with `rint` in finite dimension).
    pub ri: bool,
    /// Quasi-interior: closed cone is the whole space.
    pub qi: bool,
    /// Strong quasi-relative interior: cone is a closed subspace.
    pub sqri: bool,
    /// Intrinsic relative interior: cone is a subspace.
    pub iri: bool,
    /// Quasi-relative interior: closed cone is a subspace.
    pub qri: bool,
}

impl BruteVerdicts {
    fn all_false() -> BruteVerdicts {
        BruteVerdicts {
            member: false,
            rint: false,
            ri: false,
            qi: false,
            sqri: false,
            iri: false,
            qri: false,
        }
    }
}

/// Row evaluation; no production code involved.
fn contains(piece: &GenPolyhedron, x: &QVector) -> bool {
    piece.constraints.iter().all(|c| {
        let v = c.a.dot(x);
        match c.rel {
            Rel::Le => v <= c.b,
            Rel::Lt => v < c.b,
            Rel::Eq => v == c.b,
        }
    })
}

/// Like `contains` but with strict rows relaxed: membership in the
/// closure, given that the piece is nonempty.
fn contains_relaxed(piece: &GenPolyhedron, x: &QVector) -> bool {
    piece.constraints.iter().all(|c| {
        let v = c.a.dot(x);
        match c.rel {
            Rel::Le | Rel::Lt => v <= c.b,
            Rel::Eq => v == c.b,
        }
    })
}

/// `∃ t > 0 : x + t v ∈ P`, by intersecting the per-row intervals of
/// admissible `t` over `(0, ∞)`.
fn ray_hits(piece: &GenPolyhedron, x: &QVector, v: &QVector) -> bool {
    // (lo, lo_strict) and optional (hi, hi_strict) bounds on t.
    let mut lo = Rat::zero();
    let mut lo_strict = true;
    let mut hi: Option<(Rat, bool)> = None;
    let raise = |lo: &mut Rat, lo_strict: &mut bool, t: Rat, strict: bool| {
        if t > *lo || (t == *lo && strict && !*lo_strict) {
            *lo = t;
            *lo_strict = strict;
        }
    };
    let cut = |hi: &mut Option<(Rat, bool)>, t: Rat, strict: bool| {
        let replace = match hi {
            None => true,
            Some((cur, cur_strict)) => t < *cur || (t == *cur && strict && !*cur_strict),
        };
        if replace {
            *hi = Some((t, strict));
        }
    };
    for c in &piece.constraints {
        let coef = c.a.dot(v);
        let rhs = &c.b - &c.a.dot(x);
        let sign = coef.signum();
        if sign == 0 {
            let ok = match c.rel {
                Rel::Le => rhs >= Rat::zero(),
                Rel::Lt => rhs > Rat::zero(),
                Rel::Eq => rhs == Rat::zero(),
            };
            if !ok {
                return false;
            }
            continue;
        }
        let t = &rhs / &coef;
        match (c.rel, sign > 0) {
            (Rel::Le, true) => cut(&mut hi, t, false),
            (Rel::Lt, true) => cut(&mut hi, t, true),
            (Rel::Le, false) => raise(&mut lo, &mut lo_strict, t, false),
            (Rel::Lt, false) => raise(&mut lo, &mut lo_strict, t, true),
            (Rel::Eq, _) => {
                cut(&mut hi, t.clone(), false);
                raise(&mut lo, &mut lo_strict, t, false);
            }
        }
    }
    match hi {
        None => true,
        Some((h, h_strict)) => {
            lo < h || (lo == h && !lo_strict && !h_strict)
        }
    }
}

/// Scales a nonzero rational vector to its primitive integer form,
/// preserving orientation, so equal directions compare equal.
fn primitive(v: &QVector) -> QVector {
    let mut l = BigInt::one();
    for c in &v.0 {
        l = l.lcm(&c.denom());
    }
    let ints: Vec<BigInt> = v.0.iter().map(|c| c.numer() * (&l / c.denom())).collect();
    let mut g = BigInt::zero();
    for i in &ints {
        g = g.gcd(i);
    }
    assert!(!g.is_zero(), "primitive form of the zero vector");
    QVector(ints.into_iter().map(|i| Rat::from(i / &g)).collect())
}

fn cross(a: &QVector, b: &QVector) -> Rat {
    &(&a[0] * &b[1]) - &(&a[1] * &b[0])
}

fn dot2(a: &QVector, b: &QVector) -> Rat {
    &(&a[0] * &b[0]) + &(&a[1] * &b[1])
}

fn neg_dir(a: &QVector) -> QVector {
    a.neg()
}

/// Rotate by +90°, giving a direction strictly inside the closed
/// half-plane that runs counterclockwise from `d` to `-d`.
fn perp_ccw(d: &QVector) -> QVector {
    QVector(vec![-&d[1], d[0].clone()])
}

/// A convex planar cone, as its set of directions on the unit circle.
/// Sectors run counterclockwise from `lo` to `hi` with span in `(0, π]`;
/// a span of exactly π (antipodal endpoints) is a closed half-plane.
#[derive(Clone, Debug, PartialEq)]
enum Cone2 {
    Zero,
    Ray(QVector),
    Line(QVector),
    Sector { lo: QVector, hi: QVector },
    Full,
}

/// The conic hull of finitely many directions, exactly.
fn conic_hull(dirs: &[QVector]) -> Cone2 {
    let mut ds: Vec<QVector> = dirs.iter().map(primitive).collect();
    ds.sort();
    ds.dedup();
    if ds.is_empty() {
        return Cone2::Zero;
    }
    let base = ds[0].clone();
    if ds.iter().all(|d| cross(&base, d).signum() == 0) {
        let both = ds.iter().any(|d| dot2(&base, d).signum() < 0);
        return if both { Cone2::Line(base) } else { Cone2::Ray(base) };
    }
    let lo = ds
        .iter()
        .find(|d| ds.iter().all(|e| cross(d, e).signum() >= 0))
        .cloned();
    let hi = ds
        .iter()
        .find(|d| ds.iter().all(|e| cross(e, d).signum() >= 0))
        .cloned();
    match (lo, hi) {
        (Some(lo), Some(hi)) => Cone2::Sector { lo, hi },
        _ => Cone2::Full,
    }
}

/// Closed-arc membership of a primitive direction.
fn in_closed(cone: &Cone2, d: &QVector) -> bool {
    match cone {
        Cone2::Zero => false,
        Cone2::Ray(r) => r == d,
        Cone2::Line(r) => r == d || &neg_dir(r) == d,
        Cone2::Sector { lo, hi } => {
            cross(lo, d).signum() >= 0 && cross(d, hi).signum() >= 0 && {
                // Exclude the antipode of a narrow sector's endpoints: a
                // proper sector never contains both an endpoint and its
                // opposite unless its span is exactly π.
                cross(lo, hi).signum() > 0
                    || dot2(lo, d).signum() >= 0
                    || dot2(hi, d).signum() >= 0
            }
        }
        Cone2::Full => true,
    }
}

/// Strict interior of an arc (always false for degenerate cones).
fn strictly_inside(cone: &Cone2, d: &QVector) -> bool {
    match cone {
        Cone2::Sector { lo, hi } => cross(lo, d).signum() > 0 && cross(d, hi).signum() > 0,
        Cone2::Full => true,
        _ => false,
    }
}

/// Do the closed arcs cover the whole circle of directions? Degenerate
/// cones (rays, lines) have no angular width and cannot close a gap.
fn covers_circle(cones: &[Cone2]) -> bool {
    if cones.iter().any(|c| matches!(c, Cone2::Full)) {
        return true;
    }
    let sectors: Vec<(&QVector, &QVector)> = cones
        .iter()
        .filter_map(|c| match c {
            Cone2::Sector { lo, hi } => Some((lo, hi)),
            _ => None,
        })
        .collect();
    if sectors.is_empty() {
        return false;
    }
    // The union of finitely many closed arcs is the full circle iff no
    // arc end has an uncovered direction just past it.
    sectors.iter().all(|(_, end)| {
        sectors.iter().any(|(lo, hi)| {
            *end != *hi
                && in_closed(&Cone2::Sector { lo: (*lo).clone(), hi: (*hi).clone() }, end)
        })
    })
}

/// Is the union of the closed cones a linear subspace ({0}, a line, or
/// the plane)?
fn closed_union_subspace(cones: &[Cone2]) -> bool {
    if cones.iter().all(|c| matches!(c, Cone2::Zero)) {
        return true;
    }
    let flat = cones
        .iter()
        .all(|c| matches!(c, Cone2::Zero | Cone2::Ray(_) | Cone2::Line(_)));
    if flat {
        let mut fwd: Option<QVector> = None;
        let mut has_fwd = false;
        let mut has_bwd = false;
        for c in cones {
            let dirs: Vec<(QVector, bool)> = match c {
                Cone2::Ray(d) => vec![(d.clone(), true)],
                Cone2::Line(d) => vec![(d.clone(), true), (neg_dir(d), true)],
                _ => vec![],
            };
            for (d, _) in dirs {
                let base = fwd.get_or_insert_with(|| d.clone()).clone();
                if d == base {
                    has_fwd = true;
                } else if d == neg_dir(&base) {
                    has_bwd = true;
                } else {
                    return false;
                }
            }
        }
        return has_fwd && has_bwd;
    }
    // Positive angular width somewhere: only the full plane remains.
    covers_circle(cones)
}

/// One piece's cone at `x̄`, with endpoint attainment for the non-closed
/// (exact) cone questions.
struct PieceCone {
    cone: Cone2,
    /// Attainment of the boundary directions named by the variant:
    /// `(lo, hi)` for sectors, `(d, -d)` for lines, `(d, d)` for rays.
    attained: (bool, bool),
}

/// Candidate points of the piece's closure: pairwise row intersections,
/// one sample per boundary line, and the origin.
fn candidate_points(piece: &GenPolyhedron) -> Vec<QVector> {
    let rows = &piece.constraints;
    let mut cands: Vec<QVector> = vec![QVector::zeros(2)];
    for c in rows {
        if c.a[0].signum() != 0 {
            cands.push(QVector(vec![&c.b / &c.a[0], Rat::zero()]));
        } else {
            cands.push(QVector(vec![Rat::zero(), &c.b / &c.a[1]]));
        }
    }
    for (i, ci) in rows.iter().enumerate() {
        for cj in rows.iter().skip(i + 1) {
            let det = cross(&ci.a, &cj.a);
            if det.signum() == 0 {
                continue;
            }
            let x = &(&(&ci.b * &cj.a[1]) - &(&ci.a[1] * &cj.b)) / &det;
            let y = &(&(&ci.a[0] * &cj.b) - &(&ci.b * &cj.a[0])) / &det;
            cands.push(QVector(vec![x, y]));
        }
    }
    cands.retain(|p| contains_relaxed(piece, p));
    cands.sort();
    cands.dedup();
    cands
}

/// Generators of the recession cone of the (relaxed) piece: boundary
/// perpendiculars and inward normals of every row, plus the axes,
/// filtered by the recession conditions.
fn recession_dirs(piece: &GenPolyhedron) -> Vec<QVector> {
    let mut cands: Vec<QVector> = vec![
        QVector::from_ints(&[1, 0]),
        QVector::from_ints(&[-1, 0]),
        QVector::from_ints(&[0, 1]),
        QVector::from_ints(&[0, -1]),
    ];
    for c in &piece.constraints {
        let p = perp_ccw(&c.a);
        cands.push(p.clone());
        cands.push(neg_dir(&p));
        cands.push(c.a.neg());
    }
    cands.retain(|d| {
        piece.constraints.iter().all(|c| {
            let v = c.a.dot(d);
            match c.rel {
                Rel::Le | Rel::Lt => v <= Rat::zero(),
                Rel::Eq => v == Rat::zero(),
            }
        })
    });
    cands
}

/// `cl cone(P − x̄)` as an arc, with boundary attainment in the original
/// (possibly strict) piece.
fn piece_cone(piece: &GenPolyhedron, x: &QVector) -> PieceCone {
    let mut dirs: Vec<QVector> = Vec::new();
    for p in candidate_points(piece) {
        let d = p.add(&x.neg());
        if d.0.iter().any(|c| c.signum() != 0) {
            dirs.push(d);
        }
    }
    dirs.extend(recession_dirs(piece));
    let cone = conic_hull(&dirs);
    let attained = match &cone {
        Cone2::Sector { lo, hi } => (ray_hits(piece, x, lo), ray_hits(piece, x, hi)),
        Cone2::Line(d) => (ray_hits(piece, x, d), ray_hits(piece, x, &neg_dir(d))),
        Cone2::Ray(d) => {
            let a = ray_hits(piece, x, d);
            (a, a)
        }
        _ => (true, true),
    };
    PieceCone { cone, attained }
}

/// Does the exact (non-closed) cone union contain direction `d`? Only
/// called for boundary candidates; interiors of sectors always belong.
fn exact_union_has(pieces: &[PieceCone], d: &QVector) -> bool {
    pieces.iter().any(|pc| match &pc.cone {
        Cone2::Full => true,
        Cone2::Sector { lo, hi } => {
            strictly_inside(&pc.cone, d)
                || (d == lo && pc.attained.0)
                || (d == hi && pc.attained.1)
        }
        Cone2::Ray(r) => d == r && pc.attained.0,
        Cone2::Line(r) => (d == r && pc.attained.0) || (d == &neg_dir(r) && pc.attained.1),
        Cone2::Zero => false,
    })
}

/// Is the exact cone union a subspace? Assumes membership of `x̄`.
fn exact_union_subspace(pieces: &[PieceCone]) -> bool {
    if pieces.iter().all(|pc| matches!(pc.cone, Cone2::Zero)) {
        return true;
    }
    let flat = pieces
        .iter()
        .all(|pc| matches!(pc.cone, Cone2::Zero | Cone2::Ray(_) | Cone2::Line(_)));
    if flat {
        // The union is within one line; it is that line iff both
        // orientations are attained.
        let mut base: Option<QVector> = None;
        let mut fwd = false;
        let mut bwd = false;
        for pc in pieces {
            let dirs: Vec<(QVector, bool)> = match &pc.cone {
                Cone2::Ray(d) => vec![(d.clone(), pc.attained.0)],
                Cone2::Line(d) => {
                    vec![(d.clone(), pc.attained.0), (neg_dir(d), pc.attained.1)]
                }
                _ => vec![],
            };
            for (d, att) in dirs {
                let b = base.get_or_insert_with(|| d.clone()).clone();
                if d == b {
                    fwd = fwd || att;
                } else if d == neg_dir(&b) {
                    bwd = bwd || att;
                } else {
                    return false;
                }
            }
        }
        return fwd && bwd;
    }
    // Two-dimensional case: the only subspace left is the whole plane,
    // which needs closed coverage plus every boundary direction attained
    // somewhere in the exact union.
    let cones: Vec<Cone2> = pieces.iter().map(|pc| pc.cone.clone()).collect();
    if !covers_circle(&cones) {
        return false;
    }
    let mut boundary: Vec<QVector> = Vec::new();
    for pc in pieces {
        match &pc.cone {
            Cone2::Sector { lo, hi } => {
                boundary.push(lo.clone());
                boundary.push(hi.clone());
            }
            Cone2::Ray(d) => boundary.push(d.clone()),
            Cone2::Line(d) => {
                boundary.push(d.clone());
                boundary.push(neg_dir(d));
            }
            _ => {}
        }
    }
    boundary.sort();
    boundary.dedup();
    boundary
        .iter()
        .all(|d| pieces.iter().any(|pc| strictly_inside(&pc.cone, d)) || exact_union_has(pieces, d))
}

/// Representative directions spanning each cone, for affine-hull rank.
fn span_dirs(cone: &Cone2) -> Vec<QVector> {
    match cone {
        Cone2::Zero => vec![],
        Cone2::Ray(d) | Cone2::Line(d) => vec![d.clone()],
        Cone2::Sector { lo, hi } => {
            let mut v = vec![lo.clone(), hi.clone()];
            if cross(lo, hi).signum() == 0 {
                // Half-plane: endpoints are antipodal, add an interior
                // direction to witness the second dimension.
                v.push(perp_ccw(lo));
            }
            v
        }
        Cone2::Full => vec![QVector::from_ints(&[1, 0]), QVector::from_ints(&[0, 1])],
    }
}

fn rank2(dirs: &[QVector]) -> usize {
    let Some(first) = dirs.first() else { return 0 };
    if dirs.iter().all(|d| cross(first, d).signum() == 0) {
        1
    } else {
        2
    }
}

fn verdicts_dim2(omega: &UnionSet, x: &QVector) -> BruteVerdicts {
    let member = omega.pieces.iter().any(|p| contains(p, x));
    if !member {
        return BruteVerdicts::all_false();
    }
    let all: Vec<PieceCone> = omega.pieces.iter().map(|p| piece_cone(p, x)).collect();
    let local: Vec<Cone2> = omega
        .pieces
        .iter()
        .filter(|p| contains(p, x))
        .map(|p| piece_cone(p, x).cone)
        .collect();
    let closed: Vec<Cone2> = all.iter().map(|pc| pc.cone.clone()).collect();

    let qi = covers_circle(&closed);
    let qri = closed_union_subspace(&closed);
    let iri = exact_union_subspace(&all);
    // Finite-dimensional subspaces are closed, so sqri coincides with iri.
    let sqri = iri;

    let mut dirs: Vec<QVector> = Vec::new();
    for c in &closed {
        dirs.extend(span_dirs(c));
    }
    let rint = match rank2(&dirs) {
        0 => true,
        1 => {
            let d = primitive(&dirs[0]);
            local.iter().any(|c| in_closed(c, &d))
                && local.iter().any(|c| in_closed(c, &neg_dir(&d)))
        }
        _ => covers_circle(&local),
    };
    BruteVerdicts { member, rint, ri: rint, qi, sqri, iri, qri }
}

fn verdicts_dim1(omega: &UnionSet, x: &QVector) -> BruteVerdicts {
    let member = omega.pieces.iter().any(|p| contains(p, x));
    if !member {
        return BruteVerdicts::all_false();
    }
    let plus = QVector::from_ints(&[1]);
    let minus = QVector::from_ints(&[-1]);
    let hit = |dir: &QVector, only_containing: bool| {
        omega
            .pieces
            .iter()
            .filter(|p| !only_containing || contains(p, x))
            .any(|p| ray_hits(p, x, dir))
    };
    let (gp, gm) = (hit(&plus, false), hit(&minus, false));
    let (lp, lm) = (hit(&plus, true), hit(&minus, true));
    let iri = (!gp && !gm) || (gp && gm);
    let rint = (!gp && !gm) || (lp && lm);
    BruteVerdicts {
        member,
        rint,
        ri: rint,
        qi: gp && gm,
        sqri: iri,
        iri,
        // On the line every cone of directions is already closed.
        qri: iri,
    }
}

/// The brute-force verdicts at `x̄`. Errors outside dimensions 1 and 2.
pub fn brute_verdicts(omega: &UnionSet, x: &QVector) -> Result<BruteVerdicts> {
    if x.dim() != omega.dim {
        return Err(Error::Dimension(format!(
            "point of length {} in dimension {}",
            x.dim(),
            omega.dim
        )));
    }
    match omega.dim {
        1 => Ok(verdicts_dim1(omega, x)),
        2 => Ok(verdicts_dim2(omega, x)),
        d => Err(Error::Input(format!(
            "brute-force oracle only covers dimensions 1 and 2, got {d}"
        ))),
    }
}

/// Brute membership alone (any dimension), by row evaluation.
pub fn brute_membership(omega: &UnionSet, x: &QVector) -> bool {
    omega.pieces.iter().any(|p| contains(p, x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::genpoly::Constraint;
    use crate::harness::gen::plus_sign;

    fn qv(e: &[i64]) -> QVector {
        QVector::from_ints(e)
    }

    fn poly(rows: Vec<(Vec<i64>, Rel, i64)>) -> GenPolyhedron {
        GenPolyhedron::new(
            2,
            rows.into_iter()
                .map(|(a, rel, b)| Constraint::new(qv(&a), rel, Rat::int(b)))
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn ray_shooting_respects_strictness() {
        let open = poly(vec![(vec![-1, 0], Rel::Lt, 0), (vec![1, 0], Rel::Lt, 1)]);
        assert!(ray_hits(&open, &qv(&[0, 0]), &qv(&[1, 0])));
        assert!(!ray_hits(&open, &qv(&[1, 0]), &qv(&[1, 0])));
        assert!(ray_hits(&open, &qv(&[1, 0]), &qv(&[-1, 1])));
        let point = GenPolyhedron::point(&qv(&[2, 3]));
        assert!(ray_hits(&point, &qv(&[0, 0]), &qv(&[2, 3])));
        assert!(!ray_hits(&point, &qv(&[0, 0]), &qv(&[3, 2])));
        assert!(!ray_hits(&point, &qv(&[2, 3]), &qv(&[1, 0])));
    }

    #[test]
    fn hull_of_directions() {
        assert_eq!(conic_hull(&[]), Cone2::Zero);
        assert_eq!(conic_hull(&[qv(&[2, 0])]), Cone2::Ray(qv(&[1, 0])));
        assert_eq!(conic_hull(&[qv(&[2, 0]), qv(&[-5, 0])]), Cone2::Line(qv(&[-1, 0])));
        match conic_hull(&[qv(&[1, 0]), qv(&[0, 1])]) {
            Cone2::Sector { lo, hi } => {
                assert_eq!(lo, qv(&[1, 0]));
                assert_eq!(hi, qv(&[0, 1]));
            }
            other => panic!("expected sector, got {other:?}"),
        }
        assert_eq!(
            conic_hull(&[qv(&[1, 0]), qv(&[0, 1]), qv(&[-1, -1])]),
            Cone2::Full
        );
        // Half-plane: antipodal endpoints plus an interior direction.
        match conic_hull(&[qv(&[1, 0]), qv(&[-1, 0]), qv(&[0, 1])]) {
            Cone2::Sector { lo, hi } => {
                assert_eq!(lo, qv(&[1, 0]));
                assert_eq!(hi, qv(&[-1, 0]));
            }
            other => panic!("expected half-plane, got {other:?}"),
        }
    }

    #[test]
    fn circle_coverage() {
        let upper = Cone2::Sector { lo: qv(&[1, 0]), hi: qv(&[-1, 0]) };
        let lower = Cone2::Sector { lo: qv(&[-1, 0]), hi: qv(&[1, 0]) };
        assert!(covers_circle(&[upper.clone(), lower]));
        assert!(!covers_circle(&[upper]));
        let thirds = [
            Cone2::Sector { lo: qv(&[1, 0]), hi: qv(&[0, 1]) },
            Cone2::Sector { lo: qv(&[0, 1]), hi: qv(&[-1, -1]) },
            Cone2::Sector { lo: qv(&[-1, -1]), hi: qv(&[1, 0]) },
        ];
        assert!(covers_circle(&thirds));
        assert!(!covers_circle(&thirds[..2].to_vec()));
    }

    #[test]
    fn plus_sign_verdicts_at_key_points() {
        let p = plus_sign();
        // Origin: the cone is the plus sign itself — symmetric but not
        // a subspace, so everything fails except membership.
        let origin = brute_verdicts(&p, &qv(&[0, 0])).unwrap();
        assert!(origin.member);
        assert!(!origin.rint && !origin.iri && !origin.qri && !origin.qi);
        // Arm midpoint: the far arm contributes a fat wedge, so the cone
        // union is a wedge plus a line — not a subspace.
        let mid = brute_verdicts(&p, &QVector(vec![Rat::ratio(1, 2), Rat::zero()])).unwrap();
        assert!(mid.member);
        assert!(!mid.rint && !mid.iri && !mid.qri && !mid.qi);
        // Off the set.
        let off = brute_verdicts(&p, &qv(&[1, 1])).unwrap();
        assert_eq!(off, BruteVerdicts::all_false());
    }

    #[test]
    fn square_interior_and_boundary() {
        let square = poly(vec![
            (vec![-1, 0], Rel::Le, 0),
            (vec![1, 0], Rel::Le, 1),
            (vec![0, -1], Rel::Le, 0),
            (vec![0, 1], Rel::Le, 1),
        ]);
        let u = UnionSet::from_piece(square).unwrap();
        let inside = brute_verdicts(&u, &QVector(vec![Rat::ratio(1, 2), Rat::ratio(1, 2)])).unwrap();
        assert!(inside.rint && inside.ri && inside.qi && inside.sqri && inside.iri && inside.qri);
        let edge = brute_verdicts(&u, &QVector(vec![Rat::ratio(1, 2), Rat::zero()])).unwrap();
        assert!(edge.member);
        assert!(!edge.rint && !edge.qi && !edge.iri && !edge.qri);
        let corner = brute_verdicts(&u, &qv(&[0, 0])).unwrap();
        assert!(corner.member && !corner.qri);
    }

    #[test]
    fn segment_relative_interior() {
        let seg = poly(vec![
            (vec![0, 1], Rel::Eq, 0),
            (vec![-1, 0], Rel::Le, 0),
            (vec![1, 0], Rel::Le, 1),
        ]);
        let u = UnionSet::from_piece(seg).unwrap();
        let mid = brute_verdicts(&u, &QVector(vec![Rat::ratio(1, 2), Rat::zero()])).unwrap();
        assert!(mid.rint && mid.iri && mid.qri);
        assert!(!mid.qi);
        let end = brute_verdicts(&u, &qv(&[1, 0])).unwrap();
        assert!(end.member && !end.rint && !end.iri && !end.qri && !end.qi);
    }

    #[test]
    fn open_interval_on_the_line() {
        let open = GenPolyhedron::new(
            1,
            vec![
                Constraint::new(qv(&[-1]), Rel::Lt, Rat::zero()),
                Constraint::new(qv(&[1]), Rel::Lt, Rat::one()),
            ],
        )
        .unwrap();
        let u = UnionSet::from_piece(open).unwrap();
        let inside = brute_verdicts(&u, &QVector(vec![Rat::ratio(1, 2)])).unwrap();
        assert!(inside.member && inside.rint && inside.qi && inside.iri && inside.qri);
        let outside = brute_verdicts(&u, &qv(&[1])).unwrap();
        assert!(!outside.member);
    }

    #[test]
    fn half_open_union_iri_versus_closed() {
        // [0,1] ∪ {2} at 1: cone hits both directions toward 0 and 2, so
        // iri holds at 1 even though rint fails (2 is isolated).
        let seg = GenPolyhedron::new(
            1,
            vec![
                Constraint::new(qv(&[-1]), Rel::Le, Rat::zero()),
                Constraint::new(qv(&[1]), Rel::Le, Rat::one()),
            ],
        )
        .unwrap();
        let pt = GenPolyhedron::point(&qv(&[2]));
        let u = UnionSet::new(1, vec![seg, pt]).unwrap();
        let at_one = brute_verdicts(&u, &qv(&[1])).unwrap();
        assert!(at_one.member);
        assert!(at_one.iri && at_one.qri && at_one.qi);
        assert!(!at_one.rint);
    }
}
