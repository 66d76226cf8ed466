//! Finite unions of generalized polyhedra and near-convexity.
//!
//! A [`UnionSet`] is the crate's general set model: finitely many
//! generalized-polyhedron pieces in a shared ambient dimension. A set is
//! *nearly convex* when it is squeezed between a convex set and that set's
//! closure; equivalently, its closure `Q` is convex and `ri(Q) ⊂ Ω`. The
//! classifier decides convex / nearly convex / neither by computing the
//! closed convex hull of the union through generators and then running two
//! exact covering checks, returning re-verifiable witnesses at the first
//! failing stage.
//!
//! For verified nearly convex sets the quasi-relative interior collapses to
//! a formula: `qri(Ω) = ri(cl Ω)`, a relatively open convex polyhedron.
//! That fast path is certified against the generic cone-based oracle in the
//! test suite rather than trusted.

use serde::{Deserialize, Serialize};

use crate::exactnum::{QMatrix, QVector};
use crate::genpoly::{
    closure, convex_hull, covers, linear_image_fm, poly_subset, ri_rows, to_generators,
    GeneratorSet, GenPolyhedron,
};
use crate::{Budget, Error, Result, Strategy};

#[derive(Deserialize)]
struct UnionSetRaw {
    dim: usize,
    pieces: Vec<GenPolyhedron>,
}

impl TryFrom<UnionSetRaw> for UnionSet {
    type Error = Error;

    fn try_from(raw: UnionSetRaw) -> Result<UnionSet> {
        UnionSet::new(raw.dim, raw.pieces)
    }
}

/// A finite union of generalized polyhedra in one ambient dimension.
///
/// Empty pieces are pruned at construction, so an empty piece list means
/// the empty set. Most interior and classification oracles require the set
/// to be nonempty and report that through [`Error::EmptyInput`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "UnionSetRaw")]
pub struct UnionSet {
    /// Ambient dimension shared by every piece.
    pub dim: usize,
    /// The pieces; all nonempty, none removable without changing the set
    /// only if the caller arranged that (no minimality is enforced).
    pub pieces: Vec<GenPolyhedron>,
}

impl UnionSet {
    /// Builds a union, validating dimensions and pruning empty pieces.
    pub fn new(dim: usize, pieces: Vec<GenPolyhedron>) -> Result<UnionSet> {
        let mut kept = Vec::with_capacity(pieces.len());
        for piece in pieces {
            piece.validate()?;
            if piece.dim != dim {
                return Err(Error::Dimension(format!(
                    "union piece of dimension {} in ambient dimension {dim}",
                    piece.dim
                )));
            }
            if !piece.is_empty_fast()? {
                kept.push(piece);
            }
        }
        Ok(UnionSet { dim, pieces: kept })
    }

    /// Wraps a single polyhedron.
    pub fn from_piece(piece: GenPolyhedron) -> Result<UnionSet> {
        let dim = piece.dim;
        UnionSet::new(dim, vec![piece])
    }

    /// True iff the union has no pieces, i.e. is the empty set.
    pub fn is_empty_set(&self) -> bool {
        self.pieces.is_empty()
    }

    /// Exact membership: in some piece.
    pub fn membership(&self, x: &QVector) -> Result<bool> {
        for piece in &self.pieces {
            if piece.membership(x)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Closures of the pieces; their union is `cl Ω`.
    pub fn closure_pieces(&self) -> Result<Vec<GenPolyhedron>> {
        self.pieces.iter().map(closure).collect()
    }

    /// The translated union `Ω + t`.
    pub fn translate(&self, t: &QVector) -> Result<UnionSet> {
        let pieces = self
            .pieces
            .iter()
            .map(|p| p.translate(t))
            .collect::<Result<Vec<_>>>()?;
        UnionSet::new(self.dim, pieces)
    }

    /// The image `T(Ω)`, piece by piece (exact also for strict pieces).
    pub fn linear_image(&self, t: &QMatrix) -> Result<UnionSet> {
        if t.cols() != self.dim {
            return Err(Error::Dimension(format!(
                "map with {} columns applied to a union in dimension {}",
                t.cols(),
                self.dim
            )));
        }
        let pieces = self
            .pieces
            .iter()
            .map(|p| linear_image_fm(p, t))
            .collect::<Result<Vec<_>>>()?;
        UnionSet::new(t.rows(), pieces)
    }
}

/// Convexity class of a union.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SetClass {
    /// The union equals its closed convex hull.
    Convex,
    /// The closure is convex and contains no relative-interior gaps.
    NearlyConvex,
    /// Some certificate below fails; see the witness.
    Neither,
}

/// Classifier verdict with re-verifiable certificates.
#[derive(Clone, Debug, Serialize)]
pub struct Classification {
    /// The decided class.
    pub class: SetClass,
    /// Closed convex hull `Q` of the union (always computed).
    pub hull: GenPolyhedron,
    /// For `neither`: a point of `Q` outside `cl Ω`, or a point of `ri(Q)`
    /// outside `Ω`. For `nearly_convex`: a point of `Q` outside `Ω`.
    pub witness: Option<QVector>,
}

/// The closed convex hull of the union: hull of all piece closures, built
/// on generators.
pub fn union_hull(omega: &UnionSet, budget: &Budget) -> Result<GenPolyhedron> {
    if omega.is_empty_set() {
        return Err(Error::EmptyInput("hull of an empty union".into()));
    }
    let mut gens = GeneratorSet::empty();
    for piece in omega.closure_pieces()? {
        let g = to_generators(&piece, budget)?;
        gens.points.extend(g.points);
        gens.rays.extend(g.rays);
        gens.lines.extend(g.lines);
    }
    let gens = gens.canonicalize(omega.dim)?;
    convex_hull(omega.dim, &gens, budget)
}

/// Decides whether the union is convex, nearly convex, or neither.
///
/// Stage 1: `cl Ω` convex, i.e. the hull `Q` is covered by the piece
/// closures (the reverse containment holds by construction and is verified
/// per piece). Stage 2: `ri(Q) ⊂ Ω`. Together the two stages characterize
/// near convexity; the union is convex when additionally `Q ⊂ Ω`, which
/// makes the set equal to its closed hull.
pub fn classify(omega: &UnionSet, budget: &Budget, strategy: Strategy) -> Result<Classification> {
    if omega.is_empty_set() {
        return Err(Error::EmptyInput("classify of an empty union".into()));
    }
    let hull = union_hull(omega, budget)?;
    let closures = omega.closure_pieces()?;
    for piece in &closures {
        debug_assert!(poly_subset(piece, &hull)?, "hull must contain every piece closure");
    }

    let closure_cover = covers(&hull, &closures, budget, strategy)?;
    if !closure_cover.covered {
        return Ok(Classification {
            class: SetClass::Neither,
            hull,
            witness: closure_cover.witness,
        });
    }

    let ri_hull = ri_rows(&hull)?;
    let ri_cover = covers(&ri_hull, &omega.pieces, budget, strategy)?;
    if !ri_cover.covered {
        return Ok(Classification {
            class: SetClass::Neither,
            hull,
            witness: ri_cover.witness,
        });
    }

    let full_cover = covers(&hull, &omega.pieces, budget, strategy)?;
    if full_cover.covered {
        Ok(Classification { class: SetClass::Convex, hull, witness: None })
    } else {
        Ok(Classification {
            class: SetClass::NearlyConvex,
            hull,
            witness: full_cover.witness,
        })
    }
}

/// A union verified to be nearly convex, with its closed convex hull.
#[derive(Clone, Debug)]
pub struct NearlyConvexSet {
    hull: GenPolyhedron,
    body: UnionSet,
}

impl NearlyConvexSet {
    /// Classifies `body` and accepts it iff the class is convex or nearly
    /// convex.
    pub fn new(body: UnionSet, budget: &Budget, strategy: Strategy) -> Result<NearlyConvexSet> {
        let report = classify(&body, budget, strategy)?;
        match report.class {
            SetClass::Convex | SetClass::NearlyConvex => {
                Ok(NearlyConvexSet { hull: report.hull, body })
            }
            SetClass::Neither => Err(Error::Input(format!(
                "set is not nearly convex; witness {}",
                report
                    .witness
                    .map(|w| w.to_string())
                    .unwrap_or_else(|| "unavailable".into())
            ))),
        }
    }

    /// The closed convex hull `cl Ω`.
    pub fn hull(&self) -> &GenPolyhedron {
        &self.hull
    }

    /// The set `Ω` itself.
    pub fn body(&self) -> &UnionSet {
        &self.body
    }
}

/// `qri(Ω)` of a nearly convex set as one relatively open polyhedron:
/// `ri(cl Ω)`, which near convexity places inside `Ω`.
pub fn qri_of_nearly_convex(n: &NearlyConvexSet) -> Result<GenPolyhedron> {
    ri_rows(n.hull())
}

/// Translation of a nearly convex set; near convexity is translation
/// invariant, so hull and body shift together without re-verification.
pub fn nc_translate(n: &NearlyConvexSet, t: &QVector) -> Result<NearlyConvexSet> {
    Ok(NearlyConvexSet {
        hull: n.hull.translate(t)?,
        body: n.body.translate(t)?,
    })
}

/// Linear image of a nearly convex set. The image is mapped piece by piece
/// and then re-classified from scratch: success is a theorem, so a failure
/// here signals a kernel bug rather than bad input.
pub fn nc_linear_image(
    n: &NearlyConvexSet,
    t: &QMatrix,
    budget: &Budget,
    strategy: Strategy,
) -> Result<NearlyConvexSet> {
    let image = n.body.linear_image(t)?;
    NearlyConvexSet::new(image, budget, strategy)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::Rat;
    use crate::genpoly::{poly_equal, Constraint, Rel};

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

    fn unit_square() -> GenPolyhedron {
        poly(
            2,
            vec![
                (vec![-1, 0], Rel::Le, 0),
                (vec![1, 0], Rel::Le, 1),
                (vec![0, -1], Rel::Le, 0),
                (vec![0, 1], Rel::Le, 1),
            ],
        )
    }

    fn open_square() -> GenPolyhedron {
        poly(
            2,
            vec![
                (vec![-1, 0], Rel::Lt, 0),
                (vec![1, 0], Rel::Lt, 1),
                (vec![0, -1], Rel::Lt, 0),
                (vec![0, 1], Rel::Lt, 1),
            ],
        )
    }

    fn origin() -> GenPolyhedron {
        GenPolyhedron::point(&qv(&[0, 0]))
    }

    fn run_classify(pieces: Vec<GenPolyhedron>) -> Classification {
        let omega = UnionSet::new(pieces[0].dim, pieces).unwrap();
        classify(&omega, &Budget::default(), Strategy::Sequential).unwrap()
    }

    #[test]
    fn closed_square_is_convex() {
        let report = run_classify(vec![unit_square()]);
        assert_eq!(report.class, SetClass::Convex);
        assert!(poly_equal(&report.hull, &unit_square()).unwrap());
        assert!(report.witness.is_none());
    }

    #[test]
    fn open_square_with_corner_is_nearly_convex() {
        let report = run_classify(vec![open_square(), origin()]);
        assert_eq!(report.class, SetClass::NearlyConvex);
        assert!(poly_equal(&report.hull, &unit_square()).unwrap());
        let w = report.witness.unwrap();
        assert!(report.hull.membership(&w).unwrap());
        assert!(!open_square().membership(&w).unwrap());
        assert!(!origin().membership(&w).unwrap());
    }

    #[test]
    fn l_shape_is_neither_with_hull_witness() {
        let bottom = poly(
            2,
            vec![
                (vec![0, 1], Rel::Eq, 0),
                (vec![-1, 0], Rel::Le, 0),
                (vec![1, 0], Rel::Le, 1),
            ],
        );
        let left = poly(
            2,
            vec![
                (vec![1, 0], Rel::Eq, 0),
                (vec![0, -1], Rel::Le, 0),
                (vec![0, 1], Rel::Le, 1),
            ],
        );
        let report = run_classify(vec![bottom.clone(), left.clone()]);
        assert_eq!(report.class, SetClass::Neither);
        let w = report.witness.unwrap();
        assert_eq!(w, QVector(vec![Rat::ratio(1, 2), Rat::ratio(1, 2)]));
        assert!(report.hull.membership(&w).unwrap());
        assert!(!bottom.membership(&w).unwrap() && !left.membership(&w).unwrap());
    }

    #[test]
    fn ri_gap_is_neither() {
        // Closure is the convex interval [0,2], but the relative interior
        // point 1 is missing from the set.
        let left = poly(1, vec![(vec![-1], Rel::Le, 0), (vec![1], Rel::Lt, 1)]);
        let right = poly(1, vec![(vec![-1], Rel::Lt, -1), (vec![1], Rel::Le, 2)]);
        let report = run_classify(vec![left, right]);
        assert_eq!(report.class, SetClass::Neither);
        assert_eq!(report.witness, Some(qv(&[1])));
    }

    #[test]
    fn classification_survives_reordering_and_splitting() {
        let pieces = vec![open_square(), origin()];
        let forward = run_classify(pieces.clone());
        let reversed = run_classify(pieces.into_iter().rev().collect());
        assert_eq!(forward.class, reversed.class);

        // Split the open square into two halves along y = 1/2.
        let lower = open_square()
            .intersect(&poly(2, vec![(vec![0, 2], Rel::Le, 1)]))
            .unwrap();
        let upper = open_square()
            .intersect(&poly(2, vec![(vec![0, -2], Rel::Lt, -1)]))
            .unwrap();
        let split = run_classify(vec![lower, upper, origin()]);
        assert_eq!(split.class, forward.class);
    }

    #[test]
    fn nearly_convex_constructor_rejects_l_shape() {
        let bottom = poly(
            2,
            vec![
                (vec![0, 1], Rel::Eq, 0),
                (vec![-1, 0], Rel::Le, 0),
                (vec![1, 0], Rel::Le, 1),
            ],
        );
        let left = poly(
            2,
            vec![
                (vec![1, 0], Rel::Eq, 0),
                (vec![0, -1], Rel::Le, 0),
                (vec![0, 1], Rel::Le, 1),
            ],
        );
        let omega = UnionSet::new(2, vec![bottom, left]).unwrap();
        let out = NearlyConvexSet::new(omega, &Budget::default(), Strategy::Sequential);
        assert!(matches!(out, Err(Error::Input(_))));
    }

    #[test]
    fn qri_formula_on_punctured_square() {
        let omega = UnionSet::new(2, vec![open_square(), origin()]).unwrap();
        let n = NearlyConvexSet::new(omega, &Budget::default(), Strategy::Sequential).unwrap();
        let qri = qri_of_nearly_convex(&n).unwrap();
        assert!(poly_equal(&qri, &open_square()).unwrap());
        // The glued-on corner is not a qri point.
        assert!(!qri.membership(&qv(&[0, 0])).unwrap());
    }

    #[test]
    fn half_open_segment_qri() {
        let seg = poly(
            2,
            vec![
                (vec![0, 1], Rel::Eq, 0),
                (vec![-1, 0], Rel::Le, 0),
                (vec![1, 0], Rel::Lt, 1),
            ],
        );
        let omega = UnionSet::from_piece(seg).unwrap();
        let n = NearlyConvexSet::new(omega, &Budget::default(), Strategy::Sequential).unwrap();
        let qri = qri_of_nearly_convex(&n).unwrap();
        let expected = poly(
            2,
            vec![
                (vec![0, 1], Rel::Eq, 0),
                (vec![-1, 0], Rel::Lt, 0),
                (vec![1, 0], Rel::Lt, 1),
            ],
        );
        assert!(poly_equal(&qri, &expected).unwrap());
    }

    #[test]
    fn translate_shifts_hull_and_body() {
        let omega = UnionSet::new(2, vec![open_square(), origin()]).unwrap();
        let n = NearlyConvexSet::new(omega, &Budget::default(), Strategy::Sequential).unwrap();
        let shifted = nc_translate(&n, &qv(&[2, 0])).unwrap();
        assert!(shifted.body().membership(&qv(&[2, 0])).unwrap());
        assert!(!shifted.body().membership(&qv(&[0, 0])).unwrap());
        let expected_hull = unit_square().translate(&qv(&[2, 0])).unwrap();
        assert!(poly_equal(shifted.hull(), &expected_hull).unwrap());
    }

    #[test]
    fn projection_image_stays_nearly_convex() {
        let omega = UnionSet::new(2, vec![open_square(), origin()]).unwrap();
        let n = NearlyConvexSet::new(omega, &Budget::default(), Strategy::Sequential).unwrap();
        let proj = QMatrix::from_rows(vec![qv(&[1, 0])]).unwrap();
        let image = nc_linear_image(&n, &proj, &Budget::default(), Strategy::Sequential).unwrap();
        // Image is (0,1) ∪ {0} on the line, hull [0,1].
        assert!(image.body().membership(&qv(&[0])).unwrap());
        assert!(!image.body().membership(&qv(&[1])).unwrap());
        let expected_hull = poly(1, vec![(vec![-1], Rel::Le, 0), (vec![1], Rel::Le, 1)]);
        assert!(poly_equal(image.hull(), &expected_hull).unwrap());
    }

    #[test]
    fn zero_map_image_is_a_point() {
        let omega = UnionSet::new(2, vec![open_square(), origin()]).unwrap();
        let n = NearlyConvexSet::new(omega, &Budget::default(), Strategy::Sequential).unwrap();
        let zero = QMatrix::zeros(1, 2);
        let image = nc_linear_image(&n, &zero, &Budget::default(), Strategy::Sequential).unwrap();
        let report = classify(image.body(), &Budget::default(), Strategy::Sequential).unwrap();
        assert_eq!(report.class, SetClass::Convex);
    }

    #[test]
    fn union_json_round_trip_prunes_empty_pieces() {
        let text = r#"{"dim":1,"pieces":[
            {"dim":1,"constraints":[{"a":["1"],"rel":"<","b":"0"},{"a":["-1"],"rel":"<","b":"0"}]},
            {"dim":1,"constraints":[{"a":["1"],"rel":"<=","b":"1"}]}
        ]}"#;
        let parsed: UnionSet = serde_json::from_str(text).unwrap();
        assert_eq!(parsed.pieces.len(), 1);
        let back = serde_json::to_string(&parsed).unwrap();
        let reparsed: UnionSet = serde_json::from_str(&back).unwrap();
        assert_eq!(parsed, reparsed);
    }
}
