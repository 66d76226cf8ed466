//! Polyhedral set-valued maps, piecewise-linear convex functions, and the
//! decomposition laws tying interiors of a graph to interiors of its
//! domain and slices.
//!
//! A map is stored as its graph, a union of generalized polyhedra in
//! `ℝ^{dim_x + dim_y}` with the `x` block first. Domains and ranges are
//! coordinate projections; slices substitute a concrete `x`. The checks in
//! this module evaluate statements of the shape
//!
//! > `(x, y)` in *kind*(graph)  ⇔  `x` in *kind*(domain) and `y` in
//! > *kind'*(slice)
//!
//! pointwise over caller-supplied witness points, after screening each
//! statement's hypotheses (graph convexity or near convexity, extensional
//! quasi-regularity, slices with nonempty interior). A failed hypothesis
//! makes the corresponding direction "not applicable" — never a violation.
//! Verified hypotheses plus a violated implication yield a counterexample
//! entry that re-verifies from its recorded memberships.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::exactnum::{QVector, Rat};
use crate::genpoly::{
    affine_hull, canonicalize, closure, covers, fix_coords, project, to_generators,
    AffineFlat, Constraint, GenPolyhedron, Rel,
};
use crate::interiors::{
    interior_membership, piece_local_cones, union_affine_flat, InteriorKind,
};
use crate::nearconvex::{classify, SetClass, UnionSet};
use crate::{exec, Budget, Error, Result, Strategy};

/// A set-valued map `F : ℝ^dim_x ⇒ ℝ^dim_y`, stored as its graph.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "SetMapRaw")]
pub struct SetMap {
    /// Dimension of the argument block (first coordinates).
    pub dim_x: usize,
    /// Dimension of the value block (last coordinates).
    pub dim_y: usize,
    /// The graph `{(x, y) : y ∈ F(x)}`, nonempty.
    pub graph: UnionSet,
}

#[derive(Deserialize)]
struct SetMapRaw {
    dim_x: usize,
    dim_y: usize,
    graph: UnionSet,
}

impl TryFrom<SetMapRaw> for SetMap {
    type Error = Error;

    fn try_from(raw: SetMapRaw) -> Result<SetMap> {
        SetMap::new(raw.dim_x, raw.dim_y, raw.graph)
    }
}

impl SetMap {
    /// Validates the coordinate split and nonemptiness of the graph.
    pub fn new(dim_x: usize, dim_y: usize, graph: UnionSet) -> Result<SetMap> {
        if dim_x == 0 || dim_y == 0 {
            return Err(Error::Input("map dimensions must be positive".into()));
        }
        if graph.dim != dim_x + dim_y {
            return Err(Error::Dimension(format!(
                "graph lives in dimension {}, expected {}",
                graph.dim,
                dim_x + dim_y
            )));
        }
        if graph.is_empty_set() {
            return Err(Error::EmptyInput("a set-valued map needs a nonempty graph".into()));
        }
        Ok(SetMap { dim_x, dim_y, graph })
    }

    /// Splits a graph point into its `x` and `y` blocks.
    pub fn split(&self, p: &QVector) -> (QVector, QVector) {
        (p.slice(0, self.dim_x), p.slice(self.dim_x, self.dim_x + self.dim_y))
    }
}

/// `dom F = {x : F(x) ≠ ∅}`: the graph projected onto the `x` block.
pub fn domain_of(f: &SetMap) -> Result<UnionSet> {
    let keep: Vec<usize> = (0..f.dim_x).collect();
    let mut pieces = Vec::with_capacity(f.graph.pieces.len());
    for piece in &f.graph.pieces {
        pieces.push(canonicalize(&project(piece, &keep)?)?);
    }
    UnionSet::new(f.dim_x, pieces)
}

/// `rge F = ⋃_x F(x)`: the graph projected onto the `y` block.
pub fn range_of(f: &SetMap) -> Result<UnionSet> {
    let keep: Vec<usize> = (f.dim_x..f.dim_x + f.dim_y).collect();
    let mut pieces = Vec::with_capacity(f.graph.pieces.len());
    for piece in &f.graph.pieces {
        pieces.push(canonicalize(&project(piece, &keep)?)?);
    }
    UnionSet::new(f.dim_y, pieces)
}

/// `F(x)`: substitutes `x` into every piece and drops the empty ones. An
/// empty union means `x ∉ dom F`.
pub fn slice_at(f: &SetMap, x: &QVector) -> Result<UnionSet> {
    if x.dim() != f.dim_x {
        return Err(Error::Dimension(format!(
            "slice point of length {} in dimension {}",
            x.dim(),
            f.dim_x
        )));
    }
    let assignments: Vec<(usize, Rat)> =
        (0..f.dim_x).map(|i| (i, x[i].clone())).collect();
    let mut pieces = Vec::with_capacity(f.graph.pieces.len());
    for piece in &f.graph.pieces {
        pieces.push(fix_coords(piece, &assignments)?);
    }
    UnionSet::new(f.dim_y, pieces)
}

/// One affine piece `x ↦ a·x + b` of a piecewise-linear function.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AffinePiece {
    /// Linear coefficients.
    pub a: QVector,
    /// Constant offset.
    pub b: Rat,
}

/// A proper piecewise-linear convex function `f(x) = max_i (aᵢ·x + bᵢ)`
/// restricted to a nonempty polyhedral domain.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "PLConvexFunctionRaw")]
pub struct PLConvexFunction {
    /// The affine pieces; at least one.
    pub pieces: Vec<AffinePiece>,
    /// The effective domain; nonempty.
    pub domain: GenPolyhedron,
}

#[derive(Deserialize)]
struct PLConvexFunctionRaw {
    pieces: Vec<AffinePiece>,
    domain: GenPolyhedron,
}

impl TryFrom<PLConvexFunctionRaw> for PLConvexFunction {
    type Error = Error;

    fn try_from(raw: PLConvexFunctionRaw) -> Result<PLConvexFunction> {
        epi_of(raw.pieces, raw.domain)
    }
}

impl PLConvexFunction {
    /// Argument dimension.
    pub fn dim(&self) -> usize {
        self.domain.dim
    }

    /// `f(x)` as the max of the pieces, or `None` outside the domain.
    pub fn value(&self, x: &QVector) -> Result<Option<Rat>> {
        if !self.domain.membership(x)? {
            return Ok(None);
        }
        let mut best: Option<Rat> = None;
        for piece in &self.pieces {
            let v = piece.a.dot(x) + &piece.b;
            best = Some(match best {
                Some(cur) => cur.max(v),
                None => v,
            });
        }
        Ok(best)
    }

    /// The epigraphical map `E_f(x) = {α : f(x) ≤ α}` as a `SetMap` with
    /// `dim_y = 1`: one convex piece `{(x, α) : x ∈ dom, aᵢ·x − α ≤ −bᵢ}`.
    /// Every row's α-coefficient is nonpositive, so the graph is upward
    /// closed along the last coordinate by construction.
    pub fn epigraph(&self) -> Result<SetMap> {
        let dim = self.dim();
        let mut rows = Vec::new();
        for c in &self.domain.constraints {
            rows.push(Constraint::new(
                c.a.concat(&QVector::zeros(1)),
                c.rel,
                c.b.clone(),
            ));
        }
        for piece in &self.pieces {
            let a = piece.a.concat(&QVector(vec![-Rat::one()]));
            rows.push(Constraint::new(a, Rel::Le, -&piece.b));
        }
        let graph = GenPolyhedron::new(dim + 1, rows)?;
        SetMap::new(dim, 1, UnionSet::from_piece(graph)?)
    }
}

/// Builds the function `max_i (aᵢ·x + bᵢ)` on `domain`, validating that
/// the domain is nonempty and every piece matches its dimension.
pub fn epi_of(pieces: Vec<AffinePiece>, domain: GenPolyhedron) -> Result<PLConvexFunction> {
    if pieces.is_empty() {
        return Err(Error::Input("a piecewise-linear function needs pieces".into()));
    }
    if let Some(p) = pieces.iter().find(|p| p.a.dim() != domain.dim) {
        return Err(Error::Dimension(format!(
            "piece of length {} on a domain of dimension {}",
            p.a.dim(),
            domain.dim
        )));
    }
    if domain.is_empty_fast()? {
        return Err(Error::EmptyInput("the domain must be nonempty".into()));
    }
    Ok(PLConvexFunction { pieces, domain })
}

/// The graph decomposition statements this module can check.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GraphCheck {
    /// `iri(gph) ⊂ iri(dom) × iri(F(x))` always; equality on convex graphs.
    IriGraph,
    /// `sqri` equality on convex graphs whose slices have interior, plus
    /// the finite-dimensional coincidence of sqri and iri verdicts.
    SqriGraph,
    /// `qri(gph) ⊂ qri(dom) × qri(F(x))` on quasi-regular near-convex graphs.
    QriGraphFwd,
    /// `qri(gph) ⊃ qri(dom) × qri(F(x))` when slices are near convex with
    /// nonempty quasi-interior.
    QriGraphBwd,
    /// `qri(gph) ⊃ qri(dom) × int(F(x))` on near-convex graphs; equality
    /// under quasi-regularity and convex slices with interior.
    QriIntGraph,
    /// `qi(gph) ⊃ qi(dom) × qi(F(x))` on near-convex graphs.
    QiGraphBwd,
}

impl GraphCheck {
    /// All checks, in suite order.
    pub const ALL: [GraphCheck; 6] = [
        GraphCheck::IriGraph,
        GraphCheck::SqriGraph,
        GraphCheck::QriGraphFwd,
        GraphCheck::QriGraphBwd,
        GraphCheck::QriIntGraph,
        GraphCheck::QiGraphBwd,
    ];

    /// The snake_case tag used in JSON and on the command line.
    pub fn tag(self) -> &'static str {
        match self {
            GraphCheck::IriGraph => "iri_graph",
            GraphCheck::SqriGraph => "sqri_graph",
            GraphCheck::QriGraphFwd => "qri_graph_fwd",
            GraphCheck::QriGraphBwd => "qri_graph_bwd",
            GraphCheck::QriIntGraph => "qri_int_graph",
            GraphCheck::QiGraphBwd => "qi_graph_bwd",
        }
    }
}

impl fmt::Display for GraphCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for GraphCheck {
    type Err = Error;

    fn from_str(s: &str) -> Result<GraphCheck> {
        GraphCheck::ALL
            .into_iter()
            .find(|c| c.tag() == s)
            .ok_or_else(|| Error::Input(format!("unknown graph check {s:?}")))
    }
}

/// A violated implication at one witness point. `left` is the graph-side
/// membership, `right` the domain-and-slice side; the direction names the
/// implication that failed.
#[derive(Clone, Debug, Serialize)]
pub struct Violation {
    /// The witness point, in graph coordinates.
    pub point: QVector,
    /// `"forward"` (graph ⇒ factors), `"backward"` (factors ⇒ graph), or
    /// `"coincidence"` for the sqri/iri agreement assertion.
    pub direction: String,
    /// Graph-side verdict.
    pub left: bool,
    /// Factor-side verdict.
    pub right: bool,
}

/// Outcome of a pointwise theorem check.
#[derive(Clone, Debug, Serialize)]
pub struct TheoremReport {
    /// Which statement was checked.
    pub theorem: String,
    /// Whether the graph ⇒ factors direction was asserted.
    pub forward: bool,
    /// Whether the factors ⇒ graph direction was asserted.
    pub backward: bool,
    /// Why some direction was dropped, when one was.
    pub not_applicable: Option<String>,
    /// The witness points examined.
    pub points: Vec<QVector>,
    /// Violations of asserted directions, sorted by point then direction.
    pub violations: Vec<Violation>,
}

impl TheoremReport {
    /// True when at least one direction was asserted.
    pub fn applicable(&self) -> bool {
        self.forward || self.backward
    }
}

/// What the slice-side predicate tests at `y`.
#[derive(Copy, Clone)]
enum SlicePred {
    Kind(InteriorKind),
    Interior,
}

/// `int(S) ≠ ∅` for a polyhedral union: some piece is full-dimensional.
/// (A finite union of lower-dimensional polyhedra has empty interior.)
fn union_has_interior(s: &UnionSet) -> Result<bool> {
    for piece in &s.pieces {
        if affine_hull(piece)?.basis.len() == s.dim {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Three-valued reading of `qi(S) ≠ ∅` for a union slice: a full-dim
/// piece makes it genuinely nonempty, a lower-dimensional affine hull
/// makes it genuinely empty, and anything between is flagged ambiguous.
enum QiNonempty {
    Yes,
    No,
    Ambiguous,
}

fn qi_nonempty(s: &UnionSet) -> Result<QiNonempty> {
    if union_has_interior(s)? {
        return Ok(QiNonempty::Yes);
    }
    if union_affine_flat(s)?.basis.len() < s.dim {
        return Ok(QiNonempty::No);
    }
    Ok(QiNonempty::Ambiguous)
}

/// `y ∈ int(S)` for a union: the local cones at `y` must cover all of
/// space, the full-space analogue of relative-interior membership.
fn interior_point_of_union(
    s: &UnionSet,
    y: &QVector,
    budget: &Budget,
    strategy: Strategy,
) -> Result<bool> {
    if !s.membership(y)? {
        return Ok(false);
    }
    let cones = piece_local_cones(s, y)?;
    Ok(covers(&GenPolyhedron::full_space(s.dim), &cones, budget, strategy)?.covered)
}

struct PointData {
    point: QVector,
    x: QVector,
    y: QVector,
    slice: UnionSet,
}

/// Runs one decomposition check pointwise over `points` (each must lie in
/// the graph). Side conditions are screened first; a failed hypothesis
/// drops the affected direction and is reported as not applicable.
pub fn graph_theorem_check(
    check: GraphCheck,
    f: &SetMap,
    points: &[QVector],
    budget: &Budget,
    strategy: Strategy,
) -> Result<TheoremReport> {
    let graph_dim = f.dim_x + f.dim_y;
    let mut data = Vec::with_capacity(points.len());
    for p in points {
        if p.dim() != graph_dim {
            return Err(Error::Dimension(format!(
                "witness point of length {} in graph dimension {graph_dim}",
                p.dim()
            )));
        }
        if !f.graph.membership(p)? {
            return Err(Error::Input(format!("witness point {p} is not in the graph")));
        }
        let (x, y) = f.split(p);
        let slice = slice_at(f, &x)?;
        data.push(PointData { point: p.clone(), x, y, slice });
    }
    let dom = domain_of(f)?;
    let graph_class = classify(&f.graph, budget, strategy)?.class;

    // Extensional quasi-regularity: qri and iri verdicts agree on the
    // graph at every witness point.
    let quasi_regular = |data: &[PointData]| -> Result<bool> {
        for pd in data {
            let qri =
                interior_membership(InteriorKind::Qri, &f.graph, &pd.point, budget, strategy)?;
            let iri =
                interior_membership(InteriorKind::Iri, &f.graph, &pd.point, budget, strategy)?;
            if qri.member != iri.member {
                return Ok(false);
            }
        }
        Ok(true)
    };

    let mut forward = false;
    let mut backward = false;
    let mut reason: Option<String> = None;
    let mut note = |r: String| {
        if reason.is_none() {
            reason = Some(r);
        }
    };

    let (graph_kind, dom_kind, slice_pred) = match check {
        GraphCheck::IriGraph => {
            forward = true;
            if graph_class == SetClass::Convex {
                backward = true;
            } else {
                note("equality needs a convex graph".into());
            }
            (InteriorKind::Iri, InteriorKind::Iri, SlicePred::Kind(InteriorKind::Iri))
        }
        GraphCheck::SqriGraph => {
            let mut ok = true;
            if graph_class != SetClass::Convex {
                ok = false;
                note("the statement needs a convex graph".into());
            }
            for pd in &data {
                if !union_has_interior(&pd.slice)? {
                    ok = false;
                    note(format!("slice at {} has empty interior", pd.x));
                    break;
                }
            }
            forward = ok;
            backward = ok;
            (InteriorKind::Sqri, InteriorKind::Sqri, SlicePred::Kind(InteriorKind::Sqri))
        }
        GraphCheck::QriGraphFwd => {
            if graph_class == SetClass::Neither {
                note("the graph is not nearly convex".into());
            } else if !quasi_regular(&data)? {
                note("the graph is not quasi-regular at the witness points".into());
            } else {
                forward = true;
            }
            (InteriorKind::Qri, InteriorKind::Qri, SlicePred::Kind(InteriorKind::Qri))
        }
        GraphCheck::QriGraphBwd => {
            let mut ok = graph_class != SetClass::Neither;
            if !ok {
                note("the graph is not nearly convex".into());
            }
            for pd in &data {
                if classify(&pd.slice, budget, strategy)?.class == SetClass::Neither {
                    ok = false;
                    note(format!("slice at {} is not nearly convex", pd.x));
                    break;
                }
                match qi_nonempty(&pd.slice)? {
                    QiNonempty::Yes => {}
                    QiNonempty::No => {
                        ok = false;
                        note(format!("slice at {} has empty quasi-interior", pd.x));
                        break;
                    }
                    QiNonempty::Ambiguous => {
                        ok = false;
                        note(format!(
                            "qi-nonemptiness of the slice at {} is ambiguous under the \
                             full-dimensionality reading",
                            pd.x
                        ));
                        break;
                    }
                }
            }
            backward = ok;
            (InteriorKind::Qri, InteriorKind::Qri, SlicePred::Kind(InteriorKind::Qri))
        }
        GraphCheck::QriIntGraph => {
            if graph_class == SetClass::Neither {
                note("the graph is not nearly convex".into());
            } else {
                backward = true;
                let mut equality = quasi_regular(&data)?;
                if !equality {
                    note("the graph is not quasi-regular at the witness points".into());
                }
                for pd in &data {
                    if !equality {
                        break;
                    }
                    if classify(&pd.slice, budget, strategy)?.class != SetClass::Convex {
                        equality = false;
                        note(format!("slice at {} is not convex", pd.x));
                    } else if !union_has_interior(&pd.slice)? {
                        equality = false;
                        note(format!("slice at {} has empty interior", pd.x));
                    }
                }
                forward = equality;
            }
            (InteriorKind::Qri, InteriorKind::Qri, SlicePred::Interior)
        }
        GraphCheck::QiGraphBwd => {
            if graph_class == SetClass::Neither {
                note("the graph is not nearly convex".into());
            } else {
                backward = true;
            }
            (InteriorKind::Qi, InteriorKind::Qi, SlicePred::Kind(InteriorKind::Qi))
        }
    };

    let assert_forward = forward;
    let assert_backward = backward;
    let coincidence = check == GraphCheck::SqriGraph;
    let results = exec::map_collect(strategy, &data, |pd| -> Result<Vec<Violation>> {
        let mut out = Vec::new();
        let left =
            interior_membership(graph_kind, &f.graph, &pd.point, budget, strategy)?.member;
        let right_x = interior_membership(dom_kind, &dom, &pd.x, budget, strategy)?.member;
        let right_y = match slice_pred {
            SlicePred::Kind(kind) => {
                interior_membership(kind, &pd.slice, &pd.y, budget, strategy)?.member
            }
            SlicePred::Interior => interior_point_of_union(&pd.slice, &pd.y, budget, strategy)?,
        };
        let right = right_x && right_y;
        if assert_forward && left && !right {
            out.push(Violation {
                point: pd.point.clone(),
                direction: "forward".into(),
                left,
                right,
            });
        }
        if assert_backward && right && !left {
            out.push(Violation {
                point: pd.point.clone(),
                direction: "backward".into(),
                left,
                right,
            });
        }
        if coincidence {
            // Finite dimension collapses sqri to iri; the verdicts must
            // agree on the graph at every point, no hypotheses needed.
            let iri_left =
                interior_membership(InteriorKind::Iri, &f.graph, &pd.point, budget, strategy)?
                    .member;
            if iri_left != left {
                out.push(Violation {
                    point: pd.point.clone(),
                    direction: "coincidence".into(),
                    left,
                    right: iri_left,
                });
            }
        }
        Ok(out)
    });
    let mut violations = Vec::new();
    for r in results {
        violations.extend(r?);
    }
    violations.sort_by(|a, b| a.point.cmp(&b.point).then(a.direction.cmp(&b.direction)));

    Ok(TheoremReport {
        theorem: check.tag().into(),
        forward,
        backward,
        not_applicable: reason,
        points: points.to_vec(),
        violations,
    })
}

/// Outcome of the affine-hull factorization check.
#[derive(Clone, Debug, Serialize)]
pub struct AffGraphReport {
    /// Whether every hypothesis point had a full-dimensional slice.
    pub applicable: bool,
    /// Whether `aff(gph F) = aff(dom F) × ℝ^dim_y` (meaningful only when
    /// applicable).
    pub holds: bool,
    /// Domain points at which the hypothesis was tested.
    pub hypothesis_points: Vec<QVector>,
    /// A hypothesis point that failed, or a point of one flat missing
    /// from the other.
    pub witness: Option<QVector>,
}

/// Domain points probing a map: the vertices of each domain piece's
/// closure, their per-piece centroid, and all pairwise midpoints.
fn domain_probe_points(dom: &UnionSet, budget: &Budget) -> Result<Vec<QVector>> {
    let mut xs: Vec<QVector> = Vec::new();
    for piece in &dom.pieces {
        let gens = to_generators(&closure(piece)?, budget)?;
        let verts = gens.points;
        if verts.is_empty() {
            continue;
        }
        let mut centroid = QVector::zeros(dom.dim);
        for v in &verts {
            centroid = centroid.add(v);
        }
        xs.push(centroid.scale(&Rat::ratio(1, verts.len() as i64)));
        for (i, v) in verts.iter().enumerate() {
            xs.push(v.clone());
            for w in verts.iter().skip(i + 1) {
                xs.push(v.add(w).scale(&Rat::ratio(1, 2)));
            }
        }
    }
    xs.sort();
    xs.dedup();
    Ok(xs)
}

/// Checks `aff(gph F) = aff(dom F) × ℝ^dim_y`, after verifying that the
/// slice has nonempty interior at every probe point of the domain.
pub fn aff_graph_check(f: &SetMap, budget: &Budget) -> Result<AffGraphReport> {
    let dom = domain_of(f)?;
    let hypothesis_points = domain_probe_points(&dom, budget)?;
    for x in &hypothesis_points {
        let slice = slice_at(f, x)?;
        if slice.is_empty_set() {
            // Probe landed in cl(dom) ∖ dom; the hypothesis quantifies
            // over dom only.
            continue;
        }
        if !union_has_interior(&slice)? {
            let witness = Some(x.clone());
            return Ok(AffGraphReport {
                applicable: false,
                holds: false,
                hypothesis_points,
                witness,
            });
        }
    }

    let graph_flat = union_affine_flat(&f.graph)?;
    let dom_flat = union_affine_flat(&dom)?;
    let mut basis: Vec<QVector> = dom_flat
        .basis
        .iter()
        .map(|v| v.concat(&QVector::zeros(f.dim_y)))
        .collect();
    for j in 0..f.dim_y {
        basis.push(QVector::unit(f.dim_x + f.dim_y, f.dim_x + j));
    }
    let product_flat = AffineFlat {
        basepoint: dom_flat.basepoint.concat(&QVector::zeros(f.dim_y)),
        basis,
    };
    let holds = graph_flat.same_flat(&product_flat);
    let witness = if holds {
        None
    } else {
        flat_gap_witness(&graph_flat, &product_flat)
    };
    Ok(AffGraphReport { applicable: true, holds, hypothesis_points, witness })
}

/// A point of one flat that the other flat misses.
fn flat_gap_witness(a: &AffineFlat, b: &AffineFlat) -> Option<QVector> {
    let in_flat = |flat: &AffineFlat, p: &QVector| {
        flat.equality_system().membership(p).unwrap_or(false)
    };
    for (from, to) in [(a, b), (b, a)] {
        if !in_flat(to, &from.basepoint) {
            return Some(from.basepoint.clone());
        }
        for v in &from.basis {
            let p = from.basepoint.add(v);
            if !in_flat(to, &p) {
                return Some(p);
            }
        }
    }
    None
}

/// Checks the epigraph formulas: for each kind among iri, sqri, and qri,
/// `(x, α)` is in that interior of `epi f` iff `x` is in the same interior
/// of `dom f` and `f(x) < α`. Convexity of `f` makes all three equalities
/// unconditional, so every direction is always asserted.
pub fn epi_formula_check(
    f: &PLConvexFunction,
    points: &[QVector],
    budget: &Budget,
    strategy: Strategy,
) -> Result<TheoremReport> {
    let epi = f.epigraph()?;
    let dom = UnionSet::from_piece(f.domain.clone())?;
    let mut violations = Vec::new();
    for p in points {
        if p.dim() != f.dim() + 1 {
            return Err(Error::Dimension(format!(
                "epigraph point of length {} in dimension {}",
                p.dim(),
                f.dim() + 1
            )));
        }
        if !epi.graph.membership(p)? {
            return Err(Error::Input(format!("witness point {p} is not in the epigraph")));
        }
        let (x, alpha) = (p.slice(0, f.dim()), p[f.dim()].clone());
        let value = f
            .value(&x)?
            .expect("epigraph membership puts x in the domain");
        let strictly_above = value < alpha;
        for kind in [InteriorKind::Iri, InteriorKind::Sqri, InteriorKind::Qri] {
            let left = interior_membership(kind, &epi.graph, p, budget, strategy)?.member;
            let right = strictly_above
                && interior_membership(kind, &dom, &x, budget, strategy)?.member;
            if left && !right {
                violations.push(Violation {
                    point: p.clone(),
                    direction: format!("{}_forward", kind.tag()),
                    left,
                    right,
                });
            }
            if right && !left {
                violations.push(Violation {
                    point: p.clone(),
                    direction: format!("{}_backward", kind.tag()),
                    left,
                    right,
                });
            }
        }
    }
    violations.sort_by(|a, b| a.point.cmp(&b.point).then(a.direction.cmp(&b.direction)));
    Ok(TheoremReport {
        theorem: "epi_formula".into(),
        forward: true,
        backward: true,
        not_applicable: None,
        points: points.to_vec(),
        violations,
    })
}
