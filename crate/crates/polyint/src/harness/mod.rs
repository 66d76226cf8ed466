//! Seeded theorem suites over random instances.
//!
//! Every statement the kernel is built on becomes a named check: generate
//! instances from a seed, evaluate both sides of the statement through
//! independent code paths, and report violations with re-verifiable
//! certificates. Reports are deterministic functions of (checks, count,
//! seed): the RNG is split per instance, results are assembled in instance
//! order, and nothing depends on thread scheduling.
//!
//! A violation is never reported raw: the instance is first shrunk
//! greedily (drop pieces, drop rows, move coefficients toward zero,
//! re-verifying each step), and in dimensions one and two the certificates
//! carry the independent brute-force verdicts alongside the production
//! ones.

mod brute;
mod gen;

pub use brute::{brute_membership, brute_verdicts, BruteVerdicts};
pub use gen::{
    gen_matrix, gen_shift, generate, plus_sign, splitmix64, tag_hash, Instance, InstanceKind,
    InstanceSpec,
};

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::exactnum::{QVector, Rat};
use crate::genpoly::{
    affine_hull, covers, poly_equal, ri_rows, to_generators, GeneratorSet, GenPolyhedron,
};
use crate::interiors::{
    cone_at, interior_membership, interior_profile, normal_cone, InteriorKind,
    MembershipCertificate,
};
use crate::nearconvex::{
    classify, nc_linear_image, nc_translate, qri_of_nearly_convex, union_hull, NearlyConvexSet,
    SetClass, UnionSet,
};
use crate::separation::{point_set_separation, qri_disjointness_equivalence};
use crate::setmap::{
    aff_graph_check, domain_of, epi_formula_check, epi_of, graph_theorem_check, range_of,
    GraphCheck, SetMap,
};
use crate::{exec, Budget, Error, Result, Strategy};

/// Every named check the suites can run.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum CheckId {
    /// The inclusion chains among the six interiors, on arbitrary unions.
    Chain33,
    /// On convex polyhedra the chain interiors coincide (and the
    /// quasi-interior joins them exactly on full-dimensional instances).
    ConvexCollapse,
    /// Betweenness (cone symmetry) versus the intrinsic relative interior;
    /// equivalent on convex sets, known to split on the plus sign.
    BetweennessVsIri,
    /// Interior points absorb segments toward any member of a convex set.
    SegStability,
    /// Linear images preserve intrinsic-relative-interior membership.
    LinearImageIri,
    /// The four equivalent descriptions of near convexity agree.
    ClassifyEquiv,
    /// `qri` of a nearly convex set equals the relative interior of its
    /// closed convex hull, pointwise.
    SandwichQri,
    /// `qri` membership equals symmetry of the normal cone.
    NormalQri,
    /// `qri` = not properly separable from the point; `qi` = trivial
    /// normal cone = not separable at all.
    SepPoint,
    /// Nonempty quasi-interior forces `qi = qri`.
    QiEqQri,
    /// Proper separability of intersecting nearly convex sets is
    /// equivalent to disjoint quasi-relative interiors.
    TwoSetSep,
    /// Images of nearly convex sets stay nearly convex; `qri` pushes
    /// forward through linear maps and translations.
    ImageLaws,
    /// Graph formula for the intrinsic relative interior.
    IriGraph,
    /// Graph formula for the strong quasi-relative interior.
    SqriGraph,
    /// Forward `qri` graph inclusion on quasi-regular graphs.
    QriGraphFwd,
    /// Backward `qri` graph inclusion under nonempty slice quasi-interiors.
    QriGraphBwd,
    /// The interior-slice refinement of the `qri` graph formula.
    QriIntGraph,
    /// Backward inclusion with quasi-interior slices.
    QiGraphBwd,
    /// Product decomposition of the graph's affine hull.
    AffGraph,
    /// Epigraph interiors versus strict function values.
    EpiFormula,
    /// Domains and ranges of nearly convex maps stay nearly convex.
    DomRgeQnc,
    /// Production verdicts versus the dimension ≤ 2 brute-force oracle.
    BruteConcordance,
}

impl CheckId {
    /// All checks, in report order.
    pub const ALL: [CheckId; 22] = [
        CheckId::Chain33,
        CheckId::ConvexCollapse,
        CheckId::BetweennessVsIri,
        CheckId::SegStability,
        CheckId::LinearImageIri,
        CheckId::ClassifyEquiv,
        CheckId::SandwichQri,
        CheckId::NormalQri,
        CheckId::SepPoint,
        CheckId::QiEqQri,
        CheckId::TwoSetSep,
        CheckId::ImageLaws,
        CheckId::IriGraph,
        CheckId::SqriGraph,
        CheckId::QriGraphFwd,
        CheckId::QriGraphBwd,
        CheckId::QriIntGraph,
        CheckId::QiGraphBwd,
        CheckId::AffGraph,
        CheckId::EpiFormula,
        CheckId::DomRgeQnc,
        CheckId::BruteConcordance,
    ];

    /// Stable machine tag; also the seed-stream label.
    pub fn tag(self) -> &'static str {
        match self {
            CheckId::Chain33 => "chain_3_3",
            CheckId::ConvexCollapse => "convex_collapse",
            CheckId::BetweennessVsIri => "betweenness_vs_iri",
            CheckId::SegStability => "seg_stability",
            CheckId::LinearImageIri => "linear_image_iri",
            CheckId::ClassifyEquiv => "classify_equiv",
            CheckId::SandwichQri => "sandwich_qri",
            CheckId::NormalQri => "normal_qri",
            CheckId::SepPoint => "sep_point",
            CheckId::QiEqQri => "qi_eq_qri",
            CheckId::TwoSetSep => "two_set_sep",
            CheckId::ImageLaws => "image_laws",
            CheckId::IriGraph => "iri_graph",
            CheckId::SqriGraph => "sqri_graph",
            CheckId::QriGraphFwd => "qri_graph_fwd",
            CheckId::QriGraphBwd => "qri_graph_bwd",
            CheckId::QriIntGraph => "qri_int_graph",
            CheckId::QiGraphBwd => "qi_graph_bwd",
            CheckId::AffGraph => "aff_graph",
            CheckId::EpiFormula => "epi_formula",
            CheckId::DomRgeQnc => "dom_rge_qnc",
            CheckId::BruteConcordance => "brute_concordance",
        }
    }
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for CheckId {
    type Err = Error;

    fn from_str(s: &str) -> Result<CheckId> {
        CheckId::ALL
            .iter()
            .copied()
            .find(|c| c.tag() == s)
            .ok_or_else(|| Error::Input(format!("unknown check id: {s}")))
    }
}

/// The checks behind a suite name. Single check tags are accepted as
/// one-element suites.
pub fn suite(name: &str) -> Result<Vec<CheckId>> {
    let ids: &[CheckId] = match name {
        "interiors" => &[
            CheckId::Chain33,
            CheckId::ConvexCollapse,
            CheckId::BetweennessVsIri,
            CheckId::SegStability,
            CheckId::LinearImageIri,
            CheckId::BruteConcordance,
        ],
        "nearconvex" => &[
            CheckId::ClassifyEquiv,
            CheckId::SandwichQri,
            CheckId::QiEqQri,
            CheckId::ImageLaws,
        ],
        "separation" => &[CheckId::NormalQri, CheckId::SepPoint, CheckId::TwoSetSep],
        "graphs" => &[
            CheckId::IriGraph,
            CheckId::SqriGraph,
            CheckId::QriGraphFwd,
            CheckId::QriGraphBwd,
            CheckId::QriIntGraph,
            CheckId::QiGraphBwd,
            CheckId::AffGraph,
            CheckId::EpiFormula,
            CheckId::DomRgeQnc,
        ],
        "all" => &CheckId::ALL,
        other => return Ok(vec![CheckId::from_str(other)?]),
    };
    Ok(ids.to_vec())
}

/// One re-verified counterexample.
#[derive(Clone, Debug, Serialize)]
pub struct ViolationRecord {
    /// Seed of the instance stream that produced it.
    pub seed: u64,
    /// The shrunk instance.
    pub instance: Value,
    /// The witness point, when the statement is pointwise.
    pub point: Option<QVector>,
    /// Which asserted implication failed.
    pub note: String,
    /// Production certificates, plus brute-force verdicts in dims ≤ 2.
    pub certificates: Value,
}

/// Aggregated outcome of one check over many instances.
#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    /// Stable check tag.
    pub check: String,
    /// Instances run.
    pub instances: usize,
    /// Instances with every asserted direction verified.
    pub passes: usize,
    /// Instances where no direction applied (hypothesis or budget).
    pub not_applicable: usize,
    /// More than half the instances were not applicable.
    pub vacuous: bool,
    /// Not-applicable instances caused by budget exhaustion alone.
    pub budget_stops: usize,
    /// Shrunk, certified counterexamples, in instance order.
    pub violations: Vec<ViolationRecord>,
    /// Known-discrepancy sightings that are recorded, not failed.
    pub flagged: Vec<Value>,
}

/// Outcome of a whole suite run.
#[derive(Clone, Debug, Serialize)]
pub struct SuiteOutcome {
    /// One report per check, in the order requested.
    pub reports: Vec<CheckReport>,
    /// Violations across all reports.
    pub total_violations: usize,
    /// Some check was vacuous (not-applicable rate above one half).
    pub vacuous: bool,
    /// Some check lost every instance to budget exhaustion.
    pub budget_exhausted: bool,
}

impl SuiteOutcome {
    /// Process exit code: 3 for suite-wide budget exhaustion, 1 for
    /// violations or vacuous checks, 0 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.budget_exhausted {
            3
        } else if self.total_violations > 0 || self.vacuous {
            1
        } else {
            0
        }
    }

    /// One JSON object per check, newline separated.
    pub fn to_jsonl(&self) -> String {
        let mut out = String::new();
        for r in &self.reports {
            out.push_str(&serde_json::to_string(r).expect("reports serialize"));
            out.push('\n');
        }
        out
    }
}

/// Runs the named checks, `count` instances each, from one base seed.
pub fn run_suite(
    checks: &[CheckId],
    count: usize,
    base_seed: u64,
    budget: &Budget,
    strategy: Strategy,
) -> Result<SuiteOutcome> {
    let mut reports = Vec::with_capacity(checks.len());
    for &check in checks {
        reports.push(run_check(check, count, base_seed, budget, strategy)?);
    }
    let total_violations = reports.iter().map(|r| r.violations.len()).sum();
    let vacuous = reports.iter().any(|r| r.vacuous);
    let budget_exhausted =
        reports.iter().any(|r| r.instances > 0 && r.budget_stops == r.instances);
    Ok(SuiteOutcome { reports, total_violations, vacuous, budget_exhausted })
}

/// Runs one check over `count` seeded instances.
pub fn run_check(
    check: CheckId,
    count: usize,
    base_seed: u64,
    budget: &Budget,
    strategy: Strategy,
) -> Result<CheckReport> {
    let results = exec::map_range(strategy, count, |i| run_instance(check, base_seed, i, budget));
    let mut passes = 0;
    let mut not_applicable = 0;
    let mut budget_stops = 0;
    let mut violations = Vec::new();
    let mut flagged = Vec::new();
    for r in results {
        let r = r?;
        if !r.violations.is_empty() {
            violations.extend(r.violations);
        } else if let Some(_reason) = &r.not_applicable {
            not_applicable += 1;
            if r.budget_stop {
                budget_stops += 1;
            }
        } else {
            passes += 1;
        }
        flagged.extend(r.flagged);
    }
    Ok(CheckReport {
        check: check.tag().to_string(),
        instances: count,
        passes,
        not_applicable,
        vacuous: count > 0 && not_applicable * 2 > count,
        budget_stops,
        violations,
        flagged,
    })
}

/// Per-instance sub-seed: base seed, check tag, and index mixed through
/// SplitMix64 so parallel execution never reorders a stream.
fn sub_seed(base: u64, tag: &str, index: usize) -> u64 {
    splitmix64(
        base.wrapping_add(tag_hash(tag))
            .wrapping_add((index as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15)),
    )
}

fn spec_for(check: CheckId, base_seed: u64, index: usize) -> InstanceSpec {
    let seed = sub_seed(base_seed, check.tag(), index);
    match check {
        CheckId::BruteConcordance => InstanceSpec {
            seed,
            dim: 1 + index % 2,
            pieces: 1 + index % 2,
            coeff_bound: 2,
            strictness: Rat::ratio(1, 4),
        },
        CheckId::IriGraph
        | CheckId::SqriGraph
        | CheckId::QriGraphFwd
        | CheckId::QriGraphBwd
        | CheckId::QriIntGraph
        | CheckId::QiGraphBwd
        | CheckId::AffGraph
        | CheckId::DomRgeQnc => InstanceSpec::new(seed, 2 + index % 3, 1 + index % 2),
        CheckId::EpiFormula => InstanceSpec::new(seed, 1 + index % 3, 1),
        _ => InstanceSpec::new(seed, 1 + index % 4, 1 + index % 3),
    }
}

fn kind_for(check: CheckId, index: usize) -> InstanceKind {
    match check {
        CheckId::Chain33 | CheckId::LinearImageIri | CheckId::BruteConcordance => {
            InstanceKind::Union
        }
        CheckId::ConvexCollapse | CheckId::SegStability => InstanceKind::Polyhedron,
        CheckId::BetweennessVsIri => InstanceKind::Union,
        CheckId::ClassifyEquiv => match index % 3 {
            0 => InstanceKind::Polyhedron,
            1 => InstanceKind::NearlyConvex,
            _ => InstanceKind::Union,
        },
        CheckId::SandwichQri
        | CheckId::NormalQri
        | CheckId::SepPoint
        | CheckId::QiEqQri
        | CheckId::TwoSetSep
        | CheckId::ImageLaws => InstanceKind::NearlyConvex,
        CheckId::IriGraph
        | CheckId::SqriGraph
        | CheckId::QriGraphFwd
        | CheckId::QriGraphBwd
        | CheckId::QriIntGraph
        | CheckId::QiGraphBwd
        | CheckId::AffGraph => {
            if index % 2 == 0 {
                InstanceKind::ConvexMap
            } else {
                InstanceKind::NcMap
            }
        }
        CheckId::EpiFormula => InstanceKind::PlFunction,
        CheckId::DomRgeQnc => InstanceKind::NcMap,
    }
}

/// Raw per-point finding before shrinking and certification.
struct RawViolation {
    point: Option<QVector>,
    note: String,
    certificates: Value,
}

/// One instance's evaluation against a statement.
struct Eval {
    not_applicable: Option<String>,
    violations: Vec<RawViolation>,
    flagged: Vec<Value>,
}

impl Eval {
    fn pass() -> Eval {
        Eval { not_applicable: None, violations: Vec::new(), flagged: Vec::new() }
    }

    fn na(reason: impl Into<String>) -> Eval {
        Eval { not_applicable: Some(reason.into()), violations: Vec::new(), flagged: Vec::new() }
    }

    fn violate(
        &mut self,
        point: Option<&QVector>,
        note: impl Into<String>,
        certificates: Value,
    ) {
        self.violations.push(RawViolation {
            point: point.cloned(),
            note: note.into(),
            certificates,
        });
    }
}

struct InstanceResult {
    not_applicable: Option<String>,
    budget_stop: bool,
    violations: Vec<ViolationRecord>,
    flagged: Vec<Value>,
}

fn run_instance(
    check: CheckId,
    base_seed: u64,
    index: usize,
    budget: &Budget,
) -> Result<InstanceResult> {
    let spec = spec_for(check, base_seed, index);
    match instance_eval(check, &spec, index, budget) {
        Err(Error::Resource(msg)) => Ok(InstanceResult {
            not_applicable: Some(format!("budget exhausted: {msg}")),
            budget_stop: true,
            violations: Vec::new(),
            flagged: Vec::new(),
        }),
        other => other,
    }
}

fn to_json<T: Serialize>(value: &T) -> Value {
    serde_json::to_value(value).unwrap_or(Value::Null)
}

/// Packages an evaluation: shrink on violation, re-derive the findings on
/// the shrunk instance, and attach brute-force verdicts in dims ≤ 2.
fn finish(
    seed: u64,
    omega: &UnionSet,
    eval: &dyn Fn(&UnionSet) -> Result<Eval>,
    describe: &dyn Fn(&UnionSet) -> Value,
) -> Result<InstanceResult> {
    let first = eval(omega)?;
    if first.violations.is_empty() {
        return Ok(InstanceResult {
            not_applicable: first.not_applicable,
            budget_stop: false,
            violations: Vec::new(),
            flagged: first.flagged,
        });
    }
    let still = |cand: &UnionSet| matches!(eval(cand), Ok(e) if !e.violations.is_empty());
    let shrunk = shrink_union(omega, &still);
    let (inst, ev) = match eval(&shrunk) {
        Ok(e) if !e.violations.is_empty() => (shrunk, e),
        _ => (omega.clone(), first),
    };
    let mut raw = ev.violations;
    raw.sort_by(|a, b| (&a.point, &a.note).cmp(&(&b.point, &b.note)));
    let instance_json = describe(&inst);
    let mut violations = Vec::with_capacity(raw.len());
    for v in raw {
        let certificates = match (&v.point, inst.dim <= 2) {
            (Some(p), true) => match brute_verdicts(&inst, p) {
                Ok(b) => json!({ "oracle": v.certificates, "brute": to_json(&b) }),
                Err(_) => v.certificates,
            },
            _ => v.certificates,
        };
        violations.push(ViolationRecord {
            seed,
            instance: instance_json.clone(),
            point: v.point,
            note: v.note,
            certificates,
        });
    }
    Ok(InstanceResult {
        not_applicable: None,
        budget_stop: false,
        violations,
        flagged: ev.flagged,
    })
}

/// Greedy shrinking: drop pieces, then rows, then pull coefficients toward
/// zero, keeping only changes under which the failure reproduces.
fn shrink_union(omega: &UnionSet, still: &dyn Fn(&UnionSet) -> bool) -> UnionSet {
    let mut cur = omega.clone();
    let mut evals = 0usize;
    const MAX_EVALS: usize = 128;
    let try_cand = |cand: UnionSet, evals: &mut usize| -> Option<UnionSet> {
        if *evals >= MAX_EVALS {
            return None;
        }
        *evals += 1;
        if still(&cand) {
            Some(cand)
        } else {
            None
        }
    };
    loop {
        let mut progressed = false;
        if cur.pieces.len() >= 2 {
            for i in 0..cur.pieces.len() {
                let mut pieces = cur.pieces.clone();
                pieces.remove(i);
                if let Ok(cand) = UnionSet::new(cur.dim, pieces) {
                    if let Some(next) = try_cand(cand, &mut evals) {
                        cur = next;
                        progressed = true;
                        break;
                    }
                }
            }
            if progressed {
                continue;
            }
        }
        'rows: for pi in 0..cur.pieces.len() {
            for ri in 0..cur.pieces[pi].constraints.len() {
                let mut pieces = cur.pieces.clone();
                pieces[pi].constraints.remove(ri);
                if let Ok(cand) = UnionSet::new(cur.dim, pieces) {
                    if let Some(next) = try_cand(cand, &mut evals) {
                        cur = next;
                        progressed = true;
                        break 'rows;
                    }
                }
            }
        }
        if progressed {
            continue;
        }
        'coeffs: for pi in 0..cur.pieces.len() {
            for ri in 0..cur.pieces[pi].constraints.len() {
                let dim = cur.dim;
                for slot in 0..=dim {
                    let current = if slot < dim {
                        cur.pieces[pi].constraints[ri].a[slot].clone()
                    } else {
                        cur.pieces[pi].constraints[ri].b.clone()
                    };
                    for smaller in shrink_values(&current) {
                        let mut pieces = cur.pieces.clone();
                        if slot < dim {
                            pieces[pi].constraints[ri].a[slot] = smaller;
                        } else {
                            pieces[pi].constraints[ri].b = smaller;
                        }
                        if let Ok(cand) = UnionSet::new(cur.dim, pieces) {
                            if let Some(next) = try_cand(cand, &mut evals) {
                                cur = next;
                                progressed = true;
                                break 'coeffs;
                            }
                        }
                    }
                }
            }
        }
        if !progressed || evals >= MAX_EVALS {
            return cur;
        }
    }
}

/// Simpler values to try in place of `v`: zero, the integer part, half the
/// integer part.
fn shrink_values(v: &Rat) -> Vec<Rat> {
    if v.is_zero() {
        return Vec::new();
    }
    let mut out = vec![Rat::zero()];
    let trunc = Rat::from(v.numer() / v.denom());
    let half = Rat::from(v.numer() / &(v.denom() * BigInt::from(2)));
    for cand in [trunc, half] {
        if &cand != v && !out.contains(&cand) {
            out.push(cand);
        }
    }
    out
}

/// Witness points of a union: per closed piece its vertices, its facet
/// centroids, pairwise midpoints of those, and two seeded samples from the
/// relative interior; globally sorted, deduplicated, and thinned to a
/// fixed budget.
pub fn witness_points(
    omega: &UnionSet,
    spec: &InstanceSpec,
    budget: &Budget,
) -> Result<Vec<QVector>> {
    if omega.is_empty_set() {
        return Err(Error::EmptyInput("witness points of an empty union".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(splitmix64(spec.seed ^ 0x57A7_1C5E));
    let mut pts: Vec<QVector> = Vec::new();
    for piece in &omega.closure_pieces()? {
        let gens = to_generators(piece, budget)?;
        let mut verts = gens.points.clone();
        verts.sort();
        if verts.is_empty() {
            continue;
        }
        let mut pool = verts.clone();
        pool.push(centroid(&verts));
        for row in &piece.constraints {
            let active: Vec<QVector> =
                verts.iter().filter(|v| row.a.dot(v) == row.b).cloned().collect();
            if !active.is_empty() {
                pool.push(centroid(&active));
            }
        }
        pool.sort();
        pool.dedup();
        pts.extend(pool.iter().cloned());
        let top = &pool[..pool.len().min(8)];
        for i in 0..top.len() {
            for j in i + 1..top.len() {
                pts.push(top[i].add(&top[j]).scale(&Rat::ratio(1, 2)));
            }
        }
        for _ in 0..2 {
            pts.push(ri_sample(&gens, omega.dim, &mut rng));
        }
    }
    pts.sort();
    pts.dedup();
    Ok(thin_points(pts, 24))
}

fn centroid(pts: &[QVector]) -> QVector {
    let mut acc = QVector::zeros(pts[0].dim());
    for p in pts {
        acc = acc.add(p);
    }
    acc.scale(&Rat::ratio(1, pts.len() as i64))
}

/// A strictly positive convex combination of all vertices (a relative
/// interior point), pushed along random recession directions.
fn ri_sample(gens: &GeneratorSet, dim: usize, rng: &mut ChaCha8Rng) -> QVector {
    let mut acc = QVector::zeros(dim);
    let mut total = Rat::zero();
    for p in &gens.points {
        let w = Rat::int(1 + rng.gen_range(0..8));
        acc = acc.add(&p.scale(&w));
        total += &w;
    }
    let mut x = acc.scale(&(&Rat::one() / &total));
    for r in &gens.rays {
        if rng.gen_range(0..2) == 1 {
            x = x.add(&r.scale(&Rat::int(rng.gen_range(0..=2))));
        }
    }
    for l in &gens.lines {
        if rng.gen_range(0..2) == 1 {
            x = x.add(&l.scale(&Rat::int(rng.gen_range(-2..=2))));
        }
    }
    x
}

/// Deterministic thinning to at most `cap` points, evenly spaced.
fn thin_points(pts: Vec<QVector>, cap: usize) -> Vec<QVector> {
    if pts.len() <= cap {
        return pts;
    }
    (0..cap).map(|i| pts[i * pts.len() / cap].clone()).collect()
}

const SIX_KINDS: [InteriorKind; 6] = [
    InteriorKind::Rint,
    InteriorKind::Ri,
    InteriorKind::Qi,
    InteriorKind::Sqri,
    InteriorKind::Iri,
    InteriorKind::Qri,
];

fn kind_slot(kind: InteriorKind) -> usize {
    SIX_KINDS.iter().position(|k| *k == kind).expect("kind is one of the six")
}

fn six_verdicts(
    omega: &UnionSet,
    x: &QVector,
    budget: &Budget,
) -> Result<Vec<MembershipCertificate>> {
    interior_profile(omega, x, budget, Strategy::Sequential)
}

fn six_json(certs: &[MembershipCertificate]) -> Value {
    let mut map = serde_json::Map::new();
    for (k, c) in SIX_KINDS.iter().zip(certs) {
        map.insert(format!("{k:?}").to_lowercase(), to_json(c));
    }
    Value::Object(map)
}

/// `cone(Ω − x̄)` is symmetric: every exact cone piece, reflected through
/// the origin, is covered by the exact cone union. This is the betweenness
/// condition in cone form.
fn cone_is_symmetric(omega: &UnionSet, x: &QVector, budget: &Budget) -> Result<bool> {
    let cones = cone_at(omega, x)?;
    let pieces: Vec<GenPolyhedron> =
        cones.entries.iter().flat_map(|e| e.exact_pieces.iter().cloned()).collect();
    for piece in &pieces {
        let report = covers(&piece.negate_rows(), &pieces, budget, Strategy::Sequential)?;
        if !report.covered {
            return Ok(false);
        }
    }
    Ok(true)
}

fn one_verdict(
    kind: InteriorKind,
    omega: &UnionSet,
    x: &QVector,
    budget: &Budget,
) -> Result<MembershipCertificate> {
    interior_membership(kind, omega, x, budget, Strategy::Sequential)
}

fn instance_eval(
    check: CheckId,
    spec: &InstanceSpec,
    index: usize,
    budget: &Budget,
) -> Result<InstanceResult> {
    match check {
        CheckId::Chain33 => eval_chain(spec, budget),
        CheckId::ConvexCollapse => eval_collapse(spec, budget),
        CheckId::BetweennessVsIri => eval_betweenness(spec, index, budget),
        CheckId::SegStability => eval_seg_stability(spec, budget),
        CheckId::LinearImageIri => eval_linear_image_iri(spec, budget),
        CheckId::ClassifyEquiv => eval_classify_equiv(spec, index, budget),
        CheckId::SandwichQri => eval_sandwich(spec, budget),
        CheckId::NormalQri => eval_normal_qri(spec, budget),
        CheckId::SepPoint => eval_sep_point(spec, budget),
        CheckId::QiEqQri => eval_qi_eq_qri(spec, budget),
        CheckId::TwoSetSep => eval_two_set_sep(spec, budget),
        CheckId::ImageLaws => eval_image_laws(spec, budget),
        CheckId::IriGraph
        | CheckId::SqriGraph
        | CheckId::QriGraphFwd
        | CheckId::QriGraphBwd
        | CheckId::QriIntGraph
        | CheckId::QiGraphBwd => eval_graph(check, spec, index, budget),
        CheckId::AffGraph => eval_aff_graph(spec, index, budget),
        CheckId::EpiFormula => eval_epi_formula(spec, budget),
        CheckId::DomRgeQnc => eval_dom_rge(spec, budget),
        CheckId::BruteConcordance => eval_brute_concordance(spec, budget),
    }
}

fn gen_union_instance(spec: &InstanceSpec, kind: InstanceKind, budget: &Budget) -> Result<UnionSet> {
    Ok(generate(spec, kind, budget)?.as_union().clone())
}

/// The inclusion chains: ri ⇒ sqri ⇒ iri ⇒ qri, ri ⇒ rint ⇒ iri, and
/// qi ⇒ qri, at every witness point of an arbitrary union.
fn eval_chain(spec: &InstanceSpec, budget: &Budget) -> Result<InstanceResult> {
    let omega = gen_union_instance(spec, InstanceKind::Union, budget)?;
    let seed = spec.seed;
    let spec = spec.clone();
    let eval = move |u: &UnionSet| -> Result<Eval> {
        let pts = witness_points(u, &spec, budget)?;
        let mut ev = Eval::pass();
        for x in &pts {
            let certs = six_verdicts(u, x, budget)?;
            let holds = |k: InteriorKind| certs[kind_slot(k)].member;
            let steps = [
                ("ri implies sqri", InteriorKind::Ri, InteriorKind::Sqri),
                ("sqri implies iri", InteriorKind::Sqri, InteriorKind::Iri),
                ("iri implies qri", InteriorKind::Iri, InteriorKind::Qri),
                ("ri implies rint", InteriorKind::Ri, InteriorKind::Rint),
                ("rint implies iri", InteriorKind::Rint, InteriorKind::Iri),
                ("qi implies qri", InteriorKind::Qi, InteriorKind::Qri),
            ];
            for (note, from, to) in steps {
                if holds(from) && !holds(to) {
                    ev.violate(
                        Some(x),
                        note,
                        json!({
                            "premise": to_json(&certs[kind_slot(from)]),
                            "conclusion": to_json(&certs[kind_slot(to)]),
                        }),
                    );
                }
            }
        }
        Ok(ev)
    };
    finish(seed, &omega, &eval, &|u| to_json(u))
}

/// On a convex polyhedron the five chain interiors coincide at every
/// point; the quasi-interior agrees too when the set is full-dimensional,
/// and is empty otherwise.
fn eval_collapse(spec: &InstanceSpec, budget: &Budget) -> Result<InstanceResult> {
    let omega = gen_union_instance(spec, InstanceKind::Polyhedron, budget)?;
    let seed = spec.seed;
    let spec = spec.clone();
    let eval = move |u: &UnionSet| -> Result<Eval> {
        let full_dim = affine_hull(&u.closure_pieces()?[0])?.basis.len() == u.dim;
        let pts = witness_points(u, &spec, budget)?;
        let mut ev = Eval::pass();
        for x in &pts {
            let certs = six_verdicts(u, x, budget)?;
            let holds = |k: InteriorKind| certs[kind_slot(k)].member;
            let chain = [
                InteriorKind::Ri,
                InteriorKind::Rint,
                InteriorKind::Sqri,
                InteriorKind::Iri,
                InteriorKind::Qri,
            ];
            let first = holds(chain[0]);
            if chain.iter().any(|&k| holds(k) != first) {
                ev.violate(
                    Some(x),
                    "chain interiors disagree on a convex polyhedron",
                    six_json(&certs),
                );
            }
            if full_dim {
                if holds(InteriorKind::Qi) != first {
                    ev.violate(
                        Some(x),
                        "quasi-interior splits from the chain on a full-dimensional convex set",
                        six_json(&certs),
                    );
                }
            } else if holds(InteriorKind::Qi) {
                ev.violate(
                    Some(x),
                    "nonempty quasi-interior on a lower-dimensional set",
                    six_json(&certs),
                );
            }
        }
        Ok(ev)
    };
    finish(seed, &omega, &eval, &|u| to_json(u))
}

/// Betweenness (cone symmetry) versus iri. iri always implies symmetry;
/// the converse is asserted on convex instances and only flagged
/// otherwise — the plus sign is the curated split, run as instance 0.
fn eval_betweenness(spec: &InstanceSpec, index: usize, budget: &Budget) -> Result<InstanceResult> {
    let omega = if index == 0 {
        plus_sign()
    } else {
        gen_union_instance(spec, InstanceKind::Union, budget)?
    };
    let seed = spec.seed;
    let spec = spec.clone();
    let eval = move |u: &UnionSet| -> Result<Eval> {
        let convex = classify(u, budget, Strategy::Sequential)?.class == SetClass::Convex;
        let pts = witness_points(u, &spec, budget)?;
        let mut ev = Eval::pass();
        for x in &pts {
            if !u.membership(x)? {
                continue;
            }
            let iri = one_verdict(InteriorKind::Iri, u, x, budget)?;
            let symmetric = cone_is_symmetric(u, x, budget)?;
            if iri.member && !symmetric {
                ev.violate(
                    Some(x),
                    "iri point whose cone is not symmetric",
                    json!({ "iri": to_json(&iri), "betweenness": symmetric }),
                );
            }
            if symmetric && !iri.member {
                if convex {
                    ev.violate(
                        Some(x),
                        "betweenness holds but iri fails on a convex set",
                        json!({ "iri": to_json(&iri), "betweenness": symmetric }),
                    );
                } else {
                    ev.flagged.push(json!({
                        "seed": seed,
                        "point": to_json(x),
                        "betweenness": true,
                        "iri": false,
                    }));
                }
            }
        }
        Ok(ev)
    };
    finish(seed, &omega, &eval, &|u| to_json(u))
}

/// Segment stability on convex polyhedra: from an interior point of any
/// chain kind, moving part-way toward any member stays in that interior.
fn eval_seg_stability(spec: &InstanceSpec, budget: &Budget) -> Result<InstanceResult> {
    let omega = gen_union_instance(spec, InstanceKind::Polyhedron, budget)?;
    let seed = spec.seed;
    let spec = spec.clone();
    let eval = move |u: &UnionSet| -> Result<Eval> {
        let pts = witness_points(u, &spec, budget)?;
        let mut members = Vec::new();
        for x in &pts {
            if u.membership(x)? {
                members.push(x.clone());
            }
        }
        members.truncate(3);
        let mut ev = Eval::pass();
        for kind in [InteriorKind::Ri, InteriorKind::Sqri, InteriorKind::Iri, InteriorKind::Qri] {
            let mut anchors = Vec::new();
            for x in &pts {
                if anchors.len() >= 2 {
                    break;
                }
                if one_verdict(kind, u, x, budget)?.member {
                    anchors.push(x.clone());
                }
            }
            for xbar in &anchors {
                for x0 in &members {
                    for t in [Rat::ratio(1, 2), Rat::ratio(3, 4)] {
                        let combo = xbar
                            .scale(&(&Rat::one() - &t))
                            .add(&x0.scale(&t));
                        let cert = one_verdict(kind, u, &combo, budget)?;
                        if !cert.member {
                            ev.violate(
                                Some(&combo),
                                format!("segment toward a member leaves {kind:?}"),
                                json!({
                                    "anchor": to_json(xbar),
                                    "member": to_json(x0),
                                    "t": to_json(&t),
                                    "combo": to_json(&cert),
                                }),
                            );
                        }
                    }
                }
            }
        }
        Ok(ev)
    };
    finish(seed, &omega, &eval, &|u| to_json(u))
}

/// `T(iri(Ω)) ⊆ iri(T(Ω))` for arbitrary unions.
fn eval_linear_image_iri(spec: &InstanceSpec, budget: &Budget) -> Result<InstanceResult> {
    let omega = gen_union_instance(spec, InstanceKind::Union, budget)?;
    let rows = 1 + (spec.seed as usize) % spec.dim;
    let t = gen_matrix(spec, rows);
    let seed = spec.seed;
    let spec = spec.clone();
    let eval = move |u: &UnionSet| -> Result<Eval> {
        let image = u.linear_image(&t)?;
        let pts = witness_points(u, &spec, budget)?;
        let mut ev = Eval::pass();
        for x in &pts {
            let pre = one_verdict(InteriorKind::Iri, u, x, budget)?;
            if !pre.member {
                continue;
            }
            let mapped = t.mul_vec(x);
            let post = one_verdict(InteriorKind::Iri, &image, &mapped, budget)?;
            if !post.member {
                ev.violate(
                    Some(x),
                    "linear image drops an iri point",
                    json!({
                        "image_point": to_json(&mapped),
                        "pre": to_json(&pre),
                        "post": to_json(&post),
                    }),
                );
            }
        }
        Ok(ev)
    };
    finish(seed, &omega, &eval, &|u| to_json(u))
}

/// The near-convexity characterizations, cross-checked: the classifier
/// verdict, the sandwich inclusions through the closed hull, the hull's
/// relative-interior samples, witness re-verification, and (dims ≤ 2) a
/// half-step grid sweep.
fn eval_classify_equiv(spec: &InstanceSpec, index: usize, budget: &Budget) -> Result<InstanceResult> {
    let kind = kind_for(CheckId::ClassifyEquiv, index);
    let omega = gen_union_instance(spec, kind, budget)?;
    let constructed = kind == InstanceKind::NearlyConvex;
    let seed = spec.seed;
    let spec = spec.clone();
    let eval = move |u: &UnionSet| -> Result<Eval> {
        let report = classify(u, budget, Strategy::Sequential)?;
        let hull = &report.hull;
        let ri_hull = ri_rows(hull)?;
        let mut ev = Eval::pass();
        if constructed && report.class == SetClass::Neither {
            ev.violate(
                None,
                "constructively nearly convex instance classified as neither",
                to_json(&report),
            );
        }
        match report.class {
            SetClass::Neither => {
                let ok = match &report.witness {
                    Some(w) => {
                        let in_ri_hull = ri_hull.membership(w)?;
                        let in_hull = hull.membership(w)?;
                        let in_closure = {
                            let mut found = false;
                            for piece in &u.closure_pieces()? {
                                if piece.membership(w)? {
                                    found = true;
                                    break;
                                }
                            }
                            found
                        };
                        (in_hull && !in_closure) || (in_ri_hull && !u.membership(w)?)
                    }
                    None => false,
                };
                if !ok {
                    ev.violate(
                        report.witness.as_ref(),
                        "neither verdict without a re-verifiable witness",
                        to_json(&report),
                    );
                }
            }
            SetClass::NearlyConvex => {
                let ok = match &report.witness {
                    Some(w) => hull.membership(w)? && !u.membership(w)?,
                    None => false,
                };
                if !ok {
                    ev.violate(
                        report.witness.as_ref(),
                        "nearly convex verdict without a hull point outside the set",
                        to_json(&report),
                    );
                }
            }
            SetClass::Convex => {}
        }
        if report.class != SetClass::Neither {
            let gens = to_generators(hull, budget)?;
            let mut rng = ChaCha8Rng::seed_from_u64(splitmix64(spec.seed ^ 0x0C1A_55FE));
            for _ in 0..3 {
                let s = ri_sample(&gens, u.dim, &mut rng);
                if !u.membership(&s)? {
                    ev.violate(
                        Some(&s),
                        "hull relative-interior sample escapes a nearly convex set",
                        to_json(&report),
                    );
                }
            }
        }
        if report.class == SetClass::Convex {
            let pts = witness_points(u, &spec, budget)?;
            for x in &pts {
                if hull.membership(x)? && !u.membership(x)? {
                    ev.violate(
                        Some(x),
                        "hull point outside a set classified convex",
                        to_json(&report),
                    );
                }
            }
        }
        if u.dim <= 2 {
            for g in grid_points(u, budget, Rat::ratio(1, 2))? {
                let in_ri_hull = ri_hull.membership(&g)?;
                let member = u.membership(&g)?;
                if in_ri_hull && !member && report.class != SetClass::Neither {
                    ev.violate(
                        Some(&g),
                        "grid point inside the hull's relative interior but outside the set",
                        to_json(&report),
                    );
                }
                if report.class == SetClass::Convex && hull.membership(&g)? && !member {
                    ev.violate(
                        Some(&g),
                        "grid point inside the hull of a convex-classified set but outside it",
                        to_json(&report),
                    );
                }
            }
        }
        Ok(ev)
    };
    finish(seed, &omega, &eval, &|u| to_json(u))
}

/// Pointwise `qri(Ω) = ri(cl Ω)` on nearly convex sets, both directions,
/// plus membership of hull relative-interior samples.
fn eval_sandwich(spec: &InstanceSpec, budget: &Budget) -> Result<InstanceResult> {
    let omega = gen_union_instance(spec, InstanceKind::NearlyConvex, budget)?;
    let seed = spec.seed;
    let spec = spec.clone();
    let eval = move |u: &UnionSet| -> Result<Eval> {
        let nc = NearlyConvexSet::new(u.clone(), budget, Strategy::Sequential)?;
        let c = qri_of_nearly_convex(&nc)?;
        let mut pts = witness_points(u, &spec, budget)?;
        let gens = to_generators(nc.hull(), budget)?;
        let mut rng = ChaCha8Rng::seed_from_u64(splitmix64(spec.seed ^ 0x5A2D_11C4));
        for _ in 0..2 {
            pts.push(ri_sample(&gens, u.dim, &mut rng));
        }
        pts.sort();
        pts.dedup();
        let mut ev = Eval::pass();
        for x in &pts {
            if !u.membership(x)? {
                if c.membership(x)? {
                    ev.violate(
                        Some(x),
                        "hull relative-interior point missing from the nearly convex set",
                        json!({ "ri_hull": to_json(&c) }),
                    );
                }
                continue;
            }
            let qri = one_verdict(InteriorKind::Qri, u, x, budget)?;
            let in_c = c.membership(x)?;
            if qri.member != in_c {
                ev.violate(
                    Some(x),
                    "qri differs from the hull's relative interior on a nearly convex set",
                    json!({ "qri": to_json(&qri), "in_ri_hull": in_c }),
                );
            }
        }
        Ok(ev)
    };
    finish(seed, &omega, &eval, &|u| to_json(u))
}

/// `x̄ ∈ qri(Ω)` iff the normal cone at `x̄` is symmetric (a subspace) —
/// the covering oracle against the polarity oracle.
fn eval_normal_qri(spec: &InstanceSpec, budget: &Budget) -> Result<InstanceResult> {
    let omega = gen_union_instance(spec, InstanceKind::NearlyConvex, budget)?;
    let seed = spec.seed;
    let spec = spec.clone();
    let eval = move |u: &UnionSet| -> Result<Eval> {
        let pts = witness_points(u, &spec, budget)?;
        let mut ev = Eval::pass();
        for x in &pts {
            if !u.membership(x)? {
                continue;
            }
            let qri = one_verdict(InteriorKind::Qri, u, x, budget)?;
            let n = normal_cone(u, x, budget)?;
            let symmetric = poly_equal(n.as_poly(), &n.as_poly().negate_rows())?;
            if qri.member != symmetric {
                ev.violate(
                    Some(x),
                    "qri verdict disagrees with normal-cone symmetry",
                    json!({
                        "qri": to_json(&qri),
                        "normal_cone": to_json(n.as_poly()),
                        "symmetric": symmetric,
                    }),
                );
            }
        }
        Ok(ev)
    };
    finish(seed, &omega, &eval, &|u| to_json(u))
}

/// Separation triangle at member points: qri = not properly separable
/// from the point; qi = trivial normal cone = not separable at all.
fn eval_sep_point(spec: &InstanceSpec, budget: &Budget) -> Result<InstanceResult> {
    let omega = gen_union_instance(spec, InstanceKind::NearlyConvex, budget)?;
    let seed = spec.seed;
    let spec = spec.clone();
    let eval = move |u: &UnionSet| -> Result<Eval> {
        let nc = NearlyConvexSet::new(u.clone(), budget, Strategy::Sequential)?;
        let origin = GenPolyhedron::point(&QVector::zeros(u.dim));
        let pts = witness_points(u, &spec, budget)?;
        let mut ev = Eval::pass();
        for x in &pts {
            if !u.membership(x)? {
                continue;
            }
            let qri = one_verdict(InteriorKind::Qri, u, x, budget)?;
            let qi = one_verdict(InteriorKind::Qi, u, x, budget)?;
            let sep = point_set_separation(&nc, x, budget, Strategy::Sequential)?;
            let n = normal_cone(u, x, budget)?;
            let n_trivial = poly_equal(n.as_poly(), &origin)?;
            let certs = json!({
                "qri": to_json(&qri),
                "qi": to_json(&qi),
                "separation": to_json(&sep),
                "normal_cone": to_json(n.as_poly()),
            });
            if qri.member != !sep.proper {
                ev.violate(Some(x), "qri disagrees with proper point separation", certs.clone());
            }
            if qi.member != n_trivial {
                ev.violate(Some(x), "qi disagrees with normal-cone triviality", certs.clone());
            }
            if qi.member != !sep.separable {
                ev.violate(Some(x), "qi disagrees with plain point separation", certs.clone());
            }
        }
        Ok(ev)
    };
    finish(seed, &omega, &eval, &|u| to_json(u))
}

/// When the quasi-interior is nonempty (full-dimensional hull) it equals
/// the quasi-relative interior; on lower-dimensional sets it is empty.
fn eval_qi_eq_qri(spec: &InstanceSpec, budget: &Budget) -> Result<InstanceResult> {
    let omega = gen_union_instance(spec, InstanceKind::NearlyConvex, budget)?;
    let seed = spec.seed;
    let spec = spec.clone();
    let eval = move |u: &UnionSet| -> Result<Eval> {
        let hull = union_hull(u, budget)?;
        let full_dim = affine_hull(&hull)?.basis.len() == u.dim;
        let pts = witness_points(u, &spec, budget)?;
        let mut ev = if full_dim {
            Eval::pass()
        } else {
            Eval::na("quasi-interior is empty: the hull is not full-dimensional")
        };
        for x in &pts {
            if !u.membership(x)? {
                continue;
            }
            let qi = one_verdict(InteriorKind::Qi, u, x, budget)?;
            if full_dim {
                let qri = one_verdict(InteriorKind::Qri, u, x, budget)?;
                if qi.member != qri.member {
                    ev.violate(
                        Some(x),
                        "qi and qri split despite a nonempty quasi-interior",
                        json!({ "qi": to_json(&qi), "qri": to_json(&qri) }),
                    );
                }
            } else if qi.member {
                ev.violate(
                    Some(x),
                    "nonempty quasi-interior on a lower-dimensional set",
                    to_json(&qi),
                );
            }
        }
        Ok(ev)
    };
    finish(seed, &omega, &eval, &|u| to_json(u))
}

/// An interior point of the closed hull of a polytope-hulled union.
fn hull_center(hull: &GenPolyhedron, budget: &Budget) -> Result<QVector> {
    let gens = to_generators(hull, budget)?;
    if gens.points.is_empty() {
        return Err(Error::EmptyInput("hull with no vertices".into()));
    }
    let mut pts = gens.points;
    pts.sort();
    Ok(centroid(&pts))
}

/// Proper separability of two intersecting nearly convex sets is
/// equivalent to disjointness of their quasi-relative interiors, under
/// the verified difference identity.
fn eval_two_set_sep(spec: &InstanceSpec, budget: &Budget) -> Result<InstanceResult> {
    let omega1 = gen_union_instance(spec, InstanceKind::NearlyConvex, budget)?;
    let spec2 = InstanceSpec { seed: splitmix64(spec.seed ^ 0x0BAD_CAFE), ..spec.clone() };
    let omega2 = gen_union_instance(&spec2, InstanceKind::NearlyConvex, budget)?;
    let seed = spec.seed;
    let omega2_fixed = {
        // Translate Ω₂ so both hull interiors share a point: the
        // intersection hypothesis then holds by construction.
        let n1 = NearlyConvexSet::new(omega1.clone(), budget, Strategy::Sequential)?;
        let n2 = NearlyConvexSet::new(omega2, budget, Strategy::Sequential)?;
        let s1 = hull_center(n1.hull(), budget)?;
        let s2 = hull_center(n2.hull(), budget)?;
        n2.body().translate(&s1.sub(&s2))?
    };
    let eval = move |u: &UnionSet| -> Result<Eval> {
        let n1 = NearlyConvexSet::new(u.clone(), budget, Strategy::Sequential)?;
        let n2 = NearlyConvexSet::new(omega2_fixed.clone(), budget, Strategy::Sequential)?;
        let eq = match qri_disjointness_equivalence(&n1, &n2, budget, Strategy::Sequential) {
            Ok(eq) => eq,
            Err(Error::Input(msg)) => {
                return Ok(Eval::na(format!("intersection hypothesis failed: {msg}")))
            }
            Err(e) => return Err(e),
        };
        if eq.difference_class == SetClass::Neither || !eq.qri_difference_matches {
            return Ok(Eval::na(
                "difference hypothesis failed: qri(Ω₁ − Ω₂) ≠ qri(Ω₁) − qri(Ω₂)",
            ));
        }
        let mut ev = Eval::pass();
        if eq.properly_separable == eq.qri_disjoint {
            ev.violate(
                None,
                "proper separability disagrees with qri disjointness",
                to_json(&eq),
            );
        }
        Ok(ev)
    };
    // Shrinking only Ω₁; Ω₂ stays fixed inside the closure.
    finish(seed, &omega1, &eval, &|u| {
        json!({ "omega1": to_json(u), "omega2": Value::Null })
    })
}

/// Near convexity survives linear images; qri pushes forward through
/// linear maps and commutes with translations.
fn eval_image_laws(spec: &InstanceSpec, budget: &Budget) -> Result<InstanceResult> {
    let omega = gen_union_instance(spec, InstanceKind::NearlyConvex, budget)?;
    let rows = 1 + (spec.seed as usize) % spec.dim;
    let t = gen_matrix(spec, rows);
    let shift = gen_shift(spec);
    let seed = spec.seed;
    let spec = spec.clone();
    let eval = move |u: &UnionSet| -> Result<Eval> {
        let nc = NearlyConvexSet::new(u.clone(), budget, Strategy::Sequential)?;
        let mut ev = Eval::pass();
        let image = match nc_linear_image(&nc, &t, budget, Strategy::Sequential) {
            Ok(img) => Some(img),
            Err(Error::Input(msg)) => {
                ev.violate(
                    None,
                    "linear image of a nearly convex set failed to stay nearly convex",
                    json!({ "error": msg }),
                );
                None
            }
            Err(e) => return Err(e),
        };
        let translated = nc_translate(&nc, &shift)?;
        let pts = witness_points(u, &spec, budget)?;
        for x in &pts {
            if !u.membership(x)? {
                continue;
            }
            let qri = one_verdict(InteriorKind::Qri, u, x, budget)?;
            if let Some(img) = &image {
                if qri.member {
                    let mapped = t.mul_vec(x);
                    let post = one_verdict(InteriorKind::Qri, img.body(), &mapped, budget)?;
                    if !post.member {
                        ev.violate(
                            Some(x),
                            "linear image drops a qri point",
                            json!({
                                "image_point": to_json(&mapped),
                                "pre": to_json(&qri),
                                "post": to_json(&post),
                            }),
                        );
                    }
                }
            }
            let moved = x.add(&shift);
            let post = one_verdict(InteriorKind::Qri, translated.body(), &moved, budget)?;
            if qri.member != post.member {
                ev.violate(
                    Some(x),
                    "qri is not translation invariant",
                    json!({ "pre": to_json(&qri), "post": to_json(&post) }),
                );
            }
        }
        Ok(ev)
    };
    finish(seed, &omega, &eval, &|u| to_json(u))
}

fn graph_check_of(check: CheckId) -> GraphCheck {
    match check {
        CheckId::IriGraph => GraphCheck::IriGraph,
        CheckId::SqriGraph => GraphCheck::SqriGraph,
        CheckId::QriGraphFwd => GraphCheck::QriGraphFwd,
        CheckId::QriGraphBwd => GraphCheck::QriGraphBwd,
        CheckId::QriIntGraph => GraphCheck::QriIntGraph,
        CheckId::QiGraphBwd => GraphCheck::QiGraphBwd,
        other => unreachable!("{other:?} is not a graph check"),
    }
}

/// Witness points that lie on the graph (the theorem checks require it).
fn graph_points(f: &SetMap, spec: &InstanceSpec, budget: &Budget) -> Result<Vec<QVector>> {
    let mut pts = Vec::new();
    for x in witness_points(&f.graph, spec, budget)? {
        if f.graph.membership(&x)? {
            pts.push(x);
        }
    }
    Ok(pts)
}

fn eval_graph(check: CheckId, spec: &InstanceSpec, index: usize, budget: &Budget) -> Result<InstanceResult> {
    let map = match generate(spec, kind_for(check, index), budget)? {
        Instance::Map(m) => m,
        _ => unreachable!("map kinds generate maps"),
    };
    let gc = graph_check_of(check);
    let (dim_x, dim_y) = (map.dim_x, map.dim_y);
    let seed = spec.seed;
    let spec = spec.clone();
    let eval = move |u: &UnionSet| -> Result<Eval> {
        let f = SetMap::new(dim_x, dim_y, u.clone())?;
        let pts = graph_points(&f, &spec, budget)?;
        let report = graph_theorem_check(gc, &f, &pts, budget, Strategy::Sequential)?;
        if !report.applicable() {
            return Ok(Eval::na(
                report.not_applicable.unwrap_or_else(|| "no direction asserted".into()),
            ));
        }
        let mut ev = Eval::pass();
        for v in &report.violations {
            ev.violate(
                Some(&v.point),
                format!("{}: {} direction failed", report.theorem, v.direction),
                json!({ "left": v.left, "right": v.right }),
            );
        }
        Ok(ev)
    };
    finish(seed, &map.graph, &eval, &|u| {
        match SetMap::new(dim_x, dim_y, u.clone()) {
            Ok(m) => to_json(&m),
            Err(_) => to_json(u),
        }
    })
}

/// The affine hull of a graph is the product of the domain hull and the
/// value space, under full-dimensional slices.
fn eval_aff_graph(spec: &InstanceSpec, index: usize, budget: &Budget) -> Result<InstanceResult> {
    let map = match generate(spec, kind_for(CheckId::AffGraph, index), budget)? {
        Instance::Map(m) => m,
        _ => unreachable!("map kinds generate maps"),
    };
    let (dim_x, dim_y) = (map.dim_x, map.dim_y);
    let seed = spec.seed;
    let eval = move |u: &UnionSet| -> Result<Eval> {
        let f = SetMap::new(dim_x, dim_y, u.clone())?;
        let report = aff_graph_check(&f, budget)?;
        if !report.applicable {
            return Ok(Eval::na("some probe point has a lower-dimensional slice"));
        }
        let mut ev = Eval::pass();
        if !report.holds {
            ev.violate(
                report.witness.as_ref(),
                "graph affine hull differs from the domain-times-space product",
                to_json(&report),
            );
        }
        Ok(ev)
    };
    finish(seed, &map.graph, &eval, &|u| {
        match SetMap::new(dim_x, dim_y, u.clone()) {
            Ok(m) => to_json(&m),
            Err(_) => to_json(u),
        }
    })
}

/// Epigraph interiors versus strict values: at `(x, α)` on the epigraph,
/// each interior holds iff `f(x) < α` and `x` is in the matching interior
/// of the domain.
fn eval_epi_formula(spec: &InstanceSpec, budget: &Budget) -> Result<InstanceResult> {
    let f = match generate(spec, InstanceKind::PlFunction, budget)? {
        Instance::Function(f) => f,
        _ => unreachable!("pl_function generates functions"),
    };
    let pieces = f.pieces.clone();
    let seed = spec.seed;
    let spec = spec.clone();
    let eval = move |u: &UnionSet| -> Result<Eval> {
        if u.pieces.len() != 1 {
            return Err(Error::Input("function domains are single polyhedra".into()));
        }
        let g = epi_of(pieces.clone(), u.pieces[0].clone())?;
        let dpts = witness_points(u, &spec, budget)?;
        let mut gpts = Vec::new();
        for x in &dpts {
            if let Some(v) = g.value(x)? {
                for off in [Rat::zero(), Rat::ratio(1, 2), Rat::one()] {
                    gpts.push(x.concat(&QVector(vec![&v + &off])));
                }
            }
        }
        gpts.sort();
        gpts.dedup();
        let report = epi_formula_check(&g, &gpts, budget, Strategy::Sequential)?;
        let mut ev = Eval::pass();
        for v in &report.violations {
            ev.violate(
                Some(&v.point),
                format!("{}: {} failed", report.theorem, v.direction),
                json!({ "left": v.left, "right": v.right }),
            );
        }
        Ok(ev)
    };
    let domain_union = UnionSet::from_piece(f.domain.clone())?;
    let pieces_desc = f.pieces.clone();
    finish(seed, &domain_union, &eval, &move |u| {
        match epi_of(pieces_desc.clone(), u.pieces[0].clone()) {
            Ok(g) => to_json(&g),
            Err(_) => to_json(u),
        }
    })
}

/// Domains and ranges of nearly convex maps classify as convex or nearly
/// convex, never neither.
fn eval_dom_rge(spec: &InstanceSpec, budget: &Budget) -> Result<InstanceResult> {
    let map = match generate(spec, InstanceKind::NcMap, budget)? {
        Instance::Map(m) => m,
        _ => unreachable!("map kinds generate maps"),
    };
    let (dim_x, dim_y) = (map.dim_x, map.dim_y);
    let seed = spec.seed;
    let eval = move |u: &UnionSet| -> Result<Eval> {
        let f = SetMap::new(dim_x, dim_y, u.clone())?;
        let mut ev = Eval::pass();
        let dom = classify(&domain_of(&f)?, budget, Strategy::Sequential)?;
        if dom.class == SetClass::Neither {
            ev.violate(
                dom.witness.as_ref(),
                "domain of a nearly convex map classified as neither",
                to_json(&dom),
            );
        }
        let rge = classify(&range_of(&f)?, budget, Strategy::Sequential)?;
        if rge.class == SetClass::Neither {
            ev.violate(
                rge.witness.as_ref(),
                "range of a nearly convex map classified as neither",
                to_json(&rge),
            );
        }
        Ok(ev)
    };
    finish(seed, &map.graph, &eval, &|u| {
        match SetMap::new(dim_x, dim_y, u.clone()) {
            Ok(m) => to_json(&m),
            Err(_) => to_json(u),
        }
    })
}

/// Exact rational grid over the bounding box of the union's vertices,
/// padded by 1/2 and clamped to [-8, 8], at the given step.
fn grid_points(omega: &UnionSet, budget: &Budget, step: Rat) -> Result<Vec<QVector>> {
    let dim = omega.dim;
    if dim > 2 {
        return Ok(Vec::new());
    }
    let mut lo = vec![Rat::int(-1); dim];
    let mut hi = vec![Rat::int(1); dim];
    for piece in &omega.closure_pieces()? {
        for v in to_generators(piece, budget)?.points {
            for (i, c) in v.0.iter().enumerate() {
                if *c < lo[i] {
                    lo[i] = c.clone();
                }
                if *c > hi[i] {
                    hi[i] = c.clone();
                }
            }
        }
    }
    let pad = Rat::ratio(1, 2);
    let clamp_lo = Rat::int(-8);
    let clamp_hi = Rat::int(8);
    for i in 0..dim {
        lo[i] = (&lo[i] - &pad).max(clamp_lo.clone());
        hi[i] = (&hi[i] + &pad).min(clamp_hi.clone()).max(lo[i].clone());
    }
    let axis = |i: usize| -> Vec<Rat> {
        let span = &(&hi[i] - &lo[i]) / &step;
        let count = (span.numer() / span.denom()).to_string().parse::<i64>().unwrap_or(0);
        (0..=count).map(|k| &lo[i] + &(&step * &Rat::int(k))).collect()
    };
    let mut out = Vec::new();
    match dim {
        1 => {
            for x in axis(0) {
                out.push(QVector(vec![x]));
            }
        }
        2 => {
            let xs = axis(0);
            let ys = axis(1);
            for x in &xs {
                for y in &ys {
                    out.push(QVector(vec![x.clone(), y.clone()]));
                }
            }
        }
        _ => {}
    }
    Ok(out)
}

/// Production verdicts versus the brute-force oracle: membership on the
/// full 1/8 grid, all seven verdicts at witness points, on the full grid
/// in dimension 1, and on an evenly thinned member sample in dimension 2.
fn eval_brute_concordance(spec: &InstanceSpec, budget: &Budget) -> Result<InstanceResult> {
    let omega = gen_union_instance(spec, InstanceKind::Union, budget)?;
    let seed = spec.seed;
    let spec = spec.clone();
    let eval = move |u: &UnionSet| -> Result<Eval> {
        let mut ev = Eval::pass();
        let grid = grid_points(u, budget, Rat::ratio(1, 8))?;
        let mut full_compare = witness_points(u, &spec, budget)?;
        let mut members = Vec::new();
        for g in &grid {
            let b = brute_membership(u, g);
            let p = u.membership(g)?;
            if b != p {
                ev.violate(
                    Some(g),
                    "brute and production membership disagree",
                    json!({ "brute": b, "production": p }),
                );
            }
            if b {
                members.push(g.clone());
            }
        }
        if u.dim == 1 {
            full_compare.extend(grid.iter().cloned());
        } else {
            let stride = members.len().div_ceil(48).max(1);
            full_compare.extend(members.iter().step_by(stride).cloned());
        }
        full_compare.sort();
        full_compare.dedup();
        for x in &full_compare {
            let b = brute_verdicts(u, x)?;
            let certs = six_verdicts(u, x, budget)?;
            let holds = |k: InteriorKind| certs[kind_slot(k)].member;
            let member = u.membership(x)?;
            let fields = [
                ("member", b.member, member),
                ("rint", b.rint, holds(InteriorKind::Rint)),
                ("ri", b.ri, holds(InteriorKind::Ri)),
                ("qi", b.qi, holds(InteriorKind::Qi)),
                ("sqri", b.sqri, holds(InteriorKind::Sqri)),
                ("iri", b.iri, holds(InteriorKind::Iri)),
                ("qri", b.qri, holds(InteriorKind::Qri)),
            ];
            for (name, bv, pv) in fields {
                if bv != pv {
                    ev.violate(
                        Some(x),
                        format!("brute oracle disagrees on {name}"),
                        json!({ "brute": to_json(&b), "production": six_json(&certs) }),
                    );
                }
            }
        }
        Ok(ev)
    };
    finish(seed, &omega, &eval, &|u| to_json(u))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::genpoly::Rel;

    fn run(check: CheckId, count: usize, seed: u64) -> CheckReport {
        run_check(check, count, seed, &Budget::default(), Strategy::Sequential).unwrap()
    }

    fn assert_clean(report: &CheckReport) {
        assert!(
            report.violations.is_empty(),
            "violations in {}: {}",
            report.check,
            serde_json::to_string_pretty(&report.violations).unwrap()
        );
    }

    #[test]
    fn check_tags_round_trip() {
        for check in CheckId::ALL {
            assert_eq!(CheckId::from_str(check.tag()).unwrap(), check);
        }
        assert!(CheckId::from_str("no_such_check").is_err());
    }

    #[test]
    fn suites_cover_every_check() {
        let mut seen: Vec<CheckId> = ["interiors", "nearconvex", "separation", "graphs"]
            .iter()
            .flat_map(|s| suite(s).unwrap())
            .collect();
        seen.sort_by_key(|c| c.tag());
        seen.dedup();
        assert_eq!(seen.len(), CheckId::ALL.len());
        assert_eq!(suite("all").unwrap().len(), CheckId::ALL.len());
        assert_eq!(suite("chain_3_3").unwrap(), vec![CheckId::Chain33]);
        assert!(suite("bogus").is_err());
    }

    #[test]
    fn witness_points_of_a_segment() {
        let seg = crate::genpoly::GenPolyhedron::new(
            1,
            vec![
                crate::genpoly::Constraint::new(QVector::from_ints(&[-1]), Rel::Le, Rat::zero()),
                crate::genpoly::Constraint::new(QVector::from_ints(&[1]), Rel::Le, Rat::one()),
            ],
        )
        .unwrap();
        let u = UnionSet::from_piece(seg).unwrap();
        let pts =
            witness_points(&u, &InstanceSpec::new(1, 1, 1), &Budget::default()).unwrap();
        for want in [Rat::zero(), Rat::one(), Rat::ratio(1, 2)] {
            assert!(pts.iter().any(|p| p.0 == vec![want.clone()]), "missing {want:?}");
        }
    }

    #[test]
    fn witness_points_of_the_plus_sign() {
        let pts = witness_points(&plus_sign(), &InstanceSpec::new(1, 2, 2), &Budget::default())
            .unwrap();
        let want = [
            QVector::from_ints(&[0, 0]),
            QVector::from_ints(&[1, 0]),
            QVector::from_ints(&[-1, 0]),
            QVector::from_ints(&[0, 1]),
            QVector::from_ints(&[0, -1]),
            QVector(vec![Rat::ratio(1, 2), Rat::zero()]),
            QVector(vec![Rat::ratio(-1, 2), Rat::zero()]),
            QVector(vec![Rat::zero(), Rat::ratio(1, 2)]),
            QVector(vec![Rat::zero(), Rat::ratio(-1, 2)]),
        ];
        for w in &want {
            assert!(pts.contains(w), "missing {w:?}");
        }
    }

    #[test]
    fn chain_holds_on_seeded_unions() {
        let report = run(CheckId::Chain33, 6, 11);
        assert_clean(&report);
        assert_eq!(report.passes, 6);
    }

    #[test]
    fn convex_collapse_holds() {
        let report = run(CheckId::ConvexCollapse, 6, 12);
        assert_clean(&report);
        assert_eq!(report.passes, 6);
    }

    #[test]
    fn betweenness_flags_the_plus_sign() {
        let report = run(CheckId::BetweennessVsIri, 2, 13);
        assert_clean(&report);
        let origin = to_json(&QVector::from_ints(&[0, 0]));
        assert!(
            report.flagged.iter().any(|f| f["point"] == origin),
            "plus-sign origin not flagged: {:?}",
            report.flagged
        );
    }

    #[test]
    fn segment_stability_holds() {
        assert_clean(&run(CheckId::SegStability, 4, 14));
    }

    #[test]
    fn linear_images_preserve_iri() {
        assert_clean(&run(CheckId::LinearImageIri, 4, 15));
    }

    #[test]
    fn classifier_characterizations_agree() {
        let report = run(CheckId::ClassifyEquiv, 6, 16);
        assert_clean(&report);
    }

    #[test]
    fn sandwich_and_separation_checks_hold() {
        assert_clean(&run(CheckId::SandwichQri, 4, 17));
        assert_clean(&run(CheckId::NormalQri, 4, 18));
        assert_clean(&run(CheckId::SepPoint, 4, 19));
        assert_clean(&run(CheckId::QiEqQri, 4, 20));
    }

    #[test]
    fn two_set_separation_equivalence_holds() {
        assert_clean(&run(CheckId::TwoSetSep, 4, 21));
    }

    #[test]
    fn image_laws_hold() {
        assert_clean(&run(CheckId::ImageLaws, 4, 22));
    }

    #[test]
    fn graph_checks_hold() {
        for check in [
            CheckId::IriGraph,
            CheckId::SqriGraph,
            CheckId::QriGraphFwd,
            CheckId::QriGraphBwd,
            CheckId::QriIntGraph,
            CheckId::QiGraphBwd,
            CheckId::AffGraph,
        ] {
            let report = run(check, 4, 23);
            assert_clean(&report);
        }
    }

    #[test]
    fn epigraph_and_dom_rge_checks_hold() {
        assert_clean(&run(CheckId::EpiFormula, 4, 24));
        assert_clean(&run(CheckId::DomRgeQnc, 4, 25));
    }

    #[test]
    fn brute_concordance_holds() {
        let report = run(CheckId::BruteConcordance, 6, 26);
        assert_clean(&report);
        assert_eq!(report.passes, 6);
    }

    #[test]
    fn reports_are_deterministic_across_strategies() {
        let budget = Budget::default();
        let checks = [CheckId::Chain33, CheckId::BruteConcordance];
        let a = run_suite(&checks, 3, 7, &budget, Strategy::Sequential).unwrap();
        let b = run_suite(&checks, 3, 7, &budget, Strategy::Sequential).unwrap();
        let c = run_suite(&checks, 3, 7, &budget, Strategy::Parallel).unwrap();
        assert_eq!(a.to_jsonl(), b.to_jsonl());
        assert_eq!(a.to_jsonl(), c.to_jsonl());
    }

    #[test]
    fn exit_codes_reflect_outcomes() {
        let clean = SuiteOutcome {
            reports: vec![],
            total_violations: 0,
            vacuous: false,
            budget_exhausted: false,
        };
        assert_eq!(clean.exit_code(), 0);
        let bad = SuiteOutcome { total_violations: 1, ..clean.clone() };
        assert_eq!(bad.exit_code(), 1);
        let vac = SuiteOutcome { vacuous: true, ..clean.clone() };
        assert_eq!(vac.exit_code(), 1);
        let starved = SuiteOutcome { budget_exhausted: true, ..clean };
        assert_eq!(starved.exit_code(), 3);
    }

    #[test]
    fn shrinking_trims_unrelated_pieces() {
        // Predicate: the union contains the origin. The far piece is
        // noise and must be dropped.
        let near = GenPolyhedron::point(&QVector::from_ints(&[0, 0]));
        let far = GenPolyhedron::point(&QVector::from_ints(&[3, 4]));
        let u = UnionSet::new(2, vec![near, far]).unwrap();
        let shrunk = shrink_union(&u, &|cand: &UnionSet| {
            cand.membership(&QVector::from_ints(&[0, 0])).unwrap_or(false)
        });
        assert_eq!(shrunk.pieces.len(), 1);
        assert!(shrunk.membership(&QVector::from_ints(&[0, 0])).unwrap());
    }
}
