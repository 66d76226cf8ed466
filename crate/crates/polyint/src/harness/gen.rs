//! Seeded random instance generation.
//!
//! Everything here is a pure function of an [`InstanceSpec`]: the spec's
//! seed drives a counter-based stream cipher, so the same spec produces
//! byte-identical instances on every platform and under any degree of
//! parallelism. Polyhedra are built around a random integer anchor point
//! that every row is made to satisfy, which guarantees nonemptiness
//! without rejection loops; nearly convex sets are built constructively
//! as the relative interior of a random polytope together with a random
//! selection of its faces, so their classification is certain in advance.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::exactnum::{QMatrix, QVector, Rat};
use crate::genpoly::{
    canonicalize, convex_hull, ri_rows, Constraint, GeneratorSet, GenPolyhedron, Rel,
};
use crate::nearconvex::UnionSet;
use crate::setmap::{epi_of, AffinePiece, PLConvexFunction, SetMap};
use crate::{Budget, Error, Result};

/// Everything that determines one random instance.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InstanceSpec {
    /// Stream seed; two specs differing only here give unrelated instances.
    pub seed: u64,
    /// Ambient dimension (graph dimension for map kinds).
    pub dim: usize,
    /// Number of pieces in union-like instances.
    pub pieces: usize,
    /// Coefficients and anchors are drawn from `[-coeff_bound, coeff_bound]`.
    pub coeff_bound: i64,
    /// Probability of a strict row, as an exact rational in `[0, 1]`.
    pub strictness: Rat,
}

impl InstanceSpec {
    /// A spec with the default knobs (bound 4, strictness 1/4).
    pub fn new(seed: u64, dim: usize, pieces: usize) -> InstanceSpec {
        InstanceSpec {
            seed,
            dim,
            pieces,
            coeff_bound: 4,
            strictness: Rat::ratio(1, 4),
        }
    }
}

/// The families an [`InstanceSpec`] can be expanded into.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InstanceKind {
    /// One convex polyhedron, wrapped as a single-piece union.
    Polyhedron,
    /// A union of independent random polyhedra.
    Union,
    /// `ri(polytope) ∪ (selected faces)`: nearly convex by construction.
    NearlyConvex,
    /// A set-valued map whose graph is one convex polyhedron.
    ConvexMap,
    /// A set-valued map whose graph is a constructed nearly convex union.
    NcMap,
    /// A piecewise-linear convex function on a random domain.
    PlFunction,
}

/// A generated instance.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Instance {
    /// Set-like instances.
    Union(UnionSet),
    /// Map-like instances.
    Map(SetMap),
    /// Function instances.
    Function(PLConvexFunction),
}

impl Instance {
    /// The underlying union for set-like instances.
    pub fn as_union(&self) -> &UnionSet {
        match self {
            Instance::Union(u) => u,
            Instance::Map(m) => &m.graph,
            Instance::Function(_) => panic!("function instance has no union view"),
        }
    }
}

/// SplitMix64: the stable seed splitter used for all derived streams.
pub fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = x;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// FNV-1a over a tag, for deriving per-check streams from one base seed.
pub fn tag_hash(tag: &str) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in tag.as_bytes() {
        h ^= u64::from(*b);
        h = h.wrapping_mul(0x100_0000_01b3);
    }
    h
}

fn rng_for(spec: &InstanceSpec) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(splitmix64(spec.seed))
}

fn rand_int(rng: &mut ChaCha8Rng, bound: i64) -> i64 {
    rng.gen_range(-bound..=bound)
}

fn rand_point(rng: &mut ChaCha8Rng, dim: usize, bound: i64) -> QVector {
    QVector(
        (0..dim)
            .map(|_| Rat::int(rand_int(rng, bound)))
            .collect(),
    )
}

fn rand_nonzero_row(rng: &mut ChaCha8Rng, dim: usize, bound: i64) -> QVector {
    loop {
        let a = rand_point(rng, dim, bound);
        if a.0.iter().any(|c| c.signum() != 0) {
            return a;
        }
    }
}

/// True with probability `p` (exact rational threshold over a 0..240 roll).
fn roll(rng: &mut ChaCha8Rng, p: &Rat) -> bool {
    let r = Rat::ratio(rng.gen_range(0..240), 240);
    r < *p
}

/// A random polyhedron that provably contains a random integer anchor:
/// each row is `a·x R a·x₀ + slack` with slack chosen to keep `x₀`
/// feasible (strictly so for strict rows).
fn gen_polyhedron(rng: &mut ChaCha8Rng, spec: &InstanceSpec) -> Result<GenPolyhedron> {
    let dim = spec.dim;
    let bound = spec.coeff_bound.max(1);
    let anchor = rand_point(rng, dim, bound);
    let nrows = rng.gen_range(dim..=dim + 2);
    let mut rows = Vec::with_capacity(nrows);
    for _ in 0..nrows {
        let a = rand_nonzero_row(rng, dim, bound);
        let strict = roll(rng, &spec.strictness);
        let eq = !strict && roll(rng, &(&spec.strictness * &Rat::ratio(1, 2)));
        let (rel, slack) = if eq {
            (Rel::Eq, 0)
        } else if strict {
            (Rel::Lt, rng.gen_range(1..=bound))
        } else {
            (Rel::Le, rng.gen_range(0..=bound))
        };
        let b = a.dot(&anchor) + Rat::int(slack);
        rows.push(Constraint::new(a, rel, b));
    }
    GenPolyhedron::new(dim, rows)
}

/// The polytope hull used by the constructive nearly convex generator.
fn gen_polytope(
    rng: &mut ChaCha8Rng,
    spec: &InstanceSpec,
    budget: &Budget,
) -> Result<GenPolyhedron> {
    let n = spec.dim + 1 + rng.gen_range(0..=2);
    let points = (0..n)
        .map(|_| rand_point(rng, spec.dim, spec.coeff_bound.max(1)))
        .collect();
    let gens = GeneratorSet { points, rays: Vec::new(), lines: Vec::new() };
    convex_hull(spec.dim, &gens, budget)
}

fn gen_union(rng: &mut ChaCha8Rng, spec: &InstanceSpec) -> Result<UnionSet> {
    let k = spec.pieces.max(1);
    let mut pieces = Vec::with_capacity(k);
    for _ in 0..k {
        pieces.push(gen_polyhedron(rng, spec)?);
    }
    UnionSet::new(spec.dim, pieces)
}

/// `ri(H) ∪ (random faces of H)` for a random polytope `H`: guaranteed
/// nearly convex (or convex when every face joins), never "neither".
fn gen_nearly_convex(
    rng: &mut ChaCha8Rng,
    spec: &InstanceSpec,
    budget: &Budget,
) -> Result<UnionSet> {
    let hull = canonicalize(&gen_polytope(rng, spec, budget)?)?;
    let mut pieces = vec![ri_rows(&hull)?];
    for row in &hull.constraints {
        if row.rel != Rel::Le || !roll(rng, &Rat::ratio(1, 2)) {
            continue;
        }
        let mut face_rows = hull.constraints.clone();
        face_rows.push(Constraint::new(row.a.clone(), Rel::Eq, row.b.clone()));
        let face = canonicalize(&GenPolyhedron::new(spec.dim, face_rows)?)?;
        if !face.is_empty_fast()? {
            pieces.push(face);
        }
    }
    UnionSet::new(spec.dim, pieces)
}

fn split_dims(rng: &mut ChaCha8Rng, dim: usize) -> (usize, usize) {
    let total = dim.max(2);
    let dim_y = rng.gen_range(1..total);
    (total - dim_y, dim_y)
}

fn gen_map(rng: &mut ChaCha8Rng, spec: &InstanceSpec, budget: &Budget, convex: bool) -> Result<SetMap> {
    let (dim_x, dim_y) = split_dims(rng, spec.dim);
    let graph_spec = InstanceSpec { dim: dim_x + dim_y, ..spec.clone() };
    let graph = if convex {
        UnionSet::from_piece(gen_polyhedron(rng, &graph_spec)?)?
    } else {
        gen_nearly_convex(rng, &graph_spec, budget)?
    };
    SetMap::new(dim_x, dim_y, graph)
}

fn gen_pl_function(rng: &mut ChaCha8Rng, spec: &InstanceSpec) -> Result<PLConvexFunction> {
    let bound = spec.coeff_bound.max(1);
    let k = rng.gen_range(1..=3);
    let pieces = (0..k)
        .map(|_| AffinePiece {
            a: rand_point(rng, spec.dim, bound),
            b: Rat::int(rand_int(rng, bound)),
        })
        .collect();
    let domain = gen_polyhedron(rng, spec)?;
    epi_of(pieces, domain)
}

/// Expands a spec into an instance of the requested kind. Deterministic:
/// the spec fully determines the result.
pub fn generate(spec: &InstanceSpec, kind: InstanceKind, budget: &Budget) -> Result<Instance> {
    if spec.dim == 0 {
        return Err(Error::Input("instance dimension must be positive".into()));
    }
    let mut rng = rng_for(spec);
    Ok(match kind {
        InstanceKind::Polyhedron => {
            Instance::Union(UnionSet::from_piece(gen_polyhedron(&mut rng, spec)?)?)
        }
        InstanceKind::Union => Instance::Union(gen_union(&mut rng, spec)?),
        InstanceKind::NearlyConvex => {
            Instance::Union(gen_nearly_convex(&mut rng, spec, budget)?)
        }
        InstanceKind::ConvexMap => Instance::Map(gen_map(&mut rng, spec, budget, true)?),
        InstanceKind::NcMap => Instance::Map(gen_map(&mut rng, spec, budget, false)?),
        InstanceKind::PlFunction => Instance::Function(gen_pl_function(&mut rng, spec)?),
    })
}

/// A random wide matrix with small integer entries and no zero row, for
/// linear-image laws.
pub fn gen_matrix(spec: &InstanceSpec, rows: usize) -> QMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(splitmix64(spec.seed ^ 0xA5A5_5A5A));
    let mut out = Vec::with_capacity(rows);
    for _ in 0..rows {
        out.push(rand_nonzero_row(&mut rng, spec.dim, 2));
    }
    QMatrix::from_rows(out).expect("rows share the spec dimension")
}

/// A random integer translation vector.
pub fn gen_shift(spec: &InstanceSpec) -> QVector {
    let mut rng = ChaCha8Rng::seed_from_u64(splitmix64(spec.seed ^ 0x5A5A_A5A5));
    rand_point(&mut rng, spec.dim, spec.coeff_bound.max(1))
}

/// The plus sign `[-1,1]×{0} ∪ {0}×[-1,1]`: the curated instance whose
/// origin satisfies the betweenness condition but fails every subspace
/// interior.
pub fn plus_sign() -> UnionSet {
    let horizontal = GenPolyhedron::new(
        2,
        vec![
            Constraint::new(QVector::from_ints(&[0, 1]), Rel::Eq, Rat::zero()),
            Constraint::new(QVector::from_ints(&[-1, 0]), Rel::Le, Rat::one()),
            Constraint::new(QVector::from_ints(&[1, 0]), Rel::Le, Rat::one()),
        ],
    )
    .expect("fixed rows");
    let vertical = GenPolyhedron::new(
        2,
        vec![
            Constraint::new(QVector::from_ints(&[1, 0]), Rel::Eq, Rat::zero()),
            Constraint::new(QVector::from_ints(&[0, -1]), Rel::Le, Rat::one()),
            Constraint::new(QVector::from_ints(&[0, 1]), Rel::Le, Rat::one()),
        ],
    )
    .expect("fixed rows");
    UnionSet::new(2, vec![horizontal, vertical]).expect("nonempty union")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nearconvex::{classify, SetClass};
    use crate::Strategy;

    #[test]
    fn generation_is_deterministic() {
        let spec = InstanceSpec::new(1, 2, 1);
        let budget = Budget::default();
        let a = generate(&spec, InstanceKind::Polyhedron, &budget).unwrap();
        let b = generate(&spec, InstanceKind::Polyhedron, &budget).unwrap();
        assert_eq!(a, b);
        let ja = serde_json::to_string(&a).unwrap();
        let jb = serde_json::to_string(&b).unwrap();
        assert_eq!(ja, jb);
    }

    #[test]
    fn golden_polyhedron_seed_one() {
        let spec = InstanceSpec::new(1, 2, 1);
        let got = generate(&spec, InstanceKind::Polyhedron, &Budget::default()).unwrap();
        let json = serde_json::to_string(&got).unwrap();
        // Frozen on first generation; a change here means the stream or
        // the generator logic moved and every seeded suite shifts with it.
        let expected = r#"{"dim":2,"pieces":[{"dim":2,"constraints":[{"a":["4","-1"],"rel":"<=","b":"-1"},{"a":["-2","3"],"rel":"<=","b":"3"},{"a":["3","2"],"rel":"<=","b":"3"}]}]}"#;
        assert_eq!(json, expected);
    }

    #[test]
    fn different_seeds_differ() {
        let budget = Budget::default();
        let a = generate(&InstanceSpec::new(1, 2, 1), InstanceKind::Polyhedron, &budget).unwrap();
        let b = generate(&InstanceSpec::new(2, 2, 1), InstanceKind::Polyhedron, &budget).unwrap();
        assert_ne!(a, b);
    }

    #[test]
    fn nearly_convex_never_classifies_neither() {
        let budget = Budget::default();
        for seed in 0..100 {
            let spec = InstanceSpec::new(seed, 1 + (seed as usize % 3), 1);
            let inst = generate(&spec, InstanceKind::NearlyConvex, &budget).unwrap();
            let class = classify(inst.as_union(), &budget, Strategy::Sequential)
                .unwrap()
                .class;
            assert_ne!(class, SetClass::Neither, "seed {seed}");
        }
    }

    #[test]
    fn generated_pieces_are_nonempty() {
        let budget = Budget::default();
        for seed in 0..40 {
            let spec = InstanceSpec::new(seed, 1 + (seed as usize % 4), 2);
            let inst = generate(&spec, InstanceKind::Union, &budget).unwrap();
            for piece in &inst.as_union().pieces {
                assert!(!piece.is_empty().unwrap().empty);
            }
        }
    }

    #[test]
    fn plus_sign_shape() {
        let p = plus_sign();
        assert!(p.membership(&QVector::from_ints(&[0, 0])).unwrap());
        assert!(p.membership(&QVector::from_ints(&[1, 0])).unwrap());
        assert!(!p.membership(&QVector::from_ints(&[1, 1])).unwrap());
    }
}
