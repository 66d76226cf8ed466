//! Dual representations: generator sets, the double description method, and
//! the operations that are natural on generators (convex hulls, polar cones,
//! linear images, Minkowski sums).
//!
//! Generator sets describe closed sets only: `conv(points) + cone(rays) +
//! span(lines)`, with the empty set encoded by an empty point list. Sets
//! with strict faces have no canonical V-form, so every strict-aware path
//! stays in H-representation and the conversions here reject strict rows.
//!
//! The double description core maintains a basis of the current lineality
//! space alongside the pointed rays, processes equality rows first, and uses
//! the combinatorial adjacency test on tight-row bitmasks. All intermediate
//! generator counts are charged against [`Budget::max_generators`], and the
//! ambient dimension is capped by [`Budget::max_dd_dim`]; both trips are
//! hard [`Error::Resource`] failures, never silent truncation.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::exactnum::{lp_solve, LinRow, LpOutcome, LpProblem, QMatrix, QVector, Rat, Sense};
use crate::{Budget, Error, Result};

use super::canon::canonicalize;
use super::types::{Constraint, GenPolyhedron, PolyCone, Rel};
use crate::exactnum::span_basis;

/// Generators of a closed polyhedron: `conv(points) + cone(rays) +
/// span(lines)`. No points means the empty set, whatever the rays say.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorSet {
    /// Points whose convex hull forms the bounded part.
    #[serde(default)]
    pub points: Vec<QVector>,
    /// Recession directions, each taken with nonnegative weight.
    #[serde(default)]
    pub rays: Vec<QVector>,
    /// Directions contributing a full line each.
    #[serde(default)]
    pub lines: Vec<QVector>,
}

impl GeneratorSet {
    /// The generator set of the empty polyhedron.
    pub fn empty() -> GeneratorSet {
        GeneratorSet { points: Vec::new(), rays: Vec::new(), lines: Vec::new() }
    }

    /// True iff no points are listed, i.e. the set is empty.
    pub fn is_empty_set(&self) -> bool {
        self.points.is_empty()
    }

    /// Checks that every generator lives in dimension `dim` and that rays
    /// and lines are nonzero.
    pub fn validate(&self, dim: usize) -> Result<()> {
        for p in &self.points {
            if p.dim() != dim {
                return Err(Error::Dimension(format!(
                    "generator point of length {} in dimension {dim}",
                    p.dim()
                )));
            }
        }
        for (label, list) in [("ray", &self.rays), ("line", &self.lines)] {
            for v in list {
                if v.dim() != dim {
                    return Err(Error::Dimension(format!(
                        "generator {label} of length {} in dimension {dim}",
                        v.dim()
                    )));
                }
                if v.is_zero() {
                    return Err(Error::Input(format!("zero vector listed as a {label}")));
                }
            }
        }
        Ok(())
    }

    /// Deterministic normal form: lines become a reduced span basis, points
    /// and rays are reduced modulo that basis, rays are scaled to coprime
    /// integer coordinates, duplicates are dropped, and everything is sorted.
    pub fn canonicalize(&self, dim: usize) -> Result<GeneratorSet> {
        self.validate(dim)?;
        let lines: Vec<QVector> =
            span_basis(&self.lines, dim).iter().map(flip_primitive).collect();
        let mut points: Vec<QVector> =
            self.points.iter().map(|p| reduce_mod_lines(p, &lines)).collect();
        let mut rays: Vec<QVector> = self
            .rays
            .iter()
            .map(|r| reduce_mod_lines(r, &lines))
            .filter(|r| !r.is_zero())
            .map(|r| primitive(&r))
            .collect();
        points.sort();
        points.dedup();
        rays.sort();
        rays.dedup();
        Ok(GeneratorSet { points, rays, lines })
    }
}

/// Positive rescaling of a nonzero vector to coprime integer coordinates.
fn primitive(v: &QVector) -> QVector {
    let mut lcm = BigInt::one();
    for e in v.iter() {
        lcm = lcm.lcm(&e.denom());
    }
    let mut nums: Vec<BigInt> = v.iter().map(|e| e.numer() * (&lcm / e.denom())).collect();
    let mut gcd = BigInt::zero();
    for n in &nums {
        gcd = gcd.gcd(n);
    }
    if !gcd.is_zero() && !gcd.is_one() {
        for n in &mut nums {
            *n = &*n / &gcd;
        }
    }
    QVector(nums.into_iter().map(Rat::from).collect())
}

/// Like [`primitive`], but also flips sign so the leading nonzero coordinate
/// is positive — the normal form for lines, which are direction-free.
fn flip_primitive(v: &QVector) -> QVector {
    let p = primitive(v);
    match p.iter().find(|e| !e.is_zero()) {
        Some(lead) if lead.is_negative() => p.neg(),
        _ => p,
    }
}

/// Reduces `v` against a reduced-echelon line basis: each basis row zeroes
/// out the coordinate at its leading column. Membership in the represented
/// set is unchanged because the subtraction happens along lines.
fn reduce_mod_lines(v: &QVector, lines: &[QVector]) -> QVector {
    let mut out = v.clone();
    for line in lines {
        if let Some(j) = line.iter().position(|e| !e.is_zero()) {
            let c = &out[j] / &line[j];
            if !c.is_zero() {
                out = out.axpy(&-c, line);
            }
        }
    }
    out
}

/// Tight-row index set of a ray, stored as a bitmask.
#[derive(Clone, PartialEq, Eq)]
struct BitMask(Vec<u64>);

impl BitMask {
    fn new(nbits: usize) -> BitMask {
        BitMask(vec![0; nbits.div_ceil(64)])
    }

    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn meet(&self, other: &BitMask) -> BitMask {
        BitMask(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    fn is_subset_of(&self, other: &BitMask) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }
}

struct DdRay {
    v: QVector,
    mask: BitMask,
}

/// Double description on a homogeneous closed system: returns generators
/// `(rays, lines)` of the cone `{x : a_i · x ≤ 0 or = 0}`.
///
/// The state is a line basis plus pointed rays, every generator satisfying
/// all processed rows (lines with equality). A row independent of the
/// processed normals consumes one line; otherwise rays are split by sign and
/// adjacent (positive, negative) pairs are combined. Masks record exact
/// tightness, so the combinatorial adjacency test applies.
fn dd_generators(
    dim: usize,
    rows: &[Constraint],
    budget: &Budget,
) -> Result<(Vec<QVector>, Vec<QVector>)> {
    let ordered: Vec<&Constraint> = rows
        .iter()
        .filter(|c| c.rel == Rel::Eq && !c.a.is_zero())
        .chain(rows.iter().filter(|c| c.rel == Rel::Le && !c.a.is_zero()))
        .collect();
    debug_assert!(
        rows.iter().all(|c| c.rel != Rel::Lt && c.b.is_zero()),
        "double description expects homogeneous closed rows"
    );
    let m = ordered.len();
    let mut lines: Vec<QVector> = (0..dim).map(|i| QVector::unit(dim, i)).collect();
    let mut rays: Vec<DdRay> = Vec::new();

    for (idx, row) in ordered.iter().enumerate() {
        let a = &row.a;
        let is_eq = row.rel == Rel::Eq;
        if let Some(k) = lines.iter().position(|l| !a.dot(l).is_zero()) {
            let lstar = lines.remove(k);
            let dstar = a.dot(&lstar);
            for l in lines.iter_mut() {
                let c = &a.dot(l) / &dstar;
                if !c.is_zero() {
                    *l = l.axpy(&-c, &lstar);
                }
            }
            for r in rays.iter_mut() {
                let c = &a.dot(&r.v) / &dstar;
                if !c.is_zero() {
                    r.v = r.v.axpy(&-c, &lstar);
                }
                r.mask.set(idx);
            }
            if !is_eq {
                let v = if dstar.is_positive() { lstar.neg() } else { lstar };
                let mut mask = BitMask::new(m);
                for j in 0..idx {
                    mask.set(j);
                }
                rays.push(DdRay { v: primitive(&v), mask });
            }
        } else {
            let vals: Vec<Rat> = rays.iter().map(|r| a.dot(&r.v)).collect();
            let mut next: Vec<DdRay> = Vec::new();
            let mut pos: Vec<usize> = Vec::new();
            let mut neg: Vec<usize> = Vec::new();
            for (i, r) in rays.iter().enumerate() {
                match vals[i].signum() {
                    0 => {
                        let mut keep = DdRay { v: r.v.clone(), mask: r.mask.clone() };
                        keep.mask.set(idx);
                        next.push(keep);
                    }
                    -1 => {
                        neg.push(i);
                        if !is_eq {
                            next.push(DdRay { v: r.v.clone(), mask: r.mask.clone() });
                        }
                    }
                    _ => pos.push(i),
                }
            }
            for &p in &pos {
                for &n in &neg {
                    let meet = rays[p].mask.meet(&rays[n].mask);
                    let adjacent = rays
                        .iter()
                        .enumerate()
                        .all(|(j, r)| j == p || j == n || !meet.is_subset_of(&r.mask));
                    if !adjacent {
                        continue;
                    }
                    let w = rays[n].v.scale(&vals[p]).axpy(&-vals[n].clone(), &rays[p].v);
                    if w.is_zero() {
                        continue;
                    }
                    let w = primitive(&w);
                    if next.iter().any(|r| r.v == w) {
                        continue;
                    }
                    let mut mask = meet;
                    mask.set(idx);
                    next.push(DdRay { v: w, mask });
                    if next.len() > budget.max_generators {
                        return Err(Error::Resource(format!(
                            "double description exceeded {} generators",
                            budget.max_generators
                        )));
                    }
                }
            }
            rays = next;
        }
        if rays.len() > budget.max_generators {
            return Err(Error::Resource(format!(
                "double description exceeded {} generators",
                budget.max_generators
            )));
        }
    }

    let line_basis: Vec<QVector> = span_basis(&lines, dim).iter().map(flip_primitive).collect();
    let mut out_rays: Vec<QVector> = rays
        .into_iter()
        .map(|r| reduce_mod_lines(&r.v, &line_basis))
        .filter(|v| !v.is_zero())
        .map(|v| primitive(&v))
        .collect();
    out_rays.sort();
    out_rays.dedup();
    Ok((out_rays, line_basis))
}

fn check_dd_dim(dim: usize, budget: &Budget) -> Result<()> {
    if dim > budget.max_dd_dim {
        return Err(Error::Resource(format!(
            "generator conversion in dimension {dim} exceeds the cap {}",
            budget.max_dd_dim
        )));
    }
    Ok(())
}

fn require_closed(p: &GenPolyhedron, what: &str) -> Result<()> {
    if !p.is_closed_form() {
        return Err(Error::Input(format!(
            "{what} works on closed polyhedra; take the closure first"
        )));
    }
    Ok(())
}

/// True iff `r` lies in `cone(others) + span(lines)`.
fn ray_redundant(dim: usize, r: &QVector, others: &[QVector], lines: &[QVector]) -> Result<bool> {
    let nvar = others.len() + lines.len();
    if nvar == 0 {
        return Ok(false);
    }
    let mut rows = Vec::with_capacity(dim + others.len());
    for i in 0..dim {
        let mut a = QVector::zeros(nvar);
        for (j, o) in others.iter().enumerate() {
            a[j] = o[i].clone();
        }
        for (k, l) in lines.iter().enumerate() {
            a[others.len() + k] = l[i].clone();
        }
        rows.push(LinRow::eq(a, r[i].clone()));
    }
    for j in 0..others.len() {
        let mut a = QVector::zeros(nvar);
        a[j] = Rat::int(-1);
        rows.push(LinRow::le(a, Rat::zero()));
    }
    let lp = LpProblem {
        dim: nvar,
        sense: Sense::Max,
        objective: QVector::zeros(nvar),
        rows,
    };
    Ok(matches!(lp_solve(&lp)?, LpOutcome::Optimal { .. }))
}

/// True iff `p` lies in `conv(others) + cone(rays) + span(lines)`.
fn point_redundant(
    dim: usize,
    p: &QVector,
    others: &[QVector],
    rays: &[QVector],
    lines: &[QVector],
) -> Result<bool> {
    if others.is_empty() {
        return Ok(false);
    }
    let nvar = others.len() + rays.len() + lines.len();
    let mut rows = Vec::with_capacity(dim + 1 + others.len() + rays.len());
    for i in 0..dim {
        let mut a = QVector::zeros(nvar);
        for (j, o) in others.iter().enumerate() {
            a[j] = o[i].clone();
        }
        for (j, r) in rays.iter().enumerate() {
            a[others.len() + j] = r[i].clone();
        }
        for (k, l) in lines.iter().enumerate() {
            a[others.len() + rays.len() + k] = l[i].clone();
        }
        rows.push(LinRow::eq(a, p[i].clone()));
    }
    let mut convex = QVector::zeros(nvar);
    for j in 0..others.len() {
        convex[j] = Rat::one();
    }
    rows.push(LinRow::eq(convex, Rat::one()));
    for j in 0..others.len() + rays.len() {
        let mut a = QVector::zeros(nvar);
        a[j] = Rat::int(-1);
        rows.push(LinRow::le(a, Rat::zero()));
    }
    let lp = LpProblem {
        dim: nvar,
        sense: Sense::Max,
        objective: QVector::zeros(nvar),
        rows,
    };
    Ok(matches!(lp_solve(&lp)?, LpOutcome::Optimal { .. }))
}

/// Greedy irredundant subset: each survivor is not generated by the others.
fn drop_redundant<F>(items: &[QVector], mut redundant: F) -> Result<Vec<QVector>>
where
    F: FnMut(&QVector, &[QVector]) -> Result<bool>,
{
    let mut kept: Vec<bool> = vec![true; items.len()];
    for i in 0..items.len() {
        let others: Vec<QVector> = items
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i && kept[*j])
            .map(|(_, v)| v.clone())
            .collect();
        if redundant(&items[i], &others)? {
            kept[i] = false;
        }
    }
    Ok(items
        .iter()
        .zip(kept)
        .filter(|(_, k)| *k)
        .map(|(v, _)| v.clone())
        .collect())
}

/// Exact V-representation of a closed polyhedron, canonical and irredundant.
///
/// Runs the double description method on the homogenization over `(x, t)`
/// with `t ≥ 0`: rays with positive last coordinate dehomogenize to points,
/// rays on `t = 0` are recession directions, lines always have `t = 0`.
pub fn to_generators(p: &GenPolyhedron, budget: &Budget) -> Result<GeneratorSet> {
    p.validate()?;
    require_closed(p, "to_generators")?;
    check_dd_dim(p.dim, budget)?;
    if p.is_empty_fast()? {
        return Ok(GeneratorSet::empty());
    }
    let mut rows: Vec<Constraint> = p
        .constraints
        .iter()
        .map(|c| {
            let mut a = c.a.clone();
            a.0.push(-&c.b);
            Constraint::new(a, c.rel, Rat::zero())
        })
        .collect();
    let mut t_nonneg = QVector::zeros(p.dim + 1);
    t_nonneg[p.dim] = Rat::int(-1);
    rows.push(Constraint::new(t_nonneg, Rel::Le, Rat::zero()));
    let (hrays, hlines) = dd_generators(p.dim + 1, &rows, budget)?;

    let mut gens = GeneratorSet::empty();
    for l in &hlines {
        debug_assert!(l[p.dim].is_zero(), "lines cannot leave the t = 0 slice");
        gens.lines.push(l.slice(0, p.dim));
    }
    for r in &hrays {
        let t = &r[p.dim];
        debug_assert!(!t.is_negative(), "t ≥ 0 is part of the homogenized system");
        if t.is_zero() {
            gens.rays.push(r.slice(0, p.dim));
        } else {
            gens.points.push(r.slice(0, p.dim).scale(&t.recip()));
        }
    }
    let gens = gens.canonicalize(p.dim)?;

    let rays = drop_redundant(&gens.rays, |r, others| {
        ray_redundant(p.dim, r, others, &gens.lines)
    })?;
    let points = drop_redundant(&gens.points, |pt, others| {
        point_redundant(p.dim, pt, others, &rays, &gens.lines)
    })?;
    Ok(GeneratorSet { points, rays, lines: gens.lines })
}

/// Exact H-representation of `conv(points) + cone(rays) + span(lines)`,
/// canonicalized. An empty point list yields the empty polyhedron.
///
/// Works through the polar: the valid inequalities `w · x + s ≤ 0` form a
/// cone over `(w, s)` cut out by one row per generator; its double
/// description generators are exactly the facets (rays) and the affine-hull
/// equalities (lines) of the hull.
pub fn convex_hull(dim: usize, gens: &GeneratorSet, budget: &Budget) -> Result<GenPolyhedron> {
    gens.validate(dim)?;
    check_dd_dim(dim, budget)?;
    if gens.is_empty_set() {
        return Ok(GenPolyhedron::empty(dim));
    }
    let mut rows: Vec<Constraint> = Vec::new();
    for p in &gens.points {
        let mut a = p.clone();
        a.0.push(Rat::one());
        rows.push(Constraint::new(a, Rel::Le, Rat::zero()));
    }
    for r in &gens.rays {
        let mut a = r.clone();
        a.0.push(Rat::zero());
        rows.push(Constraint::new(a, Rel::Le, Rat::zero()));
    }
    for l in &gens.lines {
        let mut a = l.clone();
        a.0.push(Rat::zero());
        rows.push(Constraint::new(a, Rel::Eq, Rat::zero()));
    }
    let (prays, plines) = dd_generators(dim + 1, &rows, budget)?;
    let mut constraints: Vec<Constraint> = Vec::new();
    for r in &prays {
        constraints.push(Constraint::new(r.slice(0, dim), Rel::Le, -&r[dim]));
    }
    for l in &plines {
        constraints.push(Constraint::new(l.slice(0, dim), Rel::Eq, -&l[dim]));
    }
    canonicalize(&GenPolyhedron { dim, constraints })
}

/// The polar cone `K° = {w : w · x ≤ 0 for all x ∈ K}` of a closed cone.
pub fn polar_cone(k: &PolyCone, budget: &Budget) -> Result<PolyCone> {
    let p = k.as_poly();
    require_closed(p, "polar_cone")?;
    check_dd_dim(p.dim, budget)?;
    let (rays, lines) = dd_generators(p.dim, &p.constraints, budget)?;
    let mut constraints: Vec<Constraint> = Vec::new();
    for r in rays {
        constraints.push(Constraint::new(r, Rel::Le, Rat::zero()));
    }
    for l in lines {
        constraints.push(Constraint::new(l, Rel::Eq, Rat::zero()));
    }
    let poly = canonicalize(&GenPolyhedron { dim: p.dim, constraints })?;
    PolyCone::new(poly)
}

/// Exact image `{T x : x ∈ P}` of a closed polyhedron, via generators.
pub fn linear_image(p: &GenPolyhedron, t: &QMatrix, budget: &Budget) -> Result<GenPolyhedron> {
    p.validate()?;
    require_closed(p, "linear_image")?;
    if t.cols() != p.dim {
        return Err(Error::Dimension(format!(
            "map with {} columns applied in dimension {}",
            t.cols(),
            p.dim
        )));
    }
    check_dd_dim(p.dim.max(t.rows()), budget)?;
    if p.is_empty_fast()? {
        return Ok(GenPolyhedron::empty(t.rows()));
    }
    let gens = to_generators(p, budget)?;
    let image = GeneratorSet {
        points: gens.points.iter().map(|v| t.mul_vec(v)).collect(),
        rays: gens.rays.iter().map(|v| t.mul_vec(v)).filter(|v| !v.is_zero()).collect(),
        lines: gens.lines.iter().map(|v| t.mul_vec(v)).filter(|v| !v.is_zero()).collect(),
    };
    convex_hull(t.rows(), &image, budget)
}

/// Exact Minkowski sum `P + Q` of closed polyhedra, via generators: pairwise
/// point sums with the union of rays and lines.
pub fn minkowski_sum(p: &GenPolyhedron, q: &GenPolyhedron, budget: &Budget) -> Result<GenPolyhedron> {
    p.validate()?;
    q.validate()?;
    require_closed(p, "minkowski_sum")?;
    require_closed(q, "minkowski_sum")?;
    if p.dim != q.dim {
        return Err(Error::Dimension(format!(
            "minkowski_sum of dimensions {} and {}",
            p.dim, q.dim
        )));
    }
    check_dd_dim(p.dim, budget)?;
    if p.is_empty_fast()? || q.is_empty_fast()? {
        return Ok(GenPolyhedron::empty(p.dim));
    }
    let gp = to_generators(p, budget)?;
    let gq = to_generators(q, budget)?;
    if gp.points.len() * gq.points.len() > budget.max_generators {
        return Err(Error::Resource(format!(
            "minkowski_sum would build {} point sums, over the {} cap",
            gp.points.len() * gq.points.len(),
            budget.max_generators
        )));
    }
    let mut sum = GeneratorSet::empty();
    for a in &gp.points {
        for b in &gq.points {
            sum.points.push(a.add(b));
        }
    }
    sum.rays.extend(gp.rays.iter().cloned());
    sum.rays.extend(gq.rays.iter().cloned());
    sum.lines.extend(gp.lines.iter().cloned());
    sum.lines.extend(gq.lines.iter().cloned());
    let sum = sum.canonicalize(p.dim)?;
    convex_hull(p.dim, &sum, budget)
}

/// Exact reflection `−P = {−x : x ∈ P}` of a closed polyhedron, via
/// generators.
pub fn negate(p: &GenPolyhedron, budget: &Budget) -> Result<GenPolyhedron> {
    p.validate()?;
    require_closed(p, "negate")?;
    check_dd_dim(p.dim, budget)?;
    if p.is_empty_fast()? {
        return Ok(GenPolyhedron::empty(p.dim));
    }
    let gens = to_generators(p, budget)?;
    let negated = GeneratorSet {
        points: gens.points.iter().map(QVector::neg).collect(),
        rays: gens.rays.iter().map(QVector::neg).collect(),
        lines: gens.lines.clone(),
    };
    convex_hull(p.dim, &negated, budget)
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

    fn budget() -> Budget {
        Budget::default()
    }

    #[test]
    fn hull_of_triangle_vertices() {
        let gens = GeneratorSet {
            points: vec![qv(&[0, 0]), qv(&[1, 0]), qv(&[0, 1])],
            rays: vec![],
            lines: vec![],
        };
        let hull = convex_hull(2, &gens, &budget()).unwrap();
        let expected = poly(
            2,
            vec![
                (vec![-1, 0], Rel::Le, 0),
                (vec![0, -1], Rel::Le, 0),
                (vec![1, 1], Rel::Le, 1),
            ],
        );
        assert!(poly_equal(&hull, &expected).unwrap());
    }

    #[test]
    fn quadrant_generators() {
        let quadrant = poly(2, vec![(vec![-1, 0], Rel::Le, 0), (vec![0, -1], Rel::Le, 0)]);
        let gens = to_generators(&quadrant, &budget()).unwrap();
        assert_eq!(gens.points, vec![qv(&[0, 0])]);
        assert_eq!(gens.rays, vec![qv(&[0, 1]), qv(&[1, 0])]);
        assert!(gens.lines.is_empty());
    }

    #[test]
    fn square_round_trip() {
        let square = poly(
            2,
            vec![
                (vec![-1, 0], Rel::Le, 0),
                (vec![1, 0], Rel::Le, 1),
                (vec![0, -1], Rel::Le, 0),
                (vec![0, 1], Rel::Le, 1),
            ],
        );
        let gens = to_generators(&square, &budget()).unwrap();
        assert_eq!(gens.points.len(), 4);
        assert!(gens.rays.is_empty() && gens.lines.is_empty());
        let back = convex_hull(2, &gens, &budget()).unwrap();
        assert!(poly_equal(&back, &square).unwrap());
    }

    #[test]
    fn generators_then_hull_is_identity_on_canonical_sets() {
        let cases = vec![
            GeneratorSet {
                points: vec![qv(&[0, 0]), qv(&[2, 0])],
                rays: vec![qv(&[0, 1])],
                lines: vec![],
            },
            GeneratorSet {
                points: vec![qv(&[0, 0])],
                rays: vec![],
                lines: vec![qv(&[1, 2])],
            },
            GeneratorSet {
                points: vec![qv(&[0, 0]), qv(&[1, 0]), qv(&[0, 1])],
                rays: vec![],
                lines: vec![],
            },
        ];
        for gens in cases {
            let gens = gens.canonicalize(2).unwrap();
            let hull = convex_hull(2, &gens, &budget()).unwrap();
            let back = to_generators(&hull, &budget()).unwrap();
            assert_eq!(back, gens);
        }
    }

    #[test]
    fn hull_with_no_points_is_empty() {
        let gens = GeneratorSet { points: vec![], rays: vec![qv(&[1, 0])], lines: vec![] };
        let hull = convex_hull(2, &gens, &budget()).unwrap();
        assert!(hull.is_empty().unwrap().empty);
        assert_eq!(hull, GenPolyhedron::empty(2));
    }

    #[test]
    fn generators_of_flat_include_line() {
        let flat = poly(2, vec![(vec![1, 1], Rel::Eq, 1)]);
        let gens = to_generators(&flat, &budget()).unwrap();
        assert_eq!(gens.points.len(), 1);
        assert!(gens.rays.is_empty());
        assert_eq!(gens.lines.len(), 1);
        let back = convex_hull(2, &gens, &budget()).unwrap();
        assert!(poly_equal(&back, &flat).unwrap());
    }

    #[test]
    fn strict_rows_are_rejected() {
        let open = poly(1, vec![(vec![1], Rel::Lt, 1)]);
        assert!(matches!(to_generators(&open, &budget()), Err(Error::Input(_))));
    }

    #[test]
    fn dimension_cap_is_enforced() {
        let tight = Budget { max_dd_dim: 1, ..Budget::default() };
        let square = poly(2, vec![(vec![1, 0], Rel::Le, 1)]);
        assert!(matches!(to_generators(&square, &tight), Err(Error::Resource(_))));
    }

    #[test]
    fn polar_of_first_quadrant() {
        let quadrant = PolyCone::new(poly(
            2,
            vec![(vec![-1, 0], Rel::Le, 0), (vec![0, -1], Rel::Le, 0)],
        ))
        .unwrap();
        let polar = polar_cone(&quadrant, &budget()).unwrap();
        let expected = poly(2, vec![(vec![1, 0], Rel::Le, 0), (vec![0, 1], Rel::Le, 0)]);
        assert!(poly_equal(polar.as_poly(), &expected).unwrap());
    }

    #[test]
    fn polar_of_line_is_orthogonal_hyperplane() {
        // K = the x-axis; K° = {w : w1 = 0}.
        let axis = PolyCone::new(poly(2, vec![(vec![0, 1], Rel::Eq, 0)])).unwrap();
        let polar = polar_cone(&axis, &budget()).unwrap();
        let expected = poly(2, vec![(vec![1, 0], Rel::Eq, 0)]);
        assert!(poly_equal(polar.as_poly(), &expected).unwrap());
    }

    #[test]
    fn polar_of_origin_is_everything() {
        let origin = PolyCone::new(poly(
            2,
            vec![(vec![1, 0], Rel::Eq, 0), (vec![0, 1], Rel::Eq, 0)],
        ))
        .unwrap();
        let polar = polar_cone(&origin, &budget()).unwrap();
        assert!(poly_equal(polar.as_poly(), &GenPolyhedron::full_space(2)).unwrap());
    }

    #[test]
    fn image_of_triangle_under_projection() {
        let triangle = poly(
            2,
            vec![
                (vec![-1, 0], Rel::Le, 0),
                (vec![0, -1], Rel::Le, 0),
                (vec![1, 1], Rel::Le, 1),
            ],
        );
        let proj = QMatrix::from_rows(vec![qv(&[1, 0])]).unwrap();
        let image = linear_image(&triangle, &proj, &budget()).unwrap();
        let segment = poly(1, vec![(vec![-1], Rel::Le, 0), (vec![1], Rel::Le, 1)]);
        assert!(poly_equal(&image, &segment).unwrap());
    }

    #[test]
    fn minkowski_sum_of_orthogonal_segments() {
        let horizontal = poly(
            2,
            vec![
                (vec![0, 1], Rel::Eq, 0),
                (vec![-1, 0], Rel::Le, 0),
                (vec![1, 0], Rel::Le, 1),
            ],
        );
        let vertical = poly(
            2,
            vec![
                (vec![1, 0], Rel::Eq, 0),
                (vec![0, -1], Rel::Le, 0),
                (vec![0, 1], Rel::Le, 1),
            ],
        );
        let sum = minkowski_sum(&horizontal, &vertical, &budget()).unwrap();
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
    }

    #[test]
    fn negate_flips_a_half_line()  {
        let nonneg = poly(1, vec![(vec![-1], Rel::Le, 0)]);
        let negated = negate(&nonneg, &budget()).unwrap();
        let nonpos = poly(1, vec![(vec![1], Rel::Le, 0)]);
        assert!(poly_equal(&negated, &nonpos).unwrap());
    }

    #[test]
    fn dd_generator_budget_trips() {
        // A 3-D cube has 8 vertices; cap the run below that.
        let mut rows = Vec::new();
        for i in 0..3 {
            let mut lo = vec![0; 3];
            lo[i] = -1;
            rows.push((lo, Rel::Le, 0));
            let mut hi = vec![0; 3];
            hi[i] = 1;
            rows.push((hi, Rel::Le, 1));
        }
        let cube = poly(3, rows);
        let tight = Budget { max_generators: 4, ..Budget::default() };
        assert!(matches!(to_generators(&cube, &tight), Err(Error::Resource(_))));
    }

    #[test]
    fn hull_generators_agree_with_membership() {
        // Wedge with a line: {(x, y, z): x ≥ 0, y ≥ |x|-ish} plus z free.
        let p = poly(
            3,
            vec![
                (vec![-1, 0, 0], Rel::Le, 0),
                (vec![1, -1, 0], Rel::Le, 0),
            ],
        );
        let gens = to_generators(&p, &budget()).unwrap();
        assert_eq!(gens.lines.len(), 1);
        let back = convex_hull(3, &gens, &budget()).unwrap();
        assert!(poly_equal(&back, &p).unwrap());
    }
}
