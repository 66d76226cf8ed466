//! Generalized polyhedra: constraint systems mixing `<=`, `<`, and `=` rows.
//!
//! A `GenPolyhedron` is the solution set of finitely many affine constraints,
//! each tagged with one of the three relations. Closed polyhedra are the
//! special case without `<` rows. Emptiness, membership, and closure are all
//! decidable exactly; strictness never needs approximation because every
//! strict question reduces to a margin LP.

use serde::{Deserialize, Serialize};

use crate::exactnum::{
    in_span, solve_linear, span_basis, strict_feasibility, strictly_feasible, QMatrix, QVector,
    Rat, StrictRel, StrictRow,
};
use crate::{Error, Result};

/// Relation of one constraint row.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Rel {
    /// `a · x ≤ b`
    #[serde(rename = "<=")]
    Le,
    /// `a · x < b`
    #[serde(rename = "<")]
    Lt,
    /// `a · x = b`
    #[serde(rename = "=")]
    Eq,
}

impl Rel {
    /// Whether a row with this relation admits its boundary.
    pub fn is_strict(self) -> bool {
        self == Rel::Lt
    }

    /// The non-strict version of the relation.
    pub fn relaxed(self) -> Rel {
        match self {
            Rel::Lt => Rel::Le,
            other => other,
        }
    }
}

/// One affine constraint `a · x rel b`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Constraint {
    /// Row normal.
    pub a: QVector,
    /// Row relation.
    pub rel: Rel,
    /// Right-hand side.
    pub b: Rat,
}

impl Constraint {
    /// Builds a constraint.
    pub fn new(a: QVector, rel: Rel, b: Rat) -> Constraint {
        Constraint { a, rel, b }
    }

    /// True iff `x` satisfies the constraint with its exact relation.
    pub fn holds_at(&self, x: &QVector) -> bool {
        let lhs = self.a.dot(x);
        match self.rel {
            Rel::Le => lhs <= self.b,
            Rel::Lt => lhs < self.b,
            Rel::Eq => lhs == self.b,
        }
    }

    /// The constraint as a row of the strict-feasibility backend.
    pub fn as_strict_row(&self) -> StrictRow {
        StrictRow {
            a: self.a.clone(),
            rel: match self.rel {
                Rel::Le => StrictRel::Le,
                Rel::Lt => StrictRel::Lt,
                Rel::Eq => StrictRel::Eq,
            },
            b: self.b.clone(),
        }
    }

    /// Complement of the constraint as a disjoint list of constraints.
    ///
    /// `¬(a·x ≤ b)` is `−a·x < −b`; `¬(a·x < b)` is `−a·x ≤ −b`;
    /// `¬(a·x = b)` splits into the two strict sides.
    pub fn complement(&self) -> Vec<Constraint> {
        match self.rel {
            Rel::Le => vec![Constraint::new(self.a.neg(), Rel::Lt, -&self.b)],
            Rel::Lt => vec![Constraint::new(self.a.neg(), Rel::Le, -&self.b)],
            Rel::Eq => vec![
                Constraint::new(self.a.clone(), Rel::Lt, self.b.clone()),
                Constraint::new(self.a.neg(), Rel::Lt, -&self.b),
            ],
        }
    }

    /// True iff the normal is the zero vector.
    pub fn is_trivial(&self) -> bool {
        self.a.is_zero()
    }

    /// For a zero-normal row: whether `0 rel b` holds.
    pub fn trivial_truth(&self) -> bool {
        debug_assert!(self.is_trivial());
        match self.rel {
            Rel::Le => !self.b.is_negative(),
            Rel::Lt => self.b.is_positive(),
            Rel::Eq => self.b.is_zero(),
        }
    }
}

/// A generalized polyhedron in H-form.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct GenPolyhedron {
    /// Ambient dimension.
    pub dim: usize,
    /// Constraint rows, all with normals of length `dim`.
    pub constraints: Vec<Constraint>,
}

impl GenPolyhedron {
    /// Builds a polyhedron, checking row dimensions.
    pub fn new(dim: usize, constraints: Vec<Constraint>) -> Result<GenPolyhedron> {
        let p = GenPolyhedron { dim, constraints };
        p.validate()?;
        Ok(p)
    }

    /// The whole space (no constraints).
    pub fn full_space(dim: usize) -> GenPolyhedron {
        GenPolyhedron { dim, constraints: Vec::new() }
    }

    /// The canonical empty polyhedron `{0 · x ≤ −1}`.
    pub fn empty(dim: usize) -> GenPolyhedron {
        GenPolyhedron {
            dim,
            constraints: vec![Constraint::new(QVector::zeros(dim), Rel::Le, Rat::int(-1))],
        }
    }

    /// The single point `{x̄}` as an equality system.
    pub fn point(x: &QVector) -> GenPolyhedron {
        let dim = x.dim();
        let constraints = (0..dim)
            .map(|i| Constraint::new(QVector::unit(dim, i), Rel::Eq, x[i].clone()))
            .collect();
        GenPolyhedron { dim, constraints }
    }

    /// Checks structural invariants (row dimensions).
    pub fn validate(&self) -> Result<()> {
        for c in &self.constraints {
            if c.a.dim() != self.dim {
                return Err(Error::Dimension(format!(
                    "constraint normal of length {} in dimension {}",
                    c.a.dim(),
                    self.dim
                )));
            }
        }
        Ok(())
    }

    /// True iff `x` satisfies every constraint with its exact relation.
    pub fn membership(&self, x: &QVector) -> Result<bool> {
        if x.dim() != self.dim {
            return Err(Error::Dimension(format!(
                "point of length {} in dimension {}",
                x.dim(),
                self.dim
            )));
        }
        Ok(self.constraints.iter().all(|c| c.holds_at(x)))
    }

    /// The topological relaxation: every `<` row weakened to `≤`.
    pub fn relaxation(&self) -> GenPolyhedron {
        GenPolyhedron {
            dim: self.dim,
            constraints: self
                .constraints
                .iter()
                .map(|c| Constraint::new(c.a.clone(), c.rel.relaxed(), c.b.clone()))
                .collect(),
        }
    }

    /// True iff no row is strict.
    pub fn is_closed_form(&self) -> bool {
        self.constraints.iter().all(|c| !c.rel.is_strict())
    }

    /// Constraint rows in the strict-feasibility backend's shape.
    pub fn strict_rows(&self) -> Vec<StrictRow> {
        self.constraints.iter().map(Constraint::as_strict_row).collect()
    }

    /// Exact emptiness with evidence either way.
    pub fn is_empty(&self) -> Result<EmptinessReport> {
        let out = strict_feasibility(self.dim, &self.strict_rows())?;
        Ok(EmptinessReport {
            empty: !out.feasible,
            witness: out.witness,
            margin: out.margin,
        })
    }

    /// Exact emptiness as a bare boolean; cheaper than [`Self::is_empty`]
    /// because the feasibility search stops at the first interior point
    /// instead of maximizing the margin.
    pub fn is_empty_fast(&self) -> Result<bool> {
        Ok(!strictly_feasible(self.dim, &self.strict_rows())?)
    }

    /// Intersection by row concatenation (no simplification).
    pub fn intersect(&self, other: &GenPolyhedron) -> Result<GenPolyhedron> {
        if self.dim != other.dim {
            return Err(Error::Dimension(format!(
                "intersection of dimensions {} and {}",
                self.dim, other.dim
            )));
        }
        let mut constraints = self.constraints.clone();
        constraints.extend(other.constraints.iter().cloned());
        Ok(GenPolyhedron { dim: self.dim, constraints })
    }

    /// The reflection `−P`, by substituting `x ↦ −x` row by row.
    pub fn negate_rows(&self) -> GenPolyhedron {
        GenPolyhedron {
            dim: self.dim,
            constraints: self
                .constraints
                .iter()
                .map(|c| Constraint::new(c.a.neg(), c.rel, c.b.clone()))
                .collect(),
        }
    }

    /// The translate `P + t`, by shifting every right-hand side.
    pub fn translate(&self, t: &QVector) -> Result<GenPolyhedron> {
        if t.dim() != self.dim {
            return Err(Error::Dimension(format!(
                "translate by vector of length {} in dimension {}",
                t.dim(),
                self.dim
            )));
        }
        Ok(GenPolyhedron {
            dim: self.dim,
            constraints: self
                .constraints
                .iter()
                .map(|c| {
                    let shift = c.a.dot(t);
                    Constraint::new(c.a.clone(), c.rel, &c.b + &shift)
                })
                .collect(),
        })
    }
}

/// Outcome of an emptiness test.
#[derive(Clone, Debug)]
pub struct EmptinessReport {
    /// Whether the set is empty.
    pub empty: bool,
    /// A member point when nonempty (the maximum-margin point of the
    /// auxiliary LP, so it is well inside the strict rows).
    pub witness: Option<QVector>,
    /// The optimal strictness margin of the auxiliary LP, absent when even
    /// the non-strict relaxation is infeasible.
    pub margin: Option<Rat>,
}

/// A polyhedral cone: a `GenPolyhedron` whose rows all have right-hand side
/// zero, so the set is invariant under positive scaling.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyCone(GenPolyhedron);

impl PolyCone {
    /// Wraps a homogeneous system, checking that every rhs is zero.
    pub fn new(p: GenPolyhedron) -> Result<PolyCone> {
        if p.constraints.iter().any(|c| !c.b.is_zero()) {
            return Err(Error::Input("cone rows must have zero right-hand side".into()));
        }
        Ok(PolyCone(p))
    }

    /// The underlying polyhedron.
    pub fn as_poly(&self) -> &GenPolyhedron {
        &self.0
    }

    /// Consumes the wrapper.
    pub fn into_poly(self) -> GenPolyhedron {
        self.0
    }

    /// Ambient dimension.
    pub fn dim(&self) -> usize {
        self.0.dim
    }

    /// Membership of a direction vector.
    pub fn contains(&self, v: &QVector) -> Result<bool> {
        self.0.membership(v)
    }
}

/// An affine flat `basepoint + span(basis)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AffineFlat {
    /// One point of the flat.
    pub basepoint: QVector,
    /// Linearly independent direction vectors.
    pub basis: Vec<QVector>,
}

impl AffineFlat {
    /// Ambient dimension.
    pub fn dim(&self) -> usize {
        self.basepoint.dim()
    }

    /// Dimension of the flat itself.
    pub fn flat_dim(&self) -> usize {
        self.basis.len()
    }

    /// True iff `x` lies on the flat.
    pub fn contains(&self, x: &QVector) -> bool {
        in_span(&x.sub(&self.basepoint), &self.basis, self.dim())
    }

    /// The flat as an equality-only constraint system.
    ///
    /// Rows are a basis of the orthogonal complement of the direction space,
    /// each with rhs fixed by the basepoint.
    pub fn equality_system(&self) -> GenPolyhedron {
        let n = self.dim();
        if self.basis.is_empty() {
            return GenPolyhedron::point(&self.basepoint);
        }
        let m = QMatrix::from_rows(self.basis.clone()).expect("basis rows share dimension");
        let sol = solve_linear(&m, &QVector::zeros(self.basis.len()))
            .expect("dimensions match by construction");
        let constraints = sol
            .nullspace
            .into_iter()
            .map(|nrm| {
                let b = nrm.dot(&self.basepoint);
                Constraint::new(nrm, Rel::Eq, b)
            })
            .collect();
        GenPolyhedron { dim: n, constraints }
    }

    /// True iff the two flats are the same set.
    pub fn same_flat(&self, other: &AffineFlat) -> bool {
        if self.dim() != other.dim() || self.flat_dim() != other.flat_dim() {
            return false;
        }
        if !self.contains(&other.basepoint) {
            return false;
        }
        let mine = span_basis(&self.basis, self.dim());
        other.basis.iter().all(|v| in_span(v, &mine, self.dim()))
    }
}
