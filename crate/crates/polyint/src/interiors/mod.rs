//! Membership oracles for six generalized interiors of a finite union of
//! generalized polyhedra, plus normal cones.
//!
//! All six notions reduce to questions about cones at the query point `x̄`:
//!
//! - `rint`/`ri`: every direction inside the affine hull enters the set —
//!   the translated hull is covered by the pieces' local cones at `x̄`;
//! - `iri`: `cone(Ω − x̄)` is a linear subspace;
//! - `sqri`: `cone(Ω − x̄)` is a closed linear subspace (decided by its own
//!   definition, not aliased to `iri`, so agreement is checkable);
//! - `qri`: `cl cone(Ω − x̄)` is a linear subspace;
//! - `qi`: `cl cone(Ω − x̄)` is the whole space.
//!
//! Every verdict carries evidence that re-verifies independently: a subspace
//! basis, a covering handle, or a gap direction that provably lies outside
//! the relevant cone. A point outside the set is never in any interior; that
//! case short-circuits with "not a member" evidence.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::exactnum::{span_basis, QVector, Rat};
use crate::genpoly::{
    affine_hull, closure, covers, exact_cone_pieces, homogenize_cone, polar_cone, ri_rows,
    AffineFlat, canonicalize, Constraint, GenPolyhedron, PolyCone, Rel,
};
use crate::nearconvex::UnionSet;
use crate::{Budget, Error, Result, Strategy};

/// The six generalized interiors.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InteriorKind {
    /// Interior relative to the affine hull.
    Rint,
    /// Relative interior; coincides with `rint` in finite dimension.
    Ri,
    /// Quasi-interior: the closed cone at the point is the whole space.
    Qi,
    /// Strong quasi-relative interior: the cone is a closed subspace.
    Sqri,
    /// Intrinsic relative interior: the cone is a subspace.
    Iri,
    /// Quasi-relative interior: the closed cone is a subspace.
    Qri,
}

impl InteriorKind {
    /// All kinds, in chain-friendly order.
    pub const ALL: [InteriorKind; 6] = [
        InteriorKind::Rint,
        InteriorKind::Ri,
        InteriorKind::Qi,
        InteriorKind::Sqri,
        InteriorKind::Iri,
        InteriorKind::Qri,
    ];

    /// The lowercase tag used in JSON and on the command line.
    pub fn tag(self) -> &'static str {
        match self {
            InteriorKind::Rint => "rint",
            InteriorKind::Ri => "ri",
            InteriorKind::Qi => "qi",
            InteriorKind::Sqri => "sqri",
            InteriorKind::Iri => "iri",
            InteriorKind::Qri => "qri",
        }
    }
}

impl fmt::Display for InteriorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for InteriorKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<InteriorKind> {
        InteriorKind::ALL
            .into_iter()
            .find(|k| k.tag() == s)
            .ok_or_else(|| Error::Input(format!("unknown interior kind {s:?}")))
    }
}

/// The cone data of one union piece at a point.
#[derive(Clone, Debug)]
pub struct ConeEntry {
    /// `cl cone(piece − x̄)`, always closed.
    pub closed: PolyCone,
    /// True iff `x̄ ∈ piece`; then `closed` equals `cone(piece − x̄)`
    /// exactly (polyhedra are locally conical at their own points).
    pub exact: bool,
    /// `cone(piece − x̄)` literally, as a union: the positive-scaling
    /// projection (when nonempty) plus the origin.
    pub exact_pieces: Vec<GenPolyhedron>,
}

/// Cones of a union at a point: one entry per piece. The union of the
/// closed parts is `cl cone(Ω − x̄)`; the union of all `exact_pieces` is
/// `cone(Ω − x̄)` itself.
#[derive(Clone, Debug)]
pub struct ConeAtPoint {
    /// Ambient dimension.
    pub dim: usize,
    /// Per-piece cone data, in piece order.
    pub entries: Vec<ConeEntry>,
}

/// Evidence attached to an interior-membership verdict. Every variant can
/// be re-checked without trusting the oracle that produced it.
#[derive(Clone, Debug, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Evidence {
    /// The query point is not in the set at all.
    NotAMember,
    /// A covering check succeeded over this many pieces.
    Covering { pieces: usize },
    /// The cone is the span of this basis (empty basis: the origin).
    SubspaceBasis { basis: Vec<QVector> },
    /// A direction inside the tested region but outside the cone/union.
    GapWitness { witness: QVector },
}

/// Verdict of an interior-membership query.
#[derive(Clone, Debug, Serialize)]
pub struct MembershipCertificate {
    /// Which interior was tested.
    pub kind: InteriorKind,
    /// The verdict.
    pub member: bool,
    /// Re-verifiable evidence for the verdict.
    pub evidence: Evidence,
}

/// Which realization of the cone a subspace test runs against.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum SubspaceMode {
    /// The literal `cone(Ω − x̄)` (union of the exact pieces).
    Exact,
    /// Its closure (union of the closed parts).
    Closure,
}

/// Computes the cones of all pieces at `x̄`.
///
/// Closed parts come from homogenizing the piece closures; exactness is
/// literal membership `x̄ ∈ piece`; the exact pieces keep strict rows so the
/// non-closed cone stays decidable.
pub fn cone_at(omega: &UnionSet, xbar: &QVector) -> Result<ConeAtPoint> {
    if omega.is_empty_set() {
        return Err(Error::EmptyInput("cone of an empty union".into()));
    }
    if xbar.dim() != omega.dim {
        return Err(Error::Dimension(format!(
            "base point of length {} in dimension {}",
            xbar.dim(),
            omega.dim
        )));
    }
    let mut entries = Vec::with_capacity(omega.pieces.len());
    for piece in &omega.pieces {
        let (closed, _) = homogenize_cone(&closure(piece)?, xbar)?;
        let exact = piece.membership(xbar)?;
        // At the piece's own points the cone is already closed (polyhedra
        // are locally conical), so the closed form doubles as the literal
        // one and the strict-λ decomposition is only built for the rest.
        let exact_pieces = if exact {
            vec![closed.as_poly().clone()]
        } else {
            exact_cone_pieces(piece, xbar)?
        };
        entries.push(ConeEntry { closed, exact, exact_pieces });
    }
    Ok(ConeAtPoint { dim: omega.dim, entries })
}

/// Span of the union of the closed cone parts, as a reduced basis.
///
/// Cones contain the origin, so each part's affine hull is already a
/// subspace; the union's span is the joint span of those hulls' data.
fn union_span(cones: &ConeAtPoint) -> Result<Vec<QVector>> {
    let mut vectors = Vec::new();
    for entry in &cones.entries {
        let flat = affine_hull(entry.closed.as_poly())?;
        vectors.push(flat.basepoint.clone());
        vectors.extend(flat.basis.iter().cloned());
    }
    Ok(span_basis(&vectors, cones.dim))
}

/// The polyhedron `{v : v ∈ span(basis)}`.
fn span_system(dim: usize, basis: &[QVector]) -> GenPolyhedron {
    AffineFlat { basepoint: QVector::zeros(dim), basis: basis.to_vec() }.equality_system()
}

/// Decides whether the cone union is a linear subspace.
///
/// The candidate subspace is `L = span(cl cone(Ω − x̄))`, which always
/// contains the cone; the cone is a subspace iff it covers `L` back. Mode
/// selects whether the literal cone or its closure must do the covering.
pub fn is_subspace_union(
    cones: &ConeAtPoint,
    mode: SubspaceMode,
    budget: &Budget,
    strategy: Strategy,
) -> Result<MembershipCertificate> {
    let basis = union_span(cones)?;
    let target = span_system(cones.dim, &basis);
    let pieces: Vec<GenPolyhedron> = match mode {
        SubspaceMode::Closure => {
            cones.entries.iter().map(|e| e.closed.as_poly().clone()).collect()
        }
        SubspaceMode::Exact => cones
            .entries
            .iter()
            .flat_map(|e| e.exact_pieces.iter().cloned())
            .collect(),
    };
    let report = covers(&target, &pieces, budget, strategy)?;
    let kind = match mode {
        SubspaceMode::Exact => InteriorKind::Iri,
        SubspaceMode::Closure => InteriorKind::Qri,
    };
    Ok(MembershipCertificate {
        kind,
        member: report.covered,
        evidence: if report.covered {
            Evidence::SubspaceBasis { basis }
        } else {
            Evidence::GapWitness {
                witness: report.witness.expect("uncovered reports carry a witness"),
            }
        },
    })
}

/// Directions along which the piece is entered from `x̄`: rows active at
/// `x̄` keep their relation against zero, slack rows vanish locally, and a
/// violated row empties the cone (the piece is locally invisible).
pub(crate) fn local_cone(piece: &GenPolyhedron, xbar: &QVector) -> GenPolyhedron {
    let mut rows = Vec::new();
    for c in &piece.constraints {
        let val = c.a.dot(xbar);
        if val == c.b {
            rows.push(Constraint::new(c.a.clone(), c.rel, Rat::zero()));
        } else if val > c.b || c.rel == Rel::Eq {
            // Violated at x̄ and violated along every nearby ray.
            return GenPolyhedron::empty(piece.dim);
        }
        // Strictly slack inequalities hold in a whole neighborhood.
    }
    GenPolyhedron { dim: piece.dim, constraints: rows }
}

/// Nonempty local cones of the union's pieces at `x̄`. Their covering
/// behavior decides interiority relative to any target of directions.
pub(crate) fn piece_local_cones(omega: &UnionSet, xbar: &QVector) -> Result<Vec<GenPolyhedron>> {
    let mut cones = Vec::new();
    for piece in &omega.pieces {
        let cone = local_cone(piece, xbar);
        if !cone.is_empty_fast()? {
            cones.push(cone);
        }
    }
    Ok(cones)
}

/// Affine hull of the whole union as a flat: the first piece's hull joined
/// with every other piece's directions and basepoint offsets.
pub(crate) fn union_affine_flat(omega: &UnionSet) -> Result<AffineFlat> {
    let mut flats = Vec::with_capacity(omega.pieces.len());
    for piece in &omega.pieces {
        flats.push(affine_hull(piece)?);
    }
    let base = flats[0].basepoint.clone();
    let mut dirs = Vec::new();
    for flat in &flats {
        dirs.extend(flat.basis.iter().cloned());
        dirs.push(flat.basepoint.sub(&base));
    }
    Ok(AffineFlat { basepoint: base, basis: span_basis(&dirs, omega.dim) })
}

/// Decides `x̄ ∈ interior-of-kind(Ω)` with re-verifiable evidence.
pub fn interior_membership(
    kind: InteriorKind,
    omega: &UnionSet,
    xbar: &QVector,
    budget: &Budget,
    strategy: Strategy,
) -> Result<MembershipCertificate> {
    if xbar.dim() != omega.dim {
        return Err(Error::Dimension(format!(
            "query point of length {} in dimension {}",
            xbar.dim(),
            omega.dim
        )));
    }
    if !omega.membership(xbar)? {
        return Ok(MembershipCertificate { kind, member: false, evidence: Evidence::NotAMember });
    }

    match kind {
        InteriorKind::Rint | InteriorKind::Ri => {
            // Membership relative to the affine hull: the hull's direction
            // space must be covered by the pieces' local cones.
            let flat = union_affine_flat(omega)?;
            let target = span_system(omega.dim, &flat.basis);
            let pieces = piece_local_cones(omega, xbar)?;
            let report = covers(&target, &pieces, budget, strategy)?;
            Ok(MembershipCertificate {
                kind,
                member: report.covered,
                evidence: if report.covered {
                    Evidence::Covering { pieces: pieces.len() }
                } else {
                    Evidence::GapWitness {
                        witness: report.witness.expect("uncovered reports carry a witness"),
                    }
                },
            })
        }
        InteriorKind::Qi => {
            let cones = cone_at(omega, xbar)?;
            let closed: Vec<GenPolyhedron> =
                cones.entries.iter().map(|e| e.closed.as_poly().clone()).collect();
            let report = covers(&GenPolyhedron::full_space(omega.dim), &closed, budget, strategy)?;
            Ok(MembershipCertificate {
                kind,
                member: report.covered,
                evidence: if report.covered {
                    Evidence::Covering { pieces: closed.len() }
                } else {
                    Evidence::GapWitness {
                        witness: report.witness.expect("uncovered reports carry a witness"),
                    }
                },
            })
        }
        InteriorKind::Iri => {
            let cones = cone_at(omega, xbar)?;
            let mut cert = is_subspace_union(&cones, SubspaceMode::Exact, budget, strategy)?;
            cert.kind = InteriorKind::Iri;
            Ok(cert)
        }
        InteriorKind::Qri => {
            let cones = cone_at(omega, xbar)?;
            let mut cert = is_subspace_union(&cones, SubspaceMode::Closure, budget, strategy)?;
            cert.kind = InteriorKind::Qri;
            Ok(cert)
        }
        InteriorKind::Sqri => {
            // A closed subspace: the subspace test on the literal cone,
            // plus closedness — every closed part covered by the literal
            // cone. The two halves are independent of the qri path.
            let cones = cone_at(omega, xbar)?;
            let subspace = is_subspace_union(&cones, SubspaceMode::Exact, budget, strategy)?;
            if !subspace.member {
                return Ok(MembershipCertificate {
                    kind: InteriorKind::Sqri,
                    member: false,
                    evidence: subspace.evidence,
                });
            }
            let exact_pieces: Vec<GenPolyhedron> = cones
                .entries
                .iter()
                .flat_map(|e| e.exact_pieces.iter().cloned())
                .collect();
            for entry in &cones.entries {
                let report = covers(entry.closed.as_poly(), &exact_pieces, budget, strategy)?;
                if !report.covered {
                    return Ok(MembershipCertificate {
                        kind: InteriorKind::Sqri,
                        member: false,
                        evidence: Evidence::GapWitness {
                            witness: report.witness.expect("uncovered reports carry a witness"),
                        },
                    });
                }
            }
            Ok(MembershipCertificate {
                kind: InteriorKind::Sqri,
                member: true,
                evidence: subspace.evidence,
            })
        }
    }
}

/// All six verdicts at once, sharing the cone decomposition, the affine
/// hull, and the span across kinds. Verdicts and evidence match
/// [`interior_membership`] kind for kind; only repeated setup is saved.
pub fn interior_profile(
    omega: &UnionSet,
    xbar: &QVector,
    budget: &Budget,
    strategy: Strategy,
) -> Result<Vec<MembershipCertificate>> {
    if xbar.dim() != omega.dim {
        return Err(Error::Dimension(format!(
            "query point of length {} in dimension {}",
            xbar.dim(),
            omega.dim
        )));
    }
    if !omega.membership(xbar)? {
        return Ok(InteriorKind::ALL
            .iter()
            .map(|&kind| MembershipCertificate {
                kind,
                member: false,
                evidence: Evidence::NotAMember,
            })
            .collect());
    }

    let from_report =
        |kind: InteriorKind, report: &crate::genpoly::CoverReport, pieces: usize| {
            MembershipCertificate {
                kind,
                member: report.covered,
                evidence: if report.covered {
                    Evidence::Covering { pieces }
                } else {
                    Evidence::GapWitness {
                        witness: report
                            .witness
                            .clone()
                            .expect("uncovered reports carry a witness"),
                    }
                },
            }
        };

    // rint / ri: one covering of the hull's direction space.
    let flat = union_affine_flat(omega)?;
    let hull_target = span_system(omega.dim, &flat.basis);
    let local = piece_local_cones(omega, xbar)?;
    let local_report = covers(&hull_target, &local, budget, strategy)?;
    let rint = from_report(InteriorKind::Rint, &local_report, local.len());
    let mut ri = from_report(InteriorKind::Ri, &local_report, local.len());
    ri.kind = InteriorKind::Ri;

    // One cone decomposition for the four cone-based kinds.
    let cones = cone_at(omega, xbar)?;
    let closed: Vec<GenPolyhedron> =
        cones.entries.iter().map(|e| e.closed.as_poly().clone()).collect();
    let exact: Vec<GenPolyhedron> =
        cones.entries.iter().flat_map(|e| e.exact_pieces.iter().cloned()).collect();
    let basis = union_span(&cones)?;
    let span_target = span_system(omega.dim, &basis);

    let qi_report = covers(&GenPolyhedron::full_space(omega.dim), &closed, budget, strategy)?;
    let qi = from_report(InteriorKind::Qi, &qi_report, closed.len());

    let exact_report = covers(&span_target, &exact, budget, strategy)?;
    let iri = MembershipCertificate {
        kind: InteriorKind::Iri,
        member: exact_report.covered,
        evidence: if exact_report.covered {
            Evidence::SubspaceBasis { basis: basis.clone() }
        } else {
            Evidence::GapWitness {
                witness: exact_report.witness.clone().expect("uncovered reports carry a witness"),
            }
        },
    };

    // A full-rank span makes the qri target the whole space, which is the
    // qi covering already computed.
    let closed_report = if basis.len() == omega.dim {
        qi_report.clone()
    } else {
        covers(&span_target, &closed, budget, strategy)?
    };
    let qri = MembershipCertificate {
        kind: InteriorKind::Qri,
        member: closed_report.covered,
        evidence: if closed_report.covered {
            Evidence::SubspaceBasis { basis: basis.clone() }
        } else {
            Evidence::GapWitness {
                witness: closed_report.witness.clone().expect("uncovered reports carry a witness"),
            }
        },
    };

    let sqri = if !iri.member {
        MembershipCertificate {
            kind: InteriorKind::Sqri,
            member: false,
            evidence: iri.evidence.clone(),
        }
    } else {
        let mut verdict = MembershipCertificate {
            kind: InteriorKind::Sqri,
            member: true,
            evidence: Evidence::SubspaceBasis { basis },
        };
        for entry in &cones.entries {
            let report = covers(entry.closed.as_poly(), &exact, budget, strategy)?;
            if !report.covered {
                verdict.member = false;
                verdict.evidence = Evidence::GapWitness {
                    witness: report.witness.expect("uncovered reports carry a witness"),
                };
                break;
            }
        }
        verdict
    };

    Ok(vec![rint, ri, qi, sqri, iri, qri])
}

/// The normal cone `N(x̄; Ω) = {w : ⟨w, x − x̄⟩ ≤ 0 for all x ∈ Ω}`:
/// the intersection of the polars of the per-piece closed cones.
pub fn normal_cone(omega: &UnionSet, xbar: &QVector, budget: &Budget) -> Result<PolyCone> {
    if !omega.membership(xbar)? {
        return Err(Error::Input(
            "normal cone requested at a point outside the set".into(),
        ));
    }
    let cones = cone_at(omega, xbar)?;
    let mut rows = Vec::new();
    for entry in &cones.entries {
        let polar = polar_cone(&entry.closed, budget)?;
        rows.extend(polar.as_poly().constraints.iter().cloned());
    }
    let poly = canonicalize(&GenPolyhedron { dim: omega.dim, constraints: rows })?;
    PolyCone::new(poly)
}

/// The relative interior of one nonempty polyhedron, as rows: implicit
/// equalities pinned, remaining inequalities strict.
pub fn ri_representation(p: &GenPolyhedron) -> Result<GenPolyhedron> {
    ri_rows(p)
}
