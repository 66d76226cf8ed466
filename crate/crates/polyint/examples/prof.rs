//! Scratch profiling harness (not part of the public surface).

use std::time::Instant;

use polyint::harness::{generate, witness_points, InstanceKind, InstanceSpec};
use polyint::interiors::{interior_membership, interior_profile, InteriorKind};
use polyint::{Budget, Strategy};

fn main() {
    let budget = Budget::default();
    for dim in 1..=4usize {
        let spec = InstanceSpec::new(1000 + dim as u64, dim, 1 + dim % 3.max(1));
        let omega = generate(&spec, InstanceKind::Union, &budget).unwrap().as_union().clone();
        let t0 = Instant::now();
        let pts = witness_points(&omega, &spec, &budget).unwrap();
        let wp = t0.elapsed();
        let mut member = 0;
        let t1 = Instant::now();
        for x in &pts {
            if omega.membership(x).unwrap() {
                member += 1;
            }
        }
        let mem = t1.elapsed();
        let mut per_kind = Vec::new();
        for kind in [
            InteriorKind::Rint,
            InteriorKind::Ri,
            InteriorKind::Qi,
            InteriorKind::Sqri,
            InteriorKind::Iri,
            InteriorKind::Qri,
        ] {
            let t = Instant::now();
            for x in &pts {
                let _ = interior_membership(kind, &omega, x, &budget, Strategy::Sequential)
                    .unwrap();
            }
            per_kind.push((kind, t.elapsed()));
        }
        let t2 = Instant::now();
        for x in &pts {
            let _ = interior_profile(&omega, x, &budget, Strategy::Sequential).unwrap();
        }
        let prof = t2.elapsed();
        println!(
            "dim {dim}: pieces {} pts {} members {member} witness {wp:?} membership {mem:?} profile {prof:?}",
            omega.pieces.len(),
            pts.len()
        );
        for (k, d) in per_kind {
            println!("    {k:?}: {d:?}");
        }
    }
}
