//! Integration runs of the surface census at the sizes used by the
//! acceptance checks: q = 5, t = 1, supersingular trace-zero factor,
//! extension degrees chosen so the Frobenius is scalar mod ℓ^m.

use isocensus_core::census::{surface_census, EquivalenceSearchSpace, RunLimits, SsModel};
use isocensus_core::ff_curves::{frobenius_data, PrimePower};
use isocensus_core::frobenius::scalar_level;

fn limits(budget: u64) -> RunLimits {
    RunLimits { budget, ..RunLimits::default() }
}

#[test]
fn surface_census_acceptance_scale_configs() {
    let base = PrimePower::new(5, 1).unwrap();
    // (ell, n, m, space, budget, expected (raw, type1, n0, n1, n2))
    let configs = [
        (2u64, 12u32, 1u32, EquivalenceSearchSpace::standard(1), 20_000_000u64, (15u64, 9u64, 5u64, 3u64, 2u64)),
        (2, 12, 2, EquivalenceSearchSpace::standard(2), 50_000_000, (120, 36, 17, 6, 11)),
        (3, 8, 1, EquivalenceSearchSpace::standard(1), 20_000_000, (40, 16, 12, 8, 4)),
        (3, 8, 2, EquivalenceSearchSpace::with_scalar_cap(2, 1), 80_000_000, (1080, 144, 124, 12, 112)),
    ];
    std::thread::scope(|scope| {
        let mut handles = Vec::new();
        for (ell, n, m, space, budget, expect) in configs {
            handles.push(scope.spawn(move || {
                let fd = frobenius_data(1, base, n).unwrap();
                assert!(
                    scalar_level(&fd, ell).unwrap() >= m,
                    "scalar level at ℓ = {ell}, n = {n}"
                );
                let start = std::time::Instant::now();
                let col = surface_census(
                    1,
                    base,
                    n,
                    SsModel::TraceZero,
                    ell,
                    m,
                    &space,
                    &limits(budget),
                )
                .unwrap();
                let lm = ell.pow(m);
                println!(
                    "ℓ={ell} m={m} n={n}: raw={} stable={} t1={} t2={} n0={} n1={} n2={} exhausted={} ({:?})",
                    col.raw,
                    col.stable,
                    col.type1,
                    col.type2,
                    col.n0,
                    col.n1,
                    col.n2,
                    col.exhausted,
                    start.elapsed()
                );
                assert!(col.exhausted, "configured space must be fully searched");
                assert_eq!(col.stable, col.raw, "scalar Frobenius keeps every Lagrangian");
                assert_eq!(col.type1, (lm + lm / ell) * (lm + lm / ell));
                assert_eq!(col.n0, col.n1 + col.n2);
                // Bracket checks: the graph classes grow like ℓ^{2m}, the
                // product classes stay within a constant of (ℓ^m + 1)².
                assert!(col.n2 >= lm * lm / 16, "n2 = {} at ℓ^2m = {}", col.n2, lm * lm);
                assert!(
                    col.n1 >= lm / 4 && col.n1 <= 4 * (lm + 1) * (lm + 1),
                    "n1 = {}",
                    col.n1
                );
                // Frozen class counts for these exact configurations; any
                // drift here means the equivalence engine changed behaviour.
                let (raw, t1, n0, n1, n2) = expect;
                assert_eq!((col.raw, col.type1), (raw, t1));
                assert_eq!((col.n0, col.n1, col.n2), (n0, n1, n2));
            }));
        }
        for h in handles {
            h.join().unwrap();
        }
    });
}
