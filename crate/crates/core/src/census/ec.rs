//! Exhaustive elliptic-curve censuses over small fields: isomorphism
//! classes grouped by Frobenius trace, mass checks against Hurwitz
//! class numbers, geometric-isogeny class counts, and the class-number
//! size predictions they are compared against.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use crate::endo_counts::{class_number, unit_count};
use crate::error::Error;
use crate::ff_curves::{self, EllipticCurve, Field, FrobeniusData};
use crate::frobenius;
use crate::Result;

/// One representative per isomorphism class of elliptic curves over
/// the given field: for j ≠ 0, 1728 the two quadratic twists of a
/// fixed model, at j = 0 and j = 1728 the full sextic/quartic twist
/// families.
pub fn isomorphism_class_representatives(field: &Field) -> Result<Vec<EllipticCurve>> {
    let q = field.q();
    let squares = field.square_table();
    // A fixed non-square for quadratic twisting.
    let d = (1..q)
        .map(|i| field.dec(i))
        .find(|x| !squares[field.enc(*x) as usize])
        .ok_or(Error::InvalidParameter("field has no non-square"))?;
    let j1728 = field.from_int(1728);
    let mut out = Vec::new();
    for idx in 0..q {
        let j = field.dec(idx);
        if j.is_zero() || j == j1728 {
            continue;
        }
        // a = 3j(1728 − j), b = 2j(1728 − j)²: a model with invariant j.
        let c = field.sub(j1728, j);
        let a = field.mul(field.from_int(3), field.mul(j, c));
        let b = field.mul(field.from_int(2), field.mul(j, field.mul(c, c)));
        let e = EllipticCurve::new(*field, a, b)?;
        debug_assert_eq!(field.enc(e.j_invariant()), field.enc(j));
        out.push(e);
        let d2 = field.mul(d, d);
        let d3 = field.mul(d2, d);
        out.push(EllipticCurve::new(*field, field.mul(a, d2), field.mul(b, d3))?);
    }
    // j = 0: y² = x³ + b, one class per coset of sixth powers.
    out.extend(power_coset_family(field, 6)?);
    // j = 1728: y² = x³ + ax, one class per coset of fourth powers.
    out.extend(power_coset_family(field, 4)?);
    Ok(out)
}

fn power_coset_family(field: &Field, e: u64) -> Result<Vec<EllipticCurve>> {
    let q = field.q();
    let mut powers = BTreeSet::new();
    for idx in 1..q {
        powers.insert(field.enc(field.pow(field.dec(idx), e)));
    }
    let mut seen = vec![false; q as usize];
    let mut out = Vec::new();
    for idx in 1..q {
        if seen[idx as usize] {
            continue;
        }
        let c = field.dec(idx);
        for &s in &powers {
            seen[field.enc(field.mul(c, field.dec(s))) as usize] = true;
        }
        let curve = if e == 6 {
            EllipticCurve::new(*field, field.zero(), c)?
        } else {
            EllipticCurve::new(*field, c, field.zero())?
        };
        out.push(curve);
    }
    Ok(out)
}

/// Automorphism-group order of a curve over its field of definition.
pub fn automorphism_order(e: &EllipticCurve) -> u64 {
    let f = &e.field;
    let j = f.enc(e.j_invariant());
    let q = f.q();
    if j == f.enc(f.zero()) {
        gcd(6, q - 1)
    } else if j == f.enc(f.from_int(1728)) {
        gcd(4, q - 1)
    } else {
        2
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Hurwitz class number H(n), scaled by 6 to stay integral:
/// 6·H(n) = Σ_{f² | n, D = −n/f² ≡ 0,1 mod 4} (12/w(D))·h(D).
pub fn hurwitz_class_number_sixths(n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::InvalidParameter("Hurwitz class number needs n > 0"));
    }
    if n % 4 == 1 || n % 4 == 2 {
        return Ok(0);
    }
    let mut acc = 0u64;
    let mut f = 1u64;
    while f * f <= n {
        if n % (f * f) == 0 {
            let d = -((n / (f * f)) as i128);
            let r = d.rem_euclid(4);
            if r == 0 || r == 1 {
                acc += 12 / unit_count(d) * class_number(d)?;
            }
        }
        f += 1;
    }
    Ok(acc)
}

/// Weighted census of all isomorphism classes over 𝔽_q, grouped by
/// trace: each class contributes 2/|Aut|, returned in sixths so the
/// counts stay integral. By the Deuring mass formula the value at t is
/// 6·H(4q − t²).
pub fn deuring_weighted_counts(p: u64, deg: usize) -> Result<BTreeMap<i64, u64>> {
    let field = Field::new(p, deg)?;
    let mut by_trace: BTreeMap<i64, u64> = BTreeMap::new();
    for e in isomorphism_class_representatives(&field)? {
        let t = e.trace();
        *by_trace.entry(t).or_insert(0) += 12 / automorphism_order(&e);
    }
    Ok(by_trace)
}

/// Size prediction for the geometric-isogeny census of an ordinary
/// reference curve over 𝔽_{qⁿ}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EcPrediction {
    /// ∏ ℓ^{v_ℓ(f_n)} over primes ℓ not dividing Δ_K: the conductor
    /// part at unramified primes, the main growth term.
    pub p_unramified: u128,
    /// h(Δ_n): class number of the order Z[π_{qⁿ}].
    pub class_number_order: u64,
    /// 2·Σ_{g | f_n} h(g²Δ_K): the exact number of isomorphism classes
    /// in the geometric isogeny class, counting both quadratic twists.
    pub geometric_sum: u128,
}

pub fn predicted_ec_size(fd: &FrobeniusData) -> Result<EcPrediction> {
    let p_unramified = frobenius::unramified_part(fd)?;
    let class_number_order = class_number(fd.disc)?;
    let (dk, _, f_n) = frobenius::ordinary_decomposition(fd)?;
    let f_n = f_n as u64;
    let mut geometric_sum: u128 = 0;
    let mut g = 1u64;
    while g <= f_n {
        if f_n % g == 0 {
            geometric_sum += class_number(g as i128 * g as i128 * dk)? as u128;
        }
        g += 1;
    }
    Ok(EcPrediction { p_unramified, class_number_order, geometric_sum: 2 * geometric_sum })
}

/// Result of an exhaustive isogeny-class census over 𝔽_{qⁿ}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EcCensus {
    pub q_n: u64,
    /// Trace of the reference Frobenius over 𝔽_{qⁿ}.
    pub reference_trace: i128,
    /// Isomorphism classes geometrically isogenous to the reference.
    pub classes: u64,
    /// Subset whose trace equals the reference trace exactly.
    pub same_trace_classes: u64,
    /// All isomorphism classes scanned.
    pub scanned: u64,
}

/// Exhaustive census over 𝔽_{qⁿ}: every isomorphism class is scanned
/// and tested for geometric isogeny to the ordinary reference curve of
/// trace t over 𝔽_q. Geometric isogeny is decided by comparing traces
/// after a common degree-12 extension, which identifies curves exactly
/// when their Frobenii differ by a root of unity (all orders divide 12
/// for p ≥ 5).
pub fn ec_census(t: i64, base: ff_curves::PrimePower, n: u32) -> Result<EcCensus> {
    if base.n != 1 {
        return Err(Error::InvalidParameter("census expects a prime base field"));
    }
    if !ff_curves::is_ordinary(t, base.p) {
        return Err(Error::NonOrdinary);
    }
    let q = base.value();
    if (t as i128) * (t as i128) > 4 * q as i128 {
        return Err(Error::HasseViolation { t, q });
    }
    let field = Field::new(base.p, n as usize)?;
    let q_n = field.q();
    let reference_trace = ff_curves::trace_power(t, q, n);
    let ref_extended = ff_curves::trace_power(t, q, 12 * n);
    let mut classes = 0u64;
    let mut same_trace = 0u64;
    let mut scanned = 0u64;
    for e in isomorphism_class_representatives(&field)? {
        scanned += 1;
        let te = e.trace();
        if ff_curves::trace_power(te, q_n, 12) == ref_extended {
            classes += 1;
            if te as i128 == reference_trace {
                same_trace += 1;
            }
        }
    }
    Ok(EcCensus { q_n, reference_trace, classes, same_trace_classes: same_trace, scanned })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff_curves::PrimePower;

    #[test]
    fn hurwitz_small_values() {
        // 6·H: H(3) = 1/3, H(4) = 1/2, H(7) = 1, H(8) = 1, H(11) = 1,
        // H(12) = 4/3, H(16) = 3/2, H(19) = 1, H(20) = 2, H(23) = 3.
        let cases = [
            (3, 2),
            (4, 3),
            (7, 6),
            (8, 6),
            (11, 6),
            (12, 8),
            (16, 9),
            (19, 6),
            (20, 12),
            (23, 18),
        ];
        for (n, sixths) in cases {
            assert_eq!(hurwitz_class_number_sixths(n).unwrap(), sixths, "H({n})");
        }
        assert_eq!(hurwitz_class_number_sixths(5).unwrap(), 0);
        assert_eq!(hurwitz_class_number_sixths(6).unwrap(), 0);
    }

    #[test]
    fn class_representatives_cover_f5_with_correct_masses() {
        let field = Field::new(5, 1).unwrap();
        let reps = isomorphism_class_representatives(&field).unwrap();
        // 3 ordinary j-values with 2 twists each, gcd(6,4) = 2 sextic
        // classes at j = 0, gcd(4,4) = 4 quartic classes at j = 1728.
        assert_eq!(reps.len(), 12);
        let mut js: Vec<u64> = reps.iter().map(|e| e.field.enc(e.j_invariant())).collect();
        js.sort_unstable();
        js.dedup();
        assert_eq!(js.len(), 5, "all five j-invariants of 𝔽₅ appear");
    }

    #[test]
    fn deuring_masses_match_hurwitz_class_numbers() {
        for p in [5u64, 7] {
            let counts = deuring_weighted_counts(p, 1).unwrap();
            let bound = 2.0 * (p as f64).sqrt();
            for t in -(bound as i64)..=(bound as i64) {
                let expect = hurwitz_class_number_sixths((4 * p) as u64 - (t * t) as u64).unwrap();
                let got = counts.get(&t).copied().unwrap_or(0);
                assert_eq!(got, expect, "p = {p}, t = {t}");
            }
        }
    }

    #[test]
    fn census_counts_for_reference_trace_3_over_f5() {
        let base = PrimePower::new(5, 1).unwrap();
        let expectations = [(2u32, 6u64, 3u64, -1i128), (3, 20, 10, -18), (4, 6, 3, -49)];
        for (n, classes, same, t_n) in expectations {
            let c = ec_census(3, base, n).unwrap();
            assert_eq!(c.classes, classes, "n = {n}");
            assert_eq!(c.same_trace_classes, same, "n = {n}");
            assert_eq!(c.reference_trace, t_n, "n = {n}");
        }
    }

    #[test]
    fn predictions_match_class_number_sums() {
        let base = PrimePower::new(5, 1).unwrap();
        // (n, unramified part, h(Δ_n), geometric class count).
        let expectations = [(2u32, 3u128, 2u64, 6u128), (3, 4, 6, 20), (4, 3, 2, 6)];
        for (n, pu, h, geo) in expectations {
            let fd = ff_curves::frobenius_data(3, base, n).unwrap();
            let p = predicted_ec_size(&fd).unwrap();
            assert_eq!(p.p_unramified, pu, "n = {n}");
            assert_eq!(p.class_number_order, h, "n = {n}");
            assert_eq!(p.geometric_sum, geo, "n = {n}");
        }
    }

    #[test]
    fn geometric_census_agrees_with_prediction_sum() {
        let base = PrimePower::new(5, 1).unwrap();
        let fd = ff_curves::frobenius_data(3, base, 2).unwrap();
        let c = ec_census(3, base, 2).unwrap();
        let p = predicted_ec_size(&fd).unwrap();
        assert_eq!(c.classes as u128, p.geometric_sum);
    }
}
