//! The Frobenius action on ℓ^m-torsion: explicit matrix models, the
//! four-way classification of the induced action, scalar levels, stable
//! cyclic subgroups, and valuation growth of the discriminant.
//!
//! For an ordinary trace the matrix model is built directly from the
//! integer data (t_n, qⁿ): writing s for the largest scalar level visible
//! in the discriminant, the action is a·I + ℓ^s·C with C the companion
//! matrix of the reduced quadratic, all entries exact integers. At s = 0
//! this is the plain companion matrix of x² − t_n x + qⁿ. The model has
//! the correct characteristic polynomial exactly (not just mod ℓ^m) and
//! is conjugate over Z/ℓ^m to the matrix of Frobenius on a basis of the
//! ℓ^m-torsion of any curve with the same data.
//!
//! Surfaces (ordinary × supersingular) get a 4×4 block-diagonal model:
//! the ordinary block is c_n·I + f_n·Ω with Ω the multiplication matrix
//! of (Δ_K + √Δ_K)/2 on the maximal-order basis, and the supersingular
//! block is the scalar (−q)^{n/2} for even n or the companion matrix of
//! x² + qⁿ for odd n.

use crate::arith;
use crate::error::Error;
use crate::ff_curves::{FrobeniusData, PrimePower};
use crate::modmat::{Mat, Submodule};
use crate::symplectic::line_generators;
use crate::Result;
use alloc::vec::Vec;

/// A modelled Frobenius action on (Z/ℓ^m)^dim.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrobeniusMatrix {
    pub ell: u64,
    pub m: u32,
    pub mat: Mat,
}

/// How the Frobenius acts on the full torsion module.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FrobeniusClass {
    /// Characteristic polynomial irreducible mod ℓ: no stable lines.
    Irreducible,
    /// Diagonalizable with eigenvalues distinct mod ℓ.
    DistinctEigen { lambda: u64, mu: u64 },
    /// λ·I mod ℓ^m.
    Scalar { lambda: u64 },
    /// Diagonalizable with distinct eigenvalues congruent mod ℓ^r,
    /// 1 ≤ r < m.
    CongruentEigen { lambda: u64, mu: u64, level: u32 },
    /// Neither scalar nor diagonalizable mod ℓ^m (ramified behaviour).
    NonSemisimple,
}

/// The largest s ≥ 0 such that Δ/ℓ^{2s} is still a discriminant shape:
/// for odd ℓ this is ⌊v_ℓ(Δ)/2⌋; for ℓ = 2 the quotient must also be
/// ≡ 0, 1 mod 4.
pub fn model_level(delta: i128, ell: u64) -> u32 {
    assert!(delta != 0);
    if ell == 2 {
        let mut best = 0;
        let mut s = 0u32;
        let mut d = delta;
        loop {
            let r = d.rem_euclid(4);
            if r == 0 || r == 1 {
                best = s;
            }
            if d % 4 != 0 {
                break;
            }
            d /= 4;
            s += 1;
        }
        best
    } else {
        arith::valuation(delta.unsigned_abs(), ell) / 2
    }
}

impl FrobeniusMatrix {
    pub fn from_mat(ell: u64, m: u32, mat: Mat) -> Self {
        FrobeniusMatrix { ell, m, mat }
    }

    /// The 2×2 model of the qⁿ-power Frobenius on ℓ^m-torsion, built
    /// from the trace and norm alone.
    pub fn model(fd: &FrobeniusData, ell: u64, m: u32) -> Result<Self> {
        if ell == fd.base.p {
            return Err(Error::InvalidParameter("torsion prime must differ from the characteristic"));
        }
        if m == 0 {
            return Err(Error::InvalidParameter("torsion level must be positive"));
        }
        let modulus = match arith::checked_pow(ell, m) {
            Some(v) if v <= (1 << 32) => v as u64,
            _ => return Err(Error::BoundExceeded { what: "torsion modulus", needed: 0, limit: 1 << 32 }),
        };
        let t = fd.trace as i128;
        let q = fd.q_n as i128;
        if fd.disc == 0 {
            // t_n² = 4qⁿ: π^n is the literal scalar t_n/2.
            let mat = Mat::from_i128(modulus, 2, 2, &[t / 2, 0, 0, t / 2]);
            return Ok(FrobeniusMatrix { ell, m, mat });
        }
        let s = model_level(fd.disc, ell);
        if s == 0 {
            let mat = Mat::from_i128(modulus, 2, 2, &[0, -q, 1, t]);
            return Ok(FrobeniusMatrix { ell, m, mat });
        }
        let ls = arith::checked_pow(ell, s).unwrap() as i128;
        let (a, tau, nu) = if ell == 2 {
            let dp = fd.disc / (ls * ls);
            if dp.rem_euclid(4) == 1 {
                ((t - ls) / 2, 1i128, (1 - dp) / 4)
            } else {
                (t / 2, 0i128, -dp / 4)
            }
        } else {
            // a ≡ t/2 mod ℓ^{s+m}; then τ and ν are exact integers.
            let lsm = arith::checked_pow(ell, s + m).ok_or(Error::BoundExceeded {
                what: "model working modulus",
                needed: 0,
                limit: u64::MAX as u128,
            })? as i128;
            let inv2 = arith::inv_mod(2, lsm).unwrap();
            let a = (t.rem_euclid(lsm) * inv2).rem_euclid(lsm);
            let tau = (t - 2 * a) / ls;
            let nu = (a * a - t * a + q) / (ls * ls);
            debug_assert_eq!((t - 2 * a) % ls, 0);
            debug_assert_eq!((a * a - t * a + q) % (ls * ls), 0);
            (a, tau, nu)
        };
        // M = a·I + ℓ^s [[0, −ν], [1, τ]]; trace and determinant are
        // exactly t and q by construction.
        debug_assert_eq!(2 * a + ls * tau, t);
        debug_assert_eq!(a * a + ls * a * tau + ls * ls * nu, q);
        let mat = Mat::from_i128(
            modulus,
            2,
            2,
            &[a, -ls * nu, ls, a + ls * tau],
        );
        Ok(FrobeniusMatrix { ell, m, mat })
    }

    /// Wrap a matrix computed on an explicit torsion basis of a curve.
    pub fn from_curve_matrix(ell: u64, m: u32, mat: Mat) -> Self {
        FrobeniusMatrix { ell, m, mat }
    }

    /// 4×4 block model for the product of an ordinary factor with data
    /// `fd` and a supersingular factor (trace 0 over the base field),
    /// over 𝔽_{qⁿ}, at an arbitrary prime-power modulus ℓ^mm.
    pub fn surface(fd: &FrobeniusData, ell: u64, mm: u32) -> Result<Self> {
        if ell == fd.base.p {
            return Err(Error::InvalidParameter("torsion prime must differ from the characteristic"));
        }
        if fd.base.n != 1 {
            return Err(Error::InvalidParameter("surface model expects a prime base field"));
        }
        let modulus = match arith::checked_pow(ell, mm) {
            Some(v) if v <= (1 << 32) => v as u64,
            _ => return Err(Error::BoundExceeded { what: "torsion modulus", needed: 0, limit: 1 << 32 }),
        };
        let (dk, c_n, f_n) = ordinary_decomposition(fd)?;
        let omega = omega_matrix(dk, modulus);
        let ord = Mat::scalar(modulus, 2, c_n.rem_euclid(modulus as i128) as u64)
            .add(&omega.scalar_mul(f_n.rem_euclid(modulus as i128) as u64));
        let q = fd.base.value() as i128;
        let qn = fd.q_n as i128;
        let ss = if fd.n % 2 == 0 {
            let val = arith::checked_pow(q as u64, fd.n / 2).unwrap() as i128;
            let sc = if fd.n / 2 % 2 == 1 { -val } else { val };
            Mat::from_i128(modulus, 2, 2, &[sc, 0, 0, sc])
        } else {
            Mat::from_i128(modulus, 2, 2, &[0, -qn, 1, 0])
        };
        let mut mat = Mat::zero(modulus, 4, 4);
        for i in 0..2 {
            for j in 0..2 {
                mat.set(i, j, ord.get(i, j));
                mat.set(2 + i, 2 + j, ss.get(i, j));
            }
        }
        Ok(FrobeniusMatrix { ell, m: mm, mat })
    }
}

/// CM field discriminant (fundamental part of t² − 4q); requires an
/// ordinary trace.
pub fn cm_field_discriminant(t: i64, base: PrimePower) -> Result<i128> {
    if !crate::ff_curves::is_ordinary(t, base.p) {
        return Err(Error::NonOrdinary);
    }
    let delta = t as i128 * t as i128 - 4 * base.value() as i128;
    Ok(arith::fundamental_discriminant(delta).0)
}

/// Write π^n = c_n + f_n·ω with ω = (Δ_K + √Δ_K)/2: returns
/// (Δ_K, c_n, f_n), all exact integers, f_n > 0.
pub fn ordinary_decomposition(fd: &FrobeniusData) -> Result<(i128, i128, i128)> {
    let dk = cm_field_discriminant(fd.base_trace, fd.base)?;
    if fd.disc == 0 {
        return Err(Error::ZeroDiscriminant);
    }
    let ratio = fd.disc / dk;
    debug_assert_eq!(fd.disc % dk, 0);
    let f_n = arith::exact_sqrt_i128(ratio).ok_or(Error::InvalidParameter(
        "discriminant ratio must be a perfect square",
    ))?;
    let c_n = (fd.trace as i128 - f_n * dk) / 2;
    debug_assert_eq!((fd.trace as i128 - f_n * dk) % 2, 0);
    Ok((dk, c_n, f_n))
}

/// Multiplication matrix of ω = (Δ_K + √Δ_K)/2 on the basis (1, ω):
/// companion of x² − Δ_K x + (Δ_K² − Δ_K)/4.
pub fn omega_matrix(dk: i128, modulus: u64) -> Mat {
    let norm = (dk * dk - dk) / 4;
    Mat::from_i128(modulus, 2, 2, &[0, -norm, 1, dk])
}

/// Classify a 2×2 action mod ℓ^m.
pub fn classify(fm: &FrobeniusMatrix) -> FrobeniusClass {
    let m = &fm.mat;
    assert_eq!(m.rows, 2);
    let modulus = m.modulus;
    if let Some(lambda) = m.as_scalar() {
        return FrobeniusClass::Scalar { lambda };
    }
    // Scan canonical lines for eigenvectors.
    let lines = line_generators(fm.ell, modulus, 2);
    let mut eigen: Vec<(Vec<u64>, u64)> = Vec::new();
    for v in lines {
        let w = m.apply(&v);
        let pivot = if v[0] == 1 { 0 } else { 1 };
        debug_assert_eq!(v[pivot], 1);
        let mu = w[pivot];
        let ok = (0..2).all(|i| w[i] == (mu as u128 * v[i] as u128 % modulus as u128) as u64);
        if ok {
            eigen.push((v, mu));
        }
    }
    // A spanning pair of eigenlines exhibits both eigenvalues.
    for i in 0..eigen.len() {
        for j in i + 1..eigen.len() {
            let (vi, mi) = &eigen[i];
            let (vj, mj) = &eigen[j];
            let det = (vi[0] as u128 * vj[1] as u128 + modulus as u128 * modulus as u128
                - vi[1] as u128 * vj[0] as u128)
                % modulus as u128;
            if det as u64 % fm.ell == 0 {
                continue;
            }
            let (lambda, mu) = if mi <= mj { (*mi, *mj) } else { (*mj, *mi) };
            assert_ne!(lambda, mu, "equal eigenvalues on a spanning pair imply a scalar");
            let diff = mu - lambda;
            let r = arith::valuation(diff as u128, fm.ell);
            return if r == 0 {
                FrobeniusClass::DistinctEigen { lambda, mu }
            } else {
                debug_assert!(r < fm.m);
                FrobeniusClass::CongruentEigen { lambda, mu, level: r }
            };
        }
    }
    // Not diagonalizable: separate the irreducible case by looking for a
    // root of the characteristic polynomial mod ℓ.
    let t = m.trace() % fm.ell;
    let d = m.det() % fm.ell;
    let has_root = (0..fm.ell).any(|x| {
        let v = (x as u128 * x as u128 + d as u128 + (fm.ell as u128 - t as u128) * x as u128)
            % fm.ell as u128;
        v == 0
    });
    if has_root {
        FrobeniusClass::NonSemisimple
    } else {
        FrobeniusClass::Irreducible
    }
}

/// Scalar level of the action for a prime unramified in the CM field:
/// ⌊v_ℓ(Δ_{πⁿ})/2⌋.
pub fn scalar_level(fd: &FrobeniusData, ell: u64) -> Result<u32> {
    let dk = cm_field_discriminant(fd.base_trace, fd.base)?;
    if dk.unsigned_abs() % ell as u128 == 0 {
        return Err(Error::RamifiedPrime { ell });
    }
    if fd.disc == 0 {
        return Err(Error::ZeroDiscriminant);
    }
    Ok(arith::valuation(fd.disc.unsigned_abs(), ell) / 2)
}

/// All stable cyclic subgroups of order ℓ^j inside (Z/ℓ^m)², as
/// canonical submodules, in deterministic order.
pub fn stable_cyclic_subgroups(fm: &FrobeniusMatrix, j: u32) -> Vec<Submodule> {
    assert!(j >= 1 && j <= fm.m);
    let lj = arith::checked_pow(fm.ell, j).unwrap() as u64;
    let scale = arith::checked_pow(fm.ell, fm.m - j).unwrap() as u64;
    let mj = fm.mat.reduce_mod(lj);
    let mut out = Vec::new();
    for w in line_generators(fm.ell, lj, 2) {
        let img = mj.apply(&w);
        let pivot = if w[0] == 1 { 0 } else { 1 };
        let mu = img[pivot];
        let stable = (0..2).all(|i| img[i] == (mu as u128 * w[i] as u128 % lj as u128) as u64);
        if stable {
            let gen: Vec<u64> = w.iter().map(|&x| x * scale).collect();
            out.push(Submodule::from_gens(fm.ell, fm.mat.modulus, 2, &[gen]));
        }
    }
    out
}

/// Number of endomorphism-ring-preserving degree-ℓ^m kernels for each
/// class; undefined for non-semisimple actions.
pub fn horizontal_count(class: &FrobeniusClass) -> Option<u8> {
    match class {
        FrobeniusClass::Irreducible => Some(0),
        FrobeniusClass::Scalar { .. } => Some(1),
        FrobeniusClass::DistinctEigen { .. } => Some(2),
        // Distinct eigenvalues mod ℓ^m: same count as the distinct case.
        FrobeniusClass::CongruentEigen { .. } => Some(2),
        FrobeniusClass::NonSemisimple => None,
    }
}

/// Product over primes ℓ | Δ_{πⁿ} unramified in the CM field of
/// ℓ^{⌊v_ℓ(Δ)/2⌋}.
pub fn unramified_part(fd: &FrobeniusData) -> Result<u128> {
    let dk = cm_field_discriminant(fd.base_trace, fd.base)?;
    if fd.disc == 0 {
        return Err(Error::ZeroDiscriminant);
    }
    let mut p = 1u128;
    for (ell, v) in arith::factor(fd.disc.unsigned_abs()) {
        if dk.unsigned_abs() % ell as u128 != 0 {
            p *= arith::checked_pow(ell, v / 2).unwrap();
        }
    }
    Ok(p)
}

/// Which extension degrees a growth report includes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FilterMode {
    /// Keep n coprime to every prime ramified in the CM field.
    Coprime,
    /// Keep the complementary set.
    NonCoprime,
}

/// One row of the ramified-prime growth table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GrowthRow {
    pub ell: u64,
    pub n: u32,
    pub valuation: u32,
}

/// v_ℓ(Δ_{πⁿ}) for every ramified prime ℓ and every admitted n.
pub fn ramified_growth_report(
    t: i64,
    base: PrimePower,
    n_max: u32,
    mode: FilterMode,
) -> Result<Vec<GrowthRow>> {
    let dk = cm_field_discriminant(t, base)?;
    let ramified: Vec<u64> = arith::factor(dk.unsigned_abs()).into_iter().map(|(p, _)| p).collect();
    let admitted = |n: u32| -> bool {
        let coprime = ramified.iter().all(|&l| n as u64 % l != 0);
        match mode {
            FilterMode::Coprime => coprime,
            FilterMode::NonCoprime => !coprime,
        }
    };
    let mut rows = Vec::new();
    for &ell in &ramified {
        for n in 1..=n_max {
            if !admitted(n) {
                continue;
            }
            let fd = crate::ff_curves::frobenius_data(t, base, n)?;
            if fd.disc == 0 {
                continue;
            }
            rows.push(GrowthRow { ell, n, valuation: arith::valuation(fd.disc.unsigned_abs(), ell) });
        }
    }
    Ok(rows)
}
