//! The symplectic module (Z/ℓ^m)⁴ modelling the ℓ^m-torsion of a product
//! abelian surface, with the Weil pairing as the standard symplectic form.
//!
//! The Gram matrix is block diagonal J ⊕ J with J = [[0,1],[−1,0]]; the
//! first two coordinates span the torsion of the ordinary factor, the
//! last two the torsion of the supersingular factor.
//!
//! Cyclic order-ℓ^m submodules ("lines") are enumerated by canonical
//! generators: the first coordinate carrying a unit is normalized to 1,
//! all earlier coordinates are divisible by ℓ, all later ones are free.
//! Each line has exactly one such generator, so no deduplication is
//! needed. Maximal isotropic submodules ("Lagrangians") are exactly the
//! free rank-2 isotropic submodules; they are enumerated as spans of
//! orthogonal line pairs and deduplicated by their canonical basis.

use crate::arith;
use crate::error::Error;
use crate::modmat::{Mat, Submodule};
use crate::Result;
use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

/// Default cap on the number of canonical line generators enumerated.
pub const LINE_BOUND: u128 = 1 << 24;

/// (Z/ℓ^m)⁴ with the standard alternating form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymplecticModule {
    pub ell: u64,
    pub m: u32,
    pub modulus: u64,
    pub gram: Mat,
}

/// How a Lagrangian sits relative to the two torsion blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IsotropyType {
    /// H = (line in the ordinary block) × (line in the supersingular
    /// block); the canonical generators of the two factors are recorded
    /// in block coordinates.
    Product { e_line: Vec<u64>, ss_line: Vec<u64> },
    /// H meets at least one block in a proper subgroup. When H meets the
    /// supersingular block trivially it is the graph of a matrix M from
    /// the ordinary block to the supersingular block with det M ≡ −1;
    /// mixed intersections (possible only for m ≥ 2) carry no graph.
    NonProduct { graph: Option<Mat> },
}

/// Canonical generators of all cyclic order-ℓ^e direct summands of
/// (Z/ℓ^e)^dim, ordered by pivot position then counter value.
pub fn line_generators(ell: u64, modulus: u64, dim: usize) -> Vec<Vec<u64>> {
    let sub = modulus / ell; // ℓ^{e−1}
    let mut out = Vec::new();
    for pivot in 0..dim {
        // Coordinates before the pivot run over ℓ·(Z/ℓ^{e−1}); after it,
        // over all of Z/ℓ^e.
        let mut radices: Vec<u64> = Vec::with_capacity(dim - 1);
        for j in 0..dim {
            if j < pivot {
                radices.push(sub);
            } else if j > pivot {
                radices.push(modulus);
            }
        }
        let total: u128 = radices.iter().map(|&r| r as u128).product();
        for counter in 0..total {
            let mut v = vec![0u64; dim];
            v[pivot] = 1;
            let mut t = counter;
            let mut ri = 0;
            for (j, slot) in v.iter_mut().enumerate() {
                if j == pivot {
                    continue;
                }
                let r = radices[ri] as u128;
                let digit = (t % r) as u64;
                t /= r;
                *slot = if j < pivot { digit * ell } else { digit };
                ri += 1;
            }
            out.push(v);
        }
    }
    out
}

/// Number of canonical line generators in dimension `dim`.
pub fn line_count(ell: u64, m: u32, dim: usize) -> u128 {
    let top = arith::checked_pow(ell, m * (dim as u32 - 1)).unwrap();
    let mut acc = 0u128;
    let mut term = top;
    for _ in 0..dim {
        acc += term;
        term /= ell as u128;
    }
    acc
}

impl SymplecticModule {
    pub fn new(ell: u64, m: u32) -> Result<Self> {
        if !arith::is_prime(ell) {
            return Err(Error::InvalidParameter("torsion prime must be prime"));
        }
        if m == 0 {
            return Err(Error::InvalidParameter("torsion level must be positive"));
        }
        let modulus = match arith::checked_pow(ell, m) {
            Some(v) if v <= (1u128 << 32) => v as u64,
            _ => {
                return Err(Error::BoundExceeded {
                    what: "torsion modulus",
                    needed: 0,
                    limit: 1 << 32,
                })
            }
        };
        let gram = Mat::from_i128(
            modulus,
            4,
            4,
            &[
                0, 1, 0, 0, //
                -1, 0, 0, 0, //
                0, 0, 0, 1, //
                0, 0, -1, 0,
            ],
        );
        Ok(SymplecticModule { ell, m, modulus, gram })
    }

    /// ⟨u, v⟩ = uᵀ·Gram·v.
    pub fn pairing(&self, u: &[u64], v: &[u64]) -> u64 {
        let gv = self.gram.apply(v);
        let m = self.modulus as u128;
        let mut acc = 0u128;
        for i in 0..4 {
            acc = (acc + u[i] as u128 * gv[i] as u128) % m;
        }
        acc as u64
    }

    /// {v : ⟨s, v⟩ = 0 for all s ∈ S}.
    pub fn orthogonal_complement(&self, s: &Submodule) -> Submodule {
        let ctx = crate::modmat::HowellContext::for_modulus(self.ell, self.modulus);
        if s.basis.rows == 0 {
            return Submodule::from_gens(
                self.ell,
                self.modulus,
                4,
                &[
                    vec![1, 0, 0, 0],
                    vec![0, 1, 0, 0],
                    vec![0, 0, 1, 0],
                    vec![0, 0, 0, 1],
                ],
            );
        }
        let bg = s.basis.mul(&self.gram);
        Submodule { ell: self.ell, ambient: 4, basis: ctx.right_kernel(&bg) }
    }

    pub fn is_isotropic(&self, s: &Submodule) -> bool {
        for i in 0..s.basis.rows {
            for j in 0..s.basis.rows {
                if self.pairing(s.basis.row(i), s.basis.row(j)) != 0 {
                    return false;
                }
            }
        }
        true
    }

    /// All canonical generators of cyclic order-ℓ^m submodules. Every
    /// such line is isotropic because the form is alternating.
    pub fn enumerate_isotropic_lines(&self) -> Result<Vec<Vec<u64>>> {
        let n = line_count(self.ell, self.m, 4);
        if n > LINE_BOUND {
            return Err(Error::BoundExceeded { what: "isotropic lines", needed: n, limit: LINE_BOUND });
        }
        Ok(line_generators(self.ell, self.modulus, 4))
    }

    /// All maximal isotropic submodules, in canonical form.
    ///
    /// A maximal isotropic submodule has ℓ^{2m} elements and exponent
    /// ℓ^m, hence is free of rank 2 and is spanned by two orthogonal
    /// primitive vectors; conversely any such span is maximal isotropic.
    pub fn enumerate_lagrangians(&self) -> Result<Vec<Submodule>> {
        let lines = self.enumerate_isotropic_lines()?;
        let target = (self.modulus as u128).pow(2);
        let mut seen: BTreeSet<Submodule> = BTreeSet::new();
        for (i, v) in lines.iter().enumerate() {
            for w in lines.iter().skip(i + 1) {
                if self.pairing(v, w) != 0 {
                    continue;
                }
                let h = Submodule::from_gens(self.ell, self.modulus, 4, &[v.clone(), w.clone()]);
                if h.cardinality() == target {
                    seen.insert(h);
                }
            }
        }
        Ok(seen.into_iter().collect())
    }

    fn block(&self, ss: bool) -> Submodule {
        let gens = if ss {
            [vec![0u64, 0, 1, 0], vec![0, 0, 0, 1]]
        } else {
            [vec![1u64, 0, 0, 0], vec![0, 1, 0, 0]]
        };
        Submodule::from_gens(self.ell, self.modulus, 4, &gens)
    }

    /// Classify a Lagrangian by its intersections with the two blocks.
    pub fn classify_type(&self, h: &Submodule) -> IsotropyType {
        let lm = self.modulus as u128;
        assert_eq!(h.cardinality(), lm * lm, "classify_type expects a maximal isotropic input");
        let in_e = h.intersect(&self.block(false));
        let in_ss = h.intersect(&self.block(true));
        if in_e.cardinality() == lm && in_ss.cardinality() == lm {
            let e_row = in_e.basis.row(0);
            let ss_row = in_ss.basis.row(0);
            return IsotropyType::Product {
                e_line: vec![e_row[0], e_row[1]],
                ss_line: vec![ss_row[2], ss_row[3]],
            };
        }
        // Graph form exists exactly when H meets the supersingular block
        // trivially: the canonical basis is then [[1,0,a,b],[0,1,c,d]].
        if in_ss.cardinality() == 1
            && h.basis.rows == 2
            && h.basis.get(0, 0) == 1
            && h.basis.get(0, 1) == 0
            && h.basis.get(1, 0) == 0
            && h.basis.get(1, 1) == 1
        {
            let mut g = Mat::zero(self.modulus, 2, 2);
            g.set(0, 0, h.basis.get(0, 2));
            g.set(0, 1, h.basis.get(0, 3));
            g.set(1, 0, h.basis.get(1, 2));
            g.set(1, 1, h.basis.get(1, 3));
            return IsotropyType::NonProduct { graph: Some(g) };
        }
        IsotropyType::NonProduct { graph: None }
    }
}
