//! Matrices and submodules over Z/ℓ^e.
//!
//! Submodules of (Z/ℓ^e)ⁿ are represented by the Howell normal form of a
//! generating set of row vectors. Over the local ring Z/ℓ^e the Howell
//! form is computed by valuation-minimal pivoting: each pivot is a pure
//! prime power ℓ^v, rows below a pivot are cleared, the annihilator
//! shadow ℓ^{e−v}·(pivot row) is re-inserted so that the span's
//! lower-order content is captured, and entries above a pivot are reduced
//! modulo the pivot. The resulting matrix is the unique canonical
//! representative of the row span, so submodule equality is matrix
//! equality and submodules can be used as ordered map keys.
//!
//! Kernels are computed by a Smith-style diagonalization that tracks
//! column operations, which also yields preimages, duals (annihilators
//! under the dot pairing), intersections and images.

use alloc::vec;
use alloc::vec::Vec;

/// Dense matrix over Z/`modulus` with entries stored row-major in
/// `[0, modulus)`. `modulus` is always a prime power ℓ^e here.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Mat {
    pub modulus: u64,
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<u64>,
}

impl Mat {
    pub fn zero(modulus: u64, rows: usize, cols: usize) -> Self {
        assert!(modulus > 1);
        Mat { modulus, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(modulus: u64, n: usize) -> Self {
        let mut m = Mat::zero(modulus, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn scalar(modulus: u64, n: usize, lambda: u64) -> Self {
        let mut m = Mat::zero(modulus, n, n);
        for i in 0..n {
            m.set(i, i, lambda % modulus);
        }
        m
    }

    /// Build from signed integer entries, reducing mod `modulus`.
    pub fn from_i128(modulus: u64, rows: usize, cols: usize, entries: &[i128]) -> Self {
        assert_eq!(entries.len(), rows * cols);
        let mut m = Mat::zero(modulus, rows, cols);
        for (i, &x) in entries.iter().enumerate() {
            m.data[i] = x.rem_euclid(modulus as i128) as u64;
        }
        m
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u64) {
        self.data[r * self.cols + c] = v % self.modulus;
    }

    pub fn row(&self, r: usize) -> &[u64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    /// Matrix product self · other.
    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows);
        assert_eq!(self.modulus, other.modulus);
        let m = self.modulus as u128;
        let mut out = Mat::zero(self.modulus, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = 0u128;
                for k in 0..self.cols {
                    acc = (acc + self.get(i, k) as u128 * other.get(k, j) as u128) % m;
                }
                out.data[i * other.cols + j] = acc as u64;
            }
        }
        out
    }

    /// Apply the matrix to a column vector: w = self · v.
    pub fn apply(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(v.len(), self.cols);
        let m = self.modulus as u128;
        (0..self.rows)
            .map(|i| {
                let mut acc = 0u128;
                for k in 0..self.cols {
                    acc = (acc + self.get(i, k) as u128 * v[k] as u128) % m;
                }
                acc as u64
            })
            .collect()
    }

    pub fn add(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        assert_eq!(self.modulus, other.modulus);
        let mut out = self.clone();
        for (a, &b) in out.data.iter_mut().zip(other.data.iter()) {
            *a = ((*a as u128 + b as u128) % self.modulus as u128) as u64;
        }
        out
    }

    pub fn scalar_mul(&self, c: u64) -> Mat {
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a = (*a as u128 * c as u128 % self.modulus as u128) as u64;
        }
        out
    }

    pub fn transpose(&self) -> Mat {
        let mut out = Mat::zero(self.modulus, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    pub fn pow(&self, mut e: u64) -> Mat {
        assert_eq!(self.rows, self.cols);
        let mut base = self.clone();
        let mut acc = Mat::identity(self.modulus, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Reduce all entries into a smaller modulus (new_mod must divide the
    /// current modulus).
    pub fn reduce_mod(&self, new_mod: u64) -> Mat {
        assert_eq!(self.modulus % new_mod, 0);
        let mut out = Mat::zero(new_mod, self.rows, self.cols);
        for (o, &a) in out.data.iter_mut().zip(self.data.iter()) {
            *o = a % new_mod;
        }
        out
    }

    /// Determinant by cofactor expansion (intended for n ≤ 4).
    pub fn det(&self) -> u64 {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let m = self.modulus as i128;
        fn det_rec(a: &[i128], n: usize, m: i128) -> i128 {
            if n == 1 {
                return a[0].rem_euclid(m);
            }
            let mut acc = 0i128;
            let mut sign = 1i128;
            for j in 0..n {
                let mut minor = Vec::with_capacity((n - 1) * (n - 1));
                for r in 1..n {
                    for c in 0..n {
                        if c != j {
                            minor.push(a[r * n + c]);
                        }
                    }
                }
                acc = (acc + sign * a[j].rem_euclid(m) * det_rec(&minor, n - 1, m)) % m;
                sign = -sign;
            }
            acc.rem_euclid(m)
        }
        let entries: Vec<i128> = self.data.iter().map(|&x| x as i128).collect();
        det_rec(&entries, n, m) as u64
    }

    pub fn trace(&self) -> u64 {
        assert_eq!(self.rows, self.cols);
        let mut acc = 0u128;
        for i in 0..self.rows {
            acc += self.get(i, i) as u128;
        }
        (acc % self.modulus as u128) as u64
    }

    /// Is this λ·I for some λ? Returns the scalar if so.
    pub fn as_scalar(&self) -> Option<u64> {
        assert_eq!(self.rows, self.cols);
        let lambda = self.get(0, 0);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let want = if i == j { lambda } else { 0 };
                if self.get(i, j) != want {
                    return None;
                }
            }
        }
        Some(lambda)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    /// Invertibility over Z/ℓ^e ⟺ det is a unit ⟺ ℓ ∤ det.
    pub fn is_invertible(&self, ell: u64) -> bool {
        self.det() % ell != 0
    }
}

/// v_ℓ(x) for x ∈ [0, ℓ^e), with v(0) = e.
fn val(ell: u64, e: u32, x: u64) -> u32 {
    if x == 0 {
        return e;
    }
    let mut v = 0;
    let mut x = x;
    while x % ell == 0 {
        x /= ell;
        v += 1;
    }
    v
}

/// Inverse of a unit mod ℓ^e.
fn unit_inv(modulus: u64, a: u64) -> u64 {
    crate::arith::inv_mod(a as i128, modulus as i128).expect("unit expected") as u64
}

/// Howell normal form machinery for row spans over Z/ℓ^e.
pub struct HowellContext {
    pub ell: u64,
    pub e: u32,
    pub modulus: u64,
}

impl HowellContext {
    pub fn new(ell: u64, e: u32) -> Self {
        let modulus = crate::arith::checked_pow(ell, e).expect("modulus overflow") as u64;
        HowellContext { ell, e, modulus }
    }

    pub fn for_modulus(ell: u64, modulus: u64) -> Self {
        let e = crate::arith::valuation(modulus as u128, ell);
        assert_eq!(crate::arith::checked_pow(ell, e), Some(modulus as u128));
        HowellContext { ell, e, modulus }
    }

    /// Howell normal form of the row span of `rows` inside (Z/ℓ^e)ⁿ.
    /// Zero rows are dropped; the result is the unique canonical basis.
    pub fn howell(&self, n: usize, rows: &[Vec<u64>]) -> Mat {
        let m = self.modulus;
        let mut work: Vec<Vec<u64>> = rows
            .iter()
            .map(|r| {
                assert_eq!(r.len(), n);
                r.iter().map(|&x| x % m).collect()
            })
            .collect();
        let mut placed: Vec<Vec<u64>> = Vec::new();
        let mut pivot_cols: Vec<(usize, u32)> = Vec::new(); // (col, valuation)

        for col in 0..n {
            // Pick an unplaced row with minimal valuation at `col`.
            let mut best: Option<(usize, u32)> = None;
            for (i, r) in work.iter().enumerate() {
                let v = val(self.ell, self.e, r[col]);
                if v < self.e && best.map_or(true, |(_, bv)| v < bv) {
                    best = Some((i, v));
                }
            }
            let Some((idx, v)) = best else { continue };
            let mut piv = work.swap_remove(idx);
            // Normalize so the pivot entry is exactly ℓ^v.
            let unit = piv[col] / pow_small(self.ell, v);
            let inv = unit_inv(m, unit % m);
            for x in piv.iter_mut() {
                *x = (*x as u128 * inv as u128 % m as u128) as u64;
            }
            debug_assert_eq!(piv[col], pow_small(self.ell, v));
            // Clear this column from all remaining rows.
            let pv = pow_small(self.ell, v);
            for r in work.iter_mut() {
                let a = r[col];
                if a != 0 {
                    debug_assert_eq!(a % pv, 0);
                    let mu = a / pv;
                    sub_scaled(r, &piv, mu, m);
                }
            }
            // Annihilator shadow: ℓ^{e−v}·piv has zero pivot but may
            // contribute in later columns.
            if v > 0 {
                let ann = pow_small(self.ell, self.e - v);
                let shadow: Vec<u64> =
                    piv.iter().map(|&x| (x as u128 * ann as u128 % m as u128) as u64).collect();
                if shadow.iter().any(|&x| x != 0) {
                    work.push(shadow);
                }
            }
            placed.push(piv);
            pivot_cols.push((col, v));
        }

        // Reduce entries above each pivot modulo the pivot value, left to
        // right: a later pivot row has zeros in all earlier pivot columns,
        // so reductions by it cannot disturb columns already processed.
        for i in 0..placed.len() {
            let (col, v) = pivot_cols[i];
            let pv = pow_small(self.ell, v);
            let piv = placed[i].clone();
            for j in 0..i {
                let a = placed[j][col];
                let mu = a / pv; // reduce to the residue a mod ℓ^v
                if mu != 0 {
                    sub_scaled(&mut placed[j], &piv, mu, m);
                }
            }
        }

        let mut out = Mat::zero(m, placed.len(), n);
        for (i, r) in placed.iter().enumerate() {
            out.data[i * n..(i + 1) * n].copy_from_slice(r);
        }
        out
    }

    /// Right kernel {x : A·x = 0} of `a`, returned as the Howell basis of
    /// the solution row span inside (Z/ℓ^e)^cols.
    pub fn right_kernel(&self, a: &Mat) -> Mat {
        assert_eq!(a.modulus, self.modulus);
        let m = self.modulus;
        let (r, n) = (a.rows, a.cols);
        let mut d: Vec<Vec<u64>> = (0..r).map(|i| a.row(i).to_vec()).collect();
        // Column-operation tracker: kernel gens are C·y for kernel gens y
        // of the diagonalized matrix.
        let mut cmat: Vec<Vec<u64>> = (0..n)
            .map(|i| {
                let mut e = vec![0u64; n];
                e[i] = 1;
                e
            })
            .collect(); // cmat[j] is column j of C

        let steps = core::cmp::min(r, n);
        let mut diag_vals: Vec<u32> = Vec::new();
        for k in 0..steps {
            // Minimal-valuation pivot in the remaining block.
            let mut best: Option<(usize, usize, u32)> = None;
            for i in k..r {
                for j in k..n {
                    let v = val(self.ell, self.e, d[i][j]);
                    if v < self.e && best.map_or(true, |(_, _, bv)| v < bv) {
                        best = Some((i, j, v));
                    }
                }
            }
            let Some((pi, pj, v)) = best else {
                break;
            };
            d.swap(k, pi);
            for row in d.iter_mut() {
                row.swap(k, pj);
            }
            cmat.swap(k, pj);
            // Normalize the pivot row so the pivot is ℓ^v.
            let pv = pow_small(self.ell, v);
            let unit = d[k][k] / pv;
            let inv = unit_inv(m, unit % m);
            for x in d[k].iter_mut() {
                *x = (*x as u128 * inv as u128 % m as u128) as u64;
            }
            // Clear below.
            for i in k + 1..r {
                let aik = d[i][k];
                if aik != 0 {
                    let mu = aik / pv;
                    let pivrow = d[k].clone();
                    sub_scaled(&mut d[i], &pivrow, mu, m);
                }
            }
            // Clear to the right (column ops, mirrored in C).
            for j in k + 1..n {
                let akj = d[k][j];
                if akj != 0 {
                    let mu = akj / pv;
                    for i in 0..r {
                        let sub = (mu as u128 * d[i][k] as u128 % m as u128) as u64;
                        d[i][j] = ((d[i][j] as u128 + m as u128 - sub as u128) % m as u128) as u64;
                    }
                    let ck = cmat[k].clone();
                    let cj = &mut cmat[j];
                    for i in 0..n {
                        let sub = (mu as u128 * ck[i] as u128 % m as u128) as u64;
                        cj[i] = ((cj[i] as u128 + m as u128 - sub as u128) % m as u128) as u64;
                    }
                }
            }
            diag_vals.push(v);
        }

        // Kernel of the diagonal: ℓ^{e−v}·e_k per pivot, e_j free beyond.
        let mut gens: Vec<Vec<u64>> = Vec::new();
        for (k, &v) in diag_vals.iter().enumerate() {
            if v > 0 {
                let scale = pow_small(self.ell, self.e - v);
                let g: Vec<u64> =
                    cmat[k].iter().map(|&x| (x as u128 * scale as u128 % m as u128) as u64).collect();
                gens.push(g);
            }
        }
        for j in diag_vals.len()..n {
            gens.push(cmat[j].clone());
        }
        self.howell(n, &gens)
    }
}

#[inline]
fn pow_small(ell: u64, v: u32) -> u64 {
    let mut acc = 1u64;
    for _ in 0..v {
        acc *= ell;
    }
    acc
}

#[inline]
fn sub_scaled(target: &mut [u64], src: &[u64], mu: u64, m: u64) {
    for (t, &s) in target.iter_mut().zip(src.iter()) {
        let sub = mu as u128 * s as u128 % m as u128;
        *t = ((*t as u128 + m as u128 - sub) % m as u128) as u64;
    }
}

/// A submodule of (Z/ℓ^e)ⁿ in canonical (Howell) form.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Submodule {
    pub ell: u64,
    pub ambient: usize,
    /// Canonical Howell basis; rows generate the submodule.
    pub basis: Mat,
}

impl Submodule {
    pub fn from_gens(ell: u64, modulus: u64, ambient: usize, gens: &[Vec<u64>]) -> Self {
        let ctx = HowellContext::for_modulus(ell, modulus);
        Submodule { ell, ambient, basis: ctx.howell(ambient, gens) }
    }

    pub fn zero(ell: u64, modulus: u64, ambient: usize) -> Self {
        Submodule { ell, ambient, basis: Mat::zero(modulus, 0, ambient) }
    }

    fn ctx(&self) -> HowellContext {
        HowellContext::for_modulus(self.ell, self.basis.modulus)
    }

    pub fn modulus(&self) -> u64 {
        self.basis.modulus
    }

    /// Number of elements: ∏ ℓ^{e − v(pivot)} over the Howell pivots.
    pub fn cardinality(&self) -> u128 {
        let ctx = self.ctx();
        let mut card = 1u128;
        for i in 0..self.basis.rows {
            let col = (0..self.ambient)
                .find(|&c| self.basis.get(i, c) != 0)
                .expect("howell basis has no zero rows");
            let v = val(ctx.ell, ctx.e, self.basis.get(i, col));
            card *= crate::arith::checked_pow(ctx.ell, ctx.e - v).unwrap();
        }
        card
    }

    /// Membership by reduction against the canonical basis.
    pub fn contains(&self, v: &[u64]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Reduce a vector modulo this submodule (residue after subtracting
    /// the unique reducible basis multiples).
    pub fn reduce(&self, v: &[u64]) -> Vec<u64> {
        let ctx = self.ctx();
        let m = ctx.modulus;
        let mut x: Vec<u64> = v.iter().map(|&a| a % m).collect();
        for i in 0..self.basis.rows {
            let col = (0..self.ambient).find(|&c| self.basis.get(i, c) != 0).unwrap();
            let pv = pow_small(ctx.ell, val(ctx.ell, ctx.e, self.basis.get(i, col)));
            let a = x[col];
            if a % pv == 0 {
                let mu = a / pv;
                if mu != 0 {
                    let row = self.basis.row(i).to_vec();
                    sub_scaled(&mut x, &row, mu, m);
                }
            }
        }
        x
    }

    /// Does this submodule contain `other`?
    pub fn contains_submodule(&self, other: &Submodule) -> bool {
        (0..other.basis.rows).all(|i| self.contains(other.basis.row(i)))
    }

    /// Span of the union.
    pub fn sum(&self, other: &Submodule) -> Submodule {
        assert_eq!(self.ambient, other.ambient);
        let mut gens: Vec<Vec<u64>> = Vec::new();
        for i in 0..self.basis.rows {
            gens.push(self.basis.row(i).to_vec());
        }
        for i in 0..other.basis.rows {
            gens.push(other.basis.row(i).to_vec());
        }
        Submodule::from_gens(self.ell, self.modulus(), self.ambient, &gens)
    }

    /// Annihilator under the dot pairing: {y : s·y = 0 for all s ∈ S}.
    /// The pairing is perfect on (Z/ℓ^e)ⁿ, so dual(dual(S)) = S.
    pub fn dual(&self) -> Submodule {
        let ctx = self.ctx();
        if self.basis.rows == 0 {
            // Everything annihilates the zero module.
            let mut gens = Vec::new();
            for i in 0..self.ambient {
                let mut e = vec![0u64; self.ambient];
                e[i] = 1;
                gens.push(e);
            }
            return Submodule::from_gens(self.ell, self.modulus(), self.ambient, &gens);
        }
        let k = ctx.right_kernel(&self.basis);
        Submodule { ell: self.ell, ambient: self.ambient, basis: k }
    }

    /// Intersection via duals: S₁ ∩ S₂ = (S₁^⊥ + S₂^⊥)^⊥.
    pub fn intersect(&self, other: &Submodule) -> Submodule {
        self.dual().sum(&other.dual()).dual()
    }

    /// Image under a square matrix acting on column vectors.
    pub fn image(&self, a: &Mat) -> Submodule {
        assert_eq!(a.cols, self.ambient);
        let gens: Vec<Vec<u64>> =
            (0..self.basis.rows).map(|i| a.apply(self.basis.row(i))).collect();
        Submodule::from_gens(self.ell, self.modulus(), self.ambient, &gens)
    }

    /// Preimage {x : A·x ∈ S} under a square matrix.
    pub fn preimage(&self, a: &Mat) -> Submodule {
        let ctx = self.ctx();
        let check = self.dual(); // rows C with S = ker C
        let ca = check.basis.mul(a);
        Submodule { ell: self.ell, ambient: self.ambient, basis: ctx.right_kernel(&ca) }
    }

    /// Preimage under multiplication by a scalar.
    pub fn preimage_scalar(&self, c: u64) -> Submodule {
        let a = Mat::scalar(self.modulus(), self.ambient, c);
        self.preimage(&a)
    }

    /// Express v in terms of the basis rows if the basis is free with
    /// unit pivots (coefficients are then unique).
    pub fn express_in_free_basis(&self, v: &[u64]) -> Option<Vec<u64>> {
        let ctx = self.ctx();
        let m = ctx.modulus;
        let mut x: Vec<u64> = v.iter().map(|&a| a % m).collect();
        let mut coeffs = vec![0u64; self.basis.rows];
        for i in 0..self.basis.rows {
            let col = (0..self.ambient).find(|&c| self.basis.get(i, c) != 0)?;
            let pivot = self.basis.get(i, col);
            if pivot % ctx.ell == 0 {
                return None; // not a free unit-pivot basis
            }
            let mu = (x[col] as u128 * unit_inv(m, pivot) as u128 % m as u128) as u64;
            coeffs[i] = mu;
            if mu != 0 {
                let row = self.basis.row(i).to_vec();
                sub_scaled(&mut x, &row, mu, m);
            }
        }
        if x.iter().all(|&a| a == 0) {
            Some(coeffs)
        } else {
            None
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_mix(ctx: &HowellContext, rows: &[Vec<u64>], rng: &mut ChaCha8Rng) -> Vec<Vec<u64>> {
        // Random invertible-over-span mixing: shuffle, add random multiples,
        // scale by random units, duplicate rows.
        let m = ctx.modulus;
        let mut out: Vec<Vec<u64>> = rows.to_vec();
        for _ in 0..20 {
            match rng.gen_range(0..4) {
                0 => {
                    if out.len() >= 2 {
                        let i = rng.gen_range(0..out.len());
                        let j = rng.gen_range(0..out.len());
                        if i != j {
                            let c = rng.gen_range(0..m);
                            let src = out[j].clone();
                            for (t, s) in out[i].iter_mut().zip(src.iter()) {
                                *t = ((*t as u128 + c as u128 * *s as u128) % m as u128) as u64;
                            }
                        }
                    }
                }
                1 => {
                    let i = rng.gen_range(0..out.len());
                    let mut u = rng.gen_range(0..m);
                    while u % ctx.ell == 0 {
                        u = rng.gen_range(0..m);
                    }
                    for t in out[i].iter_mut() {
                        *t = (*t as u128 * u as u128 % m as u128) as u64;
                    }
                }
                2 => {
                    let i = rng.gen_range(0..out.len());
                    let dup = out[i].clone();
                    out.push(dup);
                }
                _ => {
                    let i = rng.gen_range(0..out.len());
                    let j = rng.gen_range(0..out.len());
                    out.swap(i, j);
                }
            }
        }
        out
    }

    #[test]
    fn howell_is_invariant_under_generator_resampling() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for &(ell, e) in &[(2u64, 3u32), (3, 2), (5, 2), (2, 5)] {
            let ctx = HowellContext::new(ell, e);
            for _ in 0..40 {
                let n = rng.gen_range(2..5);
                let k = rng.gen_range(1..4);
                let rows: Vec<Vec<u64>> =
                    (0..k).map(|_| (0..n).map(|_| rng.gen_range(0..ctx.modulus)).collect()).collect();
                let canon = ctx.howell(n, &rows);
                for _ in 0..5 {
                    let mixed = random_mix(&ctx, &rows, &mut rng);
                    assert_eq!(ctx.howell(n, &mixed), canon);
                }
            }
        }
    }

    #[test]
    fn cardinality_matches_exhaustive_membership() {
        // Small enough to brute-force the whole ambient module.
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for &(ell, e, n) in &[(2u64, 2u32, 3usize), (3, 1, 3), (2, 3, 2), (3, 2, 2)] {
            let ctx = HowellContext::new(ell, e);
            let m = ctx.modulus;
            for _ in 0..20 {
                let k = rng.gen_range(1..3);
                let rows: Vec<Vec<u64>> =
                    (0..k).map(|_| (0..n).map(|_| rng.gen_range(0..m)).collect()).collect();
                let s = Submodule::from_gens(ell, m, n, &rows);
                let total = (m as u128).pow(n as u32);
                let mut count = 0u128;
                for idx in 0..total {
                    let mut v = alloc::vec![0u64; n];
                    let mut t = idx;
                    for x in v.iter_mut() {
                        *x = (t % m as u128) as u64;
                        t /= m as u128;
                    }
                    if s.contains(&v) {
                        count += 1;
                    }
                }
                assert_eq!(count, s.cardinality());
            }
        }
    }

    #[test]
    fn kernel_vectors_annihilate_and_count() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for &(ell, e) in &[(2u64, 3u32), (3, 2), (5, 1)] {
            let ctx = HowellContext::new(ell, e);
            let m = ctx.modulus;
            for _ in 0..30 {
                let r = rng.gen_range(1..4);
                let n = rng.gen_range(1..4);
                let mut a = Mat::zero(m, r, n);
                for i in 0..r {
                    for j in 0..n {
                        a.set(i, j, rng.gen_range(0..m));
                    }
                }
                let ker = ctx.right_kernel(&a);
                let sub = Submodule { ell, ambient: n, basis: ker.clone() };
                for i in 0..ker.rows {
                    let prod = a.apply(ker.row(i));
                    assert!(prod.iter().all(|&x| x == 0));
                }
                // Brute-force count of the kernel.
                let total = (m as u128).pow(n as u32);
                let mut count = 0u128;
                for idx in 0..total {
                    let mut v = alloc::vec![0u64; n];
                    let mut t = idx;
                    for x in v.iter_mut() {
                        *x = (t % m as u128) as u64;
                        t /= m as u128;
                    }
                    if a.apply(&v).iter().all(|&x| x == 0) {
                        count += 1;
                    }
                }
                assert_eq!(count, sub.cardinality());
            }
        }
    }

    #[test]
    fn double_dual_is_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for &(ell, e) in &[(2u64, 3u32), (3, 2)] {
            let ctx = HowellContext::new(ell, e);
            let m = ctx.modulus;
            for _ in 0..40 {
                let n = rng.gen_range(1..5);
                let k = rng.gen_range(0..3);
                let rows: Vec<Vec<u64>> =
                    (0..k).map(|_| (0..n).map(|_| rng.gen_range(0..m)).collect()).collect();
                let s = Submodule::from_gens(ell, m, n, &rows);
                let dd = s.dual().dual();
                assert_eq!(s, dd);
                // |S| · |S^⊥| = mⁿ.
                assert_eq!(s.cardinality() * s.dual().cardinality(), (m as u128).pow(n as u32));
            }
        }
    }

    #[test]
    fn preimage_and_image_consistency() {
        let mut rng = ChaCha8Rng::seed_from_u64(19);
        let ell = 2u64;
        let ctx = HowellContext::new(ell, 3);
        let m = ctx.modulus;
        for _ in 0..40 {
            let n = 3usize;
            let mut a = Mat::zero(m, n, n);
            for i in 0..n {
                for j in 0..n {
                    a.set(i, j, rng.gen_range(0..m));
                }
            }
            let rows: Vec<Vec<u64>> = (0..2).map(|_| (0..n).map(|_| rng.gen_range(0..m)).collect()).collect();
            let s = Submodule::from_gens(ell, m, n, &rows);
            let pre = s.preimage(&a);
            // Brute check: x ∈ pre ⟺ A·x ∈ s.
            for idx in 0..(m as u128).pow(n as u32) {
                let mut v = alloc::vec![0u64; n];
                let mut t = idx;
                for x in v.iter_mut() {
                    *x = (t % m as u128) as u64;
                    t /= m as u128;
                }
                assert_eq!(pre.contains(&v), s.contains(&a.apply(&v)));
            }
            // image(preimage(S)) ⊆ S.
            let img = pre.image(&a);
            assert!(s.contains_submodule(&img));
        }
    }

    #[test]
    fn express_in_free_basis_round_trip() {
        let ell = 3u64;
        let m = 27u64;
        let s = Submodule::from_gens(
            ell,
            m,
            3,
            &[alloc::vec![1, 0, 5], alloc::vec![0, 1, 7]],
        );
        let v = alloc::vec![2u64, 4, (2 * 5 + 4 * 7) % 27];
        let c = s.express_in_free_basis(&v).unwrap();
        assert_eq!(c, alloc::vec![2, 4]);
        assert!(s.express_in_free_basis(&[0, 0, 1]).is_none());
    }
}
