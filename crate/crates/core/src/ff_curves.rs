//! Finite fields 𝔽_{p^d} (p ≥ 5, d ≤ 12) and short-Weierstrass elliptic
//! curves over them.
//!
//! Fields are built deterministically: the defining polynomial is the
//! first monic irreducible of the requested degree when the non-leading
//! coefficient vector is read as a base-p integer, least significant
//! (constant) digit first. Elements are coefficient vectors in a fixed
//! inline array, so everything is `Copy` and allocation-free.
//!
//! Curves y² = x³ + ax + b support exact point counting via a quadratic
//! residue table (partitionable by x-range for parallel callers), trace
//! recurrences for extension fields, ℓ^m-torsion basis search in an
//! explicit division field, the matrix of Frobenius on that basis, and
//! separable quotient isogenies from an explicit kernel subgroup.

use crate::arith;
use crate::error::Error;
use crate::modmat::Mat;
use crate::Result;
use alloc::vec;
use alloc::vec::Vec;

/// Maximum supported extension degree.
pub const MAX_DEG: usize = 12;

/// Largest field size for which tables are allocated.
pub const FIELD_SIZE_BOUND: u64 = 1 << 24;

/// A prime power q = pⁿ with p ≥ 5 prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimePower {
    pub p: u64,
    pub n: u32,
}

impl PrimePower {
    pub fn new(p: u64, n: u32) -> Result<Self> {
        if p < 5 || !arith::is_prime(p) {
            return Err(Error::InvalidParameter("base must be a prime p >= 5"));
        }
        if n == 0 {
            return Err(Error::InvalidParameter("prime power exponent must be positive"));
        }
        match arith::checked_pow(p, n) {
            Some(v) if v <= u64::MAX as u128 => Ok(PrimePower { p, n }),
            _ => Err(Error::BoundExceeded { what: "prime power", needed: 0, limit: u64::MAX as u128 }),
        }
    }

    pub fn value(&self) -> u64 {
        arith::checked_pow(self.p, self.n).unwrap() as u64
    }
}

/// Element of 𝔽_{p^d}: coefficients of 1, x, …, x^{d−1}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fq {
    c: [u64; MAX_DEG],
}

impl Fq {
    pub const ZERO: Fq = Fq { c: [0; MAX_DEG] };

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|&x| x == 0)
    }
}

/// A concrete finite field with its reduction data.
///
/// `top[i]` is the coefficient of xⁱ in the reduction of x^deg modulo the
/// deterministic defining polynomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Field {
    pub p: u64,
    pub deg: usize,
    top: [u64; MAX_DEG],
}

// --- dense polynomial helpers over 𝔽_p (used only to build fields) ---

fn ptrim(a: &mut Vec<u64>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn pmulmod(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + ai * bj) % p;
        }
    }
    prem(&mut prod, f, p);
    prod
}

/// In-place remainder modulo monic f.
fn prem(a: &mut Vec<u64>, f: &[u64], p: u64) {
    let d = f.len() - 1;
    while a.len() > d {
        let k = a.len() - 1;
        let c = a[k];
        if c != 0 {
            for i in 0..d {
                let t = (c * f[i]) % p;
                a[k - d + i] = (a[k - d + i] + p - t) % p;
            }
        }
        a.pop();
        ptrim(a);
    }
    ptrim(a);
}

fn pgcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    ptrim(&mut a);
    ptrim(&mut b);
    while !b.is_empty() {
        // a mod b with b made monic first.
        let lead = *b.last().unwrap();
        let inv = arith::inv_mod(lead as i128, p as i128).unwrap() as u64;
        let monic: Vec<u64> = b.iter().map(|&x| x * inv % p).collect();
        prem(&mut a, &monic, p);
        core::mem::swap(&mut a, &mut b);
    }
    a
}

/// x^{p^k} mod f, by binary exponentiation on the exponent p^k.
fn xq_pow(f: &[u64], p: u64, k: u32) -> Vec<u64> {
    let mut e = arith::checked_pow(p, k).expect("exponent overflow");
    let mut base = vec![0u64, 1]; // x
    prem(&mut base, f, p);
    let mut acc = vec![1u64];
    while e > 0 {
        if e & 1 == 1 {
            acc = pmulmod(&acc, &base, f, p);
        }
        base = pmulmod(&base, &base, f, p);
        e >>= 1;
    }
    acc
}

fn is_irreducible(f: &[u64], p: u64) -> bool {
    let d = (f.len() - 1) as u32;
    if d == 1 {
        return true;
    }
    // x^{p^d} must equal x …
    let xf = xq_pow(f, p, d);
    let mut x = vec![0u64, 1];
    prem(&mut x, f, p);
    if xf != x {
        return false;
    }
    // … and x^{p^{d/r}} − x must be coprime to f for every prime r | d.
    let mut rem = d;
    let mut r = 2;
    let mut primes = Vec::new();
    while r * r <= rem {
        if rem % r == 0 {
            primes.push(r);
            while rem % r == 0 {
                rem /= r;
            }
        }
        r += 1;
    }
    if rem > 1 {
        primes.push(rem);
    }
    for r in primes {
        let mut g = xq_pow(f, p, d / r);
        // g − x
        if g.len() < 2 {
            g.resize(2, 0);
        }
        g[1] = (g[1] + p - 1) % p;
        ptrim(&mut g);
        let gc = pgcd(&g, f, p);
        if gc.len() != 1 {
            return false;
        }
    }
    true
}

impl Field {
    /// The field 𝔽_{p^deg} with its deterministic defining polynomial.
    pub fn new(p: u64, deg: usize) -> Result<Field> {
        if p < 5 || !arith::is_prime(p) {
            return Err(Error::InvalidParameter("field characteristic must be a prime >= 5"));
        }
        if deg == 0 || deg > MAX_DEG {
            return Err(Error::InvalidParameter("field degree out of range"));
        }
        match arith::checked_pow(p, deg as u32) {
            Some(v) if v <= FIELD_SIZE_BOUND as u128 => {}
            _ => {
                return Err(Error::BoundExceeded {
                    what: "field size",
                    needed: 0,
                    limit: FIELD_SIZE_BOUND as u128,
                })
            }
        }
        // First monic irreducible x^deg + Σ cᵢ xⁱ in base-p counter order
        // over (c₀, …, c_{deg−1}).
        let total = arith::checked_pow(p, deg as u32).unwrap();
        let mut counter: u128 = 0;
        while counter < total {
            let mut f = vec![0u64; deg + 1];
            f[deg] = 1;
            let mut t = counter;
            for coeff in f.iter_mut().take(deg) {
                *coeff = (t % p as u128) as u64;
                t /= p as u128;
            }
            if is_irreducible(&f, p) {
                let mut top = [0u64; MAX_DEG];
                for i in 0..deg {
                    top[i] = (p - f[i]) % p;
                }
                return Ok(Field { p, deg, top });
            }
            counter += 1;
        }
        unreachable!("an irreducible polynomial of every degree exists")
    }

    pub fn q(&self) -> u64 {
        arith::checked_pow(self.p, self.deg as u32).unwrap() as u64
    }

    pub fn zero(&self) -> Fq {
        Fq::ZERO
    }

    pub fn one(&self) -> Fq {
        self.from_int(1)
    }

    pub fn from_int(&self, v: i128) -> Fq {
        let mut e = Fq::ZERO;
        e.c[0] = v.rem_euclid(self.p as i128) as u64;
        e
    }

    /// Canonical index of an element: Σ cᵢ pⁱ.
    pub fn enc(&self, a: Fq) -> u64 {
        let mut acc = 0u64;
        for i in (0..self.deg).rev() {
            acc = acc * self.p + a.c[i];
        }
        acc
    }

    pub fn dec(&self, mut idx: u64) -> Fq {
        let mut e = Fq::ZERO;
        for i in 0..self.deg {
            e.c[i] = idx % self.p;
            idx /= self.p;
        }
        e
    }

    pub fn add(&self, a: Fq, b: Fq) -> Fq {
        let mut out = Fq::ZERO;
        for i in 0..self.deg {
            out.c[i] = (a.c[i] + b.c[i]) % self.p;
        }
        out
    }

    pub fn sub(&self, a: Fq, b: Fq) -> Fq {
        let mut out = Fq::ZERO;
        for i in 0..self.deg {
            out.c[i] = (a.c[i] + self.p - b.c[i]) % self.p;
        }
        out
    }

    pub fn neg(&self, a: Fq) -> Fq {
        self.sub(Fq::ZERO, a)
    }

    pub fn mul(&self, a: Fq, b: Fq) -> Fq {
        let d = self.deg;
        let mut tmp = [0u64; 2 * MAX_DEG];
        for i in 0..d {
            if a.c[i] == 0 {
                continue;
            }
            for j in 0..d {
                tmp[i + j] = (tmp[i + j] + a.c[i] * b.c[j]) % self.p;
            }
        }
        // Fold x^k (k ≥ d) down using x^d ≡ top.
        for k in (d..2 * d - 1).rev() {
            let c = tmp[k];
            if c != 0 {
                tmp[k] = 0;
                for i in 0..d {
                    if self.top[i] != 0 {
                        tmp[k - d + i] = (tmp[k - d + i] + c * self.top[i]) % self.p;
                    }
                }
            }
        }
        let mut out = Fq::ZERO;
        out.c[..d].copy_from_slice(&tmp[..d]);
        out
    }

    pub fn pow(&self, a: Fq, mut e: u64) -> Fq {
        let mut base = a;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: Fq) -> Fq {
        assert!(!a.is_zero(), "inverse of zero");
        self.pow(a, self.q() - 2)
    }

    /// Table of nonzero squares, indexed by `enc`.
    pub fn square_table(&self) -> Vec<bool> {
        let q = self.q();
        let mut tab = vec![false; q as usize];
        for idx in 1..q {
            let y = self.dec(idx);
            let s = self.mul(y, y);
            tab[self.enc(s) as usize] = true;
        }
        tab
    }

    /// Smallest-index square root for each square, `u64::MAX` otherwise.
    pub fn sqrt_table(&self) -> Vec<u64> {
        let q = self.q();
        let mut tab = vec![u64::MAX; q as usize];
        for idx in (1..q).rev() {
            let y = self.dec(idx);
            let s = self.enc(self.mul(y, y));
            tab[s as usize] = idx; // descending loop leaves smallest index
        }
        tab[0] = 0;
        tab
    }
}

/// Point on an elliptic curve in affine coordinates, or the origin.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CurvePoint {
    Infinity,
    Affine(Fq, Fq),
}

impl CurvePoint {
    pub fn is_infinity(&self) -> bool {
        matches!(self, CurvePoint::Infinity)
    }
}

/// y² = x³ + ax + b over a fixed finite field, nonsingular.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EllipticCurve {
    pub field: Field,
    pub a: Fq,
    pub b: Fq,
}

impl EllipticCurve {
    pub fn new(field: Field, a: Fq, b: Fq) -> Result<Self> {
        let e = EllipticCurve { field, a, b };
        if e.discriminant_piece().is_zero() {
            return Err(Error::InvalidParameter("singular curve: 4a^3 + 27b^2 = 0"));
        }
        Ok(e)
    }

    pub fn from_int_coeffs(field: Field, a: i128, b: i128) -> Result<Self> {
        Self::new(field, field.from_int(a), field.from_int(b))
    }

    /// 4a³ + 27b².
    fn discriminant_piece(&self) -> Fq {
        let f = &self.field;
        let a3 = f.mul(f.mul(self.a, self.a), self.a);
        let b2 = f.mul(self.b, self.b);
        f.add(f.mul(f.from_int(4), a3), f.mul(f.from_int(27), b2))
    }

    pub fn j_invariant(&self) -> Fq {
        let f = &self.field;
        let a3 = f.mul(f.mul(self.a, self.a), self.a);
        let num = f.mul(f.from_int(1728 * 4), a3);
        f.mul(num, f.inv(self.discriminant_piece()))
    }

    pub fn rhs(&self, x: Fq) -> Fq {
        let f = &self.field;
        let x2 = f.mul(x, x);
        f.add(f.add(f.mul(x2, x), f.mul(self.a, x)), self.b)
    }

    pub fn is_on(&self, pt: CurvePoint) -> bool {
        match pt {
            CurvePoint::Infinity => true,
            CurvePoint::Affine(x, y) => self.field.mul(y, y) == self.rhs(x),
        }
    }

    pub fn neg(&self, pt: CurvePoint) -> CurvePoint {
        match pt {
            CurvePoint::Infinity => CurvePoint::Infinity,
            CurvePoint::Affine(x, y) => CurvePoint::Affine(x, self.field.neg(y)),
        }
    }

    pub fn add(&self, p: CurvePoint, q: CurvePoint) -> CurvePoint {
        let f = &self.field;
        let (x1, y1) = match p {
            CurvePoint::Infinity => return q,
            CurvePoint::Affine(x, y) => (x, y),
        };
        let (x2, y2) = match q {
            CurvePoint::Infinity => return p,
            CurvePoint::Affine(x, y) => (x, y),
        };
        let lambda = if x1 == x2 {
            if f.add(y1, y2).is_zero() {
                return CurvePoint::Infinity;
            }
            // Tangent: (3x² + a) / 2y.
            let num = f.add(f.mul(f.from_int(3), f.mul(x1, x1)), self.a);
            f.mul(num, f.inv(f.mul(f.from_int(2), y1)))
        } else {
            f.mul(f.sub(y2, y1), f.inv(f.sub(x2, x1)))
        };
        let x3 = f.sub(f.sub(f.mul(lambda, lambda), x1), x2);
        let y3 = f.sub(f.mul(lambda, f.sub(x1, x3)), y1);
        CurvePoint::Affine(x3, y3)
    }

    pub fn mul(&self, pt: CurvePoint, k: u128) -> CurvePoint {
        let mut acc = CurvePoint::Infinity;
        let mut base = pt;
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(acc, base);
            }
            base = self.add(base, base);
            k >>= 1;
        }
        acc
    }

    /// Affine-point contribution of the x-range [lo, hi) of element
    /// indices, given the square table. Total count is 1 + Σ over ranges.
    pub fn point_count_range(&self, squares: &[bool], lo: u64, hi: u64) -> u64 {
        let f = &self.field;
        let mut acc = 0u64;
        for xi in lo..hi {
            let v = self.rhs(f.dec(xi));
            if v.is_zero() {
                acc += 1;
            } else if squares[f.enc(v) as usize] {
                acc += 2;
            }
        }
        acc
    }

    pub fn point_count(&self) -> u64 {
        let squares = self.field.square_table();
        1 + self.point_count_range(&squares, 0, self.field.q())
    }

    pub fn trace(&self) -> i64 {
        let q = self.field.q() as i64;
        q + 1 - self.point_count() as i64
    }

    /// All points, ordered by x index then y index.
    pub fn all_points(&self) -> Vec<CurvePoint> {
        let f = &self.field;
        let sqrt = f.sqrt_table();
        let mut pts = vec![CurvePoint::Infinity];
        for xi in 0..f.q() {
            let x = f.dec(xi);
            let v = self.rhs(x);
            if v.is_zero() {
                pts.push(CurvePoint::Affine(x, Fq::ZERO));
            } else {
                let s = sqrt[f.enc(v) as usize];
                if s != u64::MAX {
                    let y = f.dec(s);
                    let ny = f.neg(y);
                    let (lo, hi) = if f.enc(y) < f.enc(ny) { (y, ny) } else { (ny, y) };
                    pts.push(CurvePoint::Affine(x, lo));
                    pts.push(CurvePoint::Affine(x, hi));
                }
            }
        }
        pts
    }
}

/// Frobenius data of an abelian variety factor E/𝔽_q viewed over 𝔽_{qⁿ}.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FrobeniusData {
    pub base: PrimePower,
    pub n: u32,
    /// qⁿ.
    pub q_n: u64,
    /// Trace of the qⁿ-power Frobenius.
    pub trace: i64,
    /// trace² − 4qⁿ.
    pub disc: i128,
    /// Trace of the q-power Frobenius the data was derived from.
    pub base_trace: i64,
}

/// Trace of Frobenius over 𝔽_{qⁿ} from the trace over 𝔽_q, via
/// t₀ = 2, t₁ = t, t_{k+1} = t·t_k − q·t_{k−1}.
pub fn trace_power(t: i64, q: u64, n: u32) -> i128 {
    let mut prev: i128 = 2;
    let mut cur: i128 = t as i128;
    if n == 0 {
        return 2;
    }
    for _ in 1..n {
        let next = t as i128 * cur - q as i128 * prev;
        prev = cur;
        cur = next;
    }
    cur
}

pub fn frobenius_data(t: i64, base: PrimePower, n: u32) -> Result<FrobeniusData> {
    let q = base.value();
    if (t as i128) * (t as i128) > 4 * q as i128 {
        return Err(Error::HasseViolation { t, q });
    }
    if n == 0 {
        return Err(Error::InvalidParameter("extension degree must be positive"));
    }
    let q_n = match arith::checked_pow(q, n) {
        Some(v) if v <= u64::MAX as u128 => v as u64,
        _ => return Err(Error::BoundExceeded { what: "q^n", needed: 0, limit: u64::MAX as u128 }),
    };
    let t_n = trace_power(t, q, n);
    let disc = t_n * t_n - 4 * q_n as i128;
    Ok(FrobeniusData { base, n, q_n, trace: t_n as i64, disc, base_trace: t })
}

/// Ordinary ⟺ the trace is prime to the characteristic.
pub fn is_ordinary(t: i64, p: u64) -> bool {
    t.rem_euclid(p as i64) != 0
}

/// Smallest extension degree s ≤ max_deg of 𝔽_q for which the group order
/// and q^s − 1 are compatible with full ℓ^m-torsion.
pub fn division_degree_candidates(t: i64, q: u64, ell: u64, m: u32, max_deg: u32) -> Vec<u32> {
    let lm = arith::checked_pow(ell, m).unwrap();
    let l2m = arith::checked_pow(ell, 2 * m).unwrap();
    let mut out = Vec::new();
    for s in 1..=max_deg {
        let qs = match arith::checked_pow(q, s) {
            Some(v) => v,
            None => break,
        };
        let ns = qs as i128 + 1 - trace_power(t, q, s);
        if ns >= 0 && (ns as u128) % l2m == 0 && (qs - 1) % lm == 0 {
            out.push(s);
        }
    }
    out
}

/// Basis (P₁, P₂) of E[ℓ^m] over the given field, by deterministic scan.
///
/// The caller supplies the curve over the candidate division field; the
/// search fails with `TorsionNotFound` if the full torsion is not
/// rational there.
pub fn torsion_basis(e: &EllipticCurve, ell: u64, m: u32) -> Result<(CurvePoint, CurvePoint)> {
    let n = e.point_count() as u128;
    let lm = arith::checked_pow(ell, m).ok_or(Error::TorsionNotFound { ell, m })? as u128;
    let v = arith::valuation(n, ell);
    if v < 2 * m {
        return Err(Error::TorsionNotFound { ell, m });
    }
    let cof = n / arith::checked_pow(ell, v).unwrap();

    let normalize = |pt: CurvePoint| -> Option<CurvePoint> {
        // pt has ℓ-power order; reduce to exact order ℓ^m if possible.
        let mut ord = 0u32;
        let mut cur = pt;
        while !cur.is_infinity() {
            cur = e.mul(cur, ell as u128);
            ord += 1;
            if ord > v {
                return None;
            }
        }
        if ord < m {
            return None;
        }
        Some(e.mul(pt, (lm as u128).pow(0) * arith::checked_pow(ell, ord - m).unwrap()))
    };

    let mut first: Option<CurvePoint> = None;
    for pt in e.all_points() {
        if pt.is_infinity() {
            continue;
        }
        let r = e.mul(pt, cof);
        let Some(s) = normalize(r) else { continue };
        match first {
            None => first = Some(s),
            Some(p1) => {
                // Independence: compare the order-ℓ shadows.
                let t1 = e.mul(p1, arith::checked_pow(ell, m - 1).unwrap() as u128);
                let t2 = e.mul(s, arith::checked_pow(ell, m - 1).unwrap() as u128);
                let mut dependent = false;
                let mut acc = CurvePoint::Infinity;
                for _ in 0..ell {
                    if acc == t2 {
                        dependent = true;
                        break;
                    }
                    acc = e.add(acc, t1);
                }
                if !dependent {
                    return Ok((p1, s));
                }
            }
        }
    }
    Err(Error::TorsionNotFound { ell, m })
}

/// Matrix of the p^r-power Frobenius on the torsion basis, as a 2×2
/// matrix over Z/ℓ^m acting on column coordinate vectors.
///
/// `frob_power` is the power of the characteristic defining the isogeny
/// (r = 1 for the base-field Frobenius of a curve with prime-field
/// coefficients).
pub fn frobenius_matrix_on_basis(
    e: &EllipticCurve,
    basis: (CurvePoint, CurvePoint),
    ell: u64,
    m: u32,
    frob_power: u32,
) -> Result<Mat> {
    let f = &e.field;
    let lm = arith::checked_pow(ell, m).unwrap() as u64;
    let qfrob = arith::checked_pow(f.p, frob_power).unwrap() as u64;
    let frob = |pt: CurvePoint| -> CurvePoint {
        match pt {
            CurvePoint::Infinity => CurvePoint::Infinity,
            CurvePoint::Affine(x, y) => CurvePoint::Affine(f.pow(x, qfrob), f.pow(y, qfrob)),
        }
    };
    let dlog = |target: CurvePoint| -> Option<(u64, u64)> {
        for a in 0..lm {
            for c in 0..lm {
                let cand = e.add(e.mul(basis.0, a as u128), e.mul(basis.1, c as u128));
                if cand == target {
                    return Some((a, c));
                }
            }
        }
        None
    };
    let (a, c) = dlog(frob(basis.0)).ok_or(Error::TorsionNotFound { ell, m })?;
    let (b, d) = dlog(frob(basis.1)).ok_or(Error::TorsionNotFound { ell, m })?;
    let mut mat = Mat::zero(lm, 2, 2);
    mat.set(0, 0, a);
    mat.set(0, 1, b);
    mat.set(1, 0, c);
    mat.set(1, 1, d);
    Ok(mat)
}

/// Quotient curve by a finite subgroup, via the separable-isogeny
/// coefficient formulas. `kernel` must be the full subgroup including
/// the origin, of order prime to the characteristic.
pub fn velu_quotient(e: &EllipticCurve, kernel: &[CurvePoint]) -> Result<EllipticCurve> {
    let f = &e.field;
    if !kernel.iter().any(|p| p.is_infinity()) {
        return Err(Error::NotASubgroup);
    }
    if kernel.len() as u64 % f.p == 0 {
        return Err(Error::KernelDivisibleByP);
    }
    // Validate closure under the group law (kernels here are tiny).
    for &p in kernel {
        if !e.is_on(p) {
            return Err(Error::NotASubgroup);
        }
        for &q in kernel {
            if !kernel.contains(&e.add(p, q)) {
                return Err(Error::NotASubgroup);
            }
        }
    }
    // One representative per {Q, −Q} pair; 2-torsion points represent
    // themselves.
    let mut reps: Vec<(Fq, Fq, bool)> = Vec::new();
    let mut seen: Vec<CurvePoint> = Vec::new();
    for &q in kernel {
        let CurvePoint::Affine(x, y) = q else { continue };
        if seen.contains(&q) {
            continue;
        }
        seen.push(q);
        seen.push(e.neg(q));
        reps.push((x, y, y.is_zero()));
    }
    let mut v = f.zero();
    let mut w = f.zero();
    for (x, y, is_two_torsion) in reps {
        let gx = f.add(f.mul(f.from_int(3), f.mul(x, x)), e.a);
        let vq = if is_two_torsion { gx } else { f.mul(f.from_int(2), gx) };
        let uq = f.mul(f.from_int(4), f.mul(y, y));
        v = f.add(v, vq);
        w = f.add(w, f.add(uq, f.mul(x, vq)));
    }
    let a2 = f.sub(e.a, f.mul(f.from_int(5), v));
    let b2 = f.sub(e.b, f.mul(f.from_int(7), w));
    EllipticCurve::new(*f, a2, b2)
}

/// First curve over the prime field 𝔽_p with the requested trace, by
/// scanning (a, b) in lexicographic order.
pub fn curve_with_trace(p: u64, t: i64) -> Result<EllipticCurve> {
    let field = Field::new(p, 1)?;
    for a in 0..p {
        for b in 0..p {
            let Ok(e) = EllipticCurve::from_int_coeffs(field, a as i128, b as i128) else {
                continue;
            };
            if e.trace() == t {
                return Ok(e);
            }
        }
    }
    Err(Error::InvalidParameter("no curve with the requested trace"))
}
