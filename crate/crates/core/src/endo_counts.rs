//! Counting in imaginary quadratic orders and rank-4 quaternion lattices.
//!
//! The quadratic side works with a negative discriminant D ≡ 0, 1 (mod 4):
//! prime splitting through the Kronecker symbol, multiplicative ideal-norm
//! counts, reduced-form class numbers, and the weighted class-number sum
//! over square conductors. The quaternion side works with an explicit
//! integral basis of an order in a definite rational quaternion algebra;
//! the Gram matrix is validated against the reduced norm on construction,
//! and representation numbers are computed by exact rational Cholesky
//! decomposition with outward-walking enumeration (no floating point).
//! A rational-bisection lower bound on the smallest Gram eigenvalue caps
//! the search box before enumeration starts.

use crate::arith;
use crate::error::Error;
use crate::Result;
use alloc::vec::Vec;
use num_rational::Ratio;
use num_traits::{One, Zero};

type Q = Ratio<i128>;

/// Behaviour of a rational prime in a quadratic order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SplittingType {
    Split,
    Inert,
    Ramified,
}

/// An imaginary quadratic order, identified by its discriminant.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuadraticOrder {
    pub disc: i128,
}

impl QuadraticOrder {
    pub fn new(disc: i128) -> Result<Self> {
        if disc >= 0 {
            return Err(Error::InvalidParameter("discriminant must be negative"));
        }
        let r = disc.rem_euclid(4);
        if r != 0 && r != 1 {
            return Err(Error::InvalidParameter("discriminant must be 0 or 1 mod 4"));
        }
        Ok(QuadraticOrder { disc })
    }

    pub fn conductor(&self) -> u64 {
        arith::fundamental_discriminant(self.disc).1
    }
}

pub fn splitting_type(disc: i128, ell: u64) -> SplittingType {
    match arith::kronecker(disc, ell as i128) {
        1 => SplittingType::Split,
        -1 => SplittingType::Inert,
        _ => SplittingType::Ramified,
    }
}

/// Splitting behaviour of every prime dividing d in the order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorizationProfile {
    pub d: u64,
    pub factors: Vec<(u64, u32, SplittingType)>,
}

pub fn factorization_profile(order: &QuadraticOrder, d: u64) -> Result<FactorizationProfile> {
    if d == 0 {
        return Err(Error::InvalidParameter("norm must be positive"));
    }
    let cond = order.conductor();
    let mut factors = Vec::new();
    for (p, e) in arith::factor(d as u128) {
        if cond % p == 0 {
            // The multiplicative count is only valid away from the
            // conductor.
            return Err(Error::RamifiedPrime { ell: p });
        }
        factors.push((p, e, splitting_type(order.disc, p)));
    }
    Ok(FactorizationProfile { d, factors })
}

/// Number of integral ideals of norm d, for d prime to the conductor:
/// multiplicative with ℓ^e ↦ e+1 (split), [e even] (inert), 1 (ramified).
pub fn count_norm_d(order: &QuadraticOrder, d: u64) -> Result<u64> {
    let profile = factorization_profile(order, d)?;
    let mut acc = 1u64;
    for (_, e, st) in profile.factors {
        acc *= match st {
            SplittingType::Split => (e + 1) as u64,
            SplittingType::Inert => {
                if e % 2 == 0 {
                    1
                } else {
                    0
                }
            }
            SplittingType::Ramified => 1,
        };
        if acc == 0 {
            return Ok(0);
        }
    }
    Ok(acc)
}

/// Number of ideals of norm d with cyclic quotient: multiplicative with
/// ℓ^e ↦ 2 (split, e ≥ 1), 0 (inert, e ≥ 1), [e = 1] (ramified).
pub fn count_cyclic_norm_d(order: &QuadraticOrder, d: u64) -> Result<u64> {
    let profile = factorization_profile(order, d)?;
    let mut acc = 1u64;
    for (_, e, st) in profile.factors {
        acc *= match st {
            SplittingType::Split => 2,
            SplittingType::Inert => 0,
            SplittingType::Ramified => {
                if e == 1 {
                    1
                } else {
                    0
                }
            }
        };
        if acc == 0 {
            return Ok(0);
        }
    }
    Ok(acc)
}

/// Unit count of the order of discriminant D.
pub fn unit_count(disc: i128) -> u64 {
    match disc {
        -3 => 6,
        -4 => 4,
        _ => 2,
    }
}

/// All (x, y) with x² + xyD + y²(D² − D)/4 = target, i.e. elements
/// x + y·(D + √D)/2 of the given norm.
pub fn enumerate_norm_elements(disc: i128, target: u64) -> Vec<(i128, i128)> {
    // 4·norm = (2x + yD)² + |D|y².
    let mut out = Vec::new();
    let t4 = 4 * target as i128;
    let abs_d = -disc;
    let ymax = arith::isqrt_u128((t4 / abs_d) as u128) as i128;
    for y in -ymax..=ymax {
        let rem = t4 - abs_d * y * y;
        if rem < 0 {
            continue;
        }
        if let Some(u) = arith::exact_sqrt_i128(rem) {
            let mut push = |su: i128| {
                let num = su - y * disc;
                if num % 2 == 0 {
                    out.push((num / 2, y));
                }
            };
            push(u);
            if u != 0 {
                push(-u);
            }
        }
    }
    out
}

/// Class number of the (not necessarily maximal) order of discriminant
/// D < 0, by counting reduced primitive binary quadratic forms.
pub fn class_number(disc: i128) -> Result<u64> {
    let order = QuadraticOrder::new(disc)?;
    let d = order.disc;
    let mut count = 0u64;
    let mut b = d.rem_euclid(2);
    // |b| ≤ sqrt(|D|/3).
    let bmax = arith::isqrt_u128((-d / 3) as u128) as i128;
    while b <= bmax {
        let signs: [i128; 2] = [b, -b];
        let n_signs = if b == 0 { 1 } else { 2 };
        for &sb in signs.iter().take(n_signs) {
            let num = sb * sb - d;
            debug_assert_eq!(num.rem_euclid(4), 0);
            let ac = num / 4;
            // a ranges over divisors of ac with |b| ≤ a ≤ c.
            let mut a = core::cmp::max(1, sb.abs());
            while a * a <= ac {
                if ac % a == 0 {
                    let c = ac / a;
                    let reduced = if sb.abs() == a || a == c { sb >= 0 } else { true };
                    if reduced && sb.abs() <= a && gcd3(a, sb.abs(), c) == 1 {
                        count += 1;
                    }
                }
                a += 1;
            }
        }
        b += 2;
    }
    Ok(count)
}

fn gcd3(a: i128, b: i128, c: i128) -> i128 {
    fn g(a: i128, b: i128) -> i128 {
        if b == 0 {
            a.abs()
        } else {
            g(b, a % b)
        }
    }
    g(g(a, b), c)
}

/// The weighted class-number sum H(n) over square conductors f² | n with
/// −n/f² ≡ 0, 1 (mod 4); the two smallest discriminants enter with
/// weights 1/3 and 1/2.
pub fn hurwitz_class_number(n: u64) -> Result<Ratio<i64>> {
    if n == 0 {
        return Err(Error::InvalidParameter("weighted class sum needs a positive argument"));
    }
    let mut acc = Ratio::new(0i64, 1);
    let mut f = 1u64;
    while f * f <= n {
        if n % (f * f) == 0 {
            let d = -((n / (f * f)) as i128);
            let r = d.rem_euclid(4);
            if r == 0 || r == 1 {
                let h = class_number(d)? as i64;
                let w = match d {
                    -3 => Ratio::new(1i64, 3),
                    -4 => Ratio::new(1i64, 2),
                    _ => Ratio::new(1i64, 1),
                };
                acc += w * Ratio::new(h, 1);
            }
        }
        f += 1;
    }
    Ok(acc)
}

/// Number of cyclic subgroups of order ℓ^m in (Z/ℓ^m)²: ℓ^{m−1}(ℓ+1).
pub fn cyclic_subgroup_count(ell: u64, m: u32) -> u128 {
    arith::checked_pow(ell, m - 1).unwrap() * (ell as u128 + 1)
}

// --- exact rational quaternions -------------------------------------------

/// Quaternion over ℚ in the algebra (a, b): i² = a, j² = b, ij = k = −ji.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Quat {
    pub w: Q,
    pub x: Q,
    pub y: Q,
    pub z: Q,
}

impl Quat {
    fn new(w: Q, x: Q, y: Q, z: Q) -> Self {
        Quat { w, x, y, z }
    }

    pub fn mul(&self, o: &Quat, a: i128, b: i128) -> Quat {
        let (aq, bq) = (Q::from_integer(a), Q::from_integer(b));
        // (w1 + x1 i + y1 j + z1 k)(w2 + x2 i + y2 j + z2 k) with
        // i² = a, j² = b, k² = −ab, ij = k, ji = −k, jk = −b i, kj = b i,
        // ki = −a j, ik = a j.
        let w = self.w * o.w + aq * self.x * o.x + bq * self.y * o.y - aq * bq * self.z * o.z;
        let x = self.w * o.x + self.x * o.w - bq * self.y * o.z + bq * self.z * o.y;
        let y = self.w * o.y + self.y * o.w + aq * self.x * o.z - aq * self.z * o.x;
        let z = self.w * o.z + self.z * o.w + self.x * o.y - self.y * o.x;
        Quat::new(w, x, y, z)
    }

    pub fn norm(&self, a: i128, b: i128) -> Q {
        let (aq, bq) = (Q::from_integer(a), Q::from_integer(b));
        self.w * self.w - aq * self.x * self.x - bq * self.y * self.y
            + aq * bq * self.z * self.z
    }
}

/// A rank-4 lattice with basis inside a definite quaternion algebra.
///
/// `basis_num[i]` are the coordinates of the i-th basis vector on
/// (1, i, j, k), over the common denominator 2. The Gram matrix stores
/// B(u, v) = N(u+v) − N(u) − N(v), so diagonal entries are 2·N(basis).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuaternaryForm {
    pub gram: [[i64; 4]; 4],
    pub algebra: (i64, i64),
    pub basis_num: [[i64; 4]; 4],
    pub disc: u64,
}

impl QuaternaryForm {
    fn build(algebra: (i64, i64), basis_num: [[i64; 4]; 4], disc: u64) -> Self {
        let (a, b) = (algebra.0 as i128, algebra.1 as i128);
        let half = Q::new(1, 2);
        let bq: Vec<Quat> = basis_num
            .iter()
            .map(|r| {
                Quat::new(
                    Q::from_integer(r[0] as i128) * half,
                    Q::from_integer(r[1] as i128) * half,
                    Q::from_integer(r[2] as i128) * half,
                    Q::from_integer(r[3] as i128) * half,
                )
            })
            .collect();
        let mut gram = [[0i64; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                let s = Quat::new(
                    bq[i].w + bq[j].w,
                    bq[i].x + bq[j].x,
                    bq[i].y + bq[j].y,
                    bq[i].z + bq[j].z,
                );
                let v = s.norm(a, b) - bq[i].norm(a, b) - bq[j].norm(a, b);
                assert!(v.is_integer(), "lattice basis must have integral pairings");
                gram[i][j] = *v.numer() as i64;
            }
        }
        let det = det4_i128(&gram);
        assert_eq!(det, (disc as i128) * (disc as i128), "Gram determinant must equal disc²");
        QuaternaryForm { gram, algebra, basis_num, disc }
    }

    /// Z⁴ with the sum-of-four-squares norm (basis 1, i, j, k of (−1,−1)).
    pub fn four_squares() -> Self {
        Self::build(
            (-1, -1),
            [[2, 0, 0, 0], [0, 2, 0, 0], [0, 0, 2, 0], [0, 0, 0, 2]],
            4,
        )
    }

    /// The order spanned by 1, i, j, (1+i+j+k)/2 in (−1,−1): the maximal
    /// order ramified exactly at 2.
    pub fn hurwitz_p2() -> Self {
        Self::build(
            (-1, -1),
            [[2, 0, 0, 0], [0, 2, 0, 0], [0, 0, 2, 0], [1, 1, 1, 1]],
            2,
        )
    }

    /// A maximal order in (−1,−3), ramified exactly at 3: spanned by
    /// 1, i, (i+j)/2, (1+k)/2.
    pub fn maximal_p3() -> Self {
        Self::build(
            (-1, -3),
            [[2, 0, 0, 0], [0, 2, 0, 0], [0, 1, 1, 0], [1, 0, 0, 1]],
            3,
        )
    }

    /// N(Σ xᵢ bᵢ) as an exact rational in the coordinates x.
    pub fn norm_of(&self, x: &[i64; 4]) -> i128 {
        // 2N(v) = xᵀ G x.
        let mut acc = 0i128;
        for i in 0..4 {
            for j in 0..4 {
                acc += self.gram[i][j] as i128 * x[i] as i128 * x[j] as i128;
            }
        }
        debug_assert_eq!(acc % 2, 0);
        acc / 2
    }

    /// Basis vectors as exact quaternions.
    pub fn basis_quats(&self) -> [Quat; 4] {
        let half = Q::new(1, 2);
        core::array::from_fn(|i| {
            let r = self.basis_num[i];
            Quat::new(
                Q::from_integer(r[0] as i128) * half,
                Q::from_integer(r[1] as i128) * half,
                Q::from_integer(r[2] as i128) * half,
                Q::from_integer(r[3] as i128) * half,
            )
        })
    }

    /// Structure constants: basis[i] · basis[j] = Σ_k table[i][j][k] basis[k].
    /// Panics if the lattice is not closed under multiplication.
    pub fn multiplication_table(&self) -> [[[i64; 4]; 4]; 4] {
        let (a, b) = (self.algebra.0 as i128, self.algebra.1 as i128);
        let bq = self.basis_quats();
        // Invert the basis matrix (rows = coordinates on 1,i,j,k).
        let bmat: [[Q; 4]; 4] = core::array::from_fn(|i| {
            let q = bq[i];
            [q.w, q.x, q.y, q.z]
        });
        let inv = invert4(&bmat);
        let mut table = [[[0i64; 4]; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                let p = bq[i].mul(&bq[j], a, b);
                let pv = [p.w, p.x, p.y, p.z];
                for k in 0..4 {
                    // coordinates = pv · B⁻¹.
                    let mut acc = Q::zero();
                    for t in 0..4 {
                        acc += pv[t] * inv[t][k];
                    }
                    assert!(acc.is_integer(), "order must be closed under multiplication");
                    table[i][j][k] = *acc.numer() as i64;
                }
            }
        }
        table
    }

    /// Rational lower bound on the smallest eigenvalue of the Gram
    /// matrix, by bisection on positive definiteness of G − λI.
    pub fn min_eigenvalue_lower_bound(&self) -> Q {
        let mut lo = Q::zero();
        let mut hi = Q::from_integer(
            (0..4).map(|i| self.gram[i][i]).min().unwrap() as i128,
        );
        for _ in 0..16 {
            let mid = (lo + hi) / Q::from_integer(2);
            if is_pos_def_shift(&self.gram, mid) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        lo
    }

    fn enumerate_inner<F: FnMut(&[i64; 4])>(&self, n: u64, visit: &mut F) -> Result<()> {
        if n == 0 {
            visit(&[0, 0, 0, 0]);
            return Ok(());
        }
        // Outer box cap derived from the bisection eigenvalue bound:
        // xᵀGx = 2n and G ⪰ λ ⟹ |x|² ≤ 2n/λ.
        let lambda = self.min_eigenvalue_lower_bound();
        assert!(lambda > Q::zero(), "positive definite Gram expected");
        let cap = Q::from_integer(2 * n as i128) / lambda;
        let cap_int = (*cap.numer() / *cap.denom()) + 1;
        if cap_int > 1 << 40 {
            return Err(Error::BoundExceeded {
                what: "representation search box",
                needed: cap_int as u128,
                limit: 1 << 40,
            });
        }
        // Exact rational Cholesky: Q(x) = Σ dᵢ (xᵢ + Σ_{j>i} uᵢⱼ xⱼ)².
        let mut q: [[Q; 4]; 4] =
            core::array::from_fn(|i| core::array::from_fn(|j| Q::from_integer(self.gram[i][j] as i128)));
        for i in 0..4 {
            for j in i + 1..4 {
                q[i][j] = q[i][j] / q[i][i];
            }
            for k in i + 1..4 {
                for l in k..4 {
                    let delta = q[i][i] * q[i][k] * q[i][l];
                    q[k][l] = q[k][l] - delta;
                }
            }
        }
        let d: [Q; 4] = core::array::from_fn(|i| q[i][i]);
        let budget = Q::from_integer(2 * n as i128);
        let mut x = [0i64; 4];
        walk_level(3, budget, &q, &d, &mut x, visit);
        Ok(())
    }

    /// Number of lattice vectors of norm exactly n.
    pub fn count_representations(&self, n: u64) -> Result<u64> {
        let mut count = 0u64;
        self.enumerate_inner(n, &mut |_| count += 1)?;
        Ok(count)
    }

    /// All lattice vectors of norm exactly n.
    pub fn representations(&self, n: u64) -> Result<Vec<[i64; 4]>> {
        let mut out = Vec::new();
        self.enumerate_inner(n, &mut |x| out.push(*x))?;
        Ok(out)
    }
}

/// Recursive outward walk: at `level`, choose x_level so that
/// d·(x + c)² ≤ budget with c = Σ_{j>level} u[level][j]·x_j, exact.
fn walk_level<F: FnMut(&[i64; 4])>(
    level: usize,
    budget: Q,
    u: &[[Q; 4]; 4],
    d: &[Q; 4],
    x: &mut [i64; 4],
    visit: &mut F,
) {
    let mut c = Q::zero();
    for j in level + 1..4 {
        c += u[level][j] * Q::from_integer(x[j] as i128);
    }
    // Integer nearest −c.
    let center: i64 = {
        let num = -*c.numer() * 2 + *c.denom();
        let den = *c.denom() * 2;
        num.div_euclid(den) as i64
    };
    let try_x = |xi: i64, x: &mut [i64; 4], visit: &mut F| -> bool {
        let t = Q::from_integer(xi as i128) + c;
        let used = d[level] * t * t;
        if used > budget {
            return false;
        }
        x[level] = xi;
        let rem = budget - used;
        if level == 0 {
            if rem.is_zero() {
                visit(x);
            }
        } else {
            walk_level(level - 1, rem, u, d, x, visit);
        }
        true
    };
    let mut xi = center;
    while try_x(xi, x, visit) {
        xi += 1;
    }
    xi = center - 1;
    while try_x(xi, x, visit) {
        xi -= 1;
    }
    x[level] = 0;
}

fn is_pos_def_shift(g: &[[i64; 4]; 4], lambda: Q) -> bool {
    // Sylvester: all leading principal minors of G − λI positive.
    let a: [[Q; 4]; 4] = core::array::from_fn(|i| {
        core::array::from_fn(|j| {
            let base = Q::from_integer(g[i][j] as i128);
            if i == j {
                base - lambda
            } else {
                base
            }
        })
    });
    for k in 1..=4 {
        if minor_det(&a, k) <= Q::zero() {
            return false;
        }
    }
    true
}

fn minor_det(a: &[[Q; 4]; 4], k: usize) -> Q {
    // Laplace expansion on the leading k×k block.
    fn det_sub(a: &[[Q; 4]; 4], rows: &[usize], cols: &[usize]) -> Q {
        if rows.is_empty() {
            return Q::one();
        }
        let mut acc = Q::zero();
        let mut sign = Q::one();
        for (pos, &col) in cols.iter().enumerate() {
            let mut rem: Vec<usize> = cols.to_vec();
            rem.remove(pos);
            acc += sign * a[rows[0]][col] * det_sub(a, &rows[1..], &rem);
            sign = -sign;
        }
        acc
    }
    let idx: Vec<usize> = (0..k).collect();
    det_sub(a, &idx, &idx)
}

fn det4_i128(g: &[[i64; 4]; 4]) -> i128 {
    fn det_sub(a: &[[i64; 4]; 4], rows: &[usize], cols: &[usize]) -> i128 {
        if rows.is_empty() {
            return 1;
        }
        let mut acc = 0i128;
        let mut sign = 1i128;
        for (pos, &col) in cols.iter().enumerate() {
            let mut rem: Vec<usize> = cols.to_vec();
            rem.remove(pos);
            acc += sign * a[rows[0]][col] as i128 * det_sub(a, &rows[1..], &rem);
            sign = -sign;
        }
        acc
    }
    det_sub(g, &[0, 1, 2, 3], &[0, 1, 2, 3])
}

/// Inverse of a rational 4×4 matrix via Gauss–Jordan.
fn invert4(a: &[[Q; 4]; 4]) -> [[Q; 4]; 4] {
    let mut m: [[Q; 8]; 4] = core::array::from_fn(|i| {
        core::array::from_fn(|j| {
            if j < 4 {
                a[i][j]
            } else if j - 4 == i {
                Q::one()
            } else {
                Q::zero()
            }
        })
    });
    for col in 0..4 {
        let piv = (col..4).find(|&r| !m[r][col].is_zero()).expect("singular basis matrix");
        m.swap(col, piv);
        let inv = Q::one() / m[col][col];
        for j in 0..8 {
            m[col][j] *= inv;
        }
        for r in 0..4 {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col];
                for j in 0..8 {
                    let t = f * m[col][j];
                    m[r][j] -= t;
                }
            }
        }
    }
    core::array::from_fn(|i| core::array::from_fn(|j| m[i][j + 4]))
}
