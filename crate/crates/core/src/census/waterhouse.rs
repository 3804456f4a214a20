//! Kernel equivalence under the endomorphism action, and the censuses
//! built on it.
//!
//! Two Frobenius-stable kernels G₁, G₂ ⊆ A[ℓ^m] are declared equivalent
//! when some endomorphism ρ of ℓ-power degree and some scalar N = ℓ^k
//! satisfy ρ⁻¹(G₁) = [N]⁻¹(G₂) inside A[ℓ^{2m+1}]; the quotients A/G₁
//! and A/G₂ are then isomorphic as principally polarizable surfaces up
//! to the modelling caveats below. The action is realized on matrices
//! mod ℓ^{2m+1}: the ordinary block acts through the quadratic order
//! Z[π_q], the supersingular block through 2×2 matrices whose
//! determinant prescribes the degree, with units drawn from a finite
//! sampled list. The matrix model can over-approximate the globally
//! realizable action (not every local matrix of determinant ℓ^c lifts
//! to the definite quaternion order) and the unit sample can miss
//! automorphisms, so class counts come with an explicit search-space /
//! budget status and are treated downstream as bracketed evidence.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use crate::arith;
use crate::census::{pow_u64, PrimeColumn, RunLimits, SsModel};
use crate::endo_counts::enumerate_norm_elements;
use crate::error::Error;
use crate::ff_curves::{self, FrobeniusData};
use crate::frobenius;
use crate::modmat::{HowellContext, Mat, Submodule};
use crate::symplectic::{line_generators, IsotropyType, SymplecticModule};
use crate::Result;

/// Deterministic evaluation budget. Every raw candidate scanned and
/// every (candidate, kernel) test costs one unit; when the budget runs
/// out the enumeration stops at a reproducible point.
struct Gauge {
    left: u64,
    tripped: bool,
}

impl Gauge {
    fn new(budget: u64) -> Self {
        Gauge { left: budget, tripped: false }
    }

    fn spend(&mut self, n: u64) -> bool {
        if self.tripped || self.left < n {
            self.tripped = true;
            return false;
        }
        self.left -= n;
        true
    }
}

/// Matrix model of the endomorphism action on ℓ-power torsion of
/// E (dim 2) or E × E_ss (dim 4), at working level ℓ^{2m+1}.
#[derive(Debug, Clone)]
pub struct EndoActionRing {
    pub ell: u64,
    pub m: u32,
    /// Working exponent; equivalence tests run in (Z/ℓ^level)^dim.
    pub level: u32,
    /// ℓ^level.
    pub modulus: u64,
    /// 2 for an elliptic curve, 4 for a surface.
    pub dim: usize,
    /// Discriminant of Z[π_q], the order acting on the ordinary block.
    pub disc_ord: i128,
    /// Action of the working-field Frobenius at the working level.
    pub frob: Mat,
    /// Multiplication matrix of ω = (D + √D)/2, D = disc_ord, on the
    /// ordinary block at the working level.
    omega: Mat,
    /// Sampled unit action on the supersingular block (dim 4 only),
    /// already filtered for commutation with the Frobenius block.
    ss_units: Vec<Mat>,
    /// Supersingular Frobenius block, for rationality filters.
    ss_frob: Option<Mat>,
}

/// Search-space shape for the equivalence tests: which scalars N = ℓ^k
/// are tried and how large each factor of the candidate degree may be.
/// Candidate degrees are matched to the scalar: deg ρ = N^dim, split as
/// ℓ^{c1} on the ordinary factor and ℓ^{c2+2a} on the supersingular
/// factor (primitive part ℓ^{c2}, scalar part ℓ^a).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivalenceSearchSpace {
    /// Exponents k of the tested scalars N = ℓ^k; k = 0 is units-only.
    pub k_list: Vec<u32>,
    /// Cap on the ordinary-factor degree exponent c1.
    pub c1_max: u32,
    /// Cap on the supersingular primitive degree exponent c2.
    pub c2_max: u32,
    /// Cap on the supersingular scalar part exponent a.
    pub a_max: u32,
}

impl EquivalenceSearchSpace {
    /// Full space at level m: N ∈ {1, ℓ, …, ℓ^m}, ordinary degrees up
    /// to ℓ^{2m}, supersingular primitive degrees up to ℓ^m.
    pub fn standard(m: u32) -> Self {
        EquivalenceSearchSpace {
            k_list: (0..=m).collect(),
            c1_max: 2 * m,
            c2_max: m,
            a_max: m,
        }
    }

    /// Standard space with the scalar list truncated at ℓ^k_cap; used
    /// to keep the largest runs inside a fully-exhaustible space.
    pub fn with_scalar_cap(m: u32, k_cap: u32) -> Self {
        let mut s = Self::standard(m);
        s.k_list = (0..=k_cap.min(m)).collect();
        s
    }
}

/// A successful equivalence certificate: ρ⁻¹(G₁) = [ℓ^k]⁻¹(G₂), or the
/// same with the two kernels swapped.
#[derive(Debug, Clone)]
pub struct Witness {
    pub k: u32,
    pub rho: Mat,
    /// True when the equality was certified with G₂ on the left.
    pub swapped: bool,
}

fn reduce_mat(a: &Mat, modulus: u64) -> Mat {
    let entries: Vec<i128> = (0..a.rows)
        .flat_map(|i| (0..a.cols).map(move |j| (a.get(i, j) % modulus) as i128))
        .collect();
    Mat::from_i128(modulus, a.rows, a.cols, &entries)
}

fn blockdiag(modulus: u64, o: &Mat, s: &Mat) -> Mat {
    let mut out = Mat::zero(modulus, 4, 4);
    for i in 0..2 {
        for j in 0..2 {
            out.set(i, j, o.get(i, j) % modulus);
            out.set(2 + i, 2 + j, s.get(i, j) % modulus);
        }
    }
    out
}

/// Sampled unit matrices of the supersingular endomorphism ring: the
/// automorphism group of the trace-zero model curve (μ₆ for p ≡ 2 mod 3
/// via j = 0, μ₄ for p ≡ 3 mod 4 via j = 1728, ±1 otherwise).
fn ss_unit_sample(model: SsModel, p: u64, modulus: u64) -> Vec<Mat> {
    let SsModel::TraceZero = model;
    let mut set: BTreeSet<Mat> = BTreeSet::new();
    set.insert(Mat::identity(modulus, 2));
    set.insert(Mat::scalar(modulus, 2, modulus - 1));
    let gen = if p % 3 == 2 {
        // ζ₆, a root of x² − x + 1.
        Some(Mat::from_i128(modulus, 2, 2, &[0, -1, 1, 1]))
    } else if p % 4 == 3 {
        // i, a root of x² + 1.
        Some(Mat::from_i128(modulus, 2, 2, &[0, -1, 1, 0]))
    } else {
        None
    };
    if let Some(z) = gen {
        let mut acc = z.clone();
        for _ in 0..6 {
            set.insert(acc.clone());
            set.insert(acc.scalar_mul(modulus - 1));
            acc = acc.mul(&z);
        }
    }
    set.into_iter().collect()
}

impl EndoActionRing {
    fn working_modulus(ell: u64, m: u32) -> Result<(u32, u64)> {
        let level = 2 * m + 1;
        match arith::checked_pow(ell, level) {
            Some(v) if v <= (1 << 32) => Ok((level, v as u64)),
            _ => Err(Error::BoundExceeded {
                what: "equivalence working modulus",
                needed: 0,
                limit: 1 << 32,
            }),
        }
    }

    /// Ordinary Frobenius block in the (1, ω)-basis of Z[π_q]: writes
    /// πⁿ = c′ + f′ω with ω = (D + √D)/2, D = disc(Z[π_q]).
    fn ord_frob_block(fd: &FrobeniusData, disc_ord: i128, modulus: u64) -> Result<(Mat, Mat)> {
        let (dk, c_n, f_n) = frobenius::ordinary_decomposition(fd)?;
        let g = arith::exact_sqrt_i128(disc_ord / dk)
            .ok_or(Error::InvalidParameter("order discriminant must be dk times a square"))?;
        debug_assert_eq!(disc_ord, g * g * dk);
        debug_assert_eq!(f_n % g, 0);
        // ω_ord = g·ω_K + (g² − g)·dk/2, so ω_K = (ω_ord − h)/g.
        let h = (g * g - g) * dk / 2;
        let f2 = f_n / g;
        let c2 = c_n - f2 * h;
        let omega = frobenius::omega_matrix(disc_ord, modulus);
        let block = Mat::scalar(modulus, 2, c2.rem_euclid(modulus as i128) as u64)
            .add(&omega.scalar_mul(f2.rem_euclid(modulus as i128) as u64));
        Ok((omega, block))
    }

    /// Action model for a single ordinary elliptic curve over 𝔽_{qⁿ},
    /// with the endomorphism order taken as Z[π_q].
    pub fn elliptic(fd: &FrobeniusData, ell: u64, m: u32) -> Result<EndoActionRing> {
        if ell % fd.base.p == 0 {
            return Err(Error::InvalidParameter("torsion prime must differ from the characteristic"));
        }
        if !ff_curves::is_ordinary(fd.base_trace, fd.base.p) {
            return Err(Error::NonOrdinary);
        }
        let (level, modulus) = Self::working_modulus(ell, m)?;
        let q = fd.base.value() as i128;
        let disc_ord = fd.base_trace as i128 * fd.base_trace as i128 - 4 * q;
        let (omega, frob) = Self::ord_frob_block(fd, disc_ord, modulus)?;
        Ok(EndoActionRing {
            ell,
            m,
            level,
            modulus,
            dim: 2,
            disc_ord,
            frob,
            omega,
            ss_units: Vec::new(),
            ss_frob: None,
        })
    }

    /// Action model for E × E_ss over 𝔽_{qⁿ} with E ordinary of base
    /// trace t and E_ss the trace-zero supersingular model.
    pub fn surface(fd: &FrobeniusData, model: SsModel, ell: u64, m: u32) -> Result<EndoActionRing> {
        if fd.base.n != 1 {
            return Err(Error::InvalidParameter("surface model expects a prime base field"));
        }
        if ell % fd.base.p == 0 {
            return Err(Error::InvalidParameter("torsion prime must differ from the characteristic"));
        }
        if !ff_curves::is_ordinary(fd.base_trace, fd.base.p) {
            return Err(Error::NonOrdinary);
        }
        let (level, modulus) = Self::working_modulus(ell, m)?;
        let q = fd.base.value() as i128;
        let disc_ord = fd.base_trace as i128 * fd.base_trace as i128 - 4 * q;
        let (omega, ord_block) = Self::ord_frob_block(fd, disc_ord, modulus)?;
        // Supersingular block of πⁿ: π² = −q on the trace-zero model,
        // so even powers are scalars and odd powers are companion-form.
        let ss_block = if fd.n % 2 == 0 {
            let half = fd.n / 2;
            let val = arith::checked_pow(fd.base.p, half).ok_or(Error::BoundExceeded {
                what: "supersingular scalar",
                needed: 0,
                limit: u64::MAX as u128,
            })? as i128;
            let sc = if half % 2 == 1 { -val } else { val };
            Mat::from_i128(modulus, 2, 2, &[sc, 0, 0, sc])
        } else {
            Mat::from_i128(modulus, 2, 2, &[0, -(fd.q_n as i128), 1, 0])
        };
        let ss_units: Vec<Mat> = ss_unit_sample(model, fd.base.p, modulus)
            .into_iter()
            .filter(|u| u.mul(&ss_block) == ss_block.mul(u))
            .collect();
        let frob = blockdiag(modulus, &ord_block, &ss_block);
        Ok(EndoActionRing {
            ell,
            m,
            level,
            modulus,
            dim: 4,
            disc_ord,
            frob,
            omega,
            ss_units,
            ss_frob: Some(ss_block),
        })
    }

    /// Include a kernel given mod ℓ^m as the ℓ^{level−m}-scaled copy
    /// inside (Z/ℓ^level)^dim.
    pub fn embed(&self, h: &Submodule) -> Submodule {
        assert_eq!(h.ambient, self.dim);
        let scale = pow_u64(self.ell, self.level - self.m);
        let gens: Vec<Vec<u64>> = (0..h.basis.rows)
            .map(|i| {
                (0..h.ambient)
                    .map(|j| {
                        (h.basis.get(i, j) as u128 * scale as u128 % self.modulus as u128) as u64
                    })
                    .collect()
            })
            .collect();
        Submodule::from_gens(self.ell, self.modulus, self.dim, &gens)
    }

    /// Frobenius stability of a kernel given mod ℓ^m.
    pub fn is_stable(&self, h: &Submodule) -> bool {
        let mm = pow_u64(self.ell, self.m);
        let fm = reduce_mat(&self.frob, mm);
        h.image(&fm) == *h
    }

    /// |[ℓ^k]⁻¹(emb H)| for a kernel of order ℓ^{m·dim/2}.
    fn preimage_target(&self, k: u32) -> u128 {
        let e = self.m * (self.dim as u32 / 2) + k * self.dim as u32;
        arith::checked_pow(self.ell, e).expect("preimage size fits")
    }

    /// The defining test: ρ⁻¹(emb G₁) = [ℓ^k]⁻¹(emb G₂).
    fn test_pair(&self, e1: &Submodule, e2: &Submodule, rho: &Mat, k: u32) -> bool {
        let s = e1.preimage(rho);
        if s.cardinality() != self.preimage_target(k) {
            return false;
        }
        s == e2.preimage_scalar(pow_u64(self.ell, k))
    }

    /// Elements of the ordinary block of norm ℓ^{c1}, as matrices
    /// x·I + y·Ω at the working level.
    fn ord_elements(&self, c1: u32) -> Vec<Mat> {
        let target = match arith::checked_pow(self.ell, c1) {
            Some(v) if v <= u64::MAX as u128 => v as u64,
            _ => return Vec::new(),
        };
        enumerate_norm_elements(self.disc_ord, target)
            .into_iter()
            .map(|(x, y)| {
                Mat::scalar(self.modulus, 2, x.rem_euclid(self.modulus as i128) as u64)
                    .add(&self.omega.scalar_mul(y.rem_euclid(self.modulus as i128) as u64))
            })
            .collect()
    }

    /// Degree-one candidates: the sampled unit group, block-diagonal
    /// for surfaces.
    fn unit_layer(&self) -> Vec<Mat> {
        let ords = self.ord_elements(0);
        if self.dim == 2 {
            return ords;
        }
        let mut set = BTreeSet::new();
        for o in &ords {
            for u in &self.ss_units {
                set.insert(blockdiag(self.modulus, o, u));
            }
        }
        set.into_iter().collect()
    }

    /// All primitive 2×2 supersingular-block candidates of determinant
    /// exactly ℓ^{c2} (1 ≤ c2 ≤ c2_cap), enumerated mod ℓ^{m+k} (which
    /// determines the equivalence test for scalar ℓ^k) and lifted to
    /// the working level with the determinant made exact. Returns the
    /// buckets by c2 and whether the scan completed within budget.
    fn ss_isogeny_buckets(
        &self,
        k: u32,
        c2_cap: u32,
        gauge: &mut Gauge,
    ) -> (BTreeMap<u32, Vec<Mat>>, bool) {
        let mut buckets: BTreeMap<u32, Vec<Mat>> = BTreeMap::new();
        if c2_cap == 0 || self.dim != 4 {
            return (buckets, true);
        }
        let prec = self.m + k;
        debug_assert!(prec < self.level);
        let pm = pow_u64(self.ell, prec);
        let powers: Vec<u64> = (1..=c2_cap).map(|c| pow_u64(self.ell, c)).collect();
        let ss_frob_prec = self.ss_frob.as_ref().map(|f| reduce_mat(f, pm));
        for e0 in 0..pm {
            for e1 in 0..pm {
                for e2 in 0..pm {
                    for e3 in 0..pm {
                        if !gauge.spend(1) {
                            return (buckets, false);
                        }
                        if e0 % self.ell == 0
                            && e1 % self.ell == 0
                            && e2 % self.ell == 0
                            && e3 % self.ell == 0
                        {
                            continue; // imprimitive: covered by the scalar part ℓ^a
                        }
                        let det = (e0 as i128 * e3 as i128 - e1 as i128 * e2 as i128)
                            .rem_euclid(pm as i128) as u64;
                        let Some(c2) = powers.iter().position(|&p| p == det) else {
                            continue;
                        };
                        let c2 = c2 as u32 + 1;
                        if let Some(f) = &ss_frob_prec {
                            let c = Mat::from_i128(
                                pm,
                                2,
                                2,
                                &[e0 as i128, e1 as i128, e2 as i128, e3 as i128],
                            );
                            if c.mul(f) != f.mul(&c) {
                                continue;
                            }
                        }
                        if let Some(lift) = self.lift_det_exact([e0, e1, e2, e3], c2) {
                            buckets.entry(c2).or_default().push(lift);
                        }
                    }
                }
            }
        }
        (buckets, true)
    }

    /// Lift a primitive matrix given mod ℓ^{m+k} to the working level
    /// so its determinant is exactly ℓ^{target} there. The determinant
    /// is linear in each single entry, so adjusting the cofactor
    /// partner of a unit entry by a multiple of ℓ^{m+k} suffices.
    fn lift_det_exact(&self, e: [u64; 4], target: u32) -> Option<Mat> {
        let m = self.modulus as i128;
        let mut v = [e[0] as i128, e[1] as i128, e[2] as i128, e[3] as i128];
        let want = pow_u64(self.ell, target) as i128 % m;
        let ell = self.ell as i128;
        // det = v0·v3 − v1·v2; pairs (entry, ∂det/∂entry): (3, v0),
        // (2, −v1), (1, −v2), (0, v3).
        let (idx, cof) = if v[0] % ell != 0 {
            (3, v[0])
        } else if v[1] % ell != 0 {
            (2, -v[1])
        } else if v[2] % ell != 0 {
            (1, -v[2])
        } else if v[3] % ell != 0 {
            (0, v[3])
        } else {
            return None;
        };
        let det = (v[0] * v[3] - v[1] * v[2]).rem_euclid(m);
        let need = (want - det).rem_euclid(m);
        let t = need * arith::inv_mod(cof.rem_euclid(m), m)? % m;
        v[idx] = (v[idx] + t).rem_euclid(m);
        let out = Mat::from_i128(self.modulus, 2, 2, &v);
        debug_assert_eq!(out.det(), want as u64);
        Some(out)
    }

    /// Candidate layer for scalar ℓ^k: degree-matched block-diagonal
    /// endomorphism matrices deg ρ = ℓ^{k·dim}, deterministic order.
    /// Returns the layer and whether it was generated completely.
    fn layer(&self, space: &EquivalenceSearchSpace, k: u32, gauge: &mut Gauge) -> (Vec<Mat>, bool) {
        if k == 0 {
            return (self.unit_layer(), true);
        }
        if self.dim == 2 {
            let c1 = 2 * k;
            if c1 > space.c1_max {
                return (Vec::new(), true);
            }
            return (self.ord_elements(c1), true);
        }
        let c2_cap = space.c2_max.min(self.m);
        let (buckets, complete) = self.ss_isogeny_buckets(k, c2_cap, gauge);
        let mut set = BTreeSet::new();
        let empty = Vec::new();
        for c2 in 0..=c2_cap {
            for a in 0..=space.a_max {
                let rest = 4 * k as i64 - c2 as i64 - 2 * a as i64;
                if rest < 0 || rest as u32 > space.c1_max {
                    continue;
                }
                let ss_list: &Vec<Mat> = if c2 == 0 {
                    &self.ss_units
                } else {
                    buckets.get(&c2).unwrap_or(&empty)
                };
                if ss_list.is_empty() {
                    continue;
                }
                let scale = pow_u64(self.ell, a);
                for o in self.ord_elements(rest as u32) {
                    for s in ss_list {
                        set.insert(blockdiag(self.modulus, &o, &s.scalar_mul(scale)));
                    }
                }
            }
        }
        (set.into_iter().collect(), complete)
    }

    /// Canonicalize a candidate by the two-sided sampled-unit action.
    /// Valid for class censuses only: the unit layer already merges
    /// each kernel with its unit translates, so u·ρ·v reaches the same
    /// transitive closure as ρ.
    fn canonical_under_units(&self, rho: &Mat, units: &[Mat]) -> Mat {
        let mut best = rho.clone();
        for u in units {
            let ur = u.mul(rho);
            for v in units {
                let urv = ur.mul(v);
                if urv < best {
                    best = urv;
                }
            }
        }
        best
    }
}

/// Decide equivalence of two stable kernels (given mod ℓ^m) by direct
/// search over the configured space, trying both orders. `Ok(None)`
/// means the space was fully searched without a witness; running out
/// of budget is reported as an error, distinct from a certified "no".
pub fn waterhouse_equivalent(
    ring: &EndoActionRing,
    space: &EquivalenceSearchSpace,
    limits: &RunLimits,
    g1: &Submodule,
    g2: &Submodule,
) -> Result<Option<Witness>> {
    let e1 = ring.embed(g1);
    let e2 = ring.embed(g2);
    let mut gauge = Gauge::new(limits.budget);
    let mut complete = true;
    for &k in &space.k_list {
        let (layer, layer_complete) = ring.layer(space, k, &mut gauge);
        complete &= layer_complete;
        for rho in &layer {
            if !gauge.spend(2) {
                complete = false;
                break;
            }
            if ring.test_pair(&e1, &e2, rho, k) {
                return Ok(Some(Witness { k, rho: rho.clone(), swapped: false }));
            }
            if ring.test_pair(&e2, &e1, rho, k) {
                return Ok(Some(Witness { k, rho: rho.clone(), swapped: true }));
            }
        }
        if gauge.tripped {
            break;
        }
    }
    if complete {
        Ok(None)
    } else {
        Err(Error::BudgetExhausted { budget: limits.budget })
    }
}

struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}

/// Partition a list of stable kernels into equivalence classes. For
/// each candidate ρ and source kernel the set S = ρ⁻¹(emb G) is formed
/// once; if |S| matches the degree-matched size and ℓ^k·S is the
/// embedding of some listed kernel, the two kernels merge. Candidates
/// are deduplicated up to the two-sided sampled-unit action, which
/// preserves the transitive closure. Returns per-kernel class labels
/// (smallest member index) and whether the space was exhausted.
fn census_classes(
    ring: &EndoActionRing,
    space: &EquivalenceSearchSpace,
    limits: &RunLimits,
    kernels: &[Submodule],
) -> (Vec<usize>, bool) {
    let embs: Vec<Submodule> = kernels.iter().map(|h| ring.embed(h)).collect();
    // Check matrices: emb G_i = ker(checks[i]), cached so each test is
    // a single multiply-and-kernel.
    let checks: Vec<Mat> = embs.iter().map(|e| e.dual().basis).collect();
    let ctx = HowellContext::for_modulus(ring.ell, ring.modulus);
    let index: BTreeMap<Submodule, usize> =
        embs.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
    let mut dsu = Dsu::new(kernels.len());
    let mut gauge = Gauge::new(limits.budget);
    let mut complete = true;
    let units = ring.unit_layer();
    'layers: for &k in &space.k_list {
        let (layer, layer_complete) = ring.layer(space, k, &mut gauge);
        complete &= layer_complete;
        let layer: Vec<Mat> = if k == 0 {
            layer
        } else {
            let mut set = BTreeSet::new();
            for rho in &layer {
                set.insert(ring.canonical_under_units(rho, &units));
            }
            set.into_iter().collect()
        };
        let scale = Mat::scalar(ring.modulus, ring.dim, pow_u64(ring.ell, k));
        let target = ring.preimage_target(k);
        for rho in &layer {
            for (i, check) in checks.iter().enumerate() {
                if !gauge.spend(1) {
                    complete = false;
                    break 'layers;
                }
                let s = Submodule {
                    ell: ring.ell,
                    ambient: ring.dim,
                    basis: ctx.right_kernel(&check.mul(rho)),
                };
                if s.cardinality() != target {
                    continue;
                }
                let w = s.image(&scale);
                if let Some(&j) = index.get(&w) {
                    dsu.union(i, j);
                }
            }
        }
    }
    let labels: Vec<usize> = (0..kernels.len()).map(|i| dsu.find(i)).collect();
    (labels, complete)
}

/// Census of quotients of E × E_ss by stable Lagrangian subgroups of
/// the ℓ^m-torsion, up to the modelled equivalence, over 𝔽_{qⁿ}.
pub fn surface_census(
    t: i64,
    base: ff_curves::PrimePower,
    n: u32,
    model: SsModel,
    ell: u64,
    m: u32,
    space: &EquivalenceSearchSpace,
    limits: &RunLimits,
) -> Result<PrimeColumn> {
    let fd = ff_curves::frobenius_data(t, base, n)?;
    let ring = EndoActionRing::surface(&fd, model, ell, m)?;
    let sym = SymplecticModule::new(ell, m)?;
    let all = sym.enumerate_lagrangians()?;
    let raw = all.len() as u64;
    let stable: Vec<Submodule> = all.into_iter().filter(|h| ring.is_stable(h)).collect();
    let is_product: Vec<bool> = stable
        .iter()
        .map(|h| matches!(sym.classify_type(h), IsotropyType::Product { .. }))
        .collect();
    let type1 = is_product.iter().filter(|&&b| b).count() as u64;
    let type2 = stable.len() as u64 - type1;
    let (labels, exhausted) = census_classes(&ring, space, limits, &stable);
    let mut roots: BTreeMap<usize, bool> = BTreeMap::new();
    for (i, &r) in labels.iter().enumerate() {
        let has_product = roots.entry(r).or_insert(false);
        *has_product |= is_product[i];
    }
    let n0 = roots.len() as u64;
    let n1 = roots.values().filter(|&&p| p).count() as u64;
    Ok(PrimeColumn {
        ell,
        m,
        raw,
        stable: stable.len() as u64,
        type1,
        type2,
        n0,
        n1,
        n2: n0 - n1,
        exhausted,
    })
}

/// Classes of stable cyclic order-ℓ^m subgroups of an ordinary elliptic
/// curve over 𝔽_{qⁿ} under the modelled equivalence. Returns the stable
/// subgroups, their class labels, and the exhaustion status.
pub fn elliptic_kernel_classes(
    fd: &FrobeniusData,
    ell: u64,
    m: u32,
    space: &EquivalenceSearchSpace,
    limits: &RunLimits,
) -> Result<(Vec<Submodule>, Vec<usize>, bool)> {
    let ring = EndoActionRing::elliptic(fd, ell, m)?;
    let mm = pow_u64(ell, m);
    let stable: Vec<Submodule> = line_generators(ell, mm, 2)
        .into_iter()
        .map(|g| Submodule::from_gens(ell, mm, 2, &[g]))
        .filter(|h| ring.is_stable(h))
        .collect();
    let (labels, exhausted) = census_classes(&ring, space, limits, &stable);
    Ok((stable, labels, exhausted))
}
