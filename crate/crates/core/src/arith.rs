//! Exact integer helpers: primality and factoring by trial division,
//! valuations, Kronecker symbols, fundamental discriminants, divisor
//! functions, and modular arithmetic.
//!
//! Everything here targets desk-scale inputs (|n| well below 2⁶⁴), where
//! trial division is instantaneous and exactness is the only requirement.

use alloc::vec::Vec;
use num_integer::Roots;

/// Floor of √n for n ≥ 0.
pub fn isqrt_u128(n: u128) -> u128 {
    n.sqrt()
}

/// True iff n is a perfect square (n ≥ 0).
pub fn is_square_i128(n: i128) -> bool {
    if n < 0 {
        return false;
    }
    let r = (n as u128).sqrt();
    r * r == n as u128
}

/// Exact integer square root of a perfect square; None otherwise.
pub fn exact_sqrt_i128(n: i128) -> Option<i128> {
    if n < 0 {
        return None;
    }
    let r = (n as u128).sqrt() as i128;
    if r * r == n {
        Some(r)
    } else {
        None
    }
}

/// Deterministic primality by trial division; intended for n < 2⁶⁴ at
/// desk scale (all callers use n ≤ ~10⁹).
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    if n % 3 == 0 {
        return n == 3;
    }
    let mut d = 5u64;
    while d * d <= n {
        if n % d == 0 || n % (d + 2) == 0 {
            return false;
        }
        d += 6;
    }
    true
}

/// Prime factorization by trial division, returned as (prime, exponent)
/// pairs in increasing prime order.
pub fn factor(mut n: u128) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    if n < 2 {
        return out;
    }
    let mut push = |p: u64, n: &mut u128| {
        let mut e = 0u32;
        while *n % p as u128 == 0 {
            *n /= p as u128;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
    };
    push(2, &mut n);
    push(3, &mut n);
    let mut d = 5u64;
    while (d as u128) * (d as u128) <= n {
        push(d, &mut n);
        push(d + 2, &mut n);
        d += 6;
    }
    if n > 1 {
        out.push((n as u64, 1));
    }
    out
}

/// v_p(n): the exponent of the prime p in n ≠ 0.
pub fn valuation(mut n: u128, p: u64) -> u32 {
    assert!(n != 0, "valuation of zero is undefined");
    let mut v = 0;
    while n % p as u128 == 0 {
        n /= p as u128;
        v += 1;
    }
    v
}

/// All positive divisors of n, sorted increasingly.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut out = alloc::vec![1u64];
    for (p, e) in factor(n as u128) {
        let base = out.clone();
        let mut pk = 1u64;
        for _ in 0..e {
            pk *= p;
            for d in &base {
                out.push(d * pk);
            }
        }
    }
    out.sort_unstable();
    out
}

/// τ(n): number of positive divisors.
pub fn tau(n: u64) -> u64 {
    factor(n as u128).iter().map(|&(_, e)| (e + 1) as u64).product()
}

/// σ(n): sum of positive divisors.
pub fn sigma(n: u64) -> u64 {
    let mut s = 1u64;
    for (p, e) in factor(n as u128) {
        let mut term = 1u64;
        let mut pk = 1u64;
        for _ in 0..e {
            pk *= p;
            term += pk;
        }
        s *= term;
    }
    s
}

/// Kronecker symbol (a | n), the full extension of the Jacobi symbol to
/// all integer n (including n ≤ 0 and even n).
pub fn kronecker(a: i128, n: i128) -> i32 {
    if n == 0 {
        return if a == 1 || a == -1 { 1 } else { 0 };
    }
    let mut a = a;
    let mut n = n;
    let mut result = 1i32;
    if n < 0 {
        n = -n;
        if a < 0 {
            result = -result;
        }
    }
    // Factor out twos of n: (a|2) per the standard supplement.
    let mut v2 = 0u32;
    while n % 2 == 0 {
        n /= 2;
        v2 += 1;
    }
    if v2 > 0 {
        if a % 2 == 0 {
            return 0;
        }
        if v2 % 2 == 1 {
            let r = a.rem_euclid(8);
            if r == 3 || r == 5 {
                result = -result;
            }
        }
    }
    a = a.rem_euclid(n);
    // Jacobi symbol (a | n) for odd n > 0 by binary reciprocity.
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            let r = n.rem_euclid(8);
            if r == 3 || r == 5 {
                result = -result;
            }
        }
        core::mem::swap(&mut a, &mut n);
        if a.rem_euclid(4) == 3 && n.rem_euclid(4) == 3 {
            result = -result;
        }
        a = a.rem_euclid(n);
    }
    if n == 1 {
        result
    } else {
        0
    }
}

/// Decompose a discriminant Δ < 0, Δ ≡ 0,1 (mod 4), as Δ = f²·Δ_K with
/// Δ_K the fundamental discriminant. Returns (Δ_K, f).
pub fn fundamental_discriminant(delta: i128) -> (i128, u64) {
    assert!(delta < 0, "expected a negative discriminant");
    let r = delta.rem_euclid(4);
    assert!(r == 0 || r == 1, "expected Δ ≡ 0,1 mod 4");
    let mut square_part = 1u128; // largest g with g² | Δ
    let mut squarefree = 1i128;
    for (p, e) in factor((-delta) as u128) {
        for _ in 0..e / 2 {
            square_part *= p as u128;
        }
        if e % 2 == 1 {
            squarefree *= p as i128;
        }
    }
    let minus_s = -squarefree;
    if minus_s.rem_euclid(4) == 1 {
        (minus_s, square_part as u64)
    } else {
        // Δ_K = −4s; the square part must then be even.
        debug_assert_eq!(square_part % 2, 0);
        (4 * minus_s, (square_part / 2) as u64)
    }
}

/// b^e mod m with u128 intermediates (m < 2⁶⁴).
pub fn pow_mod(mut b: u128, mut e: u128, m: u128) -> u128 {
    assert!(m > 0 && m < (1u128 << 64));
    b %= m;
    let mut acc = 1u128 % m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

/// Modular inverse of a mod m (m ≥ 1), if gcd(a, m) = 1.
pub fn inv_mod(a: i128, m: i128) -> Option<i128> {
    assert!(m >= 1);
    let (mut r0, mut r1) = (m, a.rem_euclid(m));
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    if r0 == 1 {
        Some(s0.rem_euclid(m))
    } else {
        None
    }
}

/// Checked integer power q = pᵏ as u128.
pub fn checked_pow(p: u64, k: u32) -> Option<u128> {
    let mut acc: u128 = 1;
    for _ in 0..k {
        acc = acc.checked_mul(p as u128)?;
    }
    Some(acc)
}
