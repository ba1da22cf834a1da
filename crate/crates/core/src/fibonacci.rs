//! Fibonacci numbers: exact values at signed indices, values modulo m,
//! Pisano cycles, and the real-argument interpolation of Binet's formula.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::error::{domain, resource, Result};

/// Default cap on |n| for exact Fibonacci computation. F_n has roughly
/// 0.209 n decimal digits, so this keeps results near 2 million digits.
pub const DEFAULT_MAX_FIB_INDEX: u64 = 10_000_000;

/// Default cap on the modulus accepted by [`pisano_period`]. The period can
/// reach 6m, and the cycle is materialized in memory.
pub const DEFAULT_MAX_PISANO_MODULUS: u64 = 1_000_000;

/// Cap on |x| for [`fib_real`], past which phi^x leaves f64 range anyway.
pub const MAX_FIB_REAL_ARG: f64 = 1000.0;

/// One full cycle of the Fibonacci sequence reduced modulo `modulus`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PisanoCycle {
    pub modulus: u64,
    /// F_0, F_1, ..., F_{period-1} reduced mod `modulus`.
    pub residues: Vec<u64>,
    /// Minimal period; always equals `residues.len()`.
    pub period: u64,
}

/// (F_n, F_{n+1}) by fast doubling:
/// F_{2k} = F_k (2 F_{k+1} - F_k), F_{2k+1} = F_k^2 + F_{k+1}^2.
pub(crate) fn fib_pair(n: u64) -> (BigUint, BigUint) {
    let mut a = BigUint::zero(); // F_k
    let mut b = BigUint::one(); // F_{k+1}
    if n == 0 {
        return (a, b);
    }
    for i in (0..(64 - n.leading_zeros())).rev() {
        let twice_b_minus_a = (&b << 1u32) - &a;
        let even = &a * twice_b_minus_a; // F_{2k}
        let odd = &a * &a + &b * &b; // F_{2k+1}
        if (n >> i) & 1 == 1 {
            b = &even + &odd;
            a = odd;
        } else {
            a = even;
            b = odd;
        }
    }
    (a, b)
}

/// Exact F_n for a signed index, under the default index guard.
///
/// Negative indices follow F_{-n} = (-1)^{n+1} F_n, the unique extension
/// satisfying the two-sided recurrence (so F_{-1} = 1, F_{-2} = -1).
pub fn fib(n: i64) -> Result<BigInt> {
    fib_with_limit(n, DEFAULT_MAX_FIB_INDEX)
}

/// Exact F_n with an explicit cap on |n|.
pub fn fib_with_limit(n: i64, max_index: u64) -> Result<BigInt> {
    let mag = n.unsigned_abs();
    if mag > max_index {
        return Err(resource(format!(
            "Fibonacci index |{n}| exceeds the limit {max_index}"
        )));
    }
    let value = BigInt::from(fib_pair(mag).0);
    if n < 0 && mag % 2 == 0 {
        Ok(-value)
    } else {
        Ok(value)
    }
}

/// F_n mod m without materializing F_n; fast doubling with reduction at
/// every step. Works for any m >= 2, including m far beyond the Pisano
/// modulus guard.
pub fn fib_mod(n: u64, m: u64) -> Result<u64> {
    if m < 2 {
        return Err(domain(format!("fib_mod needs a modulus >= 2, got {m}")));
    }
    let m = m as u128;
    let mut a: u128 = 0; // F_k mod m
    let mut b: u128 = 1; // F_{k+1} mod m
    if n == 0 {
        return Ok(a as u64);
    }
    for i in (0..(64 - n.leading_zeros())).rev() {
        let t = (2 * b % m + m - a) % m;
        let even = a * t % m;
        let odd = (a * a % m + b * b % m) % m;
        if (n >> i) & 1 == 1 {
            a = odd;
            b = (even + odd) % m;
        } else {
            a = even;
            b = odd;
        }
    }
    Ok(a as u64)
}

/// The Pisano cycle mod m under the default modulus guard.
pub fn pisano_period(m: u64) -> Result<PisanoCycle> {
    pisano_period_with_limit(m, DEFAULT_MAX_PISANO_MODULUS)
}

/// The Pisano cycle mod m with an explicit modulus cap.
///
/// Iterates the recurrence until the state (0, 1) recurs; the first
/// recurrence of the initial state is the minimal period.
pub fn pisano_period_with_limit(m: u64, max_modulus: u64) -> Result<PisanoCycle> {
    if m < 2 {
        return Err(domain(format!("Pisano period needs a modulus >= 2, got {m}")));
    }
    if m > max_modulus {
        return Err(resource(format!(
            "Pisano modulus {m} exceeds the limit {max_modulus}"
        )));
    }
    let mut residues = Vec::new();
    let (mut a, mut b) = (0u64, 1u64);
    loop {
        residues.push(a);
        let next = ((a as u128 + b as u128) % m as u128) as u64;
        a = b;
        b = next;
        if a == 0 && b == 1 {
            break;
        }
    }
    Ok(PisanoCycle {
        modulus: m,
        period: residues.len() as u64,
        residues,
    })
}

/// Binet's formula extended to real arguments:
/// fib_real(x) = (phi^x - phi^{-x} cos(pi x)) / sqrt(5).
///
/// Agrees with F_n at integers. Relative accuracy decays with |x| (phi^x
/// amplifies the ~1 ulp error of powf), so treat outputs past |x| ~ 70 as
/// approximate in the low digits.
pub fn fib_real(x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(domain(format!("fib_real needs a finite argument, got {x}")));
    }
    if x.abs() > MAX_FIB_REAL_ARG {
        return Err(resource(format!(
            "fib_real argument |{x}| exceeds the floating-range guard {MAX_FIB_REAL_ARG}"
        )));
    }
    let sqrt5 = 5f64.sqrt();
    let phi = (1.0 + sqrt5) / 2.0;
    let value = (phi.powf(x) - phi.powf(-x) * (std::f64::consts::PI * x).cos()) / sqrt5;
    if value.is_finite() {
        Ok(value)
    } else {
        Err(resource(format!("fib_real({x}) overflows f64")))
    }
}
