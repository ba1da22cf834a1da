//! Primality testing sized for multi-thousand-digit Fibonacci numbers:
//! trial division, then a Baillie-PSW round (strong base-2 probable prime
//! test plus a strong Lucas test with Selfridge's parameters). No BPSW
//! pseudoprime is known; below 2^64 the combination is proven exact.

use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{domain, resource, Result};
use crate::fibonacci::fib_pair;
use crate::symbols::jacobi;

/// Trial division covers every prime below this bound.
pub const TRIAL_DIVISION_BOUND: u64 = 10_000;

/// Guard for [`fibonacci_prime_indices`]: the search walks every prime
/// index up to the bound and runs a probable-prime test on each F_p.
pub const MAX_PRIME_INDEX_BOUND: u64 = 10_000;

/// How a verdict was reached, in increasing order of input size.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    /// Settled entirely by trial division (n < 10^8, so a composite must
    /// have a factor below [`TRIAL_DIVISION_BOUND`]).
    SmallTrial,
    /// Baillie-PSW on n < 2^64, where the test is proven deterministic.
    DeterministicSmall,
    /// Baillie-PSW beyond 2^64: no counterexample is known, but the verdict
    /// is formally "probable prime".
    Probabilistic,
}

impl Method {
    pub fn label(&self) -> &'static str {
        match self {
            Method::SmallTrial => "small-trial",
            Method::DeterministicSmall => "deterministic-small",
            Method::Probabilistic => "probabilistic",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimalityVerdict {
    /// Decimal digit count of the tested number.
    pub n_digits: usize,
    pub is_probable_prime: bool,
    pub method: Method,
}

/// All primes below [`TRIAL_DIVISION_BOUND`], sieved once.
pub(crate) fn small_primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let bound = TRIAL_DIVISION_BOUND as usize;
        let mut composite = vec![false; bound];
        let mut primes = Vec::new();
        for n in 2..bound {
            if !composite[n] {
                primes.push(n as u64);
                let mut k = n * n;
                while k < bound {
                    composite[k] = true;
                    k += n;
                }
            }
        }
        primes
    })
}

/// Full verdict with the method that settled it.
pub fn check_prime(n: &BigUint) -> PrimalityVerdict {
    let n_digits = n.to_string().len();
    let two = BigUint::from(2u32);
    if n < &two {
        return PrimalityVerdict {
            n_digits,
            is_probable_prime: false,
            method: Method::SmallTrial,
        };
    }
    for &p in small_primes() {
        let p_big = BigUint::from(p);
        if *n == p_big {
            return PrimalityVerdict {
                n_digits,
                is_probable_prime: true,
                method: Method::SmallTrial,
            };
        }
        if (n % p_big).is_zero() {
            return PrimalityVerdict {
                n_digits,
                is_probable_prime: false,
                method: Method::SmallTrial,
            };
        }
    }
    // No factor below 10^4, so anything below 10^8 is prime.
    if let Some(small) = n.to_u64() {
        if small < 100_000_000 {
            return PrimalityVerdict {
                n_digits,
                is_probable_prime: true,
                method: Method::SmallTrial,
            };
        }
    }
    let method = if n.bits() <= 64 {
        Method::DeterministicSmall
    } else {
        Method::Probabilistic
    };
    let passes = strong_probable_prime_base2(n) && !is_perfect_square(n) && strong_lucas(n);
    PrimalityVerdict {
        n_digits,
        is_probable_prime: passes,
        method,
    }
}

/// Convenience boolean form of [`check_prime`].
pub fn is_probable_prime(n: &BigUint) -> bool {
    check_prime(n).is_probable_prime
}

pub(crate) fn is_prime_u64(n: u64) -> bool {
    is_probable_prime(&BigUint::from(n))
}

/// Strong probable-prime test to base 2: with n - 1 = q 2^r (q odd),
/// require 2^q = 1, or 2^(q 2^j) = -1 for some j < r (mod n).
fn strong_probable_prime_base2(n: &BigUint) -> bool {
    let n_minus_1 = n - 1u32;
    let r = n_minus_1.trailing_zeros().expect("n is odd and > 2");
    let q = &n_minus_1 >> r;
    let mut x = BigUint::from(2u32).modpow(&q, n);
    if x.is_one() || x == n_minus_1 {
        return true;
    }
    for _ in 1..r {
        x = &x * &x % n;
        if x == n_minus_1 {
            return true;
        }
        if x.is_one() {
            return false;
        }
    }
    false
}

fn is_perfect_square(n: &BigUint) -> bool {
    let root = n.sqrt();
    &root * &root == *n
}

/// Strong Lucas probable-prime test with Selfridge's parameter choice
/// (method A): the first D in 5, -7, 9, -11, ... with jacobi(D, n) = -1,
/// then P = 1, Q = (1 - D) / 4. With n + 1 = q 2^s (q odd), require
/// U_q = 0, or V_{q 2^j} = 0 for some j < s (mod n).
///
/// Callers must have ruled out perfect squares and small factors first;
/// for squares the D search cannot terminate.
fn strong_lucas(n: &BigUint) -> bool {
    let n_int = BigInt::from(n.clone());
    let mut d: i64 = 5;
    loop {
        match jacobi(&BigInt::from(d), n).expect("modulus is odd") {
            -1 => break,
            0 => {
                // gcd(|D|, n) > 1. Trial division already removed factors
                // below 10^4 and n > |D| here, so n is composite.
                return false;
            }
            _ => {
                d = if d > 0 { -(d + 2) } else { -(d - 2) };
            }
        }
    }
    let q = (1 - d) / 4;

    let n_plus_1 = n + 1u32;
    let s = n_plus_1.trailing_zeros().expect("n + 1 is even");
    let idx = &n_plus_1 >> s;

    // Binary ladder over the bits of idx computing U_idx, V_idx, Q^idx.
    let d_big = BigInt::from(d);
    let q_big = BigInt::from(q);
    let mut u = BigInt::zero(); // U_0
    let mut v = BigInt::from(2); // V_0
    let mut qk = BigInt::one(); // Q^0
    for i in (0..idx.bits()).rev() {
        // Doubling: U_{2k} = U_k V_k, V_{2k} = V_k^2 - 2 Q^k.
        u = (&u * &v).mod_floor(&n_int);
        v = (&v * &v - (&qk << 1u32)).mod_floor(&n_int);
        qk = (&qk * &qk).mod_floor(&n_int);
        if idx.bit(i) {
            // Increment (P = 1): U_{k+1} = (U_k + V_k)/2,
            // V_{k+1} = (D U_k + V_k)/2, halving mod odd n.
            let u_next = &u + &v;
            let v_next = &d_big * &u + &v;
            u = half_mod(u_next, &n_int);
            v = half_mod(v_next, &n_int);
            qk = (&qk * &q_big).mod_floor(&n_int);
        }
    }

    if u.is_zero() || v.is_zero() {
        return true;
    }
    for _ in 1..s {
        v = (&v * &v - (&qk << 1u32)).mod_floor(&n_int);
        qk = (&qk * &qk).mod_floor(&n_int);
        if v.is_zero() {
            return true;
        }
    }
    false
}

/// x / 2 mod n for odd n: make the representative even, then shift.
fn half_mod(x: BigInt, n: &BigInt) -> BigInt {
    let mut r = x.mod_floor(n);
    if r.is_odd() {
        r += n;
    }
    (r >> 1u32).mod_floor(n)
}

/// Indices p <= bound (p prime) for which F_p is probable prime, in
/// increasing order. Only prime indices can yield prime F_p (F_d | F_n
/// when d | n), with the lone exception F_4 = 3, which is excluded here
/// by construction since the search ranges over prime p only.
pub fn fibonacci_prime_indices(bound: u64) -> Result<Vec<u64>> {
    if bound > MAX_PRIME_INDEX_BOUND {
        return Err(resource(format!(
            "index bound {bound} exceeds the search guard {MAX_PRIME_INDEX_BOUND}"
        )));
    }
    let mut out = Vec::new();
    for &p in small_primes() {
        if p > bound {
            break;
        }
        let f = fib_pair(p).0;
        if is_probable_prime(&f) {
            out.push(p);
        }
    }
    Ok(out)
}

/// Probable-prime check for F_n itself, at any index within the default
/// Fibonacci guard.
pub fn fib_is_probable_prime(n: u64) -> Result<PrimalityVerdict> {
    if n > crate::fibonacci::DEFAULT_MAX_FIB_INDEX {
        return Err(resource(format!(
            "Fibonacci index {n} exceeds the limit {}",
            crate::fibonacci::DEFAULT_MAX_FIB_INDEX
        )));
    }
    Ok(check_prime(&fib_pair(n).0))
}

/// Validates a caller-supplied prime, returning a domain error naming the
/// offender otherwise. Shared by the modules whose preconditions demand
/// prime inputs.
pub(crate) fn require_prime(n: u64, role: &str) -> Result<()> {
    if is_prime_u64(n) {
        Ok(())
    } else {
        Err(domain(format!("{role} must be prime, got {n}")))
    }
}
