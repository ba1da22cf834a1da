//! Representing primes by the quadratic forms x^2 + d y^2: a modular
//! square root, Cornacchia's algorithm (complete for prime moduli), an
//! independent brute-force enumerator kept deliberately separate as a
//! cross-check, the half-index construction of F_p = x^2 + p^2 y^2, the
//! quadratic-residue obstruction for the excluded classes, and a survey
//! over prime-index Fibonacci primes.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{domain, internal, resource, Result};
use crate::fibonacci::{fib_mod, fib_pair};
use crate::primality::{fibonacci_prime_indices, is_probable_prime, require_prime};
use crate::symbols::jacobi;

/// Guard for the brute-force routines, which scan up to sqrt(n/d) values.
pub const MAX_ENUMERATE_TARGET: u64 = 1_000_000_000;

/// One representation m = x^2 + d y^2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Representation {
    pub d: BigUint,
    pub x: BigUint,
    pub y: BigUint,
    pub m: BigUint,
}

/// Survey line for one prime index p with F_p (probable) prime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurveyRow {
    pub p: u64,
    pub fib_digits: usize,
    pub fib_is_prime: bool,
    /// Whether F_p = x^2 + p y^2 has a solution with x, y both positive.
    pub representable: bool,
    pub witness: Option<Representation>,
}

/// Square root of a modulo an odd prime p, canonicalized to the smaller
/// of the two roots. Requires jacobi(a, p) = +1; multiples of p and
/// non-residues are domain errors.
///
/// p ≡ 3 (mod 4) uses the direct exponent (p+1)/4; otherwise
/// Tonelli-Shanks with a deterministic search for the smallest
/// non-residue. Compositeness of p is not assumed detectable, but every
/// exit is bounded and a final r^2 ≡ a check turns misuse into a domain
/// error instead of a wrong answer.
pub fn sqrt_mod(a: &BigUint, p: &BigUint) -> Result<BigUint> {
    if p.is_even() || p.is_one() {
        return Err(domain(format!("sqrt_mod needs an odd prime modulus, got {p}")));
    }
    let a_red = a % p;
    match jacobi(&BigInt::from(a_red.clone()), p)? {
        0 => {
            return Err(domain(format!(
                "sqrt_mod needs an argument coprime to the modulus; {a_red} ≡ 0 (mod {p})"
            )))
        }
        -1 => {
            return Err(domain(format!(
                "{a_red} is not a quadratic residue modulo {p}"
            )))
        }
        _ => {}
    }
    let one = BigUint::one();
    let root = if (p % 4u32) == BigUint::from(3u32) {
        a_red.modpow(&((p + &one) >> 2), p)
    } else {
        tonelli_shanks(&a_red, p)?
    };
    if (&root * &root) % p != a_red {
        return Err(domain(format!("sqrt_mod found no root; {p} is not prime")));
    }
    let mirror = p - &root;
    Ok(root.min(mirror))
}

fn tonelli_shanks(a: &BigUint, p: &BigUint) -> Result<BigUint> {
    let one = BigUint::one();
    let p_minus_1 = p - &one;
    let s = p_minus_1.trailing_zeros().expect("p is odd, so p - 1 > 0 is even");
    let q = &p_minus_1 >> s;

    // Smallest quadratic non-residue; for prime p this is tiny (far below
    // the bound, which only exists to rule out endless scans on misuse).
    let mut z = BigUint::from(2u32);
    let z_bound = BigUint::from(1u32 << 20);
    while jacobi(&BigInt::from(z.clone()), p)? != -1 {
        z += 1u32;
        if z > z_bound {
            return Err(domain(format!(
                "no quadratic non-residue below 2^20 modulo {p}; modulus is not an odd prime"
            )));
        }
    }

    let mut m = s;
    let mut c = z.modpow(&q, p);
    let mut t = a.modpow(&q, p);
    let mut r = a.modpow(&((&q + &one) >> 1), p);
    while !t.is_one() {
        let mut i = 0u64;
        let mut probe = t.clone();
        while !probe.is_one() {
            probe = &probe * &probe % p;
            i += 1;
            if i >= m {
                return Err(domain(format!(
                    "Tonelli-Shanks order chain diverged; {p} is not prime"
                )));
            }
        }
        let gap = m - i - 1;
        let b = c.modpow(&(BigUint::one() << gap), p);
        r = r * &b % p;
        c = &b * &b % p;
        t = t * &c % p;
        m = i;
    }
    Ok(r)
}

/// Cornacchia's algorithm for x^2 + d y^2 = m with 0 < d < m and m a
/// (probable) prime. Complete for prime m: returns None exactly when no
/// solution in positive integers exists. For d = 1 the witness is
/// normalized to x >= y.
pub fn cornacchia(d: &BigUint, m: &BigUint) -> Result<Option<(BigUint, BigUint)>> {
    if d.is_zero() {
        return Err(domain("cornacchia needs d >= 1, got 0"));
    }
    if d >= m {
        return Err(domain(format!("cornacchia needs d < m, got d = {d}, m = {m}")));
    }
    if *m == BigUint::from(2u32) {
        // d = 1 is forced and 1^2 + 1^2 = 2.
        return Ok(Some((BigUint::one(), BigUint::one())));
    }
    if !is_probable_prime(m) {
        return Err(domain(format!("cornacchia needs a (probable) prime m, got {m}")));
    }
    // Solvability: -d must be a square mod m.
    if jacobi(&-BigInt::from(d.clone()), m)? != 1 {
        return Ok(None);
    }
    let t0 = sqrt_mod(&(m - d), m)?;
    // Use the root in (m/2, m).
    let t = if (&t0 << 1u32) < *m { m - &t0 } else { t0 };

    // Euclidean remainder chain from (m, t), stopping at the first
    // remainder below sqrt(m).
    let mut prev = m.clone();
    let mut cur = t;
    while &cur * &cur >= *m {
        let next = &prev % &cur;
        prev = cur;
        cur = next;
    }
    let x = cur;
    let (y_squared, leftover) = (m - &x * &x).div_rem(d);
    if !leftover.is_zero() {
        return Ok(None);
    }
    let y = y_squared.sqrt();
    if &y * &y != y_squared {
        return Ok(None);
    }
    let (x, y) = if d.is_one() && x < y { (y, x) } else { (x, y) };
    debug_assert_eq!(&x * &x + d * &y * &y, *m);
    Ok(Some((x, y)))
}

/// Every nonnegative solution (x, y) of x^2 + d y^2 = n by direct scan
/// over y, in increasing y. Deliberately independent of [`cornacchia`]
/// (no shared arithmetic) so the two can validate each other.
pub fn represent_enumerate(d: u64, n: u64) -> Result<Vec<(u64, u64)>> {
    if d == 0 {
        return Err(domain("represent_enumerate needs d >= 1, got 0"));
    }
    if n > MAX_ENUMERATE_TARGET {
        return Err(resource(format!(
            "enumeration target {n} exceeds the guard {MAX_ENUMERATE_TARGET}"
        )));
    }
    let mut solutions = Vec::new();
    let mut y = 0u64;
    loop {
        let dy2 = d as u128 * y as u128 * y as u128;
        if dy2 > n as u128 {
            break;
        }
        let rest = n - dy2 as u64;
        let x = rest.isqrt();
        if x * x == rest {
            solutions.push((x, y));
        }
        y += 1;
    }
    Ok(solutions)
}

/// Decomposition of a prime as a sum of two squares, ordered x >= y.
/// None exactly for p ≡ 3 (mod 4); p = 2 gives (1, 1).
pub fn sum_two_squares(p: &BigUint) -> Result<Option<(BigUint, BigUint)>> {
    if !is_probable_prime(p) {
        return Err(domain(format!("sum_two_squares needs a prime, got {p}")));
    }
    if *p == BigUint::from(2u32) {
        return Ok(Some((BigUint::one(), BigUint::one())));
    }
    if (p % 4u32) != BigUint::one() {
        return Ok(None);
    }
    match cornacchia(&BigUint::one(), p)? {
        Some(pair) => Ok(Some(pair)),
        None => Err(internal(format!(
            "prime {p} ≡ 1 (mod 4) must be a sum of two squares"
        ))),
    }
}

/// The constructive decomposition F_p = x^2 + p^2 y^2 for primes
/// p ≡ 1 (mod 4), p ≠ 5, from the half-index Fibonacci pair
/// (F_{(p-1)/2}, F_{(p+1)/2}): which of the two is x and which carries
/// the factor p depends on p mod 20.
pub fn decompose_fib_p_squared(p: u64) -> Result<Representation> {
    require_prime(p, "p")?;
    if p == 5 {
        return Err(domain("the decomposition is undefined at p = 5"));
    }
    if p % 4 != 1 {
        return Err(domain(format!("p must be ≡ 1 (mod 4), got {p}")));
    }
    let (f_lo, f_hi) = fib_pair((p - 1) / 2); // (F_{(p-1)/2}, F_{(p+1)/2})
    let m = &f_lo * &f_lo + &f_hi * &f_hi; // F_p, by the doubling identity
    let (x, divisible) = match p % 20 {
        1 | 9 => (f_hi.clone(), f_lo.clone()),
        13 | 17 => (f_lo.clone(), f_hi.clone()),
        _ => unreachable!("p ≡ 1 (mod 4), p ≠ 5 forces p ≡ 1, 9, 13, 17 (mod 20)"),
    };
    let (y, rem) = divisible.div_rem(&BigUint::from(p));
    if !rem.is_zero() {
        return Err(internal(format!(
            "expected p = {p} to divide the matching half-index Fibonacci number"
        )));
    }
    let d = BigUint::from(p) * p;
    if &x * &x + &d * (&y * &y) != m {
        return Err(internal(format!(
            "half-index decomposition failed the defining identity at p = {p}"
        )));
    }
    Ok(Representation { d, x, y, m })
}

/// The obstruction that keeps F_p from being x^2 + p y^2 for primes
/// p ≡ 3, 7 (mod 20): returns true when jacobi(F_p, p) = -1, which is
/// what rules the representation out.
pub fn representation_obstruction(p: u64) -> Result<bool> {
    require_prime(p, "p")?;
    let class = p % 20;
    if class != 3 && class != 7 {
        return Err(domain(format!("p must be ≡ 3 or 7 (mod 20), got {p}")));
    }
    let f = fib_mod(p, p)?;
    Ok(jacobi(&BigInt::from(f), &BigUint::from(p))? == -1)
}

/// Representability survey of F_p = x^2 + p y^2 over prime indices
/// p <= bound with F_p (probable) prime and p > 5. With
/// `require_index_1_mod_4` set, indices p ≡ 3 (mod 4) are dropped from
/// the survey domain entirely.
pub fn survey_representable(bound: u64, require_index_1_mod_4: bool) -> Result<Vec<SurveyRow>> {
    let indices = fibonacci_prime_indices(bound)?;
    let mut rows = Vec::new();
    for p in indices {
        if p <= 5 {
            continue;
        }
        if require_index_1_mod_4 && p % 4 == 3 {
            continue;
        }
        let f = fib_pair(p).0;
        let fib_digits = f.to_string().len();
        let witness = cornacchia(&BigUint::from(p), &f)?;
        let witness = witness.and_then(|(x, y)| {
            if x.is_zero() || y.is_zero() {
                None
            } else {
                Some(Representation {
                    d: BigUint::from(p),
                    x,
                    y,
                    m: f.clone(),
                })
            }
        });
        rows.push(SurveyRow {
            p,
            fib_digits,
            fib_is_prime: true,
            representable: witness.is_some(),
            witness,
        });
    }
    Ok(rows)
}
