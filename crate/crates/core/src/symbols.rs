//! Quadratic and quartic residue symbols, and the classical congruences
//! tying F_p to the Legendre symbol (p/5).

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{domain, internal, Result};
use crate::fibonacci::fib_mod;
use crate::primality::require_prime;

/// Parity of a class number, as decided by quartic residue symbols.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Odd,
    Even,
}

impl Parity {
    pub fn label(&self) -> &'static str {
        match self {
            Parity::Odd => "odd",
            Parity::Even => "even",
        }
    }
}

/// One checked congruence: lhs and rhs are both reduced into [0, p).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CongruenceReport {
    pub p: u64,
    pub lhs: u64,
    pub rhs: u64,
    pub holds: bool,
}

/// Jacobi symbol (a/n) for odd n >= 1, by the binary algorithm. Negative
/// a is reduced into [0, n) first; (a/1) = 1 by the empty-product
/// convention.
pub fn jacobi(a: &BigInt, n: &BigUint) -> Result<i8> {
    if n.is_even() {
        return Err(domain(format!("Jacobi symbol needs an odd modulus, got {n}")));
    }
    let n_int = BigInt::from(n.clone());
    if let Some(n_small) = n.to_u64() {
        let a_small = a
            .mod_floor(&n_int)
            .to_u64()
            .expect("residue is below a u64 modulus");
        return Ok(jacobi_reduced_u64(a_small, n_small));
    }
    let mut num = a
        .mod_floor(&n_int)
        .to_biguint()
        .expect("mod_floor of a positive modulus is nonnegative");
    let mut den = n.clone();
    let mut sign = 1i8;
    let three = BigUint::from(3u32);
    while !num.is_zero() {
        while num.is_even() {
            num >>= 1;
            let r = (&den % 8u32).to_u8().unwrap();
            if r == 3 || r == 5 {
                sign = -sign;
            }
        }
        std::mem::swap(&mut num, &mut den);
        if (&num % 4u32) == three && (&den % 4u32) == three {
            sign = -sign;
        }
        num %= &den;
    }
    if den.is_one() {
        Ok(sign)
    } else {
        Ok(0)
    }
}

/// Fast path: (a/n) with a already in [0, n), n odd.
fn jacobi_reduced_u64(mut a: u64, mut n: u64) -> i8 {
    let mut sign = 1i8;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            let r = n % 8;
            if r == 3 || r == 5 {
                sign = -sign;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            sign = -sign;
        }
        a %= n;
    }
    if n == 1 {
        sign
    } else {
        0
    }
}

/// Jacobi symbol on machine-sized inputs.
pub fn jacobi_u64(a: i64, n: u64) -> Result<i8> {
    if n % 2 == 0 {
        return Err(domain(format!("Jacobi symbol needs an odd modulus, got {n}")));
    }
    let reduced = a.rem_euclid(n as i64) as u64;
    Ok(jacobi_reduced_u64(reduced, n))
}

pub(crate) fn pow_mod_u64(base: u64, mut exp: u64, m: u64) -> u64 {
    let m = m as u128;
    let mut b = base as u128 % m;
    let mut acc: u128 = 1 % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

/// Quartic residue character a^((p-1)/4) mod p, for p ≡ 1 (mod 4) prime
/// and a a nonzero quadratic residue mod p; the value is then ±1.
pub fn quartic_residue(a: &BigUint, p: &BigUint) -> Result<i8> {
    if (p % 4u32) != BigUint::one() {
        return Err(domain(format!(
            "quartic residue character needs p ≡ 1 (mod 4), got {p}"
        )));
    }
    if !crate::primality::is_probable_prime(p) {
        return Err(domain(format!("quartic residue character needs a prime p, got {p}")));
    }
    let a_red = a % p;
    if jacobi(&BigInt::from(a_red.clone()), p)? != 1 {
        return Err(domain(format!(
            "quartic residue character needs a nonzero quadratic residue, got {a_red} mod {p}"
        )));
    }
    let e = (p - 1u32) >> 2;
    let s = a_red.modpow(&e, p);
    if s.is_one() {
        Ok(1)
    } else if s == p - 1u32 {
        Ok(-1)
    } else {
        Err(internal(format!(
            "quartic character of a residue must be ±1, got {s} mod {p}"
        )))
    }
}

/// Parity of the class number of Q(sqrt(-p*q)) for distinct primes
/// p ≡ q ≡ 1 (mod 4) with (p/q) = 1: the class number is odd exactly when
/// the two quartic characters (p/q)_4 and (q/p)_4 disagree.
pub fn biquadratic_class_parity(p: u64, q: u64) -> Result<Parity> {
    require_prime(p, "p")?;
    require_prime(q, "q")?;
    if p == q {
        return Err(domain(format!("p and q must be distinct, got {p} twice")));
    }
    if p % 4 != 1 || q % 4 != 1 {
        return Err(domain(format!(
            "both primes must be ≡ 1 (mod 4), got {p} and {q}"
        )));
    }
    if jacobi_u64(p as i64, q)? != 1 {
        return Err(domain(format!(
            "({p}/{q}) must equal +1 for the quartic parity criterion"
        )));
    }
    let qp = quartic_residue(&BigUint::from(q), &BigUint::from(p))?;
    let pq = quartic_residue(&BigUint::from(p), &BigUint::from(q))?;
    Ok(if qp != pq { Parity::Odd } else { Parity::Even })
}

/// Legendre symbol (p/5): +1 for p ≡ ±1 (mod 5), -1 for p ≡ ±2, 0 for 5 | p.
pub(crate) fn legendre5(p: u64) -> i8 {
    match p % 5 {
        0 => 0,
        1 | 4 => 1,
        _ => -1,
    }
}

/// Checks F_p ≡ (p/5) (mod p) for an odd prime p. At p = 5 both sides
/// vanish, so the congruence holds there too.
pub fn verify_fp_congruence(p: u64) -> Result<CongruenceReport> {
    require_prime(p, "p")?;
    if p == 2 {
        return Err(domain("the F_p congruence needs an odd prime, got 2"));
    }
    let lhs = fib_mod(p, p)?;
    let rhs = match legendre5(p) {
        1 => 1,
        -1 => p - 1,
        _ => 0,
    };
    Ok(CongruenceReport {
        p,
        lhs,
        rhs,
        holds: lhs == rhs,
    })
}

/// Checks the neighbor congruences F_{p-1} ≡ (1 - (p/5))/2 and
/// F_{p+1} ≡ (1 + (p/5))/2 (mod p) for odd primes p other than 5.
/// Both right sides are exact integers (0 or 1) since (p/5) = ±1.
pub fn verify_neighbor_congruences(p: u64) -> Result<(CongruenceReport, CongruenceReport)> {
    require_prime(p, "p")?;
    if p == 2 || p == 5 {
        return Err(domain(format!(
            "the neighbor congruences need an odd prime other than 5, got {p}"
        )));
    }
    let s = legendre5(p) as i64;
    let below = CongruenceReport {
        p,
        lhs: fib_mod(p - 1, p)?,
        rhs: ((1 - s) / 2) as u64,
        holds: false,
    };
    let above = CongruenceReport {
        p,
        lhs: fib_mod(p + 1, p)?,
        rhs: ((1 + s) / 2) as u64,
        holds: false,
    };
    Ok((
        CongruenceReport {
            holds: below.lhs == below.rhs,
            ..below
        },
        CongruenceReport {
            holds: above.lhs == above.rhs,
            ..above
        },
    ))
}

/// Checks the half-index congruence for primes p not in {2, 5}: with
/// s = (p/5) and k = (p - s)/2,
///   F_k ≡ 0 (mod p)                                  when p ≡ 1 (mod 4),
///   F_k ≡ 2 (-1)^floor((p+5)/10) s 5^((p-3)/4) (mod p)  when p ≡ 3 (mod 4).
pub fn verify_half_index_congruence(p: u64) -> Result<CongruenceReport> {
    require_prime(p, "p")?;
    if p == 2 || p == 5 {
        return Err(domain(format!(
            "the half-index congruence needs an odd prime other than 5, got {p}"
        )));
    }
    let s = legendre5(p) as i64;
    let k = ((p as i64 - s) / 2) as u64;
    let lhs = fib_mod(k, p)?;
    let rhs = if p % 4 == 1 {
        0
    } else {
        let mag = (2u128 * pow_mod_u64(5, (p - 3) / 4, p) as u128 % p as u128) as u64;
        let negative = ((p + 5) / 10) % 2 == 1;
        let sign = if negative { -s } else { s };
        if sign == 1 {
            mag
        } else {
            (p - mag) % p
        }
    };
    Ok(CongruenceReport {
        p,
        lhs,
        rhs,
        holds: lhs == rhs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn jacobi_known_values() {
        // (1/1) through small table entries.
        assert_eq!(jacobi_u64(0, 1).unwrap(), 1);
        assert_eq!(jacobi_u64(1, 3).unwrap(), 1);
        assert_eq!(jacobi_u64(2, 3).unwrap(), -1);
        assert_eq!(jacobi_u64(2, 15).unwrap(), 1); // composite modulus: (2/3)(2/5) = (-1)(-1)
        assert_eq!(jacobi_u64(5, 21).unwrap(), 1); // (5/3)(5/7) = (-1)(-1)
        assert_eq!(jacobi_u64(6, 15).unwrap(), 0); // shared factor 3
        assert_eq!(jacobi_u64(-1, 5).unwrap(), 1);
        assert_eq!(jacobi_u64(-1, 7).unwrap(), -1);
        assert_eq!(jacobi_u64(-2, 7).unwrap(), -1); // -2 ≡ 5, a non-residue mod 7
        assert_eq!(jacobi_u64(-2, 3).unwrap(), 1); // -2 ≡ 1 (mod 3)
    }

    #[test]
    fn jacobi_even_modulus_rejected() {
        assert!(matches!(
            jacobi(&BigInt::from(3), &BigUint::from(8u32)),
            Err(crate::Error::Domain(_))
        ));
        assert!(matches!(jacobi_u64(3, 0), Err(crate::Error::Domain(_))));
    }

    #[test]
    fn jacobi_bigint_path_matches_u64_path() {
        for a in -30i64..30 {
            for n in (1u64..60).step_by(2) {
                let via_big = jacobi(&BigInt::from(a), &BigUint::from(n)).unwrap();
                assert_eq!(via_big, jacobi_u64(a, n).unwrap(), "a={a} n={n}");
            }
        }
        // A modulus above u64 takes the BigUint loop: p = 2^89 - 1 is
        // prime with p ≡ 7 (mod 8), so (2/p) = +1.
        let p = BigUint::from(2u32).pow(89) - 1u32;
        assert_eq!(jacobi(&BigInt::from(2), &p).unwrap(), 1);
        // And -1 is a non-residue mod p ≡ 3 (mod 4).
        assert_eq!(jacobi(&BigInt::from(-1), &p).unwrap(), -1);
    }

    #[test]
    fn quartic_residue_values() {
        // 4 is a square but not a fourth power mod 13: 4^3 = 64 ≡ -1.
        assert_eq!(
            quartic_residue(&BigUint::from(4u32), &BigUint::from(13u32)).unwrap(),
            -1
        );
        // 3 = 2^4 (mod 13) is a fourth power: character +1.
        assert_eq!(
            quartic_residue(&BigUint::from(3u32), &BigUint::from(13u32)).unwrap(),
            1
        );
    }

    #[test]
    fn quartic_residue_preconditions() {
        let err = quartic_residue(&BigUint::from(2u32), &BigUint::from(7u32));
        assert!(matches!(err, Err(crate::Error::Domain(_))), "p ≢ 1 mod 4");
        let err = quartic_residue(&BigUint::from(2u32), &BigUint::from(13u32));
        assert!(matches!(err, Err(crate::Error::Domain(_))), "non-residue a");
        let err = quartic_residue(&BigUint::from(4u32), &BigUint::from(21u32));
        assert!(matches!(err, Err(crate::Error::Domain(_))), "composite p");
    }

    #[test]
    fn parity_examples() {
        assert_eq!(biquadratic_class_parity(13, 17).unwrap(), Parity::Odd);
        // (29/5)_4 = 4^1 ≡ -1 (mod 5) and (5/29)_4 = 5^7 ≡ -1 (mod 29)
        // agree, so Q(sqrt(-145)) has even class number.
        assert_eq!(biquadratic_class_parity(5, 29).unwrap(), Parity::Even);
    }

    #[test]
    fn parity_preconditions() {
        assert!(matches!(
            biquadratic_class_parity(13, 13),
            Err(crate::Error::Domain(_))
        ));
        assert!(matches!(
            biquadratic_class_parity(7, 13),
            Err(crate::Error::Domain(_))
        ));
        assert!(matches!(
            biquadratic_class_parity(15, 13),
            Err(crate::Error::Domain(_))
        ));
        // (5/13) = -1, so the criterion does not apply.
        assert!(matches!(
            biquadratic_class_parity(5, 13),
            Err(crate::Error::Domain(_))
        ));
    }

    #[test]
    fn fp_congruence_small_primes() {
        for (p, want_lhs) in [(3u64, 2u64), (5, 0), (7, 6), (11, 1), (13, 12)] {
            let rep = verify_fp_congruence(p).unwrap();
            assert!(rep.holds, "p = {p}");
            assert_eq!(rep.lhs, want_lhs, "p = {p}");
        }
        assert!(matches!(
            verify_fp_congruence(2),
            Err(crate::Error::Domain(_))
        ));
        assert!(matches!(
            verify_fp_congruence(9),
            Err(crate::Error::Domain(_))
        ));
    }

    #[test]
    fn neighbor_congruences_examples() {
        let (below, above) = verify_neighbor_congruences(7).unwrap();
        assert_eq!((below.lhs, below.rhs), (1, 1));
        assert_eq!((above.lhs, above.rhs), (0, 0));
        assert!(below.holds && above.holds);

        let (below, above) = verify_neighbor_congruences(11).unwrap();
        assert_eq!((below.lhs, below.rhs), (0, 0));
        assert_eq!((above.lhs, above.rhs), (1, 1));

        for p in [2u64, 5] {
            assert!(matches!(
                verify_neighbor_congruences(p),
                Err(crate::Error::Domain(_))
            ));
        }
    }

    #[test]
    fn half_index_congruence_examples() {
        // p ≡ 1 (mod 4): F_{(p-s)/2} ≡ 0.
        for p in [13u64, 29, 37, 41] {
            let rep = verify_half_index_congruence(p).unwrap();
            assert_eq!(rep.rhs, 0, "p = {p}");
            assert!(rep.holds, "p = {p}");
        }
        // p ≡ 3 (mod 4): nonzero right side.
        let rep = verify_half_index_congruence(7).unwrap();
        assert_eq!((rep.lhs, rep.rhs), (3, 3));
        assert!(rep.holds);
        let rep = verify_half_index_congruence(11).unwrap();
        assert_eq!((rep.lhs, rep.rhs), (5, 5));
        assert!(rep.holds);

        for p in [2u64, 5] {
            assert!(matches!(
                verify_half_index_congruence(p),
                Err(crate::Error::Domain(_))
            ));
        }
    }
}
