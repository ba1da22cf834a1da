//! Class numbers of imaginary quadratic fields by counting reduced
//! primitive binary quadratic forms, and the Chebotarev density 1/(2h)
//! of the prime classes split by the corresponding ring class field.

use num_rational::Ratio;

use crate::error::{domain, resource, Result};
use crate::primality::small_primes;

/// Guard on |discriminant|: enumeration is O(|D|) with divisor searches.
pub const MAX_DISCRIMINANT_MAGNITUDE: i64 = 10_000_000;

/// Guard on n for [`class_number`], chosen so that -4n stays within the
/// discriminant guard. It also keeps the squarefree check complete:
/// sqrt(n) stays below the shared prime table's bound.
pub const MAX_CLASS_NUMBER_N: u64 = 2_500_000;

/// A binary quadratic form a x^2 + b x y + c y^2.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuadForm {
    pub a: u64,
    pub b: i64,
    pub c: u64,
    pub discriminant: i64,
}

impl QuadForm {
    /// Reduced: |b| <= a <= c, with b >= 0 whenever |b| = a or a = c.
    pub fn is_reduced(&self) -> bool {
        let (a, b, c) = (self.a as i64, self.b, self.c as i64);
        b.abs() <= a && a <= c && (b >= 0 || (b.abs() < a && a < c))
    }

    /// Primitive: gcd(a, b, c) = 1.
    pub fn is_primitive(&self) -> bool {
        gcd(gcd(self.a, self.b.unsigned_abs()), self.c) == 1
    }
}

/// Class data for the order of discriminant `discriminant` attached to n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassData {
    pub n: u64,
    pub discriminant: i64,
    pub h: u64,
    /// Density 1/(2h) of primes represented by the principal form, among
    /// all primes, per the Chebotarev theorem for the ring class field.
    pub density: Ratio<u64>,
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// All reduced primitive forms of the given negative discriminant,
/// sorted lexicographically by (a, b, c).
///
/// Enumerates b with the discriminant's parity up to sqrt(|D|/3), then
/// factors 4ac = b^2 + |D| over a in [max(|b|, 1), sqrt(ac)]; the
/// asymmetric forms (|b| < a < c, b != 0) are counted with both signs
/// of b.
pub fn reduced_forms(discriminant: i64) -> Result<Vec<QuadForm>> {
    if discriminant >= 0 {
        return Err(domain(format!(
            "discriminant must be negative, got {discriminant}"
        )));
    }
    if discriminant.rem_euclid(4) > 1 {
        return Err(domain(format!(
            "discriminant must be ≡ 0 or 1 (mod 4), got {discriminant}"
        )));
    }
    let magnitude = discriminant.unsigned_abs();
    if magnitude > MAX_DISCRIMINANT_MAGNITUDE as u64 {
        return Err(resource(format!(
            "|discriminant| = {magnitude} exceeds the guard {MAX_DISCRIMINANT_MAGNITUDE}"
        )));
    }
    let mut forms = Vec::new();
    let b_max = (magnitude / 3).isqrt();
    let mut b = magnitude % 2; // b^2 ≡ D (mod 4) forces b ≡ |D| (mod 2)
    while b <= b_max {
        let four_ac = b * b + magnitude;
        debug_assert_eq!(four_ac % 4, 0);
        let ac = four_ac / 4;
        for a in b.max(1)..=ac.isqrt() {
            if ac % a != 0 {
                continue;
            }
            let c = ac / a;
            let positive = QuadForm {
                a,
                b: b as i64,
                c,
                discriminant,
            };
            if !positive.is_primitive() {
                continue;
            }
            forms.push(positive);
            if b != 0 && b != a && a != c {
                forms.push(QuadForm {
                    a,
                    b: -(b as i64),
                    c,
                    discriminant,
                });
            }
        }
        b += 2;
    }
    forms.sort_by_key(|f| (f.a, f.b, f.c));
    Ok(forms)
}

/// Class number h(D) as the count of reduced primitive forms.
pub fn class_number_of_discriminant(discriminant: i64) -> Result<u64> {
    Ok(reduced_forms(discriminant)?.len() as u64)
}

/// Class data for Q(sqrt(-n)) with n squarefree: the fundamental
/// discriminant is -n when n ≡ 3 (mod 4) and -4n otherwise.
pub fn class_number(n: u64) -> Result<ClassData> {
    if n == 0 {
        return Err(domain("class_number needs n >= 1, got 0"));
    }
    if n > MAX_CLASS_NUMBER_N {
        return Err(resource(format!(
            "n = {n} exceeds the class number guard {MAX_CLASS_NUMBER_N}"
        )));
    }
    let mut rest = n;
    for &p in small_primes() {
        if p * p > rest {
            break;
        }
        if rest % p == 0 {
            rest /= p;
            if rest % p == 0 {
                return Err(domain(format!("n must be squarefree, got {n} = {p}^2 * ...")));
            }
        }
    }
    let discriminant = if n % 4 == 3 {
        -(n as i64)
    } else {
        -4 * n as i64
    };
    let h = class_number_of_discriminant(discriminant)?;
    Ok(ClassData {
        n,
        discriminant,
        h,
        density: chebotarev_density(h)?,
    })
}

/// Chebotarev density 1/(2h) of the primes picked out by a single
/// reduced form of class number h (exact rational, already reduced).
pub fn chebotarev_density(h: u64) -> Result<Ratio<u64>> {
    if h == 0 {
        return Err(domain("class number must be >= 1, got 0"));
    }
    Ok(Ratio::new(1, 2 * h))
}
