//! Small exact number-theory helpers: integer square roots, trial-division
//! factoring, square classes, Legendre symbols.

use num::bigint::Sign;
use num::{BigInt, BigRational, Integer, One, Signed, Zero};

/// Floor of the square root of a nonnegative integer.
pub fn isqrt(n: &BigInt) -> BigInt {
    assert!(!n.is_negative(), "isqrt of negative number");
    n.sqrt()
}

/// True when `n` is a perfect square (nonnegative with exact square root).
pub fn is_square(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    let r = n.sqrt();
    &r * &r == *n
}

/// Deterministic primality by trial division; intended for the small primes
/// arising from determinants and file input, not for cryptographic sizes.
pub fn is_prime(n: &BigInt) -> bool {
    if *n < BigInt::from(2) {
        return false;
    }
    let two = BigInt::from(2);
    let three = BigInt::from(3);
    if *n == two || *n == three {
        return true;
    }
    if (n % &two).is_zero() || (n % &three).is_zero() {
        return false;
    }
    // 6k +- 1 wheel.
    let mut d = BigInt::from(5);
    while &d * &d <= *n {
        let d2 = &d + BigInt::from(2);
        if (n % &d).is_zero() || (n % &d2).is_zero() {
            return false;
        }
        d += 6;
    }
    true
}

/// Prime factorization `n = sign * prod p_i^{e_i}` by trial division,
/// returned as sorted `(p, e)` pairs. Requires `n != 0`.
pub fn factor(n: &BigInt) -> Vec<(BigInt, u32)> {
    assert!(!n.is_zero(), "cannot factor zero");
    let mut m = n.abs();
    let mut out: Vec<(BigInt, u32)> = Vec::new();
    let mut push = |p: BigInt, e: u32| {
        if e > 0 {
            out.push((p, e));
        }
    };
    let two = BigInt::from(2);
    let mut e = 0;
    while m.is_even() && !m.is_one() {
        m /= &two;
        e += 1;
    }
    push(two, e);
    let mut d = BigInt::from(3);
    while &d * &d <= m {
        let mut e = 0;
        while (&m % &d).is_zero() {
            m /= &d;
            e += 1;
        }
        push(d.clone(), e);
        d += 2;
    }
    if !m.is_one() {
        push(m, 1);
    }
    out
}

/// The square class of a nonzero rational, represented as the unique
/// squarefree integer with the same sign: `class(p/q) = squarefree(p*q)`.
pub fn square_class(r: &BigRational) -> BigInt {
    assert!(!r.is_zero(), "square class of zero is undefined");
    let n = r.numer() * r.denom();
    let mut cls = BigInt::one();
    for (p, e) in factor(&n) {
        if e % 2 == 1 {
            cls *= p;
        }
    }
    if n.is_negative() {
        -cls
    } else {
        cls
    }
}

/// Squarefree part of a nonzero integer (sign preserved).
pub fn squarefree_part(n: &BigInt) -> BigInt {
    square_class(&BigRational::from(n.clone()))
}

/// Legendre symbol `(a|p)` for odd prime `p`: 0 if `p | a`, otherwise +-1.
pub fn legendre(a: &BigInt, p: &BigInt) -> i32 {
    debug_assert!(is_prime(p) && p.is_odd());
    let a = a.mod_floor(p);
    if a.is_zero() {
        return 0;
    }
    // Euler criterion: a^((p-1)/2) mod p.
    let e = (p - BigInt::one()) / BigInt::from(2);
    let r = a.modpow(&e, p);
    if r.is_one() {
        1
    } else {
        -1
    }
}

/// p-adic valuation and unit part: `n = p^v * u` with `p` not dividing `u`.
/// Works on nonzero rationals; the valuation may be negative.
pub fn val_unit(r: &BigRational, p: &BigInt) -> (i64, BigRational) {
    assert!(!r.is_zero());
    let mut v: i64 = 0;
    let mut num = r.numer().clone();
    let mut den = r.denom().clone();
    while (&num % p).is_zero() {
        num /= p;
        v += 1;
    }
    while (&den % p).is_zero() {
        den /= p;
        v -= 1;
    }
    (v, BigRational::new(num, den))
}

/// Residue of a p-adic unit rational mod `m` (for odd `m` or unit denominators):
/// `num * den^{-1} mod m`, with `m` coprime to both.
pub fn unit_mod(r: &BigRational, m: &BigInt) -> BigInt {
    let num = r.numer().mod_floor(m);
    let den = r.denom().mod_floor(m);
    let inv = mod_inverse(&den, m).expect("denominator not invertible");
    (num * inv).mod_floor(m)
}

/// Modular inverse when `gcd(a, m) = 1`.
pub fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(m);
    if !e.gcd.is_one() {
        return None;
    }
    Some(e.x.mod_floor(m))
}

/// All primes dividing `n` (absolute value), sorted.
pub fn prime_support(n: &BigInt) -> Vec<BigInt> {
    factor(n).into_iter().map(|(p, _)| p).collect()
}

/// Sign of an integer as -1, 0, or 1.
pub fn sign_of(n: &BigInt) -> i32 {
    match n.sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}
