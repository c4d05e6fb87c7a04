//! Exact scalars: arbitrary-precision rationals and Gaussian rationals.

use core::fmt::Debug;
use core::ops::Neg;

use alloc::string::String;

use num_bigint::{BigInt, BigUint};
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{Num, One, Signed, Zero};

/// Exact rational number.
pub type Q = BigRational;

/// Exact complex number with rational real and imaginary parts.
pub type Cq = Complex<BigRational>;

/// Arithmetic closed under `+ - * /` with exact equality.
pub trait Field: Num + Clone + Neg<Output = Self> + Debug {}

impl<T: Num + Clone + Neg<Output = T> + Debug> Field for T {}

/// A field carrying a conjugation, used for Hermitian inner products.
pub trait Scalar: Field {
    fn conj(&self) -> Self;
    fn from_rational(q: Q) -> Self;
}

impl Scalar for Q {
    fn conj(&self) -> Self {
        self.clone()
    }
    fn from_rational(q: Q) -> Self {
        q
    }
}

impl Scalar for Cq {
    fn conj(&self) -> Self {
        Complex::conj(self)
    }
    fn from_rational(q: Q) -> Self {
        Complex::new(q, Q::zero())
    }
}

pub fn q(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

pub fn qi(num: i64) -> Q {
    Q::from_integer(BigInt::from(num))
}

pub fn cq(re: Q, im: Q) -> Cq {
    Complex::new(re, im)
}

pub fn cr(re: Q) -> Cq {
    Complex::new(re, Q::zero())
}

pub fn ci(num: i64) -> Cq {
    cr(qi(num))
}

pub fn is_real(z: &Cq) -> bool {
    z.im.is_zero()
}

/// `|z|^2` as an exact rational.
pub fn abs2(z: &Cq) -> Q {
    &z.re * &z.re + &z.im * &z.im
}

/// Hermitian inner product `<u, v> = sum u_i conj(v_i)`.
pub fn inner<C: Scalar>(u: &[C], v: &[C]) -> C {
    u.iter()
        .zip(v)
        .fold(C::zero(), |acc, (a, b)| acc + a.clone() * b.conj())
}

pub fn norm2(v: &[Cq]) -> Q {
    v.iter().map(abs2).fold(Q::zero(), |a, b| a + b)
}

fn biguint_sqrt_exact(n: &BigUint) -> Option<BigUint> {
    let r = n.sqrt();
    if &(&r * &r) == n {
        Some(r)
    } else {
        None
    }
}

/// Exact square root of a nonnegative rational, when it is rational.
pub fn rational_sqrt(x: &Q) -> Option<Q> {
    if x.is_negative() {
        return None;
    }
    let n = biguint_sqrt_exact(&x.numer().magnitude().clone())?;
    let d = biguint_sqrt_exact(&x.denom().magnitude().clone())?;
    Some(Q::new(BigInt::from(n), BigInt::from(d)))
}

/// Canonical `p/q` text with `q >= 1`, always including the denominator.
pub fn format_rational(x: &Q) -> String {
    alloc::format!("{}/{}", x.numer(), x.denom())
}

/// Parse `p/q` or `p` (optional sign, no decimals).
pub fn parse_rational(s: &str) -> Option<Q> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let valid = |t: &str, signed: bool| {
        let body = if signed {
            t.strip_prefix('-').or_else(|| t.strip_prefix('+')).unwrap_or(t)
        } else {
            t
        };
        !body.is_empty() && body.bytes().all(|b| b.is_ascii_digit())
    };
    if !valid(n, true) || !valid(d, false) {
        return None;
    }
    let n: BigInt = n.trim_start_matches('+').parse().ok()?;
    let d: BigInt = d.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(Q::new(n, d))
}

pub fn two_pow(e: u32) -> Q {
    Q::from_integer(BigInt::one() << e as usize)
}
