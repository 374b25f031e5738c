//! Capped-precision p-adic integers, Teichmuller lifts, the angle projection
//! onto 1 + pZ_p, log/exp, and evaluation of weight characters.
//!
//! The precision model is absolute: a [`PadicInt`] is a residue known mod
//! p^N. Arithmetic closes at the minimum precision of the operands, division
//! by a unit preserves precision, and division by p^v lowers absolute
//! precision by v. Nothing ever inflates precision silently.
//!
//! p = 2 is rejected at construction.

use crate::error::{Error, Result};
use crate::rational::{self, Rational};
use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use std::fmt;

/// p-adic valuation at capped precision: exact if below the cap, otherwise
/// only the lower bound "at least N" is known.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Valuation {
    Finite(u32),
    AtLeast(u32),
}

impl Valuation {
    /// The best provable lower bound.
    pub fn lower_bound(&self) -> u32 {
        match *self {
            Valuation::Finite(v) | Valuation::AtLeast(v) => v,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Valuation::Finite(_))
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::AtLeast(v) => write!(f, ">= {v}"),
        }
    }
}

/// Element of Z_p known modulo p^precision.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PadicInt {
    p: u64,
    precision: u32,
    residue: BigUint, // canonical representative in [0, p^precision)
}

pub fn check_odd_prime(p: u64) -> Result<()> {
    if p == 2 || !rational::is_prime_u64(p) {
        return Err(Error::BadPrime(p));
    }
    Ok(())
}

pub fn p_power(p: u64, n: u32) -> BigUint {
    BigUint::from(p).pow(n)
}

impl PadicInt {
    pub fn new(p: u64, precision: u32, value: impl Into<BigInt>) -> Result<Self> {
        check_odd_prime(p)?;
        if precision == 0 {
            return Err(Error::Precondition("precision must be >= 1".into()));
        }
        let modulus = BigInt::from(p_power(p, precision));
        let mut r = value.into() % &modulus;
        if r.is_negative() {
            r += &modulus;
        }
        Ok(PadicInt {
            p,
            precision,
            residue: r.to_biguint().unwrap(),
        })
    }

    pub fn zero(p: u64, precision: u32) -> Self {
        PadicInt::new(p, precision, 0).expect("valid prime")
    }

    pub fn one(p: u64, precision: u32) -> Self {
        PadicInt::new(p, precision, 1).expect("valid prime")
    }

    /// Embed a rational with v_p(denominator) = 0.
    pub fn from_rational(x: &Rational, p: u64, precision: u32) -> Result<Self> {
        let modulus = p_power(p, precision);
        let den = x
            .denom()
            .to_biguint()
            .ok_or_else(|| Error::Precondition("denominator must be positive".into()))?;
        let den_inv =
            rational::modinv_biguint(&(den % &modulus), &modulus).ok_or(Error::NotIntegral {
                valuation: rational::rational_valuation(x, p).unwrap_or(0),
            })?;
        let num = PadicInt::new(p, precision, x.numer().clone())?;
        let den = PadicInt {
            p,
            precision,
            residue: den_inv,
        };
        Ok(&num * &den)
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn residue(&self) -> &BigUint {
        &self.residue
    }

    pub fn modulus(&self) -> BigUint {
        p_power(self.p, self.precision)
    }

    pub fn is_zero_at_precision(&self) -> bool {
        self.residue.is_zero()
    }

    pub fn valuation(&self) -> Valuation {
        if self.residue.is_zero() {
            return Valuation::AtLeast(self.precision);
        }
        Valuation::Finite(rational::int_valuation(
            &BigInt::from(self.residue.clone()),
            self.p,
        ) as u32)
    }

    pub fn is_unit(&self) -> bool {
        !(&self.residue % self.p).is_zero()
    }

    /// Truncate to a lower precision. Raising precision is not possible.
    pub fn with_precision(&self, precision: u32) -> Result<Self> {
        if precision > self.precision {
            return Err(Error::PrecisionExhausted(format!(
                "cannot raise precision from {} to {}",
                self.precision, precision
            )));
        }
        PadicInt::new(self.p, precision, BigInt::from(self.residue.clone()))
    }

    fn align(&self, other: &Self) -> Result<(Self, Self)> {
        if self.p != other.p {
            return Err(Error::Mismatch(format!(
                "primes differ: {} vs {}",
                self.p, other.p
            )));
        }
        let n = self.precision.min(other.precision);
        Ok((self.with_precision(n)?, other.with_precision(n)?))
    }

    pub fn inverse(&self) -> Result<Self> {
        let inv = rational::modinv_biguint(&self.residue, &self.modulus())
            .ok_or_else(|| Error::NotAUnit(self.to_string()))?;
        Ok(PadicInt {
            p: self.p,
            precision: self.precision,
            residue: inv,
        })
    }

    /// Division, handling p-power denominators: dividing by p^v * unit lowers
    /// absolute precision by v and requires the numerator divisible by p^v.
    pub fn div(&self, other: &Self) -> Result<Self> {
        let (a, b) = self.align(other)?;
        match b.valuation() {
            Valuation::AtLeast(n) => Err(Error::IndistinguishableFromZero(n)),
            Valuation::Finite(0) => Ok(&a * &b.inverse()?),
            Valuation::Finite(v) => {
                let a = a.div_exact_p_power(v)?;
                let b_unit = b.div_exact_p_power(v)?;
                Ok(&a * &b_unit.inverse()?)
            }
        }
    }

    /// Exact division by p^v; errors if the representative is not divisible.
    /// Output precision drops by v.
    pub fn div_exact_p_power(&self, v: u32) -> Result<Self> {
        if v == 0 {
            return Ok(self.clone());
        }
        if v >= self.precision {
            return Err(Error::PrecisionExhausted(format!(
                "dividing by p^{v} at precision {}",
                self.precision
            )));
        }
        let pv = p_power(self.p, v);
        if !(&self.residue % &pv).is_zero() {
            return Err(Error::InexactDivision {
                num: self.to_string(),
                den: format!("{}^{v}", self.p),
            });
        }
        Ok(PadicInt {
            p: self.p,
            precision: self.precision - v,
            residue: &self.residue / &pv,
        })
    }

    /// Multiply by p^v. The precision cap rises with the valuation, so no
    /// information is invented: the product is genuinely known mod p^(N+v).
    pub fn mul_p_power(&self, v: u32) -> Self {
        PadicInt {
            p: self.p,
            precision: self.precision + v,
            residue: &self.residue * p_power(self.p, v),
        }
    }

    pub fn pow_u64(&self, e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = PadicInt::one(self.p, self.precision);
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Integer power with negative exponents allowed for units.
    pub fn pow_i64(&self, e: i64) -> Result<Self> {
        if e >= 0 {
            Ok(self.pow_u64(e as u64))
        } else {
            Ok(self.inverse()?.pow_u64(e.unsigned_abs()))
        }
    }

    /// Digit expansion a_0 + a_1*p + ... as a display string.
    pub fn digit_string(&self) -> String {
        let mut digits = Vec::with_capacity(self.precision as usize);
        let mut r = self.residue.clone();
        let p = BigUint::from(self.p);
        for _ in 0..self.precision {
            let d = (&r % &p).to_u64().unwrap();
            digits.push(d);
            r /= &p;
        }
        let mut parts = Vec::new();
        for (i, d) in digits.iter().enumerate() {
            if *d == 0 {
                continue;
            }
            match i {
                0 => parts.push(format!("{d}")),
                1 => parts.push(format!("{d}*{}", self.p)),
                _ => parts.push(format!("{d}*{}^{i}", self.p)),
            }
        }
        if parts.is_empty() {
            parts.push("0".into());
        }
        format!("{} + O({}^{})", parts.join(" + "), self.p, self.precision)
    }
}

impl fmt::Display for PadicInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {}^{})", self.residue, self.p, self.precision)
    }
}

impl Serialize for PadicInt {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("PadicInt", 3)?;
        st.serialize_field("p", &self.p)?;
        st.serialize_field("N", &self.precision)?;
        st.serialize_field("residue", &self.residue.to_string())?;
        st.end()
    }
}

macro_rules! padic_binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl std::ops::$trait for &PadicInt {
            type Output = PadicInt;
            fn $method(self, rhs: &PadicInt) -> PadicInt {
                let (a, b) = self.align(rhs).expect("mismatched primes");
                let m = a.modulus();
                let r = (BigInt::from(a.residue) $op BigInt::from(b.residue))
                    % BigInt::from(m.clone());
                let r = if r.is_negative() { r + BigInt::from(m) } else { r };
                PadicInt { p: a.p, precision: a.precision, residue: r.to_biguint().unwrap() }
            }
        }
    };
}

padic_binop!(Add, add, +);
padic_binop!(Sub, sub, -);
padic_binop!(Mul, mul, *);

impl std::ops::Neg for &PadicInt {
    type Output = PadicInt;
    fn neg(self) -> PadicInt {
        &PadicInt::zero(self.p, self.precision) - self
    }
}

/// Element of Q_p: a [`PadicInt`] divided by an explicit power of p.
///
/// Used where values can leave Z_p (trivial-branch L-values, solver output).
#[derive(Debug, Clone)]
pub struct PadicNumber {
    num: PadicInt,
    shift: u32, // value = num / p^shift
}

impl PadicNumber {
    pub fn from_int(num: PadicInt) -> Self {
        PadicNumber { num, shift: 0 }
    }

    pub fn new(num: PadicInt, shift: u32) -> Self {
        PadicNumber { num, shift }.normalized()
    }

    /// Embed any rational; the p-part of the denominator becomes the shift.
    pub fn from_rational(x: &Rational, p: u64, precision: u32) -> Result<Self> {
        let vden = rational::int_valuation(x.denom(), p) as u32;
        let scaled = x * Rational::from(BigInt::from(p_power(p, vden)));
        let num = PadicInt::from_rational(&scaled, p, precision + vden)?;
        Ok(PadicNumber::new(num, vden))
    }

    fn normalized(mut self) -> Self {
        while self.shift > 0 {
            match self.num.div_exact_p_power(1) {
                Ok(n) => {
                    self.num = n;
                    self.shift -= 1;
                }
                Err(_) => break,
            }
        }
        self
    }

    pub fn prime(&self) -> u64 {
        self.num.prime()
    }

    pub fn shift(&self) -> u32 {
        self.shift
    }

    pub fn numerator(&self) -> &PadicInt {
        &self.num
    }

    /// Valuation as a signed integer; None if indistinguishable from zero.
    pub fn valuation(&self) -> Option<i64> {
        match self.num.valuation() {
            Valuation::Finite(v) => Some(v as i64 - self.shift as i64),
            Valuation::AtLeast(_) => None,
        }
    }

    pub fn is_integral(&self) -> bool {
        match self.valuation() {
            Some(v) => v >= 0,
            None => true,
        }
    }

    pub fn is_zero_at_precision(&self) -> bool {
        self.num.is_zero_at_precision()
    }

    /// Convert to a p-adic integer, erroring on negative valuation.
    pub fn to_padic_int(&self) -> Result<PadicInt> {
        if self.shift == 0 {
            return Ok(self.num.clone());
        }
        match self.valuation() {
            Some(v) if v < 0 => Err(Error::NotIntegral { valuation: v }),
            _ => self.num.div_exact_p_power(self.shift),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        PadicNumber::new(&self.num * &other.num, self.shift + other.shift)
    }

    pub fn mul_int(&self, other: &PadicInt) -> Self {
        PadicNumber::new(&self.num * other, self.shift)
    }

    pub fn neg(&self) -> Self {
        PadicNumber {
            num: -&self.num,
            shift: self.shift,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let s = self.shift.max(other.shift);
        let a = self.num.mul_p_power(s - self.shift);
        let b = other.num.mul_p_power(s - other.shift);
        PadicNumber::new(&a + &b, s)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn inverse(&self) -> Result<Self> {
        match self.num.valuation() {
            Valuation::AtLeast(n) => Err(Error::IndistinguishableFromZero(n)),
            Valuation::Finite(v) => {
                let unit = self.num.div_exact_p_power(v)?;
                let inv = unit.inverse()?;
                // 1/(u p^(v - shift)) = u^(-1) p^(shift - v)
                if self.shift >= v {
                    Ok(PadicNumber::from_int(inv.mul_p_power(self.shift - v)))
                } else {
                    Ok(PadicNumber::new(inv, v - self.shift))
                }
            }
        }
    }

    /// Dividing by p^k raises the shift.
    pub fn div_p_power(&self, k: u32) -> Self {
        PadicNumber::new(self.num.clone(), self.shift + k)
    }

    pub fn with_numerator_precision(&self, precision: u32) -> Result<Self> {
        Ok(PadicNumber {
            num: self.num.with_precision(precision)?,
            shift: self.shift,
        })
    }
}

impl fmt::Display for PadicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.shift == 0 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{} / {}^{}", self.num, self.num.prime(), self.shift)
        }
    }
}

impl Serialize for PadicNumber {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("PadicNumber", 2)?;
        st.serialize_field("numerator", &self.num)?;
        st.serialize_field("shift", &self.shift)?;
        st.end()
    }
}

/// Teichmuller lift: the unique (p-1)-th root of unity congruent to a mod p,
/// computed by iterating x -> x^p to stabilization.
pub fn teichmuller(p: u64, a: u64, precision: u32) -> Result<PadicInt> {
    check_odd_prime(p)?;
    if a % p == 0 {
        return Err(Error::NotAUnit(format!("{a} mod {p}")));
    }
    let mut x = PadicInt::new(p, precision, BigInt::from(a))?;
    for _ in 0..precision {
        let next = x.pow_u64(p);
        if next == x {
            break;
        }
        x = next;
    }
    Ok(x)
}

/// Teichmuller character applied to a unit: omega(x) depends only on x mod p.
pub fn teichmuller_of(x: &PadicInt) -> Result<PadicInt> {
    let a = (x.residue() % x.prime()).to_u64().unwrap();
    teichmuller(x.prime(), a, x.precision())
}

/// Angle projection <x> = x * omega(x)^(-1) in 1 + pZ_p.
pub fn angle(x: &PadicInt) -> Result<PadicInt> {
    if !x.is_unit() {
        return Err(Error::NotAUnit(x.to_string()));
    }
    let w = teichmuller_of(x)?;
    Ok(x * &w.inverse()?)
}

/// p-adic logarithm on 1 + pZ_p. For p odd there is no precision loss:
/// log x is determined mod p^N by x mod p^N, and v(log x) = v(x - 1).
pub fn padic_log(x: &PadicInt) -> Result<PadicInt> {
    let p = x.prime();
    let n = x.precision();
    let u0 = x - &PadicInt::one(p, n);
    match u0.valuation() {
        Valuation::AtLeast(_) => return Ok(PadicInt::zero(p, n)),
        Valuation::Finite(0) => {
            return Err(Error::Precondition(format!(
                "padic_log requires x = 1 mod p, got {x}"
            )))
        }
        Valuation::Finite(_) => {}
    }
    // guard digits for the divisions by i; v(u^i/i) >= i - log_p(i)
    let max_i = 2 * n as u64 + 8;
    let guard = ((max_i as f64).ln() / (p as f64).ln()).ceil() as u32 + 2;
    let w = n + guard;
    let u = PadicInt::new(p, w, BigInt::from(u0.residue().clone()))?;
    let mut acc = PadicInt::zero(p, w);
    let mut pow = u.clone();
    let mut i = 1u64;
    loop {
        let term = pow.div(&PadicInt::new(p, w, BigInt::from(i))?)?;
        let signed = if i % 2 == 1 { term } else { -&term };
        let m = acc.precision().min(signed.precision());
        acc = &acc.with_precision(m)? + &signed.with_precision(m)?;
        // v(u^i/i) >= i - log_p(i); once that bound clears n we can stop
        let log_term = ((i as f64).ln() / (p as f64).ln()).floor() as u64;
        if i >= n as u64 + log_term + 1 {
            break;
        }
        i += 1;
        pow = &pow * &u;
    }
    acc.with_precision(n)
}

/// p-adic exponential on pZ_p. Inverse to [`padic_log`]; for p odd the output
/// is determined mod p^N by the input mod p^N.
pub fn padic_exp(y: &PadicInt) -> Result<PadicInt> {
    let p = y.prime();
    let n = y.precision();
    match y.valuation() {
        Valuation::Finite(0) => {
            return Err(Error::Precondition(
                "padic_exp requires valuation >= 1".into(),
            ))
        }
        Valuation::AtLeast(_) => return Ok(PadicInt::one(p, n)),
        Valuation::Finite(_) => {}
    }
    // v(y^i / i!) >= i - (i-1)/(p-1) > 0, strictly increasing for p odd
    let max_i = 2 * n as u64 + 8;
    let guard = (max_i / (p - 1)) as u32 + 2;
    let w = n + guard;
    let y = PadicInt::new(p, w, BigInt::from(y.residue().clone()))?;
    let mut acc = PadicInt::one(p, w);
    let mut term = PadicInt::one(p, w);
    let mut i = 1u64;
    loop {
        term = &term * &y;
        term = term.div(&PadicInt::new(p, w, BigInt::from(i))?)?;
        let m = acc.precision().min(term.precision());
        acc = &acc.with_precision(m)? + &term.with_precision(m)?;
        let bound = i - (i - 1) / (p - 1);
        if bound > n as u64 {
            break;
        }
        i += 1;
    }
    acc.with_precision(n)
}

/// <c>^s = exp(s * log <c>) for a unit c and s in Z_p; agrees with repeated
/// multiplication for integer s.
pub fn angle_power(c: &PadicInt, s: &PadicInt) -> Result<PadicInt> {
    let a = angle(c)?;
    let l = padic_log(&a)?;
    padic_exp(&(&l * s))
}

/// Same with a plain integer exponent (exact powering of the angle).
pub fn angle_power_int(c: &PadicInt, s: i64) -> Result<PadicInt> {
    angle(c)?.pow_i64(s)
}

/// Weight character k = (s, u) in X = Z_p x Z/(p-1): a |-> omega(a)^u <a>^s.
#[derive(Debug, Clone)]
pub struct WeightCharacter {
    s: PadicInt,
    u: u64,
    /// Set when s was given as an integer; enables exact evaluation routes.
    integer_s: Option<i64>,
}

impl WeightCharacter {
    pub fn new(s: PadicInt, u: u64) -> Self {
        let u = u % (s.prime() - 1);
        WeightCharacter {
            s,
            u,
            integer_s: None,
        }
    }

    pub fn from_integers(s: i64, u: u64, p: u64, precision: u32) -> Result<Self> {
        let sp = PadicInt::new(p, precision, BigInt::from(s))?;
        Ok(WeightCharacter {
            s: sp,
            u: u % (p - 1),
            integer_s: Some(s),
        })
    }

    /// The diagonal integer weight k <-> (k, k mod p-1).
    pub fn from_integer_weight(k: i64, p: u64, precision: u32) -> Result<Self> {
        let u = k.rem_euclid(p as i64 - 1) as u64;
        Self::from_integers(k, u, p, precision)
    }

    pub fn s(&self) -> &PadicInt {
        &self.s
    }

    pub fn u(&self) -> u64 {
        self.u
    }

    pub fn prime(&self) -> u64 {
        self.s.prime()
    }

    pub fn integer_s(&self) -> Option<i64> {
        self.integer_s
    }

    pub fn is_zero_weight(&self) -> bool {
        self.u == 0 && self.s.is_zero_at_precision()
    }

    /// True if the image of k = (s, u) in X_{m+1} = Z/(p-1)p^m is zero.
    pub fn vanishes_in_level(&self, m: u32) -> bool {
        if self.u != 0 {
            return false;
        }
        if m == 0 {
            return true;
        }
        match self.s.with_precision(m.min(self.s.precision())) {
            Ok(t) => t.is_zero_at_precision(),
            Err(_) => false,
        }
    }

    /// k - 1 as a weight character (both coordinates shift).
    pub fn minus_one(&self) -> Self {
        let p = self.prime();
        let one = PadicInt::one(p, self.s.precision());
        WeightCharacter {
            s: &self.s - &one,
            u: (self.u + p - 2) % (p - 1),
            integer_s: self.integer_s.map(|k| k - 1),
        }
    }

    /// Evaluate at a unit a: omega(a)^u * <a>^s.
    pub fn eval(&self, a: &PadicInt) -> Result<PadicInt> {
        if !a.is_unit() {
            return Err(Error::NotAUnit(a.to_string()));
        }
        let w = teichmuller_of(a)?.pow_u64(self.u);
        let ang = match self.integer_s {
            Some(k) => angle_power_int(a, k)?,
            None => angle_power(a, &self.s)?,
        };
        Ok(&w * &ang)
    }

    pub fn eval_u64(&self, a: u64) -> Result<PadicInt> {
        self.eval(&PadicInt::new(
            self.prime(),
            self.s.precision(),
            BigInt::from(a),
        )?)
    }
}

impl Serialize for WeightCharacter {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("WeightCharacter", 2)?;
        st.serialize_field("s", &self.s)?;
        st.serialize_field("u", &self.u)?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};

    fn z(p: u64, n: u32, v: i64) -> PadicInt {
        PadicInt::new(p, n, BigInt::from(v)).unwrap()
    }

    #[test]
    fn rejects_p_two_and_composites() {
        assert!(PadicInt::new(2, 5, 1).is_err());
        assert!(PadicInt::new(15, 5, 1).is_err());
        assert!(PadicInt::new(5, 5, 1).is_ok());
    }

    #[test]
    fn valuation_examples() {
        assert_eq!(z(5, 10, 75).valuation(), Valuation::Finite(2));
        assert_eq!(z(5, 10, 3).valuation(), Valuation::Finite(0));
        assert_eq!(z(5, 10, 0).valuation(), Valuation::AtLeast(10));
        assert_eq!(format!("{}", z(5, 10, 0).valuation()), ">= 10");
    }

    #[test]
    fn arithmetic_precision_rules() {
        let a = z(5, 10, 7);
        let b = z(5, 4, 3);
        assert_eq!((&a + &b).precision(), 4);
        assert_eq!((&a * &b).precision(), 4);
        // division by a unit preserves (minimum) precision
        assert_eq!(a.div(&b).unwrap().precision(), 4);
        // division by p^2 lowers precision by 2
        let c = z(5, 10, 25);
        assert!(a.div(&c).is_err()); // 7 not divisible by 25
        let d = z(5, 10, 50);
        let q = d.div(&c).unwrap();
        assert_eq!(q.precision(), 8);
        assert_eq!(q.residue(), &BigUint::from(2u32));
        // truncation works, inflation errors
        assert!(a.with_precision(3).is_ok());
        assert!(b.with_precision(11).is_err());
    }

    #[test]
    fn teichmuller_examples() {
        assert_eq!(teichmuller(5, 1, 8).unwrap(), PadicInt::one(5, 8));
        assert_eq!(teichmuller(5, 2, 2).unwrap(), z(5, 2, 7));
        assert_eq!(teichmuller(5, 4, 1).unwrap(), z(5, 1, 4));
        assert!(teichmuller(5, 10, 3).is_err());
    }

    #[test]
    fn teichmuller_properties() {
        // omega(a)^(p-1) = 1 and omega(ab) = omega(a) omega(b) for units up to p^2
        for &p in &[5u64, 7, 11] {
            let n = 6;
            let units: Vec<u64> = (1..=p * p).filter(|a| a % p != 0).collect();
            for &a in &units {
                let w = teichmuller(p, a % p, n).unwrap();
                assert_eq!(w.pow_u64(p - 1), PadicInt::one(p, n), "omega({a})^(p-1), p={p}");
            }
            for &a in units.iter().step_by(3) {
                for &b in units.iter().step_by(5) {
                    let wa = teichmuller(p, a % p, n).unwrap();
                    let wb = teichmuller(p, b % p, n).unwrap();
                    let wab = teichmuller(p, (a * b) % p, n).unwrap();
                    assert_eq!(wab, &wa * &wb, "omega multiplicative at p={p}");
                }
            }
        }
    }

    #[test]
    fn angle_examples() {
        assert_eq!(angle(&z(5, 8, 1)).unwrap(), PadicInt::one(5, 8));
        assert_eq!(angle(&z(5, 2, 2)).unwrap(), z(5, 2, 11));
        // a in 1 + pZ_p is fixed
        assert_eq!(angle(&z(5, 6, 6)).unwrap(), z(5, 6, 6));
        assert!(angle(&z(5, 6, 10)).is_err());
    }

    #[test]
    fn log_examples() {
        let p = 5;
        assert!(padic_log(&z(p, 8, 1)).unwrap().is_zero_at_precision());
        let l = padic_log(&z(p, 8, 6)).unwrap();
        assert_eq!(l.valuation(), Valuation::Finite(1));
        assert_eq!(l.precision(), 8);
        // series oracle: partial sums of log(1+5) over exact rationals
        let mut acc = Rational::zero();
        for i in 1..25i64 {
            let term = rat(5, 1).pow(i as i32) / rat_int(i);
            if i % 2 == 1 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        let expect = PadicNumber::from_rational(&acc, 5, 6)
            .unwrap()
            .to_padic_int()
            .unwrap();
        assert_eq!(
            l.with_precision(6).unwrap(),
            expect.with_precision(6).unwrap()
        );
        assert!(padic_log(&z(p, 8, 7)).is_err());
    }

    #[test]
    fn log_is_homomorphism() {
        for &p in &[5u64, 7] {
            let n = 10;
            for a in [1 + p, 1 + 3 * p, 1 + p * p, 1 + 7 * p] {
                let x = z(p, n, a as i64);
                let lx = padic_log(&x).unwrap();
                let lx2 = padic_log(&(&x * &x)).unwrap();
                assert_eq!(lx2, &lx + &lx, "log(x^2) = 2 log x at p={p}, a={a}");
            }
        }
    }

    #[test]
    fn exp_examples() {
        let p = 5;
        assert_eq!(padic_exp(&z(p, 8, 0)).unwrap(), PadicInt::one(p, 8));
        assert_eq!(padic_exp(&z(p, 2, 5)).unwrap(), z(p, 2, 6));
        assert!(padic_exp(&z(p, 8, 3)).is_err());
    }

    #[test]
    fn exp_log_inverse_pair() {
        for &p in &[5u64, 7, 11] {
            let n = 12;
            for a in [1 + p, 1 + 2 * p, 1 + p * p + 3 * p] {
                let x = z(p, n, a as i64);
                let y = padic_exp(&padic_log(&x).unwrap()).unwrap();
                assert_eq!(x, y, "exp(log x) = x at p={p}, a={a}");
            }
            for b in [p, 3 * p, p * p] {
                let y = z(p, n, b as i64);
                let x = padic_log(&padic_exp(&y).unwrap()).unwrap();
                assert_eq!(x, y, "log(exp y) = y at p={p}, b={b}");
            }
        }
    }

    #[test]
    fn angle_power_examples() {
        let c = z(5, 2, 2);
        assert_eq!(angle_power(&c, &z(5, 2, 0)).unwrap(), PadicInt::one(5, 2));
        assert_eq!(angle_power(&c, &z(5, 2, 1)).unwrap(), z(5, 2, 11));
        // <2>^4 = 11^4 = 16 mod 25; exp/log route matches the power oracle
        let via_series = angle_power(&c, &z(5, 2, 4)).unwrap();
        let via_powers = angle_power_int(&c, 4).unwrap();
        assert_eq!(via_series, via_powers);
        assert_eq!(via_series, z(5, 2, 16));
    }

    #[test]
    fn angle_power_additivity() {
        let p = 7;
        let n = 9;
        let c = z(p, n, 3);
        for (s, t) in [(2i64, 9), (13, 5), (100, 3)] {
            let ps = angle_power(&c, &z(p, n, s)).unwrap();
            let pt = angle_power(&c, &z(p, n, t)).unwrap();
            let pst = angle_power(&c, &z(p, n, s + t)).unwrap();
            assert_eq!(pst, &ps * &pt);
        }
    }

    #[test]
    fn weight_eval_examples() {
        let p = 5;
        let k0 = WeightCharacter::from_integers(0, 0, p, 6).unwrap();
        for a in [1u64, 2, 3, 7, 11] {
            assert_eq!(k0.eval_u64(a).unwrap(), PadicInt::one(p, 6));
        }
        let k = WeightCharacter::from_integers(3, 2, p, 6).unwrap();
        assert_eq!(k.eval_u64(1).unwrap(), PadicInt::one(p, 6));
        // diagonal integer weight 3 acts as a^3
        let k3 = WeightCharacter::from_integer_weight(3, p, 2).unwrap();
        assert_eq!(k3.eval_u64(2).unwrap(), z(p, 2, 8));
    }

    #[test]
    fn weight_eval_matches_plain_power() {
        for &p in &[5u64, 7] {
            let n = 8;
            for k in [2i64, 5, 10] {
                let kc = WeightCharacter::from_integer_weight(k, p, n).unwrap();
                for a in [2u64, 3, p + 1, 2 * p + 3] {
                    let lhs = kc.eval_u64(a).unwrap();
                    let rhs = z(p, n, a as i64).pow_u64(k as u64);
                    assert_eq!(lhs, rhs, "a^k for a={a}, k={k}, p={p}");
                }
            }
        }
    }

    #[test]
    fn padic_number_basics() {
        let x = PadicNumber::from_rational(&rat(1, 3), 5, 4).unwrap();
        assert!(x.is_integral());
        let xi = x.to_padic_int().unwrap();
        assert_eq!((&xi * &z(5, 4, 3)), PadicInt::one(5, 4));

        let y = PadicNumber::from_rational(&rat(1, 5), 5, 4).unwrap();
        assert_eq!(y.valuation(), Some(-1));
        assert!(y.to_padic_int().is_err());

        let ten = PadicNumber::from_rational(&rat_int(10), 5, 4).unwrap();
        let two = y.mul(&ten);
        assert_eq!(two.valuation(), Some(0));
        // cancelling the p costs one digit of absolute precision
        assert_eq!(two.to_padic_int().unwrap(), z(5, 3, 2));

        let inv = y.inverse().unwrap();
        assert_eq!(inv.valuation(), Some(1));
        assert!(PadicNumber::from_rational(&rat(1, 3), 5, 4)
            .unwrap()
            .sub(&x)
            .is_zero_at_precision());
    }

    #[test]
    fn weight_vanishing_gate() {
        let p = 5;
        let k = WeightCharacter::from_integers(4, 0, p, 8).unwrap();
        assert!(k.vanishes_in_level(0)); // u = 0: image in X_1 = Z/(p-1) is 0
        assert!(!k.vanishes_in_level(1)); // 4 != 0 mod 5
        let k2 = WeightCharacter::from_integers(4, 2, p, 8).unwrap();
        assert!(!k2.vanishes_in_level(0));
    }

    #[test]
    fn serialization_shape() {
        let v = serde_json::to_value(z(5, 3, 17)).unwrap();
        assert_eq!(v["p"], 5);
        assert_eq!(v["N"], 3);
        assert_eq!(v["residue"], "17");
    }

    #[test]
    fn digit_string_rendering() {
        let x = PadicNumber::from_rational(&rat(1, 3), 5, 3)
            .unwrap()
            .to_padic_int()
            .unwrap();
        // 1/3 = 2 + 3*5 + 1*25 + ... (3*42 = 126 = 1 + 125)
        assert_eq!(x.digit_string(), "2 + 3*5 + 1*5^2 + O(5^3)");
        assert!(PadicInt::one(5, 2).digit_string().starts_with('1'));
    }
}
