//! Arbitrary-precision rational arithmetic and the Bernoulli machinery behind
//! every classical L-value.
//!
//! `Rational` is `num_rational::BigRational`, which already maintains the
//! invariants we need (always in lowest terms, positive denominator, zero is
//! 0/1). Serialization uses the canonical `"num/den"` form, see
//! [`rational_to_string`].
//!
//! Convention: `B_n := B_n(0)` from the generating function
//! `t*e^(Xt)/(e^t - 1)`, so `B_1 = -1/2`. The recurrence
//! `sum_{j=0}^{n} C(n+1, j) B_j = 0`, `B_0 = 1` produces exactly this
//! normalization.

use crate::error::{Error, Result};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::sync::Mutex;
use std::sync::OnceLock;

pub type Rational = BigRational;

/// Shorthand for small rationals in code and tests.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_int(n: i64) -> Rational {
    Rational::from(BigInt::from(n))
}

/// Canonical string form `num/den`, lowest terms, `0/1` for zero.
pub fn rational_to_string(x: &Rational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

pub fn rational_from_string(s: &str) -> Result<Rational> {
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let num: BigInt = num
        .trim()
        .parse()
        .map_err(|_| Error::Usage(format!("bad rational {s:?}")))?;
    let den: BigInt = den
        .trim()
        .parse()
        .map_err(|_| Error::Usage(format!("bad rational {s:?}")))?;
    if den.is_zero() {
        return Err(Error::Usage(format!("zero denominator in {s:?}")));
    }
    Ok(Rational::new(num, den))
}

/// p-adic valuation of a nonzero integer.
pub fn int_valuation(n: &BigInt, p: u64) -> u64 {
    assert!(!n.is_zero());
    let p = BigInt::from(p);
    let mut n = n.abs();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if r.is_zero() {
            v += 1;
            n = q;
        } else {
            return v;
        }
    }
}

/// p-adic valuation of a rational; `None` means +infinity (the value is 0).
pub fn rational_valuation(x: &Rational, p: u64) -> Option<i64> {
    if x.is_zero() {
        return None;
    }
    Some(int_valuation(x.numer(), p) as i64 - int_valuation(x.denom(), p) as i64)
}

/// Fractional part {x} in [0, 1) with x - {x} an integer.
pub fn fractional_part(x: &Rational) -> Rational {
    x - x.floor()
}

/// Binomial coefficient C(n, k) as an exact integer.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

fn bernoulli_table() -> &'static Mutex<Vec<Rational>> {
    static TABLE: OnceLock<Mutex<Vec<Rational>>> = OnceLock::new();
    TABLE.get_or_init(|| Mutex::new(vec![Rational::one(), rat(-1, 2)]))
}

/// The n-th Bernoulli number, B_0 = 1, B_1 = -1/2, B_2 = 1/6, ...
///
/// Computed by the recurrence `sum_{j<=n} C(n+1, j) B_j = 0` over exact
/// rationals and memoized behind a mutex.
pub fn bernoulli_number(n: u64) -> Rational {
    if n >= 3 && n % 2 == 1 {
        return Rational::zero();
    }
    let mut table = bernoulli_table().lock().unwrap();
    while (table.len() as u64) <= n {
        let m = table.len() as u64; // computing B_m
        let mut acc = Rational::zero();
        for (j, b) in table.iter().enumerate() {
            if !b.is_zero() {
                acc += Rational::from(binomial(m + 1, j as u64)) * b;
            }
        }
        let b_m = -acc / Rational::from(BigInt::from(m + 1));
        table.push(b_m);
    }
    table[n as usize].clone()
}

/// Polynomial with exact rational coefficients, index = degree.
///
/// Trailing zero coefficients are trimmed; the zero polynomial is the empty
/// list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalPolynomial {
    coeffs: Vec<Rational>,
}

impl RationalPolynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        RationalPolynomial { coeffs }
    }

    pub fn zero() -> Self {
        RationalPolynomial { coeffs: vec![] }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }
}

/// The n-th Bernoulli polynomial B_n(X) = sum_i C(n, i) B_i X^(n-i).
pub fn bernoulli_polynomial(n: u64) -> RationalPolynomial {
    let mut coeffs = vec![Rational::zero(); n as usize + 1];
    for i in 0..=n {
        // coefficient of X^(n-i)
        coeffs[(n - i) as usize] = Rational::from(binomial(n, i)) * bernoulli_number(i);
    }
    RationalPolynomial::new(coeffs)
}

/// Free-function Horner evaluation, mirroring the polynomial method.
pub fn eval_poly(p: &RationalPolynomial, x: &Rational) -> Rational {
    p.eval(x)
}

/// Divisor power sum sigma_k(n) = sum_{d | n} d^k.
pub fn sigma_power(n: u64, k: u64) -> BigInt {
    assert!(n >= 1, "sigma_power requires n >= 1");
    let mut acc = BigInt::zero();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            acc += BigInt::from(d).pow(k as u32);
            let e = n / d;
            if e != d {
                acc += BigInt::from(e).pow(k as u32);
            }
        }
        d += 1;
    }
    acc
}

/// Divisor power sum restricted to divisors prime to p.
pub fn sigma_power_prime_to_p(n: u64, k: u64, p: u64) -> BigInt {
    assert!(n >= 1);
    let mut acc = BigInt::zero();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            if d % p != 0 {
                acc += BigInt::from(d).pow(k as u32);
            }
            let e = n / d;
            if e != d && e % p != 0 {
                acc += BigInt::from(e).pow(k as u32);
            }
        }
        d += 1;
    }
    acc
}

/// Deterministic primality check for u64 (trial division; inputs are small).
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Product of the primes l with (l-1) | n; equals the denominator of B_n for
/// even n (von Staudt-Clausen).
pub fn von_staudt_clausen_denominator(n: u64) -> Result<BigInt> {
    if n == 0 || n % 2 != 0 {
        return Err(Error::Precondition(format!(
            "von Staudt-Clausen denominator needs positive even n, got {n}"
        )));
    }
    let mut acc = BigInt::one();
    for l in 2..=(n + 1) {
        if n % (l - 1) == 0 && is_prime_u64(l) {
            acc *= BigInt::from(l);
        }
    }
    Ok(acc)
}

/// All Bernoulli numbers B_0..B_n as p-adic approximations mod p^prec.
///
/// Same recurrence as [`bernoulli_number`] but capped mod p^W, which makes
/// n in the thousands cheap. Entry i is `(residue, shift, known_prec)` with
/// B_i = residue / p^shift known mod p^(known_prec - shift); shift <= 1 by
/// von Staudt-Clausen. Divisions by n+1 cost v_p(n+1) digits of absolute
/// precision, so `prec` should carry a margin over the target.
pub fn bernoulli_mod_p_power(n_max: u64, p: u64, prec: u32) -> Vec<CappedRational> {
    let modulus = BigUint::from(p).pow(prec);
    let n_max = n_max as usize;
    // scaled[j] = p * B_j mod p^prec (integral by von Staudt-Clausen)
    let mut scaled: Vec<BigUint> = Vec::with_capacity(n_max + 1);
    let mut known: Vec<u32> = Vec::with_capacity(n_max + 1);
    scaled.push(BigUint::from(p)); // p * B_0
    known.push(prec);
    // Pascal row for C(m+1, j), updated in place per m.
    let mut row: Vec<BigUint> = vec![BigUint::one(), BigUint::one()]; // C(1, *)
    for m in 1..=n_max {
        // extend row from C(m, *) to C(m+1, *)
        row.push(BigUint::one());
        for j in (1..=m).rev() {
            let s = &row[j] + &row[j - 1];
            row[j] = s % &modulus;
        }
        if m >= 3 && m % 2 == 1 {
            scaled.push(BigUint::zero());
            known.push(prec);
            continue;
        }
        let mut acc = BigUint::zero();
        let mut in_prec = prec;
        for j in 0..m {
            if scaled[j].is_zero() {
                continue;
            }
            acc = (acc + &row[j] * &scaled[j]) % &modulus;
            in_prec = in_prec.min(known[j]);
        }
        // p*B_m = -acc / (m+1); divide out p-part exactly, multiply unit inverse
        let mut div = (m + 1) as u64;
        let mut v = 0u32;
        while div % p == 0 {
            div /= p;
            v += 1;
        }
        let neg = (&modulus - acc) % &modulus;
        let pv = BigUint::from(p).pow(v);
        // truncated representative may have junk below p^v only if inputs were
        // imprecise there; integer-exactness holds because the true value is
        // divisible, so divide the representative and lower known precision.
        let q = &neg / &pv;
        let inv = modinv_biguint(&BigUint::from(div), &modulus)
            .expect("m+1 with p-part removed is a unit");
        let val = (q * inv) % &modulus;
        scaled.push(val);
        known.push(in_prec.saturating_sub(v));
    }
    scaled
        .into_iter()
        .zip(known)
        .map(|(s, k)| CappedRational {
            p,
            residue_times_p: s,
            known_prec: k,
        })
        .collect()
}

/// A rational x with v_p(x) >= -1, stored as p*x mod p^known_prec.
#[derive(Debug, Clone)]
pub struct CappedRational {
    pub p: u64,
    /// p * x reduced mod p^known_prec
    pub residue_times_p: BigUint,
    pub known_prec: u32,
}

impl CappedRational {
    /// v_p(x), or None if x is indistinguishable from 0 at this precision.
    pub fn valuation(&self) -> Option<i64> {
        if self.residue_times_p.is_zero() {
            return None;
        }
        Some(int_valuation(&BigInt::from(self.residue_times_p.clone()), self.p) as i64 - 1)
    }
}

/// Modular inverse in Z/m, None if not coprime.
pub fn modinv_biguint(a: &BigUint, m: &BigUint) -> Option<BigUint> {
    let a = BigInt::from(a.clone());
    let m = BigInt::from(m.clone());
    let e = a.extended_gcd(&m);
    if !e.gcd.is_one() {
        return None;
    }
    let x = ((e.x % &m) + &m) % &m;
    Some(x.to_biguint().unwrap())
}

pub fn modinv_u64(a: u64, m: u64) -> Option<u64> {
    modinv_biguint(&BigUint::from(a % m), &BigUint::from(m)).map(|x| x.to_u64().unwrap())
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent oracle: expand t*e^(Xt)/(e^t - 1) symbolically as a power
    /// series in t with polynomial coefficients in X, to t-order `n_max`.
    /// Returns the polynomials n! * [t^n], i.e. the Bernoulli polynomials.
    fn generating_function_oracle(n_max: usize) -> Vec<RationalPolynomial> {
        let order = n_max + 1;
        // (e^t - 1)/t = sum_{i>=0} t^i / (i+1)!
        let mut d = Vec::with_capacity(order);
        let mut fact = Rational::one();
        for i in 0..order {
            fact *= rat_int(i as i64 + 1);
            d.push(Rational::one() / &fact);
        }
        // invert the series: g with g*d = 1
        let mut g = vec![Rational::zero(); order];
        g[0] = Rational::one() / &d[0];
        for i in 1..order {
            let mut acc = Rational::zero();
            for j in 1..=i {
                acc += &d[j] * &g[i - j];
            }
            g[i] = -acc / &d[0];
        }
        // e^(Xt) = sum t^i X^i / i!, multiply by g
        let mut e = Vec::with_capacity(order);
        let mut fact = Rational::one();
        for i in 0..order {
            if i > 0 {
                fact *= rat_int(i as i64);
            }
            let mut coeffs = vec![Rational::zero(); i + 1];
            coeffs[i] = Rational::one() / &fact;
            e.push(coeffs); // X^i / i! at t^i
        }
        let mut out = Vec::with_capacity(n_max + 1);
        let mut fact = Rational::one();
        for n in 0..=n_max {
            if n > 0 {
                fact *= rat_int(n as i64);
            }
            // coefficient of t^n in e^(Xt) * g, a polynomial in X
            let mut poly = vec![Rational::zero(); n + 1];
            for j in 0..=n {
                let scale = &g[n - j];
                if scale.is_zero() {
                    continue;
                }
                for (deg, c) in e[j].iter().enumerate() {
                    if !c.is_zero() {
                        poly[deg] += c * scale;
                    }
                }
            }
            for c in poly.iter_mut() {
                *c *= &fact;
            }
            out.push(RationalPolynomial::new(poly));
        }
        out
    }

    #[test]
    fn bernoulli_small_values() {
        assert_eq!(bernoulli_number(0), Rational::one());
        assert_eq!(bernoulli_number(1), rat(-1, 2));
        assert_eq!(bernoulli_number(2), rat(1, 6));
        assert_eq!(bernoulli_number(3), Rational::zero());
        assert_eq!(bernoulli_number(12), rat(-691, 2730));
    }

    #[test]
    fn bernoulli_matches_generating_function() {
        let oracle = generating_function_oracle(30);
        for n in 0..=30u64 {
            assert_eq!(
                bernoulli_number(n),
                oracle[n as usize].coeff(0),
                "B_{n} disagrees with the symbolic expansion"
            );
            assert_eq!(
                bernoulli_polynomial(n),
                oracle[n as usize],
                "B_{n}(X) disagrees with the symbolic expansion"
            );
        }
    }

    #[test]
    fn bernoulli_polynomial_small() {
        assert_eq!(
            bernoulli_polynomial(0),
            RationalPolynomial::new(vec![Rational::one()])
        );
        assert_eq!(
            bernoulli_polynomial(1),
            RationalPolynomial::new(vec![rat(-1, 2), Rational::one()])
        );
        assert_eq!(
            bernoulli_polynomial(2),
            RationalPolynomial::new(vec![rat(1, 6), rat_int(-1), Rational::one()])
        );
    }

    #[test]
    fn eval_poly_examples() {
        let b1 = bernoulli_polynomial(1);
        assert_eq!(eval_poly(&b1, &rat(1, 4)), rat(-1, 4));
        // B_1(1) = B_1 + 1
        assert_eq!(eval_poly(&b1, &Rational::one()), rat(1, 2));
        let b7 = bernoulli_polynomial(7);
        assert_eq!(eval_poly(&b7, &Rational::zero()), bernoulli_number(7));
    }

    #[test]
    fn fractional_part_examples() {
        assert_eq!(fractional_part(&rat(7, 5)), rat(2, 5));
        assert_eq!(fractional_part(&rat(-1, 5)), rat(4, 5));
        assert_eq!(fractional_part(&rat_int(3)), Rational::zero());
    }

    #[test]
    fn sigma_examples() {
        assert_eq!(sigma_power(6, 1), BigInt::from(12));
        for k in 0..5 {
            assert_eq!(sigma_power(1, k), BigInt::one());
        }
        assert_eq!(sigma_power(4, 3), BigInt::from(73));
        assert_eq!(sigma_power_prime_to_p(10, 1, 5), BigInt::from(3));
    }

    #[test]
    fn von_staudt_clausen_examples() {
        assert_eq!(von_staudt_clausen_denominator(2).unwrap(), BigInt::from(6));
        assert_eq!(
            von_staudt_clausen_denominator(12).unwrap(),
            BigInt::from(2730)
        );
        assert_eq!(von_staudt_clausen_denominator(4).unwrap(), BigInt::from(30));
        assert!(von_staudt_clausen_denominator(3).is_err());
        assert!(von_staudt_clausen_denominator(0).is_err());
    }

    #[test]
    fn von_staudt_clausen_is_bernoulli_denominator() {
        for n in (2..=60u64).step_by(2) {
            let b = bernoulli_number(n);
            assert_eq!(
                b.denom(),
                &von_staudt_clausen_denominator(n).unwrap(),
                "denominator of B_{n}"
            );
        }
    }

    #[test]
    fn bernoulli_polynomial_reflection() {
        let xs = [
            Rational::zero(),
            rat(1, 4),
            rat(1, 3),
            rat(1, 2),
            rat(2, 3),
            Rational::one(),
        ];
        for n in 0..=60u64 {
            let b = bernoulli_polynomial(n);
            let sign = if n % 2 == 0 { 1 } else { -1 };
            for x in &xs {
                let lhs = b.eval(&(Rational::one() - x));
                let rhs = rat_int(sign) * b.eval(x);
                assert_eq!(lhs, rhs, "B_{n}(1-x) = (-1)^{n} B_{n}(x) at x = {x}");
            }
        }
    }

    #[test]
    fn bernoulli_constant_term_is_bernoulli_number() {
        for n in 0..=60u64 {
            assert_eq!(bernoulli_polynomial(n).coeff(0), bernoulli_number(n));
        }
    }

    #[test]
    fn multiplication_theorem() {
        // sum_{t<m} B_k((x+t)/m) = m^(1-k) B_k(x)
        let xs = [Rational::zero(), rat(1, 2), rat(1, 3)];
        for k in 0..=10u64 {
            let b = bernoulli_polynomial(k);
            for m in 1..=6i64 {
                for x in &xs {
                    let mut lhs = Rational::zero();
                    for t in 0..m {
                        lhs += b.eval(&((x + rat_int(t)) / rat_int(m)));
                    }
                    let pow = if k >= 1 {
                        Rational::one() / rat_int(m).pow(k as i32 - 1)
                    } else {
                        rat_int(m)
                    };
                    assert_eq!(lhs, pow * b.eval(x), "k={k} m={m} x={x}");
                }
            }
        }
    }

    #[test]
    fn capped_bernoulli_matches_exact() {
        for &p in &[5u64, 7, 37] {
            let capped = bernoulli_mod_p_power(60, p, 25);
            let modulus = BigUint::from(p).pow(25);
            for n in 0..=60u64 {
                let exact = bernoulli_number(n) * rat_int(p as i64);
                // compare p*B_n mod p^known; after scaling the denominator is
                // prime to p by von Staudt-Clausen
                let c = &capped[n as usize];
                let known = BigUint::from(p).pow(c.known_prec);
                let num = exact.numer().clone();
                let den = exact.denom();
                let den_inv = modinv_biguint(&den.to_biguint().unwrap(), &modulus)
                    .expect("denominator prime to p after scaling");
                let want = ((num % BigInt::from(modulus.clone()) + BigInt::from(modulus.clone()))
                    .to_biguint()
                    .unwrap()
                    * den_inv)
                    % &modulus;
                assert_eq!(
                    &c.residue_times_p % &known,
                    want % &known,
                    "B_{n} mod {p}^{}",
                    c.known_prec
                );
            }
        }
    }

    #[test]
    fn serialization_round_trip() {
        let x = rat(-691, 2730);
        assert_eq!(rational_to_string(&x), "-691/2730");
        assert_eq!(rational_from_string("-691/2730").unwrap(), x);
        assert_eq!(rational_to_string(&Rational::zero()), "0/1");
        assert_eq!(rational_from_string("7").unwrap(), rat_int(7));
        assert!(rational_from_string("1/0").is_err());
    }

    #[test]
    fn prime_helper() {
        assert!(is_prime_u64(2));
        assert!(is_prime_u64(691));
        assert!(!is_prime_u64(1));
        assert!(!is_prime_u64(561));
    }
}
