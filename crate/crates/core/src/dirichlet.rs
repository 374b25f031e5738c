//! Dirichlet characters with exact cyclotomic values, generalized Bernoulli
//! numbers, and classical L-values at non-positive integers.
//!
//! Character values live in Z[zeta_m] represented as integer-coefficient
//! polynomials modulo the m-th cyclotomic polynomial; L-values live in
//! Q(zeta_m) (rational coefficients). p-adic evaluation is provided for tame
//! characters only (order dividing p-1), by matching each root of unity to a
//! Teichmuller power through the fixed embedding
//! zeta_m -> omega(w)^((p-1)/m) with w the smallest primitive root mod p.

use crate::error::{Error, Result};
use crate::padic::{self, PadicInt, PadicNumber};
use crate::rational::{self, bernoulli_polynomial, Rational};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use std::collections::BTreeMap;
use std::sync::Arc;

pub fn euler_phi(n: u64) -> u64 {
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

fn pow_mod(b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u128;
    let mut bb = (b % m) as u128;
    let m = m as u128;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * bb % m;
        }
        bb = bb * bb % m;
        e >>= 1;
    }
    acc as u64
}

/// Smallest primitive root modulo an odd prime p.
pub fn smallest_primitive_root(p: u64) -> u64 {
    let phi = p - 1;
    let prime_factors: Vec<u64> = factorize(phi).into_iter().map(|(q, _)| q).collect();
    'outer: for g in 2..p {
        for q in &prime_factors {
            if pow_mod(g, phi / q, p) == 1 {
                continue 'outer;
            }
        }
        return g;
    }
    unreachable!("every odd prime has a primitive root")
}

/// Smallest primitive root modulo p^2 (a fortiori mod every p^e, e >= 1).
pub fn smallest_primitive_root_mod_p2(p: u64) -> u64 {
    let p2 = p * p;
    let phi = p * (p - 1);
    let prime_factors: Vec<u64> = factorize(phi).into_iter().map(|(q, _)| q).collect();
    'outer: for g in 2..p2 {
        if g % p == 0 {
            continue;
        }
        for q in &prime_factors {
            if pow_mod(g, phi / q, p2) == 1 {
                continue 'outer;
            }
        }
        return g;
    }
    unreachable!()
}

/// The m-th cyclotomic polynomial as integer coefficients (index = degree).
pub fn cyclotomic_polynomial(m: u64) -> Vec<BigInt> {
    assert!(m >= 1);
    // x^m - 1 divided by the product of Phi_d over proper divisors d
    let mut num = vec![BigInt::zero(); m as usize + 1];
    num[0] = -BigInt::one();
    num[m as usize] = BigInt::one();
    for d in 1..m {
        if m % d == 0 {
            let phi_d = cyclotomic_polynomial(d);
            num = poly_div_exact(&num, &phi_d);
        }
    }
    num
}

/// Exact division of integer polynomials (divisor monic).
fn poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut num = num.to_vec();
    let dd = den.len() - 1;
    assert!(den[dd].is_one());
    let nd = num.len() - 1;
    let mut quot = vec![BigInt::zero(); nd - dd + 1];
    for i in (0..=nd - dd).rev() {
        let c = num[i + dd].clone();
        quot[i] = c.clone();
        if c.is_zero() {
            continue;
        }
        for (j, dj) in den.iter().enumerate() {
            let t = &num[i + j] - &c * dj;
            num[i + j] = t;
        }
    }
    assert!(
        num.iter().all(|c| c.is_zero()),
        "inexact polynomial division"
    );
    quot
}

/// Element of Q(zeta_m): rational polynomial in zeta_m reduced modulo the
/// m-th cyclotomic polynomial (degree < phi(m)), tagged with the ambient m.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclotomicValue {
    ambient: u64,
    coeffs: Vec<Rational>, // length phi(m), index = power of zeta_m
}

impl CyclotomicValue {
    pub fn zero(ambient: u64) -> Self {
        CyclotomicValue {
            ambient,
            coeffs: vec![Rational::zero(); euler_phi(ambient) as usize],
        }
    }

    pub fn from_rational(ambient: u64, x: Rational) -> Self {
        let mut v = Self::zero(ambient);
        v.coeffs[0] = x;
        v
    }

    pub fn one(ambient: u64) -> Self {
        Self::from_rational(ambient, Rational::one())
    }

    /// zeta_m^e reduced mod Phi_m.
    pub fn root_power(ambient: u64, e: u64) -> Self {
        let deg = euler_phi(ambient) as usize;
        let e = (e % ambient) as usize;
        if e < deg {
            let mut v = Self::zero(ambient);
            v.coeffs[e] = Rational::one();
            return v;
        }
        let phi = cyclotomic_polynomial(ambient);
        let mut poly = vec![Rational::zero(); e + 1];
        poly[e] = Rational::one();
        Self::reduce(ambient, &phi, poly)
    }

    fn reduce(ambient: u64, phi: &[BigInt], mut poly: Vec<Rational>) -> Self {
        let deg = phi.len() - 1;
        while poly.len() > deg {
            let top = poly.pop().unwrap();
            if top.is_zero() {
                continue;
            }
            let shift = poly.len() - deg;
            for (j, c) in phi.iter().take(deg).enumerate() {
                let sub = &top * Rational::from(c.clone());
                poly[shift + j] -= sub;
            }
        }
        poly.resize(deg, Rational::zero());
        CyclotomicValue {
            ambient,
            coeffs: poly,
        }
    }

    pub fn ambient(&self) -> u64 {
        self.ambient
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// The rational part, erroring if the value has higher zeta-components.
    pub fn as_rational(&self) -> Result<Rational> {
        if self.coeffs.iter().skip(1).all(|c| c.is_zero()) {
            Ok(self.coeffs[0].clone())
        } else {
            Err(Error::Mismatch(format!(
                "cyclotomic value of ambient {} is not rational",
                self.ambient
            )))
        }
    }

    fn check_ambient(&self, other: &Self) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::Mismatch(format!(
                "ambient orders differ: {} vs {}",
                self.ambient, other.ambient
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_ambient(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(CyclotomicValue {
            ambient: self.ambient,
            coeffs,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_ambient(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Ok(CyclotomicValue {
            ambient: self.ambient,
            coeffs,
        })
    }

    pub fn scale(&self, x: &Rational) -> Self {
        CyclotomicValue {
            ambient: self.ambient,
            coeffs: self.coeffs.iter().map(|c| c * x).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_ambient(other)?;
        let mut prod = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len()];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        let phi = cyclotomic_polynomial(self.ambient);
        Ok(Self::reduce(self.ambient, &phi, prod))
    }

    /// Embed into Q_p through zeta_m -> omega(w)^((p-1)/m), w the smallest
    /// primitive root mod p. Requires m | p-1 (tame values).
    pub fn embed_padic(&self, p: u64, precision: u32) -> Result<PadicNumber> {
        if (p - 1) % self.ambient != 0 {
            return Err(Error::NotTame {
                order: self.ambient,
                p,
            });
        }
        let work = precision + 8;
        let w = smallest_primitive_root(p);
        let zeta = padic::teichmuller(p, w, work)?.pow_u64((p - 1) / self.ambient);
        let mut acc = PadicNumber::from_int(PadicInt::zero(p, work));
        let mut pow = PadicInt::one(p, work);
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                pow = &pow * &zeta;
            }
            if c.is_zero() {
                continue;
            }
            let term = PadicNumber::from_rational(c, p, work)?.mul_int(&pow);
            acc = acc.add(&term);
        }
        // report the value at the requested absolute precision
        let target = (precision + acc.shift()).min(acc.numerator().precision());
        let num = acc.numerator().with_precision(target)?;
        Ok(PadicNumber::new(num, acc.shift()))
    }
}

impl Serialize for CyclotomicValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("CyclotomicValue", 2)?;
        st.serialize_field("ambient", &self.ambient)?;
        let coeffs: Vec<String> = self
            .coeffs
            .iter()
            .map(rational::rational_to_string)
            .collect();
        st.serialize_field("coeffs", &coeffs)?;
        st.end()
    }
}

/// Structure of (Z/f)^* as a product of cyclic groups with fixed generators,
/// plus a full discrete-log table (moduli here are small).
#[derive(Debug)]
pub struct UnitGroup {
    modulus: u64,
    generators: Vec<(u64, u64)>, // (residue mod f, order)
    dlog: BTreeMap<u64, Vec<u64>>,
}

impl UnitGroup {
    pub fn new(f: u64) -> Arc<Self> {
        assert!(f >= 1);
        let mut generators: Vec<(u64, u64)> = Vec::new();
        for (q, e) in factorize(f) {
            let qe = q.pow(e);
            let rest = f / qe;
            // CRT lift: g mod qe, 1 mod rest
            let lift = |g: u64| -> u64 {
                if rest == 1 {
                    return g % f;
                }
                let m1 = rational::modinv_u64(rest % qe, qe).unwrap();
                let t = ((g + qe - 1) % qe) as u128 * m1 as u128 % qe as u128;
                ((1 + rest as u128 * t) % f as u128) as u64
            };
            if q == 2 {
                match e {
                    1 => {}
                    2 => generators.push((lift(3), 2)),
                    _ => {
                        generators.push((lift(qe - 1), 2));
                        generators.push((lift(5), 1 << (e - 2)));
                    }
                }
            } else {
                let mut g = smallest_primitive_root(q);
                if e > 1 && pow_mod(g, q - 1, q * q) == 1 {
                    g += q;
                }
                generators.push((lift(g % qe), euler_phi(qe)));
            }
        }
        // enumerate the group to build the dlog table
        let mut dlog = BTreeMap::new();
        let orders: Vec<u64> = generators.iter().map(|&(_, n)| n).collect();
        let count: u64 = orders.iter().product();
        let mut exps = vec![0u64; generators.len()];
        for idx in 0..count {
            let mut i = idx;
            let mut x: u128 = 1 % f.max(1) as u128;
            for (k, &(g, _)) in generators.iter().enumerate() {
                exps[k] = i % orders[k];
                i /= orders[k];
                x = x * pow_mod(g, exps[k], f.max(2)) as u128 % f.max(1) as u128;
            }
            dlog.insert(x as u64, exps.clone());
        }
        if f == 1 {
            dlog.insert(0, vec![]);
        }
        debug_assert_eq!(dlog.len() as u64, euler_phi(f));
        Arc::new(UnitGroup {
            modulus: f,
            generators,
            dlog,
        })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn generators(&self) -> &[(u64, u64)] {
        &self.generators
    }

    pub fn order(&self) -> u64 {
        euler_phi(self.modulus)
    }

    /// Exponent vector of a unit with respect to the fixed generators.
    pub fn dlog(&self, a: u64) -> Option<&Vec<u64>> {
        if self.modulus == 1 {
            return self.dlog.get(&0);
        }
        self.dlog.get(&(a % self.modulus))
    }

    pub fn units(&self) -> impl Iterator<Item = u64> + '_ {
        self.dlog.keys().copied()
    }
}

/// Dirichlet character mod f: images of the fixed generators of (Z/f)^* as
/// powers of a primitive `order`-th root of unity.
#[derive(Debug, Clone)]
pub struct DirichletCharacter {
    group: Arc<UnitGroup>,
    order: u64,
    exps: Vec<u64>, // chi(g_i) = zeta_order^exps[i]
}

impl DirichletCharacter {
    /// Build from per-generator exponents comp[i] with chi(g_i) = zeta_{n_i}^comp[i].
    fn from_component_exps(group: Arc<UnitGroup>, comp: &[u64]) -> Self {
        let mut order = 1;
        for (&(_, n), &c) in group.generators.iter().zip(comp) {
            order = lcm(order, n / gcd(n, c));
        }
        let exps = group
            .generators
            .iter()
            .zip(comp)
            .map(|(&(_, n), &c)| {
                // zeta_n^c = zeta_order^(c * order / n); integral because the
                // order of zeta_n^c divides `order`
                ((c as u128 * order as u128) / n as u128) as u64 % order
            })
            .collect();
        DirichletCharacter { group, order, exps }
    }

    pub fn trivial(f: u64) -> Self {
        let group = UnitGroup::new(f);
        let comp = vec![0u64; group.generators.len()];
        Self::from_component_exps(group, &comp)
    }

    /// The character mod p sending a to omega(a)^j under the fixed embedding
    /// (chi(w) = zeta_(p-1)^j for the smallest primitive root w).
    pub fn teichmuller_power(p: u64, j: u64) -> Result<Self> {
        padic::check_odd_prime(p)?;
        let group = UnitGroup::new(p);
        debug_assert_eq!(group.generators.len(), 1);
        debug_assert_eq!(group.generators[0].0, smallest_primitive_root(p));
        let comp = vec![j % (p - 1)];
        Ok(Self::from_component_exps(group, &comp))
    }

    pub fn modulus(&self) -> u64 {
        self.group.modulus()
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn generator_images(&self) -> &[u64] {
        &self.exps
    }

    pub fn group(&self) -> &Arc<UnitGroup> {
        &self.group
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    /// Exponent e with chi(a) = zeta_order^e, or None when gcd(a, f) > 1.
    pub fn value_exponent(&self, a: u64) -> Option<u64> {
        if self.modulus() == 1 {
            return Some(0);
        }
        let dl = self.group.dlog(a % self.modulus())?;
        let mut e: u128 = 0;
        for (d, x) in dl.iter().zip(&self.exps) {
            e += *d as u128 * *x as u128;
        }
        Some((e % self.order as u128) as u64)
    }

    /// chi(a) as an exact cyclotomic value (zero if gcd(a, f) > 1).
    pub fn value(&self, a: u64) -> CyclotomicValue {
        match self.value_exponent(a) {
            Some(e) => CyclotomicValue::root_power(self.order, e),
            None => CyclotomicValue::zero(self.order),
        }
    }

    /// Smallest modulus through which the character factors.
    pub fn conductor(&self) -> u64 {
        let f = self.modulus();
        for d in (1..f).filter(|d| f % d == 0) {
            // trivial on the kernel of (Z/f)* -> (Z/d)*?
            let mut trivial_on_kernel = true;
            let mut a = 1 + d;
            while a <= f {
                let a0 = a % f;
                if a0 > 1 && gcd(a0, f) == 1 && self.value_exponent(a0) != Some(0) {
                    trivial_on_kernel = false;
                    break;
                }
                a += d;
            }
            if trivial_on_kernel {
                return d;
            }
        }
        f
    }

    /// The primitive character mod conductor inducing this one.
    pub fn primitive_core(&self) -> Self {
        let c = self.conductor();
        if c == self.modulus() {
            return self.clone();
        }
        let f = self.modulus();
        let core_group = UnitGroup::new(c);
        let comp: Vec<u64> = core_group
            .generators
            .iter()
            .map(|&(g, n)| {
                let mut b = g;
                while gcd(b % f.max(1), f) != 1 {
                    b += c;
                }
                let e = self.value_exponent(b % f).expect("lift coprime to f");
                // chi(g) = zeta_order^e has order dividing n, so e*n/order is
                // integral and chi(g) = zeta_n^(e*n/order)
                debug_assert_eq!((e as u128 * n as u128) % self.order as u128, 0);
                ((e as u128 * n as u128) / self.order as u128) as u64
            })
            .collect();
        Self::from_component_exps(core_group, &comp)
    }

    /// Value exponent of the primitive core at a (None iff gcd(a, cond) > 1).
    pub fn core_value_exponent(&self, a: u64) -> Option<u64> {
        let c = self.conductor();
        if c == 1 {
            return Some(0);
        }
        if gcd(a % c, c) != 1 {
            return None;
        }
        let f = self.modulus();
        let mut b = a % c;
        if b == 0 {
            b = c;
        }
        while gcd(b % f, f) != 1 {
            b += c;
        }
        self.value_exponent(b % f)
    }

    /// chi(-1) = +1 (even) or -1 (odd).
    pub fn is_even(&self) -> bool {
        if self.modulus() <= 2 {
            return true;
        }
        self.value_exponent(self.modulus() - 1) == Some(0)
    }

    pub fn is_odd(&self) -> bool {
        !self.is_even()
    }

    /// Pointwise product, defined mod lcm of the moduli.
    pub fn multiply(&self, other: &Self) -> Self {
        let f = lcm(self.modulus().max(1), other.modulus().max(1));
        let group = UnitGroup::new(f);
        let m = lcm(self.order, other.order);
        let comp: Vec<u64> = group
            .generators
            .iter()
            .map(|&(g, n)| {
                let e1 = self.value_exponent(g).unwrap();
                let e2 = other.value_exponent(g).unwrap();
                let e = (e1 as u128 * (m / self.order) as u128
                    + e2 as u128 * (m / other.order) as u128)
                    % m as u128;
                // chi(g)^n = 1 forces e*n/m integral
                debug_assert_eq!((e * n as u128) % m as u128, 0);
                ((e * n as u128) / m as u128) as u64
            })
            .collect();
        Self::from_component_exps(group, &comp)
    }

    /// Inverse character (complex conjugate).
    pub fn inverse(&self) -> Self {
        let comp: Vec<u64> = self
            .group
            .generators
            .iter()
            .zip(&self.exps)
            .map(|(&(_, n), &e)| {
                let inv = (self.order - e) % self.order;
                ((inv as u128 * n as u128) / self.order as u128) as u64
            })
            .collect();
        Self::from_component_exps(self.group.clone(), &comp)
    }

    /// p-adic value at a for tame characters (order | p-1): the primitive
    /// core's root of unity matched to a Teichmuller power.
    pub fn padic_value(&self, a: u64, p: u64, precision: u32) -> Result<PadicInt> {
        if (p - 1) % self.order != 0 {
            return Err(Error::NotTame {
                order: self.order,
                p,
            });
        }
        match self.core_value_exponent(a) {
            None => Ok(PadicInt::zero(p, precision)),
            Some(e) => {
                let w = smallest_primitive_root(p);
                let zeta = padic::teichmuller(p, w, precision)?;
                Ok(zeta.pow_u64(e * ((p - 1) / self.order)))
            }
        }
    }
}

impl Serialize for DirichletCharacter {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("DirichletCharacter", 3)?;
        st.serialize_field("modulus", &self.modulus())?;
        st.serialize_field("order", &self.order)?;
        st.serialize_field("generator_images", &self.exps)?;
        st.end()
    }
}

/// All phi(f) characters mod f, enumerated deterministically.
pub fn enumerate_characters(f: u64) -> Vec<DirichletCharacter> {
    let group = UnitGroup::new(f);
    let orders: Vec<u64> = group.generators.iter().map(|&(_, n)| n).collect();
    let count: u64 = orders.iter().product();
    let mut out = Vec::with_capacity(count as usize);
    for idx in 0..count {
        let mut i = idx;
        let comp: Vec<u64> = orders
            .iter()
            .map(|&n| {
                let c = i % n;
                i /= n;
                c
            })
            .collect();
        out.push(DirichletCharacter::from_component_exps(
            group.clone(),
            &comp,
        ));
    }
    out
}

/// Conductor of a character (free-function form of the method).
pub fn conductor(chi: &DirichletCharacter) -> u64 {
    chi.conductor()
}

/// Generalized Bernoulli number B_{n,chi} = F^(n-1) sum_{a=1}^F chi(a) B_n(a/F),
/// evaluated through the primitive core, so any F divisible by the conductor
/// gives the same value.
pub fn generalized_bernoulli(
    n: u64,
    chi: &DirichletCharacter,
    big_f: u64,
) -> Result<CyclotomicValue> {
    if n == 0 {
        return Err(Error::Precondition(
            "generalized Bernoulli needs n >= 1".into(),
        ));
    }
    let cond = chi.conductor();
    if big_f == 0 || big_f % cond != 0 {
        return Err(Error::Precondition(format!(
            "F = {big_f} must be a positive multiple of the conductor {cond}"
        )));
    }
    let bn = bernoulli_polynomial(n);
    let f_rat = Rational::from(BigInt::from(big_f));
    let mut acc = CyclotomicValue::zero(chi.order());
    for a in 1..=big_f {
        let e = match chi.core_value_exponent(a) {
            Some(e) => e,
            None => continue,
        };
        let x = bn.eval(&(Rational::from(BigInt::from(a)) / &f_rat));
        let term = CyclotomicValue::root_power(chi.order(), e).scale(&x);
        acc = acc.add(&term)?;
    }
    let scale = f_rat.pow(n as i32 - 1);
    Ok(acc.scale(&scale))
}

/// L(1-n, chi) = -B_{n,chi}/n (primitive convention).
pub fn dirichlet_l_at_negative(n: u64, chi: &DirichletCharacter) -> Result<CyclotomicValue> {
    if n == 0 {
        return Err(Error::Precondition("need n >= 1".into()));
    }
    let b = generalized_bernoulli(n, chi, chi.conductor())?;
    Ok(b.scale(&(-Rational::one() / Rational::from(BigInt::from(n)))))
}

/// Euler-factor-stripped value L^(p)(1-n, chi) = (1 - chi(p) p^(n-1)) L(1-n, chi).
pub fn euler_modified_l(n: u64, chi: &DirichletCharacter, p: u64) -> Result<CyclotomicValue> {
    let l = dirichlet_l_at_negative(n, chi)?;
    let chip = match chi.core_value_exponent(p) {
        None => return Ok(l), // chi(p) = 0
        Some(e) => CyclotomicValue::root_power(chi.order(), e),
    };
    let pk = Rational::from(BigInt::from(p)).pow(n as i32 - 1);
    let factor = CyclotomicValue::one(chi.order()).sub(&chip.scale(&pk))?;
    factor.mul(&l)
}

/// Checks that B_{n,chi} vanishes exactly on parity mismatch (chi odd with n
/// even, or chi even with n odd), with the classical exception of the trivial
/// character at n = 1. Returns true when observation matches prediction.
pub fn parity_vanishing_check(n: u64, chi: &DirichletCharacter) -> Result<bool> {
    let b = generalized_bernoulli(n, chi, chi.conductor())?;
    let mismatch = (chi.is_odd() && n % 2 == 0) || (chi.is_even() && n % 2 == 1);
    let exception = n == 1 && chi.conductor() == 1;
    let predicted_zero = mismatch && !exception;
    Ok(b.is_zero() == predicted_zero)
}
