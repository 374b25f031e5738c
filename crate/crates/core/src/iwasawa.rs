//! The Iwasawa algebra Lambda = Z_p[[T]] in truncated form, the dictionary
//! between measures on Gamma and power series, Weierstrass preparation, and
//! the abstract Kummer-congruence machinery.
//!
//! A [`LambdaElement`] represents an element of Z_p[[T]] modulo (p^N, T^M);
//! the truncation pair is explicit and mixed-truncation arithmetic drops to
//! the minimum. The topological generator is fixed as gamma = 1 + p,
//! corresponding to 1 + T.

use crate::error::{Error, Result};
use crate::padic::{PadicInt, PadicNumber, Valuation};
use crate::rational;
use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use std::fmt;

/// Element of Z_p[[T]] mod (p^prec, T^M), M = coeffs.len().
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LambdaElement {
    p: u64,
    prec: u32,
    coeffs: Vec<BigUint>, // each < p^prec
}

impl LambdaElement {
    pub fn new(p: u64, prec: u32, coeffs: Vec<BigInt>) -> Result<Self> {
        crate::padic::check_odd_prime(p)?;
        if coeffs.is_empty() {
            return Err(Error::Precondition("T-truncation must be >= 1".into()));
        }
        let modulus = BigInt::from(BigUint::from(p).pow(prec));
        let coeffs = coeffs
            .into_iter()
            .map(|c| {
                let mut r = c % &modulus;
                if r < BigInt::zero() {
                    r += &modulus;
                }
                r.to_biguint().unwrap()
            })
            .collect();
        Ok(LambdaElement { p, prec, coeffs })
    }

    pub fn from_padic_coeffs(coeffs: Vec<PadicInt>) -> Result<Self> {
        let p = coeffs
            .first()
            .ok_or_else(|| Error::Precondition("empty coefficient list".into()))?
            .prime();
        let prec = coeffs.iter().map(|c| c.precision()).min().unwrap();
        let ints = coeffs
            .iter()
            .map(|c| BigInt::from(c.with_precision(prec).unwrap().residue().clone()))
            .collect();
        LambdaElement::new(p, prec, ints)
    }

    pub fn zero(p: u64, prec: u32, m: usize) -> Self {
        LambdaElement {
            p,
            prec,
            coeffs: vec![BigUint::zero(); m],
        }
    }

    pub fn one(p: u64, prec: u32, m: usize) -> Self {
        let mut e = Self::zero(p, prec, m);
        e.coeffs[0] = BigUint::one();
        e
    }

    pub fn constant(c: &PadicInt, m: usize) -> Self {
        let mut e = Self::zero(c.prime(), c.precision(), m);
        e.coeffs[0] = c.residue().clone();
        e
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn precision(&self) -> u32 {
        self.prec
    }

    /// T-truncation order M.
    pub fn truncation(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, i: usize) -> PadicInt {
        let c = self.coeffs.get(i).cloned().unwrap_or_default();
        PadicInt::new(self.p, self.prec, BigInt::from(c)).unwrap()
    }

    pub fn coeffs_raw(&self) -> &[BigUint] {
        &self.coeffs
    }

    pub fn is_zero_at_precision(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn with_precision(&self, prec: u32) -> Result<Self> {
        if prec > self.prec {
            return Err(Error::PrecisionExhausted(format!(
                "cannot raise Lambda precision from {} to {prec}",
                self.prec
            )));
        }
        let modulus = BigUint::from(self.p).pow(prec);
        Ok(LambdaElement {
            p: self.p,
            prec,
            coeffs: self.coeffs.iter().map(|c| c % &modulus).collect(),
        })
    }

    pub fn with_truncation(&self, m: usize) -> Result<Self> {
        if m > self.coeffs.len() {
            return Err(Error::TruncationTooShort {
                truncation: self.coeffs.len(),
                needed: m,
            });
        }
        Ok(LambdaElement {
            p: self.p,
            prec: self.prec,
            coeffs: self.coeffs[..m].to_vec(),
        })
    }

    fn align(&self, other: &Self) -> Result<(Self, Self)> {
        if self.p != other.p {
            return Err(Error::Mismatch(format!(
                "primes differ: {} vs {}",
                self.p, other.p
            )));
        }
        let prec = self.prec.min(other.prec);
        let m = self.coeffs.len().min(other.coeffs.len());
        Ok((
            self.with_precision(prec)?.with_truncation(m)?,
            other.with_precision(prec)?.with_truncation(m)?,
        ))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let (a, b) = self.align(other)?;
        let modulus = BigUint::from(a.p).pow(a.prec);
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(x, y)| (x + y) % &modulus)
            .collect();
        Ok(LambdaElement {
            p: a.p,
            prec: a.prec,
            coeffs,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        let (a, b) = self.align(other)?;
        let modulus = BigUint::from(a.p).pow(a.prec);
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(x, y)| (x + &modulus - y) % &modulus)
            .collect();
        Ok(LambdaElement {
            p: a.p,
            prec: a.prec,
            coeffs,
        })
    }

    pub fn neg(&self) -> Self {
        Self::zero(self.p, self.prec, self.coeffs.len())
            .sub(self)
            .unwrap()
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        let (a, b) = self.align(other)?;
        let m = a.coeffs.len();
        let modulus = BigUint::from(a.p).pow(a.prec);
        let mut coeffs = vec![BigUint::zero(); m];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if i + j >= m {
                    break;
                }
                if !y.is_zero() {
                    coeffs[i + j] = (&coeffs[i + j] + x * y) % &modulus;
                }
            }
        }
        Ok(LambdaElement {
            p: a.p,
            prec: a.prec,
            coeffs,
        })
    }

    pub fn scale(&self, c: &PadicInt) -> Result<Self> {
        self.mul(&LambdaElement::constant(c, self.coeffs.len()))
    }

    /// Series inverse; requires a unit constant term.
    pub fn invert(&self) -> Result<Self> {
        let c0 = self.coeff(0);
        if !c0.is_unit() {
            return Err(Error::NotAUnit(format!(
                "constant term {c0} of a Lambda element"
            )));
        }
        let m = self.coeffs.len();
        let modulus = BigUint::from(self.p).pow(self.prec);
        let inv0 = c0.inverse()?.residue().clone();
        let mut out = vec![BigUint::zero(); m];
        out[0] = inv0.clone();
        for k in 1..m {
            let mut acc = BigUint::zero();
            for i in 1..=k {
                if !self.coeffs[i].is_zero() && !out[k - i].is_zero() {
                    acc = (acc + &self.coeffs[i] * &out[k - i]) % &modulus;
                }
            }
            out[k] = (&modulus - (acc * &inv0) % &modulus) % &modulus;
        }
        Ok(LambdaElement {
            p: self.p,
            prec: self.prec,
            coeffs: out,
        })
    }

    /// Evaluate at z with v(z) >= 1 (z = chi(gamma) - 1 for the character)
    /// by Horner. The result carries the provable precision
    /// min(N, N_z, M * v(z)) where the M*v(z) term bounds the discarded tail.
    pub fn evaluate(&self, z: &PadicInt) -> Result<PadicInt> {
        if z.prime() != self.p {
            return Err(Error::Mismatch("prime mismatch in evaluation".into()));
        }
        let vz = match z.valuation() {
            Valuation::Finite(0) => {
                return Err(Error::Precondition(
                    "evaluation needs valuation(z) >= 1".into(),
                ))
            }
            v => v.lower_bound(),
        };
        let m = self.coeffs.len() as u32;
        let out_prec = self
            .prec
            .min(z.precision())
            .min(m.saturating_mul(vz.max(1)));
        let work = self.prec.min(z.precision());
        let zw = z.with_precision(work)?;
        let mut acc = PadicInt::zero(self.p, work);
        for i in (0..self.coeffs.len()).rev() {
            acc = &(&acc * &zw) + &self.coeff(i).with_precision(work)?;
        }
        acc.with_precision(out_prec.min(acc.precision()))
    }

    /// Lowest index with a unit coefficient, if any.
    fn first_unit_index(&self) -> Option<usize> {
        self.coeffs
            .iter()
            .position(|c| !c.is_zero() && !(c % self.p).is_zero())
    }

    /// mu = min_i v_p(c_i) over the truncation.
    pub fn content_valuation(&self) -> Result<u32> {
        let mut best: Option<u32> = None;
        for c in &self.coeffs {
            if c.is_zero() {
                continue;
            }
            let v = rational::int_valuation(&BigInt::from(c.clone()), self.p) as u32;
            best = Some(best.map_or(v, |b| b.min(v)));
            if v == 0 {
                break;
            }
        }
        best.ok_or(Error::IndistinguishableFromZero(self.prec))
    }

    /// Exact division by p^v (each coefficient), lowering precision by v.
    pub fn div_exact_p_power(&self, v: u32) -> Result<Self> {
        if v == 0 {
            return Ok(self.clone());
        }
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| {
                let ci = PadicInt::new(self.p, self.prec, BigInt::from(c.clone()))?;
                Ok(BigInt::from(ci.div_exact_p_power(v)?.residue().clone()))
            })
            .collect::<Result<Vec<_>>>()?;
        LambdaElement::new(self.p, self.prec - v, coeffs)
    }
}

impl fmt::Display for LambdaElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("{c}"),
                1 => format!("{c}*T"),
                _ => format!("{c}*T^{i}"),
            })
            .collect();
        let body = if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join(" + ")
        };
        write!(
            f,
            "{body} mod ({}^{}, T^{})",
            self.p,
            self.prec,
            self.coeffs.len()
        )
    }
}

impl Serialize for LambdaElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("LambdaElement", 4)?;
        st.serialize_field("p", &self.p)?;
        st.serialize_field("N", &self.prec)?;
        st.serialize_field("M", &self.coeffs.len())?;
        let coeffs: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        st.serialize_field("coeffs", &coeffs)?;
        st.end()
    }
}

/// Exact binomial coefficients C(r, i) for i < m, r an arbitrary big integer.
fn binomial_row(r: &BigUint, m: usize) -> Vec<BigUint> {
    let mut out = Vec::with_capacity(m);
    out.push(BigUint::one());
    let mut acc = BigUint::one();
    for i in 1..m {
        let i_b = BigUint::from(i as u64);
        if BigUint::from(i as u64 - 1) >= *r {
            // r < i: binomial vanishes (r is a nonnegative representative)
            acc = BigUint::zero();
            out.push(acc.clone());
            continue;
        }
        acc = acc * (r - BigUint::from(i as u64 - 1)) / i_b;
        out.push(acc.clone());
    }
    out
}

/// (1 + T)^j for a plain nonnegative integer exponent: exact binomials.
pub fn dirac_int(p: u64, prec: u32, m: usize, j: u64) -> Result<LambdaElement> {
    let row = binomial_row(&BigUint::from(j), m);
    LambdaElement::new(p, prec, row.into_iter().map(BigInt::from).collect())
}

/// (1 + T)^j for a p-adic exponent (the Dirac measure at gamma^j).
///
/// Binomials of the canonical representative are exact; the dependence on the
/// unknown tail of j costs floor(log_p(M-1)) digits, which is reflected in
/// the output precision.
pub fn dirac(j: &PadicInt, m: usize) -> Result<LambdaElement> {
    let p = j.prime();
    let row = binomial_row(j.residue(), m);
    let el = LambdaElement::new(p, j.precision(), row.into_iter().map(BigInt::from).collect())?;
    let mut loss = 0u32;
    if m > 1 {
        let mut q = (m - 1) as u64;
        while q >= p {
            q /= p;
            loss += 1;
        }
    }
    el.with_precision(j.precision().saturating_sub(loss).max(1))
}

/// Measure on the finite quotient Gamma/Gamma^(p^level): coefficients indexed
/// by exponents 0..p^level of gamma = 1 + p.
#[derive(Debug, Clone)]
pub struct GroupRingElement {
    p: u64,
    level: u32,
    coeffs: Vec<PadicInt>,
}

impl GroupRingElement {
    pub fn new(p: u64, level: u32, coeffs: Vec<PadicInt>) -> Result<Self> {
        let size = (p as usize).checked_pow(level).ok_or_else(|| {
            Error::Precondition("group ring level too large".into())
        })?;
        if coeffs.len() != size {
            return Err(Error::Mismatch(format!(
                "level {level} needs {size} coefficients, got {}",
                coeffs.len()
            )));
        }
        Ok(GroupRingElement { p, level, coeffs })
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn coeffs(&self) -> &[PadicInt] {
        &self.coeffs
    }

    /// Push forward along Gamma/Gamma^(p^level) -> Gamma/Gamma^(p^m).
    pub fn reduce_to_level(&self, m: u32) -> Result<Self> {
        if m > self.level {
            return Err(Error::Precondition(format!(
                "cannot raise level {} to {m}",
                self.level
            )));
        }
        let size = (self.p as usize).pow(m);
        let prec = self.coeffs.iter().map(|c| c.precision()).min().unwrap_or(1);
        let mut out = vec![PadicInt::zero(self.p, prec); size];
        for (j, c) in self.coeffs.iter().enumerate() {
            let t = j % size;
            out[t] = &out[t] + c;
        }
        GroupRingElement::new(self.p, m, out)
    }

    /// Total mass (augmentation).
    pub fn total(&self) -> PadicInt {
        let prec = self.coeffs.iter().map(|c| c.precision()).min().unwrap_or(1);
        let mut acc = PadicInt::zero(self.p, prec);
        for c in &self.coeffs {
            acc = &acc + c;
        }
        acc
    }
}

/// Image of sum a_j gamma^j in Z_p[[T]]/(p^N, T^M) via gamma^j -> (1+T)^j.
pub fn from_group_ring(g: &GroupRingElement, m: usize) -> Result<LambdaElement> {
    let p = g.prime();
    let prec = g.coeffs.iter().map(|c| c.precision()).min().unwrap_or(1);
    let mut acc = LambdaElement::zero(p, prec, m);
    for (j, a) in g.coeffs.iter().enumerate() {
        if a.is_zero_at_precision() {
            continue;
        }
        let basis = dirac_int(p, prec, m, j as u64)?;
        acc = acc.add(&basis.scale(&a.with_precision(prec)?)?)?;
    }
    Ok(acc)
}

/// Inverse of [`from_group_ring`] when the truncation stores the whole
/// polynomial (M >= p^level): a_j = sum_i (-1)^(i-j) C(i, j) c_i.
pub fn to_group_ring(f: &LambdaElement, level: u32) -> Result<GroupRingElement> {
    let p = f.prime();
    let size = (p as usize).pow(level);
    if f.truncation() < size {
        return Err(Error::TruncationTooShort {
            truncation: f.truncation(),
            needed: size,
        });
    }
    let mut out = Vec::with_capacity(size);
    for j in 0..size {
        let mut acc = PadicInt::zero(p, f.precision());
        for i in j..f.truncation() {
            let c = f.coeff(i);
            if c.is_zero_at_precision() {
                continue;
            }
            let b = rational::binomial(i as u64, j as u64);
            let term = &c * &PadicInt::new(p, f.precision(), b)?;
            if (i - j) % 2 == 0 {
                acc = &acc + &term;
            } else {
                acc = &acc - &term;
            }
        }
        out.push(acc);
    }
    GroupRingElement::new(p, level, out)
}

/// Weierstrass data: f = p^mu * P * U with P distinguished monic of degree
/// lambda and U a unit.
#[derive(Debug, Clone, Serialize)]
pub struct WeierstrassData {
    pub mu: u32,
    pub lambda: usize,
    pub distinguished: LambdaElement,
    pub unit: LambdaElement,
}

/// Weierstrass preparation by successive approximation modulo p-powers.
pub fn weierstrass_prepare(f: &LambdaElement) -> Result<WeierstrassData> {
    let p = f.prime();
    let mu = f.content_valuation()?;
    let g = f.div_exact_p_power(mu)?;
    let w = g.precision();
    let m = g.truncation();
    let lambda = g
        .first_unit_index()
        .ok_or(Error::IndistinguishableFromZero(w))?;
    if lambda >= m {
        return Err(Error::TruncationTooShort {
            truncation: m,
            needed: lambda + 1,
        });
    }

    // initial approximation mod p: P = T^lambda, U = shift of g
    let mut unit = {
        let mut coeffs = g.coeffs_raw()[lambda..].to_vec();
        coeffs.resize(m, BigUint::zero());
        LambdaElement::new(p, w, coeffs.into_iter().map(BigInt::from).collect())?
    };
    let mut dist = LambdaElement::zero(p, w, m);
    dist.coeffs[lambda] = BigUint::one();

    for k in 1..w {
        // error E = (g - P*U) / p^k, taken mod p
        let residual = g.sub(&dist.mul(&unit)?)?;
        if residual.is_zero_at_precision() {
            break;
        }
        let resv = residual.content_valuation()?;
        if resv < k {
            return Err(Error::PrecisionExhausted(format!(
                "weierstrass correction fell behind at step {k}"
            )));
        }
        if resv >= w {
            break;
        }
        let e = residual.div_exact_p_power(resv)?.with_precision(1)?;
        // solve beta * U + delta * T^lambda = E mod p with deg(beta) < lambda
        let u_inv = unit.with_precision(1)?.invert()?;
        let beta_full = e.mul(&u_inv)?;
        let mut beta = LambdaElement::zero(p, 1, m);
        beta.coeffs[..lambda].clone_from_slice(&beta_full.coeffs_raw()[..lambda]);
        let rem = e.sub(&beta.mul(&unit.with_precision(1)?)?)?;
        // rem is divisible by T^lambda mod p
        let mut delta = LambdaElement::zero(p, 1, m);
        for i in lambda..m {
            delta.coeffs[i - lambda] = rem.coeffs_raw()[i].clone();
        }
        debug_assert!(rem.coeffs_raw()[..lambda].iter().all(|c| c.is_zero()));
        // lift corrections by p^resv and add
        let scale = BigUint::from(p).pow(resv);
        let lift = |x: &LambdaElement| -> Result<LambdaElement> {
            LambdaElement::new(
                p,
                w,
                x.coeffs_raw()
                    .iter()
                    .map(|c| BigInt::from(c * &scale))
                    .collect(),
            )
        };
        dist = dist.add(&lift(&beta)?)?;
        unit = unit.add(&lift(&delta)?)?;
    }

    Ok(WeierstrassData {
        mu,
        lambda,
        distinguished: dist,
        unit,
    })
}

/// The Iwasawa invariants (mu, lambda) from Weierstrass preparation.
pub fn lambda_mu_invariants(f: &LambdaElement) -> Result<(u32, usize)> {
    let w = weierstrass_prepare(f)?;
    Ok((w.mu, w.lambda))
}

/// Outcome of comparing two Lambda elements on the weight grid
/// z_k = (1+p)^k - 1, k = 0..K.
#[derive(Debug, Clone, Serialize)]
pub struct UniquenessReport {
    pub equal: bool,
    pub first_failure: Option<u64>,
    /// Exponent E such that agreement on the grid certifies f = g mod
    /// (p^E, T^M) (Vandermonde loss bound), when `equal`.
    pub certified_exponent: Option<u32>,
}

/// Tests f = g by evaluating against <.>^k for k = 0..K (K >= M needed for
/// the certificate). Agreement on the grid pins the element up to the
/// documented Vandermonde loss.
pub fn uniqueness_by_weights(
    f: &LambdaElement,
    g: &LambdaElement,
    k_max: u64,
) -> Result<UniquenessReport> {
    let (a, b) = f.align(g)?;
    let p = a.prime();
    let h = a.sub(&b)?;
    let gamma = PadicInt::new(p, h.precision(), BigInt::from(p + 1))?;
    let mut first_failure = None;
    let mut min_eval_prec = h.precision();
    for k in 0..=k_max {
        let z = &gamma.pow_u64(k) - &PadicInt::one(p, h.precision());
        let val = h.evaluate(&z)?;
        min_eval_prec = min_eval_prec.min(val.precision());
        if !val.is_zero_at_precision() {
            first_failure = Some(k);
            break;
        }
    }
    let equal = first_failure.is_none();
    let certified = if equal && k_max as usize >= h.truncation() {
        // v_p(det Vandermonde) over nodes z_0..z_(M-1)
        let m = h.truncation() as u64;
        let mut loss = 0u32;
        for i in 0..m {
            for j in (i + 1)..m {
                loss += 1 + rational::int_valuation(&BigInt::from(j - i), p) as u32;
            }
        }
        Some(min_eval_prec.saturating_sub(loss))
    } else {
        None
    };
    Ok(UniquenessReport {
        equal,
        first_failure,
        certified_exponent: certified,
    })
}

/// Result of Newton reconstruction of a Lambda element from values on a node
/// grid. Non-integral divided differences witness that the value family does
/// not come from a measure.
#[derive(Debug, Clone)]
pub struct NewtonReport {
    pub element: Option<LambdaElement>,
    /// (index, valuation) of divided differences with negative valuation.
    pub nonintegral: Vec<(usize, i64)>,
    /// Coefficient precision of the reconstructed element.
    pub coefficient_precision: u32,
}

/// Reconstruct f in Z_p[[T]] mod (p^*, T^m) from values f(nodes[j]).
///
/// Newton divided differences: for f integral and nodes in pZ_p the divided
/// differences are p-integral (T^n[x_0..x_i] is a complete homogeneous
/// symmetric function), so non-integrality certifies the data violates the
/// Kummer congruences. Truncation error: with K+1 nodes the T^i coefficient
/// (i < m) of f minus the interpolant has valuation >= K+1-m+1, so callers
/// should take K >= target_precision + m.
pub fn newton_interpolate(
    nodes: &[PadicInt],
    values: &[PadicNumber],
    m: usize,
) -> Result<NewtonReport> {
    if nodes.len() != values.len() || nodes.is_empty() {
        return Err(Error::Mismatch("node/value count mismatch".into()));
    }
    let p = nodes[0].prime();
    let k_max = nodes.len() - 1;
    let mut dd: Vec<PadicNumber> = values.to_vec();
    for i in 1..=k_max {
        for j in (i..=k_max).rev() {
            let num = dd[j].sub(&dd[j - 1]);
            let den = &nodes[j] - &nodes[j - i];
            let den_inv = PadicNumber::from_int(den).inverse()?;
            dd[j] = num.mul(&den_inv);
        }
    }
    let mut nonintegral = Vec::new();
    for (i, d) in dd.iter().enumerate() {
        if let Some(v) = d.valuation() {
            if v < 0 {
                nonintegral.push((i, v));
            }
        }
    }
    if !nonintegral.is_empty() {
        return Ok(NewtonReport {
            element: None,
            nonintegral,
            coefficient_precision: 0,
        });
    }
    // integral divided differences: assemble by Horner over Lambda
    let ints: Vec<PadicInt> = dd
        .iter()
        .map(|d| d.to_padic_int())
        .collect::<Result<Vec<_>>>()?;
    let prec = ints.iter().map(|c| c.precision()).min().unwrap();
    let mut poly = LambdaElement::constant(&ints[k_max].with_precision(prec)?, m);
    for j in (0..k_max).rev() {
        // poly = poly * (T - nodes[j]) + dd[j]
        let mut lin = LambdaElement::zero(p, prec, m);
        lin.coeffs[0] = (-&nodes[j].with_precision(prec)?).residue().clone();
        if m > 1 {
            lin.coeffs[1] = BigUint::one();
        }
        poly = poly
            .mul(&lin)?
            .add(&LambdaElement::constant(&ints[j].with_precision(prec)?, m))?;
    }
    Ok(NewtonReport {
        element: Some(poly.clone()),
        nonintegral: vec![],
        coefficient_precision: poly.precision(),
    })
}

/// Outcome of the abstract Kummer solver.
#[derive(Debug, Clone)]
pub enum KummerOutcome {
    /// Integral measure values on the finite quotient.
    Measure(Vec<PadicInt>),
    /// No integral measure; a witness combination violating the congruences.
    NotAMeasure(KummerWitness),
}

/// Combination (b_i) with sum b_i f_i(y) in p^exponent O for all y while
/// sum b_i a_i is not.
#[derive(Debug, Clone)]
pub struct KummerWitness {
    pub combination: Vec<PadicNumber>,
    pub exponent: u32,
    pub detail: String,
}

/// Solve sum_y f_i(y) mu(y) = a_i for a measure mu on a finite quotient.
///
/// `functions[i]` is the value vector of f_i; the f_i must span (the matrix
/// has full column rank). Returns the integral solution or a witness
/// combination certifying that no O-valued measure matches the moments.
pub fn abstract_kummer_solve(
    functions: &[Vec<PadicInt>],
    moments: &[PadicInt],
) -> Result<KummerOutcome> {
    let rows = functions.len();
    if rows == 0 || rows != moments.len() {
        return Err(Error::Mismatch("need one moment per function".into()));
    }
    let npts = functions[0].len();
    if functions.iter().any(|f| f.len() != npts) {
        return Err(Error::Mismatch("ragged function table".into()));
    }
    if rows < npts {
        return Err(Error::Underdetermined(format!(
            "{rows} functions cannot span {npts} points"
        )));
    }
    let p = moments[0].prime();
    let mut mat: Vec<Vec<PadicNumber>> = functions
        .iter()
        .map(|row| row.iter().map(|x| PadicNumber::from_int(x.clone())).collect())
        .collect();
    let mut rhs: Vec<PadicNumber> = moments
        .iter()
        .map(|x| PadicNumber::from_int(x.clone()))
        .collect();
    // track the applied row operations: combo[r] expresses current row r in
    // terms of the original rows
    let mut combo: Vec<Vec<PadicNumber>> = (0..rows)
        .map(|r| {
            (0..rows)
                .map(|c| {
                    let v = if r == c { 1 } else { 0 };
                    PadicNumber::from_int(PadicInt::new(p, moments[0].precision(), v).unwrap())
                })
                .collect()
        })
        .collect();

    let mut pivot_row_of_col = vec![usize::MAX; npts];
    let mut next_row = 0usize;
    for col in 0..npts {
        // minimal-valuation pivot keeps precision
        let mut best: Option<(usize, i64)> = None;
        for (r, row) in mat.iter().enumerate().skip(next_row) {
            if let Some(v) = row[col].valuation() {
                if best.map_or(true, |(_, bv)| v < bv) {
                    best = Some((r, v));
                }
            }
        }
        let (pr, _) = best.ok_or_else(|| {
            Error::Underdetermined(format!("no usable pivot in column {col}"))
        })?;
        mat.swap(next_row, pr);
        rhs.swap(next_row, pr);
        combo.swap(next_row, pr);
        let pivot = mat[next_row][col].clone();
        let pivot_inv = pivot.inverse()?;
        for r in 0..rows {
            if r == next_row {
                continue;
            }
            let entry = mat[r][col].clone();
            if entry.is_zero_at_precision() {
                continue;
            }
            let factor = entry.mul(&pivot_inv);
            for c in 0..npts {
                let t = mat[next_row][c].mul(&factor);
                mat[r][c] = mat[r][c].sub(&t);
            }
            let t = rhs[next_row].mul(&factor);
            rhs[r] = rhs[r].sub(&t);
            for c in 0..rows {
                let t = combo[next_row][c].mul(&factor);
                combo[r][c] = combo[r][c].sub(&t);
            }
        }
        pivot_row_of_col[col] = next_row;
        next_row += 1;
    }

    // leftover rows must be consistent
    for r in next_row..rows {
        if !rhs[r].is_zero_at_precision() {
            let v = rhs[r].valuation().unwrap_or(0);
            let n = if v >= 0 { v as u32 + 1 } else { 1 };
            return Ok(KummerOutcome::NotAMeasure(KummerWitness {
                combination: combo[r].clone(),
                exponent: n,
                detail: format!(
                    "moment combination in row {r} is nonzero while the function combination vanishes"
                ),
            }));
        }
    }

    // read off the solution
    let mut solution = Vec::with_capacity(npts);
    let mut worst: Option<(usize, i64)> = None;
    for col in 0..npts {
        let r = pivot_row_of_col[col];
        let val = rhs[r].mul(&mat[r][col].inverse()?);
        if let Some(v) = val.valuation() {
            if v < 0 && worst.map_or(true, |(_, wv)| v < wv) {
                worst = Some((col, v));
            }
        }
        solution.push(val);
    }
    if let Some((col, v)) = worst {
        let w = (-v) as u32;
        let r = pivot_row_of_col[col];
        let pivot_inv = mat[r][col].inverse()?;
        let scale = PadicInt::new(p, moments[0].precision() + w, BigInt::from(
            BigUint::from(p).pow(w),
        ))?;
        let combination = combo[r]
            .iter()
            .map(|c| c.mul(&pivot_inv).mul_int(&scale))
            .collect();
        return Ok(KummerOutcome::NotAMeasure(KummerWitness {
            combination,
            exponent: w,
            detail: format!("solution value at point {col} has valuation {v}"),
        }));
    }
    let values = solution
        .iter()
        .map(|x| x.to_padic_int())
        .collect::<Result<Vec<_>>>()?;
    Ok(KummerOutcome::Measure(values))
}
