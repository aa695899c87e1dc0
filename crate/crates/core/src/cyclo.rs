//! Exact arithmetic in the cyclotomic integers ℤ[ζ_n].
//!
//! Two carriers live here. [`CycloInt`] is the canonical form: a coefficient
//! vector of length φ(n) reduced modulo Φ_n, so equality is coefficient
//! comparison. [`CycloSum`] is the unreduced exponent-basis form in
//! ℤ[x]/(x^n − 1); sums of roots of unity accumulate there cheaply and are
//! reduced once when a comparison is needed.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Φ_n together with the reduction table x^k mod Φ_n for 0 ≤ k < n.
#[derive(Debug)]
pub struct CycloContext {
    n: u32,
    phi: Vec<i64>,
    xpow: Vec<Vec<i64>>,
}

impl CycloContext {
    fn build(n: u32) -> Self {
        assert!(n >= 1, "conductor must be positive");
        let phi = cyclotomic_poly(n);
        let deg = phi.len() - 1;
        let mut xpow = Vec::with_capacity(n as usize);
        let mut cur = vec![0i64; deg];
        cur[0] = 1;
        for _ in 0..n {
            xpow.push(cur.clone());
            // multiply by x, then fold the x^deg term back using the monic Φ_n
            let top = cur[deg - 1];
            for i in (1..deg).rev() {
                cur[i] = cur[i - 1];
            }
            cur[0] = 0;
            if top != 0 {
                for i in 0..deg {
                    cur[i] -= top * phi[i];
                }
            }
        }
        CycloContext { n, phi, xpow }
    }

    pub fn conductor(&self) -> u32 {
        self.n
    }

    /// Euler totient of the conductor, the rank of ℤ[ζ_n].
    pub fn degree(&self) -> usize {
        self.phi.len() - 1
    }

    /// Coefficients of Φ_n, lowest degree first.
    pub fn reduction_polynomial(&self) -> &[i64] {
        &self.phi
    }

    /// Reduce an exponent-basis vector (entry k multiplies ζ^k) with machine
    /// integers; `None` on overflow.
    pub fn reduce_small(&self, exps: &[i64]) -> Option<Vec<i64>> {
        let mut out = vec![0i64; self.degree()];
        for (k, &c) in exps.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let row = &self.xpow[k % self.n as usize];
            for (o, &r) in out.iter_mut().zip(row) {
                if r != 0 {
                    *o = o.checked_add(c.checked_mul(r)?)?;
                }
            }
        }
        Some(out)
    }

    fn reduce_big(&self, exps: &[BigInt]) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); self.degree()];
        for (k, c) in exps.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let row = &self.xpow[k % self.n as usize];
            for (o, &r) in out.iter_mut().zip(row) {
                if r != 0 {
                    *o += c * r;
                }
            }
        }
        out
    }

    fn reduce_i64(&self, exps: &[i64]) -> Vec<BigInt> {
        match self.reduce_small(exps) {
            Some(v) => v.into_iter().map(BigInt::from).collect(),
            None => {
                let big: Vec<BigInt> = exps.iter().map(|&c| BigInt::from(c)).collect();
                self.reduce_big(&big)
            }
        }
    }
}

fn context_cache() -> &'static Mutex<HashMap<u32, Arc<CycloContext>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<CycloContext>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Shared context for conductor `n`; contexts are cached process-wide.
pub fn cyclo_context(n: u32) -> Arc<CycloContext> {
    assert!(n >= 1, "conductor must be positive");
    let mut cache = context_cache().lock().expect("cyclo cache poisoned");
    cache
        .entry(n)
        .or_insert_with(|| Arc::new(CycloContext::build(n)))
        .clone()
}

/// Φ_n by exact division of x^n − 1 by Φ_m over the proper divisors m of n.
pub fn cyclotomic_poly(n: u32) -> Vec<i64> {
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for m in 1..n {
        if n.is_multiple_of(m) {
            num = exact_div(&num, &cyclotomic_poly(m));
        }
    }
    num
}

// Exact division by a monic divisor; panics if a remainder appears.
fn exact_div(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dd = den.len() - 1;
    debug_assert_eq!(den[dd], 1);
    let mut rem = num.to_vec();
    let qlen = num.len() - dd;
    let mut q = vec![0i64; qlen];
    for i in (0..qlen).rev() {
        let c = rem[i + dd];
        q[i] = c;
        if c != 0 {
            for (j, &dj) in den.iter().enumerate() {
                rem[i + j] -= c * dj;
            }
        }
    }
    assert!(rem.iter().all(|&r| r == 0), "inexact cyclotomic division");
    q
}

/// Canonical element of ℤ[ζ_n].
#[derive(Clone, Debug)]
pub struct CycloInt {
    ctx: Arc<CycloContext>,
    coeffs: Vec<BigInt>,
}

impl PartialEq for CycloInt {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.n == other.ctx.n && self.coeffs == other.coeffs
    }
}

impl Eq for CycloInt {}

impl CycloInt {
    pub fn zero(ctx: &Arc<CycloContext>) -> Self {
        CycloInt {
            ctx: ctx.clone(),
            coeffs: vec![BigInt::zero(); ctx.degree()],
        }
    }

    pub fn from_int(ctx: &Arc<CycloContext>, c: impl Into<BigInt>) -> Self {
        let mut z = Self::zero(ctx);
        z.coeffs[0] = c.into();
        z
    }

    /// ζ_n^{k mod n}, reduced.
    pub fn root_power(ctx: &Arc<CycloContext>, k: i64) -> Self {
        let n = ctx.n as i64;
        let k = k.rem_euclid(n) as usize;
        let coeffs = ctx.xpow[k].iter().map(|&c| BigInt::from(c)).collect();
        CycloInt {
            ctx: ctx.clone(),
            coeffs,
        }
    }

    /// Σ_k exps[k]·ζ^k for an exponent-basis vector of any length.
    pub fn from_exponent_basis(ctx: &Arc<CycloContext>, exps: &[i64]) -> Self {
        CycloInt {
            ctx: ctx.clone(),
            coeffs: ctx.reduce_i64(exps),
        }
    }

    pub fn context(&self) -> &Arc<CycloContext> {
        &self.ctx
    }

    pub fn conductor(&self) -> u32 {
        self.ctx.n
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// The rational integer this element equals, if any.
    pub fn as_integer(&self) -> Option<BigInt> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.ctx.n != other.ctx.n {
            Err(Error::ContextMismatch(self.ctx.n, other.ctx.n))
        } else {
            Ok(())
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(CycloInt {
            ctx: self.ctx.clone(),
            coeffs,
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Ok(CycloInt {
            ctx: self.ctx.clone(),
            coeffs,
        })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let deg = self.ctx.degree();
        let mut prod = vec![BigInt::zero(); 2 * deg - 1];
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
        Ok(CycloInt {
            ctx: self.ctx.clone(),
            coeffs: self.ctx.reduce_big(&prod),
        })
    }

    /// Complex conjugate: ζ^k ↦ ζ^{n−k} applied on the exponent basis.
    pub fn conj(&self) -> Self {
        let n = self.ctx.n as usize;
        let mut exps = vec![BigInt::zero(); n];
        for (k, c) in self.coeffs.iter().enumerate() {
            exps[(n - k) % n] += c;
        }
        CycloInt {
            ctx: self.ctx.clone(),
            coeffs: self.ctx.reduce_big(&exps),
        }
    }

    pub fn norm_sq(&self) -> Self {
        self.try_mul(&self.conj()).expect("same context")
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::from_int(&self.ctx, 1);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Numeric embedding with ζ_n = e^{2πi/n}.
    pub fn to_complex(&self) -> Complex64 {
        let n = self.ctx.n as f64;
        let mut acc = Complex64::new(0.0, 0.0);
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let w = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / n);
            acc += w * c.to_f64().unwrap_or(f64::NAN);
        }
        acc
    }
}

pub fn cyclo_to_complex(z: &CycloInt) -> Complex64 {
    z.to_complex()
}

impl Add for &CycloInt {
    type Output = CycloInt;
    fn add(self, rhs: &CycloInt) -> CycloInt {
        self.try_add(rhs).expect("cyclotomic context mismatch")
    }
}

impl Sub for &CycloInt {
    type Output = CycloInt;
    fn sub(self, rhs: &CycloInt) -> CycloInt {
        self.try_sub(rhs).expect("cyclotomic context mismatch")
    }
}

impl Mul for &CycloInt {
    type Output = CycloInt;
    fn mul(self, rhs: &CycloInt) -> CycloInt {
        self.try_mul(rhs).expect("cyclotomic context mismatch")
    }
}

impl Neg for &CycloInt {
    type Output = CycloInt;
    fn neg(self) -> CycloInt {
        CycloInt {
            ctx: self.ctx.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Display for CycloInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            match (k, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (_, true) => write!(f, "z^{k}")?,
                _ => write!(f, "{mag}z^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Unreduced element Σ_k c_k ζ_n^k of ℤ[x]/(x^n − 1).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CycloSum {
    n: u32,
    c: Vec<i64>,
}

impl CycloSum {
    pub fn zero(n: u32) -> Self {
        CycloSum {
            n,
            c: vec![0; n as usize],
        }
    }

    pub fn monomial(n: u32, k: i64, coeff: i64) -> Self {
        let mut s = Self::zero(n);
        s.add_root(k, coeff);
        s
    }

    pub fn conductor(&self) -> u32 {
        self.n
    }

    pub fn tally(&self) -> &[i64] {
        &self.c
    }

    /// Adds coeff·ζ^k in place.
    pub fn add_root(&mut self, k: i64, coeff: i64) {
        let i = k.rem_euclid(self.n as i64) as usize;
        self.c[i] = self.c[i].checked_add(coeff).expect("coefficient overflow");
    }

    pub fn add_assign(&mut self, other: &Self) {
        assert_eq!(self.n, other.n, "conductor mismatch");
        for (a, b) in self.c.iter_mut().zip(&other.c) {
            *a = a.checked_add(*b).expect("coefficient overflow");
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "conductor mismatch");
        let c = self.c.iter().zip(&other.c).map(|(a, b)| a - b).collect();
        CycloSum { n: self.n, c }
    }

    pub fn scale(&self, s: i64) -> Self {
        let c = self
            .c
            .iter()
            .map(|a| a.checked_mul(s).expect("coefficient overflow"))
            .collect();
        CycloSum { n: self.n, c }
    }

    /// Multiply by ζ^k.
    pub fn rotate(&self, k: i64) -> Self {
        let n = self.n as usize;
        let k = k.rem_euclid(n as i64) as usize;
        let mut c = vec![0; n];
        for (i, &a) in self.c.iter().enumerate() {
            c[(i + k) % n] = a;
        }
        CycloSum { n: self.n, c }
    }

    pub fn conj(&self) -> Self {
        let n = self.n as usize;
        let mut c = vec![0; n];
        for (i, &a) in self.c.iter().enumerate() {
            c[(n - i) % n] = a;
        }
        CycloSum { n: self.n, c }
    }

    /// Cyclic convolution.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "conductor mismatch");
        let n = self.n as usize;
        let mut c = vec![0i64; n];
        let rhs: Vec<(usize, i64)> = other
            .c
            .iter()
            .enumerate()
            .filter(|(_, &b)| b != 0)
            .map(|(j, &b)| (j, b))
            .collect();
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for &(j, b) in &rhs {
                let k = (i + j) % n;
                c[k] = c[k]
                    .checked_add(a.checked_mul(b).expect("coefficient overflow"))
                    .expect("coefficient overflow");
            }
        }
        CycloSum { n: self.n, c }
    }

    pub fn norm_sq(&self) -> Self {
        self.mul(&self.conj())
    }

    /// Re-express over a multiple conductor m (ζ_n = ζ_m^{m/n}).
    pub fn lift(&self, m: u32) -> Self {
        assert!(
            m.is_multiple_of(self.n),
            "conductor {m} is not a multiple of {}",
            self.n
        );
        let f = (m / self.n) as usize;
        let mut c = vec![0; m as usize];
        for (i, &a) in self.c.iter().enumerate() {
            c[i * f] = a;
        }
        CycloSum { n: m, c }
    }

    pub fn reduce(&self) -> CycloInt {
        CycloInt::from_exponent_basis(&cyclo_context(self.n), &self.c)
    }

    pub fn is_zero_exact(&self) -> bool {
        let ctx = cyclo_context(self.n);
        match ctx.reduce_small(&self.c) {
            Some(v) => v.iter().all(|&x| x == 0),
            None => self.reduce().is_zero(),
        }
    }

    /// Exact test against the rational integer `k`.
    pub fn equals_integer(&self, k: i64) -> bool {
        let ctx = cyclo_context(self.n);
        match ctx.reduce_small(&self.c) {
            Some(v) => v[0] == k && v[1..].iter().all(|&x| x == 0),
            None => self.reduce().as_integer() == Some(BigInt::from(k)),
        }
    }

    pub fn eq_exact(&self, other: &Self) -> bool {
        self.sub(other).is_zero_exact()
    }

    pub fn to_complex(&self) -> Complex64 {
        let n = self.n as f64;
        self.c
            .iter()
            .enumerate()
            .filter(|(_, &a)| a != 0)
            .map(|(k, &a)| {
                Complex64::from_polar(a as f64, 2.0 * std::f64::consts::PI * k as f64 / n)
            })
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    // Independent oracle: schoolbook long division over i128 with remainder.
    fn divmod(num: &[i128], den: &[i128]) -> (Vec<i128>, Vec<i128>) {
        let mut r = num.to_vec();
        let dd = den.len() - 1;
        let mut q = vec![0i128; num.len().saturating_sub(dd)];
        for i in (0..q.len()).rev() {
            let c = r[i + dd] / den[dd];
            q[i] = c;
            for j in 0..=dd {
                r[i + j] -= c * den[j];
            }
        }
        (q, r)
    }

    #[test]
    fn phi_small() {
        assert_eq!(cyclotomic_poly(1), vec![-1, 1]);
        assert_eq!(cyclotomic_poly(3), vec![1, 1, 1]);
        assert_eq!(cyclotomic_poly(4), vec![1, 0, 1]);
    }

    #[test]
    fn phi_10_matches_division_oracle() {
        let mut num = vec![0i128; 11];
        num[0] = -1;
        num[10] = 1;
        for den in [vec![-1i128, 1], vec![1, 1], vec![1, 1, 1, 1, 1]] {
            let (q, r) = divmod(&num, &den);
            assert!(r.iter().all(|&x| x == 0));
            num = q;
        }
        let expected: Vec<i64> = num.iter().map(|&x| x as i64).collect();
        assert_eq!(expected, vec![1, -1, 1, -1, 1]);
        assert_eq!(cyclotomic_poly(10), expected);
    }

    #[test]
    fn phi_divides_xn_minus_one() {
        for n in 1..=60u32 {
            let phi = cyclotomic_poly(n);
            let degree = phi.len() - 1;
            let totient = (1..=n).filter(|k| num_integer::gcd(*k, n) == 1).count();
            assert_eq!(degree, totient, "n={n}");
            let mut num = vec![0i128; n as usize + 1];
            num[0] = -1;
            num[n as usize] = 1;
            let den: Vec<i128> = phi.iter().map(|&x| x as i128).collect();
            let (_, r) = divmod(&num, &den);
            assert!(r.iter().all(|&x| x == 0), "n={n}");
        }
    }

    #[test]
    fn phi_vanishes_at_primitive_root() {
        for n in 1..=50u32 {
            let z = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / n as f64);
            let val: Complex64 = cyclotomic_poly(n)
                .iter()
                .enumerate()
                .map(|(k, &c)| z.powi(k as i32) * c as f64)
                .sum();
            assert!(val.norm() < 1e-9, "n={n}: {val}");
        }
    }

    #[test]
    fn root_power_examples() {
        let c4 = cyclo_context(4);
        let m1 = CycloInt::root_power(&c4, 2);
        assert_eq!(m1.coeffs(), &[BigInt::from(-1), BigInt::from(0)]);
        let c3 = cyclo_context(3);
        let s = (0..3).fold(CycloInt::zero(&c3), |acc, k| {
            &acc + &CycloInt::root_power(&c3, k)
        });
        assert!(s.is_zero());
    }

    #[test]
    fn quadratic_gauss_sum_norm_five() {
        // float oracle first
        let zf: Complex64 = (0..5)
            .map(|k: i32| {
                Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * (k * k) as f64 / 5.0)
            })
            .sum();
        assert!((zf.norm_sqr() - 5.0).abs() < 1e-12);
        let c5 = cyclo_context(5);
        let z = (0..5i64).fold(CycloInt::zero(&c5), |acc, k| {
            &acc + &CycloInt::root_power(&c5, k * k)
        });
        assert_eq!(z.norm_sq().as_integer(), Some(BigInt::from(5)));
    }

    #[test]
    fn complex_embedding() {
        let c4 = cyclo_context(4);
        let i = CycloInt::root_power(&c4, 1).to_complex();
        assert!((i - Complex64::new(0.0, 1.0)).norm() < 1e-15);
        let c1 = cyclo_context(1);
        assert_eq!(
            CycloInt::from_int(&c1, 7).to_complex(),
            Complex64::new(7.0, 0.0)
        );
        let c3 = cyclo_context(3);
        let w = (&CycloInt::from_int(&c3, 1) + &CycloInt::root_power(&c3, 1)).to_complex();
        let oracle = Complex64::new(1.0, 0.0)
            + Complex64::new(
                (2.0 * std::f64::consts::PI / 3.0).cos(),
                (2.0 * std::f64::consts::PI / 3.0).sin(),
            );
        assert!((w - oracle).norm() < 1e-12);
        assert!((w.re - 0.5).abs() < 1e-12 && (w.im - 0.866_025_403_784_438_6).abs() < 1e-12);
    }

    #[test]
    fn context_mismatch_is_error() {
        let a = CycloInt::from_int(&cyclo_context(3), 1);
        let b = CycloInt::from_int(&cyclo_context(4), 1);
        assert_eq!(a.try_add(&b), Err(Error::ContextMismatch(3, 4)));
        assert_eq!(a.try_mul(&b), Err(Error::ContextMismatch(3, 4)));
    }

    #[test]
    fn big_coefficients_fall_back() {
        let mut s = CycloSum::zero(7);
        s.add_root(1, i64::MAX / 2);
        s.add_root(8, i64::MAX / 2);
        s.add_root(6, i64::MAX / 2);
        let z = s.reduce();
        let f = z.to_complex();
        let expected = s.to_complex();
        assert!((f - expected).norm() / expected.norm() < 1e-9);
        let sq = z.norm_sq();
        assert!(sq.coeffs().iter().any(|c| c.bits() > 64));
    }

    #[test]
    fn cyclo_sum_lift_and_rotate() {
        let s = CycloSum::monomial(3, 1, 1);
        let l = s.lift(6);
        assert!(l.reduce().to_complex().im > 0.8);
        assert!(l.rotate(3).eq_exact(&l.scale(-1)));
        assert!(CycloSum::monomial(4, 1, 1).norm_sq().equals_integer(1));
    }

    fn element(n: u32) -> impl Strategy<Value = Vec<i64>> {
        proptest::collection::vec(-50i64..50, n as usize)
    }

    fn conductor() -> impl Strategy<Value = u32> {
        prop::sample::select(vec![3u32, 4, 5, 7, 8, 9, 14])
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn mul_commutes((n, a, b) in conductor().prop_flat_map(|n| (Just(n), element(n), element(n)))) {
            let ctx = cyclo_context(n);
            let x = CycloInt::from_exponent_basis(&ctx, &a);
            let y = CycloInt::from_exponent_basis(&ctx, &b);
            prop_assert_eq!(&x * &y, &y * &x);
        }

        #[test]
        fn norm_is_real_nonnegative((n, a) in conductor().prop_flat_map(|n| (Just(n), element(n)))) {
            let z = CycloInt::from_exponent_basis(&cyclo_context(n), &a);
            let v = z.norm_sq().to_complex();
            prop_assert!(v.im.abs() <= 1e-12 * v.re.abs().max(1.0));
            prop_assert!(v.re >= -1e-12);
        }

        #[test]
        fn reduction_preserves_value((n, a) in conductor().prop_flat_map(|n| (Just(n), element(n)))) {
            let s = CycloSum { n, c: a };
            let diff = s.reduce().to_complex() - s.to_complex();
            prop_assert!(diff.norm() < 1e-9);
        }

        #[test]
        fn conj_matches_embedding((n, a) in conductor().prop_flat_map(|n| (Just(n), element(n)))) {
            let z = CycloInt::from_exponent_basis(&cyclo_context(n), &a);
            prop_assert_eq!(z.conj().conj(), z.clone());
            prop_assert!((z.conj().to_complex() - z.to_complex().conj()).norm() < 1e-9);
        }

        #[test]
        fn sum_and_reduced_products_agree((n, a, b) in conductor().prop_flat_map(|n| (Just(n), element(n), element(n)))) {
            let sa = CycloSum { n, c: a };
            let sb = CycloSum { n, c: b };
            prop_assert_eq!(sa.mul(&sb).reduce(), &sa.reduce() * &sb.reduce());
        }

        #[test]
        fn distributive((n, a, b, c) in conductor().prop_flat_map(|n| (Just(n), element(n), element(n), element(n)))) {
            let ctx = cyclo_context(n);
            let (x, y, z) = (
                CycloInt::from_exponent_basis(&ctx, &a),
                CycloInt::from_exponent_basis(&ctx, &b),
                CycloInt::from_exponent_basis(&ctx, &c),
            );
            prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
            prop_assert_eq!(&(&x - &y) + &y, x);
        }
    }
}
