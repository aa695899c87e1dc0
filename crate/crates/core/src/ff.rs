//! Galois fields GF(p^m) in polynomial form over F_p.
//!
//! Elements are addressed by their lexicographic index: the polynomial
//! c_0 + c_1ξ + … + c_{m−1}ξ^{m−1} is read as the digit string
//! [c_0 c_1 … c_{m−1}] with c_0 most significant.

use std::fmt;
use std::sync::Arc;

use crate::cyclo::CycloSum;
use crate::error::{Error, Result};
use crate::matrix::CycloMatrix;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut k = 2;
    while k * k <= n {
        if n.is_multiple_of(k) {
            return false;
        }
        k += 1;
    }
    true
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut k = 2;
    while k * k <= n {
        if n.is_multiple_of(k) {
            let mut e = 0;
            while n.is_multiple_of(k) {
                n /= k;
                e += 1;
            }
            out.push((k, e));
        }
        k += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Dense polynomials over F_p, lowest degree first, no trailing zeros
/// (the zero polynomial is empty).
pub(crate) mod poly {
    pub fn trim(mut a: Vec<u32>) -> Vec<u32> {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    pub fn mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x as u64 * y as u64) % p as u64;
            }
        }
        trim(out.into_iter().map(|x| x as u32).collect())
    }

    fn inv_mod(a: u32, p: u32) -> u32 {
        // p is prime: a^(p−2)
        let (mut base, mut e, mut acc) = (a as u64 % p as u64, p - 2, 1u64);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p as u64;
            }
            base = base * base % p as u64;
            e >>= 1;
        }
        acc as u32
    }

    pub fn rem(a: &[u32], f: &[u32], p: u32) -> Vec<u32> {
        let f = trim(f.to_vec());
        let df = f.len() - 1;
        let lead_inv = inv_mod(f[df], p) as u64;
        let mut r = trim(a.to_vec());
        while r.len() > df {
            let k = r.len() - 1 - df;
            let c = r[r.len() - 1] as u64 * lead_inv % p as u64;
            for (i, &fi) in f.iter().enumerate() {
                let sub = c * fi as u64 % p as u64;
                r[k + i] = ((r[k + i] as u64 + p as u64 - sub) % p as u64) as u32;
            }
            r = trim(r);
        }
        r
    }

    pub fn sub(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let n = a.len().max(b.len());
        let out = (0..n)
            .map(|i| {
                let x = *a.get(i).unwrap_or(&0);
                let y = *b.get(i).unwrap_or(&0);
                (x + p - y) % p
            })
            .collect();
        trim(out)
    }

    pub fn gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
        while !b.is_empty() {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        a
    }

    pub fn powmod(base: &[u32], mut e: u64, f: &[u32], p: u32) -> Vec<u32> {
        let mut acc = vec![1u32];
        let mut b = rem(base, f, p);
        while e > 0 {
            if e & 1 == 1 {
                acc = rem(&mul(&acc, &b, p), f, p);
            }
            b = rem(&mul(&b, &b, p), f, p);
            e >>= 1;
        }
        acc
    }

    /// All monic polynomials of degree `deg`, low coefficients in lex order.
    pub fn monic_of_degree(deg: usize, p: u32) -> impl Iterator<Item = Vec<u32>> {
        let count = (p as u64).pow(deg as u32);
        (0..count).map(move |mut idx| {
            let mut c = vec![0u32; deg + 1];
            for i in (0..deg).rev() {
                c[i] = (idx % p as u64) as u32;
                idx /= p as u64;
            }
            c[deg] = 1;
            c
        })
    }

    /// Trial division for m ≤ 4, gcd(x^{p^k} − x, f) = 1 for k ≤ m/2 above.
    pub fn is_irreducible(f: &[u32], p: u32) -> bool {
        let f = trim(f.to_vec());
        let m = f.len() - 1;
        if m <= 1 {
            return m == 1;
        }
        if m <= 4 {
            for d in 1..=m / 2 {
                for g in monic_of_degree(d, p) {
                    if rem(&f, &g, p).is_empty() {
                        return false;
                    }
                }
            }
            true
        } else {
            let x = vec![0u32, 1];
            let mut xq = x.clone();
            for _ in 1..=m / 2 {
                xq = powmod(&xq, p as u64, &f, p);
                let g = gcd(&f, &sub(&xq, &x, p), p);
                if g.len() > 1 {
                    return false;
                }
            }
            true
        }
    }
}

/// GF(p^m) with exp/log tables over lexicographic indices.
pub struct GFField {
    p: u32,
    m: u32,
    q: u32,
    modulus: Vec<u32>,
    primitive: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
    trace: Vec<u32>,
}

impl fmt::Debug for GFField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GFField")
            .field("p", &self.p)
            .field("m", &self.m)
            .field("modulus", &self.modulus)
            .field("primitive", &self.primitive)
            .finish()
    }
}

impl PartialEq for GFField {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.m == other.m && self.modulus == other.modulus
    }
}

const NO_LOG: u32 = u32::MAX;

/// Builds GF(p^m). With no modulus the lexicographically smallest monic
/// irreducible is used (ordered by (c_0, …, c_{m−1})).
pub fn gf_create(p: u32, m: u32, modulus: Option<&[u32]>) -> Result<Arc<GFField>> {
    if !is_prime(p as u64) {
        return Err(Error::NotPrime(p as u64));
    }
    if m == 0 {
        return Err(Error::OutOfRange(
            "extension degree must be at least 1".into(),
        ));
    }
    let q = (p as u64)
        .checked_pow(m)
        .filter(|&q| q <= 1 << 20)
        .ok_or_else(|| Error::OutOfRange(format!("GF({p}^{m}) exceeds 2^20 elements")))?
        as u32;
    let modulus = match modulus {
        Some(f) => {
            if f.len() != m as usize + 1 || f[m as usize] != 1 || f.iter().any(|&c| c >= p) {
                return Err(Error::BadModulus(format!(
                    "expected monic degree-{m} coefficients below {p}, got {f:?}"
                )));
            }
            if !poly::is_irreducible(f, p) {
                return Err(Error::Reducible(format_poly(f)));
            }
            f.to_vec()
        }
        None => poly::monic_of_degree(m as usize, p)
            .find(|f| poly::is_irreducible(f, p))
            .expect("an irreducible polynomial exists in every degree"),
    };
    let mut field = GFField {
        p,
        m,
        q,
        modulus,
        primitive: 0,
        exp: Vec::new(),
        log: Vec::new(),
        trace: Vec::new(),
    };
    field.primitive = (1..q)
        .find(|&g| field.has_full_order(g))
        .expect("the multiplicative group is cyclic");
    field.fill_tables();
    Ok(Arc::new(field))
}

impl GFField {
    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    /// Monic modulus, lowest degree first.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn primitive_index(&self) -> u32 {
        self.primitive
    }

    pub fn digits(&self, idx: u32) -> Vec<u32> {
        let mut c = vec![0u32; self.m as usize];
        let mut x = idx;
        for i in (0..self.m as usize).rev() {
            c[i] = x % self.p;
            x /= self.p;
        }
        c
    }

    pub fn index_of(&self, digits: &[u32]) -> u32 {
        digits.iter().fold(0, |acc, &c| acc * self.p + c % self.p)
    }

    fn poly_of(&self, idx: u32) -> Vec<u32> {
        poly::trim(self.digits(idx))
    }

    fn idx_of_poly(&self, f: &[u32]) -> u32 {
        let mut d = f.to_vec();
        d.resize(self.m as usize, 0);
        self.index_of(&d)
    }

    fn slow_mul(&self, a: u32, b: u32) -> u32 {
        let r = poly::rem(
            &poly::mul(&self.poly_of(a), &self.poly_of(b), self.p),
            &self.modulus,
            self.p,
        );
        self.idx_of_poly(&r)
    }

    fn slow_pow(&self, a: u32, mut e: u64) -> u32 {
        let one = self.one_index();
        let (mut acc, mut base) = (one, a);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.slow_mul(acc, base);
            }
            base = self.slow_mul(base, base);
            e >>= 1;
        }
        acc
    }

    fn has_full_order(&self, g: u32) -> bool {
        let n = (self.q - 1) as u64;
        let one = self.one_index();
        self.slow_pow(g, n) == one
            && prime_factors(n)
                .iter()
                .all(|&(r, _)| self.slow_pow(g, n / r) != one)
    }

    fn fill_tables(&mut self) {
        let q = self.q as usize;
        self.exp = vec![0; q - 1];
        self.log = vec![NO_LOG; q];
        let mut x = self.one_index();
        for k in 0..q - 1 {
            self.exp[k] = x;
            self.log[x as usize] = k as u32;
            x = self.slow_mul(x, self.primitive);
        }
        self.trace = (0..self.q)
            .map(|a| {
                let mut t = 0u32;
                let mut y = a;
                for _ in 0..self.m {
                    t = self.add_idx(t, y);
                    y = self.pow_idx(y, self.p as u64);
                }
                let d = self.digits(t);
                debug_assert!(d[1..].iter().all(|&c| c == 0), "trace must lie in F_p");
                d[0]
            })
            .collect();
    }

    pub fn zero_index(&self) -> u32 {
        0
    }

    pub fn one_index(&self) -> u32 {
        self.p.pow(self.m - 1)
    }

    /// Index of the constant c ∈ F_p.
    pub fn constant_index(&self, c: u32) -> u32 {
        (c % self.p) * self.one_index()
    }

    pub fn add_idx(&self, a: u32, b: u32) -> u32 {
        let (mut a, mut b, mut out, mut place) = (a, b, 0, 1);
        for _ in 0..self.m {
            out += ((a % self.p + b % self.p) % self.p) * place;
            a /= self.p;
            b /= self.p;
            place *= self.p;
        }
        out
    }

    pub fn neg_idx(&self, a: u32) -> u32 {
        let (mut a, mut out, mut place) = (a, 0, 1);
        for _ in 0..self.m {
            out += ((self.p - a % self.p) % self.p) * place;
            a /= self.p;
            place *= self.p;
        }
        out
    }

    pub fn sub_idx(&self, a: u32, b: u32) -> u32 {
        self.add_idx(a, self.neg_idx(b))
    }

    pub fn mul_idx(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let k = (self.log[a as usize] as u64 + self.log[b as usize] as u64) % (self.q as u64 - 1);
        self.exp[k as usize]
    }

    pub fn pow_idx(&self, a: u32, e: u64) -> u32 {
        if a == 0 {
            return if e == 0 { self.one_index() } else { 0 };
        }
        let k = self.log[a as usize] as u64 * (e % (self.q as u64 - 1)) % (self.q as u64 - 1);
        self.exp[k as usize]
    }

    pub fn inv_idx(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        let n = self.q - 1;
        Some(self.exp[((n - self.log[a as usize]) % n) as usize])
    }

    /// Tr(x) = Σ_{k<m} x^{p^k}, as a residue mod p.
    pub fn trace_idx(&self, a: u32) -> u32 {
        self.trace[a as usize]
    }

    /// Discrete log to base of the primitive element; `None` for zero.
    pub fn log_idx(&self, a: u32) -> Option<u32> {
        let l = self.log[a as usize];
        (l != NO_LOG).then_some(l)
    }

    pub fn exp_idx(&self, k: u64) -> u32 {
        self.exp[(k % (self.q as u64 - 1)) as usize]
    }
}

/// Field element; carries its field so cross-field use is caught.
#[derive(Clone)]
pub struct GFElement {
    field: Arc<GFField>,
    idx: u32,
}

impl fmt::Debug for GFElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})[{}]", self.field.p, self.field.m, self.label())
    }
}

impl PartialEq for GFElement {
    fn eq(&self, other: &Self) -> bool {
        self.idx == other.idx && *self.field == *other.field
    }
}

impl GFElement {
    pub fn new(field: &Arc<GFField>, idx: u32) -> Self {
        assert!(idx < field.q, "index out of range");
        GFElement {
            field: field.clone(),
            idx,
        }
    }

    /// From polynomial coefficients c_0, c_1, … (coefficient of ξ^i at i).
    pub fn from_coeffs(field: &Arc<GFField>, coeffs: &[u32]) -> Result<Self> {
        if coeffs.len() != field.m as usize || coeffs.iter().any(|&c| c >= field.p) {
            return Err(Error::OutOfRange(format!(
                "{coeffs:?} is not an element of GF({}^{})",
                field.p, field.m
            )));
        }
        Ok(GFElement {
            field: field.clone(),
            idx: field.index_of(coeffs),
        })
    }

    pub fn zero(field: &Arc<GFField>) -> Self {
        Self::new(field, 0)
    }

    pub fn one(field: &Arc<GFField>) -> Self {
        Self::new(field, field.one_index())
    }

    /// The class of the indeterminate ξ.
    pub fn xi(field: &Arc<GFField>) -> Self {
        let mut c = vec![0u32; field.m as usize];
        if field.m >= 2 {
            c[1] = 1;
            Self::from_coeffs(field, &c).expect("in range")
        } else {
            // ξ ≡ −c_0 when the modulus is ξ + c_0
            Self::new(
                field,
                field.constant_index((field.p - field.modulus[0]) % field.p),
            )
        }
    }

    pub fn primitive(field: &Arc<GFField>) -> Self {
        Self::new(field, field.primitive)
    }

    pub fn field(&self) -> &Arc<GFField> {
        &self.field
    }

    pub fn index(&self) -> u32 {
        self.idx
    }

    pub fn coeffs(&self) -> Vec<u32> {
        self.field.digits(self.idx)
    }

    pub fn is_zero(&self) -> bool {
        self.idx == 0
    }

    /// Digit-string label, e.g. "12" for 1 + 2ξ.
    pub fn label(&self) -> String {
        self.coeffs()
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(if self.field.p > 10 { " " } else { "" })
    }

    fn check(&self, other: &Self) -> Result<()> {
        if *self.field == *other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self::new(
            &self.field,
            self.field.add_idx(self.idx, other.idx),
        ))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self::new(
            &self.field,
            self.field.sub_idx(self.idx, other.idx),
        ))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self::new(
            &self.field,
            self.field.mul_idx(self.idx, other.idx),
        ))
    }

    pub fn neg(&self) -> Self {
        Self::new(&self.field, self.field.neg_idx(self.idx))
    }

    pub fn inv(&self) -> Result<Self> {
        self.field
            .inv_idx(self.idx)
            .map(|i| Self::new(&self.field, i))
            .ok_or(Error::DivisionByZero)
    }

    pub fn pow(&self, e: u64) -> Self {
        Self::new(&self.field, self.field.pow_idx(self.idx, e))
    }

    pub fn trace(&self) -> u32 {
        self.field.trace_idx(self.idx)
    }
}

pub fn gf_trace(x: &GFElement) -> u32 {
    x.trace()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Order {
    LexPolynomial,
    Monomial,
}

/// Lex order is 0..q by index; monomial order is 0, α, α², …, α^{q−1} = 1.
pub fn gf_enumerate(field: &Arc<GFField>, order: Order) -> Vec<GFElement> {
    match order {
        Order::LexPolynomial => (0..field.q).map(|i| GFElement::new(field, i)).collect(),
        Order::Monomial => std::iter::once(GFElement::zero(field))
            .chain((1..field.q as u64).map(|k| GFElement::new(field, field.exp_idx(k))))
            .collect(),
    }
}

/// (X̂_x, Ẑ_x) with X̂_x φ_y = φ_{y−x} and Ẑ_x φ_y = ζ_p^{Tr(xy)} φ_y, over
/// the lexicographic labeling of φ.
pub fn gf_shift_phase(field: &Arc<GFField>, x: &GFElement) -> Result<(CycloMatrix, CycloMatrix)> {
    if *x.field != **field {
        return Err(Error::FieldMismatch);
    }
    let q = field.q as usize;
    let p = field.p;
    let shift = CycloMatrix::from_exponents(p, q, q, 1, |row, col| {
        (row as u32 == field.sub_idx(col as u32, x.idx)).then_some(0)
    });
    let phase = CycloMatrix::from_exponents(p, q, q, 1, |row, col| {
        (row == col).then(|| field.trace_idx(field.mul_idx(x.idx, col as u32)) as i64)
    });
    Ok((shift, phase))
}

/// χ(x) = ζ_p^{Tr(x)} as an exact sum.
pub fn character(x: &GFElement) -> CycloSum {
    CycloSum::monomial(x.field.p, x.trace() as i64, 1)
}

pub fn format_poly(f: &[u32]) -> String {
    let mut terms = Vec::new();
    for (k, &c) in f.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let coef = if c == 1 && k > 0 {
            String::new()
        } else {
            c.to_string()
        };
        terms.push(match k {
            0 => coef,
            1 => format!("{coef}x"),
            _ => format!("{coef}x^{k}"),
        });
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn gf9() -> Arc<GFField> {
        gf_create(3, 2, Some(&[1, 0, 1])).unwrap()
    }

    #[test]
    fn prime_field_defaults() {
        let f = gf_create(3, 1, None).unwrap();
        assert_eq!(f.modulus(), &[0, 1]);
        assert_eq!(GFElement::primitive(&f).coeffs(), vec![2]);
        assert_eq!(GFElement::xi(&f), GFElement::zero(&f));
    }

    #[test]
    fn gf9_construction() {
        let f = gf9();
        assert_eq!(f.order(), 9);
        // default modulus for GF(9) is the same polynomial
        assert_eq!(gf_create(3, 2, None).unwrap().modulus(), &[1, 0, 1]);
        assert_eq!(
            gf_create(3, 2, Some(&[1, 2, 1])).unwrap_err(),
            Error::Reducible("x^2 + 2x + 1".into())
        );
        assert!(matches!(gf_create(4, 1, None), Err(Error::NotPrime(4))));
        assert!(matches!(
            gf_create(3, 2, Some(&[1, 0, 2])),
            Err(Error::BadModulus(_))
        ));
    }

    #[test]
    fn gf9_arith_examples() {
        let f = gf9();
        let x = GFElement::xi(&f);
        assert_eq!(x.mul(&x).unwrap().coeffs(), vec![2, 0]);
        assert_eq!(GFElement::primitive(&f).pow(8), GFElement::one(&f));
        assert_eq!(x.pow(8), GFElement::one(&f));
        assert_eq!(GFElement::zero(&f).inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn gf25_inverses() {
        let f = gf_create(5, 2, None).unwrap();
        for e in gf_enumerate(&f, Order::LexPolynomial).into_iter().skip(1) {
            assert_eq!(e.inv().unwrap().mul(&e).unwrap(), GFElement::one(&f));
        }
    }

    #[test]
    fn gf9_trace_examples() {
        let f = gf9();
        assert_eq!(GFElement::zero(&f).trace(), 0);
        assert_eq!(GFElement::one(&f).trace(), 2);
        // oracle: ξ + ξ^3 computed from the polynomial arithmetic directly
        let x = GFElement::xi(&f);
        let oracle = x.add(&x.mul(&x).unwrap().mul(&x).unwrap()).unwrap();
        assert!(oracle.is_zero());
        assert_eq!(x.trace(), 0);
    }

    #[test]
    fn enumeration_orders() {
        let f3 = gf_create(3, 1, None).unwrap();
        let labels: Vec<_> = gf_enumerate(&f3, Order::LexPolynomial)
            .iter()
            .map(|e| e.label())
            .collect();
        assert_eq!(labels, ["0", "1", "2"]);
        let f = gf9();
        let labels: Vec<_> = gf_enumerate(&f, Order::LexPolynomial)
            .iter()
            .map(|e| e.label())
            .collect();
        assert_eq!(
            labels,
            ["00", "01", "02", "10", "11", "12", "20", "21", "22"]
        );
        let mono = gf_enumerate(&f, Order::Monomial);
        let a = GFElement::primitive(&f);
        assert!(mono[0].is_zero());
        for (k, e) in mono.iter().enumerate().skip(1) {
            assert_eq!(*e, a.pow(k as u64));
        }
        assert_eq!(mono[8], GFElement::one(&f));
    }

    #[test]
    fn cross_field_is_error() {
        let a = GFElement::one(&gf9());
        let b = GFElement::one(&gf_create(3, 2, Some(&[2, 1, 1])).unwrap());
        assert_eq!(a.add(&b), Err(Error::FieldMismatch));
        assert_eq!(a.mul(&b), Err(Error::FieldMismatch));
    }

    #[test]
    fn irreducibility_paths_agree() {
        // compare the two criteria on degree ≤ 4 over F_2 and F_3
        for p in [2u32, 3] {
            for m in 2..=4usize {
                for f in poly::monic_of_degree(m, p) {
                    let x = vec![0u32, 1];
                    let mut xq = x.clone();
                    let mut gcd_ok = true;
                    for _ in 1..=m / 2 {
                        xq = poly::powmod(&xq, p as u64, &f, p);
                        if poly::gcd(&f, &poly::sub(&xq, &x, p), p).len() > 1 {
                            gcd_ok = false;
                        }
                    }
                    assert_eq!(poly::is_irreducible(&f, p), gcd_ok, "{f:?} mod {p}");
                }
            }
        }
        assert!(gf_create(2, 5, None).is_ok());
        assert_eq!(
            gf_create(2, 5, None).unwrap().modulus(),
            &[1, 0, 0, 1, 0, 1]
        );
    }

    #[test]
    fn shift_phase_small() {
        let f3 = gf_create(3, 1, None).unwrap();
        let one = GFElement::one(&f3);
        let (x, z) = gf_shift_phase(&f3, &one).unwrap();
        // φ_y ↦ φ_{y−1}: column y has its 1 in row y−1
        let cycle = CycloMatrix::from_exponents(3, 3, 3, 1, |r, c| (r == (c + 2) % 3).then_some(0));
        assert!(x.eq_exact(&cycle));
        let diag = CycloMatrix::from_exponents(3, 3, 3, 1, |r, c| (r == c).then_some(r as i64));
        assert!(z.eq_exact(&diag));
    }

    #[test]
    fn shift_phase_commutation_gf9() {
        let f = gf9();
        for a in 0..9 {
            for b in 0..9 {
                let (xa, _) = gf_shift_phase(&f, &GFElement::new(&f, a)).unwrap();
                let (_, zb) = gf_shift_phase(&f, &GFElement::new(&f, b)).unwrap();
                let chi = f.trace_idx(f.mul_idx(a, b)) as i64;
                let lhs = xa.mul(&zb);
                let rhs = zb.mul(&xa);
                let rhs = CycloMatrix::from_exponents(3, 9, 9, 1, |r, c| (r == c).then_some(chi))
                    .mul(&rhs);
                assert!(lhs.eq_exact(&rhs), "x={a} y={b}");
            }
        }
    }

    fn fields() -> Vec<Arc<GFField>> {
        vec![
            gf_create(2, 3, None).unwrap(),
            gf_create(3, 1, None).unwrap(),
            gf9(),
            gf_create(3, 2, Some(&[2, 1, 1])).unwrap(),
            gf_create(3, 3, None).unwrap(),
            gf_create(5, 2, None).unwrap(),
            gf_create(7, 2, None).unwrap(),
        ]
    }

    #[test]
    fn frobenius_fixes_trace_and_character_nondegenerate() {
        for f in fields() {
            let p = f.p() as i64;
            for x in 0..f.order() {
                assert_eq!(f.trace_idx(f.pow_idx(x, f.p() as u64)), f.trace_idx(x));
                if x != 0 {
                    let mut s = CycloSum::zero(p as u32);
                    for y in 0..f.order() {
                        s.add_root(f.trace_idx(f.mul_idx(x, y)) as i64, 1);
                    }
                    assert!(s.is_zero_exact(), "{f:?} x={x}");
                }
            }
        }
    }

    #[test]
    fn shift_phase_additive() {
        let f = gf9();
        for a in 0..9 {
            for b in 0..9 {
                let (xa, za) = gf_shift_phase(&f, &GFElement::new(&f, a)).unwrap();
                let (xb, zb) = gf_shift_phase(&f, &GFElement::new(&f, b)).unwrap();
                let (xs, zs) = gf_shift_phase(&f, &GFElement::new(&f, f.add_idx(a, b))).unwrap();
                assert!(xs.eq_exact(&xa.mul(&xb)));
                assert!(zs.eq_exact(&za.mul(&zb)));
            }
        }
    }

    proptest! {
        #[test]
        fn field_axioms(fi in 0usize..7, a in any::<u32>(), b in any::<u32>(), c in any::<u32>()) {
            let f = &fields()[fi];
            let (a, b, c) = (a % f.order(), b % f.order(), c % f.order());
            prop_assert_eq!(f.mul_idx(a, f.add_idx(b, c)), f.add_idx(f.mul_idx(a, b), f.mul_idx(a, c)));
            prop_assert_eq!(f.mul_idx(f.mul_idx(a, b), c), f.mul_idx(a, f.mul_idx(b, c)));
            prop_assert_eq!(f.mul_idx(a, b), f.slow_mul(a, b));
            prop_assert_eq!(f.trace_idx(f.add_idx(a, b)), (f.trace_idx(a) + f.trace_idx(b)) % f.p());
        }
    }
}
