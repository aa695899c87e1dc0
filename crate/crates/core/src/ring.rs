//! The Galois ring GR(4, m) = ℤ_4[ξ]/⟨P_m(ξ)⟩.
//!
//! P_m is the Graeffe lift of a binary primitive polynomial h, so its root β
//! generates the Teichmüller set T_m = {0, β, β², …, β^{2^m−1} = 1}.

use std::fmt;
use std::sync::Arc;

use crate::cyclo::CycloSum;
use crate::error::{Error, Result};
use crate::ff::{poly, prime_factors};

pub struct GaloisRing {
    m: u32,
    seed: Vec<u32>,
    basic_irreducible: Vec<u8>,
    teichmuller: Vec<Vec<u8>>,
}

impl fmt::Debug for GaloisRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GaloisRing")
            .field("m", &self.m)
            .field("basic_irreducible", &self.basic_irreducible)
            .finish()
    }
}

impl PartialEq for GaloisRing {
    fn eq(&self, other: &Self) -> bool {
        self.m == other.m && self.basic_irreducible == other.basic_irreducible
    }
}

/// g with g(x²) = (−1)^m h(x)h(−x), reduced mod 4.
pub fn graeffe_lift(h: &[u32]) -> Vec<u8> {
    let m = h.len() - 1;
    let hm: Vec<i64> = h
        .iter()
        .enumerate()
        .map(|(i, &c)| if i % 2 == 1 { -(c as i64) } else { c as i64 })
        .collect();
    let mut prod = vec![0i64; 2 * m + 1];
    for (i, &a) in h.iter().enumerate() {
        for (j, &b) in hm.iter().enumerate() {
            prod[i + j] += a as i64 * b;
        }
    }
    let sign = if m % 2 == 1 { -1 } else { 1 };
    (0..=m)
        .map(|i| (sign * prod[2 * i]).rem_euclid(4) as u8)
        .collect()
}

pub fn gr_create(m: u32) -> Result<Arc<GaloisRing>> {
    if m == 0 {
        return Err(Error::OutOfRange("ring degree must be at least 1".into()));
    }
    if m > 12 {
        return Err(Error::OutOfRange(format!(
            "GR(4,{m}) is beyond the supported size"
        )));
    }
    let order = (1u64 << m) - 1;
    for seed in poly::monic_of_degree(m as usize, 2) {
        if !poly::is_irreducible(&seed, 2) {
            continue;
        }
        let mut ring = GaloisRing {
            m,
            seed: seed.clone(),
            basic_irreducible: graeffe_lift(&seed),
            teichmuller: Vec::new(),
        };
        let beta = ring.beta_coeffs();
        let one = ring.one_coeffs();
        let full = ring.pow_c(&beta, order) == one
            && prime_factors(order)
                .iter()
                .all(|&(r, _)| ring.pow_c(&beta, order / r) != one);
        if !full {
            continue;
        }
        let mut t = vec![ring.zero_coeffs()];
        let mut x = one;
        for _ in 0..order {
            x = ring.mul_c(&x, &beta);
            t.push(x.clone());
        }
        ring.teichmuller = t;
        return Ok(Arc::new(ring));
    }
    unreachable!("primitive polynomials exist in every degree")
}

impl GaloisRing {
    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn size(&self) -> usize {
        1 << (2 * self.m)
    }

    /// Binary polynomial the basic irreducible was lifted from.
    pub fn seed(&self) -> &[u32] {
        &self.seed
    }

    /// Monic P_m over ℤ_4, lowest degree first.
    pub fn basic_irreducible(&self) -> &[u8] {
        &self.basic_irreducible
    }

    fn zero_coeffs(&self) -> Vec<u8> {
        vec![0; self.m as usize]
    }

    fn one_coeffs(&self) -> Vec<u8> {
        let mut c = self.zero_coeffs();
        c[0] = 1;
        c
    }

    fn beta_coeffs(&self) -> Vec<u8> {
        if self.m == 1 {
            vec![(4 - self.basic_irreducible[0]) % 4]
        } else {
            let mut c = self.zero_coeffs();
            c[1] = 1;
            c
        }
    }

    fn reduce(&self, mut a: Vec<u8>) -> Vec<u8> {
        let m = self.m as usize;
        let p = &self.basic_irreducible;
        for k in (m..a.len()).rev() {
            let c = a[k];
            if c != 0 {
                for i in 0..=m {
                    a[k - m + i] = (a[k - m + i] + 4 - (c * p[i]) % 4) % 4;
                }
            }
        }
        a.truncate(m);
        a.resize(m, 0);
        a
    }

    fn mul_c(&self, a: &[u8], b: &[u8]) -> Vec<u8> {
        let mut prod = vec![0u8; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % 4;
            }
        }
        self.reduce(prod)
    }

    fn pow_c(&self, a: &[u8], mut e: u64) -> Vec<u8> {
        let mut acc = self.one_coeffs();
        let mut base = a.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_c(&acc, &base);
            }
            base = self.mul_c(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// T_m in the order 0, β¹, …, β^{2^m−1} = 1.
    pub fn teichmuller(self: &Arc<Self>) -> Vec<GRElement> {
        self.teichmuller
            .iter()
            .map(|c| GRElement {
                ring: self.clone(),
                coeffs: c.clone(),
            })
            .collect()
    }

    /// Every element, coefficient tuples (c_0, …, c_{m−1}) in lex order.
    pub fn elements(self: &Arc<Self>) -> Vec<GRElement> {
        let m = self.m as usize;
        (0..self.size())
            .map(|mut idx| {
                let mut c = vec![0u8; m];
                for i in (0..m).rev() {
                    c[i] = (idx % 4) as u8;
                    idx /= 4;
                }
                GRElement {
                    ring: self.clone(),
                    coeffs: c,
                }
            })
            .collect()
    }

    pub fn beta(self: &Arc<Self>) -> GRElement {
        GRElement {
            ring: self.clone(),
            coeffs: self.beta_coeffs(),
        }
    }
}

#[derive(Clone)]
pub struct GRElement {
    ring: Arc<GaloisRing>,
    coeffs: Vec<u8>,
}

impl PartialEq for GRElement {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs && *self.ring == *other.ring
    }
}

impl fmt::Debug for GRElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for GRElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (k, &c) in self.coeffs.iter().enumerate() {
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
                1 => format!("{coef}β"),
                _ => format!("{coef}β^{k}"),
            });
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

impl GRElement {
    /// From coefficients over ℤ_4 in powers of ξ (for m = 1, the integer).
    pub fn from_coeffs(ring: &Arc<GaloisRing>, coeffs: &[u8]) -> Result<Self> {
        if coeffs.len() != ring.m as usize || coeffs.iter().any(|&c| c >= 4) {
            return Err(Error::OutOfRange(format!(
                "{coeffs:?} is not an element of GR(4,{})",
                ring.m
            )));
        }
        Ok(GRElement {
            ring: ring.clone(),
            coeffs: coeffs.to_vec(),
        })
    }

    pub fn from_int(ring: &Arc<GaloisRing>, c: i64) -> Self {
        let mut coeffs = ring.zero_coeffs();
        coeffs[0] = c.rem_euclid(4) as u8;
        GRElement {
            ring: ring.clone(),
            coeffs,
        }
    }

    pub fn ring(&self) -> &Arc<GaloisRing> {
        &self.ring
    }

    pub fn coeffs(&self) -> &[u8] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    fn check(&self, other: &Self) -> Result<()> {
        if *self.ring == *other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    fn with(&self, coeffs: Vec<u8>) -> Self {
        GRElement {
            ring: self.ring.clone(),
            coeffs,
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.with(
            self.coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| (a + b) % 4)
                .collect(),
        ))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.with(
            self.coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| (a + 4 - b) % 4)
                .collect(),
        ))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.with(self.ring.mul_c(&self.coeffs, &other.coeffs)))
    }

    pub fn scale(&self, k: i64) -> Self {
        let k = k.rem_euclid(4) as u8;
        self.with(self.coeffs.iter().map(|&c| (c * k) % 4).collect())
    }

    pub fn pow(&self, e: u64) -> Self {
        self.with(self.ring.pow_c(&self.coeffs, e))
    }

    /// x = a + 2b with a, b ∈ T_m: a = x^{2^m}, b = ((x − a)/2)^{2^m}.
    pub fn two_adic(&self) -> (GRElement, GRElement) {
        let q = 1u64 << self.ring.m;
        let a = self.pow(q);
        let diff = self.sub(&a).expect("same ring");
        debug_assert!(diff.coeffs.iter().all(|c| c % 2 == 0));
        let half = self.with(diff.coeffs.iter().map(|c| c / 2).collect());
        let b = half.pow(q);
        (a, b)
    }

    /// φ(a + 2b) = a² + 2b².
    pub fn frobenius(&self) -> GRElement {
        let (a, b) = self.two_adic();
        a.mul(&a)
            .unwrap()
            .add(&b.mul(&b).unwrap().scale(2))
            .unwrap()
    }

    /// Tr = Σ_{k<m} φ^k, an element of ℤ_4.
    pub fn trace(&self) -> u8 {
        let mut acc = self.with(self.ring.zero_coeffs());
        let mut y = self.clone();
        for _ in 0..self.ring.m {
            acc = acc.add(&y).unwrap();
            y = y.frobenius();
        }
        debug_assert!(
            acc.coeffs[1..].iter().all(|&c| c == 0),
            "trace must lie in ℤ_4"
        );
        acc.coeffs[0]
    }
}

pub fn gr_frobenius(x: &GRElement) -> GRElement {
    x.frobenius()
}

pub fn gr_trace(x: &GRElement) -> u8 {
    x.trace()
}

pub fn gr_two_adic(x: &GRElement) -> (GRElement, GRElement) {
    x.two_adic()
}

/// Σ_{x∈T_m} i^{Tr(ux)} as an exact element of ℤ[i].
pub fn teichmuller_character_sum(u: &GRElement) -> CycloSum {
    let mut s = CycloSum::zero(4);
    for x in u.ring.teichmuller() {
        s.add_root(u.mul(&x).unwrap().trace() as i64, 1);
    }
    s
}
