//! MUB constructions in exponent form.
//!
//! A phase vector with exponents k_x over conductor n stands for
//! Σ_x ζ_n^{k_x}|x⟩/√d; a unit vector is |x⟩.

use std::fmt;

use num_complex::Complex64;

use crate::cyclo::CycloSum;
use crate::error::{Error, Result};
use crate::ff::{gf_create, is_prime, GFElement};
use crate::matrix::CycloMatrix;
use crate::ring::gr_create;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum BasisVector {
    Phase(Vec<u32>),
    Unit(usize),
}

impl BasisVector {
    pub fn to_complex(&self, d: usize, conductor: u32) -> Vec<Complex64> {
        match self {
            BasisVector::Phase(e) => {
                let s = 1.0 / (d as f64).sqrt();
                e.iter()
                    .map(|&k| {
                        Complex64::from_polar(
                            s,
                            2.0 * std::f64::consts::PI * k as f64 / conductor as f64,
                        )
                    })
                    .collect()
            }
            BasisVector::Unit(x) => {
                let mut v = vec![Complex64::new(0.0, 0.0); d];
                v[*x] = Complex64::new(1.0, 0.0);
                v
            }
        }
    }

    /// The √d-scaled (phase) or plain (unit) amplitude vector as exact sums.
    pub fn to_sums(&self, d: usize, conductor: u32) -> Vec<CycloSum> {
        match self {
            BasisVector::Phase(e) => e
                .iter()
                .map(|&k| CycloSum::monomial(conductor, k as i64, 1))
                .collect(),
            BasisVector::Unit(x) => (0..d)
                .map(|i| {
                    if i == *x {
                        CycloSum::monomial(conductor, 0, 1)
                    } else {
                        CycloSum::zero(conductor)
                    }
                })
                .collect(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BasisKind {
    Phase,
    Computational,
    Mixed,
}

impl BasisKind {
    pub fn as_str(self) -> &'static str {
        match self {
            BasisKind::Phase => "phase",
            BasisKind::Computational => "computational",
            BasisKind::Mixed => "mixed",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Basis {
    pub label: String,
    pub conductor: u32,
    pub vectors: Vec<BasisVector>,
}

impl Basis {
    pub fn dimension(&self) -> usize {
        self.vectors.len()
    }

    pub fn kind(&self) -> BasisKind {
        let units = self
            .vectors
            .iter()
            .filter(|v| matches!(v, BasisVector::Unit(_)))
            .count();
        match units {
            0 => BasisKind::Phase,
            u if u == self.vectors.len() => BasisKind::Computational,
            _ => BasisKind::Mixed,
        }
    }

    pub fn computational(d: usize, conductor: u32, label: String) -> Self {
        Basis {
            label,
            conductor,
            vectors: (0..d).map(BasisVector::Unit).collect(),
        }
    }

    pub fn to_complex(&self) -> Vec<Vec<Complex64>> {
        self.vectors
            .iter()
            .map(|v| v.to_complex(self.dimension(), self.conductor))
            .collect()
    }

    /// Columns are the basis vectors.
    pub fn to_matrix(&self) -> CycloMatrix {
        let d = self.dimension();
        let cols: Vec<_> = self
            .vectors
            .iter()
            .map(|v| v.to_sums(d, self.conductor))
            .collect();
        let scale = if self.kind() == BasisKind::Phase {
            d as u64
        } else {
            1
        };
        assert!(
            self.kind() != BasisKind::Mixed,
            "mixed bases have no common scale"
        );
        let mut m = CycloMatrix::zeros(self.conductor, d, d).with_scale(scale);
        for (j, col) in cols.iter().enumerate() {
            for (i, e) in col.iter().enumerate() {
                *m.entry_mut(i, j) = e.clone();
            }
        }
        m
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Master,
    Alternative,
    Gf,
    Gr,
    W4,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Master => "master",
            Method::Alternative => "alternative",
            Method::Gf => "gf",
            Method::Gr => "gr",
            Method::W4 => "w4",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "master" => Method::Master,
            "alternative" => Method::Alternative,
            "gf" => Method::Gf,
            "gr" => Method::Gr,
            "w4" => Method::W4,
            _ => return None,
        })
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldMeta {
    pub p: u32,
    pub m: u32,
    pub modulus: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingMeta {
    pub m: u32,
    pub basic_irreducible: Vec<u8>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MubSet {
    pub dimension: usize,
    pub conductor: u32,
    pub method: Method,
    pub field: Option<FieldMeta>,
    pub ring: Option<RingMeta>,
    pub bases: Vec<Basis>,
    /// The construction asserts d+1 mutually unbiased bases.
    pub completeness_claimed: bool,
    /// Bases the construction asserts to be pairwise unbiased.
    pub claimed_mub_indices: Vec<usize>,
}

/// Exponent of ζ_{2d} at position n of |aα⟩ in the master formula.
pub fn master_exponent(d: usize, a: usize, alpha: usize, n: usize) -> u32 {
    let d = d as i64;
    let (a, alpha, n) = (a as i64, alpha as i64, n as i64);
    ((n + 1) * (d - n - 1) * a - 2 * (n + 1) * alpha).rem_euclid(2 * d) as u32
}

/// |aα⟩ = Σ_n ω^{(n+1)(d−n−1)a/2 − (n+1)α}|n⟩/√d over conductor 2d.
pub fn mub_master(d: usize) -> Result<MubSet> {
    if d < 2 {
        return Err(Error::OutOfRange(format!(
            "dimension must be at least 2, got {d}"
        )));
    }
    let n = 2 * d as u32;
    let mut bases: Vec<Basis> = (0..d)
        .map(|a| Basis {
            label: format!("B_{a}"),
            conductor: n,
            vectors: (0..d)
                .map(|alpha| {
                    BasisVector::Phase((0..d).map(|x| master_exponent(d, a, alpha, x)).collect())
                })
                .collect(),
        })
        .collect();
    bases.push(Basis::computational(d, n, format!("B_{d}")));
    let prime = is_prime(d as u64);
    Ok(MubSet {
        dimension: d,
        conductor: n,
        method: Method::Master,
        field: None,
        ring: None,
        bases,
        completeness_claimed: prime,
        claimed_mub_indices: if prime {
            (0..=d).collect()
        } else {
            vec![0, 1, d]
        },
    })
}

/// |aα⟩′ = Σ_n ω^{(an+α)n}|n⟩/√p over conductor p.
pub fn mub_alternative(p: usize) -> Result<MubSet> {
    if !is_prime(p as u64) {
        return Err(Error::NotPrime(p as u64));
    }
    let mut bases: Vec<Basis> = (0..p)
        .map(|a| Basis {
            label: format!("B_{a}"),
            conductor: p as u32,
            vectors: (0..p)
                .map(|alpha| {
                    BasisVector::Phase((0..p).map(|x| (((a * x + alpha) * x) % p) as u32).collect())
                })
                .collect(),
        })
        .collect();
    bases.push(Basis::computational(p, p as u32, format!("B_{p}")));
    Ok(MubSet {
        dimension: p,
        conductor: p as u32,
        method: Method::Alternative,
        field: None,
        ring: None,
        bases,
        completeness_claimed: p % 2 == 1,
        claimed_mub_indices: (0..=p).collect(),
    })
}

/// |aα⟩ = Σ_x ζ_p^{Tr(ax² + αx)}|x⟩/√(p^m), a and α in lex order.
pub fn mub_gf(p: u32, m: u32, modulus: Option<&[u32]>) -> Result<MubSet> {
    if !is_prime(p as u64) {
        return Err(Error::NotPrime(p as u64));
    }
    if p == 2 {
        return Err(Error::EvenCharacteristic(2));
    }
    let field = gf_create(p, m, modulus)?;
    let q = field.order();
    let d = q as usize;
    let label = |a: u32| {
        let e = GFElement::new(&field, a);
        if m == 1 {
            format!("B_{}", e.coeffs()[0])
        } else {
            let digits: Vec<String> = e.coeffs().iter().map(|c| c.to_string()).collect();
            format!("B_[{}]", digits.join(" "))
        }
    };
    let squares: Vec<u32> = (0..q).map(|x| field.mul_idx(x, x)).collect();
    let mut bases: Vec<Basis> = (0..q)
        .map(|a| {
            let quad: Vec<u32> = squares.iter().map(|&x2| field.mul_idx(a, x2)).collect();
            Basis {
                label: label(a),
                conductor: p,
                vectors: (0..q)
                    .map(|alpha| {
                        BasisVector::Phase(
                            (0..q)
                                .map(|x| {
                                    field.trace_idx(
                                        field.add_idx(quad[x as usize], field.mul_idx(alpha, x)),
                                    )
                                })
                                .collect(),
                        )
                    })
                    .collect(),
            }
        })
        .collect();
    bases.push(Basis::computational(d, p, format!("B_{q}")));
    Ok(MubSet {
        dimension: d,
        conductor: p,
        method: Method::Gf,
        field: Some(FieldMeta {
            p,
            m,
            modulus: field.modulus().to_vec(),
        }),
        ring: None,
        bases,
        completeness_claimed: true,
        claimed_mub_indices: (0..=d).collect(),
    })
}

/// |aα⟩ = Σ_{x∈T_m} i^{Tr(ax + 2αx)}|x⟩/√(2^m), a and α in Teichmüller order.
pub fn mub_gr(m: u32) -> Result<MubSet> {
    let ring = gr_create(m)?;
    let t = ring.teichmuller();
    let d = t.len();
    let mut bases: Vec<Basis> = t
        .iter()
        .enumerate()
        .map(|(j, a)| Basis {
            label: format!("B_{j}"),
            conductor: 4,
            vectors: t
                .iter()
                .map(|alpha| {
                    let coef = a.add(&alpha.scale(2)).unwrap();
                    BasisVector::Phase(
                        t.iter()
                            .map(|x| coef.mul(x).unwrap().trace() as u32)
                            .collect(),
                    )
                })
                .collect(),
        })
        .collect();
    bases.push(Basis::computational(d, 4, format!("B_{d}")));
    Ok(MubSet {
        dimension: d,
        conductor: 4,
        method: Method::Gr,
        field: None,
        ring: Some(RingMeta {
            m,
            basic_irreducible: ring.basic_irreducible().to_vec(),
        }),
        bases,
        completeness_claimed: true,
        claimed_mub_indices: (0..=d).collect(),
    })
}

// Gaussian integer (re, im).
type Gauss = (i64, i64);

fn gmul(a: Gauss, b: Gauss) -> Gauss {
    (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0)
}

fn i_pow(k: i64) -> Gauss {
    [(1, 0), (0, 1), (-1, 0), (0, -1)][k.rem_euclid(4) as usize]
}

fn i_log(g: Gauss) -> u32 {
    match g {
        (1, 0) => 0,
        (0, 1) => 1,
        (-1, 0) => 2,
        (0, -1) => 3,
        _ => panic!("{g:?} is not a fourth root of unity"),
    }
}

/// Qubit vector |aα⟩ taken with the square root ω^{1/2} = −i: (i^{2α−a}, 1).
fn qubit(a: usize, alpha: usize) -> [Gauss; 2] {
    [i_pow(2 * alpha as i64 - a as i64), (1, 0)]
}

fn kron(u: [Gauss; 2], v: [Gauss; 2]) -> [Gauss; 4] {
    [
        gmul(u[0], v[0]),
        gmul(u[0], v[1]),
        gmul(u[1], v[0]),
        gmul(u[1], v[1]),
    ]
}

/// Rescale so the |00⟩ amplitude is +1/2 and return exponents of i.
fn normalized(v: [Gauss; 4]) -> Vec<u32> {
    let inv0 = (v[0].0, -v[0].1);
    v.iter().map(|&c| i_log(gmul(c, inv0))).collect()
}

/// The d = 4 two-qubit bases W_00, W_11, W_01, W_10 and the computational basis.
pub fn mub_w4() -> MubSet {
    let pure = |a: usize, label: &str| Basis {
        label: label.into(),
        conductor: 4,
        vectors: [(0, 0), (0, 1), (1, 0), (1, 1)]
            .iter()
            .map(|&(al, be)| BasisVector::Phase(normalized(kron(qubit(a, al), qubit(a, be)))))
            .collect(),
    };
    // λ|aα⟩⊗|a⊕1 β⟩ + μ|a α⊕1⟩⊗|a⊕1 β⊕1⟩ with λ = (1−i)/2, μ = (1+i)/2
    let entangled = |a: usize, label: &str| Basis {
        label: label.into(),
        conductor: 4,
        vectors: [(0, 0), (1, 1), (0, 1), (1, 0)]
            .iter()
            .map(|&(al, be)| {
                let u = kron(qubit(a, al), qubit(a ^ 1, be));
                let v = kron(qubit(a, al ^ 1), qubit(a ^ 1, be ^ 1));
                let mut w = [(0, 0); 4];
                for k in 0..4 {
                    let s = gmul((1, -1), u[k]);
                    let t = gmul((1, 1), v[k]);
                    let sum = (s.0 + t.0, s.1 + t.1);
                    assert!(sum.0 % 2 == 0 && sum.1 % 2 == 0);
                    w[k] = (sum.0 / 2, sum.1 / 2);
                }
                BasisVector::Phase(normalized(w))
            })
            .collect(),
    };
    let bases = vec![
        pure(0, "W_00"),
        pure(1, "W_11"),
        entangled(0, "W_01"),
        entangled(1, "W_10"),
        Basis::computational(4, 4, "B_4".into()),
    ];
    MubSet {
        dimension: 4,
        conductor: 4,
        method: Method::W4,
        field: None,
        ring: None,
        bases,
        completeness_claimed: true,
        claimed_mub_indices: (0..5).collect(),
    }
}

fn check_index(d: usize, a: usize) -> Result<()> {
    if d < 2 {
        return Err(Error::OutOfRange(format!(
            "dimension must be at least 2, got {d}"
        )));
    }
    if a >= d {
        return Err(Error::OutOfRange(format!("a = {a} not in 0..{d}")));
    }
    Ok(())
}

/// V_a: ω^{(k+1)a} at (k, k+1) and 1 at (d−1, 0), over conductor 2d.
pub fn matrix_va(d: usize, a: usize) -> Result<CycloMatrix> {
    check_index(d, a)?;
    Ok(CycloMatrix::from_exponents(
        2 * d as u32,
        d,
        d,
        1,
        |r, c| {
            if c == r + 1 {
                Some((2 * (r + 1) * a) as i64)
            } else if r == d - 1 && c == 0 {
                Some(0)
            } else {
                None
            }
        },
    ))
}

/// H_a with entry (n, α) equal to ζ_{2d}^{(n+1)(d−n−1)a − 2(n+1)α}/√d.
pub fn matrix_ha(d: usize, a: usize) -> Result<CycloMatrix> {
    check_index(d, a)?;
    Ok(CycloMatrix::from_exponents(
        2 * d as u32,
        d,
        d,
        d as u64,
        |n, alpha| Some(master_exponent(d, a, alpha, n) as i64),
    ))
}

/// P e_k = e_{−k mod d}.
pub fn perm_p(d: usize) -> Result<CycloMatrix> {
    check_index(d, 0)?;
    Ok(CycloMatrix::from_exponents(
        2 * d as u32,
        d,
        d,
        1,
        |r, c| (r == (d - c) % d).then_some(0),
    ))
}
