//! Exact and float verification of MUB claims.
//!
//! In exact mode a phase-vector inner product is handled through its
//! √d-scaled value s = Σ_x ζ^{f_x − e_x}: the pair is unbiased iff |s|² = d,
//! orthogonal iff s = 0, and identical up to phase iff |s|² = d².

use std::time::Instant;

use num_complex::Complex64;
use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::cyclo::CycloSum;
use crate::error::{Error, Result};
use crate::ff::prime_factors;
use crate::matrix::CycloMatrix;
use crate::mub::{Basis, BasisVector, MubSet};

pub const DEFAULT_TOL: f64 = 1e-10;
pub const DEFAULT_CONDUCTOR_CAP: u64 = 1 << 16;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Mode {
    Exact,
    Float { tol: f64 },
}

impl Mode {
    pub fn float() -> Self {
        Mode::Float { tol: DEFAULT_TOL }
    }
}

/// Offending vector pair with its measured modulus |⟨a|b⟩|.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Witness {
    pub basis_a: String,
    pub basis_b: String,
    pub vector_a: usize,
    pub vector_b: usize,
    pub modulus: f64,
    /// Exact d·|⟨a|b⟩|² when it is a rational integer (exact mode only).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scaled_norm_sq: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum PairStatus {
    Unbiased,
    /// Every overlap is 0 or 1: the same basis up to phases and order.
    Identical {
        witness: Witness,
    },
    Violation {
        witness: Witness,
    },
}

impl PairStatus {
    pub fn is_unbiased(&self) -> bool {
        matches!(self, PairStatus::Unbiased)
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            PairStatus::Unbiased => None,
            PairStatus::Identical { witness } | PairStatus::Violation { witness } => Some(witness),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Overlap {
    Unbiased,
    Zero,
    One,
    Other,
}

struct Measured {
    kind: Overlap,
    modulus: f64,
    scaled_norm_sq: Option<i64>,
}

fn exact_overlap(u: &BasisVector, v: &BasisVector, cu: u32, cv: u32, d: usize) -> Measured {
    let n = cu.lcm(&cv);
    let (fu, fv) = ((n / cu) as i64, (n / cv) as i64);
    match (u, v) {
        (BasisVector::Phase(e), BasisVector::Phase(f)) => {
            let mut s = CycloSum::zero(n);
            for (&ex, &fx) in e.iter().zip(f) {
                s.add_root(fx as i64 * fv - ex as i64 * fu, 1);
            }
            let di = d as i64;
            if s.is_zero_exact() {
                return Measured {
                    kind: Overlap::Zero,
                    modulus: 0.0,
                    scaled_norm_sq: Some(0),
                };
            }
            let nsq = s.norm_sq();
            // d·|⟨a|b⟩|² = |s|²/d, reported only when integral
            let (kind, scaled) = if nsq.equals_integer(di) {
                (Overlap::Unbiased, Some(1))
            } else if nsq.equals_integer(di * di) {
                (Overlap::One, Some(di))
            } else {
                let k = nsq
                    .reduce()
                    .as_integer()
                    .and_then(|k| i64::try_from(k).ok());
                (Overlap::Other, k.filter(|k| k % di == 0).map(|k| k / di))
            };
            let modulus = nsq.to_complex().re.max(0.0).sqrt() / d as f64;
            Measured {
                kind,
                modulus,
                scaled_norm_sq: scaled,
            }
        }
        (BasisVector::Unit(x), BasisVector::Unit(y)) => {
            let one = x == y;
            Measured {
                kind: if one { Overlap::One } else { Overlap::Zero },
                modulus: if one { 1.0 } else { 0.0 },
                scaled_norm_sq: Some(if one { d as i64 } else { 0 }),
            }
        }
        _ => Measured {
            kind: Overlap::Unbiased,
            modulus: 1.0 / (d as f64).sqrt(),
            scaled_norm_sq: Some(1),
        },
    }
}

fn float_inner(u: &[Complex64], v: &[Complex64]) -> Complex64 {
    u.iter().zip(v).map(|(a, b)| a.conj() * b).sum()
}

fn classify_float(m: f64, d: usize, tol: f64) -> Overlap {
    if (m - 1.0 / (d as f64).sqrt()).abs() <= tol {
        Overlap::Unbiased
    } else if m <= tol {
        Overlap::Zero
    } else if (m - 1.0).abs() <= tol {
        Overlap::One
    } else {
        Overlap::Other
    }
}

fn check_dims(a: &Basis, b: &Basis, cap: u64) -> Result<usize> {
    if a.dimension() != b.dimension() {
        return Err(Error::DimensionMismatch(a.dimension(), b.dimension()));
    }
    let n = a.conductor.lcm(&b.conductor) as u64;
    if n > cap {
        return Err(Error::ConductorCap(n, cap));
    }
    Ok(a.dimension())
}

fn status_from(
    scan: impl Iterator<Item = (usize, usize, Measured)>,
    a: &Basis,
    b: &Basis,
) -> PairStatus {
    let mut first_bad: Option<(usize, usize, Measured)> = None;
    let mut first_one: Option<(usize, usize, Measured)> = None;
    let mut all_unbiased = true;
    let mut all_zero_one = true;
    for (i, j, m) in scan {
        match m.kind {
            Overlap::Unbiased => all_zero_one = false,
            Overlap::Zero => all_unbiased = false,
            Overlap::One => {
                all_unbiased = false;
                if first_one.is_none() {
                    first_one = Some((i, j, m));
                    continue;
                }
            }
            Overlap::Other => {
                all_unbiased = false;
                all_zero_one = false;
            }
        }
        if !matches!(m.kind, Overlap::Unbiased) && first_bad.is_none() {
            first_bad = Some((i, j, m));
        }
        if !all_unbiased && !all_zero_one && first_bad.is_some() {
            break;
        }
    }
    let witness = |(i, j, m): (usize, usize, Measured)| Witness {
        basis_a: a.label.clone(),
        basis_b: b.label.clone(),
        vector_a: i,
        vector_b: j,
        modulus: m.modulus,
        scaled_norm_sq: m.scaled_norm_sq,
    };
    if all_unbiased {
        PairStatus::Unbiased
    } else if all_zero_one {
        PairStatus::Identical {
            witness: witness(first_one.expect("a basis overlaps itself somewhere")),
        }
    } else {
        let w = match (first_bad, first_one) {
            (Some(x), Some(y)) => {
                if (y.0, y.1) < (x.0, x.1) {
                    y
                } else {
                    x
                }
            }
            (Some(x), None) | (None, Some(x)) => x,
            (None, None) => unreachable!(),
        };
        PairStatus::Violation {
            witness: witness(w),
        }
    }
}

/// Every |⟨aα|bβ⟩| = 1/√d.
pub fn check_unbiased(a: &Basis, b: &Basis, mode: Mode) -> Result<PairStatus> {
    check_unbiased_capped(a, b, mode, DEFAULT_CONDUCTOR_CAP)
}

pub fn check_unbiased_capped(a: &Basis, b: &Basis, mode: Mode, cap: u64) -> Result<PairStatus> {
    let d = check_dims(a, b, cap)?;
    Ok(match mode {
        Mode::Exact => {
            let scan = a.vectors.iter().enumerate().flat_map(|(i, u)| {
                b.vectors
                    .iter()
                    .enumerate()
                    .map(move |(j, v)| (i, j, exact_overlap(u, v, a.conductor, b.conductor, d)))
            });
            status_from(scan, a, b)
        }
        Mode::Float { tol } => {
            let (ca, cb) = (a.to_complex(), b.to_complex());
            let scan = ca.iter().enumerate().flat_map(|(i, u)| {
                cb.iter().enumerate().map(move |(j, v)| {
                    let m = float_inner(u, v).norm();
                    (
                        i,
                        j,
                        Measured {
                            kind: classify_float(m, d, tol),
                            modulus: m,
                            scaled_norm_sq: None,
                        },
                    )
                })
            });
            status_from(scan, a, b)
        }
    })
}

/// `None` if orthonormal, else the first offending pair (α, β, |⟨α|β⟩|).
pub fn check_orthonormal(b: &Basis, mode: Mode) -> Option<Witness> {
    let d = b.dimension();
    let witness = |i: usize, j: usize, modulus: f64| Witness {
        basis_a: b.label.clone(),
        basis_b: b.label.clone(),
        vector_a: i,
        vector_b: j,
        modulus,
        scaled_norm_sq: None,
    };
    match mode {
        Mode::Exact => {
            for (i, u) in b.vectors.iter().enumerate() {
                if let BasisVector::Phase(e) = u {
                    if e.len() != d {
                        return Some(witness(i, i, f64::NAN));
                    }
                }
                if let BasisVector::Unit(x) = u {
                    if *x >= d {
                        return Some(witness(i, i, f64::NAN));
                    }
                }
                for (j, v) in b.vectors.iter().enumerate().skip(i + 1) {
                    let m = exact_overlap(u, v, b.conductor, b.conductor, d);
                    if m.kind != Overlap::Zero {
                        return Some(witness(i, j, m.modulus));
                    }
                }
            }
            None
        }
        Mode::Float { tol } => {
            let c = b.to_complex();
            for i in 0..d {
                for j in i..d {
                    let ip = float_inner(&c[i], &c[j]);
                    let target = if i == j { 1.0 } else { 0.0 };
                    if (ip - target).norm() > tol {
                        return Some(witness(i, j, ip.norm()));
                    }
                }
            }
            None
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PairReport {
    pub i: usize,
    pub j: usize,
    pub label_i: String,
    pub label_j: String,
    #[serde(flatten)]
    pub status: PairStatus,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub dimension: usize,
    pub mode: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    pub method: String,
    pub bases: Vec<String>,
    pub orthonormal: Vec<bool>,
    pub orthonormality_witnesses: Vec<Witness>,
    pub pairs: Vec<PairReport>,
    pub unbiased_pairs: usize,
    pub total_pairs: usize,
    pub complete: bool,
    pub completeness_claimed: bool,
    pub claimed_mub_indices: Vec<usize>,
    pub claims_verified: bool,
    pub elapsed_ms: f64,
}

impl VerificationReport {
    pub fn status(&self, i: usize, j: usize) -> Option<&PairStatus> {
        let (i, j) = if i < j { (i, j) } else { (j, i) };
        self.pairs
            .iter()
            .find(|p| p.i == i && p.j == j)
            .map(|p| &p.status)
    }

    pub fn first_violation(&self) -> Option<&PairReport> {
        self.pairs.iter().find(|p| !p.status.is_unbiased())
    }
}

/// Full pairwise scan; pairs run concurrently and are reported in (i, j) order.
pub fn check_mub_set(s: &MubSet, mode: Mode) -> Result<VerificationReport> {
    let start = Instant::now();
    let k = s.bases.len();
    for b in &s.bases {
        if b.dimension() != s.dimension {
            return Err(Error::DimensionMismatch(s.dimension, b.dimension()));
        }
    }
    let ortho: Vec<Option<Witness>> = s
        .bases
        .par_iter()
        .map(|b| check_orthonormal(b, mode))
        .collect();
    let idx: Vec<(usize, usize)> = (0..k)
        .flat_map(|i| (i + 1..k).map(move |j| (i, j)))
        .collect();
    let pairs: Vec<PairReport> = idx
        .par_iter()
        .map(|&(i, j)| {
            check_unbiased(&s.bases[i], &s.bases[j], mode).map(|status| PairReport {
                i,
                j,
                label_i: s.bases[i].label.clone(),
                label_j: s.bases[j].label.clone(),
                status,
            })
        })
        .collect::<Result<_>>()?;
    let unbiased_pairs = pairs.iter().filter(|p| p.status.is_unbiased()).count();
    let all_ortho = ortho.iter().all(Option::is_none);
    let complete = k == s.dimension + 1 && all_ortho && unbiased_pairs == pairs.len();
    let claimed = &s.claimed_mub_indices;
    let claims_ok = pairs
        .iter()
        .filter(|p| claimed.contains(&p.i) && claimed.contains(&p.j))
        .all(|p| p.status.is_unbiased());
    let claims_verified = all_ortho && claims_ok && (!s.completeness_claimed || complete);
    Ok(VerificationReport {
        dimension: s.dimension,
        mode: match mode {
            Mode::Exact => "exact".into(),
            Mode::Float { .. } => "float".into(),
        },
        tolerance: match mode {
            Mode::Exact => None,
            Mode::Float { tol } => Some(tol),
        },
        method: s.method.to_string(),
        bases: s.bases.iter().map(|b| b.label.clone()).collect(),
        orthonormal: ortho.iter().map(Option::is_none).collect(),
        orthonormality_witnesses: ortho.into_iter().flatten().collect(),
        total_pairs: pairs.len(),
        pairs,
        unbiased_pairs,
        complete,
        completeness_claimed: s.completeness_claimed,
        claimed_mub_indices: claimed.clone(),
        claims_verified,
        elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
    })
}

/// Float check on explicit complex bases, used after applying a unitary.
pub fn complex_bases_unbiased(a: &[Vec<Complex64>], b: &[Vec<Complex64>], tol: f64) -> bool {
    let d = a.len();
    a.iter().all(|u| {
        b.iter()
            .all(|v| classify_float(float_inner(u, v).norm(), d, tol) == Overlap::Unbiased)
    })
}

/// Haar-ish random unitary by Gram–Schmidt on a seeded Gaussian-free matrix.
pub fn random_unitary(d: usize, seed: u64) -> Vec<Vec<Complex64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cols: Vec<Vec<Complex64>> = Vec::with_capacity(d);
    while cols.len() < d {
        let mut v: Vec<Complex64> = (0..d)
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        for c in &cols {
            let ip = float_inner(c, &v);
            for (x, y) in v.iter_mut().zip(c) {
                *x -= ip * y;
            }
        }
        let norm = v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-6 {
            cols.push(v.into_iter().map(|x| x / norm).collect());
        }
    }
    cols
}

/// U applied to every vector; `u` is given by columns.
pub fn apply_unitary(u: &[Vec<Complex64>], basis: &[Vec<Complex64>]) -> Vec<Vec<Complex64>> {
    let d = u.len();
    basis
        .iter()
        .map(|v| {
            (0..d)
                .map(|r| (0..d).map(|c| u[c][r] * v[c]).sum())
                .collect()
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GaussSum {
    pub u: i64,
    pub v: i64,
    pub w: i64,
    pub re: f64,
    pub im: f64,
    /// Exact |S|² when it is a rational integer.
    pub norm_sq: Option<i64>,
}

impl GaussSum {
    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }
}

/// S(u, v, w) = Σ_{k<|w|} e^{iπ(uk² + vk)/w}, evaluated in ℤ[ζ_{2|w|}].
pub fn gauss_sum(u: i64, v: i64, w: i64) -> Result<GaussSum> {
    if u == 0 || w == 0 {
        return Err(Error::Precondition(format!(
            "uw must be nonzero (u={u}, w={w})"
        )));
    }
    if u.gcd(&w) != 1 {
        return Err(Error::Precondition(format!(
            "gcd(u, w) = {} ≠ 1",
            u.gcd(&w)
        )));
    }
    if (u * w + v).rem_euclid(2) != 0 {
        return Err(Error::Precondition(format!(
            "uw + v = {} is odd",
            u * w + v
        )));
    }
    let n = 2 * w.unsigned_abs() as u32;
    let sign = w.signum();
    let mut s = CycloSum::zero(n);
    let mut value = Complex64::new(0.0, 0.0);
    for k in 0..w.abs() {
        let x = u * k * k + v * k;
        s.add_root(sign * x, 1);
        value += Complex64::from_polar(1.0, std::f64::consts::PI * x as f64 / w as f64);
    }
    let norm_sq = s
        .norm_sq()
        .reduce()
        .as_integer()
        .and_then(|k| i64::try_from(k).ok());
    Ok(GaussSum {
        u,
        v,
        w,
        re: value.re,
        im: value.im,
        norm_sq,
    })
}

/// (u, v, w) = (a − b, −(a − b)p − 2(α − β), p).
pub fn mub_gauss_params(p: i64, a: i64, b: i64, alpha: i64, beta: i64) -> (i64, i64, i64) {
    (a - b, -(a - b) * p - 2 * (alpha - beta), p)
}

/// M†M = I and every entry has modulus 1/√d, exactly.
pub fn hadamard_check(m: &CycloMatrix, d: usize) -> bool {
    if m.rows() != d || m.cols() != d || !m.is_unitary() {
        return false;
    }
    let scale = m.scale() as i64;
    (0..d).all(|i| {
        (0..d).all(|j| {
            m.entry(i, j)
                .norm_sq()
                .scale(d as i64)
                .equals_integer(scale)
        })
    })
}

/// B_k = ζ_{N}^{phases[k]} · A_{permutation[k]} with N = `conductor`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Equivalence {
    pub permutation: Vec<usize>,
    pub phases: Vec<u32>,
    pub conductor: u32,
}

/// First match under lexicographic search over k, then π(k).
pub fn bases_equivalent(a: &Basis, b: &Basis) -> Option<Equivalence> {
    if a.dimension() != b.dimension() {
        return None;
    }
    let n = a.conductor.lcm(&b.conductor);
    let (fa, fb) = (n / a.conductor, n / b.conductor);
    let mut used = vec![false; a.dimension()];
    let mut permutation = Vec::new();
    let mut phases = Vec::new();
    for v in &b.vectors {
        let hit = a.vectors.iter().enumerate().find_map(|(j, u)| {
            if used[j] {
                return None;
            }
            match (u, v) {
                (BasisVector::Unit(x), BasisVector::Unit(y)) => (x == y).then_some((j, 0)),
                (BasisVector::Phase(e), BasisVector::Phase(f)) => {
                    let shift = |x: usize| (f[x] * fb + n - (e[x] * fa) % n) % n;
                    let c = shift(0);
                    (0..e.len()).all(|x| shift(x) == c).then_some((j, c))
                }
                _ => None,
            }
        });
        let (j, c) = hit?;
        used[j] = true;
        permutation.push(j);
        phases.push(c);
    }
    Some(Equivalence {
        permutation,
        phases,
        conductor: n,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Bounds {
    pub d: u64,
    pub lower: u64,
    pub upper: u64,
    pub prime_power: bool,
}

/// min(p_i^{m_i}) + 1 ≤ N(d) ≤ d + 1.
pub fn mub_bounds(d: u64) -> Result<Bounds> {
    if d < 2 {
        return Err(Error::OutOfRange(format!(
            "dimension must be at least 2, got {d}"
        )));
    }
    let f = prime_factors(d);
    let lower = f.iter().map(|&(p, e)| p.pow(e)).min().unwrap() + 1;
    Ok(Bounds {
        d,
        lower,
        upper: d + 1,
        prime_power: f.len() == 1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mub::matrix_ha;
    use crate::mub::{mub_alternative, mub_gf, mub_gr, mub_master, mub_w4};

    #[test]
    fn d2_master_pair_unbiased() {
        let s = mub_master(2).unwrap();
        assert_eq!(
            check_unbiased(&s.bases[0], &s.bases[1], Mode::Exact).unwrap(),
            PairStatus::Unbiased
        );
        let c = s.bases[0].to_complex();
        let c1 = s.bases[1].to_complex();
        for u in &c {
            for v in &c1 {
                assert!((float_inner(u, v).norm() - 0.5f64.sqrt()).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn self_pair_is_identical_not_unbiased() {
        let s = mub_master(3).unwrap();
        for b in &s.bases {
            let st = check_unbiased(b, b, Mode::Exact).unwrap();
            assert!(matches!(st, PairStatus::Identical { .. }), "{st:?}");
            assert!(check_orthonormal(b, Mode::Exact).is_none());
        }
    }

    #[test]
    fn composite_master_six() {
        let s = mub_master(6).unwrap();
        let r = check_mub_set(&s, Mode::Exact).unwrap();
        assert!(!r.complete);
        assert!(r.claims_verified, "B_0, B_1, B_6 are claimed and hold");
        assert!(r.status(0, 1).unwrap().is_unbiased());
        assert!(r.status(0, 6).unwrap().is_unbiased());
        assert!(r.status(1, 6).unwrap().is_unbiased());
        let bad = r.first_violation().unwrap();
        assert!(bad.status.witness().is_some());
    }

    #[test]
    fn alternative_two_fails_with_shared_vector() {
        let r = check_mub_set(&mub_alternative(2).unwrap(), Mode::Exact).unwrap();
        assert!(!r.complete && !r.claims_verified);
        match r.status(0, 1).unwrap() {
            PairStatus::Identical { witness } => {
                assert_eq!(witness.modulus, 1.0);
                assert_eq!((witness.vector_a, witness.vector_b), (0, 1));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn complete_sets() {
        let r = check_mub_set(&mub_gf(3, 2, None).unwrap(), Mode::Exact).unwrap();
        assert!(r.complete);
        assert_eq!((r.unbiased_pairs, r.total_pairs), (45, 45));
        assert!(
            check_mub_set(&mub_gr(2).unwrap(), Mode::Exact)
                .unwrap()
                .complete
        );
        assert!(check_mub_set(&mub_w4(), Mode::Exact).unwrap().complete);
        assert!(
            check_mub_set(&mub_master(5).unwrap(), Mode::float())
                .unwrap()
                .complete
        );
    }

    // Oracle: float modulus of every cross pair for small sets.
    #[test]
    fn exact_and_float_agree() {
        let mut sets = Vec::new();
        for d in 2..=16 {
            sets.push(mub_master(d).unwrap());
        }
        for p in [2, 3, 5, 7, 11, 13] {
            sets.push(mub_alternative(p).unwrap());
        }
        sets.push(mub_gf(3, 2, None).unwrap());
        sets.push(mub_gr(1).unwrap());
        sets.push(mub_gr(2).unwrap());
        sets.push(mub_gr(3).unwrap());
        sets.push(mub_gr(4).unwrap());
        sets.push(mub_w4());
        for s in &sets {
            let e = check_mub_set(s, Mode::Exact).unwrap();
            let f = check_mub_set(s, Mode::float()).unwrap();
            assert_eq!(e.complete, f.complete, "{} d={}", s.method, s.dimension);
            for (pe, pf) in e.pairs.iter().zip(&f.pairs) {
                assert_eq!(pe.status.is_unbiased(), pf.status.is_unbiased());
                assert_eq!(
                    std::mem::discriminant(&pe.status),
                    std::mem::discriminant(&pf.status),
                    "{} d={} ({}, {})",
                    s.method,
                    s.dimension,
                    pe.i,
                    pe.j
                );
            }
        }
    }

    #[test]
    fn symmetric_status() {
        let s = mub_master(6).unwrap();
        for a in &s.bases {
            for b in &s.bases {
                let ab = check_unbiased(a, b, Mode::Exact).unwrap();
                let ba = check_unbiased(b, a, Mode::Exact).unwrap();
                assert_eq!(ab.is_unbiased(), ba.is_unbiased());
                assert_eq!(std::mem::discriminant(&ab), std::mem::discriminant(&ba));
            }
        }
    }

    #[test]
    fn unitary_invariance() {
        for (k, s) in [
            mub_master(3).unwrap(),
            mub_gr(2).unwrap(),
            mub_master(6).unwrap(),
        ]
        .iter()
        .enumerate()
        {
            let u = random_unitary(s.dimension, 17 + k as u64);
            let before = check_mub_set(s, Mode::float()).unwrap();
            let rotated: Vec<_> = s
                .bases
                .iter()
                .map(|b| apply_unitary(&u, &b.to_complex()))
                .collect();
            for p in &before.pairs {
                let after = complex_bases_unbiased(&rotated[p.i], &rotated[p.j], 1e-9);
                assert_eq!(after, p.status.is_unbiased());
            }
        }
    }

    #[test]
    fn mismatched_dimensions() {
        let a = &mub_master(2).unwrap().bases[0];
        let b = &mub_master(3).unwrap().bases[0];
        assert_eq!(
            check_unbiased(a, b, Mode::Exact),
            Err(Error::DimensionMismatch(2, 3))
        );
        let c = &mub_master(3).unwrap().bases[1];
        assert!(matches!(
            check_unbiased_capped(b, c, Mode::Exact, 4),
            Err(Error::ConductorCap(6, 4))
        ));
    }

    #[test]
    fn gauss_examples() {
        let g = gauss_sum(1, 1, 1).unwrap();
        assert!((g.value() - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        // brute force oracle for u=1, v=−3, w=3
        let brute: Complex64 = (0..3)
            .map(|k: i64| {
                Complex64::from_polar(1.0, std::f64::consts::PI * (k * k - 3 * k) as f64 / 3.0)
            })
            .sum();
        let g = gauss_sum(1, -3, 3).unwrap();
        assert!((g.value() - brute).norm() < 1e-12);
        assert!((brute.norm() - 3f64.sqrt()).abs() < 1e-12);
        assert_eq!(g.norm_sq, Some(3));
        for ab in 1..=2 {
            for da in 0..=2 {
                let (u, v, w) = mub_gauss_params(3, ab, 0, da, 0);
                let g = gauss_sum(u, v, w).unwrap();
                assert_eq!(g.norm_sq, Some(3));
                assert!((g.value().norm() - 3f64.sqrt()).abs() < 1e-12);
            }
        }
        assert!(gauss_sum(2, 0, 4).is_err());
        assert!(gauss_sum(1, 0, 3).is_err());
        assert!(gauss_sum(0, 0, 3).is_err());
        assert!(gauss_sum(-1, 3, -3).is_ok());
    }

    #[test]
    fn hadamard_examples() {
        assert!(hadamard_check(&matrix_ha(3, 0).unwrap(), 3));
        assert!(!hadamard_check(&CycloMatrix::identity(6, 3), 3));
        let h = matrix_ha(5, 1)
            .unwrap()
            .adjoint()
            .mul(&matrix_ha(5, 2).unwrap());
        assert!(hadamard_check(&h, 5));
        // composite d: H_0†H_2 at d = 4 is not Hadamard
        let h = matrix_ha(4, 0)
            .unwrap()
            .adjoint()
            .mul(&matrix_ha(4, 2).unwrap());
        assert!(!hadamard_check(&h, 4));
    }

    #[test]
    fn equivalence_examples() {
        let s = mub_master(2).unwrap();
        let e = bases_equivalent(&s.bases[0], &s.bases[0]).unwrap();
        assert_eq!(e.permutation, [0, 1]);
        assert!(e.phases.iter().all(|&p| p == 0));
        assert!(bases_equivalent(&s.bases[0], &s.bases[2]).is_none());
        let g = mub_gr(1).unwrap();
        let e = bases_equivalent(&s.bases[1], &g.bases[1]).unwrap();
        assert_eq!(e.permutation, [1, 0]);
        assert_eq!(e.conductor, 4);
        let (ca, cb) = (s.bases[1].to_complex(), g.bases[1].to_complex());
        for k in 0..2 {
            let ph =
                Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * e.phases[k] as f64 / 4.0);
            for x in 0..2 {
                assert!((cb[k][x] - ph * ca[e.permutation[k]][x]).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn bounds_examples() {
        assert_eq!(
            mub_bounds(6).unwrap(),
            Bounds {
                d: 6,
                lower: 3,
                upper: 7,
                prime_power: false
            }
        );
        assert_eq!(
            (
                mub_bounds(676).unwrap().lower,
                mub_bounds(676).unwrap().upper
            ),
            (5, 677)
        );
        assert_eq!(
            (mub_bounds(9).unwrap().lower, mub_bounds(9).unwrap().upper),
            (10, 10)
        );
        assert_eq!(mub_bounds(15).unwrap().lower, 4);
        assert!(mub_bounds(1).is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(200))]

            #[test]
            fn symmetric_and_mode_agnostic(d in 2usize..=16, i in 0usize..17, j in 0usize..17) {
                let s = mub_master(d).unwrap();
                let (a, b) = (&s.bases[i % (d + 1)], &s.bases[j % (d + 1)]);
                let ab = check_unbiased(a, b, Mode::Exact).unwrap();
                let ba = check_unbiased(b, a, Mode::Exact).unwrap();
                let fl = check_unbiased(a, b, Mode::float()).unwrap();
                prop_assert_eq!(std::mem::discriminant(&ab), std::mem::discriminant(&ba));
                prop_assert_eq!(std::mem::discriminant(&ab), std::mem::discriminant(&fl));
            }

            #[test]
            fn gauss_norm_is_p(pi in 0usize..5, ab in 1i64..12, da in -12i64..12) {
                let p = [3i64, 5, 7, 11, 13][pi];
                prop_assume!(ab % p != 0);
                let (u, v, w) = mub_gauss_params(p, ab, 0, da, 0);
                let g = gauss_sum(u, v, w).unwrap();
                prop_assert_eq!(g.norm_sq, Some(p));
                prop_assert!((g.value().norm_sqr() - p as f64).abs() < 1e-9);
            }
        }
    }
}
