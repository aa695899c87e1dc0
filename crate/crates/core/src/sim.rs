//! Pure-state simulator over mixed qudit registers.
//!
//! Subsystem 0 is the most significant digit of the amplitude index.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2};
use std::fmt;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};

const C0: Complex64 = Complex64::new(0.0, 0.0);
const C1: Complex64 = Complex64::new(1.0, 0.0);
const CI: Complex64 = Complex64::new(0.0, 1.0);

/// e^{iθ}, exact at multiples of π/2.
pub fn phase(theta: f64) -> Complex64 {
    let k = theta / FRAC_PI_2;
    if (k - k.round()).abs() < 1e-12 {
        match (k.round() as i64).rem_euclid(4) {
            0 => C1,
            1 => CI,
            2 => -C1,
            _ => -CI,
        }
    } else {
        Complex64::from_polar(1.0, theta)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    dims: Vec<usize>,
    amps: Vec<Complex64>,
}

impl StateVector {
    /// Stores `amps` as given; call [`normalize`](Self::normalize) if needed.
    pub fn new(dims: Vec<usize>, amps: Vec<Complex64>) -> Result<Self> {
        let n: usize = dims.iter().product();
        if dims.is_empty() || dims.contains(&0) || n != amps.len() {
            return Err(Error::DimensionMismatch(n, amps.len()));
        }
        Ok(StateVector { dims, amps })
    }

    pub fn basis(dims: &[usize], digits: &[usize]) -> Result<Self> {
        if dims.len() != digits.len() || digits.iter().zip(dims).any(|(x, d)| x >= d) {
            return Err(Error::OutOfRange(format!(
                "basis digits {digits:?} for dims {dims:?}"
            )));
        }
        let n: usize = dims.iter().product();
        let mut amps = vec![C0; n];
        amps[digits.iter().zip(dims).fold(0, |acc, (x, d)| acc * d + x)] = C1;
        StateVector::new(dims.to_vec(), amps)
    }

    /// Normalized a|0⟩ + b|1⟩.
    pub fn qubit(a: Complex64, b: Complex64) -> Result<Self> {
        StateVector::new(vec![2], vec![a, b])?.normalize()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn normalize(mut self) -> Result<Self> {
        let n = self.norm();
        if n == 0.0 || !n.is_finite() {
            return Err(Error::Precondition("cannot normalize a zero vector".into()));
        }
        self.amps.iter_mut().for_each(|a| *a /= n);
        Ok(self)
    }

    pub fn tensor(&self, other: &Self) -> Self {
        let amps = self
            .amps
            .iter()
            .flat_map(|a| other.amps.iter().map(move |b| a * b))
            .collect();
        let dims = self.dims.iter().chain(&other.dims).copied().collect();
        StateVector { dims, amps }
    }

    pub fn inner(&self, other: &Self) -> Complex64 {
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// |⟨self|other⟩|, insensitive to global phase.
    pub fn fidelity(&self, other: &Self) -> f64 {
        self.inner(other).norm()
    }

    pub fn distance(&self, other: &Self) -> f64 {
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    fn digits(&self, mut i: usize) -> Vec<usize> {
        let mut out = vec![0; self.dims.len()];
        for (k, d) in self.dims.iter().enumerate().rev() {
            out[k] = i % d;
            i /= d;
        }
        out
    }

    fn index(&self, digits: &[usize]) -> usize {
        digits
            .iter()
            .zip(&self.dims)
            .fold(0, |acc, (x, d)| acc * d + x)
    }
}

impl fmt::Display for StateVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, a) in self.amps.iter().enumerate() {
            if a.norm() < 1e-12 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let ket: String = self.digits(i).iter().map(|x| x.to_string()).collect();
            write!(f, "({:.6}{:+.6}i)|{ket}⟩", a.re, a.im)?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum GateKind {
    I,
    X,
    Y,
    Z,
    S(f64),
    H,
    Cnot,
    Cp(f64),
    /// Truth table of f on n bits, index x read with bit 0 most significant.
    Uf(Vec<u8>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Gate {
    pub name: String,
    pub dims: Vec<usize>,
    /// Row-major, side Π dims.
    pub matrix: Vec<Complex64>,
}

impl Gate {
    pub fn from_matrix(name: &str, dims: Vec<usize>, matrix: Vec<Complex64>) -> Result<Self> {
        let n: usize = dims.iter().product();
        if matrix.len() != n * n {
            return Err(Error::DimensionMismatch(n * n, matrix.len()));
        }
        Ok(Gate {
            name: name.into(),
            dims,
            matrix,
        })
    }

    pub fn arity(&self) -> usize {
        self.dims.len()
    }

    pub fn size(&self) -> usize {
        self.dims.iter().product()
    }

    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        self.matrix[i * self.size() + j]
    }

    pub fn mul(&self, other: &Gate) -> Result<Gate> {
        if self.dims != other.dims {
            return Err(Error::DimensionMismatch(self.size(), other.size()));
        }
        let n = self.size();
        let m = (0..n * n)
            .map(|ij| {
                (0..n)
                    .map(|k| self.entry(ij / n, k) * other.entry(k, ij % n))
                    .sum()
            })
            .collect();
        Ok(Gate {
            name: format!("{}·{}", self.name, other.name),
            dims: self.dims.clone(),
            matrix: m,
        })
    }

    pub fn kron(&self, other: &Gate) -> Gate {
        let (n, m) = (self.size(), other.size());
        let mut out = vec![C0; n * m * n * m];
        for i in 0..n {
            for j in 0..n {
                for k in 0..m {
                    for l in 0..m {
                        out[(i * m + k) * n * m + j * m + l] = self.entry(i, j) * other.entry(k, l);
                    }
                }
            }
        }
        let dims = self.dims.iter().chain(&other.dims).copied().collect();
        Gate {
            name: format!("{}⊗{}", self.name, other.name),
            dims,
            matrix: out,
        }
    }

    pub fn adjoint(&self) -> Gate {
        let n = self.size();
        let m = (0..n * n)
            .map(|ij| self.entry(ij % n, ij / n).conj())
            .collect();
        Gate {
            name: format!("{}†", self.name),
            dims: self.dims.clone(),
            matrix: m,
        }
    }

    /// max |(U†U − I)_ij|.
    pub fn unitarity_defect(&self) -> f64 {
        let n = self.size();
        let p = self.adjoint().mul(self).expect("same dims");
        (0..n * n)
            .map(|ij| (p.matrix[ij] - if ij / n == ij % n { C1 } else { C0 }).norm())
            .fold(0.0, f64::max)
    }

    pub fn max_diff(&self, other: &Gate) -> f64 {
        self.matrix
            .iter()
            .zip(&other.matrix)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

pub fn make_gate(kind: &GateKind) -> Result<Gate> {
    let r = |x: f64| Complex64::new(x, 0.0);
    let h = FRAC_1_SQRT_2;
    let (name, dims, m): (String, Vec<usize>, Vec<Complex64>) = match kind {
        GateKind::I => ("I".into(), vec![2], vec![C1, C0, C0, C1]),
        GateKind::X => ("X".into(), vec![2], vec![C0, C1, C1, C0]),
        GateKind::Y => ("Y".into(), vec![2], vec![C0, -CI, CI, C0]),
        GateKind::Z => ("Z".into(), vec![2], vec![C1, C0, C0, -C1]),
        GateKind::S(t) => (format!("S({t})"), vec![2], vec![C1, C0, C0, phase(*t)]),
        GateKind::H => ("H".into(), vec![2], vec![r(h), r(h), r(h), r(-h)]),
        GateKind::Cnot => {
            let mut m = vec![C0; 16];
            for (i, j) in [(0, 0), (1, 1), (2, 3), (3, 2)] {
                m[i * 4 + j] = C1;
            }
            ("CNOT".into(), vec![2, 2], m)
        }
        GateKind::Cp(t) => {
            let mut m = vec![C0; 16];
            for i in 0..3 {
                m[i * 5] = C1;
            }
            m[15] = phase(*t);
            (format!("CP({t})"), vec![2, 2], m)
        }
        GateKind::Uf(f) => {
            let n = truth_table_bits(f)?;
            let size = 2usize << n;
            let mut m = vec![C0; size * size];
            for (x, &fx) in f.iter().enumerate() {
                for y in 0..2 {
                    let col = 2 * x + y;
                    let row = 2 * x + (y ^ fx as usize);
                    m[row * size + col] = C1;
                }
            }
            ("U_f".into(), vec![2; n + 1], m)
        }
    };
    Gate::from_matrix(&name, dims, m)
}

fn truth_table_bits(f: &[u8]) -> Result<usize> {
    if f.len() < 2 || !f.len().is_power_of_two() {
        return Err(Error::Precondition(format!(
            "truth table length {} is not 2^n with n ≥ 1",
            f.len()
        )));
    }
    if let Some(v) = f.iter().find(|&&v| v > 1) {
        return Err(Error::Precondition(format!(
            "truth table value {v} is not boolean"
        )));
    }
    Ok(f.len().trailing_zeros() as usize)
}

/// Applies `gate` to the listed subsystems (gate subsystem k acts on `targets[k]`).
pub fn apply(gate: &Gate, state: &StateVector, targets: &[usize]) -> Result<StateVector> {
    if targets.len() != gate.arity() {
        return Err(Error::DimensionMismatch(gate.arity(), targets.len()));
    }
    for (k, &t) in targets.iter().enumerate() {
        if t >= state.dims.len() || targets[..k].contains(&t) {
            return Err(Error::OutOfRange(format!("target {t}")));
        }
        if state.dims[t] != gate.dims[k] {
            return Err(Error::DimensionMismatch(gate.dims[k], state.dims[t]));
        }
    }
    let g = gate.size();
    let mut out = vec![C0; state.amps.len()];
    for (i, o) in out.iter_mut().enumerate() {
        let mut digits = state.digits(i);
        let row = targets
            .iter()
            .fold(0, |acc, &t| acc * state.dims[t] + digits[t]);
        let mut acc = C0;
        for col in 0..g {
            let m = gate.entry(row, col);
            if m == C0 {
                continue;
            }
            let mut c = col;
            for (k, &t) in targets.iter().enumerate().rev() {
                digits[t] = c % gate.dims[k];
                c /= gate.dims[k];
            }
            acc += m * state.amps[state.index(&digits)];
        }
        *o = acc;
    }
    Ok(StateVector {
        dims: state.dims.clone(),
        amps: out,
    })
}

/// |β_xy⟩ = (|0, y⟩ + (−1)^x |1, y⊕1⟩)/√2.
pub fn bell(x: u8, y: u8) -> Result<StateVector> {
    if x > 1 || y > 1 {
        return Err(Error::OutOfRange(format!("bits ({x}, {y})")));
    }
    let mut amps = vec![C0; 4];
    let s = Complex64::new(FRAC_1_SQRT_2, 0.0);
    amps[y as usize] = s;
    amps[2 + (y ^ 1) as usize] = if x == 1 { -s } else { s };
    StateVector::new(vec![2, 2], amps)
}

fn det(mut a: Vec<Complex64>, n: usize) -> Complex64 {
    let mut d = C1;
    for c in 0..n {
        let p = (c..n)
            .max_by(|&i, &j| a[i * n + c].norm().total_cmp(&a[j * n + c].norm()))
            .unwrap();
        if a[p * n + c] == C0 {
            return C0;
        }
        if p != c {
            for k in 0..n {
                a.swap(p * n + k, c * n + k);
            }
            d = -d;
        }
        let piv = a[c * n + c];
        d *= piv;
        for r in c + 1..n {
            let f = a[r * n + c] / piv;
            for k in c..n {
                let v = a[c * n + k];
                a[r * n + k] -= f * v;
            }
        }
    }
    d
}

/// |det(a_ij)| of the amplitude matrix of a two-qudit state.
pub fn concurrence(state: &StateVector) -> Result<f64> {
    match state.dims[..] {
        [d, e] if d == e => Ok(det(state.amps.clone(), d).norm()),
        [d, e] => Err(Error::DimensionMismatch(d, e)),
        _ => Err(Error::Precondition(format!(
            "concurrence needs 2 subsystems, got {}",
            state.dims.len()
        ))),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MeasureMode {
    Enumerate,
    Sampled(u64),
}

#[derive(Clone, Debug, PartialEq)]
pub struct MeasurementRecord {
    pub outcome: Vec<usize>,
    pub probability: f64,
    pub state: StateVector,
}

/// Projective measurement of `subsystems` in the computational basis.
/// Enumerate mode returns every branch of nonzero probability in lex order.
pub fn measure(
    state: &StateVector,
    subsystems: &[usize],
    mode: MeasureMode,
) -> Result<Vec<MeasurementRecord>> {
    for (k, &s) in subsystems.iter().enumerate() {
        if s >= state.dims.len() || subsystems[..k].contains(&s) {
            return Err(Error::OutOfRange(format!("subsystem {s}")));
        }
    }
    let outcomes: usize = subsystems.iter().map(|&s| state.dims[s]).product();
    let mut branches = vec![vec![C0; state.amps.len()]; outcomes];
    let mut probs = vec![0.0; outcomes];
    for (i, a) in state.amps.iter().enumerate() {
        let digits = state.digits(i);
        let o = subsystems
            .iter()
            .fold(0, |acc, &s| acc * state.dims[s] + digits[s]);
        branches[o][i] = *a;
        probs[o] += a.norm_sqr();
    }
    let total: f64 = probs.iter().sum();
    let record = |o: usize, amps: Vec<Complex64>| -> MeasurementRecord {
        let mut outcome = vec![0; subsystems.len()];
        let mut r = o;
        for (k, &s) in subsystems.iter().enumerate().rev() {
            outcome[k] = r % state.dims[s];
            r /= state.dims[s];
        }
        let n = probs[o].sqrt();
        let amps = amps.into_iter().map(|a| a / n).collect();
        MeasurementRecord {
            outcome,
            probability: probs[o] / total,
            state: StateVector {
                dims: state.dims.clone(),
                amps,
            },
        }
    };
    match mode {
        MeasureMode::Enumerate => Ok(branches
            .into_iter()
            .enumerate()
            .filter(|(o, _)| probs[*o] > 0.0)
            .map(|(o, amps)| record(o, amps))
            .collect()),
        MeasureMode::Sampled(seed) => {
            let u: f64 = ChaCha8Rng::seed_from_u64(seed).gen::<f64>() * total;
            let mut acc = 0.0;
            let mut pick = probs.iter().rposition(|&p| p > 0.0).unwrap_or(0);
            for (o, p) in probs.iter().enumerate() {
                acc += p;
                if *p > 0.0 && u < acc {
                    pick = o;
                    break;
                }
            }
            Ok(vec![record(pick, std::mem::take(&mut branches[pick]))])
        }
    }
}

/// Reduced state of one subsystem, valid when the others are in a product basis state.
pub fn extract(state: &StateVector, subsystem: usize) -> Result<StateVector> {
    let d = *state
        .dims
        .get(subsystem)
        .ok_or_else(|| Error::OutOfRange(format!("subsystem {subsystem}")))?;
    let mut amps = vec![C0; d];
    for (i, a) in state.amps.iter().enumerate() {
        amps[state.digits(i)[subsystem]] += a;
    }
    StateVector::new(vec![d], amps)?.normalize()
}

/// ‖CNOT(ψ⊗|0⟩) − ψ⊗ψ‖.
pub fn cloning_defect(psi: &StateVector) -> Result<f64> {
    if psi.dims != [2] {
        return Err(Error::DimensionMismatch(2, psi.amps.len()));
    }
    let zero = StateVector::basis(&[2], &[0])?;
    let out = apply(&make_gate(&GateKind::Cnot)?, &psi.tensor(&zero), &[0, 1])?;
    Ok(out.distance(&psi.tensor(psi)))
}

#[derive(Clone, Debug, PartialEq)]
pub struct TeleportBranch {
    pub bits: (u8, u8),
    pub probability: f64,
    pub correction: &'static str,
    pub bob_before: StateVector,
    pub bob: StateVector,
    pub fidelity: f64,
}

/// ψ⊗β_00, CNOT(1→2), H on 1, measure 1 and 2, then I, X, Z or ZX on Bob.
pub fn teleport(psi: &StateVector, mode: MeasureMode) -> Result<Vec<TeleportBranch>> {
    if psi.dims != [2] {
        return Err(Error::DimensionMismatch(2, psi.amps.len()));
    }
    let psi = psi.clone().normalize()?;
    let s = psi.tensor(&bell(0, 0)?);
    let s = apply(&make_gate(&GateKind::Cnot)?, &s, &[0, 1])?;
    let s = apply(&make_gate(&GateKind::H)?, &s, &[0])?;
    let x = make_gate(&GateKind::X)?;
    let z = make_gate(&GateKind::Z)?;
    measure(&s, &[0, 1], mode)?
        .into_iter()
        .map(|r| {
            let bits = (r.outcome[0] as u8, r.outcome[1] as u8);
            let before = extract(&r.state, 2)?;
            let (correction, bob) = match bits {
                (0, 0) => ("I", before.clone()),
                (0, 1) => ("X", apply(&x, &before, &[0])?),
                (1, 0) => ("Z", apply(&z, &before, &[0])?),
                _ => ("ZX", apply(&z, &apply(&x, &before, &[0])?, &[0])?),
            };
            let fidelity = psi.fidelity(&bob);
            Ok(TeleportBranch {
                bits,
                probability: r.probability,
                correction,
                bob_before: before,
                bob,
                fidelity,
            })
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DjClass {
    Constant,
    Balanced,
}

impl fmt::Display for DjClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DjClass::Constant => "constant",
            DjClass::Balanced => "balanced",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DjOutcome {
    pub class: DjClass,
    /// Measured input register, most significant first.
    pub register: Vec<usize>,
    pub probability: f64,
}

/// |0…0⟩|1⟩ → H^{⊗(n+1)} → U_f → H^{⊗n}⊗I, then one measurement of the input register.
pub fn deutsch_jozsa(f: &[u8]) -> Result<DjOutcome> {
    let n = truth_table_bits(f)?;
    let ones = f.iter().filter(|&&v| v == 1).count();
    if ones != 0 && ones != f.len() && 2 * ones != f.len() {
        return Err(Error::Precondition(format!(
            "f is neither constant nor balanced ({ones} of {} ones)",
            f.len()
        )));
    }
    let mut digits = vec![0; n + 1];
    digits[n] = 1;
    let mut s = StateVector::basis(&vec![2; n + 1], &digits)?;
    let h = make_gate(&GateKind::H)?;
    for q in 0..=n {
        s = apply(&h, &s, &[q])?;
    }
    s = apply(
        &make_gate(&GateKind::Uf(f.to_vec()))?,
        &s,
        &(0..=n).collect::<Vec<_>>(),
    )?;
    for q in 0..n {
        s = apply(&h, &s, &[q])?;
    }
    let reg: Vec<usize> = (0..n).collect();
    let top = measure(&s, &reg, MeasureMode::Enumerate)?
        .into_iter()
        .max_by(|a, b| a.probability.total_cmp(&b.probability))
        .expect("at least one branch");
    let class = if top.outcome.iter().all(|&x| x == 0) {
        DjClass::Constant
    } else {
        DjClass::Balanced
    };
    Ok(DjOutcome {
        class,
        register: top.outcome,
        probability: top.probability,
    })
}

/// (ξ, η, ζ) = (sinθ cosφ, sinθ sinφ, cosθ) for ψ = cos(θ/2)|0⟩ + e^{iφ} sin(θ/2)|1⟩.
pub fn bloch_coords(psi: &StateVector) -> Result<(f64, f64, f64)> {
    if psi.dims != [2] {
        return Err(Error::DimensionMismatch(2, psi.amps.len()));
    }
    let psi = psi.clone().normalize()?;
    let (a, b) = (psi.amps[0], psi.amps[1]);
    // 2·conj(a)·b = sinθ e^{iφ}, independent of the global phase
    let c = 2.0 * a.conj() * b;
    Ok((c.re, c.im, a.norm_sqr() - b.norm_sqr()))
}

/// Recovers (θ, φ) with the |0⟩ amplitude made real and nonnegative.
pub fn bloch_angles(psi: &StateVector) -> Result<(f64, f64)> {
    let psi = psi.clone().normalize()?;
    let (a, b) = (psi.amps[0], psi.amps[1]);
    let theta = 2.0 * a.norm().clamp(0.0, 1.0).acos();
    let phi = if b.norm() < 1e-15 {
        0.0
    } else {
        (b.arg() - if a.norm() < 1e-15 { 0.0 } else { a.arg() }).rem_euclid(std::f64::consts::TAU)
    };
    Ok((theta, phi))
}

/// Uniform-ish random normalized state from a seeded generator.
pub fn random_state(dims: &[usize], rng: &mut impl Rng) -> StateVector {
    let n: usize = dims.iter().product();
    loop {
        let amps: Vec<Complex64> = (0..n)
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        if let Ok(s) = StateVector::new(dims.to_vec(), amps).and_then(StateVector::normalize) {
            if s.norm() > 0.5 {
                return s;
            }
        }
    }
}

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
