//! Dense matrices over ℤ[ζ_n] with a global 1/√scale factor.

use num_complex::Complex64;
use num_integer::Integer;

use crate::cyclo::CycloSum;

/// Represents `data / √scale`, entries stored unreduced.
#[derive(Clone, Debug)]
pub struct CycloMatrix {
    n: u32,
    rows: usize,
    cols: usize,
    scale: u64,
    data: Vec<CycloSum>,
}

impl CycloMatrix {
    pub fn zeros(n: u32, rows: usize, cols: usize) -> Self {
        CycloMatrix {
            n,
            rows,
            cols,
            scale: 1,
            data: vec![CycloSum::zero(n); rows * cols],
        }
    }

    pub fn identity(n: u32, d: usize) -> Self {
        let mut m = Self::zeros(n, d, d);
        for i in 0..d {
            m.entry_mut(i, i).add_root(0, 1);
        }
        m
    }

    /// Entry (i, j) is ζ_n^{f(i,j)} when `f` returns `Some`, else 0.
    pub fn from_exponents(
        n: u32,
        rows: usize,
        cols: usize,
        scale: u64,
        f: impl Fn(usize, usize) -> Option<i64>,
    ) -> Self {
        let mut m = Self::zeros(n, rows, cols);
        m.scale = scale;
        for i in 0..rows {
            for j in 0..cols {
                if let Some(e) = f(i, j) {
                    m.entry_mut(i, j).add_root(e, 1);
                }
            }
        }
        m
    }

    pub fn conductor(&self) -> u32 {
        self.n
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn scale(&self) -> u64 {
        self.scale
    }

    pub fn with_scale(mut self, scale: u64) -> Self {
        self.scale = scale;
        self
    }

    pub fn entry(&self, i: usize, j: usize) -> &CycloSum {
        &self.data[i * self.cols + j]
    }

    pub fn entry_mut(&mut self, i: usize, j: usize) -> &mut CycloSum {
        &mut self.data[i * self.cols + j]
    }

    /// Same matrix over conductor `m`, a multiple of the current one.
    pub fn lift(&self, m: u32) -> Self {
        if m == self.n {
            return self.clone();
        }
        CycloMatrix {
            n: m,
            rows: self.rows,
            cols: self.cols,
            scale: self.scale,
            data: self.data.iter().map(|e| e.lift(m)).collect(),
        }
    }

    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.n, self.cols, self.rows);
        out.scale = self.scale;
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j * self.rows + i] = self.entry(i, j).conj();
            }
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        let n = self.n.lcm(&other.n);
        let (a, b) = (self.lift(n), other.lift(n));
        let mut out = Self::zeros(n, self.rows, other.cols);
        out.scale = self.scale * other.scale;
        for i in 0..self.rows {
            for k in 0..self.cols {
                let aik = a.entry(i, k);
                if aik.tally().iter().all(|&c| c == 0) {
                    continue;
                }
                for j in 0..other.cols {
                    let bkj = b.entry(k, j);
                    if bkj.tally().iter().all(|&c| c == 0) {
                        continue;
                    }
                    let prod = aik.mul(bkj);
                    out.data[i * other.cols + j].add_assign(&prod);
                }
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::identity(self.n, self.rows);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Exact equality of the represented matrices. Scales must differ by a
    /// perfect-square factor.
    pub fn eq_exact(&self, other: &Self) -> bool {
        if self.rows != other.rows || self.cols != other.cols {
            return false;
        }
        let n = self.n.lcm(&other.n);
        let (mut a, mut b) = (self.lift(n), other.lift(n));
        if a.scale != b.scale {
            let (hi, lo) = if a.scale > b.scale {
                (a.scale, b.scale)
            } else {
                (b.scale, a.scale)
            };
            let k = exact_sqrt(hi / lo)
                .filter(|_| hi % lo == 0)
                .expect("incommensurable scales");
            if a.scale > b.scale {
                b = b.scaled_entries(k as i64);
            } else {
                a = a.scaled_entries(k as i64);
            }
        }
        a.data.iter().zip(&b.data).all(|(x, y)| x.eq_exact(y))
    }

    fn scaled_entries(&self, k: i64) -> Self {
        let mut out = self.clone();
        out.data = self.data.iter().map(|e| e.scale(k)).collect();
        out
    }

    /// Entries equal `c·δ_ij` on the unscaled data.
    pub fn data_is_scalar_identity(&self, c: i64) -> bool {
        (0..self.rows).all(|i| {
            (0..self.cols).all(|j| {
                let target = if i == j { c } else { 0 };
                self.entry(i, j).equals_integer(target)
            })
        })
    }

    /// Unitary exactly: M†M = I, i.e. data†data = scale·I.
    pub fn is_unitary(&self) -> bool {
        self.rows == self.cols
            && self
                .adjoint()
                .mul(self)
                .data_is_scalar_identity(self.scale as i64)
    }

    pub fn trace(&self) -> CycloSum {
        let mut t = CycloSum::zero(self.n);
        for i in 0..self.rows.min(self.cols) {
            t.add_assign(self.entry(i, i));
        }
        t
    }

    pub fn to_complex(&self) -> Vec<Vec<Complex64>> {
        let s = (self.scale as f64).sqrt();
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| self.entry(i, j).to_complex() / s)
                    .collect()
            })
            .collect()
    }
}

pub(crate) fn exact_sqrt(x: u64) -> Option<u64> {
    let r = (x as f64).sqrt().round() as u64;
    (r.saturating_sub(1)..=r + 1).find(|&c| c * c == x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dft_is_unitary() {
        for d in 2..8usize {
            let f =
                CycloMatrix::from_exponents(d as u32, d, d, d as u64, |i, j| Some((i * j) as i64));
            assert!(f.is_unitary(), "d={d}");
        }
    }

    #[test]
    fn scales_compare_through_square_factor() {
        let a = CycloMatrix::identity(4, 2);
        let b =
            CycloMatrix::from_exponents(4, 2, 2, 4, |i, j| (i == j).then_some(0)).scaled_entries(2);
        assert!(a.eq_exact(&b));
        assert!(b.eq_exact(&a));
    }

    #[test]
    fn mixed_conductors_lift() {
        let z3 = CycloMatrix::from_exponents(3, 1, 1, 1, |_, _| Some(1));
        let z2 = CycloMatrix::from_exponents(2, 1, 1, 1, |_, _| Some(1));
        let p = z3.mul(&z2);
        assert_eq!(p.conductor(), 6);
        // ω·(−1) = ζ_6^{2+3}
        assert!(p.eq_exact(&CycloMatrix::from_exponents(6, 1, 1, 1, |_, _| Some(5))));
    }
}
