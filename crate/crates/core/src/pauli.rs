//! Weyl pairs, generalized Pauli matrices and the Pauli group P_d.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use rayon::prelude::*;

use crate::cyclo::CycloSum;
use crate::error::{Error, Result};
use crate::ff::is_prime;
use crate::matrix::CycloMatrix;
use crate::mub::{mub_master, MubSet};

/// X = V_0 (cyclic shift, Xφ_n = φ_{n−1}) and Z = V_0†V_1 = diag(ω^n).
pub fn weyl_pair(d: usize) -> (CycloMatrix, CycloMatrix) {
    assert!(d >= 2, "dimension must be at least 2");
    let n = d as u32;
    let x = CycloMatrix::from_exponents(n, d, d, 1, |r, c| (c == (r + 1) % d).then_some(0));
    let z = CycloMatrix::from_exponents(n, d, d, 1, |r, c| (r == c).then_some(r as i64));
    (x, z)
}

/// U_ab = X^a Z^b.
pub fn gen_pauli(d: usize, a: usize, b: usize) -> CycloMatrix {
    let (x, z) = weyl_pair(d);
    x.pow((a % d) as u32).mul(&z.pow((b % d) as u32))
}

/// ω^a X^b Z^c.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PauliLabel {
    pub d: usize,
    pub a: usize,
    pub b: usize,
    pub c: usize,
}

impl PauliLabel {
    pub fn new(d: usize, a: usize, b: usize, c: usize) -> Self {
        PauliLabel {
            d,
            a: a % d,
            b: b % d,
            c: c % d,
        }
    }

    pub fn identity(d: usize) -> Self {
        Self::new(d, 0, 0, 0)
    }

    pub fn matrix(&self) -> CycloMatrix {
        let phase = CycloMatrix::from_exponents(self.d as u32, self.d, self.d, 1, |r, c| {
            (r == c).then_some(self.a as i64)
        });
        phase.mul(&gen_pauli(self.d, self.b, self.c))
    }

    pub fn inverse(&self) -> Self {
        let d = self.d;
        // (a′, −b, −c) with a + a′ − c(−b) ≡ 0
        let a_inv = (2 * d * d - self.a - self.c * self.b % d) % d;
        Self::new(d, a_inv, d - self.b, d - self.c)
    }
}

impl fmt::Display for PauliLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ω^{} X^{} Z^{}", self.a, self.b, self.c)
    }
}

/// (a, b, c)(a′, b′, c′) = (a + a′ − cb′, b + b′, c + c′) mod d.
pub fn pauli_mul(u: &PauliLabel, v: &PauliLabel) -> Result<PauliLabel> {
    if u.d != v.d {
        return Err(Error::DimensionMismatch(u.d, v.d));
    }
    let d = u.d;
    let a = (u.a + v.a + d * d - (u.c * v.b) % d) % d;
    Ok(PauliLabel::new(d, a, u.b + v.b, u.c + v.c))
}

pub fn pauli_group(d: usize) -> Vec<PauliLabel> {
    let mut out = Vec::with_capacity(d * d * d);
    for a in 0..d {
        for b in 0..d {
            for c in 0..d {
                out.push(PauliLabel::new(d, a, b, c));
            }
        }
    }
    out
}

fn commutator(g: &PauliLabel, h: &PauliLabel) -> PauliLabel {
    let gh = pauli_mul(g, h).unwrap();
    pauli_mul(&pauli_mul(&gh, &g.inverse()).unwrap(), &h.inverse()).unwrap()
}

fn generated(d: usize, gens: &HashSet<PauliLabel>) -> BTreeSet<PauliLabel> {
    let mut group: BTreeSet<PauliLabel> = BTreeSet::new();
    group.insert(PauliLabel::identity(d));
    let mut frontier: Vec<PauliLabel> = vec![PauliLabel::identity(d)];
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y = pauli_mul(&x, g).unwrap();
            if group.insert(y) {
                frontier.push(y);
            }
        }
    }
    group
}

/// Orders of G_1 = P_d ⊇ G_2 = [G, G_1] ⊇ … down to the trivial group.
pub fn lower_central_series(d: usize) -> Vec<BTreeSet<PauliLabel>> {
    let g = pauli_group(d);
    let mut series = vec![g.iter().copied().collect::<BTreeSet<_>>()];
    while series.last().unwrap().len() > 1 {
        let prev = series.last().unwrap();
        let gens: HashSet<PauliLabel> = g
            .iter()
            .flat_map(|x| prev.iter().map(move |y| commutator(x, y)))
            .collect();
        let next = generated(d, &gens);
        if next.len() == prev.len() {
            break;
        }
        series.push(next);
    }
    series
}

/// Group-axiom check on the label law.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupCheck {
    pub d: usize,
    pub order: usize,
    pub closed: bool,
    pub associative: bool,
    pub identity: bool,
    pub inverses: bool,
    pub series_orders: Vec<usize>,
    pub commutator_central: bool,
}

impl GroupCheck {
    pub fn ok(&self) -> bool {
        self.order == self.d.pow(3)
            && self.closed
            && self.associative
            && self.identity
            && self.inverses
            && self.commutator_central
    }
}

pub fn group_check(d: usize) -> GroupCheck {
    let g = pauli_group(d);
    let set: HashSet<PauliLabel> = g.iter().copied().collect();
    let e = PauliLabel::identity(d);
    let closed = g
        .iter()
        .all(|x| g.iter().all(|y| set.contains(&pauli_mul(x, y).unwrap())));
    let associative = g.par_iter().all(|x| {
        g.iter().all(|y| {
            let xy = pauli_mul(x, y).unwrap();
            g.iter().all(|z| {
                pauli_mul(&xy, z).unwrap() == pauli_mul(x, &pauli_mul(y, z).unwrap()).unwrap()
            })
        })
    });
    let identity = g
        .iter()
        .all(|x| pauli_mul(&e, x).unwrap() == *x && pauli_mul(x, &e).unwrap() == *x);
    let inverses = g.iter().all(|x| {
        pauli_mul(x, &x.inverse()).unwrap() == e && pauli_mul(&x.inverse(), x).unwrap() == e
    });
    let series = lower_central_series(d);
    let commutator_central = series
        .get(1)
        .is_none_or(|g2| g2.iter().all(|x| x.b == 0 && x.c == 0));
    GroupCheck {
        d,
        order: set.len(),
        closed,
        associative,
        identity,
        inverses,
        series_orders: series.iter().map(|s| s.len()).collect(),
        commutator_central,
    }
}

/// [U_ab, U_ef]_∓ = (ω^{−be} ∓ ω^{−af}) U_{a+e, b+f}.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StructureConstant {
    pub d: usize,
    pub i: usize,
    pub j: usize,
    /// Exponents of ω in the two terms: (−be, −af) mod d.
    pub exponents: (usize, usize),
}

impl StructureConstant {
    /// `anti = false` for the commutator, `true` for the anticommutator.
    pub fn coefficient(&self, anti: bool) -> CycloSum {
        let mut s = CycloSum::monomial(self.d as u32, self.exponents.0 as i64, 1);
        s.add_root(self.exponents.1 as i64, if anti { 1 } else { -1 });
        s
    }

    pub fn commutator_vanishes(&self) -> bool {
        self.exponents.0 == self.exponents.1
    }

    /// Only possible for even d, when af − be ≡ d/2.
    pub fn anticommutator_vanishes(&self) -> bool {
        self.d.is_multiple_of(2)
            && (self.exponents.0 + self.d - self.exponents.1) % self.d == self.d / 2
    }
}

pub fn structure_constants(
    d: usize,
    (a, b): (usize, usize),
    (e, f): (usize, usize),
) -> StructureConstant {
    let be = (b * e) % d;
    let af = (a * f) % d;
    StructureConstant {
        d,
        i: (a + e) % d,
        j: (b + f) % d,
        exponents: ((d - be) % d, (d - af) % d),
    }
}

/// Exact check of the structure-constant identity on every pair at dimension d.
pub fn verify_structure_constants(d: usize) -> bool {
    let u: Vec<Vec<CycloMatrix>> = (0..d)
        .map(|a| (0..d).map(|b| gen_pauli(d, a, b)).collect())
        .collect();
    let labels: Vec<(usize, usize)> = (0..d).flat_map(|a| (0..d).map(move |b| (a, b))).collect();
    labels.par_iter().all(|&(a, b)| {
        labels.iter().all(|&(e, f)| {
            let sc = structure_constants(d, (a, b), (e, f));
            let xy = u[a][b].mul(&u[e][f]);
            let yx = u[e][f].mul(&u[a][b]);
            [false, true].iter().all(|&anti| {
                let mut lhs = xy.clone();
                for r in 0..d {
                    for c in 0..d {
                        let t = yx.entry(r, c).scale(if anti { 1 } else { -1 });
                        lhs.entry_mut(r, c).add_assign(&t);
                    }
                }
                let coef = sc.coefficient(anti);
                let target = &u[sc.i][sc.j];
                let mut rhs = CycloMatrix::zeros(d as u32, d, d);
                for r in 0..d {
                    for c in 0..d {
                        *rhs.entry_mut(r, c) = target.entry(r, c).mul(&coef);
                    }
                }
                let vanish = (0..d).all(|r| (0..d).all(|c| lhs.entry(r, c).is_zero_exact()));
                let predicted = if anti {
                    sc.anticommutator_vanishes()
                } else {
                    sc.commutator_vanishes()
                };
                lhs.eq_exact(&rhs) && vanish == predicted
            })
        })
    })
}

/// A class of p−1 commuting non-identity labels X^b Z^c.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommutingClass {
    pub index: usize,
    pub members: Vec<PauliLabel>,
}

impl fmt::Display for CommutingClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if self.members.first().is_some_and(|m| m.d > 10) {
            ","
        } else {
            ""
        };
        let items: Vec<String> = self
            .members
            .iter()
            .map(|m| format!("{}{sep}{}", m.b, m.c))
            .collect();
        write!(f, "𝒱_{} = {{{}}}", self.index, items.join(", "))
    }
}

/// 𝒱_0 = {Z^b}, 𝒱_{a+1} = {X^b Z^{ab}} for b = 1, …, p−1.
pub fn commuting_classes(p: usize) -> Result<Vec<CommutingClass>> {
    if !is_prime(p as u64) {
        return Err(Error::NotPrime(p as u64));
    }
    let mut out = vec![CommutingClass {
        index: 0,
        members: (1..p).map(|b| PauliLabel::new(p, 0, 0, b)).collect(),
    }];
    for a in 0..p {
        out.push(CommutingClass {
            index: a + 1,
            members: (1..p).map(|b| PauliLabel::new(p, 0, b, a * b)).collect(),
        });
    }
    Ok(out)
}

/// Partition of the p² − 1 non-identity labels with commuting members.
pub fn classes_partition_ok(p: usize, classes: &[CommutingClass]) -> bool {
    let mut seen = HashSet::new();
    for cl in classes {
        if cl.members.len() != p - 1 {
            return false;
        }
        for m in &cl.members {
            if (m.b, m.c) == (0, 0) || !seen.insert((m.b, m.c)) {
                return false;
            }
        }
        for x in &cl.members {
            for y in &cl.members {
                if !structure_constants(p, (x.b, x.c), (y.b, y.c)).commutator_vanishes() {
                    return false;
                }
            }
        }
    }
    seen.len() == p * p - 1 && classes.len() == p + 1
}

/// One operator Z or XZ^a matched against the bases of mub_master(p).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassMatch {
    pub class_index: usize,
    pub operator: String,
    pub operator_in_class: bool,
    /// Every basis whose vectors are all exact eigenvectors of the operator.
    pub eigenbases: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassBasisReport {
    pub p: usize,
    pub matches: Vec<ClassMatch>,
    pub bijection: bool,
}

fn is_eigenvector(op: &CycloMatrix, v: &[CycloSum]) -> bool {
    let n = op.conductor();
    let d = v.len();
    let w: Vec<CycloSum> = (0..d)
        .map(|r| {
            let mut acc = CycloSum::zero(n);
            for (c, vc) in v.iter().enumerate() {
                acc.add_assign(&op.entry(r, c).mul(vc));
            }
            acc
        })
        .collect();
    let pivot = match v.iter().position(|x| !x.is_zero_exact()) {
        Some(k) => k,
        None => return false,
    };
    (0..d).all(|r| w[r].mul(&v[pivot]).eq_exact(&w[pivot].mul(&v[r]))) && !w[pivot].is_zero_exact()
}

/// Certifies that the eigenvectors of Z, X, XZ, …, XZ^{p−1} are the bases of
/// mub_master(p), one class per basis.
pub fn class_basis_match(p: usize) -> Result<ClassBasisReport> {
    let classes = commuting_classes(p)?;
    let set: MubSet = mub_master(p)?;
    let n = set.conductor;
    let (x, z) = weyl_pair(p);
    let (x, z) = (x.lift(n), z.lift(n));
    let mut matches = Vec::new();
    for cl in &classes {
        // operator as (b, c) in X^b Z^c
        let (b, c) = if cl.index == 0 {
            (0, 1)
        } else {
            (1, cl.index - 1)
        };
        let op = x.pow(b as u32).mul(&z.pow(c as u32));
        let operator = match (b, c) {
            (0, _) => "Z".to_string(),
            (_, 0) => "X".to_string(),
            (_, 1) => "XZ".to_string(),
            _ => format!("XZ^{c}"),
        };
        let operator_in_class = cl.members.iter().any(|m| (m.b, m.c) == (b, c));
        let eigenbases = set
            .bases
            .iter()
            .filter(|basis| {
                basis
                    .vectors
                    .iter()
                    .all(|v| is_eigenvector(&op, &v.to_sums(p, n)))
            })
            .map(|basis| basis.label.clone())
            .collect();
        matches.push(ClassMatch {
            class_index: cl.index,
            operator,
            operator_in_class,
            eigenbases,
        });
    }
    let mut used = HashSet::new();
    let bijection = matches.iter().all(|m| {
        m.operator_in_class && m.eigenbases.len() == 1 && used.insert(m.eigenbases[0].clone())
    }) && used.len() == p + 1;
    Ok(ClassBasisReport {
        p,
        matches,
        bijection,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mub::matrix_va;
    use proptest::prelude::*;

    #[test]
    fn weyl_relations() {
        for d in 2..=12usize {
            let (x, z) = weyl_pair(d);
            let w = CycloMatrix::from_exponents(d as u32, d, d, 1, |r, c| (r == c).then_some(1));
            assert!(x.mul(&z).eq_exact(&w.mul(&z).mul(&x)), "d={d}");
            assert!(x
                .pow(d as u32)
                .eq_exact(&CycloMatrix::identity(d as u32, d)));
            assert!(z
                .pow(d as u32)
                .eq_exact(&CycloMatrix::identity(d as u32, d)));
        }
    }

    #[test]
    fn weyl_pair_from_master_matrices() {
        for d in 2..=7usize {
            let (x, z) = weyl_pair(d);
            let v0 = matrix_va(d, 0).unwrap();
            let v1 = matrix_va(d, 1).unwrap();
            assert!(x.eq_exact(&v0));
            assert!(z.eq_exact(&v0.adjoint().mul(&v1)));
            for a in 0..d {
                assert!(gen_pauli(d, 1, a).eq_exact(&matrix_va(d, a).unwrap()));
            }
        }
    }

    #[test]
    fn d2_is_ordinary_pauli() {
        let (x, z) = weyl_pair(2);
        assert!(x.eq_exact(&CycloMatrix::from_exponents(2, 2, 2, 1, |r, c| (r != c).then_some(0))));
        assert!(z.eq_exact(
            &CycloMatrix::from_exponents(2, 2, 2, 1, |r, c| (r == c).then_some(r as i64))
        ));
        // XZ = [[0, −1], [1, 0]]
        let y = gen_pauli(2, 1, 1);
        assert!(y.eq_exact(&CycloMatrix::from_exponents(2, 2, 2, 1, |r, c| {
            match (r, c) {
                (0, 1) => Some(1),
                (1, 0) => Some(0),
                _ => None,
            }
        })));
    }

    #[test]
    fn d3_examples() {
        let (_, z) = weyl_pair(3);
        assert!(z.eq_exact(
            &CycloMatrix::from_exponents(3, 3, 3, 1, |r, c| (r == c).then_some(r as i64))
        ));
        // X²Z first row (0, 0, ω²)
        let u21 = gen_pauli(3, 2, 1);
        assert!(u21.entry(0, 0).is_zero_exact() && u21.entry(0, 1).is_zero_exact());
        assert!(u21.entry(0, 2).eq_exact(&CycloSum::monomial(3, 2, 1)));
        let u11 = gen_pauli(3, 1, 1);
        assert!(u11.adjoint().mul(&u11).trace().equals_integer(3));
        assert!(u11
            .adjoint()
            .mul(&gen_pauli(3, 1, 2))
            .trace()
            .is_zero_exact());
    }

    #[test]
    fn trace_orthogonality() {
        for d in 2..=5usize {
            let u: Vec<_> = (0..d * d).map(|k| gen_pauli(d, k / d, k % d)).collect();
            for (i, a) in u.iter().enumerate() {
                for (j, b) in u.iter().enumerate() {
                    let t = a.adjoint().mul(b).trace();
                    assert!(t.equals_integer(if i == j { d as i64 } else { 0 }));
                }
            }
        }
    }

    #[test]
    fn mul_examples() {
        let e = pauli_mul(&PauliLabel::new(2, 0, 1, 1), &PauliLabel::new(2, 0, 0, 1)).unwrap();
        assert_eq!(e, PauliLabel::new(2, 0, 1, 0));
        let w = pauli_mul(&PauliLabel::new(3, 0, 1, 2), &PauliLabel::new(3, 0, 2, 1)).unwrap();
        assert_eq!(w, PauliLabel::new(3, 2, 0, 0));
        let m = PauliLabel::new(3, 0, 1, 2)
            .matrix()
            .mul(&PauliLabel::new(3, 0, 2, 1).matrix());
        assert!(m.eq_exact(&w.matrix()));
        assert!(pauli_mul(&PauliLabel::identity(2), &PauliLabel::identity(3)).is_err());
    }

    #[test]
    fn label_law_matches_matrices() {
        for d in 2..=4usize {
            let g = pauli_group(d);
            let mats: Vec<_> = g.iter().map(|x| x.matrix()).collect();
            for (i, x) in g.iter().enumerate() {
                for (j, y) in g.iter().enumerate() {
                    let k = g
                        .iter()
                        .position(|z| *z == pauli_mul(x, y).unwrap())
                        .unwrap();
                    assert!(mats[i].mul(&mats[j]).eq_exact(&mats[k]));
                }
            }
        }
    }

    #[test]
    fn group_axioms() {
        for d in 2..=5usize {
            let c = group_check(d);
            assert!(c.ok(), "{c:?}");
        }
        assert_eq!(group_check(2).series_orders, vec![8, 2, 1]);
        assert_eq!(group_check(3).series_orders, vec![27, 3, 1]);
    }

    #[test]
    fn structure_constant_examples() {
        let xz = structure_constants(2, (1, 0), (0, 1));
        assert!(xz.anticommutator_vanishes());
        for a in 0..3 {
            for b in 0..3 {
                for e in 0..3 {
                    for f in 0..3 {
                        assert!(!structure_constants(3, (a, b), (e, f)).anticommutator_vanishes());
                        assert!(!structure_constants(3, (a, b), (e, f))
                            .coefficient(true)
                            .is_zero_exact());
                    }
                }
            }
        }
        assert!(structure_constants(3, (1, 1), (2, 2)).commutator_vanishes());
        for d in [2, 3, 4] {
            assert!(verify_structure_constants(d), "d={d}");
        }
    }

    #[test]
    fn class_tables() {
        let c5 = commuting_classes(5).unwrap();
        assert_eq!(c5[3].to_string(), "𝒱_3 = {12, 24, 31, 43}");
        let c2 = commuting_classes(2).unwrap();
        let shorthand: Vec<String> = c2.iter().map(|c| c.to_string()).collect();
        assert_eq!(shorthand, ["𝒱_0 = {01}", "𝒱_1 = {10}", "𝒱_2 = {11}"]);
        assert!(commuting_classes(6).is_err());
    }

    // Oracle: brute-force the commuting graph and check each class is a clique
    // and the classes are disjoint and cover.
    #[test]
    fn partition_by_exhaustion() {
        for p in [2usize, 3, 5, 7] {
            let classes = commuting_classes(p).unwrap();
            assert!(classes_partition_ok(p, &classes));
            for cl in &classes {
                for x in &cl.members {
                    for y in &cl.members {
                        let (mx, my) = (x.matrix(), y.matrix());
                        assert!(mx.mul(&my).eq_exact(&my.mul(&mx)));
                    }
                }
            }
        }
    }

    #[test]
    fn class_basis_bijection() {
        let r = class_basis_match(2).unwrap();
        assert!(r.bijection);
        assert_eq!(r.matches[0].eigenbases, ["B_2"]);
        assert_eq!(r.matches[1].eigenbases, ["B_0"]);
        assert_eq!(r.matches[2].eigenbases, ["B_1"]);
        for p in [3, 5] {
            let r = class_basis_match(p).unwrap();
            assert!(r.bijection, "{r:?}");
            for m in &r.matches[1..] {
                assert_eq!(m.eigenbases, [format!("B_{}", m.class_index - 1)]);
            }
        }
    }

    proptest! {
        #[test]
        fn label_law_matches_matrices_d5(a in 0usize..5, b in 0usize..5, c in 0usize..5, x in 0usize..5, y in 0usize..5, z in 0usize..5) {
            let u = PauliLabel::new(5, a, b, c);
            let v = PauliLabel::new(5, x, y, z);
            prop_assert!(u.matrix().mul(&v.matrix()).eq_exact(&pauli_mul(&u, &v).unwrap().matrix()));
        }
    }
}
