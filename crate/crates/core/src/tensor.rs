//! Coefficient tensors of ℂ*-invariant holomorphic q-vectors on ℂ⁴.
//!
//! A q-vector `Σ c z_{i1}…z_{iq} ∂_{k1}∧…∧∂_{kq}` with degree-q coefficients
//! is stored by its canonical slots: a multiset `i1 ≤ … ≤ iq` of upper
//! indices and a strictly increasing tuple `k1 < … < kq` of lower indices.
//! The stored value is exactly the coefficient of that monomial and blade.
//!
//! [`Tensor::get`] extends to arbitrary index tuples by symmetry in the upper
//! indices and antisymmetry in the lower ones. [`Tensor::full`] gives the
//! normalized component `a` for which the unrestricted sum
//! `Σ_{all indices} a z…z ∂∧…∧∂` reproduces the field.

use std::fmt;
use std::sync::OnceLock;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::multivector::{Blade, MVec};
use crate::poly::{Monomial, Poly};
use crate::scalar::Scalar;

/// The index involution `0↔1, 2↔3` induced by right multiplication by `j`.
pub const PHI: [usize; 4] = [1, 0, 3, 2];

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Tensor<const Q: usize> {
    data: Vec<Scalar>,
}

pub type Tensor1 = Tensor<1>;
pub type Tensor2 = Tensor<2>;
pub type Tensor3 = Tensor<3>;

/// Canonical `(upper, lower)` slot pairs for a given grade.
#[derive(Debug)]
struct SlotTable {
    upper: Vec<Vec<usize>>,
    lower: Vec<Vec<usize>>,
}

fn multisets(q: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for i in start..4 {
            cur.push(i);
            rec(i, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, q, &mut Vec::new(), &mut out);
    out
}

fn strict_sets(q: usize) -> Vec<Vec<usize>> {
    multisets(q)
        .into_iter()
        .filter(|s| s.windows(2).all(|w| w[0] < w[1]))
        .collect()
}

fn table(q: usize) -> &'static SlotTable {
    static TABLES: [OnceLock<SlotTable>; 4] = [
        OnceLock::new(),
        OnceLock::new(),
        OnceLock::new(),
        OnceLock::new(),
    ];
    TABLES[q].get_or_init(|| SlotTable {
        upper: multisets(q),
        lower: strict_sets(q),
    })
}

fn factorial(n: usize) -> i64 {
    (1..=n as i64).product()
}

/// Number of distinct orderings of a sorted multiset.
fn orderings(sorted: &[usize]) -> i64 {
    let mut denom = 1;
    let mut run = 1;
    for w in sorted.windows(2) {
        if w[0] == w[1] {
            run += 1;
        } else {
            denom *= factorial(run);
            run = 1;
        }
    }
    denom *= factorial(run);
    factorial(sorted.len()) / denom
}

/// Sorts a lower tuple, returning the permutation sign, or `None` on repeats.
fn sort_alternating(idx: &[usize]) -> Option<(Vec<usize>, usize)> {
    let mut v = idx.to_vec();
    let mut swaps = 0;
    for i in 0..v.len() {
        for j in 0..v.len() - 1 - i {
            if v[j] > v[j + 1] {
                v.swap(j, j + 1);
                swaps += 1;
            } else if v[j] == v[j + 1] {
                return None;
            }
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((v, swaps))
}

fn permutations(n: usize) -> Vec<(Vec<usize>, usize)> {
    // (permutation, parity)
    fn rec(cur: &mut Vec<usize>, used: &mut Vec<bool>, n: usize, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for i in 0..n {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                rec(cur, used, n, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], n, &mut out);
    out.into_iter()
        .map(|p| {
            let parity = sort_alternating(&p).expect("permutation").1;
            (p, parity)
        })
        .collect()
}

impl<const Q: usize> Tensor<Q> {
    fn table() -> &'static SlotTable {
        assert!((1..=3).contains(&Q), "tensor grade must be 1, 2 or 3");
        table(Q)
    }

    /// Number of canonical slots: 16, 60 or 80.
    pub fn dim() -> usize {
        let t = Self::table();
        t.upper.len() * t.lower.len()
    }

    pub fn zero() -> Self {
        Tensor {
            data: vec![Scalar::zero(); Self::dim()],
        }
    }

    /// Canonical slots in storage order.
    pub fn slots() -> Vec<(Vec<usize>, Vec<usize>)> {
        let t = Self::table();
        let mut out = Vec::with_capacity(Self::dim());
        for u in &t.upper {
            for l in &t.lower {
                out.push((u.clone(), l.clone()));
            }
        }
        out
    }

    fn slot_index(upper: &[usize], lower: &[usize]) -> Option<usize> {
        let t = Self::table();
        let ui = t.upper.iter().position(|u| u == upper)?;
        let li = t.lower.iter().position(|l| l == lower)?;
        Some(ui * t.lower.len() + li)
    }

    /// Basis tensor with a single canonical slot set to one.
    pub fn unit(slot: usize) -> Self {
        let mut t = Self::zero();
        t.data[slot] = Scalar::one();
        t
    }

    /// Value at a canonical slot; errors on non-canonical indices.
    pub fn slot(&self, upper: &[usize], lower: &[usize]) -> Result<&Scalar> {
        Self::slot_index(upper, lower)
            .map(|i| &self.data[i])
            .ok_or_else(|| Error::NotInvariant {
                grade: Q,
                reason: format!("non-canonical slot {upper:?},{lower:?}"),
            })
    }

    pub fn set_slot(&mut self, upper: &[usize], lower: &[usize], value: Scalar) -> Result<()> {
        let i = Self::slot_index(upper, lower).ok_or_else(|| Error::NotInvariant {
            grade: Q,
            reason: format!("non-canonical slot {upper:?},{lower:?}"),
        })?;
        self.data[i] = value;
        Ok(())
    }

    /// Value for arbitrary index tuples: symmetric in `upper`, alternating in
    /// `lower` (zero on repeated lower indices).
    pub fn get(&self, upper: &[usize], lower: &[usize]) -> Scalar {
        assert_eq!(upper.len(), Q);
        assert_eq!(lower.len(), Q);
        let mut u = upper.to_vec();
        u.sort_unstable();
        let Some((l, swaps)) = sort_alternating(lower) else {
            return Scalar::zero();
        };
        let i = Self::slot_index(&u, &l).expect("sorted indices are canonical");
        &self.data[i] * &Scalar::sign(swaps)
    }

    /// Normalized component of the fully symmetric/alternating tensor.
    pub fn full(&self, upper: &[usize], lower: &[usize]) -> Scalar {
        let mut u = upper.to_vec();
        u.sort_unstable();
        let weight = orderings(&u) * factorial(Q);
        &self.get(upper, lower) / &Scalar::int(weight)
    }

    pub fn as_slice(&self) -> &[Scalar] {
        &self.data
    }

    pub fn to_vector(&self) -> Vec<Scalar> {
        self.data.clone()
    }

    pub fn from_vector(v: Vec<Scalar>) -> Result<Self> {
        if v.len() != Self::dim() {
            return Err(Error::DimensionMismatch {
                expected: Self::dim(),
                got: v.len(),
            });
        }
        Ok(Tensor { data: v })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        Tensor {
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        Tensor {
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Tensor {
            data: self.data.iter().map(|a| a * c).collect(),
        }
    }

    /// Reads off the canonical slots of a holomorphic grade-`Q` field whose
    /// coefficients are homogeneous of degree `Q`.
    pub fn from_mvec(m: &MVec) -> Result<Self> {
        let bad = |reason: String| Error::NotInvariant { grade: Q, reason };
        if m.grade() != Q {
            return Err(Error::GradeMismatch {
                expected: Q,
                got: m.grade(),
            });
        }
        let mut t = Self::zero();
        for (blade, p) in m.terms() {
            if blade.barred_count() > 0 {
                return Err(bad("barred direction present".into()));
            }
            let lower: Vec<usize> = blade.indices().collect();
            for (mono, c) in p.terms() {
                if mono.antiholo_degree() > 0 {
                    return Err(bad("antiholomorphic coefficient".into()));
                }
                if mono.degree() as usize != Q {
                    return Err(bad(format!(
                        "coefficient degree {} instead of {Q}",
                        mono.degree()
                    )));
                }
                let mut upper = Vec::with_capacity(Q);
                for k in 0..4 {
                    for _ in 0..mono.exps()[k] {
                        upper.push(k);
                    }
                }
                let i = Self::slot_index(&upper, &lower).expect("canonical slot");
                t.data[i] = c.clone();
            }
        }
        Ok(t)
    }

    pub fn to_mvec(&self) -> MVec {
        let mut m = MVec::zero(Q);
        for ((upper, lower), c) in Self::slots().into_iter().zip(&self.data) {
            if c.is_zero() {
                continue;
            }
            let mut e = [0u32; 4];
            for &i in &upper {
                e[i] += 1;
            }
            let (blade, _) = Blade::from_indices(&lower).expect("strict lower indices");
            m.add_term(blade, &Poly::term(Monomial::holo(e), c.clone()));
        }
        m
    }

    /// The real structure `Φ(a)_{I} = (−1)^{ΣI} conj(a_{φ(I)})`.
    pub fn phi(&self) -> Self {
        let mut out = Self::zero();
        for (n, (upper, lower)) in Self::slots().into_iter().enumerate() {
            let pu: Vec<usize> = upper.iter().map(|&i| PHI[i]).collect();
            let pl: Vec<usize> = lower.iter().map(|&i| PHI[i]).collect();
            let parity: usize = upper.iter().chain(&lower).sum();
            out.data[n] = &self.get(&pu, &pl).conj() * &Scalar::sign(parity);
        }
        out
    }

    pub fn is_phi_fixed(&self) -> bool {
        self.phi() == *self
    }

    /// The ℍ*-invariance condition checked index by index over every
    /// (not only canonical) index tuple through [`Tensor::get`].
    pub fn hstar_invariant(&self) -> bool {
        let n = 2 * Q;
        let total = 4usize.pow(n as u32);
        (0..total).all(|code| {
            let idx: Vec<usize> = (0..n).map(|p| (code >> (2 * p)) & 3).collect();
            let (upper, lower) = idx.split_at(Q);
            let pu: Vec<usize> = upper.iter().map(|&i| PHI[i]).collect();
            let pl: Vec<usize> = lower.iter().map(|&i| PHI[i]).collect();
            let parity: usize = idx.iter().sum();
            self.get(upper, lower) == &self.get(&pu, &pl).conj() * &Scalar::sign(parity)
        })
    }

    /// Nonzero canonical slots, for display.
    pub fn nonzero_slots(&self) -> Vec<(Vec<usize>, Vec<usize>, Scalar)> {
        Self::slots()
            .into_iter()
            .zip(&self.data)
            .filter(|(_, c)| !c.is_zero())
            .map(|((u, l), c)| (u, l, c.clone()))
            .collect()
    }
}

impl<const Q: usize> fmt::Debug for Tensor<Q> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tensor{Q}{{")?;
        for (i, (u, l, c)) in self.nonzero_slots().into_iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{u:?}{l:?}: {c}")?;
        }
        write!(f, "}}")
    }
}

impl Tensor1 {
    /// Coefficient `a_ij` of `z_i ∂_j`.
    pub fn entry(&self, i: usize, j: usize) -> Scalar {
        self.get(&[i], &[j])
    }

    pub fn from_matrix(m: &[[Scalar; 4]; 4]) -> Self {
        let mut t = Tensor1::zero();
        for (i, row) in m.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                t.set_slot(&[i], &[j], x.clone()).expect("canonical");
            }
        }
        t
    }

    pub fn matrix(&self) -> [[Scalar; 4]; 4] {
        std::array::from_fn(|i| std::array::from_fn(|j| self.entry(i, j)))
    }

    pub fn matmul(&self, other: &Tensor1) -> Tensor1 {
        let a = self.matrix();
        let b = other.matrix();
        let m = std::array::from_fn(|i| {
            std::array::from_fn(|j| {
                let mut acc = Scalar::zero();
                for k in 0..4 {
                    acc += &(&a[i][k] * &b[k][j]);
                }
                acc
            })
        });
        Tensor1::from_matrix(&m)
    }

    /// Matrix commutator `AB − BA`.
    pub fn commutator(&self, other: &Tensor1) -> Tensor1 {
        self.matmul(other).sub(&other.matmul(self))
    }

    pub fn identity() -> Tensor1 {
        let mut t = Tensor1::zero();
        for i in 0..4 {
            t.set_slot(&[i], &[i], Scalar::one()).expect("canonical");
        }
        t
    }
}

/// The matrix-form bracket `F̃(a, b) = S³⊗Λ³(4 [A_{jl}, B_{j'l'}])`, where
/// `A_{jl}` is the 4×4 matrix with `(i, k)` entry `a_{ijkl}`.
///
/// The commutator gives the ⊗³gl tensor with upper indices `(i, j, j')` and
/// lower indices `(k', l, l')`; the symmetrize/alternate projection is then
/// read off in canonical slots.
pub fn matrix_form_bracket(a: &Tensor2, b: &Tensor2) -> Tensor3 {
    // full components, cached: fa[i][j][k][l]
    let cache = |t: &Tensor2| -> Vec<Scalar> {
        let mut v = Vec::with_capacity(256);
        for i in 0..4 {
            for j in 0..4 {
                for k in 0..4 {
                    for l in 0..4 {
                        v.push(t.full(&[i, j], &[k, l]));
                    }
                }
            }
        }
        v
    };
    let fa = cache(a);
    let fb = cache(b);
    let at = |v: &[Scalar], i: usize, j: usize, k: usize, l: usize| v[((i * 4 + j) * 4 + k) * 4 + l].clone();

    // [A_{jl}, B_{j'l'}]_{(i, k')}
    let commutator = |i: usize, j: usize, jp: usize, kp: usize, l: usize, lp: usize| -> Scalar {
        let mut acc = Scalar::zero();
        for m in 0..4 {
            acc += &(&at(&fa, i, j, m, l) * &at(&fb, m, jp, kp, lp));
            acc -= &(&at(&fb, i, jp, m, lp) * &at(&fa, m, j, kp, l));
        }
        acc
    };

    let perms = permutations(3);
    let four = Scalar::int(4);
    let mut out = Tensor3::zero();
    for (n, (upper, lower)) in Tensor3::slots().into_iter().enumerate() {
        // S³⊗Λ³ projection at this slot
        let mut proj = Scalar::zero();
        for (su, _) in &perms {
            for (sl, parity) in &perms {
                let u: Vec<usize> = su.iter().map(|&p| upper[p]).collect();
                let l: Vec<usize> = sl.iter().map(|&p| lower[p]).collect();
                let c = commutator(u[0], u[1], u[2], l[0], l[1], l[2]);
                proj += &(&c * &Scalar::sign(*parity));
            }
        }
        let proj = &(&proj * &four) / &Scalar::int(36);
        let weight = orderings(&upper) * factorial(3);
        out.data[n] = &proj * &Scalar::int(weight);
    }
    out
}

/// 2×2 quaternionic matrix; entry `(k, l)` is `a + j·b` stored as `(a, b)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuatMatrix2 {
    pub entries: [[(Scalar, Scalar); 2]; 2],
}

impl QuatMatrix2 {
    pub fn identity() -> Self {
        let one = (Scalar::one(), Scalar::zero());
        let zero = (Scalar::zero(), Scalar::zero());
        QuatMatrix2 {
            entries: [[one.clone(), zero.clone()], [zero, one]],
        }
    }

    /// `(a + jb)(c + jd) = (ac − conj(b)d) + j(conj(a)d + bc)`.
    fn quat_mul(p: &(Scalar, Scalar), q: &(Scalar, Scalar)) -> (Scalar, Scalar) {
        let (a, b) = p;
        let (c, d) = q;
        (a * c - &(&b.conj() * d), &a.conj() * d + &(b * c))
    }

    pub fn mul(&self, other: &QuatMatrix2) -> QuatMatrix2 {
        let entries = std::array::from_fn(|k| {
            std::array::from_fn(|l| {
                let x = Self::quat_mul(&self.entries[k][0], &other.entries[0][l]);
                let y = Self::quat_mul(&self.entries[k][1], &other.entries[1][l]);
                (&x.0 + &y.0, &x.1 + &y.1)
            })
        });
        QuatMatrix2 { entries }
    }

    pub fn commutator(&self, other: &QuatMatrix2) -> QuatMatrix2 {
        let ab = self.mul(other);
        let ba = other.mul(self);
        let entries = std::array::from_fn(|k| {
            std::array::from_fn(|l| {
                (
                    &ab.entries[k][l].0 - &ba.entries[k][l].0,
                    &ab.entries[k][l].1 - &ba.entries[k][l].1,
                )
            })
        });
        QuatMatrix2 { entries }
    }
}

/// Embeds gl(2, ℍ) into gl(4, ℂ): each entry `a + jb` becomes the block
/// `[[a, −conj(b)], [b, conj(a)]]`.
pub fn embed_gl2h(m: &QuatMatrix2) -> Tensor1 {
    let mut out: [[Scalar; 4]; 4] = Default::default();
    for k in 0..2 {
        for l in 0..2 {
            let (a, b) = &m.entries[k][l];
            out[2 * k][2 * l] = a.clone();
            out[2 * k][2 * l + 1] = -b.conj();
            out[2 * k + 1][2 * l] = b.clone();
            out[2 * k + 1][2 * l + 1] = a.conj();
        }
    }
    Tensor1::from_matrix(&out)
}

/// One canonical slot of a grade-2 tensor in the JSON exchange format.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TensorEntry {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub l: usize,
    pub re: [i64; 2],
    pub im: [i64; 2],
}

impl Tensor2 {
    /// Nonzero canonical slots as JSON entries.
    pub fn to_json_entries(&self) -> Result<Vec<TensorEntry>> {
        self.nonzero_slots()
            .into_iter()
            .map(|(u, l, c)| {
                let (re, im) = c
                    .to_i64_parts()
                    .ok_or_else(|| Error::TensorJson("coefficient exceeds i64".into()))?;
                Ok(TensorEntry {
                    i: u[0],
                    j: u[1],
                    k: l[0],
                    l: l[1],
                    re,
                    im,
                })
            })
            .collect()
    }

    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string(&self.to_json_entries()?).map_err(|e| Error::TensorJson(e.to_string()))
    }

    /// Parses the JSON exchange format; rejects non-canonical and duplicate
    /// slots.
    pub fn from_json(text: &str) -> Result<Tensor2> {
        let entries: Vec<TensorEntry> =
            serde_json::from_str(text).map_err(|e| Error::TensorJson(e.to_string()))?;
        let mut t = Tensor2::zero();
        let mut seen = std::collections::BTreeSet::new();
        for e in entries {
            if e.i > e.j || e.k >= e.l || e.j > 3 || e.l > 3 {
                return Err(Error::TensorJson(format!(
                    "non-canonical slot ({},{},{},{})",
                    e.i, e.j, e.k, e.l
                )));
            }
            if !seen.insert((e.i, e.j, e.k, e.l)) {
                return Err(Error::TensorJson(format!(
                    "duplicate slot ({},{},{},{})",
                    e.i, e.j, e.k, e.l
                )));
            }
            if e.re[1] == 0 || e.im[1] == 0 {
                return Err(Error::TensorJson("zero denominator".into()));
            }
            let c = Scalar::from_parts(e.re[0], e.re[1], e.im[0], e.im[1]);
            t.set_slot(&[e.i, e.j], &[e.k, e.l], c)?;
        }
        Ok(t)
    }
}
