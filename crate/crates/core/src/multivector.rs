//! Polynomial multivector fields on ℂ⁴ over the eight coordinate directions
//! `∂0..∂3, ∂b0..∂b3`.
//!
//! A term is a polynomial coefficient times a canonical wedge of distinct
//! directions in increasing order `∂0 < ∂1 < ∂2 < ∂3 < ∂b0 < … < ∂b3`.
//! Direction `k` differentiates the variable slot `k` of [`Poly`], so `∂bk`
//! pairs with `zbk`.
//!
//! The Schouten bracket is computed by treating each `∂k` as an odd
//! coordinate `ξk`:
//!
//! ```text
//! [P, Q] = Σ_k (P ∂⃖/∂ξk)(∂Q/∂xk) − (∂P/∂xk)(∂⃗Q/∂ξk)
//! ```
//!
//! which restricts to the Lie bracket on vector fields and satisfies
//! `[A, B∧C] = [A,B]∧C + (−1)^{(|A|−1)|B|} B∧[A,C]` and
//! `[A, B] = −(−1)^{(|A|−1)(|B|−1)} [B, A]`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::poly::{Poly, Var, VarNames, NVARS, Z_NAMES};
use crate::scalar::Scalar;

/// Display names for the eight direction slots.
pub type DirNames = [&'static str; NVARS];

pub const D_NAMES: DirNames = ["d0", "d1", "d2", "d3", "db0", "db1", "db2", "db3"];

/// A set of directions, stored as a bit mask and ordered by the
/// lexicographic order of its increasing index list.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Blade(u8);

impl Blade {
    pub fn empty() -> Self {
        Blade(0)
    }

    pub fn single(k: usize) -> Self {
        assert!(k < NVARS);
        Blade(1 << k)
    }

    /// Canonicalizes an index list: `None` if an index repeats, otherwise the
    /// blade and the sign of the sorting permutation.
    pub fn from_indices(indices: &[usize]) -> Option<(Blade, Scalar)> {
        let mut mask = 0u8;
        let mut inversions = 0;
        for (pos, &k) in indices.iter().enumerate() {
            assert!(k < NVARS, "direction index out of range");
            if mask & (1 << k) != 0 {
                return None;
            }
            mask |= 1 << k;
            inversions += indices[..pos].iter().filter(|&&j| j > k).count();
        }
        Some((Blade(mask), Scalar::sign(inversions)))
    }

    pub fn bits(self) -> u8 {
        self.0
    }

    pub fn grade(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, k: usize) -> bool {
        self.0 & (1 << k) != 0
    }

    pub fn indices(self) -> impl Iterator<Item = usize> {
        (0..NVARS).filter(move |&k| self.0 & (1 << k) != 0)
    }

    /// Number of barred directions.
    pub fn barred_count(self) -> usize {
        (self.0 >> 4).count_ones() as usize
    }

    pub fn without(self, k: usize) -> Blade {
        Blade(self.0 & !(1 << k))
    }

    /// Swaps `∂k ↔ ∂bk`; the result stays canonical up to the returned sign.
    pub fn conj(self) -> (Blade, Scalar) {
        let idx: Vec<usize> = self.indices().map(|k| (k + 4) % 8).collect();
        Blade::from_indices(&idx).expect("conjugation is a bijection")
    }

    /// `self ∧ other` as a blade and sign, `None` when they overlap.
    pub fn wedge(self, other: Blade) -> Option<(Blade, Scalar)> {
        if self.0 & other.0 != 0 {
            return None;
        }
        let mut inversions = 0;
        for a in self.indices() {
            inversions += other.indices().filter(|&b| b < a).count();
        }
        Some((Blade(self.0 | other.0), Scalar::sign(inversions)))
    }

    /// Sign for moving `ξk` to the right end (right derivative).
    fn right_sign(self, k: usize) -> Scalar {
        Scalar::sign(self.indices().filter(|&j| j > k).count())
    }

    /// Sign for moving `ξk` to the left end (left derivative).
    fn left_sign(self, k: usize) -> Scalar {
        Scalar::sign(self.indices().filter(|&j| j < k).count())
    }

    pub fn render(self, names: &DirNames) -> String {
        self.indices()
            .map(|k| names[k])
            .collect::<Vec<_>>()
            .join("/\\")
    }

    /// All blades of the given grade among the first `ndirs` directions,
    /// in canonical order.
    pub fn all_of_grade(ndirs: usize, grade: usize) -> Vec<Blade> {
        let mut out: Vec<Blade> = (0u16..(1 << ndirs))
            .map(|m| Blade(m as u8))
            .filter(|b| b.grade() == grade)
            .collect();
        out.sort();
        out
    }
}

impl Ord for Blade {
    fn cmp(&self, other: &Self) -> Ordering {
        self.indices().cmp(other.indices())
    }
}

impl PartialOrd for Blade {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Blade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(&D_NAMES))
    }
}

/// A homogeneous-grade polynomial multivector field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MVec {
    grade: usize,
    terms: BTreeMap<Blade, Poly>,
}

impl MVec {
    pub fn zero(grade: usize) -> Self {
        MVec {
            grade,
            terms: BTreeMap::new(),
        }
    }

    /// A grade-0 field (a function).
    pub fn function(p: Poly) -> Self {
        let mut m = MVec::zero(0);
        m.add_term(Blade::empty(), &p);
        m
    }

    /// The coordinate field `∂k` (`k ≥ 4` gives `∂b(k−4)`).
    pub fn partial(k: usize) -> Self {
        MVec::term(Poly::one(), &[k])
    }

    /// `coeff · ∂_{i1} ∧ … ∧ ∂_{iq}` for an arbitrary index order.
    pub fn term(coeff: Poly, indices: &[usize]) -> Self {
        let mut m = MVec::zero(indices.len());
        if let Some((blade, sign)) = Blade::from_indices(indices) {
            m.add_term(blade, &coeff.scale(&sign));
        }
        m
    }

    /// Builds a vector field `Σ comps[k] ∂k` from eight components.
    pub fn vector(comps: [Poly; NVARS]) -> Self {
        let mut m = MVec::zero(1);
        for (k, p) in comps.into_iter().enumerate() {
            m.add_term(Blade::single(k), &p);
        }
        m
    }

    pub fn grade(&self) -> usize {
        self.grade
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Blade, &Poly)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, blade: Blade) -> Poly {
        self.terms.get(&blade).cloned().unwrap_or_default()
    }

    /// Coefficient of `∂_{i1}∧…∧∂_{iq}` for an arbitrary index order.
    pub fn coeff_of(&self, indices: &[usize]) -> Poly {
        match Blade::from_indices(indices) {
            Some((b, s)) => self.coeff(b).scale(&s),
            None => Poly::zero(),
        }
    }

    pub fn add_term(&mut self, blade: Blade, p: &Poly) {
        assert_eq!(blade.grade(), self.grade, "blade grade mismatch");
        if p.is_zero() {
            return;
        }
        match self.terms.get_mut(&blade) {
            Some(existing) => {
                *existing = &*existing + p;
                if existing.is_zero() {
                    self.terms.remove(&blade);
                }
            }
            None => {
                self.terms.insert(blade, p.clone());
            }
        }
    }

    pub fn add_assign(&mut self, other: &MVec) {
        assert_eq!(self.grade, other.grade, "grade mismatch in sum");
        for (b, p) in &other.terms {
            self.add_term(*b, p);
        }
    }

    pub fn scale(&self, c: &Scalar) -> MVec {
        self.map_coeffs(|p| p.scale(c))
    }

    pub fn mul_poly(&self, f: &Poly) -> MVec {
        self.map_coeffs(|p| p * f)
    }

    pub fn map_coeffs<F: FnMut(&Poly) -> Poly>(&self, mut f: F) -> MVec {
        let mut out = MVec::zero(self.grade);
        for (b, p) in &self.terms {
            out.add_term(*b, &f(p));
        }
        out
    }

    /// No barred direction and no `zb` variable anywhere.
    pub fn is_holomorphic(&self) -> bool {
        self.terms
            .iter()
            .all(|(b, p)| b.barred_count() == 0 && p.is_holomorphic())
    }

    /// Every coefficient is homogeneous of total degree `d`.
    pub fn is_homogeneous(&self, d: u32) -> bool {
        self.terms.values().all(|p| p.is_homogeneous(d))
    }

    pub fn is_constant(&self) -> bool {
        self.terms.values().all(Poly::is_constant)
    }

    pub fn wedge(&self, other: &MVec) -> MVec {
        let mut out = MVec::zero(self.grade + other.grade);
        for (ba, pa) in &self.terms {
            for (bb, pb) in &other.terms {
                if let Some((blade, sign)) = ba.wedge(*bb) {
                    out.add_term(blade, &(pa * pb).scale(&sign));
                }
            }
        }
        out
    }

    /// Applies a vector field to a function: `Σ X^k ∂f/∂x_k`.
    pub fn derive(&self, f: &Poly) -> Result<Poly> {
        if self.grade != 1 {
            return Err(Error::GradeMismatch {
                expected: 1,
                got: self.grade,
            });
        }
        let mut out = Poly::zero();
        for (b, p) in &self.terms {
            let k = b.indices().next().expect("grade-1 blade");
            let d = f.partial(Var::from_index(k));
            if !d.is_zero() {
                out = &out + &(p * &d);
            }
        }
        Ok(out)
    }

    /// Component `k` of a vector field.
    pub fn component(&self, k: usize) -> Poly {
        self.coeff(Blade::single(k))
    }

    /// Lie bracket `[x, y]^k = x(y^k) − y(x^k)` of vector fields.
    pub fn lie_bracket(x: &MVec, y: &MVec) -> Result<MVec> {
        for m in [x, y] {
            if m.grade != 1 {
                return Err(Error::GradeMismatch {
                    expected: 1,
                    got: m.grade,
                });
            }
        }
        let mut out = MVec::zero(1);
        for k in 0..NVARS {
            let c = &x.derive(&y.component(k))? - &y.derive(&x.component(k))?;
            out.add_term(Blade::single(k), &c);
        }
        Ok(out)
    }

    /// The Schouten bracket; `grade(result) = grade(a) + grade(b) − 1`.
    pub fn schouten(a: &MVec, b: &MVec) -> Result<MVec> {
        if a.grade == 0 || b.grade == 0 {
            return Err(Error::GradeZero);
        }
        let mut out = MVec::zero(a.grade + b.grade - 1);
        let partials = |m: &MVec| -> Vec<BTreeMap<Blade, Poly>> {
            (0..NVARS)
                .map(|k| {
                    m.terms
                        .iter()
                        .map(|(bl, p)| (*bl, p.partial(Var::from_index(k))))
                        .filter(|(_, p)| !p.is_zero())
                        .collect()
                })
                .collect()
        };
        let da = partials(a);
        let db = partials(b);

        // (P ∂⃖/∂ξk) · ∂Q/∂xk
        for (ua, pa) in &a.terms {
            for k in ua.indices() {
                let sign = ua.right_sign(k);
                let rest = ua.without(k);
                for (vb, dq) in &db[k] {
                    if let Some((blade, s)) = rest.wedge(*vb) {
                        out.add_term(blade, &(pa * dq).scale(&(&sign * &s)));
                    }
                }
            }
        }
        // − (∂P/∂xk) · (∂⃗Q/∂ξk)
        for (vb, pb) in &b.terms {
            for k in vb.indices() {
                let sign = -vb.left_sign(k);
                let rest = vb.without(k);
                for (ua, dp) in &da[k] {
                    if let Some((blade, s)) = ua.wedge(rest) {
                        out.add_term(blade, &(dp * pb).scale(&(&sign * &s)));
                    }
                }
            }
        }
        Ok(out)
    }

    /// Lie derivative of `a` along the vector field `x`, `[x, a]`.
    pub fn lie_derivative(x: &MVec, a: &MVec) -> Result<MVec> {
        if x.grade != 1 {
            return Err(Error::GradeMismatch {
                expected: 1,
                got: x.grade,
            });
        }
        if a.grade == 0 {
            let f = a.coeff(Blade::empty());
            return Ok(MVec::function(x.derive(&f)?));
        }
        MVec::schouten(x, a)
    }

    /// Swaps `∂k ↔ ∂bk` and conjugates coefficients.
    pub fn conjugate(&self) -> MVec {
        let mut out = MVec::zero(self.grade);
        for (b, p) in &self.terms {
            let (cb, sign) = b.conj();
            out.add_term(cb, &p.conjugate().scale(&sign));
        }
        out
    }

    /// Pointwise value: every coefficient evaluated at `point`.
    pub fn evaluate_at(&self, point: &[Scalar; 4]) -> MVec {
        self.map_coeffs(|p| Poly::constant(p.eval(point)))
    }

    /// Splits by number of barred directions; keys are `(p, q)` with
    /// `p + q = grade`, only nonzero parts are returned.
    pub fn graded_parts(&self) -> BTreeMap<(usize, usize), MVec> {
        let mut parts: BTreeMap<(usize, usize), MVec> = BTreeMap::new();
        for (b, p) in &self.terms {
            let q = b.barred_count();
            parts
                .entry((self.grade - q, q))
                .or_insert_with(|| MVec::zero(self.grade))
                .add_term(*b, p);
        }
        parts
    }

    /// The `(p, q)` part (zero when absent).
    pub fn part(&self, p: usize, q: usize) -> MVec {
        self.graded_parts()
            .remove(&(p, q))
            .unwrap_or_else(|| MVec::zero(self.grade))
    }

    /// Substitutes polynomials for the eight variable slots in every
    /// coefficient.
    pub fn substitute(&self, images: &[Poly; NVARS]) -> MVec {
        self.map_coeffs(|p| p.substitute(images))
    }

    /// Replaces each coordinate direction by a vector field and wedges;
    /// the push-forward along a map whose differential is `images`.
    pub fn push_directions(&self, images: &[MVec; NVARS]) -> MVec {
        let mut out = MVec::zero(self.grade);
        for (b, p) in &self.terms {
            let mut acc = MVec::function(p.clone());
            for k in b.indices() {
                acc = acc.wedge(&images[k]);
                if acc.is_zero() {
                    break;
                }
            }
            out.add_assign(&acc);
        }
        out
    }

    /// Coordinates of a constant multivector over all blades of its grade
    /// among the first `ndirs` directions.
    pub fn constant_coordinates(&self, ndirs: usize) -> Option<Vec<Scalar>> {
        if !self.is_constant() {
            return None;
        }
        let blades = Blade::all_of_grade(ndirs, self.grade);
        if self.terms.keys().any(|b| !blades.contains(b)) {
            return None;
        }
        Some(
            blades
                .iter()
                .map(|b| self.coeff(*b).constant_term())
                .collect(),
        )
    }

    pub fn render_with(&self, vars: &VarNames, dirs: &DirNames) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (b, p)) in self.terms.iter().enumerate() {
            let blade = b.render(dirs);
            let body = if self.grade == 0 {
                p.render_with(vars)
            } else if p.is_single_term() {
                let c = p.render_with(vars);
                match c.as_str() {
                    "1" => blade,
                    "-1" => format!("-{blade}"),
                    _ => format!("{c}*{blade}"),
                }
            } else {
                format!("({})*{blade}", p.render_with(vars))
            };
            match (idx, body.strip_prefix('-')) {
                (0, _) => out.push_str(&body),
                (_, Some(rest)) => {
                    out.push_str(" - ");
                    out.push_str(rest);
                }
                (_, None) => {
                    out.push_str(" + ");
                    out.push_str(&body);
                }
            }
        }
        out
    }
}

impl fmt::Display for MVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_with(&Z_NAMES, &D_NAMES))
    }
}

impl fmt::Debug for MVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[grade {}] {}", self.grade, self)
    }
}

impl<'a> Add<&'a MVec> for &'a MVec {
    type Output = MVec;
    fn add(self, rhs: &MVec) -> MVec {
        let mut out = self.clone();
        out.add_assign(rhs);
        out
    }
}

impl<'a> Sub<&'a MVec> for &'a MVec {
    type Output = MVec;
    fn sub(self, rhs: &MVec) -> MVec {
        let mut out = self.clone();
        out.add_assign(&-rhs);
        out
    }
}

impl Add for MVec {
    type Output = MVec;
    fn add(self, rhs: MVec) -> MVec {
        &self + &rhs
    }
}

impl Sub for MVec {
    type Output = MVec;
    fn sub(self, rhs: MVec) -> MVec {
        &self - &rhs
    }
}

impl Neg for &MVec {
    type Output = MVec;
    fn neg(self) -> MVec {
        self.scale(&Scalar::int(-1))
    }
}

impl Neg for MVec {
    type Output = MVec;
    fn neg(self) -> MVec {
        -&self
    }
}

/// The Euler field `l = Σ z_k ∂k`.
pub fn euler_field() -> MVec {
    MVec::vector(std::array::from_fn(|k| {
        if k < 4 {
            Poly::z(k)
        } else {
            Poly::zero()
        }
    }))
}

/// `Σ c_k · m_k` over multivectors of one grade.
pub fn linear_combination(grade: usize, parts: &[(Scalar, &MVec)]) -> MVec {
    let mut out = MVec::zero(grade);
    for (c, m) in parts {
        if !c.is_zero() {
            out.add_assign(&m.scale(c));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Monomial;
    use proptest::prelude::*;

    fn z(k: usize) -> Poly {
        Poly::z(k)
    }

    fn w1() -> MVec {
        MVec::term(&z(0) * &z(2), &[1, 3])
    }

    #[test]
    fn wedge_basics() {
        assert!(MVec::partial(0).wedge(&MVec::partial(0)).is_zero());
        let a = MVec::term(z(0), &[1]);
        let b = MVec::term(z(2), &[3]);
        assert_eq!(a.wedge(&b), w1());
        assert_eq!(
            MVec::partial(1).wedge(&MVec::partial(0)),
            -&MVec::term(Poly::one(), &[0, 1])
        );
    }

    #[test]
    fn lie_bracket_examples() {
        let x = MVec::term(z(0), &[1]);
        let y = MVec::term(z(1), &[2]);
        assert_eq!(MVec::lie_bracket(&x, &y).unwrap(), MVec::term(z(0), &[2]));
        assert!(MVec::lie_bracket(&euler_field(), &x).unwrap().is_zero());
        let u1 = MVec::term(z(1), &[1]);
        let u2 = MVec::term(z(2), &[2]);
        assert!(MVec::lie_bracket(&u1, &u2).unwrap().is_zero());
        assert!(matches!(
            MVec::lie_bracket(&w1(), &x),
            Err(Error::GradeMismatch { .. })
        ));
    }

    #[test]
    fn schouten_of_w1_vanishes() {
        assert!(MVec::schouten(&w1(), &w1()).unwrap().is_zero());
    }

    #[test]
    fn schouten_of_two_term_bivector() {
        let theta = &MVec::term(&z(0) * &z(2), &[0, 1]) + &MVec::term(&z(0) * &z(1), &[2, 3]);
        let expected = MVec::term(
            Poly::term(Monomial::holo([1, 1, 1, 0]), Scalar::int(-2)),
            &[1, 2, 3],
        ) + MVec::term(
            Poly::term(Monomial::holo([2, 1, 0, 0]), Scalar::int(-2)),
            &[0, 1, 3],
        ) + MVec::term(
            Poly::term(Monomial::holo([2, 0, 1, 0]), Scalar::int(2)),
            &[0, 2, 3],
        );
        assert_eq!(MVec::schouten(&theta, &theta).unwrap(), expected);
    }

    #[test]
    fn schouten_rejects_functions() {
        assert_eq!(
            MVec::schouten(&MVec::function(z(0)), &w1()),
            Err(Error::GradeZero)
        );
    }

    #[test]
    fn rotation_pair_commutes() {
        let a = &MVec::term(z(0), &[1]) - &MVec::term(z(1), &[0]);
        let b = &MVec::term(z(2), &[3]) - &MVec::term(z(3), &[2]);
        let w2 = a.wedge(&b);
        assert!(MVec::schouten(&w2, &w2).unwrap().is_zero());
    }

    #[test]
    fn conjugation() {
        let a = MVec::term(z(0).scale(&Scalar::i()), &[1]);
        let expected = MVec::term(Poly::zb(0).scale(&-Scalar::i()), &[5]);
        assert_eq!(a.conjugate(), expected);
        assert_eq!(a.conjugate().conjugate(), a);
        let lbar = MVec::vector(std::array::from_fn(|k| {
            if k >= 4 {
                Poly::zb(k - 4)
            } else {
                Poly::zero()
            }
        }));
        assert_eq!(euler_field().conjugate(), lbar);
        let s = &a + &a.conjugate();
        assert_eq!(s.conjugate(), s);
    }

    #[test]
    fn evaluation() {
        let one = Scalar::int(1);
        let zero = Scalar::zero();
        let p = [one.clone(), zero.clone(), one.clone(), zero.clone()];
        assert_eq!(w1().evaluate_at(&p), MVec::term(Poly::one(), &[1, 3]));
        assert_eq!(
            euler_field().evaluate_at(&p),
            &MVec::partial(0) + &MVec::partial(2)
        );
        assert!(MVec::zero(2).evaluate_at(&p).is_zero());
    }

    #[test]
    fn graded_parts_split() {
        let a = MVec::term(z(0), &[1, 2]);
        let b = MVec::term(&z(0) * &Poly::zb(1), &[1, 6]);
        let parts = (&a + &b).graded_parts();
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[&(2, 0)], a);
        assert_eq!(parts[&(1, 1)], b);
        assert_eq!(w1().graded_parts().len(), 1);
    }

    #[test]
    fn rendering() {
        assert_eq!(w1().to_string(), "z0*z2*d1/\\d3");
        let m = &MVec::term(&z(0).pow(2) - &z(1).pow(2), &[0, 1]) - &MVec::term(z(2), &[2, 3]);
        assert_eq!(m.to_string(), "(z0^2 - z1^2)*d0/\\d1 - z2*d2/\\d3");
    }

    // Random fields with small Gaussian-integer coefficients of degree ≤ 2
    // over all eight directions.
    fn arb_mvec(grade: usize) -> impl Strategy<Value = MVec> {
        let term = (
            prop::collection::btree_set(0usize..8, grade..=grade),
            prop::collection::vec((prop::array::uniform8(0u32..2), -2i64..3, -1i64..2), 1..3),
        );
        prop::collection::vec(term, 0..3).prop_map(move |ts| {
            let mut m = MVec::zero(grade);
            for (idx, mons) in ts {
                let idx: Vec<usize> = idx.into_iter().collect();
                let mut p = Poly::zero();
                for (e, a, b) in mons {
                    let mut e = e;
                    // keep degree small
                    let total: u32 = e.iter().sum();
                    if total > 2 {
                        e = [0; 8];
                    }
                    p.add_term(Monomial::new(e), &Scalar::gaussian(a, b));
                }
                m.add_assign(&MVec::term(p, &idx));
            }
            m
        })
    }

    fn grade_sign(n: usize) -> Scalar {
        Scalar::sign(n)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn graded_antisymmetry(
            (ga, gb, a, b) in (1usize..4, 1usize..4)
                .prop_flat_map(|(ga, gb)| (Just(ga), Just(gb), arb_mvec(ga), arb_mvec(gb)))
        ) {
            let ab = MVec::schouten(&a, &b).unwrap();
            let ba = MVec::schouten(&b, &a).unwrap();
            prop_assert_eq!(ab, ba.scale(&-grade_sign((ga - 1) * (gb - 1))));
        }

        #[test]
        fn schouten_extends_lie_bracket(x in arb_mvec(1), y in arb_mvec(1)) {
            prop_assert_eq!(MVec::schouten(&x, &y).unwrap(), MVec::lie_bracket(&x, &y).unwrap());
        }

        #[test]
        fn leibniz_in_second_slot(a in arb_mvec(2), b in arb_mvec(1), c in arb_mvec(2)) {
            let lhs = MVec::schouten(&a, &b.wedge(&c)).unwrap();
            let rhs = &MVec::schouten(&a, &b).unwrap().wedge(&c)
                + &b.wedge(&MVec::schouten(&a, &c).unwrap()).scale(&grade_sign(1));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn graded_jacobi(a in arb_mvec(2), b in arb_mvec(1), c in arb_mvec(2)) {
            // [a,[b,c]] = [[a,b],c] + (−1)^{(|a|−1)(|b|−1)} [b,[a,c]]
            let lhs = MVec::schouten(&a, &MVec::schouten(&b, &c).unwrap()).unwrap();
            let r1 = MVec::schouten(&MVec::schouten(&a, &b).unwrap(), &c).unwrap();
            let r2 = MVec::schouten(&b, &MVec::schouten(&a, &c).unwrap()).unwrap();
            prop_assert_eq!(lhs, &r1 + &r2.scale(&grade_sign(0)));
        }

        #[test]
        fn conjugation_commutes_with_bracket(a in arb_mvec(2), b in arb_mvec(2)) {
            let lhs = MVec::schouten(&a, &b).unwrap().conjugate();
            let rhs = MVec::schouten(&a.conjugate(), &b.conjugate()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
