//! Polynomials over the Gaussian rationals in eight formal variables
//! `z0..z3, zb0..zb3`, where `zb_k` is the formal conjugate of `z_k`.
//!
//! The `z` and `zb` variables are algebraically independent; conjugation
//! only couples them in [`Poly::conjugate`] and [`Poly::eval`].

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::scalar::Scalar;

/// Number of formal variables.
pub const NVARS: usize = 8;

/// One of `z0..z3` (indices 0..4) or `zb0..zb3` (indices 4..8).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var(u8);

impl Var {
    pub fn z(k: usize) -> Var {
        assert!(k < 4, "z index out of range");
        Var(k as u8)
    }

    pub fn zb(k: usize) -> Var {
        assert!(k < 4, "zb index out of range");
        Var(4 + k as u8)
    }

    pub fn from_index(i: usize) -> Var {
        assert!(i < NVARS);
        Var(i as u8)
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn is_barred(self) -> bool {
        self.0 >= 4
    }

    /// The coordinate number `k` of `z_k` or `zb_k`.
    pub fn coord(self) -> usize {
        (self.0 % 4) as usize
    }

    pub fn conj(self) -> Var {
        Var((self.0 + 4) % 8)
    }

    pub fn all() -> impl Iterator<Item = Var> {
        (0..NVARS as u8).map(Var)
    }
}

/// Display names for the eight variable slots.
pub type VarNames = [&'static str; NVARS];

pub const Z_NAMES: VarNames = ["z0", "z1", "z2", "z3", "zb0", "zb1", "zb2", "zb3"];

/// Exponent vector `(z0..z3, zb0..zb3)`.
///
/// Ordered graded-lexicographically: total degree first, then the exponent
/// tuple lexicographically.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial([u32; NVARS]);

impl Monomial {
    pub fn one() -> Self {
        Monomial([0; NVARS])
    }

    pub fn new(exps: [u32; NVARS]) -> Self {
        Monomial(exps)
    }

    pub fn var(v: Var) -> Self {
        let mut e = [0; NVARS];
        e[v.index()] = 1;
        Monomial(e)
    }

    /// Holomorphic monomial `z0^e0 z1^e1 z2^e2 z3^e3`.
    pub fn holo(zexp: [u32; 4]) -> Self {
        let mut e = [0; NVARS];
        e[..4].copy_from_slice(&zexp);
        Monomial(e)
    }

    pub fn exps(&self) -> &[u32; NVARS] {
        &self.0
    }

    pub fn exp(&self, v: Var) -> u32 {
        self.0[v.index()]
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn holo_degree(&self) -> u32 {
        self.0[..4].iter().sum()
    }

    pub fn antiholo_degree(&self) -> u32 {
        self.0[4..].iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(other.0.iter()) {
            *a += b;
        }
        Monomial(e)
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(other.0.iter()) {
            *a = a.checked_sub(*b)?;
        }
        Some(Monomial(e))
    }

    pub fn conj(&self) -> Monomial {
        let mut e = [0; NVARS];
        e[..4].copy_from_slice(&self.0[4..]);
        e[4..].copy_from_slice(&self.0[..4]);
        Monomial(e)
    }

    /// Variables with positive exponent.
    pub fn support(&self) -> impl Iterator<Item = Var> + '_ {
        Var::all().filter(move |v| self.0[v.index()] > 0)
    }

    fn render(&self, names: &VarNames) -> String {
        let mut parts = Vec::new();
        for v in Var::all() {
            match self.0[v.index()] {
                0 => {}
                1 => parts.push(names[v.index()].to_string()),
                e => parts.push(format!("{}^{}", names[v.index()], e)),
            }
        }
        parts.join("*")
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.render(&Z_NAMES);
        if s.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{s}")
        }
    }
}

/// Sparse polynomial; zero coefficients are never stored, so structural
/// equality is mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, Scalar>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::constant(Scalar::one())
    }

    pub fn constant(c: Scalar) -> Self {
        Poly::term(Monomial::one(), c)
    }

    pub fn term(m: Monomial, c: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    pub fn var(v: Var) -> Self {
        Poly::term(Monomial::var(v), Scalar::one())
    }

    pub fn z(k: usize) -> Self {
        Poly::var(Var::z(k))
    }

    pub fn zb(k: usize) -> Self {
        Poly::var(Var::zb(k))
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Scalar)>>(it: I) -> Self {
        let mut p = Poly::zero();
        for (m, c) in it {
            p.add_term(m, &c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in increasing monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// The constant term.
    pub fn constant_term(&self) -> Scalar {
        self.coeff(&Monomial::one())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 0)
    }

    pub fn add_term(&mut self, m: Monomial, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Poly, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        for (m, a) in &other.terms {
            self.add_term(*m, &(a * c));
        }
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(k, a)| (k.mul(m), a.clone())).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Maximum total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// True when every term has total degree `d` (vacuously for zero).
    pub fn is_homogeneous(&self, d: u32) -> bool {
        self.terms.keys().all(|m| m.degree() == d)
    }

    /// No `zb` variable occurs.
    pub fn is_holomorphic(&self) -> bool {
        self.terms.keys().all(|m| m.antiholo_degree() == 0)
    }

    pub fn involves(&self, v: Var) -> bool {
        self.terms.keys().any(|m| m.exp(v) > 0)
    }

    /// Formal partial derivative; `z` and `zb` are independent.
    pub fn partial(&self, v: Var) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let e = m.exp(v);
            if e == 0 {
                continue;
            }
            let mut exps = m.0;
            exps[v.index()] -= 1;
            out.add_term(Monomial(exps), &(c * &Scalar::int(e as i64)));
        }
        out
    }

    /// Swaps `z_k ↔ zb_k` and conjugates every coefficient.
    pub fn conjugate(&self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.conj(), c.conj())).collect(),
        }
    }

    /// Evaluates at a point of ℂ⁴; `zb_k` takes the value `conj(point[k])`.
    pub fn eval(&self, point: &[Scalar; 4]) -> Scalar {
        let values: [Scalar; NVARS] = std::array::from_fn(|i| {
            if i < 4 {
                point[i].clone()
            } else {
                point[i - 4].conj()
            }
        });
        self.eval_vars(&values)
    }

    /// Evaluates with an independent value for each of the eight slots.
    pub fn eval_vars(&self, values: &[Scalar; NVARS]) -> Scalar {
        let mut acc = Scalar::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for v in Var::all() {
                let e = m.exp(v);
                if e > 0 {
                    t *= &values[v.index()].pow(e);
                }
            }
            acc += &t;
        }
        acc
    }

    /// Substitutes a polynomial for every variable slot.
    pub fn substitute(&self, images: &[Poly; NVARS]) -> Poly {
        let mut powers: Vec<Vec<Poly>> = vec![vec![Poly::one()]; NVARS];
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut t = Poly::constant(c.clone());
            for v in Var::all() {
                let e = m.exp(v) as usize;
                if e == 0 {
                    continue;
                }
                let cache = &mut powers[v.index()];
                while cache.len() <= e {
                    let next = cache.last().unwrap() * &images[v.index()];
                    cache.push(next);
                }
                t = &t * &cache[e];
            }
            out = &out + &t;
        }
        out
    }

    /// Renders with custom variable names, highest monomial first.
    pub fn render_with(&self, names: &VarNames) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let mono = m.render(names);
            let (negative, mag) = split_sign(c);
            if idx == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let coeff = mag.to_string();
            if mono.is_empty() {
                out.push_str(&coeff);
            } else if mag == Scalar::one() {
                out.push_str(&mono);
            } else {
                out.push_str(&coeff);
                out.push('*');
                out.push_str(&mono);
            }
        }
        out
    }

    /// True when the polynomial prints as a single factor (no top-level sum).
    pub fn is_single_term(&self) -> bool {
        self.terms.len() == 1
    }
}

/// Pulls a leading minus sign out of a coefficient when it reads naturally:
/// purely real or purely imaginary negatives.
fn split_sign(c: &Scalar) -> (bool, Scalar) {
    use num_traits::Signed;
    let neg = if c.im().is_zero() {
        c.re().is_negative()
    } else if c.re().is_zero() {
        c.im().is_negative()
    } else {
        false
    };
    if neg {
        (true, -c)
    } else {
        (false, c.clone())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_with(&Z_NAMES))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c);
        }
        out
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, &-c);
        }
        out
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), &(ca * cb));
            }
        }
        out
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&-Scalar::one())
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&-Scalar::one())
    }
}

impl From<Scalar> for Poly {
    fn from(c: Scalar) -> Self {
        Poly::constant(c)
    }
}
