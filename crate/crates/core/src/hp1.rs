//! Real ℍ*-invariant bivectors and the Poisson test on ℍP¹ = S⁴.
//!
//! ℂ⁴ = ℍ² with `h0 = z0 + j z1`, `h1 = z2 + j z3`. A Φ-fixed tensor lifts to
//! a real bivector `A + B + conj(A)` whose mixed part `B` is forced by
//! invariance under the `j`-flow `l′`.
//!
//! Chart `V_m` is described through the section `(1, 0, t0, t1)` for `m = 0`
//! and `(t0, t1, 1, 0)` for `m = 1`. The chart coordinates `t0, t1` live in
//! variable slots `z0, z1` and their conjugates in `zb0, zb1`; the chart
//! directions are `∂t0, ∂t1, ∂tb0, ∂tb1` in slots `0, 1, 4, 5`.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::cp3::{self, Method};
use crate::error::{Error, Result};
use crate::linalg::subspace_membership;
use crate::multivector::{euler_field, Blade, MVec};
use crate::poly::{Monomial, Poly, Var, NVARS};
use crate::scalar::Scalar;
use crate::tensor::{Tensor2, PHI};

/// The `j`-flow field and the `j`-action on points.
#[derive(Clone, Debug)]
pub struct QuatConstants {
    pub lprime: MVec,
}

impl QuatConstants {
    pub fn new() -> Self {
        QuatConstants { lprime: lprime() }
    }

    /// Right multiplication by `j`: `(z0,z1,z2,z3) ↦ (−z̄1, z̄0, −z̄3, z̄2)`.
    pub fn jmap(point: &[Scalar; 4]) -> [Scalar; 4] {
        [
            -point[1].conj(),
            point[0].conj(),
            -point[3].conj(),
            point[2].conj(),
        ]
    }
}

impl Default for QuatConstants {
    fn default() -> Self {
        Self::new()
    }
}

/// `l′ = z̄0∂1 − z̄1∂0 + z̄2∂3 − z̄3∂2`.
pub fn lprime() -> MVec {
    let mut comps: [Poly; NVARS] = Default::default();
    for k in 0..4 {
        let sign = if k % 2 == 0 { Scalar::one() } else { -Scalar::one() };
        comps[PHI[k]] = Poly::zb(k).scale(&sign);
    }
    MVec::vector(comps)
}

/// A real (conjugation-fixed) bivector on ℂ⁴ over all eight directions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealBivector {
    field: MVec,
}

impl RealBivector {
    pub fn new(field: MVec) -> Result<Self> {
        if field.grade() != 2 {
            return Err(Error::GradeMismatch {
                expected: 2,
                got: field.grade(),
            });
        }
        if field.conjugate() != field {
            return Err(Error::NotInvariant {
                grade: 2,
                reason: "bivector is not real".into(),
            });
        }
        Ok(RealBivector { field })
    }

    pub fn field(&self) -> &MVec {
        &self.field
    }

    pub fn into_field(self) -> MVec {
        self.field
    }

    /// Coefficient `b_{ijkl}` of `z_i z̄_j ∂_k∧∂b_l` in the unrestricted sum.
    pub fn mixed_component(&self, i: usize, j: usize, k: usize, l: usize) -> Scalar {
        let p = self.field.coeff_of(&[k, 4 + l]);
        let mut e = [0u32; NVARS];
        e[i] += 1;
        e[4 + j] += 1;
        p.coeff(&Monomial::new(e))
    }
}

/// `A + B + conj(A)` with `A` the holomorphic bivector of `t` and
/// `B = Σ b_{ijkl} z_i z̄_j ∂_k∧∂b_l`, `b_{ijkl} = 2(−1)^{j+l} a_{iφ(j)kφ(l)}`
/// in terms of normalized components.
pub fn realify(t: &Tensor2) -> Result<RealBivector> {
    if !t.is_phi_fixed() {
        return Err(Error::NotPhiFixed);
    }
    let a = t.to_mvec();
    let mut field = &a + &a.conjugate();
    let two = Scalar::int(2);
    for i in 0..4 {
        for j in 0..4 {
            for k in 0..4 {
                for l in 0..4 {
                    let c = t.full(&[i, PHI[j]], &[k, PHI[l]]);
                    if c.is_zero() {
                        continue;
                    }
                    let c = &(&c * &two) * &Scalar::sign(j + l);
                    let coeff = &Poly::z(i) * &Poly::zb(j);
                    field.add_assign(&MVec::term(coeff.scale(&c), &[k, 4 + l]));
                }
            }
        }
    }
    RealBivector::new(field)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Hp1Verdict {
    pub poisson: bool,
    #[serde(rename = "phi_real")]
    pub phi_fixed: bool,
    pub cp3_poisson: bool,
    pub nontrivial: bool,
}

/// Poisson on ℍP¹ iff Φ-fixed and Poisson on ℂP³.
pub fn is_poisson_hp1(t: &Tensor2) -> Hp1Verdict {
    let phi_fixed = t.is_phi_fixed();
    let cp3 = cp3::is_poisson_cp3(t, Method::Quotient);
    Hp1Verdict {
        poisson: phi_fixed && cp3.poisson,
        phi_fixed,
        cp3_poisson: cp3.poisson,
        nontrivial: cp3.nontrivial,
    }
}

/// A multivector on `V_m` in the chart coordinates `t0, t1, t̄0, t̄1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hp1ChartMultivector {
    pub chart: usize,
    pub field: MVec,
}

pub type Hp1ChartBivector = Hp1ChartMultivector;

pub const T_NAMES: crate::poly::VarNames = ["t0", "t1", "_", "_", "tb0", "tb1", "_", "_"];
pub const DT_NAMES: crate::multivector::DirNames = ["dt0", "dt1", "_", "_", "dtb0", "dtb1", "_", "_"];

impl Hp1ChartMultivector {
    pub fn is_zero(&self) -> bool {
        self.field.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.field.conjugate() == self.field
    }

    pub fn render(&self) -> String {
        self.field.render_with(&T_NAMES, &DT_NAMES)
    }

    pub fn schouten(&self, other: &Hp1ChartMultivector) -> Result<Hp1ChartMultivector> {
        if self.chart != other.chart {
            return Err(Error::BadChart(other.chart));
        }
        Ok(Hp1ChartMultivector {
            chart: self.chart,
            field: MVec::schouten(&self.field, &other.field)?,
        })
    }
}

/// Coordinate relabeling for chart `m`: chart 1 is chart 0 with the two
/// quaternionic coordinates exchanged.
fn chart_perm(m: usize) -> [usize; 4] {
    if m == 0 {
        [0, 1, 2, 3]
    } else {
        [2, 3, 0, 1]
    }
}

/// Numerators of `t0, t1` over `N = |z_a|² + |z_b|²` for chart `m`.
fn chart_numerators(m: usize) -> ([Poly; 2], Poly) {
    let [a, b, c, d] = chart_perm(m);
    let (z, zb) = (Poly::z, Poly::zb);
    let t0 = &(&zb(a) * &z(c)) + &(&z(b) * &zb(d));
    let t1 = &(&zb(a) * &z(d)) - &(&z(b) * &zb(c));
    let n = &(&z(a) * &zb(a)) + &(&z(b) * &zb(b));
    ([t0, t1], n)
}

/// Substitution of the section into ℂ⁴ coordinates.
fn section(m: usize) -> [Poly; NVARS] {
    let [a, b, c, d] = chart_perm(m);
    let mut out: [Poly; NVARS] = Default::default();
    out[a] = Poly::one();
    out[b] = Poly::zero();
    out[c] = Poly::z(0);
    out[d] = Poly::z(1);
    out[4 + a] = Poly::one();
    out[4 + b] = Poly::zero();
    out[4 + c] = Poly::zb(0);
    out[4 + d] = Poly::zb(1);
    out
}

/// Images of the eight coordinate directions at the section of chart `m`,
/// from the quotient rule `∂(f/N) = ∂f − f·∂N` where `N = 1`.
pub fn hp1_differentials(m: usize) -> Result<[MVec; NVARS]> {
    if m > 1 {
        return Err(Error::BadChart(m));
    }
    let ([f0, f1], n) = chart_numerators(m);
    let sec = section(m);
    // chart functions t0, t1, t̄0, t̄1 and their target direction slots
    let funcs = [(f0.clone(), 0), (f1.clone(), 1), (f0.conjugate(), 4), (f1.conjugate(), 5)];
    Ok(std::array::from_fn(|k| {
        let v = Var::from_index(k);
        let dn = n.partial(v).substitute(&sec);
        let mut comps: [Poly; NVARS] = Default::default();
        for (f, slot) in &funcs {
            let df = f.partial(v).substitute(&sec);
            comps[*slot] = &df - &(&f.substitute(&sec) * &dn);
        }
        MVec::vector(comps)
    }))
}

/// Push-forward of a multivector on ℂ⁴ to the chart `V_m` along its section.
pub fn hp1_chart_pushforward(v: &MVec, m: usize) -> Result<Hp1ChartMultivector> {
    let dirs = hp1_differentials(m)?;
    Ok(Hp1ChartMultivector {
        chart: m,
        field: v.substitute(&section(m)).push_directions(&dirs),
    })
}

/// Rewrites a constant multivector over `∂z, ∂z̄` in the real frame
/// `∂x0..∂x3, ∂y0..∂y3` (slots 0..3 and 4..7), using
/// `∂z = ½(∂x − i∂y)` and `∂z̄ = ½(∂x + i∂y)`.
pub fn complex_to_real_bivector(v: &MVec) -> Result<MVec> {
    if !v.is_constant() {
        return Err(Error::InvalidPoly("expected constant coefficients".into()));
    }
    let half = Scalar::ratio(1, 2);
    let ihalf = &Scalar::i() * &half;
    let dirs: [MVec; NVARS] = std::array::from_fn(|k| {
        let x = k % 4;
        let s = if k < 4 { -ihalf.clone() } else { ihalf.clone() };
        &MVec::partial(x).scale(&half) + &MVec::partial(4 + x).scale(&s)
    });
    Ok(v.push_directions(&dirs))
}

/// Whether the multivector at `point` lies in `V ∧ Λℝ⁸`, where `V` is
/// spanned by the real and imaginary parts of `l` and `l′` there; for a real
/// field this says its image on ℍP¹ vanishes at `[point]`.
pub fn pointwise_vanishes_hp1(v: &MVec, point: &[Scalar; 4]) -> Result<bool> {
    if point.iter().all(Zero::is_zero) {
        return Err(Error::ZeroPoint);
    }
    if v.grade() == 0 {
        return Err(Error::GradeMismatch {
            expected: 2,
            got: 0,
        });
    }
    let value = complex_to_real_bivector(&v.evaluate_at(point))?
        .constant_coordinates(NVARS)
        .expect("constant multivector");
    let mut span = Vec::new();
    for f in [euler_field(), lprime()] {
        let fp = f.evaluate_at(point);
        let fb = fp.conjugate();
        span.push(&fp + &fb);
        span.push((&fp - &fb).scale(&Scalar::i()));
    }
    let mut gens = Vec::new();
    for s in &span {
        let s = complex_to_real_bivector(s)?;
        for b in Blade::all_of_grade(NVARS, v.grade() - 1) {
            let rest = MVec::term(Poly::one(), &b.indices().collect::<Vec<_>>());
            gens.push(
                s.wedge(&rest)
                    .constant_coordinates(NVARS)
                    .expect("constant multivector"),
            );
        }
    }
    Ok(subspace_membership(&value, &gens)?.is_some())
}

/// First point of the ℂP³ sample grid where the bivector does not vanish on
/// ℍP¹.
pub fn nonvanishing_witness_hp1(v: &MVec) -> Option<[Scalar; 4]> {
    cp3::sample_grid()
        .into_iter()
        .find(|p| !pointwise_vanishes_hp1(v, p).expect("grid excludes the origin"))
}

/// Blades among the real chart directions, for coordinates of chart fields.
pub fn chart_blades(grade: usize) -> Vec<Blade> {
    Blade::all_of_grade(NVARS, grade)
        .into_iter()
        .filter(|b| b.indices().all(|k| matches!(k, 0 | 1 | 4 | 5)))
        .collect()
}
