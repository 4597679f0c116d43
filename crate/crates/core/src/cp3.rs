//! Euler quotients, affine charts and the Poisson test on ℂP³.
//!
//! A ℂ*-invariant bivector `w` on ℂ⁴∖0 descends to ℂP³; its image vanishes
//! exactly when `w` is a multiple of the Euler field `l`. Chart `U_r` uses the
//! section `z_r = 1`, with the inhomogeneous coordinates `ζ_k` (`k ≠ r`)
//! stored in the variable slots `z_k` and `∂ζ_k` in direction slot `k`.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{rank_of, subspace_membership};
use crate::multivector::{euler_field, Blade, MVec};
use crate::poly::{Poly, Var, NVARS};
use crate::scalar::Scalar;
use crate::tensor::{Tensor, Tensor1, Tensor2, Tensor3};

/// The Euler field and the holomorphic volume form of ℂ⁴.
#[derive(Clone, Debug)]
pub struct ProjectiveConstants {
    pub l: MVec,
}

impl ProjectiveConstants {
    pub fn new() -> Self {
        ProjectiveConstants { l: euler_field() }
    }

    pub fn euler_tensor(&self) -> Tensor1 {
        Tensor1::from_mvec(&self.l).expect("Euler field is linear")
    }

    /// `dz0∧dz1∧dz2∧dz3` on four direction indices in `0..4`.
    pub fn vol(indices: [usize; 4]) -> Scalar {
        match Blade::from_indices(&indices) {
            Some((_, sign)) => sign,
            None => Scalar::zero(),
        }
    }
}

impl Default for ProjectiveConstants {
    fn default() -> Self {
        Self::new()
    }
}

/// Generators of the Euler part of the grade-`Q` tensor space, for `Q` 2 or
/// 3: `(z_i ∂_j) ∧ l` for `Q = 2` (i-major order) and `e ∧ l` over the
/// canonical bivector basis for `Q = 3`.
pub fn euler_wedge_subspace<const Q: usize>() -> Vec<Tensor<Q>> {
    assert!(Q == 2 || Q == 3, "Euler subspace is defined for grades 2 and 3");
    let l = euler_field();
    let factors: Vec<MVec> = if Q == 2 {
        let mut out = Vec::with_capacity(16);
        for i in 0..4 {
            for j in 0..4 {
                out.push(MVec::term(Poly::z(i), &[j]));
            }
        }
        out
    } else {
        (0..Tensor2::dim()).map(|s| Tensor2::unit(s).to_mvec()).collect()
    };
    factors
        .iter()
        .map(|f| Tensor::<Q>::from_mvec(&f.wedge(&l)).expect("invariant generator"))
        .collect()
}

/// Outcome of reducing a tensor modulo the Euler subspace.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduction {
    pub is_zero: bool,
    /// Coefficients over [`euler_wedge_subspace`] when the tensor is a member.
    pub witness: Option<Vec<Scalar>>,
}

pub fn mod_euler_reduce<const Q: usize>(t: &Tensor<Q>) -> Reduction {
    let gens: Vec<Vec<Scalar>> = euler_wedge_subspace::<Q>()
        .into_iter()
        .map(|g| g.to_vector())
        .collect();
    let witness = subspace_membership(&t.to_vector(), &gens).expect("matching dimensions");
    Reduction {
        is_zero: witness.is_some(),
        witness,
    }
}

/// Rank of the Euler generators for grade `Q`.
pub fn euler_rank<const Q: usize>() -> usize {
    let gens: Vec<Vec<Scalar>> = euler_wedge_subspace::<Q>()
        .into_iter()
        .map(|g| g.to_vector())
        .collect();
    rank_of(&gens).expect("matching dimensions")
}

/// A multivector on the chart `U_r` in the coordinates `ζ_k`, `k ≠ r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChartMultivector {
    pub chart: usize,
    pub field: MVec,
}

pub type ChartBivector = ChartMultivector;

impl ChartMultivector {
    pub fn is_zero(&self) -> bool {
        self.field.is_zero()
    }

    /// Coefficient of `∂ζ_{k1}∧…` for increasing chart indices.
    pub fn coeff(&self, indices: &[usize]) -> Poly {
        self.field.coeff_of(indices)
    }

    /// Renders with `zeta` variables and `dzeta` directions.
    pub fn render(&self) -> String {
        self.field.render_with(&ZETA_NAMES, &DZETA_NAMES)
    }

    pub fn schouten(&self, other: &ChartMultivector) -> Result<ChartMultivector> {
        if self.chart != other.chart {
            return Err(Error::BadChart(other.chart));
        }
        Ok(ChartMultivector {
            chart: self.chart,
            field: MVec::schouten(&self.field, &other.field)?,
        })
    }
}

pub const ZETA_NAMES: crate::poly::VarNames =
    ["zeta0", "zeta1", "zeta2", "zeta3", "zetab0", "zetab1", "zetab2", "zetab3"];
pub const DZETA_NAMES: crate::multivector::DirNames =
    ["dzeta0", "dzeta1", "dzeta2", "dzeta3", "dzetab0", "dzetab1", "dzetab2", "dzetab3"];

fn check_chart(r: usize) -> Result<()> {
    if r < 4 {
        Ok(())
    } else {
        Err(Error::BadChart(r))
    }
}

/// Pushes a holomorphic multivector on ℂ⁴ to `U_r` through the section
/// `z_r = 1`, with `dπ(∂_k) = ∂ζ_k` for `k ≠ r` and
/// `dπ(∂_r) = −Σ_{m≠r} ζ_m ∂ζ_m`.
pub fn chart_pushforward_mvec(m: &MVec, r: usize) -> Result<ChartMultivector> {
    check_chart(r)?;
    if !m.is_holomorphic() {
        return Err(Error::NotInvariant {
            grade: m.grade(),
            reason: "chart push-forward needs a holomorphic field".into(),
        });
    }
    let subs: [Poly; NVARS] = std::array::from_fn(|k| if k == r { Poly::one() } else { Poly::var(Var::from_index(k)) });
    let mut radial = MVec::zero(1);
    for k in (0..4).filter(|&k| k != r) {
        radial.add_assign(&MVec::term(-Poly::z(k), &[k]));
    }
    let dirs: [MVec; NVARS] = std::array::from_fn(|k| {
        if k == r {
            radial.clone()
        } else {
            MVec::partial(k)
        }
    });
    Ok(ChartMultivector {
        chart: r,
        field: m.substitute(&subs).push_directions(&dirs),
    })
}

pub fn chart_pushforward_cp3(t: &Tensor2, r: usize) -> Result<ChartBivector> {
    chart_pushforward_mvec(&t.to_mvec(), r)
}

/// The coefficient `A_{rkl}` of `∂ζ_k∧∂ζ_l` in the unrestricted sum over
/// ordered pairs, built term by term from tensor components:
/// `Σ_{i,j} a_{ijkl}ζ_iζ_j − a_{ijkr}ζ_iζ_jζ_l − a_{ijrl}ζ_iζ_jζ_k`
/// with `ζ_r = 1`.
pub fn chart_coefficient(t: &Tensor2, r: usize, k: usize, l: usize) -> Result<Poly> {
    chart_coefficient_with(t, r, k, l, false)
}

/// Same sum with the trailing factors `ζ_k`, `ζ_l` of the last two terms
/// exchanged.
pub fn chart_coefficient_swapped(t: &Tensor2, r: usize, k: usize, l: usize) -> Result<Poly> {
    chart_coefficient_with(t, r, k, l, true)
}

fn chart_coefficient_with(t: &Tensor2, r: usize, k: usize, l: usize, swapped: bool) -> Result<Poly> {
    check_chart(r)?;
    if k == r || l == r || k > 3 || l > 3 {
        return Err(Error::BadChart(r));
    }
    let zeta = |m: usize| if m == r { Poly::one() } else { Poly::z(m) };
    let (fk, fl) = if swapped { (zeta(k), zeta(l)) } else { (zeta(l), zeta(k)) };
    let mut acc = Poly::zero();
    for i in 0..4 {
        for j in 0..4 {
            let zz = &zeta(i) * &zeta(j);
            acc.add_scaled(&zz, &t.full(&[i, j], &[k, l]));
            acc.add_scaled(&(&zz * &fk), &-t.full(&[i, j], &[k, r]));
            acc.add_scaled(&(&zz * &fl), &-t.full(&[i, j], &[r, l]));
        }
    }
    Ok(acc)
}

/// The chart bivector assembled from [`chart_coefficient`] (or its swapped
/// variant): canonical coefficient `A_{rkl} − A_{rlk}` for `k < l`.
pub fn chart_from_coefficients(t: &Tensor2, r: usize, swapped: bool) -> Result<ChartBivector> {
    check_chart(r)?;
    let idx: Vec<usize> = (0..4).filter(|&k| k != r).collect();
    let mut field = MVec::zero(2);
    for (p, &k) in idx.iter().enumerate() {
        for &l in &idx[p + 1..] {
            let c = &chart_coefficient_with(t, r, k, l, swapped)? - &chart_coefficient_with(t, r, l, k, swapped)?;
            field.add_assign(&MVec::term(c, &[k, l]));
        }
    }
    Ok(ChartMultivector { chart: r, field })
}

/// The cyclic expression
/// `Σ_{(k,l,m) ∈ rot(a,b,c)} ∂A_{kl}/∂ζ_l · A_{lm} − A_{kl} · ∂A_{lm}/∂ζ_l`
/// on `U_r`, with `a < b < c` the chart indices.
pub fn cyclic_expression(t: &Tensor2, r: usize) -> Result<Poly> {
    check_chart(r)?;
    let idx: Vec<usize> = (0..4).filter(|&k| k != r).collect();
    let (a, b, c) = (idx[0], idx[1], idx[2]);
    let mut acc = Poly::zero();
    for (k, l, m) in [(a, b, c), (b, c, a), (c, a, b)] {
        let akl = chart_coefficient(t, r, k, l)?;
        let alm = chart_coefficient(t, r, l, m)?;
        let dl = Var::z(l);
        acc = &acc + &(&akl.partial(dl) * &alm);
        acc = &acc - &(&akl * &alm.partial(dl));
    }
    Ok(acc)
}

/// How the cyclic expression compares with the chart bracket on `U_r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicComparison {
    pub chart: usize,
    /// The bracket equals `2 · cyclic · ∂ζ_a∧∂ζ_b∧∂ζ_c` identically.
    pub identical: bool,
    /// `Some(c)` when the bracket coefficient is `c · cyclic` with both
    /// nonzero.
    pub factor: Option<Scalar>,
    /// Both vanish or both do not.
    pub same_vanishing: bool,
}

pub fn compare_cyclic_condition(t: &Tensor2, r: usize) -> Result<CyclicComparison> {
    let chart = chart_pushforward_cp3(t, r)?;
    let bracket = chart.schouten(&chart)?;
    let idx: Vec<usize> = (0..4).filter(|&k| k != r).collect();
    let coeff = bracket.coeff(&idx);
    let cyc = cyclic_expression(t, r)?;
    let identical = coeff == cyc.scale(&Scalar::int(2));
    let factor = if coeff.is_zero() || cyc.is_zero() {
        None
    } else {
        let (m, c) = cyc.terms().next().expect("nonzero");
        let ratio = &coeff.coeff(m) / c;
        (coeff == cyc.scale(&ratio)).then_some(ratio)
    };
    Ok(CyclicComparison {
        chart: r,
        identical,
        factor,
        same_vanishing: coeff.is_zero() == cyc.is_zero(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Quotient,
    Charts,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub poisson: bool,
    #[serde(rename = "bracket_zero_on_C4")]
    pub bracket_zero_on_c4: bool,
    pub nontrivial: bool,
}

pub fn is_poisson_cp3(t: &Tensor2, method: Method) -> Verdict {
    let w = t.to_mvec();
    let bracket = MVec::schouten(&w, &w).expect("bivector bracket");
    let bracket_zero_on_c4 = bracket.is_zero();
    let poisson = match method {
        Method::Quotient => {
            bracket_zero_on_c4 || {
                let b = Tensor3::from_mvec(&bracket).expect("bracket of invariant bivectors is invariant");
                mod_euler_reduce(&b).is_zero
            }
        }
        Method::Charts => (0..4).all(|r| {
            let c = chart_pushforward_mvec(&w, r).expect("valid chart");
            c.schouten(&c).expect("same chart").is_zero()
        }),
    };
    Verdict {
        poisson,
        bracket_zero_on_c4,
        nontrivial: !mod_euler_reduce(t).is_zero,
    }
}

/// Whether `w(p)` lies in `l(p) ∧ ℂ⁴`, i.e. vanishes on ℂP³ at `[p]`.
pub fn pointwise_vanishes_cp3(t: &Tensor2, point: &[Scalar; 4]) -> Result<bool> {
    pointwise_vanishes_cp3_mvec(&t.to_mvec(), point)
}

/// The same test for a holomorphic multivector of any positive grade `q`:
/// membership of `m(p)` in `l(p) ∧ Λ^{q−1}ℂ⁴`.
pub fn pointwise_vanishes_cp3_mvec(m: &MVec, point: &[Scalar; 4]) -> Result<bool> {
    if point.iter().all(Zero::is_zero) {
        return Err(Error::ZeroPoint);
    }
    if m.grade() == 0 {
        return Err(Error::GradeZero);
    }
    if !m.is_holomorphic() {
        return Err(Error::NotInvariant {
            grade: m.grade(),
            reason: "antiholomorphic directions or coefficients".into(),
        });
    }
    let value = m
        .evaluate_at(point)
        .constant_coordinates(4)
        .expect("holomorphic constant multivector");
    let lp = MVec::vector(std::array::from_fn(|k| {
        if k < 4 {
            Poly::constant(point[k].clone())
        } else {
            Poly::zero()
        }
    }));
    let gens: Vec<Vec<Scalar>> = Blade::all_of_grade(4, m.grade() - 1)
        .into_iter()
        .map(|b| {
            let mut e = MVec::zero(m.grade() - 1);
            e.add_term(b, &Poly::one());
            lp.wedge(&e).constant_coordinates(4).expect("constant multivector")
        })
        .collect();
    Ok(subspace_membership(&value, &gens)?.is_some())
}

/// All points with coordinates in `{0, 1, i, −1}` except the origin, in
/// lexicographic order of the digit sequence.
pub fn sample_grid() -> Vec<[Scalar; 4]> {
    let vals = [Scalar::zero(), Scalar::one(), Scalar::i(), -Scalar::one()];
    (1..256usize)
        .map(|code| std::array::from_fn(|p| vals[(code >> (2 * (3 - p))) & 3].clone()))
        .collect()
}

/// First grid point where the bivector does not vanish on ℂP³.
pub fn nonvanishing_witness(t: &Tensor2) -> Option<[Scalar; 4]> {
    sample_grid()
        .into_iter()
        .find(|p| !pointwise_vanishes_cp3(t, p).expect("grid excludes the origin"))
}
