//! Degree-2 foliations of ℂP³ and the bivectors they induce.
//!
//! A foliation is given by a 1-form `ω = Σ f_i dz_i` on ℂ⁴ with cubic
//! coefficients and `Σ z_i f_i = 0`. It corresponds to a quadratic bivector
//! `w` through `ω(Y) = vol(Y, l, w)`, well defined up to multiples of `l`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::multivector::{euler_field, Blade, MVec};
use crate::poly::{Monomial, Poly, Var, VarNames, Z_NAMES};
use crate::scalar::Scalar;
use crate::tensor::PHI;

/// A holomorphic 1-form `Σ f_i dz_i` on ℂ⁴.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct OneForm {
    pub f: [Poly; 4],
}

impl OneForm {
    pub fn new(f: [Poly; 4]) -> Self {
        OneForm { f }
    }

    pub fn zero() -> Self {
        OneForm::default()
    }

    pub fn is_zero(&self) -> bool {
        self.f.iter().all(Poly::is_zero)
    }

    pub fn component(&self, i: usize) -> &Poly {
        &self.f[i]
    }

    /// `Σ z_i f_i`, which vanishes for forms coming from bivectors.
    pub fn euler_pairing(&self) -> Poly {
        let mut acc = Poly::zero();
        for (i, f) in self.f.iter().enumerate() {
            acc = &acc + &(&Poly::z(i) * f);
        }
        acc
    }

    pub fn scale(&self, c: &Scalar) -> OneForm {
        OneForm {
            f: std::array::from_fn(|i| self.f[i].scale(c)),
        }
    }

    /// Holomorphic with every nonzero component homogeneous of degree 3.
    pub fn check_shape(&self) -> Result<()> {
        for (i, f) in self.f.iter().enumerate() {
            if !f.is_holomorphic() {
                return Err(Error::InvalidForm(format!("coefficient of dz{i} involves conjugates")));
            }
            if !f.is_homogeneous(3) {
                return Err(Error::InvalidForm(format!("coefficient of dz{i} is not cubic")));
            }
        }
        Ok(())
    }

    /// The real structure induced by the `j`-action:
    /// `Φ(c)_{i,U} = (−1)^{i+ΣU} conj(c_{φ(i),φ(U)})` on the coefficient of
    /// `z^U dz_i`.
    pub fn phi(&self) -> OneForm {
        let mut out = OneForm::zero();
        for (i, f) in self.f.iter().enumerate() {
            for (m, c) in f.terms() {
                let e = m.exps();
                let mut img = [0u32; 4];
                let mut parity = PHI[i];
                for k in 0..4 {
                    img[PHI[k]] = e[k];
                    parity += PHI[k] * e[k] as usize;
                }
                out.f[PHI[i]].add_term(Monomial::holo(img), &(&c.conj() * &Scalar::sign(parity)));
            }
        }
        out
    }

    pub fn is_phi_fixed(&self) -> bool {
        self.phi() == *self
    }

    pub fn render_with(&self, names: &VarNames) -> String {
        let mut parts: Vec<String> = Vec::new();
        for (i, f) in self.f.iter().enumerate() {
            if f.is_zero() {
                continue;
            }
            let c = f.render_with(names);
            parts.push(if f.is_single_term() {
                match c.as_str() {
                    "1" => format!("dz{i}"),
                    "-1" => format!("-dz{i}"),
                    _ => format!("{c}*dz{i}"),
                }
            } else {
                format!("({c})*dz{i}")
            });
        }
        if parts.is_empty() {
            return "0".into();
        }
        let mut out = parts[0].clone();
        for p in &parts[1..] {
            match p.strip_prefix('-') {
                Some(rest) => {
                    out.push_str(" - ");
                    out.push_str(rest);
                }
                None => {
                    out.push_str(" + ");
                    out.push_str(p);
                }
            }
        }
        out
    }
}

impl fmt::Display for OneForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_with(&Z_NAMES))
    }
}

impl fmt::Debug for OneForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "OneForm({self})")
    }
}

fn check_quadric(p: &Poly, name: &str) -> Result<()> {
    if !p.is_holomorphic() || !p.is_homogeneous(2) {
        return Err(Error::InvalidPoly(format!(
            "{name} must be a holomorphic quadratic form"
        )));
    }
    Ok(())
}

/// `g·df − f·dg` for quadratic `f`, `g`.
pub fn pencil_form(f: &Poly, g: &Poly) -> Result<OneForm> {
    check_quadric(f, "f")?;
    check_quadric(g, "g")?;
    Ok(OneForm {
        f: std::array::from_fn(|i| {
            let v = Var::z(i);
            &(g * &f.partial(v)) - &(f * &g.partial(v))
        }),
    })
}

/// `ω(Y) = vol(Y, l, w)`: the coefficient of `dz_d` is minus the coefficient
/// of `∂a∧∂b∧∂c` in `l∧w` times the sign of `(a, b, c, d)`.
pub fn contract_to_form(w: &MVec) -> Result<OneForm> {
    if w.grade() != 2 {
        return Err(Error::GradeMismatch {
            expected: 2,
            got: w.grade(),
        });
    }
    if !w.is_holomorphic() {
        return Err(Error::InvalidForm("bivector must be holomorphic".into()));
    }
    let u = euler_field().wedge(w);
    let mut out = OneForm::zero();
    for d in 0..4 {
        let rest: Vec<usize> = (0..4).filter(|&k| k != d).collect();
        let (_, sign) = Blade::from_indices(&[rest[0], rest[1], rest[2], d]).expect("distinct");
        out.f[d] = u.coeff_of(&rest).scale(&-sign);
    }
    Ok(out)
}

/// The splitting `f_i = Σ f_{i,j} z_j + Σ f_{i,jk} z_j z_k + f_{i,jkl} z_j z_k z_l`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Decomposition {
    /// `(i, j) ↦ f_{i,j}`, quadratic in `z_i, z_j`.
    pub pairs: BTreeMap<(usize, usize), Poly>,
    /// `(i, j, k) ↦ f_{i,jk}` with `j < k`, linear in `z_i, z_j, z_k`.
    pub triples: BTreeMap<(usize, usize, usize), Poly>,
    /// `i ↦ f_{i,jkl}` for `{j, k, l}` the other three indices.
    pub quads: BTreeMap<usize, Scalar>,
}

impl Decomposition {
    pub fn pair(&self, i: usize, j: usize) -> Poly {
        self.pairs.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn triple(&self, i: usize, j: usize, k: usize) -> Poly {
        let key = if j < k { (i, j, k) } else { (i, k, j) };
        self.triples.get(&key).cloned().unwrap_or_default()
    }

    pub fn quad(&self, i: usize) -> Scalar {
        self.quads.get(&i).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Rebuilds the coefficient `f_i`.
    pub fn reassemble(&self, i: usize) -> Poly {
        let z = Poly::z;
        let mut acc = Poly::zero();
        for (&(a, j), p) in &self.pairs {
            if a == i {
                acc = &acc + &(p * &z(j));
            }
        }
        for (&(a, j, k), p) in &self.triples {
            if a == i {
                acc = &acc + &(p * &(&z(j) * &z(k)));
            }
        }
        if let Some(c) = self.quads.get(&i) {
            let mut m = Poly::constant(c.clone());
            for k in (0..4).filter(|&k| k != i) {
                m = &m * &z(k);
            }
            acc = &acc + &m;
        }
        acc
    }
}

fn add_to<K: Ord>(map: &mut BTreeMap<K, Poly>, key: K, p: Poly) {
    let entry = map.entry(key).or_default();
    *entry = &*entry + &p;
}

/// Routes each monomial of each `f_i` by its support; errors if the Euler
/// pairing is nonzero or some `f_i` contains `z_i³`.
pub fn decompose_form(omega: &OneForm) -> Result<Decomposition> {
    omega.check_shape()?;
    if !omega.euler_pairing().is_zero() {
        return Err(Error::InvalidForm("Σ z_i f_i is not zero".into()));
    }
    let mut d = Decomposition::default();
    for (i, f) in omega.f.iter().enumerate() {
        for (m, c) in f.terms() {
            let others: Vec<usize> = (0..4).filter(|&k| k != i && m.exps()[k] > 0).collect();
            let divide = |idx: &[usize]| {
                let mut e = [0u32; 4];
                for &k in idx {
                    e[k] += 1;
                }
                Poly::term(m.div(&Monomial::holo(e)).expect("divisible"), c.clone())
            };
            match others.as_slice() {
                [] => {
                    return Err(Error::InvalidForm(format!(
                        "coefficient of dz{i} contains z{i}^3"
                    )))
                }
                [j] => add_to(&mut d.pairs, (i, *j), divide(&[*j])),
                [j, k] => add_to(&mut d.triples, (i, *j, *k), divide(&[*j, *k])),
                _ => {
                    let e = d.quads.entry(i).or_insert_with(Scalar::zero);
                    *e += c;
                }
            }
        }
    }
    d.pairs.retain(|_, p| !p.is_zero());
    d.triples.retain(|_, p| !p.is_zero());
    d.quads.retain(|_, c| !c.is_zero());
    Ok(d)
}

/// Assembles the bivector of a foliation form from its decomposition.
pub fn bivector_of_form(omega: &OneForm) -> Result<MVec> {
    let d = decompose_form(omega)?;
    let z = Poly::z;
    let mut w = MVec::zero(2);

    for ((i, j), (k, l)) in [
        ((0, 1), (2, 3)),
        ((2, 0), (1, 3)),
        ((0, 3), (1, 2)),
        ((1, 2), (0, 3)),
        ((3, 1), (0, 2)),
        ((2, 3), (0, 1)),
    ] {
        w.add_assign(&MVec::term(d.pair(i, j), &[k, l]));
    }

    // (z_a ∂_a coefficients) ∧ ∂_target, each coefficient a difference of
    // two f_{i,jk}
    let third = Scalar::ratio(1, 3);
    let t = |i, j, k| d.triple(i, j, k);
    let blocks: [(usize, [(usize, Poly); 3]); 4] = [
        (0, [(1, &t(3, 1, 2) - &t(2, 1, 3)), (2, &t(1, 2, 3) - &t(3, 1, 2)), (3, &t(2, 1, 3) - &t(1, 2, 3))]),
        (1, [(0, &t(2, 0, 3) - &t(3, 0, 2)), (2, &t(3, 0, 2) - &t(0, 2, 3)), (3, &t(0, 2, 3) - &t(2, 0, 3))]),
        (2, [(0, &t(3, 0, 1) - &t(1, 0, 3)), (1, &t(0, 1, 3) - &t(3, 0, 1)), (3, &t(1, 0, 3) - &t(0, 1, 3))]),
        (3, [(0, &t(1, 0, 2) - &t(2, 0, 1)), (1, &t(2, 0, 1) - &t(0, 1, 2)), (2, &t(0, 1, 2) - &t(1, 0, 2))]),
    ];
    for (target, terms) in blocks {
        for (a, coeff) in terms {
            w.add_assign(&MVec::term((&coeff * &z(a)).scale(&third), &[a, target]));
        }
    }

    let quarter = Scalar::ratio(1, 4);
    let q = |i| d.quad(i);
    for ((k, l), c) in [
        ((0, 1), &q(2) - &q(3)),
        ((0, 2), &q(3) - &q(1)),
        ((0, 3), &q(1) - &q(2)),
        ((1, 2), &q(0) - &q(3)),
        ((1, 3), &q(2) - &q(0)),
        ((2, 3), &q(0) - &q(1)),
    ] {
        let coeff = (&z(k) * &z(l)).scale(&(&c * &quarter));
        w.add_assign(&MVec::term(coeff, &[k, l]));
    }
    Ok(w)
}

/// Quadratic form `Σ q_{ij} z_i z_j` of a symmetric matrix.
pub fn quadric_of_matrix(q: &[[Scalar; 4]; 4]) -> Poly {
    let mut p = Poly::zero();
    for i in 0..4 {
        for j in 0..4 {
            p.add_scaled(&(&Poly::z(i) * &Poly::z(j)), &q[i][j]);
        }
    }
    p
}

/// Whether a quadric `Σ q_{ij} z_i z_j` satisfies
/// `q_{ij} = (−1)^{i+j} conj(q_{φ(i)φ(j)})`.
pub fn quadric_is_phi_fixed(p: &Poly) -> bool {
    let mut img = Poly::zero();
    for (m, c) in p.terms() {
        let e = m.exps();
        let mut out = [0u32; 4];
        let mut parity = 0;
        for k in 0..4 {
            out[PHI[k]] = e[k];
            parity += PHI[k] * e[k] as usize;
        }
        img.add_term(Monomial::holo(out), &(&c.conj() * &Scalar::sign(parity)));
    }
    img == *p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cp3::{euler_rank, mod_euler_reduce};
    use crate::linalg::rank_of;
    use crate::tensor::Tensor2;

    fn z(k: usize) -> Poly {
        Poly::z(k)
    }

    fn p(terms: &[(i64, [u32; 4])]) -> Poly {
        Poly::from_terms(terms.iter().map(|(c, e)| (Monomial::holo(*e), Scalar::int(*c))))
    }

    fn omega_355() -> OneForm {
        OneForm::new([
            p(&[(2, [0, 2, 0, 1]), (-3, [1, 0, 1, 1])]),
            p(&[(3, [0, 0, 1, 2]), (-1, [1, 1, 0, 1])]),
            p(&[(1, [2, 0, 0, 1]), (-2, [0, 1, 0, 2])]),
            p(&[(-1, [1, 2, 0, 0]), (2, [2, 0, 1, 0]), (-1, [0, 1, 1, 1])]),
        ])
    }

    fn w_355() -> MVec {
        let a = &z(0).pow(2) - &(&z(1) * &z(3)).scale(&Scalar::int(2));
        let b = &(&z(0) * &z(1)) - &(&z(2) * &z(3)).scale(&Scalar::int(3));
        let c = &z(1).pow(2).scale(&Scalar::int(2)) - &(&z(0) * &z(2)).scale(&Scalar::int(3));
        &(&MVec::term(a, &[0, 1]) + &MVec::term(b, &[0, 2])) + &MVec::term(c, &[1, 2])
    }

    fn equal_mod_euler(a: &MVec, b: &MVec) -> bool {
        let d = Tensor2::from_mvec(&(a - b)).unwrap();
        mod_euler_reduce(&d).is_zero
    }

    #[test]
    fn pencil_examples() {
        let f = &z(0).pow(2) + &z(1).pow(2);
        let g = (&z(0) * &z(1)).scale(&Scalar::i());
        let w = pencil_form(&f, &g).unwrap();
        let i = Scalar::i();
        assert_eq!(w.f[0], (&(&z(0).pow(2) * &z(1)) - &z(1).pow(3)).scale(&i));
        assert_eq!(w.f[1], (&(&z(0) * &z(1).pow(2)) - &z(0).pow(3)).scale(&i));
        assert!(w.f[2].is_zero() && w.f[3].is_zero());
        assert!(pencil_form(&f, &f).unwrap().is_zero());
        let w = pencil_form(&z(0).pow(2), &z(1).pow(2)).unwrap();
        let two = Scalar::int(2);
        assert_eq!(w.f[0], (&(&z(0) * &z(1)) * &z(1)).scale(&two));
        assert_eq!(w.f[1], (&(&z(0) * &z(1)) * &z(0)).scale(&-two));
        assert!(pencil_form(&z(0), &g).is_err());
        assert!(pencil_form(&Poly::zb(0).pow(2), &g).is_err());
    }

    #[test]
    fn contraction_of_example() {
        assert_eq!(contract_to_form(&w_355()).unwrap(), omega_355());
        let w1 = MVec::term(&z(0) * &z(2), &[1, 3]);
        // the orientation fixed by the example above makes this the
        // negative of the naive term-by-term expansion
        let expected = OneForm::new([
            -&(&z(0) * &z(2).pow(2)),
            Poly::zero(),
            &z(0).pow(2) * &z(2),
            Poly::zero(),
        ]);
        assert_eq!(contract_to_form(&w1).unwrap(), expected);
        let u = MVec::term(z(2), &[0]);
        assert!(contract_to_form(&u.wedge(&euler_field())).unwrap().is_zero());
    }

    #[test]
    fn contraction_kernel_is_euler_subspace() {
        let images: Vec<Vec<Scalar>> = (0..Tensor2::dim())
            .map(|s| {
                let om = contract_to_form(&Tensor2::unit(s).to_mvec()).unwrap();
                let mut v = Vec::new();
                for f in &om.f {
                    for e in crate::tensor::Tensor3::slots() {
                        let mut x = [0u32; 4];
                        for &k in &e.0 {
                            x[k] += 1;
                        }
                        if e.1 == [0, 1, 2] {
                            v.push(f.coeff(&Monomial::holo(x)));
                        }
                    }
                }
                v
            })
            .collect();
        assert_eq!(rank_of(&images).unwrap(), 60 - euler_rank::<2>());
    }

    #[test]
    fn decomposition_routing() {
        let d = decompose_form(&omega_355()).unwrap();
        assert_eq!(d.triple(0, 1, 3), z(1).scale(&Scalar::int(2)));
        assert_eq!(d.triple(0, 2, 3), z(0).scale(&Scalar::int(-3)));
        assert!(d.pairs.keys().all(|&(i, _)| i != 0));
        for i in 0..4 {
            assert_eq!(d.reassemble(i), omega_355().f[i]);
        }
        let f = &z(0).pow(2) + &z(1).pow(2);
        let g = (&z(0) * &z(1)).scale(&Scalar::i());
        let d = decompose_form(&pencil_form(&f, &g).unwrap()).unwrap();
        assert_eq!(d.pair(0, 1), (&z(0).pow(2) - &z(1).pow(2)).scale(&Scalar::i()));
    }

    #[test]
    fn decomposition_errors() {
        let bad = OneForm::new([z(0).pow(3), Poly::zero(), Poly::zero(), Poly::zero()]);
        assert!(matches!(decompose_form(&bad), Err(Error::InvalidForm(_))));
        let unpaired = OneForm::new([&z(1).pow(2) * &z(2), Poly::zero(), Poly::zero(), Poly::zero()]);
        assert!(matches!(decompose_form(&unpaired), Err(Error::InvalidForm(m)) if m.contains("Σ")));
    }

    #[test]
    fn round_trips() {
        let w = bivector_of_form(&omega_355()).unwrap();
        assert_ne!(w, w_355());
        assert!(equal_mod_euler(&w, &w_355()));
        assert_eq!(contract_to_form(&w).unwrap(), omega_355());
        assert_eq!(bivector_of_form(&OneForm::zero()).unwrap(), MVec::zero(2));
    }

    #[test]
    fn example_356_is_reproduced_literally() {
        let mut f: [Poly; 4] = Default::default();
        for (j, fj) in f.iter_mut().enumerate() {
            for i in 0..4 {
                *fj = &*fj + &(&z(i) * &(&z(i).pow(2) - &z(j).pow(2)));
            }
        }
        let om = OneForm::new(f);
        let sq = |a: usize, b: usize| &z(a).pow(2) - &z(b).pow(2);
        let expected = [
            ((0, 1), sq(3, 2)),
            ((0, 2), sq(1, 3)),
            ((0, 3), sq(2, 1)),
            ((1, 2), sq(3, 0)),
            ((1, 3), sq(0, 2)),
            ((2, 3), sq(1, 0)),
        ]
        .into_iter()
        .fold(MVec::zero(2), |acc, ((k, l), c)| &acc + &MVec::term(c, &[k, l]));
        assert_eq!(bivector_of_form(&om).unwrap(), expected);
        assert_eq!(contract_to_form(&expected).unwrap(), om);
    }

    #[test]
    fn real_structure_on_forms() {
        let w = MVec::term((&z(3).pow(2) - &z(2).pow(2)).scale(&Scalar::i()), &[0, 1]);
        assert!(Tensor2::from_mvec(&w).unwrap().is_phi_fixed());
        let om = contract_to_form(&w).unwrap();
        assert!(om.is_phi_fixed());
        assert_eq!(om.phi().phi(), om);
        let t = Tensor2::from_mvec(&bivector_of_form(&om).unwrap()).unwrap();
        assert!(t.is_phi_fixed());
        assert!(!omega_355().is_phi_fixed());
    }

    #[test]
    fn quadric_reality() {
        assert!(quadric_is_phi_fixed(&(&z(0).pow(2) + &z(1).pow(2))));
        assert!(quadric_is_phi_fixed(&(&z(0) * &z(1)).scale(&Scalar::i())));
        assert!(!quadric_is_phi_fixed(&(&z(0) * &z(1))));
    }

    #[test]
    fn render_form() {
        assert_eq!(
            contract_to_form(&MVec::term(&z(0) * &z(2), &[1, 3])).unwrap().to_string(),
            "-z0*z2^2*dz0 + z0^2*z2*dz2"
        );
        assert_eq!(OneForm::zero().to_string(), "0");
    }
}
