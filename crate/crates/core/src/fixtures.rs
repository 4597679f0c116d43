//! Registry of the worked examples, with the verdicts and printed outputs
//! they are expected to reproduce.

use serde::Serialize;

use crate::cp3::{self, chart_pushforward_cp3, is_poisson_cp3, mod_euler_reduce, Method};
use crate::error::{Error, Result};
use crate::foliation::{bivector_of_form, contract_to_form, pencil_form, quadric_is_phi_fixed, OneForm};
use crate::hp1::{self, hp1_chart_pushforward, is_poisson_hp1};
use crate::multivector::MVec;
use crate::parse::{parse_form, parse_mvec_of_grade, parse_poly};
use crate::tensor::Tensor2;

/// How two quadratic bivectors compare.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    Literal,
    ModEuler,
    Different,
}

pub fn relation(a: &MVec, b: &MVec) -> Result<Relation> {
    if a == b {
        return Ok(Relation::Literal);
    }
    let d = Tensor2::from_mvec(&(a - b))?;
    Ok(if mod_euler_reduce(&d).is_zero {
        Relation::ModEuler
    } else {
        Relation::Different
    })
}

#[derive(Clone, Copy, Debug)]
pub enum Source {
    /// A bivector given directly.
    Bivector,
    /// A foliation 1-form together with the bivector printed for it.
    Form(&'static str),
    /// A pencil `g·df − f·dg` of two quadrics.
    Pencil { f: &'static str, g: &'static str },
    /// A family spanned by wedges of pairwise commuting vector fields.
    Family {
        vectors: &'static [&'static str],
        real_lift: bool,
    },
}

#[derive(Clone, Copy, Debug, Default)]
pub struct Expectation {
    pub cp3_poisson: bool,
    pub nontrivial: bool,
    pub bracket_zero_on_c4: Option<bool>,
    pub hp1_poisson: Option<bool>,
    /// Chart output on `U_0`, written with `zeta`/`dzeta` names.
    pub chart0: Option<&'static str>,
    /// The chart output on `U_0` has a nonzero constant part.
    pub chart0_constant: bool,
    /// How the printed bivector compares with the one assembled from the form.
    pub printed_vs_form: Option<Relation>,
}

#[derive(Clone, Copy, Debug)]
pub struct Fixture {
    pub name: &'static str,
    pub summary: &'static str,
    /// The bivector, or for families the empty string (the sum of the
    /// members is used).
    pub bivector: &'static str,
    pub source: Source,
    pub expect: Expectation,
}

const EX_4_7_1_VECTORS: &[&str] = &["z0*d0 + z1*d1", "i*(z0*d0 - z1*d1)", "i*(z2*d2 - z3*d3)"];

pub const FIXTURES: &[Fixture] = &[
    Fixture {
        name: "ex3.5.1",
        summary: "decomposable bivector with commuting factors",
        bivector: "z0*z2*d1/\\d3",
        source: Source::Bivector,
        expect: Expectation {
            cp3_poisson: true,
            nontrivial: true,
            bracket_zero_on_c4: Some(true),
            hp1_poisson: None,
            chart0: Some("zeta2*dzeta1/\\dzeta3"),
            chart0_constant: false,
            printed_vs_form: None,
        },
    },
    Fixture {
        name: "ex3.5.2",
        summary: "wedge of two commuting rotations",
        bivector: "(z0*d1 - z1*d0)/\\(z2*d3 - z3*d2)",
        source: Source::Bivector,
        expect: Expectation {
            cp3_poisson: true,
            nontrivial: true,
            bracket_zero_on_c4: Some(true),
            hp1_poisson: None,
            chart0: Some(
                "-zeta3*(1+zeta1^2)*dzeta1/\\dzeta2 - zeta2*(1+zeta1^2)*dzeta3/\\dzeta1 \
                 + zeta1*(zeta2^2+zeta3^2)*dzeta2/\\dzeta3",
            ),
            chart0_constant: false,
            printed_vs_form: None,
        },
    },
    Fixture {
        name: "ex3.5.3",
        summary: "wedge of two linear fields, nonzero constant chart term",
        bivector: "(z0*d1 + z1*d0 + z2*d3 + z3*d2)/\\(z0*d3 + z1*d2 + z2*d1 + z3*d0)",
        source: Source::Bivector,
        expect: Expectation {
            cp3_poisson: true,
            nontrivial: true,
            bracket_zero_on_c4: None,
            hp1_poisson: None,
            chart0: None,
            chart0_constant: true,
            printed_vs_form: None,
        },
    },
    Fixture {
        name: "ex3.5.4",
        summary: "family spanned by coordinate scalings",
        bivector: "",
        source: Source::Family {
            vectors: &["z1*d1", "z2*d2", "z3*d3"],
            real_lift: false,
        },
        expect: Expectation {
            cp3_poisson: true,
            nontrivial: true,
            bracket_zero_on_c4: Some(true),
            hp1_poisson: None,
            chart0: None,
            chart0_constant: false,
            printed_vs_form: None,
        },
    },
    Fixture {
        name: "ex3.5.5",
        summary: "bivector of a degree-2 foliation",
        bivector: "(z0^2 - 2*z1*z3)*d0/\\d1 + (z0*z1 - 3*z2*z3)*d0/\\d2 + (2*z1^2 - 3*z0*z2)*d1/\\d2",
        source: Source::Form(
            "z3*(2*z1^2 - 3*z0*z2)*dz0 + z3*(3*z2*z3 - z0*z1)*dz1 + z3*(z0^2 - 2*z1*z3)*dz2 \
             - (z0*z1^2 - 2*z0^2*z2 + z1*z2*z3)*dz3",
        ),
        expect: Expectation {
            cp3_poisson: true,
            nontrivial: true,
            bracket_zero_on_c4: None,
            hp1_poisson: None,
            chart0: None,
            chart0_constant: false,
            printed_vs_form: Some(Relation::ModEuler),
        },
    },
    Fixture {
        name: "ex3.5.6",
        summary: "bivector of a symmetric degree-2 foliation",
        bivector: "(z3^2 - z2^2)*d0/\\d1 + (z1^2 - z3^2)*d0/\\d2 + (z2^2 - z1^2)*d0/\\d3 \
                   + (z3^2 - z0^2)*d1/\\d2 + (z0^2 - z2^2)*d1/\\d3 + (z1^2 - z0^2)*d2/\\d3",
        source: Source::Form(
            "(z1*(z1^2 - z0^2) + z2*(z2^2 - z0^2) + z3*(z3^2 - z0^2))*dz0 \
             + (z0*(z0^2 - z1^2) + z2*(z2^2 - z1^2) + z3*(z3^2 - z1^2))*dz1 \
             + (z0*(z0^2 - z2^2) + z1*(z1^2 - z2^2) + z3*(z3^2 - z2^2))*dz2 \
             + (z0*(z0^2 - z3^2) + z1*(z1^2 - z3^2) + z2*(z2^2 - z3^2))*dz3",
        ),
        expect: Expectation {
            cp3_poisson: true,
            nontrivial: true,
            bracket_zero_on_c4: None,
            hp1_poisson: None,
            chart0: None,
            chart0_constant: false,
            printed_vs_form: Some(Relation::Literal),
        },
    },
    Fixture {
        name: "ex4.7.1",
        summary: "real family on the quaternionic line from commuting fields",
        bivector: "",
        source: Source::Family {
            vectors: EX_4_7_1_VECTORS,
            real_lift: true,
        },
        expect: Expectation {
            cp3_poisson: true,
            nontrivial: true,
            bracket_zero_on_c4: Some(true),
            hp1_poisson: Some(true),
            chart0: None,
            chart0_constant: false,
            printed_vs_form: None,
        },
    },
    Fixture {
        name: "ex4.7.2",
        summary: "pencil of two real quadrics in two variables",
        bivector: "i*(z3^2 - z2^2)*d0/\\d1",
        source: Source::Pencil {
            f: "z0^2 + z1^2",
            g: "i*z0*z1",
        },
        expect: Expectation {
            cp3_poisson: true,
            nontrivial: true,
            bracket_zero_on_c4: None,
            hp1_poisson: Some(true),
            chart0: None,
            chart0_constant: false,
            printed_vs_form: Some(Relation::Different),
        },
    },
    Fixture {
        name: "ex4.7.3",
        summary: "pencil of the norm quadric and a real quadric",
        bivector: "i*((z0^2 - z1^2)*d2/\\d3 + z0*z3*d0/\\d2 - z0*z2*d0/\\d3 - z1*z3*d1/\\d2 + z1*z2*d1/\\d3)",
        source: Source::Pencil {
            f: "z0^2 + z1^2 + z2^2 + z3^2",
            g: "i*z0*z1",
        },
        expect: Expectation {
            cp3_poisson: true,
            nontrivial: true,
            bracket_zero_on_c4: None,
            hp1_poisson: Some(true),
            chart0: None,
            chart0_constant: false,
            printed_vs_form: Some(Relation::Literal),
        },
    },
    Fixture {
        name: "ex4.7.4",
        summary: "pencil of the norm quadric and a symmetric real quadric",
        bivector: "i*((z0^2 - z1^2)*d2/\\d3 + (z2^2 - z3^2)*d0/\\d1 + (z0*z3 - z1*z2)*d0/\\d2 \
                   + (z1*z3 - z0*z2)*d0/\\d3 + (z0*z2 - z1*z3)*d1/\\d2 + (z1*z2 - z0*z3)*d1/\\d3)",
        source: Source::Pencil {
            f: "z0^2 + z1^2 + z2^2 + z3^2",
            g: "i*(z0*z1 + z2*z3)",
        },
        expect: Expectation {
            cp3_poisson: true,
            nontrivial: true,
            bracket_zero_on_c4: None,
            hp1_poisson: Some(true),
            chart0: None,
            chart0_constant: false,
            printed_vs_form: Some(Relation::Literal),
        },
    },
];

pub fn fixture(name: &str) -> Result<&'static Fixture> {
    FIXTURES
        .iter()
        .find(|f| f.name == name)
        .ok_or_else(|| Error::UnknownFixture(name.to_string()))
}

/// Text in the chart syntax (`zeta`, `dzeta`) parsed as a field in slots 0..3.
pub fn parse_chart_text(src: &str) -> Result<MVec> {
    parse_mvec_of_grade(&src.replace("dzeta", "d").replace("zeta", "z"), 2)
}

impl Fixture {
    /// The generating vector fields of a family, empty otherwise.
    pub fn vectors(&self) -> Result<Vec<MVec>> {
        match self.source {
            Source::Family { vectors, .. } => vectors.iter().map(|s| parse_mvec_of_grade(s, 1)).collect(),
            _ => Ok(Vec::new()),
        }
    }

    /// Wedges `v_a ∧ v_b` for `a < b`, in lexicographic order.
    pub fn members(&self) -> Result<Vec<MVec>> {
        let v = self.vectors()?;
        let mut out = Vec::new();
        for a in 0..v.len() {
            for b in a + 1..v.len() {
                out.push(v[a].wedge(&v[b]));
            }
        }
        Ok(out)
    }

    /// Real lifts `(v_a + v̄_a) ∧ (v_b + v̄_b)` of the family members.
    pub fn real_members(&self) -> Result<Vec<MVec>> {
        let v: Vec<MVec> = self.vectors()?.into_iter().map(|x| &x + &x.conjugate()).collect();
        let mut out = Vec::new();
        for a in 0..v.len() {
            for b in a + 1..v.len() {
                out.push(v[a].wedge(&v[b]));
            }
        }
        Ok(out)
    }

    pub fn bivector(&self) -> Result<MVec> {
        match self.source {
            Source::Family { .. } => Ok(self
                .members()?
                .iter()
                .fold(MVec::zero(2), |acc, m| &acc + m)),
            _ => parse_mvec_of_grade(self.bivector, 2),
        }
    }

    pub fn tensor(&self) -> Result<Tensor2> {
        Tensor2::from_mvec(&self.bivector()?)
    }

    /// The foliation form: the printed one, or the pencil form.
    pub fn form(&self) -> Result<Option<OneForm>> {
        match self.source {
            Source::Form(s) => Ok(Some(parse_form(s)?)),
            Source::Pencil { f, g } => Ok(Some(pencil_form(&parse_poly(f)?, &parse_poly(g)?)?)),
            _ => Ok(None),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub what: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FixtureReport {
    pub name: String,
    pub pass: bool,
    pub checks: Vec<Check>,
}

#[derive(Default)]
struct Checks(Vec<Check>);

impl Checks {
    fn push<T: std::fmt::Debug + PartialEq>(&mut self, what: impl Into<String>, expected: T, actual: T) {
        self.0.push(Check {
            what: what.into(),
            pass: expected == actual,
            expected: format!("{expected:?}"),
            actual: format!("{actual:?}"),
        });
    }

    fn push_text(&mut self, what: impl Into<String>, expected: String, actual: String, pass: bool) {
        self.0.push(Check {
            what: what.into(),
            expected,
            actual,
            pass,
        });
    }
}

fn verdict_checks(checks: &mut Checks, label: &str, t: &Tensor2, e: &Expectation) {
    let q = is_poisson_cp3(t, Method::Quotient);
    let c = is_poisson_cp3(t, Method::Charts);
    checks.push(format!("{label}cp3 poisson (quotient)"), e.cp3_poisson, q.poisson);
    checks.push(format!("{label}cp3 poisson (charts)"), e.cp3_poisson, c.poisson);
    checks.push(format!("{label}nontrivial"), e.nontrivial, q.nontrivial);
    if let Some(b) = e.bracket_zero_on_c4 {
        checks.push(format!("{label}bracket zero on C4"), b, q.bracket_zero_on_c4);
    }
    if let Some(h) = e.hp1_poisson {
        checks.push(format!("{label}hp1 poisson"), h, is_poisson_hp1(t).poisson);
    }
}

pub fn run_fixture(fx: &Fixture) -> Result<FixtureReport> {
    let mut checks = Checks::default();
    let t = fx.tensor()?;
    let e = &fx.expect;
    verdict_checks(&mut checks, "", &t, e);

    let chart0 = chart_pushforward_cp3(&t, 0)?;
    if let Some(golden) = e.chart0 {
        let expected = parse_chart_text(golden)?;
        checks.push_text(
            "chart U0",
            cp3::ChartMultivector { chart: 0, field: expected.clone() }.render(),
            chart0.render(),
            chart0.field == expected,
        );
    }
    if e.chart0_constant {
        let constant = chart0.field.map_coeffs(|p| crate::poly::Poly::constant(p.constant_term()));
        checks.push_text(
            "chart U0 constant part",
            "nonzero".into(),
            constant.to_string(),
            !constant.is_zero(),
        );
    }

    if let Source::Family { real_lift, .. } = fx.source {
        for (k, m) in fx.members()?.iter().enumerate() {
            verdict_checks(&mut checks, &format!("member {k}: "), &Tensor2::from_mvec(m)?, e);
        }
        if real_lift {
            for (k, m) in fx.real_members()?.iter().enumerate() {
                let chart = hp1_chart_pushforward(m, 0)?;
                checks.push(format!("member {k}: real lift nonzero on V0"), true, !chart.is_zero());
                checks.push(
                    format!("member {k}: real lift bracket on V0 vanishes"),
                    true,
                    chart.schouten(&chart)?.is_zero(),
                );
            }
        }
    }

    if let Some(omega) = fx.form()? {
        let w = fx.bivector()?;
        let assembled = bivector_of_form(&omega)?;
        checks.push("form of assembled bivector", omega.to_string(), contract_to_form(&assembled)?.to_string());
        if let Some(rel) = e.printed_vs_form {
            checks.push("printed bivector vs assembled", rel, relation(&assembled, &w)?);
        }
        if matches!(fx.source, Source::Form(_)) {
            checks.push("form of printed bivector", omega.to_string(), contract_to_form(&w)?.to_string());
        }
        if let Source::Pencil { f, g } = fx.source {
            let real = quadric_is_phi_fixed(&parse_poly(f)?) && quadric_is_phi_fixed(&parse_poly(g)?);
            checks.push("quadrics real", true, real);
            checks.push("form real", true, omega.is_phi_fixed());
            verdict_checks(&mut checks, "assembled: ", &Tensor2::from_mvec(&assembled)?, e);
        }
    }

    let pass = checks.0.iter().all(|c| c.pass);
    Ok(FixtureReport {
        name: fx.name.to_string(),
        pass,
        checks: checks.0,
    })
}

/// Runs one fixture by name, or all of them for `"all"`.
pub fn run_examples(selection: &str) -> Result<Vec<FixtureReport>> {
    if selection == "all" {
        FIXTURES.iter().map(run_fixture).collect()
    } else {
        Ok(vec![run_fixture(fixture(selection)?)?])
    }
}

/// The realified bivector of a fixture, when its tensor is real.
pub fn realified(fx: &Fixture) -> Result<MVec> {
    Ok(hp1::realify(&fx.tensor()?)?.into_field())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_fixture_passes() {
        for r in run_examples("all").unwrap() {
            let failed: Vec<_> = r.checks.iter().filter(|c| !c.pass).collect();
            assert!(r.pass, "{}: {:#?}", r.name, failed);
        }
    }

    #[test]
    fn names() {
        assert_eq!(FIXTURES.len(), 10);
        assert!(matches!(run_examples("ex9.9"), Err(Error::UnknownFixture(_))));
        assert_eq!(run_examples("ex3.5.2").unwrap().len(), 1);
    }

    #[test]
    fn sources_round_trip() {
        for fx in FIXTURES {
            let w = fx.bivector().unwrap();
            assert_eq!(parse_mvec_of_grade(&w.to_string(), 2).unwrap(), w, "{}", fx.name);
            if let Some(om) = fx.form().unwrap() {
                assert_eq!(parse_form(&om.to_string()).unwrap(), om);
            }
        }
    }

    #[test]
    fn printed_pencil_bivector_matches_relabelled_pencil() {
        // the printed bivector belongs to the same pencil written in z2, z3
        // with f and g exchanged
        let fx = fixture("ex4.7.2").unwrap();
        let om = pencil_form(&parse_poly("i*z2*z3").unwrap(), &parse_poly("z2^2 + z3^2").unwrap()).unwrap();
        let w = fx.bivector().unwrap();
        assert_eq!(relation(&bivector_of_form(&om).unwrap(), &w).unwrap(), Relation::Literal);
        let own = bivector_of_form(&fx.form().unwrap().unwrap()).unwrap();
        assert_eq!(own.to_string(), "(i*z0^2 - i*z1^2)*d2/\\d3");
    }
}
