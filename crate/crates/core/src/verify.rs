//! Seeded property suites, shared by the test harness and the CLI.
//!
//! Every suite draws its cases from [`crate::random`] with a fixed seed and
//! reports each failing case by index with the exact values involved.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{factorial, Rat};
use crate::fantappie::{
    brion_axial, brion_f, brion_identity_residuals, density_op, euler_op, measure_f,
    SimplePolytopeSpec,
};
use crate::geometry::{binomial, combinations, Simplex, VertexSet, WeightedMeasure};
use crate::inverse::{build_mat_s, det_factor_check, explicit_inverse, solve_strong, FormBasis};
use crate::oracle::measure_moments;
use crate::poly::{MultiIndex, Poly};
use crate::random::{self, TestRng};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Brion,
    Detfactor,
    Roundtrip,
    Rebase,
    DensityOp,
}

impl Suite {
    pub const ALL: [Suite; 5] = [
        Suite::Brion,
        Suite::Detfactor,
        Suite::Roundtrip,
        Suite::Rebase,
        Suite::DensityOp,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Brion => "brion",
            Suite::Detfactor => "detfactor",
            Suite::Roundtrip => "roundtrip",
            Suite::Rebase => "rebase",
            Suite::DensityOp => "density-op",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| {
                let names: Vec<&str> = Suite::ALL.iter().map(|x| x.name()).collect();
                Error::Invalid(format!(
                    "unknown suite {s:?}; expected one of {}",
                    names.join(", ")
                ))
            })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub suite: Suite,
    pub seed: u64,
    pub cases: usize,
    pub failures: Vec<String>,
    /// Extra facts worth printing, such as the constant found by `detfactor`.
    pub notes: Vec<String>,
}

impl Report {
    fn new(suite: Suite, seed: u64) -> Self {
        Report {
            suite,
            seed,
            cases: 0,
            failures: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures
                .push(format!("case {}: {}", self.cases - 1, what()));
        }
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "pass" } else { "FAIL" };
        writeln!(
            f,
            "{}: {status}, {} cases, {} failures (seed {})",
            self.suite,
            self.cases,
            self.failures.len(),
            self.seed
        )?;
        for n in &self.notes {
            writeln!(f, "  {n}")?;
        }
        for x in &self.failures {
            writeln!(f, "  {x}")?;
        }
        Ok(())
    }
}

pub fn run(suite: Suite, seed: u64) -> Result<Report> {
    let mut rng = random::rng(seed);
    let mut report = Report::new(suite, seed);
    match suite {
        Suite::Brion => brion(&mut rng, &mut report)?,
        Suite::Detfactor => detfactor(&mut rng, &mut report)?,
        Suite::Roundtrip => roundtrip(&mut rng, &mut report, 200)?,
        Suite::Rebase => rebase(&mut rng, &mut report)?,
        Suite::DensityOp => density(&mut rng, &mut report)?,
    }
    Ok(report)
}

fn ints(v: &[i64]) -> Vec<Rat> {
    v.iter().map(|&x| Rat::from_int(x)).collect()
}

/// A random direction pairing nonzero with every edge of `p`.
fn generic_direction(rng: &mut TestRng, p: &SimplePolytopeSpec) -> Vec<Rat> {
    loop {
        let z = random::direction(rng, p.dim());
        if brion_identity_residuals(p, &z).is_ok() {
            return z;
        }
    }
}

fn brion_case(p: &SimplePolytopeSpec, z: &[Rat], report: &mut Report) -> Result<()> {
    let res = brion_identity_residuals(p, z)?;
    report.check(res.iter().all(Rat::is_zero), || {
        format!("residuals {res:?} at direction {z:?}")
    });
    Ok(())
}

fn brion(rng: &mut TestRng, report: &mut Report) -> Result<()> {
    let example1 = SimplePolytopeSpec::simplex(&[ints(&[1, 1]), ints(&[2, 5]), ints(&[3, 2])])?;
    for _ in 0..5 {
        let z = generic_direction(rng, &example1);
        brion_case(&example1, &z, report)?;
    }
    for _ in 0..50 {
        let vs = random::simplex_points(rng, 2);
        let tri = SimplePolytopeSpec::simplex(vs.points())?;
        let z = generic_direction(rng, &tri);
        brion_case(&tri, &z, report)?;
        let m = WeightedMeasure::standard(vs, [Simplex::new(vec![0, 1, 2])])?;
        let j = 3;
        let lhs = brion_axial(&tri, &z, j)?;
        let rhs = measure_moments(&m, j, None)?.axial(&z, j)?;
        report.check(lhs == rhs, || format!("axial moment {lhs} vs oracle {rhs}"));
    }
    for d in [2usize, 3] {
        let cube = SimplePolytopeSpec::bbox(&vec![Rat::zero(); d], &vec![Rat::one(); d])?;
        for _ in 0..5 {
            let z = generic_direction(rng, &cube);
            brion_case(&cube, &z, report)?;
        }
    }
    let square = SimplePolytopeSpec::bbox(&ints(&[0, 0]), &ints(&[1, 1]))?;
    let vs = VertexSet::from_i64(2, &[&[0, 0], &[1, 0], &[0, 1], &[1, 1]])?;
    let tris = measure_f(&WeightedMeasure::standard(
        vs,
        [Simplex::new(vec![0, 1, 3]), Simplex::new(vec![0, 2, 3])],
    )?)?;
    let f = brion_f(&square)?;
    report.check(f == tris, || {
        format!("square transform {f} vs triangles {tris}")
    });
    Ok(())
}

fn detfactor(rng: &mut TestRng, report: &mut Report) -> Result<()> {
    for (d, n) in [(2, 4), (2, 5), (2, 6), (3, 5), (3, 6)] {
        let vs = random::strong_set(rng, d, n);
        let basis = FormBasis::through_pivot(&vs, n - 1)?;
        let r = det_factor_check(&basis, rng, 5)?;
        report.check(r.degree_matches, || {
            format!(
                "d={d} N={n}: {} qualifying sets do not match the degree",
                r.qualifying
            )
        });
        report.check(r.ratio_constant, || {
            format!("d={d} N={n}: ratios {:?}", r.ratios)
        });
        let bad: Vec<&Vec<usize>> = r
            .vanishing
            .iter()
            .filter(|(_, ok)| !ok)
            .map(|(j, _)| j)
            .collect();
        report.check(bad.is_empty(), || {
            format!("d={d} N={n}: minor survives flattening of {bad:?}")
        });
        report.notes.push(format!(
            "d={d} N={n}: k = {} over {} qualifying sets",
            r.ratios[0], r.qualifying
        ));
    }
    Ok(())
}

/// The round-trip suite with a custom case count.
pub fn run_roundtrip(seed: u64, cases: usize) -> Result<Report> {
    let mut rng = random::rng(seed);
    let mut report = Report::new(Suite::Roundtrip, seed);
    roundtrip(&mut rng, &mut report, cases)?;
    Ok(report)
}

/// Strong sets with `d = 2, N = 4..7` and `d = 3, N = 5, 6` in rotation.
fn roundtrip(rng: &mut TestRng, report: &mut Report, cases: usize) -> Result<()> {
    let shapes = [(2, 4), (2, 5), (2, 6), (2, 7), (3, 5), (3, 6)];
    for i in 0..cases {
        let (d, n) = shapes[i % shapes.len()];
        let vs = random::strong_set(rng, d, n);
        let basis = FormBasis::through_pivot(&vs, n - 1)?;
        let w = random::weights(rng, basis.len());
        let m = WeightedMeasure::new(vs.clone(), basis.simplices().into_iter().zip(w.clone()))?;
        let t = measure_moments(&m, (n - d - 1) as u32, None)?;
        let got = solve_strong(&t, &vs, n - 1)?.weight_vector();
        let inv_ok = explicit_inverse(&basis)? == build_mat_s(&basis)?.inverse()?;
        report.check(got == w && inv_ok, || {
            format!("d={d} N={n}: weights {w:?} came back as {got:?}, explicit inverse agrees: {inv_ok}")
        });
    }
    Ok(())
}

fn rebase(rng: &mut TestRng, report: &mut Report) -> Result<()> {
    for i in 0..30 {
        let d = 1 + i % 3;
        let n = d + 2 + i % 2;
        let vs = random::strong_set(rng, d, n);
        let all = combinations(n, d + 1);
        let atoms: Vec<(Simplex, Rat)> = all
            .into_iter()
            .map(Simplex::new)
            .zip(random::weights(rng, binomial(n, d + 1)))
            .collect();
        let m = WeightedMeasure::new(vs, atoms)?;
        let pivot = i % n;
        let r = m.rebase(pivot)?;
        let through = r.atoms().iter().all(|a| a.simplex.contains(pivot));
        let (a, b) = (measure_moments(&m, 3, None)?, measure_moments(&r, 3, None)?);
        report.check(through && a == b, || {
            format!("d={d} N={n} pivot {pivot}: moments differ after rebasing or a simplex misses the pivot")
        });
    }
    Ok(())
}

fn density(rng: &mut TestRng, report: &mut Report) -> Result<()> {
    let rhos: [&[u32]; 3] = [&[1, 0], &[1, 1], &[2, 0]];
    let order = 4;
    for _ in 0..25 {
        let vs = random::simplex_points(rng, 2);
        let m = WeightedMeasure::standard(vs, [Simplex::new(vec![0, 1, 2])])?;
        let f = measure_f(&m)?;
        for e in rhos {
            let rho = Poly::monomial(MultiIndex::new(e.to_vec()), Rat::one());
            let delta: u32 = e.iter().sum();
            let g = density_op(&f.taylor(order + delta), &rho)?;
            let t = measure_moments(&m, order, Some(&rho))?;
            let target: Vec<Rat> = t
                .entries()
                .map(|(i, v)| v * Rat::new(factorial(i.degree() + 2 + delta), i.factorial()))
                .collect();
            let via_partials: Vec<Rat> = t.entries().map(|(i, _)| g.coeff(i)).collect();
            let e_op = euler_op(&crate::fantappie::moments_to_series(&t), 2, delta);
            let via_euler: Vec<Rat> = t.entries().map(|(i, _)| e_op.coeff(i)).collect();
            report.check(via_partials == target && via_euler == target, || {
                format!("density {e:?}: expected {target:?}, partials {via_partials:?}, euler {via_euler:?}")
            });
        }
    }
    Ok(())
}
