//! Iterative density improvement.
//!
//! Each step certifies the current form and collects candidate directions:
//!
//! * the exact improving direction when the form is not extreme;
//! * directions computed from the near-minimal representations (values up to
//!   `lambda (1 + near)`), which see constraints the snapped iterate has
//!   narrowly missed;
//! * both signs of a basis of `U(X)` when the verdict is inconclusive;
//! * random probes when a seed is given.
//!
//! Every candidate is line searched by backtracking from `epsilon = 1`. A
//! trial point is rescaled to minimum one and snapped to small denominators,
//! and it is accepted only if it is positive definite and its exact center
//! density strictly exceeds the current one. The best accepted trial wins.
//! The density sequence is therefore strictly increasing.

use num_bigint::BigInt;
use num_traits::{One, Signed};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::certify::{certify, certify_analysis, projected_direction, Analysis, Certificate, Verdict, VoronoiDomain};
use crate::linalg::{rank_span, Pqf, SymForm, TangentVector};
use crate::periodic::{density, density_from_min, generalized_min, gradient_p, representations_within, rescale_by, DensityReport, PeriodicForm};
use crate::rational::{approximate, int, rat, Rational};
use crate::Result;

#[derive(Clone, Debug)]
pub struct ImproveOptions {
    pub steps: usize,
    /// Backtracking factor in `(0, 1)`.
    pub shrink: Rational,
    pub max_denominator: BigInt,
    pub seed: Option<u64>,
    /// Relative slack defining near-minimal representations.
    pub near: Rational,
    /// Backtracking attempts per candidate direction.
    pub max_backtracks: usize,
}

impl Default for ImproveOptions {
    fn default() -> Self {
        ImproveOptions {
            steps: 500,
            shrink: rat(1, 2),
            max_denominator: BigInt::from(1u64 << 20),
            seed: None,
            near: rat(1, 20),
            max_backtracks: 30,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Source {
    Improving,
    NearActive,
    Uncertainty,
    Random,
}

impl Source {
    pub fn name(self) -> &'static str {
        match self {
            Source::Improving => "improving",
            Source::NearActive => "near-active",
            Source::Uncertainty => "uncertainty",
            Source::Random => "random",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Step {
    pub index: usize,
    pub verdict: Verdict,
    pub source: Source,
    pub epsilon: Rational,
    pub density: DensityReport,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StopReason {
    /// The certifier declared the current form extreme.
    Extreme(Verdict),
    /// No candidate increased the density.
    Stalled,
    StepLimit,
}

#[derive(Clone, Debug)]
pub struct Trajectory {
    pub initial: DensityReport,
    pub steps: Vec<Step>,
    pub stop: StopReason,
    pub final_form: PeriodicForm,
    pub final_density: DensityReport,
    pub final_certificate: Certificate,
}

fn snap(x: &PeriodicForm, max_den: &BigInt) -> Option<PeriodicForm> {
    let d = x.d();
    let q = x.q().form();
    let mut s = SymForm::zero(d);
    for i in 0..d {
        for j in i..d {
            s.set(i, j, approximate(q.get(i, j), max_den));
        }
    }
    let t = x
        .translations()
        .iter()
        .map(|c| c.iter().map(|v| approximate(v, max_den)).collect())
        .collect();
    PeriodicForm::new(Pqf::new(s).ok()?, t).ok()
}

/// Denominator bounds tried when snapping, coarse to fine.
fn snap_levels(max_den: &BigInt) -> Vec<BigInt> {
    let mut out = Vec::new();
    let mut den = BigInt::from(16);
    while &den < max_den {
        out.push(den.clone());
        den = &den * BigInt::from(16);
    }
    out.push(max_den.clone());
    out
}

struct Trial {
    form: PeriodicForm,
    density: DensityReport,
    epsilon: Rational,
    source: Source,
}

fn line_search(x: &PeriodicForm, n: &TangentVector, source: Source, current: &Rational, opts: &ImproveOptions, levels: &[BigInt]) -> Option<Trial> {
    let mut eps = Rational::one();
    for _ in 0..opts.max_backtracks {
        if let Ok(y) = x.perturbed(n, &eps) {
            let lambda = generalized_min(&y).lambda;
            if lambda.is_positive() {
                let y = rescale_by(&y, &lambda).expect("positive minimum");
                let mut best: Option<Trial> = None;
                for den in levels {
                    let Some(z) = snap(&y, den) else { continue };
                    let rep = density(&z);
                    if &rep.center_density_squared > current
                        && best.as_ref().is_none_or(|b| rep.center_density_squared > b.density.center_density_squared)
                    {
                        best = Some(Trial {
                            form: z,
                            density: rep,
                            epsilon: eps.clone(),
                            source,
                        });
                    }
                }
                if best.is_some() {
                    return best;
                }
            }
        }
        eps *= &opts.shrink;
    }
    None
}

fn near_active_directions(a: &Analysis, near: &Rational) -> Result<Vec<TangentVector>> {
    let x = &a.form;
    let bound = &a.minimum.lambda * (Rational::one() + near);
    let reps: Vec<_> = representations_within(x, a.enumerator(), &bound)
        .into_iter()
        .map(|(r, _)| r)
        .collect();
    if reps.len() == a.minimum.reps.len() {
        return Ok(Vec::new());
    }
    let generators: Vec<TangentVector> = reps.iter().map(|r| gradient_p(x, r)).collect();
    let span = rank_span(x.d(), x.m(), &generators)?;
    let domain = VoronoiDomain {
        reps,
        generators,
        ambient_dim: TangentVector::ambient_dim(x.d(), x.m()),
        rank: span.rank,
        complement: span.nullspace_basis,
    };
    let mut out = Vec::new();
    if let Some(n) = projected_direction(&domain, &a.target)? {
        out.push(n);
    }
    for n in &domain.complement {
        out.push(n.clone());
        out.push(n.scale(&int(-1)));
    }
    Ok(out)
}

fn random_directions(rng: &mut ChaCha8Rng, d: usize, m: usize, count: usize) -> Vec<TangentVector> {
    let dim = TangentVector::ambient_dim(d, m);
    (0..count)
        .map(|_| {
            let c: Vec<Rational> = (0..dim).map(|_| rat(rng.gen_range(-64..=64), 64)).collect();
            TangentVector::from_coords(d, m, &c)
        })
        .collect()
}

pub fn improve(x: &PeriodicForm, opts: &ImproveOptions) -> Result<Trajectory> {
    let mut rng = opts.seed.map(ChaCha8Rng::seed_from_u64);
    let levels = snap_levels(&opts.max_denominator);
    let initial = density(x);
    let mut cur = x.clone();
    let mut cur_density = initial.clone();
    let mut steps = Vec::new();
    let mut stop = StopReason::StepLimit;
    for index in 0..opts.steps {
        let a = Analysis::new(&cur)?;
        let cert = certify_analysis(&a)?;
        if cert.verdict.is_extreme() {
            stop = StopReason::Extreme(cert.verdict);
            break;
        }
        let mut candidates: Vec<(TangentVector, Source)> = Vec::new();
        if let Some(dir) = &cert.improving {
            candidates.push((dir.n.clone(), Source::Improving));
        }
        for n in near_active_directions(&a, &opts.near)? {
            candidates.push((n, Source::NearActive));
        }
        if let Some(u) = &cert.uncertainty {
            for n in &u.basis {
                candidates.push((n.clone(), Source::Uncertainty));
                candidates.push((n.scale(&int(-1)), Source::Uncertainty));
            }
        }
        if let Some(rng) = rng.as_mut() {
            for n in random_directions(rng, cur.d(), cur.m(), 4) {
                candidates.push((n, Source::Random));
            }
        }
        let current = density_from_min(&cur, &a.minimum.lambda).center_density_squared;
        let mut best: Option<Trial> = None;
        for (n, source) in &candidates {
            if n.is_zero() {
                continue;
            }
            if let Some(t) = line_search(&cur, n, *source, &current, opts, &levels) {
                if best
                    .as_ref()
                    .is_none_or(|b| t.density.center_density_squared > b.density.center_density_squared)
                {
                    best = Some(t);
                }
            }
        }
        let Some(t) = best else {
            stop = StopReason::Stalled;
            break;
        };
        steps.push(Step {
            index,
            verdict: cert.verdict,
            source: t.source,
            epsilon: t.epsilon,
            density: t.density.clone(),
        });
        cur = t.form;
        cur_density = t.density;
    }
    let final_certificate = certify(&cur)?;
    if stop == StopReason::StepLimit && final_certificate.verdict.is_extreme() {
        stop = StopReason::Extreme(final_certificate.verdict);
    }
    Ok(Trajectory {
        initial,
        steps,
        stop,
        final_form: cur,
        final_density: cur_density,
        final_certificate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::to_f64;

    fn opts(steps: usize) -> ImproveOptions {
        ImproveOptions {
            steps,
            ..ImproveOptions::default()
        }
    }

    #[test]
    fn monotone_and_reaches_hexagonal() {
        let x = PeriodicForm::lattice(Pqf::from_i64_rows(&[vec![1, 0], vec![0, 2]]).unwrap());
        let tr = improve(&x, &opts(500)).unwrap();
        let mut prev = tr.initial.center_density_squared.clone();
        for s in &tr.steps {
            assert!(s.density.center_density_squared > prev);
            prev = s.density.center_density_squared.clone();
        }
        assert!((tr.final_density.delta_over_ball - 0.288675).abs() < 1e-3, "{:?}", tr.final_density);
    }

    #[test]
    fn extreme_start_takes_no_steps() {
        let x = PeriodicForm::lattice(Pqf::from_i64_rows(&[vec![2, 1], vec![1, 2]]).unwrap());
        let tr = improve(&x, &opts(10)).unwrap();
        assert!(tr.steps.is_empty());
        assert_eq!(tr.stop, StopReason::Extreme(Verdict::IsolatedExtreme));
    }

    #[test]
    fn one_dimensional_shift_converges() {
        let x = PeriodicForm::new(Pqf::new(SymForm::identity(1)).unwrap(), vec![vec![rat(2, 5)]]).unwrap();
        let tr = improve(&x, &opts(200)).unwrap();
        // the optimum t = 1/2 has center density squared 4 (1/4) / 4 = 1/4
        let target = 0.25;
        assert!((to_f64(&tr.final_density.center_density_squared) - target).abs() < 1e-6);
    }
}
