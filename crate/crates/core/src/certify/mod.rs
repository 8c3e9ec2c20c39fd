//! Local optimality of periodic forms.
//!
//! The generalized Voronoi domain `V(X)` is the cone spanned by the gradients
//! of the constraint polynomials at the minimal representations. `X` is a
//! candidate local maximum of the density exactly when `(Q^{-1}, 0)` lies in
//! `V(X)`; all verdicts below are exact, and every witness is checked with
//! rational arithmetic before it is returned.

mod lp;
mod nnls;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::lattice::{Enumerator, ShortVecResult};
use crate::linalg::{det_and_inverse, rank_of_rank_one_forms, rank_span, solve_many, Pqf, TangentVector};
use crate::periodic::{density_from_min, generalized_min_with, gradient_p, GeneralizedMin, MinRep, PeriodicForm};
use crate::rational::{int, to_f64, Rational};
use crate::{Error, Result};

use lp::{Lp, Phase1};

#[derive(Clone, Debug)]
pub struct VoronoiDomain {
    /// Canonical representations, in the order of `generators`.
    pub reps: Vec<MinRep>,
    pub generators: Vec<TangentVector>,
    pub ambient_dim: usize,
    pub rank: usize,
    /// Basis of the orthogonal complement of the span of the generators.
    pub complement: Vec<TangentVector>,
}

/// Precomputed data shared by the individual tests.
pub struct Analysis {
    pub form: PeriodicForm,
    pub minimum: GeneralizedMin,
    pub domain: VoronoiDomain,
    /// `(Q^{-1}, 0)`.
    pub target: TangentVector,
    enumerator: Enumerator,
}

impl Analysis {
    pub fn new(x: &PeriodicForm) -> Result<Self> {
        let enumerator = Enumerator::new(x.q());
        let minimum = generalized_min_with(x, &enumerator);
        let domain = voronoi_domain_from(x, &minimum)?;
        let (_, inv) = det_and_inverse(x.q());
        Ok(Analysis {
            form: x.clone(),
            target: TangentVector::from_form(inv, x.m()),
            minimum,
            domain,
            enumerator,
        })
    }

    pub fn enumerator(&self) -> &Enumerator {
        &self.enumerator
    }
}

pub fn voronoi_domain(x: &PeriodicForm) -> Result<VoronoiDomain> {
    Ok(Analysis::new(x)?.domain)
}

pub fn voronoi_domain_from(x: &PeriodicForm, min: &GeneralizedMin) -> Result<VoronoiDomain> {
    if !min.lambda.is_positive() {
        return Err(Error::DegenerateMinimum);
    }
    let generators: Vec<TangentVector> = min.reps.iter().map(|r| gradient_p(x, r)).collect();
    let span = rank_span(x.d(), x.m(), &generators)?;
    Ok(VoronoiDomain {
        reps: min.reps.clone(),
        generators,
        ambient_dim: TangentVector::ambient_dim(x.d(), x.m()),
        rank: span.rank,
        complement: span.nullspace_basis,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Perfection {
    pub perfect: bool,
    pub rank: usize,
    pub ambient_dim: usize,
}

impl VoronoiDomain {
    pub fn perfection(&self) -> Perfection {
        Perfection {
            perfect: self.rank == self.ambient_dim,
            rank: self.rank,
            ambient_dim: self.ambient_dim,
        }
    }
}

pub fn is_m_perfect(x: &PeriodicForm) -> Result<Perfection> {
    Ok(voronoi_domain(x)?.perfection())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EutaxyStatus {
    /// `sum_g coefficients[g] * g = (Q^{-1}, 0)` with every coefficient positive.
    Interior { coefficients: Vec<Rational> },
    /// The target lies on a proper face; `face` indexes its generators and
    /// `coefficients` is a representation supported exactly on `face`.
    Boundary { face: Vec<usize>, coefficients: Vec<Rational> },
    /// `<separator, g> >= 0` for all generators, `<separator, target> < 0`.
    Outside { separator: TangentVector },
}

impl EutaxyStatus {
    pub fn tag(&self) -> &'static str {
        match self {
            EutaxyStatus::Interior { .. } => "Interior",
            EutaxyStatus::Boundary { .. } => "Boundary",
            EutaxyStatus::Outside { .. } => "Outside",
        }
    }
}

fn combination(gens: &[TangentVector], coeffs: &[Rational], d: usize, m: usize) -> TangentVector {
    let mut acc = TangentVector::zero(d, m);
    for (g, c) in gens.iter().zip(coeffs) {
        if !c.is_zero() {
            acc = acc.add(&g.scale(c));
        }
    }
    acc
}

fn weighted_dot(a: &[Rational], b: &[Rational], w: &[i64]) -> Rational {
    let mut s = Rational::zero();
    for ((x, y), &k) in a.iter().zip(b).zip(w) {
        if !x.is_zero() && !y.is_zero() {
            s += x * y * int(k);
        }
    }
    s
}

pub fn eutaxy_status(x: &PeriodicForm) -> Result<EutaxyStatus> {
    let a = Analysis::new(x)?;
    eutaxy_status_in(&a.domain, &a.target)
}

/// Solves `max t` subject to `sum_g beta_g g + t sum_g g = target`,
/// `beta, t >= 0`, so that `alpha = beta + t` maximizes the smallest
/// coefficient of a representation of `target`.
pub fn eutaxy_status_in(domain: &VoronoiDomain, target: &TangentVector) -> Result<EutaxyStatus> {
    let (d, m) = (target.d(), target.m());
    let gens = &domain.generators;
    let n = gens.len();
    let mut columns: Vec<Vec<Rational>> = gens.iter().map(TangentVector::coords).collect();
    let total = combination(gens, &vec![Rational::one(); n], d, m);
    columns.push(total.coords());
    let b = target.coords();
    let weights = TangentVector::coord_weights(d, m);

    let mut lp = match Lp::new(&columns, &b) {
        Phase1::Infeasible { farkas } => {
            let neg: Vec<Rational> = farkas.iter().map(|v| -v).collect();
            let separator = TangentVector::from_covector(d, m, &neg);
            let sc = separator.coords();
            let ok = columns.iter().all(|c| !weighted_dot(&sc, c, &weights).is_negative())
                && weighted_dot(&sc, &b, &weights).is_negative();
            if !ok {
                return Err(Error::CertificateCheck("separating functional failed verification".into()));
            }
            return Ok(EutaxyStatus::Outside { separator });
        }
        Phase1::Feasible(lp) => lp,
    };
    let mut objective = vec![Rational::zero(); n + 1];
    objective[n] = Rational::one();
    let opt = lp.maximize(&objective).expect("the Voronoi domain is a pointed cone");
    let tstar = opt.value.clone();
    if tstar.is_positive() {
        let coefficients: Vec<Rational> = opt.x[..n].iter().map(|b| b + &tstar).collect();
        check_representation(gens, &coefficients, target)?;
        return Ok(EutaxyStatus::Interior { coefficients });
    }

    // minimal face: union of supports over all representations
    let mut seen = vec![false; n];
    let mut solutions: Vec<Vec<Rational>> = vec![opt.x[..n].to_vec()];
    mark_support(&opt.x[..n], &mut seen);
    for k in 0..n {
        if seen[k] {
            continue;
        }
        let mut c = vec![Rational::zero(); n + 1];
        c[k] = Rational::one();
        let sol = lp.maximize(&c).expect("coefficients are bounded on a pointed cone");
        if sol.value.is_positive() {
            mark_support(&sol.x[..n], &mut seen);
            solutions.push(sol.x[..n].to_vec());
        }
    }
    let count = int(solutions.len() as i64);
    let coefficients: Vec<Rational> = (0..n)
        .map(|k| solutions.iter().map(|s| &s[k]).sum::<Rational>() / &count)
        .collect();
    check_representation(gens, &coefficients, target)?;
    let face = (0..n).filter(|&k| seen[k]).collect();
    Ok(EutaxyStatus::Boundary { face, coefficients })
}

fn mark_support(x: &[Rational], seen: &mut [bool]) {
    for (s, v) in seen.iter_mut().zip(x) {
        if v.is_positive() {
            *s = true;
        }
    }
}

fn check_representation(gens: &[TangentVector], coeffs: &[Rational], target: &TangentVector) -> Result<()> {
    if combination(gens, coeffs, target.d(), target.m()) != *target || coeffs.iter().any(Signed::is_negative) {
        return Err(Error::CertificateCheck("eutaxy representation failed verification".into()));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrongEutaxy {
    pub strongly_eutactic: bool,
    /// `Q^{-1} = alpha * sum_{x in Min Q} x x^t` (both signs summed).
    pub alpha: Option<Rational>,
}

pub fn strong_eutaxy(q: &Pqf) -> StrongEutaxy {
    strong_eutaxy_from(q, &Enumerator::new(q).shortest())
}

pub fn strong_eutaxy_from(q: &Pqf, svp: &ShortVecResult) -> StrongEutaxy {
    let d = q.dim();
    let mut acc = vec![vec![0i128; d]; d];
    for x in &svp.vectors {
        for i in 0..d {
            if x[i] == 0 {
                continue;
            }
            for j in 0..d {
                acc[i][j] += 2 * (x[i] as i128) * (x[j] as i128);
            }
        }
    }
    // S Q = c I  <=>  Q^{-1} = S / c
    let qr = q.form().to_rows();
    let mut c: Option<Rational> = None;
    for i in 0..d {
        for j in 0..d {
            let v: Rational = (0..d)
                .filter(|&k| acc[i][k] != 0)
                .map(|k| Rational::from_integer(BigInt::from(acc[i][k])) * &qr[k][j])
                .sum();
            if i != j {
                if !v.is_zero() {
                    return StrongEutaxy { strongly_eutactic: false, alpha: None };
                }
            } else {
                match &c {
                    None => c = Some(v),
                    Some(c0) if *c0 != v => {
                        return StrongEutaxy { strongly_eutactic: false, alpha: None };
                    }
                    _ => {}
                }
            }
        }
    }
    match c {
        Some(c) if c.is_positive() => StrongEutaxy {
            strongly_eutactic: true,
            alpha: Some(c.recip()),
        },
        _ => StrongEutaxy { strongly_eutactic: false, alpha: None },
    }
}

/// An exactly verified improving direction with a step that increases density.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Direction {
    pub n: TangentVector,
    pub epsilon: Rational,
    pub center_density_squared_before: Rational,
    pub center_density_squared_after: Rational,
}

pub fn improving_direction(x: &PeriodicForm) -> Result<Option<Direction>> {
    let a = Analysis::new(x)?;
    improving_direction_in(&a)
}

pub fn improving_direction_in(a: &Analysis) -> Result<Option<Direction>> {
    let Some(n) = projected_direction(&a.domain, &a.target)? else {
        return Ok(None);
    };
    let before = density_from_min(&a.form, &a.minimum.lambda).center_density_squared;
    let mut eps = Rational::one();
    for _ in 0..64 {
        if let Ok(y) = a.form.perturbed(&n, &eps) {
            let after = crate::periodic::density(&y).center_density_squared;
            if after > before {
                return Ok(Some(Direction {
                    n,
                    epsilon: eps,
                    center_density_squared_before: before,
                    center_density_squared_after: after,
                }));
            }
        }
        eps /= int(2);
    }
    Err(Error::CertificateCheck("no step along the improving direction increased density".into()))
}

/// `N = proj_V(target) - target` when `target` lies outside `V`, verified to
/// satisfy `<g, N> >= 0` for every generator and `<target, N> < 0`.
pub fn projected_direction(domain: &VoronoiDomain, target: &TangentVector) -> Result<Option<TangentVector>> {
    let (d, m) = (target.d(), target.m());
    let weights = TangentVector::coord_weights(d, m);
    let mut coords: Vec<Vec<Rational>> = domain.generators.iter().map(TangentVector::coords).collect();
    coords.sort();
    coords.dedup();
    let b = target.coords();

    let check = |nv: &[Rational]| -> bool {
        coords.iter().all(|g| !weighted_dot(g, nv, &weights).is_negative()) && weighted_dot(&b, nv, &weights).is_negative()
    };

    // floating point active set
    let wf: Vec<f64> = weights.iter().map(|&w| w as f64).collect();
    let cf: Vec<Vec<f64>> = coords.iter().map(|c| c.iter().map(to_f64).collect()).collect();
    let bf: Vec<f64> = b.iter().map(to_f64).collect();
    let fdot = |x: &[f64], y: &[f64]| x.iter().zip(y).zip(&wf).map(|((a, b), w)| a * b * w).sum::<f64>();
    let gf: Vec<Vec<f64>> = cf.iter().map(|x| cf.iter().map(|y| fdot(x, y)).collect()).collect();
    let hf: Vec<f64> = cf.iter().map(|x| fdot(x, &bf)).collect();
    if let Some(alpha) = nnls::nnls(&gf, &hf) {
        let mut active: Vec<usize> = (0..coords.len()).filter(|&k| alpha[k] > 0.0).collect();
        active.sort_by(|&x, &y| alpha[y].total_cmp(&alpha[x]));
        let basis = independent_subset(&coords, &active);
        let nv = exact_residual(&coords, &basis, &b, &weights);
        if nv.iter().all(Zero::is_zero) {
            return Ok(None);
        }
        if check(&nv) {
            return Ok(Some(TangentVector::from_coords(d, m, &nv)));
        }
    }

    // exact fallback
    let g: Vec<Vec<Rational>> = coords.iter().map(|x| coords.iter().map(|y| weighted_dot(x, y, &weights)).collect()).collect();
    let h: Vec<Rational> = coords.iter().map(|x| weighted_dot(x, &b, &weights)).collect();
    let alpha = nnls::nnls(&g, &h).ok_or_else(|| Error::CertificateCheck("exact projection failed".into()))?;
    let mut nv: Vec<Rational> = b.iter().map(|v| -v).collect();
    for (c, a) in coords.iter().zip(&alpha) {
        if a.is_zero() {
            continue;
        }
        for (t, x) in nv.iter_mut().zip(c) {
            *t += a * x;
        }
    }
    if nv.iter().all(Zero::is_zero) {
        return Ok(None);
    }
    if !check(&nv) {
        return Err(Error::CertificateCheck("projected direction failed verification".into()));
    }
    Ok(Some(TangentVector::from_coords(d, m, &nv)))
}

/// Greedy maximal linearly independent subset of `vs[idx]`, in order.
fn independent_subset(vs: &[Vec<Rational>], idx: &[usize]) -> Vec<usize> {
    let mut reduced: Vec<(usize, Vec<Rational>)> = Vec::new();
    let mut out = Vec::new();
    for &k in idx {
        let mut v = vs[k].clone();
        for (p, r) in &reduced {
            if !v[*p].is_zero() {
                let f = v[*p].clone();
                for (a, b) in v.iter_mut().zip(r) {
                    if !b.is_zero() {
                        *a -= &f * b;
                    }
                }
            }
        }
        if let Some(p) = v.iter().position(|a| !a.is_zero()) {
            let inv = v[p].recip();
            v.iter_mut().for_each(|a| *a *= &inv);
            for (_, r) in reduced.iter_mut() {
                if !r[p].is_zero() {
                    let f = r[p].clone();
                    for (a, b) in r.iter_mut().zip(&v) {
                        if !b.is_zero() {
                            *a -= &f * b;
                        }
                    }
                }
            }
            reduced.push((p, v));
            out.push(k);
        }
    }
    out
}

/// `proj_{span(vs[basis])}(b) - b` in weighted coordinates.
fn exact_residual(vs: &[Vec<Rational>], basis: &[usize], b: &[Rational], w: &[i64]) -> Vec<Rational> {
    let mut nv: Vec<Rational> = b.iter().map(|v| -v).collect();
    if basis.is_empty() {
        return nv;
    }
    let g: Vec<Vec<Rational>> = basis
        .iter()
        .map(|&x| basis.iter().map(|&y| weighted_dot(&vs[x], &vs[y], w)).collect())
        .collect();
    let h: Vec<Rational> = basis.iter().map(|&x| weighted_dot(&vs[x], b, w)).collect();
    let z = solve_many(&g, &[h]).expect("independent vectors have a nonsingular Gram matrix");
    for (k, &x) in basis.iter().enumerate() {
        let a = &z[0][k];
        for (t, v) in nv.iter_mut().zip(&vs[x]) {
            *t += a * v;
        }
    }
    nv
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UncertaintySpace {
    /// Basis of the linear hull of `U(X)`.
    pub basis: Vec<TangentVector>,
    /// Whether `U(X)` is itself a linear subspace.
    pub is_subspace: bool,
}

pub fn uncertainty_space(x: &PeriodicForm) -> Result<UncertaintySpace> {
    let a = Analysis::new(x)?;
    let status = eutaxy_status_in(&a.domain, &a.target)?;
    uncertainty_space_in(&a.domain, &status)
}

/// For `Interior`, `U = V^perp`. For `Boundary`, `U` is the face of the dual
/// cone orthogonal to `F(X)`; its linear hull is `F(X)^perp` because the
/// dual face has dimension `ambient - dim span F(X)`.
pub fn uncertainty_space_in(domain: &VoronoiDomain, status: &EutaxyStatus) -> Result<UncertaintySpace> {
    match status {
        EutaxyStatus::Outside { .. } => Err(Error::OutsideVoronoiDomain),
        EutaxyStatus::Interior { .. } => Ok(UncertaintySpace {
            basis: domain.complement.clone(),
            is_subspace: true,
        }),
        EutaxyStatus::Boundary { face, .. } => {
            let (d, m) = match domain.generators.first() {
                Some(g) => (g.d(), g.m()),
                None => return Err(Error::DegenerateMinimum),
            };
            let fgens: Vec<TangentVector> = face.iter().map(|&k| domain.generators[k].clone()).collect();
            let span = rank_span(d, m, &fgens)?;
            // U is linear iff every generator already lies in span F(X)
            Ok(UncertaintySpace {
                basis: span.nullspace_basis,
                is_subspace: span.rank == domain.rank,
            })
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TranslationalCriterion {
    pub holds: bool,
    /// A minimal pair `(i, j)` whose relative position every direction in
    /// `U(X)` preserves, with `Q^N = 0`.
    pub witness: Option<(usize, usize)>,
}

pub fn translational_criterion(x: &PeriodicForm, u: &UncertaintySpace) -> TranslationalCriterion {
    let en = Enumerator::new(x.q());
    translational_criterion_from(&generalized_min_with(x, &en).reps, u)
}

pub fn translational_criterion_from(reps: &[MinRep], u: &UncertaintySpace) -> TranslationalCriterion {
    let mut pairs: Vec<(usize, usize)> = reps.iter().map(|r| (r.i, r.j)).collect();
    pairs.sort();
    pairs.dedup();
    if !u.basis.iter().all(|n| n.qpart.is_zero()) {
        return TranslationalCriterion { holds: false, witness: None };
    }
    let witness = pairs
        .into_iter()
        .find(|&(i, j)| u.basis.iter().all(|n| n.translation(i) == n.translation(j)));
    TranslationalCriterion {
        holds: witness.is_some(),
        witness,
    }
}

pub fn floating_components(x: &PeriodicForm) -> Result<Vec<Vec<usize>>> {
    let en = Enumerator::new(x.q());
    let min = generalized_min_with(x, &en);
    if !min.lambda.is_positive() {
        return Err(Error::DegenerateMinimum);
    }
    Ok(floating_components_from(x.m(), &min.reps))
}

/// Connected components of the touching graph on `{1..m}`.
pub fn floating_components_from(m: usize, reps: &[MinRep]) -> Vec<Vec<usize>> {
    fn find(p: &mut [usize], a: usize) -> usize {
        let mut r = a;
        while p[r] != r {
            r = p[r];
        }
        let mut c = a;
        while p[c] != r {
            let next = p[c];
            p[c] = r;
            c = next;
        }
        r
    }
    let mut parent: Vec<usize> = (0..=m).collect();
    for r in reps.iter().filter(|r| r.i != r.j) {
        let (a, b) = (find(&mut parent, r.i), find(&mut parent, r.j));
        if a != b {
            parent[a.max(b)] = a.min(b);
        }
    }
    let mut comps: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for i in 1..=m {
        let root = find(&mut parent, i);
        comps.entry(root).or_default().push(i);
    }
    comps.into_values().collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    IsolatedExtreme,
    ExtremeTranslational,
    NotExtreme,
    Inconclusive,
}

impl Verdict {
    pub fn name(self) -> &'static str {
        match self {
            Verdict::IsolatedExtreme => "IsolatedExtreme",
            Verdict::ExtremeTranslational => "ExtremeTranslational",
            Verdict::NotExtreme => "NotExtreme",
            Verdict::Inconclusive => "Inconclusive",
        }
    }

    pub fn is_extreme(self) -> bool {
        matches!(self, Verdict::IsolatedExtreme | Verdict::ExtremeTranslational)
    }
}

#[derive(Clone, Debug)]
pub struct Certificate {
    pub verdict: Verdict,
    pub lambda: Rational,
    pub reps: Vec<MinRep>,
    pub perfection: Perfection,
    pub eutaxy: EutaxyStatus,
    pub improving: Option<Direction>,
    pub uncertainty: Option<UncertaintySpace>,
    pub translational: Option<TranslationalCriterion>,
    pub floating: Vec<Vec<usize>>,
    /// Only computed for lattices (`m = 1`).
    pub strong_eutaxy: Option<StrongEutaxy>,
}

impl Certificate {
    pub fn is_floating(&self) -> bool {
        self.floating.len() > 1
    }
}

pub fn certify(x: &PeriodicForm) -> Result<Certificate> {
    certify_analysis(&Analysis::new(x)?)
}

pub fn certify_analysis(a: &Analysis) -> Result<Certificate> {
    let perfection = a.domain.perfection();
    let eutaxy = eutaxy_status_in(&a.domain, &a.target)?;
    let floating = floating_components_from(a.form.m(), &a.minimum.reps);
    let strong = (a.form.m() == 1).then(|| strong_eutaxy_from(a.form.q(), &a.enumerator.shortest()));
    let mut cert = Certificate {
        verdict: Verdict::Inconclusive,
        lambda: a.minimum.lambda.clone(),
        reps: a.minimum.reps.clone(),
        perfection,
        eutaxy: eutaxy.clone(),
        improving: None,
        uncertainty: None,
        translational: None,
        floating,
        strong_eutaxy: strong,
    };
    if let EutaxyStatus::Outside { .. } = eutaxy {
        cert.improving = improving_direction_in(a)?;
        if cert.improving.is_none() {
            return Err(Error::CertificateCheck("outside the domain but no improving direction".into()));
        }
        cert.verdict = Verdict::NotExtreme;
        return Ok(cert);
    }
    let u = uncertainty_space_in(&a.domain, &eutaxy)?;
    let crit = translational_criterion_from(&a.minimum.reps, &u);
    cert.verdict = if matches!(eutaxy, EutaxyStatus::Interior { .. }) && perfection.perfect {
        Verdict::IsolatedExtreme
    } else if crit.holds {
        Verdict::ExtremeTranslational
    } else {
        Verdict::Inconclusive
    };
    cert.uncertainty = Some(u);
    cert.translational = Some(crit);
    Ok(cert)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TheoremCheck {
    pub applies: bool,
    pub perfection: Perfection,
    pub strong_eutaxy: StrongEutaxy,
    pub min_classes: usize,
}

/// Perfect and strongly eutactic lattices are periodic extreme. Perfection is
/// decided by the rank of the rank-one forms `x x^t`, `x` in `Min Q`.
pub fn periodic_extreme_by_theorem(q: &Pqf) -> TheoremCheck {
    let svp = Enumerator::new(q).shortest();
    periodic_extreme_from(q, &svp)
}

pub fn periodic_extreme_from(q: &Pqf, svp: &ShortVecResult) -> TheoremCheck {
    let d = q.dim();
    let ambient = d * (d + 1) / 2;
    let rank = rank_of_rank_one_forms(d, &svp.vectors);
    let perfection = Perfection {
        perfect: rank == ambient,
        rank,
        ambient_dim: ambient,
    };
    let strong = strong_eutaxy_from(q, svp);
    TheoremCheck {
        applies: perfection.perfect && strong.strongly_eutactic,
        perfection,
        strong_eutaxy: strong,
        min_classes: svp.vectors.len(),
    }
}

/// `(Q^{-1}, 0)` for `X`.
pub fn target(x: &PeriodicForm) -> TangentVector {
    TangentVector::from_form(det_and_inverse(x.q()).1, x.m())
}
