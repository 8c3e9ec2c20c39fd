//! Periodic forms, their generalized minimum and packing density.

use num_traits::{One, Signed, Zero};

use crate::lattice::Enumerator;
use crate::linalg::{dot, Pqf, SymForm, TangentVector};
use crate::rational::{int, ln_abs, split_mod_one, Rational};
use crate::{Error, Result};

/// `X = (Q, t)`: Gram form of the sublattice basis plus `m - 1` translation
/// columns in basis coordinates, each reduced into `[0, 1)^d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodicForm {
    q: Pqf,
    t: Vec<Vec<Rational>>,
}

impl PeriodicForm {
    pub fn new(q: Pqf, t: Vec<Vec<Rational>>) -> Result<Self> {
        let d = q.dim();
        if let Some(col) = t.iter().find(|c| c.len() != d) {
            return Err(Error::DimensionMismatch(format!(
                "translation of length {} for a form of dimension {d}",
                col.len()
            )));
        }
        let t = t
            .into_iter()
            .map(|c| c.iter().map(|x| split_mod_one(x).1).collect())
            .collect();
        Ok(PeriodicForm { q, t })
    }

    pub fn lattice(q: Pqf) -> Self {
        PeriodicForm { q, t: Vec::new() }
    }

    pub fn d(&self) -> usize {
        self.q.dim()
    }

    pub fn m(&self) -> usize {
        self.t.len() + 1
    }

    pub fn q(&self) -> &Pqf {
        &self.q
    }

    /// The stored columns `t_1, ..., t_{m-1}`.
    pub fn translations(&self) -> &[Vec<Rational>] {
        &self.t
    }

    /// `t_i` for `1 <= i <= m`, with `t_m = 0`.
    pub fn translation(&self, i: usize) -> Result<Vec<Rational>> {
        let m = self.m();
        if i == 0 || i > m {
            return Err(Error::IndexOutOfRange { index: i, m });
        }
        Ok(if i == m {
            vec![Rational::zero(); self.d()]
        } else {
            self.t[i - 1].clone()
        })
    }

    /// `X + eps N`, or `NotPositiveDefinite` if the form leaves the cone.
    pub fn perturbed(&self, n: &TangentVector, eps: &Rational) -> Result<Self> {
        self.check_tangent(n)?;
        let q = Pqf::new(self.q.form().add(&n.qpart.scale(eps)))?;
        let t = self
            .t
            .iter()
            .zip(&n.tpart)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + eps * y).collect())
            .collect();
        PeriodicForm::new(q, t)
    }

    /// `X` as a point of the tangent space coordinates.
    pub fn as_tangent(&self) -> TangentVector {
        TangentVector {
            qpart: self.q.form().clone(),
            tpart: self.t.clone(),
        }
    }

    fn check_tangent(&self, n: &TangentVector) -> Result<()> {
        if n.d() != self.d() || n.m() != self.m() {
            return Err(Error::DimensionMismatch(format!(
                "tangent vector of shape ({}, {}) at a form of shape ({}, {})",
                n.d(),
                n.m(),
                self.d(),
                self.m()
            )));
        }
        Ok(())
    }

    fn difference(&self, i: usize, j: usize) -> Result<Vec<Rational>> {
        let ti = self.translation(i)?;
        let tj = self.translation(j)?;
        Ok(ti.iter().zip(&tj).map(|(a, b)| a - b).collect())
    }
}

/// Canonical representative `(i, j, v)` of a pair `{(i,j,v), (j,i,-v)}` with
/// `w = t_i - t_j - v`; indices are 1-based.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MinRep {
    pub i: usize,
    pub j: usize,
    pub v: Vec<i64>,
    pub w: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneralizedMin {
    pub lambda: Rational,
    /// Sorted by `(i, j, v)`. Lattice vectors appear once for every `i`.
    pub reps: Vec<MinRep>,
}

impl GeneralizedMin {
    /// Number of translate pairs `i < j` that realize the minimum.
    pub fn cross_reps(&self) -> impl Iterator<Item = &MinRep> {
        self.reps.iter().filter(|r| r.i != r.j)
    }
}

fn lattice_rep(i: usize, x: &[i64]) -> MinRep {
    // w = -v with w's first nonzero coordinate positive
    MinRep {
        i,
        j: i,
        v: x.iter().map(|&a| -a).collect(),
        w: x.iter().map(|&a| int(a)).collect(),
    }
}

fn cross_rep(i: usize, j: usize, c: &[Rational], x: &[i64]) -> MinRep {
    MinRep {
        i,
        j,
        v: x.to_vec(),
        w: c.iter().zip(x).map(|(a, &b)| a - int(b)).collect(),
    }
}

/// `lambda(X) = min Q[t_i - t_j - v]`, with all canonical representations.
pub fn generalized_min(x: &PeriodicForm) -> GeneralizedMin {
    generalized_min_with(x, &Enumerator::new(x.q()))
}

pub fn generalized_min_with(x: &PeriodicForm, en: &Enumerator) -> GeneralizedMin {
    let m = x.m();
    let svp = en.shortest();
    let mut lambda = svp.min.clone();
    let mut cross: Vec<MinRep> = Vec::new();
    for i in 1..=m {
        for j in i + 1..=m {
            let c = x.difference(i, j).expect("indices in range");
            let r = en.closest(&c);
            if r.min > lambda {
                continue;
            }
            if r.min < lambda {
                lambda = r.min.clone();
                cross.clear();
            }
            cross.extend(r.vectors.iter().map(|v| cross_rep(i, j, &c, v)));
        }
    }
    let mut reps = cross;
    if svp.min == lambda {
        for i in 1..=m {
            reps.extend(svp.vectors.iter().map(|v| lattice_rep(i, v)));
        }
    }
    reps.sort();
    GeneralizedMin { lambda, reps }
}

/// Every canonical triple with `p_{i,j,v}(X) <= bound`, with its value.
pub fn representations_within(
    x: &PeriodicForm,
    en: &Enumerator,
    bound: &Rational,
) -> Vec<(MinRep, Rational)> {
    let m = x.m();
    let mut out = Vec::new();
    let short = en.short_within(bound);
    for i in 1..=m {
        out.extend(short.iter().map(|(v, val)| (lattice_rep(i, v), val.clone())));
        for j in i + 1..=m {
            let c = x.difference(i, j).expect("indices in range");
            for (v, val) in en.close_within(&c, bound) {
                out.push((cross_rep(i, j, &c, &v), val));
            }
        }
    }
    out.sort();
    out
}

#[derive(Clone, Debug, PartialEq)]
pub struct DensityReport {
    pub lambda: Rational,
    pub det: Rational,
    pub m: usize,
    /// `m^2 lambda^d / (4^d det)`.
    pub center_density_squared: Rational,
    /// Center density `delta / vol B^d`.
    pub delta_over_ball: f64,
    pub delta: f64,
}

/// Volume of the unit ball in `R^d`.
pub fn ball_volume(d: usize) -> f64 {
    let mut v = if d % 2 == 0 { 1.0 } else { 2.0 };
    let mut k = if d % 2 == 0 { 2 } else { 3 };
    while k <= d {
        v *= 2.0 * std::f64::consts::PI / k as f64;
        k += 2;
    }
    v
}

pub fn center_density_squared(lambda: &Rational, det: &Rational, d: usize, m: usize) -> Rational {
    let num = int(m as i64).pow(2) * lambda.pow(d as i32);
    num / (int(4).pow(d as i32) * det)
}

pub fn density(x: &PeriodicForm) -> DensityReport {
    density_from_min(x, &generalized_min(x).lambda)
}

pub fn density_from_min(x: &PeriodicForm, lambda: &Rational) -> DensityReport {
    let d = x.d();
    let m = x.m();
    let det = x.q().det();
    let cds = center_density_squared(lambda, &det, d, m);
    let delta_over_ball = if cds.is_zero() {
        0.0
    } else {
        (0.5 * ln_abs(&cds)).exp()
    };
    DensityReport {
        lambda: lambda.clone(),
        det,
        m,
        center_density_squared: cds,
        delta_over_ball,
        delta: delta_over_ball * ball_volume(d),
    }
}

/// `p_{i,j,v}(X) = Q[t_i - t_j - v]`.
pub fn eval_p(x: &PeriodicForm, i: usize, j: usize, v: &[i64]) -> Result<Rational> {
    if v.len() != x.d() {
        return Err(Error::DimensionMismatch(format!(
            "vector of length {} for dimension {}",
            v.len(),
            x.d()
        )));
    }
    let c = x.difference(i, j)?;
    let w: Vec<Rational> = c.iter().zip(v).map(|(a, &b)| a - int(b)).collect();
    Ok(x.q().form().eval(&w))
}

/// `grad p = (w w^t; 2Qw in column i, -2Qw in column j)`, columns for index `m` dropped.
pub fn gradient_p(x: &PeriodicForm, rep: &MinRep) -> TangentVector {
    let m = x.m();
    let mut g = TangentVector::from_form(SymForm::rank_one(&rep.w), m);
    if rep.i != rep.j {
        let qw: Vec<Rational> = x.q().form().apply(&rep.w).iter().map(|a| a * int(2)).collect();
        if rep.i != m {
            g.tpart[rep.i - 1] = qw.clone();
        }
        if rep.j != m {
            g.tpart[rep.j - 1] = qw.iter().map(|a| -a).collect();
        }
    }
    g
}

/// `N^t Hess(p) N = 2 Q[u] + 4 u^t Q^N w` with `u = t^N_i - t^N_j`.
pub fn hessian_quadratic(x: &PeriodicForm, rep: &MinRep, n: &TangentVector) -> Result<Rational> {
    x.check_tangent(n)?;
    let ti = n.translation(rep.i);
    let tj = n.translation(rep.j);
    let u: Vec<Rational> = ti.iter().zip(&tj).map(|(a, b)| a - b).collect();
    let quad = x.q().form().eval(&u) * int(2);
    let mixed = dot(&u, &n.qpart.apply(&rep.w)) * int(4);
    Ok(quad + mixed)
}

/// `(Q / lambda(X), t)`.
pub fn rescale_to_min_one(x: &PeriodicForm) -> Result<PeriodicForm> {
    let lambda = generalized_min(x).lambda;
    rescale_by(x, &lambda)
}

pub fn rescale_by(x: &PeriodicForm, lambda: &Rational) -> Result<PeriodicForm> {
    if !lambda.is_positive() {
        return Err(Error::DegenerateMinimum);
    }
    Ok(PeriodicForm {
        q: x.q().scale(&(Rational::one() / lambda))?,
        t: x.t.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::shortest_vectors;
    use crate::linalg::inner;
    use crate::rational::{rat, to_f64};
    use proptest::prelude::*;

    fn one_dim(t: Rational) -> PeriodicForm {
        PeriodicForm::new(Pqf::new(SymForm::identity(1)).unwrap(), vec![vec![t]]).unwrap()
    }

    fn a2() -> Pqf {
        Pqf::from_i64_rows(&[vec![2, 1], vec![1, 2]]).unwrap()
    }

    #[test]
    fn translations_reduced_mod_one() {
        let x = one_dim(rat(-3, 2));
        assert_eq!(x.translations()[0][0], rat(1, 2));
        assert_eq!(x.translation(2).unwrap(), vec![int(0)]);
        assert!(x.translation(3).is_err());
    }

    #[test]
    fn lattice_min_matches_svp() {
        let g = generalized_min(&PeriodicForm::lattice(a2()));
        assert_eq!(g.lambda, int(2));
        assert_eq!(g.reps.len(), 3);
        assert!(g.reps.iter().all(|r| r.i == 1 && r.j == 1));
    }

    #[test]
    fn half_shift_in_one_dimension() {
        let x = one_dim(rat(1, 2));
        let g = generalized_min(&x);
        assert_eq!(g.lambda, rat(1, 4));
        let got: Vec<(usize, usize, Vec<i64>, Vec<Rational>)> =
            g.reps.iter().map(|r| (r.i, r.j, r.v.clone(), r.w.clone())).collect();
        assert_eq!(
            got,
            vec![
                (1, 2, vec![0], vec![rat(1, 2)]),
                (1, 2, vec![1], vec![rat(-1, 2)]),
            ]
        );
    }

    #[test]
    fn coinciding_translates_have_zero_min() {
        let x = PeriodicForm::new(a2(), vec![vec![int(0), int(1)]]).unwrap();
        let g = generalized_min(&x);
        assert_eq!(g.lambda, int(0));
        let rep = density(&x);
        assert_eq!(rep.center_density_squared, int(0));
        assert_eq!(rep.delta, 0.0);
        assert_eq!(rescale_to_min_one(&x), Err(Error::DegenerateMinimum));
    }

    #[test]
    fn cubic_lattice_density() {
        for d in 1..=6 {
            let r = density(&PeriodicForm::lattice(Pqf::new(SymForm::identity(d)).unwrap()));
            assert!((r.delta_over_ball - 0.5f64.powi(d as i32)).abs() < 1e-15);
        }
        let r = density(&PeriodicForm::lattice(a2()));
        assert_eq!(r.center_density_squared, rat(1, 12));
        assert!((r.delta_over_ball - 0.288675134594813).abs() < 1e-12);
    }

    #[test]
    fn ball_volumes() {
        let pi = std::f64::consts::PI;
        assert!((ball_volume(1) - 2.0).abs() < 1e-15);
        assert!((ball_volume(2) - pi).abs() < 1e-15);
        assert!((ball_volume(3) - 4.0 * pi / 3.0).abs() < 1e-14);
        assert!((ball_volume(8) - pi.powi(4) / 24.0).abs() < 1e-13);
    }

    #[test]
    fn eval_p_examples() {
        let x = one_dim(rat(1, 2));
        assert_eq!(eval_p(&x, 1, 2, &[0]).unwrap(), rat(1, 4));
        assert_eq!(eval_p(&x, 2, 1, &[0]).unwrap(), rat(1, 4));
        assert_eq!(eval_p(&x, 1, 1, &[3]).unwrap(), int(9));
        assert!(eval_p(&x, 1, 3, &[0]).is_err());
    }

    #[test]
    fn gradient_example() {
        let x = one_dim(rat(1, 2));
        let rep = generalized_min(&x).reps[0].clone();
        let g = gradient_p(&x, &rep);
        assert_eq!(g.qpart.get(0, 0), &rat(1, 4));
        assert_eq!(g.tpart[0], vec![int(1)]);
    }

    #[test]
    fn hessian_vanishes_for_common_shift() {
        let q = Pqf::new(SymForm::identity(2)).unwrap();
        let x = PeriodicForm::new(q, vec![vec![rat(1, 2), int(0)], vec![int(0), rat(1, 2)]]).unwrap();
        let rep = MinRep { i: 1, j: 2, v: vec![0, 0], w: vec![rat(1, 2), rat(-1, 2)] };
        let n = TangentVector {
            qpart: SymForm::zero(2),
            tpart: vec![vec![int(1), int(2)], vec![int(1), int(2)]],
        };
        assert_eq!(hessian_quadratic(&x, &rep, &n).unwrap(), int(0));
    }

    #[test]
    fn rescale_normalizes() {
        let q = Pqf::from_i64_rows(&[vec![8, 4], vec![4, 8]]).unwrap();
        let x = PeriodicForm::new(q, vec![vec![rat(1, 3), rat(1, 3)]]).unwrap();
        let before = generalized_min(&x);
        let y = rescale_to_min_one(&x).unwrap();
        let after = generalized_min(&y);
        assert_eq!(after.lambda, int(1));
        let idx = |g: &GeneralizedMin| g.reps.iter().map(|r| (r.i, r.j, r.v.clone())).collect::<Vec<_>>();
        assert_eq!(idx(&before), idx(&after));
        assert_eq!(density(&x).center_density_squared, density(&y).center_density_squared);
    }

    fn gradient_sum_is_2m_wwt(x: &PeriodicForm) {
        let g = generalized_min(x);
        let m = x.m();
        // expand every canonical triple into both signs and group by +-w
        let mut groups: std::collections::BTreeMap<Vec<Rational>, TangentVector> = Default::default();
        for rep in &g.reps {
            for sign in [1i64, -1] {
                let (i, j, w) = if sign == 1 {
                    (rep.i, rep.j, rep.w.clone())
                } else {
                    (rep.j, rep.i, rep.w.iter().map(|a| -a).collect())
                };
                let r = MinRep { i, j, v: vec![], w: w.clone() };
                let grad = gradient_p(x, &r);
                let key = {
                    let mut k = w;
                    if k.iter().find(|a| !a.is_zero()).is_some_and(|a| a.is_negative()) {
                        k.iter_mut().for_each(|a| *a = -a.clone());
                    }
                    k
                };
                let entry = groups.entry(key).or_insert_with(|| TangentVector::zero(x.d(), m));
                *entry = entry.add(&grad);
            }
        }
        for (w, sum) in groups {
            let expect = TangentVector::from_form(SymForm::rank_one(&w).scale(&int(2 * m as i64)), m);
            assert_eq!(sum, expect);
        }
    }

    #[test]
    fn gradient_sum_identity_on_a_lattice() {
        // Z^2 as the index 2 sublattice 2Z x Z plus a shift by half a basis vector
        let q = Pqf::from_i64_rows(&[vec![4, 0], vec![0, 1]]).unwrap();
        let x = PeriodicForm::new(q, vec![vec![rat(1, 2), int(0)]]).unwrap();
        assert_eq!(generalized_min(&x).lambda, int(1));
        gradient_sum_is_2m_wwt(&x);
        // A2 as the four cosets of 2 A2
        let q = Pqf::from_i64_rows(&[vec![8, 4], vec![4, 8]]).unwrap();
        let x = PeriodicForm::new(
            q,
            vec![
                vec![rat(1, 2), int(0)],
                vec![int(0), rat(1, 2)],
                vec![rat(1, 2), rat(1, 2)],
            ],
        )
        .unwrap();
        assert_eq!(generalized_min(&x).lambda, int(2));
        gradient_sum_is_2m_wwt(&x);
    }

    fn brute_min(x: &PeriodicForm) -> (Rational, Vec<(usize, usize, Vec<i64>)>) {
        let d = x.d();
        let m = x.m();
        let mut best: Option<Rational> = None;
        let mut arg = Vec::new();
        let range: Vec<i64> = (-10..=10).collect();
        let mut vs: Vec<Vec<i64>> = vec![vec![]];
        for _ in 0..d {
            vs = vs
                .into_iter()
                .flat_map(|v| range.iter().map(move |&a| [v.clone(), vec![a]].concat()))
                .collect();
        }
        for i in 1..=m {
            for j in i..=m {
                for v in &vs {
                    if i == j {
                        let first = v.iter().find(|&&a| a != 0);
                        // canonical: w = -v with first nonzero positive
                        if first.is_none_or(|&a| a > 0) {
                            continue;
                        }
                    }
                    let val = eval_p(x, i, j, v).unwrap();
                    if best.as_ref().is_none_or(|b| &val < b) {
                        best = Some(val);
                        arg = vec![(i, j, v.clone())];
                    } else if best.as_ref() == Some(&val) {
                        arg.push((i, j, v.clone()));
                    }
                }
            }
        }
        arg.sort();
        (best.unwrap(), arg)
    }

    fn small_rat() -> impl Strategy<Value = Rational> {
        (-8i64..=8, 1i64..=8).prop_map(|(n, d)| rat(n, d))
    }

    fn random_form() -> impl Strategy<Value = PeriodicForm> {
        (1usize..=3, 1usize..=3)
            .prop_flat_map(|(d, m)| {
                (
                    proptest::collection::vec(proptest::collection::vec(small_rat(), d), d),
                    proptest::collection::vec(proptest::collection::vec(small_rat(), d), m - 1),
                )
            })
            .prop_filter_map("not positive definite", |(b, t)| {
                // Q = B^t B + I/8 keeps entries small and positive definite
                let d = b.len();
                let mut rows = vec![vec![Rational::zero(); d]; d];
                for i in 0..d {
                    for j in 0..d {
                        let s: Rational = (0..d).map(|k| &b[k][i] * &b[k][j]).sum();
                        rows[i][j] = s + if i == j { rat(1, 8) } else { int(0) };
                    }
                }
                let q = Pqf::new(SymForm::from_rows(&rows).ok()?).ok()?;
                // keep minima within the brute force box
                if (0..d).any(|i| q.pivots()[i] < rat(1, 64)) {
                    return None;
                }
                PeriodicForm::new(q, t).ok()
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn min_matches_brute_force(x in random_form()) {
            let g = generalized_min(&x);
            let (bmin, barg) = brute_min(&x);
            prop_assert_eq!(&g.lambda, &bmin);
            let got: Vec<(usize, usize, Vec<i64>)> = g.reps.iter().map(|r| (r.i, r.j, r.v.clone())).collect();
            prop_assert_eq!(got, barg);
            for r in &g.reps {
                prop_assert_eq!(x.q().form().eval(&r.w), g.lambda.clone());
            }
        }

        #[test]
        fn lattice_case_is_svp(x in random_form()) {
            let l = PeriodicForm::lattice(x.q().clone());
            let g = generalized_min(&l);
            let s = shortest_vectors(x.q());
            prop_assert_eq!(&g.lambda, &s.min);
            let ws: Vec<Vec<Rational>> = g.reps.iter().map(|r| r.w.clone()).collect();
            let sv: Vec<Vec<Rational>> = s.vectors.iter().map(|v| v.iter().map(|&a| int(a)).collect()).collect();
            prop_assert_eq!(ws.len(), sv.len());
            for w in &ws {
                prop_assert!(sv.contains(w));
            }
        }

        #[test]
        fn gradient_matches_finite_differences(x in random_form(), seed in 0u64..1000) {
            let g = generalized_min(&x);
            let rep = &g.reps[(seed as usize) % g.reps.len()];
            let grad = gradient_p(&x, rep);
            let coords = x.as_tangent().coords();
            let dim = coords.len();
            let d = x.d();
            let m = x.m();
            let weights = TangentVector::coord_weights(d, m);
            let h = 1e-5;
            let f = |c: &[f64]| -> f64 {
                // p in floating point at coordinates c (w depends on t only through t_i - t_j)
                let tv = TangentVector::from_coords(d, m, &c.iter().map(|&a| Rational::from_float(a).unwrap()).collect::<Vec<_>>());
                let ti = tv.translation(rep.i);
                let tj = tv.translation(rep.j);
                let xi = x.translation(rep.i).unwrap();
                let xj = x.translation(rep.j).unwrap();
                // w(X') = w + (t'_i - t_i) - (t'_j - t_j)
                let w: Vec<f64> = (0..d).map(|k| to_f64(&rep.w[k]) + to_f64(&(&ti[k] - &xi[k])) - to_f64(&(&tj[k] - &xj[k]))).collect();
                let mut s = 0.0;
                for a in 0..d { for b in 0..d { s += to_f64(tv.qpart.get(a, b)) * w[a] * w[b]; } }
                s
            };
            let base: Vec<f64> = coords.iter().map(to_f64).collect();
            let gc = grad.to_f64_coords();
            for k in 0..dim {
                let mut up = base.clone(); up[k] += h;
                let mut dn = base.clone(); dn[k] -= h;
                let fd = (f(&up) - f(&dn)) / (2.0 * h);
                // partial derivative in coordinate k equals w_k * gradient coordinate
                let exact = weights[k] as f64 * gc[k];
                prop_assert!((fd - exact).abs() <= 1e-6 * exact.abs().max(1.0), "coord {}: {} vs {}", k, fd, exact);
            }
        }

        #[test]
        fn taylor_remainder_is_cubic(x in random_form(), n in proptest::collection::vec(-4i64..=4, 21), seed in 0u64..1000) {
            let g = generalized_min(&x);
            let rep = &g.reps[(seed as usize) % g.reps.len()];
            let d = x.d();
            let m = x.m();
            let dim = TangentVector::ambient_dim(d, m);
            let nv = TangentVector::from_coords(d, m, &n[..dim].iter().map(|&a| int(a)).collect::<Vec<_>>());
            let lin = inner(&gradient_p(&x, rep), &nv).unwrap();
            let hess = hessian_quadratic(&x, rep, &nv).unwrap();
            // exact value of p along the line, no mod-1 reduction
            let p_at = |eps: &Rational| -> Rational {
                let q = x.q().form().add(&nv.qpart.scale(eps));
                let du: Vec<Rational> = nv.translation(rep.i).iter().zip(nv.translation(rep.j)).map(|(a, b)| (a - b) * eps).collect();
                let w: Vec<Rational> = rep.w.iter().zip(&du).map(|(a, b)| a + b).collect();
                q.eval(&w)
            };
            let p0 = x.q().form().eval(&rep.w);
            let mut rems = Vec::new();
            for eps in [rat(1, 100), rat(1, 1000)] {
                let r = p_at(&eps) - &p0 - &eps * &lin - &eps * &eps * &hess / int(2);
                rems.push(r / eps.pow(3));
            }
            // remainder is eps^3 * Q^N[u], the same constant at both steps
            prop_assert_eq!(&rems[0], &rems[1]);
        }

        #[test]
        fn density_invariant_under_basis_change(x in random_form(), a in -3i64..=3) {
            let u = [vec![int(1), int(a)], vec![int(0), int(1)]];
            if x.d() != 2 { return Ok(()); }
            let q2 = Pqf::new(x.q().form().congruent(&u)).unwrap();
            // translations transform by U^{-1}
            let t2: Vec<Vec<Rational>> = x.translations().iter().map(|t| vec![&t[0] - int(a) * &t[1], t[1].clone()]).collect();
            let y = PeriodicForm::new(q2, t2).unwrap();
            prop_assert_eq!(density(&x).center_density_squared, density(&y).center_density_squared);
            if let Ok(r) = rescale_to_min_one(&x) {
                prop_assert_eq!(density(&x).center_density_squared, density(&r).center_density_squared);
            }
        }
    }
}
