//! LLL reduction and exact shortest/closest vector enumeration.
//!
//! Enumeration runs Schnorr-Euchner depth-first search on an LLL-reduced
//! basis with floating point pruning (radii inflated by `1 + 2^-20`); every
//! leaf that survives pruning is re-evaluated in exact integer arithmetic
//! before it is accepted, so the returned minima and minimizer sets are exact.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::linalg::{ldl, solve_many, Pqf, SymForm};
use crate::rational::{common_denominator, int, rat, round, to_f64, Rational};
use crate::{Error, Result};

const RADIUS_INFLATION: f64 = 1.0 + 1.0 / (1u64 << 20) as f64;

/// Integer matrix with determinant `+-1`; column `k` is the `k`-th reduced
/// basis vector in the original coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Unimodular {
    rows: Vec<Vec<BigInt>>,
}

impl Unimodular {
    pub fn identity(d: usize) -> Self {
        Unimodular {
            rows: (0..d)
                .map(|i| {
                    (0..d)
                        .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                        .collect()
                })
                .collect(),
        }
    }

    /// Checks `|det| = 1`.
    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let det = int_det(&rows);
        if det.abs() != BigInt::one() {
            return Err(Error::DimensionMismatch(format!("matrix has determinant {det}")));
        }
        Ok(Unimodular { rows })
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    pub fn to_rational_rows(&self) -> Vec<Vec<Rational>> {
        self.rows
            .iter()
            .map(|r| r.iter().map(|x| Rational::from_integer(x.clone())).collect())
            .collect()
    }

    pub fn apply_i64(&self, y: &[i64]) -> Vec<BigInt> {
        self.rows
            .iter()
            .map(|row| row.iter().zip(y).map(|(a, &b)| a * b).sum())
            .collect()
    }
}

/// Determinant of an integer matrix by fraction-free (Bareiss) elimination.
pub fn int_det(rows: &[Vec<BigInt>]) -> BigInt {
    let n = rows.len();
    let mut m = rows.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

#[derive(Clone, Debug)]
pub struct LllResult {
    /// `U^t Q U`.
    pub reduced: Pqf,
    pub transform: Unimodular,
}

/// LLL reduction of a Gram matrix in exact rational arithmetic (Cohen,
/// Algorithm 2.6.3, with incremental Gram-Schmidt data).
pub fn lll_reduce(q: &Pqf, delta: &Rational) -> LllResult {
    assert!(
        delta > &rat(1, 4) && delta < &Rational::one(),
        "LLL parameter must lie in (1/4, 1)"
    );
    let n = q.dim();
    let mut g = q.form().to_rows();
    // h[k] = coefficients of the k-th current basis vector in the input basis
    let mut h: Vec<Vec<BigInt>> = Unimodular::identity(n).rows;
    let mut mu = vec![vec![Rational::zero(); n]; n];
    let mut bst = vec![Rational::zero(); n];
    bst[0] = g[0][0].clone();
    let half = rat(1, 2);

    let mut k = 1;
    let mut kmax = 0;
    while k < n {
        if k > kmax {
            kmax = k;
            for j in 0..k {
                let mut s = g[k][j].clone();
                for i in 0..j {
                    s -= &mu[j][i] * &mu[k][i] * &bst[i];
                }
                mu[k][j] = s / &bst[j];
            }
            let mut s = g[k][k].clone();
            for j in 0..k {
                s -= &mu[k][j] * &mu[k][j] * &bst[j];
            }
            bst[k] = s;
        }
        loop {
            size_reduce(k, k - 1, &mut g, &mut h, &mut mu, &half);
            let m = mu[k][k - 1].clone();
            if bst[k] < (delta - &m * &m) * &bst[k - 1] {
                // swap b_k and b_{k-1}
                g.swap(k, k - 1);
                for row in g.iter_mut() {
                    row.swap(k, k - 1);
                }
                h.swap(k, k - 1);
                for j in 0..k - 1 {
                    let t = mu[k][j].clone();
                    mu[k][j] = std::mem::replace(&mut mu[k - 1][j], t);
                }
                let b = &bst[k] + &m * &m * &bst[k - 1];
                mu[k][k - 1] = &m * &bst[k - 1] / &b;
                bst[k] = &bst[k - 1] * &bst[k] / &b;
                bst[k - 1] = b;
                for i in k + 1..=kmax {
                    let t = mu[i][k].clone();
                    mu[i][k] = &mu[i][k - 1] - &m * &t;
                    mu[i][k - 1] = t + &mu[k][k - 1] * &mu[i][k];
                }
                if k > 1 {
                    k -= 1;
                }
            } else {
                for l in (0..k.saturating_sub(1)).rev() {
                    size_reduce(k, l, &mut g, &mut h, &mut mu, &half);
                }
                k += 1;
                break;
            }
        }
    }

    let reduced = SymForm::from_rows(&g).expect("Gram matrix stays symmetric");
    let rows: Vec<Vec<BigInt>> = (0..n)
        .map(|i| (0..n).map(|j| h[j][i].clone()).collect())
        .collect();
    LllResult {
        reduced: Pqf::new(reduced).expect("congruent form stays positive definite"),
        transform: Unimodular { rows },
    }
}

fn size_reduce(
    k: usize,
    l: usize,
    g: &mut [Vec<Rational>],
    h: &mut [Vec<BigInt>],
    mu: &mut [Vec<Rational>],
    half: &Rational,
) {
    if mu[k][l].abs() <= *half {
        return;
    }
    let q = round(&mu[k][l]);
    let qr = Rational::from_integer(q.clone());
    let n = g.len();
    // b_k <- b_k - q b_l, row then column on the Gram matrix
    for j in 0..n {
        let v = &qr * &g[l][j];
        g[k][j] -= v;
    }
    for i in 0..n {
        let v = &qr * &g[i][l];
        g[i][k] -= v;
    }
    for j in 0..n {
        let v = &q * &h[l][j];
        h[k][j] -= v;
    }
    mu[k][l] -= &qr;
    for i in 0..l {
        let v = &qr * &mu[l][i];
        mu[k][i] -= v;
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShortVecResult {
    /// The arithmetical minimum `lambda(Q)`.
    pub min: Rational,
    /// One vector per `+-` pair, first nonzero coordinate positive, sorted.
    pub vectors: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CloseVecResult {
    /// `min_x Q[x - c]`.
    pub min: Rational,
    /// All minimizers, sorted lexicographically.
    pub vectors: Vec<Vec<i64>>,
}

/// Integer-scaled Gram matrix for exact evaluation of candidate leaves.
struct ExactGram {
    /// `Q_red = entries / scale`
    entries: Vec<Vec<BigInt>>,
    small: Option<Vec<Vec<i128>>>,
    scale: BigInt,
}

impl ExactGram {
    fn new(q: &SymForm) -> Self {
        let scale = common_denominator(q.packed());
        let sr = Rational::from_integer(scale.clone());
        let entries: Vec<Vec<BigInt>> = q
            .to_rows()
            .iter()
            .map(|r| r.iter().map(|x| (x * &sr).to_integer()).collect())
            .collect();
        let limit = BigInt::from(1i64 << 40);
        let small = if entries.iter().flatten().all(|x| x.abs() < limit) {
            Some(
                entries
                    .iter()
                    .map(|r| r.iter().map(|x| x.to_i128().unwrap()).collect())
                    .collect(),
            )
        } else {
            None
        };
        ExactGram {
            entries,
            small,
            scale,
        }
    }

    /// `z^t G z` for an integer vector given as i128 entries.
    fn eval(&self, z: &[i128]) -> BigInt {
        if let Some(s) = &self.small {
            if let Some(v) = eval_i128(s, z) {
                return BigInt::from(v);
            }
        }
        let zb: Vec<BigInt> = z.iter().map(|&x| BigInt::from(x)).collect();
        let mut acc = BigInt::zero();
        for (i, row) in self.entries.iter().enumerate() {
            if zb[i].is_zero() {
                continue;
            }
            let r: BigInt = row.iter().zip(&zb).map(|(a, b)| a * b).sum();
            acc += r * &zb[i];
        }
        acc
    }
}

fn eval_i128(g: &[Vec<i128>], z: &[i128]) -> Option<i128> {
    if z.iter().any(|x| x.abs() > 1 << 40) {
        return None;
    }
    let mut acc: i128 = 0;
    for (i, row) in g.iter().enumerate() {
        if z[i] == 0 {
            continue;
        }
        let mut r: i128 = 0;
        for (a, b) in row.iter().zip(z) {
            if *b != 0 {
                r = r.checked_add(a.checked_mul(*b)?)?;
            }
        }
        acc = acc.checked_add(r.checked_mul(z[i])?)?;
    }
    Some(acc)
}

/// Reusable enumeration state for one form: its LLL reduction, the floating
/// LDL factors used for pruning, and the exact Gram used for acceptance.
pub struct Enumerator {
    d: usize,
    q_red: SymForm,
    transform: Unimodular,
    transform_inv: Vec<Vec<Rational>>,
    pivots: Vec<f64>,
    /// `l[j][i]` for `j > i`: `Q_red[y] = sum_i D_i (y_i + sum_{j>i} l[j][i] y_j)^2`
    l: Vec<Vec<f64>>,
    exact: ExactGram,
}

enum Mode {
    /// Shrinking radius, keep all ties of the running minimum.
    Minimum,
    /// Fixed radius, keep everything inside.
    Within(BigInt),
}

impl Enumerator {
    pub fn new(q: &Pqf) -> Self {
        let lll = lll_reduce(q, &rat(3, 4));
        let q_red = lll.reduced.form().clone();
        let dec = ldl(&q_red);
        debug_assert!(dec.is_positive_definite && dec.perm.iter().enumerate().all(|(i, &p)| i == p));
        let d = q.dim();
        let transform_inv = solve_rows_inverse(&lll.transform.to_rational_rows());
        Enumerator {
            d,
            pivots: dec.pivots.iter().map(to_f64).collect(),
            l: dec
                .l
                .iter()
                .map(|r| r.iter().map(to_f64).collect())
                .collect(),
            exact: ExactGram::new(&q_red),
            q_red,
            transform: lll.transform,
            transform_inv,
        }
    }

    pub fn reduced_form(&self) -> &SymForm {
        &self.q_red
    }

    /// `lambda(Q)` and `Min Q` up to sign.
    pub fn shortest(&self) -> ShortVecResult {
        let (min, ys) = self.run_svp(Mode::Minimum);
        ShortVecResult {
            min: min.expect("a nonzero lattice vector exists"),
            vectors: self.to_original_canonical(&ys),
        }
    }

    /// All nonzero `x` (one per sign pair) with `Q[x] <= bound`.
    pub fn short_within(&self, bound: &Rational) -> Vec<(Vec<i64>, Rational)> {
        let scaled = scaled_bound(bound, &self.exact.scale, &BigInt::one());
        let (_, ys) = self.run_svp(Mode::Within(scaled));
        let xs = self.to_original_canonical(&ys);
        xs.into_iter()
            .map(|x| {
                let val = self.value_original(&x);
                (x, val)
            })
            .collect()
    }

    fn value_original(&self, x: &[i64]) -> Rational {
        let y = self.to_reduced(x);
        let z: Vec<i128> = y.iter().map(|&v| v as i128).collect();
        Rational::new(self.exact.eval(&z), self.exact.scale.clone())
    }

    fn to_reduced(&self, x: &[i64]) -> Vec<i64> {
        self.transform_inv
            .iter()
            .map(|row| {
                let s: Rational = row.iter().zip(x).map(|(a, &b)| a * int(b)).sum();
                s.to_integer().to_i64().expect("coordinate fits in i64")
            })
            .collect()
    }

    /// `min_x Q[x - c]` with all minimizers.
    pub fn closest(&self, c: &[Rational]) -> CloseVecResult {
        let (min, xs) = self.run_cvp(c, None);
        CloseVecResult {
            min: min.expect("enumeration always reaches a leaf"),
            vectors: xs,
        }
    }

    /// All `x` with `Q[x - c] <= bound`, with their values.
    pub fn close_within(&self, c: &[Rational], bound: &Rational) -> Vec<(Vec<i64>, Rational)> {
        let (_, xs) = self.run_cvp(c, Some(bound));
        xs.into_iter()
            .map(|x| {
                let diff: Vec<Rational> = x.iter().zip(c).map(|(&a, b)| int(a) - b).collect();
                let v = self.reduced_eval_original(&diff);
                (x, v)
            })
            .collect()
    }

    fn reduced_eval_original(&self, diff: &[Rational]) -> Rational {
        // Q[x - c] = Q_red[U^{-1}(x - c)]
        let yc: Vec<Rational> = self
            .transform_inv
            .iter()
            .map(|row| row.iter().zip(diff).map(|(a, b)| a * b).sum())
            .collect();
        self.q_red.eval(&yc)
    }

    fn run_svp(&self, mode: Mode) -> (Option<Rational>, Vec<Vec<i64>>) {
        let d = self.d;
        let center = vec![0.0; d];
        let mut best: Option<BigInt> = None;
        let mut found: Vec<Vec<i64>> = Vec::new();
        let initial = match &mode {
            Mode::Minimum => {
                let m = (0..d)
                    .map(|i| self.q_red.get(i, i).clone())
                    .min()
                    .unwrap();
                inflate(to_f64(&m))
            }
            Mode::Within(b) => inflate(to_f64(&Rational::new(b.clone(), self.exact.scale.clone()))),
        };
        let pmax = self.pivots.iter().cloned().fold(0.0, f64::max);
        self.search(&center, initial, true, |y| {
            if y.iter().all(|&v| v == 0) {
                return None;
            }
            let z: Vec<i128> = y.iter().map(|&v| v as i128).collect();
            let val = self.exact.eval(&z);
            match &mode {
                Mode::Within(b) => {
                    if &val <= b {
                        found.push(y.to_vec());
                    }
                    None
                }
                Mode::Minimum => {
                    let better = best.as_ref().is_none_or(|b| &val < b);
                    if better {
                        found.clear();
                        found.push(y.to_vec());
                        let r = to_f64(&Rational::new(val.clone(), self.exact.scale.clone()));
                        best = Some(val);
                        Some(inflate(r) + 1e-12 * pmax)
                    } else {
                        if Some(&val) == best.as_ref() {
                            found.push(y.to_vec());
                        }
                        None
                    }
                }
            }
        });
        let min = best.map(|b| Rational::new(b, self.exact.scale.clone()));
        (min, found)
    }

    fn run_cvp(&self, c: &[Rational], bound: Option<&Rational>) -> (Option<Rational>, Vec<Vec<i64>>) {
        assert_eq!(c.len(), self.d);
        // target in reduced coordinates, c' = U^{-1} c = p / den
        let cred: Vec<Rational> = self
            .transform_inv
            .iter()
            .map(|row| row.iter().zip(c).map(|(a, b)| a * b).sum())
            .collect();
        let den = common_denominator(&cred);
        let denr = Rational::from_integer(den.clone());
        let p: Vec<i128> = cred
            .iter()
            .map(|x| (x * &denr).to_integer().to_i128().expect("target fits in i128"))
            .collect();
        let den_i = den.to_i128().expect("denominator fits in i128");
        let total_scale = &self.exact.scale * &den * &den;
        let center: Vec<f64> = cred.iter().map(to_f64).collect();
        let pmax = self.pivots.iter().cloned().fold(0.0, f64::max);

        let fixed = bound.map(|b| scaled_bound(b, &self.exact.scale, &den));
        let initial = match bound {
            Some(b) => inflate(to_f64(b)) + 1e-12 * pmax,
            None => f64::INFINITY,
        };
        let mut best: Option<BigInt> = None;
        let mut found: Vec<Vec<i64>> = Vec::new();
        self.search(&center, initial, false, |y| {
            let z: Vec<i128> = y.iter().zip(&p).map(|(&a, &b)| a as i128 * den_i - b).collect();
            let val = self.exact.eval(&z);
            if let Some(fb) = &fixed {
                if &val <= fb {
                    found.push(y.to_vec());
                }
                return None;
            }
            let better = best.as_ref().is_none_or(|b| &val < b);
            if better {
                found.clear();
                found.push(y.to_vec());
                let r = to_f64(&Rational::new(val.clone(), total_scale.clone()));
                best = Some(val);
                Some(inflate(r) + 1e-12 * pmax)
            } else {
                if Some(&val) == best.as_ref() {
                    found.push(y.to_vec());
                }
                None
            }
        });
        let mut xs: Vec<Vec<i64>> = found.iter().map(|y| self.to_original(y)).collect();
        xs.sort();
        xs.dedup();
        (best.map(|b| Rational::new(b, total_scale)), xs)
    }

    fn to_original(&self, y: &[i64]) -> Vec<i64> {
        self.transform
            .apply_i64(y)
            .iter()
            .map(|v| v.to_i64().expect("lattice coordinate fits in i64"))
            .collect()
    }

    fn to_original_canonical(&self, ys: &[Vec<i64>]) -> Vec<Vec<i64>> {
        let set: BTreeSet<Vec<i64>> = ys
            .iter()
            .map(|y| {
                let mut x = self.to_original(y);
                canonicalize_sign(&mut x);
                x
            })
            .collect();
        set.into_iter().collect()
    }

    /// Depth-first Schnorr-Euchner enumeration of all `y` with
    /// `Q_red[y - center] <= bound`. The visitor may shrink the bound by
    /// returning a new radius. With `half`, only one of `y, -y` is visited
    /// (the one whose last nonzero coordinate is positive).
    fn search<F>(&self, center: &[f64], mut bound: f64, half: bool, mut visit: F)
    where
        F: FnMut(&[i64]) -> Option<f64>,
    {
        let d = self.d;
        let mut y = vec![0i64; d];
        let mut ctr = vec![0.0f64; d];
        let mut partial = vec![0.0f64; d + 1];
        // zigzag state: base point, step counter, and first direction
        let mut base = vec![0i64; d];
        let mut step = vec![0i64; d];
        let mut dir = vec![1i64; d];
        // half-space restriction active at level i (all higher coordinates zero)
        let mut top_zero = vec![false; d + 1];
        top_zero[d] = half;

        let set_center = |i: usize, y: &[i64], ctr: &mut [f64]| {
            let mut c = center[i];
            for j in i + 1..d {
                c -= self.l[j][i] * (y[j] as f64 - center[j]);
            }
            ctr[i] = c;
        };

        let mut i = d - 1;
        set_center(i, &y, &mut ctr);
        init_level(i, &ctr, &mut y, &mut base, &mut step, &mut dir, top_zero[i + 1]);
        loop {
            let diff = y[i] as f64 - ctr[i];
            let val = partial[i + 1] + self.pivots[i] * diff * diff;
            if val <= bound {
                if i == 0 {
                    if let Some(nb) = visit(&y) {
                        bound = bound.min(nb);
                    }
                    next_sibling(i, &mut y, &base, &mut step, &dir, top_zero[i + 1]);
                    continue;
                }
                partial[i] = val;
                top_zero[i] = top_zero[i + 1] && y[i] == 0;
                i -= 1;
                set_center(i, &y, &mut ctr);
                init_level(i, &ctr, &mut y, &mut base, &mut step, &mut dir, top_zero[i + 1]);
                continue;
            }
            // this level is exhausted (zigzag visits in nondecreasing distance)
            i += 1;
            if i == d {
                break;
            }
            next_sibling(i, &mut y, &base, &mut step, &dir, top_zero[i + 1]);
        }
    }
}

fn init_level(
    i: usize,
    ctr: &[f64],
    y: &mut [i64],
    base: &mut [i64],
    step: &mut [i64],
    dir: &mut [i64],
    nonneg: bool,
) {
    if nonneg {
        // center is exactly zero here; walk 0, 1, 2, ...
        base[i] = 0;
        step[i] = 0;
        dir[i] = 1;
        y[i] = 0;
        return;
    }
    let r = ctr[i].round();
    base[i] = r as i64;
    dir[i] = if ctr[i] >= r { 1 } else { -1 };
    step[i] = 0;
    y[i] = base[i];
}

fn next_sibling(i: usize, y: &mut [i64], base: &[i64], step: &mut [i64], dir: &[i64], nonneg: bool) {
    step[i] += 1;
    if nonneg {
        y[i] = step[i];
        return;
    }
    // offsets 0, +1, -1, +2, -2, ... in the direction of the center first
    let k = step[i];
    let off = if k % 2 == 1 { (k + 1) / 2 } else { -(k / 2) };
    y[i] = base[i] + dir[i] * off;
}

fn inflate(r: f64) -> f64 {
    r * RADIUS_INFLATION
}

/// `floor(bound * scale * den^2)` as an exact integer threshold.
fn scaled_bound(bound: &Rational, scale: &BigInt, den: &BigInt) -> BigInt {
    (bound * Rational::from_integer(scale * den * den)).floor().to_integer()
}

fn solve_rows_inverse(u: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let n = u.len();
    let cols = solve_many(u, &crate::linalg::identity_rows(n)).expect("unimodular matrix is invertible");
    (0..n)
        .map(|i| (0..n).map(|j| cols[j][i].clone()).collect())
        .collect()
}

/// Flips `x` so that its first nonzero coordinate is positive.
pub fn canonicalize_sign(x: &mut [i64]) {
    if let Some(f) = x.iter().find(|&&v| v != 0) {
        if *f < 0 {
            x.iter_mut().for_each(|v| *v = -*v);
        }
    }
}

pub fn shortest_vectors(q: &Pqf) -> ShortVecResult {
    Enumerator::new(q).shortest()
}

pub fn closest_vectors(q: &Pqf, c: &[Rational]) -> CloseVecResult {
    Enumerator::new(q).closest(c)
}

/// Row-style Hermite normal form basis of the lattice spanned by
/// `generators` (full rank assumed): upper triangular, positive diagonal,
/// entries above the diagonal reduced into `[0, diag)`.
pub fn hermite_basis(generators: &[Vec<BigInt>]) -> Result<Vec<Vec<BigInt>>> {
    let d = generators.first().map_or(0, Vec::len);
    let mut rows: Vec<Vec<BigInt>> = generators.to_vec();
    let mut basis: Vec<Vec<BigInt>> = Vec::with_capacity(d);
    for c in 0..d {
        // gcd-combine all rows on column c into a single pivot row
        let mut pivot: Option<Vec<BigInt>> = None;
        let mut rest = Vec::with_capacity(rows.len());
        for r in rows.drain(..) {
            if r[c].is_zero() {
                rest.push(r);
                continue;
            }
            match pivot.take() {
                None => pivot = Some(r),
                Some(p) => {
                    let e = p[c].extended_gcd(&r[c]);
                    let (a, b) = (&p[c] / &e.gcd, &r[c] / &e.gcd);
                    let new_p: Vec<BigInt> = p.iter().zip(&r).map(|(x, y)| &e.x * x + &e.y * y).collect();
                    let other: Vec<BigInt> = p.iter().zip(&r).map(|(x, y)| &b * x - &a * y).collect();
                    pivot = Some(new_p);
                    if other.iter().any(|v| !v.is_zero()) {
                        rest.push(other);
                    }
                }
            }
        }
        let Some(mut p) = pivot else {
            return Err(Error::SingularSublattice);
        };
        if p[c].is_negative() {
            p.iter_mut().for_each(|v| *v = -v.clone());
        }
        basis.push(p);
        rows = rest;
    }
    // reduce above-diagonal entries
    for c in 0..d {
        let piv = basis[c][c].clone();
        for r in 0..c {
            let f = basis[r][c].div_floor(&piv);
            if !f.is_zero() {
                let pc = basis[c].clone();
                for (x, y) in basis[r].iter_mut().zip(&pc) {
                    *x -= &f * y;
                }
            }
        }
    }
    Ok(basis)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pqf(rows: &[&[i64]]) -> Pqf {
        Pqf::from_i64_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn lll_identity_is_fixed() {
        let q = Pqf::new(SymForm::identity(4)).unwrap();
        let r = lll_reduce(&q, &rat(3, 4));
        assert_eq!(r.reduced.form(), q.form());
        assert_eq!(r.transform, Unimodular::identity(4));
    }

    #[test]
    fn lll_size_reduces() {
        let q = pqf(&[&[2, 2], &[2, 4]]);
        let r = lll_reduce(&q, &rat(3, 4));
        assert_eq!(r.reduced.form(), pqf(&[&[2, 0], &[0, 2]]).form());
        assert_eq!(int_det(r.transform.rows()).abs(), BigInt::one());
        let back = q.form().congruent(&r.transform.to_rational_rows());
        assert_eq!(&back, r.reduced.form());
        assert_eq!(r.reduced.det(), q.det());
    }

    #[test]
    fn svp_examples() {
        let r = shortest_vectors(&Pqf::new(SymForm::identity(2)).unwrap());
        assert_eq!(r.min, int(1));
        assert_eq!(r.vectors, vec![vec![0, 1], vec![1, 0]]);

        let r = shortest_vectors(&pqf(&[&[2, 1], &[1, 2]]));
        assert_eq!(r.min, int(2));
        assert_eq!(r.vectors, vec![vec![0, 1], vec![1, -1], vec![1, 0]]);
    }

    #[test]
    fn cvp_examples() {
        let q = Pqf::new(SymForm::identity(2)).unwrap();
        let r = closest_vectors(&q, &[rat(1, 2), int(0)]);
        assert_eq!(r.min, rat(1, 4));
        assert_eq!(r.vectors, vec![vec![0, 0], vec![1, 0]]);
        let r = closest_vectors(&q, &[int(0), int(0)]);
        assert_eq!(r.min, int(0));
        assert_eq!(r.vectors, vec![vec![0, 0]]);
    }

    #[test]
    fn cvp_a2_matches_brute_force() {
        let q = pqf(&[&[2, 1], &[1, 2]]);
        let c = [rat(1, 3), rat(1, 3)];
        let r = closest_vectors(&q, &c);
        let mut best: Option<Rational> = None;
        let mut arg = Vec::new();
        for a in -3..=3 {
            for b in -3..=3 {
                let diff = [int(a) - &c[0], int(b) - &c[1]];
                let v = q.form().eval(&diff);
                if best.as_ref().is_none_or(|m| &v < m) {
                    best = Some(v);
                    arg = vec![vec![a, b]];
                } else if best.as_ref() == Some(&v) {
                    arg.push(vec![a, b]);
                }
            }
        }
        assert_eq!(Some(r.min), best);
        assert_eq!(r.vectors, arg);
    }

    #[test]
    fn within_counts_shells() {
        let e = Enumerator::new(&Pqf::new(SymForm::identity(3)).unwrap());
        // norms 1 and 2: 3 + 6 pairs
        assert_eq!(e.short_within(&int(2)).len(), 9);
        let close = e.close_within(&[rat(1, 2), rat(1, 2), rat(1, 2)], &rat(3, 4));
        assert_eq!(close.len(), 8);
        assert!(close.iter().all(|(_, v)| v == &rat(3, 4)));
    }

    #[test]
    fn hnf_of_generators() {
        let gens: Vec<Vec<BigInt>> = [[2, 0], [0, 2], [1, 1]]
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        let b = hermite_basis(&gens).unwrap();
        let expect: Vec<Vec<BigInt>> = [[1, 1], [0, 2]]
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        assert_eq!(b, expect);
    }

    #[test]
    fn bareiss_det() {
        let m: Vec<Vec<BigInt>> = [[0, 2, 1], [1, 0, 0], [3, 1, 1]]
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        assert_eq!(int_det(&m), BigInt::from(-1));
    }
}
