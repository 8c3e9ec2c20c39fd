//! Nearest point of a finitely generated cone: Lawson-Hanson active-set
//! NNLS in Gram form, `min |sum_k a_k g_k - b|^2` over `a >= 0`.
//!
//! The same iteration runs over `f64` (fast, approximate active set) and
//! over exact rationals (fallback when the float active set does not
//! certify).

use num_traits::{Signed, Zero};

use crate::rational::{to_f64, Rational};

pub(crate) trait Field: Clone {
    fn zero() -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn div(&self, o: &Self) -> Self;
    /// Strictly positive beyond the working tolerance `tol`.
    fn positive(&self, tol: &Self) -> bool;
    fn magnitude(&self) -> f64;
    fn is_zero(&self) -> bool;
    fn tolerance(scale: f64) -> Self;
}

impl Field for f64 {
    fn zero() -> Self {
        0.0
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn positive(&self, tol: &Self) -> bool {
        *self > *tol
    }
    fn magnitude(&self) -> f64 {
        self.abs()
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn tolerance(scale: f64) -> Self {
        1e-11 * scale.max(1.0)
    }
}

impl Field for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn positive(&self, _tol: &Self) -> bool {
        self.is_positive()
    }
    fn magnitude(&self) -> f64 {
        to_f64(self).abs()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn tolerance(_scale: f64) -> Self {
        Zero::zero()
    }
}

/// Solves the symmetric system `a z = rhs` by Gaussian elimination with
/// partial pivoting; `None` if a pivot falls below `tol`.
fn solve<S: Field>(mut a: Vec<Vec<S>>, mut rhs: Vec<S>, tol: f64) -> Option<Vec<S>> {
    let n = rhs.len();
    for k in 0..n {
        let p = (k..n).max_by(|&x, &y| a[x][k].magnitude().total_cmp(&a[y][k].magnitude()))?;
        let mag = a[p][k].magnitude();
        if a[p][k].is_zero() || mag <= tol {
            return None;
        }
        a.swap(k, p);
        rhs.swap(k, p);
        for i in k + 1..n {
            let f = a[i][k].div(&a[k][k]);
            if f.is_zero() {
                continue;
            }
            for j in k..n {
                let v = f.mul(&a[k][j]);
                a[i][j] = a[i][j].sub(&v);
            }
            let v = f.mul(&rhs[k]);
            rhs[i] = rhs[i].sub(&v);
        }
    }
    let mut z = vec![S::zero(); n];
    for k in (0..n).rev() {
        let mut s = rhs[k].clone();
        for j in k + 1..n {
            s = s.sub(&a[k][j].mul(&z[j]));
        }
        z[k] = s.div(&a[k][k]);
    }
    Some(z)
}

/// Lawson-Hanson on the Gram data `g[k][l] = <g_k, g_l>`, `h[k] = <g_k, b>`.
/// Returns the coefficients `a >= 0`; `None` on a singular passive set in
/// exact mode or when the iteration budget runs out.
pub(crate) fn nnls<S: Field>(g: &[Vec<S>], h: &[S]) -> Option<Vec<S>> {
    let n = h.len();
    let scale = h.iter().map(Field::magnitude).fold(0.0, f64::max);
    let tol = S::tolerance(scale);
    let solve_tol = if S::tolerance(1.0).magnitude() == 0.0 { 0.0 } else { 1e-13 * scale.max(1.0) };
    let mut alpha = vec![S::zero(); n];
    let mut passive = vec![false; n];
    let mut banned = vec![false; n];
    let budget = 10 * n + 50;
    let mut iterations = 0;
    loop {
        // w = h - G alpha
        let w: Vec<S> = (0..n)
            .map(|k| {
                let mut s = h[k].clone();
                for l in 0..n {
                    if passive[l] {
                        s = s.sub(&g[k][l].mul(&alpha[l]));
                    }
                }
                s
            })
            .collect();
        let enter = (0..n)
            .filter(|&k| !passive[k] && !banned[k] && w[k].positive(&tol))
            .max_by(|&a, &b| w[a].magnitude().total_cmp(&w[b].magnitude()));
        let Some(j) = enter else {
            return Some(alpha);
        };
        passive[j] = true;
        loop {
            iterations += 1;
            if iterations > budget {
                return None;
            }
            let idx: Vec<usize> = (0..n).filter(|&k| passive[k]).collect();
            let sub: Vec<Vec<S>> = idx.iter().map(|&a| idx.iter().map(|&b| g[a][b].clone()).collect()).collect();
            let rhs: Vec<S> = idx.iter().map(|&a| h[a].clone()).collect();
            let Some(z) = solve(sub, rhs, solve_tol) else {
                if solve_tol == 0.0 {
                    return None;
                }
                // numerically dependent column: drop it for good
                passive[j] = false;
                banned[j] = true;
                break;
            };
            let zero = S::zero();
            if z.iter().all(|v| v.positive(&zero)) {
                for (k, &a) in idx.iter().enumerate() {
                    alpha[a] = z[k].clone();
                }
                break;
            }
            // step toward z until the first passive coefficient hits zero
            let mut theta: Option<S> = None;
            for (k, &a) in idx.iter().enumerate() {
                if !z[k].positive(&zero) {
                    let denom = alpha[a].sub(&z[k]);
                    if !denom.positive(&zero) {
                        continue;
                    }
                    let t = alpha[a].div(&denom);
                    if theta.as_ref().is_none_or(|th| th.sub(&t).positive(&zero)) {
                        theta = Some(t);
                    }
                }
            }
            let theta = theta.unwrap_or_else(S::zero);
            for (k, &a) in idx.iter().enumerate() {
                let step = z[k].sub(&alpha[a]).mul(&theta);
                alpha[a] = alpha[a].add(&step);
                if !alpha[a].positive(&tol) {
                    alpha[a] = S::zero();
                    passive[a] = false;
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn gram(vs: &[Vec<f64>], b: &[f64]) -> (Vec<Vec<f64>>, Vec<f64>) {
        let dot = |x: &[f64], y: &[f64]| x.iter().zip(y).map(|(a, b)| a * b).sum::<f64>();
        (
            vs.iter().map(|x| vs.iter().map(|y| dot(x, y)).collect()).collect(),
            vs.iter().map(|x| dot(x, b)).collect(),
        )
    }

    #[test]
    fn projection_onto_quadrant() {
        let vs = vec![vec![1.0, 0.0], vec![0.0, 1.0]];
        let (g, h) = gram(&vs, &[2.0, -3.0]);
        let a = nnls(&g, &h).unwrap();
        assert!((a[0] - 2.0).abs() < 1e-12 && a[1] == 0.0);
    }

    #[test]
    fn exact_projection() {
        // cone{(1,0), (1,1)}, b = (0, 1): nearest point (1/2, 1/2)
        let g = vec![vec![int(1), int(1)], vec![int(1), int(2)]];
        let h = vec![int(0), int(1)];
        let a = nnls(&g, &h).unwrap();
        assert_eq!(a, vec![int(0), rat(1, 2)]);
    }

    #[test]
    fn dependent_generators() {
        let vs = vec![vec![1.0, 0.0], vec![2.0, 0.0], vec![0.0, 1.0], vec![1.0, 1.0]];
        let (g, h) = gram(&vs, &[1.0, 1.0]);
        let a = nnls(&g, &h).unwrap();
        let p: Vec<f64> = (0..2).map(|c| (0..4).map(|k| a[k] * vs[k][c]).sum()).collect();
        assert!((p[0] - 1.0).abs() < 1e-10 && (p[1] - 1.0).abs() < 1e-10);
    }
}
