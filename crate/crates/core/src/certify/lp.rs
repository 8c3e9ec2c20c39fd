//! Dense two-phase simplex over exact rationals with Bland's rule.
//!
//! Problems have the shape `A x = b, x >= 0`, with `A` given by columns.
//! Phase 1 either produces a feasible basis, which can then be reused for
//! several objectives, or a Farkas certificate of infeasibility.

use num_traits::{One, Signed, Zero};

use crate::rational::Rational;

pub(crate) struct Lp {
    /// Row-major tableau `B^{-1} A`, artificial columns removed after phase 1.
    rows: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    basis: Vec<usize>,
    ncols: usize,
}

pub(crate) enum Phase1 {
    Feasible(Lp),
    /// `y` with `y^t A_j <= 0` for every column and `y^t b > 0`.
    Infeasible { farkas: Vec<Rational> },
}

pub(crate) struct Optimum {
    pub value: Rational,
    pub x: Vec<Rational>,
}

impl Lp {
    pub(crate) fn new(columns: &[Vec<Rational>], b: &[Rational]) -> Phase1 {
        let r = b.len();
        let n = columns.len();
        debug_assert!(columns.iter().all(|c| c.len() == r));
        // flip rows so that b >= 0, then append one artificial per row
        let flip: Vec<bool> = b.iter().map(|x| x.is_negative()).collect();
        let mut rows = Vec::with_capacity(r);
        let mut rhs = Vec::with_capacity(r);
        for i in 0..r {
            let mut row: Vec<Rational> = columns
                .iter()
                .map(|c| if flip[i] { -&c[i] } else { c[i].clone() })
                .collect();
            row.extend((0..r).map(|k| if k == i { Rational::one() } else { Rational::zero() }));
            rows.push(row);
            rhs.push(b[i].abs());
        }
        let mut lp = Lp {
            rows,
            rhs,
            basis: (n..n + r).collect(),
            ncols: n + r,
        };
        // phase 1 objective: minimize the sum of artificials
        let mut cost = vec![Rational::zero(); n + r];
        for c in cost.iter_mut().skip(n) {
            *c = Rational::one();
        }
        let (rc, value) = lp.run(&cost).expect("phase 1 is bounded below by zero");
        if value.is_positive() {
            let farkas = (0..r)
                .map(|k| {
                    let y = Rational::one() - &rc[n + k];
                    if flip[k] {
                        -y
                    } else {
                        y
                    }
                })
                .collect();
            return Phase1::Infeasible { farkas };
        }
        lp.drop_artificials(n);
        Phase1::Feasible(lp)
    }

    fn drop_artificials(&mut self, n: usize) {
        let mut i = 0;
        while i < self.rows.len() {
            if self.basis[i] >= n {
                match (0..n).find(|&j| !self.rows[i][j].is_zero()) {
                    Some(j) => {
                        self.pivot(i, j, None);
                        i += 1;
                    }
                    None => {
                        // redundant equation
                        self.rows.swap_remove(i);
                        self.rhs.swap_remove(i);
                        self.basis.swap_remove(i);
                    }
                }
            } else {
                i += 1;
            }
        }
        for row in self.rows.iter_mut() {
            row.truncate(n);
        }
        self.ncols = n;
    }

    /// Maximizes `c^t x` from the current feasible basis; `None` if unbounded.
    pub(crate) fn maximize(&mut self, c: &[Rational]) -> Option<Optimum> {
        debug_assert_eq!(c.len(), self.ncols);
        let cost: Vec<Rational> = c.iter().map(|v| -v).collect();
        let (_, value) = self.run(&cost)?;
        let mut x = vec![Rational::zero(); self.ncols];
        for (i, &bi) in self.basis.iter().enumerate() {
            x[bi] = self.rhs[i].clone();
        }
        Some(Optimum { value: -value, x })
    }

    /// Minimizes `cost^t x` by Bland's rule. Returns the final reduced costs
    /// and the optimal value, or `None` when unbounded.
    fn run(&mut self, cost: &[Rational]) -> Option<(Vec<Rational>, Rational)> {
        // reduced costs rc_j = c_j - c_B^t T_j, value = c_B^t rhs
        let mut rc = cost.to_vec();
        let mut value = Rational::zero();
        for (i, &bi) in self.basis.iter().enumerate() {
            let cb = &cost[bi];
            if cb.is_zero() {
                continue;
            }
            for (r, t) in rc.iter_mut().zip(&self.rows[i]) {
                if !t.is_zero() {
                    *r -= cb * t;
                }
            }
            value += cb * &self.rhs[i];
        }
        loop {
            let Some(enter) = (0..self.ncols).find(|&j| rc[j].is_negative()) else {
                return Some((rc, value));
            };
            let mut leave: Option<(usize, Rational)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][enter];
                if !a.is_positive() {
                    continue;
                }
                let ratio = &self.rhs[i] / a;
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            let (row, _) = leave?;
            value += &rc[enter] * &self.rhs[row] / &self.rows[row][enter];
            self.pivot(row, enter, Some(&mut rc));
        }
    }

    fn pivot(&mut self, row: usize, col: usize, rc: Option<&mut Vec<Rational>>) {
        let p = self.rows[row][col].clone();
        if !p.is_one() {
            let inv = Rational::one() / &p;
            for v in self.rows[row].iter_mut() {
                if !v.is_zero() {
                    *v *= &inv;
                }
            }
            self.rhs[row] *= &inv;
        }
        let prow = std::mem::take(&mut self.rows[row]);
        let prhs = self.rhs[row].clone();
        let nz: Vec<usize> = (0..prow.len()).filter(|&j| !prow[j].is_zero()).collect();
        for i in 0..self.rows.len() {
            if i == row || self.rows[i][col].is_zero() {
                continue;
            }
            let f = self.rows[i][col].clone();
            for &j in &nz {
                let v = &f * &prow[j];
                self.rows[i][j] -= v;
            }
            self.rhs[i] -= &f * &prhs;
        }
        if let Some(rc) = rc {
            let f = rc[col].clone();
            if !f.is_zero() {
                for &j in &nz {
                    let v = &f * &prow[j];
                    rc[j] -= v;
                }
            }
        }
        self.rows[row] = prow;
        self.basis[row] = col;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn cols(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        // input given row-major for readability
        let r = rows.len();
        let n = rows[0].len();
        (0..n).map(|j| (0..r).map(|i| int(rows[i][j])).collect()).collect()
    }

    #[test]
    fn simple_max() {
        // x + y + s = 4, x + 3y + u = 6, max x + 2y -> (3, 1), value 5
        let a = cols(&[&[1, 1, 1, 0], &[1, 3, 0, 1]]);
        let Phase1::Feasible(mut lp) = Lp::new(&a, &[int(4), int(6)]) else {
            panic!("feasible")
        };
        let opt = lp.maximize(&[int(1), int(2), int(0), int(0)]).unwrap();
        assert_eq!(opt.value, int(5));
        assert_eq!(opt.x[..2], [int(3), int(1)]);
        // reuse for another objective
        let opt = lp.maximize(&[int(0), int(1), int(0), int(0)]).unwrap();
        assert_eq!(opt.value, int(2));
    }

    #[test]
    fn infeasible_gives_farkas() {
        // x = -1 with x >= 0
        let a = cols(&[&[1, 2]]);
        let Phase1::Infeasible { farkas } = Lp::new(&a, &[int(-1)]) else {
            panic!("infeasible")
        };
        assert!(&farkas[0] * int(1) <= int(0));
        assert!(&farkas[0] * int(-1) > int(0));
    }

    #[test]
    fn farkas_on_cone_membership() {
        // (1, 1/2) against the single generator (1, 0)
        let a = vec![vec![int(1), int(0)]];
        let b = [int(1), rat(1, 2)];
        let Phase1::Infeasible { farkas } = Lp::new(&a, &b) else {
            panic!("infeasible")
        };
        let ya: Rational = farkas.iter().zip(&a[0]).map(|(y, x)| y * x).sum();
        let yb: Rational = farkas.iter().zip(&b).map(|(y, x)| y * x).sum();
        assert!(ya <= int(0) && yb > int(0));
    }

    #[test]
    fn redundant_rows_and_unbounded() {
        let a = cols(&[&[1, -1], &[2, -2]]);
        let Phase1::Feasible(mut lp) = Lp::new(&a, &[int(1), int(2)]) else {
            panic!("feasible")
        };
        assert!(lp.maximize(&[int(1), int(0)]).is_none());
        let opt = lp.maximize(&[int(-1), int(0)]).unwrap();
        assert_eq!(opt.value, int(-1));
    }
}
