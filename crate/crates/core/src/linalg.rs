//! Exact rational linear algebra: symmetric forms, LDL, inverses, ranks and
//! the tangent space `S^d x R^{d x (m-1)}` with its inner product.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::rational::{common_denominator, int, Rational};
use crate::{Error, Result};

/// Real symmetric `d x d` matrix over the rationals; only the upper
/// triangle is stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SymForm {
    d: usize,
    data: Vec<Rational>,
}

fn packed_index(d: usize, i: usize, j: usize) -> usize {
    let (i, j) = if i <= j { (i, j) } else { (j, i) };
    i * d - i * (i + 1) / 2 + j
}

impl SymForm {
    pub fn zero(d: usize) -> Self {
        assert!(d >= 1, "forms need d >= 1");
        SymForm {
            d,
            data: vec![Rational::zero(); d * (d + 1) / 2],
        }
    }

    pub fn identity(d: usize) -> Self {
        let mut q = Self::zero(d);
        for i in 0..d {
            q.set(i, i, Rational::one());
        }
        q
    }

    pub fn diagonal(diag: &[Rational]) -> Self {
        let mut q = Self::zero(diag.len());
        for (i, x) in diag.iter().enumerate() {
            q.set(i, i, x.clone());
        }
        q
    }

    /// Builds a form from full rows, rejecting non-square or asymmetric input.
    pub fn from_rows(rows: &[Vec<Rational>]) -> Result<Self> {
        let d = rows.len();
        if d == 0 {
            return Err(Error::DimensionMismatch("empty matrix".into()));
        }
        if rows.iter().any(|r| r.len() != d) {
            return Err(Error::DimensionMismatch("matrix is not square".into()));
        }
        let mut q = Self::zero(d);
        for i in 0..d {
            for j in i..d {
                if rows[i][j] != rows[j][i] {
                    return Err(Error::NotSymmetric);
                }
                q.set(i, j, rows[i][j].clone());
            }
        }
        Ok(q)
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let rows: Vec<Vec<Rational>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| int(x)).collect())
            .collect();
        Self::from_rows(&rows)
    }

    /// `x x^t`.
    pub fn rank_one(x: &[Rational]) -> Self {
        let d = x.len();
        let mut q = Self::zero(d);
        for i in 0..d {
            for j in i..d {
                q.set(i, j, &x[i] * &x[j]);
            }
        }
        q
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[packed_index(self.d, i, j)]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Rational) {
        let k = packed_index(self.d, i, j);
        self.data[k] = value;
    }

    /// Upper triangle in row-major order: `q_00, q_01, ..., q_0(d-1), q_11, ...`.
    pub fn packed(&self) -> &[Rational] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.d)
            .map(|i| (0..self.d).map(|j| self.get(i, j).clone()).collect())
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, s: &Rational) -> Self {
        SymForm {
            d: self.d,
            data: self.data.iter().map(|x| x * s).collect(),
        }
    }

    pub fn add(&self, other: &SymForm) -> Self {
        assert_eq!(self.d, other.d);
        SymForm {
            d: self.d,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    /// `Q[x] = x^t Q x`.
    pub fn eval(&self, x: &[Rational]) -> Rational {
        assert_eq!(x.len(), self.d);
        let mut acc = Rational::zero();
        for i in 0..self.d {
            if x[i].is_zero() {
                continue;
            }
            acc += self.get(i, i) * &x[i] * &x[i];
            let mut row = Rational::zero();
            for j in i + 1..self.d {
                if !x[j].is_zero() {
                    row += self.get(i, j) * &x[j];
                }
            }
            acc += row * &x[i] * int(2);
        }
        acc
    }

    pub fn eval_int(&self, x: &[i64]) -> Rational {
        let x: Vec<Rational> = x.iter().map(|&v| int(v)).collect();
        self.eval(&x)
    }

    /// `Q x`.
    pub fn apply(&self, x: &[Rational]) -> Vec<Rational> {
        (0..self.d)
            .map(|i| {
                (0..self.d)
                    .filter(|&j| !x[j].is_zero())
                    .map(|j| self.get(i, j) * &x[j])
                    .sum()
            })
            .collect()
    }

    /// `M^t Q M` for a `d x k` matrix `M` given by rows.
    pub fn congruent(&self, m: &[Vec<Rational>]) -> SymForm {
        assert_eq!(m.len(), self.d);
        let k = m[0].len();
        let cols: Vec<Vec<Rational>> = (0..k)
            .map(|c| m.iter().map(|row| row[c].clone()).collect())
            .collect();
        let qcols: Vec<Vec<Rational>> = cols.iter().map(|c| self.apply(c)).collect();
        let mut out = SymForm::zero(k);
        for a in 0..k {
            for b in a..k {
                out.set(a, b, dot(&cols[a], &qcols[b]));
            }
        }
        out
    }

    /// Frobenius inner product `trace(Q Q')`.
    pub fn frobenius(&self, other: &SymForm) -> Rational {
        assert_eq!(self.d, other.d);
        let mut acc = Rational::zero();
        for i in 0..self.d {
            acc += self.get(i, i) * other.get(i, i);
            for j in i + 1..self.d {
                acc += self.get(i, j) * other.get(i, j) * int(2);
            }
        }
        acc
    }
}

pub(crate) fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .map(|(x, y)| x * y)
        .sum()
}

/// Outcome of a (symmetrically pivoted) LDL^t factorization.
#[derive(Clone, Debug)]
pub struct LdlResult {
    /// Unit lower triangular factor of the permuted matrix.
    pub l: Vec<Vec<Rational>>,
    /// Pivots met before the decomposition finished or stopped.
    pub pivots: Vec<Rational>,
    /// Symmetric permutation applied: row `k` of the factor is row `perm[k]` of `Q`.
    pub perm: Vec<usize>,
    pub is_positive_definite: bool,
}

/// `P Q P^t = L diag(D) L^t`. Stops at the first negative pivot; a zero pivot
/// triggers a search for a nonzero diagonal entry further down.
pub fn ldl(q: &SymForm) -> LdlResult {
    let d = q.dim();
    let mut a = q.to_rows();
    let mut l = vec![vec![Rational::zero(); d]; d];
    let mut perm: Vec<usize> = (0..d).collect();
    let mut pivots = Vec::with_capacity(d);
    let mut pd = true;
    for k in 0..d {
        if a[k][k].is_zero() {
            pd = false;
            match (k + 1..d).find(|&p| !a[p][p].is_zero()) {
                Some(p) => {
                    a.swap(k, p);
                    for row in a.iter_mut() {
                        row.swap(k, p);
                    }
                    // only columns < k of L are filled so far
                    l.swap(k, p);
                    perm.swap(k, p);
                }
                None => {
                    pivots.push(Rational::zero());
                    break;
                }
            }
        }
        let pivot = a[k][k].clone();
        pivots.push(pivot.clone());
        l[k][k] = Rational::one();
        if pivot.is_negative() {
            pd = false;
            break;
        }
        for i in k + 1..d {
            if a[i][k].is_zero() {
                continue;
            }
            let f = &a[i][k] / &pivot;
            for j in k + 1..=i {
                let delta = &f * &a[k][j];
                a[i][j] -= delta;
            }
            l[i][k] = f;
        }
        for i in k + 1..d {
            for j in i + 1..d {
                a[i][j] = a[j][i].clone();
            }
        }
    }
    let complete = pivots.len() == d;
    LdlResult {
        l,
        pivots,
        perm,
        is_positive_definite: pd && complete,
    }
}

/// Positive definite quadratic form with its LDL certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pqf {
    form: SymForm,
    pivots: Vec<Rational>,
}

impl Pqf {
    pub fn new(form: SymForm) -> Result<Self> {
        let res = ldl(&form);
        if !res.is_positive_definite {
            return Err(Error::NotPositiveDefinite);
        }
        Ok(Pqf {
            form,
            pivots: res.pivots,
        })
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Result<Self> {
        Self::new(SymForm::from_i64_rows(rows)?)
    }

    pub fn form(&self) -> &SymForm {
        &self.form
    }

    pub fn into_form(self) -> SymForm {
        self.form
    }

    pub fn dim(&self) -> usize {
        self.form.dim()
    }

    pub fn pivots(&self) -> &[Rational] {
        &self.pivots
    }

    pub fn det(&self) -> Rational {
        self.pivots.iter().product()
    }

    pub fn scale(&self, s: &Rational) -> Result<Pqf> {
        Pqf::new(self.form.scale(s))
    }
}

/// Determinant (product of pivots) and exact inverse.
pub fn det_and_inverse(q: &Pqf) -> (Rational, SymForm) {
    let d = q.dim();
    let a = q.form().to_rows();
    let mut inv_rows = Vec::with_capacity(d);
    let cols = solve_many(&a, &identity_rows(d)).expect("positive definite matrix is invertible");
    for i in 0..d {
        inv_rows.push((0..d).map(|j| cols[j][i].clone()).collect::<Vec<_>>());
    }
    let mut inv = SymForm::zero(d);
    for i in 0..d {
        for j in i..d {
            inv.set(i, j, inv_rows[i][j].clone());
        }
    }
    (q.det(), inv)
}

pub(crate) fn identity_rows(d: usize) -> Vec<Vec<Rational>> {
    (0..d)
        .map(|i| {
            (0..d)
                .map(|j| if i == j { Rational::one() } else { Rational::zero() })
                .collect()
        })
        .collect()
}

/// Solves `A x = b_k` for each right-hand side `b_k`; `None` if `A` is singular.
pub(crate) fn solve_many(a: &[Vec<Rational>], rhs: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = a.len();
    let k = rhs.len();
    let mut m: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            let mut row = a[i].clone();
            row.extend(rhs.iter().map(|b| b[i].clone()));
            row
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !m[r][c].is_zero())?;
        m.swap(c, p);
        let piv = m[c][c].clone();
        for x in m[c].iter_mut() {
            *x /= &piv;
        }
        let pivot_row = m[c].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r == c || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row).skip(c) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
    }
    Some(
        (0..k)
            .map(|j| (0..n).map(|i| m[i][n + j].clone()).collect())
            .collect(),
    )
}

/// Reduced row echelon form in place; returns the pivot columns.
pub(crate) fn rref(m: &mut Vec<Vec<Rational>>) -> Vec<usize> {
    let rows = m.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = m[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let piv = m[r][c].clone();
        for x in m[r].iter_mut().skip(c) {
            *x /= &piv;
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row).skip(c) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    pivots
}

/// Basis of `{x : M x = 0}` for a matrix already in reduced row echelon form.
pub(crate) fn nullspace_from_rref(m: &[Vec<Rational>], pivots: &[usize], cols: usize) -> Vec<Vec<Rational>> {
    let mut is_pivot = vec![false; cols];
    for &p in pivots {
        is_pivot[p] = true;
    }
    (0..cols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![Rational::zero(); cols];
            v[f] = Rational::one();
            for (row, &p) in m.iter().zip(pivots) {
                v[p] = -row[f].clone();
            }
            v
        })
        .collect()
}

const RANK_PRIME: u64 = (1 << 61) - 1;

fn mulmod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % RANK_PRIME as u128) as u64
}

fn powmod(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a);
        }
        a = mulmod(a, a);
        e >>= 1;
    }
    r
}

/// Incremental row reduction modulo a 61-bit prime. The rank modulo a prime
/// never exceeds the rank over `Q`, so reaching full rank here is an exact
/// proof of full rank.
pub(crate) struct ModPRank {
    cols: usize,
    basis: Vec<(usize, Vec<u64>)>,
}

impl ModPRank {
    pub(crate) fn new(cols: usize) -> Self {
        ModPRank {
            cols,
            basis: Vec::new(),
        }
    }

    pub(crate) fn is_full(&self) -> bool {
        self.basis.len() == self.cols
    }

    pub(crate) fn push_int(&mut self, row: &[BigInt]) {
        let p = BigInt::from(RANK_PRIME);
        let v: Vec<u64> = row
            .iter()
            .map(|x| x.mod_floor(&p).to_u64().unwrap())
            .collect();
        self.push(v);
    }

    pub(crate) fn push_i64(&mut self, row: &[i64]) {
        let v: Vec<u64> = row
            .iter()
            .map(|&x| x.rem_euclid(RANK_PRIME as i64) as u64)
            .collect();
        self.push(v);
    }

    fn push(&mut self, mut v: Vec<u64>) {
        if self.is_full() {
            return;
        }
        for (piv, b) in &self.basis {
            let f = v[*piv];
            if f != 0 {
                for (x, y) in v.iter_mut().zip(b) {
                    if *y != 0 {
                        *x = (*x + RANK_PRIME - mulmod(f, *y)) % RANK_PRIME;
                    }
                }
            }
        }
        if let Some(piv) = v.iter().position(|&x| x != 0) {
            let inv = powmod(v[piv], RANK_PRIME - 2);
            for x in v.iter_mut() {
                *x = mulmod(*x, inv);
            }
            for (_, b) in self.basis.iter_mut() {
                let f = b[piv];
                if f != 0 {
                    for (x, y) in b.iter_mut().zip(&v) {
                        if *y != 0 {
                            *x = (*x + RANK_PRIME - mulmod(f, *y)) % RANK_PRIME;
                        }
                    }
                }
            }
            self.basis.push((piv, v));
        }
    }
}

/// Element `N = (Q^N, t^N)` of the tangent space, translations in basis
/// coordinates (`t^N_m = 0` implicit, not stored).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TangentVector {
    pub qpart: SymForm,
    /// `m - 1` columns of length `d`.
    pub tpart: Vec<Vec<Rational>>,
}

impl TangentVector {
    pub fn zero(d: usize, m: usize) -> Self {
        TangentVector {
            qpart: SymForm::zero(d),
            tpart: vec![vec![Rational::zero(); d]; m - 1],
        }
    }

    pub fn from_form(q: SymForm, m: usize) -> Self {
        let d = q.dim();
        TangentVector {
            qpart: q,
            tpart: vec![vec![Rational::zero(); d]; m - 1],
        }
    }

    pub fn d(&self) -> usize {
        self.qpart.dim()
    }

    pub fn m(&self) -> usize {
        self.tpart.len() + 1
    }

    /// `(d+1 choose 2) + (m-1) d`.
    pub fn ambient_dim(d: usize, m: usize) -> usize {
        d * (d + 1) / 2 + (m - 1) * d
    }

    /// Translation column `i` (1-based); the implicit last translate is zero.
    pub fn translation(&self, i: usize) -> Vec<Rational> {
        if i == self.m() {
            vec![Rational::zero(); self.d()]
        } else {
            self.tpart[i - 1].clone()
        }
    }

    pub fn is_zero(&self) -> bool {
        self.qpart.is_zero() && self.tpart.iter().flatten().all(Zero::is_zero)
    }

    /// Flattened coordinates: packed upper triangle, then the translation columns.
    pub fn coords(&self) -> Vec<Rational> {
        let mut out = self.qpart.packed().to_vec();
        for col in &self.tpart {
            out.extend(col.iter().cloned());
        }
        out
    }

    /// Weights `w_k` with `<X, Y> = sum_k w_k x_k y_k` in [`coords`](Self::coords).
    pub fn coord_weights(d: usize, m: usize) -> Vec<i64> {
        let mut w = Vec::with_capacity(Self::ambient_dim(d, m));
        for i in 0..d {
            for j in i..d {
                w.push(if i == j { 1 } else { 2 });
            }
        }
        w.extend(std::iter::repeat(1).take((m - 1) * d));
        w
    }

    pub fn from_coords(d: usize, m: usize, coords: &[Rational]) -> Self {
        assert_eq!(coords.len(), Self::ambient_dim(d, m));
        let nq = d * (d + 1) / 2;
        let mut qpart = SymForm::zero(d);
        qpart.data.clone_from_slice(&coords[..nq]);
        let tpart = coords[nq..].chunks(d).map(|c| c.to_vec()).collect();
        TangentVector { qpart, tpart }
    }

    /// The vector `s` representing the coordinate functional `x -> y . x`,
    /// i.e. `<s, x> = y . coords(x)`.
    pub fn from_covector(d: usize, m: usize, y: &[Rational]) -> Self {
        let w = Self::coord_weights(d, m);
        let c: Vec<Rational> = y
            .iter()
            .zip(&w)
            .map(|(v, &wk)| v / int(wk))
            .collect();
        Self::from_coords(d, m, &c)
    }

    pub fn scale(&self, s: &Rational) -> Self {
        TangentVector {
            qpart: self.qpart.scale(s),
            tpart: self
                .tpart
                .iter()
                .map(|c| c.iter().map(|x| x * s).collect())
                .collect(),
        }
    }

    pub fn add(&self, other: &TangentVector) -> Self {
        TangentVector {
            qpart: self.qpart.add(&other.qpart),
            tpart: self
                .tpart
                .iter()
                .zip(&other.tpart)
                .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect())
                .collect(),
        }
    }

    pub fn sub(&self, other: &TangentVector) -> Self {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn to_f64_coords(&self) -> Vec<f64> {
        self.coords().iter().map(crate::rational::to_f64).collect()
    }
}

/// `<X, Y> = trace(Q Q') + sum_i t_i . t'_i`.
pub fn inner(x: &TangentVector, y: &TangentVector) -> Result<Rational> {
    if x.d() != y.d() || x.m() != y.m() {
        return Err(Error::DimensionMismatch(format!(
            "(d, m) = ({}, {}) vs ({}, {})",
            x.d(),
            x.m(),
            y.d(),
            y.m()
        )));
    }
    let mut acc = x.qpart.frobenius(&y.qpart);
    for (a, b) in x.tpart.iter().zip(&y.tpart) {
        acc += dot(a, b);
    }
    Ok(acc)
}

#[derive(Clone, Debug)]
pub struct RankSpan {
    pub rank: usize,
    /// Basis of the orthogonal complement of the span.
    pub nullspace_basis: Vec<TangentVector>,
}

/// Integer multiple of `v` (clearing denominators); same span, same rank.
pub(crate) fn integer_scaled(v: &[Rational]) -> Vec<BigInt> {
    let den = common_denominator(v);
    v.iter()
        .map(|x| (x * Rational::from_integer(den.clone())).to_integer())
        .collect()
}

/// Exact rank of the span of `vectors` in the tangent space of shape `(d, m)`
/// and a basis of its orthogonal complement.
pub fn rank_span(d: usize, m: usize, vectors: &[TangentVector]) -> Result<RankSpan> {
    let n = TangentVector::ambient_dim(d, m);
    if let Some(v) = vectors.iter().find(|v| v.d() != d || v.m() != m) {
        return Err(Error::DimensionMismatch(format!(
            "vector of shape ({}, {}) in a ({d}, {m}) span",
            v.d(),
            v.m()
        )));
    }
    let weights = TangentVector::coord_weights(d, m);
    let rows: Vec<Vec<Rational>> = vectors
        .iter()
        .map(|v| {
            v.coords()
                .into_iter()
                .zip(&weights)
                .map(|(x, &w)| x * int(w))
                .collect()
        })
        .collect();

    let mut modp = ModPRank::new(n);
    for r in &rows {
        modp.push_int(&integer_scaled(r));
        if modp.is_full() {
            return Ok(RankSpan {
                rank: n,
                nullspace_basis: Vec::new(),
            });
        }
    }

    let mut m_rows = rows;
    if m_rows.is_empty() {
        m_rows.push(vec![Rational::zero(); n]);
    }
    let pivots = rref(&mut m_rows);
    let null = nullspace_from_rref(&m_rows, &pivots, n);
    Ok(RankSpan {
        rank: pivots.len(),
        nullspace_basis: null
            .iter()
            .map(|c| TangentVector::from_coords(d, m, c))
            .collect(),
    })
}

/// Rank of `{x x^t : x in vectors}` in `S^d`, exact, with early exit at full rank.
pub fn rank_of_rank_one_forms(d: usize, vectors: &[Vec<i64>]) -> usize {
    let n = d * (d + 1) / 2;
    let mut modp = ModPRank::new(n);
    let mut row = Vec::with_capacity(n);
    for x in vectors {
        row.clear();
        for i in 0..d {
            for j in i..d {
                row.push(x[i] * x[j]);
            }
        }
        modp.push_i64(&row);
        if modp.is_full() {
            return n;
        }
    }
    let forms: Vec<TangentVector> = vectors
        .iter()
        .map(|x| {
            let xr: Vec<Rational> = x.iter().map(|&v| int(v)).collect();
            TangentVector::from_form(SymForm::rank_one(&xr), 1)
        })
        .collect();
    rank_span(d, 1, &forms).map(|r| r.rank).unwrap_or(0)
}
