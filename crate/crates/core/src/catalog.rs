//! Named lattices and periodic sets, and re-representation of a lattice as a
//! union of translates of a sublattice.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::lattice::{hermite_basis, int_det, lll_reduce};
use crate::linalg::{solve_many, Pqf, SymForm};
use crate::periodic::PeriodicForm;
use crate::rational::{int, parse, rat, split_mod_one, Rational};
use crate::{Error, Result};

/// Invariants a catalog construction must reproduce.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Expected {
    pub det: Option<Rational>,
    pub lambda: Option<Rational>,
    /// Minimal vectors up to sign (lattices) or canonical minimal
    /// representations (periodic forms).
    pub min_classes: Option<usize>,
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub params: Vec<String>,
    pub form: PeriodicForm,
    /// Lattice Gram of the same point set, when it is a lattice with `m > 1`.
    pub lattice: Option<Pqf>,
    pub expected: Expected,
}

pub struct NameInfo {
    pub name: &'static str,
    pub params: &'static str,
    pub summary: &'static str,
}

pub const NAMES: &[NameInfo] = &[
    NameInfo { name: "Zd", params: "d", summary: "integer lattice Z^d" },
    NameInfo { name: "A", params: "d", summary: "root lattice A_d" },
    NameInfo { name: "D", params: "d", summary: "root lattice D_d (d >= 3)" },
    NameInfo { name: "Dplus", params: "d", summary: "D_d^+ = D_d u (D_d + (1/2,...,1/2)) as a 2-periodic form" },
    NameInfo { name: "DplusLattice", params: "d", summary: "D_d^+ as a lattice (d >= 8 even)" },
    NameInfo { name: "E6", params: "", summary: "root lattice E_6" },
    NameInfo { name: "E7", params: "", summary: "root lattice E_7" },
    NameInfo { name: "E8", params: "", summary: "root lattice E_8" },
    NameInfo { name: "K12", params: "", summary: "Coxeter-Todd lattice" },
    NameInfo { name: "Leech", params: "", summary: "Leech lattice" },
    NameInfo { name: "Lambda9", params: "", summary: "laminated lattice as the fluid diamond packing at alpha = 0" },
    NameInfo { name: "FluidDiamond", params: "alpha", summary: "D_9 u (D_9 + (1/2,...,1/2,alpha))" },
];

fn dim_param(name: &str, params: &[&str], min: usize) -> Result<usize> {
    let [p] = params else {
        return Err(Error::InvalidParameter(format!("{name} takes one dimension parameter")));
    };
    let d: usize = p
        .trim()
        .parse()
        .map_err(|_| Error::InvalidParameter(format!("dimension `{p}` is not a positive integer")))?;
    if d < min {
        return Err(Error::InvalidParameter(format!("{name} requires d >= {min}")));
    }
    Ok(d)
}

fn no_params(name: &str, params: &[&str]) -> Result<()> {
    if params.is_empty() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("{name} takes no parameters")))
    }
}

fn lattice_entry(name: &str, params: &[&str], q: Pqf, det: Rational, lambda: Rational, classes: Option<usize>) -> CatalogEntry {
    CatalogEntry {
        name: name.to_string(),
        params: params.iter().map(|s| s.to_string()).collect(),
        form: PeriodicForm::lattice(q),
        lattice: None,
        expected: Expected {
            det: Some(det),
            lambda: Some(lambda),
            min_classes: classes,
        },
    }
}

pub fn get(name: &str, params: &[&str]) -> Result<CatalogEntry> {
    match name {
        "Z" | "Zd" => {
            let d = dim_param(name, params, 1)?;
            let q = Pqf::new(SymForm::identity(d))?;
            Ok(lattice_entry("Zd", params, q, int(1), int(1), Some(d)))
        }
        "A" => {
            let d = dim_param(name, params, 1)?;
            Ok(lattice_entry("A", params, a_gram(d), int(d as i64 + 1), int(2), Some(d * (d + 1) / 2)))
        }
        "D" => {
            let d = dim_param(name, params, 3)?;
            Ok(lattice_entry("D", params, d_gram(d), int(4), int(2), Some(d * (d - 1))))
        }
        "Dplus" => {
            let d = dim_param(name, params, 3)?;
            let form = dplus(d);
            let lattice = if d % 2 == 0 && d >= 8 { Some(dplus_lattice(d)?) } else { None };
            let lambda = std::cmp::min(int(2), rat(d as i64, 4));
            let classes = if d > 8 { Some(2 * d * (d - 1)) } else { None };
            Ok(CatalogEntry {
                name: "Dplus".into(),
                params: params.iter().map(|s| s.to_string()).collect(),
                form,
                lattice,
                expected: Expected {
                    det: Some(int(4)),
                    lambda: Some(lambda),
                    min_classes: classes,
                },
            })
        }
        "DplusLattice" => {
            let d = dim_param(name, params, 8)?;
            let q = dplus_lattice(d)?;
            let classes = if d == 8 { 120 } else { d * (d - 1) };
            Ok(lattice_entry("DplusLattice", params, q, int(1), int(2), Some(classes)))
        }
        "E6" => {
            no_params(name, params)?;
            Ok(lattice_entry("E6", params, e_gram(6), int(3), int(2), Some(36)))
        }
        "E7" => {
            no_params(name, params)?;
            Ok(lattice_entry("E7", params, e_gram(7), int(2), int(2), Some(63)))
        }
        "E8" => {
            no_params(name, params)?;
            Ok(lattice_entry("E8", params, e_gram(8), int(1), int(2), Some(120)))
        }
        "K12" => {
            no_params(name, params)?;
            Ok(lattice_entry("K12", params, k12(), int(729), int(4), Some(378)))
        }
        "Leech" => {
            no_params(name, params)?;
            Ok(lattice_entry("Leech", params, leech()?, int(1), int(4), Some(98280)))
        }
        "Lambda9" => {
            no_params(name, params)?;
            Ok(CatalogEntry {
                name: "Lambda9".into(),
                params: vec![],
                form: fluid_diamond(&int(0)),
                lattice: None,
                expected: Expected {
                    det: Some(int(4)),
                    lambda: Some(int(2)),
                    min_classes: Some(272),
                },
            })
        }
        "FluidDiamond" => {
            let [p] = params else {
                return Err(Error::InvalidParameter("FluidDiamond takes one parameter alpha".into()));
            };
            let alpha = parse(p).map_err(|_| Error::InvalidParameter(format!("alpha `{p}` is not a rational")))?;
            Ok(CatalogEntry {
                name: "FluidDiamond".into(),
                params: vec![p.to_string()],
                form: fluid_diamond(&alpha),
                lattice: None,
                expected: Expected {
                    det: Some(int(4)),
                    lambda: Some(int(2)),
                    min_classes: None,
                },
            })
        }
        _ => Err(Error::UnknownCatalogEntry(name.to_string())),
    }
}

fn gram_of_rows(b: &[Vec<i64>], scale: &Rational) -> Pqf {
    let n = b.len();
    let rows: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| int(b[i].iter().zip(&b[j]).map(|(x, y)| x * y).sum()) * scale)
                .collect()
        })
        .collect();
    Pqf::new(SymForm::from_rows(&rows).expect("Gram matrices are symmetric")).expect("basis is independent")
}

fn gram_of_big_rows(b: &[Vec<BigInt>], scale: &Rational) -> Pqf {
    let n = b.len();
    let rows: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| Rational::from_integer(b[i].iter().zip(&b[j]).map(|(x, y)| x * y).sum()) * scale)
                .collect()
        })
        .collect();
    Pqf::new(SymForm::from_rows(&rows).expect("Gram matrices are symmetric")).expect("basis is independent")
}

/// `I + J`.
pub fn a_gram(d: usize) -> Pqf {
    let rows: Vec<Vec<i64>> = (0..d).map(|i| (0..d).map(|j| if i == j { 2 } else { 1 }).collect()).collect();
    Pqf::from_i64_rows(&rows).expect("I + J is positive definite")
}

/// Basis `e1 + e2, e2 - e1, e3 - e2, ..., e_d - e_{d-1}` of `D_d`, as rows.
pub fn d_basis(d: usize) -> Vec<Vec<i64>> {
    let mut b = vec![vec![0i64; d]; d];
    b[0][0] = 1;
    b[0][1] = 1;
    for k in 1..d {
        b[k][k] = 1;
        b[k][k - 1] = -1;
    }
    b
}

pub fn d_gram(d: usize) -> Pqf {
    gram_of_rows(&d_basis(d), &int(1))
}

/// Cartan matrix of `E_d`: a path with one extra node attached at the third
/// node from the end of the long arm.
pub fn e_gram(d: usize) -> Pqf {
    assert!((6..=8).contains(&d));
    let chain = d - 1;
    let branch_at = d - 4;
    let mut rows = vec![vec![0i64; d]; d];
    for (i, row) in rows.iter_mut().enumerate() {
        row[i] = 2;
    }
    for i in 0..chain - 1 {
        rows[i][i + 1] = -1;
        rows[i + 1][i] = -1;
    }
    rows[branch_at][d - 1] = -1;
    rows[d - 1][branch_at] = -1;
    Pqf::from_i64_rows(&rows).expect("Cartan matrices of E-type are positive definite")
}

/// Coordinates of a point of `R^d` with respect to the row basis `b`.
fn coordinates(b: &[Vec<i64>], p: &[Rational]) -> Vec<Rational> {
    let n = b.len();
    let bt: Vec<Vec<Rational>> = (0..n).map(|i| (0..n).map(|j| int(b[j][i])).collect()).collect();
    solve_many(&bt, &[p.to_vec()]).expect("basis is invertible").remove(0)
}

/// `D_d u (D_d + (1/2, ..., 1/2))` over the fixed `D_d` basis.
pub fn dplus(d: usize) -> PeriodicForm {
    let t = coordinates(&d_basis(d), &vec![rat(1, 2); d]);
    PeriodicForm::new(d_gram(d), vec![t]).expect("dimensions agree")
}

/// Lattice Gram of `D_d^+` for even `d >= 8`.
pub fn dplus_lattice(d: usize) -> Result<Pqf> {
    if d % 2 != 0 || d < 8 {
        return Err(Error::InvalidParameter("the lattice variant of Dplus requires d >= 8 even".into()));
    }
    let mut gens: Vec<Vec<BigInt>> = d_basis(d)
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(2 * x)).collect())
        .collect();
    gens.push(vec![BigInt::one(); d]);
    let b = hermite_basis(&gens)?;
    let q = gram_of_big_rows(&b, &rat(1, 4));
    Ok(lll_reduce(&q, &rat(99, 100)).reduced)
}

/// `X_alpha = (Q, A^{-1} t_alpha)` with `t_alpha = (1/2, ..., 1/2, alpha)` over the
/// fixed `D_9` basis `A`.
pub fn fluid_diamond(alpha: &Rational) -> PeriodicForm {
    let mut p = vec![rat(1, 2); 9];
    p[8] = alpha.clone();
    let t = coordinates(&d_basis(9), &p);
    PeriodicForm::new(d_gram(9), vec![t]).expect("dimensions agree")
}

/// Coxeter-Todd lattice from the Eisenstein description: six Eisenstein
/// integers `x_k = a_k + b_k w`, all congruent modulo `sqrt(-3)`, with
/// `sum x_k = 0 mod 3`, norms scaled by `2/3`.
pub fn k12() -> Pqf {
    // conditions over F_3 on (a_1, b_1, ..., a_6, b_6)
    let mut eqs: Vec<Vec<i64>> = Vec::new();
    for k in 1..6 {
        let mut e = vec![0i64; 12];
        e[2 * k] = 1;
        e[2 * k + 1] = 1;
        e[0] -= 1;
        e[1] -= 1;
        eqs.push(e);
    }
    eqs.push((0..12).map(|i| if i % 2 == 0 { 1 } else { 0 }).collect());
    eqs.push((0..12).map(|i| if i % 2 == 1 { 1 } else { 0 }).collect());
    let mut gens: Vec<Vec<BigInt>> = Vec::new();
    for v in kernel_mod3(&eqs, 12) {
        gens.push(v.into_iter().map(BigInt::from).collect());
    }
    for k in 0..12 {
        let mut e = vec![BigInt::zero(); 12];
        e[k] = BigInt::from(3);
        gens.push(e);
    }
    let b = hermite_basis(&gens).expect("full rank");
    // Gram of the norm a^2 - ab + b^2 per coordinate pair, times 2/3
    let n = b.len();
    let ip = |x: &[BigInt], y: &[BigInt]| -> Rational {
        let mut s = Rational::zero();
        for k in 0..6 {
            let (a1, b1, a2, b2) = (&x[2 * k], &x[2 * k + 1], &y[2 * k], &y[2 * k + 1]);
            let v = Rational::from_integer(a1 * a2 + b1 * b2) - Rational::new(a1 * b2 + b1 * a2, BigInt::from(2));
            s += v;
        }
        s * rat(2, 3)
    };
    let rows: Vec<Vec<Rational>> = (0..n).map(|i| (0..n).map(|j| ip(&b[i], &b[j])).collect()).collect();
    let q = Pqf::new(SymForm::from_rows(&rows).expect("symmetric")).expect("positive definite");
    lll_reduce(&q, &rat(99, 100)).reduced
}

/// Basis of `{x in F_3^n : E x = 0}`, lifted to `{0, 1, 2}`.
fn kernel_mod3(eqs: &[Vec<i64>], n: usize) -> Vec<Vec<i64>> {
    let mut m: Vec<Vec<i64>> = eqs.iter().map(|e| e.iter().map(|x| x.rem_euclid(3)).collect()).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..m.len()).find(|&i| m[i][c] != 0) else { continue };
        m.swap(r, p);
        let inv = if m[r][c] == 1 { 1 } else { 2 };
        for x in m[r].iter_mut() {
            *x = (*x * inv) % 3;
        }
        for i in 0..m.len() {
            if i != r && m[i][c] != 0 {
                let f = m[i][c];
                for j in 0..n {
                    m[i][j] = (m[i][j] - f * m[r][j]).rem_euclid(3);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0i64; n];
            v[f] = 1;
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = (-m[row][f]).rem_euclid(3);
            }
            v
        })
        .collect()
}

/// Extended binary Golay code words spanned by the cyclic shifts of
/// `1 + x^2 + x^4 + x^5 + x^6 + x^10 + x^11`, with a parity bit appended.
pub fn golay_generators() -> Vec<Vec<u8>> {
    let g = [0usize, 2, 4, 5, 6, 10, 11];
    (0..12)
        .map(|s| {
            let mut w = vec![0u8; 24];
            for &k in &g {
                w[k + s] = 1;
            }
            w[23] = (w[..23].iter().map(|&b| b as u32).sum::<u32>() % 2) as u8;
            w
        })
        .collect()
}

/// Weight distribution `A_0, ..., A_24` of the code spanned by `gens`.
pub fn weight_distribution(gens: &[Vec<u8>]) -> Vec<usize> {
    let n = gens[0].len();
    let masks: Vec<u32> = gens
        .iter()
        .map(|w| w.iter().enumerate().fold(0u32, |acc, (i, &b)| acc | ((b as u32) << i)))
        .collect();
    let mut dist = vec![0usize; n + 1];
    for sel in 0u32..(1 << masks.len()) {
        let mut w = 0u32;
        for (k, m) in masks.iter().enumerate() {
            if sel >> k & 1 == 1 {
                w ^= m;
            }
        }
        dist[w.count_ones() as usize] += 1;
    }
    dist
}

/// Leech lattice: `sqrt(8)` times it is generated by `2c` for Golay words
/// `c`, `4(e_i - e_j)`, `8 e_1` and `(-3, 1, ..., 1)`.
pub fn leech() -> Result<Pqf> {
    let code = golay_generators();
    let dist = weight_distribution(&code);
    let mut want = vec![0usize; 25];
    want[0] = 1;
    want[8] = 759;
    want[12] = 2576;
    want[16] = 759;
    want[24] = 1;
    if dist != want {
        return Err(Error::CertificateCheck("Golay code has the wrong weight distribution".into()));
    }
    let mut gens: Vec<Vec<BigInt>> = code
        .iter()
        .map(|w| w.iter().map(|&b| BigInt::from(2 * b as i64)).collect())
        .collect();
    for i in 0..23 {
        let mut v = vec![BigInt::zero(); 24];
        v[i] = BigInt::from(4);
        v[i + 1] = BigInt::from(-4);
        gens.push(v);
    }
    let mut v = vec![BigInt::zero(); 24];
    v[0] = BigInt::from(8);
    gens.push(v);
    let mut v = vec![BigInt::one(); 24];
    v[0] = BigInt::from(-3);
    gens.push(v);
    let b = hermite_basis(&gens)?;
    let q = gram_of_big_rows(&b, &rat(1, 8));
    Ok(lll_reduce(&q, &rat(99, 100)).reduced)
}

/// `X = (H^t Q H, t)` where the columns of `t` are the nonzero coset
/// representatives of `Z^d / H Z^d` in `H`-coordinates. `H` is given by rows
/// and its columns are the sublattice basis.
pub fn sublattice_representation(q: &Pqf, h: &[Vec<i64>]) -> Result<PeriodicForm> {
    let d = q.dim();
    if h.len() != d || h.iter().any(|r| r.len() != d) {
        return Err(Error::DimensionMismatch(format!("H must be {d} x {d}")));
    }
    let hb: Vec<Vec<BigInt>> = h.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let det = int_det(&hb);
    if det.is_zero() {
        return Err(Error::SingularSublattice);
    }
    let hr: Vec<Vec<Rational>> = h.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect();
    let qs = Pqf::new(q.form().congruent(&hr))?;
    // columns of H as generators
    let cols: Vec<Vec<BigInt>> = (0..d).map(|j| (0..d).map(|i| hb[i][j].clone()).collect()).collect();
    let hnf = hermite_basis(&cols)?;
    let diag: Vec<i64> = (0..d).map(|k| hnf[k][k].to_i64().expect("index fits in i64")).collect();
    let mut reps: Vec<Vec<i64>> = vec![vec![]];
    for &b in &diag {
        reps = reps
            .into_iter()
            .flat_map(|r| (0..b).map(move |x| [r.clone(), vec![x]].concat()))
            .collect();
    }
    let mut t = Vec::new();
    for r in reps.into_iter().filter(|r| r.iter().any(|&x| x != 0)) {
        let rr: Vec<Rational> = r.iter().map(|&x| int(x)).collect();
        let y = solve_many(&hr, &[rr]).expect("H is invertible").remove(0);
        t.push(y.iter().map(|v| split_mod_one(v).1).collect());
    }
    debug_assert_eq!(BigInt::from(t.len() + 1), det.abs());
    PeriodicForm::new(qs, t)
}

/// All upper triangular Hermite normal forms of index `n` in dimension `d`,
/// returned as `H` matrices (rows) whose columns span the sublattices.
pub fn sublattices_of_index(d: usize, n: i64) -> Vec<Vec<Vec<i64>>> {
    let mut out = Vec::new();
    for diag in diagonals(d, n) {
        // free entries above the diagonal of the row basis: (i, k) with i < k,
        // reduced modulo diag[k]
        let slots: Vec<(usize, usize)> = (0..d).flat_map(|k| (0..k).map(move |i| (i, k))).collect();
        let mut fills: Vec<Vec<i64>> = vec![vec![]];
        for &(_, k) in &slots {
            let b = diag[k];
            fills = fills
                .into_iter()
                .flat_map(|f| (0..b).map(move |x| [f.clone(), vec![x]].concat()))
                .collect();
        }
        for f in fills {
            let mut rows = vec![vec![0i64; d]; d];
            for k in 0..d {
                rows[k][k] = diag[k];
            }
            for (&(i, k), &x) in slots.iter().zip(&f) {
                rows[i][k] = x;
            }
            // H has the row basis vectors as columns
            out.push((0..d).map(|i| (0..d).map(|j| rows[j][i]).collect()).collect());
        }
    }
    out
}

fn diagonals(d: usize, n: i64) -> Vec<Vec<i64>> {
    if d == 0 {
        return if n == 1 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for a in 1..=n {
        if n % a == 0 {
            for mut rest in diagonals(d - 1, n / a) {
                rest.insert(0, a);
                out.push(rest);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::shortest_vectors;
    use crate::periodic::{density, generalized_min};

    fn check_entry(e: &CatalogEntry) {
        let q = e.form.q();
        if let Some(det) = &e.expected.det {
            assert_eq!(&q.det(), det, "{} det", e.name);
        }
        let g = generalized_min(&e.form);
        if let Some(l) = &e.expected.lambda {
            assert_eq!(&g.lambda, l, "{} lambda", e.name);
        }
        if let Some(c) = e.expected.min_classes {
            if e.form.m() == 1 {
                assert_eq!(g.reps.len(), c, "{} classes", e.name);
            } else {
                assert_eq!(g.reps.len(), c, "{} reps", e.name);
            }
        }
    }

    #[test]
    fn small_entries_match_expected() {
        for (name, params) in [
            ("Zd", vec!["3"]),
            ("A", vec!["2"]),
            ("A", vec!["5"]),
            ("D", vec!["4"]),
            ("D", vec!["5"]),
            ("E6", vec![]),
            ("E7", vec![]),
            ("E8", vec![]),
            ("Dplus", vec!["5"]),
            ("Dplus", vec!["10"]),
            ("DplusLattice", vec!["8"]),
            ("DplusLattice", vec!["10"]),
        ] {
            check_entry(&get(name, &params).unwrap());
        }
    }

    #[test]
    fn a2_gram() {
        let e = get("A", &["2"]).unwrap();
        assert_eq!(e.form.q().form(), &SymForm::from_i64_rows(&[vec![2, 1], vec![1, 2]]).unwrap());
    }

    #[test]
    fn errors() {
        assert!(matches!(get("E9", &[]), Err(Error::UnknownCatalogEntry(_))));
        assert!(matches!(get("DplusLattice", &["9"]), Err(Error::InvalidParameter(_))));
        assert!(matches!(get("DplusLattice", &["6"]), Err(Error::InvalidParameter(_))));
        assert!(matches!(get("A", &[]), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn dplus_lattice_has_root_minimum() {
        for d in [10, 12] {
            let l = dplus_lattice(d).unwrap();
            let dd = d_gram(d);
            assert_eq!(shortest_vectors(&l).vectors.len(), shortest_vectors(&dd).vectors.len());
            assert_eq!(shortest_vectors(&l).min, int(2));
        }
    }

    #[test]
    fn golay_weights() {
        let w = weight_distribution(&golay_generators());
        assert_eq!((w[0], w[8], w[12], w[16], w[24]), (1, 759, 2576, 759, 1));
    }

    #[test]
    fn k12_invariants() {
        let q = k12();
        assert_eq!(q.det(), int(729));
        let s = shortest_vectors(&q);
        assert_eq!(s.min, int(4));
        assert_eq!(s.vectors.len(), 378);
    }

    #[test]
    fn coset_representation_in_one_dimension() {
        let q = Pqf::new(SymForm::identity(1)).unwrap();
        let x = sublattice_representation(&q, &[vec![2]]).unwrap();
        assert_eq!(x.m(), 2);
        assert_eq!(x.q().form().get(0, 0), &int(4));
        assert_eq!(x.translations()[0], vec![rat(1, 2)]);
        assert_eq!(sublattice_representation(&q, &[vec![0]]).unwrap_err(), Error::SingularSublattice);
    }

    #[test]
    fn sublattice_counts() {
        // number of index n sublattices of Z^2 is sigma(n)
        assert_eq!(sublattices_of_index(2, 2).len(), 3);
        assert_eq!(sublattices_of_index(2, 4).len(), 7);
        assert_eq!(sublattices_of_index(3, 2).len(), 7);
        assert_eq!(sublattices_of_index(4, 2).len(), 15);
        assert_eq!(sublattices_of_index(4, 3).len(), 40);
    }

    #[test]
    fn representations_preserve_density() {
        let q = a_gram(2);
        let base = density(&PeriodicForm::lattice(q.clone()));
        for n in 1..=4 {
            for h in sublattices_of_index(2, n) {
                let x = sublattice_representation(&q, &h).unwrap();
                assert_eq!(x.m() as i64, n);
                let r = density(&x);
                assert_eq!(r.lambda, base.lambda);
                assert_eq!(r.center_density_squared, base.center_density_squared);
            }
        }
    }

    #[test]
    fn fluid_diamond_translation() {
        let x = fluid_diamond(&rat(1, 4));
        // t_alpha recovered from its basis coordinates
        let b = d_basis(9);
        let t = &x.translations()[0];
        let p: Vec<Rational> = (0..9).map(|i| (0..9).map(|k| &t[k] * int(b[k][i])).sum()).collect();
        // reduction mod 1 in basis coordinates moves p by a D_9 vector
        let diff: Vec<Rational> = (0..9)
            .map(|i| &p[i] - if i < 8 { rat(1, 2) } else { rat(1, 4) })
            .collect();
        assert!(diff.iter().all(|v| v.is_integer()));
        let s: Rational = diff.iter().sum();
        assert!((s / int(2)).is_integer());
    }
}
