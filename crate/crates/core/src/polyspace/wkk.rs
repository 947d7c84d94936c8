use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Field, QuadElem, QuadInt};
use crate::forms::Mat2;

use super::bipoly::{act_poly, one_var_matrix, BiPoly};
use super::group::{act_word, GroupWord, Presentation};
use super::linalg::{kernel_exact, kernel_modular, SplitPrime};

/// How kernels are computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum KernelMethod {
    /// Fraction-free elimination over Z[ω].
    Exact,
    /// Elimination modulo split primes, lifted and then checked exactly.
    Modular,
    /// Exact for k ≤ 11, modular above.
    Auto,
}

/// The eigenvalue u^index of ε = diag(u, 1), with u of order `order`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Eigen {
    pub order: u32,
    pub index: u32,
}

impl Eigen {
    pub fn is_real(&self) -> bool {
        (2 * self.index).is_multiple_of(self.order)
    }

    pub fn label(&self) -> String {
        match (self.order, self.index) {
            (_, 0) => "1".into(),
            (o, i) if 2 * i == o => "-1".into(),
            (4, 1) => "i".into(),
            (4, 3) => "-i".into(),
            (_, 1) => "ζ".into(),
            (_, i) => format!("ζ^{i}"),
        }
    }

    /// u^index as an element of O_d.
    pub fn value(&self, pres: &Presentation) -> QuadInt {
        pres.eps.a.pow(self.index)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubspaceReport {
    pub d: u32,
    pub k: usize,
    pub dim_w: usize,
    /// (eigenvalue label, dimension) in the order 1, then increasing index.
    pub dim_by_eigenvalue: Vec<(String, usize)>,
    /// Basis of W, eigenspace by eigenspace, each in reduced-echelon normalisation.
    pub basis: Vec<BiPoly>,
    pub method: KernelMethod,
}

impl SubspaceReport {
    pub fn dim(&self, label: &str) -> usize {
        self.dim_by_eigenvalue.iter().find(|(l, _)| l == label).map(|x| x.1).unwrap_or(0)
    }
}

/// (coefficient, matrix, conjugate matrix) reduced modulo a split prime.
type ReducedTerm = (u64, Vec<Vec<u64>>, Vec<Vec<u64>>);

/// A column of the reduced problem: a signed sum of monomials (i, j).
type Column = Vec<(usize, usize, i64)>;

struct Operators {
    /// Words whose every term is diagonal on monomials: monomial (i, j) ↦ λ(i, j)·itself.
    diagonal: Vec<Vec<(i64, Vec<Vec<QuadInt>>)>>,
    /// Remaining words as (coefficient, one-variable matrix) lists.
    dense: Vec<Vec<(i64, Vec<Vec<QuadInt>>)>>,
}

fn is_diagonal(m: &[Vec<QuadInt>]) -> bool {
    m.iter().enumerate().all(|(i, r)| r.iter().enumerate().all(|(j, x)| i == j || x.is_zero()))
}

fn operators(pres: &Presentation, k: usize) -> Result<Operators> {
    let mut ops = Operators { diagonal: Vec::new(), dense: Vec::new() };
    // The first operator, 1 + S, is built into the column basis.
    for w in pres.kernel_words().iter().skip(1) {
        let mats: Vec<(i64, Vec<Vec<QuadInt>>)> =
            pres.realize(w)?.into_iter().map(|(c, g)| (c, one_var_matrix(&g, k))).collect();
        if mats.iter().all(|(_, m)| is_diagonal(m)) {
            ops.diagonal.push(mats);
        } else {
            ops.dense.push(mats);
        }
    }
    Ok(ops)
}

/// Basis of V^e ∩ ker(1+S) ∩ (kernels of the diagonal operators), as monomial columns.
fn columns(pres: &Presentation, k: usize, e: Eigen, ops: &Operators) -> Vec<Column> {
    if !e.is_real() {
        // S maps V^e onto V^ē, so P + P|S = 0 forces P = 0.
        return Vec::new();
    }
    let n = pres.eps_order as i64;
    let ms = one_var_matrix(&pres.s, k);
    let s_image = |i: usize, j: usize| -> (usize, usize, i64) {
        let ip = (0..=k).find(|&x| !ms[i][x].is_zero()).expect("S permutes monomials");
        let jp = (0..=k).find(|&x| !ms[j][x].is_zero()).expect("S permutes monomials");
        let c = &ms[i][ip] * &ms[j][jp].conj();
        let sign = if c.is_one() { 1 } else { -1 };
        (ip, jp, sign)
    };
    let kills = |i: usize, j: usize| -> bool {
        ops.diagonal.iter().all(|mats| {
            let f = pres.field;
            let lam = mats.iter().fold(f.zero(), |acc, (c, m)| &acc + &(&m[i][i] * &m[j][j].conj()).scale(&(*c).into()));
            lam.is_zero()
        })
    };
    let mut cols = Vec::new();
    for i in 0..=k {
        for j in 0..=k {
            if (i as i64 - j as i64).rem_euclid(n) != e.index as i64 {
                continue;
            }
            let (ip, jp, sign) = s_image(i, j);
            if (ip, jp) < (i, j) {
                continue;
            }
            let col = if (ip, jp) == (i, j) {
                if sign == 1 {
                    continue;
                }
                vec![(i, j, 1)]
            } else {
                vec![(i, j, 1), (ip, jp, -sign)]
            };
            if col.iter().all(|&(a, b, _)| kills(a, b)) {
                cols.push(col);
            }
        }
    }
    cols
}

fn column_poly(f: Field, k: usize, col: &Column) -> BiPoly {
    let mut p = BiPoly::zero(f, k);
    for &(i, j, s) in col {
        p.set(i, j, QuadElem::from(f.int(s)));
    }
    p
}

fn exact_matrix(f: Field, k: usize, cols: &[Column], ops: &Operators) -> Vec<Vec<QuadInt>> {
    let n = k + 1;
    let nrows = ops.dense.len() * n * n;
    let mut a = vec![vec![f.zero(); cols.len()]; nrows];
    for (c, col) in cols.iter().enumerate() {
        for (o, mats) in ops.dense.iter().enumerate() {
            for (coef, m) in mats {
                for &(i, j, s) in col {
                    let scale = QuadInt::from_i64(f, coef * s, 0);
                    for ip in 0..n {
                        if m[i][ip].is_zero() {
                            continue;
                        }
                        let left = &scale * &m[i][ip];
                        for jp in 0..n {
                            if m[j][jp].is_zero() {
                                continue;
                            }
                            let r = o * n * n + ip * n + jp;
                            a[r][c] = &a[r][c] + &(&left * &m[j][jp].conj());
                        }
                    }
                }
            }
        }
    }
    a.retain(|row| row.iter().any(|x| !x.is_zero()));
    a
}

fn modular_matrix(
    f: Field,
    k: usize,
    cols: &[Column],
    ops: &Operators,
    sp: &SplitPrime,
    root: u64,
    rows: Option<&[usize]>,
) -> Vec<u64> {
    let p = sp.p;
    let n = k + 1;
    let other = (f.disc().rem_euclid(p as i64) as u64 + p - root) % p;
    let emb: Vec<Vec<ReducedTerm>> = ops
        .dense
        .iter()
        .map(|mats| {
            mats.iter()
                .map(|(c, m)| {
                    let e = |r: u64| m.iter().map(|row| row.iter().map(|x| sp.embed(x, r)).collect()).collect();
                    ((*c).rem_euclid(p as i64) as u64, e(root), e(other))
                })
                .collect()
        })
        .collect();
    let nrows_full = ops.dense.len() * n * n;
    let ncols = cols.len();
    let mut full = vec![0u64; nrows_full * ncols];
    for (c, col) in cols.iter().enumerate() {
        for (o, mats) in emb.iter().enumerate() {
            for (coef, m, mc) in mats {
                for &(i, j, s) in col {
                    let sc = if s == 1 { *coef } else { (p - coef) % p };
                    for ip in 0..n {
                        let left = sc * m[i][ip] % p;
                        if left == 0 {
                            continue;
                        }
                        for jp in 0..n {
                            let r = o * n * n + ip * n + jp;
                            let slot = &mut full[r * ncols + c];
                            *slot = (*slot + left * mc[j][jp]) % p;
                        }
                    }
                }
            }
        }
    }
    match rows {
        None => full,
        Some(rs) => rs.iter().flat_map(|&r| full[r * ncols..(r + 1) * ncols].iter().copied()).collect(),
    }
}

/// True iff P is killed by every defining operator of W_{k,k}.
fn in_kernel(p: &BiPoly, pres: &Presentation, words: &[GroupWord]) -> bool {
    words.iter().all(|w| act_word(p, pres, w).map(|r| r.is_zero()).unwrap_or(false))
}

fn combine(f: Field, k: usize, cols: &[Column], v: &[QuadElem]) -> BiPoly {
    cols.iter().zip(v).fold(BiPoly::zero(f, k), |acc, (col, c)| {
        if c.is_zero() {
            acc
        } else {
            acc.add(&column_poly(f, k, col).scale(c))
        }
    })
}

fn eigen_list(pres: &Presentation) -> Vec<Eigen> {
    (0..pres.eps_order).map(|index| Eigen { order: pres.eps_order, index }).collect()
}

/// Basis of W^e_{k,k} for one eigenvalue.
pub fn eigenspace_basis(f: Field, k: usize, e: Eigen, method: KernelMethod) -> Result<Vec<BiPoly>> {
    let pres = Presentation::new(f);
    let ops = operators(&pres, k)?;
    let cols = columns(&pres, k, e, &ops);
    if cols.is_empty() {
        return Ok(Vec::new());
    }
    let method = match method {
        KernelMethod::Auto if k <= 11 => KernelMethod::Exact,
        KernelMethod::Auto => KernelMethod::Modular,
        m => m,
    };
    let vectors = match method {
        KernelMethod::Exact => {
            let a = exact_matrix(f, k, &cols, &ops);
            kernel_exact(f, a, cols.len())
        }
        _ => {
            let words = pres.kernel_words();
            let (v, _) = kernel_modular(
                f,
                cols.len(),
                |sp, root, rows| modular_matrix(f, k, &cols, &ops, sp, root, rows),
                |cands| cands.par_iter().all(|v| in_kernel(&combine(f, k, &cols, v), &pres, &words)),
            )?;
            v
        }
    };
    Ok(vectors.iter().map(|v| combine(f, k, &cols, v)).collect())
}

/// W_{k,k} for Γ_d, split into ε-eigenspaces.
pub fn wkk(f: Field, k: usize) -> Result<SubspaceReport> {
    wkk_with(f, k, KernelMethod::Auto)
}

pub fn wkk_with(f: Field, k: usize, method: KernelMethod) -> Result<SubspaceReport> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    let pres = Presentation::new(f);
    let eigs = eigen_list(&pres);
    let parts: Vec<Result<Vec<BiPoly>>> = eigs.par_iter().map(|&e| eigenspace_basis(f, k, e, method)).collect();
    let mut basis = Vec::new();
    let mut dims = Vec::new();
    for (e, part) in eigs.iter().zip(parts) {
        let part = part?;
        dims.push((e.label(), part.len()));
        basis.extend(part);
    }
    Ok(SubspaceReport { d: f.d(), k, dim_w: basis.len(), dim_by_eigenvalue: dims, basis, method })
}

/// Membership in W_{k,k}, with the ε-eigenvalue when P is an eigenvector.
pub fn membership(p: &BiPoly, f: Field) -> (bool, Option<String>) {
    let pres = Presentation::new(f);
    let inside = in_kernel(p, &pres, &pres.kernel_words());
    if p.is_zero() {
        return (inside, None);
    }
    let image = act_poly(p, &pres.eps);
    let tag = eigen_list(&pres)
        .into_iter()
        .find(|e| image == p.scale(&QuadElem::from(e.value(&pres))))
        .map(|e| e.label());
    (inside, tag)
}

/// (P|word) as a matrix on the monomial basis, rows and columns indexed by i(k+1)+j.
pub fn operator_matrix(word: &GroupWord, k: usize, f: Field) -> Result<Vec<Vec<QuadInt>>> {
    let pres = Presentation::new(f);
    let n = k + 1;
    let mut a = vec![vec![f.zero(); n * n]; n * n];
    for (coef, g) in pres.realize(word)? {
        let m = one_var_matrix(&g, k);
        for i in 0..n {
            for j in 0..n {
                for ip in 0..n {
                    for jp in 0..n {
                        let v = (&m[i][ip] * &m[j][jp].conj()).scale(&coef.into());
                        let slot = &mut a[ip * n + jp][i * n + j];
                        *slot = &*slot + &v;
                    }
                }
            }
        }
    }
    Ok(a)
}

/// Dimensions of W^1, W^{-1} and W printed in the tables for odd k = 1, 3, 5, ….
pub fn reference_table(f: Field) -> Vec<(usize, usize, Option<usize>, Option<usize>)> {
    let w1: Vec<usize> = match f {
        Field::D1 => vec![1, 1, 2, 2, 3, 3, 4, 4, 5, 5, 6, 6, 7, 7, 8, 8],
        Field::D3 => vec![1, 1, 1, 2, 2, 2, 3, 3, 3, 4, 4, 4, 5, 5, 5, 6],
        Field::D2 => (1..=16).collect(),
        Field::D7 => vec![1, 1, 2, 3, 3, 4, 5, 5, 6, 7, 7, 8, 9, 9],
        Field::D11 => (1..=11).collect(),
    };
    let wm1 = [0, 0, 0, 1, 0, 1, 1, 1, 1, 2, 1, 2, 2, 2, 2, 3];
    let total = [1, 1, 2, 3, 3, 4, 5, 5, 6, 7, 7, 8, 9, 9, 10, 11];
    w1.into_iter()
        .enumerate()
        .map(|(n, d1)| {
            let k = 2 * n + 1;
            match f {
                Field::D1 => (k, d1, Some(wm1[n]), Some(total[n])),
                Field::D7 if k > 19 => (k, d1, None, None),
                _ => (k, d1, Some(0), Some(d1)),
            }
        })
        .collect()
}

/// Conjectured dim W^1 and, for d = 1, dim W.
pub fn conjecture(f: Field, k: usize) -> (usize, Option<usize>) {
    match f {
        Field::D1 => ((k - 1) / 4 + 1, Some((k - 1) / 3 + 1)),
        Field::D3 => (k / 6 + 1, None),
        Field::D2 | Field::D11 => (k.div_ceil(2), None),
        Field::D7 => ((k - 1) / 3 + 1, None),
    }
}

/// One row of a dimension table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimRow {
    pub d: u32,
    pub k: usize,
    pub dims: Vec<(String, usize)>,
    pub total: usize,
    pub conjecture_match: bool,
    pub table_match: Option<bool>,
    pub millis: u128,
}

pub fn dim_row(f: Field, k: usize, method: KernelMethod) -> Result<DimRow> {
    let start = Instant::now();
    let r = wkk_with(f, k, method)?;
    let millis = start.elapsed().as_millis();
    let (c1, ct) = if k % 2 == 1 { conjecture(f, k) } else { (usize::MAX, None) };
    let conjecture_match = r.dim("1") == c1 && ct.is_none_or(|t| t == r.dim_w);
    let table_match = reference_table(f).into_iter().find(|row| row.0 == k).map(|(_, w1, wm1, tot)| {
        r.dim("1") == w1 && wm1.is_none_or(|x| x == r.dim("-1")) && tot.is_none_or(|x| x == r.dim_w)
    });
    Ok(DimRow { d: f.d(), k, dims: r.dim_by_eigenvalue, total: r.dim_w, conjecture_match, table_match, millis })
}

/// ε-action matrix used by the presentations.
pub fn eps_matrix(f: Field) -> Mat2 {
    Presentation::new(f).eps
}
