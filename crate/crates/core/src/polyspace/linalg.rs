//! Kernels of matrices over Z[ω]: fraction-free elimination, and a multi-modular
//! route whose output is confirmed by an exact check supplied by the caller.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::field::{kronecker, Field, QuadElem, QuadInt};

/// Reduced-echelon kernel basis: one vector per free column, with a 1 in that column
/// and zeros in the other free columns.
pub fn kernel_exact(f: Field, mut a: Vec<Vec<QuadInt>>, ncols: usize) -> Vec<Vec<QuadElem>> {
    let nrows = a.len();
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows)
            .filter(|&i| !a[i][c].is_zero())
            .min_by_key(|&i| a[i][c].norm())
        else {
            continue;
        };
        a.swap(r, p);
        let piv = a[r][c].clone();
        let prow = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let fac = row[c].clone();
            for j in 0..ncols {
                let v = &(&piv * &row[j]) - &(&fac * &prow[j]);
                row[j] = v;
            }
            strip_content(row);
        }
        pivots.push((r, c));
        r += 1;
    }
    let pivot_cols: Vec<usize> = pivots.iter().map(|p| p.1).collect();
    (0..ncols)
        .filter(|c| !pivot_cols.contains(c))
        .map(|fc| {
            let mut v = vec![QuadElem::zero(f); ncols];
            v[fc] = QuadElem::one(f);
            for &(row, pc) in &pivots {
                let num = QuadElem::from(-&a[row][fc]);
                v[pc] = num.div(&QuadElem::from(a[row][pc].clone())).expect("nonzero pivot");
            }
            v
        })
        .collect()
}

fn strip_content(row: &mut [QuadInt]) {
    let g = row.iter().fold(BigInt::zero(), |g, x| g.gcd(&x.x).gcd(&x.y));
    if g > BigInt::one() {
        for x in row.iter_mut() {
            x.x /= &g;
            x.y /= &g;
        }
    }
}

/// A prime p < 2³¹ that splits in O_d, with r a root of ω's minimal polynomial mod p.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SplitPrime {
    pub p: u64,
    pub r: u64,
}

impl SplitPrime {
    /// The other root, t − r, which is the image of ω̄.
    pub fn conj_root(&self, f: Field) -> u64 {
        (f.disc().rem_euclid(self.p as i64) as u64 + self.p - self.r) % self.p
    }

    pub fn reduce_int(&self, x: &BigInt) -> u64 {
        x.mod_floor(&BigInt::from(self.p)).to_u64().expect("residue fits")
    }

    /// Image of x + yω under ω ↦ root.
    pub fn embed(&self, q: &QuadInt, root: u64) -> u64 {
        (self.reduce_int(&q.x) + self.reduce_int(&q.y) * root) % self.p
    }
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

fn is_prime_u32(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13] {
        if n.is_multiple_of(q) {
            return n == q;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'outer: for a in [2u64, 7, 61] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = x * x % n;
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

/// Odd primes below 2³¹ that split in O_d, in decreasing order.
pub fn split_primes(f: Field) -> impl Iterator<Item = SplitPrime> {
    let t = f.disc();
    let n = f.omega_norm();
    (0..(1u64 << 30)).map(|i| (1u64 << 31) - 1 - 2 * i).filter_map(move |p| {
        if !is_prime_u32(p) || kronecker(t, p as i64).ok()? != 1 {
            return None;
        }
        let tp = t.rem_euclid(p as i64) as u64;
        let sq = sqrt_mod(tp, p);
        let inv2 = p.div_ceil(2);
        let r = (tp + sq) % p * inv2 % p;
        debug_assert_eq!((r * r % p + p * p - tp * r % p + n as u64 % p) % p, 0);
        Some(SplitPrime { p, r })
    })
}

/// Square root of a quadratic residue a modulo an odd prime p (Tonelli–Shanks).
fn sqrt_mod(a: u64, p: u64) -> u64 {
    if p % 4 == 3 {
        return pow_mod(a, (p + 1) / 4, p);
    }
    let (mut q, mut s) = (p - 1, 0u32);
    while q % 2 == 0 {
        q /= 2;
        s += 1;
    }
    let z = (2..p).find(|&z| pow_mod(z, (p - 1) / 2, p) == p - 1).expect("non-residue exists");
    let mut c = pow_mod(z, q, p);
    let mut x = pow_mod(a, q.div_ceil(2), p);
    let mut t = pow_mod(a, q, p);
    let mut m = s;
    while t != 1 {
        let mut i = 0;
        let mut t2 = t;
        while t2 != 1 {
            t2 = t2 * t2 % p;
            i += 1;
        }
        let b = pow_mod(c, 1u64 << (m - i - 1), p);
        x = x * b % p;
        c = b * b % p;
        t = t * c % p;
        m = i;
    }
    x
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

/// In-place reduced echelon form of a row-major matrix mod p. Returns the pivot
/// columns and the original indices of the rows that became pivot rows.
pub fn rref_mod(m: &mut [u64], nrows: usize, ncols: usize, p: u64) -> (Vec<usize>, Vec<usize>) {
    let mut ids: Vec<usize> = (0..nrows).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(i) = (r..nrows).find(|&i| m[i * ncols + c] != 0) else {
            continue;
        };
        if i != r {
            for j in 0..ncols {
                m.swap(i * ncols + j, r * ncols + j);
            }
            ids.swap(i, r);
        }
        let inv = inv_mod(m[r * ncols + c], p);
        for j in c..ncols {
            m[r * ncols + j] = m[r * ncols + j] * inv % p;
        }
        let (head, tail) = m.split_at_mut(r * ncols);
        let (prow, rest) = tail.split_at_mut(ncols);
        let eliminate = |row: &mut [u64]| {
            let fac = row[c];
            if fac == 0 {
                return;
            }
            let neg = p - fac;
            for j in c..ncols {
                row[j] = (row[j] + neg * prow[j]) % p;
            }
        };
        head.chunks_mut(ncols).for_each(eliminate);
        rest.chunks_mut(ncols).for_each(eliminate);
        pivots.push(c);
        r += 1;
    }
    ids.truncate(r);
    (pivots, ids)
}

/// Rational reconstruction of a mod m with numerator and denominator below √(m/2).
pub fn rational_reconstruct(a: &BigInt, m: &BigInt) -> Option<(BigInt, BigInt)> {
    let bound = (m / 2u32).sqrt();
    let (mut r0, mut r1) = (m.clone(), a.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound || !r1.gcd(&t1).is_one() {
        return None;
    }
    if t1.is_negative() {
        Some((-r1, -t1))
    } else {
        Some((r1, t1))
    }
}

/// Summary of a modular kernel computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModularStats {
    pub primes_used: usize,
    pub restarts: usize,
}

/// Kernel of a matrix over Z[ω], given only through its reductions. `build(prime, root)`
/// returns the row-major matrix with ω ↦ root; `rows` restricts to a subset of rows when
/// given. `verify` receives candidate kernel vectors over Q(ω) and must confirm exactly
/// that they lie in the kernel of the full matrix. Since the nullity mod p bounds the
/// true nullity from above, confirmed candidates are the full kernel.
pub fn kernel_modular<B, V>(f: Field, ncols: usize, build: B, verify: V) -> Result<(Vec<Vec<QuadElem>>, ModularStats)>
where
    B: Fn(&SplitPrime, u64, Option<&[usize]>) -> Vec<u64>,
    V: Fn(&[Vec<QuadElem>]) -> bool,
{
    const MAX_PRIMES: usize = 4000;
    let t = f.disc();
    let mut best: Option<(Vec<usize>, Vec<usize>)> = None;
    // CRT state: residues of X and Y for every (free column, pivot) entry
    let mut modulus = BigInt::one();
    let mut xs: Vec<BigInt> = Vec::new();
    let mut ys: Vec<BigInt> = Vec::new();
    let mut last: Option<Vec<(BigInt, BigInt, BigInt, BigInt)>> = None;
    let mut stats = ModularStats { primes_used: 0, restarts: 0 };
    for sp in split_primes(f).take(MAX_PRIMES) {
        stats.primes_used += 1;
        let p = sp.p;
        let subset = best.as_ref().map(|b| b.1.clone());
        let mut reduced = Vec::with_capacity(2);
        for root in [sp.r, sp.conj_root(f)] {
            let mut m = build(&sp, root, subset.as_deref());
            let nrows = m.len() / ncols.max(1);
            let (piv, ids) = rref_mod(&mut m, nrows, ncols, p);
            reduced.push((m, piv, ids));
        }
        if reduced[0].1 != reduced[1].1 {
            continue;
        }
        let piv = reduced[0].1.clone();
        let ids_full = match &subset {
            Some(s) => reduced[0].2.iter().map(|&i| s[i]).collect(),
            None => reduced[0].2.clone(),
        };
        match &best {
            None => best = Some((piv.clone(), ids_full)),
            Some((bp, _)) if *bp == piv => {}
            Some((bp, _)) => {
                // a bad prime either now (skip it) or earlier (start over)
                if piv.len() > bp.len() || (piv.len() == bp.len() && piv < *bp) {
                    best = None;
                    modulus = BigInt::one();
                    xs.clear();
                    ys.clear();
                    last = None;
                    stats.restarts += 1;
                }
                continue;
            }
        }
        let free: Vec<usize> = (0..ncols).filter(|c| !piv.contains(c)).collect();
        let two_r_minus_t = (2 * sp.r as i64 - t).rem_euclid(p as i64) as u64;
        let inv_d = inv_mod(two_r_minus_t, p);
        let mut xr = Vec::with_capacity(free.len() * piv.len());
        let mut yr = Vec::with_capacity(free.len() * piv.len());
        for &fc in &free {
            for (row, _) in piv.iter().enumerate() {
                let e1 = (p - reduced[0].0[row * ncols + fc]) % p;
                let e2 = (p - reduced[1].0[row * ncols + fc]) % p;
                let y = (e1 + p - e2) % p * inv_d % p;
                let x = (e1 + p - y * sp.r % p) % p;
                xr.push(x);
                yr.push(y);
            }
        }
        if xs.is_empty() {
            xs = xr.iter().map(|&v| BigInt::from(v)).collect();
            ys = yr.iter().map(|&v| BigInt::from(v)).collect();
            modulus = BigInt::from(p);
        } else {
            let pb = BigInt::from(p);
            let minv = BigInt::from(inv_mod(sp.reduce_int(&modulus), p));
            for (acc, &res) in xs.iter_mut().chain(ys.iter_mut()).zip(xr.iter().chain(yr.iter())) {
                let delta = (BigInt::from(res) - &*acc).mod_floor(&pb) * &minv % &pb;
                *acc += &modulus * delta;
            }
            modulus *= p;
        }
        let recon: Option<Vec<(BigInt, BigInt, BigInt, BigInt)>> = xs
            .iter()
            .zip(&ys)
            .map(|(x, y)| {
                let (xn, xd) = rational_reconstruct(x, &modulus)?;
                let (yn, yd) = rational_reconstruct(y, &modulus)?;
                Some((xn, xd, yn, yd))
            })
            .collect();
        let Some(recon) = recon else { continue };
        let stable = last.as_ref() == Some(&recon);
        last = Some(recon.clone());
        if !stable {
            continue;
        }
        let mut vectors = Vec::with_capacity(free.len());
        for (n, &fc) in free.iter().enumerate() {
            let mut v = vec![QuadElem::zero(f); ncols];
            v[fc] = QuadElem::one(f);
            for (row, &pc) in piv.iter().enumerate() {
                let (xn, xd, yn, yd) = &recon[n * piv.len() + row];
                let den = xd.lcm(yd);
                let num = QuadInt::new(f, xn * (&den / xd), yn * (&den / yd));
                v[pc] = QuadElem::new(num, den);
            }
            vectors.push(v);
        }
        if verify(&vectors) {
            return Ok((vectors, stats));
        }
    }
    Err(Error::Consistency(format!(
        "modular kernel did not stabilise after {} primes",
        stats.primes_used
    )))
}
