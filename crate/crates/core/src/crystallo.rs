//! Orders of finite-order integer matrices: the function `psi`, the sets
//! `Ord_n` of orders occurring in `GL(n, Z)`, cyclotomic companion matrices
//! and Goldbach witnesses.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::CrystalloError;

/// Square matrix of arbitrary-precision integers, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntegerMatrix {
    n: usize,
    entries: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            entries: vec![BigInt::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.entries[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Result<Self, CrystalloError> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(CrystalloError::NotSquare);
        }
        Ok(Self {
            n,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Result<Self, CrystalloError> {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect())
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<BigInt>> {
        self.entries.chunks(self.n.max(1)).map(<[BigInt]>::to_vec).collect()
    }

    pub fn is_identity(&self) -> bool {
        (0..self.n).all(|i| {
            (0..self.n).all(|j| {
                let e = self.get(i, j);
                if i == j {
                    e.is_one()
                } else {
                    e.is_zero()
                }
            })
        })
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "size mismatch");
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = &self.entries[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &other.entries[k * n + j];
                    if !b.is_zero() {
                        out.entries[i * n + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn pow(&self, mut k: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::identity(self.n);
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Exact determinant by fraction-free elimination.
    pub fn determinant(&self) -> BigInt {
        let n = self.n;
        if n == 0 {
            return BigInt::one();
        }
        let mut a: Vec<Vec<BigInt>> = self.rows();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
                return BigInt::zero();
            };
            if p != k {
                a.swap(p, k);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                    a[i][j] = v;
                }
                a[i][k] = BigInt::zero();
            }
            prev = a[k][k].clone();
        }
        sign * &a[n - 1][n - 1]
    }

    /// Block-diagonal sum.
    pub fn block_diag(blocks: &[IntegerMatrix]) -> Self {
        let n = blocks.iter().map(|b| b.n).sum();
        let mut out = Self::zeros(n);
        let mut off = 0;
        for b in blocks {
            for i in 0..b.n {
                for j in 0..b.n {
                    out.entries[(off + i) * n + off + j] = b.get(i, j).clone();
                }
            }
            off += b.n;
        }
        out
    }

    fn neg(&self) -> Self {
        Self {
            n: self.n,
            entries: self.entries.iter().map(|e| -e).collect(),
        }
    }
}

impl fmt::Debug for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.rows()).finish()
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime factorization `[(p, r)]`, ascending.
pub fn factorize(mut m: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            let mut r = 0;
            while m % p == 0 {
                m /= p;
                r += 1;
            }
            out.push((p, r));
        }
        p += 1;
    }
    if m > 1 {
        out.push((m, 1));
    }
    out
}

/// `psi` of a single prime power: Euler's `phi`, except `psi(2) = 0`.
fn psi_prime_power(p: u64, r: u32) -> u64 {
    if p == 2 && r == 1 {
        0
    } else {
        p.pow(r) - p.pow(r - 1)
    }
}

/// `psi(m)`, with its factorization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PsiValue {
    pub m: u64,
    pub value: u64,
    pub factors: Vec<(u64, u32)>,
}

pub fn psi_value(m: u64) -> PsiValue {
    assert!(m >= 1, "psi is defined for positive integers");
    let factors = factorize(m);
    let value = factors.iter().map(|&(p, r)| psi_prime_power(p, r)).sum();
    PsiValue { m, value, factors }
}

/// The smallest `n` such that `GL(n, Z)` has an element of order `m`.
pub fn psi(m: u64) -> u64 {
    psi_value(m).value
}

fn primes_up_to(n: u64) -> Vec<u64> {
    (2..=n).filter(|&p| is_prime(p)).collect()
}

/// `Ord_n = {m : psi(m) <= n}`, sorted.
///
/// Every prime power with `psi(p^r) <= n` has `p <= n + 1`, so the search
/// over products of such prime powers is finite and complete.
pub fn ord_set(n: u64) -> Vec<u64> {
    let primes = primes_up_to(n + 1);
    let mut out = Vec::new();
    fn go(primes: &[u64], i: usize, m: u64, budget: u64, out: &mut Vec<u64>) {
        if i == primes.len() {
            out.push(m);
            return;
        }
        let p = primes[i];
        go(primes, i + 1, m, budget, out);
        let mut r = 1;
        let mut q = p;
        loop {
            let cost = psi_prime_power(p, r);
            if cost > budget {
                break;
            }
            go(primes, i + 1, m * q, budget - cost, out);
            r += 1;
            q *= p;
        }
    }
    go(&primes, 0, 1, n, &mut out);
    out.sort_unstable();
    out
}

/// Coefficients of the `m`-th cyclotomic polynomial, constant term first.
pub fn cyclotomic_polynomial(m: u64) -> Vec<BigInt> {
    assert!(m >= 1);
    // x^m - 1 divided by Phi_d for every proper divisor d
    let mut num = vec![BigInt::zero(); m as usize + 1];
    num[0] = BigInt::from(-1);
    num[m as usize] = BigInt::one();
    for d in 1..m {
        if m % d == 0 {
            num = divide_monic(&num, &cyclotomic_polynomial(d));
        }
    }
    num
}

fn divide_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dn = den.len() - 1;
    let qn = rem.len() - 1 - dn;
    let mut q = vec![BigInt::zero(); qn + 1];
    for k in (0..=qn).rev() {
        let c = rem[k + dn].clone();
        for (j, d) in den.iter().enumerate() {
            rem[k + j] -= &c * d;
        }
        q[k] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero), "exact division");
    q
}

/// Companion matrix of a monic polynomial `c_0 + c_1 x + ... + x^d`: ones on
/// the subdiagonal and `-c` in the last column.
pub fn companion(poly: &[BigInt]) -> IntegerMatrix {
    let d = poly.len() - 1;
    let mut m = IntegerMatrix::zeros(d);
    for i in 1..d {
        m.entries[i * d + i - 1] = BigInt::one();
    }
    for i in 0..d {
        m.entries[i * d + d - 1] = -&poly[i];
    }
    m
}

/// Companion matrix of the `p`-th cyclotomic polynomial, of order `p`.
pub fn cyclotomic_companion(p: u64) -> Result<IntegerMatrix, CrystalloError> {
    if !is_prime(p) {
        return Err(CrystalloError::NotPrime(p));
    }
    Ok(companion(&cyclotomic_polynomial(p)))
}

/// Result of [`matrix_order`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MatrixOrder {
    Finite(u64),
    /// No `k <= cap` has `M^k = I`.
    ExceedsCap,
}

/// Smallest `k <= cap` with `M^k = I`.
///
/// The order `k3` of `M` modulo 3 is found first by stepping in `GL(n, F_3)`;
/// every finite order is a multiple of it. If `M^k3 = I` exactly, the order
/// is `k3`. Otherwise the order is infinite, since the kernel of reduction
/// mod 3 contains no nontrivial element of finite order (Minkowski).
pub fn matrix_order(m: &IntegerMatrix, cap: u64) -> Result<MatrixOrder, CrystalloError> {
    let d = m.determinant();
    if !(d.is_one() || (-&d).is_one()) {
        return Err(CrystalloError::NotUnimodular(alloc::format!("{d}")));
    }
    let n = m.n;
    let three = BigInt::from(3);
    let reduce = |x: &BigInt| -> u8 {
        let r = x.mod_floor(&three);
        if r.is_zero() {
            0
        } else if r.is_one() {
            1
        } else {
            2
        }
    };
    let m3: Vec<u8> = m.entries.iter().map(reduce).collect();
    // sparse rows of M mod 3
    let sparse: Vec<Vec<(usize, u8)>> = (0..n)
        .map(|k| (0..n).filter(|&j| m3[k * n + j] != 0).map(|j| (j, m3[k * n + j])).collect())
        .collect();
    let is_id = |p: &[u8]| (0..n).all(|i| (0..n).all(|j| p[i * n + j] == u8::from(i == j)));
    let mut p = m3.clone();
    let mut k3 = None;
    for k in 1..=cap {
        if is_id(&p) {
            k3 = Some(k);
            break;
        }
        let mut next = vec![0u8; n * n];
        for i in 0..n {
            for kk in 0..n {
                let a = p[i * n + kk];
                if a == 0 {
                    continue;
                }
                for &(j, b) in &sparse[kk] {
                    next[i * n + j] = (next[i * n + j] + a * b) % 3;
                }
            }
        }
        p = next;
    }
    let Some(k3) = k3 else { return Ok(MatrixOrder::ExceedsCap) };
    Ok(if m.pow(k3).is_identity() {
        MatrixOrder::Finite(k3)
    } else {
        MatrixOrder::ExceedsCap
    })
}

/// A matrix in `GL(n, Z)` of order `m`, built from companion matrices of
/// `Phi_{p^r}` for the prime powers of `m`, padded with the identity.
pub fn matrix_of_order(m: u64, n: usize) -> Result<IntegerMatrix, CrystalloError> {
    if m == 0 || psi(m) > n as u64 {
        return Err(CrystalloError::NotAnOrder { m, n });
    }
    let factors = factorize(m);
    let mut blocks: Vec<IntegerMatrix> = factors
        .iter()
        .filter(|&&(p, r)| !(p == 2 && r == 1))
        .map(|&(p, r)| companion(&cyclotomic_polynomial(p.pow(r))))
        .collect();
    if factors.first() == Some(&(2, 1)) {
        // an odd-order block negated has twice its order; otherwise use -1
        match blocks.first_mut() {
            Some(b) => *b = b.neg(),
            None => blocks.push(IntegerMatrix::from_i64(&[&[-1]]).expect("square")),
        }
    }
    let used: usize = blocks.iter().map(IntegerMatrix::size).sum();
    if used > n {
        return Err(CrystalloError::NotAnOrder { m, n });
    }
    if used < n {
        blocks.push(IntegerMatrix::identity(n - used));
    }
    Ok(IntegerMatrix::block_diag(&blocks))
}

/// An `n x n` integer matrix of order `p q` for distinct primes with
/// `p + q = n + 2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoldbachWitness {
    pub n: u64,
    pub p: u64,
    pub q: u64,
    pub matrix: IntegerMatrix,
    /// Verified by exact powering.
    pub order: u64,
    pub psi: u64,
    pub determinant: BigInt,
}

/// Smallest `p` first. `Ok(None)` would be a counterexample to Goldbach's
/// conjecture at `n + 2`.
pub fn goldbach_witness(n: u64) -> Result<Option<GoldbachWitness>, CrystalloError> {
    if n < 6 || n % 2 == 1 {
        return Err(CrystalloError::NotEvenAtLeastSix(n));
    }
    let total = n + 2;
    let mut p = 3;
    while 2 * p < total {
        let q = total - p;
        if is_prime(p) && is_prime(q) {
            let matrix = IntegerMatrix::block_diag(&[cyclotomic_companion(p)?, cyclotomic_companion(q)?]);
            let order = match matrix_order(&matrix, p * q)? {
                MatrixOrder::Finite(k) => k,
                MatrixOrder::ExceedsCap => unreachable!("companion blocks have finite order"),
            };
            let psi = psi(p * q);
            debug_assert_eq!(order, p * q);
            debug_assert_eq!(psi, n);
            let determinant = matrix.determinant();
            return Ok(Some(GoldbachWitness {
                n,
                p,
                q,
                matrix,
                order,
                psi,
                determinant,
            }));
        }
        p += 2;
    }
    Ok(None)
}

/// `m` has finite order in `GL(n, Z)` only if `psi(m) <= n`; convenience for
/// checking a claimed order against the restriction.
pub fn order_is_admissible(m: u64, n: u64) -> bool {
    m >= 1 && psi(m) <= n
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;

    fn naive_order(m: &IntegerMatrix, cap: u64) -> Option<u64> {
        let mut p = m.clone();
        for k in 1..=cap {
            if p.is_identity() {
                return Some(k);
            }
            p = p.mul(m);
        }
        None
    }

    #[test]
    fn psi_values() {
        assert_eq!(psi(1), 0);
        assert_eq!(psi(2), 0);
        assert_eq!(psi(9), 6);
        assert_eq!(psi(12), 4);
        assert_eq!(psi(5), 4);
        assert_eq!(psi(4), 2);
        assert_eq!(psi_value(12).factors, vec![(2, 2), (3, 1)]);
    }

    #[test]
    fn ord_sets() {
        assert_eq!(ord_set(2), vec![1, 2, 3, 4, 6]);
        assert_eq!(ord_set(2), ord_set(3));
        let o4 = ord_set(4);
        for m in [5, 8, 10, 12] {
            assert!(o4.contains(&m));
        }
        assert!(!ord_set(2).contains(&5));
        // agrees with a direct filter
        for n in 1..=12 {
            let direct: Vec<u64> = (1..=5000).filter(|&m| psi(m) <= n).collect();
            assert_eq!(ord_set(n), direct, "{n}");
        }
    }

    #[test]
    fn cyclotomic_polynomials() {
        let c = |v: &[i64]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
        assert_eq!(cyclotomic_polynomial(1), c(&[-1, 1]));
        assert_eq!(cyclotomic_polynomial(2), c(&[1, 1]));
        assert_eq!(cyclotomic_polynomial(4), c(&[1, 0, 1]));
        assert_eq!(cyclotomic_polynomial(6), c(&[1, -1, 1]));
        assert_eq!(cyclotomic_polynomial(12), c(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn companions() {
        assert_eq!(cyclotomic_companion(2).unwrap(), IntegerMatrix::from_i64(&[&[-1]]).unwrap());
        let c3 = cyclotomic_companion(3).unwrap();
        assert_eq!(c3, IntegerMatrix::from_i64(&[&[0, -1], &[1, -1]]).unwrap());
        assert!(c3.pow(3).is_identity());
        let c5 = cyclotomic_companion(5).unwrap();
        assert_eq!(c5.size(), 4);
        assert_eq!(matrix_order(&c5, 100).unwrap(), MatrixOrder::Finite(5));
        assert!(c5.determinant().abs().is_one());
        assert!(matches!(cyclotomic_companion(9), Err(CrystalloError::NotPrime(9))));
    }

    #[test]
    fn orders() {
        assert_eq!(matrix_order(&IntegerMatrix::identity(3), 10).unwrap(), MatrixOrder::Finite(1));
        let neg = IntegerMatrix::from_i64(&[&[-1]]).unwrap();
        assert_eq!(matrix_order(&neg, 10).unwrap(), MatrixOrder::Finite(2));
        let m = IntegerMatrix::block_diag(&[cyclotomic_companion(3).unwrap(), cyclotomic_companion(5).unwrap()]);
        assert_eq!(matrix_order(&m, 100).unwrap(), MatrixOrder::Finite(15));
        assert_eq!(matrix_order(&m, 14).unwrap(), MatrixOrder::ExceedsCap);
        // shear and hyperbolic matrices have infinite order
        let shear = IntegerMatrix::from_i64(&[&[1, 1], &[0, 1]]).unwrap();
        assert_eq!(matrix_order(&shear, 50).unwrap(), MatrixOrder::ExceedsCap);
        let cat = IntegerMatrix::from_i64(&[&[2, 1], &[1, 1]]).unwrap();
        assert_eq!(matrix_order(&cat, 50).unwrap(), MatrixOrder::ExceedsCap);
        let sing = IntegerMatrix::from_i64(&[&[2, 0], &[0, 1]]).unwrap();
        assert!(matches!(matrix_order(&sing, 5), Err(CrystalloError::NotUnimodular(_))));
    }

    #[test]
    fn constructed_orders_match_naive_powering() {
        for n in 1..=6usize {
            for m in ord_set(n as u64) {
                let a = matrix_of_order(m, n).unwrap();
                assert_eq!(a.size(), n);
                assert_eq!(naive_order(&a, 100), Some(m), "m={m} n={n}");
                assert_eq!(matrix_order(&a, 100).unwrap(), MatrixOrder::Finite(m));
            }
        }
        assert!(matches!(matrix_of_order(5, 3), Err(CrystalloError::NotAnOrder { .. })));
    }

    #[test]
    fn goldbach_examples() {
        for (n, p, q) in [(6, 3, 5), (8, 3, 7), (10, 5, 7)] {
            let w = goldbach_witness(n).unwrap().unwrap();
            assert_eq!((w.p, w.q), (p, q));
            assert_eq!(w.order, p * q);
            assert_eq!(w.psi, n);
            assert_eq!(w.matrix.size() as u64, n);
            assert_eq!(naive_order(&w.matrix, 200), Some(p * q));
        }
        assert!(goldbach_witness(7).is_err());
        assert!(goldbach_witness(4).is_err());
    }

    #[test]
    fn determinant_examples() {
        let m = IntegerMatrix::from_i64(&[&[2, 3, 1], &[4, 1, 5], &[0, 2, 7]]).unwrap();
        assert_eq!(m.determinant(), BigInt::from(-82));
        let swap = IntegerMatrix::from_i64(&[&[0, 1], &[1, 0]]).unwrap();
        assert_eq!(swap.determinant(), BigInt::from(-1));
    }
}
