//! Exact rank and nullspaces over `Z_p` (p = 2^61 − 1) and over `Q`.
//!
//! Field mode uses plain Gauss–Jordan with modular inverses. Rational mode
//! clears denominators row by row and runs fraction-free (Bareiss) elimination
//! on big integers, so no intermediate rational ever needs normalising.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// The Mersenne prime 2^61 − 1.
pub const P: u64 = (1 << 61) - 1;

/// Residue modulo [`P`], always kept in `0..P`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Fp(u64);

impl Fp {
    pub const ZERO: Fp = Fp(0);
    pub const ONE: Fp = Fp(1);

    pub fn new(x: u64) -> Self {
        Fp(reduce128(x as u128))
    }

    pub fn from_i64(x: i64) -> Self {
        if x >= 0 {
            Fp::new(x as u64)
        } else {
            -Fp::new(x.unsigned_abs())
        }
    }

    pub fn value(self) -> u64 {
        self.0
    }

    pub fn pow(self, mut e: u64) -> Fp {
        let mut base = self;
        let mut acc = Fp::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    pub fn inv(self) -> Option<Fp> {
        (self.0 != 0).then(|| self.pow(P - 2))
    }
}

#[inline]
fn reduce128(z: u128) -> u64 {
    // z < 2^122 for products of reduced residues
    let lo = (z as u64) & P;
    let hi = (z >> 61) as u64;
    let mut s = lo + (hi & P) + (hi >> 61);
    while s >= P {
        s -= P;
    }
    s
}

impl std::ops::Add for Fp {
    type Output = Fp;
    #[inline]
    fn add(self, o: Fp) -> Fp {
        let s = self.0 + o.0;
        Fp(if s >= P { s - P } else { s })
    }
}

impl std::ops::Sub for Fp {
    type Output = Fp;
    #[inline]
    fn sub(self, o: Fp) -> Fp {
        Fp(if self.0 >= o.0 { self.0 - o.0 } else { self.0 + P - o.0 })
    }
}

impl std::ops::Mul for Fp {
    type Output = Fp;
    #[inline]
    fn mul(self, o: Fp) -> Fp {
        Fp(reduce128(self.0 as u128 * o.0 as u128))
    }
}

impl std::ops::Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        Fp(if self.0 == 0 { 0 } else { P - self.0 })
    }
}

impl fmt::Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Exact scalar types that matrices can hold.
pub trait Scalar: Clone + PartialEq + fmt::Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn from_i64(x: i64) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;

    fn rank_of(m: &Matrix<Self>) -> usize;
    fn right_nullspace_of(m: &Matrix<Self>) -> SubspaceBasis<Self>;
}

impl Scalar for Fp {
    fn zero() -> Self {
        Fp::ZERO
    }
    fn one() -> Self {
        Fp::ONE
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    fn from_i64(x: i64) -> Self {
        Fp::from_i64(x)
    }
    fn add(&self, o: &Self) -> Self {
        *self + *o
    }
    fn sub(&self, o: &Self) -> Self {
        *self - *o
    }
    fn mul(&self, o: &Self) -> Self {
        *self * *o
    }
    fn neg(&self) -> Self {
        -*self
    }

    fn rank_of(m: &Matrix<Self>) -> usize {
        fp_echelon(m, false).pivots.len()
    }

    fn right_nullspace_of(m: &Matrix<Self>) -> SubspaceBasis<Self> {
        let ech = fp_echelon(m, true);
        let mut vectors = Vec::new();
        for f in free_columns(m.cols, &ech.pivots) {
            let mut v = vec![Fp::ZERO; m.cols];
            v[f] = Fp::ONE;
            for (r, &pc) in ech.pivots.iter().enumerate() {
                v[pc] = -ech.rows[r][f];
            }
            vectors.push(v);
        }
        SubspaceBasis::new(m.cols, vectors)
    }
}

impl Scalar for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn from_i64(x: i64) -> Self {
        BigRational::from_integer(BigInt::from(x))
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
    fn neg(&self) -> Self {
        -self
    }

    fn rank_of(m: &Matrix<Self>) -> usize {
        bareiss_rank(integer_rows(m))
    }

    fn right_nullspace_of(m: &Matrix<Self>) -> SubspaceBasis<Self> {
        let (rows, pivots) = bareiss_reduced(integer_rows(m), m.cols);
        let mut vectors = Vec::new();
        for f in free_columns(m.cols, &pivots) {
            let d = if pivots.is_empty() { BigInt::one() } else { rows[0][pivots[0]].clone() };
            let mut v = vec![BigInt::zero(); m.cols];
            v[f] = d;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -rows[r][f].clone();
            }
            let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
            let sign_fix = if v[f].is_negative() { -BigInt::one() } else { BigInt::one() };
            let scale = if g.is_zero() { BigInt::one() } else { g * sign_fix };
            vectors.push(v.into_iter().map(|x| BigRational::from_integer(x / &scale)).collect());
        }
        SubspaceBasis::new(m.cols, vectors)
    }
}

/// Dense row-major matrix of exact scalars.
#[derive(Clone, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, T::one());
        }
        m
    }

    /// Panics if the rows have different lengths.
    pub fn from_rows(rows: Vec<Vec<T>>, cols: usize) -> Self {
        let r = rows.len();
        let mut data = Vec::with_capacity(r * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged matrix row");
            data.extend(row);
        }
        Matrix { rows: r, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &T {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, x: T) {
        self.data[r * self.cols + c] = x;
    }

    pub fn row(&self, r: usize) -> &[T] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows).map(|r| dot(self.row(r), v)).collect()
    }

    /// `w · M` for a row vector `w`.
    pub fn vec_mul(&self, w: &[T]) -> Vec<T> {
        assert_eq!(w.len(), self.rows);
        let mut out = vec![T::zero(); self.cols];
        for (r, wr) in w.iter().enumerate() {
            if wr.is_zero() {
                continue;
            }
            for (c, o) in out.iter_mut().enumerate() {
                let x = self.get(r, c);
                if !x.is_zero() {
                    *o = o.add(&wr.mul(x));
                }
            }
        }
        out
    }

    /// Stacks the rows of `other` below `self`.
    pub fn stack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix { rows: self.rows + other.rows, cols: self.cols, data }
    }

    pub fn select_rows(&self, keep: &[usize]) -> Self {
        let rows = keep.iter().map(|&r| self.row(r).to_vec()).collect();
        Self::from_rows(rows, self.cols)
    }
}

impl<T: fmt::Debug> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", &self.data[r * self.cols..(r + 1) * self.cols])?;
        }
        Ok(())
    }
}

pub fn dot<T: Scalar>(a: &[T], b: &[T]) -> T {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .fold(T::zero(), |acc, (x, y)| acc.add(&x.mul(y)))
}

/// Linearly independent vectors spanning a subspace of `T^ambient`.
#[derive(Debug, Clone, PartialEq)]
pub struct SubspaceBasis<T> {
    pub ambient: usize,
    pub vectors: Vec<Vec<T>>,
}

impl<T> SubspaceBasis<T> {
    pub fn new(ambient: usize, vectors: Vec<Vec<T>>) -> Self {
        SubspaceBasis { ambient, vectors }
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }
}

pub fn rank<T: Scalar>(m: &Matrix<T>) -> usize {
    T::rank_of(m)
}

/// Basis of `{x : M x = 0}`, one vector per free column.
pub fn right_nullspace<T: Scalar>(m: &Matrix<T>) -> SubspaceBasis<T> {
    T::right_nullspace_of(m)
}

/// Basis of `{w : w M = 0}`.
pub fn left_nullspace<T: Scalar>(m: &Matrix<T>) -> SubspaceBasis<T> {
    T::right_nullspace_of(&m.transpose())
}

fn free_columns(cols: usize, pivots: &[usize]) -> Vec<usize> {
    let mut is_pivot = vec![false; cols];
    for &p in pivots {
        is_pivot[p] = true;
    }
    (0..cols).filter(|&c| !is_pivot[c]).collect()
}

struct FpEchelon {
    rows: Vec<Vec<Fp>>,
    pivots: Vec<usize>,
}

/// Row echelon form; with `reduced` the pivots are 1 and cleared above too.
fn fp_echelon(m: &Matrix<Fp>, reduced: bool) -> FpEchelon {
    let mut rows: Vec<Vec<Fp>> = (0..m.rows).map(|r| m.row(r).to_vec()).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..m.cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| rows[i][c].0 != 0) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inv().expect("nonzero pivot");
        for x in rows[r][c..].iter_mut() {
            *x = *x * inv;
        }
        let (head, tail) = rows.split_at_mut(r);
        let (pivot_row, below) = tail.split_first_mut().expect("pivot row");
        let nz: Vec<usize> = (c..m.cols).filter(|&j| pivot_row[j].0 != 0).collect();
        let mut eliminate = |row: &mut Vec<Fp>| {
            let f = row[c];
            if f.0 != 0 {
                for &j in &nz {
                    row[j] = row[j] - f * pivot_row[j];
                }
            }
        };
        below.iter_mut().for_each(&mut eliminate);
        if reduced {
            head.iter_mut().for_each(&mut eliminate);
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    FpEchelon { rows, pivots }
}

/// Scales each rational row by the lcm of its denominators.
fn integer_rows(m: &Matrix<BigRational>) -> Vec<Vec<BigInt>> {
    (0..m.rows)
        .map(|r| {
            let row = m.row(r);
            let l = row.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
            row.iter().map(|x| x.numer() * (&l / x.denom())).collect()
        })
        .collect()
}

fn bareiss_rank(mut a: Vec<Vec<BigInt>>) -> usize {
    let Some(cols) = a.first().map(Vec::len) else {
        return 0;
    };
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == a.len() {
            break;
        }
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let (top, below) = a.split_at_mut(r + 1);
        let piv_row = &top[r];
        let piv = &piv_row[c];
        for row in below.iter_mut() {
            let f = row[c].clone();
            for j in c + 1..cols {
                let t = &row[j] * piv - &f * &piv_row[j];
                row[j] = t / &prev;
            }
            row[c] = BigInt::zero();
        }
        prev = piv.clone();
        r += 1;
    }
    r
}

/// Fraction-free Gauss–Jordan. On return the first `pivots.len()` rows are the
/// nonzero rows, every pivot entry equals the same integer (the last pivot),
/// and pivot columns are zero elsewhere.
fn bareiss_reduced(mut a: Vec<Vec<BigInt>>, cols: usize) -> (Vec<Vec<BigInt>>, Vec<usize>) {
    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == a.len() {
            break;
        }
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let piv_row = a[r].clone();
        let piv = piv_row[c].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            let f = row[c].clone();
            for j in 0..cols {
                if j == c {
                    continue;
                }
                let t = &row[j] * &piv - &f * &piv_row[j];
                row[j] = if t.is_zero() { t } else { t / &prev };
            }
            row[c] = BigInt::zero();
        }
        prev = piv;
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    (a, pivots)
}

/// Parses `"p/q"` or `"p"` into a rational.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            (!q.is_zero()).then(|| BigRational::new(p, q))
        }
        None => s.parse::<BigInt>().ok().map(BigRational::from_integer),
    }
}

pub fn rational(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}
