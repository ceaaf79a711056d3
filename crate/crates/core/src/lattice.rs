//! Exact integer lattice linear algebra.
//!
//! Points of `M = Z^n` are [`LatticeVector`]s, points of the dual lattice
//! `N = Hom(M, Z)` are [`DualVector`]s. Both carry arbitrary-precision
//! coordinates and compare in graded-lexicographic order (coordinate sum
//! first, then lexicographic), which is the canonical order used for every
//! enumerated list in this crate.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

macro_rules! int_vector {
    ($(#[$meta:meta])* $name:ident) => {
        $(#[$meta])*
        #[derive(Clone, Debug, PartialEq, Eq, Hash)]
        pub struct $name(Vec<BigInt>);

        impl $name {
            pub fn new(coords: Vec<BigInt>) -> Self {
                Self(coords)
            }

            pub fn from_i64s(coords: &[i64]) -> Self {
                Self(coords.iter().map(|&c| BigInt::from(c)).collect())
            }

            pub fn zero(rank: usize) -> Self {
                Self(vec![BigInt::zero(); rank])
            }

            /// The `i`-th standard basis vector.
            pub fn unit(rank: usize, i: usize) -> Self {
                let mut v = Self::zero(rank);
                v.0[i] = BigInt::one();
                v
            }

            pub fn rank(&self) -> usize {
                self.0.len()
            }

            pub fn coords(&self) -> &[BigInt] {
                &self.0
            }

            pub fn into_coords(self) -> Vec<BigInt> {
                self.0
            }

            pub fn is_zero(&self) -> bool {
                self.0.iter().all(Zero::is_zero)
            }

            pub fn coord_sum(&self) -> BigInt {
                self.0.iter().sum()
            }

            pub fn scale(&self, k: &BigInt) -> Self {
                Self(self.0.iter().map(|c| c * k).collect())
            }

            /// gcd of the coordinates (zero for the zero vector).
            pub fn content(&self) -> BigInt {
                self.0.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
            }

            /// Divides out the content; the zero vector is returned unchanged.
            pub fn primitive(&self) -> Self {
                let g = self.content();
                if g.is_zero() || g.is_one() {
                    return self.clone();
                }
                Self(self.0.iter().map(|c| c / &g).collect())
            }

            pub fn to_i64s(&self) -> Option<Vec<i64>> {
                self.0.iter().map(|c| i64::try_from(c).ok()).collect()
            }
        }

        impl Ord for $name {
            fn cmp(&self, other: &Self) -> Ordering {
                self.coord_sum()
                    .cmp(&other.coord_sum())
                    .then_with(|| self.0.cmp(&other.0))
            }
        }

        impl PartialOrd for $name {
            fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
                Some(self.cmp(other))
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "(")?;
                for (i, c) in self.0.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{c}")?;
                }
                write!(f, ")")
            }
        }

        impl<'a> Add<&'a $name> for &'a $name {
            type Output = $name;
            fn add(self, rhs: &'a $name) -> $name {
                debug_assert_eq!(self.rank(), rhs.rank());
                $name(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
            }
        }

        impl Add for $name {
            type Output = $name;
            fn add(self, rhs: $name) -> $name {
                &self + &rhs
            }
        }

        impl<'a> Sub<&'a $name> for &'a $name {
            type Output = $name;
            fn sub(self, rhs: &'a $name) -> $name {
                debug_assert_eq!(self.rank(), rhs.rank());
                $name(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
            }
        }

        impl Sub for $name {
            type Output = $name;
            fn sub(self, rhs: $name) -> $name {
                &self - &rhs
            }
        }

        impl Neg for &$name {
            type Output = $name;
            fn neg(self) -> $name {
                $name(self.0.iter().map(|c| -c).collect())
            }
        }

        impl Neg for $name {
            type Output = $name;
            fn neg(self) -> $name {
                -&self
            }
        }
    };
}

int_vector!(
    /// An element of the character lattice `M`.
    LatticeVector
);

int_vector!(
    /// An element of the dual lattice `N = Hom(M, Z)`.
    DualVector
);

impl DualVector {
    /// The duality pairing `<m, p> = p(m)`.
    pub fn pair(&self, m: &LatticeVector) -> BigInt {
        debug_assert_eq!(self.rank(), m.rank());
        self.0.iter().zip(m.coords()).map(|(a, b)| a * b).sum()
    }
}

/// An element of `N_Q`, used as the coefficient functional of a derivation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalDualVector(Vec<BigRational>);

impl RationalDualVector {
    pub fn new(coords: Vec<BigRational>) -> Self {
        Self(coords)
    }

    pub fn from_i64s(coords: &[i64]) -> Self {
        Self(coords.iter().map(|&c| BigRational::from_integer(c.into())).collect())
    }

    pub fn zero(rank: usize) -> Self {
        Self(vec![BigRational::zero(); rank])
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn pair(&self, m: &LatticeVector) -> BigRational {
        debug_assert_eq!(self.rank(), m.rank());
        self.0
            .iter()
            .zip(m.coords())
            .map(|(a, b)| a * BigRational::from_integer(b.clone()))
            .sum()
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        Self(self.0.iter().map(|c| c * k).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `Some(lambda)` with `self = lambda * rho`, if the two are proportional.
    pub fn proportionality_to(&self, rho: &DualVector) -> Option<BigRational> {
        let pivot = rho.coords().iter().position(|c| !c.is_zero())?;
        let lambda = &self.0[pivot] / BigRational::from_integer(rho.coords()[pivot].clone());
        let matches = self
            .0
            .iter()
            .zip(rho.coords())
            .all(|(a, b)| *a == &lambda * BigRational::from_integer(b.clone()));
        matches.then_some(lambda)
    }
}

impl From<&DualVector> for RationalDualVector {
    fn from(v: &DualVector) -> Self {
        Self(v.coords().iter().map(|c| BigRational::from_integer(c.clone())).collect())
    }
}

impl fmt::Display for RationalDualVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Dense integer matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Panics if the rows are ragged.
    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == ncols), "ragged rows");
        Self { rows: nrows, cols: ncols, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&c| BigInt::from(c)).collect()).collect())
    }

    pub fn from_lattice_rows(vs: &[LatticeVector]) -> Self {
        Self::from_rows(vs.iter().map(|v| v.coords().to_vec()).collect())
    }

    pub fn from_dual_rows(vs: &[DualVector]) -> Self {
        Self::from_rows(vs.iter().map(|v| v.coords().to_vec()).collect())
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "inner dimensions differ");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * &other[(k, j)];
                }
            }
        }
        out
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self[(i, j)].is_zero()))
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !a[(i, k)].is_zero()) else {
                    return BigInt::zero();
                };
                a.swap_rows(k, p);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)];
                    a[(i, j)] = v / &prev;
                }
                a[(i, k)] = BigInt::zero();
            }
            prev = a[(k, k)].clone();
        }
        sign * a[(n - 1, n - 1)].clone()
    }

    pub fn rank(&self) -> usize {
        let (h, _) = hermite_normal_form(self);
        (0..h.rows).filter(|&i| h.row(i).iter().any(|c| !c.is_zero())).count()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += k * row[src]
    fn add_row_multiple(&mut self, dst: usize, src: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = &self[(src, j)] * k;
            self[(dst, j)] += v;
        }
    }

    /// col[dst] += k * col[src]
    fn add_col_multiple(&mut self, dst: usize, src: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = &self[(i, src)] * k;
            self[(i, dst)] += v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -&self[(i, j)];
            self[(i, j)] = v;
        }
    }

    /// Replaces rows (a, b) by (x*a + y*b, u*a + v*b).
    fn combine_rows(&mut self, a: usize, b: usize, [x, y, u, v]: [&BigInt; 4]) {
        for j in 0..self.cols {
            let ra = self[(a, j)].clone();
            let rb = self[(b, j)].clone();
            self[(a, j)] = x * &ra + y * &rb;
            self[(b, j)] = u * &ra + v * &rb;
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (j, c) in self.row(i).iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{c}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Row-style Hermite normal form: returns `(H, U)` with `H = U * A`, `U`
/// unimodular, `H` in row echelon form with positive pivots and the entries
/// above each pivot reduced into `[0, pivot)`.
pub fn hermite_normal_form(a: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let mut h = a.clone();
    let mut u = IntMatrix::identity(a.rows);
    let mut r = 0;
    for c in 0..a.cols {
        if r == a.rows {
            break;
        }
        for i in r + 1..a.rows {
            if h[(i, c)].is_zero() {
                continue;
            }
            let p = h[(r, c)].clone();
            let q = h[(i, c)].clone();
            let eg = p.extended_gcd(&q);
            let (g, x, y) = (eg.gcd, eg.x, eg.y);
            let u1 = -(&q / &g);
            let v1 = &p / &g;
            h.combine_rows(r, i, [&x, &y, &u1, &v1]);
            u.combine_rows(r, i, [&x, &y, &u1, &v1]);
        }
        if h[(r, c)].is_zero() {
            continue;
        }
        if h[(r, c)].is_negative() {
            h.negate_row(r);
            u.negate_row(r);
        }
        let pivot = h[(r, c)].clone();
        for i in 0..r {
            let q = h[(i, c)].div_floor(&pivot);
            if !q.is_zero() {
                let k = -q;
                h.add_row_multiple(i, r, &k);
                u.add_row_multiple(i, r, &k);
            }
        }
        r += 1;
    }
    (h, u)
}

/// Smith normal form: returns `(D, U, V)` with `D = U * A * V` diagonal,
/// non-negative, and `d_1 | d_2 | ...`.
pub fn smith_normal_form(a: &IntMatrix) -> (IntMatrix, IntMatrix, IntMatrix) {
    let (m, n) = (a.rows, a.cols);
    let mut d = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);
    for t in 0..m.min(n) {
        loop {
            // smallest nonzero entry of the trailing block becomes the pivot
            let mut best: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    let e = &d[(i, j)];
                    if e.is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| e.abs() < d[(bi, bj)].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return (d, u, v);
            };
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let pivot = d[(t, t)].clone();
            let mut clean = true;
            for i in t + 1..m {
                let q = d[(i, t)].div_floor(&pivot);
                if !q.is_zero() {
                    let k = -q;
                    d.add_row_multiple(i, t, &k);
                    u.add_row_multiple(i, t, &k);
                }
                clean &= d[(i, t)].is_zero();
            }
            for j in t + 1..n {
                let q = d[(t, j)].div_floor(&pivot);
                if !q.is_zero() {
                    let k = -q;
                    d.add_col_multiple(j, t, &k);
                    v.add_col_multiple(j, t, &k);
                }
                clean &= d[(t, j)].is_zero();
            }
            if !clean {
                continue;
            }
            let offender = (t + 1..m)
                .flat_map(|i| (t + 1..n).map(move |j| (i, j)))
                .find(|&(i, j)| !(&d[(i, j)] % &pivot).is_zero());
            match offender {
                Some((i, _)) => {
                    let one = BigInt::one();
                    d.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    (d, u, v)
}

/// Nonzero elementary divisors of `a`, in divisibility order.
pub fn elementary_divisors(a: &IntMatrix) -> Vec<BigInt> {
    let (d, _, _) = smith_normal_form(a);
    (0..d.rows.min(d.cols))
        .map(|i| d[(i, i)].clone())
        .filter(|x| !x.is_zero())
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LatticeIndex {
    Finite(BigInt),
    Infinite,
}

/// `|M / M'|` where `M'` is spanned by `basis`.
pub fn sublattice_index(basis: &[LatticeVector]) -> Result<LatticeIndex> {
    let n = basis.first().ok_or(Error::EmptyGeneratingSet)?.rank();
    check_ranks(basis.iter().map(LatticeVector::rank), n)?;
    Ok(index_of_rows(&IntMatrix::from_lattice_rows(basis), n))
}

/// `|N / N'|` where `N'` is spanned by `basis`.
pub fn dual_sublattice_index(basis: &[DualVector]) -> Result<LatticeIndex> {
    let n = basis.first().ok_or(Error::EmptyGeneratingSet)?.rank();
    check_ranks(basis.iter().map(DualVector::rank), n)?;
    Ok(index_of_rows(&IntMatrix::from_dual_rows(basis), n))
}

fn index_of_rows(a: &IntMatrix, n: usize) -> LatticeIndex {
    let divisors = elementary_divisors(a);
    if divisors.len() < n {
        LatticeIndex::Infinite
    } else {
        LatticeIndex::Finite(divisors.iter().product())
    }
}

fn check_ranks(ranks: impl Iterator<Item = usize>, n: usize) -> Result<()> {
    for r in ranks {
        if r != n {
            return Err(Error::DimensionMismatch { expected: n, found: r });
        }
    }
    Ok(())
}

/// Matrix with entry `(i, j) = rho_i(mu_j)`.
pub fn pairing_matrix(beta: &[LatticeVector], beta_dual: &[DualVector]) -> Result<IntMatrix> {
    let n = beta.len();
    if beta_dual.len() != n {
        return Err(Error::SizeMismatch(format!(
            "{} lattice vectors against {} dual vectors",
            n,
            beta_dual.len()
        )));
    }
    check_ranks(beta.iter().map(LatticeVector::rank), n)?;
    check_ranks(beta_dual.iter().map(DualVector::rank), n)?;
    let mut a = IntMatrix::zeros(n, n);
    for (i, rho) in beta_dual.iter().enumerate() {
        for (j, mu) in beta.iter().enumerate() {
            a[(i, j)] = rho.pair(mu);
        }
    }
    Ok(a)
}

/// Checks `|M/M'| * |N/N'| = |det A|` for independent `beta`, `beta_dual`.
pub fn verify_det_index(beta: &[LatticeVector], beta_dual: &[DualVector]) -> Result<bool> {
    let a = pairing_matrix(beta, beta_dual)?;
    let lhs = match (sublattice_index(beta)?, dual_sublattice_index(beta_dual)?) {
        (LatticeIndex::Finite(x), LatticeIndex::Finite(y)) => x * y,
        _ => return Err(Error::NotLinearlyIndependent),
    };
    Ok(lhs == a.det().abs())
}
