//! Dense exact matrices and their rank.
//!
//! Prime-field entries are kept reduced mod p. Rational ranks use Bareiss
//! fraction-free elimination: first in checked `i128`, falling back to big
//! integers the moment an intermediate minor overflows.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::field::{FieldElement, FieldSpec};

#[derive(Debug, Clone, PartialEq)]
enum Entries {
    /// Rational matrix whose entries are all machine integers.
    Integer(Vec<i64>),
    Rational(Vec<BigRational>),
    Residue(Vec<u64>),
}

/// A row-major matrix over a [`FieldSpec`].
#[derive(Debug, Clone, PartialEq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    field: FieldSpec,
    entries: Entries,
}

impl ExactMatrix {
    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Self {
        let entries = match field {
            FieldSpec::Rationals => Entries::Integer(vec![0; rows * cols]),
            FieldSpec::Prime(_) => Entries::Residue(vec![0; rows * cols]),
        };
        ExactMatrix {
            rows,
            cols,
            field,
            entries,
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Row-major integer entries, reduced into `field`.
    ///
    /// # Panics
    /// If `data.len() != rows * cols`.
    pub fn from_i64(field: FieldSpec, rows: usize, cols: usize, data: &[i64]) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data has the wrong length");
        let entries = match field {
            FieldSpec::Rationals => Entries::Integer(data.to_vec()),
            FieldSpec::Prime(p) => {
                Entries::Residue(data.iter().map(|v| v.rem_euclid(p as i64) as u64).collect())
            }
        };
        ExactMatrix {
            rows,
            cols,
            field,
            entries,
        }
    }

    /// Row-major rational entries.
    ///
    /// # Panics
    /// If `data.len() != rows * cols`.
    pub fn from_rationals(rows: usize, cols: usize, data: Vec<BigRational>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data has the wrong length");
        ExactMatrix {
            rows,
            cols,
            field: FieldSpec::Rationals,
            entries: Entries::Rational(data),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn set(&mut self, r: usize, c: usize, value: i64) {
        let at = r * self.cols + c;
        match (&mut self.entries, self.field) {
            (Entries::Integer(d), _) => d[at] = value,
            (Entries::Rational(d), _) => d[at] = BigRational::from_integer(value.into()),
            (Entries::Residue(d), FieldSpec::Prime(p)) => d[at] = value.rem_euclid(p as i64) as u64,
            (Entries::Residue(_), FieldSpec::Rationals) => unreachable!(),
        }
    }

    pub fn get(&self, r: usize, c: usize) -> FieldElement {
        let at = r * self.cols + c;
        match (&self.entries, self.field) {
            (Entries::Integer(d), _) => FieldElement::Rational(BigRational::from_integer(d[at].into())),
            (Entries::Rational(d), _) => FieldElement::Rational(d[at].clone()),
            (Entries::Residue(d), FieldSpec::Prime(p)) => FieldElement::Residue { value: d[at], p },
            (Entries::Residue(_), FieldSpec::Rationals) => unreachable!(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.entries {
            Entries::Integer(d) => d.iter().all(|v| *v == 0),
            Entries::Rational(d) => d.iter().all(Zero::is_zero),
            Entries::Residue(d) => d.iter().all(|v| *v == 0),
        }
    }

    /// Matrix product `self * rhs` over the shared field.
    ///
    /// # Panics
    /// On a dimension or field mismatch.
    pub fn mul(&self, rhs: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        assert_eq!(self.field, rhs.field, "field mismatch");
        let (n, m, k) = (self.rows, rhs.cols, self.cols);
        match (&self.entries, &rhs.entries, self.field) {
            (Entries::Residue(a), Entries::Residue(b), FieldSpec::Prime(p)) => {
                let mut out = vec![0u64; n * m];
                for i in 0..n {
                    for t in 0..k {
                        let x = a[i * k + t];
                        if x == 0 {
                            continue;
                        }
                        for j in 0..m {
                            out[i * m + j] = (out[i * m + j] + x * b[t * m + j]) % p;
                        }
                    }
                }
                ExactMatrix {
                    rows: n,
                    cols: m,
                    field: self.field,
                    entries: Entries::Residue(out),
                }
            }
            _ => {
                let a = self.rational_entries();
                let b = rhs.rational_entries();
                let mut out = vec![BigRational::zero(); n * m];
                for i in 0..n {
                    for t in 0..k {
                        if a[i * k + t].is_zero() {
                            continue;
                        }
                        for j in 0..m {
                            out[i * m + j] += &a[i * k + t] * &b[t * m + j];
                        }
                    }
                }
                ExactMatrix::from_rationals(n, m, out)
            }
        }
    }

    fn rational_entries(&self) -> Vec<BigRational> {
        match &self.entries {
            Entries::Integer(d) => d.iter().map(|v| BigRational::from_integer((*v).into())).collect(),
            Entries::Rational(d) => d.clone(),
            Entries::Residue(_) => unreachable!("prime-field matrix has no rational entries"),
        }
    }

    /// Exact rank over the matrix's field.
    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        match (&self.entries, self.field) {
            (Entries::Residue(d), FieldSpec::Prime(p)) => rank_mod_p(d.clone(), self.rows, self.cols, p),
            (Entries::Integer(d), _) => {
                let mut wide: Vec<i128> = d.iter().map(|&v| v as i128).collect();
                match bareiss_rank_i128(&mut wide, self.rows, self.cols) {
                    Some(r) => r,
                    None => bareiss_rank_big(
                        d.iter().map(|&v| BigInt::from(v)).collect(),
                        self.rows,
                        self.cols,
                    ),
                }
            }
            (Entries::Rational(d), _) => {
                bareiss_rank_big(clear_denominators(d, self.rows, self.cols), self.rows, self.cols)
            }
            (Entries::Residue(_), FieldSpec::Rationals) => unreachable!(),
        }
    }
}

/// Scales every row by the lcm of its denominators.
fn clear_denominators(d: &[BigRational], rows: usize, cols: usize) -> Vec<BigInt> {
    let mut out = Vec::with_capacity(rows * cols);
    for r in 0..rows {
        let row = &d[r * cols..(r + 1) * cols];
        let lcm = row.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
        out.extend(row.iter().map(|q| q.numer() * (&lcm / q.denom())));
    }
    out
}

fn inv_mod(a: u64, p: u64) -> u64 {
    // Fermat: a^(p-2) mod p.
    let (mut base, mut exp, mut acc) = (a % p, p - 2, 1u64);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

/// Gaussian elimination mod p. Columns are scanned left to right; the pivot
/// is the lowest-index remaining row with a nonzero entry.
fn rank_mod_p(mut m: Vec<u64>, rows: usize, cols: usize, p: u64) -> usize {
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(piv) = (rank..rows).find(|&r| m[r * cols + c] != 0) else {
            continue;
        };
        if piv != rank {
            for j in c..cols {
                m.swap(piv * cols + j, rank * cols + j);
            }
        }
        let inv = inv_mod(m[rank * cols + c], p);
        for j in c..cols {
            m[rank * cols + j] = m[rank * cols + j] * inv % p;
        }
        for r in rank + 1..rows {
            let f = m[r * cols + c];
            if f == 0 {
                continue;
            }
            for j in c..cols {
                let sub = f * m[rank * cols + j] % p;
                m[r * cols + j] = (m[r * cols + j] + p - sub) % p;
            }
        }
        rank += 1;
    }
    rank
}

/// Bareiss elimination in checked `i128`; `None` on overflow.
fn bareiss_rank_i128(m: &mut [i128], rows: usize, cols: usize) -> Option<usize> {
    let mut prev: i128 = 1;
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(piv) = (rank..rows).find(|&r| m[r * cols + c] != 0) else {
            continue;
        };
        if piv != rank {
            for j in c..cols {
                m.swap(piv * cols + j, rank * cols + j);
            }
        }
        let pv = m[rank * cols + c];
        for r in rank + 1..rows {
            let f = m[r * cols + c];
            for j in c + 1..cols {
                let a = pv.checked_mul(m[r * cols + j])?;
                let b = f.checked_mul(m[rank * cols + j])?;
                m[r * cols + j] = a.checked_sub(b)? / prev;
            }
            m[r * cols + c] = 0;
        }
        prev = pv;
        rank += 1;
    }
    Some(rank)
}

fn bareiss_rank_big(mut m: Vec<BigInt>, rows: usize, cols: usize) -> usize {
    let mut prev = BigInt::one();
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(piv) = (rank..rows).find(|&r| !m[r * cols + c].is_zero()) else {
            continue;
        };
        if piv != rank {
            for j in c..cols {
                m.swap(piv * cols + j, rank * cols + j);
            }
        }
        let pv = m[rank * cols + c].clone();
        for r in rank + 1..rows {
            let f = m[r * cols + c].clone();
            for j in c + 1..cols {
                let v = &pv * &m[r * cols + j] - &f * &m[rank * cols + j];
                m[r * cols + j] = v / &prev;
            }
            m[r * cols + c] = BigInt::zero();
        }
        prev = pv;
        rank += 1;
    }
    rank
}
