//! Smith normal form over the integers with audit certificates.
//!
//! The elimination always pivots on the entry of smallest magnitude in the
//! active block, which keeps intermediate entries small on the sparse
//! boundary matrices this crate produces. Correctness never rests on the
//! pivot rule: the returned transforms satisfy `U·A·V = D` and can be
//! audited independently with [`IntMatrix::det`].

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::Mul;

/// Dense row-major integer matrix.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged matrix");
        IntMatrix {
            rows: r,
            cols: c,
            data: rows.iter().flat_map(|x| x.iter().cloned().map(Into::into)).collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    fn at(&mut self, i: usize, j: usize) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row[dst] += k · row[src]
    fn add_row(&mut self, dst: usize, src: usize, k: &BigInt) {
        for j in 0..self.cols {
            let v = self.get(src, j) * k;
            *self.at(dst, j) += v;
        }
    }

    /// col[dst] += k · col[src]
    fn add_col(&mut self, dst: usize, src: usize, k: &BigInt) {
        for i in 0..self.rows {
            let v = self.get(i, src) * k;
            *self.at(i, dst) += v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -self.get(i, j);
            self.set(i, j, v);
        }
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut m = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m.get(k, k).is_zero() {
                match (k + 1..n).find(|&i| !m.get(i, k).is_zero()) {
                    Some(i) => {
                        m.swap_rows(i, k);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (m.get(i, j) * m.get(k, k) - m.get(i, k) * m.get(k, j)) / &prev;
                    m.set(i, j, v);
                }
            }
            prev = m.get(k, k).clone();
        }
        sign * m.get(n - 1, n - 1)
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;
    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows, "shape mismatch in product");
        let mut out = IntMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        *out.at(i, j) += a * b;
                    }
                }
            }
        }
        out
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Result of a Smith normal form computation.
#[derive(Clone, Debug)]
pub struct Snf {
    /// Nonzero diagonal entries, positive, each dividing the next.
    pub divisors: Vec<BigInt>,
    pub rank: usize,
    /// `(U, D, V)` with `U·A·V = D`; present when transforms were requested.
    pub certificate: Option<(IntMatrix, IntMatrix, IntMatrix)>,
}

impl Snf {
    /// Checks the certificate against `a`: the product identity, diagonal
    /// shape with the divisor chain, and unimodularity of both transforms.
    pub fn audit(&self, a: &IntMatrix) -> bool {
        let Some((u, d, v)) = &self.certificate else {
            return false;
        };
        if &(&(u * a) * v) != d {
            return false;
        }
        for i in 0..d.rows() {
            for j in 0..d.cols() {
                let want = if i == j && i < self.rank { &self.divisors[i] } else { &BigInt::zero() };
                if d.get(i, j) != want {
                    return false;
                }
            }
        }
        let chain_ok = self.divisors.iter().all(|x| x.is_positive())
            && self.divisors.windows(2).all(|w| (&w[1] % &w[0]).is_zero());
        chain_ok && u.det().abs().is_one() && v.det().abs().is_one()
    }
}

/// Smith normal form with unimodular transforms.
pub fn smith_normal_form(a: &IntMatrix) -> Snf {
    run(a.clone(), true)
}

/// Divisors and rank only; skips the transform bookkeeping.
pub fn smith_divisors(a: &IntMatrix) -> Snf {
    run(a.clone(), false)
}

fn run(mut m: IntMatrix, track: bool) -> Snf {
    let (rows, cols) = (m.rows, m.cols);
    let mut u = track.then(|| IntMatrix::identity(rows));
    let mut v = track.then(|| IntMatrix::identity(cols));
    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pi, pj)) = smallest_nonzero(&m, t) else { break };
        m.swap_rows(t, pi);
        m.swap_cols(t, pj);
        if let Some(u) = u.as_mut() {
            u.swap_rows(t, pi);
        }
        if let Some(v) = v.as_mut() {
            v.swap_cols(t, pj);
        }
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if m.get(i, t).is_zero() {
                    continue;
                }
                let q = -(m.get(i, t) / m.get(t, t));
                m.add_row(i, t, &q);
                if let Some(u) = u.as_mut() {
                    u.add_row(i, t, &q);
                }
                dirty |= !m.get(i, t).is_zero();
            }
            for j in t + 1..cols {
                if m.get(t, j).is_zero() {
                    continue;
                }
                let q = -(m.get(t, j) / m.get(t, t));
                m.add_col(j, t, &q);
                if let Some(v) = v.as_mut() {
                    v.add_col(j, t, &q);
                }
                dirty |= !m.get(t, j).is_zero();
            }
            if dirty {
                // A remainder survived: move the smallest entry of the pivot
                // row/column into place and sweep again.
                let (bi, bj) = smallest_in_cross(&m, t);
                m.swap_rows(t, bi);
                m.swap_cols(t, bj);
                if let Some(u) = u.as_mut() {
                    u.swap_rows(t, bi);
                }
                if let Some(v) = v.as_mut() {
                    v.swap_cols(t, bj);
                }
                continue;
            }
            let p = m.get(t, t).clone();
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !m.get(i, j).is_multiple_of(&p)));
            match bad {
                Some(i) => {
                    let one = BigInt::one();
                    m.add_row(t, i, &one);
                    if let Some(u) = u.as_mut() {
                        u.add_row(t, i, &one);
                    }
                }
                None => break,
            }
        }
        if m.get(t, t).is_negative() {
            m.negate_row(t);
            if let Some(u) = u.as_mut() {
                u.negate_row(t);
            }
        }
        t += 1;
    }
    let divisors: Vec<BigInt> = (0..t).map(|i| m.get(i, i).clone()).collect();
    Snf {
        rank: t,
        divisors,
        certificate: match (u, v) {
            (Some(u), Some(v)) => Some((u, m, v)),
            _ => None,
        },
    }
}

fn smallest_nonzero(m: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, BigInt)> = None;
    for i in t..m.rows {
        for j in t..m.cols {
            let x = m.get(i, j);
            if x.is_zero() {
                continue;
            }
            let a = x.abs();
            if best.as_ref().is_none_or(|b| a < b.2) {
                let done = a.is_one();
                best = Some((i, j, a));
                if done {
                    return best.map(|b| (b.0, b.1));
                }
            }
        }
    }
    best.map(|b| (b.0, b.1))
}

fn smallest_in_cross(m: &IntMatrix, t: usize) -> (usize, usize) {
    let mut best = (t, t, m.get(t, t).abs());
    for i in t + 1..m.rows {
        let a = m.get(i, t).abs();
        if !a.is_zero() && a < best.2 {
            best = (i, t, a);
        }
    }
    for j in t + 1..m.cols {
        let a = m.get(t, j).abs();
        if !a.is_zero() && a < best.2 {
            best = (t, j, a);
        }
    }
    (best.0, best.1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn divs(a: &IntMatrix) -> Vec<i64> {
        let s = smith_normal_form(a);
        assert!(s.audit(a), "audit failed for {a:?}");
        s.divisors.iter().map(|d| d.try_into().unwrap()).collect()
    }

    #[test]
    fn diag_two_three() {
        assert_eq!(divs(&IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]])), vec![1, 6]);
    }

    #[test]
    fn identity_and_zero() {
        assert_eq!(divs(&IntMatrix::identity(3)), vec![1, 1, 1]);
        let z = IntMatrix::zeros(3, 4);
        assert_eq!(smith_normal_form(&z).rank, 0);
        assert!(smith_normal_form(&z).audit(&z));
    }

    #[test]
    fn textbook_example() {
        let a = IntMatrix::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        assert_eq!(divs(&a), vec![2, 6, 12]);
    }

    #[test]
    fn divisibility_repair_needed() {
        // Row/column clearing alone leaves diag(2, 3); the repair step must fire.
        let a = IntMatrix::from_rows(&[vec![2, 0, 0], vec![0, 3, 0], vec![0, 0, 0]]);
        assert_eq!(divs(&a), vec![1, 6]);
    }

    #[test]
    fn empty_shapes() {
        let a = IntMatrix::zeros(0, 5);
        let s = smith_normal_form(&a);
        assert_eq!(s.rank, 0);
        assert!(s.audit(&a));
    }

    #[test]
    fn bareiss_det() {
        let a = IntMatrix::from_rows(&[vec![0, 2, 1], vec![3, 1, 0], vec![1, 1, 1]]);
        assert_eq!(a.det(), BigInt::from(-4));
        assert_eq!(IntMatrix::identity(4).det(), BigInt::one());
    }
}
