//! Dense integer/rational matrices with the exact algorithms the rest of
//! the crate is built on: Smith normal form, fraction-free determinants,
//! rational elimination and congruence diagonalization.
//!
//! Everything here is arbitrary precision; no floating point anywhere.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

pub type Int = BigInt;
pub type Rat = BigRational;

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(Int::from(n))
}

/// Dense row-major integer matrix.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntMat {
    rows: usize,
    cols: usize,
    data: Vec<Int>,
}

impl IntMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMat { rows, cols, data: vec![Int::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Int::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Int>>) -> Result<Self, Error> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::input("matrix rows have unequal lengths"));
        }
        Ok(IntMat { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        let converted = rows.iter().map(|r| r.iter().map(|&x| Int::from(x)).collect()).collect();
        Self::from_rows(converted).expect("literal matrix is rectangular")
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Int {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Int) {
        self.data[i * self.cols + j] = v;
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> IntMat {
        let mut t = IntMat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMat) -> IntMat {
        assert_eq!(self.cols, other.rows, "matrix dimension mismatch");
        let mut out = IntMat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j) + a * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Int]) -> Vec<Int> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j) * &v[j]).sum())
            .collect()
    }

    pub fn column(&self, j: usize) -> Vec<Int> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row(&self, i: usize) -> Vec<Int> {
        (0..self.cols).map(|j| self.get(i, j).clone()).collect()
    }

    pub fn diagonal(&self) -> Vec<Int> {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i).clone()).collect()
    }

    pub fn to_rational(&self) -> Vec<Vec<Rat>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| Rat::from_integer(self.get(i, j).clone())).collect())
            .collect()
    }

    pub fn to_vec(&self) -> Vec<Vec<Int>> {
        (0..self.rows).map(|i| self.row(i)).collect()
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

    /// row a += q * row b
    fn add_row(&mut self, a: usize, b: usize, q: &Int) {
        for j in 0..self.cols {
            let v = self.get(a, j) + q * self.get(b, j);
            self.set(a, j, v);
        }
    }

    /// col a += q * col b
    fn add_col(&mut self, a: usize, b: usize, q: &Int) {
        for i in 0..self.rows {
            let v = self.get(i, a) + q * self.get(i, b);
            self.set(i, a, v);
        }
    }

    fn negate_row(&mut self, a: usize) {
        for j in 0..self.cols {
            let v = -self.get(a, j);
            self.set(a, j, v);
        }
    }
}

impl std::fmt::Display for IntMat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// U * M * V = D with U, V unimodular and D diagonal, nonnegative,
/// each entry dividing the next, zeros last.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub u: IntMat,
    pub d: IntMat,
    pub v: IntMat,
}

impl SmithDecomposition {
    pub fn rank(&self) -> usize {
        self.d.diagonal().iter().take_while(|x| !x.is_zero()).count()
    }
}

pub fn smith_normal_form(m: &IntMat) -> SmithDecomposition {
    let mut a = m.clone();
    let mut u = IntMat::identity(m.nrows());
    let mut v = IntMat::identity(m.ncols());
    let n = m.nrows().min(m.ncols());

    let mut t = 0;
    while t < n {
        // pick the nonzero entry of smallest absolute value in the trailing block
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..m.nrows() {
            for j in t..m.ncols() {
                if !a.get(i, j).is_zero()
                    && pivot.map_or(true, |(pi, pj)| a.get(i, j).abs() < a.get(pi, pj).abs())
                {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        a.swap_rows(t, pi);
        u.swap_rows(t, pi);
        a.swap_cols(t, pj);
        v.swap_cols(t, pj);

        'reduce: loop {
            // clear column t below the pivot
            for i in t + 1..m.nrows() {
                while !a.get(i, t).is_zero() {
                    let q = -(a.get(i, t) / a.get(t, t));
                    a.add_row(i, t, &q);
                    u.add_row(i, t, &q);
                    if !a.get(i, t).is_zero() {
                        a.swap_rows(i, t);
                        u.swap_rows(i, t);
                    }
                }
            }
            // clear row t right of the pivot; may dirty the column again
            for j in t + 1..m.ncols() {
                while !a.get(t, j).is_zero() {
                    let q = -(a.get(t, j) / a.get(t, t));
                    a.add_col(j, t, &q);
                    v.add_col(j, t, &q);
                    if !a.get(t, j).is_zero() {
                        a.swap_cols(j, t);
                        v.swap_cols(j, t);
                    }
                }
            }
            if (t + 1..m.nrows()).any(|i| !a.get(i, t).is_zero()) {
                continue 'reduce;
            }
            // force the pivot to divide the remaining block
            for i in t + 1..m.nrows() {
                for j in t + 1..m.ncols() {
                    if !(a.get(i, j) % a.get(t, t)).is_zero() {
                        a.add_row(t, i, &Int::one());
                        u.add_row(t, i, &Int::one());
                        continue 'reduce;
                    }
                }
            }
            break;
        }
        if a.get(t, t).is_negative() {
            a.negate_row(t);
            u.negate_row(t);
        }
        t += 1;
    }

    SmithDecomposition { u, d: a, v }
}

/// Signed determinant of a square integer matrix (Bareiss, fraction free).
pub fn determinant(m: &IntMat) -> Int {
    assert!(m.is_square(), "determinant of a non-square matrix");
    let n = m.nrows();
    if n == 0 {
        return Int::one();
    }
    let mut a = m.to_vec();
    let mut sign = Int::one();
    let mut prev = Int::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(s) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return Int::zero();
            };
            a.swap(k, s);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = num / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * a[n - 1][n - 1].clone()
}

/// Solution of an exact rational linear system A x = b.
#[derive(Clone, Debug)]
pub enum LinSolution {
    Unique(Vec<Rat>),
    Affine { particular: Vec<Rat>, kernel: Vec<Vec<Rat>> },
    Inconsistent,
}

/// Gauss-Jordan over the rationals with kernel basis extraction.
pub fn solve_linear(a: &IntMat, b: &[Rat]) -> LinSolution {
    assert_eq!(a.nrows(), b.len());
    let rows = a.nrows();
    let cols = a.ncols();
    let mut m = a.to_rational();
    let mut rhs = b.to_vec();

    let mut pivot_cols: Vec<usize> = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        rhs.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        rhs[r] *= &inv;
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let v = &m[i][j] - &f * &m[r][j];
                    m[i][j] = v;
                }
                let v = &rhs[i] - &f * &rhs[r];
                rhs[i] = v;
            }
        }
        pivot_cols.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    if rhs[r..].iter().any(|x| !x.is_zero()) {
        return LinSolution::Inconsistent;
    }

    let mut particular = vec![Rat::zero(); cols];
    for (k, &c) in pivot_cols.iter().enumerate() {
        particular[c] = rhs[k].clone();
    }
    let free_cols: Vec<usize> = (0..cols).filter(|c| !pivot_cols.contains(c)).collect();
    if free_cols.is_empty() {
        return LinSolution::Unique(particular);
    }
    let kernel = free_cols
        .iter()
        .map(|&fc| {
            let mut k = vec![Rat::zero(); cols];
            k[fc] = Rat::one();
            for (row, &pc) in pivot_cols.iter().enumerate() {
                k[pc] = -m[row][fc].clone();
            }
            k
        })
        .collect();
    LinSolution::Affine { particular, kernel }
}

pub fn rank_rational(a: &IntMat) -> usize {
    match solve_linear(a, &vec![Rat::zero(); a.nrows()]) {
        LinSolution::Unique(_) => a.ncols(),
        LinSolution::Affine { kernel, .. } => a.ncols() - kernel.len(),
        LinSolution::Inconsistent => unreachable!("homogeneous system is consistent"),
    }
}

/// Inertia (n_plus, n_zero, n_minus) of a symmetric matrix by congruence
/// diagonalization with symmetric pivoting. Zero diagonals are repaired with
/// the e_i <- e_i + e_j substitution, which stays within congruence.
pub fn signature_triple(gram: &IntMat) -> (usize, usize, usize) {
    assert!(gram.is_symmetric(), "signature of a non-symmetric matrix");
    let n = gram.nrows();
    let mut a = gram.to_rational();
    let (mut plus, mut zero, mut minus) = (0usize, 0usize, 0usize);

    for i in 0..n {
        if a[i][i].is_zero() {
            if let Some(j) = (i + 1..n).find(|&j| !a[j][j].is_zero()) {
                a.swap(i, j);
                for row in a.iter_mut() {
                    row.swap(i, j);
                }
            } else if let Some(j) = (i + 1..n).find(|&j| !a[i][j].is_zero()) {
                // e_i <- e_i + e_j turns the off-diagonal entry into 2*a_ij
                for c in 0..n {
                    let v = &a[i][c] + &a[j][c];
                    a[i][c] = v;
                }
                for row in a.iter_mut() {
                    let v = &row[i] + &row[j];
                    row[i] = v;
                }
            } else {
                zero += 1;
                continue;
            }
        }
        let p = a[i][i].clone();
        if p.is_positive() {
            plus += 1;
        } else {
            minus += 1;
        }
        for j in i + 1..n {
            if a[j][i].is_zero() {
                continue;
            }
            let f = &a[j][i] / &p;
            for c in 0..n {
                let v = &a[j][c] - &f * &a[i][c];
                a[j][c] = v;
            }
            for row in a.iter_mut() {
                let v = &row[j] - &f * &row[i];
                row[j] = v;
            }
        }
    }
    (plus, zero, minus)
}

pub fn parse_rational(s: &str) -> Result<Rat, Error> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: Int = num.parse().map_err(|_| Error::input(format!("invalid rational '{s}'")))?;
    let d: Int = den.parse().map_err(|_| Error::input(format!("invalid rational '{s}'")))?;
    if d.is_zero() {
        return Err(Error::input(format!("zero denominator in '{s}'")));
    }
    Ok(Rat::new(n, d))
}

pub fn format_rational(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_snf(m: &IntMat) {
        let s = smith_normal_form(m);
        assert_eq!(s.u.mul(m).mul(&s.v), s.d, "U*M*V != D for\n{m}");
        assert_eq!(determinant(&s.u).abs(), Int::one());
        assert_eq!(determinant(&s.v).abs(), Int::one());
        let diag = s.d.diagonal();
        for w in diag.windows(2) {
            if w[0].is_zero() {
                assert!(w[1].is_zero(), "zeros must come last");
            } else {
                assert!((&w[1] % &w[0]).is_zero(), "divisibility chain violated");
            }
        }
        for x in &diag {
            assert!(!x.is_negative());
        }
        // off-diagonal of D is zero
        for i in 0..s.d.nrows() {
            for j in 0..s.d.ncols() {
                if i != j {
                    assert!(s.d.get(i, j).is_zero());
                }
            }
        }
    }

    #[test]
    fn snf_zero_matrix() {
        let m = IntMat::zeros(3, 3);
        let s = smith_normal_form(&m);
        assert!(s.d.is_zero());
        check_snf(&m);
    }

    #[test]
    fn snf_diag_4_6() {
        let m = IntMat::from_i64(&[vec![4, 0], vec![0, 6]]);
        let s = smith_normal_form(&m);
        assert_eq!(s.d.diagonal(), vec![Int::from(2), Int::from(12)]);
        check_snf(&m);
    }

    #[test]
    fn snf_hyperbolic() {
        let m = IntMat::from_i64(&[vec![0, 1], vec![1, 0]]);
        let s = smith_normal_form(&m);
        assert_eq!(s.d.diagonal(), vec![Int::one(), Int::one()]);
        check_snf(&m);
    }

    #[test]
    fn snf_rectangular() {
        let m = IntMat::from_i64(&[vec![2, 4, 4], vec![-6, 6, 12]]);
        check_snf(&m);
    }

    #[test]
    fn determinant_small() {
        let m = IntMat::from_i64(&[vec![0, 1], vec![1, 0]]);
        assert_eq!(determinant(&m), Int::from(-1));
        let m = IntMat::from_i64(&[vec![2, 1], vec![1, 2]]);
        assert_eq!(determinant(&m), Int::from(3));
        let m = IntMat::from_i64(&[vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 9]]);
        assert_eq!(determinant(&m), Int::zero());
    }

    #[test]
    fn solve_unique() {
        let a = IntMat::from_i64(&[vec![2, 0], vec![0, 3]]);
        let b = vec![rat_int(4), rat_int(6)];
        match solve_linear(&a, &b) {
            LinSolution::Unique(x) => assert_eq!(x, vec![rat_int(2), rat_int(2)]),
            other => panic!("expected unique solution, got {other:?}"),
        }
    }

    #[test]
    fn solve_affine_and_inconsistent() {
        let a = IntMat::from_i64(&[vec![1, 1], vec![1, 1]]);
        match solve_linear(&a, &[rat_int(2), rat_int(2)]) {
            LinSolution::Affine { particular, kernel } => {
                assert_eq!(kernel.len(), 1);
                assert_eq!(&particular[0] + &particular[1], rat_int(2));
            }
            other => panic!("expected affine solution, got {other:?}"),
        }
        match solve_linear(&a, &[rat_int(2), rat_int(3)]) {
            LinSolution::Inconsistent => {}
            other => panic!("expected inconsistent, got {other:?}"),
        }
    }

    #[test]
    fn signature_basic() {
        let h = IntMat::from_i64(&[vec![0, 1], vec![1, 0]]);
        assert_eq!(signature_triple(&h), (1, 0, 1));
        let m = IntMat::from_i64(&[vec![2, 0], vec![0, -3]]);
        assert_eq!(signature_triple(&m), (1, 0, 1));
        let z = IntMat::zeros(2, 2);
        assert_eq!(signature_triple(&z), (0, 2, 0));
    }

    proptest::proptest! {
        #[test]
        fn snf_random(entries in proptest::collection::vec(-9i64..=9, 1..=20)) {
            // reshape into a square-ish matrix
            let n = (1..=4).rev().find(|k| entries.len() >= k * k).unwrap_or(1);
            let rows: Vec<Vec<i64>> =
                (0..n).map(|i| entries[i * n..(i + 1) * n].to_vec()).collect();
            check_snf(&IntMat::from_i64(&rows));
        }
    }
}
