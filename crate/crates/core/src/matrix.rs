//! Dense matrices over `Q(v)`.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use crate::laurent::FracLaurent;

#[derive(Clone, PartialEq, Eq)]
pub struct FracMatrix {
    rows: usize,
    cols: usize,
    data: Vec<FracLaurent>,
}

impl FracMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![FracLaurent::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = FracLaurent::one();
        }
        m
    }

    pub fn scalar(n: usize, c: &FracLaurent) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = c.clone();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<FracLaurent>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        Self { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn trace(&self) -> FracLaurent {
        assert_eq!(self.rows, self.cols);
        let mut t = FracLaurent::zero();
        for i in 0..self.rows {
            t += &self[(i, i)];
        }
        t
    }

    pub fn scale(&self, c: &FracLaurent) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * c).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(FracLaurent::is_zero)
    }

    /// Inverse by Gauss-Jordan elimination; `None` if singular.
    pub fn inverse(&self) -> Option<Self> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a[(r, col)].is_zero())?;
            if pivot != col {
                a.swap_rows(pivot, col);
                inv.swap_rows(pivot, col);
            }
            let p = a[(col, col)].inv().expect("nonzero pivot");
            for j in 0..n {
                a[(col, j)] = &a[(col, j)] * &p;
                inv[(col, j)] = &inv[(col, j)] * &p;
            }
            for r in 0..n {
                if r == col || a[(r, col)].is_zero() {
                    continue;
                }
                let f = a[(r, col)].clone();
                for j in 0..n {
                    let d = &f * &a[(col, j)];
                    a[(r, j)] -= &d;
                    let d = &f * &inv[(col, j)];
                    inv[(r, j)] -= &d;
                }
            }
        }
        Some(inv)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl Index<(usize, usize)> for FracMatrix {
    type Output = FracLaurent;
    fn index(&self, (r, c): (usize, usize)) -> &FracLaurent {
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for FracMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut FracLaurent {
        &mut self.data[r * self.cols + c]
    }
}

impl Mul<&FracMatrix> for &FracMatrix {
    type Output = FracMatrix;
    fn mul(self, rhs: &FracMatrix) -> FracMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let mut out = FracMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += &(a * b);
                    }
                }
            }
        }
        out
    }
}

impl Add<&FracMatrix> for &FracMatrix {
    type Output = FracMatrix;
    fn add(self, rhs: &FracMatrix) -> FracMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        FracMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub<&FracMatrix> for &FracMatrix {
    type Output = FracMatrix;
    fn sub(self, rhs: &FracMatrix) -> FracMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        FracMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl fmt::Debug for FracMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self[(r, c)].to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}
