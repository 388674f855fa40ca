//! Dense complex matrices and the handful of linear-algebra routines the
//! oracle needs.

use num_complex::Complex64;

/// Dense row-major complex matrix.
///
/// Term and pattern denotations always have power-of-two row and column
/// counts; orthocomplements may have any column count (including zero).
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> ComplexMatrix {
        ComplexMatrix {
            rows,
            cols,
            data: vec![Complex64::ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> ComplexMatrix {
        let mut m = ComplexMatrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Complex64::ONE;
        }
        m
    }

    /// Column vector from amplitudes.
    pub fn column(entries: &[Complex64]) -> ComplexMatrix {
        ComplexMatrix {
            rows: entries.len(),
            cols: 1,
            data: entries.to_vec(),
        }
    }

    pub fn from_rows(rows: &[&[Complex64]]) -> ComplexMatrix {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend_from_slice(row);
        }
        ComplexMatrix {
            rows: r,
            cols: c,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn mul(&self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(
            self.cols, rhs.rows,
            "matrix product shape mismatch: {}x{} * {}x{}",
            self.rows, self.cols, rhs.rows, rhs.cols
        );
        let mut out = ComplexMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a == Complex64::ZERO {
                    continue;
                }
                let lhs_row = i * rhs.cols;
                let rhs_row = k * rhs.cols;
                for j in 0..rhs.cols {
                    out.data[lhs_row + j] += a * rhs.data[rhs_row + j];
                }
            }
        }
        out
    }

    pub fn kron(&self, rhs: &ComplexMatrix) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(self.rows * rhs.rows, self.cols * rhs.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a == Complex64::ZERO {
                    continue;
                }
                for p in 0..rhs.rows {
                    for q in 0..rhs.cols {
                        out.set(i * rhs.rows + p, j * rhs.cols + q, a * rhs.get(p, q));
                    }
                }
            }
        }
        out
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).conj());
            }
        }
        out
    }

    pub fn add(&self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| a + b)
            .collect();
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn sub(&self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| a - b)
            .collect();
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn scaled(&self, factor: Complex64) -> ComplexMatrix {
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * factor).collect(),
        }
    }

    /// Concatenate blocks side by side. All blocks must share a row count.
    pub fn hstack(blocks: &[&ComplexMatrix]) -> ComplexMatrix {
        assert!(!blocks.is_empty());
        let rows = blocks[0].rows;
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = ComplexMatrix::zeros(rows, cols);
        let mut offset = 0;
        for b in blocks {
            assert_eq!(b.rows, rows, "hstack row mismatch");
            for i in 0..rows {
                for j in 0..b.cols {
                    out.set(i, offset + j, b.get(i, j));
                }
            }
            offset += b.cols;
        }
        out
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    fn max_row_sum(&self) -> f64 {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).norm()).sum())
            .fold(0.0, f64::max)
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        if self.rows != self.cols {
            return false;
        }
        let id = ComplexMatrix::identity(self.rows);
        max_abs_diff(&self.dagger().mul(self), &id) < tol
            && max_abs_diff(&self.mul(&self.dagger()), &id) < tol
    }

    /// `P^dag P = I` on the column space.
    pub fn is_isometry(&self, tol: f64) -> bool {
        let id = ComplexMatrix::identity(self.cols);
        max_abs_diff(&self.dagger().mul(self), &id) < tol
    }

    /// Render in the textual matrix format: a `dim` header, then one line
    /// per row with entries `<re><+/-><im>j` at fixed 8 decimal places.
    pub fn render_text(&self) -> String {
        let mut out = format!("dim {} {}\n", self.rows, self.cols);
        for i in 0..self.rows {
            let mut parts = Vec::with_capacity(self.cols);
            for j in 0..self.cols {
                let v = self.get(i, j);
                let re = v.re + 0.0; // normalize -0.0
                let im = v.im;
                let sign = if im >= 0.0 || im.is_nan() { '+' } else { '-' };
                parts.push(format!("{re:.8}{sign}{:.8}j", im.abs() + 0.0));
            }
            out.push_str(&parts.join(" "));
            out.push('\n');
        }
        out
    }
}

/// Largest complex modulus of the entrywise difference. Panics on shape
/// mismatch: comparisons of differently-shaped denotations are harness bugs.
pub fn max_abs_diff(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    assert_eq!(
        (a.rows, a.cols),
        (b.rows, b.cols),
        "max_abs_diff shape mismatch: {}x{} vs {}x{}",
        a.rows,
        a.cols,
        b.rows,
        b.cols
    );
    a.data
        .iter()
        .zip(&b.data)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// Matrix exponential by scaling-and-squaring with a Taylor series; accurate
/// to near machine precision at the sizes used here.
pub fn expm(m: &ComplexMatrix) -> ComplexMatrix {
    assert_eq!(m.rows, m.cols, "expm requires a square matrix");
    let norm = m.max_row_sum();
    let scalings = if norm > 0.5 {
        (norm.log2().ceil() as i32 + 1).max(0) as u32
    } else {
        0
    };
    let scaled = m.scaled(Complex64::new(1.0 / f64::powi(2.0, scalings as i32), 0.0));
    let mut result = ComplexMatrix::identity(m.rows);
    let mut term = ComplexMatrix::identity(m.rows);
    for k in 1..200 {
        term = term
            .mul(&scaled)
            .scaled(Complex64::new(1.0 / k as f64, 0.0));
        result = result.add(&term);
        if term.max_abs() < 1e-30 {
            break;
        }
    }
    for _ in 0..scalings {
        result = result.mul(&result);
    }
    result
}
