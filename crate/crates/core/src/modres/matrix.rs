use crate::qpoly::Polynomial;

/// Matrix of polynomials stored by columns.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    nvars: usize,
    cols: Vec<Vec<Polynomial>>,
}

impl Matrix {
    pub fn from_columns(rows: usize, nvars: usize, cols: Vec<Vec<Polynomial>>) -> Self {
        debug_assert!(cols.iter().all(|c| c.len() == rows));
        Matrix { rows, nvars, cols }
    }

    pub fn from_rows(nvars: usize, rows: Vec<Vec<Polynomial>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let cols = (0..c).map(|j| (0..r).map(|i| rows[i][j].clone()).collect()).collect();
        Matrix { rows: r, nvars, cols }
    }

    pub fn zero(rows: usize, ncols: usize, nvars: usize) -> Self {
        Matrix { rows, nvars, cols: vec![vec![Polynomial::zero(nvars); rows]; ncols] }
    }

    pub fn identity(n: usize, nvars: usize) -> Self {
        let cols = (0..n)
            .map(|j| (0..n).map(|i| if i == j { Polynomial::one(nvars) } else { Polynomial::zero(nvars) }).collect())
            .collect();
        Matrix { rows: n, nvars, cols }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn columns(&self) -> &[Vec<Polynomial>] {
        &self.cols
    }

    pub fn into_columns(self) -> Vec<Vec<Polynomial>> {
        self.cols
    }

    pub fn col(&self, j: usize) -> &[Polynomial] {
        &self.cols[j]
    }

    pub fn entry(&self, i: usize, j: usize) -> &Polynomial {
        &self.cols[j][i]
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.iter().all(|e| e.is_zero()))
    }

    pub fn transpose(&self) -> Matrix {
        let cols = (0..self.rows).map(|i| self.cols.iter().map(|c| c[i].clone()).collect()).collect();
        Matrix { rows: self.cols.len(), nvars: self.nvars, cols }
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.ncols(), other.nrows());
        let cols = other
            .cols
            .iter()
            .map(|oc| {
                (0..self.rows)
                    .map(|i| {
                        let mut acc = Polynomial::zero(self.nvars);
                        for (k, e) in oc.iter().enumerate() {
                            if !e.is_zero() && !self.cols[k][i].is_zero() {
                                acc = acc.add(&self.cols[k][i].mul(e));
                            }
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
        Matrix { rows: self.rows, nvars: self.nvars, cols }
    }

    pub fn map_entries(&self, f: impl Fn(&Polynomial) -> Polynomial) -> Matrix {
        Matrix {
            rows: self.rows,
            nvars: self.nvars,
            cols: self.cols.iter().map(|c| c.iter().map(&f).collect()).collect(),
        }
    }

    /// Drops all-zero columns.
    pub fn without_zero_columns(mut self) -> Matrix {
        self.cols.retain(|c| c.iter().any(|e| !e.is_zero()));
        self
    }

    /// Horizontal concatenation.
    pub fn concat(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        let mut cols = self.cols.clone();
        cols.extend(other.cols.iter().cloned());
        Matrix { rows: self.rows, nvars: self.nvars, cols }
    }

    pub fn fmt_with(&self, names: &[String]) -> String {
        let mut out = String::new();
        for i in 0..self.rows {
            let row: Vec<String> = self.cols.iter().map(|c| c[i].fmt_with(names).to_string()).collect();
            out.push_str("[ ");
            out.push_str(&row.join(" , "));
            out.push_str(" ]\n");
        }
        out
    }
}
