//! Dense row-major real matrices and their entrywise norms.

use std::fmt::Write as _;

use crate::error::{Error, Result};

/// Dense `rows × cols` matrix of binary64 values stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct RealMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

/// Entrywise norms: `l1 = Σ|a|`, `frob_sq = Σa²`, `max_abs = max|a|`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntrywiseNorms {
    pub l1: f64,
    pub frob_sq: f64,
    pub max_abs: f64,
}

impl RealMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Dimension(format!(
                "matrix must be at least 1x1, got {rows}x{cols}"
            )));
        }
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "expected {} entries for a {rows}x{cols} matrix, got {}",
                rows * cols,
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let m = rows.len();
        let n = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Self::new(m, n, rows.concat())
    }

    pub fn zeros(rows: usize, cols: usize) -> Result<Self> {
        Self::filled(rows, cols, 0.0)
    }

    /// The all-ones matrix.
    pub fn ones(rows: usize, cols: usize) -> Result<Self> {
        Self::filled(rows, cols, 1.0)
    }

    pub fn filled(rows: usize, cols: usize, value: f64) -> Result<Self> {
        Self::new(rows, cols, vec![value; rows * cols])
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: f64) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            data.extend((0..self.rows).map(|i| self.get(i, j)));
        }
        Self {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&x| f(x)).collect(),
        }
    }

    pub fn scaled(&self, factor: f64) -> Self {
        self.map(|x| x * factor)
    }

    /// `P A Qᵀ`: entry `(i, j)` of the result is `self[row_perm[i]][col_perm[j]]`.
    pub fn permuted(&self, row_perm: &[usize], col_perm: &[usize]) -> Result<Self> {
        if !is_permutation(row_perm, self.rows) || !is_permutation(col_perm, self.cols) {
            return Err(Error::Dimension("invalid permutation".into()));
        }
        let mut data = Vec::with_capacity(self.data.len());
        for &i in row_perm {
            data.extend(col_perm.iter().map(|&j| self.get(i, j)));
        }
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    /// First non-finite entry, if any.
    pub fn check_finite(&self) -> Result<()> {
        match self.data.iter().position(|x| !x.is_finite()) {
            Some(k) => Err(Error::NonFinite {
                row: k / self.cols,
                col: k % self.cols,
            }),
            None => Ok(()),
        }
    }

    /// Exact symmetry check.
    pub fn check_symmetric(&self) -> Result<()> {
        if !self.is_square() {
            return Err(Error::Dimension(format!(
                "expected a square matrix, got {}x{}",
                self.rows, self.cols
            )));
        }
        for i in 0..self.rows {
            for j in (i + 1)..self.cols {
                if self.get(i, j) != self.get(j, i) {
                    return Err(Error::NotSymmetric { row: i, col: j });
                }
            }
        }
        Ok(())
    }

    pub fn is_symmetric(&self) -> bool {
        self.check_symmetric().is_ok()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.data.iter().all(|&x| x >= 0.0)
    }

    pub fn check_nonnegative(&self) -> Result<()> {
        match self.data.iter().position(|&x| !(x >= 0.0)) {
            Some(k) => Err(Error::Domain(format!(
                "entry ({}, {}) = {} is negative",
                k / self.cols,
                k % self.cols,
                self.data[k]
            ))),
            None => Ok(()),
        }
    }

    /// Largest entry (the α of a nonnegative matrix).
    pub fn max_entry(&self) -> f64 {
        self.data.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn trace(&self) -> f64 {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i)).sum()
    }

    pub fn entrywise_norms(&self) -> Result<EntrywiseNorms> {
        self.check_finite()?;
        let mut norms = EntrywiseNorms {
            l1: 0.0,
            frob_sq: 0.0,
            max_abs: 0.0,
        };
        for &x in &self.data {
            norms.l1 += x.abs();
            norms.frob_sq += x * x;
            norms.max_abs = norms.max_abs.max(x.abs());
        }
        Ok(norms)
    }

    /// `AAᵀ` when `rows ≤ cols`, else `AᵀA`: the Gram matrix of the smaller dimension.
    pub fn small_gram(&self) -> Self {
        let (k, len, row_major) = if self.rows <= self.cols {
            (self.rows, self.cols, true)
        } else {
            (self.cols, self.rows, false)
        };
        let at = |v: usize, t: usize| {
            if row_major {
                self.get(v, t)
            } else {
                self.get(t, v)
            }
        };
        let mut data = vec![0.0; k * k];
        for a in 0..k {
            for b in a..k {
                let dot: f64 = (0..len).map(|t| at(a, t) * at(b, t)).sum();
                data[a * k + b] = dot;
                data[b * k + a] = dot;
            }
        }
        Self {
            rows: k,
            cols: k,
            data,
        }
    }

    /// Parse the text format: a header line `m n`, then `m` lines of `n`
    /// whitespace-separated finite decimal reals. Blank lines are ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());
        let (hline, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            message: "empty input".into(),
        })?;
        let dims: Vec<&str> = header.split_whitespace().collect();
        if dims.len() != 2 {
            return Err(Error::Parse {
                line: hline,
                message: "header must be `m n`".into(),
            });
        }
        let parse_dim = |tok: &str| {
            tok.parse::<usize>()
                .ok()
                .filter(|&d| d > 0)
                .ok_or_else(|| Error::Parse {
                    line: hline,
                    message: format!("invalid dimension `{tok}`"),
                })
        };
        let (m, n) = (parse_dim(dims[0])?, parse_dim(dims[1])?);
        let mut data = Vec::with_capacity(m * n);
        let mut seen = 0;
        for (lineno, line) in lines {
            if seen == m {
                return Err(Error::Parse {
                    line: lineno,
                    message: format!("expected {m} rows, found more"),
                });
            }
            let before = data.len();
            for tok in line.split_whitespace() {
                let x: f64 = tok.parse().map_err(|_| Error::Parse {
                    line: lineno,
                    message: format!("invalid number `{tok}`"),
                })?;
                if !x.is_finite() {
                    return Err(Error::Parse {
                        line: lineno,
                        message: format!("non-finite value `{tok}`"),
                    });
                }
                data.push(x);
            }
            if data.len() - before != n {
                return Err(Error::Parse {
                    line: lineno,
                    message: format!("expected {n} values, found {}", data.len() - before),
                });
            }
            seen += 1;
        }
        if seen != m {
            return Err(Error::Parse {
                line: text.lines().count().max(1),
                message: format!("expected {m} rows, found {seen}"),
            });
        }
        Self::new(m, n, data)
    }

    /// Inverse of [`RealMatrix::parse`]; values use the shortest round-trip representation.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.rows, self.cols);
        for i in 0..self.rows {
            for (j, x) in self.row(i).iter().enumerate() {
                if j > 0 {
                    out.push(' ');
                }
                let _ = write!(out, "{x:?}");
            }
            out.push('\n');
        }
        out
    }
}

fn is_permutation(perm: &[usize], n: usize) -> bool {
    if perm.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    perm.iter()
        .all(|&p| p < n && !std::mem::replace(&mut seen[p], true))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_shapes() {
        assert!(matches!(
            RealMatrix::new(0, 3, vec![]),
            Err(Error::Dimension(_))
        ));
        assert!(matches!(
            RealMatrix::new(2, 2, vec![1.0; 3]),
            Err(Error::Dimension(_))
        ));
    }

    #[test]
    fn norms_examples() {
        let ones = RealMatrix::ones(2, 2).unwrap();
        assert_eq!(
            ones.entrywise_norms().unwrap(),
            EntrywiseNorms {
                l1: 4.0,
                frob_sq: 4.0,
                max_abs: 1.0
            }
        );
        let a = RealMatrix::from_rows(&[vec![0.5, -2.0], vec![0.0, 1.0]]).unwrap();
        assert_eq!(
            a.entrywise_norms().unwrap(),
            EntrywiseNorms {
                l1: 3.5,
                frob_sq: 5.25,
                max_abs: 2.0
            }
        );
    }

    #[test]
    fn norms_reject_non_finite() {
        let a = RealMatrix::new(1, 2, vec![1.0, f64::NAN]).unwrap();
        assert_eq!(
            a.entrywise_norms(),
            Err(Error::NonFinite { row: 0, col: 1 })
        );
    }

    #[test]
    fn symmetry_is_exact() {
        let a = RealMatrix::from_rows(&[vec![0.0, 1.0], vec![1.0 + 1e-15, 0.0]]).unwrap();
        assert_eq!(
            a.check_symmetric(),
            Err(Error::NotSymmetric { row: 0, col: 1 })
        );
        assert!(RealMatrix::ones(2, 3).unwrap().check_symmetric().is_err());
    }

    #[test]
    fn gram_uses_smaller_side() {
        let a = RealMatrix::from_rows(&[vec![3.0, 0.0, 4.0]]).unwrap();
        let g = a.small_gram();
        assert_eq!((g.rows(), g.cols()), (1, 1));
        assert_eq!(g.get(0, 0), 25.0);
        let g = a.transpose().small_gram();
        assert_eq!(g.get(0, 0), 25.0);
    }

    #[test]
    fn parse_and_print() {
        let a = RealMatrix::parse("2 3\n1 2 3\n-0.5 0 1e2\n").unwrap();
        assert_eq!(a.row(1), &[-0.5, 0.0, 100.0]);
        assert_eq!(RealMatrix::parse(&a.to_text()).unwrap(), a);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let err = RealMatrix::parse("2 2\n1 2\n3\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err:?}");
        let err = RealMatrix::parse("1 2\n1 inf\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        let err = RealMatrix::parse("1 2\n1 NaN\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        let err = RealMatrix::parse("1 1\n1\n2\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }));
        assert!(RealMatrix::parse("3 1\n1\n").is_err());
        assert!(RealMatrix::parse("0 1\n").is_err());
        assert!(RealMatrix::parse("").is_err());
    }

    #[test]
    fn permutation_validation() {
        let a = RealMatrix::ones(2, 2).unwrap();
        assert!(a.permuted(&[0, 0], &[0, 1]).is_err());
        assert!(a.permuted(&[1, 0], &[0, 1]).is_ok());
    }
}
