//! gl(m|n), sl(m|n), psl(n|n) and Q(n) on elementary-matrix bases.

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::parity::Parity;
use crate::scalar::{int, one, Scalar};

use super::{induced, FiniteLieSuperalgebra, Kind, MatrixRep};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MatrixKind {
    Gl { m: usize, n: usize },
    Sl { m: usize, n: usize },
    Psl { n: usize },
    Q { n: usize },
}

/// Parity of the matrix unit `E_ab` in gl(m|n).
fn unit_parity(m: usize, a: usize, b: usize) -> Parity {
    if (a < m) == (b < m) {
        Parity::Even
    } else {
        Parity::Odd
    }
}

fn unit(size: usize, a: usize, b: usize) -> Matrix {
    let mut x = Matrix::zeros(size, size);
    x.set(a, b, one());
    x
}

fn unit_id(size: usize, a: usize, b: usize) -> String {
    if size < 10 {
        format!("{}{}", a + 1, b + 1)
    } else {
        format!("{}_{}", a + 1, b + 1)
    }
}

/// Parity of a homogeneous matrix in gl(m|n) (even for zero).
fn matrix_parity(m: usize, x: &Matrix) -> Parity {
    for r in 0..x.rows {
        for c in 0..x.cols {
            if !num_traits::Zero::is_zero(x.get(r, c)) {
                return unit_parity(m, r, c);
            }
        }
    }
    Parity::Even
}

/// `XY - (-1)^{p(X)p(Y)} YX`.
pub(crate) fn supercommutator(m: usize, x: &Matrix, y: &Matrix) -> Matrix {
    let s = matrix_parity(m, x).koszul(matrix_parity(m, y));
    x.mul(y).sub(&y.mul(x).scale(&s))
}

/// `str X = tr A - tr D` for `X = (A B; C D)`.
pub(crate) fn supertrace(m: usize, x: &Matrix) -> Scalar {
    (0..x.rows)
        .map(|i| {
            if i < m {
                x.get(i, i).clone()
            } else {
                -x.get(i, i).clone()
            }
        })
        .sum()
}

/// Diagonal supertraceless elements `E_ii + s E_{i+1,i+1}`.
fn diagonal_sl(m: usize, size: usize) -> Vec<Matrix> {
    (0..size - 1)
        .map(|i| {
            let mut x = unit(size, i, i);
            let s = if (i < m) == (i + 1 < m) {
                int(-1)
            } else {
                int(1)
            };
            x.set(i + 1, i + 1, s);
            x
        })
        .collect()
}

pub fn matrix_superalgebra(kind: MatrixKind) -> Result<FiniteLieSuperalgebra> {
    let (m, size, name) = match kind {
        MatrixKind::Gl { m, n } => (m, m + n, format!("gl({m}|{n})")),
        MatrixKind::Sl { m, n } => (m, m + n, format!("sl({m}|{n})")),
        MatrixKind::Psl { n } => (n, 2 * n, format!("psl({n}|{n})")),
        MatrixKind::Q { n } => (n, 2 * n, format!("Q({n})")),
    };
    match kind {
        MatrixKind::Gl { .. } | MatrixKind::Sl { .. } if size == 0 => {
            return Err(Error::InvalidParameters(format!(
                "{name}: m + n must be positive"
            )))
        }
        MatrixKind::Sl { .. } if size < 2 => {
            return Err(Error::InvalidParameters(format!(
                "{name}: m + n must be at least 2"
            )))
        }
        MatrixKind::Psl { n } if n < 1 => {
            return Err(Error::InvalidParameters(format!(
                "{name}: n must be positive"
            )))
        }
        MatrixKind::Q { n } if n < 2 => {
            return Err(Error::InvalidParameters(format!(
                "{name}: n must be at least 2"
            )))
        }
        _ => {}
    }

    let mut elems: Vec<Matrix> = Vec::new();
    let mut ids: Vec<(String, Parity)> = Vec::new();
    let mut center: Vec<Matrix> = Vec::new();
    match kind {
        MatrixKind::Gl { .. } => {
            for a in 0..size {
                for b in 0..size {
                    elems.push(unit(size, a, b));
                    ids.push((format!("e{}", unit_id(size, a, b)), unit_parity(m, a, b)));
                }
            }
        }
        MatrixKind::Sl { .. } | MatrixKind::Psl { .. } => {
            for (i, h) in diagonal_sl(m, size).into_iter().enumerate() {
                elems.push(h);
                ids.push((format!("h{}", i + 1), Parity::Even));
            }
            for a in 0..size {
                for b in (0..size).filter(|&b| b != a) {
                    elems.push(unit(size, a, b));
                    ids.push((format!("e{}", unit_id(size, a, b)), unit_parity(m, a, b)));
                }
            }
            if matches!(kind, MatrixKind::Psl { .. }) {
                center.push(Matrix::identity(size));
            }
        }
        MatrixKind::Q { n } => {
            for a in 0..n {
                for b in 0..n {
                    let mut x = unit(size, a, b);
                    x.set(a + n, b + n, one());
                    elems.push(x);
                    ids.push((format!("E{}", unit_id(n, a, b)), Parity::Even));
                }
            }
            for a in 0..n {
                for b in (0..n).filter(|&b| b != a) {
                    let mut x = unit(size, a, b + n);
                    x.set(a + n, b, one());
                    elems.push(x);
                    ids.push((format!("O{}", unit_id(n, a, b)), Parity::Odd));
                }
            }
            for i in 0..n - 1 {
                let mut x = Matrix::zeros(size, size);
                x.set(i, i + n, one());
                x.set(i + n, i, one());
                x.set(i + 1, i + 1 + n, int(-1));
                x.set(i + 1 + n, i + 1, int(-1));
                elems.push(x);
                ids.push((format!("OH{}", i + 1), Parity::Odd));
            }
            center.push(Matrix::identity(size));
        }
    }
    let (mut g, kept) = induced(
        &name,
        ids,
        &elems,
        &center,
        |x, y| supercommutator(m, x, y),
        Matrix::flatten,
    )?;
    g.kind = Kind::Matrix(kind);
    g.rep = Some(MatrixRep {
        m,
        n: size - m,
        mats: kept.iter().map(|&i| elems[i].clone()).collect(),
    });
    Ok(g)
}
