//! Linear maps on a finite-dimensional space `k^d` with basis `e_0..e_{d-1}`.

use std::fmt;

use crate::coeff::{Coeff, Field};
use crate::error::{Error, Result};
use crate::span::SparseVec;

/// Coordinates of a vector in the standard basis.
pub type Vector = Vec<Coeff>;

pub fn is_zero_vector(v: &[Coeff]) -> bool {
    v.iter().all(Coeff::is_zero)
}

pub fn basis_vector(field: Field, dim: usize, i: usize) -> Vector {
    let mut v = vec![field.zero(); dim];
    v[i] = field.one();
    v
}

pub fn add_vectors(a: &[Coeff], b: &[Coeff]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x.add(y)).collect()
}

pub fn scale_vector(a: &[Coeff], c: &Coeff) -> Vector {
    a.iter().map(|x| x.mul(c)).collect()
}

/// A square matrix; column `j` holds the coordinates of `F(e_j)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LinearOperator {
    field: Field,
    dim: usize,
    entries: Vec<Coeff>,
}

impl LinearOperator {
    pub fn zero(field: Field, dim: usize) -> Self {
        LinearOperator {
            field,
            dim,
            entries: vec![field.zero(); dim * dim],
        }
    }

    pub fn identity(field: Field, dim: usize) -> Self {
        Self::from_fn(field, dim, |i, j| if i == j { field.one() } else { field.zero() })
    }

    pub fn from_fn(field: Field, dim: usize, f: impl Fn(usize, usize) -> Coeff) -> Self {
        let mut entries = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                entries.push(f(i, j));
            }
        }
        LinearOperator { field, dim, entries }
    }

    /// Matrix given by rows.
    pub fn from_rows(field: Field, rows: Vec<Vec<Coeff>>) -> Result<Self> {
        let dim = rows.len();
        let mut entries = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: row.len(),
                });
            }
            entries.extend(row);
        }
        Ok(LinearOperator { field, dim, entries })
    }

    /// Operator sending `e_j` to `images[j]`.
    pub fn from_columns(field: Field, images: &[Vector]) -> Result<Self> {
        let dim = images.len();
        for col in images {
            if col.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: col.len(),
                });
            }
        }
        Ok(Self::from_fn(field, dim, |i, j| images[j][i].clone()))
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &Coeff {
        &self.entries[i * self.dim + j]
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.dim).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn rows(&self) -> Vec<Vec<Coeff>> {
        self.entries.chunks(self.dim.max(1)).map(<[Coeff]>::to_vec).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Coeff::is_zero)
    }

    fn check_dim(&self, other: &LinearOperator) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: other.dim,
            });
        }
        Ok(())
    }

    pub fn apply(&self, v: &[Coeff]) -> Result<Vector> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: v.len(),
            });
        }
        Ok((0..self.dim)
            .map(|i| {
                let mut acc = self.field.zero();
                for (j, x) in v.iter().enumerate() {
                    let a = self.get(i, j);
                    if !a.is_zero() && !x.is_zero() {
                        acc = acc.add(&a.mul(x));
                    }
                }
                acc
            })
            .collect())
    }

    /// `self ∘ other`: `other` is applied first.
    pub fn compose(&self, other: &LinearOperator) -> Result<LinearOperator> {
        self.check_dim(other)?;
        let d = self.dim;
        let mut out = LinearOperator::zero(self.field, d);
        for i in 0..d {
            for k in 0..d {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..d {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let slot = &mut out.entries[i * d + j];
                        *slot = slot.add(&a.mul(b));
                    }
                }
            }
        }
        Ok(out)
    }

    /// Commutator `FG - GF`.
    pub fn bracket(&self, other: &LinearOperator) -> Result<LinearOperator> {
        let fg = self.compose(other)?;
        let gf = other.compose(self)?;
        fg.sub(&gf)
    }

    pub fn add(&self, other: &LinearOperator) -> Result<LinearOperator> {
        self.check_dim(other)?;
        Ok(LinearOperator {
            field: self.field,
            dim: self.dim,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a.add(b)).collect(),
        })
    }

    pub fn sub(&self, other: &LinearOperator) -> Result<LinearOperator> {
        self.add(&other.scale(&self.field.from_i64(-1)))
    }

    pub fn scale(&self, c: &Coeff) -> LinearOperator {
        LinearOperator {
            field: self.field,
            dim: self.dim,
            entries: self.entries.iter().map(|a| a.mul(c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> LinearOperator {
        let mut acc = LinearOperator::identity(self.field, self.dim);
        for _ in 0..n {
            acc = acc.compose(self).expect("same dimension");
        }
        acc
    }

    /// Least `n >= 1` with `F^n = 0`, or `None` if `F` is not nilpotent.
    /// In dimension `d` it suffices to look at `n <= d`.
    pub fn nilpotency_index(&self) -> Option<usize> {
        let mut p = self.clone();
        for n in 1..=self.dim.max(1) {
            if p.is_zero() {
                return Some(n);
            }
            p = p.compose(self).expect("same dimension");
        }
        None
    }

    pub fn is_nilpotent(&self) -> bool {
        self.nilpotency_index().is_some()
    }

    pub fn to_sparse(&self) -> SparseVec<(usize, usize)> {
        let mut out = SparseVec::new();
        for i in 0..self.dim {
            for j in 0..self.dim {
                let c = self.get(i, j);
                if !c.is_zero() {
                    out.insert((i, j), c.clone());
                }
            }
        }
        out
    }

    pub fn from_sparse(field: Field, dim: usize, v: &SparseVec<(usize, usize)>) -> LinearOperator {
        let mut out = LinearOperator::zero(field, dim);
        for (&(i, j), c) in v {
            out.entries[i * dim + j] = c.clone();
        }
        out
    }
}

impl fmt::Display for LinearOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.rows().iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            write!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(rows: &[&[i64]]) -> LinearOperator {
        let f = Field::Rational;
        LinearOperator::from_rows(f, rows.iter().map(|r| r.iter().map(|&c| f.from_i64(c)).collect()).collect())
            .unwrap()
    }

    #[test]
    fn composition_applies_right_operand_first() {
        let shift = q(&[&[0, 0], &[1, 0]]); // e0 -> e1
        let proj = q(&[&[1, 0], &[0, 0]]); // keeps e0
        // shift ∘ proj sends e0 to e1
        let sp = shift.compose(&proj).unwrap();
        assert_eq!(sp.apply(&basis_vector(Field::Rational, 2, 0)).unwrap(), basis_vector(Field::Rational, 2, 1));
        assert!(proj.compose(&shift).unwrap().is_zero());
        let id = LinearOperator::identity(Field::Rational, 2);
        assert_eq!(shift.compose(&id).unwrap(), shift);
    }

    #[test]
    fn bracket_is_alternating() {
        let f = q(&[&[1, 2], &[3, 4]]);
        assert!(f.bracket(&f).unwrap().is_zero());
    }

    #[test]
    fn nilpotency() {
        assert_eq!(LinearOperator::zero(Field::Rational, 3).nilpotency_index(), Some(1));
        assert_eq!(LinearOperator::identity(Field::Rational, 3).nilpotency_index(), None);
        let j = q(&[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]]);
        assert_eq!(j.nilpotency_index(), Some(3));
    }

    #[test]
    fn dimension_mismatch() {
        let a = LinearOperator::zero(Field::Rational, 2);
        let b = LinearOperator::zero(Field::Rational, 3);
        assert!(matches!(a.compose(&b), Err(Error::DimensionMismatch { .. })));
        assert!(a.apply(&[Field::Rational.one()]).is_err());
    }
}
