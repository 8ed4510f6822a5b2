//! Finite-dimensional algebras given by structure constants, and the
//! left-multiplication representation `a -> (x -> a·x)`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::coeff::{Coeff, Field};
use crate::error::{Error, Result};
use crate::operator::{basis_vector, LinearOperator, Vector};
use crate::span::{axpy, saturate, Closure, SpanBasis, SparseVec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AlgebraKind {
    Associative,
    Lie,
}

impl fmt::Display for AlgebraKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AlgebraKind::Associative => "associative",
            AlgebraKind::Lie => "lie",
        })
    }
}

/// `e_i · e_j = sum_k c_ij^k e_k` on a basis `e_0..e_{d-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureAlgebra {
    kind: AlgebraKind,
    field: Field,
    basis: Vec<String>,
    /// `products[i * d + j]` is `e_i · e_j`.
    products: Vec<SparseVec<usize>>,
}

/// Dimensions of `A ⊇ A·A ⊇ A·(A·A) ⊇ ...`, stopping once two consecutive terms agree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LowerCentralSeries {
    pub dims: Vec<usize>,
    pub nilpotent: bool,
}

impl LowerCentralSeries {
    /// Least `n` such that every right-nested product of `n` elements vanishes.
    pub fn index(&self) -> Option<usize> {
        self.nilpotent.then_some(self.dims.len())
    }
}

impl StructureAlgebra {
    /// Build and validate (associativity, or alternation plus Jacobi).
    pub fn new(
        kind: AlgebraKind,
        field: Field,
        basis: Vec<String>,
        entries: impl IntoIterator<Item = (usize, usize, usize, Coeff)>,
    ) -> Result<StructureAlgebra> {
        let a = Self::new_unchecked(kind, field, basis, entries)?;
        a.validate()?;
        Ok(a)
    }

    /// Build without checking the algebra axioms. Index and field checks still apply.
    pub fn new_unchecked(
        kind: AlgebraKind,
        field: Field,
        basis: Vec<String>,
        entries: impl IntoIterator<Item = (usize, usize, usize, Coeff)>,
    ) -> Result<StructureAlgebra> {
        let d = basis.len();
        let mut products = vec![SparseVec::new(); d * d];
        for (i, j, k, c) in entries {
            if i >= d || j >= d || k >= d {
                return Err(Error::InvalidAlgebra(format!(
                    "table entry ({i}, {j}, {k}) outside basis of size {d}"
                )));
            }
            if c.field() != field {
                return Err(Error::FieldMismatch(c.field().to_string(), field.to_string()));
            }
            axpy(&mut products[i * d + j], &c, &[(k, field.one())].into_iter().collect());
        }
        Ok(StructureAlgebra {
            kind,
            field,
            basis,
            products,
        })
    }

    /// Basis names `e0, e1, ...`.
    pub fn default_names(d: usize) -> Vec<String> {
        (0..d).map(|i| format!("e{i}")).collect()
    }

    pub fn validate(&self) -> Result<()> {
        let d = self.dim();
        let basis: Vec<SparseVec<usize>> = (0..d).map(|i| self.unit(i)).collect();
        match self.kind {
            AlgebraKind::Associative => {
                for i in 0..d {
                    for j in 0..d {
                        for k in 0..d {
                            let left = self.mul_sparse(&self.products[i * d + j], &basis[k]);
                            let right = self.mul_sparse(&basis[i], &self.products[j * d + k]);
                            if left != right {
                                return Err(Error::InvalidAlgebra(format!(
                                    "associativity fails on ({}, {}, {})",
                                    self.basis[i], self.basis[j], self.basis[k]
                                )));
                            }
                        }
                    }
                }
            }
            AlgebraKind::Lie => {
                for i in 0..d {
                    if !self.products[i * d + i].is_empty() {
                        return Err(Error::InvalidAlgebra(format!("{} · {} is not zero", self.basis[i], self.basis[i])));
                    }
                    for j in 0..i {
                        let mut s = self.products[i * d + j].clone();
                        axpy(&mut s, &self.field.one(), &self.products[j * d + i]);
                        if !s.is_empty() {
                            return Err(Error::InvalidAlgebra(format!(
                                "product is not antisymmetric on ({}, {})",
                                self.basis[i], self.basis[j]
                            )));
                        }
                    }
                }
                // With antisymmetry in place the Jacobi sum is alternating,
                // so strictly increasing triples suffice.
                let one = self.field.one();
                for i in 0..d {
                    for j in i + 1..d {
                        for k in j + 1..d {
                            let mut s = self.mul_sparse(&basis[i], &self.products[j * d + k]);
                            axpy(&mut s, &one, &self.mul_sparse(&basis[j], &self.products[k * d + i]));
                            axpy(&mut s, &one, &self.mul_sparse(&basis[k], &self.products[i * d + j]));
                            if !s.is_empty() {
                                return Err(Error::InvalidAlgebra(format!(
                                    "Jacobi identity fails on ({}, {}, {})",
                                    self.basis[i], self.basis[j], self.basis[k]
                                )));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn kind(&self) -> AlgebraKind {
        self.kind
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis
    }

    pub fn basis_product(&self, i: usize, j: usize) -> &SparseVec<usize> {
        &self.products[i * self.dim() + j]
    }

    /// Nonzero structure constants `(i, j, k, c_ij^k)` in index order.
    pub fn entries(&self) -> Vec<(usize, usize, usize, Coeff)> {
        let d = self.dim();
        let mut out = Vec::new();
        for i in 0..d {
            for j in 0..d {
                for (&k, c) in &self.products[i * d + j] {
                    out.push((i, j, k, c.clone()));
                }
            }
        }
        out
    }

    pub fn basis_element(&self, i: usize) -> Vector {
        basis_vector(self.field, self.dim(), i)
    }

    pub fn zero_element(&self) -> Vector {
        vec![self.field.zero(); self.dim()]
    }

    fn unit(&self, i: usize) -> SparseVec<usize> {
        [(i, self.field.one())].into_iter().collect()
    }

    pub(crate) fn mul_sparse(&self, a: &SparseVec<usize>, b: &SparseVec<usize>) -> SparseVec<usize> {
        let d = self.dim();
        let mut out = SparseVec::new();
        for (&i, x) in a {
            for (&j, y) in b {
                axpy(&mut out, &x.mul(y), &self.products[i * d + j]);
            }
        }
        out
    }

    fn check_len(&self, v: &[Coeff]) -> Result<()> {
        if v.len() != self.dim() {
            return Err(Error::LengthMismatch(v.len(), self.dim()));
        }
        Ok(())
    }

    pub fn multiply(&self, a: &[Coeff], b: &[Coeff]) -> Result<Vector> {
        self.check_len(a)?;
        self.check_len(b)?;
        Ok(to_dense(&self.mul_sparse(&to_sparse(a), &to_sparse(b)), self.field, self.dim()))
    }

    /// Right-nested product `a_n · (a_{n-1} · ( ... · a_1))` of `word = [a_n, ..., a_1]`.
    pub fn nested_product(&self, word: &[Vector]) -> Result<Vector> {
        let (last, rest) = word.split_last().ok_or(Error::EmptySequence)?;
        let mut acc = last.clone();
        for a in rest.iter().rev() {
            acc = self.multiply(a, &acc)?;
        }
        Ok(acc)
    }

    /// Matrix of `x -> a · x`.
    pub fn left_mult_operator(&self, a: &[Coeff]) -> Result<LinearOperator> {
        self.check_len(a)?;
        let sa = to_sparse(a);
        let d = self.dim();
        let cols: Vec<Vector> = (0..d)
            .map(|j| to_dense(&self.mul_sparse(&sa, &self.unit(j)), self.field, d))
            .collect();
        LinearOperator::from_columns(self.field, &cols)
    }

    /// Algebra structure on the span of linearly independent `elems`, which must be
    /// closed under `product`. Basis element `i` is `elems[i]`.
    pub fn from_basis_elements<K: Ord + Clone>(
        kind: AlgebraKind,
        field: Field,
        names: Vec<String>,
        elems: &[SparseVec<K>],
        product: impl Fn(&SparseVec<K>, &SparseVec<K>) -> SparseVec<K>,
    ) -> Result<StructureAlgebra> {
        if names.len() != elems.len() {
            return Err(Error::LengthMismatch(names.len(), elems.len()));
        }
        let mut span: SpanBasis<K, ()> = SpanBasis::new(field);
        for e in elems {
            if !span.insert((), e.clone()) {
                return Err(Error::InvalidAlgebra("basis elements are linearly dependent".into()));
            }
        }
        let mut entries = Vec::new();
        for (i, a) in elems.iter().enumerate() {
            for (j, b) in elems.iter().enumerate() {
                let coords = span
                    .coordinates(&product(a, b))
                    .ok_or_else(|| Error::InvalidAlgebra(format!("product of {} and {} leaves the span", names[i], names[j])))?;
                for (k, c) in coords.into_iter().enumerate() {
                    if !c.is_zero() {
                        entries.push((i, j, k, c));
                    }
                }
            }
        }
        StructureAlgebra::new(kind, field, names, entries)
    }

    /// The algebra spanned by `ops` under composition (associative) or commutator (Lie).
    pub fn from_operators(kind: AlgebraKind, ops: &[LinearOperator], names: Vec<String>) -> Result<StructureAlgebra> {
        let first = ops.first().ok_or(Error::EmptySequence)?;
        let (field, dim) = (first.field(), first.dim());
        let elems: Vec<_> = ops.iter().map(LinearOperator::to_sparse).collect();
        StructureAlgebra::from_basis_elements(kind, field, names, &elems, |a, b| {
            let a = LinearOperator::from_sparse(field, dim, a);
            let b = LinearOperator::from_sparse(field, dim, b);
            let p = match kind {
                AlgebraKind::Associative => a.compose(&b),
                AlgebraKind::Lie => a.bracket(&b),
            };
            p.expect("dimensions agree").to_sparse()
        })
    }

    /// The Lie algebra `A_L` with `a * b = a·b - b·a`, validated.
    pub fn antisymmetrized(&self) -> Result<StructureAlgebra> {
        let d = self.dim();
        let mut entries = Vec::new();
        for i in 0..d {
            for j in 0..d {
                let mut c = self.products[i * d + j].clone();
                axpy(&mut c, &self.field.one().neg(), &self.products[j * d + i]);
                entries.extend(c.into_iter().map(|(k, v)| (i, j, k, v)));
            }
        }
        StructureAlgebra::new(AlgebraKind::Lie, self.field, self.basis.clone(), entries)
    }

    /// `A^1 = A`, `A^{k+1} = A · A^k`.
    pub fn lower_central_series(&self) -> LowerCentralSeries {
        let d = self.dim();
        let mut dims = vec![d];
        let mut current: Vec<SparseVec<usize>> = (0..d).map(|i| self.unit(i)).collect();
        while !current.is_empty() {
            let mut next: SpanBasis<usize, ()> = SpanBasis::new(self.field);
            for i in 0..d {
                for v in &current {
                    next.insert((), self.mul_sparse(&self.unit(i), v));
                }
            }
            let nd = next.dim();
            if nd == current.len() {
                return LowerCentralSeries { dims, nilpotent: false };
            }
            dims.push(nd);
            current = next.into_elements().into_iter().map(|(_, v)| v).collect();
        }
        LowerCentralSeries { dims, nilpotent: true }
    }

    /// Basis of the subalgebra generated by `gens`.
    pub fn generated_subalgebra(&self, gens: &[Vector]) -> Result<Vec<Vector>> {
        for g in gens {
            self.check_len(g)?;
        }
        let sparse: Vec<_> = gens.iter().map(|g| to_sparse(g)).collect();
        let c = saturate(
            self.field,
            &sparse,
            |a, b| self.mul_sparse(a, b),
            self.kind == AlgebraKind::Lie,
            self.dim(),
        );
        Ok(c.basis().iter().map(|v| to_dense(v, self.field, self.dim())).collect())
    }
}

/// Basis of the Lie algebra of operators generated by `gens` under commutators.
pub fn lie_span_closure(gens: &[LinearOperator], dim_bound: usize) -> Result<Closure<LinearOperator>> {
    let Some(first) = gens.first() else {
        return Ok(Closure::Closed(Vec::new()));
    };
    let (field, dim) = (first.field(), first.dim());
    for g in gens {
        if g.dim() != dim {
            return Err(Error::DimensionMismatch { expected: dim, got: g.dim() });
        }
        if g.field() != field {
            return Err(Error::FieldMismatch(g.field().to_string(), field.to_string()));
        }
    }
    let sparse: Vec<_> = gens.iter().map(LinearOperator::to_sparse).collect();
    let closure = saturate(
        field,
        &sparse,
        |a, b| {
            let a = LinearOperator::from_sparse(field, dim, a);
            let b = LinearOperator::from_sparse(field, dim, b);
            a.bracket(&b).expect("dimensions agree").to_sparse()
        },
        true,
        dim_bound,
    );
    let back = |v: &Vec<SparseVec<(usize, usize)>>| v.iter().map(|s| LinearOperator::from_sparse(field, dim, s)).collect();
    Ok(match &closure {
        Closure::Closed(b) => Closure::Closed(back(b)),
        Closure::BoundExceeded(b) => Closure::BoundExceeded(back(b)),
    })
}

pub(crate) fn to_sparse(v: &[Coeff]) -> SparseVec<usize> {
    v.iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i, c.clone()))
        .collect()
}

pub(crate) fn to_dense(v: &SparseVec<usize>, field: Field, dim: usize) -> Vector {
    let mut out = vec![field.zero(); dim];
    for (&i, c) in v {
        out[i] = c.clone();
    }
    out
}

/// Strictly upper triangular `n x n` matrices with basis `e_{ij}` (`1 <= i < j <= n`).
pub fn strictly_upper_triangular(field: Field, n: usize) -> StructureAlgebra {
    let mut index = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            index.push((i, j));
        }
    }
    let pos = |p: (usize, usize)| index.iter().position(|&q| q == p).expect("valid unit");
    let mut entries = Vec::new();
    for (a, &(i, j)) in index.iter().enumerate() {
        for (b, &(k, l)) in index.iter().enumerate() {
            if j == k {
                entries.push((a, b, pos((i, l)), field.one()));
            }
        }
    }
    let names = index.iter().map(|(i, j)| format!("e{i}{j}")).collect();
    StructureAlgebra::new(AlgebraKind::Associative, field, names, entries).expect("matrix units multiply associatively")
}
