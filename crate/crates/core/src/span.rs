//! Incremental row reduction over sparse vectors.

use std::collections::BTreeMap;

use crate::coeff::{Coeff, Field};

/// A sparse vector: coordinate key to nonzero coefficient.
pub type SparseVec<K> = BTreeMap<K, Coeff>;

pub(crate) fn axpy<K: Ord + Clone>(y: &mut SparseVec<K>, a: &Coeff, x: &SparseVec<K>) {
    for (k, c) in x {
        let t = a.mul(c);
        match y.get_mut(k) {
            Some(v) => {
                let s = v.add(&t);
                if s.is_zero() {
                    y.remove(k);
                } else {
                    *v = s;
                }
            }
            None => {
                if !t.is_zero() {
                    y.insert(k.clone(), t);
                }
            }
        }
    }
}

struct Row<K> {
    pivot: K,
    vec: SparseVec<K>,
    /// This row as a combination of the accepted originals.
    combo: Vec<Coeff>,
}

/// Basis of a growing subspace. Accepted vectors are kept verbatim together
/// with a caller label (for instance the word that produced them), so the
/// basis consists of genuine elements rather than reduced combinations.
pub struct SpanBasis<K, L> {
    field: Field,
    rows: Vec<Row<K>>,
    originals: Vec<(L, SparseVec<K>)>,
}

impl<K: Ord + Clone, L> SpanBasis<K, L> {
    pub fn new(field: Field) -> Self {
        SpanBasis {
            field,
            rows: Vec::new(),
            originals: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.originals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.originals.is_empty()
    }

    pub fn elements(&self) -> &[(L, SparseVec<K>)] {
        &self.originals
    }

    pub fn into_elements(self) -> Vec<(L, SparseVec<K>)> {
        self.originals
    }

    /// Remainder of `v` modulo the span, and the coefficients (over accepted
    /// originals) of the part that was removed.
    fn reduce_with_combo(&self, v: &SparseVec<K>) -> (SparseVec<K>, Vec<Coeff>) {
        let mut r = v.clone();
        let mut combo = vec![self.field.zero(); self.originals.len()];
        for row in &self.rows {
            if let Some(c) = r.get(&row.pivot).cloned() {
                let neg = c.neg();
                axpy(&mut r, &neg, &row.vec);
                for (slot, rc) in combo.iter_mut().zip(&row.combo) {
                    *slot = slot.add(&c.mul(rc));
                }
            }
        }
        (r, combo)
    }

    pub fn reduce(&self, v: &SparseVec<K>) -> SparseVec<K> {
        self.reduce_with_combo(v).0
    }

    pub fn contains(&self, v: &SparseVec<K>) -> bool {
        self.reduce(v).is_empty()
    }

    /// Coordinates of `v` over the accepted originals, if `v` lies in the span.
    pub fn coordinates(&self, v: &SparseVec<K>) -> Option<Vec<Coeff>> {
        let (r, combo) = self.reduce_with_combo(v);
        r.is_empty().then_some(combo)
    }

    /// Accept `v` if it is independent of the current basis.
    pub fn insert(&mut self, label: L, v: SparseVec<K>) -> bool {
        let (mut r, combo) = self.reduce_with_combo(&v);
        let Some((pivot, pc)) = r.iter().next().map(|(k, c)| (k.clone(), c.clone())) else {
            return false;
        };
        let inv = pc.inv().expect("pivot is nonzero");
        for c in r.values_mut() {
            *c = c.mul(&inv);
        }
        // row = (v - sum combo_i * orig_i) * inv
        let n = self.originals.len();
        let mut row_combo: Vec<Coeff> = combo.iter().map(|c| c.neg().mul(&inv)).collect();
        for row in &mut self.rows {
            row.combo.push(self.field.zero());
        }
        row_combo.push(inv);
        debug_assert_eq!(row_combo.len(), n + 1);
        self.rows.push(Row {
            pivot,
            vec: std::mem::take(&mut r),
            combo: row_combo,
        });
        self.originals.push((label, v));
        true
    }
}

/// Outcome of saturating a generating set under a bilinear product.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Closure<T> {
    Closed(Vec<T>),
    /// The spanned dimension went past the bound; the basis found so far.
    BoundExceeded(Vec<T>),
}

impl<T> Closure<T> {
    pub fn basis(&self) -> &[T] {
        match self {
            Closure::Closed(b) | Closure::BoundExceeded(b) => b,
        }
    }

    pub fn is_closed(&self) -> bool {
        matches!(self, Closure::Closed(_))
    }
}

/// Basis of the subalgebra generated by `gens` under `product`, found by
/// multiplying every pair of basis elements until nothing new appears.
/// With `antisymmetric` only one order of each pair is formed.
pub fn saturate<K: Ord + Clone>(
    field: Field,
    gens: &[SparseVec<K>],
    product: impl Fn(&SparseVec<K>, &SparseVec<K>) -> SparseVec<K>,
    antisymmetric: bool,
    dim_bound: usize,
) -> Closure<SparseVec<K>> {
    let mut basis: SpanBasis<K, ()> = SpanBasis::new(field);
    for g in gens {
        basis.insert((), g.clone());
        if basis.dim() > dim_bound {
            return Closure::BoundExceeded(basis.into_elements().into_iter().map(|(_, v)| v).collect());
        }
    }
    let mut i = 0;
    while i < basis.dim() {
        for j in 0..=i {
            let a = basis.elements()[i].1.clone();
            let b = basis.elements()[j].1.clone();
            let mut candidates = vec![product(&a, &b)];
            if !antisymmetric && i != j {
                candidates.push(product(&b, &a));
            }
            for c in candidates {
                basis.insert((), c);
                if basis.dim() > dim_bound {
                    return Closure::BoundExceeded(basis.into_elements().into_iter().map(|(_, v)| v).collect());
                }
            }
        }
        i += 1;
    }
    Closure::Closed(basis.into_elements().into_iter().map(|(_, v)| v).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(field: Field, entries: &[(usize, i64)]) -> SparseVec<usize> {
        entries
            .iter()
            .filter(|(_, c)| *c != 0)
            .map(|&(k, c)| (k, field.from_i64(c)))
            .collect()
    }

    #[test]
    fn detects_dependence_and_coordinates() {
        let q = Field::Rational;
        let mut b: SpanBasis<usize, &str> = SpanBasis::new(q);
        assert!(b.insert("a", v(q, &[(0, 1), (1, 2)])));
        assert!(b.insert("b", v(q, &[(1, 1), (2, 1)])));
        assert!(!b.insert("c", v(q, &[(0, 2), (1, 5), (2, 1)])));
        assert_eq!(b.dim(), 2);
        let coords = b.coordinates(&v(q, &[(0, 2), (1, 5), (2, 1)])).unwrap();
        assert_eq!(coords, vec![q.from_i64(2), q.from_i64(1)]);
        assert!(b.coordinates(&v(q, &[(2, 1)])).is_none());
    }

    #[test]
    fn saturation_of_matrix_units() {
        // e_01 and e_12 in 3x3 matrices generate e_01, e_12, e_02 under composition.
        let q = Field::Rational;
        let unit = |i: usize, j: usize| -> SparseVec<(usize, usize)> { [((i, j), q.one())].into_iter().collect() };
        let mul = |a: &SparseVec<(usize, usize)>, b: &SparseVec<(usize, usize)>| {
            let mut out = SparseVec::new();
            for ((i, j), x) in a {
                for ((k, l), y) in b {
                    if j == k {
                        axpy(&mut out, &x.mul(y), &[((*i, *l), q.one())].into_iter().collect());
                    }
                }
            }
            out
        };
        let c = saturate(q, &[unit(0, 1), unit(1, 2)], mul, false, 10);
        assert!(c.is_closed());
        assert_eq!(c.basis().len(), 3);
        let c = saturate(q, &[unit(0, 1), unit(1, 2)], mul, false, 2);
        assert_eq!(c, Closure::BoundExceeded(vec![unit(0, 1), unit(1, 2), unit(0, 2)]));
    }

    #[test]
    fn zero_vector_is_never_accepted() {
        let mut b: SpanBasis<usize, ()> = SpanBasis::new(Field::Rational);
        assert!(!b.insert((), SparseVec::new()));
        assert!(b.is_empty());
    }
}
