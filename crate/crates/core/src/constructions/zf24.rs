//! The free associative algebra on `x_1, x_2, ...` acting on the quotient
//! `V = A / A_0`, where `A_0` is spanned by the admissible monomials
//! `x_{i_1} ⋯ x_{i_m}` with `m > i_m`. The action is faithful and every
//! class is killed by all words of a fixed length.
//!
//! Truncation `n`: generators `x_1..x_n`, monomials of length at most `n + 1`.
//! A non-admissible monomial over `x_1..x_n` has length at most `n`, so the
//! quotient of the subalgebra generated by `x_1..x_n` is represented exactly.

use std::collections::{BTreeMap, HashMap};

use rand::Rng;
use serde_json::json;

use super::{seeded, small_nonzero, ClaimResult, Params};
use crate::coeff::{Coeff, Field};
use crate::error::{Error, Result};
use crate::nil::{deg_delta, word_vanishing_depth, Degree, OperatorSet};
use crate::operator::{is_zero_vector, LinearOperator, Vector};

pub const CLAIMS: &[&str] = &[
    "basis is exactly the non-admissible monomials",
    "A_0 is a left ideal",
    "(ab)·v = a·(b·v)",
    "every generator word of length i_m kills w",
    "deg(w) = i_m - m",
    "every generator word of length n vanishes on V",
    "a·x_{m+1} != 0 for nonzero a with a term of length m",
];

/// Noncommutative polynomial: monomial (variable indices, 1-based, left to right) to coefficient.
pub type NcPoly = BTreeMap<Vec<usize>, Coeff>;

/// `x_{i_1} ⋯ x_{i_m}` is admissible iff `m > i_m`. The empty word is not a monomial here.
pub fn is_admissible(w: &[usize]) -> bool {
    match w.last() {
        Some(&last) => w.len() > last,
        None => false,
    }
}

/// Product in the free algebra.
pub fn nc_mul(a: &NcPoly, b: &NcPoly) -> NcPoly {
    let mut out = NcPoly::new();
    for (u, c) in a {
        for (v, d) in b {
            let w: Vec<usize> = u.iter().chain(v).copied().collect();
            let t = c.mul(d);
            let s = match out.remove(&w) {
                Some(old) => old.add(&t),
                None => t,
            };
            if !s.is_zero() {
                out.insert(w, s);
            }
        }
    }
    out
}

/// All words of length `len` over `1..=max_var`, in lexicographic order.
fn words(max_var: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|w| {
                (1..=max_var).map(move |i| {
                    let mut w = w.clone();
                    w.push(i);
                    w
                })
            })
            .collect();
    }
    out
}

/// The truncated left module `V = A/A_0` over generators `x_1..x_{max_var}`,
/// with basis the non-admissible monomials of length at most `max_len`.
#[derive(Debug, Clone)]
pub struct FreeAlgebraModule {
    field: Field,
    max_var: usize,
    max_len: usize,
    basis: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
}

impl FreeAlgebraModule {
    pub fn new(field: Field, max_var: usize, max_len: usize) -> Result<Self> {
        if max_var == 0 || max_len == 0 {
            return Err(Error::InvalidParameter("module needs at least one variable and length 1".into()));
        }
        let mut basis = Vec::new();
        // Non-admissible monomials have length at most their last index.
        for len in 1..=max_len.min(max_var) {
            basis.extend(words(max_var, len).into_iter().filter(|w| !is_admissible(w)));
        }
        let index = basis.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
        Ok(FreeAlgebraModule {
            field,
            max_var,
            max_len,
            basis,
            index,
        })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn max_var(&self) -> usize {
        self.max_var
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<usize>] {
        &self.basis
    }

    pub fn index_of(&self, w: &[usize]) -> Option<usize> {
        self.index.get(w).copied()
    }

    fn check_monomial(&self, w: &[usize]) -> Result<()> {
        if w.is_empty() {
            return Err(Error::InvalidParameter("the empty word is not a monomial".into()));
        }
        if let Some(&i) = w.iter().find(|&&i| i == 0 || i > self.max_var) {
            return Err(Error::InvalidParameter(format!("variable x_{i} outside x_1..x_{}", self.max_var)));
        }
        Ok(())
    }

    /// Class of a monomial in `V`: zero when admissible.
    pub fn class_of(&self, w: &[usize]) -> Result<Vector> {
        self.check_monomial(w)?;
        let mut v = vec![self.field.zero(); self.dim()];
        if is_admissible(w) {
            return Ok(v);
        }
        let i = self.index_of(w).ok_or(Error::TruncationOverflow {
            len: w.len(),
            bound: self.max_len,
        })?;
        v[i] = self.field.one();
        Ok(v)
    }

    /// Class of `a · v`. Fails instead of truncating when a surviving product
    /// is longer than the module keeps.
    pub fn free_module_action(&self, a: &NcPoly, v: &[Coeff]) -> Result<Vector> {
        if v.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: v.len(),
            });
        }
        let mut out = vec![self.field.zero(); self.dim()];
        for (u, c) in a {
            self.check_monomial(u)?;
            for (k, d) in v.iter().enumerate() {
                if d.is_zero() {
                    continue;
                }
                let w: Vec<usize> = u.iter().chain(&self.basis[k]).copied().collect();
                if is_admissible(&w) {
                    continue;
                }
                let i = self.index_of(&w).ok_or(Error::TruncationOverflow {
                    len: w.len(),
                    bound: self.max_len,
                })?;
                out[i] = out[i].add(&c.mul(d));
            }
        }
        Ok(out)
    }

    /// Matrix of `v ↦ a · v`.
    pub fn action_operator(&self, a: &NcPoly) -> Result<LinearOperator> {
        let cols = (0..self.dim())
            .map(|k| {
                let mut e = vec![self.field.zero(); self.dim()];
                e[k] = self.field.one();
                self.free_module_action(a, &e)
            })
            .collect::<Result<Vec<_>>>()?;
        LinearOperator::from_columns(self.field, &cols)
    }

    pub fn monomial(&self, w: &[usize]) -> NcPoly {
        NcPoly::from([(w.to_vec(), self.field.one())])
    }

    /// Actions of the generators `x_1..x_{max_var}`, in order.
    pub fn generator_operators(&self) -> Result<Vec<LinearOperator>> {
        (1..=self.max_var).map(|i| self.action_operator(&self.monomial(&[i]))).collect()
    }

    pub fn monomial_name(w: &[usize]) -> String {
        w.iter().map(|i| format!("x{i}")).collect::<Vec<_>>().join("*")
    }
}

#[derive(Debug, Clone)]
pub struct Zf24 {
    pub params: Params,
    pub module: FreeAlgebraModule,
    pub generators: Vec<LinearOperator>,
}

const ASSOC_SAMPLES: usize = 40;
const INJECTIVITY_SAMPLES: usize = 50;

impl Zf24 {
    pub fn new(params: Params) -> Result<Self> {
        let module = FreeAlgebraModule::new(params.field()?, params.n, params.n + 1)?;
        let generators = module.generator_operators()?;
        Ok(Zf24 {
            params,
            module,
            generators,
        })
    }

    pub fn operator_set(&self) -> OperatorSet<LinearOperator> {
        OperatorSet::new(self.generators.clone()).expect("same dimension")
    }

    fn random_poly(&self, rng: &mut rand_chacha::ChaCha8Rng, max_len: usize) -> NcPoly {
        let n = self.params.n;
        let mut a = NcPoly::new();
        while a.is_empty() {
            for _ in 0..rng.random_range(1..=3) {
                let len = rng.random_range(1..=max_len);
                let w: Vec<usize> = (0..len).map(|_| rng.random_range(1..=n)).collect();
                a.insert(w, small_nonzero(rng, self.module.field()));
            }
        }
        a
    }

    pub(crate) fn run_claims(&self, bound: usize) -> Result<Vec<ClaimResult>> {
        let n = self.params.n;
        let m = &self.module;
        let mut out = Vec::new();

        // Brute force over every monomial up to the length bound.
        let mut mismatches = Vec::new();
        let mut total = 0;
        for len in 1..=m.max_len() {
            for w in words(n, len) {
                total += 1;
                let by_definition = w.len() > *w.last().expect("nonempty");
                if is_admissible(&w) != by_definition || (m.index_of(&w).is_some() == by_definition) {
                    mismatches.push(FreeAlgebraModule::monomial_name(&w));
                }
            }
        }
        let expected: usize = (1..=n).map(|len| n.pow(len as u32 - 1) * (n + 1 - len)).sum();
        out.push(ClaimResult::new(
            CLAIMS[0],
            mismatches.is_empty() && m.dim() == expected,
            json!({ "monomials_checked": total, "dim": m.dim(), "expected_dim": expected, "mismatches": mismatches }),
        ));

        let mut bad = Vec::new();
        let mut checked = 0;
        for len in 1..m.max_len() {
            for w in words(n, len).into_iter().filter(|w| is_admissible(w)) {
                for i in 1..=n {
                    checked += 1;
                    let mut p = vec![i];
                    p.extend(&w);
                    if !is_admissible(&p) {
                        bad.push(FreeAlgebraModule::monomial_name(&p));
                    }
                }
            }
        }
        out.push(ClaimResult::new(CLAIMS[1], bad.is_empty(), json!({ "products_checked": checked, "violations": bad })));

        let mut rng = seeded(self.params.seed, 24);
        let mut bad = Vec::new();
        for s in 0..ASSOC_SAMPLES {
            let a = self.random_poly(&mut rng, 2);
            let b = self.random_poly(&mut rng, 2);
            let k = rng.random_range(0..m.dim());
            let v = m.class_of(&m.basis()[k].clone())?;
            let left = m.free_module_action(&nc_mul(&a, &b), &v)?;
            let right = m.free_module_action(&a, &m.free_module_action(&b, &v)?)?;
            if left != right {
                bad.push(s);
            }
        }
        out.push(ClaimResult::new(CLAIMS[2], bad.is_empty(), json!({ "samples": ASSOC_SAMPLES, "violations": bad })));

        let mut bad = Vec::new();
        let mut words_checked = 0;
        for w in m.basis() {
            let last = *w.last().expect("nonempty");
            for word in words(n, last) {
                words_checked += 1;
                // Applying x_{word[0]} first prepends it first.
                let mut p: Vec<usize> = word.iter().rev().copied().collect();
                p.extend(w);
                if !is_admissible(&p) {
                    bad.push(FreeAlgebraModule::monomial_name(&p));
                }
            }
        }
        out.push(ClaimResult::new(
            CLAIMS[3],
            bad.is_empty(),
            json!({ "basis_elements": m.dim(), "words_checked": words_checked, "violations": bad }),
        ));

        let set = self.operator_set();
        let mut bad = Vec::new();
        let mut degree_counts: BTreeMap<usize, usize> = BTreeMap::new();
        for (k, w) in m.basis().iter().enumerate() {
            let want = w.last().expect("nonempty") - w.len();
            let v = m.class_of(w)?;
            let cert = deg_delta(&set, &v, bound.max(n + 1))?;
            if cert.certified_degree() != Some(Degree::Finite(want)) {
                bad.push(json!({ "basis_index": k, "degree": cert.degree, "expected": want }));
            } else {
                *degree_counts.entry(want).or_default() += 1;
            }
        }
        out.push(ClaimResult::new(CLAIMS[4], bad.is_empty(), json!({ "degree_counts": degree_counts, "violations": bad })));

        let at_n = word_vanishing_depth(&set, n);
        let below = word_vanishing_depth(&set, n - 1);
        out.push(ClaimResult::new(
            CLAIMS[5],
            at_n.vanishes && !below.vanishes,
            json!({ "length_n": at_n, "length_n_minus_1": below }),
        ));

        let max_len = 3.min(n - 1);
        let mut samples = Vec::new();
        let mut bad = Vec::new();
        for _ in 0..INJECTIVITY_SAMPLES {
            let a = self.random_poly(&mut rng, max_len);
            let first_len = a.keys().next().expect("nonzero").len();
            let v = m.class_of(&[first_len + 1])?;
            let image = m.free_module_action(&a, &v)?;
            let nonzero = !is_zero_vector(&image);
            if !nonzero {
                bad.push(a.keys().map(|w| FreeAlgebraModule::monomial_name(w)).collect::<Vec<_>>());
            }
            samples.push(json!({ "terms": a.len(), "m": first_len }));
        }
        out.push(ClaimResult::new(
            CLAIMS[6],
            bad.is_empty(),
            json!({ "samples": samples.len(), "max_len": max_len, "violations": bad }),
        ));
        Ok(out)
    }
}
