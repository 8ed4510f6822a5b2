//! Derivations of a polynomial ring, represented by their values on the
//! variables and extended to all of `k[x_0, ..., x_{n-1}]` by the Leibniz rule.

use std::collections::BTreeMap;
use std::fmt;

use crate::coeff::Coeff;
use crate::error::{Error, Result};
use crate::operator::LinearOperator;
use crate::poly::{Monomial, Polynomial, Ring};
use crate::span::SparseVec;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Derivation {
    ring: Ring,
    /// `D(x_i)` for the variables where it is nonzero.
    images: BTreeMap<usize, Polynomial>,
}

impl Derivation {
    pub fn zero(ring: &Ring) -> Derivation {
        Derivation {
            ring: ring.clone(),
            images: BTreeMap::new(),
        }
    }

    pub fn new(ring: &Ring, images: impl IntoIterator<Item = (usize, Polynomial)>) -> Result<Derivation> {
        let mut d = Derivation::zero(ring);
        for (i, p) in images {
            if i >= ring.num_vars() {
                return Err(Error::InvalidParameter(format!("variable index {i} out of range")));
            }
            if p.ring() != ring {
                return Err(Error::RingMismatch);
            }
            if !p.is_zero() {
                d.images.insert(i, p);
            }
        }
        Ok(d)
    }

    /// Build from `(variable name, image expression)` pairs.
    pub fn from_exprs<'a>(ring: &Ring, images: impl IntoIterator<Item = (&'a str, &'a str)>) -> Result<Derivation> {
        let mut pairs = Vec::new();
        for (name, expr) in images {
            pairs.push((ring.var_index(name)?, ring.parse(expr)?));
        }
        Derivation::new(ring, pairs)
    }

    /// `f * d/dx_var`.
    pub fn scaled_partial(ring: &Ring, f: Polynomial, var: usize) -> Result<Derivation> {
        Derivation::new(ring, [(var, f)])
    }

    /// `d/dx_var`.
    pub fn partial(ring: &Ring, var: usize) -> Derivation {
        Derivation::new(ring, [(var, ring.from_i64(1))]).expect("index checked by caller")
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn image(&self, var: usize) -> Polynomial {
        self.images.get(&var).cloned().unwrap_or_else(|| self.ring.zero())
    }

    pub fn images(&self) -> impl Iterator<Item = (usize, &Polynomial)> {
        self.images.iter().map(|(&i, p)| (i, p))
    }

    pub fn is_zero(&self) -> bool {
        self.images.is_empty()
    }

    /// Largest total degree among the variable images.
    pub fn max_image_degree(&self) -> u32 {
        self.images.values().filter_map(Polynomial::degree).max().unwrap_or(0)
    }

    /// `D(p) = sum_i (dp/dx_i) * D(x_i)`.
    pub fn apply(&self, p: &Polynomial) -> Result<Polynomial> {
        if p.ring() != &self.ring {
            return Err(Error::RingMismatch);
        }
        let mut acc = self.ring.zero();
        for var in p.variables() {
            if let Some(img) = self.images.get(&var) {
                acc = &acc + &(&p.partial_derivative(var) * img);
            }
        }
        Ok(acc)
    }

    /// `[D, E] = D∘E - E∘D`, computed on the variables.
    pub fn bracket(&self, other: &Derivation) -> Result<Derivation> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        let mut vars: Vec<usize> = self.images.keys().chain(other.images.keys()).copied().collect();
        vars.sort_unstable();
        vars.dedup();
        let mut out = Vec::with_capacity(vars.len());
        for v in vars {
            let de = self.apply(&other.image(v))?;
            let ed = other.apply(&self.image(v))?;
            out.push((v, &de - &ed));
        }
        Derivation::new(&self.ring, out)
    }

    pub fn add(&self, other: &Derivation) -> Result<Derivation> {
        let f = self.ring.field();
        linear_combination(&[f.one(), f.one()], &[self.clone(), other.clone()])
    }

    pub fn scale(&self, c: &Coeff) -> Derivation {
        Derivation {
            ring: self.ring.clone(),
            images: self
                .images
                .iter()
                .map(|(&i, p)| (i, p.scale(c)))
                .filter(|(_, p)| !p.is_zero())
                .collect(),
        }
    }

    /// Coordinates `(variable, monomial) -> coefficient`; used for span computations.
    pub fn to_sparse(&self) -> SparseVec<(usize, Monomial)> {
        let mut out = SparseVec::new();
        for (&i, p) in &self.images {
            for (m, c) in p.terms() {
                out.insert((i, m.clone()), c.clone());
            }
        }
        out
    }

    pub fn from_sparse(ring: &Ring, v: &SparseVec<(usize, Monomial)>) -> Derivation {
        let mut grouped: BTreeMap<usize, Vec<(Monomial, Coeff)>> = BTreeMap::new();
        for ((i, m), c) in v {
            grouped.entry(*i).or_default().push((m.clone(), c.clone()));
        }
        Derivation::new(
            ring,
            grouped.into_iter().map(|(i, terms)| (i, Polynomial::from_terms(ring, terms))),
        )
        .expect("indices come from a derivation of this ring")
    }

    /// Images keyed by variable name, as printed expressions.
    pub fn to_expr_map(&self) -> BTreeMap<String, String> {
        self.images
            .iter()
            .map(|(&i, p)| (self.ring.var_name(i).to_string(), p.to_string()))
            .collect()
    }
}

impl std::hash::Hash for Derivation {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.images.hash(state);
    }
}

impl fmt::Display for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.images.is_empty() {
            return write!(f, "0");
        }
        for (k, (&i, p)) in self.images.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            if p.num_terms() > 1 {
                write!(f, "({p})")?;
            } else {
                write!(f, "{p}")?;
            }
            write!(f, "*d/d{}", self.ring.var_name(i))?;
        }
        Ok(())
    }
}

/// Pointwise combination `sum_k coeffs[k] * ds[k]`.
pub fn linear_combination(coeffs: &[Coeff], ds: &[Derivation]) -> Result<Derivation> {
    if coeffs.len() != ds.len() {
        return Err(Error::LengthMismatch(coeffs.len(), ds.len()));
    }
    let Some(first) = ds.first() else {
        return Err(Error::EmptySequence);
    };
    let ring = first.ring.clone();
    let mut images: BTreeMap<usize, Polynomial> = BTreeMap::new();
    for (c, d) in coeffs.iter().zip(ds) {
        if d.ring != ring {
            return Err(Error::RingMismatch);
        }
        for (&i, p) in &d.images {
            let term = p.scale(c);
            let slot = images.entry(i).or_insert_with(|| ring.zero());
            *slot = &*slot + &term;
        }
    }
    Derivation::new(&ring, images)
}

/// The successive values of a word of derivations applied to an element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordApplication {
    pub start: Polynomial,
    /// `trace[j]` is the value after the first `j + 1` letters.
    pub trace: Vec<Polynomial>,
}

impl WordApplication {
    pub fn value(&self) -> &Polynomial {
        self.trace.last().unwrap_or(&self.start)
    }
}

/// Apply `word[0]` first, then `word[1]`, and so on, i.e. compute
/// `(D_n ∘ ... ∘ D_0)(p)` for `word = (D_0, ..., D_n)`.
pub fn apply_word(word: &[&Derivation], p: &Polynomial) -> Result<WordApplication> {
    if word.is_empty() {
        return Err(Error::EmptySequence);
    }
    let mut trace = Vec::with_capacity(word.len());
    let mut cur = p.clone();
    for d in word {
        cur = if cur.is_zero() { cur } else { d.apply(&cur)? };
        trace.push(cur.clone());
    }
    Ok(WordApplication {
        start: p.clone(),
        trace,
    })
}

/// Right-nested bracket `[ds[0], [ds[1], ... [ds[n-1], ds[n]] ...]]`.
pub fn iterated_bracket(ds: &[Derivation]) -> Result<Derivation> {
    let (last, rest) = ds.split_last().ok_or(Error::EmptySequence)?;
    let mut acc = last.clone();
    for d in rest.iter().rev() {
        acc = d.bracket(&acc)?;
    }
    Ok(acc)
}

/// The unique derivation agreeing with `f` on `Span(x_{vars[0]}, ...)`:
/// basis vector `e_j` of `f`'s domain is identified with `x_{vars[j]}`.
pub fn extend_linear_to_derivation(f: &LinearOperator, vars: &[usize], ring: &Ring) -> Result<Derivation> {
    if f.dim() != vars.len() {
        return Err(Error::DimensionMismatch {
            expected: vars.len(),
            got: f.dim(),
        });
    }
    if f.field() != ring.field() {
        return Err(Error::FieldMismatch(f.field().to_string(), ring.field().to_string()));
    }
    let mut images = Vec::with_capacity(vars.len());
    for (j, &vj) in vars.iter().enumerate() {
        let terms = vars
            .iter()
            .enumerate()
            .map(|(i, &vi)| (Monomial::var(vi), f.get(i, j).clone()));
        images.push((vj, Polynomial::from_terms(ring, terms)));
    }
    Derivation::new(ring, images)
}

/// Matrix of `d` restricted to `Span(x_{vars[0]}, ...)`, the inverse of
/// [`extend_linear_to_derivation`]. Fails when the span is not invariant.
pub fn linear_matrix(d: &Derivation, vars: &[usize]) -> Result<LinearOperator> {
    let field = d.ring.field();
    let pos: BTreeMap<usize, usize> = vars.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut cols = Vec::with_capacity(vars.len());
    for &vj in vars {
        let mut col = vec![field.zero(); vars.len()];
        for (m, c) in d.image(vj).terms() {
            let slot = match m.pairs() {
                [(v, 1)] => pos.get(v),
                _ => None,
            };
            let Some(&i) = slot else {
                return Err(Error::InvalidParameter(format!(
                    "image of {} leaves the span of the chosen variables",
                    d.ring.var_name(vj)
                )));
            };
            col[i] = c.clone();
        }
        cols.push(col);
    }
    LinearOperator::from_columns(field, &cols)
}
