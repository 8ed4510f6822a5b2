//! The free-algebra action transported to derivations: each linear map `F` of
//! `V = A/A_0` becomes the derivation `ψ(F)` of `B = k[v_w : w a basis monomial]`
//! that agrees with `F` on the variables. The Lie algebra generated by the
//! `ψ(x_i)` is uniformly locally nilpotent on `B`, while it is free.
//!
//! Truncation `n`: as for the module, generators `x_1..x_n`. Freeness can only
//! be tested up to a bracket length; the Lyndon brackets of length at most
//! `min(3, n - 1)` are checked for linear independence, a range where the
//! action is faithful.

use serde_json::json;

use super::zf24::FreeAlgebraModule;
use super::{ClaimResult, Params};
use crate::derivation::{extend_linear_to_derivation, linear_matrix, Derivation};
use crate::error::Result;
use crate::nil::{check_deg_laws, deg_delta, set_locally_nilpotent, word_vanishing_depth, OperatorSet};
use crate::operator::LinearOperator;
use crate::poly::{Polynomial, Ring};
use crate::span::SpanBasis;

pub const CLAIMS: &[&str] = &[
    "ψ(F) restricts to F on V",
    "ψ([F,G]) = [ψ(F), ψ(G)]",
    "deg_{ψ(Δ)}(v_w) = deg_Δ(w)",
    "degree laws hold on products of variables",
    "every word of length n in ψ(Δ) kills every variable",
    "Lyndon brackets of bounded length are linearly independent",
];

#[derive(Debug, Clone)]
pub struct SecondPart {
    pub params: Params,
    pub module: FreeAlgebraModule,
    pub ring: Ring,
    pub operators: Vec<LinearOperator>,
    /// `derivations[i] = ψ(x_{i+1})`.
    pub derivations: Vec<Derivation>,
}

/// Lyndon words over `1..=letters` of length at most `max_len`, by Duval's algorithm.
pub fn lyndon_words(letters: usize, max_len: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if letters == 0 || max_len == 0 {
        return out;
    }
    let mut w = vec![1usize];
    loop {
        out.push(w.clone());
        let m = w.len();
        while w.len() < max_len {
            w.push(w[w.len() - m]);
        }
        while w.last() == Some(&letters) {
            w.pop();
        }
        let Some(last) = w.last_mut() else {
            break;
        };
        *last += 1;
    }
    out
}

/// Standard factorisation `w = u v` with `v` the longest proper Lyndon suffix.
fn standard_split(w: &[usize]) -> (&[usize], &[usize]) {
    for k in 1..w.len() {
        let v = &w[k..];
        if is_lyndon(v) {
            return (&w[..k], v);
        }
    }
    unreachable!("a Lyndon word of length >= 2 has a proper Lyndon suffix")
}

fn is_lyndon(w: &[usize]) -> bool {
    !w.is_empty() && (1..w.len()).all(|k| w[k..].iter().chain(&w[..k]).cmp(w.iter()) == std::cmp::Ordering::Greater)
}

impl SecondPart {
    pub fn new(params: Params) -> Result<Self> {
        let module = FreeAlgebraModule::new(params.field()?, params.n, params.n + 1)?;
        let names = module
            .basis()
            .iter()
            .map(|w| format!("v{}", w.iter().map(ToString::to_string).collect::<Vec<_>>().join("_")));
        let ring = Ring::new(module.field(), names)?;
        let operators = module.generator_operators()?;
        let vars: Vec<usize> = (0..module.dim()).collect();
        let derivations = operators
            .iter()
            .map(|f| extend_linear_to_derivation(f, &vars, &ring))
            .collect::<Result<Vec<_>>>()?;
        Ok(SecondPart {
            params,
            module,
            ring,
            operators,
            derivations,
        })
    }

    pub fn psi(&self, f: &LinearOperator) -> Result<Derivation> {
        let vars: Vec<usize> = (0..self.module.dim()).collect();
        extend_linear_to_derivation(f, &vars, &self.ring)
    }

    /// Bracket of the generators along the standard bracketing of a Lyndon word.
    fn lyndon_bracket(&self, w: &[usize]) -> Result<Derivation> {
        if w.len() == 1 {
            return Ok(self.derivations[w[0] - 1].clone());
        }
        let (u, v) = standard_split(w);
        self.lyndon_bracket(u)?.bracket(&self.lyndon_bracket(v)?)
    }

    pub(crate) fn run_claims(&self, bound: usize) -> Result<Vec<ClaimResult>> {
        let n = self.params.n;
        let dim = self.module.dim();
        let vars: Vec<usize> = (0..dim).collect();
        let mut out = Vec::new();

        let mut bad = Vec::new();
        for (i, (f, d)) in self.operators.iter().zip(&self.derivations).enumerate() {
            // Direct description: D_i(v_w) = v_{x_i w}, or 0 when x_i w is admissible.
            let direct = Derivation::new(
                &self.ring,
                self.module.basis().iter().enumerate().filter_map(|(k, w)| {
                    let mut p = vec![i + 1];
                    p.extend(w);
                    self.module.index_of(&p).map(|j| (k, self.ring.var(j)))
                }),
            )?;
            if linear_matrix(d, &vars)? != *f || direct != *d {
                bad.push(i + 1);
            }
        }
        out.push(ClaimResult::new(CLAIMS[0], bad.is_empty(), json!({ "generators": n, "violations": bad })));

        let mut bad = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let lhs = self.psi(&self.operators[i].bracket(&self.operators[j])?)?;
                let rhs = self.derivations[i].bracket(&self.derivations[j])?;
                if lhs != rhs {
                    bad.push((i + 1, j + 1));
                }
            }
        }
        out.push(ClaimResult::new(CLAIMS[1], bad.is_empty(), json!({ "pairs": n * n, "violations": bad })));

        let depth = bound.max(n + 1);
        let dset = OperatorSet::new(self.derivations.clone())?;
        let lset = OperatorSet::new(self.operators.clone())?;
        let variables: Vec<Polynomial> = (0..dim).map(|k| self.ring.var(k)).collect();
        let cert = set_locally_nilpotent(&dset, &variables, depth)?;
        let mut bad = Vec::new();
        for (k, c) in cert.per_generator.iter().enumerate() {
            let lin = deg_delta(&lset, &self.module.class_of(&self.module.basis()[k])?, depth)?;
            if !c.is_certified() || c.certified_degree() != lin.certified_degree() {
                bad.push(json!({ "variable": self.ring.var_name(k), "derivation": c.degree, "linear": lin.degree }));
            }
        }
        out.push(ClaimResult::new(
            CLAIMS[2],
            cert.certificate.is_certified() && bad.is_empty(),
            json!({ "variables": dim, "verdict": cert.certificate.verdict, "violations": bad }),
        ));

        // A few variables of each degree, their pairwise products and sums.
        let mut samples: Vec<Polynomial> = Vec::new();
        for k in (0..dim).step_by((dim / 6).max(1)) {
            samples.push(self.ring.var(k));
        }
        let base = samples.clone();
        for (a, b) in base.iter().zip(base.iter().skip(1)) {
            samples.push(a * b);
        }
        let field = self.ring.field();
        let scalars = [field.one(), field.from_i64(-2)];
        let laws = check_deg_laws(&dset, &samples, &scalars, depth * 2)?;
        out.push(ClaimResult::new(CLAIMS[3], laws.holds(), json!(laws)));

        let at_n = word_vanishing_depth(&dset, n);
        let below = word_vanishing_depth(&dset, n - 1);
        out.push(ClaimResult::new(
            CLAIMS[4],
            at_n.vanishes && !below.vanishes,
            json!({ "length_n": at_n.vanishes, "length_n_minus_1_witness": below.witness }),
        ));

        let max_len = 3.min(n - 1).max(1);
        let lyndon = lyndon_words(n, max_len);
        let mut span: SpanBasis<_, Vec<usize>> = SpanBasis::new(field);
        let mut dependent = Vec::new();
        for w in &lyndon {
            if !span.insert(w.clone(), self.lyndon_bracket(w)?.to_sparse()) {
                dependent.push(w.clone());
            }
        }
        out.push(ClaimResult::new(
            CLAIMS[5],
            dependent.is_empty(),
            json!({ "max_length": max_len, "lyndon_brackets": lyndon.len(), "dependent": dependent }),
        ));
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{build, run_claims, ExampleId, ParamRequest};

    #[test]
    fn lyndon_counts() {
        // Necklace counts: 4 + 6 + 20 over four letters.
        assert_eq!(lyndon_words(4, 3).len(), 30);
        assert_eq!(lyndon_words(2, 4), vec![
            vec![1],
            vec![1, 1, 1, 2],
            vec![1, 1, 2],
            vec![1, 1, 2, 2],
            vec![1, 2],
            vec![1, 2, 2],
            vec![1, 2, 2, 2],
            vec![2],
        ]);
        assert!(lyndon_words(3, 3).iter().all(|w| is_lyndon(w)));
        assert_eq!(standard_split(&[1, 1, 2]), (&[1][..], &[1, 2][..]));
    }

    #[test]
    fn claims_pass() {
        for n in [2, 4] {
            let inst = build(ExampleId::Ex2ndPart, ParamRequest { n: Some(n), characteristic: 0, seed: 2 }).unwrap();
            let report = run_claims(&inst, 16).unwrap();
            assert!(report.all_pass(), "n={n}: {:?}", report.failures().collect::<Vec<_>>());
        }
    }
}
