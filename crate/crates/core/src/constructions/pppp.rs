//! Maps `T_{i,j}` (`i >= j`) with `T_{i,j}(e_k) = 0` for `k <= i` and `e_j`
//! for `k > i`. Their span `A` is an associative algebra satisfying (SN)
//! whose commutator algebra does not: the chain `[S_k, ..., S_0]` with
//! `S_i = T_{i,i}` never vanishes.
//!
//! Truncation `n`: `i <= n`, `V = Span(e_0, ..., e_{n+1})`, so `A` has
//! dimension `(n+1)(n+2)/2`. The products of the `T_{i,j}` are exact on this
//! truncation. Every finite truncation is nilpotent, so the failure of (SN)
//! for `A_L` shows up as bracket chains reaching the truncation boundary.

use serde_json::json;

use super::{ClaimResult, Params};
use crate::algebra::{AlgebraKind, StructureAlgebra};
use crate::classify::{check_a_vs_al, classify, Condition};
use crate::coeff::{Coeff, Field};
use crate::error::Result;
use crate::nil::{deg_delta, unil_lie_membership, Degree, OperatorSet, Verdict};
use crate::operator::{basis_vector, LinearOperator, Vector};

pub const CLAIMS: &[&str] = &[
    "(α) T_{i2,j2} ∘ T_{i1,j1} = 0 when j1 <= i2",
    "(β) T_{i2,j2} ∘ T_{i1,j1} = T_{i1,j2} when j1 > i2",
    "[S_k, ..., S_0] = (-1)^k S_0 ∘ ... ∘ S_k",
    "(S_0 ∘ ... ∘ S_k)(e_{k+1}) = e_0",
    "deg_Δ(e_k) <= k",
    "A is nilpotent on the truncation",
    "(N), (nil), (LN), (Lnil) pass from A to A_L",
    "the S-sequence dies in A but its bracket chain reaches the boundary in A_L",
    "every e_k lies in UNil^L(Δ)",
];

const CLASSIFY_SAMPLES: usize = 8;

#[derive(Debug, Clone)]
pub struct PpPP {
    pub params: Params,
    pub field: Field,
    /// `(i, j)` labels, in the order of `maps` and of the algebra basis.
    pub labels: Vec<(usize, usize)>,
    pub maps: Vec<LinearOperator>,
}

impl PpPP {
    pub fn new(params: Params) -> Result<Self> {
        let field = params.field()?;
        let n = params.n;
        let mut labels = Vec::new();
        let mut maps = Vec::new();
        for i in 0..=n {
            for j in 0..=i {
                labels.push((i, j));
                maps.push(Self::t_in(field, n + 2, i, j));
            }
        }
        Ok(PpPP {
            params,
            field,
            labels,
            maps,
        })
    }

    fn t_in(field: Field, dim: usize, i: usize, j: usize) -> LinearOperator {
        LinearOperator::from_fn(field, dim, |row, col| if col > i && row == j { field.one() } else { field.zero() })
    }

    pub fn dim(&self) -> usize {
        self.params.n + 2
    }

    pub fn index(&self, i: usize, j: usize) -> usize {
        i * (i + 1) / 2 + j
    }

    pub fn t(&self, i: usize, j: usize) -> &LinearOperator {
        &self.maps[self.index(i, j)]
    }

    pub fn s(&self, i: usize) -> &LinearOperator {
        self.t(i, i)
    }

    pub fn operator_set(&self) -> OperatorSet<LinearOperator> {
        OperatorSet::new(self.maps.clone()).expect("same dimension")
    }

    /// `A` as an abstract associative algebra with basis `T_{i,j}`.
    pub fn algebra(&self) -> Result<StructureAlgebra> {
        let names = self.labels.iter().map(|(i, j)| format!("T{i}_{j}")).collect();
        StructureAlgebra::from_operators(AlgebraKind::Associative, &self.maps, names)
    }

    fn sign(&self, k: usize) -> Coeff {
        if k % 2 == 0 {
            self.field.one()
        } else {
            self.field.one().neg()
        }
    }

    pub(crate) fn run_claims(&self, bound: usize) -> Result<Vec<ClaimResult>> {
        let n = self.params.n;
        let mut out = Vec::new();

        let (mut alpha, mut beta) = (Vec::new(), Vec::new());
        let (mut alpha_n, mut beta_n) = (0, 0);
        for &(i1, j1) in &self.labels {
            for &(i2, j2) in &self.labels {
                let prod = self.t(i2, j2).compose(self.t(i1, j1))?;
                if j1 <= i2 {
                    alpha_n += 1;
                    if !prod.is_zero() {
                        alpha.push([i1, j1, i2, j2]);
                    }
                } else {
                    beta_n += 1;
                    if prod != *self.t(i1, j2) {
                        beta.push([i1, j1, i2, j2]);
                    }
                }
            }
        }
        out.push(ClaimResult::new(CLAIMS[0], alpha.is_empty(), json!({ "pairs": alpha_n, "violations": alpha })));
        out.push(ClaimResult::new(CLAIMS[1], beta.is_empty(), json!({ "pairs": beta_n, "violations": beta })));

        let (mut bad_id, mut bad_e) = (Vec::new(), Vec::new());
        let mut chain = self.s(0).clone();
        let mut composite = self.s(0).clone();
        let mut chain_nonzero = Vec::new();
        for k in 0..=n {
            if k > 0 {
                chain = self.s(k).bracket(&chain)?;
                composite = composite.compose(self.s(k))?;
            }
            if chain != composite.scale(&self.sign(k)) {
                bad_id.push(k);
            }
            chain_nonzero.push(!chain.is_zero());
            let v = composite.apply(&basis_vector(self.field, self.dim(), k + 1))?;
            if v != basis_vector(self.field, self.dim(), 0) {
                bad_e.push(k);
            }
        }
        out.push(ClaimResult::new(CLAIMS[2], bad_id.is_empty(), json!({ "checked": n + 1, "violations": bad_id })));
        out.push(ClaimResult::new(CLAIMS[3], bad_e.is_empty(), json!({ "checked": n + 1, "violations": bad_e })));

        let set = self.operator_set();
        let basis: Vec<Vector> = (0..self.dim()).map(|k| basis_vector(self.field, self.dim(), k)).collect();
        let mut degrees = Vec::new();
        let mut ok = true;
        for (k, e) in basis.iter().enumerate() {
            let cert = deg_delta(&set, e, bound.max(k + 1))?;
            ok &= matches!(cert.certified_degree(), Some(Degree::Finite(d)) if d <= k);
            degrees.push(cert.degree);
        }
        out.push(ClaimResult::new(CLAIMS[4], ok, json!({ "degrees": degrees })));

        let alg = self.algebra()?;
        let report = classify(&alg, &[], CLASSIFY_SAMPLES, bound, self.params.seed)?;
        let all = Condition::ALL.iter().all(|&c| report.verdict(c) == Verdict::Certified);
        out.push(ClaimResult::new(
            CLAIMS[5],
            all,
            json!({
                "dim": alg.dim(),
                "verdicts": report.verdicts.iter().map(|(c, v)| (c.to_string(), v.verdict)).collect::<Vec<_>>(),
                "lower_central_series": report.lower_central_series,
            }),
        ));

        let cmp = check_a_vs_al(&alg, CLASSIFY_SAMPLES, bound, self.params.seed)?;
        out.push(ClaimResult::new(
            CLAIMS[6],
            cmp.transfers.iter().all(|t| t.holds),
            json!({ "transfers": cmp.transfers, "lie_lower_central_series": cmp.lie.lower_central_series }),
        ));

        // S_1 ∘ S_0 = 0 already; the bracket chain is nonzero for every k <= n.
        let dies_at = if self.s(1).compose(self.s(0))?.is_zero() { Some(2) } else { None };
        let reaches = chain_nonzero.iter().all(|&b| b);
        out.push(ClaimResult::new(
            CLAIMS[7],
            dies_at == Some(2) && reaches,
            json!({ "composite_zero_at_length": dies_at, "bracket_chain_nonzero_up_to": n + 1 }),
        ));

        let mut cutoffs = Vec::new();
        let mut ok = true;
        for e in &basis {
            let lie = unil_lie_membership(&set, e, bound.max(n + 3))?;
            ok &= lie.certificate.is_certified();
            cutoffs.push(lie.cutoff);
        }
        out.push(ClaimResult::new(CLAIMS[8], ok, json!({ "cutoffs": cutoffs })));
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{build, run_claims, ExampleId, ParamRequest};

    #[test]
    fn algebra_dimension() {
        let ex = PpPP::new(Params { n: 6, characteristic: 0, seed: 0 }).unwrap();
        assert_eq!(ex.algebra().unwrap().dim(), 28);
        assert_eq!(ex.t(3, 1).apply(&basis_vector(Field::Rational, 8, 5)).unwrap(), basis_vector(Field::Rational, 8, 1));
    }

    #[test]
    fn claims_pass() {
        let inst = build(ExampleId::ExPpPP, ParamRequest { n: Some(4), characteristic: 0, seed: 5 }).unwrap();
        let report = run_claims(&inst, 16).unwrap();
        assert!(report.all_pass(), "{:?}", report.failures().collect::<Vec<_>>());
    }
}
