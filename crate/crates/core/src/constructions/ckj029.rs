//! Maps `F_k` with `F_k(e_i) = 0` for `1 <= i <= k` and `F_k(e_i) = e_k`
//! otherwise. Every composite sequence dies after two decreasing steps fail,
//! so `Nil(Δ) = V`, yet the brackets `[F_k, ..., F_1]` never vanish at `e_0`.
//!
//! Truncation `n`: `V = Span(e_0, ..., e_{n+1})` and `Δ = {F_1, ..., F_n}`.
//! All relations used hold exactly on this truncation.

use serde_json::json;

use super::{ClaimResult, Params};
use crate::coeff::Field;
use crate::error::Result;
use crate::nil::{set_locally_nilpotent, unil_lie_membership, OperatorSet, Verdict};
use crate::operator::{basis_vector, scale_vector, LinearOperator, Vector};

pub const CLAIMS: &[&str] = &[
    "F_k ∘ F_m = 0 for m <= k",
    "[F_k, ..., F_1] = (-1)^(k+1) F_1 ∘ ... ∘ F_k",
    "[F_k, ..., F_1](e_0) = (-1)^(k+1) e_1",
    "every basis vector lies in Nil(Δ)",
    "bracket words survive at e_0 up to the truncation length",
];

#[derive(Debug, Clone)]
pub struct Ckj029 {
    pub params: Params,
    pub field: Field,
    /// `maps[k - 1] = F_k`.
    pub maps: Vec<LinearOperator>,
}

impl Ckj029 {
    pub fn new(params: Params) -> Result<Self> {
        let field = params.field()?;
        let dim = params.n + 2;
        let maps = (1..=params.n)
            .map(|k| {
                LinearOperator::from_fn(field, dim, |row, col| {
                    let hits = col == 0 || col > k;
                    if hits && row == k {
                        field.one()
                    } else {
                        field.zero()
                    }
                })
            })
            .collect();
        Ok(Ckj029 { params, field, maps })
    }

    pub fn dim(&self) -> usize {
        self.params.n + 2
    }

    pub fn f(&self, k: usize) -> &LinearOperator {
        &self.maps[k - 1]
    }

    pub fn operator_set(&self) -> OperatorSet<LinearOperator> {
        OperatorSet::new(self.maps.clone()).expect("same dimension")
    }

    /// `[F_k, ..., F_1]`, right-nested.
    pub fn bracket_chain(&self, k: usize) -> Result<LinearOperator> {
        let mut acc = self.f(1).clone();
        for i in 2..=k {
            acc = self.f(i).bracket(&acc)?;
        }
        Ok(acc)
    }

    fn sign(&self, k: usize) -> crate::coeff::Coeff {
        if k % 2 == 1 {
            self.field.one()
        } else {
            self.field.one().neg()
        }
    }

    pub(crate) fn run_claims(&self, bound: usize) -> Result<Vec<ClaimResult>> {
        let n = self.params.n;
        let mut out = Vec::new();

        let mut bad = Vec::new();
        for k in 1..=n {
            for m in 1..=k {
                if !self.f(k).compose(self.f(m))?.is_zero() {
                    bad.push((k, m));
                }
            }
        }
        out.push(ClaimResult::new(CLAIMS[0], bad.is_empty(), json!({ "pairs": n * (n + 1) / 2, "violations": bad })));

        let (mut bad_id, mut bad_e0, mut values) = (Vec::new(), Vec::new(), Vec::new());
        let e0 = basis_vector(self.field, self.dim(), 0);
        let e1 = basis_vector(self.field, self.dim(), 1);
        let mut composite = LinearOperator::identity(self.field, self.dim());
        for k in 1..=n {
            composite = composite.compose(self.f(k))?;
            let chain = self.bracket_chain(k)?;
            if chain != composite.scale(&self.sign(k)) {
                bad_id.push(k);
            }
            let v: Vector = chain.apply(&e0)?;
            if v != scale_vector(&e1, &self.sign(k)) {
                bad_e0.push(k);
            }
            values.push(v.iter().map(ToString::to_string).collect::<Vec<_>>());
        }
        out.push(ClaimResult::new(CLAIMS[1], bad_id.is_empty(), json!({ "checked": n, "violations": bad_id })));
        out.push(ClaimResult::new(CLAIMS[2], bad_e0.is_empty(), json!({ "values": values, "violations": bad_e0 })));

        let set = self.operator_set();
        let basis: Vec<Vector> = (0..self.dim()).map(|i| basis_vector(self.field, self.dim(), i)).collect();
        let cert = set_locally_nilpotent(&set, &basis, bound.max(2))?;
        out.push(ClaimResult::new(
            CLAIMS[3],
            cert.certificate.is_certified(),
            json!({ "degrees": cert.per_generator.iter().map(|c| c.degree).collect::<Vec<_>>() }),
        ));

        // Searched only up to length n: beyond it the truncation itself cuts the
        // chains off, which says nothing about the infinite family.
        let lie = unil_lie_membership(&set, &e0, n)?;
        let survives = lie.pattern.len() == n && lie.pattern.iter().all(|vanishes| !vanishes);
        out.push(ClaimResult::new(
            CLAIMS[4],
            survives && lie.certificate.verdict != Verdict::Certified,
            json!({
                "verdict": lie.certificate.verdict,
                "searched_lengths": n,
                "surviving": lie.surviving,
            }),
        ));
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{build, run_claims, ExampleId, ParamRequest};

    #[test]
    fn f_shape() {
        let ex = Ckj029::new(Params { n: 3, characteristic: 0, seed: 0 }).unwrap();
        let f2 = ex.f(2);
        let q = Field::Rational;
        assert_eq!(f2.apply(&basis_vector(q, 5, 0)).unwrap(), basis_vector(q, 5, 2));
        assert!(is_zero(&f2.apply(&basis_vector(q, 5, 2)).unwrap()));
        assert_eq!(f2.apply(&basis_vector(q, 5, 4)).unwrap(), basis_vector(q, 5, 2));
    }

    fn is_zero(v: &[crate::coeff::Coeff]) -> bool {
        v.iter().all(|c| c.is_zero())
    }

    #[test]
    fn claims_pass() {
        for (n, characteristic) in [(7, 0), (4, 2)] {
            let inst = build(ExampleId::ExCkj029, ParamRequest { n: Some(n), characteristic, seed: 0 }).unwrap();
            let report = run_claims(&inst, 16).unwrap();
            assert!(report.all_pass(), "{:?}", report.failures().collect::<Vec<_>>());
        }
    }
}
