//! Shift derivations `D_k(x_i) = x_{i+1}` for `i <= k` and `0` otherwise.
//!
//! Truncation `n`: the derivations `D_0, ..., D_n` on `k[x_0, ..., x_{n+2}]`.
//! Every finite set of them is uniformly locally nilpotent with a nilpotent
//! Lie closure, while the whole family moves each `x_k` forever.

use serde_json::json;

use super::{seeded, small_nonzero, ClaimResult, Params};
use crate::derfinite::{fg_lie_nilpotency, DerivationLieAlgebra};
use crate::derivation::{apply_word, Derivation};
use crate::error::Result;
use crate::nil::{set_locally_nilpotent, word_vanishing_depth, Degree, OperatorSet, Verdict};
use crate::poly::{Monomial, Polynomial, Ring};
use rand::Rng;

pub const CLAIMS: &[&str] = &[
    "defining equations",
    "some word of length n+1 survives on a variable",
    "every word of length n+2 kills every variable",
    "UNil(D_0..D_n) = B with deg(x_i) = n+1-i",
    "x_k is moved by (D_k, ..., D_N) to x_{N+1}",
    "in characteristic 0 no nonconstant polynomial lies in Nil(L)",
    "Lie algebra generated by D_0..D_n is nilpotent",
];

const NONCONSTANT_SAMPLES: usize = 30;
const CLOSURE_DIM_BOUND: usize = 256;

#[derive(Debug, Clone)]
pub struct Ex298 {
    pub params: Params,
    pub ring: Ring,
    /// `derivations[k] = D_k`.
    pub derivations: Vec<Derivation>,
}

impl Ex298 {
    pub fn new(params: Params) -> Result<Self> {
        let n = params.n;
        let ring = Ring::indexed(params.field()?, "x", 0, n + 3);
        let derivations = (0..=n)
            .map(|k| Derivation::new(&ring, (0..=k).map(|i| (i, ring.var(i + 1)))))
            .collect::<Result<Vec<_>>>()?;
        Ok(Ex298 {
            params,
            ring,
            derivations,
        })
    }

    pub fn operator_set(&self) -> OperatorSet<Derivation> {
        OperatorSet::new(self.derivations.clone()).expect("same ring")
    }

    /// `(D_N ∘ ... ∘ D_k)(x_k)`.
    pub fn shift_word_value(&self, k: usize, last: usize) -> Result<Polynomial> {
        let word: Vec<&Derivation> = self.derivations[k..=last].iter().collect();
        Ok(apply_word(&word, &self.ring.var(k))?.value().clone())
    }

    pub(crate) fn run_claims(&self, bound: usize) -> Result<Vec<ClaimResult>> {
        let n = self.params.n;
        let nv = self.ring.num_vars();
        let set = self.operator_set();
        let mut out = Vec::new();

        let mut bad = Vec::new();
        for (k, d) in self.derivations.iter().enumerate() {
            for i in 0..nv {
                let want = if i <= k { self.ring.var(i + 1) } else { self.ring.zero() };
                if d.image(i) != want {
                    bad.push(json!({ "k": k, "i": i, "image": d.image(i).to_string() }));
                }
            }
        }
        out.push(ClaimResult::new(CLAIMS[0], bad.is_empty(), json!({ "violations": bad })));

        let short = word_vanishing_depth(&set, n + 1);
        out.push(ClaimResult::new(CLAIMS[1], !short.vanishes, json!(short)));
        let long = word_vanishing_depth(&set, n + 2);
        out.push(ClaimResult::new(CLAIMS[2], long.vanishes, json!(long)));

        // Degrees need words up to length n + 2 to certify.
        let depth = bound.max(n + 2);
        let vars: Vec<Polynomial> = (0..nv).map(|i| self.ring.var(i)).collect();
        let cert = set_locally_nilpotent(&set, &vars, depth)?;
        let degrees: Vec<Option<Degree>> = cert.per_generator.iter().map(|c| c.certified_degree()).collect();
        let expected: Vec<Option<Degree>> =
            (0..nv).map(|i| Some(Degree::Finite((n + 1).saturating_sub(i)))).collect();
        out.push(ClaimResult::new(
            CLAIMS[3],
            cert.certificate.is_certified() && degrees == expected,
            json!({ "verdict": cert.certificate.verdict, "degrees": degrees, "depth_bound": depth }),
        ));

        let mut bad = Vec::new();
        let mut checked = 0;
        for k in 0..=n {
            for last in k..=n {
                checked += 1;
                let v = self.shift_word_value(k, last)?;
                if v != self.ring.var(last + 1) {
                    bad.push(json!({ "k": k, "N": last, "value": v.to_string() }));
                }
            }
        }
        out.push(ClaimResult::new(CLAIMS[4], bad.is_empty(), json!({ "checked": checked, "violations": bad })));

        out.push(self.nonconstant_claim()?);

        let l = DerivationLieAlgebra::new(self.derivations.clone())?;
        let report = fg_lie_nilpotency(&l, CLOSURE_DIM_BOUND, depth)?;
        let lcs = report.lower_central_series.clone();
        out.push(ClaimResult::new(
            CLAIMS[6],
            report.verdict == Verdict::Certified,
            json!({ "verdict": report.verdict, "closure_dim": report.closure_dim, "lower_central_series": lcs }),
        ));
        Ok(out)
    }

    /// For `f` nonconstant with smallest variable `x_j`, `D_j(f)` is nonconstant in
    /// characteristic 0. In characteristic `p` the claim does not apply, and
    /// `x_0^p` is recorded as an element every `D_k` kills.
    fn nonconstant_claim(&self) -> Result<ClaimResult> {
        let field = self.ring.field();
        let p = field.characteristic();
        if p != 0 {
            let f = self.ring.var(0).pow(p as u32);
            let killed = self.derivations.iter().all(|d| d.apply(&f).map(|v| v.is_zero()).unwrap_or(false));
            return Ok(ClaimResult::new(
                CLAIMS[5],
                killed,
                json!({ "applicable": false, "killed_by_every_generator": f.to_string() }),
            ));
        }
        let n = self.params.n;
        let mut rng = seeded(self.params.seed, 298);
        let mut bad = Vec::new();
        let mut samples = Vec::new();
        for _ in 0..NONCONSTANT_SAMPLES {
            let terms = rng.random_range(1..=3);
            let mut f = self.ring.zero();
            while f.is_constant() {
                for _ in 0..terms {
                    let deg = rng.random_range(1..=3);
                    let m = (0..deg).fold(Monomial::one(), |m, _| m.mul(&Monomial::var(rng.random_range(0..=n))));
                    f = &f + &Polynomial::monomial(&self.ring, m, small_nonzero(&mut rng, field));
                }
            }
            let j = *f.variables().iter().next().expect("nonconstant");
            let image = self.derivations[j].apply(&f)?;
            if image.is_constant() {
                bad.push(f.to_string());
            }
            samples.push(json!({ "f": f.to_string(), "k": j, "image": image.to_string() }));
        }
        Ok(ClaimResult::new(CLAIMS[5], bad.is_empty(), json!({ "applicable": true, "samples": samples, "violations": bad })))
    }
}
