//! Two locally nilpotent derivations of `k[x, y, z]` whose span consists of
//! locally nilpotent derivations, while the pair is not a locally nilpotent set.
//!
//! `D = x ∂/∂y + y ∂/∂z`, `E = y ∂/∂x - z ∂/∂y`.

use serde_json::json;

use super::{seeded, small_nonzero, ClaimResult, Params};
use crate::derivation::{linear_matrix, Derivation};
use crate::error::Result;
use crate::nil::{deg_delta, nil_membership, OperatorSet, PeriodicSchedule, Verdict};
use crate::poly::Ring;

pub const CLAIMS: &[&str] = &[
    "D(E(x)) = x",
    "[D,E](x) = x",
    "D and E are each locally nilpotent",
    "aD+bE cubes to zero on Span(x,y,z)",
    "x is not in Nil({D,E})",
];

const SPAN_SAMPLES: usize = 20;

#[derive(Debug, Clone)]
pub struct IntroDE {
    pub params: Params,
    pub ring: Ring,
    pub d: Derivation,
    pub e: Derivation,
}

impl IntroDE {
    pub fn new(params: Params) -> Result<Self> {
        let ring = Ring::new(params.field()?, ["x", "y", "z"])?;
        let d = Derivation::from_exprs(&ring, [("y", "x"), ("z", "y")])?;
        let e = Derivation::from_exprs(&ring, [("x", "y"), ("y", "-z")])?;
        Ok(IntroDE { params, ring, d, e })
    }

    pub fn operator_set(&self) -> OperatorSet<Derivation> {
        OperatorSet::new(vec![self.d.clone(), self.e.clone()]).expect("same ring")
    }

    /// The schedule `E, D, E, D, ...` which sends `x` to `y` and back.
    pub fn refuting_schedule() -> PeriodicSchedule {
        PeriodicSchedule {
            preperiod: vec![],
            period: vec![1, 0],
        }
    }

    pub(crate) fn run_claims(&self, bound: usize) -> Result<Vec<ClaimResult>> {
        let x = self.ring.var(0);
        let mut out = Vec::new();

        let dex = self.d.apply(&self.e.apply(&x)?)?;
        out.push(ClaimResult::new(CLAIMS[0], dex == x, json!({ "value": dex.to_string() })));

        let bx = self.d.bracket(&self.e)?.apply(&x)?;
        out.push(ClaimResult::new(CLAIMS[1], bx == x, json!({ "value": bx.to_string() })));

        let mut degrees = Vec::new();
        let mut ok = true;
        for g in [&self.d, &self.e] {
            let single = OperatorSet::new(vec![g.clone()])?;
            let mut row = Vec::new();
            for v in 0..3 {
                let cert = deg_delta(&single, &self.ring.var(v), bound)?;
                ok &= cert.is_certified();
                row.push(cert.degree);
            }
            degrees.push(row);
        }
        out.push(ClaimResult::new(CLAIMS[2], ok, json!({ "degrees_of_x_y_z": degrees })));

        let field = self.ring.field();
        let mut rng = seeded(self.params.seed, 1);
        let mut samples = Vec::new();
        let mut ok = true;
        for _ in 0..SPAN_SAMPLES {
            let (a, b) = (small_nonzero(&mut rng, field), small_nonzero(&mut rng, field));
            let g = self.d.scale(&a).add(&self.e.scale(&b))?;
            let m = linear_matrix(&g, &[0, 1, 2])?;
            let cube_zero = m.pow(3).is_zero();
            ok &= cube_zero;
            samples.push(json!({ "a": a.to_string(), "b": b.to_string(), "cube_zero": cube_zero }));
        }
        out.push(ClaimResult::new(CLAIMS[3], ok, json!({ "samples": samples })));

        let set = self.operator_set();
        let schedule = Self::refuting_schedule();
        let cert = nil_membership(&set, &x, bound, Some(&schedule))?;
        let ex = self.e.apply(&x)?;
        let dex = self.d.apply(&ex)?;
        out.push(ClaimResult::new(
            CLAIMS[4],
            cert.verdict == Verdict::Refuted,
            json!({ "certificate": cert, "cycle": [x.to_string(), ex.to_string(), dex.to_string()] }),
        ));
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{build, run_claims, ExampleId, ParamRequest};

    #[test]
    fn all_claims_pass_in_char_0_and_7() {
        for characteristic in [0, 7] {
            let inst = build(ExampleId::IntroDE, ParamRequest { characteristic, ..Default::default() }).unwrap();
            let report = run_claims(&inst, 12).unwrap();
            assert!(report.all_pass(), "{:?}", report.failures().collect::<Vec<_>>());
        }
    }

    #[test]
    fn schedule_cycles_through_y() {
        let ex = IntroDE::new(Params { n: 0, characteristic: 0, seed: 0 }).unwrap();
        let y = ex.ring.var(1);
        assert_eq!(ex.e.apply(&ex.ring.var(0)).unwrap(), y);
        assert_eq!(ex.d.apply(&y).unwrap(), ex.ring.var(0));
    }
}
