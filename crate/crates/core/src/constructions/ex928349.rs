//! Triangular derivations of `k[X_1, ..., X_n]` in characteristic 0: the Lie
//! algebra `L` of derivations with `D(X_1) ∈ k` and `D(X_i) ∈ k[X_1..X_{i-1}]`.
//! `L` is a locally nilpotent set and satisfies (SN), but `ad(∂/∂X_1)` is not
//! nilpotent and `X_2` has unbounded degree.
//!
//! Truncation `n`: the number of variables. `L` is spanned by the
//! `D_f^j = f ∂/∂X_j` with `f ∈ k[X_1..X_{j-1}]`; the finite generator family
//! uses the monomials `f` of degree at most [`FAMILY_DEGREE`].

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::{seeded, small_nonzero, ClaimResult, Params};
use crate::derivation::{iterated_bracket, Derivation};
use crate::error::{Error, Result};
use crate::nil::{check_generated_set_invariance, deg_delta, set_locally_nilpotent, Degree, OperatorSet};
use crate::poly::{Monomial, Polynomial, Ring};

pub const CLAIMS: &[&str] = &[
    "(E^m ∘ D_m)(X_2) = m! for m = 1..5",
    "[E, ..., E, D_m](X_2) = m! for m = 1..5",
    "ad(E)^m(D_m) != 0 for m = 1..5",
    "deg_{E,D_m}(X_2) = m+1, so X_2 is not in UNil(L)",
    "bracket law [D_f^j, D_g^k] = D^k_{D_f^j(g)} for j <= k",
    "generator sequences reach a zero iterated bracket",
    "generator family is a locally nilpotent set",
    "enriching the family by brackets leaves degrees unchanged",
];

pub const FAMILY_DEGREE: u32 = 1;
const MAX_M: usize = 5;
const PAIR_SAMPLES: usize = 100;
const SEQUENCE_SAMPLES: usize = 100;
const SEQUENCE_DEPTH: usize = 20;

#[derive(Debug, Clone)]
pub struct Ex928349 {
    pub params: Params,
    pub ring: Ring,
    /// `(j, f)` for each member `D_f^j` of the generator family, `j` 1-based.
    pub family_labels: Vec<(usize, Polynomial)>,
    pub family: Vec<Derivation>,
}

/// All monomials of degree at most `deg` in the variables `0..nvars`.
fn monomials_upto(nvars: usize, deg: u32) -> Vec<Monomial> {
    let mut out = vec![Monomial::one()];
    let mut layer = vec![(Monomial::one(), 0usize)];
    for _ in 0..deg {
        let mut next = Vec::new();
        for (m, lo) in &layer {
            for v in *lo..nvars {
                next.push((m.mul(&Monomial::var(v)), v));
            }
        }
        out.extend(next.iter().map(|(m, _)| m.clone()));
        layer = next;
    }
    out
}

impl Ex928349 {
    pub fn new(params: Params) -> Result<Self> {
        if params.characteristic != 0 {
            return Err(Error::InvalidParameter(
                "ex-928349 requires characteristic 0 (the degree argument uses m! != 0)".into(),
            ));
        }
        let ring = Ring::indexed(params.field()?, "X", 1, params.n);
        let mut family_labels = Vec::new();
        let mut family = Vec::new();
        for j in 1..=params.n {
            for m in monomials_upto(j - 1, FAMILY_DEGREE) {
                let f = Polynomial::monomial(&ring, m, ring.field().one());
                family.push(Self::generator_in(&ring, j, f.clone())?);
                family_labels.push((j, f));
            }
        }
        Ok(Ex928349 {
            params,
            ring,
            family_labels,
            family,
        })
    }

    fn generator_in(ring: &Ring, j: usize, f: Polynomial) -> Result<Derivation> {
        if f.variables().iter().any(|&v| v + 1 >= j) {
            return Err(Error::InvalidParameter(format!("D_f^{j} needs f in k[X_1..X_{}]", j - 1)));
        }
        Derivation::scaled_partial(ring, f, j - 1)
    }

    /// `D_f^j = f ∂/∂X_j`, with `f ∈ k[X_1..X_{j-1}]` and `j` 1-based.
    pub fn generator(&self, j: usize, f: Polynomial) -> Result<Derivation> {
        if j == 0 || j > self.params.n {
            return Err(Error::InvalidParameter(format!("variable index {j} out of range")));
        }
        Self::generator_in(&self.ring, j, f)
    }

    /// `E = ∂/∂X_1`.
    pub fn e(&self) -> Derivation {
        Derivation::partial(&self.ring, 0)
    }

    /// `D_m = X_1^m ∂/∂X_2`.
    pub fn d_m(&self, m: usize) -> Derivation {
        let f = self.ring.var(0).pow(m as u32);
        Derivation::scaled_partial(&self.ring, f, 1).expect("ring has X_2")
    }

    fn factorial(&self, m: usize) -> Polynomial {
        let field = self.ring.field();
        let c = (1..=m as u64).fold(field.one(), |acc, k| acc.mul(&field.from_u64(k)));
        self.ring.constant(c)
    }

    /// A random polynomial of degree at most `deg` in `X_1..X_{nvars}` with up to 3 terms.
    fn random_poly(&self, rng: &mut ChaCha8Rng, nvars: usize, deg: u32) -> Polynomial {
        let monos = monomials_upto(nvars, deg);
        let terms = rng.random_range(1..=3);
        (0..terms).fold(self.ring.zero(), |acc, _| {
            let m = monos[rng.random_range(0..monos.len())].clone();
            &acc + &Polynomial::monomial(&self.ring, m, small_nonzero(rng, self.ring.field()))
        })
    }

    pub(crate) fn run_claims(&self, bound: usize) -> Result<Vec<ClaimResult>> {
        let n = self.params.n;
        let x2 = self.ring.var(1);
        let e = self.e();
        let mut out = Vec::new();

        let (mut comp, mut brk, mut nonzero, mut degs) = (Vec::new(), Vec::new(), Vec::new(), Vec::new());
        let (mut ok_comp, mut ok_brk, mut ok_nz, mut ok_deg) = (true, true, true, true);
        for m in 1..=MAX_M {
            let dm = self.d_m(m);
            let want = self.factorial(m);
            let mut v = dm.apply(&x2)?;
            for _ in 0..m {
                v = e.apply(&v)?;
            }
            ok_comp &= v == want;
            comp.push(json!({ "m": m, "value": v.to_string() }));

            let mut word = vec![e.clone(); m];
            word.push(dm.clone());
            let ad = iterated_bracket(&word)?;
            let at_x2 = ad.apply(&x2)?;
            ok_brk &= at_x2 == want;
            brk.push(json!({ "m": m, "value": at_x2.to_string() }));
            ok_nz &= !ad.is_zero();
            nonzero.push(json!({ "m": m, "ad_e_m_d_m": ad.to_string() }));

            let pair = OperatorSet::new(vec![e.clone(), dm])?;
            let cert = deg_delta(&pair, &x2, bound.max(m + 2))?;
            ok_deg &= cert.certified_degree() == Some(Degree::Finite(m + 1));
            degs.push(json!({ "m": m, "degree": cert.degree }));
        }
        out.push(ClaimResult::new(CLAIMS[0], ok_comp, json!({ "values": comp })));
        out.push(ClaimResult::new(CLAIMS[1], ok_brk, json!({ "values": brk })));
        out.push(ClaimResult::new(CLAIMS[2], ok_nz, json!({ "brackets": nonzero })));
        out.push(ClaimResult::new(CLAIMS[3], ok_deg, json!({ "degrees": degs })));

        let mut rng = seeded(self.params.seed, 928_349);
        let mut bad = Vec::new();
        for _ in 0..PAIR_SAMPLES {
            let j = rng.random_range(1..=n);
            let k = rng.random_range(j..=n);
            let f = self.random_poly(&mut rng, j - 1, 2);
            let g = self.random_poly(&mut rng, k - 1, 3);
            let df = self.generator(j, f.clone())?;
            let dg = self.generator(k, g.clone())?;
            let lhs = df.bracket(&dg)?;
            let rhs = self.generator(k, df.apply(&g)?)?;
            if lhs != rhs {
                bad.push(json!({ "j": j, "f": f.to_string(), "k": k, "g": g.to_string() }));
            }
        }
        out.push(ClaimResult::new(
            CLAIMS[4],
            bad.is_empty(),
            json!({ "pairs": PAIR_SAMPLES, "violations": bad }),
        ));

        let depth = bound.max(SEQUENCE_DEPTH);
        let mut lengths = Vec::new();
        let mut bad = Vec::new();
        for s in 0..SEQUENCE_SAMPLES {
            // acc = [d_i, ..., d_0], built from the innermost letter outwards.
            // Letters are fresh generators D_f^j with f a monomial of degree <= 2.
            let mut word = Vec::new();
            let mut acc: Option<Derivation> = None;
            while word.len() < depth && acc.as_ref().is_none_or(|a| !a.is_zero()) {
                let j = rng.random_range(1..=n);
                let monos = monomials_upto(j - 1, 2);
                let f = Polynomial::monomial(&self.ring, monos[rng.random_range(0..monos.len())].clone(), self.ring.field().one());
                let d = self.generator(j, f.clone())?;
                word.push(format!("D^{j}_{{{f}}}"));
                acc = Some(match acc {
                    None => d,
                    Some(a) => d.bracket(&a)?,
                });
            }
            if acc.is_some_and(|a| a.is_zero()) {
                lengths.push(word.len());
            } else {
                bad.push(json!({ "sample": s, "word": word }));
            }
        }
        out.push(ClaimResult::new(
            CLAIMS[5],
            bad.is_empty(),
            json!({ "sequences": SEQUENCE_SAMPLES, "depth_bound": depth, "zero_at_length": lengths, "survivors": bad }),
        ));

        let set = OperatorSet::new(self.family.clone())?;
        let vars: Vec<Polynomial> = (0..n).map(|i| self.ring.var(i)).collect();
        let cert = set_locally_nilpotent(&set, &vars, bound)?;
        out.push(ClaimResult::new(
            CLAIMS[6],
            cert.certificate.is_certified(),
            json!({
                "family_size": self.family.len(),
                "verdict": cert.certificate.verdict,
                "degrees": cert.per_generator.iter().map(|c| c.degree).collect::<Vec<_>>(),
            }),
        ));

        let len = self.family.len();
        let enrichment: Vec<Vec<usize>> = (0..3)
            .map(|_| vec![rng.random_range(0..len), rng.random_range(0..len)])
            .collect();
        let samples: Vec<Polynomial> = (0..10).map(|_| self.random_poly(&mut rng, n, 2)).collect();
        let inv = check_generated_set_invariance(&set, &enrichment, &samples, bound)?;
        out.push(ClaimResult::new(
            CLAIMS[7],
            inv.violations == 0,
            json!({ "enrichment": enrichment, "compared": inv.compared, "violations": inv.violations }),
        ));
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{build, run_claims, ExampleId, ParamRequest};

    #[test]
    fn family_sizes() {
        assert_eq!(monomials_upto(0, 2).len(), 1);
        assert_eq!(monomials_upto(2, 2).len(), 6);
        let ex = Ex928349::new(Params { n: 3, characteristic: 0, seed: 0 }).unwrap();
        assert_eq!(ex.family.len(), 1 + 2 + 3);
    }

    #[test]
    fn rejects_positive_characteristic() {
        let req = ParamRequest { n: Some(3), characteristic: 3, seed: 0 };
        assert!(matches!(build(ExampleId::Ex928349, req), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn generator_must_be_triangular() {
        let ex = Ex928349::new(Params { n: 3, characteristic: 0, seed: 0 }).unwrap();
        assert!(ex.generator(2, ex.ring.var(1)).is_err());
        assert!(ex.generator(3, ex.ring.var(1)).is_ok());
    }

    #[test]
    fn claims_pass() {
        let inst = build(ExampleId::Ex928349, ParamRequest { n: Some(4), ..Default::default() }).unwrap();
        let report = run_claims(&inst, 16).unwrap();
        assert!(report.all_pass(), "{:?}", report.failures().collect::<Vec<_>>());
    }
}
