//! Factories for the worked examples, each with a list of claims that can be
//! checked by exact computation on a finite truncation.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::coeff::{Coeff, Field};
use crate::error::{Error, Result};

pub mod ckj029;
pub mod ex298;
pub mod ex928349;
pub mod intro;
pub mod pppp;
pub mod second_part;
pub mod zf24;

pub use zf24::{is_admissible, FreeAlgebraModule, NcPoly};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ExampleId {
    #[serde(rename = "intro-DE")]
    IntroDE,
    #[serde(rename = "ex-298")]
    Ex298,
    #[serde(rename = "ex-928349")]
    Ex928349,
    #[serde(rename = "ex-ckj029")]
    ExCkj029,
    #[serde(rename = "ex-PpPP")]
    ExPpPP,
    #[serde(rename = "ex-Zf24")]
    ExZf24,
    #[serde(rename = "ex-2ndPart")]
    Ex2ndPart,
}

impl ExampleId {
    pub const ALL: [ExampleId; 7] = [
        ExampleId::IntroDE,
        ExampleId::Ex298,
        ExampleId::Ex928349,
        ExampleId::ExCkj029,
        ExampleId::ExPpPP,
        ExampleId::ExZf24,
        ExampleId::Ex2ndPart,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ExampleId::IntroDE => "intro-DE",
            ExampleId::Ex298 => "ex-298",
            ExampleId::Ex928349 => "ex-928349",
            ExampleId::ExCkj029 => "ex-ckj029",
            ExampleId::ExPpPP => "ex-PpPP",
            ExampleId::ExZf24 => "ex-Zf24",
            ExampleId::Ex2ndPart => "ex-2ndPart",
        }
    }

    /// Default truncation size and the allowed range.
    fn n_range(self) -> (usize, usize, usize) {
        match self {
            ExampleId::IntroDE => (0, 0, 0),
            ExampleId::Ex298 => (4, 2, 40),
            ExampleId::Ex928349 => (4, 2, 8),
            ExampleId::ExCkj029 => (7, 2, 24),
            ExampleId::ExPpPP => (6, 2, 12),
            ExampleId::ExZf24 | ExampleId::Ex2ndPart => (4, 2, 4),
        }
    }
}

impl fmt::Display for ExampleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ExampleId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ExampleId::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| Error::UnknownExample(s.to_string()))
    }
}

/// Requested parameters; `n = None` selects the example's default truncation.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ParamRequest {
    pub n: Option<usize>,
    pub characteristic: u64,
    pub seed: u64,
}

/// Resolved parameters as echoed in reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Params {
    /// Truncation size; its meaning is documented per example.
    pub n: usize,
    #[serde(rename = "char")]
    pub characteristic: u64,
    pub seed: u64,
}

impl Params {
    pub fn field(&self) -> Result<Field> {
        Field::with_characteristic(self.characteristic)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ClaimStatus {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClaimResult {
    pub name: String,
    pub status: ClaimStatus,
    pub evidence: Value,
}

impl ClaimResult {
    pub fn new(name: &str, pass: bool, evidence: Value) -> Self {
        ClaimResult {
            name: name.to_string(),
            status: if pass { ClaimStatus::Pass } else { ClaimStatus::Fail },
            evidence,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == ClaimStatus::Pass
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClaimReport {
    pub example: ExampleId,
    pub params: Params,
    pub claims: Vec<ClaimResult>,
}

impl ClaimReport {
    pub fn all_pass(&self) -> bool {
        self.claims.iter().all(ClaimResult::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &ClaimResult> {
        self.claims.iter().filter(|c| !c.passed())
    }
}

/// A constructed example.
#[derive(Debug, Clone)]
pub enum ExampleInstance {
    IntroDE(intro::IntroDE),
    Ex298(ex298::Ex298),
    Ex928349(ex928349::Ex928349),
    Ckj029(ckj029::Ckj029),
    PpPP(pppp::PpPP),
    Zf24(zf24::Zf24),
    SecondPart(second_part::SecondPart),
}

impl ExampleInstance {
    pub fn id(&self) -> ExampleId {
        match self {
            ExampleInstance::IntroDE(_) => ExampleId::IntroDE,
            ExampleInstance::Ex298(_) => ExampleId::Ex298,
            ExampleInstance::Ex928349(_) => ExampleId::Ex928349,
            ExampleInstance::Ckj029(_) => ExampleId::ExCkj029,
            ExampleInstance::PpPP(_) => ExampleId::ExPpPP,
            ExampleInstance::Zf24(_) => ExampleId::ExZf24,
            ExampleInstance::SecondPart(_) => ExampleId::Ex2ndPart,
        }
    }

    pub fn params(&self) -> Params {
        match self {
            ExampleInstance::IntroDE(x) => x.params,
            ExampleInstance::Ex298(x) => x.params,
            ExampleInstance::Ex928349(x) => x.params,
            ExampleInstance::Ckj029(x) => x.params,
            ExampleInstance::PpPP(x) => x.params,
            ExampleInstance::Zf24(x) => x.params,
            ExampleInstance::SecondPart(x) => x.params,
        }
    }

    /// Names of the claims `run_claims` will check.
    pub fn claim_names(&self) -> &'static [&'static str] {
        match self {
            ExampleInstance::IntroDE(_) => intro::CLAIMS,
            ExampleInstance::Ex298(_) => ex298::CLAIMS,
            ExampleInstance::Ex928349(_) => ex928349::CLAIMS,
            ExampleInstance::Ckj029(_) => ckj029::CLAIMS,
            ExampleInstance::PpPP(_) => pppp::CLAIMS,
            ExampleInstance::Zf24(_) => zf24::CLAIMS,
            ExampleInstance::SecondPart(_) => second_part::CLAIMS,
        }
    }
}

/// Construct an example. For ex-928349 the characteristic must be 0.
pub fn build(id: ExampleId, req: ParamRequest) -> Result<ExampleInstance> {
    let (default_n, lo, hi) = id.n_range();
    let n = match (id, req.n) {
        (ExampleId::IntroDE, Some(_)) => {
            return Err(Error::InvalidParameter("intro-DE takes no truncation parameter".into()));
        }
        (_, Some(n)) if n < lo || n > hi => {
            return Err(Error::InvalidParameter(format!("{id}: n must lie in {lo}..={hi}, got {n}")));
        }
        (_, Some(n)) => n,
        (_, None) => default_n,
    };
    let params = Params {
        n,
        characteristic: req.characteristic,
        seed: req.seed,
    };
    params.field()?;
    Ok(match id {
        ExampleId::IntroDE => ExampleInstance::IntroDE(intro::IntroDE::new(params)?),
        ExampleId::Ex298 => ExampleInstance::Ex298(ex298::Ex298::new(params)?),
        ExampleId::Ex928349 => ExampleInstance::Ex928349(ex928349::Ex928349::new(params)?),
        ExampleId::ExCkj029 => ExampleInstance::Ckj029(ckj029::Ckj029::new(params)?),
        ExampleId::ExPpPP => ExampleInstance::PpPP(pppp::PpPP::new(params)?),
        ExampleId::ExZf24 => ExampleInstance::Zf24(zf24::Zf24::new(params)?),
        ExampleId::Ex2ndPart => ExampleInstance::SecondPart(second_part::SecondPart::new(params)?),
    })
}

/// Check every claim attached to the instance.
pub fn run_claims(inst: &ExampleInstance, depth_bound: usize) -> Result<ClaimReport> {
    let claims = match inst {
        ExampleInstance::IntroDE(x) => x.run_claims(depth_bound)?,
        ExampleInstance::Ex298(x) => x.run_claims(depth_bound)?,
        ExampleInstance::Ex928349(x) => x.run_claims(depth_bound)?,
        ExampleInstance::Ckj029(x) => x.run_claims(depth_bound)?,
        ExampleInstance::PpPP(x) => x.run_claims(depth_bound)?,
        ExampleInstance::Zf24(x) => x.run_claims(depth_bound)?,
        ExampleInstance::SecondPart(x) => x.run_claims(depth_bound)?,
    };
    debug_assert_eq!(
        claims.iter().map(|c| c.name.as_str()).collect::<Vec<_>>(),
        inst.claim_names().to_vec()
    );
    Ok(ClaimReport {
        example: inst.id(),
        params: inst.params(),
        claims,
    })
}

pub(crate) fn seeded(seed: u64, salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

/// A small nonzero rational `p/q` with `|p| <= 9`, `1 <= q <= 5`, reduced into `field`.
/// In positive characteristic the result is resampled until nonzero.
pub(crate) fn small_nonzero(rng: &mut ChaCha8Rng, field: Field) -> Coeff {
    loop {
        let p = rng.random_range(-9i64..=9);
        let q = rng.random_range(1i64..=5);
        if let Ok(c) = field.from_ratio(p, q) {
            if !c.is_zero() {
                return c;
            }
        }
    }
}
