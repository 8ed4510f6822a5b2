//! Lie algebras of derivations of a polynomial ring with a finite separating
//! set: nilpotence of `ad(D)` for locally nilpotent `D`, and nilpotency of
//! finitely generated Lie algebras of derivations.

use serde::Serialize;

use crate::algebra::{AlgebraKind, LowerCentralSeries, StructureAlgebra};
use crate::derivation::Derivation;
use crate::error::{Error, Result};
use crate::nil::{deg_delta, set_locally_nilpotent, Degree, OperatorSet, Verdict};
use crate::poly::Polynomial;
use crate::span::{saturate, Closure};

/// Smallest `n` with `D^n(x) = 0` for all `x` in `xs`, if it is at most `bound + 1`.
fn vanishing_order(d: &Derivation, xs: &[Polynomial], bound: usize) -> Result<Option<usize>> {
    let set = OperatorSet::new(vec![d.clone()])?;
    let mut order = 0;
    for x in xs {
        match deg_delta(&set, x, bound)?.certified_degree() {
            Some(Degree::NegInf) => {}
            Some(Degree::Finite(k)) => order = order.max(k + 1),
            None => return Ok(None),
        }
    }
    Ok(Some(order))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AdIndex {
    pub verdict: Verdict,
    /// Least `N` with `ad(D)^N(E) = 0`.
    pub index: Option<usize>,
    /// `n`: least power of `D` killing the separating set.
    pub n: Option<usize>,
    /// `m`: least power of `D` killing every `E(D^i(x))`, `i < n`.
    pub m: Option<usize>,
    /// `m + n - 1`, an upper bound for the index.
    pub envelope: Option<usize>,
    pub bound: usize,
}

/// Nilpotence index of `ad(D)` at `E`, checked against the envelope `m + n - 1`
/// computed from vanishing orders on the separating set `xs`.
pub fn ad_nilpotence_index(d: &Derivation, e: &Derivation, xs: &[Polynomial], bound: usize) -> Result<AdIndex> {
    if d.ring() != e.ring() || xs.iter().any(|x| x.ring() != d.ring()) {
        return Err(Error::RingMismatch);
    }
    let n = vanishing_order(d, xs, bound)?;
    let (m, envelope) = match n {
        Some(n) => {
            let mut ys = Vec::new();
            for x in xs {
                let mut v = x.clone();
                for _ in 0..n {
                    ys.push(e.apply(&v)?);
                    v = d.apply(&v)?;
                }
            }
            let m = vanishing_order(d, &ys, bound)?;
            (m, m.map(|m| (m + n).saturating_sub(1)))
        }
        None => (None, None),
    };
    let mut acc = e.clone();
    let mut index = None;
    for k in 0..=bound {
        if acc.is_zero() {
            index = Some(k);
            break;
        }
        acc = d.bracket(&acc)?;
    }
    if let (Some(i), Some(env)) = (index, envelope) {
        if i > env {
            return Err(Error::Inconsistent(format!("ad index {i} exceeds the envelope {env}")));
        }
    }
    Ok(AdIndex {
        verdict: if index.is_some() { Verdict::Certified } else { Verdict::Inconclusive },
        index,
        n,
        m,
        envelope,
        bound,
    })
}

/// A Lie algebra of derivations given by generators, with a separating set.
#[derive(Debug, Clone)]
pub struct DerivationLieAlgebra {
    generators: Vec<Derivation>,
    separating: Vec<Polynomial>,
}

impl DerivationLieAlgebra {
    /// Uses the ring variables as separating set.
    pub fn new(generators: Vec<Derivation>) -> Result<Self> {
        let first = generators.first().ok_or(Error::EmptySequence)?;
        let ring = first.ring().clone();
        let separating = (0..ring.num_vars()).map(|i| ring.var(i)).collect();
        Self::with_separating_set(generators, separating)
    }

    /// A custom separating set. Whether it really separates derivations is not checked.
    pub fn with_separating_set(generators: Vec<Derivation>, separating: Vec<Polynomial>) -> Result<Self> {
        let first = generators.first().ok_or(Error::EmptySequence)?;
        if generators.iter().any(|g| g.ring() != first.ring()) || separating.iter().any(|x| x.ring() != first.ring()) {
            return Err(Error::RingMismatch);
        }
        Ok(DerivationLieAlgebra { generators, separating })
    }

    pub fn generators(&self) -> &[Derivation] {
        &self.generators
    }

    pub fn separating_set(&self) -> &[Polynomial] {
        &self.separating
    }

    /// Basis of the Lie algebra generated, by bracket saturation.
    pub fn closure(&self, dim_bound: usize) -> Closure<Derivation> {
        let ring = self.generators[0].ring().clone();
        let field = ring.field();
        let gens: Vec<_> = self.generators.iter().map(Derivation::to_sparse).collect();
        let c = saturate(
            field,
            &gens,
            |a, b| {
                let a = Derivation::from_sparse(&ring, a);
                let b = Derivation::from_sparse(&ring, b);
                a.bracket(&b).expect("same ring").to_sparse()
            },
            true,
            dim_bound,
        );
        let back = |v: &[crate::span::SparseVec<_>]| v.iter().map(|s| Derivation::from_sparse(&ring, s)).collect();
        match c {
            Closure::Closed(b) => Closure::Closed(back(&b)),
            Closure::BoundExceeded(b) => Closure::BoundExceeded(back(&b)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FgNilpotencyReport {
    /// Nilpotency of the generated Lie algebra.
    pub verdict: Verdict,
    pub closure_dim: Option<usize>,
    pub basis: Vec<String>,
    pub max_image_degree: u32,
    pub lower_central_series: Option<LowerCentralSeries>,
    /// Whether the generators form a locally nilpotent set, judged on the separating set.
    pub set_locally_nilpotent: Verdict,
    /// Whether every closure basis element was certified locally nilpotent on the separating set.
    pub basis_locally_nilpotent: Option<bool>,
    pub dim_bound: usize,
    pub depth_bound: usize,
}

/// Nilpotency of a finitely generated Lie algebra of derivations. The closure
/// lives in the space of variable images; its dimension is capped by
/// `dim_bound`, which also caps the image degrees reached. Two cross-checks
/// are enforced: a locally nilpotent generating set forces nilpotence, and so
/// does a finite closure whose basis elements are all locally nilpotent.
pub fn fg_lie_nilpotency(l: &DerivationLieAlgebra, dim_bound: usize, depth_bound: usize) -> Result<FgNilpotencyReport> {
    let set = OperatorSet::new(l.generators.clone())?;
    let set_lnd = set_locally_nilpotent(&set, &l.separating, depth_bound)?.certificate.verdict;
    let closure = l.closure(dim_bound);
    let basis: Vec<String> = closure.basis().iter().map(ToString::to_string).collect();
    let max_image_degree = closure.basis().iter().map(Derivation::max_image_degree).max().unwrap_or(0);
    let Closure::Closed(elems) = closure else {
        return Ok(FgNilpotencyReport {
            verdict: Verdict::Inconclusive,
            closure_dim: None,
            basis,
            max_image_degree,
            lower_central_series: None,
            set_locally_nilpotent: set_lnd,
            basis_locally_nilpotent: None,
            dim_bound,
            depth_bound,
        });
    };
    let ring = l.generators[0].ring().clone();
    let sparse: Vec<_> = elems.iter().map(Derivation::to_sparse).collect();
    let alg = StructureAlgebra::from_basis_elements(
        AlgebraKind::Lie,
        ring.field(),
        StructureAlgebra::default_names(elems.len()),
        &sparse,
        |a, b| {
            Derivation::from_sparse(&ring, a)
                .bracket(&Derivation::from_sparse(&ring, b))
                .expect("same ring")
                .to_sparse()
        },
    )?;
    let lcs = alg.lower_central_series();
    let mut all_lnd = true;
    for b in &elems {
        if vanishing_order(b, &l.separating, depth_bound)?.is_none() {
            all_lnd = false;
            break;
        }
    }
    if !lcs.nilpotent && set_lnd == Verdict::Certified {
        return Err(Error::Inconsistent(
            "locally nilpotent generating set but the generated Lie algebra is not nilpotent".into(),
        ));
    }
    if !lcs.nilpotent && all_lnd {
        return Err(Error::Inconsistent(
            "all closure basis elements are locally nilpotent but the closure is not nilpotent".into(),
        ));
    }
    Ok(FgNilpotencyReport {
        verdict: if lcs.nilpotent { Verdict::Certified } else { Verdict::Refuted },
        closure_dim: Some(elems.len()),
        basis,
        max_image_degree,
        lower_central_series: Some(lcs),
        set_locally_nilpotent: set_lnd,
        basis_locally_nilpotent: Some(all_lnd),
        dim_bound,
        depth_bound,
    })
}
