//! Nilpotency conditions for finite-dimensional algebras, decided through the
//! left-multiplication map `φ` and the lower central series.

use std::collections::BTreeMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};

use crate::algebra::{to_sparse, AlgebraKind, LowerCentralSeries, StructureAlgebra};
use crate::coeff::Coeff;
use crate::error::{Error, Result};
use crate::nil::{deg_delta, find_periodic_schedule, Certificate, Degree, OperatorSet, PeriodicSchedule, Verdict};
use crate::operator::{is_zero_vector, LinearOperator, Vector};
use crate::span::{SpanBasis, SparseVec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Condition {
    N,
    SN,
    LN,
    #[serde(rename = "nil")]
    Nil,
    Lnil,
}

impl Condition {
    pub const ALL: [Condition; 5] = [Condition::N, Condition::SN, Condition::LN, Condition::Nil, Condition::Lnil];
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Condition::N => "N",
            Condition::SN => "SN",
            Condition::LN => "LN",
            Condition::Nil => "nil",
            Condition::Lnil => "Lnil",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConditionVerdict {
    pub verdict: Verdict,
    pub evidence: String,
}

/// `s(H)`: the supremum of `deg'_H` over `H`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SValue {
    NegInf,
    Finite(usize),
    /// Some element of `H` is provably outside `Nil'(H)`.
    Infinite,
    /// Not every degree was certified; the largest certified one, if any.
    Inconclusive { lower_bound: Option<usize> },
}

impl Serialize for SValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            SValue::NegInf => s.serialize_str("neg-inf"),
            SValue::Finite(n) => s.serialize_u64(*n as u64),
            SValue::Infinite => s.serialize_str("inf"),
            SValue::Inconclusive { lower_bound } => {
                use serde::ser::SerializeMap;
                let mut m = s.serialize_map(Some(1))?;
                m.serialize_entry("inconclusive_lower_bound", lower_bound)?;
                m.end()
            }
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SampleEvidence {
    /// Elements whose left multiplication was tested for nilpotence.
    pub nil_tested: usize,
    pub nil_failures: usize,
    /// Random sequences whose right-nested products were followed to the bound.
    pub sequences: usize,
    pub sequences_vanished: usize,
    /// Longest length needed by a sequence that vanished.
    pub longest_vanishing: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NilpotencyReport {
    pub kind: AlgebraKind,
    pub dim: usize,
    pub verdicts: BTreeMap<Condition, ConditionVerdict>,
    pub s_value: SValue,
    pub lower_central_series: LowerCentralSeries,
    /// Least `n` with every product of `n` elements zero.
    pub nilpotency_index: Option<usize>,
    pub samples: SampleEvidence,
}

impl NilpotencyReport {
    pub fn verdict(&self, c: Condition) -> Verdict {
        self.verdicts[&c].verdict
    }
}

/// The operators `φ(h)` for `h ∈ H`.
pub fn left_mult_set(a: &StructureAlgebra, h: &[Vector]) -> Result<OperatorSet<LinearOperator>> {
    let ops = h.iter().map(|x| a.left_mult_operator(x)).collect::<Result<Vec<_>>>()?;
    OperatorSet::new(ops)
}

/// Membership of `x` in `Nil'(H) = Nil(φ(H))`. When the search does not
/// certify, a cycling schedule is searched for and, if found, refutes.
pub fn nil_prime_membership(a: &StructureAlgebra, h: &[Vector], x: &[Coeff], bound: usize) -> Result<Certificate> {
    let set = left_mult_set(a, h)?;
    if x.len() != a.dim() {
        return Err(Error::LengthMismatch(x.len(), a.dim()));
    }
    let x = x.to_vec();
    let cert = deg_delta(&set, &x, bound)?;
    if cert.is_certified() {
        return Ok(cert);
    }
    match find_periodic_schedule(&set, &x, bound)? {
        Some(s) => Ok(Certificate {
            verdict: Verdict::Refuted,
            degree: None,
            bound,
            witness: s.preperiod.iter().chain(&s.period).copied().collect(),
            periodic: Some(s),
        }),
        None => Ok(cert),
    }
}

/// `s(H) = sup { deg'_H(x) : x ∈ H }`.
pub fn s_value(a: &StructureAlgebra, h: &[Vector], bound: usize) -> Result<SValue> {
    let mut best = Degree::NegInf;
    let mut open = false;
    for x in h {
        let c = nil_prime_membership(a, h, x, bound)?;
        match c.verdict {
            Verdict::Certified => best = best.max(c.degree.unwrap_or(Degree::NegInf)),
            Verdict::Refuted => return Ok(SValue::Infinite),
            Verdict::Inconclusive => open = true,
        }
    }
    Ok(match (open, best) {
        (true, d) => SValue::Inconclusive { lower_bound: d.finite() },
        (false, Degree::NegInf) => SValue::NegInf,
        (false, Degree::Finite(n)) => SValue::Finite(n),
    })
}

/// Whether every right-nested product `a_n ⋯ a_1` with all `a_i ∈ H` is zero.
/// Computed through the spans `W_1 = span H`, `W_{k+1} = span(H · W_k)`.
pub fn generator_words_vanish(a: &StructureAlgebra, h: &[Vector], n: usize) -> Result<bool> {
    if n == 0 {
        return Ok(false);
    }
    let gens: Vec<SparseVec<usize>> = h
        .iter()
        .map(|x| {
            if x.len() != a.dim() {
                return Err(Error::LengthMismatch(x.len(), a.dim()));
            }
            Ok(to_sparse(x))
        })
        .collect::<Result<_>>()?;
    let mut layer = gens.clone();
    for _ in 1..n {
        let mut next: SpanBasis<usize, ()> = SpanBasis::new(a.field());
        for g in &gens {
            for w in &layer {
                next.insert((), a.mul_sparse(g, w));
            }
        }
        layer = next.into_elements().into_iter().map(|(_, v)| v).collect();
    }
    Ok(layer.iter().all(|v| v.is_empty()))
}

fn random_element(a: &StructureAlgebra, rng: &mut ChaCha8Rng) -> Vector {
    (0..a.dim()).map(|_| a.field().from_i64(rng.random_range(-2..=2))).collect()
}

fn show(a: &StructureAlgebra, v: &[Coeff]) -> String {
    let terms: Vec<String> = v
        .iter()
        .zip(a.basis_names())
        .filter(|(c, _)| !c.is_zero())
        .map(|(c, n)| if c.is_one() { n.clone() } else { format!("({c})*{n}") })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

/// Assert the implications N ⇒ SN, N ⇒ nil, SN ⇒ LN, LN ⇒ Lnil, nil ⇒ Lnil
/// for certified verdicts, and their contrapositives for refuted ones.
pub fn check_implications(verdicts: &BTreeMap<Condition, ConditionVerdict>) -> Result<()> {
    use Condition::*;
    const EDGES: [(Condition, Condition); 5] = [(N, SN), (N, Nil), (SN, LN), (LN, Lnil), (Nil, Lnil)];
    for (p, q) in EDGES {
        let (vp, vq) = (verdicts.get(&p).map(|v| v.verdict), verdicts.get(&q).map(|v| v.verdict));
        if vp == Some(Verdict::Certified) && vq == Some(Verdict::Refuted) {
            return Err(Error::Inconsistent(format!("({p}) certified but ({q}) refuted")));
        }
    }
    Ok(())
}

/// Decide the five conditions for a finite-dimensional algebra.
///
/// The verdicts come from the lower central series, since in finite dimension
/// all five conditions are equivalent to nilpotence. `generators` (the basis
/// when empty) feed `s(H)`. Random elements and random sequences, drawn from a
/// seeded generator, add cross-checks that are recorded as evidence.
pub fn classify(
    a: &StructureAlgebra,
    generators: &[Vector],
    sample_count: usize,
    bound: usize,
    seed: u64,
) -> Result<NilpotencyReport> {
    a.validate()?;
    let d = a.dim();
    let basis: Vec<Vector> = (0..d).map(|i| a.basis_element(i)).collect();
    let gens = if generators.is_empty() { basis.clone() } else { generators.to_vec() };
    let lcs = a.lower_central_series();
    let index = lcs.index();
    let s = s_value(a, &gens, bound)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    // (nil) cross-check on basis elements and random elements.
    let mut samples = SampleEvidence::default();
    let mut candidates = basis.clone();
    candidates.extend((0..sample_count).map(|_| random_element(a, &mut rng)));
    let mut non_nilpotent: Option<(Vector, LinearOperator)> = None;
    for x in &candidates {
        let phi = a.left_mult_operator(x)?;
        samples.nil_tested += 1;
        if !phi.is_nilpotent() {
            samples.nil_failures += 1;
            non_nilpotent.get_or_insert((x.clone(), phi));
        }
    }

    // (SN) cross-check: right-nested products x_n ⋯ x_0 along random sequences.
    for _ in 0..sample_count {
        samples.sequences += 1;
        let mut acc = random_element(a, &mut rng);
        for len in 0..=bound {
            if is_zero_vector(&acc) {
                samples.sequences_vanished += 1;
                samples.longest_vanishing = samples.longest_vanishing.max(len);
                break;
            }
            let next = random_element(a, &mut rng);
            acc = a.multiply(&next, &acc)?;
        }
    }

    let mut verdicts = BTreeMap::new();
    if let Some(n) = index {
        if samples.nil_failures > 0 {
            return Err(Error::Inconsistent("nilpotent algebra with a non-nilpotent left multiplication".into()));
        }
        if samples.sequences_vanished < samples.sequences && n <= bound {
            return Err(Error::Inconsistent("nilpotent algebra with a surviving random sequence".into()));
        }
        let chain = format!("lower central series {:?} reaches 0", lcs.dims);
        verdicts.insert(
            Condition::N,
            ConditionVerdict {
                verdict: Verdict::Certified,
                evidence: format!("{chain}; every product of {n} elements is 0"),
            },
        );
        verdicts.insert(
            Condition::SN,
            ConditionVerdict {
                verdict: Verdict::Certified,
                evidence: format!(
                    "every sequence vanishes after {n} terms; {}/{} random sequences vanished",
                    samples.sequences_vanished, samples.sequences
                ),
            },
        );
        verdicts.insert(
            Condition::LN,
            ConditionVerdict {
                verdict: Verdict::Certified,
                evidence: format!("subalgebras of a nilpotent algebra are nilpotent; {chain}"),
            },
        );
        let nil_ev = format!(
            "phi(x)^{n} = 0 for all x; {} sampled left multiplications nilpotent",
            samples.nil_tested
        );
        verdicts.insert(
            Condition::Nil,
            ConditionVerdict {
                verdict: Verdict::Certified,
                evidence: nil_ev.clone(),
            },
        );
        verdicts.insert(
            Condition::Lnil,
            ConditionVerdict {
                verdict: Verdict::Certified,
                evidence: nil_ev,
            },
        );
    } else {
        let stuck = *lcs.dims.last().expect("series is nonempty");
        let chain = format!("lower central series {:?} stabilizes at dimension {stuck}", lcs.dims);
        // A left multiplication that is not nilpotent, and a vector it never kills.
        let witness = non_nilpotent.as_ref().map(|(x, phi)| {
            let power = phi.pow(d as u32);
            let y = (0..d).find(|&j| !is_zero_vector(&power.column(j))).expect("non-nilpotent power is nonzero");
            (x.clone(), y)
        });
        let (nil_ev, sn_ev) = match &witness {
            Some((x, y)) => (
                format!("phi({}) is not nilpotent; {chain}", show(a, x)),
                format!(
                    "the sequence ({}, {x}, {x}, ...) never vanishes since phi({x})^{d} does not kill it; {chain}",
                    a.basis_names()[*y],
                    x = show(a, x)
                ),
            ),
            None => (chain.clone(), chain.clone()),
        };
        verdicts.insert(
            Condition::N,
            ConditionVerdict {
                verdict: Verdict::Refuted,
                evidence: chain.clone(),
            },
        );
        verdicts.insert(
            Condition::SN,
            ConditionVerdict {
                verdict: Verdict::Refuted,
                evidence: sn_ev,
            },
        );
        verdicts.insert(
            Condition::LN,
            ConditionVerdict {
                verdict: Verdict::Refuted,
                evidence: format!("the algebra is generated by its finite basis and is not nilpotent; {chain}"),
            },
        );
        verdicts.insert(
            Condition::Nil,
            ConditionVerdict {
                verdict: Verdict::Refuted,
                evidence: nil_ev.clone(),
            },
        );
        verdicts.insert(
            Condition::Lnil,
            ConditionVerdict {
                verdict: Verdict::Refuted,
                evidence: format!("in finite dimension a locally nilpotent map is nilpotent; {nil_ev}"),
            },
        );
    }
    check_implications(&verdicts)?;
    Ok(NilpotencyReport {
        kind: a.kind(),
        dim: d,
        verdicts,
        s_value: s,
        lower_central_series: lcs,
        nilpotency_index: index,
        samples,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TransferCheck {
    pub condition: Condition,
    pub algebra: Verdict,
    pub lie: Verdict,
    /// False only when the condition holds for `A` but fails for `A_L`.
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LieComparison {
    pub algebra: NilpotencyReport,
    pub lie: NilpotencyReport,
    pub transfers: Vec<TransferCheck>,
    /// (SN) is not asserted to transfer; both verdicts are listed here.
    pub sn: (Verdict, Verdict),
}

/// Classify an associative `A` and its commutator algebra `A_L`, and check that
/// (N), (nil), (LN) and (Lnil) pass from `A` to `A_L`.
pub fn check_a_vs_al(a: &StructureAlgebra, sample_count: usize, bound: usize, seed: u64) -> Result<LieComparison> {
    if a.kind() != AlgebraKind::Associative {
        return Err(Error::InvalidAlgebra("expected an associative algebra".into()));
    }
    let al = a.antisymmetrized()?;
    let ra = classify(a, &[], sample_count, bound, seed)?;
    let rl = classify(&al, &[], sample_count, bound, seed)?;
    let transfers: Vec<TransferCheck> = [Condition::N, Condition::Nil, Condition::LN, Condition::Lnil]
        .into_iter()
        .map(|c| {
            let (va, vl) = (ra.verdict(c), rl.verdict(c));
            TransferCheck {
                condition: c,
                algebra: va,
                lie: vl,
                holds: !(va == Verdict::Certified && vl == Verdict::Refuted),
            }
        })
        .collect();
    if let Some(t) = transfers.iter().find(|t| !t.holds) {
        return Err(Error::Inconsistent(format!("({}) holds for A but fails for A_L", t.condition)));
    }
    Ok(LieComparison {
        sn: (ra.verdict(Condition::SN), rl.verdict(Condition::SN)),
        algebra: ra,
        lie: rl,
        transfers,
    })
}

/// Replay a sequence of elements `x_0, x_1, ...` given by a periodic schedule
/// of indices into `h`, returning the first `n <= bound` with `x_n ⋯ x_0 = 0`.
pub fn sequence_vanishing_length(
    a: &StructureAlgebra,
    h: &[Vector],
    schedule: &PeriodicSchedule,
    bound: usize,
) -> Result<Option<usize>> {
    if schedule.period.is_empty() {
        return Err(Error::InvalidParameter("periodic schedule needs a nonempty period".into()));
    }
    let mut it = schedule.preperiod.iter().chain(schedule.period.iter().cycle());
    let first = *it.next().expect("period is nonempty");
    let mut acc = h.get(first).ok_or_else(|| Error::InvalidParameter(format!("no element {first}")))?.clone();
    for n in 0..=bound {
        if is_zero_vector(&acc) {
            return Ok(Some(n));
        }
        let i = *it.next().expect("cycle is infinite");
        let x = h.get(i).ok_or_else(|| Error::InvalidParameter(format!("no element {i}")))?;
        acc = a.multiply(x, &acc)?;
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::strictly_upper_triangular;
    use crate::coeff::Field;

    fn nonabelian2() -> StructureAlgebra {
        let q = Field::Rational;
        StructureAlgebra::new(
            AlgebraKind::Lie,
            q,
            StructureAlgebra::default_names(2),
            [(0, 1, 1, q.one()), (1, 0, 1, q.from_i64(-1))],
        )
        .unwrap()
    }

    #[test]
    fn upper_triangular_degrees() {
        let a = strictly_upper_triangular(Field::Rational, 4);
        let basis: Vec<_> = (0..a.dim()).map(|i| a.basis_element(i)).collect();
        let e34 = a.basis_names().iter().position(|n| n == "e34").unwrap();
        let c = nil_prime_membership(&a, &basis, &basis[e34], 16).unwrap();
        assert_eq!(c.degree, Some(Degree::Finite(2)));
        assert_eq!(s_value(&a, &basis, 16).unwrap(), SValue::Finite(2));
    }

    #[test]
    fn trivial_subsets() {
        let a = strictly_upper_triangular(Field::Rational, 3);
        assert_eq!(s_value(&a, &[], 16).unwrap(), SValue::NegInf);
        let zero = vec![a.zero_element()];
        let c = nil_prime_membership(&a, &zero, &a.basis_element(0), 16).unwrap();
        assert_eq!(c.degree, Some(Degree::Finite(0)));
        let q = Field::Rational;
        let abelian = StructureAlgebra::new(AlgebraKind::Lie, q, StructureAlgebra::default_names(2), []).unwrap();
        assert_eq!(s_value(&abelian, &[abelian.basis_element(0)], 16).unwrap(), SValue::Finite(0));
    }

    #[test]
    fn nonabelian_refutations() {
        let a = nonabelian2();
        let c = nil_prime_membership(&a, &[a.basis_element(0)], &a.basis_element(1), 16).unwrap();
        assert_eq!(c.verdict, Verdict::Refuted);
        assert_eq!(c.periodic, Some(PeriodicSchedule { preperiod: vec![], period: vec![0] }));
        let r = classify(&a, &[], 10, 16, 7).unwrap();
        for cond in Condition::ALL {
            assert_eq!(r.verdict(cond), Verdict::Refuted, "{cond}");
        }
        assert_eq!(r.s_value, SValue::Infinite);
    }

    #[test]
    fn upper_triangular_classifies_nilpotent() {
        for n in 3..=5 {
            let a = strictly_upper_triangular(Field::Rational, n);
            let r = classify(&a, &[], 10, 16, 1).unwrap();
            for cond in Condition::ALL {
                assert_eq!(r.verdict(cond), Verdict::Certified);
            }
            assert_eq!(r.s_value, SValue::Finite(n - 2));
            assert_eq!(r.nilpotency_index, Some(n));
        }
    }

    #[test]
    fn one_dimensional_square_zero() {
        let a = StructureAlgebra::new(AlgebraKind::Associative, Field::Rational, vec!["e".into()], []).unwrap();
        let r = classify(&a, &[], 4, 16, 0).unwrap();
        assert!(Condition::ALL.iter().all(|&c| r.verdict(c) == Verdict::Certified));
    }

    #[test]
    fn implication_violations_are_caught() {
        let mut v = BTreeMap::new();
        let mk = |verdict| ConditionVerdict { verdict, evidence: String::new() };
        v.insert(Condition::N, mk(Verdict::Certified));
        v.insert(Condition::Nil, mk(Verdict::Refuted));
        assert!(matches!(check_implications(&v), Err(Error::Inconsistent(_))));
    }

    #[test]
    fn generator_words_in_upper_triangular() {
        let a = strictly_upper_triangular(Field::Rational, 4);
        let names = a.basis_names().to_vec();
        let g: Vec<_> = ["e12", "e23", "e34"]
            .iter()
            .map(|s| a.basis_element(names.iter().position(|n| n == s).unwrap()))
            .collect();
        assert!(!generator_words_vanish(&a, &g, 3).unwrap());
        assert!(generator_words_vanish(&a, &g, 4).unwrap());
    }

    #[test]
    fn commutative_algebra_lie_side() {
        // k[t]/(t^3) without unit: basis t, t^2.
        let q = Field::Rational;
        let a = StructureAlgebra::new(AlgebraKind::Associative, q, vec!["t".into(), "t2".into()], [(0, 0, 1, q.one())]).unwrap();
        let cmp = check_a_vs_al(&a, 5, 16, 3).unwrap();
        assert!(cmp.transfers.iter().all(|t| t.holds));
        assert!(Condition::ALL.iter().all(|&c| cmp.lie.verdict(c) == Verdict::Certified));
    }
}
