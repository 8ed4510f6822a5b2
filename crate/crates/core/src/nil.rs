//! Bounded word search for local nilpotence: `deg_Δ`, membership in `Nil(Δ)`,
//! the bracket-word variants, and the degree laws.
//!
//! A word `(F_0, ..., F_n)` of actor indices is applied with `F_0` first.
//! A bracket word is stored in written order: `[F_n, ..., F_1]` as `(n, ..., 1)`.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::hash::Hash;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::coeff::Coeff;
use crate::derivation::Derivation;
use crate::error::{Error, Result};
use crate::operator::{add_vectors, is_zero_vector, scale_vector, LinearOperator, Vector};
use crate::poly::{Monomial, Polynomial};
use crate::span::{SpanBasis, SparseVec};

pub const DEFAULT_DEPTH_BOUND: usize = 16;

/// Cap on states visited while looking for a cycle.
const CYCLE_SEARCH_LIMIT: usize = 100_000;

/// Something that acts linearly on elements: a derivation on polynomials or a
/// matrix on coordinate vectors.
pub trait Actor: Clone + fmt::Debug {
    type Elem: Clone + Eq + Hash + fmt::Debug;
    type Key: Ord + Clone;

    fn act(&self, x: &Self::Elem) -> Self::Elem;
    fn in_ambient(&self, x: &Self::Elem) -> bool;
    fn same_ambient(&self, other: &Self) -> bool;
    fn bracket(&self, other: &Self) -> Self;
    fn is_zero_map(&self) -> bool;
    /// Elements on which a map is determined: variables or basis vectors.
    fn probes(&self) -> Vec<Self::Elem>;
    fn coordinates(&self) -> SparseVec<Self::Key>;
    fn from_coordinates(like: &Self, v: &SparseVec<Self::Key>) -> Self;

    fn is_zero_elem(x: &Self::Elem) -> bool;
    /// Representative of `x` up to a nonzero scalar.
    fn normalized(x: &Self::Elem) -> Self::Elem;
    fn elem_add(x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn elem_scale(x: &Self::Elem, c: &Coeff) -> Self::Elem;
    /// Product of elements when the ambient space is an algebra.
    fn elem_mul(x: &Self::Elem, y: &Self::Elem) -> Option<Self::Elem>;
}

impl Actor for Derivation {
    type Elem = Polynomial;
    type Key = (usize, Monomial);

    fn act(&self, x: &Polynomial) -> Polynomial {
        self.apply(x).expect("ambient checked by caller")
    }
    fn in_ambient(&self, x: &Polynomial) -> bool {
        x.ring() == self.ring()
    }
    fn same_ambient(&self, other: &Self) -> bool {
        self.ring() == other.ring()
    }
    fn bracket(&self, other: &Self) -> Self {
        Derivation::bracket(self, other).expect("ambient checked by caller")
    }
    fn is_zero_map(&self) -> bool {
        self.is_zero()
    }
    fn probes(&self) -> Vec<Polynomial> {
        (0..self.ring().num_vars()).map(|i| self.ring().var(i)).collect()
    }
    fn coordinates(&self) -> SparseVec<Self::Key> {
        self.to_sparse()
    }
    fn from_coordinates(like: &Self, v: &SparseVec<Self::Key>) -> Self {
        Derivation::from_sparse(like.ring(), v)
    }
    fn is_zero_elem(x: &Polynomial) -> bool {
        x.is_zero()
    }
    fn normalized(x: &Polynomial) -> Polynomial {
        x.monic()
    }
    fn elem_add(x: &Polynomial, y: &Polynomial) -> Polynomial {
        x + y
    }
    fn elem_scale(x: &Polynomial, c: &Coeff) -> Polynomial {
        x.scale(c)
    }
    fn elem_mul(x: &Polynomial, y: &Polynomial) -> Option<Polynomial> {
        Some(x * y)
    }
}

impl Actor for LinearOperator {
    type Elem = Vector;
    type Key = (usize, usize);

    fn act(&self, x: &Vector) -> Vector {
        self.apply(x).expect("ambient checked by caller")
    }
    fn in_ambient(&self, x: &Vector) -> bool {
        x.len() == self.dim() && x.iter().all(|c| c.field() == self.field())
    }
    fn same_ambient(&self, other: &Self) -> bool {
        self.dim() == other.dim() && self.field() == other.field()
    }
    fn bracket(&self, other: &Self) -> Self {
        LinearOperator::bracket(self, other).expect("ambient checked by caller")
    }
    fn is_zero_map(&self) -> bool {
        self.is_zero()
    }
    fn probes(&self) -> Vec<Vector> {
        (0..self.dim())
            .map(|i| crate::operator::basis_vector(self.field(), self.dim(), i))
            .collect()
    }
    fn coordinates(&self) -> SparseVec<Self::Key> {
        self.to_sparse()
    }
    fn from_coordinates(like: &Self, v: &SparseVec<Self::Key>) -> Self {
        LinearOperator::from_sparse(like.field(), like.dim(), v)
    }
    fn is_zero_elem(x: &Vector) -> bool {
        is_zero_vector(x)
    }
    fn normalized(x: &Vector) -> Vector {
        match x.iter().find(|c| !c.is_zero()) {
            Some(lead) => scale_vector(x, &lead.inv().expect("nonzero")),
            None => x.clone(),
        }
    }
    fn elem_add(x: &Vector, y: &Vector) -> Vector {
        add_vectors(x, y)
    }
    fn elem_scale(x: &Vector, c: &Coeff) -> Vector {
        scale_vector(x, c)
    }
    fn elem_mul(_: &Vector, _: &Vector) -> Option<Vector> {
        None
    }
}

/// A finite, indexed set `Δ` of actors sharing one ambient space.
#[derive(Debug, Clone)]
pub struct OperatorSet<A> {
    actors: Vec<A>,
}

impl<A: Actor> OperatorSet<A> {
    pub fn new(actors: Vec<A>) -> Result<Self> {
        if let Some(first) = actors.first() {
            if actors.iter().any(|a| !a.same_ambient(first)) {
                return Err(Error::AmbientMismatch);
            }
        }
        Ok(OperatorSet { actors })
    }

    pub fn empty() -> Self {
        OperatorSet { actors: Vec::new() }
    }

    pub fn actors(&self) -> &[A] {
        &self.actors
    }

    pub fn len(&self) -> usize {
        self.actors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.actors.is_empty()
    }

    pub fn check_elem(&self, x: &A::Elem) -> Result<()> {
        match self.actors.first() {
            Some(a) if !a.in_ambient(x) => Err(Error::AmbientMismatch),
            _ => Ok(()),
        }
    }

    /// Value of the word at `x`, applied left to right.
    pub fn apply_word(&self, word: &[usize], x: &A::Elem) -> A::Elem {
        word.iter().fold(x.clone(), |v, &i| self.actors[i].act(&v))
    }

    /// `[F_{w_0}, [F_{w_1}, ... F_{w_last}]]`.
    pub fn bracket_word(&self, word: &[usize]) -> Result<A> {
        let (&last, rest) = word.split_last().ok_or(Error::EmptySequence)?;
        let mut acc = self.actors[last].clone();
        for &i in rest.iter().rev() {
            acc = self.actors[i].bracket(&acc);
        }
        Ok(acc)
    }

    /// `Δ` together with extra actors.
    pub fn extended(&self, extra: impl IntoIterator<Item = A>) -> Result<Self> {
        let mut actors = self.actors.clone();
        actors.extend(extra);
        OperatorSet::new(actors)
    }
}

/// `deg_Δ` values: `-∞` for zero, otherwise a natural number.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInf,
    Finite(usize),
}

impl Degree {
    pub fn finite(self) -> Option<usize> {
        match self {
            Degree::NegInf => None,
            Degree::Finite(n) => Some(n),
        }
    }

    /// Sum with `-∞` absorbing.
    pub fn plus(self, other: Degree) -> Degree {
        match (self, other) {
            (Degree::Finite(a), Degree::Finite(b)) => Degree::Finite(a + b),
            _ => Degree::NegInf,
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInf => write!(f, "-inf"),
            Degree::Finite(n) => write!(f, "{n}"),
        }
    }
}

impl Serialize for Degree {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Degree::NegInf => s.serialize_str("neg-inf"),
            Degree::Finite(n) => s.serialize_u64(*n as u64),
        }
    }
}

impl<'de> Deserialize<'de> for Degree {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            N(usize),
            S(String),
        }
        match Raw::deserialize(d)? {
            Raw::N(n) => Ok(Degree::Finite(n)),
            Raw::S(s) if s == "neg-inf" => Ok(Degree::NegInf),
            Raw::S(s) => Err(serde::de::Error::custom(format!("bad degree `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Certified,
    Refuted,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Certified => "certified",
            Verdict::Refuted => "refuted",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

/// The infinite word `preperiod, period, period, ...`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PeriodicSchedule {
    pub preperiod: Vec<usize>,
    pub period: Vec<usize>,
}

/// Outcome of a bounded search.
///
/// * `Certified`: `degree` holds; for a finite degree `n` the witness is a
///   length-`n` word that survives and every length-`n+1` word vanishes.
/// * `Refuted`: `periodic` never vanishes; `witness` is one preperiod plus one period.
/// * `Inconclusive`: `witness` is a surviving word of length `bound`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub verdict: Verdict,
    pub degree: Option<Degree>,
    pub bound: usize,
    pub witness: Vec<usize>,
    pub periodic: Option<PeriodicSchedule>,
}

impl Certificate {
    fn certified(degree: Degree, bound: usize, witness: Vec<usize>) -> Self {
        Certificate {
            verdict: Verdict::Certified,
            degree: Some(degree),
            bound,
            witness,
            periodic: None,
        }
    }

    fn inconclusive(bound: usize, witness: Vec<usize>) -> Self {
        Certificate {
            verdict: Verdict::Inconclusive,
            degree: None,
            bound,
            witness,
            periodic: None,
        }
    }

    fn refuted(bound: usize, schedule: PeriodicSchedule) -> Self {
        let witness = schedule.preperiod.iter().chain(&schedule.period).copied().collect();
        Certificate {
            verdict: Verdict::Refuted,
            degree: None,
            bound,
            witness,
            periodic: Some(schedule),
        }
    }

    pub fn is_certified(&self) -> bool {
        self.verdict == Verdict::Certified
    }

    pub fn certified_degree(&self) -> Option<Degree> {
        if self.is_certified() {
            self.degree
        } else {
            None
        }
    }
}

fn check_bound(bound: usize) -> Result<()> {
    if bound == 0 {
        return Err(Error::InvalidParameter("depth bound must be at least 1".into()));
    }
    Ok(())
}

/// Breadth-first enumeration of surviving words by length. Each level keeps
/// one word per distinct value, since the subtree below a value depends on the
/// value alone.
struct Levels<'a, A: Actor> {
    set: &'a OperatorSet<A>,
    frontier: Vec<(A::Elem, Vec<usize>)>,
}

impl<'a, A: Actor> Levels<'a, A> {
    fn new(set: &'a OperatorSet<A>, x: &A::Elem) -> Self {
        let frontier = if A::is_zero_elem(x) { Vec::new() } else { vec![(x.clone(), Vec::new())] };
        Levels { set, frontier }
    }

    fn step(&mut self) {
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for (v, word) in &self.frontier {
            for (i, a) in self.set.actors.iter().enumerate() {
                let y = a.act(v);
                if A::is_zero_elem(&y) || !seen.insert(y.clone()) {
                    continue;
                }
                let mut w = word.clone();
                w.push(i);
                next.push((y, w));
            }
        }
        self.frontier = next;
    }
}

/// `deg_Δ(x)` by exhaustive enumeration of words up to length `bound`.
pub fn deg_delta<A: Actor>(set: &OperatorSet<A>, x: &A::Elem, bound: usize) -> Result<Certificate> {
    check_bound(bound)?;
    set.check_elem(x)?;
    if A::is_zero_elem(x) {
        return Ok(Certificate::certified(Degree::NegInf, bound, Vec::new()));
    }
    let mut levels = Levels::new(set, x);
    for n in 1..=bound {
        let witness = levels.frontier[0].1.clone();
        levels.step();
        if levels.frontier.is_empty() {
            return Ok(Certificate::certified(Degree::Finite(n - 1), bound, witness));
        }
    }
    Ok(Certificate::inconclusive(bound, levels.frontier[0].1.clone()))
}

/// Replay `schedule` from `x` for at most `max_periods` periods. Returns true
/// when the values at two period boundaries agree up to a nonzero scalar and
/// nothing on the way vanished, so the infinite schedule never annihilates `x`.
pub fn schedule_cycles<A: Actor>(
    set: &OperatorSet<A>,
    x: &A::Elem,
    schedule: &PeriodicSchedule,
    max_periods: usize,
) -> Result<bool> {
    set.check_elem(x)?;
    if schedule.period.is_empty() {
        return Err(Error::InvalidParameter("periodic schedule needs a nonempty period".into()));
    }
    if let Some(&i) = schedule.preperiod.iter().chain(&schedule.period).find(|&&i| i >= set.len()) {
        return Err(Error::InvalidParameter(format!("schedule refers to actor {i}, set has {}", set.len())));
    }
    let mut v = x.clone();
    if A::is_zero_elem(&v) {
        return Ok(false);
    }
    for &i in &schedule.preperiod {
        v = set.actors[i].act(&v);
        if A::is_zero_elem(&v) {
            return Ok(false);
        }
    }
    let mut boundaries = HashSet::new();
    boundaries.insert(A::normalized(&v));
    for _ in 0..max_periods {
        for &i in &schedule.period {
            v = set.actors[i].act(&v);
            if A::is_zero_elem(&v) {
                return Ok(false);
            }
        }
        if !boundaries.insert(A::normalized(&v)) {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Look for a reachable cycle of nonzero values (up to scalars) within words
/// of length at most `bound`, and return it as a periodic schedule.
pub fn find_periodic_schedule<A: Actor>(
    set: &OperatorSet<A>,
    x: &A::Elem,
    bound: usize,
) -> Result<Option<PeriodicSchedule>> {
    set.check_elem(x)?;
    if A::is_zero_elem(x) {
        return Ok(None);
    }
    struct Search<'a, A: Actor> {
        set: &'a OperatorSet<A>,
        bound: usize,
        on_path: HashMap<A::Elem, usize>,
        word: Vec<usize>,
        exhausted: HashSet<A::Elem>,
        visits: usize,
    }
    impl<A: Actor> Search<'_, A> {
        fn visit(&mut self, v: &A::Elem) -> Option<PeriodicSchedule> {
            let key = A::normalized(v);
            if let Some(&start) = self.on_path.get(&key) {
                return Some(PeriodicSchedule {
                    preperiod: self.word[..start].to_vec(),
                    period: self.word[start..].to_vec(),
                });
            }
            if self.exhausted.contains(&key) || self.word.len() >= self.bound || self.visits >= CYCLE_SEARCH_LIMIT {
                return None;
            }
            self.visits += 1;
            self.on_path.insert(key.clone(), self.word.len());
            for i in 0..self.set.len() {
                let y = self.set.actors[i].act(v);
                if A::is_zero_elem(&y) {
                    continue;
                }
                self.word.push(i);
                let found = self.visit(&y);
                self.word.pop();
                if found.is_some() {
                    return found;
                }
            }
            self.on_path.remove(&key);
            self.exhausted.insert(key);
            None
        }
    }
    let mut s = Search {
        set,
        bound,
        on_path: HashMap::new(),
        word: Vec::new(),
        exhausted: HashSet::new(),
        visits: 0,
    };
    Ok(s.visit(x))
}

/// Membership of `x` in `Nil(Δ)` (equal to `UNil(Δ)` for finite `Δ`).
///
/// The search alone certifies or stays inconclusive. A refutation needs a
/// caller-supplied schedule whose replay provably cycles.
pub fn nil_membership<A: Actor>(
    set: &OperatorSet<A>,
    x: &A::Elem,
    bound: usize,
    schedule: Option<&PeriodicSchedule>,
) -> Result<Certificate> {
    let cert = deg_delta(set, x, bound)?;
    if cert.is_certified() {
        return Ok(cert);
    }
    if let Some(s) = schedule {
        if schedule_cycles(set, x, s, bound.max(1))? {
            return Ok(Certificate::refuted(bound, s.clone()));
        }
    }
    Ok(cert)
}

/// Verdict for a whole set of generators, with the per-generator certificates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SetCertificate {
    #[serde(flatten)]
    pub certificate: Certificate,
    /// Index into the generator list of the first generator that was not certified.
    pub failing_generator: Option<usize>,
    pub per_generator: Vec<Certificate>,
}

/// Whether every generator lies in `Nil(Δ)`. Since `Nil(Δ)` is a subalgebra
/// containing the constants, this certifies `Δ` as a locally nilpotent set when
/// the generators generate the algebra. Uncertified generators are probed for a
/// cycling schedule, which refutes.
pub fn set_locally_nilpotent<A: Actor>(
    set: &OperatorSet<A>,
    generators: &[A::Elem],
    bound: usize,
) -> Result<SetCertificate> {
    check_bound(bound)?;
    let mut per_generator = Vec::with_capacity(generators.len());
    let mut failing = None;
    let mut refutation = None;
    for (gi, g) in generators.iter().enumerate() {
        let mut cert = deg_delta(set, g, bound)?;
        if !cert.is_certified() {
            if let Some(s) = find_periodic_schedule(set, g, bound)? {
                cert = Certificate::refuted(bound, s);
            }
            if failing.is_none() || (refutation.is_none() && cert.verdict == Verdict::Refuted) {
                failing = Some(gi);
                if cert.verdict == Verdict::Refuted {
                    refutation = Some(cert.clone());
                }
            }
        }
        per_generator.push(cert);
    }
    let certificate = match (failing, refutation) {
        (None, _) => {
            let best = per_generator
                .iter()
                .max_by_key(|c| c.degree)
                .cloned()
                .unwrap_or_else(|| Certificate::certified(Degree::NegInf, bound, Vec::new()));
            Certificate::certified(best.degree.unwrap_or(Degree::NegInf), bound, best.witness)
        }
        (Some(_), Some(r)) => r,
        (Some(i), None) => per_generator[i].clone(),
    };
    Ok(SetCertificate {
        certificate,
        failing_generator: failing,
        per_generator,
    })
}

/// Whether every length-`n` word is the zero map, checked on the probes
/// (the variables for derivations, the basis for matrices). Returns a
/// surviving `(word, probe index)` otherwise.
pub fn word_vanishing_depth<A: Actor>(set: &OperatorSet<A>, n: usize) -> WordVanishing {
    let Some(first) = set.actors.first() else {
        return WordVanishing { vanishes: n > 0, witness: None };
    };
    for (pi, p) in first.probes().iter().enumerate() {
        let mut levels = Levels::new(set, p);
        for _ in 0..n {
            if levels.frontier.is_empty() {
                break;
            }
            levels.step();
        }
        if let Some((_, w)) = levels.frontier.first() {
            return WordVanishing {
                vanishes: false,
                witness: Some((w.clone(), pi)),
            };
        }
    }
    WordVanishing { vanishes: true, witness: None }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WordVanishing {
    pub vanishes: bool,
    pub witness: Option<(Vec<usize>, usize)>,
}

/// Bracket-word analysis for `x`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LieCertificate {
    #[serde(flatten)]
    pub certificate: Certificate,
    /// Least `n` at which every length-`n` bracket word is the zero map.
    pub cutoff: Option<usize>,
    /// `pattern[n - 1]`: whether every length-`n` bracket word vanishes at `x`.
    pub pattern: Vec<bool>,
    /// For lengths where some bracket word survives at `x`, one such word.
    pub surviving: Vec<Option<Vec<usize>>>,
}

/// Membership of `x` in `UNil^L(Δ)`. Certified only through an operator-level
/// cutoff: pointwise vanishing of bracket words at one length does not persist
/// to longer words, so it is reported as evidence only.
pub fn unil_lie_membership<A: Actor>(set: &OperatorSet<A>, x: &A::Elem, bound: usize) -> Result<LieCertificate> {
    check_bound(bound)?;
    set.check_elem(x)?;
    let Some(like) = set.actors.first() else {
        return Ok(LieCertificate {
            certificate: Certificate::certified(Degree::Finite(0), bound, Vec::new()),
            cutoff: Some(1),
            pattern: vec![true],
            surviving: vec![None],
        });
    };
    let field_of = |v: &SparseVec<A::Key>| v.values().next().map(Coeff::field);
    let field = set
        .actors
        .iter()
        .find_map(|a| field_of(&a.coordinates()))
        .unwrap_or(crate::coeff::Field::Rational);

    // Basis of the span of all length-n bracket words, labelled by a word producing it.
    let mut layer: Vec<(Vec<usize>, A)> = Vec::new();
    let mut pattern = Vec::new();
    let mut surviving = Vec::new();
    let mut cutoff = None;
    for n in 1..=bound {
        let mut span: SpanBasis<A::Key, Vec<usize>> = SpanBasis::new(field);
        if n == 1 {
            for (i, a) in set.actors.iter().enumerate() {
                span.insert(vec![i], a.coordinates());
            }
        } else {
            for (i, f) in set.actors.iter().enumerate() {
                for (w, b) in &layer {
                    let mut word = vec![i];
                    word.extend(w);
                    span.insert(word, f.bracket(b).coordinates());
                }
            }
        }
        layer = span
            .into_elements()
            .into_iter()
            .map(|(w, v)| {
                let op = A::from_coordinates(like, &v);
                (w, op)
            })
            .collect();
        let survivor = layer.iter().find(|(_, op)| !A::is_zero_elem(&op.act(x))).map(|(w, _)| w.clone());
        pattern.push(survivor.is_none());
        surviving.push(survivor);
        if layer.is_empty() {
            cutoff = Some(n);
            break;
        }
    }
    let certificate = match cutoff {
        Some(_) if A::is_zero_elem(x) => Certificate::certified(Degree::NegInf, bound, Vec::new()),
        Some(n) => {
            // Longest length with a bracket word surviving at x.
            let last = surviving.iter().rposition(Option::is_some);
            let (deg, witness) = match last {
                Some(k) => (k + 1, surviving[k].clone().unwrap_or_default()),
                None => (0, Vec::new()),
            };
            debug_assert!(deg < n);
            Certificate::certified(Degree::Finite(deg), bound, witness)
        }
        None => {
            let witness = surviving.iter().rev().find_map(Clone::clone).unwrap_or_default();
            Certificate::inconclusive(bound, witness)
        }
    };
    Ok(LieCertificate {
        certificate,
        cutoff,
        pattern,
        surviving,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InvarianceRow {
    pub sample: usize,
    pub base: Option<Degree>,
    pub enriched: Option<Degree>,
    pub consistent: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InvarianceReport {
    pub rows: Vec<InvarianceRow>,
    pub compared: usize,
    pub violations: usize,
}

/// Compare `deg_Δ` with the degree for `Δ` enlarged by the given bracket words
/// (written order, indices into `Δ`). The degrees must agree whenever both are
/// certified.
pub fn check_generated_set_invariance<A: Actor>(
    set: &OperatorSet<A>,
    enrichment: &[Vec<usize>],
    samples: &[A::Elem],
    bound: usize,
) -> Result<InvarianceReport> {
    let extra = enrichment.iter().map(|w| set.bracket_word(w)).collect::<Result<Vec<_>>>()?;
    let enriched = set.extended(extra)?;
    let mut rows = Vec::with_capacity(samples.len());
    let (mut compared, mut violations) = (0, 0);
    for (i, x) in samples.iter().enumerate() {
        let base = deg_delta(set, x, bound)?.certified_degree();
        let more = deg_delta(&enriched, x, bound)?.certified_degree();
        let consistent = match (base, more) {
            (Some(a), Some(b)) => {
                compared += 1;
                a == b
            }
            // A certified enriched degree forces the base search to certify too.
            (None, Some(_)) => false,
            _ => true,
        };
        if !consistent {
            violations += 1;
        }
        rows.push(InvarianceRow {
            sample: i,
            base,
            enriched: more,
            consistent,
        });
    }
    Ok(InvarianceReport {
        rows,
        compared,
        violations,
    })
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct DegLawReport {
    pub decrease_checks: usize,
    pub sum_checks: usize,
    pub product_checks: usize,
    /// Samples or combinations whose degree was not certified at the bound.
    pub skipped: usize,
    pub violations: Vec<String>,
}

impl DegLawReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Check `deg(F x) < deg x`, `deg(x + λy) <= max(deg x, deg y)` and, when
/// elements can be multiplied, `deg(x y) <= deg x + deg y` on all sample pairs.
pub fn check_deg_laws<A: Actor>(
    set: &OperatorSet<A>,
    samples: &[A::Elem],
    scalars: &[Coeff],
    bound: usize,
) -> Result<DegLawReport> {
    let mut report = DegLawReport::default();
    let mut degs = Vec::with_capacity(samples.len());
    for x in samples {
        degs.push(deg_delta(set, x, bound)?.certified_degree());
    }
    for (x, dx) in samples.iter().zip(&degs) {
        let Some(dx) = *dx else {
            report.skipped += 1;
            continue;
        };
        if dx == Degree::NegInf {
            continue;
        }
        for (i, a) in set.actors.iter().enumerate() {
            let fx = a.act(x);
            match deg_delta(set, &fx, bound)?.certified_degree() {
                Some(d) => {
                    report.decrease_checks += 1;
                    if d >= dx {
                        report.violations.push(format!("deg(F_{i}(x)) = {d} is not below deg(x) = {dx}"));
                    }
                }
                None => report.skipped += 1,
            }
        }
    }
    for (i, x) in samples.iter().enumerate() {
        for (j, y) in samples.iter().enumerate().skip(i) {
            let (Some(dx), Some(dy)) = (degs[i], degs[j]) else {
                continue;
            };
            for c in scalars {
                let s = A::elem_add(x, &A::elem_scale(y, c));
                match deg_delta(set, &s, bound)?.certified_degree() {
                    Some(d) => {
                        report.sum_checks += 1;
                        if d > dx.max(dy) {
                            report
                                .violations
                                .push(format!("deg(x{i} + {c}*x{j}) = {d} exceeds max({dx}, {dy})"));
                        }
                    }
                    None => report.skipped += 1,
                }
            }
            if let Some(p) = A::elem_mul(x, y) {
                match deg_delta(set, &p, bound)?.certified_degree() {
                    Some(d) => {
                        report.product_checks += 1;
                        if d > dx.plus(dy) {
                            report
                                .violations
                                .push(format!("deg(x{i} * x{j}) = {d} exceeds {dx} + {dy}"));
                        }
                    }
                    None => report.skipped += 1,
                }
            }
        }
    }
    Ok(report)
}
