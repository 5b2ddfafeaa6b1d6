//! The partially predictable arrival model.
//!
//! An adversary fixes an [`InitialSequence`]. Every slot independently joins
//! the stochastic group with probability `p`; the members are then shuffled
//! uniformly among their own positions while every other slot keeps its
//! place. The result is a [`Realization`].
//!
//! Time is always an integer step `i` in `0..=n` (λ = i/n).

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::rng::{rng_from_seed, TrialRng};

/// One slot of an arrival sequence.
///
/// Ordered by revenue so that sorted sequences compare as multisets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Customer {
    /// No customer in this period.
    Empty,
    /// Low-revenue customer, pays `a`.
    Type2,
    /// High-revenue customer, pays 1.
    Type1,
}

impl Customer {
    pub fn revenue(self, a: f64) -> f64 {
        match self {
            Customer::Empty => 0.0,
            Customer::Type2 => a,
            Customer::Type1 => 1.0,
        }
    }

    pub fn token(self) -> &'static str {
        match self {
            Customer::Empty => "0",
            Customer::Type2 => "a",
            Customer::Type1 => "1",
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Customer::Empty => "empty",
            Customer::Type2 => "type2",
            Customer::Type1 => "type1",
        }
    }
}

impl FromStr for Customer {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "0" => Ok(Customer::Empty),
            "a" => Ok(Customer::Type2),
            "1" => Ok(Customer::Type1),
            other => Err(Error::Parse(format!("unknown slot token {other:?}"))),
        }
    }
}

/// The adversary's ordered customer list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InitialSequence {
    slots: Vec<Customer>,
    n1: usize,
    n2: usize,
}

impl InitialSequence {
    pub fn new(slots: Vec<Customer>) -> Result<Self> {
        if slots.len() < 3 {
            return Err(Error::InvalidInstance(format!(
                "horizon must be at least 3, got {}",
                slots.len()
            )));
        }
        let n1 = slots.iter().filter(|&&c| c == Customer::Type1).count();
        let n2 = slots.iter().filter(|&&c| c == Customer::Type2).count();
        Ok(Self { slots, n1, n2 })
    }

    /// Parses a comma-separated token list such as `"1,0,1,a"`.
    pub fn from_tokens(pattern: &str) -> Result<Self> {
        let slots = pattern
            .split(',')
            .map(|t| t.trim().parse())
            .collect::<Result<Vec<Customer>>>()?;
        Self::new(slots)
    }

    /// Concatenates the given blocks and pads with empty slots up to `n`.
    pub fn from_blocks(n: usize, blocks: &[(Customer, usize)]) -> Result<Self> {
        let total: usize = blocks.iter().map(|&(_, k)| k).sum();
        if total > n {
            return Err(Error::InvalidInstance(format!(
                "blocks hold {total} slots but the horizon is {n}"
            )));
        }
        let mut slots = Vec::with_capacity(n);
        for &(kind, count) in blocks {
            slots.extend(std::iter::repeat_n(kind, count));
        }
        slots.resize(n, Customer::Empty);
        Self::new(slots)
    }

    pub fn empty(n: usize) -> Result<Self> {
        Self::from_blocks(n, &[])
    }

    pub fn slots(&self) -> &[Customer] {
        &self.slots
    }

    pub fn n(&self) -> usize {
        self.slots.len()
    }

    pub fn n1(&self) -> usize {
        self.n1
    }

    pub fn n2(&self) -> usize {
        self.n2
    }

    /// Prefix counts (η₁, η₂) over the first `step` slots.
    pub fn eta(&self, step: usize) -> (usize, usize) {
        count_types(&self.slots[..step.min(self.n())])
    }

    pub fn to_tokens(&self) -> String {
        join_tokens(&self.slots)
    }
}

fn join_tokens(slots: &[Customer]) -> String {
    slots
        .iter()
        .map(|c| c.token())
        .collect::<Vec<_>>()
        .join(",")
}

fn count_types(slots: &[Customer]) -> (usize, usize) {
    slots.iter().fold((0, 0), |(t1, t2), c| match c {
        Customer::Type1 => (t1 + 1, t2),
        Customer::Type2 => (t1, t2 + 1),
        Customer::Empty => (t1, t2),
    })
}

/// Stochastic group membership and the permutation applied to it.
///
/// Indices are 0-based slot positions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StochasticAssignment {
    /// Sorted member indices.
    members: Vec<usize>,
    /// `images[j]` is where `members[j]` lands.
    images: Vec<usize>,
    is_member: Vec<bool>,
}

impl StochasticAssignment {
    /// Builds an assignment from a member list and the landing position of
    /// each member (`images[j]` for `members[j]`).
    pub fn new(n: usize, members: Vec<usize>, images: Vec<usize>) -> Result<Self> {
        if members.len() != images.len() {
            return Err(Error::InvalidParameter(
                "members and images differ in length".into(),
            ));
        }
        let mut pairs: Vec<(usize, usize)> = members.into_iter().zip(images).collect();
        pairs.sort_unstable();
        let (members, images): (Vec<usize>, Vec<usize>) = pairs.into_iter().unzip();
        let mut is_member = vec![false; n];
        for &m in &members {
            if m >= n || is_member[m] {
                return Err(Error::InvalidParameter(format!(
                    "member index {m} is out of range or repeated"
                )));
            }
            is_member[m] = true;
        }
        let mut hit = vec![false; n];
        for &t in &images {
            if t >= n || !is_member[t] || hit[t] {
                return Err(Error::InvalidParameter(
                    "permutation does not map the group onto itself".into(),
                ));
            }
            hit[t] = true;
        }
        Ok(Self {
            members,
            images,
            is_member,
        })
    }

    /// Identity assignment: nobody joins the stochastic group.
    pub fn adversarial(n: usize) -> Self {
        Self {
            members: Vec::new(),
            images: Vec::new(),
            is_member: vec![false; n],
        }
    }

    /// Draws membership i.i.d. Bernoulli(p) over all `n` slots, then a
    /// uniform permutation of the members (Fisher–Yates over the sorted
    /// member list).
    pub fn sample(n: usize, p: f64, rng: &mut TrialRng) -> Self {
        let mut is_member = vec![false; n];
        let mut members = Vec::new();
        for (i, m) in is_member.iter_mut().enumerate() {
            if rng.gen_bool(p) {
                *m = true;
                members.push(i);
            }
        }
        let mut images = members.clone();
        images.shuffle(rng);
        Self {
            members,
            images,
            is_member,
        }
    }

    pub fn n(&self) -> usize {
        self.is_member.len()
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn is_member(&self, index: usize) -> bool {
        self.is_member[index]
    }

    /// Landing position of slot `index`; non-members stay put.
    pub fn sigma(&self, index: usize) -> usize {
        if self.is_member[index] {
            let j = self.members.binary_search(&index).expect("member");
            self.images[j]
        } else {
            index
        }
    }

    /// Rearranges `slots` according to the assignment.
    pub fn apply<T: Copy>(&self, slots: &[T]) -> Vec<T> {
        assert_eq!(slots.len(), self.n(), "assignment/sequence length mismatch");
        let mut out = slots.to_vec();
        for (&from, &to) in self.members.iter().zip(&self.images) {
            out[to] = slots[from];
        }
        out
    }
}

/// One sampled arrival sequence.
///
/// Policies only ever see [`Realization::arrivals`]; the assignment is kept
/// for oracle checks.
#[derive(Debug, Clone)]
pub struct Realization<'a> {
    source: &'a InitialSequence,
    arrivals: Vec<Customer>,
    assignment: StochasticAssignment,
}

impl<'a> Realization<'a> {
    pub fn from_assignment(
        source: &'a InitialSequence,
        assignment: StochasticAssignment,
    ) -> Result<Self> {
        if assignment.n() != source.n() {
            return Err(Error::InvalidParameter(format!(
                "assignment covers {} slots, sequence has {}",
                assignment.n(),
                source.n()
            )));
        }
        let arrivals = assignment.apply(source.slots());
        Ok(Self {
            source,
            arrivals,
            assignment,
        })
    }

    pub fn sample(source: &'a InitialSequence, p: f64, seed: u64) -> Result<Self> {
        Self::sample_with(source, p, &mut rng_from_seed(seed))
    }

    pub fn sample_with(source: &'a InitialSequence, p: f64, rng: &mut TrialRng) -> Result<Self> {
        check_probability(p)?;
        let assignment = StochasticAssignment::sample(source.n(), p, rng);
        Self::from_assignment(source, assignment)
    }

    pub fn source(&self) -> &'a InitialSequence {
        self.source
    }

    pub fn arrivals(&self) -> &[Customer] {
        &self.arrivals
    }

    /// Oracle-only view of the stochastic group.
    pub fn assignment(&self) -> &StochasticAssignment {
        &self.assignment
    }

    pub fn n(&self) -> usize {
        self.arrivals.len()
    }

    /// (o₁, o₂) over the first `step` arrivals, `step` in `1..=n`.
    pub fn observed_counts(&self, step: usize) -> Result<(usize, usize)> {
        self.check_step(step)?;
        Ok(count_types(&self.arrivals[..step]))
    }

    /// Type-2 arrivals among the first `step` that belong to the stochastic
    /// group.
    pub fn stochastic_observed_count(&self, step: usize) -> Result<usize> {
        self.check_step(step)?;
        Ok(self.arrivals[..step]
            .iter()
            .enumerate()
            .filter(|&(i, &c)| c == Customer::Type2 && self.assignment.is_member(i))
            .count())
    }

    fn check_step(&self, step: usize) -> Result<()> {
        if step == 0 || step > self.n() {
            return Err(Error::TimeOutOfRange { step, n: self.n() });
        }
        Ok(())
    }
}

pub(crate) fn check_probability(p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParameter(format!("p = {p} is not in [0, 1]")));
    }
    Ok(())
}

/// Deterministic approximations at λ = step/n.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Approximation {
    pub o1: f64,
    pub o2: f64,
    /// Approximation of the stochastic-group type-2 count.
    pub o2_stochastic: f64,
}

/// õⱼ(λ) = (1−p)ηⱼ(λ) + pλnⱼ and õ₂ˢ(λ) = pλn₂, with λ = step/n.
pub fn deterministic_approx(seq: &InitialSequence, p: f64, step: usize) -> Approximation {
    let n = seq.n() as f64;
    let lambda = step.min(seq.n()) as f64 / n;
    let (eta1, eta2) = seq.eta(step);
    let n1 = seq.n1() as f64;
    let n2 = seq.n2() as f64;
    Approximation {
        o1: (1.0 - p) * eta1 as f64 + p * lambda * n1,
        o2: (1.0 - p) * eta2 as f64 + p * lambda * n2,
        o2_stochastic: p * lambda * n2,
    }
}

/// Constants of the concentration lemma.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConcentrationConstants {
    pub alpha: f64,
    pub k: f64,
    pub eps_bar: f64,
}

impl ConcentrationConstants {
    pub fn standard() -> Self {
        Self {
            alpha: 10.0 + 2.0 * 6f64.sqrt(),
            k: 16.0,
            eps_bar: 1.0 / 24.0,
        }
    }

    /// Δ(b, n) = α√(b ln n).
    pub fn delta(&self, b: f64, n: usize) -> f64 {
        self.alpha * (b * (n as f64).ln()).sqrt()
    }

    /// Count threshold (k/p²) ln n above which a type is concentrated.
    pub fn count_threshold(&self, p: f64, n: usize) -> f64 {
        self.k / (p * p) * (n as f64).ln()
    }
}

impl Default for ConcentrationConstants {
    fn default() -> Self {
        Self::standard()
    }
}

/// Whether the realization falls in the high-probability concentration
/// event, checked at every λ ∈ {0, 1/n, …, 1}.
pub fn concentration_event_holds(r: &Realization<'_>, p: f64) -> bool {
    let consts = ConcentrationConstants::standard();
    let seq = r.source();
    let n = seq.n();
    let ln_n = (n as f64).ln();
    let threshold = consts.count_threshold(p, n);
    let n1 = seq.n1() as f64;
    let n2 = seq.n2() as f64;
    let check1 = n1 >= threshold;
    let check2 = n2 >= threshold;
    if !check1 && !check2 {
        return true;
    }
    let bound1 = consts.alpha * (n1 * ln_n).sqrt();
    let bound12 = consts.alpha * ((n1 + n2) * ln_n).sqrt();
    let bound2 = consts.alpha * (n2 * ln_n).sqrt();

    let (mut o1, mut o2, mut o2s) = (0usize, 0usize, 0usize);
    let (mut eta1, mut eta2) = (0usize, 0usize);
    for step in 0..=n {
        if step > 0 {
            let i = step - 1;
            match r.arrivals()[i] {
                Customer::Type1 => o1 += 1,
                Customer::Type2 => {
                    o2 += 1;
                    if r.assignment().is_member(i) {
                        o2s += 1;
                    }
                }
                Customer::Empty => {}
            }
            match seq.slots()[i] {
                Customer::Type1 => eta1 += 1,
                Customer::Type2 => eta2 += 1,
                Customer::Empty => {}
            }
        }
        let lambda = step as f64 / n as f64;
        let t1 = (1.0 - p) * eta1 as f64 + p * lambda * n1;
        let t2 = (1.0 - p) * eta2 as f64 + p * lambda * n2;
        let t2s = p * lambda * n2;
        if check1
            && ((o1 as f64 - t1).abs() >= bound1 || ((o1 + o2) as f64 - (t1 + t2)).abs() >= bound12)
        {
            return false;
        }
        if check2 && ((o2 as f64 - t2).abs() >= bound2 || (o2s as f64 - t2s).abs() >= bound2) {
            return false;
        }
    }
    true
}

/// Plain-text instance file: a header line `n=<int> a=<float>` followed by
/// one line of comma-separated slot tokens.
#[derive(Debug, Clone, PartialEq)]
pub struct InstanceFile {
    pub sequence: InitialSequence,
    pub a: f64,
    a_text: String,
}

impl InstanceFile {
    pub fn new(sequence: InitialSequence, a: f64) -> Self {
        Self {
            sequence,
            a,
            a_text: format!("{a}"),
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty instance file".into()))?;
        let body = lines
            .next()
            .ok_or_else(|| Error::Parse("missing slot line".into()))?;
        if lines.any(|l| !l.is_empty()) {
            return Err(Error::Parse("trailing content after slot line".into()));
        }
        let mut fields = header.split(' ');
        let n_field = fields.next().unwrap_or_default();
        let a_field = fields
            .next()
            .ok_or_else(|| Error::Parse("header must be `n=<int> a=<float>`".into()))?;
        if fields.next().is_some() {
            return Err(Error::Parse("header must be `n=<int> a=<float>`".into()));
        }
        let n: usize = n_field
            .strip_prefix("n=")
            .and_then(|v| v.parse().ok())
            .ok_or_else(|| Error::Parse(format!("bad horizon field {n_field:?}")))?;
        let a_text = a_field
            .strip_prefix("a=")
            .ok_or_else(|| Error::Parse(format!("bad revenue field {a_field:?}")))?;
        let a: f64 = a_text
            .parse()
            .map_err(|_| Error::Parse(format!("bad revenue value {a_text:?}")))?;
        if !(a > 0.0 && a < 1.0) {
            return Err(Error::InvalidInstance(format!("a = {a} is not in (0, 1)")));
        }
        let sequence = InitialSequence::from_tokens(body)?;
        if sequence.n() != n {
            return Err(Error::InvalidInstance(format!(
                "header says n={n} but {} slots were given",
                sequence.n()
            )));
        }
        Ok(Self {
            sequence,
            a,
            a_text: a_text.to_string(),
        })
    }

    pub fn read(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }
}

impl fmt::Display for InstanceFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n={} a={}", self.sequence.n(), self.a_text)?;
        writeln!(f, "{}", self.sequence.to_tokens())
    }
}
