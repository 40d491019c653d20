//! Randomized simplices and their probability laws.
//!
//! A point of the randomized `n`-simplex is an ordered partition of `[0,1)`
//! into `n+1` interval-set classes; its law is the vector of class measures.
//! Monotone maps between index sets act by merging and inserting classes, and
//! the nested-chain (ultriangle) coordinates give an equivalent description
//! used by the interpolation machinery.

use std::collections::BTreeSet;
use std::fmt;

use num::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::measure::{exhaustion, Chain, IntervalSet, Q};

/// A point of the standard simplex: `n+1` nonnegative rationals summing to 1.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ProbVector {
    entries: Vec<Q>,
}

impl ProbVector {
    pub fn new(entries: Vec<Q>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::invariant("probability vector must be nonempty"));
        }
        if entries.iter().any(|x| x < &Q::zero()) {
            return Err(Error::invariant("probability vector entries must be nonnegative"));
        }
        if entries.iter().sum::<Q>() != Q::one() {
            return Err(Error::invariant("probability vector entries must sum to 1"));
        }
        Ok(ProbVector { entries })
    }

    pub fn entries(&self) -> &[Q] {
        &self.entries
    }

    /// Simplex dimension `n` (one less than the number of entries).
    pub fn arity(&self) -> usize {
        self.entries.len() - 1
    }

    /// Cumulative sums `x_k = α_0 + … + α_k`.
    pub fn cumulative(&self) -> Vec<Q> {
        let mut acc = Q::zero();
        self.entries
            .iter()
            .map(|a| {
                acc += a;
                acc.clone()
            })
            .collect()
    }

    /// Pushforward along a monotone map: entry `i` of the image is the sum of
    /// the entries in the preimage of `i`.
    pub fn pushforward(&self, map: &MonotoneMap) -> Result<ProbVector> {
        if map.source_arity() != self.arity() {
            return Err(Error::arity(format!(
                "map source [{}] does not match vector arity [{}]",
                map.source_arity(),
                self.arity()
            )));
        }
        let mut out = vec![Q::zero(); map.target_arity() + 1];
        for (j, x) in self.entries.iter().enumerate() {
            out[map.values()[j]] += x;
        }
        Ok(ProbVector { entries: out })
    }

    /// Retraction of the simplex onto its `k`-th horn:
    /// `q(a)_i = a_i - m_k(a)` for `i ≠ k` and `q(a)_k = a_k + n·m_k(a)`,
    /// where `m_k(a) = min_{r ≠ k} a_r`.
    pub fn horn_law_retract(&self, k: usize) -> Result<ProbVector> {
        let n = self.arity();
        if k > n {
            return Err(Error::domain(format!("horn index {k} exceeds arity {n}")));
        }
        let m = self
            .entries
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != k)
            .map(|(_, x)| x.clone())
            .min()
            .unwrap_or_else(Q::zero);
        let entries = self
            .entries
            .iter()
            .enumerate()
            .map(|(i, x)| {
                if i == k {
                    x + crate::measure::rat(n as i64, 1) * &m
                } else {
                    x - &m
                }
            })
            .collect();
        Ok(ProbVector { entries })
    }

    /// True when some coordinate other than `k` vanishes.
    pub fn in_horn(&self, k: usize) -> bool {
        self.entries.iter().enumerate().any(|(i, x)| i != k && x.is_zero())
    }
}

impl fmt::Display for ProbVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl Serialize for ProbVector {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let strings: Vec<String> = self.entries.iter().map(|x| x.to_string()).collect();
        strings.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ProbVector {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let strings = Vec::<String>::deserialize(deserializer)?;
        let mut entries = Vec::with_capacity(strings.len());
        for s in strings {
            entries.push(s.parse::<Q>().map_err(|e| D::Error::custom(format!("bad rational {s}: {e}")))?);
        }
        ProbVector::new(entries).map_err(D::Error::custom)
    }
}

/// A weakly increasing map `[n] → [m]`, stored by its full value list.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MonotoneMap {
    values: Vec<usize>,
    target_arity: usize,
}

impl MonotoneMap {
    pub fn new(values: Vec<usize>, target_arity: usize) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::invariant("monotone map needs a nonempty source"));
        }
        if values.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::invariant("monotone map values must be weakly increasing"));
        }
        if values.iter().any(|&v| v > target_arity) {
            return Err(Error::invariant("monotone map value exceeds target arity"));
        }
        Ok(MonotoneMap { values, target_arity })
    }

    pub fn identity(n: usize) -> Self {
        MonotoneMap { values: (0..=n).collect(), target_arity: n }
    }

    /// The elementary face map `D_i^c : [n-1] → [n]` skipping `i`.
    pub fn elementary_face(i: usize, n: usize) -> Result<Self> {
        if n == 0 || i > n {
            return Err(Error::domain(format!("no face map D_{i} into [{n}]")));
        }
        let values = (0..n).map(|k| if k < i { k } else { k + 1 }).collect();
        Ok(MonotoneMap { values, target_arity: n })
    }

    /// The elementary degeneracy map `S_i^c : [n+1] → [n]` collapsing `i, i+1`.
    pub fn elementary_degeneracy(i: usize, n: usize) -> Result<Self> {
        if i > n {
            return Err(Error::domain(format!("no degeneracy map S_{i} onto [{n}]")));
        }
        let values = (0..=(n + 1)).map(|k| if k <= i { k } else { k - 1 }).collect();
        Ok(MonotoneMap { values, target_arity: n })
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    /// Source arity `n` of a map `[n] → [m]`.
    pub fn source_arity(&self) -> usize {
        self.values.len() - 1
    }

    /// Target arity `m` of a map `[n] → [m]`.
    pub fn target_arity(&self) -> usize {
        self.target_arity
    }

    pub fn is_injective(&self) -> bool {
        self.values.windows(2).all(|w| w[0] < w[1])
    }

    pub fn is_surjective(&self) -> bool {
        let hit: BTreeSet<usize> = self.values.iter().copied().collect();
        hit.len() == self.target_arity + 1
    }

    /// Composition `other ∘ self` of `self : [n] → [m]`, `other : [m] → [k]`.
    pub fn then(&self, other: &MonotoneMap) -> Result<MonotoneMap> {
        if other.source_arity() != self.target_arity {
            return Err(Error::arity(format!(
                "cannot compose [{}]→[{}] with [{}]→[{}]",
                self.source_arity(),
                self.target_arity,
                other.source_arity(),
                other.target_arity
            )));
        }
        Ok(MonotoneMap {
            values: self.values.iter().map(|&v| other.values[v]).collect(),
            target_arity: other.target_arity,
        })
    }

    pub fn preimage(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.values.iter().enumerate().filter(move |(_, &v)| v == i).map(|(j, _)| j)
    }
}

impl fmt::Display for MonotoneMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]→[{}]: (", self.source_arity(), self.target_arity)?;
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

/// A point of the randomized `n`-simplex: an ordered partition of `[0,1)`
/// into `n+1` pairwise disjoint interval-set classes.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RandomSimplex {
    classes: Vec<IntervalSet>,
}

impl RandomSimplex {
    pub fn new(classes: Vec<IntervalSet>) -> Result<Self> {
        if classes.is_empty() {
            return Err(Error::invariant("a random simplex needs at least one class"));
        }
        let mut union = IntervalSet::empty();
        for (i, c) in classes.iter().enumerate() {
            if !union.is_disjoint(c) {
                return Err(Error::invariant(format!("class {i} overlaps an earlier class")));
            }
            union = union.union(c);
        }
        if union != IntervalSet::unit() {
            return Err(Error::invariant("classes must cover [0,1)"));
        }
        Ok(RandomSimplex { classes })
    }

    pub fn classes(&self) -> &[IntervalSet] {
        &self.classes
    }

    pub fn class(&self, i: usize) -> &IntervalSet {
        &self.classes[i]
    }

    /// Simplex dimension `n` (one less than the number of classes).
    pub fn arity(&self) -> usize {
        self.classes.len() - 1
    }

    /// The probability-law map: the vector of class measures.
    pub fn law(&self) -> ProbVector {
        ProbVector { entries: self.classes.iter().map(IntervalSet::measure).collect() }
    }

    /// The canonical section of the law map: class `k` sits on the cumulative
    /// interval `[x_{k-1}, x_k)`.
    pub fn section(alpha: &ProbVector) -> RandomSimplex {
        let mut classes = Vec::with_capacity(alpha.entries.len());
        let mut lo = Q::zero();
        for a in &alpha.entries {
            let hi = &lo + a;
            classes.push(
                IntervalSet::normalize(vec![(lo.clone(), hi.clone())])
                    .expect("cumulative sums stay in [0,1]"),
            );
            lo = hi;
        }
        RandomSimplex { classes }
    }

    /// Pushforward along a monotone map `σ`: class `i` of the image is the
    /// union of the classes in `σ⁻¹(i)`.
    pub fn pushforward(&self, map: &MonotoneMap) -> Result<RandomSimplex> {
        if map.source_arity() != self.arity() {
            return Err(Error::arity(format!(
                "map source [{}] does not match simplex arity [{}]",
                map.source_arity(),
                self.arity()
            )));
        }
        let mut classes = vec![IntervalSet::empty(); map.target_arity() + 1];
        for (j, c) in self.classes.iter().enumerate() {
            let i = map.values()[j];
            classes[i] = classes[i].union(c);
        }
        Ok(RandomSimplex { classes })
    }

    /// Pushforward along the elementary face `D_i^c` (inserts an empty class).
    pub fn face(&self, i: usize) -> Result<RandomSimplex> {
        self.pushforward(&MonotoneMap::elementary_face(i, self.arity() + 1)?)
    }

    /// Pushforward along the elementary degeneracy `S_i^c` (merges classes
    /// `i` and `i+1`).
    pub fn degeneracy(&self, i: usize) -> Result<RandomSimplex> {
        if self.arity() == 0 {
            return Err(Error::domain("no degeneracy out of dimension 0"));
        }
        self.pushforward(&MonotoneMap::elementary_degeneracy(i, self.arity() - 1)?)
    }

    /// Indices of the classes with positive measure.
    pub fn essential_image(&self) -> BTreeSet<usize> {
        self.classes
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_empty())
            .map(|(i, _)| i)
            .collect()
    }

    /// Interior points are those whose essential image is all of `[n]`.
    pub fn is_interior(&self) -> bool {
        self.classes.iter().all(|c| !c.is_empty())
    }

    /// The probability-convergence metric
    /// `d(f,g) = λ{t : f(t) ≠ g(t)} = 1 - Σ_i λ(A_i ∩ B_i)`.
    pub fn distance(&self, other: &RandomSimplex) -> Result<Q> {
        if self.arity() != other.arity() {
            return Err(Error::arity("distance requires equal arities"));
        }
        let agree: Q = self
            .classes
            .iter()
            .zip(&other.classes)
            .map(|(a, b)| a.intersect(b).measure())
            .sum();
        Ok(Q::one() - agree)
    }

    /// Chain (ultriangle) coordinates `X_k = A_0 ∪ … ∪ A_{k-1}`, `k = 1…n`.
    pub fn to_chain(&self) -> Chain {
        let mut acc = IntervalSet::empty();
        let mut sets = Vec::with_capacity(self.arity());
        for c in &self.classes[..self.arity()] {
            acc = acc.union(c);
            sets.push(acc.clone());
        }
        Chain::new(sets).expect("cumulative unions are nested")
    }

    /// Inverse of [`RandomSimplex::to_chain`]: class `k` is `X_{k+1} ∖ X_k`
    /// with the conventions `X_0 = ∅`, `X_{n+1} = Ω`.
    pub fn from_chain(chain: &Chain) -> RandomSimplex {
        let mut classes = Vec::with_capacity(chain.len() + 1);
        let mut prev = IntervalSet::empty();
        for x in chain.sets() {
            classes.push(x.difference(&prev));
            prev = x.clone();
        }
        classes.push(prev.complement());
        RandomSimplex { classes }
    }

    /// Retraction of the randomized simplex onto the horn set
    /// `V_n^k = {∃ i ≠ k, λ(A_i) = 0}`: each class `i ≠ k` loses a prefix of
    /// measure `m = min_{r ≠ k} λ(A_r)` and class `k` absorbs the rest.
    pub fn horn_retract(&self, k: usize) -> Result<RandomSimplex> {
        let n = self.arity();
        if n == 0 {
            return Err(Error::domain("horn retraction needs dimension at least 1"));
        }
        if k > n {
            return Err(Error::domain(format!("horn index {k} exceeds arity {n}")));
        }
        let m = self
            .classes
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != k)
            .map(|(_, c)| c.measure())
            .min()
            .expect("n >= 1 leaves at least one class");
        let mut classes = vec![IntervalSet::empty(); n + 1];
        let mut off_k = IntervalSet::empty();
        for (i, c) in self.classes.iter().enumerate() {
            if i == k {
                continue;
            }
            let measure = c.measure();
            classes[i] = if measure.is_zero() { c.clone() } else { c.g_map(&(&m / measure))? };
            off_k = off_k.union(&classes[i]);
        }
        classes[k] = off_k.complement();
        Ok(RandomSimplex { classes })
    }

    /// True when some class other than `k` is null, i.e. the point lies in
    /// `V_n^k`.
    pub fn in_horn_set(&self, k: usize) -> bool {
        self.classes.iter().enumerate().any(|(i, c)| i != k && c.is_empty())
    }

    /// Drops the top class, which must be the terminal interval
    /// `[1-α_n, 1)`, and rescales the rest onto `[0,1)`.
    pub fn truncate_top_and_rescale(&self) -> Result<RandomSimplex> {
        let n = self.arity();
        if n == 0 {
            return Err(Error::domain("cannot truncate a 0-dimensional simplex"));
        }
        let top = &self.classes[n];
        let alpha_n = top.measure();
        let expected = exhaustion(&(Q::one() - &alpha_n))?.complement();
        if *top != expected {
            return Err(Error::precondition(format!(
                "top class must be the terminal interval [1-αₙ,1), got {top}"
            )));
        }
        let scale = Q::one() - &alpha_n;
        let mut classes = Vec::with_capacity(n);
        for c in &self.classes[..n] {
            classes.push(if scale.is_zero() {
                // αₙ = 1 forces all the remaining classes to be empty;
                // the truncated point is the unique vertex below.
                IntervalSet::empty()
            } else {
                c.affine_scale(&scale, crate::measure::ScaleDirection::Inverse)?
            });
        }
        if scale.is_zero() {
            classes[0] = IntervalSet::unit();
        }
        RandomSimplex::new(classes)
    }

    /// Chain action of a monotone map, the ultriangle analogue of
    /// [`RandomSimplex::pushforward`]: entry `i` of the image chain is
    /// `X_{1 + sup σ⁻¹({0..i-1})}` with `sup ∅ = -∞` and `X_{-∞} = ∅`
    /// (`X_{n+1} = Ω`).
    pub fn chain_action(map: &MonotoneMap, chain: &Chain) -> Result<Chain> {
        if map.source_arity() != chain.len() {
            return Err(Error::arity(format!(
                "map source [{}] does not match chain length {}",
                map.source_arity(),
                chain.len()
            )));
        }
        let mut sets = Vec::with_capacity(map.target_arity());
        for i in 1..=map.target_arity() {
            let sup = map.values().iter().enumerate().filter(|(_, &v)| v < i).map(|(j, _)| j).max();
            let entry = match sup {
                None => IntervalSet::empty(),
                Some(j) if j >= chain.len() => IntervalSet::unit(),
                Some(j) => chain.sets()[j].clone(),
            };
            sets.push(entry);
        }
        Chain::new(sets)
    }
}

impl fmt::Display for RandomSimplex {
    /// Textual form `{0: [0,1/2), 1: [1/2,5/6), 2: [5/6,1)}`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, c) in self.classes.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{i}: {c}")?;
        }
        write!(f, "}}")
    }
}

impl Serialize for RandomSimplex {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.classes.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for RandomSimplex {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let classes = Vec::<IntervalSet>::deserialize(deserializer)?;
        RandomSimplex::new(classes).map_err(D::Error::custom)
    }
}
