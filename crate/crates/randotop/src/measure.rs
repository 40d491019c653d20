//! Exact model of the measure algebra on `[0,1)`.
//!
//! Sets are finite unions of half-open rational intervals `[lo,hi)`, kept in a
//! normalized form (sorted, strictly separated). With half-open intervals a
//! partition of `[0,1)` is literal, so equality up to null sets is plain list
//! equality and every measure identity below holds exactly.

use std::fmt;

use num::{BigInt, BigRational, One, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Exact rational scalar used everywhere in the crate.
pub type Q = BigRational;

/// Shorthand for constructing a rational from machine integers.
pub fn rat(numer: i64, denom: i64) -> Q {
    Q::new(BigInt::from(numer), BigInt::from(denom))
}

fn check_unit_interval(x: &Q, what: &str) -> Result<()> {
    if x < &Q::zero() || x > &Q::one() {
        return Err(Error::domain(format!("{what} must lie in [0,1], got {x}")));
    }
    Ok(())
}

/// A normalized finite union of half-open intervals `[lo,hi)` inside `[0,1)`.
///
/// Invariants: `lo < hi` for every interval, and `hi` of each interval is
/// strictly below `lo` of the next (touching or overlapping raw intervals are
/// merged by [`IntervalSet::normalize`]).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct IntervalSet {
    intervals: Vec<(Q, Q)>,
}

impl IntervalSet {
    /// The empty set.
    pub fn empty() -> Self {
        IntervalSet { intervals: Vec::new() }
    }

    /// The whole space `Ω = [0,1)`.
    pub fn unit() -> Self {
        IntervalSet { intervals: vec![(Q::zero(), Q::one())] }
    }

    /// Builds the union of the raw intervals, dropping empty pairs (`lo >= hi`)
    /// and merging touching or overlapping ones.
    pub fn normalize(raw: Vec<(Q, Q)>) -> Result<Self> {
        let mut kept: Vec<(Q, Q)> = Vec::with_capacity(raw.len());
        for (lo, hi) in raw {
            check_unit_interval(&lo, "interval endpoint")?;
            check_unit_interval(&hi, "interval endpoint")?;
            if lo < hi {
                kept.push((lo, hi));
            }
        }
        kept.sort();
        Ok(Self::merge_sorted(kept))
    }

    /// Merges a sorted list of nonempty intervals; `[a,b) ∪ [b,c) = [a,c)`.
    fn merge_sorted(sorted: Vec<(Q, Q)>) -> Self {
        let mut intervals: Vec<(Q, Q)> = Vec::with_capacity(sorted.len());
        for (lo, hi) in sorted {
            match intervals.last_mut() {
                Some((_, prev_hi)) if lo <= *prev_hi => {
                    if hi > *prev_hi {
                        *prev_hi = hi;
                    }
                }
                _ => intervals.push((lo, hi)),
            }
        }
        IntervalSet { intervals }
    }

    /// The normalized interval list.
    pub fn intervals(&self) -> &[(Q, Q)] {
        &self.intervals
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    /// Exact Lebesgue measure `λ`, the sum of the interval lengths.
    pub fn measure(&self) -> Q {
        self.intervals.iter().map(|(lo, hi)| hi - lo).sum()
    }

    /// Membership of a single point.
    pub fn contains(&self, x: &Q) -> bool {
        self.intervals.iter().any(|(lo, hi)| lo <= x && x < hi)
    }

    fn boolean(&self, other: &IntervalSet, keep: impl Fn(bool, bool) -> bool) -> IntervalSet {
        let mut cuts: Vec<Q> = Vec::with_capacity(2 * (self.intervals.len() + other.intervals.len()) + 2);
        cuts.push(Q::zero());
        cuts.push(Q::one());
        for (lo, hi) in self.intervals.iter().chain(other.intervals.iter()) {
            cuts.push(lo.clone());
            cuts.push(hi.clone());
        }
        cuts.sort();
        cuts.dedup();
        let two = rat(2, 1);
        let mut kept = Vec::new();
        for w in cuts.windows(2) {
            let mid = (&w[0] + &w[1]) / &two;
            if keep(self.contains(&mid), other.contains(&mid)) {
                kept.push((w[0].clone(), w[1].clone()));
            }
        }
        Self::merge_sorted(kept)
    }

    pub fn union(&self, other: &IntervalSet) -> IntervalSet {
        self.boolean(other, |a, b| a || b)
    }

    pub fn intersect(&self, other: &IntervalSet) -> IntervalSet {
        self.boolean(other, |a, b| a && b)
    }

    pub fn difference(&self, other: &IntervalSet) -> IntervalSet {
        self.boolean(other, |a, b| a && !b)
    }

    /// Symmetric difference `A Δ B`.
    pub fn symmdiff(&self, other: &IntervalSet) -> IntervalSet {
        self.boolean(other, |a, b| a != b)
    }

    /// Complement inside `Ω = [0,1)`.
    pub fn complement(&self) -> IntervalSet {
        self.boolean(&IntervalSet::empty(), |a, _| !a)
    }

    pub fn is_subset(&self, other: &IntervalSet) -> bool {
        self.difference(other).is_empty()
    }

    pub fn is_disjoint(&self, other: &IntervalSet) -> bool {
        self.intersect(other).is_empty()
    }

    /// Distance `d(A,B) = λ(A Δ B)` of the measure algebra.
    pub fn distance(&self, other: &IntervalSet) -> Q {
        self.symmdiff(other).measure()
    }

    /// The leftmost subset of `self` of measure `clamp(m, 0, λ(self))`,
    /// swept from the left endpoint. Monotone nested in `m`.
    pub fn prefix_of_measure(&self, m: &Q) -> IntervalSet {
        let mut goal = m.clone();
        if goal < Q::zero() {
            goal = Q::zero();
        }
        let mut out = Vec::new();
        let mut acc = Q::zero();
        for (lo, hi) in &self.intervals {
            if acc >= goal {
                break;
            }
            let len = hi - lo;
            let room = &goal - &acc;
            if len <= room {
                out.push((lo.clone(), hi.clone()));
                acc += len;
            } else {
                out.push((lo.clone(), lo + room));
                break;
            }
        }
        IntervalSet { intervals: out }
    }

    /// Mirror of [`IntervalSet::prefix_of_measure`], swept from the right.
    pub fn suffix_of_measure(&self, m: &Q) -> IntervalSet {
        let mut goal = m.clone();
        if goal < Q::zero() {
            goal = Q::zero();
        }
        let mut out = Vec::new();
        let mut acc = Q::zero();
        for (lo, hi) in self.intervals.iter().rev() {
            if acc >= goal {
                break;
            }
            let len = hi - lo;
            let room = &goal - &acc;
            if len <= room {
                out.push((lo.clone(), hi.clone()));
                acc += len;
            } else {
                out.push((hi - room, hi.clone()));
                break;
            }
        }
        out.reverse();
        IntervalSet { intervals: out }
    }

    /// The map `g`: removes from `A` its leftmost part of measure `u·λ(A)`.
    ///
    /// Satisfies `g(A,0) = A`, `λ(g(A,u)) = λ(A)(1-u)`, `g(A,u) ⊇ g(A,v)` for
    /// `u ≤ v`, `g(Ω_v,u) = [uv,v)`, and the estimate
    /// `λ(g(E,u) Δ g(F,v)) ≤ 4λ(E Δ F) + |v-u|`.
    pub fn g_map(&self, u: &Q) -> Result<IntervalSet> {
        check_unit_interval(u, "g parameter")?;
        Ok(self.difference(&self.prefix_of_measure(&(u * self.measure()))))
    }

    /// The companion `ǧ(A,u) = g(A,1-u)`: keeps the rightmost part of `A` of
    /// measure `u·λ(A)`. Satisfies the semigroup law
    /// `ǧ(ǧ(A,u),v) = ǧ(A,uv)` exactly.
    pub fn g_check(&self, u: &Q) -> Result<IntervalSet> {
        check_unit_interval(u, "ǧ parameter")?;
        Ok(self.suffix_of_measure(&(u * self.measure())))
    }

    /// `ǧ` extended by constants to all rationals: the whole set for `t ≥ 1`,
    /// empty for `t ≤ 0`.
    pub fn g_check_clamped(&self, t: &Q) -> IntervalSet {
        if t >= &Q::one() {
            self.clone()
        } else if t <= &Q::zero() {
            IntervalSet::empty()
        } else {
            self.suffix_of_measure(&(t * self.measure()))
        }
    }

    /// The retracting action `t·A = ǧ(A,t)` of the multiplicative monoid
    /// `[0,1]` on the measure algebra.
    pub fn scale_action(t: &Q, a: &IntervalSet) -> Result<IntervalSet> {
        a.g_check(t)
    }

    /// The raising companion `h(A,u) = ᶜg(ᶜA,u)`.
    ///
    /// Satisfies `h(A,0) = A`, `h(A,1) = Ω`, `λ(h(A,u)) = u + (1-u)λ(A)`,
    /// monotonicity in `u`, and `h(Ω_t,u) = Ω_{u+(1-u)t}`.
    pub fn h_map(&self, u: &Q) -> Result<IntervalSet> {
        Ok(self.complement().g_map(u)?.complement())
    }

    /// Rescales all endpoints by `c` (forward) or `1/c` (inverse).
    pub fn affine_scale(&self, c: &Q, direction: ScaleDirection) -> Result<IntervalSet> {
        if c <= &Q::zero() {
            return Err(Error::domain(format!("scale factor must be positive, got {c}")));
        }
        let map = |x: &Q| match direction {
            ScaleDirection::Forward => x * c,
            ScaleDirection::Inverse => x / c,
        };
        let mut out = Vec::with_capacity(self.intervals.len());
        for (lo, hi) in &self.intervals {
            let (lo, hi) = (map(lo), map(hi));
            if hi > Q::one() {
                return Err(Error::domain(format!(
                    "affine image escapes [0,1): endpoint {hi}"
                )));
            }
            out.push((lo, hi));
        }
        Ok(IntervalSet { intervals: out })
    }
}

/// Direction of [`IntervalSet::affine_scale`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScaleDirection {
    Forward,
    Inverse,
}

/// The exhaustion set `Ω_t = [0,t)`; monotone in `t` with `λ(Ω_t) = t`.
pub fn exhaustion(t: &Q) -> Result<IntervalSet> {
    check_unit_interval(t, "exhaustion parameter")?;
    if t.is_zero() {
        Ok(IntervalSet::empty())
    } else {
        Ok(IntervalSet { intervals: vec![(Q::zero(), t.clone())] })
    }
}

/// Pointwise evaluation of the path map `Φ`.
///
/// With `a = q_u·λ(E_u)` and `α = λ(A ∩ E_u)` the result is
/// `ǧ(A ∩ E_u, a/α) ∪ ǧ(E_u ∖ A, (a-α)/λ(E_u ∖ A))` with clamped `ǧ` and
/// zero-denominator terms contributing the empty set. The result `B` satisfies
/// `B ⊆ E_u` and `λ(B) = q_u·λ(E_u)`.
pub fn phi_pointwise(q_u: &Q, e_u: &IntervalSet, a: &IntervalSet) -> Result<IntervalSet> {
    check_unit_interval(q_u, "Φ ratio")?;
    let target = q_u * e_u.measure();
    let inter = a.intersect(e_u);
    let alpha = inter.measure();
    let rest = e_u.difference(a);
    let rest_measure = rest.measure();
    let part_in = if alpha.is_zero() {
        IntervalSet::empty()
    } else {
        inter.g_check_clamped(&(&target / &alpha))
    };
    let part_out = if rest_measure.is_zero() {
        IntervalSet::empty()
    } else {
        rest.g_check_clamped(&((&target - &alpha) / &rest_measure))
    };
    Ok(part_in.union(&part_out))
}

/// A nested sequence `X_1 ⊆ X_2 ⊆ … ⊆ X_n` of interval sets; a point of the
/// ultriangle model of the simplex.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Chain {
    sets: Vec<IntervalSet>,
}

impl Chain {
    pub fn new(sets: Vec<IntervalSet>) -> Result<Self> {
        for w in sets.windows(2) {
            if !w[0].is_subset(&w[1]) {
                return Err(Error::invariant("chain entries must be nested".to_string()));
            }
        }
        Ok(Chain { sets })
    }

    pub fn sets(&self) -> &[IntervalSet] {
        &self.sets
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    /// Max-metric of the ultriangle: `max_i λ(X_i Δ Y_i)`.
    pub fn distance(&self, other: &Chain) -> Result<Q> {
        if self.len() != other.len() {
            return Err(Error::arity(format!(
                "chain lengths differ: {} vs {}",
                self.len(),
                other.len()
            )));
        }
        Ok(self
            .sets
            .iter()
            .zip(&other.sets)
            .map(|(a, b)| a.distance(b))
            .max()
            .unwrap_or_else(Q::zero))
    }
}

/// The interpolation map `J`: a set `Y` with `X_k ⊆ Y ⊆ X_{k+1}` and
/// `λ(Y) = c`, where `k` is the bracket with `λ(X_k) ≤ c < λ(X_{k+1})`
/// (conventions `X_0 = ∅`, `X_{n+1} = Ω`). Computed as
/// `Y = X_k ∪ g(X_{k+1} ∖ X_k, (λ(X_{k+1})-c)/λ(X_{k+1} ∖ X_k))`;
/// monotone nested in `c`.
pub fn interpolate_chain(chain: &Chain, c: &Q) -> Result<IntervalSet> {
    check_unit_interval(c, "interpolation level")?;
    let mut lower = IntervalSet::empty();
    // Largest k with λ(X_k) ≤ c.
    for x in chain.sets() {
        if &x.measure() <= c {
            lower = x.clone();
        } else {
            break;
        }
    }
    let upper = chain
        .sets()
        .iter()
        .find(|x| &x.measure() > c)
        .cloned()
        .unwrap_or_else(IntervalSet::unit);
    let gap = upper.difference(&lower);
    let gap_measure = gap.measure();
    if gap_measure.is_zero() {
        return Ok(lower);
    }
    let a = (upper.measure() - c) / gap_measure;
    Ok(lower.union(&gap.g_map(&a)?))
}

impl fmt::Display for IntervalSet {
    /// Textual form `[p/q,r/s)∪[t/u,v/w)`, `∅` when empty.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.intervals.is_empty() {
            return write!(f, "∅");
        }
        for (i, (lo, hi)) in self.intervals.iter().enumerate() {
            if i > 0 {
                write!(f, "∪")?;
            }
            write!(f, "[{lo},{hi})")?;
        }
        Ok(())
    }
}

impl Serialize for IntervalSet {
    /// JSON form: a list of `[lo, hi]` pairs of reduced-fraction strings.
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let pairs: Vec<[String; 2]> = self
            .intervals
            .iter()
            .map(|(lo, hi)| [lo.to_string(), hi.to_string()])
            .collect();
        pairs.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for IntervalSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let pairs = Vec::<[String; 2]>::deserialize(deserializer)?;
        let mut raw = Vec::with_capacity(pairs.len());
        for [lo, hi] in pairs {
            let lo: Q = lo.parse().map_err(|e| D::Error::custom(format!("bad rational {lo}: {e}")))?;
            let hi: Q = hi.parse().map_err(|e| D::Error::custom(format!("bad rational {hi}: {e}")))?;
            raw.push((lo, hi));
        }
        IntervalSet::normalize(raw).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn set(pairs: &[(i64, i64, i64, i64)]) -> IntervalSet {
        IntervalSet::normalize(pairs.iter().map(|&(a, b, c, d)| (rat(a, b), rat(c, d))).collect())
            .unwrap()
    }

    /// Independent oracle: rebuilds a set from membership of midpoints of the
    /// cells of a fixed refinement grid. Exact as long as `denom` is a
    /// multiple of every endpoint denominator involved.
    fn from_membership(denom: i64, pred: impl Fn(&Q) -> bool) -> IntervalSet {
        let mut raw = Vec::new();
        for k in 0..denom {
            let lo = rat(k, denom);
            let hi = rat(k + 1, denom);
            let mid = (&lo + &hi) / rat(2, 1);
            if pred(&mid) {
                raw.push((lo, hi));
            }
        }
        IntervalSet::normalize(raw).unwrap()
    }

    const ORACLE_GRID: i64 = 64;

    fn oracle_boolean(a: &IntervalSet, b: &IntervalSet, keep: impl Fn(bool, bool) -> bool) -> IntervalSet {
        from_membership(ORACLE_GRID, |x| keep(a.contains(x), b.contains(x)))
    }

    #[test]
    fn normalize_merges_touching_intervals() {
        assert_eq!(set(&[(0, 1, 1, 2), (1, 2, 1, 1)]), IntervalSet::unit());
    }

    #[test]
    fn normalize_drops_empty_intervals() {
        assert_eq!(set(&[(1, 4, 1, 8)]), IntervalSet::empty());
    }

    #[test]
    fn normalize_unions_overlapping_intervals() {
        // Oracle-checked by hand: [0,1/3) ∪ [1/4,1/2) = [0,1/2).
        assert_eq!(set(&[(0, 1, 1, 3), (1, 4, 1, 2)]), set(&[(0, 1, 1, 2)]));
    }

    #[test]
    fn normalize_rejects_endpoints_outside_unit() {
        assert!(IntervalSet::normalize(vec![(rat(0, 1), rat(3, 2))]).is_err());
        assert!(IntervalSet::normalize(vec![(rat(-1, 4), rat(1, 2))]).is_err());
    }

    #[test]
    fn symmdiff_matches_hand_value() {
        let a = set(&[(0, 1, 1, 2)]);
        let b = set(&[(1, 4, 3, 4)]);
        let expected = set(&[(0, 1, 1, 4), (1, 2, 3, 4)]);
        assert_eq!(a.symmdiff(&b), expected);
        assert_eq!(oracle_boolean(&a, &b, |x, y| x != y), expected);
    }

    #[test]
    fn intersection_with_complement_is_empty() {
        let a = set(&[(1, 8, 1, 3), (1, 2, 9, 10)]);
        assert!(a.intersect(&a.complement()).is_empty());
        assert_eq!(a.union(&a.complement()), IntervalSet::unit());
    }

    #[test]
    fn union_with_empty_is_identity() {
        let a = set(&[(1, 8, 1, 3)]);
        assert_eq!(a.union(&IntervalSet::empty()), a);
    }

    #[test]
    fn measure_examples() {
        assert_eq!(IntervalSet::unit().measure(), rat(1, 1));
        assert_eq!(IntervalSet::empty().measure(), rat(0, 1));
        assert_eq!(set(&[(0, 1, 1, 4), (1, 2, 3, 4)]).measure(), rat(1, 2));
    }

    #[test]
    fn exhaustion_examples() {
        assert_eq!(exhaustion(&rat(0, 1)).unwrap(), IntervalSet::empty());
        assert_eq!(exhaustion(&rat(1, 1)).unwrap(), IntervalSet::unit());
        assert_eq!(exhaustion(&rat(1, 3)).unwrap(), set(&[(0, 1, 1, 3)]));
        assert!(exhaustion(&rat(4, 3)).is_err());
    }

    #[test]
    fn prefix_sweeps_from_left() {
        let a = set(&[(0, 1, 1, 4), (1, 2, 3, 4)]);
        assert_eq!(a.prefix_of_measure(&rat(3, 8)), set(&[(0, 1, 1, 4), (1, 2, 5, 8)]));
        assert_eq!(a.prefix_of_measure(&rat(0, 1)), IntervalSet::empty());
        assert_eq!(a.suffix_of_measure(&a.measure()), a);
        // Clamped beyond the total measure.
        assert_eq!(a.prefix_of_measure(&rat(7, 8)), a);
    }

    #[test]
    fn g_map_examples() {
        assert_eq!(IntervalSet::unit().g_map(&rat(1, 2)).unwrap(), set(&[(1, 2, 1, 1)]));
        let a = set(&[(0, 1, 1, 4), (1, 2, 3, 4)]);
        assert_eq!(a.g_map(&rat(0, 1)).unwrap(), a);
        assert_eq!(a.g_map(&rat(1, 2)).unwrap(), set(&[(1, 2, 3, 4)]));
        assert!(a.g_map(&rat(3, 2)).is_err());
    }

    #[test]
    fn g_check_examples() {
        let a = set(&[(0, 1, 1, 4), (1, 2, 3, 4)]);
        assert_eq!(a.g_check(&rat(1, 1)).unwrap(), a);
        let half = IntervalSet::scale_action(&rat(1, 2), &IntervalSet::unit()).unwrap();
        let quarter = IntervalSet::scale_action(&rat(1, 2), &half).unwrap();
        assert_eq!(quarter, set(&[(3, 4, 1, 1)]));
        assert_eq!(quarter, IntervalSet::scale_action(&rat(1, 4), &IntervalSet::unit()).unwrap());
        assert_eq!(a.g_check_clamped(&rat(5, 3)), a);
        assert_eq!(a.g_check_clamped(&rat(-2, 3)), IntervalSet::empty());
    }

    #[test]
    fn h_map_on_exhaustions() {
        // h(Ω_t,u) = Ω_{u+(1-u)t}
        for (t, u) in [(rat(1, 3), rat(1, 2)), (rat(0, 1), rat(2, 7)), (rat(4, 5), rat(1, 5))] {
            let lhs = exhaustion(&t).unwrap().h_map(&u).unwrap();
            let rhs = exhaustion(&(&u + (Q::one() - &u) * &t)).unwrap();
            assert_eq!(lhs, rhs);
        }
        let a = set(&[(1, 8, 1, 3)]);
        assert_eq!(a.h_map(&rat(1, 1)).unwrap(), IntervalSet::unit());
        assert_eq!(a.h_map(&rat(0, 1)).unwrap(), a);
    }

    #[test]
    fn h_map_adds_leftmost_complement_mass() {
        // h = ᶜ∘g∘ᶜ with prefix-removing g: the added mass is the leftmost
        // part of the complement, so λ grows to u + (1-u)λ(A).
        let a = set(&[(1, 2, 1, 1)]);
        let h = a.h_map(&rat(1, 2)).unwrap();
        assert_eq!(h, set(&[(0, 1, 1, 4), (1, 2, 1, 1)]));
        assert_eq!(h.measure(), rat(3, 4));
        assert!(a.is_subset(&h));
    }

    #[test]
    fn affine_scale_examples() {
        assert_eq!(
            IntervalSet::unit().affine_scale(&rat(1, 2), ScaleDirection::Forward).unwrap(),
            set(&[(0, 1, 1, 2)])
        );
        assert_eq!(
            set(&[(0, 1, 1, 3), (1, 2, 2, 3)])
                .affine_scale(&rat(2, 3), ScaleDirection::Inverse)
                .unwrap(),
            set(&[(0, 1, 1, 2), (3, 4, 1, 1)])
        );
        assert_eq!(
            IntervalSet::empty().affine_scale(&rat(7, 3), ScaleDirection::Forward).unwrap(),
            IntervalSet::empty()
        );
        assert!(IntervalSet::unit().affine_scale(&rat(2, 1), ScaleDirection::Forward).is_err());
        assert!(IntervalSet::unit().affine_scale(&rat(1, 2), ScaleDirection::Inverse).is_err());
    }

    #[test]
    fn phi_fixes_matching_subset() {
        // A ⊆ E with q·λ(E) = λ(A) gives back A.
        let e = set(&[(0, 1, 1, 2), (3, 4, 1, 1)]);
        let a = set(&[(1, 4, 1, 2)]);
        let q = a.measure() / e.measure();
        assert_eq!(phi_pointwise(&q, &e, &a).unwrap(), a);
    }

    #[test]
    fn phi_at_full_ratio_gives_whole_set() {
        let e = set(&[(0, 1, 1, 2), (3, 4, 1, 1)]);
        let a = set(&[(1, 8, 1, 4), (2, 3, 7, 8)]);
        assert_eq!(phi_pointwise(&rat(1, 1), &e, &a).unwrap(), e);
    }

    #[test]
    fn phi_matches_displayed_formula() {
        let b = phi_pointwise(&rat(1, 2), &IntervalSet::unit(), &set(&[(0, 1, 1, 4)])).unwrap();
        assert_eq!(b, set(&[(0, 1, 1, 4), (3, 4, 1, 1)]));
    }

    #[test]
    fn interpolate_chain_examples() {
        let chain = Chain::new(vec![set(&[(0, 1, 1, 4)]), set(&[(0, 1, 3, 4)])]).unwrap();
        assert_eq!(interpolate_chain(&chain, &rat(1, 4)).unwrap(), set(&[(0, 1, 1, 4)]));
        assert_eq!(interpolate_chain(&chain, &rat(1, 1)).unwrap(), IntervalSet::unit());
        assert_eq!(
            interpolate_chain(&chain, &rat(1, 2)).unwrap(),
            set(&[(0, 1, 1, 4), (1, 2, 3, 4)])
        );
        assert!(Chain::new(vec![set(&[(0, 1, 1, 2)]), set(&[(3, 4, 1, 1)])]).is_err());
    }

    #[test]
    fn display_format() {
        assert_eq!(set(&[(0, 1, 1, 2), (2, 3, 1, 1)]).to_string(), "[0,1/2)∪[2/3,1)");
        assert_eq!(IntervalSet::empty().to_string(), "∅");
    }

    #[test]
    fn json_round_trip() {
        let a = set(&[(0, 1, 1, 2), (2, 3, 1, 1)]);
        let js = serde_json::to_string(&a).unwrap();
        assert_eq!(js, r#"[["0","1/2"],["2/3","1"]]"#);
        let back: IntervalSet = serde_json::from_str(&js).unwrap();
        assert_eq!(back, a);
    }

    prop_compose! {
        fn arb_q()(n in 0i64..=64, d in 1i64..=64) -> Q {
            let d = d.max(n);
            rat(n, d.max(1))
        }
    }

    prop_compose! {
        fn arb_set()(cuts in prop::collection::vec((0i64..=64, 1i64..=64), 0..8)) -> IntervalSet {
            let raw: Vec<(Q, Q)> = cuts
                .chunks(2)
                .filter_map(|c| {
                    if c.len() == 2 {
                        let a = rat(c[0].0.min(c[0].1), c[0].0.max(c[0].1).max(1));
                        let b = rat(c[1].0.min(c[1].1), c[1].0.max(c[1].1).max(1));
                        Some(if a <= b { (a, b) } else { (b, a) })
                    } else {
                        None
                    }
                })
                .collect();
            IntervalSet::normalize(raw).unwrap()
        }
    }

    prop_compose! {
        /// Sets whose endpoints are multiples of 1/ORACLE_GRID, so the
        /// membership oracle is exact on them.
        fn arb_grid_set()(cuts in prop::collection::vec((0i64..=ORACLE_GRID, 0i64..=ORACLE_GRID), 0..5)) -> IntervalSet {
            let raw: Vec<(Q, Q)> = cuts
                .into_iter()
                .map(|(a, b)| (rat(a.min(b), ORACLE_GRID), rat(a.max(b), ORACLE_GRID)))
                .collect();
            IntervalSet::normalize(raw).unwrap()
        }
    }

    fn well_formed(s: &IntervalSet) -> bool {
        s.intervals().iter().all(|(lo, hi)| lo < hi && *lo >= Q::zero() && *hi <= Q::one())
            && s.intervals().windows(2).all(|w| w[0].1 < w[1].0)
    }

    proptest! {
        #[test]
        fn boolean_ops_match_oracle(a in arb_grid_set(), b in arb_grid_set()) {
            prop_assert_eq!(a.union(&b), oracle_boolean(&a, &b, |x, y| x || y));
            prop_assert_eq!(a.intersect(&b), oracle_boolean(&a, &b, |x, y| x && y));
            prop_assert_eq!(a.difference(&b), oracle_boolean(&a, &b, |x, y| x && !y));
            prop_assert_eq!(a.symmdiff(&b), oracle_boolean(&a, &b, |x, y| x != y));
            prop_assert!(well_formed(&a.union(&b)));
            prop_assert!(well_formed(&a.complement()));
        }

        #[test]
        fn g_contracts_hold(a in arb_set(), u in arb_q(), v in arb_q()) {
            let g_u = a.g_map(&u).unwrap();
            prop_assert!(well_formed(&g_u));
            prop_assert_eq!(g_u.measure(), a.measure() * (Q::one() - &u));
            let (small, large) = if u <= v { (u.clone(), v.clone()) } else { (v.clone(), u.clone()) };
            prop_assert!(a.g_map(&large).unwrap().is_subset(&a.g_map(&small).unwrap()));
            // Semigroup law for ǧ.
            prop_assert_eq!(
                a.g_check(&u).unwrap().g_check(&v).unwrap(),
                a.g_check(&(&u * &v)).unwrap()
            );
        }

        #[test]
        fn g_on_exhaustions(u in arb_q(), v in arb_q()) {
            let omega_v = exhaustion(&v).unwrap();
            let expected = IntervalSet::normalize(vec![(&u * &v, v.clone())]).unwrap();
            prop_assert_eq!(omega_v.g_map(&u).unwrap(), expected);
        }

        #[test]
        fn g_lipschitz_estimate(e in arb_set(), f in arb_set(), u in arb_q(), v in arb_q()) {
            let lhs = e.g_map(&u).unwrap().distance(&f.g_map(&v).unwrap());
            let diff = if u >= v { &u - &v } else { &v - &u };
            prop_assert!(lhs <= rat(4, 1) * e.distance(&f) + diff);
        }

        #[test]
        fn h_contracts_hold(a in arb_set(), e in arb_set(), f in arb_set(), u in arb_q(), v in arb_q()) {
            let h_u = a.h_map(&u).unwrap();
            prop_assert_eq!(h_u.measure(), &u + (Q::one() - &u) * a.measure());
            let (small, large) = if u <= v { (&u, &v) } else { (&v, &u) };
            prop_assert!(a.h_map(small).unwrap().is_subset(&a.h_map(large).unwrap()));
            let lhs = e.h_map(&u).unwrap().distance(&f.h_map(&v).unwrap());
            let diff = if u >= v { &u - &v } else { &v - &u };
            prop_assert!(lhs <= rat(4, 1) * e.distance(&f) + diff);
        }

        #[test]
        fn phi_sandwich_and_measure(q in arb_q(), e in arb_set(), a in arb_set()) {
            let b = phi_pointwise(&q, &e, &a).unwrap();
            prop_assert!(b.is_subset(&e));
            prop_assert_eq!(b.measure(), &q * e.measure());
        }

        #[test]
        fn prefix_suffix_partition(a in arb_set(), m in arb_q()) {
            let m = m * a.measure();
            let p = a.prefix_of_measure(&m);
            let s = a.suffix_of_measure(&(a.measure() - &m));
            prop_assert_eq!(p.measure(), m);
            prop_assert!(p.is_disjoint(&s));
            prop_assert_eq!(p.union(&s), a);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn interpolation_contracts(sets in prop::collection::vec(arb_set(), 1..4), c in arb_q(), c2 in arb_q()) {
            // Build a nested chain by cumulative unions.
            let mut nested = Vec::new();
            let mut acc = IntervalSet::empty();
            for s in sets {
                acc = acc.union(&s);
                nested.push(acc.clone());
            }
            let chain = Chain::new(nested).unwrap();
            let y = interpolate_chain(&chain, &c).unwrap();
            prop_assert_eq!(y.measure(), c.clone());
            let mut lower = IntervalSet::empty();
            let mut upper = IntervalSet::unit();
            for x in chain.sets() {
                if x.measure() <= c { lower = x.clone(); }
            }
            for x in chain.sets().iter().rev() {
                if x.measure() > c { upper = x.clone(); }
            }
            prop_assert!(lower.is_subset(&y));
            prop_assert!(y.is_subset(&upper));
            // Monotone nesting in c.
            let y2 = interpolate_chain(&chain, &c2).unwrap();
            if c <= c2 {
                prop_assert!(y.is_subset(&y2));
            } else {
                prop_assert!(y2.is_subset(&y));
            }
        }
    }
}
