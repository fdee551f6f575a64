//! Generic sets, signed permutations with the ballot property, and the
//! collision-crossing bijection that shows the ballot count depends only on `n`.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand_core::RngCore;

use super::{caps, check_cap};
use crate::error::{Error, Result};
use crate::rational::{is_positive, to_scaled_integers, Rational};

/// How strongly a [`GenericSet`] has been certified.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Certificate {
    /// No nonzero integer relation with coefficients in `{-2, ..., 2}`.
    BoundedTwo,
    /// No two distinct disjoint index sets of equal weight (coefficients in `{-1, 0, 1}`).
    /// Enough for every nonempty signed partial sum to be nonzero.
    CollisionFree,
}

/// Positive, distinct rationals carrying a genericity certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenericSet {
    values: Vec<Rational>,
    certificate: Certificate,
}

fn validate_values(values: &[Rational]) -> Result<()> {
    if values.is_empty() {
        return Err(Error::domain("set must be nonempty"));
    }
    if let Some(v) = values.iter().find(|v| !is_positive(v)) {
        return Err(Error::domain(format!("set values must be positive, got {v}")));
    }
    for (i, a) in values.iter().enumerate() {
        if values[..i].contains(a) {
            return Err(Error::domain(format!("duplicate value {a}")));
        }
    }
    Ok(())
}

/// True if some nonzero coefficient vector in `{-bound, ..., bound}^n`
/// annihilates `values`. Meet-in-the-middle over the two halves.
fn has_bounded_relation(values: &[Rational], bound: i64) -> bool {
    let ints = to_scaled_integers(values);
    let half = ints.len() / 2;
    let (left, right) = ints.split_at(half);

    // sum -> (reached by the zero vector, reached by some nonzero vector)
    let mut table: HashMap<BigInt, (bool, bool)> = HashMap::new();
    for (sum, nonzero) in signed_sums(left, bound) {
        let e = table.entry(sum).or_insert((false, false));
        if nonzero {
            e.1 = true;
        } else {
            e.0 = true;
        }
    }
    signed_sums(right, bound).into_iter().any(|(sum, nonzero)| {
        let key = -sum;
        match table.get(&key) {
            Some(&(_, left_nonzero)) if !nonzero => left_nonzero,
            Some(_) => true,
            None => false,
        }
    })
}

fn signed_sums(values: &[BigInt], bound: i64) -> Vec<(BigInt, bool)> {
    let mut acc = vec![(BigInt::zero(), false)];
    for v in values {
        let mut next = Vec::with_capacity(acc.len() * (2 * bound as usize + 1));
        for (s, nz) in &acc {
            for c in -bound..=bound {
                next.push((s + v * c, *nz || c != 0));
            }
        }
        acc = next;
    }
    acc
}

/// Bounded-coefficient genericity test: no nonzero `c` in `{-2..2}^n` with
/// `sum c_i a_i = 0`.
pub fn is_generic(values: &[Rational]) -> Result<bool> {
    is_generic_capped(values, caps::GENERICITY)
}

pub fn is_generic_capped(values: &[Rational], cap: u64) -> Result<bool> {
    validate_values(values)?;
    check_cap("genericity n", values.len() as u64, cap, caps::GENERICITY_HARD)?;
    Ok(!has_bounded_relation(values, 2))
}

/// No two distinct disjoint index sets share a weight.
pub fn is_collision_free(values: &[Rational]) -> Result<bool> {
    validate_values(values)?;
    check_cap("collision-free n", values.len() as u64, caps::GENERICITY, caps::GENERICITY_HARD)?;
    Ok(!has_bounded_relation(values, 1))
}

impl GenericSet {
    /// Certifies `values` with the bounded `{-2..2}` test.
    pub fn new(values: Vec<Rational>) -> Result<Self> {
        if !is_generic(&values)? {
            return Err(Error::domain("values admit an integer relation with coefficients in {-2..2}"));
        }
        Ok(GenericSet {
            values,
            certificate: Certificate::BoundedTwo,
        })
    }

    /// Certifies with the strongest test that passes.
    pub fn certify(values: Vec<Rational>) -> Result<Self> {
        if is_generic(&values)? {
            return Ok(GenericSet {
                values,
                certificate: Certificate::BoundedTwo,
            });
        }
        if is_collision_free(&values)? {
            return Ok(GenericSet {
                values,
                certificate: Certificate::CollisionFree,
            });
        }
        Err(Error::domain("values have two disjoint index sets of equal weight"))
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn certificate(&self) -> Certificate {
        self.certificate
    }

    /// Weight of an index set given as a bitmask.
    pub fn weight(&self, mask: u32) -> Rational {
        self.values
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, v)| v.clone())
            .sum()
    }

    /// The same set with its first element replaced, re-certified.
    pub fn with_first(&self, value: Rational) -> Result<Self> {
        let mut values = self.values.clone();
        values[0] = value;
        GenericSet::certify(values)
    }

    /// Absolute values of arbitrary nonzero entries, certified.
    pub fn from_signed(values: &[Rational]) -> Result<Self> {
        GenericSet::certify(values.iter().map(|v| v.abs()).collect())
    }
}

impl fmt::Display for GenericSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// Rejection-samples a bounded-generic set of `n` positive rationals with
/// 32-bit numerators and denominators.
pub fn random_generic_set<R: RngCore>(n: usize, rng: &mut R) -> Result<GenericSet> {
    loop {
        let values: Vec<Rational> = (0..n)
            .map(|_| {
                let num = u64::from(rng.next_u32()) + 1;
                let den = u64::from(rng.next_u32()) + 1;
                Rational::new(num.into(), den.into())
            })
            .collect();
        if validate_values(&values).is_err() {
            continue;
        }
        if is_generic(&values)? {
            return Ok(GenericSet {
                values,
                certificate: Certificate::BoundedTwo,
            });
        }
    }
}

/// Every prefix sum is strictly positive. The empty sequence qualifies.
pub fn has_ballot_property<T>(seq: &[T]) -> bool
where
    T: Clone + Zero + PartialOrd,
{
    let mut acc = T::zero();
    for s in seq {
        acc = acc + s.clone();
        if acc <= T::zero() {
            return false;
        }
    }
    true
}

/// A permutation of set indices with a sign on each position.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedPermutation {
    order: Vec<usize>,
    negative: Vec<bool>,
}

impl SignedPermutation {
    /// `order` holds 0-based indices; `signs` holds `+1` / `-1`.
    pub fn new(order: Vec<usize>, signs: &[i8]) -> Result<Self> {
        if order.len() != signs.len() {
            return Err(Error::domain("order and signs differ in length"));
        }
        let mut seen = vec![false; order.len()];
        for &i in &order {
            if i >= order.len() || std::mem::replace(&mut seen[i], true) {
                return Err(Error::domain(format!("{order:?} is not a permutation")));
            }
        }
        let negative = signs
            .iter()
            .map(|&s| match s {
                1 => Ok(false),
                -1 => Ok(true),
                other => Err(Error::domain(format!("sign must be +1 or -1, got {other}"))),
            })
            .collect::<Result<_>>()?;
        Ok(SignedPermutation { order, negative })
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn signs(&self) -> Vec<i8> {
        self.negative.iter().map(|&n| if n { -1 } else { 1 }).collect()
    }

    /// The sequence `s_i = eps_i * a_{pi(i)}`.
    pub fn resolve(&self, set: &GenericSet) -> Vec<Rational> {
        self.order
            .iter()
            .zip(&self.negative)
            .map(|(&i, &neg)| {
                let v = set.values[i].clone();
                if neg {
                    -v
                } else {
                    v
                }
            })
            .collect()
    }

    pub fn is_ballot(&self, set: &GenericSet) -> bool {
        has_ballot_property(&self.resolve(set))
    }

    /// Reverses and negates the first `k` entries.
    fn flip_prefix(&self, k: usize) -> Self {
        let mut order = self.order.clone();
        let mut negative = self.negative.clone();
        order[..k].reverse();
        negative[..k].reverse();
        for n in &mut negative[..k] {
            *n = !*n;
        }
        SignedPermutation { order, negative }
    }
}

impl fmt::Display for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (pos, (&i, &neg)) in self.order.iter().zip(&self.negative).enumerate() {
            if pos > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}a{}", if neg { '-' } else { '+' }, i + 1)?;
        }
        write!(f, ")")
    }
}

/// Number of signed permutations of `set` with the ballot property.
///
/// Dynamic programme over signed subsets (each element absent, `+` or `-`):
/// the number of good orderings of a signed subset `T` is zero unless its
/// total is positive, and otherwise the sum over the element placed last.
/// That visits `3^n` states instead of the `2^n n!` sequences.
pub fn count_ballot_signed_perms(set: &GenericSet) -> Result<u64> {
    count_ballot_signed_perms_capped(set, caps::BALLOT)
}

pub fn count_ballot_signed_perms_capped(set: &GenericSet, cap: u64) -> Result<u64> {
    let n = set.len();
    check_cap("ballot enumeration n", n as u64, cap, caps::BALLOT_HARD)?;
    let ints = to_scaled_integers(&set.values);
    let pow3: Vec<usize> = (0..=n).map(|i| 3usize.pow(i as u32)).collect();
    let states = pow3[n];

    let mut sums: Vec<BigInt> = vec![BigInt::zero(); states];
    let mut ways: Vec<u64> = vec![0; states];
    ways[0] = 1;
    let mut total = 0u64;
    for state in 1..states {
        // lowest nonzero digit gives the incremental sum
        let mut i = 0;
        while (state / pow3[i]).is_multiple_of(3) {
            i += 1;
        }
        let digit = state / pow3[i] % 3;
        let base = state - digit * pow3[i];
        sums[state] = if digit == 1 {
            &sums[base] + &ints[i]
        } else {
            &sums[base] - &ints[i]
        };
        if !sums[state].is_positive() {
            continue;
        }
        let mut acc = 0u64;
        let mut full = true;
        for (j, p) in pow3[..n].iter().enumerate() {
            let d = state / p % 3;
            if d == 0 {
                full = false;
            } else {
                acc += ways[state - d * pow3[j]];
            }
        }
        ways[state] = acc;
        if full {
            total += acc;
        }
    }
    Ok(total)
}

/// Lists every ballot signed permutation by depth-first search, pruning a
/// branch as soon as a prefix sum is nonpositive.
pub fn ballot_signed_perms(set: &GenericSet) -> Result<Vec<SignedPermutation>> {
    let n = set.len();
    check_cap("ballot listing n", n as u64, 8, 8)?;
    let ints = to_scaled_integers(&set.values);
    let mut out = Vec::new();
    let mut order = Vec::with_capacity(n);
    let mut negative = Vec::with_capacity(n);
    let mut used = vec![false; n];
    dfs(&ints, &mut used, &mut order, &mut negative, &BigInt::zero(), &mut out);
    Ok(out)
}

fn dfs(
    ints: &[BigInt],
    used: &mut [bool],
    order: &mut Vec<usize>,
    negative: &mut Vec<bool>,
    sum: &BigInt,
    out: &mut Vec<SignedPermutation>,
) {
    if order.len() == ints.len() {
        out.push(SignedPermutation {
            order: order.clone(),
            negative: negative.clone(),
        });
        return;
    }
    for i in 0..ints.len() {
        if used[i] {
            continue;
        }
        for neg in [false, true] {
            let next = if neg { sum - &ints[i] } else { sum + &ints[i] };
            if !next.is_positive() {
                continue;
            }
            used[i] = true;
            order.push(i);
            negative.push(neg);
            dfs(ints, used, order, negative, &next, out);
            negative.pop();
            order.pop();
            used[i] = false;
        }
    }
}

/// All values `w(I) - w(J)` over disjoint index sets `I`, `J` of `rest`,
/// each with the witnessing pair of bitmasks.
fn collision_candidates(rest: &[Rational]) -> Vec<(Rational, u32, u32)> {
    let m = rest.len();
    let mut out = Vec::with_capacity(3usize.pow(m as u32));
    let mut digits = vec![0u8; m];
    loop {
        let (mut i_mask, mut j_mask) = (0u32, 0u32);
        let mut v = Rational::zero();
        for (k, &d) in digits.iter().enumerate() {
            match d {
                1 => {
                    i_mask |= 1 << k;
                    v += &rest[k];
                }
                2 => {
                    j_mask |= 1 << k;
                    v -= &rest[k];
                }
                _ => {}
            }
        }
        out.push((v, i_mask, j_mask));
        let mut k = 0;
        loop {
            if k == m {
                return out;
            }
            digits[k] += 1;
            if digits[k] < 3 {
                break;
            }
            digits[k] = 0;
            k += 1;
        }
    }
}

/// Collision values strictly inside `(lo, hi)`, descending, each verified
/// to come from a single pair of index sets.
fn collisions_between(rest: &[Rational], lo: &Rational, hi: &Rational) -> Result<Vec<Rational>> {
    let mut hits: Vec<(Rational, u32, u32)> = collision_candidates(rest)
        .into_iter()
        .filter(|(v, _, _)| v > lo && v < hi)
        .collect();
    hits.sort_by(|a, b| b.0.cmp(&a.0));
    for w in hits.windows(2) {
        if w[0].0 == w[1].0 {
            return Err(Error::verification(format!(
                "collision at {} is not unique (index-set pairs {:#b}/{:#b} and {:#b}/{:#b})",
                w[0].0, w[0].1, w[0].2, w[1].1, w[1].2
            )));
        }
    }
    Ok(hits.into_iter().map(|(v, _, _)| v).collect())
}

/// Values `v` in `(target, a_1)` at which replacing `a_1` by `v` creates a
/// collision, sorted descending.
pub fn collision_deltas(set: &GenericSet, target: &Rational) -> Result<Vec<Rational>> {
    let a1 = &set.values[0];
    if !is_positive(target) || target >= a1 {
        return Err(Error::domain(format!("target {target} must lie in (0, {a1})")));
    }
    let rest = &set.values[1..];
    if collision_candidates(rest).iter().any(|(v, _, _)| v == target) {
        return Err(Error::domain(format!("target {target} is itself a collision value")));
    }
    collisions_between(rest, target, a1)
}

/// Waypoint sets for lowering `a_1` to `target`: the start, the midpoint
/// between each pair of consecutive collision values, and the end. Adjacent
/// waypoints are separated by exactly one collision.
pub fn collision_walk(set: &GenericSet, target: &Rational) -> Result<Vec<GenericSet>> {
    let deltas = collision_deltas(set, target)?;
    let mut points = vec![set.values[0].clone()];
    for w in deltas.windows(2) {
        points.push((&w[0] + &w[1]) / Rational::from_integer(2.into()));
    }
    points.push(target.clone());
    points.into_iter().map(|p| set.with_first(p)).collect()
}

/// One collision crossing applied to a ballot signed permutation.
///
/// `from` and `to` differ only in their first element, with at most one
/// collision value between the two. If the sign/order pattern of `perm`
/// stays ballot under `to` it is returned unchanged; otherwise the unique
/// negative prefix of length `k` is reversed and negated.
pub fn collision_step_map(
    perm: &SignedPermutation,
    from: &GenericSet,
    to: &GenericSet,
) -> Result<SignedPermutation> {
    if from.len() != to.len() || perm.len() != from.len() {
        return Err(Error::domain("sets and permutation differ in size"));
    }
    if from.values[1..] != to.values[1..] {
        return Err(Error::domain("sets must differ only in their first element"));
    }
    let (lo, hi) = if from.values[0] < to.values[0] {
        (&from.values[0], &to.values[0])
    } else {
        (&to.values[0], &from.values[0])
    };
    let crossed = collisions_between(&from.values[1..], lo, hi)?;
    if crossed.len() > 1 {
        return Err(Error::domain(format!(
            "{} collisions between {lo} and {hi}; split into single-collision hops",
            crossed.len()
        )));
    }
    if !perm.is_ballot(from) {
        return Err(Error::domain(format!("{perm} lacks the ballot property on {from}")));
    }
    let moved = perm.resolve(to);
    let mut acc = Rational::zero();
    let mut negative_at = Vec::new();
    for (k, s) in moved.iter().enumerate() {
        acc += s;
        if acc.is_negative() {
            negative_at.push(k + 1);
        } else if acc.is_zero() {
            return Err(Error::verification(format!("zero prefix sum for {perm} on {to}")));
        }
    }
    let image = match negative_at.as_slice() {
        [] => perm.clone(),
        [k] => perm.flip_prefix(*k),
        many => {
            return Err(Error::verification(format!(
                "expected a unique negative prefix for {perm} on {to}, found {many:?}"
            )))
        }
    };
    if !image.is_ballot(to) {
        return Err(Error::verification(format!("image {image} of {perm} is not ballot on {to}")));
    }
    Ok(image)
}
