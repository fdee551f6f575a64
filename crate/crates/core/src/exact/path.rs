//! Lattice paths over `{U, D}` and `{U, H, D}` and the bijections between them.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Step {
    Up,
    Flat,
    Down,
}

impl Step {
    pub fn delta(self) -> i64 {
        match self {
            Step::Up => 1,
            Step::Flat => 0,
            Step::Down => -1,
        }
    }

    fn flipped(self) -> Step {
        match self {
            Step::Up => Step::Down,
            Step::Down => Step::Up,
            Step::Flat => Step::Flat,
        }
    }

    fn letter(self) -> char {
        match self {
            Step::Up => 'U',
            Step::Flat => 'H',
            Step::Down => 'D',
        }
    }
}

/// A step sequence; heights are recomputed on demand.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Path {
    steps: Vec<Step>,
}

impl Path {
    pub fn new(steps: Vec<Step>) -> Self {
        Path { steps }
    }

    /// The up-down path whose `i`-th step is `U` iff bit `i` of `mask` is set.
    pub fn from_mask(mask: u64, len: usize) -> Self {
        Path::new(
            (0..len)
                .map(|i| if mask >> i & 1 == 1 { Step::Up } else { Step::Down })
                .collect(),
        )
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Heights after each step, starting from 0 (the initial 0 is not included).
    pub fn heights(&self) -> Vec<i64> {
        self.steps
            .iter()
            .scan(0i64, |h, s| {
                *h += s.delta();
                Some(*h)
            })
            .collect()
    }

    pub fn end_height(&self) -> i64 {
        self.steps.iter().map(|s| s.delta()).sum()
    }

    pub fn stays_nonneg(&self) -> bool {
        self.heights().iter().all(|&h| h >= 0)
    }

    pub fn is_updown(&self) -> bool {
        !self.steps.contains(&Step::Flat)
    }

    pub fn count(&self, step: Step) -> usize {
        self.steps.iter().filter(|&&s| s == step).count()
    }
}

impl FromStr for Path {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c.to_ascii_uppercase() {
                'U' => Ok(Step::Up),
                'D' => Ok(Step::Down),
                'H' => Ok(Step::Flat),
                other => Err(Error::Parse(format!("invalid step {other:?} in path {s:?}"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Path::new)
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.steps.iter().try_for_each(|s| write!(f, "{}", s.letter()))
    }
}

fn require_updown(p: &Path) -> Result<()> {
    if !p.is_updown() {
        return Err(Error::domain(format!("{p} contains a horizontal step")));
    }
    Ok(())
}

/// Flips every step of `seg` except the last, which must be (and stays) `U`.
fn flip_all_but_last(seg: &mut [Step]) {
    let last = seg.len() - 1;
    debug_assert_eq!(seg[last], Step::Up);
    for s in &mut seg[..last] {
        *s = s.flipped();
    }
}

/// Maps a balanced up-down path to a path that never dips below zero.
///
/// The path is cut at its returns to zero. Segments starting with `U` are
/// kept; a segment starting with `D` has every step but the last flipped,
/// so it becomes a positive excursion whose final step is `U`.
pub fn updown_bijection_to_nonneg(p: &Path) -> Result<Path> {
    require_updown(p)?;
    if p.end_height() != 0 {
        return Err(Error::domain(format!("{p} does not end at height 0")));
    }
    let mut steps = p.steps.clone();
    let heights = p.heights();
    let mut start = 0;
    for (i, &h) in heights.iter().enumerate() {
        if h == 0 {
            if steps[start] == Step::Down {
                flip_all_but_last(&mut steps[start..=i]);
            }
            start = i + 1;
        }
    }
    Ok(Path::new(steps))
}

/// Inverse of [`updown_bijection_to_nonneg`].
///
/// A nonnegative path ending at `2r` contains `r` transformed segments.
/// The `i`-th starts right after the last visit to height `2i` and ends
/// with the step leaving height `2i + 1` for the last time.
pub fn updown_bijection_to_endzero(p: &Path) -> Result<Path> {
    require_updown(p)?;
    if !p.stays_nonneg() {
        return Err(Error::domain(format!("{p} dips below zero")));
    }
    let end = p.end_height();
    debug_assert!(end >= 0 && end % 2 == p.len() as i64 % 2);
    if end % 2 != 0 {
        return Err(Error::domain(format!("{p} has odd length")));
    }
    // position j is the height after j steps, position 0 is the origin
    let mut positions = vec![0i64];
    positions.extend(p.heights());
    let last_visit = |h: i64| positions.iter().rposition(|&x| x == h).expect("height reached");
    let mut steps = p.steps.clone();
    for i in 0..end / 2 {
        let start = last_visit(2 * i);
        let stop = last_visit(2 * i + 1);
        flip_all_but_last(&mut steps[start..=stop]);
    }
    Ok(Path::new(steps))
}

/// Contracts an up-down path of length `2n` starting with `U` to a Motzkin
/// path of length `n - 1`: drop the first and last steps, then map the pairs
/// `UU -> U`, `DD -> D`, and `UD`, `DU -> H`.
pub fn contract_to_motzkin(p: &Path) -> Result<Path> {
    require_updown(p)?;
    if p.len() < 2 || !p.len().is_multiple_of(2) {
        return Err(Error::domain(format!("length {} is not a positive even number", p.len())));
    }
    if p.steps[0] != Step::Up {
        return Err(Error::domain("path must start with U"));
    }
    let inner = &p.steps[1..p.len() - 1];
    let steps = inner
        .chunks_exact(2)
        .map(|pair| match (pair[0], pair[1]) {
            (Step::Up, Step::Up) => Step::Up,
            (Step::Down, Step::Down) => Step::Down,
            _ => Step::Flat,
        })
        .collect();
    Ok(Path::new(steps))
}
