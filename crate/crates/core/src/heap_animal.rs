//! Directed animals on the square and triangular lattices, viewed either as
//! explicit point sets or as pyramids of dimers under gravity.
//!
//! A dimer in column `c` covers the cells `c` and `c + 1`, so two dimers
//! interact exactly when their columns differ by at most one. A point `(x, y)`
//! of an animal becomes a dimer in column `x - y`.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use serde::Serialize;
use thiserror::Error;

/// Largest animal size accepted by the brute-force enumerator.
pub const BRUTE_FORCE_MAX: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HeapError {
    #[error("the first dimer must be dropped in column 0, got {0}")]
    BadGround(i32),
    #[error("dimer dropped in column {0} does not touch the heap")]
    Detached(i32),
    #[error("not a heap: {0}")]
    NotAHeap(String),
    #[error("point set does not contain the origin")]
    MissingOrigin,
    #[error("point set is not a directed animal on the {0:?} lattice")]
    NotDirected(Lattice),
    #[error("brute-force enumeration supports n <= {max}, got {n}")]
    TooLarge { n: usize, max: usize },
    #[error("cannot parse {0:?}")]
    Parse(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Lattice {
    Square,
    Triangular,
}

impl Lattice {
    fn moves(self) -> &'static [(u32, u32)] {
        match self {
            Lattice::Square => &[(0, 1), (1, 0)],
            Lattice::Triangular => &[(0, 1), (1, 0), (1, 1)],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Dimer {
    pub column: i32,
    pub level: u32,
}

impl Dimer {
    pub fn new(column: i32, level: u32) -> Self {
        Dimer { column, level }
    }

    pub fn overlaps(self, other: Dimer) -> bool {
        (self.column - other.column).abs() <= 1
    }
}

impl Ord for Dimer {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.level, self.column).cmp(&(other.level, other.column))
    }
}

impl PartialOrd for Dimer {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Dimers stacked under gravity, with no constraint on the ground pieces.
#[derive(Debug, Clone, Default)]
pub(crate) struct Pile {
    dimers: Vec<Dimer>,
}

impl Pile {
    pub(crate) fn new() -> Self {
        Pile::default()
    }

    /// Drops a dimer and returns where it came to rest.
    pub(crate) fn drop_at(&mut self, column: i32) -> Dimer {
        let level = self
            .dimers
            .iter()
            .filter(|d| (d.column - column).abs() <= 1)
            .map(|d| d.level + 1)
            .max()
            .unwrap_or(0);
        let dimer = Dimer { column, level };
        self.dimers.push(dimer);
        dimer
    }

    /// Drops the pieces of `heap` bottom-up with their columns shifted.
    pub(crate) fn drop_heap(&mut self, heap: &Heap, shift: i32) {
        for d in heap.dimers() {
            self.drop_at(d.column + shift);
        }
    }

    pub(crate) fn into_heap(self) -> Result<Heap, HeapError> {
        Heap::from_dimers(self.dimers)
    }
}

/// A pyramid of dimers whose unique ground piece sits in column 0.
///
/// Dimers are kept sorted by `(level, column)`, which is also the canonical
/// form used for equality, ordering and hashing.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Heap {
    dimers: Vec<Dimer>,
}

impl Heap {
    pub fn single() -> Self {
        Heap {
            dimers: vec![Dimer::new(0, 0)],
        }
    }

    pub fn from_dimers(mut dimers: Vec<Dimer>) -> Result<Self, HeapError> {
        dimers.sort();
        if dimers.is_empty() {
            return Err(HeapError::NotAHeap("no dimers".into()));
        }
        let ground: Vec<_> = dimers.iter().filter(|d| d.level == 0).collect();
        if ground.len() != 1 || ground[0].column != 0 {
            return Err(HeapError::NotAHeap(
                "expected a single ground dimer in column 0".into(),
            ));
        }
        for (i, a) in dimers.iter().enumerate() {
            for b in &dimers[i + 1..] {
                if a.level == b.level && a.overlaps(*b) {
                    return Err(HeapError::NotAHeap(format!(
                        "dimers at columns {} and {} overlap on level {}",
                        a.column, b.column, a.level
                    )));
                }
            }
            if a.level > 0
                && !dimers
                    .iter()
                    .any(|b| b.level + 1 == a.level && a.overlaps(*b))
            {
                return Err(HeapError::NotAHeap(format!(
                    "dimer ({},{}) is not supported",
                    a.column, a.level
                )));
            }
        }
        Ok(Heap { dimers })
    }

    /// Drops a dimer in `column` onto `heap`, or starts a new heap.
    pub fn drop(heap: Option<&Heap>, column: i32) -> Result<Heap, HeapError> {
        match heap {
            None if column != 0 => Err(HeapError::BadGround(column)),
            None => Ok(Heap::single()),
            Some(h) => {
                let mut pile = Pile {
                    dimers: h.dimers.clone(),
                };
                if pile.drop_at(column).level == 0 {
                    return Err(HeapError::Detached(column));
                }
                pile.into_heap()
            }
        }
    }

    pub fn dimers(&self) -> &[Dimer] {
        &self.dimers
    }

    pub fn len(&self) -> usize {
        self.dimers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dimers.is_empty()
    }

    pub fn min_column(&self) -> i32 {
        self.dimers.iter().map(|d| d.column).min().unwrap_or(0)
    }

    pub fn max_column(&self) -> i32 {
        self.dimers.iter().map(|d| d.column).max().unwrap_or(0)
    }

    /// All pieces lie in columns `>= 0`.
    pub fn is_half(&self) -> bool {
        self.min_column() >= 0
    }

    /// Number of pieces resting directly on a piece of the same column.
    pub fn stacked_pairs(&self) -> usize {
        let cells: BTreeSet<(i32, u32)> = self.dimers.iter().map(|d| (d.column, d.level)).collect();
        self.dimers
            .iter()
            .filter(|d| d.level > 0 && cells.contains(&(d.column, d.level - 1)))
            .count()
    }

    /// No piece rests directly on a piece of the same column.
    pub fn is_strict(&self) -> bool {
        self.stacked_pairs() == 0
    }

    pub fn stats(&self) -> AnimalStats {
        let lw = -i64::from(self.min_column());
        let rw = i64::from(self.max_column()) + 1;
        let mut nbp_profile = BTreeMap::new();
        for d in &self.dimers {
            *nbp_profile.entry(i64::from(d.column) + 1).or_insert(0) += 1;
        }
        AnimalStats {
            area: self.len(),
            lw,
            rw,
            width: lw + rw,
            diag: self.stacked_pairs(),
            nbp_profile,
        }
    }

    /// The animal whose heap this is. Each piece gets the smallest
    /// anti-diagonal index `x + y` allowed by the pieces beneath it that it
    /// touches: one more than a neighbouring column, two more than its own.
    pub fn to_animal(&self) -> PointAnimal {
        let mut placed: Vec<(Dimer, i64)> = Vec::with_capacity(self.len());
        let mut points = BTreeSet::new();
        for &d in &self.dimers {
            let s = placed
                .iter()
                .filter(|(b, _)| b.level < d.level && d.overlaps(*b))
                .map(|&(b, s)| s + if b.column == d.column { 2 } else { 1 })
                .max()
                .unwrap_or(0);
            placed.push((d, s));
            let c = i64::from(d.column);
            points.insert((((s + c) / 2) as u32, ((s - c) / 2) as u32));
        }
        PointAnimal { points }
    }
}

impl fmt::Display for Heap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_pairs(f, self.dimers.iter().map(|d| (d.column, d.level as i32)))
    }
}

impl FromStr for Heap {
    type Err = HeapError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let pairs = parse_pairs(s)?;
        let dimers = pairs
            .into_iter()
            .map(|(c, l)| {
                u32::try_from(l)
                    .map(|l| Dimer::new(c as i32, l))
                    .map_err(|_| HeapError::Parse(s.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Heap::from_dimers(dimers)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AnimalStats {
    pub area: usize,
    pub lw: i64,
    pub rw: i64,
    pub width: i64,
    pub diag: usize,
    /// `i` mapped to the number of pieces in column `i - 1`.
    pub nbp_profile: BTreeMap<i64, usize>,
}

impl AnimalStats {
    pub fn nbp(&self, i: i64) -> usize {
        self.nbp_profile.get(&i).copied().unwrap_or(0)
    }
}

/// Reachability of every point from the origin using the lattice moves.
pub fn is_directed(points: &BTreeSet<(u32, u32)>, lattice: Lattice) -> Result<bool, HeapError> {
    if !points.contains(&(0, 0)) {
        return Err(HeapError::MissingOrigin);
    }
    let mut seen = BTreeSet::from([(0u32, 0u32)]);
    let mut queue = VecDeque::from([(0u32, 0u32)]);
    while let Some((x, y)) = queue.pop_front() {
        for &(dx, dy) in lattice.moves() {
            let next = (x + dx, y + dy);
            if points.contains(&next) && seen.insert(next) {
                queue.push_back(next);
            }
        }
    }
    Ok(seen.len() == points.len())
}

/// A directed animal given by its lattice points.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PointAnimal {
    points: BTreeSet<(u32, u32)>,
}

impl PointAnimal {
    /// Accepts any point set that is directed on the triangular lattice.
    pub fn new(points: BTreeSet<(u32, u32)>) -> Result<Self, HeapError> {
        if is_directed(&points, Lattice::Triangular)? {
            Ok(PointAnimal { points })
        } else {
            Err(HeapError::NotDirected(Lattice::Triangular))
        }
    }

    pub fn points(&self) -> &BTreeSet<(u32, u32)> {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn is_square(&self) -> bool {
        is_directed(&self.points, Lattice::Square).unwrap_or(false)
    }

    /// All points satisfy `y <= x`.
    pub fn is_subdiagonal(&self) -> bool {
        self.points.iter().all(|&(x, y)| y <= x)
    }

    /// Mirror image about the diagonal `y = x`.
    pub fn reflect(&self) -> PointAnimal {
        PointAnimal {
            points: self.points.iter().map(|&(x, y)| (y, x)).collect(),
        }
    }

    /// Drops one dimer per point in column `x - y`, in order of `x + y`.
    /// Points on the same anti-diagonal have columns at least two apart, so
    /// the order within an anti-diagonal does not matter.
    pub fn to_heap(&self) -> Heap {
        let mut pile = Pile::new();
        for (x, y) in self.points.iter().sorted_by_key(|&&(x, y)| (x + y, x)) {
            pile.drop_at(*x as i32 - *y as i32);
        }
        pile.into_heap()
            .expect("a directed animal always yields a pyramid")
    }
}

impl fmt::Display for PointAnimal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_pairs(f, self.points.iter().map(|&(x, y)| (x as i32, y as i32)))
    }
}

impl FromStr for PointAnimal {
    type Err = HeapError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let points = parse_pairs(s)?
            .into_iter()
            .map(|(x, y)| {
                let x = u32::try_from(x).map_err(|_| HeapError::Parse(s.to_string()))?;
                let y = u32::try_from(y).map_err(|_| HeapError::Parse(s.to_string()))?;
                Ok((x, y))
            })
            .collect::<Result<BTreeSet<_>, HeapError>>()?;
        PointAnimal::new(points)
    }
}

/// Every `n`-point directed animal on `lattice`.
///
/// Animals are grown one point at a time: removing a point with no successor
/// inside an animal leaves an animal, so every `n`-animal extends some
/// `(n-1)`-animal by one successor point. Each candidate is re-checked with
/// [`is_directed`].
pub fn enumerate_bruteforce(
    n: usize,
    lattice: Lattice,
    subdiagonal: bool,
) -> Result<BTreeSet<PointAnimal>, HeapError> {
    if n > BRUTE_FORCE_MAX {
        return Err(HeapError::TooLarge {
            n,
            max: BRUTE_FORCE_MAX,
        });
    }
    if n == 0 {
        return Ok(BTreeSet::new());
    }
    let mut layer = BTreeSet::from([BTreeSet::from([(0u32, 0u32)])]);
    for _ in 1..n {
        let mut next = BTreeSet::new();
        for points in &layer {
            for &(x, y) in points {
                for &(dx, dy) in lattice.moves() {
                    let p = (x + dx, y + dy);
                    if points.contains(&p) {
                        continue;
                    }
                    let mut grown = points.clone();
                    grown.insert(p);
                    next.insert(grown);
                }
            }
        }
        layer = next;
    }
    let mut out = BTreeSet::new();
    for points in layer {
        if !is_directed(&points, lattice)? {
            return Err(HeapError::NotDirected(lattice));
        }
        let animal = PointAnimal { points };
        if !subdiagonal || animal.is_subdiagonal() {
            out.insert(animal);
        }
    }
    Ok(out)
}

/// Every `n`-point directed animal, by testing all `n`-subsets of the box
/// `max(x, y) <= n - 1` that contain the origin. Exponential; small `n` only.
pub fn enumerate_by_subsets(
    n: usize,
    lattice: Lattice,
) -> Result<BTreeSet<PointAnimal>, HeapError> {
    if n == 0 {
        return Ok(BTreeSet::new());
    }
    let span = n as u32;
    let candidates: Vec<(u32, u32)> = (0..span)
        .flat_map(|x| (0..span).map(move |y| (x, y)))
        .filter(|&p| p != (0, 0))
        .collect();
    let mut out = BTreeSet::new();
    for rest in candidates.into_iter().combinations(n - 1) {
        let mut points: BTreeSet<(u32, u32)> = rest.into_iter().collect();
        points.insert((0, 0));
        if is_directed(&points, lattice)? {
            out.insert(PointAnimal { points });
        }
    }
    Ok(out)
}

fn write_pairs(f: &mut fmt::Formatter<'_>, pairs: impl Iterator<Item = (i32, i32)>) -> fmt::Result {
    for (i, (a, b)) in pairs.enumerate() {
        if i > 0 {
            f.write_str(";")?;
        }
        write!(f, "({a},{b})")?;
    }
    Ok(())
}

fn parse_pairs(s: &str) -> Result<Vec<(i64, i64)>, HeapError> {
    let err = || HeapError::Parse(s.to_string());
    s.trim()
        .split(';')
        .map(|tok| {
            let inner = tok
                .trim()
                .strip_prefix('(')
                .and_then(|t| t.strip_suffix(')'))
                .ok_or_else(err)?;
            let (a, b) = inner.split_once(',').ok_or_else(err)?;
            Ok((
                a.trim().parse().map_err(|_| err())?,
                b.trim().parse().map_err(|_| err())?,
            ))
        })
        .collect()
}
