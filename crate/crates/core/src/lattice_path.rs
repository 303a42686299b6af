//! Words over the steps `U = (1,1)` and `D = (1,-1)`: Dyck and Grand-Dyck
//! classification, pattern counts, axis crossings, and the crossing-corrected
//! height statistic.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PathError {
    #[error("empty step word")]
    Empty,
    #[error("invalid step character {ch:?} at position {position}")]
    BadChar { ch: char, position: usize },
    #[error("word {0} is not a Grand-Dyck path")]
    NotGrandDyck(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Step {
    U,
    D,
}

impl Step {
    pub fn delta(self) -> i64 {
        match self {
            Step::U => 1,
            Step::D => -1,
        }
    }

    fn as_char(self) -> char {
        match self {
            Step::U => 'U',
            Step::D => 'D',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pattern {
    Dud,
    Udu,
}

impl Pattern {
    fn steps(self) -> [Step; 3] {
        match self {
            Pattern::Dud => [Step::D, Step::U, Step::D],
            Pattern::Udu => [Step::U, Step::D, Step::U],
        }
    }
}

/// A lattice path given by its step sequence, starting at `(0, 0)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StepWord {
    steps: Vec<Step>,
}

impl StepWord {
    pub fn new(steps: Vec<Step>) -> Result<Self, PathError> {
        if steps.is_empty() {
            return Err(PathError::Empty);
        }
        Ok(StepWord { steps })
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

    pub fn up_count(&self) -> usize {
        self.steps.iter().filter(|&&s| s == Step::U).count()
    }

    pub fn down_count(&self) -> usize {
        self.len() - self.up_count()
    }

    /// Ordinates `y_0 = 0, y_1, ..., y_L`.
    pub fn heights(&self) -> Vec<i64> {
        let mut y = 0;
        let mut out = Vec::with_capacity(self.len() + 1);
        out.push(0);
        for s in &self.steps {
            y += s.delta();
            out.push(y);
        }
        out
    }

    pub fn is_balanced(&self) -> bool {
        self.up_count() * 2 == self.len()
    }

    pub fn starts_with_up(&self) -> bool {
        self.steps[0] == Step::U
    }

    pub fn is_dyck(&self) -> bool {
        self.is_balanced() && self.heights().iter().all(|&y| y >= 0)
    }

    pub fn is_grand_dyck(&self) -> bool {
        self.is_balanced() && self.starts_with_up()
    }

    pub fn classify(&self) -> PathClass {
        PathClass {
            balanced: self.is_balanced(),
            starts_with_u: self.starts_with_up(),
            dyck: self.is_dyck(),
            grand_dyck: self.is_grand_dyck(),
        }
    }

    /// Occurrences of `pattern` as three consecutive steps.
    pub fn pattern_count(&self, pattern: Pattern) -> usize {
        let pat = pattern.steps();
        self.steps.windows(3).filter(|w| *w == pat).count()
    }

    /// Steps read right to left, each keeping its letter.
    pub fn reversed(&self) -> StepWord {
        StepWord {
            steps: self.steps.iter().rev().copied().collect(),
        }
    }

    /// Abscissae of interior axis points where the path changes sign, i.e.
    /// the incoming and outgoing steps are equal.
    pub fn crossings(&self) -> Vec<usize> {
        let heights = self.heights();
        (1..self.len())
            .filter(|&x| heights[x] == 0 && self.steps[x - 1] == self.steps[x])
            .collect()
    }

    /// `Height(a, b) = |b| - c_a` for every point, where `c_a` counts the
    /// crossings at abscissae strictly less than `a`.
    pub fn modified_heights(&self) -> Vec<i64> {
        let heights = self.heights();
        let crossing_at: Vec<bool> = {
            let mut v = vec![false; self.len() + 1];
            for x in self.crossings() {
                v[x] = true;
            }
            v
        };
        let mut before = 0i64;
        heights
            .iter()
            .enumerate()
            .map(|(a, &b)| {
                let h = b.abs() - before;
                if crossing_at[a] {
                    before += 1;
                }
                h
            })
            .collect()
    }

    /// `(Height, ordinate)` of the endpoint of every `U` step, in step order.
    pub fn up_endpoints(&self) -> Vec<(i64, i64)> {
        self.endpoints_of(Step::U)
    }

    fn endpoints_of(&self, step: Step) -> Vec<(i64, i64)> {
        let modified = self.modified_heights();
        let heights = self.heights();
        self.steps
            .iter()
            .enumerate()
            .filter(|(_, &s)| s == step)
            .map(|(t, _)| (modified[t + 1], heights[t + 1]))
            .collect()
    }

    pub fn height_stats(&self) -> Result<PathStats, PathError> {
        if !self.is_grand_dyck() {
            return Err(PathError::NotGrandDyck(self.to_string()));
        }
        let modified = self.modified_heights();
        let mut nbu_profile = BTreeMap::new();
        for (h, _) in self.endpoints_of(Step::U) {
            *nbu_profile.entry(h).or_insert(0) += 1;
        }
        Ok(PathStats {
            semilength: self.up_count(),
            cross: self.crossings().len(),
            height_max: *modified.iter().max().expect("at least one point"),
            nbu_profile,
            d_end_heights: self
                .endpoints_of(Step::D)
                .into_iter()
                .map(|(h, _)| h)
                .collect(),
            dud_count: self.pattern_count(Pattern::Dud),
            udu_count: self.pattern_count(Pattern::Udu),
        })
    }
}

impl fmt::Display for StepWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.steps
            .iter()
            .try_for_each(|s| write!(f, "{}", s.as_char()))
    }
}

impl FromStr for StepWord {
    type Err = PathError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let steps = s
            .trim()
            .chars()
            .enumerate()
            .map(|(position, ch)| match ch {
                'U' => Ok(Step::U),
                'D' => Ok(Step::D),
                ch => Err(PathError::BadChar { ch, position }),
            })
            .collect::<Result<Vec<_>, _>>()?;
        StepWord::new(steps)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PathClass {
    pub balanced: bool,
    pub starts_with_u: bool,
    pub dyck: bool,
    pub grand_dyck: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PathStats {
    pub semilength: usize,
    pub cross: usize,
    pub height_max: i64,
    /// Modified height of a `U` endpoint mapped to the number of such endpoints.
    pub nbu_profile: BTreeMap<i64, usize>,
    pub d_end_heights: Vec<i64>,
    pub dud_count: usize,
    pub udu_count: usize,
}

impl PathStats {
    /// Number of `U` steps whose endpoint has modified height `i + 1`.
    pub fn nbu(&self, i: i64) -> usize {
        self.nbu_profile.get(&(i + 1)).copied().unwrap_or(0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PathFamily {
    Dyck,
    DyckStar,
    GrandDyck,
    GrandDyckStar,
    GrandDyckUduFree,
}

impl PathFamily {
    pub fn contains(self, p: &StepWord) -> bool {
        match self {
            PathFamily::Dyck => p.is_dyck(),
            PathFamily::DyckStar => p.is_dyck() && p.pattern_count(Pattern::Dud) == 0,
            PathFamily::GrandDyck => p.is_grand_dyck(),
            PathFamily::GrandDyckStar => p.is_grand_dyck() && p.pattern_count(Pattern::Dud) == 0,
            PathFamily::GrandDyckUduFree => p.is_grand_dyck() && p.pattern_count(Pattern::Udu) == 0,
        }
    }
}

/// Semilength-`n` members of `family`, lexicographic with `U < D`.
pub fn enumerate(family: PathFamily, n: usize) -> impl Iterator<Item = StepWord> {
    BalancedWords::new(n).filter(move |p| family.contains(p))
}

/// Balanced words starting with `U`, by repeated next-permutation.
#[derive(Debug, Clone)]
struct BalancedWords {
    current: Option<Vec<Step>>,
}

impl BalancedWords {
    fn new(n: usize) -> Self {
        let current = (n >= 1).then(|| {
            let mut v = vec![Step::U; n];
            v.extend(std::iter::repeat_n(Step::D, n));
            v
        });
        BalancedWords { current }
    }
}

fn next_permutation(v: &mut [Step]) -> bool {
    let Some(i) = v.windows(2).rposition(|w| w[0] < w[1]) else {
        return false;
    };
    let j = v
        .iter()
        .rposition(|&s| s > v[i])
        .expect("pivot has a successor");
    v.swap(i, j);
    v[i + 1..].reverse();
    true
}

impl Iterator for BalancedWords {
    type Item = StepWord;

    fn next(&mut self) -> Option<StepWord> {
        let steps = self.current.take()?;
        let mut next = steps.clone();
        if next_permutation(&mut next) && next[0] == Step::U {
            self.current = Some(next);
        }
        Some(StepWord { steps })
    }
}
