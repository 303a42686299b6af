//! The map between multisets and step words, the map between Grand-Dyck
//! words and heaps of dimers, heap factorization, and grammar-driven heap
//! enumeration.
//!
//! Every half heap (all pieces in columns `>= 0`) factors uniquely as
//!
//! * a single dimer,
//! * the ground dimer with a half heap `B` dropped one column to the right,
//! * the ground dimer with a half heap `B` dropped in column 0,
//! * the ground dimer, then `B` one column to the right, then `C` in column 0,
//!
//! and every other heap factors as a half heap `B` followed by an arbitrary
//! heap `C` dropped one column to the left. Words are built from these
//! factorizations: Dyck arches for half heaps, with successive components
//! alternating above and below the axis.

use std::collections::HashMap;

use thiserror::Error;

use crate::heap_animal::{Dimer, Heap, HeapError, Pile};
use crate::lattice_path::{Step, StepWord};
use crate::multiset::{Multiset, MultisetError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BijectionError {
    #[error("word {0} does not start with an up step")]
    NotStartingU(String),
    #[error("word {0} has no down step")]
    NoDownStep(String),
    #[error("word {0} is not a Grand-Dyck path")]
    NotGrandDyck(String),
    #[error("factorization failed for heap {heap}: {reason}")]
    FactorizationFailed { heap: String, reason: String },
    #[error("grammar produced heap {0} twice")]
    Duplicate(String),
    #[error(transparent)]
    Heap(#[from] HeapError),
    #[error(transparent)]
    Multiset(#[from] MultisetError),
}

/// Word `U^{π_1} D U^{π_2 - π_1} D ... D U^{k - π_n}`.
pub fn phi(m: &Multiset) -> StepWord {
    let mut steps = Vec::with_capacity(m.len() + m.bound() as usize);
    let mut last = 0;
    for &v in m.values() {
        steps.extend(std::iter::repeat_n(Step::U, (v - last) as usize));
        steps.push(Step::D);
        last = v;
    }
    steps.extend(std::iter::repeat_n(Step::U, (m.bound() - last) as usize));
    StepWord::new(steps).expect("multisets are non-empty")
}

/// `π_i` is the number of up steps before the `i`-th down step; `k` is the
/// total number of up steps.
pub fn phi_inv(p: &StepWord) -> Result<Multiset, BijectionError> {
    if !p.starts_with_up() {
        return Err(BijectionError::NotStartingU(p.to_string()));
    }
    let mut ups = 0i64;
    let mut values = Vec::new();
    for s in p.steps() {
        match s {
            Step::U => ups += 1,
            Step::D => values.push(ups),
        }
    }
    if values.is_empty() {
        return Err(BijectionError::NoDownStep(p.to_string()));
    }
    Ok(Multiset::new(&values, Some(ups as u32))?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FactorCase {
    I,
    Ii,
    Iii,
    Iv,
    V,
}

impl FactorCase {
    pub fn label(self) -> &'static str {
        match self {
            FactorCase::I => "i",
            FactorCase::Ii => "ii",
            FactorCase::Iii => "iii",
            FactorCase::Iv => "iv",
            FactorCase::V => "v",
        }
    }
}

/// One step of the unique factorization of a heap.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Factorization {
    /// A lone dimer.
    Single,
    /// Ground dimer with `b` resting one column to the right.
    Raised(Heap),
    /// Ground dimer with `b` resting directly on top.
    Stacked(Heap),
    /// Ground dimer, `b` one column to the right, then `c` in column 0.
    Split { b: Heap, c: Heap },
    /// Half heap `b`, then `c` dropped one column to the left.
    Offset { b: Heap, c: Heap },
}

impl Factorization {
    pub fn case(&self) -> FactorCase {
        match self {
            Factorization::Single => FactorCase::I,
            Factorization::Raised(_) => FactorCase::Ii,
            Factorization::Stacked(_) => FactorCase::Iii,
            Factorization::Split { .. } => FactorCase::Iv,
            Factorization::Offset { .. } => FactorCase::V,
        }
    }

    /// Rebuilds the heap by dropping the parts in order.
    pub fn compose(&self) -> Heap {
        let mut pile = Pile::new();
        match self {
            Factorization::Single => {
                pile.drop_at(0);
            }
            Factorization::Raised(b) => {
                pile.drop_at(0);
                pile.drop_heap(b, 1);
            }
            Factorization::Stacked(b) => {
                pile.drop_at(0);
                pile.drop_heap(b, 0);
            }
            Factorization::Split { b, c } => {
                pile.drop_at(0);
                pile.drop_heap(b, 1);
                pile.drop_heap(c, 0);
            }
            Factorization::Offset { b, c } => {
                pile.drop_heap(b, 0);
                pile.drop_heap(c, -1);
            }
        }
        pile.into_heap()
            .expect("composed parts always form a pyramid")
    }
}

/// Pieces of `dimers` lying above `root` in the heap order, `root` included.
/// `dimers` must be sorted by level.
fn upward_closure(dimers: &[Dimer], root: Dimer) -> Vec<Dimer> {
    let mut closure = vec![root];
    for &d in dimers {
        if d.level > root.level && closure.iter().any(|r| r.level < d.level && r.overlaps(d)) {
            closure.push(d);
        }
    }
    closure
}

fn rebuild(dimers: &[Dimer], shift: i32, whole: &Heap) -> Result<Heap, BijectionError> {
    let mut pile = Pile::new();
    for d in dimers {
        pile.drop_at(d.column + shift);
    }
    pile.into_heap()
        .map_err(|e| failed(whole, &format!("part is not a pyramid: {e}")))
}

fn failed(heap: &Heap, reason: &str) -> BijectionError {
    BijectionError::FactorizationFailed {
        heap: heap.to_string(),
        reason: reason.to_string(),
    }
}

/// Splits `h` into the parts of its factorization. The upper part `C` of the
/// two-part cases is the upward closure of the lowest piece in the column
/// where `C` is grounded; the remaining pieces form `B`.
pub fn factorize(h: &Heap) -> Result<Factorization, BijectionError> {
    let dimers = h.dimers();
    let result = if h.min_column() < 0 {
        let root = *dimers
            .iter()
            .find(|d| d.column == -1)
            .ok_or_else(|| failed(h, "negative columns without a piece in column -1"))?;
        let upper = upward_closure(dimers, root);
        let lower: Vec<Dimer> = dimers
            .iter()
            .filter(|d| !upper.contains(d))
            .copied()
            .collect();
        let b = rebuild(&lower, 0, h)?;
        if !b.is_half() {
            return Err(failed(h, "lower part leaves the half plane"));
        }
        Factorization::Offset {
            b,
            c: rebuild(&upper, 1, h)?,
        }
    } else {
        let rest = &dimers[1..];
        match rest.first() {
            None => Factorization::Single,
            Some(base) if base.column == 0 => Factorization::Stacked(rebuild(rest, 0, h)?),
            Some(base) if base.column == 1 => match rest.iter().find(|d| d.column == 0) {
                None => Factorization::Raised(rebuild(rest, -1, h)?),
                Some(&root) => {
                    let upper = upward_closure(rest, root);
                    let lower: Vec<Dimer> = rest
                        .iter()
                        .filter(|d| !upper.contains(d))
                        .copied()
                        .collect();
                    let b = rebuild(&lower, -1, h)?;
                    let c = rebuild(&upper, 0, h)?;
                    if !b.is_half() || !c.is_half() {
                        return Err(failed(h, "split parts leave the half plane"));
                    }
                    Factorization::Split { b, c }
                }
            },
            Some(base) => {
                return Err(failed(
                    h,
                    &format!("unexpected base column {}", base.column),
                ))
            }
        }
    };
    if result.compose() != *h {
        return Err(failed(h, "parts do not recompose to the heap"));
    }
    Ok(result)
}

fn concat(parts: &[&StepWord]) -> StepWord {
    StepWord::new(
        parts
            .iter()
            .flat_map(|p| p.steps().iter().copied())
            .collect(),
    )
    .expect("non-empty parts")
}

fn arch(inner: Option<&StepWord>) -> StepWord {
    let mut steps = vec![Step::U];
    if let Some(w) = inner {
        steps.extend_from_slice(w.steps());
    }
    steps.push(Step::D);
    StepWord::new(steps).expect("non-empty")
}

/// Heap to Grand-Dyck word, by recursion on the factorization.
pub fn psi_forward(h: &Heap) -> Result<StepWord, BijectionError> {
    Ok(match factorize(h)? {
        Factorization::Single => arch(None),
        Factorization::Raised(b) => arch(Some(&psi_forward(&b)?)),
        Factorization::Stacked(b) => concat(&[&psi_forward(&b)?, &arch(None)]),
        Factorization::Split { b, c } => {
            concat(&[&psi_forward(&c)?, &arch(Some(&psi_forward(&b)?))])
        }
        Factorization::Offset { b, c } => {
            let head = psi_forward(&b)?;
            match factorize(&c)? {
                Factorization::Offset { b: d, c: e } => {
                    concat(&[&head, &psi_forward(&d)?.reversed(), &psi_forward(&e)?])
                }
                _ => concat(&[&head, &psi_forward(&c)?.reversed()]),
            }
        }
    })
}

/// Half heap of a Dyck word, following its last arch.
fn dyck_to_heap(steps: &[Step]) -> Heap {
    let mut y = 0i64;
    let mut returns = Vec::new();
    for (t, s) in steps.iter().enumerate() {
        y += s.delta();
        if y == 0 {
            returns.push(t + 1);
        }
    }
    let last_start = if returns.len() >= 2 {
        returns[returns.len() - 2]
    } else {
        0
    };
    let last_inner = &steps[last_start + 1..steps.len() - 1];
    let f = match (last_start, last_inner.is_empty()) {
        (0, true) => Factorization::Single,
        (0, false) => Factorization::Raised(dyck_to_heap(last_inner)),
        (_, true) => Factorization::Stacked(dyck_to_heap(&steps[..last_start])),
        (_, false) => Factorization::Split {
            b: dyck_to_heap(last_inner),
            c: dyck_to_heap(&steps[..last_start]),
        },
    };
    f.compose()
}

/// Grand-Dyck word to heap: the word is cut at its crossings into runs
/// alternately above and below the axis; each run becomes a half heap and
/// consecutive ones are joined by the one-column-left offset.
pub fn psi_inv(p: &StepWord) -> Result<Heap, BijectionError> {
    if !p.is_grand_dyck() {
        return Err(BijectionError::NotGrandDyck(p.to_string()));
    }
    let mut cuts = vec![0];
    cuts.extend(p.crossings());
    cuts.push(p.len());
    let components: Vec<Heap> = cuts
        .windows(2)
        .enumerate()
        .map(|(j, w)| {
            let run = &p.steps()[w[0]..w[1]];
            if j % 2 == 0 {
                dyck_to_heap(run)
            } else {
                let flipped: Vec<Step> = run.iter().rev().copied().collect();
                dyck_to_heap(&flipped)
            }
        })
        .collect();
    let mut iter = components.into_iter().rev();
    let mut acc = iter.next().expect("at least one run");
    for b in iter {
        acc = Factorization::Offset { b, c: acc }.compose();
    }
    Ok(acc)
}

/// `Φ` followed by `Ψ⁻¹`; requires `n = k`.
pub fn multiset_to_heap(m: &Multiset) -> Result<Heap, BijectionError> {
    psi_inv(&phi(m))
}

pub fn heap_to_multiset(h: &Heap) -> Result<Multiset, BijectionError> {
    phi_inv(&psi_forward(h)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HeapClass {
    /// All pyramids (triangular-lattice animals).
    T,
    /// Half pyramids (subdiagonal triangular animals).
    Ts,
    /// Strict pyramids (square-lattice animals).
    Q,
    /// Strict half pyramids.
    Qs,
}

impl HeapClass {
    fn strict(self) -> bool {
        matches!(self, HeapClass::Q | HeapClass::Qs)
    }

    fn half(self) -> bool {
        matches!(self, HeapClass::Ts | HeapClass::Qs)
    }
}

/// Size-indexed memo of heaps generated by the factorization constructors.
#[derive(Debug, Default)]
pub struct Grammar {
    strict: bool,
    half: Vec<Vec<Heap>>,
    full: Vec<Vec<Heap>>,
}

impl Grammar {
    /// `strict` omits the stacked constructor.
    pub fn new(strict: bool) -> Self {
        Grammar {
            strict,
            half: vec![Vec::new()],
            full: vec![Vec::new()],
        }
    }

    fn extend_to(&mut self, n: usize) -> Result<(), BijectionError> {
        while self.half.len() <= n {
            let m = self.half.len();
            let mut half = Vec::new();
            if m == 1 {
                half.push(Factorization::Single.compose());
            } else {
                for b in &self.half[m - 1] {
                    half.push(Factorization::Raised(b.clone()).compose());
                    if !self.strict {
                        half.push(Factorization::Stacked(b.clone()).compose());
                    }
                }
                for a in 1..m - 1 {
                    for b in &self.half[a] {
                        for c in &self.half[m - 1 - a] {
                            half.push(
                                Factorization::Split {
                                    b: b.clone(),
                                    c: c.clone(),
                                }
                                .compose(),
                            );
                        }
                    }
                }
            }
            let mut full = half.clone();
            for a in 1..m {
                for b in &self.half[a] {
                    for c in &self.full[m - a] {
                        full.push(
                            Factorization::Offset {
                                b: b.clone(),
                                c: c.clone(),
                            }
                            .compose(),
                        );
                    }
                }
            }
            self.half.push(sorted_unique(half)?);
            self.full.push(sorted_unique(full)?);
        }
        Ok(())
    }

    pub fn heaps(&mut self, n: usize, half_only: bool) -> Result<&[Heap], BijectionError> {
        self.extend_to(n)?;
        Ok(if half_only {
            &self.half[n]
        } else {
            &self.full[n]
        })
    }
}

fn sorted_unique(mut heaps: Vec<Heap>) -> Result<Vec<Heap>, BijectionError> {
    heaps.sort_unstable();
    if let Some(w) = heaps.windows(2).find(|w| w[0] == w[1]) {
        return Err(BijectionError::Duplicate(w[0].to_string()));
    }
    Ok(heaps)
}

/// All size-`n` heaps of `class`, sorted canonically.
pub fn grammar_enumerate(n: usize, class: HeapClass) -> Result<Vec<Heap>, BijectionError> {
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut g = Grammar::new(class.strict());
    Ok(g.heaps(n, class.half())?.to_vec())
}

/// Grammar sizes for every class up to `n`, indexed by size.
pub fn grammar_counts(n: usize) -> Result<HashMap<&'static str, Vec<usize>>, BijectionError> {
    let mut out = HashMap::new();
    for (strict, half_name, full_name) in [(false, "Ts", "T"), (true, "Qs", "Q")] {
        let mut g = Grammar::new(strict);
        let mut half = vec![0];
        let mut full = vec![0];
        for m in 1..=n {
            half.push(g.heaps(m, true)?.len());
            full.push(g.heaps(m, false)?.len());
        }
        out.insert(half_name, half);
        out.insert(full_name, full);
    }
    Ok(out)
}
