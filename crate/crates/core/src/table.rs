//! Counts of `n`-multisets of `[k]` with no two consecutive integers, read
//! from the bivariate series and checked against direct enumeration.

use std::fmt;

use num_bigint::BigInt;

use crate::multiset::{self, MultisetFamily};
use crate::series::Bivariate;

/// The printed values, rows `k = 1..=6`, columns `n = 1..=9`.
pub const TABLE1: [[u64; 9]; 6] = [
    [1, 1, 1, 1, 1, 1, 1, 1, 1],
    [2, 2, 2, 2, 2, 2, 2, 2, 2],
    [3, 4, 5, 6, 7, 8, 9, 10, 11],
    [4, 7, 10, 13, 16, 19, 22, 25, 28],
    [5, 11, 18, 26, 35, 45, 56, 68, 81],
    [6, 16, 30, 48, 70, 96, 126, 160, 198],
];

/// Entries with `n = k` of [`TABLE1`].
pub const TABLE1_DIAGONAL: [u64; 6] = [1, 2, 5, 13, 35, 96];

/// Enumeration is used as a cross-check only up to this size and bound.
pub const ENUMERATION_MAX: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table1 {
    /// `rows[k - 1][n - 1]`.
    pub rows: Vec<Vec<BigInt>>,
    /// Direct enumeration counts where both `n` and `k` are small enough.
    enumerated: Vec<Vec<Option<usize>>>,
}

pub fn table1(max_n: usize, max_k: usize) -> Table1 {
    let f = Bivariate::F.table(max_n, max_k);
    let rows = (1..=max_k)
        .map(|k| {
            (1..=max_n)
                .map(|n| f.get(n, k).expect("in range").to_integer())
                .collect()
        })
        .collect();
    let enumerated = (1..=max_k)
        .map(|k| {
            (1..=max_n)
                .map(|n| {
                    (n <= ENUMERATION_MAX && k <= ENUMERATION_MAX)
                        .then(|| multiset::enumerate(MultisetFamily::Star, n, k as u32).count())
                })
                .collect()
        })
        .collect();
    Table1 { rows, enumerated }
}

impl Table1 {
    pub fn get(&self, n: usize, k: usize) -> Option<&BigInt> {
        self.rows.get(k.checked_sub(1)?)?.get(n.checked_sub(1)?)
    }

    /// Every entry where the series disagrees with enumeration or with the
    /// printed table. Empty when all agree.
    pub fn mismatches(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (ki, row) in self.rows.iter().enumerate() {
            for (ni, value) in row.iter().enumerate() {
                let (n, k) = (ni + 1, ki + 1);
                if let Some(count) = self.enumerated[ki][ni] {
                    if *value != BigInt::from(count) {
                        out.push(format!(
                            "(n={n},k={k}): series {value}, enumeration {count}"
                        ));
                    }
                }
                if let Some(&printed) = TABLE1.get(ki).and_then(|r| r.get(ni)) {
                    if *value != BigInt::from(printed) {
                        out.push(format!("(n={n},k={k}): series {value}, printed {printed}"));
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for Table1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self.rows[0].len();
        write!(f, "k\\n")?;
        for n in 1..=width {
            write!(f, " {n}")?;
        }
        writeln!(f)?;
        for (k, row) in self.rows.iter().enumerate() {
            write!(f, "{}", k + 1)?;
            for v in row {
                write!(f, " {v}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
