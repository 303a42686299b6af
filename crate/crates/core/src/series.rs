//! Truncated power series with exact rational coefficients, bivariate
//! coefficient tables, diagonals, and the closed-form generating functions
//! of the animal and multiset classes.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("division by a series whose leading coefficient cannot be cancelled")]
    DivByNonUnit,
    #[error("square root needs constant term 1")]
    SqrtBadConstant,
    #[error("unknown series name {0:?}")]
    UnknownName(String),
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// A power series known exactly through `z^order`. Coefficients past the
/// order are unknown rather than zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Series {
    coeffs: Vec<BigRational>,
}

impl Series {
    /// A polynomial, known exactly, padded with zeros through `order`.
    pub fn polynomial(coeffs: &[i64], order: usize) -> Self {
        let mut c: Vec<BigRational> = coeffs.iter().take(order + 1).map(|&v| rat(v)).collect();
        c.resize(order + 1, BigRational::zero());
        Series { coeffs: c }
    }

    pub fn from_coeffs(coeffs: Vec<BigRational>) -> Self {
        assert!(
            !coeffs.is_empty(),
            "a series needs at least one coefficient"
        );
        Series { coeffs }
    }

    pub fn one(order: usize) -> Self {
        Series::polynomial(&[1], order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of `z^n`, or `None` past the truncation order.
    pub fn coeff(&self, n: usize) -> Option<&BigRational> {
        self.coeffs.get(n)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Coefficients `from..=order` as integers, if they all are.
    pub fn integer_coeffs(&self, from: usize) -> Option<Vec<BigInt>> {
        self.coeffs
            .iter()
            .skip(from)
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }

    pub fn truncate(&self, order: usize) -> Series {
        Series {
            coeffs: self.coeffs[..=order.min(self.order())].to_vec(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &Series) -> Series {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Series) -> Series {
        self.zip_with(other, |a, b| a - b)
    }

    fn zip_with(
        &self,
        other: &Series,
        f: impl Fn(&BigRational, &BigRational) -> BigRational,
    ) -> Series {
        let order = self.order().min(other.order());
        Series {
            coeffs: (0..=order)
                .map(|i| f(&self.coeffs[i], &other.coeffs[i]))
                .collect(),
        }
    }

    pub fn scale(&self, factor: &BigRational) -> Series {
        Series {
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }

    pub fn mul(&self, other: &Series) -> Series {
        let order = self.order().min(other.order());
        let coeffs = (0..=order)
            .map(|n| {
                (0..=n)
                    .filter(|&i| !self.coeffs[i].is_zero() && !other.coeffs[n - i].is_zero())
                    .map(|i| &self.coeffs[i] * &other.coeffs[n - i])
                    .fold(BigRational::zero(), |acc, x| acc + x)
            })
            .collect();
        Series { coeffs }
    }

    /// Multiplies by `z^k`; the result is known `k` orders further.
    pub fn mul_z_pow(&self, k: usize) -> Series {
        let mut coeffs = vec![BigRational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Series { coeffs }
    }

    fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Exact quotient. A common factor `z^v` is cancelled first, which lowers
    /// the known order by `v`.
    pub fn div(&self, other: &Series) -> Result<Series, SeriesError> {
        let v = other.valuation().ok_or(SeriesError::DivByNonUnit)?;
        if self.coeffs.iter().take(v).any(|c| !c.is_zero()) {
            return Err(SeriesError::DivByNonUnit);
        }
        let order = self.order().min(other.order());
        if v > order {
            return Err(SeriesError::DivByNonUnit);
        }
        let order = order - v;
        let num = &self.coeffs[v..];
        let den = &other.coeffs[v..];
        let inv_lead = den[0].recip();
        let mut q: Vec<BigRational> = Vec::with_capacity(order + 1);
        for n in 0..=order {
            let mut acc = num[n].clone();
            for i in 1..=n {
                if !den[i].is_zero() {
                    acc -= &den[i] * &q[n - i];
                }
            }
            q.push(acc * &inv_lead);
        }
        Ok(Series { coeffs: q })
    }

    /// Square root with constant term 1, from the coefficient recurrence of
    /// `s^2 = a`.
    pub fn sqrt(&self) -> Result<Series, SeriesError> {
        if !self.coeffs[0].is_one() {
            return Err(SeriesError::SqrtBadConstant);
        }
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        let mut s: Vec<BigRational> = vec![BigRational::one()];
        for n in 1..=self.order() {
            let mut acc = self.coeffs[n].clone();
            for i in 1..n {
                acc -= &s[i] * &s[n - i];
            }
            s.push(acc * &half);
        }
        Ok(Series { coeffs: s })
    }

    /// One line per term from `from` through the order: `n<TAB>value`.
    pub fn terms_text(&self, from: usize) -> String {
        let mut out = String::new();
        for (n, c) in self.coeffs.iter().enumerate().skip(from) {
            let _ = writeln!(out, "{n}\t{}", format_rational(c));
        }
        out
    }
}

/// Integers print bare, other values as `numerator/denominator`.
pub fn format_rational(c: &BigRational) -> String {
    if c.is_integer() {
        c.to_integer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClosedForm {
    /// Half pyramids: `(1 - 2z - sqrt(1 - 4z)) / 2z`.
    Ts,
    /// Pyramids: `(1 - 4z - sqrt(1 - 4z)) / (8z - 2)`.
    T,
    /// Strict half pyramids: `(1 - z - sqrt(1 - 2z - 3z^2)) / 2z`.
    Qs,
    /// Strict pyramids: `(1 - 3z - sqrt(1 - 2z - 3z^2)) / (6z - 2)`.
    Q,
    /// Multisets of `[n]` with no consecutive integers; same formula as `Q`.
    Mdiag,
}

impl ClosedForm {
    pub const ALL: [ClosedForm; 5] = [
        ClosedForm::Ts,
        ClosedForm::T,
        ClosedForm::Qs,
        ClosedForm::Q,
        ClosedForm::Mdiag,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ClosedForm::Ts => "Ts",
            ClosedForm::T => "T",
            ClosedForm::Qs => "Qs",
            ClosedForm::Q => "Q",
            ClosedForm::Mdiag => "Mdiag",
        }
    }

    pub fn from_name(name: &str) -> Result<Self, SeriesError> {
        ClosedForm::ALL
            .into_iter()
            .find(|f| f.name().eq_ignore_ascii_case(name))
            .ok_or_else(|| SeriesError::UnknownName(name.to_string()))
    }

    /// Expansion through `z^order`.
    pub fn expand(self, order: usize) -> Series {
        // One spare term covers the order lost when cancelling a factor z.
        let n = order + 1;
        let (linear, radicand, denominator): (&[i64], &[i64], &[i64]) = match self {
            ClosedForm::Ts => (&[1, -2], &[1, -4], &[0, 2]),
            ClosedForm::T => (&[1, -4], &[1, -4], &[-2, 8]),
            ClosedForm::Qs => (&[1, -1], &[1, -2, -3], &[0, 2]),
            ClosedForm::Q | ClosedForm::Mdiag => (&[1, -3], &[1, -2, -3], &[-2, 6]),
        };
        let root = Series::polynomial(radicand, n)
            .sqrt()
            .expect("radicands have constant term 1");
        Series::polynomial(linear, n)
            .sub(&root)
            .div(&Series::polynomial(denominator, n))
            .expect("numerators vanish at z = 0")
            .truncate(order)
    }
}

/// Exact coefficients `c[n][k]` of `z^n u^k` for `n <= nz`, `k <= nu`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BivarTable {
    coeffs: Vec<Vec<BigRational>>,
}

impl BivarTable {
    /// Polynomial from `(n, k, coefficient)` terms, truncated to the orders.
    pub fn from_terms(terms: &[(usize, usize, i64)], nz: usize, nu: usize) -> Self {
        let mut coeffs = vec![vec![BigRational::zero(); nu + 1]; nz + 1];
        for &(n, k, c) in terms {
            if n <= nz && k <= nu {
                coeffs[n][k] += rat(c);
            }
        }
        BivarTable { coeffs }
    }

    pub fn nz(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn nu(&self) -> usize {
        self.coeffs[0].len() - 1
    }

    pub fn get(&self, n: usize, k: usize) -> Option<&BigRational> {
        self.coeffs.get(n).and_then(|row| row.get(k))
    }

    /// Exact quotient by a table with nonzero constant term.
    pub fn div(&self, den: &BivarTable) -> Result<BivarTable, SeriesError> {
        let lead = den.coeffs[0][0].clone();
        if lead.is_zero() {
            return Err(SeriesError::DivByNonUnit);
        }
        let inv_lead = lead.recip();
        let (nz, nu) = (self.nz().min(den.nz()), self.nu().min(den.nu()));
        let terms: Vec<(usize, usize, &BigRational)> = (0..=nz)
            .flat_map(|i| (0..=nu).map(move |j| (i, j)))
            .filter(|&(i, j)| (i, j) != (0, 0) && !den.coeffs[i][j].is_zero())
            .map(|(i, j)| (i, j, &den.coeffs[i][j]))
            .collect();
        let mut q = vec![vec![BigRational::zero(); nu + 1]; nz + 1];
        for n in 0..=nz {
            for k in 0..=nu {
                let mut acc = self.coeffs[n][k].clone();
                for &(i, j, d) in &terms {
                    if i <= n && j <= k && !q[n - i][k - j].is_zero() {
                        acc -= d * &q[n - i][k - j];
                    }
                }
                q[n][k] = acc * &inv_lead;
            }
        }
        Ok(BivarTable { coeffs: q })
    }

    /// Series of the entries `c[n][n]`.
    pub fn diagonal(&self) -> Series {
        let order = self.nz().min(self.nu());
        Series::from_coeffs((0..=order).map(|n| self.coeffs[n][n].clone()).collect())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Bivariate {
    /// `n`-multisets of `[k]` with no two consecutive integers:
    /// `uz / ((1 - u)(1 - u - z + uz - u^2 z))`.
    F,
    /// `n`-multisets of `[k]` where no value below `k` occurs exactly once:
    /// `u / (1 - z - u(1 - z + z^2))`.
    H,
}

impl Bivariate {
    pub fn table(self, nz: usize, nu: usize) -> BivarTable {
        let (num, den): (&[_], &[_]) = match self {
            // (1 - u)(1 - u - z + uz - u^2 z)
            //   = 1 - 2u + u^2 - z + 2uz - 2u^2 z + u^3 z
            Bivariate::F => (
                &[(1, 1, 1)],
                &[
                    (0, 0, 1),
                    (0, 1, -2),
                    (0, 2, 1),
                    (1, 0, -1),
                    (1, 1, 2),
                    (1, 2, -2),
                    (1, 3, 1),
                ],
            ),
            Bivariate::H => (
                &[(0, 1, 1)],
                &[(0, 0, 1), (1, 0, -1), (0, 1, -1), (1, 1, 1), (2, 1, -1)],
            ),
        };
        BivarTable::from_terms(num, nz, nu)
            .div(&BivarTable::from_terms(den, nz, nu))
            .expect("denominators have constant term 1")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

fn compare(name: &str, lhs: &Series, rhs: &Series) -> IdentityCheck {
    let order = lhs.order().min(rhs.order());
    let diff = lhs.truncate(order).sub(&rhs.truncate(order));
    let first_bad = diff.coeffs().iter().position(|c| !c.is_zero());
    IdentityCheck {
        name: name.to_string(),
        pass: first_bad.is_none(),
        detail: match first_bad {
            None => format!("exact through z^{order}"),
            Some(n) => format!(
                "differs at z^{n}: {} vs {}",
                format_rational(&lhs.coeffs()[n]),
                format_rational(&rhs.coeffs()[n])
            ),
        },
    }
}

/// The grammar functional equations and the diagonal identities, through
/// `z^order`.
pub fn check_identities(order: usize) -> Vec<IdentityCheck> {
    let ts = ClosedForm::Ts.expand(order);
    let t = ClosedForm::T.expand(order);
    let qs = ClosedForm::Qs.expand(order);
    let q = ClosedForm::Q.expand(order);
    let one = Series::one(order);
    let one_ts = one.add(&ts);
    let one_qs = one.add(&qs);
    vec![
        compare("Ts = z(1+Ts)^2", &ts, &one_ts.mul(&one_ts).mul_z_pow(1)),
        compare(
            "Qs = z(1+Qs+Qs^2)",
            &qs,
            &one_qs.add(&qs.mul(&qs)).mul_z_pow(1),
        ),
        compare("T = Ts(1+T)", &t, &ts.mul(&one.add(&t))),
        compare("Q = Qs(1+Q)", &q, &qs.mul(&one.add(&q))),
        compare(
            "diag(f) = Q",
            &Bivariate::F.table(order, order).diagonal(),
            &q,
        ),
        compare(
            "diag(h) = Q",
            &Bivariate::H.table(order, order).diagonal(),
            &q,
        ),
    ]
}

/// Square-root and division round trips through `z^order`.
pub fn self_checks(order: usize) -> Vec<IdentityCheck> {
    let mut out = Vec::new();
    for (name, radicand) in [("1-4z", &[1, -4][..]), ("1-2z-3z^2", &[1, -2, -3][..])] {
        let a = Series::polynomial(radicand, order);
        let s = a.sqrt().expect("constant term 1");
        out.push(compare(&format!("sqrt({name})^2 = {name}"), &s.mul(&s), &a));
    }
    let num = Series::polynomial(&[3, -1, 4, 1, -5, 9], order);
    let den = Series::polynomial(&[2, 7, -1, 8], order);
    let q = num.div(&den).expect("unit denominator");
    out.push(compare("(a/b)*b = a", &q.mul(&den), &num));
    let shifted = num.mul_z_pow(2).truncate(order);
    let q = shifted
        .div(&Series::polynomial(&[0, 0, 2, 7, -1, 8], order))
        .expect("common factor z^2");
    out.push(compare(
        "(z^2 a)/(z^2 b) = a/b",
        &q,
        &num.div(&den).expect("unit denominator"),
    ));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(s: &Series, from: usize) -> Vec<i64> {
        s.integer_coeffs(from)
            .unwrap()
            .into_iter()
            .map(|c| i64::try_from(c).unwrap())
            .collect()
    }

    /// Binomial series oracle: coefficients of (1+x)^(1/2) at x = -4z.
    fn sqrt_one_minus_4z(order: usize) -> Vec<BigRational> {
        let half = BigRational::new(1.into(), 2.into());
        let mut out = vec![BigRational::one()];
        let mut binom = BigRational::one();
        for k in 1..=order {
            binom = binom * (&half - rat(k as i64 - 1)) / rat(k as i64);
            out.push(&binom * rat(-4).pow(k as i32));
        }
        out
    }

    #[test]
    fn sqrt_matches_binomial_series() {
        let s = Series::polynomial(&[1, -4], 10).sqrt().unwrap();
        assert_eq!(ints(&s, 0)[..5], [1, -2, -2, -4, -10]);
        assert_eq!(s.coeffs(), &sqrt_one_minus_4z(10)[..]);
    }

    #[test]
    fn catalan_from_sqrt_with_shift() {
        let s = Series::polynomial(&[1, -4], 7).sqrt().unwrap();
        let c = Series::one(7)
            .sub(&s)
            .div(&Series::polynomial(&[0, 2], 7))
            .unwrap();
        assert_eq!(c.order(), 6);
        // Catalan recurrence oracle
        let mut cat = vec![1i64];
        for n in 0..6 {
            cat.push((0..=n).map(|i| cat[i] * cat[n - i]).sum());
        }
        assert_eq!(ints(&c, 0), cat);
        assert_eq!(ints(&c, 0)[..6], [1, 1, 2, 5, 14, 42]);
    }

    #[test]
    fn multiplicative_identity() {
        let a = Series::polynomial(&[3, -1, 4, 1, -5, 9, 2], 6);
        assert_eq!(a.mul(&Series::one(6)), a);
    }

    #[test]
    fn errors() {
        let a = Series::polynomial(&[1, 1], 4);
        assert_eq!(
            a.div(&Series::polynomial(&[0, 1], 4)),
            Err(SeriesError::DivByNonUnit)
        );
        assert_eq!(
            a.div(&Series::polynomial(&[0], 4)),
            Err(SeriesError::DivByNonUnit)
        );
        assert_eq!(
            Series::polynomial(&[2, 1], 4).sqrt(),
            Err(SeriesError::SqrtBadConstant)
        );
    }

    #[test]
    fn unknown_past_order() {
        let a = Series::polynomial(&[1, 2], 3);
        assert!(a.coeff(3).is_some());
        assert!(a.coeff(4).is_none());
        let b = Series::polynomial(&[1], 5);
        assert_eq!(a.mul(&b).order(), 3);
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(ints(&ClosedForm::Q.expand(6), 1), [1, 2, 5, 13, 35, 96]);
        assert_eq!(ints(&ClosedForm::T.expand(5), 1), [1, 3, 10, 35, 126]);
        assert_eq!(ints(&ClosedForm::Qs.expand(6), 1), [1, 1, 2, 4, 9, 21]);
        assert_eq!(ints(&ClosedForm::Ts.expand(6), 1), [1, 2, 5, 14, 42, 132]);
        assert_eq!(ClosedForm::Mdiag.expand(9), ClosedForm::Q.expand(9));
        for f in ClosedForm::ALL {
            assert!(f.expand(4).coeff(0).unwrap().is_zero());
            assert_eq!(f.expand(4).order(), 4);
        }
    }

    #[test]
    fn motzkin_recurrence_matches_qs() {
        let mut m = vec![1i64, 1];
        for n in 2..12 {
            let tail: i64 = (0..=n - 2).map(|k| m[k] * m[n - 2 - k]).sum();
            m.push(m[n - 1] + tail);
        }
        // coefficient n of Qs is Motzkin(n - 1)
        assert_eq!(ints(&ClosedForm::Qs.expand(12), 1), m);
    }

    #[test]
    fn bivariate_examples() {
        let f = Bivariate::F.table(9, 6);
        let at = |n, k| f.get(n, k).unwrap().to_integer();
        assert_eq!(at(2, 3), 4.into());
        assert_eq!(at(4, 5), 26.into());
        for n in 1..=9 {
            assert_eq!(at(n, 1), 1.into());
        }
        let d = Bivariate::F.table(6, 6).diagonal();
        assert_eq!(ints(&d, 1), [1, 2, 5, 13, 35, 96]);
        let d = Bivariate::H.table(6, 6).diagonal();
        assert_eq!(ints(&d, 1), [1, 2, 5, 13, 35, 96]);
    }

    #[test]
    fn diagonal_of_all_ones() {
        let mut terms = Vec::new();
        for n in 0..=5 {
            for k in 0..=5 {
                terms.push((n, k, 1));
            }
        }
        let d = BivarTable::from_terms(&terms, 5, 5).diagonal();
        assert_eq!(ints(&d, 0), [1; 6]);
    }

    #[test]
    fn identities_hold() {
        for order in [2, 12, 30] {
            for c in check_identities(order) {
                assert!(c.pass, "{}: {}", c.name, c.detail);
            }
            for c in self_checks(order) {
                assert!(c.pass, "{}: {}", c.name, c.detail);
            }
        }
    }

    #[test]
    fn ts_grammar_residual_is_zero() {
        let ts = ClosedForm::Ts.expand(20);
        let one_ts = Series::one(20).add(&ts);
        let residual = ts.sub(&one_ts.mul(&one_ts).mul_z_pow(1));
        assert!(residual.is_zero());
    }

    #[test]
    fn print_format() {
        let s = Series::from_coeffs(vec![
            rat(0),
            rat(3),
            BigRational::new((-1).into(), 2.into()),
        ]);
        assert_eq!(s.terms_text(1), "1\t3\n2\t-1/2\n");
    }

    #[test]
    fn multiplication_is_associative() {
        let a = Series::polynomial(&[1, 2, -3, 4], 8);
        let b = ClosedForm::Ts.expand(8);
        let c = Series::polynomial(&[5, 0, 1], 8)
            .div(&Series::polynomial(&[1, -1], 8))
            .unwrap();
        assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
    }
}
