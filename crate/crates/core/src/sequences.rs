//! Reference counting sequences computed from their recurrences.

pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * u128::from(n - i) / u128::from(i + 1))
}

/// `Catalan(0..=n)` from `C(m+1) = sum C(i) C(m-i)`.
pub fn catalan(n: usize) -> Vec<u128> {
    let mut c = vec![1u128];
    for m in 0..n {
        c.push((0..=m).map(|i| c[i] * c[m - i]).sum());
    }
    c
}

/// `Motzkin(0..=n)` from `M(m) = M(m-1) + sum M(k) M(m-2-k)`.
pub fn motzkin(n: usize) -> Vec<u128> {
    let mut m = vec![1u128, 1];
    for j in 2..=n {
        let tail: u128 = (0..=j - 2).map(|k| m[k] * m[j - 2 - k]).sum();
        m.push(m[j - 1] + tail);
    }
    m.truncate(n + 1);
    m
}

/// Directed animals on the square lattice with `n` sites, for `n >= 1`:
/// `sum_k C(n-1, k) C(k, floor(k/2))`.
pub fn square_animals(n: usize) -> u128 {
    if n == 0 {
        return 0;
    }
    let m = (n - 1) as u64;
    (0..=m).map(|k| binomial(m, k) * binomial(k, k / 2)).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prefixes() {
        assert_eq!(catalan(6), [1, 1, 2, 5, 14, 42, 132]);
        assert_eq!(motzkin(7), [1, 1, 2, 4, 9, 21, 51, 127]);
        assert_eq!(motzkin(0), [1]);
        let a: Vec<u128> = (1..=7).map(square_animals).collect();
        assert_eq!(a, [1, 2, 5, 13, 35, 96, 267]);
        assert_eq!(binomial(9, 4), 126);
        assert_eq!(binomial(3, 5), 0);
    }
}
