use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Exact `binom(n, k)`; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Pascal triangle of exact binomials `binom(N, l)` for `N <= max_n`.
#[derive(Clone, Debug)]
pub struct BinomialTable {
    rows: Vec<Vec<BigInt>>,
}

impl BinomialTable {
    pub fn new(max_n: usize) -> Self {
        let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(max_n + 1);
        rows.push(vec![BigInt::one()]);
        for n in 1..=max_n {
            let prev = &rows[n - 1];
            let mut row = Vec::with_capacity(n + 1);
            row.push(BigInt::one());
            for l in 1..n {
                row.push(&prev[l - 1] + &prev[l]);
            }
            row.push(BigInt::one());
            rows.push(row);
        }
        BinomialTable { rows }
    }

    pub fn max_n(&self) -> usize {
        self.rows.len() - 1
    }

    /// `binom(n, l)`, zero for `l > n`. Panics if `n` exceeds the table.
    pub fn get(&self, n: usize, l: usize) -> BigInt {
        self.rows[n].get(l).cloned().unwrap_or_default()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_matches_closed_form() {
        let t = BinomialTable::new(30);
        for n in 0..=30u64 {
            assert_eq!(t.get(n as usize, 0), BigInt::one());
            for l in 0..=n + 2 {
                assert_eq!(t.get(n as usize, l as usize), binomial(n, l));
            }
        }
    }

    #[test]
    fn pascal_recurrence() {
        let t = BinomialTable::new(40);
        for n in 1..=40 {
            for l in 1..=n {
                assert_eq!(t.get(n, l), t.get(n - 1, l - 1) + t.get(n - 1, l));
            }
        }
    }

    #[test]
    fn known_values() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(80, 40).to_string(), "107507208733336176461620");
    }
}
