//! Stirling numbers linking the two operator bases:
//!
//! `t^n D^n = Σ_k s1(n,k) Δ^k` and `Δ^n = Σ_k S2(n,k) t^k D^k`.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Signed Stirling numbers of the first kind and Stirling numbers of the
/// second kind for `0 <= k <= n <= max_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StirlingTable {
    max_n: usize,
    first: Vec<Vec<BigInt>>,
    second: Vec<Vec<BigInt>>,
}

impl StirlingTable {
    pub fn new(max_n: usize) -> Self {
        let mut first = vec![vec![BigInt::one()]];
        let mut second = vec![vec![BigInt::one()]];
        for n in 0..max_n {
            let prev1 = &first[n];
            let prev2 = &second[n];
            let mut row1 = vec![BigInt::zero(); n + 2];
            let mut row2 = vec![BigInt::zero(); n + 2];
            for k in 0..=n + 1 {
                let below1 = if k > 0 { prev1[k - 1].clone() } else { BigInt::zero() };
                let below2 = if k > 0 { prev2[k - 1].clone() } else { BigInt::zero() };
                let same1 = prev1.get(k).cloned().unwrap_or_default();
                let same2 = prev2.get(k).cloned().unwrap_or_default();
                row1[k] = below1 - same1 * BigInt::from(n);
                row2[k] = below2 + same2 * BigInt::from(k);
            }
            first.push(row1);
            second.push(row2);
        }
        StirlingTable { max_n, first, second }
    }

    pub fn max_n(&self) -> usize {
        self.max_n
    }

    /// Signed Stirling number of the first kind; zero outside `0 <= k <= n`.
    pub fn s1(&self, n: usize, k: usize) -> BigInt {
        self.first
            .get(n)
            .and_then(|row| row.get(k))
            .cloned()
            .unwrap_or_default()
    }

    /// Stirling number of the second kind; zero outside `0 <= k <= n`.
    pub fn s2(&self, n: usize, k: usize) -> BigInt {
        self.second
            .get(n)
            .and_then(|row| row.get(k))
            .cloned()
            .unwrap_or_default()
    }
}
