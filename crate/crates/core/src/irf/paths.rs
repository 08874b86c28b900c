//! Antiperiodic height paths `a₁..a_{n+1}`, `a_{i+1} = a_i - σ_i`,
//! `a_{n+1} = -a₁`. Heights are stored doubled so they stay integers.

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PathState {
    pub sigma: Vec<i8>,
}

impl PathState {
    /// Doubled heights `2a₁, .., 2a_{n+1}`.
    pub fn heights2(&self) -> Vec<i64> {
        let mut a = vec![self.sigma.iter().map(|&s| s as i64).sum::<i64>()];
        for &s in &self.sigma {
            let last = *a.last().unwrap();
            a.push(last - 2 * s as i64);
        }
        a
    }

    /// Weight `Σσ_i`.
    pub fn weight(&self) -> i64 {
        self.sigma.iter().map(|&s| s as i64).sum()
    }
}

/// All `2ⁿ` paths, `σ` ordered lexicographically with `+1` before `-1`
/// and the first site most significant. Index `k` has `σ_i = +1` iff bit
/// `n-1-i` of `k` is clear.
pub fn path_basis(n: usize) -> Result<Vec<PathState>> {
    if n.is_multiple_of(2) {
        return Err(Error::InvalidParams(format!("the antiperiodic IRF model needs n odd, got n = {n}")));
    }
    Ok((0..1usize << n).map(|k| PathState { sigma: (0..n).map(|i| if (k >> (n - 1 - i)) & 1 == 0 { 1 } else { -1 }).collect() }).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn paths_are_antiperiodic() {
        for n in [1, 3, 5] {
            let b = path_basis(n).unwrap();
            assert_eq!(b.len(), 1 << n);
            for p in &b {
                let a = p.heights2();
                assert_eq!(a[n], -a[0]);
                assert!(a.windows(2).all(|w| (w[0] - w[1]).abs() == 2));
                // heights in Z + n/2
                assert!(a.iter().all(|h| (h - n as i64).rem_euclid(2) == 0));
            }
        }
        assert!(path_basis(2).is_err());
        assert_eq!(path_basis(3).unwrap()[1].sigma, vec![1, 1, -1]);
    }
}
