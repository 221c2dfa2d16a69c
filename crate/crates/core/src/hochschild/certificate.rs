use serde::Serialize;

/// Support bounds for the cochain spaces of a Hochschild bicomplex.
///
/// With reduced generators in homological degrees `[lo, hi]` and
/// coefficients in `[mlo, mhi]`, an `s`-cochain has total degree `N` with
/// `s(1 + lo) - mhi ≤ N ≤ s(1 + hi) - mlo`. Each `N` therefore meets only
/// finitely many `s` when `lo ≥ 0` or `hi ≤ -2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    /// Degree range of reduced generators; `None` when there are none.
    pub generators: Option<(i64, i64)>,
    /// Degree range of the coefficients; `None` when the coefficients vanish.
    pub coefficients: Option<(i64, i64)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Stability {
    /// No cochain with `s` above the window reaches this degree or the next one.
    Exact,
    Truncated,
}

impl Certificate {
    /// Largest `s` with a possibly nonzero cochain in total degree `n`;
    /// `None` when arbitrarily large `s` can contribute.
    pub fn s_bound(&self, n: i64) -> Option<i64> {
        let Some((mlo, mhi)) = self.coefficients else {
            return Some(-1);
        };
        let Some((lo, hi)) = self.generators else {
            return Some(if -mhi <= n && n <= -mlo { 0 } else { -1 });
        };
        if lo >= 0 {
            Some((n + mhi).div_euclid(1 + lo))
        } else if hi <= -2 {
            Some((-n - mlo).div_euclid(-1 - hi))
        } else {
            None
        }
    }

    /// Whether the whole complex is seen in every total degree once `s_max` is large enough.
    pub fn is_bounded(&self) -> bool {
        match (self.generators, self.coefficients) {
            (Some((lo, hi)), Some(_)) => lo >= 0 || hi <= -2,
            _ => true,
        }
    }

    /// Cohomology in total degree `n` of the quotient complex `s ≤ s_max`
    /// agrees with the full complex when nothing with `s > s_max` lives in
    /// degrees `n` and `n + 1`.
    pub fn stability(&self, n: i64, s_max: usize) -> Stability {
        let ok = |k: i64| self.s_bound(k).is_some_and(|b| b <= s_max as i64);
        if ok(n) && ok(n + 1) {
            Stability::Exact
        } else {
            Stability::Truncated
        }
    }

    /// Smallest `s_max` making every degree in `[a, b]` exact, if one exists.
    pub fn required_s_max(&self, a: i64, b: i64) -> Option<usize> {
        let mut need = 0i64;
        for n in a..=b + 1 {
            need = need.max(self.s_bound(n)?);
        }
        Some(need.max(0) as usize)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_zero_generators_are_exact() {
        let c = Certificate {
            generators: Some((0, 0)),
            coefficients: Some((0, 0)),
        };
        assert_eq!(c.s_bound(4), Some(4));
        assert_eq!(c.stability(4, 5), Stability::Exact);
        assert_eq!(c.stability(5, 5), Stability::Truncated);
        assert_eq!(c.required_s_max(0, 5), Some(6));
    }

    #[test]
    fn negative_generators_are_exact() {
        let c = Certificate {
            generators: Some((-3, -3)),
            coefficients: Some((-3, 0)),
        };
        assert!(c.is_bounded());
        // N ≤ -2s + 3
        assert_eq!(c.s_bound(-8), Some(5));
        assert_eq!(c.s_bound(3), Some(0));
        assert_eq!(c.s_bound(4), Some(-1));
    }

    #[test]
    fn mixed_generators_are_truncated() {
        let c = Certificate {
            generators: Some((-1, 0)),
            coefficients: Some((-1, 0)),
        };
        assert!(!c.is_bounded());
        assert_eq!(c.s_bound(0), None);
        assert_eq!(c.stability(0, 100), Stability::Truncated);
    }

    #[test]
    fn no_generators_means_only_s_zero() {
        let c = Certificate {
            generators: None,
            coefficients: Some((0, 0)),
        };
        assert_eq!(c.s_bound(0), Some(0));
        assert_eq!(c.stability(0, 0), Stability::Exact);
    }
}
