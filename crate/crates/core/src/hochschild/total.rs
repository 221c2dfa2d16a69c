use std::collections::BTreeMap;

use rayon::prelude::*;

use super::{Bicomplex, Stability};
use crate::error::Result;
use crate::linalg::{Field, Matrix, SVec, Scalar, Subquotient};

/// The total complex of a bicomplex in a range of total degrees.
///
/// `basis[N]` lists the generators `(s, j)` of total degree `N`, ordered by
/// `s`; `d[N]` maps degree `N` to `N + 1` and is stored for every `N` whose
/// target is in range.
#[derive(Clone, Debug)]
pub struct TotalComplex {
    field: Field,
    range: (i64, i64),
    basis: BTreeMap<i64, Vec<(usize, usize)>>,
    d: BTreeMap<i64, Matrix>,
}

impl TotalComplex {
    /// Degrees `lo ..= hi` with the total differential `δ + (-1)^s D`.
    pub fn new(b: &Bicomplex, lo: i64, hi: i64) -> TotalComplex {
        let f = b.field();
        let mut basis: BTreeMap<i64, Vec<(usize, usize)>> = (lo..=hi).map(|n| (n, Vec::new())).collect();
        for s in 0..=b.s_max() {
            for (j, g) in b.column(s).iter().enumerate() {
                let n = s as i64 + g.t;
                if let Some(v) = basis.get_mut(&n) {
                    v.push((s, j));
                }
            }
        }
        let position: BTreeMap<(usize, usize), usize> = basis
            .values()
            .flat_map(|v| v.iter().enumerate().map(|(i, &sj)| (sj, i)))
            .collect();
        let d = (lo..hi)
            .into_par_iter()
            .map(|n| {
                let src = &basis[&n];
                let dst = &basis[&(n + 1)];
                let mut m = Matrix::zeros(f, dst.len(), src.len());
                for (col, &(s, j)) in src.iter().enumerate() {
                    if s < b.s_max() {
                        for (&k, c) in &b.d_hoch(s)[j] {
                            m.add_to(position[&(s + 1, k)], col, c);
                        }
                    }
                    let sign = f.sign(s as i64);
                    for (&k, c) in &b.d_int(s)[j] {
                        m.add_to(position[&(s, k)], col, &f.mul(&sign, c));
                    }
                }
                (n, m)
            })
            .collect();
        TotalComplex {
            field: f,
            range: (lo, hi),
            basis,
            d,
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn range(&self) -> (i64, i64) {
        self.range
    }

    pub fn dim(&self, n: i64) -> usize {
        self.basis.get(&n).map_or(0, Vec::len)
    }

    pub fn generators(&self, n: i64) -> &[(usize, usize)] {
        self.basis.get(&n).map_or(&[], Vec::as_slice)
    }

    /// The differential out of degree `n`, when its target is in range.
    pub fn d(&self, n: i64) -> Option<&Matrix> {
        self.d.get(&n)
    }

    /// `d^{n}` as a matrix, with a zero map at the lower edge of the range
    /// (the incoming differential there is treated as zero).
    fn incoming(&self, n: i64) -> Matrix {
        self.d
            .get(&(n - 1))
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(self.field, self.dim(n), 0))
    }

    /// Cohomology in degree `n`; needs `n - 1` and `n + 1` in range.
    pub fn cohomology(&self, n: i64) -> Result<Subquotient> {
        let out = self.d.get(&n).expect("outgoing differential in range");
        Subquotient::new(&out.kernel_basis(), &self.incoming(n))
    }

    /// Checks `d^{n+1} d^n = 0` throughout the range.
    pub fn check(&self) -> bool {
        self.d
            .iter()
            .all(|(n, m)| self.d.get(&(n + 1)).is_none_or(|m2| m2.mul(m).is_zero()))
    }

    /// The component of a vector of degree `n` lying in column `s`, as a
    /// sparse vector over that column's generators.
    pub fn component(&self, n: i64, v: &[Scalar], s: usize) -> SVec {
        self.generators(n)
            .iter()
            .zip(v)
            .filter(|((ss, _), c)| *ss == s && !num_traits::Zero::is_zero(*c))
            .map(|(&(_, j), c)| (j, c.clone()))
            .collect()
    }

    /// Embeds a sparse vector over column `s` into degree `n`.
    pub fn embed(&self, n: i64, s: usize, v: &SVec) -> Vec<Scalar> {
        let gens = self.generators(n);
        let mut out = vec![self.field.zero(); gens.len()];
        for (i, &(ss, j)) in gens.iter().enumerate() {
            if ss == s {
                if let Some(c) = v.get(&j) {
                    out[i] = c.clone();
                }
            }
        }
        out
    }
}

/// One total degree of Hochschild cohomology.
#[derive(Clone, Debug)]
pub struct HHDegree {
    pub degree: i64,
    pub dim: usize,
    pub stability: Stability,
    /// Cocycle representatives as vectors over the total complex in this degree.
    pub representatives: Vec<Vec<Scalar>>,
}

#[derive(Clone, Debug)]
pub struct HHResult {
    pub degrees: Vec<HHDegree>,
    pub total: TotalComplex,
}

impl HHResult {
    pub fn dim(&self, n: i64) -> Option<usize> {
        self.degrees.iter().find(|d| d.degree == n).map(|d| d.dim)
    }
}

impl Bicomplex {
    /// `HH^n` for `lo ≤ n ≤ hi` from the totalization. Degrees not certified
    /// exact are still computed and carry [`Stability::Truncated`].
    pub fn hochschild_cohomology(&self, lo: i64, hi: i64) -> Result<HHResult> {
        let total = TotalComplex::new(self, lo - 1, hi + 1);
        let degrees = (lo..=hi)
            .into_par_iter()
            .map(|n| {
                let sq = total.cohomology(n)?;
                Ok(HHDegree {
                    degree: n,
                    dim: sq.dim(),
                    stability: self.stability(n),
                    representatives: (0..sq.dim()).map(|i| sq.representative(i)).collect(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(HHResult { degrees, total })
    }

    /// The `δ` block from `(s, t)` to `(s + 1, t)` in the given index lists.
    pub fn hoch_block(&self, s: usize, src: &[usize], dst: &[usize]) -> Matrix {
        block(self.field(), &self.d_hoch[s], src, dst)
    }

    /// The `D` block from `(s, t)` to `(s, t + 1)`.
    pub fn int_block(&self, s: usize, src: &[usize], dst: &[usize]) -> Matrix {
        block(self.field(), &self.d_int[s], src, dst)
    }
}

fn block(f: Field, cols: &[SVec], src: &[usize], dst: &[usize]) -> Matrix {
    let pos: BTreeMap<usize, usize> = dst.iter().enumerate().map(|(i, &j)| (j, i)).collect();
    let mut m = Matrix::zeros(f, dst.len(), src.len());
    for (c, &j) in src.iter().enumerate() {
        for (k, x) in &cols[j] {
            if let Some(&r) = pos.get(k) {
                m.set(r, c, x.clone());
            }
        }
    }
    m
}

/// Row-wise cohomology of the Hochschild differential alone, ignoring the
/// internal differential: `HH_gr^{s,t}` for `s < s_max` of the bicomplex.
#[derive(Clone, Debug)]
pub struct GradedHH {
    pub s_max: usize,
    pub parts: BTreeMap<(usize, i64), Subquotient>,
}

impl GradedHH {
    pub fn dim(&self, s: usize, t: i64) -> usize {
        self.parts.get(&(s, t)).map_or(0, Subquotient::dim)
    }

    /// Nonzero entries as `((s, t), dim)`.
    pub fn nonzero(&self) -> Vec<((usize, i64), usize)> {
        self.parts
            .iter()
            .filter(|(_, q)| q.dim() > 0)
            .map(|(&k, q)| (k, q.dim()))
            .collect()
    }
}

/// `HH_gr^{s,t}` for `s ≤ s_report`, from a bicomplex built with
/// `s_max ≥ s_report + 1`. The internal differential is ignored, so for a
/// graded category this is the graded Hochschild cohomology.
pub fn graded_hochschild(b: &Bicomplex, s_report: usize) -> Result<GradedHH> {
    assert!(b.s_max() > s_report, "bicomplex must extend one column past the report");
    let f = b.field();
    let mut parts = BTreeMap::new();
    for (s, t) in b.bidegrees() {
        if s > s_report {
            continue;
        }
        let here = b.indices(s, t);
        let next = b.indices(s + 1, t);
        let out = b.hoch_block(s, &here, &next);
        let incoming = if s == 0 {
            Matrix::zeros(f, here.len(), 0)
        } else {
            let prev = b.indices(s - 1, t);
            b.hoch_block(s - 1, &prev, &here)
        };
        let z = out.kernel_basis();
        parts.insert((s, t), Subquotient::new(&z, &incoming)?);
    }
    Ok(GradedHH {
        s_max: s_report,
        parts,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dgcat::{Bimodule, CategoryBuilder, DGCategory};

    fn dual_numbers(f: Field) -> DGCategory {
        let mut b = CategoryBuilder::new(f);
        b.object("*").unwrap();
        b.identity("*", "1").unwrap();
        b.basis("*", "*", "e", 0).unwrap();
        b.build().unwrap()
    }

    fn exterior(n: i64) -> DGCategory {
        let mut b = CategoryBuilder::new(Field::Rationals);
        b.object("*").unwrap();
        b.identity("*", "1").unwrap();
        b.basis("*", "*", "x", -n).unwrap();
        b.build().unwrap()
    }

    #[test]
    fn dual_numbers_hh() {
        for (f, expected) in [
            (Field::Rationals, [2, 1, 1, 1, 1, 1]),
            (Field::Prime(2), [2, 2, 2, 2, 2, 2]),
            (Field::Prime(3), [2, 1, 1, 1, 1, 1]),
        ] {
            let a = dual_numbers(f);
            let b = Bicomplex::build(&a, &Bimodule::standard(&a), 6, true).unwrap();
            let hh = b.hochschild_cohomology(0, 5).unwrap();
            assert!(hh.total.check());
            let dims: Vec<usize> = hh.degrees.iter().map(|d| d.dim).collect();
            assert_eq!(dims, expected, "{f}");
            assert!(hh.degrees.iter().all(|d| d.stability == Stability::Exact));
        }
    }

    #[test]
    fn ground_field_is_separable() {
        let mut b = CategoryBuilder::new(Field::Rationals);
        b.object("*").unwrap();
        b.identity("*", "1").unwrap();
        let k = b.build().unwrap();
        let bc = Bicomplex::build(&k, &Bimodule::standard(&k), 3, true).unwrap();
        let hh = bc.hochschild_cohomology(0, 2).unwrap();
        assert_eq!(hh.dim(0), Some(1));
        assert_eq!(hh.dim(1), Some(0));
    }

    #[test]
    fn exterior_graded_rows() {
        let a = exterior(3);
        let b = Bicomplex::build(&a, &Bimodule::standard(&a), 5, true).unwrap();
        let g = graded_hochschild(&b, 4).unwrap();
        let mut got: Vec<(usize, i64)> = g.nonzero().into_iter().map(|(k, d)| {
            assert_eq!(d, 1);
            k
        }).collect();
        got.sort();
        let mut want: Vec<(usize, i64)> = (0..=4).flat_map(|k| [(k, -3 * k as i64), (k, 3 - 3 * k as i64)]).collect();
        want.sort();
        assert_eq!(got, want);
    }
}
