use std::collections::BTreeMap;

use crate::dgcat::DGCategory;
use crate::error::{Error, Result};
use crate::linalg::{Field, Matrix};

/// The two-term complex `C → Der(C, C)`, `a ↦ [a, -]`, of a finite
/// dimensional graded algebra, degree by degree.
#[derive(Clone, Debug)]
pub struct DerivationComplex {
    pub field: Field,
    /// Keyed by the homological degree `n` of the derivation or element.
    pub degrees: BTreeMap<i64, DerivationDegree>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DerivationDegree {
    /// Elements `z` with `az = (-1)^{|a| n} za` for all `a`.
    pub center: usize,
    pub derivations: usize,
    pub inner: usize,
    pub outer: usize,
}

impl DerivationComplex {
    pub fn center(&self, n: i64) -> usize {
        self.degrees.get(&n).map_or(0, |d| d.center)
    }

    pub fn outer(&self, n: i64) -> usize {
        self.degrees.get(&n).map_or(0, |d| d.outer)
    }

    /// The cohomological degree-`p` contribution `dim Z_{-p} + dim Out_{1-p}`.
    ///
    /// A derivation of homological degree `n` is a 1-cochain of total
    /// degree `1 - n`.
    pub fn predicted_hh(&self, p: i64) -> usize {
        self.center(-p) + self.outer(1 - p)
    }
}

/// Derivations of a one-object graded algebra with zero differential.
pub fn derivation_complex(a: &DGCategory) -> Result<DerivationComplex> {
    if a.object_count() != 1 || !a.is_graded() {
        return Err(Error::Unsupported("derivations need a one-object graded algebra".into()));
    }
    let f = a.field();
    let h = a.hom(0, 0);
    let dim = h.dim();
    let mul = |g: usize, k: usize| -> Vec<crate::linalg::Scalar> {
        let mut v = vec![f.zero(); dim];
        if let Some(p) = a.compose_basis(0, 0, 0, g, k) {
            for (&i, c) in p {
                v[i] = c.clone();
            }
        }
        v
    };
    let degs: &[i64] = h.degrees();
    let (lo, hi) = (*degs.iter().min().unwrap(), *degs.iter().max().unwrap());
    let mut degrees = BTreeMap::new();
    for n in (lo - hi)..=(hi - lo) {
        // Unknowns: D(b)_c for |c| = |b| + n, indexed as pairs (b, c).
        let unknowns: Vec<(usize, usize)> = (0..dim)
            .flat_map(|b| (0..dim).filter(move |&c| degs[c] == degs[b] + n).map(move |c| (b, c)))
            .collect();
        let pos: BTreeMap<(usize, usize), usize> = unknowns.iter().enumerate().map(|(i, &k)| (k, i)).collect();
        // One row per (a, b, target basis element) of D(ab) - D(a)b - (-1)^{n|a|} a D(b).
        let mut rows: Vec<Vec<crate::linalg::Scalar>> = Vec::new();
        for x in 0..dim {
            for y in 0..dim {
                let sign = f.sign(n * degs[x]);
                let xy = mul(x, y);
                let mut eq = vec![vec![f.zero(); unknowns.len()]; dim];
                for (k, c) in xy.iter().enumerate().filter(|(_, c)| !num_traits::Zero::is_zero(*c)) {
                    for (&(b, t), &u) in &pos {
                        if b == k {
                            eq[t][u] = f.add(&eq[t][u], c);
                        }
                    }
                }
                for (&(b, t), &u) in &pos {
                    if b == x {
                        for (r, c) in mul(t, y).iter().enumerate() {
                            eq[r][u] = f.sub(&eq[r][u], c);
                        }
                    }
                    if b == y {
                        for (r, c) in mul(x, t).iter().enumerate() {
                            eq[r][u] = f.sub(&eq[r][u], &f.mul(&sign, c));
                        }
                    }
                }
                rows.extend(eq);
            }
        }
        let system = Matrix::from_rows(f, &rows, unknowns.len());
        let der = system.kernel_basis();
        // Inner derivations: image of z ↦ (b ↦ zb - (-1)^{|z||b|} bz) over z of degree n.
        let elements: Vec<usize> = (0..dim).filter(|&z| degs[z] == n).collect();
        let mut inner = Matrix::zeros(f, unknowns.len(), elements.len());
        for (col, &z) in elements.iter().enumerate() {
            for b in 0..dim {
                let sign = f.sign(n * degs[b]);
                let (zb, bz) = (mul(z, b), mul(b, z));
                for c in 0..dim {
                    if let Some(&u) = pos.get(&(b, c)) {
                        inner.set(u, col, f.sub(&zb[c], &f.mul(&sign, &bz[c])));
                    }
                }
            }
        }
        let inn = inner.rank();
        let entry = DerivationDegree {
            center: elements.len() - inn,
            derivations: der.cols(),
            inner: inn,
            outer: der.cols() - inn,
        };
        if entry != (DerivationDegree { center: 0, derivations: 0, inner: 0, outer: 0 }) {
            degrees.insert(n, entry);
        }
    }
    Ok(DerivationComplex { field: f, degrees })
}
