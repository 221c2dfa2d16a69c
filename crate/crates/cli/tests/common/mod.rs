//! Independent oracles for the acceptance and integration tests.
//!
//! Nothing here reuses the page recursion or the center solver of the
//! engine; only its exact matrix arithmetic is shared.

#![allow(dead_code)]

use hhss::dgcat::{DGCategory, GradedFunctor};
use hhss::linalg::SVec;
use hhss::specseq::FilteredComplex;
use hhss::{Field, Matrix, Scalar};

fn unit(f: Field, len: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![f.zero(); len];
    v[i] = f.one();
    v
}

/// Columns spanning `F^p` in degree `n`.
fn filtered_part(fc: &FilteredComplex, p: i64, n: i64) -> Matrix {
    let f = fc.field;
    let values = fc.filtration.get(&n).cloned().unwrap_or_default();
    let cols: Vec<Vec<Scalar>> = values
        .iter()
        .enumerate()
        .filter(|(_, &q)| q >= p)
        .map(|(i, _)| unit(f, values.len(), i))
        .collect();
    Matrix::from_columns(f, values.len(), &cols)
}

/// `Z_r^p = { x ∈ F^p C^n : dx ∈ F^{p+r} C^{n+1} }`, directly from the definition.
fn z(fc: &FilteredComplex, r: i64, p: i64, n: i64) -> Matrix {
    let fp = filtered_part(fc, p, n);
    if fp.cols() == 0 {
        return fp;
    }
    let target = fc.filtration.get(&(n + 1)).cloned().unwrap_or_default();
    let low: Vec<usize> = (0..target.len()).filter(|&i| target[i] < p + r).collect();
    let constraint = fc.dmat(n).select_rows(&low).mul(&fp);
    fp.mul(&constraint.kernel_basis())
}

/// `dim E_r^{p,n} = dim Z_r^p - dim (Z_{r-1}^{p+1} + d Z_{r-1}^{p-r+1})`.
///
/// Needs the differential into and out of degree `n`.
pub fn page_dim(fc: &FilteredComplex, r: usize, p: i64, n: i64) -> usize {
    let r = r as i64;
    let top = z(fc, r, p, n);
    let below = z(fc, r - 1, p + 1, n);
    let incoming = fc.dmat(n - 1).mul(&z(fc, r - 1, p - r + 1, n - 1));
    let denominator = below.hstack(&incoming);
    let d = denominator.rank();
    assert_eq!(top.hstack(&denominator).rank(), top.rank(), "denominator lies in Z_r");
    top.rank() - d
}

/// Degrees of `fc` for which both adjacent differentials are known.
pub fn interior_degrees(fc: &FilteredComplex) -> std::ops::RangeInclusive<i64> {
    (fc.range.0 + 1)..=(fc.range.1 - 1)
}

/// Dimension of `Z^t_gr(c)`, optionally with the condition `Φ_{Tx} = (-1)^t T Φ_x`,
/// by solving naturality against every pair of basis morphisms.
pub fn center_dim(c: &DGCategory, t: i64, automorphism: Option<&GradedFunctor>) -> usize {
    let f = c.field();
    let n = -t;
    let objects = c.object_count();
    // Unknown k is the coefficient of basis element i of C(x, x) in Φ_x.
    let mut unknowns: Vec<(usize, usize)> = Vec::new();
    for x in 0..objects {
        let h = c.hom(x, x);
        for i in 0..h.dim() {
            if h.degree(i) == n {
                unknowns.push((x, i));
            }
        }
    }
    if unknowns.is_empty() {
        return 0;
    }
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    let push = |rows: &mut Vec<Vec<Scalar>>, dim: usize, terms: &[(usize, SVec, Scalar)]| {
        for out in 0..dim {
            let mut row = vec![f.zero(); unknowns.len()];
            let mut any = false;
            for (k, v, c) in terms {
                if let Some(x) = v.get(&out) {
                    row[*k] = f.add(&row[*k], &f.mul(c, x));
                    any = true;
                }
            }
            if any {
                rows.push(row);
            }
        }
    };
    for x in 0..objects {
        for y in 0..objects {
            let h = c.hom(x, y);
            for g in 0..h.dim() {
                let sign = if (h.degree(g) * n).rem_euclid(2) == 0 { f.one() } else { f.neg(&f.one()) };
                let mut terms = Vec::new();
                for (k, &(z, i)) in unknowns.iter().enumerate() {
                    if z == x {
                        if let Some(v) = c.compose_basis(x, x, y, g, i) {
                            terms.push((k, v.clone(), f.one()));
                        }
                    }
                    if z == y {
                        if let Some(v) = c.compose_basis(x, y, y, i, g) {
                            terms.push((k, v.clone(), f.neg(&sign)));
                        }
                    }
                }
                push(&mut rows, h.dim(), &terms);
            }
        }
    }
    if let Some(tf) = automorphism {
        let sign = if n.rem_euclid(2) == 0 { f.one() } else { f.neg(&f.one()) };
        for x in 0..objects {
            let tx = tf.objects[x];
            let mut terms = Vec::new();
            for (k, &(z, i)) in unknowns.iter().enumerate() {
                if z == tx {
                    terms.push((k, [(i, f.one())].into_iter().collect(), f.one()));
                }
                if z == x {
                    let image = tf.apply(x, x, &[(i, f.one())].into_iter().collect());
                    terms.push((k, image, f.neg(&sign)));
                }
            }
            push(&mut rows, c.hom(tx, tx).dim(), &terms);
        }
    }
    let m = Matrix::from_rows(f, &rows, unknowns.len());
    unknowns.len() - m.rank()
}
