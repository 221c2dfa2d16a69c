//! Graded centers.
//!
//! A center element of homological degree `n` is a family `Φ_x ∈ C(x, x)_n`
//! with `f Φ_x = (-1)^{|f| n} Φ_y f` for every basis morphism `f: x → y`.
//! With an automorphism `T` it must also satisfy `Φ_{Tx} = (-1)^n T Φ_x`.
//! Windows and dimension queries use the cohomological degree `t = -n`.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::dgcat::{complex_category, DGCategory, FreeComplex, GradedFunctor};
use crate::error::{Error, Result};
use crate::linalg::{add_entry, axpy, dense, Field, Matrix, SVec, Scalar, Subquotient};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CenterElement {
    /// Homological degree `n`.
    pub degree: i64,
    /// `components[x] ∈ C(x, x)_n`.
    pub components: Vec<SVec>,
}

impl CenterElement {
    pub fn is_zero(&self) -> bool {
        self.components.iter().all(SVec::is_empty)
    }
}

/// A center computed on a finite window of cohomological degrees.
#[derive(Clone, Debug)]
pub struct CenterAlgebra {
    pub field: Field,
    /// Cohomological degrees `lo ..= hi`.
    pub window: (i64, i64),
    /// Basis of `Z^t`, keyed by cohomological `t`.
    pub basis: BTreeMap<i64, Vec<CenterElement>>,
    pub with_automorphism: bool,
    pub caveat: Option<String>,
    /// Flat coordinates: for each object the basis indices of `C(x, x)` in
    /// degree `n`, concatenated.
    layout: BTreeMap<i64, Vec<(usize, usize)>>,
}

impl CenterAlgebra {
    pub fn dim(&self, t: i64) -> usize {
        self.basis.get(&t).map_or(0, Vec::len)
    }

    pub fn dims(&self) -> Vec<(i64, usize)> {
        (self.window.0..=self.window.1).map(|t| (t, self.dim(t))).collect()
    }

    fn flatten(&self, t: i64, e: &CenterElement) -> Vec<Scalar> {
        let layout = &self.layout[&t];
        layout
            .iter()
            .map(|(x, i)| e.components[*x].get(i).cloned().unwrap_or_else(|| self.field.zero()))
            .collect()
    }

    /// Coordinates of a center element of cohomological degree `t` in the basis.
    pub fn coordinates(&self, t: i64, e: &CenterElement) -> Option<Vec<Scalar>> {
        let basis = self.basis.get(&t)?;
        let cols: Vec<Vec<Scalar>> = basis.iter().map(|b| self.flatten(t, b)).collect();
        let m = Matrix::from_columns(self.field, self.layout[&t].len(), &cols);
        m.solve(&self.flatten(t, e))
    }

    /// Componentwise composition `(ab)_x = a_x b_x`.
    pub fn product(c: &DGCategory, a: &CenterElement, b: &CenterElement) -> CenterElement {
        CenterElement {
            degree: a.degree + b.degree,
            components: (0..c.object_count())
                .map(|x| c.compose(x, x, x, &a.components[x], &b.components[x]))
                .collect(),
        }
    }

    /// `(t_a, i, t_b, j) ↦` coordinates of `b_i b_j` in degree `t_a + t_b`,
    /// for pairs whose product degree lies in the window.
    pub fn multiplication_table(&self, c: &DGCategory) -> Result<BTreeMap<(i64, usize, i64, usize), Vec<Scalar>>> {
        let mut table = BTreeMap::new();
        for (&ta, ba) in &self.basis {
            for (&tb, bb) in &self.basis {
                if !(self.window.0..=self.window.1).contains(&(ta + tb)) {
                    continue;
                }
                for (i, x) in ba.iter().enumerate() {
                    for (j, y) in bb.iter().enumerate() {
                        let p = CenterAlgebra::product(c, x, y);
                        let coords = if p.is_zero() {
                            vec![self.field.zero(); self.dim(ta + tb)]
                        } else {
                            self.coordinates(ta + tb, &p)
                                .ok_or_else(|| Error::Inconsistent("product of center elements left the center".into()))?
                        };
                        table.insert((ta, i, tb, j), coords);
                    }
                }
            }
        }
        Ok(table)
    }

    /// `ab = (-1)^{|a||b|} ba` on all basis pairs.
    pub fn is_graded_commutative(&self, c: &DGCategory) -> bool {
        let f = self.field;
        self.basis.values().flatten().all(|a| {
            self.basis.values().flatten().all(|b| {
                let ab = CenterAlgebra::product(c, a, b);
                let ba = CenterAlgebra::product(c, b, a);
                let sign = f.sign(a.degree * b.degree);
                ab.components.iter().zip(&ba.components).all(|(u, v)| {
                    let mut diff = u.clone();
                    axpy(f, &mut diff, &f.neg(&sign), v);
                    diff.is_empty()
                })
            })
        })
    }

    /// Whether every basis element of `self` lies in `other`, degreewise.
    pub fn is_contained_in(&self, other: &CenterAlgebra) -> bool {
        self.basis
            .iter()
            .all(|(&t, b)| b.iter().all(|e| other.coordinates(t, e).is_some() || e.is_zero()))
    }
}

fn layout(c: &DGCategory, n: i64) -> Vec<(usize, usize)> {
    (0..c.object_count())
        .flat_map(|x| c.hom(x, x).indices_in_degree(n).into_iter().map(move |i| (x, i)))
        .collect()
}

/// Rows of the naturality conditions in degree `n` over the flat unknowns.
fn naturality_rows(c: &DGCategory, n: i64, unknowns: &[(usize, usize)]) -> Vec<Vec<Scalar>> {
    let f = c.field();
    let k = c.object_count();
    let mut rows = Vec::new();
    for x in 0..k {
        for y in 0..k {
            let h = c.hom(x, y);
            for fi in 0..h.dim() {
                let fv: SVec = [(fi, f.one())].into_iter().collect();
                let sign = f.sign(h.degree(fi) * n);
                // One column per unknown, as a vector in C(x, y).
                let mut cols: Vec<SVec> = Vec::with_capacity(unknowns.len());
                for &(z, i) in unknowns {
                    let e: SVec = [(i, f.one())].into_iter().collect();
                    let mut v = SVec::new();
                    if z == x {
                        axpy(f, &mut v, &f.one(), &c.compose(x, x, y, &fv, &e));
                    }
                    if z == y {
                        axpy(f, &mut v, &f.neg(&sign), &c.compose(x, y, y, &e, &fv));
                    }
                    cols.push(v);
                }
                for r in 0..h.dim() {
                    if cols.iter().any(|v| v.contains_key(&r)) {
                        rows.push(cols.iter().map(|v| v.get(&r).cloned().unwrap_or_else(|| f.zero())).collect());
                    }
                }
            }
        }
    }
    rows
}

/// Rows of `Φ_{Tx} - (-1)^n T Φ_x = 0`.
fn automorphism_rows(c: &DGCategory, t: &GradedFunctor, n: i64, unknowns: &[(usize, usize)]) -> Vec<Vec<Scalar>> {
    let f = c.field();
    let sign = f.sign(n);
    let mut rows = Vec::new();
    for x in 0..c.object_count() {
        let tx = t.objects[x];
        let dim = c.hom(tx, tx).dim();
        let mut cols: Vec<SVec> = Vec::with_capacity(unknowns.len());
        for &(z, i) in unknowns {
            let mut v = SVec::new();
            if z == tx {
                add_entry(f, &mut v, i, &f.one());
            }
            if z == x {
                let e: SVec = [(i, f.one())].into_iter().collect();
                axpy(f, &mut v, &f.neg(&sign), &t.apply(x, x, &e));
            }
            cols.push(v);
        }
        for r in 0..dim {
            if cols.iter().any(|v| v.contains_key(&r)) {
                rows.push(cols.iter().map(|v| v.get(&r).cloned().unwrap_or_else(|| f.zero())).collect());
            }
        }
    }
    rows
}

fn solve_center(c: &DGCategory, window: (i64, i64), t: Option<&GradedFunctor>) -> CenterAlgebra {
    let f = c.field();
    let (lo, hi) = (window.0.min(window.1), window.0.max(window.1));
    let solved: Vec<(i64, Vec<(usize, usize)>, Vec<CenterElement>)> = (lo..=hi)
        .into_par_iter()
        .map(|deg| {
            let n = -deg;
            let unknowns = layout(c, n);
            let mut rows = naturality_rows(c, n, &unknowns);
            if let Some(t) = t {
                rows.extend(automorphism_rows(c, t, n, &unknowns));
            }
            let ker = Matrix::from_rows(f, &rows, unknowns.len()).kernel_basis();
            let basis = ker
                .columns()
                .into_iter()
                .map(|v| {
                    let mut components = vec![SVec::new(); c.object_count()];
                    for (k, &(x, i)) in unknowns.iter().enumerate() {
                        add_entry(f, &mut components[x], i, &v[k]);
                    }
                    CenterElement { degree: n, components }
                })
                .collect();
            (deg, unknowns, basis)
        })
        .collect();
    let mut basis = BTreeMap::new();
    let mut lay = BTreeMap::new();
    for (deg, u, b) in solved {
        lay.insert(deg, u);
        basis.insert(deg, b);
    }
    CenterAlgebra {
        field: f,
        window: (lo, hi),
        basis,
        with_automorphism: t.is_some(),
        caveat: None,
        layout: lay,
    }
}

/// The graded center of `c` (its differential is ignored) in cohomological
/// degrees `window.0 ..= window.1`.
pub fn graded_center(c: &DGCategory, window: (i64, i64)) -> CenterAlgebra {
    solve_center(c, window, None)
}

/// The subalgebra of centers compatible with `t` up to sign.
pub fn graded_center_with_automorphism(c: &DGCategory, t: &GradedFunctor, window: (i64, i64)) -> Result<CenterAlgebra> {
    if let Some(v) = t.validate(c, c) {
        return Err(Error::validation(v.axiom, v.witness));
    }
    t.inverse(c)?;
    Ok(solve_center(c, window, Some(t)))
}

/// The center of the underlying graded category with the differential
/// `Φ ↦ (dΦ_x)_x`, which raises the cohomological degree by one.
#[derive(Clone, Debug)]
pub struct DGCenter {
    /// Solved on the window widened by one on each side.
    pub algebra: CenterAlgebra,
    /// Reported cohomological degrees.
    pub window: (i64, i64),
    /// `differential[t]: Z^t → Z^{t+1}` in the center bases.
    pub differential: BTreeMap<i64, Matrix>,
    /// `H^t` of the center complex, in coordinates of the basis of `Z^t`.
    pub cohomology: BTreeMap<i64, Subquotient>,
}

impl DGCenter {
    pub fn cohomology_dim(&self, t: i64) -> usize {
        self.cohomology.get(&t).map_or(0, Subquotient::dim)
    }

    /// A center element from coordinates in the basis of `Z^t`.
    pub fn element(&self, t: i64, coords: &[Scalar]) -> CenterElement {
        let f = self.algebra.field;
        let basis = &self.algebra.basis[&t];
        let n = basis.first().map_or(0, |b| b.components.len());
        let mut components = vec![SVec::new(); n];
        for (b, c) in basis.iter().zip(coords) {
            for (x, v) in b.components.iter().enumerate() {
                axpy(f, &mut components[x], c, v);
            }
        }
        CenterElement { degree: -t, components }
    }
}

/// The dg center of `a` on cohomological degrees `window`.
pub fn dg_center_complex(a: &DGCategory, window: (i64, i64)) -> Result<DGCenter> {
    let f = a.field();
    let (lo, hi) = (window.0.min(window.1), window.0.max(window.1));
    let algebra = graded_center(a, (lo - 1, hi + 1));
    let mut differential = BTreeMap::new();
    for t in lo - 1..=hi {
        let cols = algebra.basis[&t]
            .iter()
            .map(|e| {
                let de = CenterElement {
                    degree: e.degree - 1,
                    components: (0..a.object_count()).map(|x| a.d(x, x, &e.components[x])).collect(),
                };
                if de.is_zero() {
                    return Ok(vec![f.zero(); algebra.dim(t + 1)]);
                }
                algebra.coordinates(t + 1, &de).ok_or_else(|| {
                    Error::WindowTooSmall(format!("differential of the center leaves the center in degree {}", t + 1))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        differential.insert(t, Matrix::from_columns(f, algebra.dim(t + 1), &cols));
    }
    let mut cohomology = BTreeMap::new();
    for t in lo..=hi {
        let z = differential[&t].kernel_basis();
        cohomology.insert(t, Subquotient::new(&z, &differential[&(t - 1)])?);
    }
    Ok(DGCenter {
        algebra,
        window: (lo, hi),
        differential,
        cohomology,
    })
}

pub const TRUNCATION_CAVEAT: &str = "finite truncation of Per_A";

/// The complexes used for the truncated center: stalks `S^k` for
/// `k ∈ [m, n]` and disks `D^k` for `m < k ≤ n`.
pub fn truncated_complexes(a: &DGCategory, m: i64, n: i64) -> Vec<FreeComplex> {
    let mut out: Vec<FreeComplex> = (m..=n).map(FreeComplex::stalk).collect();
    out.extend((m + 1..=n).map(|k| FreeComplex::disk(a, k)));
    out
}

/// The graded center of the cycle category of bounded complexes over a
/// degree-0 algebra `a`, supported in `[m, n]`.
pub fn center_of_truncated_complex_category(a: &DGCategory, m: i64, n: i64) -> Result<(DGCategory, CenterAlgebra)> {
    if n - m < 2 {
        return Err(Error::WindowTooSmall("the truncation window needs n - m ≥ 2".into()));
    }
    let cat = complex_category(a, &truncated_complexes(a, m, n))?;
    let cycles = cat.cycle_category()?.category;
    let span = n - m + 1;
    let mut z = graded_center(&cycles, (-span, span));
    z.caveat = Some(TRUNCATION_CAVEAT.to_string());
    Ok((cycles, z))
}

/// Brute-force center of a one-object graded algebra: all `z` of degree
/// `n` with `az = (-1)^{|a| n} za`, by direct enumeration of basis products.
pub fn one_object_center_dim(a: &DGCategory, t: i64) -> usize {
    let f = a.field();
    let h = a.hom(0, 0);
    let n = -t;
    let zs = h.indices_in_degree(n);
    let mut rows = Vec::new();
    for b in 0..h.dim() {
        let sign = f.sign(h.degree(b) * n);
        let bv: SVec = [(b, f.one())].into_iter().collect();
        let cols: Vec<Vec<Scalar>> = zs
            .iter()
            .map(|&z| {
                let zv: SVec = [(z, f.one())].into_iter().collect();
                let mut v = a.compose(0, 0, 0, &bv, &zv);
                axpy(f, &mut v, &f.neg(&sign), &a.compose(0, 0, 0, &zv, &bv));
                dense(&v, h.dim())
            })
            .collect();
        let m = Matrix::from_columns(f, h.dim(), &cols);
        for r in 0..h.dim() {
            rows.push(m.row(r).to_vec());
        }
    }
    Matrix::from_rows(f, &rows, zs.len()).kernel_basis().cols()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dgcat::CategoryBuilder;

    const Q: Field = Field::Rationals;

    fn monogenic(f: Field, deg: i64) -> DGCategory {
        let mut b = CategoryBuilder::new(f);
        b.object("*").unwrap();
        b.identity("*", "1").unwrap();
        b.basis("*", "*", "x", deg).unwrap();
        b.build().unwrap()
    }

    #[test]
    fn dual_numbers_center() {
        let a = monogenic(Q, 0);
        let z = graded_center(&a, (-2, 2));
        assert_eq!(z.dims(), vec![(-2, 0), (-1, 0), (0, 2), (1, 0), (2, 0)]);
        assert!(z.is_graded_commutative(&a));
        assert_eq!(z.multiplication_table(&a).unwrap().len(), 4);
    }

    #[test]
    fn exterior_center_and_identity_automorphism() {
        let a = monogenic(Q, -3);
        let z = graded_center(&a, (-4, 4));
        assert_eq!(z.dim(0), 1);
        assert_eq!(z.dim(3), 1);
        assert_eq!(one_object_center_dim(&a, 3), 1);
        let id = GradedFunctor::identity(&a);
        let zt = graded_center_with_automorphism(&a, &id, (-4, 4)).unwrap();
        assert_eq!(zt.dim(0), 1);
        assert_eq!(zt.dim(3), 0);
        assert!(zt.is_contained_in(&z));
        let par = GradedFunctor::parity(&a);
        let zp = graded_center_with_automorphism(&a, &par, (-4, 4)).unwrap();
        assert_eq!(zp.dims(), z.dims());
    }

    #[test]
    fn odd_square_zero_generator_is_central() {
        // x·x = 0, so the sign condition holds trivially.
        let a = monogenic(Q, -1);
        assert_eq!(graded_center(&a, (1, 1)).dim(1), 1);
    }

    #[test]
    fn dg_center_of_acyclic_algebra() {
        let mut b = CategoryBuilder::new(Q);
        b.object("*").unwrap();
        b.identity("*", "1").unwrap();
        b.basis("*", "*", "u", 1).unwrap();
        b.differential("*", "*", "u", vec![("1".to_string(), Q.one())]).unwrap();
        let a = b.build().unwrap();
        a.validate().into_result().unwrap();
        let zc = dg_center_complex(&a, (-2, 2)).unwrap();
        assert_eq!(zc.algebra.dim(0), 1);
        assert_eq!(zc.algebra.dim(-1), 1);
        for t in -2..=2 {
            assert_eq!(zc.cohomology_dim(t), 0);
        }
    }

    #[test]
    fn truncated_complexes_over_the_ground_field() {
        let k = {
            let mut b = CategoryBuilder::new(Q);
            b.object("*").unwrap();
            b.identity("*", "1").unwrap();
            b.build().unwrap()
        };
        let (cycles, z) = center_of_truncated_complex_category(&k, 0, 2).unwrap();
        assert!(z.dim(0) >= 1);
        assert!(z.dim(1) >= 1);
        assert!(z.is_graded_commutative(&cycles));
        // Components on disks vanish for |t| ≥ 2.
        let disks: Vec<usize> = (0..cycles.object_count()).filter(|&x| cycles.objects()[x].starts_with('D')).collect();
        for t in [-3, -2, 2, 3] {
            for e in &z.basis[&t] {
                assert!(disks.iter().all(|&x| e.components[x].is_empty()));
            }
        }
    }
}
