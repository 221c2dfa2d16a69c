//! Graded and dg vector spaces with finite support.
//!
//! Indexing is homological throughout: `V_n` sits in degree `n` and the
//! differential lowers degree by one. A cohomological index `t` is read as
//! `V^t = V_{-t}`.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{Field, Matrix, Subquotient};

/// `(-1)^{ab}`, the sign of swapping homogeneous elements of degrees `a` and `b`.
pub fn koszul_swap_sign(a: i64, b: i64) -> i64 {
    if (a * b).rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ShiftDirection {
    /// `(Σ^n V)_m = V_{m-n}`.
    Sigma,
    /// `(Ω^n V)_m = V_{m+n}`.
    Omega,
}

/// Labels are unique across all degrees; empty degrees are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct GradedVectorSpace {
    basis: BTreeMap<i64, Vec<String>>,
}

impl GradedVectorSpace {
    pub fn new(basis: BTreeMap<i64, Vec<String>>) -> Result<GradedVectorSpace> {
        let mut seen = std::collections::HashSet::new();
        for labels in basis.values() {
            for l in labels {
                if !seen.insert(l.clone()) {
                    return Err(Error::validation(
                        "basis label uniqueness",
                        format!("label `{l}` appears twice"),
                    ));
                }
            }
        }
        let basis = basis.into_iter().filter(|(_, v)| !v.is_empty()).collect();
        Ok(GradedVectorSpace { basis })
    }

    /// One basis element per label in the given degree.
    pub fn concentrated(degree: i64, labels: &[&str]) -> GradedVectorSpace {
        let mut b = BTreeMap::new();
        b.insert(degree, labels.iter().map(|s| s.to_string()).collect());
        GradedVectorSpace::new(b).expect("labels must be distinct")
    }

    pub fn ground() -> GradedVectorSpace {
        GradedVectorSpace::concentrated(0, &["1"])
    }

    pub fn support(&self) -> impl Iterator<Item = i64> + '_ {
        self.basis.keys().copied()
    }

    pub fn dim(&self, n: i64) -> usize {
        self.basis.get(&n).map_or(0, Vec::len)
    }

    pub fn total_dim(&self) -> usize {
        self.basis.values().map(Vec::len).sum()
    }

    pub fn labels(&self, n: i64) -> &[String] {
        self.basis.get(&n).map_or(&[], Vec::as_slice)
    }

    pub fn basis(&self) -> &BTreeMap<i64, Vec<String>> {
        &self.basis
    }

    /// Degree and position of a label.
    pub fn locate(&self, label: &str) -> Option<(i64, usize)> {
        self.basis
            .iter()
            .find_map(|(&n, ls)| ls.iter().position(|l| l == label).map(|i| (n, i)))
    }

    pub fn dims(&self) -> BTreeMap<i64, usize> {
        self.basis.iter().map(|(&n, v)| (n, v.len())).collect()
    }

    pub fn shift(&self, n: i64, dir: ShiftDirection) -> GradedVectorSpace {
        let by = match dir {
            ShiftDirection::Sigma => n,
            ShiftDirection::Omega => -n,
        };
        GradedVectorSpace {
            basis: self.basis.iter().map(|(&m, v)| (m + by, v.clone())).collect(),
        }
    }
}

/// A graded space with a differential `d_n: V_n → V_{n-1}`. Missing
/// entries of `d` are zero maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DGVectorSpace {
    field: Field,
    space: GradedVectorSpace,
    d: BTreeMap<i64, Matrix>,
}

impl DGVectorSpace {
    /// `d[n]` must have shape `dim V_{n-1} × dim V_n`. Squaring to zero is
    /// checked by [`DGVectorSpace::check_d_squared`], not here.
    pub fn new(
        field: Field,
        space: GradedVectorSpace,
        d: BTreeMap<i64, Matrix>,
    ) -> Result<DGVectorSpace> {
        let mut kept = BTreeMap::new();
        for (n, m) in d {
            if m.rows() != space.dim(n - 1) || m.cols() != space.dim(n) {
                return Err(Error::validation(
                    "differential shape",
                    format!(
                        "d_{n} is {}x{}, expected {}x{}",
                        m.rows(),
                        m.cols(),
                        space.dim(n - 1),
                        space.dim(n)
                    ),
                ));
            }
            if !m.is_zero() {
                kept.insert(n, m);
            }
        }
        Ok(DGVectorSpace {
            field,
            space,
            d: kept,
        })
    }

    pub fn zero_differential(field: Field, space: GradedVectorSpace) -> DGVectorSpace {
        DGVectorSpace {
            field,
            space,
            d: BTreeMap::new(),
        }
    }

    pub fn ground(field: Field) -> DGVectorSpace {
        DGVectorSpace::zero_differential(field, GradedVectorSpace::ground())
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn space(&self) -> &GradedVectorSpace {
        &self.space
    }

    pub fn dim(&self, n: i64) -> usize {
        self.space.dim(n)
    }

    pub fn support(&self) -> Vec<i64> {
        self.space.support().collect()
    }

    /// `d_n` as a dense matrix, zero when not stored.
    pub fn d(&self, n: i64) -> Matrix {
        self.d
            .get(&n)
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(self.field, self.dim(n - 1), self.dim(n)))
    }

    pub fn has_zero_differential(&self) -> bool {
        self.d.is_empty()
    }

    /// First degree `n` with `d_{n-1} d_n ≠ 0`, as an error.
    pub fn check_d_squared(&self) -> Result<()> {
        for &n in self.d.keys() {
            if self.d.contains_key(&(n - 1)) && !self.d(n - 1).mul(&self.d(n)).is_zero() {
                return Err(Error::validation(
                    "d squared is zero",
                    format!("d_{} d_{} != 0", n - 1, n),
                ));
            }
        }
        Ok(())
    }

    pub fn shift(&self, n: i64, dir: ShiftDirection) -> DGVectorSpace {
        let by = match dir {
            ShiftDirection::Sigma => n,
            ShiftDirection::Omega => -n,
        };
        let sign = self.field.sign(n);
        DGVectorSpace {
            field: self.field,
            space: self.space.shift(n, dir),
            d: self.d.iter().map(|(&m, d)| (m + by, d.scale(&sign))).collect(),
        }
    }

    /// `X ⊗ Y` with `d(x⊗y) = dx⊗y + (-1)^{|x|} x⊗dy`.
    pub fn tensor(&self, other: &DGVectorSpace) -> DGVectorSpace {
        let f = self.field;
        let layout = TensorLayout::new(&self.space, &other.space);
        let mut d = BTreeMap::new();
        for (&n, entries) in &layout.entries {
            if !layout.entries.contains_key(&(n - 1)) {
                continue;
            }
            let mut m = Matrix::zeros(f, layout.dim(n - 1), entries.len());
            for (col, &(i, a, b)) in entries.iter().enumerate() {
                let dx = self.d(i);
                for r in 0..dx.rows() {
                    let c = dx.get(r, a);
                    if !c.is_zero() {
                        let row = layout.index(n - 1, i - 1, r, b);
                        m.add_to(row, col, c);
                    }
                }
                let dy = other.d(n - i);
                let sign = f.sign(i);
                for r in 0..dy.rows() {
                    let c = dy.get(r, b);
                    if !c.is_zero() {
                        let row = layout.index(n - 1, i, a, r);
                        m.add_to(row, col, &f.mul(&sign, c));
                    }
                }
            }
            d.insert(n, m);
        }
        DGVectorSpace::new(f, layout.space(&self.space, &other.space), d)
            .expect("tensor differential has consistent shapes")
    }

    /// `Hom(X, Y)` with basis the elementary maps `x ↦ y`, and
    /// `δf = d_Y f - (-1)^{|f|} f d_X`.
    pub fn hom_complex(&self, target: &DGVectorSpace) -> DGVectorSpace {
        let f = self.field;
        let layout = HomLayout::new(&self.space, &target.space);
        let mut d = BTreeMap::new();
        for (&n, entries) in &layout.entries {
            if !layout.entries.contains_key(&(n - 1)) {
                continue;
            }
            let mut m = Matrix::zeros(f, layout.dim(n - 1), entries.len());
            let sign = f.neg(&f.sign(n));
            for (col, &(src, a, b)) in entries.iter().enumerate() {
                // d_Y ∘ (x_a ↦ y_b): x_a ↦ d y_b.
                let dy = target.d(src + n);
                for r in 0..dy.rows() {
                    let c = dy.get(r, b);
                    if !c.is_zero() {
                        m.add_to(layout.index(n - 1, src, a, r), col, c);
                    }
                }
                // (x_a ↦ y_b) ∘ d_X: x' ↦ (coefficient of x_a in d x') y_b.
                let dx = self.d(src + 1);
                for xp in 0..dx.cols() {
                    let c = dx.get(a, xp);
                    if !c.is_zero() {
                        m.add_to(layout.index(n - 1, src + 1, xp, b), col, &f.mul(&sign, c));
                    }
                }
            }
            d.insert(n, m);
        }
        DGVectorSpace::new(f, layout.space(&self.space, &target.space), d)
            .expect("hom differential has consistent shapes")
    }

    /// Per-degree `ker d_n / im d_{n+1}`.
    pub fn homology(&self) -> Result<Homology> {
        self.check_d_squared()?;
        let mut parts = BTreeMap::new();
        let mut basis = BTreeMap::new();
        for n in self.support() {
            let z = self.d(n).kernel_basis();
            let b = self.d(n + 1);
            let sq = Subquotient::new(&z, &b)?;
            if sq.dim() > 0 {
                let labels = self.space.labels(n);
                let names = (0..sq.dim())
                    .map(|i| homology_label(labels, &sq.representative(i), self.field))
                    .collect();
                basis.insert(n, names);
            }
            parts.insert(n, sq);
        }
        Ok(Homology {
            space: disambiguate(basis),
            parts,
        })
    }
}

/// Names a homology class after its representative: the label itself for
/// a basis vector, otherwise `[a+2b]`-style.
pub(crate) fn homology_label(labels: &[String], v: &[crate::linalg::Scalar], f: Field) -> String {
    let support: Vec<usize> = (0..v.len()).filter(|&i| !v[i].is_zero()).collect();
    if support.len() == 1 && v[support[0]] == f.one() {
        return format!("[{}]", labels[support[0]]);
    }
    let terms: Vec<String> = support
        .iter()
        .map(|&i| {
            if v[i] == f.one() {
                labels[i].clone()
            } else {
                format!("{}*{}", f.format_scalar(&v[i]), labels[i])
            }
        })
        .collect();
    format!("[{}]", terms.join("+"))
}

fn disambiguate(basis: BTreeMap<i64, Vec<String>>) -> GradedVectorSpace {
    let mut seen = std::collections::HashMap::<String, usize>::new();
    let basis = basis
        .into_iter()
        .map(|(n, ls)| {
            let ls = ls
                .into_iter()
                .map(|l| {
                    let k = seen.entry(l.clone()).or_insert(0);
                    *k += 1;
                    if *k == 1 {
                        l
                    } else {
                        format!("{l}#{k}")
                    }
                })
                .collect();
            (n, ls)
        })
        .collect();
    GradedVectorSpace::new(basis).expect("labels were disambiguated")
}

/// Homology with the chosen representative lifts in each degree.
#[derive(Clone, Debug)]
pub struct Homology {
    pub space: GradedVectorSpace,
    pub parts: BTreeMap<i64, Subquotient>,
}

impl Homology {
    pub fn dim(&self, n: i64) -> usize {
        self.parts.get(&n).map_or(0, Subquotient::dim)
    }

    pub fn dims(&self) -> BTreeMap<i64, usize> {
        self.parts
            .iter()
            .filter(|(_, s)| s.dim() > 0)
            .map(|(&n, s)| (n, s.dim()))
            .collect()
    }

    pub fn part(&self, n: i64) -> Option<&Subquotient> {
        self.parts.get(&n)
    }
}

/// Basis bookkeeping for `X ⊗ Y`: in each total degree the entries
/// `(deg x, index of x, index of y)`, left factor major with degrees descending.
struct TensorLayout {
    entries: BTreeMap<i64, Vec<(i64, usize, usize)>>,
    offsets: BTreeMap<(i64, i64), usize>,
    ydims: BTreeMap<i64, usize>,
}

impl TensorLayout {
    fn new(x: &GradedVectorSpace, y: &GradedVectorSpace) -> TensorLayout {
        let mut entries: BTreeMap<i64, Vec<(i64, usize, usize)>> = BTreeMap::new();
        let mut offsets = BTreeMap::new();
        for i in x.support().collect::<Vec<_>>().into_iter().rev() {
            for j in y.support().collect::<Vec<_>>().into_iter().rev() {
                let e = entries.entry(i + j).or_default();
                offsets.insert((i + j, i), e.len());
                for a in 0..x.dim(i) {
                    for b in 0..y.dim(j) {
                        e.push((i, a, b));
                    }
                }
            }
        }
        TensorLayout {
            entries,
            offsets,
            ydims: y.dims(),
        }
    }

    fn dim(&self, n: i64) -> usize {
        self.entries.get(&n).map_or(0, Vec::len)
    }

    fn index(&self, n: i64, i: i64, a: usize, b: usize) -> usize {
        let yd = self.ydims[&(n - i)];
        self.offsets[&(n, i)] + a * yd + b
    }

    fn space(&self, x: &GradedVectorSpace, y: &GradedVectorSpace) -> GradedVectorSpace {
        let basis = self
            .entries
            .iter()
            .map(|(&n, es)| {
                let ls = es
                    .iter()
                    .map(|&(i, a, b)| format!("{}⊗{}", x.labels(i)[a], y.labels(n - i)[b]))
                    .collect();
                (n, ls)
            })
            .collect();
        GradedVectorSpace::new(basis).expect("tensor labels are distinct")
    }
}

/// Basis bookkeeping for `Hom(X, Y)`: in degree `n` the entries
/// `(deg x, index of x, index of y)` with `deg y = deg x + n`.
struct HomLayout {
    entries: BTreeMap<i64, Vec<(i64, usize, usize)>>,
    offsets: BTreeMap<(i64, i64), usize>,
    ydims: BTreeMap<i64, usize>,
}

impl HomLayout {
    fn new(x: &GradedVectorSpace, y: &GradedVectorSpace) -> HomLayout {
        let xs: Vec<i64> = x.support().collect();
        let ys: Vec<i64> = y.support().collect();
        let mut degrees: Vec<i64> = xs
            .iter()
            .flat_map(|&m| ys.iter().map(move |&k| k - m))
            .collect();
        degrees.sort_unstable();
        degrees.dedup();
        let mut entries: BTreeMap<i64, Vec<(i64, usize, usize)>> = BTreeMap::new();
        let mut offsets = BTreeMap::new();
        for n in degrees {
            let e = entries.entry(n).or_default();
            for &m in xs.iter().rev() {
                if y.dim(m + n) == 0 {
                    continue;
                }
                offsets.insert((n, m), e.len());
                for a in 0..x.dim(m) {
                    for b in 0..y.dim(m + n) {
                        e.push((m, a, b));
                    }
                }
            }
        }
        HomLayout {
            entries,
            offsets,
            ydims: y.dims(),
        }
    }

    fn dim(&self, n: i64) -> usize {
        self.entries.get(&n).map_or(0, Vec::len)
    }

    fn index(&self, n: i64, m: i64, a: usize, b: usize) -> usize {
        self.offsets[&(n, m)] + a * self.ydims[&(m + n)] + b
    }

    fn space(&self, x: &GradedVectorSpace, y: &GradedVectorSpace) -> GradedVectorSpace {
        let basis = self
            .entries
            .iter()
            .map(|(&n, es)| {
                let ls = es
                    .iter()
                    .map(|&(m, a, b)| format!("{}↦{}", x.labels(m)[a], y.labels(m + n)[b]))
                    .collect();
                (n, ls)
            })
            .collect();
        GradedVectorSpace::new(basis).expect("hom labels are distinct")
    }
}

/// A homogeneous map `V_m → W_{m+degree}`; absent blocks are zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedMap {
    pub degree: i64,
    pub blocks: BTreeMap<i64, Matrix>,
}

impl GradedMap {
    pub fn zero(degree: i64) -> GradedMap {
        GradedMap {
            degree,
            blocks: BTreeMap::new(),
        }
    }

    pub fn block(&self, f: Field, source: &GradedVectorSpace, target: &GradedVectorSpace, m: i64) -> Matrix {
        self.blocks
            .get(&m)
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(f, target.dim(m + self.degree), source.dim(m)))
    }

    /// `(-1)^m` on `V_m`.
    pub fn parity(f: Field, v: &GradedVectorSpace) -> GradedMap {
        GradedMap {
            degree: 0,
            blocks: v
                .support()
                .map(|m| (m, Matrix::identity(f, v.dim(m)).scale(&f.sign(m))))
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rationals;

    fn two_term(f: Field, top: i64) -> DGVectorSpace {
        let mut b = BTreeMap::new();
        b.insert(top, vec!["u".to_string()]);
        b.insert(top - 1, vec!["v".to_string()]);
        let mut d = BTreeMap::new();
        d.insert(top, Matrix::identity(f, 1));
        DGVectorSpace::new(f, GradedVectorSpace::new(b).unwrap(), d).unwrap()
    }

    fn sphere_pair() -> DGVectorSpace {
        let mut b = BTreeMap::new();
        b.insert(0, vec!["a".to_string()]);
        b.insert(-1, vec!["b".to_string()]);
        DGVectorSpace::zero_differential(Q, GradedVectorSpace::new(b).unwrap())
    }

    #[test]
    fn shifts() {
        let v = two_term(Q, 1);
        assert_eq!(v.shift(0, ShiftDirection::Sigma), v);
        let back = v.shift(1, ShiftDirection::Omega).shift(1, ShiftDirection::Sigma);
        assert_eq!(back, v);
        let s = GradedVectorSpace::concentrated(0, &["x"]).shift(1, ShiftDirection::Sigma);
        assert_eq!(s.support().collect::<Vec<_>>(), vec![1]);
        let sv = v.shift(1, ShiftDirection::Sigma);
        assert_eq!(sv.d(2), Matrix::identity(Q, 1).scale(&Q.from_int(-1)));
    }

    #[test]
    fn tensor_unit_and_support() {
        let v = two_term(Q, 1);
        let t = v.tensor(&DGVectorSpace::ground(Q));
        assert_eq!(t.space().dims(), v.space().dims());
        assert_eq!(t.d(1), v.d(1));
        let s = sphere_pair();
        let ss = s.tensor(&s);
        assert_eq!(
            ss.space().dims().into_iter().collect::<Vec<_>>(),
            vec![(-2, 1), (-1, 2), (0, 1)]
        );
        assert_eq!(ss.space().labels(-1), ["a⊗b", "b⊗a"]);
    }

    #[test]
    fn tensor_leibniz_sign() {
        let v = two_term(Q, 1);
        let t = v.tensor(&v);
        t.check_d_squared().unwrap();
        assert!(t.homology().unwrap().dims().is_empty());
        // degree 1 basis: u⊗v, v⊗u; d(v⊗u) = (-1)^0 v⊗v, d(u⊗v) = v⊗v
        let d1 = t.d(1);
        assert_eq!(t.space().labels(1), ["u⊗v", "v⊗u"]);
        assert_eq!(d1, Matrix::from_ints(Q, &[&[1, 1]]));
        // d(u⊗u) = v⊗u - u⊗v
        let d2 = t.d(2);
        assert_eq!(d2, Matrix::from_ints(Q, &[&[-1], &[1]]));
    }

    #[test]
    fn hom_from_ground_is_target() {
        let y = two_term(Q, 0);
        let h = DGVectorSpace::ground(Q).hom_complex(&y);
        assert_eq!(h.space().dims(), y.space().dims());
        assert_eq!(h.d(0), y.d(0));
    }

    #[test]
    fn hom_homology_matches_homology_of_homs() {
        let x = two_term(Q, 1).tensor(&sphere_pair());
        let y = sphere_pair();
        let h = x.hom_complex(&y);
        h.check_d_squared().unwrap();
        assert!(h.homology().unwrap().dims().is_empty());
        let hh = y.hom_complex(&y).homology().unwrap();
        assert_eq!(
            hh.dims().into_iter().collect::<Vec<_>>(),
            vec![(-1, 1), (0, 2), (1, 1)]
        );
    }

    #[test]
    fn homology_examples() {
        assert_eq!(sphere_pair().homology().unwrap().dims().len(), 2);
        assert!(two_term(Q, 0).homology().unwrap().dims().is_empty());
        let mut bad = BTreeMap::new();
        bad.insert(1, Matrix::identity(Q, 1));
        bad.insert(0, Matrix::identity(Q, 1));
        let mut b = BTreeMap::new();
        for (n, l) in [(1, "p"), (0, "q"), (-1, "r")] {
            b.insert(n, vec![l.to_string()]);
        }
        let v = DGVectorSpace::new(Q, GradedVectorSpace::new(b).unwrap(), bad).unwrap();
        assert!(v.homology().is_err());
    }

    #[test]
    fn koszul_signs() {
        assert_eq!(koszul_swap_sign(0, 7), 1);
        assert_eq!(koszul_swap_sign(-1, -1), -1);
        assert_eq!(koszul_swap_sign(-3, -3), -1);
        assert_eq!(koszul_swap_sign(-2, -3), 1);
    }

    #[test]
    fn duplicate_labels_rejected() {
        let mut b = BTreeMap::new();
        b.insert(0, vec!["x".to_string()]);
        b.insert(1, vec!["x".to_string()]);
        assert!(GradedVectorSpace::new(b).is_err());
    }
}
