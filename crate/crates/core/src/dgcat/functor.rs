use std::collections::BTreeMap;

use num_traits::Zero;

use super::{DGCategory, HomSpace, Products, Violation};
use crate::error::{Error, Result};
use crate::linalg::{add_entry, dense, sparse, Matrix, SVec};

/// A functor between finite categories: an object map and, for each pair
/// `(x, y)`, a matrix `A(x, y) → B(Fx, Fy)` in the flat bases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedFunctor {
    pub objects: Vec<usize>,
    pub maps: Vec<Vec<Matrix>>,
}

impl GradedFunctor {
    pub fn identity(a: &DGCategory) -> GradedFunctor {
        let n = a.object_count();
        GradedFunctor {
            objects: (0..n).collect(),
            maps: (0..n)
                .map(|x| (0..n).map(|y| Matrix::identity(a.field(), a.hom(x, y).dim())).collect())
                .collect(),
        }
    }

    /// Identity on objects, `f ↦ (-1)^{|f|} f` on morphisms.
    pub fn parity(a: &DGCategory) -> GradedFunctor {
        let f = a.field();
        let mut t = GradedFunctor::identity(a);
        for x in 0..a.object_count() {
            for y in 0..a.object_count() {
                let h = a.hom(x, y);
                for i in 0..h.dim() {
                    t.maps[x][y].set(i, i, f.sign(h.degree(i)));
                }
            }
        }
        t
    }

    pub fn apply(&self, x: usize, y: usize, v: &SVec) -> SVec {
        let m = &self.maps[x][y];
        sparse(&m.mul_vec(&dense(v, m.cols())))
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &GradedFunctor) -> GradedFunctor {
        let n = other.objects.len();
        GradedFunctor {
            objects: other.objects.iter().map(|&o| self.objects[o]).collect(),
            maps: (0..n)
                .map(|x| {
                    (0..n)
                        .map(|y| {
                            let (fx, fy) = (other.objects[x], other.objects[y]);
                            self.maps[fx][fy].mul(&other.maps[x][y])
                        })
                        .collect()
                })
                .collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.objects.iter().enumerate().all(|(i, &o)| i == o)
            && self
                .maps
                .iter()
                .flatten()
                .all(|m| *m == Matrix::identity(m.field(), m.rows()))
    }

    /// The inverse of an automorphism of `a`.
    pub fn inverse(&self, a: &DGCategory) -> Result<GradedFunctor> {
        let n = a.object_count();
        let mut inv_obj = vec![usize::MAX; n];
        for (x, &tx) in self.objects.iter().enumerate() {
            if tx >= n || inv_obj[tx] != usize::MAX {
                return Err(Error::validation("functor is invertible", "object map is not a bijection"));
            }
            inv_obj[tx] = x;
        }
        let f = a.field();
        let mut maps = vec![vec![Matrix::zeros(f, 0, 0); n]; n];
        for x in 0..n {
            for y in 0..n {
                let m = &self.maps[x][y];
                let id = Matrix::identity(f, m.rows());
                let cols = m.solve_many(&id);
                if m.rows() != m.cols() || cols.iter().any(Option::is_none) {
                    return Err(Error::validation(
                        "functor is invertible",
                        format!("map on {}→{} is singular", a.objects[x], a.objects[y]),
                    ));
                }
                let cols: Vec<_> = cols.into_iter().map(Option::unwrap).collect();
                maps[self.objects[x]][self.objects[y]] = Matrix::from_columns(f, m.cols(), &cols);
            }
        }
        Ok(GradedFunctor {
            objects: inv_obj,
            maps,
        })
    }

    /// `T^k` for any integer `k`.
    pub fn power(&self, a: &DGCategory, k: i64) -> Result<GradedFunctor> {
        let base = if k < 0 { self.inverse(a)? } else { self.clone() };
        let mut out = GradedFunctor::identity(a);
        for _ in 0..k.unsigned_abs() {
            out = base.compose(&out);
        }
        Ok(out)
    }

    /// Checks shapes, degree preservation, identities, composition and
    /// differentials on basis elements.
    pub fn validate(&self, src: &DGCategory, tgt: &DGCategory) -> Option<Violation> {
        self.validate_signed(src, tgt, 1)
    }

    /// As [`GradedFunctor::validate`], with `T d = d_sign · d T` in place
    /// of `T d = d T`. Graded automorphisms of dg categories such as the
    /// parity functor anticommute with `d`.
    pub fn validate_signed(&self, src: &DGCategory, tgt: &DGCategory, d_sign: i64) -> Option<Violation> {
        let f = src.field();
        let n = src.object_count();
        let e = |i: usize| -> SVec { [(i, f.one())].into_iter().collect() };
        if self.objects.len() != n || self.objects.iter().any(|&o| o >= tgt.object_count()) {
            return Some(Violation::new("object map", "wrong number of objects".into()));
        }
        for x in 0..n {
            for y in 0..n {
                let (fx, fy) = (self.objects[x], self.objects[y]);
                let (h, th) = (src.hom(x, y), tgt.hom(fx, fy));
                let m = &self.maps[x][y];
                if m.rows() != th.dim() || m.cols() != h.dim() {
                    return Some(Violation::new(
                        "matrix shape",
                        format!("{}→{}", src.objects[x], src.objects[y]),
                    ));
                }
                for i in 0..h.dim() {
                    for r in 0..th.dim() {
                        if !m.get(r, i).is_zero() && th.degree(r) != h.degree(i) {
                            return Some(Violation::new("preserves degree", src.basis_name(x, y, i)));
                        }
                    }
                    let lhs = self.apply(x, y, h.d_of(i));
                    let mut rhs = tgt.d(fx, fy, &self.apply(x, y, &e(i)));
                    if d_sign < 0 {
                        rhs = rhs.into_iter().map(|(k, c)| (k, f.neg(&c))).collect();
                    }
                    if lhs != rhs {
                        let axiom = if d_sign < 0 { "anticommutes with d" } else { "commutes with d" };
                        return Some(Violation::new(axiom, src.basis_name(x, y, i)));
                    }
                }
            }
            let id = self.apply(x, x, &e(src.identity(x)));
            if id != e(tgt.identity(self.objects[x])) {
                return Some(Violation::new("preserves identities", src.objects[x].clone()));
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let (fx, fy, fz) = (self.objects[x], self.objects[y], self.objects[z]);
                    for g in 0..src.hom(y, z).dim() {
                        for h in 0..src.hom(x, y).dim() {
                            let lhs = self.apply(x, z, &src.compose(x, y, z, &e(g), &e(h)));
                            let rhs = tgt.compose(
                                fx,
                                fy,
                                fz,
                                &self.apply(y, z, &e(g)),
                                &self.apply(x, y, &e(h)),
                            );
                            if lhs != rhs {
                                return Some(Violation::new(
                                    "preserves composition",
                                    format!("{} · {}", src.basis_name(y, z, g), src.basis_name(x, y, h)),
                                ));
                            }
                        }
                    }
                }
            }
        }
        None
    }
}

/// The graded category `C(x, y)_n = C0(T^n x, y)` restricted to `lo ≤ n ≤ hi`,
/// and the extension of `T` to it.
#[derive(Clone, Debug)]
pub struct AutomorphismGrading {
    pub category: DGCategory,
    pub extension: GradedFunctor,
    pub window: (i64, i64),
    /// Products landing outside the window, which were set to zero.
    pub dropped_products: usize,
    /// `T` is the identity functor, so every degree repeats `C0`.
    pub trivial: bool,
}

impl AutomorphismGrading {
    /// Truncation keeps a genuine category only when no product was dropped
    /// or the window is one-sided (then the dropped part is an ideal).
    pub fn is_exact_category(&self) -> bool {
        self.dropped_products == 0 || self.window.0 == 0 || self.window.1 == 0
    }
}

/// `c0` must be concentrated in degree 0 and `t` an automorphism of it.
/// Basis labels are `label@n` for the copy of `C0(T^n x, y)` in degree `n`.
pub fn graded_from_automorphism(
    c0: &DGCategory,
    t: &GradedFunctor,
    window: (i64, i64),
) -> Result<AutomorphismGrading> {
    let (lo, hi) = window;
    if lo > 0 || hi < 0 {
        return Err(Error::WindowTooSmall(format!(
            "window [{lo}, {hi}] must contain degree 0"
        )));
    }
    if !c0.is_degree_zero() {
        return Err(Error::validation(
            "category is concentrated in degree 0",
            "some morphism has nonzero degree or differential",
        ));
    }
    if let Some(v) = t.validate(c0, c0) {
        return Err(Error::validation(v.axiom, v.witness));
    }
    let f = c0.field();
    let n = c0.object_count();
    let powers: BTreeMap<i64, GradedFunctor> = (2 * lo..=2 * hi)
        .map(|k| Ok((k, t.power(c0, k)?)))
        .collect::<Result<_>>()?;
    // offsets[x][y][n - lo]: start of the degree-n block in C(x, y)
    let mut offsets = vec![vec![Vec::new(); n]; n];
    let mut homs = vec![vec![HomSpace::default(); n]; n];
    for x in 0..n {
        for y in 0..n {
            let mut labels = Vec::new();
            let mut degrees = Vec::new();
            for k in lo..=hi {
                offsets[x][y].push(labels.len());
                let tx = powers[&k].objects[x];
                for l in c0.hom(tx, y).labels() {
                    labels.push(format!("{l}@{k}"));
                    degrees.push(k);
                }
            }
            offsets[x][y].push(labels.len());
            homs[x][y] = HomSpace::with_zero_differential(labels, degrees);
        }
    }
    let mut dropped = 0;
    let mut comp: BTreeMap<(usize, usize, usize), Products> = BTreeMap::new();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let mut prods = Products::new();
                for m in lo..=hi {
                    let tmy = powers[&m].objects[y];
                    for k in lo..=hi {
                        let g_off = offsets[y][z][(m - lo) as usize];
                        let f_off = offsets[x][y][(k - lo) as usize];
                        let g_dim = offsets[y][z][(m - lo) as usize + 1] - g_off;
                        let f_dim = offsets[x][y][(k - lo) as usize + 1] - f_off;
                        if g_dim == 0 || f_dim == 0 {
                            continue;
                        }
                        let tkx = powers[&k].objects[x];
                        let tmkx = powers[&(m + k)].objects[x];
                        for gi in 0..g_dim {
                            for fi in 0..f_dim {
                                // gf = g ∘ T^m(f) in C0(T^{m+k} x, z)
                                let tf = powers[&m].apply(tkx, y, &[(fi, f.one())].into_iter().collect());
                                let g: SVec = [(gi, f.one())].into_iter().collect();
                                let v = c0.compose(tmkx, tmy, z, &g, &tf);
                                if v.is_empty() {
                                    continue;
                                }
                                if m + k < lo || m + k > hi {
                                    dropped += 1;
                                    continue;
                                }
                                let h_off = offsets[x][z][(m + k - lo) as usize];
                                let mut shifted = SVec::new();
                                for (&i, c) in &v {
                                    add_entry(f, &mut shifted, h_off + i, c);
                                }
                                prods.insert((g_off + gi, f_off + fi), shifted);
                            }
                        }
                    }
                }
                if !prods.is_empty() {
                    comp.insert((x, y, z), prods);
                }
            }
        }
    }
    let identities = (0..n)
        .map(|x| offsets[x][x][(-lo) as usize] + c0.identity(x))
        .collect();
    let category = DGCategory::from_parts(f, c0.objects().to_vec(), homs, comp, identities)?;
    // T on C(x, y)_k = C0(T^k x, y) → C(Tx, Ty)_k = C0(T^{k+1} x, Ty)
    let mut maps = vec![vec![Matrix::zeros(f, 0, 0); n]; n];
    for x in 0..n {
        for y in 0..n {
            let (tx, ty) = (t.objects[x], t.objects[y]);
            let mut m = Matrix::zeros(f, category.hom(tx, ty).dim(), category.hom(x, y).dim());
            for k in lo..=hi {
                let tkx = powers[&k].objects[x];
                let block = &t.maps[tkx][y];
                let (src_off, dst_off) = (
                    offsets[x][y][(k - lo) as usize],
                    offsets[tx][ty][(k - lo) as usize],
                );
                for r in 0..block.rows() {
                    for c in 0..block.cols() {
                        m.set(dst_off + r, src_off + c, block.get(r, c).clone());
                    }
                }
            }
            maps[x][y] = m;
        }
    }
    Ok(AutomorphismGrading {
        category,
        extension: GradedFunctor {
            objects: t.objects.clone(),
            maps,
        },
        window,
        dropped_products: dropped,
        trivial: t.is_identity(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dgcat::CategoryBuilder;
    use crate::linalg::{Field, Scalar};

    const Q: Field = Field::Rationals;

    fn single(l: &str) -> Vec<(String, Scalar)> {
        vec![(l.to_string(), Q.one())]
    }

    fn exterior3() -> DGCategory {
        let mut b = CategoryBuilder::new(Q);
        b.object("*").unwrap();
        b.identity("*", "1").unwrap();
        b.basis("*", "*", "x", -3).unwrap();
        b.build().unwrap()
    }

    /// Two objects swapped by `T`, no morphisms between them.
    fn swap_pair() -> (DGCategory, GradedFunctor) {
        let mut b = CategoryBuilder::new(Q);
        b.object("p").unwrap();
        b.object("q").unwrap();
        b.identity("p", "1p").unwrap();
        b.identity("q", "1q").unwrap();
        let c = b.build().unwrap();
        let mut t = GradedFunctor::identity(&c);
        t.objects = vec![1, 0];
        t.maps = vec![
            vec![Matrix::identity(Q, 1), Matrix::zeros(Q, 0, 0)],
            vec![Matrix::zeros(Q, 0, 0), Matrix::identity(Q, 1)],
        ];
        (c, t)
    }

    #[test]
    fn parity_examples() {
        let a = exterior3();
        let p = GradedFunctor::parity(&a);
        assert!(p.validate(&a, &a).is_none());
        let x = a.hom(0, 0).index_of("x").unwrap();
        assert_eq!(p.maps[0][0].get(x, x), &Q.from_int(-1));
        assert!(p.compose(&p).is_identity());

        let mut b = CategoryBuilder::new(Q);
        b.object("*").unwrap();
        b.identity("*", "1").unwrap();
        b.basis("*", "*", "e", 0).unwrap();
        let d = b.build().unwrap();
        assert!(GradedFunctor::parity(&d).is_identity());
    }

    #[test]
    fn identity_automorphism_repeats_degree_zero() {
        let mut b = CategoryBuilder::new(Q);
        b.object("*").unwrap();
        b.identity("*", "1").unwrap();
        b.basis("*", "*", "e", 0).unwrap();
        b.product("*", "*", "*", "e", "e", vec![]).unwrap();
        let c0 = b.build().unwrap();
        let g = graded_from_automorphism(&c0, &GradedFunctor::identity(&c0), (0, 2)).unwrap();
        assert!(g.trivial);
        assert!(g.category.validate().is_ok());
        for k in 0..=2 {
            assert_eq!(g.category.hom(0, 0).indices_in_degree(k).len(), 2);
        }
        assert!(g.extension.validate(&g.category, &g.category).is_none());
    }

    #[test]
    fn swap_grading_hand_count() {
        let (c0, t) = swap_pair();
        let g = graded_from_automorphism(&c0, &t, (-2, 2)).unwrap();
        let pp = g.category.hom(0, 0);
        let pq = g.category.hom(0, 1);
        for k in -2..=2 {
            let even = usize::from(k % 2 == 0);
            assert_eq!(pp.indices_in_degree(k).len(), even);
            assert_eq!(pq.indices_in_degree(k).len(), 1 - even);
        }
        assert_eq!(pp.indices_in_degree(0), vec![g.category.identity(0)]);
        assert!(g.extension.validate(&g.category, &g.category).is_none());
        assert!(!g.trivial);
    }

    #[test]
    fn degree_zero_part_is_recovered() {
        let (c0, t) = swap_pair();
        let g = graded_from_automorphism(&c0, &t, (0, 1)).unwrap();
        for x in 0..2 {
            for y in 0..2 {
                assert_eq!(g.category.hom(x, y).indices_in_degree(0).len(), c0.hom(x, y).dim());
            }
        }
        assert!(g.category.validate().is_ok());
    }

    #[test]
    fn window_must_contain_zero() {
        let (c0, t) = swap_pair();
        assert!(matches!(
            graded_from_automorphism(&c0, &t, (1, 2)),
            Err(Error::WindowTooSmall(_))
        ));
    }

    #[test]
    fn non_functor_rejected() {
        let mut b = CategoryBuilder::new(Q);
        b.object("*").unwrap();
        b.identity("*", "1").unwrap();
        b.basis("*", "*", "e", 0).unwrap();
        b.product("*", "*", "*", "e", "e", single("e")).unwrap();
        let c0 = b.build().unwrap();
        let mut t = GradedFunctor::identity(&c0);
        let e = c0.hom(0, 0).index_of("e").unwrap();
        t.maps[0][0].set(e, e, Q.from_int(2));
        assert!(graded_from_automorphism(&c0, &t, (0, 1)).is_err());
    }
}
