//! Finite dg categories of bounded complexes of free rank-one modules.
//!
//! Over an algebra `A` concentrated in degree 0, a complex `X` is a list of
//! summands `A` in distinct degrees with a differential whose components are
//! left multiplications. A morphism component from the summand in degree `p`
//! of `X` to the summand in degree `q` of `Y` is written `b[p→q]`, meaning
//! `v ↦ bv`, of degree `q - p`. Composition is `c[q→r] ∘ b[p→q] = (cb)[p→r]`.

use std::collections::BTreeMap;

use super::{DGCategory, HomSpace, Products};
use crate::error::{Error, Result};
use crate::linalg::{add_entry, axpy, SVec};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeComplex {
    pub name: String,
    /// Homological degrees of the summands, pairwise distinct.
    pub degrees: Vec<i64>,
    /// `(i, j, c)`: the component from summand `i` to summand `j` is
    /// multiplication by `c`; requires `degrees[j] = degrees[i] - 1`.
    pub d: Vec<(usize, usize, SVec)>,
}

impl FreeComplex {
    /// `A` in degree `k`.
    pub fn stalk(k: i64) -> FreeComplex {
        FreeComplex {
            name: format!("S{k}"),
            degrees: vec![k],
            d: Vec::new(),
        }
    }

    /// `A` in degrees `k` and `k - 1` with the identity between them.
    pub fn disk(a: &DGCategory, k: i64) -> FreeComplex {
        let one: SVec = [(a.identity(0), a.field().one())].into_iter().collect();
        FreeComplex {
            name: format!("D{k}"),
            degrees: vec![k, k - 1],
            d: vec![(0, 1, one)],
        }
    }

    /// `A` in every degree of `[m, n]`, each differential multiplication by `c`.
    pub fn chain(name: &str, m: i64, n: i64, c: &SVec) -> FreeComplex {
        let degrees: Vec<i64> = (m..=n).rev().collect();
        let d = (0..degrees.len().saturating_sub(1)).map(|i| (i, i + 1, c.clone())).collect();
        FreeComplex {
            name: name.to_string(),
            degrees,
            d,
        }
    }
}

/// Old-basis element `b[i→j]` of `Hom(X, Y)`.
type Entry = (usize, usize, usize);

/// The dg category of the given complexes over a one-object algebra in
/// degree 0. The identity of each complex becomes a basis element `1_X`
/// replacing `1[p→p]` for its top summand.
pub fn complex_category(a: &DGCategory, complexes: &[FreeComplex]) -> Result<DGCategory> {
    if a.object_count() != 1 || !a.is_degree_zero() {
        return Err(Error::Unsupported("complexes need a one-object algebra in degree 0".into()));
    }
    let f = a.field();
    let alg = a.hom(0, 0);
    let unit = a.identity(0);
    for x in complexes {
        let mut seen = x.degrees.clone();
        seen.sort_unstable();
        seen.dedup();
        if seen.len() != x.degrees.len() || x.degrees.is_empty() {
            return Err(Error::Inconsistent(format!("complex {} needs distinct summand degrees", x.name)));
        }
        if x.d.iter().any(|(i, j, _)| x.degrees[*j] != x.degrees[*i] - 1) {
            return Err(Error::validation("differential has degree -1", x.name.clone()));
        }
    }
    let mul = |g: &SVec, h: &SVec| a.compose(0, 0, 0, g, h);
    let n = complexes.len();
    // Old bases and their positions.
    let mut old: Vec<Vec<Vec<Entry>>> = vec![vec![Vec::new(); n]; n];
    let mut pos: Vec<Vec<BTreeMap<Entry, usize>>> = vec![vec![BTreeMap::new(); n]; n];
    for (x, cx) in complexes.iter().enumerate() {
        for (y, cy) in complexes.iter().enumerate() {
            for i in 0..cx.degrees.len() {
                for j in 0..cy.degrees.len() {
                    for b in 0..alg.dim() {
                        pos[x][y].insert((i, j, b), old[x][y].len());
                        old[x][y].push((i, j, b));
                    }
                }
            }
        }
    }
    // Pivot of the identity of X: 1[0→0]; identity coordinates in the old basis.
    let pivot: Vec<usize> = (0..n).map(|x| pos[x][x][&(0, 0, unit)]).collect();
    let id_old: Vec<SVec> = (0..n)
        .map(|x| {
            (0..complexes[x].degrees.len())
                .map(|i| (pos[x][x][&(i, i, unit)], f.one()))
                .collect()
        })
        .collect();
    let to_new = |x: usize, y: usize, v: &SVec| -> SVec {
        if x != y {
            return v.clone();
        }
        let mut out = v.clone();
        if let Some(c) = v.get(&pivot[x]).cloned() {
            for (&k, ck) in &id_old[x] {
                if k != pivot[x] {
                    add_entry(f, &mut out, k, &f.neg(&f.mul(ck, &c)));
                }
            }
        }
        out
    };
    let to_old = |x: usize, y: usize, k: usize| -> SVec {
        if x == y && k == pivot[x] {
            id_old[x].clone()
        } else {
            [(k, f.one())].into_iter().collect()
        }
    };
    // Old-basis composition of Hom(Y, Z) ⊗ Hom(X, Y) → Hom(X, Z).
    let compose_old = |x: usize, y: usize, z: usize, g: &SVec, h: &SVec| -> SVec {
        let mut out = SVec::new();
        for (&gk, gc) in g {
            let (j2, k, b) = old[y][z][gk];
            for (&hk, hc) in h {
                let (i, j, c) = old[x][y][hk];
                if j != j2 {
                    continue;
                }
                let bc = mul(&[(b, f.one())].into_iter().collect(), &[(c, f.one())].into_iter().collect());
                for (&e, ec) in &bc {
                    add_entry(f, &mut out, pos[x][z][&(i, k, e)], &f.mul(&f.mul(gc, hc), ec));
                }
            }
        }
        out
    };
    let d_old = |x: usize, y: usize, k: usize| -> SVec {
        let (i, j, b) = old[x][y][k];
        let (cx, cy) = (&complexes[x], &complexes[y]);
        let deg = cy.degrees[j] - cx.degrees[i];
        let bv: SVec = [(b, f.one())].into_iter().collect();
        let mut out = SVec::new();
        for (src, dst, c) in &cy.d {
            if *src == j {
                for (&e, ec) in &mul(c, &bv) {
                    add_entry(f, &mut out, pos[x][y][&(i, *dst, e)], ec);
                }
            }
        }
        let sign = f.neg(&f.sign(deg));
        for (src, dst, c) in &cx.d {
            if *dst == i {
                for (&e, ec) in &mul(&bv, c) {
                    add_entry(f, &mut out, pos[x][y][&(*src, j, e)], &f.mul(&sign, ec));
                }
            }
        }
        out
    };

    let mut homs = vec![vec![HomSpace::default(); n]; n];
    for x in 0..n {
        for y in 0..n {
            let (cx, cy) = (&complexes[x], &complexes[y]);
            let mut labels = Vec::new();
            let mut degrees = Vec::new();
            let mut d = Vec::new();
            for (k, &(i, j, b)) in old[x][y].iter().enumerate() {
                labels.push(if x == y && k == pivot[x] {
                    format!("1_{}", cx.name)
                } else {
                    format!("{}[{}→{}]", alg.label(b), cx.degrees[i], cy.degrees[j])
                });
                degrees.push(cy.degrees[j] - cx.degrees[i]);
                let mut dv = SVec::new();
                for (&ok, oc) in &to_old(x, y, k) {
                    axpy(f, &mut dv, oc, &d_old(x, y, ok));
                }
                d.push(to_new(x, y, &dv));
            }
            homs[x][y] = HomSpace::new(labels, degrees, d)?;
        }
    }
    let mut comp = BTreeMap::new();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let mut prods = Products::new();
                for g in 0..old[y][z].len() {
                    for h in 0..old[x][y].len() {
                        let v = to_new(x, z, &compose_old(x, y, z, &to_old(y, z, g), &to_old(x, y, h)));
                        if !v.is_empty() {
                            prods.insert((g, h), v);
                        }
                    }
                }
                if !prods.is_empty() {
                    comp.insert((x, y, z), prods);
                }
            }
        }
    }
    DGCategory::from_parts(
        f,
        complexes.iter().map(|c| c.name.clone()).collect(),
        homs,
        comp,
        pivot,
    )
}

/// Checks `d_X² = 0` for a complex over `a`. Summands have distinct
/// degrees, so each composite `i → j → k` is a single product.
pub fn complex_is_valid(a: &DGCategory, x: &FreeComplex) -> bool {
    x.d.iter().all(|(_, j, c)| {
        x.d.iter().filter(|(j2, _, _)| j2 == j).all(|(_, _, c2)| a.compose(0, 0, 0, c2, c).is_empty())
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dgcat::CategoryBuilder;
    use crate::linalg::Field;

    fn dual_numbers() -> DGCategory {
        let mut b = CategoryBuilder::new(Field::Rationals);
        b.object("*").unwrap();
        b.identity("*", "1").unwrap();
        b.basis("*", "*", "e", 0).unwrap();
        b.build().unwrap()
    }

    #[test]
    fn disks_and_chains_validate() {
        let a = dual_numbers();
        let e: SVec = [(1, Field::Rationals.one())].into_iter().collect();
        let objs = vec![
            FreeComplex::stalk(0),
            FreeComplex::disk(&a, 1),
            FreeComplex::chain("E", 0, 2, &e),
        ];
        assert!(objs.iter().all(|x| complex_is_valid(&a, x)));
        let c = complex_category(&a, &objs).unwrap();
        c.validate().into_result().unwrap();
        // End(D1) is 2 × 2 matrices over A.
        assert_eq!(c.hom(1, 1).dim(), 8);
        // Disks are contractible, so they vanish in homology.
        let h = c.homology_category();
        assert!(h.is_err());
        let z = c.cycle_category().unwrap();
        assert_eq!(z.category.hom(0, 0).dim(), 2);
    }
}
