use std::collections::BTreeMap;

use super::{class_in, DGCategory, HomSpace, InducedCategory, InducedHom, Products, Violation};
use crate::error::{Error, Result};
use crate::linalg::{axpy, Field, SVec, Subquotient};

/// A dg bimodule over a category `A`, given by structure constants.
///
/// `left[(x, y, y')]` maps `A(y, y') ⊗ M(x, y) → M(x, y')` on pairs `(a, m)`;
/// `right[(x', x, y)]` maps `M(x, y) ⊗ A(x', x) → M(x', y)` on pairs `(m, a)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bimodule {
    field: Field,
    values: Vec<Vec<HomSpace>>,
    left: BTreeMap<(usize, usize, usize), Products>,
    right: BTreeMap<(usize, usize, usize), Products>,
}

impl Bimodule {
    pub fn from_parts(
        a: &DGCategory,
        values: Vec<Vec<HomSpace>>,
        left: BTreeMap<(usize, usize, usize), Products>,
        right: BTreeMap<(usize, usize, usize), Products>,
    ) -> Result<Bimodule> {
        let n = a.object_count();
        if values.len() != n || values.iter().any(|r| r.len() != n) {
            return Err(Error::Inconsistent("bimodule object count mismatch".into()));
        }
        for (&(x, y, y2), p) in &left {
            for (&(ai, mi), v) in p {
                let deg = a.hom(y, y2).degree(ai) + values[x][y].degree(mi);
                if v.keys().any(|&k| values[x][y2].degree(k) != deg) {
                    return Err(Error::validation("left action has degree 0", format!("{x} {y} {y2}")));
                }
            }
        }
        for (&(x2, x, y), p) in &right {
            for (&(mi, ai), v) in p {
                let deg = values[x][y].degree(mi) + a.hom(x2, x).degree(ai);
                if v.keys().any(|&k| values[x2][y].degree(k) != deg) {
                    return Err(Error::validation("right action has degree 0", format!("{x2} {x} {y}")));
                }
            }
        }
        Ok(Bimodule {
            field: a.field(),
            values,
            left,
            right,
        })
    }

    /// `M(x, y) = A(x, y)` acted on by composition.
    pub fn standard(a: &DGCategory) -> Bimodule {
        let n = a.object_count();
        Bimodule {
            field: a.field(),
            values: (0..n).map(|x| (0..n).map(|y| a.hom(x, y).clone()).collect()).collect(),
            left: a.all_products().clone(),
            right: a.all_products().clone(),
        }
    }

    /// `Σ^k M`: degrees raised by `k`, `d(σm) = (-1)^k σ(dm)`,
    /// `a · σm = (-1)^{k|a|} σ(am)` and `σm · a = σ(ma)`.
    pub fn shift(&self, a: &DGCategory, k: i64) -> Bimodule {
        let f = self.field;
        let sign = f.sign(k);
        let values = self
            .values
            .iter()
            .map(|row| {
                row.iter()
                    .map(|h| {
                        let degrees = h.degrees().iter().map(|d| d + k).collect();
                        let d = (0..h.dim())
                            .map(|i| h.d_of(i).iter().map(|(&j, c)| (j, f.mul(&sign, c))).collect())
                            .collect();
                        HomSpace::new(h.labels().to_vec(), degrees, d).expect("shift keeps shape")
                    })
                    .collect()
            })
            .collect();
        let left = self
            .left
            .iter()
            .map(|(&(x, y, y2), p)| {
                let p = p
                    .iter()
                    .map(|(&(ai, mi), v)| {
                        let s = f.sign(k * a.hom(y, y2).degree(ai));
                        ((ai, mi), v.iter().map(|(&j, c)| (j, f.mul(&s, c))).collect())
                    })
                    .collect();
                ((x, y, y2), p)
            })
            .collect();
        Bimodule {
            field: f,
            values,
            left,
            right: self.right.clone(),
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn value(&self, x: usize, y: usize) -> &HomSpace {
        &self.values[x][y]
    }

    pub fn object_count(&self) -> usize {
        self.values.len()
    }

    /// Smallest and largest degree occurring in any `M(x, y)`.
    pub fn degree_range(&self) -> Option<(i64, i64)> {
        let mut r: Option<(i64, i64)> = None;
        for h in self.values.iter().flatten() {
            for &d in h.degrees() {
                r = Some(r.map_or((d, d), |(a, b)| (a.min(d), b.max(d))));
            }
        }
        r
    }

    pub fn left_basis(&self, x: usize, y: usize, y2: usize, a: usize, m: usize) -> Option<&SVec> {
        self.left.get(&(x, y, y2)).and_then(|p| p.get(&(a, m)))
    }

    pub fn right_basis(&self, x2: usize, x: usize, y: usize, m: usize, a: usize) -> Option<&SVec> {
        self.right.get(&(x2, x, y)).and_then(|p| p.get(&(m, a)))
    }

    /// `a · m` for `a ∈ A(y, y')`, `m ∈ M(x, y)`.
    pub fn act_left(&self, x: usize, y: usize, y2: usize, a: &SVec, m: &SVec) -> SVec {
        bilinear(self.field, self.left.get(&(x, y, y2)), a, m)
    }

    /// `m · a` for `m ∈ M(x, y)`, `a ∈ A(x', x)`.
    pub fn act_right(&self, x2: usize, x: usize, y: usize, m: &SVec, a: &SVec) -> SVec {
        bilinear(self.field, self.right.get(&(x2, x, y)), m, a)
    }

    pub fn d(&self, x: usize, y: usize, v: &SVec) -> SVec {
        self.values[x][y].apply_d(self.field, v)
    }

    /// Checks d² = 0, unit laws, the three associativity laws and the
    /// Leibniz rule for both actions on basis elements.
    pub fn validate(&self, a: &DGCategory) -> Option<Violation> {
        let f = self.field;
        let n = a.object_count();
        let e = |i: usize| -> SVec { [(i, f.one())].into_iter().collect() };
        let name = |x: usize, y: usize, i: usize| {
            format!("{}:{}→{}", self.values[x][y].label(i), a.objects()[x], a.objects()[y])
        };
        for x in 0..n {
            for y in 0..n {
                let h = &self.values[x][y];
                for i in 0..h.dim() {
                    if !h.apply_d(f, h.d_of(i)).is_empty() {
                        return Some(Violation::new("d squared is zero", name(x, y, i)));
                    }
                    let l = self.act_left(x, y, y, &e(a.identity(y)), &e(i));
                    let r = self.act_right(x, x, y, &e(i), &e(a.identity(x)));
                    if l != e(i) || r != e(i) {
                        return Some(Violation::new("unit law", name(x, y, i)));
                    }
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                for p in 0..n {
                    for q in 0..n {
                        if let Some(v) = self.associativity_witness(a, x, y, p, q) {
                            return Some(v);
                        }
                    }
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    for m in 0..self.values[x][y].dim() {
                        let dm = self.values[x][y].d_of(m);
                        let mdeg = self.values[x][y].degree(m);
                        for ai in 0..a.hom(y, z).dim() {
                            let am = self.act_left(x, y, z, &e(ai), &e(m));
                            let lhs = self.d(x, z, &am);
                            let mut rhs = self.act_left(x, y, z, a.hom(y, z).d_of(ai), &e(m));
                            let t = self.act_left(x, y, z, &e(ai), dm);
                            axpy(f, &mut rhs, &f.sign(a.hom(y, z).degree(ai)), &t);
                            if lhs != rhs {
                                return Some(Violation::new("Leibniz rule (left)", name(x, y, m)));
                            }
                        }
                        for ai in 0..a.hom(z, x).dim() {
                            let ma = self.act_right(z, x, y, &e(m), &e(ai));
                            let lhs = self.d(z, y, &ma);
                            let mut rhs = self.act_right(z, x, y, dm, &e(ai));
                            let t = self.act_right(z, x, y, &e(m), a.hom(z, x).d_of(ai));
                            axpy(f, &mut rhs, &f.sign(mdeg), &t);
                            if lhs != rhs {
                                return Some(Violation::new("Leibniz rule (right)", name(x, y, m)));
                            }
                        }
                    }
                }
            }
        }
        None
    }

    /// With `m ∈ M(x, y)`: `(ab)m = a(bm)` for `b: y → p`, `a: p → q`;
    /// `(bm)c = b(mc)` and `(mc)c' = m(cc')` for `c: p → x`, `c': q → p`.
    fn associativity_witness(&self, a: &DGCategory, x: usize, y: usize, p: usize, q: usize) -> Option<Violation> {
        let f = self.field;
        let e = |i: usize| -> SVec { [(i, f.one())].into_iter().collect() };
        for m in 0..self.values[x][y].dim() {
            let em = e(m);
            for b in 0..a.hom(y, p).dim() {
                let bm = self.act_left(x, y, p, &e(b), &em);
                for ai in 0..a.hom(p, q).dim() {
                    let ab = a.compose(y, p, q, &e(ai), &e(b));
                    if self.act_left(x, y, q, &ab, &em) != self.act_left(x, p, q, &e(ai), &bm) {
                        return Some(Violation::new("left associativity", format!("{x} {y} {p} {q} m={m}")));
                    }
                }
                for c in 0..a.hom(q, x).dim() {
                    let lhs = self.act_right(q, x, p, &bm, &e(c));
                    let mc = self.act_right(q, x, y, &em, &e(c));
                    let rhs = self.act_left(q, y, p, &e(b), &mc);
                    if lhs != rhs {
                        return Some(Violation::new("bimodule associativity", format!("{x} {y} {p} {q} m={m}")));
                    }
                }
            }
            for c in 0..a.hom(p, x).dim() {
                let mc = self.act_right(p, x, y, &em, &e(c));
                for c2 in 0..a.hom(q, p).dim() {
                    let cc = a.compose(q, p, x, &e(c), &e(c2));
                    let lhs = self.act_right(q, p, y, &mc, &e(c2));
                    let rhs = self.act_right(q, x, y, &em, &cc);
                    if lhs != rhs {
                        return Some(Violation::new("right associativity", format!("{x} {y} {p} {q} m={m}")));
                    }
                }
            }
        }
        None
    }

    /// `H(M)` as a bimodule over `H(A)`, actions induced on representatives.
    pub fn homology(&self, a: &DGCategory, ha: &InducedCategory) -> Result<HomologyBimodule> {
        let f = self.field;
        let n = a.object_count();
        let mut values = vec![vec![HomSpace::default(); n]; n];
        let mut reps = vec![vec![Vec::new(); n]; n];
        let mut parts = vec![vec![BTreeMap::new(); n]; n];
        for x in 0..n {
            for y in 0..n {
                let ind = InducedHom::new(f, &self.values[x][y], true, None)?;
                values[x][y] = ind.space;
                reps[x][y] = ind.reps;
                parts[x][y] = ind.parts;
            }
        }
        let degrees: Vec<Vec<Vec<i64>>> = self
            .values
            .iter()
            .map(|r| r.iter().map(|h| h.degrees().to_vec()).collect())
            .collect();
        let class = |x: usize, y: usize, v: &SVec| -> Result<SVec> {
            class_in(f, &parts[x][y], &degrees[x][y], v)
                .ok_or_else(|| Error::Inconsistent("action of cycles is not a cycle".into()))
        };
        let mut left = BTreeMap::new();
        let mut right = BTreeMap::new();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let mut lp = Products::new();
                    for (ai, av) in ha.reps[y][z].iter().enumerate() {
                        for (mi, mv) in reps[x][y].iter().enumerate() {
                            let c = class(x, z, &self.act_left(x, y, z, av, mv))?;
                            if !c.is_empty() {
                                lp.insert((ai, mi), c);
                            }
                        }
                    }
                    if !lp.is_empty() {
                        left.insert((x, y, z), lp);
                    }
                    let mut rp = Products::new();
                    for (mi, mv) in reps[x][y].iter().enumerate() {
                        for (ai, av) in ha.reps[z][x].iter().enumerate() {
                            let c = class(z, y, &self.act_right(z, x, y, mv, av))?;
                            if !c.is_empty() {
                                rp.insert((mi, ai), c);
                            }
                        }
                    }
                    if !rp.is_empty() {
                        right.insert((z, x, y), rp);
                    }
                }
            }
        }
        let module = Bimodule::from_parts(&ha.category, values, left, right)?;
        Ok(HomologyBimodule {
            module,
            reps,
            parts,
            degrees,
        })
    }
}

fn bilinear(f: Field, prods: Option<&Products>, u: &SVec, v: &SVec) -> SVec {
    let mut out = SVec::new();
    let Some(prods) = prods else {
        return out;
    };
    for (&i, a) in u {
        for (&j, b) in v {
            if let Some(w) = prods.get(&(i, j)) {
                axpy(f, &mut out, &f.mul(a, b), w);
            }
        }
    }
    out
}

/// `H(M)` over `H(A)` together with representative lifts into `M`.
#[derive(Clone, Debug)]
pub struct HomologyBimodule {
    pub module: Bimodule,
    pub reps: Vec<Vec<Vec<SVec>>>,
    parts: Vec<Vec<BTreeMap<i64, Subquotient>>>,
    degrees: Vec<Vec<Vec<i64>>>,
}

impl HomologyBimodule {
    pub fn class_of(&self, x: usize, y: usize, v: &SVec) -> Option<SVec> {
        class_in(self.module.field, &self.parts[x][y], &self.degrees[x][y], v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dgcat::CategoryBuilder;
    use crate::linalg::Scalar;

    const Q: Field = Field::Rationals;

    fn one(l: &str) -> Vec<(String, Scalar)> {
        vec![(l.to_string(), Q.one())]
    }

    fn dual_numbers() -> DGCategory {
        let mut b = CategoryBuilder::new(Q);
        b.object("*").unwrap();
        b.identity("*", "1").unwrap();
        b.basis("*", "*", "e", 0).unwrap();
        b.build().unwrap()
    }

    fn dg_example() -> DGCategory {
        let mut b = CategoryBuilder::new(Q);
        b.object("*").unwrap();
        b.identity("*", "1").unwrap();
        b.basis("*", "*", "u", 0).unwrap();
        b.basis("*", "*", "v", -1).unwrap();
        b.differential("*", "*", "u", one("v")).unwrap();
        b.build().unwrap()
    }

    #[test]
    fn standard_bimodule_is_multiplication() {
        let a = dual_numbers();
        let m = Bimodule::standard(&a);
        assert!(m.validate(&a).is_none());
        let e = a.hom(0, 0).index_of("e").unwrap();
        let id = a.identity(0);
        assert_eq!(m.left_basis(0, 0, 0, id, e), a.compose_basis(0, 0, 0, id, e));
        assert_eq!(m.left_basis(0, 0, 0, e, e), None);
    }

    #[test]
    fn shifts_reindex_and_validate() {
        let a = dg_example();
        let m = Bimodule::standard(&a);
        assert_eq!(m.shift(&a, 0), m);
        for k in [-3, -1, 1, 2] {
            let s = m.shift(&a, k);
            assert!(s.validate(&a).is_none(), "shift {k}");
            for i in 0..m.value(0, 0).dim() {
                assert_eq!(s.value(0, 0).degree(i), m.value(0, 0).degree(i) + k);
            }
        }
    }

    #[test]
    fn broken_action_reported() {
        let a = dual_numbers();
        let mut m = Bimodule::standard(&a);
        let e = a.hom(0, 0).index_of("e").unwrap();
        m.right
            .entry((0, 0, 0))
            .or_default()
            .insert((e, e), [(e, Q.one())].into_iter().collect());
        assert!(m.validate(&a).is_some());
    }

    #[test]
    fn homology_bimodule_of_acyclic_part() {
        let a = dg_example();
        let ha = a.homology_category().unwrap();
        let hm = Bimodule::standard(&a).homology(&a, &ha).unwrap();
        assert_eq!(hm.module.value(0, 0).dim(), 1);
        assert!(hm.module.validate(&ha.category).is_none());
    }
}
