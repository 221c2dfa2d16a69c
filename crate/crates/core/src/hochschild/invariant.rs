use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;

use super::{Bicomplex, Cochain, Generator};
use crate::dgcat::{Bimodule, DGCategory, GradedFunctor};
use crate::error::{Error, Result};
use crate::linalg::{add_entry, dense, sparse, Matrix, SVec, Scalar};

/// A degree-0 action of an automorphism `T` on a bimodule: matrices
/// `M(x, y) → M(Tx, Ty)` compatible with `T(a m b) = T(a) T(m) T(b)`.
#[derive(Clone, Debug)]
pub struct BimoduleAction {
    pub maps: Vec<Vec<Matrix>>,
}

impl BimoduleAction {
    /// `T` acting on `Σ^k A` by `σm ↦ σT(m)`; the matrices do not depend on `k`.
    pub fn from_functor(t: &GradedFunctor) -> BimoduleAction {
        BimoduleAction { maps: t.maps.clone() }
    }

    /// Checks compatibility with both actions on basis elements.
    pub fn validate(&self, a: &DGCategory, m: &Bimodule, t: &GradedFunctor) -> Result<()> {
        let f = a.field();
        let n = a.object_count();
        let e = |i: usize| -> SVec { [(i, f.one())].into_iter().collect() };
        let tm = |x: usize, y: usize, v: &SVec| -> SVec {
            let mat = &self.maps[x][y];
            sparse(&mat.mul_vec(&dense(v, mat.cols())))
        };
        for x in 0..n {
            for y in 0..n {
                let mat = &self.maps[x][y];
                let target = m.value(t.objects[x], t.objects[y]);
                if mat.cols() != m.value(x, y).dim() || mat.rows() != target.dim() {
                    return Err(Error::validation("bimodule action shape", format!("{x}→{y}")));
                }
                for z in 0..n {
                    for mi in 0..m.value(x, y).dim() {
                        for ai in 0..a.hom(y, z).dim() {
                            let lhs = tm(x, z, &m.act_left(x, y, z, &e(ai), &e(mi)));
                            let rhs = m.act_left(
                                t.objects[x],
                                t.objects[y],
                                t.objects[z],
                                &t.apply(y, z, &e(ai)),
                                &tm(x, y, &e(mi)),
                            );
                            if lhs != rhs {
                                return Err(Error::validation("action commutes with left multiplication", m.value(x, y).label(mi).to_string()));
                            }
                        }
                        for ai in 0..a.hom(z, x).dim() {
                            let lhs = tm(z, y, &m.act_right(z, x, y, &e(mi), &e(ai)));
                            let rhs = m.act_right(
                                t.objects[z],
                                t.objects[x],
                                t.objects[y],
                                &tm(x, y, &e(mi)),
                                &t.apply(z, x, &e(ai)),
                            );
                            if lhs != rhs {
                                return Err(Error::validation("action commutes with right multiplication", m.value(x, y).label(mi).to_string()));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// Nonzero entries of row `r` of a matrix as `(column, value)`.
fn row_entries(m: &Matrix, r: usize) -> Vec<(usize, Scalar)> {
    m.row(r)
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(j, c)| (j, c.clone()))
        .collect()
}

impl Bicomplex {
    /// The subcomplex fixed by `RΦ = (-1)^{|Φ|} T ∘ Φ ∘ (T^{-1})^{⊗s}`.
    ///
    /// Needs the cochain data of a bicomplex built from `a` and `m`; the
    /// result has none, and its generators are the fixed vectors, labelled by
    /// their leading cochain.
    pub fn invariant(&self, a: &DGCategory, m: &Bimodule, t: &GradedFunctor, action: &BimoduleAction) -> Result<Bicomplex> {
        let f = self.field;
        let cochains = self
            .cochains
            .as_ref()
            .ok_or_else(|| Error::Unsupported("invariant subcomplex of a derived bicomplex".into()))?;
        // The signed invariance condition is preserved by the internal
        // differential exactly when T anticommutes with d.
        if let Some(v) = t.validate_signed(a, a, -1) {
            return Err(Error::validation(v.axiom, v.witness));
        }
        action.validate(a, m, t)?;
        let tinv = t.inverse(a)?;
        let admissible = |x: usize, y: usize, i: usize| !(self.normalized && x == y && i == a.identity(x));

        // The signed action on each column, as sparse columns.
        let mut fixed: Vec<Vec<(i64, Vec<Scalar>)>> = Vec::new();
        for (s, col) in cochains.iter().enumerate() {
            let index: HashMap<&Cochain, usize> = col.iter().enumerate().map(|(i, c)| (c, i)).collect();
            let mut images = Vec::with_capacity(col.len());
            for (j, c) in col.iter().enumerate() {
                let sign = f.sign(self.columns[s][j].t);
                let objects: Vec<usize> = c.objects.iter().map(|&x| t.objects[x]).collect();
                // Choices of arguments g_i with T^{-1} g_i having a b_i component.
                let mut partial: Vec<(Vec<usize>, Scalar)> = vec![(Vec::new(), sign)];
                for (i, &b) in c.args.iter().enumerate() {
                    let (yi, yim1) = (objects[i + 1], objects[i]);
                    let entries = row_entries(&tinv.maps[yi][yim1], b);
                    let mut next = Vec::new();
                    for (args, coeff) in &partial {
                        for (g, x) in &entries {
                            if admissible(yi, yim1, *g) {
                                let mut args = args.clone();
                                args.push(*g);
                                next.push((args, f.mul(coeff, x)));
                            }
                        }
                    }
                    partial = next;
                }
                let (xs, x0) = (*c.objects.last().unwrap(), c.objects[0]);
                let tv = action.maps[xs][x0].column(c.value);
                let mut image = SVec::new();
                for (args, coeff) in &partial {
                    for (v, x) in tv.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                        let target = Cochain {
                            objects: objects.clone(),
                            args: args.clone(),
                            value: v,
                        };
                        let k = *index
                            .get(&target)
                            .ok_or_else(|| Error::Inconsistent(format!("action leaves the cochain basis at {target:?}")))?;
                        add_entry(f, &mut image, k, &f.mul(coeff, x));
                    }
                }
                images.push(image);
            }
            let mut per_t = Vec::new();
            let mut ts: Vec<i64> = self.columns[s].iter().map(|g| g.t).collect();
            ts.sort_unstable();
            ts.dedup();
            for tt in ts {
                let idx = self.indices(s, tt);
                let pos: HashMap<usize, usize> = idx.iter().enumerate().map(|(i, &j)| (j, i)).collect();
                let mut r = Matrix::zeros(f, idx.len(), idx.len());
                for (cc, &j) in idx.iter().enumerate() {
                    for (k, x) in &images[j] {
                        let row = *pos
                            .get(k)
                            .ok_or_else(|| Error::Inconsistent("action changes the bidegree".into()))?;
                        r.set(row, cc, x.clone());
                    }
                }
                let ker = r.add(&Matrix::identity(f, idx.len()).scale(&f.neg(&f.one()))).kernel_basis();
                for v in ker.columns() {
                    let mut full = vec![f.zero(); col.len()];
                    for (i, &j) in idx.iter().enumerate() {
                        full[j] = v[i].clone();
                    }
                    per_t.push((tt, full));
                }
            }
            fixed.push(per_t);
        }

        let columns: Vec<Vec<Generator>> = fixed
            .iter()
            .enumerate()
            .map(|(s, vs)| {
                vs.iter()
                    .map(|(tt, v)| {
                        let support: Vec<usize> = (0..v.len()).filter(|&i| !v[i].is_zero()).collect();
                        let lead = &self.columns[s][support[0]].label;
                        Generator {
                            t: *tt,
                            label: if support.len() > 1 { format!("{lead}+…") } else { lead.clone() },
                        }
                    })
                    .collect()
            })
            .collect();

        // Express the image of each fixed vector in the fixed basis of the
        // target column, one elimination per target bidegree.
        let restrict = |cols: &[SVec], s_src: usize, s_dst: usize, shift: i64| -> Result<Vec<SVec>> {
            let mut out = vec![SVec::new(); fixed[s_src].len()];
            let mut by_t: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
            for (i, (tt, _)) in fixed[s_src].iter().enumerate() {
                by_t.entry(*tt).or_default().push(i);
            }
            for (tt, sources) in by_t {
                let rows = self.indices(s_dst, tt + shift);
                let targets: Vec<usize> =
                    (0..fixed[s_dst].len()).filter(|&k| fixed[s_dst][k].0 == tt + shift).collect();
                let restrict_rows = |v: &[Scalar]| -> Vec<Scalar> { rows.iter().map(|&r| v[r].clone()).collect() };
                let basis = Matrix::from_columns(
                    f,
                    rows.len(),
                    &targets.iter().map(|&k| restrict_rows(&fixed[s_dst][k].1)).collect::<Vec<_>>(),
                );
                let mut images = Vec::with_capacity(sources.len());
                for &i in &sources {
                    let mut img = SVec::new();
                    for (j, c) in fixed[s_src][i].1.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                        crate::linalg::axpy(f, &mut img, c, &cols[j]);
                    }
                    let pos: HashMap<usize, usize> = rows.iter().enumerate().map(|(a, &r)| (r, a)).collect();
                    let mut v = vec![f.zero(); rows.len()];
                    for (k, c) in img {
                        let a = *pos
                            .get(&k)
                            .ok_or_else(|| Error::Inconsistent("differential leaves its target bidegree".into()))?;
                        v[a] = c;
                    }
                    images.push(v);
                }
                let solved = basis.solve_many(&Matrix::from_columns(f, rows.len(), &images));
                for (&i, x) in sources.iter().zip(solved) {
                    let x = x.ok_or_else(|| {
                        Error::Inconsistent("differential does not preserve the invariant subspace".into())
                    })?;
                    for (a, c) in x.iter().enumerate() {
                        add_entry(f, &mut out[i], targets[a], c);
                    }
                }
            }
            Ok(out)
        };
        let column0 = fixed[0]
            .iter()
            .map(|(_, v)| {
                let mut fam = super::Family::new();
                for (j, c) in v.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                    for (k, x) in &self.column0[j] {
                        let e = fam.entry(*k).or_insert_with(|| f.zero());
                        *e = f.add(e, &f.mul(c, x));
                    }
                }
                fam.retain(|_, c| !c.is_zero());
                fam
            })
            .collect();
        let d_hoch = (0..self.s_max)
            .map(|s| restrict(&self.d_hoch[s], s, s + 1, 0))
            .collect::<Result<Vec<_>>>()?;
        let d_int = (0..=self.s_max)
            .map(|s| restrict(&self.d_int[s], s, s, 1))
            .collect::<Result<Vec<_>>>()?;
        Ok(Bicomplex {
            field: f,
            normalized: self.normalized,
            s_max: self.s_max,
            columns,
            d_hoch,
            d_int,
            certificate: self.certificate,
            cochains: None,
            column0,
        })
    }
}
