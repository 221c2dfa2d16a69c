//! Hochschild cochains of a dg category with coefficients in a bimodule.
//!
//! A basis cochain of column `s` is the functional sending the basis tensor
//! `b_1 ⊗ … ⊗ b_s` (with `b_i ∈ A(x_i, x_{i-1})`) to the basis vector `m`
//! of `M(x_s, x_0)` and every other basis tensor to zero. Its homological
//! degree is `n = |m| - Σ|b_i|` and it sits in bidegree `(s, t) = (s, -n)`,
//! total degree `s + t`.
//!
//! The Hochschild differential is
//!
//! ```text
//! (δφ)(f_1, …, f_{s+1}) = (-1)^{|φ||f_1|} f_1 · φ(f_2, …)
//!                       + Σ_i (-1)^i φ(…, f_i f_{i+1}, …)
//!                       + (-1)^{s+1} φ(f_1, …, f_s) · f_{s+1},
//! ```
//!
//! the internal differential is `Dφ = d_M φ - (-1)^{|φ|} φ d_⊗`, and the
//! total differential is `δ + (-1)^s D`. All three square to zero and this
//! is checked by [`Bicomplex::check`].

mod certificate;
mod derivations;
mod invariant;
mod total;

use std::collections::HashMap;

use rayon::prelude::*;

use crate::dgcat::{Bimodule, DGCategory};
use crate::error::{Error, Result};
use crate::linalg::{add_entry, Field, SVec, Scalar};

pub use certificate::{Certificate, Stability};
pub use derivations::{derivation_complex, DerivationComplex};
pub use invariant::BimoduleAction;
pub use total::{graded_hochschild, GradedHH, HHDegree, HHResult, TotalComplex};

/// One basis cochain: objects `x_0 … x_s`, arguments `b_i ∈ A(x_i, x_{i-1})`,
/// value `m ∈ M(x_s, x_0)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cochain {
    pub objects: Vec<usize>,
    pub args: Vec<usize>,
    pub value: usize,
}

/// A basis element of a bicomplex column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub t: i64,
    pub label: String,
}

/// Cochains with `s ≤ s_max`, as a quotient of the full bicomplex.
///
/// `d_hoch[s][j]` is the image of generator `j` of column `s` in column
/// `s + 1` (for `s < s_max`); `d_int[s][j]` its image in column `s`.
#[derive(Clone, Debug)]
pub struct Bicomplex {
    field: Field,
    normalized: bool,
    s_max: usize,
    columns: Vec<Vec<Generator>>,
    d_hoch: Vec<Vec<SVec>>,
    d_int: Vec<Vec<SVec>>,
    certificate: Certificate,
    cochains: Option<Vec<Vec<Cochain>>>,
    /// Each generator of column 0 as a family `(x, m) ↦ c` with `m ∈ M(x, x)`.
    column0: Vec<Family>,
}

/// A family of coefficients indexed by `(object, basis index of M(x, x))`.
pub type Family = std::collections::BTreeMap<(usize, usize), Scalar>;

/// Reduced basis of each morphism space and the products and differentials
/// restricted to it.
struct Reduced<'a> {
    a: &'a DGCategory,
    normalized: bool,
    /// `basis[x][y]`: admissible arguments in `A(x, y)`.
    basis: Vec<Vec<Vec<usize>>>,
    /// For `h ∈ A(x, y)`: all `(z, g, f, c)` with `g ∈ A(z, y)`, `f ∈ A(x, z)`
    /// and `c` the coefficient of `h` in `gf`.
    factorizations: HashMap<(usize, usize, usize), Vec<(usize, usize, usize, Scalar)>>,
    /// For `h ∈ A(x, y)`: all `(b, c)` with `c` the coefficient of `h` in `d b`.
    d_preimages: HashMap<(usize, usize, usize), Vec<(usize, Scalar)>>,
}

impl<'a> Reduced<'a> {
    fn new(a: &'a DGCategory, normalized: bool) -> Reduced<'a> {
        let n = a.object_count();
        let admissible = |x: usize, y: usize, i: usize| !(normalized && x == y && i == a.identity(x));
        let basis: Vec<Vec<Vec<usize>>> = (0..n)
            .map(|x| {
                (0..n)
                    .map(|y| (0..a.hom(x, y).dim()).filter(|&i| admissible(x, y, i)).collect())
                    .collect()
            })
            .collect();
        let mut factorizations: HashMap<_, Vec<_>> = HashMap::new();
        for (&(x, z, y), prods) in a.all_products() {
            for (&(g, f), v) in prods {
                if !admissible(z, y, g) || !admissible(x, z, f) {
                    continue;
                }
                for (&h, c) in v {
                    if admissible(x, y, h) {
                        factorizations.entry((x, y, h)).or_default().push((z, g, f, c.clone()));
                    }
                }
            }
        }
        let mut d_preimages: HashMap<_, Vec<_>> = HashMap::new();
        for x in 0..n {
            for y in 0..n {
                for &b in &basis[x][y] {
                    for (&h, c) in a.hom(x, y).d_of(b) {
                        if admissible(x, y, h) {
                            d_preimages.entry((x, y, h)).or_default().push((b, c.clone()));
                        }
                    }
                }
            }
        }
        Reduced {
            a,
            normalized,
            basis,
            factorizations,
            d_preimages,
        }
    }

    fn degree_range(&self) -> Option<(i64, i64)> {
        let n = self.a.object_count();
        let mut r: Option<(i64, i64)> = None;
        for x in 0..n {
            for y in 0..n {
                for &i in &self.basis[x][y] {
                    let d = self.a.hom(x, y).degree(i);
                    r = Some(r.map_or((d, d), |(p, q)| (p.min(d), q.max(d))));
                }
            }
        }
        r
    }

    /// Column `s` in canonical order: object tuples lexicographic,
    /// arguments left-major, then the value.
    fn enumerate(&self, m: &Bimodule, s: usize) -> Vec<Cochain> {
        let n = self.a.object_count();
        let mut out = Vec::new();
        let mut objects = Vec::with_capacity(s + 1);
        for x0 in 0..n {
            objects.push(x0);
            self.extend(m, s, &mut objects, &mut Vec::new(), &mut out);
            objects.pop();
        }
        out
    }

    fn extend(&self, m: &Bimodule, s: usize, objects: &mut Vec<usize>, args: &mut Vec<usize>, out: &mut Vec<Cochain>) {
        let n = self.a.object_count();
        if args.len() == s {
            let (xs, x0) = (*objects.last().unwrap(), objects[0]);
            for value in 0..m.value(xs, x0).dim() {
                out.push(Cochain {
                    objects: objects.clone(),
                    args: args.clone(),
                    value,
                });
            }
            return;
        }
        let prev = *objects.last().unwrap();
        for x in 0..n {
            if self.basis[x][prev].is_empty() {
                continue;
            }
            objects.push(x);
            for &b in &self.basis[x][prev] {
                args.push(b);
                self.extend(m, s, objects, args, out);
                args.pop();
            }
            objects.pop();
        }
    }

    fn degree(&self, m: &Bimodule, c: &Cochain) -> i64 {
        let mut n = m.value(*c.objects.last().unwrap(), c.objects[0]).degree(c.value);
        for (i, &b) in c.args.iter().enumerate() {
            n -= self.a.hom(c.objects[i + 1], c.objects[i]).degree(b);
        }
        n
    }

    fn label(&self, m: &Bimodule, c: &Cochain) -> String {
        let xs = *c.objects.last().unwrap();
        let mut s = String::new();
        if self.a.object_count() > 1 {
            let objs: Vec<&str> = c.objects.iter().map(|&o| self.a.objects()[o].as_str()).collect();
            s.push_str(&format!("({}) ", objs.join(",")));
        }
        let args: Vec<&str> = c
            .args
            .iter()
            .enumerate()
            .map(|(i, &b)| self.a.hom(c.objects[i + 1], c.objects[i]).label(b))
            .collect();
        s.push('[');
        s.push_str(&args.join("|"));
        s.push_str("]↦");
        s.push_str(m.value(xs, c.objects[0]).label(c.value));
        s
    }

    fn d_hoch(&self, m: &Bimodule, c: &Cochain, index: &HashMap<Cochain, usize>) -> Result<SVec> {
        let f = self.a.field();
        let a = self.a;
        let s = c.args.len();
        let nobj = a.object_count();
        let deg = self.degree(m, c);
        let (x0, xs) = (c.objects[0], *c.objects.last().unwrap());
        let e = |i: usize| -> SVec { [(i, f.one())].into_iter().collect() };
        let mut out = SVec::new();
        let mut push = |target: Cochain, coeff: &Scalar| -> Result<()> {
            let j = *index
                .get(&target)
                .ok_or_else(|| Error::Inconsistent(format!("missing cochain {target:?}")))?;
            add_entry(f, &mut out, j, coeff);
            Ok(())
        };
        // f_1 · φ(f_2, …)
        for y0 in 0..nobj {
            for &ai in &self.basis[x0][y0] {
                let sign = f.sign(deg * a.hom(x0, y0).degree(ai));
                let am = m.act_left(xs, x0, y0, &e(ai), &e(c.value));
                for (&v, coeff) in &am {
                    let mut objects = vec![y0];
                    objects.extend_from_slice(&c.objects);
                    let mut args = vec![ai];
                    args.extend_from_slice(&c.args);
                    push(Cochain { objects, args, value: v }, &f.mul(&sign, coeff))?;
                }
            }
        }
        // φ(…, f_i f_{i+1}, …)
        for i in 1..=s {
            let (xi, xim1) = (c.objects[i], c.objects[i - 1]);
            let sign = f.sign(i as i64);
            if let Some(list) = self.factorizations.get(&(xi, xim1, c.args[i - 1])) {
                for (z, g, h, coeff) in list {
                    let mut objects = c.objects[..i].to_vec();
                    objects.push(*z);
                    objects.extend_from_slice(&c.objects[i..]);
                    let mut args = c.args[..i - 1].to_vec();
                    args.push(*g);
                    args.push(*h);
                    args.extend_from_slice(&c.args[i..]);
                    push(Cochain { objects, args, value: c.value }, &f.mul(&sign, coeff))?;
                }
            }
        }
        // φ(f_1, …, f_s) · f_{s+1}
        let sign = f.sign(s as i64 + 1);
        for y in 0..nobj {
            for &ai in &self.basis[y][xs] {
                let ma = m.act_right(y, xs, x0, &e(c.value), &e(ai));
                for (&v, coeff) in &ma {
                    let mut objects = c.objects.clone();
                    objects.push(y);
                    let mut args = c.args.clone();
                    args.push(ai);
                    push(Cochain { objects, args, value: v }, &f.mul(&sign, coeff))?;
                }
            }
        }
        Ok(out)
    }

    fn d_int(&self, m: &Bimodule, c: &Cochain, index: &HashMap<Cochain, usize>) -> Result<SVec> {
        let f = self.a.field();
        let deg = self.degree(m, c);
        let (x0, xs) = (c.objects[0], *c.objects.last().unwrap());
        let mut out = SVec::new();
        let mut push = |target: Cochain, coeff: &Scalar| -> Result<()> {
            let j = *index
                .get(&target)
                .ok_or_else(|| Error::Inconsistent(format!("missing cochain {target:?}")))?;
            add_entry(f, &mut out, j, coeff);
            Ok(())
        };
        for (&v, coeff) in m.value(xs, x0).d_of(c.value) {
            push(
                Cochain {
                    objects: c.objects.clone(),
                    args: c.args.clone(),
                    value: v,
                },
                coeff,
            )?;
        }
        let base = f.neg(&f.sign(deg));
        let mut before = 0i64;
        for (i, &b) in c.args.iter().enumerate() {
            let (src, dst) = (c.objects[i + 1], c.objects[i]);
            let sign = f.mul(&base, &f.sign(before));
            if let Some(list) = self.d_preimages.get(&(src, dst, b)) {
                for (bp, coeff) in list {
                    let mut args = c.args.clone();
                    args[i] = *bp;
                    push(
                        Cochain {
                            objects: c.objects.clone(),
                            args,
                            value: c.value,
                        },
                        &f.mul(&sign, coeff),
                    )?;
                }
            }
            before += self.a.hom(src, dst).degree(b);
        }
        Ok(out)
    }
}

impl Bicomplex {
    /// All cochains with `s ≤ s_max`. The normalized variant drops every
    /// cochain with an identity argument.
    pub fn build(a: &DGCategory, m: &Bimodule, s_max: usize, normalized: bool) -> Result<Bicomplex> {
        if m.object_count() != a.object_count() {
            return Err(Error::Inconsistent("bimodule and category differ in objects".into()));
        }
        let red = Reduced::new(a, normalized);
        let cochains: Vec<Vec<Cochain>> = (0..=s_max + 1).map(|s| red.enumerate(m, s)).collect();
        let index: Vec<HashMap<Cochain, usize>> = cochains
            .iter()
            .map(|col| col.iter().cloned().enumerate().map(|(i, c)| (c, i)).collect())
            .collect();
        let d_hoch = (0..s_max)
            .map(|s| {
                cochains[s]
                    .par_iter()
                    .map(|c| red.d_hoch(m, c, &index[s + 1]))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let d_int = (0..=s_max)
            .map(|s| {
                cochains[s]
                    .par_iter()
                    .map(|c| red.d_int(m, c, &index[s]))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let mut cochains = cochains;
        cochains.truncate(s_max + 1);
        let columns = cochains
            .iter()
            .map(|col| {
                col.iter()
                    .map(|c| Generator {
                        t: -red.degree(m, c),
                        label: red.label(m, c),
                    })
                    .collect()
            })
            .collect();
        let certificate = Certificate {
            generators: red.degree_range(),
            coefficients: m.degree_range(),
        };
        let column0 = cochains[0]
            .iter()
            .map(|c| [((c.objects[0], c.value), a.field().one())].into_iter().collect())
            .collect();
        Ok(Bicomplex {
            field: a.field(),
            normalized: red.normalized,
            s_max,
            columns,
            d_hoch,
            d_int,
            certificate,
            cochains: Some(cochains),
            column0,
        })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn normalized(&self) -> bool {
        self.normalized
    }

    pub fn s_max(&self) -> usize {
        self.s_max
    }

    pub fn certificate(&self) -> &Certificate {
        &self.certificate
    }

    pub fn stability(&self, n: i64) -> Stability {
        self.certificate.stability(n, self.s_max)
    }

    pub fn column(&self, s: usize) -> &[Generator] {
        &self.columns[s]
    }

    pub fn cochains(&self, s: usize) -> Option<&[Cochain]> {
        self.cochains.as_ref().map(|c| c[s].as_slice())
    }

    /// Generator `j` of column 0 as a family of elements of `M(x, x)`.
    pub fn column0(&self, j: usize) -> &Family {
        &self.column0[j]
    }

    pub fn d_hoch(&self, s: usize) -> &[SVec] {
        &self.d_hoch[s]
    }

    pub fn d_int(&self, s: usize) -> &[SVec] {
        &self.d_int[s]
    }

    /// Generators of column `s` in internal degree `t`.
    pub fn indices(&self, s: usize, t: i64) -> Vec<usize> {
        (0..self.columns[s].len()).filter(|&j| self.columns[s][j].t == t).collect()
    }

    pub fn dim(&self, s: usize, t: i64) -> usize {
        self.columns[s].iter().filter(|g| g.t == t).count()
    }

    /// All `(s, t)` with a nonzero space, sorted.
    pub fn bidegrees(&self) -> Vec<(usize, i64)> {
        let mut out: Vec<(usize, i64)> = self
            .columns
            .iter()
            .enumerate()
            .flat_map(|(s, col)| col.iter().map(move |g| (s, g.t)))
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Checks `δ² = 0`, `D² = 0` and `δD = Dδ` on every generator.
    pub fn check(&self) -> Result<()> {
        let f = self.field;
        let apply = |cols: &[SVec], v: &SVec| -> SVec {
            let mut out = SVec::new();
            for (&j, c) in v {
                crate::linalg::axpy(f, &mut out, c, &cols[j]);
            }
            out
        };
        for s in 0..=self.s_max {
            for j in 0..self.columns[s].len() {
                let di = &self.d_int[s][j];
                if !apply(&self.d_int[s], di).is_empty() {
                    return Err(Error::validation("internal differential squares to zero", self.columns[s][j].label.clone()));
                }
                if s < self.s_max {
                    let dh = &self.d_hoch[s][j];
                    if s + 1 < self.s_max && !apply(&self.d_hoch[s + 1], dh).is_empty() {
                        return Err(Error::validation("Hochschild differential squares to zero", self.columns[s][j].label.clone()));
                    }
                    if apply(&self.d_int[s + 1], dh) != apply(&self.d_hoch[s], di) {
                        return Err(Error::validation("differentials commute", self.columns[s][j].label.clone()));
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dgcat::CategoryBuilder;

    const Q: Field = Field::Rationals;

    fn dual_numbers(f: Field) -> DGCategory {
        let mut b = CategoryBuilder::new(f);
        b.object("*").unwrap();
        b.identity("*", "1").unwrap();
        b.basis("*", "*", "e", 0).unwrap();
        b.build().unwrap()
    }

    #[test]
    fn dual_numbers_column_dims() {
        let a = dual_numbers(Q);
        let m = Bimodule::standard(&a);
        let b = Bicomplex::build(&a, &m, 6, true).unwrap();
        b.check().unwrap();
        for s in 0..=6 {
            assert_eq!(b.dim(s, 0), 2, "s = {s}");
        }
        let full = Bicomplex::build(&a, &m, 3, false).unwrap();
        full.check().unwrap();
        assert_eq!(full.dim(3, 0), 16);
    }

    #[test]
    fn dg_bicomplex_squares_to_zero() {
        let mut b = CategoryBuilder::new(Q);
        b.object("*").unwrap();
        b.identity("*", "1").unwrap();
        b.basis("*", "*", "u", 0).unwrap();
        b.basis("*", "*", "v", -1).unwrap();
        b.differential("*", "*", "u", vec![("v".to_string(), Q.one())]).unwrap();
        let a = b.build().unwrap();
        let m = Bimodule::standard(&a);
        for k in [-1, 0, 2] {
            let bc = Bicomplex::build(&a, &m.shift(&a, k), 3, true).unwrap();
            bc.check().unwrap();
        }
        assert!(!Bicomplex::build(&a, &m, 1, true).unwrap().certificate().is_bounded());
    }
}
