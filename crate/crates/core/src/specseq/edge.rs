use std::collections::BTreeMap;

use serde::Serialize;

use super::{Filtration, HochschildSS};
use crate::center::{dg_center_complex, graded_center, graded_center_with_automorphism, CenterElement};
use crate::dgcat::{DGCategory, GradedFunctor, InducedCategory};
use crate::error::{Error, Result};
use crate::hochschild::{Bicomplex, HHResult, Stability};
use crate::linalg::{add_entry, dense, Matrix, SVec, Scalar};

/// A linear map between a cohomology group and a center, with its rank.
#[derive(Clone, Debug)]
pub struct EdgeMapResult {
    pub degree: i64,
    pub source: String,
    pub target: String,
    pub source_dim: usize,
    pub target_dim: usize,
    /// Columns are images of the source basis in the target basis.
    pub matrix: Matrix,
    pub rank: usize,
    pub surjective: bool,
    pub injective: bool,
    pub stability: Stability,
    /// The matching `E_∞` dimension, when pages were supplied.
    pub e_infinity: Option<usize>,
}

impl EdgeMapResult {
    fn new(degree: i64, source: String, target: String, matrix: Matrix, stability: Stability, e_infinity: Option<usize>) -> Self {
        let rank = matrix.rank();
        EdgeMapResult {
            degree,
            source,
            target,
            source_dim: matrix.cols(),
            target_dim: matrix.rows(),
            rank,
            surjective: rank == matrix.rows(),
            injective: rank == matrix.cols(),
            matrix,
            stability,
            e_infinity,
        }
    }

    pub fn kernel_dim(&self) -> usize {
        self.source_dim - self.rank
    }

    /// Whether the image agrees with the supplied `E_∞` term.
    pub fn matches_e_infinity(&self) -> Option<bool> {
        self.e_infinity.map(|e| e == self.rank)
    }
}

/// `HT` on `H(A)`: the class of `T` applied to each representative.
pub fn induced_functor(a: &DGCategory, h: &InducedCategory, t: &GradedFunctor) -> Result<GradedFunctor> {
    let f = a.field();
    let n = a.object_count();
    let mut maps = vec![vec![Matrix::zeros(f, 0, 0); n]; n];
    for x in 0..n {
        for y in 0..n {
            let (tx, ty) = (t.objects[x], t.objects[y]);
            let rows = h.category.hom(tx, ty).dim();
            let cols = h.reps[x][y]
                .iter()
                .map(|v| {
                    let image = t.apply(x, y, v);
                    h.class_of(tx, ty, &image)
                        .map(|c| dense(&c, rows))
                        .ok_or_else(|| Error::Inconsistent("automorphism does not preserve cycles".into()))
                })
                .collect::<Result<Vec<_>>>()?;
            maps[x][y] = Matrix::from_columns(f, rows, &cols);
        }
    }
    Ok(GradedFunctor {
        objects: t.objects.clone(),
        maps,
    })
}

/// The part of a total vector of degree `n` in column 0, as a family of
/// elements `Φ_x ∈ M(x, x)`.
fn column0_family(b: &Bicomplex, hh: &HHResult, n: i64, v: &[Scalar], objects: usize) -> Vec<SVec> {
    let f = b.field();
    let comp = hh.total.component(n, v, 0);
    let mut out = vec![SVec::new(); objects];
    for (j, c) in &comp {
        for (&(x, m), k) in b.column0(*j) {
            add_entry(f, &mut out[x], m, &f.mul(c, k));
        }
    }
    out
}

/// The characteristic homomorphism `HH^t(A) → Z^t(H(A))` (optionally with
/// an automorphism), read off the column-0 parts of cocycle representatives.
/// `b` must be the bicomplex of `A` with coefficients in `A` (or its
/// `T`-invariant part).
pub fn characteristic_hom(
    a: &DGCategory,
    b: &Bicomplex,
    t: Option<&GradedFunctor>,
    degree: i64,
    ss: Option<&HochschildSS>,
) -> Result<EdgeMapResult> {
    let f = a.field();
    let hh = b.hochschild_cohomology(degree, degree)?;
    let h = a.homology_category()?;
    let center = match t {
        None => graded_center(&h.category, (degree, degree)),
        Some(t) => graded_center_with_automorphism(&h.category, &induced_functor(a, &h, t)?, (degree, degree))?,
    };
    let reps = &hh.degrees[0].representatives;
    let cols = reps
        .iter()
        .map(|z| {
            let family = column0_family(b, &hh, degree, z, a.object_count());
            let classes = family
                .iter()
                .enumerate()
                .map(|(x, v)| {
                    h.class_of(x, x, v)
                        .ok_or_else(|| Error::Inconsistent("column-0 part of a cocycle is not a cycle".into()))
                })
                .collect::<Result<Vec<_>>>()?;
            let e = CenterElement {
                degree: -degree,
                components: classes,
            };
            if e.is_zero() {
                return Ok(vec![f.zero(); center.dim(degree)]);
            }
            center
                .coordinates(degree, &e)
                .ok_or_else(|| Error::Inconsistent(format!("column-0 part of a cocycle in degree {degree} is not central")))
        })
        .collect::<Result<Vec<_>>>()?;
    let matrix = Matrix::from_columns(f, center.dim(degree), &cols);
    let e_inf = ss
        .filter(|s| s.filtration == Filtration::Characteristic)
        .map(|s| s.e_infinity(0, degree));
    Ok(EdgeMapResult::new(
        degree,
        format!("HH^{degree}"),
        format!("Z^{degree}_gr(H)"),
        matrix,
        b.stability(degree),
        e_inf,
    ))
}

/// The forgetful edge `H^p(Z_gr(A)) → HH^p(A)`: center cycles as 0-cochains.
pub fn forgetful_edge(a: &DGCategory, b: &Bicomplex, degree: i64, ss: Option<&HochschildSS>) -> Result<EdgeMapResult> {
    let f = a.field();
    let hh = b.hochschild_cohomology(degree, degree)?;
    let zc = dg_center_complex(a, (degree, degree))?;
    let cohom = &zc.cohomology[&degree];
    // Column-0 generators of internal degree p, as families, to solve against.
    let gens = b.indices(0, degree);
    let layout: Vec<(usize, usize)> = {
        let mut keys: Vec<(usize, usize)> = gens.iter().flat_map(|&j| b.column0(j).keys().copied()).collect();
        keys.sort_unstable();
        keys.dedup();
        keys
    };
    let pos: BTreeMap<(usize, usize), usize> = layout.iter().enumerate().map(|(i, &k)| (k, i)).collect();
    let gen_matrix = Matrix::from_columns(
        f,
        layout.len(),
        &gens
            .iter()
            .map(|&j| {
                let mut v = vec![f.zero(); layout.len()];
                for (k, c) in b.column0(j) {
                    v[pos[k]] = c.clone();
                }
                v
            })
            .collect::<Vec<_>>(),
    );
    let sq = hh.total.cohomology(degree)?;
    let cols = (0..cohom.dim())
        .map(|i| {
            let e = zc.element(degree, &cohom.representative(i));
            let mut target = vec![f.zero(); layout.len()];
            for (x, v) in e.components.iter().enumerate() {
                for (&m, c) in v {
                    let k = pos.get(&(x, m)).ok_or_else(|| {
                        Error::Inconsistent("center element is not a 0-cochain of the bicomplex".into())
                    })?;
                    target[*k] = c.clone();
                }
            }
            let coords = gen_matrix
                .solve(&target)
                .ok_or_else(|| Error::Inconsistent("center element is not a 0-cochain of the bicomplex".into()))?;
            let mut col0 = SVec::new();
            for (k, c) in coords.iter().enumerate() {
                add_entry(f, &mut col0, gens[k], c);
            }
            let v = hh.total.embed(degree, 0, &col0);
            sq.class_of(&v)
                .ok_or_else(|| Error::Inconsistent("center cycle is not a total cocycle".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let matrix = Matrix::from_columns(f, sq.dim(), &cols);
    let e_inf = ss
        .filter(|s| s.filtration == Filtration::Forgetful)
        .map(|s| s.e_infinity(degree, degree));
    Ok(EdgeMapResult::new(
        degree,
        format!("H^{degree}(Z_gr)"),
        format!("HH^{degree}"),
        matrix,
        b.stability(degree),
        e_inf,
    ))
}

/// A nonzero `d_r` with `r ≥ 2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub r: usize,
    /// Source cell in chart coordinates.
    pub source: (i64, i64),
    pub target: (i64, i64),
    pub rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Degeneration {
    /// All `d_r`, `r ≥ 2`, vanish on the window.
    pub degenerate: bool,
    /// Total degrees scanned (sources of `d_r`).
    pub window: (i64, i64),
    pub first: Option<Witness>,
}

/// Scans every `d_r`, `r ≥ 2`, leaving the reported degrees or the margin below them.
pub fn degeneration_report(ss: &HochschildSS) -> Degeneration {
    let (lo, hi) = ss.degrees;
    let mut first = None;
    'outer: for page in ss.sequence.pages.iter().skip(2) {
        for (&(p, n), m) in &page.differentials {
            if n < lo - 1 || n > hi || m.is_zero() {
                continue;
            }
            let r = page.r as i64;
            first = Some(Witness {
                r: page.r,
                source: ss.filtration.coordinates(p, n),
                target: ss.filtration.coordinates(p + r, n + 1),
                rank: m.rank(),
            });
            break 'outer;
        }
    }
    Degeneration {
        degenerate: first.is_none(),
        window: (lo - 1, hi),
        first,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ConvergenceRow {
    pub degree: i64,
    pub diagonal: usize,
    pub hh: usize,
    pub stability: Stability,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConvergenceReport {
    pub filtration: Filtration,
    pub rows: Vec<ConvergenceRow>,
}

impl ConvergenceReport {
    /// Equality on every exact degree.
    pub fn ok(&self) -> bool {
        self.rows
            .iter()
            .all(|r| r.stability == Stability::Truncated || r.diagonal == r.hh)
    }

    pub fn mismatches(&self) -> Vec<&ConvergenceRow> {
        self.rows
            .iter()
            .filter(|r| r.stability == Stability::Exact && r.diagonal != r.hh)
            .collect()
    }
}

/// `Σ_p dim E_∞^{p,N} = dim HH^N` degree by degree.
pub fn convergence_check(ss: &HochschildSS, hh: &HHResult) -> ConvergenceReport {
    let rows = hh
        .degrees
        .iter()
        .filter(|d| (ss.degrees.0..=ss.degrees.1).contains(&d.degree))
        .map(|d| ConvergenceRow {
            degree: d.degree,
            diagonal: ss.diagonal_sum(d.degree),
            hh: d.dim,
            stability: d.stability,
        })
        .collect();
    ConvergenceReport {
        filtration: ss.filtration,
        rows,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dgcat::{Bimodule, CategoryBuilder};
    use crate::linalg::Field;
    use crate::specseq::pages;

    const Q: Field = Field::Rationals;

    fn monogenic(deg: i64) -> DGCategory {
        let mut b = CategoryBuilder::new(Q);
        b.object("*").unwrap();
        b.identity("*", "1").unwrap();
        b.basis("*", "*", "x", deg).unwrap();
        b.build().unwrap()
    }

    #[test]
    fn dual_numbers_edges_are_isomorphisms_in_degree_zero() {
        let a = monogenic(0);
        let b = Bicomplex::build(&a, &Bimodule::standard(&a), 3, true).unwrap();
        let ss = pages(&b, Filtration::Characteristic, (0, 1), 3).unwrap();
        let e = characteristic_hom(&a, &b, None, 0, Some(&ss)).unwrap();
        assert!(e.surjective && e.injective);
        assert_eq!(e.rank, 2);
        assert_eq!(e.matches_e_infinity(), Some(true));
        let fs = pages(&b, Filtration::Forgetful, (0, 1), 3).unwrap();
        let g = forgetful_edge(&a, &b, 0, Some(&fs)).unwrap();
        assert!(g.injective && g.surjective);
        assert_eq!(g.matches_e_infinity(), Some(true));
    }

    #[test]
    fn exterior_characteristic_kernel() {
        let a = monogenic(-3);
        let b = Bicomplex::build(&a, &Bimodule::standard(&a), 6, true).unwrap();
        let ss = pages(&b, Filtration::Characteristic, (-8, 3), 4).unwrap();
        for t in [-3, 0, 3] {
            let e = characteristic_hom(&a, &b, None, t, Some(&ss)).unwrap();
            assert!(e.surjective, "degree {t}");
            assert_eq!(e.matches_e_infinity(), Some(true));
        }
        let e = characteristic_hom(&a, &b, None, -2, Some(&ss)).unwrap();
        assert!(e.kernel_dim() > 0);
        assert!(degeneration_report(&ss).degenerate);
        let hh = b.hochschild_cohomology(-8, 3).unwrap();
        assert!(convergence_check(&ss, &hh).ok());
    }
}
