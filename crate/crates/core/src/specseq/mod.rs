//! Spectral sequences of filtered cochain complexes.
//!
//! A [`FilteredComplex`] has, in each total degree `N`, a basis with a
//! filtration value `p` per basis vector; `F^p` is spanned by the basis
//! vectors of value at least `p`, and `d: N → N + 1` preserves it. Pages are
//! computed by the usual recursion on representatives: a cell `(p, N)` of
//! page `r` keeps
//!
//! * `reps`, vectors of `Z_r^p` lifting a basis of `E_r^{p,N}`,
//! * `cycles`, a spanning set of `Z_{r-1}^{p+1}`,
//! * `bound_y` in degree `N - 1` spanning `Z_{r-1}^{p-r+1}` modulo cycles,
//!   and `bound_d = d(bound_y)`,
//!
//! so that `Z_r^p = reps + cycles + bound_d` and `E_r^{p,N} = Z_r^p /
//! (cycles + bound_d)`.

mod edge;

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

pub use edge::{
    characteristic_hom, convergence_check, degeneration_report, forgetful_edge, induced_functor, ConvergenceReport,
    ConvergenceRow, Degeneration, EdgeMapResult, Witness,
};

use crate::error::{Error, Result};
use crate::hochschild::{Bicomplex, Stability, TotalComplex};
use crate::linalg::{Field, Matrix, Subquotient};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Filtration {
    /// `p = s`: the internal differential is taken first.
    Characteristic,
    /// `p = t`: the Hochschild differential is taken first.
    Forgetful,
}

impl Filtration {
    pub fn parse(text: &str) -> Result<Filtration> {
        match text {
            "char" | "characteristic" => Ok(Filtration::Characteristic),
            "forget" | "forgetful" => Ok(Filtration::Forgetful),
            _ => Err(Error::Parse(format!("unknown filtration `{text}`"))),
        }
    }

    /// Chart coordinates of the cell `(p, N)`: `(s, t)` for the
    /// characteristic filtration and `(p, q) = (t, s)` for the forgetful one.
    pub fn coordinates(self, p: i64, n: i64) -> (i64, i64) {
        (p, n - p)
    }
}

/// A finite cochain complex with a decreasing filtration.
#[derive(Clone, Debug)]
pub struct FilteredComplex {
    pub field: Field,
    /// Degrees `lo ..= hi` carry a basis; `d` is known from `lo` to `hi - 1`.
    pub range: (i64, i64),
    pub filtration: BTreeMap<i64, Vec<i64>>,
    pub d: BTreeMap<i64, Matrix>,
}

impl FilteredComplex {
    pub fn from_total(b: &Bicomplex, total: &TotalComplex, filtration: Filtration) -> FilteredComplex {
        let (lo, hi) = total.range();
        let filt = (lo..=hi)
            .map(|n| {
                let values = total
                    .generators(n)
                    .iter()
                    .map(|&(s, j)| match filtration {
                        Filtration::Characteristic => s as i64,
                        Filtration::Forgetful => b.column(s)[j].t,
                    })
                    .collect();
                (n, values)
            })
            .collect();
        FilteredComplex {
            field: total.field(),
            range: (lo, hi),
            filtration: filt,
            d: (lo..hi).map(|n| (n, total.d(n).unwrap().clone())).collect(),
        }
    }

    pub fn dim(&self, n: i64) -> usize {
        self.filtration.get(&n).map_or(0, Vec::len)
    }

    /// Inclusive range of filtration values in degree `n`.
    pub fn filtration_range(&self, n: i64) -> Option<(i64, i64)> {
        let v = self.filtration.get(&n)?;
        Some((*v.iter().min()?, *v.iter().max()?))
    }

    /// Basis vectors `e_i` with filtration value satisfying `keep`.
    fn basis_where(&self, n: i64, keep: impl Fn(i64) -> bool) -> Matrix {
        let f = self.field;
        let values = &self.filtration[&n];
        let cols: Vec<Vec<_>> = values
            .iter()
            .enumerate()
            .filter(|(_, &p)| keep(p))
            .map(|(i, _)| {
                let mut v = vec![f.zero(); values.len()];
                v[i] = f.one();
                v
            })
            .collect();
        Matrix::from_columns(f, values.len(), &cols)
    }

    /// The differential out of degree `n`; zero past the known range.
    pub fn dmat(&self, n: i64) -> Matrix {
        self.d
            .get(&n)
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(self.field, self.dim(n + 1), self.dim(n)))
    }

    /// Whether the filtration is preserved by `d`.
    pub fn check(&self) -> bool {
        self.d.iter().all(|(n, m)| {
            let (src, dst) = (&self.filtration[n], &self.filtration[&(n + 1)]);
            (0..m.cols()).all(|j| (0..m.rows()).all(|i| num_traits::Zero::is_zero(m.get(i, j)) || dst[i] >= src[j]))
        })
    }
}

#[derive(Clone, Debug)]
struct Cell {
    reps: Matrix,
    cycles: Matrix,
    bound_y: Matrix,
    bound_d: Matrix,
}

/// One page: dimensions and differentials of every cell `(p, N)`.
#[derive(Clone, Debug)]
pub struct Page {
    pub r: usize,
    cells: BTreeMap<(i64, i64), Cell>,
    /// `d_r` out of `(p, N)` into `(p + r, N + 1)`, in representative coordinates.
    pub differentials: BTreeMap<(i64, i64), Matrix>,
}

impl Page {
    pub fn dim(&self, p: i64, n: i64) -> usize {
        self.cells.get(&(p, n)).map_or(0, |c| c.reps.cols())
    }

    /// Representatives of `E_r^{p,N}` as vectors in the total complex.
    pub fn representatives(&self, p: i64, n: i64) -> Option<&Matrix> {
        self.cells.get(&(p, n)).map(|c| &c.reps)
    }

    /// Rank of `d_r` out of `(p, N)`.
    pub fn rank(&self, p: i64, n: i64) -> usize {
        self.differentials.get(&(p, n)).map_or(0, Matrix::rank)
    }

    /// Nonzero cells as `((p, N), dim)`.
    pub fn nonzero(&self) -> Vec<((i64, i64), usize)> {
        self.cells
            .iter()
            .filter(|(_, c)| c.reps.cols() > 0)
            .map(|(&k, c)| (k, c.reps.cols()))
            .collect()
    }
}

/// All pages `E_0 … E_{r_max}` of a filtered complex. Cells of degree `N`
/// are exact for `lo < N < hi`; the end degrees serve as margins.
#[derive(Clone, Debug)]
pub struct SpectralSequence {
    pub complex: FilteredComplex,
    pub pages: Vec<Page>,
}

fn empty(f: Field, rows: usize) -> Matrix {
    Matrix::zeros(f, rows, 0)
}

/// Independent columns of `d`, with the matching columns of `y`.
fn prune_pairs(d: &Matrix, y: &Matrix) -> (Matrix, Matrix) {
    let keep = d.independent_columns();
    (d.select_columns(&keep), y.select_columns(&keep))
}

impl SpectralSequence {
    pub fn new(complex: FilteredComplex, r_max: usize) -> Result<SpectralSequence> {
        let f = complex.field;
        let (lo, hi) = complex.range;
        let degrees: Vec<i64> = (lo..=hi).collect();
        let mut cells = BTreeMap::new();
        for &n in &degrees {
            let dim = complex.dim(n);
            if let Some((pmin, pmax)) = complex.filtration_range(n) {
                for p in pmin..=pmax {
                    cells.insert(
                        (p, n),
                        Cell {
                            reps: complex.basis_where(n, |q| q == p),
                            cycles: complex.basis_where(n, |q| q > p),
                            bound_y: empty(f, complex.dim(n - 1)),
                            bound_d: empty(f, dim),
                        },
                    );
                }
            }
        }
        let mut pages = Vec::new();
        let mut current = Page {
            r: 0,
            cells,
            differentials: BTreeMap::new(),
        };
        for r in 0..=r_max {
            let (diffs, next) = Self::step(&complex, &current, r)?;
            current.differentials = diffs;
            pages.push(current);
            if r == r_max {
                break;
            }
            current = Page {
                r: r + 1,
                cells: next,
                differentials: BTreeMap::new(),
            };
        }
        Ok(SpectralSequence { complex, pages })
    }

    /// `d_r` on page `page` and the cells of page `r + 1`.
    #[allow(clippy::type_complexity)]
    fn step(
        complex: &FilteredComplex,
        page: &Page,
        r: usize,
    ) -> Result<(BTreeMap<(i64, i64), Matrix>, BTreeMap<(i64, i64), Cell>)> {
        let f = complex.field;
        let ri = r as i64;
        let (_, hi) = complex.range;
        let keys: Vec<(i64, i64)> = page.cells.keys().copied().collect();
        // Solve d x = R' a + C' b1 + D' b2 in the target cell for every representative x.
        type Solved = ((i64, i64), Matrix, Matrix);
        let solved: Vec<Solved> = keys
            .par_iter()
            .map(|&(p, n)| {
                let cell = &page.cells[&(p, n)];
                let nt = cell.reps.cols();
                let dx = if n < hi { complex.dmat(n).mul(&cell.reps) } else { empty(f, 0) };
                let target = page.cells.get(&(p + ri, n + 1));
                match target {
                    Some(t) if n < hi => {
                        let basis = t.reps.hstack(&t.cycles).hstack(&t.bound_d);
                        let sols = basis.solve_many(&dx);
                        let (na, nc) = (t.reps.cols(), t.cycles.cols());
                        let mut a = Matrix::zeros(f, na, nt);
                        let mut b2 = Matrix::zeros(f, t.bound_d.cols(), nt);
                        for (j, s) in sols.into_iter().enumerate() {
                            let s = s.ok_or_else(|| {
                                Error::Inconsistent(format!("d of a representative at ({p}, {n}) on page {r} is not in Z_r"))
                            })?;
                            for i in 0..na {
                                a.set(i, j, s[i].clone());
                            }
                            for i in 0..t.bound_d.cols() {
                                b2.set(i, j, s[na + nc + i].clone());
                            }
                        }
                        Ok(((p, n), a, b2))
                    }
                    _ => {
                        // No target: d x must already lie deeper (or the degree is a margin).
                        Ok(((p, n), Matrix::zeros(f, 0, nt), Matrix::zeros(f, 0, nt)))
                    }
                }
            })
            .collect::<Result<Vec<_>>>()?;
        let mut diffs = BTreeMap::new();
        let mut corr = BTreeMap::new();
        for (k, a, b2) in solved {
            diffs.insert(k, a);
            corr.insert(k, b2);
        }
        let next: Vec<((i64, i64), Cell)> = keys
            .par_iter()
            .map(|&(p, n)| {
                let cell = &page.cells[&(p, n)];
                let nt = cell.reps.cols();
                let out = &diffs[&(p, n)];
                let kernel = if out.rows() == 0 { Matrix::identity(f, nt) } else { out.kernel_basis() };
                let incoming = match diffs.get(&(p - ri, n - 1)) {
                    Some(m) if m.rows() == nt => m.clone(),
                    _ => empty(f, nt),
                };
                let sq = Subquotient::new(&kernel, &incoming)?;
                let k = sq.representatives();
                let mut reps = cell.reps.mul(k);
                if let Some(t) = page.cells.get(&(p + ri, n + 1)) {
                    let b2 = &corr[&(p, n)];
                    if b2.rows() > 0 && t.bound_y.cols() > 0 {
                        reps = reps.add(&t.bound_y.mul(&b2.mul(k)).scale(&f.neg(&f.one())));
                    }
                }
                // Z_r^{p+1} = reps + cycles + bound_d of cell (p + 1, N).
                let cycles = match page.cells.get(&(p + 1, n)) {
                    Some(c) => c.reps.hstack(&c.cycles).hstack(&c.bound_d).column_space_basis(),
                    None => empty(f, complex.dim(n)),
                };
                // d Z_r^{p-r}: old pairs and the representatives of (p - r, N - 1).
                let (mut by, mut bd) = (cell.bound_y.clone(), cell.bound_d.clone());
                if let Some(src) = page.cells.get(&(p - ri, n - 1)) {
                    if src.reps.cols() > 0 {
                        by = by.hstack(&src.reps);
                        bd = bd.hstack(&complex.dmat(n - 1).mul(&src.reps));
                    }
                }
                let (bound_d, bound_y) = prune_pairs(&bd, &by);
                Ok((
                    (p, n),
                    Cell {
                        reps,
                        cycles,
                        bound_y,
                        bound_d,
                    },
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok((diffs, next.into_iter().collect()))
    }

    pub fn page(&self, r: usize) -> &Page {
        &self.pages[r]
    }

    pub fn last(&self) -> &Page {
        self.pages.last().unwrap()
    }

    /// Largest filtration spread over the degrees; pages past it are stable.
    pub fn stable_page(&self) -> usize {
        let spread = self
            .complex
            .filtration
            .keys()
            .filter_map(|&n| self.complex.filtration_range(n))
            .map(|(a, b)| (b - a) as usize)
            .max()
            .unwrap_or(0);
        spread + 2
    }

    /// `E_∞` dimensions, read off a page past every possible differential.
    pub fn e_infinity(&self, p: i64, n: i64) -> usize {
        self.last().dim(p, n)
    }
}

/// A spectral sequence of a Hochschild bicomplex on reported total degrees.
#[derive(Clone, Debug)]
pub struct HochschildSS {
    pub filtration: Filtration,
    /// Reported total degrees.
    pub degrees: (i64, i64),
    pub stability: BTreeMap<i64, Stability>,
    pub sequence: SpectralSequence,
    pub total: TotalComplex,
}

impl HochschildSS {
    pub fn dim(&self, r: usize, p: i64, n: i64) -> usize {
        self.sequence.page(r.min(self.sequence.pages.len() - 1)).dim(p, n)
    }

    /// Cells of page `r` in chart coordinates, restricted to reported degrees.
    pub fn chart(&self, r: usize) -> BTreeMap<(i64, i64), usize> {
        let page = self.sequence.page(r.min(self.sequence.pages.len() - 1));
        page.nonzero()
            .into_iter()
            .filter(|((_, n), _)| (self.degrees.0..=self.degrees.1).contains(n))
            .map(|((p, n), d)| (self.filtration.coordinates(p, n), d))
            .collect()
    }

    pub fn e_infinity(&self, p: i64, n: i64) -> usize {
        self.sequence.e_infinity(p, n)
    }

    /// `Σ_p dim E_∞^{p, N}`.
    pub fn diagonal_sum(&self, n: i64) -> usize {
        self.sequence
            .last()
            .nonzero()
            .into_iter()
            .filter(|((_, m), _)| *m == n)
            .map(|(_, d)| d)
            .sum()
    }
}

/// Pages `E_0 … E_{r_max}` of the chosen filtration on total degrees
/// `degrees`, computed to the stable page so that the last page is `E_∞`.
pub fn pages(b: &Bicomplex, filtration: Filtration, degrees: (i64, i64), r_max: usize) -> Result<HochschildSS> {
    let (lo, hi) = (degrees.0.min(degrees.1), degrees.0.max(degrees.1));
    let stability: BTreeMap<i64, Stability> = (lo..=hi).map(|n| (n, b.stability(n))).collect();
    if stability.values().all(|s| *s == Stability::Truncated) {
        return Err(Error::WindowTooSmall(format!(
            "no total degree in {lo}..{hi} is exact with s_max = {}",
            b.s_max()
        )));
    }
    let total = TotalComplex::new(b, lo - 1, hi + 1);
    let complex = FilteredComplex::from_total(b, &total, filtration);
    let spread = complex
        .filtration
        .keys()
        .filter_map(|&n| complex.filtration_range(n))
        .map(|(a, c)| (c - a) as usize)
        .max()
        .unwrap_or(0);
    let sequence = SpectralSequence::new(complex, r_max.max(spread + 2))?;
    Ok(HochschildSS {
        filtration,
        degrees: (lo, hi),
        stability,
        sequence,
        total,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dgcat::{Bimodule, CategoryBuilder, DGCategory};
    use crate::hochschild::Bicomplex;

    const Q: Field = Field::Rationals;

    fn monogenic(deg: i64) -> DGCategory {
        let mut b = CategoryBuilder::new(Q);
        b.object("*").unwrap();
        b.identity("*", "1").unwrap();
        b.basis("*", "*", "x", deg).unwrap();
        b.build().unwrap()
    }

    #[test]
    fn converges_for_dual_numbers() {
        let a = monogenic(0);
        let b = Bicomplex::build(&a, &Bimodule::standard(&a), 7, true).unwrap();
        let hh = b.hochschild_cohomology(0, 5).unwrap();
        for filt in [Filtration::Characteristic, Filtration::Forgetful] {
            let ss = pages(&b, filt, (0, 5), 4).unwrap();
            assert!(ss.sequence.complex.check());
            for n in 0..=5 {
                assert_eq!(ss.diagonal_sum(n), hh.dim(n).unwrap(), "{filt:?} degree {n}");
            }
        }
    }

    #[test]
    fn exterior_pages_degenerate() {
        let a = monogenic(-3);
        let b = Bicomplex::build(&a, &Bimodule::standard(&a), 6, true).unwrap();
        let ss = pages(&b, Filtration::Characteristic, (-8, 3), 4).unwrap();
        for page in &ss.sequence.pages[2..] {
            assert!(page.differentials.values().all(Matrix::is_zero));
        }
        assert_eq!(ss.dim(2, 1, -2), 1);
    }

    #[test]
    fn acyclic_algebra_has_trivial_e1() {
        let mut cb = CategoryBuilder::new(Q);
        cb.object("*").unwrap();
        cb.identity("*", "1").unwrap();
        cb.basis("*", "*", "u", 1).unwrap();
        cb.differential("*", "*", "u", vec![("1".to_string(), Q.one())]).unwrap();
        let a = cb.build().unwrap();
        let b = Bicomplex::build(&a, &Bimodule::standard(&a), 4, true).unwrap();
        let ss = pages(&b, Filtration::Characteristic, (-2, 2), 3).unwrap();
        for n in -2..=2 {
            assert_eq!(ss.diagonal_sum(n), 0);
        }
    }
}
