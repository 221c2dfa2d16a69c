//! Built-in example inputs and the on-disk description format.
//!
//! Every builtin is assembled from explicit structure constants through
//! [`CategoryBuilder`]; nothing is inferred symbolically.

mod format;

use std::collections::BTreeMap;

pub use format::{
    describe, ingest_path, ingest_str, BasisEntry, BimoduleDescription, Description, FunctorDescription,
    ImageEntry, ProductEntry, ActionEntry, DifferentialEntry,
};

use crate::center::truncated_complexes;
use crate::dgcat::{complex_category, Bimodule, CategoryBuilder, DGCategory, FreeComplex, GradedFunctor};
use crate::error::{Error, Result};
use crate::linalg::{Field, Matrix, SVec, Scalar};

/// A validated input: a category, optional named functors and an optional
/// coefficient bimodule (the standard one when absent).
#[derive(Clone, Debug)]
pub struct Input {
    pub name: String,
    pub category: DGCategory,
    pub functors: BTreeMap<String, GradedFunctor>,
    pub bimodule: Option<Bimodule>,
    /// Set for builtins that are engineered test inputs rather than
    /// standard examples.
    pub note: Option<String>,
}

impl Input {
    fn plain(name: &str, category: DGCategory) -> Input {
        Input {
            name: name.to_string(),
            category,
            functors: BTreeMap::new(),
            bimodule: None,
            note: None,
        }
    }

    /// The coefficient bimodule, defaulting to the category itself.
    pub fn coefficients(&self) -> Bimodule {
        self.bimodule.clone().unwrap_or_else(|| Bimodule::standard(&self.category))
    }
}

fn terms(f: Field, pairs: &[(&str, i64)]) -> Vec<(String, Scalar)> {
    pairs.iter().map(|(l, c)| (l.to_string(), f.from_int(*c))).collect()
}

fn one_object(f: Field, basis: &[(&str, i64)]) -> CategoryBuilder {
    let mut b = CategoryBuilder::new(f);
    b.object("*").expect("fresh builder");
    b.identity("*", "1").expect("object exists");
    for (l, d) in basis {
        b.basis("*", "*", l, *d).expect("object exists");
    }
    b
}

/// The ground field as a one-object category.
pub fn ground(f: Field) -> Result<DGCategory> {
    one_object(f, &[]).build()
}

/// `K[ε]/(ε²)` with `ε` in degree 0.
pub fn dual_numbers(f: Field) -> Result<DGCategory> {
    one_object(f, &[("e", 0)]).build()
}

/// `Λ(x)` with `|x| = -n`, the cohomology of the `n`-sphere in homological
/// indexing.
pub fn exterior(n: i64, f: Field) -> Result<DGCategory> {
    if n < 1 {
        return Err(Error::Unsupported(format!("exterior algebra needs n ≥ 1, got {n}")));
    }
    one_object(f, &[("x", -n)]).build()
}

/// `K[y]/(y^m)` in degree 0, basis `1, y, y^2, …, y^{m-1}`.
pub fn truncated_polynomial(m: usize, f: Field) -> Result<DGCategory> {
    if m < 2 {
        return Err(Error::Unsupported(format!("truncated polynomial needs m ≥ 2, got {m}")));
    }
    let label = |i: usize| if i == 1 { "y".to_string() } else { format!("y{i}") };
    let labels: Vec<String> = (1..m).map(label).collect();
    let basis: Vec<(&str, i64)> = labels.iter().map(|l| (l.as_str(), 0)).collect();
    let mut b = one_object(f, &basis);
    for i in 1..m {
        for j in 1..m {
            let value = if i + j < m { terms(f, &[(&label(i + j), 1)]) } else { Vec::new() };
            b.product("*", "*", "*", &label(i), &label(j), value)?;
        }
    }
    b.build()
}

/// 2 × 2 matrices in degree 0 on the basis `1, e12, e21, e22`.
pub fn matrix2(f: Field) -> Result<DGCategory> {
    let mut b = one_object(f, &[("e12", 0), ("e21", 0), ("e22", 0)]);
    // e11 = 1 - e22; products of the matrix units e_ij e_kl = δ_jk e_il.
    let p = |b: &mut CategoryBuilder, g: &str, h: &str, v: &[(&str, i64)]| {
        b.product("*", "*", "*", g, h, terms(f, v))
    };
    p(&mut b, "e12", "e12", &[])?;
    p(&mut b, "e12", "e21", &[("1", 1), ("e22", -1)])?;
    p(&mut b, "e12", "e22", &[("e12", 1)])?;
    p(&mut b, "e21", "e12", &[("e22", 1)])?;
    p(&mut b, "e21", "e21", &[])?;
    p(&mut b, "e21", "e22", &[])?;
    p(&mut b, "e22", "e12", &[])?;
    p(&mut b, "e22", "e21", &[("e21", 1)])?;
    p(&mut b, "e22", "e22", &[("e22", 1)])?;
    b.build()
}

/// `K[u]/(u²)` with `|u| = 1` and `du = 1`; acyclic.
pub fn acyclic_dga(f: Field) -> Result<DGCategory> {
    let mut b = one_object(f, &[("u", 1)]);
    b.differential("*", "*", "u", terms(f, &[("1", 1)]))?;
    b.build()
}

pub const NONFORMAL_NOTE: &str = "engineered example: a directed dg category whose homology \
carries the Massey product <c, b, a> = w";

/// A directed dg category on objects `0 → 1 → 2 → 3`.
///
/// Degree 0: `a: 0→1`, `b: 1→2`, `c: 2→3`, `ba: 0→2`, `cb: 1→3`.
/// Degree 1: `u: 0→2`, `v: 1→3`, `w: 0→3` with `du = ba`, `dv = cb` and
/// `c·u = w`. All other non-unit products vanish. Homology is
/// spanned by the identities, `a`, `b`, `c` and `w`, and the threefold
/// Massey product of `c, b, a` is `w`.
pub fn nonformal_dga(f: Field) -> Result<DGCategory> {
    let mut b = CategoryBuilder::new(f);
    for o in ["0", "1", "2", "3"] {
        b.object(o)?;
        b.identity(o, &format!("1_{o}"))?;
    }
    for (x, y, l, d) in [
        ("0", "1", "a", 0),
        ("1", "2", "b", 0),
        ("2", "3", "c", 0),
        ("0", "2", "ba", 0),
        ("1", "3", "cb", 0),
        ("0", "2", "u", 1),
        ("1", "3", "v", 1),
        ("0", "3", "w", 1),
    ] {
        b.basis(x, y, l, d)?;
    }
    b.differential("0", "2", "u", terms(f, &[("ba", 1)]))?;
    b.differential("1", "3", "v", terms(f, &[("cb", 1)]))?;
    b.product("0", "1", "2", "b", "a", terms(f, &[("ba", 1)]))?;
    b.product("1", "2", "3", "c", "b", terms(f, &[("cb", 1)]))?;
    b.product("0", "2", "3", "c", "u", terms(f, &[("w", 1)]))?;
    b.build()
}

/// Bounded complexes over a degree-0 algebra supported in `[m, n]`: stalks
/// `S^k` for `k ∈ [m, n]`, disks `D^k` for `m < k ≤ n`, and optionally the
/// chain `E = (A ← A ← ⋯ ← A)` whose differentials are multiplication by `c`.
pub fn disk_category(a: &DGCategory, m: i64, n: i64, chain: Option<&SVec>) -> Result<DGCategory> {
    if m > n {
        return Err(Error::WindowTooSmall(format!("empty window [{m}, {n}]")));
    }
    let mut objs = truncated_complexes(a, m, n);
    if let Some(c) = chain {
        objs.push(FreeComplex::chain("E", m, n, c));
    }
    complex_category(a, &objs)
}

/// Complexes over the dual numbers in `[0, 2]`, including `A ←ε A ←ε A`.
pub fn disk_dual_numbers(f: Field) -> Result<DGCategory> {
    let a = dual_numbers(f)?;
    let e: SVec = [(1, f.one())].into_iter().collect();
    disk_category(&a, 0, 2, Some(&e))
}

/// Two objects `p`, `q`, each with endomorphisms the dual numbers, no maps
/// between them, and the functor exchanging them.
pub fn swap_pair(f: Field) -> Result<(DGCategory, GradedFunctor)> {
    let mut b = CategoryBuilder::new(f);
    for o in ["p", "q"] {
        b.object(o)?;
        b.identity(o, &format!("1{o}"))?;
        b.basis(o, o, &format!("e{o}"), 0)?;
    }
    let a = b.build()?;
    let swap = GradedFunctor {
        objects: vec![1, 0],
        maps: vec![
            vec![Matrix::identity(f, 2), Matrix::zeros(f, 0, 0)],
            vec![Matrix::zeros(f, 0, 0), Matrix::identity(f, 2)],
        ],
    };
    if let Some(v) = swap.validate(&a, &a) {
        return Err(Error::validation(v.axiom, v.witness));
    }
    Ok((a, swap))
}

/// The names accepted by [`builtin`], with parameterized families listed
/// by representative members.
pub const BUILTINS: &[&str] = &[
    "ground",
    "dual_numbers",
    "exterior1",
    "exterior2",
    "exterior3",
    "truncated_polynomial3",
    "matrix2",
    "acyclic_dga",
    "nonformal_dga",
    "swap_pair",
    "disk_dual_numbers",
];

/// Builtins small enough for full Hochschild computations in the test
/// suites. `disk_dual_numbers` has total hom dimension 200 and is only
/// used through its graded center.
pub const HH_CORPUS: &[&str] = &[
    "ground",
    "dual_numbers",
    "exterior1",
    "exterior2",
    "exterior3",
    "truncated_polynomial3",
    "matrix2",
    "acyclic_dga",
    "nonformal_dga",
    "swap_pair",
];

fn suffix(name: &str, prefix: &str) -> Option<u64> {
    name.strip_prefix(prefix).and_then(|s| s.strip_prefix(['(', '_']).unwrap_or(s).trim_end_matches(')').parse().ok())
}

/// Looks up a builtin by name. `exteriorN` and `truncated_polynomialM`
/// (also written `exterior(N)`) accept any parameter.
pub fn builtin(name: &str, f: Field) -> Result<Input> {
    let input = match name {
        "ground" => Input::plain(name, ground(f)?),
        "dual_numbers" => Input::plain(name, dual_numbers(f)?),
        "matrix2" => Input::plain(name, matrix2(f)?),
        "acyclic_dga" => Input::plain(name, acyclic_dga(f)?),
        "nonformal_dga" => Input {
            note: Some(NONFORMAL_NOTE.to_string()),
            ..Input::plain(name, nonformal_dga(f)?)
        },
        "disk_dual_numbers" => Input::plain(name, disk_dual_numbers(f)?),
        "swap_pair" => {
            let (a, t) = swap_pair(f)?;
            let mut input = Input::plain(name, a);
            input.functors.insert("swap".to_string(), t);
            input
        }
        _ => {
            if let Some(n) = suffix(name, "truncated_polynomial") {
                Input::plain(name, truncated_polynomial(n as usize, f)?)
            } else if let Some(n) = suffix(name, "exterior") {
                Input::plain(name, exterior(n as i64, f)?)
            } else {
                return Err(Error::Parse(format!(
                    "unknown builtin `{name}`; known: {}",
                    BUILTINS.join(", ")
                )));
            }
        }
    };
    Ok(input)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hochschild::Bicomplex;
    use crate::specseq::{degeneration_report, pages, Filtration};

    const Q: Field = Field::Rationals;

    #[test]
    fn every_builtin_validates() {
        for f in [Q, Field::Prime(2), Field::Prime(3)] {
            for name in BUILTINS {
                let input = builtin(name, f).unwrap();
                input.category.validate().into_result().unwrap();
                for t in input.functors.values() {
                    assert!(t.validate(&input.category, &input.category).is_none(), "{name}");
                }
            }
        }
    }

    #[test]
    fn registry_shapes() {
        assert_eq!(builtin("dual_numbers", Q).unwrap().category.hom(0, 0).dim(), 2);
        let e = builtin("exterior3", Q).unwrap().category;
        assert_eq!(e.hom(0, 0).degrees(), &[0, -3]);
        assert_eq!(builtin("exterior(5)", Q).unwrap().category.hom(0, 0).degrees(), &[0, -5]);
        assert_eq!(builtin("truncated_polynomial4", Q).unwrap().category.total_dim(), 4);
        assert_eq!(builtin("nonformal_dga", Q).unwrap().category.total_dim(), 12);
        assert!(builtin("nonformal_dga", Q).unwrap().note.is_some());
        assert!(matches!(builtin("torus", Q), Err(Error::Parse(_))));
        assert!(builtin("exterior0", Q).is_err());
    }

    #[test]
    fn nonformal_homology() {
        let a = nonformal_dga(Q).unwrap();
        let h = a.homology_category().unwrap().category;
        // identities, a, b, c and w
        assert_eq!(h.total_dim(), 8);
        let (x, y) = (a.object_index("0").unwrap(), a.object_index("2").unwrap());
        assert_eq!(h.hom(x, y).dim(), 0);
    }

    #[test]
    fn nonformal_has_nonzero_second_differential() {
        let a = nonformal_dga(Q).unwrap();
        let m = Bimodule::standard(&a);
        let b = Bicomplex::build(&a, &m, 6, true).unwrap();
        let ss = pages(&b, Filtration::Characteristic, (-1, 2), 4).unwrap();
        let report = degeneration_report(&ss);
        let first = report.first.expect("a nonzero differential");
        assert_eq!(first.r, 2);
        // Direct comparison: E_2 is strictly larger than HH in the witness degree.
        let n = first.source.0 + first.source.1;
        let hh = b.hochschild_cohomology(n, n).unwrap();
        let e2: usize = (-10..=10).map(|p| ss.dim(2, p, n)).sum();
        assert!(e2 > hh.dim(n).unwrap());
    }
}
