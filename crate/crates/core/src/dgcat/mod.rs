//! Finite dg categories given by structure constants on named bases.
//!
//! A morphism space `A(x, y)` holds maps `x → y`. Composition is
//! `A(y, z) ⊗ A(x, y) → A(x, z)`, `g ⊗ f ↦ gf`. Each identity is one of the
//! basis elements of its endomorphism space.

mod bimodule;
mod complexes;
mod functor;

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::graded::{homology_label, DGVectorSpace, GradedVectorSpace};
use crate::linalg::{add_entry, axpy, dense, sparse, Field, Matrix, SVec, Scalar, Subquotient};

pub use bimodule::{Bimodule, HomologyBimodule};
pub use complexes::{complex_category, complex_is_valid, FreeComplex};
pub use functor::{graded_from_automorphism, AutomorphismGrading, GradedFunctor};

/// One morphism space, flattened: basis element `i` has a label, a degree
/// and a differential `d(e_i)` expressed in the same basis.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct HomSpace {
    labels: Vec<String>,
    degrees: Vec<i64>,
    d: Vec<SVec>,
}

impl HomSpace {
    pub fn new(labels: Vec<String>, degrees: Vec<i64>, d: Vec<SVec>) -> Result<HomSpace> {
        if labels.len() != degrees.len() || labels.len() != d.len() {
            return Err(Error::Inconsistent("hom space arrays differ in length".into()));
        }
        let mut seen = BTreeSet::new();
        for l in &labels {
            if !seen.insert(l) {
                return Err(Error::validation(
                    "basis label uniqueness",
                    format!("label `{l}` appears twice in one morphism space"),
                ));
            }
        }
        for (i, di) in d.iter().enumerate() {
            for &j in di.keys() {
                if j >= labels.len() || degrees[j] != degrees[i] - 1 {
                    return Err(Error::validation(
                        "differential has degree -1",
                        format!("d({}) has a term outside degree {}", labels[i], degrees[i] - 1),
                    ));
                }
            }
        }
        Ok(HomSpace { labels, degrees, d })
    }

    pub fn with_zero_differential(labels: Vec<String>, degrees: Vec<i64>) -> HomSpace {
        let d = vec![SVec::new(); labels.len()];
        HomSpace::new(labels, degrees, d).expect("zero differential is well formed")
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn degree(&self, i: usize) -> i64 {
        self.degrees[i]
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    pub fn d_of(&self, i: usize) -> &SVec {
        &self.d[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn apply_d(&self, f: Field, v: &SVec) -> SVec {
        let mut out = SVec::new();
        for (&i, c) in v {
            axpy(f, &mut out, c, &self.d[i]);
        }
        out
    }

    pub fn has_zero_differential(&self) -> bool {
        self.d.iter().all(SVec::is_empty)
    }

    pub fn degree_support(&self) -> BTreeSet<i64> {
        self.degrees.iter().copied().collect()
    }

    pub fn indices_in_degree(&self, n: i64) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.degrees[i] == n).collect()
    }

    /// The same space grouped by degree, keeping the flat order inside each degree.
    pub fn to_dg(&self, f: Field) -> DGVectorSpace {
        let mut basis = BTreeMap::new();
        let mut d = BTreeMap::new();
        for n in self.degree_support() {
            let idx = self.indices_in_degree(n);
            basis.insert(n, idx.iter().map(|&i| self.labels[i].clone()).collect::<Vec<_>>());
            let below = self.indices_in_degree(n - 1);
            if below.is_empty() {
                continue;
            }
            let mut m = Matrix::zeros(f, below.len(), idx.len());
            for (c, &i) in idx.iter().enumerate() {
                for (&j, x) in &self.d[i] {
                    let r = below.iter().position(|&b| b == j).expect("degree checked");
                    m.set(r, c, x.clone());
                }
            }
            d.insert(n, m);
        }
        let space = GradedVectorSpace::new(basis).expect("labels unique");
        DGVectorSpace::new(f, space, d).expect("shapes consistent")
    }

    /// Matrix of `d` restricted to degree `n`, as a map into the whole flat space.
    fn d_block(&self, f: Field, n: i64) -> Matrix {
        let idx = self.indices_in_degree(n);
        let cols: Vec<Vec<Scalar>> = idx.iter().map(|&i| dense(&self.d[i], self.dim())).collect();
        Matrix::from_columns(f, self.dim(), &cols)
    }

    fn embed(&self, f: Field, idx: &[usize], m: &Matrix) -> Matrix {
        let mut out = Matrix::zeros(f, self.dim(), m.cols());
        for (r, &i) in idx.iter().enumerate() {
            for c in 0..m.cols() {
                out.set(i, c, m.get(r, c).clone());
            }
        }
        out
    }

    /// Per degree, the cycles (and boundaries when asked) as subspaces of
    /// the flat space. A `preferred` cycle is placed first among the representatives.
    fn subquotients(
        &self,
        f: Field,
        with_boundaries: bool,
        preferred: Option<usize>,
    ) -> Result<BTreeMap<i64, Subquotient>> {
        let mut out = BTreeMap::new();
        for n in self.degree_support() {
            let idx = self.indices_in_degree(n);
            let below = self.indices_in_degree(n - 1);
            let local = if below.is_empty() {
                Matrix::identity(f, idx.len())
            } else {
                self.d_block(f, n).select_rows(&below).kernel_basis()
            };
            let mut z = self.embed(f, &idx, &local);
            if let Some(p) = preferred.filter(|&p| self.degrees[p] == n) {
                let mut e = vec![f.zero(); self.dim()];
                e[p] = f.one();
                z = Matrix::from_columns(f, self.dim(), &[e]).hstack(&z);
            }
            let b = if with_boundaries {
                self.d_block(f, n + 1)
            } else {
                Matrix::zeros(f, self.dim(), 0)
            };
            out.insert(n, Subquotient::new(&z, &b)?);
        }
        Ok(out)
    }
}

/// Products of basis elements `(g, f) ↦ gf` for one object triple.
pub type Products = BTreeMap<(usize, usize), SVec>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DGCategory {
    field: Field,
    objects: Vec<String>,
    homs: Vec<Vec<HomSpace>>,
    comp: BTreeMap<(usize, usize, usize), Products>,
    identities: Vec<usize>,
}

impl DGCategory {
    /// `homs[x][y]` is `A(x, y)`; `comp[(x, y, z)]` composes `A(y, z) ⊗ A(x, y)`.
    /// Unit products are filled in; degrees of products are checked here,
    /// the remaining axioms by [`DGCategory::validate`].
    pub fn from_parts(
        field: Field,
        objects: Vec<String>,
        homs: Vec<Vec<HomSpace>>,
        mut comp: BTreeMap<(usize, usize, usize), Products>,
        identities: Vec<usize>,
    ) -> Result<DGCategory> {
        let n = objects.len();
        if homs.len() != n || homs.iter().any(|r| r.len() != n) || identities.len() != n {
            return Err(Error::Inconsistent("object count mismatch".into()));
        }
        for x in 0..n {
            let id = identities[x];
            if id >= homs[x][x].dim() || homs[x][x].degree(id) != 0 {
                return Err(Error::validation(
                    "identity has degree 0",
                    format!("identity of `{}`", objects[x]),
                ));
            }
        }
        for (&(x, y, z), prods) in &comp {
            for (&(g, fi), v) in prods {
                if g >= homs[y][z].dim() || fi >= homs[x][y].dim() {
                    return Err(Error::Inconsistent("product index out of range".into()));
                }
                let deg = homs[y][z].degree(g) + homs[x][y].degree(fi);
                if let Some((&h, _)) = v.iter().find(|(&h, _)| homs[x][z].degree(h) != deg) {
                    return Err(Error::validation(
                        "composition has degree 0",
                        format!(
                            "{}·{} has a term {} of degree {}, expected {}",
                            homs[y][z].label(g),
                            homs[x][y].label(fi),
                            homs[x][z].label(h),
                            homs[x][z].degree(h),
                            deg
                        ),
                    ));
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                for i in 0..homs[x][y].dim() {
                    let e: SVec = [(i, field.one())].into_iter().collect();
                    comp.entry((x, y, y))
                        .or_default()
                        .entry((identities[y], i))
                        .or_insert_with(|| e.clone());
                    comp.entry((x, x, y))
                        .or_default()
                        .entry((i, identities[x]))
                        .or_insert(e);
                }
            }
        }
        comp.retain(|_, p| {
            p.retain(|_, v| !v.is_empty());
            !p.is_empty()
        });
        Ok(DGCategory {
            field,
            objects,
            homs,
            comp,
            identities,
        })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn object_index(&self, name: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == name)
    }

    pub fn hom(&self, x: usize, y: usize) -> &HomSpace {
        &self.homs[x][y]
    }

    pub fn identity(&self, x: usize) -> usize {
        self.identities[x]
    }

    pub fn products(&self, x: usize, y: usize, z: usize) -> Option<&Products> {
        self.comp.get(&(x, y, z))
    }

    pub fn all_products(&self) -> &BTreeMap<(usize, usize, usize), Products> {
        &self.comp
    }

    pub fn is_graded(&self) -> bool {
        self.homs.iter().flatten().all(HomSpace::has_zero_differential)
    }

    /// Every morphism sits in degree 0 and the differential vanishes.
    pub fn is_degree_zero(&self) -> bool {
        self.is_graded() && self.homs.iter().flatten().all(|h| h.degrees.iter().all(|&d| d == 0))
    }

    /// `gf` for basis elements `g ∈ A(y, z)`, `f ∈ A(x, y)`; `None` means zero.
    pub fn compose_basis(&self, x: usize, y: usize, z: usize, g: usize, f: usize) -> Option<&SVec> {
        self.comp.get(&(x, y, z)).and_then(|p| p.get(&(g, f)))
    }

    pub fn compose(&self, x: usize, y: usize, z: usize, g: &SVec, f: &SVec) -> SVec {
        let fld = self.field;
        let mut out = SVec::new();
        let Some(prods) = self.comp.get(&(x, y, z)) else {
            return out;
        };
        for (&gi, gc) in g {
            for (&fi, fc) in f {
                if let Some(v) = prods.get(&(gi, fi)) {
                    axpy(fld, &mut out, &fld.mul(gc, fc), v);
                }
            }
        }
        out
    }

    pub fn d(&self, x: usize, y: usize, v: &SVec) -> SVec {
        self.homs[x][y].apply_d(self.field, v)
    }

    /// Total dimension of all morphism spaces.
    pub fn total_dim(&self) -> usize {
        self.homs.iter().flatten().map(HomSpace::dim).sum()
    }

    /// Smallest and largest degree of a basis morphism, optionally leaving out identities.
    pub fn degree_range(&self, skip_identities: bool) -> Option<(i64, i64)> {
        let mut r: Option<(i64, i64)> = None;
        for x in 0..self.object_count() {
            for y in 0..self.object_count() {
                let h = &self.homs[x][y];
                for i in 0..h.dim() {
                    if skip_identities && x == y && i == self.identities[x] {
                        continue;
                    }
                    let d = h.degree(i);
                    r = Some(r.map_or((d, d), |(a, b)| (a.min(d), b.max(d))));
                }
            }
        }
        r
    }

    fn basis_name(&self, x: usize, y: usize, i: usize) -> String {
        format!("{}:{}→{}", self.homs[x][y].label(i), self.objects[x], self.objects[y])
    }

    /// Checks d² = 0, unitality, associativity and the Leibniz rule on
    /// basis elements, in that order, stopping at the first failure.
    pub fn validate(&self) -> ValidationReport {
        ValidationReport {
            violation: self.first_violation(),
        }
    }

    fn first_violation(&self) -> Option<Violation> {
        let f = self.field;
        let n = self.object_count();
        let e = |i: usize| -> SVec { [(i, f.one())].into_iter().collect() };
        for x in 0..n {
            for y in 0..n {
                let h = &self.homs[x][y];
                for i in 0..h.dim() {
                    if !h.apply_d(f, h.d_of(i)).is_empty() {
                        return Some(Violation::new(
                            "d squared is zero",
                            format!("{} in degree {}", self.basis_name(x, y, i), h.degree(i)),
                        ));
                    }
                }
            }
            if !self.homs[x][x].d_of(self.identities[x]).is_empty() {
                return Some(Violation::new(
                    "identity is a cycle",
                    self.basis_name(x, x, self.identities[x]),
                ));
            }
        }
        for x in 0..n {
            for y in 0..n {
                for i in 0..self.homs[x][y].dim() {
                    let left = self.compose(x, y, y, &e(self.identities[y]), &e(i));
                    let right = self.compose(x, x, y, &e(i), &e(self.identities[x]));
                    if left != e(i) || right != e(i) {
                        return Some(Violation::new("unit law", self.basis_name(x, y, i)));
                    }
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    for w in 0..n {
                        if let Some(v) = self.associativity_witness(x, y, z, w) {
                            return Some(v);
                        }
                    }
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    for g in 0..self.homs[y][z].dim() {
                        for fi in 0..self.homs[x][y].dim() {
                            let gf = self.compose(x, y, z, &e(g), &e(fi));
                            let lhs = self.d(x, z, &gf);
                            let mut rhs = self.compose(x, y, z, self.homs[y][z].d_of(g), &e(fi));
                            let sign = f.sign(self.homs[y][z].degree(g));
                            let t = self.compose(x, y, z, &e(g), self.homs[x][y].d_of(fi));
                            axpy(f, &mut rhs, &sign, &t);
                            if lhs != rhs {
                                return Some(Violation::new(
                                    "Leibniz rule",
                                    format!(
                                        "d({} · {})",
                                        self.basis_name(y, z, g),
                                        self.basis_name(x, y, fi)
                                    ),
                                ));
                            }
                        }
                    }
                }
            }
        }
        None
    }

    fn associativity_witness(&self, x: usize, y: usize, z: usize, w: usize) -> Option<Violation> {
        let f = self.field;
        let e = |i: usize| -> SVec { [(i, f.one())].into_iter().collect() };
        for h in 0..self.homs[z][w].dim() {
            for g in 0..self.homs[y][z].dim() {
                let hg = self.compose(y, z, w, &e(h), &e(g));
                for fi in 0..self.homs[x][y].dim() {
                    let gf = self.compose(x, y, z, &e(g), &e(fi));
                    let a = self.compose(x, y, w, &hg, &e(fi));
                    let b = self.compose(x, z, w, &e(h), &gf);
                    if a != b {
                        return Some(Violation::new(
                            "associativity",
                            format!(
                                "({} · {}) · {}",
                                self.basis_name(z, w, h),
                                self.basis_name(y, z, g),
                                self.basis_name(x, y, fi)
                            ),
                        ));
                    }
                }
            }
        }
        None
    }

    /// `H(A)` with composition induced on representatives.
    pub fn homology_category(&self) -> Result<InducedCategory> {
        self.induced(true)
    }

    /// The graded subcategory of cycles `Z(A)`, with zero differential.
    pub fn cycle_category(&self) -> Result<InducedCategory> {
        self.induced(false)
    }

    fn induced(&self, homology: bool) -> Result<InducedCategory> {
        let f = self.field;
        let n = self.object_count();
        let mut parts = vec![vec![BTreeMap::new(); n]; n];
        let mut reps = vec![vec![Vec::new(); n]; n];
        let mut homs = vec![vec![HomSpace::default(); n]; n];
        let mut identities = vec![0; n];
        for x in 0..n {
            for y in 0..n {
                let preferred = (x == y).then_some(self.identities[x]);
                let ind = InducedHom::new(f, &self.homs[x][y], homology, preferred)?;
                if x == y {
                    identities[x] = ind.preferred.ok_or_else(|| {
                        Error::Unsupported(format!(
                            "object `{}` has a null-homotopic identity",
                            self.objects[x]
                        ))
                    })?;
                }
                homs[x][y] = ind.space;
                reps[x][y] = ind.reps;
                parts[x][y] = ind.parts;
            }
        }
        let mut ic = InducedCategory {
            category: DGCategory {
                field: f,
                objects: self.objects.clone(),
                homs,
                comp: BTreeMap::new(),
                identities,
            },
            reps,
            source_degrees: self
                .homs
                .iter()
                .map(|r| r.iter().map(|h| h.degrees.clone()).collect())
                .collect(),
            parts,
        };
        let mut comp = BTreeMap::new();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let mut prods = Products::new();
                    for (gi, g) in ic.reps[y][z].iter().enumerate() {
                        for (fi, fv) in ic.reps[x][y].iter().enumerate() {
                            let gf = self.compose(x, y, z, g, fv);
                            if gf.is_empty() {
                                continue;
                            }
                            let class = ic.class_of(x, z, &gf).ok_or_else(|| {
                                Error::Inconsistent("product of cycles is not a cycle".into())
                            })?;
                            if !class.is_empty() {
                                prods.insert((gi, fi), class);
                            }
                        }
                    }
                    if !prods.is_empty() {
                        comp.insert((x, y, z), prods);
                    }
                }
            }
        }
        ic.category = DGCategory::from_parts(
            f,
            self.objects.clone(),
            ic.category.homs,
            comp,
            ic.category.identities,
        )?;
        Ok(ic)
    }
}

/// Cycles or homology of one morphism space, with chosen lifts.
pub(crate) struct InducedHom {
    pub space: HomSpace,
    pub reps: Vec<SVec>,
    pub parts: BTreeMap<i64, Subquotient>,
    /// Position of the preferred cycle among the new basis, if it survived.
    pub preferred: Option<usize>,
}

impl InducedHom {
    pub fn new(f: Field, h: &HomSpace, homology: bool, preferred: Option<usize>) -> Result<InducedHom> {
        let parts = h.subquotients(f, homology, preferred)?;
        let target: Option<SVec> = preferred.map(|p| [(p, f.one())].into_iter().collect());
        let mut labels = Vec::new();
        let mut degrees = Vec::new();
        let mut reps = Vec::new();
        let mut found = None;
        for (&deg, s) in &parts {
            for k in 0..s.dim() {
                let v = s.representative(k);
                let sv = sparse(&v);
                if target.as_ref() == Some(&sv) {
                    found = Some(labels.len());
                }
                let name = homology_label(h.labels(), &v, f);
                labels.push(if homology { name } else { strip_brackets(name) });
                degrees.push(deg);
                reps.push(sv);
            }
        }
        Ok(InducedHom {
            space: HomSpace::with_zero_differential(dedupe(labels), degrees),
            reps,
            parts,
            preferred: found,
        })
    }
}

fn strip_brackets(s: String) -> String {
    s.strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .map(str::to_string)
        .unwrap_or(s)
}

fn dedupe(labels: Vec<String>) -> Vec<String> {
    let mut seen = BTreeMap::<String, usize>::new();
    labels
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
        .collect()
}

/// A category built from chosen representatives: the homology category or
/// the cycle category. `reps[x][y][k]` lifts basis element `k` to `A(x, y)`.
#[derive(Clone, Debug)]
pub struct InducedCategory {
    pub category: DGCategory,
    pub reps: Vec<Vec<Vec<SVec>>>,
    source_degrees: Vec<Vec<Vec<i64>>>,
    parts: Vec<Vec<BTreeMap<i64, Subquotient>>>,
}

impl InducedCategory {
    /// Coordinates of the class of a cycle `v ∈ A(x, y)`; `None` if `v` is not a cycle.
    pub fn class_of(&self, x: usize, y: usize, v: &SVec) -> Option<SVec> {
        class_in(self.category.field, &self.parts[x][y], &self.source_degrees[x][y], v)
    }
}

/// Splits `v` by degree and reads off its class in each per-degree subquotient;
/// the result is indexed by the concatenated representatives.
pub(crate) fn class_in(
    f: Field,
    parts: &BTreeMap<i64, Subquotient>,
    degrees: &[i64],
    v: &SVec,
) -> Option<SVec> {
    let dim = degrees.len();
    let mut by_degree: BTreeMap<i64, SVec> = BTreeMap::new();
    for (&i, c) in v {
        add_entry(f, by_degree.entry(degrees[i]).or_default(), i, c);
    }
    let mut out = SVec::new();
    let mut offset = 0;
    for (deg, sq) in parts {
        if let Some(piece) = by_degree.remove(deg) {
            let coords = sq.class_of(&dense(&piece, dim))?;
            for (k, c) in coords.iter().enumerate() {
                add_entry(f, &mut out, offset + k, c);
            }
        }
        offset += sq.dim();
    }
    if by_degree.values().any(|p| !p.is_empty()) {
        return None;
    }
    Some(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub axiom: String,
    pub witness: String,
}

impl Violation {
    fn new(axiom: &str, witness: String) -> Violation {
        Violation {
            axiom: axiom.to_string(),
            witness,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub violation: Option<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violation.is_none()
    }

    pub fn into_result(self) -> Result<()> {
        match self.violation {
            None => Ok(()),
            Some(v) => Err(Error::validation(v.axiom, v.witness)),
        }
    }
}

/// Assembles a category from labels. Unit products are implied.
#[derive(Clone, Debug)]
pub struct CategoryBuilder {
    field: Field,
    objects: Vec<String>,
    labels: BTreeMap<(usize, usize), Vec<(String, i64)>>,
    identities: BTreeMap<usize, String>,
    differentials: Vec<(usize, usize, String, Vec<(String, Scalar)>)>,
    products: Vec<(usize, usize, usize, String, String, Vec<(String, Scalar)>)>,
}

impl CategoryBuilder {
    pub fn new(field: Field) -> CategoryBuilder {
        CategoryBuilder {
            field,
            objects: Vec::new(),
            labels: BTreeMap::new(),
            identities: BTreeMap::new(),
            differentials: Vec::new(),
            products: Vec::new(),
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn object(&mut self, name: &str) -> Result<usize> {
        if self.objects.iter().any(|o| o == name) {
            return Err(Error::validation("object names are unique", name.to_string()));
        }
        self.objects.push(name.to_string());
        Ok(self.objects.len() - 1)
    }

    fn obj(&self, name: &str) -> Result<usize> {
        self.objects
            .iter()
            .position(|o| o == name)
            .ok_or_else(|| Error::validation("object exists", format!("unknown object `{name}`")))
    }

    pub fn basis(&mut self, x: &str, y: &str, label: &str, degree: i64) -> Result<()> {
        let k = (self.obj(x)?, self.obj(y)?);
        self.labels.entry(k).or_default().push((label.to_string(), degree));
        Ok(())
    }

    pub fn identity(&mut self, x: &str, label: &str) -> Result<()> {
        let i = self.obj(x)?;
        self.basis(x, x, label, 0)?;
        self.identities.insert(i, label.to_string());
        Ok(())
    }

    pub fn differential(&mut self, x: &str, y: &str, label: &str, value: Vec<(String, Scalar)>) -> Result<()> {
        let (x, y) = (self.obj(x)?, self.obj(y)?);
        self.differentials.push((x, y, label.to_string(), value));
        Ok(())
    }

    /// `g · f = value` with `f: x → y`, `g: y → z`.
    pub fn product(
        &mut self,
        x: &str,
        y: &str,
        z: &str,
        g: &str,
        f: &str,
        value: Vec<(String, Scalar)>,
    ) -> Result<()> {
        let (x, y, z) = (self.obj(x)?, self.obj(y)?, self.obj(z)?);
        self.products.push((x, y, z, g.to_string(), f.to_string(), value));
        Ok(())
    }

    pub fn build(self) -> Result<DGCategory> {
        let f = self.field;
        let n = self.objects.len();
        let unknown = |label: &str, x: usize, y: usize| {
            Error::validation(
                "basis element exists",
                format!("unknown basis element `{label}` in {}→{}", self.objects[x], self.objects[y]),
            )
        };
        let index = |x: usize, y: usize, label: &str| -> Result<usize> {
            self.labels
                .get(&(x, y))
                .and_then(|ls| ls.iter().position(|(l, _)| l == label))
                .ok_or_else(|| unknown(label, x, y))
        };
        let vector = |x: usize, y: usize, terms: &[(String, Scalar)]| -> Result<SVec> {
            let mut v = SVec::new();
            for (l, c) in terms {
                add_entry(f, &mut v, index(x, y, l)?, &f.reduce(c.clone()));
            }
            Ok(v)
        };
        let mut d: BTreeMap<(usize, usize), Vec<SVec>> = BTreeMap::new();
        for (x, y, label, value) in &self.differentials {
            let i = index(*x, *y, label)?;
            let v = vector(*x, *y, value)?;
            let slot = d
                .entry((*x, *y))
                .or_insert_with(|| vec![SVec::new(); self.labels[&(*x, *y)].len()]);
            slot[i] = v;
        }
        let mut homs = vec![vec![HomSpace::default(); n]; n];
        for (&(x, y), ls) in &self.labels {
            let labels = ls.iter().map(|(l, _)| l.clone()).collect();
            let degrees = ls.iter().map(|(_, d)| *d).collect();
            let dv = d.remove(&(x, y)).unwrap_or_else(|| vec![SVec::new(); ls.len()]);
            homs[x][y] = HomSpace::new(labels, degrees, dv)?;
        }
        let mut comp: BTreeMap<(usize, usize, usize), Products> = BTreeMap::new();
        for (x, y, z, g, fl, value) in &self.products {
            let gi = index(*y, *z, g)?;
            let fi = index(*x, *y, fl)?;
            let v = vector(*x, *z, value)?;
            if comp.entry((*x, *y, *z)).or_default().insert((gi, fi), v).is_some() {
                return Err(Error::validation(
                    "products are given once",
                    format!("`{g} · {fl}` is given twice"),
                ));
            }
        }
        let mut identities = Vec::with_capacity(n);
        for x in 0..n {
            let label = self.identities.get(&x).ok_or_else(|| {
                Error::validation("every object has an identity", self.objects[x].clone())
            })?;
            identities.push(index(x, x, label)?);
        }
        for (&(x, y, z), p) in &comp {
            for &(g, fi) in p.keys() {
                let is_unit = (y == z && g == identities[z]) || (x == y && fi == identities[x]);
                if is_unit {
                    let expected: SVec = [(if y == z && g == identities[z] { fi } else { g }, f.one())]
                        .into_iter()
                        .collect();
                    if p[&(g, fi)] != expected {
                        return Err(Error::validation(
                            "unit law",
                            format!(
                                "{} · {} contradicts the identity",
                                homs[y][z].label(g),
                                homs[x][y].label(fi)
                            ),
                        ));
                    }
                }
            }
        }
        DGCategory::from_parts(f, self.objects, homs, comp, identities)
    }
}
