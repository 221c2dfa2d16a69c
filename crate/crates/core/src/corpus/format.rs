//! The TOML description format. See `docs/format.md` for the grammar.
//!
//! Serialization is canonical: objects in declaration order, basis
//! elements by `(source, target)` then index, products and actions by
//! index triple, scalars in lowest terms (residues in `[0, p)` over `F_p`).
//! Unit products and unit actions are implied and never written.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::Input;
use crate::dgcat::{Bimodule, CategoryBuilder, DGCategory, GradedFunctor, HomSpace, Products};
use crate::error::{Error, Result};
use crate::linalg::{add_entry, Field, Matrix, SVec, Scalar};

/// A linear combination `[[label, coefficient], …]`.
pub type Terms = Vec<(String, String)>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Description {
    pub field: String,
    pub objects: Vec<String>,
    #[serde(default)]
    pub basis: Vec<BasisEntry>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub differential: Vec<DifferentialEntry>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub product: Vec<ProductEntry>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub functor: Vec<FunctorDescription>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bimodule: Option<BimoduleDescription>,
}

fn is_false(b: &bool) -> bool {
    !*b
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BasisEntry {
    pub source: String,
    pub target: String,
    pub label: String,
    pub degree: i64,
    #[serde(default, skip_serializing_if = "is_false")]
    pub identity: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DifferentialEntry {
    pub source: String,
    pub target: String,
    pub label: String,
    pub value: Terms,
}

/// `left · right = value` with `right: x → y`, `left: y → z` and
/// `objects = [x, y, z]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProductEntry {
    pub objects: [String; 3],
    pub left: String,
    pub right: String,
    pub value: Terms,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctorDescription {
    pub name: String,
    /// `[object, image]` for every object.
    pub objects: Vec<(String, String)>,
    /// Images of basis elements; omitted ones map to zero.
    #[serde(default)]
    pub image: Vec<ImageEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ImageEntry {
    pub source: String,
    pub target: String,
    pub label: String,
    pub value: Terms,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BimoduleDescription {
    #[serde(default)]
    pub basis: Vec<BasisEntry>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub differential: Vec<DifferentialEntry>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub left: Vec<ActionEntry>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub right: Vec<ActionEntry>,
}

/// Left: `algebra · module` with `module ∈ M(x, y)`, `algebra ∈ A(y, y')`
/// and `objects = [x, y, y']`. Right: `module · algebra` with
/// `module ∈ M(x, y)`, `algebra ∈ A(x', x)` and `objects = [x', x, y]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionEntry {
    pub objects: [String; 3],
    pub algebra: String,
    pub module: String,
    pub value: Terms,
}

impl Description {
    /// Canonical TOML text.
    pub fn to_text(&self) -> String {
        toml::to_string(self).expect("descriptions serialize")
    }

    pub fn parse(text: &str) -> Result<Description> {
        toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }
}

fn write_terms(f: Field, h: &HomSpace, v: &SVec) -> Terms {
    v.iter().map(|(&k, c)| (h.label(k).to_string(), f.format_scalar(c))).collect()
}

fn basis_entries(objects: &[String], hom: impl Fn(usize, usize) -> HomSpace, identities: Option<&[usize]>) -> Vec<BasisEntry> {
    let n = objects.len();
    let mut out = Vec::new();
    for x in 0..n {
        for y in 0..n {
            let h = hom(x, y);
            for i in 0..h.dim() {
                out.push(BasisEntry {
                    source: objects[x].clone(),
                    target: objects[y].clone(),
                    label: h.label(i).to_string(),
                    degree: h.degree(i),
                    identity: x == y && identities.is_some_and(|ids| ids[x] == i),
                });
            }
        }
    }
    out
}

fn differential_entries(f: Field, objects: &[String], hom: impl Fn(usize, usize) -> HomSpace) -> Vec<DifferentialEntry> {
    let n = objects.len();
    let mut out = Vec::new();
    for x in 0..n {
        for y in 0..n {
            let h = hom(x, y);
            for i in 0..h.dim() {
                if !h.d_of(i).is_empty() {
                    out.push(DifferentialEntry {
                        source: objects[x].clone(),
                        target: objects[y].clone(),
                        label: h.label(i).to_string(),
                        value: write_terms(f, &h, h.d_of(i)),
                    });
                }
            }
        }
    }
    out
}

/// The canonical description of an input.
pub fn describe(input: &Input) -> Description {
    let a = &input.category;
    let f = a.field();
    let objects = a.objects().to_vec();
    let n = objects.len();
    let ids: Vec<usize> = (0..n).map(|x| a.identity(x)).collect();
    let mut product = Vec::new();
    for (&(x, y, z), p) in a.all_products() {
        for (&(g, h), v) in p {
            if (y == z && g == ids[z]) || (x == y && h == ids[x]) {
                continue;
            }
            product.push(ProductEntry {
                objects: [objects[x].clone(), objects[y].clone(), objects[z].clone()],
                left: a.hom(y, z).label(g).to_string(),
                right: a.hom(x, y).label(h).to_string(),
                value: write_terms(f, a.hom(x, z), v),
            });
        }
    }
    let functor = input
        .functors
        .iter()
        .map(|(name, t)| {
            let mut image = Vec::new();
            for x in 0..n {
                for y in 0..n {
                    let h = a.hom(x, y);
                    for i in 0..h.dim() {
                        let e: SVec = [(i, f.one())].into_iter().collect();
                        let v = t.apply(x, y, &e);
                        if !v.is_empty() {
                            image.push(ImageEntry {
                                source: objects[x].clone(),
                                target: objects[y].clone(),
                                label: h.label(i).to_string(),
                                value: write_terms(f, a.hom(t.objects[x], t.objects[y]), &v),
                            });
                        }
                    }
                }
            }
            FunctorDescription {
                name: name.clone(),
                objects: (0..n).map(|x| (objects[x].clone(), objects[t.objects[x]].clone())).collect(),
                image,
            }
        })
        .collect();
    let bimodule = input.bimodule.as_ref().map(|m| describe_bimodule(a, m));
    Description {
        field: f.to_string(),
        basis: basis_entries(&objects, |x, y| a.hom(x, y).clone(), Some(&ids)),
        differential: differential_entries(f, &objects, |x, y| a.hom(x, y).clone()),
        objects,
        product,
        functor,
        bimodule,
    }
}

fn describe_bimodule(a: &DGCategory, m: &Bimodule) -> BimoduleDescription {
    let f = a.field();
    let objects = a.objects().to_vec();
    let n = objects.len();
    let (mut left, mut right) = (Vec::new(), Vec::new());
    for x in 0..n {
        for y in 0..n {
            for p in 0..n {
                for mi in 0..m.value(x, y).dim() {
                    // left: A(y, p) ⊗ M(x, y) → M(x, p)
                    for ai in 0..a.hom(y, p).dim() {
                        if y == p && ai == a.identity(y) {
                            continue;
                        }
                        if let Some(v) = m.left_basis(x, y, p, ai, mi).filter(|v| !v.is_empty()) {
                            left.push(ActionEntry {
                                objects: [objects[x].clone(), objects[y].clone(), objects[p].clone()],
                                algebra: a.hom(y, p).label(ai).to_string(),
                                module: m.value(x, y).label(mi).to_string(),
                                value: write_terms(f, m.value(x, p), v),
                            });
                        }
                    }
                    // right: M(x, y) ⊗ A(p, x) → M(p, y)
                    for ai in 0..a.hom(p, x).dim() {
                        if p == x && ai == a.identity(x) {
                            continue;
                        }
                        if let Some(v) = m.right_basis(p, x, y, mi, ai).filter(|v| !v.is_empty()) {
                            right.push(ActionEntry {
                                objects: [objects[p].clone(), objects[x].clone(), objects[y].clone()],
                                algebra: a.hom(p, x).label(ai).to_string(),
                                module: m.value(x, y).label(mi).to_string(),
                                value: write_terms(f, m.value(p, y), v),
                            });
                        }
                    }
                }
            }
        }
    }
    left.sort_by(|u, v| (&u.objects, &u.algebra, &u.module).cmp(&(&v.objects, &v.algebra, &v.module)));
    right.sort_by(|u, v| (&u.objects, &u.algebra, &u.module).cmp(&(&v.objects, &v.algebra, &v.module)));
    BimoduleDescription {
        basis: basis_entries(&objects, |x, y| m.value(x, y).clone(), None),
        differential: differential_entries(f, &objects, |x, y| m.value(x, y).clone()),
        left,
        right,
    }
}

/// Object and label lookup for one family of hom spaces.
struct Labels<'a> {
    objects: &'a [String],
    spaces: BTreeMap<(usize, usize), Vec<(String, i64)>>,
}

impl<'a> Labels<'a> {
    fn new(objects: &'a [String], entries: &[BasisEntry], what: &str) -> Result<Labels<'a>> {
        let mut spaces: BTreeMap<(usize, usize), Vec<(String, i64)>> = BTreeMap::new();
        let mut l = Labels {
            objects,
            spaces: BTreeMap::new(),
        };
        for b in entries {
            let key = (l.object(&b.source)?, l.object(&b.target)?);
            let slot = spaces.entry(key).or_default();
            if slot.iter().any(|(x, _)| *x == b.label) {
                return Err(Error::validation(
                    "basis labels are unique in each hom space",
                    format!("{what} `{}` in {}→{}", b.label, b.source, b.target),
                ));
            }
            slot.push((b.label.clone(), b.degree));
        }
        l.spaces = spaces;
        Ok(l)
    }

    fn object(&self, name: &str) -> Result<usize> {
        self.objects
            .iter()
            .position(|o| o == name)
            .ok_or_else(|| Error::validation("object exists", format!("unknown object `{name}`")))
    }

    fn dim(&self, x: usize, y: usize) -> usize {
        self.spaces.get(&(x, y)).map_or(0, Vec::len)
    }

    fn index(&self, x: usize, y: usize, label: &str) -> Result<usize> {
        self.spaces
            .get(&(x, y))
            .and_then(|s| s.iter().position(|(l, _)| l == label))
            .ok_or_else(|| {
                Error::validation(
                    "basis element exists",
                    format!("unknown basis element `{label}` in {}→{}", self.objects[x], self.objects[y]),
                )
            })
    }

    fn vector(&self, f: Field, x: usize, y: usize, terms: &Terms) -> Result<SVec> {
        let mut v = SVec::new();
        for (l, c) in terms {
            add_entry(f, &mut v, self.index(x, y, l)?, &f.parse_scalar(c)?);
        }
        Ok(v)
    }
}

fn scalars(f: Field, terms: &Terms) -> Result<Vec<(String, Scalar)>> {
    terms.iter().map(|(l, c)| Ok((l.clone(), f.parse_scalar(c)?))).collect()
}

/// Parses and validates a description. `field` overrides the header.
pub fn ingest_str(name: &str, text: &str, field: Option<Field>) -> Result<Input> {
    let desc = Description::parse(text)?;
    ingest(name, &desc, field)
}

pub fn ingest_path(path: &Path, field: Option<Field>) -> Result<Input> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    let name = path.file_stem().map_or("input".to_string(), |s| s.to_string_lossy().into_owned());
    ingest_str(&name, &text, field)
}

fn ingest(name: &str, desc: &Description, field: Option<Field>) -> Result<Input> {
    let f = match field {
        Some(f) => f,
        None => Field::parse(&desc.field)?,
    };
    let mut b = CategoryBuilder::new(f);
    for o in &desc.objects {
        b.object(o)?;
    }
    let labels = Labels::new(&desc.objects, &desc.basis, "basis element")?;
    for e in &desc.basis {
        if e.identity {
            if e.source != e.target {
                return Err(Error::validation("identities are endomorphisms", e.label.clone()));
            }
            if e.degree != 0 {
                return Err(Error::validation("identity has degree 0", e.label.clone()));
            }
            b.identity(&e.source, &e.label)?;
        } else {
            b.basis(&e.source, &e.target, &e.label, e.degree)?;
        }
    }
    let mut has_identity = vec![0usize; desc.objects.len()];
    for e in desc.basis.iter().filter(|e| e.identity) {
        has_identity[labels.object(&e.source)?] += 1;
    }
    if let Some(x) = has_identity.iter().position(|&c| c > 1) {
        return Err(Error::validation("each object has one identity", desc.objects[x].clone()));
    }
    for d in &desc.differential {
        b.differential(&d.source, &d.target, &d.label, scalars(f, &d.value)?)?;
    }
    for p in &desc.product {
        let [x, y, z] = &p.objects;
        b.product(x, y, z, &p.left, &p.right, scalars(f, &p.value)?)?;
    }
    let a = b.build()?;
    a.validate().into_result()?;

    let mut functors = BTreeMap::new();
    for fd in &desc.functor {
        let t = ingest_functor(f, &a, &labels, fd)?;
        if functors.insert(fd.name.clone(), t).is_some() {
            return Err(Error::validation("functor names are unique", fd.name.clone()));
        }
    }
    let bimodule = desc
        .bimodule
        .as_ref()
        .map(|m| ingest_bimodule(f, &a, &labels, &desc.objects, m))
        .transpose()?;
    Ok(Input {
        name: name.to_string(),
        category: a,
        functors,
        bimodule,
        note: None,
    })
}

fn ingest_functor(f: Field, a: &DGCategory, labels: &Labels, fd: &FunctorDescription) -> Result<GradedFunctor> {
    let n = a.object_count();
    let mut objects = vec![None; n];
    for (x, y) in &fd.objects {
        let (x, y) = (labels.object(x)?, labels.object(y)?);
        if objects[x].replace(y).is_some() {
            return Err(Error::validation("functor object map is a function", format!("{}: {}", fd.name, a.objects()[x])));
        }
    }
    let objects: Vec<usize> = objects
        .into_iter()
        .enumerate()
        .map(|(x, y)| {
            y.ok_or_else(|| Error::validation("functor object map is total", format!("{}: {}", fd.name, a.objects()[x])))
        })
        .collect::<Result<_>>()?;
    let mut maps: Vec<Vec<Matrix>> = (0..n)
        .map(|x| {
            (0..n)
                .map(|y| Matrix::zeros(f, a.hom(objects[x], objects[y]).dim(), a.hom(x, y).dim()))
                .collect()
        })
        .collect();
    let mut seen = std::collections::BTreeSet::new();
    for im in &fd.image {
        let (x, y) = (labels.object(&im.source)?, labels.object(&im.target)?);
        let i = labels.index(x, y, &im.label)?;
        if !seen.insert((x, y, i)) {
            return Err(Error::validation("images are given once", format!("{}: {}", fd.name, im.label)));
        }
        for (k, c) in labels.vector(f, objects[x], objects[y], &im.value)? {
            maps[x][y].set(k, i, c);
        }
    }
    let t = GradedFunctor { objects, maps };
    if let Some(v) = t.validate(a, a) {
        return Err(Error::validation(v.axiom, format!("{}: {}", fd.name, v.witness)));
    }
    Ok(t)
}

fn ingest_bimodule(
    f: Field,
    a: &DGCategory,
    alg: &Labels,
    objects: &[String],
    md: &BimoduleDescription,
) -> Result<Bimodule> {
    let n = objects.len();
    if md.basis.iter().any(|b| b.identity) {
        return Err(Error::validation("bimodule elements are not identities", "identity flag in bimodule"));
    }
    let ml = Labels::new(objects, &md.basis, "bimodule element")?;
    let mut d: BTreeMap<(usize, usize), Vec<SVec>> = BTreeMap::new();
    for e in &md.differential {
        let (x, y) = (ml.object(&e.source)?, ml.object(&e.target)?);
        let i = ml.index(x, y, &e.label)?;
        let v = ml.vector(f, x, y, &e.value)?;
        d.entry((x, y)).or_insert_with(|| vec![SVec::new(); ml.dim(x, y)])[i] = v;
    }
    let mut values = vec![vec![HomSpace::default(); n]; n];
    for (&(x, y), s) in &ml.spaces {
        let dv = d.remove(&(x, y)).unwrap_or_else(|| vec![SVec::new(); s.len()]);
        values[x][y] = HomSpace::new(
            s.iter().map(|(l, _)| l.clone()).collect(),
            s.iter().map(|(_, k)| *k).collect(),
            dv,
        )?;
    }
    let mut left: BTreeMap<(usize, usize, usize), Products> = BTreeMap::new();
    let mut right: BTreeMap<(usize, usize, usize), Products> = BTreeMap::new();
    let given = |e: &ActionEntry| format!("`{}` on `{}` is given twice", e.algebra, e.module);
    for e in &md.left {
        let [x, y, p] = &e.objects;
        let (x, y, p) = (ml.object(x)?, ml.object(y)?, ml.object(p)?);
        let key = (alg.index(y, p, &e.algebra)?, ml.index(x, y, &e.module)?);
        let v = ml.vector(f, x, p, &e.value)?;
        if left.entry((x, y, p)).or_default().insert(key, v).is_some() {
            return Err(Error::validation("actions are given once", given(e)));
        }
    }
    for e in &md.right {
        let [p, x, y] = &e.objects;
        let (p, x, y) = (ml.object(p)?, ml.object(x)?, ml.object(y)?);
        let key = (ml.index(x, y, &e.module)?, alg.index(p, x, &e.algebra)?);
        let v = ml.vector(f, p, y, &e.value)?;
        if right.entry((p, x, y)).or_default().insert(key, v).is_some() {
            return Err(Error::validation("actions are given once", given(e)));
        }
    }
    // Unit actions are implied.
    for x in 0..n {
        for y in 0..n {
            for mi in 0..ml.dim(x, y) {
                let e: SVec = [(mi, f.one())].into_iter().collect();
                left.entry((x, y, y)).or_default().entry((a.identity(y), mi)).or_insert_with(|| e.clone());
                right.entry((x, x, y)).or_default().entry((mi, a.identity(x))).or_insert(e);
            }
        }
    }
    for p in left.values_mut().chain(right.values_mut()) {
        p.retain(|_, v| !v.is_empty());
    }
    let m = Bimodule::from_parts(a, values, left, right)?;
    if let Some(v) = m.validate(a) {
        return Err(Error::validation(v.axiom, v.witness));
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{builtin, BUILTINS};

    const Q: Field = Field::Rationals;

    #[test]
    fn builtins_round_trip() {
        for f in [Q, Field::Prime(3)] {
            for name in BUILTINS {
                let input = builtin(name, f).unwrap();
                let text = describe(&input).to_text();
                let back = ingest_str(name, &text, None).unwrap();
                assert_eq!(back.category, input.category, "{name}");
                assert_eq!(back.functors, input.functors, "{name}");
                assert_eq!(describe(&back).to_text(), text, "{name}");
            }
        }
    }

    #[test]
    fn standard_bimodule_round_trips() {
        let mut input = builtin("nonformal_dga", Q).unwrap();
        input.bimodule = Some(Bimodule::standard(&input.category));
        let text = describe(&input).to_text();
        let back = ingest_str("m", &text, None).unwrap();
        assert_eq!(back.bimodule, input.bimodule);
    }

    const DUAL: &str = r#"
field = "Q"
objects = ["*"]

[[basis]]
source = "*"
target = "*"
label = "1"
degree = 0
identity = true

[[basis]]
source = "*"
target = "*"
label = "e"
degree = DEG
"#;

    fn dual(deg: i64, square: &str) -> String {
        let mut s = DUAL.replace("DEG", &deg.to_string());
        s.push_str(&format!(
            "\n[[product]]\nobjects = [\"*\", \"*\", \"*\"]\nleft = \"e\"\nright = \"e\"\nvalue = {square}\n"
        ));
        s
    }

    #[test]
    fn hand_written_dual_numbers() {
        let a = ingest_str("d", &dual(0, "[]"), None).unwrap().category;
        assert_eq!(a, crate::corpus::dual_numbers(Q).unwrap());
        let a = ingest_str("d", &dual(0, "[]"), Some(Field::Prime(2))).unwrap().category;
        assert_eq!(a.field(), Field::Prime(2));
    }

    #[test]
    fn square_one_in_odd_degree_is_rejected() {
        // In degree 0, e·e = 1 defines the group algebra of Z/2 and is valid.
        assert!(ingest_str("d", &dual(0, r#"[["1", "1"]]"#), None).is_ok());
        let err = ingest_str("d", &dual(-1, r#"[["1", "1"]]"#), None).unwrap_err();
        match err {
            Error::Validation { axiom, witness } => {
                assert_eq!(axiom, "composition has degree 0");
                assert!(witness.contains("e·e"), "{witness}");
            }
            e => panic!("{e}"),
        }
    }

    #[test]
    fn non_associative_table_is_rejected() {
        // y·y = y2 but y·y2 = 0 ≠ y2·y = y (degree 0, basis 1, y, y2).
        let text = r#"
field = "Q"
objects = ["*"]
basis = [
  { source = "*", target = "*", label = "1", degree = 0, identity = true },
  { source = "*", target = "*", label = "y", degree = 0 },
  { source = "*", target = "*", label = "y2", degree = 0 },
]
product = [
  { objects = ["*", "*", "*"], left = "y", right = "y", value = [["y2", "1"]] },
  { objects = ["*", "*", "*"], left = "y2", right = "y", value = [["y", "1"]] },
]
"#;
        match ingest_str("bad", text, None).unwrap_err() {
            Error::Validation { axiom, .. } => assert_eq!(axiom, "associativity"),
            e => panic!("{e}"),
        }
    }

    #[test]
    fn d_squared_nonzero_names_the_degree() {
        let text = r#"
field = "Q"
objects = ["*"]
basis = [
  { source = "*", target = "*", label = "1", degree = 0, identity = true },
  { source = "*", target = "*", label = "p", degree = 2 },
  { source = "*", target = "*", label = "q", degree = 1 },
  { source = "*", target = "*", label = "r", degree = 0 },
]
differential = [
  { source = "*", target = "*", label = "p", value = [["q", "1"]] },
  { source = "*", target = "*", label = "q", value = [["r", "1"]] },
]
product = [
  { objects = ["*", "*", "*"], left = "p", right = "p", value = [] },
]
"#;
        match ingest_str("bad", text, None).unwrap_err() {
            Error::Validation { axiom, witness } => {
                assert_eq!(axiom, "d squared is zero");
                assert!(witness.contains("degree 2"), "{witness}");
            }
            e => panic!("{e}"),
        }
    }

    #[test]
    fn referential_errors() {
        let unknown = dual(0, "[]").replace("left = \"e\"", "left = \"f\"");
        assert!(matches!(ingest_str("x", &unknown, None), Err(Error::Validation { .. })));
        let dup = format!("{}\n[[basis]]\nsource = \"*\"\ntarget = \"*\"\nlabel = \"e\"\ndegree = 0\n", DUAL.replace("DEG", "0"));
        assert!(matches!(ingest_str("x", &dup, None), Err(Error::Validation { .. })));
        assert!(matches!(ingest_str("x", "field = \"Q\"\nobjects = [", None), Err(Error::Parse(_))));
        assert!(matches!(ingest_str("x", "field = \"F4\"\nobjects = []", None), Err(Error::Parse(_))));
        let bad_scalar = dual(0, r#"[["1", "1/0"]]"#);
        assert!(matches!(ingest_str("x", &bad_scalar, None), Err(Error::Parse(_))));
    }

    #[test]
    fn functor_from_file() {
        let input = builtin("swap_pair", Q).unwrap();
        let mut desc = describe(&input);
        desc.functor[0].objects[1].1 = "q".into();
        assert!(matches!(
            ingest_str("x", &desc.to_text(), None),
            Err(Error::Validation { .. })
        ));
    }
}
