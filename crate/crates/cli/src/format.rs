//! The fixture file: a JSON document describing one algebra (plus optional
//! companions) and the scenario to run on it.
//!
//! Rationals are strings `"p/q"`, matrices are row-major arrays of rows,
//! basis vectors are referred to by name (or `"degree:index"`).

use std::collections::BTreeMap;

use dgla_core::bilinear::Bilinear;
use dgla_core::bv::{Bicomplex, DbvAlgebra};
use dgla_core::derived::{pi_example_build, PiData, PiExample};
use dgla_core::dgla::Dgla;
use dgla_core::linalg::{format_scalar, parse_scalar, Matrix, Scalar};
use dgla_core::{BasisRef, Element, GradedMap, GradedSpace, Subspace};
use serde::{Deserialize, Serialize};

/// Input problem, reported with exit code 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputError(pub String);

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<dgla_core::Error> for InputError {
    fn from(e: dgla_core::Error) -> Self {
        InputError(e.to_string())
    }
}

pub type Input<T> = Result<T, InputError>;

fn bad<T>(msg: impl Into<String>) -> Input<T> {
    Err(InputError(msg.into()))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceDecl {
    /// Lowest degree of the window.
    pub min: i32,
    /// Dimension per degree, starting at `min`; basis vectors get the
    /// names `e{degree}_{index}`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dims: Option<Vec<usize>>,
    /// Basis names per degree, starting at `min`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<Vec<String>>>,
}

/// Per source degree, the matrix of the block (rows index the target).
pub type Blocks = BTreeMap<String, Vec<Vec<String>>>;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableDecl {
    /// Add the graded-skew (bracket) or graded-symmetric (product) partner
    /// of every entry.
    #[serde(default)]
    pub complete: bool,
    /// `[a, b, c, "p/q"]`: the coefficient of `c` in `μ(a, b)`.
    pub entries: Vec<[String; 4]>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDecl {
    pub space: SpaceDecl,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub differential: Blocks,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bracket: Option<TableDecl>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapDecl {
    /// Algebra names; `"main"` is the top-level algebra.
    pub source: String,
    pub target: String,
    pub degree: i32,
    #[serde(default)]
    pub blocks: Blocks,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OperatorDecl {
    pub degree: i32,
    #[serde(default)]
    pub blocks: Blocks,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubspaceDecl {
    pub ambient: String,
    /// Spanning vectors as `name -> coefficient` maps, each homogeneous.
    pub span: Vec<BTreeMap<String, String>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexDecl {
    pub space: SpaceDecl,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub differential: Blocks,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PiDecl {
    pub v: ComplexDecl,
    pub w: ComplexDecl,
    /// Degree 1 map `W -> V`.
    pub pi: Blocks,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    /// Command line after the program name, without the file.
    pub args: Vec<String>,
    /// Expected exit code: 0 for positive fixtures, 1 for negative ones.
    pub expect_exit: i32,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FixtureFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    /// The main algebra's space; empty when the file only carries a
    /// π-example.
    #[serde(default = "SpaceDecl::empty", skip_serializing_if = "SpaceDecl::is_empty")]
    pub space: SpaceDecl,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub differential: Blocks,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bracket: Option<TableDecl>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub product: Option<TableDecl>,
    /// Name of the unit of the product.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<OperatorDecl>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<i32>,
    /// Further algebras referenced by maps and subspaces.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub algebras: BTreeMap<String, AlgebraDecl>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub maps: BTreeMap<String, MapDecl>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub subspaces: BTreeMap<String, SubspaceDecl>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pi_example: Option<PiDecl>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scenario: Option<Scenario>,
}

/// Parses a fixture; errors carry line and column.
pub fn parse(text: &str) -> Input<FixtureFile> {
    serde_json::from_str(text).map_err(|e| InputError(format!("parse error at line {}, column {}: {e}", e.line(), e.column())))
}

fn scalar(s: &str) -> Input<Scalar> {
    parse_scalar(s).map_or_else(|| bad(format!("not a rational: {s:?}")), Ok)
}

impl SpaceDecl {
    pub fn empty() -> Self {
        SpaceDecl { min: 0, dims: Some(Vec::new()), names: None }
    }

    pub fn is_empty(&self) -> bool {
        *self == SpaceDecl::empty()
    }

    pub fn build(&self) -> Input<GradedSpace> {
        let names = match (&self.dims, &self.names) {
            (Some(dims), None) => return Ok(GradedSpace::new(self.min, dims.clone())),
            (None, Some(names)) => names,
            _ => return bad("a space needs exactly one of \"dims\" and \"names\""),
        };
        let mut seen = std::collections::BTreeSet::new();
        for n in names.iter().flatten() {
            if n.contains(':') || !seen.insert(n) {
                return bad(format!("basis name {n:?} is repeated or contains ':'"));
            }
        }
        Ok(GradedSpace::with_names(self.min, names.clone()))
    }

    /// Names are made unique (direct sums may repeat them).
    pub fn from_space(s: &GradedSpace) -> Self {
        let Some((lo, hi)) = s.support_bounds() else {
            return SpaceDecl::empty();
        };
        let mut seen = std::collections::BTreeSet::new();
        let names = (lo..=hi)
            .map(|d| {
                s.names_in(d)
                    .iter()
                    .map(|n| {
                        let base = n.replace(':', "_");
                        let mut name = base.clone();
                        let mut k = 1;
                        while !seen.insert(name.clone()) {
                            k += 1;
                            name = format!("{base}_{k}");
                        }
                        name
                    })
                    .collect()
            })
            .collect();
        SpaceDecl { min: lo, dims: None, names: Some(names) }
    }

    /// The name a built space gives to `b`.
    pub fn name_of(&self, b: BasisRef) -> String {
        match &self.names {
            Some(names) => names[(b.degree - self.min) as usize][b.index].clone(),
            None => format!("e{}_{}", b.degree, b.index),
        }
    }
}

pub fn basis_ref(space: &GradedSpace, name: &str) -> Input<BasisRef> {
    if let Some((d, i)) = name.split_once(':') {
        if let (Ok(degree), Ok(index)) = (d.parse::<i32>(), i.parse::<usize>()) {
            if index < space.dim(degree) {
                return Ok(BasisRef { degree, index });
            }
        }
    }
    space.find_name(name).map_or_else(|| bad(format!("unknown basis vector {name:?}")), Ok)
}

pub fn build_map(source: &GradedSpace, target: &GradedSpace, degree: i32, blocks: &Blocks) -> Input<GradedMap> {
    let mut parsed: BTreeMap<i32, Matrix> = BTreeMap::new();
    for (k, rows) in blocks {
        let d: i32 = k.parse().map_err(|_| InputError(format!("block key {k:?} is not a degree")))?;
        let (r, c) = (target.dim(d + degree), source.dim(d));
        if rows.len() != r || rows.iter().any(|row| row.len() != c) {
            return bad(format!("block at degree {d} must be {r}x{c}"));
        }
        let entries: Vec<Vec<Scalar>> = rows.iter().map(|row| row.iter().map(|x| scalar(x)).collect()).collect::<Input<_>>()?;
        if r > 0 && c > 0 {
            parsed.insert(d, Matrix::from_rows(r, c, entries).expect("checked shape"));
        }
    }
    Ok(GradedMap::new(source.clone(), target.clone(), degree, parsed)?)
}

pub fn blocks_of(f: &GradedMap) -> Blocks {
    f.blocks()
        .iter()
        .filter(|(_, m)| !m.is_zero())
        .map(|(d, m)| (d.to_string(), m.to_rows().iter().map(|r| r.iter().map(format_scalar).collect()).collect()))
        .collect()
}

fn build_table(space: &GradedSpace, t: &TableDecl, skew: bool) -> Input<Bilinear> {
    let mut all = Vec::new();
    for [a, b, c, v] in &t.entries {
        let (a, b, c, v) = (basis_ref(space, a)?, basis_ref(space, b)?, basis_ref(space, c)?, scalar(v)?);
        all.push((a, b, c, v.clone()));
        if t.complete && a != b {
            let koszul = dgla_core::linalg::sign((a.degree * b.degree) as i64);
            let partner = if skew { -koszul * v } else { koszul * v };
            all.push((b, a, c, partner));
        }
    }
    Ok(Bilinear::from_entries(space, 0, &all)?)
}

pub fn table_of(b: &Bilinear, decl: &SpaceDecl) -> TableDecl {
    let entries = b
        .entries()
        .into_iter()
        .map(|(x, y, z, v)| [decl.name_of(x), decl.name_of(y), decl.name_of(z), format_scalar(&v)])
        .collect();
    TableDecl { complete: false, entries }
}

impl AlgebraDecl {
    pub fn build(&self) -> Input<Dgla> {
        let space = self.space.build()?;
        let d = build_map(&space, &space, 1, &self.differential)?;
        let bracket = match &self.bracket {
            Some(t) => build_table(&space, t, true)?,
            None => Bilinear::zero(&space, 0),
        };
        Ok(Dgla::new(space, d, bracket)?)
    }

    pub fn from_dgla(l: &Dgla) -> Self {
        let space = SpaceDecl::from_space(l.space());
        let bracket = (!l.bracket_map().is_zero()).then(|| table_of(l.bracket_map(), &space));
        AlgebraDecl { space, differential: blocks_of(l.d()), bracket }
    }
}

impl ComplexDecl {
    fn build(&self) -> Input<(GradedSpace, GradedMap)> {
        let s = self.space.build()?;
        let d = build_map(&s, &s, 1, &self.differential)?;
        Ok((s, d))
    }
}

/// A parsed fixture with its algebras built.
#[derive(Debug)]
pub struct Loaded {
    pub file: FixtureFile,
    pub algebras: BTreeMap<String, Dgla>,
}

impl FixtureFile {
    pub fn main_decl(&self) -> AlgebraDecl {
        AlgebraDecl { space: self.space.clone(), differential: self.differential.clone(), bracket: self.bracket.clone() }
    }

    pub fn load(self) -> Input<Loaded> {
        let mut algebras = BTreeMap::new();
        algebras.insert("main".to_string(), self.main_decl().build()?);
        for (name, decl) in &self.algebras {
            if name == "main" {
                return bad("the name \"main\" is reserved for the top-level algebra");
            }
            algebras.insert(name.clone(), decl.build()?);
        }
        Ok(Loaded { file: self, algebras })
    }
}

impl Loaded {
    pub fn algebra(&self, name: &str) -> Input<&Dgla> {
        self.algebras.get(name).map_or_else(|| bad(format!("unknown algebra {name:?}")), Ok)
    }

    pub fn map(&self, name: &str) -> Input<(GradedMap, &MapDecl)> {
        let decl = self.file.maps.get(name).ok_or_else(|| InputError(format!("unknown map {name:?}")))?;
        let (s, t) = (self.algebra(&decl.source)?.space(), self.algebra(&decl.target)?.space());
        Ok((build_map(s, t, decl.degree, &decl.blocks)?, decl))
    }

    pub fn subspace(&self, name: &str) -> Input<(Subspace, &SubspaceDecl)> {
        let decl = self.file.subspaces.get(name).ok_or_else(|| InputError(format!("unknown subspace {name:?}")))?;
        let ambient = self.algebra(&decl.ambient)?.space();
        let mut vectors = Vec::new();
        for v in &decl.span {
            let mut degree = None;
            let mut x: Option<Element> = None;
            for (n, c) in v {
                let b = basis_ref(ambient, n)?;
                if degree.is_some_and(|d| d != b.degree) {
                    return bad(format!("spanning vector of {name:?} is not homogeneous"));
                }
                degree = Some(b.degree);
                let e = x.get_or_insert_with(|| Element::zero(ambient, b.degree));
                e.coeffs[b.index] += scalar(c)?;
            }
            vectors.extend(x);
        }
        Ok((Subspace::span(ambient, &vectors)?, decl))
    }

    /// The dBV algebra on the main space.
    pub fn dbv(&self) -> Input<DbvAlgebra> {
        let f = &self.file;
        let main = self.algebra("main")?;
        let space = main.space().clone();
        let product = f.product.as_ref().ok_or_else(|| InputError("missing \"product\" block".into()))?;
        let product = build_table(&space, product, false)?;
        let unit = f.unit.as_deref().ok_or_else(|| InputError("missing \"unit\"".into()))?;
        let unit = Element::basis(&space, basis_ref(&space, unit)?);
        let k = f.k.ok_or_else(|| InputError("missing \"k\"".into()))?;
        let delta = self.delta()?;
        if delta.degree() != -k {
            return bad(format!("delta must have degree -k = {}", -k));
        }
        Ok(DbvAlgebra::new(space, product, unit, main.d().clone(), delta, k)?)
    }

    pub fn delta(&self) -> Input<GradedMap> {
        let op = self.file.delta.as_ref().ok_or_else(|| InputError("missing \"delta\" block".into()))?;
        let space = self.algebra("main")?.space();
        build_map(space, space, op.degree, &op.blocks)
    }

    /// `(V, d, Δ)` from the main space, differential and delta.
    pub fn bicomplex(&self) -> Input<Bicomplex> {
        let main = self.algebra("main")?;
        Ok(Bicomplex::new(main.space().clone(), main.d().clone(), self.delta()?)?)
    }

    pub fn pi_example(&self) -> Input<PiExample> {
        let p = self.file.pi_example.as_ref().ok_or_else(|| InputError("missing \"pi_example\" block".into()))?;
        let (v, dv) = p.v.build()?;
        let (w, dw) = p.w.build()?;
        let pi = build_map(&w, &v, 1, &p.pi)?;
        Ok(pi_example_build(&PiData::new(v, dv, w, dw, pi)?)?)
    }
}

/// Spanning vectors of `s` by their nonzero coordinates.
pub fn span_of(s: &Subspace, decl: &SpaceDecl) -> Vec<BTreeMap<String, String>> {
    let mut out = Vec::new();
    for d in s.ambient().support() {
        for v in s.basis_vectors(d) {
            let entry = v
                .iter()
                .enumerate()
                .map(|(i, c)| (decl.name_of(BasisRef { degree: d, index: i }), format_scalar(c)))
                .filter(|(_, c)| c != "0")
                .collect();
            out.push(entry);
        }
    }
    out
}
