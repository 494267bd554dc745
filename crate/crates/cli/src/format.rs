//! The JSON instance format.
//!
//! One document declares a prime and named objects: complexes, chain
//! maps, cospans, cospan morphisms and commutative squares, the latter
//! three referencing earlier names. Matrices are arrays of row arrays of
//! reduced residues. The canonical byte form is compact JSON with sorted
//! keys, which is exactly what [`to_canonical_json`] emits, so canonical
//! files round-trip byte-identically.
//!
//! Every invariant of the underlying objects (`d . d = 0`, chain-map
//! commutation, cospan squares) is re-verified on load; violations name
//! the failing identity.

use std::collections::BTreeMap;
use std::path::Path;

use hopull_core::chain::{ChainComplex, ChainMap};
use hopull_core::cospan::{Cospan, CospanMorphism};
use hopull_core::hopull::CommSquare;
use hopull_core::linfp::{FieldCtx, Matrix};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum InstanceError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{entity} '{name}': {source}")]
    Invalid {
        entity: &'static str,
        name: String,
        #[source]
        source: hopull_core::Error,
    },
    #[error("{entity} '{name}' references unknown {what} '{reference}'")]
    UnknownReference {
        entity: &'static str,
        name: String,
        what: &'static str,
        reference: String,
    },
    #[error("{entity} '{name}': {message}")]
    Malformed {
        entity: &'static str,
        name: String,
        message: String,
    },
    #[error("no {what} named '{name}' in the instance")]
    NotFound { what: &'static str, name: String },
}

/// Per-degree data of a complex: the dimension and, when both endpoint
/// degrees are nonzero, the differential out of this degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DegreeDesc {
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<Vec<Vec<u64>>>,
}

pub type ComplexDesc = BTreeMap<String, DegreeDesc>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapDesc {
    pub src: String,
    pub tgt: String,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub f: BTreeMap<String, Vec<Vec<u64>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CospanDesc {
    /// Name of the first leg `g : C -> D`.
    pub g: String,
    /// Name of the second leg `f : B -> D`.
    pub f: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismDesc {
    pub src: String,
    pub tgt: String,
    pub phi_c: String,
    pub phi_d: String,
    pub phi_b: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SquareDesc {
    /// Name of the top map `u : A -> B`.
    pub u: String,
    /// Name of the left map `v : A -> C`.
    pub v: String,
    pub cospan: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub p: u64,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub complexes: BTreeMap<String, ComplexDesc>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub maps: BTreeMap<String, MapDesc>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub cospans: BTreeMap<String, CospanDesc>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub morphisms: BTreeMap<String, MorphismDesc>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub squares: BTreeMap<String, SquareDesc>,
}

impl InstanceFile {
    pub fn empty(p: u64) -> InstanceFile {
        InstanceFile {
            p,
            complexes: BTreeMap::new(),
            maps: BTreeMap::new(),
            cospans: BTreeMap::new(),
            morphisms: BTreeMap::new(),
            squares: BTreeMap::new(),
        }
    }
}

/// All named objects of an instance, fully validated.
#[derive(Clone, Debug)]
pub struct Resolved {
    pub ctx: FieldCtx,
    pub complexes: BTreeMap<String, ChainComplex>,
    pub maps: BTreeMap<String, ChainMap>,
    pub cospans: BTreeMap<String, Cospan>,
    pub morphisms: BTreeMap<String, CospanMorphism>,
    pub squares: BTreeMap<String, CommSquare>,
}

impl Resolved {
    pub fn complex(&self, name: &str) -> Result<&ChainComplex, InstanceError> {
        self.complexes
            .get(name)
            .ok_or_else(|| InstanceError::NotFound {
                what: "complex",
                name: name.into(),
            })
    }

    pub fn map(&self, name: &str) -> Result<&ChainMap, InstanceError> {
        self.maps.get(name).ok_or_else(|| InstanceError::NotFound {
            what: "map",
            name: name.into(),
        })
    }

    pub fn cospan(&self, name: &str) -> Result<&Cospan, InstanceError> {
        self.cospans
            .get(name)
            .ok_or_else(|| InstanceError::NotFound {
                what: "cospan",
                name: name.into(),
            })
    }

    pub fn morphism(&self, name: &str) -> Result<&CospanMorphism, InstanceError> {
        self.morphisms
            .get(name)
            .ok_or_else(|| InstanceError::NotFound {
                what: "morphism",
                name: name.into(),
            })
    }

    pub fn square(&self, name: &str) -> Result<&CommSquare, InstanceError> {
        self.squares
            .get(name)
            .ok_or_else(|| InstanceError::NotFound {
                what: "square",
                name: name.into(),
            })
    }
}

/// Parses a file from disk. Syntax errors carry the line and column.
pub fn parse_instance_file(path: &Path) -> Result<InstanceFile, InstanceError> {
    let text = std::fs::read_to_string(path).map_err(|source| InstanceError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_instance_str(&text)
}

pub fn parse_instance_str(text: &str) -> Result<InstanceFile, InstanceError> {
    serde_json::from_str(text).map_err(|e| InstanceError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

/// The canonical byte form: compact JSON, keys sorted.
pub fn to_canonical_json(file: &InstanceFile) -> String {
    serde_json::to_string(file).expect("instance files serialize")
}

fn parse_degree(entity: &'static str, name: &str, key: &str) -> Result<i64, InstanceError> {
    key.parse().map_err(|_| InstanceError::Malformed {
        entity,
        name: name.into(),
        message: format!("degree key '{key}' is not an integer"),
    })
}

fn matrix_from_rows(
    entity: &'static str,
    name: &str,
    rows: usize,
    cols: usize,
    data: &[Vec<u64>],
    ctx: &FieldCtx,
) -> Result<Matrix, InstanceError> {
    if data.len() != rows {
        return Err(InstanceError::Malformed {
            entity,
            name: name.into(),
            message: format!("expected {rows} rows, found {}", data.len()),
        });
    }
    let mut entries = Vec::with_capacity(rows * cols);
    for row in data {
        if row.len() != cols {
            return Err(InstanceError::Malformed {
                entity,
                name: name.into(),
                message: format!("expected {cols} columns, found {}", row.len()),
            });
        }
        entries.extend_from_slice(row);
    }
    Matrix::new(rows, cols, entries, ctx).map_err(|source| InstanceError::Invalid {
        entity,
        name: name.into(),
        source,
    })
}

fn matrix_to_rows(m: &Matrix) -> Vec<Vec<u64>> {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| m.at(i, j)).collect())
        .collect()
}

/// Validates and resolves every declared object.
pub fn resolve(file: &InstanceFile) -> Result<Resolved, InstanceError> {
    let ctx = FieldCtx::new(file.p).map_err(|source| InstanceError::Invalid {
        entity: "instance",
        name: "p".into(),
        source,
    })?;
    let mut complexes = BTreeMap::new();
    for (name, desc) in &file.complexes {
        let mut dims = BTreeMap::new();
        for (key, deg) in desc {
            let n = parse_degree("complex", name, key)?;
            dims.insert(n, deg.dim);
        }
        let dim_of = |n: i64| dims.get(&n).copied().unwrap_or(0);
        let mut diffs = BTreeMap::new();
        for (key, deg) in desc {
            let n = parse_degree("complex", name, key)?;
            if let Some(rows) = &deg.d {
                diffs.insert(
                    n,
                    matrix_from_rows("complex", name, dim_of(n - 1), dim_of(n), rows, &ctx)?,
                );
            }
        }
        let complex =
            ChainComplex::new(ctx, dims, diffs).map_err(|source| InstanceError::Invalid {
                entity: "complex",
                name: name.clone(),
                source,
            })?;
        complexes.insert(name.clone(), complex);
    }
    let mut maps = BTreeMap::new();
    for (name, desc) in &file.maps {
        let src = complexes
            .get(&desc.src)
            .ok_or_else(|| InstanceError::UnknownReference {
                entity: "map",
                name: name.clone(),
                what: "complex",
                reference: desc.src.clone(),
            })?;
        let tgt = complexes
            .get(&desc.tgt)
            .ok_or_else(|| InstanceError::UnknownReference {
                entity: "map",
                name: name.clone(),
                what: "complex",
                reference: desc.tgt.clone(),
            })?;
        let mut components = BTreeMap::new();
        for (key, rows) in &desc.f {
            let n = parse_degree("map", name, key)?;
            components.insert(
                n,
                matrix_from_rows("map", name, tgt.dim(n), src.dim(n), rows, &ctx)?,
            );
        }
        let map = ChainMap::new(src.clone(), tgt.clone(), components).map_err(|source| {
            InstanceError::Invalid {
                entity: "map",
                name: name.clone(),
                source,
            }
        })?;
        maps.insert(name.clone(), map);
    }
    let mut cospans = BTreeMap::new();
    for (name, desc) in &file.cospans {
        let look = |leg: &str| {
            maps.get(leg)
                .cloned()
                .ok_or_else(|| InstanceError::UnknownReference {
                    entity: "cospan",
                    name: name.clone(),
                    what: "map",
                    reference: leg.into(),
                })
        };
        let cospan = Cospan::new(look(&desc.g)?, look(&desc.f)?).map_err(|source| {
            InstanceError::Invalid {
                entity: "cospan",
                name: name.clone(),
                source,
            }
        })?;
        cospans.insert(name.clone(), cospan);
    }
    let mut morphisms = BTreeMap::new();
    for (name, desc) in &file.morphisms {
        let look_cospan = |which: &str| {
            cospans
                .get(which)
                .cloned()
                .ok_or_else(|| InstanceError::UnknownReference {
                    entity: "morphism",
                    name: name.clone(),
                    what: "cospan",
                    reference: which.into(),
                })
        };
        let look_map = |which: &str| {
            maps.get(which)
                .cloned()
                .ok_or_else(|| InstanceError::UnknownReference {
                    entity: "morphism",
                    name: name.clone(),
                    what: "map",
                    reference: which.into(),
                })
        };
        let morphism = CospanMorphism::new(
            look_cospan(&desc.src)?,
            look_cospan(&desc.tgt)?,
            look_map(&desc.phi_c)?,
            look_map(&desc.phi_d)?,
            look_map(&desc.phi_b)?,
        )
        .map_err(|source| InstanceError::Invalid {
            entity: "morphism",
            name: name.clone(),
            source,
        })?;
        morphisms.insert(name.clone(), morphism);
    }
    let mut squares = BTreeMap::new();
    for (name, desc) in &file.squares {
        let look_map = |which: &str| {
            maps.get(which)
                .cloned()
                .ok_or_else(|| InstanceError::UnknownReference {
                    entity: "square",
                    name: name.clone(),
                    what: "map",
                    reference: which.into(),
                })
        };
        let cospan =
            cospans
                .get(&desc.cospan)
                .cloned()
                .ok_or_else(|| InstanceError::UnknownReference {
                    entity: "square",
                    name: name.clone(),
                    what: "cospan",
                    reference: desc.cospan.clone(),
                })?;
        let square =
            CommSquare::new(look_map(&desc.u)?, look_map(&desc.v)?, cospan).map_err(|source| {
                InstanceError::Invalid {
                    entity: "square",
                    name: name.clone(),
                    source,
                }
            })?;
        squares.insert(name.clone(), square);
    }
    Ok(Resolved {
        ctx,
        complexes,
        maps,
        cospans,
        morphisms,
        squares,
    })
}

/// Incrementally assembles an instance file from core objects; used for
/// emitting results and counterexample dumps.
pub struct InstanceBuilder {
    file: InstanceFile,
}

impl InstanceBuilder {
    pub fn new(p: u64) -> InstanceBuilder {
        InstanceBuilder {
            file: InstanceFile::empty(p),
        }
    }

    pub fn complex(&mut self, name: &str, x: &ChainComplex) -> &mut Self {
        let mut desc = ComplexDesc::new();
        for n in x.support() {
            let d = (x.dim(n - 1) > 0).then(|| matrix_to_rows(&x.d(n)));
            desc.insert(n.to_string(), DegreeDesc { dim: x.dim(n), d });
        }
        self.file.complexes.insert(name.into(), desc);
        self
    }

    pub fn map(&mut self, name: &str, src: &str, tgt: &str, f: &ChainMap) -> &mut Self {
        let mut comps = BTreeMap::new();
        for (&n, m) in f.components() {
            comps.insert(n.to_string(), matrix_to_rows(m));
        }
        self.file.maps.insert(
            name.into(),
            MapDesc {
                src: src.into(),
                tgt: tgt.into(),
                f: comps,
            },
        );
        self
    }

    pub fn cospan(&mut self, name: &str, g: &str, f: &str) -> &mut Self {
        self.file.cospans.insert(
            name.into(),
            CospanDesc {
                g: g.into(),
                f: f.into(),
            },
        );
        self
    }

    pub fn morphism(
        &mut self,
        name: &str,
        src: &str,
        tgt: &str,
        phi_c: &str,
        phi_d: &str,
        phi_b: &str,
    ) -> &mut Self {
        self.file.morphisms.insert(
            name.into(),
            MorphismDesc {
                src: src.into(),
                tgt: tgt.into(),
                phi_c: phi_c.into(),
                phi_d: phi_d.into(),
                phi_b: phi_b.into(),
            },
        );
        self
    }

    pub fn square(&mut self, name: &str, u: &str, v: &str, cospan: &str) -> &mut Self {
        self.file.squares.insert(
            name.into(),
            SquareDesc {
                u: u.into(),
                v: v.into(),
                cospan: cospan.into(),
            },
        );
        self
    }

    /// Adds a whole cospan under `name`, creating `<name>.B/C/D` and
    /// `<name>.f/g` entries.
    pub fn cospan_full(&mut self, name: &str, x: &Cospan) -> &mut Self {
        let (bn, cn, dn) = (
            format!("{name}.B"),
            format!("{name}.C"),
            format!("{name}.D"),
        );
        let (fnm, gnm) = (format!("{name}.f"), format!("{name}.g"));
        self.complex(&bn, x.b());
        self.complex(&cn, x.c());
        self.complex(&dn, x.d());
        self.map(&fnm, &bn, &dn, x.f());
        self.map(&gnm, &cn, &dn, x.g());
        self.cospan(name, &gnm, &fnm)
    }

    /// Adds a whole commutative square under `name`, creating the corner
    /// complex, the cospan and the two corner maps.
    pub fn square_full(&mut self, name: &str, s: &CommSquare) -> &mut Self {
        let an = format!("{name}.A");
        let (un, vn) = (format!("{name}.u"), format!("{name}.v"));
        let xn = format!("{name}.X");
        self.complex(&an, s.corner());
        self.cospan_full(&xn, s.cospan());
        self.map(&un, &an, &format!("{xn}.B"), s.u());
        self.map(&vn, &an, &format!("{xn}.C"), s.v());
        self.square(name, &un, &vn, &xn)
    }

    pub fn finish(&self) -> InstanceFile {
        self.file.clone()
    }
}
