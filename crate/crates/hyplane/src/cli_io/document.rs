//! JSON tiling documents: a versioned, byte-stable serialization of a
//! resolution-truncated tiling.
//!
//! Apex angles are decimal radians. Serialization uses the shortest decimal
//! that round-trips the binary value, so serialize -> parse -> serialize is
//! byte-identical and the angles survive losslessly. The schema is documented
//! in `schema/tiling.schema.json`.

use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geom::{BoundaryPoint, GeomError, IdealPolygon};
use crate::tiling::{Tiling, TilingKind, TilingMeta};

/// Major version accepted by this reader.
pub const SCHEMA_MAJOR: u32 = 1;
/// Version written by this writer.
pub const SCHEMA_VERSION: &str = "1.0";

#[derive(Debug, Error)]
pub enum DocumentError {
    #[error("io error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("parse error: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("unsupported schema version {found} (reader supports major {SCHEMA_MAJOR})")]
    SchemaVersion { found: String },
    #[error("polygon {index}: {source}")]
    BadPolygon {
        index: usize,
        #[source]
        source: GeomError,
    },
    #[error("unknown tiling kind {0:?}")]
    UnknownKind(String),
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct DocumentMeta {
    pub seed: u64,
    pub resolution: f64,
    pub jump_cutoff: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub thin_p: Option<f64>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub budget_exhausted: bool,
}

/// Serializable form of a tiling: schema version, kind, meta, and one
/// apex-angle array per polygon (radians, anticlockwise).
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct TilingDocument {
    pub schema_version: String,
    pub kind: String,
    pub meta: DocumentMeta,
    pub polygons: Vec<Vec<f64>>,
}

fn kind_name(kind: TilingKind) -> &'static str {
    match kind {
        TilingKind::MarkovTriangles => "markov-triangles",
        TilingKind::Farey => "farey",
        TilingKind::MarkovSquares => "markov-squares",
    }
}

fn kind_from_name(name: &str) -> Result<TilingKind, DocumentError> {
    match name {
        "markov-triangles" => Ok(TilingKind::MarkovTriangles),
        "farey" => Ok(TilingKind::Farey),
        "markov-squares" => Ok(TilingKind::MarkovSquares),
        other => Err(DocumentError::UnknownKind(other.to_string())),
    }
}

impl TilingDocument {
    pub fn from_tiling(tiling: &Tiling) -> Self {
        TilingDocument {
            schema_version: SCHEMA_VERSION.to_string(),
            kind: kind_name(tiling.kind).to_string(),
            meta: DocumentMeta {
                seed: tiling.meta.seed,
                resolution: tiling.meta.resolution,
                jump_cutoff: tiling.meta.jump_cutoff,
                thin_p: tiling.meta.thin_p,
                budget_exhausted: tiling.meta.budget_exhausted,
            },
            polygons: tiling
                .polygons
                .iter()
                .map(|p| p.apexes().iter().map(|a| a.angle()).collect())
                .collect(),
        }
    }

    pub fn into_tiling(self) -> Result<Tiling, DocumentError> {
        self.check_version()?;
        let kind = kind_from_name(&self.kind)?;
        let polygons = self
            .polygons
            .iter()
            .enumerate()
            .map(|(index, angles)| {
                IdealPolygon::new(angles.iter().map(|&a| BoundaryPoint::disk(a)).collect())
                    .map_err(|source| DocumentError::BadPolygon { index, source })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Tiling {
            polygons,
            kind,
            meta: TilingMeta {
                seed: self.meta.seed,
                resolution: self.meta.resolution,
                jump_cutoff: self.meta.jump_cutoff,
                thin_p: self.meta.thin_p,
                budget_exhausted: self.meta.budget_exhausted,
                created_unix: 0,
            },
        })
    }

    pub fn check_version(&self) -> Result<(), DocumentError> {
        let major = self
            .schema_version
            .split('.')
            .next()
            .and_then(|m| m.parse::<u32>().ok());
        if major != Some(SCHEMA_MAJOR) {
            return Err(DocumentError::SchemaVersion {
                found: self.schema_version.clone(),
            });
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, DocumentError> {
        let doc: TilingDocument = serde_json::from_str(text)?;
        doc.check_version()?;
        Ok(doc)
    }
}

pub fn write_tiling(tiling: &Tiling, path: &Path) -> Result<(), DocumentError> {
    let doc = TilingDocument::from_tiling(tiling);
    let mut file = std::fs::File::create(path).map_err(|source| DocumentError::Io {
        path: path.display().to_string(),
        source,
    })?;
    file.write_all(doc.to_json().as_bytes())
        .and_then(|_| file.write_all(b"\n"))
        .map_err(|source| DocumentError::Io {
            path: path.display().to_string(),
            source,
        })
}

pub fn read_tiling(path: &Path) -> Result<Tiling, DocumentError> {
    let text = std::fs::read_to_string(path).map_err(|source| DocumentError::Io {
        path: path.display().to_string(),
        source,
    })?;
    TilingDocument::from_json(&text)?.into_tiling()
}
