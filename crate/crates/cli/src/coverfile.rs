//! The cover input file format: a JSON document listing the group order,
//! the residue prime, the fiber components and the off-diagonal
//! intersection numbers. Parsing lives here; validation is the library's.

use std::path::Path;

use serde::{Deserialize, Serialize};

use equichar_core::cover::{validate_cover, CoverDatum, FiberComponent, IntersectionMatrix};
use equichar_core::modular::{build_cover, ModularParams};

#[derive(Debug, Serialize, Deserialize)]
pub struct ComponentFile {
    pub id: String,
    pub e: u64,
    pub m: u64,
    pub self_intersection: i64,
    pub chi_struct: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d_custom: Option<i64>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct CoverFile {
    pub group_order: u64,
    pub residue_prime: u64,
    pub components: Vec<ComponentFile>,
    #[serde(default)]
    pub intersections: Vec<(String, String, i64)>,
}

impl CoverFile {
    pub fn into_cover(self) -> Result<CoverDatum, String> {
        let components = self
            .components
            .into_iter()
            .map(|c| FiberComponent {
                id: c.id,
                e: c.e,
                m: c.m,
                self_intersection: c.self_intersection,
                chi_struct: c.chi_struct,
                d_custom: c.d_custom,
            })
            .collect();
        let intersections =
            IntersectionMatrix::from_triples(self.intersections).map_err(|e| e.to_string())?;
        validate_cover(CoverDatum {
            group_order: self.group_order,
            residue_prime: self.residue_prime,
            components,
            intersections,
        })
        .map_err(|e| e.to_string())
    }

    pub fn from_cover(c: &CoverDatum) -> Self {
        let components = c
            .components
            .iter()
            .map(|k| ComponentFile {
                id: k.id.clone(),
                e: k.e,
                m: k.m,
                self_intersection: k.self_intersection,
                chi_struct: k.chi_struct,
                d_custom: k.d_custom,
            })
            .collect();
        let mut intersections: Vec<(String, String, i64)> = c
            .intersections
            .iter()
            .filter(|((a, b), _)| a != b)
            .map(|((a, b), &v)| (a.clone(), b.clone(), v))
            .collect();
        intersections.sort();
        CoverFile {
            group_order: c.group_order,
            residue_prime: c.residue_prime,
            components,
            intersections,
        }
    }
}

/// Reads and validates a cover file; errors carry the file position when the
/// JSON itself is malformed.
pub fn load_cover(path: &Path) -> Result<CoverDatum, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let file: CoverFile = serde_json::from_str(&text)
        .map_err(|e| format!("{}:{}:{}: {e}", path.display(), e.line(), e.column()))?;
    file.into_cover()
        .map_err(|e| format!("{}: {e}", path.display()))
}

/// The cover file for a modular-parameter pair, ready to feed back into the
/// generic commands.
pub fn modular_cover_file(mp: &ModularParams) -> Result<CoverFile, String> {
    let cover = build_cover(mp).map_err(|e| e.to_string())?;
    Ok(CoverFile::from_cover(&cover))
}
