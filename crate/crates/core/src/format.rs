//! JSON graph files.
//!
//! ```text
//! { "name": "lasso", "generators": 1, "vertices": [0, 1],
//!   "edges": [{"id": 1, "from": 0, "to": 0, "length": 1.2, "flux": [1]}, ...],
//!   "identifications": [{"generator": 1, "plus": 2, "minus": 0}, ...] }
//! ```
//!
//! A file is either a pre-reduced magnetic graph (`flux` per edge, no
//! identifications) or a fundamental cell (identifications, flux absent or
//! zero).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result, ValidationReport, Violation};
use crate::graph::{
    bloch_reduce, validate_cell, CellEdge, FundamentalCell, Identification, MagneticEdge,
    MagneticGraph,
};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EdgeRecord {
    pub id: i64,
    pub from: i64,
    pub to: i64,
    pub length: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub flux: Option<Vec<i32>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentificationRecord {
    pub generator: usize,
    pub plus: i64,
    pub minus: i64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GraphFile {
    #[serde(default)]
    pub name: String,
    pub generators: usize,
    pub vertices: Vec<i64>,
    pub edges: Vec<EdgeRecord>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub identifications: Vec<IdentificationRecord>,
}

/// Parsed contents of a graph file.
#[derive(Debug, Clone, PartialEq)]
pub enum GraphInput {
    Cell(FundamentalCell),
    Magnetic(MagneticGraph),
}

impl GraphInput {
    pub fn validate(&self) -> ValidationReport {
        match self {
            GraphInput::Cell(c) => validate_cell(c),
            GraphInput::Magnetic(g) => g.validate(),
        }
    }

    pub fn edge_count(&self) -> usize {
        match self {
            GraphInput::Cell(c) => c.edges.len(),
            GraphInput::Magnetic(g) => g.edges.len(),
        }
    }

    /// Overrides edge lengths in file order.
    pub fn set_lengths(&mut self, lengths: &[f64]) -> Result<()> {
        if lengths.len() != self.edge_count() {
            return Err(Error::LengthCount {
                expected: self.edge_count(),
                got: lengths.len(),
            });
        }
        match self {
            GraphInput::Cell(c) => c.edges.iter_mut().zip(lengths).for_each(|(e, &l)| e.length = l),
            GraphInput::Magnetic(g) => {
                g.edges.iter_mut().zip(lengths).for_each(|(e, &l)| e.length = l)
            }
        }
        Ok(())
    }

    /// Reduces a cell, or validates and returns a magnetic graph.
    pub fn into_magnetic(self) -> Result<MagneticGraph> {
        match self {
            GraphInput::Cell(c) => bloch_reduce(&c),
            GraphInput::Magnetic(g) => {
                g.validate().into_result()?;
                Ok(g)
            }
        }
    }
}

impl GraphFile {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("graph file serialises")
    }

    pub fn into_input(self) -> Result<GraphInput> {
        let j = self.generators;
        for e in &self.edges {
            if let Some(f) = &e.flux {
                if f.len() != j {
                    return Err(Error::InvalidGraph(ValidationReport {
                        violations: vec![Violation::FluxDimension {
                            edge: e.id,
                            expected: j,
                            got: f.len(),
                        }],
                    }));
                }
            }
        }
        if self.identifications.is_empty() {
            return Ok(GraphInput::Magnetic(MagneticGraph {
                name: self.name,
                generators: j,
                vertices: self.vertices,
                edges: self
                    .edges
                    .into_iter()
                    .map(|e| MagneticEdge {
                        id: e.id,
                        from: e.from,
                        to: e.to,
                        length: e.length,
                        flux: e.flux.unwrap_or_else(|| vec![0; j]),
                    })
                    .collect(),
            }));
        }
        let fluxed: Vec<Violation> = self
            .edges
            .iter()
            .filter(|e| e.flux.as_ref().is_some_and(|f| f.iter().any(|&x| x != 0)))
            .map(|e| Violation::FluxWithIdentifications { edge: e.id })
            .collect();
        if !fluxed.is_empty() {
            return Err(Error::InvalidGraph(ValidationReport { violations: fluxed }));
        }
        Ok(GraphInput::Cell(FundamentalCell {
            name: self.name,
            generators: j,
            vertices: self.vertices,
            edges: self
                .edges
                .into_iter()
                .map(|e| CellEdge {
                    id: e.id,
                    from: e.from,
                    to: e.to,
                    length: e.length,
                })
                .collect(),
            identifications: self
                .identifications
                .into_iter()
                .map(|i| Identification {
                    generator: i.generator,
                    plus: i.plus,
                    minus: i.minus,
                })
                .collect(),
        }))
    }
}

impl From<&MagneticGraph> for GraphFile {
    fn from(g: &MagneticGraph) -> Self {
        GraphFile {
            name: g.name.clone(),
            generators: g.generators,
            vertices: g.vertices.clone(),
            edges: g
                .edges
                .iter()
                .map(|e| EdgeRecord {
                    id: e.id,
                    from: e.from,
                    to: e.to,
                    length: e.length,
                    flux: Some(e.flux.clone()),
                })
                .collect(),
            identifications: Vec::new(),
        }
    }
}

impl From<&FundamentalCell> for GraphFile {
    fn from(c: &FundamentalCell) -> Self {
        GraphFile {
            name: c.name.clone(),
            generators: c.generators,
            vertices: c.vertices.clone(),
            edges: c
                .edges
                .iter()
                .map(|e| EdgeRecord {
                    id: e.id,
                    from: e.from,
                    to: e.to,
                    length: e.length,
                    flux: None,
                })
                .collect(),
            identifications: c
                .identifications
                .iter()
                .map(|i| IdentificationRecord {
                    generator: i.generator,
                    plus: i.plus,
                    minus: i.minus,
                })
                .collect(),
        }
    }
}
