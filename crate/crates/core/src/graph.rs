//! Fundamental cells, magnetic graphs and the Floquet–Bloch reduction between them.
//!
//! A [`FundamentalCell`] describes one period of a `Z^d`-periodic network: its
//! edges plus a list of vertex pairs `(v+, v-)` glued by lattice generator `j`
//! through the quasi-periodic condition `psi(v+) = e^{i alpha_j} psi(v-)`.
//! [`bloch_reduce`] glues those pairs and moves the Bloch phase onto edges,
//! producing a [`MagneticGraph`] whose edges carry integer flux coefficients.
//!
//! Flux orientation: the stored edge direction is the positive direction. A bond
//! traversing the edge forwards picks up `alpha . flux`, the reverse bond picks
//! up `-alpha . flux`.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use rand::Rng;

use crate::error::{Error, Result, ValidationReport, Violation};

/// Edge of a fundamental cell.
#[derive(Debug, Clone, PartialEq)]
pub struct CellEdge {
    pub id: i64,
    pub from: i64,
    pub to: i64,
    pub length: f64,
}

/// Gluing of `plus` to `minus` by generator `generator` (1-based).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Identification {
    pub generator: usize,
    pub plus: i64,
    pub minus: i64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FundamentalCell {
    pub name: String,
    pub generators: usize,
    pub vertices: Vec<i64>,
    pub edges: Vec<CellEdge>,
    pub identifications: Vec<Identification>,
}

/// Edge of a magnetic graph; `flux[j]` is the integer coefficient of `alpha_j`.
#[derive(Debug, Clone, PartialEq)]
pub struct MagneticEdge {
    pub id: i64,
    pub from: i64,
    pub to: i64,
    pub length: f64,
    pub flux: Vec<i32>,
}

impl MagneticEdge {
    pub fn is_loop(&self) -> bool {
        self.from == self.to
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MagneticGraph {
    pub name: String,
    pub generators: usize,
    pub vertices: Vec<i64>,
    pub edges: Vec<MagneticEdge>,
}

impl MagneticGraph {
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn total_length(&self) -> f64 {
        self.edges.iter().map(|e| e.length).sum()
    }

    pub fn lengths(&self) -> Vec<f64> {
        self.edges.iter().map(|e| e.length).collect()
    }

    /// Vertex degrees; a self-loop contributes 2 to its vertex.
    pub fn degrees(&self) -> BTreeMap<i64, usize> {
        let mut deg: BTreeMap<i64, usize> = self.vertices.iter().map(|&v| (v, 0)).collect();
        for e in &self.edges {
            *deg.entry(e.from).or_default() += 1;
            *deg.entry(e.to).or_default() += 1;
        }
        deg
    }

    /// Replaces edge lengths in edge order.
    pub fn with_lengths(&self, lengths: &[f64]) -> Result<MagneticGraph> {
        if lengths.len() != self.edges.len() {
            return Err(Error::LengthCount {
                expected: self.edges.len(),
                got: lengths.len(),
            });
        }
        let mut g = self.clone();
        for (e, &l) in g.edges.iter_mut().zip(lengths) {
            e.length = l;
        }
        g.validate().into_result()?;
        Ok(g)
    }

    /// Checks the magnetic-graph invariants. Self-loops are allowed here.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        let index = vertex_index(&self.vertices, &mut report);
        if self.edges.is_empty() {
            report.push(Violation::NoEdges);
        }
        let mut seen = HashMap::new();
        for e in &self.edges {
            if seen.insert(e.id, ()).is_some() {
                report.push(Violation::DuplicateEdge(e.id));
            }
            check_length(e.id, e.length, &mut report);
            for v in [e.from, e.to] {
                if !index.contains_key(&v) {
                    report.push(Violation::UnknownVertex {
                        vertex: v,
                        context: format!("edge {}", e.id),
                    });
                }
            }
            if e.flux.len() != self.generators {
                report.push(Violation::FluxDimension {
                    edge: e.id,
                    expected: self.generators,
                    got: e.flux.len(),
                });
            }
        }
        if report.is_valid() {
            let mut uf = UnionFind::new(self.vertices.len());
            for e in &self.edges {
                uf.union(index[&e.from], index[&e.to]);
            }
            let components = uf.components();
            if components > 1 {
                report.push(Violation::Disconnected { components });
            }
        }
        report
    }
}

fn check_length(edge: i64, length: f64, report: &mut ValidationReport) {
    if !(length.is_finite() && length > 0.0) {
        report.push(Violation::NonpositiveLength { edge, length });
    }
}

fn vertex_index(vertices: &[i64], report: &mut ValidationReport) -> HashMap<i64, usize> {
    let mut index = HashMap::with_capacity(vertices.len());
    for (i, &v) in vertices.iter().enumerate() {
        if index.insert(v, i).is_some() {
            report.push(Violation::DuplicateVertex(v));
        }
    }
    index
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }

    fn components(&mut self) -> usize {
        (0..self.parent.len()).filter(|&i| self.find(i) == i).count()
    }
}

/// Representative vertex and Bloch phase potential of every cell vertex:
/// `psi(v) = e^{i alpha . phase(v)} psi(rep(v))`.
struct Gluing {
    rep: Vec<usize>,
    phase: Vec<Vec<i32>>,
}

/// Breadth-first walk over the identification graph. Returns the gluing and the
/// identifications whose phase contradicts an earlier path.
fn glue(cell: &FundamentalCell, index: &HashMap<i64, usize>) -> (Gluing, Vec<Identification>) {
    let n = cell.vertices.len();
    let j = cell.generators;
    let mut adj: Vec<Vec<(usize, usize, i32)>> = vec![Vec::new(); n];
    for id in &cell.identifications {
        let (p, m) = (index[&id.plus], index[&id.minus]);
        // Crossing minus -> plus adds e_j.
        adj[m].push((p, id.generator - 1, 1));
        adj[p].push((m, id.generator - 1, -1));
    }
    let mut rep = vec![usize::MAX; n];
    let mut phase = vec![vec![0i32; j]; n];
    for root in 0..n {
        if rep[root] != usize::MAX {
            continue;
        }
        rep[root] = root;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for &(w, g, s) in &adj[v] {
                if rep[w] == usize::MAX {
                    rep[w] = root;
                    let mut p = phase[v].clone();
                    p[g] += s;
                    phase[w] = p;
                    queue.push_back(w);
                }
            }
        }
    }
    let conflicts = cell
        .identifications
        .iter()
        .filter(|id| {
            let (p, m) = (index[&id.plus], index[&id.minus]);
            let mut expected = phase[m].clone();
            expected[id.generator - 1] += 1;
            phase[p] != expected
        })
        .copied()
        .collect();
    (Gluing { rep, phase }, conflicts)
}

/// Returns every invariant violation of `cell`; empty iff the cell is valid.
pub fn validate_cell(cell: &FundamentalCell) -> ValidationReport {
    let mut report = ValidationReport::default();
    let index = vertex_index(&cell.vertices, &mut report);
    if cell.edges.is_empty() {
        report.push(Violation::NoEdges);
    }
    let mut seen = HashMap::new();
    for e in &cell.edges {
        if seen.insert(e.id, ()).is_some() {
            report.push(Violation::DuplicateEdge(e.id));
        }
        check_length(e.id, e.length, &mut report);
        for v in [e.from, e.to] {
            if !index.contains_key(&v) {
                report.push(Violation::UnknownVertex {
                    vertex: v,
                    context: format!("edge {}", e.id),
                });
            }
        }
    }
    for id in &cell.identifications {
        if id.generator == 0 || id.generator > cell.generators {
            report.push(Violation::GeneratorOutOfRange {
                generator: id.generator,
                generators: cell.generators,
            });
        }
        for v in [id.plus, id.minus] {
            if !index.contains_key(&v) {
                report.push(Violation::UnknownVertex {
                    vertex: v,
                    context: format!("identification {} ~ {}", id.plus, id.minus),
                });
            }
        }
        if id.plus == id.minus {
            report.push(Violation::SelfIdentification { vertex: id.plus });
        }
    }
    if !report.is_valid() {
        return report;
    }

    let (_, conflicts) = glue(cell, &index);
    for c in conflicts {
        report.push(Violation::ConflictingIdentification {
            plus: c.plus,
            minus: c.minus,
        });
    }
    let mut uf = UnionFind::new(cell.vertices.len());
    for e in &cell.edges {
        uf.union(index[&e.from], index[&e.to]);
    }
    for id in &cell.identifications {
        uf.union(index[&id.plus], index[&id.minus]);
    }
    let components = uf.components();
    if components > 1 {
        report.push(Violation::Disconnected { components });
    }
    report
}

/// Floquet–Bloch reduction of a cell to a magnetic graph.
///
/// Identified vertices are merged into the first vertex of their class (in cell
/// order). An edge gets flux `phase(from) - phase(to)`, so an edge ending at a
/// `v-` of generator `j` carries `+1` for `j` and an edge leaving it `-1`.
/// Self-loops in the result are split at their midpoint by a new degree-2
/// vertex; the first half keeps the id and the flux, the second half gets a
/// fresh id and zero flux.
pub fn bloch_reduce(cell: &FundamentalCell) -> Result<MagneticGraph> {
    validate_cell(cell).into_result()?;
    let mut scratch = ValidationReport::default();
    let index = vertex_index(&cell.vertices, &mut scratch);
    let (gluing, _) = glue(cell, &index);

    let vertices: Vec<i64> = (0..cell.vertices.len())
        .filter(|&i| gluing.rep[i] == i)
        .map(|i| cell.vertices[i])
        .collect();
    let mut next_vertex = cell.vertices.iter().copied().max().unwrap_or(0) + 1;
    let mut next_edge = cell.edges.iter().map(|e| e.id).max().unwrap_or(0) + 1;

    let mut out = MagneticGraph {
        name: cell.name.clone(),
        generators: cell.generators,
        vertices,
        edges: Vec::with_capacity(cell.edges.len()),
    };
    for e in &cell.edges {
        let (a, b) = (index[&e.from], index[&e.to]);
        let from = cell.vertices[gluing.rep[a]];
        let to = cell.vertices[gluing.rep[b]];
        let flux: Vec<i32> = gluing.phase[a]
            .iter()
            .zip(&gluing.phase[b])
            .map(|(x, y)| x - y)
            .collect();
        if from == to {
            let mid = next_vertex;
            next_vertex += 1;
            out.vertices.push(mid);
            let half = 0.5 * e.length;
            out.edges.push(MagneticEdge {
                id: e.id,
                from,
                to: mid,
                length: half,
                flux,
            });
            out.edges.push(MagneticEdge {
                id: next_edge,
                from: mid,
                to,
                length: half,
                flux: vec![0; cell.generators],
            });
            next_edge += 1;
        } else {
            out.edges.push(MagneticEdge {
                id: e.id,
                from,
                to,
                length: e.length,
                flux,
            });
        }
    }
    Ok(out)
}

/// Built-in example graphs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ExampleName {
    /// Loop with flux and one pendant edge, bonds numbered loop, pendant,
    /// loop reversed, pendant reversed.
    Lasso,
    /// Backbone through a junction plus a single pendant edge.
    Fig1b,
    /// As `Fig1b` with the pendant path subdivided by a degree-2 vertex.
    Fig1c,
    /// Stem to a decoration carrying a two-edge cycle and a pendant edge.
    Fig1d,
}

impl ExampleName {
    pub const ALL: [ExampleName; 4] = [
        ExampleName::Lasso,
        ExampleName::Fig1b,
        ExampleName::Fig1c,
        ExampleName::Fig1d,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ExampleName::Lasso => "lasso",
            ExampleName::Fig1b => "fig1b",
            ExampleName::Fig1c => "fig1c",
            ExampleName::Fig1d => "fig1d",
        }
    }
}

impl fmt::Display for ExampleName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ExampleName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ExampleName::ALL
            .into_iter()
            .find(|n| n.as_str() == s)
            .ok_or_else(|| Error::UnknownExample(s.to_string()))
    }
}

#[derive(Debug, Clone)]
enum TemplateForm {
    Magnetic(MagneticGraph),
    Cell(FundamentalCell),
}

/// Example graph whose edge lengths are unbound slots, one per edge in edge order.
///
/// The only way to obtain a [`MagneticGraph`] is [`GraphTemplate::bind`] or
/// [`GraphTemplate::bind_random`].
#[derive(Debug, Clone)]
pub struct GraphTemplate {
    name: ExampleName,
    form: TemplateForm,
}

impl GraphTemplate {
    pub fn name(&self) -> ExampleName {
        self.name
    }

    pub fn slot_count(&self) -> usize {
        match &self.form {
            TemplateForm::Magnetic(g) => g.edges.len(),
            TemplateForm::Cell(c) => c.edges.len(),
        }
    }

    /// The cell this example reduces from, if it is given in cell form.
    pub fn cell(&self, lengths: &[f64]) -> Result<Option<FundamentalCell>> {
        match &self.form {
            TemplateForm::Magnetic(_) => Ok(None),
            TemplateForm::Cell(c) => {
                self.check_slots(lengths)?;
                let mut c = c.clone();
                for (e, &l) in c.edges.iter_mut().zip(lengths) {
                    e.length = l;
                }
                Ok(Some(c))
            }
        }
    }

    fn check_slots(&self, lengths: &[f64]) -> Result<()> {
        if lengths.len() != self.slot_count() {
            return Err(Error::LengthCount {
                expected: self.slot_count(),
                got: lengths.len(),
            });
        }
        Ok(())
    }

    pub fn bind(&self, lengths: &[f64]) -> Result<MagneticGraph> {
        self.check_slots(lengths)?;
        match &self.form {
            TemplateForm::Magnetic(g) => g.with_lengths(lengths),
            TemplateForm::Cell(_) => {
                let cell = self.cell(lengths)?.expect("cell form");
                bloch_reduce(&cell)
            }
        }
    }

    /// Binds every slot to an independent uniform draw from `[1, 2)`.
    pub fn bind_random<R: Rng>(&self, rng: &mut R) -> Result<MagneticGraph> {
        let lengths: Vec<f64> = (0..self.slot_count())
            .map(|_| rng.random_range(1.0..2.0))
            .collect();
        self.bind(&lengths)
    }
}

fn cell_edge(id: i64, from: i64, to: i64) -> CellEdge {
    CellEdge {
        id,
        from,
        to,
        length: f64::NAN,
    }
}

/// Backbone `v- (0) -> c (1) -> v+ (2)` glued by generator 1, decoration edges appended.
fn backbone_cell(name: &str, extra_vertices: &[i64], decoration: &[(i64, i64)]) -> FundamentalCell {
    let mut vertices = vec![0, 1, 2];
    vertices.extend_from_slice(extra_vertices);
    let mut edges = vec![cell_edge(1, 0, 1), cell_edge(2, 1, 2)];
    for (i, &(from, to)) in decoration.iter().enumerate() {
        edges.push(cell_edge(3 + i as i64, from, to));
    }
    FundamentalCell {
        name: name.to_string(),
        generators: 1,
        vertices,
        edges,
        identifications: vec![Identification {
            generator: 1,
            plus: 2,
            minus: 0,
        }],
    }
}

pub fn build_example(name: &str) -> Result<GraphTemplate> {
    let name: ExampleName = name.parse()?;
    Ok(example_template(name))
}

pub fn example_template(name: ExampleName) -> GraphTemplate {
    let form = match name {
        ExampleName::Lasso => TemplateForm::Magnetic(MagneticGraph {
            name: "lasso".into(),
            generators: 1,
            vertices: vec![0, 1],
            edges: vec![
                MagneticEdge {
                    id: 1,
                    from: 0,
                    to: 0,
                    length: f64::NAN,
                    flux: vec![1],
                },
                MagneticEdge {
                    id: 2,
                    from: 1,
                    to: 0,
                    length: f64::NAN,
                    flux: vec![0],
                },
            ],
        }),
        ExampleName::Fig1b => TemplateForm::Cell(backbone_cell("fig1b", &[3], &[(3, 1)])),
        ExampleName::Fig1c => {
            TemplateForm::Cell(backbone_cell("fig1c", &[3, 4], &[(3, 1), (4, 3)]))
        }
        ExampleName::Fig1d => TemplateForm::Cell(backbone_cell(
            "fig1d",
            &[3, 4, 5],
            &[(3, 1), (3, 4), (4, 3), (5, 4)],
        )),
    };
    GraphTemplate { name, form }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn circle_cell(length: f64) -> FundamentalCell {
        FundamentalCell {
            name: "circle".into(),
            generators: 1,
            vertices: vec![0, 1],
            edges: vec![CellEdge {
                id: 1,
                from: 0,
                to: 1,
                length,
            }],
            identifications: vec![Identification {
                generator: 1,
                plus: 1,
                minus: 0,
            }],
        }
    }

    #[test]
    fn lasso_cell_is_valid() {
        let cell = example_template(ExampleName::Fig1b)
            .cell(&[1.0, 1.0, 1.0])
            .unwrap()
            .unwrap();
        assert!(validate_cell(&cell).is_valid());
    }

    #[test]
    fn zero_length_reported() {
        let mut cell = circle_cell(1.0);
        cell.edges[0].length = 0.0;
        let report = validate_cell(&cell);
        assert!(report.to_string().contains("nonpositive length"));
    }

    #[test]
    fn missing_identification_vertex_reported() {
        let mut cell = circle_cell(1.0);
        cell.identifications[0].minus = 9;
        let report = validate_cell(&cell);
        assert!(report.to_string().contains("unknown vertex 9"));
    }

    #[test]
    fn bad_generator_and_self_identification() {
        let mut cell = circle_cell(1.0);
        cell.identifications.push(Identification {
            generator: 2,
            plus: 0,
            minus: 0,
        });
        let report = validate_cell(&cell);
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, Violation::GeneratorOutOfRange { .. })));
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, Violation::SelfIdentification { .. })));
    }

    #[test]
    fn disconnected_cell_reported() {
        let mut cell = circle_cell(1.0);
        cell.vertices.push(7);
        assert!(matches!(
            validate_cell(&cell).violations[..],
            [Violation::Disconnected { components: 2 }]
        ));
    }

    #[test]
    fn conflicting_identifications_reported() {
        let mut cell = circle_cell(1.0);
        cell.generators = 2;
        cell.identifications.push(Identification {
            generator: 2,
            plus: 1,
            minus: 0,
        });
        assert!(matches!(
            validate_cell(&cell).violations[..],
            [Violation::ConflictingIdentification { .. }]
        ));
    }

    #[test]
    fn consistent_square_corner_accepted() {
        // Four corners of a square cell glued by two generators; the last
        // identification is redundant but consistent.
        let cell = FundamentalCell {
            name: "square".into(),
            generators: 2,
            vertices: vec![0, 1, 2, 3, 4],
            edges: (0..4)
                .map(|i| CellEdge {
                    id: i,
                    from: 4,
                    to: i,
                    length: 1.0,
                })
                .collect(),
            identifications: vec![
                Identification { generator: 1, plus: 1, minus: 0 },
                Identification { generator: 2, plus: 2, minus: 0 },
                Identification { generator: 1, plus: 3, minus: 2 },
                Identification { generator: 2, plus: 3, minus: 1 },
            ],
        };
        assert!(validate_cell(&cell).is_valid());
        let g = bloch_reduce(&cell).unwrap();
        assert_eq!(g.vertices, vec![0, 4]);
        let flux: Vec<_> = g.edges.iter().map(|e| e.flux.clone()).collect();
        assert_eq!(flux, vec![vec![0, 0], vec![-1, 0], vec![0, -1], vec![-1, -1]]);
    }

    #[test]
    fn reduce_without_generators_keeps_graph() {
        let cell = FundamentalCell {
            name: "star".into(),
            generators: 0,
            vertices: vec![0, 1, 2],
            edges: vec![
                CellEdge { id: 1, from: 0, to: 1, length: 1.5 },
                CellEdge { id: 2, from: 0, to: 2, length: 2.5 },
            ],
            identifications: vec![],
        };
        let g = bloch_reduce(&cell).unwrap();
        assert_eq!(g.vertices, cell.vertices);
        assert_eq!(g.edges.len(), 2);
        for (m, c) in g.edges.iter().zip(&cell.edges) {
            assert_eq!((m.id, m.from, m.to, m.length), (c.id, c.from, c.to, c.length));
            assert!(m.flux.is_empty());
        }
    }

    #[test]
    fn circle_self_loop_is_split() {
        let g = bloch_reduce(&circle_cell(3.0)).unwrap();
        assert_eq!(g.vertices, vec![0, 2]);
        assert_eq!(g.edges.len(), 2);
        assert_eq!(g.edges[0].length + g.edges[1].length, 3.0);
        assert_eq!(g.edges[0].flux, vec![-1]);
        assert_eq!(g.edges[1].flux, vec![0]);
        assert!(g.edges.iter().all(|e| !e.is_loop()));
        assert!(g.validate().is_valid());
        assert!(g.degrees().values().all(|&d| d == 2));
    }

    #[test]
    fn fig1b_reduces_to_flux_on_one_cycle() {
        let g = example_template(ExampleName::Fig1b)
            .bind(&[1.0, 1.0, 1.0])
            .unwrap();
        assert!(g.validate().is_valid());
        // v+ (2) is merged into v- (0).
        assert_eq!(g.vertices, vec![0, 1, 3]);
        let flux: Vec<i32> = g.edges.iter().map(|e| e.flux[0]).collect();
        // Only the backbone cycle 0 -> 1 -> 0 carries flux, exactly once.
        assert_eq!(flux, vec![0, -1, 0]);
        assert_eq!((g.edges[1].from, g.edges[1].to), (1, 0));
        let deg = g.degrees();
        assert_eq!(deg[&1], 3);
        assert_eq!(deg[&0], 2);
        assert_eq!(deg[&3], 1);
    }

    #[test]
    fn lasso_template_shape() {
        let g = build_example("lasso").unwrap().bind(&[1.0, 2.0]).unwrap();
        assert_eq!(g.edge_count(), 2);
        assert!(g.edges[0].is_loop());
        assert_eq!(g.edges[0].flux, vec![1]);
        assert_eq!(g.edges[1].flux, vec![0]);
        let deg: Vec<usize> = g.degrees().values().copied().collect();
        assert_eq!(deg, vec![3, 1]);
    }

    #[test]
    fn fig1c_degree_sequence() {
        let g = build_example("fig1c")
            .unwrap()
            .bind(&[1.0, 1.1, 1.2, 1.3])
            .unwrap();
        let mut deg: Vec<usize> = g.degrees().values().copied().collect();
        deg.sort_unstable();
        assert_eq!(deg, vec![1, 2, 2, 3]);
    }

    #[test]
    fn fig1d_has_cycle_decoration() {
        let g = build_example("fig1d")
            .unwrap()
            .bind(&[1.0, 1.1, 1.2, 1.3, 1.4, 1.5])
            .unwrap();
        let mut deg: Vec<usize> = g.degrees().values().copied().collect();
        deg.sort_unstable();
        assert_eq!(deg, vec![1, 2, 3, 3, 3]);
        assert_eq!(g.edges.iter().filter(|e| e.flux[0] != 0).count(), 1);
    }

    #[test]
    fn unknown_example_and_bad_slot_count() {
        assert!(matches!(build_example("fig1e"), Err(Error::UnknownExample(_))));
        assert!(matches!(
            build_example("lasso").unwrap().bind(&[1.0]),
            Err(Error::LengthCount { expected: 2, got: 1 })
        ));
        assert!(build_example("lasso").unwrap().bind(&[1.0, -1.0]).is_err());
    }

    #[test]
    fn reduce_rejects_invalid_cell() {
        let mut cell = circle_cell(1.0);
        cell.edges[0].to = 5;
        assert!(matches!(bloch_reduce(&cell), Err(Error::InvalidGraph(_))));
    }
}
