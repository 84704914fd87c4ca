use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use nefdisc_core::census::{self, CIDescriptor, MonodromyMatrix};
use nefdisc_core::discriminant::{
    build_discriminant, classify_vertices, smooth_bivalent, standard_triangulation, tropical_dual_graph, GraphDoc,
    VertexKind,
};
use nefdisc_core::figures::{subdivision_svg, tropical_svg, Palette};
use nefdisc_core::fixtures;
use nefdisc_core::geometry::json::PolytopeDoc;
use nefdisc_core::geometry::{convex_hull, polar_dual};
use nefdisc_core::nef::{NefPartition, NefPartitionData, PartitionDoc};
use nefdisc_core::sigma::{sigma_cells, sigma_euler, CayleySubdivision, Side, SubdivisionCell, SubdivisionDoc};
use nefdisc_core::{Polytope, RationalPoint};
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::Value;

use crate::error::CliError;
use crate::{Format, Io, Kind, Source};

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })?;
    serde_json::from_str(&text).map_err(|source| CliError::Json { path: path.to_path_buf(), source })
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

fn emit(io: &Io, text: &str) -> Result<(), CliError> {
    match &io.output {
        Some(path) => write_file(path, text),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|source| CliError::Io { path: PathBuf::from("<stdout>"), source })
        }
    }
}

fn pretty<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serialises");
    s.push('\n');
    s
}

fn format(io: &Io, allowed: &[Format]) -> Result<Format, CliError> {
    let f = io.format.unwrap_or(allowed[0]);
    if allowed.contains(&f) {
        Ok(f)
    } else {
        Err(CliError::Usage(format!("format {f:?} is not available for this command").to_lowercase()))
    }
}

fn single_input(io: &Io) -> Result<Option<&Path>, CliError> {
    match io.inputs.as_slice() {
        [] => Ok(None),
        [p] => Ok(Some(p)),
        _ => Err(CliError::Usage("this command takes one input file".into())),
    }
}

/// `"0,1,2,3;4,5"` into vertex groups.
pub fn parse_parts(text: &str) -> Result<Vec<Vec<usize>>, CliError> {
    text.split(';')
        .map(|group| {
            group
                .split(',')
                .map(|x| x.trim().parse::<usize>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|_| CliError::Usage(format!("cannot read vertex group {group:?}")))
        })
        .collect()
}

/// The partition named by the first input file (a partition document, or a
/// polytope document plus `--parts`) or by `--degrees`.
fn load_partition(io: &Io, source: &Source) -> Result<NefPartition, CliError> {
    let Some(path) = io.inputs.first() else {
        if source.degrees.is_empty() {
            return Err(CliError::Usage("give an input file or --degrees".into()));
        }
        return Ok(NefPartition::projective(&source.degrees)?);
    };
    let value: Value = read_json(path)?;
    let bad = |source| CliError::Json { path: path.clone(), source };
    if value.get("parts").is_some() {
        let doc: PartitionDoc = serde_json::from_value(value).map_err(bad)?;
        return Ok(doc.to_partition()?);
    }
    let doc: PolytopeDoc = serde_json::from_value(value).map_err(bad)?;
    let Some(parts) = &source.parts else {
        return Err(CliError::Usage("a bare polytope needs --parts".into()));
    };
    Ok(NefPartition::new(doc.to_polytope()?, parse_parts(parts)?)?)
}

struct Instance {
    data: NefPartitionData,
    s_subs: Vec<CayleySubdivision>,
    t_subs: Vec<CayleySubdivision>,
}

/// Without input files the bundled instance with the given degrees is used,
/// subdivisions included.
fn load_instance(io: &Io, source: &Source) -> Result<Instance, CliError> {
    if io.inputs.is_empty() {
        let Some((name, ..)) = fixtures::INSTANCES.iter().find(|(_, d, ..)| *d == source.degrees.as_slice()) else {
            let known: Vec<String> = fixtures::INSTANCES.iter().map(|(_, d, ..)| format!("{d:?}")).collect();
            return Err(CliError::Usage(format!(
                "no bundled instance with degrees {:?}; known: {}",
                source.degrees,
                known.join(" ")
            )));
        };
        let (data, t_subs) = fixtures::load(name)?;
        return Ok(Instance { data, s_subs: Vec::new(), t_subs });
    }
    let data = load_partition(io, source)?.build()?;
    let (mut s_subs, mut t_subs) = (Vec::new(), Vec::new());
    for path in &io.inputs[1..] {
        let value: Value = read_json(path)?;
        let docs: Vec<SubdivisionDoc> = if value.is_array() {
            serde_json::from_value(value)
        } else {
            serde_json::from_value(value).map(|d| vec![d])
        }
        .map_err(|source| CliError::Json { path: path.clone(), source })?;
        for d in &docs {
            let sub = CayleySubdivision::from_doc(d)?;
            match sub.side {
                Side::NablaCheck => s_subs.push(sub),
                Side::DeltaCheck => t_subs.push(sub),
            }
        }
    }
    Ok(Instance { data, s_subs, t_subs })
}

pub fn dual(io: &Io, ambient: Option<usize>) -> Result<(), CliError> {
    format(io, &[Format::Json])?;
    let p: Polytope = match (single_input(io)?, ambient) {
        (Some(path), None) => read_json::<PolytopeDoc>(path)?.to_polytope()?,
        (None, Some(n)) if n > 0 => NefPartition::projective(&[n + 1])?.nabla_check().clone(),
        (None, Some(_)) => return Err(CliError::Usage("--ambient must be positive".into())),
        (Some(_), Some(_)) => return Err(CliError::Usage("give either an input file or --ambient".into())),
        (None, None) => return Err(CliError::Usage("give an input file or --ambient".into())),
    };
    emit(io, &pretty(&PolytopeDoc::from_polytope(&polar_dual(&p)?)))
}

#[derive(Serialize)]
struct VertexCounts {
    nabla_check: usize,
    nabla: usize,
    delta: usize,
    delta_check: usize,
}

#[derive(Serialize)]
struct NefReport {
    nef: bool,
    irreducible: bool,
    r: usize,
    cy_dim: usize,
    parts: Vec<Vec<usize>>,
    part_sizes: Vec<usize>,
    vertex_counts: VertexCounts,
    nabla_parts: Vec<PolytopeDoc>,
    delta_parts: Vec<PolytopeDoc>,
}

pub fn nefcheck(io: &Io, source: &Source) -> Result<(), CliError> {
    format(io, &[Format::Json])?;
    single_input(io)?;
    let np = load_partition(io, source)?;
    let data = np.build()?;
    let report = NefReport {
        nef: true,
        irreducible: np.is_irreducible()?,
        r: np.r(),
        cy_dim: np.cy_dim(),
        parts: np.parts().to_vec(),
        part_sizes: np.part_sizes(),
        vertex_counts: VertexCounts {
            nabla_check: np.nabla_check().vertices().len(),
            nabla: data.nabla.vertices().len(),
            delta: data.delta.vertices().len(),
            delta_check: data.delta_check.vertices().len(),
        },
        nabla_parts: data.nabla_parts.iter().map(PolytopeDoc::from_polytope).collect(),
        delta_parts: data.delta_parts.iter().map(PolytopeDoc::from_polytope).collect(),
    };
    emit(io, &pretty(&report))
}

pub fn mirror(io: &Io, source: &Source) -> Result<(), CliError> {
    format(io, &[Format::Json])?;
    single_input(io)?;
    let data = load_partition(io, source)?.build()?;
    emit(io, &pretty(&PartitionDoc::from_partition(&data.mirror_partition()?)))
}

#[derive(Serialize)]
struct CellSummary {
    sigma: usize,
    tau: usize,
    dims: [usize; 2],
    component_dims: Vec<[usize; 2]>,
    smooth: bool,
}

#[derive(Serialize)]
struct SigmaReport {
    n: usize,
    r: usize,
    s_faces: usize,
    t_faces: usize,
    adjoint_pairs: Vec<[usize; 2]>,
    f_vector: Vec<usize>,
    euler: i64,
    smooth: usize,
    non_smooth: usize,
    cells: Vec<CellSummary>,
}

pub fn sigma(io: &Io, source: &Source) -> Result<(), CliError> {
    format(io, &[Format::Json])?;
    let inst = load_instance(io, source)?;
    let complex = sigma_cells(&inst.data, &inst.s_subs, &inst.t_subs)?;
    let euler = sigma_euler(&complex)?;
    let smooth = complex.cells.iter().filter(|c| c.smooth).count();
    let report = SigmaReport {
        n: complex.n,
        r: complex.r,
        s_faces: complex.table.s_faces.len(),
        t_faces: complex.table.t_faces.len(),
        adjoint_pairs: complex.table.pairs.iter().map(|p| [p.s, p.t]).collect(),
        f_vector: complex.f_vector(),
        euler,
        smooth,
        non_smooth: complex.cells.len() - smooth,
        cells: complex
            .cells
            .iter()
            .map(|c| CellSummary {
                sigma: c.sigma,
                tau: c.tau,
                dims: [c.dims.0, c.dims.1],
                component_dims: c.component_dims.iter().map(|&(a, b)| [a, b]).collect(),
                smooth: c.smooth,
            })
            .collect(),
    };
    emit(io, &pretty(&report))
}

#[derive(Serialize)]
struct DiscriminantReport {
    n: usize,
    /// Vertex signs and the graph Euler count exist for threefolds only.
    #[serde(skip_serializing_if = "Option::is_none")]
    positive: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    negative: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    euler: Option<i64>,
    sigma_euler: i64,
    graph: GraphDoc,
}

pub fn discriminant(io: &Io, source: &Source, dot: Option<&Path>) -> Result<(), CliError> {
    let f = format(io, &[Format::Json, Format::Dot])?;
    let inst = load_instance(io, source)?;
    let complex = sigma_cells(&inst.data, &inst.s_subs, &inst.t_subs)?;
    let chi = sigma_euler(&complex)?;
    let mut graph = build_discriminant(&complex)?;
    let signed = complex.n == 3;
    if signed {
        graph = smooth_bivalent(&classify_vertices(&graph)?);
    }
    if let Some(path) = dot {
        write_file(path, &graph.to_dot())?;
    }
    if f == Format::Dot {
        return emit(io, &graph.to_dot());
    }
    let summary = graph.summary();
    let report = DiscriminantReport {
        n: complex.n,
        positive: signed.then_some(summary.positive),
        negative: signed.then_some(summary.negative),
        euler: signed.then_some(summary.euler),
        sigma_euler: chi,
        graph: graph.to_doc(),
    };
    emit(io, &pretty(&report))
}

pub fn census(io: &Io, degrees: Vec<usize>, ambient: Option<usize>, strata: bool) -> Result<(), CliError> {
    format(io, &[Format::Json])?;
    if !io.inputs.is_empty() {
        return Err(CliError::Usage("census takes no input files".into()));
    }
    let ci = match ambient {
        Some(n) => CIDescriptor::new(n, degrees)?,
        None => CIDescriptor::from_degrees(degrees)?,
    };
    emit(io, &pretty(&census::census_report(&ci, strata)?))
}

pub fn monodromy(io: &Io, kind: Kind) -> Result<(), CliError> {
    format(io, &[Format::Json])?;
    let vertex_kind = match kind {
        Kind::Positive => VertexKind::Positive,
        Kind::Negative => VertexKind::Negative,
    };
    let triple: [MonodromyMatrix; 3] = match single_input(io)? {
        Some(path) => {
            let list: Vec<MonodromyMatrix> = read_json(path)?;
            let n = list.len();
            list.try_into()
                .map_err(|_| CliError::Usage(format!("{}: expected 3 matrices, found {n}", path.display())))?
        }
        None => census::standard_triple(vertex_kind).expect("positive and negative have standard triples"),
    };
    emit(io, &pretty(&census::monodromy_check(&triple, vertex_kind)?))
}

fn degree_triangle(k: i64) -> (Polytope, CayleySubdivision) {
    let p = |a, b| RationalPoint::from_i64(&[a, b]);
    let polygon = convex_hull(&[p(0, 0), p(k, 0), p(0, k)], 2).expect("triangle");
    let cells = standard_triangulation(k)
        .into_iter()
        .map(|t| SubdivisionCell { parts: vec![t.to_vec()] })
        .collect();
    (polygon, CayleySubdivision { side: Side::DeltaCheck, face: Vec::new(), cells })
}

pub fn plot(io: &Io, tropical: bool, tropical_degree: Option<i64>) -> Result<(), CliError> {
    format(io, &[Format::Svg])?;
    let input = single_input(io)?;
    let svg = match (input, tropical_degree) {
        (None, Some(k)) if k >= 1 => {
            let (polygon, sub) = degree_triangle(k);
            tropical_svg(&tropical_dual_graph(&polygon, &sub)?)?
        }
        (None, Some(_)) => return Err(CliError::Usage("--tropical-degree must be at least 1".into())),
        (Some(path), None) => {
            let sub = CayleySubdivision::from_doc(&read_json::<SubdivisionDoc>(path)?)?;
            if tropical {
                let pts: Vec<RationalPoint> =
                    sub.cells.iter().flat_map(|c| c.parts.iter().flatten().cloned()).collect();
                let d = pts.first().map_or(0, |p| p.dim());
                let polygon = convex_hull(&pts, d)?;
                tropical_svg(&tropical_dual_graph(&polygon, &sub)?)?
            } else {
                subdivision_svg(&sub, &Palette::default())?
            }
        }
        (Some(_), Some(_)) => return Err(CliError::Usage("give either an input file or --tropical-degree".into())),
        (None, None) => return Err(CliError::Usage("give an input file or --tropical-degree".into())),
    };
    emit(io, &svg)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parts_parse() {
        assert_eq!(parse_parts("0,1,2,3;4,5").unwrap(), vec![vec![0, 1, 2, 3], vec![4, 5]]);
        assert_eq!(parse_parts(" 2 ; 0,1").unwrap(), vec![vec![2], vec![0, 1]]);
        assert!(parse_parts("0,x").is_err());
        assert!(parse_parts("0;;1").is_err());
    }
}
