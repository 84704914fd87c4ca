//! The bundled example inputs: standard nef partitions of projective simplices
//! with regular triangulations of the faces that carry discriminant cells.

use thiserror::Error;

use crate::geometry::json::DocError;
use crate::nef::{NefError, NefPartitionData, PartitionDoc, PartitionDocError};
use crate::sigma::{CayleySubdivision, SubdivisionDoc};

#[derive(Debug, Error)]
pub enum FixtureError {
    #[error("unknown fixture {0:?}")]
    Unknown(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Doc(#[from] DocError),
    #[error(transparent)]
    Partition(#[from] PartitionDocError),
    #[error(transparent)]
    Nef(#[from] NefError),
}

/// `(name, degrees, partition json, subdivisions json)`.
pub const INSTANCES: &[(&str, &[usize], &str, &str)] = &[
    (
        "p5_42",
        &[4, 2],
        include_str!("../fixtures/p5_42_partition.json"),
        include_str!("../fixtures/p5_42_subdivisions.json"),
    ),
    (
        "quintic",
        &[5],
        include_str!("../fixtures/quintic_partition.json"),
        include_str!("../fixtures/quintic_subdivisions.json"),
    ),
    (
        "p5_33",
        &[3, 3],
        include_str!("../fixtures/p5_33_partition.json"),
        include_str!("../fixtures/p5_33_subdivisions.json"),
    ),
    (
        "p6_322",
        &[3, 2, 2],
        include_str!("../fixtures/p6_322_partition.json"),
        include_str!("../fixtures/p6_322_subdivisions.json"),
    ),
    (
        "p7_2222",
        &[2, 2, 2, 2],
        include_str!("../fixtures/p7_2222_partition.json"),
        include_str!("../fixtures/p7_2222_subdivisions.json"),
    ),
    (
        "quartic",
        &[4],
        include_str!("../fixtures/quartic_partition.json"),
        include_str!("../fixtures/quartic_subdivisions.json"),
    ),
    (
        "p4_32",
        &[3, 2],
        include_str!("../fixtures/p4_32_partition.json"),
        include_str!("../fixtures/p4_32_subdivisions.json"),
    ),
    (
        "p5_222",
        &[2, 2, 2],
        include_str!("../fixtures/p5_222_partition.json"),
        include_str!("../fixtures/p5_222_subdivisions.json"),
    ),
];

pub const TRAPEZOID: &str = include_str!("../fixtures/trapezoid_subdivision.json");
pub const LARGE_TRIANGLE: &str = include_str!("../fixtures/large_triangle_subdivision.json");

pub fn parse_subdivisions(text: &str) -> Result<Vec<CayleySubdivision>, FixtureError> {
    let docs: Vec<SubdivisionDoc> = serde_json::from_str(text)?;
    Ok(docs.iter().map(CayleySubdivision::from_doc).collect::<Result<_, _>>()?)
}

pub fn parse_subdivision(text: &str) -> Result<CayleySubdivision, FixtureError> {
    let doc: SubdivisionDoc = serde_json::from_str(text)?;
    Ok(CayleySubdivision::from_doc(&doc)?)
}

/// Partition data and `Δ∨`-side subdivisions of a bundled instance.
pub fn load(name: &str) -> Result<(NefPartitionData, Vec<CayleySubdivision>), FixtureError> {
    let (_, _, partition, subdivisions) = INSTANCES
        .iter()
        .find(|(n, ..)| *n == name)
        .ok_or_else(|| FixtureError::Unknown(name.to_string()))?;
    let doc: PartitionDoc = serde_json::from_str(partition)?;
    let data = doc.to_partition()?.build()?;
    Ok((data, parse_subdivisions(subdivisions)?))
}
