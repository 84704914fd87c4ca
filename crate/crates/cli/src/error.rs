use std::path::PathBuf;

use nefdisc_core::census::CensusError;
use nefdisc_core::discriminant::DiscriminantError;
use nefdisc_core::figures::FigureError;
use nefdisc_core::fixtures::FixtureError;
use nefdisc_core::geometry::json::DocError;
use nefdisc_core::nef::{NefError, PartitionDocError};
use nefdisc_core::sigma::SigmaError;
use nefdisc_core::GeometryError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot access {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Json { path: PathBuf, source: serde_json::Error },
    #[error(transparent)]
    Doc(#[from] DocError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Nef(#[from] NefError),
    #[error(transparent)]
    Sigma(#[from] SigmaError),
    #[error(transparent)]
    Discriminant(#[from] DiscriminantError),
    #[error(transparent)]
    Census(#[from] CensusError),
    #[error(transparent)]
    Figure(#[from] FigureError),
    #[error(transparent)]
    Fixture(#[from] FixtureError),
}

impl From<PartitionDocError> for CliError {
    fn from(e: PartitionDocError) -> Self {
        match e {
            PartitionDocError::Doc(d) => CliError::Doc(d),
            PartitionDocError::Nef(n) => CliError::Nef(n),
        }
    }
}

impl CliError {
    /// 2 for input that cannot be read or parsed, 1 for input that parses but
    /// fails a mathematical check.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Io { .. } | CliError::Json { .. } | CliError::Fixture(_) => 2,
            CliError::Doc(DocError::Geometry(_)) => 1,
            CliError::Doc(_) => 2,
            _ => 1,
        }
    }

    /// Name of the innermost error variant, e.g. `NotNef` or `Unbounded`.
    pub fn kind(&self) -> String {
        match self {
            CliError::Usage(_) => "Usage".into(),
            CliError::Io { .. } => "Io".into(),
            CliError::Json { .. } => "Json".into(),
            CliError::Doc(e) => leaf_variant(&format!("{e:?}")),
            CliError::Geometry(e) => leaf_variant(&format!("{e:?}")),
            CliError::Nef(e) => leaf_variant(&format!("{e:?}")),
            CliError::Sigma(e) => leaf_variant(&format!("{e:?}")),
            CliError::Discriminant(e) => leaf_variant(&format!("{e:?}")),
            CliError::Census(e) => leaf_variant(&format!("{e:?}")),
            CliError::Figure(e) => leaf_variant(&format!("{e:?}")),
            CliError::Fixture(e) => leaf_variant(&format!("{e:?}")),
        }
    }
}

/// Follows `Outer(Inner(..))` in a derived Debug string down to the last
/// variant name.
fn leaf_variant(debug: &str) -> String {
    let mut rest = debug;
    loop {
        let end = rest.find(|c: char| !(c.is_alphanumeric() || c == '_')).unwrap_or(rest.len());
        let name = &rest[..end];
        let tail = &rest[end..];
        match tail.strip_prefix('(') {
            Some(inner) if inner.starts_with(|c: char| c.is_ascii_uppercase()) => rest = inner,
            _ => return name.to_string(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn leaf_variants() {
        assert_eq!(leaf_variant("Geometry(Unbounded)"), "Unbounded");
        assert_eq!(leaf_variant("NotNef(\"pairing\")"), "NotNef");
        assert_eq!(leaf_variant("Length { dim: 2, len: 3 }"), "Length");
        assert_eq!(leaf_variant("NotReflexive"), "NotReflexive");
    }

    #[test]
    fn exit_codes() {
        assert_eq!(CliError::Nef(NefError::NotReflexive).exit_code(), 1);
        assert_eq!(CliError::Doc(DocError::NoData).exit_code(), 2);
        assert_eq!(CliError::from(PartitionDocError::Nef(NefError::NotNef(String::new()))).exit_code(), 1);
        assert_eq!(CliError::Usage(String::new()).exit_code(), 2);
    }
}
