//! Crate-level error with stable machine-readable kind names.

use thiserror::Error;

use crate::chains::ChainError;
use crate::complex::ComplexError;
use crate::imaging::ImagingError;
use crate::nerve::NerveError;
use crate::region::RegionError;
use crate::relator::RelatorError;
use crate::render::RenderError;
use crate::sewing::SewError;
use crate::triangulate::TriangulateError;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Region(#[from] RegionError),
    #[error(transparent)]
    Relator(#[from] RelatorError),
    #[error(transparent)]
    Chain(#[from] ChainError),
    #[error(transparent)]
    Nerve(#[from] NerveError),
    #[error(transparent)]
    Sew(#[from] SewError),
    #[error(transparent)]
    Triangulate(#[from] TriangulateError),
    #[error(transparent)]
    Imaging(#[from] ImagingError),
    #[error(transparent)]
    Render(#[from] RenderError),
}

const WRAPPERS: &[&str] = &[
    "Complex",
    "Region",
    "Relator",
    "Chain",
    "Nerve",
    "Sew",
    "Triangulate",
    "Imaging",
    "Render",
];

impl Error {
    /// Name of the innermost error variant, e.g. `"TooFewKeypoints"`.
    pub fn kind(&self) -> String {
        let debug = format!("{self:?}");
        let mut rest = debug.as_str();
        loop {
            let end = rest
                .find(|c: char| !c.is_ascii_alphanumeric() && c != '_')
                .unwrap_or(rest.len());
            let name = &rest[..end];
            if WRAPPERS.contains(&name) && rest[end..].starts_with('(') {
                rest = &rest[end + 1..];
            } else {
                return name.to_string();
            }
        }
    }
}
