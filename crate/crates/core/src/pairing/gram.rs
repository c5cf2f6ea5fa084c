use std::sync::Arc;

use super::linalg::{hermitian_eigenvalues, singular_values};
use super::{pair, spectralize, Form, SpectralVector};
use crate::error::{Error, Result};
use crate::mellin::TestFunction;
use crate::report::format_complex;
use crate::specfun::Complex;
use crate::zerofind::ZeroCatalog;

/// Pairing values between every two members of a family.
#[derive(Debug, Clone)]
pub struct Gram {
    pub form: Form,
    /// DSL text of each family member.
    pub labels: Vec<String>,
    pub entries: Vec<Vec<Complex>>,
    /// Largest truncation bound over all entries.
    pub truncation_bound: f64,
}

pub fn gram_matrix(family: &[TestFunction], form: Form, catalog: Arc<ZeroCatalog>) -> Result<Gram> {
    if family.is_empty() {
        return Err(Error::InvalidArgument("empty family".into()));
    }
    let vectors: Vec<SpectralVector> = family
        .iter()
        .map(|f| spectralize(f, catalog.clone()))
        .collect::<Result<_>>()?;
    let mut entries = Vec::with_capacity(vectors.len());
    let mut bound: f64 = 0.0;
    for u in &vectors {
        let mut row = Vec::with_capacity(vectors.len());
        for v in &vectors {
            let p = pair(form, u, v)?;
            bound = bound.max(p.truncation_bound);
            row.push(p.value);
        }
        entries.push(row);
    }
    Ok(Gram {
        form,
        labels: family.iter().map(TestFunction::to_string).collect(),
        entries,
        truncation_bound: bound,
    })
}

/// (min, max) eigenvalue of a Hermitian matrix.
pub fn psd_check(m: &[Vec<Complex>]) -> Result<(f64, f64)> {
    let eig = hermitian_eigenvalues(m)?;
    Ok((eig[0], eig[eig.len() - 1]))
}

/// Number of singular values above `threshold` times the largest.
pub fn numeric_rank(m: &[Vec<Complex>], threshold: f64) -> Result<usize> {
    let sv = singular_values(m)?;
    let top = sv[0];
    Ok(sv.iter().filter(|&&s| s > threshold * top).count())
}

impl Gram {
    /// CSV with a header row of DSL expressions; cells are `re+imi`.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let io = |e: csv::Error| Error::InvalidArgument(format!("csv: {e}"));
        w.write_record(&self.labels).map_err(io)?;
        for row in &self.entries {
            w.write_record(row.iter().map(|z| format_complex(*z))).map_err(io)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::InvalidArgument(format!("csv: {e}")))?;
        String::from_utf8(bytes).map_err(|e| Error::InvalidArgument(format!("csv: {e}")))
    }
}
