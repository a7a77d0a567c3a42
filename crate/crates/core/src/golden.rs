//! Golden files: deterministic renderings of every pipeline on every corpus
//! entry, checked in under `fixtures/golden`.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use crate::corpus::{corpus_example, fixture_complex, CorpusEntry, CorpusError, CORPUS_NAMES};
use crate::duality::{comparison_isomorphism, theorem_check_complex, DualityError};
use crate::exterior::{wedge_compose, ExteriorError, ExteriorMatrix};
use crate::linalg::QMatrix;
use crate::matrix::PolyMatrix;
use crate::resolution::{linear_strand_end, minimal_resolution, BettiTable, ResolutionError};
use crate::ring::Coeff;
use crate::textio::{format_exterior, format_matrix};

#[derive(Debug, thiserror::Error)]
pub enum GoldenError {
    #[error(transparent)]
    Corpus(#[from] CorpusError),
    #[error(transparent)]
    Resolution(#[from] ResolutionError),
    #[error(transparent)]
    Exterior(#[from] ExteriorError),
    #[error(transparent)]
    Duality(#[from] DualityError),
    #[error("{0}: {1}")]
    Io(PathBuf, std::io::Error),
}

/// Where the checked-in golden files live.
pub fn default_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join("golden")
}

fn constant(name: &str, entry: &CorpusEntry, m: &QMatrix) -> String {
    format_matrix(name, &PolyMatrix::from_constant(&entry.ring, m))
}

/// `λ` with `a = λ b`, if it exists and `b` is nonzero.
pub fn proportionality(a: &ExteriorMatrix, b: &ExteriorMatrix) -> Option<Coeff> {
    if a.nrows() != b.nrows() || a.ncols() != b.ncols() {
        return None;
    }
    let (r, c) = (0..b.nrows())
        .flat_map(|r| (0..b.ncols()).map(move |c| (r, c)))
        .find(|&(r, c)| !b.get(r, c).is_zero())?;
    let (idx, coeff) = b.get(r, c).terms().next()?;
    let lambda = a.get(r, c).coefficient(idx) / coeff;
    (b.scale(&lambda) == *a).then_some(lambda)
}

/// Renders all golden data for one entry.
pub fn render(entry: &CorpusEntry) -> Result<String, GoldenError> {
    let c = minimal_resolution(&entry.ideal)?;
    let mut s = String::new();
    let _ = writeln!(s, "# {}", entry.name);
    s.push_str("\n## betti\n");
    s.push_str(&BettiTable::from_complex(&c)?.to_kv());
    s.push_str("\n## resolution\n");
    for i in 1..=c.len() {
        s.push_str(&format_matrix(&format!("d{i}"), c.d(i)));
    }
    s.push_str("\n## wedge\n");
    let end = linear_strand_end(&c);
    for p in 2..=end {
        let d = wedge_compose(&c.differentials()[1..p])?;
        let (_, content) = d.primitive_part();
        let _ = writeln!(s, "D{p}.content = {content}");
        s.push_str(&format_exterior(&format!("D{p}"), &d));
    }
    s.push_str("\n## theorem\n");
    match theorem_check_complex(&c) {
        Ok(report) => {
            let d = &report.duality;
            let _ = writeln!(s, "twist = {}", d.twist);
            let _ = writeln!(s, "sign = {}", d.sign);
            let _ = writeln!(s, "symmetry = {}", report.symmetry.name());
            for (i, t) in d.transitions.iter().enumerate() {
                if *t != QMatrix::identity(t.nrows()) {
                    s.push_str(&constant(&format!("T{i}"), entry, t));
                }
            }
            if let Some(phi) = &d.pairing {
                s.push_str(&constant("phi", entry, phi));
            }
            for i in 1..=report.complex.len() {
                s.push_str(&format_matrix(&format!("selfdual_d{i}"), report.complex.d(i)));
            }
            s.push_str(&format_exterior(&format!("D{}", report.codimension - 1), &report.wedge));
            if let Some(fixture) = fixture_complex(entry) {
                s.push_str("\n## comparison\n");
                for (i, w) in comparison_isomorphism(&fixture, &report.complex)?.iter().enumerate() {
                    s.push_str(&constant(&format!("w{i}"), entry, w));
                }
            }
        }
        Err(e) => {
            let _ = writeln!(s, "failure = {e}");
            if let Some(fixture) = fixture_complex(entry) {
                s.push_str("\n## comparison\n");
                for (i, w) in comparison_isomorphism(&fixture, &c)?.iter().enumerate() {
                    s.push_str(&constant(&format!("w{i}"), entry, w));
                }
            }
        }
    }
    if let Some(reference) = entry.fixture.exterior(&format!("D{end}")) {
        if fixture_complex(entry).is_none() {
            let d = wedge_compose(&c.differentials()[1..end])?;
            s.push_str("\n## comparison\n");
            match proportionality(&d, reference) {
                Some(l) => {
                    let _ = writeln!(s, "D{end}.scale = {l}");
                }
                None => {
                    let _ = writeln!(s, "D{end}.scale = none");
                }
            }
        }
    }
    Ok(s)
}

/// Outcome of comparing one regenerated golden file.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Match,
    Differs,
    Missing,
    Written,
}

/// Regenerates every golden file and compares it with `dir`, or overwrites
/// it when `bless` is set.
pub fn verify(dir: &Path, bless: bool) -> Result<Vec<(&'static str, Status)>, GoldenError> {
    let mut out = Vec::new();
    for name in CORPUS_NAMES {
        let text = render(&corpus_example(name)?)?;
        let path = dir.join(format!("{name}.txt"));
        let status = if bless {
            std::fs::create_dir_all(dir).map_err(|e| GoldenError::Io(dir.to_path_buf(), e))?;
            std::fs::write(&path, &text).map_err(|e| GoldenError::Io(path.clone(), e))?;
            Status::Written
        } else {
            match std::fs::read_to_string(&path) {
                Ok(old) if old == text => Status::Match,
                Ok(_) => Status::Differs,
                Err(_) => Status::Missing,
            }
        };
        out.push((name, status));
    }
    Ok(out)
}
