use std::collections::BTreeMap;
use std::fmt;

use super::{Complex, ResolutionError};
use crate::ring::binomial;

/// Graded Betti numbers `β_{p,j}`, nonzero entries only.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct BettiTable {
    entries: BTreeMap<(usize, i64), usize>,
}

impl BettiTable {
    /// Reads the table off a minimal complex.
    pub fn from_complex(c: &Complex) -> Result<BettiTable, ResolutionError> {
        for i in 1..=c.len() {
            if c.d(i).has_unit_entry() {
                return Err(ResolutionError::NotMinimal(i));
            }
        }
        let mut entries = BTreeMap::new();
        for (p, m) in c.modules().iter().enumerate() {
            for &t in m.twists() {
                *entries.entry((p, t)).or_insert(0) += 1;
            }
        }
        Ok(BettiTable { entries })
    }

    pub fn from_entries(entries: impl IntoIterator<Item = ((usize, i64), usize)>) -> Self {
        BettiTable {
            entries: entries.into_iter().filter(|(_, v)| *v > 0).collect(),
        }
    }

    pub fn get(&self, p: usize, j: i64) -> usize {
        self.entries.get(&(p, j)).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> impl Iterator<Item = ((usize, i64), usize)> + '_ {
        self.entries.iter().map(|(&k, &v)| (k, v))
    }

    pub fn projective_dimension(&self) -> usize {
        self.entries.keys().map(|k| k.0).max().unwrap_or(0)
    }

    /// Largest `j - p` with a nonzero entry.
    pub fn regularity(&self) -> i64 {
        self.entries.keys().map(|&(p, j)| j - p as i64).max().unwrap_or(0)
    }

    pub fn total(&self, p: usize) -> usize {
        self.entries.iter().filter(|(k, _)| k.0 == p).map(|(_, v)| v).sum()
    }

    /// `betti.p.j = v` lines.
    pub fn to_kv(&self) -> String {
        self.entries
            .iter()
            .map(|((p, j), v)| format!("betti.{p}.{j} = {v}\n"))
            .collect()
    }
}

impl fmt::Display for BettiTable {
    /// Rows are `q = j - p`, columns are `p`; zeros print as `.`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pd = self.projective_dimension();
        let qmin = self.entries.keys().map(|&(p, j)| j - p as i64).min().unwrap_or(0);
        let qmax = self.regularity();
        let mut cells: Vec<Vec<String>> = Vec::new();
        let header: Vec<String> = (0..=pd).map(|p| p.to_string()).collect();
        let totals: Vec<String> = (0..=pd).map(|p| self.total(p).to_string()).collect();
        cells.push(header);
        cells.push(totals);
        for q in qmin..=qmax {
            cells.push(
                (0..=pd)
                    .map(|p| match self.get(p, q + p as i64) {
                        0 => ".".to_string(),
                        v => v.to_string(),
                    })
                    .collect(),
            );
        }
        let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
        let labels: Vec<String> = std::iter::once(String::new())
            .chain(std::iter::once("total:".to_string()))
            .chain((qmin..=qmax).map(|q| format!("{q}:")))
            .collect();
        let lw = labels.iter().map(String::len).max().unwrap();
        for (label, row) in labels.iter().zip(&cells) {
            let body: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
            writeln!(f, "{label:>lw$} {}", body.join(" "))?;
        }
        Ok(())
    }
}

/// `β_{p,p+1} = p·C(e+1, p+1) − C(e, p−1)` for a del Pezzo variety of
/// codimension `e`.
pub fn hoa_betti(e: i64, p: i64) -> Result<i64, ResolutionError> {
    if e < 3 || p < 1 || p > e - 1 {
        return Err(ResolutionError::OutOfRange { e, p });
    }
    Ok(p * binomial(e + 1, p + 1) - binomial(e, p - 1))
}
