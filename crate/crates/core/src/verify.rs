//! Verification of the census against published reference counts.
//!
//! The expected values live in [`ExpectationTable::published`] as plain
//! data. Because the source text never states whether its isomorphism
//! identifies mirror images, verification runs both equivalence modes and
//! adopts whichever matches more published values; the report records the
//! adopted mode and whether the other mode differs anywhere, so the
//! convention is measured rather than assumed.

use std::collections::BTreeMap;
use std::fmt;
use std::time::Duration;

use crate::canon::{EquivalenceMode, Surface};
use crate::census::{decomposition, enumerate_plane, CensusError, SweepStats};

/// Reference counts to verify against. `None` marks an edge count whose
/// value is reported as a derived finding instead of being checked.
#[derive(Clone, Debug)]
pub struct ExpectationTable {
    pub sphere: Vec<(usize, Option<usize>)>,
    pub plane: Vec<(usize, Option<usize>)>,
    /// Edge count at which the face-orbit decomposition is checked.
    pub decomposition_at: usize,
    /// Expected histogram: face-orbit count per spherical class -> classes.
    pub decomposition: BTreeMap<usize, usize>,
}

impl ExpectationTable {
    /// The published reference counts: sphere classes for one, two, and
    /// four edges (the three-edge total appears only as a figure), plane
    /// classes for one through four edges, and the four-edge decomposition
    /// behind the arithmetic 4 + 2*15 + 3*7 = 55.
    pub fn published() -> Self {
        ExpectationTable {
            sphere: vec![(1, Some(2)), (2, Some(4)), (3, None), (4, Some(26))],
            plane: vec![(1, Some(2)), (2, Some(6)), (3, Some(25)), (4, Some(55))],
            decomposition_at: 4,
            decomposition: BTreeMap::from([(1, 4), (2, 15), (3, 7)]),
        }
    }

    fn expected(&self, surface: Surface, edge_count: usize) -> Option<usize> {
        let rows = match surface {
            Surface::Sphere => &self.sphere,
            Surface::Plane => &self.plane,
        };
        rows.iter()
            .find(|(e, _)| *e == edge_count)
            .and_then(|(_, v)| *v)
    }
}

/// One (edge count, surface) comparison.
#[derive(Clone, Debug)]
pub struct CountRow {
    pub edge_count: usize,
    pub surface: Surface,
    pub expected: Option<usize>,
    pub actual: usize,
    /// Class codes, kept only when the row mismatches so the report can
    /// show what was actually found.
    pub codes: Vec<String>,
}

impl CountRow {
    /// `None` when there is nothing to check (derived finding).
    pub fn matches(&self) -> Option<bool> {
        self.expected.map(|e| e == self.actual)
    }
}

/// Everything measured in one equivalence mode.
#[derive(Clone, Debug)]
pub struct ModeReport {
    pub mode: EquivalenceMode,
    pub rows: Vec<CountRow>,
    pub decomposition_expected: Option<BTreeMap<usize, usize>>,
    pub decomposition_actual: Option<BTreeMap<usize, usize>>,
    /// Sweep tallies per edge count, as a sanity statistic.
    pub stats: Vec<(usize, SweepStats)>,
    pub elapsed: Duration,
    /// Published values matched / checkable.
    pub matched: usize,
    pub applicable: usize,
}

impl ModeReport {
    pub fn pass(&self) -> bool {
        self.matched == self.applicable
    }

    fn decomposition_matches(&self) -> Option<bool> {
        match (&self.decomposition_expected, &self.decomposition_actual) {
            (Some(e), Some(a)) => Some(e == a),
            _ => None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub max_edges: usize,
    pub oriented: ModeReport,
    pub full: ModeReport,
    pub adopted: EquivalenceMode,
    /// Whether the two modes produced different counts anywhere in range.
    pub modes_differ: bool,
    pub first_difference: Option<String>,
}

impl VerificationReport {
    pub fn adopted_report(&self) -> &ModeReport {
        match self.adopted {
            EquivalenceMode::Oriented => &self.oriented,
            EquivalenceMode::Full => &self.full,
        }
    }

    /// PASS iff some mode matches every checkable published value.
    pub fn pass(&self) -> bool {
        self.oriented.pass() || self.full.pass()
    }
}

fn run_mode(
    table: &ExpectationTable,
    max_edges: usize,
    mode: EquivalenceMode,
) -> Result<ModeReport, CensusError> {
    let started = std::time::Instant::now();
    let mut rows = Vec::new();
    let mut stats = Vec::new();
    let mut decomposition_actual = None;
    for edge_count in 1..=max_edges {
        let plane = enumerate_plane(edge_count, mode)?;
        stats.push((edge_count, plane.sphere.stats));
        if edge_count == table.decomposition_at {
            decomposition_actual = Some(decomposition(&plane.sphere));
        }
        let sphere_expected = table.expected(Surface::Sphere, edge_count);
        let sphere_actual = plane.sphere.entries.len();
        let sphere_codes = if sphere_expected.is_some_and(|e| e != sphere_actual) {
            plane
                .sphere
                .entries
                .iter()
                .map(|en| en.code.to_string())
                .collect()
        } else {
            Vec::new()
        };
        rows.push(CountRow {
            edge_count,
            surface: Surface::Sphere,
            expected: sphere_expected,
            actual: sphere_actual,
            codes: sphere_codes,
        });
        let plane_expected = table.expected(Surface::Plane, edge_count);
        let plane_actual = plane.entries.len();
        let plane_codes = if plane_expected.is_some_and(|e| e != plane_actual) {
            plane.entries.iter().map(|en| en.code.to_string()).collect()
        } else {
            Vec::new()
        };
        rows.push(CountRow {
            edge_count,
            surface: Surface::Plane,
            expected: plane_expected,
            actual: plane_actual,
            codes: plane_codes,
        });
    }
    let decomposition_expected = if max_edges >= table.decomposition_at {
        Some(table.decomposition.clone())
    } else {
        None
    };
    let mut matched = 0;
    let mut applicable = 0;
    for row in &rows {
        if let Some(ok) = row.matches() {
            applicable += 1;
            if ok {
                matched += 1;
            }
        }
    }
    if let (Some(e), Some(a)) = (&decomposition_expected, &decomposition_actual) {
        applicable += 1;
        if e == a {
            matched += 1;
        }
    }
    Ok(ModeReport {
        mode,
        rows,
        decomposition_expected,
        decomposition_actual,
        stats,
        elapsed: started.elapsed(),
        matched,
        applicable,
    })
}

/// Runs both modes against `table` and adopts the better-matching one
/// (ties go to [`EquivalenceMode::Full`], which identifies mirror images).
pub fn run_verification_with(
    table: &ExpectationTable,
    max_edges: usize,
) -> Result<VerificationReport, CensusError> {
    // Reject out-of-guard ranges before enumerating anything; otherwise the
    // in-guard prefix would burn hours before the guard fires.
    if max_edges > crate::census::MAX_EDGES {
        return Err(CensusError::EdgeGuard {
            edges: max_edges,
            max: crate::census::MAX_EDGES,
        });
    }
    let oriented = run_mode(table, max_edges, EquivalenceMode::Oriented)?;
    let full = run_mode(table, max_edges, EquivalenceMode::Full)?;

    let mut first_difference = None;
    for (o, f) in oriented.rows.iter().zip(&full.rows) {
        if o.actual != f.actual && first_difference.is_none() {
            first_difference = Some(format!(
                "{} at {} edges: oriented {}, full {}",
                o.surface, o.edge_count, o.actual, f.actual
            ));
        }
    }
    if first_difference.is_none()
        && oriented.decomposition_actual != full.decomposition_actual
    {
        first_difference = Some("face-orbit decomposition".to_string());
    }
    let adopted = if oriented.matched > full.matched {
        EquivalenceMode::Oriented
    } else {
        EquivalenceMode::Full
    };
    Ok(VerificationReport {
        max_edges,
        oriented,
        full,
        adopted,
        modes_differ: first_difference.is_some(),
        first_difference,
    })
}

/// Runs both modes against the published counts.
pub fn run_verification(max_edges: usize) -> Result<VerificationReport, CensusError> {
    run_verification_with(&ExpectationTable::published(), max_edges)
}

fn write_histogram(f: &mut fmt::Formatter<'_>, h: &BTreeMap<usize, usize>) -> fmt::Result {
    write!(f, "{{")?;
    for (i, (orbits, count)) in h.iter().enumerate() {
        if i > 0 {
            write!(f, ", ")?;
        }
        write!(f, "{orbits}: {count}")?;
    }
    write!(f, "}}")
}

impl fmt::Display for ModeReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "mode {} ({:.3}s):",
            self.mode,
            self.elapsed.as_secs_f64()
        )?;
        writeln!(f, "  edges  surface  expected   actual  result")?;
        for row in &self.rows {
            let expected = match row.expected {
                Some(v) => v.to_string(),
                None => "-".to_string(),
            };
            let result = match row.matches() {
                Some(true) => "match",
                Some(false) => "MISMATCH",
                None => "reported (no published total)",
            };
            writeln!(
                f,
                "  {:>5}  {:<7}  {:>8}  {:>7}  {}",
                row.edge_count, row.surface.to_string(), expected, row.actual, result
            )?;
        }
        if let (Some(expected), Some(actual)) =
            (&self.decomposition_expected, &self.decomposition_actual)
        {
            write!(
                f,
                "  face-orbit decomposition at {} edges: expected ",
                self.rows.last().map(|r| r.edge_count).unwrap_or(0)
            )?;
            write_histogram(f, expected)?;
            write!(f, ", actual ")?;
            write_histogram(f, actual)?;
            writeln!(
                f,
                "  {}",
                if self.decomposition_matches() == Some(true) {
                    "match"
                } else {
                    "MISMATCH"
                }
            )?;
        }
        for (edge_count, s) in &self.stats {
            writeln!(
                f,
                "  sweep e={}: {} permutations ({} disconnected, {} positive genus, {} spherical)",
                edge_count, s.permutations, s.disconnected, s.positive_genus, s.spherical
            )?;
        }
        let mismatched: Vec<&CountRow> = self
            .rows
            .iter()
            .filter(|r| r.matches() == Some(false))
            .collect();
        for row in mismatched {
            writeln!(
                f,
                "  mismatch detail: {} at {} edges expected {} classes, found {}:",
                row.surface,
                row.edge_count,
                row.expected.unwrap_or(0),
                row.actual
            )?;
            for code in row.codes.iter().take(12) {
                writeln!(f, "    {code}")?;
            }
            if row.codes.len() > 12 {
                writeln!(f, "    ... and {} more", row.codes.len() - 12)?;
            }
        }
        writeln!(
            f,
            "  matched {} of {} published values",
            self.matched, self.applicable
        )
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "verification against published counts (edges 1..={})",
            self.max_edges
        )?;
        writeln!(f)?;
        self.oriented.fmt(f)?;
        writeln!(f)?;
        self.full.fmt(f)?;
        writeln!(f)?;
        match &self.first_difference {
            Some(diff) => writeln!(f, "modes differ: yes (first difference: {diff})")?,
            None => writeln!(f, "modes differ: no (both give the same counts in range)")?,
        }
        writeln!(
            f,
            "adopted mode: {} (matched {} of {} published values{})",
            self.adopted,
            self.adopted_report().matched,
            self.adopted_report().applicable,
            if self.oriented.matched == self.full.matched {
                "; tie broken toward full"
            } else {
                ""
            }
        )?;
        writeln!(f, "result: {}", if self.pass() { "PASS" } else { "FAIL" })
    }
}
