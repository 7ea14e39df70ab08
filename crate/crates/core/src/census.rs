//! Exhaustive census of embedded multigraphs by edge count.
//!
//! With the pairing involution fixed as `2i <-> 2i+1`, every labeled map on
//! `e` edges is a choice of rotation `sigma` among the `(2e)!` permutations
//! of the darts. The sweep scans all of them, keeps the connected genus-0
//! ones, and dedups by canonical code. That brute force is the point: no
//! generation cleverness whose bugs could silently drop a class. The guard
//! `MAX_EDGES` keeps the factorial in check.
//!
//! Plane graphs are derived from the spherical census: choosing an outer
//! face from each automorphism orbit of faces gives each plane class exactly
//! once. A second, independent path (rooting every sphere class at every
//! face and dedupping plane codes) must agree, or enumeration fails loudly.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use thiserror::Error;

use crate::canon::{
    automorphism_face_orbits, canonical_code_plane, CanonicalCode, CodeSearch, EquivalenceMode,
    PlaneGraph, Reconstructed, Surface,
};
use crate::map::{CombinatorialMap, MapSummary};

/// Largest edge count the sweep accepts; `(2 * MAX_EDGES)!` permutations is
/// already half a billion.
pub const MAX_EDGES: usize = 6;

const FACTORIALS: [u64; 13] = [
    1,
    1,
    2,
    6,
    24,
    120,
    720,
    5040,
    40320,
    362880,
    3628800,
    39916800,
    479001600,
];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CensusError {
    #[error("edge count must be at least 1")]
    InvalidEdgeCount,
    #[error("edge count {edges} exceeds the sweep guard of {max}")]
    EdgeGuard { edges: usize, max: usize },
    #[error(
        "plane census paths disagree at {edge_count} edges: {orbit_total} classes from face \
         orbits, {direct_total} from direct rooting"
    )]
    DualPathMismatch {
        edge_count: usize,
        orbit_total: usize,
        direct_total: usize,
    },
}

/// Tallies from one labeled sweep. Every scanned permutation lands in
/// exactly one of the three outcome buckets.
#[derive(Clone, Copy, Default, PartialEq, Eq, Debug)]
pub struct SweepStats {
    pub permutations: u64,
    pub disconnected: u64,
    pub positive_genus: u64,
    pub spherical: u64,
}

impl SweepStats {
    fn merge(mut self, other: SweepStats) -> SweepStats {
        self.permutations += other.permutations;
        self.disconnected += other.disconnected;
        self.positive_genus += other.positive_genus;
        self.spherical += other.spherical;
        self
    }
}

/// One isomorphism class of spherical maps.
#[derive(Clone, Debug)]
pub struct SphereEntry {
    pub code: CanonicalCode,
    pub representative: CombinatorialMap,
    pub summary: MapSummary,
    /// Orbits of face indices under the automorphism group; one plane class
    /// per orbit.
    pub face_orbits: Vec<Vec<usize>>,
}

#[derive(Clone, Debug)]
pub struct SphereCatalog {
    pub edge_count: usize,
    pub mode: EquivalenceMode,
    /// Sorted by code.
    pub entries: Vec<SphereEntry>,
    pub stats: SweepStats,
}

/// One isomorphism class of plane graphs.
#[derive(Clone, Debug)]
pub struct PlaneEntry {
    pub code: CanonicalCode,
    pub representative: PlaneGraph,
    pub summary: MapSummary,
    pub outer_face_degree: usize,
    /// Spherical class this plane graph lies over.
    pub parent_sphere_code: CanonicalCode,
    /// Which face orbit of the parent the outer face belongs to.
    pub face_orbit_index: usize,
}

#[derive(Clone, Debug)]
pub struct PlaneCatalog {
    pub edge_count: usize,
    pub mode: EquivalenceMode,
    /// Sorted by code.
    pub entries: Vec<PlaneEntry>,
    /// The spherical census the plane classes were derived from.
    pub sphere: SphereCatalog,
}

fn check_guard(edge_count: usize) -> Result<(), CensusError> {
    if edge_count == 0 {
        return Err(CensusError::InvalidEdgeCount);
    }
    if edge_count > MAX_EDGES {
        return Err(CensusError::EdgeGuard {
            edges: edge_count,
            max: MAX_EDGES,
        });
    }
    Ok(())
}

/// Permutation of `0..n` with the given lexicographic rank (Lehmer code).
fn unrank_permutation(n: usize, mut rank: u64) -> Vec<usize> {
    let mut pool: Vec<usize> = (0..n).collect();
    let mut out = Vec::with_capacity(n);
    for i in (0..n).rev() {
        let f = FACTORIALS[i];
        let idx = (rank / f) as usize;
        rank %= f;
        out.push(pool.remove(idx));
    }
    out
}

/// Advances to the lexicographic successor in place; false when `perm` was
/// the last permutation.
fn next_permutation(perm: &mut [usize]) -> bool {
    if perm.len() < 2 {
        return false;
    }
    let mut i = perm.len() - 1;
    while i > 0 && perm[i - 1] >= perm[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = perm.len() - 1;
    while perm[j] <= perm[i - 1] {
        j -= 1;
    }
    perm.swap(i - 1, j);
    perm[i..].reverse();
    true
}

/// Connectivity of the dart graph under `sigma` and the pairing, checked on
/// raw slices so the sweep skips map construction.
fn connected_raw(sigma: &[usize], seen: &mut [bool], stack: &mut Vec<usize>) -> bool {
    seen.fill(false);
    stack.clear();
    stack.push(0);
    seen[0] = true;
    let mut reached = 1;
    while let Some(d) = stack.pop() {
        for next in [sigma[d], d ^ 1] {
            if !seen[next] {
                seen[next] = true;
                reached += 1;
                stack.push(next);
            }
        }
    }
    reached == sigma.len()
}

fn cycle_count(next: impl Fn(usize) -> usize, n: usize, seen: &mut [bool]) -> usize {
    seen.fill(false);
    let mut cycles = 0;
    for start in 0..n {
        if seen[start] {
            continue;
        }
        cycles += 1;
        let mut d = start;
        while !seen[d] {
            seen[d] = true;
            d = next(d);
        }
    }
    cycles
}

struct ChunkOutcome {
    codes: BTreeSet<Vec<u32>>,
    stats: SweepStats,
}

impl ChunkOutcome {
    fn empty() -> Self {
        ChunkOutcome {
            codes: BTreeSet::new(),
            stats: SweepStats::default(),
        }
    }

    fn merge(mut self, mut other: ChunkOutcome) -> ChunkOutcome {
        self.codes.append(&mut other.codes);
        self.stats = self.stats.merge(other.stats);
        self
    }
}

/// Scans sigma permutations with lexicographic ranks in `[start, end)`.
fn sweep_range(edge_count: usize, mode: EquivalenceMode, start: u64, end: u64) -> ChunkOutcome {
    let n = 2 * edge_count;
    let mut out = ChunkOutcome::empty();
    if start >= end {
        return out;
    }
    let mut sigma = unrank_permutation(n, start);
    let mut sigma_inv = vec![0usize; n];
    let mut seen = vec![false; n];
    let mut stack = Vec::with_capacity(n);
    let roots: Vec<usize> = (0..n).collect();
    let reflected_roots: &[usize] = match mode {
        EquivalenceMode::Oriented => &[],
        EquivalenceMode::Full => &roots,
    };
    let mut search = CodeSearch::default();
    for _ in start..end {
        out.stats.permutations += 1;
        if !connected_raw(&sigma, &mut seen, &mut stack) {
            out.stats.disconnected += 1;
        } else {
            for (d, &img) in sigma.iter().enumerate() {
                sigma_inv[img] = d;
            }
            let vertices = cycle_count(|d| sigma[d], n, &mut seen);
            let faces = cycle_count(|d| sigma[d ^ 1], n, &mut seen);
            // Euler: V - E + F = 2 - 2g.
            if vertices + faces == edge_count + 2 {
                out.stats.spherical += 1;
                search.minimize(&sigma, &sigma_inv, &roots, reflected_roots);
                if !out.codes.contains(&search.best) {
                    out.codes.insert(search.best.clone());
                }
            } else {
                out.stats.positive_genus += 1;
            }
        }
        if !next_permutation(&mut sigma) {
            break;
        }
    }
    out
}

/// Number of sweep chunks for a given permutation total. Fixed by the total
/// alone, never by thread count, so merged results cannot depend on
/// scheduling.
fn chunk_count(total: u64) -> u64 {
    (total / 65536).clamp(1, 1024)
}

/// Census of spherical maps with exactly `edge_count` edges.
pub fn enumerate_spherical(
    edge_count: usize,
    mode: EquivalenceMode,
) -> Result<SphereCatalog, CensusError> {
    check_guard(edge_count)?;
    let n = 2 * edge_count;
    let total = FACTORIALS[n];
    let chunks = chunk_count(total);
    let swept = (0..chunks)
        .into_par_iter()
        .map(|i| {
            let start = total * i / chunks;
            let end = total * (i + 1) / chunks;
            sweep_range(edge_count, mode, start, end)
        })
        .reduce(ChunkOutcome::empty, ChunkOutcome::merge);
    debug_assert_eq!(swept.stats.permutations, total);

    let entries = swept
        .codes
        .into_iter()
        .map(|ints| {
            let code = CanonicalCode::from_parts(edge_count, Surface::Sphere, mode, ints);
            let representative = match code.reconstruct().expect("sweep emits valid codes") {
                Reconstructed::Sphere(m) => m,
                Reconstructed::Plane(_) => unreachable!("sphere code"),
            };
            let summary = representative.summary().expect("representative is connected");
            let face_orbits = automorphism_face_orbits(&representative, mode)
                .expect("representative is spherical");
            SphereEntry {
                code,
                representative,
                summary,
                face_orbits,
            }
        })
        .collect();
    Ok(SphereCatalog {
        edge_count,
        mode,
        entries,
        stats: swept.stats,
    })
}

/// Plane codes obtained by rooting every spherical class at every face and
/// dedupping, with no use of face orbits. Cross-validates
/// [`enumerate_plane`].
pub fn direct_plane_codes(
    sphere: &SphereCatalog,
    mode: EquivalenceMode,
) -> BTreeSet<CanonicalCode> {
    let mut codes = BTreeSet::new();
    for entry in &sphere.entries {
        let face_count = entry.summary.face_count;
        for face in 0..face_count {
            let plane = PlaneGraph::from_face_index(entry.representative.clone(), face)
                .expect("faces of a spherical representative");
            codes.insert(canonical_code_plane(&plane, mode));
        }
    }
    codes
}

/// Census of plane graphs with exactly `edge_count` edges, derived from the
/// spherical census by picking one outer face per automorphism orbit. Fails
/// with [`CensusError::DualPathMismatch`] if direct rooting disagrees.
pub fn enumerate_plane(
    edge_count: usize,
    mode: EquivalenceMode,
) -> Result<PlaneCatalog, CensusError> {
    let sphere = enumerate_spherical(edge_count, mode)?;
    let mut entries: Vec<PlaneEntry> = Vec::new();
    for sphere_entry in &sphere.entries {
        for (orbit_index, orbit) in sphere_entry.face_orbits.iter().enumerate() {
            let plane =
                PlaneGraph::from_face_index(sphere_entry.representative.clone(), orbit[0])
                    .expect("orbit members are face indices");
            let code = canonical_code_plane(&plane, mode);
            let representative = match code.reconstruct().expect("own codes reconstruct") {
                Reconstructed::Plane(p) => p,
                Reconstructed::Sphere(_) => unreachable!("plane code"),
            };
            let summary = representative
                .map()
                .summary()
                .expect("representative is connected");
            let outer_face_degree = representative.outer_face_degree();
            entries.push(PlaneEntry {
                code,
                representative,
                summary,
                outer_face_degree,
                parent_sphere_code: sphere_entry.code.clone(),
                face_orbit_index: orbit_index,
            });
        }
    }
    entries.sort_by(|a, b| a.code.cmp(&b.code));

    let orbit_codes: BTreeSet<CanonicalCode> =
        entries.iter().map(|e| e.code.clone()).collect();
    let direct_codes = direct_plane_codes(&sphere, mode);
    if orbit_codes.len() != entries.len() || orbit_codes != direct_codes {
        return Err(CensusError::DualPathMismatch {
            edge_count,
            orbit_total: entries.len(),
            direct_total: direct_codes.len(),
        });
    }
    Ok(PlaneCatalog {
        edge_count,
        mode,
        entries,
        sphere,
    })
}

/// How many spherical classes have each face-orbit count. Keys are orbit
/// counts, values are class counts; the weighted sum over the table is the
/// plane total.
pub fn decomposition(sphere: &SphereCatalog) -> BTreeMap<usize, usize> {
    let mut table = BTreeMap::new();
    for entry in &sphere.entries {
        *table.entry(entry.face_orbits.len()).or_insert(0) += 1;
    }
    table
}

/// Guard for the quadratic oracle below.
pub const MAX_ORACLE_EDGES: usize = 4;

/// Isomorphism test by explicit relabeling search, sharing nothing with the
/// canonical-code machinery. An isomorphism is pinned by the image of dart 0
/// and whether it reverses orientation, so all `2 * darts` candidates are
/// tried.
pub fn maps_equivalent(
    a: &CombinatorialMap,
    b: &CombinatorialMap,
    mode: EquivalenceMode,
) -> bool {
    if a.edge_count() != b.edge_count() {
        return false;
    }
    let n = a.dart_count();
    let orientations: &[bool] = match mode {
        EquivalenceMode::Oriented => &[false],
        EquivalenceMode::Full => &[false, true],
    };
    for &reversed in orientations {
        for target in 0..n {
            if relabeling_exists(a, b, target, reversed) {
                return true;
            }
        }
    }
    false
}

/// Tries to extend `dart 0 of a -> target of b` to a full isomorphism, i.e.
/// a bijection commuting with both permutations (with `sigma_b` inverted
/// when `reversed`).
fn relabeling_exists(
    a: &CombinatorialMap,
    b: &CombinatorialMap,
    target: usize,
    reversed: bool,
) -> bool {
    let n = a.dart_count();
    let mut image = vec![usize::MAX; n];
    let mut hit = vec![false; n];
    let mut queue = vec![0usize];
    image[0] = target;
    hit[target] = true;
    while let Some(d) = queue.pop() {
        let t = image[d];
        let sigma_step = if reversed {
            b.sigma_inv_slice()[t]
        } else {
            b.sigma_slice()[t]
        };
        for (from, to) in [(a.sigma_slice()[d], sigma_step), (d ^ 1, t ^ 1)] {
            if image[from] == usize::MAX {
                if hit[to] {
                    return false;
                }
                image[from] = to;
                hit[to] = true;
                queue.push(from);
            } else if image[from] != to {
                return false;
            }
        }
    }
    image.iter().all(|&t| t != usize::MAX)
}

/// Spherical census by sheer pairwise comparison: sweep the labeled maps,
/// keep one representative per [`maps_equivalent`] class. Quadratic in the
/// class count, hence the tighter guard. Exists to check the canonical-code
/// path against an independent implementation.
pub fn naive_oracle_spherical(
    edge_count: usize,
    mode: EquivalenceMode,
) -> Result<Vec<CombinatorialMap>, CensusError> {
    if edge_count == 0 {
        return Err(CensusError::InvalidEdgeCount);
    }
    if edge_count > MAX_ORACLE_EDGES {
        return Err(CensusError::EdgeGuard {
            edges: edge_count,
            max: MAX_ORACLE_EDGES,
        });
    }
    let n = 2 * edge_count;
    let mut classes: Vec<CombinatorialMap> = Vec::new();
    let mut sigma: Vec<usize> = (0..n).collect();
    loop {
        let candidate = CombinatorialMap::new(edge_count, sigma.clone()).expect("valid sigma");
        if candidate.is_connected() && candidate.genus() == Ok(0) {
            let known = classes
                .iter()
                .any(|rep| maps_equivalent(rep, &candidate, mode));
            if !known {
                classes.push(candidate);
            }
        }
        if !next_permutation(&mut sigma) {
            break;
        }
    }
    Ok(classes)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn permutation_unranking_matches_iteration() {
        let mut perm: Vec<usize> = (0..4).collect();
        let mut rank = 0u64;
        loop {
            assert_eq!(unrank_permutation(4, rank), perm);
            rank += 1;
            if !next_permutation(&mut perm) {
                break;
            }
        }
        assert_eq!(rank, FACTORIALS[4]);
    }

    #[test]
    fn guard_errors() {
        assert_eq!(
            enumerate_spherical(0, EquivalenceMode::Full).unwrap_err(),
            CensusError::InvalidEdgeCount
        );
        assert_eq!(
            enumerate_spherical(7, EquivalenceMode::Full).unwrap_err(),
            CensusError::EdgeGuard { edges: 7, max: 6 }
        );
        assert_eq!(
            naive_oracle_spherical(5, EquivalenceMode::Full).unwrap_err(),
            CensusError::EdgeGuard { edges: 5, max: 4 }
        );
    }

    #[test]
    fn one_edge_census() {
        for mode in [EquivalenceMode::Oriented, EquivalenceMode::Full] {
            let sphere = enumerate_spherical(1, mode).unwrap();
            // A loop and a segment.
            assert_eq!(sphere.entries.len(), 2);
            let plane = enumerate_plane(1, mode).unwrap();
            assert_eq!(plane.entries.len(), 2);
        }
    }

    #[test]
    fn two_edge_census() {
        let sphere = enumerate_spherical(2, EquivalenceMode::Full).unwrap();
        // Path, double edge, loop with pendant, bouquet of two loops.
        assert_eq!(sphere.entries.len(), 4);
        let plane = enumerate_plane(2, EquivalenceMode::Full).unwrap();
        assert_eq!(plane.entries.len(), 6);
        assert_eq!(
            decomposition(&plane.sphere),
            BTreeMap::from([(1, 2), (2, 2)])
        );
    }

    #[test]
    fn sweep_stats_partition_the_permutations() {
        for edge_count in 1..=3 {
            let sphere = enumerate_spherical(edge_count, EquivalenceMode::Full).unwrap();
            let s = sphere.stats;
            assert_eq!(s.permutations, FACTORIALS[2 * edge_count]);
            assert_eq!(
                s.disconnected + s.positive_genus + s.spherical,
                s.permutations
            );
            assert!(s.spherical > 0);
        }
    }

    #[test]
    fn sphere_entries_are_sorted_and_self_consistent() {
        let sphere = enumerate_spherical(3, EquivalenceMode::Full).unwrap();
        for pair in sphere.entries.windows(2) {
            assert!(pair[0].code < pair[1].code);
        }
        for entry in &sphere.entries {
            assert_eq!(entry.summary.edge_count, 3);
            assert_eq!(entry.summary.genus, 0);
            let orbit_faces: usize = entry.face_orbits.iter().map(|o| o.len()).sum();
            assert_eq!(orbit_faces, entry.summary.face_count);
        }
    }

    #[test]
    fn plane_entries_reference_their_parents() {
        let plane = enumerate_plane(2, EquivalenceMode::Full).unwrap();
        let sphere_codes: BTreeSet<_> =
            plane.sphere.entries.iter().map(|e| e.code.clone()).collect();
        for entry in &plane.entries {
            assert!(sphere_codes.contains(&entry.parent_sphere_code));
            assert_eq!(entry.code.surface(), Surface::Plane);
            assert_eq!(
                entry.outer_face_degree,
                entry.representative.outer_face_degree()
            );
        }
        // Weighted decomposition reproduces the plane total.
        let table = decomposition(&plane.sphere);
        let weighted: usize = table.iter().map(|(orbits, count)| orbits * count).sum();
        assert_eq!(weighted, plane.entries.len());
    }

    #[test]
    fn naive_oracle_agrees_on_small_counts() {
        for edge_count in 1..=3 {
            for mode in [EquivalenceMode::Oriented, EquivalenceMode::Full] {
                let fast = enumerate_spherical(edge_count, mode).unwrap();
                let slow = naive_oracle_spherical(edge_count, mode).unwrap();
                assert_eq!(
                    fast.entries.len(),
                    slow.len(),
                    "edge count {edge_count}, mode {mode}"
                );
            }
        }
    }

    #[test]
    fn oracle_representatives_match_catalog_classes() {
        // Each oracle class should contain exactly one catalog representative.
        let mode = EquivalenceMode::Full;
        let fast = enumerate_spherical(2, mode).unwrap();
        let slow = naive_oracle_spherical(2, mode).unwrap();
        for entry in &fast.entries {
            let hits = slow
                .iter()
                .filter(|rep| maps_equivalent(rep, &entry.representative, mode))
                .count();
            assert_eq!(hits, 1);
        }
    }

    #[test]
    fn maps_equivalent_detects_relabelings_and_rejects_others() {
        let bouquet = CombinatorialMap::new(2, vec![1, 2, 3, 0]).unwrap();
        let relabeled = bouquet.relabeled(&[2, 3, 0, 1]).unwrap();
        assert!(maps_equivalent(&bouquet, &relabeled, EquivalenceMode::Oriented));
        let path = CombinatorialMap::from_cycles(2, &[vec![1, 2]]).unwrap();
        assert!(!maps_equivalent(&bouquet, &path, EquivalenceMode::Full));
    }
}
