//! Canonical codes, isomorphism, and automorphism face orbits.
//!
//! A rooted traversal relabels the darts of a connected map in first-visit
//! order, which erases the original labeling. Minimizing the emitted code
//! over all roots (and over the mirror image, when reflections are allowed)
//! yields a canonical form: two maps get equal codes exactly when they are
//! isomorphic. Every root that attains the minimum induces an automorphism,
//! so the same search doubles as an automorphism-group generator.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::map::{CombinatorialMap, Dart, MapError};

/// Which homeomorphisms of the sphere count as isomorphisms.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum EquivalenceMode {
    /// Orientation-preserving homeomorphisms only.
    Oriented,
    /// Orientation-reversing homeomorphisms allowed as well; mirror images
    /// are identified.
    Full,
}

impl EquivalenceMode {
    pub fn tag(self) -> char {
        match self {
            EquivalenceMode::Oriented => 'O',
            EquivalenceMode::Full => 'F',
        }
    }

    fn allows_reflection(self) -> bool {
        matches!(self, EquivalenceMode::Full)
    }
}

impl fmt::Display for EquivalenceMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EquivalenceMode::Oriented => write!(f, "oriented"),
            EquivalenceMode::Full => write!(f, "full"),
        }
    }
}

/// Whether a catalog (and its codes) lives on the sphere or on the plane
/// with a distinguished outer face.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Surface {
    Sphere,
    Plane,
}

impl Surface {
    pub fn tag(self) -> char {
        match self {
            Surface::Sphere => 'S',
            Surface::Plane => 'P',
        }
    }
}

impl fmt::Display for Surface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Surface::Sphere => write!(f, "sphere"),
            Surface::Plane => write!(f, "plane"),
        }
    }
}

/// Traversal direction: `Reflected` substitutes `sigma⁻¹` for `sigma`,
/// which walks the mirror image of the map.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Orientation {
    Forward,
    Reflected,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CanonError {
    #[error("map is not connected")]
    Disconnected,
    #[error("map has genus {genus}, not a sphere embedding")]
    NotSpherical { genus: usize },
    #[error("root dart {dart} is out of range")]
    InvalidRoot { dart: usize },
    #[error("face index {index} is out of range")]
    InvalidFace { index: usize },
    #[error("dart {dart} used as outer face is out of range")]
    InvalidOuterDart { dart: usize },
    #[error(transparent)]
    Map(#[from] MapError),
}

/// Canonical key of an isomorphism class. Equal codes mean isomorphic maps
/// (or plane graphs) under the stated mode and surface. The integer sequence
/// has length `4 * edge_count` and is the traversal code of the class-minimal
/// rooted labeling.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct CanonicalCode {
    edge_count: usize,
    surface: Surface,
    mode: EquivalenceMode,
    code: Vec<u32>,
}

impl CanonicalCode {
    pub(crate) fn from_parts(
        edge_count: usize,
        surface: Surface,
        mode: EquivalenceMode,
        code: Vec<u32>,
    ) -> Self {
        debug_assert_eq!(code.len(), 4 * edge_count);
        CanonicalCode {
            edge_count,
            surface,
            mode,
            code,
        }
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn surface(&self) -> Surface {
        self.surface
    }

    pub fn mode(&self) -> EquivalenceMode {
        self.mode
    }

    pub fn ints(&self) -> &[u32] {
        &self.code
    }
}

impl fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "E{}:{}:{}:",
            self.edge_count,
            self.surface.tag(),
            self.mode.tag()
        )?;
        for (i, v) in self.code.iter().enumerate() {
            if i > 0 {
                write!(f, ".")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CodeError {
    #[error("code must have four ':'-separated fields: E<edges>:<S|P>:<O|F>:<ints>")]
    BadShape,
    #[error("bad edge-count field: {field}")]
    BadEdgeCount { field: String },
    #[error("bad surface tag: {field} (expected S or P)")]
    BadSurface { field: String },
    #[error("bad mode tag: {field} (expected O or F)")]
    BadMode { field: String },
    #[error("bad integer in code: {field}")]
    BadInteger { field: String },
    #[error("code has {got} integers, expected {expected}")]
    WrongLength { expected: usize, got: usize },
    #[error("code value {value} is out of range for {darts} darts")]
    ValueOutOfRange { value: u32, darts: usize },
    #[error("successor sequence is not a permutation")]
    SuccessorNotBijective,
    #[error("partner sequence is not a fixed-point-free involution")]
    BadPartnerInvolution,
    #[error("code describes a disconnected map")]
    Disconnected,
    #[error("code describes a map of genus {genus}, not a sphere embedding")]
    NotSpherical { genus: usize },
    #[error("code is well-formed but not canonical; expected {expected}")]
    NotCanonical { expected: String },
}

impl FromStr for CanonicalCode {
    type Err = CodeError;

    fn from_str(s: &str) -> Result<Self, CodeError> {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 4 {
            return Err(CodeError::BadShape);
        }
        let edge_field = parts[0]
            .strip_prefix('E')
            .ok_or_else(|| CodeError::BadEdgeCount {
                field: parts[0].to_string(),
            })?;
        let edge_count: usize = edge_field.parse().map_err(|_| CodeError::BadEdgeCount {
            field: parts[0].to_string(),
        })?;
        if edge_count == 0 {
            return Err(CodeError::BadEdgeCount {
                field: parts[0].to_string(),
            });
        }
        let surface = match parts[1] {
            "S" => Surface::Sphere,
            "P" => Surface::Plane,
            other => {
                return Err(CodeError::BadSurface {
                    field: other.to_string(),
                })
            }
        };
        let mode = match parts[2] {
            "O" => EquivalenceMode::Oriented,
            "F" => EquivalenceMode::Full,
            other => {
                return Err(CodeError::BadMode {
                    field: other.to_string(),
                })
            }
        };
        let mut code = Vec::new();
        for field in parts[3].split('.') {
            let v: u32 = field.parse().map_err(|_| CodeError::BadInteger {
                field: field.to_string(),
            })?;
            code.push(v);
        }
        if code.len() != 4 * edge_count {
            return Err(CodeError::WrongLength {
                expected: 4 * edge_count,
                got: code.len(),
            });
        }
        Ok(CanonicalCode {
            edge_count,
            surface,
            mode,
            code,
        })
    }
}

/// A map or plane graph rebuilt from a canonical code.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Reconstructed {
    Sphere(CombinatorialMap),
    Plane(PlaneGraph),
}

impl Reconstructed {
    pub fn map(&self) -> &CombinatorialMap {
        match self {
            Reconstructed::Sphere(m) => m,
            Reconstructed::Plane(p) => p.map(),
        }
    }
}

impl CanonicalCode {
    /// Rebuilds the labeled object the code describes. Checks structure only
    /// (permutation validity, connectivity, genus 0); use
    /// [`resolve`](Self::resolve) to also require canonicality.
    pub fn reconstruct(&self) -> Result<Reconstructed, CodeError> {
        let map = decode_map(self.edge_count, &self.code)?;
        match self.surface {
            Surface::Sphere => Ok(Reconstructed::Sphere(map)),
            Surface::Plane => {
                // The traversal root carries label 0 and keeps dart id 0
                // through the pairing relabel, so the outer face is the one
                // through dart 0.
                let plane = PlaneGraph::new(map, Dart(0)).expect("validated by decode_map");
                Ok(Reconstructed::Plane(plane))
            }
        }
    }

    /// Like [`reconstruct`](Self::reconstruct), but additionally requires
    /// that the code is the canonical code of what it describes, i.e. a
    /// genuine catalog key.
    pub fn resolve(&self) -> Result<Reconstructed, CodeError> {
        let object = self.reconstruct()?;
        let recanonicalized = match &object {
            Reconstructed::Sphere(map) => {
                canonical_code_sphere(map, self.mode).expect("validated by decode_map")
            }
            Reconstructed::Plane(plane) => canonical_code_plane(plane, self.mode),
        };
        if recanonicalized != *self {
            return Err(CodeError::NotCanonical {
                expected: recanonicalized.to_string(),
            });
        }
        Ok(object)
    }
}

/// Decodes the `(successor, partner)` pairs of a code into a map, renaming
/// darts so the partner involution becomes the fixed `2i <-> 2i+1` pairing.
/// The rename keeps label 0 at dart 0.
fn decode_map(edge_count: usize, code: &[u32]) -> Result<CombinatorialMap, CodeError> {
    let n = 2 * edge_count;
    debug_assert_eq!(code.len(), 2 * n);
    for &v in code {
        if v as usize >= n {
            return Err(CodeError::ValueOutOfRange { value: v, darts: n });
        }
    }
    let succ: Vec<usize> = (0..n).map(|l| code[2 * l] as usize).collect();
    let partner: Vec<usize> = (0..n).map(|l| code[2 * l + 1] as usize).collect();
    let mut seen = vec![false; n];
    for &s in &succ {
        if seen[s] {
            return Err(CodeError::SuccessorNotBijective);
        }
        seen[s] = true;
    }
    for (l, &p) in partner.iter().enumerate() {
        if p == l || partner[p] != l {
            return Err(CodeError::BadPartnerInvolution);
        }
    }
    // Rename labels so partners become consecutive pairs.
    let mut new_id = vec![usize::MAX; n];
    let mut next_edge = 0;
    for l in 0..n {
        if new_id[l] == usize::MAX {
            new_id[l] = 2 * next_edge;
            new_id[partner[l]] = 2 * next_edge + 1;
            next_edge += 1;
        }
    }
    let mut sigma = vec![0usize; n];
    for l in 0..n {
        sigma[new_id[l]] = new_id[succ[l]];
    }
    let map = CombinatorialMap::new(edge_count, sigma).expect("renamed permutation stays valid");
    if !map.is_connected() {
        return Err(CodeError::Disconnected);
    }
    let genus = map.genus().expect("connectivity checked above");
    if genus != 0 {
        return Err(CodeError::NotSpherical { genus });
    }
    Ok(map)
}

/// A spherical map with one face chosen as the outer (unbounded) face.
/// Stored as the underlying map plus the least dart of the outer face.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PlaneGraph {
    map: CombinatorialMap,
    outer: Dart,
}

impl PlaneGraph {
    /// Roots `map` at the face through `outer_dart`. The map must be
    /// connected and of genus 0.
    pub fn new(map: CombinatorialMap, outer_dart: Dart) -> Result<Self, CanonError> {
        if outer_dart.index() >= map.dart_count() {
            return Err(CanonError::InvalidOuterDart {
                dart: outer_dart.index(),
            });
        }
        if !map.is_connected() {
            return Err(CanonError::Disconnected);
        }
        let genus = map.genus().expect("connectivity checked above");
        if genus != 0 {
            return Err(CanonError::NotSpherical { genus });
        }
        // Normalize to the least dart of the face cycle.
        let mut least = outer_dart;
        let mut d = map.phi(outer_dart);
        while d != outer_dart {
            least = least.min(d);
            d = map.phi(d);
        }
        Ok(PlaneGraph { map, outer: least })
    }

    /// Roots `map` at face number `index`, counted as in
    /// [`CombinatorialMap::faces`].
    pub fn from_face_index(map: CombinatorialMap, index: usize) -> Result<Self, CanonError> {
        let faces = map.faces();
        let face = faces
            .get(index)
            .ok_or(CanonError::InvalidFace { index })?;
        let outer = face[0];
        Self::new(map, outer)
    }

    pub fn map(&self) -> &CombinatorialMap {
        &self.map
    }

    pub fn outer_dart(&self) -> Dart {
        self.outer
    }

    /// The outer face cycle, starting at its least dart.
    pub fn outer_face(&self) -> Vec<Dart> {
        let mut cycle = vec![self.outer];
        let mut d = self.map.phi(self.outer);
        while d != self.outer {
            cycle.push(d);
            d = self.map.phi(d);
        }
        cycle
    }

    pub fn outer_face_index(&self) -> usize {
        self.map
            .faces()
            .iter()
            .position(|f| f[0] == self.outer)
            .expect("outer dart is the least dart of its face")
    }

    pub fn outer_face_degree(&self) -> usize {
        self.outer_face().len()
    }

    /// The mirror image: `sigma` becomes `sigma⁻¹` and the outer face becomes
    /// the `alpha` image of the old outer face, which is a face cycle of the
    /// reflected map.
    pub fn reflect(&self) -> PlaneGraph {
        let reflected = CombinatorialMap::new(
            self.map.edge_count(),
            self.map.sigma_inv_slice().to_vec(),
        )
        .expect("inverse of a valid sigma is valid");
        let outer = self
            .outer_face()
            .iter()
            .map(|d| d.partner())
            .min()
            .expect("face cycles are nonempty");
        PlaneGraph::new(reflected, outer).expect("reflection preserves validity")
    }
}

const UNSET: u32 = u32::MAX;

/// Scratch buffers for traversal-code searches, reusable across maps.
#[derive(Default)]
pub(crate) struct CodeSearch {
    label: Vec<u32>,
    order: Vec<u32>,
    cur: Vec<u32>,
    pub(crate) best: Vec<u32>,
}

enum RunOutcome {
    /// Code exceeded the best prefix; run abandoned.
    Aborted,
    /// Code equal to the current best.
    Tied,
    /// New minimum; `best` has been replaced.
    NewBest,
    /// Traversal did not reach every dart.
    Disconnected,
}

impl CodeSearch {
    /// Runs one rooted traversal, comparing the emitted code against `best`
    /// as it goes and replacing `best` when the run wins. An empty `best`
    /// loses to any complete run.
    fn run(&mut self, sigma: &[usize], sigma_inv: &[usize], root: usize, reflected: bool) -> RunOutcome {
        let n = sigma.len();
        self.label.clear();
        self.label.resize(n, UNSET);
        self.order.clear();
        self.cur.clear();
        self.label[root] = 0;
        self.order.push(root as u32);
        let mut winning = self.best.is_empty();
        let mut processed = 0;
        while processed < self.order.len() {
            let old = self.order[processed] as usize;
            let succ = if reflected { sigma_inv[old] } else { sigma[old] };
            if self.label[succ] == UNSET {
                self.label[succ] = self.order.len() as u32;
                self.order.push(succ as u32);
            }
            let partner = old ^ 1;
            if self.label[partner] == UNSET {
                self.label[partner] = self.order.len() as u32;
                self.order.push(partner as u32);
            }
            for value in [self.label[succ], self.label[partner]] {
                self.cur.push(value);
                if !winning {
                    let against = self.best[self.cur.len() - 1];
                    if value < against {
                        winning = true;
                    } else if value > against {
                        return RunOutcome::Aborted;
                    }
                }
            }
            processed += 1;
        }
        if self.order.len() < n {
            return RunOutcome::Disconnected;
        }
        if winning {
            std::mem::swap(&mut self.best, &mut self.cur);
            RunOutcome::NewBest
        } else {
            RunOutcome::Tied
        }
    }

    /// Minimum traversal code over the given roots; forward roots first,
    /// then reflected ones. The result lands in `self.best`. The caller must
    /// pass a connected map and at least one root.
    pub(crate) fn minimize(
        &mut self,
        sigma: &[usize],
        sigma_inv: &[usize],
        forward_roots: &[usize],
        reflected_roots: &[usize],
    ) {
        self.best.clear();
        for (roots, reflected) in [(forward_roots, false), (reflected_roots, true)] {
            for &root in roots {
                match self.run(sigma, sigma_inv, root, reflected) {
                    RunOutcome::Disconnected => {
                        unreachable!("minimize requires a connected map")
                    }
                    _ => {}
                }
            }
        }
        debug_assert_eq!(self.best.len(), 2 * sigma.len());
    }
}

/// One traversal that attained the minimal code: its start and the
/// visit-order relabeling (`order[label] = old dart`).
struct MinimizingRun {
    reflected: bool,
    order: Vec<u32>,
}

/// Minimal code over the given roots together with every labeling attaining
/// it.
fn minimize_with_labelings(
    sigma: &[usize],
    sigma_inv: &[usize],
    forward_roots: &[usize],
    reflected_roots: &[usize],
) -> (Vec<u32>, Vec<MinimizingRun>) {
    let mut search = CodeSearch::default();
    let mut runs: Vec<MinimizingRun> = Vec::new();
    for (roots, reflected) in [(forward_roots, false), (reflected_roots, true)] {
        for &root in roots {
            match search.run(sigma, sigma_inv, root, reflected) {
                RunOutcome::NewBest => {
                    runs.clear();
                    runs.push(MinimizingRun {
                        reflected,
                        order: search.order.clone(),
                    });
                }
                RunOutcome::Tied => runs.push(MinimizingRun {
                    reflected,
                    order: search.order.clone(),
                }),
                RunOutcome::Aborted => {}
                RunOutcome::Disconnected => unreachable!("callers check connectivity"),
            }
        }
    }
    (search.best, runs)
}

/// Relabels a connected map by first-visit order from `root` and emits, for
/// each new label in order, the labels of its successor and partner. The
/// output has length `4 * edge_count` and depends only on the isomorphism
/// class of the rooted, oriented map.
pub fn traversal_code(
    map: &CombinatorialMap,
    root: Dart,
    orientation: Orientation,
) -> Result<Vec<u32>, CanonError> {
    if root.index() >= map.dart_count() {
        return Err(CanonError::InvalidRoot { dart: root.index() });
    }
    let mut search = CodeSearch::default();
    let reflected = matches!(orientation, Orientation::Reflected);
    match search.run(
        map.sigma_slice(),
        map.sigma_inv_slice(),
        root.index(),
        reflected,
    ) {
        RunOutcome::Disconnected => Err(CanonError::Disconnected),
        _ => Ok(search.best),
    }
}

fn require_spherical(map: &CombinatorialMap) -> Result<(), CanonError> {
    if !map.is_connected() {
        return Err(CanonError::Disconnected);
    }
    let genus = map.genus().expect("connectivity checked above");
    if genus != 0 {
        return Err(CanonError::NotSpherical { genus });
    }
    Ok(())
}

fn all_darts(n: usize) -> Vec<usize> {
    (0..n).collect()
}

/// Canonical code of a spherical map: the lexicographic minimum of
/// [`traversal_code`] over all roots, and over both orientations in
/// [`EquivalenceMode::Full`].
pub fn canonical_code_sphere(
    map: &CombinatorialMap,
    mode: EquivalenceMode,
) -> Result<CanonicalCode, CanonError> {
    require_spherical(map)?;
    let roots = all_darts(map.dart_count());
    let reflected_roots: &[usize] = if mode.allows_reflection() { &roots } else { &[] };
    let mut search = CodeSearch::default();
    search.minimize(map.sigma_slice(), map.sigma_inv_slice(), &roots, reflected_roots);
    Ok(CanonicalCode {
        edge_count: map.edge_count(),
        surface: Surface::Sphere,
        mode,
        code: search.best,
    })
}

/// Canonical code of a plane graph: minimum of [`traversal_code`] over roots
/// on the outer face; in [`EquivalenceMode::Full`] also over the reflected
/// plane graph with roots on its outer face.
pub fn canonical_code_plane(plane: &PlaneGraph, mode: EquivalenceMode) -> CanonicalCode {
    let map = plane.map();
    let outer: Vec<usize> = plane.outer_face().iter().map(|d| d.index()).collect();
    // Reflected traversal from alpha(d) equals the forward traversal of the
    // reflected plane graph from the corresponding outer dart.
    let reflected_outer: Vec<usize> = if mode.allows_reflection() {
        outer.iter().map(|d| d ^ 1).collect()
    } else {
        Vec::new()
    };
    let mut search = CodeSearch::default();
    search.minimize(
        map.sigma_slice(),
        map.sigma_inv_slice(),
        &outer,
        &reflected_outer,
    );
    CanonicalCode {
        edge_count: map.edge_count(),
        surface: Surface::Plane,
        mode,
        code: search.best,
    }
}

/// A canonical code together with the code-minimal labeling it describes.
#[derive(Clone, Debug)]
pub struct SphereCanon {
    pub code: CanonicalCode,
    pub representative: CombinatorialMap,
}

/// Canonical code plus canonical representative of a spherical map.
pub fn canonicalize_sphere(
    map: &CombinatorialMap,
    mode: EquivalenceMode,
) -> Result<SphereCanon, CanonError> {
    let code = canonical_code_sphere(map, mode)?;
    let representative = match code.reconstruct().expect("own codes always reconstruct") {
        Reconstructed::Sphere(m) => m,
        Reconstructed::Plane(_) => unreachable!("sphere code"),
    };
    Ok(SphereCanon {
        code,
        representative,
    })
}

/// A plane canonical code together with its code-minimal plane graph.
#[derive(Clone, Debug)]
pub struct PlaneCanon {
    pub code: CanonicalCode,
    pub representative: PlaneGraph,
}

/// Canonical code plus canonical representative of a plane graph.
pub fn canonicalize_plane(plane: &PlaneGraph, mode: EquivalenceMode) -> PlaneCanon {
    let code = canonical_code_plane(plane, mode);
    let representative = match code.reconstruct().expect("own codes always reconstruct") {
        Reconstructed::Plane(p) => p,
        Reconstructed::Sphere(_) => unreachable!("plane code"),
    };
    PlaneCanon {
        code,
        representative,
    }
}

struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            let root = self.find(self.parent[x]);
            self.parent[x] = root;
        }
        self.parent[x]
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // Smaller index wins, keeping orbit representatives canonical.
            let (lo, hi) = (ra.min(rb), ra.max(rb));
            self.parent[hi] = lo;
        }
    }
}

/// Orbits of the faces under the automorphism group allowed by `mode`.
///
/// Every `(root, orientation)` whose traversal code equals the canonical
/// code induces an automorphism (an automorphism is determined by where it
/// sends one dart and whether it reverses orientation), and together these
/// exhaust the group. Orientation-reversing automorphisms send the face
/// cycle `C` to the face `alpha(π(C))`.
///
/// Faces in one orbit yield isomorphic plane graphs when chosen as the outer
/// face, so the orbit count is the number of distinct plane graphs this
/// spherical map generates.
pub fn automorphism_face_orbits(
    map: &CombinatorialMap,
    mode: EquivalenceMode,
) -> Result<Vec<Vec<usize>>, CanonError> {
    require_spherical(map)?;
    let roots = all_darts(map.dart_count());
    let reflected_roots: &[usize] = if mode.allows_reflection() { &roots } else { &[] };
    let (_, runs) = minimize_with_labelings(
        map.sigma_slice(),
        map.sigma_inv_slice(),
        &roots,
        reflected_roots,
    );
    debug_assert!(!runs.is_empty());

    let faces = map.faces();
    let face_of = map.face_index_of_darts();
    let mut dsu = Dsu::new(faces.len());
    let base = &runs[0];
    for run in &runs[1..] {
        // The automorphism sends the dart labeled l by the base run to the
        // dart labeled l by this run.
        let mut image = vec![0usize; map.dart_count()];
        for l in 0..map.dart_count() {
            image[base.order[l] as usize] = run.order[l] as usize;
        }
        let reversing = base.reflected != run.reflected;
        for (i, face) in faces.iter().enumerate() {
            let d = face[0].index();
            let mapped = if reversing { image[d] ^ 1 } else { image[d] };
            dsu.union(i, face_of[mapped]);
        }
    }
    let mut orbits: Vec<Vec<usize>> = vec![Vec::new(); faces.len()];
    for i in 0..faces.len() {
        let root = dsu.find(i);
        orbits[root].push(i);
    }
    orbits.retain(|o| !o.is_empty());
    Ok(orbits)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn segment() -> CombinatorialMap {
        CombinatorialMap::new(1, vec![0, 1]).unwrap()
    }

    fn loop_map() -> CombinatorialMap {
        CombinatorialMap::new(1, vec![1, 0]).unwrap()
    }

    /// Two vertices joined by two parallel edges.
    fn double_edge() -> CombinatorialMap {
        CombinatorialMap::from_cycles(2, &[vec![0, 2], vec![1, 3]]).unwrap()
    }

    /// Loop at a vertex plus a pendant edge at the same vertex.
    fn loop_with_pendant() -> CombinatorialMap {
        CombinatorialMap::from_cycles(2, &[vec![0, 1, 2]]).unwrap()
    }

    #[test]
    fn traversal_codes_by_hand() {
        // Loop from root 0: successor of 0 is 1, which is also the partner.
        assert_eq!(
            traversal_code(&loop_map(), Dart(0), Orientation::Forward).unwrap(),
            vec![1, 1, 0, 0]
        );
        assert_eq!(
            traversal_code(&segment(), Dart(0), Orientation::Forward).unwrap(),
            vec![0, 1, 1, 0]
        );
    }

    #[test]
    fn segment_roots_agree() {
        // The end-swap automorphism makes both roots equivalent.
        let a = traversal_code(&segment(), Dart(0), Orientation::Forward).unwrap();
        let b = traversal_code(&segment(), Dart(1), Orientation::Forward).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn reflected_traversal_equals_traversal_of_reflection() {
        let maps = [
            loop_with_pendant(),
            double_edge(),
            CombinatorialMap::new(2, vec![1, 2, 3, 0]).unwrap(),
        ];
        for map in &maps {
            let mirrored =
                CombinatorialMap::new(map.edge_count(), map.sigma_inv_slice().to_vec()).unwrap();
            for root in map.darts() {
                assert_eq!(
                    traversal_code(map, root, Orientation::Reflected).unwrap(),
                    traversal_code(&mirrored, root, Orientation::Forward).unwrap()
                );
            }
        }
    }

    #[test]
    fn traversal_rejects_disconnected_and_bad_roots() {
        let two_segments = CombinatorialMap::new(2, vec![0, 1, 2, 3]).unwrap();
        assert_eq!(
            traversal_code(&two_segments, Dart(0), Orientation::Forward),
            Err(CanonError::Disconnected)
        );
        assert_eq!(
            traversal_code(&segment(), Dart(7), Orientation::Forward),
            Err(CanonError::InvalidRoot { dart: 7 })
        );
    }

    #[test]
    fn one_edge_codes_are_distinct() {
        let loop_code = canonical_code_sphere(&loop_map(), EquivalenceMode::Full).unwrap();
        let seg_code = canonical_code_sphere(&segment(), EquivalenceMode::Full).unwrap();
        assert_ne!(loop_code, seg_code);
        assert_eq!(seg_code.to_string(), "E1:S:F:0.1.1.0");
        assert_eq!(loop_code.to_string(), "E1:S:F:1.1.0.0");
    }

    #[test]
    fn canonical_code_is_relabeling_invariant() {
        let bouquet = CombinatorialMap::new(2, vec![1, 2, 3, 0]).unwrap();
        let relabeled = bouquet.relabeled(&[2, 3, 0, 1]).unwrap();
        for mode in [EquivalenceMode::Oriented, EquivalenceMode::Full] {
            assert_eq!(
                canonical_code_sphere(&bouquet, mode).unwrap(),
                canonical_code_sphere(&relabeled, mode).unwrap()
            );
        }
    }

    #[test]
    fn canonical_code_rejects_higher_genus() {
        let torus = CombinatorialMap::new(2, vec![2, 3, 1, 0]).unwrap();
        assert_eq!(
            canonical_code_sphere(&torus, EquivalenceMode::Full),
            Err(CanonError::NotSpherical { genus: 1 })
        );
    }

    #[test]
    fn representative_reproduces_its_code() {
        for map in [segment(), loop_map(), double_edge(), loop_with_pendant()] {
            for mode in [EquivalenceMode::Oriented, EquivalenceMode::Full] {
                let canon = canonicalize_sphere(&map, mode).unwrap();
                assert_eq!(
                    traversal_code(&canon.representative, Dart(0), Orientation::Forward).unwrap(),
                    canon.code.ints()
                );
                assert_eq!(
                    canonical_code_sphere(&canon.representative, mode).unwrap(),
                    canon.code
                );
            }
        }
    }

    #[test]
    fn code_string_round_trips() {
        let code = canonical_code_sphere(&loop_with_pendant(), EquivalenceMode::Full).unwrap();
        let parsed: CanonicalCode = code.to_string().parse().unwrap();
        assert_eq!(parsed, code);
    }

    #[test]
    fn code_parsing_rejects_malformed_strings() {
        assert!(matches!(
            "E1:S:F".parse::<CanonicalCode>(),
            Err(CodeError::BadShape)
        ));
        assert!(matches!(
            "X1:S:F:0.1.1.0".parse::<CanonicalCode>(),
            Err(CodeError::BadEdgeCount { .. })
        ));
        assert!(matches!(
            "E0:S:F:".parse::<CanonicalCode>(),
            Err(CodeError::BadEdgeCount { .. })
        ));
        assert!(matches!(
            "E1:X:F:0.1.1.0".parse::<CanonicalCode>(),
            Err(CodeError::BadSurface { .. })
        ));
        assert!(matches!(
            "E1:S:Q:0.1.1.0".parse::<CanonicalCode>(),
            Err(CodeError::BadMode { .. })
        ));
        assert!(matches!(
            "E1:S:F:0.1.1".parse::<CanonicalCode>(),
            Err(CodeError::WrongLength {
                expected: 4,
                got: 3
            })
        ));
        assert!(matches!(
            "E1:S:F:0.1.x.0".parse::<CanonicalCode>(),
            Err(CodeError::BadInteger { .. })
        ));
    }

    #[test]
    fn resolve_rejects_non_canonical_codes() {
        let loop_code: CanonicalCode = "E1:S:F:1.1.0.0".parse().unwrap();
        assert!(loop_code.resolve().is_ok());
        // Traversal of the loop-with-pendant map from a non-minimal root:
        // structurally valid, but the canonical min roots at the pendant tip.
        let non_canonical: CanonicalCode = "E2:S:F:1.1.2.0.0.3.3.2".parse().unwrap();
        assert!(non_canonical.reconstruct().is_ok());
        match non_canonical.resolve() {
            Err(CodeError::NotCanonical { expected }) => {
                assert_eq!(expected, "E2:S:F:0.1.2.0.3.3.1.2");
            }
            other => panic!("expected NotCanonical, got {other:?}"),
        }
    }

    #[test]
    fn reconstruct_rejects_structural_garbage() {
        let fixed_point: CanonicalCode = "E1:S:F:1.0.0.1".parse().unwrap();
        assert!(matches!(
            fixed_point.reconstruct(),
            Err(CodeError::BadPartnerInvolution)
        ));
        let out_of_range: CanonicalCode = "E1:S:F:9.1.1.0".parse().unwrap();
        assert!(matches!(
            out_of_range.reconstruct(),
            Err(CodeError::ValueOutOfRange { value: 9, darts: 2 })
        ));
        let not_bijective: CanonicalCode = "E2:S:F:1.1.1.0.3.3.2.2".parse().unwrap();
        assert!(matches!(
            not_bijective.reconstruct(),
            Err(CodeError::SuccessorNotBijective)
        ));
        // Two labeled components: valid permutations, unreachable labels.
        let split: CanonicalCode = "E2:S:F:1.1.0.0.3.3.2.2".parse().unwrap();
        assert!(matches!(split.reconstruct(), Err(CodeError::Disconnected)));
    }

    #[test]
    fn plane_codes_of_loop_rootings_agree() {
        let m = loop_map();
        let inside = PlaneGraph::from_face_index(m.clone(), 0).unwrap();
        let outside = PlaneGraph::from_face_index(m, 1).unwrap();
        for mode in [EquivalenceMode::Oriented, EquivalenceMode::Full] {
            assert_eq!(
                canonical_code_plane(&inside, mode),
                canonical_code_plane(&outside, mode)
            );
        }
    }

    #[test]
    fn plane_codes_of_double_edge_rootings_agree() {
        let m = double_edge();
        let a = PlaneGraph::from_face_index(m.clone(), 0).unwrap();
        let b = PlaneGraph::from_face_index(m, 1).unwrap();
        assert_eq!(
            canonical_code_plane(&a, EquivalenceMode::Full),
            canonical_code_plane(&b, EquivalenceMode::Full)
        );
    }

    #[test]
    fn plane_codes_separate_loop_with_pendant_rootings() {
        // The face inside the loop has degree 1, the other degree 3; no
        // automorphism can exchange them.
        let m = loop_with_pendant();
        let a = PlaneGraph::from_face_index(m.clone(), 0).unwrap();
        let b = PlaneGraph::from_face_index(m, 1).unwrap();
        assert_ne!(
            canonical_code_plane(&a, EquivalenceMode::Full),
            canonical_code_plane(&b, EquivalenceMode::Full)
        );
    }

    #[test]
    fn reflect_preserves_summary_and_is_involutive() {
        for map in [segment(), loop_map(), double_edge(), loop_with_pendant()] {
            let plane = PlaneGraph::from_face_index(map, 0).unwrap();
            let mirrored = plane.reflect();
            let s0 = plane.map().summary().unwrap();
            let s1 = mirrored.map().summary().unwrap();
            assert_eq!(s0, s1);
            assert_eq!(plane.outer_face_degree(), mirrored.outer_face_degree());
            // Double reflection gives back the same plane class even in
            // oriented mode.
            let twice = mirrored.reflect();
            assert_eq!(
                canonical_code_plane(&twice, EquivalenceMode::Oriented),
                canonical_code_plane(&plane, EquivalenceMode::Oriented)
            );
        }
    }

    #[test]
    fn loop_is_its_own_mirror_as_plane_graph() {
        let plane = PlaneGraph::from_face_index(loop_map(), 0).unwrap();
        let mirrored = plane.reflect();
        assert_eq!(
            canonical_code_plane(&plane, EquivalenceMode::Oriented),
            canonical_code_plane(&mirrored, EquivalenceMode::Oriented)
        );
    }

    #[test]
    fn face_orbit_examples() {
        let orbits = |m: &CombinatorialMap, mode| automorphism_face_orbits(m, mode).unwrap();
        // Loop: the two faces are one orbit.
        assert_eq!(orbits(&loop_map(), EquivalenceMode::Full), vec![vec![0, 1]]);
        // Segment: a single face.
        assert_eq!(orbits(&segment(), EquivalenceMode::Full), vec![vec![0]]);
        // Double edge: its two faces swap under an automorphism.
        assert_eq!(
            orbits(&double_edge(), EquivalenceMode::Full),
            vec![vec![0, 1]]
        );
        // Loop with pendant: face degrees 3 and 1 cannot mix.
        assert_eq!(
            orbits(&loop_with_pendant(), EquivalenceMode::Full),
            vec![vec![0], vec![1]]
        );
    }

    #[test]
    fn plane_graph_construction_errors() {
        assert_eq!(
            PlaneGraph::new(segment(), Dart(9)).unwrap_err(),
            CanonError::InvalidOuterDart { dart: 9 }
        );
        let torus = CombinatorialMap::new(2, vec![2, 3, 1, 0]).unwrap();
        assert_eq!(
            PlaneGraph::new(torus, Dart(0)).unwrap_err(),
            CanonError::NotSpherical { genus: 1 }
        );
        let disconnected = CombinatorialMap::new(2, vec![0, 1, 2, 3]).unwrap();
        assert_eq!(
            PlaneGraph::new(disconnected, Dart(0)).unwrap_err(),
            CanonError::Disconnected
        );
        assert_eq!(
            PlaneGraph::from_face_index(segment(), 5).unwrap_err(),
            CanonError::InvalidFace { index: 5 }
        );
    }

    #[test]
    fn outer_face_is_normalized_to_least_dart() {
        let m = double_edge();
        let face = m.faces()[1].clone();
        let via_larger_dart = PlaneGraph::new(m.clone(), face[1]).unwrap();
        let via_least_dart = PlaneGraph::new(m, face[0]).unwrap();
        assert_eq!(via_larger_dart, via_least_dart);
        assert_eq!(via_least_dart.outer_face_index(), 1);
    }
}
