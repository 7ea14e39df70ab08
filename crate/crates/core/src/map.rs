//! Combinatorial maps over darts.
//!
//! A map is a pair of permutations on darts: `alpha` pairs the two darts of
//! each edge and `sigma` gives the counterclockwise successor around each
//! vertex. Vertices are the cycles of `sigma`, edges the cycles of `alpha`,
//! and faces the cycles of `phi = sigma ∘ alpha` (apply `alpha` first).
//!
//! `alpha` is fixed once and for all as the pairing `2i <-> 2i+1`, so a map
//! is determined by its edge count and `sigma` alone.

use std::fmt;

use thiserror::Error;

/// One of the two directed sides of an edge. Dart `2i` and dart `2i+1`
/// together make up edge `i`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Dart(pub usize);

impl Dart {
    /// The other dart of the same edge (`alpha` image).
    pub fn partner(self) -> Dart {
        Dart(self.0 ^ 1)
    }

    /// The edge this dart belongs to.
    pub fn edge(self) -> usize {
        self.0 / 2
    }

    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for Dart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MapError {
    #[error("a map needs at least one edge")]
    NoEdges,
    #[error("sigma lists {got} images but the map has {expected} darts")]
    SigmaLength { expected: usize, got: usize },
    #[error("sigma image {image} of dart {dart} is out of range")]
    ImageOutOfRange { dart: usize, image: usize },
    #[error("sigma is not injective: image {image} appears twice")]
    DuplicateImage { image: usize },
    #[error("dart {dart} appears in more than one cycle")]
    DuplicateDart { dart: usize },
    #[error("map is not connected")]
    Disconnected,
    #[error("relabeling does not respect edge pairing at dart {dart}")]
    UnpairedRelabeling { dart: usize },
}

/// An embedded multigraph on an oriented surface, immutable after
/// construction. With `alpha` fixed, `sigma` images fully describe the map.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct CombinatorialMap {
    edge_count: usize,
    sigma: Vec<usize>,
    sigma_inv: Vec<usize>,
}

impl CombinatorialMap {
    /// Builds a map from `sigma` images (`sigma_images[d]` is the
    /// counterclockwise successor of dart `d` around its vertex).
    /// Validates eagerly: `edge_count >= 1` and `sigma` a bijection on
    /// `[0, 2*edge_count)`.
    pub fn new(edge_count: usize, sigma_images: Vec<usize>) -> Result<Self, MapError> {
        if edge_count == 0 {
            return Err(MapError::NoEdges);
        }
        let n = 2 * edge_count;
        if sigma_images.len() != n {
            return Err(MapError::SigmaLength {
                expected: n,
                got: sigma_images.len(),
            });
        }
        let mut sigma_inv = vec![usize::MAX; n];
        for (dart, &image) in sigma_images.iter().enumerate() {
            if image >= n {
                return Err(MapError::ImageOutOfRange { dart, image });
            }
            if sigma_inv[image] != usize::MAX {
                return Err(MapError::DuplicateImage { image });
            }
            sigma_inv[image] = dart;
        }
        Ok(CombinatorialMap {
            edge_count,
            sigma: sigma_images,
            sigma_inv,
        })
    }

    /// Builds a map from vertex rotations given as dart cycles. Darts not
    /// mentioned in any cycle are fixed points of `sigma` (degree-1
    /// vertices).
    pub fn from_cycles(edge_count: usize, cycles: &[Vec<usize>]) -> Result<Self, MapError> {
        if edge_count == 0 {
            return Err(MapError::NoEdges);
        }
        let n = 2 * edge_count;
        let mut sigma: Vec<usize> = (0..n).collect();
        let mut seen = vec![false; n];
        for cycle in cycles {
            for (i, &dart) in cycle.iter().enumerate() {
                if dart >= n {
                    return Err(MapError::ImageOutOfRange { dart, image: dart });
                }
                if seen[dart] {
                    return Err(MapError::DuplicateDart { dart });
                }
                seen[dart] = true;
                sigma[dart] = cycle[(i + 1) % cycle.len()];
            }
        }
        Self::new(edge_count, sigma)
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// Number of darts, `2 * edge_count`.
    pub fn dart_count(&self) -> usize {
        2 * self.edge_count
    }

    pub fn darts(&self) -> impl Iterator<Item = Dart> {
        (0..self.dart_count()).map(Dart)
    }

    pub fn sigma(&self, d: Dart) -> Dart {
        Dart(self.sigma[d.0])
    }

    pub fn sigma_inv(&self, d: Dart) -> Dart {
        Dart(self.sigma_inv[d.0])
    }

    pub fn alpha(&self, d: Dart) -> Dart {
        d.partner()
    }

    /// Face successor `phi = sigma ∘ alpha`: apply `alpha`, then `sigma`.
    pub fn phi(&self, d: Dart) -> Dart {
        Dart(self.sigma[d.0 ^ 1])
    }

    pub(crate) fn sigma_slice(&self) -> &[usize] {
        &self.sigma
    }

    pub(crate) fn sigma_inv_slice(&self) -> &[usize] {
        &self.sigma_inv
    }

    /// Cycles of `sigma`. Cycles are listed by ascending least dart and each
    /// starts at its least dart.
    pub fn vertices(&self) -> Vec<Vec<Dart>> {
        cycles_of(self.dart_count(), |d| self.sigma[d])
    }

    /// Cycles of `phi = sigma ∘ alpha`, in the same order convention as
    /// [`vertices`](Self::vertices).
    pub fn faces(&self) -> Vec<Vec<Dart>> {
        cycles_of(self.dart_count(), |d| self.sigma[d ^ 1])
    }

    /// Face index of every dart, with faces numbered as in
    /// [`faces`](Self::faces).
    pub fn face_index_of_darts(&self) -> Vec<usize> {
        let mut index = vec![usize::MAX; self.dart_count()];
        for (i, face) in self.faces().iter().enumerate() {
            for &d in face {
                index[d.0] = i;
            }
        }
        index
    }

    /// True iff `sigma` and `alpha` together act transitively on the darts.
    pub fn is_connected(&self) -> bool {
        let n = self.dart_count();
        let mut seen = vec![false; n];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut reached = 1;
        while let Some(d) = stack.pop() {
            for next in [self.sigma[d], d ^ 1] {
                if !seen[next] {
                    seen[next] = true;
                    reached += 1;
                    stack.push(next);
                }
            }
        }
        reached == n
    }

    /// Genus of the embedding surface, from `V - E + F = 2 - 2g`.
    /// Rejects disconnected maps, for which the formula does not apply.
    pub fn genus(&self) -> Result<usize, MapError> {
        if !self.is_connected() {
            return Err(MapError::Disconnected);
        }
        let v = self.vertices().len();
        let f = self.faces().len();
        let doubled = 2 + self.edge_count - v - f;
        debug_assert!(doubled % 2 == 0, "Euler characteristic must be even");
        Ok(doubled / 2)
    }

    pub fn summary(&self) -> Result<MapSummary, MapError> {
        let genus = self.genus()?;
        let mut vertex_degrees: Vec<usize> = self.vertices().iter().map(Vec::len).collect();
        let mut face_degrees: Vec<usize> = self.faces().iter().map(Vec::len).collect();
        vertex_degrees.sort_unstable();
        face_degrees.sort_unstable();
        Ok(MapSummary {
            vertex_count: vertex_degrees.len(),
            edge_count: self.edge_count,
            face_count: face_degrees.len(),
            genus,
            vertex_degrees,
            face_degrees,
        })
    }

    /// The same map with darts renamed by `perm` (`sigma` is conjugated).
    /// `perm` must be a bijection on the darts that respects edge pairing,
    /// i.e. `perm[d ^ 1] == perm[d] ^ 1`, so that `alpha` stays the fixed
    /// pairing.
    pub fn relabeled(&self, perm: &[usize]) -> Result<Self, MapError> {
        let n = self.dart_count();
        if perm.len() != n {
            return Err(MapError::SigmaLength {
                expected: n,
                got: perm.len(),
            });
        }
        let mut seen = vec![false; n];
        for (dart, &image) in perm.iter().enumerate() {
            if image >= n {
                return Err(MapError::ImageOutOfRange { dart, image });
            }
            if seen[image] {
                return Err(MapError::DuplicateImage { image });
            }
            seen[image] = true;
        }
        for d in 0..n {
            if perm[d ^ 1] != perm[d] ^ 1 {
                return Err(MapError::UnpairedRelabeling { dart: d });
            }
        }
        let mut sigma = vec![0usize; n];
        for d in 0..n {
            sigma[perm[d]] = perm[self.sigma[d]];
        }
        Self::new(self.edge_count, sigma)
    }
}

/// Cycle structure of the permutation `d -> next(d)` on `[0, n)`. Cycles come
/// out sorted by their least element, each starting at that element.
fn cycles_of(n: usize, next: impl Fn(usize) -> usize) -> Vec<Vec<Dart>> {
    let mut seen = vec![false; n];
    let mut cycles = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut cycle = Vec::new();
        let mut d = start;
        loop {
            seen[d] = true;
            cycle.push(Dart(d));
            d = next(d);
            if d == start {
                break;
            }
        }
        cycles.push(cycle);
    }
    cycles
}

/// Vertex, edge, face and degree statistics of a connected map.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MapSummary {
    pub vertex_count: usize,
    pub edge_count: usize,
    pub face_count: usize,
    pub genus: usize,
    /// Vertex degrees, ascending. A loop contributes 2 to its vertex.
    pub vertex_degrees: Vec<usize>,
    /// Face degrees, ascending.
    pub face_degrees: Vec<usize>,
}
