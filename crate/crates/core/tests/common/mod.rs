//! Random generators shared by the integration suites.

use mapcensus::map::CombinatorialMap;
use rand::seq::SliceRandom;
use rand::Rng;

pub fn random_sigma(rng: &mut impl Rng, edge_count: usize) -> Vec<usize> {
    let mut sigma: Vec<usize> = (0..2 * edge_count).collect();
    sigma.shuffle(rng);
    sigma
}

pub fn random_map(rng: &mut impl Rng, edge_count: usize) -> CombinatorialMap {
    CombinatorialMap::new(edge_count, random_sigma(rng, edge_count)).expect("shuffle is a bijection")
}

pub fn random_connected_map(rng: &mut impl Rng, edge_count: usize) -> CombinatorialMap {
    loop {
        let map = random_map(rng, edge_count);
        if map.is_connected() {
            return map;
        }
    }
}

pub fn random_spherical_map(rng: &mut impl Rng, edge_count: usize) -> CombinatorialMap {
    loop {
        let map = random_map(rng, edge_count);
        if map.is_connected() && map.genus() == Ok(0) {
            return map;
        }
    }
}

/// Random relabeling compatible with the fixed pairing: permutes edges and
/// optionally swaps the two darts within an edge.
pub fn random_relabeling(rng: &mut impl Rng, edge_count: usize) -> Vec<usize> {
    let mut edges: Vec<usize> = (0..edge_count).collect();
    edges.shuffle(rng);
    let mut perm = vec![0usize; 2 * edge_count];
    for (i, &j) in edges.iter().enumerate() {
        let flip = usize::from(rng.random_bool(0.5));
        perm[2 * i] = 2 * j + flip;
        perm[2 * i + 1] = 2 * j + 1 - flip;
    }
    perm
}

/// Mirror image at the map level: the rotation is inverted, the pairing
/// stays fixed.
pub fn reflected(map: &CombinatorialMap) -> CombinatorialMap {
    let n = map.dart_count();
    let mut sigma_inv = vec![0usize; n];
    for d in 0..n {
        sigma_inv[map.sigma(mapcensus::map::Dart(d)).index()] = d;
    }
    CombinatorialMap::new(map.edge_count(), sigma_inv).expect("inverse permutation is valid")
}
