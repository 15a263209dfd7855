//! Seeded randomness for the sampled claim checks. Everything downstream
//! of a `ChaCha8Rng::seed_from_u64` is reproducible; reports record the
//! seed they were run with.

use mismatch_core::graph::{Alignment, Graph, VertexId};
use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_perm(rng: &mut ChaCha8Rng, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}

pub fn random_bijection(rng: &mut ChaCha8Rng, g: &Graph, h: &Graph) -> Alignment {
    let gv: Vec<VertexId> = g.vertices().cloned().collect();
    let mut hv: Vec<VertexId> = h.vertices().cloned().collect();
    hv.shuffle(rng);
    Alignment::from_pairs(gv.into_iter().zip(hv)).expect("shuffle keeps injectivity")
}

/// Random bijection conditioned to map `src` onto `tgt`, by a post-shuffle
/// swap.
pub fn random_bijection_forcing(
    rng: &mut ChaCha8Rng,
    g: &Graph,
    h: &Graph,
    src: &VertexId,
    tgt: &VertexId,
) -> Alignment {
    let gv: Vec<VertexId> = g.vertices().cloned().collect();
    let mut hv: Vec<VertexId> = h.vertices().cloned().collect();
    hv.shuffle(rng);
    let i = gv.iter().position(|v| v == src).expect("source vertex exists");
    let j = hv.iter().position(|v| v == tgt).expect("target vertex exists");
    hv.swap(i, j);
    Alignment::from_pairs(gv.into_iter().zip(hv)).expect("swap keeps injectivity")
}

/// Uniform member of a restricted family: each part shuffled on its own.
pub fn random_restricted(
    rng: &mut ChaCha8Rng,
    fam: &mismatch_core::RestrictedFamily,
) -> Alignment {
    let mut even = fam.target_even.clone();
    let mut odd = fam.target_odd.clone();
    even.shuffle(rng);
    odd.shuffle(rng);
    Alignment::from_pairs(
        fam.source_a
            .iter()
            .cloned()
            .zip(even)
            .chain(fam.source_b.iter().cloned().zip(odd)),
    )
    .expect("parts are disjoint")
}

pub fn pick<'a, T>(rng: &mut ChaCha8Rng, xs: &'a [T]) -> &'a T {
    &xs[rng.gen_range(0..xs.len())]
}
