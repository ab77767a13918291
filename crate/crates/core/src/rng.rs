//! Reproducible per-path random streams.
//!
//! Every `(master seed, path index, component)` triple maps to its own ChaCha8
//! stream: the component (0 for the Gaussian part, `i + 1` for atom `i`) is
//! mixed into the key and the path index selects the ChaCha stream id. Draws
//! for one path never depend on which worker simulated which other path.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Component id of the Gaussian part.
pub const GAUSSIAN_COMPONENT: u64 = 0;

/// Component id of jump atom `atom`.
pub fn atom_component(atom: usize) -> u64 {
    atom as u64 + 1
}

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// The stream for one component of one path.
pub fn path_stream(seed: u64, path_index: u64, component: u64) -> ChaCha8Rng {
    let mut state = seed ^ component.wrapping_mul(0xD134_2543_DE82_EF95);
    let mut key = [0u8; 32];
    for chunk in key.chunks_exact_mut(8) {
        chunk.copy_from_slice(&splitmix64(&mut state).to_le_bytes());
    }
    let mut rng = ChaCha8Rng::from_seed(key);
    rng.set_stream(path_index);
    rng
}
