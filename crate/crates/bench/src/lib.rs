//! Fixtures shared by the criterion benchmarks.

use ordopoly_core::{enumerate_extensions, grid, Label, Poset};

/// Grids small enough to time repeatedly, with their extension counts.
pub fn grids() -> Vec<(&'static str, Poset)> {
    vec![
        ("3x3", grid(3, 3)),
        ("3x4", grid(3, 4)),
        ("4x4", grid(4, 4)),
    ]
}

/// Every extension of the 3x4 grid, for per-word statistics.
pub fn sample_words() -> (Poset, Vec<Vec<Label>>) {
    let g = grid(3, 4);
    let words = enumerate_extensions(&g).map(|w| w.into_word()).collect();
    (g, words)
}
