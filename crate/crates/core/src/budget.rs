use serde::{Deserialize, Serialize};

/// Resource caps shared by every search in the crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    /// Largest horn/boundary dimension examined by lifting checks.
    pub max_dim: usize,
    /// Longest composite word generated by free closures (also caps cell counts).
    pub max_words: usize,
    /// Node cap for exhaustive searches.
    pub max_steps: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_dim: 4, max_words: 64, max_steps: 1_000_000 }
    }
}

impl Budget {
    pub fn new(max_dim: usize, max_words: usize, max_steps: usize) -> Self {
        Budget { max_dim, max_words, max_steps }
    }

    pub fn is_valid(&self) -> bool {
        self.max_dim > 0 && self.max_words > 0 && self.max_steps > 0
    }
}

/// Step counter handed down through recursive searches.
#[derive(Debug)]
pub(crate) struct Meter {
    pub used: usize,
    pub cap: usize,
}

impl Meter {
    pub fn new(cap: usize) -> Self {
        Meter { used: 0, cap }
    }

    /// Returns false once the cap is hit.
    pub fn tick(&mut self) -> bool {
        self.used += 1;
        self.used <= self.cap
    }
}
