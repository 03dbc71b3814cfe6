//! Instance generators.
//!
//! Random instances are driven by SplitMix64 (Steele, Lea and Flood, 2014)
//! so that a given `(n, seed)` produces the same bytes on every platform
//! and can be reproduced from any language:
//!
//! ```text
//! state += 0x9E3779B97F4A7C15
//! z = state
//! z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//! z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//! return z ^ (z >> 31)
//! ```
//!
//! A uniform integer in `0..bound` is drawn by rejection: discard outputs
//! below `2^64 mod bound`, then take the output modulo `bound`. Each list
//! starts as `0, 1, ..., n-1` and is shuffled by Fisher-Yates, swapping
//! position `i` (from `n-1` down to `1`) with a uniform position in `0..=i`.
//! The men's lists are drawn first, in order, then the women's.

use std::fmt;
use std::str::FromStr;

use crate::error::GenError;
use crate::instance::Instance;

/// The SplitMix64 generator.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform in `0..bound`, `bound > 0`.
    pub fn below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0);
        let threshold = bound.wrapping_neg() % bound;
        loop {
            let r = self.next_u64();
            if r >= threshold {
                return r % bound;
            }
        }
    }

    pub fn shuffle<T>(&mut self, items: &mut [T]) {
        for i in (1..items.len()).rev() {
            let j = self.below(i as u64 + 1) as usize;
            items.swap(i, j);
        }
    }
}

/// Every list an independent uniform permutation.
pub fn gen_random(n: usize, seed: u64) -> Result<Instance, GenError> {
    if n == 0 {
        return Err(GenError::ZeroSize);
    }
    let mut rng = SplitMix64::new(seed);
    let mut side = || {
        let mut flat = Vec::with_capacity(n * n);
        let mut list: Vec<u32> = Vec::with_capacity(n);
        for _ in 0..n {
            list.clear();
            list.extend(0..n as u32);
            rng.shuffle(&mut list);
            flat.extend_from_slice(&list);
        }
        flat
    };
    let men = side();
    let women = side();
    Ok(Instance::from_flat_unchecked(n, men, women))
}

/// Man `i` ranks women `i, i+1, ...` (mod n); woman `j` ranks men
/// `j+1, j+2, ..., j` (mod n). At `n = 3` this is the 3x3 fixture.
pub fn gen_cyclic(n: usize) -> Result<Instance, GenError> {
    if n == 0 {
        return Err(GenError::ZeroSize);
    }
    let n32 = n as u32;
    let men = (0..n32).flat_map(|i| (0..n32).map(move |k| (i + k) % n32)).collect();
    let women = (0..n32).flat_map(|j| (1..=n32).map(move |k| (j + k) % n32)).collect();
    Ok(Instance::from_flat_unchecked(n, men, women))
}

/// The committed 3x3 fixture with three disjoint stable matchings.
pub fn paper_3x3() -> Instance {
    gen_cyclic(3).expect("n = 3")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GenKind {
    Random,
    Cyclic,
    Paper3x3,
}

impl FromStr for GenKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "random" => Ok(GenKind::Random),
            "cyclic" => Ok(GenKind::Cyclic),
            "paper3x3" => Ok(GenKind::Paper3x3),
            other => Err(format!(
                "unknown instance kind {other:?} (expected random, cyclic or paper3x3)"
            )),
        }
    }
}

impl fmt::Display for GenKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GenKind::Random => "random",
            GenKind::Cyclic => "cyclic",
            GenKind::Paper3x3 => "paper3x3",
        })
    }
}

/// What to generate. `seed` is only read by [`GenKind::Random`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GenSpec {
    pub kind: GenKind,
    pub n: usize,
    pub seed: u64,
}

impl GenSpec {
    pub fn generate(&self) -> Result<Instance, GenError> {
        match self.kind {
            GenKind::Random => gen_random(self.n, self.seed),
            GenKind::Cyclic => gen_cyclic(self.n),
            GenKind::Paper3x3 if self.n == 3 => Ok(paper_3x3()),
            GenKind::Paper3x3 => Err(GenError::FixedSize(self.n)),
        }
    }
}
