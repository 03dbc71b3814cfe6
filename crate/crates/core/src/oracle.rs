//! Brute-force ground truth for small instances.
//!
//! Nothing here touches the proposal engine or the rank matrix: stability
//! is re-derived from the raw lists by checking every pair, all `n!`
//! perfect matchings are enumerated, and the largest disjoint subfamily is
//! found by exhaustive branch and bound.

use itertools::Itertools;

use crate::error::OracleError;
use crate::instance::Instance;
use crate::matching::{Matching, Pair};

/// Largest `n` accepted by [`enumerate_stable`].
pub const MAX_ENUMERATION_N: usize = 9;

/// Largest family accepted by [`max_disjoint_bruteforce`].
pub const MAX_SUBSET_SEARCH: usize = 64;

/// Independent position tables, rebuilt from the raw lists.
struct Prefs {
    n: usize,
    man_pos: Vec<Vec<usize>>,
    woman_pos: Vec<Vec<usize>>,
}

impl Prefs {
    fn of(inst: &Instance) -> Self {
        let n = inst.n();
        let positions = |lists: Vec<Vec<usize>>| -> Vec<Vec<usize>> {
            lists
                .iter()
                .map(|list| (0..n).map(|q| list.iter().position(|&x| x == q).unwrap()).collect())
                .collect()
        };
        Prefs {
            n,
            man_pos: positions(inst.men_lists()),
            woman_pos: positions(inst.women_lists()),
        }
    }

    /// `wives[m]` is man m's partner; `husbands` is its inverse.
    fn stable(&self, wives: &[usize], husbands: &[usize]) -> bool {
        for (m, &wife) in wives.iter().enumerate() {
            for (w, &husband) in husbands.iter().enumerate() {
                if wife == w {
                    continue;
                }
                let man_wants = self.man_pos[m][w] < self.man_pos[m][wife];
                let woman_wants = self.woman_pos[w][m] < self.woman_pos[w][husband];
                if man_wants && woman_wants {
                    return false;
                }
            }
        }
        true
    }

    fn stable_matching(&self, matching: &Matching) -> bool {
        if matching.n() != self.n || !matching.is_perfect() {
            return false;
        }
        let wives: Vec<usize> = (0..self.n).map(|m| matching.partner_of_man(m).unwrap()).collect();
        let husbands: Vec<usize> = (0..self.n).map(|w| matching.partner_of_woman(w).unwrap()).collect();
        self.stable(&wives, &husbands)
    }

    fn man_rank_sum(&self, matching: &Matching) -> usize {
        (0..self.n)
            .map(|m| self.man_pos[m][matching.partner_of_man(m).unwrap()])
            .sum()
    }
}

/// Every stable matching, in lexicographic order of the wife vector.
pub fn enumerate_stable(inst: &Instance) -> Result<Vec<Matching>, OracleError> {
    let n = inst.n();
    if n > MAX_ENUMERATION_N {
        return Err(OracleError::InstanceTooLarge {
            n,
            limit: MAX_ENUMERATION_N,
        });
    }
    let prefs = Prefs::of(inst);
    let mut husbands = vec![0; n];
    let mut out = Vec::new();
    for wives in (0..n).permutations(n) {
        for (m, &w) in wives.iter().enumerate() {
            husbands[w] = m;
        }
        if prefs.stable(&wives, &husbands) {
            out.push(Matching::from_wives(&wives).expect("permutation"));
        }
    }
    Ok(out)
}

/// Stability check for the oracle's own use; shares no code with
/// [`crate::matching::is_stable`].
pub fn is_stable_bruteforce(inst: &Instance, matching: &Matching) -> bool {
    Prefs::of(inst).stable_matching(matching)
}

/// A largest pairwise disjoint subfamily, by index into the input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DisjointSubset {
    pub size: usize,
    pub members: Vec<usize>,
}

/// Maximum number of pairwise edge-disjoint matchings in `matchings`.
///
/// Exact search for a maximum independent set of the conflict graph (two
/// matchings conflict when they share a pair). Candidates are visited in
/// increasing order of the men's total rank, which is a linear extension of
/// strict dominance, so a chain witness tends to be found first.
pub fn max_disjoint_bruteforce(inst: &Instance, matchings: &[Matching]) -> Result<DisjointSubset, OracleError> {
    let k = matchings.len();
    if k > MAX_SUBSET_SEARCH {
        return Err(OracleError::TooManyMatchings {
            count: k,
            limit: MAX_SUBSET_SEARCH,
        });
    }
    if k == 0 {
        return Ok(DisjointSubset {
            size: 0,
            members: vec![],
        });
    }
    let prefs = Prefs::of(inst);
    let order: Vec<usize> = (0..k).sorted_by_key(|&i| prefs.man_rank_sum(&matchings[i])).collect();

    // compatible[a]: bitmask over positions in `order` disjoint from a
    let compatible: Vec<u64> = order
        .iter()
        .map(|&a| {
            order.iter().enumerate().fold(0u64, |mask, (j, &b)| {
                if a != b && !shares_pair(&matchings[a], &matchings[b]) {
                    mask | (1 << j)
                } else {
                    mask
                }
            })
        })
        .collect();

    let mut best = Vec::new();
    let mut current = Vec::new();
    let all = if k == 64 { u64::MAX } else { (1u64 << k) - 1 };
    search(&compatible, all, &mut current, &mut best);

    let mut members: Vec<usize> = best.iter().map(|&j| order[j]).collect();
    members.sort_unstable();
    Ok(DisjointSubset {
        size: members.len(),
        members,
    })
}

fn search(compatible: &[u64], candidates: u64, current: &mut Vec<usize>, best: &mut Vec<usize>) {
    if current.len() > best.len() {
        *best = current.clone();
    }
    let mut rest = candidates;
    while rest != 0 {
        if current.len() + rest.count_ones() as usize <= best.len() {
            return;
        }
        let j = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        current.push(j);
        search(compatible, rest & compatible[j], current, best);
        current.pop();
    }
}

fn shares_pair(a: &Matching, b: &Matching) -> bool {
    (0..a.n()).any(|m| a.partner_of_man(m).is_some() && a.partner_of_man(m) == b.partner_of_man(m))
}

/// Per-man sort of partners across `matchings`.
///
/// Output level `i` pairs every man with the `i`-th best entry of the
/// multiset of his partners. Every level is a stable matching; when the
/// inputs are pairwise disjoint the levels are pairwise disjoint and form a
/// strict dominance chain, best level first.
pub fn teo_sethuraman_transform(inst: &Instance, matchings: &[Matching]) -> Result<Vec<Matching>, OracleError> {
    if matchings.is_empty() {
        return Err(OracleError::NoMatchings);
    }
    let prefs = Prefs::of(inst);
    if let Some(bad) = matchings.iter().position(|m| !prefs.stable_matching(m)) {
        return Err(OracleError::Unstable(bad));
    }
    let n = inst.n();
    let k = matchings.len();
    let sorted: Vec<Vec<usize>> = (0..n)
        .map(|m| {
            matchings
                .iter()
                .map(|x| x.partner_of_man(m).unwrap())
                .sorted_by_key(|&w| prefs.man_pos[m][w])
                .collect()
        })
        .collect();
    (0..k)
        .map(|level| {
            let wives: Vec<usize> = sorted.iter().map(|row| row[level]).collect();
            Matching::from_wives(&wives).map_err(|_| OracleError::NotAMatching(level))
        })
        .collect()
}

/// Everything the oracle knows about one instance.
#[derive(Debug, Clone)]
pub struct StableSetReport {
    pub all_stable: Vec<Matching>,
    pub max_disjoint_size: usize,
    /// Indices into `all_stable` of one maximum disjoint subfamily.
    pub max_disjoint_witness: Vec<usize>,
    /// Pairs present in every stable matching.
    pub fixed_pairs: Vec<Pair>,
}

impl StableSetReport {
    pub fn compute(inst: &Instance) -> Result<Self, OracleError> {
        let all_stable = enumerate_stable(inst)?;
        let witness = max_disjoint_bruteforce(inst, &all_stable)?;
        let fixed_pairs = match all_stable.split_first() {
            Some((head, tail)) => head.pairs().filter(|&p| tail.iter().all(|m| m.contains(p))).collect(),
            None => vec![],
        };
        Ok(StableSetReport {
            all_stable,
            max_disjoint_size: witness.size,
            max_disjoint_witness: witness.members,
            fixed_pairs,
        })
    }
}
