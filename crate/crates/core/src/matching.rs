//! Matchings, chains of matchings, and the predicates defined over them:
//! blocking pairs, stability, strict dominance and fixed pairs.

use serde::{Deserialize, Serialize};

use crate::error::MatchingError;
use crate::instance::Instance;

/// A `(man, woman)` pair, 0-based.
pub type Pair = (usize, usize);

/// A set of man-woman pairs held as two mutually consistent partner arrays.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matching {
    partner_of_man: Vec<Option<usize>>,
    partner_of_woman: Vec<Option<usize>>,
}

impl Matching {
    pub fn empty(n: usize) -> Self {
        Matching {
            partner_of_man: vec![None; n],
            partner_of_woman: vec![None; n],
        }
    }

    /// Builds a matching on `n` men and `n` women from a list of pairs.
    pub fn from_pairs(n: usize, pairs: impl IntoIterator<Item = Pair>) -> Result<Self, MatchingError> {
        let mut out = Matching::empty(n);
        for (m, w) in pairs {
            if m >= n || w >= n {
                return Err(MatchingError::OutOfRange(m, w));
            }
            if out.partner_of_man[m].is_some() {
                return Err(MatchingError::DuplicateMan(m));
            }
            if out.partner_of_woman[w].is_some() {
                return Err(MatchingError::DuplicateWoman(w));
            }
            out.partner_of_man[m] = Some(w);
            out.partner_of_woman[w] = Some(m);
        }
        Ok(out)
    }

    /// Builds a perfect matching where man `m` is paired with `wives[m]`.
    pub fn from_wives(wives: &[usize]) -> Result<Self, MatchingError> {
        Self::from_pairs(wives.len(), wives.iter().copied().enumerate())
    }

    pub fn n(&self) -> usize {
        self.partner_of_man.len()
    }

    pub fn partner_of_man(&self, m: usize) -> Option<usize> {
        self.partner_of_man[m]
    }

    pub fn partner_of_woman(&self, w: usize) -> Option<usize> {
        self.partner_of_woman[w]
    }

    pub fn is_perfect(&self) -> bool {
        self.partner_of_man.iter().all(Option::is_some)
    }

    pub fn contains(&self, (m, w): Pair) -> bool {
        self.partner_of_man.get(m).copied().flatten() == Some(w)
    }

    /// Pairs sorted by man.
    pub fn pairs(&self) -> impl Iterator<Item = Pair> + '_ {
        self.partner_of_man
            .iter()
            .enumerate()
            .filter_map(|(m, w)| w.map(|w| (m, w)))
    }

    pub fn len(&self) -> usize {
        self.pairs().count()
    }

    pub fn is_empty(&self) -> bool {
        self.partner_of_man.iter().all(Option::is_none)
    }

    /// True when the two matchings share at least one pair.
    pub fn intersects(&self, other: &Matching) -> bool {
        self.partner_of_man
            .iter()
            .zip(&other.partner_of_man)
            .any(|(a, b)| a.is_some() && a == b)
    }

    pub fn intersection(&self, other: &Matching) -> Vec<Pair> {
        self.pairs().filter(|&p| other.contains(p)).collect()
    }

    /// Is every pair of `self` also in `other`?
    pub fn is_subset_of(&self, other: &Matching) -> bool {
        self.pairs().all(|p| other.contains(p))
    }

    fn wife(&self, m: usize) -> usize {
        self.partner_of_man[m].expect("perfect matching")
    }

    fn husband(&self, w: usize) -> usize {
        self.partner_of_woman[w].expect("perfect matching")
    }

    fn check_perfect(&self, n: usize) -> Result<(), MatchingError> {
        if self.n() != n {
            return Err(MatchingError::SizeMismatch {
                expected: n,
                found: self.n(),
            });
        }
        match self.partner_of_man.iter().position(Option::is_none) {
            Some(m) => Err(MatchingError::NotPerfect(m)),
            None => Ok(()),
        }
    }

    pub fn to_json(&self) -> MatchingJson {
        MatchingJson {
            pairs: self.pairs().map(|(m, w)| [m + 1, w + 1]).collect(),
        }
    }

    pub fn from_json(n: usize, json: &MatchingJson) -> Result<Self, MatchingError> {
        let pairs = json
            .pairs
            .iter()
            .map(|&[m, w]| {
                if m == 0 || w == 0 {
                    Err(MatchingError::OutOfRange(m, w))
                } else {
                    Ok((m - 1, w - 1))
                }
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_pairs(n, pairs)
    }
}

/// Wire form of a matching: 1-based pairs sorted by man.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatchingJson {
    pub pairs: Vec<[usize; 2]>,
}

/// Every pair `(m, w)` outside `matching` where both strictly prefer each
/// other to their assigned partners.
///
/// Scans, for every man, the prefix of his list ahead of his wife, so the
/// cost is O(n^2) in the worst case.
pub fn blocking_pairs(inst: &Instance, matching: &Matching) -> Result<Vec<Pair>, MatchingError> {
    matching.check_perfect(inst.n())?;
    let ranks = inst.ranks();
    let mut out = Vec::new();
    for m in 0..inst.n() {
        let wife = matching.wife(m);
        for &w in inst.man_prefs(m).iter().take(ranks.man_rank(m, wife)) {
            let w = w as usize;
            let husband = matching.husband(w);
            if ranks.woman_rank(w, m) < ranks.woman_rank(w, husband) {
                out.push((m, w));
            }
        }
    }
    Ok(out)
}

/// Perfect and without blocking pairs. Stops at the first blocker.
pub fn is_stable(inst: &Instance, matching: &Matching) -> bool {
    if matching.check_perfect(inst.n()).is_err() {
        return false;
    }
    let ranks = inst.ranks();
    (0..inst.n()).all(|m| {
        let wife = matching.wife(m);
        inst.man_prefs(m).iter().take(ranks.man_rank(m, wife)).all(|&w| {
            let w = w as usize;
            ranks.woman_rank(w, m) > ranks.woman_rank(w, matching.husband(w))
        })
    })
}

/// Strict dominance: every man strictly prefers his partner in `better` to
/// his partner in `worse`.
///
/// This is the all-men strict relation, not the weak lattice order, so it
/// is irreflexive. Returns `false` unless both matchings are perfect.
pub fn dominates(inst: &Instance, better: &Matching, worse: &Matching) -> bool {
    if better.check_perfect(inst.n()).is_err() || worse.check_perfect(inst.n()).is_err() {
        return false;
    }
    let ranks = inst.ranks();
    (0..inst.n()).all(|m| ranks.man_rank(m, better.wife(m)) < ranks.man_rank(m, worse.wife(m)))
}

/// Pairs common to the man-optimal and woman-optimal stable matchings.
///
/// Such pairs belong to every stable matching of the instance.
pub fn fixed_pairs(man_optimal: &Matching, woman_optimal: &Matching) -> Vec<Pair> {
    man_optimal.intersection(woman_optimal)
}

/// Stable matchings ordered by strict dominance, pairwise edge-disjoint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchingChain {
    matchings: Vec<Matching>,
}

/// A violated chain invariant, as reported by [`MatchingChain::validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ChainViolation {
    Unstable { index: usize },
    SharedPair { first: usize, second: usize, pair: Pair },
    NotDominating { index: usize },
}

impl MatchingChain {
    /// Wraps matchings without checking; see [`MatchingChain::validate`].
    pub fn from_matchings(matchings: Vec<Matching>) -> Self {
        MatchingChain { matchings }
    }

    /// Wraps matchings after checking every chain invariant against `inst`.
    pub fn new(inst: &Instance, matchings: Vec<Matching>) -> Result<Self, Vec<ChainViolation>> {
        let chain = MatchingChain { matchings };
        let violations = chain.validate(inst);
        if violations.is_empty() {
            Ok(chain)
        } else {
            Err(violations)
        }
    }

    /// Lists every violation of stability, disjointness and strict order.
    pub fn validate(&self, inst: &Instance) -> Vec<ChainViolation> {
        let mut out = Vec::new();
        for (index, m) in self.matchings.iter().enumerate() {
            if !is_stable(inst, m) {
                out.push(ChainViolation::Unstable { index });
            }
        }
        for i in 0..self.matchings.len() {
            for j in i + 1..self.matchings.len() {
                if let Some(&pair) = self.matchings[i].intersection(&self.matchings[j]).first() {
                    out.push(ChainViolation::SharedPair {
                        first: i,
                        second: j,
                        pair,
                    });
                }
            }
        }
        for (index, w) in self.matchings.windows(2).enumerate() {
            if !dominates(inst, &w[0], &w[1]) {
                out.push(ChainViolation::NotDominating { index });
            }
        }
        out
    }

    pub fn len(&self) -> usize {
        self.matchings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.matchings.is_empty()
    }

    pub fn matchings(&self) -> &[Matching] {
        &self.matchings
    }

    pub fn first(&self) -> Option<&Matching> {
        self.matchings.first()
    }

    pub fn last(&self) -> Option<&Matching> {
        self.matchings.last()
    }

    pub fn into_matchings(self) -> Vec<Matching> {
        self.matchings
    }

    pub fn truncated(&self, k: usize) -> MatchingChain {
        MatchingChain {
            matchings: self.matchings.iter().take(k).cloned().collect(),
        }
    }

    pub fn to_json(&self) -> ChainJson {
        ChainJson {
            chain: self.matchings.iter().map(Matching::to_json).collect(),
            size: self.matchings.len(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainJson {
    pub chain: Vec<MatchingJson>,
    pub size: usize,
}
