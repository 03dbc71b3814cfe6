//! Proposal algorithms: classic Gale-Shapley, the extended variant that
//! reduces preference lists as it goes, GS-lists, and the loop that peels
//! off a maximum chain of pairwise disjoint stable matchings.

use std::num::NonZeroUsize;

use crate::error::EngineError;
use crate::instance::{Instance, Side};
use crate::lists::{ReducedLists, Work};
use crate::matching::{Matching, MatchingChain};

const NONE: u32 = u32::MAX;

/// Bookkeeping for one proposal run: a LIFO worklist of free proposers,
/// the next-proposal cursor of each proposer, and who holds each receiver.
struct ProposalState {
    free: Vec<u32>,
    cursor: Vec<u32>,
    holder: Vec<u32>,
}

impl ProposalState {
    fn new(n: usize) -> Self {
        ProposalState {
            free: (0..n as u32).rev().collect(),
            cursor: vec![0; n],
            holder: vec![NONE; n],
        }
    }

    /// Receiver -> proposer assignments as a matching.
    fn into_matching(self, proposers: Side) -> Matching {
        let pairs = self.holder.iter().enumerate().map(|(r, &p)| {
            debug_assert_ne!(p, NONE);
            match proposers {
                Side::Men => (p as usize, r),
                Side::Women => (r, p as usize),
            }
        });
        Matching::from_pairs(self.holder.len(), pairs).expect("proposal run yields a matching")
    }
}

/// Classic deferred acceptance. Men proposing gives the man-optimal stable
/// matching, women proposing the woman-optimal one.
pub fn gale_shapley(inst: &Instance, proposers: Side) -> Matching {
    gale_shapley_counted(inst, proposers).0
}

/// [`gale_shapley`] plus the number of proposals made (at most `n^2`).
pub fn gale_shapley_counted(inst: &Instance, proposers: Side) -> (Matching, u64) {
    let n = inst.n();
    let ranks = inst.ranks();
    let receivers = proposers.other();
    let mut state = ProposalState::new(n);
    let mut proposals = 0u64;

    while let Some(p) = state.free.pop() {
        let p = p as usize;
        let k = state.cursor[p] as usize;
        // complete lists: a stable matching exists, so nobody runs out
        let r = inst.prefs(proposers, p)[k] as usize;
        state.cursor[p] += 1;
        proposals += 1;

        let current = state.holder[r];
        if current == NONE {
            state.holder[r] = p as u32;
        } else if ranks.rank(receivers, r, p) < ranks.rank(receivers, r, current as usize) {
            state.holder[r] = p as u32;
            state.free.push(current);
        } else {
            state.free.push(p as u32);
        }
    }
    (state.into_matching(proposers), proposals)
}

/// Extended Gale-Shapley on (possibly already reduced) lists.
///
/// Each proposer proposes to the head of their current list. When `p`
/// becomes engaged to `r`, every successor of `p` on `r`'s list is deleted. On return each proposer holds the first
/// entry of their reduced list and each receiver the last entry of theirs,
/// and the matching is proposer-optimal for the reduced instance.
pub fn gs_extended(lists: &mut ReducedLists<'_>, proposers: Side) -> Result<Matching, EngineError> {
    let n = lists.n();
    let receivers = proposers.other();
    let mut state = ProposalState::new(n);

    while let Some(p) = state.free.pop() {
        let p = p as usize;
        let r = lists.first_mut(proposers, p).ok_or(EngineError::Exhausted {
            side: proposers,
            person: p,
        })?;
        lists.work.proposals += 1;

        let displaced = state.holder[r];
        if displaced != NONE {
            state.free.push(displaced);
        }
        state.holder[r] = p as u32;

        // p survives on r's list, so this stops at p
        while lists.last_mut(receivers, r) != Some(p) {
            lists.delete_last(receivers, r);
        }
    }
    Ok(state.into_matching(proposers))
}

/// GS-lists: man-oriented extended GS, then woman-oriented extended GS on
/// the resulting lists. Every stable matching is contained in them.
pub fn gs_lists(inst: &Instance) -> ReducedLists<'_> {
    let mut lists = ReducedLists::new(inst);
    gs_extended(&mut lists, Side::Men).expect("complete instance");
    gs_extended(&mut lists, Side::Women).expect("complete instance");
    lists
}

/// A maximum-size set of pairwise disjoint stable matchings, returned as a
/// chain ordered from the man-optimal end to the woman-optimal one.
pub fn disjoint_stable_matchings(inst: &Instance) -> MatchingChain {
    disjoint_stable_matchings_with_work(inst).0
}

/// [`disjoint_stable_matchings`] plus instrumented step counts.
///
/// Proposals include the woman-proposing run that finds the woman-optimal
/// matching. The total never exceeds `5 n^2` (see [`WORK_BOUND_C`]).
///
/// [`WORK_BOUND_C`]: crate::scaling::WORK_BOUND_C
pub fn disjoint_stable_matchings_with_work(inst: &Instance) -> (MatchingChain, Work) {
    let n = inst.n();
    let (woman_optimal, gs_proposals) = gale_shapley_counted(inst, Side::Women);
    // unreachable with complete lists; kept to mirror the procedure
    assert!(woman_optimal.is_perfect(), "woman-optimal matching must exist");

    let mut lists = ReducedLists::new(inst);
    let mut chain = Vec::new();
    let mut x = gs_extended(&mut lists, Side::Men).expect("complete instance");
    while !x.intersects(&woman_optimal) {
        chain.push(x);
        for m in 0..n {
            debug_assert_eq!(
                lists.first(Side::Men, m).and_then(|w| lists.last(Side::Women, w)),
                Some(m)
            );
            lists.delete_first(Side::Men, m).expect("man holds his partner");
        }
        // the woman-optimal matching survives every deletion, so this cannot exhaust
        x = gs_extended(&mut lists, Side::Men).expect("woman-optimal matching survives");
    }
    chain.push(woman_optimal);

    let work = lists.work()
        + Work {
            proposals: gs_proposals,
            deletions: 0,
        };
    (MatchingChain::from_matchings(chain), work)
}

/// Outcome of the "at least k disjoint stable matchings" decision problem.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decision {
    pub holds: bool,
    /// The first `k` chain members when `holds`.
    pub witness: Option<MatchingChain>,
    /// Size of the maximum disjoint set.
    pub maximum: usize,
}

/// Are there at least `k` pairwise disjoint stable matchings?
pub fn decide_k_disjoint(inst: &Instance, k: NonZeroUsize) -> Decision {
    let chain = disjoint_stable_matchings(inst);
    let k = k.get();
    let holds = chain.len() >= k;
    Decision {
        holds,
        witness: holds.then(|| chain.truncated(k)),
        maximum: chain.len(),
    }
}
