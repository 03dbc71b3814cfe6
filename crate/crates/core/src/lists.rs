//! Reduced preference lists.
//!
//! Every person's list is a doubly linked list threaded through the
//! positions of their original preference list, so a surviving list is
//! always a subsequence of the original order. Whether a pair survives is
//! recorded once, in a shared `n * n` bit set, which keeps the two lists of
//! a pair consistent by construction.
//!
//! [`ReducedLists::delete_pair`] locates both entries through the rank
//! matrix and unlinks them at once. The proposal engine only ever trims
//! the ends of lists; it unlinks the entry on the list being trimmed and
//! leaves the mirror entry to be unlinked once it reaches an end of its own
//! list. Each entry is unlinked exactly once either way, and the engine
//! never has to touch a random row of the other side.

use crate::instance::{Instance, Side};

/// Unsigned position type of a list slot.
trait Index: Copy + Eq + std::fmt::Debug {
    const NIL: Self;
    fn new(i: usize) -> Self;
    fn get(self) -> usize;
}

impl Index for u16 {
    const NIL: u16 = u16::MAX;
    #[inline]
    fn new(i: usize) -> u16 {
        i as u16
    }
    #[inline]
    fn get(self) -> usize {
        self as usize
    }
}

impl Index for u32 {
    const NIL: u32 = u32::MAX;
    #[inline]
    fn new(i: usize) -> u32 {
        i as u32
    }
    #[inline]
    fn get(self) -> usize {
        self as usize
    }
}

/// One entry of one person's list. Entries of a person are stored
/// contiguously, in original preference order.
#[derive(Debug, Clone, Copy)]
#[repr(C)]
struct Slot<I> {
    next: I,
    prev: I,
    partner: I,
}

/// Row length in slots: whole cache lines, and an odd number of them, so
/// that the same position in consecutive rows does not pile onto a few
/// cache sets when `n` is a multiple of a large power of two.
fn row_stride(n: usize, slot_bytes: usize) -> usize {
    let lines = (n * slot_bytes).div_ceil(64);
    let lines = if lines.is_multiple_of(2) { lines + 1 } else { lines };
    lines * 64 / slot_bytes
}

/// Shared survival bits: bit `m * n + w` is set while `(m, w)` survives.
#[derive(Debug, Clone)]
struct Alive {
    n: usize,
    bits: Vec<u64>,
}

impl Alive {
    fn full(n: usize) -> Self {
        let count = n * n;
        let mut bits = vec![u64::MAX; count.div_ceil(64)];
        if !count.is_multiple_of(64) {
            *bits.last_mut().expect("n >= 1") = (1u64 << (count % 64)) - 1;
        }
        Alive { n, bits }
    }

    #[inline]
    fn get(&self, m: usize, w: usize) -> bool {
        let b = m * self.n + w;
        self.bits[b / 64] & (1 << (b % 64)) != 0
    }

    #[inline]
    fn clear(&mut self, m: usize, w: usize) {
        let b = m * self.n + w;
        self.bits[b / 64] &= !(1 << (b % 64));
    }

    /// Does `person` on `side` still hold `partner`?
    #[inline]
    fn holds(&self, side: Side, person: usize, partner: usize) -> bool {
        match side {
            Side::Men => self.get(person, partner),
            Side::Women => self.get(partner, person),
        }
    }
}

/// One side's physical lists, indexed by `person * stride + position`.
/// They may still hold entries whose pair is already dead.
#[derive(Debug, Clone)]
struct Links<I> {
    side: Side,
    stride: usize,
    slots: Vec<Slot<I>>,
    head: Vec<I>,
    tail: Vec<I>,
}

impl<I: Index> Links<I> {
    fn full(inst: &Instance, side: Side) -> Self {
        let n = inst.n();
        let stride = row_stride(n, std::mem::size_of::<Slot<I>>());
        let padding = Slot {
            next: I::NIL,
            prev: I::NIL,
            partner: I::NIL,
        };
        let mut slots = Vec::with_capacity(n * stride);
        advise_huge_pages(&mut slots);
        for p in 0..n {
            slots.extend(inst.prefs(side, p).iter().enumerate().map(|(pos, &q)| Slot {
                next: if pos + 1 == n { I::NIL } else { I::new(pos + 1) },
                prev: if pos == 0 { I::NIL } else { I::new(pos - 1) },
                partner: I::new(q as usize),
            }));
            slots.resize(slots.len() + stride - n, padding);
        }
        Links {
            side,
            stride,
            slots,
            head: vec![I::new(0); n],
            tail: vec![I::new(n - 1); n],
        }
    }

    #[inline]
    fn slot(&self, person: usize, pos: usize) -> Slot<I> {
        self.slots[person * self.stride + pos]
    }

    #[inline]
    fn unlink(&mut self, person: usize, pos: usize) {
        let base = person * self.stride;
        let Slot { next, prev, .. } = self.slots[base + pos];
        if prev == I::NIL {
            self.head[person] = next;
        } else {
            self.slots[base + prev.get()].next = next;
        }
        if next == I::NIL {
            self.tail[person] = prev;
        } else {
            self.slots[base + next.get()].prev = prev;
        }
    }

    /// Unlinks dead entries at the front of `person`'s list; returns the
    /// position and partner of the first live one.
    #[inline]
    fn settle_head(&mut self, alive: &Alive, person: usize) -> Option<(usize, usize)> {
        loop {
            let head = self.head[person];
            if head == I::NIL {
                return None;
            }
            let q = self.slot(person, head.get()).partner.get();
            if alive.holds(self.side, person, q) {
                return Some((head.get(), q));
            }
            self.unlink(person, head.get());
        }
    }

    /// As `settle_head`, for the back of the list.
    #[inline]
    fn settle_tail(&mut self, alive: &Alive, person: usize) -> Option<(usize, usize)> {
        loop {
            let tail = self.tail[person];
            if tail == I::NIL {
                return None;
            }
            let q = self.slot(person, tail.get()).partner.get();
            if alive.holds(self.side, person, q) {
                return Some((tail.get(), q));
            }
            self.unlink(person, tail.get());
        }
    }

    /// Live partners walking from `start` along `next` (or `prev`).
    fn walk<'l>(&'l self, alive: &'l Alive, person: usize, forward: bool) -> impl Iterator<Item = usize> + 'l {
        let start = if forward { self.head[person] } else { self.tail[person] };
        std::iter::successors((start != I::NIL).then_some(start), move |&cursor| {
            let slot = self.slot(person, cursor.get());
            let step = if forward { slot.next } else { slot.prev };
            (step != I::NIL).then_some(step)
        })
        .map(move |cursor| self.slot(person, cursor.get()).partner.get())
        .filter(move |&q| alive.holds(self.side, person, q))
    }
}

/// Both sides' lists at one index width. Narrow positions halve the memory
/// traffic and suffice whenever `n < u16::MAX`.
#[derive(Debug, Clone)]
enum Storage {
    Narrow(Links<u16>, Links<u16>),
    Wide(Links<u32>, Links<u32>),
}

/// Runs `$body` with `$links` bound to the lists of `$side`.
macro_rules! with_side {
    ($storage:expr, $side:expr, |$links:ident| $body:expr) => {
        match ($storage, $side) {
            (Storage::Narrow($links, _), Side::Men) | (Storage::Narrow(_, $links), Side::Women) => $body,
            (Storage::Wide($links, _), Side::Men) | (Storage::Wide(_, $links), Side::Women) => $body,
        }
    };
}

/// Asks the kernel to back a large, still untouched buffer with huge
/// pages. Rows of different people are touched in turn on every round, so
/// with 4 KiB pages most accesses at large `n` would miss the TLB.
#[cfg(target_os = "linux")]
fn advise_huge_pages<T>(buf: &mut Vec<T>) {
    const HUGE: usize = 2 << 20;
    let bytes = buf.capacity() * std::mem::size_of::<T>();
    if bytes < 2 * HUGE {
        return;
    }
    let start = buf.as_mut_ptr() as usize;
    let aligned = (start + HUGE - 1) & !(HUGE - 1);
    let end = (start + bytes) & !(HUGE - 1);
    if end > aligned {
        // SAFETY: the range lies inside the vector's allocation; madvise
        // only changes how the kernel backs it, never its contents.
        unsafe {
            libc::madvise(aligned as *mut libc::c_void, end - aligned, libc::MADV_HUGEPAGE);
        }
    }
}

#[cfg(not(target_os = "linux"))]
fn advise_huge_pages<T>(_buf: &mut Vec<T>) {}

/// Running totals of the elementary steps performed on a set of lists.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Work {
    pub proposals: u64,
    pub deletions: u64,
}

impl Work {
    pub fn total(&self) -> u64 {
        self.proposals + self.deletions
    }
}

impl std::ops::Add for Work {
    type Output = Work;

    fn add(self, rhs: Work) -> Work {
        Work {
            proposals: self.proposals + rhs.proposals,
            deletions: self.deletions + rhs.deletions,
        }
    }
}

/// Mutable reduced view of an instance's preference lists.
///
/// Deletions are always pair-symmetric: `w` survives on `m`'s list exactly
/// when `m` survives on `w`'s.
#[derive(Debug, Clone)]
pub struct ReducedLists<'a> {
    inst: &'a Instance,
    alive: Alive,
    storage: Storage,
    men_len: Vec<u32>,
    women_len: Vec<u32>,
    pub(crate) work: Work,
}

impl<'a> ReducedLists<'a> {
    /// Full, unreduced lists.
    pub fn new(inst: &'a Instance) -> Self {
        let n = inst.n();
        let storage = if n < u16::MAX as usize {
            Storage::Narrow(Links::full(inst, Side::Men), Links::full(inst, Side::Women))
        } else {
            Storage::Wide(Links::full(inst, Side::Men), Links::full(inst, Side::Women))
        };
        ReducedLists {
            inst,
            alive: Alive::full(n),
            storage,
            men_len: vec![n as u32; n],
            women_len: vec![n as u32; n],
            work: Work::default(),
        }
    }

    pub fn instance(&self) -> &'a Instance {
        self.inst
    }

    pub fn n(&self) -> usize {
        self.inst.n()
    }

    pub fn work(&self) -> Work {
        self.work
    }

    /// Clears the pair's bit and updates both length counters.
    #[inline]
    fn kill(&mut self, m: usize, w: usize) {
        self.alive.clear(m, w);
        self.men_len[m] -= 1;
        self.women_len[w] -= 1;
        self.work.deletions += 1;
    }

    #[inline]
    fn kill_from(&mut self, side: Side, person: usize, partner: usize) {
        match side {
            Side::Men => self.kill(person, partner),
            Side::Women => self.kill(partner, person),
        }
    }

    /// Is the pair `(m, w)` still present?
    pub fn contains(&self, m: usize, w: usize) -> bool {
        self.alive.get(m, w)
    }

    /// Deletes `(m, w)` from both lists. Returns `false` if it was already gone.
    pub fn delete_pair(&mut self, m: usize, w: usize) -> bool {
        if !self.alive.get(m, w) {
            return false;
        }
        self.kill(m, w);
        let ranks = self.inst.ranks();
        let (man_pos, woman_pos) = (ranks.man_rank(m, w), ranks.woman_rank(w, m));
        match &mut self.storage {
            Storage::Narrow(men, women) => {
                men.unlink(m, man_pos);
                women.unlink(w, woman_pos);
            }
            Storage::Wide(men, women) => {
                men.unlink(m, man_pos);
                women.unlink(w, woman_pos);
            }
        }
        true
    }

    /// Most preferred surviving partner, unlinking stale entries on the way.
    #[inline]
    pub(crate) fn first_mut(&mut self, side: Side, person: usize) -> Option<usize> {
        let alive = &self.alive;
        with_side!(&mut self.storage, side, |links| links.settle_head(alive, person)).map(|(_, q)| q)
    }

    /// Least preferred surviving partner, unlinking stale entries on the way.
    #[inline]
    pub(crate) fn last_mut(&mut self, side: Side, person: usize) -> Option<usize> {
        let alive = &self.alive;
        with_side!(&mut self.storage, side, |links| links.settle_tail(alive, person)).map(|(_, q)| q)
    }

    /// Deletes the pair at the front of `person`'s list, returning the
    /// partner it held. The mirror entry is unlinked lazily.
    #[inline]
    pub(crate) fn delete_first(&mut self, side: Side, person: usize) -> Option<usize> {
        let alive = &self.alive;
        let q = with_side!(&mut self.storage, side, |links| {
            let (pos, q) = links.settle_head(alive, person)?;
            links.unlink(person, pos);
            q
        });
        self.kill_from(side, person, q);
        Some(q)
    }

    /// Deletes the pair at the back of `person`'s list, returning the
    /// partner it held. The mirror entry is unlinked lazily.
    #[inline]
    pub(crate) fn delete_last(&mut self, side: Side, person: usize) -> Option<usize> {
        let alive = &self.alive;
        let q = with_side!(&mut self.storage, side, |links| {
            let (pos, q) = links.settle_tail(alive, person)?;
            links.unlink(person, pos);
            q
        });
        self.kill_from(side, person, q);
        Some(q)
    }

    /// Most preferred surviving partner of `person`.
    pub fn first(&self, side: Side, person: usize) -> Option<usize> {
        with_side!(&self.storage, side, |links| links
            .walk(&self.alive, person, true)
            .next())
    }

    /// Least preferred surviving partner of `person`.
    pub fn last(&self, side: Side, person: usize) -> Option<usize> {
        with_side!(&self.storage, side, |links| links
            .walk(&self.alive, person, false)
            .next())
    }

    pub fn len(&self, side: Side, person: usize) -> usize {
        match side {
            Side::Men => self.men_len[person] as usize,
            Side::Women => self.women_len[person] as usize,
        }
    }

    /// Total surviving pairs.
    pub fn pair_count(&self) -> usize {
        self.men_len.iter().map(|&l| l as usize).sum()
    }

    /// Surviving partners of `person`, best first.
    pub fn list(&self, side: Side, person: usize) -> Vec<usize> {
        with_side!(&self.storage, side, |links| links
            .walk(&self.alive, person, true)
            .collect())
    }
}
