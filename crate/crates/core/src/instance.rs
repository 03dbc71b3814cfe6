//! Stable marriage instances with complete, strict preference lists, and
//! the plain-text wire format used for fixtures and the CLI.
//!
//! The file format is line oriented:
//!
//! ```text
//! n
//! <man 1 list: n space-separated 1-based woman indices, best first>
//! ...
//! <man n list>
//! <woman 1 list: n space-separated 1-based man indices, best first>
//! ...
//! <woman n list>
//! ```
//!
//! Internally everything is 0-based.

use std::fmt;

use crate::error::ParseError;

/// Which side of the market a person (or a proposer) belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Men,
    Women,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::Men => Side::Women,
            Side::Women => Side::Men,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Side::Men => f.write_str("men"),
            Side::Women => f.write_str("women"),
        }
    }
}

/// Position of every partner in every preference list.
///
/// `man_rank(m, w)` is the 0-based position of woman `w` in man `m`'s list,
/// so a smaller value means more preferred.
#[derive(Debug, Clone)]
pub struct RankMatrix {
    n: usize,
    man_rank: Vec<u32>,
    woman_rank: Vec<u32>,
}

impl RankMatrix {
    fn build(n: usize, men_prefs: &[u32], women_prefs: &[u32]) -> Self {
        let invert = |prefs: &[u32]| {
            let mut rank = vec![0u32; n * n];
            for (p, list) in prefs.chunks_exact(n).enumerate() {
                for (pos, &q) in list.iter().enumerate() {
                    rank[p * n + q as usize] = pos as u32;
                }
            }
            rank
        };
        RankMatrix {
            n,
            man_rank: invert(men_prefs),
            woman_rank: invert(women_prefs),
        }
    }

    #[inline]
    pub fn man_rank(&self, m: usize, w: usize) -> usize {
        self.man_rank[m * self.n + w] as usize
    }

    #[inline]
    pub fn woman_rank(&self, w: usize, m: usize) -> usize {
        self.woman_rank[w * self.n + m] as usize
    }

    /// Rank of `partner` in the list of `person`, who sits on `side`.
    #[inline]
    pub fn rank(&self, side: Side, person: usize, partner: usize) -> usize {
        match side {
            Side::Men => self.man_rank(person, partner),
            Side::Women => self.woman_rank(person, partner),
        }
    }
}

/// A validated instance: `n` men, `n` women, every list a permutation.
///
/// Lists are stored flat (`n * n` entries per side) and the rank matrix is
/// built once at construction; the value is immutable afterwards.
#[derive(Clone)]
pub struct Instance {
    n: usize,
    men_prefs: Vec<u32>,
    women_prefs: Vec<u32>,
    ranks: RankMatrix,
}

impl Instance {
    /// Builds an instance from nested 0-based lists.
    pub fn new(men_prefs: Vec<Vec<usize>>, women_prefs: Vec<Vec<usize>>) -> Result<Self, ParseError> {
        let n = men_prefs.len();
        if n == 0 {
            return Err(ParseError::Empty);
        }
        if women_prefs.len() != n {
            return Err(ParseError::SideMismatch {
                men: n,
                women: women_prefs.len(),
            });
        }
        let flatten = |side: Side, lists: Vec<Vec<usize>>| -> Result<Vec<u32>, ParseError> {
            let mut flat = Vec::with_capacity(n * n);
            for (p, list) in lists.into_iter().enumerate() {
                check_permutation(n, &list).map_err(|reason| ParseError::InvalidList {
                    side,
                    person: p + 1,
                    line: None,
                    reason,
                })?;
                flat.extend(list.into_iter().map(|q| q as u32));
            }
            Ok(flat)
        };
        let men = flatten(Side::Men, men_prefs)?;
        let women = flatten(Side::Women, women_prefs)?;
        Ok(Self::from_flat_unchecked(n, men, women))
    }

    /// Builds from flat lists that the caller guarantees are permutations.
    pub(crate) fn from_flat_unchecked(n: usize, men_prefs: Vec<u32>, women_prefs: Vec<u32>) -> Self {
        debug_assert_eq!(men_prefs.len(), n * n);
        debug_assert_eq!(women_prefs.len(), n * n);
        let ranks = RankMatrix::build(n, &men_prefs, &women_prefs);
        Instance {
            n,
            men_prefs,
            women_prefs,
            ranks,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Total number of preference entries, `2 n^2`.
    pub fn input_size(&self) -> usize {
        2 * self.n * self.n
    }

    pub fn man_prefs(&self, m: usize) -> &[u32] {
        &self.men_prefs[m * self.n..(m + 1) * self.n]
    }

    pub fn woman_prefs(&self, w: usize) -> &[u32] {
        &self.women_prefs[w * self.n..(w + 1) * self.n]
    }

    pub fn prefs(&self, side: Side, person: usize) -> &[u32] {
        match side {
            Side::Men => self.man_prefs(person),
            Side::Women => self.woman_prefs(person),
        }
    }

    pub fn ranks(&self) -> &RankMatrix {
        &self.ranks
    }

    /// Nested copy of the men's lists, 0-based.
    pub fn men_lists(&self) -> Vec<Vec<usize>> {
        nested(self.n, &self.men_prefs)
    }

    /// Nested copy of the women's lists, 0-based.
    pub fn women_lists(&self) -> Vec<Vec<usize>> {
        nested(self.n, &self.women_prefs)
    }

    /// Parses the wire format. Errors carry 1-based line numbers.
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));

        let (_, header) = lines.next().ok_or(ParseError::MissingHeader)?;
        let n: usize = header
            .trim()
            .parse()
            .map_err(|_| ParseError::BadHeader(header.trim().to_string()))?;
        if n == 0 {
            return Err(ParseError::Empty);
        }

        let mut men = Vec::with_capacity(n * n);
        let mut women = Vec::with_capacity(n * n);
        let mut buf = Vec::with_capacity(n);
        for k in 0..2 * n {
            let (side, person, dest) = if k < n {
                (Side::Men, k, &mut men)
            } else {
                (Side::Women, k - n, &mut women)
            };
            let (line_no, line) = lines.next().ok_or(ParseError::LineCount {
                expected: 2 * n + 1,
                found: k + 1,
            })?;
            buf.clear();
            for tok in line.split_whitespace() {
                let v: usize = tok.parse().map_err(|_| ParseError::BadToken {
                    line: line_no,
                    token: tok.to_string(),
                })?;
                if v == 0 || v > n {
                    return Err(ParseError::InvalidList {
                        side,
                        person: person + 1,
                        line: Some(line_no),
                        reason: format!("entry {v} out of range 1..={n}"),
                    });
                }
                buf.push(v - 1);
            }
            check_permutation(n, &buf).map_err(|reason| ParseError::InvalidList {
                side,
                person: person + 1,
                line: Some(line_no),
                reason,
            })?;
            dest.extend(buf.iter().map(|&q| q as u32));
        }

        let extra = lines.filter(|(_, l)| !l.trim().is_empty()).count();
        if extra > 0 {
            return Err(ParseError::LineCount {
                expected: 2 * n + 1,
                found: 2 * n + 1 + extra,
            });
        }
        Ok(Self::from_flat_unchecked(n, men, women))
    }

    /// Canonical text: LF endings, single spaces, trailing newline.
    pub fn serialize(&self) -> String {
        let mut out = String::with_capacity(self.input_size() * 3 + 16);
        out.push_str(&self.n.to_string());
        out.push('\n');
        for list in self
            .men_prefs
            .chunks_exact(self.n)
            .chain(self.women_prefs.chunks_exact(self.n))
        {
            let mut first = true;
            for &q in list {
                if !first {
                    out.push(' ');
                }
                first = false;
                out.push_str(&(q + 1).to_string());
            }
            out.push('\n');
        }
        out
    }
}

impl PartialEq for Instance {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.men_prefs == other.men_prefs && self.women_prefs == other.women_prefs
    }
}

impl Eq for Instance {}

impl fmt::Debug for Instance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Instance")
            .field("n", &self.n)
            .field("men_prefs", &self.men_lists())
            .field("women_prefs", &self.women_lists())
            .finish()
    }
}

fn nested(n: usize, flat: &[u32]) -> Vec<Vec<usize>> {
    flat.chunks_exact(n)
        .map(|l| l.iter().map(|&q| q as usize).collect())
        .collect()
}

fn check_permutation(n: usize, list: &[usize]) -> Result<(), String> {
    if list.len() != n {
        return Err(format!("expected {n} entries, found {}", list.len()));
    }
    let mut seen = vec![false; n];
    for &q in list {
        if q >= n {
            return Err(format!("entry {} out of range 1..={n}", q + 1));
        }
        if std::mem::replace(&mut seen[q], true) {
            return Err(format!("duplicate entry {}", q + 1));
        }
    }
    Ok(())
}
