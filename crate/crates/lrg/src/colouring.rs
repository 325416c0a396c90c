//! Linear colourings of complete graphs and their length-set partition.
//!
//! A linear colouring is fully described by the map `l -> c(l)` on edge
//! lengths `1..m-1`: the edge `(i, j)` of `K_m` receives colour `c(|j-i|)`.
//! Everything in this module is immutable after construction.

use sha2::{Digest, Sha256};
use std::fmt;

use crate::{Error, Result};

/// 1-based colour identifier.
pub type ColourId = u32;
/// Edge length, in `1..=m-1` for a colouring of order `m`.
pub type Length = u32;

/// Dense explicit expansion is only an oracle substrate; refuse silly sizes.
pub const EXPANSION_GUARD: u32 = 5000;

/// A linear colouring of `K_m`: one colour per edge-length.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LinearColouring {
    order: u32,
    colour_count: u32,
    colours: Vec<ColourId>,
}

impl fmt::Debug for LinearColouring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "LinearColouring(m={}, q={}, {:?})",
            self.order, self.colour_count, self.colours
        )
    }
}

impl LinearColouring {
    /// Builds a colouring of order `m` with `q` colours from the sequence
    /// `c(1), c(2), ..., c(m-1)`. Colours with no lengths are allowed; every
    /// entry must lie in `1..=q`.
    pub fn new(order: u32, colour_count: u32, colours: Vec<ColourId>) -> Result<Self> {
        if order < 2 {
            return Err(Error::InvalidColouring(format!(
                "order must be at least 2, got {order}"
            )));
        }
        if colour_count < 1 {
            return Err(Error::InvalidColouring(
                "colour count must be at least 1".into(),
            ));
        }
        if colours.len() != (order - 1) as usize {
            return Err(Error::InvalidColouring(format!(
                "expected {} colour entries for order {order}, got {}",
                order - 1,
                colours.len()
            )));
        }
        for (i, &c) in colours.iter().enumerate() {
            if c < 1 || c > colour_count {
                return Err(Error::ColourOutOfRange {
                    value: c as i64,
                    max: colour_count,
                    length: i + 1,
                });
            }
        }
        Ok(LinearColouring {
            order,
            colour_count,
            colours,
        })
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn colour_count(&self) -> u32 {
        self.colour_count
    }

    /// Colour of edge-length `l` (1-based, `1..=order-1`).
    #[inline]
    pub fn colour_of(&self, l: Length) -> ColourId {
        self.colours[(l - 1) as usize]
    }

    /// The colour sequence `c(1), ..., c(m-1)`.
    pub fn colours(&self) -> &[ColourId] {
        &self.colours
    }

    /// The natural partition of `{1..m-1}` into per-colour length sets.
    /// Returns one set per colour `1..=q`, empty sets included.
    pub fn length_sets(&self) -> Vec<LengthSet> {
        let mut lengths: Vec<Vec<Length>> = vec![Vec::new(); self.colour_count as usize];
        for (i, &c) in self.colours.iter().enumerate() {
            lengths[(c - 1) as usize].push((i + 1) as Length);
        }
        lengths
            .into_iter()
            .enumerate()
            .map(|(i, ls)| LengthSet {
                colour: (i + 1) as ColourId,
                lengths: ls,
                order: self.order,
            })
            .collect()
    }

    /// Length set of a single colour.
    pub fn length_set(&self, colour: ColourId) -> Result<LengthSet> {
        if colour < 1 || colour > self.colour_count {
            return Err(Error::NoSuchColour {
                colour,
                max: self.colour_count,
            });
        }
        let lengths = self
            .colours
            .iter()
            .enumerate()
            .filter(|(_, &c)| c == colour)
            .map(|(i, _)| (i + 1) as Length)
            .collect();
        Ok(LengthSet {
            colour,
            lengths,
            order: self.order,
        })
    }

    /// `c(l) = c(m-l)` for all lengths; equivalently the explicit graph is
    /// invariant under the cyclic vertex shift.
    pub fn is_cyclic(&self) -> bool {
        (1..self.order).all(|l| self.colour_of(l) == self.colour_of(self.order - l))
    }

    /// Whether the lengths of `colour` recur with period `period`: whenever
    /// `c(l) = colour` and `l + period` is still a length, `c(l + period) = colour`.
    pub fn is_repeating(&self, colour: ColourId, period: u32) -> Result<bool> {
        if colour < 1 || colour > self.colour_count {
            return Err(Error::NoSuchColour {
                colour,
                max: self.colour_count,
            });
        }
        if period < 1 || period > self.order - 2 {
            return Err(Error::InvalidPeriod {
                period,
                max: self.order.saturating_sub(2),
            });
        }
        Ok((1..=self.order - 1 - period)
            .all(|l| self.colour_of(l) != colour || self.colour_of(l + period) == colour))
    }

    /// Dense expansion to an explicit edge-coloured `K_m`; the verification
    /// oracle substrate.
    pub fn expand_explicit(&self) -> Result<ExplicitColouredGraph> {
        if self.order > EXPANSION_GUARD {
            return Err(Error::ExpansionGuard {
                order: self.order,
                guard: EXPANSION_GUARD,
            });
        }
        let m = self.order as usize;
        let mut colours = Vec::with_capacity(m * (m - 1) / 2);
        for i in 0..m {
            for j in (i + 1)..m {
                colours.push(self.colour_of((j - i) as Length));
            }
        }
        Ok(ExplicitColouredGraph {
            order: self.order,
            colours,
        })
    }

    /// Relabels colours through a bijection `perm` of `1..=q` (old colour `s`
    /// becomes `perm[s-1]`). Used to move a template into the last colour
    /// before compounding.
    pub fn permute_colours(&self, perm: &[ColourId]) -> Result<LinearColouring> {
        let q = self.colour_count as usize;
        if perm.len() != q {
            return Err(Error::InvalidPermutation(format!(
                "expected {q} entries, got {}",
                perm.len()
            )));
        }
        let mut seen = vec![false; q];
        for &p in perm {
            if p < 1 || p as usize > q {
                return Err(Error::InvalidPermutation(format!(
                    "target colour {p} out of range 1..={q}"
                )));
            }
            if seen[(p - 1) as usize] {
                return Err(Error::InvalidPermutation(format!(
                    "target colour {p} repeated"
                )));
            }
            seen[(p - 1) as usize] = true;
        }
        let colours = self
            .colours
            .iter()
            .map(|&c| perm[(c - 1) as usize])
            .collect();
        LinearColouring::new(self.order, self.colour_count, colours)
    }

    /// Parses the `lrg 1` text format. `#` starts a comment line; blank lines
    /// are ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let mut significant = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

        let (line_no, magic) = significant
            .next()
            .ok_or(Error::BadMagic { line: 1 })?;
        if magic.split_whitespace().collect::<Vec<_>>() != ["lrg", "1"] {
            return Err(Error::BadMagic { line: line_no });
        }

        let (hdr_line, header) = significant.next().ok_or(Error::BadHeader {
            line: line_no + 1,
            detail: "missing".into(),
        })?;
        let parts: Vec<&str> = header.split_whitespace().collect();
        if parts.len() != 4 || parts[0] != "order" || parts[2] != "colours" {
            return Err(Error::BadHeader {
                line: hdr_line,
                detail: format!("got `{header}`"),
            });
        }
        let order: u32 = parts[1].parse().map_err(|_| Error::BadHeader {
            line: hdr_line,
            detail: format!("bad order `{}`", parts[1]),
        })?;
        let colour_count: u32 = parts[3].parse().map_err(|_| Error::BadHeader {
            line: hdr_line,
            detail: format!("bad colour count `{}`", parts[3]),
        })?;
        if order < 2 {
            return Err(Error::BadHeader {
                line: hdr_line,
                detail: format!("order must be at least 2, got {order}"),
            });
        }
        if colour_count < 1 {
            return Err(Error::BadHeader {
                line: hdr_line,
                detail: "colour count must be at least 1".into(),
            });
        }

        let expected = (order - 1) as usize;
        let mut colours: Vec<ColourId> = Vec::with_capacity(expected);
        for (line_no, line) in significant {
            for token in line.split_whitespace() {
                let value: i64 = token.parse().map_err(|_| Error::InvalidToken {
                    line: line_no,
                    token: token.to_string(),
                })?;
                if colours.len() == expected {
                    return Err(Error::TrailingData { expected });
                }
                if value < 1 || value > colour_count as i64 {
                    return Err(Error::ColourOutOfRange {
                        value,
                        max: colour_count,
                        length: colours.len() + 1,
                    });
                }
                colours.push(value as ColourId);
            }
        }
        if colours.len() != expected {
            return Err(Error::WrongEntryCount {
                expected,
                got: colours.len(),
            });
        }
        LinearColouring::new(order, colour_count, colours)
    }

    /// Canonical text serialisation; `parse(serialize(x)) == x`.
    pub fn serialize(&self) -> String {
        self.serialize_with_comments(&[])
    }

    /// Serialisation with leading `#` comment lines (provenance notes etc.).
    pub fn serialize_with_comments(&self, comments: &[&str]) -> String {
        let mut out = String::new();
        for c in comments {
            out.push_str("# ");
            out.push_str(c);
            out.push('\n');
        }
        out.push_str("lrg 1\n");
        out.push_str(&format!(
            "order {} colours {}\n",
            self.order, self.colour_count
        ));
        for chunk in self.colours.chunks(25) {
            let line: Vec<String> = chunk.iter().map(|c| c.to_string()).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    /// SHA-256 of the canonical serialisation, for provenance records.
    pub fn content_hash(&self) -> String {
        let digest = Sha256::digest(self.serialize().as_bytes());
        digest.iter().map(|b| format!("{b:02x}")).collect()
    }
}

/// The set of edge-lengths carrying one colour, with the order it came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LengthSet {
    colour: ColourId,
    lengths: Vec<Length>,
    order: u32,
}

impl LengthSet {
    /// Builds a length set; `lengths` must be strictly increasing and bounded
    /// by `order - 1`.
    pub fn new(colour: ColourId, lengths: Vec<Length>, order: u32) -> Result<Self> {
        if order < 2 {
            return Err(Error::InvalidLengthSet(format!(
                "order must be at least 2, got {order}"
            )));
        }
        for w in lengths.windows(2) {
            if w[0] >= w[1] {
                return Err(Error::InvalidLengthSet(format!(
                    "lengths must be strictly increasing, got {} then {}",
                    w[0], w[1]
                )));
            }
        }
        if let Some(&first) = lengths.first() {
            if first < 1 {
                return Err(Error::InvalidLengthSet("length 0 is not valid".into()));
            }
        }
        if let Some(&last) = lengths.last() {
            if last > order - 1 {
                return Err(Error::InvalidLengthSet(format!(
                    "length {last} exceeds maximum {} for order {order}",
                    order - 1
                )));
            }
        }
        Ok(LengthSet {
            colour,
            lengths,
            order,
        })
    }

    pub fn colour(&self) -> ColourId {
        self.colour
    }

    pub fn lengths(&self) -> &[Length] {
        &self.lengths
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn len(&self) -> usize {
        self.lengths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lengths.is_empty()
    }

    pub fn contains(&self, l: Length) -> bool {
        self.lengths.binary_search(&l).is_ok()
    }

    pub fn min(&self) -> Option<Length> {
        self.lengths.first().copied()
    }

    pub fn max(&self) -> Option<Length> {
        self.lengths.last().copied()
    }
}

/// Explicit edge-coloured `K_m`, stored as the upper triangle `(i, j)`, `i < j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExplicitColouredGraph {
    order: u32,
    colours: Vec<ColourId>,
}

impl ExplicitColouredGraph {
    pub fn order(&self) -> u32 {
        self.order
    }

    #[inline]
    fn index(&self, i: u32, j: u32) -> usize {
        debug_assert!(i < j && j < self.order);
        let m = self.order as usize;
        let (i, j) = (i as usize, j as usize);
        i * m - i * (i + 1) / 2 + (j - i - 1)
    }

    /// Colour of the edge between distinct vertices `a` and `b`.
    pub fn colour_of(&self, a: u32, b: u32) -> ColourId {
        let (i, j) = if a < b { (a, b) } else { (b, a) };
        self.colours[self.index(i, j)]
    }

    /// Number of edges carrying `colour`.
    pub fn edge_count(&self, colour: ColourId) -> usize {
        self.colours.iter().filter(|&&c| c == colour).count()
    }

    /// Whether the vertex map `i -> (i + 1) mod m` preserves every edge colour.
    pub fn shift_invariant(&self) -> bool {
        let m = self.order;
        for i in 0..m {
            for j in (i + 1)..m {
                let si = (i + 1) % m;
                let sj = (j + 1) % m;
                if si == sj {
                    continue;
                }
                if self.colour_of(i, j) != self.colour_of(si, sj) {
                    return false;
                }
            }
        }
        true
    }
}
