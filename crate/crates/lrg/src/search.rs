//! Prototype search: exhaustive enumeration with on-the-fly pruning,
//! seed-deterministic randomised search, and residue-class generators for
//! classical cyclic prototypes.
//!
//! Enumeration assigns colours to lengths `1, 2, ..., m-1` in order and
//! abandons a prefix as soon as any colour's partial length set violates its
//! clique bound; adding lengths never removes cliques, so the prune is sound.
//! Output is in lexicographic order of the colour sequence. Work is sharded
//! across the colour of length 1 and merged back in order, so the result does
//! not depend on thread count.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::collections::HashSet;

use crate::bitset::BitSet;
use crate::clique::BoundsVector;
use crate::colouring::{ColourId, Length, LinearColouring};
use crate::template::validate_template;
use crate::{Error, Result};

/// Refuse plain enumeration above this many candidate sequences unless forced.
pub const ENUMERATION_GUARD: u128 = 1 << 28;

#[derive(Clone, Debug, Default)]
pub struct ExhaustiveOptions {
    /// Keep only colourings whose last colour is a triangle-free template.
    pub require_template: bool,
    /// Emit only colourings lexicographically minimal under bounds-preserving
    /// colour permutations. Counts then factor out that symmetry; the default
    /// is raw counts.
    pub canonical: bool,
    /// Collect at most this many colourings (the count stays exact).
    pub limit: Option<usize>,
    /// Override the enumeration guard.
    pub force: bool,
}

/// Satisfying colourings (possibly truncated by `limit`) plus the exact
/// number of satisfying colourings.
#[derive(Clone, Debug)]
pub struct SearchOutcome {
    pub found: Vec<LinearColouring>,
    pub count: u64,
}

/// Enumerates every colouring of order `m` in `bounds.len()` colours meeting
/// the bounds (and, optionally, carrying a template in the last colour), in
/// lexicographic order of the colour sequence.
pub fn exhaustive(m: u32, bounds: &BoundsVector, opts: &ExhaustiveOptions) -> Result<SearchOutcome> {
    if m < 2 {
        return Err(Error::ArgumentRange(format!(
            "order must be at least 2, got {m}"
        )));
    }
    let q = bounds.len() as u32;
    let candidates = (q as u128)
        .checked_pow(m - 1)
        .unwrap_or(u128::MAX);
    if candidates > ENUMERATION_GUARD && !opts.force {
        return Err(Error::EnumerationGuard {
            candidates,
            guard: ENUMERATION_GUARD,
        });
    }
    if opts.canonical && q > 8 {
        return Err(Error::ArgumentRange(
            "canonical counting supports at most 8 colours".into(),
        ));
    }

    let perms = if opts.canonical {
        bounds_preserving_permutations(bounds)
    } else {
        Vec::new()
    };

    // shard on the colour of length 1, merge shard outputs in colour order
    let shards: Vec<(Vec<LinearColouring>, u64)> = (1..=q)
        .into_par_iter()
        .map(|first| {
            let mut en = Enumerator {
                m,
                bounds,
                members: (0..q)
                    .map(|_| BitSet::new(m as usize))
                    .collect(),
                colours: Vec::with_capacity((m - 1) as usize),
                opts,
                perms: &perms,
                found: Vec::new(),
                count: 0,
            };
            if !en.creates_bound_clique(first, 1) {
                en.members[(first - 1) as usize].insert(1);
                en.colours.push(first);
                en.recurse(2);
            }
            (en.found, en.count)
        })
        .collect();

    let mut found = Vec::new();
    let mut count = 0u64;
    for (mut f, c) in shards {
        count += c;
        found.append(&mut f);
    }
    if let Some(limit) = opts.limit {
        found.truncate(limit);
    }
    Ok(SearchOutcome { found, count })
}

struct Enumerator<'a> {
    m: u32,
    bounds: &'a BoundsVector,
    members: Vec<BitSet>,
    colours: Vec<ColourId>,
    opts: &'a ExhaustiveOptions,
    perms: &'a [Vec<ColourId>],
    found: Vec<LinearColouring>,
    count: u64,
}

impl Enumerator<'_> {
    fn recurse(&mut self, l: u32) {
        if l == self.m {
            self.complete();
            return;
        }
        let q = self.bounds.len() as u32;
        let last_length = l == self.m - 1;
        for s in 1..=q {
            if self.opts.require_template {
                // the template lives in colour q: it must own length m-1 and
                // stay sum-free (no triangle through the new length)
                if last_length && s != q {
                    continue;
                }
                if s == q && self.creates_bound_clique_for(s, l, 3) {
                    continue;
                }
            }
            if self.creates_bound_clique(s, l) {
                continue;
            }
            self.members[(s - 1) as usize].insert(l as usize);
            self.colours.push(s);
            self.recurse(l + 1);
            self.colours.pop();
            self.members[(s - 1) as usize].remove(l as usize);
        }
    }

    /// Would assigning length `l` to colour `s` complete a `K_{k_s}`?
    /// `l` is the largest length in its class, so only cliques whose maximum
    /// difference is `l` need checking.
    fn creates_bound_clique(&self, s: ColourId, l: u32) -> bool {
        self.creates_bound_clique_for(s, l, self.bounds.bound(s))
    }

    fn creates_bound_clique_for(&self, s: ColourId, l: u32, k: u32) -> bool {
        if k == 2 {
            return true; // bound 2 forbids any edge of this colour
        }
        let member = &self.members[(s - 1) as usize];
        let target = (k - 2) as usize; // elements besides the forced l
        if target == 0 {
            return true;
        }
        // candidates: x in the class with l - x also in the class
        let mut cand = BitSet::new(self.m as usize);
        for x in member.iter() {
            if x < l as usize && member.contains(l as usize - x) {
                cand.insert(x);
            }
        }
        if cand.len() < target {
            return false;
        }
        let mut current = Vec::with_capacity(target);
        extend_subset(&mut current, &cand, member, target)
    }

    fn complete(&mut self) {
        let col = LinearColouring::new(self.m, self.bounds.len() as u32, self.colours.clone())
            .expect("enumerator builds valid colourings");
        if self.opts.require_template {
            let q = self.bounds.len() as u32;
            debug_assert!(validate_template(&col, q).is_ok());
            if validate_template(&col, q).is_err() {
                return;
            }
        }
        if self.opts.canonical && !self.is_canonical() {
            return;
        }
        self.count += 1;
        if self.opts.limit.is_none_or(|lim| self.found.len() < lim) {
            self.found.push(col);
        }
    }

    fn is_canonical(&self) -> bool {
        for perm in self.perms {
            let smaller = self
                .colours
                .iter()
                .map(|&c| perm[(c - 1) as usize])
                .lt(self.colours.iter().copied());
            if smaller {
                return false;
            }
        }
        true
    }
}

/// Recursive search for a difference subset of size `target` inside `cand`,
/// all pairwise differences in `member`.
fn extend_subset(current: &mut Vec<Length>, cand: &BitSet, member: &BitSet, target: usize) -> bool {
    if current.len() == target {
        return true;
    }
    let mut remaining = cand.len();
    for h in cand.iter() {
        if current.len() + remaining < target {
            return false;
        }
        remaining -= 1;
        let mut next = cand.clone();
        next.retain_above(h);
        next.intersect_shifted(member, h);
        current.push(h as Length);
        if extend_subset(current, &next, member, target) {
            return true;
        }
        current.pop();
    }
    false
}

/// Permutations of `1..=q` that keep the bounds vector fixed.
fn bounds_preserving_permutations(bounds: &BoundsVector) -> Vec<Vec<ColourId>> {
    let q = bounds.len();
    let mut perms = Vec::new();
    let mut current: Vec<ColourId> = Vec::with_capacity(q);
    let mut used = vec![false; q];
    fn rec(
        bounds: &BoundsVector,
        current: &mut Vec<ColourId>,
        used: &mut Vec<bool>,
        out: &mut Vec<Vec<ColourId>>,
    ) {
        let q = bounds.len();
        if current.len() == q {
            let identity = current.iter().enumerate().all(|(i, &p)| p as usize == i + 1);
            if !identity {
                out.push(current.clone());
            }
            return;
        }
        let source = current.len(); // permuting colour source+1
        for target in 0..q {
            if !used[target] && bounds.as_slice()[target] == bounds.as_slice()[source] {
                used[target] = true;
                current.push((target + 1) as ColourId);
                rec(bounds, current, used, out);
                current.pop();
                used[target] = false;
            }
        }
    }
    rec(bounds, &mut current, &mut used, &mut perms);
    perms
}

/// Randomised search: `iterations` uniformly random colour sequences, keeping
/// the distinct ones that satisfy the bounds (and template requirement).
/// Deterministic for a fixed seed.
pub fn randomised(
    m: u32,
    bounds: &BoundsVector,
    require_template: bool,
    seed: u64,
    iterations: u64,
) -> Result<Vec<LinearColouring>> {
    if m < 2 {
        return Err(Error::ArgumentRange(format!(
            "order must be at least 2, got {m}"
        )));
    }
    let q = bounds.len() as u32;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen: HashSet<Vec<ColourId>> = HashSet::new();
    let mut found = Vec::new();
    for _ in 0..iterations {
        let colours: Vec<ColourId> = (1..m).map(|_| rng.gen_range(1..=q)).collect();
        if seen.contains(&colours) {
            continue;
        }
        let col = LinearColouring::new(m, q, colours.clone())?;
        if require_template && validate_template(&col, q).is_err() {
            continue;
        }
        if crate::clique::verify(&col, bounds)?.pass {
            seen.insert(colours);
            found.push(col);
        }
    }
    Ok(found)
}

/// Cyclic colouring of prime order `p` from power-residue classes: the
/// multiplicative group mod `p` splits into `class_count` cosets of the
/// subgroup of `class_count`-th powers, and `assignment[i]` is the colour of
/// coset `i` (coset 0 holds the residues themselves). The result is cyclic
/// whenever each class is closed under negation mod `p`.
pub fn residue_colouring(
    p: u32,
    class_count: u32,
    assignment: &[ColourId],
) -> Result<LinearColouring> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if class_count == 0 || (p - 1) % class_count != 0 {
        return Err(Error::InvalidAssignment(format!(
            "class count {class_count} does not divide p-1 = {}",
            p - 1
        )));
    }
    if assignment.len() != class_count as usize {
        return Err(Error::InvalidAssignment(format!(
            "expected {class_count} class colours, got {}",
            assignment.len()
        )));
    }
    if assignment.iter().any(|&c| c < 1) {
        return Err(Error::InvalidAssignment("colour ids are 1-based".into()));
    }
    let q = *assignment.iter().max().expect("non-empty assignment");

    // discrete logs relative to the least primitive root
    let mut index = vec![0u32; p as usize];
    if p > 2 {
        let g = least_primitive_root(p);
        let mut pow = 1u64;
        for i in 0..(p - 1) {
            index[pow as usize] = i;
            pow = pow * g as u64 % p as u64;
        }
    }
    let colours: Vec<ColourId> = (1..p)
        .map(|l| assignment[(index[l as usize] % class_count) as usize])
        .collect();
    LinearColouring::new(p, q, colours)
}

/// Quadratic-residue 2-colouring of prime order `p` (residues colour 1).
pub fn quadratic_residue_colouring(p: u32) -> Result<LinearColouring> {
    residue_colouring(p, 2, &[1, 2])
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

fn least_primitive_root(p: u32) -> u32 {
    let phi = p - 1;
    let factors = prime_factors(phi);
    'outer: for g in 2..p {
        for &f in &factors {
            if pow_mod(g, phi / f, p) == 1 {
                continue 'outer;
            }
        }
        return g;
    }
    unreachable!("every prime has a primitive root")
}

fn prime_factors(mut n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn pow_mod(base: u32, mut exp: u32, modulus: u32) -> u32 {
    let mut result = 1u64;
    let mut base = base as u64 % modulus as u64;
    while exp > 0 {
        if exp & 1 == 1 {
            result = result * base % modulus as u64;
        }
        base = base * base % modulus as u64;
        exp >>= 1;
    }
    result as u32
}
