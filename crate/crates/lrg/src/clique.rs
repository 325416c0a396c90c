//! Clique numbers of linear colourings via the difference-set characterisation.
//!
//! A monochromatic `K_t` in colour `s` exists exactly when some subset
//! `{h_1, ..., h_{t-1}}` of the length set `L_s` has all pairwise differences
//! inside `L_s`; the clique vertices are then `{0, h_1, ..., h_{t-1}}`.
//! The search extends such subsets depth-first in increasing order, keeping
//! the candidate set as an intersection of `L_s` with shifted copies of
//! itself, so the first witness found is the lexicographically smallest.
//!
//! An explicit-graph maximum-clique oracle is kept alongside as an independent
//! route for cross-checking on small instances.

use rayon::prelude::*;
use std::fmt;

use crate::bitset::BitSet;
use crate::colouring::{ColourId, ExplicitColouredGraph, Length, LengthSet, LinearColouring};
use crate::{Error, Result};

/// The explicit oracle exists only to validate the fast path on small instances.
pub const ORACLE_GUARD: u32 = 200;

/// Per-colour clique bounds `(k_1, ..., k_q)`, each at least 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundsVector(Vec<u32>);

impl BoundsVector {
    pub fn new(bounds: Vec<u32>) -> Result<Self> {
        if bounds.is_empty() {
            return Err(Error::InvalidBounds("bounds vector is empty".into()));
        }
        if let Some(&k) = bounds.iter().find(|&&k| k < 2) {
            return Err(Error::InvalidBounds(format!(
                "every bound must be at least 2, got {k}"
            )));
        }
        Ok(BoundsVector(bounds))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Bound for colour `s` (1-based).
    pub fn bound(&self, colour: ColourId) -> u32 {
        self.0[(colour - 1) as usize]
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    /// Concatenation, used to assemble compound bounds from prototype bounds.
    pub fn concat(&self, other: &BoundsVector) -> BoundsVector {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        BoundsVector(v)
    }

    /// Entries sorted ascending; the conventional signature of a Ramsey graph.
    pub fn sorted(&self) -> Vec<u32> {
        let mut v = self.0.clone();
        v.sort_unstable();
        v
    }
}

impl fmt::Display for BoundsVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|k| k.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// A difference subset certifying a monochromatic `K_{t}` with `t = diffs.len() + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliqueWitness {
    pub colour: ColourId,
    /// Strictly increasing; every element and every pairwise difference lies
    /// in the witnessed colour's length set.
    pub diffs: Vec<Length>,
}

impl CliqueWitness {
    /// Order of the clique this witness certifies.
    pub fn clique_order(&self) -> u32 {
        self.diffs.len() as u32 + 1
    }

    /// The implied vertex set `{0, h_1, ..., h_{t-1}}`.
    pub fn vertices(&self) -> Vec<u32> {
        let mut v = vec![0];
        v.extend_from_slice(&self.diffs);
        v
    }

    /// Re-validates the witness against a length set.
    pub fn validates(&self, set: &LengthSet) -> bool {
        if self.colour != set.colour() {
            return false;
        }
        for (i, &a) in self.diffs.iter().enumerate() {
            if !set.contains(a) {
                return false;
            }
            for &b in &self.diffs[i + 1..] {
                if b <= a || !set.contains(b - a) {
                    return false;
                }
            }
        }
        true
    }
}

/// How a report's clique numbers were obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    /// Every colour searched over all of its lengths.
    Full,
    /// Retained prototype colours searched under their length caps; inherited
    /// colours reported from the second prototype.
    Restricted,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Method::Full => write!(f, "full"),
            Method::Restricted => write!(f, "restricted"),
        }
    }
}

impl std::str::FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "full" => Ok(Method::Full),
            "restricted" => Ok(Method::Restricted),
            other => Err(Error::InvalidProvenance(format!("unknown method `{other}`"))),
        }
    }
}

/// Outcome for one colour of a verification.
#[derive(Clone, Debug)]
pub struct ColourVerdict {
    pub colour: ColourId,
    pub clique: u32,
    pub bound: u32,
    pub ok: bool,
    /// For failing colours: the smallest witness of a bound-violating clique.
    pub witness: Option<CliqueWitness>,
}

/// Result of checking a colouring against a bounds vector.
#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub verdicts: Vec<ColourVerdict>,
    pub pass: bool,
    pub method: Method,
}

impl VerificationReport {
    /// Human-readable rendering, one line per colour plus a verdict line.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for v in &self.verdicts {
            out.push_str(&format!(
                "colour {}: clique {} bound {} {}",
                v.colour,
                v.clique,
                v.bound,
                if v.ok { "ok" } else { "FAIL" }
            ));
            if let Some(w) = &v.witness {
                let parts: Vec<String> = w.diffs.iter().map(|d| d.to_string()).collect();
                out.push_str(&format!(" witness {}", parts.join(",")));
            }
            out.push('\n');
        }
        out.push_str(&format!(
            "verdict: {} (method {})\n",
            if self.pass { "pass" } else { "fail" },
            self.method
        ));
        out
    }

    /// One record per line, `key=value` pairs, for scripting.
    pub fn render_records(&self) -> String {
        let mut out = String::new();
        for v in &self.verdicts {
            out.push_str(&format!(
                "colour={} clique={} bound={} ok={}",
                v.colour, v.clique, v.bound, v.ok
            ));
            if let Some(w) = &v.witness {
                let parts: Vec<String> = w.diffs.iter().map(|d| d.to_string()).collect();
                out.push_str(&format!(" witness={}", parts.join(",")));
            }
            out.push('\n');
        }
        out.push_str(&format!(
            "verdict={} method={}\n",
            if self.pass { "pass" } else { "fail" },
            self.method
        ));
        out
    }
}

/// Searches `set` for a difference subset of size `k - 1` (a `K_k` witness),
/// optionally restricted to elements `<= cap`. Returns the lexicographically
/// smallest witness, or `None` if no such clique exists.
pub fn has_kclique(set: &LengthSet, k: u32, cap: Option<Length>) -> Option<CliqueWitness> {
    assert!(k >= 2, "clique bound below 2 is meaningless");
    let target = (k - 1) as usize;

    let universe = set.max().map(|m| m as usize + 1).unwrap_or(0);
    if universe == 0 {
        return None;
    }
    let member = BitSet::from_values(universe, set.lengths().iter().map(|&l| l as usize));
    let mut start = member.clone();
    if let Some(c) = cap {
        start.retain_at_most(c as usize);
    }
    if start.len() < target {
        return None;
    }

    let mut current: Vec<Length> = Vec::with_capacity(target);
    if extend(&mut current, &start, &member, target) {
        Some(CliqueWitness {
            colour: set.colour(),
            diffs: current,
        })
    } else {
        None
    }
}

/// Depth-first extension in increasing order. `cand` holds the values that
/// are greater than everything in `current` and compatible (difference-wise)
/// with all of it.
fn extend(current: &mut Vec<Length>, cand: &BitSet, member: &BitSet, target: usize) -> bool {
    if current.len() == target {
        return true;
    }
    let mut remaining = cand.len();
    if current.len() + remaining < target {
        return false;
    }
    for h in cand.iter() {
        if current.len() + remaining < target {
            return false;
        }
        remaining -= 1;
        let mut next = cand.clone();
        next.retain_above(h);
        next.intersect_shifted(member, h);
        current.push(h as Length);
        if extend(current, &next, member, target) {
            return true;
        }
        current.pop();
    }
    false
}

/// Largest `t` such that a `K_t` witness exists in `set`, with the smallest
/// witness for that `t`. Empty sets have clique number 1 by convention; a
/// non-empty set without a compatible pair has clique number 2.
pub fn clique_number(set: &LengthSet) -> (u32, Option<CliqueWitness>) {
    clique_number_capped(set, None)
}

/// As [`clique_number`], searching only elements `<= cap`.
pub fn clique_number_capped(set: &LengthSet, cap: Option<Length>) -> (u32, Option<CliqueWitness>) {
    let capped_len = match cap {
        None => set.len(),
        Some(c) => set.lengths().iter().filter(|&&l| l <= c).count(),
    };
    if capped_len == 0 {
        return (1, None);
    }
    let mut best = (2, has_kclique(set, 2, cap));
    let mut k = 3;
    // a witness needs k-1 elements, so the set size caps the clique order
    while (k - 1) as usize <= capped_len {
        match has_kclique(set, k, cap) {
            Some(w) => best = (k, Some(w)),
            None => break,
        }
        k += 1;
    }
    best
}

/// Maximum monochromatic clique order in `colour`, by exact search on the
/// explicit graph. Independent of the difference-set path.
pub fn clique_number_oracle(g: &ExplicitColouredGraph, colour: ColourId) -> Result<u32> {
    if g.order() > ORACLE_GUARD {
        return Err(Error::OracleGuard {
            order: g.order(),
            guard: ORACLE_GUARD,
        });
    }
    let n = g.order() as usize;
    let adj: Vec<BitSet> = (0..n)
        .map(|i| {
            BitSet::from_values(
                n,
                (0..n).filter(|&j| j != i && g.colour_of(i as u32, j as u32) == colour),
            )
        })
        .collect();

    // Vertex-by-vertex from the back: best_from[i] is the maximum clique
    // within the suffix {i, ..., n-1}; each step roots the search at vertex i.
    // A root can improve the running maximum by at most one, so the search
    // aborts as soon as an improvement is found.
    let mut best_from = vec![0usize; n + 1];
    let mut best = 0usize;
    for i in (0..n).rev() {
        let mut cand = adj[i].clone();
        cand.retain_above(i);
        oracle_extend(&adj, &best_from, 1, &cand, &mut best);
        best_from[i] = best;
    }
    Ok(best.max(1) as u32)
}

fn oracle_extend(
    adj: &[BitSet],
    best_from: &[usize],
    size: usize,
    cand: &BitSet,
    best: &mut usize,
) -> bool {
    if cand.is_empty() {
        if size > *best {
            *best = size;
            return true;
        }
        return false;
    }
    let mut remaining = cand.len();
    for v in cand.iter() {
        if size + remaining <= *best {
            return false;
        }
        remaining -= 1;
        // best_from is non-increasing along ascending v, so this cuts the
        // whole remainder of the loop
        if size + best_from[v] <= *best {
            return false;
        }
        let mut next = cand.clone();
        next.retain_above(v);
        next.intersect_with(&adj[v]);
        if oracle_extend(adj, best_from, size + 1, &next, best) {
            return true;
        }
    }
    false
}

/// Full verification of a colouring against per-colour clique bounds: the
/// colouring is a `(k_1, ..., k_q; m)`-graph exactly when every colour's
/// clique number is strictly below its bound.
pub fn verify(col: &LinearColouring, bounds: &BoundsVector) -> Result<VerificationReport> {
    if bounds.len() != col.colour_count() as usize {
        return Err(Error::BoundsArity {
            expected: col.colour_count() as usize,
            got: bounds.len(),
        });
    }
    let sets = col.length_sets();
    let verdicts: Vec<ColourVerdict> = sets
        .par_iter()
        .map(|set| {
            let bound = bounds.bound(set.colour());
            let (clique, _) = clique_number(set);
            let ok = clique < bound;
            let witness = if ok {
                None
            } else {
                has_kclique(set, bound, None)
            };
            ColourVerdict {
                colour: set.colour(),
                clique,
                bound,
                ok,
                witness,
            }
        })
        .collect();
    let pass = verdicts.iter().all(|v| v.ok);
    Ok(VerificationReport {
        verdicts,
        pass,
        method: Method::Full,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colouring::LinearColouring;

    fn set(lengths: &[u32], order: u32) -> LengthSet {
        LengthSet::new(1, lengths.to_vec(), order).unwrap()
    }

    #[test]
    fn has_kclique_finds_interval() {
        let w = has_kclique(&set(&[1, 2, 3, 4], 12), 5, None).unwrap();
        assert_eq!(w.diffs, vec![1, 2, 3, 4]);
        assert!(w.validates(&set(&[1, 2, 3, 4], 12)));
        assert_eq!(w.clique_order(), 5);
        assert_eq!(w.vertices(), vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn sum_free_set_has_no_triangle() {
        assert!(has_kclique(&set(&[2, 3], 5), 3, None).is_none());
        assert!(has_kclique(&set(&[5, 7, 8, 9, 11], 12), 3, None).is_none());
    }

    #[test]
    fn witness_is_lexicographically_smallest() {
        // two K_3 witnesses exist in {1,2,3}: {1,2} and {1,3}... check order
        let w = has_kclique(&set(&[1, 2, 3], 7), 3, None).unwrap();
        assert_eq!(w.diffs, vec![1, 2]);
    }

    #[test]
    fn cap_restricts_elements() {
        let s = set(&[1, 2, 3, 4], 12);
        // cap 2 leaves {1, 2}: K_3 exists, K_4 does not
        assert!(has_kclique(&s, 3, Some(2)).is_some());
        assert!(has_kclique(&s, 4, Some(2)).is_none());
        // cap soundness: same as searching the sub-lengthset directly
        let sub = set(&[1, 2], 12);
        for k in 2..=5 {
            assert_eq!(
                has_kclique(&s, k, Some(2)).is_some(),
                has_kclique(&sub, k, None).is_some(),
                "k={k}"
            );
        }
    }

    #[test]
    fn clique_number_conventions() {
        assert_eq!(clique_number(&set(&[], 5)).0, 1);
        assert_eq!(clique_number(&set(&[2, 3], 5)).0, 2);
        let (t, w) = clique_number(&set(&[1, 2, 3, 4], 12));
        assert_eq!(t, 5);
        assert!(w.unwrap().validates(&set(&[1, 2, 3, 4], 12)));
    }

    #[test]
    fn clique_number_prototype_classes() {
        assert_eq!(clique_number(&set(&[1, 2, 3, 4, 6, 10], 12)).0, 5);
        assert_eq!(clique_number(&set(&[5, 7, 8, 9, 11], 12)).0, 2);
        assert_eq!(clique_number(&set(&[1, 2, 3, 5, 8], 10)).0, 4);
        assert_eq!(clique_number(&set(&[4, 6, 7, 9], 10)).0, 2);
    }

    #[test]
    fn monotonicity_of_has_kclique() {
        let s = set(&[1, 2, 3, 4, 6, 10], 12);
        let (t, _) = clique_number(&s);
        for k in 2..=t {
            assert!(has_kclique(&s, k, None).is_some(), "k={k}");
        }
        assert!(has_kclique(&s, t + 1, None).is_none());
    }

    #[test]
    fn oracle_on_pentagon_classes() {
        let c = LinearColouring::new(5, 2, vec![1, 2, 2, 1]).unwrap();
        let g = c.expand_explicit().unwrap();
        assert_eq!(clique_number_oracle(&g, 1).unwrap(), 2);
        assert_eq!(clique_number_oracle(&g, 2).unwrap(), 2);
    }

    #[test]
    fn oracle_agrees_with_difference_path_exhaustively() {
        // every 2-colouring with m <= 7
        for m in 2u32..=7 {
            let entries = (m - 1) as usize;
            for bits in 0u32..(1 << entries) {
                let colours: Vec<u32> =
                    (0..entries).map(|i| 1 + ((bits >> i) & 1)).collect();
                let c = LinearColouring::new(m, 2, colours).unwrap();
                let g = c.expand_explicit().unwrap();
                for s in c.length_sets() {
                    assert_eq!(
                        clique_number(&s).0,
                        clique_number_oracle(&g, s.colour()).unwrap(),
                        "m={m} bits={bits} colour={}",
                        s.colour()
                    );
                }
            }
        }
    }

    #[test]
    fn every_order_six_two_colouring_has_a_triangle() {
        // R(3,3) = 6
        for bits in 0u32..(1 << 5) {
            let colours: Vec<u32> = (0..5).map(|i| 1 + ((bits >> i) & 1)).collect();
            let c = LinearColouring::new(6, 2, colours).unwrap();
            let g = c.expand_explicit().unwrap();
            let max = (1..=2)
                .map(|s| clique_number_oracle(&g, s).unwrap())
                .max()
                .unwrap();
            assert!(max >= 3, "bits={bits}");
        }
    }

    #[test]
    fn oracle_guard_applies() {
        let c = LinearColouring::new(ORACLE_GUARD + 1, 1, vec![1; ORACLE_GUARD as usize]).unwrap();
        let g = c.expand_explicit().unwrap();
        assert!(matches!(
            clique_number_oracle(&g, 1),
            Err(Error::OracleGuard { .. })
        ));
    }

    #[test]
    fn verify_pentagon_passes() {
        let c = LinearColouring::new(5, 2, vec![1, 2, 2, 1]).unwrap();
        let bounds = BoundsVector::new(vec![3, 3]).unwrap();
        let r = verify(&c, &bounds).unwrap();
        assert!(r.pass);
        assert_eq!(r.method, Method::Full);
        assert_eq!(
            r.verdicts.iter().map(|v| v.clique).collect::<Vec<_>>(),
            vec![2, 2]
        );
    }

    #[test]
    fn verify_order_six_fails_with_witness() {
        let c = LinearColouring::new(6, 2, vec![1, 1, 1, 1, 1]).unwrap();
        let bounds = BoundsVector::new(vec![3, 3]).unwrap();
        let r = verify(&c, &bounds).unwrap();
        assert!(!r.pass);
        let bad = &r.verdicts[0];
        assert!(!bad.ok);
        let w = bad.witness.as_ref().unwrap();
        assert_eq!(w.clique_order(), 3);
        assert!(w.validates(&c.length_set(1).unwrap()));
        // colour 2 is empty: clique number 1, fine against bound 3
        assert!(r.verdicts[1].ok);
        assert_eq!(r.verdicts[1].clique, 1);
    }

    #[test]
    fn verify_derived_prototype() {
        let c =
            LinearColouring::new(12, 2, vec![1, 1, 1, 1, 2, 1, 2, 2, 2, 1, 2]).unwrap();
        let bounds = BoundsVector::new(vec![6, 3]).unwrap();
        let r = verify(&c, &bounds).unwrap();
        assert!(r.pass);
        assert_eq!(
            r.verdicts.iter().map(|v| v.clique).collect::<Vec<_>>(),
            vec![5, 2]
        );
    }

    #[test]
    fn verify_bounds_arity_checked() {
        let c = LinearColouring::new(5, 2, vec![1, 2, 2, 1]).unwrap();
        let bounds = BoundsVector::new(vec![3]).unwrap();
        assert!(matches!(
            verify(&c, &bounds),
            Err(Error::BoundsArity { .. })
        ));
    }

    #[test]
    fn bounds_vector_validation_and_display() {
        assert!(BoundsVector::new(vec![]).is_err());
        assert!(BoundsVector::new(vec![3, 1]).is_err());
        let b = BoundsVector::new(vec![6, 3]).unwrap();
        assert_eq!(b.to_string(), "6,3");
        assert_eq!(b.bound(1), 6);
        assert_eq!(b.sorted(), vec![3, 6]);
    }

    #[test]
    fn report_rendering() {
        let c = LinearColouring::new(5, 2, vec![1, 2, 2, 1]).unwrap();
        let bounds = BoundsVector::new(vec![3, 3]).unwrap();
        let r = verify(&c, &bounds).unwrap();
        let text = r.render_text();
        assert!(text.contains("colour 1: clique 2 bound 3 ok"));
        assert!(text.contains("verdict: pass (method full)"));
        let records = r.render_records();
        assert!(records.contains("colour=1 clique=2 bound=3 ok=true"));
        assert!(records.contains("verdict=pass method=full"));
    }
}
