//! Permutations, symmetry/composition operations, and occurrence detection
//! for classical patterns and partially ordered patterns (POPs).

use std::collections::BTreeSet;
use std::fmt;

use crate::config::MAX_PERM_LEN;
use crate::error::{Error, Result};

/// A permutation of {1..n} in one-line notation. The empty permutation ε is
/// the n = 0 case and is valid everywhere.
///
/// Values are immutable after construction.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    values: Vec<u8>,
}

impl Permutation {
    /// Validate and wrap a one-line notation sequence.
    pub fn new(values: Vec<u8>) -> Result<Permutation> {
        if values.len() > MAX_PERM_LEN {
            return Err(Error::LengthLimit { len: values.len(), max: MAX_PERM_LEN });
        }
        let n = values.len();
        let mut seen = [false; MAX_PERM_LEN + 1];
        for &v in &values {
            if v == 0 || v as usize > n || seen[v as usize] {
                return Err(Error::InvalidPermutation(format!("{values:?}")));
            }
            seen[v as usize] = true;
        }
        Ok(Permutation { values })
    }

    pub fn empty() -> Permutation {
        Permutation { values: Vec::new() }
    }

    pub fn identity(n: usize) -> Result<Permutation> {
        Permutation::new((1..=n as u8).collect())
    }

    /// Order-isomorphic copy of a sequence of distinct values.
    pub fn standardize(word: &[u8]) -> Permutation {
        let mut sorted: Vec<u8> = word.to_vec();
        sorted.sort_unstable();
        let values = word
            .iter()
            .map(|v| (sorted.binary_search(v).expect("distinct values") + 1) as u8)
            .collect();
        Permutation { values }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[u8] {
        &self.values
    }

    /// r(π)_i = π_{n+1-i}.
    pub fn reverse(&self) -> Permutation {
        let mut values = self.values.clone();
        values.reverse();
        Permutation { values }
    }

    /// c(π)_i = n + 1 - π_i.
    pub fn complement(&self) -> Permutation {
        let n = self.len() as u8;
        Permutation { values: self.values.iter().map(|&v| n + 1 - v).collect() }
    }

    /// Group-theoretic inverse: result[π_i] = i.
    pub fn inverse(&self) -> Permutation {
        let mut values = vec![0u8; self.len()];
        for (i, &v) in self.values.iter().enumerate() {
            values[v as usize - 1] = (i + 1) as u8;
        }
        Permutation { values }
    }

    /// π ⊕ σ: π followed by σ shifted up by |π|.
    pub fn direct_sum(&self, other: &Permutation) -> Result<Permutation> {
        let m = self.len() as u8;
        let mut values = self.values.clone();
        values.extend(other.values.iter().map(|&v| v + m));
        Permutation::new(values)
    }

    /// π ⊖ σ: π shifted up by |σ|, followed by σ.
    pub fn skew_sum(&self, other: &Permutation) -> Result<Permutation> {
        let n = other.len() as u8;
        let mut values: Vec<u8> = self.values.iter().map(|&v| v + n).collect();
        values.extend(&other.values);
        Permutation::new(values)
    }

    /// Classical pattern containment: some subsequence is order-isomorphic to
    /// `pattern`. Brute-force backtracking over index subsequences.
    pub fn contains(&self, pattern: &Permutation) -> bool {
        let k = pattern.len();
        if k == 0 {
            return true;
        }
        if k > self.len() {
            return false;
        }
        let mut chosen: Vec<u8> = Vec::with_capacity(k);
        self.contains_from(&pattern.values, &mut chosen, 0)
    }

    fn contains_from(&self, pat: &[u8], chosen: &mut Vec<u8>, start: usize) -> bool {
        let j = chosen.len();
        if j == pat.len() {
            return true;
        }
        let remaining = pat.len() - j;
        for i in start..=(self.len() - remaining) {
            let v = self.values[i];
            let ok = chosen
                .iter()
                .enumerate()
                .all(|(m, &w)| (w < v) == (pat[m] < pat[j]));
            if ok {
                chosen.push(v);
                if self.contains_from(pat, chosen, i + 1) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }

    pub fn avoids(&self, pattern: &Permutation) -> bool {
        !self.contains(pattern)
    }

    /// Parse one-line text: space-free digit string for n <= 9, comma
    /// separated for longer permutations. "ε" and "" parse as the empty
    /// permutation.
    pub fn parse(text: &str) -> Result<Permutation> {
        let text = text.trim();
        if text.is_empty() || text == "ε" {
            return Ok(Permutation::empty());
        }
        let values: Vec<u8> = if text.contains(',') {
            text.split(',')
                .map(|part| {
                    part.trim()
                        .parse::<u8>()
                        .map_err(|_| Error::InvalidPermutation(text.to_string()))
                })
                .collect::<Result<_>>()?
        } else {
            text.chars()
                .map(|ch| {
                    ch.to_digit(10)
                        .filter(|&d| d >= 1)
                        .map(|d| d as u8)
                        .ok_or_else(|| Error::InvalidPermutation(text.to_string()))
                })
                .collect::<Result<_>>()?
        };
        Permutation::new(values)
    }

    /// Position (1-indexed) of the maximum value n; `None` for ε.
    pub fn position_of_max(&self) -> Option<usize> {
        let n = self.len() as u8;
        self.values.iter().position(|&v| v == n).map(|i| i + 1)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.values.is_empty() {
            return write!(f, "ε");
        }
        if self.len() <= 9 {
            for v in &self.values {
                write!(f, "{v}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.values.iter().map(|v| v.to_string()).collect();
            write!(f, "{}", parts.join(","))
        }
    }
}

/// Advance `values` to the next permutation in lexicographic order.
/// Returns false when `values` is the last (descending) arrangement.
pub(crate) fn next_permutation(values: &mut [u8]) -> bool {
    if values.len() < 2 {
        return false;
    }
    let mut i = values.len() - 1;
    while i > 0 && values[i - 1] >= values[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = values.len() - 1;
    while values[j] <= values[i - 1] {
        j -= 1;
    }
    values.swap(i - 1, j);
    values[i..].reverse();
    true
}

/// Visit every permutation of {1..n} in lexicographic order.
pub fn for_each_permutation<F: FnMut(&Permutation)>(n: usize, mut f: F) {
    if n == 0 {
        f(&Permutation::empty());
        return;
    }
    let mut values: Vec<u8> = (1..=n as u8).collect();
    loop {
        f(&Permutation { values: values.clone() });
        if !next_permutation(&mut values) {
            break;
        }
    }
}

/// A partially ordered pattern: a strict partial order on the labels
/// {1..k}, where label j stands for the j-th element of a candidate
/// subsequence. An occurrence is a subsequence whose value comparisons
/// realize exactly the order relations; incomparable labels are
/// unconstrained.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PopPattern {
    size: usize,
    /// Relations as given (a below b), before transitive closure.
    relations: BTreeSet<(u8, u8)>,
    /// above[a] = bitmask of labels strictly above label a+1 (closure).
    above: Vec<u16>,
}

impl PopPattern {
    /// Build a POP from `(a, b)` pairs meaning "label a is below label b".
    /// The transitive closure is computed once here; a cyclic relation set is
    /// rejected.
    pub fn new(size: usize, relations: &[(usize, usize)]) -> Result<PopPattern> {
        if size == 0 || size > MAX_PERM_LEN {
            return Err(Error::InvalidPoset(format!("size {size} out of range")));
        }
        let mut given = BTreeSet::new();
        let mut above = vec![0u16; size];
        for &(a, b) in relations {
            if a == 0 || b == 0 || a > size || b > size || a == b {
                return Err(Error::InvalidPoset(format!("relation ({a},{b}) out of range")));
            }
            given.insert((a as u8, b as u8));
            above[a - 1] |= 1 << (b - 1);
        }
        // transitive closure by propagation to a fixed point
        loop {
            let mut changed = false;
            for a in 0..size {
                let mut mask = above[a];
                let mut bits = above[a];
                while bits != 0 {
                    let b = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    mask |= above[b];
                }
                if mask != above[a] {
                    above[a] = mask;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        for (a, &mask) in above.iter().enumerate() {
            if mask & (1 << a) != 0 {
                return Err(Error::InvalidPoset(format!("cycle through label {}", a + 1)));
            }
        }
        Ok(PopPattern { size, relations: given, above })
    }

    /// The flat POP of length k: labels 1..k-1 mutually incomparable, all
    /// below label k. Avoiding it forces the maximum of a permutation into
    /// the first k-1 positions.
    pub fn flat(k: usize) -> Result<PopPattern> {
        if k == 0 {
            return Err(Error::InvalidPoset("flat POP needs k >= 1".into()));
        }
        let relations: Vec<(usize, usize)> = (1..k).map(|i| (i, k)).collect();
        PopPattern::new(k, &relations)
    }

    /// A classical pattern as the chain poset implied by its values.
    pub fn from_classical(pattern: &Permutation) -> Result<PopPattern> {
        let k = pattern.len();
        if k == 0 {
            return Err(Error::InvalidPoset("classical pattern must be non-empty".into()));
        }
        let vals = pattern.values();
        let mut relations = Vec::new();
        for i in 0..k {
            for j in 0..k {
                if vals[i] < vals[j] {
                    relations.push((i + 1, j + 1));
                }
            }
        }
        PopPattern::new(k, &relations)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn relations(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.relations.iter().map(|&(a, b)| (a as usize, b as usize))
    }

    /// True iff label a is below label b in the transitive closure.
    pub fn below(&self, a: usize, b: usize) -> bool {
        self.above[a - 1] & (1 << (b - 1)) != 0
    }

    /// `{"size": k, "relations": [[a, b], ...]}`.
    pub fn to_json(&self) -> serde_json::Value {
        let rels: Vec<serde_json::Value> = self
            .relations
            .iter()
            .map(|&(a, b)| serde_json::json!([a, b]))
            .collect();
        serde_json::json!({ "size": self.size, "relations": rels })
    }

    pub fn from_json(text: &str) -> Result<PopPattern> {
        let value: serde_json::Value =
            serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
        let size = value["size"]
            .as_u64()
            .ok_or_else(|| Error::Json("missing or invalid \"size\"".into()))?;
        let rels = value["relations"]
            .as_array()
            .ok_or_else(|| Error::Json("missing \"relations\" array".into()))?;
        let mut relations = Vec::new();
        for pair in rels {
            let a = pair[0].as_u64();
            let b = pair[1].as_u64();
            match (a, b) {
                (Some(a), Some(b)) => relations.push((a as usize, b as usize)),
                _ => return Err(Error::Json(format!("bad relation entry {pair}"))),
            }
        }
        PopPattern::new(size as usize, &relations)
    }
}

/// Count index subsequences i_1 < ... < i_k of `p` realizing the POP:
/// p[i_a] < p[i_b] whenever a is below b, p[i_a] > p[i_b] whenever b is
/// below a, and either order when a, b are incomparable.
pub fn count_pop_occurrences(p: &Permutation, pat: &PopPattern) -> u64 {
    let mut count = 0;
    let mut chosen: Vec<u8> = Vec::with_capacity(pat.size());
    pop_search(p, pat, &mut chosen, 0, &mut |_| {
        count += 1;
        true
    });
    count
}

/// True iff the POP has no occurrence in `p`.
pub fn avoids_pop(p: &Permutation, pat: &PopPattern) -> bool {
    let mut found = false;
    let mut chosen: Vec<u8> = Vec::with_capacity(pat.size());
    pop_search(p, pat, &mut chosen, 0, &mut |_| {
        found = true;
        false // stop at the first occurrence
    });
    !found
}

/// Backtracking over subsequences; `on_match` returns false to stop early.
fn pop_search(
    p: &Permutation,
    pat: &PopPattern,
    chosen: &mut Vec<u8>,
    start: usize,
    on_match: &mut impl FnMut(&[u8]) -> bool,
) -> bool {
    let j = chosen.len();
    if j == pat.size() {
        return on_match(chosen);
    }
    let remaining = pat.size() - j;
    if p.len() < remaining || start > p.len() - remaining {
        return true;
    }
    for i in start..=(p.len() - remaining) {
        let v = p.values()[i];
        let mut ok = true;
        for (m, &w) in chosen.iter().enumerate() {
            let (a, b) = (m + 1, j + 1);
            if pat.below(a, b) && w >= v {
                ok = false;
                break;
            }
            if pat.below(b, a) && v >= w {
                ok = false;
                break;
            }
        }
        if ok {
            chosen.push(v);
            let keep_going = pop_search(p, pat, chosen, i + 1, on_match);
            chosen.pop();
            if !keep_going {
                return false;
            }
        }
    }
    true
}
