//! Separable permutations: membership, generation, Schröder numbers, and the
//! block decomposition around the maximum element.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::config;
use crate::error::{Error, Result};
use crate::perm::{for_each_permutation, Permutation};

/// A permutation is separable iff it avoids the classical patterns 2413
/// and 3142 (ε counts as separable).
pub fn is_separable(p: &Permutation) -> bool {
    static PATTERNS: std::sync::OnceLock<(Permutation, Permutation)> = std::sync::OnceLock::new();
    let (a, b) = PATTERNS.get_or_init(|| {
        (
            Permutation::new(vec![2, 4, 1, 3]).expect("valid pattern"),
            Permutation::new(vec![3, 1, 4, 2]).expect("valid pattern"),
        )
    });
    p.avoids(a) && p.avoids(b)
}

/// All separable permutations of length n, in lexicographic order of
/// one-line notation. Filter-by-avoidance over S_n; the configured bound
/// keeps the n! scan at desk scale.
pub fn generate_separable(n: usize) -> Result<Vec<Permutation>> {
    let max = config::generate_bound();
    if n > max {
        return Err(Error::EnumerationLimit { n, max });
    }
    let mut out = Vec::new();
    for_each_permutation(n, |p| {
        if is_separable(p) {
            out.push(p.clone());
        }
    });
    Ok(out)
}

/// The n-th Schröder number: 1, 2, 6, 22, 90, 394, 1806, ...
///
/// s_{n-1} counts separable permutations of length n. Computed by the
/// recurrence (n+1) s_n = 3(2n-1) s_{n-1} - (n-2) s_{n-2}, validated against
/// brute-force class counts in the tests.
pub fn schroder(n: usize) -> BigInt {
    let mut prev = BigInt::from(1); // s_0
    if n == 0 {
        return prev;
    }
    let mut cur = BigInt::from(2); // s_1
    for m in 2..=n {
        let m = m as i64;
        let next_num = BigInt::from(3 * (2 * m - 1)) * &cur - BigInt::from(m - 2) * &prev;
        let (next, rem) = num_integer::Integer::div_rem(&next_num, &BigInt::from(m + 1));
        assert!(rem.is_zero(), "Schröder recurrence must divide exactly");
        prev = cur;
        cur = next;
    }
    cur
}

/// The block structure of a non-empty separable permutation around its
/// maximum: π = L_1 L_2 ... L_m n R_m R_{m-1} ... R_1, where every block is a
/// value interval, the value chain R_1 < L_1 < R_2 < L_2 < ... < R_m < L_m
/// holds, and only R_1 and L_m may be empty.
///
/// Blocks are stored as standardized patterns; [`recompose`] restores the
/// original permutation from patterns, block sizes and the interval chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StankovaDecomposition {
    /// L_1 .. L_m.
    left: Vec<Permutation>,
    /// R_m .. R_1 (position order in the permutation).
    right: Vec<Permutation>,
}

impl StankovaDecomposition {
    pub fn m(&self) -> usize {
        self.left.len()
    }

    /// L_1 .. L_m as patterns.
    pub fn left_blocks(&self) -> &[Permutation] {
        &self.left
    }

    /// R_m .. R_1 as patterns, in position order.
    pub fn right_blocks(&self) -> &[Permutation] {
        &self.right
    }

    pub fn total_len(&self) -> usize {
        1 + self.left.iter().map(Permutation::len).sum::<usize>()
            + self.right.iter().map(Permutation::len).sum::<usize>()
    }

    /// Value offsets of (L_1..L_m, R_1..R_m) induced by the interval chain
    /// R_1 < L_1 < R_2 < L_2 < ... < R_m < L_m.
    fn offsets(&self) -> (Vec<u8>, Vec<u8>) {
        let m = self.m();
        let mut left_off = vec![0u8; m];
        let mut right_off = vec![0u8; m];
        let mut base = 0u8;
        for i in 0..m {
            right_off[i] = base;
            base += self.right[m - 1 - i].len() as u8;
            left_off[i] = base;
            base += self.left[i].len() as u8;
        }
        (left_off, right_off)
    }

    /// Original values of L_{i+1} (0-indexed i).
    pub fn left_values(&self, i: usize) -> Vec<u8> {
        let (left_off, _) = self.offsets();
        self.left[i].values().iter().map(|&v| v + left_off[i]).collect()
    }

    /// Original values of the i-th stored right block (0-indexed over
    /// R_m..R_1).
    pub fn right_values(&self, i: usize) -> Vec<u8> {
        let (_, right_off) = self.offsets();
        let m = self.m();
        self.right[i].values().iter().map(|&v| v + right_off[m - 1 - i]).collect()
    }

    /// Rebuild the permutation L_1..L_m n R_m..R_1 from the blocks.
    pub fn recompose(&self) -> Permutation {
        let n = self.total_len() as u8;
        let mut values = Vec::with_capacity(n as usize);
        for i in 0..self.m() {
            values.extend(self.left_values(i));
        }
        values.push(n);
        for i in 0..self.m() {
            values.extend(self.right_values(i));
        }
        Permutation::new(values).expect("blocks partition 1..n")
    }
}

/// Decompose a non-empty separable permutation into its maximal block
/// structure around the maximum.
///
/// The value intervals are forced: walking the values 1..n-1, the maximal
/// runs of "left of n" / "right of n" membership alternate, and padding with
/// an empty R_1 (when the lowest run sits left) and an empty L_m (when the
/// highest run sits right) yields the chain. Position blocks are then read
/// off by size and validated by recomposition.
pub fn stankova_decompose(p: &Permutation) -> Result<StankovaDecomposition> {
    if p.is_empty() {
        return Err(Error::EmptyPermutation);
    }
    if !is_separable(p) {
        return Err(Error::NotSeparable(p.to_string()));
    }
    let n = p.len();
    let pos = p.position_of_max().expect("non-empty") - 1; // 0-indexed
    let left_part = &p.values()[..pos];
    let right_part = &p.values()[pos + 1..];

    let mut in_left = vec![false; n + 1];
    for &v in left_part {
        in_left[v as usize] = true;
    }

    // maximal membership runs over values 1..n-1, bottom up
    let mut runs: Vec<(bool, usize)> = Vec::new(); // (is_left, run length)
    for &side in &in_left[1..n] {
        match runs.last_mut() {
            Some((run_side, len)) if *run_side == side => *len += 1,
            _ => runs.push((side, 1)),
        }
    }

    // pad to the alternating chain R_1, L_1, ..., R_m, L_m
    let mut chain: Vec<(bool, usize)> = Vec::new();
    if runs.first().map(|&(side, _)| side) != Some(false) {
        chain.push((false, 0)); // empty R_1
    }
    chain.extend(&runs);
    if chain.last().map(|&(side, _)| side) != Some(true) {
        chain.push((true, 0)); // empty L_m
    }
    debug_assert!(chain.len().is_multiple_of(2));
    debug_assert!(chain
        .iter()
        .enumerate()
        .all(|(idx, &(side, _))| side == (idx % 2 == 1)));
    let m = chain.len() / 2;

    // slice the left part into L_1..L_m and the right part into R_m..R_1
    let left_sizes: Vec<usize> = (0..m).map(|i| chain[2 * i + 1].1).collect();
    let right_sizes: Vec<usize> = (0..m).map(|i| chain[2 * i].1).collect(); // R_1..R_m
    let mut left = Vec::with_capacity(m);
    let mut cursor = 0;
    for &size in &left_sizes {
        left.push(Permutation::standardize(&left_part[cursor..cursor + size]));
        cursor += size;
    }
    debug_assert_eq!(cursor, left_part.len());
    let mut right = Vec::with_capacity(m);
    cursor = 0;
    for i in (0..m).rev() {
        let size = right_sizes[i];
        right.push(Permutation::standardize(&right_part[cursor..cursor + size]));
        cursor += size;
    }
    debug_assert_eq!(cursor, right_part.len());

    let decomposition = StankovaDecomposition { left, right };
    // Recomposition compares patterns + interval offsets against the input,
    // so it certifies both the positional block structure and the value
    // chain at once.
    assert_eq!(
        decomposition.recompose(),
        *p,
        "block structure must reproduce the input"
    );
    Ok(decomposition)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(text: &str) -> Permutation {
        Permutation::parse(text).unwrap()
    }

    #[test]
    fn separability_examples() {
        assert!(is_separable(&Permutation::empty()));
        assert!(!is_separable(&perm("2413")));
        assert!(!is_separable(&perm("3142")));
        assert!(is_separable(&perm("2165743")));
    }

    #[test]
    fn generation_counts_and_order() {
        assert_eq!(generate_separable(0).unwrap(), vec![Permutation::empty()]);
        assert_eq!(generate_separable(3).unwrap().len(), 6);
        assert_eq!(generate_separable(5).unwrap().len(), 90);
        let all4 = generate_separable(4).unwrap();
        assert_eq!(all4.len(), 22);
        // lexicographic order, 2413 and 3142 missing
        let mut sorted = all4.clone();
        sorted.sort();
        assert_eq!(all4, sorted);
        assert!(!all4.contains(&perm("2413")));
        assert!(!all4.contains(&perm("3142")));
    }

    #[test]
    fn generation_respects_bound() {
        assert!(matches!(
            generate_separable(config::generate_bound() + 1),
            Err(Error::EnumerationLimit { .. })
        ));
    }

    #[test]
    fn schroder_values() {
        let expect: [i64; 10] = [1, 2, 6, 22, 90, 394, 1806, 8558, 41586, 206098];
        for (n, &s) in expect.iter().enumerate() {
            assert_eq!(schroder(n), BigInt::from(s));
        }
    }

    #[test]
    fn schroder_matches_brute_force_counts() {
        for n in 1..=9 {
            let count = generate_separable(n).unwrap().len();
            assert_eq!(BigInt::from(count), schroder(n - 1), "n = {n}");
        }
    }

    #[test]
    fn decomposition_worked_example() {
        // 2165743: L_1 = 21, L_2 = 65, R_1 = ε, R_2 = 43
        let d = stankova_decompose(&perm("2165743")).unwrap();
        assert_eq!(d.m(), 2);
        assert_eq!(d.left_values(0), vec![2, 1]);
        assert_eq!(d.left_values(1), vec![6, 5]);
        assert_eq!(d.right_blocks()[1], Permutation::empty()); // R_1
        assert_eq!(d.right_values(0), vec![4, 3]); // R_2
        assert_eq!(d.recompose(), perm("2165743"));
    }

    #[test]
    fn decomposition_small_cases() {
        let d = stankova_decompose(&perm("1")).unwrap();
        assert_eq!(d.m(), 1);
        assert_eq!(d.left_blocks()[0], Permutation::empty());
        assert_eq!(d.right_blocks()[0], Permutation::empty());

        let d = stankova_decompose(&perm("312")).unwrap();
        assert_eq!(d.m(), 1);
        assert_eq!(d.left_blocks()[0], Permutation::empty());
        assert_eq!(d.right_blocks()[0], perm("12"));
        assert_eq!(d.right_values(0), vec![1, 2]);
    }

    #[test]
    fn decomposition_rejects_bad_input() {
        assert!(matches!(
            stankova_decompose(&Permutation::empty()),
            Err(Error::EmptyPermutation)
        ));
        assert!(matches!(
            stankova_decompose(&perm("2413")),
            Err(Error::NotSeparable(_))
        ));
    }

    #[test]
    fn decomposition_round_trips_exhaustively() {
        for n in 1..=8 {
            for p in generate_separable(n).unwrap() {
                let d = stankova_decompose(&p).unwrap();
                assert_eq!(d.recompose(), p);
                assert_eq!(d.total_len(), n);
                let m = d.m();
                for (i, block) in d.left_blocks().iter().enumerate() {
                    assert!(is_separable(block));
                    assert!(i + 1 == m || !block.is_empty(), "only L_m may be empty: {p}");
                }
                for (i, block) in d.right_blocks().iter().enumerate() {
                    assert!(is_separable(block));
                    assert!(i + 1 == m || !block.is_empty(), "only R_1 may be empty: {p}");
                }
            }
        }
    }

    #[test]
    fn value_chain_holds() {
        for n in 1..=7 {
            for p in generate_separable(n).unwrap() {
                let d = stankova_decompose(&p).unwrap();
                let m = d.m();
                // collect chain value sets bottom-up: R_1, L_1, R_2, L_2, ...
                let mut chain: Vec<Vec<u8>> = Vec::new();
                for i in 0..m {
                    chain.push(d.right_values(m - 1 - i));
                    chain.push(d.left_values(i));
                }
                let mut floor = 0u8;
                for block in chain {
                    for &v in &block {
                        assert!(v > floor, "value chain violated in {p}");
                    }
                    if let Some(&max) = block.iter().max() {
                        floor = max;
                    }
                }
            }
        }
    }

    #[test]
    fn class_closed_under_sums() {
        let mut by_len: Vec<Vec<Permutation>> = Vec::new();
        for n in 0..=8 {
            by_len.push(generate_separable(n).unwrap());
        }
        for a in 0..=8usize {
            for b in 0..=(8 - a) {
                for p in &by_len[a] {
                    for q in &by_len[b] {
                        assert!(is_separable(&p.direct_sum(q).unwrap()));
                        assert!(is_separable(&p.skew_sum(q).unwrap()));
                    }
                }
            }
        }
    }

    #[test]
    fn class_closed_under_symmetries() {
        for n in 0..=8 {
            for p in generate_separable(n).unwrap() {
                assert!(is_separable(&p.reverse()));
                assert!(is_separable(&p.complement()));
                assert!(is_separable(&p.inverse()));
            }
        }
    }
}
