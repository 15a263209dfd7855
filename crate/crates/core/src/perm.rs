//! Lexicographic permutation enumeration.

use alloc::vec::Vec;
use core::ops::ControlFlow;

/// Visits every permutation of `0..n` in lexicographic order until the
/// callback breaks. Returns `true` when the enumeration ran to completion.
pub fn visit_permutations<F>(n: usize, mut f: F) -> bool
where
    F: FnMut(&[usize]) -> ControlFlow<()>,
{
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        if f(&perm).is_break() {
            return false;
        }
        if !next_permutation(&mut perm) {
            return true;
        }
    }
}

/// Advances `perm` to its lexicographic successor in place; `false` once
/// the last permutation has been reached.
pub fn next_permutation(perm: &mut [usize]) -> bool {
    if perm.len() < 2 {
        return false;
    }
    let mut i = perm.len() - 1;
    while i > 0 && perm[i - 1] >= perm[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = perm.len() - 1;
    while perm[j] <= perm[i - 1] {
        j -= 1;
    }
    perm.swap(i - 1, j);
    perm[i..].reverse();
    true
}

pub fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumerates_in_lex_order() {
        let mut seen = Vec::new();
        visit_permutations(3, |p| {
            seen.push(p.to_vec());
            ControlFlow::Continue(())
        });
        assert_eq!(
            seen,
            alloc::vec![
                alloc::vec![0, 1, 2],
                alloc::vec![0, 2, 1],
                alloc::vec![1, 0, 2],
                alloc::vec![1, 2, 0],
                alloc::vec![2, 0, 1],
                alloc::vec![2, 1, 0],
            ]
        );
    }

    #[test]
    fn counts_match_factorial() {
        for n in 0..=6 {
            let mut count = 0u64;
            visit_permutations(n, |_| {
                count += 1;
                ControlFlow::Continue(())
            });
            assert_eq!(count, factorial(n).max(1));
        }
    }

    #[test]
    fn early_break_stops() {
        let mut count = 0;
        let done = visit_permutations(4, |_| {
            count += 1;
            if count == 5 {
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        });
        assert!(!done);
        assert_eq!(count, 5);
    }
}
