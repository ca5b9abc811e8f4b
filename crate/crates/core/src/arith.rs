//! Small integer helpers shared by the data-set and gluing code.

use alloc::vec::Vec;
use num_integer::Integer;

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

/// Inverse of `a` modulo `m`, or `None` when `a` is not a unit.
/// Modulo 1 every residue is the zero unit.
pub fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    if m == 0 {
        return None;
    }
    if m == 1 {
        return Some(0);
    }
    let a = (a % m) as i128;
    let e = a.extended_gcd(&(m as i128));
    if e.gcd != 1 {
        return None;
    }
    Some(e.x.rem_euclid(m as i128) as u64)
}

/// Ascending divisors of `n` (empty for `n == 0`).
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Units modulo `m` in ascending order; modulo 1 this is `[0]`.
pub fn units(m: u64) -> Vec<u64> {
    if m == 1 {
        return alloc::vec![0];
    }
    (1..m).filter(|&a| gcd(a, m) == 1).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_matches_search() {
        for m in 1..40u64 {
            for a in 0..m {
                let brute = (0..m).find(|&x| (a * x) % m == 1 % m);
                let brute = if gcd(a, m) == 1 { brute } else { None };
                assert_eq!(mod_inverse(a, m), brute, "a={a} m={m}");
            }
        }
    }

    #[test]
    fn divisor_lists() {
        assert_eq!(divisors(12), alloc::vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(1), alloc::vec![1]);
        assert_eq!(divisors(49), alloc::vec![1, 7, 49]);
    }
}
