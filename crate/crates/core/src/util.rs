use num_bigint::BigUint;
use num_integer::Integer;

pub fn gcd(a: usize, b: usize) -> usize {
    a.gcd(&b)
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::from(0u32);
    }
    let k = k.min(n - k);
    let mut acc = BigUint::from(1u32);
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// `C(a+b, a) / (a+b)`.
pub fn rational_catalan(a: usize, b: usize) -> BigUint {
    binomial((a + b) as u64, a as u64) / BigUint::from(a + b)
}

/// In-place lexicographic successor; returns false after the last permutation.
pub fn next_permutation<T: Ord>(v: &mut [T]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Calls `f` on every weak composition of `total` into `parts` parts, in
/// lexicographic order.
pub fn for_each_composition(total: usize, parts: usize, f: &mut dyn FnMut(&[usize])) {
    fn go(buf: &mut Vec<usize>, remaining: usize, parts: usize, f: &mut dyn FnMut(&[usize])) {
        if buf.len() + 1 == parts {
            buf.push(remaining);
            f(buf);
            buf.pop();
            return;
        }
        for v in 0..=remaining {
            buf.push(v);
            go(buf, remaining - v, parts, f);
            buf.pop();
        }
    }
    if parts == 0 {
        if total == 0 {
            f(&[]);
        }
        return;
    }
    let mut buf = Vec::with_capacity(parts);
    go(&mut buf, total, parts, f);
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalan_values() {
        assert_eq!(rational_catalan(3, 4), BigUint::from(5u32));
        assert_eq!(rational_catalan(3, 11), BigUint::from(26u32));
        assert_eq!(rational_catalan(5, 1), BigUint::from(1u32));
    }

    #[test]
    fn compositions_are_lexicographic_and_counted() {
        let mut seen = Vec::new();
        for_each_composition(3, 3, &mut |c| seen.push(c.to_vec()));
        assert_eq!(seen.len(), 10);
        assert_eq!(seen.first().unwrap(), &vec![0, 0, 3]);
        assert_eq!(seen.last().unwrap(), &vec![3, 0, 0]);
        assert!(seen.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn permutations_count() {
        let mut v = vec![1, 2, 3, 4];
        let mut n = 1;
        while next_permutation(&mut v) {
            n += 1;
        }
        assert_eq!(n, 24);
    }
}
