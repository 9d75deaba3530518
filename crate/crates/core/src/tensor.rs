//! Index bookkeeping for tensor powers.
//!
//! A word `w_1 … w_n` over a basis of size `d` sits at index
//! `Σ w_k d^{n-k}`: the leftmost factor is the most significant digit.

pub fn power(d: usize, n: usize) -> usize {
    d.checked_pow(n as u32).expect("tensor power overflows usize")
}

pub fn word_index(word: &[usize], d: usize) -> usize {
    word.iter().fold(0, |acc, &w| acc * d + w)
}

pub fn index_word(mut idx: usize, d: usize, n: usize) -> Vec<usize> {
    let mut w = vec![0; n];
    for slot in w.iter_mut().rev() {
        *slot = idx % d;
        idx /= d;
    }
    w
}

/// Mixed-radix index for a sequence of factor dimensions.
pub fn mixed_index(digits: &[usize], dims: &[usize]) -> usize {
    digits
        .iter()
        .zip(dims)
        .fold(0, |acc, (&x, &d)| acc * d + x)
}

/// All compositions of `total` into `parts` positive summands, each at most
/// `max_part`, in lexicographic order.
pub fn compositions(total: usize, parts: usize, max_part: usize) -> Vec<Vec<usize>> {
    fn rec(
        remaining: usize,
        parts: usize,
        max_part: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if parts == 0 {
            if remaining == 0 {
                out.push(cur.clone());
            }
            return;
        }
        if remaining < parts {
            return;
        }
        let hi = max_part.min(remaining - (parts - 1));
        for first in 1..=hi {
            cur.push(first);
            rec(remaining - first, parts - 1, max_part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(total, parts, max_part, &mut Vec::new(), &mut out);
    out
}
