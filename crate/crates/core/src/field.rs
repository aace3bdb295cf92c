//! Exact linear algebra over prime fields, sized for four-dimensional row spaces.

use itertools::Itertools;

pub type Row = [u32; 4];

pub fn is_prime(q: u32) -> bool {
    q >= 2
        && (2..q)
            .take_while(|d| d * d <= q)
            .all(|d| !q.is_multiple_of(d))
}

/// Multiplicative inverse of a nonzero `a` modulo the prime `q`.
pub fn inv_mod(a: u32, q: u32) -> u32 {
    debug_assert!(!a.is_multiple_of(q));
    let (mut base, mut exp, mut acc) = (a as u64 % q as u64, q as u64 - 2, 1u64);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % q as u64;
        }
        base = base * base % q as u64;
        exp >>= 1;
    }
    acc as u32
}

/// Reduced row-echelon form of `rows` over GF(q); zero rows are dropped.
pub fn rref(rows: &[Row], q: u32) -> Vec<Row> {
    let mut m: Vec<Row> = rows.iter().map(|r| r.map(|x| x % q)).collect();
    let mut rank = 0;
    for col in 0..4 {
        let Some(pivot) = (rank..m.len()).find(|&i| m[i][col] != 0) else {
            continue;
        };
        m.swap(rank, pivot);
        let inv = inv_mod(m[rank][col], q);
        for x in m[rank].iter_mut() {
            *x = *x * inv % q;
        }
        for i in 0..m.len() {
            if i != rank && m[i][col] != 0 {
                let f = m[i][col];
                let pivot_row = m[rank];
                for (x, p) in m[i].iter_mut().zip(pivot_row) {
                    *x = (*x + q * q - f * p) % q;
                }
            }
        }
        rank += 1;
    }
    m.truncate(rank);
    m
}

pub fn rank(rows: &[Row], q: u32) -> usize {
    rref(rows, q).len()
}

/// Every `dim`-dimensional subspace of GF(q)^4 as its reduced row-echelon
/// basis, sorted lexicographically on the flattened matrix.
pub fn subspaces(dim: usize, q: u32) -> Vec<Vec<Row>> {
    let mut out = Vec::new();
    for pivots in (0..4).combinations(dim) {
        // free positions: right of the row's pivot and not in a pivot column
        let free: Vec<(usize, usize)> = (0..dim)
            .flat_map(|r| {
                let pivots = &pivots;
                (pivots[r] + 1..4)
                    .filter(move |c| !pivots.contains(c))
                    .map(move |c| (r, c))
            })
            .collect();
        let total = (q as usize).pow(free.len() as u32);
        for code in 0..total {
            let mut m = vec![[0u32; 4]; dim];
            for (r, &p) in pivots.iter().enumerate() {
                m[r][p] = 1;
            }
            let mut c = code;
            for &(r, col) in &free {
                m[r][col] = (c % q as usize) as u32;
                c /= q as usize;
            }
            out.push(m);
        }
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverses() {
        for q in [2, 3, 5, 7] {
            for a in 1..q {
                assert_eq!(a * inv_mod(a, q) % q, 1);
            }
        }
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&[[1, 0, 0, 0], [0, 1, 0, 0], [1, 1, 0, 0]], 2), 2);
        assert_eq!(rank(&[[1, 2, 0, 0], [2, 1, 0, 0]], 3), 1);
        assert_eq!(rank(&[[0; 4]], 5), 0);
        assert_eq!(rref(&[[2, 4, 0, 6]], 7), vec![[1, 2, 0, 3]]);
    }

    #[test]
    fn gaussian_binomial_counts() {
        // points, lines, planes of PG(3,q)
        for (q, counts) in [
            (2u32, [15, 35, 15]),
            (3, [40, 130, 40]),
            (5, [156, 806, 156]),
        ] {
            for (dim, expected) in (1..=3).zip(counts) {
                assert_eq!(subspaces(dim, q).len(), expected, "q={q} dim={dim}");
            }
        }
    }

    #[test]
    fn rref_is_idempotent_on_enumerated_bases() {
        for m in subspaces(2, 3) {
            assert_eq!(rref(&m, 3), m);
        }
        assert!(is_prime(7) && !is_prime(4) && !is_prime(1));
    }
}
