//! Matrix rank over GF(2) and over the rationals for small 0/1 matrices.

/// Rank over GF(2). Rows are bitsets of equal word length.
pub fn gf2_rank(rows: &[Vec<u64>]) -> usize {
    let mut basis: Vec<Vec<u64>> = Vec::new();
    let mut pivots: Vec<(usize, u64)> = Vec::new();
    for row in rows {
        let mut r = row.clone();
        for (b, &(w, bit)) in basis.iter().zip(&pivots) {
            if r[w] & bit != 0 {
                for (x, y) in r.iter_mut().zip(b) {
                    *x ^= y;
                }
            }
        }
        if let Some(w) = r.iter().position(|&x| x != 0) {
            let bit = 1u64 << (63 - r[w].leading_zeros());
            basis.push(r);
            pivots.push((w, bit));
        }
    }
    basis.len()
}

/// Rank over GF(2) for rows that fit in one word.
pub fn gf2_rank_u64(rows: &[u64]) -> usize {
    let mut basis = [0u64; 64];
    let mut rank = 0;
    for &row in rows {
        let mut r = row;
        while r != 0 {
            let top = 63 - r.leading_zeros() as usize;
            if basis[top] == 0 {
                basis[top] = r;
                rank += 1;
                break;
            }
            r ^= basis[top];
        }
    }
    rank
}

/// Rank over Q by fraction-free (Bareiss-style) elimination.
pub fn rational_rank(rows: &[Vec<i64>]) -> usize {
    let mut a: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let cols = a.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..a.len()).find(|&i| a[i][c] != 0) else { continue };
        a.swap(rank, p);
        for i in rank + 1..a.len() {
            let (f, g) = (a[i][c], a[rank][c]);
            if f == 0 {
                continue;
            }
            for j in c..cols {
                a[i][j] = a[i][j] * g - a[rank][j] * f;
            }
            let gcd = a[i].iter().fold(0i128, |acc, &x| gcd(acc, x.abs()));
            if gcd > 1 {
                a[i].iter_mut().for_each(|x| *x /= gcd);
            }
        }
        rank += 1;
    }
    rank
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 { a } else { gcd(b, a % b) }
}

/// Packs a 0/1 matrix into word-bitsets for [`gf2_rank`].
pub fn pack_rows(rows: &[Vec<u8>]) -> Vec<Vec<u64>> {
    rows.iter()
        .map(|r| {
            let mut out = vec![0u64; r.len().div_ceil(64).max(1)];
            for (j, &x) in r.iter().enumerate() {
                if x & 1 == 1 {
                    out[j / 64] |= 1 << (j % 64);
                }
            }
            out
        })
        .collect()
}
