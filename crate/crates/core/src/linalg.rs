//! Exact rank over the rationals for small integer matrices.

fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Rank of the matrix whose rows are `rows`, by fraction-free elimination.
pub fn rank(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .filter(|r: &Vec<i128>| r.iter().any(|&x| x != 0))
        .collect();
    let ncols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..m.len()).find(|&i| m[i][col] != 0) else {
            continue;
        };
        m.swap(rank, p);
        for i in rank + 1..m.len() {
            if m[i][col] == 0 {
                continue;
            }
            let (a, b) = (m[rank][col], m[i][col]);
            for c in 0..ncols {
                m[i][c] = m[i][c] * a - m[rank][c] * b;
            }
            let g = m[i].iter().fold(0, |g, &x| gcd(g, x));
            if g > 1 {
                for x in m[i].iter_mut() {
                    *x /= g;
                }
            }
        }
        rank += 1;
    }
    rank
}
