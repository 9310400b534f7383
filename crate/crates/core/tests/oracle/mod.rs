//! Independent reference computations for the integration tests. Nothing
//! here calls into the library.

#![allow(dead_code)]

pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Raw fan `[(p1,q1), (p2,q2), (p3,q3), (p4,q4)]` around `p0/q0`.
pub type RawFan = [(i64, i64); 4];

fn same_sign(x: i64, reference: i64) -> bool {
    x == 0 || x.signum() == reference.signum()
}

/// Every fan around `p0/q0` (`q0 > 1`, `p0 != 0`, coprime) found by
/// exhaustive search over `q1 in [0, q0]` and `p1` with `p1/q1` in
/// `[k, k+1]`, checking each condition literally.
pub fn farey_brute(p0: i64, q0: i64) -> Vec<RawFan> {
    let k = p0.div_euclid(q0);
    let in_unit = |p: i64, q: i64| q > 0 && k * q <= p && p <= (k + 1) * q;
    let mut found = Vec::new();
    for q1 in 0..=q0 {
        let (lo, hi) = if q1 == 0 {
            (-1, 1)
        } else {
            (k * q1, (k + 1) * q1)
        };
        for p1 in lo..=hi {
            let (p2, q2) = (p0 - p1, q0 - q1);
            let ok = gcd(p1, q1) == 1
                && gcd(p2, q2) == 1
                && same_sign(p1, p0)
                && same_sign(p2, p0)
                && same_sign(q1, q0)
                && same_sign(q2, q0)
                && in_unit(p1, q1)
                && in_unit(p2, q2)
                && p0 * (-q1) - (-p1) * q0 == 1
                && (-p1) * (-q2) - (-p2) * (-q1) == 1
                && (-p2) * q0 - p0 * (-q2) == 1;
            if ok {
                let (p3, q3) = (p0 + p1, q0 + q1);
                let (p4, q4) = (p0 + p3, q0 + q3);
                found.push([(p1, q1), (p2, q2), (p3, q3), (p4, q4)]);
            }
        }
    }
    found
}

/// Cyclic triad test on raw vectors, up to the sign of each vector.
pub fn raw_triad(a: (i64, i64), b: (i64, i64), c: (i64, i64)) -> bool {
    let det = |x: (i64, i64), y: (i64, i64)| x.0 * y.1 - y.0 * x.1;
    let d = [det(a, b), det(b, c), det(c, a)];
    d.iter().all(|x| x.abs() == 1) && d.iter().product::<i64>() == 1
}

/// Determinant by cofactor expansion over permutations.
pub fn leibniz_det(m: &[Vec<i64>]) -> i64 {
    let n = m.len();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total = 0;
    permute(&mut perm, 0, m, &mut total);
    total
}

fn permute(perm: &mut Vec<usize>, start: usize, m: &[Vec<i64>], total: &mut i64) {
    let n = perm.len();
    if start == n {
        let inversions = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter(|&(i, j)| perm[i] > perm[j])
            .count();
        let sign = if inversions % 2 == 0 { 1 } else { -1 };
        *total += sign * (0..n).map(|i| m[i][perm[i]]).product::<i64>();
        return;
    }
    for i in start..n {
        perm.swap(start, i);
        permute(perm, start + 1, m, total);
        perm.swap(start, i);
    }
}

pub fn symmetrized_det(v: &[Vec<i64>]) -> i64 {
    let n = v.len();
    let sym: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| v[i][j] + v[j][i]).collect())
        .collect();
    leibniz_det(&sym).abs()
}

pub fn odd_prime_power(n: u64) -> bool {
    if n < 3 || n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3;
    while d * d <= n && !n.is_multiple_of(d) {
        d += 2;
    }
    // smallest prime factor, or n itself when prime
    let l = if n.is_multiple_of(d) { d } else { n };
    let mut m = n;
    while m.is_multiple_of(l) {
        m /= l;
    }
    m == 1
}

/// `qR + |p - qM|`, the closed-form framed dimension away from `p/q = M`.
pub fn framed(p: i64, q: i64, m: i64, r: i64) -> i64 {
    q * r + (p - q * m).abs()
}

/// Coprime `(p, q)` with `1 <= q <= qmax`, `|p| <= pmax`.
pub fn slope_grid(qmax: i64, pmax: i64) -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    for q in 1..=qmax {
        for p in -pmax..=pmax {
            if gcd(p, q) == 1 {
                out.push((p, q));
            }
        }
    }
    out
}
