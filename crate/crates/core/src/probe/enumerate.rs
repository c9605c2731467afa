//! Canonical points of `P^n(Q)` with max-norm at most `H`: coprime integer
//! coordinates, first nonzero coordinate positive, each point once, in
//! lexicographic order. Work is split by the first one or two coordinates.

use crate::arithmetic::ProjectivePoint;
use num_integer::Integer;

/// Prefixes that start at least one canonical point, in lexicographic order.
pub fn prefixes(n: usize, h: i64) -> Vec<Vec<i64>> {
    let len = n.min(2);
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(len);
    fn rec(cur: &mut Vec<i64>, len: usize, h: i64, out: &mut Vec<Vec<i64>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        let leading_zero = cur.iter().all(|&x| x == 0);
        let lo = if leading_zero { 0 } else { -h };
        for x in lo..=h {
            cur.push(x);
            rec(cur, len, h, out);
            cur.pop();
        }
    }
    rec(&mut cur, len, h, &mut out);
    out
}

/// Calls `f` on every canonical point extending `prefix`, reusing one buffer.
pub fn visit_suffixes<F: FnMut(&[i64])>(n: usize, h: i64, prefix: &[i64], mut f: F) {
    let mut buf = vec![0i64; n + 1];
    buf[..prefix.len()].copy_from_slice(prefix);
    let g = prefix.iter().fold(0i64, |g, &x| g.gcd(&x));
    let leading_zero = g == 0;
    fill(&mut buf, prefix.len(), h, g, leading_zero, &mut f);
}

fn fill<F: FnMut(&[i64])>(buf: &mut [i64], pos: usize, h: i64, g: i64, leading_zero: bool, f: &mut F) {
    let last = pos + 1 == buf.len();
    let lo = if leading_zero { 0 } else { -h };
    for x in lo..=h {
        let g2 = g.gcd(&x);
        if last {
            if g2 == 1 {
                buf[pos] = x;
                f(buf);
            }
        } else {
            buf[pos] = x;
            fill(buf, pos + 1, h, g2, leading_zero && x == 0, f);
        }
    }
}

/// All canonical points of `P^n` with coordinates bounded by `h`, lazily.
pub fn enumerate_points(n: usize, h: i64) -> impl Iterator<Item = ProjectivePoint> {
    assert!(n >= 1 && h >= 1);
    prefixes(n, h).into_iter().flat_map(move |p| {
        let mut pts = Vec::new();
        visit_suffixes(n, h, &p, |c| pts.push(ProjectivePoint::from_canonical(c.to_vec())));
        pts
    })
}
