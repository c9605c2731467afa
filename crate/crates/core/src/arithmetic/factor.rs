//! Integer factorization for the place bookkeeping: trial division by small
//! primes, then Miller–Rabin and Pollard–Brent on what remains.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

const TRIAL_LIMIT: u32 = 1 << 12;

// Deterministic below 3.3e24; beyond that a strong probable-prime test.
const WITNESSES: [u32; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

pub fn is_prime_u64(n: u64) -> bool {
    is_prime(&BigUint::from(n))
}

pub fn is_prime(n: &BigUint) -> bool {
    if *n < BigUint::from(2u32) {
        return false;
    }
    for &p in &WITNESSES {
        let p = BigUint::from(p);
        if *n == p {
            return true;
        }
        if (n % &p).is_zero() {
            return false;
        }
    }
    let one = BigUint::one();
    let n1 = n - &one;
    let s = n1.trailing_zeros().expect("n > 1");
    let d = &n1 >> s;
    'witness: for &a in &WITNESSES {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x == one || x == n1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&BigUint::from(2u32), n);
            if x == n1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Nontrivial factor of an odd composite `n` (Brent's variant of rho).
fn pollard_brent(n: &BigUint) -> BigUint {
    let one = BigUint::one();
    for c in 1u32.. {
        let c = BigUint::from(c);
        let f = |x: &BigUint| (x * x + &c) % n;
        let (mut x, mut y, mut ys) = (BigUint::from(2u32), BigUint::from(2u32), BigUint::zero());
        let mut q = BigUint::one();
        let mut g = BigUint::one();
        let mut r: u64 = 1;
        const BLOCK: u64 = 64;
        while g == one {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g == one {
                ys = y.clone();
                for _ in 0..BLOCK.min(r - k) {
                    y = f(&y);
                    let diff = if x > y { &x - &y } else { &y - &x };
                    q = (q * diff) % n;
                }
                g = q.gcd(n);
                k += BLOCK;
            }
            r *= 2;
        }
        if g == *n {
            loop {
                ys = f(&ys);
                let diff = if x > ys { &x - &ys } else { &ys - &x };
                g = diff.gcd(n);
                if g != one {
                    break;
                }
            }
        }
        if g != *n {
            return g;
        }
    }
    unreachable!("some polynomial constant splits every composite")
}

fn split(n: BigUint, out: &mut Vec<BigUint>) {
    if n.is_one() {
        return;
    }
    if is_prime(&n) {
        out.push(n);
        return;
    }
    let d = pollard_brent(&n);
    let rest = &n / &d;
    split(d, out);
    split(rest, out);
}

/// Prime factorization of a positive integer, ascending by prime.
/// Returns an empty list for 0 and 1.
pub fn factorize(n: &BigUint) -> Vec<(BigUint, u32)> {
    if n.is_zero() {
        return Vec::new();
    }
    let mut n = n.clone();
    let mut primes: Vec<BigUint> = Vec::new();
    let mut p = 2u32;
    while p < TRIAL_LIMIT {
        let bp = BigUint::from(p);
        if &bp * &bp > n {
            break;
        }
        while (&n % &bp).is_zero() {
            n /= &bp;
            primes.push(bp.clone());
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if !n.is_one() {
        if n.to_u64().is_some_and(|m| m < u64::from(TRIAL_LIMIT) * u64::from(TRIAL_LIMIT)) {
            primes.push(n);
        } else {
            split(n, &mut primes);
        }
    }
    primes.sort();
    let mut out: Vec<(BigUint, u32)> = Vec::new();
    for p in primes {
        match out.last_mut() {
            Some((q, k)) if *q == p => *k += 1,
            _ => out.push((p, 1)),
        }
    }
    out
}
