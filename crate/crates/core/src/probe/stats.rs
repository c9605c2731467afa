//! Mergeable per-worker statistics. Every merge is associative and
//! commutative (counts, bin sums, bounded best-lists under a total order),
//! so the result does not depend on how work was split.

use super::fast::{compare_deficits, PointEval, WeilArg};
use crate::rational::Rational;
use std::cmp::Ordering;

#[derive(Debug, Clone)]
pub struct Entry {
    pub coords: Vec<i64>,
    pub f: f64,
    pub m: u64,
    pub w: WeilArg,
}

/// Larger deficit first, then lexicographically smaller point.
fn rank(a: &Entry, b: &Entry, c: &Rational) -> Ordering {
    compare_deficits(b.f, &b.w, b.m, a.f, &a.w, a.m, c).then_with(|| a.coords.cmp(&b.coords))
}

/// The `cap` best entries, best first.
#[derive(Debug, Clone)]
pub struct Reserve {
    cap: usize,
    pub entries: Vec<Entry>,
}

impl Reserve {
    pub fn new(cap: usize) -> Self {
        Self { cap, entries: Vec::new() }
    }

    pub fn is_full(&self) -> bool {
        self.entries.len() >= self.cap
    }

    pub fn offer(&mut self, coords: &[i64], f: f64, m: u64, w: &WeilArg, c: &Rational) {
        if self.cap == 0 {
            return;
        }
        if self.is_full() {
            let worst = self.entries.last().expect("full");
            if f < worst.f - 1e-9 * (1.0 + f.abs().max(worst.f.abs())) {
                return;
            }
        }
        self.insert(
            Entry {
                coords: coords.to_vec(),
                f,
                m,
                w: w.clone(),
            },
            c,
        );
    }

    fn insert(&mut self, e: Entry, c: &Rational) {
        let pos = self.entries.partition_point(|x| rank(x, &e, c) == Ordering::Less);
        if pos >= self.cap {
            return;
        }
        self.entries.insert(pos, e);
        self.entries.truncate(self.cap);
    }

    pub fn merge(&mut self, other: Reserve, c: &Rational) {
        for e in other.entries {
            self.insert(e, c);
        }
    }

    pub fn best(&self) -> Option<&Entry> {
        self.entries.first()
    }
}

/// Histogram geometry shared by all workers.
#[derive(Debug, Clone, Copy)]
pub struct Layout {
    pub fine_per_unit: i64,
    pub fine_lo: i64,
    pub fine_len: usize,
    pub coarse_lo: i64,
    pub coarse_len: usize,
    pub h_len: usize,
}

pub const FINE_PER_UNIT: i64 = 64;
pub const COARSE_PER_UNIT: i64 = 2;

impl Layout {
    /// Bins covering deficits in `[lo, hi]` and heights in `[0, ln_h_max]`.
    pub fn new(lo: f64, hi: f64, ln_h_max: f64) -> Layout {
        let fine_lo = (lo * FINE_PER_UNIT as f64).floor() as i64 - 1;
        let fine_hi = (hi * FINE_PER_UNIT as f64).ceil() as i64 + 1;
        let coarse_lo = (lo * COARSE_PER_UNIT as f64).floor() as i64 - 1;
        let coarse_hi = (hi * COARSE_PER_UNIT as f64).ceil() as i64 + 1;
        Layout {
            fine_per_unit: FINE_PER_UNIT,
            fine_lo,
            fine_len: (fine_hi - fine_lo + 1) as usize,
            coarse_lo,
            coarse_len: (coarse_hi - coarse_lo + 1) as usize,
            h_len: (ln_h_max * COARSE_PER_UNIT as f64).floor() as usize + 2,
        }
    }

    fn fine(&self, f: f64) -> usize {
        let k = (f * self.fine_per_unit as f64).floor() as i64 - self.fine_lo;
        k.clamp(0, self.fine_len as i64 - 1) as usize
    }

    fn coarse(&self, f: f64) -> usize {
        let k = (f * COARSE_PER_UNIT as f64).floor() as i64 - self.coarse_lo;
        k.clamp(0, self.coarse_len as i64 - 1) as usize
    }

    fn h_bin(&self, ln_m: f64) -> usize {
        ((ln_m * COARSE_PER_UNIT as f64).floor() as usize).min(self.h_len - 1)
    }
}

#[derive(Debug, Clone)]
pub struct Acc {
    pub enumerated: u64,
    pub on_divisor: u64,
    pub positive_vojta: u64,
    pub top_vojta: Reserve,
    pub top_general: Reserve,
    pub half_vojta: Reserve,
    pub half_general: Reserve,
    pub fine: Vec<u64>,
    pub grid: Vec<u64>,
    /// Off-divisor points with positive deficit_vojta, flattened.
    pub positive_coords: Vec<i64>,
    pub positive_values: Vec<f64>,
    /// First failure of the per-point self-check, by point order.
    pub failure: Option<(Vec<i64>, String)>,
}

pub struct Context<'a> {
    pub layout: Layout,
    pub c_vojta: &'a Rational,
    pub c_general: &'a Rational,
    pub half_bound: u64,
}

impl Acc {
    pub fn new(layout: &Layout, reserve: usize) -> Acc {
        Acc {
            enumerated: 0,
            on_divisor: 0,
            positive_vojta: 0,
            top_vojta: Reserve::new(reserve),
            top_general: Reserve::new(reserve),
            half_vojta: Reserve::new(1),
            half_general: Reserve::new(1),
            fine: vec![0; layout.fine_len],
            grid: vec![0; layout.coarse_len * layout.h_len],
            positive_coords: Vec::new(),
            positive_values: Vec::new(),
            failure: None,
        }
    }

    pub fn fail(&mut self, coords: &[i64], msg: String) {
        if self.failure.as_ref().is_none_or(|(c, _)| coords < &c[..]) {
            self.failure = Some((coords.to_vec(), msg));
        }
    }

    pub fn add(&mut self, ctx: &Context, coords: &[i64], e: Option<&PointEval>) {
        self.enumerated += 1;
        let Some(e) = e else {
            self.on_divisor += 1;
            return;
        };
        self.fine[ctx.layout.fine(e.vojta)] += 1;
        self.grid[ctx.layout.h_bin(e.ln_m) * ctx.layout.coarse_len + ctx.layout.coarse(e.vojta)] += 1;
        if e.vojta > 0.0 {
            self.positive_vojta += 1;
            self.positive_coords.extend_from_slice(coords);
            self.positive_values.push(e.vojta);
        }
        self.top_vojta.offer(coords, e.vojta, e.m, &e.w, ctx.c_vojta);
        self.top_general.offer(coords, e.general, e.m, &e.w, ctx.c_general);
        if e.m <= ctx.half_bound {
            self.half_vojta.offer(coords, e.vojta, e.m, &e.w, ctx.c_vojta);
            self.half_general.offer(coords, e.general, e.m, &e.w, ctx.c_general);
        }
    }

    pub fn merge(mut self, other: Acc, ctx: &Context) -> Acc {
        self.enumerated += other.enumerated;
        self.on_divisor += other.on_divisor;
        self.positive_vojta += other.positive_vojta;
        self.top_vojta.merge(other.top_vojta, ctx.c_vojta);
        self.top_general.merge(other.top_general, ctx.c_general);
        self.half_vojta.merge(other.half_vojta, ctx.c_vojta);
        self.half_general.merge(other.half_general, ctx.c_general);
        for (a, b) in self.fine.iter_mut().zip(other.fine) {
            *a += b;
        }
        for (a, b) in self.grid.iter_mut().zip(other.grid) {
            *a += b;
        }
        self.positive_coords.extend(other.positive_coords);
        self.positive_values.extend(other.positive_values);
        if let Some((c, m)) = other.failure {
            self.fail(&c, m);
        }
        self
    }
}
