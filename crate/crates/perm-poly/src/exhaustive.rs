use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use rayon::prelude::*;

use crate::{BijectivityReport, GenericVectorMap, PolyError, ResidueVector};

/// Largest `n * m` accepted by the exhaustive sweeps.
pub const MAX_EXHAUSTIVE_BITS: u32 = 24;

const CHUNK: u64 = 1 << 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Violation {
    Collision { first: u64, second: u64 },
    Escape { input: u64, image: u64 },
}

/// Enumerates every index below `2^bits` accepted by `in_domain`, maps it
/// with `f`, and looks for repeated images or images outside the domain.
///
/// Marking runs in parallel over fixed-size chunks. If anything is wrong, a
/// sequential rescan in index order names the first offending input, so the
/// reported violation does not depend on the thread count.
pub(crate) fn sweep<F, D>(bits: u32, in_domain: D, f: F) -> Option<Violation>
where
    F: Fn(u64) -> u64 + Sync,
    D: Fn(u64) -> bool + Sync,
{
    let size = 1u64 << bits;
    let marks: Vec<AtomicU64> = (0..size.div_ceil(64)).map(|_| AtomicU64::new(0)).collect();
    let bad = AtomicBool::new(false);
    (0..size.div_ceil(CHUNK)).into_par_iter().for_each(|c| {
        if bad.load(Ordering::Relaxed) {
            return;
        }
        for x in c * CHUNK..((c + 1) * CHUNK).min(size) {
            if !in_domain(x) {
                continue;
            }
            let y = f(x);
            if !in_domain(y) {
                bad.store(true, Ordering::Relaxed);
                return;
            }
            let bit = 1u64 << (y % 64);
            if marks[(y / 64) as usize].fetch_or(bit, Ordering::Relaxed) & bit != 0 {
                bad.store(true, Ordering::Relaxed);
                return;
            }
        }
    });
    if !bad.into_inner() {
        return None;
    }
    first_violation(size, &in_domain, &f)
}

fn first_violation<F, D>(size: u64, in_domain: &D, f: &F) -> Option<Violation>
where
    F: Fn(u64) -> u64,
    D: Fn(u64) -> bool,
{
    let mut marks = vec![0u64; size.div_ceil(64) as usize];
    for x in (0..size).filter(|&x| in_domain(x)) {
        let y = f(x);
        if !in_domain(y) {
            return Some(Violation::Escape { input: x, image: y });
        }
        let (word, bit) = ((y / 64) as usize, 1u64 << (y % 64));
        if marks[word] & bit != 0 {
            let first = (0..x)
                .find(|&e| in_domain(e) && f(e) == y)
                .expect("earlier preimage exists");
            return Some(Violation::Collision { first, second: x });
        }
        marks[word] |= bit;
    }
    None
}

/// Lexicographic tuple <-> index encoding; element 0 is most significant.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Codec {
    n: u32,
    m: usize,
}

impl Codec {
    pub(crate) fn new(n: u32, m: usize) -> Self {
        Codec { n, m }
    }

    #[inline]
    pub(crate) fn decode(&self, idx: u64, out: &mut [u64]) {
        let mask = (1u64 << self.n) - 1;
        for (i, o) in out[..self.m].iter_mut().enumerate() {
            *o = (idx >> (self.n as usize * (self.m - 1 - i))) & mask;
        }
    }

    #[inline]
    pub(crate) fn encode(&self, v: &[u64]) -> u64 {
        v[..self.m].iter().fold(0, |acc, &x| (acc << self.n) | x)
    }

    /// Bit 0 of every element, set.
    pub(crate) fn low_bits(&self) -> u64 {
        (0..self.m).fold(0, |acc, i| acc | (1u64 << (self.n as usize * i)))
    }

    pub(crate) fn vector(&self, idx: u64) -> ResidueVector {
        let mut v = vec![0; self.m];
        self.decode(idx, &mut v);
        ResidueVector(v)
    }
}

/// Exhaustively checks whether `map` is a bijection of `(Z/2^n Z)^m`, or of
/// that set minus the all-odd tuples when `restrict_non_all_odd` is set.
pub fn bijectivity_check(
    map: &GenericVectorMap,
    restrict_non_all_odd: bool,
) -> Result<BijectivityReport, PolyError> {
    let bits = map.domain_bits();
    if bits > MAX_EXHAUSTIVE_BITS {
        return Err(PolyError::DomainTooLarge { bits });
    }
    let (n, m) = (map.n(), map.m());
    let codec = Codec::new(n, m);
    let low = codec.low_bits();
    let in_domain = |x: u64| !restrict_non_all_odd || x & low != low;
    let apply = |x: u64| {
        let mut v = [0u64; MAX_EXHAUSTIVE_BITS as usize];
        let mut out = [0u64; MAX_EXHAUSTIVE_BITS as usize];
        codec.decode(x, &mut v);
        map.apply_into(&v[..m], &mut out[..m]);
        codec.encode(&out)
    };
    let violation = sweep(bits, in_domain, apply);

    let all_odd = if restrict_non_all_odd {
        1u64 << ((n - 1) as usize * m)
    } else {
        0
    };
    Ok(build_report(
        map.to_string(),
        (1u64 << bits) - all_odd,
        restrict_non_all_odd,
        violation,
        |x| codec.vector(x),
    ))
}

pub(crate) fn build_report(
    label: String,
    domain_size: u64,
    restricted: bool,
    violation: Option<Violation>,
    vector: impl Fn(u64) -> ResidueVector,
) -> BijectivityReport {
    let mut report = BijectivityReport {
        map: label,
        is_bijection: violation.is_none(),
        domain_size,
        restricted,
        first_collision: None,
        first_escape: None,
    };
    match violation {
        Some(Violation::Collision { first, second }) => {
            report.first_collision = Some((vector(first), vector(second)))
        }
        Some(Violation::Escape { input, image }) => {
            report.first_escape = Some((vector(input), vector(image)))
        }
        None => {}
    }
    report
}
