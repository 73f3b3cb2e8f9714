//! Island energy `h(x) = x (1 + a^x) / (1 - a^x)` and the induced order on
//! face-length partitions.

use std::collections::{BTreeSet, VecDeque};

use crate::error::{Error, Result};

pub const MIN_PART: usize = 3;

fn check_a(a: f64) -> Result<()> {
    if !(a.abs() > 0.0 && a.abs() < 1.0) {
        return Err(Error::Domain(format!("need 0 < |a| < 1, got {a}")));
    }
    Ok(())
}

/// `h(x) = x (1 + a^x) / (1 - a^x)`.
pub fn h(x: f64, a: f64) -> f64 {
    let ax = a.abs().powf(x);
    x * (1.0 + ax) / (1.0 - ax)
}

/// `h(0) = lim_{x -> 0} h(x) = 2 / |log a|` (as a magnitude).
pub fn h_zero(a: f64) -> f64 {
    2.0 / a.abs().ln().abs()
}

/// Signed value `2 / log|a|`, negative for `|a| < 1`.
pub fn h_zero_signed(a: f64) -> f64 {
    2.0 / a.abs().ln()
}

/// `Q(lambda) = sum h(part)`.
pub fn island_energy(partition: &[usize], a: f64) -> Result<f64> {
    check_a(a)?;
    if let Some(&p) = partition.iter().find(|&&p| p < MIN_PART) {
        return Err(Error::Domain(format!("face length {p} is shorter than {MIN_PART}")));
    }
    Ok(partition.iter().map(|&p| h(p as f64, a)).sum())
}

fn normalize(p: &[usize]) -> Vec<usize> {
    let mut v = p.to_vec();
    v.sort_unstable_by(|a, b| b.cmp(a));
    v
}

/// All partitions of `n` into parts `>= min_part`, descending parts.
pub fn partitions(n: usize, min_part: usize) -> Vec<Vec<usize>> {
    fn rec(rest: usize, max: usize, min: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for p in (min..=max.min(rest)).rev() {
            cur.push(p);
            rec(rest - p, p, min, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, min_part.max(1), &mut Vec::new(), &mut out);
    out
}

/// Partitions reachable from `p` by moves that raise `Q`: splitting a part
/// (`h(l + m) < h(l) + h(m)`) or spreading two parts apart at fixed sum.
fn raised(p: &[usize]) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for i in 0..p.len() {
        for l in MIN_PART..=p[i] / 2 {
            let m = p[i] - l;
            if m >= MIN_PART {
                let mut q = p.to_vec();
                q[i] = l;
                q.push(m);
                out.push(normalize(&q));
            }
        }
        for j in 0..p.len() {
            if i == j || p[i] < p[j] {
                continue;
            }
            for k in 1..=p[j].saturating_sub(MIN_PART) {
                let mut q = p.to_vec();
                q[i] += k;
                q[j] -= k;
                out.push(normalize(&q));
            }
        }
    }
    out
}

fn reachable(from: &[usize], to: &[usize]) -> bool {
    let target = normalize(to);
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::from([normalize(from)]);
    while let Some(p) = queue.pop_front() {
        if p == target {
            return true;
        }
        for q in raised(&p) {
            if seen.insert(q.clone()) {
                queue.push_back(q);
            }
        }
    }
    false
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PartitionOrder {
    Greater,
    Less,
    Equal,
    /// Not decided by splitting and spreading moves alone.
    Incomparable,
}

/// Compares `Q(p1)` with `Q(p2)` for every `0 < a < 1`, using only chains of
/// split and spread moves.
pub fn compare(p1: &[usize], p2: &[usize]) -> Result<PartitionOrder> {
    if p1.iter().sum::<usize>() != p2.iter().sum::<usize>() {
        return Err(Error::Domain("partitions of different totals".into()));
    }
    if p1.iter().chain(p2).any(|&p| p < MIN_PART) {
        return Err(Error::Domain(format!("parts must be at least {MIN_PART}")));
    }
    Ok(if normalize(p1) == normalize(p2) {
        PartitionOrder::Equal
    } else if reachable(p2, p1) {
        PartitionOrder::Greater
    } else if reachable(p1, p2) {
        PartitionOrder::Less
    } else {
        PartitionOrder::Incomparable
    })
}

/// The partition of `n` into as many threes as possible, the remainder
/// absorbed into one part of 4 or 5.
pub fn finest_partition(n: usize) -> Vec<usize> {
    assert!(n >= MIN_PART);
    match n % 3 {
        0 => vec![3; n / 3],
        1 => [vec![4], vec![3; (n - 4) / 3]].concat(),
        _ => [vec![5], vec![3; (n - 5) / 3]].concat(),
    }
}
