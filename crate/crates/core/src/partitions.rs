//! The lattice of set partitions ordered by refinement, its incidence algebra
//! and Möbius function.
//!
//! Partitions are enumerated through restricted-growth strings, which yields
//! every partition exactly once with blocks already sorted by their minimum.

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::algebra::Label;
use crate::error::{Error, Result};
use crate::scalar::{factorial, Rational};

pub const DEFAULT_PARTITION_CAP: usize = 12;

/// Largest ground set [`enumerate_partitions`] accepts. Reads
/// `LCE_PARTITION_CAP` when set to a valid integer.
pub fn partition_cap() -> usize {
    std::env::var("LCE_PARTITION_CAP")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_PARTITION_CAP)
}

/// A partition of a finite set of labels. Blocks are sorted internally and
/// ordered by their minimum element.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetPartition {
    ground: Vec<Label>,
    blocks: Vec<Vec<Label>>,
}

impl SetPartition {
    pub fn new(blocks: impl IntoIterator<Item = Vec<Label>>) -> Result<Self> {
        let mut blocks: Vec<Vec<Label>> = blocks
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b
            })
            .collect();
        if blocks.iter().any(|b| b.is_empty()) {
            return Err(Error::InvalidPartition("empty block".into()));
        }
        let mut ground: Vec<Label> = blocks.iter().flatten().copied().collect();
        ground.sort_unstable();
        if ground.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidPartition("blocks overlap".into()));
        }
        blocks.sort_by_key(|b| b[0]);
        Ok(SetPartition { ground, blocks })
    }

    /// Builds the partition of `ground` (sorted) whose element `i` lies in
    /// block `rgs[i]`.
    pub fn from_rgs(ground: &[Label], rgs: &[usize]) -> Self {
        let count = rgs.iter().copied().max().map_or(0, |m| m + 1);
        let mut blocks = vec![Vec::new(); count];
        for (&l, &b) in ground.iter().zip(rgs) {
            blocks[b].push(l);
        }
        SetPartition {
            ground: ground.to_vec(),
            blocks,
        }
    }

    /// `0-hat`: every element alone.
    pub fn finest(ground: impl IntoIterator<Item = Label>) -> Self {
        Self::new(ground.into_iter().map(|l| vec![l])).expect("distinct labels")
    }

    /// `1-hat`: a single block.
    pub fn coarsest(ground: impl IntoIterator<Item = Label>) -> Self {
        let all: Vec<Label> = ground.into_iter().collect();
        if all.is_empty() {
            return SetPartition {
                ground: Vec::new(),
                blocks: Vec::new(),
            };
        }
        Self::new([all]).expect("distinct labels")
    }

    pub fn ground(&self) -> &[Label] {
        &self.ground
    }

    pub fn blocks(&self) -> &[Vec<Label>] {
        &self.blocks
    }

    /// Number of blocks `|t|`.
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn block_of(&self, label: Label) -> Option<usize> {
        self.blocks
            .iter()
            .position(|b| b.binary_search(&label).is_ok())
    }
}

impl fmt::Display for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, b) in self.blocks.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str("{")?;
            for (j, l) in b.iter().enumerate() {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{l}")?;
            }
            f.write_str("}")?;
        }
        f.write_str("}")
    }
}

/// Restricted-growth strings of length `n` in lexicographic order.
#[derive(Clone, Debug)]
pub struct RestrictedGrowth {
    current: Vec<usize>,
    // prefix_max[i] = max(current[..=i])
    prefix_max: Vec<usize>,
    started: bool,
    done: bool,
}

impl RestrictedGrowth {
    pub fn new(n: usize) -> Self {
        RestrictedGrowth {
            current: vec![0; n],
            prefix_max: vec![0; n],
            started: false,
            done: false,
        }
    }

    /// Advances to the next string; returns `None` when exhausted.
    pub fn next_rgs(&mut self) -> Option<&[usize]> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(&self.current);
        }
        let n = self.current.len();
        let mut i = n;
        while i > 1 {
            i -= 1;
            if self.current[i] <= self.prefix_max[i - 1] {
                self.current[i] += 1;
                self.prefix_max[i] = self.prefix_max[i - 1].max(self.current[i]);
                for j in i + 1..n {
                    self.current[j] = 0;
                    self.prefix_max[j] = self.prefix_max[i];
                }
                return Some(&self.current);
            }
        }
        self.done = true;
        None
    }
}

/// Iterator over every partition of a ground set, in restricted-growth order.
#[derive(Clone, Debug)]
pub struct Partitions {
    ground: Vec<Label>,
    rgs: RestrictedGrowth,
}

impl Iterator for Partitions {
    type Item = SetPartition;

    fn next(&mut self) -> Option<SetPartition> {
        let rgs = self.rgs.next_rgs()?;
        Some(SetPartition::from_rgs(&self.ground, rgs))
    }
}

/// All partitions of `ground`, each exactly once. Fails above
/// [`partition_cap`].
pub fn enumerate_partitions(ground: &[Label]) -> Result<Partitions> {
    enumerate_partitions_capped(ground, partition_cap())
}

pub fn enumerate_partitions_capped(ground: &[Label], cap: usize) -> Result<Partitions> {
    let mut sorted = ground.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() > cap {
        return Err(Error::PartitionCapExceeded {
            size: sorted.len(),
            cap,
        });
    }
    let n = sorted.len();
    Ok(Partitions {
        ground: sorted,
        rgs: RestrictedGrowth::new(n),
    })
}

/// Calls `f` on the block lists of every partition of `0..n` (as occurrence
/// positions). Used by the hot loops that do not need [`SetPartition`]s.
pub(crate) fn for_each_position_partition(n: usize, mut f: impl FnMut(&[Vec<usize>])) {
    let mut rgs = RestrictedGrowth::new(n);
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    while let Some(s) = rgs.next_rgs() {
        blocks.clear();
        for (pos, &b) in s.iter().enumerate() {
            if b == blocks.len() {
                blocks.push(Vec::new());
            }
            blocks[b].push(pos);
        }
        f(&blocks);
    }
}

/// `t <= u` in the refinement order.
pub fn refines(t: &SetPartition, u: &SetPartition) -> Result<bool> {
    if t.ground != u.ground {
        return Err(Error::GroundSetMismatch);
    }
    Ok(t.blocks.iter().all(|b| {
        let target = u.block_of(b[0]);
        b.iter().all(|l| u.block_of(*l) == target)
    }))
}

fn leq(x: &SetPartition, y: &SetPartition) -> bool {
    refines(x, y).unwrap_or(false)
}

/// Closed-form Möbius function: `(-1)^(|x|+|t|) prod (n_i - 1)!` where `n_i`
/// counts the blocks of `x` inside the `i`-th block of `t`. Zero unless
/// `x <= t`.
pub fn mobius(x: &SetPartition, t: &SetPartition) -> Rational {
    if !leq(x, t) {
        return Rational::zero();
    }
    let mut counts = vec![0usize; t.len()];
    for b in &x.blocks {
        counts[t.block_of(b[0]).expect("x refines t")] += 1;
    }
    let mut value = counts
        .iter()
        .fold(Rational::one(), |acc, &n| acc * factorial(n - 1));
    if (x.len() + t.len()) % 2 == 1 {
        value = -value;
    }
    value
}

/// `mu(t, 1-hat) = (-1)^(|t|+1) (|t| - 1)!`.
pub fn mobius_to_top(blocks: usize) -> Rational {
    let value = factorial(blocks.saturating_sub(1));
    if blocks.is_multiple_of(2) {
        -value
    } else {
        value
    }
}

/// Every `z` with `x <= z <= y`, obtained by partitioning, inside each block of
/// `y`, the blocks of `x` it contains.
pub fn interval(x: &SetPartition, y: &SetPartition) -> Vec<SetPartition> {
    if !leq(x, y) {
        return Vec::new();
    }
    let mut groups: Vec<Vec<&Vec<Label>>> = vec![Vec::new(); y.len()];
    for b in &x.blocks {
        groups[y.block_of(b[0]).expect("x refines y")].push(b);
    }
    let mut partial: Vec<Vec<Vec<Label>>> = vec![Vec::new()];
    for group in &groups {
        let mut next = Vec::new();
        let mut rgs = RestrictedGrowth::new(group.len());
        let mut choices: Vec<Vec<Vec<Label>>> = Vec::new();
        while let Some(s) = rgs.next_rgs() {
            let count = s.iter().copied().max().map_or(0, |m| m + 1);
            let mut merged = vec![Vec::new(); count];
            for (b, &k) in group.iter().zip(s) {
                merged[k].extend_from_slice(b);
            }
            choices.push(merged);
        }
        for prefix in &partial {
            for choice in &choices {
                let mut blocks = prefix.clone();
                blocks.extend(choice.iter().cloned());
                next.push(blocks);
            }
        }
        partial = next;
    }
    partial
        .into_iter()
        .map(|blocks| SetPartition::new(blocks).expect("valid merge"))
        .collect()
}

type IncidenceFn = dyn Fn(&SetPartition, &SetPartition) -> Rational + Send + Sync;

/// A function on pairs of partitions, forced to vanish off comparable pairs.
#[derive(Clone)]
pub struct IncidenceFunction(Arc<IncidenceFn>);

impl IncidenceFunction {
    pub fn new(
        f: impl Fn(&SetPartition, &SetPartition) -> Rational + Send + Sync + 'static,
    ) -> Self {
        IncidenceFunction(Arc::new(f))
    }

    pub fn zeta() -> Self {
        Self::new(|_, _| Rational::one())
    }

    pub fn delta() -> Self {
        Self::new(|x, y| {
            if x == y {
                Rational::one()
            } else {
                Rational::zero()
            }
        })
    }

    pub fn mobius() -> Self {
        Self::new(mobius)
    }

    pub fn eval(&self, x: &SetPartition, y: &SetPartition) -> Rational {
        if leq(x, y) {
            (self.0)(x, y)
        } else {
            Rational::zero()
        }
    }
}

impl fmt::Debug for IncidenceFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("IncidenceFunction(..)")
    }
}

/// `(f * g)(x, y) = sum_{x <= z <= y} f(x, z) g(z, y)`.
pub fn incidence_convolve(
    f: &IncidenceFunction,
    g: &IncidenceFunction,
    x: &SetPartition,
    y: &SetPartition,
) -> Rational {
    interval(x, y)
        .iter()
        .fold(Rational::zero(), |acc, z| acc + f.eval(x, z) * g.eval(z, y))
}

/// `sum_t (-1)^(|t|+1) (|t|-1)!` over all partitions of an `n`-set, which
/// vanishes for `n >= 2`.
pub fn alternating_block_sum(n: usize) -> Result<Rational> {
    let ground: Vec<Label> = (1..=n as Label).collect();
    Ok(enumerate_partitions(&ground)?
        .map(|t| mobius_to_top(t.len()))
        .fold(Rational::zero(), |a, b| a + b))
}

/// `sum_t (-1)^(|t|+n) prod (|T_i|-1)!` over all partitions of an `n`-set,
/// that is `(mu * zeta)(0-hat, 1-hat)`.
pub fn factorial_product_sum(n: usize) -> Result<Rational> {
    let ground: Vec<Label> = (1..=n as Label).collect();
    let mut total = Rational::zero();
    for t in enumerate_partitions(&ground)? {
        let mut term = t
            .blocks()
            .iter()
            .fold(Rational::one(), |acc, b| acc * factorial(b.len() - 1));
        if (t.len() + n) % 2 == 1 {
            term = -term;
        }
        total += term;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn p(blocks: &[&[Label]]) -> SetPartition {
        SetPartition::new(blocks.iter().map(|b| b.to_vec())).unwrap()
    }

    #[test]
    fn small_counts() {
        assert_eq!(enumerate_partitions(&[1, 2, 3]).unwrap().count(), 5);
        assert_eq!(enumerate_partitions(&[1, 2, 3, 4]).unwrap().count(), 15);
        let single: Vec<_> = enumerate_partitions(&[7]).unwrap().collect();
        assert_eq!(single, vec![SetPartition::finest([7])]);
        assert_eq!(SetPartition::finest([7]), SetPartition::coarsest([7]));
        assert_eq!(enumerate_partitions(&[]).unwrap().count(), 1);
    }

    #[test]
    fn enumeration_is_canonical() {
        for t in enumerate_partitions(&[3, 1, 4, 2]).unwrap() {
            let mins: Vec<_> = t.blocks().iter().map(|b| b[0]).collect();
            assert!(mins.windows(2).all(|w| w[0] < w[1]));
            assert_eq!(t.ground(), &[1, 2, 3, 4]);
        }
    }

    #[test]
    fn cap_is_enforced() {
        let ground: Vec<Label> = (1..=5).collect();
        assert_eq!(
            enumerate_partitions_capped(&ground, 4).err(),
            Some(Error::PartitionCapExceeded { size: 5, cap: 4 })
        );
    }

    #[test]
    fn refinement() {
        let bottom = SetPartition::finest([1, 2, 3]);
        let a = p(&[&[1, 2], &[3]]);
        let b = p(&[&[1, 3], &[2]]);
        assert!(refines(&bottom, &a).unwrap());
        assert!(!refines(&b, &a).unwrap());
        assert!(refines(&a, &a).unwrap());
        assert_eq!(refines(&a, &p(&[&[1, 2]])), Err(Error::GroundSetMismatch));
    }

    #[test]
    fn mobius_values() {
        let t = p(&[&[1, 2], &[3]]);
        assert_eq!(mobius(&t, &t), int(1));
        assert_eq!(
            mobius(
                &SetPartition::finest([1, 2, 3]),
                &SetPartition::coarsest([1, 2, 3])
            ),
            int(2)
        );
        assert_eq!(
            mobius(
                &SetPartition::finest([1, 2, 3, 4]),
                &SetPartition::coarsest([1, 2, 3, 4])
            ),
            int(-6)
        );
        assert_eq!(mobius(&p(&[&[1, 3], &[2]]), &t), int(0));
        assert_eq!(mobius_to_top(1), int(1));
        assert_eq!(mobius_to_top(3), int(2));
    }

    #[test]
    fn intervals() {
        let bottom = SetPartition::finest([1, 2, 3, 4]);
        let top = SetPartition::coarsest([1, 2, 3, 4]);
        assert_eq!(interval(&bottom, &top).len(), 15);
        let y = p(&[&[1, 2], &[3, 4]]);
        assert_eq!(interval(&bottom, &y).len(), 4);
        assert!(interval(&y, &bottom).is_empty());
    }

    #[test]
    fn delta_is_unit() {
        let f = IncidenceFunction::new(|x, y| int((x.len() * 10 + y.len()) as i64));
        let d = IncidenceFunction::delta();
        let all: Vec<_> = enumerate_partitions(&[1, 2, 3]).unwrap().collect();
        for x in &all {
            for y in &all {
                assert_eq!(incidence_convolve(&d, &f, x, y), f.eval(x, y));
                assert_eq!(incidence_convolve(&f, &d, x, y), f.eval(x, y));
            }
        }
    }

    #[test]
    fn alternating_sums_vanish() {
        assert_eq!(alternating_block_sum(1).unwrap(), int(1));
        for n in 2..=6 {
            assert_eq!(alternating_block_sum(n).unwrap(), int(0), "n = {n}");
            assert_eq!(factorial_product_sum(n).unwrap(), int(0), "n = {n}");
        }
    }
}
