use crate::error::{Error, Result};

/// Largest set size for which partitions are enumerated (B(12) = 4,213,597).
pub const MAX_PARTITION_ORDER: usize = 12;
/// Largest `j` for which [`stirling2`] is computed without overflow concerns.
pub const MAX_STIRLING_ORDER: usize = 30;

/// A partition of `{1, ..., j}` into disjoint nonempty blocks.
///
/// Stored as a restricted growth string: `labels[i]` is the block index of
/// element `i + 1`, and blocks are numbered in order of first appearance.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SetPartition {
    labels: Vec<u8>,
    num_blocks: usize,
}

impl SetPartition {
    /// Builds a partition from explicit blocks of 1-based elements.
    pub fn from_blocks(blocks: &[Vec<usize>]) -> Result<Self> {
        let j: usize = blocks.iter().map(Vec::len).sum();
        if j == 0 {
            return Err(Error::Precondition("a partition needs at least one element".into()));
        }
        let mut owner = vec![usize::MAX; j];
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::Precondition(format!("block {b} is empty")));
            }
            for &e in block {
                if e == 0 || e > j {
                    return Err(Error::Precondition(format!(
                        "element {e} is outside 1..={j}"
                    )));
                }
                if owner[e - 1] != usize::MAX {
                    return Err(Error::Precondition(format!("element {e} appears twice")));
                }
                owner[e - 1] = b;
            }
        }
        // Renumber blocks by first appearance.
        let mut remap = vec![usize::MAX; blocks.len()];
        let mut next = 0usize;
        let labels = owner
            .iter()
            .map(|&b| {
                if remap[b] == usize::MAX {
                    remap[b] = next;
                    next += 1;
                }
                remap[b] as u8
            })
            .collect();
        Ok(Self { labels, num_blocks: blocks.len() })
    }

    /// Size `j` of the partitioned set.
    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn num_blocks(&self) -> usize {
        self.num_blocks
    }

    /// Blocks as sorted lists of 1-based elements, ordered by smallest element.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut blocks = vec![Vec::new(); self.num_blocks];
        for (i, &b) in self.labels.iter().enumerate() {
            blocks[b as usize].push(i + 1);
        }
        blocks
    }

    pub fn block_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0usize; self.num_blocks];
        for &b in &self.labels {
            sizes[b as usize] += 1;
        }
        sizes
    }
}

/// Lazy iterator over all set partitions of `{1, ..., j}` in restricted
/// growth string order.
pub struct Partitions {
    labels: Vec<u8>,
    // prefix_max[i] = max(labels[0..=i])
    prefix_max: Vec<u8>,
    done: bool,
}

impl Iterator for Partitions {
    type Item = SetPartition;

    fn next(&mut self) -> Option<SetPartition> {
        if self.done {
            return None;
        }
        let j = self.labels.len();
        let current = SetPartition {
            labels: self.labels.clone(),
            num_blocks: self.prefix_max[j - 1] as usize + 1,
        };
        // Advance: rightmost position that may still grow.
        let mut i = j;
        loop {
            if i <= 1 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.labels[i] <= self.prefix_max[i - 1] {
                self.labels[i] += 1;
                self.prefix_max[i] = self.prefix_max[i - 1].max(self.labels[i]);
                for k in i + 1..j {
                    self.labels[k] = 0;
                    self.prefix_max[k] = self.prefix_max[i];
                }
                break;
            }
        }
        Some(current)
    }
}

fn check_partition_order(j: usize) -> Result<()> {
    if j == 0 || j > MAX_PARTITION_ORDER {
        return Err(Error::SizeLimit {
            what: "partition order j",
            value: j,
            limit: MAX_PARTITION_ORDER,
        });
    }
    Ok(())
}

/// Iterates over the set partitions of `{1, ..., j}`, `1 <= j <= 12`.
pub fn partitions(j: usize) -> Result<Partitions> {
    check_partition_order(j)?;
    Ok(Partitions { labels: vec![0; j], prefix_max: vec![0; j], done: false })
}

/// All set partitions of `{1, ..., j}`; there are B(j) of them.
pub fn enumerate_partitions(j: usize) -> Result<Vec<SetPartition>> {
    Ok(partitions(j)?.collect())
}

/// Stirling number of the second kind, S(j, q).
///
/// Returns 0 when `q > j`. Requires `1 <= q` and `1 <= j <= 30`.
pub fn stirling2(j: usize, q: usize) -> Result<u128> {
    if j == 0 || q == 0 {
        return Err(Error::Range(format!("stirling2 needs j, q >= 1, got ({j}, {q})")));
    }
    if j > MAX_STIRLING_ORDER {
        return Err(Error::SizeLimit { what: "stirling2 order j", value: j, limit: MAX_STIRLING_ORDER });
    }
    if q > j {
        return Ok(0);
    }
    // row[k] = S(i, k)
    let mut row = vec![0u128; j + 1];
    row[0] = 1;
    for i in 1..=j {
        for k in (1..=i.min(j)).rev() {
            row[k] = k as u128 * row[k] + row[k - 1];
        }
        row[0] = 0;
    }
    Ok(row[q])
}

/// Bell number B(j) as the row sum of Stirling numbers; B(0) = 1.
pub fn bell_number(j: usize) -> Result<u128> {
    if j == 0 {
        return Ok(1);
    }
    (1..=j).map(|q| stirling2(j, q)).sum()
}

/// Multiset of block sizes together with the number of set partitions of
/// `{1, ..., j}` that have exactly these block sizes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockProfile {
    /// Block sizes in non-increasing order.
    pub sizes: Vec<usize>,
    /// `j! / (prod sizes[i]! * prod multiplicity!)`.
    pub count: u64,
}

/// Groups the set partitions of `{1, ..., j}` by block-size profile.
///
/// Summing a function of the block sizes over all set partitions equals the
/// count-weighted sum over these profiles, which avoids visiting B(j)
/// partitions individually.
pub fn block_profiles(j: usize) -> Result<Vec<BlockProfile>> {
    check_partition_order(j)?;
    let fact: Vec<u64> = (0..=j as u64).scan(1u64, |acc, i| {
        if i > 0 {
            *acc *= i;
        }
        Some(*acc)
    }).collect();
    let mut out = Vec::new();
    let mut current = Vec::new();
    integer_partitions(j, j, &mut current, &mut |sizes| {
        let mut denom = 1u64;
        let mut run = 1usize;
        for (i, &s) in sizes.iter().enumerate() {
            denom *= fact[s];
            if i > 0 && sizes[i - 1] == s {
                run += 1;
            } else {
                run = 1;
            }
            // Multiplicity factorial accumulated incrementally.
            denom *= run as u64;
        }
        out.push(BlockProfile { sizes: sizes.to_vec(), count: fact[j] / denom });
    });
    Ok(out)
}

fn integer_partitions(
    remaining: usize,
    max_part: usize,
    current: &mut Vec<usize>,
    visit: &mut dyn FnMut(&[usize]),
) {
    if remaining == 0 {
        visit(current);
        return;
    }
    for part in (1..=max_part.min(remaining)).rev() {
        current.push(part);
        integer_partitions(remaining - part, part, current, visit);
        current.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_enumerations() {
        assert_eq!(enumerate_partitions(1).unwrap().len(), 1);
        assert_eq!(enumerate_partitions(3).unwrap().len(), 5);
        assert_eq!(enumerate_partitions(4).unwrap().len(), 15);
    }

    #[test]
    fn order_limits() {
        assert!(matches!(enumerate_partitions(0), Err(Error::SizeLimit { .. })));
        assert!(matches!(enumerate_partitions(13), Err(Error::SizeLimit { .. })));
        assert!(matches!(stirling2(31, 2), Err(Error::SizeLimit { .. })));
        assert_eq!(stirling2(3, 5).unwrap(), 0);
    }

    #[test]
    fn stirling_filters_enumeration() {
        let count_with = |j: usize, q: usize| {
            enumerate_partitions(j).unwrap().iter().filter(|p| p.num_blocks() == q).count() as u128
        };
        assert_eq!(stirling2(5, 1).unwrap(), 1);
        assert_eq!(stirling2(3, 2).unwrap(), count_with(3, 2));
        assert_eq!(stirling2(3, 2).unwrap(), 3);
        assert_eq!(stirling2(4, 2).unwrap(), count_with(4, 2));
        assert_eq!(stirling2(4, 2).unwrap(), 7);
    }

    #[test]
    fn stirling_matches_inclusion_exclusion() {
        // (1/q!) sum_m (-1)^(q-m) C(q,m) m^j, evaluated in i128.
        fn explicit(j: u32, q: i128) -> i128 {
            let mut binom = 1i128;
            let mut sum = 0i128;
            let mut fact = 1i128;
            for m in 0..=q {
                if m > 0 {
                    binom = binom * (q - m + 1) / m;
                    fact *= m;
                }
                let sign = if (q - m) % 2 == 0 { 1 } else { -1 };
                sum += sign * binom * m.pow(j);
            }
            sum / fact
        }
        for j in 1..=20usize {
            for q in 1..=j {
                assert_eq!(stirling2(j, q).unwrap() as i128, explicit(j as u32, q as i128), "S({j},{q})");
            }
        }
    }

    #[test]
    fn from_blocks_validates_and_roundtrips() {
        let p = SetPartition::from_blocks(&[vec![2, 4], vec![1], vec![3]]).unwrap();
        assert_eq!(p.blocks(), vec![vec![1], vec![2, 4], vec![3]]);
        assert!(SetPartition::from_blocks(&[vec![1, 2], vec![2]]).is_err());
        assert!(SetPartition::from_blocks(&[vec![1, 4]]).is_err());
        assert!(SetPartition::from_blocks(&[vec![1], vec![]]).is_err());
    }

    #[test]
    fn enumerated_partitions_are_valid_and_distinct() {
        let all = enumerate_partitions(6).unwrap();
        let set: std::collections::HashSet<_> = all.iter().cloned().collect();
        assert_eq!(set.len(), all.len());
        for p in &all {
            let rebuilt = SetPartition::from_blocks(&p.blocks()).unwrap();
            assert_eq!(&rebuilt, p);
        }
    }

    #[test]
    fn profile_counts_sum_to_bell() {
        for j in 1..=MAX_PARTITION_ORDER {
            let total: u128 = block_profiles(j).unwrap().iter().map(|p| p.count as u128).sum();
            assert_eq!(total, bell_number(j).unwrap());
        }
    }
}
