//! Groupings of the subsystems `{1, …, M}` into blocks that are tested for
//! factorization.
//!
//! Text syntax: blocks separated by `|`, members by `,`, 1-based. `1,2|3` is
//! the cut between the first two subsystems and the third.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    qudits: usize,
    groups: Vec<Vec<usize>>,
}

impl Partition {
    /// Members are sorted within each group; group order is kept as given.
    pub fn new(qudits: usize, groups: Vec<Vec<usize>>) -> Result<Self> {
        if qudits == 0 {
            return Err(Error::InvalidPartition("no subsystems".into()));
        }
        if groups.is_empty() {
            return Err(Error::InvalidPartition("no groups".into()));
        }
        let mut seen = vec![false; qudits];
        let mut sorted = Vec::with_capacity(groups.len());
        for mut g in groups {
            if g.is_empty() {
                return Err(Error::InvalidPartition("empty group".into()));
            }
            g.sort_unstable();
            for &k in &g {
                if k == 0 || k > qudits {
                    return Err(Error::InvalidPartition(format!(
                        "subsystem {k} out of range 1..={qudits}"
                    )));
                }
                if std::mem::replace(&mut seen[k - 1], true) {
                    return Err(Error::InvalidPartition(format!(
                        "subsystem {k} appears twice"
                    )));
                }
            }
            sorted.push(g);
        }
        if let Some(missing) = seen.iter().position(|s| !s) {
            return Err(Error::InvalidPartition(format!(
                "subsystem {} not covered",
                missing + 1
            )));
        }
        Ok(Self { qudits, groups: sorted })
    }

    /// `{1}|{2}|…|{M}`.
    pub fn totally_product(qudits: usize) -> Result<Self> {
        Self::new(qudits, (1..=qudits).map(|k| vec![k]).collect())
    }

    /// `{1,…,M}`: no factorization.
    pub fn single_group(qudits: usize) -> Result<Self> {
        Self::new(qudits, vec![(1..=qudits).collect()])
    }

    /// Parse `1,2|3`. The number of qudits is the largest index mentioned.
    pub fn parse(spec: &str) -> Result<Self> {
        let groups = spec
            .split('|')
            .map(|g| {
                g.split(',')
                    .map(|t| {
                        let t = t.trim();
                        t.parse::<usize>().map_err(|_| {
                            Error::InvalidPartition(format!("`{t}` is not a subsystem index in `{spec}`"))
                        })
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let qudits = groups.iter().flatten().copied().max().unwrap_or(0);
        Self::new(qudits, groups)
    }

    /// Parse and require a specific number of qudits.
    pub fn parse_for(spec: &str, qudits: usize) -> Result<Self> {
        let p = Self::parse(spec)?;
        if p.qudits != qudits {
            return Err(Error::InvalidPartition(format!(
                "`{spec}` covers {} subsystems, expected {qudits}",
                p.qudits
            )));
        }
        Ok(p)
    }

    pub fn qudits(&self) -> usize {
        self.qudits
    }

    pub fn groups(&self) -> &[Vec<usize>] {
        &self.groups
    }

    pub fn len(&self) -> usize {
        self.groups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.groups.is_empty()
    }

    /// Index of the group containing the 1-based subsystem `k`.
    pub fn group_of(&self, k: usize) -> Option<usize> {
        self.groups.iter().position(|g| g.contains(&k))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, g) in self.groups.iter().enumerate() {
            if i > 0 {
                f.write_str("|")?;
            }
            for (j, k) in g.iter().enumerate() {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{k}")?;
            }
        }
        Ok(())
    }
}

impl std::str::FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Every set partition of `{1,…,M}`, coarsest first (by number of groups),
/// ties in restricted-growth-string order.
pub fn set_partitions(qudits: usize) -> Vec<Partition> {
    let mut strings = Vec::new();
    let mut rgs = vec![0usize; qudits];
    fn grow(pos: usize, max: usize, rgs: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if pos == rgs.len() {
            out.push(rgs.clone());
            return;
        }
        for v in 0..=max + 1 {
            rgs[pos] = v;
            grow(pos + 1, max.max(v), rgs, out);
        }
    }
    if qudits == 0 {
        return Vec::new();
    }
    // The first element is always in block 0.
    grow(1, 0, &mut rgs, &mut strings);
    let mut parts: Vec<(usize, Partition)> = strings
        .into_iter()
        .map(|s| {
            let blocks = s.iter().copied().max().unwrap_or(0) + 1;
            let mut groups = vec![Vec::new(); blocks];
            for (k, &b) in s.iter().enumerate() {
                groups[b].push(k + 1);
            }
            (blocks, Partition::new(qudits, groups).expect("restricted growth strings are valid"))
        })
        .collect();
    parts.sort_by_key(|(blocks, _)| *blocks);
    parts.into_iter().map(|(_, p)| p).collect()
}
