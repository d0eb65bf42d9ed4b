//! Replicated storage designs: which messages live on which servers.

use crate::error::{Error, Result};

/// Assignment of message indices to servers.
///
/// Message and server indices are 1-based throughout. Each server stores at
/// most `m` messages and every message must be stored somewhere.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StorageDesign {
    k: usize,
    m: usize,
    sets: Vec<Vec<usize>>,
}

impl StorageDesign {
    pub fn new(k: usize, m: usize, sets: Vec<Vec<usize>>) -> Result<Self> {
        if k == 0 || m == 0 {
            return Err(Error::InvalidDesign("K and M must be positive".into()));
        }
        let mut sorted_sets = Vec::with_capacity(sets.len());
        let mut covered = vec![false; k + 1];
        for (n, set) in sets.iter().enumerate() {
            let mut s = set.clone();
            s.sort_unstable();
            s.dedup();
            if s.len() != set.len() {
                return Err(Error::InvalidDesign(format!(
                    "server {} lists a message twice",
                    n + 1
                )));
            }
            if s.len() > m {
                return Err(Error::InvalidDesign(format!(
                    "server {} stores {} messages, capacity is {m}",
                    n + 1,
                    s.len()
                )));
            }
            for &msg in &s {
                if msg == 0 || msg > k {
                    return Err(Error::InvalidDesign(format!(
                        "message index {msg} out of range 1..={k}"
                    )));
                }
                covered[msg] = true;
            }
            sorted_sets.push(s);
        }
        if let Some(msg) = (1..=k).find(|&msg| !covered[msg]) {
            return Err(Error::InvalidDesign(format!(
                "message {msg} is stored nowhere"
            )));
        }
        Ok(StorageDesign {
            k,
            m,
            sets: sorted_sets,
        })
    }

    pub fn message_count(&self) -> usize {
        self.k
    }

    pub fn capacity(&self) -> usize {
        self.m
    }

    pub fn server_count(&self) -> usize {
        self.sets.len()
    }

    /// Messages stored at server `n` (1-based), sorted ascending.
    pub fn set(&self, n: usize) -> &[usize] {
        &self.sets[n - 1]
    }

    pub fn sets(&self) -> &[Vec<usize>] {
        &self.sets
    }

    pub fn holds(&self, n: usize, k: usize) -> bool {
        self.sets[n - 1].binary_search(&k).is_ok()
    }

    /// Availability set of message `k`: the sorted vector of servers holding it.
    pub fn availability(&self, k: usize) -> AvailabilitySet {
        let servers = (1..=self.server_count())
            .filter(|&n| self.holds(n, k))
            .collect();
        AvailabilitySet { k, servers }
    }
}

/// The sorted set of servers storing a given message.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AvailabilitySet {
    k: usize,
    servers: Vec<usize>,
}

impl AvailabilitySet {
    pub fn message(&self) -> usize {
        self.k
    }

    pub fn servers(&self) -> &[usize] {
        &self.servers
    }
}
