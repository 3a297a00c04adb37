use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::geometry::Vec2;
use crate::potential_field::PotentialFieldSpec;

/// One step of experience for one agent.
#[derive(Debug, Clone, PartialEq)]
pub struct Transition {
    pub obs: Vec<f64>,
    pub action: Vec2,
    pub reward: f64,
    pub next_obs: Vec<f64>,
    /// The action actually taken in `next_obs` (Sarsa targets only).
    pub next_action: Option<Vec2>,
    /// Terminal: no bootstrapping past this transition.
    pub done: bool,
    /// Field seen by the agent when it acted.
    pub pf_spec_snapshot: Option<PotentialFieldSpec>,
    /// The agent's position when it acted, where `q_pf` is evaluated.
    pub raw_state_pos: Vec2,
}

/// Fixed-capacity FIFO of transitions with seeded uniform sampling.
#[derive(Debug, Clone)]
pub struct ReplayBuffer {
    capacity: usize,
    items: Vec<Transition>,
    /// Slot the next push overwrites once full.
    head: usize,
    rng: ChaCha8Rng,
}

impl Default for ReplayBuffer {
    /// An empty single-slot buffer.
    fn default() -> Self {
        ReplayBuffer {
            capacity: 1,
            items: Vec::new(),
            head: 0,
            rng: ChaCha8Rng::seed_from_u64(0),
        }
    }
}

impl ReplayBuffer {
    pub fn new(capacity: usize, seed: u64) -> Self {
        assert!(capacity > 0, "replay capacity must be positive");
        ReplayBuffer {
            capacity,
            items: Vec::with_capacity(capacity.min(1 << 16)),
            head: 0,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn push(&mut self, t: Transition) {
        if self.items.len() < self.capacity {
            self.items.push(t);
        } else {
            self.items[self.head] = t;
            self.head = (self.head + 1) % self.capacity;
        }
    }

    /// Contents from oldest to newest.
    pub fn iter(&self) -> impl Iterator<Item = &Transition> {
        let (newer, older) = self.items.split_at(self.head);
        older.iter().chain(newer)
    }

    /// `k` distinct transitions drawn uniformly.
    pub fn sample(&mut self, k: usize) -> Result<Vec<&Transition>> {
        if k == 0 || k > self.items.len() {
            return Err(Error::Usage(format!(
                "cannot sample {k} transitions from a buffer holding {}",
                self.items.len()
            )));
        }
        let picks = rand::seq::index::sample(&mut self.rng, self.items.len(), k);
        Ok(picks.into_iter().map(|i| &self.items[i]).collect())
    }
}
