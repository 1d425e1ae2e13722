use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::world::Channel;

pub const HISTORY_CAPACITY: usize = 600;

/// Ring of timestamped samples for one channel. Timestamps strictly increase.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HistoryBuffer {
    capacity: usize,
    samples: VecDeque<(f64, f64)>,
}

impl Default for HistoryBuffer {
    fn default() -> Self {
        Self::with_capacity(HISTORY_CAPACITY)
    }
}

impl HistoryBuffer {
    pub fn with_capacity(capacity: usize) -> Self {
        assert!(capacity > 0, "history capacity must be positive");
        Self {
            capacity,
            samples: VecDeque::with_capacity(capacity),
        }
    }

    pub fn push(&mut self, t_s: f64, value: f64) -> Result<()> {
        if let Some(&(last_s, _)) = self.samples.back() {
            if !(t_s > last_s) {
                return Err(Error::NonMonotonicTimestamp { t_s, last_s });
            }
        }
        if self.samples.len() == self.capacity {
            self.samples.pop_front();
        }
        self.samples.push_back((t_s, value));
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn latest(&self) -> Option<(f64, f64)> {
        self.samples.back().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.samples.iter().copied()
    }
}

/// One buffer per weather channel.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct WeatherHistory {
    buffers: [HistoryBuffer; 5],
}

impl WeatherHistory {
    pub fn channel(&self, channel: Channel) -> &HistoryBuffer {
        &self.buffers[channel.index()]
    }

    pub fn push(&mut self, channel: Channel, t_s: f64, value: f64) -> Result<()> {
        self.buffers[channel.index()].push(t_s, value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn push_and_evict() {
        let mut b = HistoryBuffer::default();
        b.push(0.0, 1.0).unwrap();
        assert_eq!(b.len(), 1);
        for i in 1..HISTORY_CAPACITY + 1 {
            b.push(i as f64, i as f64).unwrap();
        }
        assert_eq!(b.len(), HISTORY_CAPACITY);
        assert_eq!(b.iter().next(), Some((1.0, 1.0)));
        assert_eq!(b.latest(), Some((600.0, 600.0)));
    }

    #[test]
    fn equal_timestamp_rejected() {
        let mut b = HistoryBuffer::default();
        b.push(5.0, 1.0).unwrap();
        assert!(matches!(b.push(5.0, 2.0), Err(Error::NonMonotonicTimestamp { .. })));
        assert!(matches!(b.push(4.0, 2.0), Err(Error::NonMonotonicTimestamp { .. })));
        assert_eq!(b.len(), 1);
    }
}
