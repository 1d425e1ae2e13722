use std::collections::{BTreeMap, VecDeque};

use crate::weather::{Thresholds, WeatherAssessment};

/// How far back the event counter looks, seconds.
pub const RARE_EVENT_WINDOW_S: f64 = 3_600.0;
const RARE_BELOW: usize = 3;

/// Timestamped event kinds over a sliding window.
#[derive(Debug, Clone, Default)]
pub struct EventCounter {
    events: VecDeque<(f64, String)>,
}

impl EventCounter {
    pub fn record(&mut self, t_s: f64, kind: impl Into<String>) {
        self.events.push_back((t_s, kind.into()));
    }

    /// Drops events older than the window ending at `now_t`.
    pub fn expire(&mut self, now_t: f64) {
        while self
            .events
            .front()
            .is_some_and(|(t, _)| *t <= now_t - RARE_EVENT_WINDOW_S)
        {
            self.events.pop_front();
        }
    }

    pub fn total(&self) -> usize {
        self.events.len()
    }

    /// Share of events whose kind occurs fewer than three times in the window.
    pub fn rare_rate(&self) -> f64 {
        let mut counts: BTreeMap<&str, usize> = BTreeMap::new();
        for (_, kind) in &self.events {
            *counts.entry(kind).or_default() += 1;
        }
        let rare: usize = counts.values().filter(|&&n| n < RARE_BELOW).sum();
        rare as f64 / self.total().max(1) as f64
    }
}

/// How strongly the current situation calls for learning, in [0, 1].
pub fn need_to_learn(assessment: &WeatherAssessment, events: &EventCounter, thresholds: &Thresholds) -> f64 {
    let novelty = if assessment.novel {
        1.0
    } else {
        assessment.distance / thresholds.theta_new
    };
    (0.7 * novelty + 0.3 * events.rare_rate().min(1.0)).clamp(0.0, 1.0)
}
