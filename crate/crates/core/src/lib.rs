//! Adaptive multi-sensor management and situational awareness for an
//! autonomous vessel operating in haze.
//!
//! The crate is organized along the data flow of one simulation tick:
//!
//! - [`world`]: ground-truth scenario, vessel kinematics, and weather field.
//! - [`sensors`]: simulated radar, sonar, visible and IR cameras, AIS, and the
//!   local weather package.
//! - [`weather`]: the weather dictionary. Templates, matching, ranking, and
//!   Markov forecasting over the weather state network.
//! - [`manager`]: polling schedules, sensor settings, and zoned fusion weights
//!   derived from the current weather assessment.
//! - [`fusion`]: association, weighted fusion, contact classification, CPA
//!   projection, risk flags, the spatial weather picture, and need-to-learn.
//! - [`harness`]: the tick loop, canonical event log, replay, and metrics.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod fusion;
pub mod geometry;
pub mod harness;
pub mod manager;
pub mod sensors;
pub mod weather;
pub mod world;

pub use error::{Error, Result};
pub use geometry::Vec2;
