// mdbook cannot test snippets that use external crates, so each chapter is
// pulled in as the doc comment of an empty module and `cargo test --doc` runs
// the code blocks against the real library.

#[doc = include_str!("src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("src/visibility.md")]
pub mod visibility {}
#[doc = include_str!("src/sensors.md")]
pub mod sensors {}
#[doc = include_str!("src/weather.md")]
pub mod weather {}
#[doc = include_str!("src/manager.md")]
pub mod manager {}
#[doc = include_str!("src/fusion.md")]
pub mod fusion {}
#[doc = include_str!("src/harness.md")]
pub mod harness {}
