use std::time::{Duration, Instant};

use polyadic_core::search::Clock;

/// Wall-clock time since construction.
#[derive(Debug, Clone, Copy)]
pub struct InstantClock(Instant);

impl InstantClock {
    pub fn start() -> Self {
        InstantClock(Instant::now())
    }
}

impl Clock for InstantClock {
    fn elapsed(&self) -> Duration {
        self.0.elapsed()
    }
}

/// Timeout from `ALG_TIMEOUT_SECS`, falling back to `default`.
pub fn timeout_from_env(default: Duration) -> Duration {
    std::env::var("ALG_TIMEOUT_SECS")
        .ok()
        .and_then(|s| s.trim().parse::<f64>().ok())
        .filter(|s| s.is_finite() && *s >= 0.0)
        .map(Duration::from_secs_f64)
        .unwrap_or(default)
}
