//! Sweep results: the max residual over a sweep plus the argmax witness.

/// Worst residual seen in a verification sweep, with the index tuple that
/// produced it. Sign errors are the dominant failure mode, so the witness
/// matters more than the number.
#[derive(Debug, Clone)]
pub struct Residual {
    pub max: f64,
    pub witness: String,
}

impl Residual {
    pub fn new() -> Self {
        Self {
            max: 0.0,
            witness: String::new(),
        }
    }

    /// Record a residual, keeping the argmax.
    pub fn record(&mut self, value: f64, witness: impl FnOnce() -> String) {
        if value > self.max || self.witness.is_empty() {
            self.max = value;
            self.witness = witness();
        }
    }

    pub fn merge(&mut self, other: Residual) {
        if other.max > self.max || self.witness.is_empty() {
            self.max = other.max;
            self.witness = other.witness;
        }
    }
}

impl Default for Residual {
    fn default() -> Self {
        Self::new()
    }
}
