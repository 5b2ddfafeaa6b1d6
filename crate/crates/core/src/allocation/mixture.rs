use rand::Rng;

use super::{Decision, Policy};
use crate::arrival::Customer;
use crate::error::{Error, Result};
use crate::rng::TrialRng;

/// Runs one component per run, chosen with the given weights when the run
/// starts.
pub struct MixturePolicy {
    components: Vec<(Box<dyn Policy>, f64)>,
    active: usize,
}

pub fn mixture_policy(components: Vec<(Box<dyn Policy>, f64)>) -> Result<MixturePolicy> {
    if components.is_empty() {
        return Err(Error::InvalidParameter(
            "mixture needs at least one component".into(),
        ));
    }
    if components.iter().any(|(_, w)| w.is_nan() || *w < 0.0) {
        return Err(Error::InvalidParameter(
            "mixture weights must be non-negative".into(),
        ));
    }
    let total: f64 = components.iter().map(|(_, w)| w).sum();
    if (total - 1.0).abs() > 1e-9 {
        return Err(Error::InvalidParameter(format!(
            "mixture weights sum to {total}, not 1"
        )));
    }
    Ok(MixturePolicy {
        components,
        active: 0,
    })
}

impl MixturePolicy {
    /// Index of the component chosen for the current run.
    pub fn active(&self) -> usize {
        self.active
    }
}

impl Policy for MixturePolicy {
    fn start(&mut self, rng: &mut TrialRng) {
        let u: f64 = rng.gen();
        let mut acc = 0.0;
        self.active = self.components.len() - 1;
        for (i, (_, w)) in self.components.iter().enumerate() {
            acc += w;
            if u < acc {
                self.active = i;
                break;
            }
        }
        // zero-weight trailing components are never picked
        while self.components[self.active].1 == 0.0 && self.active > 0 {
            self.active -= 1;
        }
        self.components[self.active].0.start(rng);
    }

    fn decide(&mut self, step: usize, arrival: Customer, inventory_left: usize) -> Decision {
        self.components[self.active]
            .0
            .decide(step, arrival, inventory_left)
    }
}
