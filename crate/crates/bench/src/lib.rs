//! Shared inputs for the criterion benches.

use cuboid_core::SeedPair;

/// Seeds covering the small, medium and large ends of the forward hypothesis.
pub fn forward_seeds() -> Vec<SeedPair> {
    [(59, 1), (181, 3), (1009, 7)]
        .into_iter()
        .map(|(p, q)| SeedPair::new(p, q).expect("coprime fixture"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeds_meet_forward_hypothesis() {
        for s in forward_seeds() {
            assert!(s.p >= 59 * s.q, "{s}");
        }
    }
}
