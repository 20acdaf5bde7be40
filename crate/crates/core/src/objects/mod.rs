//! Random states, channels and measurements used as test substrate.

pub mod channel;
pub mod measurement;
pub mod povm;
pub mod random;

pub use channel::KrausChannel;
pub use measurement::{measured_state, post_measurement_states};
pub use povm::{overlap, Povm};
pub use random::{
    haar_isometry, haar_unitary, marginal_spectrum, purify, random_density, random_pure_state,
    PureState, SeededRng,
};
