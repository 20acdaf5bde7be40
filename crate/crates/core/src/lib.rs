pub mod alpha;
pub mod cli;
pub mod conditional;
pub mod divergence;
pub mod error;
pub mod io;
pub mod layout;
pub mod objects;
pub mod operator;
pub mod state;
pub mod verify;

pub use alpha::Alpha;
pub use conditional::{entropy, Arrow, EntropyKind, EntropyResult, OptimizerConfig};
pub use divergence::{d_alpha_z, d_old, d_sandwiched, relative_entropy, renyi_entropy, Family};
pub use error::{Error, Result};
pub use layout::SubsystemLayout;
pub use objects::{KrausChannel, Povm, PureState, SeededRng};
pub use operator::{ComplexMatrix, ComplexVector, HermitianOperator, SpectralDecomposition};
pub use state::DensityOperator;
