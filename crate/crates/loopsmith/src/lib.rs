//! Control-engineering pipeline library: excitation signals, frequency-response
//! estimation, Loewner data-driven modeling, H2 model reduction, fixed-structure
//! H-infinity synthesis with margin analysis, Tustin discretization, and hybrid
//! sampled/continuous closed-loop simulation with PWM actuation.
//!
//! The crate is organized around [`lti::Lti`], a real descriptor state-space
//! model `E x' = A x + B u`, `y = C x (+ D u)`. Everything downstream — signal
//! simulation, pencil analysis, interpolation, reduction, synthesis,
//! discretization — consumes and produces this type.
//!
//! A batch pipeline mirroring the full workflow (excite → estimate →
//! interpolate → reduce → synthesize → discretize → simulate) lives in
//! [`pipeline`] and is driven by the `loopsmith` CLI.

pub mod discretize;
pub mod error;
pub mod h2reduce;
pub mod hinf;
pub mod hybrid;
pub mod loewner;
pub mod lti;
pub mod pipeline;
pub mod signals;

pub use error::{Error, Result};
pub use lti::DescriptorSystem;
