use thiserror::Error;

/// Errors raised by the cavity solvers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid geometry: {0}")]
    InvalidGeometry(String),

    #[error("motion duration must be positive, got {0}")]
    NonPositiveDuration(f64),

    #[error("mirrors cross or touch at t = {t} (R - L = {gap})")]
    MirrorsCross { t: f64, gap: f64 },

    #[error("path is not C3 at t = {t}: derivative of order {order} jumps by {jump}")]
    Discontinuity { t: f64, order: usize, jump: f64 },

    #[error("path moves at speed {speed} >= 1")]
    Superluminal { speed: f64 },

    #[error("no sign change of the target function on [{lo}, {hi}]")]
    NoBracket { lo: f64, hi: f64 },

    #[error("backward trace did not decrease ({from} -> {to})")]
    NonDecreasingTrace { from: f64, to: f64 },

    #[error("backward trace exceeded {0} reflections")]
    TraceTooDeep(usize),

    #[error("x = {x} lies outside the cavity [{left}, {right}]")]
    OutsideCavity { x: f64, left: f64, right: f64 },

    #[error("Moore function slope {slope} vanishes at argument {arg}")]
    VanishingSlope { arg: f64, slope: f64 },

    #[error("thermal sum needs a non-negative argument, got {0}")]
    NegativeTemperature(f64),

    #[error("adiabatic energy vanishes; adiabaticity is undefined")]
    ZeroAdiabaticEnergy,

    #[error("no physical effective position at t = {t}")]
    NoPhysicalPosition { t: f64 },

    #[error("adiabatic Moore functions are not increasing near t = {t}; reference motion too fast")]
    AdiabaticOrderViolation { t: f64 },

    #[error("max effective speed does not cross 1 on the range: {0}")]
    NoCriticalCrossing(&'static str),

    #[error("argument is not finite: {0}")]
    NonFinite(f64),
}

pub type Result<T> = std::result::Result<T, Error>;
