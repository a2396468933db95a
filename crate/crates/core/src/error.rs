//! Crate-wide error type.

use alloc::boxed::Box;
use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// An argument violated a precondition.
    Domain { what: &'static str, value: f64 },
    /// A complex argument had a non-finite component.
    NonFinite { what: &'static str },
    /// exp overflow in the lower-half-plane reflection of the Faddeeva
    /// function; the offending argument is reported.
    Overflow { re: f64, im: f64 },
    /// Newton iteration failed to converge for the named pole index.
    Convergence { what: &'static str, index: usize },
    /// Two pole searches collapsed onto the same root.
    Enumeration { index: usize },
    /// Winding-number integral came out farther than 0.3 from an integer.
    ContourTooClose { winding: f64 },
    /// Series analysis failed (e.g. no interior maximum).
    Analysis { what: &'static str },
    /// A half-maximum crossing fell outside the series range.
    WidthUndefined { side: &'static str },
    /// Crank-Nicolson norm drift exceeded tolerance.
    IntegratorFault { drift: f64 },
    /// Gamow-state construction failed (degenerate q_n = k_n input).
    Construction { what: &'static str },
    /// Evaluation failure annotated with the (x, tau) probe that caused it.
    At { x: f64, tau: f64, inner: Box<Error> },
}

impl Error {
    pub fn at(self, x: f64, tau: f64) -> Error {
        Error::At {
            x,
            tau,
            inner: Box::new(self),
        }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain { what, value } => write!(f, "domain error: {what} (got {value:e})"),
            Error::NonFinite { what } => write!(f, "non-finite argument: {what}"),
            Error::Overflow { re, im } => {
                write!(f, "overflow in exp(-z^2) reflection at z = {re:e} + {im:e} i")
            }
            Error::Convergence { what, index } => {
                write!(f, "{what} failed to converge at index {index}")
            }
            Error::Enumeration { index } => {
                write!(f, "pole enumeration collapsed duplicates near index {index}")
            }
            Error::ContourTooClose { winding } => {
                write!(f, "winding integral {winding} too far from an integer; contour too close to a zero")
            }
            Error::Analysis { what } => write!(f, "analysis error: {what}"),
            Error::WidthUndefined { side } => {
                write!(f, "half-maximum crossing not found on the {side} side")
            }
            Error::IntegratorFault { drift } => {
                write!(f, "integrator fault: relative norm drift {drift:e}")
            }
            Error::Construction { what } => write!(f, "construction error: {what}"),
            Error::At { x, tau, inner } => write!(f, "at x = {x}, tau = {tau}: {inner}"),
        }
    }
}

#[cfg(test)]
impl std::error::Error for Error {}
