//! Associativity and t-norm deciders.

pub(crate) mod neutral;
pub(crate) mod ordinal;
mod transform;

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::scalar::Scalar;

pub use neutral::{check_left_neutral, cut_point, neutral_scan, Cut, Neutral};
pub use ordinal::{
    check_assoc_ordinal, check_assoc_subnorm, check_tnorm, decompose, Decomposition, DecompositionEntry, Route,
};
pub use transform::{check_assoc_transform, default_probes, transform_slice, TransformSlice};

#[derive(Clone, Debug, PartialEq)]
pub enum Witness<S> {
    /// `T(T(x,y),z) = left` differs from `T(x,T(y,z)) = right`.
    Assoc { x: S, y: S, z: S, left: S, right: S },
    /// `T(1,x) = value` differs from `x`.
    Neutral { x: S, value: S },
}

impl<S: Scalar> fmt::Display for Witness<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Assoc { x, y, z, left, right } => write!(
                f,
                "(x,y,z) = ({}, {}, {}): T(T(x,y),z) = {} but T(x,T(y,z)) = {}",
                x.to_f64(),
                y.to_f64(),
                z.to_f64(),
                left.to_f64(),
                right.to_f64()
            ),
            Witness::Neutral { x, value } => write!(f, "T(1, {}) = {}", x.to_f64(), value.to_f64()),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Verdict<S> {
    Proven { trace: Vec<String> },
    Refuted { witness: Witness<S>, trace: Vec<String> },
    Undetermined { probes: usize, note: String, trace: Vec<String> },
}

impl<S: Scalar> Verdict<S> {
    pub fn trace(&self) -> &[String] {
        match self {
            Verdict::Proven { trace } | Verdict::Refuted { trace, .. } | Verdict::Undetermined { trace, .. } => trace,
        }
    }


    pub fn is_proven(&self) -> bool {
        matches!(self, Verdict::Proven { .. })
    }

    pub fn is_refuted(&self) -> bool {
        matches!(self, Verdict::Refuted { .. })
    }

    pub fn witness(&self) -> Option<&Witness<S>> {
        match self {
            Verdict::Refuted { witness, .. } => Some(witness),
            _ => None,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Proven { .. } => "Proven",
            Verdict::Refuted { .. } => "Refuted",
            Verdict::Undetermined { .. } => "Undetermined",
        }
    }
}

/// A witness is kept only when the two association orders differ by more than this.
pub fn witness_margin<S: Scalar>() -> S {
    if S::EXACT {
        S::zero()
    } else {
        S::ratio(1, 1_000_000)
    }
}
