use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Which formula governs an order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OrderClass {
    /// `α > 0`, `α ≠ 1`, `α` finite.
    Simple,
    Zero,
    One,
    Infinity,
    /// `-inf < α < 0`.
    Negative,
    NegInfinity,
}

/// The order `α ∈ [-inf, +inf]` of a Rényi divergence.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Order(f64);

impl Order {
    pub const ZERO: Order = Order(0.0);
    pub const HALF: Order = Order(0.5);
    pub const ONE: Order = Order(1.0);
    pub const TWO: Order = Order(2.0);
    pub const INFINITY: Order = Order(f64::INFINITY);
    pub const NEG_INFINITY: Order = Order(f64::NEG_INFINITY);

    pub fn new(alpha: f64) -> Result<Self> {
        if alpha.is_nan() {
            Err(Error::NanOrder)
        } else {
            Ok(Order(alpha))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn class(self) -> OrderClass {
        let a = self.0;
        if a == f64::INFINITY {
            OrderClass::Infinity
        } else if a == f64::NEG_INFINITY {
            OrderClass::NegInfinity
        } else if a == 0.0 {
            OrderClass::Zero
        } else if a == 1.0 {
            OrderClass::One
        } else if a > 0.0 {
            OrderClass::Simple
        } else {
            OrderClass::Negative
        }
    }

    pub fn is_nonnegative(self) -> bool {
        self.0 >= 0.0
    }

    /// True for `α ∈ (0, inf)`, i.e. simple orders and `α = 1`.
    pub fn is_positive_finite(self) -> bool {
        self.0 > 0.0 && self.0.is_finite()
    }
}

impl TryFrom<f64> for Order {
    type Error = Error;

    fn try_from(alpha: f64) -> Result<Self> {
        Order::new(alpha)
    }
}

impl FromStr for Order {
    type Err = Error;

    /// Accepts decimal literals plus `inf`, `+inf`, `-inf`, `infinity`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().to_ascii_lowercase();
        let value = match t.as_str() {
            "inf" | "+inf" | "infinity" | "+infinity" => f64::INFINITY,
            "-inf" | "-infinity" => f64::NEG_INFINITY,
            _ => t
                .parse::<f64>()
                .map_err(|_| Error::InvalidArgument(format!("cannot parse order '{s}'")))?,
        };
        Order::new(value)
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            a if a == f64::INFINITY => write!(f, "inf"),
            a if a == f64::NEG_INFINITY => write!(f, "-inf"),
            a => fmt::Display::fmt(&a, f),
        }
    }
}
