use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::tensor::{ComplexOperator, C64};

/// Named single-qubit pure states.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Ket {
    #[serde(rename = "0")]
    Zero,
    #[serde(rename = "1")]
    One,
    /// (|0⟩ + |1⟩)/√2
    D,
    /// (|0⟩ − |1⟩)/√2
    A,
    /// (|0⟩ + i|1⟩)/√2
    R,
    /// (|0⟩ − i|1⟩)/√2
    L,
}

impl Ket {
    pub fn amplitudes(self) -> [C64; 2] {
        let s = FRAC_1_SQRT_2;
        match self {
            Ket::Zero => [C64::new(1.0, 0.0), C64::new(0.0, 0.0)],
            Ket::One => [C64::new(0.0, 0.0), C64::new(1.0, 0.0)],
            Ket::D => [C64::new(s, 0.0), C64::new(s, 0.0)],
            Ket::A => [C64::new(s, 0.0), C64::new(-s, 0.0)],
            Ket::R => [C64::new(s, 0.0), C64::new(0.0, s)],
            Ket::L => [C64::new(s, 0.0), C64::new(0.0, -s)],
        }
    }

    pub fn projector(self) -> ComplexOperator {
        ComplexOperator::outer(&self.amplitudes())
    }

    /// `|self⟩ ⊗ |other⟩` as a 4-vector.
    pub fn pair(self, other: Ket) -> [C64; 4] {
        let (a, b) = (self.amplitudes(), other.amplitudes());
        [a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1]]
    }
}

impl fmt::Display for Ket {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Ket::Zero => "0",
            Ket::One => "1",
            Ket::D => "D",
            Ket::A => "A",
            Ket::R => "R",
            Ket::L => "L",
        };
        f.write_str(s)
    }
}

impl FromStr for Ket {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Ok(match s {
            "0" => Ket::Zero,
            "1" => Ket::One,
            "D" | "d" => Ket::D,
            "A" | "a" => Ket::A,
            "R" | "r" => Ket::R,
            "L" | "l" => Ket::L,
            _ => return Err(Error::arg(format!("unknown ket {s:?}"))),
        })
    }
}
