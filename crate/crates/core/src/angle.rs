use core::fmt;
use core::ops::{Add, Neg, Sub};

use crate::arith::gcd;

/// A rotation measured in full turns and reduced modulo one turn.
///
/// `num/den` is always in lowest terms with `0 <= num < den`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct TurnAngle {
    num: u64,
    den: u64,
}

impl TurnAngle {
    pub const ZERO: TurnAngle = TurnAngle { num: 0, den: 1 };

    /// `num/den` turns, reduced modulo one. Panics when `den == 0`.
    pub fn new(num: i128, den: u64) -> Self {
        assert!(den > 0, "turn angle with zero denominator");
        let d = den as i128;
        let r = num.rem_euclid(d) as u64;
        let g = gcd(r, den);
        TurnAngle { num: r / g, den: den / g }
    }

    pub fn num(self) -> u64 {
        self.num
    }

    pub fn den(self) -> u64 {
        self.den
    }

    pub fn is_zero(self) -> bool {
        self.num == 0
    }

    /// `k` times this angle.
    pub fn scale(self, k: u64) -> Self {
        TurnAngle::new(self.num as i128 * k as i128, self.den)
    }

    /// Whether `self ≡ other` modulo `1/modulus` of a turn.
    pub fn congruent_mod(self, other: TurnAngle, modulus: u64) -> bool {
        (self - other).scale(modulus).is_zero()
    }
}

impl Add for TurnAngle {
    type Output = TurnAngle;
    fn add(self, rhs: TurnAngle) -> TurnAngle {
        let den = self.den as i128 * rhs.den as i128;
        let num = self.num as i128 * rhs.den as i128 + rhs.num as i128 * self.den as i128;
        reduce_wide(num, den)
    }
}

impl Sub for TurnAngle {
    type Output = TurnAngle;
    fn sub(self, rhs: TurnAngle) -> TurnAngle {
        self + (-rhs)
    }
}

impl Neg for TurnAngle {
    type Output = TurnAngle;
    fn neg(self) -> TurnAngle {
        TurnAngle::new(-(self.num as i128), self.den)
    }
}

fn reduce_wide(num: i128, den: i128) -> TurnAngle {
    let r = num.rem_euclid(den);
    let g = num_integer::Integer::gcd(&r, &den);
    TurnAngle { num: (r / g) as u64, den: (den / g) as u64 }
}

impl fmt::Display for TurnAngle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.num == 0 {
            f.write_str("0")
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}
