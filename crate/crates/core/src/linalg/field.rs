use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::LinalgError;

/// The prime field GF(p) for an odd prime p.
///
/// Elements are stored as plain `u32` residues in `0..p`; the field value
/// carries the modulus so that matrices and algebras can check they agree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fp {
    p: u32,
}

pub(crate) fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl Fp {
    /// Largest supported characteristic; keeps every product below `u64::MAX`.
    pub const MAX_P: u32 = 1 << 20;

    pub fn new(p: u32) -> Result<Self, LinalgError> {
        if p < 3 || p > Self::MAX_P || !is_prime(p) {
            return Err(LinalgError::InvalidCharacteristic(p));
        }
        Ok(Fp { p })
    }

    #[inline]
    pub fn p(self) -> u32 {
        self.p
    }

    #[inline]
    pub fn reduce(self, x: i64) -> u32 {
        x.rem_euclid(self.p as i64) as u32
    }

    #[inline]
    pub fn reduce_u64(self, x: u64) -> u32 {
        (x % self.p as u64) as u32
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    pub fn pow(self, mut a: u32, mut e: u64) -> u32 {
        let mut acc = 1u32;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(self, a: u32) -> u32 {
        assert!(a % self.p != 0, "inverse of zero in GF({})", self.p);
        self.pow(a, (self.p - 2) as u64)
    }

    pub fn elements(self) -> impl Iterator<Item = u32> {
        0..self.p
    }

    /// Binomial coefficient C(n, k) reduced mod p (Lucas).
    pub fn binomial(self, mut n: u64, mut k: u64) -> u32 {
        let p = self.p as u64;
        let mut acc = 1u32;
        while n > 0 || k > 0 {
            let (ni, ki) = (n % p, k % p);
            if ki > ni {
                return 0;
            }
            let mut c = 1u32;
            for i in 0..ki {
                c = self.mul(c, self.reduce_u64(ni - i));
                c = self.mul(c, self.inv(self.reduce_u64(i + 1)));
            }
            acc = self.mul(acc, c);
            n /= p;
            k /= p;
        }
        acc
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.p)
    }
}

/// A single residue tagged with its field.
///
/// Arithmetic between scalars of different characteristic panics; bulk data
/// (matrices, algebra tables) stores bare residues next to one shared [`Fp`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Scalar {
    value: u32,
    field: Fp,
}

impl Scalar {
    pub fn new(field: Fp, value: i64) -> Self {
        Scalar {
            value: field.reduce(value),
            field,
        }
    }

    pub fn value(self) -> u32 {
        self.value
    }

    pub fn field(self) -> Fp {
        self.field
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn inv(self) -> Option<Self> {
        (self.value != 0).then(|| Scalar {
            value: self.field.inv(self.value),
            field: self.field,
        })
    }

    fn check(self, other: Self) -> Fp {
        assert_eq!(
            self.field, other.field,
            "mixed-characteristic scalar arithmetic"
        );
        self.field
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        let f = self.check(rhs);
        Scalar {
            value: f.add(self.value, rhs.value),
            field: f,
        }
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        let f = self.check(rhs);
        Scalar {
            value: f.sub(self.value, rhs.value),
            field: f,
        }
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        let f = self.check(rhs);
        Scalar {
            value: f.mul(self.value, rhs.value),
            field: f,
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            value: self.field.neg(self.value),
            field: self.field,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}
