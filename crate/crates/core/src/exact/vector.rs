use std::fmt;
use std::ops::Neg;

/// A point of Z⁴.
///
/// Coordinates are machine integers; inner products are formed in `i128`,
/// which is exact for every coordinate the shell enumerators can produce.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct IntVector4(pub [i64; 4]);

impl IntVector4 {
    pub const fn new(x1: i64, x2: i64, x3: i64, x4: i64) -> Self {
        IntVector4([x1, x2, x3, x4])
    }

    pub fn coords(&self) -> &[i64; 4] {
        &self.0
    }

    pub fn inner(&self, other: &IntVector4) -> i128 {
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(&a, &b)| a as i128 * b as i128)
            .sum()
    }

    pub fn norm2(&self) -> i128 {
        self.inner(self)
    }

    pub fn coordinate_sum(&self) -> i128 {
        self.0.iter().map(|&a| a as i128).sum()
    }

    /// The first nonzero coordinate is positive.
    pub fn is_positive(&self) -> bool {
        self.0.iter().find(|&&c| c != 0).is_some_and(|&c| c > 0)
    }
}

impl Neg for IntVector4 {
    type Output = IntVector4;
    fn neg(self) -> IntVector4 {
        IntVector4(self.0.map(|c| -c))
    }
}

impl fmt::Display for IntVector4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.0;
        write!(f, "{a} {b} {c} {d}")
    }
}
