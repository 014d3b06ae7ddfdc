//! Koszul signs. Every sign in the crate is computed here by counting
//! inversions between odd symbols.

use std::ops::{Mul, MulAssign, Neg};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Sign(bool);

impl Sign {
    pub const PLUS: Sign = Sign(false);
    pub const MINUS: Sign = Sign(true);

    /// (-1)^n
    pub fn pow(n: i64) -> Sign {
        Sign(n.rem_euclid(2) == 1)
    }

    pub fn is_negative(self) -> bool {
        self.0
    }

    pub fn to_i64(self) -> i64 {
        if self.0 {
            -1
        } else {
            1
        }
    }
}

impl Mul for Sign {
    type Output = Sign;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: Sign) -> Sign {
        Sign(self.0 ^ rhs.0)
    }
}

impl MulAssign for Sign {
    #[allow(clippy::suspicious_op_assign_impl)]
    fn mul_assign(&mut self, rhs: Sign) {
        self.0 ^= rhs.0;
    }
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        Sign(!self.0)
    }
}

/// Sign of the reordering that lists symbols in the order of `seq`, where each
/// entry is (degree, position in the source tensor).
pub fn reorder_sign(seq: &[(i64, usize)]) -> Sign {
    let mut odd = false;
    for (a, &(da, pa)) in seq.iter().enumerate() {
        if da.rem_euclid(2) == 0 {
            continue;
        }
        for &(db, pb) in &seq[a + 1..] {
            if db.rem_euclid(2) == 1 && pb < pa {
                odd = !odd;
            }
        }
    }
    Sign(odd)
}

/// Sign of moving a symbol of degree `deg` past symbols of the given degrees.
pub fn pass_sign(deg: i64, past: impl IntoIterator<Item = i64>) -> Sign {
    if deg.rem_euclid(2) == 0 {
        return Sign::PLUS;
    }
    Sign::pow(past.into_iter().sum())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn swap_two_odd() {
        assert_eq!(reorder_sign(&[(1, 1), (1, 0)]), Sign::MINUS);
        assert_eq!(reorder_sign(&[(1, 1), (2, 0)]), Sign::PLUS);
        assert_eq!(reorder_sign(&[(1, 0), (1, 1)]), Sign::PLUS);
    }

    #[test]
    fn cyclic_three_odd() {
        // a b c -> c a b is two transpositions
        assert_eq!(reorder_sign(&[(1, 2), (1, 0), (1, 1)]), Sign::PLUS);
        assert_eq!(reorder_sign(&[(-1, 2), (3, 0), (0, 1)]), Sign::MINUS);
    }

    #[test]
    fn pow_negative() {
        assert_eq!(Sign::pow(-3), Sign::MINUS);
        assert_eq!(Sign::pow(-2), Sign::PLUS);
        assert_eq!(Sign::MINUS * Sign::MINUS, Sign::PLUS);
    }
}
