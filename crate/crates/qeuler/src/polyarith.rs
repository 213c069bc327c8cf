//! Exact arithmetic on dense polynomials in one variable `q` with
//! arbitrary-precision integer coefficients.
//!
//! Every value in this crate is built from [`QPolynomial`]: q-integers,
//! Gaussian binomials, and the generalized q-Euler numbers themselves.
//! All operations are exact; divisibility questions are settled by
//! [`QPolynomial::div_exact`], never by numerical evaluation.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// A polynomial in `q` with [`BigInt`] coefficients, stored densely:
/// `coeffs[d]` is the coefficient of `q^d`.
///
/// The representation is always normalized: the last stored coefficient is
/// nonzero, and the zero polynomial is the empty coefficient list. The zero
/// polynomial has no degree ([`degree`](Self::degree) returns `None`).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct QPolynomial {
    coeffs: Vec<BigInt>,
}

impl QPolynomial {
    /// The zero polynomial.
    pub fn zero() -> Self {
        QPolynomial { coeffs: Vec::new() }
    }

    /// The constant polynomial 1.
    pub fn one() -> Self {
        QPolynomial {
            coeffs: vec![BigInt::one()],
        }
    }

    /// The monomial `c * q^d`. A zero coefficient yields the zero polynomial.
    pub fn monomial(c: BigInt, d: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); d + 1];
        coeffs[d] = c;
        QPolynomial { coeffs }
    }

    /// Builds a polynomial from coefficients in ascending degree order,
    /// trimming trailing zeros.
    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        QPolynomial { coeffs }
    }

    /// Coefficients in ascending degree order; empty for the zero polynomial.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// The coefficient of `q^d` (zero beyond the degree).
    pub fn coeff(&self, d: usize) -> BigInt {
        self.coeffs.get(d).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree of a nonzero polynomial; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// True when every coefficient is nonnegative.
    ///
    /// Generating functions of a statistic, such as the q-Euler numbers,
    /// satisfy this; it is a checkable property of outputs, not an invariant
    /// of the type.
    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    /// `self` raised to the `exp`-th power; `exp = 0` gives 1.
    pub fn pow(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Quotient and remainder of long division over the integers, with
    /// `deg(rem) < deg(divisor)`.
    ///
    /// Returns `None` as soon as a quotient step would need a non-integer
    /// coefficient; the system never switches to rational arithmetic.
    /// Every divisor arising from the q-brackets is monic, so for those
    /// this is ordinary complete long division.
    ///
    /// Panics if `divisor` is the zero polynomial: dividing by zero is a
    /// contract violation, rejected before any computation.
    pub fn div_rem(&self, divisor: &Self) -> Option<(Self, Self)> {
        assert!(
            !divisor.is_zero(),
            "division by the zero polynomial is a contract violation"
        );
        if self.is_zero() {
            return Some((Self::zero(), Self::zero()));
        }
        let da = self.degree().expect("nonzero");
        let db = divisor.degree().expect("nonzero");
        if da < db {
            return Some((Self::zero(), self.clone()));
        }
        let lead = divisor.coeffs.last().expect("nonzero");
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); da - db + 1];
        for d in (0..=da - db).rev() {
            let top = std::mem::take(&mut rem[d + db]);
            if top.is_zero() {
                continue;
            }
            let (step, carry) = top.div_rem(lead);
            if !carry.is_zero() {
                return None;
            }
            for (t, divisor_coeff) in divisor.coeffs.iter().enumerate().take(db) {
                rem[d + t] -= &step * divisor_coeff;
            }
            quot[d] = step;
        }
        rem.truncate(db);
        Some((Self::from_coeffs(quot), Self::from_coeffs(rem)))
    }

    /// Exact division: the quotient `c` with `self = divisor * c` over the
    /// integers, or `None` when no such integer polynomial exists.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        match self.div_rem(divisor) {
            Some((q, r)) if r.is_zero() => Some(q),
            _ => None,
        }
    }

    /// Exact value of the polynomial at the integer `x`, by Horner's rule.
    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Shorthand for the `q = 1` specialization (the plain count).
    pub fn eval_at_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }
}

impl Add for &QPolynomial {
    type Output = QPolynomial;

    fn add(self, rhs: &QPolynomial) -> QPolynomial {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (c, s) in coeffs.iter_mut().zip(&short.coeffs) {
            *c += s;
        }
        QPolynomial::from_coeffs(coeffs)
    }
}

impl Sub for &QPolynomial {
    type Output = QPolynomial;

    fn sub(self, rhs: &QPolynomial) -> QPolynomial {
        let mut coeffs = self.coeffs.clone();
        if coeffs.len() < rhs.coeffs.len() {
            coeffs.resize_with(rhs.coeffs.len(), BigInt::zero);
        }
        for (c, s) in coeffs.iter_mut().zip(&rhs.coeffs) {
            *c -= s;
        }
        QPolynomial::from_coeffs(coeffs)
    }
}

impl Mul for &QPolynomial {
    type Output = QPolynomial;

    /// Schoolbook convolution. Dense representation keeps this cache-friendly,
    /// and desk-scale degrees never justify anything faster.
    fn mul(self, rhs: &QPolynomial) -> QPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return QPolynomial::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        QPolynomial::from_coeffs(coeffs)
    }
}

impl Neg for &QPolynomial {
    type Output = QPolynomial;

    fn neg(self) -> QPolynomial {
        QPolynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

/// Canonical text rendering, the interchange form for all report output:
/// terms in ascending degree, zero coefficients omitted, unit coefficients
/// omitted except on the constant term. `1 + 2*q^2 + q^5` style; the zero
/// polynomial renders as `0`.
impl fmt::Display for QPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (d, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
                first = false;
            } else if c.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            let mag = c.abs();
            match d {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    if d == 1 {
                        f.write_str("q")?;
                    } else {
                        write!(f, "q^{d}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// The q-analog `[k]_{q^i} = 1 + q^i + q^{2i} + ... + q^{(k-1)i}`.
///
/// `q_bracket(k, 1)` is the q-integer `[k]`. Requires `k >= 1` and `i >= 1`.
pub fn q_bracket(k: u32, i: u32) -> QPolynomial {
    assert!(k >= 1 && i >= 1, "q_bracket requires k >= 1 and i >= 1");
    let mut coeffs = vec![BigInt::zero(); ((k - 1) * i + 1) as usize];
    for j in 0..k {
        coeffs[(j * i) as usize] = BigInt::one();
    }
    QPolynomial::from_coeffs(coeffs)
}

/// The product `[k] [k]_{q^2} [k]_{q^3} ... [k]_{q^n}`; the empty product
/// (`n = 0`) is 1.
pub fn bracket_product(k: u32, n: u32) -> QPolynomial {
    let mut acc = QPolynomial::one();
    for j in 1..=n {
        acc = &acc * &q_bracket(k, j);
    }
    acc
}
