use std::fmt;

use super::{poly, FieldError};

/// Largest field order accepted; all lookup tables are `O(order)`.
pub const MAX_FIELD_ORDER: u64 = 1 << 20;

const NO_LOG: u32 = u32::MAX;

/// An element of `F_p[t]/(f)`, encoded by its reduced coefficient vector
/// read as a base-`p` integer (`c_0 + c_1 p + c_2 p^2 + ...`).
///
/// Elements only make sense together with the [`Field`] that produced them.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FieldElement(u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    pub fn index(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// The finite field `F_p[t]/(f(t))` with `f` monic irreducible and `f(0) != 0`.
///
/// Multiplication goes through discrete log tables for a primitive element
/// and addition through Zech logarithms, so every operation is a few table
/// lookups.
#[derive(Clone)]
pub struct Field {
    p: u32,
    modulus: Vec<u32>,
    order: u32,
    generator: FieldElement,
    exp: Vec<u32>,
    log: Vec<u32>,
    // zech[n] = log(1 + g^n), NO_LOG when 1 + g^n = 0
    zech: Vec<u32>,
    neg: Vec<u32>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Field")
            .field("p", &self.p)
            .field("modulus", &self.modulus)
            .field("order", &self.order)
            .finish()
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.modulus == other.modulus
    }
}

impl Eq for Field {}

impl Field {
    /// Builds `F_p[t]/(f)` from ascending coefficients of `f`.
    ///
    /// `f` is normalised to be monic. Irreducibility is decided by trial
    /// division, which is fine for the field sizes this crate targets.
    pub fn new(p: u64, f: &[i64]) -> Result<Field, FieldError> {
        if !poly::is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if p > u32::MAX as u64 {
            return Err(FieldError::TooLarge(p));
        }
        let p32 = p as u32;
        let reduced = poly::trim(poly::reduce_coefficients(f, p32));
        let degree = match poly::degree(&reduced) {
            Some(d) if d >= 1 => d,
            _ => return Err(FieldError::DegreeTooSmall),
        };
        let modulus = poly::make_monic(&reduced, p32);
        if modulus[0] == 0 {
            return Err(FieldError::TNotInvertible);
        }
        if let Some(factor) = poly::find_factor(&modulus, p32) {
            return Err(FieldError::Reducible {
                poly: poly::format(&modulus),
                factor: poly::format(&factor),
            });
        }
        let order = p.checked_pow(degree as u32).unwrap_or(u64::MAX);
        if order > MAX_FIELD_ORDER {
            return Err(FieldError::TooLarge(order));
        }
        Ok(Self::build_tables(p32, modulus, order as u32))
    }

    fn build_tables(p: u32, modulus: Vec<u32>, order: u32) -> Field {
        let d = modulus.len() - 1;
        let to_poly = |idx: u32| -> Vec<u32> {
            let mut c = idx;
            let mut out = Vec::with_capacity(d);
            for _ in 0..d {
                out.push(c % p);
                c /= p;
            }
            poly::trim(out)
        };
        let to_index =
            |coeffs: &[u32]| -> u32 { coeffs.iter().rev().fold(0u32, |acc, &c| acc * p + c) };
        let mul_idx = |a: u32, b: u32| {
            to_index(&poly::rem_monic(
                &poly::mul(&to_poly(a), &to_poly(b), p),
                &modulus,
                p,
            ))
        };
        let group = (order - 1) as u64;
        let factors = poly::prime_factors(group);
        let pow_idx = |a: u32, mut e: u64| {
            let mut acc = 1u32;
            let mut base = a;
            while e > 0 {
                if e & 1 == 1 {
                    acc = mul_idx(acc, base);
                }
                base = mul_idx(base, base);
                e >>= 1;
            }
            acc
        };
        let generator = (1..order)
            .find(|&g| factors.iter().all(|&r| pow_idx(g, group / r) != 1))
            .expect("multiplicative group of a finite field is cyclic");

        let mut exp = Vec::with_capacity(group as usize);
        let mut log = vec![NO_LOG; order as usize];
        let mut cur = 1u32;
        for i in 0..group as u32 {
            exp.push(cur);
            log[cur as usize] = i;
            cur = mul_idx(cur, generator);
        }

        let add_digits = |a: u32, b: u32| -> u32 {
            let (mut x, mut y) = (a, b);
            let mut out = 0u32;
            let mut scale = 1u32;
            for _ in 0..d {
                out += ((x % p + y % p) % p) * scale;
                x /= p;
                y /= p;
                scale = scale.wrapping_mul(p);
            }
            out
        };
        let neg: Vec<u32> = (0..order)
            .map(|a| {
                let mut x = a;
                let mut out = 0u32;
                let mut scale = 1u32;
                for _ in 0..d {
                    out += ((p - x % p) % p) * scale;
                    x /= p;
                    scale = scale.wrapping_mul(p);
                }
                out
            })
            .collect();
        let zech = exp
            .iter()
            .map(|&g_n| {
                let sum = add_digits(1, g_n);
                if sum == 0 {
                    NO_LOG
                } else {
                    log[sum as usize]
                }
            })
            .collect();

        Field {
            p,
            modulus,
            order,
            generator: FieldElement(generator),
            exp,
            log,
            zech,
            neg,
        }
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    /// Number of elements, `p^d`.
    pub fn order(&self) -> u32 {
        self.order
    }

    /// Monic defining polynomial, ascending coefficients.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn generator(&self) -> FieldElement {
        self.generator
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement::ZERO
    }

    pub fn one(&self) -> FieldElement {
        FieldElement::ONE
    }

    /// The class of the indeterminate `t`.
    pub fn t(&self) -> FieldElement {
        self.from_coeffs(&[0, 1])
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.order).map(FieldElement)
    }

    pub fn element(&self, index: u32) -> Option<FieldElement> {
        (index < self.order).then_some(FieldElement(index))
    }

    /// Reduces an arbitrary coefficient vector (ascending, possibly
    /// negative, possibly longer than the degree) into the field.
    pub fn from_coeffs(&self, coeffs: &[i64]) -> FieldElement {
        let reduced = poly::reduce_coefficients(coeffs, self.p);
        let r = poly::rem_monic(&reduced, &self.modulus, self.p);
        FieldElement(r.iter().rev().fold(0u32, |acc, &c| acc * self.p + c))
    }

    pub fn from_int(&self, value: i64) -> FieldElement {
        self.from_coeffs(&[value])
    }

    /// Reduced coefficient vector of length `degree()`.
    pub fn coeffs(&self, a: FieldElement) -> Vec<u32> {
        let mut c = a.0;
        (0..self.degree())
            .map(|_| {
                let digit = c % self.p;
                c /= self.p;
                digit
            })
            .collect()
    }

    pub fn format(&self, a: FieldElement) -> String {
        poly::format(&poly::trim(self.coeffs(a)))
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.0 == 0 {
            return b;
        }
        if b.0 == 0 {
            return a;
        }
        let group = self.exp.len() as u32;
        let la = self.log[a.0 as usize];
        let lb = self.log[b.0 as usize];
        let diff = if lb >= la { lb - la } else { lb + group - la };
        match self.zech[diff as usize] {
            NO_LOG => FieldElement::ZERO,
            z => {
                let mut e = la + z;
                if e >= group {
                    e -= group;
                }
                FieldElement(self.exp[e as usize])
            }
        }
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        FieldElement(self.neg[a.0 as usize])
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.0 == 0 || b.0 == 0 {
            return FieldElement::ZERO;
        }
        let group = self.exp.len() as u32;
        let mut e = self.log[a.0 as usize] + self.log[b.0 as usize];
        if e >= group {
            e -= group;
        }
        FieldElement(self.exp[e as usize])
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement, FieldError> {
        if a.0 == 0 {
            return Err(FieldError::DivisionByZero);
        }
        let group = self.exp.len() as u32;
        let l = self.log[a.0 as usize];
        Ok(FieldElement(self.exp[((group - l) % group) as usize]))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement, FieldError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^n` for any integer `n`; negative exponents require `a != 0`.
    pub fn pow(&self, a: FieldElement, n: i64) -> Result<FieldElement, FieldError> {
        if a.0 == 0 {
            return match n {
                0 => Ok(FieldElement::ONE),
                n if n > 0 => Ok(FieldElement::ZERO),
                _ => Err(FieldError::DivisionByZero),
            };
        }
        let group = self.exp.len() as i128;
        let e = (self.log[a.0 as usize] as i128 * n as i128).rem_euclid(group);
        Ok(FieldElement(self.exp[e as usize]))
    }

    /// Least `n >= 1` with `a^n = 1`, found by stripping prime factors from
    /// `p^d - 1` while the power stays trivial.
    pub fn mult_order(&self, a: FieldElement) -> Result<u64, FieldError> {
        if a.0 == 0 {
            return Err(FieldError::ZeroElement);
        }
        let mut n = (self.order - 1) as u64;
        for r in poly::prime_factors(n) {
            while n.is_multiple_of(r) && self.pow(a, (n / r) as i64)? == FieldElement::ONE {
                n /= r;
            }
        }
        Ok(n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf4() -> Field {
        Field::new(2, &[1, 1, 1]).unwrap()
    }

    #[test]
    fn construction_errors() {
        assert_eq!(
            Field::new(4, &[1, 1, 1]).unwrap_err(),
            FieldError::NotPrime(4)
        );
        assert!(matches!(
            Field::new(2, &[1, 0, 1]),
            Err(FieldError::Reducible { .. })
        ));
        assert_eq!(
            Field::new(3, &[0, 1, 1]).unwrap_err(),
            FieldError::TNotInvertible
        );
        assert_eq!(
            Field::new(3, &[2, 0]).unwrap_err(),
            FieldError::DegreeTooSmall
        );
    }

    #[test]
    fn leading_coefficient_is_normalised() {
        // 2t^2 + 2t + 1 = 2(t^2 + t + 2) over Z_3
        let f = Field::new(3, &[1, 2, 2]).unwrap();
        assert_eq!(f.modulus(), &[2, 1, 1]);
        assert_eq!(f.order(), 9);
    }

    #[test]
    fn gf4_arithmetic() {
        let f = gf4();
        let t = f.t();
        let t1 = f.from_coeffs(&[1, 1]);
        assert_eq!(f.mul(t, t), t1);
        assert_eq!(f.mul(t, t1), f.one());
        assert_eq!(f.inv(t).unwrap(), t1);
        assert_eq!(f.inv(f.zero()), Err(FieldError::DivisionByZero));
        assert_eq!(f.add(t, t), f.zero());
        assert_eq!(f.mult_order(t).unwrap(), 3);
        assert_eq!(f.mult_order(f.one()).unwrap(), 1);
        assert_eq!(f.mult_order(f.zero()), Err(FieldError::ZeroElement));
    }

    #[test]
    fn degree_one_field() {
        let f = Field::new(5, &[3, 1]).unwrap();
        assert_eq!(f.order(), 5);
        // t = -3 = 2 in Z_5
        assert_eq!(f.t(), f.from_int(2));
        assert_eq!(f.mul(f.from_int(3), f.from_int(4)), f.from_int(2));
    }

    #[test]
    fn t_in_gf9_has_order_eight() {
        let f = Field::new(3, &[2, 1, 1]).unwrap();
        assert_eq!(f.mult_order(f.t()).unwrap(), 8);
    }

    #[test]
    fn negative_powers() {
        let f = gf4();
        let t = f.t();
        assert_eq!(f.pow(t, -1).unwrap(), f.inv(t).unwrap());
        assert_eq!(f.pow(t, -4).unwrap(), f.pow(t, 2).unwrap());
        assert_eq!(f.pow(f.zero(), -1), Err(FieldError::DivisionByZero));
        assert_eq!(f.pow(f.zero(), 0).unwrap(), f.one());
    }
}
