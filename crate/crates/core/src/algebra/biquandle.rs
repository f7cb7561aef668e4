use super::{Field, FieldElement, FieldError};

/// The Alexander biquandle on a finite field `X = F_p[t]/(f)` with a chosen
/// unit `s`:
///
/// ```text
/// a ⊻ b = t a + (s - t) b        a ⊼ b = s a
/// ```
///
/// Its type is the least `n > 0` making both `n`-fold operations trivial,
/// which for this family is `lcm(ord s, ord t)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlexanderBiquandle {
    field: Field,
    s: FieldElement,
    s_order: u64,
    t_order: u64,
    kind: u64,
}

impl AlexanderBiquandle {
    pub fn new(field: Field, s: FieldElement) -> Result<Self, FieldError> {
        if s.is_zero() {
            return Err(FieldError::SNotUnit);
        }
        let s_order = field.mult_order(s)?;
        let t_order = field.mult_order(field.t())?;
        let kind = lcm(s_order, t_order);
        Ok(AlexanderBiquandle {
            field,
            s,
            s_order,
            t_order,
            kind,
        })
    }

    /// Convenience constructor from the textual parameters used by the CLI.
    pub fn from_params(p: u64, f: &[i64], s: &[i64]) -> Result<Self, FieldError> {
        let field = Field::new(p, f)?;
        let s = field.from_coeffs(s);
        Self::new(field, s)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn s(&self) -> FieldElement {
        self.s
    }

    pub fn t(&self) -> FieldElement {
        self.field.t()
    }

    pub fn s_order(&self) -> u64 {
        self.s_order
    }

    pub fn t_order(&self) -> u64 {
        self.t_order
    }

    /// `type X = lcm(ord s, ord t)`.
    pub fn biquandle_type(&self) -> u64 {
        self.kind
    }

    /// Whether the operation families are well defined over `Z_m`.
    pub fn is_zm_family(&self, m: u64) -> bool {
        m > 0 && m.is_multiple_of(self.kind)
    }

    pub fn require_zm_family(&self, m: u64) -> Result<(), FieldError> {
        if self.is_zm_family(m) {
            Ok(())
        } else {
            Err(FieldError::NotZmFamily { m, kind: self.kind })
        }
    }

    /// `s^n`; `s` is a unit so any integer exponent is allowed.
    pub fn s_pow(&self, n: i64) -> FieldElement {
        self.field.pow(self.s, n).expect("s is a unit")
    }

    /// `t^n`; `t` is a unit because `f(0) != 0`.
    pub fn t_pow(&self, n: i64) -> FieldElement {
        self.field.pow(self.t(), n).expect("t is a unit")
    }

    /// `s^n - t^n`.
    pub fn s_minus_t(&self, n: i64) -> FieldElement {
        self.field.sub(self.s_pow(n), self.t_pow(n))
    }

    pub fn under(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.under_n(a, b, 1)
    }

    pub fn over(&self, a: FieldElement, _b: FieldElement) -> FieldElement {
        self.field.mul(self.s, a)
    }

    /// `a ⊻^[n] b = t^n a + (s^n - t^n) b`.
    pub fn under_n(&self, a: FieldElement, b: FieldElement, n: i64) -> FieldElement {
        let f = &self.field;
        f.add(f.mul(self.t_pow(n), a), f.mul(self.s_minus_t(n), b))
    }

    /// `a ⊼^[n] b = s^n a`.
    pub fn over_n(&self, a: FieldElement, _b: FieldElement, n: i64) -> FieldElement {
        self.field.mul(self.s_pow(n), a)
    }
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_s_is_rejected() {
        let f = Field::new(2, &[1, 1, 1]).unwrap();
        let zero = f.zero();
        assert_eq!(AlexanderBiquandle::new(f, zero), Err(FieldError::SNotUnit));
    }

    #[test]
    fn gf4_with_s_one() {
        let ab = AlexanderBiquandle::from_params(2, &[1, 1, 1], &[1]).unwrap();
        assert_eq!(ab.biquandle_type(), 3);
        let f = ab.field();
        // t*1 + (1 - t)*0 = t
        assert_eq!(ab.under_n(f.one(), f.zero(), 1), f.t());
        assert!(ab.require_zm_family(3).is_ok());
        assert!(ab.require_zm_family(6).is_ok());
        assert_eq!(
            ab.require_zm_family(2),
            Err(FieldError::NotZmFamily { m: 2, kind: 3 })
        );
    }

    #[test]
    fn zeroth_operation_is_identity() {
        let ab = AlexanderBiquandle::from_params(3, &[2, 1, 1], &[1, 1]).unwrap();
        let f = ab.field();
        for a in f.elements() {
            for b in f.elements() {
                assert_eq!(ab.under_n(a, b, 0), a);
                assert_eq!(ab.over_n(a, b, 0), a);
                let n = ab.biquandle_type() as i64;
                assert_eq!(ab.under_n(a, b, n), a);
                assert_eq!(ab.over_n(a, b, -n), a);
            }
        }
    }

    #[test]
    fn s_one_degenerates_to_quandle() {
        let ab = AlexanderBiquandle::from_params(3, &[2, 1, 1], &[1]).unwrap();
        let f = ab.field();
        for a in f.elements() {
            for b in f.elements() {
                assert_eq!(ab.over(a, b), a);
            }
        }
    }
}
