//! Dense polynomials over the prime field `Z_p`, stored as ascending
//! coefficient vectors with no trailing zeros (the zero polynomial is empty).

use super::FieldError;

pub(crate) fn trim(mut poly: Vec<u32>) -> Vec<u32> {
    while poly.last() == Some(&0) {
        poly.pop();
    }
    poly
}

pub(crate) fn degree(poly: &[u32]) -> Option<usize> {
    poly.iter().rposition(|&c| c != 0)
}

pub(crate) fn mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let p64 = p as u64;
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x as u64 * y as u64) % p64;
        }
    }
    trim(out.into_iter().map(|c| c as u32).collect())
}

/// Remainder of `a` modulo the monic polynomial `m`.
pub(crate) fn rem_monic(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let d = m.len() - 1;
    let mut r = trim(a.to_vec());
    let p64 = p as u64;
    while r.len() > d {
        let lead = *r.last().unwrap() as u64;
        let shift = r.len() - 1 - d;
        for (i, &c) in m.iter().enumerate() {
            let sub = lead * c as u64 % p64;
            let slot = &mut r[shift + i];
            *slot = ((*slot as u64 + p64 - sub) % p64) as u32;
        }
        r = trim(r);
    }
    r
}

/// Scales a polynomial so its leading coefficient is one.
pub(crate) fn make_monic(poly: &[u32], p: u32) -> Vec<u32> {
    let lead = *poly.last().expect("nonzero polynomial");
    let inv = inv_mod(lead, p);
    poly.iter()
        .map(|&c| (c as u64 * inv as u64 % p as u64) as u32)
        .collect()
}

pub(crate) fn inv_mod(a: u32, p: u32) -> u32 {
    // p is prime, so a^(p-2) is the inverse
    pow_mod(a as u64, p as u64 - 2, p as u64) as u32
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, modulus: u64) -> u64 {
    let mut acc = 1 % modulus;
    base %= modulus;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % modulus;
        }
        base = base * base % modulus;
        exp >>= 1;
    }
    acc
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut k = 2;
    while k * k <= n {
        if n.is_multiple_of(k) {
            return false;
        }
        k += 1;
    }
    true
}

/// Distinct prime factors in increasing order.
pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut k = 2;
    while k * k <= n {
        if n.is_multiple_of(k) {
            out.push(k);
            while n.is_multiple_of(k) {
                n /= k;
            }
        }
        k += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Trial division against every monic polynomial of degree `1..=deg/2`.
/// Returns a monic factor when one exists.
pub(crate) fn find_factor(f: &[u32], p: u32) -> Option<Vec<u32>> {
    let d = degree(f)?;
    for k in 1..=d / 2 {
        let count = (p as u64).pow(k as u32);
        for code in 0..count {
            let mut cand = Vec::with_capacity(k + 1);
            let mut c = code;
            for _ in 0..k {
                cand.push((c % p as u64) as u32);
                c /= p as u64;
            }
            cand.push(1);
            if rem_monic(f, &cand, p).is_empty() {
                return Some(cand);
            }
        }
    }
    None
}

/// Parses the comma-separated ascending coefficient form, e.g. `"1,1,1"` for
/// `1 + t + t^2`. Coefficients may be negative and are reduced mod `p`.
pub fn parse_coefficients(text: &str) -> Result<Vec<i64>, FieldError> {
    let trimmed = text.trim();
    if trimmed.is_empty() {
        return Err(FieldError::Parse("empty polynomial".into()));
    }
    trimmed
        .split(',')
        .map(|tok| {
            tok.trim()
                .parse::<i64>()
                .map_err(|_| FieldError::Parse(format!("bad coefficient {:?}", tok.trim())))
        })
        .collect()
}

pub(crate) fn reduce_coefficients(coeffs: &[i64], p: u32) -> Vec<u32> {
    coeffs
        .iter()
        .map(|&c| c.rem_euclid(p as i64) as u32)
        .collect()
}

/// Human-readable form such as `t^2+t+2`.
pub(crate) fn format(poly: &[u32]) -> String {
    let mut terms = Vec::new();
    for (i, &c) in poly.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let term = match (i, c) {
            (0, c) => c.to_string(),
            (1, 1) => "t".to_string(),
            (1, c) => format!("{c}t"),
            (i, 1) => format!("t^{i}"),
            (i, c) => format!("{c}t^{i}"),
        };
        terms.push(term);
    }
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join("+")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduction_mod_monic() {
        // t^2 mod (t^2+t+1) over Z_2 is t+1
        assert_eq!(rem_monic(&[0, 0, 1], &[1, 1, 1], 2), vec![1, 1]);
        assert_eq!(rem_monic(&[1], &[1, 1, 1], 2), vec![1]);
    }

    #[test]
    fn factor_search() {
        assert_eq!(find_factor(&[1, 0, 1], 2), Some(vec![1, 1]));
        assert_eq!(find_factor(&[1, 1, 1], 2), None);
        assert_eq!(find_factor(&[2, 1, 1], 3), None);
        assert_eq!(find_factor(&[1, 2, 1, 2, 1], 3), None);
    }

    #[test]
    fn primes_and_factors() {
        assert!(is_prime(2) && is_prime(3) && is_prime(97));
        assert!(!is_prime(1) && !is_prime(9) && !is_prime(0));
        assert_eq!(prime_factors(80), vec![2, 5]);
        assert_eq!(prime_factors(24), vec![2, 3]);
    }

    #[test]
    fn text_forms() {
        assert_eq!(parse_coefficients("1, 1,1").unwrap(), vec![1, 1, 1]);
        assert_eq!(parse_coefficients("-1,2").unwrap(), vec![-1, 2]);
        assert!(parse_coefficients("1,x").is_err());
        assert!(parse_coefficients("").is_err());
        assert_eq!(format(&[2, 1, 1]), "t^2+t+2");
        assert_eq!(format(&[]), "0");
    }
}
