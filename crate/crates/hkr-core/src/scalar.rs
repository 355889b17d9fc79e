//! Exact rational scalars and the small combinatorial helpers used everywhere.

use num::{BigInt, BigRational, One, Signed, Zero};

pub type Scalar = BigRational;

pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

pub fn frac(p: i64, q: i64) -> Scalar {
    Scalar::new(BigInt::from(p), BigInt::from(q))
}

pub fn from_bigint(n: BigInt) -> Scalar {
    Scalar::from_integer(n)
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// `∫₀¹ t^m (1-t)^s dt = m! s! / (m+s+1)!`
pub fn beta_integral(m: usize, s: usize) -> Scalar {
    Scalar::new(factorial(m) * factorial(s), factorial(m + s + 1))
}

/// Sign of a permutation given as a slice of distinct comparable items.
pub fn permutation_sign<T: Ord>(items: &[T]) -> i64 {
    let mut inversions = 0usize;
    for i in 0..items.len() {
        for j in i + 1..items.len() {
            if items[i] > items[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Accepts `p/q` or `p`, with optional sign. Zero denominators are rejected.
pub fn parse_scalar(text: &str) -> Result<Scalar, String> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (text, "1"),
    };
    let p: BigInt = num
        .parse()
        .map_err(|_| format!("malformed numerator {num:?}"))?;
    let q: BigInt = den
        .parse()
        .map_err(|_| format!("malformed denominator {den:?}"))?;
    if q.is_zero() {
        return Err(format!("zero denominator in {text:?}"));
    }
    Ok(Scalar::new(p, q))
}

pub fn format_scalar(c: &Scalar) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

pub fn abs(c: &Scalar) -> Scalar {
    c.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn beta_matches_expansion() {
        // expand (1-t)^s and integrate term by term
        for m in 0..=4 {
            for s in 0..=4 {
                let mut acc = Scalar::zero();
                for j in 0..=s {
                    let sign = if j % 2 == 0 { 1 } else { -1 };
                    acc += from_bigint(binomial(s, j) * sign) / int((m + j + 1) as i64);
                }
                assert_eq!(acc, beta_integral(m, s), "m={m} s={s}");
            }
        }
    }

    #[test]
    fn parse_round_trip() {
        for text in ["3/4", "-2", "0", "10/5"] {
            let c = parse_scalar(text).unwrap();
            assert_eq!(parse_scalar(&format_scalar(&c)).unwrap(), c);
        }
        assert!(parse_scalar("1/0").is_err());
        assert!(parse_scalar("x").is_err());
        assert_eq!(parse_scalar("6/-4").unwrap(), frac(-3, 2));
    }

    #[test]
    fn lowest_terms() {
        let c = parse_scalar("6/4").unwrap();
        assert_eq!(c.numer(), &BigInt::from(3));
        assert_eq!(c.denom(), &BigInt::from(2));
    }

    #[test]
    fn permutation_signs() {
        assert_eq!(permutation_sign(&[1, 2, 3]), 1);
        assert_eq!(permutation_sign(&[2, 1, 3]), -1);
        assert_eq!(permutation_sign(&[3, 1, 2]), 1);
    }
}
