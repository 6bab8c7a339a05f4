use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::poly::IntPoly;

/// Euler's totient.
pub fn euler_phi(mut m: u64) -> u64 {
    let mut result = m;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

pub fn divisors(m: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= m {
        if m.is_multiple_of(d) {
            small.push(d);
            if d * d != m {
                large.push(m / d);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

fn prime_factors(mut m: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            out.push(p);
            while m.is_multiple_of(p) {
                m /= p;
            }
        }
        p += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

/// The `m`-th cyclotomic polynomial, from `Φ_m = prod_{d|m} (x^d - 1)^μ(m/d)`
/// applied to the radical of `m`, then `Φ_m(x) = Φ_rad(x^(m/rad))`.
pub fn cyclotomic(m: u64) -> IntPoly {
    assert!(m >= 1, "cyclotomic index must be positive");
    let primes = prime_factors(m);
    let rad: u64 = primes.iter().product();
    let mut num: Vec<BigInt> = vec![BigInt::one()];
    let mut dens = Vec::new();
    for mask in 0u32..(1 << primes.len()) {
        // d = rad / prod(chosen primes); μ(rad/d) = (-1)^popcount
        let chosen: u64 = (0..primes.len()).filter(|&i| mask >> i & 1 == 1).map(|i| primes[i]).product();
        let d = (rad / chosen) as usize;
        if mask.count_ones() % 2 == 0 {
            let mut next = vec![BigInt::zero(); num.len() + d];
            for (i, c) in num.iter().enumerate() {
                next[i + d] += c;
                next[i] -= c;
            }
            num = next;
        } else {
            dens.push(d);
        }
    }
    for d in dens {
        // exact division by x^d - 1
        let n = num.len() - 1;
        let mut q = vec![BigInt::zero(); n - d + 1];
        for i in (0..=n - d).rev() {
            let above = if i + d <= n - d { q[i + d].clone() } else { BigInt::zero() };
            q[i] = &num[i + d] + above;
        }
        num = q;
    }
    let s = (m / rad) as usize;
    let mut out = vec![BigInt::zero(); (num.len() - 1) * s + 1];
    for (i, c) in num.into_iter().enumerate() {
        out[i * s] = c;
    }
    IntPoly::new(out)
}

/// All `m` with `φ(m) = d`.
pub fn indices_with_phi(d: u64) -> Vec<u64> {
    // φ(m) >= sqrt(m/2), so m <= 2 d^2
    let bound = 2 * d * d + 2;
    (1..=bound).filter(|&m| euler_phi(m) == d).collect()
}

/// All `m` with `φ(m) <= d`, ascending.
pub fn indices_with_phi_at_most(d: u64) -> Vec<u64> {
    let bound = 2 * d * d + 2;
    (1..=bound).filter(|&m| euler_phi(m) <= d).collect()
}

/// `Some(m)` if `p` (primitive, positive leading coefficient) equals `Φ_m`.
pub fn cyclotomic_index(p: &IntPoly) -> Option<u64> {
    if !p.is_monic() || p.degree() == 0 {
        return None;
    }
    let d = p.degree() as u64;
    if d > 1 && !p.is_self_reciprocal() {
        return None;
    }
    indices_with_phi(d).into_iter().find(|&m| cyclotomic(m) == *p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomics() {
        assert_eq!(cyclotomic(1), IntPoly::from_i64s(&[-1, 1]));
        assert_eq!(cyclotomic(4), IntPoly::from_i64s(&[1, 0, 1]));
        assert_eq!(cyclotomic(12), IntPoly::from_i64s(&[1, 0, -1, 0, 1]));
        assert_eq!(cyclotomic(5), IntPoly::from_i64s(&[1, 1, 1, 1, 1]));
    }

    #[test]
    fn cyclotomic_divides_and_has_phi_degree() {
        for m in 1..=60u64 {
            let c = cyclotomic(m);
            assert_eq!(c.degree() as u64, euler_phi(m));
            let xm1 = &IntPoly::monomial(BigInt::one(), m as usize) - &IntPoly::one();
            assert!(xm1.div_exact(&c).is_ok());
        }
    }

    #[test]
    fn index_recovery() {
        for m in 1..=40u64 {
            assert_eq!(cyclotomic_index(&cyclotomic(m)), Some(m));
        }
        assert_eq!(cyclotomic_index(&IntPoly::from_i64s(&[-1, -1, 1])), None);
        assert_eq!(cyclotomic_index(&IntPoly::from_i64s(&[1, 1])), Some(2));
    }
}
