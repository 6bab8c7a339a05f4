use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::IntPoly;
use crate::error::{Error, Result};

/// Determinant of a square integer matrix by fraction-free Bareiss
/// elimination with row pivoting.
pub fn det_bareiss(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// Sylvester matrix of `a` (formal degree `da`) and `b` (formal degree `db`).
fn sylvester(a: &[BigInt], da: usize, b: &[BigInt], db: usize) -> Vec<Vec<BigInt>> {
    let n = da + db;
    let mut m = vec![vec![BigInt::zero(); n]; n];
    let get = |v: &[BigInt], i: usize| v.get(i).cloned().unwrap_or_default();
    for r in 0..db {
        for k in 0..=da {
            m[r][r + k] = get(a, da - k);
        }
    }
    for r in 0..da {
        for k in 0..=db {
            m[db + r][r + k] = get(b, db - k);
        }
    }
    m
}

/// Resultant of two nonzero integer polynomials (Sylvester determinant).
pub fn resultant(a: &IntPoly, b: &IntPoly) -> BigInt {
    assert!(!a.is_zero() && !b.is_zero(), "resultant of the zero polynomial");
    let (da, db) = (a.degree(), b.degree());
    if da == 0 && db == 0 {
        return BigInt::one();
    }
    det_bareiss(sylvester(a.coeffs(), da, b.coeffs(), db))
}

/// Discriminant `(-1)^(d(d-1)/2) Res(p, p') / lc(p)`.
pub fn discriminant(p: &IntPoly) -> BigInt {
    let d = p.degree();
    if d <= 1 {
        return BigInt::one();
    }
    let r = resultant(p, &p.derivative()) / p.lc();
    if (d * (d - 1) / 2) % 2 == 1 {
        -r
    } else {
        r
    }
}

/// Polynomial in `y` whose coefficients are polynomials in `x`:
/// `coeffs[k]` multiplies `y^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiPoly {
    pub coeffs: Vec<IntPoly>,
}

impl BiPoly {
    pub fn new(mut coeffs: Vec<IntPoly>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        BiPoly { coeffs }
    }

    /// `p(y)`, constant in `x`.
    pub fn in_y(p: &IntPoly) -> Self {
        Self::new(p.coeffs().iter().map(|c| IntPoly::constant(c.clone())).collect())
    }

    /// `p(x y)`.
    pub fn dilate(p: &IntPoly) -> Self {
        Self::new(p.coeffs().iter().enumerate().map(|(k, c)| IntPoly::monomial(c.clone(), k)).collect())
    }

    /// `y^d p(x / y)`.
    pub fn homogenize(p: &IntPoly) -> Self {
        let d = p.degree();
        let mut v = vec![IntPoly::zero(); d + 1];
        for (k, c) in p.coeffs().iter().enumerate() {
            v[d - k] = IntPoly::monomial(c.clone(), k);
        }
        Self::new(v)
    }

    /// `p(x - y)`.
    pub fn shifted(p: &IntPoly) -> Self {
        let d = p.degree();
        let mut v = vec![IntPoly::zero(); d + 1];
        for (k, c) in p.coeffs().iter().enumerate() {
            // c (x - y)^k = c sum_j C(k,j) x^(k-j) (-y)^j
            let mut binom = BigInt::one();
            for j in 0..=k {
                let mut t = c * &binom;
                if j % 2 == 1 {
                    t = -t;
                }
                v[j] = &v[j] + &IntPoly::monomial(t, k - j);
                binom = binom * BigInt::from(k - j) / BigInt::from(j + 1);
            }
        }
        Self::new(v)
    }

    pub fn degree_y(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn degree_x(&self) -> usize {
        self.coeffs.iter().map(|c| c.degree()).max().unwrap_or(0)
    }

    fn eval_x(&self, x: &BigInt) -> Vec<BigInt> {
        self.coeffs.iter().map(|c| c.eval_int(x)).collect()
    }
}

/// `Res_y(a, b)` as a polynomial in `x`, by evaluation at `x = 0..D` and
/// interpolation.
pub fn resultant_y(a: &BiPoly, b: &BiPoly) -> Result<IntPoly> {
    let (da, db) = (a.degree_y(), b.degree_y());
    if a.coeffs.is_empty() || b.coeffs.is_empty() {
        return Err(Error::invalid("resultant of the zero polynomial"));
    }
    let bound = db * a.degree_x() + da * b.degree_x();
    let values: Vec<BigInt> = (0..=bound)
        .map(|x0| {
            let x0 = BigInt::from(x0);
            let av = a.eval_x(&x0);
            let bv = b.eval_x(&x0);
            if da == 0 && db == 0 {
                BigInt::one()
            } else {
                det_bareiss(sylvester(&av, da, &bv, db))
            }
        })
        .collect();
    interpolate_consecutive(&values)
}

/// Integer polynomial of degree `< n` taking `values[i]` at `x = i`.
pub fn interpolate_consecutive(values: &[BigInt]) -> Result<IntPoly> {
    // forward differences give Newton coefficients in the binomial basis
    let n = values.len();
    let mut diffs = values.to_vec();
    let mut newton = Vec::with_capacity(n);
    for k in 0..n {
        newton.push(diffs[0].clone());
        for i in 0..n - k - 1 {
            diffs[i] = &diffs[i + 1] - &diffs[i];
        }
    }
    // sum newton[k] * x(x-1)...(x-k+1) / k!
    let mut acc = vec![BigRational::zero(); n];
    let mut falling = vec![BigInt::one()];
    let mut fact = BigInt::one();
    for (k, dk) in newton.iter().enumerate() {
        if k > 0 {
            fact *= BigInt::from(k);
        }
        if !dk.is_zero() {
            let scale = BigRational::new(dk.clone(), fact.clone());
            for (i, c) in falling.iter().enumerate() {
                acc[i] += &scale * BigRational::from_integer(c.clone());
            }
        }
        // falling *= (x - k)
        let mut next = vec![BigInt::zero(); falling.len() + 1];
        for (i, c) in falling.iter().enumerate() {
            next[i + 1] += c;
            next[i] -= c * BigInt::from(k);
        }
        falling = next;
    }
    let mut out = Vec::with_capacity(n);
    for c in acc {
        if !c.is_integer() {
            return Err(Error::invalid("interpolated resultant is not integral"));
        }
        out.push(c.to_integer());
    }
    Ok(IntPoly::new(out))
}

/// Integer polynomial `lc^n prod (x - r_i^n)` over the roots `r_i` of `p`,
/// via Newton power sums.
pub fn power_charpoly(p: &IntPoly, n: u32) -> IntPoly {
    let d = p.degree();
    assert!(d >= 1, "power_charpoly of a constant");
    if n == 1 {
        return p.clone();
    }
    let lc = BigRational::from_integer(p.lc());
    // e_k of the roots: e_k = (-1)^k c_{d-k} / c_d
    let e: Vec<BigRational> = (0..=d)
        .map(|k| {
            let v = BigRational::from_integer(p.coeff(d - k)) / &lc;
            if k % 2 == 1 {
                -v
            } else {
                v
            }
        })
        .collect();
    let total = d * n as usize;
    // Newton: s_j = sum_{i=1}^{j-1} (-1)^(i-1) e_i s_{j-i} + (-1)^(j-1) j e_j
    let mut s = vec![BigRational::zero(); total + 1];
    s[0] = BigRational::from_integer(BigInt::from(d));
    for j in 1..=total {
        let mut acc = BigRational::zero();
        for i in 1..=j.min(d) {
            let term = &e[i] * if i == j { BigRational::from_integer(BigInt::from(j)) } else { s[j - i].clone() };
            if i % 2 == 1 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        s[j] = acc;
    }
    // power sums of the r_i^n and back to elementary symmetric functions
    let t: Vec<BigRational> = (0..=d).map(|i| s[i * n as usize].clone()).collect();
    let mut f = vec![BigRational::zero(); d + 1];
    f[0] = BigRational::one();
    for k in 1..=d {
        let mut acc = BigRational::zero();
        for i in 1..=k {
            let term = &f[k - i] * &t[i];
            if i % 2 == 1 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        f[k] = acc / BigRational::from_integer(BigInt::from(k));
    }
    let scale = BigRational::from_integer(num_traits::pow(p.lc(), n as usize));
    let mut coeffs = vec![BigInt::zero(); d + 1];
    for (k, fk) in f.iter().enumerate() {
        let v = fk * &scale;
        debug_assert!(v.is_integer());
        let v = v.to_integer();
        coeffs[d - k] = if k % 2 == 1 { -v } else { v };
    }
    IntPoly::new(coeffs)
}

/// `lcm` of a list of integers (1 for an empty list).
pub fn lcm_all<'a>(it: impl IntoIterator<Item = &'a BigInt>) -> BigInt {
    it.into_iter().fold(BigInt::one(), |acc, v| acc.lcm(&v.abs()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn bareiss_small() {
        let m = vec![
            vec![BigInt::from(0), BigInt::from(2), BigInt::from(1)],
            vec![BigInt::from(1), BigInt::from(1), BigInt::from(1)],
            vec![BigInt::from(3), BigInt::from(0), BigInt::from(2)],
        ];
        // det = 0*(2-0) - 2*(2-3) + 1*(0-3) = -1
        assert_eq!(det_bareiss(m), BigInt::from(-1));
    }

    #[test]
    fn resultant_known_values() {
        // Res(x^2 - 2, x - 1) = (1)^2 - 2 up to sign convention
        assert_eq!(resultant(&p(&[-2, 0, 1]), &p(&[-1, 1])).abs(), BigInt::from(1));
        assert_eq!(resultant(&p(&[-1, 0, 1]), &p(&[1, 1])), BigInt::zero());
        assert_eq!(discriminant(&p(&[-1, -1, 1])), BigInt::from(5));
        assert_eq!(discriminant(&p(&[-1, -1, 0, 1])), BigInt::from(-23));
    }

    #[test]
    fn bivariate_resultant_examples() {
        // x - y^2 as a polynomial in y
        let x_minus_y2 = BiPoly::new(vec![p(&[0, 1]), IntPoly::zero(), p(&[-1])]);
        let r = resultant_y(&BiPoly::in_y(&p(&[-2, 0, 1])), &x_minus_y2).unwrap();
        assert_eq!(r.primitive_part(), p(&[4, -4, 1]));
        let r = resultant_y(&BiPoly::in_y(&p(&[-1, -1, 1])), &x_minus_y2).unwrap();
        assert_eq!(r.primitive_part(), p(&[1, -3, 1]));
        let x_minus_2y = BiPoly::new(vec![p(&[0, 1]), p(&[-2])]);
        let r = resultant_y(&BiPoly::in_y(&p(&[-3, 1])), &x_minus_2y).unwrap();
        assert_eq!(r.primitive_part(), p(&[-6, 1]));
    }

    #[test]
    fn power_charpoly_matches_resultant() {
        for (poly, n) in [(p(&[-1, -1, 1]), 2u32), (p(&[-7, -4, 4]), 3), (p(&[-1, -1, 0, 1]), 5), (p(&[1, 0, 1]), 4)] {
            let mut xy = vec![IntPoly::zero(); n as usize + 1];
            xy[0] = p(&[0, 1]);
            xy[n as usize] = p(&[-1]);
            let via_res = resultant_y(&BiPoly::in_y(&poly), &BiPoly::new(xy)).unwrap();
            let direct = power_charpoly(&poly, n);
            assert_eq!(via_res.primitive_part(), direct.primitive_part(), "{poly} ^ {n}");
        }
    }

    #[test]
    fn interpolation_recovers_polynomial() {
        let q = p(&[3, -1, 0, 2, -5]);
        let vals: Vec<BigInt> = (0..6).map(|x| q.eval_int(&BigInt::from(x))).collect();
        assert_eq!(interpolate_consecutive(&vals).unwrap(), q);
    }
}
