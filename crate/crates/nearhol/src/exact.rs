//! Exact rational scalars and small dense linear algebra over ℚ.
//!
//! All root and weight combinatorics in this crate run on `Rat` to keep
//! spectra and multiplicities exact; floating point is confined to the
//! numerical Jordan-pair and integration modules.

use crate::error::{Error, Result};
use num_rational::Ratio;
use num_traits::Zero;

pub type Rat = Ratio<i64>;

pub fn rat(num: i64, den: i64) -> Rat {
    Ratio::new(num, den)
}

pub fn rint(n: i64) -> Rat {
    Ratio::from_integer(n)
}

pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    assert_eq!(a.len(), b.len(), "dimension mismatch in dot product");
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn add(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(c: Rat, v: &[Rat]) -> Vec<Rat> {
    v.iter().map(|x| c * x).collect()
}

pub fn neg(v: &[Rat]) -> Vec<Rat> {
    v.iter().map(|x| -x).collect()
}

pub fn is_zero_vec(v: &[Rat]) -> bool {
    v.iter().all(|x| x.is_zero())
}

pub fn is_integer(r: &Rat) -> bool {
    r.is_integer()
}

/// Parses an exact rational from `"a"` or `"a/b"`.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let parse_int = |t: &str| -> Result<i64> {
        t.trim()
            .parse::<i64>()
            .map_err(|_| Error::Parameter(format!("invalid rational component `{t}`")))
    };
    match s.split_once('/') {
        None => Ok(rint(parse_int(s)?)),
        Some((n, d)) => {
            let den = parse_int(d)?;
            if den == 0 {
                return Err(Error::Parameter(format!("zero denominator in `{s}`")));
            }
            Ok(rat(parse_int(n)?, den))
        }
    }
}

pub fn fmt_rat(r: &Rat) -> String {
    if r.is_integer() {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Solves the square system `m · x = rhs` by fraction-free Gaussian
/// elimination. Returns `None` when `m` is singular.
pub fn solve_rat(m: &[Vec<Rat>], rhs: &[Rat]) -> Option<Vec<Rat>> {
    let n = m.len();
    assert!(m.iter().all(|row| row.len() == n) && rhs.len() == n);
    let mut a: Vec<Vec<Rat>> = m
        .iter()
        .zip(rhs)
        .map(|(row, r)| {
            let mut row = row.clone();
            row.push(*r);
            row
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&i| !a[i][col].is_zero())?;
        a.swap(col, pivot);
        let p = a[col][col];
        for j in col..=n {
            a[col][j] /= p;
        }
        for i in 0..n {
            if i != col && !a[i][col].is_zero() {
                let f = a[i][col];
                for j in col..=n {
                    let v = a[col][j];
                    a[i][j] -= f * v;
                }
            }
        }
    }
    Some(a.iter().map(|row| row[n]).collect())
}

pub fn rat_to_f64(r: &Rat) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rat("3/4").unwrap(), rat(3, 4));
        assert_eq!(parse_rat("-2").unwrap(), rint(-2));
        assert_eq!(fmt_rat(&rat(6, 4)), "3/2");
        assert_eq!(fmt_rat(&rint(5)), "5");
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
    }

    #[test]
    fn solve_small_system() {
        // (2 1; 1 3) x = (5; 10) -> x = (1, 3)
        let m = vec![vec![rint(2), rint(1)], vec![rint(1), rint(3)]];
        let x = solve_rat(&m, &[rint(5), rint(10)]).unwrap();
        assert_eq!(x, vec![rint(1), rint(3)]);
    }

    #[test]
    fn singular_system_rejected() {
        let m = vec![vec![rint(1), rint(2)], vec![rint(2), rint(4)]];
        assert!(solve_rat(&m, &[rint(1), rint(1)]).is_none());
    }
}
