//! Rational generating functions `Σ dim Ext^p (-t)^p`.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Field, Q};

/// Dense polynomial over `Q`, lowest degree first, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Poly(Vec<Q>);

impl Poly {
    pub(crate) fn new(mut c: Vec<Q>) -> Self {
        while c.last().is_some_and(Q::is_zero) {
            c.pop();
        }
        Poly(c)
    }

    pub(crate) fn from_ints(c: &[i64]) -> Self {
        Poly::new(c.iter().map(|&x| Q::int(x)).collect())
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    fn lead(&self) -> Q {
        self.0.last().cloned().unwrap_or_else(Q::zero)
    }

    pub(crate) fn add(&self, o: &Poly) -> Poly {
        let len = self.0.len().max(o.0.len());
        Poly::new(
            (0..len)
                .map(|i| self.coeff(i) + o.coeff(i))
                .collect(),
        )
    }

    pub(crate) fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly(vec![]);
        }
        let mut c = vec![Q::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                c[i + j] = c[i + j].clone() + a * b;
            }
        }
        Poly::new(c)
    }

    fn scale(&self, s: &Q) -> Poly {
        Poly::new(self.0.iter().map(|c| c * s).collect())
    }

    fn coeff(&self, i: usize) -> Q {
        self.0.get(i).cloned().unwrap_or_else(Q::zero)
    }

    fn divrem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let mut r = self.clone();
        let mut q = vec![Q::zero(); self.0.len().max(1)];
        let inv = d.lead().inv();
        while !r.is_zero() && r.degree() >= d.degree() {
            let shift = r.degree() - d.degree();
            let f = r.lead() * inv.clone();
            q[shift] = f.clone();
            let mut sub = vec![Q::zero(); shift];
            sub.extend(d.0.iter().map(|c| -(c * &f)));
            r = r.add(&Poly::new(sub));
        }
        (Poly::new(q), r)
    }

    fn gcd(&self, o: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r;
        }
        let l = a.lead();
        if l.is_zero() { a } else { a.scale(&l.inv()) }
    }

    pub(crate) fn eval(&self, x: &Q) -> Q {
        self.0
            .iter()
            .rev()
            .fold(Q::zero(), |acc, c| acc * x.clone() + c.clone())
    }
}

/// `numerator / denominator` in lowest terms with `denominator(0) = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct EulerSeries {
    pub numerator: Vec<i64>,
    pub denominator: Vec<i64>,
}

impl EulerSeries {
    pub fn polynomial(coeffs: &[i64]) -> Self {
        Self::from_polys(Poly::from_ints(coeffs), Poly::from_ints(&[1]))
    }

    pub fn rational(numerator: &[i64], denominator: &[i64]) -> Self {
        Self::from_polys(Poly::from_ints(numerator), Poly::from_ints(denominator))
    }

    /// The series `Σ_p e_p (-t)^p` where `e_p` for `p >= start` repeats
    /// `periodic` forever; without a periodic part the sum is finite.
    pub fn from_ext_dims(head: &[usize], periodic: Option<&[usize]>) -> Self {
        let signed = |p: usize, e: usize| {
            let e = e as i64;
            if p.is_multiple_of(2) { e } else { -e }
        };
        let head_poly: Vec<i64> = head.iter().enumerate().map(|(p, &e)| signed(p, e)).collect();
        let Some(period) = periodic.filter(|p| !p.is_empty()) else {
            return Self::polynomial(&head_poly);
        };
        let start = head.len();
        let len = period.len();
        // 1 - (-t)^len
        let mut cycle = vec![0i64; len + 1];
        cycle[0] = 1;
        cycle[len] = if len % 2 == 0 { -1 } else { 1 };
        let mut tail = vec![0i64; start + len];
        for (r, &e) in period.iter().enumerate() {
            tail[start + r] = signed(start + r, e);
        }
        let cycle = Poly::from_ints(&cycle);
        let num = Poly::from_ints(&head_poly).mul(&cycle).add(&Poly::from_ints(&tail));
        Self::from_polys(num, cycle)
    }

    fn from_polys(num: Poly, den: Poly) -> Self {
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.is_zero() || g.degree() == 0 {
            (num, den)
        } else {
            (num.divrem(&g).0, den.divrem(&g).0)
        };
        if num.is_zero() {
            den = Poly::from_ints(&[1]);
        }
        let c0 = den.coeff(0);
        assert!(!c0.is_zero(), "denominator vanishes at t = 0");
        let s = c0.inv();
        num = num.scale(&s);
        den = den.scale(&s);
        let to_ints = |p: &Poly| -> Vec<i64> {
            p.0.iter()
                .map(|c| {
                    i64::try_from(c.to_integer().expect("integral coefficients after normalization"))
                        .expect("coefficient fits in i64")
                })
                .collect()
        };
        EulerSeries {
            numerator: to_ints(&num),
            denominator: to_ints(&den),
        }
    }

    pub fn is_polynomial(&self) -> bool {
        self.denominator == [1]
    }

    pub fn value_at_one(&self) -> Option<Q> {
        let one = Q::one();
        let d = Poly::from_ints(&self.denominator).eval(&one);
        if d.is_zero() {
            return None;
        }
        Some(Poly::from_ints(&self.numerator).eval(&one) * d.inv())
    }

    /// Value at `t = 1`, as an error naming the pair when there is a pole.
    pub fn value_at_one_for(&self, m: &str, n: &str) -> Result<Q> {
        self.value_at_one()
            .ok_or_else(|| Error::PoleAtOne(m.to_string(), n.to_string()))
    }

    /// Coefficient of `t^p` in the power-series expansion.
    pub fn series_coeff(&self, p: usize) -> i64 {
        let mut c: Vec<i64> = Vec::with_capacity(p + 1);
        for k in 0..=p {
            let mut v = self.numerator.get(k).copied().unwrap_or(0);
            for i in 1..=k.min(self.denominator.len().saturating_sub(1)) {
                v -= self.denominator[i] * c[k - i];
            }
            c.push(v);
        }
        c[p]
    }

    pub fn to_latex(&self) -> String {
        let num = poly_string(&self.numerator);
        if self.is_polynomial() {
            return num;
        }
        let den = poly_string(&self.denominator);
        match num.strip_prefix('-') {
            Some(rest) if !rest.contains(['+', '-']) => format!("-\\frac{{{rest}}}{{{den}}}"),
            _ => format!("\\frac{{{num}}}{{{den}}}"),
        }
    }
}

fn poly_string(c: &[i64]) -> String {
    let mut s = String::new();
    for (p, &a) in c.iter().enumerate() {
        if a == 0 {
            continue;
        }
        let sign = if a < 0 { "-" } else if s.is_empty() { "" } else { "+" };
        let mag = a.unsigned_abs();
        let var = match p {
            0 => String::new(),
            1 => "t".to_string(),
            _ => format!("t^{p}"),
        };
        let body = match (mag, p) {
            (_, 0) => mag.to_string(),
            (1, _) => var,
            _ => format!("{mag}{var}"),
        };
        s.push_str(sign);
        s.push_str(&body);
    }
    if s.is_empty() {
        "0".into()
    } else {
        s
    }
}

impl fmt::Display for EulerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = poly_string(&self.numerator);
        if self.is_polynomial() {
            write!(f, "{num}")
        } else {
            let terms = self.numerator.iter().filter(|&&c| c != 0).count();
            let num = if terms > 1 { format!("({num})") } else { num };
            write!(f, "{num}/({})", poly_string(&self.denominator))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn geometric_series() {
        let s = EulerSeries::from_ext_dims(&[], Some(&[1]));
        assert_eq!(s, EulerSeries::rational(&[1], &[1, 1]));
        assert_eq!(s.to_string(), "1/(1+t)");
        assert_eq!(s.value_at_one(), Some(Q::new(1, 2)));
        let s = EulerSeries::from_ext_dims(&[0], Some(&[1]));
        assert_eq!(s, EulerSeries::rational(&[0, -1], &[1, 1]));
        assert_eq!(s.to_string(), "-t/(1+t)");
        assert_eq!(s.value_at_one(), Some(Q::new(-1, 2)));
    }

    #[test]
    fn finite_and_reducible() {
        assert_eq!(EulerSeries::from_ext_dims(&[1, 1], None).to_string(), "1-t");
        assert_eq!(EulerSeries::from_ext_dims(&[0, 2], None).to_string(), "-2t");
        // 1, 1, 1, ... written with period 2 reduces to 1/(1+t)
        let s = EulerSeries::from_ext_dims(&[1], Some(&[1, 1]));
        assert_eq!(s, EulerSeries::rational(&[1], &[1, 1]));
        assert_eq!(EulerSeries::from_ext_dims(&[], Some(&[0])), EulerSeries::polynomial(&[]));
    }

    #[test]
    fn expansion_round_trips() {
        let dims = [2usize, 0, 1, 3, 1, 3, 1, 3];
        let s = EulerSeries::from_ext_dims(&dims[..2], Some(&dims[2..4]));
        for (p, &e) in dims.iter().enumerate() {
            let sign = if p % 2 == 0 { 1 } else { -1 };
            assert_eq!(s.series_coeff(p), sign * e as i64, "p={p}");
        }
    }

    #[test]
    fn pole_is_detected() {
        // 1 + t^2 + t^4 + ... has a pole at 1
        let s = EulerSeries::from_ext_dims(&[], Some(&[1, 0]));
        assert_eq!(s.value_at_one(), None);
        assert!(matches!(s.value_at_one_for("M", "N"), Err(Error::PoleAtOne(..))));
    }

    #[test]
    fn latex() {
        assert_eq!(EulerSeries::rational(&[1], &[1, 1]).to_latex(), "\\frac{1}{1+t}");
        assert_eq!(EulerSeries::rational(&[0, -1], &[1, 1]).to_latex(), "-\\frac{t}{1+t}");
        assert_eq!(EulerSeries::polynomial(&[2, -1]).to_latex(), "2-t");
    }
}
