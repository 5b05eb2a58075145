use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::Rational;
use crate::graphs::{Edge, Graph};

/// Exponent vector, one slot per variable.
pub type Exponents = Vec<u32>;

/// A polynomial with integer coefficients in variables `x_0 … x_{k-1}`,
/// where `x_i` stands for the `i`-th edge of a pattern graph in sorted edge
/// order. Terms are kept in lexicographic exponent order and zero
/// coefficients are never stored, so structural equality is polynomial
/// equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct EdgePolynomial {
    nvars: usize,
    terms: BTreeMap<Exponents, BigInt>,
}

/// The single term of a monomial polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Monomial {
    pub coefficient: BigInt,
    pub exponents: Exponents,
}

impl Monomial {
    /// Exponents keyed by the pattern edges they belong to (zero exponents
    /// omitted).
    pub fn edge_exponents(&self, pattern: &Graph) -> BTreeMap<Edge, u32> {
        pattern
            .edges()
            .zip(&self.exponents)
            .filter(|(_, &k)| k > 0)
            .map(|(e, &k)| (e, k))
            .collect()
    }

    /// Variables carrying an odd exponent.
    pub fn odd_variables(&self) -> Vec<usize> {
        (0..self.exponents.len())
            .filter(|&i| self.exponents[i] % 2 == 1)
            .collect()
    }
}

impl EdgePolynomial {
    pub fn zero(nvars: usize) -> Self {
        EdgePolynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: impl Into<BigInt>) -> Self {
        let mut p = EdgePolynomial::zero(nvars);
        p.add_term(vec![0; nvars], c.into());
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars);
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = EdgePolynomial::zero(nvars);
        p.add_term(e, BigInt::one());
        p
    }

    /// Builds from `(coefficient, exponents)` pairs, combining like terms.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, Exponents)>,
    {
        let mut p = EdgePolynomial::zero(nvars);
        for (c, e) in terms {
            assert_eq!(e.len(), nvars);
            p.add_term(e, c.into());
        }
        p
    }

    pub(crate) fn add_term(&mut self, e: Exponents, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &BigInt)> {
        self.terms.iter()
    }

    /// `Some` iff the polynomial has exactly one term.
    pub fn is_monomial(&self) -> Option<Monomial> {
        if self.terms.len() != 1 {
            return None;
        }
        let (e, c) = self.terms.iter().next().unwrap();
        Some(Monomial {
            coefficient: c.clone(),
            exponents: e.clone(),
        })
    }

    pub fn evaluate(&self, values: &[Rational]) -> Rational {
        assert_eq!(values.len(), self.nvars);
        let mut total = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = Rational::from_integer(c.clone());
            for (x, &k) in values.iter().zip(e) {
                if k > 0 {
                    t *= num_traits::pow(x.clone(), k as usize);
                }
            }
            total += t;
        }
        total
    }

    fn leading(&self) -> Option<(&Exponents, &BigInt)> {
        self.terms.iter().next_back()
    }

    /// Exact division; `None` if `divisor` does not divide `self` over ℤ.
    ///
    /// Plain multivariate division by leading terms in lex order: when the
    /// division is exact the remainder reaches zero.
    pub fn div_exact(&self, divisor: &EdgePolynomial) -> Option<EdgePolynomial> {
        assert_eq!(self.nvars, divisor.nvars);
        let (de, dc) = divisor.leading()?;
        let mut rem = self.clone();
        let mut quot = EdgePolynomial::zero(self.nvars);
        while let Some((re, rc)) = rem.leading() {
            if re.iter().zip(de).any(|(a, b)| a < b) {
                return None;
            }
            let (qc, r) = rc.div_rem(dc);
            if !r.is_zero() {
                return None;
            }
            let qe: Exponents = re.iter().zip(de).map(|(a, b)| a - b).collect();
            let mut step = EdgePolynomial::zero(self.nvars);
            step.add_term(qe, qc);
            rem = &rem - &(&step * divisor);
            quot = &quot + &step;
        }
        Some(quot)
    }

    fn var_name(i: usize) -> String {
        if i < 26 {
            ((b'a' + i as u8) as char).to_string()
        } else {
            format!("x{i}")
        }
    }
}

impl fmt::Display for EdgePolynomial {
    /// `2*a*b*c*g^2*h^2`; letters follow sorted edge order, terms go from
    /// the lex-largest down.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (e, c)) in self.terms.iter().rev().enumerate() {
            let factors: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| {
                    let v = EdgePolynomial::var_name(i);
                    if k == 1 {
                        v
                    } else {
                        format!("{v}^{k}")
                    }
                })
                .collect();
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            if n == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            match (mag.is_one(), factors.is_empty()) {
                (_, true) => write!(f, "{mag}")?,
                (true, false) => write!(f, "{}", factors.join("*"))?,
                (false, false) => write!(f, "{mag}*{}", factors.join("*"))?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for EdgePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "EdgePolynomial({self})")
    }
}

impl Add for &EdgePolynomial {
    type Output = EdgePolynomial;
    fn add(self, rhs: &EdgePolynomial) -> EdgePolynomial {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &EdgePolynomial {
    type Output = EdgePolynomial;
    fn sub(self, rhs: &EdgePolynomial) -> EdgePolynomial {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }
}

impl Neg for &EdgePolynomial {
    type Output = EdgePolynomial;
    fn neg(self) -> EdgePolynomial {
        EdgePolynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl Mul for &EdgePolynomial {
    type Output = EdgePolynomial;
    fn mul(self, rhs: &EdgePolynomial) -> EdgePolynomial {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = EdgePolynomial::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(nvars: usize, terms: &[(i64, &[u32])]) -> EdgePolynomial {
        EdgePolynomial::from_terms(nvars, terms.iter().map(|(c, e)| (*c, e.to_vec())))
    }

    #[test]
    fn monomial_detection() {
        let g1 = p(8, &[(2, &[1, 1, 1, 0, 0, 0, 2, 2])]);
        let m = g1.is_monomial().unwrap();
        assert_eq!(m.coefficient, BigInt::from(2));
        assert_eq!(m.odd_variables(), vec![0, 1, 2]);
        assert_eq!(g1.to_string(), "2*a*b*c*g^2*h^2");

        let mixed = p(3, &[(1, &[2, 0, 0]), (-1, &[0, 1, 1])]);
        assert!(mixed.is_monomial().is_none());
        assert_eq!(mixed.to_string(), "a^2 - b*c");
        assert!(EdgePolynomial::zero(2).is_monomial().is_none());
    }

    #[test]
    fn like_terms_cancel() {
        let x = EdgePolynomial::var(2, 0);
        assert!((&x - &x).is_zero());
        assert_eq!((&x - &x).term_count(), 0);
    }

    #[test]
    fn exact_division() {
        let a = EdgePolynomial::var(2, 0);
        let b = EdgePolynomial::var(2, 1);
        let one = EdgePolynomial::constant(2, 1);
        let f = &(&a + &b) * &(&a - &b);
        assert_eq!(f.div_exact(&(&a + &b)).unwrap(), &a - &b);
        assert!(f.div_exact(&(&a + &one)).is_none());
        let two = EdgePolynomial::constant(2, 2);
        assert!(a.div_exact(&two).is_none());
    }

    #[test]
    fn evaluation() {
        let f = p(2, &[(3, &[2, 0]), (-1, &[0, 1])]);
        let v = [Rational::new(1.into(), 2.into()), Rational::from_integer(2.into())];
        assert_eq!(f.evaluate(&v), Rational::new((-5).into(), 4.into()));
    }
}
