//! Dense univariate polynomials over `F_{q²}`.

use crate::error::{Error, Result};
use crate::gf::{Elt, FieldTower};

/// Coefficients low to high with no trailing zeros; the zero polynomial is empty.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Elt>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Elt::ONE)
    }

    pub fn constant(c: Elt) -> Self {
        Poly::from_coeffs(vec![c])
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        Poly { coeffs: vec![Elt::ZERO, Elt::ONE] }
    }

    /// `c·x^d`.
    pub fn monomial(c: Elt, d: usize) -> Self {
        let mut coeffs = vec![Elt::ZERO; d + 1];
        coeffs[d] = c;
        Poly::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<Elt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn coeffs(&self) -> &[Elt] {
        &self.coeffs
    }

    /// Coefficient of `x^i` (zero past the degree).
    pub fn coeff(&self, i: usize) -> Elt {
        self.coeffs.get(i).copied().unwrap_or(Elt::ZERO)
    }

    /// `None` stands for the degree −∞ of the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<Elt> {
        self.coeffs.last().copied()
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == Some(Elt::ONE)
    }

    pub fn add(&self, gf: &FieldTower, rhs: &Poly) -> Poly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Poly::from_coeffs((0..len).map(|i| gf.add(self.coeff(i), rhs.coeff(i))).collect())
    }

    pub fn sub(&self, gf: &FieldTower, rhs: &Poly) -> Poly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Poly::from_coeffs((0..len).map(|i| gf.sub(self.coeff(i), rhs.coeff(i))).collect())
    }

    pub fn scale(&self, gf: &FieldTower, c: Elt) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|&a| gf.mul(a, c)).collect())
    }

    pub fn mul(&self, gf: &FieldTower, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Elt::ZERO; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = gf.add(out[i + j], gf.mul(a, b));
            }
        }
        Poly::from_coeffs(out)
    }

    pub fn pow(&self, gf: &FieldTower, e: u32) -> Poly {
        (0..e).fold(Poly::one(), |acc, _| acc.mul(gf, self))
    }

    /// Horner evaluation.
    pub fn eval(&self, gf: &FieldTower, x: Elt) -> Elt {
        self.coeffs.iter().rev().fold(Elt::ZERO, |acc, &c| gf.add(gf.mul(acc, x), c))
    }

    /// Formal derivative; the multiplier `i` is taken mod `p`.
    pub fn derivative(&self, gf: &FieldTower) -> Poly {
        Poly::from_coeffs(
            self.coeffs.iter().enumerate().skip(1).map(|(i, &c)| gf.mul(gf.from_int(i as i64), c)).collect(),
        )
    }

    /// The monic `∏ (x − r)` over pairwise distinct roots.
    pub fn from_roots(gf: &FieldTower, roots: &[Elt]) -> Result<Poly> {
        check_distinct(roots).map_err(Error::DuplicateRoot)?;
        Ok(roots.iter().fold(Poly::one(), |acc, &r| acc.mul(gf, &Poly::from_coeffs(vec![gf.neg(r), Elt::ONE]))))
    }

    /// Lagrange basis polynomial `∏_{j≠i} (x − x_j)/(x_i − x_j)` for pairwise
    /// distinct nodes.
    pub fn lagrange_basis(gf: &FieldTower, nodes: &[Elt], i: usize) -> Result<Poly> {
        check_distinct(nodes).map_err(Error::DuplicateNode)?;
        let xi = nodes[i];
        let mut num = Poly::one();
        let mut den = Elt::ONE;
        for (j, &xj) in nodes.iter().enumerate() {
            if j == i {
                continue;
            }
            num = num.mul(gf, &Poly::from_coeffs(vec![gf.neg(xj), Elt::ONE]));
            den = gf.mul(den, gf.sub(xi, xj));
        }
        Ok(num.scale(gf, gf.inv(den)?))
    }

    /// The unique polynomial of degree `< points.len()` through every point,
    /// as `Σ y_i·f_i(x)` over the Lagrange basis.
    pub fn interpolate(gf: &FieldTower, points: &[(Elt, Elt)]) -> Result<Poly> {
        let nodes: Vec<Elt> = points.iter().map(|&(x, _)| x).collect();
        check_distinct(&nodes).map_err(Error::DuplicateNode)?;
        let mut acc = Poly::zero();
        for (i, &(_, y)) in points.iter().enumerate() {
            if y.is_zero() {
                continue;
            }
            acc = acc.add(gf, &Poly::lagrange_basis(gf, &nodes, i)?.scale(gf, y));
        }
        Ok(acc)
    }

    /// Quotient and remainder by a nonzero divisor.
    pub fn div_rem(&self, gf: &FieldTower, divisor: &Poly) -> Result<(Poly, Poly)> {
        let dd = divisor.degree().ok_or(Error::DivisionByZeroPoly)?;
        let lead_inv = gf.inv(divisor.coeffs[dd])?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Poly::zero(), self.clone()));
        }
        let mut quot = vec![Elt::ZERO; rem.len() - dd];
        for top in (dd..rem.len()).rev() {
            let c = gf.mul(rem[top], lead_inv);
            if c.is_zero() {
                continue;
            }
            let shift = top - dd;
            quot[shift] = c;
            for (j, &d) in divisor.coeffs.iter().enumerate() {
                rem[shift + j] = gf.sub(rem[shift + j], gf.mul(c, d));
            }
        }
        rem.truncate(dd);
        Ok((Poly::from_coeffs(quot), Poly::from_coeffs(rem)))
    }

    /// Remainder of `self` modulo `modulus`.
    pub fn mod_reduce(&self, gf: &FieldTower, modulus: &Poly) -> Result<Poly> {
        Ok(self.div_rem(gf, modulus)?.1)
    }

    /// Every root in `F_{q²}`, ascending, by exhaustive evaluation.
    pub fn roots_in_field(&self, gf: &FieldTower) -> Result<Vec<Elt>> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(gf.elements().filter(|&e| self.eval(gf, e).is_zero()).collect())
    }
}

/// First repeated element, if any.
fn check_distinct(xs: &[Elt]) -> std::result::Result<(), Elt> {
    let mut sorted = xs.to_vec();
    sorted.sort_unstable();
    match sorted.windows(2).find(|w| w[0] == w[1]) {
        Some(w) => Err(w[0]),
        None => Ok(()),
    }
}
