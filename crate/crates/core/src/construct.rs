//! Explicit Hermitian self-dual GRS codes.
//!
//! Two families of evaluation-point sets carry self-dual codes:
//!
//! * **line** sets `{α : α^q = aα + b}` with `a^{q+1} = 1` and `b^q + a^q b = 0`,
//!   which are affine `F_q`-lines of `q` points. Any even subset works with
//!   `v_i^{q+1} = λ·u_i` for one `λ` putting every `λu_i` in `F_q*`.
//! * **norm** sets `{α : (α + a)^{q+1} = b}` with `b ∈ F_q*`, circles of `q + 1`
//!   points, with `v_i^{q+1} = (α_i + a)^{k−1}·u_i`.
//!
//! Here `u_i = 1/G'(α_i)` for `G = ∏(x − α_i)`. The degree criterion in
//! [`theorem7_check`] decides self-duality for any `n = 2k` code through
//! interpolation modulo `G` and must agree with the Gram matrix test.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::{Elt, FieldTower};
use crate::grs::{dual_multipliers, Certificate, GrsCode, Witness};
use crate::poly::Poly;
use crate::search::family_match;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FamilyKind {
    /// Roots of `x^q = a·x + b`.
    Line,
    /// Roots of `(x + a)^{q+1} = b`.
    Norm,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FamilySpec {
    pub kind: FamilyKind,
    pub a: Elt,
    pub b: Elt,
}

impl FamilySpec {
    pub fn line(a: Elt, b: Elt) -> Self {
        FamilySpec { kind: FamilyKind::Line, a, b }
    }

    pub fn norm(a: Elt, b: Elt) -> Self {
        FamilySpec { kind: FamilyKind::Norm, a, b }
    }

    /// Whether the parameters define a family with more than one point.
    pub fn is_valid(&self, gf: &FieldTower) -> bool {
        match self.kind {
            FamilyKind::Line => line_params_valid(gf, self.a, self.b),
            FamilyKind::Norm => !self.b.is_zero() && gf.is_in_base_field(self.b),
        }
    }

    pub fn contains(&self, gf: &FieldTower, x: Elt) -> bool {
        match self.kind {
            FamilyKind::Line => gf.frobenius(x) == gf.add(gf.mul(self.a, x), self.b),
            FamilyKind::Norm => gf.norm(gf.add(x, self.a)) == self.b,
        }
    }

    /// The full root set, ascending.
    pub fn root_set(&self, gf: &FieldTower) -> Vec<Elt> {
        gf.elements().filter(|&x| self.contains(gf, x)).collect()
    }

    /// Every valid family of the given kind, in ascending `(a, b)` order.
    pub fn all_valid(gf: &FieldTower, kind: FamilyKind) -> Vec<FamilySpec> {
        let mut out = Vec::new();
        for a in gf.elements() {
            for b in gf.elements() {
                let f = FamilySpec { kind, a, b };
                if f.is_valid(gf) {
                    out.push(f);
                }
            }
        }
        out
    }
}

/// `a^{q+1} = 1` and `b^q + a^q·b = 0`.
pub fn line_params_valid(gf: &FieldTower, a: Elt, b: Elt) -> bool {
    gf.norm(a) == Elt::ONE && gf.add(gf.frobenius(b), gf.mul(gf.frobenius(a), b)).is_zero()
}

/// `{α : α^q = aα + b}`, ascending.
pub fn s1_set(gf: &FieldTower, a: Elt, b: Elt) -> Vec<Elt> {
    FamilySpec::line(a, b).root_set(gf)
}

/// `{α : (α + a)^{q+1} = b}`, ascending.
pub fn s2_set(gf: &FieldTower, a: Elt, b: Elt) -> Vec<Elt> {
    FamilySpec::norm(a, b).root_set(gf)
}

fn half_length(alpha: &[Elt]) -> Result<usize> {
    let n = alpha.len();
    if !n.is_multiple_of(2) {
        return Err(Error::NotEven(n));
    }
    if n == 0 {
        return Err(Error::InvalidCode("empty evaluation set".into()));
    }
    Ok(n / 2)
}

/// Builds the code with `v_i` the smallest norm preimage of `norms[i]` and
/// checks it by both the Gram matrix and the degree criterion.
fn finish<'a>(
    gf: &'a FieldTower,
    alpha: &[Elt],
    u: Vec<Elt>,
    norms: &[Elt],
    witness: Witness,
) -> Result<(GrsCode<'a>, Certificate)> {
    let k = alpha.len() / 2;
    let v: Vec<Elt> = norms.iter().map(|&c| gf.solve_norm(c)[0]).collect();
    let code = GrsCode::new(gf, k, alpha.to_vec(), v)?;
    let gram = code.hermitian_gram();
    if let Some((i, j)) = gram.first_nonzero() {
        return Err(Error::VerificationFailed(format!(
            "gram nonzero at ({i},{j}) for alpha={:?} v={:?} witness={:?}",
            code.alpha(),
            code.v(),
            witness
        )));
    }
    let theorem7_ok = theorem7_check(&code)?;
    if !theorem7_ok {
        return Err(Error::VerificationFailed(format!(
            "gram is zero but the degree criterion fails for alpha={:?} v={:?}",
            code.alpha(),
            code.v()
        )));
    }
    let cert = Certificate { u, witness, gram_zero: true, theorem7_ok, min_distance: None };
    Ok((code, cert))
}

/// Self-dual code on points of a line family.
///
/// With `family` absent the points are matched against every line family;
/// with `lambda` absent the smallest-index feasible `λ` is used.
pub fn construction1<'a>(
    gf: &'a FieldTower,
    alpha: &[Elt],
    family: Option<FamilySpec>,
    lambda: Option<Elt>,
) -> Result<(GrsCode<'a>, Certificate)> {
    half_length(alpha)?;
    let family = match family {
        Some(f) => f,
        None => family_match(gf, alpha)
            .into_iter()
            .find(|f| f.kind == FamilyKind::Line)
            .ok_or_else(|| Error::NotInFamily("no line x^q = ax + b contains the points".into()))?,
    };
    if family.kind != FamilyKind::Line || !family.is_valid(gf) {
        return Err(Error::NotInFamily(format!("{family:?} is not a valid line family")));
    }
    if let Some(x) = alpha.iter().find(|&&x| !family.contains(gf, x)) {
        return Err(Error::NotInFamily(format!("{x} is not on {family:?}")));
    }
    let u = dual_multipliers(gf, alpha)?;
    let feasible = |l: Elt| -> std::result::Result<(), usize> {
        match u.iter().position(|&ui| {
            let c = gf.mul(l, ui);
            c.is_zero() || !gf.is_in_base_field(c)
        }) {
            Some(i) => Err(i),
            None => Ok(()),
        }
    };
    let lambda = match lambda {
        Some(l) => {
            feasible(l).map_err(|index| Error::InfeasibleLambda { lambda: l, index })?;
            l
        }
        None => gf.nonzero_elements().find(|&l| feasible(l).is_ok()).ok_or(Error::NoFeasibleLambda)?,
    };
    let norms: Vec<Elt> = u.iter().map(|&ui| gf.mul(lambda, ui)).collect();
    finish(gf, alpha, u, &norms, Witness::Lambda(lambda))
}

/// Self-dual code on points of the norm circle `(x + a)^{q+1} = b`, with
/// `v_i^{q+1} = g(α_i)·u_i` for `g = (x + a)^{k−1}`.
pub fn construction2<'a>(gf: &'a FieldTower, a: Elt, b: Elt, alpha: &[Elt]) -> Result<(GrsCode<'a>, Certificate)> {
    let k = half_length(alpha)?;
    let family = FamilySpec::norm(a, b);
    if !family.is_valid(gf) {
        return Err(Error::NotInFamily(format!("b = {b} is not in F_q*")));
    }
    if let Some(x) = alpha.iter().find(|&&x| !family.contains(gf, x)) {
        return Err(Error::NotInFamily(format!("{x} is not on {family:?}")));
    }
    let u = dual_multipliers(gf, alpha)?;
    let g = Poly::from_coeffs(vec![a, Elt::ONE]).pow(gf, (k - 1) as u32);
    let mut norms = Vec::with_capacity(alpha.len());
    for (i, (&x, &ui)) in alpha.iter().zip(&u).enumerate() {
        let value = gf.mul(g.eval(gf, x), ui);
        if value.is_zero() || !gf.is_in_base_field(value) {
            return Err(Error::NormInfeasible { index: i, value });
        }
        norms.push(value);
    }
    finish(gf, alpha, u, &norms, Witness::Polynomial(g))
}

/// The polynomials of the degree criterion: `f` interpolating
/// `v_i^{q+1}/u_i`, `m` interpolating `α_i^q`, and `G = ∏(x − α_i)`.
pub fn theorem7_polynomials(code: &GrsCode<'_>) -> Result<(Poly, Poly, Poly)> {
    let gf = code.tower();
    let alpha = code.alpha();
    let u = code.u_vector();
    let f_pts: Vec<(Elt, Elt)> = alpha
        .iter()
        .zip(code.v())
        .zip(&u)
        .map(|((&a, &v), &ui)| Ok((a, gf.div(gf.norm(v), ui)?)))
        .collect::<Result<_>>()?;
    let m_pts: Vec<(Elt, Elt)> = alpha.iter().map(|&a| (a, gf.frobenius(a))).collect();
    let f = Poly::interpolate(gf, &f_pts)?;
    let m = Poly::interpolate(gf, &m_pts)?;
    let g = Poly::from_roots(gf, alpha)?;
    Ok((f, m, g))
}

/// `deg(f·m^i mod G) ≤ k − 1` for `i = 0, …, k − 1`.
pub fn theorem7_check(code: &GrsCode<'_>) -> Result<bool> {
    let n = code.n();
    if !n.is_multiple_of(2) {
        return Err(Error::NotEven(n));
    }
    let k = code.k();
    if n != 2 * k {
        return Err(Error::InvalidCode(format!("degree criterion needs n = 2k, got n={n}, k={k}")));
    }
    let gf = code.tower();
    let (f, m, g) = theorem7_polynomials(code)?;
    let mut term = f.mod_reduce(gf, &g)?;
    for i in 0..k {
        if i > 0 {
            term = term.mul(gf, &m).mod_reduce(gf, &g)?;
        }
        if term.degree().is_some_and(|d| d > k - 1) {
            return Ok(false);
        }
    }
    Ok(true)
}
