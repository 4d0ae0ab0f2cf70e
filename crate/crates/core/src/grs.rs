//! Generalized Reed–Solomon codes `GRS_{n,k}(α, v)` over `F_{q²}`.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gf::{Elt, FieldTower};
use crate::matrix::Mat;
use crate::poly::Poly;

/// `{(v₁f(α₁), …, v_nf(α_n)) : deg f < k}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrsCode<'a> {
    tower: &'a FieldTower,
    k: usize,
    alpha: Vec<Elt>,
    v: Vec<Elt>,
}

/// The object exhibited by a construction: a scalar `λ` (points on a line) or
/// a polynomial `g` (points on a norm circle).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    Lambda(Elt),
    Polynomial(Poly),
}

/// Evidence that a code is Hermitian self-dual.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    /// `u_i = 1/G'(α_i)`.
    pub u: Vec<Elt>,
    pub witness: Witness,
    pub gram_zero: bool,
    pub theorem7_ok: bool,
    pub min_distance: Option<usize>,
}

/// `u_i = 1/G'(α_i)` for pairwise distinct points, `G = ∏(x − α_j)`.
pub fn dual_multipliers(gf: &FieldTower, alpha: &[Elt]) -> Result<Vec<Elt>> {
    let g = Poly::from_roots(gf, alpha)?;
    let dg = g.derivative(gf);
    // G'(α_i) = ∏_{j≠i}(α_i − α_j) is nonzero for distinct points
    alpha.iter().map(|&a| gf.inv(dg.eval(gf, a))).collect()
}

impl<'a> GrsCode<'a> {
    pub fn new(tower: &'a FieldTower, k: usize, alpha: Vec<Elt>, v: Vec<Elt>) -> Result<Self> {
        let n = alpha.len();
        if v.len() != n {
            return Err(Error::LengthMismatch { expected: n, got: v.len() });
        }
        if k == 0 || k > n || n > tower.order() as usize {
            return Err(Error::InvalidCode(format!("need 1 ≤ k ≤ n ≤ q², got n={n}, k={k}")));
        }
        for &e in alpha.iter().chain(&v) {
            tower.elt(e.index() as u64)?;
        }
        if let Some(i) = v.iter().position(|e| e.is_zero()) {
            return Err(Error::InvalidCode(format!("column multiplier v_{i} is zero")));
        }
        let mut sorted = alpha.clone();
        sorted.sort_unstable();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidCode(format!("evaluation point {} repeats", w[0])));
        }
        Ok(GrsCode { tower, k, alpha, v })
    }

    pub fn tower(&self) -> &'a FieldTower {
        self.tower
    }

    pub fn n(&self) -> usize {
        self.alpha.len()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn alpha(&self) -> &[Elt] {
        &self.alpha
    }

    pub fn v(&self) -> &[Elt] {
        &self.v
    }

    /// The same evaluation points with every multiplier scaled by `mu ≠ 0`.
    pub fn scale(&self, mu: Elt) -> Result<GrsCode<'a>> {
        let gf = self.tower;
        GrsCode::new(gf, self.k, self.alpha.clone(), self.v.iter().map(|&x| gf.mul(x, mu)).collect())
    }

    /// `k × n`, entry `(i, j) = v_j·α_j^i`.
    pub fn generator_matrix(&self) -> Mat {
        let gf = self.tower;
        Mat::from_fn(self.k, self.n(), |i, j| gf.mul(self.v[j], gf.pow(self.alpha[j], i as u64)))
    }

    /// Codeword of the message polynomial with coefficients `message` (low to high).
    pub fn encode(&self, message: &[Elt]) -> Result<Vec<Elt>> {
        if message.len() != self.k {
            return Err(Error::LengthMismatch { expected: self.k, got: message.len() });
        }
        let f = Poly::from_coeffs(message.to_vec());
        let gf = self.tower;
        Ok(self.alpha.iter().zip(&self.v).map(|(&a, &v)| gf.mul(v, f.eval(gf, a))).collect())
    }

    /// `u_i = 1/G'(α_i)` with `G = ∏(x − α_j)`.
    pub fn u_vector(&self) -> Vec<Elt> {
        let u = dual_multipliers(self.tower, &self.alpha).expect("evaluation points are distinct");
        debug_assert_eq!(u, self.u_vector_by_products());
        u
    }

    /// `u_i = ∏_{j≠i} (α_i − α_j)⁻¹`, computed without polynomials.
    pub fn u_vector_by_products(&self) -> Vec<Elt> {
        let gf = self.tower;
        self.alpha
            .iter()
            .enumerate()
            .map(|(i, &ai)| {
                let prod = self
                    .alpha
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != i)
                    .fold(Elt::ONE, |acc, (_, &aj)| gf.mul(acc, gf.sub(ai, aj)));
                gf.inv(prod).expect("distinct points")
            })
            .collect()
    }

    /// `k × k`, entry `(i, j) = Σ_l α_l^{i+jq}·v_l^{q+1}`.
    pub fn hermitian_gram(&self) -> Mat {
        let gf = self.tower;
        let q = gf.q() as u64;
        let norms: Vec<Elt> = self.v.iter().map(|&v| gf.norm(v)).collect();
        Mat::from_fn(self.k, self.k, |i, j| {
            let e = i as u64 + j as u64 * q;
            gf.sum(self.alpha.iter().zip(&norms).map(|(&a, &x)| gf.mul(gf.pow(a, e), x)))
        })
    }

    /// `G·(G^{(q)})ᵀ`, the Gram matrix via the generator matrix.
    pub fn hermitian_gram_by_product(&self) -> Mat {
        let gf = self.tower;
        let g = self.generator_matrix();
        let gq = g.map(|e| gf.frobenius(e));
        g.mul(gf, &gq.transpose()).expect("k × n times n × k")
    }

    /// `C = C^{⊥H}`: `n = 2k` and every row is Hermitian-orthogonal to every row.
    pub fn is_hermitian_self_dual(&self) -> bool {
        self.n() == 2 * self.k && self.hermitian_gram().is_zero()
    }

    /// `(n−k) × n`, entry `(i, j) = (u_j/v_j)·α_j^i`.
    pub fn parity_check_matrix(&self) -> Mat {
        let gf = self.tower;
        let u = self.u_vector();
        let w: Vec<Elt> = u.iter().zip(&self.v).map(|(&u, &v)| gf.div(u, v).expect("v_j ≠ 0")).collect();
        Mat::from_fn(self.n() - self.k, self.n(), |i, j| gf.mul(w[j], gf.pow(self.alpha[j], i as u64)))
    }

    /// Minimum Hamming weight over all nonzero codewords, by enumerating
    /// every message whose last nonzero coefficient is 1 (scalar multiples
    /// share a weight).
    pub fn min_distance_bruteforce(&self, max_codewords: u64) -> Result<usize> {
        let gf = self.tower;
        let count = (gf.order() as u128).pow(self.k as u32);
        if count > max_codewords as u128 {
            return Err(Error::TooLargeToEnumerate { count, cap: max_codewords });
        }
        let g = self.generator_matrix();
        let n = self.n();
        let rows: Vec<&[Elt]> = (0..self.k).map(|r| g.row(r)).collect();
        let order = gf.order();

        // For each leading position `lead`, the message is e_lead + Σ_{i<lead} m_i e_i,
        // walked with an odometer that updates the codeword incrementally.
        let min_for_lead = |lead: usize, first: u32| -> usize {
            let mut word: Vec<Elt> = rows[lead].to_vec();
            let mut digits = vec![0u32; lead];
            if lead > 0 {
                digits[lead - 1] = first;
                let top = gf.elt(first as u64).unwrap();
                for j in 0..n {
                    word[j] = gf.add(word[j], gf.mul(top, rows[lead - 1][j]));
                }
            }
            let weight = |w: &[Elt]| w.iter().filter(|e| !e.is_zero()).count();
            let mut best = weight(&word);
            if lead <= 1 {
                return best;
            }
            loop {
                // advance the lowest `lead - 1` digits
                let mut i = 0;
                loop {
                    if i == lead - 1 {
                        return best;
                    }
                    let old = gf.elt(digits[i] as u64).unwrap();
                    digits[i] = (digits[i] + 1) % order;
                    let new = gf.elt(digits[i] as u64).unwrap();
                    let delta = gf.sub(new, old);
                    for j in 0..n {
                        word[j] = gf.add(word[j], gf.mul(delta, rows[i][j]));
                    }
                    if digits[i] != 0 {
                        break;
                    }
                    i += 1;
                }
                best = best.min(weight(&word));
            }
        };

        let jobs: Vec<(usize, u32)> = (0..self.k)
            .flat_map(|lead| {
                let firsts = if lead == 0 { 1 } else { order };
                (0..firsts).map(move |f| (lead, f))
            })
            .collect();
        Ok(jobs.into_par_iter().map(|(lead, f)| min_for_lead(lead, f)).min().expect("k ≥ 1"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f9() -> FieldTower {
        FieldTower::new(3, 1).unwrap()
    }

    fn fourth_roots(t: &FieldTower) -> Vec<Elt> {
        let th = t.theta();
        vec![Elt::ONE, t.from_int(2), th, t.mul(t.from_int(2), th)]
    }

    /// The [2,1] code over F_9 with α = (0, 1) and v₂^{q+1} = 2.
    fn two_one(t: &FieldTower) -> GrsCode<'_> {
        let v2 = t.solve_norm(t.from_int(2))[0];
        GrsCode::new(t, 1, vec![Elt::ZERO, Elt::ONE], vec![Elt::ONE, v2]).unwrap()
    }

    /// Reference enumeration over every message, no normalization.
    fn min_distance_naive(c: &GrsCode<'_>) -> usize {
        let gf = c.tower();
        let mut best = usize::MAX;
        let total = (gf.order() as u64).pow(c.k() as u32);
        for idx in 1..total {
            let mut x = idx;
            let msg: Vec<Elt> = (0..c.k())
                .map(|_| {
                    let d = x % gf.order() as u64;
                    x /= gf.order() as u64;
                    gf.elt(d).unwrap()
                })
                .collect();
            let w = c.encode(&msg).unwrap().iter().filter(|e| !e.is_zero()).count();
            best = best.min(w);
        }
        best
    }

    #[test]
    fn generator_examples() {
        let t = f9();
        let c = GrsCode::new(&t, 1, vec![Elt::ZERO, Elt::ONE], vec![Elt::ONE; 2]).unwrap();
        assert_eq!(c.generator_matrix().data(), &[Elt::ONE, Elt::ONE]);
        let a = fourth_roots(&t);
        let c = GrsCode::new(&t, 2, a.clone(), vec![Elt::ONE; 4]).unwrap();
        let g = c.generator_matrix();
        assert_eq!(g.row(0), &[Elt::ONE; 4]);
        assert_eq!(g.row(1), a.as_slice());
        assert_eq!(g.rank(&t), 2);
    }

    #[test]
    fn encode_examples() {
        let t = f9();
        let a = fourth_roots(&t);
        let v = vec![Elt::ONE, t.theta(), Elt::ONE, t.from_int(2)];
        let c = GrsCode::new(&t, 2, a.clone(), v.clone()).unwrap();
        assert_eq!(c.encode(&[Elt::ZERO; 2]).unwrap(), vec![Elt::ZERO; 4]);
        assert_eq!(c.encode(&[Elt::ONE, Elt::ZERO]).unwrap(), v);
        let c1 = GrsCode::new(&t, 2, a.clone(), vec![Elt::ONE; 4]).unwrap();
        assert_eq!(c1.encode(&[Elt::ZERO, Elt::ONE]).unwrap(), a);
        assert_eq!(c.encode(&[Elt::ONE]), Err(Error::LengthMismatch { expected: 2, got: 1 }));
    }

    #[test]
    fn u_vector_examples() {
        let t = f9();
        let a = fourth_roots(&t);
        let c = GrsCode::new(&t, 2, a.clone(), vec![Elt::ONE; 4]).unwrap();
        assert_eq!(c.u_vector(), a);
        assert_eq!(c.u_vector_by_products(), a);
        let c = GrsCode::new(&t, 1, vec![Elt::ZERO, Elt::ONE], vec![Elt::ONE; 2]).unwrap();
        assert_eq!(c.u_vector(), vec![t.from_int(-1), Elt::ONE]);
    }

    #[test]
    fn u_vector_is_dual_multiplier() {
        let t = FieldTower::new(5, 1).unwrap();
        for n in 2..8 {
            let alpha: Vec<Elt> = t.elements().skip(2 * n).take(n).collect();
            let c = GrsCode::new(&t, 1, alpha.clone(), vec![Elt::ONE; n]).unwrap();
            let u = c.u_vector();
            assert_eq!(u, c.u_vector_by_products());
            for e in 0..=(n as u64 - 2) {
                let s = t.sum(alpha.iter().zip(&u).map(|(&a, &ui)| t.mul(ui, t.pow(a, e))));
                assert_eq!(s, Elt::ZERO);
            }
        }
    }

    #[test]
    fn gram_examples() {
        let t = f9();
        let c = two_one(&t);
        assert!(c.hermitian_gram().is_zero());
        assert!(c.is_hermitian_self_dual());
        let c = GrsCode::new(&t, 1, vec![Elt::ZERO, Elt::ONE], vec![Elt::ONE; 2]).unwrap();
        assert_eq!(c.hermitian_gram().data(), &[t.from_int(2)]);
        assert!(!c.is_hermitian_self_dual());
        let c = GrsCode::new(&t, 1, fourth_roots(&t), vec![Elt::ONE; 4]).unwrap();
        assert!(!c.is_hermitian_self_dual());
    }

    #[test]
    fn gram_routes_agree_and_scale() {
        let t = FieldTower::new(2, 2).unwrap();
        let alpha: Vec<Elt> = t.elements().skip(2).take(6).collect();
        for k in 1..=6 {
            let v: Vec<Elt> = (0..6).map(|i| t.exp(3 * i + k as u64)).collect();
            let c = GrsCode::new(&t, k, alpha.clone(), v).unwrap();
            let gram = c.hermitian_gram();
            assert_eq!(gram, c.hermitian_gram_by_product());
            assert!(t.is_in_base_field(gram[(0, 0)]));
            let mu = t.exp(5);
            let scaled = c.scale(mu).unwrap().hermitian_gram();
            assert_eq!(scaled, gram.map(|e| t.mul(e, t.norm(mu))));
        }
    }

    #[test]
    fn parity_check_examples() {
        let t = f9();
        let c = GrsCode::new(&t, 1, vec![Elt::ZERO, Elt::ONE], vec![Elt::ONE; 2]).unwrap();
        let h = c.parity_check_matrix();
        assert_eq!(h.data(), &[t.from_int(-1), Elt::ONE]);
        for k in 1..=4 {
            let v = vec![Elt::ONE, t.theta(), t.from_int(2), t.exp(3)];
            let c = GrsCode::new(&t, k, fourth_roots(&t), v).unwrap();
            let h = c.parity_check_matrix();
            let prod = c.generator_matrix().mul(&t, &h.transpose()).unwrap();
            assert!(prod.is_zero());
            assert_eq!(h.rank(&t), 4 - k);
            assert_eq!(c.generator_matrix().rank(&t) + h.rank(&t), 4);
        }
    }

    #[test]
    fn min_distance_examples() {
        let t = f9();
        for pair in [[0u64, 1], [3, 7], [2, 8]] {
            let alpha = pair.iter().map(|&i| t.elt(i).unwrap()).collect();
            let c = GrsCode::new(&t, 1, alpha, vec![Elt::ONE, t.theta()]).unwrap();
            assert_eq!(c.min_distance_bruteforce(1 << 20).unwrap(), 2);
        }
        let c = GrsCode::new(&t, 2, fourth_roots(&t), vec![Elt::ONE, t.exp(1), t.exp(2), t.exp(7)]).unwrap();
        assert_eq!(c.min_distance_bruteforce(1 << 20).unwrap(), 3);
        assert_eq!(min_distance_naive(&c), 3);
        assert!(matches!(c.min_distance_bruteforce(80), Err(Error::TooLargeToEnumerate { count: 81, cap: 80 })));
    }

    #[test]
    fn min_distance_matches_naive_enumeration() {
        let t = FieldTower::new(2, 1).unwrap();
        for n in 1..=4 {
            for k in 1..=n {
                let alpha: Vec<Elt> = t.elements().take(n).collect();
                let v = (0..n).map(|i| t.exp(i as u64)).collect();
                let c = GrsCode::new(&t, k, alpha, v).unwrap();
                let d = c.min_distance_bruteforce(1 << 20).unwrap();
                assert_eq!(d, min_distance_naive(&c));
                assert_eq!(d, n - k + 1);
            }
        }
    }

    #[test]
    fn constructor_rejects_invalid_codes() {
        let t = f9();
        assert!(matches!(GrsCode::new(&t, 1, vec![Elt::ONE, Elt::ONE], vec![Elt::ONE; 2]), Err(Error::InvalidCode(_))));
        assert!(matches!(
            GrsCode::new(&t, 1, vec![Elt::ZERO, Elt::ONE], vec![Elt::ONE, Elt::ZERO]),
            Err(Error::InvalidCode(_))
        ));
        assert!(matches!(
            GrsCode::new(&t, 3, vec![Elt::ZERO, Elt::ONE], vec![Elt::ONE; 2]),
            Err(Error::InvalidCode(_))
        ));
        assert!(matches!(
            GrsCode::new(&t, 1, vec![Elt::ZERO, Elt::ONE], vec![Elt::ONE]),
            Err(Error::LengthMismatch { .. })
        ));
    }
}
