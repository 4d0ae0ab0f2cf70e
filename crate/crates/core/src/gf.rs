//! The field tower `F_p ⊂ F_q ⊂ F_{q²}` with `q = p^m`.
//!
//! `F_q` is `F_p[z]/(base_modulus)` and `F_{q²}` is `F_q[y]/(top_modulus)` with
//! `θ` the class of `y`. An element `c₀ + c₁θ` (with `c₀, c₁ ∈ F_q`) is stored as
//! the integer `index = c₀ + c₁·q`, where each `F_q` coordinate is itself the
//! base-`p` integer of its coefficient vector over `F_p`. In particular the
//! indices `0..p` are the prime field and `0..q` are `F_q`.
//!
//! All arithmetic is table driven: `F_q` addition and multiplication tables,
//! and exp/log tables over a fixed generator of `F_{q²}*`. The fields handled
//! here are tiny (`q² ≤ 2¹⁶` by default) so every table is exhaustive.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default bound on `q²`.
pub const DEFAULT_MAX_ORDER: u64 = 1 << 16;

/// One element of `F_{q²}` in the canonical integer encoding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Elt(u32);

impl Elt {
    pub const ZERO: Elt = Elt(0);
    pub const ONE: Elt = Elt(1);

    #[inline]
    pub fn index(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// Unchecked; callers guarantee the index is below the field order.
    #[inline]
    pub(crate) fn raw(index: u32) -> Elt {
        Elt(index)
    }
}

impl fmt::Display for Elt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

/// Arithmetic context for `F_p ⊂ F_q ⊂ F_{q²}`. Immutable once built.
#[derive(Debug, Clone)]
pub struct FieldTower {
    p: u32,
    m: u32,
    q: u32,
    order: u32,
    /// `c₀, …, c_{m−1}, 1` over F_p.
    base_modulus: Vec<u32>,
    /// `c, b, 1` as F_q indices, i.e. `y² + b·y + c`.
    top_modulus: [u32; 3],
    generator: Elt,
    fq_add: Vec<u32>,
    fq_mul: Vec<u32>,
    fq_neg: Vec<u32>,
    /// `exp[i] = g^i` for `0 ≤ i < 2(q²−1)`.
    exp: Vec<u32>,
    log: Vec<u32>,
}

/// Towers with the same `(p, m)` are identical: every choice is canonical.
impl PartialEq for FieldTower {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.m == other.m
    }
}

impl Eq for FieldTower {}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn to_digits(mut x: u32, p: u32, len: usize) -> Vec<u32> {
    let mut d = vec![0; len];
    for slot in d.iter_mut() {
        *slot = x % p;
        x /= p;
    }
    d
}

fn from_digits(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0, |acc, &c| acc * p + c)
}

/// Remainder of `a` by the monic `b` over F_p (coefficient vectors, low to high).
fn fp_poly_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    while r.len() > db {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - db;
        if lead != 0 {
            for (j, &bj) in b.iter().enumerate() {
                r[shift + j] = (r[shift + j] + p - (lead * bj) % p) % p;
            }
        }
        r.pop();
    }
    r
}

/// Exhaustive trial division by every monic polynomial of degree `1..=deg/2`.
fn fp_irreducible(f: &[u32], p: u32) -> bool {
    let deg = f.len() - 1;
    for d in 1..=deg / 2 {
        for low in 0..p.pow(d as u32) {
            let mut g = to_digits(low, p, d);
            g.push(1);
            if fp_poly_rem(f, &g, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

impl FieldTower {
    /// Builds the tower for `q = p^m` with the default size bound.
    pub fn new(p: u64, m: u32) -> Result<Self> {
        Self::with_max_order(p, m, DEFAULT_MAX_ORDER)
    }

    pub fn with_max_order(p: u64, m: u32, max_order: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if m == 0 {
            return Err(Error::InvalidDegree);
        }
        let order = (p as u128).checked_pow(2 * m).unwrap_or(u128::MAX);
        if order > max_order as u128 || order > u32::MAX as u128 {
            return Err(Error::TooLarge { order, cap: max_order });
        }
        let p = p as u32;
        let q = p.pow(m);
        let order = order as u32;
        let md = m as usize;

        // Canonical base modulus: smallest Σ c_j p^j among monic irreducibles.
        let base_modulus = (0..q)
            .map(|low| {
                let mut f = to_digits(low, p, md);
                f.push(1);
                f
            })
            .find(|f| fp_irreducible(f, p))
            .expect("an irreducible polynomial of every degree exists over F_p");

        let qs = q as usize;
        let mut fq_add = vec![0u32; qs * qs];
        let mut fq_mul = vec![0u32; qs * qs];
        let mut fq_neg = vec![0u32; qs];
        let digits: Vec<Vec<u32>> = (0..q).map(|x| to_digits(x, p, md)).collect();
        for a in 0..qs {
            fq_neg[a] = from_digits(&digits[a].iter().map(|&c| (p - c) % p).collect::<Vec<_>>(), p);
            for b in 0..qs {
                let sum: Vec<u32> = digits[a].iter().zip(&digits[b]).map(|(&x, &y)| (x + y) % p).collect();
                fq_add[a * qs + b] = from_digits(&sum, p);
                let mut prod = vec![0u32; 2 * md - 1];
                for (i, &x) in digits[a].iter().enumerate() {
                    for (j, &y) in digits[b].iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                let rem = fp_poly_rem(&prod, &base_modulus, p);
                let mut rem = rem;
                rem.resize(md, 0);
                fq_mul[a * qs + b] = from_digits(&rem, p);
            }
        }

        let mut tower = FieldTower {
            p,
            m,
            q,
            order,
            base_modulus,
            top_modulus: [0, 0, 1],
            generator: Elt::ONE,
            fq_add,
            fq_mul,
            fq_neg,
            exp: Vec::new(),
            log: Vec::new(),
        };

        // Canonical top modulus y² + b·y + c: minimize index(b)·q + index(c).
        let (b, c) = (0..q * q)
            .map(|key| (key / q, key % q))
            .find(|&(b, c)| {
                (0..q).all(|r| {
                    let v = tower.fq_add_(tower.fq_add_(tower.fq_mul_(r, r), tower.fq_mul_(b, r)), c);
                    v != 0
                })
            })
            .expect("an irreducible quadratic exists over every finite field");
        tower.top_modulus = [c, b, 1];

        let n = (order - 1) as u64;
        let factors = prime_factors(n);
        let generator = (1..order)
            .map(Elt)
            .find(|&g| {
                tower.pow_direct(g, n) == Elt::ONE && factors.iter().all(|&r| tower.pow_direct(g, n / r) != Elt::ONE)
            })
            .expect("F_{q²}* is cyclic");
        tower.generator = generator;

        let nn = n as usize;
        let mut exp = vec![0u32; 2 * nn];
        let mut log = vec![0u32; order as usize];
        let mut cur = Elt::ONE;
        for (i, slot) in exp[..nn].iter_mut().enumerate() {
            *slot = cur.0;
            log[cur.0 as usize] = i as u32;
            cur = tower.mul_direct(cur, generator);
        }
        debug_assert_eq!(cur, Elt::ONE);
        exp.copy_within(..nn, nn);
        tower.exp = exp;
        tower.log = log;
        Ok(tower)
    }

    #[inline]
    fn fq_add_(&self, a: u32, b: u32) -> u32 {
        self.fq_add[(a * self.q + b) as usize]
    }

    #[inline]
    fn fq_mul_(&self, a: u32, b: u32) -> u32 {
        self.fq_mul[(a * self.q + b) as usize]
    }

    /// Schoolbook multiplication in `F_q[θ]/(θ² + bθ + c)`; used to build the
    /// log tables and as an independent check on them.
    fn mul_direct(&self, x: Elt, y: Elt) -> Elt {
        let (x0, x1) = self.coords(x);
        let (y0, y1) = self.coords(y);
        let [c, b, _] = self.top_modulus;
        let t0 = self.fq_mul_(x0, y0);
        let t1 = self.fq_add_(self.fq_mul_(x0, y1), self.fq_mul_(x1, y0));
        let t2 = self.fq_mul_(x1, y1);
        let lo = self.fq_add_(t0, self.fq_neg[self.fq_mul_(c, t2) as usize]);
        let hi = self.fq_add_(t1, self.fq_neg[self.fq_mul_(b, t2) as usize]);
        self.from_coords(lo, hi)
    }

    fn pow_direct(&self, base: Elt, mut e: u64) -> Elt {
        let mut acc = Elt::ONE;
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_direct(acc, b);
            }
            b = self.mul_direct(b, b);
            e >>= 1;
        }
        acc
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// `q²`, the number of elements of the top field.
    pub fn order(&self) -> u32 {
        self.order
    }

    /// Coefficients `c₀, …, c_{m−1}, 1` of the modulus of `F_q` over `F_p`.
    pub fn base_modulus(&self) -> &[u32] {
        &self.base_modulus
    }

    /// Coefficients `c, b, 1` (as `F_q` indices) of `y² + b·y + c`.
    pub fn top_modulus(&self) -> [u32; 3] {
        self.top_modulus
    }

    /// A fixed element of multiplicative order `q² − 1`.
    pub fn generator(&self) -> Elt {
        self.generator
    }

    /// The root `θ` of the top modulus; `{1, θ}` is the basis of `F_{q²}` over `F_q`.
    pub fn theta(&self) -> Elt {
        Elt(self.q)
    }

    /// Checked conversion from an integer index.
    pub fn elt(&self, index: u64) -> Result<Elt> {
        if index < self.order as u64 {
            Ok(Elt(index as u32))
        } else {
            Err(Error::InvalidElement { index, order: self.order })
        }
    }

    /// The image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> Elt {
        Elt(n.rem_euclid(self.p as i64) as u32)
    }

    /// `(c₀, c₁)` with `e = c₀ + c₁·θ`, both as `F_q` indices.
    #[inline]
    pub fn coords(&self, e: Elt) -> (u32, u32) {
        (e.0 % self.q, e.0 / self.q)
    }

    #[inline]
    pub fn from_coords(&self, lo: u32, hi: u32) -> Elt {
        debug_assert!(lo < self.q && hi < self.q);
        Elt(lo + hi * self.q)
    }

    /// All elements in ascending index order.
    pub fn elements(&self) -> impl Iterator<Item = Elt> + Clone {
        (0..self.order).map(Elt)
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = Elt> + Clone {
        (1..self.order).map(Elt)
    }

    /// The subfield `F_q`, ascending.
    pub fn base_field_elements(&self) -> impl Iterator<Item = Elt> + Clone {
        (0..self.q).map(Elt)
    }

    #[inline]
    pub fn add(&self, a: Elt, b: Elt) -> Elt {
        let (a0, a1) = self.coords(a);
        let (b0, b1) = self.coords(b);
        self.from_coords(self.fq_add_(a0, b0), self.fq_add_(a1, b1))
    }

    #[inline]
    pub fn neg(&self, a: Elt) -> Elt {
        let (a0, a1) = self.coords(a);
        self.from_coords(self.fq_neg[a0 as usize], self.fq_neg[a1 as usize])
    }

    #[inline]
    pub fn sub(&self, a: Elt, b: Elt) -> Elt {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elt, b: Elt) -> Elt {
        if a.0 == 0 || b.0 == 0 {
            return Elt::ZERO;
        }
        Elt(self.exp[(self.log[a.0 as usize] + self.log[b.0 as usize]) as usize])
    }

    pub fn inv(&self, a: Elt) -> Result<Elt> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        let n = self.order - 1;
        Ok(Elt(self.exp[((n - self.log[a.0 as usize]) % n) as usize]))
    }

    pub fn div(&self, a: Elt, b: Elt) -> Result<Elt> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^e` with `0⁰ = 1`.
    pub fn pow(&self, a: Elt, e: u64) -> Elt {
        if e == 0 {
            return Elt::ONE;
        }
        if a.0 == 0 {
            return Elt::ZERO;
        }
        let n = (self.order - 1) as u64;
        let l = (self.log[a.0 as usize] as u64 * (e % n)) % n;
        Elt(self.exp[l as usize])
    }

    /// Discrete logarithm to the fixed generator; `None` for zero.
    pub fn log(&self, a: Elt) -> Option<u32> {
        (a.0 != 0).then(|| self.log[a.0 as usize])
    }

    /// `g^i` for the fixed generator.
    pub fn exp(&self, i: u64) -> Elt {
        Elt(self.exp[(i % (self.order as u64 - 1)) as usize])
    }

    /// `e ↦ e^q`, the generator of `Gal(F_{q²}/F_q)`.
    pub fn frobenius(&self, e: Elt) -> Elt {
        self.pow(e, self.q as u64)
    }

    /// `e^{q+1}`, always in `F_q`.
    pub fn norm(&self, e: Elt) -> Elt {
        self.pow(e, self.q as u64 + 1)
    }

    pub fn is_in_base_field(&self, e: Elt) -> bool {
        let fixed = self.frobenius(e) == e;
        debug_assert_eq!(fixed, self.coords(e).1 == 0);
        fixed
    }

    /// Every `v` with `v^{q+1} = c`, ascending. `[0]` for `c = 0`, `q + 1`
    /// solutions for `c ∈ F_q*`, none otherwise.
    pub fn solve_norm(&self, c: Elt) -> Vec<Elt> {
        if c.is_zero() {
            return vec![Elt::ZERO];
        }
        if !self.is_in_base_field(c) {
            return Vec::new();
        }
        let q = self.q as u64;
        let s = self.log[c.0 as usize] as u64;
        debug_assert_eq!(s % (q + 1), 0);
        let t = s / (q + 1);
        let mut out: Vec<Elt> = (0..=q).map(|j| self.exp(t + j * (q - 1))).collect();
        out.sort_unstable();
        out
    }

    /// `Σ xs`.
    pub fn sum<I: IntoIterator<Item = Elt>>(&self, xs: I) -> Elt {
        xs.into_iter().fold(Elt::ZERO, |acc, x| self.add(acc, x))
    }

    /// `Σ a_i·b_i`.
    pub fn dot(&self, a: &[Elt], b: &[Elt]) -> Elt {
        a.iter().zip(b).fold(Elt::ZERO, |acc, (&x, &y)| self.add(acc, self.mul(x, y)))
    }

    /// Hermitian inner product `Σ a_i·b_i^q`.
    pub fn hermitian_dot(&self, a: &[Elt], b: &[Elt]) -> Elt {
        a.iter().zip(b).fold(Elt::ZERO, |acc, (&x, &y)| self.add(acc, self.mul(x, self.frobenius(y))))
    }
}
