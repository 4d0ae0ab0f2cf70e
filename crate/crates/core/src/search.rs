//! Brute-force verification layer.
//!
//! `GRS_{2k,k}(α, v)` is Hermitian self-dual for some `v` exactly when the
//! system `Σ_l α_l^{i+jq} x_l = 0 (0 ≤ i, j < k)` has a solution with every
//! `x_l ∈ F_q*` (take `x_l = v_l^{q+1}`). [`lemma1_solve`] decides this by
//! exhaustive search over the `F_q`-kernel, and [`classify`] runs it over
//! every `n`-subset of `F_{q²}` to check which evaluation sets are admissible.
//!
//! The Δ-sequence `Δ_i = Σ_l α_l^i x_l` is a linear recurring sequence whose
//! state transition is the companion matrix of `G = ∏(x − α_l)`; helpers for
//! those identities live here too.

use rayon::prelude::*;
use serde::Serialize;

use crate::construct::{FamilyKind, FamilySpec};
use crate::error::{Error, Result};
use crate::gf::{Elt, FieldTower};
use crate::grs::GrsCode;
use crate::limits::Limits;
use crate::matrix::Mat;
use crate::poly::Poly;

/// `Δ_i = Σ_l α_l^i·x_l` for `0 ≤ i < values.len()`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeltaSeq {
    pub alpha: Vec<Elt>,
    pub x: Vec<Elt>,
    pub values: Vec<Elt>,
}

impl DeltaSeq {
    /// `Δ_i` recomputed from the definition, for any `i`.
    pub fn value_at(&self, gf: &FieldTower, i: u64) -> Elt {
        delta(gf, &self.alpha, &self.x, i)
    }
}

fn delta(gf: &FieldTower, alpha: &[Elt], x: &[Elt], i: u64) -> Elt {
    gf.sum(alpha.iter().zip(x).map(|(&a, &xl)| gf.mul(gf.pow(a, i), xl)))
}

pub fn delta_sequence(gf: &FieldTower, alpha: &[Elt], x: &[Elt], len: usize) -> Result<DeltaSeq> {
    if alpha.len() != x.len() {
        return Err(Error::LengthMismatch { expected: alpha.len(), got: x.len() });
    }
    let mut sorted = alpha.to_vec();
    sorted.sort_unstable();
    if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::DuplicateNode(w[0]));
    }
    // running powers instead of pow per term
    let mut powers = vec![Elt::ONE; alpha.len()];
    let mut values = Vec::with_capacity(len);
    for _ in 0..len {
        values.push(gf.dot(&powers, x));
        for (p, &a) in powers.iter_mut().zip(alpha) {
            *p = gf.mul(*p, a);
        }
    }
    Ok(DeltaSeq { alpha: alpha.to_vec(), x: x.to_vec(), values })
}

/// For monic `G = xⁿ − Σ c_i xⁱ`, the `n × n` matrix with ones on the
/// superdiagonal and last row `(c₀, …, c_{n−1})`.
pub fn companion_matrix(gf: &FieldTower, g: &Poly) -> Result<Mat> {
    if !g.is_monic() {
        return Err(Error::NotMonic);
    }
    let n = g.degree().expect("monic is nonzero");
    if n == 0 {
        return Err(Error::ConstantPolynomial);
    }
    let mut t = Mat::zeros(n, n);
    for i in 0..n - 1 {
        t[(i, i + 1)] = Elt::ONE;
    }
    for j in 0..n {
        t[(n - 1, j)] = gf.neg(g.coeff(j));
    }
    Ok(t)
}

/// Whether the monic `h = x^m + Σ a_j x^j` annihilates the sequence:
/// `Σ_j h_j·s_{i+j} = 0` for every window that fits.
pub fn annihilates(gf: &FieldTower, h: &Poly, seq: &[Elt]) -> bool {
    let Some(m) = h.degree() else {
        return true;
    };
    seq.windows(m + 1).all(|w| gf.dot(h.coeffs(), w).is_zero())
}

/// The `k²×n` system `Σ_l α_l^{i+jq}·x_l = 0`, row `i·k + j`.
pub fn lemma1_system(gf: &FieldTower, alpha: &[Elt]) -> Result<Mat> {
    let n = alpha.len();
    if !n.is_multiple_of(2) {
        return Err(Error::NotEven(n));
    }
    let k = n / 2;
    let q = gf.q() as u64;
    Ok(Mat::from_fn(k * k, n, |r, l| {
        let (i, j) = ((r / k) as u64, (r % k) as u64);
        gf.pow(alpha[l], i + j * q)
    }))
}

/// A solution `x ∈ (F_q*)ⁿ` of the orthogonality system, if one exists.
///
/// The `F_q`-kernel is enumerated completely: combinations `Σ c_i b_i` are
/// visited in ascending order of `Σ c_i·q^i` and the first vector with no
/// zero coordinate is returned, so `None` is a proof of nonexistence.
pub fn lemma1_solve(gf: &FieldTower, alpha: &[Elt], max_kernel: u64) -> Result<Option<Vec<Elt>>> {
    let basis = lemma1_system(gf, alpha)?.subfield_kernel(gf);
    let dim = basis.len();
    if dim == 0 {
        return Ok(None);
    }
    let q = gf.q();
    let count = (q as u128).pow(dim as u32);
    if count > max_kernel as u128 {
        return Err(Error::KernelTooLarge { dim, count, cap: max_kernel });
    }
    let n = alpha.len();
    let mut x = vec![Elt::ZERO; n];
    let mut digits = vec![0u32; dim];
    loop {
        let mut i = 0;
        loop {
            if i == dim {
                return Ok(None);
            }
            let old = Elt::raw(digits[i]);
            digits[i] = (digits[i] + 1) % q;
            let delta = gf.sub(Elt::raw(digits[i]), old);
            for (xj, &bj) in x.iter_mut().zip(&basis[i]) {
                *xj = gf.add(*xj, gf.mul(delta, bj));
            }
            if digits[i] != 0 {
                break;
            }
            i += 1;
        }
        if x.iter().all(|e| !e.is_zero()) {
            return Ok(Some(x));
        }
    }
}

/// Every valid family whose root set contains all of `alpha`: at most one
/// line (two points fix `a` and `b`), then norm circles by ascending centre.
pub fn family_match(gf: &FieldTower, alpha: &[Elt]) -> Vec<FamilySpec> {
    let mut out = Vec::new();
    if alpha.len() < 2 {
        return out;
    }
    let (a1, a2) = (alpha[0], alpha[1]);
    let (f1, f2) = (gf.frobenius(a1), gf.frobenius(a2));
    if let Ok(a) = gf.div(gf.sub(f1, f2), gf.sub(a1, a2)) {
        let b = gf.sub(f1, gf.mul(a, a1));
        let line = FamilySpec::line(a, b);
        if line.is_valid(gf) && alpha.iter().all(|&x| line.contains(gf, x)) {
            out.push(line);
        }
    }
    for a in gf.elements() {
        let b = gf.norm(gf.add(a1, a));
        if b.is_zero() {
            continue;
        }
        if alpha[1..].iter().all(|&x| gf.norm(gf.add(x, a)) == b) {
            out.push(FamilySpec::norm(a, b));
        }
    }
    out
}

/// Rows `β_l = (Δ_{lq+k}, …, Δ_{lq+n−1})` for `l = 0, …, k−1`.
pub fn delta_rank_matrix(gf: &FieldTower, alpha: &[Elt], x: &[Elt]) -> Result<Mat> {
    let n = alpha.len();
    if !n.is_multiple_of(2) {
        return Err(Error::NotEven(n));
    }
    let k = n / 2;
    let q = gf.q() as u64;
    Ok(Mat::from_fn(k, n - k, |l, c| delta(gf, alpha, x, l as u64 * q + (k + c) as u64)))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AdmissibleSet {
    pub alpha: Vec<Elt>,
    pub witness: Vec<Elt>,
    pub families: Vec<FamilySpec>,
}

/// A subset of some family's root set with no `F_q*` solution.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UnrealizedSet {
    pub alpha: Vec<Elt>,
    pub families: Vec<FamilySpec>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ViolationKind {
    /// Admissible but on no line or norm circle.
    NoFamily,
    /// Admissible with `n > q + 1`.
    LengthAboveBound,
    /// Admissible with `k ≥ q`.
    DimensionAboveBound,
    /// The Δ-rows `β_0, …, β_{k−1}` of the witness are dependent.
    DeltaRankDeficient,
    /// Norm preimages of the witness do not give a self-dual code.
    WitnessNotSelfDual,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub alpha: Vec<Elt>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct FamilyCounts {
    /// Admissible sets on at least one line.
    pub line: usize,
    /// Admissible sets on at least one norm circle.
    pub norm: usize,
    /// Admissible sets on neither.
    pub none: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassReport {
    pub q: u32,
    pub n: usize,
    pub total: u64,
    pub admissible: Vec<AdmissibleSet>,
    pub counts: FamilyCounts,
    pub unrealized: Vec<UnrealizedSet>,
    pub violations: Vec<Violation>,
}

impl ClassReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// `k`-subsets of `0..universe` in colexicographic order.
#[derive(Debug, Clone)]
pub struct Colex {
    universe: usize,
    cur: Option<Vec<usize>>,
}

impl Colex {
    pub fn new(universe: usize, k: usize) -> Self {
        let cur = (k <= universe).then(|| (0..k).collect());
        Colex { universe, cur }
    }
}

impl Iterator for Colex {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.cur.clone()?;
        let c = self.cur.as_mut().unwrap();
        let k = c.len();
        let j = (0..k).find(|&j| {
            let limit = if j + 1 < k { c[j + 1] } else { self.universe };
            c[j] + 1 < limit
        });
        match j {
            Some(j) => {
                c[j] += 1;
                for (i, slot) in c.iter_mut().enumerate().take(j) {
                    *slot = i;
                }
            }
            None => self.cur = None,
        }
        Some(out)
    }
}

struct SubsetOutcome {
    alpha: Vec<Elt>,
    witness: Option<Vec<Elt>>,
    families: Vec<FamilySpec>,
    rank_ok: bool,
    code_ok: bool,
}

fn examine(gf: &FieldTower, alpha: Vec<Elt>, limits: &Limits) -> Result<SubsetOutcome> {
    let witness = lemma1_solve(gf, &alpha, limits.max_kernel)?;
    let families = family_match(gf, &alpha);
    let (mut rank_ok, mut code_ok) = (true, true);
    if let Some(x) = &witness {
        let k = alpha.len() / 2;
        rank_ok = delta_rank_matrix(gf, &alpha, x)?.rank(gf) == k;
        let v: Vec<Elt> = x.iter().map(|&c| gf.solve_norm(c)[0]).collect();
        code_ok = GrsCode::new(gf, k, alpha.clone(), v)?.is_hermitian_self_dual();
    }
    Ok(SubsetOutcome { alpha, witness, families, rank_ok, code_ok })
}

/// Visits every `n`-subset of `F_{q²}` and records which admit a self-dual
/// code, together with the family each one lies on. `jobs` bounds the worker
/// threads (`None` uses the global pool); the report is identical either way.
pub fn classify(gf: &FieldTower, n: usize, limits: &Limits, jobs: Option<usize>) -> Result<ClassReport> {
    if !n.is_multiple_of(2) {
        return Err(Error::NotEven(n));
    }
    if n == 0 {
        return Err(Error::InvalidCode("empty evaluation set".into()));
    }
    let universe = gf.order() as usize;
    let total = binomial(universe as u64, n as u64);
    if total > limits.max_subsets as u128 {
        return Err(Error::TooManySubsets { count: total, cap: limits.max_subsets });
    }

    let run = || -> Result<Vec<SubsetOutcome>> {
        const BATCH: usize = 4096;
        let mut subsets = Colex::new(universe, n);
        let mut out = Vec::new();
        loop {
            let batch: Vec<Vec<usize>> = subsets.by_ref().take(BATCH).collect();
            if batch.is_empty() {
                return Ok(out);
            }
            let results: Vec<Result<SubsetOutcome>> = batch
                .into_par_iter()
                .map(|s| {
                    let alpha = s.into_iter().map(|i| Elt::raw(i as u32)).collect();
                    examine(gf, alpha, limits)
                })
                .collect();
            for r in results {
                let r = r?;
                // non-admissible sets off every family carry no information
                if r.witness.is_some() || !r.families.is_empty() {
                    out.push(r);
                }
            }
        }
    };
    let outcomes = match jobs {
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j.max(1))
            .build()
            .map_err(|e| Error::VerificationFailed(format!("thread pool: {e}")))?
            .install(run)?,
        None => run()?,
    };

    let q = gf.q();
    let k = n / 2;
    let mut report = ClassReport {
        q,
        n,
        total: total as u64,
        admissible: Vec::new(),
        counts: FamilyCounts::default(),
        unrealized: Vec::new(),
        violations: Vec::new(),
    };
    for o in outcomes {
        let Some(witness) = o.witness else {
            report.unrealized.push(UnrealizedSet { alpha: o.alpha, families: o.families });
            continue;
        };
        let mut flag = |kind| report.violations.push(Violation { kind, alpha: o.alpha.clone() });
        if o.families.is_empty() {
            flag(ViolationKind::NoFamily);
        }
        if n > q as usize + 1 {
            flag(ViolationKind::LengthAboveBound);
        }
        if k >= q as usize {
            flag(ViolationKind::DimensionAboveBound);
        }
        if !o.rank_ok {
            flag(ViolationKind::DeltaRankDeficient);
        }
        if !o.code_ok {
            flag(ViolationKind::WitnessNotSelfDual);
        }
        let has = |kind| o.families.iter().any(|f| f.kind == kind);
        if has(FamilyKind::Line) {
            report.counts.line += 1;
        }
        if has(FamilyKind::Norm) {
            report.counts.norm += 1;
        }
        if o.families.is_empty() {
            report.counts.none += 1;
        }
        report.admissible.push(AdmissibleSet { alpha: o.alpha, witness, families: o.families });
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::construction2;

    fn f9() -> FieldTower {
        FieldTower::new(3, 1).unwrap()
    }

    fn fourth_roots(t: &FieldTower) -> Vec<Elt> {
        let mut r = vec![Elt::ONE, t.from_int(2), t.theta(), t.mul(t.from_int(2), t.theta())];
        r.sort();
        r
    }

    #[test]
    fn colex_order_and_count() {
        let all: Vec<Vec<usize>> = Colex::new(4, 2).collect();
        assert_eq!(all, vec![vec![0, 1], vec![0, 2], vec![1, 2], vec![0, 3], vec![1, 3], vec![2, 3]]);
        assert_eq!(Colex::new(9, 6).count() as u128, binomial(9, 6));
        assert_eq!(Colex::new(3, 4).count(), 0);
        assert_eq!(binomial(16, 6), 8008);
    }

    #[test]
    fn lemma1_pairs() {
        let t = f9();
        let mut count = 0;
        for s in Colex::new(9, 2) {
            let alpha: Vec<Elt> = s.iter().map(|&i| t.elt(i as u64).unwrap()).collect();
            let w = lemma1_solve(&t, &alpha, 1 << 20).unwrap().unwrap();
            assert_eq!(w, vec![Elt::ONE, t.from_int(2)]);
            count += 1;
        }
        assert_eq!(count, 36);
    }

    #[test]
    fn lemma1_unit_circle_matches_construction() {
        let t = f9();
        let alpha = fourth_roots(&t);
        let w = lemma1_solve(&t, &alpha, 1 << 20).unwrap().unwrap();
        let sys = lemma1_system(&t, &alpha).unwrap();
        assert!(sys.mul_vec(&t, &w).unwrap().iter().all(|e| e.is_zero()));
        let (code, _) = construction2(&t, Elt::ZERO, Elt::ONE, &alpha).unwrap();
        let x: Vec<Elt> = code.v().iter().map(|&v| t.norm(v)).collect();
        assert!(sys.mul_vec(&t, &x).unwrap().iter().all(|e| e.is_zero()));
    }

    #[test]
    fn lemma1_errors() {
        let t = f9();
        assert_eq!(lemma1_solve(&t, &[Elt::ONE], 10), Err(Error::NotEven(1)));
        let alpha: Vec<Elt> = t.elements().take(2).collect();
        assert!(matches!(lemma1_solve(&t, &alpha, 2), Err(Error::KernelTooLarge { dim: 1, .. })));
    }

    #[test]
    fn family_match_examples() {
        let t = f9();
        let f = family_match(&t, &[Elt::ZERO, Elt::ONE]);
        assert_eq!(f[0], FamilySpec::line(Elt::ONE, Elt::ZERO));
        let f = family_match(&t, &fourth_roots(&t));
        assert!(f.contains(&FamilySpec::norm(Elt::ZERO, Elt::ONE)));
        assert!(f.iter().all(|s| s.kind == FamilyKind::Norm));
    }

    #[test]
    fn delta_sequence_examples() {
        let t = f9();
        let zero = delta_sequence(&t, &[Elt::ONE, t.theta()], &[Elt::ZERO; 2], 6).unwrap();
        assert!(zero.values.iter().all(|e| e.is_zero()));
        let e = t.exp(3);
        let geo = delta_sequence(&t, &[e], &[Elt::ONE], 10).unwrap();
        for (i, &d) in geo.values.iter().enumerate() {
            assert_eq!(d, t.pow(e, i as u64));
        }
        let s = delta_sequence(&t, &[Elt::ONE, t.from_int(2)], &[Elt::ONE; 2], 6).unwrap();
        let two = t.from_int(2);
        assert_eq!(s.values, vec![two, Elt::ZERO, two, Elt::ZERO, two, Elt::ZERO]);
        assert_eq!(s.value_at(&t, 101), Elt::ZERO);
        assert!(matches!(delta_sequence(&t, &[Elt::ONE], &[Elt::ONE; 2], 3), Err(Error::LengthMismatch { .. })));
    }

    #[test]
    fn companion_examples() {
        let t = f9();
        let g = Poly::from_coeffs(vec![t.from_int(-1), Elt::ZERO, Elt::ONE]);
        let c = companion_matrix(&t, &g).unwrap();
        assert_eq!(c.data(), &[Elt::ZERO, Elt::ONE, Elt::ONE, Elt::ZERO]);
        let e = t.exp(5);
        let lin = Poly::from_coeffs(vec![t.neg(e), Elt::ONE]);
        assert_eq!(companion_matrix(&t, &lin).unwrap().data(), &[e]);
        assert_eq!(companion_matrix(&t, &Poly::constant(t.from_int(2))), Err(Error::NotMonic));
        assert_eq!(companion_matrix(&t, &Poly::one()), Err(Error::ConstantPolynomial));

        let alpha = fourth_roots(&t);
        let g = Poly::from_roots(&t, &alpha).unwrap();
        let c = companion_matrix(&t, &g).unwrap();
        assert_eq!(c.row(3), &[Elt::ONE, Elt::ZERO, Elt::ZERO, Elt::ZERO]);
        for &a in &alpha {
            let ev: Vec<Elt> = (0..4).map(|i| t.pow(a, i)).collect();
            let tv = c.mul_vec(&t, &ev).unwrap();
            assert_eq!(tv, ev.iter().map(|&x| t.mul(a, x)).collect::<Vec<_>>());
        }
    }

    #[test]
    fn classify_small_runs() {
        let t = f9();
        let limits = Limits::default();
        let r6 = classify(&t, 6, &limits, None).unwrap();
        assert_eq!((r6.total, r6.admissible.len()), (84, 0));
        let r2 = classify(&t, 2, &limits, Some(2)).unwrap();
        assert_eq!((r2.total, r2.admissible.len()), (36, 36));
        assert!(r2.is_clean());
        assert!(r2.admissible.iter().all(|s| s.families.iter().any(|f| f.kind == FamilyKind::Line)));
        assert_eq!(r2.counts.line, 36);
        assert_eq!(classify(&t, 3, &limits, None).unwrap_err(), Error::NotEven(3));
        let tight = Limits { max_subsets: 10, ..limits };
        assert!(matches!(classify(&t, 2, &tight, None), Err(Error::TooManySubsets { .. })));
    }

    #[test]
    fn classify_is_independent_of_thread_count() {
        let t = FieldTower::new(2, 2).unwrap();
        let limits = Limits::default();
        let a = classify(&t, 4, &limits, Some(1)).unwrap();
        let b = classify(&t, 4, &limits, Some(4)).unwrap();
        assert_eq!(a, b);
    }
}
