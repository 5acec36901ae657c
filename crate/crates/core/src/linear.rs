//! Linear operator expansions over a model's generator alphabet.
//!
//! A `LinearOp` is `c0 · 1 + Σ c_s · s + Σ c_(k,j) · dk_j` with system labels
//! `s` and noise increments `dk_j`. Heisenberg operators of both models stay
//! in this class for all times because the generators are bilinear, so the
//! whole quantum side of the crate is coefficient flow on these vectors.
//!
//! Noise coefficients are stored densely, packed as `step * K + kind`, with
//! an active index range; the per-step Euler updates are then straight
//! slice arithmetic.

use num_complex::Complex64;

use crate::error::Result;
use crate::labels::{check_same_model, system_commutator, Model, NoiseKind, NoiseLabel, SystemLabel};
use crate::noise::NoiseTables;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

#[derive(Debug, Clone, PartialEq)]
pub struct LinearOp {
    model: Model,
    c0: Complex64,
    sys: [Complex64; 4],
    noise: Vec<Complex64>,
    /// Active packed range `[lo, hi)`; entries outside are zero.
    lo: usize,
    hi: usize,
}

impl LinearOp {
    pub fn zero(model: Model) -> Self {
        LinearOp { model, c0: ZERO, sys: [ZERO; 4], noise: Vec::new(), lo: 0, hi: 0 }
    }

    pub fn identity(model: Model) -> Self {
        let mut op = Self::zero(model);
        op.c0 = Complex64::new(1.0, 0.0);
        op
    }

    pub fn from_system(label: SystemLabel) -> Self {
        let mut op = Self::zero(label.model());
        op.sys[label.index()] = Complex64::new(1.0, 0.0);
        op
    }

    pub fn from_noise(label: NoiseLabel) -> Self {
        let mut op = Self::zero(label.model());
        op.add_noise(label, Complex64::new(1.0, 0.0));
        op
    }

    pub fn model(&self) -> Model {
        self.model
    }

    pub fn c0(&self) -> Complex64 {
        self.c0
    }

    pub fn sys_coeff(&self, label: SystemLabel) -> Complex64 {
        debug_assert_eq!(label.model(), self.model);
        self.sys[label.index()]
    }

    pub fn noise_coeff(&self, label: NoiseLabel) -> Complex64 {
        debug_assert_eq!(label.model(), self.model);
        let idx = self.pack(label);
        if idx >= self.lo && idx < self.hi {
            self.noise[idx]
        } else {
            ZERO
        }
    }

    fn pack(&self, label: NoiseLabel) -> usize {
        label.step * self.model.noise_kinds() + label.kind.index()
    }

    pub fn add_c0(&mut self, c: Complex64) {
        self.c0 += c;
    }

    pub fn add_sys(&mut self, label: SystemLabel, c: Complex64) {
        assert_eq!(label.model(), self.model, "system label from a different alphabet");
        self.sys[label.index()] += c;
    }

    pub fn add_noise(&mut self, label: NoiseLabel, c: Complex64) {
        assert_eq!(label.model(), self.model, "noise label from a different alphabet");
        let idx = label.step * self.model.noise_kinds() + label.kind.index();
        self.ensure_range(idx, idx + 1);
        self.noise[idx] += c;
    }

    fn ensure_range(&mut self, lo: usize, hi: usize) {
        if self.lo == self.hi {
            self.lo = lo;
            self.hi = hi;
        } else {
            self.lo = self.lo.min(lo);
            self.hi = self.hi.max(hi);
        }
        if self.noise.len() < self.hi {
            self.noise.resize(self.hi, ZERO);
        }
    }

    /// Active range widened to whole grid steps, for label remappings that
    /// move coefficients between kinds within a step.
    fn step_aligned_range(&self) -> (usize, usize) {
        let k = self.model.noise_kinds();
        ((self.lo / k) * k, self.hi.div_ceil(k) * k)
    }

    pub fn scale(&mut self, c: Complex64) {
        self.c0 *= c;
        for v in &mut self.sys {
            *v *= c;
        }
        for v in &mut self.noise[self.lo..self.hi] {
            *v *= c;
        }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, other: &LinearOp, c: Complex64) {
        assert_eq!(other.model, self.model, "mixed alphabets in linear combination");
        self.c0 += c * other.c0;
        for i in 0..4 {
            self.sys[i] += c * other.sys[i];
        }
        if other.lo < other.hi {
            self.ensure_range(other.lo, other.hi);
            for i in other.lo..other.hi {
                self.noise[i] += c * other.noise[i];
            }
        }
    }

    /// Overwrites `self` with `Σ c_k · term_k`, reusing the noise buffer.
    pub fn set_combination(&mut self, terms: &[(&LinearOp, Complex64)]) {
        let model = terms.first().map(|(op, _)| op.model).unwrap_or(self.model);
        self.model = model;
        self.c0 = ZERO;
        self.sys = [ZERO; 4];
        let lo = terms.iter().filter(|(op, _)| op.lo < op.hi).map(|(op, _)| op.lo).min();
        let hi = terms.iter().filter(|(op, _)| op.lo < op.hi).map(|(op, _)| op.hi).max();
        match (lo, hi) {
            (Some(lo), Some(hi)) => {
                if self.noise.len() < hi {
                    self.noise.resize(hi, ZERO);
                }
                self.noise[lo..hi].fill(ZERO);
                self.lo = lo;
                self.hi = hi;
            }
            _ => {
                self.lo = 0;
                self.hi = 0;
            }
        }
        for &(op, c) in terms {
            self.add_scaled(op, c);
        }
    }

    /// Tilde conjugation: every label maps to its tilde partner and every
    /// coefficient is complex-conjugated. An antilinear involution.
    pub fn tilde(&self) -> LinearOp {
        let mut out = Self::zero(self.model);
        out.c0 = self.c0.conj();
        for i in 0..4 {
            let label = SystemLabel::from_index(self.model, i);
            out.sys[label.tilde().index()] = self.sys[i].conj();
        }
        if self.lo < self.hi {
            let (alo, ahi) = self.step_aligned_range();
            out.ensure_range(alo, ahi);
            let k = self.model.noise_kinds();
            for idx in self.lo..self.hi {
                let step = idx / k;
                let kind = NoiseKind::from_index(self.model, idx % k);
                out.noise[step * k + kind.tilde().index()] = self.noise[idx].conj();
            }
        }
        out
    }

    /// Formal Hermitian conjugate: labels daggered, coefficients conjugated.
    pub fn dagger(&self) -> LinearOp {
        let mut out = Self::zero(self.model);
        out.c0 = self.c0.conj();
        for i in 0..4 {
            let label = SystemLabel::from_index(self.model, i);
            out.sys[label.dagger().index()] = self.sys[i].conj();
        }
        if self.lo < self.hi {
            let (alo, ahi) = self.step_aligned_range();
            out.ensure_range(alo, ahi);
            let k = self.model.noise_kinds();
            for idx in self.lo..self.hi {
                let step = idx / k;
                let kind = NoiseKind::from_index(self.model, idx % k);
                out.noise[step * k + kind.dagger().index()] += self.noise[idx].conj();
            }
        }
        out
    }

    /// Bra-vacuum projection `⟨⟨1| ·`: tilde labels fold onto their physical
    /// images, so the result carries physical labels only.
    pub fn project(&self) -> LinearOp {
        let mut out = Self::zero(self.model);
        out.c0 = self.c0;
        for i in 0..4 {
            let label = SystemLabel::from_index(self.model, i);
            out.sys[label.project().index()] += self.sys[i];
        }
        if self.lo < self.hi {
            let (alo, ahi) = self.step_aligned_range();
            out.ensure_range(alo, ahi);
            let k = self.model.noise_kinds();
            for idx in self.lo..self.hi {
                let step = idx / k;
                let kind = NoiseKind::from_index(self.model, idx % k);
                out.noise[step * k + kind.project().index()] += self.noise[idx];
            }
        }
        out
    }

    /// Largest coefficient magnitude.
    pub fn max_abs(&self) -> f64 {
        let mut m = self.c0.norm();
        for v in &self.sys {
            m = m.max(v.norm());
        }
        for v in &self.noise[self.lo..self.hi] {
            m = m.max(v.norm());
        }
        m
    }

    /// Largest coefficient magnitude of `a - b`.
    pub fn max_abs_diff(a: &LinearOp, b: &LinearOp) -> f64 {
        assert_eq!(a.model, b.model, "mixed alphabets in comparison");
        let mut m = (a.c0 - b.c0).norm();
        for i in 0..4 {
            m = m.max((a.sys[i] - b.sys[i]).norm());
        }
        let lo = a.lo.min(b.lo);
        let hi = a.hi.max(b.hi);
        for idx in lo..hi {
            let va = if idx >= a.lo && idx < a.hi { a.noise[idx] } else { ZERO };
            let vb = if idx >= b.lo && idx < b.hi { b.noise[idx] } else { ZERO };
            m = m.max((va - vb).norm());
        }
        m
    }

    pub fn is_zero(&self, tol: f64) -> bool {
        self.max_abs() <= tol
    }

    /// Nonzero noise coefficients with their labels.
    pub fn iter_noise(&self) -> impl Iterator<Item = (NoiseLabel, Complex64)> + '_ {
        let k = self.model.noise_kinds();
        (self.lo..self.hi).filter_map(move |idx| {
            let v = self.noise[idx];
            if v == ZERO {
                None
            } else {
                Some((NoiseLabel::new(NoiseKind::from_index(self.model, idx % k), idx / k), v))
            }
        })
    }

    /// True if the expansion carries no noise labels.
    pub fn noise_is_empty(&self) -> bool {
        self.noise[self.lo..self.hi].iter().all(|v| *v == ZERO)
    }

    pub(crate) fn noise_range(&self) -> (usize, usize) {
        (self.lo, self.hi)
    }

    pub(crate) fn noise_slot(&self, idx: usize) -> Complex64 {
        if idx >= self.lo && idx < self.hi {
            self.noise[idx]
        } else {
            ZERO
        }
    }
}

/// Commutator of two linear expansions. Closed as a c-number: system labels
/// commute onto the CCR table, increments onto the noise commutator table,
/// and system labels commute with all increments.
pub fn commutator_linear(a: &LinearOp, b: &LinearOp, tables: &NoiseTables) -> Result<Complex64> {
    check_same_model(a.model, b.model, "commutator")?;
    check_same_model(a.model, tables.model(), "commutator")?;
    let mut acc = ZERO;
    for i in 0..4 {
        if a.sys[i] == ZERO {
            continue;
        }
        let si = SystemLabel::from_index(a.model, i);
        for j in 0..4 {
            if b.sys[j] == ZERO {
                continue;
            }
            let sj = SystemLabel::from_index(b.model, j);
            let c = system_commutator(si, sj);
            if c != ZERO {
                acc += a.sys[i] * b.sys[j] * c;
            }
        }
    }
    let k = a.model.noise_kinds();
    let pairs = tables.commutator_pairs();
    let lo = a.lo.max(b.lo) / k;
    let hi = (a.hi.min(b.hi) + k - 1) / k;
    for step in lo..hi {
        let base = step * k;
        for &(ki, kj, c) in &pairs {
            acc += a.noise_slot(base + ki) * b.noise_slot(base + kj) * c;
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::labels::{NoiseKind::*, SystemLabel::*};
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn commutator_ccr_examples() {
        let t = NoiseTables::new(Model::Rwa, 1.0, 1e-3).unwrap();
        let a = LinearOp::from_system(A);
        let adag = LinearOp::from_system(ADag);
        let atildag = LinearOp::from_system(ATilDag);
        assert_eq!(commutator_linear(&a, &adag, &t).unwrap(), c(1.0, 0.0));
        assert_eq!(commutator_linear(&a, &atildag, &t).unwrap(), ZERO);
        let db = LinearOp::from_noise(NoiseLabel::new(DB, 2));
        let dbdag = LinearOp::from_noise(NoiseLabel::new(DBDag, 2));
        assert_abs_diff_eq!(commutator_linear(&db, &dbdag, &t).unwrap().re, 1e-3, epsilon = 1e-18);
    }

    #[test]
    fn commutator_rejects_mixed_alphabets() {
        let t = NoiseTables::new(Model::Rwa, 1.0, 1e-3).unwrap();
        let a = LinearOp::from_system(A);
        let x = LinearOp::from_system(X);
        assert!(commutator_linear(&a, &x, &t).is_err());
    }

    #[test]
    fn system_and_noise_commute() {
        let t = NoiseTables::new(Model::Rwa, 0.3, 1e-2).unwrap();
        let a = LinearOp::from_system(A);
        let db = LinearOp::from_noise(NoiseLabel::new(DBDag, 0));
        assert_eq!(commutator_linear(&a, &db, &t).unwrap(), ZERO);
    }

    #[test]
    fn tilde_examples() {
        // (i·a)~ = -i·ã
        let mut op = LinearOp::zero(Model::Rwa);
        op.add_sys(A, c(0.0, 1.0));
        let til = op.tilde();
        assert_eq!(til.sys_coeff(ATil), c(0.0, -1.0));
        assert_eq!(til.sys_coeff(A), ZERO);
    }

    #[test]
    fn projection_examples() {
        // ã† → a ; a → a ; dB̃† → dB at the same step
        let p = LinearOp::from_system(ATilDag).project();
        assert_eq!(p.sys_coeff(A), c(1.0, 0.0));
        assert!(p.sys_coeff(ATilDag) == ZERO && p.sys_coeff(ADag) == ZERO);
        let p = LinearOp::from_system(A).project();
        assert_eq!(p.sys_coeff(A), c(1.0, 0.0));
        let p = LinearOp::from_noise(NoiseLabel::new(DBTilDag, 7)).project();
        assert_eq!(p.noise_coeff(NoiseLabel::new(DB, 7)), c(1.0, 0.0));
        assert_eq!(p.noise_coeff(NoiseLabel::new(DBTilDag, 7)), ZERO);
    }

    #[test]
    fn gamma_plus_projects_to_zero() {
        // ⟨1|(a† - ã) = a - a = 0
        let mut g = LinearOp::from_system(ADag);
        g.add_sys(ATil, c(-1.0, 0.0));
        assert_eq!(g.project().max_abs(), 0.0);
    }

    fn arb_linear_op(model: Model, n_steps: usize) -> impl Strategy<Value = LinearOp> {
        let k = model.noise_kinds();
        let coeff = (-1.0f64..1.0, -1.0f64..1.0).prop_map(|(re, im)| Complex64::new(re, im));
        (
            coeff.clone(),
            proptest::collection::vec(coeff.clone(), 4),
            proptest::collection::vec(coeff, k * n_steps),
        )
            .prop_map(move |(c0, sys, noise)| {
                let mut op = LinearOp::zero(model);
                op.add_c0(c0);
                for (i, v) in sys.into_iter().enumerate() {
                    op.add_sys(SystemLabel::from_index(model, i), v);
                }
                for (idx, v) in noise.into_iter().enumerate() {
                    let label = NoiseLabel::new(NoiseKind::from_index(model, idx % k), idx / k);
                    op.add_noise(label, v);
                }
                op
            })
    }

    proptest! {
        #[test]
        fn tilde_is_an_involution(op in arb_linear_op(Model::Rwa, 3)) {
            let back = op.tilde().tilde();
            prop_assert!(LinearOp::max_abs_diff(&op, &back) == 0.0);
        }

        #[test]
        fn tilde_is_antilinear(op in arb_linear_op(Model::Xx, 2)) {
            let factor = Complex64::new(0.3, -0.8);
            let mut scaled = op.clone();
            scaled.scale(factor);
            let lhs = scaled.tilde();
            let mut rhs = op.tilde();
            rhs.scale(factor.conj());
            prop_assert!(LinearOp::max_abs_diff(&lhs, &rhs) < 1e-12);
        }

        #[test]
        fn commutator_antisymmetry(
            a in arb_linear_op(Model::Rwa, 2),
            b in arb_linear_op(Model::Rwa, 2),
        ) {
            let t = NoiseTables::new(Model::Rwa, 0.8, 1e-3).unwrap();
            let ab = commutator_linear(&a, &b, &t).unwrap();
            let ba = commutator_linear(&b, &a, &t).unwrap();
            prop_assert!((ab + ba).norm() < 1e-12);
        }

        #[test]
        fn projection_commutes_with_tilde(op in arb_linear_op(Model::Rwa, 2)) {
            // ⟨⟨1| is tilde invariant, so projecting the tilde conjugate equals
            // the conjugated projection.
            let lhs = op.tilde().project();
            let mut rhs = LinearOp::zero(Model::Rwa);
            let proj = op.project();
            rhs.add_c0(proj.c0().conj());
            for &s in Model::Rwa.system_label_list() {
                rhs.add_sys(s.tilde().project(), proj.sys_coeff(s).conj());
            }
            for (label, v) in proj.iter_noise() {
                rhs.add_noise(NoiseLabel::new(label.kind.tilde().project(), label.step), v.conj());
            }
            prop_assert!(LinearOp::max_abs_diff(&lhs, &rhs) < 1e-12);
        }
    }
}
