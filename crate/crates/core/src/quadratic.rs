//! Quadratic and mixed system-noise bilinear operators.
//!
//! `QuadraticOp` stores normal-ordered system pairs (canonical index order,
//! reordering constants absorbed into the identity coefficient) plus a linear
//! remainder; this covers the damping generators, the doubled Hamiltonian and
//! every contracted martingale square. `MixedBilinearOp` holds the noise-
//! linear martingales: one system factor times one same-step increment per
//! term, with the displayed factor order recorded per term.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::expectation::PhysicalMoments;
use crate::labels::{check_same_model, system_commutator, Model, NoiseKind, SystemLabel};
use crate::linear::LinearOp;
use crate::noise::NoiseTables;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Bilinear form over system labels in canonical normal-ordered storage,
/// plus a linear part.
#[derive(Debug, Clone)]
pub struct QuadraticOp {
    model: Model,
    /// `pairs[i][j]` multiplies `label_i · label_j`; only `i <= j` is used.
    pairs: [[Complex64; 4]; 4],
    linear: LinearOp,
}

impl QuadraticOp {
    pub fn zero(model: Model) -> Self {
        QuadraticOp { model, pairs: [[ZERO; 4]; 4], linear: LinearOp::zero(model) }
    }

    pub fn model(&self) -> Model {
        self.model
    }

    pub fn linear(&self) -> &LinearOp {
        &self.linear
    }

    pub fn linear_mut(&mut self) -> &mut LinearOp {
        &mut self.linear
    }

    /// Adds `c · s1 s2`, reordering into canonical storage through the CCR:
    /// `s1 s2 = s2 s1 + [s1, s2]`.
    pub fn add_pair(&mut self, s1: SystemLabel, s2: SystemLabel, c: Complex64) {
        assert_eq!(s1.model(), self.model, "system label from a different alphabet");
        assert_eq!(s2.model(), self.model, "system label from a different alphabet");
        if c == ZERO {
            return;
        }
        let (i, j) = (s1.index(), s2.index());
        if i <= j {
            self.pairs[i][j] += c;
        } else {
            self.pairs[j][i] += c;
            self.linear.add_c0(c * system_commutator(s1, s2));
        }
    }

    /// Canonical coefficient of the ordered pair `(s1, s2)`, `s1.index() <= s2.index()`.
    pub fn pair_coeff(&self, s1: SystemLabel, s2: SystemLabel) -> Complex64 {
        debug_assert!(s1.index() <= s2.index());
        self.pairs[s1.index()][s2.index()]
    }

    /// Adds `c · A · B` for two system-only linear expansions.
    pub fn add_product(&mut self, a: &LinearOp, b: &LinearOp, c: Complex64) -> Result<()> {
        check_same_model(a.model(), self.model, "quadratic product")?;
        check_same_model(b.model(), self.model, "quadratic product")?;
        if !a.noise_is_empty() || !b.noise_is_empty() {
            return Err(Error::invalid_input(
                "quadratic product requires noise-free factors; contract mixed bilinears instead",
            ));
        }
        let labels = self.model.system_label_list();
        for &si in labels {
            let ca = a.sys_coeff(si);
            if ca == ZERO {
                continue;
            }
            for &sj in labels {
                let cb = b.sys_coeff(sj);
                if cb != ZERO {
                    self.add_pair(si, sj, c * ca * cb);
                }
            }
        }
        // identity cross terms: a0·B contributes a0·b0 + a0·Bs, then b0·As
        self.linear.add_scaled(b, c * a.c0());
        let mut sys_of_a = a.clone();
        sys_of_a.add_c0(-a.c0());
        self.linear.add_scaled(&sys_of_a, c * b.c0());
        Ok(())
    }

    pub fn add_scaled(&mut self, other: &QuadraticOp, c: Complex64) {
        assert_eq!(other.model, self.model, "mixed alphabets in quadratic combination");
        for i in 0..4 {
            for j in 0..4 {
                self.pairs[i][j] += c * other.pairs[i][j];
            }
        }
        self.linear.add_scaled(&other.linear, c);
    }

    pub fn scale(&mut self, c: Complex64) {
        for i in 0..4 {
            for j in 0..4 {
                self.pairs[i][j] *= c;
            }
        }
        self.linear.scale(c);
    }

    pub fn tilde(&self) -> QuadraticOp {
        let mut out = QuadraticOp::zero(self.model);
        for i in 0..4 {
            for j in 0..4 {
                let c = self.pairs[i][j];
                if c != ZERO {
                    let s1 = SystemLabel::from_index(self.model, i).tilde();
                    let s2 = SystemLabel::from_index(self.model, j).tilde();
                    out.add_pair(s1, s2, c.conj());
                }
            }
        }
        let lin = self.linear.tilde();
        out.linear.add_scaled(&lin, Complex64::new(1.0, 0.0));
        out
    }

    /// Formal Hermitian conjugate: pair order reversed, labels daggered,
    /// coefficients conjugated; result re-canonicalized.
    pub fn adjoint(&self) -> QuadraticOp {
        let mut out = QuadraticOp::zero(self.model);
        for i in 0..4 {
            for j in 0..4 {
                let c = self.pairs[i][j];
                if c != ZERO {
                    let s1 = SystemLabel::from_index(self.model, i);
                    let s2 = SystemLabel::from_index(self.model, j);
                    out.add_pair(s2.dagger(), s1.dagger(), c.conj());
                }
            }
        }
        let lin = self.linear.dagger();
        out.linear.add_scaled(&lin, Complex64::new(1.0, 0.0));
        out
    }

    /// Bra projection `⟨⟨1| Q` as an operator on the physical sector: every
    /// stored pair is projected, re-normal-ordered through the physical CCR,
    /// and accumulated; probability conservation of a damping generator shows
    /// up as this vanishing identically.
    pub fn bra_projected(&self) -> QuadraticOp {
        let mut out = QuadraticOp::zero(self.model);
        for i in 0..4 {
            for j in 0..4 {
                let c = self.pairs[i][j];
                if c != ZERO {
                    let s1 = SystemLabel::from_index(self.model, i);
                    let s2 = SystemLabel::from_index(self.model, j);
                    let (q1, q2) = crate::expectation::project_pair(s1, s2);
                    out.add_pair(q1, q2, c);
                }
            }
        }
        let lin = self.linear.project();
        out.linear.add_scaled(&lin, Complex64::new(1.0, 0.0));
        out
    }

    /// Expectation against the physical moments; noise labels in the linear
    /// part have zero mean and do not contribute.
    pub fn expectation(&self, moments: &PhysicalMoments) -> Result<Complex64> {
        check_same_model(self.model, moments.model(), "quadratic expectation")?;
        let mut acc = self.linear.c0();
        for i in 0..4 {
            for j in 0..4 {
                let c = self.pairs[i][j];
                if c != ZERO {
                    let s1 = SystemLabel::from_index(self.model, i);
                    let s2 = SystemLabel::from_index(self.model, j);
                    acc += c * moments.pair(s1, s2);
                }
            }
        }
        Ok(acc)
    }

    pub fn max_abs(&self) -> f64 {
        let mut m = self.linear.max_abs();
        for i in 0..4 {
            for j in 0..4 {
                m = m.max(self.pairs[i][j].norm());
            }
        }
        m
    }

    pub fn max_abs_diff(a: &QuadraticOp, b: &QuadraticOp) -> f64 {
        assert_eq!(a.model, b.model, "mixed alphabets in comparison");
        let mut m = LinearOp::max_abs_diff(&a.linear, &b.linear);
        for i in 0..4 {
            for j in 0..4 {
                m = m.max((a.pairs[i][j] - b.pairs[i][j]).norm());
            }
        }
        m
    }
}

/// Which side of the system factor the increment is written on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NoiseSide {
    /// `system · noise`
    Right,
    /// `noise · system`
    Left,
}

/// Sum of terms `c · s · dk` (or `c · dk · s`) with all increments at one
/// grid step. Increments commute with system operators, so the side only
/// records the normal-ordered display; contraction order between two factors
/// is always the product order of their increments.
#[derive(Debug, Clone)]
pub struct MixedBilinearOp {
    model: Model,
    step: usize,
    /// `terms[sys_index][kind_index][side]`
    terms: [[[Complex64; 2]; 4]; 4],
}

impl MixedBilinearOp {
    pub fn zero(model: Model, step: usize) -> Self {
        MixedBilinearOp { model, step, terms: [[[ZERO; 2]; 4]; 4] }
    }

    pub fn model(&self) -> Model {
        self.model
    }

    pub fn step(&self) -> usize {
        self.step
    }

    pub fn add_term(&mut self, sys: SystemLabel, kind: NoiseKind, side: NoiseSide, c: Complex64) {
        assert_eq!(sys.model(), self.model, "system label from a different alphabet");
        assert_eq!(kind.model(), self.model, "noise kind from a different alphabet");
        self.terms[sys.index()][kind.index()][side as usize] += c;
    }

    /// Adds `c · sys_op ⊗ noise_op` where `sys_op` is system-only and
    /// `noise_op` carries increments at this operator's step only.
    pub fn add_outer(
        &mut self,
        sys_op: &LinearOp,
        noise_op: &LinearOp,
        side: NoiseSide,
        c: Complex64,
    ) -> Result<()> {
        check_same_model(sys_op.model(), self.model, "mixed bilinear")?;
        check_same_model(noise_op.model(), self.model, "mixed bilinear")?;
        if !sys_op.noise_is_empty() || sys_op.c0() != ZERO {
            return Err(Error::invalid_input("system factor must be a pure system expansion"));
        }
        if noise_op.c0() != ZERO
            || self.model.system_label_list().iter().any(|&s| noise_op.sys_coeff(s) != ZERO)
        {
            return Err(Error::invalid_input("noise factor must be a pure increment expansion"));
        }
        for (label, cn) in noise_op.iter_noise() {
            if label.step != self.step {
                return Err(Error::invalid_input(format!(
                    "increment at step {} in a bilinear attached to step {}",
                    label.step, self.step
                )));
            }
            for &s in self.model.system_label_list() {
                let cs = sys_op.sys_coeff(s);
                if cs != ZERO {
                    self.add_term(s, label.kind, side, c * cs * cn);
                }
            }
        }
        Ok(())
    }

    /// Coefficient of `(sys, kind)` summed over both displayed orders.
    pub fn collapsed_coeff(&self, sys: SystemLabel, kind: NoiseKind) -> Complex64 {
        let t = &self.terms[sys.index()][kind.index()];
        t[0] + t[1]
    }

    pub fn scale(&mut self, c: Complex64) {
        for s in &mut self.terms {
            for k in s {
                k[0] *= c;
                k[1] *= c;
            }
        }
    }

    pub fn add_scaled(&mut self, other: &MixedBilinearOp, c: Complex64) {
        assert_eq!(other.model, self.model, "mixed alphabets");
        assert_eq!(other.step, self.step, "mixed steps");
        for i in 0..4 {
            for j in 0..4 {
                self.terms[i][j][0] += c * other.terms[i][j][0];
                self.terms[i][j][1] += c * other.terms[i][j][1];
            }
        }
    }

    /// Tilde conjugation; factor order is preserved (`(A₁A₂)~ = Ã₁Ã₂`).
    pub fn tilde(&self) -> MixedBilinearOp {
        let mut out = MixedBilinearOp::zero(self.model, self.step);
        for i in 0..4 {
            let s = SystemLabel::from_index(self.model, i);
            for j in 0..self.model.noise_kinds() {
                let k = NoiseKind::from_index(self.model, j);
                for side in 0..2 {
                    let c = self.terms[i][j][side];
                    if c != ZERO {
                        out.terms[s.tilde().index()][k.tilde().index()][side] += c.conj();
                    }
                }
            }
        }
        out
    }

    /// Formal Hermitian conjugate; the displayed factor order flips.
    pub fn adjoint(&self) -> MixedBilinearOp {
        let mut out = MixedBilinearOp::zero(self.model, self.step);
        for i in 0..4 {
            let s = SystemLabel::from_index(self.model, i);
            for j in 0..self.model.noise_kinds() {
                let k = NoiseKind::from_index(self.model, j);
                for side in 0..2 {
                    let c = self.terms[i][j][side];
                    if c != ZERO {
                        out.terms[s.dagger().index()][k.dagger().index()][1 - side] += c.conj();
                    }
                }
            }
        }
        out
    }

    /// Irrelevant-sector vacuum average `⟨| M |⟩` as a system operator;
    /// single increments have zero mean, so this must vanish for every
    /// martingale.
    pub fn vacuum_expectation(&self, tables: &NoiseTables) -> Result<LinearOp> {
        check_same_model(self.model, tables.model(), "martingale vacuum check")?;
        let mut out = LinearOp::zero(self.model);
        for i in 0..4 {
            let s = SystemLabel::from_index(self.model, i);
            for j in 0..self.model.noise_kinds() {
                let k = NoiseKind::from_index(self.model, j);
                let c = self.terms[i][j][0] + self.terms[i][j][1];
                if c != ZERO {
                    out.add_sys(s, c * tables.single_moment(k));
                }
            }
        }
        Ok(out)
    }

    /// Largest collapsed-coefficient difference; the right comparison for
    /// operator identities since the display order carries no algebraic
    /// content.
    pub fn max_abs_diff_collapsed(a: &MixedBilinearOp, b: &MixedBilinearOp) -> f64 {
        assert_eq!(a.model, b.model, "mixed alphabets in comparison");
        let mut m = 0.0f64;
        for &s in a.model.system_label_list() {
            for &k in a.model.noise_kind_list() {
                m = m.max((a.collapsed_coeff(s, k) - b.collapsed_coeff(s, k)).norm());
            }
        }
        m
    }

    pub fn max_abs(&self) -> f64 {
        let mut m = 0.0f64;
        for s in &self.terms {
            for k in s {
                m = m.max(k[0].norm()).max(k[1].norm());
            }
        }
        m
    }
}

/// Product of two same-step mixed bilinears with the increment pair
/// contracted through the weak-relation table: each cross term
/// `(s₁ n₁)(s₂ n₂)` contributes `s₁ s₂ · ⟨n₁ n₂⟩`. The result is a
/// `QuadraticOp` proportional to `dt`; distinct-step products are rejected
/// rather than silently zeroed.
pub fn multiply_contract(
    a: &MixedBilinearOp,
    b: &MixedBilinearOp,
    tables: &NoiseTables,
) -> Result<QuadraticOp> {
    check_same_model(a.model(), b.model(), "martingale contraction")?;
    check_same_model(a.model(), tables.model(), "martingale contraction")?;
    if a.step() != b.step() {
        return Err(Error::invalid_input(format!(
            "contraction of increments at distinct steps {} and {}",
            a.step(),
            b.step()
        )));
    }
    let model = a.model();
    let mut out = QuadraticOp::zero(model);
    for &s1 in model.system_label_list() {
        for &k1 in model.noise_kind_list() {
            let c1 = a.collapsed_coeff(s1, k1);
            if c1 == ZERO {
                continue;
            }
            for &s2 in model.system_label_list() {
                for &k2 in model.noise_kind_list() {
                    let c2 = b.collapsed_coeff(s2, k2);
                    if c2 == ZERO {
                        continue;
                    }
                    let m = tables.moment_kind(k1, k2);
                    if m != ZERO {
                        out.add_pair(s1, s2, c1 * c2 * m);
                    }
                }
            }
        }
    }
    Ok(out)
}
