//! Vacuum and one-particle expectations.
//!
//! Evaluation order for any bilinear in Heisenberg operators: bra-project the
//! doubled labels onto the physical sector, normal-order the surviving
//! physical pair through the CCR, then apply the diagonal one-particle
//! moments together with the noise pair table. Single generators and
//! off-diagonal pairs have vanishing expectation.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::labels::{check_same_model, system_commutator, Model, SystemLabel};
use crate::linear::LinearOp;
use crate::noise::NoiseTables;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Initial occupation of the relevant oscillator, `n(0)`.
#[derive(Debug, Clone, Copy)]
pub struct InitialState {
    pub n0: f64,
}

impl InitialState {
    pub fn new(n0: f64) -> Result<Self> {
        if !(n0 >= 0.0) || !n0.is_finite() {
            return Err(Error::invalid_parameter(format!("n0 must be nonnegative, got {n0}")));
        }
        Ok(InitialState { n0 })
    }
}

/// Diagonal one-particle moments of the physical sector.
///
/// Rotating-wave alphabet: `⟨a†a⟩ = n0`, `⟨aa†⟩ = n0 + 1`, anomalous pairs
/// zero. Position alphabet: the matching occupation-`n0` oscillator moments
/// `⟨x²⟩ = (2n0+1)/(2mω)`, `⟨p²⟩ = (2n0+1)mω/2`, `⟨xp⟩ = -⟨px⟩ = i/2`.
#[derive(Debug, Clone, Copy)]
pub struct PhysicalMoments {
    model: Model,
    n0: f64,
    mass: f64,
    omega: f64,
}

impl PhysicalMoments {
    pub fn rwa(state: InitialState) -> Self {
        PhysicalMoments { model: Model::Rwa, n0: state.n0, mass: 1.0, omega: 1.0 }
    }

    pub fn xx(state: InitialState, mass: f64, omega: f64) -> Result<Self> {
        if !(mass > 0.0) || !(omega > 0.0) {
            return Err(Error::invalid_parameter("xx moments need m > 0 and omega > 0"));
        }
        Ok(PhysicalMoments { model: Model::Xx, n0: state.n0, mass, omega })
    }

    pub fn model(&self) -> Model {
        self.model
    }

    /// Expectation of a single generator; zero for every label.
    pub fn single(&self, _label: SystemLabel) -> Complex64 {
        ZERO
    }

    /// Expectation of an ordered pair after bra projection.
    pub fn pair(&self, s1: SystemLabel, s2: SystemLabel) -> Complex64 {
        let (q1, q2) = project_pair(s1, s2);
        self.physical_pair(q1, q2)
    }

    /// Expectation of an ordered pair of physical labels.
    pub fn physical_pair(&self, q1: SystemLabel, q2: SystemLabel) -> Complex64 {
        debug_assert!(!q1.is_tilde() && !q2.is_tilde());
        use SystemLabel::*;
        match (q1, q2) {
            (ADag, A) => Complex64::new(self.n0, 0.0),
            (A, ADag) => Complex64::new(self.n0 + 1.0, 0.0),
            (A, A) | (ADag, ADag) => ZERO,
            (X, X) => Complex64::new((2.0 * self.n0 + 1.0) / (2.0 * self.mass * self.omega), 0.0),
            (P, P) => Complex64::new((2.0 * self.n0 + 1.0) * self.mass * self.omega / 2.0, 0.0),
            (X, P) => Complex64::new(0.0, 0.5),
            (P, X) => Complex64::new(0.0, -0.5),
            _ => unreachable!("mixed-model physical pair"),
        }
    }
}

/// Bra projection of an ordered pair of doubled labels.
///
/// Tilde labels commute with physical ones, and a tilde pair projects like
/// the adjoint of its physical image, which reverses the order:
/// `⟨1| t₁ s₂ = ⟨1| P(t₁) s₂`, `⟨1| s₁ t₂ = ⟨1| P(t₂) s₁`,
/// `⟨1| t₁ t₂ = ⟨1| P(t₂) P(t₁)`.
pub fn project_pair(s1: SystemLabel, s2: SystemLabel) -> (SystemLabel, SystemLabel) {
    match (s1.is_tilde(), s2.is_tilde()) {
        (false, false) => (s1, s2),
        (true, false) => (s1.project(), s2),
        (false, true) => (s2.project(), s1),
        (true, true) => (s2.project(), s1.project()),
    }
}

/// Full expectation `⟨⟨1| ⟨| A · B |⟩ |0⟩⟩` of a product of two linear
/// expansions. System and noise sectors factorize; single-label expectations
/// vanish, so only identity, system-pair and same-step noise-pair terms
/// survive.
pub fn expect_pair(
    a: &LinearOp,
    b: &LinearOp,
    moments: &PhysicalMoments,
    tables: &NoiseTables,
) -> Result<Complex64> {
    check_same_model(a.model(), b.model(), "pair expectation")?;
    check_same_model(a.model(), moments.model(), "pair expectation")?;
    check_same_model(a.model(), tables.model(), "pair expectation")?;
    let model = a.model();

    let mut acc = a.c0() * b.c0();
    for &si in model.system_label_list() {
        let ca = a.sys_coeff(si);
        if ca == ZERO {
            continue;
        }
        for &sj in model.system_label_list() {
            let cb = b.sys_coeff(sj);
            if cb != ZERO {
                acc += ca * cb * moments.pair(si, sj);
            }
        }
    }

    let k = model.noise_kinds();
    let pairs = tables.moment_pairs();
    let (alo, ahi) = a.noise_range();
    let (blo, bhi) = b.noise_range();
    if alo < ahi && blo < bhi {
        let lo = alo.max(blo) / k;
        let hi = (ahi.min(bhi) + k - 1) / k;
        for step in lo..hi {
            let base = step * k;
            for &(ki, kj, m) in &pairs {
                acc += a.noise_slot(base + ki) * b.noise_slot(base + kj) * m;
            }
        }
    }
    Ok(acc)
}

/// Test-oracle evaluation of an *un-normal-ordered* bilinear `s1 · s2` by
/// direct projection and CCR reordering, bypassing canonical storage.
pub fn raw_pair_expectation(s1: SystemLabel, s2: SystemLabel, moments: &PhysicalMoments) -> Complex64 {
    let (q1, q2) = project_pair(s1, s2);
    // reorder the physical pair into canonical index order before reading
    // the diagonal moments, picking up the CCR constant
    if q1.index() <= q2.index() {
        moments.physical_pair(q1, q2)
    } else {
        moments.physical_pair(q2, q1) + system_commutator(q1, q2)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::labels::{NoiseKind, NoiseLabel, SystemLabel::*};
    use approx::assert_abs_diff_eq;

    #[test]
    fn occupation_examples() {
        let m = PhysicalMoments::rwa(InitialState::new(0.3).unwrap());
        assert_abs_diff_eq!(m.pair(ADag, A).re, 0.3, epsilon = 1e-15);
        assert_abs_diff_eq!(m.pair(A, ADag).re, 1.3, epsilon = 1e-15);
        assert_eq!(m.pair(A, A), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn projected_pairs() {
        let m = PhysicalMoments::rwa(InitialState::new(0.3).unwrap());
        // ⟨⟨1| ã a |0⟩⟩ = ⟨a† a⟩ = n0
        assert_abs_diff_eq!(m.pair(ATil, A).re, 0.3, epsilon = 1e-15);
        // ⟨⟨1| ã† ã |0⟩⟩ = ⟨a† a⟩ = n0  (tilde pair reverses order)
        assert_abs_diff_eq!(m.pair(ATilDag, ATil).re, 0.3, epsilon = 1e-15);
        // ⟨⟨1| a† ã† |0⟩⟩ = ⟨a a†⟩ = n0 + 1
        assert_abs_diff_eq!(m.pair(ADag, ATilDag).re, 1.3, epsilon = 1e-15);
    }

    #[test]
    fn noise_pair_through_expect_pair() {
        let tables = NoiseTables::new(Model::Rwa, 1.0, 1e-3).unwrap();
        let moments = PhysicalMoments::rwa(InitialState::new(0.0).unwrap());
        let a = LinearOp::from_noise(NoiseLabel::new(NoiseKind::DBDag, 4));
        let b = LinearOp::from_noise(NoiseLabel::new(NoiseKind::DB, 4));
        let v = expect_pair(&a, &b, &moments, &tables).unwrap();
        assert_abs_diff_eq!(v.re, 1e-3, epsilon = 1e-18);
        // distinct steps vanish
        let b = LinearOp::from_noise(NoiseLabel::new(NoiseKind::DB, 5));
        assert_eq!(expect_pair(&a, &b, &moments, &tables).unwrap(), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn single_labels_have_zero_expectation() {
        let tables = NoiseTables::new(Model::Rwa, 2.0, 1e-3).unwrap();
        let moments = PhysicalMoments::rwa(InitialState::new(0.7).unwrap());
        let id = LinearOp::identity(Model::Rwa);
        for &s in Model::Rwa.system_label_list() {
            let op = LinearOp::from_system(s);
            assert_eq!(expect_pair(&op, &id, &moments, &tables).unwrap(), Complex64::new(0.0, 0.0));
        }
        let op = LinearOp::from_noise(NoiseLabel::new(NoiseKind::DB, 0));
        assert_eq!(expect_pair(&id, &op, &moments, &tables).unwrap(), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn xx_moments_satisfy_ccr_trace() {
        let m = PhysicalMoments::xx(InitialState::new(1.2).unwrap(), 2.0, 0.7).unwrap();
        // ⟨xp⟩ - ⟨px⟩ = i
        let diff = m.pair(X, P) - m.pair(P, X);
        assert_abs_diff_eq!(diff.im, 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(diff.re, 0.0, epsilon = 1e-15);
    }
}
