//! Weak-relation tables for the discretized quantum Brownian motion.
//!
//! Products of same-step increments are never kept as operators: inside any
//! vacuum expectation they reduce to the pair-expectation table below, with
//! distinct-step pairs vanishing (`delta_{jk}` structure). The nonzero
//! rotating-wave pairs are
//!
//! ```text
//! dB† dB   = n̄ dt        dB  dB†  = (n̄+1) dt
//! dB̃  dB   = n̄ dt        dB̃† dB†  = (n̄+1) dt
//! ```
//!
//! plus their tilde conjugates; the position-coupled model has
//! `dX dX = dX dX̃ = (n̄ + 1/2) dt` for every ordered pair. Commutators are
//! the antisymmetrized moments, e.g. `[dB, dB†] = dt` independently of `n̄`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::labels::{check_same_model, Model, NoiseKind, NoiseLabel};

const MAX_KINDS: usize = 4;

/// Pair-expectation and commutator tables for one model at fixed `n̄`, `dt`.
///
/// Immutable after construction; shared freely across workers.
#[derive(Debug, Clone)]
pub struct NoiseTables {
    model: Model,
    nbar: f64,
    dt: f64,
    moment: [[Complex64; MAX_KINDS]; MAX_KINDS],
    commutator: [[Complex64; MAX_KINDS]; MAX_KINDS],
}

impl NoiseTables {
    pub fn new(model: Model, nbar: f64, dt: f64) -> Result<Self> {
        if !(nbar >= 0.0) || !nbar.is_finite() {
            return Err(Error::invalid_parameter(format!("nbar must be nonnegative, got {nbar}")));
        }
        if !(dt > 0.0) || !dt.is_finite() {
            return Err(Error::invalid_parameter(format!("dt must be positive, got {dt}")));
        }
        let zero = Complex64::new(0.0, 0.0);
        let re = |x: f64| Complex64::new(x, 0.0);
        let mut moment = [[zero; MAX_KINDS]; MAX_KINDS];
        match model {
            Model::Rwa => {
                use NoiseKind::*;
                let n = re(nbar * dt);
                let np1 = re((nbar + 1.0) * dt);
                moment[DBDag.index()][DB.index()] = n;
                moment[DB.index()][DBDag.index()] = np1;
                moment[DBTil.index()][DB.index()] = n;
                moment[DBTilDag.index()][DBDag.index()] = np1;
                // tilde conjugation closure: moment(x̃, ỹ) = moment(x, y)*
                moment[DBTilDag.index()][DBTil.index()] = n;
                moment[DBTil.index()][DBTilDag.index()] = np1;
                moment[DB.index()][DBTil.index()] = n;
                moment[DBDag.index()][DBTilDag.index()] = np1;
            }
            Model::Xx => {
                use NoiseKind::*;
                let half = re((nbar + 0.5) * dt);
                for x in [DX, DXTil] {
                    for y in [DX, DXTil] {
                        moment[x.index()][y.index()] = half;
                    }
                }
            }
        }
        let mut commutator = [[zero; MAX_KINDS]; MAX_KINDS];
        for i in 0..model.noise_kinds() {
            for j in 0..model.noise_kinds() {
                commutator[i][j] = moment[i][j] - moment[j][i];
            }
        }
        Ok(NoiseTables { model, nbar, dt, moment, commutator })
    }

    pub fn model(&self) -> Model {
        self.model
    }

    pub fn nbar(&self) -> f64 {
        self.nbar
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    /// Same-step pair expectation by kind.
    pub fn moment_kind(&self, x: NoiseKind, y: NoiseKind) -> Complex64 {
        debug_assert_eq!(x.model(), self.model);
        debug_assert_eq!(y.model(), self.model);
        self.moment[x.index()][y.index()]
    }

    /// Same-step commutator by kind.
    pub fn commutator_kind(&self, x: NoiseKind, y: NoiseKind) -> Complex64 {
        debug_assert_eq!(x.model(), self.model);
        debug_assert_eq!(y.model(), self.model);
        self.commutator[x.index()][y.index()]
    }

    /// Vacuum expectation of a single increment; identically zero.
    pub fn single_moment(&self, _kind: NoiseKind) -> Complex64 {
        Complex64::new(0.0, 0.0)
    }

    /// Vacuum pair expectation `⟨| x · y |⟩`; zero for distinct steps.
    pub fn moment(&self, x: NoiseLabel, y: NoiseLabel) -> Result<Complex64> {
        check_same_model(x.model(), self.model, "noise moment")?;
        check_same_model(y.model(), self.model, "noise moment")?;
        if x.step != y.step {
            return Ok(Complex64::new(0.0, 0.0));
        }
        Ok(self.moment_kind(x.kind, y.kind))
    }

    /// Commutator `[x, y]` of two increments; zero for distinct steps.
    pub fn commutator(&self, x: NoiseLabel, y: NoiseLabel) -> Result<Complex64> {
        check_same_model(x.model(), self.model, "noise commutator")?;
        check_same_model(y.model(), self.model, "noise commutator")?;
        if x.step != y.step {
            return Ok(Complex64::new(0.0, 0.0));
        }
        Ok(self.commutator_kind(x.kind, y.kind))
    }

    /// Nonzero commutator kind pairs, for tight inner loops.
    pub(crate) fn commutator_pairs(&self) -> Vec<(usize, usize, Complex64)> {
        let k = self.model.noise_kinds();
        let mut out = Vec::new();
        for i in 0..k {
            for j in 0..k {
                if self.commutator[i][j].norm_sqr() != 0.0 {
                    out.push((i, j, self.commutator[i][j]));
                }
            }
        }
        out
    }

    /// Nonzero moment kind pairs, for tight inner loops.
    pub(crate) fn moment_pairs(&self) -> Vec<(usize, usize, Complex64)> {
        let k = self.model.noise_kinds();
        let mut out = Vec::new();
        for i in 0..k {
            for j in 0..k {
                if self.moment[i][j].norm_sqr() != 0.0 {
                    out.push((i, j, self.moment[i][j]));
                }
            }
        }
        out
    }
}

/// Composite increments of the rotating-wave model, in the order
/// `dW, dW⁺°, dW̃, dW̃⁺°`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CompositeKind {
    W,
    WPlus,
    WTil,
    WTilPlus,
}

pub const COMPOSITE_KINDS: [CompositeKind; 4] =
    [CompositeKind::W, CompositeKind::WPlus, CompositeKind::WTil, CompositeKind::WTilPlus];

impl CompositeKind {
    pub fn index(self) -> usize {
        match self {
            CompositeKind::W => 0,
            CompositeKind::WPlus => 1,
            CompositeKind::WTil => 2,
            CompositeKind::WTilPlus => 3,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            CompositeKind::W => "dW",
            CompositeKind::WPlus => "dW+",
            CompositeKind::WTil => "dW~",
            CompositeKind::WTilPlus => "dW~+",
        }
    }

    /// Expansion over base increment kinds:
    /// `dW = √(2κ)(μ dB + ν dB̃†)`, `dW⁺° = √(2κ)(dB† - dB̃)` and tildes.
    pub fn expansion(self, kappa: f64, mu: f64, nu: f64) -> [(NoiseKind, f64); 2] {
        let s = (2.0 * kappa).sqrt();
        match self {
            CompositeKind::W => [(NoiseKind::DB, s * mu), (NoiseKind::DBTilDag, s * nu)],
            CompositeKind::WPlus => [(NoiseKind::DBDag, s), (NoiseKind::DBTil, -s)],
            CompositeKind::WTil => [(NoiseKind::DBTil, s * mu), (NoiseKind::DBDag, s * nu)],
            CompositeKind::WTilPlus => [(NoiseKind::DBTilDag, s), (NoiseKind::DB, -s)],
        }
    }
}

/// All 16 ordered pair expectations of the composite increments, expanded
/// through the base moment table, next to their closed forms
/// `dW dW̃ = dW̃ dW = 2κ(n̄+ν) dt`, `dW dW⁺° = dW̃ dW̃⁺° = 2κ dt`, rest zero.
#[derive(Debug, Clone)]
pub struct DwMomentReport {
    /// `table[i][j] = ⟨ composite_i composite_j ⟩` from the base expansion.
    pub table: [[Complex64; 4]; 4],
    /// Same entries evaluated from the closed forms.
    pub expected: [[Complex64; 4]; 4],
    /// Max absolute discrepancy between the two routes.
    pub max_residual: f64,
}

pub fn compose_dw_moments(
    kappa: f64,
    mu: f64,
    nu: f64,
    tables: &NoiseTables,
) -> Result<DwMomentReport> {
    check_same_model(tables.model(), Model::Rwa, "composite dW moments")?;
    if (mu + nu - 1.0).abs() > 1e-12 {
        return Err(Error::invalid_parameter(format!("mu + nu must equal 1, got {}", mu + nu)));
    }
    if !(kappa > 0.0) {
        return Err(Error::invalid_parameter(format!("kappa must be positive, got {kappa}")));
    }
    let zero = Complex64::new(0.0, 0.0);
    let mut table = [[zero; 4]; 4];
    for ci in COMPOSITE_KINDS {
        for cj in COMPOSITE_KINDS {
            let mut acc = zero;
            for (kx, cx) in ci.expansion(kappa, mu, nu) {
                for (ky, cy) in cj.expansion(kappa, mu, nu) {
                    acc += cx * cy * tables.moment_kind(kx, ky);
                }
            }
            table[ci.index()][cj.index()] = acc;
        }
    }

    let dt = tables.dt();
    let nbar = tables.nbar();
    let mut expected = [[zero; 4]; 4];
    let re = |x: f64| Complex64::new(x, 0.0);
    expected[CompositeKind::W.index()][CompositeKind::WTil.index()] = re(2.0 * kappa * (nbar + nu) * dt);
    expected[CompositeKind::WTil.index()][CompositeKind::W.index()] = re(2.0 * kappa * (nbar + nu) * dt);
    expected[CompositeKind::W.index()][CompositeKind::WPlus.index()] = re(2.0 * kappa * dt);
    expected[CompositeKind::WTil.index()][CompositeKind::WTilPlus.index()] = re(2.0 * kappa * dt);

    let mut max_residual = 0.0f64;
    for i in 0..4 {
        for j in 0..4 {
            max_residual = max_residual.max((table[i][j] - expected[i][j]).norm());
        }
    }
    Ok(DwMomentReport { table, expected, max_residual })
}

/// Thermal Bogoliubov matrix mixing `(dB, dB̃†)` into the finite-temperature
/// annihilators; unit determinant for every `n̄ ≥ 0`.
#[derive(Debug, Clone, Copy)]
pub struct BogoliubovMatrix {
    nbar: f64,
}

impl BogoliubovMatrix {
    pub fn new(nbar: f64) -> Result<Self> {
        if !(nbar >= 0.0) || !nbar.is_finite() {
            return Err(Error::invalid_parameter(format!("nbar must be nonnegative, got {nbar}")));
        }
        Ok(BogoliubovMatrix { nbar })
    }

    pub fn entries(&self) -> [[f64; 2]; 2] {
        [[1.0 + self.nbar, -self.nbar], [-1.0, 1.0]]
    }

    pub fn det(&self) -> f64 {
        let m = self.entries();
        m[0][0] * m[1][1] - m[0][1] * m[1][0]
    }
}

/// Residual report for the thermal-vacuum annihilation rules of the
/// transformed increments.
#[derive(Debug, Clone)]
pub struct BogoliubovReport {
    pub det: f64,
    /// max over base increments `Y` of `|⟨ Y · dC ⟩|` and `|⟨ Y · dC̃ ⟩|`.
    pub max_ket_residual: f64,
    /// max over base increments `Y` of `|⟨ dC† · Y ⟩|` and `|⟨ dC̃† · Y ⟩|`.
    pub max_bra_residual: f64,
    /// Expansion of `dC` over `(dB, dB̃†)` for reference.
    pub ket_annihilator: [(NoiseKind, f64); 2],
}

/// Checks that the doublet `dCᵘ = Bᵘᵛ dBᵛ` annihilates the thermal vacua in
/// the weak sense, expanding every expectation through the moment table.
///
/// The doublet convention pairs `dB¹ = dB` with `dB² = dB̃†`; the second
/// component of the transformed doublet is the operator written `dC̃†`, and
/// its tilde conjugate is `dC†`. These annihilate the bra; they are defined
/// through the doublet, not by entrywise Hermitian conjugation of `dC`.
pub fn bogoliubov_checks(nbar: f64, dt: f64) -> Result<BogoliubovReport> {
    let matrix = BogoliubovMatrix::new(nbar)?;
    let tables = NoiseTables::new(Model::Rwa, nbar, dt)?;
    let m = matrix.entries();

    // dC = (1+n̄) dB - n̄ dB̃†  and its tilde conjugate annihilate the ket.
    let dc = [(NoiseKind::DB, m[0][0]), (NoiseKind::DBTilDag, m[0][1])];
    let dc_tilde = [(NoiseKind::DBTil, m[0][0]), (NoiseKind::DBDag, m[0][1])];
    // dC̃† = -dB + dB̃†  and its tilde conjugate dC† = dB† - dB̃ annihilate the bra.
    let dct_dag = [(NoiseKind::DB, m[1][0]), (NoiseKind::DBTilDag, m[1][1])];
    let dc_dag = [(NoiseKind::DBTil, m[1][0]), (NoiseKind::DBDag, m[1][1])];

    let base = Model::Rwa.noise_kind_list();
    let mut max_ket = 0.0f64;
    for ann in [dc, dc_tilde] {
        for &y in base {
            let mut acc = Complex64::new(0.0, 0.0);
            for (k, c) in ann {
                acc += c * tables.moment_kind(y, k);
            }
            max_ket = max_ket.max(acc.norm());
        }
    }
    let mut max_bra = 0.0f64;
    for ann in [dc_dag, dct_dag] {
        for &y in base {
            let mut acc = Complex64::new(0.0, 0.0);
            for (k, c) in ann {
                acc += c * tables.moment_kind(k, y);
            }
            max_bra = max_bra.max(acc.norm());
        }
    }

    Ok(BogoliubovReport {
        det: matrix.det(),
        max_ket_residual: max_ket,
        max_bra_residual: max_bra,
        ket_annihilator: dc,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn label(kind: NoiseKind, step: usize) -> NoiseLabel {
        NoiseLabel::new(kind, step)
    }

    #[test]
    fn moment_examples() {
        let t = NoiseTables::new(Model::Rwa, 1.0, 1e-3).unwrap();
        // dB† dB = n̄ dt
        let m = t.moment(label(NoiseKind::DBDag, 3), label(NoiseKind::DB, 3)).unwrap();
        assert_abs_diff_eq!(m.re, 1e-3, epsilon = 1e-18);
        assert_eq!(m.im, 0.0);
        // distinct steps are independent
        let m = t.moment(label(NoiseKind::DB, 1), label(NoiseKind::DB, 2)).unwrap();
        assert_eq!(m, Complex64::new(0.0, 0.0));
        // dB̃† dB† = (n̄+1) dt
        let t = NoiseTables::new(Model::Rwa, 0.5, 1e-3).unwrap();
        let m = t.moment(label(NoiseKind::DBTilDag, 0), label(NoiseKind::DBDag, 0)).unwrap();
        assert_abs_diff_eq!(m.re, 1.5e-3, epsilon = 1e-18);
    }

    #[test]
    fn commutator_examples() {
        let t = NoiseTables::new(Model::Rwa, 0.7, 1e-3).unwrap();
        // [dB, dB†] = dt regardless of n̄: (n̄+1)dt - n̄dt
        let c = t.commutator(label(NoiseKind::DB, 5), label(NoiseKind::DBDag, 5)).unwrap();
        assert_abs_diff_eq!(c.re, 1e-3, epsilon = 1e-18);
        let c = t.commutator(label(NoiseKind::DB, 5), label(NoiseKind::DB, 5)).unwrap();
        assert_eq!(c.norm(), 0.0);
        // [dB, dB̃] = n̄dt - n̄dt = 0
        let c = t.commutator(label(NoiseKind::DB, 5), label(NoiseKind::DBTil, 5)).unwrap();
        assert_eq!(c.norm(), 0.0);
    }

    #[test]
    fn mixed_model_rejected() {
        let t = NoiseTables::new(Model::Rwa, 1.0, 1e-3).unwrap();
        assert!(t.moment(label(NoiseKind::DX, 0), label(NoiseKind::DB, 0)).is_err());
        assert!(t.commutator(label(NoiseKind::DB, 0), label(NoiseKind::DXTil, 0)).is_err());
    }

    #[test]
    fn commutator_is_antisymmetrized_moment() {
        for model in [Model::Rwa, Model::Xx] {
            let t = NoiseTables::new(model, 1.3, 2e-4).unwrap();
            for &x in model.noise_kind_list() {
                for &y in model.noise_kind_list() {
                    let c = t.commutator_kind(x, y);
                    let m = t.moment_kind(x, y) - t.moment_kind(y, x);
                    assert_eq!(c, m);
                    assert_eq!(c, -t.commutator_kind(y, x));
                }
            }
        }
    }

    #[test]
    fn moment_table_tilde_invariance() {
        for model in [Model::Rwa, Model::Xx] {
            let t = NoiseTables::new(model, 0.9, 1e-2).unwrap();
            for &x in model.noise_kind_list() {
                for &y in model.noise_kind_list() {
                    assert_eq!(t.moment_kind(x.tilde(), y.tilde()), t.moment_kind(x, y).conj());
                }
            }
        }
    }

    #[test]
    fn xx_pairs_all_equal() {
        let t = NoiseTables::new(Model::Xx, 2.0, 1e-3).unwrap();
        let v = Complex64::new(2.5e-3, 0.0);
        for &x in Model::Xx.noise_kind_list() {
            for &y in Model::Xx.noise_kind_list() {
                assert_eq!(t.moment_kind(x, y), v);
                assert_eq!(t.commutator_kind(x, y).norm(), 0.0);
            }
        }
    }

    #[test]
    fn dw_moment_examples() {
        // dW dW̃ = 2κ(n̄+ν)dt = 3e-3 at κ=1, n̄=1, ν=1/2
        let tables = NoiseTables::new(Model::Rwa, 1.0, 1e-3).unwrap();
        let r = compose_dw_moments(1.0, 0.5, 0.5, &tables).unwrap();
        let got = r.table[CompositeKind::W.index()][CompositeKind::WTil.index()];
        assert_abs_diff_eq!(got.re, 3e-3, epsilon = 1e-15);
        // dW dW⁺° = 2κ dt
        let got = r.table[CompositeKind::W.index()][CompositeKind::WPlus.index()];
        assert_abs_diff_eq!(got.re, 2e-3, epsilon = 1e-15);
        // reversed order vanishes
        let got = r.table[CompositeKind::WPlus.index()][CompositeKind::W.index()];
        assert!(got.norm() < 1e-15);
    }

    #[test]
    fn dw_closed_forms_hold_for_arbitrary_parameters() {
        for (kappa, nbar, nu) in [(0.3, 0.0, 0.0), (1.0, 1.0, 0.5), (2.5, 3.7, 1.0), (0.7, 0.2, 0.25)] {
            let tables = NoiseTables::new(Model::Rwa, nbar, 1e-3).unwrap();
            let r = compose_dw_moments(kappa, 1.0 - nu, nu, &tables).unwrap();
            assert!(r.max_residual < 1e-15, "residual {} at ({kappa},{nbar},{nu})", r.max_residual);
        }
    }

    #[test]
    fn dw_rejects_bad_ordering_weights() {
        let tables = NoiseTables::new(Model::Rwa, 1.0, 1e-3).unwrap();
        assert!(compose_dw_moments(1.0, 0.7, 0.5, &tables).is_err());
    }

    #[test]
    fn bogoliubov_determinant_and_annihilation() {
        // det = (1+n̄)·1 - (-n̄)(-1) = 1
        let r = bogoliubov_checks(0.5, 1e-3).unwrap();
        assert_abs_diff_eq!(r.det, 1.0, epsilon = 1e-12);
        assert!(r.max_ket_residual < 1e-15);
        assert!(r.max_bra_residual < 1e-15);

        for nbar in [0.0, 1.0, 5.0, 10.0] {
            let r = bogoliubov_checks(nbar, 1e-3).unwrap();
            assert_abs_diff_eq!(r.det, 1.0, epsilon = 1e-12);
            assert!(r.max_ket_residual < 1e-12);
            assert!(r.max_bra_residual < 1e-12);
        }
    }

    #[test]
    fn bogoliubov_zero_temperature_reduces_to_identity_on_db() {
        let r = bogoliubov_checks(0.0, 1e-3).unwrap();
        assert_eq!(r.ket_annihilator[0], (NoiseKind::DB, 1.0));
        assert_eq!(r.ket_annihilator[1], (NoiseKind::DBTilDag, -0.0));
    }

    #[test]
    fn bogoliubov_expansion_example() {
        // E[dB† dC] = (1+n̄)n̄dt - n̄(1+n̄)dt = 0 at n̄ = 1
        let tables = NoiseTables::new(Model::Rwa, 1.0, 1e-3).unwrap();
        let m = BogoliubovMatrix::new(1.0).unwrap().entries();
        let v = m[0][0] * tables.moment_kind(NoiseKind::DBDag, NoiseKind::DB)
            + m[0][1] * tables.moment_kind(NoiseKind::DBDag, NoiseKind::DBTilDag);
        assert!(v.norm() < 1e-18);
    }
}
