//! Generator alphabets of the two linear models.
//!
//! Every Heisenberg operator handled by this crate is a finitely supported
//! complex coefficient vector over one of two alphabets:
//!
//! * rotating-wave model: system labels `a, a†, ã, ã†` and Brownian
//!   increments `dB, dB†, dB̃, dB̃†` per time step;
//! * position-coupled model: system labels `x, p, x̃, p̃` and the Hermitian
//!   increments `dX, dX̃` per time step.
//!
//! Tilde partners are the doubled (conjugate-representation) copies; the
//! doubling is what lets dissipative dynamics be written as coefficient flow
//! on a fixed label set.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Which of the two linear models an operator expansion belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Model {
    /// Phase-invariant (rotating-wave) dissipative coupling; `a`-alphabet.
    Rwa,
    /// Position-coupled oscillator without the rotating-wave approximation;
    /// `x`-alphabet with commutative noise.
    Xx,
}

impl Model {
    /// Number of noise increment kinds per grid step.
    pub const fn noise_kinds(self) -> usize {
        match self {
            Model::Rwa => 4,
            Model::Xx => 2,
        }
    }

    pub const fn noise_kind_list(self) -> &'static [NoiseKind] {
        match self {
            Model::Rwa => &[NoiseKind::DB, NoiseKind::DBDag, NoiseKind::DBTil, NoiseKind::DBTilDag],
            Model::Xx => &[NoiseKind::DX, NoiseKind::DXTil],
        }
    }

    pub const fn system_label_list(self) -> &'static [SystemLabel] {
        match self {
            Model::Rwa => &[SystemLabel::ADag, SystemLabel::ATilDag, SystemLabel::A, SystemLabel::ATil],
            Model::Xx => &[SystemLabel::X, SystemLabel::P, SystemLabel::XTil, SystemLabel::PTil],
        }
    }
}

/// One system generator. Storage order within each model puts creation-like
/// labels first; quadratic forms are kept normal-ordered with respect to it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SystemLabel {
    // rotating-wave alphabet
    ADag,
    ATilDag,
    A,
    ATil,
    // position-coupled alphabet
    X,
    P,
    XTil,
    PTil,
}

impl SystemLabel {
    pub fn model(self) -> Model {
        match self {
            SystemLabel::ADag | SystemLabel::ATilDag | SystemLabel::A | SystemLabel::ATil => Model::Rwa,
            SystemLabel::X | SystemLabel::P | SystemLabel::XTil | SystemLabel::PTil => Model::Xx,
        }
    }

    /// Canonical storage index (0..4) within the label's model.
    pub fn index(self) -> usize {
        match self {
            SystemLabel::ADag | SystemLabel::X => 0,
            SystemLabel::ATilDag | SystemLabel::P => 1,
            SystemLabel::A | SystemLabel::XTil => 2,
            SystemLabel::ATil | SystemLabel::PTil => 3,
        }
    }

    pub fn from_index(model: Model, index: usize) -> SystemLabel {
        model.system_label_list()[index]
    }

    /// Tilde partner (an involution).
    pub fn tilde(self) -> SystemLabel {
        match self {
            SystemLabel::A => SystemLabel::ATil,
            SystemLabel::ATil => SystemLabel::A,
            SystemLabel::ADag => SystemLabel::ATilDag,
            SystemLabel::ATilDag => SystemLabel::ADag,
            SystemLabel::X => SystemLabel::XTil,
            SystemLabel::XTil => SystemLabel::X,
            SystemLabel::P => SystemLabel::PTil,
            SystemLabel::PTil => SystemLabel::P,
        }
    }

    /// Hermitian conjugate; `x` and `p` are self-adjoint.
    pub fn dagger(self) -> SystemLabel {
        match self {
            SystemLabel::A => SystemLabel::ADag,
            SystemLabel::ADag => SystemLabel::A,
            SystemLabel::ATil => SystemLabel::ATilDag,
            SystemLabel::ATilDag => SystemLabel::ATil,
            other => other,
        }
    }

    pub fn is_tilde(self) -> bool {
        matches!(
            self,
            SystemLabel::ATil | SystemLabel::ATilDag | SystemLabel::XTil | SystemLabel::PTil
        )
    }

    /// Image under the thermal bra-vacuum: `⟨1|ã† = ⟨1|a`, `⟨1|ã = ⟨1|a†`,
    /// `⟨1|x̃ = ⟨1|x`, `⟨1|p̃ = ⟨1|p`; physical labels are fixed.
    pub fn project(self) -> SystemLabel {
        match self {
            SystemLabel::ATilDag => SystemLabel::A,
            SystemLabel::ATil => SystemLabel::ADag,
            SystemLabel::XTil => SystemLabel::X,
            SystemLabel::PTil => SystemLabel::P,
            other => other,
        }
    }
}

/// Equal-time commutator of two system labels as a c-number.
///
/// `[a, a†] = [ã, ã†] = 1`, `[x, p] = i` and `[x̃, p̃] = -i` (tilde
/// conjugation conjugates c-numbers); all cross-sector pairs commute.
pub fn system_commutator(x: SystemLabel, y: SystemLabel) -> Complex64 {
    use SystemLabel::*;
    let one = Complex64::new(1.0, 0.0);
    let i = Complex64::new(0.0, 1.0);
    match (x, y) {
        (A, ADag) => one,
        (ADag, A) => -one,
        (ATil, ATilDag) => one,
        (ATilDag, ATil) => -one,
        (X, P) => i,
        (P, X) => -i,
        (XTil, PTil) => -i,
        (PTil, XTil) => i,
        _ => Complex64::new(0.0, 0.0),
    }
}

/// One kind of Brownian increment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NoiseKind {
    DB,
    DBDag,
    DBTil,
    DBTilDag,
    DX,
    DXTil,
}

impl NoiseKind {
    pub fn model(self) -> Model {
        match self {
            NoiseKind::DB | NoiseKind::DBDag | NoiseKind::DBTil | NoiseKind::DBTilDag => Model::Rwa,
            NoiseKind::DX | NoiseKind::DXTil => Model::Xx,
        }
    }

    /// Storage index (0..noise_kinds) within the kind's model.
    pub fn index(self) -> usize {
        match self {
            NoiseKind::DB | NoiseKind::DX => 0,
            NoiseKind::DBDag | NoiseKind::DXTil => 1,
            NoiseKind::DBTil => 2,
            NoiseKind::DBTilDag => 3,
        }
    }

    pub fn from_index(model: Model, index: usize) -> NoiseKind {
        model.noise_kind_list()[index]
    }

    pub fn tilde(self) -> NoiseKind {
        match self {
            NoiseKind::DB => NoiseKind::DBTil,
            NoiseKind::DBTil => NoiseKind::DB,
            NoiseKind::DBDag => NoiseKind::DBTilDag,
            NoiseKind::DBTilDag => NoiseKind::DBDag,
            NoiseKind::DX => NoiseKind::DXTil,
            NoiseKind::DXTil => NoiseKind::DX,
        }
    }

    /// Hermitian conjugate; `dX` increments are self-adjoint.
    pub fn dagger(self) -> NoiseKind {
        match self {
            NoiseKind::DB => NoiseKind::DBDag,
            NoiseKind::DBDag => NoiseKind::DB,
            NoiseKind::DBTil => NoiseKind::DBTilDag,
            NoiseKind::DBTilDag => NoiseKind::DBTil,
            other => other,
        }
    }

    pub fn is_tilde(self) -> bool {
        matches!(self, NoiseKind::DBTil | NoiseKind::DBTilDag | NoiseKind::DXTil)
    }

    /// Image under the irrelevant-sector bra-vacuum: `⟨|dB̃† = ⟨|dB`,
    /// `⟨|dB̃ = ⟨|dB†`, `⟨|dX̃ = ⟨|dX`.
    pub fn project(self) -> NoiseKind {
        match self {
            NoiseKind::DBTilDag => NoiseKind::DB,
            NoiseKind::DBTil => NoiseKind::DBDag,
            NoiseKind::DXTil => NoiseKind::DX,
            other => other,
        }
    }
}

/// A noise increment at a specific grid step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct NoiseLabel {
    pub kind: NoiseKind,
    pub step: usize,
}

impl NoiseLabel {
    pub fn new(kind: NoiseKind, step: usize) -> Self {
        NoiseLabel { kind, step }
    }

    pub fn model(self) -> Model {
        self.kind.model()
    }

    pub fn tilde(self) -> Self {
        NoiseLabel::new(self.kind.tilde(), self.step)
    }

    pub fn dagger(self) -> Self {
        NoiseLabel::new(self.kind.dagger(), self.step)
    }
}

pub(crate) fn check_same_model(a: Model, b: Model, context: &str) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::invalid_input(format!("{context}: mixed operator alphabets {a:?} and {b:?}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn involutions() {
        for model in [Model::Rwa, Model::Xx] {
            for &s in model.system_label_list() {
                assert_eq!(s.tilde().tilde(), s);
                assert_eq!(s.dagger().dagger(), s);
                assert_eq!(SystemLabel::from_index(model, s.index()), s);
            }
            for &k in model.noise_kind_list() {
                assert_eq!(k.tilde().tilde(), k);
                assert_eq!(k.dagger().dagger(), k);
                assert_eq!(NoiseKind::from_index(model, k.index()), k);
            }
        }
    }

    #[test]
    fn commutator_table_antisymmetry() {
        for model in [Model::Rwa, Model::Xx] {
            for &x in model.system_label_list() {
                for &y in model.system_label_list() {
                    assert_eq!(system_commutator(x, y), -system_commutator(y, x));
                }
            }
        }
    }

    #[test]
    fn projection_reaches_physical_labels() {
        for model in [Model::Rwa, Model::Xx] {
            for &s in model.system_label_list() {
                assert!(!s.project().is_tilde());
            }
            for &k in model.noise_kind_list() {
                assert!(!k.project().is_tilde());
            }
        }
    }

    #[test]
    fn tilde_conjugation_flips_ccr_sign() {
        // ([x, p])~ = [x̃, p̃] = (i)* = -i
        let xp = system_commutator(SystemLabel::X, SystemLabel::P);
        let xtpt = system_commutator(SystemLabel::XTil, SystemLabel::PTil);
        assert_eq!(xtpt, xp.conj());
    }
}
