//! Truncated Fock space over a finite set of box-normalized modes.
//!
//! Continuum operators `a_s(k)` with `[a, a†] = (2π)³δ³` become discrete
//! `a_m` with `[a_m, a_m'†] = δ_mm'`; the quantization volume only enters
//! field prefactors. Each mode keeps occupations `0..=n_max`, so
//! `[a, a†] = 1` fails on the top state and commutator checks that involve
//! it are stated on `n < n_max`.
//!
//! The basis is ordered with mode 0 as the most significant digit.

use std::path::Path;

use nalgebra::{DMatrix, DVector, Unit, Vector3};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::constants::{C, EPSILON_0, HBAR};
use crate::dispersion::{self, mode_point, DispersionModel, Helicity, ModePoint};
use crate::momentum::{momentum_triple_along, Picture};
use crate::{Error, Result};

pub const DEFAULT_DIM_CAP: usize = 4096;

/// A mode with its propagation direction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FockMode {
    pub point: ModePoint,
    pub direction: Unit<Vector3<f64>>,
}

impl FockMode {
    pub fn new(point: ModePoint, direction: Vector3<f64>) -> Result<Self> {
        if !(direction.norm() > 0.0) || direction.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidArgument("mode direction must be a nonzero vector".into()));
        }
        Ok(FockMode {
            point,
            direction: Unit::new_normalize(direction),
        })
    }

    /// Wave vector `k k̂`, 1/m.
    pub fn k_vector(&self) -> Vector3<f64> {
        self.direction.into_inner() * self.point.k
    }
}

/// Ordered modes in a quantization box of volume `volume` (m³).
#[derive(Debug, Clone)]
pub struct ModeSet {
    modes: Vec<FockMode>,
    volume: f64,
}

impl ModeSet {
    pub fn new(modes: Vec<FockMode>, volume: f64) -> Result<Self> {
        if modes.is_empty() {
            return Err(Error::InvalidArgument("a mode set needs at least one mode".into()));
        }
        if !(volume > 0.0 && volume.is_finite()) {
            return Err(Error::InvalidArgument(format!("volume must be positive, got {volume}")));
        }
        for (i, a) in modes.iter().enumerate() {
            for b in &modes[..i] {
                let same_k = (a.k_vector() - b.k_vector()).norm() <= 1e-12 * a.point.k;
                if same_k && a.point.helicity == b.point.helicity {
                    return Err(Error::InvalidArgument(format!(
                        "mode {i} duplicates an earlier (k, s) pair"
                    )));
                }
            }
        }
        Ok(ModeSet { modes, volume })
    }

    pub fn modes(&self) -> &[FockMode] {
        &self.modes
    }

    pub fn len(&self) -> usize {
        self.modes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.modes.is_empty()
    }

    pub fn volume(&self) -> f64 {
        self.volume
    }

    /// Amplitude `√(ħ v_gr / (2ε₀ n ω c V))` multiplying `a_m` in the
    /// positive-frequency vector potential.
    pub fn field_prefactor(&self, m: usize) -> Result<f64> {
        let p = &self.mode(m)?.point;
        Ok((HBAR * p.v_gr / (2.0 * EPSILON_0 * p.n * p.omega * C * self.volume)).sqrt())
    }

    fn mode(&self, m: usize) -> Result<&FockMode> {
        self.modes.get(m).ok_or(Error::IndexOutOfRange {
            index: m,
            len: self.modes.len(),
        })
    }
}

/// Tensor-product number-state space over a [`ModeSet`].
#[derive(Debug, Clone)]
pub struct FockRegister {
    mode_set: ModeSet,
    n_max: Vec<usize>,
    strides: Vec<usize>,
    dim: usize,
    carrier_bands: Option<Vec<(f64, f64)>>,
}

impl FockRegister {
    /// Same cutoff for every mode, default dimension cap.
    pub fn uniform(mode_set: ModeSet, n_max: usize) -> Result<Self> {
        let n = vec![n_max; mode_set.len()];
        Self::new(mode_set, n, DEFAULT_DIM_CAP)
    }

    pub fn new(mode_set: ModeSet, n_max: Vec<usize>, cap: usize) -> Result<Self> {
        if n_max.len() != mode_set.len() {
            return Err(Error::InvalidArgument(format!(
                "{} cutoffs given for {} modes",
                n_max.len(),
                mode_set.len()
            )));
        }
        let mut dim: usize = 1;
        for &n in &n_max {
            dim = dim.saturating_mul(n + 1);
        }
        if dim > cap {
            return Err(Error::DimensionCap { dim, cap });
        }
        let mut strides = vec![1; n_max.len()];
        for m in (0..n_max.len().saturating_sub(1)).rev() {
            strides[m] = strides[m + 1] * (n_max[m + 1] + 1);
        }
        Ok(FockRegister {
            mode_set,
            n_max,
            strides,
            dim,
            carrier_bands: None,
        })
    }

    /// Declares carrier bands (rad/s). States that occupy a mode outside
    /// every band are then rejected by [`FockRegister::validate_state`].
    pub fn with_carrier_bands(mut self, bands: Vec<(f64, f64)>) -> Self {
        self.carrier_bands = Some(bands);
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn mode_set(&self) -> &ModeSet {
        &self.mode_set
    }

    pub fn modes(&self) -> &[FockMode] {
        self.mode_set.modes()
    }

    pub fn n_max(&self) -> &[usize] {
        &self.n_max
    }

    /// Occupation numbers of basis vector `index`.
    pub fn occupations(&self, index: usize) -> Vec<usize> {
        self.strides
            .iter()
            .zip(&self.n_max)
            .map(|(&s, &n)| (index / s) % (n + 1))
            .collect()
    }

    pub fn basis_index(&self, occupations: &[usize]) -> Result<usize> {
        if occupations.len() != self.n_max.len() {
            return Err(Error::InvalidArgument(format!(
                "state lists {} occupations for {} modes",
                occupations.len(),
                self.n_max.len()
            )));
        }
        let mut idx = 0;
        for (m, (&n, &cut)) in occupations.iter().zip(&self.n_max).enumerate() {
            if n > cut {
                return Err(Error::InvalidArgument(format!(
                    "occupation {n} of mode {m} exceeds the cutoff {cut}"
                )));
            }
            idx += n * self.strides[m];
        }
        Ok(idx)
    }

    /// Checks the occupations against the cutoffs and the carrier bands.
    pub fn validate_state(&self, occupations: &[usize]) -> Result<()> {
        self.basis_index(occupations)?;
        if let Some(bands) = &self.carrier_bands {
            for (m, &n) in occupations.iter().enumerate() {
                let w = self.modes()[m].point.omega;
                if n > 0 && !bands.iter().any(|&(lo, hi)| w >= lo && w <= hi) {
                    return Err(Error::OutsideCarrierBand { index: m });
                }
            }
        }
        Ok(())
    }

    /// Normalized number state `|n₀, n₁, …⟩`.
    pub fn number_state(&self, occupations: &[usize]) -> Result<DVector<Complex64>> {
        self.validate_state(occupations)?;
        let mut v = DVector::zeros(self.dim);
        v[self.basis_index(occupations)?] = Complex64::new(1.0, 0.0);
        Ok(v)
    }

    fn check_mode(&self, m: usize) -> Result<()> {
        self.mode_set.mode(m).map(|_| ())
    }

    fn diagonal<F: Fn(&[usize]) -> f64>(&self, f: F) -> DMatrix<Complex64> {
        let d = DVector::from_iterator(
            self.dim,
            (0..self.dim).map(|i| Complex64::new(f(&self.occupations(i)), 0.0)),
        );
        DMatrix::from_diagonal(&d)
    }
}

/// A dense operator on a register's space.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorMatrix {
    matrix: DMatrix<Complex64>,
    hermitian: bool,
}

/// Largest entry modulus.
pub fn max_abs(m: &DMatrix<Complex64>) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

impl OperatorMatrix {
    /// Wraps a matrix; when `hermitian` is set it must satisfy
    /// `‖M − M†‖_max ≤ 1e-12·‖M‖_max`.
    pub fn new(matrix: DMatrix<Complex64>, hermitian: bool) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::InvalidArgument("operator matrix must be square".into()));
        }
        if hermitian {
            let skew = max_abs(&(&matrix - matrix.adjoint()));
            if skew > 1e-12 * max_abs(&matrix) {
                return Err(Error::InvalidArgument(format!(
                    "matrix flagged hermitian but ‖M − M†‖ = {skew:e}"
                )));
            }
        }
        Ok(OperatorMatrix { matrix, hermitian })
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    pub fn into_matrix(self) -> DMatrix<Complex64> {
        self.matrix
    }

    pub fn is_hermitian(&self) -> bool {
        self.hermitian
    }

    pub fn commutator(&self, other: &OperatorMatrix) -> DMatrix<Complex64> {
        &self.matrix * &other.matrix - &other.matrix * &self.matrix
    }

    /// `⟨ψ|M|ψ⟩` for a normalized `ψ`.
    pub fn expectation(&self, state: &DVector<Complex64>) -> Complex64 {
        state.dotc(&(&self.matrix * state))
    }

    /// Eigenvalue on a number state, for operators diagonal in the number
    /// basis.
    pub fn number_state_eigenvalue(&self, register: &FockRegister, occupations: &[usize]) -> Result<f64> {
        register.validate_state(occupations)?;
        let i = register.basis_index(occupations)?;
        let col = self.matrix.column(i);
        let off = col
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, z)| z.norm())
            .fold(0.0, f64::max);
        if off > 0.0 {
            return Err(Error::InvalidArgument("operator is not diagonal on this number state".into()));
        }
        Ok(col[i].re)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ladder {
    Annihilate,
    Create,
}

/// Single-mode truncated annihilation matrix on `{|0⟩, …, |n_max⟩}`.
pub fn single_mode_annihilation(n_max: usize) -> DMatrix<Complex64> {
    let d = n_max + 1;
    DMatrix::from_fn(d, d, |i, j| {
        if j == i + 1 {
            Complex64::new((j as f64).sqrt(), 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
}

/// `a_m` or `a_m†`, i.e. `I ⊗ … ⊗ a ⊗ … ⊗ I`.
pub fn ladder(register: &FockRegister, mode_index: usize, kind: Ladder) -> Result<OperatorMatrix> {
    register.check_mode(mode_index)?;
    let ident = |d: usize| DMatrix::<Complex64>::identity(d, d);
    let before: usize = register.n_max[..mode_index].iter().map(|n| n + 1).product();
    let after: usize = register.n_max[mode_index + 1..].iter().map(|n| n + 1).product();
    let a = single_mode_annihilation(register.n_max[mode_index]);
    let local = match kind {
        Ladder::Annihilate => a,
        Ladder::Create => a.adjoint(),
    };
    let m = ident(before).kronecker(&local).kronecker(&ident(after));
    OperatorMatrix::new(m, false)
}

/// `N_m = a_m† a_m`.
pub fn number_operator(register: &FockRegister, mode_index: usize) -> Result<OperatorMatrix> {
    register.check_mode(mode_index)?;
    OperatorMatrix::new(register.diagonal(|occ| occ[mode_index] as f64), true)
}

/// `H = Σ ħω_m N_m`.
pub fn hamiltonian(register: &FockRegister) -> OperatorMatrix {
    let w: Vec<f64> = register.modes().iter().map(|m| HBAR * m.point.omega).collect();
    let h = register.diagonal(|occ| occ.iter().zip(&w).map(|(&n, e)| n as f64 * e).sum());
    OperatorMatrix::new(h, true).expect("diagonal real matrix is hermitian")
}

fn per_axis<F: Fn(usize) -> Vec<f64>>(register: &FockRegister, per_mode: F) -> [OperatorMatrix; 3] {
    std::array::from_fn(|axis| {
        let c = per_mode(axis);
        let m = register.diagonal(|occ| occ.iter().zip(&c).map(|(&n, x)| n as f64 * x).sum());
        OperatorMatrix::new(m, true).expect("diagonal real matrix is hermitian")
    })
}

/// `P_i = Σ_m w_m ħ k_{m,i} N_m` in the requested picture, one matrix per
/// Cartesian axis.
pub fn momentum_operator(register: &FockRegister, picture: Picture) -> [OperatorMatrix; 3] {
    per_axis(register, |axis| {
        register
            .modes()
            .iter()
            .map(|m| momentum_triple_along(&m.point, m.direction).vector(picture)[axis])
            .collect()
    })
}

/// Per-mode deviation of `[a_m, P] = ħk_m a_m`, relative to `ħ|k_m|·‖a_m‖`,
/// maximized over the three axes.
pub fn translation_generator_deviations(register: &FockRegister, picture: Picture) -> Vec<f64> {
    let p = momentum_operator(register, picture);
    register
        .modes()
        .iter()
        .enumerate()
        .map(|(m, mode)| {
            let a = ladder(register, m, Ladder::Annihilate).expect("mode index in range");
            let scale = HBAR * mode.point.k * max_abs(a.matrix());
            let hk = mode.k_vector() * HBAR;
            (0..3)
                .map(|axis| {
                    let lhs = a.commutator(&p[axis]);
                    let rhs = a.matrix() * Complex64::new(hk[axis], 0.0);
                    max_abs(&(lhs - rhs)) / scale
                })
                .fold(0.0, f64::max)
        })
        .collect()
}

/// Largest relative violation of `[a_m, P_can] = ħk_m a_m` over modes and
/// axes. Zero up to rounding for the canonical momentum.
pub fn verify_translation_generator(register: &FockRegister) -> f64 {
    verify_translation_generator_with(register, Picture::Canonical)
}

/// The same check with a kinetic momentum standing in for `P_can`; the
/// result is `max_m |w_m − 1|·max_i |k̂_{m,i}|`.
pub fn verify_translation_generator_with(register: &FockRegister, picture: Picture) -> f64 {
    translation_generator_deviations(register, picture)
        .into_iter()
        .fold(0.0, f64::max)
}

/// Helicity part of the angular momentum, `Σ_m ħ s_m k̂_m N_m`. The orbital
/// term is not represented.
pub fn spin_angular_momentum(register: &FockRegister) -> [OperatorMatrix; 3] {
    spin_components(register, |_| 1.0)
}

/// Spin angular momentum with every mode weighted by the picture factor
/// `w_m` of the Abraham or Minkowski angular-momentum integrals. Only the
/// helicity term is kept, so this is an extrapolation of those integrals
/// to the discrete mode set.
pub fn weighted_spin_angular_momentum(register: &FockRegister, picture: Picture) -> [OperatorMatrix; 3] {
    spin_components(register, |m| picture.weight(&m.point))
}

fn spin_components<W: Fn(&FockMode) -> f64>(register: &FockRegister, weight: W) -> [OperatorMatrix; 3] {
    per_axis(register, |axis| {
        register
            .modes()
            .iter()
            .map(|m| weight(m) * HBAR * m.point.helicity.value() * m.direction[axis])
            .collect()
    })
}

/// `exp(−i P_can·d / ħ)` by general matrix exponentiation.
pub fn translation_operator(register: &FockRegister, displacement: Vector3<f64>) -> DMatrix<Complex64> {
    let p = momentum_operator(register, Picture::Canonical);
    let mut gen = DMatrix::<Complex64>::zeros(register.dim(), register.dim());
    for axis in 0..3 {
        gen += p[axis].matrix() * Complex64::new(0.0, -displacement[axis] / HBAR);
    }
    gen.exp()
}

/// Eigenvalues of the diagonal observables on one number state.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StateReport {
    pub occupations: Vec<usize>,
    /// J
    pub energy: f64,
    /// kg·m/s, per axis
    pub p_can: [f64; 3],
    pub p_abraham: [f64; 3],
    pub p_minkowski: [f64; 3],
    /// J·s, per axis
    pub j_spin: [f64; 3],
}

pub fn evaluate_states(register: &FockRegister, states: &[Vec<usize>]) -> Result<Vec<StateReport>> {
    let h = hamiltonian(register);
    let pc = momentum_operator(register, Picture::Canonical);
    let pa = momentum_operator(register, Picture::Abraham);
    let pm = momentum_operator(register, Picture::Minkowski);
    let js = spin_angular_momentum(register);
    let eig3 = |ops: &[OperatorMatrix; 3], occ: &[usize]| -> Result<[f64; 3]> {
        Ok([
            ops[0].number_state_eigenvalue(register, occ)?,
            ops[1].number_state_eigenvalue(register, occ)?,
            ops[2].number_state_eigenvalue(register, occ)?,
        ])
    };
    states
        .iter()
        .map(|occ| {
            Ok(StateReport {
                occupations: occ.clone(),
                energy: h.number_state_eigenvalue(register, occ)?,
                p_can: eig3(&pc, occ)?,
                p_abraham: eig3(&pa, occ)?,
                p_minkowski: eig3(&pm, occ)?,
                j_spin: eig3(&js, occ)?,
            })
        })
        .collect()
}

/// One mode entry of a scenario file.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioMode {
    pub lambda_nm: f64,
    #[serde(default = "default_direction")]
    pub direction: [f64; 3],
    #[serde(default = "default_helicity")]
    pub helicity: i32,
    /// Built-in alias (`vacuum`, `bk7`) or a model file path.
    #[serde(default = "default_model")]
    pub model: String,
}

fn default_direction() -> [f64; 3] {
    [0.0, 0.0, 1.0]
}

fn default_helicity() -> i32 {
    1
}

fn default_model() -> String {
    "vacuum".into()
}

/// Scenario file layout (TOML):
///
/// ```toml
/// n_max = 3
/// volume_m3 = 1e-12
/// states = [[0, 0], [1, 0], [2, 1]]
/// carrier_bands_nm = [[600.0, 660.0]]   # optional
///
/// [[modes]]
/// lambda_nm = 632.8
/// direction = [0.0, 0.0, 1.0]
/// helicity = 1
/// model = "bk7"
/// ```
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub n_max: usize,
    #[serde(default = "default_volume")]
    pub volume_m3: f64,
    pub modes: Vec<ScenarioMode>,
    #[serde(default)]
    pub states: Vec<Vec<usize>>,
    pub carrier_bands_nm: Option<Vec<[f64; 2]>>,
}

fn default_volume() -> f64 {
    1e-12
}

#[derive(Debug, Clone)]
pub struct Scenario {
    pub register: FockRegister,
    pub states: Vec<Vec<usize>>,
}

pub fn parse_scenario(text: &str, base_dir: &Path) -> Result<Scenario> {
    let f: ScenarioFile = toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let modes = f
        .modes
        .iter()
        .map(|sm| {
            let model: DispersionModel = dispersion::resolve_model(&sm.model, base_dir)?;
            let w = crate::constants::omega_from_lambda_nm(sm.lambda_nm);
            let point = mode_point(&model, w, Helicity::from_sign(sm.helicity)?)?;
            FockMode::new(point, Vector3::from(sm.direction))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut register = FockRegister::uniform(ModeSet::new(modes, f.volume_m3)?, f.n_max)?;
    if let Some(bands) = f.carrier_bands_nm {
        let bands = bands
            .into_iter()
            .map(dispersion::band_from_nm)
            .collect::<Result<Vec<_>>>()?;
        register = register.with_carrier_bands(bands);
    }
    for s in &f.states {
        register.validate_state(s)?;
    }
    Ok(Scenario {
        register,
        states: f.states,
    })
}

pub fn load_scenario(path: &Path) -> Result<Scenario> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.display().to_string(),
        source: e,
    })?;
    parse_scenario(&text, path.parent().unwrap_or_else(|| Path::new(".")))
}
