//! Exact evolution of a coherent input under the quartic Hamiltonian.
//!
//! `H` is time independent and real symmetric in the number basis, so it is
//! diagonalized once and `exp(-iHt)` is applied spectrally for every `t`.
//! Interaction-picture moments follow from `a_H(t) = exp(-it) a_I(t)`:
//! `<a_I^dag^m a_I^n>(t) = exp(i(n-m)t) <psi_t| a^dag^m a^n |psi_t>`.

use std::collections::BTreeMap;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fock::{make_ladder_ops, FockVector, ModelParams, OperatorMatrix};

/// Largest `|t|` accepted by [`evolve_exact`]; beyond this the accumulated
/// phase `E t` loses too many digits.
pub const TIME_HORIZON: f64 = 1e6;

/// `(a^dag a + 1/2) + (lambda/16)(a^dag + a)^4` on the truncated basis.
pub fn build_hamiltonian(params: &ModelParams) -> Result<OperatorMatrix> {
    params.validate()?;
    let ops = make_ladder_ops(params.dim)?;
    let field = &ops.a_dagger + &ops.a;
    let half = OperatorMatrix::identity(params.dim).scale(Complex64::new(0.5, 0.0));
    let free = &ops.number + &half;
    let quartic = field
        .pow(4)
        .scale(Complex64::new(params.lambda / 16.0, 0.0));
    let h = &free + &quartic;
    // product rounding leaves ulp-level asymmetry; fold it out
    let symmetric = (h.entries() + h.entries().transpose()) * Complex64::new(0.5, 0.0);
    OperatorMatrix::from_entries(symmetric)
}

/// Spectral propagator for one `(lambda, D)` and one initial coherent state.
/// Decompose once, then evaluate any number of times.
#[derive(Debug, Clone)]
pub struct ExactEvolution {
    params: ModelParams,
    hamiltonian: OperatorMatrix,
    energies: DVector<f64>,
    modes: DMatrix<f64>,
    initial: FockVector,
    // initial state in the eigenbasis, V^T |alpha>
    initial_coeffs: DVector<Complex64>,
}

impl ExactEvolution {
    pub fn new(params: &ModelParams) -> Result<Self> {
        let hamiltonian = build_hamiltonian(params)?;
        let (energies, modes) = symmetric_eigen(&hamiltonian.entries().map(|z| z.re))?;
        let initial = params.initial_state()?;
        let initial_coeffs =
            modes.transpose().map(|v| Complex64::new(v, 0.0)) * initial.amplitudes();
        Ok(Self {
            params: *params,
            hamiltonian,
            energies,
            modes,
            initial,
            initial_coeffs,
        })
    }

    pub fn params(&self) -> &ModelParams {
        &self.params
    }

    pub fn hamiltonian(&self) -> &OperatorMatrix {
        &self.hamiltonian
    }

    pub fn initial_state(&self) -> &FockVector {
        &self.initial
    }

    pub fn energies(&self) -> &DVector<f64> {
        &self.energies
    }

    /// `psi_t = V exp(-i Lambda t) V^T |alpha>`
    pub fn state_at(&self, t: f64) -> Result<EvolvedState> {
        check_time(t)?;
        let psi = if t == 0.0 {
            self.initial.clone()
        } else {
            let rotated = DVector::from_iterator(
                self.energies.len(),
                self.energies
                    .iter()
                    .zip(self.initial_coeffs.iter())
                    .map(|(&e, &c)| c * Complex64::from_polar(1.0, -e * t)),
            );
            let amplitudes = self.modes.map(|v| Complex64::new(v, 0.0)) * rotated;
            FockVector::from_amplitudes(amplitudes)?
        };
        Ok(EvolvedState {
            psi_t: psi,
            t,
            params: self.params,
        })
    }

    pub fn moments_at(&self, t: f64) -> Result<MomentSet> {
        Ok(interaction_moments(&self.state_at(t)?))
    }
}

/// Eigenvalues (ascending) and orthonormal eigenvectors (columns) of a real
/// symmetric matrix.
pub fn symmetric_eigen(matrix: &DMatrix<f64>) -> Result<(DVector<f64>, DMatrix<f64>)> {
    let dim = matrix.nrows();
    let dense = faer::Mat::<f64>::from_fn(dim, dim, |i, j| matrix[(i, j)]);
    let evd = dense
        .self_adjoint_eigen(faer::Side::Lower)
        .map_err(|_| Error::EigenFailure(dim))?;
    let (values, vectors) = (evd.S(), evd.U());
    let energies = DVector::from_fn(dim, |i, _| values[i]);
    let modes = DMatrix::from_fn(dim, dim, |i, j| vectors[(i, j)]);
    if energies.iter().chain(modes.iter()).any(|v| !v.is_finite()) {
        return Err(Error::EigenFailure(dim));
    }
    Ok((energies, modes))
}

fn check_time(t: f64) -> Result<()> {
    if t.is_finite() && t.abs() <= TIME_HORIZON {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name: "t",
            value: t,
            reason: "outside the evolution horizon",
        })
    }
}

/// One-shot exact evolution. Prefer [`ExactEvolution`] when sampling many `t`.
pub fn evolve_exact(params: &ModelParams, t: f64) -> Result<EvolvedState> {
    ExactEvolution::new(params)?.state_at(t)
}

/// Schrodinger-picture state at time `t`.
#[derive(Debug, Clone)]
pub struct EvolvedState {
    pub psi_t: FockVector,
    pub t: f64,
    pub params: ModelParams,
}

/// Normally ordered monomials recorded by [`interaction_moments`], as
/// `(creation power, annihilation power)`.
pub const STANDARD_MONOMIALS: [(u32, u32); 10] = [
    (0, 1),
    (0, 2),
    (0, 4),
    (1, 1),
    (1, 2),
    (2, 2),
    (1, 3),
    (2, 4),
    (3, 3),
    (4, 4),
];

/// Interaction-picture expectation values `<a^dag^m a^n>` at a fixed time.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct MomentSet {
    values: BTreeMap<(u32, u32), Complex64>,
}

impl MomentSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, creation: u32, annihilation: u32, value: Complex64) {
        self.values.insert((creation, annihilation), value);
    }

    /// `<a^dag^m a^n>`, falling back to the conjugate of `<a^dag^n a^m>`.
    pub fn get(&self, creation: u32, annihilation: u32) -> Result<Complex64> {
        if creation == 0 && annihilation == 0 {
            return Ok(Complex64::new(1.0, 0.0));
        }
        self.values
            .get(&(creation, annihilation))
            .copied()
            .or_else(|| self.values.get(&(annihilation, creation)).map(|z| z.conj()))
            .ok_or(Error::MissingMoment {
                creation,
                annihilation,
            })
    }

    /// `<N^(k)> = <a^dag^k a^k>`
    pub fn factorial(&self, order: u32) -> Result<f64> {
        Ok(self.get(order, order)?.re)
    }

    /// Factorial moments `<N^(0)>, ..., <N^(max_order)>`.
    pub fn factorial_moments(&self, max_order: u32) -> Result<Vec<f64>> {
        (0..=max_order).map(|k| self.factorial(k)).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = ((u32, u32), Complex64)> + '_ {
        self.values.iter().map(|(&k, &v)| (k, v))
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Moments of a state taken as-is (no picture phase), for number states
    /// and other fixed test states.
    pub fn from_state(state: &FockVector, monomials: &[(u32, u32)]) -> Self {
        moments_with_phase(state, monomials, 0.0)
    }
}

/// Interaction-picture moments of an evolved state over [`STANDARD_MONOMIALS`].
pub fn interaction_moments(state: &EvolvedState) -> MomentSet {
    moments_with_phase(&state.psi_t, &STANDARD_MONOMIALS, state.t)
}

fn moments_with_phase(state: &FockVector, monomials: &[(u32, u32)], t: f64) -> MomentSet {
    let max_power = monomials.iter().map(|&(m, n)| m.max(n)).max().unwrap_or(0) as usize;
    // lowered[k] = a^k |psi>
    let mut lowered = Vec::with_capacity(max_power + 1);
    lowered.push(state.amplitudes().clone());
    for k in 0..max_power {
        let next = lower(&lowered[k]);
        lowered.push(next);
    }
    let mut set = MomentSet::new();
    for &(m, n) in monomials {
        let raw = lowered[m as usize].dotc(&lowered[n as usize]);
        let phase = Complex64::from_polar(1.0, (n as f64 - m as f64) * t);
        set.insert(m, n, if t == 0.0 { raw } else { raw * phase });
    }
    set
}

/// `a |psi>` using the structure of the truncated annihilation matrix.
fn lower(psi: &DVector<Complex64>) -> DVector<Complex64> {
    let dim = psi.len();
    DVector::from_fn(dim, |n, _| {
        if n + 1 < dim {
            psi[n + 1] * ((n + 1) as f64).sqrt()
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{coherent_state, expectation};
    use approx::assert_abs_diff_eq;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

    #[test]
    fn free_hamiltonian_is_diagonal() {
        let params = ModelParams::with_dim(0.0, 0.0, 0.0, 20).unwrap();
        let h = build_hamiltonian(&params).unwrap();
        for i in 0..20 {
            for j in 0..20 {
                let want = if i == j { i as f64 + 0.5 } else { 0.0 };
                assert_eq!(h.entries()[(i, j)], Complex64::new(want, 0.0));
            }
        }
    }

    #[test]
    fn vacuum_diagonal_entry() {
        // <0|(a^dag + a)^4|0> = 3 needs only levels 0..=2
        let params = ModelParams {
            alpha_mag: 0.0,
            theta: 0.0,
            lambda: 0.01,
            dim: 3,
        };
        let ops = make_ladder_ops(3).unwrap();
        let x4 = (&ops.a_dagger + &ops.a).pow(4);
        assert_abs_diff_eq!(x4.entries()[(0, 0)].re, 3.0, epsilon = 1e-15);
        let h = build_hamiltonian(&ModelParams { dim: 20, ..params }).unwrap();
        assert_abs_diff_eq!(h.entries()[(0, 0)].re, 0.501875, epsilon = 1e-15);
    }

    #[test]
    fn hamiltonian_real_symmetric() {
        let params = ModelParams::new(1.3, 0.2, 0.07).unwrap();
        let h = build_hamiltonian(&params).unwrap();
        assert!(h.entries().iter().all(|z| z.im == 0.0));
        assert_eq!(h.entries(), &h.entries().transpose());
    }

    #[test]
    fn zero_time_returns_initial_state() {
        let params = ModelParams::new(1.0, 0.4, 1e-3).unwrap();
        let state = evolve_exact(&params, 0.0).unwrap();
        assert_eq!(state.psi_t, params.initial_state().unwrap());
    }

    #[test]
    fn free_evolution_only_rotates_phases() {
        let params = ModelParams::new(1.5, 0.7, 0.0).unwrap();
        let evo = ExactEvolution::new(&params).unwrap();
        let psi0 = params.initial_state().unwrap();
        for &t in &[0.3, 1.0, 5.5] {
            let psi = evo.state_at(t).unwrap().psi_t;
            for (a, b) in psi.amplitudes().iter().zip(psi0.amplitudes().iter()) {
                assert_abs_diff_eq!(a.norm(), b.norm(), epsilon = 1e-13);
            }
            let moments = evo.moments_at(t).unwrap();
            let initial = MomentSet::from_state(&psi0, &STANDARD_MONOMIALS);
            for (key, value) in moments.iter() {
                let want = initial.get(key.0, key.1).unwrap();
                assert!((value - want).norm() < 1e-12, "{key:?} at t={t}");
            }
        }
    }

    #[test]
    fn initial_moments_are_coherent() {
        let params = ModelParams::new(1.0, FRAC_PI_4, 1e-2).unwrap();
        let moments = evolve_exact(&params, 0.0)
            .map(|s| interaction_moments(&s))
            .unwrap();
        let alpha = params.alpha();
        assert!((moments.get(0, 2).unwrap() - alpha * alpha).norm() < 1e-12);
        assert!((moments.get(2, 0).unwrap() - (alpha * alpha).conj()).norm() < 1e-12);
        assert_abs_diff_eq!(moments.factorial(4).unwrap(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn unitarity_and_energy() {
        for &(mag, lambda) in &[(0.5, 1e-2), (1.0, 1e-3), (2.0, 1e-2)] {
            let params = ModelParams::new(mag, 0.3, lambda).unwrap();
            let evo = ExactEvolution::new(&params).unwrap();
            let e0 = expectation(evo.initial_state(), evo.hamiltonian())
                .unwrap()
                .re;
            for k in 0..=40 {
                let t = 4.0 * PI * k as f64 / 40.0;
                let psi = evo.state_at(t).unwrap().psi_t;
                assert!((psi.norm() - 1.0).abs() < 1e-10);
                let e = expectation(&psi, evo.hamiltonian()).unwrap().re;
                assert!(((e - e0) / e0).abs() < 1e-9, "energy drift at t={t}");
            }
        }
    }

    #[test]
    fn number_moment_matches_state() {
        let params = ModelParams::new(1.2, FRAC_PI_2, 1e-2).unwrap();
        let evo = ExactEvolution::new(&params).unwrap();
        let ops = make_ladder_ops(params.dim).unwrap();
        for &t in &[0.4, 2.0, 9.0] {
            let state = evo.state_at(t).unwrap();
            let n = expectation(&state.psi_t, &ops.number).unwrap().re;
            let moments = interaction_moments(&state);
            assert_abs_diff_eq!(moments.get(1, 1).unwrap().re, n, epsilon = 1e-12);
        }
    }

    #[test]
    fn diagonal_moments_real_nonnegative() {
        let params = ModelParams::new(2.0, 1.0, 1e-2).unwrap();
        let moments = ExactEvolution::new(&params)
            .unwrap()
            .moments_at(3.3)
            .unwrap();
        for k in 1..=4 {
            let z = moments.get(k, k).unwrap();
            assert!(z.re >= 0.0 && z.im.abs() < 1e-10);
        }
    }

    #[test]
    fn moment_lookup_uses_conjugate() {
        let psi = coherent_state(Complex64::from_polar(1.0, 0.5), 30).unwrap();
        let set = MomentSet::from_state(&psi, &[(0, 2)]);
        assert_eq!(set.get(2, 0).unwrap(), set.get(0, 2).unwrap().conj());
        assert_eq!(
            set.get(3, 3),
            Err(Error::MissingMoment {
                creation: 3,
                annihilation: 3
            })
        );
    }

    #[test]
    fn rejects_time_outside_horizon() {
        let params = ModelParams::new(1.0, 0.0, 1e-3).unwrap();
        assert!(evolve_exact(&params, f64::NAN).is_err());
        assert!(evolve_exact(&params, 2.0 * TIME_HORIZON).is_err());
    }

    #[test]
    fn truncation_doubling_is_converged() {
        for &mag in &[0.5, 1.0, 2.0] {
            let base = ModelParams::new(mag, 0.9, 1e-2).unwrap();
            let doubled = ModelParams {
                dim: 2 * base.dim,
                ..base
            };
            let small = ExactEvolution::new(&base).unwrap();
            let large = ExactEvolution::new(&doubled).unwrap();
            for k in 0..=8 {
                let t = 4.0 * PI * k as f64 / 8.0;
                let m1 = small.moments_at(t).unwrap();
                let m2 = large.moments_at(t).unwrap();
                for (key, v) in m1.iter() {
                    let w = m2.get(key.0, key.1).unwrap();
                    let drift = (v - w).norm() / v.norm().max(1.0);
                    assert!(drift < 1e-9, "|alpha|={mag} t={t} {key:?}: {drift:e}");
                }
            }
        }
    }
}
