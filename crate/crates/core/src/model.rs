// SPDX-License-Identifier: Apache-2.0

//! Physical inputs and construction of the Bloch-space generator.
//!
//! The generator `G = H + D` acts on Heisenberg-picture Bloch vectors. Its
//! first row and column are zero, so the identity component `a0` is a
//! constant of motion.
//!
//! Unitary part, nonzero entries only:
//!
//! ```text
//! H12 = −H21 = −Δm²/(2E) + V_CC cos 2θ
//! H13 = −H31 = −V_CC sin φ sin 2θ
//! H23 = −H32 =  V_CC cos φ sin 2θ
//! ```
//!
//! Dissipative part: `D = −2·K` embedded in the spatial block, where
//! `K11 = c22 + c33`, `K22 = c11 + c33`, `K33 = c11 + c22` and
//! `Kij = −cij` off the diagonal.

use std::f64::consts::{PI, TAU};
use std::fmt;
use std::ops::Deref;

use crate::error::{Error, Result};
use crate::linalg::Mat4;

/// Solar-sector defaults: θ12 = 0.187π, Δm²21 = 7.54e-5 eV², E = 1 eV.
pub const DEFAULT_THETA: f64 = 0.187 * PI;
pub const DEFAULT_DM2: f64 = 7.54e-5;
pub const DEFAULT_ENERGY: f64 = 1.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OscillationParams {
    /// Mixing angle θ in radians, within [0, π/2].
    pub theta: f64,
    /// Mass-squared splitting Δm² in eV².
    pub dm2: f64,
    /// Average neutrino energy in eV; strictly positive.
    pub energy: f64,
    /// Charged-current matter potential in eV.
    pub v_cc: f64,
    /// Majorana phase in radians, within [0, 2π]. Zero is the Dirac case.
    pub phi: f64,
}

impl Default for OscillationParams {
    fn default() -> Self {
        OscillationParams {
            theta: DEFAULT_THETA,
            dm2: DEFAULT_DM2,
            energy: DEFAULT_ENERGY,
            v_cc: 0.0,
            phi: 0.0,
        }
    }
}

impl OscillationParams {
    pub fn new(theta: f64, dm2: f64, energy: f64, v_cc: f64, phi: f64) -> Result<Self> {
        let p = OscillationParams { theta, dm2, energy, v_cc, phi };
        p.validate()?;
        Ok(p)
    }

    pub fn with_phi(self, phi: f64) -> Self {
        OscillationParams { phi, ..self }
    }

    pub fn with_v_cc(self, v_cc: f64) -> Self {
        OscillationParams { v_cc, ..self }
    }

    pub fn with_energy(self, energy: f64) -> Self {
        OscillationParams { energy, ..self }
    }

    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("theta", self.theta),
            ("dm2", self.dm2),
            ("energy", self.energy),
            ("v_cc", self.v_cc),
            ("phi", self.phi),
        ];
        if let Some((name, x)) = fields.iter().find(|(_, x)| !x.is_finite()) {
            return Err(Error::InvalidArgument(format!("{name} = {x} is not finite")));
        }
        let bad = |msg: String| Err(Error::InvalidArgument(msg));
        if self.energy <= 0.0 {
            return bad(format!("energy = {} must be > 0", self.energy));
        }
        if self.dm2 < 0.0 {
            return bad(format!("dm2 = {} must be >= 0", self.dm2));
        }
        if self.v_cc < 0.0 {
            return bad(format!("v_cc = {} must be >= 0", self.v_cc));
        }
        if !(0.0..=PI / 2.0).contains(&self.theta) {
            return bad(format!("theta = {} must lie in [0, pi/2]", self.theta));
        }
        if !(0.0..=TAU).contains(&self.phi) {
            return bad(format!("phi = {} must lie in [0, 2pi]", self.phi));
        }
        Ok(())
    }
}

/// Symmetric 3×3 Kossakowski matrix over the spatial indices 1..=3.
///
/// Entries with a zero index are fixed to zero and not represented.
/// `c[0][0]` holds `c11`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct KossakowskiCoefficients {
    pub c: [[f64; 3]; 3],
}

impl KossakowskiCoefficients {
    pub const ZERO: KossakowskiCoefficients = KossakowskiCoefficients { c: [[0.0; 3]; 3] };

    /// Builds the symmetric matrix from its six independent entries.
    pub fn from_six(c11: f64, c22: f64, c33: f64, c12: f64, c13: f64, c23: f64) -> Self {
        KossakowskiCoefficients {
            c: [[c11, c12, c13], [c12, c22, c23], [c13, c23, c33]],
        }
    }

    /// `c11 = c22 = c33 = diag`, `c12 = c21 = c12`, all others zero.
    pub fn uniform_with_c12(diag: f64, c12: f64) -> Self {
        Self::from_six(diag, diag, diag, c12, 0.0, 0.0)
    }

    pub fn from_matrix(c: [[f64; 3]; 3]) -> Self {
        KossakowskiCoefficients { c }
    }

    /// Entry with 1-based indices, as in `c_ij`.
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.c[i - 1][j - 1]
    }

    /// `(c11, c22, c33, c12, c13, c23)`.
    pub fn six(&self) -> [f64; 6] {
        let c = &self.c;
        [c[0][0], c[1][1], c[2][2], c[0][1], c[0][2], c[1][2]]
    }

    pub fn with_c12(self, c12: f64) -> Self {
        let mut k = self;
        k.c[0][1] = c12;
        k.c[1][0] = c12;
        k
    }

    pub fn is_symmetric(&self) -> bool {
        (0..3).all(|i| (0..3).all(|j| self.c[i][j] == self.c[j][i]))
    }

    pub fn is_diagonal(&self) -> bool {
        (0..3).all(|i| (0..3).all(|j| i == j || self.c[i][j] == 0.0))
    }

    /// Positive semidefiniteness of `[c_ij]` via all principal minors, with
    /// absolute tolerance `tol`. This is the standard complete-positivity
    /// condition and is stricter than the pairwise bound checked by
    /// [`validate_kossakowski`].
    pub fn is_positive_semidefinite(&self, tol: f64) -> bool {
        let c = &self.c;
        let diag_ok = (0..3).all(|i| c[i][i] >= -tol);
        let pairs_ok = [(0, 1), (0, 2), (1, 2)]
            .iter()
            .all(|&(i, j)| c[i][i] * c[j][j] - c[i][j] * c[j][i] >= -tol);
        let det = c[0][0] * (c[1][1] * c[2][2] - c[1][2] * c[2][1])
            - c[0][1] * (c[1][0] * c[2][2] - c[1][2] * c[2][0])
            + c[0][2] * (c[1][0] * c[2][1] - c[1][1] * c[2][0]);
        diag_ok && pairs_ok && det >= -tol
    }
}

/// One violated pairwise bound `|c_ij| <= (c_ii + c_jj)/2`, 1-based indices.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundViolation {
    pub i: usize,
    pub j: usize,
    pub value: f64,
    pub bound: f64,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ValidationReport {
    pub violations: Vec<BoundViolation>,
    /// Off-diagonal pairs meeting their bound with equality (and a nonzero bound).
    pub boundary: Vec<(usize, usize)>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn on_boundary(&self) -> bool {
        self.passed() && !self.boundary.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            return if self.on_boundary() {
                write!(f, "pass (boundary)")
            } else {
                write!(f, "pass")
            };
        }
        write!(f, "fail")?;
        for v in &self.violations {
            write!(
                f,
                "; |c{}{}| = {} exceeds bound (c{}{} + c{}{})/2 = {}",
                v.i, v.j, v.value.abs(), v.i, v.i, v.j, v.j, v.bound
            )?;
        }
        Ok(())
    }
}

/// Checks `|c_ij| <= (c_ii + c_jj)/2` for every pair `i <= j`.
///
/// Equality passes. Asymmetric or non-finite input is an argument error,
/// distinct from a failed report.
pub fn validate_kossakowski(k: &KossakowskiCoefficients) -> Result<ValidationReport> {
    if k.c.iter().flatten().any(|x| !x.is_finite()) {
        return Err(Error::InvalidArgument("Kossakowski coefficients must be finite".into()));
    }
    if !k.is_symmetric() {
        return Err(Error::InvalidArgument("Kossakowski matrix must be symmetric".into()));
    }
    let mut report = ValidationReport::default();
    for i in 0..3 {
        for j in i..3 {
            let value = k.c[i][j];
            let bound = 0.5 * (k.c[i][i] + k.c[j][j]);
            if value.abs() > bound {
                report.violations.push(BoundViolation { i: i + 1, j: j + 1, value, bound });
            } else if i != j && bound > 0.0 && value.abs() == bound {
                report.boundary.push((i + 1, j + 1));
            }
        }
    }
    Ok(report)
}

/// Antisymmetric unitary part of the generator.
pub fn build_hamiltonian_part(p: &OscillationParams) -> Result<Mat4> {
    p.validate()?;
    let (s2, c2) = (2.0 * p.theta).sin_cos();
    let h12 = -p.dm2 / (2.0 * p.energy) + p.v_cc * c2;
    let h13 = -p.v_cc * p.phi.sin() * s2;
    let h23 = p.v_cc * p.phi.cos() * s2;
    let mut h = Mat4::ZERO;
    h[(1, 2)] = h12;
    h[(2, 1)] = -h12;
    h[(1, 3)] = h13;
    h[(3, 1)] = -h13;
    h[(2, 3)] = h23;
    h[(3, 2)] = -h23;
    Ok(h)
}

/// Symmetric dissipative part `D = −2·K` of the generator.
pub fn build_dissipator(k: &KossakowskiCoefficients) -> Result<Mat4> {
    let report = validate_kossakowski(k)?;
    if !report.passed() {
        return Err(Error::RejectedCoefficients(report));
    }
    let c = &k.c;
    let inner = [
        [c[1][1] + c[2][2], -c[0][1], -c[0][2]],
        [-c[0][1], c[0][0] + c[2][2], -c[1][2]],
        [-c[0][2], -c[1][2], c[0][0] + c[1][1]],
    ];
    let mut d = Mat4::ZERO;
    for r in 0..3 {
        for col in 0..3 {
            // 0.0 - 2x keeps zero entries as +0.0
            d[(r + 1, col + 1)] = 0.0 - 2.0 * inner[r][col];
        }
    }
    Ok(d)
}

/// Effective generator together with the inputs that produced it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Generator4 {
    matrix: Mat4,
    source: Option<(OscillationParams, KossakowskiCoefficients)>,
}

impl Generator4 {
    /// Wraps an arbitrary matrix with no physical provenance.
    pub fn from_matrix(matrix: Mat4) -> Self {
        Generator4 { matrix, source: None }
    }

    pub fn matrix(&self) -> &Mat4 {
        &self.matrix
    }

    pub fn params(&self) -> Option<&OscillationParams> {
        self.source.as_ref().map(|(p, _)| p)
    }

    pub fn coefficients(&self) -> Option<&KossakowskiCoefficients> {
        self.source.as_ref().map(|(_, k)| k)
    }
}

impl Deref for Generator4 {
    type Target = Mat4;
    fn deref(&self) -> &Mat4 {
        &self.matrix
    }
}

pub fn build_effective_generator(
    p: &OscillationParams,
    k: &KossakowskiCoefficients,
) -> Result<Generator4> {
    let h = build_hamiltonian_part(p)?;
    let d = build_dissipator(k)?;
    Ok(Generator4 { matrix: h + d, source: Some((*p, *k)) })
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use proptest::prelude::*;

    fn reference_coefficients() -> KossakowskiCoefficients {
        KossakowskiCoefficients::uniform_with_c12(0.1, 0.1)
    }

    fn reference_params(phi: f64) -> OscillationParams {
        OscillationParams::new(0.187 * PI, 7.54e-5, 1.0, 2.0, phi).unwrap()
    }

    #[test]
    fn zero_coefficients_pass() {
        let r = validate_kossakowski(&KossakowskiCoefficients::ZERO).unwrap();
        assert!(r.passed());
        assert!(!r.on_boundary());
    }

    #[test]
    fn reference_coefficients_pass_on_boundary() {
        let r = validate_kossakowski(&reference_coefficients()).unwrap();
        assert!(r.passed());
        assert_eq!(r.boundary, vec![(1, 2)]);
        assert_eq!(r.to_string(), "pass (boundary)");
    }

    #[test]
    fn oversized_c12_fails_with_pair_and_bound() {
        let k = KossakowskiCoefficients::from_six(0.1, 0.1, 0.0, 0.3, 0.0, 0.0);
        let r = validate_kossakowski(&k).unwrap();
        assert!(!r.passed());
        assert_eq!(r.violations.len(), 1);
        let v = r.violations[0];
        assert_eq!((v.i, v.j), (1, 2));
        assert_eq!(v.value, 0.3);
        assert!((v.bound - 0.1).abs() < 1e-15);
        assert!(r.to_string().contains("c12"));
    }

    #[test]
    fn negative_diagonal_fails() {
        let k = KossakowskiCoefficients::from_six(-0.1, 0.0, 0.0, 0.0, 0.0, 0.0);
        let r = validate_kossakowski(&k).unwrap();
        assert_eq!((r.violations[0].i, r.violations[0].j), (1, 1));
    }

    #[test]
    fn asymmetric_input_is_argument_error() {
        let mut k = reference_coefficients();
        k.c[0][1] = 0.05;
        assert!(matches!(validate_kossakowski(&k), Err(Error::InvalidArgument(_))));
        assert!(matches!(build_dissipator(&k), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn psd_check_is_stricter_than_pairwise_bound() {
        // Passes the pairwise bounds but [c] has a negative eigenvalue.
        let k = KossakowskiCoefficients::from_six(0.1, 0.1, 0.1, 0.1, 0.1, -0.1);
        assert!(validate_kossakowski(&k).unwrap().passed());
        assert!(!k.is_positive_semidefinite(1e-15));
        assert!(reference_coefficients().is_positive_semidefinite(1e-15));
    }

    #[test]
    fn hamiltonian_vanishes_in_massless_vacuum() {
        let p = OscillationParams::new(0.3, 0.0, 1.0, 0.0, 1.0).unwrap();
        assert_eq!(build_hamiltonian_part(&p).unwrap(), Mat4::ZERO);
    }

    #[test]
    fn hamiltonian_at_reference_point() {
        let h = build_hamiltonian_part(&reference_params(0.0)).unwrap();
        let two_theta = 2.0 * 0.187 * PI;
        assert_eq!(h[(1, 3)], 0.0);
        assert!((h[(1, 2)] - (-3.77e-5 + 2.0 * two_theta.cos())).abs() < 1e-15);
        assert!((h[(2, 3)] - 2.0 * two_theta.sin()).abs() < 1e-15);
        // Independent evaluation: cos(0.374π) = 0.38558399..., sin(0.374π) = 0.92267273...
        assert!((h[(1, 2)] - 0.771_130_284_554_793).abs() < 1e-12);
        assert!((h[(2, 3)] - 1.845_345_479_740_230).abs() < 1e-12);
        assert_eq!(h[(2, 1)], -h[(1, 2)]);
    }

    #[test]
    fn hamiltonian_at_quarter_phase() {
        let p = OscillationParams::new(PI / 4.0, 0.0, 1.0, 1.0, PI / 2.0).unwrap();
        let h = build_hamiltonian_part(&p).unwrap();
        assert!(h[(1, 2)].abs() < 1e-15);
        assert!((h[(1, 3)] + 1.0).abs() < 1e-15);
        assert!(h[(2, 3)].abs() < 1e-15);
    }

    #[test]
    fn invalid_params_are_rejected() {
        assert!(OscillationParams::new(0.1, 7e-5, 0.0, 1.0, 0.0).is_err());
        assert!(OscillationParams::new(0.1, -1.0, 1.0, 1.0, 0.0).is_err());
        assert!(OscillationParams::new(0.1, 0.0, 1.0, -1.0, 0.0).is_err());
        assert!(OscillationParams::new(2.0, 0.0, 1.0, 1.0, 0.0).is_err());
        assert!(OscillationParams::new(0.1, 0.0, 1.0, 1.0, 7.0).is_err());
        let mut p = OscillationParams::default();
        p.energy = -1.0;
        assert!(build_hamiltonian_part(&p).is_err());
    }

    #[test]
    fn dissipator_examples() {
        assert_eq!(build_dissipator(&KossakowskiCoefficients::ZERO).unwrap(), Mat4::ZERO);

        let g = 0.1;
        let d = build_dissipator(&KossakowskiCoefficients::uniform_with_c12(g, 0.0)).unwrap();
        let expected = Mat4::diag([0.0, -4.0 * g, -4.0 * g, -4.0 * g]);
        assert!(d.max_abs_diff(&expected) < 1e-16);

        let d = build_dissipator(&reference_coefficients()).unwrap();
        assert!((d[(1, 2)] - 0.2).abs() < 1e-16);
        assert!((d[(2, 1)] - 0.2).abs() < 1e-16);
        for i in 1..4 {
            assert!((d[(i, i)] + 0.4).abs() < 1e-16);
        }
        assert_eq!(d[(1, 3)], 0.0);
        assert_eq!(d[(2, 3)], 0.0);
    }

    #[test]
    fn dissipator_rejects_invalid_coefficients() {
        let k = KossakowskiCoefficients::from_six(0.1, 0.1, 0.0, 0.3, 0.0, 0.0);
        assert!(matches!(build_dissipator(&k), Err(Error::RejectedCoefficients(_))));
    }

    #[test]
    fn effective_generator_splits_into_parts() {
        let p = reference_params(1.3);
        let k = reference_coefficients();
        let g = build_effective_generator(&p, &k).unwrap();
        let h = build_hamiltonian_part(&p).unwrap();
        let d = build_dissipator(&k).unwrap();
        assert!(g.antisymmetric_part().max_abs_diff(&h) < 1e-16);
        assert!(g.symmetric_part().max_abs_diff(&d) < 1e-16);
        assert_eq!(g.params(), Some(&p));
        assert_eq!(g.coefficients(), Some(&k));
        assert_eq!(g.0[0], [0.0; 4]);

        let zero = OscillationParams::new(0.0, 0.0, 1.0, 0.0, 0.0).unwrap();
        let g0 = build_effective_generator(&zero, &KossakowskiCoefficients::ZERO).unwrap();
        assert_eq!(*g0.matrix(), Mat4::ZERO);
    }

    #[test]
    fn phi_is_periodic() {
        let k = reference_coefficients();
        let g0 = build_effective_generator(&reference_params(0.0), &k).unwrap();
        let g1 = build_effective_generator(&reference_params(TAU), &k).unwrap();
        assert!(g0.max_abs_diff(&g1) <= 1e-15);
    }

    fn params_strategy() -> impl Strategy<Value = OscillationParams> {
        (0.0..PI / 2.0, 0.0..1e-3, 0.1..20.0, 0.0..20.0, 0.0..TAU).prop_map(
            |(theta, dm2, energy, v_cc, phi)| OscillationParams { theta, dm2, energy, v_cc, phi },
        )
    }

    /// Symmetric coefficients satisfying the pairwise bounds.
    pub(crate) fn coefficients_strategy() -> impl Strategy<Value = KossakowskiCoefficients> {
        (prop::array::uniform3(0.0..0.5f64), prop::array::uniform3(-1.0..1.0f64)).prop_map(
            |(d, f)| {
                let b = |i: usize, j: usize| 0.5 * (d[i] + d[j]);
                KossakowskiCoefficients::from_six(
                    d[0],
                    d[1],
                    d[2],
                    f[0] * b(0, 1),
                    f[1] * b(0, 2),
                    f[2] * b(1, 2),
                )
            },
        )
    }

    proptest! {
        #[test]
        fn parts_have_exact_symmetry(p in params_strategy(), k in coefficients_strategy()) {
            let h = build_hamiltonian_part(&p).unwrap();
            prop_assert_eq!(h.transpose(), h.scale(-1.0));
            let d = build_dissipator(&k).unwrap();
            prop_assert_eq!(d.transpose(), d);
            for i in 0..4 {
                prop_assert!(d[(i, i)] <= 0.0);
            }
            let g = build_effective_generator(&p, &k).unwrap();
            prop_assert_eq!(g.0[0], [0.0; 4]);
        }

        #[test]
        fn parts_are_separable(
            p1 in params_strategy(), p2 in params_strategy(),
            k1 in coefficients_strategy(), k2 in coefficients_strategy(),
        ) {
            let g11 = build_effective_generator(&p1, &k1).unwrap();
            let g12 = build_effective_generator(&p1, &k2).unwrap();
            let g21 = build_effective_generator(&p2, &k1).unwrap();
            prop_assert!(g11.antisymmetric_part().max_abs_diff(&g12.antisymmetric_part()) <= 1e-13);
            prop_assert!(g11.symmetric_part().max_abs_diff(&g21.symmetric_part()) <= 1e-13);
        }

        #[test]
        fn phi_inert_without_matter(p in params_strategy(), k in coefficients_strategy(), phi in 0.0..TAU) {
            let p = p.with_v_cc(0.0);
            let a = build_effective_generator(&p, &k).unwrap();
            let b = build_effective_generator(&p.with_phi(phi), &k).unwrap();
            prop_assert_eq!(a.matrix(), b.matrix());
        }
    }
}
