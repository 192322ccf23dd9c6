//! Site states, Stokes operators, and the diagonal two-site entangling
//! gates, together with their closed-form phase eigenvalues.
//!
//! The two-site gates are diagonal in the joint Fock basis, so they are
//! applied as phase functions rather than exponentiated matrices. The
//! right-hand-shift gate multiplies `|k_f⟩|k_t⟩` by `exp(-4it·k_f(N_t - k_t))`
//! and is orientation sensitive; the left-hand-shift gate multiplies by
//! `exp(-4it·k_f·k_t)` and is symmetric. Both reduce to the qubit
//! controlled-Z at one particle per site and `t = π/4`.

use crate::error::{Error, Result};
use crate::fock::{Register, SiteOperator, SiteSpace, SiteVector, TOL_ALGEBRAIC};
use num_complex::Complex64 as C64;
use std::f64::consts::PI;

/// Default entangling evolution time.
pub const DEFAULT_GATE_TIME: f64 = PI / 4.0;

/// Binomial coefficient as f64; exact for n up to 64.
pub(crate) fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut acc = 1.0_f64;
    for i in 0..k {
        acc = acc * (n - i) as f64 / (i + 1) as f64;
    }
    acc
}

/// Normalized mode amplitudes (α, β) of a spin-coherent site state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoherentSpec {
    alpha: C64,
    beta: C64,
}

impl CoherentSpec {
    pub fn new(alpha: C64, beta: C64) -> Result<Self> {
        let norm = (alpha.norm_sqr() + beta.norm_sqr()).sqrt();
        if (norm - 1.0).abs() > 1e-9 {
            return Err(Error::Unnormalized { norm });
        }
        Ok(CoherentSpec { alpha, beta })
    }

    /// Equal superposition of the two modes, the graph-state vertex default.
    pub fn plus() -> Self {
        let h = C64::new(1.0 / 2f64.sqrt(), 0.0);
        CoherentSpec { alpha: h, beta: h }
    }

    /// Equal superposition with a relative minus sign on mode b.
    pub fn minus() -> Self {
        let h = 1.0 / 2f64.sqrt();
        CoherentSpec {
            alpha: C64::new(h, 0.0),
            beta: C64::new(-h, 0.0),
        }
    }

    pub fn alpha(&self) -> C64 {
        self.alpha
    }

    pub fn beta(&self) -> C64 {
        self.beta
    }
}

/// Spin-coherent state of N bosons: amplitudes `√C(N,k) α^k β^(N-k)`.
pub fn coherent_state(n: usize, spec: CoherentSpec) -> SiteVector {
    let space = SiteSpace::new(n);
    let amps = (0..=n)
        .map(|k| {
            C64::new(binomial(n, k).sqrt(), 0.0)
                * spec.alpha.powu(k as u32)
                * spec.beta.powu((n - k) as u32)
        })
        .collect();
    SiteVector::new(space, amps).expect("length is n+1 by construction")
}

/// Fock basis ket `|k⟩` with k particles in mode a.
pub fn fock_ket(n: usize, k: usize) -> Result<SiteVector> {
    if k > n {
        return Err(Error::FockIndexOutOfRange { k, n });
    }
    let mut amps = vec![C64::new(0.0, 0.0); n + 1];
    amps[k] = C64::new(1.0, 0.0);
    Ok(SiteVector::new(SiteSpace::new(n), amps).expect("length checked"))
}

/// The three Schwinger-boson Stokes components.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StokesAxis {
    X,
    Y,
    Z,
}

/// Stokes operator on the fixed-N site space.
///
/// Z is diagonal with entries `2k - N`; X and Y couple neighbouring Fock
/// kets with weight `√((k+1)(N-k))`. They obey `[S^i, S^j] = 2iε_ijk S^k`,
/// twice the spin-(N/2) algebra.
pub fn stokes_matrix(n: usize, axis: StokesAxis) -> SiteOperator {
    let d = n + 1;
    let mut m = SiteOperator::zeros(d, d);
    match axis {
        StokesAxis::Z => {
            for k in 0..d {
                m[(k, k)] = C64::new(2.0 * k as f64 - n as f64, 0.0);
            }
        }
        StokesAxis::X => {
            for k in 0..n {
                let w = (((k + 1) * (n - k)) as f64).sqrt();
                m[(k + 1, k)] = C64::new(w, 0.0);
                m[(k, k + 1)] = C64::new(w, 0.0);
            }
        }
        StokesAxis::Y => {
            // a†b raises k with weight √((k+1)(N-k)); the -i sits on the
            // raising part.
            for k in 0..n {
                let w = (((k + 1) * (n - k)) as f64).sqrt();
                m[(k + 1, k)] = C64::new(0.0, -w);
                m[(k, k + 1)] = C64::new(0.0, w);
            }
        }
    }
    m
}

/// `exp(-i t H)` for Hermitian `H`, via eigendecomposition.
///
/// The reconstruction is checked to be unitary within 1e-10; a larger
/// deviation signals numeric breakdown and is returned as an error.
pub fn evolve_hermitian(generator: &SiteOperator, t: f64) -> Result<SiteOperator> {
    let d = generator.nrows();
    let se = nalgebra::SymmetricEigen::new(generator.clone());
    let phases = nalgebra::DVector::from_iterator(
        d,
        se.eigenvalues.iter().map(|&l| C64::new(0.0, -t * l).exp()),
    );
    let u = &se.eigenvectors * SiteOperator::from_diagonal(&phases) * se.eigenvectors.adjoint();
    let gram = u.adjoint() * &u;
    let mut dev = 0.0_f64;
    for i in 0..d {
        for j in 0..d {
            let expect = if i == j { 1.0 } else { 0.0 };
            dev = dev.max((gram[(i, j)] - C64::new(expect, 0.0)).norm());
        }
    }
    if dev > 1e-10 {
        return Err(Error::EigenFailure { deviation: dev });
    }
    Ok(u)
}

/// The N-boson Hadamard analogue, `exp(-i (3π/4) S^y)`.
///
/// Maps the two equal-weight coherent states onto the single-mode kets
/// `|k=N⟩` and `|k=0⟩`, up to global phase.
pub fn hadamard_bec(n: usize) -> Result<SiteOperator> {
    if n == 0 {
        return Err(Error::NoParticles);
    }
    evolve_hermitian(&stokes_matrix(n, StokesAxis::Y), 3.0 * PI / 4.0)
}

/// Eigenvalue phase of the right-hand-shift gate on `|k_from⟩|k_to⟩`.
pub fn rcz_phase(k_from: usize, k_to: usize, n_to: usize, t: f64) -> C64 {
    let e = 4.0 * k_from as f64 * (n_to as f64 - k_to as f64);
    C64::new(0.0, -t * e).exp()
}

/// Eigenvalue phase of the left-hand-shift gate on `|k_from⟩|k_to⟩`.
/// Symmetric under swapping the arguments.
pub fn lcz_phase(k_from: usize, k_to: usize, t: f64) -> C64 {
    let e = 4.0 * (k_from * k_to) as f64;
    C64::new(0.0, -t * e).exp()
}

/// Which diagonal entangling gate an edge carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GateKind {
    /// Right-hand component phase shift; orientation sensitive.
    Rcz,
    /// Left-hand component phase shift; symmetric.
    Lcz,
}

/// Typed, oriented entangling-gate descriptor.
///
/// `from` is the site whose Fock index conditions the phase; `to` is the
/// site whose coherent amplitude is shifted. For `Lcz` the orientation is
/// a labeling only.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EdgeGate {
    pub kind: GateKind,
    pub from: usize,
    pub to: usize,
    pub time: f64,
}

impl EdgeGate {
    pub fn rcz(from: usize, to: usize) -> Self {
        EdgeGate {
            kind: GateKind::Rcz,
            from,
            to,
            time: DEFAULT_GATE_TIME,
        }
    }

    pub fn lcz(from: usize, to: usize) -> Self {
        EdgeGate {
            kind: GateKind::Lcz,
            from,
            to,
            time: DEFAULT_GATE_TIME,
        }
    }

    pub fn with_time(mut self, time: f64) -> Self {
        self.time = time;
        self
    }

    /// Apply the gate to a register.
    pub fn apply(&self, r: &Register) -> Result<Register> {
        if self.to >= r.n_sites() {
            return Err(Error::SiteOutOfRange {
                site: self.to,
                n_sites: r.n_sites(),
            });
        }
        let t = self.time;
        match self.kind {
            GateKind::Rcz => {
                let n_to = r.sites()[self.to].n_particles();
                r.apply_pair_phase(self.from, self.to, |kf, kt| rcz_phase(kf, kt, n_to, t))
            }
            GateKind::Lcz => r.apply_pair_phase(self.from, self.to, |kf, kt| lcz_phase(kf, kt, t)),
        }
    }
}

/// Bare `S^z ⊗ S^z` evolution: phase `exp(-it (2k_i - N_i)(2k_j - N_j))`.
pub fn zz_evolution(r: &Register, i: usize, j: usize, t: f64) -> Result<Register> {
    if i >= r.n_sites() || j >= r.n_sites() {
        return Err(Error::SiteOutOfRange {
            site: i.max(j),
            n_sites: r.n_sites(),
        });
    }
    let ni = r.sites()[i].n_particles() as f64;
    let nj = r.sites()[j].n_particles() as f64;
    r.apply_pair_phase(i, j, |ki, kj| {
        let e = (2.0 * ki as f64 - ni) * (2.0 * kj as f64 - nj);
        C64::new(0.0, -t * e).exp()
    })
}

/// The earlier equal-number entangling gate, run for time `π/4N`.
///
/// Applies the right-hand-shift phase oriented from `i` to `j`. Tests
/// compare the output against its grouped closed form under both
/// orientations, since the two groupings differ for N > 1.
pub fn legacy_cz(r: &Register, i: usize, j: usize) -> Result<Register> {
    if i >= r.n_sites() || j >= r.n_sites() {
        return Err(Error::SiteOutOfRange {
            site: i.max(j),
            n_sites: r.n_sites(),
        });
    }
    let ni = r.sites()[i].n_particles();
    let nj = r.sites()[j].n_particles();
    if ni != nj {
        return Err(Error::UnequalParticleNumbers { n1: ni, n2: nj });
    }
    if ni == 0 {
        return Err(Error::NoParticles);
    }
    let t = PI / (4.0 * ni as f64);
    r.apply_pair_phase(i, j, |kf, kt| rcz_phase(kf, kt, nj, t))
}
