//! Multi-site register of fixed-particle-number bosonic sites and the
//! primitive linear-algebra operations everything else is built from.
//!
//! A site with `N` particles shared between two internal modes `a` and `b`
//! has an `(N+1)`-dimensional state space. The Fock index `k` counts the
//! particles in mode `a` (mode `b` then holds `N - k`). A register is the
//! tensor product of its sites, stored as a dense complex vector in
//! row-major order with site 0 slowest, so serialized states are
//! reproducible byte for byte.

use crate::error::{Error, Result};
use num_complex::Complex64 as C64;

/// Tolerance for algebraic identities (norms, commuting diagonals).
pub const TOL_ALGEBRAIC: f64 = 1e-12;
/// Tolerance for results that pass through a matrix exponential.
pub const TOL_EXPONENTIAL: f64 = 1e-9;

/// Dense complex matrix acting on a single site.
pub type SiteOperator = nalgebra::DMatrix<C64>;

/// A single two-mode site with a conserved particle number.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SiteSpace {
    n_particles: usize,
}

impl SiteSpace {
    pub fn new(n_particles: usize) -> Self {
        SiteSpace { n_particles }
    }

    /// Conserved particle number of the site.
    pub fn n_particles(&self) -> usize {
        self.n_particles
    }

    /// State-space dimension, always `n_particles + 1`.
    pub fn dim(&self) -> usize {
        self.n_particles + 1
    }
}

/// Pure state of one site: amplitudes over Fock kets `|k⟩`, k = 0..=N.
#[derive(Debug, Clone)]
pub struct SiteVector {
    space: SiteSpace,
    amplitudes: Vec<C64>,
}

impl SiteVector {
    pub fn new(space: SiteSpace, amplitudes: Vec<C64>) -> Result<Self> {
        if amplitudes.len() != space.dim() {
            return Err(Error::DimensionMismatch {
                expected: space.dim(),
                got: amplitudes.len(),
            });
        }
        Ok(SiteVector { space, amplitudes })
    }

    pub fn space(&self) -> SiteSpace {
        self.space
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes
            .iter()
            .map(|a| a.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Rescale to unit norm. Errors if the vector is numerically zero.
    pub fn normalize(mut self) -> Result<Self> {
        let n = self.norm();
        if n < TOL_ALGEBRAIC {
            return Err(Error::Unnormalized { norm: n });
        }
        let inv = C64::new(1.0 / n, 0.0);
        for a in &mut self.amplitudes {
            *a *= inv;
        }
        Ok(self)
    }

    pub fn inner(&self, other: &SiteVector) -> Result<C64> {
        if self.space != other.space {
            return Err(Error::StructureMismatch);
        }
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }
}

/// Joint pure state of an ordered list of sites.
///
/// Amplitude layout: index = Σ_i k_i · stride_i with stride_i = Π_{j>i} dim_j.
#[derive(Debug, Clone)]
pub struct Register {
    sites: Vec<SiteSpace>,
    amplitudes: Vec<C64>,
}

impl Register {
    /// Tensor product of normalized site states.
    ///
    /// Rejects inputs whose norm deviates from 1 by more than 1e-9.
    pub fn product(site_states: &[SiteVector]) -> Result<Self> {
        for sv in site_states {
            let n = sv.norm();
            if (n - 1.0).abs() > 1e-9 {
                return Err(Error::Unnormalized { norm: n });
            }
        }
        let sites: Vec<SiteSpace> = site_states.iter().map(|sv| sv.space()).collect();
        let mut amplitudes = vec![C64::new(1.0, 0.0)];
        for sv in site_states {
            let mut next = Vec::with_capacity(amplitudes.len() * sv.space().dim());
            for &a in &amplitudes {
                for &b in sv.amplitudes() {
                    next.push(a * b);
                }
            }
            amplitudes = next;
        }
        Ok(Register { sites, amplitudes })
    }

    /// Register from raw parts; lengths must agree.
    pub fn from_amplitudes(sites: Vec<SiteSpace>, amplitudes: Vec<C64>) -> Result<Self> {
        let dim: usize = sites.iter().map(|s| s.dim()).product();
        if amplitudes.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: amplitudes.len(),
            });
        }
        Ok(Register { sites, amplitudes })
    }

    pub fn sites(&self) -> &[SiteSpace] {
        &self.sites
    }

    pub fn n_sites(&self) -> usize {
        self.sites.len()
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    /// Stride of a site in the row-major amplitude layout.
    fn stride(&self, site: usize) -> usize {
        self.sites[site + 1..].iter().map(|s| s.dim()).product()
    }

    fn check_site(&self, site: usize) -> Result<()> {
        if site >= self.sites.len() {
            return Err(Error::SiteOutOfRange {
                site,
                n_sites: self.sites.len(),
            });
        }
        Ok(())
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes
            .iter()
            .map(|a| a.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn normalize(mut self) -> Result<Self> {
        let n = self.norm();
        if n < TOL_ALGEBRAIC {
            return Err(Error::Unnormalized { norm: n });
        }
        let inv = C64::new(1.0 / n, 0.0);
        for a in &mut self.amplitudes {
            *a *= inv;
        }
        Ok(self)
    }

    pub fn inner(&self, other: &Register) -> Result<C64> {
        if self.sites != other.sites {
            return Err(Error::StructureMismatch);
        }
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// Apply a single-site operator `m ⊗ 1` and return the new register.
    pub fn apply_site_operator(&self, site: usize, m: &SiteOperator) -> Result<Register> {
        self.check_site(site)?;
        let d = self.sites[site].dim();
        if m.nrows() != d || m.ncols() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: m.nrows().max(m.ncols()),
            });
        }
        let stride = self.stride(site);
        let outer = self.amplitudes.len() / (d * stride);
        let mut out = vec![C64::new(0.0, 0.0); self.amplitudes.len()];
        let mut x = vec![C64::new(0.0, 0.0); d];
        for o in 0..outer {
            for i in 0..stride {
                let base = o * d * stride + i;
                for k in 0..d {
                    x[k] = self.amplitudes[base + k * stride];
                }
                for row in 0..d {
                    let mut acc = C64::new(0.0, 0.0);
                    for col in 0..d {
                        acc += m[(row, col)] * x[col];
                    }
                    out[base + row * stride] = acc;
                }
            }
        }
        Ok(Register {
            sites: self.sites.clone(),
            amplitudes: out,
        })
    }

    /// Multiply each joint amplitude by `phase_fn(k_i, k_j)`.
    ///
    /// The phase table is validated to be unimodular before anything is
    /// touched, so a failed call leaves no partial state behind.
    pub fn apply_pair_phase<F>(&self, i: usize, j: usize, phase_fn: F) -> Result<Register>
    where
        F: Fn(usize, usize) -> C64,
    {
        self.check_site(i)?;
        self.check_site(j)?;
        if i == j {
            return Err(Error::SameSite { site: i });
        }
        let (di, dj) = (self.sites[i].dim(), self.sites[j].dim());
        let mut table = vec![C64::new(0.0, 0.0); di * dj];
        for ki in 0..di {
            for kj in 0..dj {
                let p = phase_fn(ki, kj);
                if (p.norm() - 1.0).abs() > TOL_ALGEBRAIC {
                    return Err(Error::NonUnimodularPhase { magnitude: p.norm() });
                }
                table[ki * dj + kj] = p;
            }
        }
        let (si, sj) = (self.stride(i), self.stride(j));
        let mut out = self.amplitudes.clone();
        for (idx, a) in out.iter_mut().enumerate() {
            let ki = (idx / si) % di;
            let kj = (idx / sj) % dj;
            *a *= table[ki * dj + kj];
        }
        Ok(Register {
            sites: self.sites.clone(),
            amplitudes: out,
        })
    }

    /// Contract one site against a bra vector, without renormalizing.
    ///
    /// The result has the site removed; its squared norm is the Born weight
    /// of the projection.
    pub fn contract_site(&self, site: usize, bra: &SiteVector) -> Result<Register> {
        self.check_site(site)?;
        if bra.space() != self.sites[site] {
            return Err(Error::DimensionMismatch {
                expected: self.sites[site].dim(),
                got: bra.space().dim(),
            });
        }
        let d = self.sites[site].dim();
        let stride = self.stride(site);
        let outer = self.amplitudes.len() / (d * stride);
        let mut out = vec![C64::new(0.0, 0.0); outer * stride];
        for o in 0..outer {
            for i in 0..stride {
                let mut acc = C64::new(0.0, 0.0);
                for k in 0..d {
                    acc += bra.amplitudes()[k].conj() * self.amplitudes[o * d * stride + k * stride + i];
                }
                out[o * stride + i] = acc;
            }
        }
        let mut sites = self.sites.clone();
        sites.remove(site);
        Ok(Register {
            sites,
            amplitudes: out,
        })
    }

    /// Replace one site's space and amplitudes via a linear map. Used by
    /// particle removal, where the site dimension shrinks.
    pub(crate) fn map_site(
        &self,
        site: usize,
        new_space: SiteSpace,
        map: impl Fn(&[C64], &mut [C64]),
    ) -> Result<Register> {
        self.check_site(site)?;
        let d_old = self.sites[site].dim();
        let d_new = new_space.dim();
        let stride = self.stride(site);
        let outer = self.amplitudes.len() / (d_old * stride);
        let mut out = vec![C64::new(0.0, 0.0); outer * d_new * stride];
        let mut x = vec![C64::new(0.0, 0.0); d_old];
        let mut y = vec![C64::new(0.0, 0.0); d_new];
        for o in 0..outer {
            for i in 0..stride {
                for k in 0..d_old {
                    x[k] = self.amplitudes[o * d_old * stride + k * stride + i];
                }
                y.iter_mut().for_each(|v| *v = C64::new(0.0, 0.0));
                map(&x, &mut y);
                for k in 0..d_new {
                    out[o * d_new * stride + k * stride + i] = y[k];
                }
            }
        }
        let mut sites = self.sites.clone();
        sites[site] = new_space;
        Ok(Register {
            sites,
            amplitudes: out,
        })
    }
}

/// Global-phase-invariant overlap `|⟨r1|r2⟩|²`.
pub fn fidelity(r1: &Register, r2: &Register) -> Result<f64> {
    let ip = r1.inner(r2)?;
    let n1 = r1.norm();
    let n2 = r2.norm();
    if n1 < TOL_ALGEBRAIC || n2 < TOL_ALGEBRAIC {
        return Err(Error::Unnormalized { norm: n1.min(n2) });
    }
    Ok((ip.norm() / (n1 * n2)).powi(2))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sv(n: usize, amps: &[f64]) -> SiteVector {
        let space = SiteSpace::new(n);
        SiteVector::new(space, amps.iter().map(|&x| C64::new(x, 0.0)).collect()).unwrap()
    }

    #[test]
    fn product_of_single_basis_site_is_identity() {
        let r = Register::product(&[sv(1, &[1.0, 0.0])]).unwrap();
        assert_eq!(r.amplitudes()[0], C64::new(1.0, 0.0));
        assert_eq!(r.amplitudes()[1], C64::new(0.0, 0.0));
    }

    #[test]
    fn product_of_uniform_pairs() {
        let h = 1.0 / 2f64.sqrt();
        let r = Register::product(&[sv(1, &[h, h]), sv(1, &[h, h])]).unwrap();
        for a in r.amplitudes() {
            assert!((a.re - 0.5).abs() < TOL_ALGEBRAIC);
            assert!(a.im.abs() < TOL_ALGEBRAIC);
        }
    }

    #[test]
    fn product_matches_direct_kronecker() {
        // three N=2 sites, generic real amplitudes
        let v1 = sv(2, &[0.5, 0.5, 1.0 / 2f64.sqrt()]);
        let v2 = sv(2, &[1.0 / 3f64.sqrt(), 1.0 / 3f64.sqrt(), 1.0 / 3f64.sqrt()]);
        let v3 = sv(2, &[0.6, 0.0, 0.8]);
        let r = Register::product(&[v1.clone(), v2.clone(), v3.clone()]).unwrap();
        assert_eq!(r.dim(), 27);
        assert!((r.norm() - 1.0).abs() < TOL_ALGEBRAIC);
        // independent direct expansion
        for (idx, &amp) in r.amplitudes().iter().enumerate() {
            let k3 = idx % 3;
            let k2 = (idx / 3) % 3;
            let k1 = idx / 9;
            let expect = v1.amplitudes()[k1] * v2.amplitudes()[k2] * v3.amplitudes()[k3];
            assert!((amp - expect).norm() < TOL_ALGEBRAIC);
        }
    }

    #[test]
    fn product_rejects_unnormalized_input() {
        let bad = SiteVector::new(
            SiteSpace::new(1),
            vec![C64::new(1.0, 0.0), C64::new(0.5, 0.0)],
        )
        .unwrap();
        assert!(matches!(
            Register::product(&[bad]),
            Err(Error::Unnormalized { .. })
        ));
    }

    #[test]
    fn site_vector_rejects_wrong_length() {
        let r = SiteVector::new(SiteSpace::new(2), vec![C64::new(1.0, 0.0)]);
        assert!(matches!(r, Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn identity_operator_leaves_register_unchanged() {
        let h = 1.0 / 2f64.sqrt();
        let r = Register::product(&[sv(1, &[h, h]), sv(1, &[1.0, 0.0])]).unwrap();
        let id = SiteOperator::identity(2, 2);
        let r2 = r.apply_site_operator(0, &id).unwrap();
        for (a, b) in r.amplitudes().iter().zip(r2.amplitudes()) {
            assert!((a - b).norm() < TOL_ALGEBRAIC);
        }
    }

    #[test]
    fn operator_dimension_mismatch_is_rejected() {
        let r = Register::product(&[sv(2, &[1.0, 0.0, 0.0])]).unwrap();
        let id = SiteOperator::identity(2, 2);
        assert!(matches!(
            r.apply_site_operator(0, &id),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn pair_phase_identity_is_noop() {
        let h = 1.0 / 2f64.sqrt();
        let r = Register::product(&[sv(1, &[h, h]), sv(1, &[h, h])]).unwrap();
        let r2 = r.apply_pair_phase(0, 1, |_, _| C64::new(1.0, 0.0)).unwrap();
        for (a, b) in r.amplitudes().iter().zip(r2.amplitudes()) {
            assert!((a - b).norm() < TOL_ALGEBRAIC);
        }
    }

    #[test]
    fn pair_phase_qubit_cz_on_uniform_state() {
        let h = 1.0 / 2f64.sqrt();
        let r = Register::product(&[sv(1, &[h, h]), sv(1, &[h, h])]).unwrap();
        let pi = std::f64::consts::PI;
        let r2 = r
            .apply_pair_phase(0, 1, |ki, kj| {
                (C64::new(0.0, -pi * (ki * kj) as f64)).exp()
            })
            .unwrap();
        let expect = [0.5, 0.5, 0.5, -0.5];
        for (a, e) in r2.amplitudes().iter().zip(expect) {
            assert!((a - C64::new(e, 0.0)).norm() < TOL_ALGEBRAIC);
        }
    }

    #[test]
    fn pair_phase_rejects_same_site_and_bad_phase() {
        let h = 1.0 / 2f64.sqrt();
        let r = Register::product(&[sv(1, &[h, h]), sv(1, &[h, h])]).unwrap();
        assert!(matches!(
            r.apply_pair_phase(0, 0, |_, _| C64::new(1.0, 0.0)),
            Err(Error::SameSite { .. })
        ));
        assert!(matches!(
            r.apply_pair_phase(0, 1, |_, _| C64::new(0.5, 0.0)),
            Err(Error::NonUnimodularPhase { .. })
        ));
    }

    #[test]
    fn diagonal_pair_phases_commute() {
        let v = sv(2, &[0.6, 0.0, 0.8]);
        let h = 1.0 / 2f64.sqrt();
        let r = Register::product(&[v, sv(1, &[h, h])]).unwrap();
        let f = |ki: usize, kj: usize| C64::new(0.0, 0.37 * (ki as f64) * (kj as f64 + 1.0)).exp();
        let g = |ki: usize, kj: usize| C64::new(0.0, -1.1 * (ki as f64 + kj as f64)).exp();
        let a = r.apply_pair_phase(0, 1, f).unwrap().apply_pair_phase(0, 1, g).unwrap();
        let b = r.apply_pair_phase(0, 1, g).unwrap().apply_pair_phase(0, 1, f).unwrap();
        for (x, y) in a.amplitudes().iter().zip(b.amplitudes()) {
            assert!((x - y).norm() < TOL_ALGEBRAIC);
        }
    }

    #[test]
    fn fidelity_basics() {
        let h = 1.0 / 2f64.sqrt();
        let r = Register::product(&[sv(1, &[h, h])]).unwrap();
        assert!((fidelity(&r, &r).unwrap() - 1.0).abs() < TOL_ALGEBRAIC);

        // global phase invariance
        let mut amps = r.amplitudes().to_vec();
        let phase = C64::new(0.0, 0.7).exp();
        for a in &mut amps {
            *a *= phase;
        }
        let r2 = Register::from_amplitudes(r.sites().to_vec(), amps).unwrap();
        assert!((fidelity(&r, &r2).unwrap() - 1.0).abs() < TOL_ALGEBRAIC);

        // orthogonal basis kets
        let e0 = Register::product(&[sv(1, &[1.0, 0.0])]).unwrap();
        let e1 = Register::product(&[sv(1, &[0.0, 1.0])]).unwrap();
        assert!(fidelity(&e0, &e1).unwrap() < TOL_ALGEBRAIC);

        // structure mismatch
        let other = Register::product(&[sv(2, &[1.0, 0.0, 0.0])]).unwrap();
        assert!(matches!(fidelity(&r, &other), Err(Error::StructureMismatch)));
    }

    #[test]
    fn contract_site_reduces_structure() {
        let h = 1.0 / 2f64.sqrt();
        let r = Register::product(&[sv(1, &[h, h]), sv(1, &[1.0, 0.0])]).unwrap();
        let bra = sv(1, &[1.0, 0.0]);
        let c = r.contract_site(1, &bra).unwrap();
        assert_eq!(c.n_sites(), 1);
        assert!((c.norm() - 1.0).abs() < TOL_ALGEBRAIC);
    }
}
