use std::sync::Arc;

use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

use super::{GeneratorSet, TowerState};
use crate::exactlin::Ring;
use crate::homotopy::{ChainMap, Complex, Context, Homotopy};

/// Evidence that `Y` is a retract of `X' = Cone(α_{0,N})[-1]`, an object
/// built from `D` by `N` rounds of cones over direct sums.
///
/// In localized runs `proj ∘ lift = scale · id_Y` with `scale` prime to `p`,
/// which is a retraction once `scale` is inverted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MembershipCertificate<E> {
    pub stage: usize,
    pub prime: Option<u64>,
    pub scale: E,
    /// Copies of each generator coned in at each stage.
    pub manifest: Vec<Vec<usize>>,
    pub base: Arc<Complex<E>>,
    /// `α_{0,N} : Y → Y_N`.
    pub alpha: ChainMap<E>,
    /// `h` with `scale · α_{0,N} = d h + h d`.
    pub death: Homotopy<E>,
    pub object: Arc<Complex<E>>,
    pub proj: ChainMap<E>,
    pub lift: ChainMap<E>,
    /// Witness for `proj ∘ lift ~ scale · id_Y`.
    pub retract_homotopy: Homotopy<E>,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum CertificateFault {
    #[error("base object does not match the target complex")]
    BaseMismatch,
    #[error("tower reproduction failed: {0}")]
    TowerMismatch(String),
    #[error("object is not the shifted cone of the recorded tower map")]
    ObjectMismatch,
    #[error("scale is not invertible at the recorded prime")]
    ScaleNotInvertible,
    #[error("death homotopy does not witness the vanishing of the tower map")]
    DeathWitness,
    #[error("lift is not a chain map into the certificate object")]
    LiftFailure,
    #[error("retract homotopy does not re-validate")]
    RetractWitness,
}

impl<R: Ring> Context<R> {
    /// `X' = Cone(α_{0,N})[-1]` with `X'^d = Y^d ⊕ Y_N^{d-1}`; the lift is
    /// `r^d = [s·id; -h^d]`, so that `proj ∘ r = s · id_Y` on the nose.
    pub fn extract_certificate(
        &self,
        state: &TowerState<R::Elem>,
        n: usize,
        scale: R::Elem,
        prime: Option<u64>,
        death: Homotopy<R::Elem>,
    ) -> MembershipCertificate<R::Elem> {
        let alpha = self.tower_map(state, n);
        let y = state.base.clone();
        let top = state.object(n).clone();
        let (object, proj) = self.certificate_object(&alpha);
        let lift = self.map_from_fn(&y, &object, |d| {
            let s_id = self.scale_module_map(&self.identity_module_map(y.rank(d)), &scale);
            let h = self.neg_module_map(&self.homotopy_component(&death, d));
            self.block_module_map(&[y.rank(d), top.rank(d - 1)], &[y.rank(d)], |bi, _| {
                Some(if bi == 0 { s_id.clone() } else { h.clone() })
            })
        });
        let pr = self.compose(&proj, &lift).expect("composable");
        let residual = self
            .sub_maps(&pr, &self.scale_map(&self.identity(&y), &scale))
            .expect("parallel");
        let retract_homotopy = self
            .null_homotopy(&residual)
            .unwrap_or_else(|| panic!("internal fault: lift failure at stage {n}"));
        MembershipCertificate {
            stage: n,
            prime,
            scale,
            manifest: state.manifest()[..n].to_vec(),
            base: y,
            alpha,
            death,
            object,
            proj,
            lift,
            retract_homotopy,
        }
    }

    fn certificate_object(
        &self,
        alpha: &ChainMap<R::Elem>,
    ) -> (Arc<Complex<R::Elem>>, ChainMap<R::Elem>) {
        let cone = self.cone(alpha);
        let proj = self.shift_map(&cone.proj, -1);
        (proj.source().clone(), proj)
    }

    /// Recomputes the tower and re-checks every witness; the first failing
    /// check is reported.
    pub fn verify_certificate(
        &self,
        generators: &GeneratorSet<R::Elem>,
        y: &Arc<Complex<R::Elem>>,
        cert: &MembershipCertificate<R::Elem>,
    ) -> Result<(), CertificateFault> {
        if cert.base != *y {
            return Err(CertificateFault::BaseMismatch);
        }
        let state = self.build_tower(generators, y, cert.stage);
        if state.height() != cert.stage {
            return Err(CertificateFault::TowerMismatch(format!(
                "tower is stationary at height {}, below the recorded stage {}",
                state.height(),
                cert.stage
            )));
        }
        if state.manifest() != cert.manifest {
            return Err(CertificateFault::TowerMismatch(
                "summand manifest differs".into(),
            ));
        }
        if self.tower_map(&state, cert.stage) != cert.alpha {
            return Err(CertificateFault::TowerMismatch("tower map differs".into()));
        }
        let (object, proj) = self.certificate_object(&cert.alpha);
        if object != cert.object || proj != cert.proj {
            return Err(CertificateFault::ObjectMismatch);
        }
        if !self.scale_is_unit(&cert.scale, cert.prime) {
            return Err(CertificateFault::ScaleNotInvertible);
        }
        let scaled = self.scale_map(&cert.alpha, &cert.scale);
        if !self.witnesses_null_homotopy(&scaled, &cert.death) {
            return Err(CertificateFault::DeathWitness);
        }
        if cert.lift.source() != y
            || cert.lift.target() != &object
            || !self.is_chain_map(&cert.lift)
        {
            return Err(CertificateFault::LiftFailure);
        }
        let pr = self
            .compose(&proj, &cert.lift)
            .map_err(|_| CertificateFault::LiftFailure)?;
        let residual = self
            .sub_maps(&pr, &self.scale_map(&self.identity(y), &cert.scale))
            .map_err(|_| CertificateFault::LiftFailure)?;
        if !self.witnesses_null_homotopy(&residual, &cert.retract_homotopy) {
            return Err(CertificateFault::RetractWitness);
        }
        Ok(())
    }

    fn scale_is_unit(&self, scale: &R::Elem, prime: Option<u64>) -> bool {
        let ring = self.ring();
        match prime {
            None => *scale == ring.one(),
            Some(p) => {
                let s = ring.to_int(scale);
                !s.is_zero() && s.gcd(&p.into()).is_one()
            }
        }
    }
}
