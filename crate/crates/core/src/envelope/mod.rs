//! Envelope membership: the inductive cone tower as a semi-decision
//! procedure, certificates, finite-stage functor tables, and a brute-force
//! closure oracle used as independent ground truth.

mod certificate;
mod functor;
mod oracle;
mod tower;

use std::sync::Arc;

use crate::exactlin::Ring;
use crate::homotopy::{Complex, Context};

pub use certificate::{CertificateFault, MembershipCertificate};
pub use functor::FunctorEntry;
pub use oracle::{OracleBounds, OracleError, OracleOutcome};
pub use tower::{
    DeathCriterion, GlobalDeath, Stage, StageDiagnostics, TowerReport, TowerState, Verdict,
};

/// The generator set `D`, in manifest order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorSet<E> {
    elements: Vec<Arc<Complex<E>>>,
}

impl<E> GeneratorSet<E> {
    pub fn new(elements: Vec<Arc<Complex<E>>>) -> Self {
        GeneratorSet { elements }
    }

    pub fn elements(&self) -> &[Arc<Complex<E>>] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

impl<R: Ring> Context<R> {
    pub fn generator_set(&self, elements: Vec<Complex<R::Elem>>) -> GeneratorSet<R::Elem> {
        GeneratorSet::new(elements.into_iter().map(Arc::new).collect())
    }
}
