//! Exact-arithmetic engine for the polynomial representation theory of the
//! compact orthogonal/symplectic dual action on n-by-k matrix variables:
//! oscillator operator families, harmonic decomposition, isotypic analysis,
//! and first-occurrence bookkeeping.
//!
//! No floating point anywhere: scalars are arbitrary-precision rationals
//! (or Gaussian rationals where rotation weights demand them), and every
//! verification is an exact identity, not an approximation.

pub mod basis;
mod cache;
pub mod diffop;
pub mod error;
pub mod frame;
pub mod harmonic;
pub mod isotypic;
pub mod matrix;
pub mod occurrence;
pub mod operators;
pub mod partitions;
pub mod monomial;
pub mod poly;
pub mod rational;
pub mod shape;

pub use basis::{graded_basis, monomial_basis, GradedBasis, MonoSpan};
pub use diffop::{kernel_basis, CxOp, DiffOperator, Op};
pub use error::{CoreError, Result};
pub use frame::OrthFrame;
pub use harmonic::{
    harmonic_dimension_one_column, harmonic_space, invariant_subspace, separation_of_variables,
    weight_ladder, HarmonicSpace, LadderRung, SeparationCertificate, SeparationLayer, WeightLadder,
};
pub use isotypic::{
    duality_certificate, irreducibility_certificate, isotypic_decomposition, DualityCertificate,
    DualityPairRow, IrreducibilityCertificate, IrreducibilityRow, IsotypicComponent,
    IsotypicReport, SpaceKind,
};
pub use occurrence::{
    conservation_check, conservation_check_with, first_occurrence, first_occurrence_with, gl_duality_check,
    persistence_check, persistence_check_with, stable_range_check, ConservationCertificate,
    ConservationRow, GlDualityCertificate, GlDualityComponent, OccurrenceResult,
    OccurrenceWitness, PersistenceCertificate, PersistenceRow, ReportCache, StableRangeCertificate,
    StableRangeRow,
};
pub use operators::{
    build_orth, build_sl2, build_sp2k, certify_relations, group_act, OrthGenerators,
    RelationReport, SignedPermAction, Sl2Triple, Sp2kGenerators,
};
pub use partitions::{
    det_twist, enumerate_orth_params, gl_dimension, partitions_of, predicted_first_occurrence,
    GlIrrepParam, OrthIrrepParam, Partition,
};
pub use monomial::Monomial;
pub use poly::{CxPoly, Poly, Polynomial};
pub use rational::{GaussRat, Rat, Scalar};
pub use shape::{Shape, VarIndex};
