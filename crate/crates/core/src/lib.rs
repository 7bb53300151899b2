//! Exact computations with Kirillov, medium and big algebras of irreducible
//! `sl_n` representations.
//!
//! Everything is done over the rationals. The crate is layered bottom-up:
//! [`exact`] supplies arithmetic and linear algebra, [`lie`] the structure of
//! `sl_n`, [`rep`] the irreducible modules, [`kirillov`] the equivariant
//! operator families, [`big`] their restriction to the companion section,
//! [`multiplicity`] filtrations and q-analogues, and [`spectra`] principal
//! spectra and the diagram-automorphism action.

pub mod acceptance;
pub mod big;
pub mod exact;
pub mod kirillov;
pub mod lie;
pub mod multiplicity;
pub mod rep;
pub mod spectra;
