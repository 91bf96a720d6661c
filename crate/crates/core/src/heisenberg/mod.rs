//! Heisenberg groups: `H_n(F_q)` as tables, the discrete Heisenberg group
//! and its quotients `G(α, n)` in normal-form coordinates, and experiments
//! on verbal images and retractions.

pub mod classify;
pub mod experiments;
pub mod finite;
pub mod quotient;

pub use classify::{classify_cross_check, verbal_image_classify, Classification, ClassifyCheck, ImageClass};
pub use experiments::{absorption_check, prop6_experiment, Prop6Report};
pub use finite::{heis_element, heis_group, heis_index, HeisElement, HeisLaw};
pub use quotient::{
    identity_obstruction_check, quotient_heis, torsion_subgroup, ObstructionReport, QuotientHeis, QuotientHeisElement,
    TorsionDescription,
};
