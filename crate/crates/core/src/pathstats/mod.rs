//! Path statistics of the sheet: iterated-logarithm profiles, moduli of
//! continuity and nondifferentiability, quadratic variation, upper-class
//! integral tests and the seminorm reflection principle.

mod lil;
mod modulus;
mod qv;
mod reflect;
mod upper;
mod window;

pub use lil::{lil_block_scan, lil_denominator, lil_denominator_direct, lil_profile, BlockEvents, LILProfile};
pub use modulus::{
    chung_modulus, chung_modulus_ou, chung_rows, levy_modulus, nowhere_diff_stat, ChungProfile, ModulusProfile,
};
pub use qv::{partition_dyadic, quadratic_variation, MeshCertificate, PartitionKind, PartitionScheme, QVProfile};
pub use reflect::{reflection_check, reflection_holds};
pub use upper::{
    integral_table, upper_class_test, upper_class_test_with_cutoff, IntegralTest, IntegralTestResult, UpperFunction,
    Verdict,
};
