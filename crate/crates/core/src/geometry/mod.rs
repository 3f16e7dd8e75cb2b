//! Geometry of the sheet's range: point hitting, range volume, the
//! occupation-measure Fourier integrand and level-component probabilities.

mod hit;
mod kendall;
mod sojourn;

pub use hit::{
    fit_hit_slope, hit_probabilities, hit_probability, hit_scaling, min_distance, range_volume, range_volume_sample,
    BallNorm, HitQuery, HitScaling, MIN_HITS,
};
pub use kendall::{boundary_nodes, kendall_event, kendall_j, kendall_limit, kendall_table};
pub use sojourn::{
    sojourn_fourier_mc, sojourn_integrable, sojourn_q, sojourn_second_moment, sojourn_spectrum, tau_squared,
    SojournSpectrum,
};
