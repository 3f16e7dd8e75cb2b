//! Lattice samplers for white noise and the Brownian sheet.

mod corner;
mod field;
mod grid;
mod multiscale;

pub use corner::{sample_corner, CornerDecomposition};
pub use field::{
    sample_rows, sample_sheet, sample_sheet_d, sample_white_noise, sheet_from_white_noise, slice_t, SheetField,
    WhiteNoiseField,
};
pub use grid::GridSpec;
pub use multiscale::{lil_s_grid, sample_multiscale, MultiScaleSheet};
