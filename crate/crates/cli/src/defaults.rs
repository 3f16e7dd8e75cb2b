//! Default experiment parameters.
//!
//! The command-line defaults and the acceptance suite both read these, so
//! running a subcommand without flags reproduces one seed of the
//! corresponding acceptance run.

pub const SEED: u64 = 0;

pub const SIM_S_STEPS: usize = 64;
pub const SIM_T_STEPS: usize = 64;
pub const COV_REPLICAS: usize = 10_000;
pub const COV_STEPS: usize = 8;
pub const COV_SIDE: f64 = 2.0;
/// Probe pairs on the `COV_STEPS x COV_STEPS` lattice over `[0, COV_SIDE]^2`,
/// as `((i1, j1), (i2, j2))` node indices.
pub const COV_PROBES: [((usize, usize), (usize, usize)); 10] = [
    ((4, 4), (8, 4)),
    ((4, 4), (4, 4)),
    ((8, 8), (8, 8)),
    ((2, 6), (6, 2)),
    ((1, 1), (8, 8)),
    ((3, 5), (5, 7)),
    ((8, 2), (2, 8)),
    ((6, 6), (7, 3)),
    ((1, 8), (8, 1)),
    ((5, 5), (6, 6)),
];

pub const LIL_THETA: f64 = 2.0;
pub const LIL_N_MIN: i32 = 10;
pub const LIL_N_MAX: i32 = 40;
pub const LIL_S_STEPS: usize = 64;
pub const LIL_BAND: (f64, f64) = (0.7, 1.3);

pub const BLOCK_C_LOWER: f64 = 0.5;
pub const BLOCK_C_UPPER: f64 = 1.5;
pub const BLOCK_EPS: f64 = 0.1;
pub const BLOCK_E_FLOOR: f64 = 0.05;
pub const BLOCK_F_FROM: i32 = 25;

pub const MODULUS_S_STEPS: usize = 64;
pub const MODULUS_T_STEPS: usize = 1 << 17;
pub const MODULUS_EPS_POW: [i32; 7] = [8, 9, 10, 11, 12, 13, 14];
pub const MODULUS_BAND: (f64, f64) = (0.85, 1.1);

pub const CHUNG_EPS_POW: i32 = 12;
pub const CHUNG_T_STEPS: usize = 1 << 18;
pub const CHUNG_S_STEPS: usize = 8;
pub const CHUNG_S_MAX: f64 = 1.0;
pub const CHUNG_T_SPAN: f64 = 1.0;
pub const CHUNG_BAND: (f64, f64) = (0.85, 1.4);
pub const CHUNG_TREND_POW: [i32; 4] = [6, 8, 10, 12];

pub const NODIFF_LEVELS: [usize; 5] = [16, 32, 64, 128, 256];
pub const NODIFF_S_STEPS: usize = 16;
pub const NODIFF_T_STEPS: usize = 1 << 13;
pub const NODIFF_T_SPAN: f64 = 0.5;

pub const QV_DEPTH: u32 = 12;
pub const QV_S_STEPS: usize = 64;
pub const QV_T: f64 = 1.0;
pub const QV_BOUND: f64 = 0.15;

pub const UPPER_ALPHAS: [f64; 3] = [2.0, 4.0, 6.0];

pub const CAP_EVENT: &str = "zero-crossing:1";
pub const CAP_HORIZON: f64 = 5.0;
pub const CAP_S_STEPS: usize = 500;
pub const CAP_T_STEPS: usize = 64;
pub const CAP_REPLICAS: usize = 2000;

pub const MARKOV_LAMBDA: f64 = 1.0;
pub const MARKOV_DS: f64 = 0.01;
pub const MARKOV_T_STEPS: usize = 128;
pub const MARKOV_HORIZON: f64 = 20.0;
pub const MARKOV_REPLICAS: usize = 1000;
pub const MARKOV_LAGS: &str = "0.5:0.5,1:0.5,1:1,0.25:1";

pub const REFLECT_POINTS: &str = "1:0.5,1:1,1:2,2:1,0.5:1.5";
pub const REFLECT_REPLICAS: usize = 10_000;
pub const REFLECT_S_STEPS: usize = 32;
pub const REFLECT_T_STEPS: usize = 256;

pub const MEHLER_S: [f64; 3] = [0.5, 1.0, 2.0];
pub const MEHLER_X_STEPS: usize = 64;
pub const MEHLER_REPLICAS: usize = 10_000;
/// `f|g|s` triples for the symmetry check.
pub const MEHLER_TRIPLES: [(&str, &str, f64); 3] = [
    ("eval:1", "eval:0.5", 0.5),
    ("square-eval:1", "sup", 1.0),
    ("integral", "square-eval:0.5", 2.0),
];

pub const HIT_DIM: usize = 5;
pub const HIT_EPS: [f64; 3] = [0.4, 0.3, 0.2];
pub const HIT_GRID: usize = 256;
pub const HIT_REPLICAS: usize = 10_000;
pub const HITSCALE_DIMS: [usize; 3] = [3, 5, 6];

pub const RANGE_DIM: usize = 2;
pub const RANGE_BOXES: [f64; 2] = [0.1, 0.05];
pub const RANGE_GRID: usize = 256;
pub const RANGE_REPLICAS: usize = 50;

pub const SOJOURN_DIM: usize = 3;
pub const SOJOURN_XI: [f64; 6] = [0.0, 1.0, 10.0, 100.0, 1000.0, 10_000.0];
pub const SOJOURN_S_MAX: f64 = 10.0;
pub const SOJOURN_GRID: usize = 200;
pub const SOJOURN_REPLICAS: usize = 2000;

pub const KENDALL_R: [f64; 3] = [0.1, 0.05, 0.02];
pub const KENDALL_BOUNDARY: usize = 64;
pub const KENDALL_LATTICE: usize = 256;
pub const KENDALL_REPLICAS: usize = 10_000;
pub const KENDALL_LIMIT_STEPS: usize = 4096;
pub const KENDALL_FLOOR: f64 = 0.02;

/// Allowed deviation of the fitted hitting slope from `d - 4`.
pub fn hit_tolerance(d: usize) -> f64 {
    match d {
        6 => 0.7,
        _ => 0.5,
    }
}
