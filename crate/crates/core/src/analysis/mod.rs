//! Statistics and bound checks on eigenform coefficients and their
//! q-exponents.

pub mod bounds;
pub mod density;
pub mod measure;
pub mod reports;

pub use bounds::{
    bound_38, first_sign_change, integrality_scan, n0_bound, BoundReport, IntegralExponent, IntegralityReport,
};
pub use density::{
    boundary_band_count, cm_value_scan, distinct_values_count, pair_joint_histogram, pair_sign_density, quadrants,
    sign_density, st_histogram, BandReport, Bin, CmPrime, CmScanReport, DistinctReport, JointReport, SatoTateReport,
    SignCounts, SignDensityReport, SignRatios,
};
pub use measure::{normalize_bp, st_measure, Interval};
pub use reports::{write_joint_csv, Check, CsvReport};
