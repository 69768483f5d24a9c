//! Closed-form bound calculators and cycle statistics of random covers.

pub mod calculators;
pub mod cycles;
pub mod ledger;

pub use calculators::{
    calculator_grid, collar_width, delocalization_bound, flattening_cost, grid_csv, planar_cheeger,
    planar_lambda1, planar_lambda1_enclosure, FlatteningCost, GridRow,
};
pub use cycles::{
    cycle_counts, cycle_stats, empirical_pmf, poisson_pmf, total_variation, CycleStatReport,
};
pub use ledger::{bisect_threshold, ledger_solve, ConstantsLedger, LedgerParams};
