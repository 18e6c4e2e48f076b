//! File formats, reports, seeded random corpora and the `polymat` command line
//! for [`polymat_core`].

pub mod cli;
pub mod formats;
pub mod random;
pub mod report;
pub mod suites;
