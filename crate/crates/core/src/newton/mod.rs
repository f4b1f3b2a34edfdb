mod dvr;
pub mod random;
mod series;

pub use dvr::{diagonal_blocks, dvr_length, BlockLength, DvrLength, DvrMatrix};
pub use series::{level_bound_check, torsion_valuations, LevelReport, PiSeries};
