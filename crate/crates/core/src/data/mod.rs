//! Dataset ingestion, the majority-vote toy generator, and splitting.

mod delimited;
mod libsvm;
mod split;
mod toy;

pub use delimited::{load_csv, parse_csv, write_csv, CsvSchema, LabelColumn};
pub use libsvm::{load_libsvm, parse_libsvm, write_libsvm};
pub use split::train_test_split;
pub use toy::{generate_majority_toy, majority_label, TOY_DEFAULT_DIM, TOY_DEFAULT_N};
