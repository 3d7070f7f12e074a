//! File formats, result records and synthetic instances.

pub mod generate;
pub mod instance;
pub mod json;
pub mod record;
pub mod table;

pub use generate::{random_instance, random_system};
pub use instance::{instance_from_file, instance_to_file, instance_to_json, parse_instance, parse_instance_value, parse_int_matrix, Instance, InstanceFile};
pub use record::ResultRecord;
pub use table::{parse_eigenvalue_table, EigenvalueTable, IngestMode};
