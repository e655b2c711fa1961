pub mod abelian;
pub mod characters;
pub mod conditions;
pub mod cyclotomic;
pub mod datum;
pub mod error;
pub mod group;
pub mod linalg;
pub mod named;
pub mod poly;
pub mod report;
pub mod search;
pub mod smallgroup;
pub mod table;

pub use error::{Error, GroupError, Result};
