pub mod classifier;
pub mod code;
pub mod cyclotomic;
pub mod finite_field;
pub mod minimality;
pub mod search;
pub mod theory;
pub mod walsh;
