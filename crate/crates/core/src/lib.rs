pub mod algebra;
pub mod analysis;
pub mod bitset;
pub mod catalog;
pub mod cayley;
pub mod clique;
pub mod feasibility;
pub mod group;
pub mod io;
pub mod search;
