pub mod analysis;
pub mod blocking;
pub mod census;
pub mod corpus;
pub mod field;
pub mod geometry;
pub mod io;
pub mod linalg;
pub mod pointset;
pub mod reduction;
pub mod search;
