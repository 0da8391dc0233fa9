//! Algebraic certificate machinery: abelian groups, splitting
//! homomorphisms, exact cyclotomic character sums, and the prime-size tile
//! reductions.

pub mod character;
pub mod cyclotomic;
pub mod group;
pub mod primetile;
pub mod radius1;
pub mod splitting;
