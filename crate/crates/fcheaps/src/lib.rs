//! Fully commutative heaps of types A and C̃, their decorated Temperley–Lieb diagrams,
//! and the maps between them.

pub mod coxeter;
pub mod decorated;
pub mod decoration;
pub mod error;
pub mod graft;
pub mod heap;
pub mod inverse;
pub mod json;
pub mod reduction;
pub mod render;
pub mod snake;
pub mod tl;
pub mod verify;

pub use coxeter::{CoxeterSpec, Family, Word};
pub use error::{Error, Result};
pub use heap::{Fork, ForkSide, Heap, HeapFamily};
