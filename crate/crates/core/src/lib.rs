#![no_std]

extern crate alloc;
#[cfg(any(test, feature = "std"))]
extern crate std;

pub mod bits;
pub mod classifier;
pub mod enumerate;
pub mod error;
pub mod fincat;
pub mod gleason;
pub mod indcomp;
pub mod indlat;
pub mod lattice;
pub mod locale;
pub mod site;
