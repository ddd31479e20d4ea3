//! Koszul pages, collapse of the hypercohomology spectral sequence, and Hodge
//! numbers of hypersurfaces and of the Fano scheme of lines of a quartic
//! sixfold.

pub mod fano;
pub mod jacobian;
pub mod koszul;
pub mod poly;
pub mod vanishing;
