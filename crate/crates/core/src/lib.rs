//! Exact Clifford algebra `Cl(m,m)` in two bases.
//!
//! The standard basis ([`gamma`]) is the reference implementation; the
//! extended Fock basis ([`efb`]) built from the null vectors
//! `p_i = (γ_{2i-1} + γ_{2i})/2`, `q_i = (γ_{2i-1} - γ_{2i})/2` gives a
//! product with `2^{3m}` nonzero structure constants instead of `2^{4m}`.
//! [`transform`] converts between the two, [`spinor`] exposes the null
//! plane structure of EFB elements and [`graph`] encodes independent sets of
//! a graph as the nonvanishing of powers `O^k` of a multivector.

pub mod bench;
pub mod efb;
pub mod error;
pub mod gamma;
pub mod graph;
pub mod multivector;
pub mod scalar;
pub mod spinor;
pub mod transform;

pub use efb::{EfbElement, EfbMultivector, EfbSymbol, Signature};
pub use error::{Error, Result};
pub use gamma::{GammaMonomial, GammaMultivector};
pub use graph::Graph;
pub use multivector::{Blade, Multivector};
pub use scalar::{Coefficient, MulCounter, Scalar};

/// Largest supported `m`: both bases pack a blade into 64 bits.
pub const MAX_M: usize = 32;

pub(crate) fn check_dim(m: usize) -> Result<()> {
    if m == 0 || m > MAX_M {
        return Err(Error::InvalidDimension(m));
    }
    Ok(())
}
