use num_bigint::BigInt;

use super::cochains::{cup_pairing, filtered_cochains};
use crate::error::{Error, Result};
use crate::simplicial::complex::SimplicialMap;
use crate::simplicial::Cellular;
use crate::ssengine::FilteredCochainComplex;

/// Filtration of `C*(X; Z/modulus)` by preimages of skeleta of the base:
/// `filt(σ) = dim p(σ)`, with the cup product attached.
pub fn build_serre(map: &SimplicialMap, modulus: &BigInt) -> Result<FilteredCochainComplex> {
    let x = map.source();
    if x.n_vertices() == 0 {
        return Err(Error::InvalidMap("empty total space".into()));
    }
    let (mut cx, idx) = filtered_cochains(x, modulus, |p, i| map.image(&x.simplices(p)[i]).len() as i64 - 1)?;
    cx.set_product(cup_pairing(x, &idx))?;
    Ok(cx)
}

/// Skeletal filtration of `C*(K; Z/modulus)` with the cup product.
pub fn build_skeletal<C: Cellular + ?Sized>(k: &C, modulus: &BigInt) -> Result<FilteredCochainComplex> {
    let (mut cx, idx) = filtered_cochains(k, modulus, |p, _| p as i64)?;
    cx.set_product(cup_pairing(k, &idx))?;
    Ok(cx)
}
