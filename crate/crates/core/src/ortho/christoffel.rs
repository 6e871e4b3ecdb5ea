use crate::error::{Error, Result};
use crate::field::FieldElement;

use super::poly::Poly;

/// Christoffel transform of a monic orthogonal family p_0, …, p_M with
/// norms h_0, …, h_M at the node a. Returns p̃_0, …, p̃_{M−1} and h̃_n.
pub fn christoffel(p: &[Poly], h: &[FieldElement], a: &FieldElement) -> Result<(Vec<Poly>, Vec<FieldElement>)> {
    if p.len() != h.len() {
        return Err(Error::Shape(format!("{} polynomials but {} norms", p.len(), h.len())));
    }
    let count = p.len().saturating_sub(1);
    let values: Vec<FieldElement> = p.iter().map(|pn| pn.eval(a)).collect();
    let mut polys = Vec::with_capacity(count);
    let mut norms = Vec::with_capacity(count);
    for n in 0..count {
        if values[n].is_zero() {
            return Err(Error::ZeroAtNode { index: n });
        }
        let ratio = values[n + 1].div_exact(&values[n]);
        let numer = &p[n + 1] - &p[n].scale(&ratio);
        let (quot, rem) = numer.div_linear(a);
        if !rem.is_zero() {
            return Err(Error::Remainder { index: n });
        }
        norms.push(-(&ratio * &h[n]));
        polys.push(quot);
    }
    Ok((polys, norms))
}
