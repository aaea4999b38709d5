use super::ring_is_drnc;
use crate::error::{Error, Result};
use crate::ring::{Element, Ring};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityVerdict {
    pub n: u32,
    pub holds: bool,
    /// An `x` with `x^n - x` not nilpotent.
    pub counterexample: Option<Element>,
    /// Ring D-RNC index, computed whenever the identity holds.
    pub drnc_index: Option<u32>,
}

/// Tests whether `x^n - x` is nilpotent for every `x`; when it is, the
/// ring must also be D-regularly nil clean, and that is confirmed.
pub fn identity_xn_minus_x(ring: &Ring, n: u32) -> Result<IdentityVerdict> {
    if n < 2 {
        return Err(Error::Precondition(format!("exponent must be at least 2, got {n}")));
    }
    ring.require_classify_size()?;
    let counterexample = ring.elements().find(|&x| {
        let d = ring.sub(ring.pow(x, n), x);
        !ring.is_nilpotent_idx(d.index())
    });
    if let Some(x) = counterexample {
        return Ok(IdentityVerdict {
            n,
            holds: false,
            counterexample: Some(x),
            drnc_index: None,
        });
    }
    let report = ring_is_drnc(ring)?;
    if !report.holds() {
        return Err(Error::defect(format!(
            "{} satisfies x^{n} - x ∈ Nil(R) but is not D-regularly nil clean",
            ring.spec()
        )));
    }
    Ok(IdentityVerdict {
        n,
        holds: true,
        counterexample: None,
        drnc_index: report.max_index,
    })
}
