//! Interchangeable ways of computing the wedge power `D^{∧n}`.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use crate::coalgebra::{is_subcoalgebra, Coalgebra};
use crate::error::{Error, Result};
use crate::linalg::{apply_tensor, kernel, quotient, Subspace};

use super::{iterated_delta, tensor_power, wedge, SizeCap};

pub trait WedgePowerStrategy: Send + Sync {
    fn name(&self) -> &'static str;

    /// `D^{∧n}` for a subcoalgebra `d` of `c`.
    fn wedge_power(&self, c: &Coalgebra, d: &Subspace, n: usize, cap: SizeCap) -> Result<Subspace>;
}

/// `D^{∧n} = D ∧ D^{∧(n-1)}` starting from `D^{∧0} = 0`. Never leaves the
/// tensor square.
pub struct RecursiveWedgePower;

/// `D^{∧n} = ker(p^{⊗n} ∘ Δ^{n-1})` for the cokernel `p : E → E/D`.
pub struct DirectWedgePower;

impl WedgePowerStrategy for RecursiveWedgePower {
    fn name(&self) -> &'static str {
        "recursive"
    }

    fn wedge_power(&self, c: &Coalgebra, d: &Subspace, n: usize, _cap: SizeCap) -> Result<Subspace> {
        if !is_subcoalgebra(c, d)? {
            return Err(Error::NotASubcoalgebra);
        }
        let mut stage = c.zero_space();
        for _ in 0..n {
            let next = wedge(c, d, &stage)?;
            if next == stage {
                break;
            }
            stage = next;
        }
        Ok(stage)
    }
}

impl WedgePowerStrategy for DirectWedgePower {
    fn name(&self) -> &'static str {
        "direct"
    }

    fn wedge_power(&self, c: &Coalgebra, d: &Subspace, n: usize, cap: SizeCap) -> Result<Subspace> {
        if !is_subcoalgebra(c, d)? {
            return Err(Error::NotASubcoalgebra);
        }
        match n {
            0 => Ok(c.zero_space()),
            1 => Ok(d.clone()),
            _ => {
                let p = quotient(d).projection().clone();
                let delta = iterated_delta(c, n - 1, cap)?;
                let head = tensor_power(&p, n - 1, cap)?;
                Ok(kernel(&apply_tensor(&head, &p, &delta)))
            }
        }
    }
}

type Registry = BTreeMap<&'static str, Box<dyn WedgePowerStrategy>>;

fn registry() -> &'static Registry {
    static REGISTRY: OnceLock<Registry> = OnceLock::new();
    REGISTRY.get_or_init(|| {
        let mut map: Registry = BTreeMap::new();
        for s in [
            Box::new(RecursiveWedgePower) as Box<dyn WedgePowerStrategy>,
            Box::new(DirectWedgePower),
        ] {
            map.insert(s.name(), s);
        }
        map
    })
}

pub fn strategy(name: &str) -> Option<&'static dyn WedgePowerStrategy> {
    registry().get(name).map(|b| b.as_ref())
}

pub fn strategy_names() -> Vec<&'static str> {
    registry().keys().copied().collect()
}
