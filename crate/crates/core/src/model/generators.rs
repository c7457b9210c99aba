//! The generating cofibrations and the horn generators.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scat::pushout::Attachment;
use crate::scat::SFunctor;
use crate::sset::standard::{boundary_inclusion, horn_inclusion};

/// A generating functor together with the pushout shape it attaches.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Generator {
    pub name: String,
    pub attachment: Attachment,
    pub functor: SFunctor,
}

impl Generator {
    pub fn new(name: String, attachment: Attachment, dim_bound: usize) -> Result<Self> {
        let functor = attachment.functor(dim_bound)?;
        Ok(Generator { name, attachment, functor })
    }
}

fn check_bound(n_max: usize, dim_bound: usize) -> Result<()> {
    if n_max > dim_bound {
        return Err(Error::DimensionBound { degree: n_max, dim_bound });
    }
    Ok(())
}

/// `U∂Δ[n] → UΔ[n]` for `0 ≤ n ≤ n_max`, followed by `φ → {x}`.
pub fn generating_cofibrations(n_max: usize, dim_bound: usize) -> Result<Vec<Generator>> {
    check_bound(n_max, dim_bound)?;
    let mut out = Vec::with_capacity(n_max + 2);
    for n in 0..=n_max {
        let inclusion = boundary_inclusion(n, dim_bound)?;
        out.push(Generator::new(format!("C1[{n}]"), Attachment::Cell { inclusion }, dim_bound)?);
    }
    out.push(Generator::new("C2".into(), Attachment::NewObject, dim_bound)?);
    Ok(out)
}

/// `UV[n,k] → UΔ[n]` for `1 ≤ n ≤ n_max`, `0 ≤ k ≤ n`, ordered by `(n, k)`.
pub fn generating_acyclic_a1(n_max: usize, dim_bound: usize) -> Result<Vec<Generator>> {
    check_bound(n_max, dim_bound)?;
    let mut out = Vec::new();
    for n in 1..=n_max {
        for k in 0..=n {
            let inclusion = horn_inclusion(n, k, dim_bound)?;
            out.push(Generator::new(format!("A1[{n},{k}]"), Attachment::Cell { inclusion }, dim_bound)?);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        let c = generating_cofibrations(0, 2).unwrap();
        assert_eq!(c.iter().map(|g| g.name.as_str()).collect::<Vec<_>>(), ["C1[0]", "C2"]);
        assert_eq!(generating_acyclic_a1(1, 1).unwrap().len(), 2);
        assert_eq!(generating_acyclic_a1(2, 2).unwrap().len(), 5);
        assert!(generating_acyclic_a1(3, 2).is_err());
        for g in generating_acyclic_a1(2, 3).unwrap() {
            g.functor.validate().unwrap();
            assert!(g.functor.hom_map(0, 1).is_injective());
        }
    }
}
