//! `N`-indexed families of sheaves, built lazily and memoized per index.

use std::collections::BTreeMap;
use std::sync::{Arc, Mutex};

use crate::amplitude::tensor_by;
use crate::error::{Error, Result};
use crate::functors::{frobenius_power, sym_power};
use crate::poly::GradedRing;
use crate::resolve::PresentedModule;

#[derive(Clone, Debug)]
pub enum FilterKind {
    /// `L^{⊗n}`.
    LinePowers(PresentedModule),
    /// `Sym^n E`.
    SymPowers(PresentedModule),
    /// `F^{*n} F_0`.
    FrobeniusPowers(PresentedModule),
    /// `H ⊗ F^{*n} F_0`.
    TwistedFrobenius(PresentedModule, PresentedModule),
    /// An explicit finite list; indices past the end are an error.
    Custom(Vec<PresentedModule>),
}

#[derive(Debug)]
pub struct FilterSpec {
    kind: FilterKind,
    store: Mutex<BTreeMap<usize, Arc<PresentedModule>>>,
}

impl Clone for FilterSpec {
    fn clone(&self) -> Self {
        FilterSpec::new(self.kind.clone())
    }
}

impl FilterSpec {
    pub fn new(kind: FilterKind) -> Self {
        FilterSpec {
            kind,
            store: Mutex::new(BTreeMap::new()),
        }
    }

    pub fn kind(&self) -> &FilterKind {
        &self.kind
    }

    pub fn ring(&self) -> GradedRing {
        match &self.kind {
            FilterKind::LinePowers(m)
            | FilterKind::SymPowers(m)
            | FilterKind::FrobeniusPowers(m)
            | FilterKind::TwistedFrobenius(m, _) => m.ring(),
            FilterKind::Custom(list) => list.first().expect("nonempty custom filter").ring(),
        }
    }

    /// A short description for reports.
    pub fn label(&self) -> String {
        let name = |m: &PresentedModule| m.name().unwrap_or("M").to_string();
        match &self.kind {
            FilterKind::LinePowers(l) => format!("{}^n", name(l)),
            FilterKind::SymPowers(e) => format!("Sym^n({})", name(e)),
            FilterKind::FrobeniusPowers(f) => format!("F*^n({})", name(f)),
            FilterKind::TwistedFrobenius(f, h) => format!("{} ⊗ F*^n({})", name(h), name(f)),
            FilterKind::Custom(list) => format!("custom[{}]", list.len()),
        }
    }

    fn build(&self, n: usize) -> Result<PresentedModule> {
        let out = match &self.kind {
            FilterKind::LinePowers(l) => match crate::amplitude::line_twist(l) {
                Some(a) => {
                    let d = i32::try_from(a * n as i64)
                        .map_err(|_| Error::ExponentOverflow("line power".into()))?;
                    crate::functors::line(l.ring(), d)
                }
                None if n == 0 => crate::functors::line(l.ring(), 0),
                None => tensor_by(l, &*self.element(n - 1)?)?,
            },
            FilterKind::SymPowers(e) => sym_power(e, n)?,
            FilterKind::FrobeniusPowers(f) => frobenius_power(f, n as u32)?,
            FilterKind::TwistedFrobenius(f, h) => tensor_by(h, &frobenius_power(f, n as u32)?)?,
            FilterKind::Custom(list) => list.get(n).cloned().ok_or_else(|| Error::OutOfRange {
                value: n as i64,
                range: format!("[0, {})", list.len()),
            })?,
        };
        Ok(out)
    }

    /// The `n`-th member; each index is built at most once per stored value.
    pub fn element(&self, n: usize) -> Result<Arc<PresentedModule>> {
        if let Some(m) = self.store.lock().expect("filter store").get(&n) {
            return Ok(Arc::clone(m));
        }
        let built = Arc::new(self.build(n)?);
        let mut store = self.store.lock().expect("filter store");
        Ok(Arc::clone(store.entry(n).or_insert(built)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functors::{line, make_bundle, BundleCatalog};
    use crate::resolve::direct_sum;

    #[test]
    fn members_of_each_kind() {
        let r = GradedRing::projective(2, 2).unwrap();
        let f = FilterSpec::new(FilterKind::LinePowers(line(r, 2)));
        assert_eq!(f.element(3).unwrap().generators().twists(), &[-6]);
        let e = direct_sum(&[line(r, 1), line(r, 1)]).unwrap();
        let s = FilterSpec::new(FilterKind::SymPowers(e));
        assert_eq!(s.element(0).unwrap().generators().twists(), &[0]);
        assert_eq!(s.element(2).unwrap().generators().rank(), 3);
        let t = make_bundle(BundleCatalog::Tangent, r);
        let fr = FilterSpec::new(FilterKind::TwistedFrobenius(t.clone(), line(r, -1)));
        assert_eq!(fr.element(2).unwrap().generators().twists(), &[-3, -3, -3]);
        let c = FilterSpec::new(FilterKind::Custom(vec![t]));
        assert!(c.element(1).is_err());
    }

    #[test]
    fn elements_are_memoized() {
        let r = GradedRing::projective(3, 2).unwrap();
        let f = FilterSpec::new(FilterKind::FrobeniusPowers(make_bundle(
            BundleCatalog::Tangent,
            r,
        )));
        let a = f.element(2).unwrap();
        let b = f.element(2).unwrap();
        assert!(Arc::ptr_eq(&a, &b));
    }
}
