use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use super::LaurentPoly;
use crate::diagram::{canonical_key, CanonicalKey, GaussPhrase};
use crate::error::{Error, Result};
use crate::moves::reduce_r2;

/// Key of the bigon-free representative of `p`.
pub fn graph_class(p: &GaussPhrase) -> CanonicalKey {
    canonical_key(&reduce_r2(p))
}

/// A ℤ₂-combination of graph classes modulo bigon moves.
///
/// With `tilde` set, graphs with a split component (free loops included)
/// are zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Z2GElement {
    classes: BTreeSet<CanonicalKey>,
    arity: usize,
    tilde: bool,
}

impl Z2GElement {
    pub fn zero(arity: usize, tilde: bool) -> Self {
        Z2GElement {
            classes: BTreeSet::new(),
            arity,
            tilde,
        }
    }

    /// The class of `p`, which must have `arity` unicursal components.
    pub fn class_of(p: &GaussPhrase, arity: usize, tilde: bool) -> Result<Self> {
        if p.unicursal_count() != arity {
            return Err(Error::ArityMismatch {
                expected: arity,
                found: p.unicursal_count(),
            });
        }
        let mut out = Self::zero(arity, tilde);
        let reduced = reduce_r2(p);
        if !(tilde && reduced.has_split_component()) {
            out.classes.insert(canonical_key(&reduced));
        }
        Ok(out)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn tilde(&self) -> bool {
        self.tilde
    }

    pub fn is_zero(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn classes(&self) -> &BTreeSet<CanonicalKey> {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Whether the element is exactly the class of `p`.
    pub fn is_single(&self, p: &GaussPhrase) -> bool {
        self.classes.len() == 1 && self.contains(p)
    }

    pub fn contains(&self, p: &GaussPhrase) -> bool {
        self.classes.contains(&graph_class(p))
    }

    pub fn z2_add(&self, other: &Self) -> Result<Self> {
        if self.arity != other.arity || self.tilde != other.tilde {
            return Err(Error::Mismatch);
        }
        Ok(Z2GElement {
            classes: self.classes.symmetric_difference(&other.classes).cloned().collect(),
            arity: self.arity,
            tilde: self.tilde,
        })
    }

    /// In-place addition of one class of matching arity and flag.
    pub(crate) fn toggle(&mut self, other: Z2GElement) {
        debug_assert_eq!((self.arity, self.tilde), (other.arity, other.tilde));
        for k in other.classes {
            if !self.classes.remove(&k) {
                self.classes.insert(k);
            }
        }
    }

    /// Canonical codes of the classes, in key order.
    pub fn codes(&self) -> Vec<String> {
        self.classes.iter().map(|k| k.to_phrase().to_string()).collect()
    }
}

impl fmt::Display for Z2GElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let codes = self.codes();
        write!(f, "[{}]", codes.join("] + ["))
    }
}

/// Laurent-polynomial combination of graph classes where a free loop is
/// traded for a factor `-a^2 - a^-2`. The chordless circle is the unit.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct FModuleElement {
    terms: BTreeMap<CanonicalKey, LaurentPoly>,
}

impl FModuleElement {
    pub fn zero() -> Self {
        FModuleElement::default()
    }

    pub fn unit() -> Self {
        Self::from_scaled_unit(LaurentPoly::one())
    }

    pub fn from_scaled_unit(coeff: LaurentPoly) -> Self {
        Self::normalize([(GaussPhrase::unknot(), coeff)])
    }

    /// Bigon-reduces each graph, strips its free loops into powers of the
    /// loop value and collects equal classes.
    pub fn normalize(raw: impl IntoIterator<Item = (GaussPhrase, LaurentPoly)>) -> Self {
        let mut out = Self::zero();
        for (p, coeff) in raw {
            out.add_term(&p, &coeff);
        }
        out
    }

    pub fn add_term(&mut self, p: &GaussPhrase, coeff: &LaurentPoly) {
        let reduced = reduce_r2(p);
        let loops = reduced.free_loops();
        let (core, extra) = if reduced.components().is_empty() {
            (GaussPhrase::unknot(), loops - 1)
        } else {
            (GaussPhrase::new(reduced.components().to_vec(), 0).expect("valid"), loops)
        };
        let c = coeff * &LaurentPoly::delta().pow(extra as u32);
        self.add_key(canonical_key(&core), &c);
    }

    fn add_key(&mut self, k: CanonicalKey, c: &LaurentPoly) {
        let slot = self.terms.entry(k.clone()).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_key(k.clone(), c);
        }
        out
    }

    pub fn scale(&self, c: &LaurentPoly) -> Self {
        let mut out = Self::zero();
        for (k, p) in &self.terms {
            out.add_key(k.clone(), &(p * c));
        }
        out
    }

    /// Normalizing again changes nothing; exposed for checks.
    pub fn renormalize(&self) -> Self {
        Self::normalize(self.terms.iter().map(|(k, c)| (k.to_phrase(), c.clone())))
    }

    pub fn terms(&self) -> &BTreeMap<CanonicalKey, LaurentPoly> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff_of(&self, p: &GaussPhrase) -> LaurentPoly {
        let probe = Self::normalize([(p.clone(), LaurentPoly::one())]);
        match probe.terms.into_iter().next() {
            Some((k, scale)) if scale == LaurentPoly::one() => {
                self.terms.get(&k).cloned().unwrap_or_default()
            }
            _ => LaurentPoly::zero(),
        }
    }

    /// The coefficient when the element is a multiple of the unit.
    pub fn as_unit_multiple(&self) -> Option<LaurentPoly> {
        let unit = canonical_key(&GaussPhrase::unknot());
        match self.terms.len() {
            0 => Some(LaurentPoly::zero()),
            1 => self.terms.get(&unit).cloned(),
            _ => None,
        }
    }
}

impl fmt::Display for FModuleElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (k, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" ; ")?;
            }
            write!(f, "({c})[{}]", k.to_phrase())?;
        }
        Ok(())
    }
}

impl Serialize for FModuleElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let m: BTreeMap<String, String> = self
            .terms
            .iter()
            .map(|(k, c)| (k.to_phrase().to_string(), c.to_string()))
            .collect();
        m.serialize(s)
    }
}
