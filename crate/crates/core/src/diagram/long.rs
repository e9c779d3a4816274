use super::{ChordId, GaussPhrase};
use crate::error::{Error, Result};

/// A one-component diagram cut open at a basepoint.
///
/// `basepoint` is the offset of the first chord end met after the cut, so
/// the cut sits between positions `basepoint - 1` and `basepoint` and never
/// on a chord end.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LongGaussDiagram {
    phrase: GaussPhrase,
    basepoint: usize,
}

impl LongGaussDiagram {
    pub fn new(phrase: GaussPhrase, basepoint: usize) -> Result<Self> {
        if phrase.unicursal_count() != 1 {
            return Err(Error::WrongComponentCount {
                expected: 1,
                found: phrase.unicursal_count(),
            });
        }
        let len = phrase.components().first().map_or(0, Vec::len);
        if basepoint > len || (basepoint == len && len > 0) {
            return Err(Error::MalformedCode(format!(
                "basepoint {basepoint} out of range for {len} chord ends"
            )));
        }
        Ok(LongGaussDiagram { phrase, basepoint })
    }

    /// Long diagram read from the first position of the stored word.
    pub fn from_phrase(phrase: GaussPhrase) -> Result<Self> {
        Self::new(phrase, 0)
    }

    pub fn phrase(&self) -> &GaussPhrase {
        &self.phrase
    }

    pub fn basepoint(&self) -> usize {
        self.basepoint
    }

    /// Chord ends in the order met when walking from the basepoint.
    pub fn word(&self) -> Vec<ChordId> {
        match self.phrase.components().first() {
            None => Vec::new(),
            Some(comp) => {
                let mut w = comp.clone();
                w.rotate_left(self.basepoint);
                w
            }
        }
    }

    /// Moves the basepoint forward past one chord end.
    pub fn shift_basepoint(&self) -> Self {
        let len = self.word().len();
        LongGaussDiagram {
            phrase: self.phrase.clone(),
            basepoint: if len == 0 { 0 } else { (self.basepoint + 1) % len },
        }
    }

    /// The same long diagram with the word stored starting at the basepoint.
    pub fn straightened(&self) -> Self {
        let w = self.word();
        let phrase = if w.is_empty() {
            GaussPhrase::unknot()
        } else {
            GaussPhrase::from_parts_unchecked(vec![w], 0)
        };
        LongGaussDiagram {
            phrase,
            basepoint: 0,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basepoint_rules() {
        let p: GaussPhrase = "1 2 1 2".parse().unwrap();
        assert!(LongGaussDiagram::new(p.clone(), 3).is_ok());
        assert!(LongGaussDiagram::new(p.clone(), 4).is_err());
        assert!(LongGaussDiagram::new(GaussPhrase::unknot(), 0).is_ok());
        let two: GaussPhrase = "1 / 1".parse().unwrap();
        assert!(matches!(
            LongGaussDiagram::new(two, 0),
            Err(Error::WrongComponentCount { .. })
        ));
        let l = LongGaussDiagram::new("1 2 3 1 2 3".parse().unwrap(), 2).unwrap();
        let w: Vec<u32> = l.word().iter().map(|c| c.0).collect();
        assert_eq!(w, vec![3, 1, 2, 3, 1, 2]);
        assert_eq!(l.shift_basepoint().basepoint(), 3);
    }
}
