use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::builder::{DiagramBuilder, Slot, Under};
use super::{DiagramError, LinkDiagram};

/// A braid word on `strands` strands; letter `i` is the generator
/// crossing strands `i` and `i+1`, negative letters are inverses.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i32>) -> Result<Self, DiagramError> {
        if strands < 2 {
            return Err(DiagramError::InvalidBraid(format!(
                "need at least 2 strands, got {strands}"
            )));
        }
        if let Some(&bad) = letters
            .iter()
            .find(|&&l| l == 0 || l.unsigned_abs() as usize >= strands)
        {
            return Err(DiagramError::InvalidBraid(format!(
                "letter {bad} is outside ±1..={}",
                strands - 1
            )));
        }
        Ok(Self { strands, letters })
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    /// Closure with all strands running downward. Positive letters give
    /// positive crossings. Fails with `Disconnected` if some generator never
    /// occurs, since the closure then splits.
    pub fn closure(&self) -> Result<LinkDiagram, DiagramError> {
        let mut b = DiagramBuilder::new();
        // Pending bottom slot at each strand position, and the first top slot.
        let mut pending: Vec<Option<(usize, Slot)>> = vec![None; self.strands];
        let mut first_top: Vec<Option<(usize, Slot)>> = vec![None; self.strands];
        for &letter in &self.letters {
            let i = letter.unsigned_abs() as usize - 1;
            // Positive: the NW-SE strand passes under, the NE-SW strand over.
            let under = if letter > 0 { Under::Falling } else { Under::Rising };
            let c = b.add_crossing(under);
            b.mark_incoming(c, Slot::NW);
            b.mark_incoming(c, Slot::NE);
            for (pos, top) in [(i, Slot::NW), (i + 1, Slot::NE)] {
                match pending[pos] {
                    Some(prev) => b.connect(prev, (c, top)),
                    None => first_top[pos] = Some((c, top)),
                }
            }
            pending[i] = Some((c, Slot::SW));
            pending[i + 1] = Some((c, Slot::SE));
        }
        for pos in 0..self.strands {
            match (pending[pos], first_top[pos]) {
                (Some(bottom), Some(top)) => b.connect(bottom, top),
                _ => return Err(DiagramError::Disconnected),
            }
        }
        b.build()
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.strands)?;
        for l in &self.letters {
            write!(f, " {l}")?;
        }
        Ok(())
    }
}

/// Parses `"n: l1 l2 ..."` or `"n l1 l2 ..."`.
impl FromStr for BraidWord {
    type Err = DiagramError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let cleaned = s.replacen(':', " ", 1);
        let mut parts = cleaned.split_whitespace();
        let strands = parts
            .next()
            .ok_or_else(|| DiagramError::InvalidBraid("empty braid".into()))?
            .parse::<usize>()
            .map_err(|e| DiagramError::InvalidBraid(format!("strand count: {e}")))?;
        let letters = parts
            .map(|p| {
                p.parse::<i32>()
                    .map_err(|e| DiagramError::InvalidBraid(format!("letter '{p}': {e}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(strands, letters)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::Orientation;

    fn closure(s: &str) -> LinkDiagram {
        s.parse::<BraidWord>().unwrap().closure().unwrap()
    }

    #[test]
    fn rejects_bad_words() {
        assert!(BraidWord::new(1, vec![]).is_err());
        assert!(BraidWord::new(3, vec![1, 0]).is_err());
        assert!(BraidWord::new(3, vec![3]).is_err());
        assert!(BraidWord::new(3, vec![-3]).is_err());
        assert!("x: 1".parse::<BraidWord>().is_err());
        assert!("3: 1 a".parse::<BraidWord>().is_err());
    }

    #[test]
    fn positive_trefoil() {
        let d = closure("2: 1 1 1");
        assert_eq!(d.crossing_count(), 3);
        assert_eq!(d.component_count(), 1);
        assert_eq!(d.writhe(&Orientation::reference(&d)).unwrap(), 3);
    }

    #[test]
    fn single_letters() {
        let d = closure("2: -1");
        assert_eq!((d.crossing_count(), d.component_count()), (1, 1));
        assert_eq!(d.writhe(&Orientation::reference(&d)).unwrap(), -1);
        let d = closure("2: 1");
        assert_eq!(d.writhe(&Orientation::reference(&d)).unwrap(), 1);
    }

    #[test]
    fn knot_12n873() {
        let d = closure("5: 1 2 -3 -4 2 -3 1 2 -3 2 -4 -3");
        assert_eq!(d.crossing_count(), 12);
        assert_eq!(d.component_count(), 1);
        assert_eq!(d.writhe(&Orientation::reference(&d)).unwrap(), 0);
    }

    #[test]
    fn hopf_link_has_two_components() {
        assert_eq!(closure("2: 1 1").component_count(), 2);
    }

    #[test]
    fn missing_generator_splits() {
        let w = BraidWord::new(3, vec![1, 1]).unwrap();
        assert_eq!(w.closure(), Err(DiagramError::Disconnected));
    }

    #[test]
    fn display_round_trips() {
        let w: BraidWord = "5: 1 2 -3 -4".parse().unwrap();
        assert_eq!(w.to_string(), "5: 1 2 -3 -4");
        assert_eq!(w.to_string().parse::<BraidWord>().unwrap(), w);
    }
}
