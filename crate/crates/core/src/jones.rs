//! Kauffman bracket by state sum and the Jones polynomial.
//!
//! The bracket lives in `A`. The Jones polynomial is stored in `q = t^(1/2)`
//! so that links with an even number of components, whose Jones polynomials
//! have half-integral powers of `t`, need no special case.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Signed;
use rayon::prelude::*;
use serde::ser::{Serialize, SerializeSeq, Serializer};
use thiserror::Error;

use crate::diagram::{DiagramError, LinkDiagram, Orientation};
use crate::graphs::{build_state_graph, reduce};
use crate::kauffman::{apply_state, KauffmanState, Label};
use crate::poly::{json_integer, LaurentPolynomial};

pub const DEFAULT_CROSSING_CAP: usize = 24;
/// Hard limit imposed by the 128-bit dart masks of the state sum.
pub const MAX_CROSSINGS: usize = 32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum JonesError {
    #[error("diagram has {crossings} crossings, above the cap of {cap}")]
    TooManyCrossings { crossings: usize, cap: usize },
    #[error("the all-{0} state is inadequate")]
    InadequateState(Label),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

/// `-A^2 - A^-2`, the value of an extra circle.
pub fn loop_value() -> LaurentPolynomial {
    LaurentPolynomial::from_terms([(2, -1), (-2, -1)])
}

/// Number of circles in the state whose B-crossings are the set bits of `bits`.
#[inline]
fn circles_in_state(pair: &[u8], bits: u64) -> u32 {
    let n = pair.len();
    let mut seen: u128 = 0;
    let mut circles = 0;
    for start in 0..n {
        if seen >> start & 1 == 1 {
            continue;
        }
        circles += 1;
        let mut d = start;
        loop {
            let arrive = pair[d] as usize;
            seen |= 1 << d | 1 << arrive;
            let p = arrive & 3;
            let q = if bits >> (arrive >> 2) & 1 == 0 { p ^ 1 } else { 3 - p };
            d = (arrive & !3) | q;
            if d == start {
                break;
            }
        }
    }
    circles
}

/// Counts of states by (number of B-labels, number of circles).
#[derive(Debug, Clone, PartialEq, Eq)]
struct StateHistogram {
    crossings: usize,
    counts: Vec<u64>,
}

impl StateHistogram {
    fn new(crossings: usize) -> Self {
        Self {
            crossings,
            counts: vec![0; (crossings + 1) * (crossings + 2)],
        }
    }

    fn index(&self, b: usize, circles: usize) -> usize {
        b * (self.crossings + 2) + circles
    }

    fn merge(mut self, other: Self) -> Self {
        for (a, b) in self.counts.iter_mut().zip(other.counts) {
            *a += b;
        }
        self
    }
}

fn histogram(diagram: &LinkDiagram) -> StateHistogram {
    let c = diagram.crossing_count();
    let pair: Vec<u8> = (0..4 * c).map(|d| diagram.map().pair(d) as u8).collect();
    let block_bits = c.min(10);
    let low_bits = c - block_bits;
    (0..1u64 << block_bits)
        .into_par_iter()
        .map(|block| {
            let mut h = StateHistogram::new(c);
            for low in 0..1u64 << low_bits {
                let bits = block << low_bits | low;
                let circles = circles_in_state(&pair, bits) as usize;
                let i = h.index(bits.count_ones() as usize, circles);
                h.counts[i] += 1;
            }
            h
        })
        .reduce(|| StateHistogram::new(c), StateHistogram::merge)
}

pub fn kauffman_bracket(diagram: &LinkDiagram) -> Result<LaurentPolynomial, JonesError> {
    kauffman_bracket_with_cap(diagram, DEFAULT_CROSSING_CAP)
}

/// State sum of `A^(a-b) d^(circles-1)`. Work is split over blocks of states
/// with a fixed prefix; the integer counts are merged exactly, so the result
/// does not depend on the thread count.
pub fn kauffman_bracket_with_cap(
    diagram: &LinkDiagram,
    cap: usize,
) -> Result<LaurentPolynomial, JonesError> {
    let c = diagram.crossing_count();
    if c > cap.min(MAX_CROSSINGS) {
        return Err(JonesError::TooManyCrossings {
            crossings: c,
            cap: cap.min(MAX_CROSSINGS),
        });
    }
    if c == 0 {
        return Ok(LaurentPolynomial::one());
    }
    let h = histogram(diagram);
    let d = loop_value();
    let mut d_pow = vec![LaurentPolynomial::one()];
    for k in 1..=c {
        d_pow.push(&d_pow[k - 1] * &d);
    }
    let mut total = LaurentPolynomial::zero();
    for b in 0..=c {
        for circles in 1..=c + 1 {
            let n = h.counts[h.index(b, circles)];
            if n == 0 {
                continue;
            }
            let a_exp = c as i64 - 2 * b as i64;
            total = &total + &d_pow[circles - 1].mul_monomial(a_exp, &BigInt::from(n));
        }
    }
    Ok(total)
}

/// Jones polynomial, held as a Laurent polynomial in `q = t^(1/2)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct JonesPolynomial {
    half: LaurentPolynomial,
}

impl JonesPolynomial {
    /// From integral powers of `t`.
    pub fn from_t_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        Self {
            half: LaurentPolynomial::from_terms(terms.into_iter().map(|(e, c)| (2 * e, c))),
        }
    }

    /// Coefficients indexed by twice the power of `t`.
    pub fn in_half_powers(&self) -> &LaurentPolynomial {
        &self.half
    }

    /// The polynomial in `t`, if every power is integral.
    pub fn in_t(&self) -> Option<LaurentPolynomial> {
        self.half.divide_exponents(2)
    }

    pub fn has_integral_powers(&self) -> bool {
        self.half.terms().all(|(e, _)| e % 2 == 0)
    }

    /// `t -> 1/t`.
    pub fn invert_variable(&self) -> Self {
        Self {
            half: self.half.substitute_power(-1),
        }
    }

    /// Coefficient of `t^(half_exponent / 2)`.
    pub fn coefficient_at_half(&self, half_exponent: i64) -> BigInt {
        self.half.coefficient(half_exponent)
    }

    pub fn to_text(&self) -> String {
        self.half.to_text_with(|e| {
            if e % 2 == 0 {
                format!("t^{}", e / 2)
            } else {
                format!("t^({e}/2)")
            }
        })
    }
}

impl fmt::Display for JonesPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

fn half_exponent_json(e: i64) -> serde_json::Number {
    if e % 2 == 0 {
        (e / 2).into()
    } else {
        format!("{}.5", if e < 0 { format!("-{}", (-e) / 2) } else { (e / 2).to_string() })
            .parse()
            .expect("valid decimal")
    }
}

/// `[[exponent, coefficient], ...]` in powers of `t`, descending; half-integral
/// exponents appear as decimals.
impl Serialize for JonesPolynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.half.term_count()))?;
        for (e, c) in self.half.terms().rev() {
            seq.serialize_element(&(half_exponent_json(e), json_integer(c)))?;
        }
        seq.end()
    }
}

pub fn jones(diagram: &LinkDiagram, orientation: &Orientation) -> Result<JonesPolynomial, JonesError> {
    jones_with_cap(diagram, orientation, DEFAULT_CROSSING_CAP)
}

/// `(-A)^(-3w) <D>` with `t = A^-4`.
pub fn jones_with_cap(
    diagram: &LinkDiagram,
    orientation: &Orientation,
    cap: usize,
) -> Result<JonesPolynomial, JonesError> {
    let bracket = kauffman_bracket_with_cap(diagram, cap)?;
    Ok(jones_from_bracket(&bracket, diagram.writhe(orientation)?))
}

pub fn jones_from_bracket(bracket: &LaurentPolynomial, writhe: i64) -> JonesPolynomial {
    let sign = if writhe % 2 == 0 { 1 } else { -1 };
    let normalized = bracket.mul_monomial(-3 * writhe, &BigInt::from(sign));
    // A^e = t^(-e/4) = q^(-e/2); every exponent is even for a diagram.
    let half = normalized
        .divide_exponents(-2)
        .expect("normalized bracket has even exponents");
    JonesPolynomial { half }
}

/// Which end of the Jones polynomial a uniform state controls: the all-A
/// state fixes the lowest power of `t`, the all-B state the highest.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum JonesEnd {
    Lowest,
    Highest,
}

impl JonesEnd {
    pub fn controlled_by(label: Label) -> Self {
        match label {
            Label::A => JonesEnd::Lowest,
            Label::B => JonesEnd::Highest,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct ExtremeCoefficientReport {
    pub state: Label,
    pub end: JonesEnd,
    /// Twice the power of `t` of the extreme term.
    pub extreme_half_exponent: i64,
    pub extreme: i64,
    pub adjacent: i64,
    pub stable_coefficient: i64,
    pub extreme_is_unit: bool,
    pub adjacent_matches: bool,
}

impl ExtremeCoefficientReport {
    pub fn passed(&self) -> bool {
        self.extreme_is_unit && self.adjacent_matches
    }
}

/// Checks that the extreme coefficient on the end controlled by the uniform
/// `label` state is `±1` and that its neighbour has absolute value `1 - chi`
/// of the reduced state graph.
pub fn extreme_coefficient_check(
    diagram: &LinkDiagram,
    label: Label,
) -> Result<ExtremeCoefficientReport, JonesError> {
    let c = diagram.crossing_count();
    let sc = apply_state(diagram, &KauffmanState::uniform(c, label)).expect("uniform state fits");
    let reduced = reduce(&build_state_graph(&sc)).map_err(|_| JonesError::InadequateState(label))?;
    let j = jones(diagram, &Orientation::reference(diagram))?;
    extreme_coefficient_report(&j, label, reduced.stable_coefficient())
}

pub(crate) fn extreme_coefficient_report(
    j: &JonesPolynomial,
    label: Label,
    stable: i64,
) -> Result<ExtremeCoefficientReport, JonesError> {
    let end = JonesEnd::controlled_by(label);
    let half = j.in_half_powers();
    let (e, step) = match end {
        JonesEnd::Lowest => (half.min_degree().unwrap_or(0), 2),
        JonesEnd::Highest => (half.max_degree().unwrap_or(0), -2),
    };
    let small = |x: BigInt| -> i64 { i64::try_from(x).unwrap_or(i64::MAX) };
    let extreme = small(half.coefficient(e));
    let adjacent = small(half.coefficient(e + step));
    Ok(ExtremeCoefficientReport {
        state: label,
        end,
        extreme_half_exponent: e,
        extreme,
        adjacent,
        stable_coefficient: stable,
        extreme_is_unit: extreme.abs() == 1,
        adjacent_matches: BigInt::from(adjacent).abs() == BigInt::from(stable) && !half.is_zero(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{parse_pd, BraidWord};

    fn braid(s: &str) -> LinkDiagram {
        s.parse::<BraidWord>().unwrap().closure().unwrap()
    }

    fn a(terms: &[(i64, i64)]) -> LaurentPolynomial {
        LaurentPolynomial::from_terms(terms.iter().copied())
    }

    #[test]
    fn round_unknot_bracket_is_one() {
        let d = LinkDiagram::round_unknot();
        assert_eq!(kauffman_bracket(&d).unwrap(), LaurentPolynomial::one());
        assert_eq!(
            jones(&d, &Orientation::reference(&d)).unwrap(),
            JonesPolynomial::from_t_terms([(0, 1)])
        );
    }

    #[test]
    fn kink_brackets() {
        assert_eq!(kauffman_bracket(&braid("2: 1")).unwrap(), a(&[(3, -1)]));
        assert_eq!(kauffman_bracket(&braid("2: -1")).unwrap(), a(&[(-3, -1)]));
        for w in ["2: 1", "2: -1"] {
            let d = braid(w);
            let j = jones(&d, &Orientation::reference(&d)).unwrap();
            assert_eq!(j, JonesPolynomial::from_t_terms([(0, 1)]));
        }
    }

    #[test]
    fn right_trefoil() {
        let d = braid("2: 1 1 1");
        let j = jones(&d, &Orientation::reference(&d)).unwrap();
        assert_eq!(j, JonesPolynomial::from_t_terms([(1, 1), (3, 1), (4, -1)]));
        assert_eq!(j.to_text(), "-1*t^4 + 1*t^3 + 1*t^1");
    }

    #[test]
    fn tabulated_left_trefoil() {
        let d = parse_pd("X[1,4,2,5],X[3,6,4,1],X[5,2,6,3]").unwrap();
        let j = jones(&d, &Orientation::reference(&d)).unwrap();
        assert_eq!(j, JonesPolynomial::from_t_terms([(-1, 1), (-3, 1), (-4, -1)]));
    }

    #[test]
    fn hopf_link_has_half_powers() {
        let d = braid("2: 1 1");
        let j = jones(&d, &Orientation::reference(&d)).unwrap();
        assert!(!j.has_integral_powers());
        // -t^(1/2) - t^(5/2)
        assert_eq!(j.in_half_powers(), &a(&[(1, -1), (5, -1)]));
        assert_eq!(j.to_text(), "-1*t^(5/2) - 1*t^(1/2)");
        assert_eq!(serde_json::to_string(&j).unwrap(), "[[2.5,-1],[0.5,-1]]");
        let inv = j.invert_variable();
        assert_eq!(serde_json::to_string(&inv).unwrap(), "[[-0.5,-1],[-2.5,-1]]");
    }

    #[test]
    fn knot_12n873_and_its_mirror() {
        let d = braid("5: 1 2 -3 -4 2 -3 1 2 -3 2 -4 -3");
        let j = jones(&d, &Orientation::reference(&d)).unwrap();
        let expected = JonesPolynomial::from_t_terms([
            (-4, 3),
            (-3, -7),
            (-2, 11),
            (-1, -14),
            (0, 15),
            (1, -14),
            (2, 11),
            (3, -7),
            (4, 3),
        ]);
        assert_eq!(j, expected);
        let m = d.mirror();
        assert_eq!(jones(&m, &Orientation::reference(&m)).unwrap(), j.invert_variable());
    }

    #[test]
    fn cap_is_enforced() {
        let d = braid("2: 1 1 1");
        assert_eq!(
            kauffman_bracket_with_cap(&d, 2),
            Err(JonesError::TooManyCrossings { crossings: 3, cap: 2 })
        );
    }

    #[test]
    fn extreme_coefficients_of_small_knots() {
        let r = extreme_coefficient_check(&braid("2: 1 1 1"), Label::A).unwrap();
        assert_eq!((r.extreme.abs(), r.adjacent, r.stable_coefficient), (1, 0, 0));
        assert!(r.passed());
        let fig8 = parse_pd("X[4,2,5,1],X[8,6,1,5],X[6,3,7,4],X[2,7,3,8]").unwrap();
        for label in [Label::A, Label::B] {
            let r = extreme_coefficient_check(&fig8, label).unwrap();
            assert_eq!((r.extreme.abs(), r.adjacent.abs(), r.stable_coefficient), (1, 1, 1));
        }
        assert_eq!(
            extreme_coefficient_check(&braid("2: -1"), Label::A),
            Err(JonesError::InadequateState(Label::A))
        );
    }

    #[test]
    fn circle_count_matches_apply_state() {
        let d = braid("3: 1 -2 1 -2 1");
        let pair: Vec<u8> = (0..20).map(|x| d.map().pair(x) as u8).collect();
        for bits in 0..32u64 {
            let sc = apply_state(&d, &KauffmanState::from_bits(5, bits)).unwrap();
            assert_eq!(circles_in_state(&pair, bits) as usize, sc.circle_count());
        }
    }
}
