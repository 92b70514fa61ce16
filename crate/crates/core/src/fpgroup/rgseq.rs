//! Samples of `r(G, H) = (d(H) - 1) / [G:H]` along a chain.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use serde::{Deserialize, Serialize};

use super::{d_bounds, reidemeister_schreier, CosetTable, Presentation, SchreierPolicy};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RgSample {
    pub index: u64,
    pub d_lower: u64,
    pub d_upper: u64,
    pub r_lower: Rational,
    pub r_upper: Rational,
}

impl RgSample {
    pub fn new(index: u64, d_lower: u64, d_upper: u64) -> Self {
        let r = |d: u64| Rational::new(d as i64 - 1, index as i64);
        RgSample {
            index,
            d_lower,
            d_upper,
            r_lower: r(d_lower),
            r_upper: r(d_upper),
        }
    }

    pub fn is_exact(&self) -> bool {
        self.d_lower == self.d_upper
    }
}

/// Shape of the `r_upper` column.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Trend {
    Constant,
    NonIncreasing,
    NonDecreasing,
    Mixed,
}

impl Trend {
    pub fn of(samples: &[RgSample]) -> Trend {
        let pairs = || samples.windows(2).map(|w| (&w[0].r_upper, &w[1].r_upper));
        if pairs().all(|(a, b)| a == b) {
            Trend::Constant
        } else if pairs().all(|(a, b)| b <= a) {
            Trend::NonIncreasing
        } else if pairs().all(|(a, b)| a <= b) {
            Trend::NonDecreasing
        } else {
            Trend::Mixed
        }
    }
}

impl fmt::Display for Trend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Trend::Constant => "constant",
            Trend::NonIncreasing => "non-increasing",
            Trend::NonDecreasing => "non-decreasing",
            Trend::Mixed => "mixed",
        })
    }
}

/// Reidemeister–Schreier, Tietze and abelianization for one subgroup.
pub fn rg_sample(p: &Presentation, t: &CosetTable) -> Result<RgSample, String> {
    let h = reidemeister_schreier(p, t, SchreierPolicy::BreadthFirst)?;
    let (lo, hi) = d_bounds(&h);
    Ok(RgSample::new(t.index() as u64, lo as u64, hi as u64))
}

/// Samples for each table; indices must be non-decreasing.
pub fn rg_sequence(p: &Presentation, chain: &[CosetTable]) -> Result<(Vec<RgSample>, Trend), String> {
    if let Some(w) = chain.windows(2).find(|w| w[1].index() < w[0].index()) {
        return Err(format!("indices decrease: {} then {}", w[0].index(), w[1].index()));
    }
    let samples = chain.iter().map(|t| rg_sample(p, t)).collect::<Result<Vec<_>, _>>()?;
    let trend = Trend::of(&samples);
    Ok((samples, trend))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fpgroup::{kernel_chain_cayley, psl2_images, sl2_images};

    #[test]
    fn sl2z_congruence_chain() {
        let p = Presentation::from_strs(&["a", "b"], &["a^4", "a^2 B^3"]).unwrap();
        let levels: Vec<_> = [3, 4, 5].iter().map(|&n| sl2_images(n).unwrap()).collect();
        let chain = kernel_chain_cayley(&p, &levels).unwrap();
        let (samples, trend) = rg_sequence(&p, &chain).unwrap();
        let got: Vec<_> = samples.iter().map(|s| (s.index, s.d_lower, s.d_upper)).collect();
        assert_eq!(got, [(24, 3, 3), (48, 5, 5), (120, 11, 11)]);
        assert!(samples.iter().all(|s| s.r_upper == Rational::new(1, 12)));
        assert_eq!(trend, Trend::Constant);
    }

    #[test]
    fn psl2z_congruence_chain() {
        let p = Presentation::from_strs(&["a", "b"], &["a^2", "b^3"]).unwrap();
        let levels: Vec<_> = [3, 5, 7].iter().map(|&n| psl2_images(n).unwrap()).collect();
        let chain = kernel_chain_cayley(&p, &levels).unwrap();
        let (samples, _) = rg_sequence(&p, &chain).unwrap();
        let got: Vec<_> = samples.iter().map(|s| (s.index, s.d_lower, s.d_upper)).collect();
        assert_eq!(got, [(12, 3, 3), (60, 11, 11), (168, 29, 29)]);
    }

    #[test]
    fn decreasing_indices_rejected() {
        let p = Presentation::from_strs(&["a", "b"], &["a^2", "b^3"]).unwrap();
        let levels: Vec<_> = [5, 3].iter().map(|&n| psl2_images(n).unwrap()).collect();
        let chain = kernel_chain_cayley(&p, &levels).unwrap();
        assert!(rg_sequence(&p, &chain).is_err());
    }

    #[test]
    fn trend_classification() {
        let s = |d: u64, i: u64| RgSample::new(i, d, d);
        assert_eq!(Trend::of(&[s(3, 2), s(3, 6)]), Trend::NonIncreasing);
        assert_eq!(Trend::of(&[s(3, 6), s(3, 2)]), Trend::NonDecreasing);
        assert_eq!(Trend::of(&[s(3, 6), s(3, 2), s(3, 24)]), Trend::Mixed);
        assert_eq!(Trend::of(&[]), Trend::Constant);
    }
}
