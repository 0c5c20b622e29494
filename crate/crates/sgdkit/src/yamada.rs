//! The Yamada polynomial of a spatial graph diagram.
//!
//! A crossing resolves three ways: the two planar smoothings weighted `A`
//! and `A^-1`, and flattening to a 4-valent vertex weighted 1. Resolving
//! every crossing and evaluating `H` on the resulting planar graphs gives
//! the state sum
//!
//! ```text
//!     R(d) = sum over states S of A^(n1 - n2) * H(S)
//! ```
//!
//! where `n1`/`n2` count crossings smoothed the `A`/`A^-1` way. The
//! recursive evaluator resolves one crossing at a time and multiplies over
//! disjoint components; `yamada_statesum` enumerates all `3^k` states
//! directly and serves as its oracle.
//!
//! For class comparison the residual `(-A)^n` ambiguity of pliable and
//! flat vertex isotopy is removed by normalizing the minimum degree to
//! zero; ribbon isotopy preserves the polynomial exactly, so ribbon
//! canonicalization is the identity.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::absgraph::h_polynomial_memo;
use crate::diagram::{canonical_pd, Diagram, Smoothing};
use crate::laurent::LaurentPoly;
use crate::{Error, Result};

/// Vertex model controlling move legality and class comparison.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Pliable,
    Flat,
    Ribbon,
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Mode::Pliable => "pliable",
            Mode::Flat => "flat",
            Mode::Ribbon => "ribbon",
        };
        write!(f, "{s}")
    }
}

impl std::str::FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pliable" => Ok(Mode::Pliable),
            "flat" => Ok(Mode::Flat),
            "ribbon" => Ok(Mode::Ribbon),
            other => Err(Error::Parse(format!("unknown mode `{other}`"))),
        }
    }
}

/// Largest crossing count accepted by the brute-force state sum.
pub const STATE_SUM_GUARD: usize = 12;

/// Shared caches for repeated evaluations. Create one per worker; results
/// are identical with or without sharing.
#[derive(Default)]
pub struct YamadaCtx {
    h_memo: HashMap<Vec<u8>, LaurentPoly>,
    d_memo: HashMap<String, LaurentPoly>,
}

impl YamadaCtx {
    pub fn new() -> Self {
        YamadaCtx::default()
    }

    /// Recursive skein evaluation.
    pub fn yamada(&mut self, d: &Diagram) -> LaurentPoly {
        self.yamada_with(d, &mut |names| names[0].to_string())
    }

    /// Same, with the next crossing chosen by the caller (used to check
    /// order independence).
    pub fn yamada_with<F>(&mut self, d: &Diagram, choose: &mut F) -> LaurentPoly
    where
        F: FnMut(&[&str]) -> String,
    {
        if d.crossing_count() == 0 {
            return h_polynomial_memo(&d.abstract_graph(), &mut self.h_memo);
        }
        let comps = d.components();
        if comps.len() > 1 {
            let mut acc = LaurentPoly::one();
            for c in comps {
                acc = acc.mul(&self.yamada_with(&c, choose));
                if acc.is_zero() {
                    return acc;
                }
            }
            return acc;
        }
        let key = canonical_pd(d, false);
        if let Some(hit) = self.d_memo.get(&key) {
            return hit.clone();
        }
        let names: Vec<&str> = d.crossings().map(|(_, s)| s.name.as_str()).collect();
        let pick = choose(&names);
        let plus = d.smooth(&pick, Smoothing::Plus).expect("crossing exists");
        let minus = d.smooth(&pick, Smoothing::Minus).expect("crossing exists");
        let zero = d.smooth(&pick, Smoothing::Zero).expect("crossing exists");
        let value = self
            .yamada_with(&plus, choose)
            .mul_monomial(1, 1)
            .add(&self.yamada_with(&minus, choose).mul_monomial(1, -1))
            .add(&self.yamada_with(&zero, choose));
        self.d_memo.insert(key, value.clone());
        value
    }

    /// Direct sum over all `3^k` states; the independent oracle for
    /// [`YamadaCtx::yamada`].
    pub fn yamada_statesum(&mut self, d: &Diagram) -> Result<LaurentPoly> {
        let k = d.crossing_count();
        if k > STATE_SUM_GUARD {
            return Err(Error::StateSumTooLarge(k));
        }
        let names: Vec<String> = d.crossings().map(|(_, s)| s.name.clone()).collect();
        let mut total = LaurentPoly::zero();
        let states = 3usize.pow(k as u32);
        for code in 0..states {
            let mut state = d.clone();
            let mut writhe = 0i64;
            let mut rest = code;
            for name in &names {
                let spin = rest % 3;
                rest /= 3;
                let kind = match spin {
                    0 => {
                        writhe += 1;
                        Smoothing::Plus
                    }
                    1 => {
                        writhe -= 1;
                        Smoothing::Minus
                    }
                    _ => Smoothing::Zero,
                };
                state = state.smooth(name, kind)?;
            }
            let h = h_polynomial_memo(&state.abstract_graph(), &mut self.h_memo);
            total = total.add(&h.mul_monomial(1, writhe));
        }
        Ok(total)
    }
}

/// One-shot skein evaluation.
pub fn yamada(d: &Diagram) -> LaurentPoly {
    YamadaCtx::new().yamada(d)
}

/// One-shot state-sum evaluation (guarded).
pub fn yamada_statesum(d: &Diagram) -> Result<LaurentPoly> {
    YamadaCtx::new().yamada_statesum(d)
}

/// Normal form under the mode's residual ambiguity: ribbon compares
/// exactly; pliable and flat divide out `(-A)^n` by shifting the minimum
/// degree to zero with the matching sign.
pub fn canonicalize(p: &LaurentPoly, mode: Mode) -> LaurentPoly {
    match mode {
        Mode::Ribbon => p.clone(),
        Mode::Pliable | Mode::Flat => {
            if p.is_zero() {
                return p.clone();
            }
            let m = p.min_degree().expect("nonzero");
            let sign = if m.rem_euclid(2) == 0 { 1 } else { -1 };
            p.mul_monomial(sign, -m)
        }
    }
}

/// Same topology class under the mode's comparison.
pub fn equivalent(p: &LaurentPoly, q: &LaurentPoly, mode: Mode) -> bool {
    canonicalize(p, mode) == canonicalize(q, mode)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::parse_pd;

    fn theta() -> Diagram {
        parse_pd("V1[a,b,c] V2[c,b,a]").unwrap()
    }

    fn b() -> LaurentPoly {
        LaurentPoly::b()
    }

    #[test]
    fn theta_yamada_is_h() {
        let expect = b().sub(&b().mul(&b()));
        assert_eq!(yamada(&theta()), expect);
        assert_eq!(yamada_statesum(&theta()).unwrap(), expect);
    }

    #[test]
    fn canonicalize_kills_monomial_factors() {
        let p = yamada(&theta());
        let shifted = p.mul_monomial(-1, 1); // (-A) * p
        assert_eq!(
            canonicalize(&p, Mode::Pliable),
            canonicalize(&shifted, Mode::Pliable)
        );
        assert_ne!(canonicalize(&p, Mode::Ribbon), canonicalize(&shifted, Mode::Ribbon));
        assert!(equivalent(&p, &shifted, Mode::Flat));
        assert!(!equivalent(&p, &shifted, Mode::Ribbon));
        assert!(equivalent(&p, &p, Mode::Ribbon));
    }

    #[test]
    fn canonicalize_zero() {
        assert!(canonicalize(&LaurentPoly::zero(), Mode::Pliable).is_zero());
    }

    #[test]
    fn statesum_guard() {
        // Build a diagram with 13 curls on a circle.
        let mut d = parse_pd("V1[a,a]").unwrap();
        for _ in 0..13 {
            let spec = crate::diagram::MoveSpec::R1Insert {
                arc: 0,
                chirality: crate::diagram::Chirality::Plus,
            };
            d = d.apply_move(&spec, Mode::Pliable).unwrap();
        }
        assert!(matches!(
            yamada_statesum(&d),
            Err(Error::StateSumTooLarge(13))
        ));
    }
}
