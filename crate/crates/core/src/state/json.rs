// SPDX-License-Identifier: Apache-2.0

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use super::ket::Ket;
use super::superposition::{Superposition, Term};
use crate::error::{Error, Result};
use crate::scalar::Real;

#[derive(Debug, Serialize, Deserialize)]
struct StateDoc {
    modes: usize,
    terms: Vec<TermDoc>,
}

#[derive(Debug, Serialize, Deserialize)]
struct TermDoc {
    c: [f64; 2],
    ket: Vec<[f64; 2]>,
}

fn to_pair<T: Real>(z: Complex<T>) -> [f64; 2] {
    [z.re.as_f64(), z.im.as_f64()]
}

fn from_pair<T: Real>(p: [f64; 2]) -> Complex<T> {
    Complex::new(T::lit(p[0]), T::lit(p[1]))
}

impl<T: Real> Superposition<T> {
    /// `{"modes": M, "terms": [{"c": [re, im], "ket": [[re, im], ...]}]}`.
    pub fn to_json(&self) -> String {
        let doc = StateDoc {
            modes: self.modes(),
            terms: self
                .terms()
                .iter()
                .map(|t| TermDoc {
                    c: to_pair(t.coef),
                    ket: t.ket.amps().iter().map(|&a| to_pair(a)).collect(),
                })
                .collect(),
        };
        serde_json::to_string(&doc).expect("state document serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: StateDoc = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
        let mut terms = Vec::with_capacity(doc.terms.len());
        for t in doc.terms {
            if t.ket.len() != doc.modes {
                return Err(Error::ModeMismatch {
                    left: doc.modes,
                    right: t.ket.len(),
                });
            }
            let ket = Ket::new(t.ket.into_iter().map(from_pair).collect())?;
            terms.push(Term {
                coef: from_pair(t.c),
                ket,
            });
        }
        Superposition::new(terms)
    }
}
