//! Wire formats shared by polynomial and operator serialization.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::scalar::{fmt_rat, parse_rat, PiScalar};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoeffJson {
    pub pi: i32,
    pub re: String,
    pub im: String,
}

pub fn scalar_to_json(s: &PiScalar) -> Vec<CoeffJson> {
    s.terms()
        .map(|(k, c)| CoeffJson {
            pi: k,
            re: fmt_rat(&c.re),
            im: fmt_rat(&c.im),
        })
        .collect()
}

pub fn scalar_from_json(parts: &[CoeffJson]) -> Result<PiScalar> {
    let mut s = PiScalar::zero();
    for p in parts {
        let c = Complex::new(parse_rat(&p.re)?, parse_rat(&p.im)?);
        s.add_term(p.pi, &c);
    }
    Ok(s)
}
