use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::baselines::{rws, serwc, srw, vertex_mcmc};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::oracle::QueryLedger;
use crate::tetris::{tetris_estimate, EstimatorConfig, RunOptions};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Algorithm {
    Tetris,
    VertexMcmc,
    Srw,
    Rws,
    Serwc,
}

impl Algorithm {
    pub const ALL: [Algorithm; 5] = [
        Algorithm::Tetris,
        Algorithm::VertexMcmc,
        Algorithm::Srw,
        Algorithm::Rws,
        Algorithm::Serwc,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Tetris => "tetris",
            Algorithm::VertexMcmc => "vertex-mcmc",
            Algorithm::Srw => "srw",
            Algorithm::Rws => "rws",
            Algorithm::Serwc => "serwc",
        }
    }

    pub fn run(self, g: &Graph, cfg: &EstimatorConfig, opts: &RunOptions) -> Result<Estimate> {
        let (value, ledger) = match self {
            Algorithm::Tetris => {
                let out = tetris_estimate(g, cfg, opts)?;
                (out.estimate, out.ledger)
            }
            Algorithm::VertexMcmc => split(vertex_mcmc(g, cfg, opts)?),
            Algorithm::Srw => split(srw(g, cfg, opts)?),
            Algorithm::Rws => split(rws(g, cfg, opts)?),
            Algorithm::Serwc => split(serwc(g, cfg, opts)?),
        };
        Ok(Estimate { value, ledger })
    }
}

fn split(out: crate::baselines::BaselineOutput) -> (f64, QueryLedger) {
    (out.estimate, out.ledger)
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| Error::InvalidConfig(format!("unknown algorithm {s:?}")))
    }
}

/// Triangle estimate and the queries it cost.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub ledger: QueryLedger,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for a in Algorithm::ALL {
            assert_eq!(a.name().parse::<Algorithm>().unwrap(), a);
        }
        assert!("tetrs".parse::<Algorithm>().is_err());
    }
}
