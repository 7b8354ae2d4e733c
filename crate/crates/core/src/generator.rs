//! Test graph families and a seeded random source.
//!
//! Random graphs use a 64-bit linear congruential generator with Knuth's
//! MMIX constants:
//!
//! ```text
//! state <- state * 6364136223846793005 + 1442695040888963407   (mod 2^64)
//! ```
//!
//! The state starts at the seed and is advanced once before each draw. A draw
//! in `[0, 1)` is the top 53 bits of the new state divided by `2^53`. For
//! `random(n, p, seed)` the pairs `i < j` are visited in lexicographic order
//! and the edge is kept when its draw is below `p`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::connectivity::vertex_connectivity;
use crate::graph::Graph;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GenError {
    #[error("bad family spec: {0}")]
    BadSpec(String),
    #[error("no {k}-connected graph in {attempts} attempts")]
    ExhaustedAttempts { k: usize, attempts: usize },
}

/// The MMIX linear congruential generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lcg(u64);

impl Lcg {
    pub const MUL: u64 = 6364136223846793005;
    pub const INC: u64 = 1442695040888963407;

    pub fn new(seed: u64) -> Self {
        Lcg(seed)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_mul(Self::MUL).wrapping_add(Self::INC);
        self.0
    }

    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum FamilySpec {
    Complete {
        n: usize,
    },
    CompleteMultipartite {
        parts: Vec<usize>,
    },
    /// Cartesian product of cycles `C_m x C_n`.
    Torus {
        m: usize,
        n: usize,
    },
    Circulant {
        n: usize,
        offsets: Vec<usize>,
    },
    Random {
        n: usize,
        p: f64,
        seed: u64,
    },
}

impl FamilySpec {
    pub fn validate(&self) -> Result<(), GenError> {
        let bad = |s: &str| Err(GenError::BadSpec(s.to_string()));
        match self {
            FamilySpec::Complete { n } if *n == 0 => bad("complete needs n >= 1"),
            FamilySpec::CompleteMultipartite { parts } if parts.is_empty() || parts.contains(&0) => {
                bad("multipartite parts must be positive")
            }
            FamilySpec::Torus { m, n } if *m < 3 || *n < 3 => bad("torus needs m, n >= 3"),
            FamilySpec::Circulant { n, offsets } => {
                if *n == 0 || offsets.iter().any(|&o| o == 0 || 2 * o > *n) {
                    bad("circulant offsets must lie in 1..=n/2")
                } else {
                    Ok(())
                }
            }
            FamilySpec::Random { n, p, .. } if *n == 0 || !(*p > 0.0 && *p < 1.0) => {
                bad("random needs n >= 1 and 0 < p < 1")
            }
            _ => Ok(()),
        }
    }
}

/// Parses the command-line form, e.g. `complete:5`, `multipartite:2,2,2`,
/// `torus:3x4`, `circulant:8:1,2`, `random:12:0.5`. A random spec without a
/// seed gets seed 0.
impl FromStr for FamilySpec {
    type Err = GenError;

    fn from_str(s: &str) -> Result<Self, GenError> {
        let bad = || GenError::BadSpec(s.to_string());
        let num = |t: &str| t.trim().parse::<usize>().map_err(|_| bad());
        let list = |t: &str| t.split(',').map(num).collect::<Result<Vec<_>, _>>();
        let fields: Vec<&str> = s.split(':').collect();
        let spec = match fields.as_slice() {
            ["complete", n] => FamilySpec::Complete { n: num(n)? },
            ["multipartite", parts] => FamilySpec::CompleteMultipartite { parts: list(parts)? },
            ["torus", mn] => {
                let (m, n) = mn.split_once('x').ok_or_else(bad)?;
                FamilySpec::Torus { m: num(m)?, n: num(n)? }
            }
            ["circulant", n, offsets] => FamilySpec::Circulant {
                n: num(n)?,
                offsets: list(offsets)?,
            },
            ["random", n, p] | ["random", n, p, _] => FamilySpec::Random {
                n: num(n)?,
                p: p.parse().map_err(|_| bad())?,
                seed: match fields.get(3) {
                    Some(x) => x.parse().map_err(|_| bad())?,
                    None => 0,
                },
            },
            _ => return Err(bad()),
        };
        spec.validate()?;
        Ok(spec)
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[usize]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        match self {
            FamilySpec::Complete { n } => write!(f, "complete:{n}"),
            FamilySpec::CompleteMultipartite { parts } => write!(f, "multipartite:{}", join(parts)),
            FamilySpec::Torus { m, n } => write!(f, "torus:{m}x{n}"),
            FamilySpec::Circulant { n, offsets } => write!(f, "circulant:{n}:{}", join(offsets)),
            FamilySpec::Random { n, p, seed } => write!(f, "random:{n}:{p}:{seed}"),
        }
    }
}

pub fn generate(spec: &FamilySpec) -> Result<Graph, GenError> {
    spec.validate()?;
    let mut edges = Vec::new();
    let n = match spec {
        FamilySpec::Complete { n } => return Ok(Graph::complete(*n)),
        FamilySpec::CompleteMultipartite { parts } => {
            let mut part = Vec::new();
            for (i, &size) in parts.iter().enumerate() {
                part.extend(std::iter::repeat(i).take(size));
            }
            for u in 0..part.len() {
                for v in u + 1..part.len() {
                    if part[u] != part[v] {
                        edges.push((u, v));
                    }
                }
            }
            part.len()
        }
        FamilySpec::Torus { m, n } => {
            let id = |i: usize, j: usize| i * n + j;
            for i in 0..*m {
                for j in 0..*n {
                    edges.push((id(i, j), id((i + 1) % m, j)));
                    edges.push((id(i, j), id(i, (j + 1) % n)));
                }
            }
            m * n
        }
        FamilySpec::Circulant { n, offsets } => {
            for i in 0..*n {
                for &o in offsets {
                    edges.push((i, (i + o) % n));
                }
            }
            *n
        }
        FamilySpec::Random { n, p, seed } => {
            let mut rng = Lcg::new(*seed);
            for u in 0..*n {
                for v in u + 1..*n {
                    if rng.next_f64() < *p {
                        edges.push((u, v));
                    }
                }
            }
            *n
        }
    };
    // circulant offsets of n/2 list each edge twice
    edges.sort_unstable_by_key(|&(u, v)| (u.min(v), u.max(v)));
    edges.dedup_by_key(|e| (e.0.min(e.1), e.0.max(e.1)));
    Graph::new(n, edges).map_err(|e| GenError::BadSpec(e.to_string()))
}

/// Draws `random(n, p, seed + i)` for `i = 0, 1, ...` until one has vertex
/// connectivity at least 4.
pub fn generate_4connected(n: usize, p: f64, seed: u64, attempts: usize) -> Result<Graph, GenError> {
    generate_k_connected(n, 4, p, seed, attempts)
}

pub fn generate_k_connected(n: usize, k: usize, p: f64, seed: u64, attempts: usize) -> Result<Graph, GenError> {
    if n <= k {
        return Err(GenError::BadSpec(format!("no {k}-connected graph on {n} vertices")));
    }
    for i in 0..attempts {
        let g = generate(&FamilySpec::Random {
            n,
            p,
            seed: seed.wrapping_add(i as u64),
        })?;
        if g.min_degree() >= k && vertex_connectivity(&g) >= k {
            return Ok(g);
        }
    }
    Err(GenError::ExhaustedAttempts { k, attempts })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::connectivity::find_separator;

    #[test]
    fn lcg_stream() {
        let mut r = Lcg::new(0);
        assert_eq!(r.next_u64(), Lcg::INC);
        assert_eq!(r.next_u64(), Lcg::INC.wrapping_mul(Lcg::MUL).wrapping_add(Lcg::INC));
        let x = Lcg::new(7).next_f64();
        assert!((0.0..1.0).contains(&x));
    }

    #[test]
    fn standard_families() {
        assert_eq!(generate(&"complete:5".parse().unwrap()).unwrap().m(), 10);
        let oct = generate(&"multipartite:2,2,2".parse().unwrap()).unwrap();
        assert_eq!((oct.n(), oct.m(), oct.min_degree(), oct.max_degree()), (6, 12, 4, 4));
        let t = generate(&"torus:3x3".parse().unwrap()).unwrap();
        assert_eq!((t.n(), t.m(), t.min_degree(), t.max_degree()), (9, 18, 4, 4));
        let c = generate(&"circulant:8:1,4".parse().unwrap()).unwrap();
        assert_eq!(c.m(), 12);
    }

    #[test]
    fn bad_specs() {
        for s in [
            "torus:2x5",
            "random:5:1.5",
            "circulant:6:4",
            "multipartite:2,0",
            "cube:3",
        ] {
            assert!(s.parse::<FamilySpec>().is_err(), "{s}");
        }
        assert_eq!("torus:4x5".parse::<FamilySpec>().unwrap().to_string(), "torus:4x5");
    }

    #[test]
    fn random_is_deterministic() {
        let s = FamilySpec::Random { n: 12, p: 0.5, seed: 1 };
        assert_eq!(generate(&s).unwrap(), generate(&s).unwrap());
        assert_ne!(
            generate(&s).unwrap(),
            generate(&FamilySpec::Random { n: 12, p: 0.5, seed: 2 }).unwrap()
        );
    }

    #[test]
    fn four_connected_draws() {
        let g = generate_4connected(12, 0.5, 1, 200).unwrap();
        assert!(find_separator(&g, 4).is_none());
        let g = generate_4connected(6, 0.9, 3, 500).unwrap();
        assert!(vertex_connectivity(&g) >= 4);
        // on five vertices only K5 qualifies
        match generate_4connected(5, 0.9, 0, 300) {
            Ok(g) => assert!(g.is_complete()),
            Err(e) => assert_eq!(e, GenError::ExhaustedAttempts { k: 4, attempts: 300 }),
        }
    }
}
