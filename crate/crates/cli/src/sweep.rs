//! `key=value` sweep configuration.

use std::fmt;
use std::ops::RangeInclusive;
use std::path::PathBuf;

use chebycycle::{is_permutation, Prime};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepConfig {
    pub degrees: RangeInclusive<u64>,
    pub p2_k: Option<RangeInclusive<u32>>,
    pub p3_k: Option<RangeInclusive<u32>>,
    pub workers: usize,
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for ParseError {}

fn range<T>(s: &str) -> Result<RangeInclusive<T>, String>
where
    T: std::str::FromStr + PartialOrd + Copy,
{
    let (lo, hi) = match s.split_once("..") {
        Some((lo, hi)) => (lo.trim(), hi.trim().trim_start_matches('=')),
        None => (s.trim(), s.trim()),
    };
    let lo: T = lo.parse().map_err(|_| format!("bad number {lo:?}"))?;
    let hi: T = hi.parse().map_err(|_| format!("bad number {hi:?}"))?;
    if lo > hi {
        return Err(format!("empty range {s:?}"));
    }
    Ok(lo..=hi)
}

fn exponents(s: &str, p: Prime) -> Result<RangeInclusive<u32>, String> {
    let r = range::<u32>(s)?;
    if *r.start() == 0 || *r.end() > p.max_exponent() {
        return Err(format!("exponents for p={p} must lie in 1..={}", p.max_exponent()));
    }
    Ok(r)
}

impl SweepConfig {
    /// Parses `key=value` lines. `#` starts a comment. Known keys are
    /// `degrees`, `primes`, `p2_k`, `p3_k`, `workers` and `out`.
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut degrees = None;
        let mut primes: Option<Vec<u64>> = None;
        let mut p2_k = None;
        let mut p3_k = None;
        let mut workers = 1;
        let mut out = None;
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |message: String| ParseError { line: i + 1, message };
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| err(format!("expected key=value, got {line:?}")))?;
            let value = value.trim();
            match key.trim() {
                "degrees" => {
                    let r = range::<u64>(value).map_err(err)?;
                    if *r.start() == 0 {
                        return Err(err("degrees must be positive".into()));
                    }
                    degrees = Some(r);
                }
                "primes" => {
                    let ps = value
                        .split(',')
                        .map(|p| match p.trim() {
                            "2" => Ok(2),
                            "3" => Ok(3),
                            other => Err(err(format!("unsupported prime {other:?}"))),
                        })
                        .collect::<Result<Vec<_>, _>>()?;
                    primes = Some(ps);
                }
                "p2_k" => p2_k = Some(exponents(value, Prime::Two).map_err(err)?),
                "p3_k" => p3_k = Some(exponents(value, Prime::Three).map_err(err)?),
                "workers" => {
                    workers = value
                        .parse()
                        .ok()
                        .filter(|&w: &usize| w >= 1)
                        .ok_or_else(|| err(format!("workers must be a positive integer, got {value:?}")))?;
                }
                "out" => out = Some(PathBuf::from(value)),
                other => return Err(err(format!("unknown key {other:?}"))),
            }
        }
        let end = text.lines().count().max(1);
        let degrees = degrees.ok_or(ParseError {
            line: end,
            message: "missing key degrees".into(),
        })?;
        if let Some(ps) = primes {
            if !ps.contains(&2) {
                p2_k = None;
            }
            if !ps.contains(&3) {
                p3_k = None;
            }
        }
        if p2_k.is_none() && p3_k.is_none() {
            return Err(ParseError {
                line: end,
                message: "no exponent range: set p2_k and/or p3_k".into(),
            });
        }
        Ok(Self {
            degrees,
            p2_k,
            p3_k,
            workers,
            out,
        })
    }

    /// `(n, p, k)` in sweep order: by prime, then degree, then exponent.
    pub fn tuples(&self) -> Vec<(u64, Prime, u32)> {
        let mut out = Vec::new();
        for (p, ks) in [(Prime::Two, &self.p2_k), (Prime::Three, &self.p3_k)] {
            let Some(ks) = ks else { continue };
            for n in self.degrees.clone().filter(|&n| is_permutation(n, p)) {
                out.extend(ks.clone().map(|k| (n, p, k)));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_default_shape() {
        let c = SweepConfig::parse("# sweep\ndegrees=3..199\np2_k=1..14\np3_k = 1..8\nworkers=4\n").unwrap();
        assert_eq!(c.degrees, 3..=199);
        assert_eq!(c.p2_k, Some(1..=14));
        assert_eq!(c.p3_k, Some(1..=8));
        assert_eq!(c.workers, 4);
        let t = c.tuples();
        assert_eq!(t.iter().filter(|t| t.1 == Prime::Two).count(), 99 * 14);
        assert_eq!(t.iter().filter(|t| t.1 == Prime::Three).count(), 66 * 8);
        assert_eq!(t[0], (3, Prime::Two, 1));
    }

    #[test]
    fn single_values_and_primes() {
        let c = SweepConfig::parse("degrees=19\np2_k=5\np3_k=2..3\nprimes=3").unwrap();
        assert_eq!(c.tuples(), vec![(19, Prime::Three, 2), (19, Prime::Three, 3)]);
    }

    #[test]
    fn rejections() {
        for bad in [
            "degrees=3..199\np2_k=1..14\ncolour=red",
            "degrees=3..199",
            "degrees=9..3\np2_k=1",
            "degrees=3..9\np2_k=0..4",
            "degrees=3..9\np3_k=1..40",
            "degrees=3..9\np2_k=1\nworkers=0",
            "degrees 3..9",
            "degrees=3..9\np2_k=1\nprimes=5",
        ] {
            assert!(SweepConfig::parse(bad).is_err(), "{bad}");
        }
        assert_eq!(SweepConfig::parse("degrees=3\np2_k=1\nfoo=1").unwrap_err().line, 3);
    }
}
