//! Evaluation grids and ε-ladders given on the command line.

use std::fmt;
use std::str::FromStr;

use krein_core::Complex64;

use crate::error::CliError;

/// `a:b:n` (`n` evenly spaced reals) or `box:re1:re2:im1:im2:n` (an
/// `n × n` lattice of the rectangle).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Grid {
    Line { a: f64, b: f64, n: usize },
    Box { re: (f64, f64), im: (f64, f64), n: usize },
}

/// Grid used when neither the spec nor the command line gives one.
pub const DEFAULT_GRID: &str = "-5:5:11";

fn number(s: &str) -> Result<f64, CliError> {
    let x: f64 = s.trim().parse().map_err(|_| CliError::Input(format!("grid: bad number {s:?}")))?;
    if x.is_finite() {
        Ok(x)
    } else {
        Err(CliError::Input(format!("grid: {s:?} is not finite")))
    }
}

fn count(s: &str) -> Result<usize, CliError> {
    match s.trim().parse::<usize>() {
        Ok(n) if n > 0 => Ok(n),
        _ => Err(CliError::Input(format!("grid: bad point count {s:?}"))),
    }
}

impl FromStr for Grid {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Grid, CliError> {
        let parts: Vec<&str> = s.split(':').collect();
        match parts.as_slice() {
            ["box", r1, r2, i1, i2, n] => {
                let (re, im) = ((number(r1)?, number(r2)?), (number(i1)?, number(i2)?));
                if !(re.0 <= re.1 && im.0 <= im.1 && im.0 >= 0.0) {
                    return Err(CliError::Input("grid: box needs re1 <= re2 and 0 <= im1 <= im2".into()));
                }
                Ok(Grid::Box { re, im, n: count(n)? })
            }
            [a, b, n] => {
                let (a, b) = (number(a)?, number(b)?);
                if a > b {
                    return Err(CliError::Input("grid: need a <= b".into()));
                }
                Ok(Grid::Line { a, b, n: count(n)? })
            }
            _ => Err(CliError::Input(format!("grid: expected \"a:b:n\" or \"box:re1:re2:im1:im2:n\", got {s:?}"))),
        }
    }
}

impl fmt::Display for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Grid::Line { a, b, n } => write!(f, "{a}:{b}:{n}"),
            Grid::Box { re, im, n } => write!(f, "box:{}:{}:{}:{}:{n}", re.0, re.1, im.0, im.1),
        }
    }
}

fn spaced(lo: f64, hi: f64, n: usize) -> impl Iterator<Item = f64> {
    (0..n).map(move |i| if n == 1 { lo } else { lo + (hi - lo) * i as f64 / (n - 1) as f64 })
}

impl Grid {
    /// Points in row-major order (imaginary part outermost for boxes).
    pub fn points(&self) -> Vec<Complex64> {
        match *self {
            Grid::Line { a, b, n } => spaced(a, b, n).map(|x| Complex64::new(x, 0.0)).collect(),
            Grid::Box { re, im, n } => spaced(im.0, im.1, n).flat_map(|y| spaced(re.0, re.1, n).map(move |x| Complex64::new(x, y))).collect(),
        }
    }
}

/// Comma-separated positive ε values, or the single value `0` for direct
/// evaluation on the axis.
pub fn parse_eps(s: &str) -> Result<Vec<f64>, CliError> {
    let v = s.split(',').map(number).collect::<Result<Vec<f64>, _>>()?;
    check_eps(&v)?;
    Ok(v)
}

pub fn check_eps(v: &[f64]) -> Result<(), CliError> {
    if v == [0.0] || (!v.is_empty() && v.iter().all(|&e| e > 0.0)) {
        Ok(())
    } else {
        Err(CliError::Input("eps: give positive values, or just 0".into()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_both_forms() {
        assert_eq!("-1:1:3".parse::<Grid>().unwrap().points().iter().map(|z| z.re).collect::<Vec<_>>(), [-1.0, 0.0, 1.0]);
        let b: Grid = "box:0:1:1:2:2".parse().unwrap();
        assert_eq!(b.points(), [Complex64::new(0.0, 1.0), Complex64::new(1.0, 1.0), Complex64::new(0.0, 2.0), Complex64::new(1.0, 2.0)]);
        assert_eq!(b.to_string(), "box:0:1:1:2:2");
    }

    #[test]
    fn rejects_bad_grids() {
        for s in ["1:0:3", "0:1:0", "box:0:1:-1:1:3", "0:1", "x:1:2", "0:inf:3"] {
            assert!(s.parse::<Grid>().is_err(), "{s}");
        }
    }

    #[test]
    fn eps_ladders() {
        assert_eq!(parse_eps("0").unwrap(), [0.0]);
        assert_eq!(parse_eps("1e-2,1e-3").unwrap(), [1e-2, 1e-3]);
        assert!(parse_eps("0,1e-3").is_err());
        assert!(parse_eps("-1").is_err());
    }
}
