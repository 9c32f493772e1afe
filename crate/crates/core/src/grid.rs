use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Spacing {
    #[default]
    Linear,
    Log,
}

/// Sample grid written `min:max:count[:log]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub min: f64,
    pub max: f64,
    pub count: usize,
    pub spacing: Spacing,
}

impl Grid {
    pub fn new(min: f64, max: f64, count: usize, spacing: Spacing) -> Result<Self> {
        if !(min.is_finite() && max.is_finite() && min < max) {
            return Err(Error::invalid(
                "grid",
                format!("need finite min < max, got {min}:{max}"),
            ));
        }
        if count < 2 {
            return Err(Error::invalid(
                "grid",
                format!("count must be >= 2, got {count}"),
            ));
        }
        if spacing == Spacing::Log && min <= 0.0 {
            return Err(Error::invalid("grid", "log spacing needs min > 0"));
        }
        Ok(Self {
            min,
            max,
            count,
            spacing,
        })
    }

    pub fn linear(min: f64, max: f64, count: usize) -> Result<Self> {
        Self::new(min, max, count, Spacing::Linear)
    }

    /// Sample points; the endpoints are hit exactly.
    pub fn points(&self) -> Vec<f64> {
        let last = (self.count - 1) as f64;
        (0..self.count)
            .map(|i| {
                if i == 0 {
                    return self.min;
                }
                if i + 1 == self.count {
                    return self.max;
                }
                let t = i as f64 / last;
                match self.spacing {
                    Spacing::Linear => self.min + (self.max - self.min) * t,
                    Spacing::Log => (self.min.ln() + (self.max.ln() - self.min.ln()) * t).exp(),
                }
            })
            .collect()
    }
}

impl FromStr for Grid {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.trim().split(':').collect();
        if !(3..=4).contains(&parts.len()) {
            return Err(Error::invalid(
                "grid",
                format!("expected min:max:count[:log], got `{s}`"),
            ));
        }
        let num = |p: &str| {
            p.trim()
                .parse::<f64>()
                .map_err(|_| Error::invalid("grid", format!("`{p}` is not a number")))
        };
        let min = num(parts[0])?;
        let max = num(parts[1])?;
        let count = parts[2]
            .trim()
            .parse::<usize>()
            .map_err(|_| Error::invalid("grid", format!("`{}` is not a count", parts[2])))?;
        let spacing = match parts.get(3).map(|p| p.trim()) {
            None | Some("lin") | Some("linear") => Spacing::Linear,
            Some("log") => Spacing::Log,
            Some(other) => {
                return Err(Error::invalid("grid", format!("unknown spacing `{other}`")));
            }
        };
        Grid::new(min, max, count, spacing)
    }
}

impl fmt::Display for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.min, self.max, self.count)?;
        if self.spacing == Spacing::Log {
            write!(f, ":log")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_sample() {
        let g: Grid = "1:2:5".parse().unwrap();
        assert_eq!(g.points(), vec![1.0, 1.25, 1.5, 1.75, 2.0]);
        let g: Grid = "1:100:3:log".parse().unwrap();
        let p = g.points();
        assert_eq!(p[0], 1.0);
        assert!((p[1] - 10.0).abs() < 1e-12);
        assert_eq!(p[2], 100.0);
        assert_eq!(g.to_string(), "1:100:3:log");
    }

    #[test]
    fn rejects_bad_grids() {
        for bad in [
            "1:2",
            "2:1:5",
            "1:2:1",
            "0:1:5:log",
            "a:2:3",
            "1:2:3:cubic",
            "1:2:x",
        ] {
            assert!(bad.parse::<Grid>().is_err(), "{bad}");
        }
    }
}
