use std::ops::RangeInclusive;

use anyhow::{anyhow, bail, Context, Result};
use spectral_lb::Domain;

fn number(s: &str, what: &str) -> Result<f64> {
    s.trim().parse::<f64>().with_context(|| format!("{what}: `{s}` is not a number"))
}

fn count(s: &str, what: &str) -> Result<usize> {
    s.trim().parse::<usize>().with_context(|| format!("{what}: `{s}` is not a non-negative integer"))
}

/// `box:L1,L2,..`, `interval:L`, `ball:N:R` or `abstract:N:V[:I]`.
pub fn parse_shape(s: &str) -> Result<Domain> {
    let (kind, rest) = s.split_once(':').ok_or_else(|| anyhow!("shape `{s}` has no `kind:` prefix"))?;
    let parts: Vec<&str> = rest.split(':').collect();
    let domain = match (kind, parts.as_slice()) {
        ("box", [lengths]) => {
            let lengths = lengths.split(',').map(|l| number(l, "box length")).collect::<Result<Vec<_>>>()?;
            Domain::cuboid(lengths)?
        }
        ("interval", [l]) => Domain::interval(number(l, "interval length")?)?,
        ("ball", [n, r]) => Domain::ball(count(n, "ball dimension")?, number(r, "ball radius")?)?,
        ("abstract", [n, v]) => Domain::abstract_domain(count(n, "dimension")?, number(v, "volume")?, None)?,
        ("abstract", [n, v, i]) => {
            Domain::abstract_domain(count(n, "dimension")?, number(v, "volume")?, Some(number(i, "inertia")?))?
        }
        _ => bail!("unrecognized shape `{s}`; expected box:L1,L2,.. | interval:L | ball:N:R | abstract:N:V[:I]"),
    };
    Ok(domain)
}

/// `A..B` (inclusive) or a single `A`.
pub fn parse_range(s: &str) -> Result<RangeInclusive<u64>> {
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (a, b.strip_prefix('=').unwrap_or(b)),
        None => (s, s),
    };
    let lo: u64 = lo.trim().parse().with_context(|| format!("range `{s}`"))?;
    let hi: u64 = hi.trim().parse().with_context(|| format!("range `{s}`"))?;
    if hi < lo {
        bail!("range `{s}` is empty");
    }
    Ok(lo..=hi)
}

/// `LO:HI:STEP`.
pub fn parse_grid(s: &str) -> Result<(f64, f64, f64)> {
    match s.split(':').collect::<Vec<_>>().as_slice() {
        [lo, hi, step] => Ok((number(lo, "grid lo")?, number(hi, "grid hi")?, number(step, "grid step")?)),
        _ => bail!("grid `{s}` is not LO:HI:STEP"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shapes() {
        assert_eq!(parse_shape("box:1,2").unwrap(), Domain::cuboid(vec![1.0, 2.0]).unwrap());
        assert_eq!(parse_shape("ball:3:0.5").unwrap(), Domain::ball(3, 0.5).unwrap());
        assert_eq!(parse_shape("abstract:2:1:0.2").unwrap().dimension, 2);
        assert!(parse_shape("ball:2").is_err());
        assert!(parse_shape("box:1,-1").is_err());
        assert!(parse_shape("torus:1").is_err());
    }

    #[test]
    fn ranges() {
        assert_eq!(parse_range("1..10").unwrap(), 1..=10);
        assert_eq!(parse_range("3..=4").unwrap(), 3..=4);
        assert_eq!(parse_range("7").unwrap(), 7..=7);
        assert!(parse_range("5..2").is_err());
        assert_eq!(parse_grid("0:10:0.001").unwrap(), (0.0, 10.0, 0.001));
    }
}
