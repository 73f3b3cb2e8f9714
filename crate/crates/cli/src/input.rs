//! Graph arguments, coin flags and inflow specifications.

use std::path::Path;

use ewalk_core::enumerate::DEFAULT_BUDGET;
use ewalk_core::format;
use ewalk_core::graph::SymmetricDigraph;
use ewalk_core::rotation::RotationSystem;
use ewalk_core::walk::{unit_inflow, Coin, C64};

#[derive(Debug, thiserror::Error)]
#[error("{0}")]
pub struct InputError(pub String);

fn input_err(msg: impl Into<String>) -> anyhow::Error {
    InputError(msg.into()).into()
}

fn family(arg: &str, prefix: char) -> Option<usize> {
    arg.strip_prefix(prefix).and_then(|n| n.parse().ok())
}

/// `Kn` (sorted rotation, no twists), `Cn`, or a rotation-system file.
pub fn load_system(arg: &str) -> anyhow::Result<RotationSystem> {
    if let Some(n) = family(arg, 'K') {
        return Ok(RotationSystem::sorted(SymmetricDigraph::complete(n)?)?);
    }
    if let Some(n) = family(arg, 'C') {
        return Ok(RotationSystem::sorted(SymmetricDigraph::cycle(n)?)?);
    }
    let path = Path::new(arg);
    let text = std::fs::read_to_string(path).map_err(|e| input_err(format!("cannot read {}: {e}", path.display())))?;
    Ok(format::parse(&text)?)
}

/// The underlying graph of `Kn`, `Cn` or a rotation-system file.
pub fn load_graph(arg: &str) -> anyhow::Result<SymmetricDigraph> {
    if let Some(n) = family(arg, 'K') {
        return Ok(SymmetricDigraph::complete(n)?);
    }
    Ok(load_system(arg)?.graph().clone())
}

/// `re` or `re,im`.
pub fn parse_complex(s: &str) -> Result<C64, String> {
    let mut parts = s.split(',');
    let re = parts.next().unwrap_or("");
    let im = parts.next();
    if parts.next().is_some() {
        return Err(format!("expected `re` or `re,im`, found `{s}`"));
    }
    let num = |t: &str| t.trim().parse::<f64>().map_err(|_| format!("`{t}` is not a number"));
    Ok(C64::new(num(re)?, im.map(num).transpose()?.unwrap_or(0.0)))
}

/// No entries: the Hadamard-type coin. Only a real `a`: the real coin
/// `[[a, r], [r, -a]]`. Otherwise all four entries.
pub fn coin(a: Option<C64>, b: Option<C64>, c: Option<C64>, d: Option<C64>) -> anyhow::Result<Coin> {
    match (a, b, c, d) {
        (None, None, None, None) => Ok(Coin::hadamard()),
        (Some(a), None, None, None) if a.im == 0.0 => Ok(Coin::real(a.re)?),
        (Some(a), Some(b), Some(c), Some(d)) => Ok(Coin::new(a, b, c, d)?),
        _ => Err(input_err("give no coin entries, a real --a alone, or all of --a --b --c --d")),
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Inflow {
    Tail(usize),
    Uniform,
    Zero,
}

impl std::str::FromStr for Inflow {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "uniform" => Ok(Inflow::Uniform),
            "zero" => Ok(Inflow::Zero),
            _ => s
                .parse()
                .map(Inflow::Tail)
                .map_err(|_| format!("expected a tail id, `uniform` or `zero`, found `{s}`")),
        }
    }
}

impl std::fmt::Display for Inflow {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Inflow::Tail(t) => write!(f, "{t}"),
            Inflow::Uniform => f.write_str("uniform"),
            Inflow::Zero => f.write_str("zero"),
        }
    }
}

impl Inflow {
    /// Amplitude vector on `n` tails; `uniform` spreads unit norm evenly.
    pub fn vector(self, n: usize) -> anyhow::Result<Vec<C64>> {
        match self {
            Inflow::Tail(t) if t < n => Ok(unit_inflow(n, t)),
            Inflow::Tail(t) => Err(ewalk_core::Error::Domain(format!("tail {t} out of range 0..{n}")).into()),
            Inflow::Uniform => Ok(vec![C64::from(1.0 / (n as f64).sqrt()); n]),
            Inflow::Zero => Ok(vec![C64::default(); n]),
        }
    }
}

pub fn budget() -> anyhow::Result<u128> {
    match std::env::var("EW_BUDGET") {
        Ok(v) => v.trim().parse().map_err(|_| input_err(format!("EW_BUDGET must be an integer, found `{v}`"))),
        Err(_) => Ok(DEFAULT_BUDGET),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_literals() {
        assert_eq!(parse_complex("0.5").unwrap(), C64::new(0.5, 0.0));
        assert_eq!(parse_complex("-1,2.5").unwrap(), C64::new(-1.0, 2.5));
        assert!(parse_complex("1,2,3").is_err());
        assert!(parse_complex("x").is_err());
    }

    #[test]
    fn coin_selection() {
        assert_eq!(coin(None, None, None, None).unwrap(), Coin::hadamard());
        assert_eq!(coin(Some(C64::from(0.3)), None, None, None).unwrap(), Coin::real(0.3).unwrap());
        assert!(coin(Some(C64::new(0.3, 0.1)), None, None, None).is_err());
        assert!(coin(None, Some(C64::from(1.0)), None, None).is_err());
    }

    #[test]
    fn inflow_specs() {
        assert_eq!("uniform".parse::<Inflow>().unwrap(), Inflow::Uniform);
        assert_eq!("12".parse::<Inflow>().unwrap(), Inflow::Tail(12));
        assert!("-1".parse::<Inflow>().is_err());
        let u = Inflow::Uniform.vector(4).unwrap();
        assert!((u.iter().map(|z| z.norm_sqr()).sum::<f64>() - 1.0).abs() < 1e-15);
        assert!(Inflow::Tail(4).vector(4).is_err());
    }
}
