//! Signal CSV input.
//!
//! Two layouts are accepted: the `index,value...` files this tool writes
//! (first value column is used, indices must be consecutive), or a bare list
//! of numbers separated by commas and/or whitespace, indexed from 0.

use nthilbert::BigFraction;
use num_traits::ToPrimitive;

#[derive(Debug, PartialEq)]
pub struct RawSignal {
    pub origin: i64,
    pub values: Vec<BigFraction>,
}

impl RawSignal {
    pub fn to_integers(&self) -> Result<Vec<i64>, String> {
        self.values
            .iter()
            .enumerate()
            .map(|(i, v)| {
                v.is_integer()
                    .then(|| v.to_integer().to_i64())
                    .flatten()
                    .ok_or_else(|| format!("sample {i} ({v}) is not a 64-bit integer"))
            })
            .collect()
    }
}

pub fn parse_signal(text: &str) -> Result<RawSignal, String> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .peekable();
    let tabular = lines
        .peek()
        .is_some_and(|l| l.split(',').next().map(str::trim) == Some("index"));
    let signal = if tabular {
        lines.next();
        let mut origin = None;
        let mut values = Vec::new();
        for (row, line) in lines.enumerate() {
            let mut cells = line.split(',').map(str::trim);
            let index: i64 = parse_cell(cells.next(), row, "index")?;
            let value: BigFraction = parse_cell(cells.next(), row, "value")?;
            let start = *origin.get_or_insert(index);
            if index != start + values.len() as i64 {
                return Err(format!("row {}: index {index} is not consecutive", row + 1));
            }
            values.push(value);
        }
        RawSignal {
            origin: origin.unwrap_or(0),
            values,
        }
    } else {
        let values = text
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<BigFraction>()
                    .map_err(|e| format!("bad sample {t:?}: {e}"))
            })
            .collect::<Result<Vec<_>, _>>()?;
        RawSignal { origin: 0, values }
    };
    if signal.values.is_empty() {
        return Err("signal is empty".into());
    }
    Ok(signal)
}

fn parse_cell<T: std::str::FromStr>(cell: Option<&str>, row: usize, what: &str) -> Result<T, String>
where
    T::Err: std::fmt::Display,
{
    let cell = cell.ok_or_else(|| format!("row {}: missing {what}", row + 1))?;
    cell.parse()
        .map_err(|e| format!("row {}: bad {what} {cell:?}: {e}", row + 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigFraction {
        BigFraction::new(n.into(), d.into())
    }

    #[test]
    fn bare_list() {
        let s = parse_signal("1, 2,3\n4 5\n").unwrap();
        assert_eq!(s.origin, 0);
        assert_eq!(s.to_integers().unwrap(), [1, 2, 3, 4, 5]);
    }

    #[test]
    fn tabular_with_origin_and_rationals() {
        let s = parse_signal("index,value_exact,value_scaled\n-2,1/2,0.3\n-1,3,1.9\n").unwrap();
        assert_eq!(s.origin, -2);
        assert_eq!(s.values, [q(1, 2), q(3, 1)]);
        assert!(s.to_integers().is_err());
    }

    #[test]
    fn rejects_bad_input() {
        assert!(parse_signal("").is_err());
        assert!(parse_signal("index,value\n").is_err());
        assert!(parse_signal("1,x").is_err());
        assert!(parse_signal("index,value\n0,1\n2,1\n").is_err());
        assert!(parse_signal("index,value\n0\n").is_err());
    }
}
