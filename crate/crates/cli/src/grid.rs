//! Parsers for the compact grid and spec syntax of the command line.

use crate::error::{CliError, CliResult};

fn bad(what: &str, s: &str) -> CliError {
    CliError::Input(format!("cannot parse {what} from {s:?}"))
}

fn number<T: std::str::FromStr>(what: &str, s: &str) -> CliResult<T> {
    s.trim().parse().map_err(|_| bad(what, s))
}

/// `"4-6,8"` → `[4, 5, 6, 8]`, in the given order.
pub fn parse_range_list(s: &str) -> CliResult<Vec<usize>> {
    let mut out = Vec::new();
    for item in s.split(',') {
        match item.split_once('-') {
            Some((lo, hi)) => {
                let (lo, hi): (usize, usize) = (number("range", lo)?, number("range", hi)?);
                if lo > hi {
                    return Err(bad("range", item));
                }
                out.extend(lo..=hi);
            }
            None => out.push(number("range", item)?),
        }
    }
    Ok(out)
}

/// `"n;i1,t1;i2,t2;..."` → `(n, [(i1, t1), ...])`.
pub fn parse_spec(s: &str) -> CliResult<(usize, Vec<(usize, usize)>)> {
    let mut parts = s.split(';');
    let n = number("spec", parts.next().unwrap_or_default())?;
    let pairs = parts
        .map(|w| {
            let (i, t) = w.split_once(',').ok_or_else(|| bad("window", w))?;
            Ok((number("window", i)?, number("window", t)?))
        })
        .collect::<CliResult<Vec<_>>>()?;
    if pairs.is_empty() {
        return Err(bad("spec", s));
    }
    Ok((n, pairs))
}

/// `"1,2,1;0,2,2"` → `[[1, 2, 1], [0, 2, 2]]`.
pub fn parse_vectors(s: &str) -> CliResult<Vec<Vec<u32>>> {
    s.split(';').map(|v| v.split(',').map(|x| number("vector", x)).collect()).collect()
}

/// `"3,4"` → `(3, 4)`.
pub fn parse_pair(s: &str) -> CliResult<(usize, u32)> {
    let (a, b) = s.split_once(',').ok_or_else(|| bad("pair", s))?;
    Ok((number("pair", a)?, number("pair", b)?))
}
