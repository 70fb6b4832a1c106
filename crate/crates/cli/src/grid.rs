use std::str::FromStr;

use opmean::func::log_grid;
use opmean::Error;

/// Parameter grid: `lo:hi:count` (linear), `log:lo:hi:count`, a comma
/// list, or the empty string.
#[derive(Clone, Debug, PartialEq)]
pub struct Grid(Vec<f64>);

impl Grid {
    pub fn points(&self) -> &[f64] {
        &self.0
    }
}

fn number(s: &str) -> Result<f64, Error> {
    s.trim().parse().map_err(|_| Error::Parse(format!("bad grid value '{s}'")))
}

impl FromStr for Grid {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self, Error> {
        let text = text.trim();
        if text.is_empty() {
            return Ok(Grid(Vec::new()));
        }
        let (log, body) = match text.strip_prefix("log:") {
            Some(rest) => (true, rest),
            None => (false, text),
        };
        let parts: Vec<&str> = body.split(':').collect();
        match parts.as_slice() {
            [lo, hi, count] => {
                let (lo, hi) = (number(lo)?, number(hi)?);
                let count: usize =
                    count.trim().parse().map_err(|_| Error::Parse(format!("bad grid count '{count}'")))?;
                if log {
                    if !(lo > 0.0 && hi > 0.0) {
                        return Err(Error::Parse("log grid needs positive bounds".into()));
                    }
                    return Ok(Grid(log_grid(lo, hi, count)));
                }
                Ok(Grid(match count {
                    0 => Vec::new(),
                    1 => vec![lo],
                    _ => (0..count).map(|k| lo + (hi - lo) * k as f64 / (count - 1) as f64).collect(),
                }))
            }
            [_] if !log => Ok(Grid(body.split(',').map(number).collect::<Result<_, _>>()?)),
            _ => Err(Error::Parse(format!("bad grid '{text}'"))),
        }
    }
}
