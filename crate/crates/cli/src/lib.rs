//! Suite driver, report model and plotting for the `verify` binary.

pub mod plot;
pub mod report;
pub mod suites;

use sl2geom::ExactScalar;

/// Parse a comma-separated list of rationals `n` or `n/d` into exact
/// coefficients (ascending).
pub fn parse_rational_list(s: &str) -> Result<Vec<ExactScalar>, String> {
    s.split(',')
        .map(|part| {
            let part = part.trim();
            let (num, den) = match part.split_once('/') {
                Some((n, d)) => (n.trim(), d.trim()),
                None => (part, "1"),
            };
            let n: i64 = num
                .parse()
                .map_err(|_| format!("bad rational component '{part}'"))?;
            let d: i64 = den
                .parse()
                .map_err(|_| format!("bad rational component '{part}'"))?;
            if d == 0 {
                return Err(format!("zero denominator in '{part}'"));
            }
            Ok(ExactScalar::from_rat(n, d))
        })
        .collect()
}
