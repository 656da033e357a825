//! Parsers for list, range and case arguments.

use crate::output::round_sig;

fn number(s: &str) -> Result<f64, String> {
    let x: f64 = s.trim().parse().map_err(|_| format!("'{s}' is not a number"))?;
    if x.is_finite() {
        Ok(x)
    } else {
        Err(format!("'{s}' is not finite"))
    }
}

/// `lo:hi:step`, inclusive of `hi` up to rounding.
pub fn range(s: &str) -> Result<Vec<f64>, String> {
    let parts: Vec<&str> = s.split(':').collect();
    let [lo, hi, step] = parts[..] else {
        return Err(format!("'{s}' is not of the form lo:hi:step"));
    };
    let (lo, hi, step) = (number(lo)?, number(hi)?, number(step)?);
    if !(step > 0.0) || hi < lo {
        return Err(format!("'{s}' needs lo <= hi and step > 0"));
    }
    let n = ((hi - lo) / step + 1e-9).floor() as usize;
    if n > 1_000_000 {
        return Err(format!("'{s}' has too many points"));
    }
    Ok((0..=n).map(|i| round_sig(lo + i as f64 * step, 12)).collect())
}

/// Comma-separated numbers, or a single `lo:hi:step` range.
pub fn list_or_range(s: &str) -> Result<Vec<f64>, String> {
    if s.contains(':') {
        range(s)
    } else {
        s.split(',').map(number).collect()
    }
}

pub fn int_list(s: &str) -> Result<Vec<u32>, String> {
    s.split(',')
        .map(|p| {
            p.trim()
                .parse::<u32>()
                .map_err(|_| format!("'{p}' is not a non-negative integer"))
        })
        .collect()
}

/// `k:a` pairs separated by commas.
pub fn cases(s: &str) -> Result<Vec<(u32, f64)>, String> {
    s.split(',')
        .map(|c| {
            let (k, a) = c
                .split_once(':')
                .ok_or_else(|| format!("'{c}' is not of the form k:a"))?;
            let k = k
                .trim()
                .parse::<u32>()
                .map_err(|_| format!("'{k}' is not a non-negative integer"))?;
            Ok((k, number(a)?))
        })
        .collect()
}
