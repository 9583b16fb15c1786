//! Numbers with optional unit suffixes, e.g. `7.8um`, `5.5mm`,
//! `2pi*17.3MHz`, `0.36A` (ångström).

use nckit_core::AngularFrequency;

fn split_number(s: &str) -> Result<(f64, &str), String> {
    let s = s.trim();
    let end = s
        .char_indices()
        .find(|&(i, c)| {
            !(c.is_ascii_digit()
                || c == '.'
                || c == '-'
                || c == '+'
                || ((c == 'e' || c == 'E')
                    && s[i + 1..].starts_with(|n: char| n.is_ascii_digit() || n == '-' || n == '+')))
        })
        .map(|(i, _)| i)
        .unwrap_or(s.len());
    let value: f64 = s[..end].parse().map_err(|_| format!("`{s}` does not start with a number"))?;
    Ok((value, s[end..].trim()))
}

/// Length in metres.
pub fn length(s: &str) -> Result<f64, String> {
    let (v, unit) = split_number(s)?;
    let scale = match unit {
        "" | "m" => 1.0,
        "mm" => 1e-3,
        "um" | "µm" => 1e-6,
        "nm" => 1e-9,
        "pm" => 1e-12,
        "A" | "Å" => 1e-10,
        other => return Err(format!("unknown length unit `{other}`")),
    };
    Ok(v * scale)
}

/// Frequency in Hz.
pub fn frequency(s: &str) -> Result<f64, String> {
    let (v, unit) = split_number(s)?;
    let scale = match unit {
        "" | "Hz" => 1.0,
        "kHz" => 1e3,
        "MHz" => 1e6,
        "GHz" => 1e9,
        other => return Err(format!("unknown frequency unit `{other}`")),
    };
    Ok(v * scale)
}

/// A rate such as a coupling constant. `2pi*17.3MHz` and `17.3MHz` both
/// mean g/2π = 17.3 MHz; a `rad/s` suffix gives the angular value directly.
pub fn angular(s: &str) -> Result<AngularFrequency, String> {
    let t = s.trim();
    let t = t
        .strip_prefix("2pi*")
        .or_else(|| t.strip_prefix("2π*"))
        .or_else(|| t.strip_prefix("2π×"))
        .unwrap_or(t);
    if let Some(num) = t.strip_suffix("rad/s") {
        let (v, rest) = split_number(num)?;
        if !rest.is_empty() {
            return Err(format!("unexpected `{rest}` in `{s}`"));
        }
        return Ok(AngularFrequency::from_rad_per_s(v));
    }
    Ok(AngularFrequency::from_hz(frequency(t)?))
}

/// `lo:hi` pairs separated by commas, each side a frequency.
pub fn bands(s: &str) -> Result<Vec<(f64, f64)>, String> {
    s.split(',')
        .filter(|p| !p.trim().is_empty())
        .map(|p| {
            let (lo, hi) = p
                .split_once(':')
                .ok_or_else(|| format!("band `{p}` is not of the form lo:hi"))?;
            Ok((frequency(lo)?, frequency(hi)?))
        })
        .collect()
}

/// Band list as a single argument value.
#[derive(Debug, Clone, PartialEq)]
pub struct Bands(pub Vec<(f64, f64)>);

pub fn band_list(s: &str) -> Result<Bands, String> {
    bands(s).map(Bands)
}

/// Three comma-separated voltages.
pub fn triple(s: &str) -> Result<[f64; 3], String> {
    let v: Vec<f64> = s
        .split(',')
        .map(|p| p.trim().trim_end_matches('V').parse::<f64>().map_err(|e| format!("`{p}`: {e}")))
        .collect::<Result<_, _>>()?;
    v.try_into().map_err(|v: Vec<f64>| format!("expected three values, got {}", v.len()))
}
