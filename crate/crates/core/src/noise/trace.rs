use std::fmt;
use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;
use std::str::FromStr;

use super::{positive, NoiseError};

/// Physical unit of trace samples.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Unit {
    Volt,
    Meter,
    Hertz,
}

impl Unit {
    pub fn symbol(&self) -> &'static str {
        match self {
            Unit::Volt => "V",
            Unit::Meter => "m",
            Unit::Hertz => "Hz",
        }
    }
}

impl fmt::Display for Unit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

impl FromStr for Unit {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "v" | "volt" | "volts" => Ok(Unit::Volt),
            "m" | "meter" | "meters" | "metre" | "metres" => Ok(Unit::Meter),
            "hz" | "hertz" => Ok(Unit::Hertz),
            _ => Err(format!("unknown unit `{s}` (expected volt, meter or hertz)")),
        }
    }
}

/// Uniformly sampled real time series.
#[derive(Debug, Clone, PartialEq)]
pub struct NoiseTrace {
    sample_rate: f64,
    samples: Vec<f64>,
    unit: Unit,
}

impl NoiseTrace {
    pub fn new(sample_rate: f64, samples: Vec<f64>, unit: Unit) -> Result<Self, NoiseError> {
        positive("sample_rate", sample_rate)?;
        if samples.len() < 2 {
            return Err(NoiseError::Empty);
        }
        if let Some(i) = samples.iter().position(|x| !x.is_finite()) {
            return Err(NoiseError::InvalidParameter {
                name: "sample",
                value: samples[i],
                reason: "samples must be finite",
            });
        }
        Ok(Self {
            sample_rate,
            samples,
            unit,
        })
    }

    pub fn sample_rate(&self) -> f64 {
        self.sample_rate
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn into_samples(self) -> Vec<f64> {
        self.samples
    }

    pub fn unit(&self) -> Unit {
        self.unit
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// `len / sample_rate`.
    pub fn duration(&self) -> f64 {
        self.samples.len() as f64 / self.sample_rate
    }

    pub fn nyquist(&self) -> f64 {
        self.sample_rate / 2.0
    }

    pub fn mean(&self) -> f64 {
        self.samples.iter().sum::<f64>() / self.samples.len() as f64
    }

    /// Population variance.
    pub fn variance(&self) -> f64 {
        let m = self.mean();
        self.samples.iter().map(|x| (x - m) * (x - m)).sum::<f64>() / self.samples.len() as f64
    }

    pub fn rms(&self) -> f64 {
        self.variance().sqrt()
    }

    /// Same samples multiplied by `factor`, relabelled as `unit`.
    pub(crate) fn map_scaled(&self, factor: f64, unit: Unit) -> Self {
        Self {
            sample_rate: self.sample_rate,
            samples: self.samples.iter().map(|x| x * factor).collect(),
            unit,
        }
    }

    pub(crate) fn with_samples(&self, samples: Vec<f64>) -> Self {
        Self {
            sample_rate: self.sample_rate,
            samples,
            unit: self.unit,
        }
    }
}

/// Which CSV columns carry the timestamps and the values.
#[derive(Debug, Clone, PartialEq)]
pub struct ColumnSpec {
    pub time: String,
    pub value: String,
    pub unit: Unit,
}

impl Default for ColumnSpec {
    fn default() -> Self {
        Self {
            time: "time_s".into(),
            value: "value".into(),
            unit: Unit::Volt,
        }
    }
}

/// Timestamps may deviate from the nominal interval by at most this fraction.
const MAX_JITTER: f64 = 1e-3;

pub fn ingest_trace(path: impl AsRef<Path>, columns: &ColumnSpec) -> Result<NoiseTrace, NoiseError> {
    read_trace(File::open(path)?, columns)
}

/// Reads a headed, comma-separated `time,value` series.
pub fn read_trace<R: Read>(reader: R, columns: &ColumnSpec) -> Result<NoiseTrace, NoiseError> {
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
    let headers = rdr.headers()?.clone();
    let find = |name: &str| {
        headers
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| NoiseError::MissingColumn(name.to_string()))
    };
    let ti = find(&columns.time)?;
    let vi = find(&columns.value)?;

    let mut times = Vec::new();
    let mut values = Vec::new();
    for record in rdr.records() {
        let record = record?;
        let line = record.position().map_or(0, |p| p.line());
        let field = |i: usize, name: &str| -> Result<f64, NoiseError> {
            let raw = record.get(i).ok_or_else(|| NoiseError::Parse {
                line,
                message: format!("missing field `{name}`"),
            })?;
            raw.parse::<f64>().map_err(|e| NoiseError::Parse {
                line,
                message: format!("`{name}` = `{raw}`: {e}"),
            })
        };
        times.push(field(ti, &columns.time)?);
        values.push(field(vi, &columns.value)?);
    }
    if times.len() < 2 {
        return Err(NoiseError::Empty);
    }

    let n = times.len();
    let dt = (times[n - 1] - times[0]) / (n - 1) as f64;
    if !(dt.is_finite() && dt > 0.0) {
        return Err(NoiseError::InvalidParameter {
            name: "sample interval",
            value: dt,
            reason: "timestamps must increase",
        });
    }
    for (row, w) in times.windows(2).enumerate() {
        let deviation = ((w[1] - w[0]) - dt).abs() / dt;
        if deviation > MAX_JITTER {
            return Err(NoiseError::NonUniformSampling {
                row: row + 1,
                deviation: deviation * 100.0,
            });
        }
    }
    NoiseTrace::new(1.0 / dt, values, columns.unit)
}

/// Writes `time_s,value` with timestamps `i / sample_rate`.
pub fn write_trace<W: Write>(trace: &NoiseTrace, writer: W) -> Result<(), NoiseError> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(["time_s", "value"])?;
    for (i, x) in trace.samples.iter().enumerate() {
        let t = i as f64 / trace.sample_rate;
        w.write_record([format!("{t:e}"), format!("{x:e}")])?;
    }
    w.flush()?;
    Ok(())
}
