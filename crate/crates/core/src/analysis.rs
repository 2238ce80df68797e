//! Figure presets, transition/peak analysis and plain-text emitters used by
//! the command-line tool.

use std::fmt::{self, Write as _};

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use serde::Serialize;

use crate::exactlin::BigFraction;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FigureId {
    Fig1,
    Fig2,
    Fig3,
    Fig4,
}

impl FigureId {
    pub const ALL: [FigureId; 4] = [
        FigureId::Fig1,
        FigureId::Fig2,
        FigureId::Fig3,
        FigureId::Fig4,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FigureId::Fig1 => "fig1",
            FigureId::Fig2 => "fig2",
            FigureId::Fig3 => "fig3",
            FigureId::Fig4 => "fig4",
        }
    }
}

impl fmt::Display for FigureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for FigureId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FigureId::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| Error::domain(format!("unknown preset {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FigurePreset {
    pub id: FigureId,
    pub samples: [i64; 16],
    /// Input list exactly as printed in the caption.
    pub printed_caption: &'static str,
    /// How the printed list was turned into 16 samples, when it needed help.
    pub erratum: Option<&'static str>,
}

impl FigurePreset {
    pub fn provenance_note(&self) -> String {
        match self.erratum {
            Some(e) => format!("printed input: \"{}\"; {e}", self.printed_caption),
            None => format!("printed input: \"{}\"", self.printed_caption),
        }
    }
}

const FIG1_ERRATUM: &str = "the printed list has 15 values; the token \"13\" at position 9 \
     is read as \"1 3\" (missing space), giving two identical ramps 1,3,...,15";

pub fn preset(id: FigureId) -> FigurePreset {
    let (samples, printed_caption, erratum) = match id {
        FigureId::Fig1 => (
            [1, 3, 5, 7, 9, 11, 13, 15, 1, 3, 5, 7, 9, 11, 13, 15],
            "1 3 5 7 9 11 13 15 13 5 7 9 11 13 15",
            Some(FIG1_ERRATUM),
        ),
        FigureId::Fig2 => (
            [1, 1, 1, 1, 1, 1, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0],
            "1 1 1 1 1 1 1 1 0 0 0 0 0 0 0 0",
            None,
        ),
        FigureId::Fig3 => (
            [1, 1, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 1, 1],
            "1 1 1 1 0 0 0 0 0 0 0 0 1 1 1 1",
            None,
        ),
        FigureId::Fig4 => (
            [0, 0, 0, 0, 1, 1, 1, 1, 1, 1, 1, 1, 0, 0, 0, 0],
            "0 0 0 0 1 1 1 1 1 1 1 1 0 0 0 0",
            None,
        ),
    };
    FigurePreset {
        id,
        samples,
        printed_caption,
        erratum,
    }
}

/// Adjacent (non-cyclic) pairs with differing values.
pub fn count_transitions<T: PartialEq>(x: &[T]) -> usize {
    x.windows(2).filter(|w| w[0] != w[1]).count()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Peaks {
    pub indices: Vec<usize>,
    /// `|y|` at each index.
    #[serde(serialize_with = "crate::serde_display::many")]
    pub values: Vec<BigInt>,
}

/// Strict local maxima of `|y|`. A run of equal values counts once, at its
/// leftmost index, when every neighbour of the run is strictly smaller; a
/// run with no neighbours at all is not a peak.
pub fn find_peaks(y: &[BigInt]) -> Peaks {
    let mag: Vec<BigInt> = y.iter().map(Signed::abs).collect();
    let mut peaks = Peaks {
        indices: Vec::new(),
        values: Vec::new(),
    };
    let mut start = 0;
    while start < mag.len() {
        let mut end = start;
        while end + 1 < mag.len() && mag[end + 1] == mag[start] {
            end += 1;
        }
        let left = start.checked_sub(1).map(|i| &mag[i]);
        let right = mag.get(end + 1);
        let has_neighbour = left.is_some() || right.is_some();
        let flanked = left.is_none_or(|l| *l < mag[start]) && right.is_none_or(|r| *r < mag[start]);
        if has_neighbour && flanked {
            peaks.indices.push(start);
            peaks.values.push(mag[start].clone());
        }
        start = end + 1;
    }
    peaks
}

/// Transition count of the input next to the peaks of its transform.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PeakReport {
    pub transition_count: usize,
    pub peak_indices: Vec<usize>,
    #[serde(serialize_with = "crate::serde_display::many")]
    pub peak_values: Vec<BigInt>,
    pub note: String,
}

pub fn peak_report(input: &[i64], transformed: &[BigInt]) -> PeakReport {
    let transition_count = count_transitions(input);
    let Peaks { indices, values } = find_peaks(transformed);
    let note = format!(
        "{transition_count} amplitude transition(s) in the input, {} peak(s) in |transform|",
        indices.len()
    );
    PeakReport {
        transition_count,
        peak_indices: indices,
        peak_values: values,
        note,
    }
}

/// A named column for CSV/SVG output: exact text plus a float for plotting.
#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    pub label: String,
    pub text: Vec<String>,
    pub plot: Vec<f64>,
}

impl Series {
    pub fn from_ints(label: &str, values: &[i64]) -> Self {
        Self {
            label: label.to_owned(),
            text: values.iter().map(ToString::to_string).collect(),
            plot: values.iter().map(|&v| v as f64).collect(),
        }
    }

    pub fn from_bigints(label: &str, values: &[BigInt]) -> Self {
        Self {
            label: label.to_owned(),
            text: values.iter().map(ToString::to_string).collect(),
            plot: values
                .iter()
                .map(|v| v.to_f64().unwrap_or(f64::NAN))
                .collect(),
        }
    }

    pub fn from_fractions(label: &str, values: &[BigFraction]) -> Self {
        Self {
            label: label.to_owned(),
            text: values.iter().map(ToString::to_string).collect(),
            plot: values
                .iter()
                .map(|v| v.to_f64().unwrap_or(f64::NAN))
                .collect(),
        }
    }

    /// Floats written with Rust's shortest round-trip formatting.
    pub fn from_floats(label: &str, values: &[f64]) -> Self {
        Self {
            label: label.to_owned(),
            text: values.iter().map(|v| format!("{v:?}")).collect(),
            plot: values.to_vec(),
        }
    }

    pub fn len(&self) -> usize {
        self.text.len()
    }

    pub fn is_empty(&self) -> bool {
        self.text.is_empty()
    }
}

fn check_series(series: &[Series]) -> Result<usize> {
    let first = series
        .first()
        .ok_or_else(|| Error::domain("usage: at least one series is required"))?;
    if let Some(bad) = series.iter().find(|s| s.len() != first.len()) {
        return Err(Error::domain(format!(
            "series {:?} has {} values, expected {}",
            bad.label,
            bad.len(),
            first.len()
        )));
    }
    Ok(first.len())
}

/// `index,value` for one series, `index,value_<label>,...` for several.
pub fn emit_csv(series: &[Series]) -> Result<String> {
    emit_csv_from(0, series)
}

/// Like [`emit_csv`] with the index column starting at `origin`.
pub fn emit_csv_from(origin: i64, series: &[Series]) -> Result<String> {
    let len = check_series(series)?;
    let mut out = String::from("index");
    if series.len() == 1 {
        out.push_str(",value");
    } else {
        for s in series {
            write!(out, ",value_{}", s.label).unwrap();
        }
    }
    out.push('\n');
    for i in 0..len {
        write!(out, "{}", origin + i as i64).unwrap();
        for s in series {
            write!(out, ",{}", s.text[i]).unwrap();
        }
        out.push('\n');
    }
    Ok(out)
}

const PALETTE: [&str; 4] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd"];

/// Minimal standalone SVG line chart, one polyline per series.
pub fn emit_svg(title: &str, series: &[Series]) -> Result<String> {
    let len = check_series(series)?;
    let (w, h, pad) = (640.0, 320.0, 40.0);
    let finite = series
        .iter()
        .flat_map(|s| &s.plot)
        .copied()
        .filter(|v| v.is_finite());
    let (mut lo, mut hi) = finite.fold((0.0f64, 0.0f64), |(lo, hi), v| (lo.min(v), hi.max(v)));
    if (hi - lo).abs() < f64::EPSILON {
        lo -= 1.0;
        hi += 1.0;
    }
    let x_at = |i: usize| pad + (w - 2.0 * pad) * i as f64 / (len.max(2) - 1) as f64;
    let y_at = |v: f64| h - pad - (h - 2.0 * pad) * (v - lo) / (hi - lo);

    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#
    )
    .unwrap();
    writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#).unwrap();
    writeln!(
        out,
        r#"<text x="{pad}" y="20" font-family="sans-serif" font-size="14">{}</text>"#,
        xml_escape(title)
    )
    .unwrap();
    writeln!(
        out,
        r##"<line x1="{pad}" y1="{y0:.2}" x2="{x1}" y2="{y0:.2}" stroke="#888"/>"##,
        y0 = y_at(0.0),
        x1 = w - pad
    )
    .unwrap();
    for (k, s) in series.iter().enumerate() {
        let colour = PALETTE[k % PALETTE.len()];
        let points: Vec<String> = s
            .plot
            .iter()
            .enumerate()
            .filter(|(_, v)| v.is_finite())
            .map(|(i, &v)| format!("{:.2},{:.2}", x_at(i), y_at(v)))
            .collect();
        writeln!(
            out,
            r#"<polyline fill="none" stroke="{colour}" stroke-width="1.5" points="{}"/>"#,
            points.join(" ")
        )
        .unwrap();
        writeln!(
            out,
            r#"<text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="11" fill="{colour}">{}</text>"#,
            w - pad - 110.0,
            20.0 + 13.0 * k as f64,
            xml_escape(&s.label)
        )
        .unwrap();
    }
    out.push_str("</svg>\n");
    Ok(out)
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}
