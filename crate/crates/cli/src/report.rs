//! Text and TSV rendering. Every command writes each fact once through
//! [`Report::row`], which feeds both formats, so the two never drift apart.

use metrized::rational::render;
use metrized::Rational;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Tsv,
}

#[derive(Debug)]
pub struct Report {
    format: Format,
    body: String,
}

impl Report {
    pub fn new(format: Format, tsv_header: &[&str]) -> Self {
        let mut report = Report {
            format,
            body: String::new(),
        };
        if format == Format::Tsv {
            report.push(&tsv_header.join("\t"));
        }
        report
    }

    fn push(&mut self, line: &str) {
        self.body.push_str(line);
        self.body.push('\n');
    }

    /// Text-only line (headings, notes).
    pub fn text(&mut self, line: impl AsRef<str>) {
        if self.format == Format::Text {
            self.push(line.as_ref());
        }
    }

    /// One fact: `line` in text mode, `fields` joined by tabs in TSV mode.
    pub fn row(&mut self, line: impl AsRef<str>, fields: &[&str]) {
        match self.format {
            Format::Text => self.push(line.as_ref()),
            Format::Tsv => self.push(&fields.join("\t")),
        }
    }

    pub fn into_string(self) -> String {
        self.body
    }
}

pub fn exact(x: &Rational) -> String {
    render(x)
}

/// Twelve significant digits, positional unless the magnitude is extreme.
pub fn real(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    let exponent = x.abs().log10().floor() as i32;
    if (-5..12).contains(&exponent) {
        let decimals = (11 - exponent).max(0) as usize;
        format!("{x:.decimals$}")
    } else {
        format!("{x:.11e}")
    }
}
