//! Rendering of command results as JSON, CSV or plain text.

use serde_json::{json, Map, Value};

/// `x` with 15 significant digits in plain decimal notation where practical.
///
/// Trailing zeros of the fraction are dropped, so the text is a function of
/// the value alone and stays byte-identical across runs.
pub fn fmt_float(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{x:.14e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent in scientific format");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-6..21).contains(&exp) {
        return sci;
    }
    let negative = mantissa.starts_with('-');
    let digits: String = mantissa.chars().filter(|c| c.is_ascii_digit()).collect();
    let point = exp + 1;
    let mut out = String::new();
    if negative {
        out.push('-');
    }
    if point <= 0 {
        out.push_str("0.");
        out.extend(std::iter::repeat_n('0', (-point) as usize));
        out.push_str(&digits);
    } else if point as usize >= digits.len() {
        out.push_str(&digits);
        out.extend(std::iter::repeat_n('0', point as usize - digits.len()));
    } else {
        out.push_str(&digits[..point as usize]);
        out.push('.');
        out.push_str(&digits[point as usize..]);
    }
    if out.contains('.') {
        while out.ends_with('0') {
            out.pop();
        }
        if out.ends_with('.') {
            out.pop();
        }
    }
    out
}

pub fn num(x: f64) -> Value {
    Value::String(fmt_float(x))
}

/// Rows of a flat table shared by the CSV and text renderings.
#[derive(Debug, Default)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Self { header: header.iter().map(|s| s.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.header.join(",");
        out.push('\n');
        for r in &self.rows {
            out.push_str(&r.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_text(&self) -> String {
        let widths: Vec<usize> = (0..self.header.len())
            .map(|c| {
                self.rows.iter().map(|r| r[c].len()).chain([self.header[c].len()]).max().unwrap_or(0)
            })
            .collect();
        let line = |cells: &[String]| {
            cells
                .iter()
                .zip(&widths)
                .map(|(s, w)| format!("{s:>w$}"))
                .collect::<Vec<_>>()
                .join("  ")
        };
        let mut out = line(&self.header);
        out.push('\n');
        for r in &self.rows {
            out.push_str(&line(r));
            out.push('\n');
        }
        out
    }
}

/// Everything a command produces, before the output format is chosen.
pub struct Report {
    pub command: &'static str,
    pub params: Value,
    pub result: Value,
    pub table: Table,
    /// Lines printed above the table in text mode.
    pub summary: Vec<String>,
    /// Whether text mode prints the table after the summary.
    pub text_table: bool,
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut env = Map::new();
        env.insert("schema_version".into(), json!("1"));
        env.insert("command".into(), json!(self.command));
        env.insert("params".into(), self.params.clone());
        env.insert("result".into(), self.result.clone());
        let mut s = serde_json::to_string_pretty(&Value::Object(env)).expect("JSON values serialize");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for l in &self.summary {
            out.push_str(l);
            out.push('\n');
        }
        if self.text_table && !self.table.rows.is_empty() {
            if !self.summary.is_empty() {
                out.push('\n');
            }
            out.push_str(&self.table.to_text());
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_formatting() {
        assert_eq!(fmt_float(0.0), "0");
        assert_eq!(fmt_float(1.0), "1");
        assert_eq!(fmt_float(2.5), "2.5");
        assert_eq!(fmt_float(-2.5), "-2.5");
        assert_eq!(fmt_float(39.47841760435743), "39.4784176043574");
        assert_eq!(fmt_float(1e-3), "0.001");
        assert_eq!(fmt_float(123456.0), "123456");
        assert_eq!(fmt_float(1.5e-9), "1.50000000000000e-9");
    }

    #[test]
    fn table_renderings() {
        let mut t = Table::new(&["a", "bb"]);
        t.push(vec!["1".into(), "22".into()]);
        assert_eq!(t.to_csv(), "a,bb\n1,22\n");
        assert_eq!(t.to_text(), "a  bb\n1  22\n");
    }
}
