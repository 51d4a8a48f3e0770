use serde_json::Value;

use crate::args::Format;
use crate::error::CliError;

/// One command result in all three renderings.
#[derive(Debug, Clone)]
pub struct Rendered {
    pub json: Value,
    pub csv_header: Vec<&'static str>,
    pub csv_rows: Vec<Vec<String>>,
    pub pretty: Vec<String>,
}

impl Rendered {
    pub fn new(json: Value) -> Self {
        Rendered {
            json,
            csv_header: Vec::new(),
            csv_rows: Vec::new(),
            pretty: Vec::new(),
        }
    }

    pub fn csv(mut self, header: Vec<&'static str>, rows: Vec<Vec<String>>) -> Self {
        self.csv_header = header;
        self.csv_rows = rows;
        self
    }

    pub fn pretty(mut self, lines: Vec<String>) -> Self {
        self.pretty = lines;
        self
    }

    /// JSON carries the timestamp as a top-level `timestamp` field and
    /// pretty output as a trailing line; CSV never does.
    pub fn render(&self, format: Format, timestamp: Option<&str>) -> Result<String, CliError> {
        match format {
            Format::Json => {
                let mut json = self.json.clone();
                if let (Some(ts), Value::Object(map)) = (timestamp, &mut json) {
                    map.insert("timestamp".into(), Value::String(ts.into()));
                }
                Ok(serde_json::to_string_pretty(&json)? + "\n")
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&self.csv_header).map_err(csv_error)?;
                for row in &self.csv_rows {
                    w.write_record(row).map_err(csv_error)?;
                }
                let bytes = w.into_inner().map_err(|e| CliError::Io(e.into_error()))?;
                Ok(String::from_utf8(bytes).expect("CSV of UTF-8 fields is UTF-8"))
            }
            Format::Pretty => {
                let mut text = self.pretty.join("\n");
                text.push('\n');
                if let Some(ts) = timestamp {
                    text.push_str(&format!("generated {ts}\n"));
                }
                Ok(text)
            }
        }
    }
}

fn csv_error(e: csv::Error) -> CliError {
    CliError::Io(std::io::Error::other(e))
}

/// `a;b;c`, for list-valued CSV cells.
pub fn joined<T: ToString>(items: &[T]) -> String {
    items.iter().map(T::to_string).collect::<Vec<_>>().join(";")
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    fn sample() -> Rendered {
        Rendered::new(json!({"n": 2, "spec": "prod(cyclic:2,cyclic:3)"}))
            .csv(vec!["n", "spec"], vec![vec!["2".into(), "prod(cyclic:2,cyclic:3)".into()]])
            .pretty(vec!["n = 2".into()])
    }

    #[test]
    fn csv_quotes_commas() {
        let text = sample().render(Format::Csv, Some("t")).unwrap();
        assert_eq!(text, "n,spec\n2,\"prod(cyclic:2,cyclic:3)\"\n");
    }

    #[test]
    fn timestamps() {
        let json = sample().render(Format::Json, Some("2026-01-01T00:00:00Z")).unwrap();
        assert!(json.contains("\"timestamp\": \"2026-01-01T00:00:00Z\""));
        assert!(!sample().render(Format::Json, None).unwrap().contains("timestamp"));
        assert_eq!(sample().render(Format::Pretty, None).unwrap(), "n = 2\n");
        assert!(sample().render(Format::Pretty, Some("x")).unwrap().ends_with("generated x\n"));
    }

    #[test]
    fn joined_cells() {
        assert_eq!(joined(&[1, 1, 2]), "1;1;2");
        assert_eq!(joined::<u64>(&[]), "");
    }
}
