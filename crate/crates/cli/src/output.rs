use std::fmt::Write as _;

use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Table,
    Csv,
    Json,
}

/// Rows of JSON scalars under named columns.
pub struct Table {
    pub headers: Vec<&'static str>,
    pub rows: Vec<Vec<Value>>,
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".to_string(),
        other => other.to_string(),
    }
}

impl Table {
    pub fn new(headers: Vec<&'static str>) -> Self {
        Table { headers, rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Value>) {
        debug_assert_eq!(row.len(), self.headers.len());
        self.rows.push(row);
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let objs: Vec<Value> = self
                    .rows
                    .iter()
                    .map(|r| {
                        Value::Object(self.headers.iter().map(|h| h.to_string()).zip(r.iter().cloned()).collect())
                    })
                    .collect();
                let mut s = serde_json::to_string_pretty(&objs).expect("serializable");
                s.push('\n');
                s
            }
            Format::Csv => {
                let mut s = self.headers.join(",");
                s.push('\n');
                for r in &self.rows {
                    s.push_str(&r.iter().map(cell).collect::<Vec<_>>().join(","));
                    s.push('\n');
                }
                s
            }
            Format::Table => {
                let cells: Vec<Vec<String>> = self.rows.iter().map(|r| r.iter().map(cell).collect()).collect();
                let widths: Vec<usize> = (0..self.headers.len())
                    .map(|i| cells.iter().map(|r| r[i].len()).chain([self.headers[i].len()]).max().unwrap_or(0))
                    .collect();
                let mut s = String::new();
                let line = |s: &mut String, items: &[String]| {
                    let parts: Vec<String> = items.iter().zip(&widths).map(|(c, w)| format!("{c:>w$}")).collect();
                    writeln!(s, "{}", parts.join("  ").trim_end()).unwrap();
                };
                line(&mut s, &self.headers.iter().map(|h| h.to_string()).collect::<Vec<_>>());
                for r in &cells {
                    line(&mut s, r);
                }
                s
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn renders_all_formats() {
        let mut t = Table::new(vec!["n", "name"]);
        t.push(vec![json!(1), json!("ab")]);
        t.push(vec![json!(10), Value::Null]);
        assert_eq!(t.render(Format::Csv), "n,name\n1,ab\n10,-\n");
        assert_eq!(t.render(Format::Table), " n  name\n 1    ab\n10     -\n");
        assert!(t.render(Format::Json).contains("\"name\": \"ab\""));
    }
}
