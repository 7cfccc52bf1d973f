//! Record rendering: JSON lines, CSV and aligned tables.

use std::io::Write;

use clap::ValueEnum;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Table,
}

const TABLE_CELL_WIDTH: usize = 60;

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

fn columns(records: &[Value]) -> Vec<String> {
    let mut cols: Vec<String> = Vec::new();
    for r in records {
        if let Value::Object(map) = r {
            for k in map.keys() {
                if !cols.contains(k) {
                    cols.push(k.clone());
                }
            }
        }
    }
    cols
}

pub fn render(records: &[Value], format: Format, out: &mut impl Write) -> anyhow::Result<()> {
    match format {
        Format::Json => {
            for r in records {
                writeln!(out, "{}", serde_json::to_string(r)?)?;
            }
        }
        Format::Csv => {
            let cols = columns(records);
            let mut w = csv::Writer::from_writer(out);
            w.write_record(&cols)?;
            for r in records {
                w.write_record(cols.iter().map(|c| cell(&r[c.as_str()])))?;
            }
            w.flush()?;
        }
        Format::Table => {
            let cols = columns(records);
            let rows: Vec<Vec<String>> = records
                .iter()
                .map(|r| {
                    cols.iter()
                        .map(|c| {
                            let s = cell(&r[c.as_str()]);
                            if s.chars().count() > TABLE_CELL_WIDTH {
                                let cut: String = s.chars().take(TABLE_CELL_WIDTH - 3).collect();
                                format!("{cut}...")
                            } else {
                                s
                            }
                        })
                        .collect()
                })
                .collect();
            let widths: Vec<usize> = cols
                .iter()
                .enumerate()
                .map(|(i, c)| {
                    rows.iter()
                        .map(|r| r[i].chars().count())
                        .chain([c.len()])
                        .max()
                        .unwrap_or(0)
                })
                .collect();
            let line = |cells: &[String]| {
                cells
                    .iter()
                    .zip(&widths)
                    .map(|(c, w)| format!("{c:<w$}"))
                    .collect::<Vec<_>>()
                    .join("  ")
                    .trim_end()
                    .to_string()
            };
            writeln!(out, "{}", line(&cols))?;
            writeln!(
                out,
                "{}",
                line(&widths.iter().map(|w| "-".repeat(*w)).collect::<Vec<_>>())
            )?;
            for r in &rows {
                writeln!(out, "{}", line(r))?;
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    fn show(records: &[Value], f: Format) -> String {
        let mut buf = Vec::new();
        render(records, f, &mut buf).unwrap();
        String::from_utf8(buf).unwrap()
    }

    #[test]
    fn formats() {
        let rows = vec![json!({"n": 4, "set": [1, 4]}), json!({"n": 12, "set": []})];
        assert_eq!(
            show(&rows, Format::Json),
            "{\"n\":4,\"set\":[1,4]}\n{\"n\":12,\"set\":[]}\n"
        );
        assert_eq!(show(&rows, Format::Csv), "n,set\n4,\"[1,4]\"\n12,[]\n");
        assert_eq!(
            show(&rows, Format::Table),
            "n   set\n--  -----\n4   [1,4]\n12  []\n"
        );
    }
}
