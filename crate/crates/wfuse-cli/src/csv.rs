//! Minimal CSV tables: comma-separated, UTF-8, newline-terminated, constant
//! column count, RFC-4180 quoting for fields containing commas or quotes.
//! `#`-prefixed lines carry footer metadata and are skipped by the parser.
//!
//! Files are written atomically (temp file in the same directory, then
//! rename) so readers never observe a half-written table.

use std::fs;
use std::io::Write;
use std::path::Path;

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq)]
pub struct CsvTable {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
    /// Emitted after the data as `# ...` lines.
    pub comments: Vec<String>,
}

impl CsvTable {
    pub fn new(header: &[&str]) -> CsvTable {
        CsvTable {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
            comments: Vec::new(),
        }
    }

    pub fn push_row(&mut self, row: Vec<String>) {
        assert_eq!(
            row.len(),
            self.header.len(),
            "row width must match the header"
        );
        self.rows.push(row);
    }

    /// Index of a header column by name.
    pub fn column(&self, name: &str) -> Option<usize> {
        self.header.iter().position(|h| h == name)
    }

    pub fn to_csv_string(&self) -> String {
        let mut out = String::new();
        out.push_str(&encode_line(&self.header));
        out.push('\n');
        for row in &self.rows {
            out.push_str(&encode_line(row));
            out.push('\n');
        }
        for comment in &self.comments {
            out.push_str("# ");
            out.push_str(comment);
            out.push('\n');
        }
        out
    }

    /// Parses a table, enforcing a constant column count. Errors name the
    /// offending 1-based line.
    pub fn parse(text: &str) -> Result<CsvTable, CliError> {
        let mut lines = text.lines().enumerate();
        let (_, header_line) = lines
            .next()
            .ok_or_else(|| CliError::Data("empty CSV: missing header".into()))?;
        let header = decode_line(header_line, 1)?;
        let mut table = CsvTable {
            header,
            rows: Vec::new(),
            comments: Vec::new(),
        };
        for (idx, line) in lines {
            if line.is_empty() {
                continue;
            }
            if let Some(comment) = line.strip_prefix('#') {
                table.comments.push(comment.trim().to_string());
                continue;
            }
            let row = decode_line(line, idx + 1)?;
            if row.len() != table.header.len() {
                return Err(CliError::Data(format!(
                    "line {}: expected {} fields, found {}",
                    idx + 1,
                    table.header.len(),
                    row.len()
                )));
            }
            table.rows.push(row);
        }
        Ok(table)
    }

    /// Writes via a temp file in the target directory followed by a rename.
    pub fn write_atomic(&self, path: &Path) -> Result<(), CliError> {
        write_atomic(path, self.to_csv_string().as_bytes())
    }
}

pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    let tmp = path.with_extension(format!(
        "{}.tmp",
        path.extension().and_then(|e| e.to_str()).unwrap_or("out")
    ));
    let io_err = |e: std::io::Error| CliError::Data(format!("{}: {e}", path.display()));
    {
        let mut file = fs::File::create(&tmp).map_err(io_err)?;
        file.write_all(bytes).map_err(io_err)?;
        file.sync_all().map_err(io_err)?;
    }
    fs::rename(&tmp, path).map_err(io_err)
}

fn encode_field(field: &str) -> String {
    if field.contains(',') || field.contains('"') || field.contains('\n') {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_string()
    }
}

fn encode_line(fields: &[String]) -> String {
    fields
        .iter()
        .map(|f| encode_field(f))
        .collect::<Vec<_>>()
        .join(",")
}

fn decode_line(line: &str, line_no: usize) -> Result<Vec<String>, CliError> {
    let mut fields = Vec::new();
    let mut field = String::new();
    let mut chars = line.chars().peekable();
    let mut quoted = false;

    while let Some(c) = chars.next() {
        if quoted {
            match c {
                '"' if chars.peek() == Some(&'"') => {
                    chars.next();
                    field.push('"');
                }
                '"' => quoted = false,
                c => field.push(c),
            }
        } else {
            match c {
                '"' if field.is_empty() => quoted = true,
                '"' => {
                    return Err(CliError::Data(format!(
                        "line {line_no}: stray quote inside unquoted field"
                    )))
                }
                ',' => fields.push(std::mem::take(&mut field)),
                c => field.push(c),
            }
        }
    }
    if quoted {
        return Err(CliError::Data(format!(
            "line {line_no}: unterminated quoted field"
        )));
    }
    fields.push(field);
    Ok(fields)
}
