use super::ExchangeError;

/// A CSV table with a mandatory header row. Multi-valued cells use `|` as the
/// separator.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

pub const MULTI_VALUE_SEPARATOR: char = '|';

impl Table {
    pub fn column(&self, name: &str) -> Option<usize> {
        self.header.iter().position(|h| h == name)
    }

    /// Individual values of a cell, splitting multi-valued cells.
    pub fn values(cell: &str) -> impl Iterator<Item = &str> {
        cell.split(MULTI_VALUE_SEPARATOR).filter(|v| !v.is_empty())
    }
}

pub fn parse_csv(text: &str) -> Result<Table, ExchangeError> {
    let mut reader = csv::ReaderBuilder::new().has_headers(true).from_reader(text.as_bytes());
    let header: Vec<String> =
        reader.headers().map_err(|e| ExchangeError::Csv(e.to_string()))?.iter().map(str::to_string).collect();
    if header.is_empty() || header.iter().all(String::is_empty) {
        return Err(ExchangeError::Csv("missing header row".into()));
    }
    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| ExchangeError::Csv(e.to_string()))?;
        rows.push(record.iter().map(str::to_string).collect());
    }
    Ok(Table { header, rows })
}

pub fn serialize_csv(table: &Table) -> String {
    let mut writer = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    writer.write_record(&table.header).expect("in-memory CSV write");
    for row in &table.rows {
        writer.write_record(row).expect("in-memory CSV write");
    }
    String::from_utf8(writer.into_inner().expect("in-memory CSV flush")).expect("CSV output is UTF-8")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_with_quoting() {
        let t = Table {
            header: vec!["id".into(), "type".into(), "label".into()],
            rows: vec![vec!["http://x/a".into(), "Film".into(), "Hello, \"World\"|Drama".into()]],
        };
        let text = serialize_csv(&t);
        assert_eq!(parse_csv(&text).unwrap(), t);
        assert_eq!(Table::values("Drama|War").collect::<Vec<_>>(), vec!["Drama", "War"]);
    }

    #[test]
    fn header_only_and_errors() {
        let t = parse_csv("id,type\n").unwrap();
        assert!(t.rows.is_empty());
        assert_eq!(t.column("type"), Some(1));
        assert!(parse_csv("").is_err());
        assert!(parse_csv("a,b\n1,2,3\n").is_err());
    }
}
