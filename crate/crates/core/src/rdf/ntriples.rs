//! N-Triples reading and canonical writing.
//!
//! Only IRIs and literals are accepted; blank nodes are rejected. Escapes
//! `\" \\ \n \t \r \uXXXX \UXXXXXXXX` are understood; raw control characters
//! inside literals are an error.

use std::path::Path;

use super::graph::Graph;
use super::term::{Iri, Literal, Term, Triple};
use super::{vocab, RdfError};

pub fn parse_ntriples(text: &str) -> Result<Graph, RdfError> {
    let mut g = Graph::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim_matches(|c| c == ' ' || c == '\t' || c == '\r');
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let triple =
            parse_line(line).map_err(|message| RdfError::Parse { line: idx + 1, content: raw.to_string(), message })?;
        g.insert(triple);
    }
    Ok(g)
}

pub fn read_ntriples_file(path: &Path) -> Result<Graph, RdfError> {
    let text = std::fs::read_to_string(path).map_err(|e| RdfError::Io { path: path.to_path_buf(), source: e })?;
    parse_ntriples(&text)
}

/// Canonical form: one triple per line, lines sorted by code point.
pub fn serialize_ntriples(g: &Graph) -> String {
    let mut lines: Vec<String> = g.iter().map(triple_to_line).collect();
    lines.sort_unstable();
    let mut out = String::with_capacity(lines.iter().map(|l| l.len() + 1).sum());
    for line in lines {
        out.push_str(&line);
        out.push('\n');
    }
    out
}

pub fn write_ntriples_file(path: &Path, g: &Graph) -> Result<(), RdfError> {
    std::fs::write(path, serialize_ntriples(g)).map_err(|e| RdfError::Io { path: path.to_path_buf(), source: e })
}

pub fn triple_to_line(t: &Triple) -> String {
    format!("<{}> <{}> {} .", t.subject, t.predicate, term_to_string(&t.object))
}

pub fn term_to_string(term: &Term) -> String {
    match term {
        Term::Iri(iri) => format!("<{iri}>"),
        Term::Literal(lit) => literal_to_string(lit),
    }
}

pub fn literal_to_string(lit: &Literal) -> String {
    let mut out = String::with_capacity(lit.lexical().len() + 2);
    out.push('"');
    for c in lit.lexical().chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if c.is_control() => out.push_str(&format!("\\u{:04X}", c as u32)),
            c => out.push(c),
        }
    }
    out.push('"');
    if let Some(lang) = lit.lang() {
        out.push('@');
        out.push_str(lang);
    } else if lit.datatype().as_str() != vocab::XSD_STRING {
        out.push_str("^^<");
        out.push_str(lit.datatype().as_str());
        out.push('>');
    }
    out
}

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    fn skip_ws(&mut self) -> bool {
        let start = self.pos;
        while matches!(self.peek(), Some(' ' | '\t')) {
            self.pos += 1;
        }
        self.pos > start
    }

    fn expect(&mut self, c: char) -> Result<(), String> {
        match self.bump() {
            Some(got) if got == c => Ok(()),
            Some(got) => Err(format!("expected '{c}' at column {}, found '{got}'", self.pos)),
            None => Err(format!("expected '{c}', found end of line")),
        }
    }

    fn iri(&mut self) -> Result<Iri, String> {
        self.expect('<')?;
        let start = self.pos;
        let end = self.src[start..].find('>').ok_or("unterminated IRI")? + start;
        let raw = &self.src[start..end];
        self.pos = end + 1;
        Iri::new(raw).map_err(|e| e.to_string())
    }

    fn literal(&mut self) -> Result<Literal, String> {
        self.expect('"')?;
        let mut lexical = String::new();
        loop {
            match self.bump().ok_or("unterminated literal")? {
                '"' => break,
                '\\' => {
                    let c = match self.bump().ok_or("dangling escape")? {
                        '"' => '"',
                        '\\' => '\\',
                        'n' => '\n',
                        't' => '\t',
                        'r' => '\r',
                        'u' => self.hex_escape(4)?,
                        'U' => self.hex_escape(8)?,
                        other => return Err(format!("unsupported escape '\\{other}'")),
                    };
                    lexical.push(c);
                }
                c if c.is_control() => return Err(format!("raw control character U+{:04X} in literal", c as u32)),
                c => lexical.push(c),
            }
        }
        match self.peek() {
            Some('@') => {
                self.bump();
                let start = self.pos;
                while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == '-') {
                    self.bump();
                }
                Literal::with_lang(lexical, &self.src[start..self.pos]).map_err(|e| e.to_string())
            }
            Some('^') => {
                self.expect('^')?;
                self.expect('^')?;
                let dt = self.iri()?;
                Ok(Literal::typed(lexical, dt))
            }
            _ => Ok(Literal::string(lexical)),
        }
    }

    fn hex_escape(&mut self, len: usize) -> Result<char, String> {
        let end = self.pos + len;
        let hex = self.src.get(self.pos..end).ok_or("truncated unicode escape")?;
        let code = u32::from_str_radix(hex, 16).map_err(|_| format!("bad unicode escape '{hex}'"))?;
        self.pos = end;
        char::from_u32(code).ok_or_else(|| format!("invalid code point {code:#X}"))
    }
}

fn parse_line(line: &str) -> Result<Triple, String> {
    let mut cur = Cursor { src: line, pos: 0 };
    if line.starts_with("_:") {
        return Err("blank nodes are not supported".into());
    }
    let subject = cur.iri()?;
    if !cur.skip_ws() {
        return Err("missing whitespace after subject".into());
    }
    let predicate = cur.iri()?;
    if !cur.skip_ws() {
        return Err("missing whitespace after predicate".into());
    }
    let object = match cur.peek() {
        Some('<') => Term::Iri(cur.iri()?),
        Some('"') => Term::Literal(cur.literal()?),
        Some('_') => return Err("blank nodes are not supported".into()),
        Some(c) => return Err(format!("unexpected '{c}' in object position")),
        None => return Err("missing object".into()),
    };
    cur.skip_ws();
    cur.expect('.')?;
    cur.skip_ws();
    match cur.peek() {
        None | Some('#') => Ok(Triple { subject, predicate, object }),
        Some(c) => Err(format!("trailing content starting with '{c}'")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_input() {
        assert!(parse_ntriples("").unwrap().is_empty());
        assert_eq!(serialize_ntriples(&Graph::new()), "");
    }

    #[test]
    fn minimal_line_is_plain_string() {
        let g = parse_ntriples("<http://x/a> <http://x/p> \"v\" .").unwrap();
        assert_eq!(g.len(), 1);
        let t = g.iter().next().unwrap();
        let lit = t.object.as_literal().unwrap();
        assert_eq!(lit.lexical(), "v");
        assert_eq!(lit.datatype().as_str(), vocab::XSD_STRING);
    }

    #[test]
    fn duplicates_collapse() {
        let text = "\
<http://x/a> <http://x/p> <http://x/b> .
<http://x/a> <http://x/p> \"1\"^^<http://www.w3.org/2001/XMLSchema#integer> .
# a comment
<http://x/a> <http://x/p> <http://x/b> .

<http://x/c> <http://x/q> \"hi\"@en .
<http://x/c> <http://x/q> \"hi\" .
";
        // 5 triple lines, one duplicate
        assert_eq!(parse_ntriples(text).unwrap().len(), 4);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let text = "<http://x/a> <http://x/p> <http://x/b> .\n<http://x/a> <http://x/p> .\n";
        match parse_ntriples(text) {
            Err(RdfError::Parse { line, content, .. }) => {
                assert_eq!(line, 2);
                assert_eq!(content, "<http://x/a> <http://x/p> .");
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_ntriples("_:b0 <http://x/p> <http://x/b> .").is_err());
        assert!(parse_ntriples("<http://x/a> <http://x/p> <http://x/b>").is_err());
        assert!(parse_ntriples("<http://x/a> <http://x/p> \"a\u{1}b\" .").is_err());
        assert!(parse_ntriples("<http://x/a> <http://x/p> \"a\\qb\" .").is_err());
        assert!(parse_ntriples("<a> <http://x/p> <http://x/b> .").is_err());
    }

    #[test]
    fn escapes_round_trip() {
        let text = r#"<http://x/a> <http://x/p> "quote \" back \\ nl \n tab \t cr \r é \U0001F600" ."#;
        let g = parse_ntriples(text).unwrap();
        let lit = g.iter().next().unwrap().object.as_literal().unwrap().clone();
        assert_eq!(lit.lexical(), "quote \" back \\ nl \n tab \t cr \r é 😀");
        let out = serialize_ntriples(&g);
        assert_eq!(parse_ntriples(&out).unwrap(), g);
        assert_eq!(serialize_ntriples(&parse_ntriples(&out).unwrap()), out);
    }

    #[test]
    fn explicit_string_datatype_canonicalizes() {
        let g = parse_ntriples("<http://x/a> <http://x/p> \"v\"^^<http://www.w3.org/2001/XMLSchema#string> .").unwrap();
        assert_eq!(serialize_ntriples(&g), "<http://x/a> <http://x/p> \"v\" .\n");
    }

    #[test]
    fn canonical_output_is_sorted_and_order_independent() {
        let a = "<http://x/b> <http://x/p> \"2\" .\n<http://x/a> <http://x/p> \"1\" .\n";
        let b = "<http://x/a> <http://x/p> \"1\" .\n<http://x/b> <http://x/p> \"2\" .\n";
        let sa = serialize_ntriples(&parse_ntriples(a).unwrap());
        let sb = serialize_ntriples(&parse_ntriples(b).unwrap());
        assert_eq!(sa, sb);
        assert_eq!(sa, b);
    }

    #[test]
    fn trailing_comment_allowed() {
        let g = parse_ntriples("<http://x/a> <http://x/p> <http://x/b> . # note").unwrap();
        assert_eq!(g.len(), 1);
    }
}
