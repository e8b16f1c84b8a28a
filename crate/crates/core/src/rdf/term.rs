use std::fmt;
use std::sync::Arc;

use super::vocab;
use super::RdfError;

/// An absolute IRI. Cheap to clone.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Iri(Arc<str>);

impl Iri {
    pub fn new(value: impl AsRef<str>) -> Result<Self, RdfError> {
        let value = value.as_ref();
        validate_iri(value)?;
        Ok(Iri(Arc::from(value)))
    }

    /// Builds an IRI without validation. Callers guarantee the value is a
    /// well-formed absolute IRI (vocabulary constants, prefix rewrites of
    /// validated IRIs).
    pub fn new_unchecked(value: impl AsRef<str>) -> Self {
        debug_assert!(validate_iri(value.as_ref()).is_ok(), "invalid IRI {:?}", value.as_ref());
        Iri(Arc::from(value.as_ref()))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// The part after the last `#` or `/`.
    pub fn local_name(&self) -> &str {
        let s = self.as_str();
        match s.rfind(['#', '/']) {
            Some(idx) if idx + 1 < s.len() => &s[idx + 1..],
            _ => s,
        }
    }

    pub fn starts_with(&self, prefix: &str) -> bool {
        self.0.starts_with(prefix)
    }
}

impl fmt::Debug for Iri {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}>", self.0)
    }
}

impl fmt::Display for Iri {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl AsRef<str> for Iri {
    fn as_ref(&self) -> &str {
        &self.0
    }
}

fn validate_iri(value: &str) -> Result<(), RdfError> {
    if value.is_empty() {
        return Err(RdfError::InvalidIri { iri: value.to_string(), reason: "empty" });
    }
    if value.chars().any(|c| c.is_whitespace() || c.is_control() || "<>\"{}|^`\\".contains(c)) {
        return Err(RdfError::InvalidIri { iri: value.to_string(), reason: "contains a forbidden character" });
    }
    let scheme_end = value
        .find(':')
        .ok_or(RdfError::InvalidIri { iri: value.to_string(), reason: "not absolute (missing scheme)" })?;
    let scheme = &value[..scheme_end];
    let mut chars = scheme.chars();
    let scheme_ok = matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || "+.-".contains(c));
    if !scheme_ok {
        return Err(RdfError::InvalidIri { iri: value.to_string(), reason: "malformed scheme" });
    }
    Ok(())
}

/// A literal value. Plain literals carry the `xsd:string` datatype.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    lexical: Arc<str>,
    datatype: Iri,
    lang: Option<Arc<str>>,
}

impl Literal {
    pub fn string(lexical: impl AsRef<str>) -> Self {
        Literal { lexical: Arc::from(lexical.as_ref()), datatype: Iri::new_unchecked(vocab::XSD_STRING), lang: None }
    }

    pub fn typed(lexical: impl AsRef<str>, datatype: Iri) -> Self {
        Literal { lexical: Arc::from(lexical.as_ref()), datatype, lang: None }
    }

    pub fn with_lang(lexical: impl AsRef<str>, lang: &str) -> Result<Self, RdfError> {
        let valid = !lang.is_empty()
            && lang.split('-').enumerate().all(|(i, part)| {
                !part.is_empty()
                    && part.len() <= 8
                    && if i == 0 {
                        part.chars().all(|c| c.is_ascii_alphabetic())
                    } else {
                        part.chars().all(|c| c.is_ascii_alphanumeric())
                    }
            });
        if !valid {
            return Err(RdfError::InvalidLangTag(lang.to_string()));
        }
        Ok(Literal {
            lexical: Arc::from(lexical.as_ref()),
            datatype: Iri::new_unchecked(vocab::RDF_LANG_STRING),
            lang: Some(Arc::from(lang)),
        })
    }

    pub fn lexical(&self) -> &str {
        &self.lexical
    }

    pub fn datatype(&self) -> &Iri {
        &self.datatype
    }

    pub fn lang(&self) -> Option<&str> {
        self.lang.as_deref()
    }

    pub fn is_plain_string(&self) -> bool {
        self.lang.is_none() && self.datatype.as_str() == vocab::XSD_STRING
    }
}

impl fmt::Debug for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::ntriples::literal_to_string(self))
    }
}

/// Object position of a triple.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Iri(Iri),
    Literal(Literal),
}

impl Term {
    pub fn as_iri(&self) -> Option<&Iri> {
        match self {
            Term::Iri(iri) => Some(iri),
            Term::Literal(_) => None,
        }
    }

    pub fn as_literal(&self) -> Option<&Literal> {
        match self {
            Term::Literal(lit) => Some(lit),
            Term::Iri(_) => None,
        }
    }

    pub fn is_iri(&self) -> bool {
        matches!(self, Term::Iri(_))
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Iri(iri) => iri.fmt(f),
            Term::Literal(lit) => lit.fmt(f),
        }
    }
}

impl From<Iri> for Term {
    fn from(iri: Iri) -> Self {
        Term::Iri(iri)
    }
}

impl From<Literal> for Term {
    fn from(lit: Literal) -> Self {
        Term::Literal(lit)
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Triple {
    pub subject: Iri,
    pub predicate: Iri,
    pub object: Term,
}

impl Triple {
    pub fn new(subject: Iri, predicate: Iri, object: impl Into<Term>) -> Self {
        Triple { subject, predicate, object: object.into() }
    }
}

impl fmt::Debug for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} {:?} {:?}", self.subject, self.predicate, self.object)
    }
}
