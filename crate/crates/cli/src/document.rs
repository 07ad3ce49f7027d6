//! Line-oriented sectioned text: `[kind args..]` headers, `key = value`
//! pairs and bracketed matrix rows. `#` starts a comment.

use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            message: message.into(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.line == 0 {
            write!(f, "{}", self.message)
        } else {
            write!(f, "line {}: {}", self.line, self.message)
        }
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Line {
    pub number: usize,
    pub text: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Section {
    pub kind: String,
    pub args: Vec<String>,
    pub line: usize,
    pub body: Vec<Line>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Document {
    pub sections: Vec<Section>,
}

pub fn parse_document(text: &str) -> Result<Document, ParseError> {
    let mut doc = Document::default();
    for (i, raw) in text.lines().enumerate() {
        let number = i + 1;
        let text = raw.split('#').next().unwrap_or("").trim();
        if text.is_empty() {
            continue;
        }
        if let Some(inner) = text.strip_prefix('[').filter(|_| is_header(text)) {
            let inner = inner
                .strip_suffix(']')
                .ok_or_else(|| ParseError::new(number, "unterminated section header"))?;
            let mut tokens = inner.split_whitespace().map(str::to_string);
            let kind = tokens
                .next()
                .ok_or_else(|| ParseError::new(number, "empty section header"))?;
            doc.sections.push(Section {
                kind,
                args: tokens.collect(),
                line: number,
                body: Vec::new(),
            });
            continue;
        }
        match doc.sections.last_mut() {
            Some(s) => s.body.push(Line {
                number,
                text: text.to_string(),
            }),
            None => {
                return Err(ParseError::new(
                    number,
                    "content before the first section header",
                ))
            }
        }
    }
    Ok(doc)
}

/// Headers start with a letter after the bracket; matrix rows start with a
/// digit, sign, parenthesis or close immediately.
fn is_header(text: &str) -> bool {
    text[1..]
        .chars()
        .next()
        .is_some_and(|c| c.is_ascii_alphabetic())
}

impl Section {
    pub fn arg(&self, i: usize) -> Option<&str> {
        self.args.get(i).map(String::as_str)
    }

    /// `key = value` pairs, in order.
    pub fn pairs(&self) -> Result<Vec<(&Line, String, String)>, ParseError> {
        self.body
            .iter()
            .map(|l| {
                let (k, v) = l.text.split_once('=').ok_or_else(|| {
                    ParseError::new(
                        l.number,
                        format!("expected `key = value` in [{}]", self.kind),
                    )
                })?;
                Ok((l, k.trim().to_string(), v.trim().to_string()))
            })
            .collect()
    }

    pub fn value(&self, key: &str) -> Result<Option<(usize, String)>, ParseError> {
        let mut found = None;
        for (line, k, v) in self.pairs()? {
            if k == key {
                if found.is_some() {
                    return Err(ParseError::new(
                        line.number,
                        format!("duplicate field `{key}`"),
                    ));
                }
                found = Some((line.number, v));
            }
        }
        Ok(found)
    }

    pub fn required(&self, key: &str) -> Result<(usize, String), ParseError> {
        self.value(key)?.ok_or_else(|| {
            ParseError::new(
                self.line,
                format!("[{}] is missing field `{key}`", self.kind),
            )
        })
    }
}

impl Document {
    pub fn sections_of<'a, 'k>(
        &'a self,
        kind: &'k str,
    ) -> impl Iterator<Item = &'a Section> + use<'a, 'k> {
        self.sections.iter().filter(move |s| s.kind == kind)
    }

    pub fn single(&self, kind: &str) -> Result<Option<&Section>, ParseError> {
        let mut it = self.sections_of(kind);
        let first = it.next();
        if let Some(second) = it.next() {
            return Err(ParseError::new(
                second.line,
                format!("duplicate section [{kind}]"),
            ));
        }
        Ok(first)
    }
}

/// Splits `[a, (b, c), d]` into top-level items.
pub fn split_row(line: &Line) -> Result<Vec<String>, ParseError> {
    let inner = line
        .text
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(|| ParseError::new(line.number, "matrix rows are written as `[e, e, ..]`"))?;
    split_top_level(inner).map_err(|m| ParseError::new(line.number, m))
}

pub fn split_top_level(text: &str) -> Result<Vec<String>, String> {
    let mut items = Vec::new();
    let mut depth = 0i32;
    let mut current = String::new();
    for ch in text.chars() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                items.push(current.trim().to_string());
                current.clear();
                continue;
            }
            _ => {}
        }
        if depth < 0 {
            return Err("unbalanced parentheses".into());
        }
        current.push(ch);
    }
    if depth != 0 {
        return Err("unbalanced parentheses".into());
    }
    let last = current.trim();
    if !last.is_empty() || !items.is_empty() {
        items.push(last.to_string());
    }
    if items.iter().any(String::is_empty) {
        return Err("empty matrix entry".into());
    }
    Ok(items)
}

/// Items of a `(a, b, ..)` tuple.
pub fn split_tuple(text: &str) -> Result<Vec<String>, String> {
    let inner = text
        .trim()
        .strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .ok_or_else(|| format!("expected a tuple `(..)`, found `{text}`"))?;
    split_top_level(inner)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sections_and_rows() {
        let doc = parse_document("# c\n[complex]\nrank 0 = 1\n[differential 0]\n[2, (1, 0)]\n[]\n")
            .unwrap();
        assert_eq!(doc.sections.len(), 2);
        assert_eq!(doc.sections[1].args, vec!["0"]);
        assert_eq!(
            split_row(&doc.sections[1].body[0]).unwrap(),
            vec!["2", "(1, 0)"]
        );
        assert!(split_row(&doc.sections[1].body[1]).unwrap().is_empty());
    }

    #[test]
    fn content_before_header_is_an_error() {
        let err = parse_document("mode = field\n").unwrap_err();
        assert_eq!(err.line, 1);
    }
}
