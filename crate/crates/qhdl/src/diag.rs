use std::fmt;

/// 1-based source position.
///
/// Spans never take part in equality, so trees parsed from differently
/// formatted sources compare equal.
#[derive(Clone, Copy, Debug, Default, serde::Serialize)]
pub struct Span {
    pub line: u32,
    pub col: u32,
}

impl Span {
    pub fn new(line: u32, col: u32) -> Self {
        Self { line, col }
    }
}

impl PartialEq for Span {
    fn eq(&self, _: &Self) -> bool {
        true
    }
}

impl Eq for Span {}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub span: Span,
    pub message: String,
}

impl Diagnostic {
    pub fn new(span: Span, message: impl Into<String>) -> Self {
        Self { span, message: message.into() }
    }

    /// `file:line:col: message`
    pub fn render(&self, file: &str) -> String {
        format!("{file}:{}:{}: {}", self.span.line, self.span.col, self.message)
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.span, self.message)
    }
}

impl std::error::Error for Diagnostic {}

/// Diagnostics tagged with the file they came from.
#[derive(Clone, Debug, Default)]
pub struct Report {
    pub items: Vec<(String, Diagnostic)>,
}

impl Report {
    pub fn single(file: &str, d: Diagnostic) -> Self {
        Self { items: vec![(file.to_string(), d)] }
    }

    pub fn from_all(file: &str, ds: Vec<Diagnostic>) -> Self {
        Self { items: ds.into_iter().map(|d| (file.to_string(), d)).collect() }
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (file, d)) in self.items.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{}", d.render(file))?;
        }
        Ok(())
    }
}

impl std::error::Error for Report {}
