use std::fmt;
use std::str::FromStr;

use mentor_core::hypothesis::{render_all, to_markdown};
use mentor_core::CognitiveMap;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExportFormat {
    Json,
    Dot,
    Markdown,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("format must be json, dot or markdown, got {0:?}")]
pub struct UnknownFormat(pub String);

impl FromStr for ExportFormat {
    type Err = UnknownFormat;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "json" => Ok(ExportFormat::Json),
            "dot" => Ok(ExportFormat::Dot),
            "markdown" | "md" => Ok(ExportFormat::Markdown),
            other => Err(UnknownFormat(other.to_owned())),
        }
    }
}

impl fmt::Display for ExportFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ExportFormat::Json => "json",
            ExportFormat::Dot => "dot",
            ExportFormat::Markdown => "markdown",
        })
    }
}

impl ExportFormat {
    pub fn content_type(self) -> &'static str {
        match self {
            ExportFormat::Json => "application/json",
            ExportFormat::Dot => "text/vnd.graphviz; charset=utf-8",
            ExportFormat::Markdown => "text/markdown; charset=utf-8",
        }
    }

    pub fn render(self, map: &CognitiveMap) -> String {
        match self {
            ExportFormat::Json => map.to_json(),
            ExportFormat::Dot => map.to_dot(),
            ExportFormat::Markdown => {
                let product = map.product().map(|p| p.clause_text.as_str());
                to_markdown(product, &render_all(map))
            }
        }
    }
}
