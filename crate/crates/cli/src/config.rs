//! Run settings from flags and `key = value` config files.

use std::path::PathBuf;

use frobkit_core::fsing::DEFAULT_SLACK;
use frobkit_core::rational::parse_rational;
use frobkit_core::stabilization::{SearchBox, StabWindow, DEFAULT_DEPTH, DEFAULT_F0};
use frobkit_core::{Rational, SystemContext};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Csv,
    Json,
    Svg,
}

pub const KEYS: &[&str] = &[
    "p", "d", "expr", "e", "depth", "k", "window", "box", "format", "out", "levels", "point", "slack",
];

/// Partially specified settings; later layers override earlier ones.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Settings {
    pub p: Option<u64>,
    pub d: Option<usize>,
    pub expr: Option<String>,
    pub e: Option<u32>,
    pub depth: Option<u32>,
    pub k: Option<u32>,
    pub window: Option<(u32, u32)>,
    pub search_box: Option<Vec<u64>>,
    pub format: Option<Format>,
    pub out: Option<PathBuf>,
    pub levels: Option<Vec<u32>>,
    pub point: Option<Vec<Rational>>,
    pub slack: Option<u32>,
}

fn number<T: std::str::FromStr>(key: &str, v: &str) -> Result<T, String> {
    v.trim().parse().map_err(|_| format!("`{key}` expects a non-negative integer, got `{v}`"))
}

fn numbers<T: std::str::FromStr>(key: &str, v: &str) -> Result<Vec<T>, String> {
    v.split(',').map(|x| number(key, x)).collect()
}

impl Settings {
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), String> {
        let v = value.trim();
        match key {
            "p" => self.p = Some(number(key, v)?),
            "d" => self.d = Some(number(key, v)?),
            "expr" => self.expr = Some(v.to_string()),
            "e" => self.e = Some(number(key, v)?),
            "depth" => self.depth = Some(number(key, v)?),
            "k" => self.k = Some(number(key, v)?),
            "slack" => self.slack = Some(number(key, v)?),
            "window" => match numbers::<u32>(key, v)?.as_slice() {
                &[f0, f] => self.window = Some((f0, f)),
                _ => return Err(format!("`window` expects f0,F, got `{v}`")),
            },
            "box" => self.search_box = Some(numbers(key, v)?),
            "levels" => self.levels = Some(numbers(key, v)?),
            "point" => {
                let pt = v
                    .split(',')
                    .map(|x| parse_rational(x.trim()).ok_or_else(|| format!("`point` expects rationals, got `{x}`")))
                    .collect::<Result<Vec<_>, _>>()?;
                self.point = Some(pt);
            }
            "format" => {
                self.format = Some(match v {
                    "text" => Format::Text,
                    "csv" => Format::Csv,
                    "json" => Format::Json,
                    "svg" => Format::Svg,
                    _ => return Err(format!("unknown format `{v}`; use csv, json, svg or text")),
                })
            }
            "out" => self.out = Some(PathBuf::from(v)),
            _ => return Err(format!("unknown key `{key}`")),
        }
        Ok(())
    }

    /// Reads a config file body. Blank lines and `#` comments are skipped.
    pub fn parse_file(text: &str) -> Result<Self, CliError> {
        let mut s = Settings::default();
        for (n, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| CliError::Usage(format!("config line {}: expected `key = value`", n + 1)))?;
            s.set(key.trim(), value)
                .map_err(|m| CliError::Usage(format!("config line {}: {m}", n + 1)))?;
        }
        Ok(s)
    }

    /// Fields set in `top` win.
    pub fn overlay(self, top: Settings) -> Settings {
        Settings {
            p: top.p.or(self.p),
            d: top.d.or(self.d),
            expr: top.expr.or(self.expr),
            e: top.e.or(self.e),
            depth: top.depth.or(self.depth),
            k: top.k.or(self.k),
            window: top.window.or(self.window),
            search_box: top.search_box.or(self.search_box),
            format: top.format.or(self.format),
            out: top.out.or(self.out),
            levels: top.levels.or(self.levels),
            point: top.point.or(self.point),
            slack: top.slack.or(self.slack),
        }
    }
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub ctx: SystemContext,
    pub expr: String,
    pub e: u32,
    pub depth: u32,
    pub k: u32,
    pub window: StabWindow,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub levels: Vec<u32>,
    pub point: Option<Vec<Rational>>,
    pub slack: u32,
}

impl RunConfig {
    pub fn resolve(s: Settings) -> Result<Self, CliError> {
        let p = s.p.ok_or_else(|| CliError::Usage("the characteristic p is required (--p N)".into()))?;
        let d = s.d.unwrap_or(2);
        let ctx = SystemContext::new(p, d)?;
        let expr = s
            .expr
            .ok_or_else(|| CliError::Usage("a system expression is required (--expr STR)".into()))?;
        let (f0, f) = s.window.unwrap_or((DEFAULT_F0, DEFAULT_DEPTH));
        let mut window = StabWindow::new(f0, f)?;
        if let Some(b) = s.search_box {
            if b.len() != d {
                return Err(CliError::Usage(format!("--box needs {d} entries, got {}", b.len())));
            }
            window = window.with_box(SearchBox::Explicit(b));
        }
        if let Some(pt) = &s.point {
            if pt.len() != d {
                return Err(CliError::Usage(format!("--point needs {d} coordinates, got {}", pt.len())));
            }
        }
        Ok(RunConfig {
            ctx,
            expr,
            e: s.e.unwrap_or(1),
            depth: s.depth.unwrap_or(6),
            k: s.k.unwrap_or(1),
            window,
            format: s.format.unwrap_or(Format::Text),
            out: s.out,
            levels: s.levels.unwrap_or_else(|| vec![1, 2, 3]),
            point: s.point,
            slack: s.slack.unwrap_or(DEFAULT_SLACK),
        })
    }
}
