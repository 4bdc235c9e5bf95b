//! Versioned plain-text model files.
//!
//! ```text
//! ddm-model 1
//! activation sigu
//! input_dim 1
//! hidden_nodes 1
//! neighbors 1
//! seed 7
//! rng chacha8-u64seed-lemire-v1
//! rcond 4.440892098500626e-16
//! ridge 0.0
//! softplus_naive false
//! output_bias none
//! input_range 0.0 1.0
//! target_source 0.0 1.0
//! target_interval 0.0 1.0
//! node anchor_index=1 bias=-4.0 intercept=0.0 weights=4.0 anchor=1.0 slopes=1.0
//! beta 2.0
//! ```
//!
//! Floats are written in shortest round-trip form, so `save(load(text)) == text` for any file
//! written by [`save_model`].

use std::fmt::Write as _;

use ddm_core::{Activation, FnnModel, Hyperplane, HiddenNode, Normalization, PlacedNode};

/// Magic first line, including the format version.
pub const HEADER: &str = "ddm-model 1";

/// A model file that does not parse.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("line {line}: {message}")]
pub struct ModelFormatError {
    /// One-based line number (0 when the file ends early).
    pub line: usize,
    /// Description.
    pub message: String,
}

fn list(values: &[f64]) -> String {
    let mut s = String::new();
    for (i, v) in values.iter().enumerate() {
        if i > 0 {
            s.push(',');
        }
        write!(s, "{v:?}").unwrap();
    }
    s
}

/// Serializes a model.
pub fn save_model(model: &FnnModel) -> String {
    let mut out = String::new();
    let norm = &model.normalization;
    writeln!(out, "{HEADER}").unwrap();
    writeln!(out, "activation {}", model.activation).unwrap();
    writeln!(out, "input_dim {}", model.input_dim).unwrap();
    writeln!(out, "hidden_nodes {}", model.nodes.len()).unwrap();
    writeln!(out, "neighbors {}", model.neighbors).unwrap();
    writeln!(out, "seed {}", model.seed).unwrap();
    writeln!(out, "rng {}", model.rng).unwrap();
    writeln!(out, "rcond {:?}", model.rcond).unwrap();
    writeln!(out, "ridge {:?}", model.ridge).unwrap();
    writeln!(out, "softplus_naive {}", model.softplus_naive).unwrap();
    match model.output_bias {
        Some(b) => writeln!(out, "output_bias {b:?}").unwrap(),
        None => writeln!(out, "output_bias none").unwrap(),
    }
    for (lo, hi) in &norm.input_ranges {
        writeln!(out, "input_range {lo:?} {hi:?}").unwrap();
    }
    let (lo, hi) = norm.target_source;
    writeln!(out, "target_source {lo:?} {hi:?}").unwrap();
    let (lo, hi) = norm.target_interval;
    writeln!(out, "target_interval {lo:?} {hi:?}").unwrap();
    for p in &model.nodes {
        writeln!(
            out,
            "node anchor_index={} bias={:?} intercept={:?} weights={} anchor={} slopes={}",
            p.anchor_index,
            p.node.bias,
            p.plane.intercept,
            list(&p.node.weights),
            list(&p.anchor),
            list(&p.plane.slopes)
        )
        .unwrap();
    }
    writeln!(out, "beta {}", list(&model.beta)).unwrap();
    out
}

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
    line: usize,
}

impl<'a> Lines<'a> {
    fn err(&self, message: impl Into<String>) -> ModelFormatError {
        ModelFormatError {
            line: self.line,
            message: message.into(),
        }
    }

    /// Next line, which must start with `key`; returns the rest.
    fn field(&mut self, key: &str) -> Result<&'a str, ModelFormatError> {
        let (i, text) = self
            .inner
            .next()
            .ok_or_else(|| ModelFormatError {
                line: 0,
                message: format!("unexpected end of file, expected `{key}`"),
            })?;
        self.line = i + 1;
        match text.split_once(' ') {
            Some((k, rest)) if k == key => Ok(rest),
            _ => Err(self.err(format!("expected `{key} ...`, found `{text}`"))),
        }
    }

    fn parse<T: std::str::FromStr>(&self, s: &str, what: &str) -> Result<T, ModelFormatError> {
        s.parse()
            .map_err(|_| self.err(format!("invalid {what} `{s}`")))
    }

    fn float(&self, s: &str, what: &str) -> Result<f64, ModelFormatError> {
        let v: f64 = self.parse(s, what)?;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(self.err(format!("{what} must be finite, found `{s}`")))
        }
    }

    fn floats(&self, s: &str, what: &str, len: usize) -> Result<Vec<f64>, ModelFormatError> {
        let v = s
            .split(',')
            .map(|t| self.float(t, what))
            .collect::<Result<Vec<_>, _>>()?;
        if v.len() != len {
            return Err(self.err(format!("{what}: expected {len} values, found {}", v.len())));
        }
        Ok(v)
    }

    fn pair(&self, s: &str, what: &str) -> Result<(f64, f64), ModelFormatError> {
        match s.split(' ').collect::<Vec<_>>().as_slice() {
            [a, b] => Ok((self.float(a, what)?, self.float(b, what)?)),
            _ => Err(self.err(format!("{what}: expected two numbers"))),
        }
    }
}

/// Parses a model file.
pub fn load_model(text: &str) -> Result<FnnModel, ModelFormatError> {
    let mut lines = Lines {
        inner: text.lines().enumerate(),
        line: 0,
    };
    match lines.inner.next() {
        Some((_, HEADER)) => lines.line = 1,
        Some((_, other)) => {
            return Err(ModelFormatError {
                line: 1,
                message: format!("not a model file or unsupported version: `{other}`"),
            })
        }
        None => {
            return Err(ModelFormatError {
                line: 0,
                message: "empty file".into(),
            })
        }
    }
    let token = lines.field("activation")?;
    let activation: Activation = lines.parse(token, "activation")?;
    let s = lines.field("input_dim")?;
    let input_dim: usize = lines.parse(s, "input_dim")?;
    if input_dim == 0 {
        return Err(lines.err("input_dim must be at least 1"));
    }
    let s = lines.field("hidden_nodes")?;
    let hidden: usize = lines.parse(s, "hidden_nodes")?;
    let s = lines.field("neighbors")?;
    let neighbors: usize = lines.parse(s, "neighbors")?;
    let s = lines.field("seed")?;
    let seed: u64 = lines.parse(s, "seed")?;
    let rng = lines.field("rng")?.to_string();
    let s = lines.field("rcond")?;
    let rcond = lines.float(s, "rcond")?;
    let s = lines.field("ridge")?;
    let ridge = lines.float(s, "ridge")?;
    let s = lines.field("softplus_naive")?;
    let softplus_naive: bool = lines.parse(s, "softplus_naive")?;
    let s = lines.field("output_bias")?;
    let output_bias = match s {
        "none" => None,
        v => Some(lines.float(v, "output_bias")?),
    };
    let mut input_ranges = Vec::with_capacity(input_dim);
    for _ in 0..input_dim {
        let s = lines.field("input_range")?;
        input_ranges.push(lines.pair(s, "input_range")?);
    }
    let s = lines.field("target_source")?;
    let target_source = lines.pair(s, "target_source")?;
    let s = lines.field("target_interval")?;
    let target_interval = lines.pair(s, "target_interval")?;

    let mut nodes = Vec::with_capacity(hidden);
    for _ in 0..hidden {
        let rest = lines.field("node")?;
        let mut anchor_index = None;
        let mut bias = None;
        let mut intercept = None;
        let mut weights = None;
        let mut anchor = None;
        let mut slopes = None;
        for kv in rest.split(' ') {
            let (k, v) = kv
                .split_once('=')
                .ok_or_else(|| lines.err(format!("expected key=value, found `{kv}`")))?;
            match k {
                "anchor_index" => anchor_index = Some(lines.parse::<usize>(v, k)?),
                "bias" => bias = Some(lines.float(v, k)?),
                "intercept" => intercept = Some(lines.float(v, k)?),
                "weights" => weights = Some(lines.floats(v, k, input_dim)?),
                "anchor" => anchor = Some(lines.floats(v, k, input_dim)?),
                "slopes" => slopes = Some(lines.floats(v, k, input_dim)?),
                _ => return Err(lines.err(format!("unknown node field `{k}`"))),
            }
        }
        let missing = |name: &str| lines.err(format!("node is missing `{name}`"));
        nodes.push(PlacedNode {
            node: HiddenNode {
                kind: activation,
                weights: weights.ok_or_else(|| missing("weights"))?,
                bias: bias.ok_or_else(|| missing("bias"))?,
            },
            anchor_index: anchor_index.ok_or_else(|| missing("anchor_index"))?,
            anchor: anchor.ok_or_else(|| missing("anchor"))?,
            plane: Hyperplane::new(
                slopes.ok_or_else(|| missing("slopes"))?,
                intercept.ok_or_else(|| missing("intercept"))?,
            ),
        });
    }
    let s = lines.field("beta")?;
    let beta = lines.floats(s, "beta", hidden)?;
    if let Some((i, extra)) = lines.inner.next() {
        return Err(ModelFormatError {
            line: i + 1,
            message: format!("unexpected trailing content `{extra}`"),
        });
    }
    Ok(FnnModel {
        input_dim,
        activation,
        nodes,
        beta,
        output_bias,
        normalization: Normalization {
            input_ranges,
            target_source,
            target_interval,
        },
        seed,
        rng,
        neighbors,
        rcond,
        ridge,
        softplus_naive,
    })
}
