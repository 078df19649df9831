use std::fs;
use std::io::Write;
use std::path::Path;

use bivrel::{BivariateModel, NumericConfig, SampleSet};
use serde::Deserialize;

use crate::failure::{Failure, Outcome};
use crate::format::{csv, num};

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    #[serde(default)]
    numerics: NumericConfig,
}

fn read(path: &Path, what: &str) -> Outcome<String> {
    fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("cannot read {what} {}: {e}", path.display())))
}

pub fn load_model(path: Option<&Path>) -> Outcome<BivariateModel> {
    let path = path.ok_or_else(|| Failure::Usage("--model PATH is required".into()))?;
    let text = read(path, "model file")?;
    let model: BivariateModel = serde_json::from_str(&text)
        .map_err(|e| Failure::Input(format!("invalid model file {}: {e}", path.display())))?;
    model
        .validate()
        .map_err(|e| Failure::Input(format!("invalid model file {}: {e}", path.display())))?;
    Ok(model)
}

pub fn load_numerics(path: Option<&Path>) -> Outcome<NumericConfig> {
    let Some(path) = path else {
        return Ok(NumericConfig::default());
    };
    let text = read(path, "config file")?;
    let file: ConfigFile = serde_json::from_str(&text)
        .map_err(|e| Failure::Input(format!("invalid config file {}: {e}", path.display())))?;
    file.numerics
        .validate()
        .map_err(|e| Failure::Input(format!("invalid config file {}: {e}", path.display())))?;
    Ok(file.numerics)
}

/// Reads an "x,y" sample file.
pub fn load_sample(path: &Path) -> Outcome<SampleSet> {
    let text = read(path, "sample file")?;
    let bad = |line: usize, why: &str| {
        Failure::Input(format!("sample file {} line {line}: {why}", path.display()))
    };
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, header)) if header.trim() == "x,y" => {}
        _ => return Err(bad(1, "expected header \"x,y\"")),
    }
    let mut pairs = Vec::new();
    for (i, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        let (x, y) = line
            .split_once(',')
            .ok_or_else(|| bad(i + 1, "expected two columns"))?;
        let parse = |s: &str| {
            s.trim()
                .parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| bad(i + 1, "not a finite number"))
        };
        pairs.push((parse(x)?, parse(y)?));
    }
    if pairs.is_empty() {
        return Err(bad(2, "no data rows"));
    }
    Ok(SampleSet::from_pairs(pairs, 0, path.display().to_string()))
}

pub fn sample_csv(sample: &SampleSet) -> String {
    csv(
        &["x", "y"],
        sample.pairs.iter().map(|&(x, y)| vec![num(x), num(y)]),
    )
}

pub fn write_output(path: Option<&Path>, text: &str) -> Outcome<()> {
    match path {
        Some(path) => fs::write(path, text)
            .map_err(|e| Failure::Input(format!("cannot write {}: {e}", path.display()))),
        None => std::io::stdout()
            .lock()
            .write_all(text.as_bytes())
            .map_err(|e| Failure::Input(format!("cannot write to standard output: {e}"))),
    }
}
