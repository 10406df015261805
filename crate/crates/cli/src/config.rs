//! Optional `key=value` configuration files mirroring the CLI flags.
//! Explicit flags always win over file values.

use std::collections::BTreeMap;
use std::path::Path;

pub type Config = BTreeMap<String, String>;

/// Parses a `key=value` file; `#` starts a comment, blank lines are skipped.
pub fn parse(text: &str) -> Result<Config, String> {
    let mut out = Config::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(format!("config line {}: expected key=value", lineno + 1));
        };
        out.insert(key.trim().to_string(), value.trim().to_string());
    }
    Ok(out)
}

pub fn load(path: &Path) -> Result<Config, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("config {}: {}", path.display(), e))?;
    parse(&text)
}

/// Fills an unset flag from the config.
pub fn fill(slot: &mut Option<String>, config: &Config, key: &str) {
    if slot.is_none() {
        if let Some(v) = config.get(key) {
            *slot = Some(v.clone());
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_fills() {
        let cfg = parse("v = 0,0,3,-5\n# comment\nt=1/2\n").unwrap();
        assert_eq!(cfg.get("v").unwrap(), "0,0,3,-5");
        let mut flag = None;
        fill(&mut flag, &cfg, "t");
        assert_eq!(flag.as_deref(), Some("1/2"));
        let mut set = Some("9".to_string());
        fill(&mut set, &cfg, "t");
        assert_eq!(set.as_deref(), Some("9"));
        assert!(parse("oops").is_err());
    }
}
