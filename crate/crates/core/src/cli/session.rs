//! `nashdcf/1` session files.
//!
//! ```text
//! nashdcf/1
//! cmd <command>          replayed, must succeed
//! err <command>          replayed, must fail (it changed state before failing)
//! tags <high-water>
//! dp <name>\t<exponents>=<element>...
//! elem <name>\t<element>
//! pin <tag>\t<element>
//! witness <kind>\t<tags>\t<selections>\t<results>
//! end <record count>
//! ```
//!
//! Loading replays the commands on a fresh engine and then requires the
//! recomputed state records to match the stored ones byte for byte.

use std::fs;
use std::path::Path;

use super::{parse_command, Engine};
use crate::error::{Error, Result};

pub const FORMAT_VERSION: &str = "nashdcf/1";

fn join<T: ToString>(xs: impl IntoIterator<Item = T>, sep: &str) -> String {
    xs.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(sep)
}

impl Engine {
    /// State records, everything after the command log.
    fn state_records(&self) -> Result<Vec<String>> {
        let mut out = vec![format!("tags {}", self.field.anchor.high_water())];
        for (name, p) in &self.dps {
            let mut line = format!("dp {}", name);
            for (e, c) in p.terms() {
                line.push_str(&format!("\t{}={}", join(e, ","), c.serialize()?));
            }
            out.push(line);
        }
        for (name, e) in &self.elements {
            out.push(format!("elem {}\t{}", name, e.serialize()?));
        }
        for (t, g) in self.field.table.pins() {
            out.push(format!("pin {}\t{}", t, g.serialize()?));
        }
        for w in self.field.table.log() {
            let results = w.result.iter().map(|r| r.serialize()).collect::<Result<Vec<_>>>()?;
            out.push(format!(
                "witness {}\t{}\t{}\t{}",
                w.kind,
                join(&w.tags, ","),
                w.selections.join(";"),
                results.join(";")
            ));
        }
        Ok(out)
    }

    pub fn save_string(&self) -> Result<String> {
        let mut records: Vec<String> = self
            .history
            .iter()
            .map(|h| format!("{} {}", if h.ok { "cmd" } else { "err" }, h.text))
            .collect();
        records.extend(self.state_records()?);
        let mut s = String::from(FORMAT_VERSION);
        s.push('\n');
        for r in &records {
            s.push_str(r);
            s.push('\n');
        }
        s.push_str(&format!("end {}\n", records.len()));
        Ok(s)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        fs::write(path, self.save_string()?)?;
        Ok(())
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Engine> {
        Engine::load_str(&fs::read_to_string(path)?)
    }

    /// Rebuild an engine from a session file. Record indices in errors count
    /// from 1 after the header.
    pub fn load_str(src: &str) -> Result<Engine> {
        let (header, body) = match src.split_once('\n') {
            Some((h, b)) => (h, b),
            None => (src, ""),
        };
        if header != FORMAT_VERSION {
            return Err(Error::VersionMismatch {
                expected: FORMAT_VERSION.into(),
                found: header.into(),
            });
        }
        let complete = body.ends_with('\n') || body.is_empty();
        let lines: Vec<&str> = body.lines().collect();
        let full = if complete { lines.len() } else { lines.len().saturating_sub(1) };
        let corrupt = |index: usize, message: String| Error::CorruptRecord { index, message };

        let mut end = None;
        for (k, line) in lines[..full].iter().enumerate() {
            let kind = line.split([' ', '\t']).next().unwrap_or("");
            match kind {
                "cmd" | "err" | "tags" | "dp" | "elem" | "pin" | "witness" => {
                    if end.is_some() {
                        return Err(corrupt(k + 1, "record after `end`".into()));
                    }
                }
                "end" => {
                    let n: usize = line[3..]
                        .trim()
                        .parse()
                        .map_err(|_| corrupt(k + 1, "bad record count".into()))?;
                    if n != k {
                        return Err(corrupt(k + 1, format!("`end` counts {} records, found {}", n, k)));
                    }
                    end = Some(k);
                }
                _ => return Err(corrupt(k + 1, format!("unknown record `{}`", kind))),
            }
        }
        let Some(n) = end else {
            return Err(Error::Truncated { last_valid: full });
        };
        if n + 1 != lines.len() {
            return Err(corrupt(n + 2, "record after `end`".into()));
        }

        let mut engine = Engine::new();
        let mut stored_state = Vec::new();
        for (k, line) in lines[..n].iter().enumerate() {
            let (kind, rest) = line.split_once(' ').unwrap_or((line, ""));
            match kind {
                "cmd" | "err" => {
                    if !stored_state.is_empty() {
                        return Err(corrupt(k + 1, "command after state records".into()));
                    }
                    let cmd = parse_command(rest, k + 2).map_err(|e| corrupt(k + 1, e.to_string()))?;
                    if !cmd.is_replayed() {
                        return Err(corrupt(k + 1, format!("`{}` is not a replayable command", rest)));
                    }
                    match (engine.execute(&cmd), kind) {
                        (Ok(_), "cmd") | (Err(_), "err") => {}
                        (Err(e), _) => return Err(corrupt(k + 1, format!("replay failed: {}", e))),
                        (Ok(_), _) => return Err(corrupt(k + 1, "replay succeeded where it failed before".into())),
                    }
                }
                _ => stored_state.push((k + 1, *line)),
            }
        }
        let fresh = engine.state_records()?;
        for (i, (index, stored)) in stored_state.iter().enumerate() {
            match fresh.get(i) {
                Some(f) if f == stored => {}
                _ => return Err(corrupt(*index, "replayed state differs from the stored record".into())),
            }
        }
        if fresh.len() != stored_state.len() {
            return Err(corrupt(n + 1, "replay produced more state than stored".into()));
        }
        Ok(engine)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_round_trip() {
        let e = Engine::new();
        let s = e.save_string().unwrap();
        assert_eq!(s, "nashdcf/1\ntags 0\nend 1\n");
        assert_eq!(Engine::load_str(&s).unwrap().save_string().unwrap(), s);
    }

    #[test]
    fn witness_round_trip() {
        let mut e = Engine::new();
        let out = e.run("dp p = y' - y\nlet f = witness p (y - 1)\ncheck p f\n");
        assert_eq!(out.errors, 0, "{}", out.text());
        assert_eq!(out.lines.last().unwrap(), "zero");
        let s = e.save_string().unwrap();
        let back = Engine::load_str(&s).unwrap();
        assert_eq!(back.save_string().unwrap(), s);
        let (a, b) = (e.element("f").unwrap(), back.element("f").unwrap());
        assert!(a.sub(b).is_zero().unwrap());
    }

    #[test]
    fn errors_name_records() {
        assert!(matches!(
            Engine::load_str("nashdcf/2\nend 0\n"),
            Err(Error::VersionMismatch { .. })
        ));
        let mut e = Engine::new();
        e.run("let a = var\nlet b = a^2 + 1\n");
        let s = e.save_string().unwrap();
        let cut = &s[..s.len() - 8];
        match Engine::load_str(cut) {
            Err(Error::Truncated { last_valid }) => assert!(last_valid >= 2),
            other => panic!("expected truncation, got {:?}", other.map(|_| ())),
        }
        let bad = s.replace("cmd let b", "cmd lett b");
        assert!(matches!(Engine::load_str(&bad), Err(Error::CorruptRecord { index: 2, .. })));
        let forged = s.replace("tags 1", "tags 2");
        assert!(matches!(Engine::load_str(&forged), Err(Error::CorruptRecord { .. })));
    }
}
