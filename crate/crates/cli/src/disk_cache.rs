//! On-disk term cache.
//!
//! One file per family, `<name>_<params>.terms`:
//!
//! ```text
//! family,params,count
//! <u_0>
//! ...
//! <u_{count-1}>
//! ```
//!
//! Every term is a decimal integer on its own newline-terminated line.
//! Files are replaced atomically (write to a temporary file, then rename),
//! so concurrent writers of identical content are harmless.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use apery_core::sequences::TermCache;
use apery_core::{Integer, SequenceFamily};
use serde::Serialize;

pub const EXTENSION: &str = "terms";

pub fn file_name(family: SequenceFamily) -> String {
    format!("{}_{}.{EXTENSION}", family.name(), family.params())
}

pub fn path_for(dir: &Path, family: SequenceFamily) -> PathBuf {
    dir.join(file_name(family))
}

pub fn encode(family: SequenceFamily, terms: &[Integer]) -> String {
    let mut out = format!("{},{},{}\n", family.name(), family.params(), terms.len());
    for t in terms {
        out.push_str(&t.to_string());
        out.push('\n');
    }
    out
}

/// Parses a cache file body, checking it belongs to `family`.
pub fn decode(family: SequenceFamily, text: &str) -> Result<Vec<Integer>, String> {
    if !text.ends_with('\n') {
        return Err("missing trailing newline (truncated?)".into());
    }
    let mut lines = text.lines();
    let header = lines.next().ok_or("empty file")?;
    let fields: Vec<&str> = header.split(',').collect();
    let [name, params, count] = fields[..] else {
        return Err(format!("malformed header `{header}`"));
    };
    if name != family.name() || params != family.params() {
        return Err(format!("header `{header}` does not describe {family}"));
    }
    let count: usize = count
        .parse()
        .map_err(|_| format!("bad count in header `{header}`"))?;
    let terms = lines
        .enumerate()
        .map(|(i, line)| {
            line.parse::<Integer>()
                .map_err(|_| format!("line {} is not an integer", i + 2))
        })
        .collect::<Result<Vec<_>, _>>()?;
    if terms.len() != count {
        return Err(format!("header says {count} terms, found {}", terms.len()));
    }
    Ok(terms)
}

/// Loads the cached prefix for `family`. A corrupt file is removed with a
/// warning and treated as absent.
pub fn load(dir: &Path, family: SequenceFamily) -> Option<Vec<Integer>> {
    let path = path_for(dir, family);
    let text = fs::read_to_string(&path).ok()?;
    match decode(family, &text) {
        Ok(terms) => Some(terms),
        Err(reason) => {
            eprintln!(
                "warning: discarding corrupt cache file {}: {reason}",
                path.display()
            );
            let _ = fs::remove_file(&path);
            None
        }
    }
}

/// Seeds the shared term cache from disk.
pub fn preload(dir: &Path, family: SequenceFamily) -> usize {
    match load(dir, family) {
        Some(terms) => {
            TermCache::global().preload(family, &terms);
            terms.len()
        }
        None => 0,
    }
}

pub fn store(dir: &Path, family: SequenceFamily, terms: &[Integer]) -> io::Result<()> {
    fs::create_dir_all(dir)?;
    let target = path_for(dir, family);
    let tmp = dir.join(format!(".{}.{}.tmp", file_name(family), std::process::id()));
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(encode(family, terms).as_bytes())?;
        f.sync_all()?;
    }
    fs::rename(&tmp, &target)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CacheEntry {
    pub file: String,
    pub family: String,
    pub params: String,
    pub count: usize,
    pub valid: bool,
}

/// Describes every cache file in `dir`, sorted by file name.
pub fn stats(dir: &Path) -> io::Result<Vec<CacheEntry>> {
    let mut entries = Vec::new();
    if !dir.exists() {
        return Ok(entries);
    }
    for entry in fs::read_dir(dir)? {
        let path = entry?.path();
        if path.extension().and_then(|e| e.to_str()) != Some(EXTENSION) {
            continue;
        }
        let file = path
            .file_name()
            .map(|f| f.to_string_lossy().into_owned())
            .unwrap_or_default();
        let text = fs::read_to_string(&path).unwrap_or_default();
        let header: Vec<&str> = text.lines().next().unwrap_or("").split(',').collect();
        let (family, params) = match header[..] {
            [f, p, _] => (f.to_string(), p.to_string()),
            _ => (String::new(), String::new()),
        };
        let decoded = family_from_header(&family, &params).and_then(|fam| decode(fam, &text).ok());
        entries.push(CacheEntry {
            file,
            family,
            params,
            count: decoded.as_ref().map_or(0, Vec::len),
            valid: decoded.is_some(),
        });
    }
    entries.sort_by(|a, b| a.file.cmp(&b.file));
    Ok(entries)
}

fn family_from_header(name: &str, params: &str) -> Option<SequenceFamily> {
    if name == "d-general" {
        let rest = params.strip_prefix('r')?;
        let (r, s) = rest.split_once('s')?;
        return SequenceFamily::parse_with(name, r.parse().ok()?, s.parse().ok()?).ok();
    }
    name.parse().ok()
}

/// Removes every cache file in `dir`; returns how many were deleted.
pub fn clear(dir: &Path) -> io::Result<usize> {
    let mut removed = 0;
    if !dir.exists() {
        return Ok(0);
    }
    for entry in fs::read_dir(dir)? {
        let path = entry?.path();
        let is_cache = path.extension().and_then(|e| e.to_str()) == Some(EXTENSION)
            || path
                .file_name()
                .and_then(|f| f.to_str())
                .is_some_and(|f| f.starts_with('.') && f.ends_with(".tmp"));
        if is_cache {
            fs::remove_file(&path)?;
            removed += 1;
        }
    }
    Ok(removed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn ints(v: &[i64]) -> Vec<Integer> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn round_trip() {
        let terms = ints(&[1, 4, 28, 256, -3]);
        let text = encode(SequenceFamily::DOMB, &terms);
        assert!(text.starts_with("domb,r2s1,5\n"));
        assert_eq!(decode(SequenceFamily::DOMB, &text).unwrap(), terms);
    }

    #[test]
    fn general_params_in_header() {
        let fam = SequenceFamily::DombGeneral { r: 3, s: 2 };
        let text = encode(fam, &ints(&[1]));
        assert_eq!(text, "d-general,r3s2,1\n1\n");
        assert_eq!(family_from_header("d-general", "r3s2"), Some(fam));
    }

    #[test]
    fn rejects_corruption() {
        let fam = SequenceFamily::CStar;
        assert!(decode(fam, "c-star,-,3\n1\n3\n15").is_err());
        assert!(decode(fam, "c-star,-,3\n1\n3\n").is_err());
        assert!(decode(fam, "c-star,-,2\n1\nx\n").is_err());
        assert!(decode(fam, "domb,-,1\n1\n").is_err());
        assert!(decode(fam, "c-star,-\n1\n").is_err());
    }
}
