//! Text-file persistence of cut-and-join values.
//!
//! One record per line, either
//! `a=2 g=0 mu1=4 ell=1 rest= H=1/4` or `a=2 g=0 mu=4 H=1/2`.

use std::collections::BTreeMap;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use num_rational::BigRational;
use rustc_hash::FxHashMap;

use super::{PlainKey, RefinedKey};
use crate::algebra::rational;
use crate::error::{Error, Result};

#[derive(Debug, Default)]
pub struct ValueCache {
    path: Option<PathBuf>,
    pub(super) refined: FxHashMap<RefinedKey, BigRational>,
    pub(super) plain: FxHashMap<PlainKey, BigRational>,
    dirty: bool,
}

fn list(parts: &[usize]) -> String {
    parts.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

fn parse_list(s: &str) -> std::result::Result<Vec<usize>, String> {
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(|p| p.parse::<usize>().map_err(|_| format!("bad part {p:?}"))).collect()
}

enum Record {
    Refined(RefinedKey, BigRational),
    Plain(PlainKey, BigRational),
}

fn parse_record(line: &str) -> std::result::Result<Record, String> {
    let mut fields: BTreeMap<&str, &str> = BTreeMap::new();
    for tok in line.split_whitespace() {
        let (k, v) = tok.split_once('=').ok_or_else(|| format!("token {tok:?} is not key=value"))?;
        if fields.insert(k, v).is_some() {
            return Err(format!("field {k} repeated"));
        }
    }
    let names: Vec<&str> = fields.keys().copied().collect();
    let int = |k: &str| fields[k].parse::<usize>().map_err(|_| format!("field {k} is not a non-negative integer"));
    let value = |k: &str| rational::parse(fields[k]).map_err(|e| e.to_string());
    let mut refined_names = vec!["a", "g", "mu1", "ell", "rest", "H"];
    let mut plain_names = vec!["a", "g", "mu", "H"];
    refined_names.sort_unstable();
    plain_names.sort_unstable();
    if names == refined_names {
        let key = RefinedKey::new(int("a")?, int("g")?, int("mu1")?, int("ell")?, &parse_list(fields["rest"])?)
            .map_err(|e| e.to_string())?;
        Ok(Record::Refined(key, value("H")?))
    } else if names == plain_names {
        let key = PlainKey::new(int("a")?, int("g")?, &parse_list(fields["mu"])?).map_err(|e| e.to_string())?;
        Ok(Record::Plain(key, value("H")?))
    } else {
        Err(format!("unexpected field set {names:?}"))
    }
}

impl ValueCache {
    /// An empty cache that will be written to `path` on flush.
    pub fn at(path: impl AsRef<Path>) -> Self {
        ValueCache { path: Some(path.as_ref().to_path_buf()), ..Default::default() }
    }

    /// Reads `path`; a missing file gives an empty cache bound to that path.
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = match fs::read_to_string(path) {
            Ok(t) => t,
            Err(e) if e.kind() == io::ErrorKind::NotFound => String::new(),
            Err(source) => return Err(Error::CacheIo { path: path.display().to_string(), source }),
        };
        let mut cache = Self::at(path);
        for (i, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let bad = |msg: String| Error::CacheRecord { line: i + 1, msg };
            let clash = || bad("conflicts with an earlier record for the same key".into());
            match parse_record(line).map_err(bad)? {
                Record::Refined(k, v) => {
                    if cache.refined.get(&k).is_some_and(|old| *old != v) {
                        return Err(clash());
                    }
                    cache.refined.insert(k, v);
                }
                Record::Plain(k, v) => {
                    if cache.plain.get(&k).is_some_and(|old| *old != v) {
                        return Err(clash());
                    }
                    cache.plain.insert(k, v);
                }
            }
        }
        Ok(cache)
    }

    pub fn path(&self) -> Option<&Path> {
        self.path.as_deref()
    }

    pub fn len(&self) -> usize {
        self.refined.len() + self.plain.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_dirty(&self) -> bool {
        self.dirty
    }

    pub fn get_refined(&self, key: &RefinedKey) -> Option<&BigRational> {
        self.refined.get(key)
    }

    pub fn get_plain(&self, key: &PlainKey) -> Option<&BigRational> {
        self.plain.get(key)
    }

    /// Stores `v` unless the key is present; returns the stored value.
    pub fn insert_refined(&mut self, key: RefinedKey, v: BigRational) -> BigRational {
        let dirty = &mut self.dirty;
        self.refined
            .entry(key)
            .or_insert_with(|| {
                *dirty = true;
                v
            })
            .clone()
    }

    pub fn insert_plain(&mut self, key: PlainKey, v: BigRational) -> BigRational {
        let dirty = &mut self.dirty;
        self.plain
            .entry(key)
            .or_insert_with(|| {
                *dirty = true;
                v
            })
            .clone()
    }

    /// All records, sorted, one per line.
    pub fn render(&self) -> String {
        let mut refined: Vec<_> = self.refined.iter().collect();
        refined.sort_by(|x, y| x.0.cmp(y.0));
        let mut plain: Vec<_> = self.plain.iter().collect();
        plain.sort_by(|x, y| x.0.cmp(y.0));
        let mut out = String::new();
        for (k, v) in refined {
            out += &format!(
                "a={} g={} mu1={} ell={} rest={} H={}\n",
                k.a,
                k.g,
                k.mu1,
                k.ell,
                list(&k.rest),
                rational::to_string(v)
            );
        }
        for (k, v) in plain {
            out += &format!("a={} g={} mu={} H={}\n", k.a, k.g, list(&k.mu), rational::to_string(v));
        }
        out
    }

    /// Writes to a sibling temporary file and renames it over the target.
    pub fn flush(&mut self) -> Result<()> {
        let Some(path) = self.path.clone() else { return Ok(()) };
        let io_err = |source| Error::CacheIo { path: path.display().to_string(), source };
        let mut tmp_name = path.file_name().map(|n| n.to_os_string()).unwrap_or_default();
        tmp_name.push(format!(".tmp{}", std::process::id()));
        let tmp = path.with_file_name(tmp_name);
        let mut f = fs::File::create(&tmp).map_err(io_err)?;
        f.write_all(self.render().as_bytes()).map_err(io_err)?;
        f.sync_all().map_err(io_err)?;
        fs::rename(&tmp, &path).map_err(io_err)?;
        self.dirty = false;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::ratio;

    #[test]
    fn rejects_bad_lines_with_their_number() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("c.txt");
        fs::write(&p, "a=2 g=0 mu=4 H=1/2\n\na=2 g=0 mu=4 H=1/2 extra=1\n").unwrap();
        match ValueCache::load(&p) {
            Err(Error::CacheRecord { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
        fs::write(&p, "a=2 g=0 mu1=4 ell=3 rest= H=1\n").unwrap();
        assert!(matches!(ValueCache::load(&p), Err(Error::CacheRecord { line: 1, .. })));
        fs::write(&p, "a=2 g=0 mu=4 H=1/2\na=2 g=0 mu=4 H=1/3\n").unwrap();
        assert!(matches!(ValueCache::load(&p), Err(Error::CacheRecord { line: 2, .. })));
        fs::write(&p, "a=2 g=0 mu=x H=1/2\n").unwrap();
        assert!(ValueCache::load(&p).is_err());
    }

    #[test]
    fn empty_and_missing_files() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("c.txt");
        assert!(ValueCache::load(&p).unwrap().is_empty());
        fs::write(&p, "").unwrap();
        assert!(ValueCache::load(&p).unwrap().is_empty());
    }

    #[test]
    fn first_value_wins() {
        let mut c = ValueCache::default();
        let k = PlainKey::new(2, 0, &[4]).unwrap();
        assert_eq!(c.insert_plain(k.clone(), ratio(1, 2)), ratio(1, 2));
        assert_eq!(c.insert_plain(k, ratio(1, 3)), ratio(1, 2));
        assert!(c.is_dirty());
    }
}
