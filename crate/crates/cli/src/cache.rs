//! Gzip basis cache: a JSON header line, then one canonical encoding per line.

use std::fs::{self, File};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use bubble_core::basis::enumerate_basis_bounded;
use bubble_core::diagram::{Diagram, Palette};
use flate2::read::GzDecoder;
use flate2::write::GzEncoder;
use flate2::Compression;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::CliError;

pub const CACHE_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Header {
    pub version: u32,
    pub n: usize,
    pub count: usize,
    pub hash: String,
}

/// SHA-256 of the concatenated encodings, hex.
pub fn digest<'a>(encodings: impl IntoIterator<Item = &'a str>) -> String {
    let mut h = Sha256::new();
    for e in encodings {
        h.update(e.as_bytes());
    }
    hex::encode(h.finalize())
}

pub fn cache_path(dir: &Path, n: usize, palette: Palette) -> PathBuf {
    let tag = match palette {
        Palette::Bi => "bi",
        Palette::Mono => "mono",
    };
    dir.join(format!("basis-{tag}-{n}.txt.gz"))
}

pub fn write(path: &Path, n: usize, basis: &[Diagram]) -> Result<(), CliError> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir).map_err(|e| CliError::io(dir.display(), e))?;
    }
    let encodings: Vec<String> = basis.iter().map(Diagram::encode).collect();
    let header = Header {
        version: CACHE_VERSION,
        n,
        count: basis.len(),
        hash: digest(encodings.iter().map(String::as_str)),
    };
    let io = |e| CliError::io(path.display(), e);
    // write beside the target, then rename, so readers never see half a file
    let tmp = path.with_extension("gz.part");
    let mut gz = GzEncoder::new(File::create(&tmp).map_err(io)?, Compression::default());
    let line = serde_json::to_string(&header).expect("header serialises");
    writeln!(gz, "{line}").map_err(io)?;
    for e in &encodings {
        writeln!(gz, "{e}").map_err(io)?;
    }
    gz.finish().map_err(io)?;
    fs::rename(&tmp, path).map_err(io)
}

pub fn read(path: &Path, n: usize) -> Result<Vec<Diagram>, CliError> {
    let bad = |why: String| CliError::Cache {
        path: path.display().to_string(),
        why,
    };
    let file = File::open(path).map_err(|e| CliError::io(path.display(), e))?;
    let mut lines = BufReader::new(GzDecoder::new(file)).lines();
    let first = lines
        .next()
        .ok_or_else(|| bad("empty file".into()))?
        .map_err(|e| bad(e.to_string()))?;
    let header: Header = serde_json::from_str(&first).map_err(|e| bad(e.to_string()))?;
    if header.version != CACHE_VERSION || header.n != n {
        return Err(bad(format!("header {header:?} does not describe n = {n}")));
    }
    let mut encodings = Vec::with_capacity(header.count);
    for line in lines {
        encodings.push(line.map_err(|e| bad(e.to_string()))?);
    }
    if encodings.len() != header.count {
        return Err(bad(format!(
            "{} diagrams, header says {}",
            encodings.len(),
            header.count
        )));
    }
    if digest(encodings.iter().map(String::as_str)) != header.hash {
        return Err(bad("hash mismatch".into()));
    }
    encodings
        .iter()
        .map(|e| e.parse::<Diagram>().map_err(|err| bad(err.to_string())))
        .collect()
}

/// The basis from the cache when it is present and intact; otherwise a fresh
/// enumeration, written back when a cache directory is configured.
pub fn load_basis(
    dir: Option<&Path>,
    n: usize,
    palette: Palette,
    max_n: usize,
) -> Result<Vec<Diagram>, CliError> {
    let Some(dir) = dir else {
        return Ok(enumerate_basis_bounded(n, palette, max_n)?);
    };
    let path = cache_path(dir, n, palette);
    if path.exists() {
        match read(&path, n) {
            Ok(b) => return Ok(b),
            Err(e) => eprintln!("warning: {e}; rebuilding"),
        }
    }
    let basis = enumerate_basis_bounded(n, palette, max_n)?;
    write(&path, n, &basis)?;
    Ok(basis)
}
