//! On-disk cache of constructed representations: one JSON file per
//! (n, canonical label text), matrices stored as canonical scalar strings.

use crate::scalar::parse_scalar;
use greenring::algebra::HopfContext;
use greenring::decompose::{construct, ModuleLabel};
use greenring::exactfield::ExtScalar;
use greenring::linalg::MatrixF;
use greenring::repmod::Representation;
use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};

#[derive(Serialize, Deserialize)]
pub struct RepFile {
    pub n: usize,
    pub label: String,
    pub dim: usize,
    pub a: Vec<Vec<String>>,
    pub b: Vec<Vec<String>>,
    pub c: Vec<Vec<String>>,
    pub d: Vec<Vec<String>>,
}

fn matrix_to_rows(m: &MatrixF) -> Vec<Vec<String>> {
    (0..m.rows)
        .map(|r| (0..m.cols).map(|c| m.at(r, c).to_string()).collect())
        .collect()
}

fn matrix_from_rows(ctx: &HopfContext, rows: &[Vec<String>]) -> Result<MatrixF, String> {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, Vec::len);
    let mut m = MatrixF::zero(&ctx.field, nrows, ncols);
    for (r, row) in rows.iter().enumerate() {
        if row.len() != ncols {
            return Err("ragged matrix rows in cache file".into());
        }
        for (c, text) in row.iter().enumerate() {
            match parse_scalar(text, &ctx.field).map_err(|e| e.to_string())? {
                ExtScalar::Fin(v) => *m.at_mut(r, c) = v,
                ExtScalar::Infinity => return Err("infinite matrix entry in cache file".into()),
            }
        }
    }
    Ok(m)
}

pub fn rep_to_file(ctx: &HopfContext, label: &ModuleLabel, rep: &Representation) -> RepFile {
    RepFile {
        n: ctx.n,
        label: label.to_string(),
        dim: rep.dim,
        a: matrix_to_rows(&rep.a),
        b: matrix_to_rows(&rep.b),
        c: matrix_to_rows(&rep.c),
        d: matrix_to_rows(&rep.d),
    }
}

pub fn rep_from_file(ctx: &HopfContext, file: &RepFile) -> Result<Representation, String> {
    if file.n != ctx.n {
        return Err(format!("cache file is for n={}, context has n={}", file.n, ctx.n));
    }
    Ok(Representation {
        dim: file.dim,
        a: matrix_from_rows(ctx, &file.a)?,
        b: matrix_from_rows(ctx, &file.b)?,
        c: matrix_from_rows(ctx, &file.c)?,
        d: matrix_from_rows(ctx, &file.d)?,
    })
}

/// Filesystem-safe encoding of a label text ('/' appears in rational
/// coefficients, '*' in products).
fn sanitize(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for ch in text.chars() {
        match ch {
            '/' => out.push_str("%2F"),
            '*' => out.push_str("%2A"),
            ' ' => out.push_str("%20"),
            '%' => out.push_str("%25"),
            c => out.push(c),
        }
    }
    out
}

pub fn cache_path(dir: &Path, n: usize, label: &ModuleLabel) -> PathBuf {
    dir.join(format!("n{}__{}.json", n, sanitize(&label.to_string())))
}

/// The cache directory: explicit flag first, then the GREENRING_CACHE
/// environment variable.
pub fn resolve_dir(flag: Option<&Path>) -> Option<PathBuf> {
    if let Some(p) = flag {
        return Some(p.to_path_buf());
    }
    std::env::var_os("GREENRING_CACHE").map(PathBuf::from)
}

/// Loads the representation for a label from the cache, building and
/// storing it on a miss. Without a cache directory this is plain
/// construction.
pub fn load_or_build(
    ctx: &HopfContext,
    dir: Option<&Path>,
    label: &ModuleLabel,
) -> Result<Representation, String> {
    let Some(dir) = dir else {
        return Ok(construct(ctx, label));
    };
    let path = cache_path(dir, ctx.n, label);
    if path.exists() {
        let text = std::fs::read_to_string(&path).map_err(|e| e.to_string())?;
        let file: RepFile = serde_json::from_str(&text).map_err(|e| e.to_string())?;
        return rep_from_file(ctx, &file);
    }
    let rep = construct(ctx, label);
    std::fs::create_dir_all(dir).map_err(|e| e.to_string())?;
    let file = rep_to_file(ctx, label, &rep);
    std::fs::write(&path, serde_json::to_string_pretty(&file).map_err(|e| e.to_string())?)
        .map_err(|e| e.to_string())?;
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use greenring::exactfield::ExtScalar;

    #[test]
    fn roundtrip_is_bit_exact() {
        let h = HopfContext::new(3).unwrap();
        let dir = std::env::temp_dir().join(format!("greenring-cache-test-{}", std::process::id()));
        let _ = std::fs::remove_dir_all(&dir);
        let labels = [
            ModuleLabel::proj(3, 1, 0),
            ModuleLabel::string(3, -1, 2, 1),
            ModuleLabel::band(3, 2, 1, 0, ExtScalar::Infinity),
        ];
        for label in &labels {
            let fresh = construct(&h, label);
            let stored = load_or_build(&h, Some(&dir), label).unwrap();
            assert_eq!(stored, fresh);
            // Second load comes from disk; the text forms must agree exactly.
            let reloaded = load_or_build(&h, Some(&dir), label).unwrap();
            let t1 = serde_json::to_string(&rep_to_file(&h, label, &reloaded)).unwrap();
            let t2 = serde_json::to_string(&rep_to_file(&h, label, &fresh)).unwrap();
            assert_eq!(t1, t2);
        }
        let _ = std::fs::remove_dir_all(&dir);
    }
}
