//! Text formats: `.cplx` complexes, cover files, and `corpus:` paths.
//!
//! A `.cplx` file lists one facet per line as space-separated vertex ids.
//! `#` starts a comment; blank lines are ignored. A cover file lists one
//! cover element per line in the same way.

use std::fs;
use std::path::Path;

use crate::constructions::corpus;
use crate::error::{Error, Result};
use crate::simplicial::{Simplex, SimplicialComplex};

fn parse_lines(text: &str) -> Result<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let row = line
            .split_whitespace()
            .map(|x| {
                x.parse::<usize>().map_err(|_| Error::Parse {
                    line: n + 1,
                    message: format!("`{x}` is not a non-negative integer"),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        out.push(row);
    }
    Ok(out)
}

pub fn parse_cplx(text: &str) -> Result<SimplicialComplex> {
    SimplicialComplex::from_facets(parse_lines(text)?)
}

/// One facet per line, facets in stored order.
pub fn write_cplx(complex: &SimplicialComplex) -> String {
    complex
        .facets()
        .iter()
        .map(|f| {
            f.vertices()
                .iter()
                .map(usize::to_string)
                .collect::<Vec<_>>()
                .join(" ")
                + "\n"
        })
        .collect()
}

/// Cover elements as vertex lists. Duplicate vertices within a line are
/// merged.
pub fn parse_cover(text: &str) -> Result<Vec<Vec<usize>>> {
    Ok(parse_lines(text)?
        .into_iter()
        .map(|mut v| {
            v.sort_unstable();
            v.dedup();
            v
        })
        .collect())
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

/// Loads a complex from a `.cplx` file, or a named corpus complex when the
/// path has the form `corpus:<name>`.
pub fn load_complex(path: &str) -> Result<SimplicialComplex> {
    match path.strip_prefix("corpus:") {
        Some(name) => corpus(name),
        None => parse_cplx(&read(Path::new(path))?),
    }
}

pub fn load_cover(path: &str) -> Result<Vec<Vec<usize>>> {
    parse_cover(&read(Path::new(path))?)
}

pub fn save_complex(path: &str, complex: &SimplicialComplex) -> Result<()> {
    fs::write(path, write_cplx(complex)).map_err(|e| Error::Io {
        path: path.to_string(),
        message: e.to_string(),
    })
}

/// Parses a single simplex written as `0,1,2` or `0 1 2`.
pub fn parse_simplex(text: &str) -> Result<Simplex> {
    let verts = text
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|x| !x.is_empty())
        .map(|x| {
            x.parse::<usize>()
                .map_err(|_| Error::InvalidArgument(format!("bad vertex `{x}`")))
        })
        .collect::<Result<Vec<_>>>()?;
    Simplex::new(verts)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cplx_roundtrip() {
        let text = "# hollow triangle\n0 1\n\n1 2 # edge\n0 2\n";
        let k = parse_cplx(text).unwrap();
        assert_eq!(k.vertex_count(), 3);
        assert_eq!(parse_cplx(&write_cplx(&k)).unwrap(), k);
    }

    #[test]
    fn parse_errors() {
        assert_eq!(
            parse_cplx("0 1\n0 x\n"),
            Err(Error::Parse {
                line: 2,
                message: "`x` is not a non-negative integer".into()
            })
        );
        assert_eq!(parse_cplx("# nothing\n"), Err(Error::EmptyInput));
        assert!(matches!(parse_cplx("1 1\n"), Err(Error::MalformedSimplex(_))));
    }

    #[test]
    fn corpus_paths_and_covers() {
        assert_eq!(load_complex("corpus:torus_7").unwrap().vertex_count(), 7);
        assert!(matches!(load_complex("corpus:nope"), Err(Error::UnknownName(_))));
        assert!(matches!(
            load_complex("/nonexistent/x.cplx"),
            Err(Error::Io { .. })
        ));
        assert_eq!(parse_cover("0\n2 1 1\n").unwrap(), vec![vec![0], vec![1, 2]]);
        assert_eq!(parse_simplex("2,0 1").unwrap().vertices(), &[0, 1, 2]);
    }
}
