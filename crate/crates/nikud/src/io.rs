//! File loading and saving for lexicons and corpus metadata.

use std::fs;
use std::io::{self, BufRead, BufReader, Read, Write};
use std::path::Path;

use nikud_core::corpus::{parse_metadata, write_metadata, CorpusError, CorpusItem};
use nikud_core::{Lexicon, LexiconError};

#[derive(Debug, thiserror::Error)]
pub enum IoError {
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
    #[error("{path}: {source}")]
    Lexicon { path: String, source: LexiconError },
    #[error("{path}: {source}")]
    Corpus { path: String, source: CorpusError },
}

fn read(path: &Path) -> Result<String, IoError> {
    fs::read_to_string(path).map_err(|source| IoError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn write(path: &Path, contents: &str) -> Result<(), IoError> {
    fs::write(path, contents).map_err(|source| IoError::Io {
        path: path.display().to_string(),
        source,
    })
}

pub fn load_lexicon(path: &Path) -> Result<Lexicon, IoError> {
    Lexicon::parse_tsv(&read(path)?).map_err(|source| IoError::Lexicon {
        path: path.display().to_string(),
        source,
    })
}

pub fn save_lexicon(path: &Path, lexicon: &Lexicon) -> Result<(), IoError> {
    write(path, &lexicon.to_tsv())
}

pub fn load_metadata(path: &Path) -> Result<Vec<CorpusItem>, IoError> {
    parse_metadata(&read(path)?).map_err(|source| IoError::Corpus {
        path: path.display().to_string(),
        source,
    })
}

pub fn save_metadata(path: &Path, items: &[CorpusItem]) -> Result<(), IoError> {
    write(path, &write_metadata(items))
}

/// A file, or standard input for `None` and `-`.
pub fn open_input(path: Option<&Path>) -> Result<Box<dyn BufRead>, IoError> {
    match path {
        None => Ok(Box::new(BufReader::new(io::stdin()))),
        Some(p) if p.as_os_str() == "-" => Ok(Box::new(BufReader::new(io::stdin()))),
        Some(p) => fs::File::open(p)
            .map(|f| Box::new(BufReader::new(f)) as Box<dyn BufRead>)
            .map_err(|source| IoError::Io {
                path: p.display().to_string(),
                source,
            }),
    }
}

/// A file, or standard output for `None` and `-`.
pub fn open_output(path: Option<&Path>) -> Result<Box<dyn Write>, IoError> {
    match path {
        None => Ok(Box::new(io::BufWriter::new(io::stdout()))),
        Some(p) if p.as_os_str() == "-" => Ok(Box::new(io::BufWriter::new(io::stdout()))),
        Some(p) => fs::File::create(p)
            .map(|f| Box::new(io::BufWriter::new(f)) as Box<dyn Write>)
            .map_err(|source| IoError::Io {
                path: p.display().to_string(),
                source,
            }),
    }
}

/// Reads up to `max` lines, without line terminators.
pub fn read_chunk(input: &mut dyn BufRead, max: usize) -> io::Result<Vec<String>> {
    let mut out = Vec::new();
    let mut buf = String::new();
    while out.len() < max {
        buf.clear();
        if input.read_line(&mut buf)? == 0 {
            break;
        }
        let line = buf.strip_suffix('\n').unwrap_or(&buf);
        out.push(line.strip_suffix('\r').unwrap_or(line).to_string());
    }
    Ok(out)
}

pub fn read_all(path: Option<&Path>) -> Result<String, IoError> {
    let mut input = open_input(path)?;
    let mut s = String::new();
    input.read_to_string(&mut s).map_err(|source| IoError::Io {
        path: path.map_or("<stdin>".into(), |p| p.display().to_string()),
        source,
    })?;
    Ok(s)
}
