//! The bundled complexes, certificates and link diagram.

use std::path::{Path, PathBuf};

use crate::collapse::CollapseCertificate;
use crate::error::{Error, Result};
use crate::group::LinkDiagram;
use crate::simplicial::SimplicialComplex;

const EMBEDDED: [(&str, &str); 9] = [
    ("dunce_hat.scx", include_str!("../assets/dunce_hat.scx")),
    ("jester_hat.scx", include_str!("../assets/jester_hat.scx")),
    ("jester_A.scx", include_str!("../assets/jester_A.scx")),
    ("jester_B.scx", include_str!("../assets/jester_B.scx")),
    ("jester_C.scx", include_str!("../assets/jester_C.scx")),
    ("jester_A.cert", include_str!("../assets/jester_A.cert")),
    ("jester_B.cert", include_str!("../assets/jester_B.cert")),
    ("jester_C.cert", include_str!("../assets/jester_C.cert")),
    ("mazur_link.lnk", include_str!("../assets/mazur_link.lnk")),
];

/// File names of every bundled asset.
pub fn asset_names() -> impl Iterator<Item = &'static str> {
    EMBEDDED.iter().map(|(n, _)| *n)
}

/// Where assets are read from: the copies compiled into the crate, or a
/// directory holding files of the same names.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub enum AssetSource {
    #[default]
    Embedded,
    Dir(PathBuf),
}

impl AssetSource {
    pub fn dir(path: impl AsRef<Path>) -> Self {
        AssetSource::Dir(path.as_ref().to_path_buf())
    }

    pub fn read(&self, file: &str) -> Result<String> {
        match self {
            AssetSource::Embedded => EMBEDDED
                .iter()
                .find(|(n, _)| *n == file)
                .map(|(_, text)| (*text).to_owned())
                .ok_or_else(|| Error::Io(format!("{file}: no such bundled asset"))),
            AssetSource::Dir(dir) => {
                let path = dir.join(file);
                std::fs::read_to_string(&path)
                    .map_err(|e| Error::Io(format!("{}: {e}", path.display())))
            }
        }
    }

    /// Complex named after the file stem.
    pub fn complex(&self, file: &str) -> Result<SimplicialComplex> {
        SimplicialComplex::parse_scx(stem(file), &self.read(file)?)
    }

    pub fn certificate(&self, file: &str) -> Result<CollapseCertificate> {
        CollapseCertificate::parse(stem(file), &self.read(file)?)
    }

    pub fn link(&self, file: &str) -> Result<LinkDiagram> {
        LinkDiagram::parse_lnk(&self.read(file)?)
    }
}

pub fn stem(file: &str) -> &str {
    Path::new(file)
        .file_stem()
        .and_then(|s| s.to_str())
        .unwrap_or(file)
}
