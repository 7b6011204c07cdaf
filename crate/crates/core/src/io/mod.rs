//! On-disk formats: edge lists, embedding files (GGE1 binary and CSV),
//! ensemble manifests and JSON reports.

pub mod edge_list;
pub mod embeddings;
pub mod manifest;
pub mod report;

use std::io::Read;
use std::path::Path;

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

pub use edge_list::{load_edge_list, parse_edge_list, parse_id_map, IdMap, LoadedGraph, NodeIds};
pub use embeddings::{
    decode_embeddings, encode_csv, encode_gge1, load_embeddings, load_embeddings_with_digest,
    read_embeddings, write_csv, write_gge1, GGE1_HEADER_LEN, GGE1_MAGIC,
};
pub use manifest::{EnsembleManifest, ResolvedManifest};
pub use report::{ConfigScore, InputDigest, ReportDocument};

/// Hex SHA-256 of a byte slice.
pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Reads a whole file, returning its bytes and their SHA-256.
pub fn read_with_digest(path: &Path) -> Result<(Vec<u8>, String)> {
    let bytes = std::fs::read(path).map_err(|e| Error::io(path, e))?;
    let digest = sha256_hex(&bytes);
    Ok((bytes, digest))
}

/// Reader adapter that hashes everything read through it.
pub(crate) struct HashingReader<R> {
    inner: R,
    hasher: Sha256,
}

impl<R: Read> HashingReader<R> {
    pub(crate) fn new(inner: R) -> Self {
        Self {
            inner,
            hasher: Sha256::new(),
        }
    }

    pub(crate) fn finish(self) -> String {
        hex::encode(self.hasher.finalize())
    }
}

impl<R: Read> Read for HashingReader<R> {
    fn read(&mut self, buf: &mut [u8]) -> std::io::Result<usize> {
        let n = self.inner.read(buf)?;
        self.hasher.update(&buf[..n]);
        Ok(n)
    }
}
