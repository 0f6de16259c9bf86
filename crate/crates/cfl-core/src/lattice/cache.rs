//! On-disk cache for Weyl group element lists.
//!
//! Layout: magic `WCLS1`, one byte for the degree, little-endian u64 element
//! count, then the packed `i8` matrices (row-major, rank x rank) in discovery
//! order, and finally a CRC32 (IEEE) of everything before it. Discovery order
//! is deterministic, so rebuilding always reproduces the same bytes.

use super::{weyl_closure, PackedIso, WeylGroup};
use crate::{Error, Result};
use std::fs;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::{Path, PathBuf};

const MAGIC: &[u8; 5] = b"WCLS1";

struct Crc32 {
    table: [u32; 256],
    state: u32,
}

impl Crc32 {
    fn new() -> Self {
        let mut table = [0u32; 256];
        for (i, slot) in table.iter_mut().enumerate() {
            let mut c = i as u32;
            for _ in 0..8 {
                c = if c & 1 == 1 { 0xEDB88320 ^ (c >> 1) } else { c >> 1 };
            }
            *slot = c;
        }
        Crc32 { table, state: 0xFFFF_FFFF }
    }

    fn update(&mut self, data: &[u8]) {
        for &b in data {
            self.state = self.table[((self.state ^ b as u32) & 0xFF) as usize] ^ (self.state >> 8);
        }
    }

    fn finish(&self) -> u32 {
        self.state ^ 0xFFFF_FFFF
    }
}

/// Conventional cache file name for a degree.
pub fn cache_file_name(degree: u32) -> String {
    format!("weyl-d{degree}.wcls")
}

pub fn cache_path(dir: &Path, degree: u32) -> PathBuf {
    dir.join(cache_file_name(degree))
}

/// Write the group to the cache file (atomically via a sibling temp file).
pub fn save(dir: &Path, group: &WeylGroup) -> Result<PathBuf> {
    fs::create_dir_all(dir)?;
    let final_path = cache_path(dir, group.degree);
    let tmp_path = dir.join(format!(".{}.tmp", cache_file_name(group.degree)));
    {
        let mut w = BufWriter::new(fs::File::create(&tmp_path)?);
        let mut crc = Crc32::new();
        let emit = |w: &mut BufWriter<fs::File>, crc: &mut Crc32, bytes: &[u8]| -> Result<()> {
            crc.update(bytes);
            w.write_all(bytes)?;
            Ok(())
        };
        emit(&mut w, &mut crc, MAGIC)?;
        emit(&mut w, &mut crc, &[group.degree as u8])?;
        emit(&mut w, &mut crc, &(group.elems.len() as u64).to_le_bytes())?;
        let r = group.rank;
        let mut row = Vec::with_capacity(r * r);
        for e in &group.elems {
            row.clear();
            for i in 0..r {
                for j in 0..r {
                    row.push(e[8 * i + j] as u8);
                }
            }
            emit(&mut w, &mut crc, &row)?;
        }
        w.write_all(&crc.finish().to_le_bytes())?;
        w.flush()?;
    }
    fs::rename(&tmp_path, &final_path)?;
    Ok(final_path)
}

fn corrupt(path: &Path, why: &str) -> Error {
    Error::Cache(format!("cache file {} is corrupt: {why}", path.display()))
}

fn open(path: &Path) -> Result<fs::File> {
    match fs::File::open(path) {
        Ok(f) => Ok(f),
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => Err(Error::Cache(format!(
            "cache file {} not found (build it first)",
            path.display()
        ))),
        Err(e) => Err(e.into()),
    }
}

fn read_header(path: &Path, r: &mut impl Read, crc: &mut Crc32, degree: u32) -> Result<u64> {
    let mut head = [0u8; 14];
    r.read_exact(&mut head).map_err(|_| corrupt(path, "truncated header"))?;
    crc.update(&head);
    if &head[..5] != MAGIC {
        return Err(corrupt(path, "bad magic"));
    }
    if head[5] as u32 != degree {
        return Err(corrupt(path, &format!("degree mismatch: file has {}", head[5])));
    }
    Ok(u64::from_le_bytes(head[6..14].try_into().unwrap()))
}

/// Load a cached group, verifying the checksum.
pub fn load(dir: &Path, degree: u32) -> Result<WeylGroup> {
    let path = cache_path(dir, degree);
    let mut f = BufReader::new(open(&path)?);
    let mut crc = Crc32::new();
    let count = read_header(&path, &mut f, &mut crc, degree)?;
    let rank = (10 - degree) as usize;
    let mut elems: Vec<PackedIso> = Vec::with_capacity(count as usize);
    let mut buf = vec![0u8; rank * rank];
    for _ in 0..count {
        f.read_exact(&mut buf).map_err(|_| corrupt(&path, "truncated element data"))?;
        crc.update(&buf);
        let mut e = [0i8; 64];
        for i in 0..rank {
            for j in 0..rank {
                e[8 * i + j] = buf[rank * i + j] as i8;
            }
        }
        elems.push(e);
    }
    let mut tail = [0u8; 4];
    f.read_exact(&mut tail).map_err(|_| corrupt(&path, "missing checksum"))?;
    if u32::from_le_bytes(tail) != crc.finish() {
        return Err(corrupt(&path, "checksum mismatch"));
    }
    if f.read(&mut [0u8; 1])? != 0 {
        return Err(corrupt(&path, "trailing bytes"));
    }
    Ok(WeylGroup { degree, rank, elems })
}

/// Check integrity without materializing the elements; returns the count.
pub fn verify(dir: &Path, degree: u32) -> Result<u64> {
    let path = cache_path(dir, degree);
    let mut f = BufReader::new(open(&path)?);
    let mut crc = Crc32::new();
    let count = read_header(&path, &mut f, &mut crc, degree)?;
    let rank = (10 - degree) as u64;
    let mut remaining = count
        .checked_mul(rank * rank)
        .ok_or_else(|| corrupt(&path, "element count overflow"))?;
    let mut buf = vec![0u8; 1 << 20];
    while remaining > 0 {
        let take = remaining.min(buf.len() as u64) as usize;
        f.read_exact(&mut buf[..take]).map_err(|_| corrupt(&path, "truncated element data"))?;
        crc.update(&buf[..take]);
        remaining -= take as u64;
    }
    let mut tail = [0u8; 4];
    f.read_exact(&mut tail).map_err(|_| corrupt(&path, "missing checksum"))?;
    if u32::from_le_bytes(tail) != crc.finish() {
        return Err(corrupt(&path, "checksum mismatch"));
    }
    if f.read(&mut [0u8; 1])? != 0 {
        return Err(corrupt(&path, "trailing bytes"));
    }
    Ok(count)
}

/// Load from cache if present and valid, otherwise build and store.
pub fn load_or_build(dir: &Path, degree: u32) -> Result<WeylGroup> {
    match load(dir, degree) {
        Ok(g) => Ok(g),
        Err(Error::Cache(_)) => {
            let g = weyl_closure(degree);
            save(dir, &g)?;
            Ok(g)
        }
        Err(e) => Err(e),
    }
}
