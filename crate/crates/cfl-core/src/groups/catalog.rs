//! Named reference groups and identification of a computed group against
//! them. The data file ships generators for every named group together with
//! its expected structure fingerprint; on load each group is rebuilt from its
//! generators and the fingerprint is recomputed and compared, so the file
//! cannot drift from the code.

use super::fingerprint::GroupFingerprint;
use super::subgroups::{is_cyclic, isomorphic};
use super::{FiniteGroup, GroupElement, MatrixMode, MulTable, DEFAULT_MAX_ORDER};
use crate::exact::linalg::CycMat;
use crate::exact::poly::{ParamPoly, VarSet};
use crate::{Error, Result};
use std::collections::HashMap;
use std::sync::OnceLock;

const CATALOG_TEXT: &str = include_str!("../../data/catalog.txt");

pub struct CatalogEntry {
    pub label: String,
    pub group: FiniteGroup,
    pub fingerprint: GroupFingerprint,
}

pub struct Catalog {
    pub entries: Vec<CatalogEntry>,
    by_print: HashMap<String, usize>,
}

impl Catalog {
    /// The built-in catalog, parsed once and kept for the process lifetime.
    pub fn builtin() -> &'static Catalog {
        static CAT: OnceLock<Catalog> = OnceLock::new();
        CAT.get_or_init(|| {
            Catalog::parse(CATALOG_TEXT, true).expect("built-in catalog must load")
        })
    }

    pub fn entry(&self, label: &str) -> Option<&CatalogEntry> {
        self.entries.iter().find(|e| e.label == label)
    }

    /// Name the abstract group behind a multiplication table. Cyclic groups
    /// get their order in decimal; everything else is matched by fingerprint
    /// against the catalog and the match is confirmed by an explicit
    /// isomorphism search.
    pub fn identify(&self, t: &MulTable) -> Result<String> {
        if is_cyclic(t) {
            return Ok(super::subgroups::cyclic_label(t.n));
        }
        let print = GroupFingerprint::of(t).to_string();
        match self.by_print.get(&print) {
            None => Err(Error::UnknownGroup(format!(
                "no catalog entry with fingerprint {print}"
            ))),
            Some(&i) => {
                let e = &self.entries[i];
                if !isomorphic(t, &e.group.table) {
                    return Err(Error::Inconsistent(format!(
                        "fingerprint matches {} but groups are not isomorphic",
                        e.label
                    )));
                }
                Ok(e.label.clone())
            }
        }
    }

    /// Parse the catalog text. With `verify` set, stored fingerprints must
    /// match the recomputed ones and be pairwise distinct.
    fn parse(src: &str, verify: bool) -> Result<Catalog> {
        let mut entries: Vec<CatalogEntry> = Vec::new();
        let mut by_print: HashMap<String, usize> = HashMap::new();
        let mut block: Option<(String, GenKind, Vec<GroupElement>, Option<String>)> = None;
        for (lineno, raw) in src.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let bad = |msg: &str| Error::Parse(format!("catalog line {}: {msg}", lineno + 1));
            let mut words = line.split_whitespace();
            match words.next().unwrap() {
                "group" => {
                    if block.is_some() {
                        return Err(bad("previous group block not closed"));
                    }
                    let label = words.next().ok_or_else(|| bad("missing label"))?.to_string();
                    let kind = GenKind::parse(&mut words).map_err(|m| bad(&m))?;
                    block = Some((label, kind, Vec::new(), None));
                }
                "gen" => {
                    let (_, kind, gens, _) =
                        block.as_mut().ok_or_else(|| bad("gen outside a group block"))?;
                    let payload = line["gen".len()..].trim();
                    gens.push(kind.parse_gen(payload).map_err(|m| bad(&m))?);
                }
                "fingerprint" => {
                    let (_, _, _, fp) = block
                        .as_mut()
                        .ok_or_else(|| bad("fingerprint outside a group block"))?;
                    *fp = Some(line["fingerprint".len()..].trim().to_string());
                }
                "end" => {
                    let (label, _, gens, stored) =
                        block.take().ok_or_else(|| bad("end outside a group block"))?;
                    if gens.is_empty() {
                        return Err(bad("group block without generators"));
                    }
                    let group = FiniteGroup::closure(&gens, DEFAULT_MAX_ORDER)?;
                    let fingerprint = GroupFingerprint::of(&group.table);
                    let print = fingerprint.to_string();
                    if verify {
                        let stored = stored.ok_or_else(|| bad("missing fingerprint line"))?;
                        if stored != print {
                            return Err(Error::Inconsistent(format!(
                                "catalog group {label}: stored fingerprint {stored} but computed {print}"
                            )));
                        }
                    }
                    if by_print.insert(print, entries.len()).is_some() {
                        return Err(Error::Inconsistent(format!(
                            "catalog group {label}: fingerprint collides with an earlier entry"
                        )));
                    }
                    entries.push(CatalogEntry { label, group, fingerprint });
                }
                other => return Err(bad(&format!("unknown directive {other}"))),
            }
        }
        if block.is_some() {
            return Err(Error::Parse("catalog ends inside a group block".into()));
        }
        Ok(Catalog { entries, by_print })
    }
}

enum GenKind {
    Perm(usize),
    Matrix(MatrixMode, usize),
}

impl GenKind {
    fn parse(words: &mut std::str::SplitWhitespace<'_>) -> std::result::Result<Self, String> {
        match words.next() {
            Some("perm") => {
                let n = words
                    .next()
                    .and_then(|w| w.parse().ok())
                    .ok_or("perm needs a point count")?;
                Ok(GenKind::Perm(n))
            }
            Some("matrix") => {
                let mode = match words.next() {
                    Some("linear") => MatrixMode::Linear,
                    Some("projective") => MatrixMode::Projective,
                    other => return Err(format!("unknown matrix mode {other:?}")),
                };
                let d = words
                    .next()
                    .and_then(|w| w.parse().ok())
                    .ok_or("matrix needs a dimension")?;
                Ok(GenKind::Matrix(mode, d))
            }
            other => Err(format!("unknown group kind {other:?}")),
        }
    }

    fn parse_gen(&self, payload: &str) -> std::result::Result<GroupElement, String> {
        match self {
            GenKind::Perm(n) => {
                let images: Vec<usize> = payload
                    .split_whitespace()
                    .map(|w| w.parse().map_err(|_| format!("bad image {w}")))
                    .collect::<std::result::Result<_, _>>()?;
                if images.len() != *n {
                    return Err(format!("expected {n} images, got {}", images.len()));
                }
                Ok(GroupElement::perm(images))
            }
            GenKind::Matrix(mode, d) => {
                let vars = VarSet::new(&[]);
                let rows: Vec<Vec<_>> = payload
                    .split(';')
                    .map(|row| {
                        row.split(',')
                            .map(|e| {
                                ParamPoly::parse(&vars, e)
                                    .map_err(|err| err.to_string())?
                                    .as_constant()
                                    .ok_or_else(|| format!("entry {e} is not constant"))
                            })
                            .collect::<std::result::Result<Vec<_>, String>>()
                    })
                    .collect::<std::result::Result<_, _>>()?;
                if rows.len() != *d || rows.iter().any(|r| r.len() != *d) {
                    return Err(format!("expected a {d}x{d} matrix"));
                }
                Ok(GroupElement::matrix(CycMat::from_rows(rows), mode.clone()))
            }
        }
    }
}
