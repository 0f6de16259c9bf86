//! Plain-text scene files.
//!
//! A scene bundles the data defining a surface with a group action in fixed
//! coordinates: a variable list, named polynomials over those variables,
//! named points, and named matrix generators. Numeric entries use the
//! expression grammar of the polynomial parser (`z<n>` denotes a primitive
//! n-th root of unity), so everything stays exact.
//!
//! Format, one directive per line, `#` starts a comment:
//!
//! ```text
//! scene <name>
//! vars <v1> <v2> ...
//! poly <name> <expression>
//! point <name> <c1>, <c2>, ...
//! gen <name> <a11>, <a12>, ... ; <a21>, ... ; ...
//! end
//! ```

use std::sync::Arc;

use crate::exact::linalg::CycMat;
use crate::exact::poly::{ParamPoly, VarSet};
use crate::exact::cyclotomic::Cyclotomic;
use crate::{Error, Result};

#[derive(Debug, Clone)]
pub struct SceneData {
    pub name: String,
    pub vars: Arc<VarSet>,
    pub polys: Vec<(String, ParamPoly)>,
    pub points: Vec<(String, Vec<Cyclotomic>)>,
    pub gens: Vec<(String, CycMat)>,
}

impl SceneData {
    pub fn poly(&self, name: &str) -> Result<&ParamPoly> {
        self.polys
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, p)| p)
            .ok_or_else(|| Error::Parse(format!("scene {}: no polynomial {name}", self.name)))
    }

    pub fn point(&self, name: &str) -> Result<&[Cyclotomic]> {
        self.points
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, p)| p.as_slice())
            .ok_or_else(|| Error::Parse(format!("scene {}: no point {name}", self.name)))
    }

    pub fn gen(&self, name: &str) -> Result<&CycMat> {
        self.gens
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, m)| m)
            .ok_or_else(|| Error::Parse(format!("scene {}: no generator {name}", self.name)))
    }

    /// All generator matrices in declaration order.
    pub fn gen_matrices(&self) -> Vec<CycMat> {
        self.gens.iter().map(|(_, m)| m.clone()).collect()
    }

    /// Parse a single scene from text.
    pub fn parse(src: &str) -> Result<SceneData> {
        let scenes = parse_scenes(src)?;
        match scenes.len() {
            1 => Ok(scenes.into_iter().next().unwrap()),
            n => Err(Error::Parse(format!("expected exactly one scene, found {n}"))),
        }
    }

    pub fn from_file(path: &std::path::Path) -> Result<SceneData> {
        let text = std::fs::read_to_string(path)?;
        Self::parse(&text)
    }
}

/// Parse a file that may contain several scenes.
pub fn parse_scenes(src: &str) -> Result<Vec<SceneData>> {
    let consts = VarSet::new(&[]);
    let mut scenes = Vec::new();
    let mut current: Option<SceneData> = None;

    for (lineno, raw) in src.lines().enumerate() {
        let line = match raw.find('#') {
            Some(i) => &raw[..i],
            None => raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: String| Error::Parse(format!("scene file line {}: {msg}", lineno + 1));
        let (word, rest) = match line.split_once(char::is_whitespace) {
            Some((w, r)) => (w, r.trim()),
            None => (line, ""),
        };
        match word {
            "scene" => {
                if current.is_some() {
                    return Err(err("previous scene not closed with 'end'".into()));
                }
                if rest.is_empty() {
                    return Err(err("scene needs a name".into()));
                }
                current = Some(SceneData {
                    name: rest.to_string(),
                    vars: VarSet::new(&[]),
                    polys: Vec::new(),
                    points: Vec::new(),
                    gens: Vec::new(),
                });
            }
            "vars" => {
                let sc = current.as_mut().ok_or_else(|| err("'vars' outside scene".into()))?;
                let names: Vec<&str> = rest.split_whitespace().collect();
                if names.is_empty() {
                    return Err(err("empty variable list".into()));
                }
                for n in &names {
                    let head = n.chars().next().unwrap();
                    if !(head.is_ascii_alphabetic() || head == '_') {
                        return Err(err(format!("bad variable name '{n}'")));
                    }
                }
                let mut dedup = names.clone();
                dedup.sort_unstable();
                dedup.dedup();
                if dedup.len() != names.len() {
                    return Err(err("duplicate variable names".into()));
                }
                sc.vars = VarSet::new(&names);
            }
            "poly" => {
                let sc = current.as_mut().ok_or_else(|| err("'poly' outside scene".into()))?;
                let (name, body) = rest
                    .split_once(char::is_whitespace)
                    .ok_or_else(|| err("poly needs a name and an expression".into()))?;
                let p = ParamPoly::parse(&sc.vars, body.trim())
                    .map_err(|e| err(format!("in polynomial {name}: {e}")))?;
                sc.polys.push((name.to_string(), p));
            }
            "point" => {
                let sc = current.as_mut().ok_or_else(|| err("'point' outside scene".into()))?;
                let (name, body) = rest
                    .split_once(char::is_whitespace)
                    .ok_or_else(|| err("point needs a name and coordinates".into()))?;
                let coords = parse_constants(&consts, body)
                    .map_err(|e| err(format!("in point {name}: {e}")))?;
                sc.points.push((name.to_string(), coords));
            }
            "gen" => {
                let sc = current.as_mut().ok_or_else(|| err("'gen' outside scene".into()))?;
                let (name, body) = rest
                    .split_once(char::is_whitespace)
                    .ok_or_else(|| err("gen needs a name and matrix rows".into()))?;
                let mut rows = Vec::new();
                for chunk in body.split(';') {
                    rows.push(
                        parse_constants(&consts, chunk)
                            .map_err(|e| err(format!("in generator {name}: {e}")))?,
                    );
                }
                let w = rows[0].len();
                if rows.iter().any(|r| r.len() != w) {
                    return Err(err(format!("generator {name} has ragged rows")));
                }
                sc.gens.push((name.to_string(), CycMat::from_rows(rows)));
            }
            "end" => {
                let sc = current.take().ok_or_else(|| err("'end' outside scene".into()))?;
                scenes.push(sc);
            }
            other => return Err(err(format!("unknown directive '{other}'"))),
        }
    }
    if current.is_some() {
        return Err(Error::Parse("scene file ended inside a scene".into()));
    }
    Ok(scenes)
}

fn parse_constants(consts: &Arc<VarSet>, body: &str) -> Result<Vec<Cyclotomic>> {
    body.split(',')
        .map(|piece| {
            let p = ParamPoly::parse(consts, piece.trim())?;
            p.as_constant()
                .ok_or_else(|| Error::Parse(format!("'{}' is not constant", piece.trim())))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip_small_scene() {
        let text = "\n# demo\nscene demo\nvars x y\npoly f x^2 + z3*y^2\npoint p 1, -1\ngen s 0, 1; 1, 0\nend\n";
        let sc = SceneData::parse(text).unwrap();
        assert_eq!(sc.name, "demo");
        assert_eq!(sc.vars.len(), 2);
        let f = sc.poly("f").unwrap();
        assert_eq!(f.total_degree(), 2);
        assert_eq!(sc.point("p").unwrap().len(), 2);
        let s = sc.gen("s").unwrap();
        assert_eq!((s.rows, s.cols), (2, 2));
        assert!(s.pow(2).sub(&CycMat::identity(2)).rank() == 0);
        assert!(sc.poly("missing").is_err());
    }

    #[test]
    fn rejects_malformed_input() {
        assert!(SceneData::parse("vars x\n").is_err());
        assert!(SceneData::parse("scene a\n").is_err());
        assert!(SceneData::parse("scene a\nbogus 1\nend\n").is_err());
        assert!(SceneData::parse("scene a\ngen m 1,0; 1\nend\n").is_err());
        assert!(SceneData::parse("scene a\npoint p x, 1\nend\n").is_err());
    }
}
