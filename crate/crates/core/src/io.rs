//! JSON encodings shared by the library and the command-line tool.
//!
//! Matrices are `{"dim": d, "entries": [[[re, im], ...], ...]}`, row-major.
//! Floats are written with 17 significant digits so that files round-trip
//! bit-exactly.

use std::io;

use serde::de::{DeserializeOwned, Error as _};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::ser::Formatter;

use crate::error::{Error, Result};
use crate::geam::{Geam, GeamParams};
use crate::gsm::{GsmFamily, GsmParams};
use crate::operator::{c64, HermitianOperator};
use crate::tomography::ProbabilityTable;

#[derive(Serialize, Deserialize)]
struct MatrixJson {
    dim: usize,
    entries: Vec<Vec<[f64; 2]>>,
}

impl Serialize for HermitianOperator {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let d = self.dim();
        let entries = (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| {
                        let z = self.get(i, j);
                        [z.re, z.im]
                    })
                    .collect()
            })
            .collect();
        MatrixJson { dim: d, entries }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for HermitianOperator {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let raw = MatrixJson::deserialize(de)?;
        if raw.entries.len() != raw.dim || raw.entries.iter().any(|r| r.len() != raw.dim) {
            return Err(D::Error::custom(format!("entries are not {0}x{0}", raw.dim)));
        }
        let rows = raw
            .entries
            .into_iter()
            .map(|r| r.into_iter().map(|[re, im]| c64(re, im)).collect())
            .collect();
        HermitianOperator::from_rows(rows).map_err(D::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
struct GsmJson {
    d: usize,
    sizes: Vec<usize>,
    t: Option<Vec<f64>>,
    elements: Vec<Vec<HermitianOperator>>,
    params: GsmParams,
}

impl Serialize for GsmFamily {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GsmJson {
            d: self.d,
            sizes: self.sizes.clone(),
            t: self.t.clone(),
            elements: self.lines.clone(),
            params: self.params.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for GsmFamily {
    /// Stored parameters are ignored and refitted from the elements.
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let raw = GsmJson::deserialize(de)?;
        let mut f = GsmFamily::from_lines(raw.d, raw.elements).map_err(D::Error::custom)?;
        if f.sizes != raw.sizes {
            return Err(D::Error::custom(format!("sizes {:?} do not match elements", raw.sizes)));
        }
        f.t = raw.t;
        Ok(f)
    }
}

#[derive(Serialize, Deserialize)]
struct GeamJson {
    d: usize,
    sizes: Vec<usize>,
    gammas: Vec<f64>,
    elements: Vec<Vec<HermitianOperator>>,
    params: GeamParams,
}

impl Serialize for Geam {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GeamJson {
            d: self.d,
            sizes: self.sizes.clone(),
            gammas: self.gammas.clone(),
            elements: self.lines.clone(),
            params: self.params.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Geam {
    /// Stored parameters are ignored and refitted from the elements.
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let raw = GeamJson::deserialize(de)?;
        let g = Geam::from_lines(raw.d, raw.gammas, raw.elements).map_err(D::Error::custom)?;
        if g.sizes != raw.sizes {
            return Err(D::Error::custom(format!("sizes {:?} do not match elements", raw.sizes)));
        }
        Ok(g)
    }
}

/// serde_json formatter writing every `f64` as `{:.16e}`.
#[derive(Default, Clone, Copy)]
pub struct Sig17;

impl Formatter for Sig17 {
    fn write_f64<W: ?Sized + io::Write>(&mut self, w: &mut W, value: f64) -> io::Result<()> {
        write!(w, "{value:.16e}")
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, w: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(w, value as f64)
    }
}

/// Serializes with [`Sig17`].
pub fn to_json_string<T: Serialize + ?Sized>(value: &T) -> Result<String> {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, Sig17);
    value.serialize(&mut ser).map_err(|e| Error::Parse(e.to_string()))?;
    String::from_utf8(buf).map_err(|e| Error::Parse(e.to_string()))
}

pub fn from_json_str<T: DeserializeOwned>(s: &str) -> Result<T> {
    serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
}

pub fn read_json<T: DeserializeOwned>(path: &std::path::Path) -> Result<T> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    from_json_str(&text)
}

pub fn write_json<T: Serialize + ?Sized>(path: &std::path::Path, value: &T) -> Result<()> {
    let text = to_json_string(value)?;
    std::fs::write(path, text + "\n").map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

/// Probability tables use their serde form directly but are revalidated.
pub fn table_from_json(s: &str) -> Result<ProbabilityTable> {
    #[derive(Deserialize)]
    struct Raw {
        sizes: Vec<usize>,
        p: Vec<Vec<f64>>,
    }
    let raw: Raw = from_json_str(s)?;
    let t = ProbabilityTable::new(raw.p)?;
    if t.sizes != raw.sizes {
        return Err(Error::Parse(format!("sizes {:?} do not match p", raw.sizes)));
    }
    Ok(t)
}
