//! JSON and CSV interchange for MUB sets in exponent form.

use mubkit::mub::{Basis, BasisVector, FieldMeta, Method, MubSet, RingMeta};
use serde::{Deserialize, Serialize};

pub const NORMALIZATION: &str = "1/sqrt(d)";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldJson {
    pub p: u32,
    pub m: u32,
    pub modulus: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingJson {
    pub m: u32,
    pub basic_irreducible: Vec<u8>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisJson {
    pub label: String,
    pub kind: String,
    /// Exponents per position for phase vectors, `[x]` for the unit vector |x⟩.
    pub vectors: Vec<Vec<u32>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExportedMubSet {
    pub dimension: usize,
    pub conductor: u32,
    pub method: String,
    pub field: Option<FieldJson>,
    pub ring: Option<RingJson>,
    pub bases: Vec<BasisJson>,
    pub normalization: String,
    #[serde(default)]
    pub completeness_claimed: bool,
    #[serde(default)]
    pub claimed_mub_indices: Vec<usize>,
}

pub fn to_export(s: &MubSet) -> ExportedMubSet {
    ExportedMubSet {
        dimension: s.dimension,
        conductor: s.conductor,
        method: s.method.to_string(),
        field: s.field.as_ref().map(|f| FieldJson {
            p: f.p,
            m: f.m,
            modulus: f.modulus.clone(),
        }),
        ring: s.ring.as_ref().map(|r| RingJson {
            m: r.m,
            basic_irreducible: r.basic_irreducible.clone(),
        }),
        bases: s
            .bases
            .iter()
            .map(|b| BasisJson {
                label: b.label.clone(),
                kind: b.kind().as_str().into(),
                vectors: b
                    .vectors
                    .iter()
                    .map(|v| match v {
                        BasisVector::Phase(e) => e.clone(),
                        BasisVector::Unit(x) => vec![*x as u32],
                    })
                    .collect(),
            })
            .collect(),
        normalization: NORMALIZATION.into(),
        completeness_claimed: s.completeness_claimed,
        claimed_mub_indices: s.claimed_mub_indices.clone(),
    }
}

pub fn to_json(s: &MubSet) -> String {
    let mut out = serde_json::to_string_pretty(&to_export(s)).expect("plain data serializes");
    out.push('\n');
    out
}

pub fn from_export(e: &ExportedMubSet) -> Result<MubSet, String> {
    let d = e.dimension;
    let n = e.conductor;
    if d < 2 {
        return Err(format!("dimension must be at least 2, got {d}"));
    }
    if n == 0 {
        return Err("conductor must be positive".into());
    }
    if e.normalization != NORMALIZATION {
        return Err(format!("unsupported normalization {:?}", e.normalization));
    }
    let method =
        Method::parse(&e.method).ok_or_else(|| format!("unknown method {:?}", e.method))?;
    let mut bases = Vec::with_capacity(e.bases.len());
    for b in &e.bases {
        if b.vectors.len() != d {
            return Err(format!(
                "basis {} has {} vectors, expected {d}",
                b.label,
                b.vectors.len()
            ));
        }
        let vectors = b
            .vectors
            .iter()
            .enumerate()
            .map(|(i, v)| match (b.kind.as_str(), v.len()) {
                ("computational", 1) | ("mixed", 1) if (v[0] as usize) < d => {
                    Ok(BasisVector::Unit(v[0] as usize))
                }
                ("phase", l) | ("mixed", l) if l == d => match v.iter().find(|&&k| k >= n) {
                    Some(k) => Err(format!(
                        "basis {} vector {i}: exponent {k} not below conductor {n}",
                        b.label
                    )),
                    None => Ok(BasisVector::Phase(v.clone())),
                },
                (kind, l) => Err(format!(
                    "basis {} vector {i}: length {l} invalid for kind {kind:?}",
                    b.label
                )),
            })
            .collect::<Result<Vec<_>, _>>()?;
        let basis = Basis {
            label: b.label.clone(),
            conductor: n,
            vectors,
        };
        if basis.kind().as_str() != b.kind {
            return Err(format!(
                "basis {} declared {:?} but is {:?}",
                b.label,
                b.kind,
                basis.kind().as_str()
            ));
        }
        bases.push(basis);
    }
    if let Some(&k) = e.claimed_mub_indices.iter().find(|&&k| k >= bases.len()) {
        return Err(format!("claimed basis index {k} out of range"));
    }
    Ok(MubSet {
        dimension: d,
        conductor: n,
        method,
        field: e.field.as_ref().map(|f| FieldMeta {
            p: f.p,
            m: f.m,
            modulus: f.modulus.clone(),
        }),
        ring: e.ring.as_ref().map(|r| RingMeta {
            m: r.m,
            basic_irreducible: r.basic_irreducible.clone(),
        }),
        bases,
        completeness_claimed: e.completeness_claimed,
        claimed_mub_indices: e.claimed_mub_indices.clone(),
    })
}

pub fn from_json(text: &str) -> Result<MubSet, String> {
    let e: ExportedMubSet = serde_json::from_str(text).map_err(|e| format!("invalid JSON: {e}"))?;
    from_export(&e)
}

#[derive(Serialize)]
struct ExponentRow<'a> {
    basis_label: &'a str,
    vector_index: usize,
    position: usize,
    exponent: Option<u32>,
}

#[derive(Serialize)]
struct NumericRow<'a> {
    basis_label: &'a str,
    vector_index: usize,
    position: usize,
    re: f64,
    im: f64,
}

/// One row per amplitude. Unit vectors leave `exponent` empty off their support.
pub fn to_csv(s: &MubSet, numeric: bool) -> Result<String, csv::Error> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for b in &s.bases {
        for (i, v) in b.vectors.iter().enumerate() {
            if numeric {
                for (x, z) in v.to_complex(s.dimension, b.conductor).iter().enumerate() {
                    w.serialize(NumericRow {
                        basis_label: &b.label,
                        vector_index: i,
                        position: x,
                        re: z.re,
                        im: z.im,
                    })?;
                }
            } else {
                for x in 0..s.dimension {
                    let exponent = match v {
                        BasisVector::Phase(e) => Some(e[x]),
                        BasisVector::Unit(u) => (*u == x).then_some(0),
                    };
                    w.serialize(ExponentRow {
                        basis_label: &b.label,
                        vector_index: i,
                        position: x,
                        exponent,
                    })?;
                }
            }
        }
    }
    let bytes = w.into_inner().map_err(|e| e.into_error())?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}
