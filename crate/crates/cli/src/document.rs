//! JSON barcode documents and plain-text barcode lists.

use serde::{Deserialize, Serialize};

use harmonia_core::complex::{Chain, Simplex, TimeValue};
use harmonia_core::exactla::{format_scalar, parse_scalar, Scalar};
use harmonia_core::persistence::{Bar, Barcode};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BarcodeDocument {
    pub schema_version: u32,
    /// Dimensions covered by the document, including those without bars.
    pub dimensions: Vec<usize>,
    /// Sorted by birth, then death (`null` last), then dimension.
    pub bars: Vec<BarRecord>,
    pub provenance: Provenance,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BarRecord {
    pub dim: usize,
    pub birth: String,
    /// `None` for bars that never die.
    pub death: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub representative: Option<Vec<Term>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub simplex: Vec<u32>,
    pub coefficient: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub input_sha256: String,
    pub algorithm: String,
    pub tool_version: String,
}

#[derive(Debug, PartialEq, Eq)]
pub struct DocumentError(pub String);

impl std::fmt::Display for DocumentError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

fn err<T>(msg: impl Into<String>) -> Result<T, DocumentError> {
    Err(DocumentError(msg.into()))
}

impl BarcodeDocument {
    pub fn new(barcodes: &[Barcode], provenance: Provenance) -> Self {
        let mut dimensions: Vec<usize> = barcodes.iter().map(Barcode::dim).collect();
        dimensions.sort_unstable();
        dimensions.dedup();
        let mut bars: Vec<&Bar> = barcodes.iter().flat_map(|b| b.bars()).collect();
        bars.sort_by(|a, b| a.birth.cmp(&b.birth).then_with(|| a.death.cmp(&b.death)).then(a.dim.cmp(&b.dim)));
        let bars = bars
            .into_iter()
            .map(|b| BarRecord {
                dim: b.dim,
                birth: format_scalar(&b.birth),
                death: b.death.finite().map(format_scalar),
                representative: b.representative.as_ref().map(|c| {
                    c.terms()
                        .map(|(s, v)| Term { simplex: s.vertices().to_vec(), coefficient: format_scalar(v) })
                        .collect()
                }),
            })
            .collect();
        Self { schema_version: SCHEMA_VERSION, dimensions, bars, provenance }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("documents always serialize");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self, DocumentError> {
        let doc: Self =
            serde_json::from_str(text).map_err(|e| DocumentError(format!("invalid barcode document: {e}")))?;
        if doc.schema_version != SCHEMA_VERSION {
            return err(format!("unsupported schema version {}", doc.schema_version));
        }
        for dim in doc.bars.iter().map(|b| b.dim) {
            if !doc.dimensions.contains(&dim) {
                return err(format!("bar of dimension {dim} not listed in dimensions"));
            }
        }
        Ok(doc)
    }

    /// The bars of one dimension as a barcode.
    pub fn barcode(&self, dim: usize) -> Result<Barcode, DocumentError> {
        if !self.dimensions.contains(&dim) {
            return err(format!("document has no dimension {dim}"));
        }
        let mut bars = Vec::new();
        for rec in self.bars.iter().filter(|b| b.dim == dim) {
            let birth = scalar(&rec.birth)?;
            let death = match &rec.death {
                Some(d) => TimeValue::Finite(scalar(d)?),
                None => TimeValue::Infinite,
            };
            if death <= TimeValue::Finite(birth.clone()) {
                return err(format!("bar [{}, {death}) is empty", rec.birth));
            }
            let mut bar = Bar::new(dim, birth, death);
            if let Some(terms) = &rec.representative {
                let mut chain = Chain::zero(dim);
                for t in terms {
                    let s = Simplex::new(t.simplex.clone())
                        .filter(|s| s.dim() == dim)
                        .ok_or_else(|| DocumentError(format!("bad simplex {:?} in a representative", t.simplex)))?;
                    chain.add_term(s, &scalar(&t.coefficient)?);
                }
                bar = bar.with_representative(chain);
            }
            bars.push(bar);
        }
        Ok(Barcode::new(dim, bars))
    }
}

fn scalar(text: &str) -> Result<Scalar, DocumentError> {
    parse_scalar(text).ok_or_else(|| DocumentError(format!("'{text}' is not a rational number")))
}

/// One `birth death` pair per line, `inf` for bars that never die. Blank
/// lines and lines starting with `#` are skipped.
pub fn parse_text_barcode(text: &str, dim: usize) -> Result<Barcode, DocumentError> {
    let mut intervals = Vec::new();
    for (k, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let [b, d] = fields[..] else {
            return err(format!("line {}: expected 'birth death'", k + 1));
        };
        let birth = scalar(b).map_err(|e| DocumentError(format!("line {}: {e}", k + 1)))?;
        let death = if d == "inf" {
            TimeValue::Infinite
        } else {
            TimeValue::Finite(scalar(d).map_err(|e| DocumentError(format!("line {}: {e}", k + 1)))?)
        };
        if death <= TimeValue::Finite(birth.clone()) {
            return err(format!("line {}: death must come after birth", k + 1));
        }
        intervals.push((birth, death));
    }
    Ok(Barcode::from_intervals(dim, intervals))
}

#[cfg(test)]
mod tests {
    use super::*;
    use harmonia_core::exactla::{int, ratio};

    fn provenance() -> Provenance {
        Provenance { input_sha256: "00".into(), algorithm: "canonical".into(), tool_version: "0".into() }
    }

    #[test]
    fn json_round_trip_with_representatives() {
        let chain = Chain::from_terms(1, [(Simplex::new(vec![0, 1]).unwrap(), ratio(-2, 3))]);
        let bc = Barcode::new(
            1,
            [
                Bar::new(1, int(1), TimeValue::Infinite).with_representative(chain),
                Bar::new(1, int(1), TimeValue::Finite(int(2))),
            ],
        );
        let doc = BarcodeDocument::new(&[bc.clone(), Barcode::empty(0)], provenance());
        assert_eq!(doc.dimensions, vec![0, 1]);
        assert_eq!(doc.bars[0].death.as_deref(), Some("2"));
        let back = BarcodeDocument::from_json(&doc.to_json()).unwrap();
        assert_eq!(back, doc);
        assert_eq!(back.barcode(1).unwrap(), bc);
        assert!(back.barcode(0).unwrap().is_empty());
        assert!(back.barcode(2).is_err());
    }

    #[test]
    fn text_barcodes() {
        let bc = parse_text_barcode("# bars\n0 2\n1/2 inf\n", 1).unwrap();
        assert_eq!(bc.to_text(), "0 2\n1/2 inf\n");
        assert!(parse_text_barcode("2 1\n", 1).is_err());
        assert!(parse_text_barcode("0\n", 1).is_err());
    }
}
