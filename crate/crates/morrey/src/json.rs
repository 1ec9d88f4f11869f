//! JSON wire formats: sparse sequence files, witness manifests, and
//! verification reports.
//!
//! Sequence files look like
//! `{"d": 1, "entries": [{"k": [0], "v": "-3/2"}, ...]}` with values as
//! strings: `num/den` rationals or plain integers always, decimal strings
//! in float mode only. Exact certificates serialize as strings so no
//! precision is lost.

use std::path::Path;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::constants::VerificationReport;
use crate::error::{Error, Result};
use crate::types::{LatticePoint, Mode, NormValue, Scalar, Sequence, SpaceParams};
use crate::witness::WitnessFamily;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SequenceDoc {
    pub d: usize,
    pub entries: Vec<EntryDoc>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EntryDoc {
    pub k: Vec<i64>,
    pub v: String,
}

/// Parses a scalar string: `a/b`, an integer, or (float mode only) a
/// decimal / scientific literal.
pub fn parse_scalar(text: &str, mode: Mode) -> Result<Scalar> {
    let t = text.trim();
    if t.is_empty() {
        return Err(Error::Parse("empty scalar".into()));
    }
    if let Some((num, den)) = t.split_once('/') {
        let num: BigInt = num
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad rational numerator in {t:?}")))?;
        let den: BigInt = den
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad rational denominator in {t:?}")))?;
        if den == BigInt::from(0) {
            return Err(Error::Parse(format!("zero denominator in {t:?}")));
        }
        return Ok(Scalar::Rational(BigRational::new(num, den)));
    }
    if t.contains(['.', 'e', 'E']) {
        if mode == Mode::Exact {
            return Err(Error::Parse(format!(
                "decimal value {t:?} requires float mode"
            )));
        }
        let v: f64 = t
            .parse()
            .map_err(|_| Error::Parse(format!("bad decimal {t:?}")))?;
        return Scalar::from_f64(v);
    }
    let int: BigInt = t
        .parse()
        .map_err(|_| Error::Parse(format!("bad integer {t:?}")))?;
    Ok(Scalar::Rational(BigRational::from_integer(int)))
}

/// Parses a command-line exponent: `a/b` or integer always; a plain
/// decimal like `1.5` (converted exactly) only when `allow_decimal`.
pub fn parse_rational_param(text: &str, allow_decimal: bool) -> Result<BigRational> {
    let t = text.trim();
    if let Some((num, den)) = t.split_once('/') {
        let num: BigInt = num
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad rational {t:?}")))?;
        let den: BigInt = den
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad rational {t:?}")))?;
        if den == BigInt::from(0) {
            return Err(Error::Parse(format!("zero denominator in {t:?}")));
        }
        return Ok(BigRational::new(num, den));
    }
    if let Some(dot) = t.find('.') {
        if !allow_decimal {
            return Err(Error::Parse(format!(
                "decimal parameter {t:?} requires float mode; use a/b in exact mode"
            )));
        }
        let (int_part, frac_part) = (&t[..dot], &t[dot + 1..]);
        if frac_part.is_empty() || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::Parse(format!("bad decimal {t:?}")));
        }
        let digits = format!(
            "{}{}",
            if int_part.is_empty() { "0" } else { int_part },
            frac_part
        );
        let num: BigInt = digits
            .parse()
            .map_err(|_| Error::Parse(format!("bad decimal {t:?}")))?;
        let den = BigInt::from(10).pow(frac_part.len() as u32);
        return Ok(BigRational::new(num, den));
    }
    let int: BigInt = t
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational {t:?}")))?;
    Ok(BigRational::from_integer(int))
}

pub fn sequence_to_doc(x: &Sequence) -> SequenceDoc {
    SequenceDoc {
        d: x.dim(),
        entries: x
            .iter()
            .map(|(k, v)| EntryDoc {
                k: k.coords().to_vec(),
                v: v.to_string(),
            })
            .collect(),
    }
}

pub fn sequence_from_doc(doc: &SequenceDoc, mode: Mode) -> Result<Sequence> {
    let pairs = doc
        .entries
        .iter()
        .map(|e| Ok((LatticePoint::new(e.k.clone()), parse_scalar(&e.v, mode)?)))
        .collect::<Result<Vec<_>>>()?;
    Sequence::from_entries(doc.d, pairs)
}

pub fn read_sequence_file(path: &Path, mode: Mode) -> Result<Sequence> {
    let text = std::fs::read_to_string(path)?;
    let doc: SequenceDoc = serde_json::from_str(&text)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    sequence_from_doc(&doc, mode)
}

pub fn write_sequence_file(path: &Path, x: &Sequence) -> Result<()> {
    let doc = sequence_to_doc(x);
    let mut text = serde_json::to_string_pretty(&doc).expect("sequence doc serializes");
    text.push('\n');
    std::fs::write(path, text)?;
    Ok(())
}

/// Manifest written next to the per-member sequence files.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WitnessManifest {
    pub n: u32,
    pub p: String,
    pub q: String,
    pub d: usize,
    pub j: u64,
    pub members: Vec<String>,
}

pub fn manifest_for(family: &WitnessFamily, member_files: Vec<String>) -> WitnessManifest {
    WitnessManifest {
        n: family.family_size(),
        p: ratio_string(family.params().p()),
        q: ratio_string(family.params().q()),
        d: family.params().d(),
        j: family.spacing(),
        members: member_files,
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WindowDoc {
    pub m: Vec<i64>,
    #[serde(rename = "N")]
    pub radius: u64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CertificateDoc {
    #[serde(rename = "S")]
    pub cardinality: String,
    #[serde(rename = "T")]
    pub psum: String,
    pub p: u32,
    pub q: u32,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NormValueDoc {
    pub value_float: f64,
    pub exact: Option<CertificateDoc>,
    pub argmax: WindowDoc,
}

pub fn norm_value_to_doc(v: &NormValue) -> NormValueDoc {
    NormValueDoc {
        value_float: v.value(),
        exact: v.certificate().map(|cert| CertificateDoc {
            cardinality: cert.cardinality().to_string(),
            psum: ratio_string(cert.psum()),
            p: cert.p(),
            q: cert.q(),
        }),
        argmax: WindowDoc {
            m: v.argmax().m.coords().to_vec(),
            radius: v.argmax().radius,
        },
    }
}

/// Exact scalars render as strings, floats as JSON numbers.
pub fn scalar_to_json(s: &Scalar) -> serde_json::Value {
    match s {
        Scalar::Rational(_) => serde_json::Value::String(s.to_string()),
        Scalar::Float(v) => serde_json::json!(v),
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ComboNormDoc {
    pub combo: String,
    pub norm: NormValueDoc,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerdictsDoc {
    pub nj_equals_n: bool,
    pub james_equals_n: bool,
    pub not_uniformly_non_l1n: bool,
    pub not_uniformly_n_convex: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ReportDoc {
    pub version: String,
    pub n: u32,
    pub p: String,
    pub q: String,
    pub d: usize,
    pub mode: String,
    pub j: u64,
    pub member_norms: Vec<NormValueDoc>,
    pub combo_norms: Vec<ComboNormDoc>,
    pub nj_ratio: serde_json::Value,
    pub nj_ratio_unsquared: serde_json::Value,
    pub james_min: serde_json::Value,
    pub verdicts: VerdictsDoc,
}

pub fn report_to_doc(report: &VerificationReport, version: &str) -> ReportDoc {
    ReportDoc {
        version: version.to_string(),
        n: report.n,
        p: ratio_string(report.params.p()),
        q: ratio_string(report.params.q()),
        d: report.params.d(),
        mode: report.params.mode().to_string(),
        j: report.j,
        member_norms: report.member_norms.iter().map(norm_value_to_doc).collect(),
        combo_norms: report
            .combo_norms
            .iter()
            .map(|(combo, norm)| ComboNormDoc {
                combo: combo.label(),
                norm: norm_value_to_doc(norm),
            })
            .collect(),
        nj_ratio: scalar_to_json(&report.nj_ratio),
        nj_ratio_unsquared: scalar_to_json(&report.nj_ratio_unsquared),
        james_min: scalar_to_json(&report.james_min),
        verdicts: VerdictsDoc {
            nj_equals_n: report.verdicts.nj_equals_n,
            james_equals_n: report.verdicts.james_equals_n,
            not_uniformly_non_l1n: report.verdicts.not_uniformly_non_l1n,
            not_uniformly_n_convex: report.verdicts.not_uniformly_n_convex,
        },
    }
}

pub fn ratio_string(r: &BigRational) -> String {
    Scalar::Rational(r.clone()).to_string()
}

/// Echo of the space parameters embedded in every CLI output document.
pub fn params_echo(params: &SpaceParams) -> serde_json::Value {
    serde_json::json!({
        "p": ratio_string(params.p()),
        "q": ratio_string(params.q()),
        "d": params.d(),
        "mode": params.mode().to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    #[test]
    fn scalar_parsing() {
        assert_eq!(
            parse_scalar("-3/2", Mode::Exact).unwrap(),
            Scalar::from_ratio(-3, 2).unwrap()
        );
        assert_eq!(parse_scalar("7", Mode::Exact).unwrap(), Scalar::from_int(7));
        assert_eq!(
            parse_scalar("6/4", Mode::Exact).unwrap(),
            Scalar::from_ratio(3, 2).unwrap()
        );
        assert!(parse_scalar("1.5", Mode::Exact).is_err());
        assert_eq!(
            parse_scalar("1.5", Mode::Float).unwrap(),
            Scalar::Float(1.5)
        );
        assert_eq!(
            parse_scalar("1e-3", Mode::Float).unwrap(),
            Scalar::Float(0.001)
        );
        assert!(parse_scalar("1/0", Mode::Exact).is_err());
        assert!(parse_scalar("", Mode::Exact).is_err());
    }

    #[test]
    fn rational_param_parsing() {
        assert_eq!(
            parse_rational_param("3/2", false).unwrap(),
            BigRational::new(BigInt::from(3), BigInt::from(2))
        );
        assert_eq!(
            parse_rational_param("2", false).unwrap(),
            BigRational::from_integer(BigInt::from(2))
        );
        assert!(parse_rational_param("1.5", false).is_err());
        assert_eq!(
            parse_rational_param("1.5", true).unwrap(),
            BigRational::new(BigInt::from(3), BigInt::from(2))
        );
        assert_eq!(
            parse_rational_param("0.25", true).unwrap(),
            BigRational::new(BigInt::one(), BigInt::from(4))
        );
        assert!(parse_rational_param("abc", true).is_err());
    }

    #[test]
    fn sequence_document_round_trip() {
        let x = Sequence::from_entries(
            2,
            [
                (
                    LatticePoint::new(vec![0, -3]),
                    Scalar::from_ratio(-3, 2).unwrap(),
                ),
                (LatticePoint::new(vec![5, 1]), Scalar::from_int(4)),
            ],
        )
        .unwrap();
        let doc = sequence_to_doc(&x);
        let text = serde_json::to_string(&doc).unwrap();
        let parsed: SequenceDoc = serde_json::from_str(&text).unwrap();
        let back = sequence_from_doc(&parsed, Mode::Exact).unwrap();
        assert_eq!(x, back);
    }

    #[test]
    fn duplicate_keys_rejected_on_parse() {
        let doc = SequenceDoc {
            d: 1,
            entries: vec![
                EntryDoc {
                    k: vec![0],
                    v: "1".into(),
                },
                EntryDoc {
                    k: vec![0],
                    v: "2".into(),
                },
            ],
        };
        assert!(matches!(
            sequence_from_doc(&doc, Mode::Exact),
            Err(Error::DuplicatePoint { .. })
        ));
    }
}
