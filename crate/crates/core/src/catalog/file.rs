//! JSON pencil files. Integers are decimal strings so nothing is lost to floats.

use num::{BigInt, BigRational, Integer, One, Zero};
use serde::{Deserialize, Serialize};

use crate::combinatorics::{Family, Partition};
use crate::error::{Error, Result};
use crate::field::{Field, PrimeField};
use crate::pencil::{
    build_adjoint_pencil, build_gl_pencil, build_koszul_pencil, build_so_pencil, build_sp_pencil,
    build_spin_pencil, Certificate, Pencil, PencilKind,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FileEntry {
    pub var: usize,
    pub row: usize,
    pub col: usize,
    pub num: String,
    pub den: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PencilFile {
    pub nvars: usize,
    pub source_dim: usize,
    pub target_dim: usize,
    pub var_labels: Vec<String>,
    /// Sorted by `(var, row, col)`; rows index the target.
    pub entries: Vec<FileEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source_label: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target_label: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<PencilKind>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Certificate>,
}

impl PencilFile {
    pub fn from_pencil(p: &Pencil) -> Self {
        let mut entries = Vec::new();
        for (var, e) in p.coeffs.iter().enumerate() {
            for (row, col, x) in e {
                entries.push(FileEntry { var, row: *row, col: *col, num: x.to_string(), den: "1".into() });
            }
        }
        Self {
            nvars: p.nvars,
            source_dim: p.source_dim,
            target_dim: p.target_dim,
            var_labels: p.var_labels.clone(),
            entries,
            modulus: p.modulus.map(|m| m.to_string()),
            source_label: Some(p.source_label.clone()),
            target_label: Some(p.target_label.clone()),
            kind: (p.kind != PencilKind::Plain).then(|| p.kind.clone()),
            certificate: p.certificate.clone(),
        }
    }

    pub fn to_pencil(&self) -> Result<Pencil> {
        let bad = |msg: String| Error::Parse { line: 0, col: 0, msg };
        let modulus = match &self.modulus {
            None => None,
            Some(s) => {
                let p: u64 = s.parse().map_err(|_| bad(format!("modulus {s:?} is not an integer")))?;
                PrimeField::new(p)?;
                Some(p)
            }
        };
        if self.entries.windows(2).any(|w| (w[0].var, w[0].row, w[0].col) >= (w[1].var, w[1].row, w[1].col)) {
            return Err(Error::Dimension("entries must be strictly sorted by (var, row, col)".into()));
        }
        let mut values = Vec::with_capacity(self.entries.len());
        for e in &self.entries {
            if e.var >= self.nvars {
                return Err(Error::Dimension(format!("variable {} out of range", e.var)));
            }
            let num: BigInt = e.num.parse().map_err(|_| bad(format!("bad numerator {:?}", e.num)))?;
            let den: BigInt = e.den.parse().map_err(|_| bad(format!("bad denominator {:?}", e.den)))?;
            if den.is_zero() {
                return Err(bad("zero denominator".into()));
            }
            values.push(BigRational::new(num, den));
        }
        let ints: Vec<BigInt> = match modulus {
            Some(p) => {
                let f = PrimeField::new(p)?;
                values
                    .iter()
                    .map(|v| f.from_rational(v).map(BigInt::from).ok_or_else(|| bad("denominator divisible by the modulus".into())))
                    .collect::<Result<_>>()?
            }
            None => {
                // only rescale when some entry is fractional
                let lcm = values.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
                values.iter().map(|v| (v * BigRational::from_integer(lcm.clone())).to_integer()).collect()
            }
        };
        let mut coeffs: Vec<Vec<(usize, usize, BigInt)>> = vec![Vec::new(); self.nvars];
        for (e, x) in self.entries.iter().zip(ints) {
            coeffs[e.var].push((e.row, e.col, x));
        }
        let mut p = Pencil::from_integer_entries(self.nvars, self.target_dim, self.source_dim, coeffs, self.var_labels.clone())?;
        p.modulus = modulus;
        if let Some(s) = &self.source_label {
            p.source_label = s.clone();
        }
        if let Some(t) = &self.target_label {
            p.target_label = t.clone();
        }
        p.kind = self.kind.clone().unwrap_or(PencilKind::Plain);
        p.certificate = self.certificate.clone();
        Ok(p)
    }
}

/// Pretty JSON with a trailing newline.
pub fn pencil_to_json(p: &Pencil) -> Result<String> {
    let mut s = serde_json::to_string_pretty(&PencilFile::from_pencil(p))?;
    s.push('\n');
    Ok(s)
}

pub fn pencil_from_json(text: &str) -> Result<Pencil> {
    let file: PencilFile = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        col: e.column(),
        msg: e.to_string(),
    })?;
    file.to_pencil()
}

/// Rebuild a group pencil from its recorded kind.
pub fn rebuild(kind: &PencilKind) -> Result<Pencil> {
    match kind {
        PencilKind::OneBox { group, mu, nu } => {
            let (mu, nu): (Partition, Partition) = (mu.parse()?, nu.parse()?);
            match group.family {
                Family::GL => build_gl_pencil(&mu, &nu, group.natural_dim),
                Family::Sp => build_sp_pencil(&mu, &nu, group.natural_dim),
                Family::SO => build_so_pencil(&mu, &nu, group.natural_dim),
                Family::Spin => Err(Error::Shape("one-box pencils are not built for Spin".into())),
            }
        }
        PencilKind::Koszul { v, k } => build_koszul_pencil(*k, *v),
        PencilKind::Spin { n } => build_spin_pencil(*n),
        PencilKind::Adjoint { a } => build_adjoint_pencil(*a),
        PencilKind::Plain => Err(Error::NoTransitivity("plain pencils carry no construction".into())),
    }
}

/// A certificate read from a file is only kept if rebuilding the recorded construction
/// reproduces the same coefficients.
pub fn reattach_certificate(p: &Pencil) -> Result<Pencil> {
    let mut out = p.clone();
    out.certificate = None;
    if p.certificate.is_none() {
        return Ok(out);
    }
    let fresh = rebuild(&p.kind)?;
    if fresh.coeffs != p.coeffs || fresh.modulus != p.modulus {
        return Err(Error::NoTransitivity("coefficients differ from the recorded construction".into()));
    }
    out.certificate = fresh.certificate;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::part;

    #[test]
    fn round_trip() {
        let p = build_gl_pencil(&part![2], &part![2, 1], 3).unwrap();
        let s = pencil_to_json(&p).unwrap();
        let q = pencil_from_json(&s).unwrap();
        assert_eq!(p, q);
        assert_eq!(pencil_to_json(&q).unwrap(), s);
        assert!(s.ends_with("}\n"));
        let r = reattach_certificate(&q).unwrap();
        assert_eq!(r.certificate, p.certificate);
    }

    #[test]
    fn fractional_entries_are_rescaled() {
        let s = r#"{"nvars":1,"source_dim":1,"target_dim":2,"var_labels":["x"],
            "entries":[{"var":0,"row":0,"col":0,"num":"1","den":"2"},{"var":0,"row":1,"col":0,"num":"3","den":"1"}]}"#;
        let p = pencil_from_json(s).unwrap();
        assert_eq!(p.coeffs[0], vec![(0, 0, 1.into()), (1, 0, 6.into())]);
    }

    #[test]
    fn bad_files() {
        assert!(matches!(pencil_from_json("{\n \"nvars\": 1,\n"), Err(Error::Parse { line: 3, .. })));
        let unsorted = r#"{"nvars":1,"source_dim":2,"target_dim":1,"var_labels":["x"],
            "entries":[{"var":0,"row":0,"col":1,"num":"1","den":"1"},{"var":0,"row":0,"col":0,"num":"1","den":"1"}]}"#;
        assert!(matches!(pencil_from_json(unsorted), Err(Error::Dimension(_))));
        let mut p = build_koszul_pencil(1, 3).unwrap();
        p.coeffs[0][0].2 += 1;
        assert!(reattach_certificate(&p).is_err());
    }
}
