//! Matrix JSON: `{"kind","p","q","n","rows","cols","data":[[re,im],..]}`, row-major.
//! `GROUP` pairs put the second block in `"block2"`; `"plain"` is a bare matrix.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lie_core::{Kind, SpaceInstance};
use crate::linalg::{Mat, C64};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub block2: Option<Vec<[f64; 2]>>,
}

fn flatten(m: &Mat) -> Vec<[f64; 2]> {
    let mut out = Vec::with_capacity(m.len());
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            out.push([m[(i, j)].re, m[(i, j)].im]);
        }
    }
    out
}

fn unflatten(rows: usize, cols: usize, data: &[[f64; 2]]) -> Result<Mat> {
    if data.len() != rows * cols {
        return Err(Error::Parse(format!("expected {} entries, found {}", rows * cols, data.len())));
    }
    if data.iter().any(|v| !v[0].is_finite() || !v[1].is_finite()) {
        return Err(Error::Parse("non-finite matrix entry".into()));
    }
    Ok(Mat::from_fn(rows, cols, |i, j| {
        let v = data[i * cols + j];
        C64::new(v[0], v[1])
    }))
}

impl MatrixJson {
    pub fn plain(m: &Mat) -> Self {
        MatrixJson {
            kind: "plain".into(),
            p: None,
            q: None,
            n: Some(m.nrows()),
            rows: m.nrows(),
            cols: m.ncols(),
            data: flatten(m),
            block2: None,
        }
    }

    /// Encode a square matrix living in `inst`.
    pub fn from_instance(inst: &SpaceInstance, m: &Mat) -> Self {
        match inst.kind {
            Kind::Grass { p, q } => MatrixJson {
                kind: "grass".into(),
                p: Some(p),
                q: Some(q),
                n: Some(p + q),
                rows: m.nrows(),
                cols: m.ncols(),
                data: flatten(m),
                block2: None,
            },
            Kind::Group { n } => {
                let b = inst.split_blocks(m);
                MatrixJson {
                    kind: "group".into(),
                    p: None,
                    q: None,
                    n: Some(n),
                    rows: n,
                    cols: n,
                    data: flatten(&b[0]),
                    block2: Some(flatten(&b[1])),
                }
            }
        }
    }

    pub fn instance(&self) -> Result<Option<SpaceInstance>> {
        match self.kind.as_str() {
            "grass" => match (self.p, self.q) {
                (Some(p), Some(q)) => Ok(Some(SpaceInstance::grass(p, q)?)),
                _ => Err(Error::Parse("grass matrix needs p and q".into())),
            },
            "group" => match self.n {
                Some(n) => Ok(Some(SpaceInstance::group(n)?)),
                None => Err(Error::Parse("group matrix needs n".into())),
            },
            "plain" => Ok(None),
            other => Err(Error::Parse(format!("unknown matrix kind {other:?}"))),
        }
    }

    /// Decode to the stored matrix (block-diagonal for `GROUP`).
    pub fn to_matrix(&self) -> Result<Mat> {
        let first = unflatten(self.rows, self.cols, &self.data)?;
        match self.instance()? {
            Some(inst) if inst.is_group() => {
                let n = inst.block_size();
                if self.rows != n || self.cols != n {
                    return Err(Error::Parse(format!("group blocks must be {n}x{n}")));
                }
                let second = self.block2.as_ref().ok_or_else(|| Error::Parse("group matrix needs block2".into()))?;
                Ok(inst.join_blocks(&[first, unflatten(n, n, second)?]))
            }
            Some(inst) => {
                if self.rows != inst.n_total || self.cols != inst.n_total {
                    return Err(Error::Parse(format!("expected {0}x{0} matrix", inst.n_total)));
                }
                Ok(first)
            }
            None => Ok(first),
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie_core::{rng_for, GroupTag};
    use crate::linalg::frob;

    #[test]
    fn roundtrip_both_kinds() {
        for inst in [SpaceInstance::grass(2, 1).unwrap(), SpaceInstance::group(2).unwrap()] {
            let g = inst.sample_grp(GroupTag::G, &mut rng_for(1, 0));
            let j = MatrixJson::from_instance(&inst, &g);
            let text = serde_json::to_string(&j).unwrap();
            let back = MatrixJson::parse(&text).unwrap();
            assert_eq!(back.instance().unwrap(), Some(inst));
            assert!(frob(&(back.to_matrix().unwrap() - g)) == 0.0);
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(MatrixJson::parse(r#"{"kind":"grass","p":1,"q":1,"rows":2,"cols":2,"data":[[1,0]]}"#)
            .unwrap()
            .to_matrix()
            .is_err());
        assert!(MatrixJson::parse(r#"{"kind":"group","n":1,"rows":1,"cols":1,"data":[[1,0]]}"#)
            .unwrap()
            .to_matrix()
            .is_err());
        assert!(MatrixJson::parse("{").is_err());
    }
}
