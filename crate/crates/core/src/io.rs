//! JSON formats shared by the command-line tool.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{EulerAngles, GroupElement};
use crate::states::DensityState;
use crate::Mat3;

/// `{"re": [[3]x3], "im": [[3]x3]}`, rows first.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub re: [[f64; 3]; 3],
    pub im: [[f64; 3]; 3],
}

impl From<&Mat3> for MatrixJson {
    fn from(m: &Mat3) -> Self {
        MatrixJson {
            re: std::array::from_fn(|r| std::array::from_fn(|c| m[(r, c)].re)),
            im: std::array::from_fn(|r| std::array::from_fn(|c| m[(r, c)].im)),
        }
    }
}

impl MatrixJson {
    pub fn to_matrix(&self) -> Result<Mat3> {
        let m = Mat3::from_fn(|r, c| Complex64::new(self.re[r][c], self.im[r][c]));
        if m.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidInput("matrix has non-finite entries".into()));
        }
        Ok(m)
    }
}

/// Angles given either as an object with named fields or an array of 8.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum AnglesJson {
    Named(EulerAngles),
    Array([f64; 8]),
}

impl AnglesJson {
    pub fn into_angles(self) -> Result<EulerAngles> {
        let a = match self {
            AnglesJson::Named(a) => a,
            AnglesJson::Array(x) => EulerAngles::from_array(x),
        };
        if !a.is_finite() {
            return Err(Error::InvalidInput("angles must be finite".into()));
        }
        Ok(a)
    }
}

pub fn parse_angles(text: &str) -> Result<EulerAngles> {
    serde_json::from_str::<AnglesJson>(text)
        .map_err(|e| Error::InvalidInput(format!("cannot parse angles: {e}")))?
        .into_angles()
}

pub fn parse_matrix(text: &str) -> Result<Mat3> {
    serde_json::from_str::<MatrixJson>(text)
        .map_err(|e| Error::InvalidInput(format!("cannot parse matrix: {e}")))?
        .to_matrix()
}

pub fn group_element_json(g: &GroupElement) -> MatrixJson {
    MatrixJson::from(g.matrix())
}

/// Density matrix in the shared matrix format plus `"n": [8]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DensityStateJson {
    pub rho: MatrixJson,
    pub n: [f64; 8],
}

impl From<&DensityState> for DensityStateJson {
    fn from(s: &DensityState) -> Self {
        DensityStateJson {
            rho: MatrixJson::from(&s.rho),
            n: s.n.0,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::compose;

    #[test]
    fn matrix_round_trip() {
        let g = compose(&EulerAngles::from_array([
            0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8,
        ]));
        let text = serde_json::to_string(&group_element_json(&g)).unwrap();
        assert_eq!(parse_matrix(&text).unwrap(), *g.matrix());
    }

    #[test]
    fn angles_both_shapes() {
        let a = parse_angles("[0,1,2,3,4,5,6,7]").unwrap();
        assert_eq!(a.to_array(), [0.0, 1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0]);
        let text = serde_json::to_string(&a).unwrap();
        assert_eq!(parse_angles(&text).unwrap(), a);
        assert!(parse_angles("[1,2]").is_err());
    }

    #[test]
    fn identity_layout() {
        let v: serde_json::Value =
            serde_json::to_value(group_element_json(&GroupElement::identity())).unwrap();
        assert_eq!(v["re"][0], serde_json::json!([1.0, 0.0, 0.0]));
        assert_eq!(v["im"][2], serde_json::json!([0.0, 0.0, 0.0]));
    }
}
