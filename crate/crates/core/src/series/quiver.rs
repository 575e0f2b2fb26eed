use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A symmetric quiver together with the level `n_i` and sign `s_i` of each
/// vertex, i.e. the specialization `x_i = s_i x^{n_i}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawSpec", into = "RawSpec")]
pub struct QuiverSpec {
    name: Option<String>,
    matrix: Vec<Vec<i64>>,
    levels: Vec<u32>,
    signs: Vec<i8>,
}

#[derive(Serialize, Deserialize)]
struct RawSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
    matrix: Vec<Vec<i64>>,
    levels: Vec<u32>,
    signs: Vec<i8>,
}

impl TryFrom<RawSpec> for QuiverSpec {
    type Error = Error;

    fn try_from(raw: RawSpec) -> Result<Self> {
        let spec = QuiverSpec::new(raw.matrix, raw.levels, raw.signs)?;
        Ok(match raw.name {
            Some(n) => spec.with_name(n),
            None => spec,
        })
    }
}

impl From<QuiverSpec> for RawSpec {
    fn from(s: QuiverSpec) -> Self {
        RawSpec { name: s.name, matrix: s.matrix, levels: s.levels, signs: s.signs }
    }
}

impl QuiverSpec {
    pub fn new(matrix: Vec<Vec<i64>>, levels: Vec<u32>, signs: Vec<i8>) -> Result<Self> {
        let m = matrix.len();
        if m == 0 {
            return Err(Error::InvalidSpec("empty matrix".into()));
        }
        if let Some(i) = matrix.iter().position(|row| row.len() != m) {
            return Err(Error::InvalidSpec(format!("row {i} has length {}, expected {m}", matrix[i].len())));
        }
        for i in 0..m {
            for j in 0..i {
                if matrix[i][j] != matrix[j][i] {
                    return Err(Error::InvalidSpec(format!("matrix is not symmetric at ({i}, {j})")));
                }
            }
        }
        if levels.len() != m {
            return Err(Error::InvalidSpec(format!("{} levels for {m} vertices", levels.len())));
        }
        if signs.len() != m {
            return Err(Error::InvalidSpec(format!("{} signs for {m} vertices", signs.len())));
        }
        if let Some(s) = signs.iter().find(|s| s.abs() != 1) {
            return Err(Error::InvalidSpec(format!("sign {s} is not +1 or -1")));
        }
        Ok(Self { name: None, matrix, levels, signs })
    }

    /// Positive signs everywhere.
    pub fn unsigned(matrix: Vec<Vec<i64>>, levels: Vec<u32>) -> Result<Self> {
        let m = matrix.len();
        Self::new(matrix, levels, vec![1; m])
    }

    /// `C = (f)` with level `n`.
    pub fn single_vertex(f: i64, level: u32) -> Self {
        Self::unsigned(vec![vec![f]], vec![level]).expect("1x1 spec is valid")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::InvalidSpec(e.to_string()))
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    /// Same quiver and signs, different levels.
    pub fn with_levels(&self, levels: Vec<u32>) -> Result<Self> {
        let mut s = Self::new(self.matrix.clone(), levels, self.signs.clone())?;
        s.name = self.name.clone();
        Ok(s)
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn vertices(&self) -> usize {
        self.matrix.len()
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.matrix
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.matrix[i][j]
    }

    pub fn levels(&self) -> &[u32] {
        &self.levels
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    /// `sum_{i,j} C_ij d_i d_j`.
    pub fn quadratic_form(&self, d: &[u32]) -> i64 {
        let m = self.vertices();
        let mut acc = 0;
        for i in 0..m {
            for j in 0..m {
                acc += self.matrix[i][j] * i64::from(d[i]) * i64::from(d[j]);
            }
        }
        acc
    }

    /// `sum_i C_ij l_i`.
    pub fn column_sum(&self, j: usize, l: &[u32]) -> i64 {
        (0..self.vertices()).map(|i| self.matrix[i][j] * i64::from(l[i])).sum()
    }

    /// `sum_i (C_ii + 1) l_i`, the exponent of the overall sign.
    pub fn sign_exponent(&self, l: &[u32]) -> i64 {
        (0..self.vertices()).map(|i| (self.matrix[i][i] + 1) * i64::from(l[i])).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(QuiverSpec::unsigned(vec![], vec![]).is_err());
        assert!(QuiverSpec::unsigned(vec![vec![0, 1], vec![2, 0]], vec![1, 1]).is_err());
        assert!(QuiverSpec::unsigned(vec![vec![0, 1]], vec![1]).is_err());
        assert!(QuiverSpec::unsigned(vec![vec![0]], vec![1, 1]).is_err());
        assert!(QuiverSpec::new(vec![vec![0]], vec![1], vec![2]).is_err());
        assert!(QuiverSpec::new(vec![vec![0, -1], vec![-1, 3]], vec![1, 0], vec![1, -1]).is_ok());
    }

    #[test]
    fn json_round_trip() {
        let s = r#"{"name":"x","matrix":[[0,-1],[-1,2]],"levels":[1,2],"signs":[1,-1]}"#;
        let spec = QuiverSpec::from_json(s).unwrap();
        assert_eq!(spec.name(), Some("x"));
        assert_eq!(spec.levels(), &[1, 2]);
        assert_eq!(serde_json::to_string(&spec).unwrap(), s);
        let err = QuiverSpec::from_json(r#"{"matrix":[],"levels":[],"signs":[]}"#);
        assert!(matches!(err, Err(Error::InvalidSpec(_))));
    }

    #[test]
    fn quadratic_form() {
        let spec = QuiverSpec::unsigned(vec![vec![1, 2], vec![2, -1]], vec![1, 1]).unwrap();
        // 1*1 + 2*2*1*3 + (-1)*9
        assert_eq!(spec.quadratic_form(&[1, 3]), 1 + 12 - 9);
        assert_eq!(spec.column_sum(1, &[1, 3]), 2 - 3);
        assert_eq!(spec.sign_exponent(&[1, 3]), 2);
    }
}
