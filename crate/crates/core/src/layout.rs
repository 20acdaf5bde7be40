use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Ordered tensor factorization of a Hilbert space into labeled subsystems.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubsystemLayout {
    labels: Vec<String>,
    dims: Vec<usize>,
}

impl SubsystemLayout {
    pub fn new<S: Into<String>>(labels: Vec<S>, dims: Vec<usize>) -> Result<Self> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(Error::Layout("layout needs at least one subsystem".into()));
        }
        if labels.len() != dims.len() {
            return Err(Error::Layout(format!(
                "{} labels for {} dimensions",
                labels.len(),
                dims.len()
            )));
        }
        if let Some(pos) = dims.iter().position(|&d| d == 0) {
            return Err(Error::Layout(format!(
                "dimension of `{}` is zero",
                labels[pos]
            )));
        }
        for (i, l) in labels.iter().enumerate() {
            if l.is_empty() {
                return Err(Error::Layout(format!("label #{i} is empty")));
            }
            if labels[..i].contains(l) {
                return Err(Error::Layout(format!("duplicate label `{l}`")));
            }
        }
        Ok(Self { labels, dims })
    }

    /// Layout with default labels `A`, `B`, `C`, ... (then `S7`, `S8`, ... past `Z`).
    pub fn from_dims(dims: &[usize]) -> Result<Self> {
        let labels = (0..dims.len())
            .map(|i| {
                if i < 26 {
                    ((b'A' + i as u8) as char).to_string()
                } else {
                    format!("S{i}")
                }
            })
            .collect();
        Self::new(labels, dims.to_vec())
    }

    pub fn single(label: &str, dim: usize) -> Result<Self> {
        Self::new(vec![label], vec![dim])
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().product()
    }

    pub fn position(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::Layout(format!("no subsystem labeled `{label}` in {self}")))
    }

    pub fn contains(&self, label: &str) -> bool {
        self.labels.iter().any(|l| l == label)
    }

    pub fn dim_of(&self, label: &str) -> Result<usize> {
        Ok(self.dims[self.position(label)?])
    }

    /// Sub-layout with the kept labels, in this layout's order.
    pub fn keep(&self, keep: &[&str]) -> Result<Self> {
        if keep.is_empty() {
            return Err(Error::Layout("keep set is empty".into()));
        }
        for k in keep {
            self.position(k)?;
        }
        let (labels, dims) = self
            .labels
            .iter()
            .zip(&self.dims)
            .filter(|(l, _)| keep.contains(&l.as_str()))
            .map(|(l, &d)| (l.clone(), d))
            .unzip();
        Self::new(labels, dims)
    }

    pub fn with_dim(&self, label: &str, dim: usize) -> Result<Self> {
        let pos = self.position(label)?;
        let mut dims = self.dims.clone();
        dims[pos] = dim;
        Self::new(self.labels.clone(), dims)
    }

    pub fn appended(&self, label: &str, dim: usize) -> Result<Self> {
        let mut labels = self.labels.clone();
        let mut dims = self.dims.clone();
        labels.push(label.to_string());
        dims.push(dim);
        Self::new(labels, dims)
    }

    /// Checks that the layout factorizes an operator of dimension `dim`.
    pub fn check_dim(&self, dim: usize) -> Result<()> {
        if self.total_dim() != dim {
            return Err(Error::Layout(format!(
                "{self} has total dimension {} but the operator has dimension {dim}",
                self.total_dim()
            )));
        }
        Ok(())
    }
}

impl std::fmt::Display for SubsystemLayout {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self
            .labels
            .iter()
            .zip(&self.dims)
            .map(|(l, d)| format!("{l}:{d}"))
            .collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_layouts() {
        assert!(SubsystemLayout::new(vec!["A", "A"], vec![2, 2]).is_err());
        assert!(SubsystemLayout::new(vec!["A"], vec![0]).is_err());
        assert!(SubsystemLayout::new(vec!["A", "B"], vec![2]).is_err());
        assert!(SubsystemLayout::new(Vec::<String>::new(), vec![]).is_err());
    }

    #[test]
    fn keep_preserves_order() {
        let l = SubsystemLayout::from_dims(&[2, 3, 4]).unwrap();
        let k = l.keep(&["C", "A"]).unwrap();
        assert_eq!(k.labels(), &["A".to_string(), "C".to_string()]);
        assert_eq!(k.dims(), &[2, 4]);
        assert_eq!(l.total_dim(), 24);
        assert!(l.keep(&["D"]).is_err());
    }
}
