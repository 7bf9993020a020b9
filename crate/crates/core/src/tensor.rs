//! Dense component arrays over coordinate indices.

use crate::error::Error;
use crate::expr::GradedExpr;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Tensor {
    dim: usize,
    rank: usize,
    data: Vec<GradedExpr>,
}

impl Tensor {
    pub fn zeros(dim: usize, rank: usize) -> Self {
        Tensor { dim, rank, data: vec![GradedExpr::zero(); dim.pow(rank as u32)] }
    }

    pub fn from_fn(dim: usize, rank: usize, mut f: impl FnMut(&[usize]) -> GradedExpr) -> Self {
        let data = MultiIndex::new(dim, rank).map(|idx| f(&idx)).collect();
        Tensor { dim, rank, data }
    }

    pub fn try_from_fn<E>(
        dim: usize,
        rank: usize,
        mut f: impl FnMut(&[usize]) -> Result<GradedExpr, E>,
    ) -> Result<Self, E> {
        let data = MultiIndex::new(dim, rank).map(|idx| f(&idx)).collect::<Result<_, _>>()?;
        Ok(Tensor { dim, rank, data })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    fn offset(&self, idx: &[usize]) -> usize {
        debug_assert_eq!(idx.len(), self.rank);
        idx.iter().fold(0, |acc, &i| {
            debug_assert!(i < self.dim);
            acc * self.dim + i
        })
    }

    pub fn get(&self, idx: &[usize]) -> &GradedExpr {
        &self.data[self.offset(idx)]
    }

    pub fn try_get(&self, idx: &[usize]) -> Result<&GradedExpr, Error> {
        if idx.len() != self.rank {
            return Err(Error::DimensionMismatch { expected: self.rank, found: idx.len() });
        }
        if let Some(&i) = idx.iter().find(|&&i| i >= self.dim) {
            return Err(Error::IndexOutOfRange { index: i, dim: self.dim });
        }
        Ok(self.get(idx))
    }

    pub fn set(&mut self, idx: &[usize], v: GradedExpr) {
        let o = self.offset(idx);
        self.data[o] = v;
    }

    /// All (index, value) pairs in lexicographic index order.
    pub fn iter(&self) -> impl Iterator<Item = (Vec<usize>, &GradedExpr)> {
        MultiIndex::new(self.dim, self.rank).zip(self.data.iter())
    }

    pub fn nonzero(&self) -> impl Iterator<Item = (Vec<usize>, &GradedExpr)> {
        self.iter().filter(|(_, v)| !v.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(GradedExpr::is_zero)
    }

    pub fn map(&self, f: impl Fn(&GradedExpr) -> GradedExpr) -> Tensor {
        Tensor { dim: self.dim, rank: self.rank, data: self.data.iter().map(f).collect() }
    }

    pub fn classical(&self) -> Tensor {
        self.map(GradedExpr::classical)
    }

    pub fn quantum(&self) -> Tensor {
        self.map(GradedExpr::quantum)
    }

    pub fn zip_with(&self, other: &Tensor, f: impl Fn(&GradedExpr, &GradedExpr) -> GradedExpr) -> Tensor {
        assert_eq!((self.dim, self.rank), (other.dim, other.rank));
        Tensor {
            dim: self.dim,
            rank: self.rank,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect(),
        }
    }

    pub fn add(&self, other: &Tensor) -> Tensor {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Tensor) -> Tensor {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale_by(&self, k: &GradedExpr) -> Tensor {
        self.map(|a| a * k)
    }

    /// Indices where the two tensors differ.
    pub fn diff_indices(&self, other: &Tensor) -> Vec<Vec<usize>> {
        self.iter()
            .zip(other.data.iter())
            .filter(|((_, a), b)| a != b)
            .map(|((i, _), _)| i)
            .collect()
    }
}

/// Iterates every multi-index of the given rank in lexicographic order.
#[derive(Clone, Debug)]
pub struct MultiIndex {
    dim: usize,
    cur: Option<Vec<usize>>,
}

impl MultiIndex {
    pub fn new(dim: usize, rank: usize) -> Self {
        let cur = if dim == 0 && rank > 0 { None } else { Some(vec![0; rank]) };
        MultiIndex { dim, cur }
    }
}

impl Iterator for MultiIndex {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.cur.clone()?;
        let cur = self.cur.as_mut().unwrap();
        let mut k = cur.len();
        loop {
            if k == 0 {
                self.cur = None;
                break;
            }
            k -= 1;
            cur[k] += 1;
            if cur[k] < self.dim {
                break;
            }
            cur[k] = 0;
        }
        Some(out)
    }
}
