use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tensor-factor layout of a multipartite Hilbert space.
///
/// Party 0 is the most significant digit of a computational-basis index.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "ShapeRepr", into = "ShapeRepr")]
pub struct SystemShape {
    local_dims: Vec<usize>,
    strides: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct ShapeRepr {
    local_dims: Vec<usize>,
}

impl TryFrom<ShapeRepr> for SystemShape {
    type Error = Error;

    fn try_from(repr: ShapeRepr) -> Result<Self> {
        SystemShape::new(repr.local_dims)
    }
}

impl From<SystemShape> for ShapeRepr {
    fn from(shape: SystemShape) -> Self {
        ShapeRepr { local_dims: shape.local_dims }
    }
}

impl SystemShape {
    pub fn new(local_dims: Vec<usize>) -> Result<Self> {
        if local_dims.is_empty() {
            return Err(Error::InvalidArgument("a system needs at least one party".into()));
        }
        if let Some(d) = local_dims.iter().find(|&&d| d < 2) {
            return Err(Error::InvalidArgument(format!("local dimensions must be at least 2, got {d}")));
        }
        let mut strides = vec![1usize; local_dims.len()];
        for i in (0..local_dims.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1]
                .checked_mul(local_dims[i + 1])
                .ok_or_else(|| Error::InvalidArgument("total dimension overflows".into()))?;
        }
        strides[0]
            .checked_mul(local_dims[0])
            .ok_or_else(|| Error::InvalidArgument("total dimension overflows".into()))?;
        Ok(SystemShape { local_dims, strides })
    }

    /// `n` qubits.
    pub fn qubits(n: usize) -> Result<Self> {
        Self::uniform(n, 2)
    }

    /// `n` parties of equal local dimension `d`.
    pub fn uniform(n: usize, d: usize) -> Result<Self> {
        Self::new(vec![d; n])
    }

    pub fn num_parties(&self) -> usize {
        self.local_dims.len()
    }

    pub fn local_dims(&self) -> &[usize] {
        &self.local_dims
    }

    pub fn local_dim(&self, party: usize) -> usize {
        self.local_dims[party]
    }

    pub(crate) fn stride(&self, party: usize) -> usize {
        self.strides[party]
    }

    /// Total Hilbert-space dimension `∏ d_i`.
    pub fn dim(&self) -> usize {
        self.strides[0] * self.local_dims[0]
    }

    pub fn is_all_qubits(&self) -> bool {
        self.local_dims.iter().all(|&d| d == 2)
    }

    /// Local digit of `party` in a basis index.
    pub(crate) fn digit(&self, index: usize, party: usize) -> usize {
        (index / self.strides[party]) % self.local_dims[party]
    }

    pub(crate) fn require_qubits(&self, subset: &PartySubset) -> Result<()> {
        subset.validate(self)?;
        for &p in subset.iter() {
            if self.local_dims[p] != 2 {
                return Err(Error::UnsupportedDimension { party: p, dim: self.local_dims[p] });
            }
        }
        Ok(())
    }
}

/// A set of party indices. The empty set is allowed and acts trivially.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "Vec<usize>", into = "Vec<usize>")]
pub struct PartySubset(Vec<usize>);

impl From<Vec<usize>> for PartySubset {
    fn from(v: Vec<usize>) -> Self {
        PartySubset::new(v)
    }
}

impl From<PartySubset> for Vec<usize> {
    fn from(s: PartySubset) -> Self {
        s.0
    }
}

impl PartySubset {
    pub fn new(parties: impl IntoIterator<Item = usize>) -> Self {
        let mut v: Vec<usize> = parties.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        PartySubset(v)
    }

    pub fn empty() -> Self {
        PartySubset(Vec::new())
    }

    pub fn single(party: usize) -> Self {
        PartySubset(vec![party])
    }

    /// All `n` parties.
    pub fn all(n: usize) -> Self {
        PartySubset((0..n).collect())
    }

    /// Parties of an `n`-party system not in `self`.
    pub fn complement(&self, n: usize) -> Self {
        PartySubset((0..n).filter(|p| !self.0.contains(p)).collect())
    }

    pub fn iter(&self) -> impl Iterator<Item = &usize> + '_ {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, party: usize) -> bool {
        self.0.binary_search(&party).is_ok()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn validate(&self, shape: &SystemShape) -> Result<()> {
        match self.0.last() {
            Some(&p) if p >= shape.num_parties() => {
                Err(Error::PartyOutOfRange { index: p, parties: shape.num_parties() })
            }
            _ => Ok(()),
        }
    }
}

impl std::fmt::Display for PartySubset {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "}}")
    }
}
