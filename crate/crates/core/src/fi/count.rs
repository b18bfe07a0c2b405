use num_bigint::BigUint;

use crate::error::{Error, Result};

/// Upper bounds on the number of finite-index extensions of a subgroup whose
/// core has `n` vertices.
#[derive(Clone, Debug, PartialEq)]
pub struct FiBound {
    /// `n^((1 + log2 n) / 2)`.
    pub closed_form: f64,
    /// `f(1) = 1`, `f(n) = n * f(floor(n / 2))`.
    pub recurrence: BigUint,
}

pub fn fi_extension_bound(n: usize) -> Result<FiBound> {
    if n == 0 {
        return Err(Error::OutOfRange("the core has at least one vertex".into()));
    }
    let x = n as f64;
    let closed_form = x.powf(0.5 * (1.0 + x.log2()));
    let mut recurrence = BigUint::from(1u32);
    let mut m = n;
    while m > 1 {
        recurrence *= m;
        m /= 2;
    }
    Ok(FiBound {
        closed_form,
        recurrence,
    })
}

/// Number of subspaces of `Z_2^k`, by dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubspaceCount {
    pub total: BigUint,
    /// Entry `d` counts the subspaces of dimension `d`.
    pub by_dimension: Vec<BigUint>,
}

impl SubspaceCount {
    /// Whether `total > 2^(k^2 / 4)`, checked as `total^4 > 2^(k^2)`.
    pub fn exceeds_lower_bound(&self) -> bool {
        let k = self.by_dimension.len() - 1;
        self.total.pow(4) > BigUint::from(1u32) << (k * k)
    }
}

/// Number of ordered bases of a `d`-dimensional subspace of `Z_2^k`.
fn ordered_bases(d: usize, k: usize) -> BigUint {
    let full = BigUint::from(1u32) << k;
    (0..d).fold(BigUint::from(1u32), |acc, i| {
        acc * (&full - (BigUint::from(1u32) << i))
    })
}

/// Subspaces of dimension `d` are ordered `d`-tuples of independent vectors
/// in `Z_2^k` divided by the ordered bases of `Z_2^d`.
pub fn subspace_count(k: usize) -> Result<SubspaceCount> {
    if k == 0 {
        return Err(Error::OutOfRange("dimension must be at least 1".into()));
    }
    let by_dimension: Vec<BigUint> = (0..=k)
        .map(|d| ordered_bases(d, k) / ordered_bases(d, d))
        .collect();
    let total = by_dimension.iter().sum();
    let count = SubspaceCount {
        total,
        by_dimension,
    };
    debug_assert!(count.exceeds_lower_bound());
    Ok(count)
}
