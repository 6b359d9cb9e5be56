//! Permutations of tensor factors and their operators `V_σ`.
//!
//! `V_σ |v_1 … v_n⟩ = |v_{σ⁻¹(1)} … v_{σ⁻¹(n)}⟩`: the vector in slot `i`
//! moves to slot `σ(i)`. With composition `(σπ)(i) = σ(π(i))` this is a
//! representation, `V_σ V_π = V_{σπ}`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::limits::{pow_within, Limits};

use super::layout::SubsystemLayout;
use super::matrix::{Matrix, C64, ONE, ZERO};
use super::operator::Operator;
use super::state::StateVector;

/// Bijection on `{0, …, n−1}` stored as its image list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    /// `images[i]` is the image of `i` (0-based).
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(Error::InvalidPermutation(images));
            }
            seen[x] = true;
        }
        Ok(Self { images })
    }

    /// From 1-based images, as permutations are usually written.
    pub fn from_one_based(images: &[usize]) -> Result<Self> {
        if images.contains(&0) {
            return Err(Error::InvalidPermutation(images.to_vec()));
        }
        Self::new(images.iter().map(|&x| x - 1).collect())
    }

    pub fn identity(n: usize) -> Self {
        Self {
            images: (0..n).collect(),
        }
    }

    /// The transposition `(a b)` on `n` points (0-based; `a == b` gives the identity).
    pub fn transposition(n: usize, a: usize, b: usize) -> Result<Self> {
        if a >= n || b >= n {
            return Err(Error::InvalidArgument(format!(
                "transposition ({a} {b}) out of range for degree {n}"
            )));
        }
        let mut images: Vec<usize> = (0..n).collect();
        images.swap(a, b);
        Ok(Self { images })
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn images(&self) -> &[usize] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    /// `self ∘ other`, i.e. `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree(), "compose: degree mismatch");
        Permutation {
            images: other.images.iter().map(|&i| self.images[i]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x] = i;
        }
        Permutation { images: inv }
    }

    /// Same permutation on `n ≥ degree` points, fixing the extra points.
    pub fn extend(&self, n: usize) -> Permutation {
        assert!(n >= self.degree(), "extend: cannot shrink");
        let mut images = self.images.clone();
        images.extend(self.degree()..n);
        Permutation { images }
    }

    /// Cycle lengths in weakly decreasing order (fixed points included).
    pub fn cycle_type(&self) -> Vec<usize> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut lengths = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = self.images[i];
                len += 1;
            }
            lengths.push(len);
        }
        lengths.sort_unstable_by(|a, b| b.cmp(a));
        lengths
    }

    pub fn sign(&self) -> i64 {
        let transpositions: usize = self.cycle_type().iter().map(|&l| l - 1).sum();
        if transpositions.is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// All `n!` permutations in lexicographic order of their image lists.
    pub fn all(n: usize) -> AllPermutations {
        AllPermutations {
            next: Some((0..n).collect()),
        }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let one_based: Vec<String> = self.images.iter().map(|x| (x + 1).to_string()).collect();
        write!(f, "[{}]", one_based.join(" "))
    }
}

/// Iterator over `S_n` in lexicographic order.
pub struct AllPermutations {
    next: Option<Vec<usize>>,
}

impl Iterator for AllPermutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let current = self.next.take()?;
        let mut a = current.clone();
        // standard next-permutation step
        if a.len() > 1 {
            let mut i = a.len() - 1;
            while i > 0 && a[i - 1] >= a[i] {
                i -= 1;
            }
            if i > 0 {
                let mut j = a.len() - 1;
                while a[j] <= a[i - 1] {
                    j -= 1;
                }
                a.swap(i - 1, j);
                a[i..].reverse();
                self.next = Some(a);
            }
        }
        Some(Permutation { images: current })
    }
}

/// Precomputed basis-index map of `V_σ` on `(C^d)^{⊗n}`.
///
/// `V_σ |x⟩ = |map[x]⟩`, so `V_σ` is applied by reindexing instead of a dense
/// product.
#[derive(Clone, Debug)]
pub struct PermutationAction {
    map: Vec<usize>,
    layout: SubsystemLayout,
}

impl PermutationAction {
    pub fn new(sigma: &Permutation, d: usize) -> Result<Self> {
        let n = sigma.degree();
        let dim = pow_within(d, n, Limits::DEFAULT.max_dim)?;
        let layout = SubsystemLayout::uniform(d, n);
        let strides = layout.strides();
        let mut map = vec![0usize; dim];
        let mut digits = vec![0usize; n];
        for (x, slot) in map.iter_mut().enumerate() {
            let mut rem = x;
            for f in (0..n).rev() {
                digits[f] = rem % d;
                rem /= d;
            }
            *slot = digits
                .iter()
                .enumerate()
                .map(|(i, &v)| v * strides[sigma.apply(i)])
                .sum();
        }
        Ok(Self { map, layout })
    }

    #[inline]
    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn layout(&self) -> &SubsystemLayout {
        &self.layout
    }

    pub fn apply_vec(&self, v: &[C64]) -> Vec<C64> {
        let mut out = vec![ZERO; v.len()];
        for (x, &y) in self.map.iter().enumerate() {
            out[y] = v[x];
        }
        out
    }

    pub fn apply_state(&self, v: &StateVector) -> Result<StateVector> {
        if v.layout() != &self.layout {
            return Err(Error::LayoutMismatch(
                self.layout.dims().to_vec(),
                v.layout().dims().to_vec(),
            ));
        }
        Ok(StateVector::from_parts(
            self.apply_vec(v.data()),
            self.layout.clone(),
        ))
    }

    /// `V_σ X`.
    pub fn left_mul(&self, x: &Matrix) -> Matrix {
        let n = x.cols();
        let mut out = vec![ZERO; x.rows() * n];
        for (r, &y) in self.map.iter().enumerate() {
            out[y * n..(y + 1) * n].copy_from_slice(x.row(r));
        }
        Matrix::from_vec(x.rows(), n, out).expect("shape preserved")
    }

    /// `X V_σ`.
    pub fn right_mul(&self, x: &Matrix) -> Matrix {
        Matrix::from_fn(x.rows(), x.cols(), |i, j| x.get(i, self.map[j]))
    }

    /// `V_σ X V_σ†`.
    pub fn conjugate(&self, x: &Matrix) -> Matrix {
        let n = x.cols();
        let mut out = vec![ZERO; x.rows() * n];
        let src = x.data();
        for (r, &yr) in self.map.iter().enumerate() {
            for (c, &yc) in self.map.iter().enumerate() {
                out[yr * n + yc] = src[r * n + c];
            }
        }
        Matrix::from_vec(x.rows(), n, out).expect("shape preserved")
    }

    /// `acc += c V_σ`.
    pub fn accumulate_into(&self, acc: &mut Matrix, c: C64) {
        for (x, &y) in self.map.iter().enumerate() {
            let v = acc.get(y, x);
            acc.set(y, x, v + c);
        }
    }
}

/// Dense `V_σ` on `(C^d)^{⊗n}` with `n = σ.degree()`.
pub fn permutation_operator(sigma: &Permutation, d: usize) -> Result<Operator> {
    permutation_operator_within(sigma, d, &Limits::DEFAULT)
}

pub fn permutation_operator_within(
    sigma: &Permutation,
    d: usize,
    limits: &Limits,
) -> Result<Operator> {
    let dim = pow_within(d, sigma.degree(), limits.max_operator_dim)?;
    let action = PermutationAction::new(sigma, d)?;
    let mut m = Matrix::zeros(dim, dim);
    action.accumulate_into(&mut m, ONE);
    Operator::new(m, action.layout)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumerates_symmetric_group() {
        let all: Vec<Permutation> = Permutation::all(4).collect();
        assert_eq!(all.len(), 24);
        let mut dedup = all.clone();
        dedup.sort();
        dedup.dedup();
        assert_eq!(dedup.len(), 24);
        assert_eq!(Permutation::all(0).count(), 1);
    }

    #[test]
    fn rejects_non_bijection() {
        assert!(Permutation::new(vec![0, 0, 1]).is_err());
        assert!(Permutation::new(vec![0, 3, 1]).is_err());
        assert!(Permutation::from_one_based(&[2, 1, 3]).is_ok());
    }

    #[test]
    fn group_laws() {
        for s in Permutation::all(4) {
            assert_eq!(s.compose(&s.inverse()), Permutation::identity(4));
            assert_eq!(s.inverse().cycle_type(), s.cycle_type());
        }
        let t = Permutation::transposition(3, 0, 2).unwrap();
        assert_eq!(t.sign(), -1);
        assert_eq!(t.cycle_type(), vec![2, 1]);
    }

    #[test]
    fn swap_matrix() {
        let v = permutation_operator(&Permutation::transposition(2, 0, 1).unwrap(), 2).unwrap();
        let expected = Matrix::from_real_rows(&[
            &[1.0, 0.0, 0.0, 0.0],
            &[0.0, 0.0, 1.0, 0.0],
            &[0.0, 1.0, 0.0, 0.0],
            &[0.0, 0.0, 0.0, 1.0],
        ])
        .unwrap();
        assert_eq!(v.matrix(), &expected);
    }

    #[test]
    fn identity_permutation_is_identity_operator() {
        let v = permutation_operator(&Permutation::identity(3), 3).unwrap();
        assert_eq!(v.matrix(), &Matrix::identity(27));
    }

    #[test]
    fn slot_convention() {
        // σ = 3-cycle 0→1→2→0: |v0 v1 v2⟩ ↦ |v2 v0 v1⟩
        let sigma = Permutation::new(vec![1, 2, 0]).unwrap();
        let act = PermutationAction::new(&sigma, 3).unwrap();
        let layout = SubsystemLayout::uniform(3, 3);
        let x = layout.index(&[0, 1, 2]);
        assert_eq!(layout.digits(act.map()[x]), vec![2, 0, 1]);
    }

    #[test]
    fn action_helpers_match_dense() {
        let sigma = Permutation::new(vec![2, 0, 1]).unwrap();
        let d = 2;
        let v = permutation_operator(&sigma, d).unwrap();
        let act = PermutationAction::new(&sigma, d).unwrap();
        let x = Matrix::from_fn(8, 8, |i, j| C64::new(i as f64, (j * j) as f64));
        assert!(act.left_mul(&x).distance(&v.matrix().matmul(&x)) < 1e-14);
        assert!(act.right_mul(&x).distance(&x.matmul(v.matrix())) < 1e-14);
        let conj = v.matrix().matmul(&x).matmul(&v.matrix().adjoint());
        assert!(act.conjugate(&x).distance(&conj) < 1e-14);
    }
}
