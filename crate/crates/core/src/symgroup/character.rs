//! Irreducible characters by the Murnaghan–Nakayama rule on beta-sets.

use std::cell::RefCell;
use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::tensor::Permutation;

use super::partition::Partition;

thread_local! {
    static MEMO: RefCell<HashMap<(Vec<usize>, Vec<usize>), i64>> = RefCell::new(HashMap::new());
}

/// `χ^μ(σ)`. Class functions on `S_k` satisfy `χ(σ⁻¹) = χ(σ)`.
pub fn character(mu: &Partition, sigma: &Permutation) -> Result<i64> {
    if mu.size() != sigma.degree() {
        return Err(Error::SizeMismatch {
            partition: mu.size(),
            permutation: sigma.degree(),
        });
    }
    Ok(character_of_class(mu, &sigma.cycle_type()))
}

/// `χ^μ` on the class with the given cycle lengths (any order).
pub fn character_of_class(mu: &Partition, cycle_type: &[usize]) -> i64 {
    assert_eq!(
        mu.size(),
        cycle_type.iter().sum::<usize>(),
        "character: size mismatch"
    );
    mn(mu.parts(), cycle_type)
}

fn mn(parts: &[usize], cycles: &[usize]) -> i64 {
    let Some((&r, rest)) = cycles.split_first() else {
        return 1;
    };
    let key = (parts.to_vec(), cycles.to_vec());
    if let Some(v) = MEMO.with(|m| m.borrow().get(&key).copied()) {
        return v;
    }
    let l = parts.len();
    let beta: Vec<usize> = parts
        .iter()
        .enumerate()
        .map(|(i, &p)| p + (l - 1 - i))
        .collect();
    let mut total = 0i64;
    for (i, &b) in beta.iter().enumerate() {
        if b < r || beta.contains(&(b - r)) {
            continue;
        }
        let target = b - r;
        // each bead jumped over flips the sign (one row of the rim hook)
        let jumped = beta.iter().filter(|&&x| x > target && x < b).count();
        let sign = if jumped % 2 == 0 { 1 } else { -1 };
        let mut next = beta.clone();
        next[i] = target;
        next.sort_unstable_by(|a, b| b.cmp(a));
        let reduced: Vec<usize> = next
            .iter()
            .enumerate()
            .map(|(j, &x)| x - (l - 1 - j))
            .filter(|&p| p > 0)
            .collect();
        total += sign * mn(&reduced, rest);
    }
    MEMO.with(|m| m.borrow_mut().insert(key, total));
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symgroup::partitions;

    #[test]
    fn trivial_and_sign() {
        for s in Permutation::all(4) {
            assert_eq!(character(&Partition::row(4), &s).unwrap(), 1);
            assert_eq!(character(&Partition::column(4), &s).unwrap(), s.sign());
        }
    }

    #[test]
    fn identity_gives_dimension() {
        for k in 1..7 {
            for mu in partitions(k) {
                assert_eq!(
                    character_of_class(&mu, &vec![1; k]) as u128,
                    mu.dim_standard()
                );
            }
        }
    }

    #[test]
    fn known_s3_table() {
        let std = Partition::new(vec![2, 1]).unwrap();
        assert_eq!(character_of_class(&std, &[1, 1, 1]), 2);
        assert_eq!(character_of_class(&std, &[2, 1]), 0);
        assert_eq!(character_of_class(&std, &[3]), -1);
    }

    #[test]
    fn size_mismatch() {
        assert!(character(&Partition::row(3), &Permutation::identity(4)).is_err());
    }
}
