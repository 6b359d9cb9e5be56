use std::collections::BTreeSet;

use mctele::symgroup::{
    character, character_of_class, f_projector, partitions, sym_basis, sym_projector,
    young_projector, IrrepData, Partition,
};
use mctele::tensor::{permutation_operator, Operator, Permutation, SubsystemLayout};

fn compositions_sorted(k: usize) -> BTreeSet<Vec<usize>> {
    let mut out = BTreeSet::new();
    for mask in 0u32..(1 << (k - 1)) {
        let mut parts = Vec::new();
        let mut run = 1;
        for bit in 0..k - 1 {
            if mask & (1 << bit) != 0 {
                parts.push(run);
                run = 1;
            } else {
                run += 1;
            }
        }
        parts.push(run);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        out.insert(parts);
    }
    out
}

#[test]
fn partition_counts_match_composition_oracle() {
    assert_eq!(partitions(4).len(), 5);
    for k in 1..=9 {
        let oracle = compositions_sorted(k);
        let got: BTreeSet<Vec<usize>> = partitions(k).iter().map(|p| p.parts().to_vec()).collect();
        assert_eq!(got, oracle, "k = {k}");
    }
    assert_eq!(partitions(7).len(), 15);
}

fn cells(mu: &Partition) -> Vec<(usize, usize)> {
    mu.cells().collect()
}

fn valid_filling(mu: &Partition, fill: &[usize], strict_rows: bool) -> bool {
    let cs = cells(mu);
    let at = |i: usize, j: usize| cs.iter().position(|&c| c == (i, j)).map(|p| fill[p]);
    cs.iter().all(|&(i, j)| {
        let v = at(i, j).unwrap();
        let row_ok = match at(i, j + 1) {
            Some(r) => {
                if strict_rows {
                    r > v
                } else {
                    r >= v
                }
            }
            None => true,
        };
        let col_ok = at(i + 1, j).is_none_or(|b| b > v);
        row_ok && col_ok
    })
}

fn count_standard(mu: &Partition) -> u128 {
    Permutation::all(mu.size())
        .filter(|p| valid_filling(mu, p.images(), true))
        .count() as u128
}

fn count_semistandard(mu: &Partition, d: usize) -> u128 {
    let k = mu.size();
    let total = d.pow(k as u32);
    (0..total)
        .filter(|&x| {
            let mut rem = x;
            let fill: Vec<usize> = (0..k)
                .map(|_| {
                    let v = rem % d;
                    rem /= d;
                    v
                })
                .collect();
            valid_filling(mu, &fill, false)
        })
        .count() as u128
}

#[test]
fn hook_formulas_match_tableau_enumeration() {
    for k in 1..=6 {
        for mu in partitions(k) {
            assert_eq!(mu.dim_standard(), count_standard(&mu), "d_mu for {mu}");
            for d in 1..=3 {
                if k <= 5 {
                    assert_eq!(
                        mu.mult_semistandard(d),
                        count_semistandard(&mu, d),
                        "m_mu for {mu}, d={d}"
                    );
                }
            }
        }
    }
}

#[test]
fn symmetric_frame_counts() {
    for k in 1..=10usize {
        for d in 1..=6usize {
            let binom = |n: usize, r: usize| -> u128 {
                (0..r).fold(1u128, |acc, i| acc * (n - i) as u128 / (i as u128 + 1))
            };
            assert_eq!(Partition::row(k).mult_semistandard(d), binom(k - 1 + d, k));
            assert_eq!(Partition::row(k).dim_standard(), 1);
        }
    }
}

#[test]
fn character_orthogonality() {
    for k in 1..=5 {
        let perms: Vec<Permutation> = Permutation::all(k).collect();
        let n = perms.len() as i64;
        for mu in partitions(k) {
            for nu in partitions(k) {
                let s: i64 = perms
                    .iter()
                    .map(|p| character(&mu, p).unwrap() * character(&nu, p).unwrap())
                    .sum();
                assert_eq!(s, if mu == nu { n } else { 0 }, "{mu} vs {nu}");
            }
        }
    }
}

#[test]
fn column_orthogonality_gives_centralizer_order() {
    // Σ_μ χ^μ(C)² = |centralizer of C|
    let k = 5;
    for ct in partitions(k) {
        let s: i64 = partitions(k)
            .iter()
            .map(|mu| character_of_class(mu, ct.parts()).pow(2))
            .sum();
        let class_size = Permutation::all(k)
            .filter(|p| p.cycle_type() == ct.parts())
            .count() as i64;
        assert_eq!(s * class_size, 120);
    }
}

#[test]
fn young_projector_trace_rule_and_orthogonality() {
    for k in 1..=5 {
        for d in [2, 3] {
            if d == 3 && k == 5 {
                continue;
            }
            let ps: Vec<(IrrepData, Operator)> = partitions(k)
                .into_iter()
                .map(|mu| {
                    (
                        IrrepData::new(mu.clone(), d),
                        young_projector(&mu, d).unwrap(),
                    )
                })
                .collect();
            let mut total = Operator::zeros(SubsystemLayout::uniform(d, k));
            for (i, (info, p)) in ps.iter().enumerate() {
                assert!((p.trace().re - (info.m_mu * info.d_mu) as f64).abs() < 1e-9);
                assert!(p.projector_defect() < 1e-10);
                for (_, q) in ps.iter().skip(i + 1) {
                    assert!(p.try_matmul(q).unwrap().frobenius_norm() < 1e-10);
                }
                total.axpy(1.0, p);
            }
            assert!(total.distance(&Operator::identity(SubsystemLayout::uniform(d, k))) < 1e-10);
        }
    }
}

#[test]
fn sym_projector_matches_occupation_basis() {
    let dense = sym_projector(4, 3).unwrap();
    let basis = sym_basis(4, 3).unwrap();
    assert_eq!(basis.len(), 15);
    assert!(dense.distance(&basis.projector().unwrap()) <= 1e-12);
}

#[test]
fn sym_basis_gram_and_invariance() {
    let b = sym_basis(3, 3).unwrap();
    assert_eq!(b.len(), 10);
    for (i, u) in b.vectors.iter().enumerate() {
        for (j, v) in b.vectors.iter().enumerate() {
            let e = if i == j { 1.0 } else { 0.0 };
            assert!((u.inner(v).re - e).abs() < 1e-12 && u.inner(v).im.abs() < 1e-12);
        }
    }
    for sigma in Permutation::all(3) {
        let v_sigma = permutation_operator(&sigma, 3).unwrap();
        for u in &b.vectors {
            assert!(u.apply(&v_sigma).unwrap().distance(u) < 1e-12);
        }
    }
}

#[test]
fn sym_projector_absorbs_permutations() {
    for d in [2, 3] {
        let p = sym_projector(3, d).unwrap();
        for sigma in Permutation::all(3) {
            let v = permutation_operator(&sigma, d).unwrap();
            assert!(v.try_matmul(&p).unwrap().distance(&p) < 1e-12);
            assert!(p.try_matmul(&v).unwrap().distance(&p) < 1e-12);
        }
    }
}

#[test]
fn larger_symmetric_space_selects_row_frame() {
    // P^sym on k+1 factors times P_μ ⊗ 1 vanishes unless μ is the row frame
    for d in [2, 3] {
        for k in 1..=4 {
            let big = sym_projector(k + 1, d).unwrap();
            let id = Operator::identity(SubsystemLayout::single(d));
            for mu in partitions(k) {
                let p = young_projector(&mu, d).unwrap().kron(&id).unwrap();
                let prod = big.try_matmul(&p).unwrap();
                let target = if mu.is_row() {
                    big.clone()
                } else {
                    Operator::zeros(big.layout().clone())
                };
                assert!(prod.distance(&target) <= 1e-10, "d={d} k={k} mu={mu}");
            }
        }
    }
}

fn valid_pairs(k: usize, d: usize) -> Vec<(Partition, Partition)> {
    let mut out = Vec::new();
    for mu in partitions(k) {
        if mu.mult_semistandard(d) == 0 {
            continue;
        }
        for alpha in mu.removals() {
            if alpha.mult_semistandard(d) > 0 {
                out.push((mu.clone(), alpha));
            }
        }
    }
    out
}

#[test]
fn f_projectors_orthogonal_with_trace_rule() {
    for (k, d) in [(2, 2), (3, 2), (2, 3)] {
        let fs: Vec<(Partition, Partition, Operator)> = valid_pairs(k, d)
            .into_iter()
            .map(|(mu, alpha)| {
                let f = f_projector(&mu, &alpha, d).unwrap();
                (mu, alpha, f)
            })
            .collect();
        assert!(fs.len() >= 2);
        for (i, (mu, alpha, f)) in fs.iter().enumerate() {
            let expected = (alpha.mult_semistandard(d) * mu.dim_standard()) as f64;
            assert!(
                (f.trace().re - expected).abs() <= 1e-10,
                "trace of F_{mu}({alpha})"
            );
            assert!(f.projector_defect() <= 1e-10);
            for (j, (_, _, g)) in fs.iter().enumerate() {
                if i != j {
                    assert!(f.try_matmul(g).unwrap().frobenius_norm() <= 1e-10);
                }
            }
        }
    }
}

#[test]
fn symmetric_f_projector_trace() {
    for k in [2, 3] {
        let f = f_projector(&Partition::row(k), &Partition::row(k - 1), 2).unwrap();
        let m = Partition::row(k - 1).mult_semistandard(2) as f64;
        assert!((f.trace().re - m).abs() < 1e-10);
    }
}
