use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use uplab::linalg::{kernel_basis, rank, ExactMatrix};
use uplab::{make_extension, Field};

fn random_matrix(field: &Field, rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> ExactMatrix {
    let mut m = ExactMatrix::zeros(field, rows, cols);
    for r in 0..rows {
        for c in 0..cols {
            m.set(r, c, field.random(rng));
        }
    }
    m
}

#[test]
fn rank_examples() {
    let f7 = make_extension(7, 1).unwrap();
    assert_eq!(rank(&ExactMatrix::zeros(&f7, 3, 3)), 0);
    for n in 0..6 {
        assert_eq!(rank(&ExactMatrix::identity(&f7, n)), n);
        assert!(kernel_basis(&ExactMatrix::identity(&f7, n)).is_empty());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(62);
    let mut full = 0;
    for _ in 0..50 {
        let a = random_matrix(&f7, 6, 2, &mut rng);
        let b = random_matrix(&f7, 2, 6, &mut rng);
        let r = rank(&a.mul(&b));
        assert!(r <= 2);
        full += (r == 2) as usize;
    }
    assert!(full >= 40, "rank 2 should be generic, got {full}/50");
}

#[test]
fn kernel_examples() {
    let f2 = make_extension(2, 1).unwrap();
    let k = kernel_basis(&ExactMatrix::from_i64(&f2, &[vec![1, 1]]));
    assert_eq!(k, vec![vec![f2.one(), f2.one()]]);

    let f = make_extension(3, 2).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..20 {
        let (r, c) = (rng.gen_range(1..7), rng.gen_range(1..9));
        let m = random_matrix(&f, r, c, &mut rng);
        for v in kernel_basis(&m) {
            assert!(m.mul_vec(&v).iter().all(|x| x.is_zero()));
        }
    }
}

#[test]
fn kernel_basis_is_reduced_echelon() {
    let f5 = make_extension(5, 1).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..20 {
        let a = random_matrix(&f5, 4, 2, &mut rng);
        let b = random_matrix(&f5, 2, 7, &mut rng);
        let basis = kernel_basis(&a.mul(&b));
        // The last nonzero entry of each vector is 1, at a position where every other vector is 0.
        for (i, v) in basis.iter().enumerate() {
            let lead = v.iter().rposition(|x| !x.is_zero()).unwrap();
            assert!(v[lead].is_one());
            for (j, w) in basis.iter().enumerate() {
                if i != j {
                    assert!(w[lead].is_zero());
                }
            }
        }
        // Same space from a row-shuffled matrix gives the identical basis.
        let mut rows = a.mul(&b).to_rows();
        rows.shuffle(&mut rng);
        assert_eq!(kernel_basis(&ExactMatrix::from_rows(&f5, rows)), basis);
    }
}

#[test]
fn rational_rank_matches_reduction_mod_large_prime() {
    let q = Field::rational();
    let p = make_extension(1_000_000_007, 1).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(100);
    for _ in 0..100 {
        let (r, c, k) = (rng.gen_range(1..6), rng.gen_range(1..6), rng.gen_range(1..4));
        // integer matrix of rank at most k, entries up to a few thousand
        let a: Vec<Vec<i64>> = (0..r)
            .map(|_| (0..k).map(|_| rng.gen_range(-30..30)).collect())
            .collect();
        let b: Vec<Vec<i64>> = (0..k)
            .map(|_| (0..c).map(|_| rng.gen_range(-30..30)).collect())
            .collect();
        let m: Vec<Vec<i64>> = (0..r)
            .map(|i| (0..c).map(|j| (0..k).map(|l| a[i][l] * b[l][j]).sum()).collect())
            .collect();
        let rq = rank(&ExactMatrix::from_i64(&q, &m));
        let rp = rank(&ExactMatrix::from_i64(&p, &m));
        assert_eq!(rq, rp, "{m:?}");
        assert_eq!(rq + kernel_basis(&ExactMatrix::from_i64(&q, &m)).len(), c);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_nullity(seed in any::<u64>(), r in 0usize..7, c in 0usize..7, k in 0usize..4) {
        let f = make_extension(2, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_matrix(&f, r, k, &mut rng).mul(&random_matrix(&f, k, c, &mut rng));
        prop_assert_eq!(rank(&m) + kernel_basis(&m).len(), c);
    }

    #[test]
    fn rank_invariant_under_permutation_and_scaling(seed in any::<u64>(), r in 1usize..7, c in 1usize..7) {
        let f = make_extension(7, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let k = rng.gen_range(0..=r.min(c));
        let m = random_matrix(&f, r, k, &mut rng).mul(&random_matrix(&f, k, c, &mut rng));
        let mut rows = m.to_rows();
        rows.shuffle(&mut rng);
        for row in rows.iter_mut() {
            let s = f.random_nonzero(&mut rng);
            for x in row.iter_mut() {
                *x = &*x * &s;
            }
        }
        let mut perm: Vec<usize> = (0..c).collect();
        perm.shuffle(&mut rng);
        let rows: Vec<Vec<_>> = rows.iter().map(|row| perm.iter().map(|&j| row[j].clone()).collect()).collect();
        prop_assert_eq!(rank(&ExactMatrix::from_rows(&f, rows)), rank(&m));
    }
}
