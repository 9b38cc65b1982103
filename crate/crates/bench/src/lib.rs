//! Seeded inputs shared by the benchmarks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qgor::{ExactMatrix, FieldSpec, SimplicialComplex};

/// Dense matrix with entries in `-2..=2`, reproducible from `seed`.
pub fn random_matrix(seed: u64, rows: usize, cols: usize, field: FieldSpec) -> ExactMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let data: Vec<i64> = (0..rows * cols).map(|_| rng.gen_range(-2..=2)).collect();
    ExactMatrix::from_i64(field, rows, cols, &data)
}

/// Random pure complex: `facets` random `(dim+1)`-subsets of `1..=n`.
pub fn random_pure_complex(seed: u64, n: u32, dim: usize, facets: usize) -> SimplicialComplex {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let raw: Vec<Vec<i64>> = (0..facets)
        .map(|_| {
            let mut f: Vec<i64> = Vec::with_capacity(dim + 1);
            while f.len() <= dim {
                let v = rng.gen_range(1..=n as i64);
                if !f.contains(&v) {
                    f.push(v);
                }
            }
            f
        })
        .collect();
    SimplicialComplex::from_facets(raw.into_iter().map(|f| f.into_iter()), n).expect("ids in range")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inputs_are_reproducible() {
        let a = random_matrix(7, 4, 5, FieldSpec::Rationals);
        let b = random_matrix(7, 4, 5, FieldSpec::Rationals);
        assert_eq!(a.rank(), b.rank());
        assert_eq!(random_pure_complex(3, 9, 2, 12), random_pure_complex(3, 9, 2, 12));
        assert!(random_pure_complex(3, 9, 2, 12).is_pure());
    }
}
