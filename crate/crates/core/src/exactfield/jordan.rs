use super::{AlgebraError, Matrix, Ring};

/// The nilpotent Jordan block of the given size: ones on the superdiagonal.
pub fn jordan_block<R: Ring>(parent: &R::Parent, size: usize) -> Matrix<R> {
    Matrix::from_fn(parent, size, size, |i, j| if j == i + 1 { R::one(parent) } else { R::zero(parent) })
}

/// Block-diagonal sum of square matrices.
pub fn block_diagonal<R: Ring>(parent: &R::Parent, blocks: &[Matrix<R>]) -> Matrix<R> {
    let n: usize = blocks.iter().map(Matrix::rows).sum();
    let mut out = Matrix::zeros(parent, n, n);
    let mut off = 0;
    for b in blocks {
        for i in 0..b.rows() {
            for j in 0..b.cols() {
                out.set(off + i, off + j, b.get(i, j).clone());
            }
        }
        off += b.rows();
    }
    out
}

/// Jordan block sizes of a nilpotent matrix, largest first, read off the
/// rank sequence: the number of blocks of size s is
/// `rank(M^{s-1}) - 2 rank(M^s) + rank(M^{s+1})`.
pub fn nilpotent_block_structure<R: Ring>(m: &Matrix<R>) -> Result<Vec<usize>, AlgebraError> {
    if !m.is_square() {
        return Err(AlgebraError::Dimension("nilpotent structure of a non-square matrix".into()));
    }
    if !m.pow(m.rows() as u64).is_zero() {
        return Err(AlgebraError::NotNilpotent);
    }
    blocks_from_ranks(m)
}

/// Jordan block sizes for the eigenvalue `lambda`, which need not be the only
/// eigenvalue. Blocks for other eigenvalues contribute a constant rank and
/// cancel in the second difference.
pub fn eigenvalue_block_structure<R: Ring>(m: &Matrix<R>, lambda: &R) -> Result<Vec<usize>, AlgebraError> {
    let shifted = m.sub(&Matrix::scalar(m.parent(), m.rows(), lambda));
    blocks_from_ranks(&shifted)
}

fn blocks_from_ranks<R: Ring>(a: &Matrix<R>) -> Result<Vec<usize>, AlgebraError> {
    let n = a.rows();
    let mut ranks = Vec::with_capacity(n + 2);
    ranks.push(n);
    let mut power = Matrix::identity(a.parent(), n);
    for _ in 1..=n + 1 {
        power = power.mul(a);
        ranks.push(power.rank()?);
    }
    let mut sizes = Vec::new();
    for s in (1..=n).rev() {
        let count = ranks[s - 1] + ranks[s + 1] - 2 * ranks[s];
        sizes.extend(std::iter::repeat_n(s, count));
    }
    Ok(sizes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::Rational;

    #[test]
    fn zero_matrix_is_all_ones() {
        let z = Matrix::<Rational>::zeros(&(), 3, 3);
        assert_eq!(nilpotent_block_structure(&z).unwrap(), vec![1, 1, 1]);
    }

    #[test]
    fn single_block() {
        let j = jordan_block::<Rational>(&(), 3);
        assert_eq!(nilpotent_block_structure(&j).unwrap(), vec![3]);
    }

    #[test]
    fn tensor_derivation_of_two_j2() {
        let j = jordan_block::<Rational>(&(), 2);
        assert_eq!(nilpotent_block_structure(&j.kron_sum(&j)).unwrap(), vec![3, 1]);
    }

    #[test]
    fn not_nilpotent() {
        let id = Matrix::<Rational>::identity(&(), 2);
        assert!(matches!(nilpotent_block_structure(&id), Err(AlgebraError::NotNilpotent)));
    }

    #[test]
    fn eigenvalue_blocks_ignore_other_eigenvalues() {
        let two = Rational::from_integer(2);
        let a = jordan_block::<Rational>(&(), 2).add(&Matrix::scalar(&(), 2, &two));
        let b = jordan_block::<Rational>(&(), 3);
        let m = block_diagonal(&(), &[a, b]);
        assert_eq!(eigenvalue_block_structure(&m, &two).unwrap(), vec![2]);
        assert_eq!(eigenvalue_block_structure(&m, &Rational::zero()).unwrap(), vec![3]);
    }
}
