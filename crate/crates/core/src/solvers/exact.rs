use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::operator::PsiOperator;

pub const DEFAULT_DENSE_CAP: usize = 2000;

/// Ground-truth psi from a dense LU solve of `(I - A)^T s = c`.
///
/// Builds the N x N system straight from the graph and activity rates, so it
/// shares no code path with the matrix-free kernels. Refuses graphs with more
/// than `dense_cap` nodes.
pub fn exact_psi(op: &PsiOperator<'_>, dense_cap: usize) -> Result<Vec<f64>> {
    let graph = op.graph();
    let n = graph.num_nodes();
    if n > dense_cap {
        return Err(Error::DenseCapExceeded {
            num_nodes: n,
            cap: dense_cap,
        });
    }
    let (lambda, mu) = (op.activity().lambda(), op.activity().mu());

    // (I - A)^T[i][j] = delta_ij - a[j][i]
    let mut system = DMatrix::<f64>::identity(n, n);
    let mut denom = vec![0.0; n];
    for (j, r) in denom.iter_mut().enumerate() {
        let leaders = graph.leaders_of(j);
        *r = leaders
            .iter()
            .map(|&l| lambda[l as usize] + mu[l as usize])
            .sum();
        for &i in leaders {
            system[(i as usize, j)] -= mu[i as usize] / *r;
        }
    }
    let rhs = DVector::from_iterator(n, (0..n).map(|k| mu[k] / (lambda[k] + mu[k])));
    let s = system.lu().solve(&rhs).ok_or(Error::Singular)?;
    if s.iter().any(|x| !x.is_finite()) {
        return Err(Error::Singular);
    }

    // psi_i = (sum_j s_j b[j][i] + d_i) / N
    let mut psi: Vec<f64> = (0..n).map(|k| lambda[k] / (lambda[k] + mu[k])).collect();
    for j in 0..n {
        for &i in graph.leaders_of(j) {
            psi[i as usize] += s[j] * lambda[i as usize] / denom[j];
        }
    }
    for x in &mut psi {
        *x /= n as f64;
    }
    Ok(psi)
}
