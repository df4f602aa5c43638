//! Matrix-free newsfeed/wall operator.
//!
//! For a node `j` with leader set `L(j)` let `r_j = sum over l in L(j) of
//! (lambda_l + mu_l)`. The model matrices are
//!
//! ```text
//! a[j][i] = mu_i     / r_j   if i in L(j), else 0
//! b[j][i] = lambda_i / r_j   if i in L(j), else 0
//! c_j     = mu_j     / (lambda_j + mu_j)
//! d_j     = lambda_j / (lambda_j + mu_j)
//! ```
//!
//! A node that follows nobody has an empty newsfeed: `r_j = 0` and row `j`
//! of both `A` and `B` is zero. Neither matrix is ever materialized.

use crate::activity::ActivityProfile;
use crate::error::{Error, Result};
use crate::graph::DirectedGraph;

/// Number of operator applications performed, split by matrix.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct MatvecCounter {
    pub a: u64,
    pub b: u64,
}

impl MatvecCounter {
    pub fn total(&self) -> u64 {
        self.a + self.b
    }
}

#[derive(Debug, Clone)]
pub struct PsiOperator<'g> {
    graph: &'g DirectedGraph,
    activity: &'g ActivityProfile,
    denom: Vec<f64>,
    inv_denom: Vec<f64>,
    c: Vec<f64>,
    d: Vec<f64>,
    b_norm: f64,
}

impl<'g> PsiOperator<'g> {
    pub fn new(graph: &'g DirectedGraph, activity: &'g ActivityProfile) -> Result<Self> {
        let n = graph.num_nodes();
        if activity.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                actual: activity.len(),
            });
        }
        let (lambda, mu) = (activity.lambda(), activity.mu());

        let denom: Vec<f64> = (0..n)
            .map(|j| {
                graph
                    .leaders_of(j)
                    .iter()
                    .map(|&l| lambda[l as usize] + mu[l as usize])
                    .sum()
            })
            .collect();
        let inv_denom: Vec<f64> = denom
            .iter()
            .map(|&r| if r > 0.0 { 1.0 / r } else { 0.0 })
            .collect();

        let mut c = Vec::with_capacity(n);
        let mut d = Vec::with_capacity(n);
        for k in 0..n {
            let total = lambda[k] + mu[k];
            c.push(mu[k] / total);
            d.push(lambda[k] / total);
        }

        let b_norm = (0..n)
            .map(|i| {
                lambda[i]
                    * graph
                        .followers_of(i)
                        .iter()
                        .map(|&j| inv_denom[j as usize])
                        .sum::<f64>()
            })
            .fold(0.0, f64::max);

        Ok(PsiOperator {
            graph,
            activity,
            denom,
            inv_denom,
            c,
            d,
            b_norm,
        })
    }

    pub fn graph(&self) -> &'g DirectedGraph {
        self.graph
    }

    pub fn activity(&self) -> &'g ActivityProfile {
        self.activity
    }

    pub fn num_nodes(&self) -> usize {
        self.denom.len()
    }

    /// Newsfeed denominators `r_j` (zero for nodes that follow nobody).
    pub fn denom(&self) -> &[f64] {
        &self.denom
    }

    pub fn c(&self) -> &[f64] {
        &self.c
    }

    pub fn d(&self) -> &[f64] {
        &self.d
    }

    /// Induced 1-norm of `B`: the largest column sum.
    pub fn b_norm(&self) -> f64 {
        self.b_norm
    }

    /// Row sum of `A` for node `j`.
    pub fn a_row_sum(&self, j: usize) -> f64 {
        let mu = self.activity.mu();
        self.graph
            .leaders_of(j)
            .iter()
            .map(|&i| mu[i as usize])
            .sum::<f64>()
            * self.inv_denom[j]
    }

    /// `out = A x`.
    pub fn apply_a_right_into(
        &self,
        x: &[f64],
        out: &mut [f64],
        counter: &mut MatvecCounter,
    ) -> Result<()> {
        self.check_dims(x, out)?;
        let mu = self.activity.mu();
        for (j, o) in out.iter_mut().enumerate() {
            let acc: f64 = self
                .graph
                .leaders_of(j)
                .iter()
                .map(|&i| mu[i as usize] * x[i as usize])
                .sum();
            *o = acc * self.inv_denom[j];
        }
        counter.a += 1;
        Ok(())
    }

    /// `out^T = s^T A`.
    pub fn apply_a_left_into(
        &self,
        s: &[f64],
        out: &mut [f64],
        counter: &mut MatvecCounter,
    ) -> Result<()> {
        self.check_dims(s, out)?;
        self.weighted_follower_gather(s, self.activity.mu(), out);
        counter.a += 1;
        Ok(())
    }

    /// `out^T = s^T B`.
    pub fn apply_b_left_into(
        &self,
        s: &[f64],
        out: &mut [f64],
        counter: &mut MatvecCounter,
    ) -> Result<()> {
        self.check_dims(s, out)?;
        self.weighted_follower_gather(s, self.activity.lambda(), out);
        counter.b += 1;
        Ok(())
    }

    pub fn apply_a_right(&self, x: &[f64], counter: &mut MatvecCounter) -> Result<Vec<f64>> {
        let mut out = vec![0.0; self.num_nodes()];
        self.apply_a_right_into(x, &mut out, counter)?;
        Ok(out)
    }

    pub fn apply_a_left(&self, s: &[f64], counter: &mut MatvecCounter) -> Result<Vec<f64>> {
        let mut out = vec![0.0; self.num_nodes()];
        self.apply_a_left_into(s, &mut out, counter)?;
        Ok(out)
    }

    pub fn apply_b_left(&self, s: &[f64], counter: &mut MatvecCounter) -> Result<Vec<f64>> {
        let mut out = vec![0.0; self.num_nodes()];
        self.apply_b_left_into(s, &mut out, counter)?;
        Ok(out)
    }

    /// Column `i` of `B` as sorted `(row, value)` pairs: the posts of origin
    /// `i` injected into its followers' newsfeeds.
    pub fn b_column(&self, i: usize) -> Result<Vec<(usize, f64)>> {
        let followers = self.graph.followers(i)?;
        let lambda_i = self.activity.lambda()[i];
        Ok(followers
            .iter()
            .map(|&j| (j as usize, lambda_i * self.inv_denom[j as usize]))
            .collect())
    }

    /// Dense copy of column `i` of `B`.
    pub fn b_column_dense(&self, i: usize) -> Result<Vec<f64>> {
        let mut out = vec![0.0; self.num_nodes()];
        for (j, v) in self.b_column(i)? {
            out[j] = v;
        }
        Ok(out)
    }

    // out_i = weight_i * sum over followers j of i of s_j / r_j
    fn weighted_follower_gather(&self, s: &[f64], weight: &[f64], out: &mut [f64]) {
        for (i, o) in out.iter_mut().enumerate() {
            let acc: f64 = self
                .graph
                .followers_of(i)
                .iter()
                .map(|&j| s[j as usize] * self.inv_denom[j as usize])
                .sum();
            *o = weight[i] * acc;
        }
    }

    fn check_dims(&self, x: &[f64], out: &[f64]) -> Result<()> {
        let n = self.num_nodes();
        for len in [x.len(), out.len()] {
            if len != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    actual: len,
                });
            }
        }
        Ok(())
    }
}
