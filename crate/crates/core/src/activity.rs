//! Per-user posting (`lambda`) and re-posting (`mu`) rates.

use std::io::{BufRead, Write};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::DirectedGraph;

/// Posting and re-posting rates, one entry per node index.
#[derive(Debug, Clone, PartialEq)]
pub struct ActivityProfile {
    lambda: Vec<f64>,
    mu: Vec<f64>,
}

impl ActivityProfile {
    /// Validates and wraps rate vectors. Every rate must be finite and
    /// non-negative, and `lambda + mu` must be positive for every node.
    pub fn new(lambda: Vec<f64>, mu: Vec<f64>) -> Result<Self> {
        if lambda.len() != mu.len() {
            return Err(Error::DimensionMismatch {
                expected: lambda.len(),
                actual: mu.len(),
            });
        }
        if lambda.is_empty() {
            return Err(Error::InvalidActivity(
                "profile must cover at least one node".into(),
            ));
        }
        for (n, (&l, &m)) in lambda.iter().zip(&mu).enumerate() {
            check_rates(l, m).map_err(|msg| Error::InvalidActivity(format!("node {n}: {msg}")))?;
        }
        Ok(ActivityProfile { lambda, mu })
    }

    /// Every node posts at `lambda` and re-posts at `mu`.
    pub fn homogeneous(n: usize, lambda: f64, mu: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidActivity(
                "node count must be at least 1".into(),
            ));
        }
        check_rates(lambda, mu).map_err(Error::InvalidActivity)?;
        Ok(ActivityProfile {
            lambda: vec![lambda; n],
            mu: vec![mu; n],
        })
    }

    /// Rates drawn independently from the open interval (0, 1). The same
    /// seed always yields the same profile.
    pub fn random_uniform(n: usize, seed: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidActivity(
                "node count must be at least 1".into(),
            ));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut lambda = Vec::with_capacity(n);
        let mut mu = Vec::with_capacity(n);
        for _ in 0..n {
            lambda.push(open_unit(&mut rng));
            mu.push(open_unit(&mut rng));
        }
        Ok(ActivityProfile { lambda, mu })
    }

    pub fn len(&self) -> usize {
        self.lambda.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lambda.is_empty()
    }

    pub fn lambda(&self) -> &[f64] {
        &self.lambda
    }

    pub fn mu(&self) -> &[f64] {
        &self.mu
    }

    /// `Some((lambda, mu))` when every node shares the same rates.
    pub fn as_homogeneous(&self) -> Option<(f64, f64)> {
        let (l0, m0) = (self.lambda[0], self.mu[0]);
        let same = self.lambda.iter().all(|&l| l == l0) && self.mu.iter().all(|&m| m == m0);
        same.then_some((l0, m0))
    }
}

fn check_rates(lambda: f64, mu: f64) -> std::result::Result<(), String> {
    if !lambda.is_finite() || !mu.is_finite() {
        return Err(format!("rates must be finite (lambda={lambda}, mu={mu})"));
    }
    if lambda < 0.0 || mu < 0.0 {
        return Err(format!(
            "rates must be non-negative (lambda={lambda}, mu={mu})"
        ));
    }
    if lambda + mu <= 0.0 {
        return Err(format!(
            "lambda + mu must be positive (lambda={lambda}, mu={mu})"
        ));
    }
    Ok(())
}

fn open_unit<R: Rng>(rng: &mut R) -> f64 {
    loop {
        let x: f64 = rng.gen();
        if x > 0.0 {
            return x;
        }
    }
}

/// Reads `label,lambda,mu` rows and aligns them with the graph's node
/// indices. A leading `label,lambda,mu` header and `#` comments are skipped.
pub fn load_activity<R: BufRead>(reader: R, graph: &DirectedGraph) -> Result<ActivityProfile> {
    let n = graph.num_nodes();
    let mut lambda = vec![f64::NAN; n];
    let mut mu = vec![f64::NAN; n];
    let mut seen = vec![false; n];

    for (lineno, line) in reader.lines().enumerate() {
        let line = line?;
        let line_no = lineno + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = trimmed.split(',').map(str::trim).collect();
        if fields.len() != 3 {
            return Err(Error::Parse {
                line: line_no,
                message: format!("expected label,lambda,mu but found {} fields", fields.len()),
            });
        }
        if fields[0] == "label" {
            continue;
        }
        let parse_err = |what: &str, tok: &str| Error::Parse {
            line: line_no,
            message: format!("invalid {what} {tok:?}"),
        };
        let label: u64 = fields[0]
            .parse()
            .map_err(|_| parse_err("label", fields[0]))?;
        let l: f64 = fields[1]
            .parse()
            .map_err(|_| parse_err("lambda", fields[1]))?;
        let m: f64 = fields[2].parse().map_err(|_| parse_err("mu", fields[2]))?;
        let idx = graph.index_of(label).ok_or_else(|| {
            Error::InvalidActivity(format!("line {line_no}: unknown node label {label}"))
        })?;
        if seen[idx] {
            return Err(Error::InvalidActivity(format!(
                "line {line_no}: node label {label} listed twice"
            )));
        }
        check_rates(l, m)
            .map_err(|msg| Error::InvalidActivity(format!("line {line_no}: {msg}")))?;
        seen[idx] = true;
        lambda[idx] = l;
        mu[idx] = m;
    }

    if let Some(missing) = seen.iter().position(|&s| !s) {
        return Err(Error::InvalidActivity(format!(
            "node label {} has no activity row",
            graph.labels()[missing]
        )));
    }
    ActivityProfile::new(lambda, mu)
}

/// Writes the profile as `label,lambda,mu` with a header row. Numbers carry
/// 17 significant digits so a reload is bit-exact.
pub fn save_activity<W: Write>(
    profile: &ActivityProfile,
    graph: &DirectedGraph,
    mut out: W,
) -> Result<()> {
    if profile.len() != graph.num_nodes() {
        return Err(Error::DimensionMismatch {
            expected: graph.num_nodes(),
            actual: profile.len(),
        });
    }
    writeln!(out, "label,lambda,mu")?;
    for (idx, &label) in graph.labels().iter().enumerate() {
        writeln!(
            out,
            "{label},{:.16e},{:.16e}",
            profile.lambda[idx], profile.mu[idx]
        )?;
    }
    Ok(())
}
