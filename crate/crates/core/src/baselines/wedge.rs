use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::graph::VertexId;
use crate::walk::WalkTrace;

/// `Ŵ = m̄ · mean(d(v) − 1)` over the post-step vertices of a simple walk.
///
/// Under the walk's stationary law `π(v) = d(v) / 2m`,
/// `E[d(v) − 1] = Σ_v d(v)(d(v) − 1) / 2m = W / m`.
pub fn wedge_count_estimate(trace: &WalkTrace, m_bar: f64) -> Result<f64> {
    if trace.is_empty() {
        return Err(Error::EmptyTrace);
    }
    let post = &trace.vertex_degrees()[1..];
    let excess: u64 = post.iter().map(|&d| d.saturating_sub(1)).sum();
    Ok(m_bar * excess as f64 / post.len() as f64)
}

/// Wedge count from states of a chain whose stationary law is
/// `C(d(v), 2) / W`, by weighted collisions.
///
/// Within each stride-`t_hat` stratum of `k` states, a colliding pair on `v`
/// is weighted `1 / C(d(v), 2)`. Its expectation is `C(k, 2) / W`, so each
/// stratum with a collision yields `C(k, 2) / c_w`; the estimate is their
/// mean. States of degree below 2 carry no stationary mass and are skipped.
pub fn mh_wedge_count_estimate(states: &[(VertexId, u64)], t_hat: usize) -> Result<f64> {
    if t_hat == 0 {
        return Err(Error::InvalidConfig("stride must be positive".into()));
    }
    if states.len() < t_hat {
        return Err(Error::WalkTooShort {
            r: states.len(),
            t_hat,
        });
    }
    let mut sum = 0.0;
    let mut valid = 0usize;
    for i in 0..t_hat {
        let mut freq: HashMap<VertexId, (u64, u64)> = HashMap::new();
        let mut k = 0u64;
        for &(v, d) in states[i..].iter().step_by(t_hat) {
            if d < 2 {
                continue;
            }
            k += 1;
            freq.entry(v).or_insert((d, 0)).1 += 1;
        }
        let weighted: f64 = freq
            .values()
            .map(|&(d, f)| (f * (f - 1) / 2) as f64 / (d * (d - 1) / 2) as f64)
            .sum();
        if weighted > 0.0 {
            sum += (k * k.saturating_sub(1) / 2) as f64 / weighted;
            valid += 1;
        }
    }
    if valid == 0 {
        return Err(Error::InsufficientCollisions);
    }
    Ok(sum / valid as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate;
    use crate::oracle::OracleSession;
    use crate::walk::random_walk;

    #[test]
    fn k3_is_exact() {
        let k3 = generate::complete(3);
        let mut s = OracleSession::open(&k3, 0, 1, false).unwrap();
        let t = random_walk(&mut s, 50, false).unwrap();
        assert_eq!(wedge_count_estimate(&t, 3.0).unwrap(), 3.0);
    }

    #[test]
    fn regular_graph_is_deterministic() {
        let c6 = generate::cycle(6);
        for seed in 0..5 {
            let mut s = OracleSession::open(&c6, 0, seed, false).unwrap();
            let t = random_walk(&mut s, 37, false).unwrap();
            assert_eq!(wedge_count_estimate(&t, 6.0).unwrap(), 6.0);
        }
    }

    #[test]
    fn star_stationary_expectation() {
        // exact stationary mean of d - 1 is (3/6)·2 + 3·(1/6)·0 = 1, so Ŵ → 3
        let star = generate::star(3);
        let mut s = OracleSession::open(&star, 0, 2, false).unwrap();
        let t = random_walk(&mut s, 1000, false).unwrap();
        // the star walk alternates center/leaf, so the mean is exactly 1
        assert_eq!(wedge_count_estimate(&t, 3.0).unwrap(), 3.0);
    }

    #[test]
    fn weighted_collisions_by_hand() {
        // one stratum, states v=0 (d=2) twice and v=1 (d=3) twice:
        // c_w = 1/1 + 1/3 = 4/3, C(4,2) = 6, Ŵ = 4.5
        let states = [(0, 2), (1, 3), (0, 2), (1, 3)];
        let w = mh_wedge_count_estimate(&states, 1).unwrap();
        assert!((w - 4.5).abs() < 1e-12);
        assert!(matches!(
            mh_wedge_count_estimate(&[(0, 2), (1, 2)], 1),
            Err(Error::InsufficientCollisions)
        ));
        assert!(mh_wedge_count_estimate(&states, 5).is_err());
    }
}
