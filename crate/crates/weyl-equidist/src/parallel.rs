//! Concurrent evaluation of equidistribution rows.

use std::ops::RangeInclusive;

use rayon::prelude::*;
use weyl_equidist_core::{
    compute_h, equidist_row, nontrivial_characters, EquidistReport, Error, GaloisAction,
};

use crate::error::{CliError, CliResult};

pub const THREADS_ENV: &str = "WEYL_EQUIDIST_THREADS";

/// Thread count from `WEYL_EQUIDIST_THREADS`; `0` or unset means automatic.
pub fn threads_from_env() -> CliResult<usize> {
    match std::env::var(THREADS_ENV) {
        Err(_) => Ok(0),
        Ok(v) => v.trim().parse().map_err(|_| {
            CliError::Parse(format!(
                "{THREADS_ENV} must be a non-negative integer, got {v:?}"
            ))
        }),
    }
}

/// Same result as the sequential `run_equidist`, with rows computed in parallel.
pub fn run_equidist_parallel(
    act: &GaloisAction,
    m_range: RangeInclusive<u32>,
    threads: usize,
) -> CliResult<EquidistReport> {
    if m_range.is_empty() {
        return Err(Error::EmptyRange.into());
    }
    let hg = compute_h(act)?;
    let characters = nontrivial_characters(&hg);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| CliError::Parse(e.to_string()))?;
    let ms: Vec<u32> = m_range.collect();
    // Largest m first so the expensive rows start early; collect restores order.
    let mut rows = pool.install(|| {
        ms.par_iter()
            .rev()
            .map(|&m| equidist_row(&hg, &characters, m))
            .collect::<Vec<_>>()
    });
    rows.reverse();
    Ok(EquidistReport {
        h_order: hg.order(),
        characters,
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use weyl_equidist_core::run_equidist;

    #[test]
    fn matches_sequential() {
        let s = crate::scenario::Scenario::from_json(
            r#"{"cartan_type":"A2","galois_generators":[[[0,-1],[1,-1]]]}"#,
        )
        .unwrap();
        let act = s.action().unwrap();
        let par = run_equidist_parallel(&act, 0..=4, 3).unwrap();
        assert_eq!(par, run_equidist(&act, 0..=4).unwrap());
        assert_eq!(
            par.rows.iter().map(|r| r.m).collect::<Vec<_>>(),
            vec![0, 1, 2, 3, 4]
        );
    }
}
