//! Batch execution: data-parallel over rayon when the `parallel` feature is
//! enabled, plain sequential otherwise. Output order always matches input
//! order, so results are identical either way.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Runs `f` over the jobs, in parallel when built with the `parallel`
/// feature.
pub fn run_jobs<T, U, F>(jobs: Vec<T>, f: F) -> Vec<U>
where
    T: Send,
    U: Send,
    F: Fn(T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        jobs.into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        run_jobs_seq(jobs, f)
    }
}

/// Always-sequential twin of [`run_jobs`], kept callable so the benchmark
/// suite can compare both code paths within one build.
pub fn run_jobs_seq<T, U, F>(jobs: Vec<T>, f: F) -> Vec<U>
where
    F: Fn(T) -> U,
{
    jobs.into_iter().map(f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parallel_and_sequential_agree_in_order() {
        let jobs: Vec<u64> = (0..100).collect();
        let a = run_jobs(jobs.clone(), |x| x * x);
        let b = run_jobs_seq(jobs, |x| x * x);
        assert_eq!(a, b);
    }
}
