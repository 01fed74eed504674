//! Reduction and adjunction searches split over threads by the value of
//! the first branching cell.

use polyadic_core::search::{
    adjunction_from_table, reduction_from_table, root_branches, search_tables, Clock, Mode, SearchConfig,
    SearchOutcome,
};
use polyadic_core::{BinaryOpDesc, FiniteNaryOp, MonoidDesc};

/// Same solutions, in the same order, as the sequential search.
pub fn search_tables_parallel(
    f: &FiniteNaryOp,
    mode: Mode,
    config: &SearchConfig,
    clock: &(dyn Clock + Sync),
    jobs: usize,
) -> SearchOutcome<Vec<u16>> {
    let branches = match root_branches(f, mode, config) {
        Some(b) if jobs > 1 && b.len() > 1 => b,
        _ => return search_tables(f, mode, config, clock, None),
    };
    let start = clock.elapsed();
    let workers = jobs.min(branches.len());
    let parts: Vec<Vec<SearchOutcome<Vec<u16>>>> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                let mine: Vec<u16> = branches.iter().copied().skip(w).step_by(workers).collect();
                scope.spawn(move || {
                    mine.into_iter()
                        .map(|v| search_tables(f, mode, config, clock, Some(v)))
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("search worker panicked")).collect()
    });
    let mut solutions = Vec::new();
    let mut exhausted = true;
    let mut truncated = false;
    let mut nodes_visited = 0;
    for part in parts.into_iter().flatten() {
        exhausted &= part.exhausted;
        truncated |= part.truncated;
        nodes_visited += part.nodes_visited;
        solutions.extend(part.solutions);
    }
    solutions.sort();
    if let Some(limit) = config.limit {
        if solutions.len() > limit {
            solutions.truncate(limit);
            truncated = true;
        }
    }
    SearchOutcome {
        solutions,
        exhausted,
        truncated,
        nodes_visited,
        elapsed: clock.elapsed().saturating_sub(start),
    }
}

fn convert<T, U>(o: SearchOutcome<T>, f: impl FnMut(T) -> U) -> SearchOutcome<U> {
    SearchOutcome {
        solutions: o.solutions.into_iter().map(f).collect(),
        exhausted: o.exhausted,
        truncated: o.truncated,
        nodes_visited: o.nodes_visited,
        elapsed: o.elapsed,
    }
}

pub fn find_reductions_parallel(
    f: &FiniteNaryOp,
    config: &SearchConfig,
    clock: &(dyn Clock + Sync),
    jobs: usize,
) -> SearchOutcome<BinaryOpDesc> {
    convert(search_tables_parallel(f, Mode::Reductions, config, clock, jobs), |t| reduction_from_table(f, t))
}

pub fn find_adjunctions_parallel(
    f: &FiniteNaryOp,
    config: &SearchConfig,
    clock: &(dyn Clock + Sync),
    jobs: usize,
) -> SearchOutcome<MonoidDesc> {
    convert(search_tables_parallel(f, Mode::Adjunctions, config, clock, jobs), |t| adjunction_from_table(f, t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use polyadic_core::enumerate::{associative_nary, SurveyMethod};
    use polyadic_core::search::{find_adjunctions, find_reductions, NoClock};

    #[test]
    fn parallel_matches_sequential() {
        let cfg = SearchConfig::unlimited();
        for class in associative_nary(3, 3, SurveyMethod::Backtracking).unwrap() {
            let f = &class.op;
            for jobs in [1, 2, 4] {
                let seq = find_reductions(f, &cfg, &NoClock);
                let par = find_reductions_parallel(f, &cfg, &NoClock, jobs);
                assert_eq!(seq.solutions, par.solutions);
                assert_eq!(seq.exhausted, par.exhausted);
                let seq = find_adjunctions(f, &cfg, &NoClock);
                let par = find_adjunctions_parallel(f, &cfg, &NoClock, jobs);
                assert_eq!(seq.solutions, par.solutions);
            }
        }
    }

    #[test]
    fn parallel_respects_limits() {
        let f = polyadic_core::fixtures::extz2();
        let cfg = SearchConfig::unlimited().with_limit(1);
        let seq = find_reductions(&f, &cfg, &NoClock);
        let par = find_reductions_parallel(&f, &cfg, &NoClock, 3);
        assert_eq!(seq.solutions, par.solutions);
        assert!(par.truncated && seq.truncated);
    }
}
