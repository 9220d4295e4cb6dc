//! Minimal fork-join helper for batch checks over independent inputs.

/// Apply `f` to every index in 0..len across `threads` workers, preserving
/// index order in the output. `threads == 0` means one worker per available
/// CPU. Results must not depend on evaluation order (they are written by
/// index, so they cannot).
pub fn map_indexed<R, F>(len: usize, threads: usize, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync,
{
    let workers = if threads == 0 {
        std::thread::available_parallelism()
            .map(|p| p.get())
            .unwrap_or(1)
    } else {
        threads
    }
    .max(1)
    .min(len.max(1));
    if workers <= 1 || len <= 1 {
        return (0..len).map(f).collect();
    }
    let mut slots: Vec<Option<R>> = (0..len).map(|_| None).collect();
    let chunk = len.div_ceil(workers);
    std::thread::scope(|scope| {
        for (w, slice) in slots.chunks_mut(chunk).enumerate() {
            let f = &f;
            scope.spawn(move || {
                let base = w * chunk;
                for (off, slot) in slice.iter_mut().enumerate() {
                    *slot = Some(f(base + off));
                }
            });
        }
    });
    slots
        .into_iter()
        .map(|r| r.expect("worker filled slot"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn preserves_order() {
        let out = map_indexed(100, 4, |i| i * i);
        assert_eq!(out, (0..100).map(|i| i * i).collect::<Vec<_>>());
    }

    #[test]
    fn single_thread_and_empty() {
        assert_eq!(map_indexed(5, 1, |i| i), vec![0, 1, 2, 3, 4]);
        assert_eq!(map_indexed(0, 4, |i| i), Vec::<usize>::new());
    }
}
