use fixfree_core::stats::{count_gl_stream, ProportionQuery};

/// Default worker count: one per available core.
pub fn default_threads() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

/// `|A|` over a full `GL_n(q)` stream, split into `threads` shards that run
/// on scoped threads. The shards partition the group, so the sum does not
/// depend on the thread count.
pub fn sharded_count(query: &ProportionQuery, threads: usize) -> fixfree_core::Result<u128> {
    let threads = threads.max(1);
    if threads == 1 {
        return count_gl_stream(query, 0, 1);
    }
    std::thread::scope(|s| {
        let workers: Vec<_> = (0..threads).map(|i| s.spawn(move || count_gl_stream(query, i, threads))).collect();
        workers.into_iter().map(|w| w.join().expect("shard worker panicked")).sum()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use fixfree_core::group::GroupFamily;
    use fixfree_core::membership::Coset;

    #[test]
    fn thread_count_does_not_change_the_count() {
        let q = ProportionQuery { family: GroupFamily::Gl, n: 3, q: 3, t: 1, coset: Coset::Tau };
        let one = sharded_count(&q, 1).unwrap();
        for k in [2, 3, 5] {
            assert_eq!(sharded_count(&q, k).unwrap(), one);
        }
    }
}
