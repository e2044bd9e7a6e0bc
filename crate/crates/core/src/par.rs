//! Data-parallel helpers. With the `parallel` feature (default) batches run on
//! the rayon pool unless sequential mode has been selected at runtime; without
//! the feature everything runs sequentially. Output order always matches input
//! order.

use std::sync::atomic::{AtomicBool, Ordering};

static FORCE_SEQUENTIAL: AtomicBool = AtomicBool::new(false);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Sequential,
    Parallel,
}

/// Select the execution mode for subsequent batches. `Parallel` is a no-op
/// when the crate is built without the `parallel` feature.
pub fn set_mode(mode: Mode) {
    FORCE_SEQUENTIAL.store(mode == Mode::Sequential, Ordering::SeqCst);
}

pub fn mode() -> Mode {
    if cfg!(feature = "parallel") && !FORCE_SEQUENTIAL.load(Ordering::SeqCst) {
        Mode::Parallel
    } else {
        Mode::Sequential
    }
}

pub fn map<T, R, Fun>(items: &[T], f: Fun) -> Vec<R>
where
    T: Sync,
    R: Send,
    Fun: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        if mode() == Mode::Parallel {
            use rayon::prelude::*;
            return items.par_iter().map(f).collect();
        }
    }
    items.iter().map(f).collect()
}

pub fn try_map<T, R, E, Fun>(items: &[T], f: Fun) -> Result<Vec<R>, E>
where
    T: Sync,
    R: Send,
    E: Send,
    Fun: Fn(&T) -> Result<R, E> + Sync + Send,
{
    map(items, f).into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_is_preserved() {
        let xs: Vec<u64> = (0..1000).collect();
        let ys = map(&xs, |x| x * x);
        assert_eq!(ys, xs.iter().map(|x| x * x).collect::<Vec<_>>());
        let r: Result<Vec<u64>, String> =
            try_map(&xs, |&x| if x == 500 { Err("boom".to_string()) } else { Ok(x) });
        assert_eq!(r, Err("boom".to_string()));
    }
}
