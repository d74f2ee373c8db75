use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Mutex;

/// `(sq, pos)` improves on `(best_sq, best_pos)`: larger distance first,
/// then smaller position.
#[inline]
pub(crate) fn beats(sq: f64, pos: usize, best: Option<(usize, f64)>) -> bool {
    match best {
        None => true,
        Some((best_pos, best_sq)) => sq > best_sq || (sq == best_sq && pos < best_pos),
    }
}

/// Best-so-far discord shared by the workers of one search.
///
/// The squared distance is mirrored in an atomic so pruning reads never
/// block. Updates take the lock and apply max semantics on the
/// `(best_sq, position)` pair, so `best_sq` never decreases and a stale read
/// is at most the current value.
#[derive(Debug)]
pub struct SharedBest {
    sq_bits: AtomicU64,
    inner: Mutex<Inner>,
}

#[derive(Debug)]
struct Inner {
    best: Option<(usize, f64)>,
    history: Option<Vec<(usize, f64)>>,
}

impl SharedBest {
    /// Starts at distance 0 with no position.
    pub fn new() -> Self {
        SharedBest {
            sq_bits: AtomicU64::new(0f64.to_bits()),
            inner: Mutex::new(Inner {
                best: None,
                history: None,
            }),
        }
    }

    /// Like [`SharedBest::new`], additionally recording every accepted update.
    pub fn with_history() -> Self {
        let shared = SharedBest::new();
        shared.lock().history = Some(Vec::new());
        shared
    }

    fn lock(&self) -> std::sync::MutexGuard<'_, Inner> {
        self.inner.lock().expect("best-so-far lock poisoned")
    }

    /// Current squared best-so-far distance (possibly slightly stale).
    #[inline]
    pub fn best_sq(&self) -> f64 {
        f64::from_bits(self.sq_bits.load(Ordering::Acquire))
    }

    /// Offers position `pos` with nearest-neighbor squared distance `sq`.
    /// Returns whether it became the new best.
    pub fn offer(&self, pos: usize, sq: f64) -> bool {
        if sq < self.best_sq() {
            return false;
        }
        let mut inner = self.lock();
        if !beats(sq, pos, inner.best) {
            return false;
        }
        inner.best = Some((pos, sq));
        if let Some(h) = inner.history.as_mut() {
            h.push((pos, sq));
        }
        self.sq_bits.store(sq.to_bits(), Ordering::Release);
        true
    }

    /// Current best `(position, squared distance)`, if any position was accepted.
    pub fn get(&self) -> Option<(usize, f64)> {
        self.lock().best
    }

    /// Accepted updates in order, when created with history.
    pub fn history(&self) -> Vec<(usize, f64)> {
        self.lock().history.clone().unwrap_or_default()
    }
}

impl Default for SharedBest {
    fn default() -> Self {
        SharedBest::new()
    }
}
