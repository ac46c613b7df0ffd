//! Process-wide fault injection used by the harness to prove that its checks
//! catch broken arithmetic or validation. Nothing is injected by default.

use core::sync::atomic::{AtomicU8, Ordering};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[repr(u8)]
pub enum Fault {
    /// `∞ ⊖ y` for finite `y` returns `0` instead of `∞`.
    TruncSubInfinity = 1,
    /// The monotone-axiom validators accept every table.
    MonotoneValidator = 2,
}

static ACTIVE: AtomicU8 = AtomicU8::new(0);

pub fn inject(fault: Fault) {
    ACTIVE.fetch_or(fault as u8, Ordering::SeqCst);
}

pub fn clear() {
    ACTIVE.store(0, Ordering::SeqCst);
}

#[inline]
pub fn is_active(fault: Fault) -> bool {
    ACTIVE.load(Ordering::Relaxed) & fault as u8 != 0
}
