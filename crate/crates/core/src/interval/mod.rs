//! Certified real and complex ball arithmetic over dyadic midpoints.

mod complex;
pub mod decimal;
mod dyadic;
mod elementary;
mod mag;
mod real;
mod recognize;

pub use complex::ComplexBall;
pub use dyadic::Dyadic;
pub use elementary::ln2;
pub use mag::Mag;
pub use real::{Cmp, RealBall};
pub use recognize::{farey_neighbours, recognize_rational, simplest_between, Recognized};

use serde::{Deserialize, Serialize};

/// Default working precision in bits.
pub const DEFAULT_PRECISION: u32 = 128;
/// Default precision ceiling in bits.
pub const DEFAULT_CEILING: u32 = 65536;

/// Precision settings threaded through every certified computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ctx {
    /// Starting precision in bits.
    pub prec: u32,
    /// Hard ceiling; refinement past it reports precision exhaustion.
    pub ceiling: u32,
}

impl Default for Ctx {
    fn default() -> Self {
        Ctx { prec: DEFAULT_PRECISION, ceiling: DEFAULT_CEILING }
    }
}

impl Ctx {
    pub fn new(prec: u32, ceiling: u32) -> Self {
        Ctx { prec: prec.max(16), ceiling: ceiling.max(prec.max(16)) }
    }

    pub fn with_prec(&self, prec: u32) -> Self {
        Ctx { prec, ceiling: self.ceiling }
    }

    /// Precisions `prec, 2 prec, 4 prec, ...` up to and including the ceiling.
    pub fn schedule(&self) -> impl Iterator<Item = u32> {
        let ceiling = self.ceiling;
        let mut next = Some(self.prec.min(ceiling));
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur >= ceiling { None } else { Some(cur.saturating_mul(2).min(ceiling)) };
            Some(cur)
        })
    }

    /// Same schedule starting at `start` bits.
    pub fn schedule_from(&self, start: u32) -> impl Iterator<Item = u32> {
        Ctx { prec: start.max(self.prec), ceiling: self.ceiling }.schedule()
    }
}

/// Three-valued truth: certified yes, certified no, or not decided within the
/// precision ceiling.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Tri {
    Yes,
    No,
    Undecided,
}

impl Tri {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Tri::Yes
        } else {
            Tri::No
        }
    }

    pub fn and(self, o: Tri) -> Tri {
        match (self, o) {
            (Tri::No, _) | (_, Tri::No) => Tri::No,
            (Tri::Yes, Tri::Yes) => Tri::Yes,
            _ => Tri::Undecided,
        }
    }

    pub fn or(self, o: Tri) -> Tri {
        match (self, o) {
            (Tri::Yes, _) | (_, Tri::Yes) => Tri::Yes,
            (Tri::No, Tri::No) => Tri::No,
            _ => Tri::Undecided,
        }
    }

    pub fn not(self) -> Tri {
        match self {
            Tri::Yes => Tri::No,
            Tri::No => Tri::Yes,
            Tri::Undecided => Tri::Undecided,
        }
    }

    pub fn is_yes(self) -> bool {
        self == Tri::Yes
    }

    pub fn is_no(self) -> bool {
        self == Tri::No
    }

    pub fn is_decided(self) -> bool {
        self != Tri::Undecided
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn schedule_doubles_to_ceiling() {
        let c = Ctx::new(100, 700);
        let v: Vec<u32> = c.schedule().collect();
        assert_eq!(v, vec![100, 200, 400, 700]);
    }

    #[test]
    fn tri_logic() {
        assert_eq!(Tri::Yes.and(Tri::Undecided), Tri::Undecided);
        assert_eq!(Tri::No.and(Tri::Undecided), Tri::No);
        assert_eq!(Tri::Yes.or(Tri::Undecided), Tri::Yes);
        assert_eq!(Tri::Undecided.not(), Tri::Undecided);
    }
}
