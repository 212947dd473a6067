//! Lazily computed, process-wide results of each stage.
//!
//! Stages depend on each other in a fixed order: rings, universal series,
//! Fujiki constants, `c₂`, `α` constants, plane class, Diophantine scan.
//! Each is computed at most once; a failure is cached as its message.

use std::sync::{Arc, OnceLock};

use crate::diophantine::{self, C1Curve, QuarticCurve};
use crate::frobenius::FrobeniusAlgebra;
use crate::fujiki::{extract_ab, AlphaTable, FujikiTable, GenusExpansion, UniversalSeries};
use crate::invariants::{AlphaData, Chern2Solution, FourRing, ThreeRing};
use crate::plane::{self, DegreeEightRelation, IntersectionData, QuarticRelation};
use crate::{Error, Result};

/// Bound of the scan that feeds the final class.
pub const DEFAULT_SEARCH_BOUND: i64 = 1_000_000;

type Cell<T> = OnceLock<std::result::Result<T, String>>;

fn cached<T>(cell: &'static Cell<T>, f: impl FnOnce() -> Result<T>) -> Result<&'static T> {
    cell.get_or_init(|| f().map_err(|e| e.to_string()))
        .as_ref()
        .map_err(|e| Error::CheckFailed(e.clone()))
}

pub fn algebra() -> Arc<FrobeniusAlgebra> {
    static CELL: OnceLock<Arc<FrobeniusAlgebra>> = OnceLock::new();
    CELL.get_or_init(|| Arc::new(FrobeniusAlgebra::k3()))
        .clone()
}

pub fn four_ring() -> Result<&'static FourRing> {
    static CELL: Cell<FourRing> = OnceLock::new();
    cached(&CELL, || FourRing::new(algebra()))
}

pub fn three_ring() -> Result<&'static ThreeRing> {
    static CELL: Cell<ThreeRing> = OnceLock::new();
    cached(&CELL, || ThreeRing::new(algebra()))
}

pub fn universal_series() -> Result<&'static UniversalSeries> {
    static CELL: Cell<UniversalSeries> = OnceLock::new();
    cached(&CELL, || extract_ab(4))
}

pub fn genus_expansion() -> Result<&'static GenusExpansion> {
    static CELL: Cell<GenusExpansion> = OnceLock::new();
    cached(&CELL, GenusExpansion::compute)
}

pub fn fujiki_table() -> Result<&'static FujikiTable> {
    static CELL: Cell<FujikiTable> = OnceLock::new();
    cached(&CELL, || {
        FujikiTable::compute(&universal_series()?.b, genus_expansion()?)
    })
}

pub fn alpha_three() -> Result<&'static AlphaTable> {
    static CELL: Cell<AlphaTable> = OnceLock::new();
    cached(&CELL, || AlphaTable::from_three(three_ring()?))
}

pub fn chern2() -> Result<&'static Chern2Solution> {
    static CELL: Cell<Chern2Solution> = OnceLock::new();
    cached(&CELL, || {
        let inputs = fujiki_table()?.chern2_inputs(alpha_three()?)?;
        four_ring()?.chern2_class(&inputs)
    })
}

/// `α(k, ℓ)` for `k + ℓ ≤ 4`, cross-checked against `S^[3]` where both apply.
pub fn alpha_table() -> Result<&'static AlphaTable> {
    static CELL: Cell<AlphaTable> = OnceLock::new();
    cached(&CELL, || {
        let four = AlphaTable::from_four(four_ring()?, &chern2()?.coords, fujiki_table()?)?;
        AlphaTable::merge(alpha_three()?, &four)
    })
}

pub fn alpha_class() -> Result<&'static AlphaData> {
    static CELL: Cell<AlphaData> = OnceLock::new();
    cached(&CELL, || four_ring()?.alpha_class(&chern2()?.coords))
}

pub fn intersection_data() -> Result<&'static IntersectionData> {
    static CELL: Cell<IntersectionData> = OnceLock::new();
    cached(&CELL, || {
        Ok(IntersectionData {
            alpha: alpha_table()?.clone(),
            fujiki: fujiki_table()?.clone(),
            alpha_squares: alpha_class()?.squares.clone(),
        })
    })
}

pub fn degree_eight_relation() -> Result<&'static DegreeEightRelation> {
    static CELL: Cell<DegreeEightRelation> = OnceLock::new();
    cached(&CELL, || plane::degree_eight_relation(intersection_data()?))
}

pub fn quartic_relation() -> Result<&'static QuarticRelation> {
    static CELL: Cell<QuarticRelation> = OnceLock::new();
    cached(&CELL, || {
        plane::self_intersection_constraint(intersection_data()?)
    })
}

pub fn c1_curve() -> Result<&'static C1Curve> {
    static CELL: Cell<C1Curve> = OnceLock::new();
    cached(&CELL, || {
        C1Curve::from_quartic(&QuarticCurve::from_relation(quartic_relation()?))
    })
}

/// Integral points of `C₁` with `|x₁| ≤` [`DEFAULT_SEARCH_BOUND`].
pub fn default_search() -> Result<&'static Vec<(i128, i128)>> {
    static CELL: Cell<Vec<(i128, i128)>> = OnceLock::new();
    cached(&CELL, || {
        diophantine::search_c1(
            c1_curve()?,
            DEFAULT_SEARCH_BOUND,
            diophantine::thread_count(),
        )
    })
}
