//! ECH capacity sequences and index arithmetic.
//!
//! The grading of a nullhomologous orbit set `{(alpha_i, m_i)}` is
//!
//! ```text
//! |alpha| = sum_i (m_i^2 / 4) sl(alpha_i^2)
//!         + sum_{i != j} (1/4) m_i m_j lk(alpha_i^2, alpha_j^2)
//!         + sum_i sum_{k=1}^{m_i} CZ(alpha_i^k),
//! ```
//!
//! with `sl` the transverse self-linking number of the doubled orbit, `lk`
//! the linking number of doubled orbits (the pair sum runs over ordered
//! pairs, so an unordered pair contributes `2 lk`), and `CZ` the
//! Conley-Zehnder index. All of `sl`, `lk`, `CZ` are caller-supplied
//! integers; this module only performs the arithmetic, in exact quarter
//! units with an integrality check at the end.

use crate::error::{Error, Result};
use crate::spheroid;
use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::f64::consts::PI;
#[allow(unused_imports)] // shadowed by the inherent f64 methods under cfg(test)
use num_traits::Float;

/// Data attached to one embedded Reeb orbit.
#[derive(Debug, Clone)]
pub struct OrbitDatum {
    pub name: String,
    /// Transverse self-linking number of the doubled orbit.
    pub sl_square: i64,
    /// `cz[k-1]` is the Conley-Zehnder index of the k-th iterate; must
    /// cover every iterate up to the multiplicity used.
    pub cz: Vec<i64>,
    /// Class in `H_1 = Z/2`, stored as 0 or 1.
    pub homology_class: u8,
    /// Symplectic action of the simple orbit.
    pub action: f64,
}

/// A finite orbit set with multiplicities.
#[derive(Debug, Clone, Default)]
pub struct OrbitSet {
    pub entries: Vec<(OrbitDatum, u32)>,
}

impl OrbitSet {
    pub fn new(entries: Vec<(OrbitDatum, u32)>) -> Self {
        OrbitSet { entries }
    }

    /// Total homology class `sum m_i [alpha_i]` mod 2.
    pub fn total_class(&self) -> u8 {
        let mut total = 0u64;
        for (orbit, m) in &self.entries {
            total += (orbit.homology_class as u64 % 2) * (*m as u64);
        }
        (total % 2) as u8
    }
}

/// Pairwise linking numbers `lk(alpha_i^2, alpha_j^2)`, keyed by orbit
/// names; symmetric by construction.
#[derive(Debug, Clone, Default)]
pub struct LinkingTable {
    entries: BTreeMap<(String, String), i64>,
}

impl LinkingTable {
    pub fn new() -> Self {
        Self::default()
    }

    fn key(a: &str, b: &str) -> (String, String) {
        if a <= b {
            (String::from(a), String::from(b))
        } else {
            (String::from(b), String::from(a))
        }
    }

    pub fn insert(&mut self, a: &str, b: &str, lk: i64) {
        self.entries.insert(Self::key(a, b), lk);
    }

    pub fn get(&self, a: &str, b: &str) -> Option<i64> {
        self.entries.get(&Self::key(a, b)).copied()
    }
}

/// ECH grading of a nullhomologous orbit set.
///
/// Errors if the total homology class is nonzero, if the linking table is
/// missing a pair, if a Conley-Zehnder index is missing for some iterate,
/// or if the rational sum fails to be an integer.
pub fn ech_index(s: &OrbitSet, lk: &LinkingTable) -> Result<i64> {
    if s.total_class() != 0 {
        return Err(Error::Homology);
    }
    let mut quarters: i64 = 0;
    for (orbit, m) in &s.entries {
        let m = *m as i64;
        quarters += m * m * orbit.sl_square;
        for k in 1..=(m as usize) {
            let cz = orbit.cz.get(k - 1).ok_or(Error::Domain {
                op: "ech_index",
                msg: "missing Conley-Zehnder index for an iterate",
            })?;
            quarters += 4 * cz;
        }
    }
    for (i, (oi, mi)) in s.entries.iter().enumerate() {
        for (j, (oj, mj)) in s.entries.iter().enumerate() {
            if i == j {
                continue;
            }
            let link = lk.get(&oi.name, &oj.name).ok_or(Error::Domain {
                op: "ech_index",
                msg: "linking table does not cover all pairs",
            })?;
            quarters += (*mi as i64) * (*mj as i64) * link;
        }
    }
    if quarters % 4 != 0 {
        return Err(Error::Integrality { quarters });
    }
    Ok(quarters / 4)
}

/// Total symplectic action `sum m_i action(alpha_i)`.
pub fn total_action(s: &OrbitSet) -> f64 {
    s.entries
        .iter()
        .map(|(orbit, m)| *m as f64 * orbit.action)
        .sum()
}

/// Conley-Zehnder index `2 floor(1/c) + 1` of the equator of an oblate
/// spheroid with `0 < c < 1/2` (rotation number `1/c`).
///
/// Errors at resonances, where `1/c` is an integer and the index jumps.
pub fn cz_equator(c: f64) -> Result<i64> {
    if !(c > 0.0 && c < 0.5) {
        return Err(Error::Domain {
            op: "cz_equator",
            msg: "requires 0 < c < 1/2",
        });
    }
    let rot = 1.0 / c;
    if (rot - rot.round()).abs() < 1e-12 {
        return Err(Error::Degenerate("resonant equator: 1/c is an integer"));
    }
    Ok(2 * (rot.floor() as i64) + 1)
}

/// ECH capacities of the disk cotangent bundle of a Zoll sphere whose
/// simple geodesics have length `ell`: the values `ell (m1 + m2)` over
/// nonnegative integers with `m1 + m2` even, in nondecreasing order with
/// multiplicity. Returns `(c_0, ..., c_k_max)`.
pub fn zoll_capacities(ell: f64, k_max: usize) -> Vec<f64> {
    assert!(ell > 0.0, "zoll_capacities: requires ell > 0");
    let mut out = Vec::with_capacity(k_max + 1);
    let mut even_sum = 0u64;
    while out.len() <= k_max {
        // the value ell * s with s = m1 + m2 even occurs s + 1 times
        for _ in 0..=even_sum {
            if out.len() > k_max {
                break;
            }
            out.push(ell * even_sum as f64);
        }
        even_sum += 2;
    }
    out
}

/// The ECH capacities of the spheroid bundle proved in closed form:
/// `c_3 = 2 w(c)` for `0 < c < c0` and `c_1 = 4 pi` for `c >= 1`.
pub fn spheroid_capacity(c: f64, k: usize) -> Result<f64> {
    match k {
        3 => {
            if !(c > 0.0 && c < spheroid::c0()) {
                return Err(Error::Domain {
                    op: "spheroid_capacity",
                    msg: "c_3 is known only for 0 < c < c0",
                });
            }
            Ok(2.0 * spheroid::width_value(c)?)
        }
        1 => {
            if !(c >= 1.0) {
                return Err(Error::Domain {
                    op: "spheroid_capacity",
                    msg: "c_1 is known only for c >= 1",
                });
            }
            Ok(4.0 * PI)
        }
        _ => Err(Error::Domain {
            op: "spheroid_capacity",
            msg: "only k = 1 and k = 3 are available",
        }),
    }
}
