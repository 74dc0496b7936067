use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactlin::{homology, induced_map, solve, FgGroup, GroupHom, IntMatrix, Subquotient};

/// Degree shifts: `i: D^m -> D^{m+i}`, `j: D^m -> E^{m+j}`, `k: E^m -> D^{m+k}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Shifts {
    pub i: i64,
    pub j: i64,
    pub k: i64,
}

/// Graded exact couple over a finite degree range. Missing groups are zero
/// and missing maps are zero maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactCouple {
    pub d: BTreeMap<i64, FgGroup>,
    pub e: BTreeMap<i64, FgGroup>,
    /// Maps keyed by source degree.
    pub i: BTreeMap<i64, GroupHom>,
    pub j: BTreeMap<i64, GroupHom>,
    pub k: BTreeMap<i64, GroupHom>,
    pub shifts: Shifts,
    /// Whether `i` is declared a periodicity operator (for localization).
    pub periodic: bool,
}

fn get(groups: &BTreeMap<i64, FgGroup>, m: i64) -> FgGroup {
    groups.get(&m).cloned().unwrap_or_default()
}

fn map_or_zero(maps: &BTreeMap<i64, GroupHom>, m: i64, src: &FgGroup, tgt: &FgGroup) -> GroupHom {
    maps.get(&m).cloned().unwrap_or_else(|| GroupHom::zero(src, tgt))
}

impl ExactCouple {
    pub fn d_group(&self, m: i64) -> FgGroup {
        get(&self.d, m)
    }

    pub fn e_group(&self, m: i64) -> FgGroup {
        get(&self.e, m)
    }

    pub fn i_map(&self, m: i64) -> GroupHom {
        map_or_zero(&self.i, m, &self.d_group(m), &self.d_group(m + self.shifts.i))
    }

    pub fn j_map(&self, m: i64) -> GroupHom {
        map_or_zero(&self.j, m, &self.d_group(m), &self.e_group(m + self.shifts.j))
    }

    pub fn k_map(&self, m: i64) -> GroupHom {
        map_or_zero(&self.k, m, &self.e_group(m), &self.d_group(m + self.shifts.k))
    }

    /// `d = j ∘ k: E^m -> E^{m + k + j}`.
    pub fn differential(&self, m: i64) -> GroupHom {
        let k = self.k_map(m);
        self.j_map(m + self.shifts.k).compose(&k).expect("composable")
    }

    pub fn d_shift(&self) -> i64 {
        self.shifts.k + self.shifts.j
    }

    /// Degrees touched by any group, widened by the shifts so that every
    /// exactness spot is visited.
    fn degrees(&self) -> Vec<i64> {
        let s = self.shifts;
        let pad = s.i.abs() + s.j.abs() + s.k.abs() + 1;
        let keys: BTreeSet<i64> = self.d.keys().chain(self.e.keys()).copied().collect();
        let (Some(&lo), Some(&hi)) = (keys.iter().next(), keys.iter().next_back()) else {
            return Vec::new();
        };
        (lo - pad..=hi + pad).collect()
    }

    /// Checks `ker = im` at every node and degree.
    pub fn check_exactness(&self) -> Result<()> {
        let s = self.shifts;
        for m in self.degrees() {
            // at D^m: i into D^m, j out of D^m
            let into = self.i_map(m - s.i);
            if !homology(&into, &self.j_map(m))?.group().is_trivial() {
                return Err(Error::ExactnessViolation { node: "D (ker j = im i)".into(), degree: m });
            }
            // at E^m: j into E^m, k out of E^m
            let into = self.j_map(m - s.j);
            if !homology(&into, &self.k_map(m))?.group().is_trivial() {
                return Err(Error::ExactnessViolation { node: "E (ker k = im j)".into(), degree: m });
            }
            // at D^m: k into D^m, i out of D^m
            let into = self.k_map(m - s.k);
            if !homology(&into, &self.i_map(m))?.group().is_trivial() {
                return Err(Error::ExactnessViolation { node: "D (ker i = im k)".into(), degree: m });
            }
        }
        Ok(())
    }

    /// Whether `i` is injective in every degree, after which every derived
    /// couple has `k = 0`.
    pub fn i_injective(&self) -> bool {
        self.d.keys().all(|&m| self.i_map(m).is_injective())
    }

    /// Derived couple: `D' = im i`, `E' = H(E, jk)`, `i' = i|`, `j'(i a) = [j a]`,
    /// `k'[e] = k e`. Input and output exactness are verified.
    pub fn derive(&self) -> Result<ExactCouple> {
        self.check_exactness()?;
        let s = self.shifts;
        let degrees = self.degrees();
        // D'^m = D^{m - s.i} / ker i, as a subquotient of the generator lattice of D^{m - s.i}.
        let dq = |m: i64| -> Result<Subquotient> {
            let src = self.d_group(m - s.i);
            let n = src.ngens();
            Subquotient::new(n, &IntMatrix::identity(n), &self.i_map(m - s.i).kernel_lattice())
        };
        let eq = |m: i64| -> Result<Subquotient> {
            let into = self.differential(m - self.d_shift());
            let out = self.differential(m);
            homology(&into, &out)
        };
        let mut dsq = BTreeMap::new();
        let mut esq = BTreeMap::new();
        for &m in &degrees {
            dsq.insert(m, dq(m)?);
            esq.insert(m, eq(m)?);
        }
        let sq_or = |map: &BTreeMap<i64, Subquotient>, m: i64, f: &dyn Fn(i64) -> Result<Subquotient>| -> Result<Subquotient> {
            match map.get(&m) {
                Some(q) => Ok(q.clone()),
                None => f(m),
            }
        };
        let mut out = ExactCouple {
            d: BTreeMap::new(),
            e: BTreeMap::new(),
            i: BTreeMap::new(),
            j: BTreeMap::new(),
            k: BTreeMap::new(),
            shifts: Shifts {
                i: s.i,
                j: s.j - s.i,
                k: s.k,
            },
            periodic: self.periodic,
        };
        for &m in &degrees {
            let dm = &dsq[&m];
            let em = &esq[&m];
            if !dm.group().is_trivial() {
                out.d.insert(m, dm.group().clone());
            }
            if !em.group().is_trivial() {
                out.e.insert(m, em.group().clone());
            }
            // i': induced by i on D^{m - s.i} -> D^m
            let dn = sq_or(&dsq, m + s.i, &dq)?;
            let i = induced_map(self.i_map(m - s.i).matrix(), dm, &dn)?;
            if !i.is_zero() {
                out.i.insert(m, i);
            }
            // j': a ↦ j(a), D^{m - s.i} -> E^{m - s.i + s.j}
            let et = sq_or(&esq, m - s.i + s.j, &eq)?;
            let j = induced_map(self.j_map(m - s.i).matrix(), dm, &et)?;
            if !j.is_zero() {
                out.j.insert(m, j);
            }
            // k': [e] ↦ a with i(a) = k(e)
            let dt = sq_or(&dsq, m + s.k, &dq)?;
            let k = self.lift_k(m, em, &dt)?;
            if !k.is_zero() {
                out.k.insert(m, k);
            }
        }
        out.check_exactness()?;
        Ok(out)
    }

    fn lift_k(&self, m: i64, em: &Subquotient, dt: &Subquotient) -> Result<GroupHom> {
        let s = self.shifts;
        let k = self.k_map(m);
        let target = self.d_group(m + s.k);
        let i = self.i_map(m + s.k - s.i);
        let rel = target.relations();
        let system = i.matrix().hstack(&rel)?;
        let a_len = i.matrix().cols();
        let mut cols = Vec::new();
        for g in 0..em.group().ngens() {
            let v = k.apply(&em.representative(g));
            let a: Vec<BigInt> = if v.iter().all(Zero::is_zero) {
                vec![BigInt::zero(); a_len]
            } else {
                let sol = solve(&system, &v).ok_or_else(|| Error::ExactnessViolation {
                    node: "D (k lands outside im i)".into(),
                    degree: m + s.k,
                })?;
                sol[..a_len].to_vec()
            };
            cols.push(dt.coords(&a).expect("identity numerator"));
        }
        let matrix = IntMatrix::from_columns(dt.group().ngens(), &cols);
        GroupHom::new(em.group().clone(), dt.group().clone(), matrix)
    }
}
