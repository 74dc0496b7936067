use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactlin::FgGroup;
use crate::io::{check_version, parse_json, SCHEMA_VERSION};

/// One level `A_q` of a graded coefficient ring, cyclic on a chosen generator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Level {
    Zero,
    Integers,
    Cyclic(BigInt),
}

impl Level {
    /// Modulus for cochain arithmetic; `None` for the zero level.
    pub fn modulus(&self) -> Option<BigInt> {
        match self {
            Level::Zero => None,
            Level::Integers => Some(BigInt::zero()),
            Level::Cyclic(m) => Some(m.clone()),
        }
    }

    pub fn group(&self) -> FgGroup {
        match self {
            Level::Zero => FgGroup::trivial(),
            Level::Integers => FgGroup::free(1),
            Level::Cyclic(m) => FgGroup::cyclic(m.clone()),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Level::Zero)
    }

    pub fn parse(s: &str) -> Option<Level> {
        match s.trim() {
            "0" => Some(Level::Zero),
            "Z" => Some(Level::Integers),
            other => {
                let m: BigInt = other.strip_prefix("Z/")?.trim().parse().ok()?;
                if m < BigInt::from(2) {
                    None
                } else {
                    Some(Level::Cyclic(m))
                }
            }
        }
    }

    pub fn label(&self) -> String {
        match self {
            Level::Zero => "0".into(),
            Level::Integers => "Z".into(),
            Level::Cyclic(m) => format!("Z/{m}"),
        }
    }
}

/// Graded ring `A_*` with cyclic levels and structure constants
/// `g_q · g_t = c(q, t) g_{q+t}` on the level generators.
///
/// A periodic ring stores the levels of one period `[0, P)` and constants for
/// degrees in `[0, P)`; every degree is read modulo `P`. Unlisted constants
/// default to 1 whenever that is compatible with the level orders, and to 0
/// otherwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedRing {
    levels: BTreeMap<i64, Level>,
    constants: BTreeMap<(i64, i64), BigInt>,
    period: Option<i64>,
}

impl GradedRing {
    pub fn new(levels: BTreeMap<i64, Level>, constants: BTreeMap<(i64, i64), BigInt>, period: Option<i64>) -> Result<Self> {
        if let Some(p) = period {
            if p <= 0 {
                return Err(Error::InvalidRing(format!("period {p} must be positive")));
            }
            if levels.keys().any(|&q| q < 0 || q >= p) {
                return Err(Error::InvalidRing("periodic levels must lie in [0, period)".into()));
            }
        }
        let ring = GradedRing {
            levels,
            constants,
            period,
        };
        ring.validate()?;
        Ok(ring)
    }

    /// `Z` in degree 0.
    pub fn integers() -> Self {
        Self::concentrated(Level::Integers)
    }

    /// `Z/n` in degree 0.
    pub fn mod_n(n: u64) -> Self {
        Self::concentrated(Level::Cyclic(BigInt::from(n)))
    }

    fn concentrated(level: Level) -> Self {
        let mut levels = BTreeMap::new();
        levels.insert(0, level);
        GradedRing::new(levels, BTreeMap::new(), None).expect("a single level is a ring")
    }

    /// Laurent ring `k[x, x^{-1}]` with `|x| = degree` and `k = Z` or `Z/m` (`m = 0` for `Z`).
    pub fn laurent(degree: i64, modulus: u64) -> Self {
        let mut levels = BTreeMap::new();
        for q in 0..degree {
            levels.insert(q, Level::Zero);
        }
        levels.insert(
            0,
            if modulus == 0 {
                Level::Integers
            } else {
                Level::Cyclic(BigInt::from(modulus))
            },
        );
        GradedRing::new(levels, BTreeMap::new(), Some(degree)).expect("laurent rings are rings")
    }

    /// `Z[x]/(x^{len})` with `|x| = degree`, a finite truncation of a polynomial ring.
    pub fn truncated_polynomial(degree: i64, len: usize) -> Self {
        let mut levels = BTreeMap::new();
        for k in 0..len as i64 {
            levels.insert(k * degree, Level::Integers);
        }
        GradedRing::new(levels, BTreeMap::new(), None).expect("truncated polynomial rings are rings")
    }

    pub fn period(&self) -> Option<i64> {
        self.period
    }

    fn reduce_degree(&self, q: i64) -> i64 {
        match self.period {
            Some(p) => q.rem_euclid(p),
            None => q,
        }
    }

    pub fn level(&self, q: i64) -> Level {
        self.levels
            .get(&self.reduce_degree(q))
            .cloned()
            .unwrap_or(Level::Zero)
    }

    pub fn modulus(&self, q: i64) -> Option<BigInt> {
        self.level(q).modulus()
    }

    /// Degrees with a nonzero level inside `[lo, hi]`.
    pub fn support_in(&self, lo: i64, hi: i64) -> Vec<i64> {
        (lo..=hi).filter(|&q| !self.level(q).is_zero()).collect()
    }

    /// Finite support, or `None` for periodic rings.
    pub fn finite_support(&self) -> Option<Vec<i64>> {
        if self.period.is_some() {
            return None;
        }
        Some(
            self.levels
                .iter()
                .filter(|(_, l)| !l.is_zero())
                .map(|(&q, _)| q)
                .collect(),
        )
    }

    fn default_constant(&self, q: i64, t: i64) -> BigInt {
        let (a, b, c) = (self.level(q), self.level(t), self.level(q + t));
        if a.is_zero() || b.is_zero() || c.is_zero() {
            return BigInt::zero();
        }
        let target = c.modulus().expect("nonzero level");
        if compatible(&a.modulus().unwrap(), &target) && compatible(&b.modulus().unwrap(), &target) {
            BigInt::one()
        } else {
            BigInt::zero()
        }
    }

    /// Structure constant `c(q, t)`, reduced into the target level.
    pub fn constant(&self, q: i64, t: i64) -> BigInt {
        let c = self.level(q + t);
        if self.level(q).is_zero() || self.level(t).is_zero() || c.is_zero() {
            return BigInt::zero();
        }
        let key = (self.reduce_degree(q), self.reduce_degree(t));
        let raw = self
            .constants
            .get(&key)
            .cloned()
            .unwrap_or_else(|| self.default_constant(q, t));
        match c.modulus() {
            Some(m) if !m.is_zero() => raw.mod_floor(&m),
            _ => raw,
        }
    }

    /// Product of level elements `x ∈ A_q`, `y ∈ A_t` in `A_{q+t}`.
    pub fn multiply(&self, q: i64, x: &BigInt, t: i64, y: &BigInt) -> BigInt {
        let c = self.constant(q, t);
        if c.is_zero() {
            return BigInt::zero();
        }
        let v = c * x * y;
        match self.modulus(q + t) {
            Some(m) if !m.is_zero() => v.mod_floor(&m),
            Some(_) => v,
            None => BigInt::zero(),
        }
    }

    /// Degrees to check: the stored levels, plus one extra period for periodic rings.
    fn check_degrees(&self) -> Vec<i64> {
        match self.period {
            Some(p) => (-p..2 * p).collect(),
            None => self.levels.keys().copied().collect(),
        }
    }

    fn validate(&self) -> Result<()> {
        let unit = self.level(0);
        if unit.is_zero() {
            return Err(Error::InvalidRing("degree 0 level must be nonzero".into()));
        }
        let degs = self.check_degrees();
        for &q in &degs {
            if self.level(q).is_zero() {
                continue;
            }
            let mq = self.modulus(q).unwrap();
            let one_left = self.constant(0, q);
            let one_right = self.constant(q, 0);
            if !congruent(&one_left, &BigInt::one(), &mq) || !congruent(&one_right, &BigInt::one(), &mq) {
                return Err(Error::InvalidRing(format!("degree 0 generator is not a unit on level {q}")));
            }
        }
        for &q in &degs {
            for &t in &degs {
                let c = self.constant(q, t);
                if c.is_zero() {
                    continue;
                }
                let target = self.modulus(q + t).unwrap();
                for m in [self.modulus(q).unwrap(), self.modulus(t).unwrap()] {
                    let killed = &c * &m;
                    if !congruent(&killed, &BigInt::zero(), &target) {
                        return Err(Error::InvalidRing(format!(
                            "pairing of levels {q} and {t} is not well defined"
                        )));
                    }
                }
            }
        }
        for &q in &degs {
            for &t in &degs {
                for &u in &degs {
                    let target = match self.modulus(q + t + u) {
                        Some(m) => m,
                        None => continue,
                    };
                    let left = self.constant(q, t) * self.constant(q + t, u);
                    let right = self.constant(t, u) * self.constant(q, t + u);
                    if !congruent(&left, &right, &target) {
                        return Err(Error::InvalidRing(format!(
                            "associativity fails on generators of degrees {q}, {t}, {u}"
                        )));
                    }
                }
            }
        }
        if let Some(p) = self.period {
            for &t in &degs {
                let Some(m) = self.modulus(t) else { continue };
                let c = self.constant(p, t);
                if !is_unit_mod(&c, &m) {
                    return Err(Error::InvalidRing(format!(
                        "multiplication by the periodicity generator is not invertible on level {t}"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        let levels = self
            .levels
            .iter()
            .map(|(q, l)| (q.to_string(), l.label()))
            .collect();
        let pairing = self
            .constants
            .iter()
            .map(|(&(q, t), c)| PairingEntry {
                q,
                t,
                constant: c.to_string(),
            })
            .collect();
        let f = RingFile {
            schema_version: Some(SCHEMA_VERSION),
            levels,
            pairing,
            period: self.period.map(|degree| PeriodSpec { degree, unit: true }),
        };
        crate::io::to_json(&f)
    }

    pub fn from_json(text: &str, path: &str) -> Result<Self> {
        let f: RingFile = parse_json(text, path)?;
        check_version(f.schema_version, path)?;
        let schema = |message: String| Error::Schema {
            path: path.to_string(),
            message,
        };
        let mut levels = BTreeMap::new();
        for (k, v) in &f.levels {
            let q: i64 = k.parse().map_err(|_| schema(format!("levels: bad degree key {k:?}")))?;
            let l = Level::parse(v).ok_or_else(|| schema(format!("levels.{k}: expected \"Z\", \"Z/m\" or \"0\", got {v:?}")))?;
            levels.insert(q, l);
        }
        let mut constants = BTreeMap::new();
        for (i, e) in f.pairing.iter().enumerate() {
            let c: BigInt = e
                .constant
                .parse()
                .map_err(|_| schema(format!("pairing[{i}].constant: not an integer")))?;
            constants.insert((e.q, e.t), c);
        }
        if let Some(p) = &f.period {
            if !p.unit {
                return Err(schema("period.unit: only invertible periodicity generators are supported".into()));
            }
        }
        GradedRing::new(levels, constants, f.period.map(|p| p.degree))
    }
}

fn compatible(source: &BigInt, target: &BigInt) -> bool {
    // The reduction Z/source -> Z/target (0 meaning Z) sending 1 to 1 exists.
    if source.is_zero() {
        true
    } else {
        !target.is_zero() && source.is_multiple_of(target)
    }
}

fn congruent(a: &BigInt, b: &BigInt, m: &BigInt) -> bool {
    let d = a - b;
    if m.is_zero() {
        d.is_zero()
    } else {
        d.is_multiple_of(m)
    }
}

fn is_unit_mod(c: &BigInt, m: &BigInt) -> bool {
    if m.is_zero() {
        c.abs().is_one()
    } else {
        c.gcd(m).is_one()
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct PairingEntry {
    q: i64,
    t: i64,
    #[serde(with = "string_or_int")]
    constant: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct PeriodSpec {
    degree: i64,
    #[serde(default = "yes")]
    unit: bool,
}

fn yes() -> bool {
    true
}

/// `{"levels": {"q": "Z" | "Z/m" | "0"}, "pairing": [{"q", "t", "constant"}], "period": {"degree", "unit"}?}`
#[derive(Clone, Debug, Serialize, Deserialize)]
struct RingFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    schema_version: Option<u32>,
    levels: BTreeMap<String, String>,
    #[serde(default)]
    pairing: Vec<PairingEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    period: Option<PeriodSpec>,
}

mod string_or_int {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &str, s: S) -> Result<S::Ok, S::Error> {
        match v.parse::<i64>() {
            Ok(i) => s.serialize_i64(i),
            Err(_) => s.serialize_str(v),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<String, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            I(i64),
            S(String),
        }
        Ok(match Raw::deserialize(d)? {
            Raw::I(i) => i.to_string(),
            Raw::S(s) => s,
        })
    }
}
