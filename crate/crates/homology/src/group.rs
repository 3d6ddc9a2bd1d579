use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer, SeqAccess, Visitor};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

/// Coefficient ring for homology computations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Ring {
    Z,
    /// Prime field ℤ/p.
    Zp(u64),
}

impl Ring {
    pub fn is_field(&self) -> bool {
        matches!(self, Ring::Zp(_))
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Z => write!(f, "Z"),
            Ring::Zp(p) => write!(f, "Z{p}"),
        }
    }
}

#[derive(Debug, thiserror::Error)]
#[error("unknown ring `{0}` (expected Z or Zp for a prime p, e.g. Z2)")]
pub struct RingParseError(String);

impl FromStr for Ring {
    type Err = RingParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let t = t.strip_prefix("Z/").unwrap_or(t);
        if t == "Z" || t == "ℤ" {
            return Ok(Ring::Z);
        }
        let digits = t
            .strip_prefix('Z')
            .or_else(|| t.strip_prefix("ℤ"))
            .unwrap_or(t);
        match digits.parse::<u64>() {
            Ok(p) if is_prime(p) => Ok(Ring::Zp(p)),
            _ => Err(RingParseError(s.to_string())),
        }
    }
}

impl Serialize for Ring {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Ring {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(de::Error::custom)
    }
}

pub(crate) fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// A finitely generated abelian group ℤ^r ⊕ ℤ/d₁ ⊕ … ⊕ ℤ/d_k with d₁ | d₂ | ….
///
/// Over a prime field the torsion list is always empty and `free_rank` is the
/// dimension.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct GroupPresentation {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl GroupPresentation {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        GroupPresentation {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    /// Builds a presentation from raw invariant factors, dropping units and
    /// sorting so the divisibility chain reads left to right.
    pub fn from_factors(free_rank: usize, factors: impl IntoIterator<Item = BigInt>) -> Self {
        let mut torsion: Vec<BigInt> = factors
            .into_iter()
            .map(|d| d.abs())
            .filter(|d| !d.is_one() && !d.is_zero())
            .collect();
        torsion.sort();
        GroupPresentation { free_rank, torsion }
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Checks the divisibility chain d₁ | d₂ | … and dᵢ ≥ 2.
    pub fn is_canonical(&self) -> bool {
        let two = BigInt::from(2);
        self.torsion.iter().all(|d| *d >= two)
            && self.torsion.windows(2).all(|w| (&w[1] % &w[0]).is_zero())
    }

    /// Human-readable form such as `ℤ² ⊕ ℤ₂`; over ℤₚ the free part is printed
    /// as a vector space over that field.
    pub fn pretty(&self, ring: Ring) -> String {
        let base = match ring {
            Ring::Z => "ℤ".to_string(),
            Ring::Zp(p) => format!("ℤ{}", subscript(p)),
        };
        let mut parts = Vec::new();
        if self.free_rank == 1 {
            parts.push(base.clone());
        } else if self.free_rank > 1 {
            parts.push(format!("{base}{}", superscript(self.free_rank as u64)));
        }
        let mut i = 0;
        while i < self.torsion.len() {
            let d = &self.torsion[i];
            let mut j = i;
            while j < self.torsion.len() && self.torsion[j] == *d {
                j += 1;
            }
            let name = match d.to_u64() {
                Some(v) => format!("ℤ{}", subscript(v)),
                None => format!("ℤ/{d}"),
            };
            if j - i == 1 {
                parts.push(name);
            } else {
                parts.push(format!("{name}{}", superscript((j - i) as u64)));
            }
            i = j;
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" ⊕ ")
        }
    }
}

fn subscript(n: u64) -> String {
    const D: [char; 10] = ['₀', '₁', '₂', '₃', '₄', '₅', '₆', '₇', '₈', '₉'];
    n.to_string()
        .chars()
        .map(|c| D[c as usize - '0' as usize])
        .collect()
}

fn superscript(n: u64) -> String {
    const D: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    n.to_string()
        .chars()
        .map(|c| D[c as usize - '0' as usize])
        .collect()
}

// Torsion coefficients serialize as JSON numbers when they fit in u64 and as
// decimal strings otherwise.
impl Serialize for GroupPresentation {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        struct Torsion<'a>(&'a [BigInt]);
        impl Serialize for Torsion<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
                let mut seq = s.serialize_seq(Some(self.0.len()))?;
                for d in self.0 {
                    match d.to_u64() {
                        Some(v) => seq.serialize_element(&v)?,
                        None => seq.serialize_element(&d.to_string())?,
                    }
                }
                seq.end()
            }
        }
        let mut st = s.serialize_struct("GroupPresentation", 2)?;
        st.serialize_field("free_rank", &self.free_rank)?;
        st.serialize_field("torsion", &Torsion(&self.torsion))?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for GroupPresentation {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            free_rank: usize,
            #[serde(deserialize_with = "torsion_list")]
            torsion: Vec<BigInt>,
        }
        let raw = Raw::deserialize(d)?;
        Ok(GroupPresentation {
            free_rank: raw.free_rank,
            torsion: raw.torsion,
        })
    }
}

fn torsion_list<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
    struct V;
    impl<'de> Visitor<'de> for V {
        type Value = Vec<BigInt>;
        fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
            f.write_str("a list of integers")
        }
        fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<Self::Value, A::Error> {
            #[derive(Deserialize)]
            #[serde(untagged)]
            enum Entry {
                Num(u64),
                Str(String),
            }
            let mut out = Vec::new();
            while let Some(e) = seq.next_element::<Entry>()? {
                out.push(match e {
                    Entry::Num(v) => BigInt::from(v),
                    Entry::Str(s) => s.parse().map_err(de::Error::custom)?,
                });
            }
            Ok(out)
        }
    }
    d.deserialize_seq(V)
}
