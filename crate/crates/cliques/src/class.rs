use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::CliqueError;

/// One geometric point of a clique: the group it belongs to and how many
/// of the group's points coincide there.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Slot {
    pub group: usize,
    pub mult: u8,
}

impl Slot {
    pub fn new(group: usize, mult: u8) -> Self {
        Slot { group, mult }
    }
}

/// Group cardinalities `(a₁, …, a_m)`, each at least the arity.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ASeries {
    parts: Vec<usize>,
}

impl ASeries {
    pub fn new(mut parts: Vec<usize>, arity: usize) -> Result<Self, CliqueError> {
        if parts.is_empty() {
            return Err(CliqueError::Empty);
        }
        if let Some(&a) = parts.iter().find(|&&a| a < arity) {
            return Err(CliqueError::GroupTooSmall { size: a, arity });
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(ASeries { parts })
    }

    /// Parts in non-increasing order.
    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// `|A|`.
    pub fn total(&self) -> usize {
        self.parts.iter().sum()
    }

    /// `#A`.
    pub fn groups(&self) -> usize {
        self.parts.len()
    }

    pub fn complexity(&self) -> usize {
        self.total() - self.groups()
    }

    /// All A-series of the given complexity whose parts are ≥ `arity`.
    pub fn of_complexity(complexity: usize, arity: usize) -> Vec<ASeries> {
        fn go(rest: usize, max: usize, arity: usize, cur: &mut Vec<usize>, out: &mut Vec<ASeries>) {
            if rest == 0 {
                if !cur.is_empty() {
                    out.push(ASeries { parts: cur.clone() });
                }
                return;
            }
            // a part a costs a - 1
            let hi = max.min(rest + 1);
            for a in (arity..=hi).rev() {
                cur.push(a);
                go(rest - (a - 1), a, arity, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        if arity >= 2 {
            go(complexity, complexity + 1, arity, &mut Vec::new(), &mut out);
        }
        out
    }
}

impl fmt::Display for ASeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(|a| a.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

/// An equivalence class of A-cliques: a cyclic sequence of slots, up to
/// rotation and renaming of groups. Always stored in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CliqueClass {
    slots: Vec<Slot>,
    arity: usize,
}

/// Relabels groups by order of first appearance.
fn relabel(seq: impl Iterator<Item = Slot>) -> Vec<Slot> {
    let mut names: Vec<usize> = Vec::new();
    seq.map(|s| {
        let g = match names.iter().position(|&n| n == s.group) {
            Some(i) => i,
            None => {
                names.push(s.group);
                names.len() - 1
            }
        };
        Slot::new(g, s.mult)
    })
    .collect()
}

fn rotated(slots: &[Slot], by: usize) -> Vec<Slot> {
    let n = slots.len();
    relabel((0..n).map(|i| slots[(i + by) % n]))
}

impl CliqueClass {
    /// Validates and canonicalizes a cyclic slot sequence.
    pub fn new(slots: Vec<Slot>, arity: usize) -> Result<Self, CliqueError> {
        Ok(Self::canonical_with_offset(slots, arity)?.0)
    }

    /// Like [`CliqueClass::new`], also returning the rotation `t` with
    /// `canonical[i] ≅ input[(i + t) % ρ]`. The smallest such `t` is used.
    pub fn canonical_with_offset(
        slots: Vec<Slot>,
        arity: usize,
    ) -> Result<(Self, usize), CliqueError> {
        validate(&slots, arity)?;
        let n = slots.len();
        let mut best = rotated(&slots, 0);
        let mut off = 0;
        for t in 1..n {
            let cand = rotated(&slots, t);
            if cand < best {
                best = cand;
                off = t;
            }
        }
        Ok((CliqueClass { slots: best, arity }, off))
    }

    /// A configuration (all multiplicities 1) from a group label per point.
    pub fn configuration(groups: &[usize], arity: usize) -> Result<Self, CliqueError> {
        Self::new(groups.iter().map(|&g| Slot::new(g, 1)).collect(), arity)
    }

    /// The configuration with consecutive groups of the given sizes.
    pub fn from_series(series: &ASeries, arity: usize) -> Result<Self, CliqueError> {
        let mut slots = Vec::new();
        for (g, &a) in series.parts().iter().enumerate() {
            slots.extend(std::iter::repeat(Slot::new(g, 1)).take(a));
        }
        Self::new(slots, arity)
    }

    pub fn slots(&self) -> &[Slot] {
        &self.slots
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Number of geometrically distinct points, ρ.
    pub fn rho(&self) -> usize {
        self.slots.len()
    }

    pub fn group_count(&self) -> usize {
        self.slots.iter().map(|s| s.group + 1).max().unwrap_or(0)
    }

    /// Point count of each group, multiplicities included.
    pub fn group_sizes(&self) -> Vec<usize> {
        let mut v = vec![0; self.group_count()];
        for s in &self.slots {
            v[s.group] += s.mult as usize;
        }
        v
    }

    pub fn series(&self) -> ASeries {
        ASeries::new(self.group_sizes(), self.arity).expect("validated")
    }

    /// `|A|`.
    pub fn point_count(&self) -> usize {
        self.slots.iter().map(|s| s.mult as usize).sum()
    }

    pub fn complexity(&self) -> usize {
        self.point_count() - self.group_count()
    }

    pub fn codim(&self) -> usize {
        2 * self.complexity()
    }

    pub fn is_configuration(&self) -> bool {
        self.slots.iter().all(|s| s.mult == 1)
    }

    pub fn count_mult(&self, m: u8) -> usize {
        self.slots.iter().filter(|s| s.mult == m).count()
    }

    /// Smallest positive rotation (in slots) mapping the class to itself.
    /// Equals ρ when there is no rotational symmetry.
    pub fn symmetry_shift(&self) -> usize {
        let n = self.rho();
        (1..n)
            .find(|&r| n % r == 0 && rotated(&self.slots, r) == self.slots)
            .unwrap_or(n)
    }

    /// The group relabeling induced by rotating by [`symmetry_shift`]:
    /// `perm[g]` is the group that slot-group `g` is carried to.
    ///
    /// [`symmetry_shift`]: CliqueClass::symmetry_shift
    pub fn symmetry_group_map(&self) -> Vec<usize> {
        let r = self.symmetry_shift();
        let n = self.rho();
        let mut perm = vec![usize::MAX; self.group_count()];
        // slot i moves to slot i - r
        for i in 0..n {
            let j = (i + n - r % n) % n;
            perm[self.slots[i].group] = self.slots[j].group;
        }
        perm
    }

    /// Sign of the permutation of geometric points induced by the minimal
    /// class-preserving rotation.
    pub fn epsilon_base(&self) -> i32 {
        let r = self.symmetry_shift();
        let n = self.rho();
        if ((n - 1) * r) % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Slots that are circularly adjacent: pairs `(i, i+1 mod ρ)`.
    pub fn adjacent_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.rho();
        if n < 2 {
            return Vec::new();
        }
        (0..n).map(|i| (i, (i + 1) % n)).collect()
    }
}

fn validate(slots: &[Slot], arity: usize) -> Result<(), CliqueError> {
    if slots.is_empty() {
        return Err(CliqueError::Empty);
    }
    if !(3..=4).contains(&arity) {
        return Err(CliqueError::UnsupportedArity(arity));
    }
    let mut sizes = std::collections::BTreeMap::new();
    for s in slots {
        if s.mult == 0 || s.mult > 3 {
            return Err(CliqueError::InvalidMultiplicity(s.mult));
        }
        if arity == 4 && s.mult != 1 {
            return Err(CliqueError::InvalidMultiplicity(s.mult));
        }
        *sizes.entry(s.group).or_insert(0usize) += s.mult as usize;
    }
    if let Some(&size) = sizes.values().find(|&&a| a < arity) {
        return Err(CliqueError::GroupTooSmall { size, arity });
    }
    Ok(())
}

impl fmt::Display for CliqueClass {
    /// Letters for groups, a digit after a letter for multiplicity:
    /// `a2bc` is the clique (x,x,y,z).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.slots {
            let c = (b'a' + (s.group % 26) as u8) as char;
            write!(f, "{c}")?;
            if s.mult > 1 {
                write!(f, "{}", s.mult)?;
            }
        }
        Ok(())
    }
}

impl FromStr for CliqueClass {
    type Err = CliqueError;

    /// Parses the [`Display`](fmt::Display) notation, with an optional
    /// `:k` arity suffix (default 3).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (body, arity) = match s.split_once(':') {
            Some((b, k)) => (
                b,
                k.trim()
                    .parse()
                    .map_err(|_| CliqueError::Parse(s.to_string()))?,
            ),
            None => (s, 3),
        };
        let mut slots: Vec<Slot> = Vec::new();
        for c in body.chars().filter(|c| !c.is_whitespace() && *c != ',') {
            if c.is_ascii_lowercase() {
                slots.push(Slot::new((c as u8 - b'a') as usize, 1));
            } else if let (Some(d), Some(last)) = (c.to_digit(10), slots.last_mut()) {
                last.mult = d as u8;
            } else {
                return Err(CliqueError::Parse(s.to_string()));
            }
        }
        CliqueClass::new(slots, arity)
    }
}
