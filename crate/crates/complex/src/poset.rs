use std::collections::HashMap;
use std::fmt;

use doodle_cliques::CliqueClass;
use serde::Serialize;

/// A sub-multiset of one group's slots: `mults[i] ≤` multiplicity of slot `i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Component {
    pub group: usize,
    pub mults: Vec<u8>,
}

impl Component {
    pub fn size(&self) -> usize {
        self.mults.iter().map(|&m| m as usize).sum()
    }

    pub fn codim(&self) -> usize {
        2 * (self.size() - 1)
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.mults
            .iter()
            .enumerate()
            .filter(|(_, &m)| m > 0)
            .map(|(i, _)| i)
    }

    /// Sub-multiset test.
    pub fn within(&self, other: &Component) -> bool {
        self.mults.iter().zip(&other.mults).all(|(a, b)| a <= b)
    }

    fn overlaps(&self, other: &Component) -> bool {
        self.mults
            .iter()
            .zip(&other.mults)
            .any(|(&a, &b)| a > 0 && b > 0)
    }
}

impl fmt::Display for Component {
    /// Slot indices separated by dots; `^m` marks multiplicity above one.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .support()
            .map(|i| match self.mults[i] {
                1 => i.to_string(),
                m => format!("{i}^{m}"),
            })
            .collect();
        write!(f, "{}", parts.join("."))
    }
}

/// An element of the subspace poset: slot-disjoint components.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Element {
    pub components: Vec<Component>,
}

impl Element {
    /// Sorts components and merges overlapping ones by pointwise maximum.
    pub fn normalized(mut comps: Vec<Component>) -> Element {
        loop {
            let mut merged = false;
            'outer: for a in 0..comps.len() {
                for b in a + 1..comps.len() {
                    if comps[a].overlaps(&comps[b]) {
                        let other = comps.remove(b);
                        for (x, y) in comps[a].mults.iter_mut().zip(other.mults) {
                            *x = (*x).max(y);
                        }
                        merged = true;
                        break 'outer;
                    }
                }
            }
            if !merged {
                break;
            }
        }
        comps.sort_by(|a, b| a.to_string().cmp(&b.to_string()));
        Element { components: comps }
    }

    pub fn codim(&self) -> usize {
        self.components.iter().map(Component::codim).sum()
    }

    /// The subspace order: every component lies inside one of `other`'s.
    pub fn le(&self, other: &Element) -> bool {
        self.components
            .iter()
            .all(|c| other.components.iter().any(|d| c.within(d)))
    }

    pub fn encode(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.components.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join("|"))
    }
}

/// Π(J): all elements, sorted by codimension then encoding.
#[derive(Clone, Debug)]
pub struct Poset {
    class: CliqueClass,
    elements: Vec<Element>,
    index: HashMap<Element, usize>,
    /// `below[j]`: indices strictly below element `j`.
    below: Vec<Vec<usize>>,
}

impl Poset {
    pub fn class(&self) -> &CliqueClass {
        &self.class
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn index_of(&self, e: &Element) -> Option<usize> {
        self.index.get(e).copied()
    }

    /// The maximal element χ(J).
    pub fn top(&self) -> usize {
        self.elements.len() - 1
    }

    pub fn strictly_below(&self, j: usize) -> &[usize] {
        &self.below[j]
    }

    /// Minimal elements.
    pub fn atoms(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&j| self.below[j].is_empty())
            .collect()
    }

    /// The full element χ(J) of a class.
    pub fn chi(class: &CliqueClass) -> Element {
        let rho = class.rho();
        let comps = (0..class.group_count())
            .map(|g| Component {
                group: g,
                mults: class
                    .slots()
                    .iter()
                    .map(|s| if s.group == g { s.mult } else { 0 })
                    .collect(),
            })
            .collect::<Vec<_>>();
        debug_assert!(comps.iter().all(|c| c.mults.len() == rho));
        Element::normalized(comps)
    }
}

/// Every sub-multiset of one group with at least `k` points.
fn group_components(class: &CliqueClass, group: usize, k: usize) -> Vec<Component> {
    let slots = class.slots();
    let members: Vec<usize> = (0..slots.len())
        .filter(|&i| slots[i].group == group)
        .collect();
    let mut out = Vec::new();
    let mut mults = vec![0u8; slots.len()];
    fn go(
        members: &[usize],
        pos: usize,
        class: &CliqueClass,
        group: usize,
        k: usize,
        mults: &mut Vec<u8>,
        out: &mut Vec<Component>,
    ) {
        if pos == members.len() {
            let c = Component {
                group,
                mults: mults.clone(),
            };
            if c.size() >= k {
                out.push(c);
            }
            return;
        }
        let i = members[pos];
        for m in 0..=class.slots()[i].mult {
            mults[i] = m;
            go(members, pos + 1, class, group, k, mults, out);
        }
        mults[i] = 0;
    }
    go(&members, 0, class, group, k, &mut mults, &mut out);
    out
}

pub fn build_poset(class: &CliqueClass) -> Poset {
    let k = class.arity();
    let comps: Vec<Component> = (0..class.group_count())
        .flat_map(|g| group_components(class, g, k))
        .collect();
    let mut elements = Vec::new();
    // all nonempty families of pairwise disjoint components
    fn go(comps: &[Component], from: usize, cur: &mut Vec<Component>, out: &mut Vec<Element>) {
        if !cur.is_empty() {
            out.push(Element::normalized(cur.clone()));
        }
        for i in from..comps.len() {
            if cur.iter().all(|c| !c.overlaps(&comps[i])) {
                cur.push(comps[i].clone());
                go(comps, i + 1, cur, out);
                cur.pop();
            }
        }
    }
    go(&comps, 0, &mut Vec::new(), &mut elements);
    elements.sort_by_cached_key(|e| (e.codim(), e.encode()));
    elements.dedup();
    let index = elements
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, e)| (e, i))
        .collect();
    let below = (0..elements.len())
        .map(|j| {
            (0..j)
                .filter(|&i| elements[i] != elements[j] && elements[i].le(&elements[j]))
                .collect()
        })
        .collect();
    let poset = Poset {
        class: class.clone(),
        elements,
        index,
        below,
    };
    debug_assert_eq!(poset.elements[poset.top()], Poset::chi(class));
    poset
}
