use doodle_cliques::{CliqueClass, Slot};
use doodle_homology::{BigInt, SparseMatrix};

use crate::poset::{Component, Element, Poset};
use crate::relative::{OrderComplex, Simplex};
use crate::ComplexError;

/// Two circularly adjacent slots `site` and `site + 1 (mod ρ)` merged.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Collision {
    pub source: CliqueClass,
    pub site: usize,
    pub target: CliqueClass,
    pub same_group: bool,
    /// Target slot that each source slot lands on.
    pub slot_map: Vec<usize>,
}

/// Merges slots `site` and `site + 1`. Same-group points add their
/// multiplicities; points of different groups fuse the two groups into one
/// and the merged point has multiplicity `m₁ + m₂ − 1`.
pub fn collide(class: &CliqueClass, site: usize) -> Result<Collision, ComplexError> {
    let rho = class.rho();
    if rho < 2 || site >= rho {
        return Err(ComplexError::IllegalCollision(format!(
            "no site {site} in {class}"
        )));
    }
    let (i, j) = (site, (site + 1) % rho);
    let (a, b) = (class.slots()[i], class.slots()[j]);
    let same_group = a.group == b.group;
    let mult = if same_group {
        a.mult + b.mult
    } else {
        a.mult + b.mult - 1
    };
    if mult > 3 || (class.arity() == 4 && mult > 1) {
        return Err(ComplexError::IllegalCollision(format!(
            "slots {i},{j} of {class} would give multiplicity {mult}"
        )));
    }
    let rename = |g: usize| if g == b.group { a.group } else { g };
    let mut merged = Vec::with_capacity(rho - 1);
    let mut pos = vec![0usize; rho];
    for p in 0..rho {
        if p == j {
            continue;
        }
        pos[p] = merged.len();
        let s = class.slots()[p];
        merged.push(if p == i {
            Slot::new(a.group, mult)
        } else {
            Slot::new(rename(s.group), s.mult)
        });
    }
    pos[j] = pos[i];
    let n = merged.len();
    let (target, t) = CliqueClass::canonical_with_offset(merged, class.arity())
        .map_err(|e| ComplexError::IllegalCollision(e.to_string()))?;
    let slot_map = pos.iter().map(|&q| (q + n - t) % n).collect();
    Ok(Collision {
        source: class.clone(),
        site,
        target,
        same_group,
        slot_map,
    })
}

/// Every legal collision of a class, by site.
pub fn collisions(class: &CliqueClass) -> Vec<Collision> {
    (0..class.rho())
        .filter_map(|s| collide(class, s).ok())
        .collect()
}

fn push_element(e: &Element, slot_map: &[usize], target: &CliqueClass) -> Element {
    let comps = e
        .components
        .iter()
        .map(|c| {
            let mut mults = vec![0u8; target.rho()];
            for (i, &m) in c.mults.iter().enumerate() {
                mults[slot_map[i]] += m;
            }
            let group = target.slots()[slot_map[c.support().next().expect("nonempty")]].group;
            Component { group, mults }
        })
        .collect();
    Element::normalized(comps)
}

impl Collision {
    /// Image of one element. Before the collision components are
    /// slot-disjoint, so at most two of them meet at the merged point; they
    /// fuse like the slots themselves do.
    pub fn push(&self, e: &Element) -> Element {
        let rho = self.source.rho();
        let (i, j) = (self.site, (self.site + 1) % rho);
        let at = |slot: usize| e.components.iter().position(|c| c.mults[slot] > 0);
        let (ci, cj) = (at(i), at(j));
        let (ci, cj) = match (ci, cj) {
            (Some(a), Some(b)) if a != b => (a, b),
            _ => return push_element(e, &self.slot_map, &self.target),
        };
        let m = self.slot_map[i];
        let (mi, mj) = (e.components[ci].mults[i], e.components[cj].mults[j]);
        let fused = if self.same_group {
            mi.max(mj)
        } else {
            mi + mj - 1
        };
        let mut rest = Vec::new();
        let mut mults = vec![0u8; self.target.rho()];
        for (k, c) in e.components.iter().enumerate() {
            if k == ci || k == cj {
                for (s, &x) in c.mults.iter().enumerate() {
                    if s != i && s != j {
                        mults[self.slot_map[s]] += x;
                    }
                }
            } else {
                rest.push(c.clone());
            }
        }
        mults[m] = fused;
        let mut img = push_element(&Element { components: rest }, &self.slot_map, &self.target);
        img.components.push(Component {
            group: self.target.slots()[m].group,
            mults,
        });
        Element::normalized(img.components)
    }

    /// The induced poset map, by element index.
    pub fn poset_map(&self, source: &Poset, target: &Poset) -> Vec<usize> {
        let map: Vec<usize> = source
            .elements()
            .iter()
            .map(|e| {
                let img = self.push(e);
                target.index_of(&img).unwrap_or_else(|| {
                    panic!("image {img} missing from the poset of {}", self.target)
                })
            })
            .collect();
        // only χ goes to χ'
        debug_assert!(map
            .iter()
            .enumerate()
            .all(|(i, &v)| (v == target.top()) == (i == source.top())));
        map
    }

    /// Induced map on relative `d`-chains; simplices whose image repeats a
    /// vertex go to zero.
    pub fn chain_map(
        &self,
        source: &OrderComplex,
        target: &OrderComplex,
        d: usize,
    ) -> SparseMatrix {
        let map = self.poset_map(source.poset(), target.poset());
        let mut m = SparseMatrix::new(target.simplices(d).len(), source.simplices(d).len());
        for (j, s) in source.simplices(d).iter().enumerate() {
            let image: Simplex = s.iter().map(|&v| map[v]).collect();
            if image.windows(2).any(|w| w[0] == w[1]) {
                continue;
            }
            let i = target
                .simplex_index(&image)
                .expect("order-preserving image of a relative chain");
            m.add_entry(i, j, BigInt::from(1));
        }
        m
    }

    /// Pushes a single chain through the collision.
    pub fn apply(
        &self,
        source: &OrderComplex,
        target: &OrderComplex,
        d: usize,
        chain: &[BigInt],
    ) -> Vec<BigInt> {
        self.chain_map(source, target, d).apply(chain)
    }
}

/// Element map of a slot permutation; `None` if some image is not in Π(J).
pub(crate) fn permuted_elements(poset: &Poset, perm: &[usize]) -> Option<Vec<usize>> {
    let class = poset.class();
    poset
        .elements()
        .iter()
        .map(|e| {
            let img = push_element(e, perm, class);
            poset.index_of(&img)
        })
        .collect()
}
