//! Abstract finite groups given by identity, multiplication, inversion and
//! generators, with closure-based enumeration on top.

mod perm;

pub use perm::{cycle_notation, CyclicGroup, PermGroup};

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::{Arc, Mutex};

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const DEFAULT_ELEMENT_CAP: u64 = 50_000;

/// A group element in its realization's canonical encoding. The derived
/// lexicographic order is the element total order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element(pub Vec<u32>);

impl Element {
    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }
}

/// A concrete group: multiplication and inversion over encoded elements.
///
/// Every element of one realization has the same encoding length,
/// [`Realization::element_len`].
pub trait Realization: Send + Sync + fmt::Debug {
    fn identity(&self) -> Element;
    fn multiply(&self, a: &Element, b: &Element) -> Element;
    fn inverse(&self, a: &Element) -> Element;
    fn generators(&self) -> Vec<Element>;
    fn descriptor(&self) -> String;
    fn element_len(&self) -> usize;

    fn element_order(&self, a: &Element) -> u64 {
        let id = self.identity();
        let mut k = 1u64;
        let mut cur = a.clone();
        while cur != id {
            cur = self.multiply(&cur, a);
            k += 1;
        }
        k
    }

    /// Human-readable element, e.g. disjoint cycles for permutations.
    fn format_element(&self, a: &Element) -> String {
        let parts: Vec<String> = a.0.iter().map(|v| v.to_string()).collect();
        format!("({})", parts.join(","))
    }
}

/// Sorted element list with a reverse index.
#[derive(Debug)]
pub struct ElementList {
    pub elements: Vec<Element>,
    pub index: HashMap<Element, usize>,
}

impl ElementList {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn position(&self, e: &Element) -> Option<usize> {
        self.index.get(e).copied()
    }
}

/// Summary invariants of an enumerated group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupData {
    pub order: u64,
    pub exponent: u64,
    pub derived_order: u64,
    pub abelianization_order: u64,
}

/// A realization plus its enumeration, computed at most once.
#[derive(Clone)]
pub struct FiniteGroup {
    real: Arc<dyn Realization>,
    cache: Arc<Mutex<Option<Arc<ElementList>>>>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("descriptor", &self.real.descriptor())
            .finish()
    }
}

impl FiniteGroup {
    pub fn new<R: Realization + 'static>(real: R) -> Self {
        Self::from_arc(Arc::new(real))
    }

    pub fn from_arc(real: Arc<dyn Realization>) -> Self {
        FiniteGroup {
            real,
            cache: Arc::new(Mutex::new(None)),
        }
    }

    pub fn realization(&self) -> &dyn Realization {
        self.real.as_ref()
    }

    pub fn realization_arc(&self) -> Arc<dyn Realization> {
        Arc::clone(&self.real)
    }

    pub fn descriptor(&self) -> String {
        self.real.descriptor()
    }

    pub fn identity(&self) -> Element {
        self.real.identity()
    }

    pub fn multiply(&self, a: &Element, b: &Element) -> Element {
        self.real.multiply(a, b)
    }

    pub fn inverse(&self, a: &Element) -> Element {
        self.real.inverse(a)
    }

    pub fn generators(&self) -> Vec<Element> {
        self.real.generators()
    }

    /// All elements, sorted. Fails with `CapExceeded` once the closure grows
    /// past `cap`.
    pub fn elements(&self, cap: u64) -> Result<Arc<ElementList>> {
        let mut guard = self.cache.lock().expect("element cache poisoned");
        if let Some(list) = guard.as_ref() {
            if list.len() as u64 > cap {
                return Err(Error::CapExceeded { cap });
            }
            return Ok(Arc::clone(list));
        }
        let mut elements = closure(self.real.as_ref(), &self.real.generators(), cap)?;
        elements.sort_unstable();
        let index = elements
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), i))
            .collect();
        let list = Arc::new(ElementList { elements, index });
        *guard = Some(Arc::clone(&list));
        Ok(list)
    }

    pub fn order(&self, cap: u64) -> Result<u64> {
        Ok(self.elements(cap)?.len() as u64)
    }

    pub fn exponent(&self, cap: u64) -> Result<u64> {
        let list = self.elements(cap)?;
        Ok(list
            .elements
            .iter()
            .fold(1u64, |acc, e| acc.lcm(&self.real.element_order(e))))
    }

    /// Order of the derived subgroup: the normal closure of the commutators
    /// of all generator pairs.
    pub fn derived_subgroup_order(&self, cap: u64) -> Result<u64> {
        self.elements(cap)?;
        let real = self.real.as_ref();
        let gens = real.generators();
        let id = real.identity();
        let mut normal_gens: Vec<Element> = Vec::new();
        for (i, g) in gens.iter().enumerate() {
            for h in &gens[i + 1..] {
                let c = commutator(real, g, h);
                if c != id && !normal_gens.contains(&c) {
                    normal_gens.push(c);
                }
            }
        }
        let mut sub: HashSet<Element> = closure(real, &normal_gens, cap)?.into_iter().collect();
        loop {
            let mut added = false;
            for s in normal_gens.clone() {
                for g in &gens {
                    let conj = real.multiply(&real.multiply(&real.inverse(g), &s), g);
                    if !sub.contains(&conj) {
                        normal_gens.push(conj);
                        sub = closure(real, &normal_gens, cap)?.into_iter().collect();
                        added = true;
                    }
                }
            }
            if !added {
                return Ok(sub.len() as u64);
            }
        }
    }

    pub fn data(&self, cap: u64) -> Result<GroupData> {
        let order = self.order(cap)?;
        let derived_order = self.derived_subgroup_order(cap)?;
        Ok(GroupData {
            order,
            exponent: self.exponent(cap)?,
            derived_order,
            abelianization_order: order / derived_order,
        })
    }

    pub fn direct_product(&self, other: &FiniteGroup) -> FiniteGroup {
        FiniteGroup::new(ProductGroup::new(self.realization_arc(), other.realization_arc()))
    }
}

/// `g^-1 h^-1 g h`
pub fn commutator(real: &dyn Realization, g: &Element, h: &Element) -> Element {
    let gi = real.inverse(g);
    let hi = real.inverse(h);
    real.multiply(&real.multiply(&gi, &hi), &real.multiply(g, h))
}

/// Breadth-first closure of `gens` under right multiplication by generators.
pub fn closure(real: &dyn Realization, gens: &[Element], cap: u64) -> Result<Vec<Element>> {
    let id = real.identity();
    let mut seen: HashSet<Element> = HashSet::new();
    let mut out = vec![id.clone()];
    seen.insert(id.clone());
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = real.multiply(&x, g);
            if seen.insert(y.clone()) {
                if seen.len() as u64 > cap {
                    return Err(Error::CapExceeded { cap });
                }
                out.push(y.clone());
                queue.push_back(y);
            }
        }
    }
    Ok(out)
}

/// Component-wise product of two realizations; elements are concatenated
/// encodings.
#[derive(Debug)]
pub struct ProductGroup {
    left: Arc<dyn Realization>,
    right: Arc<dyn Realization>,
    split: usize,
}

impl ProductGroup {
    pub fn new(left: Arc<dyn Realization>, right: Arc<dyn Realization>) -> Self {
        let split = left.element_len();
        ProductGroup { left, right, split }
    }

    fn parts(&self, a: &Element) -> (Element, Element) {
        (
            Element(a.0[..self.split].to_vec()),
            Element(a.0[self.split..].to_vec()),
        )
    }

    fn join(a: Element, b: Element) -> Element {
        let mut v = a.0;
        v.extend(b.0);
        Element(v)
    }
}

impl Realization for ProductGroup {
    fn identity(&self) -> Element {
        Self::join(self.left.identity(), self.right.identity())
    }

    fn multiply(&self, a: &Element, b: &Element) -> Element {
        let (a1, a2) = self.parts(a);
        let (b1, b2) = self.parts(b);
        Self::join(self.left.multiply(&a1, &b1), self.right.multiply(&a2, &b2))
    }

    fn inverse(&self, a: &Element) -> Element {
        let (a1, a2) = self.parts(a);
        Self::join(self.left.inverse(&a1), self.right.inverse(&a2))
    }

    fn generators(&self) -> Vec<Element> {
        let e1 = self.left.identity();
        let e2 = self.right.identity();
        let mut gens: Vec<Element> = self
            .left
            .generators()
            .into_iter()
            .map(|g| Self::join(g, e2.clone()))
            .collect();
        gens.extend(
            self.right
                .generators()
                .into_iter()
                .map(|h| Self::join(e1.clone(), h)),
        );
        gens
    }

    fn descriptor(&self) -> String {
        format!("{} x {}", self.left.descriptor(), self.right.descriptor())
    }

    fn element_len(&self) -> usize {
        self.split + self.right.element_len()
    }

    fn element_order(&self, a: &Element) -> u64 {
        let (a1, a2) = self.parts(a);
        self.left.element_order(&a1).lcm(&self.right.element_order(&a2))
    }

    fn format_element(&self, a: &Element) -> String {
        let (a1, a2) = self.parts(a);
        format!(
            "[{}, {}]",
            self.left.format_element(&a1),
            self.right.format_element(&a2)
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3() -> FiniteGroup {
        FiniteGroup::new(PermGroup::new(3, vec![vec![1, 2, 0], vec![1, 0, 2]]).unwrap())
    }

    fn a4() -> FiniteGroup {
        FiniteGroup::new(
            PermGroup::new(4, vec![vec![1, 2, 0, 3], vec![1, 0, 3, 2]]).unwrap(),
        )
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(FiniteGroup::new(CyclicGroup::new(6)).order(100), Ok(6));
        assert_eq!(s3().order(100), Ok(6));
        assert_eq!(a4().order(100), Ok(12));
    }

    #[test]
    fn enumeration_is_sorted_and_closed() {
        let g = a4();
        let list = g.elements(100).unwrap();
        assert!(list.elements.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(list.elements[0], g.identity());
        for a in &list.elements {
            assert!(list.position(&g.inverse(a)).is_some());
            for b in &list.elements {
                assert!(list.position(&g.multiply(a, b)).is_some());
            }
        }
    }

    #[test]
    fn cap_is_enforced() {
        assert_eq!(a4().order(11), Err(Error::CapExceeded { cap: 11 }));
        let g = a4();
        assert_eq!(g.order(12), Ok(12));
        assert_eq!(g.order(5), Err(Error::CapExceeded { cap: 5 }));
    }

    #[test]
    fn derived_subgroups() {
        assert_eq!(FiniteGroup::new(CyclicGroup::new(10)).derived_subgroup_order(100), Ok(1));
        assert_eq!(s3().derived_subgroup_order(100), Ok(3));
        assert_eq!(a4().derived_subgroup_order(100), Ok(4));
    }

    #[test]
    fn exponents() {
        let klein = FiniteGroup::new(CyclicGroup::new(2)).direct_product(&FiniteGroup::new(CyclicGroup::new(2)));
        assert_eq!(klein.exponent(100), Ok(2));
        assert_eq!(s3().exponent(100), Ok(6));
        assert_eq!(a4().exponent(100), Ok(6));
    }

    #[test]
    fn products() {
        let p = a4().direct_product(&a4());
        assert_eq!(p.order(1000), Ok(144));
        let trivial = FiniteGroup::new(CyclicGroup::new(1));
        assert_eq!(trivial.direct_product(&s3()).order(100), Ok(6));
        let sc = s3().direct_product(&FiniteGroup::new(CyclicGroup::new(4)));
        assert_eq!(sc.exponent(1000), Ok(12));
        assert_eq!(p.data(1000).unwrap().derived_order, 16);
    }
}
