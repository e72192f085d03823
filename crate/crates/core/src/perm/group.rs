use std::fmt;
use std::sync::OnceLock;

use indexmap::IndexSet;
use serde::{Deserialize, Serialize};

use super::chain::StabChain;
use super::classes::ClassData;
use super::Permutation;
use crate::error::{Error, Result};

/// Default limit on the order of groups whose elements may be listed.
pub const DEFAULT_ENUMERATION_BOUND: usize = 2_000_000;

/// Environment variable consulted by [`enumeration_bound_from_env`].
pub const ENUMERATION_BOUND_ENV: &str = "NPRIME_ENUMERATION_BOUND";

pub fn enumeration_bound_from_env() -> usize {
    std::env::var(ENUMERATION_BOUND_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .filter(|&b| b > 0)
        .unwrap_or(DEFAULT_ENUMERATION_BOUND)
}

/// The full element list of an enumerated group, in breadth-first order from
/// the identity. Element indices used throughout the crate refer to this list.
#[derive(Debug)]
pub struct Elements {
    set: IndexSet<Permutation>,
    orders: Vec<u64>,
}

impl Elements {
    pub fn len(&self) -> usize {
        self.set.len()
    }

    pub fn is_empty(&self) -> bool {
        self.set.is_empty()
    }

    pub fn get(&self, index: usize) -> &Permutation {
        &self.set[index]
    }

    pub fn index_of(&self, g: &Permutation) -> Option<usize> {
        self.set.get_index_of(g)
    }

    pub fn order_of(&self, index: usize) -> u64 {
        self.orders[index]
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = &Permutation> {
        self.set.iter()
    }

    /// Index of the product `elements[a] * elements[b]`.
    pub fn mul_index(&self, a: usize, b: usize) -> usize {
        self.index_of(&self.set[a].then(&self.set[b]))
            .expect("group is closed under multiplication")
    }
}

/// A finitely generated group of permutations of `{0, .., degree-1}`.
///
/// Derived data (stabilizer chain, element list, conjugacy classes) is
/// computed on first use and cached; the value is otherwise immutable and
/// safe to share between threads.
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    name: Option<String>,
    bound: usize,
    chain: OnceLock<StabChain>,
    elements: OnceLock<Elements>,
    classes: OnceLock<ClassData>,
}

/// Serialized form of a group: `{"degree": n, "generators": [[...], ...], "name": ...}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupFile {
    pub degree: usize,
    pub generators: Vec<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    found: g.degree(),
                });
            }
        }
        Ok(PermGroup {
            degree,
            generators,
            name: None,
            bound: DEFAULT_ENUMERATION_BOUND,
            chain: OnceLock::new(),
            elements: OnceLock::new(),
            classes: OnceLock::new(),
        })
    }

    pub fn trivial(degree: usize) -> Self {
        PermGroup::new(degree, Vec::new()).unwrap()
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn with_enumeration_bound(mut self, bound: usize) -> Self {
        self.bound = bound;
        self
    }

    pub fn from_file(file: &GroupFile) -> Result<Self> {
        let gens = file
            .generators
            .iter()
            .map(|imgs| Permutation::from_images(imgs.clone()))
            .collect::<Result<Vec<_>>>()?;
        let g = PermGroup::new(file.degree, gens)?;
        Ok(match &file.name {
            Some(n) => g.with_name(n.clone()),
            None => g,
        })
    }

    pub fn to_file(&self) -> GroupFile {
        GroupFile {
            degree: self.degree,
            generators: self
                .generators
                .iter()
                .map(|g| g.images().to_vec())
                .collect(),
            name: self.name.clone(),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn enumeration_bound(&self) -> usize {
        self.bound
    }

    pub fn identity(&self) -> Permutation {
        Permutation::identity(self.degree)
    }

    pub(crate) fn chain(&self) -> &StabChain {
        self.chain
            .get_or_init(|| StabChain::new(self.degree, &self.generators))
    }

    /// Group order from the stabilizer chain.
    pub fn order(&self) -> u128 {
        self.chain().order()
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        self.chain().contains(g)
    }

    pub fn is_abelian(&self) -> bool {
        self.generators.iter().enumerate().all(|(i, a)| {
            self.generators[i + 1..]
                .iter()
                .all(|b| a.then(b) == b.then(a))
        })
    }

    pub(crate) fn check_bound(&self) -> Result<usize> {
        let order = self.order();
        if order > self.bound as u128 {
            return Err(Error::EnumerationBoundExceeded {
                order,
                bound: self.bound,
            });
        }
        Ok(order as usize)
    }

    /// All elements, listed by breadth-first closure of the generators.
    pub fn elements(&self) -> Result<&Elements> {
        let order = self.check_bound()?;
        let els = self
            .elements
            .get_or_init(|| enumerate(self.degree, &self.generators, order));
        if els.len() != order {
            return Err(Error::internal(format!(
                "closure found {} elements but the stabilizer chain reports {order}",
                els.len()
            )));
        }
        Ok(els)
    }

    pub(crate) fn class_data(&self) -> Result<&ClassData> {
        let els = self.elements()?;
        Ok(self
            .classes
            .get_or_init(|| ClassData::compute(els, &self.generators)))
    }

    /// Index of `g` in [`Self::elements`], or [`Error::NotAMember`].
    pub fn index_of(&self, g: &Permutation) -> Result<usize> {
        if g.degree() != self.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                found: g.degree(),
            });
        }
        self.elements()?.index_of(g).ok_or(Error::NotAMember)
    }
}

impl Clone for PermGroup {
    fn clone(&self) -> Self {
        PermGroup {
            degree: self.degree,
            generators: self.generators.clone(),
            name: self.name.clone(),
            bound: self.bound,
            chain: self.chain.clone(),
            elements: OnceLock::new(),
            classes: OnceLock::new(),
        }
    }
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PermGroup")
            .field("name", &self.name)
            .field("degree", &self.degree)
            .field("generators", &self.generators)
            .finish()
    }
}

fn enumerate(degree: usize, generators: &[Permutation], capacity: usize) -> Elements {
    let mut set = IndexSet::with_capacity(capacity);
    set.insert(Permutation::identity(degree));
    let mut i = 0;
    while i < set.len() {
        for g in generators {
            let h = set[i].then(g);
            set.insert(h);
        }
        i += 1;
    }
    let orders = set.iter().map(|g| g.order()).collect();
    Elements { set, orders }
}
