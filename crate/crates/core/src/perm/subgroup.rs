use std::collections::BTreeSet;
use std::sync::Arc;

use serde::Serialize;

use super::{PermGroup, Permutation};
use crate::error::{Error, Result};
use crate::numtheory::{p_part, prime_divisors};

/// A subgroup of an enumerated parent group, stored by generators and by the
/// sorted indices of its members in the parent's element list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgroup {
    generators: Vec<Permutation>,
    members: Vec<u32>,
    mask: Vec<bool>,
}

impl Subgroup {
    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    /// Sorted element indices into the parent group.
    pub fn members(&self) -> &[u32] {
        &self.members
    }

    pub fn contains_index(&self, index: usize) -> bool {
        self.mask.get(index).copied().unwrap_or(false)
    }

    pub fn contains(&self, parent: &PermGroup, g: &Permutation) -> bool {
        parent
            .elements()
            .ok()
            .and_then(|els| els.index_of(g))
            .is_some_and(|i| self.contains_index(i))
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.members
            .iter()
            .all(|&i| other.contains_index(i as usize))
    }

    /// The subgroup as a standalone permutation group on the parent's points.
    pub fn to_group(&self, parent: &PermGroup) -> PermGroup {
        PermGroup::new(parent.degree(), self.generators.clone())
            .expect("generators share the parent degree")
            .with_enumeration_bound(parent.enumeration_bound())
    }

    pub fn summary(&self) -> SubgroupSummary {
        SubgroupSummary {
            order: self.order(),
            generators: self.generators.iter().map(|g| g.to_string()).collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SubgroupSummary {
    pub order: usize,
    pub generators: Vec<String>,
}

/// The natural map from a group onto its quotient by a normal subgroup,
/// realized as the action on right cosets.
#[derive(Debug)]
pub struct QuotientMap {
    pub group: Arc<PermGroup>,
    coset_of: Vec<u32>,
    coset_reps: Vec<usize>,
}

impl QuotientMap {
    /// Coset index of the element with the given parent index.
    pub fn coset_of_index(&self, index: usize) -> usize {
        self.coset_of[index] as usize
    }

    pub fn coset_count(&self) -> usize {
        self.coset_reps.len()
    }

    /// Image of a parent element in the quotient group.
    pub fn image(&self, parent: &PermGroup, g: &Permutation) -> Result<Permutation> {
        let els = parent.elements()?;
        let images = self
            .coset_reps
            .iter()
            .map(|&r| {
                let idx = els.index_of(&els.get(r).then(g)).ok_or(Error::NotAMember)?;
                Ok(self.coset_of[idx])
            })
            .collect::<Result<Vec<u32>>>()?;
        Permutation::from_images(images)
    }

    pub fn image_of_index(&self, parent: &PermGroup, index: usize) -> Result<Permutation> {
        let els = parent.elements()?;
        self.image(parent, els.get(index))
    }
}

impl PermGroup {
    fn subgroup_from_closure(&self, generators: Vec<Permutation>) -> Result<Subgroup> {
        let els = self.elements()?;
        let mut gen_idx = Vec::with_capacity(generators.len());
        for g in &generators {
            gen_idx.push(self.index_of(g)?);
        }
        let mut mask = vec![false; els.len()];
        let mut list = vec![0u32];
        mask[0] = true;
        let mut i = 0;
        while i < list.len() {
            let x = els.get(list[i] as usize);
            for &gi in &gen_idx {
                let y = els
                    .index_of(&x.then(els.get(gi)))
                    .ok_or(Error::NotAMember)?;
                if !mask[y] {
                    mask[y] = true;
                    list.push(y as u32);
                }
            }
            i += 1;
        }
        list.sort_unstable();
        Ok(Subgroup {
            generators,
            members: list,
            mask,
        })
    }

    /// The subgroup generated by the given elements of this group.
    pub fn subgroup(&self, generators: &[Permutation]) -> Result<Subgroup> {
        let gens = generators
            .iter()
            .filter(|g| !g.is_identity())
            .cloned()
            .collect();
        self.subgroup_from_closure(gens)
    }

    pub fn trivial_subgroup(&self) -> Result<Subgroup> {
        self.subgroup_from_closure(Vec::new())
    }

    pub fn whole_group(&self) -> Result<Subgroup> {
        self.subgroup(&self.generators().to_vec())
    }

    /// Builds a subgroup from a set of member indices already known to form a
    /// subgroup, choosing generators greedily.
    pub fn subgroup_from_members(&self, members: &[u32]) -> Result<Subgroup> {
        let current = self.subgroup_from_members_unclosed(members)?;
        if current.order() != members.len() {
            return Err(Error::internal("member set is not closed under products"));
        }
        Ok(current)
    }

    /// Extends `sub` by `extra` elements, keeping the generators of `sub`.
    pub fn join_with(&self, sub: &Subgroup, extra: &[Permutation]) -> Result<Subgroup> {
        let mut gens = sub.generators.clone();
        for e in extra {
            if !sub.contains(self, e) && !e.is_identity() {
                gens.push(e.clone());
            }
        }
        self.subgroup_from_closure(gens)
    }

    pub fn join(&self, a: &Subgroup, b: &Subgroup) -> Result<Subgroup> {
        if b.is_subgroup_of(a) {
            return Ok(a.clone());
        }
        if a.is_subgroup_of(b) {
            return Ok(b.clone());
        }
        self.join_with(a, &b.generators)
    }

    pub fn intersection(&self, a: &Subgroup, b: &Subgroup) -> Result<Subgroup> {
        let common: Vec<u32> = a
            .members
            .iter()
            .copied()
            .filter(|&i| b.contains_index(i as usize))
            .collect();
        self.subgroup_from_members(&common)
    }

    pub fn is_normal(&self, sub: &Subgroup) -> Result<bool> {
        let els = self.elements()?;
        for g in self.generators() {
            for h in &sub.generators {
                let idx = els.index_of(&h.conjugate_by(g)).ok_or(Error::NotAMember)?;
                if !sub.contains_index(idx) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// `sub^g`.
    pub fn conjugate_subgroup(&self, sub: &Subgroup, g: &Permutation) -> Result<Subgroup> {
        let els = self.elements()?;
        let mut members = Vec::with_capacity(sub.members.len());
        let mut mask = vec![false; els.len()];
        for &m in &sub.members {
            let idx = els
                .index_of(&els.get(m as usize).conjugate_by(g))
                .ok_or(Error::NotAMember)?;
            mask[idx] = true;
            members.push(idx as u32);
        }
        members.sort_unstable();
        Ok(Subgroup {
            generators: sub.generators.iter().map(|h| h.conjugate_by(g)).collect(),
            members,
            mask,
        })
    }

    /// `N_G(<x>) = {g : x^g in <x>}`, by exhaustive search.
    pub fn normalizer_of_cyclic(&self, x: &Permutation) -> Result<Subgroup> {
        let cyclic = self.subgroup(std::slice::from_ref(x))?;
        self.normalizer(&cyclic)
    }

    /// `N_G(H)`, by exhaustive search over the elements of `G`.
    pub fn normalizer(&self, sub: &Subgroup) -> Result<Subgroup> {
        let els = self.elements()?;
        let mut members = Vec::new();
        'outer: for (i, g) in els.iter().enumerate() {
            for h in &sub.generators {
                match els.index_of(&h.conjugate_by(g)) {
                    Some(j) if sub.contains_index(j) => {}
                    _ => continue 'outer,
                }
            }
            members.push(i as u32);
        }
        self.subgroup_from_members(&members)
    }

    pub fn centralizer(&self, x: &Permutation) -> Result<Subgroup> {
        self.index_of(x)?;
        let els = self.elements()?;
        let members: Vec<u32> = els
            .iter()
            .enumerate()
            .filter(|(_, g)| x.then(g) == g.then(x))
            .map(|(i, _)| i as u32)
            .collect();
        self.subgroup_from_members(&members)
    }

    pub fn center(&self) -> Result<Subgroup> {
        let data = self.class_data()?;
        let members: Vec<u32> = data
            .classes
            .iter()
            .filter(|c| c.size == 1)
            .map(|c| data.rep_index[c.index] as u32)
            .collect();
        let mut sorted = members;
        sorted.sort_unstable();
        self.subgroup_from_members(&sorted)
    }

    /// A Sylow `p`-subgroup, grown from an element of order `p` by climbing
    /// normalizers. Trivial when `p` does not divide the group order.
    pub fn sylow(&self, p: u64) -> Result<Subgroup> {
        if !crate::numtheory::is_prime(p) {
            return Err(Error::param(format!("{p} is not prime")));
        }
        let target = p_part(self.order(), p) as usize;
        if target == 1 {
            return self.trivial_subgroup();
        }
        let classes = self.conjugacy_classes()?;
        let x = classes
            .iter()
            .find(|c| c.element_order == p)
            .map(|c| c.representative.clone())
            .ok_or_else(|| Error::internal(format!("no element of order {p} despite Cauchy")))?;
        let els = self.elements()?;
        let mut sylow = self.subgroup(&[x])?;
        while sylow.order() < target {
            let normalizer = self.normalizer(&sylow)?;
            let step = normalizer
                .members
                .iter()
                .map(|&i| els.get(i as usize))
                .find(|g| {
                    let in_p =
                        |h: &Permutation| els.index_of(h).is_some_and(|j| sylow.contains_index(j));
                    !in_p(g) && in_p(&g.pow(p as i64))
                })
                .cloned()
                .ok_or_else(|| Error::internal("normalizer climbing stalled"))?;
            sylow = self.join_with(&sylow, &[step])?;
        }
        Ok(sylow)
    }

    /// The largest normal subgroup of `G` contained in `sub`.
    pub fn core(&self, sub: &Subgroup) -> Result<Subgroup> {
        let mut current = sub.clone();
        loop {
            let mut changed = false;
            for g in self.generators() {
                let conj = self.conjugate_subgroup(&current, g)?;
                if conj.members != current.members {
                    current = self.intersection(&current, &conj)?;
                    changed = true;
                }
            }
            if !changed {
                return Ok(current);
            }
        }
    }

    /// `O_p(G)`, the largest normal `p`-subgroup.
    pub fn p_core(&self, p: u64) -> Result<Subgroup> {
        let sylow = self.sylow(p)?;
        self.core(&sylow)
    }

    /// The Fitting subgroup, as the product of the `p`-cores over primes dividing `|G|`.
    pub fn fitting_subgroup(&self) -> Result<Subgroup> {
        let mut fit = self.trivial_subgroup()?;
        for p in prime_divisors(self.order()) {
            let core = self.p_core(p)?;
            fit = self.join(&fit, &core)?;
        }
        Ok(fit)
    }

    /// The normal closure of a set of elements.
    pub fn normal_closure(&self, elements: &[Permutation]) -> Result<Subgroup> {
        let mut sub = self.subgroup(elements)?;
        loop {
            let mut extra = Vec::new();
            for h in &sub.generators {
                for g in self.generators() {
                    let c = h.conjugate_by(g);
                    if !sub.contains(self, &c) && !extra.contains(&c) {
                        extra.push(c);
                    }
                }
            }
            if extra.is_empty() {
                return Ok(sub);
            }
            sub = self.join_with(&sub, &extra)?;
        }
    }

    pub fn derived_subgroup(&self) -> Result<Subgroup> {
        let gens = self.generators();
        let mut commutators = Vec::new();
        for (i, a) in gens.iter().enumerate() {
            for b in &gens[i + 1..] {
                commutators.push(a.commutator(b));
            }
        }
        self.normal_closure(&commutators)
    }

    /// Every normal subgroup, found as joins of normal closures of conjugacy
    /// classes iterated to a fixed point. Sorted by order, then by members.
    pub fn normal_subgroups(&self) -> Result<Vec<Subgroup>> {
        let data = self.class_data()?;
        let mut class_closures = Vec::new();
        for members in data.members.iter().skip(1) {
            let closure = self.subgroup_from_members_unclosed(members)?;
            if !class_closures
                .iter()
                .any(|s: &Subgroup| s.members == closure.members)
            {
                class_closures.push(closure);
            }
        }
        let mut seen: BTreeSet<Vec<u32>> = BTreeSet::new();
        let mut found = vec![self.trivial_subgroup()?];
        seen.insert(found[0].members.clone());
        let mut i = 0;
        while i < found.len() {
            for cc in &class_closures {
                if cc.is_subgroup_of(&found[i]) {
                    continue;
                }
                let j = self.join(&found[i], cc)?;
                if seen.insert(j.members.clone()) {
                    found.push(j);
                }
            }
            i += 1;
        }
        found.sort_by(|a, b| a.order().cmp(&b.order()).then(a.members.cmp(&b.members)));
        Ok(found)
    }

    /// The subgroup generated by the given member indices (not assumed closed).
    fn subgroup_from_members_unclosed(&self, members: &[u32]) -> Result<Subgroup> {
        let els = self.elements()?;
        let mut current = self.trivial_subgroup()?;
        for &m in members {
            if !current.contains_index(m as usize) {
                let mut gens = current.generators.clone();
                gens.push(els.get(m as usize).clone());
                current = self.subgroup_from_closure(gens)?;
            }
        }
        Ok(current)
    }

    /// `G/M` as the action of `G` on the right cosets of the normal subgroup `M`.
    pub fn quotient(&self, normal: &Subgroup) -> Result<QuotientMap> {
        if !self.is_normal(normal)? {
            return Err(Error::NotNormal);
        }
        let els = self.elements()?;
        const UNSET: u32 = u32::MAX;
        let mut coset_of = vec![UNSET; els.len()];
        let mut coset_reps = Vec::new();
        for i in 0..els.len() {
            if coset_of[i] != UNSET {
                continue;
            }
            let c = coset_reps.len() as u32;
            coset_reps.push(i);
            let g = els.get(i);
            for &m in &normal.members {
                let idx = els
                    .index_of(&els.get(m as usize).then(g))
                    .ok_or(Error::NotAMember)?;
                coset_of[idx] = c;
            }
        }
        let degree = coset_reps.len();
        let mut gens = Vec::new();
        for h in self.generators() {
            let images = coset_reps
                .iter()
                .map(|&r| {
                    let idx = els.index_of(&els.get(r).then(h)).ok_or(Error::NotAMember)?;
                    Ok(coset_of[idx])
                })
                .collect::<Result<Vec<u32>>>()?;
            let p = Permutation::from_images(images)?;
            if !p.is_identity() {
                gens.push(p);
            }
        }
        let mut group =
            PermGroup::new(degree, gens)?.with_enumeration_bound(self.enumeration_bound());
        if let Some(name) = self.name() {
            group = group.with_name(format!("{name}/M{}", normal.order()));
        }
        if group.order() * normal.order() as u128 != self.order() {
            return Err(Error::internal("quotient order does not match |G|/|M|"));
        }
        Ok(QuotientMap {
            group: Arc::new(group),
            coset_of,
            coset_reps,
        })
    }
}
