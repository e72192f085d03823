use num_integer::Integer;
use serde::Serialize;

use super::group::Elements;
use super::{PermGroup, Permutation};
use crate::error::Result;

/// A conjugacy class, identified by its position in [`PermGroup::conjugacy_classes`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConjClass {
    pub index: usize,
    pub representative: Permutation,
    pub size: usize,
    pub element_order: u64,
}

#[derive(Debug)]
pub(crate) struct ClassData {
    pub classes: Vec<ConjClass>,
    pub class_of: Vec<u32>,
    pub members: Vec<Vec<u32>>,
    pub rep_index: Vec<usize>,
}

impl ClassData {
    pub fn compute(els: &Elements, generators: &[Permutation]) -> Self {
        const UNSET: u32 = u32::MAX;
        let n = els.len();
        let mut class_of = vec![UNSET; n];
        let mut classes = Vec::new();
        let mut members = Vec::new();
        let mut rep_index = Vec::new();
        for start in 0..n {
            if class_of[start] != UNSET {
                continue;
            }
            let c = classes.len() as u32;
            let mut orbit = vec![start as u32];
            class_of[start] = c;
            let mut i = 0;
            while i < orbit.len() {
                let x = els.get(orbit[i] as usize);
                for g in generators {
                    let j = els
                        .index_of(&x.conjugate_by(g))
                        .expect("conjugate lies in the group");
                    if class_of[j] == UNSET {
                        class_of[j] = c;
                        orbit.push(j as u32);
                    }
                }
                i += 1;
            }
            orbit.sort_unstable();
            classes.push(ConjClass {
                index: c as usize,
                representative: els.get(start).clone(),
                size: orbit.len(),
                element_order: els.order_of(start),
            });
            members.push(orbit);
            rep_index.push(start);
        }
        ClassData {
            classes,
            class_of,
            members,
            rep_index,
        }
    }
}

/// Rationality and realness data derived from the power maps on classes.
#[derive(Debug, Clone, Serialize)]
pub struct RationalityReport {
    pub is_rational: bool,
    pub non_real_classes: Vec<ConjClass>,
    /// `power_map[c][k]` is the class of `x^k` for `x` in class `c`, `0 <= k < |x|`.
    pub power_map: Vec<Vec<usize>>,
}

impl RationalityReport {
    /// Class of `x^k` for `x` in class `class`; `k` may be negative.
    pub fn power(&self, class: usize, k: i64) -> usize {
        let row = &self.power_map[class];
        row[k.rem_euclid(row.len() as i64) as usize]
    }

    /// Classes `c` with some `k` coprime to the element order such that `x^k` is not in `c`.
    pub fn non_rational_classes(&self) -> Vec<usize> {
        self.power_map
            .iter()
            .enumerate()
            .filter(|(c, row)| {
                let m = row.len() as u64;
                (1..m.max(2))
                    .filter(|k| k.gcd(&m) == 1)
                    .any(|k| row[k as usize % row.len()] != *c)
            })
            .map(|(c, _)| c)
            .collect()
    }
}

impl PermGroup {
    /// Conjugacy classes in order of first appearance in [`PermGroup::elements`];
    /// the identity class comes first.
    pub fn conjugacy_classes(&self) -> Result<&[ConjClass]> {
        Ok(&self.class_data()?.classes)
    }

    pub fn class_of(&self, g: &Permutation) -> Result<usize> {
        let idx = self.index_of(g)?;
        Ok(self.class_data()?.class_of[idx] as usize)
    }

    pub fn class_of_index(&self, index: usize) -> Result<usize> {
        Ok(self.class_data()?.class_of[index] as usize)
    }

    /// Element indices of the members of a class, ascending.
    pub fn class_members(&self, class: usize) -> Result<&[u32]> {
        Ok(&self.class_data()?.members[class])
    }

    /// Class containing `x^k`, where `x` is the representative of `class`.
    pub fn power_class(&self, class: usize, k: i64) -> Result<usize> {
        let data = self.class_data()?;
        let rep = &data.classes[class].representative;
        self.class_of(&rep.pow(k))
    }

    pub fn centralizer_order(&self, class: usize) -> Result<u128> {
        let data = self.class_data()?;
        Ok(self.order() / data.classes[class].size as u128)
    }

    /// `|N_G(<x>)|` for `x` in `class`, computed as `|C_G(x)|` times the number of
    /// exponents `k` coprime to `|x|` with `x^k` conjugate to `x`.
    pub fn cyclic_normalizer_order(&self, class: usize) -> Result<u128> {
        let data = self.class_data()?;
        let m = data.classes[class].element_order;
        let mut fusing = 0u128;
        for k in 1..m.max(2) {
            if k.gcd(&m) == 1 && self.power_class(class, k as i64)? == class {
                fusing += 1;
            }
        }
        Ok(self.centralizer_order(class)? * fusing.max(1))
    }

    /// Indices of the classes whose elements have order `order`.
    pub fn classes_of_order(&self, order: u64) -> Result<Vec<usize>> {
        Ok(self
            .conjugacy_classes()?
            .iter()
            .filter(|c| c.element_order == order)
            .map(|c| c.index)
            .collect())
    }

    pub fn rationality_report(&self) -> Result<RationalityReport> {
        let classes = self.conjugacy_classes()?;
        let mut power_map = Vec::with_capacity(classes.len());
        for c in classes {
            let m = c.element_order as i64;
            let mut row = Vec::with_capacity(m as usize);
            let mut x = self.identity();
            for _ in 0..m {
                row.push(self.class_of(&x)?);
                x = x.then(&c.representative);
            }
            power_map.push(row);
        }
        let mut report = RationalityReport {
            is_rational: false,
            non_real_classes: Vec::new(),
            power_map,
        };
        report.is_rational = report.non_rational_classes().is_empty();
        report.non_real_classes = classes
            .iter()
            .filter(|c| report.power(c.index, -1) != c.index)
            .cloned()
            .collect();
        Ok(report)
    }

    /// Number of elements of each order, as ascending `(order, count)` pairs.
    pub fn order_statistics(&self) -> Result<Vec<(u64, usize)>> {
        let mut map = std::collections::BTreeMap::new();
        for c in self.conjugacy_classes()? {
            *map.entry(c.element_order).or_insert(0) += c.size;
        }
        Ok(map.into_iter().collect())
    }

    pub fn element_orders(&self) -> Result<Vec<u64>> {
        let mut orders: Vec<u64> = self
            .conjugacy_classes()?
            .iter()
            .map(|c| c.element_order)
            .collect();
        orders.sort_unstable();
        orders.dedup();
        Ok(orders)
    }
}
