//! Elements of the integral group ring `ZG` of an enumerated permutation group.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use rand::Rng;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::perm::{PermGroup, Permutation, QuotientMap};

/// A finite formal sum `sum r_g g`, stored sparsely by element index with no zero coefficients.
#[derive(Clone)]
pub struct GroupRingElement {
    group: Arc<PermGroup>,
    coeffs: BTreeMap<u32, i64>,
}

impl GroupRingElement {
    pub fn zero(group: Arc<PermGroup>) -> Self {
        GroupRingElement {
            group,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one(group: Arc<PermGroup>) -> Self {
        Self::from_index(group, 0, 1)
    }

    fn from_index(group: Arc<PermGroup>, index: u32, coeff: i64) -> Self {
        let mut v = Self::zero(group);
        v.add_term(index, coeff);
        v
    }

    pub fn element(group: Arc<PermGroup>, g: &Permutation, coeff: i64) -> Result<Self> {
        let idx = group.index_of(g)? as u32;
        Ok(Self::from_index(group, idx, coeff))
    }

    pub fn from_terms(group: Arc<PermGroup>, terms: &[(i64, Permutation)]) -> Result<Self> {
        let mut v = Self::zero(group);
        for (c, g) in terms {
            let idx = v.group.index_of(g)? as u32;
            v.add_term(idx, *c);
        }
        Ok(v)
    }

    /// `terms` group elements drawn uniformly with coefficients in `-max_coeff..=max_coeff`.
    pub fn random(
        group: Arc<PermGroup>,
        rng: &mut impl Rng,
        terms: usize,
        max_coeff: i64,
    ) -> Result<Self> {
        let n = group.elements()?.len() as u32;
        let mut v = Self::zero(group);
        for _ in 0..terms {
            let idx = rng.gen_range(0..n);
            v.add_term(idx, rng.gen_range(-max_coeff..=max_coeff));
        }
        Ok(v)
    }

    fn add_term(&mut self, index: u32, coeff: i64) {
        if coeff == 0 {
            return;
        }
        let e = self.coeffs.entry(index).or_insert(0);
        *e += coeff;
        if *e == 0 {
            self.coeffs.remove(&index);
        }
    }

    pub fn group(&self) -> &Arc<PermGroup> {
        &self.group
    }

    /// `(coefficient, element)` pairs in element-index order.
    pub fn terms(&self) -> Result<Vec<(i64, Permutation)>> {
        let els = self.group.elements()?;
        Ok(self
            .coeffs
            .iter()
            .map(|(&i, &c)| (c, els.get(i as usize).clone()))
            .collect())
    }

    pub fn coefficient(&self, g: &Permutation) -> Result<i64> {
        let idx = self.group.index_of(g)? as u32;
        Ok(self.coeffs.get(&idx).copied().unwrap_or(0))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn same_group(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.group, &other.group) {
            Ok(())
        } else {
            Err(Error::GroupMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_group(other)?;
        let mut out = self.clone();
        for (&i, &c) in &other.coeffs {
            out.add_term(i, c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(-1))
    }

    pub fn scale(&self, k: i64) -> Self {
        let mut out = Self::zero(self.group.clone());
        for (&i, &c) in &self.coeffs {
            out.add_term(i, c * k);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_group(other)?;
        let els = self.group.elements()?;
        let mut out = Self::zero(self.group.clone());
        for (&i, &a) in &self.coeffs {
            for (&j, &b) in &other.coeffs {
                out.add_term(els.mul_index(i as usize, j as usize) as u32, a * b);
            }
        }
        Ok(out)
    }

    /// `uv - vu`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.mul(other)?.sub(&other.mul(self)?)
    }

    pub fn augmentation(&self) -> i64 {
        self.coeffs.values().sum()
    }

    /// `eps_C(v)`: the sum of the coefficients over the conjugacy class `class`.
    pub fn partial_augmentation(&self, class: usize) -> Result<i64> {
        let mut total = 0;
        for (&i, &c) in &self.coeffs {
            if self.group.class_of_index(i as usize)? == class {
                total += c;
            }
        }
        Ok(total)
    }

    /// Partial augmentations for every class, indexed as in [`PermGroup::conjugacy_classes`].
    pub fn partial_augmentations(&self) -> Result<Vec<i64>> {
        let mut out = vec![0i64; self.group.conjugacy_classes()?.len()];
        for (&i, &c) in &self.coeffs {
            out[self.group.class_of_index(i as usize)?] += c;
        }
        Ok(out)
    }

    /// Image under the linear extension of `G -> G/M`.
    pub fn pushforward(&self, map: &QuotientMap) -> Result<Self> {
        if map.coset_count() as u128 != map.group.order()
            || self.group.elements()?.len() % map.coset_count() != 0
        {
            return Err(Error::GroupMismatch);
        }
        let mut by_coset: BTreeMap<usize, i64> = BTreeMap::new();
        for (&i, &c) in &self.coeffs {
            *by_coset.entry(map.coset_of_index(i as usize)).or_insert(0) += c;
        }
        let mut out = Self::zero(map.group.clone());
        let els = self.group.elements()?;
        let mut rep_of: BTreeMap<usize, usize> = BTreeMap::new();
        for &i in self.coeffs.keys() {
            rep_of
                .entry(map.coset_of_index(i as usize))
                .or_insert(i as usize);
        }
        for (coset, c) in by_coset {
            let image = map.image(&self.group, els.get(rep_of[&coset]))?;
            let idx = map.group.index_of(&image)? as u32;
            out.add_term(idx, c);
        }
        Ok(out)
    }

    /// JSON mirror: `{"group": name, "terms": {"(0 1)": -1, ...}}`.
    pub fn to_json(&self) -> Result<Value> {
        let mut terms = serde_json::Map::new();
        for (c, g) in self.terms()? {
            terms.insert(g.to_string(), json!(c));
        }
        Ok(json!({"group": self.group.name(), "terms": terms}))
    }

    /// Parses `2*(0 1 2) - 1*(0 1) + 1*()`; a bare permutation has coefficient 1.
    pub fn parse(group: Arc<PermGroup>, text: &str) -> Result<Self> {
        let perr = |position: usize, token: &str, message: &str| Error::Parse {
            position,
            token: token.to_string(),
            message: message.to_string(),
        };
        let mut v = Self::zero(group);
        let s = text.trim();
        if s == "0" {
            return Ok(v);
        }
        let bytes: Vec<char> = s.chars().collect();
        let mut i = 0;
        let mut first = true;
        while i < bytes.len() {
            while i < bytes.len() && bytes[i].is_whitespace() {
                i += 1;
            }
            if i >= bytes.len() {
                break;
            }
            let mut sign = 1i64;
            if bytes[i] == '+' || bytes[i] == '-' {
                if bytes[i] == '-' {
                    sign = -1;
                }
                i += 1;
            } else if !first {
                return Err(perr(i + 1, &bytes[i].to_string(), "expected `+` or `-`"));
            }
            while i < bytes.len() && bytes[i].is_whitespace() {
                i += 1;
            }
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let coeff: i64 = if i > start {
                let txt: String = bytes[start..i].iter().collect();
                let c = txt
                    .parse()
                    .map_err(|_| perr(start + 1, &txt, "bad coefficient"))?;
                if i < bytes.len() && bytes[i] == '*' {
                    i += 1;
                } else {
                    return Err(perr(i + 1, &txt, "expected `*` after the coefficient"));
                }
                c
            } else {
                1
            };
            let pstart = i;
            if i >= bytes.len() || bytes[i] != '(' {
                return Err(perr(i + 1, "", "expected a permutation in cycle notation"));
            }
            while i < bytes.len() && bytes[i] == '(' {
                while i < bytes.len() && bytes[i] != ')' {
                    i += 1;
                }
                if i >= bytes.len() {
                    return Err(perr(pstart + 1, "(", "unclosed cycle"));
                }
                i += 1;
            }
            let ptxt: String = bytes[pstart..i].iter().collect();
            let degree = v.group.degree();
            let g = Permutation::parse_cycles(&ptxt, Some(degree))
                .map_err(|e| perr(pstart + 1, &ptxt, &e.to_string()))?;
            let idx = v
                .group
                .index_of(&g)
                .map_err(|_| perr(pstart + 1, &ptxt, "permutation is not in the group"))?;
            v.add_term(idx as u32, sign * coeff);
            first = false;
        }
        Ok(v)
    }
}

impl PartialEq for GroupRingElement {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.group, &other.group) && self.coeffs == other.coeffs
    }
}

impl Eq for GroupRingElement {}

impl fmt::Display for GroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let Ok(els) = self.group.elements() else {
            return f.write_str("<group not enumerable>");
        };
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        for (k, (&i, &c)) in self.coeffs.iter().enumerate() {
            let g = els.get(i as usize);
            match (k, c < 0) {
                (0, true) => write!(f, "-{}*{g}", -c)?,
                (0, false) => write!(f, "{c}*{g}")?,
                (_, true) => write!(f, " - {}*{g}", -c)?,
                (_, false) => write!(f, " + {c}*{g}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for GroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::build;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn grp(s: &str) -> Arc<PermGroup> {
        Arc::new(build(&s.parse().unwrap()).unwrap())
    }

    fn p(s: &str, d: usize) -> Permutation {
        Permutation::parse_cycles(s, Some(d)).unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        let g = grp("Sym(4)");
        let x = p("(0 1 2)", 4);
        let e = GroupRingElement::element(g.clone(), &x, 1).unwrap();
        let einv = GroupRingElement::element(g.clone(), &x.inverse(), 1).unwrap();
        assert_eq!(e.mul(&einv).unwrap(), GroupRingElement::one(g.clone()));
        let one = GroupRingElement::one(g.clone());
        let lhs = one.add(&e).unwrap().mul(&one.sub(&e).unwrap()).unwrap();
        let sq = GroupRingElement::element(g.clone(), &x.pow(2), 1).unwrap();
        assert_eq!(lhs, one.sub(&sq).unwrap());
        let u = GroupRingElement::from_terms(g.clone(), &[(2, p("(0 1)", 4)), (-1, p("(2 3)", 4))])
            .unwrap();
        let w = GroupRingElement::element(g.clone(), &p("(1 2 3)", 4), 3).unwrap();
        assert_eq!(u.mul(&w).unwrap().augmentation(), 3);
    }

    #[test]
    fn mismatched_groups_are_rejected() {
        let a = GroupRingElement::one(grp("Sym(3)"));
        let b = GroupRingElement::one(grp("Sym(3)"));
        assert!(matches!(a.add(&b), Err(Error::GroupMismatch)));
    }

    #[test]
    fn partial_augmentation_examples() {
        let g = grp("Sym(4)");
        let x = p("(0 1 2)", 4);
        let h = p("(0 3)", 4);
        let k = p("(0 1)", 4);
        let v = GroupRingElement::from_terms(
            g.clone(),
            &[(2, x.clone()), (3, x.conjugate_by(&h)), (-5, k.clone())],
        )
        .unwrap();
        let eps = v.partial_augmentations().unwrap();
        assert_eq!(eps[g.class_of(&x).unwrap()], 5);
        assert_eq!(eps[g.class_of(&k).unwrap()], -5);
        assert_eq!(eps.iter().sum::<i64>(), v.augmentation());
    }

    #[test]
    fn commutators_have_zero_partial_augmentations() {
        let g = grp("Alt(5)");
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let u = GroupRingElement::random(g.clone(), &mut rng, 6, 5).unwrap();
            let w = GroupRingElement::random(g.clone(), &mut rng, 6, 5).unwrap();
            assert!(u
                .commutator(&w)
                .unwrap()
                .partial_augmentations()
                .unwrap()
                .iter()
                .all(|&e| e == 0));
        }
    }

    #[test]
    fn pushforward_examples() {
        let g = grp("Sym(4)");
        let v4 = g
            .normal_subgroups()
            .unwrap()
            .into_iter()
            .find(|n| n.order() == 4)
            .unwrap();
        let map = g.quotient(&v4).unwrap();
        let v = GroupRingElement::from_terms(g.clone(), &[(1, p("(0 1)", 4)), (1, p("(2 3)", 4))])
            .unwrap();
        let img = v.pushforward(&map).unwrap();
        let t = map.image(&g, &p("(0 1)", 4)).unwrap();
        assert_eq!(
            img,
            GroupRingElement::element(map.group.clone(), &t, 2).unwrap()
        );
        let whole = g.quotient(&g.whole_group().unwrap()).unwrap();
        let img = v.pushforward(&whole).unwrap();
        assert_eq!(img, GroupRingElement::one(whole.group.clone()).scale(2));
    }

    #[test]
    fn text_round_trip() {
        let g = grp("Sym(3)");
        let v = GroupRingElement::parse(g.clone(), "2*(0 1 2) - 1*(0 1) + 1*()").unwrap();
        assert_eq!(v.augmentation(), 2);
        let again = GroupRingElement::parse(g.clone(), &v.to_string()).unwrap();
        assert_eq!(again, v);
        assert_eq!(
            GroupRingElement::parse(g.clone(), "0").unwrap(),
            GroupRingElement::zero(g.clone())
        );
        assert_eq!(
            GroupRingElement::parse(g.clone(), "(0 1)(2)")
                .unwrap()
                .augmentation(),
            1
        );
        assert!(GroupRingElement::parse(g.clone(), "2*(0 1) 3*(1 2)").is_err());
        assert!(GroupRingElement::parse(g.clone(), "2(0 1)").is_err());
        assert!(GroupRingElement::parse(g.clone(), "1*(0 3)").is_err());
        let j = v.to_json().unwrap();
        assert_eq!(j["terms"]["(0 1)"], -1);
    }
}
