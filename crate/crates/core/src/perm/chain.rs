//! Stabilizer chain via the deterministic Schreier-Sims algorithm.

use super::Permutation;

#[derive(Debug, Clone)]
struct Level {
    base_point: u32,
    generators: Vec<Permutation>,
    orbit: Vec<u32>,
    /// `transversal[b]` maps the base point to `b`, when `b` is in the orbit.
    transversal: Vec<Option<Permutation>>,
}

impl Level {
    fn new(base_point: u32, degree: usize) -> Self {
        Level {
            base_point,
            generators: Vec::new(),
            orbit: Vec::new(),
            transversal: vec![None; degree],
        }
    }

    fn recompute_orbit(&mut self, degree: usize) {
        self.transversal = vec![None; degree];
        self.transversal[self.base_point as usize] = Some(Permutation::identity(degree));
        self.orbit = vec![self.base_point];
        let mut i = 0;
        while i < self.orbit.len() {
            let beta = self.orbit[i];
            let u_beta = self.transversal[beta as usize].clone().unwrap();
            for s in &self.generators {
                let gamma = s.image(beta);
                if self.transversal[gamma as usize].is_none() {
                    self.transversal[gamma as usize] = Some(u_beta.then(s));
                    self.orbit.push(gamma);
                }
            }
            i += 1;
        }
    }
}

/// A base and strong generating set for a permutation group.
#[derive(Debug, Clone)]
pub struct StabChain {
    degree: usize,
    levels: Vec<Level>,
}

impl StabChain {
    pub fn new(degree: usize, generators: &[Permutation]) -> Self {
        let gens: Vec<Permutation> = generators
            .iter()
            .filter(|g| !g.is_identity())
            .cloned()
            .collect();
        let mut chain = StabChain {
            degree,
            levels: Vec::new(),
        };
        if gens.is_empty() {
            return chain;
        }
        // Initial base: every generator moves some base point.
        for g in &gens {
            if chain
                .levels
                .iter()
                .all(|l| g.image(l.base_point) == l.base_point)
            {
                let pt = g.moved_points().next().unwrap();
                chain.levels.push(Level::new(pt, degree));
            }
        }
        for g in &gens {
            for l in 0..chain.levels.len() {
                chain.levels[l].generators.push(g.clone());
                let bp = chain.levels[l].base_point;
                if g.image(bp) != bp {
                    break;
                }
            }
        }
        for l in &mut chain.levels {
            l.recompute_orbit(degree);
        }
        chain.schreier_sims();
        chain
    }

    fn schreier_sims(&mut self) {
        let mut i = self.levels.len() as isize - 1;
        while i >= 0 {
            let li = i as usize;
            match self.find_failing_schreier_generator(li) {
                None => i -= 1,
                Some((h, drop_level)) => {
                    if drop_level == self.levels.len() {
                        let pt = h.moved_points().next().unwrap();
                        self.levels.push(Level::new(pt, self.degree));
                    }
                    for l in li + 1..=drop_level {
                        self.levels[l].generators.push(h.clone());
                        self.levels[l].recompute_orbit(self.degree);
                    }
                    i = drop_level as isize;
                }
            }
        }
    }

    fn find_failing_schreier_generator(&self, li: usize) -> Option<(Permutation, usize)> {
        let level = &self.levels[li];
        for &beta in &level.orbit {
            let u_beta = level.transversal[beta as usize].as_ref().unwrap();
            for s in &level.generators {
                let gamma = s.image(beta);
                let u_gamma = level.transversal[gamma as usize].as_ref().unwrap();
                let schreier = u_beta.then(s).then(&u_gamma.inverse());
                if schreier.is_identity() {
                    continue;
                }
                let (h, j) = self.sift_from(schreier, li + 1);
                if j < self.levels.len() || !h.is_identity() {
                    return Some((h, j));
                }
            }
        }
        None
    }

    fn sift_from(&self, mut g: Permutation, start: usize) -> (Permutation, usize) {
        for (j, level) in self.levels.iter().enumerate().skip(start) {
            let beta = g.image(level.base_point);
            match &level.transversal[beta as usize] {
                None => return (g, j),
                Some(u) => g = g.then(&u.inverse()),
            }
        }
        (g, self.levels.len())
    }

    pub fn order(&self) -> u128 {
        self.levels.iter().map(|l| l.orbit.len() as u128).product()
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        let (h, j) = self.sift_from(g.clone(), 0);
        j == self.levels.len() && h.is_identity()
    }

    pub fn base(&self) -> Vec<u32> {
        self.levels.iter().map(|l| l.base_point).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, n: usize) -> Permutation {
        Permutation::parse_cycles(s, Some(n)).unwrap()
    }

    #[test]
    fn symmetric_group_orders() {
        for n in 2..=8usize {
            let cyc: Vec<u32> = (0..n as u32).collect();
            let gens = vec![p("(0 1)", n), Permutation::from_cycles(n, &[cyc]).unwrap()];
            let chain = StabChain::new(n, &gens);
            let fact: u128 = (1..=n as u128).product();
            assert_eq!(chain.order(), fact);
        }
    }

    #[test]
    fn membership() {
        // Alt(4) does not contain a transposition.
        let gens = vec![p("(0 1 2)", 4), p("(1 2 3)", 4)];
        let chain = StabChain::new(4, &gens);
        assert_eq!(chain.order(), 12);
        assert!(chain.contains(&p("(0 1)(2 3)", 4)));
        assert!(!chain.contains(&p("(0 1)", 4)));
    }

    #[test]
    fn trivial_group() {
        let chain = StabChain::new(3, &[Permutation::identity(3)]);
        assert_eq!(chain.order(), 1);
        assert!(chain.contains(&Permutation::identity(3)));
        assert!(chain.base().is_empty());
    }
}
