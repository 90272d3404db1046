//! Stabilizer chains built with the deterministic Schreier–Sims algorithm.
//!
//! Every element `g` of the group factors uniquely as
//! `g = u_{k-1} ... u_1 u_0` with `u_i` a coset representative at level `i`,
//! which gives exact orders, membership by sifting and a bijection between
//! the group and `0 .. order` (ranks).

use rand::Rng;

use super::permutation::Permutation;

const NONE: u32 = u32::MAX;

#[derive(Clone, Debug)]
struct Level {
    base: u32,
    gens: Vec<Permutation>,
    orbit: Vec<u32>,
    /// `pos[point]` is the index of `point` in `orbit`, or `NONE`.
    pos: Vec<u32>,
    reps: Vec<Permutation>,
    reps_inv: Vec<Permutation>,
    /// Number of orbit points already checked against each generator.
    tested: Vec<usize>,
}

impl Level {
    fn new(base: u32, degree: usize) -> Self {
        let mut pos = vec![NONE; degree];
        pos[base as usize] = 0;
        Level {
            base,
            gens: Vec::new(),
            orbit: vec![base],
            pos,
            reps: vec![Permutation::identity(degree)],
            reps_inv: vec![Permutation::identity(degree)],
            tested: Vec::new(),
        }
    }

    /// Adds a generator and extends the orbit; existing representatives are kept.
    fn add_gen(&mut self, g: Permutation) {
        self.gens.push(g);
        self.tested.push(0);
        let mut k = 0;
        while k < self.orbit.len() {
            let pt = self.orbit[k];
            for gi in 0..self.gens.len() {
                let img = self.gens[gi].image(pt);
                if self.pos[img as usize] == NONE {
                    self.pos[img as usize] = self.orbit.len() as u32;
                    self.orbit.push(img);
                    let rep = self.reps[k].mul(&self.gens[gi]);
                    self.reps_inv.push(rep.inverse());
                    self.reps.push(rep);
                }
            }
            k += 1;
        }
    }
}

/// A base and strong generating set with explicit transversals.
#[derive(Clone, Debug)]
pub struct StabChain {
    degree: usize,
    levels: Vec<Level>,
}

/// Result of sifting an element through a chain.
struct Strip {
    residue: Permutation,
    /// Level at which sifting stopped; equals the depth when it ran through.
    level: usize,
}

impl StabChain {
    /// Builds a complete chain for the group generated by `gens`.
    pub fn new(degree: usize, gens: &[Permutation]) -> Self {
        let mut chain = StabChain {
            degree,
            levels: Vec::new(),
        };
        chain.extend(gens, None);
        chain
    }

    /// Runs Schreier–Sims but stops as soon as the partial order reaches `target`.
    ///
    /// Returns `true` when the target was reached. The partial order is always
    /// a lower bound for the order of the generated group, so reaching the
    /// target proves the generated group has at least that order.
    pub fn reaches_order(degree: usize, gens: &[Permutation], target: u128) -> bool {
        let mut chain = StabChain {
            degree,
            levels: Vec::new(),
        };
        chain.extend(gens, Some(target))
    }

    /// Adds generators to an existing chain and completes it again.
    pub fn add_generators(&mut self, gens: &[Permutation]) {
        self.extend(gens, None);
    }

    fn extend(&mut self, gens: &[Permutation], target: Option<u128>) -> bool {
        for g in gens {
            debug_assert_eq!(g.degree(), self.degree);
            if g.is_identity() {
                continue;
            }
            let strip = self.strip(g, 0);
            if strip.level == self.levels.len() && strip.residue.is_identity() {
                continue;
            }
            self.insert_residue(strip.residue, 0, strip.level);
        }
        self.complete(target)
    }

    fn insert_residue(&mut self, residue: Permutation, from: usize, to: usize) {
        let mut to = to;
        if to == self.levels.len() {
            let b = residue
                .first_moved_point()
                .expect("residue of a failed sift moves a point");
            self.levels.push(Level::new(b, self.degree));
            to = self.levels.len() - 1;
        }
        for l in from..=to {
            self.levels[l].add_gen(residue.clone());
        }
    }

    fn complete(&mut self, target: Option<u128>) -> bool {
        if let Some(t) = target {
            if self.order() >= t {
                return true;
            }
        }
        if self.levels.is_empty() {
            return target.is_none_or(|t| t <= 1);
        }
        let mut i = self.levels.len() as isize - 1;
        'outer: while i >= 0 {
            let li = i as usize;
            let mut gi = 0;
            while gi < self.levels[li].gens.len() {
                while self.levels[li].tested[gi] < self.levels[li].orbit.len() {
                    let k = self.levels[li].tested[gi];
                    self.levels[li].tested[gi] += 1;
                    let level = &self.levels[li];
                    let beta = level.orbit[k];
                    let img = level.gens[gi].image(beta);
                    let j = level.pos[img as usize] as usize;
                    let mut h = level.reps[k].mul(&level.gens[gi]);
                    h.mul_assign(&level.reps_inv[j]);
                    if h.is_identity() {
                        continue;
                    }
                    let strip = self.strip(&h, li + 1);
                    if strip.level < self.levels.len() || !strip.residue.is_identity() {
                        let stop = strip.level;
                        self.insert_residue(strip.residue, li + 1, stop);
                        if let Some(t) = target {
                            if self.order() >= t {
                                return true;
                            }
                        }
                        i = stop.min(self.levels.len() - 1) as isize;
                        continue 'outer;
                    }
                }
                gi += 1;
            }
            i -= 1;
        }
        match target {
            Some(t) => self.order() >= t,
            None => true,
        }
    }

    fn strip(&self, g: &Permutation, from: usize) -> Strip {
        let mut h = g.clone();
        for (l, level) in self.levels.iter().enumerate().skip(from) {
            let beta = h.image(level.base);
            let j = level.pos[beta as usize];
            if j == NONE {
                return Strip { residue: h, level: l };
            }
            h.mul_assign(&level.reps_inv[j as usize]);
        }
        Strip {
            residue: h,
            level: self.levels.len(),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> u128 {
        self.levels
            .iter()
            .map(|l| l.orbit.len() as u128)
            .product()
    }

    pub fn base(&self) -> Vec<u32> {
        self.levels.iter().map(|l| l.base).collect()
    }

    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    pub fn transversal_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    /// Strong generators (generators of the first level, which include all others).
    pub fn strong_generators(&self) -> Vec<Permutation> {
        self.levels
            .first()
            .map(|l| l.gens.clone())
            .unwrap_or_default()
    }

    /// The orbit of the first base point (empty for the trivial group).
    pub fn first_orbit(&self) -> &[u32] {
        self.levels.first().map(|l| l.orbit.as_slice()).unwrap_or(&[])
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        let s = self.strip(g, 0);
        s.level == self.levels.len() && s.residue.is_identity()
    }

    /// Mixed-radix index of `g` in `0 .. order`; `g` must lie in the group.
    ///
    /// Only base-point images are tracked, so the cost is quadratic in the
    /// depth rather than proportional to the degree.
    pub fn rank(&self, g: &Permutation) -> u64 {
        let mut r: u64 = 0;
        let mut radix: u64 = 1;
        let mut idx = [0u32; 64];
        let deep = self.levels.len() > 64;
        if deep {
            return self.rank_slow(g);
        }
        for (m, level) in self.levels.iter().enumerate() {
            let mut x = g.image(level.base);
            for (l, prev) in self.levels[..m].iter().enumerate() {
                x = prev.reps_inv[idx[l] as usize].image(x);
            }
            let j = level.pos[x as usize];
            debug_assert!(j != NONE, "rank of an element outside the group");
            idx[m] = j;
            r += j as u64 * radix;
            radix *= level.orbit.len() as u64;
        }
        r
    }

    fn rank_slow(&self, g: &Permutation) -> u64 {
        let mut h = g.clone();
        let mut r: u64 = 0;
        let mut radix: u64 = 1;
        for level in &self.levels {
            let j = level.pos[h.image(level.base) as usize];
            r += j as u64 * radix;
            radix *= level.orbit.len() as u64;
            h.mul_assign(&level.reps_inv[j as usize]);
        }
        r
    }

    /// Inverse of [`StabChain::rank`].
    pub fn unrank(&self, mut r: u64) -> Permutation {
        let mut digits = Vec::with_capacity(self.levels.len());
        for level in &self.levels {
            let len = level.orbit.len() as u64;
            digits.push((r % len) as usize);
            r /= len;
        }
        let mut g = Permutation::identity(self.degree);
        for (level, &d) in self.levels.iter().zip(&digits).rev() {
            g.mul_assign(&level.reps[d]);
        }
        g
    }

    /// Uniformly random element.
    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> Permutation {
        let mut g = Permutation::identity(self.degree);
        for level in self.levels.iter().rev() {
            let d = rng.gen_range(0..level.orbit.len());
            g.mul_assign(&level.reps[d]);
        }
        g
    }

    /// Element mapping the first base point to `point`, if `point` is in its orbit.
    pub fn first_transversal(&self, point: u32) -> Option<&Permutation> {
        let level = self.levels.first()?;
        let j = level.pos[point as usize];
        (j != NONE).then(|| &level.reps[j as usize])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::collections::HashSet;

    fn p(s: &str, n: usize) -> Permutation {
        Permutation::parse(s, Some(n)).unwrap()
    }

    /// Closure by repeated multiplication; independent of the chain.
    fn closure(gens: &[Permutation]) -> HashSet<Permutation> {
        let n = gens[0].degree();
        let mut seen: HashSet<Permutation> = HashSet::new();
        let mut queue = vec![Permutation::identity(n)];
        seen.insert(Permutation::identity(n));
        while let Some(x) = queue.pop() {
            for g in gens {
                let y = x.mul(g);
                if seen.insert(y.clone()) {
                    queue.push(y);
                }
            }
        }
        seen
    }

    #[test]
    fn orders_match_closure() {
        let cases = [
            vec![p("(1 2 3 4 5)", 5), p("(1 2 3)", 5)],
            vec![p("(1 2)", 4), p("(1 2 3 4)", 4)],
            vec![p("(1 2)(3 4)", 6), p("(1 3 5)(2 4 6)", 6)],
            vec![p("(1 2 3 4 5 6 7)", 7), p("(1 2)(3 6)", 7)],
        ];
        for gens in cases {
            let chain = StabChain::new(gens[0].degree(), &gens);
            assert_eq!(chain.order(), closure(&gens).len() as u128);
        }
    }

    #[test]
    fn rank_is_a_bijection() {
        let gens = [p("(1 2 3 4 5)", 5), p("(1 2)", 5)];
        let chain = StabChain::new(5, &gens);
        assert_eq!(chain.order(), 120);
        let mut seen = HashSet::new();
        for r in 0..120u64 {
            let g = chain.unrank(r);
            assert!(chain.contains(&g));
            assert_eq!(chain.rank(&g), r);
            assert!(seen.insert(g));
        }
    }

    #[test]
    fn membership() {
        let chain = StabChain::new(5, &[p("(1 2 3 4 5)", 5), p("(1 2 3)", 5)]);
        assert!(chain.contains(&Permutation::identity(5)));
        assert!(!chain.contains(&p("(1 2)", 5)));
        assert!(chain.contains(&p("(1 2)(3 4)", 5)));
    }

    #[test]
    fn early_exit_reaches_target() {
        let gens = [p("(1 2 3 4 5)", 5), p("(1 2)", 5)];
        assert!(StabChain::reaches_order(5, &gens, 120));
        assert!(!StabChain::reaches_order(5, &gens[..1], 120));
    }

    #[test]
    fn random_elements_are_members() {
        let chain = StabChain::new(6, &[p("(1 2 3 4 5 6)", 6), p("(1 2)", 6)]);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            assert!(chain.contains(&chain.random_element(&mut rng)));
        }
    }

    #[test]
    fn adding_generators_grows_the_group() {
        let mut chain = StabChain::new(5, &[p("(1 2 3 4 5)", 5)]);
        assert_eq!(chain.order(), 5);
        chain.add_generators(&[p("(2 5)(3 4)", 5)]);
        assert_eq!(chain.order(), 10);
        chain.add_generators(&[p("(1 2 3)", 5)]);
        assert_eq!(chain.order(), 60);
    }
}
