use crate::exact::Exponents;

/// A monomial ideal in the dual ring, kept with a minimal generating set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialIdeal {
    num_vars: usize,
    generators: Vec<Exponents>,
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

impl MonomialIdeal {
    /// Builds the ideal, discarding generators divisible by another one.
    pub fn new(num_vars: usize, generators: impl IntoIterator<Item = Exponents>) -> Self {
        let mut gens: Vec<Exponents> = generators.into_iter().collect();
        for g in &gens {
            assert_eq!(g.len(), num_vars, "generator length mismatch");
        }
        gens.sort_by_key(|g| (g.iter().sum::<u32>(), std::cmp::Reverse(g.clone())));
        gens.dedup();
        let mut minimal: Vec<Exponents> = Vec::with_capacity(gens.len());
        for g in gens {
            if !minimal.iter().any(|m| divides(m, &g)) {
                minimal.push(g);
            }
        }
        Self {
            num_vars,
            generators: minimal,
        }
    }

    /// The ideal generated by all variables.
    pub fn maximal(num_vars: usize) -> Self {
        Self::new(num_vars, (0..num_vars).map(|j| unit_vector(num_vars, j, 1)))
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn generators(&self) -> &[Exponents] {
        &self.generators
    }

    pub fn contains(&self, monomial: &[u32]) -> bool {
        self.generators.iter().any(|g| divides(g, monomial))
    }

    /// Smallest `k` with `X_j^k` in the ideal.
    pub fn pure_power(&self, var: usize) -> Option<u32> {
        self.generators
            .iter()
            .filter(|g| g.iter().enumerate().all(|(i, &e)| i == var || e == 0))
            .map(|g| g[var])
            .min()
    }

    /// Whether `X_j` itself belongs to the ideal.
    pub fn contains_variable(&self, var: usize) -> bool {
        self.pure_power(var).is_some_and(|k| k <= 1)
    }

    /// True when every variable has a pure power in the ideal, i.e. the
    /// quotient is finite dimensional.
    pub fn is_artinian(&self) -> bool {
        (0..self.num_vars).all(|j| self.pure_power(j).is_some())
    }

    /// Intersection of monomial ideals: generated by pairwise LCMs.
    pub fn intersect(&self, other: &Self) -> Self {
        assert_eq!(self.num_vars, other.num_vars);
        let lcms = self.generators.iter().flat_map(|a| {
            other
                .generators
                .iter()
                .map(move |b| a.iter().zip(b).map(|(x, y)| *x.max(y)).collect::<Exponents>())
        });
        Self::new(self.num_vars, lcms)
    }

    pub fn sum(&self, other: &Self) -> Self {
        assert_eq!(self.num_vars, other.num_vars);
        Self::new(
            self.num_vars,
            self.generators.iter().chain(&other.generators).cloned(),
        )
    }

    /// An upper bound on the socle degree of an Artinian quotient: the
    /// degree of the product of `X_j^{k_j - 1}` over the pure powers.
    pub fn top_degree_bound(&self) -> Option<u32> {
        (0..self.num_vars)
            .map(|j| self.pure_power(j).map(|k| k.saturating_sub(1)))
            .sum()
    }
}

pub(crate) fn unit_vector(n: usize, j: usize, k: u32) -> Exponents {
    let mut e = vec![0; n];
    e[j] = k;
    e
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimalizes_generators() {
        let j = MonomialIdeal::new(2, [vec![2, 0], vec![3, 1], vec![0, 2], vec![2, 0]]);
        assert_eq!(j.generators(), &[vec![2, 0], vec![0, 2]]);
    }

    #[test]
    fn intersection_by_lcm() {
        let a = MonomialIdeal::new(2, [vec![1, 0], vec![0, 2]]);
        let b = MonomialIdeal::new(2, [vec![2, 0], vec![0, 1]]);
        let c = a.intersect(&b);
        assert_eq!(c.generators(), &[vec![2, 0], vec![1, 1], vec![0, 2]]);
        assert_eq!(a.sum(&b), MonomialIdeal::maximal(2));
    }

    #[test]
    fn pure_powers() {
        let j = MonomialIdeal::new(3, [vec![1, 0, 0], vec![0, 3, 0], vec![0, 1, 1]]);
        assert!(j.contains_variable(0));
        assert_eq!(j.pure_power(1), Some(3));
        assert_eq!(j.pure_power(2), None);
        assert!(!j.is_artinian());
    }
}
