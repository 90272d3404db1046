use super::chain::StabChain;
use super::group::PermGroup;
use super::permutation::Permutation;
use crate::error::{Error, Result};

/// A homomorphism from a permutation group, given by generator images.
///
/// Realized through the graph subgroup `{(g, phi(g))}` acting on the disjoint
/// union of both point sets. The map is well defined exactly when that graph
/// subgroup has the same order as the source.
#[derive(Clone, Debug)]
pub struct Homomorphism {
    source: PermGroup,
    image: PermGroup,
    graph: StabChain,
    source_degree: usize,
    target_degree: usize,
}

impl Homomorphism {
    pub fn from_images(source: &PermGroup, images: Vec<Permutation>) -> Result<Self> {
        if images.len() != source.generators().len() {
            return Err(Error::InvalidArgument(format!(
                "{} images for {} generators",
                images.len(),
                source.generators().len()
            )));
        }
        let target_degree = images[0].degree();
        if let Some(bad) = images.iter().find(|q| q.degree() != target_degree) {
            return Err(Error::DegreeMismatch {
                expected: target_degree,
                found: bad.degree(),
            });
        }
        let n = source.degree();
        let graph_gens: Vec<Permutation> = source
            .generators()
            .iter()
            .zip(&images)
            .map(|(g, q)| Permutation::direct_sum(&[g, q]))
            .collect();
        let graph = StabChain::new(n + target_degree, &graph_gens);
        if graph.order() != source.order() {
            return Err(Error::InvalidArgument(
                "generator images do not define a homomorphism".into(),
            ));
        }
        let image = PermGroup::new(images)?;
        Ok(Homomorphism {
            source: source.clone(),
            image,
            graph,
            source_degree: n,
            target_degree,
        })
    }

    /// Restriction of the action to the invariant block `offset .. offset + len`.
    pub fn restriction(source: &PermGroup, offset: usize, len: usize) -> Result<Self> {
        let images = source
            .generators()
            .iter()
            .map(|g| g.restrict(offset, len))
            .collect::<Result<Vec<_>>>()?;
        Self::from_images(source, images)
    }

    pub fn source(&self) -> &PermGroup {
        &self.source
    }

    pub fn image(&self) -> &PermGroup {
        &self.image
    }

    pub fn apply(&self, x: &Permutation) -> Result<Permutation> {
        if x.degree() != self.source_degree {
            return Err(Error::DegreeMismatch {
                expected: self.source_degree,
                found: x.degree(),
            });
        }
        if !self.source.has(x) {
            return Err(Error::NotInGroup(x.to_string()));
        }
        let lifted = Permutation::direct_sum(&[x, &Permutation::identity(self.target_degree)]);
        let d = self.graph.unrank(self.graph.rank(&lifted));
        debug_assert_eq!(&d.restrict(0, self.source_degree).unwrap(), x);
        d.restrict(self.source_degree, self.target_degree)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, n: usize) -> Permutation {
        Permutation::parse(s, Some(n)).unwrap()
    }

    #[test]
    fn sign_map_of_s4() {
        let s4 = PermGroup::from_cycle_strings(4, &["(1 2)", "(1 2 3 4)"]).unwrap();
        let sign = Homomorphism::from_images(&s4, vec![p("(1 2)", 2), p("(1 2)", 2)]).unwrap();
        for g in s4.enumerate_elements(24).unwrap() {
            let expected = if g.is_even() {
                Permutation::identity(2)
            } else {
                p("(1 2)", 2)
            };
            assert_eq!(sign.apply(&g).unwrap(), expected);
        }
        assert_eq!(sign.image().order(), 2);
    }

    #[test]
    fn rejects_non_homomorphisms() {
        let s3 = PermGroup::from_cycle_strings(3, &["(1 2)", "(1 2 3)"]).unwrap();
        // a transposition cannot map to an element of order 3
        let bad = Homomorphism::from_images(&s3, vec![p("(1 2 3)", 3), p("()", 3)]);
        assert!(bad.is_err());
    }

    #[test]
    fn restriction_to_block() {
        let g = PermGroup::from_cycle_strings(6, &["(1 2 3)(4 5 6)", "(1 2)(4 5)"]).unwrap();
        let h = Homomorphism::restriction(&g, 3, 3).unwrap();
        assert_eq!(h.image().order(), 6);
        assert_eq!(
            h.apply(&p("(1 3 2)(4 6 5)", 6)).unwrap(),
            p("(1 3 2)", 3)
        );
        assert!(h.apply(&p("(1 2)", 6)).is_err());
    }
}
