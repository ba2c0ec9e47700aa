use std::collections::{BTreeSet, VecDeque};

use super::{preserves, AutError, ProjMap};
use crate::scalar::Field;
use crate::symforms::SymForm;

pub const DEFAULT_CAP: usize = 100_000;

/// A finite subgroup of `PGL(N+1)` stored as normalized representatives.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup<F> {
    elements: BTreeSet<ProjMap<F>>,
    generators: Vec<ProjMap<F>>,
}

impl<F: Field> FiniteGroup<F> {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Normalized elements in canonical order.
    pub fn elements(&self) -> impl Iterator<Item = &ProjMap<F>> {
        self.elements.iter()
    }

    pub fn generators(&self) -> &[ProjMap<F>] {
        &self.generators
    }

    pub fn contains(&self, t: &ProjMap<F>) -> bool {
        self.elements.contains(&t.normalized())
    }
}

impl<F: Field> std::fmt::Debug for FiniteGroup<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("order", &self.order())
            .field("generators", &self.generators)
            .finish()
    }
}

/// Subgroup generated by `gens`, each of which must preserve `form`.
///
/// Breadth-first closure under right multiplication by the generators.
/// Fails with [`AutError::CapExceeded`] once more than `cap` elements are
/// found, or as soon as an element is certified to have infinite order.
pub fn group_closure<F: Field>(
    gens: &[ProjMap<F>],
    form: &SymForm<F>,
    cap: usize,
) -> Result<FiniteGroup<F>, AutError> {
    let dim = form.n() + 1;
    for (index, g) in gens.iter().enumerate() {
        if !preserves(g, form)? {
            return Err(AutError::NotPreserved { index });
        }
    }
    let generators: Vec<ProjMap<F>> = gens.iter().map(ProjMap::normalized).collect();
    let identity = ProjMap::identity(dim);
    let mut elements = BTreeSet::from([identity.clone()]);
    let mut queue = VecDeque::from([identity]);
    if elements.len() > cap {
        return Err(AutError::CapExceeded { cap, certified_infinite: false });
    }
    while let Some(g) = queue.pop_front() {
        for s in &generators {
            let h = g.compose(s)?.normalized();
            if elements.contains(&h) {
                continue;
            }
            if h.certainly_infinite_order() {
                return Err(AutError::CapExceeded { cap, certified_infinite: true });
            }
            if elements.len() >= cap {
                return Err(AutError::CapExceeded { cap, certified_infinite: false });
            }
            elements.insert(h.clone());
            queue.push_back(h);
        }
    }
    Ok(FiniteGroup { elements, generators })
}

/// Signed permutation matrices preserving `form`, one per projective class.
///
/// These form a group, so the result is its own closure. Useful as a
/// finite candidate set of automorphisms.
pub fn signed_permutation_automorphisms<F: Field>(form: &SymForm<F>) -> Result<Vec<ProjMap<F>>, AutError> {
    let dim = form.n() + 1;
    let mut found = BTreeSet::new();
    let mut perm: Vec<usize> = (0..dim).collect();
    loop {
        // the sign of the first coordinate is fixed by normalization
        for mask in 0..(1u64 << (dim - 1)) {
            let signs: Vec<bool> = (0..dim).map(|i| i > 0 && mask >> (i - 1) & 1 == 1).collect();
            let t = ProjMap::signed_permutation(&perm, &signs)?;
            if preserves(&t, form)? {
                found.insert(t.normalized());
            }
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    Ok(found.into_iter().collect())
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).expect("successor exists");
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rat, Form, Map};

    fn cycle() -> Map {
        Map::new(vec![
            vec![rat(0), rat(1), rat(0)],
            vec![rat(0), rat(0), rat(1)],
            vec![rat(1), rat(0), rat(0)],
        ])
        .unwrap()
    }

    fn cyclic_form() -> Form {
        Form::parse(2, "(y^2*z - z^2*y)*dx + (z^2*x - x^2*z)*dy + (x^2*y - y^2*x)*dz").unwrap()
    }

    #[test]
    fn trivial_group() {
        let w = Form::parse(2, "x*dy - y*dx").unwrap();
        assert_eq!(group_closure(&[Map::identity(3)], &w, DEFAULT_CAP).unwrap().order(), 1);
        assert_eq!(group_closure(&[], &w, DEFAULT_CAP).unwrap().order(), 1);
    }

    #[test]
    fn swap_group() {
        let w = Form::parse(2, "x*z*dy + y*z*dx - 2*x*y*dz").unwrap();
        let g = group_closure(&[Map::swap(3, 0, 1)], &w, DEFAULT_CAP).unwrap();
        assert_eq!(g.order(), 2);
        assert!(g.contains(&Map::swap(3, 0, 1).compose(&Map::diagonal(vec![rat(5); 3]).unwrap()).unwrap()));
    }

    #[test]
    fn cyclic_groups() {
        let w = cyclic_form();
        assert!(w.is_valid());
        assert_eq!(group_closure(&[cycle()], &w, DEFAULT_CAP).unwrap().order(), 3);
        let s3 = group_closure(&[cycle(), Map::swap(3, 0, 1)], &w, DEFAULT_CAP).unwrap();
        assert_eq!(s3.order(), 6);
    }

    #[test]
    fn rejects_non_preserving_generator() {
        let w = Form::parse(2, "-y*z^2*dx + (x*z^2 + z*y^2)*dy - y^3*dz").unwrap();
        assert_eq!(
            group_closure(&[Map::identity(3), Map::swap(3, 0, 1)], &w, 10).unwrap_err(),
            AutError::NotPreserved { index: 1 }
        );
    }

    #[test]
    fn infinite_order_stops_early() {
        let w = Form::parse(2, "x*dy - y*dx").unwrap();
        let d = Map::diagonal(vec![rat(2), rat(1), rat(1)]).unwrap();
        assert_eq!(
            group_closure(&[d], &w, DEFAULT_CAP).unwrap_err(),
            AutError::CapExceeded { cap: DEFAULT_CAP, certified_infinite: true }
        );
    }

    #[test]
    fn small_cap() {
        let w = cyclic_form();
        assert_eq!(
            group_closure(&[cycle(), Map::swap(3, 0, 1)], &w, 5).unwrap_err(),
            AutError::CapExceeded { cap: 5, certified_infinite: false }
        );
        assert_eq!(group_closure(&[cycle(), Map::swap(3, 0, 1)], &w, 6).unwrap().order(), 6);
    }

    #[test]
    fn signed_permutation_search() {
        let found = signed_permutation_automorphisms(&cyclic_form()).unwrap();
        let g = group_closure(&found, &cyclic_form(), DEFAULT_CAP).unwrap();
        assert_eq!(g.order(), found.len());
        assert!(found.len() >= 6);
    }
}
