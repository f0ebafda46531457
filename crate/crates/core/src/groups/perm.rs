//! Minimal permutation-group machinery for groups of order ≤ 120.
//!
//! Everything here is brute force by design: the stabilizer types occurring
//! in the catalog top out at order 120, so full element enumeration and
//! pairwise conjugacy tests are cheap and leave no room for subtle bugs.

use once_cell::sync::OnceCell;
use std::collections::{HashMap, VecDeque};

/// A permutation of `{0..degree-1}`, stored as its image table.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<u8>);

impl Perm {
    pub fn identity(degree: usize) -> Self {
        Perm((0..degree as u8).collect())
    }

    /// Build from disjoint cycles; points absent from every cycle are fixed.
    pub fn from_cycles(degree: usize, cycles: &[&[u8]]) -> Self {
        let mut images: Vec<u8> = (0..degree as u8).collect();
        for cycle in cycles {
            for w in 0..cycle.len() {
                images[cycle[w] as usize] = cycle[(w + 1) % cycle.len()];
            }
        }
        Perm(images)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn image(&self, x: usize) -> usize {
        self.0[x] as usize
    }

    /// Composition: `(self * other)(x) = self(other(x))`.
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm(other.0.iter().map(|&x| self.0[x as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0u8; self.0.len()];
        for (x, &y) in self.0.iter().enumerate() {
            images[y as usize] = x as u8;
        }
        Perm(images)
    }

    pub fn pow(&self, k: usize) -> Perm {
        let mut acc = Perm::identity(self.degree());
        for _ in 0..k {
            acc = self.compose(&acc);
        }
        acc
    }

    /// `g * self * g⁻¹`.
    pub fn conjugate_by(&self, g: &Perm) -> Perm {
        g.compose(&self.compose(&g.inverse()))
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(x, &y)| x as u8 == y)
    }

    /// Element order: least common multiple of cycle lengths.
    pub fn order(&self) -> usize {
        let mut seen = vec![false; self.0.len()];
        let mut ord = 1usize;
        for start in 0..self.0.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0usize;
            let mut x = start;
            loop {
                seen[x] = true;
                len += 1;
                x = self.image(x);
                if x == start {
                    break;
                }
            }
            ord = num_integer::lcm(ord, len);
        }
        ord
    }
}

/// A finite permutation group given by generators, with the element list
/// enumerated on first use and cached.
#[derive(Debug)]
pub struct PermutationGroup {
    pub degree: usize,
    pub generators: Vec<Perm>,
    elements: OnceCell<Vec<Perm>>,
}

impl PermutationGroup {
    pub fn new(degree: usize, generators: Vec<Perm>) -> Self {
        debug_assert!(generators.iter().all(|g| g.degree() == degree));
        PermutationGroup {
            degree,
            generators,
            elements: OnceCell::new(),
        }
    }

    /// The full element list (breadth-first closure of the generators),
    /// sorted for determinism.
    pub fn elements(&self) -> &[Perm] {
        self.elements.get_or_init(|| {
            let id = Perm::identity(self.degree);
            let mut seen: Vec<Perm> = vec![id.clone()];
            let mut queue: VecDeque<Perm> = VecDeque::from([id]);
            while let Some(p) = queue.pop_front() {
                for g in &self.generators {
                    let q = g.compose(&p);
                    if !seen.contains(&q) {
                        seen.push(q.clone());
                        queue.push_back(q);
                    }
                }
            }
            seen.sort_unstable();
            seen
        })
    }

    pub fn order(&self) -> usize {
        self.elements().len()
    }
}

/// Conjugacy-class data of a realized group: the raw material for all the
/// counting oracles.
#[derive(Debug)]
pub struct ClassData {
    pub elements: Vec<Perm>,
    /// `class_of[i]` is the class index of `elements[i]`.
    pub class_of: Vec<usize>,
    /// One representative element index per class.
    pub representatives: Vec<usize>,
    /// Sizes of the classes.
    pub class_sizes: Vec<usize>,
    /// Exponent of the group (lcm of element orders).
    pub exponent: usize,
    index: HashMap<Perm, usize>,
}

impl ClassData {
    pub fn compute(g: &PermutationGroup) -> ClassData {
        let elements: Vec<Perm> = g.elements().to_vec();
        let index: HashMap<Perm, usize> = elements
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, p)| (p, i))
            .collect();
        let mut class_of = vec![usize::MAX; elements.len()];
        let mut representatives = Vec::new();
        let mut class_sizes = Vec::new();
        for start in 0..elements.len() {
            if class_of[start] != usize::MAX {
                continue;
            }
            let class_id = representatives.len();
            representatives.push(start);
            // Orbit of `start` under conjugation by the whole group.
            let mut orbit = vec![start];
            class_of[start] = class_id;
            let mut cursor = 0;
            while cursor < orbit.len() {
                let x = elements[orbit[cursor]].clone();
                cursor += 1;
                for g in &elements {
                    let y = x.conjugate_by(g);
                    let yi = index[&y];
                    if class_of[yi] == usize::MAX {
                        class_of[yi] = class_id;
                        orbit.push(yi);
                    }
                }
            }
            class_sizes.push(orbit.len());
        }
        let exponent = elements
            .iter()
            .fold(1usize, |acc, p| num_integer::lcm(acc, p.order()));
        ClassData {
            elements,
            class_of,
            representatives,
            class_sizes,
            exponent,
            index,
        }
    }

    pub fn class_count(&self) -> usize {
        self.representatives.len()
    }

    pub fn element_index(&self, p: &Perm) -> usize {
        self.index[p]
    }

    /// The class of `x^k` for `x` any element of class `c` (well defined:
    /// conjugation commutes with powers).
    pub fn power_class(&self, c: usize, k: usize) -> usize {
        let rep = &self.elements[self.representatives[c]];
        let ord = rep.order();
        self.class_of[self.element_index(&rep.pow(k % ord))]
    }

    /// The class of inverses of class `c`.
    pub fn inverse_class(&self, c: usize) -> usize {
        let rep = &self.elements[self.representatives[c]];
        self.class_of[self.element_index(&rep.inverse())]
    }

    /// Order of the elements in class `c`.
    pub fn class_element_order(&self, c: usize) -> usize {
        self.elements[self.representatives[c]].order()
    }
}

/// Count orbits of `{0..n-1}` under a set of self-maps.
pub fn orbit_count(n: usize, maps: &[Box<dyn Fn(usize) -> usize + '_>]) -> usize {
    let mut seen = vec![false; n];
    let mut orbits = 0;
    for start in 0..n {
        if seen[start] {
            continue;
        }
        orbits += 1;
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(x) = stack.pop() {
            for m in maps {
                let y = m(x);
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
    }
    orbits
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3() -> PermutationGroup {
        PermutationGroup::new(
            3,
            vec![
                Perm::from_cycles(3, &[&[0, 1]]),
                Perm::from_cycles(3, &[&[0, 1, 2]]),
            ],
        )
    }

    #[test]
    fn s3_structure() {
        let g = s3();
        assert_eq!(g.order(), 6);
        let data = ClassData::compute(&g);
        assert_eq!(data.class_count(), 3);
        assert_eq!(data.exponent, 6);
        let mut sizes = data.class_sizes.clone();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 2, 3]);
    }

    #[test]
    fn perm_arithmetic() {
        let r = Perm::from_cycles(5, &[&[0, 1, 2, 3, 4]]);
        assert_eq!(r.order(), 5);
        assert!(r.pow(5).is_identity());
        assert_eq!(r.compose(&r.inverse()), Perm::identity(5));
        let s = Perm::from_cycles(5, &[&[1, 4], &[2, 3]]);
        assert_eq!(s.order(), 2);
        // Dihedral relation: s r s⁻¹ = r⁻¹.
        assert_eq!(r.conjugate_by(&s), r.inverse());
    }

    #[test]
    fn orbit_count_basics() {
        // 4 points, one map pairing 0↔1 and fixing the rest: 3 orbits.
        let swap = |x: usize| match x {
            0 => 1,
            1 => 0,
            other => other,
        };
        let maps: Vec<Box<dyn Fn(usize) -> usize>> = vec![Box::new(swap)];
        assert_eq!(orbit_count(4, &maps), 3);
    }
}
