//! Finite permutation groups on `n` points, materialized as explicit
//! element lists: conjugacy classes, element invariants, normal subgroups,
//! quotient orders, and the minimal-index growth exponent.

use crate::{Error, Result};
use num_rational::Rational64;
use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

/// Hard cap on the number of group elements a closure may materialize.
pub const GROUP_CAP: usize = 100_000;

/// A permutation of `{0..n-1}`, stored as its image sequence.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<usize>,
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.cycle_notation())
    }
}

impl Perm {
    /// Validates that `images` is a bijection on `{0..n-1}`.
    pub fn new(images: Vec<usize>) -> Result<Perm> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(Error::Validation(format!(
                    "not a bijection on {{0..{}}}: {:?}",
                    n.saturating_sub(1),
                    images
                )));
            }
            seen[i] = true;
        }
        Ok(Perm { images })
    }

    pub fn identity(n: usize) -> Perm {
        Perm {
            images: (0..n).collect(),
        }
    }

    /// Builds a permutation on `n` points from disjoint cycles (0-based).
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Perm> {
        let mut images: Vec<usize> = (0..n).collect();
        for cycle in cycles {
            for w in 0..cycle.len() {
                let from = cycle[w];
                let to = cycle[(w + 1) % cycle.len()];
                if from >= n || to >= n {
                    return Err(Error::Validation(format!(
                        "cycle point out of range for n={n}"
                    )));
                }
                images[from] = to;
            }
        }
        Perm::new(images)
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// `self * other`: apply `other` first, then `self`.
    pub fn compose(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.n(), other.n());
        Perm {
            images: (0..self.n()).map(|i| self.images[other.images[i]]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.n()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j] = i;
        }
        Perm { images: inv }
    }

    /// Conjugate `h * self * h^{-1}`.
    pub fn conjugate_by(&self, h: &Perm) -> Perm {
        h.compose(self).compose(&h.inverse())
    }

    /// Cycle lengths, sorted descending. Sums to `n`.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut seen = vec![false; self.n()];
        let mut lengths = Vec::new();
        for start in 0..self.n() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.images[x];
                len += 1;
            }
            lengths.push(len);
        }
        lengths.sort_unstable_by(|a, b| b.cmp(a));
        lengths
    }

    /// Number of orbits on the `n` points (= number of cycles, fixed points included).
    pub fn orbit_count(&self) -> usize {
        self.cycle_type().len()
    }

    /// The points the permutation moves, ascending.
    pub fn moved_points(&self) -> Vec<usize> {
        (0..self.n()).filter(|&i| self.images[i] != i).collect()
    }

    /// Multiplicative order.
    pub fn order(&self) -> usize {
        self.cycle_type().iter().fold(1, |acc, &l| lcm(acc, l))
    }

    /// `n` minus the number of orbits on points; zero exactly for the identity.
    pub fn ind(&self) -> usize {
        self.n() - self.orbit_count()
    }

    /// Disjoint-cycle notation with 1-based points, fixed points omitted.
    /// Points are space-separated once the degree needs two digits.
    pub fn cycle_notation(&self) -> String {
        let spaced = self.n() > 9;
        let mut seen = vec![false; self.n()];
        let mut out = String::new();
        for start in 0..self.n() {
            if seen[start] || self.images[start] == start {
                seen[start] = true;
                continue;
            }
            out.push('(');
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                if x != start && spaced {
                    out.push(' ');
                }
                out.push_str(&(x + 1).to_string());
                x = self.images[x];
            }
            out.push(')');
        }
        if out.is_empty() {
            out.push_str("()");
        }
        out
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 { a } else { gcd(b, a % b) }
}

/// Per-element invariants used throughout the exponent calculus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElementData {
    pub order: usize,
    /// Orbits on the `n` points.
    pub orbit_count_points: usize,
    /// `n - orbit_count_points`.
    pub ind: usize,
    /// Orbits of left multiplication on the group itself: `|G| / order`.
    pub regular_orbit_count: usize,
}

/// A conjugacy class with its full member list.
#[derive(Debug, Clone)]
pub struct ConjClass {
    pub representative: Perm,
    pub members: Vec<Perm>,
    pub cycle_type: Vec<usize>,
}

impl ConjClass {
    pub fn size(&self) -> usize {
        self.members.len()
    }

    pub fn label(&self) -> String {
        format!("[{}]", self.representative.cycle_notation())
    }

    pub fn contains(&self, g: &Perm) -> bool {
        self.members.binary_search(g).is_ok()
    }
}

/// A finite permutation group with all elements materialized.
#[derive(Debug, Clone)]
pub struct PermGroup {
    n: usize,
    /// Sorted lexicographically by image sequences.
    elements: Vec<Perm>,
    generators: Vec<Perm>,
    name: Option<String>,
}

impl PermGroup {
    /// Closes `generators` under products and inverses; errors beyond [`GROUP_CAP`].
    pub fn build(n: usize, generators: Vec<Perm>) -> Result<PermGroup> {
        if n == 0 {
            return Err(Error::Validation("point count must be >= 1".into()));
        }
        for g in &generators {
            if g.n() != n {
                return Err(Error::Validation(format!(
                    "generator on {} points, expected {}",
                    g.n(),
                    n
                )));
            }
        }
        let elements = close_under_products(n, &generators, GROUP_CAP)?;
        Ok(PermGroup {
            n,
            elements,
            generators,
            name: None,
        })
    }

    fn with_name(mut self, name: &str) -> PermGroup {
        self.name = Some(name.to_string());
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn contains(&self, g: &Perm) -> bool {
        self.elements.binary_search(g).is_ok()
    }

    /// True when the group moves the points in a single orbit.
    pub fn is_transitive(&self) -> bool {
        let mut reached = vec![false; self.n];
        let mut queue = VecDeque::from([0usize]);
        reached[0] = true;
        let mut count = 1;
        while let Some(x) = queue.pop_front() {
            for g in &self.generators {
                let y = g.apply(x);
                if !reached[y] {
                    reached[y] = true;
                    count += 1;
                    queue.push_back(y);
                }
            }
        }
        count == self.n
    }

    /// Invariants of a single element; errors when `g` is not a member.
    pub fn element_data(&self, g: &Perm) -> Result<ElementData> {
        if !self.contains(g) {
            return Err(Error::Membership(format!(
                "({}) is not in the group",
                g.cycle_notation()
            )));
        }
        let order = g.order();
        let orbit_count_points = g.orbit_count();
        Ok(ElementData {
            order,
            orbit_count_points,
            ind: self.n - orbit_count_points,
            regular_orbit_count: self.order() / order,
        })
    }

    /// Conjugacy classes in canonical order: by `ind`, then element order,
    /// then cycle type (descending-lex), then least member.
    pub fn conjugacy_classes(&self) -> Vec<ConjClass> {
        let index: HashMap<&Perm, usize> = self.elements.iter().zip(0..).collect();
        let mut assigned = vec![false; self.elements.len()];
        let mut classes = Vec::new();
        for start in 0..self.elements.len() {
            if assigned[start] {
                continue;
            }
            let mut members: HashSet<usize> = HashSet::new();
            for h in &self.elements {
                let c = self.elements[start].conjugate_by(h);
                members.insert(index[&c]);
            }
            let mut members: Vec<Perm> =
                members.into_iter().map(|i| self.elements[i].clone()).collect();
            members.sort();
            for m in &members {
                assigned[index[m]] = true;
            }
            // Representative on the smallest moved-point support, matching
            // the usual (12), (123), (12)(34) label convention.
            let representative = members
                .iter()
                .min_by_key(|m| (m.moved_points(), m.images().to_vec()))
                .unwrap()
                .clone();
            let cycle_type = representative.cycle_type();
            classes.push(ConjClass {
                representative,
                members,
                cycle_type,
            });
        }
        classes.sort_by(|a, b| {
            let ka = (a.representative.ind(), a.representative.order());
            let kb = (b.representative.ind(), b.representative.order());
            ka.cmp(&kb)
                .then_with(|| a.cycle_type.cmp(&b.cycle_type))
                .then_with(|| a.representative.cmp(&b.representative))
        });
        classes
    }

    /// `a(G) = 1 / min{ind(g) : g != 1}`, exact; the trivial group maps to 0.
    pub fn malle_exponent(&self) -> Rational64 {
        let min_ind = self
            .elements
            .iter()
            .filter(|g| !g.is_identity())
            .map(|g| g.ind())
            .min();
        match min_ind {
            Some(m) => Rational64::new(1, m as i64),
            None => Rational64::new(0, 1),
        }
    }

    /// All normal subgroups (as closed, sorted element lists), including the
    /// trivial subgroup and the whole group. Found by saturating joins of
    /// conjugacy classes.
    pub fn normal_subgroups(&self) -> Vec<Vec<Perm>> {
        let classes = self.conjugacy_classes();
        let mut found: Vec<Vec<Perm>> = vec![vec![Perm::identity(self.n)]];
        let mut worklist: Vec<Vec<Perm>> = found.clone();
        while let Some(current) = worklist.pop() {
            for class in &classes {
                if current.binary_search(&class.representative).is_ok() {
                    continue;
                }
                let mut gens: Vec<Perm> = current.clone();
                gens.push(class.representative.clone());
                let closed = self.normal_closure(&gens);
                if !found.contains(&closed) {
                    found.push(closed.clone());
                    worklist.push(closed);
                }
            }
        }
        found.sort_by_key(|h| (h.len(), h.clone()));
        found
    }

    /// Smallest normal subgroup containing `seed`.
    fn normal_closure(&self, seed: &[Perm]) -> Vec<Perm> {
        let mut gens: Vec<Perm> = seed.to_vec();
        loop {
            let mut grew = false;
            let closed: HashSet<Perm> = close_set(self.n, &gens);
            for g in &gens.clone() {
                for h in &self.generators {
                    let c = g.conjugate_by(h);
                    if !closed.contains(&c) {
                        gens.push(c);
                        grew = true;
                    }
                }
            }
            if !grew {
                let mut v: Vec<Perm> = closed.into_iter().collect();
                v.sort();
                return v;
            }
        }
    }

    /// Checks that a sorted element list is a normal subgroup.
    pub fn is_normal_subgroup(&self, h: &[Perm]) -> bool {
        if h.is_empty() || h.binary_search(&Perm::identity(self.n)).is_err() {
            return false;
        }
        for a in h {
            if !self.contains(a) {
                return false;
            }
            for b in h {
                if h.binary_search(&a.compose(b)).is_err() {
                    return false;
                }
            }
        }
        for g in &self.generators {
            for a in h {
                if h.binary_search(&a.conjugate_by(g)).is_err() {
                    return false;
                }
            }
        }
        true
    }

    /// Order of the coset `gH` in `G/H`: least `m >= 1` with `g^m` in `H`.
    pub fn quotient_order(&self, h: &[Perm], g: &Perm) -> Result<usize> {
        if !self.is_normal_subgroup(h) {
            return Err(Error::Validation("subgroup is not normal".into()));
        }
        if !self.contains(g) {
            return Err(Error::Membership(format!(
                "({}) is not in the group",
                g.cycle_notation()
            )));
        }
        Ok(self.coset_order_unchecked(h, g))
    }

    /// [`Self::quotient_order`] without the normality re-check; `h` must be a
    /// sorted normal subgroup already verified by the caller.
    pub fn coset_order_unchecked(&self, h: &[Perm], g: &Perm) -> usize {
        let mut power = g.clone();
        for m in 1..=self.order() {
            if h.binary_search(&power).is_ok() {
                return m;
            }
            power = power.compose(g);
        }
        unreachable!("element order divides |G|");
    }

    /// True iff the closure of `subset` is the whole group.
    pub fn generates(&self, subset: &[Perm]) -> bool {
        for s in subset {
            if !self.contains(s) {
                return false;
            }
        }
        close_set(self.n, subset).len() == self.order()
    }

    /// The two-sided bracket `|G|/n <= (|G| - |G|/ord(g))/ind(g) <= |G|/2`,
    /// checked exactly for a nontrivial element.
    pub fn ratio_bracket_holds(&self, g: &Perm) -> bool {
        if g.is_identity() {
            return true;
        }
        let order = self.order() as i64;
        let n = self.n as i64;
        let ind = g.ind() as i64;
        let ratio = Rational64::new(order - order / g.order() as i64, ind);
        Rational64::new(order, n) <= ratio && ratio <= Rational64::new(order, 2)
    }
}

fn close_set(n: usize, gens: &[Perm]) -> HashSet<Perm> {
    let mut set: HashSet<Perm> = HashSet::new();
    set.insert(Perm::identity(n));
    let mut queue: VecDeque<Perm> = VecDeque::new();
    for g in gens {
        if set.insert(g.clone()) {
            queue.push_back(g.clone());
        }
    }
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = x.compose(g);
            if set.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    set
}

fn close_under_products(n: usize, gens: &[Perm], cap: usize) -> Result<Vec<Perm>> {
    let mut set: HashSet<Perm> = HashSet::new();
    set.insert(Perm::identity(n));
    let mut queue: VecDeque<Perm> = VecDeque::new();
    for g in gens {
        if set.insert(g.clone()) {
            queue.push_back(g.clone());
        }
    }
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = x.compose(g);
            if !set.contains(&y) {
                if set.len() >= cap {
                    return Err(Error::CapExceeded(format!(
                        "group closure exceeds {cap} elements"
                    )));
                }
                set.insert(y.clone());
                queue.push_back(y);
            }
        }
    }
    let mut elements: Vec<Perm> = set.into_iter().collect();
    elements.sort();
    Ok(elements)
}

/// `S_n` generated by a transposition and an `n`-cycle.
pub fn symmetric(n: usize) -> Result<PermGroup> {
    if n == 0 {
        return Err(Error::Validation("n must be >= 1".into()));
    }
    let gens = if n == 1 {
        vec![Perm::identity(1)]
    } else {
        vec![
            Perm::from_cycles(n, &[&[0, 1]])?,
            Perm::from_cycles(n, &[&(0..n).collect::<Vec<_>>()])?,
        ]
    };
    Ok(PermGroup::build(n, gens)?.with_name(&format!("S{n}")))
}

/// `A_n` generated by 3-cycles.
pub fn alternating(n: usize) -> Result<PermGroup> {
    if n < 3 {
        return Err(Error::Validation("alternating preset needs n >= 3".into()));
    }
    let mut gens = vec![Perm::from_cycles(n, &[&[0, 1, 2]])?];
    if n > 3 {
        if n % 2 == 1 {
            gens.push(Perm::from_cycles(n, &[&(0..n).collect::<Vec<_>>()])?);
        } else {
            gens.push(Perm::from_cycles(n, &[&(1..n).collect::<Vec<_>>()])?);
        }
    }
    Ok(PermGroup::build(n, gens)?.with_name(&format!("A{n}")))
}

/// `C_n` in its regular representation on `n` points.
pub fn cyclic(n: usize) -> Result<PermGroup> {
    if n == 0 {
        return Err(Error::Validation("n must be >= 1".into()));
    }
    let gens = vec![Perm::from_cycles(n, &[&(0..n).collect::<Vec<_>>()])?];
    Ok(PermGroup::build(n, gens)?.with_name(&format!("C{n}")))
}

/// `D_n` of order `2n` acting on the `n` vertices of a regular `n`-gon;
/// the generating reflection fixes vertex 0.
pub fn dihedral(n: usize) -> Result<PermGroup> {
    if n < 3 {
        return Err(Error::Validation("dihedral preset needs n >= 3".into()));
    }
    let rotation = Perm::new((0..n).map(|i| (i + 1) % n).collect())?;
    let reflection = Perm::new((0..n).map(|i| (n - i) % n).collect())?;
    Ok(PermGroup::build(n, vec![rotation, reflection])?.with_name(&format!("D{n}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builds_s3_from_generators() {
        let g = PermGroup::build(
            3,
            vec![
                Perm::from_cycles(3, &[&[0, 1]]).unwrap(),
                Perm::from_cycles(3, &[&[0, 1, 2]]).unwrap(),
            ],
        )
        .unwrap();
        assert_eq!(g.order(), 6);
    }

    #[test]
    fn a4_closure_has_12_elements() {
        let g = PermGroup::build(
            4,
            vec![
                Perm::from_cycles(4, &[&[0, 1, 2]]).unwrap(),
                Perm::from_cycles(4, &[&[1, 2, 3]]).unwrap(),
            ],
        )
        .unwrap();
        assert_eq!(g.order(), 12);
    }

    #[test]
    fn d5_closure_has_10_elements() {
        let g = PermGroup::build(
            5,
            vec![
                Perm::from_cycles(5, &[&[0, 1, 2, 3, 4]]).unwrap(),
                Perm::new(vec![0, 4, 3, 2, 1]).unwrap(),
            ],
        )
        .unwrap();
        assert_eq!(g.order(), 10);
    }

    #[test]
    fn rejects_non_bijective_generator() {
        assert!(Perm::new(vec![0, 0, 1]).is_err());
    }

    #[test]
    fn preset_orders() {
        assert_eq!(symmetric(5).unwrap().order(), 120);
        assert_eq!(alternating(5).unwrap().order(), 60);
        assert_eq!(alternating(6).unwrap().order(), 360);
        assert_eq!(cyclic(12).unwrap().order(), 12);
        assert_eq!(dihedral(7).unwrap().order(), 14);
        for n in 3..=7 {
            assert!(dihedral(n).unwrap().is_transitive());
        }
    }

    #[test]
    fn s3_class_sizes() {
        let classes = symmetric(3).unwrap().conjugacy_classes();
        let sizes: Vec<usize> = classes.iter().map(|c| c.size()).collect();
        assert_eq!(sizes, vec![1, 3, 2]);
    }

    #[test]
    fn a4_three_cycle_classes_split() {
        let classes = alternating(4).unwrap().conjugacy_classes();
        let mut sizes: Vec<usize> = classes.iter().map(|c| c.size()).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 3, 4, 4]);
    }

    #[test]
    fn trivial_group_single_class() {
        let g = PermGroup::build(1, vec![]).unwrap();
        assert_eq!(g.conjugacy_classes().len(), 1);
        assert_eq!(g.malle_exponent(), Rational64::new(0, 1));
    }

    #[test]
    fn element_data_examples() {
        let s4 = symmetric(4).unwrap();
        let t = Perm::from_cycles(4, &[&[0, 1]]).unwrap();
        let data = s4.element_data(&t).unwrap();
        assert_eq!(data.ind, 1);
        assert_eq!(data.order, 2);

        let d5 = dihedral(5).unwrap();
        let refl = Perm::new(vec![0, 4, 3, 2, 1]).unwrap();
        let data = d5.element_data(&refl).unwrap();
        assert_eq!(data.ind, 2); // (p-1)/2 with p=5
        assert_eq!(data.order, 2);

        let id = Perm::identity(5);
        let data = d5.element_data(&id).unwrap();
        assert_eq!(data.ind, 0);
        assert_eq!(data.order, 1);
        assert_eq!(data.regular_orbit_count, 10);
    }

    #[test]
    fn element_data_rejects_non_member() {
        let a4 = alternating(4).unwrap();
        let t = Perm::from_cycles(4, &[&[0, 1]]).unwrap();
        assert!(a4.element_data(&t).is_err());
    }

    #[test]
    fn malle_exponents() {
        assert_eq!(symmetric(6).unwrap().malle_exponent(), Rational64::new(1, 1));
        assert_eq!(dihedral(5).unwrap().malle_exponent(), Rational64::new(2, 4));
        assert_eq!(dihedral(7).unwrap().malle_exponent(), Rational64::new(2, 6));
        assert_eq!(cyclic(5).unwrap().malle_exponent(), Rational64::new(1, 4));
        assert_eq!(cyclic(7).unwrap().malle_exponent(), Rational64::new(1, 6));
    }

    #[test]
    fn s4_normal_subgroups() {
        let s4 = symmetric(4).unwrap();
        let normals = s4.normal_subgroups();
        let orders: Vec<usize> = normals.iter().map(|h| h.len()).collect();
        assert_eq!(orders, vec![1, 4, 12, 24]);
    }

    #[test]
    fn a5_is_simple() {
        let a5 = alternating(5).unwrap();
        let orders: Vec<usize> = a5.normal_subgroups().iter().map(|h| h.len()).collect();
        assert_eq!(orders, vec![1, 60]);
    }

    #[test]
    fn c6_subgroup_lattice() {
        let c6 = cyclic(6).unwrap();
        let orders: Vec<usize> = c6.normal_subgroups().iter().map(|h| h.len()).collect();
        assert_eq!(orders, vec![1, 2, 3, 6]);
    }

    #[test]
    fn quotient_orders() {
        let s4 = symmetric(4).unwrap();
        let a4: Vec<Perm> = s4
            .elements()
            .iter()
            .filter(|g| g.cycle_type().iter().filter(|&&l| l % 2 == 0).count() % 2 == 0)
            .cloned()
            .collect();
        let t = Perm::from_cycles(4, &[&[0, 1]]).unwrap();
        assert_eq!(s4.quotient_order(&a4, &t).unwrap(), 2);
        let in_a4 = Perm::from_cycles(4, &[&[0, 1, 2]]).unwrap();
        assert_eq!(s4.quotient_order(&a4, &in_a4).unwrap(), 1);

        let a4g = alternating(4).unwrap();
        let k4: Vec<Perm> = a4g
            .elements()
            .iter()
            .filter(|g| g.order() <= 2)
            .cloned()
            .collect();
        assert_eq!(k4.len(), 4);
        let three = Perm::from_cycles(4, &[&[0, 1, 2]]).unwrap();
        assert_eq!(a4g.quotient_order(&k4, &three).unwrap(), 3);
    }

    #[test]
    fn quotient_order_rejects_non_normal() {
        let s4 = symmetric(4).unwrap();
        // <(01)> is not normal in S4.
        let h = vec![Perm::identity(4), Perm::from_cycles(4, &[&[0, 1]]).unwrap()];
        assert!(s4.quotient_order(&h, &Perm::identity(4)).is_err());
    }

    #[test]
    fn generates_examples() {
        let s4 = symmetric(4).unwrap();
        let transpositions = s4
            .conjugacy_classes()
            .into_iter()
            .find(|c| c.cycle_type == vec![2, 1, 1])
            .unwrap();
        assert!(s4.generates(&transpositions.members));
        assert!(s4.generates(s4.elements()));

        let d4 = dihedral(4).unwrap();
        // A single vertex-reflection class generates a proper subgroup.
        let refl_class = d4
            .conjugacy_classes()
            .into_iter()
            .find(|c| c.representative.ind() == 1)
            .unwrap();
        assert!(!d4.generates(&refl_class.members));
    }

    #[test]
    fn class_equation_and_shared_data() {
        for g in [symmetric(4).unwrap(), alternating(4).unwrap(), dihedral(6).unwrap()] {
            let classes = g.conjugacy_classes();
            let total: usize = classes.iter().map(|c| c.size()).sum();
            assert_eq!(total, g.order());
            for c in &classes {
                assert_eq!(g.order() % c.size(), 0);
                let rep = g.element_data(&c.representative).unwrap();
                for m in &c.members {
                    assert_eq!(g.element_data(m).unwrap(), rep);
                    assert_eq!(m.cycle_type(), c.cycle_type);
                }
            }
        }
    }

    #[test]
    fn bracket_holds_on_presets() {
        for g in [symmetric(5).unwrap(), dihedral(7).unwrap(), cyclic(9).unwrap()] {
            for e in g.elements() {
                assert!(g.ratio_bracket_holds(e), "bracket fails for {e:?}");
            }
        }
    }

    #[test]
    fn closure_cap_is_enforced() {
        // S9 has 362880 elements, beyond the cap.
        let r = PermGroup::build(
            9,
            vec![
                Perm::from_cycles(9, &[&[0, 1]]).unwrap(),
                Perm::from_cycles(9, &[&(0..9).collect::<Vec<_>>()]).unwrap(),
            ],
        );
        assert!(matches!(r, Err(Error::CapExceeded(_))));
    }
}
