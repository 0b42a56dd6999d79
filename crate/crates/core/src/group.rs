//! Finite groups as dense Cayley tables.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// Default bound on the order of a permutation-group closure.
pub const DEFAULT_CLOSURE_CAP: usize = 20_000;

/// An element of a [`FiniteGroup`], identified by its index in the Cayley table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Element(pub usize);

impl Element {
    #[inline]
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroupError {
    #[error("group table is empty")]
    Empty,
    #[error("row {row} has length {len}, expected {expected}")]
    NotSquare { row: usize, len: usize, expected: usize },
    #[error("entry mul({a}, {b}) = {value} is out of range")]
    EntryOutOfRange { a: usize, b: usize, value: usize },
    #[error("{line} {index} repeats the value {value}")]
    NotLatinSquare { line: &'static str, index: usize, value: usize },
    #[error("no two-sided identity element")]
    NoIdentity,
    #[error("element {0} has no two-sided inverse")]
    NoInverse(usize),
    #[error("mul({a}, mul({b}, {c})) != mul(mul({a}, {b}), {c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("generator {index} is not a permutation of 0..{degree}")]
    NotPermutation { index: usize, degree: usize },
    #[error("closure exceeds the cap of {cap} elements")]
    ClosureTooLarge { cap: usize },
    #[error("unrecognized group specifier `{0}`")]
    UnknownSpecifier(String),
}

/// Specifiers of the default test corpus: every builtin family member of
/// order at most 16 used by the invariant suite.
pub const DEFAULT_CORPUS: &[&str] = &[
    "cyclic:1",
    "cyclic:2",
    "cyclic:3",
    "cyclic:4",
    "cyclic:6",
    "cyclic:8",
    "product:cyclic:2,cyclic:2",
    "product:cyclic:2,cyclic:4",
    "product:cyclic:3,cyclic:3",
    "product:cyclic:2,cyclic:2,cyclic:2",
    "product:cyclic:4,cyclic:4",
    "product:cyclic:2,cyclic:2,cyclic:2,cyclic:2",
    "dihedral:3",
    "dihedral:4",
    "dihedral:5",
    "dihedral:6",
    "dihedral:8",
    "alternating:4",
    "product:cyclic:2,dihedral:4",
    "product:cyclic:2,symmetric:3",
];

/// The groups of [`DEFAULT_CORPUS`].
pub fn default_corpus() -> Vec<FiniteGroup> {
    DEFAULT_CORPUS.iter().map(|s| FiniteGroup::from_specifier(s).expect("builtin specifier")).collect()
}

/// A conjugacy class together with its canonical (minimal-index) representative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjugacyClass {
    pub representative: Element,
    /// Sorted ascending; `members[0] == representative`.
    pub members: Vec<Element>,
}

impl ConjugacyClass {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, g: Element) -> bool {
        self.members.binary_search(&g).is_ok()
    }
}

/// A subgroup, stored as the sorted list of its members.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgroup {
    pub members: Vec<Element>,
}

impl Subgroup {
    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, g: Element) -> bool {
        self.members.binary_search(&g).is_ok()
    }

    /// Position of `g` in `members`.
    pub fn position(&self, g: Element) -> Option<usize> {
        self.members.binary_search(&g).ok()
    }
}

/// A finite group with a validated multiplication table.
///
/// Values are immutable after construction. Conjugacy classes and inverses are
/// computed once at construction time.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    label: String,
    order: usize,
    mul: Vec<u32>,
    inv: Vec<u32>,
    identity: usize,
    classes: Vec<ConjugacyClass>,
    class_of: Vec<u32>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("label", &self.label)
            .field("order", &self.order)
            .field("classes", &self.classes.len())
            .finish()
    }
}

impl FiniteGroup {
    /// Builds a group from a full Cayley table, validating every group axiom.
    pub fn from_cayley_table(table: &[Vec<usize>], label: impl Into<String>) -> Result<Self, GroupError> {
        let n = table.len();
        if n == 0 {
            return Err(GroupError::Empty);
        }
        for (row, r) in table.iter().enumerate() {
            if r.len() != n {
                return Err(GroupError::NotSquare { row, len: r.len(), expected: n });
            }
            for (b, &value) in r.iter().enumerate() {
                if value >= n {
                    return Err(GroupError::EntryOutOfRange { a: row, b, value });
                }
            }
        }
        let mut seen = vec![usize::MAX; n];
        for (a, r) in table.iter().enumerate() {
            for &v in r {
                if seen[v] == a {
                    return Err(GroupError::NotLatinSquare { line: "row", index: a, value: v });
                }
                seen[v] = a;
            }
        }
        seen.iter_mut().for_each(|s| *s = usize::MAX);
        for b in 0..n {
            for a in 0..n {
                let v = table[a][b];
                if seen[v] == b {
                    return Err(GroupError::NotLatinSquare { line: "column", index: b, value: v });
                }
                seen[v] = b;
            }
        }
        let identity =
            (0..n).find(|&e| (0..n).all(|g| table[e][g] == g && table[g][e] == g)).ok_or(GroupError::NoIdentity)?;
        for g in 0..n {
            let right = (0..n).find(|&h| table[g][h] == identity);
            match right {
                Some(h) if table[h][g] == identity => {}
                _ => return Err(GroupError::NoInverse(g)),
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = table[a][b];
                for c in 0..n {
                    if table[a][table[b][c]] != table[ab][c] {
                        return Err(GroupError::NotAssociative { a, b, c });
                    }
                }
            }
        }
        let flat = table.iter().flat_map(|r| r.iter().map(|&v| v as u32)).collect();
        Ok(Self::from_trusted_table(flat, n, label.into()))
    }

    /// Builds a group from a table already known to satisfy the axioms.
    pub(crate) fn from_trusted_table(mul: Vec<u32>, order: usize, label: String) -> Self {
        debug_assert_eq!(mul.len(), order * order);
        let identity = (0..order)
            .find(|&e| (0..order).all(|g| mul[e * order + g] as usize == g))
            .expect("trusted table has an identity");
        let mut inv = vec![0u32; order];
        for g in 0..order {
            let h = (0..order).find(|&h| mul[g * order + h] as usize == identity).unwrap();
            inv[g] = h as u32;
        }
        let mut group =
            FiniteGroup { label, order, mul, inv, identity, classes: Vec::new(), class_of: vec![u32::MAX; order] };
        group.compute_classes();
        group
    }

    fn compute_classes(&mut self) {
        let n = self.order;
        let mut classes = Vec::new();
        for x in 0..n {
            if self.class_of[x] != u32::MAX {
                continue;
            }
            let idx = classes.len() as u32;
            let mut members: Vec<Element> = Vec::new();
            for h in 0..n {
                let y = self.conj(Element(h), Element(x));
                if self.class_of[y.0] == u32::MAX {
                    self.class_of[y.0] = idx;
                    members.push(y);
                }
            }
            members.sort();
            classes.push(ConjugacyClass { representative: members[0], members });
        }
        self.classes = classes;
    }

    /// Closure of a set of permutations of `0..degree` under composition.
    ///
    /// Elements are numbered breadth-first from the identity, multiplying on the
    /// right by the generators in input order. The product `a * b` is the
    /// composition `a ∘ b` (apply `b` first).
    pub fn from_permutation_generators(
        degree: usize,
        generators: &[Vec<usize>],
        label: impl Into<String>,
        cap: usize,
    ) -> Result<Self, GroupError> {
        for (index, p) in generators.iter().enumerate() {
            let mut hit = vec![false; degree];
            if p.len() != degree {
                return Err(GroupError::NotPermutation { index, degree });
            }
            for &v in p {
                if v >= degree || hit[v] {
                    return Err(GroupError::NotPermutation { index, degree });
                }
                hit[v] = true;
            }
        }
        let identity: Vec<usize> = (0..degree).collect();
        let mut index: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        let mut elements: Vec<Vec<usize>> = vec![identity.clone()];
        // parent[b] = (p, s) with b = p * gen[s]
        let mut parent: Vec<(usize, usize)> = vec![(0, usize::MAX)];
        index.insert(identity, 0);
        let mut right: Vec<Vec<usize>> = Vec::new();
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            let mut row = Vec::with_capacity(generators.len());
            for (s, gen) in generators.iter().enumerate() {
                let y: Vec<usize> = gen.iter().map(|&i| elements[x][i]).collect();
                let yi = match index.get(&y) {
                    Some(&i) => i,
                    None => {
                        let i = elements.len();
                        if i >= cap {
                            return Err(GroupError::ClosureTooLarge { cap });
                        }
                        index.insert(y.clone(), i);
                        elements.push(y);
                        parent.push((x, s));
                        queue.push_back(i);
                        i
                    }
                };
                row.push(yi);
            }
            right.push(row);
        }
        let n = elements.len();
        let mut mul = vec![0u32; n * n];
        for a in 0..n {
            mul[a * n] = a as u32;
            for b in 1..n {
                let (p, s) = parent[b];
                let ap = mul[a * n + p] as usize;
                mul[a * n + b] = right[ap][s] as u32;
            }
        }
        Ok(Self::from_trusted_table(mul, n, label.into()))
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    /// `Z/n` with element `k` the residue `k`.
    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1, "cyclic group needs n >= 1");
        let mul = (0..n * n).map(|i| ((i / n + i % n) % n) as u32).collect();
        Self::from_trusted_table(mul, n, format!("cyclic:{n}"))
    }

    /// Dihedral group of order `2n`; element `j*n + i` is `r^i s^j`.
    pub fn dihedral(n: usize) -> Self {
        assert!(n >= 1, "dihedral group needs n >= 1");
        let order = 2 * n;
        let mut mul = vec![0u32; order * order];
        for a in 0..order {
            let (i1, j1) = (a % n, a / n);
            for b in 0..order {
                let (i2, j2) = (b % n, b / n);
                let i = if j1 == 0 { (i1 + i2) % n } else { (i1 + n - i2) % n };
                let j = j1 ^ j2;
                mul[a * order + b] = (j * n + i) as u32;
            }
        }
        Self::from_trusted_table(mul, order, format!("dihedral:{n}"))
    }

    /// Symmetric group on `n` points, generated by the `n`-cycle and `(0 1)`.
    pub fn symmetric(n: usize) -> Self {
        let mut gens = Vec::new();
        if n >= 2 {
            gens.push((0..n).map(|i| (i + 1) % n).collect::<Vec<_>>());
            let mut t: Vec<usize> = (0..n).collect();
            t.swap(0, 1);
            gens.push(t);
        }
        Self::from_permutation_generators(n, &gens, format!("symmetric:{n}"), usize::MAX)
            .expect("standard generators are permutations")
    }

    /// Alternating group on `n` points, generated by the 3-cycles `(0 1 k)`.
    pub fn alternating(n: usize) -> Self {
        let gens: Vec<Vec<usize>> = (2..n)
            .map(|k| {
                let mut p: Vec<usize> = (0..n).collect();
                p[0] = 1;
                p[1] = k;
                p[k] = 0;
                p
            })
            .collect();
        Self::from_permutation_generators(n, &gens, format!("alternating:{n}"), usize::MAX)
            .expect("standard generators are permutations")
    }

    /// `G × H`, with `(g, h)` at index `g * |H| + h`.
    pub fn direct_product(&self, other: &FiniteGroup) -> FiniteGroup {
        let (n, m) = (self.order, other.order);
        let order = n * m;
        let mut mul = vec![0u32; order * order];
        for a in 0..order {
            for b in 0..order {
                let g = self.mul(Element(a / m), Element(b / m)).0;
                let h = other.mul(Element(a % m), Element(b % m)).0;
                mul[a * order + b] = (g * m + h) as u32;
            }
        }
        Self::from_trusted_table(mul, order, format!("product:{},{}", self.label, other.label))
    }

    /// Parses `cyclic:n`, `dihedral:n`, `symmetric:n`, `alternating:n`,
    /// `trivial` and `product:A,B[,C…]` (factors are non-product specifiers).
    pub fn from_specifier(spec: &str) -> Result<Self, GroupError> {
        let unknown = || GroupError::UnknownSpecifier(spec.into());
        let spec = spec.trim();
        if spec == "trivial" {
            return Ok(Self::trivial());
        }
        if let Some(rest) = spec.strip_prefix("product:") {
            let factors: Vec<&str> = rest.split(',').map(str::trim).collect();
            if factors.len() < 2 || factors.iter().any(|f| f.starts_with("product:")) {
                return Err(unknown());
            }
            let mut group = Self::from_specifier(factors[0])?;
            for f in &factors[1..] {
                group = group.direct_product(&Self::from_specifier(f)?);
            }
            return Ok(group.with_label(format!("product:{}", factors.join(","))));
        }
        let (name, n) = spec.split_once(':').ok_or_else(unknown)?;
        let n: usize = n.trim().parse().map_err(|_| unknown())?;
        let (order, build): (Option<usize>, fn(usize) -> Self) = match name.trim() {
            "cyclic" => (Some(n), Self::cyclic),
            "dihedral" => (n.checked_mul(2), Self::dihedral),
            "symmetric" => ((1..=n).try_fold(1usize, |a, k| a.checked_mul(k)), Self::symmetric),
            "alternating" => ((3..=n).try_fold(1usize, |a, k| a.checked_mul(k)), Self::alternating),
            _ => return Err(unknown()),
        };
        match order {
            _ if n == 0 => Err(unknown()),
            Some(o) if o <= DEFAULT_CLOSURE_CAP => Ok(build(n)),
            _ => Err(GroupError::ClosureTooLarge { cap: DEFAULT_CLOSURE_CAP }),
        }
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> Element {
        Element(self.identity)
    }

    pub fn elements(&self) -> impl Iterator<Item = Element> + '_ {
        (0..self.order).map(Element)
    }

    /// Checked element constructor.
    pub fn element(&self, index: usize) -> Option<Element> {
        (index < self.order).then_some(Element(index))
    }

    #[inline]
    pub fn mul(&self, a: Element, b: Element) -> Element {
        Element(self.mul[a.0 * self.order + b.0] as usize)
    }

    #[inline]
    pub fn inv(&self, a: Element) -> Element {
        Element(self.inv[a.0] as usize)
    }

    /// `h x h⁻¹`.
    #[inline]
    pub fn conj(&self, h: Element, x: Element) -> Element {
        self.mul(self.mul(h, x), self.inv(h))
    }

    /// `a b a⁻¹ b⁻¹`.
    pub fn commutator(&self, a: Element, b: Element) -> Element {
        self.mul(self.mul(a, b), self.mul(self.inv(a), self.inv(b)))
    }

    /// Product of a sequence of elements, left to right.
    pub fn product<I: IntoIterator<Item = Element>>(&self, elems: I) -> Element {
        elems.into_iter().fold(self.identity(), |acc, x| self.mul(acc, x))
    }

    pub fn pow(&self, g: Element, k: i64) -> Element {
        let base = if k < 0 { self.inv(g) } else { g };
        let mut acc = self.identity();
        for _ in 0..k.unsigned_abs() {
            acc = self.mul(acc, base);
        }
        acc
    }

    pub fn element_order(&self, g: Element) -> usize {
        let mut x = g;
        let mut k = 1;
        while x != self.identity() {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    /// `[1, g, g², …, g^(m-1)]` where `m` is the order of `g`.
    pub fn powers(&self, g: Element) -> Vec<Element> {
        let mut out = vec![self.identity()];
        let mut x = g;
        while x != self.identity() {
            out.push(x);
            x = self.mul(x, g);
        }
        out
    }

    pub fn cyclic_subgroup(&self, g: Element) -> Subgroup {
        let mut members = self.powers(g);
        members.sort();
        Subgroup { members }
    }

    pub fn centralizer(&self, g: Element) -> Subgroup {
        Subgroup { members: self.elements().filter(|&h| self.mul(h, g) == self.mul(g, h)).collect() }
    }

    /// Elements commuting with every entry of `tuple`.
    pub fn joint_centralizer(&self, tuple: &[Element]) -> Subgroup {
        Subgroup {
            members: self.elements().filter(|&h| tuple.iter().all(|&g| self.mul(h, g) == self.mul(g, h))).collect(),
        }
    }

    pub fn is_abelian(&self) -> bool {
        self.classes.len() == self.order
    }

    pub fn exponent(&self) -> usize {
        self.elements().map(|g| self.element_order(g)).fold(1, num_integer::lcm)
    }

    /// Conjugacy classes ordered by canonical representative.
    pub fn conjugacy_classes(&self) -> &[ConjugacyClass] {
        &self.classes
    }

    /// Index into [`conjugacy_classes`](Self::conjugacy_classes) of the class of `g`.
    #[inline]
    pub fn class_index(&self, g: Element) -> usize {
        self.class_of[g.0] as usize
    }

    pub fn class_of(&self, g: Element) -> &ConjugacyClass {
        &self.classes[self.class_index(g)]
    }

    /// Index of the class of `g⁻¹` given the class index of `g`.
    pub fn inverse_class(&self, class: usize) -> usize {
        self.class_index(self.inv(self.classes[class].representative))
    }

    /// The minimal-index `h` with `h from h⁻¹ = to`, if any.
    pub fn conjugator(&self, from: Element, to: Element) -> Option<Element> {
        self.elements().find(|&h| self.conj(h, from) == to)
    }

    /// Sorted class sizes, used as a cheap isomorphism fingerprint.
    pub fn class_size_multiset(&self) -> Vec<usize> {
        let mut sizes: Vec<usize> = self.classes.iter().map(|c| c.len()).collect();
        sizes.sort();
        sizes
    }

    /// A small generating set, chosen greedily by element index.
    pub fn generating_set(&self) -> Vec<Element> {
        let mut gens = Vec::new();
        let mut span = vec![false; self.order];
        span[self.identity] = true;
        let mut members = vec![self.identity()];
        for g in self.elements() {
            if span[g.0] {
                continue;
            }
            gens.push(g);
            // re-close
            let mut frontier = members.clone();
            frontier.push(g);
            span[g.0] = true;
            members.push(g);
            while let Some(x) = frontier.pop() {
                for &s in &gens {
                    let y = self.mul(x, s);
                    if !span[y.0] {
                        span[y.0] = true;
                        members.push(y);
                        frontier.push(y);
                    }
                }
            }
        }
        gens
    }

    /// Left-regular representation: element `g` as the permutation `x ↦ g x`.
    pub fn left_regular_permutation(&self, g: Element) -> Vec<usize> {
        self.elements().map(|x| self.mul(g, x).0).collect()
    }

    /// The subgroup `H` as a group in its own right; element `i` of the result
    /// is `H.members[i]`.
    pub fn subgroup_as_group(&self, h: &Subgroup) -> FiniteGroup {
        let m = h.order();
        let mut mul = vec![0u32; m * m];
        for (i, &a) in h.members.iter().enumerate() {
            for (j, &b) in h.members.iter().enumerate() {
                let p = h.position(self.mul(a, b)).expect("subgroup is closed");
                mul[i * m + j] = p as u32;
            }
        }
        Self::from_trusted_table(mul, m, format!("sub({})", self.label))
    }

    /// True if `members` contains the identity and is closed under products
    /// and inverses.
    pub fn is_subgroup(&self, members: &[Element]) -> bool {
        let set: alloc::collections::BTreeSet<Element> = members.iter().copied().collect();
        set.contains(&self.identity())
            && set.iter().all(|&a| set.contains(&self.inv(a)) && set.iter().all(|&b| set.contains(&self.mul(a, b))))
    }

    /// The multiplication table as nested rows.
    pub fn table(&self) -> Vec<Vec<usize>> {
        (0..self.order).map(|a| (0..self.order).map(|b| self.mul[a * self.order + b] as usize).collect()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_table() {
        let g = FiniteGroup::from_cayley_table(&[vec![0]], "1").unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.conjugacy_classes().len(), 1);
    }

    #[test]
    fn z2_table() {
        let g = FiniteGroup::from_cayley_table(&[vec![0, 1], vec![1, 0]], "z2").unwrap();
        assert_eq!(g.order(), 2);
        assert_eq!(g.identity(), Element(0));
    }

    #[test]
    fn detects_non_associative_table() {
        // Latin square with identity 0 but not associative (order 5 loop).
        let t = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(matches!(FiniteGroup::from_cayley_table(&t, "loop"), Err(GroupError::NotAssociative { .. })));
    }

    #[test]
    fn detects_latin_and_identity_failures() {
        let t = vec![vec![0, 1], vec![1, 1]];
        assert!(matches!(FiniteGroup::from_cayley_table(&t, "x"), Err(GroupError::NotLatinSquare { .. })));
        let t = vec![vec![1, 0], vec![0, 1]];
        // rows and columns are permutations, identity is 1
        let g = FiniteGroup::from_cayley_table(&t, "x").unwrap();
        assert_eq!(g.identity(), Element(1));
        let t = vec![vec![1, 2, 0], vec![2, 0, 1], vec![0, 1, 2]];
        assert_eq!(FiniteGroup::from_cayley_table(&t, "x").unwrap().identity(), Element(2));
        let t = vec![vec![0, 2, 1], vec![1, 0, 2], vec![2, 1, 0]];
        assert_eq!(FiniteGroup::from_cayley_table(&t, "x"), Err(GroupError::NoIdentity));
        assert!(matches!(
            FiniteGroup::from_cayley_table(&[vec![0, 5], vec![1, 0]], "x"),
            Err(GroupError::EntryOutOfRange { a: 0, b: 1, value: 5 })
        ));
    }

    #[test]
    fn permutation_closures() {
        let g = FiniteGroup::from_permutation_generators(2, &[vec![1, 0]], "z2", DEFAULT_CLOSURE_CAP).unwrap();
        assert_eq!(g.order(), 2);
        let s3 =
            FiniteGroup::from_permutation_generators(3, &[vec![1, 2, 0], vec![1, 0, 2]], "s3", DEFAULT_CLOSURE_CAP)
                .unwrap();
        assert_eq!(s3.order(), 6);
        let t = FiniteGroup::from_permutation_generators(4, &[], "1", DEFAULT_CLOSURE_CAP).unwrap();
        assert_eq!(t.order(), 1);
        assert_eq!(
            FiniteGroup::from_permutation_generators(3, &[vec![0, 0, 1]], "bad", 10),
            Err(GroupError::NotPermutation { index: 0, degree: 3 })
        );
        assert_eq!(
            FiniteGroup::from_permutation_generators(3, &[vec![1, 2, 0], vec![1, 0, 2]], "s3", 4),
            Err(GroupError::ClosureTooLarge { cap: 4 })
        );
    }

    #[test]
    fn permutation_closure_table_is_a_group() {
        let s4 = FiniteGroup::symmetric(4);
        assert_eq!(s4.order(), 24);
        let again = FiniteGroup::from_cayley_table(&s4.table(), "s4").unwrap();
        assert_eq!(again.class_size_multiset(), vec![1, 3, 6, 6, 8]);
        assert_eq!(FiniteGroup::alternating(4).class_size_multiset(), vec![1, 3, 4, 4]);
    }

    #[test]
    fn classes_of_small_groups() {
        let v4 = FiniteGroup::cyclic(2).direct_product(&FiniteGroup::cyclic(2));
        assert_eq!(v4.conjugacy_classes().len(), 4);
        assert!(v4.conjugacy_classes().iter().all(|c| c.len() == 1));
        assert_eq!(v4.exponent(), 2);
        let s3 = FiniteGroup::dihedral(3);
        assert_eq!(s3.class_size_multiset(), vec![1, 2, 3]);
        assert_eq!(FiniteGroup::trivial().conjugacy_classes().len(), 1);
        for c in s3.conjugacy_classes() {
            assert_eq!(c.representative, *c.members.iter().min().unwrap());
        }
    }

    #[test]
    fn centralizers() {
        let s3 = FiniteGroup::dihedral(3);
        // element 3 = s is a reflection
        let s = Element(3);
        assert_eq!(s3.element_order(s), 2);
        assert_eq!(s3.centralizer(s).order(), 2);
        assert_eq!(s3.centralizer(s3.identity()).order(), 6);
        let z6 = FiniteGroup::cyclic(6);
        assert!(z6.elements().all(|g| z6.centralizer(g).order() == 6));
        for g in s3.elements() {
            let c = s3.centralizer(g);
            assert!(s3.cyclic_subgroup(g).members.iter().all(|&x| c.contains(x)));
            assert!(s3.is_subgroup(&c.members));
        }
    }

    #[test]
    fn small_operations() {
        let d4 = FiniteGroup::dihedral(4);
        assert_eq!(d4.element_order(d4.identity()), 1);
        let r = Element(1);
        assert_eq!(d4.commutator(r, d4.pow(r, 2)), d4.identity());
        assert_ne!(d4.commutator(r, Element(4)), d4.identity());
        assert_eq!(d4.pow(r, -1), d4.inv(r));
        assert_eq!(d4.powers(r).len(), 4);
    }

    #[test]
    fn specifiers() {
        let orders: Vec<usize> = default_corpus().iter().map(|g| g.order()).collect();
        assert!(orders.iter().all(|&n| n <= 16));
        let g = FiniteGroup::from_specifier("product:cyclic:2,cyclic:2,cyclic:2").unwrap();
        assert_eq!((g.order(), g.exponent(), g.label()), (8, 2, "product:cyclic:2,cyclic:2,cyclic:2"));
        assert_eq!(FiniteGroup::from_specifier("symmetric:4").unwrap().order(), 24);
        assert!(matches!(FiniteGroup::from_specifier("cyclic:x"), Err(GroupError::UnknownSpecifier(_))));
        assert!(matches!(FiniteGroup::from_specifier("cyclic:0"), Err(GroupError::UnknownSpecifier(_))));
        assert!(matches!(FiniteGroup::from_specifier("symmetric:9"), Err(GroupError::ClosureTooLarge { .. })));
    }
}
