//! Inertia and multisectors of global quotients `[Y/G]`.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::arith::Rational;
use crate::group::{ConjugacyClass, Element, FiniteGroup, Subgroup};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SectorError {
    #[error("index {index} is outside 1..={k}")]
    IndexOutOfRange { index: usize, k: usize },
    #[error("{candidates} tuple candidates exceed the enumeration cap {cap}")]
    CapExceeded { candidates: u128, cap: u64 },
    #[error("weight {weight} is not a homomorphism at ({g}, {h})")]
    NotAHomomorphism { weight: usize, g: usize, h: usize },
    #[error("action table is not a group action at ({g}, {h}, point {point})")]
    NotAnAction { g: usize, h: usize, point: usize },
    #[error("row {row} of the action table is not a permutation")]
    NotAPermutation { row: usize },
    #[error("table has wrong shape: expected {expected} entries in {what}")]
    ShapeMismatch { what: &'static str, expected: usize },
    #[error("linear presentation of a nonabelian group needs an explicit age table")]
    NeedsAgeTable,
    #[error("age table is invalid at element {0}")]
    InvalidAge(usize),
    #[error("weight modulus must be positive")]
    ZeroModulus,
}

/// A global quotient `[Y/G]` described combinatorially.
#[derive(Debug, Clone)]
pub enum OrbifoldPresentation {
    /// `[pt/G]`.
    Point { group: FiniteGroup },
    /// `G` acting diagonally on `C^rank`: `g` scales coordinate `j` by
    /// `e^{2πi·weights[j][g]/weight_modulus}`. An explicit age table replaces
    /// the weight data when supplied.
    Linear { group: FiniteGroup, rank: usize, weights: Vec<Vec<u64>>, weight_modulus: u64, ages: Option<Vec<Rational>> },
    /// `G` acting on a finite set; `action[g][y]` is the image of `y` under `g`.
    GSet { group: FiniteGroup, action: Vec<Vec<usize>> },
}

/// The fixed locus `Y^g` (or `Y^{g₁,…,g_k}`) up to the data needed here.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FixedLocus {
    Point,
    /// Fixed linear subspace; `None` when only ages are known.
    Subspace {
        rank: Option<usize>,
    },
    Subset {
        points: Vec<usize>,
    },
}

impl FixedLocus {
    pub fn is_empty(&self) -> bool {
        matches!(self, FixedLocus::Subset { points } if points.is_empty())
    }
}

/// Ages must form a class function in `[0, rank)` vanishing at the identity.
fn validate_ages(group: &FiniteGroup, rank: usize, ages: &[Rational]) -> Result<(), SectorError> {
    if ages.len() != group.order() {
        return Err(SectorError::ShapeMismatch { what: "ages", expected: group.order() });
    }
    let bound = Rational::from_integer(rank.max(1) as i64);
    for g in group.elements() {
        let x = ages[g.0];
        let bad = x < Rational::zero()
            || x >= bound
            || (g == group.identity() && !x.is_zero())
            || group.elements().any(|h| ages[group.conj(h, g).0] != x);
        if bad {
            return Err(SectorError::InvalidAge(g.0));
        }
    }
    Ok(())
}

impl OrbifoldPresentation {
    pub fn point(group: FiniteGroup) -> Self {
        OrbifoldPresentation::Point { group }
    }

    /// Diagonal action by characters; each weight must be a homomorphism
    /// `G → Z/weight_modulus`. Nonabelian groups need `ages`.
    pub fn linear(
        group: FiniteGroup,
        weights: Vec<Vec<u64>>,
        weight_modulus: u64,
        ages: Option<Vec<Rational>>,
    ) -> Result<Self, SectorError> {
        if weight_modulus == 0 {
            return Err(SectorError::ZeroModulus);
        }
        let n = group.order();
        for (j, w) in weights.iter().enumerate() {
            if w.len() != n {
                return Err(SectorError::ShapeMismatch { what: "weight", expected: n });
            }
            for g in group.elements() {
                for h in group.elements() {
                    let lhs = w[group.mul(g, h).0] % weight_modulus;
                    if lhs != (w[g.0] + w[h.0]) % weight_modulus {
                        return Err(SectorError::NotAHomomorphism { weight: j, g: g.0, h: h.0 });
                    }
                }
            }
        }
        let rank = weights.len();
        match &ages {
            None if !group.is_abelian() => return Err(SectorError::NeedsAgeTable),
            None => {}
            Some(a) => validate_ages(&group, rank, a)?,
        }
        Ok(OrbifoldPresentation::Linear { group, rank, weights, weight_modulus, ages })
    }

    /// Linear presentation given only by rank and an age table (class function).
    pub fn linear_from_ages(group: FiniteGroup, rank: usize, ages: Vec<Rational>) -> Result<Self, SectorError> {
        validate_ages(&group, rank, &ages)?;
        Ok(OrbifoldPresentation::Linear { group, rank, weights: Vec::new(), weight_modulus: 1, ages: Some(ages) })
    }

    pub fn gset(group: FiniteGroup, action: Vec<Vec<usize>>) -> Result<Self, SectorError> {
        let n = group.order();
        if action.len() != n {
            return Err(SectorError::ShapeMismatch { what: "action", expected: n });
        }
        let points = action.first().map_or(0, |r| r.len());
        for (row, perm) in action.iter().enumerate() {
            if perm.len() != points {
                return Err(SectorError::ShapeMismatch { what: "action row", expected: points });
            }
            let mut seen = vec![false; points];
            for &y in perm {
                if y >= points || core::mem::replace(&mut seen[y], true) {
                    return Err(SectorError::NotAPermutation { row });
                }
            }
        }
        let e = group.identity().0;
        if let Some(y) = (0..points).find(|&y| action[e][y] != y) {
            return Err(SectorError::NotAnAction { g: e, h: e, point: y });
        }
        for g in group.elements() {
            for h in group.elements() {
                let gh = group.mul(g, h).0;
                if let Some(y) = (0..points).find(|&y| action[gh][y] != action[g.0][action[h.0][y]]) {
                    return Err(SectorError::NotAnAction { g: g.0, h: h.0, point: y });
                }
            }
        }
        Ok(OrbifoldPresentation::GSet { group, action })
    }

    pub fn group(&self) -> &FiniteGroup {
        match self {
            OrbifoldPresentation::Point { group }
            | OrbifoldPresentation::Linear { group, .. }
            | OrbifoldPresentation::GSet { group, .. } => group,
        }
    }

    /// Complex dimension of `Y` (0 for points and finite sets).
    pub fn dimension(&self) -> usize {
        match self {
            OrbifoldPresentation::Linear { rank, .. } => *rank,
            _ => 0,
        }
    }

    /// Common fixed locus of a tuple.
    pub fn fixed_locus(&self, tuple: &[Element]) -> FixedLocus {
        match self {
            OrbifoldPresentation::Point { .. } => FixedLocus::Point,
            OrbifoldPresentation::Linear { weights, weight_modulus, ages, .. } => {
                if weights.is_empty() && ages.is_some() {
                    let trivial = tuple.iter().all(|&g| g == self.group().identity());
                    FixedLocus::Subspace { rank: trivial.then_some(self.dimension()) }
                } else {
                    let rank = weights.iter().filter(|w| tuple.iter().all(|g| w[g.0] % weight_modulus == 0)).count();
                    FixedLocus::Subspace { rank: Some(rank) }
                }
            }
            OrbifoldPresentation::GSet { action, .. } => {
                let points = action.first().map_or(0, |r| r.len());
                FixedLocus::Subset {
                    points: (0..points).filter(|&y| tuple.iter().all(|g| action[g.0][y] == y)).collect(),
                }
            }
        }
    }

    /// Degree shift `ι_(g) = Σ_j frac(w_j(g)/M)`, or the age-table entry.
    pub fn age(&self, g: Element) -> Rational {
        match self {
            OrbifoldPresentation::Linear { weights, weight_modulus, ages, .. } => match ages {
                Some(a) => a[g.0],
                None => weights
                    .iter()
                    .map(|w| Rational::new((w[g.0] % weight_modulus) as i64, *weight_modulus as i64))
                    .sum(),
            },
            _ => Rational::zero(),
        }
    }
}

/// A component `X_(g)` of the inertia orbifold.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sector {
    pub class_index: usize,
    pub class: ConjugacyClass,
    pub centralizer: Subgroup,
    pub fixed: FixedLocus,
    pub age: Rational,
}

impl Sector {
    pub fn representative(&self) -> Element {
        self.class.representative
    }

    pub fn is_untwisted(&self, group: &FiniteGroup) -> bool {
        self.class.representative == group.identity()
    }
}

/// One sector per conjugacy class with nonempty fixed locus, by class order.
pub fn inertia(p: &OrbifoldPresentation) -> Vec<Sector> {
    let group = p.group();
    group
        .conjugacy_classes()
        .iter()
        .enumerate()
        .filter_map(|(i, class)| {
            let g = class.representative;
            let fixed = p.fixed_locus(&[g]);
            (!fixed.is_empty()).then(|| Sector {
                class_index: i,
                class: class.clone(),
                centralizer: group.centralizer(g),
                fixed,
                age: p.age(g),
            })
        })
        .collect()
}

/// An orbit of `k`-tuples under simultaneous conjugation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiSector {
    /// Lexicographically smallest tuple of the orbit.
    pub tuple: Vec<Element>,
    pub orbit_size: usize,
    pub joint_centralizer: Subgroup,
    /// Class index of `g₁⋯g_k`.
    pub product_class: usize,
    pub fixed: FixedLocus,
}

impl MultiSector {
    pub fn k(&self) -> usize {
        self.tuple.len()
    }
}

/// Lexicographically smallest simultaneous conjugate of `tuple`.
pub fn canonical_tuple(group: &FiniteGroup, tuple: &[Element]) -> Vec<Element> {
    group.elements().map(|h| tuple.iter().map(|&g| group.conj(h, g)).collect::<Vec<_>>()).min().unwrap_or_default()
}

/// The multisector containing `tuple`.
pub fn multisector_of(p: &OrbifoldPresentation, tuple: &[Element]) -> MultiSector {
    let group = p.group();
    let canon = canonical_tuple(group, tuple);
    let joint_centralizer = group.joint_centralizer(&canon);
    MultiSector {
        orbit_size: group.order() / joint_centralizer.order(),
        product_class: group.class_index(group.product(canon.iter().copied())),
        fixed: p.fixed_locus(&canon),
        joint_centralizer,
        tuple: canon,
    }
}

/// Checks `|G|^k` against `cap`.
pub fn check_cap(order: usize, exponent: usize, cap: u64) -> Result<u128, SectorError> {
    let candidates = (order as u128).checked_pow(exponent as u32).unwrap_or(u128::MAX);
    if candidates > cap as u128 {
        return Err(SectorError::CapExceeded { candidates, cap });
    }
    Ok(candidates)
}

fn enumerate(p: &OrbifoldPresentation, k: usize, cap: u64, product_one: bool) -> Result<Vec<MultiSector>, SectorError> {
    let group = p.group();
    let n = group.order();
    let total = check_cap(n, k, cap)? as usize;
    let encode = |t: &[Element]| t.iter().fold(0usize, |acc, g| acc * n + g.0);
    let mut seen = vec![false; total];
    let mut out = Vec::new();
    let mut tuple = vec![group.identity(); k];
    for code in 0..total {
        let mut c = code;
        for slot in tuple.iter_mut().rev() {
            *slot = Element(c % n);
            c /= n;
        }
        if seen[code] {
            continue;
        }
        if product_one && group.product(tuple.iter().copied()) != group.identity() {
            continue;
        }
        let mut orbit_size = 0;
        for h in group.elements() {
            let conj: Vec<Element> = tuple.iter().map(|&g| group.conj(h, g)).collect();
            let c = encode(&conj);
            if !seen[c] {
                seen[c] = true;
                orbit_size += 1;
            }
        }
        let fixed = p.fixed_locus(&tuple);
        if fixed.is_empty() {
            continue;
        }
        let joint_centralizer = group.joint_centralizer(&tuple);
        debug_assert_eq!(orbit_size * joint_centralizer.order(), n);
        out.push(MultiSector {
            tuple: tuple.clone(),
            orbit_size,
            joint_centralizer,
            product_class: group.class_index(group.product(tuple.iter().copied())),
            fixed,
        });
    }
    Ok(out)
}

/// Orbits of `k`-tuples with nonempty common fixed locus, by canonical tuple.
pub fn multisectors(p: &OrbifoldPresentation, k: usize, cap: u64) -> Result<Vec<MultiSector>, SectorError> {
    enumerate(p, k, cap, false)
}

/// The multisectors whose tuples satisfy `g₁⋯g_k = 1`.
pub fn moduli_sectors(p: &OrbifoldPresentation, k: usize, cap: u64) -> Result<Vec<MultiSector>, SectorError> {
    enumerate(p, k, cap, true)
}

/// `e_{i₁,…,i_l}`: projection to the entries at 1-based `indices`.
pub fn evaluation(p: &OrbifoldPresentation, ms: &MultiSector, indices: &[usize]) -> Result<MultiSector, SectorError> {
    let k = ms.k();
    let mut sub = Vec::with_capacity(indices.len());
    for &i in indices {
        if i == 0 || i > k {
            return Err(SectorError::IndexOutOfRange { index: i, k });
        }
        sub.push(ms.tuple[i - 1]);
    }
    Ok(multisector_of(p, &sub))
}

/// `I`: entrywise inverse.
pub fn involution(p: &OrbifoldPresentation, ms: &MultiSector) -> MultiSector {
    let group = p.group();
    let inv: Vec<Element> = ms.tuple.iter().map(|&g| group.inv(g)).collect();
    multisector_of(p, &inv)
}

/// `(dim − 3)(1 − genus) + k − Σ ι(g_i)` at degree zero.
pub fn virtual_dimension(p: &OrbifoldPresentation, genus: u32, tuple: &[Element]) -> Rational {
    let dim = p.dimension() as i64;
    let ages: Rational = tuple.iter().map(|&g| p.age(g)).sum();
    Rational::from_integer((dim - 3) * (1 - genus as i64) + tuple.len() as i64) - ages
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z3_rank2() -> OrbifoldPresentation {
        OrbifoldPresentation::linear(FiniteGroup::cyclic(3), vec![vec![0, 1, 2], vec![0, 1, 2]], 3, None).unwrap()
    }

    #[test]
    fn ages_of_z3() {
        let p = z3_rank2();
        assert_eq!(p.age(Element(0)), Rational::zero());
        assert_eq!(p.age(Element(1)), Rational::new(2, 3));
        assert_eq!(p.age(Element(2)), Rational::new(4, 3));
        let v = virtual_dimension(&p, 0, &[Element(1), Element(1), Element(1)]);
        assert_eq!(v, Rational::zero());
    }

    #[test]
    fn point_inertia() {
        assert_eq!(inertia(&OrbifoldPresentation::point(FiniteGroup::symmetric(3))).len(), 3);
        assert_eq!(inertia(&OrbifoldPresentation::point(FiniteGroup::trivial())).len(), 1);
        let free = OrbifoldPresentation::gset(FiniteGroup::cyclic(2), vec![vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(inertia(&free).len(), 1);
    }

    #[test]
    fn moduli_count_v4() {
        let c = FiniteGroup::cyclic(2);
        let p = OrbifoldPresentation::point(c.direct_product(&c));
        assert_eq!(moduli_sectors(&p, 3, 1000).unwrap().len(), 16);
        assert_eq!(multisectors(&p, 2, 1000).unwrap().len(), 16);
        assert!(matches!(multisectors(&p, 6, 1000), Err(SectorError::CapExceeded { .. })));
    }

    #[test]
    fn bad_presentations() {
        let g = FiniteGroup::cyclic(3);
        assert!(matches!(
            OrbifoldPresentation::linear(g.clone(), vec![vec![0, 1, 1]], 3, None),
            Err(SectorError::NotAHomomorphism { .. })
        ));
        assert!(matches!(
            OrbifoldPresentation::linear(FiniteGroup::symmetric(3), vec![], 1, None),
            Err(SectorError::NeedsAgeTable)
        ));
        assert!(matches!(
            OrbifoldPresentation::gset(g, vec![vec![0, 1], vec![1, 0], vec![0, 1]]),
            Err(SectorError::NotAnAction { .. })
        ));
    }

    #[test]
    fn evaluation_and_involution() {
        let p = OrbifoldPresentation::point(FiniteGroup::symmetric(3));
        for ms in multisectors(&p, 2, 1000).unwrap() {
            assert_eq!(involution(&p, &involution(&p, &ms)), ms);
            assert_eq!(evaluation(&p, &ms, &[1, 2]).unwrap(), ms);
            let e1 = evaluation(&p, &ms, &[1]).unwrap();
            assert_eq!(e1.tuple, vec![p.group().class_of(ms.tuple[0]).representative]);
        }
        let ms = multisector_of(&p, &[Element(1)]);
        assert!(matches!(evaluation(&p, &ms, &[2]), Err(SectorError::IndexOutOfRange { index: 2, k: 1 })));
    }
}
