//! The inner local system `L_α` attached to discrete torsion, twisted
//! orbifold cohomology and the twisted class algebra.
//!
//! Fibers are one-dimensional with a basis vector `1_g` for every group
//! element `g`; `h` acts by `h·1_g = γ_{h,g} 1_{hgh⁻¹}`. Sector-level data is
//! obtained by taking invariants.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::arith::{Cyclotomic, PhaseSum, Rational, RootOfUnity};
use crate::cocycle::{gamma, Cocycle2, CocycleError};
use crate::group::{Element, FiniteGroup};
use crate::sectors::{FixedLocus, OrbifoldPresentation};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LocalSystemError {
    #[error("condition ({condition}) fails at {witness:?}")]
    ConditionFailed { condition: u8, witness: Vec<usize> },
    #[error("table has wrong shape: expected {expected} entries")]
    ShapeMismatch { expected: usize },
    #[error("class-sum product ({left}, {right}) leaves the centre at element {element}")]
    NotCentral { left: usize, right: usize, element: usize },
    #[error(transparent)]
    Cocycle(#[from] CocycleError),
}

/// `L_α` on the inertia of a presentation.
#[derive(Debug, Clone)]
pub struct InnerLocalSystem {
    presentation: OrbifoldPresentation,
    /// `action[h·n + g]`: `h·1_g = action · 1_{hgh⁻¹}`.
    action: Vec<RootOfUnity>,
    /// `theta[g₁·n + g₂]`: `1_{g₁} ⊗ 1_{g₂} ↦ theta · 1_{g₁g₂}`.
    theta: Vec<RootOfUnity>,
    /// `pairing[g]`: `1_g ⊗ 1_{g⁻¹} ↦ pairing`.
    pairing: Vec<RootOfUnity>,
}

/// Builds `L_α`: action by `γ`, multiplication by `α`, pairing `α_{g,g⁻¹}`.
pub fn local_system_from_torsion(
    presentation: &OrbifoldPresentation,
    alpha: &Cocycle2,
) -> Result<InnerLocalSystem, CocycleError> {
    let group = presentation.group();
    let n = group.order();
    if alpha.group_order() != n {
        return Err(CocycleError::OrderMismatch { expected: n, found: alpha.group_order() });
    }
    let mut action = Vec::with_capacity(n * n);
    let mut theta = Vec::with_capacity(n * n);
    for h in group.elements() {
        for g in group.elements() {
            action.push(gamma(group, alpha, h, g));
            theta.push(alpha.value(h, g));
        }
    }
    let pairing = group.elements().map(|g| alpha.value(g, group.inv(g))).collect();
    Ok(InnerLocalSystem { presentation: presentation.clone(), action, theta, pairing })
}

/// Outcome of checking the four inner-local-system conditions.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LocalSystemReport {
    /// First witness per failed condition, as `(condition, tuple)`.
    pub failures: Vec<(u8, Vec<usize>)>,
}

impl LocalSystemReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn condition_passed(&self, condition: u8) -> bool {
        self.failures.iter().all(|(c, _)| *c != condition)
    }

    pub fn into_result(self) -> Result<(), LocalSystemError> {
        match self.failures.into_iter().next() {
            None => Ok(()),
            Some((condition, witness)) => Err(LocalSystemError::ConditionFailed { condition, witness }),
        }
    }
}

impl InnerLocalSystem {
    /// A hand-built system; tables are indexed as in [`local_system_from_torsion`].
    pub fn from_parts(
        presentation: &OrbifoldPresentation,
        action: Vec<RootOfUnity>,
        theta: Vec<RootOfUnity>,
        pairing: Vec<RootOfUnity>,
    ) -> Result<Self, LocalSystemError> {
        let n = presentation.group().order();
        if action.len() != n * n || theta.len() != n * n {
            return Err(LocalSystemError::ShapeMismatch { expected: n * n });
        }
        if pairing.len() != n {
            return Err(LocalSystemError::ShapeMismatch { expected: n });
        }
        Ok(InnerLocalSystem { presentation: presentation.clone(), action, theta, pairing })
    }

    /// The same system with a replaced multiplication table.
    pub fn with_theta(mut self, theta: Vec<RootOfUnity>) -> Result<Self, LocalSystemError> {
        if theta.len() != self.theta.len() {
            return Err(LocalSystemError::ShapeMismatch { expected: self.theta.len() });
        }
        self.theta = theta;
        Ok(self)
    }

    pub fn presentation(&self) -> &OrbifoldPresentation {
        &self.presentation
    }

    fn n(&self) -> usize {
        self.presentation.group().order()
    }

    /// Scalar by which `h` maps `1_g` to `1_{hgh⁻¹}`.
    #[inline]
    pub fn action(&self, h: Element, g: Element) -> RootOfUnity {
        self.action[h.0 * self.n() + g.0]
    }

    #[inline]
    pub fn theta(&self, g1: Element, g2: Element) -> RootOfUnity {
        self.theta[g1.0 * self.n() + g2.0]
    }

    #[inline]
    pub fn pairing(&self, g: Element) -> RootOfUnity {
        self.pairing[g.0]
    }

    /// The character of `C(g)` on the fiber over `g`.
    pub fn fiber_character(&self, g: Element) -> Vec<(Element, RootOfUnity)> {
        let group = self.presentation.group();
        group.centralizer(g).members.into_iter().map(|h| (h, self.action(h, g))).collect()
    }

    /// True iff `C(g)` acts trivially on `1_g`.
    pub fn is_sector_surviving(&self, g: Element) -> bool {
        let group = self.presentation.group();
        group.centralizer(g).members.iter().all(|&h| self.action(h, g).is_one())
    }

    /// Checks the four conditions exhaustively over group elements:
    /// (1) trivial untwisted fiber and a genuine action;
    /// (2) equivariant nondegenerate pairing;
    /// (3) equivariant multiplication;
    /// (4) associative multiplication.
    pub fn verify(&self) -> LocalSystemReport {
        let group = self.presentation.group();
        let e = group.identity();
        let mut report = LocalSystemReport::default();

        let c1 = (|| {
            for h in group.elements() {
                if !self.action(h, e).is_one() {
                    return Some(vec![h.0, e.0]);
                }
            }
            for h1 in group.elements() {
                for h2 in group.elements() {
                    let h12 = group.mul(h1, h2);
                    for x in group.elements() {
                        if self.action(h12, x) != self.action(h1, group.conj(h2, x)) * self.action(h2, x) {
                            return Some(vec![h1.0, h2.0, x.0]);
                        }
                    }
                }
            }
            None
        })();
        if let Some(w) = c1 {
            report.failures.push((1, w));
        }

        let c2 = (|| {
            for g in group.elements() {
                for h in group.elements() {
                    let lhs = self.action(h, g) * self.action(h, group.inv(g)) * self.pairing(group.conj(h, g));
                    if lhs != self.pairing(g) {
                        return Some(vec![h.0, g.0]);
                    }
                }
            }
            None
        })();
        if let Some(w) = c2 {
            report.failures.push((2, w));
        }

        let c3 = (|| {
            for h in group.elements() {
                for g1 in group.elements() {
                    for g2 in group.elements() {
                        let lhs =
                            self.action(h, g1) * self.action(h, g2) * self.theta(group.conj(h, g1), group.conj(h, g2));
                        let rhs = self.theta(g1, g2) * self.action(h, group.mul(g1, g2));
                        if lhs != rhs {
                            return Some(vec![h.0, g1.0, g2.0]);
                        }
                    }
                }
            }
            None
        })();
        if let Some(w) = c3 {
            report.failures.push((3, w));
        }

        let c4 = (|| {
            for g1 in group.elements() {
                for g2 in group.elements() {
                    let g12 = group.mul(g1, g2);
                    for g3 in group.elements() {
                        let lhs = self.theta(g1, g2) * self.theta(g12, g3);
                        let rhs = self.theta(g2, g3) * self.theta(g1, group.mul(g2, g3));
                        if lhs != rhs {
                            return Some(vec![g1.0, g2.0, g3.0]);
                        }
                    }
                }
            }
            None
        })();
        if let Some(w) = c4 {
            report.failures.push((4, w));
        }
        report
    }
}

/// Checks the conditions of a system, failing on the first violation.
pub fn verify_inner_local_system(l: &InnerLocalSystem) -> Result<(), LocalSystemError> {
    l.verify().into_result()
}

/// Per-sector contribution to twisted cohomology.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SectorContribution {
    pub class_index: usize,
    pub representative: Element,
    pub age: Rational,
    /// Degree `2ι_(g)` of the contribution.
    pub degree: Rational,
    pub dimension: usize,
    pub surviving: bool,
}

/// Graded dimensions of `H*_CR(X, L_α)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistedCohomology {
    pub graded: BTreeMap<Rational, usize>,
    pub sectors: Vec<SectorContribution>,
}

impl TwistedCohomology {
    pub fn total_dimension(&self) -> usize {
        self.graded.values().sum()
    }

    /// `(degree, dimension)` pairs sorted by degree, zero dimensions omitted.
    pub fn poincare_polynomial(&self) -> Vec<(Rational, usize)> {
        self.graded.iter().filter(|(_, &d)| d > 0).map(|(&q, &d)| (q, d)).collect()
    }
}

/// Twisted orbifold cohomology of a global quotient with contractible or
/// discrete fixed loci: sector `(g)` contributes, in degree `2ι_(g)`, one
/// dimension per `C(g)`-orbit on `Y^g` whose stabilizer fixes `1_g`.
pub fn twisted_cr_cohomology(p: &OrbifoldPresentation, alpha: &Cocycle2) -> Result<TwistedCohomology, CocycleError> {
    let l = local_system_from_torsion(p, alpha)?;
    let group = p.group();
    let mut graded = BTreeMap::new();
    let mut sectors = Vec::new();
    for (i, class) in group.conjugacy_classes().iter().enumerate() {
        let g = class.representative;
        let fixed = p.fixed_locus(&[g]);
        if fixed.is_empty() {
            continue;
        }
        let centralizer = group.centralizer(g);
        let surviving = l.is_sector_surviving(g);
        let dimension = match (&fixed, p) {
            (FixedLocus::Subset { points }, OrbifoldPresentation::GSet { action, .. }) => {
                let mut seen = vec![false; action[0].len()];
                let mut count = 0;
                for &y in points {
                    if seen[y] {
                        continue;
                    }
                    for &h in &centralizer.members {
                        seen[action[h.0][y]] = true;
                    }
                    let stab_trivial =
                        centralizer.members.iter().filter(|h| action[h.0][y] == y).all(|&h| l.action(h, g).is_one());
                    count += usize::from(stab_trivial);
                }
                count
            }
            _ => usize::from(surviving),
        };
        let age = p.age(g);
        let degree = age * Rational::from_integer(2);
        *graded.entry(degree).or_insert(0) += dimension;
        sectors.push(SectorContribution { class_index: i, representative: g, age, degree, dimension, surviving });
    }
    Ok(TwistedCohomology { graded, sectors })
}

/// `poincare_polynomial` of [`twisted_cr_cohomology`].
pub fn poincare_polynomial(p: &OrbifoldPresentation, alpha: &Cocycle2) -> Result<Vec<(Rational, usize)>, CocycleError> {
    Ok(twisted_cr_cohomology(p, alpha)?.poincare_polynomial())
}

/// Per-class survival flags, indexed like `group.conjugacy_classes()`.
pub fn surviving_classes(group: &FiniteGroup, alpha: &Cocycle2) -> Vec<bool> {
    group
        .conjugacy_classes()
        .iter()
        .map(|c| {
            let r = c.representative;
            group.centralizer(r).members.iter().all(|&h| gamma(group, alpha, h, r).is_one())
        })
        .collect()
}

/// The element `h` used to transport `1_r` to `1_l` for `l` in the class of
/// `r`: the identity at `r`, otherwise the minimal-index conjugator.
pub fn transport(group: &FiniteGroup, r: Element, l: Element) -> Element {
    if l == r {
        group.identity()
    } else {
        group.conjugator(r, l).expect("conjugate elements")
    }
}

/// Centre of the twisted group algebra `C^α[G]` in the basis of twisted class
/// sums `z_C = Σ_{l∈C} γ_{t(l),r} e_l` over surviving classes `C = (r)`.
#[derive(Debug, Clone)]
pub struct TwistedClassAlgebra {
    /// Class indices of the basis, ascending.
    basis: Vec<usize>,
    representatives: Vec<Element>,
    /// `constants[(i·d + j)·d + k] = c_{ij}^k`.
    constants: Vec<Cyclotomic>,
    identity: usize,
}

impl TwistedClassAlgebra {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[usize] {
        &self.basis
    }

    pub fn representatives(&self) -> &[Element] {
        &self.representatives
    }

    /// Basis position of the untwisted class.
    pub fn identity_index(&self) -> usize {
        self.identity
    }

    /// `c_{ij}^k` with `z_i z_j = Σ_k c_{ij}^k z_k`.
    pub fn constant(&self, i: usize, j: usize, k: usize) -> &Cyclotomic {
        let d = self.dimension();
        &self.constants[(i * d + j) * d + k]
    }

    /// Basis position of a class index.
    pub fn position(&self, class_index: usize) -> Option<usize> {
        self.basis.binary_search(&class_index).ok()
    }

    fn nonzero(&self) -> Vec<Vec<(usize, &Cyclotomic)>> {
        let d = self.dimension();
        (0..d * d)
            .map(|ij| {
                (0..d).filter_map(|k| Some((k, &self.constants[ij * d + k])).filter(|(_, c)| !c.is_zero())).collect()
            })
            .collect()
    }

    /// First basis triple where `(z_i z_j) z_k ≠ z_i (z_j z_k)`.
    pub fn associativity_failure(&self) -> Option<(usize, usize, usize)> {
        let d = self.dimension();
        let nz = self.nonzero();
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let mut lhs = vec![Cyclotomic::zero(); d];
                    for (m, c1) in &nz[i * d + j] {
                        for (l, c2) in &nz[m * d + k] {
                            lhs[*l] += &(*c1 * *c2);
                        }
                    }
                    let mut rhs = vec![Cyclotomic::zero(); d];
                    for (m, c1) in &nz[j * d + k] {
                        for (l, c2) in &nz[i * d + m] {
                            rhs[*l] += &(*c1 * *c2);
                        }
                    }
                    if lhs != rhs {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    /// True if the untwisted class is a two-sided identity.
    pub fn identity_holds(&self) -> bool {
        let d = self.dimension();
        let e = self.identity;
        (0..d).all(|j| {
            (0..d).all(|k| {
                let expect = if j == k { Cyclotomic::one() } else { Cyclotomic::zero() };
                *self.constant(e, j, k) == expect && *self.constant(j, e, k) == expect
            })
        })
    }

    pub fn is_commutative(&self) -> bool {
        let d = self.dimension();
        (0..d).all(|i| (0..d).all(|j| (0..d).all(|k| self.constant(i, j, k) == self.constant(j, i, k))))
    }

    /// Invariants of the isomorphism class checked across cohomologous cocycles.
    pub fn invariants(&self) -> AlgebraInvariants {
        AlgebraInvariants {
            dimension: self.dimension(),
            commutative: self.is_commutative(),
            identity_class: self.basis[self.identity],
            associative: self.associativity_failure().is_none(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraInvariants {
    pub dimension: usize,
    pub commutative: bool,
    pub identity_class: usize,
    pub associative: bool,
}

/// Computes the twisted class algebra, checking that every product of basis
/// class sums lies in their span.
pub fn twisted_class_algebra(group: &FiniteGroup, alpha: &Cocycle2) -> Result<TwistedClassAlgebra, LocalSystemError> {
    let n = group.order();
    if alpha.group_order() != n {
        return Err(CocycleError::OrderMismatch { expected: n, found: alpha.group_order() }.into());
    }
    let survive = surviving_classes(group, alpha);
    let classes = group.conjugacy_classes();
    let basis: Vec<usize> = (0..classes.len()).filter(|&i| survive[i]).collect();
    let representatives: Vec<Element> = basis.iter().map(|&i| classes[i].representative).collect();
    let d = basis.len();
    // coefficient of e_l in its class sum (surviving classes only)
    let mut coeff: Vec<Option<RootOfUnity>> = vec![None; n];
    for (&c, &r) in basis.iter().zip(&representatives) {
        for &l in &classes[c].members {
            coeff[l.0] = Some(gamma(group, alpha, transport(group, r, l), r));
        }
    }
    let mut constants = vec![Cyclotomic::zero(); d * d * d];
    for i in 0..d {
        for j in 0..d {
            let mut product: Vec<PhaseSum> = vec![PhaseSum::new(); n];
            for &x in &classes[basis[i]].members {
                let cx = coeff[x.0].expect("surviving");
                for &y in &classes[basis[j]].members {
                    let cy = coeff[y.0].expect("surviving");
                    product[group.mul(x, y).0].add(cx * cy * alpha.value(x, y));
                }
            }
            let product: Vec<Cyclotomic> = product.iter().map(PhaseSum::to_cyclotomic).collect();
            for l in group.elements() {
                let c = group.class_index(l);
                let expected = match basis.binary_search(&c) {
                    Ok(k) => product[representatives[k].0].mul_root(coeff[l.0].expect("surviving")),
                    Err(_) => Cyclotomic::zero(),
                };
                if product[l.0] != expected {
                    return Err(LocalSystemError::NotCentral { left: basis[i], right: basis[j], element: l.0 });
                }
            }
            for k in 0..d {
                constants[(i * d + j) * d + k] = product[representatives[k].0].simplified();
            }
        }
    }
    let identity = basis.binary_search(&group.class_index(group.identity())).expect("identity class survives");
    Ok(TwistedClassAlgebra { basis, representatives, constants, identity })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cocycle::{schur_multiplier, standard_torsion_cocycle};

    #[test]
    fn torsion_kills_twisted_sectors() {
        let (g, a) = standard_torsion_cocycle(2);
        let p = OrbifoldPresentation::point(g.clone());
        assert_eq!(twisted_cr_cohomology(&p, &a).unwrap().total_dimension(), 1);
        assert_eq!(twisted_cr_cohomology(&p, &Cocycle2::trivial(&g)).unwrap().total_dimension(), 4);
        let l = local_system_from_torsion(&p, &a).unwrap();
        assert!(l.verify().passed());
        assert!(!l.is_sector_surviving(Element(2)));
        assert_eq!(l.action(Element(1), Element(2)), RootOfUnity::minus_one());
        let alg = twisted_class_algebra(&g, &a).unwrap();
        assert_eq!(alg.dimension(), 1);
        assert_eq!(*alg.constant(0, 0, 0), Cyclotomic::one());
    }

    #[test]
    fn z3_grading() {
        let g = FiniteGroup::cyclic(3);
        let p = OrbifoldPresentation::linear(g.clone(), vec![vec![0, 1, 2], vec![0, 1, 2]], 3, None).unwrap();
        let h = twisted_cr_cohomology(&p, &Cocycle2::trivial(&g)).unwrap();
        let expect: Vec<(Rational, usize)> =
            vec![(Rational::from_integer(0), 1), (Rational::new(4, 3), 1), (Rational::new(8, 3), 1)];
        assert_eq!(h.poincare_polynomial(), expect);
    }

    #[test]
    fn constant_theta_breaks_equivariance_on_d4() {
        let g = FiniteGroup::dihedral(4);
        let r = schur_multiplier(&g, 8).unwrap();
        let a = &r.representatives()[0];
        let p = OrbifoldPresentation::point(g.clone());
        let l = local_system_from_torsion(&p, a).unwrap().with_theta(vec![RootOfUnity::ONE; 64]).unwrap();
        let rep = l.verify();
        assert!(rep.condition_passed(4));
        assert!(!rep.condition_passed(3));
    }

    #[test]
    fn gset_counts_orbits() {
        // Z/2 swapping two points: untwisted sector has one orbit
        let g = FiniteGroup::cyclic(2);
        let p = OrbifoldPresentation::gset(g.clone(), vec![vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(twisted_cr_cohomology(&p, &Cocycle2::trivial(&g)).unwrap().total_dimension(), 1);
    }
}
