//! Surface-group homomorphisms into `G`, cocycle holonomy weights, twisted
//! Dijkgraaf-Witten sums and the gluing law.
//!
//! A homomorphism from the fundamental group of a genus-`g` surface with `k`
//! boundary circles is a tuple `(μ₁,…,μ_{2g}, l₁,…,l_k)` with
//! `Π_j [μ_{2j−1}, μ_{2j}] · l₁⋯l_k = 1`, where `[a, b] = a b a⁻¹ b⁻¹`.
//!
//! The weight of a tuple is the scalar `s` with `e_{w₁}⋯e_{w_m} = s·e_1` in the
//! twisted group algebra, where `w₁⋯w_m` is the relator word and an inverse
//! letter `x⁻¹` stands for `e_x⁻¹ = α_{x,x⁻¹}⁻¹ e_{x⁻¹}`.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_integer::Integer;
use num_rational::BigRational;

use crate::arith::{reciprocal, Cyclotomic, PhaseSum, RootOfUnity};
use crate::cocycle::{flat_trivializations_on_cyclic, gamma, Cocycle2, CocycleError, Trivialization};
use crate::group::{Element, FiniteGroup};
use crate::local_system::{surviving_classes, transport};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SurfaceError {
    #[error("{candidates} tuple candidates exceed the enumeration cap {cap}")]
    CapExceeded { candidates: u128, cap: u64 },
    #[error("homomorphism has a nontrivial boundary image")]
    NotClosed,
    #[error("frame {boundary} does not trivialize the cocycle on the cyclic subgroup of its boundary class")]
    FrameMismatch { boundary: usize },
    #[error("classes {left} and {right} are not inverse to each other")]
    LabelMismatch { left: usize, right: usize },
    #[error("expected {expected} entries, found {found}")]
    ShapeMismatch { expected: usize, found: usize },
    #[error("multiplicities must be at least 1")]
    ZeroMultiplicity,
    #[error(transparent)]
    Cocycle(#[from] CocycleError),
}

/// Genus, optional boundary class constraints and orbifold multiplicities.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SurfaceSignature {
    pub genus: u32,
    /// One entry per boundary circle: a class index, or `None` for any class.
    pub boundary: Vec<Option<usize>>,
    pub multiplicities: Vec<u64>,
}

impl SurfaceSignature {
    pub fn closed(genus: u32) -> Self {
        SurfaceSignature { genus, ..Default::default() }
    }

    pub fn with_boundary(genus: u32, boundary: Vec<Option<usize>>) -> Self {
        SurfaceSignature { genus, boundary, multiplicities: Vec::new() }
    }

    pub fn k(&self) -> usize {
        self.boundary.len()
    }
}

/// Images of `μ₁,…,μ_{2g}` and `l₁,…,l_k`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct SurfaceHom {
    pub mu: Vec<Element>,
    pub boundary: Vec<Element>,
}

impl SurfaceHom {
    /// The relator word as `(element, inverted)` letters.
    pub fn relator_word(&self) -> Vec<(Element, bool)> {
        let mut word = Vec::with_capacity(2 * self.mu.len() + self.boundary.len());
        for pair in self.mu.chunks(2) {
            word.push((pair[0], false));
            word.push((pair[1], false));
            word.push((pair[0], true));
            word.push((pair[1], true));
        }
        word.extend(self.boundary.iter().map(|&l| (l, false)));
        word
    }

    /// Simultaneous conjugation by `h`.
    pub fn conjugate(&self, group: &FiniteGroup, h: Element) -> SurfaceHom {
        SurfaceHom {
            mu: self.mu.iter().map(|&x| group.conj(h, x)).collect(),
            boundary: self.boundary.iter().map(|&x| group.conj(h, x)).collect(),
        }
    }
}

/// A weight together with the boundary frames it is relative to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HolonomyWeight {
    pub value: RootOfUnity,
    pub frame: Vec<Trivialization>,
}

/// Evaluates the relator exactly.
pub fn relator_check(group: &FiniteGroup, hom: &SurfaceHom) -> bool {
    let p = hom
        .relator_word()
        .into_iter()
        .fold(group.identity(), |acc, (x, inv)| group.mul(acc, if inv { group.inv(x) } else { x }));
    p == group.identity()
}

/// `s` with `e_{w₁}⋯e_{w_m} = s·e_{w₁⋯w_m}`.
pub fn word_weight(group: &FiniteGroup, alpha: &Cocycle2, word: &[(Element, bool)]) -> RootOfUnity {
    let mut prefix = group.identity();
    let mut s = RootOfUnity::ONE;
    for &(x, inv) in word {
        let letter = if inv {
            let xi = group.inv(x);
            s = s * alpha.value(x, xi).inv();
            xi
        } else {
            x
        };
        s = s * alpha.value(prefix, letter);
        prefix = group.mul(prefix, letter);
    }
    s
}

/// Weight of a homomorphism with trivial boundary holonomy.
pub fn alpha_weight_closed(
    group: &FiniteGroup,
    alpha: &Cocycle2,
    hom: &SurfaceHom,
) -> Result<RootOfUnity, SurfaceError> {
    if hom.boundary.iter().any(|&l| l != group.identity()) {
        return Err(SurfaceError::NotClosed);
    }
    Ok(word_weight(group, alpha, &hom.relator_word()))
}

/// The lexicographically smallest flat trivialization on each class
/// representative's cyclic subgroup, indexed by class.
pub fn canonical_frames(group: &FiniteGroup, alpha: &Cocycle2) -> Result<Vec<Trivialization>, SurfaceError> {
    group
        .conjugacy_classes()
        .iter()
        .map(|c| {
            let mut t = flat_trivializations_on_cyclic(group, alpha, c.representative, None)?;
            Ok(t.swap_remove(0))
        })
        .collect()
}

fn frame_fits(group: &FiniteGroup, alpha: &Cocycle2, frame: &Trivialization, r: Element) -> bool {
    frame.members() == group.cyclic_subgroup(r).members.as_slice() && frame.trivializes(group, alpha)
}

/// Boundary factor `ρ(r)⁻¹ γ_{t(l),r}` turning `e_l` into the framed vector
/// transported from the class representative `r`.
fn boundary_factor(group: &FiniteGroup, alpha: &Cocycle2, frame: &Trivialization, l: Element) -> RootOfUnity {
    let r = group.class_of(l).representative;
    frame.value(r).expect("frame covers its representative").inv() * gamma(group, alpha, transport(group, r, l), r)
}

/// Weight of a homomorphism relative to one frame per boundary circle; frame
/// `i` must trivialize `α` on the cyclic subgroup of the representative of the
/// class of `l_i`.
pub fn theta_with_boundary(
    group: &FiniteGroup,
    alpha: &Cocycle2,
    hom: &SurfaceHom,
    frame: &[Trivialization],
) -> Result<HolonomyWeight, SurfaceError> {
    if frame.len() != hom.boundary.len() {
        return Err(SurfaceError::ShapeMismatch { expected: hom.boundary.len(), found: frame.len() });
    }
    let mut value = word_weight(group, alpha, &hom.relator_word());
    for (i, (&l, f)) in hom.boundary.iter().zip(frame).enumerate() {
        if !frame_fits(group, alpha, f, group.class_of(l).representative) {
            return Err(SurfaceError::FrameMismatch { boundary: i });
        }
        value = value * boundary_factor(group, alpha, f, l);
    }
    Ok(HolonomyWeight { value, frame: frame.to_vec() })
}

fn check_cap(order: usize, exponent: usize, cap: u64) -> Result<(), SurfaceError> {
    let candidates = (order as u128).checked_pow(exponent as u32).unwrap_or(u128::MAX);
    if candidates > cap as u128 {
        return Err(SurfaceError::CapExceeded { candidates, cap });
    }
    Ok(())
}

/// Calls `f` on every homomorphism of the signature, in lexicographic order of
/// the free generators; with `k ≥ 1` the last boundary image is solved from
/// the relator.
pub fn for_each_hom(
    group: &FiniteGroup,
    sig: &SurfaceSignature,
    cap: u64,
    mut f: impl FnMut(&SurfaceHom),
) -> Result<(), SurfaceError> {
    let n = group.order();
    let two_g = 2 * sig.genus as usize;
    let k = sig.k();
    check_cap(n, two_g + k, cap)?;
    let free = two_g + k.saturating_sub(1);
    let mut digits = vec![0usize; free];
    let mut hom = SurfaceHom { mu: vec![group.identity(); two_g], boundary: vec![group.identity(); k] };
    let allowed = |i: usize, l: Element| sig.boundary[i].is_none_or(|c| group.class_index(l) == c);
    loop {
        for (i, &d) in digits.iter().enumerate() {
            if i < two_g {
                hom.mu[i] = Element(d);
            } else {
                hom.boundary[i - two_g] = Element(d);
            }
        }
        let mut p = group.identity();
        for pair in hom.mu.chunks(2) {
            p = group.mul(p, group.commutator(pair[0], pair[1]));
        }
        let ok = if k == 0 {
            p == group.identity()
        } else {
            for &l in &hom.boundary[..k - 1] {
                p = group.mul(p, l);
            }
            hom.boundary[k - 1] = group.inv(p);
            (0..k).all(|i| allowed(i, hom.boundary[i]))
        };
        if ok {
            f(&hom);
        }
        let mut i = free;
        loop {
            if i == 0 {
                return Ok(());
            }
            i -= 1;
            digits[i] += 1;
            if digits[i] < n {
                break;
            }
            digits[i] = 0;
        }
    }
}

pub fn enumerate_homs(group: &FiniteGroup, sig: &SurfaceSignature, cap: u64) -> Result<Vec<SurfaceHom>, SurfaceError> {
    let mut out = Vec::new();
    for_each_hom(group, sig, cap, |h| out.push(h.clone()))?;
    Ok(out)
}

fn big_to_rational(c: &Cyclotomic) -> BigRational {
    c.to_rational().expect("closed-surface sums are rational")
}

/// `(1/|G|) Σ_ρ weight(ρ)` over homomorphisms of the closed genus-`g` surface.
pub fn twisted_dw_partition(
    group: &FiniteGroup,
    alpha: &Cocycle2,
    genus: u32,
    cap: u64,
) -> Result<BigRational, SurfaceError> {
    let mut sum = PhaseSum::new();
    for_each_hom(group, &SurfaceSignature::closed(genus), cap, |h| {
        sum.add(word_weight(group, alpha, &h.relator_word()));
    })?;
    Ok(big_to_rational(&sum.to_cyclotomic()) * reciprocal(group.order()))
}

/// Degree-zero twisted invariants of `[pt/G]` indexed by class tuples.
#[derive(Debug, Clone)]
pub struct GwTable {
    pub genus: u32,
    pub k: usize,
    /// Entries for tuples of surviving classes; every other tuple is 0.
    pub entries: BTreeMap<Vec<usize>, Cyclotomic>,
    pub surviving: Vec<bool>,
}

impl GwTable {
    pub fn get(&self, classes: &[usize]) -> Cyclotomic {
        self.entries.get(classes).cloned().unwrap_or_else(Cyclotomic::zero)
    }
}

/// All entries `(1/|G|) Σ_{l_i ∈ C_i} θ(ρ)` for genus `g` and `k` boundary
/// circles, under the given frame per class (canonical frames if `None`).
pub fn gw_table(
    group: &FiniteGroup,
    alpha: &Cocycle2,
    genus: u32,
    k: usize,
    frames: Option<&[Trivialization]>,
    cap: u64,
) -> Result<GwTable, SurfaceError> {
    let canonical;
    let frames = match frames {
        Some(f) => f,
        None => {
            canonical = canonical_frames(group, alpha)?;
            &canonical
        }
    };
    let classes = group.conjugacy_classes();
    if frames.len() != classes.len() {
        return Err(SurfaceError::ShapeMismatch { expected: classes.len(), found: frames.len() });
    }
    for (c, f) in frames.iter().enumerate() {
        if !frame_fits(group, alpha, f, classes[c].representative) {
            return Err(SurfaceError::FrameMismatch { boundary: c });
        }
    }
    let surviving = surviving_classes(group, alpha);
    let factor: Vec<RootOfUnity> =
        group.elements().map(|l| boundary_factor(group, alpha, &frames[group.class_index(l)], l)).collect();
    let mut sums: BTreeMap<Vec<usize>, PhaseSum> = BTreeMap::new();
    let sig = SurfaceSignature::with_boundary(genus, vec![None; k]);
    for_each_hom(group, &sig, cap, |h| {
        let key: Vec<usize> = h.boundary.iter().map(|&l| group.class_index(l)).collect();
        if key.iter().any(|&c| !surviving[c]) {
            return;
        }
        let w = h.boundary.iter().fold(word_weight(group, alpha, &h.relator_word()), |acc, l| acc * factor[l.0]);
        sums.entry(key).or_default().add(w);
    })?;
    let scale = reciprocal(group.order());
    let entries = sums
        .into_iter()
        .map(|(key, s)| (key, s.to_cyclotomic().scale(&scale).simplified()))
        .filter(|(_, v)| !v.is_zero())
        .collect();
    Ok(GwTable { genus, k, entries, surviving })
}

/// A single entry of [`gw_table`] under canonical frames; 0 when some class
/// does not survive.
pub fn twisted_point_gw(
    group: &FiniteGroup,
    alpha: &Cocycle2,
    genus: u32,
    classes: &[usize],
    cap: u64,
) -> Result<Cyclotomic, SurfaceError> {
    let surviving = surviving_classes(group, alpha);
    if classes.iter().any(|&c| !surviving[c]) {
        return Ok(Cyclotomic::zero());
    }
    let frames = canonical_frames(group, alpha)?;
    let sig = SurfaceSignature::with_boundary(genus, classes.iter().map(|&c| Some(c)).collect());
    let mut sum = PhaseSum::new();
    for_each_hom(group, &sig, cap, |h| {
        let w = h.boundary.iter().fold(word_weight(group, alpha, &h.relator_word()), |acc, &l| {
            acc * boundary_factor(group, alpha, &frames[group.class_index(l)], l)
        });
        sum.add(w);
    })?;
    Ok(sum.to_cyclotomic().scale(&reciprocal(group.order())).simplified())
}

/// Fails unless `right` is the class of inverses of `left`.
pub fn check_glue_labels(group: &FiniteGroup, left: usize, right: usize) -> Result<(), SurfaceError> {
    if group.inverse_class(left) != right {
        return Err(SurfaceError::LabelMismatch { left, right });
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Gluing {
    /// Two genus-0 three-holed spheres into a four-holed sphere.
    Pants,
    /// Two boundary circles of a genus-`g` surface glued to each other,
    /// giving a closed surface of genus `g + 1`.
    SelfGluing { genus: u32 },
}

/// Per-tuple comparison of a glued surface against the sum over intermediate
/// insertions contracted with the inverse pairing.
#[derive(Debug, Clone)]
pub struct GluingReport {
    pub gluing: Gluing,
    pub checked: usize,
    /// `(boundary classes, glued value, composed value)` for each mismatch.
    pub failures: Vec<(Vec<usize>, Cyclotomic, Cyclotomic)>,
}

impl GluingReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// The inverse of the genus-0 two-point pairing over surviving classes, as
/// `(C, C', η^{CC'})` triples.
fn inverse_pairing(
    group: &FiniteGroup,
    alpha: &Cocycle2,
    cap: u64,
) -> Result<Vec<(usize, usize, Cyclotomic)>, SurfaceError> {
    let t2 = gw_table(group, alpha, 0, 2, None, cap)?;
    let mut out = Vec::new();
    for (key, v) in &t2.entries {
        check_glue_labels(group, key[0], key[1])?;
        out.push((key[0], key[1], v.inverse().expect("nonzero pairing")));
    }
    Ok(out)
}

/// Verifies the gluing law exactly for every surviving boundary-class tuple.
pub fn gluing_check(
    group: &FiniteGroup,
    alpha: &Cocycle2,
    gluing: Gluing,
    cap: u64,
) -> Result<GluingReport, SurfaceError> {
    let eta = inverse_pairing(group, alpha, cap)?;
    let survive = surviving_classes(group, alpha);
    let surviving: Vec<usize> = (0..survive.len()).filter(|&c| survive[c]).collect();
    let mut report = GluingReport { gluing, checked: 0, failures: Vec::new() };
    match gluing {
        Gluing::Pants => {
            let t3 = gw_table(group, alpha, 0, 3, None, cap)?;
            let t4 = gw_table(group, alpha, 0, 4, None, cap)?;
            for &a in &surviving {
                for &b in &surviving {
                    for &c in &surviving {
                        for &d in &surviving {
                            let mut composed = Cyclotomic::zero();
                            for (x, y, e) in &eta {
                                let left = t3.get(&[a, b, *x]);
                                if left.is_zero() {
                                    continue;
                                }
                                let right = t3.get(&[*y, c, d]);
                                composed += &(&(&left * e) * &right);
                            }
                            let glued = t4.get(&[a, b, c, d]);
                            report.checked += 1;
                            if glued != composed {
                                report.failures.push((vec![a, b, c, d], glued, composed.simplified()));
                            }
                        }
                    }
                }
            }
        }
        Gluing::SelfGluing { genus } => {
            let t = gw_table(group, alpha, genus, 2, None, cap)?;
            let mut composed = Cyclotomic::zero();
            for (x, y, e) in &eta {
                composed += &(&t.get(&[*x, *y]) * e);
            }
            let closed = twisted_dw_partition(group, alpha, genus + 1, cap)?;
            let glued = Cyclotomic::from_rational(closed);
            report.checked = 1;
            if glued != composed {
                report.failures.push((Vec::new(), glued, composed.simplified()));
            }
        }
    }
    Ok(report)
}

/// `r = lcm(k₁,…,k_m)`, and 1 for a smooth surface.
pub fn fundamental_class_multiplier(sig: &SurfaceSignature) -> Result<u64, SurfaceError> {
    if sig.multiplicities.contains(&0) {
        return Err(SurfaceError::ZeroMultiplicity);
    }
    Ok(sig.multiplicities.iter().fold(1u64, |acc, &k| acc.lcm(&k)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cocycle::standard_torsion_cocycle;

    const CAP: u64 = crate::DEFAULT_ENUMERATION_CAP;

    #[test]
    fn genus_one_on_v4() {
        let (g, a) = standard_torsion_cocycle(2);
        assert_eq!(enumerate_homs(&g, &SurfaceSignature::closed(1), CAP).unwrap().len(), 16);
        assert_eq!(twisted_dw_partition(&g, &a, 1, CAP).unwrap(), BigRational::from_integer(1.into()));
        let t = Cocycle2::trivial(&g);
        assert_eq!(twisted_dw_partition(&g, &t, 1, CAP).unwrap(), BigRational::from_integer(4.into()));
        let hom = SurfaceHom { mu: vec![Element(2), Element(1)], boundary: vec![] };
        assert_eq!(alpha_weight_closed(&g, &a, &hom).unwrap(), RootOfUnity::minus_one());
        assert_eq!(twisted_dw_partition(&g, &t, 0, CAP).unwrap(), BigRational::new(1.into(), 4.into()));
    }

    #[test]
    fn framed_three_point_weight() {
        let (g, a) = standard_torsion_cocycle(2);
        let frames = canonical_frames(&g, &a).unwrap();
        let hom = SurfaceHom { mu: vec![], boundary: vec![Element(2), Element(1), Element(3)] };
        assert!(relator_check(&g, &hom));
        let f: Vec<Trivialization> = hom.boundary.iter().map(|&l| frames[g.class_index(l)].clone()).collect();
        let w = theta_with_boundary(&g, &a, &hom, &f).unwrap();
        assert_eq!(w.value, RootOfUnity::new(3, 4));
        let wrong = vec![frames[0].clone(), frames[1].clone(), frames[3].clone()];
        assert!(matches!(theta_with_boundary(&g, &a, &hom, &wrong), Err(SurfaceError::FrameMismatch { boundary: 0 })));
    }

    #[test]
    fn gluing_on_s3() {
        let g = FiniteGroup::symmetric(3);
        let t = Cocycle2::trivial(&g);
        assert!(gluing_check(&g, &t, Gluing::Pants, CAP).unwrap().passed());
        assert!(gluing_check(&g, &t, Gluing::SelfGluing { genus: 1 }, CAP).unwrap().passed());
    }

    #[test]
    fn lcm() {
        let sig = |m: Vec<u64>| SurfaceSignature { multiplicities: m, ..Default::default() };
        assert_eq!(fundamental_class_multiplier(&sig(vec![2, 3])).unwrap(), 6);
        assert_eq!(fundamental_class_multiplier(&sig(vec![])).unwrap(), 1);
        assert_eq!(fundamental_class_multiplier(&sig(vec![4, 4])).unwrap(), 4);
        assert!(fundamental_class_multiplier(&sig(vec![0])).is_err());
    }

    #[test]
    fn cap_is_enforced() {
        let g = FiniteGroup::cyclic(10);
        assert!(matches!(enumerate_homs(&g, &SurfaceSignature::closed(4), CAP), Err(SurfaceError::CapExceeded { .. })));
    }
}
